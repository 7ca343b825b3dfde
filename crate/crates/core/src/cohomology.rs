//! 2-cocycles, the action of `G` on (twisted) irreducibles of the kernel,
//! stabilizers, the cocycles `ζ_ρ`, and evaluation of 2-classes on the
//! fundamental class of a surface.

use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::group::{Elem, Extension, ExtensionDatum, FiniteGroup, Subgroup, SurfaceHom};
use crate::linalg::{is_scalar, scalar_ratio, solve_intertwiner_space, CMatrix, TolerancePolicy};
use crate::repr::{equivalent, Rep};

/// Exponent of `ρ(phi0)` in the matrix defect `∏[M_x, M_y]·ρ(phi0)^σ`.
pub const DEFECT_PHI0_EXPONENT: i32 = -1;
/// Exponent applied to the scalar of the matrix defect.
pub const DEFECT_SCALAR_EXPONENT: i32 = -1;
/// Exponent applied to the commutator scalar in the central extension.
pub const PAIRING_EXPONENT: i32 = 1;

/// A normalized, unit-modulus 2-cocycle `θ_{a,b}`.
#[derive(Clone, Debug)]
pub struct TwoCocycle {
    group: Arc<FiniteGroup>,
    values: Vec<C64>,
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Checks `θ_{a,b} θ_{ab,c} = θ_{b,c} θ_{a,bc}` on every triple.
pub fn check_cocycle_identity(group: &FiniteGroup, values: &[C64], tol: &TolerancePolicy) -> Result<()> {
    let n = group.order();
    if values.len() != n * n {
        return Err(Error::DimensionMismatch(format!("cocycle needs {} values, got {}", n * n, values.len())));
    }
    if let Some(z) = values.iter().find(|z| !(z.norm() > 0.0) || !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Malformed(format!("cocycle value {z} is not a finite nonzero number")));
    }
    let t = |a: Elem, b: Elem| values[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = group.mul(a, b);
            for c in 0..n {
                let lhs = t(a, b) * t(ab, c);
                let rhs = t(b, c) * t(a, group.mul(b, c));
                if (lhs - rhs).norm() > tol.scalar_eps * lhs.norm().max(rhs.norm()) {
                    return Err(Error::CocycleIdentity { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// Raw values of `(δf)_{a,b} = f(a) f(b) / f(ab)`.
pub fn coboundary(group: &FiniteGroup, f: &[C64]) -> Vec<C64> {
    let n = group.order();
    let mut v = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            v.push(f[a] * f[b] / f[group.mul(a, b)]);
        }
    }
    v
}

/// Replaces `raw` by the cohomologous normalized unit-modulus cocycle
/// `raw / δf`, returning it together with `f`.
pub fn normalize_cocycle(
    group: &Arc<FiniteGroup>,
    raw: &[C64],
    tol: &TolerancePolicy,
) -> Result<(TwoCocycle, Vec<C64>)> {
    check_cocycle_identity(group, raw, tol)?;
    let n = group.order();
    // log|θ| is a real cocycle, the coboundary of a ↦ mean_b log|θ_{a,b}|
    let mut f: Vec<C64> = (0..n)
        .map(|a| {
            let mean = (0..n).map(|b| raw[a * n + b].norm().ln()).sum::<f64>() / n as f64;
            C64::new(mean.exp(), 0.0)
        })
        .collect();
    let d = coboundary(group, &f);
    let e = group.identity();
    let unit: Vec<C64> = raw.iter().zip(&d).map(|(r, d)| r / d).collect();
    let c = unit[e * n + e];
    for x in &mut f {
        *x *= c;
    }
    let values = unit.iter().map(|z| z / c).collect();
    let theta = TwoCocycle { group: group.clone(), values };
    theta.check(tol)?;
    Ok((theta, f))
}

impl TwoCocycle {
    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        TwoCocycle { group, values: vec![one(); n * n] }
    }

    /// Accepts raw values, normalizing them if needed.
    pub fn new(group: Arc<FiniteGroup>, raw: &[C64], tol: &TolerancePolicy) -> Result<Self> {
        normalize_cocycle(&group, raw, tol).map(|(t, _)| t)
    }

    /// `θ_{a,b} = ω^{β(a,b)}` for an integer-valued bilinear-style exponent.
    pub fn from_root_exponents(group: Arc<FiniteGroup>, order: u32, exponent: impl Fn(Elem, Elem) -> i64, tol: &TolerancePolicy) -> Result<Self> {
        let n = group.order();
        let raw: Vec<C64> = (0..n * n)
            .map(|i| {
                let k = exponent(i / n, i % n).rem_euclid(order as i64);
                C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / order as f64)
            })
            .collect();
        Self::new(group, &raw, tol)
    }

    fn check(&self, tol: &TolerancePolicy) -> Result<()> {
        check_cocycle_identity(&self.group, &self.values, tol)?;
        let e = self.group.identity();
        for a in self.group.elements() {
            if !tol.scalars_close(self.get(e, a), one()) || !tol.scalars_close(self.get(a, e), one()) {
                return Err(Error::Numerical("cocycle is not normalized".into()));
            }
        }
        if self.values.iter().any(|z| (z.norm() - 1.0).abs() > tol.scalar_eps) {
            return Err(Error::Numerical("cocycle values are not of unit modulus".into()));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> C64 {
        self.values[a * self.group.order() + b]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn is_trivial(&self, tol: &TolerancePolicy) -> bool {
        self.values.iter().all(|&z| tol.scalars_close(z, one()))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &TwoCocycle) -> TwoCocycle {
        assert_eq!(self.group.order(), other.group.order());
        TwoCocycle {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    /// `θ · δf`, renormalized.
    pub fn shifted(&self, f: &[C64], tol: &TolerancePolicy) -> Result<TwoCocycle> {
        let d = coboundary(&self.group, f);
        let raw: Vec<C64> = self.values.iter().zip(&d).map(|(a, b)| a * b).collect();
        Self::new(self.group.clone(), &raw, tol)
    }

    /// Restriction to a subgroup, indexed as the subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> TwoCocycle {
        let m = sub.order();
        let mut values = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                values.push(self.get(sub.to_parent(i), sub.to_parent(j)));
            }
        }
        TwoCocycle { group: sub.group.clone(), values }
    }

    /// Pullback along a homomorphism `domain → self.group` given by images.
    pub fn pullback(&self, domain: Arc<FiniteGroup>, images: &[Elem]) -> TwoCocycle {
        let m = domain.order();
        let mut values = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                values.push(self.get(images[a], images[b]));
            }
        }
        TwoCocycle { group: domain, values }
    }
}

/// `h ↦ ρ(ã⁻¹ h ã)` for a representation `ρ` of the kernel.
pub fn conjugate_rep(ext: &Extension, lift: Elem, rho: &Rep) -> Result<Rep> {
    let big = ext.big();
    let k = ext.kernel();
    let inv = big.inv(lift);
    let mats = (0..k.order())
        .map(|h| {
            let c = big.mul(big.mul(inv, k.to_parent(h)), lift);
            rho.matrix(k.from_parent(c).expect("kernel is normal")).clone()
        })
        .collect();
    Rep::new_unchecked(rho.group().clone(), mats, rho.cocycle().cloned())
}

/// The θ-representation
/// `aρ(h) = θ_{a⁻¹,ha} θ_{h,a} / (θ_{a,a⁻¹} θ_{1,1}) · ρ(a⁻¹ h a)`.
pub fn twisted_conjugate_rep(
    ext: &Extension,
    theta: &TwoCocycle,
    a: Elem,
    rho: &Rep,
    tol: &TolerancePolicy,
) -> Result<Rep> {
    let big = ext.big();
    let k = ext.kernel();
    let ai = big.inv(a);
    let e = big.identity();
    let mats = (0..k.order())
        .map(|hk| {
            let h = k.to_parent(hk);
            let ha = big.mul(h, a);
            let factor = theta.get(ai, ha) * theta.get(h, a) / (theta.get(a, ai) * theta.get(e, e));
            let c = big.mul(ai, ha);
            rho.matrix(k.from_parent(c).expect("kernel is normal")).scale(factor)
        })
        .collect();
    Rep::new(rho.group().clone(), mats, rho.cocycle().cloned(), tol)
}

/// `aρ`, twisted when `theta` is given.
fn act(ext: &Extension, theta: Option<&TwoCocycle>, a: Elem, rho: &Rep, tol: &TolerancePolicy) -> Result<Rep> {
    match theta {
        Some(t) => twisted_conjugate_rep(ext, t, a, rho, tol),
        None => conjugate_rep(ext, a, rho),
    }
}

/// `G_ρ` with one lift `ã_α` and one intertwiner `M_α` per element,
/// where `ãρ = M_α⁻¹ ρ M_α`.
#[derive(Clone, Debug)]
pub struct StabilizerResult {
    pub subgroup: Subgroup,
    /// Indexed like `subgroup`; entries are elements of `G′`.
    pub lifts: Vec<Elem>,
    pub intertwiners: Vec<CMatrix>,
    parent_order: usize,
}

impl StabilizerResult {
    /// `G_ρ = G`
    pub fn is_full(&self) -> bool {
        self.subgroup.order() == self.parent_order
    }
}

/// Stabilizer of the class of `ρ`, using the first preimage of each `α` as lift.
pub fn stabilizer(ext: &Extension, rho: &Rep, theta: Option<&TwoCocycle>, tol: &TolerancePolicy) -> Result<StabilizerResult> {
    let lifts: Vec<Elem> = ext.base().elements().map(|a| ext.default_lift(a)).collect();
    stabilizer_with_lifts(ext, rho, theta, &lifts, tol)
}

/// As [`stabilizer`], with `lifts[α]` a chosen preimage of each `α ∈ G`.
pub fn stabilizer_with_lifts(
    ext: &Extension,
    rho: &Rep,
    theta: Option<&TwoCocycle>,
    lifts: &[Elem],
    tol: &TolerancePolicy,
) -> Result<StabilizerResult> {
    let base = ext.base();
    let k = ext.kernel();
    let big = ext.big();
    let mut members = Vec::new();
    let mut ints = Vec::new();
    for alpha in base.elements() {
        let a = lifts[alpha];
        if ext.q.apply(a) != alpha {
            return Err(Error::LiftNotInCoset { generator: alpha, lift: a });
        }
        if theta.is_none() {
            // characters are class functions: compare χ(ã⁻¹hã) with χ(h)
            let chi = rho.character();
            let inv = big.inv(a);
            let same = (0..k.order()).all(|h| {
                let c = k.from_parent(big.mul(big.mul(inv, k.to_parent(h)), a)).expect("normal");
                tol.scalars_close(chi[c], chi[h])
            });
            if !same {
                continue;
            }
        }
        let arho = act(ext, theta, a, rho, tol)?;
        if let Some(m) = equivalent(rho, &arho, tol) {
            members.push(alpha);
            ints.push((alpha, m));
        } else if theta.is_none() {
            return Err(Error::Numerical("equal characters but no intertwiner".into()));
        }
    }
    let subgroup = Subgroup::new(base, &members)?;
    let mut intertwiners = vec![CMatrix::zeros(0, 0); subgroup.order()];
    let mut sub_lifts = vec![0; subgroup.order()];
    for (alpha, m) in ints {
        let i = subgroup.from_parent(alpha).expect("member");
        intertwiners[i] = m;
        sub_lifts[i] = lifts[alpha];
    }
    Ok(StabilizerResult { subgroup, lifts: sub_lifts, intertwiners, parent_order: base.order() })
}

/// `ζ_ρ` on `G_ρ`, solved from
/// `ζ_{α,β} M_α M_β = θ_{α̃,β̃} θ_{(αβ)~,c}⁻¹ M_{αβ} ρ(c)` with `c = (αβ)~⁻¹ α̃ β̃`
/// (all θ factors are 1 in the ordinary case), then normalized.
pub fn zeta_cocycle(
    ext: &Extension,
    rho: &Rep,
    stab: &StabilizerResult,
    theta: Option<&TwoCocycle>,
    tol: &TolerancePolicy,
) -> Result<TwoCocycle> {
    let big = ext.big();
    let k = ext.kernel();
    let sub = &stab.subgroup;
    let h = &sub.group;
    let m = h.order();
    let mut raw = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let ab = h.mul(a, b);
            let (la, lb, lab) = (stab.lifts[a], stab.lifts[b], stab.lifts[ab]);
            let c = big.mul(big.inv(lab), big.mul(la, lb));
            let ck = k.from_parent(c).ok_or_else(|| Error::Numerical("lift product leaves its coset".into()))?;
            let factor = theta.map_or(one(), |t| t.get(la, lb) / t.get(lab, c));
            let rhs = (&stab.intertwiners[ab] * rho.matrix(ck)).scale(factor);
            let lhs = &stab.intertwiners[a] * &stab.intertwiners[b];
            let z = scalar_ratio(&rhs, &lhs, tol)
                .map_err(|e| Error::NotScalar(format!("ζ equation at ({a}, {b}): {e}")))?;
            raw.push(z);
        }
    }
    TwoCocycle::new(h.clone(), &raw, tol)
}

/// Scalar `c` of `∏ [(1, x_i), (1, y_i)] = (c, 1)` in `ℂ* ×_ζ H`, where
/// `(s, α)(t, β) = (s t ζ_{α,β}, αβ)`.
pub fn pair_with_fundamental_class(zeta: &TwoCocycle, g: &SurfaceHom, tol: &TolerancePolicy) -> Result<C64> {
    let h = zeta.group();
    if g.target.order() != h.order() {
        return Err(Error::DimensionMismatch("surface hom lands in another group".into()));
    }
    let e = h.identity();
    let z11 = zeta.get(e, e);
    let mul = |(s, a): (C64, Elem), (t, b): (C64, Elem)| (s * t * zeta.get(a, b), h.mul(a, b));
    let inv = |(s, a): (C64, Elem)| {
        let ai = h.inv(a);
        (one() / (s * zeta.get(a, ai) * z11), ai)
    };
    let mut acc = (one() / z11, e);
    for (&x, &y) in g.x().iter().zip(g.y()) {
        let (px, py) = ((one(), x), (one(), y));
        let comm = mul(mul(mul(px, py), inv(px)), inv(py));
        acc = mul(acc, comm);
    }
    if acc.1 != e {
        return Err(Error::RelatorViolation { value: h.label(acc.1) });
    }
    let c = (acc.0 * z11).powi(PAIRING_EXPONENT);
    if (c.norm() - 1.0).abs() > tol.scalar_eps.sqrt() {
        return Err(Error::Numerical(format!("pairing {c} is not of unit modulus")));
    }
    Ok(c)
}

/// Evaluation of the pulled-back class of `θ` on the fundamental class.
pub fn theta_pairing(theta: &TwoCocycle, g: &SurfaceHom, tol: &TolerancePolicy) -> Result<C64> {
    pair_with_fundamental_class(theta, g, tol)
}

/// Pairing of `ζ_ρ` along `g`, which must land in `G_ρ`.
pub fn zeta_pairing(zeta: &TwoCocycle, stab: &StabilizerResult, g: &SurfaceHom, tol: &TolerancePolicy) -> Result<C64> {
    let gr = g
        .restrict_to(&stab.subgroup)
        .map_err(|_| Error::Hypothesis("g(π) is not contained in G_ρ".into()))?;
    pair_with_fundamental_class(zeta, &gr, tol)
}

/// Intertwiners `M` with `ρ(ψ(h)) M = M ρ(h)` for one automorphism `ψ` of `Φ`.
fn automorphism_intertwiner(rho: &Rep, images: &[Elem], gens: &[Elem], tol: &TolerancePolicy) -> Result<Option<CMatrix>> {
    if gens.is_empty() {
        return Ok(Some(CMatrix::identity(rho.dim())));
    }
    let pairs: Vec<_> = gens.iter().map(|&h| (rho.matrix(images[h]).clone(), rho.matrix(h).clone())).collect();
    let basis = solve_intertwiner_space(&pairs, tol)?;
    Ok(basis.into_iter().next())
}

/// True when `ρ∘ψ ≅ ρ` for every generator automorphism of the datum.
pub fn is_datum_stable(datum: &ExtensionDatum, rho: &Rep, tol: &TolerancePolicy) -> bool {
    let chi = rho.character();
    datum.psi_x.iter().chain(&datum.psi_y).all(|psi| {
        datum.phi.elements().all(|h| tol.scalars_close(chi[psi.apply(h)], chi[h]))
    })
}

/// Scalar `λ` of `P = ∏ [M_{x_i}, M_{y_i}] · ρ(phi0)^σ`, returned as `λ^τ`.
pub fn rep_pairing_defect(datum: &ExtensionDatum, rho: &Rep, tol: &TolerancePolicy) -> Result<C64> {
    if rho.cocycle().is_some() {
        return Err(Error::Hypothesis("matrix defect is defined for ordinary representations".into()));
    }
    let gens = datum.phi.generators();
    let mut ms = Vec::with_capacity(2 * datum.genus());
    for (i, psi) in datum.psi_x.iter().chain(&datum.psi_y).enumerate() {
        let m = automorphism_intertwiner(rho, psi.images(), &gens, tol)?
            .ok_or(Error::MissingIntertwiner { generator: i })?;
        ms.push(m);
    }
    let d = datum.genus();
    let mut p = CMatrix::identity(rho.dim());
    for i in 0..d {
        p = &p * &ms[i].commutator(&ms[d + i])?;
    }
    let phi0 = match DEFECT_PHI0_EXPONENT {
        1 => datum.phi0,
        _ => datum.phi.inv(datum.phi0),
    };
    p = &p * rho.matrix(phi0);
    let lambda = is_scalar(&p, tol).ok_or_else(|| Error::NotScalar("matrix defect".into()))?;
    Ok(lambda.powi(DEFECT_SCALAR_EXPONENT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::pullback_datum;
    use crate::repr::irreducibles;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn normalization_is_auditable() {
        let g = Arc::new(catalog::klein());
        let sym = symplectic(&g);
        let f: Vec<C64> = (0..4).map(|a| C64::from_polar(1.0 + a as f64, 0.7 * a as f64)).collect();
        let d = coboundary(&g, &f);
        let raw: Vec<C64> = sym.values().iter().zip(&d).map(|(a, b)| a * b).collect();
        let (norm, h) = normalize_cocycle(&g, &raw, &tol()).unwrap();
        for a in 0..4 {
            assert!(close(norm.get(0, a), one()) && close(norm.get(a, 0), one()));
            for b in 0..4 {
                let back = norm.get(a, b) * h[a] * h[b] / h[g.mul(a, b)];
                assert!(close(back, raw[a * 4 + b]));
            }
        }
        let (same, _) = normalize_cocycle(&g, sym.values(), &tol()).unwrap();
        assert!(same.values().iter().zip(sym.values()).all(|(a, b)| close(*a, *b)));
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let g = Arc::new(catalog::cyclic(3));
        let mut raw = vec![one(); 9];
        raw[4] = C64::new(-1.0, 0.0);
        assert!(matches!(normalize_cocycle(&g, &raw, &tol()), Err(Error::CocycleIdentity { .. })));
    }

    pub(crate) fn symplectic(g: &Arc<FiniteGroup>) -> TwoCocycle {
        // (a1,a2)·(b1,b2) ↦ (−1)^{a1 b2}
        TwoCocycle::from_root_exponents(g.clone(), 2, |a, b| ((a / 2) * (b % 2)) as i64, &tol()).unwrap()
    }

    #[test]
    fn symplectic_pairing_on_the_klein_group() {
        let g = Arc::new(catalog::klein());
        let theta = symplectic(&g);
        for a in 0..4 {
            for b in 0..4 {
                let h = SurfaceHom::new(g.clone(), 1, vec![a], vec![b]).unwrap();
                let got = theta_pairing(&theta, &h, &tol()).unwrap();
                let form = ((a / 2) * (b % 2) + (a % 2) * (b / 2)) % 2;
                let want = if form == 0 { one() } else { -one() };
                assert!(close(got, want), "{a} {b}: {got}");
            }
        }
        let triv = TwoCocycle::trivial(g.clone());
        let h = SurfaceHom::new(g, 1, vec![1], vec![2]).unwrap();
        assert!(close(theta_pairing(&triv, &h, &tol()).unwrap(), one()));
    }

    #[test]
    fn conjugation_in_s3_swaps_characters() {
        let ext = catalog::s3_sign();
        let gamma = ext.kernel().group.clone();
        let irr = irreducibles(&gamma, &tol(), 1, 8).unwrap();
        let t = ext.big().find_label("(1 2)").unwrap();
        let omega = &irr.reps[1];
        let conj = conjugate_rep(&ext, t, omega).unwrap();
        for h in 0..3 {
            assert!(close(conj.character()[h], omega.character()[h].conj()));
        }
        let same = conjugate_rep(&ext, ext.big().identity(), omega).unwrap();
        assert_eq!(same.character(), omega.character());
        let s = stabilizer(&ext, omega, None, &tol()).unwrap();
        assert_eq!(s.subgroup.order(), 1);
        let s0 = stabilizer(&ext, &irr.reps[0], None, &tol()).unwrap();
        assert_eq!(s0.subgroup.order(), 2);
    }

    #[test]
    fn central_kernel_has_full_stabilizers_and_minus_one_pairing() {
        let ext = catalog::q8_over_klein();
        let gamma = ext.kernel().group.clone();
        let irr = irreducibles(&gamma, &tol(), 1, 8).unwrap();
        let g = SurfaceHom::new(ext.base().clone(), 1, vec![ext.q.apply(catalog::Q8_I)], vec![ext.q.apply(catalog::Q8_J)]).unwrap();
        let mut vals = Vec::new();
        for rho in irr.iter() {
            let s = stabilizer(&ext, rho, None, &tol()).unwrap();
            assert_eq!(s.subgroup.order(), 4);
            let z = zeta_cocycle(&ext, rho, &s, None, &tol()).unwrap();
            vals.push(zeta_pairing(&z, &s, &g, &tol()).unwrap());
            let datum = pullback_datum(&ext, &g, None).unwrap();
            let defect = rep_pairing_defect(&datum, rho, &tol()).unwrap();
            assert!(close(defect, *vals.last().unwrap()));
        }
        assert!(close(vals[0], one()) && close(vals[1], -one()));
    }

    #[test]
    fn twisted_conjugation_matches_ordinary_for_trivial_theta() {
        let ext = catalog::s4_over_s3();
        let gamma = ext.kernel().group.clone();
        let irr = irreducibles(&gamma, &tol(), 1, 8).unwrap();
        let theta = TwoCocycle::trivial(ext.big().clone());
        for rho in irr.iter() {
            for a in ext.big().elements() {
                let x = conjugate_rep(&ext, a, rho).unwrap();
                let y = twisted_conjugate_rep(&ext, &theta, a, rho, &tol()).unwrap();
                assert!(x.matrices().iter().zip(y.matrices()).all(|(p, q)| p.approx_eq(q, 1e-12)));
            }
        }
    }

    #[test]
    fn split_extension_pairings_are_one() {
        let ext = catalog::split_z3_z2();
        let gamma = ext.kernel().group.clone();
        let irr = irreducibles(&gamma, &tol(), 1, 8).unwrap();
        let g = SurfaceHom::new(ext.base().clone(), 1, vec![1], vec![1]).unwrap();
        for rho in irr.iter() {
            let s = stabilizer(&ext, rho, None, &tol()).unwrap();
            let z = zeta_cocycle(&ext, rho, &s, None, &tol()).unwrap();
            assert!(close(zeta_pairing(&z, &s, &g, &tol()).unwrap(), one()));
        }
    }
}
