//! Ordinary and θ-twisted irreducible representations, found by splitting
//! the (twisted) regular representation.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::TwoCocycle;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::linalg::{eig_hermitian, is_scalar, solve_intertwiner_space, CMatrix, TolerancePolicy};

/// A complex matrix representation, possibly projective.
///
/// With a cocycle `θ` the matrices satisfy `ρ(a)ρ(b) = θ_{a,b} ρ(ab)`;
/// without one they form an ordinary homomorphism.
#[derive(Clone, Debug)]
pub struct Rep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
    character: Vec<C64>,
    cocycle: Option<Arc<TwoCocycle>>,
}

impl Rep {
    /// Checks `ρ(1) = I` and multiplicativity (twisted by `cocycle` if given).
    pub fn new(
        group: Arc<FiniteGroup>,
        matrices: Vec<CMatrix>,
        cocycle: Option<Arc<TwoCocycle>>,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let rep = Self::new_unchecked(group, matrices, cocycle)?;
        rep.verify(tol)?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(
        group: Arc<FiniteGroup>,
        matrices: Vec<CMatrix>,
        cocycle: Option<Arc<TwoCocycle>>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("representation matrices differ in size".into()));
        }
        if let Some(t) = &cocycle {
            if t.group().order() != group.order() {
                return Err(Error::DimensionMismatch("cocycle lives on another group".into()));
            }
        }
        let character = matrices.iter().map(CMatrix::trace).collect();
        Ok(Rep { group, dim, matrices, character, cocycle })
    }

    fn verify(&self, tol: &TolerancePolicy) -> Result<()> {
        let g = &self.group;
        if !self.matrices[g.identity()].approx_eq(&CMatrix::identity(self.dim), tol.mat_eps) {
            return Err(Error::RepInvariant("identity does not act as I".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.matrices[a] * &self.matrices[b];
                let rhs = self.matrices[g.mul(a, b)].scale(self.theta(a, b));
                if !lhs.approx_eq(&rhs, tol.mat_eps) {
                    return Err(Error::RepInvariant(format!(
                        "ρ({})ρ({}) differs from θ·ρ(product)",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(group: Arc<FiniteGroup>) -> Rep {
        let m = vec![CMatrix::identity(1); group.order()];
        Self::new_unchecked(group, m, None).expect("trivial representation")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn matrix(&self, a: Elem) -> &CMatrix {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn character(&self) -> &[C64] {
        &self.character
    }

    pub fn cocycle(&self) -> Option<&Arc<TwoCocycle>> {
        self.cocycle.as_ref()
    }

    /// `θ_{a,b}`, or 1 for an ordinary representation.
    pub fn theta(&self, a: Elem, b: Elem) -> C64 {
        self.cocycle.as_ref().map_or(C64::new(1.0, 0.0), |t| t.get(a, b))
    }

    pub fn is_trivial(&self, tol: &TolerancePolicy) -> bool {
        self.cocycle.is_none()
            && self.dim == 1
            && self.character.iter().all(|&c| tol.scalars_close(c, C64::new(1.0, 0.0)))
    }

    /// Pairs `(ρ(g), ρ(g))` over a generating set.
    fn self_pairs(&self) -> Vec<(CMatrix, CMatrix)> {
        self.group
            .generators()
            .into_iter()
            .map(|g| (self.matrices[g].clone(), self.matrices[g].clone()))
            .collect()
    }

    /// Schur test: the commutant is one-dimensional.
    pub fn is_irreducible(&self, tol: &TolerancePolicy) -> Result<bool> {
        if self.group.order() == 1 {
            return Ok(self.dim == 1);
        }
        Ok(solve_intertwiner_space(&self.self_pairs(), tol)?.len() == 1)
    }

    /// `(1/|G|) Σ_g χ(g) conj(χ′(g))`
    pub fn character_inner(&self, other: &Rep) -> C64 {
        let s: C64 = self.character.iter().zip(&other.character).map(|(a, b)| a * b.conj()).sum();
        s / self.group.order() as f64
    }

    /// Same representation with matrices replaced by `M⁻¹ ρ(h) M`.
    pub fn conjugate_by(&self, m: &CMatrix) -> Result<Rep> {
        let inv = m.inverse()?;
        let mats = self.matrices.iter().map(|a| &(&inv * a) * m).collect();
        Self::new_unchecked(self.group.clone(), mats, self.cocycle.clone())
    }

    fn character_key(&self) -> Vec<(i64, i64)> {
        self.character
            .iter()
            .map(|c| ((c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64))
            .collect()
    }
}

/// Invertible `M` with `ρ′(h) = M⁻¹ ρ(h) M` for all `h`, if one exists.
pub fn equivalent(rho: &Rep, other: &Rep, tol: &TolerancePolicy) -> Option<CMatrix> {
    if rho.dim != other.dim || rho.group.order() != other.group.order() {
        return None;
    }
    if rho.cocycle.is_none() && other.cocycle.is_none() {
        let close = rho
            .character
            .iter()
            .zip(&other.character)
            .all(|(&a, &b)| tol.scalars_close(a, b));
        if !close {
            return None;
        }
    }
    if rho.group.order() == 1 {
        return Some(CMatrix::identity(rho.dim));
    }
    let pairs: Vec<_> = rho
        .group
        .generators()
        .into_iter()
        .map(|g| (rho.matrices[g].clone(), other.matrices[g].clone()))
        .collect();
    let basis = solve_intertwiner_space(&pairs, tol).ok()?;
    let m = basis.into_iter().next()?;
    m.inverse().ok()?;
    Some(m)
}

/// Representatives of the equivalence classes of irreducibles.
#[derive(Clone, Debug)]
pub struct IrrSet {
    pub reps: Vec<Rep>,
    /// Seed of the attempt that succeeded.
    pub seed: u64,
}

impl IrrSet {
    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(Rep::dim).collect()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rep> {
        self.reps.iter()
    }
}

/// Irreducible complex representations of `G`, trivial first, then by
/// dimension and character.
pub fn irreducibles(g: &Arc<FiniteGroup>, tol: &TolerancePolicy, seed: u64, retries: u32) -> Result<IrrSet> {
    decompose(g, None, tol, seed, retries)
}

/// Irreducible θ-representations of `G` for a normalized cocycle `θ`.
pub fn twisted_irreducibles(
    g: &Arc<FiniteGroup>,
    theta: &Arc<TwoCocycle>,
    tol: &TolerancePolicy,
    seed: u64,
    retries: u32,
) -> Result<IrrSet> {
    if theta.is_trivial(tol) {
        return irreducibles(g, tol, seed, retries);
    }
    decompose(g, Some(theta.clone()), tol, seed, retries)
}

fn decompose(
    g: &Arc<FiniteGroup>,
    theta: Option<Arc<TwoCocycle>>,
    tol: &TolerancePolicy,
    seed: u64,
    retries: u32,
) -> Result<IrrSet> {
    let mut last = Error::Numerical("no attempts made".into());
    for attempt in 0..retries.max(1) {
        let s = seed.wrapping_add(attempt as u64);
        match decompose_once(g, theta.clone(), tol, s) {
            Ok(reps) => return Ok(IrrSet { reps, seed: s }),
            Err(e @ Error::Numerical(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Numerical(format!("irreducible splitting failed after {retries} attempts: {last}")))
}

/// `λ_θ(g) V`, where `λ_θ(g) e_h = θ_{g,h} e_{gh}` acts on the rows of `V`.
fn regular_apply(g: &FiniteGroup, theta: Option<&TwoCocycle>, a: Elem, v: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(v.rows(), v.cols());
    for h in g.elements() {
        let t = theta.map_or(C64::new(1.0, 0.0), |t| t.get(a, h));
        let row = g.mul(a, h);
        for j in 0..v.cols() {
            out[(row, j)] = t * v[(h, j)];
        }
    }
    out
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let v = (0..n * n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let x = CMatrix::from_vec(n, n, v);
    &x + &x.adjoint()
}

fn decompose_once(
    g: &Arc<FiniteGroup>,
    theta: Option<Arc<TwoCocycle>>,
    tol: &TolerancePolicy,
    seed: u64,
) -> Result<Vec<Rep>> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let th = theta.as_deref();
    let mut found: Vec<Rep> = Vec::new();
    let mut total = 0usize;
    let mut stack = vec![CMatrix::identity(n)];
    while let Some(v) = stack.pop() {
        if total == n {
            break;
        }
        let m = v.cols();
        // σ(a) = V* λ(a) V on the invariant subspace spanned by V
        let sigma: Vec<CMatrix> = g.elements().map(|a| &v.adjoint() * &regular_apply(g, th, a, &v)).collect();
        let x = random_hermitian(m, &mut rng);
        let mut avg = CMatrix::zeros(m, m);
        for s in &sigma {
            avg = &avg + &(&(s * &x) * &s.adjoint());
        }
        let avg = avg.scale(C64::new(1.0 / n as f64, 0.0));
        if m == 1 || is_scalar(&avg, tol).is_some() {
            let rep = Rep::new(g.clone(), sigma, theta.clone(), tol)
                .map_err(|e| Error::Numerical(format!("split block is not a representation: {e}")))?;
            if !rep.is_irreducible(tol)? {
                return Err(Error::Numerical("unsplit block fails the Schur test".into()));
            }
            if !found.iter().any(|r| same_class(r, &rep, tol)) {
                total += rep.dim * rep.dim;
                found.push(rep);
            }
            continue;
        }
        let eig = eig_hermitian(&avg, tol)?;
        let spread = (eig.values[m - 1] - eig.values[0]).max(1.0);
        let mut start = 0;
        for j in 0..m {
            let gap = if j + 1 < m { eig.values[j + 1] - eig.values[j] } else { f64::INFINITY };
            if gap > 1e-9 * spread && gap < 1e-6 * spread {
                return Err(Error::Numerical("eigenvalue clusters are not separated".into()));
            }
            if gap >= 1e-6 * spread {
                let block = CMatrix::from_fn(m, j + 1 - start, |r, c| eig.vectors[(r, start + c)]);
                stack.push(&v * &block);
                start = j + 1;
            }
        }
    }
    if total != n {
        return Err(Error::Numerical(format!("found Σ dim² = {total}, expected {n}")));
    }
    found.sort_by(|a, b| {
        let ka = (!a.is_trivial(tol), a.dim, a.character_key());
        let kb = (!b.is_trivial(tol), b.dim, b.character_key());
        ka.cmp(&kb)
    });
    Ok(found)
}

fn same_class(a: &Rep, b: &Rep, tol: &TolerancePolicy) -> bool {
    if a.dim != b.dim {
        return false;
    }
    if a.cocycle.is_none() {
        let ip = a.character_inner(b);
        return (ip - C64::new(1.0, 0.0)).norm() < 1e-6;
    }
    equivalent(a, b, tol).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn irr(g: FiniteGroup) -> IrrSet {
        irreducibles(&Arc::new(g), &TolerancePolicy::default(), 1, 8).unwrap()
    }

    #[test]
    fn cyclic_three_has_three_characters() {
        let set = irr(catalog::cyclic(3));
        assert_eq!(set.dims(), vec![1, 1, 1]);
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let mut images: Vec<C64> = set.iter().map(|r| r.character()[1]).collect();
        images.sort_by(|a, b| a.im.total_cmp(&b.im));
        for (got, want) in images.iter().zip([w.conj(), C64::new(1.0, 0.0), w]) {
            assert!((got - want).norm() < 1e-9);
        }
    }

    #[test]
    fn dimensions_of_small_groups() {
        assert_eq!(irr(catalog::symmetric(3)).dims(), vec![1, 1, 2]);
        assert_eq!(irr(catalog::quaternion()).dims(), vec![1, 1, 1, 1, 2]);
        assert_eq!(irr(catalog::symmetric(4)).dims(), vec![1, 1, 2, 3, 3]);
        assert_eq!(irr(catalog::sl23()).dims(), vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn trivial_is_first_and_reps_are_unitary() {
        let tol = TolerancePolicy::default();
        let set = irr(catalog::dihedral(4));
        assert!(set.reps[0].is_trivial(&tol));
        for r in set.iter() {
            for m in r.matrices() {
                assert!((m * &m.adjoint()).approx_eq(&CMatrix::identity(r.dim()), 1e-9));
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        let set = irr(catalog::symmetric(4));
        for (i, a) in set.iter().enumerate() {
            for (j, b) in set.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.character_inner(b) - want).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn equivalence_recovers_conjugator() {
        let tol = TolerancePolicy::default();
        let set = irr(catalog::symmetric(3));
        let rho = &set.reps[2];
        let m0 = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.5), C64::new(2.0, 0.0)],
            vec![C64::new(0.0, -1.0), C64::new(0.3, 0.1)],
        ])
        .unwrap();
        let conj = rho.conjugate_by(&m0).unwrap();
        let m = equivalent(rho, &conj, &tol).unwrap();
        assert!(crate::linalg::scalar_ratio(&m, &m0, &tol).is_ok());
        assert!(equivalent(rho, rho, &tol).is_some());
        let z3 = irr(catalog::cyclic(3));
        assert!(equivalent(&z3.reps[1], &z3.reps[2], &tol).is_none());
    }

    #[test]
    fn seeds_do_not_change_the_answer() {
        let g = Arc::new(catalog::quaternion());
        let tol = TolerancePolicy::default();
        let a = irreducibles(&g, &tol, 1, 8).unwrap();
        let b = irreducibles(&g, &tol, 99, 8).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert!(equivalent(x, y, &tol).is_some());
        }
    }
}
