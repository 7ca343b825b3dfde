//! Closed-form counts: sums over irreducible (θ-)representations of the
//! kernel weighted by fundamental-class pairings, and the quantities derived
//! from them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64 as C64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{rep_pairing_defect, is_datum_stable, stabilizer, zeta_cocycle, zeta_pairing, StabilizerResult, TwoCocycle};
use crate::error::{Error, Result};
use crate::group::{mixed_commutator, Extension, ExtensionDatum, FiniteGroup, SurfaceAction, SurfaceHom};
use crate::linalg::TolerancePolicy;
use crate::repr::{irreducibles, twisted_irreducibles, IrrSet, Rep};
use crate::{serde_c64, Config};

/// Exponent applied to `ζ_ρ` pairings in the twisted count.
pub const T2_PAIRING_EXPONENT: i32 = 1;

/// Largest count that is rounded; beyond it `f64` no longer resolves integers.
const EXACT_LIMIT: f64 = 4_503_599_627_370_496.0;

/// One irreducible of the kernel together with its stabilizer and `ζ_ρ`.
#[derive(Clone, Debug)]
pub struct RhoEntry {
    pub rep: Rep,
    pub stab: StabilizerResult,
    pub zeta: TwoCocycle,
}

/// Everything about an extension that does not depend on the surface hom.
#[derive(Clone, Debug)]
pub struct ExtensionAnalysis {
    pub ext: Extension,
    /// The twisting cocycle on `G′`, if any.
    pub theta: Option<Arc<TwoCocycle>>,
    pub irr: IrrSet,
    pub entries: Vec<RhoEntry>,
    tol: TolerancePolicy,
}

impl ExtensionAnalysis {
    pub fn new(ext: &Extension, cfg: &Config) -> Result<Self> {
        let gamma = ext.kernel().group.clone();
        let irr = irreducibles(&gamma, &cfg.tol, cfg.seed, cfg.retries)?;
        Self::build(ext, None, irr, cfg)
    }

    /// Analysis for θ-representations, `θ` a normalized cocycle on `G′`.
    pub fn twisted(ext: &Extension, theta: Arc<TwoCocycle>, cfg: &Config) -> Result<Self> {
        if theta.group().order() != ext.big().order() {
            return Err(Error::DimensionMismatch("cocycle must live on the extension group".into()));
        }
        let gamma = ext.kernel().group.clone();
        let restricted = Arc::new(theta.restrict(ext.kernel()));
        let irr = twisted_irreducibles(&gamma, &restricted, &cfg.tol, cfg.seed, cfg.retries)?;
        Self::build(ext, Some(theta), irr, cfg)
    }

    fn build(ext: &Extension, theta: Option<Arc<TwoCocycle>>, irr: IrrSet, cfg: &Config) -> Result<Self> {
        let tol = cfg.tol;
        let entries = irr
            .reps
            .par_iter()
            .map(|rho| {
                let stab = stabilizer(ext, rho, theta.as_deref(), &tol)?;
                let zeta = zeta_cocycle(ext, rho, &stab, theta.as_deref(), &tol)?;
                Ok(RhoEntry { rep: rho.clone(), stab, zeta })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtensionAnalysis { ext: ext.clone(), theta, irr, entries, tol })
    }

    pub fn kernel_order(&self) -> usize {
        self.ext.kernel_order()
    }

    pub fn tol(&self) -> &TolerancePolicy {
        &self.tol
    }

    /// `g*(ζ_ρ)([W])` for the `i`-th irreducible, or `None` when `g(π) ⊄ G_ρ`.
    pub fn pairing(&self, i: usize, g: &SurfaceHom) -> Result<Option<C64>> {
        let e = &self.entries[i];
        if !g.image().iter().all(|&a| e.stab.subgroup.contains(a)) {
            return Ok(None);
        }
        zeta_pairing(&e.zeta, &e.stab, g, &self.tol).map(Some)
    }

    /// True when every irreducible has `G_ρ = G`.
    pub fn all_stabilizers_full(&self) -> bool {
        self.entries.iter().all(|e| e.stab.is_full())
    }
}

/// An exact rational serialized as `[numerator, denominator]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "[u128; 2]")]
pub struct Weight(pub Ratio<u128>);

impl From<Weight> for [u128; 2] {
    fn from(w: Weight) -> Self {
        [*w.0.numer(), *w.0.denom()]
    }
}

impl Weight {
    /// `(order/dim)^e`, negative exponents allowed.
    pub fn power(order: usize, dim: usize, e: i64) -> Result<Self> {
        let base = Ratio::new(order as u128, dim as u128);
        let base = if e < 0 { base.recip() } else { base };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Numerical("weight exponent too large".into()))?;
        let numer = base.numer().checked_pow(e);
        let denom = base.denom().checked_pow(e);
        match (numer, denom) {
            (Some(n), Some(d)) => Ok(Weight(Ratio::new(n, d))),
            _ => Err(Error::Numerical(format!("({order}/{dim})^{e} overflows"))),
        }
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

/// One row of a formula: the contribution of a single irreducible.
#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub index: usize,
    pub dim: usize,
    pub stabilizer_order: usize,
    /// `None` when the irreducible does not contribute.
    #[serde(serialize_with = "serde_c64::opt::serialize")]
    pub pairing: Option<C64>,
    /// `(|Γ|/dim)^{-χ}`
    pub weight: Weight,
    /// `|Γ| · weight · pairing`
    #[serde(serialize_with = "serde_c64::serialize")]
    pub term: C64,
}

/// A named derived check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Brute-force value attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum OracleValue {
    Count(u64),
    Ratio([u64; 2]),
    Complex(#[serde(serialize_with = "serde_c64::serialize")] C64),
}

/// A formula value with its per-irreducible breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub quantity: String,
    pub genus: usize,
    pub kernel_order: usize,
    pub contributions: Vec<Contribution>,
    /// `Σ term`, divided by `scale`.
    #[serde(serialize_with = "serde_c64::serialize")]
    pub formula: C64,
    /// Divisor applied to the sum of terms (1, or `|Γ|` for weighted forms).
    pub scale: u64,
    /// Nearest integer, for integer-valued quantities.
    pub rounded: Option<i64>,
    pub residual: f64,
    pub oracle: Option<OracleValue>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub seed: u64,
}

impl CountReport {
    fn from_terms(
        quantity: &str,
        genus: usize,
        kernel_order: usize,
        contributions: Vec<Contribution>,
        scale: u64,
        seed: u64,
    ) -> Self {
        // ordered sum for reproducibility
        let sum: C64 = contributions.iter().fold(C64::new(0.0, 0.0), |acc, c| acc + c.term);
        CountReport {
            quantity: quantity.to_string(),
            genus,
            kernel_order,
            contributions,
            formula: sum / scale as f64,
            scale,
            rounded: None,
            residual: 0.0,
            oracle: None,
            checks: Vec::new(),
            notes: Vec::new(),
            seed,
        }
    }

    /// Rounds `formula` to an integer; a residual above `count_eps` is an error.
    fn round(mut self, tol: &TolerancePolicy) -> Result<Self> {
        let (n, residual) = round_count(self.formula, tol)?;
        self.rounded = Some(n);
        self.residual = residual;
        Ok(self)
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records an integer oracle count and compares it with the rounded value.
    pub fn attach_count(&mut self, count: u64) {
        self.oracle = Some(OracleValue::Count(count));
        let ok = self.rounded == Some(count as i64);
        self.checks.push(Check::new("oracle", ok, format!("formula {:?} vs enumeration {count}", self.rounded)));
    }

    /// Records an exact rational oracle value and compares it with the rounded value.
    pub fn attach_ratio(&mut self, value: Ratio<u64>) {
        self.oracle = Some(OracleValue::Ratio([*value.numer(), *value.denom()]));
        let ok = value.is_integer() && self.rounded == Some(value.to_integer() as i64);
        self.checks.push(Check::new("oracle", ok, format!("formula {:?} vs enumeration {value}", self.rounded)));
    }

    /// Records a complex oracle value; agreement within `count_eps`.
    pub fn attach_complex(&mut self, value: C64, tol: &TolerancePolicy) {
        self.oracle = Some(OracleValue::Complex(value));
        self.residual = (self.formula - value).norm();
        let ok = self.residual < tol.count_eps;
        self.checks.push(Check::new("oracle", ok, format!("formula {:.9} vs enumeration {:.9}", self.formula, value)));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// True when an oracle ran and disagreed.
    pub fn disagrees(&self) -> bool {
        self.checks.iter().any(|c| c.name == "oracle" && !c.passed)
    }
}

/// Nearest integer to a count-valued complex number, with its residual.
pub fn round_count(z: C64, tol: &TolerancePolicy) -> Result<(i64, f64)> {
    if !(z.re.abs() < EXACT_LIMIT) {
        return Err(Error::Numerical(format!("count {} is beyond exact floating range", z.re)));
    }
    let n = z.re.round();
    let residual = (z - C64::new(n, 0.0)).norm();
    if residual > tol.count_eps {
        return Err(Error::Residual { value: format!("{z}"), residual, tolerance: tol.count_eps });
    }
    Ok((n as i64, residual))
}

fn neg_euler(genus: usize) -> i64 {
    2 * genus as i64 - 2
}

fn term(order: usize, weight: Weight, pairing: C64) -> C64 {
    pairing * (order as f64 * weight.to_f64())
}

fn contributions(a: &ExtensionAnalysis, g: &SurfaceHom, exponent: i32) -> Result<Vec<Contribution>> {
    let n = a.kernel_order();
    let e = neg_euler(g.genus());
    let rows: Vec<Result<Contribution>> = (0..a.entries.len())
        .into_par_iter()
        .map(|i| {
            let entry = &a.entries[i];
            let pairing = a.pairing(i, g)?.map(|p| p.powi(exponent));
            let weight = Weight::power(n, entry.rep.dim(), e)?;
            let t = pairing.map_or(C64::new(0.0, 0.0), |p| term(n, weight, p));
            Ok(Contribution {
                index: i,
                dim: entry.rep.dim(),
                stabilizer_order: entry.stab.subgroup.order(),
                pairing,
                weight,
                term: t,
            })
        })
        .collect();
    rows.into_iter().collect()
}

fn check_target(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<()> {
    if g.target.order() != a.ext.base().order() {
        return Err(Error::DimensionMismatch("surface hom does not land in the base group".into()));
    }
    Ok(())
}

/// `|Hom_g(π, G′)| = |Γ| Σ_{G_ρ ⊇ g(π)} (|Γ|/dim ρ)^{-χ} g*(ζ_ρ)([W])`,
/// with the derived divisibility and inequality checks attached.
pub fn count_lifts_formula(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<CountReport> {
    check_target(a, g)?;
    let tol = a.tol();
    let rows = contributions(a, g, 1)?;
    let mut report = CountReport::from_terms("lifts", g.genus(), a.kernel_order(), rows, 1, a.irr.seed).round(tol)?;
    let count = report.rounded.expect("rounded");

    let modulus = divisibility_modulus(&a.ext, g.genus());
    report.push_check(Check::new(
        "divisibility",
        divisibility_check(count, &a.ext, g.genus()),
        format!("{count} mod {modulus}"),
    ));

    let hom_gamma = hom_count_from_irr(&a.irr, g.genus())?;
    let predicted = report
        .contributions
        .iter()
        .all(|c| c.pairing.is_some_and(|p| tol.scalars_close(p, C64::new(1.0, 0.0))));
    report.push_check(Check::new(
        "inequality",
        count as i128 <= hom_gamma as i128,
        format!("{count} <= |Hom(π,Γ)| = {hom_gamma}"),
    ));
    report.push_check(Check::new(
        "equality-criterion",
        (count as i128 == hom_gamma as i128) == predicted,
        format!("equality {}, all pairings trivial {predicted}", count as i128 == hom_gamma as i128),
    ));

    if g.is_surjective() {
        let v = vk(a, g)?;
        let via_vk = v.lift_count(a.kernel_order(), g.genus())?;
        report.push_check(Check::new(
            "vk-consistency",
            via_vk == BigRational::from_integer(BigInt::from(count)),
            format!("|Γ| Σ_k v_k (|Γ|/k)^(2d-2) = {via_vk}"),
        ));
    }
    if count == 0 {
        report.notes.push("no lifts: the obstruction is decided as formula = 0; membership in Im q_* is not computed".into());
    }
    Ok(report)
}

/// `|Γ| Σ_ρ (|Γ|/dim ρ)^{-χ}`, exactly; equals `|Hom(π, Γ)|`.
fn hom_count_from_irr(irr: &IrrSet, genus: usize) -> Result<u128> {
    let n = irr.reps.first().map_or(1, |r| r.group().order());
    let mut sum = Ratio::<u128>::zero();
    for d in irr.dims() {
        sum += Weight::power(n, d, neg_euler(genus))?.0;
    }
    let total = sum * n as u128;
    if !total.is_integer() {
        return Err(Error::Numerical("Frobenius–Mednykh sum is not an integer".into()));
    }
    Ok(total.to_integer())
}

/// `|Hom(π, Γ)| = |Γ| Σ_ρ (|Γ|/dim ρ)^{-χ}` for genus `d ≥ 0`.
///
/// The value is computed exactly; `d = 0` gives `Σ dim² / |Γ|`.
pub fn frobenius_mednykh(gamma: &Arc<FiniteGroup>, genus: usize, cfg: &Config) -> Result<CountReport> {
    let irr = irreducibles(gamma, &cfg.tol, cfg.seed, cfg.retries)?;
    let n = gamma.order();
    let e = neg_euler(genus);
    let mut exact = Ratio::<u128>::zero();
    let rows = irr
        .reps
        .iter()
        .enumerate()
        .map(|(i, rho)| {
            let weight = Weight::power(n, rho.dim(), e)?;
            exact += weight.0 * n as u128;
            Ok(Contribution {
                index: i,
                dim: rho.dim(),
                stabilizer_order: 1,
                pairing: Some(C64::new(1.0, 0.0)),
                weight,
                term: term(n, weight, C64::new(1.0, 0.0)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CountReport::from_terms("homs", genus, n, rows, 1, irr.seed);
    let sum_sq: usize = irr.dims().iter().map(|d| d * d).sum();
    report.push_check(Check::new("sum-of-squares", sum_sq == n, format!("Σ dim² = {sum_sq}, |Γ| = {n}")));
    if !exact.is_integer() {
        return Err(Error::Numerical(format!("Frobenius–Mednykh value {exact} is not an integer")));
    }
    let (_, residual) = round_count(report.formula, &cfg.tol)?;
    report.rounded = Some(exact.to_integer() as i64);
    report.residual = residual;
    Ok(report)
}

/// `|Γ| · |Z(Γ)|^{2d-2}`
pub fn divisibility_modulus(ext: &Extension, genus: usize) -> BigInt {
    let n = BigInt::from(ext.kernel_order());
    let z = BigInt::from(ext.kernel().group.center().len());
    n * num_traits::pow(z, 2 * genus - 2)
}

/// Whether `count` is divisible by `|Γ| · |Z(Γ)|^{2d-2}`.
pub fn divisibility_check(count: i64, ext: &Extension, genus: usize) -> bool {
    assert!(genus >= 1, "divisibility needs genus at least 1");
    (BigInt::from(count) % divisibility_modulus(ext, genus)).is_zero()
}

/// One entry of a [`VkVector`].
#[derive(Clone, Debug, Serialize)]
pub struct VkEntry {
    pub k: usize,
    pub value: i64,
    #[serde(serialize_with = "serde_c64::serialize")]
    pub raw: C64,
    /// Number of `k`-dimensional irreducibles with `G_ρ = G`.
    pub n_k: usize,
}

/// `v_k(h) = Σ_{dim ρ = k, G_ρ = G} ζ_ρ(h)`, rounded to integers.
#[derive(Clone, Debug, Serialize)]
pub struct VkVector {
    /// One entry per dimension occurring among the irreducibles, ascending.
    pub entries: Vec<VkEntry>,
    pub residual: f64,
    pub genus: usize,
    /// Images of `x_1, y_1, …` realizing `h`.
    pub realization: Vec<String>,
}

impl VkVector {
    pub fn get(&self, k: usize) -> i64 {
        self.entries.iter().find(|e| e.k == k).map_or(0, |e| e.value)
    }

    pub fn n_k(&self, k: usize) -> usize {
        self.entries.iter().find(|e| e.k == k).map_or(0, |e| e.n_k)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.value == 0)
    }

    /// `|Γ| Σ_k v_k (|Γ|/k)^{2d-2}`, the lift count of an epimorphism.
    pub fn lift_count(&self, order: usize, genus: usize) -> Result<BigRational> {
        let mut sum = BigRational::zero();
        for e in &self.entries {
            let w = Weight::power(order, e.k, neg_euler(genus))?.0;
            let w = BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom()));
            sum += w * BigInt::from(e.value);
        }
        Ok(sum * BigInt::from(order))
    }
}

/// The vector `(v_k(h))_k` for the class realized by `g`.
pub fn vk(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<VkVector> {
    check_target(a, g)?;
    let mut dims = a.irr.dims();
    dims.sort_unstable();
    dims.dedup();
    let mut entries = Vec::new();
    let mut residual: f64 = 0.0;
    for k in dims {
        let mut raw = C64::new(0.0, 0.0);
        let mut n_k = 0;
        for (i, e) in a.entries.iter().enumerate() {
            if e.rep.dim() != k || !e.stab.is_full() {
                continue;
            }
            n_k += 1;
            raw += a.pairing(i, g)?.expect("full stabilizer contains g(π)");
        }
        let (value, r) = round_count(raw, a.tol())?;
        if value.unsigned_abs() as usize > n_k {
            return Err(Error::Numerical(format!("|v_{k}| = {} exceeds N_{k} = {n_k}", value.abs())));
        }
        residual = residual.max(r);
        entries.push(VkEntry { k, value, raw, n_k });
    }
    let realization = g.interleaved().iter().map(|&a| g.target.label(a)).collect();
    Ok(VkVector { entries, residual, genus: g.genus(), realization })
}

/// `v(h, n) = Σ_k v_k k^{-2n}`, exactly.
pub fn v_eval(v: &VkVector, n: i64) -> BigRational {
    let mut sum = BigRational::zero();
    for e in &v.entries {
        let k = BigInt::from(e.k);
        let p = num_traits::pow(k, (2 * n.unsigned_abs()) as usize);
        let term = if n >= 0 {
            BigRational::new(BigInt::from(e.value), p)
        } else {
            BigRational::from_integer(p * BigInt::from(e.value))
        };
        sum += term;
    }
    sum
}

/// Outcome of [`genus_norm_lower_bound`].
#[derive(Clone, Debug, Serialize)]
pub struct GenusBound {
    /// `⟨h, q⟩ + 1`
    pub bound: u64,
    /// `⟨h, q⟩`
    pub n0: u64,
    /// `v(h, n) ≥ 0` is guaranteed analytically from here on.
    pub threshold: u64,
    /// `v(h, n)` for `n < threshold`, as exact fractions.
    pub scanned: Vec<(u64, String)>,
    pub vk: VkVector,
}

/// Lower bound `⟨h, q⟩ + 1` for the genus norm of the class realized by `g`.
///
/// Needs `G_ρ = G` for every irreducible `ρ` of the kernel.
pub fn genus_norm_lower_bound(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<GenusBound> {
    if !a.all_stabilizers_full() {
        return Err(Error::Hypothesis("some irreducible of the kernel has G_ρ ≠ G".into()));
    }
    let v = vk(a, g)?;
    let nonzero: Vec<&VkEntry> = v.entries.iter().filter(|e| e.value != 0).collect();
    let Some(lead) = nonzero.first() else {
        return Ok(GenusBound { bound: 1, n0: 0, threshold: 0, scanned: Vec::new(), vk: v });
    };
    if lead.value < 0 {
        return Err(Error::NoFiniteThreshold(format!(
            "leading coefficient v_{} = {} is negative, so v(h, n) < 0 for all large n",
            lead.k, lead.value
        )));
    }
    // smallest N with v_{k*} > Σ_{k>k*} |v_k| (k*/k)^{2N}; the right side decreases in N
    let lead_v = BigRational::from_integer(BigInt::from(lead.value));
    let tail = |n: u64| -> BigRational {
        nonzero[1..].iter().fold(BigRational::zero(), |acc, e| {
            let r = BigRational::new(BigInt::from(lead.k), BigInt::from(e.k));
            acc + num_traits::pow(r, 2 * n as usize) * BigInt::from(e.value.abs())
        })
    };
    let mut threshold = 0u64;
    while tail(threshold) >= lead_v {
        threshold += 1;
    }
    let mut n0 = threshold;
    let mut scanned = Vec::new();
    for n in (0..threshold).rev() {
        let val = v_eval(&v, n as i64);
        scanned.push((n, val.to_string()));
        if val.is_negative() {
            break;
        }
        n0 = n;
    }
    scanned.reverse();
    Ok(GenusBound { bound: n0 + 1, n0, threshold, scanned, vk: v })
}

/// Whether `g` realizes an extremal class: `ζ_ρ(h) = 1` whenever `G_ρ = G`.
pub fn extremal_test(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<bool> {
    let one = C64::new(1.0, 0.0);
    for (i, e) in a.entries.iter().enumerate() {
        if e.stab.is_full() {
            let p = a.pairing(i, g)?.expect("full stabilizer");
            if !a.tol().scalars_close(p, one) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of [`quasi_epi_test`].
#[derive(Clone, Debug, Serialize)]
pub struct QuasiEpi {
    pub quasi_epimorphism: bool,
    /// The general formula.
    #[serde(serialize_with = "serde_c64::serialize")]
    pub formula: C64,
    /// The epimorphism form, summing only over `G_ρ = G`.
    #[serde(serialize_with = "serde_c64::serialize")]
    pub epimorphism_form: C64,
}

/// Whether `g(π)` meets `G − G_ρ` for every proper stabilizer `G_ρ`.
pub fn quasi_epi_test(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<QuasiEpi> {
    let image = g.image();
    let quasi = a
        .entries
        .iter()
        .filter(|e| !e.stab.is_full())
        .all(|e| image.iter().any(|&x| !e.stab.subgroup.contains(x)));
    let rows = contributions(a, g, 1)?;
    let formula: C64 = rows.iter().map(|c| c.term).sum();
    let epimorphism_form: C64 = rows
        .iter()
        .filter(|c| a.entries[c.index].stab.is_full())
        .map(|c| c.term)
        .sum();
    if quasi && (formula - epimorphism_form).norm() > a.tol().count_eps {
        return Err(Error::Numerical("quasi-epimorphism but the two formula forms differ".into()));
    }
    Ok(QuasiEpi { quasi_epimorphism: quasi, formula, epimorphism_form })
}

/// `|Hom_g(π, G′)|` for abelian `Γ`: `|Γ|^b / |[Γ, G′]|` when lifts exist, else 0,
/// computed after reducing `g` to an epimorphism.
pub fn abelian_count(ext: &Extension, g: &SurfaceHom, cfg: &Config) -> Result<CountReport> {
    if !ext.kernel().group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let (red, g_red) = ext.reduce_to_image(g)?;
    let a = ExtensionAnalysis::new(&red.ext, cfg)?;
    let mut report = count_lifts_formula(&a, &g_red)?;
    let m = mixed_commutator(&red.ext).len() as u128;
    let n = ext.kernel_order() as u128;
    let b = 2 * g.genus() as u32;
    let closed = n
        .checked_pow(b)
        .ok_or_else(|| Error::Numerical("|Γ|^b overflows".into()))?;
    let closed = if report.rounded == Some(0) { 0 } else { closed / m };
    report.quantity = "lifts-abelian".into();
    report.push_check(Check::new(
        "closed-form",
        report.rounded.map(i128::from) == Some(closed as i128),
        format!("|Γ|^b/|[Γ,G′]| = {n}^{b}/{m}, formula {:?}", report.rounded),
    ));
    report.notes.push(format!(
        "reduced to q⁻¹(g(π)) → g(π) with |g(π)| = {}, |[Γ,G′]| = {m}",
        red.base.order()
    ));
    Ok(report)
}

/// Applicability and value of the lower bound `|Γ|^b/m · (1 − (m−1)/2^b)`, `m = |[Γ, G′]|`.
#[derive(Clone, Debug, Serialize)]
pub struct GenusBoundDecision {
    pub b: u64,
    pub mixed_commutator_order: u64,
    /// `b > log₂(m − 1)`, vacuously true when `m = 1`.
    pub applicable: bool,
    pub vacuous: bool,
    pub lifts_exist: bool,
    pub count: i64,
    /// Exact bound as a fraction.
    pub bound: String,
    pub bound_approx: f64,
    /// `count ≥ bound`, checked when applicable and lifts exist.
    pub satisfied: Option<bool>,
}

/// Decides the hypothesis `b > log₂(|[Γ,G′]| − 1)` on the reduced extension
/// and compares the count with the lower bound.
pub fn genus_bound_decision(ext: &Extension, g: &SurfaceHom, cfg: &Config) -> Result<GenusBoundDecision> {
    let (red, g_red) = ext.reduce_to_image(g)?;
    let a = ExtensionAnalysis::new(&red.ext, cfg)?;
    let count = count_lifts_formula(&a, &g_red)?.rounded.expect("rounded");
    let m = mixed_commutator(&red.ext).len() as u64;
    let b = 2 * g.genus() as u64;
    let two_b = num_traits::pow(BigInt::from(2), b as usize);
    let applicable = m == 1 || two_b > BigInt::from(m - 1);
    let n = BigInt::from(ext.kernel_order());
    let bound = BigRational::new(num_traits::pow(n, b as usize), BigInt::from(m))
        * (BigRational::one() - BigRational::new(BigInt::from(m - 1), two_b));
    let lifts_exist = count != 0;
    let satisfied = (applicable && lifts_exist).then(|| BigRational::from_integer(BigInt::from(count)) >= bound);
    Ok(GenusBoundDecision {
        b,
        mixed_commutator_order: m,
        applicable,
        vacuous: m == 1,
        lifts_exist,
        count,
        bound_approx: bound.to_f64().unwrap_or(f64::NAN),
        bound: bound.to_string(),
        satisfied,
    })
}

/// `Σ_{ξ′} 1/|Aut_ξ(ξ′)| = Σ_{G_ρ ⊇ g(π)} (|Γ|/dim ρ)^{-χ} g*(ζ_ρ)([W])`.
pub fn bundle_weighted_count(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<CountReport> {
    check_target(a, g)?;
    let rows = contributions(a, g, 1)?;
    let n = a.kernel_order();
    let mut report = CountReport::from_terms("bundles", g.genus(), n, rows, n as u64, a.irr.seed).round(a.tol())?;
    let count = report.rounded.expect("rounded");
    let z = a.ext.kernel().group.center().len() as u128;
    let m = z.checked_pow(2 * g.genus() as u32 - 2);
    report.push_check(Check::new(
        "divisibility",
        m.is_some_and(|m| (count as i128).rem_euclid(m as i128) == 0),
        format!("{count} divisible by |Z(Γ)|^(2d-2)"),
    ));
    Ok(report)
}

/// `|S_*| = |Φ| Σ_{π_ρ = π} (|Φ|/dim ρ)^{-χ} ζ_ρ([W])`, reported as the
/// weighted value `|S_*|/|Φ|` with `|S_*|` among the checks.
pub fn sections_weighted_count(datum: &ExtensionDatum, cfg: &Config) -> Result<CountReport> {
    datum.validate()?;
    let phi = &datum.phi;
    let irr = irreducibles(phi, &cfg.tol, cfg.seed, cfg.retries)?;
    let n = phi.order();
    let e = neg_euler(datum.genus());
    let rows = irr
        .reps
        .par_iter()
        .enumerate()
        .map(|(i, rho)| {
            let weight = Weight::power(n, rho.dim(), e)?;
            let pairing = if is_datum_stable(datum, rho, &cfg.tol) {
                Some(rep_pairing_defect(datum, rho, &cfg.tol)?)
            } else {
                None
            };
            Ok(Contribution {
                index: i,
                dim: rho.dim(),
                stabilizer_order: usize::from(pairing.is_some()),
                pairing,
                weight,
                term: pairing.map_or(C64::new(0.0, 0.0), |p| term(n, weight, p)),
            })
        })
        .collect::<Vec<Result<Contribution>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut report = CountReport::from_terms("sections", datum.genus(), n, rows, n as u64, irr.seed).round(&cfg.tol)?;
    let weighted = report.rounded.expect("rounded");
    let sections = weighted * n as i64;
    report.push_check(Check::new("existence", true, format!("|S_*| = {sections}, sections exist: {}", sections != 0)));
    let z = phi.center().len() as i128;
    let m = z.checked_pow(2 * datum.genus() as u32 - 2);
    report.push_check(Check::new(
        "divisibility",
        m.is_some_and(|m| (weighted as i128).rem_euclid(m) == 0),
        format!("{weighted} divisible by |Z(Φ)|^(2d-2)"),
    ));
    report.notes.push("stabilizer_order is 1 for irreducibles stable under every ψ, 0 otherwise".into());
    Ok(report)
}

/// `M(π; Φ) = |Z¹(π; Φ)|/|Φ|` for an action of the surface group on `Φ`.
pub fn h1_measure(action: &SurfaceAction, cfg: &Config) -> Result<CountReport> {
    let mut report = sections_weighted_count(&action.split_datum(), cfg)?;
    report.quantity = "h1-measure".into();
    Ok(report)
}

/// `|Γ| Σ_{θ-irreducible ρ, G_ρ ⊇ g(π)} (|Γ|/dim ρ)^{-χ} g*(ζ_ρ)([W])`, the
/// value of `Σ_{g′ ∈ Hom_g(π, G′)} (g′)*[θ]([W])`.
pub fn t2_formula(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<CountReport> {
    check_target(a, g)?;
    let rows = contributions(a, g, T2_PAIRING_EXPONENT)?;
    let mut report = CountReport::from_terms("theta-sum", g.genus(), a.kernel_order(), rows, 1, a.irr.seed);
    if a.theta.is_none() {
        report = report.round(a.tol())?;
    }
    Ok(report)
}

/// The twisted weighted bundle sum: [`t2_formula`] divided by `|Γ|`.
pub fn t2_bundle_formula(a: &ExtensionAnalysis, g: &SurfaceHom) -> Result<CountReport> {
    let mut report = t2_formula(a, g)?;
    let n = a.kernel_order();
    report.quantity = "theta-bundles".into();
    report.formula /= n as f64;
    report.scale = n as u64;
    report.rounded = None;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::{pullback_datum, Automorphism};

    fn cfg() -> Config {
        Config::default()
    }

    fn hom(g: &Arc<FiniteGroup>, x: Vec<usize>, y: Vec<usize>) -> SurfaceHom {
        SurfaceHom::new(g.clone(), x.len(), x, y).unwrap()
    }

    fn q8_surjective(ext: &Extension) -> SurfaceHom {
        hom(ext.base(), vec![ext.q.apply(catalog::Q8_I)], vec![ext.q.apply(catalog::Q8_J)])
    }

    #[test]
    fn split_z3_genus_one_gives_nine() {
        let ext = catalog::split_z3_z2();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let r = count_lifts_formula(&a, &hom(ext.base(), vec![1], vec![0])).unwrap();
        assert_eq!(r.rounded, Some(9));
        assert!(r.all_passed(), "{:?}", r.checks);
    }

    #[test]
    fn s3_and_q8_examples() {
        let ext = catalog::s3_sign();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let r = count_lifts_formula(&a, &hom(ext.base(), vec![1], vec![1])).unwrap();
        assert_eq!(r.rounded, Some(3));
        let ext = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let r = count_lifts_formula(&a, &q8_surjective(&ext)).unwrap();
        assert_eq!(r.rounded, Some(0));
        assert!(r.all_passed(), "{:?}", r.checks);
    }

    #[test]
    fn frobenius_mednykh_values() {
        let s3 = Arc::new(catalog::symmetric(3));
        let at = |d| frobenius_mednykh(&s3, d, &cfg()).unwrap().rounded;
        assert_eq!(at(0), Some(1));
        assert_eq!(at(1), Some(18));
        assert_eq!(at(2), Some(486));
    }

    #[test]
    fn vk_examples() {
        let ext = catalog::s3_sign();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let v = vk(&a, &hom(ext.base(), vec![1], vec![0])).unwrap();
        assert_eq!((v.get(1), v.get(2)), (1, 0));

        let ext = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let v = vk(&a, &q8_surjective(&ext)).unwrap();
        assert!(v.is_zero());
        assert!((0..5).all(|n| v_eval(&v, n).is_zero()));
        let v0 = vk(&a, &SurfaceHom::trivial(ext.base().clone(), 1).unwrap()).unwrap();
        assert_eq!(v0.get(1), v0.n_k(1) as i64);
        assert_eq!(v_eval(&v0, 3), BigRational::from_integer(2.into()));
    }

    #[test]
    fn v_eval_on_mixed_dimensions() {
        let v = VkVector {
            entries: vec![
                VkEntry { k: 1, value: 1, raw: C64::new(1.0, 0.0), n_k: 1 },
                VkEntry { k: 2, value: -3, raw: C64::new(-3.0, 0.0), n_k: 3 },
            ],
            residual: 0.0,
            genus: 1,
            realization: Vec::new(),
        };
        assert_eq!(v_eval(&v, 0), BigRational::from_integer((-2).into()));
        assert_eq!(v_eval(&v, 1), BigRational::new(1.into(), 4.into()));
        assert_eq!(v_eval(&v, -1), BigRational::from_integer((-11).into()));
    }

    #[test]
    fn genus_bounds() {
        let ext = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        assert_eq!(genus_norm_lower_bound(&a, &q8_surjective(&ext)).unwrap().bound, 1);
        let zero = SurfaceHom::trivial(ext.base().clone(), 1).unwrap();
        let b = genus_norm_lower_bound(&a, &zero).unwrap();
        assert_eq!((b.bound, b.n0), (1, 0));

        let ext = catalog::s3_sign();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let zero = SurfaceHom::trivial(ext.base().clone(), 1).unwrap();
        assert!(matches!(genus_norm_lower_bound(&a, &zero), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn abelian_counts() {
        let ext = catalog::q8_over_klein();
        let zero = SurfaceHom::trivial(ext.base().clone(), 1).unwrap();
        let r = abelian_count(&ext, &zero, &cfg()).unwrap();
        assert_eq!(r.rounded, Some(4));
        assert!(r.all_passed());
        let r = abelian_count(&ext, &q8_surjective(&ext), &cfg()).unwrap();
        assert_eq!(r.rounded, Some(0));
        let s4 = catalog::s4_over_s3();
        let r = abelian_count(&s4, &SurfaceHom::trivial(s4.base().clone(), 1).unwrap(), &cfg()).unwrap();
        assert_eq!(r.rounded, Some(16));
        let sl = catalog::sl23_over_z3();
        let g = SurfaceHom::trivial(sl.base().clone(), 1).unwrap();
        assert!(matches!(abelian_count(&sl, &g, &cfg()), Err(Error::NotAbelian)));
    }

    #[test]
    fn eqq4_bounds_for_s3() {
        let ext = catalog::s3_sign();
        let g1 = hom(ext.base(), vec![1], vec![1]);
        let d = genus_bound_decision(&ext, &g1, &cfg()).unwrap();
        assert!(d.applicable && !d.vacuous);
        assert_eq!((d.count, d.bound.as_str(), d.satisfied), (3, "3/2", Some(true)));
        let g2 = hom(ext.base(), vec![1, 0], vec![1, 0]);
        let d = genus_bound_decision(&ext, &g2, &cfg()).unwrap();
        assert_eq!((d.count, d.bound.as_str(), d.satisfied), (27, "189/8", Some(true)));
        let q = catalog::q8_over_klein();
        let d = genus_bound_decision(&q, &q8_surjective(&q), &cfg()).unwrap();
        assert!(d.vacuous && !d.lifts_exist && d.satisfied.is_none());
    }

    #[test]
    fn divisibility_examples() {
        let s3 = catalog::s3_sign();
        assert!(divisibility_check(3, &s3, 1));
        assert!(divisibility_check(0, &s3, 2));
        let split = catalog::split_z3_z2();
        assert!(divisibility_check(81, &split, 2));
        assert!(!divisibility_check(9, &split, 2));
    }

    #[test]
    fn bundle_and_section_examples() {
        let z3 = catalog::split_product(&catalog::cyclic(3), &catalog::cyclic(1));
        let a = ExtensionAnalysis::new(&z3, &cfg()).unwrap();
        let r = bundle_weighted_count(&a, &SurfaceHom::trivial(z3.base().clone(), 1).unwrap()).unwrap();
        assert_eq!(r.rounded, Some(3));

        let s3 = Arc::new(catalog::symmetric(3));
        let action = SurfaceAction::trivial(s3, 1).unwrap();
        let r = h1_measure(&action, &cfg()).unwrap();
        assert_eq!(r.rounded, Some(3));

        let q = catalog::q8_over_klein();
        let datum = pullback_datum(&q, &q8_surjective(&q), None).unwrap();
        assert_eq!(sections_weighted_count(&datum, &cfg()).unwrap().rounded, Some(0));

        let one = Arc::new(catalog::cyclic(1));
        let action = SurfaceAction::trivial(one, 2).unwrap();
        assert_eq!(h1_measure(&action, &cfg()).unwrap().rounded, Some(1));
    }

    #[test]
    fn inversion_action_on_z3() {
        let z3 = Arc::new(catalog::cyclic(3));
        let inv = Automorphism::new(&z3, vec![0, 2, 1]).unwrap();
        let action = SurfaceAction::new(z3.clone(), vec![inv], vec![Automorphism::identity(3)]).unwrap();
        let oracle = crate::oracle::enumerate_cocycles(&action, &cfg()).unwrap();
        let r = h1_measure(&action, &cfg()).unwrap();
        assert_eq!(Ratio::from_integer(r.rounded.unwrap() as u64), oracle.measure);
    }

    #[test]
    fn quasi_epimorphisms() {
        let ext = catalog::s3_sign();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let zero = SurfaceHom::trivial(ext.base().clone(), 1).unwrap();
        assert!(!quasi_epi_test(&a, &zero).unwrap().quasi_epimorphism);
        assert!(quasi_epi_test(&a, &hom(ext.base(), vec![1], vec![0])).unwrap().quasi_epimorphism);
        let q = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&q, &cfg()).unwrap();
        let zero = SurfaceHom::trivial(q.base().clone(), 1).unwrap();
        assert!(quasi_epi_test(&a, &zero).unwrap().quasi_epimorphism);
    }

    #[test]
    fn extremal_classes() {
        let q = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&q, &cfg()).unwrap();
        assert!(extremal_test(&a, &SurfaceHom::trivial(q.base().clone(), 1).unwrap()).unwrap());
        assert!(!extremal_test(&a, &q8_surjective(&q)).unwrap());
        let s = catalog::split_z3_z2();
        let a = ExtensionAnalysis::new(&s, &cfg()).unwrap();
        assert!(extremal_test(&a, &hom(s.base(), vec![1], vec![1])).unwrap());
    }

    fn omega(k: i64) -> C64 {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0)
    }

    #[test]
    fn twisted_count_on_the_symplectic_klein_fixture() {
        let ext = catalog::split_product(&catalog::klein(), &catalog::cyclic(1));
        let theta = TwoCocycle::from_root_exponents(ext.big().clone(), 2, |a, b| ((a / 2) * (b % 2)) as i64, &cfg().tol).unwrap();
        let theta = Arc::new(theta);
        let a = ExtensionAnalysis::twisted(&ext, theta.clone(), &cfg()).unwrap();
        assert_eq!(a.irr.dims(), vec![2]);
        let g = SurfaceHom::trivial(ext.base().clone(), 1).unwrap();
        let mut r = t2_formula(&a, &g).unwrap();
        let lhs = crate::oracle::t2_lhs_oracle(&ext, &g, &theta, &cfg()).unwrap();
        r.attach_complex(lhs, &cfg().tol);
        assert!((r.formula - C64::new(4.0, 0.0)).norm() < 1e-9);
        assert!(r.all_passed(), "{:?}", r.checks);
    }

    #[test]
    fn twisted_count_with_a_complex_pairing() {
        // θ = ω^{a1 b2} on (ℤ/3)³ is trivial on the kernel but pairs to ω^{±1}
        let ext = catalog::z3_cubed_over_z3_squared();
        let theta = TwoCocycle::from_root_exponents(ext.big().clone(), 3, |a, b| ((a / 9) * ((b / 3) % 3)) as i64, &cfg().tol).unwrap();
        let theta = Arc::new(theta);
        let a = ExtensionAnalysis::twisted(&ext, theta.clone(), &cfg()).unwrap();
        let g = hom(ext.base(), vec![ext.q.apply(9)], vec![ext.q.apply(3)]);
        let lhs = crate::oracle::t2_lhs_oracle(&ext, &g, &theta, &cfg()).unwrap();
        assert!((lhs - omega(1) * 9.0).norm() < 1e-9, "{lhs}");
        let rhs = t2_formula(&a, &g).unwrap().formula;
        assert!((rhs - lhs).norm() < 1e-9, "{rhs} vs {lhs}");
        let rev = g.reversed();
        let lhs = crate::oracle::t2_lhs_oracle(&ext, &rev, &theta, &cfg()).unwrap();
        assert!((t2_formula(&a, &rev).unwrap().formula - lhs).norm() < 1e-9);
    }

    #[test]
    fn heisenberg_routes_agree_on_complex_pairings() {
        let ext = catalog::heisenberg_over_z3z3();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let x = ext.q.apply(9);
        let y = ext.q.apply(3);
        for (gx, gy) in [(x, y), (y, x), (x, x)] {
            let g = hom(ext.base(), vec![gx], vec![gy]);
            let datum = pullback_datum(&ext, &g, None).unwrap();
            let mut values = Vec::new();
            for (i, e) in a.entries.iter().enumerate() {
                let p = a.pairing(i, &g).unwrap().unwrap();
                let d = rep_pairing_defect(&datum, &e.rep, &cfg().tol).unwrap();
                assert!((p - d).norm() < 1e-9, "{p} vs {d}");
                values.push(p);
            }
            let r = count_lifts_formula(&a, &g).unwrap();
            let oracle = crate::oracle::enumerate_lifts(&ext, &g, &cfg(), false).unwrap().count;
            assert_eq!(r.rounded, Some(oracle as i64));
            if gx != gy {
                assert!(values.iter().any(|p| p.im.abs() > 0.5));
            }
        }
    }

    #[test]
    fn report_serializes_pairs() {
        let ext = catalog::q8_over_klein();
        let a = ExtensionAnalysis::new(&ext, &cfg()).unwrap();
        let mut r = count_lifts_formula(&a, &q8_surjective(&ext)).unwrap();
        r.attach_count(0);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["rounded"], 0);
        assert_eq!(json["oracle"], 0);
        assert_eq!(json["contributions"][1]["weight"], serde_json::json!([1, 1]));
        let p = &json["contributions"][1]["pairing"];
        assert!((p[0].as_f64().unwrap() + 1.0).abs() < 1e-9);
    }
}
