//! Brute-force ground truth: exhaustive enumeration of lifts, sections,
//! twisted cocycles and conjugation orbits.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{theta_pairing, TwoCocycle};
use crate::error::{Error, Result};
use crate::group::{Elem, Extension, ExtensionDatum, FiniteGroup, SurfaceAction, SurfaceHom};
use crate::Config;

/// Per-handle candidate pairs and the value each contributes to the relator.
///
/// A tuple is accepted when the ordered product of its handle values equals `target`.
struct HandleTables {
    /// `pairs[i]` lists the candidate `(a_i, b_i)`.
    pairs: Vec<Vec<(Elem, Elem)>>,
    /// `values[i][p]` is the relator contribution of `pairs[i][p]`.
    values: Vec<Vec<Elem>>,
    target: Elem,
}

impl HandleTables {
    fn needed(&self, prune: bool) -> u128 {
        let sizes: Vec<u128> = self.pairs.iter().map(|p| p.len() as u128).collect();
        let d = sizes.len();
        if prune && d >= 1 {
            sizes[..d - 1].iter().product::<u128>() + sizes[d - 1]
        } else {
            sizes.iter().product()
        }
    }

    fn check_budget(&self, prune: bool, budget: u64) -> Result<()> {
        let needed = self.needed(prune);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(())
    }

    /// For the last handle: value ↦ pair indices producing it.
    fn last_index(&self, order: usize) -> Vec<Vec<usize>> {
        let mut idx = vec![Vec::new(); order];
        for (p, &v) in self.values.last().expect("d ≥ 1").iter().enumerate() {
            idx[v].push(p);
        }
        idx
    }

    /// Number of accepted tuples, partitioned over the first handle's pairs.
    fn count(&self, g: &FiniteGroup, prune: bool) -> u64 {
        let last = prune.then(|| self.last_index(g.order()));
        if self.pairs.len() == 1 {
            return match &last {
                Some(idx) => idx[self.target].len() as u64,
                None => self.values[0].iter().filter(|&&v| v == self.target).count() as u64,
            };
        }
        (0..self.pairs[0].len())
            .into_par_iter()
            .map(|p| self.count_from(g, 1, self.values[0][p], last.as_deref()))
            .sum()
    }

    fn count_from(&self, g: &FiniteGroup, i: usize, acc: Elem, last: Option<&[Vec<usize>]>) -> u64 {
        let d = self.pairs.len();
        if i == d - 1 {
            if let Some(idx) = last {
                // need acc · v = target
                return idx[g.mul(g.inv(acc), self.target)].len() as u64;
            }
            return self.values[i].iter().filter(|&&v| g.mul(acc, v) == self.target).count() as u64;
        }
        self.values[i].iter().map(|&v| self.count_from(g, i + 1, g.mul(acc, v), last)).sum()
    }

    /// Accepted tuples as pair-index vectors, in lexicographic order.
    fn collect(&self, g: &FiniteGroup, prune: bool) -> Vec<Vec<usize>> {
        let last = prune.then(|| self.last_index(g.order()));
        if let (Some(idx), 1) = (&last, self.pairs.len()) {
            return idx[self.target].iter().map(|&p| vec![p]).collect();
        }
        (0..self.pairs[0].len())
            .into_par_iter()
            .map(|p| {
                let mut out = Vec::new();
                let mut path = vec![p];
                self.collect_from(g, 1, self.values[0][p], &mut path, &mut out, last.as_deref());
                out
            })
            .flatten()
            .collect()
    }

    fn collect_from(
        &self,
        g: &FiniteGroup,
        i: usize,
        acc: Elem,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        last: Option<&[Vec<usize>]>,
    ) {
        let d = self.pairs.len();
        if i == d {
            if acc == self.target {
                out.push(path.clone());
            }
            return;
        }
        if i == d - 1 {
            if let Some(idx) = last {
                for &p in &idx[g.mul(g.inv(acc), self.target)] {
                    path.push(p);
                    out.push(path.clone());
                    path.pop();
                }
                return;
            }
        }
        for (p, &v) in self.values[i].iter().enumerate() {
            path.push(p);
            self.collect_from(g, i + 1, g.mul(acc, v), path, out, last);
            path.pop();
        }
    }

    fn tuple(&self, path: &[usize]) -> (Vec<Elem>, Vec<Elem>) {
        path.iter().enumerate().map(|(i, &p)| self.pairs[i][p]).unzip()
    }
}

fn lift_tables(ext: &Extension, g: &SurfaceHom) -> HandleTables {
    let big = ext.big();
    let (pairs, values) = g
        .x()
        .iter()
        .zip(g.y())
        .map(|(&x, &y)| {
            let pairs: Vec<(Elem, Elem)> = ext
                .fiber(x)
                .iter()
                .flat_map(|&a| ext.fiber(y).iter().map(move |&b| (a, b)))
                .collect();
            let values = pairs.iter().map(|&(a, b)| big.commutator(a, b)).collect();
            (pairs, values)
        })
        .unzip();
    HandleTables { pairs, values, target: big.identity() }
}

fn section_tables(datum: &ExtensionDatum) -> HandleTables {
    let phi = &datum.phi;
    let n = phi.order();
    let mut w = crate::group::Automorphism::identity(n);
    let mut pairs = Vec::new();
    let mut values = Vec::new();
    for i in 0..datum.genus() {
        let (x, y) = (&datum.psi_x[i], &datum.psi_y[i]);
        let p: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let v = p
            .iter()
            .map(|&(a, b)| w.apply(crate::group::handle_commutator(phi, x, y, a, b)))
            .collect();
        pairs.push(p);
        values.push(v);
        w = w.compose(&x.commutator(y));
    }
    HandleTables { pairs, values, target: phi.inv(datum.phi0) }
}

/// Result of [`enumerate_lifts`].
#[derive(Clone, Debug)]
pub struct LiftEnumeration {
    pub count: u64,
    /// Lifts as surface homs into `G′`, when requested.
    pub lifts: Option<Vec<SurfaceHom>>,
    /// Relator evaluations performed.
    pub evaluations: u128,
}

/// All `g′` with `q∘g′ = g`, by iterating lifted generator tuples.
pub fn enumerate_lifts(ext: &Extension, g: &SurfaceHom, cfg: &Config, collect: bool) -> Result<LiftEnumeration> {
    let t = lift_tables(ext, g);
    t.check_budget(cfg.prune, cfg.budget)?;
    let big = ext.big();
    let evaluations = t.needed(cfg.prune);
    if !collect {
        return Ok(LiftEnumeration { count: t.count(big, cfg.prune), lifts: None, evaluations });
    }
    let lifts: Vec<SurfaceHom> = t
        .collect(big, cfg.prune)
        .iter()
        .map(|path| {
            let (x, y) = t.tuple(path);
            SurfaceHom::new(big.clone(), g.genus(), x, y)
        })
        .collect::<Result<_>>()?;
    Ok(LiftEnumeration { count: lifts.len() as u64, lifts: Some(lifts), evaluations })
}

/// Number of sections of the extension described by `datum`.
pub fn enumerate_sections(datum: &ExtensionDatum, cfg: &Config) -> Result<u64> {
    let t = section_tables(datum);
    t.check_budget(cfg.prune, cfg.budget)?;
    Ok(t.count(&datum.phi, cfg.prune))
}

/// All homomorphisms from the genus-`d` surface group into `g`.
pub fn enumerate_surface_homs(g: &Arc<FiniteGroup>, genus: usize, budget: u64) -> Result<Vec<SurfaceHom>> {
    let n = g.order();
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let values: Vec<Elem> = pairs.iter().map(|&(a, b)| g.commutator(a, b)).collect();
    let t = HandleTables {
        pairs: vec![pairs; genus],
        values: vec![values; genus],
        target: g.identity(),
    };
    t.check_budget(true, budget)?;
    t.collect(g, true)
        .iter()
        .map(|path| {
            let (x, y) = t.tuple(path);
            SurfaceHom::new(g.clone(), genus, x, y)
        })
        .collect()
}

/// One representative per orbit of simultaneous conjugation by the target group.
pub fn conjugacy_representatives(homs: &[SurfaceHom]) -> Vec<SurfaceHom> {
    let Some(first) = homs.first() else {
        return Vec::new();
    };
    let g = first.target.clone();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for h in homs {
        if seen.contains(&h.interleaved()) {
            continue;
        }
        for c in g.elements() {
            seen.insert(h.conjugated(c).interleaved());
        }
        reps.push(h.clone());
    }
    reps
}

/// Orbits of a finite set of tuples under a group action.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    /// Index of each orbit's first member in the input list.
    pub representatives: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub stabilizer_orders: Vec<usize>,
    pub acting_order: usize,
}

impl OrbitTable {
    pub fn total(&self) -> usize {
        self.orbit_sizes.iter().sum()
    }

    /// `Σ |acting group| / |stabilizer|` over orbits.
    pub fn weighted_total(&self) -> usize {
        self.stabilizer_orders.iter().map(|s| self.acting_order / s).sum()
    }

    /// `Σ 1/|stabilizer|` over orbits, exactly.
    pub fn inverse_stabilizer_sum(&self) -> Ratio<u64> {
        self.stabilizer_orders
            .iter()
            .fold(Ratio::from_integer(0), |acc, &s| acc + Ratio::new(1, s as u64))
    }

    fn build(tuples: &[Vec<Elem>], acting: usize, act: impl Fn(Elem, &[Elem]) -> Vec<Elem>) -> Result<Self> {
        let index: HashMap<&[Elem], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut orbit_of = vec![usize::MAX; tuples.len()];
        let mut table = OrbitTable {
            representatives: Vec::new(),
            orbit_sizes: Vec::new(),
            stabilizer_orders: Vec::new(),
            acting_order: acting,
        };
        for (i, t) in tuples.iter().enumerate() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let o = table.representatives.len();
            let mut size = 0;
            let mut stab = 0;
            for c in 0..acting {
                let image = act(c, t);
                if image == *t {
                    stab += 1;
                }
                let j = *index
                    .get(image.as_slice())
                    .ok_or_else(|| Error::Numerical("tuple set is not closed under the action".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = o;
                    size += 1;
                }
            }
            if size * stab != acting {
                return Err(Error::Numerical("orbit-stabilizer identity fails".into()));
            }
            table.representatives.push(i);
            table.orbit_sizes.push(size);
            table.stabilizer_orders.push(stab);
        }
        Ok(table)
    }
}

/// Orbits of `Hom_g(π, G′)` under conjugation by `Γ`.
pub fn orbit_table(lifts: &[SurfaceHom], ext: &Extension) -> Result<OrbitTable> {
    let big = ext.big();
    let k = ext.kernel();
    let tuples: Vec<Vec<Elem>> = lifts.iter().map(SurfaceHom::interleaved).collect();
    let table = OrbitTable::build(&tuples, k.order(), |c, t| {
        let gamma = k.to_parent(c);
        t.iter().map(|&a| big.conj(gamma, a)).collect()
    })?;
    if table.weighted_total() != lifts.len() {
        return Err(Error::Numerical("orbit weights do not add up to the lift count".into()));
    }
    Ok(table)
}

/// Result of [`enumerate_cocycles`].
#[derive(Clone, Debug)]
pub struct CocycleEnumeration {
    /// `|Z¹(π; Φ)|`
    pub z1: u64,
    /// Orbits of the `Φ`-action, i.e. the elements of `H¹(π; Φ)`.
    pub orbits: OrbitTable,
    /// `Σ_{h ∈ H¹} 1/|Aut(h)|`
    pub measure: Ratio<u64>,
}

/// Twisted cocycles `π → Φ` (values on the generators) and their classes
/// under `(φα)(a) = φ α(a) (aφ)⁻¹`.
pub fn enumerate_cocycles(action: &SurfaceAction, cfg: &Config) -> Result<CocycleEnumeration> {
    let datum = action.split_datum();
    let t = section_tables(&datum);
    t.check_budget(cfg.prune, cfg.budget)?;
    let phi = &action.phi;
    let tuples: Vec<Vec<Elem>> = t
        .collect(phi, cfg.prune)
        .iter()
        .map(|path| {
            let (x, y) = t.tuple(path);
            x.iter().zip(&y).flat_map(|(&a, &b)| [a, b]).collect()
        })
        .collect();
    let autos: Vec<&crate::group::Automorphism> =
        action.x.iter().zip(&action.y).flat_map(|(a, b)| [a, b]).collect();
    let orbits = OrbitTable::build(&tuples, phi.order(), |f, t| {
        t.iter()
            .zip(&autos)
            .map(|(&v, psi)| phi.mul(phi.mul(f, v), phi.inv(psi.apply(f))))
            .collect()
    })?;
    let measure = orbits.inverse_stabilizer_sum();
    if measure != Ratio::new(tuples.len() as u64, phi.order() as u64) {
        return Err(Error::Numerical("Σ 1/|Aut| differs from |Z¹|/|Φ|".into()));
    }
    Ok(CocycleEnumeration { z1: tuples.len() as u64, orbits, measure })
}

/// `Σ_{g′ ∈ Hom_g(π, G′)} (g′)*[θ]([W])`.
pub fn t2_lhs_oracle(ext: &Extension, g: &SurfaceHom, theta: &TwoCocycle, cfg: &Config) -> Result<C64> {
    let lifts = enumerate_lifts(ext, g, cfg, true)?.lifts.expect("collected");
    let vals: Vec<C64> = lifts
        .par_iter()
        .map(|h| theta_pairing(theta, h, &cfg.tol))
        .collect::<Result<_>>()?;
    Ok(vals.iter().sum())
}
