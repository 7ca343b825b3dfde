use std::sync::Arc;

use super::{Elem, FiniteGroup, Subgroup, SurfaceHom};
use crate::error::{Error, Result};

/// A validated homomorphism between finite groups, stored as a full images array.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: Arc<FiniteGroup>,
    pub codomain: Arc<FiniteGroup>,
    images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>, images: Vec<Elem>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::Malformed(format!(
                "homomorphism has {} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&b| b >= codomain.order()) {
            return Err(Error::Malformed(format!("image {bad} is out of range")));
        }
        if images[domain.identity()] != codomain.identity() {
            return Err(Error::NotHomomorphism { a: domain.identity(), b: domain.identity() });
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { domain, codomain, images })
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn kernel(&self) -> Vec<Elem> {
        let e = self.codomain.identity();
        self.domain.elements().filter(|&a| self.images[a] == e).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        for &b in &self.images {
            hit[b] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// An epimorphism `q: G' → G` together with its kernel `Γ`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub q: GroupHom,
    kernel: Subgroup,
    fibers: Vec<Vec<Elem>>,
}

impl Extension {
    pub fn new(q: GroupHom) -> Result<Self> {
        if !q.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let kernel = Subgroup::new(&q.domain, &q.kernel())?;
        let mut fibers = vec![Vec::new(); q.codomain.order()];
        for a in q.domain.elements() {
            fibers[q.apply(a)].push(a);
        }
        debug_assert!(fibers.iter().all(|f| f.len() == kernel.order()));
        Ok(Extension { q, kernel, fibers })
    }

    /// The quotient map `G' → G'/N` for a normal subgroup `N`.
    ///
    /// Quotient elements are numbered by the smallest element of each coset,
    /// in increasing order, so the identity coset is labeled like `G'`'s identity.
    pub fn from_normal_subgroup(big: Arc<FiniteGroup>, normal: &[Elem]) -> Result<Self> {
        let sub = Subgroup::new(&big, normal)?;
        for a in big.elements() {
            for &n in sub.elements() {
                if !sub.contains(big.conj(a, n)) {
                    return Err(Error::InvalidGroup("subgroup is not normal".into()));
                }
            }
        }
        let mut coset_of = vec![usize::MAX; big.order()];
        let mut reps = Vec::new();
        for a in big.elements() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &n in sub.elements() {
                coset_of[big.mul(a, n)] = c;
            }
        }
        let m = reps.len();
        let quotient = FiniteGroup::from_fn(m, |i, j| coset_of[big.mul(reps[i], reps[j])])?;
        let quotient = match big.labels() {
            Some(l) => quotient.with_labels(reps.iter().map(|&r| format!("[{}]", l[r])).collect())?,
            None => quotient,
        };
        let q = GroupHom::new(big, Arc::new(quotient), coset_of)?;
        Extension::new(q)
    }

    pub fn big(&self) -> &Arc<FiniteGroup> {
        &self.q.domain
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.q.codomain
    }

    /// `Γ = Ker q` as a group in its own right.
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.order()
    }

    /// Preimage `q⁻¹(α)`, sorted.
    pub fn fiber(&self, alpha: Elem) -> &[Elem] {
        &self.fibers[alpha]
    }

    /// The lexicographically first preimage of `α`.
    pub fn default_lift(&self, alpha: Elem) -> Elem {
        self.fibers[alpha][0]
    }

    /// Restriction to `q⁻¹(H) → H` for a subgroup `H` of `G`.
    pub fn restrict(&self, h: &[Elem]) -> Result<RestrictedExtension> {
        let base_sub = Subgroup::new(self.base(), h)?;
        let pre: Vec<Elem> = base_sub
            .elements()
            .iter()
            .flat_map(|&a| self.fibers[a].iter().copied())
            .collect();
        let big_sub = Subgroup::new(self.big(), &pre)?;
        let images = (0..big_sub.order())
            .map(|i| base_sub.from_parent(self.q.apply(big_sub.to_parent(i))).expect("preimage"))
            .collect();
        let q = GroupHom::new(big_sub.group.clone(), base_sub.group.clone(), images)?;
        Ok(RestrictedExtension { ext: Extension::new(q)?, big: big_sub, base: base_sub })
    }

    /// Reduction to an epimorphism: replace `G` by `g(π)` and `G'` by `q⁻¹(g(π))`.
    pub fn reduce_to_image(&self, g: &SurfaceHom) -> Result<(RestrictedExtension, SurfaceHom)> {
        let r = self.restrict(&g.image())?;
        let g_red = r.restrict_hom(g)?;
        Ok((r, g_red))
    }
}

/// An extension restricted over a subgroup, with the embeddings used.
#[derive(Clone, Debug)]
pub struct RestrictedExtension {
    pub ext: Extension,
    /// `q⁻¹(H)` inside `G'`.
    pub big: Subgroup,
    /// `H` inside `G`.
    pub base: Subgroup,
}

impl RestrictedExtension {
    /// Re-expresses a surface hom with image in `H` in terms of `H`'s indices.
    pub fn restrict_hom(&self, g: &SurfaceHom) -> Result<SurfaceHom> {
        g.restrict_to(&self.base)
    }
}

/// `[Γ, G']`: the subgroup of `Γ` generated by all `γ a γ⁻¹ a⁻¹`, as sorted `G'` indices.
pub fn mixed_commutator(ext: &Extension) -> Vec<Elem> {
    let big = ext.big();
    let mut gens: Vec<Elem> = Vec::new();
    for &h in ext.kernel().elements() {
        for a in big.elements() {
            let c = big.commutator(h, a);
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    big.generate(&gens)
}
