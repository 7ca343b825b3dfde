use std::sync::Arc;

use super::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism from the genus-`d` surface group into a finite group,
/// given by the images of the standard generators `x_1, y_1, …, x_d, y_d`.
///
/// The surface relator `∏ [x_i, y_i] = 1` holds by construction.
#[derive(Clone, Debug)]
pub struct SurfaceHom {
    pub target: Arc<FiniteGroup>,
    x: Vec<Elem>,
    y: Vec<Elem>,
}

/// `∏_i [x_i, y_i]` in `group`.
pub fn relator_value(group: &FiniteGroup, x: &[Elem], y: &[Elem]) -> Elem {
    x.iter()
        .zip(y)
        .fold(group.identity(), |acc, (&a, &b)| group.mul(acc, group.commutator(a, b)))
}

pub fn build_surface_hom(target: Arc<FiniteGroup>, genus: usize, x: Vec<Elem>, y: Vec<Elem>) -> Result<SurfaceHom> {
    SurfaceHom::new(target, genus, x, y)
}

impl SurfaceHom {
    pub fn new(target: Arc<FiniteGroup>, genus: usize, x: Vec<Elem>, y: Vec<Elem>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Malformed("surface genus must be positive".into()));
        }
        if x.len() != genus || y.len() != genus {
            return Err(Error::Malformed(format!(
                "genus {genus} needs {genus} x- and y-images, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        if let Some(&bad) = x.iter().chain(&y).find(|&&a| a >= target.order()) {
            return Err(Error::Malformed(format!("generator image {bad} is out of range")));
        }
        let r = relator_value(&target, &x, &y);
        if r != target.identity() {
            return Err(Error::RelatorViolation { value: target.label(r) });
        }
        Ok(SurfaceHom { target, x, y })
    }

    /// The homomorphism sending every generator to the identity.
    pub fn trivial(target: Arc<FiniteGroup>, genus: usize) -> Result<Self> {
        let e = target.identity();
        Self::new(target, genus, vec![e; genus], vec![e; genus])
    }

    pub fn genus(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Elem] {
        &self.x
    }

    pub fn y(&self) -> &[Elem] {
        &self.y
    }

    /// Generator images in the order `x_1, y_1, x_2, y_2, …`.
    pub fn interleaved(&self) -> Vec<Elem> {
        self.x.iter().zip(&self.y).flat_map(|(&a, &b)| [a, b]).collect()
    }

    /// The image subgroup `g(π)`, sorted.
    pub fn image(&self) -> Vec<Elem> {
        let gens: Vec<Elem> = self.x.iter().chain(&self.y).copied().collect();
        self.target.generate(&gens)
    }

    pub fn is_trivial(&self) -> bool {
        let e = self.target.identity();
        self.x.iter().chain(&self.y).all(|&a| a == e)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    /// Realization of the opposite homology class: handles swapped and listed in reverse.
    pub fn reversed(&self) -> SurfaceHom {
        SurfaceHom {
            target: self.target.clone(),
            x: self.y.iter().rev().copied().collect(),
            y: self.x.iter().rev().copied().collect(),
        }
    }

    /// Same class realized on a surface of larger genus (extra handles map trivially).
    pub fn stabilized(&self, genus: usize) -> Result<SurfaceHom> {
        if genus < self.genus() {
            return Err(Error::Malformed(format!(
                "cannot lower genus from {} to {genus}",
                self.genus()
            )));
        }
        let e = self.target.identity();
        let mut x = self.x.clone();
        let mut y = self.y.clone();
        x.resize(genus, e);
        y.resize(genus, e);
        Ok(SurfaceHom { target: self.target.clone(), x, y })
    }

    /// Post-composition with the inner automorphism `a ↦ c a c⁻¹`.
    pub fn conjugated(&self, c: Elem) -> SurfaceHom {
        let t = &self.target;
        SurfaceHom {
            target: t.clone(),
            x: self.x.iter().map(|&a| t.conj(c, a)).collect(),
            y: self.y.iter().map(|&a| t.conj(c, a)).collect(),
        }
    }

    /// Post-composition with a map of groups given by an images array.
    pub fn map_into(&self, target: Arc<FiniteGroup>, images: &[Elem]) -> Result<SurfaceHom> {
        let x = self.x.iter().map(|&a| images[a]).collect();
        let y = self.y.iter().map(|&a| images[a]).collect();
        SurfaceHom::new(target, self.genus(), x, y)
    }

    /// The same homomorphism, viewed as landing in a subgroup containing its image.
    pub fn restrict_to(&self, sub: &Subgroup) -> Result<SurfaceHom> {
        let conv = |a: Elem| {
            sub.from_parent(a)
                .ok_or_else(|| Error::Malformed(format!("image {a} is outside the subgroup")))
        };
        let x = self.x.iter().map(|&a| conv(a)).collect::<Result<Vec<_>>>()?;
        let y = self.y.iter().map(|&a| conv(a)).collect::<Result<Vec<_>>>()?;
        SurfaceHom::new(sub.group.clone(), self.genus(), x, y)
    }

    /// Relabels the target group along `perm` (see [`FiniteGroup::relabel`]).
    pub fn relabeled(&self, target: Arc<FiniteGroup>, perm: &[usize]) -> Result<SurfaceHom> {
        self.map_into(target, perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn abelian_targets_accept_any_tuple() {
        let g = Arc::new(catalog::klein());
        for a in 0..4 {
            for b in 0..4 {
                assert!(SurfaceHom::new(g.clone(), 1, vec![a], vec![b]).is_ok());
            }
        }
    }

    #[test]
    fn quaternion_i_j_violates_relator() {
        let q8 = Arc::new(catalog::quaternion());
        let (i, j) = (catalog::Q8_I, catalog::Q8_J);
        match SurfaceHom::new(q8.clone(), 1, vec![i], vec![j]) {
            Err(Error::RelatorViolation { value }) => assert_eq!(value, "-1"),
            other => panic!("expected relator violation, got {other:?}"),
        }
    }

    #[test]
    fn s3_genus_two_repeated_pairs() {
        let s3 = Arc::new(catalog::symmetric(3));
        let t = s3.find_label("(1 2)").unwrap();
        let c = s3.find_label("(1 2 3)").unwrap();
        let g = SurfaceHom::new(s3, 2, vec![t, c], vec![t, c]).unwrap();
        assert_eq!(g.image().len(), 6);
        assert!(g.is_surjective());
    }

    #[test]
    fn wrong_lengths_and_genus_zero_are_malformed() {
        let z2 = Arc::new(catalog::cyclic(2));
        assert!(matches!(SurfaceHom::new(z2.clone(), 0, vec![], vec![]), Err(Error::Malformed(_))));
        assert!(matches!(SurfaceHom::new(z2, 2, vec![0], vec![0, 1]), Err(Error::Malformed(_))));
    }

    #[test]
    fn reversal_and_stabilization_keep_the_relator() {
        let s3 = Arc::new(catalog::symmetric(3));
        let homs = crate::oracle::enumerate_surface_homs(&s3, 2, u64::MAX).unwrap();
        for g in homs.iter().take(200) {
            let r = g.reversed();
            assert_eq!(relator_value(&s3, r.x(), r.y()), s3.identity());
            let s = g.stabilized(3).unwrap();
            assert_eq!(relator_value(&s3, s.x(), s.y()), s3.identity());
        }
    }
}
