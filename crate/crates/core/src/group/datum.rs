use std::sync::Arc;

use super::{Elem, Extension, FiniteGroup, SurfaceHom};
use crate::error::{Error, Result};

/// An automorphism of a finite group, stored as its full images array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<Elem>,
}

impl Automorphism {
    /// Checks that `images` is a bijective homomorphism of `group`.
    pub fn new(group: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        let n = group.order();
        if images.len() != n {
            return Err(Error::InvalidAutomorphism(format!(
                "{} images for a group of order {n}",
                images.len()
            )));
        }
        let mut hit = vec![false; n];
        for &b in &images {
            if b >= n || std::mem::replace(&mut hit[b], true) {
                return Err(Error::InvalidAutomorphism("images do not form a bijection".into()));
            }
        }
        for a in group.elements() {
            for b in group.elements() {
                if images[group.mul(a, b)] != group.mul(images[a], images[b]) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "not multiplicative on ({}, {})",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        Ok(Automorphism { images })
    }

    pub fn identity(order: usize) -> Self {
        Automorphism { images: (0..order).collect() }
    }

    /// `h ↦ c h c⁻¹`
    pub fn conjugation(group: &FiniteGroup, c: Elem) -> Self {
        Automorphism { images: group.elements().map(|h| group.conj(c, h)).collect() }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|&a| self.images[a]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b] = a;
        }
        Automorphism { images: inv }
    }

    /// `A ∘ B ∘ A⁻¹ ∘ B⁻¹`
    pub fn commutator(&self, other: &Automorphism) -> Automorphism {
        self.compose(other).compose(&self.inverse()).compose(&other.inverse())
    }
}

/// `∏_i [A_i, B_i]` in the automorphism group, composed left to right.
fn automorphism_relator(order: usize, x: &[Automorphism], y: &[Automorphism]) -> Automorphism {
    x.iter()
        .zip(y)
        .fold(Automorphism::identity(order), |acc, (a, b)| acc.compose(&a.commutator(b)))
}

/// Finite description of an extension `1 → Φ → π′ → π → 1` of the genus-`d`
/// surface group.
///
/// `π′` is generated by `Φ` and lifts `X_i, Y_i` of the standard generators,
/// with `X_i φ X_i⁻¹ = psi_x[i](φ)`, `Y_i φ Y_i⁻¹ = psi_y[i](φ)` and
/// `∏ [X_i, Y_i] = phi0`.
#[derive(Clone, Debug)]
pub struct ExtensionDatum {
    pub phi: Arc<FiniteGroup>,
    pub psi_x: Vec<Automorphism>,
    pub psi_y: Vec<Automorphism>,
    pub phi0: Elem,
}

impl ExtensionDatum {
    pub fn new(
        phi: Arc<FiniteGroup>,
        psi_x: Vec<Automorphism>,
        psi_y: Vec<Automorphism>,
        phi0: Elem,
    ) -> Result<Self> {
        let d = ExtensionDatum { phi, psi_x, psi_y, phi0 };
        d.validate()?;
        Ok(d)
    }

    pub fn genus(&self) -> usize {
        self.psi_x.len()
    }

    /// Checks that `∏ [psi_x_i, psi_y_i]` is conjugation by `phi0`.
    pub fn validate(&self) -> Result<()> {
        let n = self.phi.order();
        if self.psi_x.is_empty() || self.psi_x.len() != self.psi_y.len() {
            return Err(Error::Malformed("datum needs d ≥ 1 pairs of automorphisms".into()));
        }
        if self.phi0 >= n {
            return Err(Error::Malformed(format!("phi0 = {} is out of range", self.phi0)));
        }
        for a in self.psi_x.iter().chain(&self.psi_y) {
            Automorphism::new(&self.phi, a.images.clone())?;
        }
        let rel = automorphism_relator(n, &self.psi_x, &self.psi_y);
        if rel != Automorphism::conjugation(&self.phi, self.phi0) {
            return Err(Error::Compatibility(format!(
                "product of commutators of psi is not conjugation by {}",
                self.phi.label(self.phi0)
            )));
        }
        Ok(())
    }

    /// Φ-component of `∏ [(a_i, X_i), (b_i, Y_i)]` in the normal form
    /// `(φ, w)(φ′, w′) = (φ Ψ_w(φ′), w w′)`.
    ///
    /// The tuple defines a section exactly when this equals `phi0⁻¹`.
    pub fn twisted_relator(&self, a: &[Elem], b: &[Elem]) -> Elem {
        let g = &self.phi;
        let n = g.order();
        let mut acc = g.identity();
        let mut w = Automorphism::identity(n);
        for i in 0..self.genus() {
            let (x, y) = (&self.psi_x[i], &self.psi_y[i]);
            let c = handle_commutator(g, x, y, a[i], b[i]);
            acc = g.mul(acc, w.apply(c));
            w = w.compose(&x.commutator(y));
        }
        acc
    }
}

/// Φ-component of `[(a, X), (b, Y)]`:
/// `a · X(b) · (XYX⁻¹)(a⁻¹) · (XYX⁻¹Y⁻¹)(b⁻¹)`.
pub(crate) fn handle_commutator(
    g: &FiniteGroup,
    x: &Automorphism,
    y: &Automorphism,
    a: Elem,
    b: Elem,
) -> Elem {
    let xyx = x.compose(y).compose(&x.inverse());
    let xyxy = xyx.compose(&y.inverse());
    let t = g.mul(a, x.apply(b));
    let t = g.mul(t, xyx.apply(g.inv(a)));
    g.mul(t, xyxy.apply(g.inv(b)))
}

/// An action of the genus-`d` surface group on `Φ`: the images of the
/// standard generators in `Aut(Φ)`, subject to the surface relator.
#[derive(Clone, Debug)]
pub struct SurfaceAction {
    pub phi: Arc<FiniteGroup>,
    pub x: Vec<Automorphism>,
    pub y: Vec<Automorphism>,
}

impl SurfaceAction {
    pub fn new(phi: Arc<FiniteGroup>, x: Vec<Automorphism>, y: Vec<Automorphism>) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::Malformed("action needs d ≥ 1 pairs of automorphisms".into()));
        }
        let rel = automorphism_relator(phi.order(), &x, &y);
        if !rel.is_identity() {
            let moved = rel.images().iter().enumerate().find(|&(a, &b)| a != b).map(|(a, _)| a);
            return Err(Error::RelatorViolation {
                value: format!("automorphism moving {}", phi.label(moved.unwrap_or(0))),
            });
        }
        Ok(SurfaceAction { phi, x, y })
    }

    pub fn trivial(phi: Arc<FiniteGroup>, genus: usize) -> Result<Self> {
        let id = Automorphism::identity(phi.order());
        Self::new(phi, vec![id.clone(); genus], vec![id; genus])
    }

    pub fn genus(&self) -> usize {
        self.x.len()
    }

    /// The datum of `Φ ⋊ π → π`, whose sections are the cocycles `π → Φ`.
    pub fn split_datum(&self) -> ExtensionDatum {
        ExtensionDatum {
            phi: self.phi.clone(),
            psi_x: self.x.clone(),
            psi_y: self.y.clone(),
            phi0: self.phi.identity(),
        }
    }
}

/// The datum of the extension of `π` pulled back from `q: G′ → G` along `g`.
///
/// `Φ = Γ` (indexed as the kernel subgroup), `psi` is conjugation by the chosen
/// lifts and `phi0 = ∏ [ã_i, b̃_i]`. Without explicit lifts the first preimage is used.
pub fn pullback_datum(
    ext: &Extension,
    g: &SurfaceHom,
    lifts: Option<(&[Elem], &[Elem])>,
) -> Result<ExtensionDatum> {
    let d = g.genus();
    let (lx, ly): (Vec<Elem>, Vec<Elem>) = match lifts {
        Some((lx, ly)) => {
            if lx.len() != d || ly.len() != d {
                return Err(Error::Malformed("lift arrays must have length d".into()));
            }
            (lx.to_vec(), ly.to_vec())
        }
        None => (
            g.x().iter().map(|&a| ext.default_lift(a)).collect(),
            g.y().iter().map(|&a| ext.default_lift(a)).collect(),
        ),
    };
    let big = ext.big();
    for (i, (&l, &a)) in lx.iter().chain(&ly).zip(g.x().iter().chain(g.y())).enumerate() {
        if l >= big.order() || ext.q.apply(l) != a {
            return Err(Error::LiftNotInCoset { generator: i, lift: l });
        }
    }
    let kernel = ext.kernel();
    let phi = kernel.group.clone();
    let conj = |c: Elem| Automorphism {
        images: kernel
            .elements()
            .iter()
            .map(|&h| kernel.from_parent(big.conj(c, h)).expect("kernel is normal"))
            .collect(),
    };
    let psi_x = lx.iter().map(|&c| conj(c)).collect();
    let psi_y = ly.iter().map(|&c| conj(c)).collect();
    let rel = super::surface::relator_value(big, &lx, &ly);
    let phi0 = kernel.from_parent(rel).expect("relator lies in the kernel");
    ExtensionDatum::new(phi, psi_x, psi_y, phi0)
}
