//! Small standard groups and extensions used by tests, examples and the CLI.

use std::sync::Arc;

use crate::group::{Elem, Extension, FiniteGroup, GroupHom};
use crate::DEFAULT_MAX_ORDER;

/// Index of `i` in [`quaternion`].
pub const Q8_I: Elem = 2;
/// Index of `j` in [`quaternion`].
pub const Q8_J: Elem = 4;

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
}

pub fn klein() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

/// `(a, b)` is stored at index `a·|H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let m = h.order();
    let p = FiniteGroup::from_fn(g.order() * m, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    })
    .expect("direct product");
    let labels = (0..p.order())
        .map(|x| format!("({},{})", g.label(x / m), h.label(x % m)))
        .collect();
    p.with_labels(labels).expect("labels")
}

/// Dihedral group of order `2n`; `r^k s^e` is stored at index `k + n·e`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let g = FiniteGroup::from_fn(2 * n, |x, y| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let b = if e == 1 { (n - b) % n } else { b };
        (a + b) % n + n * ((e + f) % 2)
    })
    .expect("dihedral group");
    let labels = (0..2 * n)
        .map(|x| {
            let r = match x % n {
                0 => String::new(),
                1 => "r".to_string(),
                k => format!("r{k}"),
            };
            match (x / n, r.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => r,
                (_, true) => "s".to_string(),
                (_, false) => format!("{r}s"),
            }
        })
        .collect();
    g.with_labels(labels).expect("labels")
}

/// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k` in that order.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit) for units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let g = FiniteGroup::from_fn(8, |x, y| {
        let (s, t) = UNIT[x / 2][y / 2];
        let sign = (x % 2 + y % 2 + s) % 2;
        2 * t + sign
    })
    .expect("quaternion group");
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    g.with_labels(labels).expect("labels")
}

/// Symmetric group on `{1, …, n}`, labeled in cycle notation.
pub fn symmetric(n: usize) -> FiniteGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    FiniteGroup::from_permutations(&gens, n.max(1), usize::MAX).expect("symmetric group")
}

/// `SL(2, 3)`, matrices `[a b; c d]` over `F_3`, in lexicographic order.
pub fn sl23() -> FiniteGroup {
    let mats: Vec<[usize; 4]> = (0..81)
        .map(|m| [m / 27, (m / 9) % 3, (m / 3) % 3, m % 3])
        .filter(|&[a, b, c, d]| (a * d + 2 * b * c) % 3 == 1)
        .collect();
    let index = |m: [usize; 4]| mats.iter().position(|&x| x == m).expect("closed");
    let g = FiniteGroup::from_fn(mats.len(), |x, y| {
        let [a, b, c, d] = mats[x];
        let [e, f, g, h] = mats[y];
        index([(a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3])
    })
    .expect("SL(2,3)");
    let labels = mats.iter().map(|[a, b, c, d]| format!("[{a} {b};{c} {d}]")).collect();
    g.with_labels(labels).expect("labels")
}

/// Heisenberg group of unitriangular `3×3` matrices over `ℤ/p`;
/// `(a, b, c)` is stored at index `(a·p + b)·p + c` with
/// `(a,b,c)(a′,b′,c′) = (a+a′, b+b′, c+c′+ab′)`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    let g = FiniteGroup::from_fn(p * p * p, |x, y| {
        let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
        let (d, e, f) = (y / (p * p), (y / p) % p, y % p);
        (((a + d) % p) * p + (b + e) % p) * p + (c + f + a * e) % p
    })
    .expect("Heisenberg group");
    let labels = (0..p * p * p).map(|x| format!("({},{},{})", x / (p * p), (x / p) % p, x % p)).collect();
    g.with_labels(labels).expect("labels")
}

fn quotient(big: FiniteGroup, normal: impl Fn(&FiniteGroup, Elem) -> bool) -> Extension {
    let n: Vec<Elem> = big.elements().filter(|&a| normal(&big, a)).collect();
    Extension::from_normal_subgroup(Arc::new(big), &n).expect("normal subgroup")
}

/// `ℤ/3 × ℤ/2 → ℤ/2`, the projection.
pub fn split_z3_z2() -> Extension {
    let big = Arc::new(direct_product(&cyclic(3), &cyclic(2)));
    let base = Arc::new(cyclic(2));
    let images = big.elements().map(|x| x % 2).collect();
    Extension::new(GroupHom::new(big, base, images).expect("projection")).expect("extension")
}

/// `Γ × G → G` for arbitrary groups.
pub fn split_product(gamma: &FiniteGroup, g: &FiniteGroup) -> Extension {
    let big = Arc::new(direct_product(gamma, g));
    let base = Arc::new(g.clone());
    let m = g.order();
    let images = big.elements().map(|x| x % m).collect();
    Extension::new(GroupHom::new(big, base, images).expect("projection")).expect("extension")
}

/// The sign map `S₃ → ℤ/2` with kernel `A₃ ≅ ℤ/3`.
pub fn s3_sign() -> Extension {
    quotient(symmetric(3), |g, a| g.element_order(a) != 2)
}

/// `Q₈ → ℤ/2 × ℤ/2` with central kernel `{±1}`.
pub fn q8_over_klein() -> Extension {
    quotient(quaternion(), |_, a| a < 2)
}

/// `D₄ → ℤ/2 × ℤ/2` with central kernel `{1, r²}`.
pub fn d4_over_klein() -> Extension {
    quotient(dihedral(4), |_, a| a == 0 || a == 2)
}

/// `ℤ/4 → ℤ/2`.
pub fn z4_over_z2() -> Extension {
    quotient(cyclic(4), |_, a| a % 2 == 0)
}

/// `S₄ → S₃` with kernel the Klein four-group of double transpositions.
pub fn s4_over_s3() -> Extension {
    quotient(symmetric(4), |g, a| {
        a == g.identity() || (g.element_order(a) == 2 && g.label(a).contains(")("))
    })
}

/// `SL(2,3) → ℤ/3` with kernel `Q₈`, which `ℤ/3` permutes cyclically.
pub fn sl23_over_z3() -> Extension {
    quotient(sl23(), |g, a| matches!(g.element_order(a), 1 | 2 | 4))
}

/// Heisenberg group mod 3 over `ℤ/3 × ℤ/3`, with central kernel `ℤ/3`.
pub fn heisenberg_over_z3z3() -> Extension {
    quotient(heisenberg(3), |_, a| a < 3)
}

/// `(ℤ/3)³ → (ℤ/3)²` forgetting the last coordinate; `(a1,a2,a3)` is stored
/// at index `9·a1 + 3·a2 + a3`.
pub fn z3_cubed_over_z3_squared() -> Extension {
    let z3 = cyclic(3);
    quotient(direct_product(&direct_product(&z3, &z3), &z3), |_, a| a < 3)
}

/// Group by short name: `Z<n>`, `D<n>`, `S<n>`, `Z2xZ2`, `Z3xZ2`, `Q8`, `SL(2,3)`, `Heis3`.
pub fn group_by_name(name: &str) -> Option<FiniteGroup> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "Z2xZ2" | "V4" => Some(klein()),
        "Z3xZ2" => Some(direct_product(&cyclic(3), &cyclic(2))),
        "Q8" => Some(quaternion()),
        "SL(2,3)" => Some(sl23()),
        "Heis3" => Some(heisenberg(3)),
        _ => {
            if let Some(n) = num("Z").filter(|&n| (1..=DEFAULT_MAX_ORDER).contains(&n)) {
                Some(cyclic(n))
            } else if let Some(n) = num("D").filter(|&n| (2..=DEFAULT_MAX_ORDER / 2).contains(&n)) {
                Some(dihedral(n))
            } else {
                num("S").filter(|&n| (1..=4).contains(&n)).map(symmetric)
            }
        }
    }
}

/// Extension by name: the corpus fixtures plus `SL(2,3)->Z3`, `Heis3->Z3xZ3`, `Z3^3->Z3^2`.
pub fn extension_by_name(name: &str) -> Option<Extension> {
    match name {
        "SL(2,3)->Z3" => Some(sl23_over_z3()),
        "Heis3->Z3xZ3" => Some(heisenberg_over_z3z3()),
        "Z3^3->Z3^2" => Some(z3_cubed_over_z3_squared()),
        _ => corpus().into_iter().find(|f| f.name == name).map(|f| f.ext),
    }
}

/// A named extension in the reference corpus.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub ext: Extension,
    /// `G′ = Γ × G` with `q` the projection.
    pub split: bool,
}

/// The reference corpus of extensions.
pub fn corpus() -> Vec<Fixture> {
    let f = |name, ext, split| Fixture { name, ext, split };
    vec![
        f("Z3xZ2->Z2", split_z3_z2(), true),
        f("S3->Z2", s3_sign(), false),
        f("Q8->Z2xZ2", q8_over_klein(), false),
        f("D4->Z2xZ2", d4_over_klein(), false),
        f("Z4->Z2", z4_over_z2(), false),
        f("S4->S3", s4_over_s3(), false),
    ]
}

/// The groups appearing anywhere in the corpus, plus a few more for representation tests.
pub fn corpus_groups() -> Vec<(&'static str, FiniteGroup)> {
    assert!(sl23().order() <= DEFAULT_MAX_ORDER);
    vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", klein()),
        ("Z3xZ2", direct_product(&cyclic(3), &cyclic(2))),
        ("S3", symmetric(3)),
        ("Q8", quaternion()),
        ("D4", dihedral(4)),
        ("S4", symmetric(4)),
        ("SL(2,3)", sl23()),
    ]
}
