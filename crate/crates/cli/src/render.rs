//! Plain-text rendering of reports.

use std::fmt::Write;

use surflift::counting::{CountReport, VkVector};
use surflift::C64;

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-10 {
        0.0
    } else {
        x
    }
}

pub fn complex(z: C64) -> String {
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

pub fn report(r: &CountReport) -> String {
    let mut s = String::new();
    writeln!(s, "quantity: {}  genus: {}  |kernel|: {}  seed: {}", r.quantity, r.genus, r.kernel_order, r.seed).unwrap();
    writeln!(s, "{:>4} {:>4} {:>6} {:>24} {:>14} {:>24}", "rho", "dim", "|G_ρ|", "pairing", "weight", "term").unwrap();
    for c in &r.contributions {
        let pairing = c.pairing.map_or("-".to_string(), complex);
        let [n, d]: [u128; 2] = c.weight.into();
        let weight = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
        writeln!(
            s,
            "{:>4} {:>4} {:>6} {:>24} {:>14} {:>24}",
            c.index,
            c.dim,
            c.stabilizer_order,
            pairing,
            weight,
            complex(c.term)
        )
        .unwrap();
    }
    if r.scale != 1 {
        writeln!(s, "sum of terms divided by {}", r.scale).unwrap();
    }
    writeln!(s, "formula: {}", complex(r.formula)).unwrap();
    if let Some(n) = r.rounded {
        writeln!(s, "rounded: {n}  (residual {:.3e})", r.residual).unwrap();
    }
    if let Some(o) = &r.oracle {
        let v = serde_json::to_string(o).expect("oracle value serializes");
        writeln!(s, "enumeration: {v}").unwrap();
    }
    for c in &r.checks {
        writeln!(s, "check {:<20} {}  {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail).unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

pub fn vk(v: &VkVector) -> String {
    let mut s = String::new();
    writeln!(s, "realization (genus {}): {}", v.genus, v.realization.join(" ")).unwrap();
    writeln!(s, "{:>4} {:>6} {:>6} {:>24}", "k", "v_k", "N_k", "raw").unwrap();
    for e in &v.entries {
        writeln!(s, "{:>4} {:>6} {:>6} {:>24}", e.k, e.value, e.n_k, complex(e.raw)).unwrap();
    }
    writeln!(s, "max residual: {:.3e}", v.residual).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting_drops_noise() {
        assert_eq!(complex(C64::new(3.0, 1e-13)), "3.000000");
        assert_eq!(complex(C64::new(-1e-12, 0.0)), "0.000000");
        assert_eq!(complex(C64::new(-0.5, 0.8660254037844386)), "-0.500000+0.866025i");
    }
}
