//! One function per subcommand.

use std::fmt::Write;
use std::sync::Arc;

use num_rational::Ratio;
use serde_json::json;

use surflift::cohomology::TwoCocycle;
use surflift::counting::{
    abelian_count, bundle_weighted_count, count_lifts_formula, genus_bound_decision, genus_norm_lower_bound,
    h1_measure, quasi_epi_test, sections_weighted_count, t2_formula, v_eval, vk as vk_vector, Check,
    ExtensionAnalysis,
};
use surflift::group::{Extension, SurfaceHom};
use surflift::oracle::{enumerate_cocycles, enumerate_lifts, enumerate_sections, orbit_table, t2_lhs_oracle};
use surflift::repr::irreducibles;
use surflift::schema::Problem;
use surflift::Config;

use crate::render;
use crate::{Failure, Outcome};

type Run = Result<Outcome, Failure>;

fn ext_and_hom(p: &Problem) -> Result<(&Extension, &SurfaceHom), Failure> {
    match (&p.extension, &p.surface_hom) {
        (Some(e), Some(g)) => Ok((e, g)),
        _ => Err(Failure::invalid("this task needs an extension and a surface_hom")),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn validate(p: &Problem) -> Run {
    let mut s = String::new();
    let mut groups = serde_json::Map::new();
    for (name, g) in &p.groups {
        writeln!(s, "group {name}: order {}{}", g.order(), if g.is_abelian() { ", abelian" } else { "" }).unwrap();
        groups.insert(name.clone(), json!(g.order()));
    }
    let mut report = json!({ "groups": groups });
    if let Some(e) = &p.extension {
        writeln!(
            s,
            "extension: |G′| = {}, |G| = {}, |Γ| = {}",
            e.big().order(),
            e.base().order(),
            e.kernel_order()
        )
        .unwrap();
        report["extension"] = json!({ "big": e.big().order(), "base": e.base().order(), "kernel": e.kernel_order() });
    }
    if let Some(g) = &p.surface_hom {
        writeln!(s, "surface hom: genus {}, relator holds", g.genus()).unwrap();
        report["surface_hom"] = json!({ "genus": g.genus() });
    }
    if p.cocycle.is_some() {
        writeln!(s, "cocycle: identity holds, normalized").unwrap();
        report["cocycle"] = json!(true);
    }
    if let Some(a) = &p.action {
        writeln!(s, "action: genus {}, relator holds in Aut(Φ)", a.genus()).unwrap();
        report["action"] = json!({ "genus": a.genus() });
    }
    if let Some(d) = &p.datum {
        writeln!(s, "datum: genus {}, compatible", d.genus()).unwrap();
        report["datum"] = json!({ "genus": d.genus(), "phi0": d.phi.label(d.phi0) });
    }
    writeln!(s, "valid").unwrap();
    Ok(Outcome { text: s, report, agreed: true })
}

pub fn count(p: &Problem, cfg: &Config, oracle: bool) -> Run {
    let (ext, g) = ext_and_hom(p)?;
    let a = ExtensionAnalysis::new(ext, cfg)?;
    let mut r = count_lifts_formula(&a, g)?;
    if ext.kernel().group.is_abelian() {
        let ab = abelian_count(ext, g, cfg)?;
        let ok = ab.all_passed() && ab.rounded == r.rounded;
        r.push_check(Check::new("abelian-closed-form", ok, format!("reduced count {:?}", ab.rounded)));
    }
    let d = genus_bound_decision(ext, g, cfg)?;
    if let Some(ok) = d.satisfied {
        r.push_check(Check::new("lower-bound", ok, format!("{} >= {}", d.count, d.bound)));
    }
    let q = quasi_epi_test(&a, g)?;
    if oracle {
        r.attach_count(enumerate_lifts(ext, g, cfg, false)?.count);
    }
    let mut text = render::report(&r);
    writeln!(
        text,
        "quasi-epimorphism: {}  bound applicable: {}{}",
        q.quasi_epimorphism,
        d.applicable,
        if d.vacuous { " (vacuous)" } else { "" }
    )
    .unwrap();
    let report = json!({ "count": to_json(&r), "bound": to_json(&d), "quasi_epimorphism": q.quasi_epimorphism });
    Ok(Outcome { text, report, agreed: r.all_passed() })
}

pub fn irr(p: &Problem, cfg: &Config) -> Run {
    let group = match (&p.irr_group, &p.extension) {
        (Some(g), _) => g.clone(),
        (None, Some(e)) => e.kernel().group.clone(),
        (None, None) => return Err(Failure::invalid("irr needs irr_group or an extension")),
    };
    let set = irreducibles(&group, &cfg.tol, cfg.seed, cfg.retries)?;
    let mut s = String::new();
    let labels: Vec<String> = group.elements().map(|a| group.label(a)).collect();
    writeln!(s, "group of order {}, {} irreducibles, seed {}", group.order(), set.len(), set.seed).unwrap();
    writeln!(s, "{:>4} {:>4}  {}", "rho", "dim", labels.join("  ")).unwrap();
    let mut reps = Vec::new();
    let mut schur = true;
    for (i, rho) in set.iter().enumerate() {
        let chars: Vec<String> = rho.character().iter().map(|&z| render::complex(z)).collect();
        writeln!(s, "{:>4} {:>4}  {}", i, rho.dim(), chars.join("  ")).unwrap();
        schur &= rho.is_irreducible(&cfg.tol)?;
        let character: Vec<[f64; 2]> = rho.character().iter().map(|z| [z.re, z.im]).collect();
        reps.push(json!({ "dim": rho.dim(), "character": character }));
    }
    let sum: usize = set.dims().iter().map(|d| d * d).sum();
    writeln!(s, "Σ dim² = {sum}  Schur test: {}", if schur { "pass" } else { "FAIL" }).unwrap();
    let report = json!({ "order": group.order(), "seed": set.seed, "sum_of_squares": sum, "labels": labels, "irreducibles": reps });
    Ok(Outcome { text: s, report, agreed: schur && sum == group.order() })
}

pub fn vk(p: &Problem, cfg: &Config) -> Run {
    let (ext, g) = ext_and_hom(p)?;
    let a = ExtensionAnalysis::new(ext, cfg)?;
    let v = vk_vector(&a, g)?;
    let rev = vk_vector(&a, &g.reversed())?;
    let symmetric = v.entries.iter().zip(&rev.entries).all(|(x, y)| x.value == y.value);
    let values: Vec<(i64, String)> = (0..4).map(|n| (n, v_eval(&v, n).to_string())).collect();
    let mut text = render::vk(&v);
    for (n, val) in &values {
        writeln!(text, "v(h, {n}) = {val}").unwrap();
    }
    writeln!(text, "v_k(-h) = v_k(h): {}", if symmetric { "pass" } else { "FAIL" }).unwrap();
    let report = json!({ "vk": to_json(&v), "v_eval": values, "reversal_symmetric": symmetric });
    Ok(Outcome { text, report, agreed: symmetric })
}

pub fn sections(p: &Problem, cfg: &Config, oracle: bool) -> Run {
    let datum = p.datum.as_ref().ok_or_else(|| Failure::invalid("sections needs a datum"))?;
    let mut r = sections_weighted_count(datum, cfg)?;
    if oracle {
        let n = enumerate_sections(datum, cfg)?;
        r.attach_ratio(Ratio::new(n, datum.phi.order() as u64));
    }
    let text = render::report(&r);
    let report = to_json(&r);
    Ok(Outcome { text, report, agreed: r.all_passed() })
}

pub fn h1(p: &Problem, cfg: &Config, oracle: bool) -> Run {
    let action = p.action.as_ref().ok_or_else(|| Failure::invalid("h1 needs an action"))?;
    let mut r = h1_measure(action, cfg)?;
    let mut extra = String::new();
    let mut report = json!({});
    if oracle {
        let c = enumerate_cocycles(action, cfg)?;
        r.attach_ratio(c.measure);
        writeln!(extra, "|Z¹| = {}, |H¹| = {}", c.z1, c.orbits.orbit_sizes.len()).unwrap();
        report["z1"] = json!(c.z1);
        report["h1_orbits"] = to_json(&c.orbits);
    }
    report["measure"] = to_json(&r);
    Ok(Outcome { text: render::report(&r) + &extra, report, agreed: r.all_passed() })
}

pub fn t2(p: &Problem, cfg: &Config, oracle: bool) -> Run {
    let (ext, g) = ext_and_hom(p)?;
    let theta = p.cocycle.clone().unwrap_or_else(|| Arc::new(TwoCocycle::trivial(ext.big().clone())));
    let a = ExtensionAnalysis::twisted(ext, theta.clone(), cfg)?;
    let mut r = t2_formula(&a, g)?;
    if oracle {
        r.attach_complex(t2_lhs_oracle(ext, g, &theta, cfg)?, &cfg.tol);
    }
    let bundles = r.formula / ext.kernel_order() as f64;
    let mut text = render::report(&r);
    writeln!(text, "twisted bundle sum: {}", render::complex(bundles)).unwrap();
    let report = json!({ "sum": to_json(&r), "bundle_sum": [bundles.re, bundles.im] });
    Ok(Outcome { text, report, agreed: r.all_passed() })
}

pub fn bundles(p: &Problem, cfg: &Config, oracle: bool) -> Run {
    let (ext, g) = ext_and_hom(p)?;
    let a = ExtensionAnalysis::new(ext, cfg)?;
    let mut r = bundle_weighted_count(&a, g)?;
    let mut report = json!({});
    if oracle {
        let lifts = enumerate_lifts(ext, g, cfg, true)?.lifts.expect("collected");
        let table = orbit_table(&lifts, ext)?;
        r.attach_ratio(table.inverse_stabilizer_sum());
        r.push_check(Check::new(
            "orbit-weights",
            table.weighted_total() == lifts.len(),
            format!("Σ |Γ|/|Aut| = {} over {} orbits, |Hom_g| = {}", table.weighted_total(), table.orbit_sizes.len(), lifts.len()),
        ));
        report["orbits"] = to_json(&table);
    }
    report["bundles"] = to_json(&r);
    Ok(Outcome { text: render::report(&r), report, agreed: r.all_passed() })
}

pub fn genusbound(p: &Problem, cfg: &Config) -> Run {
    let (ext, g) = ext_and_hom(p)?;
    let a = ExtensionAnalysis::new(ext, cfg)?;
    let b = genus_norm_lower_bound(&a, g)?;
    let mut text = render::vk(&b.vk);
    for (n, v) in &b.scanned {
        writeln!(text, "v(h, {n}) = {v}").unwrap();
    }
    writeln!(text, "v(h, n) > 0 guaranteed for n >= {}", b.threshold).unwrap();
    writeln!(text, "<h, q> = {}, genus norm >= {}", b.n0, b.bound).unwrap();
    Ok(Outcome { text, report: to_json(&b), agreed: true })
}
