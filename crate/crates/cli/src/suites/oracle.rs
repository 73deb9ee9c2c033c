use bfly_core::catalog::Catalog;
use bfly_core::cmodule::CModule;
use bfly_core::group::FiniteGroup;
use bfly_core::oracle::{cross_check, z1, Cohomology, CohomologyKind, OracleError};

use super::{Check, Options};

const BRUTE_LIMIT: u64 = 1 << 20;

fn order_check(name: &str, m: Option<&CModule>, degree: usize, expected: u128) -> Check {
    let name = format!("oracle:ground-truth:{name}:degree-{degree}");
    let Some(m) = m else { return Check::new(name, false, "module missing from catalog") };
    match Cohomology::classes(m, degree) {
        Ok(h) => Check::new(name, h.order() == expected, format!("order {} (expected {expected})", h.order())),
        Err(e) => Check::error(name, e),
    }
}

pub fn run(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    let z2_triv = catalog.module("z2-z2-triv");
    let z3_triv = catalog.module("z3-z3-triv");
    let z2_inv = catalog.module("z2-z3-a1");
    let mut out = vec![
        order_check("z2-z2-triv", z2_triv, 2, 2),
        order_check("z2-z2-triv", z2_triv, 3, 2),
        order_check("z3-z3-triv", z3_triv, 2, 3),
        order_check("z2-z3-inv", z2_inv, 2, 1),
        order_check("z2-z3-inv", z2_inv, 3, 1),
    ];

    let trivial_base = CModule::trivial(&FiniteGroup::trivial(), &FiniteGroup::cyclic(2)).expect("module");
    for (name, m, expected) in [("z2-z2-triv", z2_triv, 2), ("z2-z3-inv", z2_inv, 3), ("trivial-base", Some(&trivial_base), 1)] {
        let check = format!("oracle:crossed-homomorphisms:{name}");
        out.push(match m.map(z1) {
            Some(Ok(g)) => Check::new(check, g.order() == expected, format!("|Z1| = {} (expected {expected})", g.order())),
            Some(Err(e)) => Check::error(check, e),
            None => Check::new(check, false, "module missing from catalog"),
        });
    }

    let (mut checked, mut skipped) = (0, 0);
    for m in &catalog.modules {
        for degree in 1..=3 {
            let name = format!("oracle:brute-force:{}:degree-{degree}", m.name);
            match cross_check(&m.value, degree, BRUTE_LIMIT) {
                Ok(Some(c)) => {
                    checked += 1;
                    let detail = format!(
                        "{} cochains, {} cocycles, {} coboundaries; solver {} cocycles, {} classes",
                        c.brute.candidates, c.brute.cocycles, c.brute.coboundaries, c.solver_cocycles, c.solver_classes
                    );
                    out.push(Check::new(name, c.agrees(), detail));
                }
                Ok(None) => skipped += 1,
                Err(e) => out.push(Check::error(name, e)),
            }
        }
    }
    out.push(Check::new(
        "oracle:brute-force:coverage",
        checked > 0,
        format!("{checked} systems enumerated, {skipped} above {BRUTE_LIMIT} cochains"),
    ));

    let capped = catalog.module("k4-z4-triv").map(|m| Cohomology::compute(m, 4, CohomologyKind::Classes, 1000));
    out.push(Check::new(
        "oracle:size-cap",
        matches!(capped, Some(Err(OracleError::SizeCap { .. }))),
        "oversized systems are refused rather than attempted",
    ));
    out
}
