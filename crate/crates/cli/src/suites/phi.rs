use bfly_core::catalog::{Catalog, Named};
use bfly_core::cmodule::{module_morphisms, CModule, CModuleMorphism};
use bfly_core::h2::{baer_sum, fibre_isomorphic, unit_extension, AbelianExtension};
use bfly_core::h3::{
    butterflies_isomorphic, check_pf_and_cok, compose_butterflies, extension_of_pi1, identity_butterfly, is_pi1_shaped,
    pf_and_cok_square, phi, CrossedExtension,
};

use super::{Check, Options, Tally};

const REFLECTION_MODULES: [&str; 2] = ["z2-z2-triv", "z3-z3-triv"];

fn over<'a>(catalog: &'a Catalog, m: &'a CModule) -> Vec<&'a Named<AbelianExtension>> {
    catalog.extensions_over(m).collect()
}

fn module_checks(catalog: &Catalog, m: &Named<CModule>, out: &mut Vec<Check>) {
    let prefix = format!("phi:{}", m.name);
    let exts = over(catalog, &m.value);

    let unit = phi(&unit_extension(&m.value));
    out.push(Check::new(
        format!("{prefix}:unit"),
        unit == identity_butterfly(&CrossedExtension::unit(&m.value)),
        "the image of the split extension is the identity butterfly of the unit, strictly",
    ));

    let mut monoidal = Tally::new(format!("{prefix}:monoidal"));
    let mut strict = 0;
    for e in &exts {
        for e2 in &exts {
            let sum = match baer_sum(&e.value, &e2.value) {
                Ok(s) => s,
                Err(err) => {
                    monoidal.fail(format!("{} + {}: {err}", e.name, e2.name));
                    continue;
                }
            };
            match compose_butterflies(&phi(&e2.value), &phi(&e.value)) {
                Ok(c) => {
                    let image = phi(&sum);
                    strict += usize::from(image == c);
                    monoidal.record(image == c || butterflies_isomorphic(&image, &c), || format!("{} + {}", e.name, e2.name));
                }
                Err(err) => monoidal.fail(format!("{} + {}: {err}", e.name, e2.name)),
            }
        }
    }
    let mut check = monoidal.finish("pairs with the sum sent to the composite");
    check.detail.push_str(&format!(", {strict} of them equal on the nose"));
    out.push(check);

    let mut round = Tally::new(format!("{prefix}:pi1-round-trip"));
    for e in &exts {
        let b = phi(&e.value);
        round.record(is_pi1_shaped(&b) && extension_of_pi1(&b).is_ok_and(|back| back == e.value), || e.name.clone());
    }
    out.push(round.finish("extensions recovered from their butterflies"));

    if REFLECTION_MODULES.contains(&m.name.as_str()) {
        let mut family: Vec<(String, AbelianExtension)> = exts.iter().map(|e| (e.name.clone(), e.value.clone())).collect();
        for e in &exts {
            for e2 in &exts {
                if let Ok(s) = baer_sum(&e.value, &e2.value) {
                    family.push((format!("{}+{}", e.name, e2.name), s));
                }
            }
        }
        let images: Vec<_> = family.iter().map(|(_, e)| phi(e)).collect();
        let mut reflects = Tally::new(format!("{prefix}:reflects-fibre-isomorphism"));
        let mut classes: Vec<usize> = Vec::new();
        for i in 0..family.len() {
            if !classes.iter().any(|&j| butterflies_isomorphic(&images[i], &images[j])) {
                classes.push(i);
            }
            for j in 0..family.len() {
                let same = butterflies_isomorphic(&images[i], &images[j]) == fibre_isomorphic(&family[i].1, &family[j].1);
                reflects.record(same, || format!("{} vs {}", family[i].0, family[j].0));
            }
        }
        out.push(reflects.finish("pairs where butterfly isomorphism matches fibre isomorphism"));
        let bridges = exts.len() - 1;
        out.push(Check::new(
            format!("{prefix}:components"),
            classes.len() == bridges,
            format!("{} isomorphism classes of butterflies from {} extensions; H2 has order {bridges}", classes.len(), family.len()),
        ));
    }
}

pub fn run(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    for m in &catalog.modules {
        module_checks(catalog, m, &mut out);
    }
    out
}

pub fn squares(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    for m in &catalog.modules {
        let exts = over(catalog, &m.value);
        let ends: Vec<CModuleMorphism> = module_morphisms(&m.value, &m.value);
        let targets: Vec<_> = exts.iter().flat_map(|t| ends.iter().map(|b| (t.value.clone(), b.clone()))).collect();
        let mut tally = Tally::new(format!("pushforward-square:{}", m.name));
        let mut maps = 0;
        for e in &exts {
            for e2 in &exts {
                let what = || format!("{} then {}", e.name, e2.name);
                match pf_and_cok_square(&e.value, &e2.value).and_then(|sq| check_pf_and_cok(&sq, &targets)) {
                    Ok(report) => {
                        maps += report.tested;
                        tally.record(report.holds() && report.tested > 0, what);
                    }
                    Err(err) => tally.fail(format!("{}: {err}", what())),
                }
            }
        }
        let mut check = tally.finish("composites whose square is a pushforward");
        check.detail.push_str(&format!(" ({maps} maps factored, {} targets each)", targets.len()));
        out.push(check);
    }
    out
}
