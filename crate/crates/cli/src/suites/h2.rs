use bfly_core::catalog::{coefficient_groups, Catalog, Named};
use bfly_core::cmodule::CModule;
use bfly_core::group::find_isomorphisms;
use bfly_core::h2::{baer_sum, fibre_isomorphic, jointly_generate_square, pi1_h2, unit_extension, AbelianExtension};
use bfly_core::oracle::{cocycle_of_extension, extension_class, extension_from_2cocycle, z1, Cochain, Cohomology, OracleError};

use super::{Check, Options, Tally};

fn bridges<'a>(catalog: &'a Catalog, m: &'a CModule) -> Vec<&'a Named<AbelianExtension>> {
    catalog.extensions_over(m).filter(|e| e.name.contains(".h2-")).collect()
}

fn module_components(catalog: &Catalog, m: &Named<CModule>, out: &mut Vec<Check>) -> Result<(), OracleError> {
    let prefix = format!("h2-components:{}", m.name);
    let h2 = Cohomology::classes(&m.value, 2)?;
    let exts = bridges(catalog, &m.value);

    let mut classes = Tally::new(format!("{prefix}:bridge-classes"));
    for (x, e) in exts.iter().enumerate() {
        let class = extension_class(&e.value, &h2)?;
        classes.record(class == x, || format!("{} has class {class}", e.name));
    }
    out.push(classes.finish("bridge extensions land in their class"));

    let mut sums = Tally::new(format!("{prefix}:baer-sum-additive"));
    for (x, e) in exts.iter().enumerate() {
        for (y, e2) in exts.iter().enumerate() {
            let sum = match baer_sum(&e.value, &e2.value) {
                Ok(s) => s,
                Err(err) => {
                    sums.fail(format!("{} + {}: {err}", e.name, e2.name));
                    continue;
                }
            };
            let diff = cocycle_of_extension(&sum).sub(&cocycle_of_extension(&e.value)).sub(&cocycle_of_extension(&e2.value));
            let ok = h2.class_of(&diff)? == 0 && extension_class(&sum, &h2)? == h2.add(x, y);
            sums.record(ok, || format!("{} + {}", e.name, e2.name));
        }
    }
    out.push(sums.finish("pairs with cocycle of the sum cohomologous to the sum of cocycles"));

    let zero = extension_from_2cocycle(&Cochain::zero(&m.value, 2))?;
    out.push(Check::new(
        format!("{prefix}:zero-cocycle-is-split"),
        fibre_isomorphic(&zero, &unit_extension(&m.value)),
        "the extension of the zero cocycle is fibre-isomorphic to the split extension",
    ));
    Ok(())
}

pub fn components(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    for m in &catalog.modules {
        if let Err(e) = module_components(catalog, m, &mut out) {
            out.push(Check::error(format!("h2-components:{}", m.name), e));
        }
    }
    for b in coefficient_groups() {
        out.push(Check::new(
            format!("h2-components:joint-generation:{}", b.name),
            jointly_generate_square(&b.value),
            "<0,1> and <1,-1> generate B x B",
        ));
    }
    out
}

pub fn automorphisms(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    catalog
        .modules
        .iter()
        .map(|m| {
            let name = format!("h2-automorphisms:{}", m.name);
            let pi1 = pi1_h2(&m.value);
            match z1(&m.value) {
                Ok(z) => {
                    let iso = find_isomorphisms(&pi1.group, &z, Some(1)).len() == 1;
                    let detail = format!("|Aut(split)| = {}, |Z1| = {}, isomorphic: {iso}", pi1.group.order(), z.order());
                    Check::new(name, pi1.group.order() == z.order() && iso, detail)
                }
                Err(e) => Check::error(name, e),
            }
        })
        .collect()
}
