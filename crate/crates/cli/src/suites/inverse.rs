use bfly_core::catalog::{Catalog, Named};
use bfly_core::h3::{butterflies_isomorphic, compose_butterflies, identity_butterfly, inverse_witness, CrossedExtension};

use super::{Check, Options};

fn witness_checks(e: &Named<CrossedExtension>) -> Vec<Check> {
    let prefix = format!("inverse:{}", e.name);
    let w = match inverse_witness(&e.value) {
        Ok(w) => w,
        Err(err) => return vec![Check::error(format!("{prefix}:witness"), err)],
    };
    let mut out = vec![
        Check::new(format!("{prefix}:witness"), true, "conditions i-iv hold"),
        Check::new(format!("{prefix}:flippable"), w.is_flippable(), "both diagonals short exact"),
        Check::new(format!("{prefix}:beta-identity"), w.beta().is_identity(), "beta is the identity of the module"),
    ];
    let name = format!("{prefix}:flip-inverts");
    match w.flip() {
        Ok(back) => {
            let there = compose_butterflies(&back, &w).map(|c| butterflies_isomorphic(&c, &identity_butterfly(w.dom())));
            let here = compose_butterflies(&w, &back).map(|c| butterflies_isomorphic(&c, &identity_butterfly(w.cod())));
            match (there, here) {
                (Ok(a), Ok(b)) => out.push(Check::new(name, a && b, format!("flip after witness is identity: {a}; witness after flip: {b}"))),
                (Err(err), _) | (_, Err(err)) => out.push(Check::error(name, err)),
            }
        }
        Err(err) => out.push(Check::error(name, err)),
    }
    out
}

pub fn run(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    catalog.crossed.iter().flat_map(witness_checks).collect()
}
