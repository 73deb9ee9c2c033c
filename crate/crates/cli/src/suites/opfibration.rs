use bfly_core::catalog::{Catalog, Named};
use bfly_core::cmodule::{module_morphisms, CModule, CModuleMorphism};
use bfly_core::h2::{check_cocartesian, product_extension, product_of_maps, pushforward_extension, AbelianExtension};
use bfly_core::h3::{check_xcocartesian, product_of_xmaps, product_xext, pushforward_xext, CrossedExtension};

use super::{Check, Options, Tally};

const MAX_MIDDLE: usize = 16;
const PRODUCT_MODULES: [&str; 2] = ["z2-z2-triv", "z3-z3-triv"];
const CROSSED_PRODUCT_FACTORS: [&str; 3] = ["z2-z2-triv.unit", "z4-sign", "z4-plain"];

fn small(e: &CrossedExtension) -> bool {
    e.e2().order() <= MAX_MIDDLE && e.e1().order() <= MAX_MIDDLE
}

/// Catalog modules that share a base group with `m`, including `m`.
fn same_base<'a>(catalog: &'a Catalog, m: &'a CModule) -> impl Iterator<Item = &'a Named<CModule>> + 'a {
    catalog.modules.iter().filter(move |n| n.value.base() == m.base())
}

fn abelian_targets(catalog: &Catalog, m: &CModule) -> Vec<(AbelianExtension, CModuleMorphism)> {
    let mut out = Vec::new();
    for n in same_base(catalog, m) {
        let homs = module_morphisms(m, &n.value);
        for t in catalog.extensions_over(&n.value).filter(|t| t.value.middle().order() <= MAX_MIDDLE) {
            out.extend(homs.iter().map(|h| (t.value.clone(), h.clone())));
        }
    }
    out
}

fn abelian_lifts(catalog: &Catalog, out: &mut Vec<Check>) {
    for m in &catalog.modules {
        let mut tally = Tally::new(format!("opfibration:extension-lifts:{}", m.name));
        let mut tested = 0;
        for e in catalog.extensions_over(&m.value).filter(|e| e.value.middle().order() <= MAX_MIDDLE) {
            for n in same_base(catalog, &m.value) {
                let targets = abelian_targets(catalog, &n.value);
                for (k, beta) in module_morphisms(&m.value, &n.value).iter().enumerate() {
                    let label = format!("{} along map {k} into {}", e.name, n.name);
                    match pushforward_extension(&e.value, beta).and_then(|pf| check_cocartesian(&pf.lift, &targets)) {
                        Ok(r) => {
                            tested += r.tested;
                            tally.record(r.holds() && r.tested > 0, || label);
                        }
                        Err(err) => tally.fail(format!("{label}: {err}")),
                    }
                }
            }
        }
        let mut check = tally.finish("lifts cocartesian");
        check.detail.push_str(&format!(" ({tested} maps factored)"));
        out.push(check);
    }
}

fn crossed_lifts(catalog: &Catalog, out: &mut Vec<Check>) {
    let pool: Vec<_> = catalog.crossed.iter().filter(|e| small(&e.value)).collect();
    let targets_from = |m: &CModule| -> Vec<(CrossedExtension, CModuleMorphism)> {
        pool.iter()
            .flat_map(|t| module_morphisms(m, t.value.module()).into_iter().map(|h| (t.value.clone(), h)))
            .collect()
    };
    for e in &pool {
        let m = e.value.module();
        let mut codomains: Vec<CModule> = same_base(catalog, m).map(|n| n.value.clone()).collect();
        if !codomains.contains(m) {
            codomains.push(m.clone());
        }
        let mut tally = Tally::new(format!("opfibration:crossed-lifts:{}", e.name));
        let mut tested = 0;
        for n in &codomains {
            let targets = targets_from(n);
            for (k, beta) in module_morphisms(m, n).iter().enumerate() {
                let label = format!("map {k} into {n:?}");
                match pushforward_xext(&e.value, beta).and_then(|pf| check_xcocartesian(&pf.lift, &targets)) {
                    Ok(r) => {
                        tested += r.tested;
                        tally.record(r.holds() && r.tested > 0, || label);
                    }
                    Err(err) => tally.fail(format!("{label}: {err}")),
                }
            }
        }
        let mut check = tally.finish("lifts cocartesian");
        check.detail.push_str(&format!(" ({tested} maps factored)"));
        out.push(check);
    }
}

fn abelian_products(catalog: &Catalog, out: &mut Vec<Check>) {
    for name in PRODUCT_MODULES {
        let check = format!("opfibration:extension-products:{name}");
        let Some(m) = catalog.module(name) else {
            out.push(Check::new(check, false, "module missing from catalog"));
            continue;
        };
        let exts: Vec<_> = catalog.extensions_over(m).collect();
        let ends = module_morphisms(m, m);
        let lifts: Vec<_> = match exts
            .iter()
            .flat_map(|e| ends.iter().map(|b| pushforward_extension(&e.value, b)))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(l) => l,
            Err(err) => {
                out.push(Check::error(check, err));
                continue;
            }
        };
        let mut tally = Tally::new(check);
        let mut targets = Vec::new();
        for t in &exts {
            for t2 in &exts {
                match product_extension(&t.value, &t2.value) {
                    Ok(p) => targets.push(p.ext),
                    Err(err) => tally.fail(format!("{} x {}: {err}", t.name, t2.name)),
                }
            }
        }
        let mut tested = 0;
        for (i, f) in lifts.iter().enumerate() {
            for (j, g) in lifts.iter().enumerate() {
                let label = format!("lifts {i} and {j}");
                let result = product_extension(&f.lift.dom, &g.lift.dom).and_then(|src| {
                    let dst = product_extension(&f.ext, &g.ext)?;
                    let h = product_of_maps(&src, &dst, &f.lift, &g.lift)?;
                    let homs = module_morphisms(dst.ext.module(), dst.ext.module());
                    let pairs: Vec<_> = targets.iter().flat_map(|t| homs.iter().map(|b| (t.clone(), b.clone()))).collect();
                    check_cocartesian(&h, &pairs)
                });
                match result {
                    Ok(r) => {
                        tested += r.tested;
                        tally.record(r.holds() && r.tested > 0, || label);
                    }
                    Err(err) => tally.fail(format!("{label}: {err}")),
                }
            }
        }
        let mut check = tally.finish("products of lifts cocartesian");
        check.detail.push_str(&format!(" ({tested} maps factored)"));
        out.push(check);
    }
}

fn crossed_products(catalog: &Catalog, out: &mut Vec<Check>) {
    let name = "opfibration:crossed-products:z2-z2-triv";
    let factors: Vec<_> = catalog.crossed.iter().filter(|e| CROSSED_PRODUCT_FACTORS.contains(&e.name.as_str())).collect();
    if factors.len() != CROSSED_PRODUCT_FACTORS.len() {
        out.push(Check::new(name, false, "factors missing from catalog"));
        return;
    }
    let m = factors[0].value.module();
    let ends = module_morphisms(m, m);
    let lifts: Vec<_> = match factors
        .iter()
        .flat_map(|e| ends.iter().map(|b| pushforward_xext(&e.value, b)))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(l) => l,
        Err(err) => {
            out.push(Check::error(name, err));
            return;
        }
    };
    let mut tally = Tally::new(name);
    let mut targets = Vec::new();
    for t in &factors {
        for t2 in &factors {
            match product_xext(&t.value, &t2.value) {
                Ok(p) => targets.push(p.ext),
                Err(err) => tally.fail(format!("{} x {}: {err}", t.name, t2.name)),
            }
        }
    }
    let mut tested = 0;
    for (i, f) in lifts.iter().enumerate() {
        for (j, g) in lifts.iter().enumerate() {
            let label = format!("lifts {i} and {j}");
            let result = product_xext(&f.lift.dom, &g.lift.dom).and_then(|src| {
                let dst = product_xext(&f.ext, &g.ext)?;
                let h = product_of_xmaps(&src, &dst, &f.lift, &g.lift)?;
                let homs = module_morphisms(dst.ext.module(), dst.ext.module());
                let pairs: Vec<_> = targets.iter().flat_map(|t| homs.iter().map(|b| (t.clone(), b.clone()))).collect();
                check_xcocartesian(&h, &pairs)
            });
            match result {
                Ok(r) => {
                    tested += r.tested;
                    tally.record(r.holds() && r.tested > 0, || label);
                }
                Err(err) => tally.fail(format!("{label}: {err}")),
            }
        }
    }
    let mut check = tally.finish("products of lifts cocartesian");
    check.detail.push_str(&format!(" ({tested} maps factored)"));
    out.push(check);
}

pub fn run(catalog: &Catalog, _opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    abelian_lifts(catalog, &mut out);
    crossed_lifts(catalog, &mut out);
    abelian_products(catalog, &mut out);
    crossed_products(catalog, &mut out);
    out
}
