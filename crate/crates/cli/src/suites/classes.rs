use bfly_core::catalog::{Catalog, Named};
use bfly_core::cmodule::{module_morphisms, CModule, CModuleMorphism};
use bfly_core::h3::{inverse_xext, pushforward_xext, tensor_xext, xext_morphisms_over, CrossedExtension};
use bfly_core::oracle::{class_of_crossed_extension, Cohomology, OracleError, SectionChoice};

use super::{Check, Options, Tally};

const SECTION_TRIALS: u64 = 100;
const MAX_VERTICAL: usize = 16;

/// Crossed extensions of the catalog sharing one module, with its `H³`.
struct Family<'a> {
    label: String,
    h3: Cohomology,
    members: Vec<&'a Named<CrossedExtension>>,
}

fn families(catalog: &Catalog) -> Result<Vec<Family<'_>>, OracleError> {
    let mut out: Vec<Family> = Vec::new();
    for e in &catalog.crossed {
        let m = e.value.module();
        match out.iter_mut().find(|f| f.h3.module() == m) {
            Some(f) => f.members.push(e),
            None => {
                let label = catalog.modules.iter().find(|n| &n.value == m).map_or_else(|| format!("module-of-{}", e.name), |n| n.name.clone());
                out.push(Family { label, h3: Cohomology::classes(m, 3)?, members: vec![e] });
            }
        }
    }
    Ok(out)
}

fn class(x: &CrossedExtension, h3: &Cohomology) -> Result<usize, OracleError> {
    h3.class_of(&class_of_crossed_extension(x, SectionChoice::Least))
}

fn member_checks(catalog: &Catalog, e: &Named<CrossedExtension>, h3: &Cohomology, opts: &Options, out: &mut Vec<Check>) -> Result<(), OracleError> {
    let prefix = format!("characteristic-class:{}", e.name);
    let base = class(&e.value, h3)?;

    let mut sections = Tally::new(format!("{prefix}:section-independent"));
    for i in 0..SECTION_TRIALS {
        let seed = opts.seed.wrapping_add(i);
        let c = h3.class_of(&class_of_crossed_extension(&e.value, SectionChoice::Seeded(seed)))?;
        sections.record(c == base, || format!("seed {seed} gives class {c}, least section gives {base}"));
    }
    out.push(sections.finish("seeded sections agree with the least section"));

    let star = class(&inverse_xext(&e.value), h3)?;
    out.push(Check::new(
        format!("{prefix}:inverse-cancels"),
        h3.add(base, star) == 0,
        format!("class {base}, inverse class {star}"),
    ));

    let name = format!("{prefix}:tensor-with-inverse");
    match tensor_xext(&e.value, &inverse_xext(&e.value)) {
        Ok(t) => {
            let c = class(&t, h3)?;
            out.push(Check::new(name, c == 0, format!("class {c}")));
        }
        Err(err) => out.push(Check::error(name, err)),
    }

    let m = e.value.module();
    let mut codomains: Vec<&CModule> = catalog.modules.iter().map(|n| &n.value).filter(|n| n.base() == m.base()).collect();
    if !codomains.contains(&m) {
        codomains.push(m);
    }
    let mut pushed = Tally::new(format!("{prefix}:pushforward-equivariant"));
    let cocycle = class_of_crossed_extension(&e.value, SectionChoice::Least);
    for n in codomains {
        let target = Cohomology::classes(n, 3)?;
        for (k, beta) in module_morphisms(m, n).iter().enumerate() {
            let label = || format!("map {k} into {n:?}");
            match pushforward_xext(&e.value, beta) {
                Ok(pf) => {
                    let lhs = class(&pf.ext, &target)?;
                    let rhs = target.class_of(&cocycle.push(beta))?;
                    pushed.record(lhs == rhs, || format!("{}: {lhs} vs {rhs}", label()));
                }
                Err(err) => pushed.fail(format!("{}: {err}", label())),
            }
        }
    }
    out.push(pushed.finish("module maps with the class of the pushforward equal to the pushed class"));
    Ok(())
}

fn family_checks(family: &Family, out: &mut Vec<Check>) -> Result<(), OracleError> {
    let prefix = format!("characteristic-class:{}", family.label);
    let h3 = &family.h3;
    let classes = family.members.iter().map(|e| class(&e.value, h3)).collect::<Result<Vec<_>, _>>()?;

    let mut additive = Tally::new(format!("{prefix}:tensor-additive"));
    for (e, &x) in family.members.iter().zip(&classes) {
        for (e2, &y) in family.members.iter().zip(&classes) {
            let label = format!("{} with {}", e.name, e2.name);
            match tensor_xext(&e.value, &e2.value) {
                Ok(t) => {
                    let c = class(&t, h3)?;
                    additive.record(c == h3.add(x, y), || format!("{label}: {c} vs {x} + {y}"));
                }
                Err(err) => additive.fail(format!("{label}: {err}")),
            }
        }
    }
    out.push(additive.finish("pairs with the class of the tensor equal to the sum"));

    let id = CModuleMorphism::identity(h3.module());
    let small = |x: &CrossedExtension| x.e2().order() <= MAX_VERTICAL && x.e1().order() <= MAX_VERTICAL;
    let mut vertical = Tally::new(format!("{prefix}:vertical-invariant"));
    for (e, &x) in family.members.iter().zip(&classes) {
        for (e2, &y) in family.members.iter().zip(&classes) {
            if !small(&e.value) || !small(&e2.value) {
                continue;
            }
            for _ in xext_morphisms_over(&e.value, &e2.value, &id) {
                vertical.record(x == y, || format!("{} to {}: classes {x} and {y}", e.name, e2.name));
            }
        }
    }
    if vertical.total() > 0 {
        out.push(vertical.finish("vertical morphisms between extensions of equal class"));
    }

    let mut realized: Vec<usize> = classes.clone();
    realized.sort_unstable();
    realized.dedup();
    let listed: Vec<String> = family.members.iter().zip(&classes).map(|(e, c)| format!("{}={c}", e.name)).collect();
    out.push(Check::new(
        format!("{prefix}:realized"),
        realized.iter().all(|&c| (c as u128) < h3.order()),
        format!("H3 of order {}; realized {:?}; {}", h3.order(), realized, listed.join(", ")),
    ));
    Ok(())
}

pub fn run(catalog: &Catalog, opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    let families = match families(catalog) {
        Ok(f) => f,
        Err(e) => return vec![Check::error("characteristic-class:families", e)],
    };
    for family in &families {
        for e in &family.members {
            if let Err(err) = member_checks(catalog, e, &family.h3, opts, &mut out) {
                out.push(Check::error(format!("characteristic-class:{}", e.name), err));
            }
        }
        if let Err(err) = family_checks(family, &mut out) {
            out.push(Check::error(format!("characteristic-class:{}", family.label), err));
        }
    }
    out
}
