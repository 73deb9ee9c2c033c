use bfly_core::catalog::Catalog;
use bfly_core::cmodule::module_morphisms;
use bfly_core::h3::{
    butterflies_isomorphic, butterfly_beta, compose_butterflies, identity_butterfly, inverse_witness, morphism_to_butterfly,
    phi, pushforward_xext, Butterfly, XExtMorphism,
};

use super::{sample, Check, Options, Tally};

const MAX_TRIPLES: usize = 8;
const MAX_REPRESENTABLE: usize = 16;
const MIN_SAMPLES: usize = 50;

struct Laws {
    prefix: String,
    left: Tally,
    right: Tally,
    assoc: Tally,
    beta: Tally,
    beta_iso: Tally,
}

impl Laws {
    fn new(prefix: String) -> Self {
        let t = |law: &str| Tally::new(format!("{prefix}:{law}"));
        Laws { left: t("left-identity"), right: t("right-identity"), assoc: t("associativity"), beta: t("beta-functorial"), beta_iso: t("beta-iso-invariant"), prefix }
    }

    /// Records whether `a ≅ b`, and that isomorphic butterflies share `β`.
    fn iso(&mut self, a: &Butterfly, b: &Butterfly) -> bool {
        let iso = a == b || butterflies_isomorphic(a, b);
        if iso {
            self.beta_iso.record(butterfly_beta(a) == butterfly_beta(b), || format!("{}: isomorphic pair with different beta", self.prefix));
        }
        iso
    }

    fn identities(&mut self, f: &Butterfly, label: &str) {
        let (id_dom, id_cod) = (identity_butterfly(f.dom()), identity_butterfly(f.cod()));
        let left = compose_butterflies(&id_cod, f).map(|c| self.iso(&c, f));
        self.left.record(left == Ok(true), || label.to_string());
        let right = compose_butterflies(f, &id_dom).map(|c| self.iso(&c, f));
        self.right.record(right == Ok(true), || label.to_string());
    }

    /// Composes `g . f`, recording functoriality of `β`.
    fn pair(&mut self, g: &Butterfly, f: &Butterfly, label: &str) -> Option<Butterfly> {
        match compose_butterflies(g, f) {
            Ok(c) => {
                let expected = butterfly_beta(g).after(butterfly_beta(f));
                self.beta.record(expected.as_ref() == Ok(butterfly_beta(&c)), || label.to_string());
                Some(c)
            }
            Err(e) => {
                self.beta.fail(format!("{label}: {e}"));
                None
            }
        }
    }

    fn triple(&mut self, h: &Butterfly, g: &Butterfly, f: &Butterfly, label: &str) {
        let lhs = compose_butterflies(h, g).and_then(|hg| compose_butterflies(&hg, f));
        let rhs = compose_butterflies(g, f).and_then(|gf| compose_butterflies(h, &gf));
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                let ok = self.iso(&a, &b);
                self.assoc.record(ok, || label.to_string());
            }
            (Err(e), _) | (_, Err(e)) => self.assoc.fail(format!("{label}: {e}")),
        }
    }

    fn finish(self, out: &mut Vec<Check>, pairs: &mut usize, triples: &mut usize) {
        *pairs += self.beta.total();
        *triples += self.assoc.total();
        out.push(self.left.finish("left identity laws"));
        out.push(self.right.finish("right identity laws"));
        out.push(self.beta.finish("composable pairs with beta of the composite equal to the composite of betas"));
        if self.assoc.total() > 0 {
            out.push(self.assoc.finish("composable triples associative up to isomorphism"));
        }
        if self.beta_iso.total() > 0 {
            out.push(self.beta_iso.finish("isomorphic pairs sharing beta"));
        }
    }
}

fn triple_indices(n: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    sample(n * n * n, MAX_TRIPLES, seed).into_iter().map(|t| (t / (n * n), t / n % n, t % n)).collect()
}

pub fn run(catalog: &Catalog, opts: &Options) -> Vec<Check> {
    let mut out = Vec::new();
    let (mut pairs, mut triples) = (0, 0);

    // Endomorphisms of the unit coming from extensions.
    for (k, m) in catalog.modules.iter().enumerate() {
        let exts: Vec<_> = catalog.extensions_over(&m.value).collect();
        let images: Vec<_> = exts.iter().map(|e| phi(&e.value)).collect();
        let mut laws = Laws::new(format!("butterfly-category:phi:{}", m.name));
        for (e, b) in exts.iter().zip(&images) {
            laws.identities(b, &e.name);
        }
        for (e, f) in exts.iter().zip(&images) {
            for (e2, g) in exts.iter().zip(&images) {
                laws.pair(g, f, &format!("{} then {}", e.name, e2.name));
            }
        }
        for (a, b, c) in triple_indices(images.len(), opts.seed.wrapping_add(k as u64)) {
            laws.triple(&images[c], &images[b], &images[a], &format!("{}, {}, {}", exts[a].name, exts[b].name, exts[c].name));
        }
        laws.finish(&mut out, &mut pairs, &mut triples);
    }

    // Representable butterflies along chains of pushforwards.
    for (k, e) in catalog.crossed.iter().enumerate() {
        if e.value.e2().order() > MAX_REPRESENTABLE || e.value.e1().order() > MAX_REPRESENTABLE {
            continue;
        }
        let m = e.value.module();
        let ends = module_morphisms(m, m);
        let mut laws = Laws::new(format!("butterfly-category:representable:{}", e.name));
        let mut matches = Tally::new(format!("butterfly-category:representable:{}:composition", e.name));
        let mut beta_of = Tally::new(format!("butterfly-category:representable:{}:beta", e.name));
        let lifts: Vec<_> = match ends.iter().map(|b| pushforward_xext(&e.value, b)).collect::<Result<Vec<_>, _>>() {
            Ok(l) => l,
            Err(err) => {
                out.push(Check::error(format!("butterfly-category:representable:{}", e.name), err));
                continue;
            }
        };
        for (i, first) in lifts.iter().enumerate() {
            let f = morphism_to_butterfly(&first.lift);
            laws.identities(&f, &format!("beta {i}"));
            beta_of.record(butterfly_beta(&f) == &ends[i], || format!("beta {i}"));
            for (j, beta2) in ends.iter().enumerate() {
                let label = format!("beta {i} then beta {j}");
                let second = match pushforward_xext(&first.ext, beta2) {
                    Ok(s) => s,
                    Err(err) => {
                        matches.fail(format!("{label}: {err}"));
                        continue;
                    }
                };
                let g = morphism_to_butterfly(&second.lift);
                let Some(gf) = laws.pair(&g, &f, &label) else { continue };
                match second.lift.after(&first.lift).map(|m: XExtMorphism| morphism_to_butterfly(&m)) {
                    Ok(direct) => {
                        let ok = laws.iso(&gf, &direct);
                        matches.record(ok, || label.clone());
                    }
                    Err(err) => matches.fail(format!("{label}: {err}")),
                }
                for t in sample(ends.len(), 2, opts.seed ^ ((k * 31 + i * 7 + j) as u64)) {
                    match pushforward_xext(&second.ext, &ends[t]) {
                        Ok(third) => laws.triple(&morphism_to_butterfly(&third.lift), &g, &f, &format!("{label} then beta {t}")),
                        Err(err) => laws.assoc.fail(format!("{label} then beta {t}: {err}")),
                    }
                }
            }
        }
        out.push(beta_of.finish("representables with beta equal to the module map"));
        out.push(matches.finish("composites of representables isomorphic to the representable of the composite"));
        laws.finish(&mut out, &mut pairs, &mut triples);
    }

    // Inverse witnesses and their flips.
    let mut laws = Laws::new("butterfly-category:witness".to_string());
    for e in &catalog.crossed {
        let Ok(w) = inverse_witness(&e.value) else {
            laws.beta.fail(format!("{}: no witness", e.name));
            continue;
        };
        let Ok(back) = w.flip() else {
            laws.beta.fail(format!("{}: witness not flippable", e.name));
            continue;
        };
        laws.identities(&w, &e.name);
        laws.identities(&back, &e.name);
        laws.pair(&back, &w, &e.name);
        laws.pair(&w, &back, &e.name);
        laws.triple(&w, &back, &w, &e.name);
        laws.triple(&back, &w, &back, &e.name);
    }
    laws.finish(&mut out, &mut pairs, &mut triples);

    out.push(Check::new(
        "butterfly-category:sample-size",
        pairs >= MIN_SAMPLES && triples >= MIN_SAMPLES,
        format!("{pairs} composable pairs and {triples} composable triples (at least {MIN_SAMPLES} of each required)"),
    ));
    out
}
