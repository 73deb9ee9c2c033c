mod common;

use bfly_core::cmodule::module_morphisms;
use bfly_core::h2::{baer_sum, fibre_isomorphic, fibre_morphisms, pushforward_extension, unit_extension, ExtensionMap};
use bfly_core::oracle::{cocycle_of_extension, Cohomology};
use common::{catalog, pick};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn baer_sum_is_a_symmetric_group_law(m in 0usize..64, a in 0usize..16, b in 0usize..16, c in 0usize..16) {
        let cat = catalog();
        let m = &pick(&cat.modules, m).value;
        let exts: Vec<_> = cat.extensions_over(m).map(|e| &e.value).collect();
        let (a, b, c) = (pick(&exts, a), pick(&exts, b), pick(&exts, c));
        let ab_c = baer_sum(&baer_sum(a, b).unwrap(), c).unwrap();
        let a_bc = baer_sum(a, &baer_sum(b, c).unwrap()).unwrap();
        prop_assert!(fibre_isomorphic(&ab_c, &a_bc));
        prop_assert!(fibre_isomorphic(&baer_sum(a, b).unwrap(), &baer_sum(b, a).unwrap()));
        prop_assert!(fibre_isomorphic(&baer_sum(a, &unit_extension(m)).unwrap(), a));
    }

    #[test]
    fn fibre_morphisms_are_invertible(m in 0usize..64, a in 0usize..16, b in 0usize..16) {
        let cat = catalog();
        let m = &pick(&cat.modules, m).value;
        let exts: Vec<_> = cat.extensions_over(m).map(|e| &e.value).collect();
        let (a, b) = (pick(&exts, a), pick(&exts, b));
        for f in fibre_morphisms(a, b) {
            let g = f.inverse().expect("short five lemma");
            prop_assert_eq!(g.after(&f).unwrap(), ExtensionMap::identity(a));
            prop_assert_eq!(f.after(&g).unwrap(), ExtensionMap::identity(b));
        }
    }

    #[test]
    fn baer_sum_adds_cocycles(m in 0usize..64, a in 0usize..16, b in 0usize..16) {
        let cat = catalog();
        let m = &pick(&cat.modules, m).value;
        let exts: Vec<_> = cat.extensions_over(m).map(|e| &e.value).collect();
        let (a, b) = (pick(&exts, a), pick(&exts, b));
        let h2 = Cohomology::classes(m, 2).unwrap();
        let sum = cocycle_of_extension(&baer_sum(a, b).unwrap());
        let parts = cocycle_of_extension(a).add(&cocycle_of_extension(b));
        prop_assert_eq!(h2.class_of(&sum.sub(&parts)).unwrap(), 0);
    }

    #[test]
    fn pushforwards_compose(m in 0usize..64, e in 0usize..16, s in 0usize..64, t in 0usize..64) {
        let cat = catalog();
        let m = &pick(&cat.modules, m).value;
        let exts: Vec<_> = cat.extensions_over(m).map(|e| &e.value).collect();
        let e = pick(&exts, e);
        let ends = module_morphisms(m, m);
        let (beta, beta2) = (pick(&ends, s), pick(&ends, t));
        let once = pushforward_extension(e, &beta2.after(beta).unwrap()).unwrap().ext;
        let step = pushforward_extension(e, beta).unwrap().ext;
        let twice = pushforward_extension(&step, beta2).unwrap().ext;
        prop_assert!(fibre_isomorphic(&once, &twice));
    }
}
