mod common;

use bfly_core::cmodule::{cmodule_product, module_morphisms, CModuleMorphism};
use bfly_core::group::{image, kernel, GroupHom};
use bfly_core::xmod::{associated_groupoid, induced_kernel_module};
use common::{catalog, pick};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equivariant_maps_compose(m in 0usize..64, n in 0usize..64, k in 0usize..64, f in 0usize..64, g in 0usize..64) {
        let modules = &catalog().modules;
        let m = &pick(modules, m).value;
        let same: Vec<_> = modules.iter().filter(|x| x.value.base() == m.base()).collect();
        let (n, k) = (&pick(&same, n).value, &pick(&same, k).value);
        let f = pick(&module_morphisms(m, n), f).clone();
        let g = pick(&module_morphisms(n, k), g).clone();
        let gf = g.after(&f).unwrap();
        prop_assert!(CModuleMorphism::new(m, k, gf.hom().clone()).is_ok());
        prop_assert!(CModuleMorphism::new(m, m, CModuleMorphism::identity(m).hom().clone()).is_ok());
        prop_assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn module_products_are_universal(m in 0usize..64, n in 0usize..64, t in 0usize..64) {
        let modules = &catalog().modules;
        let m = &pick(modules, m).value;
        let same: Vec<_> = modules.iter().filter(|x| x.value.base() == m.base()).collect();
        let (n, t) = (&pick(&same, n).value, &pick(&same, t).value);
        let prod = cmodule_product(m, n).unwrap();
        let into = module_morphisms(t, &prod.module);
        for f in module_morphisms(t, m) {
            for g in module_morphisms(t, n) {
                let pairing = prod.pairing(&f, &g).unwrap();
                prop_assert_eq!(prod.pr1.after(&pairing).unwrap(), f.clone());
                prop_assert_eq!(prod.pr2.after(&pairing).unwrap(), g.clone());
                let mediating = into.iter().filter(|w| prod.pr1.after(w).unwrap() == f && prod.pr2.after(w).unwrap() == g).count();
                prop_assert_eq!(mediating, 1);
            }
        }
    }

    #[test]
    fn crossed_modules_have_normal_image_and_central_kernel(e in 0usize..64) {
        let x = &pick(&catalog().crossed, e).value;
        let xm = x.xm();
        prop_assert!(image(xm.boundary()).is_normal());
        let ker = kernel(xm.boundary());
        for &k in ker.elements() {
            prop_assert!(xm.e2().elements().all(|y| xm.e2().commutes(k, y)));
        }
        prop_assert!(induced_kernel_module(xm, x.p()).is_ok());
        let gpd = associated_groupoid(xm);
        let total = &gpd.total.group;
        prop_assert!(GroupHom::new(total, xm.e1(), gpd.d.map().to_vec()).is_ok());
        prop_assert!(GroupHom::new(total, xm.e1(), gpd.c.map().to_vec()).is_ok());
    }
}
