mod common;

use bfly_core::cmodule::{module_morphisms, CModuleMorphism};
use bfly_core::h3::{
    butterflies_isomorphic, butterfly_beta, compose_butterflies, find_butterfly_iso, identity_butterfly, inverse_witness,
    morphism_to_butterfly, phi, pushforward_xext, Butterfly, CrossedExtension,
};
use common::{catalog, pick};
use proptest::prelude::*;

fn small(x: &CrossedExtension) -> bool {
    x.e2().order() <= 16 && x.e1().order() <= 16
}

fn revalidates(b: &Butterfly) -> bool {
    Butterfly::new(b.dom(), b.cod(), b.wings()).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn identity_butterflies_have_identity_beta(e in 0usize..64) {
        let x = &pick(&catalog().crossed, e).value;
        let id = identity_butterfly(x);
        prop_assert!(revalidates(&id));
        prop_assert!(butterfly_beta(&id).is_identity());
    }

    #[test]
    fn beta_is_functorial_on_representables(e in 0usize..64, s in 0usize..64, t in 0usize..64) {
        let pool: Vec<_> = catalog().crossed.iter().filter(|x| small(&x.value)).collect();
        let x = &pick(&pool, e).value;
        let ends = module_morphisms(x.module(), x.module());
        let (beta, beta2) = (pick(&ends, s), pick(&ends, t));
        let first = pushforward_xext(x, beta).unwrap();
        let second = pushforward_xext(&first.ext, beta2).unwrap();
        let f = morphism_to_butterfly(&first.lift);
        let g = morphism_to_butterfly(&second.lift);
        let gf = compose_butterflies(&g, &f).unwrap();
        prop_assert!(revalidates(&gf));
        prop_assert_eq!(butterfly_beta(&gf), &beta2.after(beta).unwrap());
        let direct = morphism_to_butterfly(&second.lift.after(&first.lift).unwrap());
        let iso = find_butterfly_iso(&gf, &direct);
        prop_assert!(iso.is_some());
        prop_assert_eq!(butterfly_beta(&gf), butterfly_beta(&direct));
    }

    #[test]
    fn phi_butterflies_are_invertible(m in 0usize..64, a in 0usize..16) {
        let cat = catalog();
        let m = &pick(&cat.modules, m).value;
        let exts: Vec<_> = cat.extensions_over(m).collect();
        let b = phi(&pick(&exts, a).value);
        prop_assert!(revalidates(&b));
        prop_assert!(b.is_flippable());
        let back = b.flip().unwrap();
        let id = identity_butterfly(b.dom());
        prop_assert!(butterflies_isomorphic(&compose_butterflies(&back, &b).unwrap(), &id));
        prop_assert!(butterflies_isomorphic(&compose_butterflies(&b, &back).unwrap(), &id));
    }

    #[test]
    fn inverse_witnesses_are_flippable_over_the_identity(e in 0usize..64) {
        let x = &pick(&catalog().crossed, e).value;
        let w = inverse_witness(x).unwrap();
        prop_assert!(revalidates(&w));
        prop_assert!(w.is_flippable());
        prop_assert_eq!(butterfly_beta(&w), &CModuleMorphism::identity(x.module()));
        let back = w.flip().unwrap();
        prop_assert!(revalidates(&back));
        prop_assert!(butterfly_beta(&back).is_identity());
    }
}
