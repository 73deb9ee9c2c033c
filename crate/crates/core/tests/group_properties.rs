mod common;

use bfly_core::group::{cokernel, cooperator, direct_product, pullback, quotient, GroupHom, HomSearch};
use common::{group_pool, homs, pick};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotients_project_onto_with_the_right_kernel(g in 0usize..64, gens in proptest::collection::vec(0usize..64, 0..3)) {
        let g = pick(group_pool(), g);
        let gens: Vec<_> = gens.iter().map(|&x| x % g.order()).collect();
        let normal = g.normal_closure(&gens);
        let q = quotient(g, &normal).unwrap();
        let p = q.projection();
        prop_assert!(GroupHom::new(g, q.group(), p.map().to_vec()).is_ok());
        prop_assert!(p.is_surjective());
        prop_assert_eq!(p.kernel_members(), normal);
    }

    #[test]
    fn cokernels_are_universal(a in 0usize..64, b in 0usize..64, d in 0usize..64, f in 0usize..1024) {
        let (a, b, d) = (pick(group_pool(), a), pick(group_pool(), b), pick(group_pool(), d));
        let f = pick(&homs(a, b), f).clone();
        let q = cokernel(&f);
        prop_assert!(q.projection().after(&f).is_zero());
        for h in homs(b, d).into_iter().filter(|h| h.after(&f).is_zero()) {
            let through = HomSearch::new(q.group(), d).run(None).into_iter().filter(|u| u.after(q.projection()) == h).count();
            prop_assert_eq!(through, 1);
            prop_assert_eq!(q.factor(&h).unwrap().after(q.projection()), h);
        }
    }

    #[test]
    fn pullbacks_are_universal(a in 0usize..64, b in 0usize..64, c in 0usize..64, t in 0usize..64, f in 0usize..1024, g in 0usize..1024) {
        let pool = group_pool();
        let (a, b, c) = (pick(pool, a), pick(pool, b), pick(pool, c));
        let t = pick(&pool[..6], t);
        let f = pick(&homs(a, c), f).clone();
        let g = pick(&homs(b, c), g).clone();
        let pb = pullback(&f, &g).unwrap();
        let into_pb = homs(t, &pb.group);
        for u in homs(t, a) {
            for v in homs(t, b).into_iter().filter(|v| f.after(&u) == g.after(v)) {
                let mediating = into_pb.iter().filter(|w| pb.p1.after(w) == u && pb.p2.after(w) == v).count();
                prop_assert_eq!(mediating, 1);
            }
        }
    }

    #[test]
    fn cooperators_restrict_to_their_factors(x in 0usize..64, y in 0usize..64, z in 0usize..64, k in 0usize..1024, i in 0usize..1024) {
        let pool = group_pool();
        let (x, y) = (pick(pool, x), pick(pool, y));
        let abelian: Vec<_> = pool.iter().filter(|g| g.is_abelian()).cloned().collect();
        let target = pick(&abelian, z);
        let kappa = pick(&homs(x, target), k).clone();
        let iota = pick(&homs(y, target), i).clone();
        let coop = cooperator(&kappa, &iota).unwrap();
        let prod = direct_product(x, y);
        prop_assert_eq!(coop.after(&prod.inj1), kappa);
        prop_assert_eq!(coop.after(&prod.inj2), iota);
    }
}
