use minclone_core::census::iteration_identities_hold;
use minclone_core::clone::{star1, star2, starc};
use minclone_core::groupoid::Partition;
use minclone_core::hom::{find_homomorphisms, is_homomorphism, is_isomorphic};
use minclone_core::meld::{solve, witness_meld, MeldPresentation};
use minclone_core::term::satisfies_identity;
use minclone_core::{zoo, Groupoid, Term, TermTable};
use proptest::prelude::*;

fn idempotent(max: usize) -> impl Strategy<Value = Groupoid> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n)
            .prop_map(move |mut t| {
                for a in 0..n {
                    t[a * n + a] = a;
                }
                Groupoid::from_flat(n, t).unwrap()
            })
    })
}

fn tables(n: usize, k: usize) -> impl Strategy<Value = Vec<TermTable>> {
    proptest::collection::vec(proptest::collection::vec(0..n, n * n), k)
        .prop_map(move |vs| vs.into_iter().map(|v| TermTable::new(n, v).unwrap()).collect())
}

fn term(vars: usize) -> impl Strategy<Value = Term> {
    let leaf = (0..vars).prop_map(Term::var);
    leaf.prop_recursive(5, 24, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| Term::app(&l, &r)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn generated_subuniverses_are_closed(g in idempotent(6), a in 0usize..6, b in 0usize..6) {
        let gens = [a % g.size(), b % g.size()];
        let s = g.subuniverse_generated(&gens);
        prop_assert!(g.is_closed(&s));
        prop_assert!(gens.iter().all(|x| s.contains(x)));
        prop_assert_eq!(g.subuniverse_generated(&s), s);
    }

    #[test]
    fn generated_congruences_are_congruences(g in idempotent(6), a in 0usize..6, b in 0usize..6) {
        let (a, b) = (a % g.size(), b % g.size());
        let theta = g.congruence_generated(&[(a, b)]);
        prop_assert!(g.is_congruence(&theta));
        prop_assert_eq!(theta.block_of(a), theta.block_of(b));
        let q = g.quotient(&theta).unwrap();
        let map: Vec<usize> = (0..g.size()).map(|x| theta.block_of(x)).collect();
        prop_assert!(is_homomorphism(&g, &q, &map));
        prop_assert!(g.is_congruence(&Partition::discrete(g.size())));
    }

    #[test]
    fn star_operations_are_associative(ts in tables(3, 3)) {
        let (f, g, h) = (&ts[0], &ts[1], &ts[2]);
        for star in [star1, star2, starc] {
            let l = star(&star(f, g).unwrap(), h).unwrap();
            let r = star(f, &star(g, h).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn iteration_identities(ts in tables(4, 1)) {
        prop_assert!(iteration_identities_hold(&ts[0]));
    }

    #[test]
    fn iteration_identities_on_groupoids(g in idempotent(5)) {
        prop_assert!(iteration_identities_hold(&TermTable::basic(&g)));
    }

    #[test]
    fn print_parse_round_trip(t in term(4)) {
        prop_assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn homomorphisms_compose(g in idempotent(3), h in idempotent(3)) {
        let fd = zoo::fd_free();
        for m1 in find_homomorphisms(&g, &h, false, &[]).into_iter().take(5) {
            for m2 in find_homomorphisms(&h, &fd, false, &[]).into_iter().take(5) {
                let m: Vec<usize> = m1.iter().map(|&a| m2[a]).collect();
                prop_assert!(is_homomorphism(&g, &fd, &m));
            }
        }
    }

    #[test]
    fn relabelling_is_an_isomorphism(g in idempotent(5), seed in permutation(5)) {
        let perm: Vec<usize> = seed.into_iter().filter(|&a| a < g.size()).collect();
        let h = g.relabel(&perm);
        let iso = is_isomorphic(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(is_homomorphism(&g, &h, &iso.unwrap()));
        prop_assert!(is_homomorphism(&g, &h, &perm));
    }

    #[test]
    fn meld_solver_is_sound_and_complete(r in term(2), s in term(2)) {
        let p = MeldPresentation::new(vec!["x".into(), "y".into()], Vec::new()).unwrap();
        let proved = solve(&p, &r, &s).unwrap();
        let holds = satisfies_identity(&zoo::free_meld2(), &r, &s, 2).unwrap();
        prop_assert_eq!(proved, holds);
        if !proved {
            prop_assert!(witness_meld(&p, &r, &s).unwrap().verify(&p, &r, &s));
        }
    }

    #[test]
    fn meld_witnesses_respect_relations(u in term(3), v in term(3), r in term(3), s in term(3)) {
        let p = MeldPresentation::new(vec!["x".into(), "y".into(), "z".into()], vec![(u, v)]).unwrap();
        if !solve(&p, &r, &s).unwrap() {
            prop_assert!(witness_meld(&p, &r, &s).unwrap().verify(&p, &r, &s));
        }
    }
}
