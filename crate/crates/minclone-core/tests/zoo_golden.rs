use minclone_core::census::{census, CensusReport};
use minclone_core::classify::{is_dispersive, is_inert_dispersive, Orientation};
use minclone_core::clone::clo2_pi1;
use minclone_core::graphs::nice_terms;
use minclone_core::hom::is_isomorphic;
use minclone_core::relation::{linking_congruence, proper_cover, verify_sym_link_power, SubdirectRelation};
use minclone_core::{classify, zoo, Groupoid, TermTable};

#[test]
fn every_entry_reproduces_its_tags() {
    for e in zoo::entries() {
        let c = classify(&e.groupoid).unwrap();
        assert_eq!(c.tags, e.expected_tags, "{}", e.name);
        assert_eq!(c.orientation, Orientation::Given, "{}", e.name);
        assert!(!c.taylor, "{}", e.name);
        assert!(e.groupoid.generates(&e.generators), "{}", e.name);
    }
}

#[test]
fn census_of_three_has_no_counterexamples() {
    let r = census(3).unwrap();
    assert_eq!(r.total, 729);
    assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
    assert_eq!(r.counts.values().sum::<u64>(), 729);
    assert_eq!(r, census(3).unwrap());
}

#[test]
fn census_of_two_matches_the_four_tables() {
    let r: CensusReport = census(2).unwrap();
    assert_eq!(r.counts.len(), 2);
    assert_eq!(r.counts["projection"], 2);
    assert_eq!(r.counts["partial-semilattice-term+spiral"], 2);
}

#[test]
fn hoop_reducts_stay_in_the_family() {
    for n in 1..=3 {
        let h = zoo::hoop(n, false);
        let hp = zoo::hoop(n, true);
        for t in clo2_pi1(&TermTable::basic(&h)).unwrap() {
            if t.is_projection() {
                continue;
            }
            let g = t.as_groupoid();
            assert!(is_isomorphic(&g, &h).is_some() || is_isomorphic(&g, &hp).is_some(), "H_{n}: {:?}", t.values());
        }
    }
}

#[test]
fn inert_verdicts() {
    for n in 1..=3 {
        for k in 0..n {
            assert!(is_inert_dispersive(&zoo::wheel_a(n, k).unwrap()));
        }
        assert!(is_inert_dispersive(&zoo::wheel_s(n).unwrap()));
    }
    let h2 = zoo::hoop(2, false);
    let r = is_dispersive(&h2);
    assert!(r.dispersive && !r.inert);
}

#[test]
fn nice_terms_on_the_hoop() {
    let h = zoo::hoop(1, false);
    let nt = nice_terms(&h).unwrap();
    assert!(!nt.g0.is_projection());
    assert!(nt.g1.is_first_projection() || !nt.g1.is_projection());
}

#[test]
fn linking_on_pair_algebras() {
    let h1 = zoo::hoop(1, false);
    let sp = minclone_core::groupoid::pair_algebra(&h1, 0, 1);
    let r = SubdirectRelation::new(h1.clone(), h1.clone(), sp.pairs).unwrap();
    let (on_pairs, left, right) = linking_congruence(&r).unwrap();
    assert_eq!(on_pairs.size(), r.pairs().len());
    assert_eq!(left.size(), h1.size());
    assert_eq!(right.size(), h1.size());
}

/// Symmetric linked subdirect relations on small census algebras reach `A²`
/// and admit a proper cover when a proper subuniverse exists.
#[test]
fn symmetric_linked_relations() {
    let mut checked = 0;
    for g in minclone_core::census::enumerate_idempotent(3).unwrap().step_by(7) {
        let n = g.size();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let s = SubdirectRelation::generated(&g, &g, &[(a, b), (b, a)]);
                if !(s.is_subdirect() && s.is_symmetric() && s.is_linked()) {
                    continue;
                }
                checked += 1;
                let k = verify_sym_link_power(&s).unwrap();
                assert!(k >= 1);
                let has_proper = g.subuniverses().unwrap().iter().any(|u| u.len() < n);
                if has_proper {
                    assert!(proper_cover(&s).unwrap().is_some(), "{:?}", g.rows());
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn projection_algebras_are_short_circuited() {
    let g = Groupoid::from_fn(3, |_, b| b);
    let c = classify(&g).unwrap();
    assert!(c.is_projection_algebra && c.tags.is_empty() && !c.taylor);
}
