//! Enumeration of small idempotent tables, cross-checks and desk-scale verifications.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::classify::{
    self, classify, is_meld, is_partial_semilattice, is_rectangular_band, meld_absorption_equivalent,
    rect_band_absorption_equivalent, satisfies_p_cyclic, Tag,
};
use crate::clone::{iterate_inf1, iterate_inf2, iterate_infc, TermTable};
use crate::graphs::labeled_digraph;
use crate::groupoid::{pair_algebra, Elem, Groupoid, HS_CAP};
use crate::hom::find_embedding;
use crate::{zoo, Error, Result};

/// Largest size enumerated exhaustively without an explicit request.
pub const EXHAUSTIVE_LIMIT: usize = 3;
/// Largest size for canonical forms.
pub const CANONICAL_LIMIT: usize = 4;
/// Products above this size are skipped by `verify_pseudovariety`.
pub const PRODUCT_LIMIT: usize = 36;

/// `n^(n²-n)`, or `None` on overflow.
pub fn count_idempotent(n: usize) -> Option<u64> {
    (n as u64).checked_pow((n * n - n) as u32)
}

/// The idempotent table with the given odometer index; the last off-diagonal cell moves fastest.
pub fn table_from_index(n: usize, mut index: u64) -> Groupoid {
    let mut table = vec![0; n * n];
    for a in 0..n {
        table[a * n + a] = a;
    }
    for cell in (0..n * n).rev() {
        if cell / n == cell % n {
            continue;
        }
        table[cell] = (index % n as u64) as usize;
        index /= n as u64;
    }
    Groupoid::from_flat(n, table).expect("entries in range")
}

/// Iterator over a contiguous range of odometer indices.
#[derive(Clone, Debug)]
pub struct IdempotentTables {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for IdempotentTables {
    type Item = Groupoid;

    fn next(&mut self) -> Option<Groupoid> {
        if self.next >= self.end {
            return None;
        }
        self.next += 1;
        Some(table_from_index(self.n, self.next - 1))
    }
}

/// All idempotent tables of size `n ≤ 3`, in odometer order.
pub fn enumerate_idempotent(n: usize) -> Result<IdempotentTables> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeCap { what: "exhaustive enumeration", limit: EXHAUSTIVE_LIMIT });
    }
    enumerate_idempotent_exhaustive(n)
}

/// All idempotent tables of size `n`, with no size limit beyond overflow.
pub fn enumerate_idempotent_exhaustive(n: usize) -> Result<IdempotentTables> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let end = count_idempotent(n).ok_or(Error::SizeCap { what: "table count", limit: usize::MAX })?;
    Ok(IdempotentTables { n, next: 0, end })
}

/// Tables in the index range `[start, end)`.
pub fn idempotent_range(n: usize, start: u64, end: u64) -> IdempotentTables {
    IdempotentTables { n, next: start, end }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The least relabelled table over all permutations (`n ≤ 4`).
pub fn canonical_form(g: &Groupoid) -> Result<Vec<Elem>> {
    let n = g.size();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeCap { what: "canonical form", limit: CANONICAL_LIMIT });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = g.table().to_vec();
    loop {
        let t = g.relabel(&perm);
        if t.table() < &best[..] {
            best = t.table().to_vec();
        }
        if !next_permutation(&mut perm) {
            return Ok(best);
        }
    }
}

/// `f^∞₁(f^∞₁(x,y),y) ≈ f^∞₁(x,y)` and its two companions, with the projection criteria.
pub fn iteration_identities_hold(f: &TermTable) -> bool {
    let n = f.base_size();
    let (i1, i2, ic) = (iterate_inf1(f), iterate_inf2(f), iterate_infc(f));
    let identities = (0..n).all(|a| {
        (0..n).all(|b| {
            i1.at(i1.at(a, b), b) == i1.at(a, b)
                && i2.at(a, i2.at(a, b)) == i2.at(a, b)
                && ic.at(ic.at(a, b), ic.at(b, a)) == ic.at(a, b)
        })
    });
    let perm = |m: &dyn Fn(Elem) -> Elem| {
        let mut seen = vec![false; n];
        (0..n).for_each(|a| seen[m(a)] = true);
        seen.iter().all(|&s| s)
    };
    let cols = (0..n).all(|b| perm(&|a| f.at(a, b)));
    let rows = (0..n).all(|a| perm(&|b| f.at(a, b)));
    let mut pairs = vec![false; n * n];
    (0..n).for_each(|a| (0..n).for_each(|b| pairs[f.at(a, b) * n + f.at(b, a)] = true));
    let joint = pairs.iter().all(|&s| s);
    identities && i1.is_first_projection() == cols && i2.is_second_projection() == rows && ic.is_first_projection() == joint
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub table: Vec<Vec<Elem>>,
    pub reason: String,
}

/// Cross-checks run on every census table; returns the failed ones.
pub fn cross_check(g: &Groupoid) -> Vec<String> {
    let mut issues = Vec::new();
    let c = match classify(g) {
        Ok(c) => c,
        Err(e) => return vec![format!("classify failed: {e}")],
    };
    if c.has(Tag::Meld) && c.has(Tag::Dispersive) {
        issues.push("meld and dispersive".to_string());
    }
    if is_rectangular_band(g) != rect_band_absorption_equivalent(g) {
        issues.push("rectangular band identity and its absorption form disagree".to_string());
    }
    if is_meld(g) != meld_absorption_equivalent(g) {
        issues.push("meld identity and its absorption form disagree".to_string());
    }
    if g.size() <= HS_CAP && g.has_two_element_projection_subquotient_brute().ok() != Some(!c.taylor) {
        issues.push("Taylor gate disagrees with brute force".to_string());
    }
    if !iteration_identities_hold(&TermTable::basic(g)) {
        issues.push("iteration identities fail".to_string());
    }
    let d = classify::is_dispersive(g);
    if d.disagreements() > 0 {
        issues.push("dispersive check disagrees with brute force".to_string());
    }
    if d.dispersive && constant_pair_in_pair_algebra(g) {
        issues.push("dispersive but a pair algebra contains a constant pair".to_string());
    }
    if !c.is_projection_algebra && d.dispersive != c.has(Tag::Dispersive) && c.orientation == classify::Orientation::Given && !c.taylor {
        issues.push("dispersive verdict inconsistent".to_string());
    }
    issues
}

fn constant_pair_in_pair_algebra(g: &Groupoid) -> bool {
    (0..g.size()).any(|a| {
        (0..g.size()).any(|b| a != b && pair_algebra(g, a, b).pairs.iter().any(|&(c, d)| c == d))
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub size: usize,
    pub total: u64,
    /// Tables per classification signature.
    pub counts: BTreeMap<String, u64>,
    /// Isomorphism classes per signature, when deduplication was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<BTreeMap<String, u64>>,
    pub counterexamples: Vec<Counterexample>,
}

impl CensusReport {
    pub fn new(size: usize) -> Self {
        CensusReport { size, ..Default::default() }
    }

    pub fn add(&mut self, g: &Groupoid) {
        self.total += 1;
        let signature = classify(g).map(|c| c.signature()).unwrap_or_else(|_| "error".to_string());
        *self.counts.entry(signature).or_insert(0) += 1;
        for reason in cross_check(g) {
            self.counterexamples.push(Counterexample { table: g.rows(), reason });
        }
    }

    /// Order-independent merge.
    pub fn merge(&mut self, other: CensusReport) {
        self.total += other.total;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort();
    }
}

pub fn census_of(n: usize, tables: impl IntoIterator<Item = Groupoid>) -> CensusReport {
    let mut report = CensusReport::new(n);
    for g in tables {
        report.add(&g);
    }
    report.counterexamples.sort();
    report
}

/// Exhaustive census for `n ≤ 3`.
pub fn census(n: usize) -> Result<CensusReport> {
    Ok(census_of(n, enumerate_idempotent(n)?))
}

/// Counts isomorphism classes per signature and stores them in `report.classes`.
pub fn dedup_classes(report: &mut CensusReport, tables: impl IntoIterator<Item = Groupoid>) -> Result<()> {
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut classes = BTreeMap::new();
    for g in tables {
        if seen.insert(canonical_form(&g)?) {
            let signature = classify(&g)?.signature();
            *classes.entry(signature).or_insert(0) += 1;
        }
    }
    report.classes = Some(classes);
    Ok(())
}

// ---------------------------------------------------------------- appendix probes

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub partial_semilattices_checked: usize,
    pub inert_checked: usize,
    /// Inert dispersive instances whose orbits fall outside the hypothesis.
    pub inert_out_of_scope: usize,
    pub violations: Vec<String>,
}

fn two_generators(g: &Groupoid) -> Vec<(Elem, Elem)> {
    let n = g.size();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| g.generates(&[a, b])).collect()
}

/// Appendix probes over the given instances. Reports violations; never proves anything.
pub fn verify_appendices(instances: &[(String, Groupoid)]) -> Result<AppendixReport> {
    let mut report = AppendixReport::default();
    let fd = zoo::fd_free();
    for (name, g) in instances {
        let gens = two_generators(g);
        if gens.is_empty() {
            continue;
        }
        if is_partial_semilattice(g) && !g.is_projection_algebra() && classify::binary_reduct_minimality_check(g)? {
            report.partial_semilattices_checked += 1;
            let sccs = labeled_digraph(g).components().len();
            if g.size() >= 3 && sccs < 3 {
                report.violations.push(format!("{name}: partial semilattice with {sccs} strongly connected components"));
            }
        }
        let d = classify::is_dispersive(g);
        if d.dispersive && d.inert && !g.is_projection_algebra() {
            if !gens.iter().any(|&(_, b)| g.right_orbit(b).len() <= 2) {
                report.inert_out_of_scope += 1;
                continue;
            }
            if !classify::binary_reduct_minimality_check(g)? {
                continue;
            }
            report.inert_checked += 1;
            if find_embedding(g, &fd).is_none() {
                report.violations.push(format!("{name}: inert dispersive algebra does not embed into F_D"));
            }
        }
    }
    Ok(report)
}

/// Census tables of size `≤ max_census`, zoo entries of size `≤ max_zoo` and their 2-generated subalgebras.
pub fn appendix_scope(max_census: usize, max_zoo: usize) -> Result<Vec<(String, Groupoid)>> {
    let mut out = Vec::new();
    for n in 1..=max_census {
        for (i, g) in enumerate_idempotent(n)?.enumerate() {
            out.push((format!("census {n}#{i}"), g));
        }
    }
    for e in zoo::entries() {
        if e.groupoid.size() > max_zoo {
            continue;
        }
        let g = &e.groupoid;
        let mut subs = BTreeSet::new();
        for a in 0..g.size() {
            for b in 0..g.size() {
                subs.insert(g.subuniverse_generated(&[a, b]));
            }
        }
        for s in subs {
            out.push((format!("{} on {:?}", e.name, s), g.restrict(&s)?));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- pseudovariety closure

/// Whether `g` lies in the class named by `tag`.
pub fn has_tag(g: &Groupoid, tag: Tag) -> bool {
    match tag {
        Tag::RectangularBand => is_rectangular_band(g),
        Tag::PCyclic(p) => satisfies_p_cyclic(g, p as usize),
        Tag::PartialSemilatticeTerm => is_partial_semilattice(g),
        Tag::Meld => is_meld(g),
        Tag::Dispersive => classify::is_dispersive(g).dispersive,
        _ => false,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PseudovarietyReport {
    pub products: usize,
    pub subalgebras: usize,
    pub quotients: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

/// Products (up to `PRODUCT_LIMIT` elements), subalgebras and quotients keep `tag`.
pub fn verify_pseudovariety(tag: Tag, instances: &[(String, Groupoid)]) -> PseudovarietyReport {
    let mut r = PseudovarietyReport::default();
    for (name, g) in instances {
        if !has_tag(g, tag) {
            r.violations.push(format!("{name}: instance lacks {tag}"));
        }
    }
    for (i, (ni, gi)) in instances.iter().enumerate() {
        for (nj, gj) in &instances[i..] {
            if gi.size() * gj.size() > PRODUCT_LIMIT {
                r.skipped += 1;
                continue;
            }
            r.products += 1;
            if !has_tag(&gi.product(gj), tag) {
                r.violations.push(format!("{ni} x {nj}: product lacks {tag}"));
            }
        }
        match gi.subuniverses() {
            Ok(subs) => {
                for s in subs {
                    r.subalgebras += 1;
                    if !gi.restrict(&s).map(|h| has_tag(&h, tag)).unwrap_or(false) {
                        r.violations.push(format!("{ni} on {s:?}: subalgebra lacks {tag}"));
                    }
                }
            }
            Err(_) => r.skipped += 1,
        }
        match gi.congruences() {
            Ok(cons) => {
                for theta in cons {
                    r.quotients += 1;
                    if !gi.quotient(&theta).map(|h| has_tag(&h, tag)).unwrap_or(false) {
                        r.violations.push(format!("{ni} / {:?}: quotient lacks {tag}", theta.blocks()));
                    }
                }
            }
            Err(_) => r.skipped += 1,
        }
    }
    r
}

/// Zoo entries carrying `tag`, for `verify_pseudovariety`.
pub fn zoo_instances(tag: Tag) -> Vec<(String, Groupoid)> {
    zoo::entries()
        .into_iter()
        .filter(|e| e.expected_tags.contains(&tag) || matches!((tag, e.expected_tags.first()), (Tag::PCyclic(_), Some(Tag::PCyclic(_)))))
        .filter(|e| has_tag(&e.groupoid, tag))
        .map(|e| (e.name, e.groupoid))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_idempotent(1).unwrap().count(), 1);
        assert_eq!(enumerate_idempotent(2).unwrap().count(), 4);
        assert_eq!(enumerate_idempotent(3).unwrap().count(), 729);
        assert!(enumerate_idempotent(4).is_err());
        assert_eq!(count_idempotent(4), Some(1 << 24));
        assert!(enumerate_idempotent(3).unwrap().all(|g| g.is_idempotent()));
    }

    #[test]
    fn odometer_order() {
        let t: Vec<Vec<Vec<Elem>>> = enumerate_idempotent(2).unwrap().map(|g| g.rows()).collect();
        assert_eq!(t[0], vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(t[1], vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(t[3], vec![vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn small_census() {
        let r = census(1).unwrap();
        assert_eq!((r.total, r.counts.get("projection")), (1, Some(&1)));
        let r = census(2).unwrap();
        assert_eq!(r.counts.get("projection"), Some(&2));
        assert_eq!(r.counts.get("partial-semilattice-term+spiral"), Some(&2));
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert_eq!(r.counts.values().sum::<u64>(), r.total);
    }

    #[test]
    fn canonical_forms() {
        let a = Groupoid::from_fn(2, |a, b| a.max(b));
        let b = Groupoid::from_fn(2, |a, b| a.min(b));
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let mut r = census(2).unwrap();
        dedup_classes(&mut r, enumerate_idempotent(2).unwrap()).unwrap();
        assert_eq!(r.classes.unwrap().values().sum::<u64>(), 3);
    }

    #[test]
    fn merge_is_order_independent() {
        let all: Vec<Groupoid> = enumerate_idempotent(2).unwrap().collect();
        let mut a = census_of(2, all[..2].to_vec());
        a.merge(census_of(2, all[2..].to_vec()));
        let mut b = census_of(2, all[2..].to_vec());
        b.merge(census_of(2, all[..2].to_vec()));
        assert_eq!(a, b);
        assert_eq!(a, census(2).unwrap());
    }

    #[test]
    fn appendix_examples() {
        assert_eq!(labeled_digraph(&zoo::free_partial_semi2()).components().len(), 4);
        let fd = zoo::fd_free();
        let sub = fd.restrict(&[0, 2, 3]).unwrap();
        assert!(find_embedding(&sub, &fd).is_some());
        let w = zoo::wheel_a(2, 0).unwrap();
        assert_eq!(w.right_orbit(1).len(), 3);
        let r = verify_appendices(&[("F_D".into(), fd), ("sub".into(), sub), ("W".into(), w)]).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.inert_checked >= 1);
        assert!(r.inert_out_of_scope >= 1);
    }

    #[test]
    fn pseudovariety_examples() {
        let fd = zoo::fd_free();
        let h1 = zoo::hoop(1, false);
        assert!(has_tag(&fd.product(&h1), Tag::Dispersive));
        let m = zoo::free_meld2();
        assert!(has_tag(&m.product(&m), Tag::Meld));
        let ps = zoo::free_partial_semi2();
        for theta in ps.congruences().unwrap() {
            assert!(is_partial_semilattice(&ps.quotient(&theta).unwrap()));
        }
        let r = verify_pseudovariety(Tag::Meld, &[("meld".into(), m)]);
        assert!(r.violations.is_empty() && r.products == 1);
    }
}
