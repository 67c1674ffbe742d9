//! Binary relations between groupoids that are closed under the componentwise operation.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::groupoid::{sub_product, Elem, Groupoid, Partition, UnionFind};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectRelation {
    left: Groupoid,
    right: Groupoid,
    pairs: Vec<(Elem, Elem)>,
    subdirect: bool,
    symmetric: bool,
    linked: bool,
}

impl SubdirectRelation {
    /// Fails unless `pairs` is closed under the componentwise operation.
    pub fn new(left: Groupoid, right: Groupoid, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let set: BTreeSet<(Elem, Elem)> = pairs.into_iter().collect();
        if set.iter().any(|&(a, b)| a >= left.size() || b >= right.size()) {
            return Err(Error::Precondition("pair out of range".to_string()));
        }
        for &(a, b) in &set {
            for &(c, d) in &set {
                if !set.contains(&(left.op(a, c), right.op(b, d))) {
                    return Err(Error::Precondition("relation is not closed".to_string()));
                }
            }
        }
        let pairs: Vec<(Elem, Elem)> = set.into_iter().collect();
        let onto = |n: usize, side: &dyn Fn(&(Elem, Elem)) -> Elem| {
            let mut hit = vec![false; n];
            pairs.iter().for_each(|p| hit[side(p)] = true);
            hit.iter().all(|&h| h)
        };
        let subdirect = onto(left.size(), &|p| p.0) && onto(right.size(), &|p| p.1);
        let symmetric = left.table() == right.table() && pairs.iter().all(|&(a, b)| pairs.binary_search(&(b, a)).is_ok());
        let mut r = SubdirectRelation { left, right, pairs, subdirect, symmetric, linked: false };
        r.linked = subdirect && r.components().1 == 1;
        Ok(r)
    }

    /// `Sg_{G×H}(gens)`.
    pub fn generated(left: &Groupoid, right: &Groupoid, gens: &[(Elem, Elem)]) -> Self {
        let sp = sub_product(left, right, gens);
        SubdirectRelation::new(left.clone(), right.clone(), sp.pairs).expect("closure is closed")
    }

    pub fn diagonal(g: &Groupoid) -> Self {
        SubdirectRelation::new(g.clone(), g.clone(), (0..g.size()).map(|a| (a, a))).expect("diagonal is closed")
    }

    pub fn full(g: &Groupoid, h: &Groupoid) -> Self {
        let pairs = (0..g.size()).flat_map(|a| (0..h.size()).map(move |b| (a, b)));
        SubdirectRelation::new(g.clone(), h.clone(), pairs).expect("product is closed")
    }

    /// The graph `{(a, map[a])}` of a homomorphism.
    pub fn graph(g: &Groupoid, h: &Groupoid, map: &[Elem]) -> Result<Self> {
        SubdirectRelation::new(g.clone(), h.clone(), map.iter().copied().enumerate())
    }

    pub fn left(&self) -> &Groupoid {
        &self.left
    }

    pub fn right(&self) -> &Groupoid {
        &self.right
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.pairs.binary_search(&(a, b)).is_ok()
    }

    pub fn is_subdirect(&self) -> bool {
        self.subdirect
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_linked(&self) -> bool {
        self.linked
    }

    pub fn is_full(&self) -> bool {
        self.pairs.len() == self.left.size() * self.right.size()
    }

    fn components(&self) -> (Vec<usize>, usize) {
        let n = self.left.size();
        let mut uf = UnionFind::new(n + self.right.size());
        for &(a, b) in &self.pairs {
            uf.union(a, n + b);
        }
        let labels = uf.labels();
        let count = labels.iter().enumerate().filter(|&(i, &l)| i == l).count();
        (labels, count)
    }
}

/// Components of the bipartite graph, as partitions of the pairs, the left side and the right side.
pub fn linking_congruence(r: &SubdirectRelation) -> Result<(Partition, Partition, Partition)> {
    if !r.subdirect {
        return Err(Error::Precondition("relation is not subdirect".to_string()));
    }
    let n = r.left.size();
    let (labels, _) = r.components();
    let on_pairs: Vec<usize> = r.pairs.iter().map(|&(a, _)| labels[a]).collect();
    Ok((
        Partition::from_labels(&on_pairs),
        Partition::from_labels(&labels[..n]),
        Partition::from_labels(&labels[n..]),
    ))
}

pub fn is_linked(r: &SubdirectRelation) -> bool {
    r.linked
}

/// `C + R = {b | (c,b) ∈ R for some c ∈ C}`.
pub fn plus(c: &[Elem], r: &SubdirectRelation) -> Vec<Elem> {
    let set: BTreeSet<Elem> = r.pairs.iter().filter(|(a, _)| c.contains(a)).map(|&(_, b)| b).collect();
    set.into_iter().collect()
}

/// `D − R = {a | (a,d) ∈ R for some d ∈ D}`.
pub fn minus(d: &[Elem], r: &SubdirectRelation) -> Vec<Elem> {
    let set: BTreeSet<Elem> = r.pairs.iter().filter(|(_, b)| d.contains(b)).map(|&(a, _)| a).collect();
    set.into_iter().collect()
}

/// `R ∘ S = {(a,c) | (a,b) ∈ R, (b,c) ∈ S}`.
pub fn relational_compose(r: &SubdirectRelation, s: &SubdirectRelation) -> Result<SubdirectRelation> {
    if r.right.table() != s.left.table() {
        return Err(Error::Precondition("middle algebras differ".to_string()));
    }
    let mut pairs = BTreeSet::new();
    for &(a, b) in &r.pairs {
        let start = s.pairs.partition_point(|&(x, _)| x < b);
        for &(_, c) in s.pairs[start..].iter().take_while(|&&(x, _)| x == b) {
            pairs.insert((a, c));
        }
    }
    SubdirectRelation::new(r.left.clone(), s.right.clone(), pairs)
}

/// Least `n` with `S^{∘n} = A²`, checked to stay full at `n + 1`.
pub fn verify_sym_link_power(s: &SubdirectRelation) -> Result<usize> {
    if !(s.subdirect && s.symmetric && s.linked) {
        return Err(Error::Precondition("need a subdirect, symmetric, linked relation".to_string()));
    }
    let mut power = s.clone();
    let mut n = 1;
    while !power.is_full() {
        let next = relational_compose(&power, s)?;
        if next.pairs.len() == power.pairs.len() {
            return Err(Error::Precondition("powers stopped growing".to_string()));
        }
        power = next;
        n += 1;
    }
    if !relational_compose(&power, s)?.is_full() {
        return Err(Error::Precondition("power is not stable".to_string()));
    }
    Ok(n)
}

/// A proper subuniverse `C` with `C + S` everything, if one exists.
pub fn proper_cover(s: &SubdirectRelation) -> Result<Option<Vec<Elem>>> {
    let n = s.left.size();
    let right = s.right.size();
    for c in s.left.subuniverses()? {
        if !c.is_empty() && c.len() < n && plus(&c, s).len() == right {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
