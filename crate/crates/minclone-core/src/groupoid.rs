use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub type Elem = usize;

/// Largest universe the brute-force HS enumerations accept.
pub const HS_CAP: usize = 8;
/// Largest universe for which all subuniverses are enumerated.
pub const SUBUNIVERSE_CAP: usize = 40;
/// Largest universe for which all congruences are enumerated.
pub const CONGRUENCE_CAP: usize = 40;

/// A finite set `{0..n}` with one binary operation, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Groupoid {
    n: usize,
    table: Vec<Elem>,
    names: Option<Vec<String>>,
}

impl Groupoid {
    pub fn new(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: r, len: row.len(), size: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRange { row: r, col: c, value: v });
                }
                table.push(v);
            }
        }
        Ok(Groupoid { n, table, names: None })
    }

    /// Builds a table from a closure. Entries must already be in range.
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        assert!(n > 0, "empty groupoid");
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = f(a, b);
                assert!(v < n, "entry ({a},{b}) = {v} out of range");
                table.push(v);
            }
        }
        Groupoid { n, table, names: None }
    }

    pub fn from_flat(n: usize, table: Vec<Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if table.len() != n * n {
            return Err(Error::NotSquare { row: 0, len: table.len(), size: n * n });
        }
        if let Some(i) = table.iter().position(|&v| v >= n) {
            return Err(Error::OutOfRange { row: i / n, col: i % n, value: table[i] });
        }
        Ok(Groupoid { n, table, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::BadNames(format!("{} names for {} elements", names.len(), self.n)));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::BadNames("names are not distinct".to_string()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Element names, falling back to decimal indices.
    pub fn labels(&self) -> Vec<String> {
        (0..self.n).map(|a| self.name(a)).collect()
    }

    /// The opposite operation `(a, b) ↦ f(b, a)`.
    pub fn transpose(&self) -> Groupoid {
        let mut g = Groupoid::from_fn(self.n, |a, b| self.op(b, a));
        g.names = self.names.clone();
        g
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|a| self.op(a, a) == a)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_first_projection(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, b) == a))
    }

    pub fn is_second_projection(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, b) == b))
    }

    pub fn is_projection_algebra(&self) -> bool {
        self.is_first_projection() || self.is_second_projection()
    }

    pub fn is_closed(&self, set: &[Elem]) -> bool {
        let mut member = vec![false; self.n];
        for &a in set {
            member[a] = true;
        }
        set.iter().all(|&a| set.iter().all(|&b| member[self.op(a, b)]))
    }

    /// Least subuniverse containing `gens`, sorted ascending.
    pub fn subuniverse_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        let mut elems = Vec::new();
        for &g in gens {
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for j in 0..=i {
                let b = elems[j];
                for c in [self.op(a, b), self.op(b, a)] {
                    if !member[c] {
                        member[c] = true;
                        elems.push(c);
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.subuniverse_generated(gens).len() == self.n
    }

    /// The subalgebra on a closed set, re-indexed in ascending order.
    pub fn restrict(&self, set: &[Elem]) -> Result<Groupoid> {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &a) in set.iter().enumerate() {
            index[a] = i;
        }
        let mut table = Vec::with_capacity(set.len() * set.len());
        for &a in &set {
            for &b in &set {
                let c = index[self.op(a, b)];
                if c == usize::MAX {
                    return Err(Error::Precondition("set is not closed".to_string()));
                }
                table.push(c);
            }
        }
        let names = self.names.as_ref().map(|ns| set.iter().map(|&a| ns[a].clone()).collect());
        Ok(Groupoid { n: set.len(), table, names })
    }

    /// Isomorphic copy in which element `a` becomes `map[a]`.
    pub fn relabel(&self, map: &[Elem]) -> Groupoid {
        let mut inv = vec![0; self.n];
        for (a, &m) in map.iter().enumerate() {
            inv[m] = a;
        }
        let mut g = Groupoid::from_fn(self.n, |a, b| map[self.op(inv[a], inv[b])]);
        g.names = self.names.as_ref().map(|ns| inv.iter().map(|&a| ns[a].clone()).collect());
        g
    }

    pub fn right_orbit(&self, a: Elem) -> Vec<Elem> {
        self.orbit(a, |x, c| self.op(x, c))
    }

    pub fn left_orbit(&self, a: Elem) -> Vec<Elem> {
        self.orbit(a, |x, c| self.op(c, x))
    }

    fn orbit(&self, a: Elem, step: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
        let mut member = vec![false; self.n];
        member[a] = true;
        let mut stack = vec![a];
        let mut out = vec![a];
        while let Some(x) = stack.pop() {
            for c in 0..self.n {
                let y = step(x, c);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn two_element_type(&self, a: Elem, b: Elem) -> PairType {
        let (ab, ba) = (self.op(a, b), self.op(b, a));
        let inside = |c: Elem| c == a || c == b;
        if !inside(ab) || !inside(ba) {
            return PairType::NotClosed;
        }
        if self.op(a, a) != a || self.op(b, b) != b {
            return PairType::Other;
        }
        match (ab == a, ba == a) {
            (true, false) => PairType::ProjectionFirst,
            (false, true) => PairType::ProjectionSecond,
            (true, true) => PairType::SemilatticeToA,
            (false, false) => PairType::SemilatticeToB,
        }
    }

    /// Whether some member of HS(G) is a two-element projection algebra.
    ///
    /// Such a quotient restricts to a two-generated subuniverse `Sg{a,b}`, where
    /// a first-projection quotient separating `a` from `b` exists exactly when the
    /// right orbits of `a` and `b` inside `Sg{a,b}` are disjoint (and dually for
    /// left orbits and second projection).
    pub fn has_two_element_projection_subquotient(&self) -> bool {
        for a in 0..self.n {
            for b in a + 1..self.n {
                let sub = self.subuniverse_generated(&[a, b]);
                let s = self.restrict(&sub).expect("generated set is closed");
                let ia = sub.binary_search(&a).unwrap();
                let ib = sub.binary_search(&b).unwrap();
                if disjoint(&s.right_orbit(ia), &s.right_orbit(ib))
                    || disjoint(&s.left_orbit(ia), &s.left_orbit(ib))
                {
                    return true;
                }
            }
        }
        false
    }

    /// Same question by explicit enumeration of subuniverses and congruences.
    pub fn has_two_element_projection_subquotient_brute(&self) -> Result<bool> {
        if self.n > HS_CAP {
            return Err(Error::SizeCap { what: "HS enumeration", limit: HS_CAP });
        }
        for sub in self.subuniverses()? {
            if sub.len() < 2 {
                continue;
            }
            let s = self.restrict(&sub)?;
            for theta in s.congruences()? {
                if theta.blocks().len() == 2 && s.quotient(&theta)?.is_projection_algebra() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// All nonempty subuniverses, sorted.
    pub fn subuniverses(&self) -> Result<Vec<Vec<Elem>>> {
        if self.n > SUBUNIVERSE_CAP {
            return Err(Error::SizeCap { what: "subuniverse enumeration", limit: SUBUNIVERSE_CAP });
        }
        let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for a in 0..self.n {
            for b in a..self.n {
                found.insert(self.subuniverse_generated(&[a, b]));
            }
        }
        let mut frontier: Vec<Vec<Elem>> = found.iter().cloned().collect();
        let base = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for t in &base {
                    let mut u = s.clone();
                    u.extend_from_slice(t);
                    let j = self.subuniverse_generated(&u);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Ok(found.into_iter().collect())
    }

    pub fn is_congruence(&self, p: &Partition) -> bool {
        if p.size() != self.n {
            return false;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if p.block_of(a) != p.block_of(b) {
                    continue;
                }
                for c in 0..self.n {
                    if p.block_of(self.op(a, c)) != p.block_of(self.op(b, c))
                        || p.block_of(self.op(c, a)) != p.block_of(self.op(c, b))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn quotient(&self, p: &Partition) -> Result<Groupoid> {
        if !self.is_congruence(p) {
            return Err(Error::NotCongruence);
        }
        let blocks = p.blocks();
        let g = Groupoid::from_fn(blocks.len(), |i, j| p.block_of(self.op(blocks[i][0], blocks[j][0])));
        Ok(g)
    }

    pub fn congruence_generated(&self, pairs: &[(Elem, Elem)]) -> Partition {
        let mut uf = UnionFind::new(self.n);
        let mut work: Vec<(Elem, Elem)> = pairs.to_vec();
        while let Some((a, b)) = work.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for c in 0..self.n {
                work.push((self.op(a, c), self.op(b, c)));
                work.push((self.op(c, a), self.op(c, b)));
            }
        }
        Partition::from_labels(&uf.labels())
    }

    /// All congruences, closing principal congruences under joins.
    pub fn congruences(&self) -> Result<Vec<Partition>> {
        if self.n > CONGRUENCE_CAP {
            return Err(Error::SizeCap { what: "congruence enumeration", limit: CONGRUENCE_CAP });
        }
        let mut found: BTreeSet<Partition> = BTreeSet::new();
        found.insert(Partition::discrete(self.n));
        let mut principal = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                let p = self.congruence_generated(&[(a, b)]);
                if found.insert(p.clone()) {
                    principal.push(p);
                }
            }
        }
        let mut frontier = principal.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for q in &principal {
                    let mut pairs = p.pairs();
                    pairs.extend(q.pairs());
                    let j = self.congruence_generated(&pairs);
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Ok(found.into_iter().collect())
    }

    /// Elements of G × H are numbered `a * |H| + b`.
    pub fn product(&self, other: &Groupoid) -> Groupoid {
        let m = other.n;
        let mut g = Groupoid::from_fn(self.n * m, |p, q| {
            self.op(p / m, q / m) * m + other.op(p % m, q % m)
        });
        if self.names.is_some() || other.names.is_some() {
            let mut names = Vec::with_capacity(self.n * m);
            for a in 0..self.n {
                for b in 0..m {
                    names.push(format!("({},{})", self.name(a), other.name(b)));
                }
            }
            g.names = Some(names);
        }
        g
    }
}

fn disjoint(a: &[Elem], b: &[Elem]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_err())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairType {
    NotClosed,
    ProjectionFirst,
    ProjectionSecond,
    SemilatticeToA,
    SemilatticeToB,
    Other,
}

/// A partition of `{0..n}` with blocks ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    blocks: Vec<Vec<Elem>>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = alloc::collections::BTreeMap::new();
        let mut blocks: Vec<Vec<Elem>> = Vec::new();
        let mut out = Vec::with_capacity(labels.len());
        for (a, l) in labels.iter().enumerate() {
            let next = renumber.len();
            let id = *renumber.entry(l).or_insert(next);
            if id == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[id].push(a);
            out.push(id);
        }
        Partition { labels: out, blocks }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".to_string()));
            }
            for &a in block {
                if a >= n {
                    return Err(Error::BadPartition(format!("element {a} out of range")));
                }
                if labels[a] != usize::MAX {
                    return Err(Error::BadPartition(format!("element {a} in two blocks")));
                }
                labels[a] = i;
            }
        }
        if let Some(a) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::BadPartition(format!("element {a} not covered")));
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn block_of(&self, a: Elem) -> usize {
        self.labels[a]
    }

    /// Pairs linking each element to the first element of its block.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        self.blocks
            .iter()
            .flat_map(|b| b[1..].iter().map(move |&x| (b[0], x)))
            .collect()
    }
}

/// Union-find whose roots are always the least element of their class.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        let mut root = a;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[a] != root {
            let next = self.parent[a];
            self.parent[a] = root;
            a = next;
        }
        root
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|a| self.find(a)).collect()
    }
}

/// The subalgebra of `G × H` generated by a list of pairs.
///
/// Generators come first, then elements in discovery order; `parents[i]` records
/// the product that first produced element `i`.
#[derive(Clone, Debug)]
pub struct SubProduct {
    pub groupoid: Groupoid,
    pub pairs: Vec<(Elem, Elem)>,
    pub parents: Vec<Option<(usize, usize)>>,
}

impl SubProduct {
    pub fn index_of(&self, pair: (Elem, Elem)) -> Option<usize> {
        self.pairs.iter().position(|&p| p == pair)
    }

    pub fn contains(&self, pair: (Elem, Elem)) -> bool {
        self.index_of(pair).is_some()
    }
}

pub fn sub_product(g: &Groupoid, h: &Groupoid, gens: &[(Elem, Elem)]) -> SubProduct {
    let m = h.size();
    let mut index = vec![usize::MAX; g.size() * m];
    let mut pairs: Vec<(Elem, Elem)> = Vec::new();
    let mut parents = Vec::new();
    for &(a, b) in gens {
        if index[a * m + b] == usize::MAX {
            index[a * m + b] = pairs.len();
            pairs.push((a, b));
            parents.push(None);
        }
    }
    let mut products: Vec<(usize, usize, usize)> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        for j in 0..=i {
            for (l, r) in [(i, j), (j, i)] {
                let (p, q) = (pairs[l], pairs[r]);
                let c = (g.op(p.0, q.0), h.op(p.1, q.1));
                let key = c.0 * m + c.1;
                if index[key] == usize::MAX {
                    index[key] = pairs.len();
                    pairs.push(c);
                    parents.push(Some((l, r)));
                }
                products.push((l, r, index[key]));
                if i == j {
                    break;
                }
            }
        }
        i += 1;
    }
    let k = pairs.len();
    let mut table = vec![0; k * k];
    for (l, r, c) in products {
        table[l * k + r] = c;
    }
    let mut groupoid = Groupoid::from_flat(k, table).expect("closure is closed");
    if g.names.is_some() || h.names.is_some() {
        let names = pairs.iter().map(|&(a, b)| format!("({},{})", g.name(a), h.name(b))).collect();
        groupoid = groupoid.with_names(names).expect("pairs are distinct");
    }
    SubProduct { groupoid, pairs, parents }
}

/// `Sg_{G²}{(a,b),(b,a)}`, with `(a,b)` at index 0 and `(b,a)` at index 1.
pub fn pair_algebra(g: &Groupoid, a: Elem, b: Elem) -> SubProduct {
    sub_product(g, g, &[(a, b), (b, a)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(Groupoid::new(vec![]), Err(Error::EmptyTable));
        assert!(matches!(Groupoid::new(vec![vec![0, 1], vec![1]]), Err(Error::NotSquare { row: 1, .. })));
        assert!(matches!(Groupoid::new(vec![vec![0, 2], vec![1, 1]]), Err(Error::OutOfRange { .. })));
        let g = Groupoid::new(vec![vec![0]]).unwrap();
        assert_eq!(g.size(), 1);
        assert!(g.clone().with_names(vec!["a".into(), "b".into()]).is_err());
        let g2 = Groupoid::new(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(g2.with_names(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn idempotence() {
        assert!(Groupoid::from_fn(2, |a, b| a.max(b)).is_idempotent());
        assert!(!Groupoid::from_fn(2, |_, _| 0).is_idempotent());
        assert!(zoo::free_rect_band2().is_idempotent());
    }

    #[test]
    fn generated_subuniverses() {
        let fd = zoo::fd_free();
        assert_eq!(fd.subuniverse_generated(&[0]), vec![0]);
        assert_eq!(fd.subuniverse_generated(&[0, 1]), vec![0, 1, 2, 3]);
        let h1 = zoo::hoop(1, false);
        // a, b, c0, d0
        assert_eq!(h1.subuniverse_generated(&[2, 3]), vec![2, 3]);
    }

    #[test]
    fn products_and_quotients() {
        let one = Groupoid::new(vec![vec![0]]).unwrap();
        assert_eq!(one.product(&one).size(), 1);
        let a1 = zoo::a_n_dispersive(1);
        let q = a1.quotient(&Partition::discrete(4)).unwrap();
        assert_eq!(q, a1.clone().without_names());
        let c2 = zoo::free_2cyclic2();
        let p = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(c2.is_congruence(&p));
        let quo = c2.quotient(&p).unwrap();
        assert_eq!(quo.size(), 2);
        assert!(quo.is_projection_algebra());
        let bad = Partition::from_blocks(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        assert_eq!(c2.quotient(&bad), Err(Error::NotCongruence));
    }

    #[test]
    fn congruence_enumeration_contains_generated() {
        let c2 = zoo::free_2cyclic2();
        let all = c2.congruences().unwrap();
        for p in &all {
            assert!(c2.is_congruence(p));
        }
        assert!(all.contains(&c2.congruence_generated(&[(0, 2)])));
        assert!(all.contains(&Partition::discrete(4)));
        assert!(all.iter().any(|p| p.blocks().len() == 1));
    }

    #[test]
    fn pair_types() {
        let meld = zoo::free_meld2();
        assert_eq!(meld.two_element_type(0, 2), PairType::ProjectionFirst);
        assert_eq!(meld.two_element_type(0, 1), PairType::NotClosed);
        let max = Groupoid::from_fn(2, |a, b| a.max(b));
        assert_eq!(max.two_element_type(0, 1), PairType::SemilatticeToB);
    }

    #[test]
    fn taylor_gate() {
        let max = Groupoid::from_fn(2, |a, b| a.max(b));
        assert!(!max.has_two_element_projection_subquotient());
        assert!(zoo::fd_free().has_two_element_projection_subquotient());
        assert!(zoo::free_rect_band2().has_two_element_projection_subquotient());
        for g in [max, zoo::fd_free(), zoo::free_rect_band2(), zoo::hoop(2, false)] {
            assert_eq!(
                g.has_two_element_projection_subquotient(),
                g.has_two_element_projection_subquotient_brute().unwrap()
            );
        }
        assert!(zoo::free_p_cyclic(2, 3).unwrap().has_two_element_projection_subquotient_brute().is_err());
    }

    #[test]
    fn pair_algebra_layout() {
        let fd = zoo::fd_free();
        let p = pair_algebra(&fd, 0, 1);
        assert_eq!(p.pairs[0], (0, 1));
        assert_eq!(p.pairs[1], (1, 0));
        assert!(p.groupoid.generates(&[0, 1]));
        for (i, &(a, b)) in p.pairs.iter().enumerate() {
            for (j, &(c, d)) in p.pairs.iter().enumerate() {
                assert_eq!(p.pairs[p.groupoid.op(i, j)], (fd.op(a, c), fd.op(b, d)));
            }
        }
    }
}
