//! The binary part of the term clone.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::groupoid::{Elem, Groupoid};
use crate::term::Term;
use crate::{Error, Result};

pub const DEFAULT_FREE_CAP: usize = 100_000;

/// A binary operation on `{0..n}` given by its full table, with an optional term witness.
///
/// Equality and ordering look at the values only.
#[derive(Clone, Debug)]
pub struct TermTable {
    n: usize,
    values: Vec<Elem>,
    witness: Option<Term>,
}

impl PartialEq for TermTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.values == other.values
    }
}

impl Eq for TermTable {}

impl PartialOrd for TermTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TermTable {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.values).cmp(&(other.n, &other.values))
    }
}

impl TermTable {
    pub fn new(n: usize, values: Vec<Elem>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::SizeMismatch { left: values.len(), right: n * n });
        }
        if let Some(i) = values.iter().position(|&v| v >= n) {
            return Err(Error::OutOfRange { row: i / n, col: i % n, value: values[i] });
        }
        Ok(TermTable { n, values, witness: None })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                values.push(f(a, b));
            }
        }
        TermTable { n, values, witness: None }
    }

    pub fn first(n: usize) -> Self {
        TermTable::from_fn(n, |a, _| a).with_witness(Term::x())
    }

    pub fn second(n: usize) -> Self {
        TermTable::from_fn(n, |_, b| b).with_witness(Term::y())
    }

    /// The basic operation of `g`, witnessed by `x*y`.
    pub fn basic(g: &Groupoid) -> Self {
        TermTable { n: g.size(), values: g.table().to_vec(), witness: Some(Term::app(&Term::x(), &Term::y())) }
    }

    /// Table of a binary term evaluated on `g`.
    pub fn from_term(g: &Groupoid, t: &Term) -> Result<Self> {
        let values = t.eval_table(g, 2)?;
        Ok(TermTable { n: g.size(), values, witness: Some(t.clone()) })
    }

    pub fn with_witness(mut self, t: Term) -> Self {
        self.witness = Some(t);
        self
    }

    pub fn without_witness(mut self) -> Self {
        self.witness = None;
        self
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn witness(&self) -> Option<&Term> {
        self.witness.as_ref()
    }

    #[inline]
    pub fn at(&self, a: Elem, b: Elem) -> Elem {
        self.values[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.values.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn as_groupoid(&self) -> Groupoid {
        Groupoid::from_flat(self.n, self.values.clone()).expect("term tables are in range")
    }

    pub fn is_first_projection(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.at(a, b) == a))
    }

    pub fn is_second_projection(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.at(a, b) == b))
    }

    pub fn is_projection(&self) -> bool {
        self.is_first_projection() || self.is_second_projection()
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.n).all(|a| self.at(a, a) == a)
    }

    /// `(x, y) ↦ t(y, x)`.
    pub fn swapped(&self) -> TermTable {
        let witness = self.witness.as_ref().map(|w| w.substitute(&[Term::y(), Term::x()]));
        TermTable { n: self.n, values: TermTable::from_fn(self.n, |a, b| self.at(b, a)).values, witness }
    }

    /// `(x, y) ↦ self(g(x,y), h(x,y))`.
    pub fn compose(&self, g: &TermTable, h: &TermTable) -> Result<TermTable> {
        check_sizes(self, g)?;
        check_sizes(self, h)?;
        let values = g.values.iter().zip(&h.values).map(|(&p, &q)| self.at(p, q)).collect();
        let witness = match (&self.witness, &g.witness, &h.witness) {
            (Some(f), Some(gw), Some(hw)) => Some(f.substitute(&[gw.clone(), hw.clone()])),
            _ => None,
        };
        Ok(TermTable { n: self.n, values, witness })
    }
}

fn check_sizes(f: &TermTable, g: &TermTable) -> Result<()> {
    if f.n != g.n {
        return Err(Error::SizeMismatch { left: f.n, right: g.n });
    }
    Ok(())
}

/// `(f ∗₁ g)(x,y) = f(g(x,y), y)`.
pub fn star1(f: &TermTable, g: &TermTable) -> Result<TermTable> {
    f.compose(g, &TermTable::second(f.n))
}

/// `(f ∗₂ g)(x,y) = f(x, g(x,y))`.
pub fn star2(f: &TermTable, g: &TermTable) -> Result<TermTable> {
    f.compose(&TermTable::first(f.n), g)
}

/// `(f ∗_c g)(x,y) = f(g(x,y), g(y,x))`.
pub fn starc(f: &TermTable, g: &TermTable) -> Result<TermTable> {
    f.compose(g, &g.swapped())
}

/// The idempotent in the cyclic semigroup generated by `f` under `star`.
fn stable_power(f: &TermTable, star: fn(&TermTable, &TermTable) -> Result<TermTable>) -> TermTable {
    let mut seen: BTreeMap<Vec<Elem>, usize> = BTreeMap::new();
    let mut powers: Vec<TermTable> = Vec::new();
    let mut p = f.clone();
    loop {
        if let Some(&first) = seen.get(&p.values) {
            let start = first + 1;
            let period = powers.len() + 1 - start;
            let m = start.div_ceil(period) * period;
            return powers[m - 1].clone();
        }
        seen.insert(p.values.clone(), powers.len());
        let next = star(&p, f).expect("sizes match");
        powers.push(p);
        p = next;
    }
}

pub fn iterate_inf1(f: &TermTable) -> TermTable {
    stable_power(f, star1)
}

pub fn iterate_inf2(f: &TermTable) -> TermTable {
    stable_power(f, star2)
}

pub fn iterate_infc(f: &TermTable) -> TermTable {
    stable_power(f, starc)
}

/// The idempotent power `u^∞` of a self-map.
pub fn unary_iterate(u: &[Elem]) -> Vec<Elem> {
    let mut seen: BTreeMap<Vec<Elem>, usize> = BTreeMap::new();
    let mut powers: Vec<Vec<Elem>> = Vec::new();
    let mut p = u.to_vec();
    loop {
        if let Some(&first) = seen.get(&p) {
            let start = first + 1;
            let period = powers.len() + 1 - start;
            let m = start.div_ceil(period) * period;
            return powers[m - 1].clone();
        }
        seen.insert(p.clone(), powers.len());
        let next = p.iter().map(|&a| u[a]).collect();
        powers.push(p);
        p = next;
    }
}

/// `a · O(a) = {a}` for every `a`.
pub fn check_d2(g: &Groupoid) -> bool {
    (0..g.size()).all(|a| g.right_orbit(a).iter().all(|&c| g.op(a, c) == a))
}

/// The free algebra on two generators of `Var(G)`, realized as term tables on `G`.
///
/// Elements are ordered by construction depth, then by their values.
#[derive(Clone, Debug)]
pub struct FreeAlgebra2 {
    base: usize,
    elements: Vec<TermTable>,
    depth: Vec<usize>,
    parents: Vec<Option<(usize, usize)>>,
    index: BTreeMap<Vec<Elem>, usize>,
    product: Vec<usize>,
}

impl FreeAlgebra2 {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn elements(&self) -> &[TermTable] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TermTable {
        &self.elements[i]
    }

    pub fn depth(&self, i: usize) -> usize {
        self.depth[i]
    }

    pub fn parents(&self, i: usize) -> Option<(usize, usize)> {
        self.parents[i]
    }

    pub fn generator_x(&self) -> usize {
        0
    }

    pub fn generator_y(&self) -> usize {
        self.index[TermTable::second(self.base).values()]
    }

    pub fn index_of(&self, t: &TermTable) -> Option<usize> {
        if t.n != self.base {
            return None;
        }
        self.index.get(&t.values).copied()
    }

    pub fn contains(&self, t: &TermTable) -> bool {
        self.index_of(t).is_some()
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.product[i * self.len() + j]
    }

    /// The induced groupoid, named by witness terms.
    pub fn groupoid(&self) -> Groupoid {
        let g = Groupoid::from_flat(self.len(), self.product.clone()).expect("closure is closed");
        let names = self.elements.iter().map(|e| e.witness.as_ref().expect("witnessed").to_string()).collect();
        g.with_names(names).expect("witnesses are distinct terms")
    }
}

pub fn free_algebra_two(g: &Groupoid) -> Result<FreeAlgebra2> {
    free_algebra_two_capped(g, DEFAULT_FREE_CAP)
}

pub fn free_algebra_two_capped(g: &Groupoid, cap: usize) -> Result<FreeAlgebra2> {
    let n = g.size();
    let mut elements: Vec<TermTable> = Vec::new();
    let mut depth = Vec::new();
    let mut parents = Vec::new();
    let mut index: BTreeMap<Vec<Elem>, usize> = BTreeMap::new();
    for t in [TermTable::first(n), TermTable::second(n)] {
        if !index.contains_key(&t.values) {
            index.insert(t.values.clone(), elements.len());
            elements.push(t);
            depth.push(0);
            parents.push(None);
        }
    }
    let apply = |p: &TermTable, q: &TermTable| -> Vec<Elem> {
        p.values.iter().zip(&q.values).map(|(&a, &b)| g.op(a, b)).collect()
    };
    let mut lo = 0;
    let mut level = 0;
    while lo < elements.len() {
        let hi = elements.len();
        let mut fresh: BTreeMap<Vec<Elem>, (usize, usize)> = BTreeMap::new();
        for i in 0..hi {
            for j in 0..hi {
                if i < lo && j < lo {
                    continue;
                }
                let v = apply(&elements[i], &elements[j]);
                if !index.contains_key(&v) {
                    fresh.entry(v).or_insert((i, j));
                }
            }
            if hi + fresh.len() > cap {
                return Err(Error::SizeCap { what: "free algebra on two generators", limit: cap });
            }
        }
        level += 1;
        for (v, (i, j)) in fresh {
            let w = Term::app(elements[i].witness.as_ref().unwrap(), elements[j].witness.as_ref().unwrap());
            index.insert(v.clone(), elements.len());
            elements.push(TermTable { n, values: v, witness: Some(w) });
            depth.push(level);
            parents.push(Some((i, j)));
        }
        lo = hi;
    }
    let k = elements.len();
    let mut product = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            product[i * k + j] = index[&apply(&elements[i], &elements[j])];
        }
    }
    Ok(FreeAlgebra2 { base: n, elements, depth, parents, index, product })
}

pub fn term_witness(fa: &FreeAlgebra2, t: &TermTable) -> Result<Term> {
    let i = fa
        .index_of(t)
        .ok_or_else(|| Error::Precondition("term table is not in the free algebra".to_string()))?;
    Ok(fa.elements[i].witness.clone().expect("free algebra elements carry witnesses"))
}

/// `Clo₂^{π₁}(f)`: least set holding `π₁` and `f(g, h)` for `g` in the set and `h ∈ Clo₂(f)`.
pub fn clo2_pi1(f: &TermTable) -> Result<Vec<TermTable>> {
    clo2_pi1_capped(f, DEFAULT_FREE_CAP)
}

pub fn clo2_pi1_capped(f: &TermTable, cap: usize) -> Result<Vec<TermTable>> {
    let base = f.as_groupoid();
    let fa = free_algebra_two_capped(&base, cap)?;
    let mut out: Vec<TermTable> = fa
        .groupoid()
        .right_orbit(fa.generator_x())
        .into_iter()
        .map(|i| fa.elements[i].clone())
        .collect();
    if let Some(fw) = &f.witness {
        for t in &mut out {
            t.witness = t.witness.as_ref().map(|w| w.reroot(fw));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn names(fa: &FreeAlgebra2) -> Vec<alloc::string::String> {
        fa.elements().iter().map(|e| e.witness().unwrap().to_string()).collect()
    }

    #[test]
    fn free_algebras_of_small_tables() {
        let fa = free_algebra_two(&zoo::fd_free()).unwrap();
        assert_eq!(names(&fa), ["x", "y", "(x*y)", "(y*x)"]);
        let pi = Groupoid::from_fn(2, |a, _| a);
        assert_eq!(free_algebra_two(&pi).unwrap().len(), 2);
        let c = zoo::free_p_cyclic(2, 2).unwrap();
        assert_eq!(free_algebra_two(&c).unwrap().len(), 4);
        assert_eq!(free_algebra_two(&zoo::free_meld2()).unwrap().len(), 4);
    }

    #[test]
    fn free_algebra_cap() {
        let g = zoo::hoop(3, false);
        assert!(matches!(free_algebra_two_capped(&g, 3), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn witnesses_reproduce_values() {
        for g in [zoo::hoop(2, false), zoo::free_partial_semi2(), zoo::a_n_dispersive(2)] {
            let fa = free_algebra_two(&g).unwrap();
            for e in fa.elements() {
                assert_eq!(&TermTable::from_term(&g, e.witness().unwrap()).unwrap(), e);
            }
            let fg = fa.groupoid();
            for i in 0..fa.len() {
                for j in 0..fa.len() {
                    let direct: Vec<Elem> = fa.element(i).values().iter().zip(fa.element(j).values()).map(|(&a, &b)| g.op(a, b)).collect();
                    assert_eq!(fa.element(fg.op(i, j)).values(), &direct[..]);
                }
            }
        }
    }

    #[test]
    fn clo2_pi1_examples() {
        let fd = zoo::fd_free();
        let got: Vec<_> = clo2_pi1(&TermTable::basic(&fd)).unwrap();
        let fa = free_algebra_two(&fd).unwrap();
        let idx: Vec<usize> = got.iter().map(|t| fa.index_of(t).unwrap()).collect();
        assert_eq!(idx, vec![0, 2]);
        let pi = Groupoid::from_fn(3, |a, _| a);
        assert_eq!(clo2_pi1(&TermTable::basic(&pi)).unwrap(), vec![TermTable::first(3)]);
        let meld = zoo::free_meld2();
        let got = clo2_pi1(&TermTable::basic(&meld)).unwrap();
        assert_eq!(got, vec![TermTable::first(4), TermTable::basic(&meld)]);
        for t in &got {
            assert_eq!(&TermTable::from_term(&meld, t.witness().unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn star_examples() {
        let fd = zoo::fd_free();
        let f = TermTable::basic(&fd);
        let p1 = TermTable::first(4);
        assert_eq!(star1(&p1, &f).unwrap(), f);
        assert_eq!(star1(&f, &p1).unwrap(), f);
        assert_eq!(starc(&f, &f).unwrap(), f);
        let max = Groupoid::from_fn(2, |a, b| a.max(b));
        let m = TermTable::basic(&max);
        assert_eq!(star2(&m, &m).unwrap(), m);
        assert!(star1(&m, &f).is_err());
    }

    #[test]
    fn iteration_examples() {
        let fd = zoo::fd_free();
        let f = TermTable::basic(&fd);
        assert_eq!(iterate_infc(&f), f);
        let meld = zoo::free_meld2();
        let t = iterate_inf2(&TermTable::basic(&meld));
        for a in 0..4 {
            for c in meld.right_orbit(a) {
                assert_eq!(t.at(a, c), a);
            }
        }
        let c2 = zoo::free_2cyclic2();
        assert!(iterate_inf1(&TermTable::basic(&c2)).is_first_projection());
    }

    #[test]
    fn unary_examples() {
        assert_eq!(unary_iterate(&[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(unary_iterate(&[1, 1, 1]), vec![1, 1, 1]);
        assert_eq!(unary_iterate(&[1, 2, 0]), vec![0, 1, 2]);
        assert_eq!(unary_iterate(&[1, 2, 3, 2]), vec![2, 3, 2, 3]);
    }

    #[test]
    fn d2_examples() {
        assert!(check_d2(&zoo::fd_free()));
        assert!(!check_d2(&Groupoid::from_fn(2, |a, b| a.max(b))));
        assert!(check_d2(&zoo::hoop(2, false)));
    }

    #[test]
    fn term_witness_lookup() {
        let fd = zoo::fd_free();
        let fa = free_algebra_two(&fd).unwrap();
        assert_eq!(term_witness(&fa, &TermTable::first(4)).unwrap().to_string(), "x");
        assert_eq!(term_witness(&fa, &TermTable::basic(&fd)).unwrap().to_string(), "(x*y)");
        let odd = TermTable::from_fn(4, |_, _| 2);
        assert!(term_witness(&fa, &odd).is_err());
    }
}
