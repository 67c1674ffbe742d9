//! Word problem for finitely presented melds, with countermodels.
//!
//! The closure works on the set `W` of subterms of the relations and the query,
//! keeping an equivalence `~` (union-find, least representative) and a graph
//! on representatives until both stop growing.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::is_meld;
use crate::groupoid::{Elem, Groupoid, UnionFind};
use crate::term::{Node, Term};
use crate::{Error, Result};

/// Largest depth accepted by `free_meld3_chain`.
pub const FREE_MELD3_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeldPresentation {
    generators: Vec<String>,
    relations: Vec<(Term, Term)>,
}

impl MeldPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(Term, Term)>) -> Result<Self> {
        let mut sorted = generators.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != generators.len() {
            return Err(Error::BadNames("duplicate generator".to_string()));
        }
        for (u, v) in &relations {
            if u.var_count().max(v.var_count()) > generators.len() {
                return Err(Error::UnknownVariable(format!("relation {u} = {v}")));
            }
        }
        Ok(MeldPresentation { generators, relations })
    }

    /// Line 1 lists generators; each further line is `term = term`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let generators: Vec<String> = lines
            .next()
            .ok_or(Error::Parse { pos: 0, msg: "missing generator line".to_string() })?
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.to_string())
            .collect();
        let mut relations = Vec::new();
        for line in lines {
            relations.push(parse_equation(line, &generators)?);
        }
        MeldPresentation::new(generators, relations)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Term, Term)] {
        &self.relations
    }

    pub fn parse_term(&self, text: &str) -> Result<Term> {
        Term::parse_with(text, &self.generators)
    }

    /// Parses `term = term` over the generators.
    pub fn parse_equation(&self, text: &str) -> Result<(Term, Term)> {
        parse_equation(text, &self.generators)
    }
}

fn parse_equation(line: &str, generators: &[String]) -> Result<(Term, Term)> {
    let (l, r) = line.split_once('=').ok_or(Error::Parse { pos: 0, msg: format!("expected `=` in {line:?}") })?;
    Ok((Term::parse_with(l, generators)?, Term::parse_with(r, generators)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum WNode {
    Var(usize),
    App(usize, usize),
}

struct Closure {
    nodes: Vec<WNode>,
    index: BTreeMap<WNode, usize>,
    uf: UnionFind,
    adj: Vec<Vec<bool>>,
}

impl Closure {
    fn build(pres: &MeldPresentation, extra: &[&Term]) -> (Closure, Vec<usize>) {
        let mut nodes = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..pres.generators.len() {
            index.insert(WNode::Var(i), nodes.len());
            nodes.push(WNode::Var(i));
        }
        let mut memo = BTreeMap::new();
        let mut insert = |t: &Term| intern(t, &mut nodes, &mut index, &mut memo);
        let mut rel_ids = Vec::new();
        for (u, v) in &pres.relations {
            rel_ids.push(insert(u));
            rel_ids.push(insert(v));
        }
        for t in extra {
            rel_ids.push(insert(t));
        }
        let n = nodes.len();
        let mut c = Closure { nodes, index, uf: UnionFind::new(n), adj: vec![vec![false; n]; n] };
        for pair in rel_ids[..2 * pres.relations.len()].chunks(2) {
            c.uf.union(pair[0], pair[1]);
        }
        c.saturate();
        (c, rel_ids)
    }

    fn add_edge(&mut self, a: usize, b: usize) -> bool {
        let mut changed = false;
        for (p, q) in [(a, b), (b, a)] {
            if !self.adj[p][q] {
                self.adj[p][q] = true;
                changed = true;
            }
        }
        changed
    }

    fn saturate(&mut self) {
        let n = self.nodes.len();
        let products: Vec<(usize, usize, usize)> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(p, w)| match *w {
                WNode::App(a, b) => Some((p, a, b)),
                WNode::Var(_) => None,
            })
            .collect();
        loop {
            let mut changed = false;
            let rep: Vec<usize> = (0..n).map(|a| self.uf.find(a)).collect();
            for a in 0..n {
                changed |= self.add_edge(rep[a], rep[a]);
                for b in 0..n {
                    if self.adj[a][b] {
                        changed |= self.add_edge(rep[a], rep[b]);
                    }
                }
            }
            for &(p, a, b) in &products {
                let (rp, ra, rb) = (rep[p], rep[a], rep[b]);
                changed |= self.add_edge(rp, ra);
                changed |= self.add_edge(rp, rb);
                for c in 0..n {
                    if rep[c] == c && self.adj[ra][c] {
                        changed |= self.add_edge(rp, c);
                    }
                }
            }
            for &(p, a, b) in &products {
                if self.adj[rep[a]][rep[b]] {
                    changed |= self.uf.union(a, p);
                }
            }
            let mut sig: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &(p, a, b) in &products {
                match sig.get(&(rep[a], rep[b])) {
                    Some(&q) => changed |= self.uf.union(p, q),
                    None => {
                        sig.insert((rep[a], rep[b]), p);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn equivalent(&mut self, a: usize, b: usize) -> bool {
        self.uf.find(a) == self.uf.find(b)
    }
}

fn intern(
    t: &Term,
    nodes: &mut Vec<WNode>,
    index: &mut BTreeMap<WNode, usize>,
    memo: &mut BTreeMap<*const Node, usize>,
) -> usize {
    if let Some(&i) = memo.get(&t.key()) {
        return i;
    }
    let w = match t.node() {
        Node::Var(i) => WNode::Var(*i),
        Node::App(l, r) => {
            let a = intern(l, nodes, index, memo);
            let b = intern(r, nodes, index, memo);
            WNode::App(a, b)
        }
    };
    let i = *index.entry(w).or_insert_with(|| {
        nodes.push(w);
        nodes.len() - 1
    });
    memo.insert(t.key(), i);
    i
}

fn check_query(pres: &MeldPresentation, r: &Term, s: &Term) -> Result<()> {
    if r.var_count().max(s.var_count()) > pres.generators.len() {
        return Err(Error::UnknownVariable("query uses an undeclared generator".to_string()));
    }
    Ok(())
}

/// Whether the relations and the meld identities entail `r = s`.
pub fn solve(pres: &MeldPresentation, r: &Term, s: &Term) -> Result<bool> {
    check_query(pres, r, s)?;
    let (mut c, ids) = Closure::build(pres, &[r, s]);
    let k = ids.len();
    Ok(c.equivalent(ids[k - 2], ids[k - 1]))
}

/// A finite meld separating `r` from `s`.
#[derive(Clone, Debug)]
pub struct MeldWitness {
    pub groupoid: Groupoid,
    /// Image of each generator.
    pub interpretation: Vec<Elem>,
    /// The absorbing element added to the classes of `W`.
    pub t: Elem,
}

impl MeldWitness {
    pub fn eval(&self, term: &Term) -> Result<Elem> {
        term.eval(&self.groupoid, &self.interpretation)
    }

    /// Meld, satisfies every relation, and separates `r` from `s`.
    pub fn verify(&self, pres: &MeldPresentation, r: &Term, s: &Term) -> bool {
        let holds = |u: &Term, v: &Term| matches!((self.eval(u), self.eval(v)), (Ok(a), Ok(b)) if a == b);
        is_meld(&self.groupoid) && pres.relations.iter().all(|(u, v)| holds(u, v)) && !holds(r, s)
    }
}

pub fn witness_meld(pres: &MeldPresentation, r: &Term, s: &Term) -> Result<MeldWitness> {
    check_query(pres, r, s)?;
    let (mut c, ids) = Closure::build(pres, &[r, s]);
    let k = ids.len();
    if c.equivalent(ids[k - 2], ids[k - 1]) {
        return Err(Error::EquationHolds);
    }
    let n = c.nodes.len();
    let rep: Vec<usize> = (0..n).map(|a| c.uf.find(a)).collect();
    let reps: Vec<usize> = (0..n).filter(|&a| rep[a] == a).collect();
    let class = |a: usize| reps.binary_search(&rep[a]).unwrap();
    let t = reps.len();
    let size = t + 1;
    let mut table = vec![usize::MAX; size * size];
    for (p, w) in c.nodes.iter().enumerate() {
        if let WNode::App(a, b) = *w {
            table[class(a) * size + class(b)] = class(p);
        }
    }
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            let cell = &mut table[i * size + j];
            if *cell == usize::MAX {
                *cell = if c.adj[x][y] { i } else { t };
            }
        }
        table[i * size + t] = i;
        table[t * size + i] = t;
    }
    table[t * size + t] = t;
    let mut names: Vec<String> = reps.iter().map(|&a| display_node(&c.nodes, a, &pres.generators)).collect();
    let mut top = "t".to_string();
    while names.contains(&top) {
        top.push('\'');
    }
    names.push(top);
    let groupoid = Groupoid::from_flat(size, table)?.with_names(names)?;
    let interpretation = (0..pres.generators.len()).map(|i| class(c.index[&WNode::Var(i)])).collect();
    Ok(MeldWitness { groupoid, interpretation, t })
}

fn display_node(nodes: &[WNode], a: usize, names: &[String]) -> String {
    match nodes[a] {
        WNode::Var(i) => names[i].clone(),
        WNode::App(l, r) => format!("({}*{})", display_node(nodes, l, names), display_node(nodes, r, names)),
    }
}

/// `x_0 = x`, `x_{i+1} = x_i(y_i z_i)` with `y`, `z` advanced cyclically.
pub fn free_meld3_chain(k: usize) -> Result<Vec<Term>> {
    if k > FREE_MELD3_CAP {
        return Err(Error::SizeCap { what: "free meld chain", limit: FREE_MELD3_CAP });
    }
    let (mut x, mut y, mut z) = (Term::var(0), Term::var(1), Term::var(2));
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(x.clone());
        let nx = Term::app(&x, &Term::app(&y, &z));
        let ny = Term::app(&y, &Term::app(&z, &x));
        let nz = Term::app(&z, &Term::app(&x, &y));
        (x, y, z) = (nx, ny, nz);
    }
    Ok(out)
}

/// The presentation with generators `x, y, z` and no relations.
pub fn free_meld3() -> MeldPresentation {
    MeldPresentation::new(vec!["x".into(), "y".into(), "z".into()], Vec::new()).expect("distinct names")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn free(names: &[&str]) -> MeldPresentation {
        MeldPresentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new()).unwrap()
    }

    fn q(p: &MeldPresentation, text: &str) -> (Term, Term) {
        p.parse_equation(text).unwrap()
    }

    #[test]
    fn meld_consequences() {
        let p = free(&["x", "y", "z"]);
        for eq in ["x*(y*x) = x", "(x*y)*x = x*y", "(x*y)*(y*z) = x*y", "(x*y)*(z*x) = x*y"] {
            let (r, s) = q(&p, eq);
            assert!(solve(&p, &r, &s).unwrap(), "{eq}");
            assert_eq!(witness_meld(&p, &r, &s).unwrap_err(), Error::EquationHolds);
        }
    }

    #[test]
    fn refutations_with_countermodels() {
        let p = free(&["x", "y"]);
        for eq in ["x*y = y*x", "x = y"] {
            let (r, s) = q(&p, eq);
            assert!(!solve(&p, &r, &s).unwrap());
            let w = witness_meld(&p, &r, &s).unwrap();
            assert!(w.verify(&p, &r, &s));
        }
        let (r, s) = q(&p, "x = y");
        assert!(witness_meld(&p, &r, &s).unwrap().groupoid.size() <= 5);
    }

    #[test]
    fn relations_are_used() {
        let p = MeldPresentation::parse("x y\nx*y = x\n").unwrap();
        let (r, s) = q(&p, "y*x = y");
        assert!(solve(&p, &r, &s).unwrap());
        let (r, s) = q(&p, "x = y");
        let w = witness_meld(&p, &r, &s).unwrap();
        assert!(w.verify(&p, &r, &s));
        assert_eq!(w.groupoid.op(w.interpretation[0], w.interpretation[1]), w.interpretation[0]);
    }

    #[test]
    fn soundness_against_free_meld() {
        let p = free(&["x", "y"]);
        let m = zoo::free_meld2();
        for eq in ["(x*y)*y = x*y", "x*(x*y) = x", "y*(x*y) = y*x", "(x*y)*(y*x) = x*y"] {
            let (r, s) = q(&p, eq);
            let sem = crate::term::satisfies_identity(&m, &r, &s, 2).unwrap();
            assert_eq!(solve(&p, &r, &s).unwrap(), sem, "{eq}");
        }
    }

    #[test]
    fn chain() {
        assert_eq!(free_meld3_chain(1).unwrap(), vec![Term::x()]);
        let p = free_meld3();
        let c = free_meld3_chain(4).unwrap();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                assert!(!solve(&p, &c[i], &c[j]).unwrap());
            }
        }
        assert!(free_meld3_chain(FREE_MELD3_CAP + 1).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(MeldPresentation::parse("").is_err());
        assert!(MeldPresentation::parse("x y\nx*z = x").is_err());
        assert!(MeldPresentation::parse("x x").is_err());
        assert!(MeldPresentation::parse("x y\nx*y").is_err());
    }
}
