//! Term trees over one binary symbol.
//!
//! Text form: fully parenthesized products `(l*r)`, variables as identifiers.
//! Parsing is left-associative, so `x*y*z` reads as `((x*y)*z)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groupoid::{Elem, Groupoid};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Var(usize),
    App(Term, Term),
}

/// A shared, immutable term tree. Subtrees may be shared between terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(Arc<Node>);

impl Term {
    pub fn var(i: usize) -> Term {
        Term(Arc::new(Node::Var(i)))
    }

    pub fn x() -> Term {
        Term::var(0)
    }

    pub fn y() -> Term {
        Term::var(1)
    }

    pub fn app(l: &Term, r: &Term) -> Term {
        Term(Arc::new(Node::App(l.clone(), r.clone())))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    /// Number of leaves plus products, counting shared subtrees once per occurrence.
    pub fn size(&self) -> usize {
        let mut memo = BTreeMap::new();
        self.fold(&mut memo, &mut |_| 1, &mut |l, r| l.saturating_add(r).saturating_add(1))
    }

    pub fn depth(&self) -> usize {
        let mut memo = BTreeMap::new();
        self.fold(&mut memo, &mut |_| 0, &mut |l, r| l.max(r) + 1)
    }

    /// Largest variable index plus one.
    pub fn var_count(&self) -> usize {
        let mut memo = BTreeMap::new();
        self.fold(&mut memo, &mut |v| v + 1, &mut |l, r| l.max(r))
    }

    fn fold<T: Copy>(
        &self,
        memo: &mut BTreeMap<*const Node, T>,
        leaf: &mut impl FnMut(usize) -> T,
        join: &mut impl FnMut(T, T) -> T,
    ) -> T {
        if let Some(&v) = memo.get(&self.key()) {
            return v;
        }
        let v = match self.node() {
            Node::Var(i) => leaf(*i),
            Node::App(l, r) => {
                let a = l.fold(memo, leaf, join);
                let b = r.fold(memo, leaf, join);
                join(a, b)
            }
        };
        memo.insert(self.key(), v);
        v
    }

    /// Replaces variable `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[Term]) -> Term {
        let mut memo: BTreeMap<*const Node, Term> = BTreeMap::new();
        self.subst_rec(subs, &mut memo)
    }

    fn subst_rec(&self, subs: &[Term], memo: &mut BTreeMap<*const Node, Term>) -> Term {
        if let Some(t) = memo.get(&self.key()) {
            return t.clone();
        }
        let t = match self.node() {
            Node::Var(i) => subs.get(*i).cloned().unwrap_or_else(|| self.clone()),
            Node::App(l, r) => Term::app(&l.subst_rec(subs, memo), &r.subst_rec(subs, memo)),
        };
        memo.insert(self.key(), t.clone());
        t
    }

    /// Replaces each product node by the binary term `op` applied to its children.
    pub fn reroot(&self, op: &Term) -> Term {
        let mut memo: BTreeMap<*const Node, Term> = BTreeMap::new();
        self.reroot_rec(op, &mut memo)
    }

    fn reroot_rec(&self, op: &Term, memo: &mut BTreeMap<*const Node, Term>) -> Term {
        if let Some(t) = memo.get(&self.key()) {
            return t.clone();
        }
        let t = match self.node() {
            Node::Var(_) => self.clone(),
            Node::App(l, r) => op.substitute(&[l.reroot_rec(op, memo), r.reroot_rec(op, memo)]),
        };
        memo.insert(self.key(), t.clone());
        t
    }

    pub fn eval(&self, g: &Groupoid, assignment: &[Elem]) -> Result<Elem> {
        match self.node() {
            Node::Var(i) => assignment
                .get(*i)
                .copied()
                .ok_or_else(|| Error::UnknownVariable(default_var_name(*i))),
            Node::App(l, r) => Ok(g.op(l.eval(g, assignment)?, r.eval(g, assignment)?)),
        }
    }

    /// Pointwise values on `g^k` for `k = arity`, flattened with the first variable most significant.
    pub fn eval_table(&self, g: &Groupoid, arity: usize) -> Result<Vec<Elem>> {
        if self.var_count() > arity {
            return Err(Error::UnknownVariable(default_var_name(self.var_count() - 1)));
        }
        let n = g.size();
        let len = n.pow(arity as u32);
        let mut memo: BTreeMap<*const Node, Vec<Elem>> = BTreeMap::new();
        Ok(self.table_rec(g, arity, len, &mut memo))
    }

    fn table_rec(&self, g: &Groupoid, arity: usize, len: usize, memo: &mut BTreeMap<*const Node, Vec<Elem>>) -> Vec<Elem> {
        if let Some(v) = memo.get(&self.key()) {
            return v.clone();
        }
        let n = g.size();
        let v: Vec<Elem> = match self.node() {
            Node::Var(i) => {
                let stride = n.pow((arity - 1 - i) as u32);
                (0..len).map(|p| (p / stride) % n).collect()
            }
            Node::App(l, r) => {
                let a = l.table_rec(g, arity, len, memo);
                let b = r.table_rec(g, arity, len, memo);
                a.iter().zip(&b).map(|(&p, &q)| g.op(p, q)).collect()
            }
        };
        memo.insert(self.key(), v.clone());
        v
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { term: self, names }
    }

    pub fn parse(text: &str) -> Result<Term> {
        parse_term(text, &VarScope::Default)
    }

    /// Parses against a fixed list of variable names.
    pub fn parse_with(text: &str, names: &[String]) -> Result<Term> {
        parse_term(text, &VarScope::Fixed(names))
    }
}

/// `x`, `y`, then `z1`, `z2`, ...
pub fn default_var_name(i: usize) -> String {
    match i {
        0 => "x".to_string(),
        1 => "y".to_string(),
        _ => format!("z{}", i - 1),
    }
}

fn default_var_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        _ => {
            let digits = name.strip_prefix('z')?;
            if digits.starts_with('0') {
                return None;
            }
            let k: usize = digits.parse().ok()?;
            (k >= 1).then_some(k + 1)
        }
    }
}

struct Named<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self.term, f, &|i| self.names.get(i).cloned().unwrap_or_else(|| default_var_name(i)))
    }
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
    match t.node() {
        Node::Var(i) => f.write_str(&name(*i)),
        Node::App(l, r) => {
            f.write_str("(")?;
            write_term(l, f, name)?;
            f.write_str("*")?;
            write_term(r, f, name)?;
            f.write_str(")")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, &default_var_name)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

enum VarScope<'a> {
    Default,
    Fixed(&'a [String]),
}

impl VarScope<'_> {
    fn resolve(&self, name: &str) -> Result<usize> {
        let found = match self {
            VarScope::Default => default_var_index(name),
            VarScope::Fixed(names) => names.iter().position(|n| n == name),
        };
        found.ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

struct Parser<'s, 'v> {
    src: &'s [u8],
    pos: usize,
    vars: &'s VarScope<'v>,
}

fn parse_term(text: &str, vars: &VarScope<'_>) -> Result<Term> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

impl Parser<'_, '_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let r = self.atom()?;
            t = Term::app(&t, &r);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self.vars.resolve(name).map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("unknown variable `{name}`"),
                })?;
                Ok(Term::var(i))
            }
            Some(_) => Err(self.error("expected variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// True iff `lhs` and `rhs` agree under every assignment of `var_count` variables.
pub fn satisfies_identity(g: &Groupoid, lhs: &Term, rhs: &Term, var_count: usize) -> Result<bool> {
    let l = lhs.eval_table(g, var_count)?;
    let r = rhs.eval_table(g, var_count)?;
    Ok(l == r)
}

/// The first assignment on which the two sides differ.
pub fn identity_counterexample(g: &Groupoid, lhs: &Term, rhs: &Term, var_count: usize) -> Result<Option<Vec<Elem>>> {
    let l = lhs.eval_table(g, var_count)?;
    let r = rhs.eval_table(g, var_count)?;
    let n = g.size();
    Ok(l.iter().zip(&r).position(|(a, b)| a != b).map(|p| {
        let mut out = vec![0; var_count];
        let mut rest = p;
        for slot in out.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["x", "(x*y)", "(x*(y*x))", "((x*y)*(z1*x))", "(z12*y)"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert_eq!(t("x*y*z1").to_string(), "((x*y)*z1)");
        assert_eq!(t(" ( x * y ) ").to_string(), "(x*y)");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Term::parse("(x*y"), Err(Error::Parse { .. })));
        assert!(matches!(Term::parse("x*"), Err(Error::Parse { .. })));
        assert!(matches!(Term::parse("w"), Err(Error::Parse { .. })));
        assert!(matches!(Term::parse("z0"), Err(Error::Parse { .. })));
        assert!(matches!(Term::parse("x y"), Err(Error::Parse { .. })));
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(Term::parse_with("a*b", &names).unwrap().display_with(&names).to_string(), "(a*b)");
        assert!(Term::parse_with("a*c", &names).is_err());
    }

    #[test]
    fn identities() {
        let meld = zoo::free_meld2();
        let fd = zoo::fd_free();
        let idem = (t("(x*x)"), t("x"));
        assert!(satisfies_identity(&meld, &idem.0, &idem.1, 1).unwrap());
        let law = (t("((x*y)*(z1*x))"), t("(x*y)"));
        assert!(satisfies_identity(&meld, &law.0, &law.1, 3).unwrap());
        assert!(!satisfies_identity(&fd, &law.0, &law.1, 3).unwrap());
        let bad = identity_counterexample(&fd, &law.0, &law.1, 3).unwrap().unwrap();
        let (l, r) = (law.0.eval(&fd, &bad).unwrap(), law.1.eval(&fd, &bad).unwrap());
        assert_ne!(l, r);
        assert!(satisfies_identity(&fd, &t("(x*z1)"), &t("x"), 2).is_err());
    }

    #[test]
    fn substitution_and_sizes() {
        let f = t("(x*y)");
        let g = f.substitute(&[t("(x*y)"), t("x")]);
        assert_eq!(g.to_string(), "((x*y)*x)");
        assert_eq!(g.size(), 5);
        assert_eq!(g.depth(), 2);
        assert_eq!(g.var_count(), 2);
    }
}
