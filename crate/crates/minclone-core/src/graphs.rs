//! The labeled digraph of right multiplications and the graph of two-element subalgebras.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::clone::{free_algebra_two, iterate_inf1, iterate_infc, FreeAlgebra2, TermTable};
use crate::groupoid::{Elem, Groupoid, PairType};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: Elem,
    pub target: Elem,
    pub labels: Vec<Elem>,
}

/// Edges `a → f(a,b)` for `f(a,b) ≠ a`, labeled by all such `b`.
#[derive(Clone, Debug)]
pub struct LabeledDigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<Elem>>,
    scc_id: Vec<usize>,
    components: Vec<Vec<Elem>>,
    reach: Vec<Vec<bool>>,
}

impl LabeledDigraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges sorted by source, then target.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn successors(&self, a: Elem) -> &[Elem] {
        &self.out[a]
    }

    pub fn scc_id(&self, a: Elem) -> usize {
        self.scc_id[a]
    }

    /// Components ordered by their least vertex.
    pub fn components(&self) -> &[Vec<Elem>] {
        &self.components
    }

    /// `reach_order()[i][j]`: component `j` is reachable from component `i`.
    pub fn reach_order(&self) -> &[Vec<bool>] {
        &self.reach
    }

    /// Element preorder: `a ⪯ b` iff `b ∈ O(a)`.
    pub fn precedes(&self, a: Elem, b: Elem) -> bool {
        self.reach[self.scc_id[a]][self.scc_id[b]]
    }

    pub fn reachable_from(&self, a: Elem) -> Vec<Elem> {
        (0..self.vertex_count).filter(|&b| self.precedes(a, b)).collect()
    }

    /// A component is maximal when no edge leaves it.
    pub fn is_maximal_component(&self, c: usize) -> bool {
        self.components[c].iter().all(|&a| self.out[a].iter().all(|&b| self.scc_id[b] == c))
    }
}

pub fn labeled_digraph(g: &Groupoid) -> LabeledDigraph {
    let n = g.size();
    let mut edges = Vec::new();
    let mut out = vec![Vec::new(); n];
    for a in 0..n {
        let mut labels: Vec<Vec<Elem>> = vec![Vec::new(); n];
        for b in 0..n {
            let c = g.op(a, b);
            if c != a {
                labels[c].push(b);
            }
        }
        for (c, l) in labels.into_iter().enumerate() {
            if !l.is_empty() {
                out[a].push(c);
                edges.push(Edge { source: a, target: c, labels: l });
            }
        }
    }
    let (scc_id, components, reach) = condense(&out);
    LabeledDigraph { vertex_count: n, edges, out, scc_id, components, reach }
}

pub fn right_orbit(g: &Groupoid, a: Elem) -> Vec<Elem> {
    g.right_orbit(a)
}

pub fn scc_and_order(d: &LabeledDigraph) -> (Vec<Vec<Elem>>, Vec<Vec<bool>>) {
    (d.components.clone(), d.reach.clone())
}

/// Tarjan's algorithm, iterative. Returns component ids renumbered by least
/// vertex, the components, and the reflexive-transitive reachability between them.
fn condense(out: &[Vec<Elem>]) -> (Vec<usize>, Vec<Vec<Elem>>, Vec<Vec<bool>>) {
    let n = out.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw_id = vec![UNSEEN; n];
    let mut raw_components: Vec<Vec<Elem>> = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(Elem, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, next)) = call.last() {
            if next < out[v].len() {
                let w = out[v][next];
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = raw_components.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    raw_id[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw_components.push(comp);
            }
        }
    }
    // Tarjan emits sinks first, so successors' reach sets are final when needed.
    let k = raw_components.len();
    let mut raw_reach = vec![vec![false; k]; k];
    for c in 0..k {
        raw_reach[c][c] = true;
        for &v in &raw_components[c] {
            for &w in &out[v] {
                let d = raw_id[w];
                if d != c && !raw_reach[c][d] {
                    let row = raw_reach[d].clone();
                    for (slot, r) in raw_reach[c].iter_mut().zip(row) {
                        *slot |= r;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| raw_components[c][0]);
    let mut renumber = vec![0; k];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let scc_id = raw_id.iter().map(|&c| renumber[c]).collect();
    let components = order.iter().map(|&c| raw_components[c].clone()).collect();
    let reach = order.iter().map(|&c| order.iter().map(|&d| raw_reach[c][d]).collect()).collect();
    (scc_id, components, reach)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Projection,
    Semilattice,
    Other,
}

/// Undirected graph whose edges are the two-element subalgebras.
#[derive(Clone, Debug)]
pub struct TwoElementGraph {
    vertex_count: usize,
    adjacency: Vec<Vec<bool>>,
    edges: Vec<(Elem, Elem, EdgeKind)>,
}

impl TwoElementGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn adjacent(&self, a: Elem, b: Elem) -> bool {
        self.adjacency[a][b]
    }

    /// Edges `(a, b, kind)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(Elem, Elem, EdgeKind)] {
        &self.edges
    }

    pub fn neighbors(&self, a: Elem) -> Vec<Elem> {
        (0..self.vertex_count).filter(|&b| self.adjacency[a][b]).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for b in 0..self.vertex_count {
                if self.adjacency[a][b] && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn two_element_graph(g: &Groupoid) -> TwoElementGraph {
    let n = g.size();
    let mut adjacency = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let kind = match g.two_element_type(a, b) {
                PairType::NotClosed => continue,
                PairType::ProjectionFirst | PairType::ProjectionSecond => EdgeKind::Projection,
                PairType::SemilatticeToA | PairType::SemilatticeToB => EdgeKind::Semilattice,
                PairType::Other => EdgeKind::Other,
            };
            adjacency[a][b] = true;
            adjacency[b][a] = true;
            edges.push((a, b, kind));
        }
    }
    TwoElementGraph { vertex_count: n, adjacency, edges }
}

pub fn is_connected(g: &TwoElementGraph) -> bool {
    g.is_connected()
}

#[derive(Clone, Debug)]
pub struct NiceTerms {
    pub g0: TermTable,
    pub g1: TermTable,
    pub g2: TermTable,
    pub g3: TermTable,
}

/// Terms above `f(x,y)` in a maximal component of the free-algebra digraph.
///
/// `g₀` is the first vertex, in breadth-first order from `f(x,y)`, whose out-edges
/// stay inside its own component; then `g₁ = g₀^{∞₁}`, `g₂ = g₀^{∞_c}` and
/// `g₃(x,y) = g₁(g₁(x,y),x)`.
pub fn nice_terms(g: &Groupoid) -> Result<NiceTerms> {
    let fa = free_algebra_two(g)?;
    nice_terms_in(&fa, g)
}

pub fn nice_terms_in(fa: &FreeAlgebra2, g: &Groupoid) -> Result<NiceTerms> {
    let d = labeled_digraph(&fa.groupoid());
    let f = TermTable::basic(g);
    let start = fa.index_of(&f).expect("the basic operation is in the free algebra");
    let mut seen = vec![false; fa.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut g0 = start;
    while let Some(v) = queue.pop_front() {
        if d.is_maximal_component(d.scc_id(v)) {
            g0 = v;
            break;
        }
        for &w in d.successors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let g0 = fa.element(g0).clone();
    let g1 = iterate_inf1(&g0);
    let g2 = iterate_infc(&g0);
    let g3 = g1.compose(&g1, &TermTable::first(g.size()))?;
    Ok(NiceTerms { g0, g1, g2, g3 })
}

/// DOT rendering with vertices and edges in index order.
pub fn export_dot(d: &LabeledDigraph, names: &[String]) -> String {
    let name = |a: Elem| names.get(a).cloned().unwrap_or_else(|| format!("{a}"));
    let mut s = String::from("digraph D {\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", escape(&name(v)));
    }
    for e in d.edges() {
        let labels: Vec<String> = e.labels.iter().map(|&b| name(b)).collect();
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", e.source, e.target, escape(&labels.join(",")));
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
