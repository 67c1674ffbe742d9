//! Homomorphism search by backtracking with forward checking.
//!
//! Branching always happens on the least unassigned element, trying target
//! values in ascending order, so maps are produced in lexicographic order.

use alloc::vec;
use alloc::vec::Vec;

use crate::groupoid::{Elem, Groupoid};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HomOptions {
    pub surjective: bool,
    pub injective: bool,
}

struct Search<'a> {
    g: &'a Groupoid,
    h: &'a Groupoid,
    opts: HomOptions,
    assign: Vec<usize>,
    hits: Vec<usize>,
    covered: usize,
    trail: Vec<Elem>,
    sig_g: Option<Vec<Signature>>,
    sig_h: Option<Vec<Signature>>,
}

/// Cheap isomorphism invariant of an element.
type Signature = [usize; 4];

fn signatures(g: &Groupoid) -> Vec<Signature> {
    let n = g.size();
    let mut sig = vec![[0; 4]; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.op(a, b);
            if c == a {
                sig[a][0] += 1;
            }
            if c == b {
                sig[b][1] += 1;
            }
            sig[c][2] += 1;
        }
        sig[a][3] = g.right_orbit(a).len();
    }
    sig
}

impl<'a> Search<'a> {
    fn new(g: &'a Groupoid, h: &'a Groupoid, opts: HomOptions) -> Self {
        let (sig_g, sig_h) = if opts.injective && opts.surjective && g.size() == h.size() {
            (Some(signatures(g)), Some(signatures(h)))
        } else {
            (None, None)
        };
        Search {
            g,
            h,
            opts,
            assign: vec![NONE; g.size()],
            hits: vec![0; h.size()],
            covered: 0,
            trail: Vec::with_capacity(g.size()),
            sig_g,
            sig_h,
        }
    }

    fn set(&mut self, a: Elem, v: Elem) -> bool {
        if self.assign[a] != NONE {
            return self.assign[a] == v;
        }
        if self.opts.injective && self.hits[v] > 0 {
            return false;
        }
        if let (Some(sg), Some(sh)) = (&self.sig_g, &self.sig_h) {
            if sg[a] != sh[v] {
                return false;
            }
        }
        self.assign[a] = v;
        if self.hits[v] == 0 {
            self.covered += 1;
        }
        self.hits[v] += 1;
        self.trail.push(a);
        let len = self.trail.len();
        for i in 0..len {
            let b = self.trail[i];
            let (va, vb) = (self.assign[a], self.assign[b]);
            if !self.set(self.g.op(a, b), self.h.op(va, vb)) {
                return false;
            }
            if !self.set(self.g.op(b, a), self.h.op(vb, va)) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            let v = self.assign[a];
            self.hits[v] -= 1;
            if self.hits[v] == 0 {
                self.covered -= 1;
            }
            self.assign[a] = NONE;
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
        let Some(a) = self.assign.iter().position(|&v| v == NONE) else {
            if self.opts.surjective && self.covered < self.h.size() {
                return true;
            }
            return visit(&self.assign);
        };
        if self.opts.surjective {
            let free = self.assign.iter().filter(|&&v| v == NONE).count();
            if self.covered + free < self.h.size() {
                return true;
            }
        }
        for v in 0..self.h.size() {
            let mark = self.trail.len();
            let ok = self.set(a, v);
            let keep_going = !ok || self.run(visit);
            self.undo(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Visits homomorphisms `g → h` extending `partial`; stops when `visit` returns false.
pub fn for_each_homomorphism(
    g: &Groupoid,
    h: &Groupoid,
    opts: HomOptions,
    partial: &[(Elem, Elem)],
    visit: &mut dyn FnMut(&[Elem]) -> bool,
) {
    let mut search = Search::new(g, h, opts);
    for &(a, v) in partial {
        if a >= g.size() || v >= h.size() || !search.set(a, v) {
            return;
        }
    }
    search.run(visit);
}

pub fn find_homomorphisms(
    g: &Groupoid,
    h: &Groupoid,
    require_surjective: bool,
    partial: &[(Elem, Elem)],
) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let opts = HomOptions { surjective: require_surjective, injective: false };
    for_each_homomorphism(g, h, opts, partial, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

pub fn first_homomorphism(g: &Groupoid, h: &Groupoid, opts: HomOptions, partial: &[(Elem, Elem)]) -> Option<Vec<Elem>> {
    let mut out = None;
    for_each_homomorphism(g, h, opts, partial, &mut |m| {
        out = Some(m.to_vec());
        false
    });
    out
}

pub fn is_isomorphic(g: &Groupoid, h: &Groupoid) -> Option<Vec<Elem>> {
    if g.size() != h.size() {
        return None;
    }
    first_homomorphism(g, h, HomOptions { surjective: true, injective: true }, &[])
}

/// An injective homomorphism, if any.
pub fn find_embedding(g: &Groupoid, h: &Groupoid) -> Option<Vec<Elem>> {
    if g.size() > h.size() {
        return None;
    }
    first_homomorphism(g, h, HomOptions { surjective: false, injective: true }, &[])
}

pub fn is_homomorphism(g: &Groupoid, h: &Groupoid, map: &[Elem]) -> bool {
    map.len() == g.size()
        && map.iter().all(|&v| v < h.size())
        && (0..g.size()).all(|a| (0..g.size()).all(|b| map[g.op(a, b)] == h.op(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::pair_algebra;
    use crate::zoo;

    #[test]
    fn trivial_maps() {
        let one = Groupoid::new(vec![vec![0]]).unwrap();
        assert_eq!(find_homomorphisms(&one, &one, false, &[]), vec![vec![0]]);
        let fd = zoo::fd_free();
        assert_eq!(is_isomorphic(&fd, &fd), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn lexicographic_output() {
        let pi = Groupoid::from_fn(2, |a, _| a);
        let maps = find_homomorphisms(&pi, &pi, false, &[]);
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let rb = zoo::free_rect_band2();
        let maps = find_homomorphisms(&rb, &rb, false, &[]);
        let mut sorted = maps.clone();
        sorted.sort();
        assert_eq!(maps, sorted);
        for m in &maps {
            assert!(is_homomorphism(&rb, &rb, m));
        }
    }

    #[test]
    fn hoop_pair_algebra_maps_onto_fd() {
        let h1 = zoo::hoop(1, false);
        let p = pair_algebra(&h1, 0, 1);
        let fd = zoo::fd_free();
        assert!(!find_homomorphisms(&p.groupoid, &fd, true, &[]).is_empty());
    }

    #[test]
    fn semilattice_has_no_map_hitting_x_and_y() {
        let max = Groupoid::from_fn(2, |a, b| a.max(b));
        let fd = zoo::fd_free();
        let maps = find_homomorphisms(&max, &fd, false, &[]);
        assert!(!maps.is_empty());
        assert!(maps.iter().all(|m| !(m.contains(&0) && m.contains(&1))));
    }

    #[test]
    fn partial_assignment_is_respected() {
        let fd = zoo::fd_free();
        let maps = find_homomorphisms(&fd, &fd, false, &[(0, 1), (1, 0)]);
        assert_eq!(maps, vec![vec![1, 0, 3, 2]]);
    }

    #[test]
    fn wheel_reflection() {
        let w = zoo::wheel_a(3, 0).unwrap();
        let v = zoo::wheel_a(3, 2).unwrap();
        assert!(is_isomorphic(&w, &v).is_some());
    }

    #[test]
    fn hoop_and_primed_hoop_at_one() {
        let h = zoo::hoop(1, false);
        let hp = zoo::hoop(1, true);
        let brute = {
            let mut found = false;
            for_each_homomorphism(&h, &hp, HomOptions::default(), &[], &mut |m| {
                let mut seen = m.to_vec();
                seen.sort();
                seen.dedup();
                if seen.len() == 4 {
                    found = true;
                    return false;
                }
                true
            });
            found
        };
        assert_eq!(is_isomorphic(&h, &hp).is_some(), brute);
    }
}
