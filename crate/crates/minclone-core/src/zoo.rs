//! Named algebras: the free 2-generated tables, hoops, wheels and friends.
//!
//! Element orders: free tables use `x, y, xy, yx`; hoops and wheels use
//! `a, b, c_0..c_{n-1}, d_0..d_{n-1}`; `A_n` uses `a_0..a_n, b_0..b_n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::Tag;
use crate::groupoid::{Elem, Groupoid};
use crate::{Error, Result};

/// Largest table `free_p_cyclic` will build.
pub const P_CYCLIC_CAP: usize = 4096;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn free4(rows: [[Elem; 4]; 4]) -> Groupoid {
    Groupoid::new(rows.iter().map(|r| r.to_vec()).collect())
        .and_then(|g| g.with_names(names(&["x", "y", "xy", "yx"])))
        .expect("valid table")
}

const X: Elem = 0;
const Y: Elem = 1;
const XY: Elem = 2;
const YX: Elem = 3;

pub fn free_rect_band2() -> Groupoid {
    free4([[X, XY, XY, X], [YX, Y, Y, YX], [X, XY, XY, X], [YX, Y, Y, YX]])
}

pub fn free_partial_semi2() -> Groupoid {
    free4([[X, XY, XY, XY], [YX, Y, YX, YX], [XY; 4], [YX; 4]])
}

pub fn free_meld2() -> Groupoid {
    free4([[X, XY, X, X], [YX, Y, Y, Y], [XY; 4], [YX; 4]])
}

/// `F_D(x,y)`, the free 2-generated dispersive algebra.
pub fn fd_free() -> Groupoid {
    free4([[X, XY, X, XY], [YX, Y, YX, Y], [XY; 4], [YX; 4]])
}

pub fn free_2cyclic2() -> Groupoid {
    free4([[X, XY, X, XY], [YX, Y, YX, Y], [XY, X, XY, X], [Y, YX, Y, YX]])
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Subalgebra of `(Z/p², (1-p)x + py)^n` generated by the basis vectors.
pub fn free_p_cyclic(p: usize, n: usize) -> Result<Groupoid> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Precondition("need at least one generator".to_string()));
    }
    let m = p * p;
    let op = |x: &[usize], y: &[usize]| -> Vec<usize> {
        x.iter().zip(y).map(|(&a, &b)| ((1 + m - p) * a + p * b) % m).collect()
    };
    let mut elems: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let mut index: BTreeMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut done = 0;
    while done < elems.len() {
        let hi = elems.len();
        for i in 0..hi {
            for j in 0..hi {
                if i < done && j < done {
                    continue;
                }
                for (a, b) in [(i, j), (j, i)] {
                    let c = op(&elems[a], &elems[b]);
                    if !index.contains_key(&c) {
                        if elems.len() >= P_CYCLIC_CAP {
                            return Err(Error::SizeCap { what: "p-cyclic closure", limit: P_CYCLIC_CAP });
                        }
                        index.insert(c.clone(), elems.len());
                        elems.push(c);
                    }
                }
            }
        }
        done = hi;
    }
    let size = elems.len();
    let g = Groupoid::from_fn(size, |a, b| index[&op(&elems[a], &elems[b])]);
    let labels = elems
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if i < n {
                format!("e{}", i + 1)
            } else {
                let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    g.with_names(labels)
}

fn wheel_names(n: usize) -> Vec<String> {
    let mut v = names(&["a", "b"]);
    v.extend((0..n).map(|i| format!("c{i}")));
    v.extend((0..n).map(|i| format!("d{i}")));
    v
}

/// `H_n`, or `H_n'` when `primed`. Panics if `n == 0`.
pub fn hoop(n: usize, primed: bool) -> Groupoid {
    assert!(n >= 1, "hoop needs n >= 1");
    let (a, b) = (0, 1);
    let c = |i: usize| 2 + i % n;
    let d = |i: usize| 2 + n + i % n;
    let is_c = |x: Elem| (2..2 + n).contains(&x);
    Groupoid::from_fn(2 * n + 2, |x, y| match x {
        _ if x == a => match y {
            _ if y == b => {
                if primed {
                    d(0)
                } else {
                    c(0)
                }
            }
            _ => a,
        },
        _ if x == b => b,
        _ if is_c(x) => {
            if y == a {
                d(x - 2)
            } else {
                x
            }
        }
        _ => {
            if y == b {
                c(x - 2 - n + 1)
            } else {
                x
            }
        }
    })
    .with_names(wheel_names(n))
    .expect("names fit")
}

fn wheel(n: usize, ba: usize, shift: usize) -> Groupoid {
    let (a, b) = (0, 1);
    let c = |i: usize| 2 + i % n;
    let d = |i: usize| 2 + n + i % n;
    let is_c = |x: Elem| (2..2 + n).contains(&x);
    Groupoid::from_fn(2 * n + 2, |x, y| {
        if x == a {
            match y {
                _ if y == a => a,
                _ if y == b => c(0),
                _ if is_c(y) => a,
                _ => c(y - 2 - n + 1),
            }
        } else if x == b {
            match y {
                _ if y == a => d(ba),
                _ if y == b => b,
                _ if is_c(y) => d(y - 2 + shift),
                _ => b,
            }
        } else {
            x
        }
    })
    .with_names(wheel_names(n))
    .expect("names fit")
}

/// `W_{n,k}^a`.
pub fn wheel_a(n: usize, k: usize) -> Result<Groupoid> {
    if n == 0 || k >= n {
        return Err(Error::Precondition(format!("wheel_a needs 0 <= k < n, got n={n}, k={k}")));
    }
    Ok(wheel(n, k, 0))
}

/// `W_n^s`.
pub fn wheel_s(n: usize) -> Result<Groupoid> {
    if n == 0 {
        return Err(Error::Precondition("wheel_s needs n >= 1".to_string()));
    }
    Ok(wheel(n, 0, 1))
}

/// `A_n` on `a_0..a_n, b_0..b_n`. Panics if `n == 0`.
pub fn a_n_dispersive(n: usize) -> Groupoid {
    assert!(n >= 1, "A_n needs n >= 1");
    let a = |i: usize| i;
    let b = |i: usize| n + 1 + i;
    Groupoid::from_fn(2 * n + 2, |x, y| {
        let (xa, xi) = if x <= n { (true, x) } else { (false, x - n - 1) };
        let (ya, yi) = if y <= n { (true, y) } else { (false, y - n - 1) };
        if xi == n {
            return x;
        }
        match (xa, ya) {
            (true, true) => x,
            (false, false) => x,
            (true, false) if yi == n => a(xi + 1),
            (true, false) => a(n),
            (false, true) if yi == n => b(xi + 1),
            (false, true) => b(n),
        }
    })
    .with_names((0..=n).map(|i| format!("a{i}")).chain((0..=n).map(|i| format!("b{i}"))).collect())
    .expect("names fit")
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub groupoid: Groupoid,
    pub generators: Vec<Elem>,
    pub expected_tags: Vec<Tag>,
}

/// `(name, parameter names)` for every family accepted by `build`.
pub const FAMILIES: &[(&str, &[&str])] = &[
    ("free_rect_band2", &[]),
    ("free_partial_semi2", &[]),
    ("free_meld2", &[]),
    ("fd_free", &[]),
    ("free_2cyclic2", &[]),
    ("free_p_cyclic", &["p", "n"]),
    ("hoop", &["n"]),
    ("hoop_primed", &["n"]),
    ("wheel_a", &["n", "k"]),
    ("wheel_s", &["n"]),
    ("a_n", &["n"]),
];

/// Builds a family member by name.
pub fn build(name: &str, params: &[usize]) -> Result<Groupoid> {
    let arity = FAMILIES
        .iter()
        .find(|(f, _)| *f == name)
        .map(|(_, p)| p.len())
        .ok_or_else(|| Error::UnknownZooEntry(name.to_string()))?;
    if params.len() != arity {
        return Err(Error::Precondition(format!("{name} takes {arity} parameter(s), got {}", params.len())));
    }
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::Precondition(format!("{name} needs n >= 1")))
        } else {
            Ok(n)
        }
    };
    match name {
        "free_rect_band2" => Ok(free_rect_band2()),
        "free_partial_semi2" => Ok(free_partial_semi2()),
        "free_meld2" => Ok(free_meld2()),
        "fd_free" => Ok(fd_free()),
        "free_2cyclic2" => Ok(free_2cyclic2()),
        "free_p_cyclic" => free_p_cyclic(params[0], params[1]),
        "hoop" => Ok(hoop(positive(params[0])?, false)),
        "hoop_primed" => Ok(hoop(positive(params[0])?, true)),
        "wheel_a" => wheel_a(params[0], params[1]),
        "wheel_s" => wheel_s(params[0]),
        _ => Ok(a_n_dispersive(positive(params[0])?)),
    }
}

fn entry(name: String, groupoid: Groupoid, generators: Vec<Elem>, expected_tags: Vec<Tag>) -> ZooEntry {
    ZooEntry { name, groupoid, generators, expected_tags }
}

/// The standard fixture set.
pub fn entries() -> Vec<ZooEntry> {
    let two = vec![0, 1];
    let mut out = vec![
        entry("free_rect_band2".into(), free_rect_band2(), two.clone(), vec![Tag::RectangularBand]),
        entry("free_partial_semi2".into(), free_partial_semi2(), two.clone(), vec![Tag::PartialSemilatticeTerm]),
        entry("free_meld2".into(), free_meld2(), two.clone(), vec![Tag::Meld]),
        entry("fd_free".into(), fd_free(), two.clone(), vec![Tag::Dispersive]),
        entry("free_2cyclic2".into(), free_2cyclic2(), two.clone(), vec![Tag::PCyclic(2)]),
    ];
    for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let g = free_p_cyclic(p, n).expect("within cap");
        out.push(entry(format!("free_p_cyclic {p} {n}"), g, (0..n).collect(), vec![Tag::PCyclic(p as u32)]));
    }
    for n in 1..=3 {
        out.push(entry(format!("hoop {n}"), hoop(n, false), two.clone(), vec![Tag::Dispersive]));
        out.push(entry(format!("hoop_primed {n}"), hoop(n, true), two.clone(), vec![Tag::Dispersive]));
        for k in 0..n {
            let g = wheel_a(n, k).expect("k < n");
            out.push(entry(format!("wheel_a {n} {k}"), g, two.clone(), vec![Tag::Dispersive]));
        }
        out.push(entry(format!("wheel_s {n}"), wheel_s(n).expect("n >= 1"), two.clone(), vec![Tag::Dispersive]));
        out.push(entry(format!("a_n {n}"), a_n_dispersive(n), vec![0, n + 1], vec![Tag::Dispersive]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;

    #[test]
    fn free_tables() {
        let fd = fd_free();
        assert_eq!(fd.rows()[XY], vec![XY; 4]);
        assert_eq!(free_rect_band2().op(XY, YX), X);
        assert_eq!(free_2cyclic2().op(XY, Y), X);
        for g in [free_rect_band2(), free_partial_semi2(), free_meld2(), fd, free_2cyclic2()] {
            assert!(g.is_idempotent());
            assert!(g.generates(&[X, Y]));
        }
    }

    #[test]
    fn p_cyclic_sizes() {
        for (p, n) in [(2, 2), (3, 2), (2, 3), (2, 1)] {
            assert_eq!(free_p_cyclic(p, n).unwrap().size(), n * p.pow(n as u32 - 1));
        }
        assert!(is_isomorphic(&free_p_cyclic(2, 2).unwrap(), &free_2cyclic2()).is_some());
        assert!(free_p_cyclic(4, 2).is_err());
    }

    #[test]
    fn hoop_entries() {
        let h = hoop(1, false);
        let (a, b, c0, d0) = (0, 1, 2, 3);
        assert_eq!(h.op(a, b), c0);
        assert_eq!(h.op(c0, a), d0);
        assert_eq!(h.op(d0, b), c0);
        assert_eq!(hoop(2, true).op(a, b), 4);
        assert!(hoop(3, false).is_idempotent());
        assert_eq!(h.names().unwrap(), &names(&["a", "b", "c0", "d0"])[..]);
    }

    #[test]
    fn wheel_entries() {
        let w = wheel_a(2, 0).unwrap();
        let (a, b, c1, d0, d1) = (0, 1, 3, 4, 5);
        assert_eq!(w.op(b, a), d0);
        assert_eq!(w.op(b, c1), d1);
        assert_eq!(wheel_s(2).unwrap().op(b, 2), d1);
        assert_eq!(wheel_a(3, 2).unwrap().op(b, a), 2 + 3 + 2);
        assert!(wheel_a(2, 2).is_err());
        assert_eq!(w.right_orbit(b), vec![1, 4, 5]);
    }

    #[test]
    fn a_n_entries() {
        let g = a_n_dispersive(1);
        assert_eq!(g.op(0, 3), 1);
        let g = a_n_dispersive(3);
        for i in 0..=3 {
            assert_eq!(g.right_orbit(i), (i..=3).collect::<Vec<_>>());
        }
        assert!(g.is_idempotent());
    }

    #[test]
    fn build_by_name() {
        assert_eq!(build("wheel_s", &[2]).unwrap(), wheel_s(2).unwrap());
        assert!(matches!(build("nope", &[]), Err(Error::UnknownZooEntry(_))));
        assert!(build("hoop", &[]).is_err());
        assert!(build("hoop", &[0]).is_err());
    }
}
