//! Category checks with certificates, and the combined classifier.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Serialize, Serializer};

use crate::clone::{check_d2, free_algebra_two, iterate_inf2, TermTable};
use crate::graphs::two_element_graph;
use crate::groupoid::{pair_algebra, sub_product, Elem, Groupoid, PairType};
use crate::hom::{first_homomorphism, is_homomorphism, HomOptions};
use crate::term::Term;
use crate::zoo;
use crate::{Error, Result};

/// Pair algebras up to this size are also checked by brute-force search.
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    RectangularBand,
    PCyclic(u32),
    PartialSemilatticeTerm,
    Meld,
    Dispersive,
    Spiral,
    AffineCandidate,
    MajorityCandidate,
    Unclassified,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::RectangularBand => f.write_str("rectangular-band"),
            Tag::PCyclic(p) => write!(f, "p-cyclic({p})"),
            Tag::PartialSemilatticeTerm => f.write_str("partial-semilattice-term"),
            Tag::Meld => f.write_str("meld"),
            Tag::Dispersive => f.write_str("dispersive"),
            Tag::Spiral => f.write_str("spiral"),
            Tag::AffineCandidate => f.write_str("affine-candidate"),
            Tag::MajorityCandidate => f.write_str("majority-candidate"),
            Tag::Unclassified => f.write_str("unclassified"),
        }
    }
}

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn identity_holds(n: usize, vars: usize, mut check: impl FnMut(&[Elem]) -> bool) -> bool {
    let mut a = vec![0; vars];
    loop {
        if !check(&a) {
            return false;
        }
        let mut i = vars;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < n {
                break;
            }
            a[i] = 0;
        }
    }
}

// ---------------------------------------------------------------- rectangular bands

pub fn is_rectangular_band(g: &Groupoid) -> bool {
    g.is_idempotent()
        && identity_holds(g.size(), 4, |v| g.op(g.op(v[0], v[1]), g.op(v[2], v[3])) == g.op(v[0], v[3]))
}

fn var(i: usize) -> Term {
    Term::var(i)
}

fn mul(a: &Term, b: &Term) -> Term {
    Term::app(a, b)
}

/// `((ux)y)(z(wu)) ≈ u`.
pub fn rect_band_absorption_equivalent(g: &Groupoid) -> bool {
    let (u, x, y, z, w) = (var(0), var(1), var(2), var(3), var(4));
    let lhs = mul(&mul(&mul(&u, &x), &y), &mul(&z, &mul(&w, &u)));
    crate::term::satisfies_identity(g, &lhs, &u, 5).expect("well-formed")
}

#[derive(Clone, Debug, Serialize)]
pub struct RectBandDecomposition {
    pub left_size: usize,
    pub right_size: usize,
    /// Element `a` corresponds to the pair `map[a]`.
    pub map: Vec<(Elem, Elem)>,
    #[serde(skip)]
    pub left: Groupoid,
    #[serde(skip)]
    pub right: Groupoid,
}

/// Splits a rectangular band as (first projection) × (second projection).
pub fn rect_band_decompose(g: &Groupoid) -> Result<RectBandDecomposition> {
    if !is_rectangular_band(g) {
        return Err(Error::NotRectangularBand);
    }
    let e = 0;
    let mut left: Vec<Elem> = (0..g.size()).map(|a| g.op(a, e)).collect();
    let mut right: Vec<Elem> = (0..g.size()).map(|a| g.op(e, a)).collect();
    left.sort_unstable();
    left.dedup();
    right.sort_unstable();
    right.dedup();
    let map = (0..g.size())
        .map(|a| (left.binary_search(&g.op(a, e)).unwrap(), right.binary_search(&g.op(e, a)).unwrap()))
        .collect();
    Ok(RectBandDecomposition {
        left_size: left.len(),
        right_size: right.len(),
        map,
        left: Groupoid::from_fn(left.len(), |a, _| a),
        right: Groupoid::from_fn(right.len(), |_, b| b),
    })
}

impl RectBandDecomposition {
    /// The map into `left × right`, in the numbering used by `Groupoid::product`.
    pub fn product_map(&self) -> Vec<Elem> {
        self.map.iter().map(|&(l, r)| l * self.right_size + r).collect()
    }
}

// ---------------------------------------------------------------- p-cyclic groupoids

pub fn satisfies_p_cyclic(g: &Groupoid, p: usize) -> bool {
    let n = g.size();
    g.is_idempotent()
        && identity_holds(n, 3, |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            g.op(x, g.op(y, z)) == g.op(x, y) && g.op(g.op(x, y), z) == g.op(g.op(x, z), y)
        })
        && identity_holds(n, 2, |v| {
            let mut a = v[0];
            for _ in 0..p {
                a = g.op(a, v[1]);
            }
            a == v[0]
        })
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Right-orbit partition with affine coordinates over `Z/p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PCyclicCertificate {
    pub p: usize,
    pub orbits: Vec<Vec<Elem>>,
    /// Coordinates of each element inside its own orbit.
    pub coords: Vec<Vec<usize>>,
    /// `vectors[i][j]`: translation applied to orbit `i` by elements of orbit `j`.
    pub vectors: Vec<Vec<Option<Vec<usize>>>>,
}

impl PCyclicCertificate {
    /// The table determined by the certificate alone.
    pub fn rebuild(&self) -> Option<Groupoid> {
        let n = self.coords.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut at: BTreeMap<(usize, Vec<usize>), Elem> = BTreeMap::new();
        for (i, orbit) in self.orbits.iter().enumerate() {
            for &a in orbit {
                orbit_of[a] = i;
                at.insert((i, self.coords[a].clone()), a);
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (i, j) = (orbit_of[a], orbit_of[b]);
                if i == j {
                    table.push(a);
                    continue;
                }
                let v = self.vectors[i][j].as_ref()?;
                let c: Vec<usize> = self.coords[a].iter().zip(v).map(|(x, y)| (x + y) % self.p).collect();
                table.push(*at.get(&(i, c))?);
            }
        }
        Groupoid::from_flat(n, table).ok()
    }
}

pub fn detect_p_cyclic(g: &Groupoid) -> Option<PCyclicCertificate> {
    (2..=g.size()).filter(|&p| is_prime(p)).find(|&p| satisfies_p_cyclic(g, p)).and_then(|p| p_cyclic_certificate(g, p))
}

fn p_cyclic_certificate(g: &Groupoid, p: usize) -> Option<PCyclicCertificate> {
    let n = g.size();
    let mut orbits: Vec<Vec<Elem>> = Vec::new();
    let mut orbit_of = vec![usize::MAX; n];
    for a in 0..n {
        if orbit_of[a] != usize::MAX {
            continue;
        }
        let o = g.right_orbit(a);
        for &b in &o {
            if orbit_of[b] != usize::MAX {
                return None;
            }
            orbit_of[b] = orbits.len();
        }
        orbits.push(o);
    }
    let mut coords = vec![Vec::new(); n];
    for (i, orbit) in orbits.iter().enumerate() {
        let base = orbit[0];
        let mut known: BTreeMap<Elem, Vec<usize>> = BTreeMap::new();
        known.insert(base, Vec::new());
        for (j, other) in orbits.iter().enumerate() {
            if i == j {
                continue;
            }
            let t = other[0];
            if known.contains_key(&g.op(base, t)) {
                continue;
            }
            let mut grown = BTreeMap::new();
            for (q, c) in &known {
                let mut point = *q;
                for k in 0..p {
                    let mut cc = c.clone();
                    cc.push(k);
                    grown.insert(point, cc);
                    point = g.op(point, t);
                }
            }
            known = grown;
        }
        if known.len() != orbit.len() {
            return None;
        }
        for (a, c) in known {
            coords[a] = c;
        }
    }
    let vectors = (0..orbits.len())
        .map(|i| {
            (0..orbits.len())
                .map(|j| (i != j).then(|| coords[g.op(orbits[i][0], orbits[j][0])].clone()))
                .collect()
        })
        .collect();
    let cert = PCyclicCertificate { p, orbits, coords, vectors };
    (cert.rebuild().as_ref() == Some(&g.clone().without_names())).then_some(cert)
}

// ---------------------------------------------------------------- partial semilattices

/// `s(x,s(x,y)) ≈ s(s(x,y),x) ≈ s(x,y)`.
pub fn is_partial_semilattice(g: &Groupoid) -> bool {
    g.is_idempotent()
        && identity_holds(g.size(), 2, |v| {
            let s = g.op(v[0], v[1]);
            g.op(v[0], s) == s && g.op(s, v[0]) == s
        })
}

/// `t' = t^{∞₂}`, `u(x,y) = t'(x, t'(y,x))`, `s = u^{∞₂}`; returns `s` unless it is a projection.
pub fn extract_partial_semilattice(t: &TermTable) -> Option<TermTable> {
    let t1 = iterate_inf2(t);
    let u = t1.compose(&TermTable::first(t.base_size()), &t1.swapped()).expect("same size");
    let s = iterate_inf2(&u);
    if s.is_projection() {
        return None;
    }
    debug_assert!(is_partial_semilattice(&s.as_groupoid()));
    is_partial_semilattice(&s.as_groupoid()).then_some(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialSemilatticeCertificate {
    /// `t(a,b) = t(b,a) = b` for this pair.
    pub a: Elem,
    pub b: Elem,
    pub source_term: String,
    pub table: Vec<Vec<Elem>>,
    #[serde(skip)]
    pub s: TermTable,
}

fn witness_from_parents(parents: &[Option<(usize, usize)>], i: usize, memo: &mut Vec<Option<Term>>) -> Term {
    if let Some(t) = &memo[i] {
        return t.clone();
    }
    let t = match parents[i] {
        None => Term::var(i),
        Some((l, r)) => {
            let a = witness_from_parents(parents, l, memo);
            let b = witness_from_parents(parents, r, memo);
            Term::app(&a, &b)
        }
    };
    memo[i] = Some(t.clone());
    t
}

/// Finds a nontrivial partial semilattice in `Clo₂(g)` if one exists.
///
/// One exists iff some `(b,b)` lies in `Sg_{G²}{(a,b),(b,a)}` with `a ≠ b`; the term
/// producing that pair is then pushed through `extract_partial_semilattice`.
pub fn find_partial_semilattice_term(g: &Groupoid) -> Option<PartialSemilatticeCertificate> {
    let n = g.size();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let sp = sub_product(g, g, &[(a, b), (b, a)]);
            let Some(k) = sp.index_of((b, b)) else { continue };
            let mut memo = vec![None; sp.pairs.len()];
            let w = witness_from_parents(&sp.parents, k, &mut memo);
            let t = TermTable::from_term(g, &w).expect("binary term");
            if let Some(s) = extract_partial_semilattice(&t) {
                return Some(PartialSemilatticeCertificate { a, b, source_term: w.to_string(), table: s.rows(), s });
            }
        }
    }
    None
}

// ---------------------------------------------------------------- melds

/// `(xy)(zx) ≈ xy`.
pub fn is_meld(g: &Groupoid) -> bool {
    g.is_idempotent() && identity_holds(g.size(), 3, |v| g.op(g.op(v[0], v[1]), g.op(v[2], v[0])) == g.op(v[0], v[1]))
}

/// `x((yx)z) ≈ x`.
pub fn meld_absorption_equivalent(g: &Groupoid) -> bool {
    let (x, y, z) = (var(0), var(1), var(2));
    let lhs = mul(&x, &mul(&mul(&y, &x), &z));
    crate::term::satisfies_identity(g, &lhs, &x, 3).expect("well-formed")
}

/// The graph conditions under which a table is a meld by construction.
pub fn meld_graph_valid(g: &Groupoid) -> bool {
    let n = g.size();
    let ga = two_element_graph(g);
    let near = |a: Elem, b: Elem| a == b || ga.adjacent(a, b);
    let universal = (0..n).any(|u| (0..n).all(|b| near(u, b)));
    let first_on_edges = ga.edges().iter().all(|&(a, b, _)| g.op(a, b) == a && g.op(b, a) == b);
    let products = (0..n).all(|a| {
        (0..n).all(|b| {
            let c = g.op(a, b);
            near(c, a) && near(c, b) && (0..n).filter(|&d| ga.adjacent(a, d)).all(|d| near(c, d))
        })
    });
    universal && first_on_edges && products
}

// ---------------------------------------------------------------- dispersive algebras

/// Canonical test for a surjection `S → F_D(x,y)` sending `a ↦ x`, `b ↦ y`.
pub fn dispersive_hom_check(s: &Groupoid, a: Elem, b: Elem) -> Result<Option<Vec<Elem>>> {
    if !s.generates(&[a, b]) {
        return Err(Error::Precondition("algebra is not generated by the given pair".to_string()));
    }
    if !check_d2(s) {
        return Err(Error::Precondition("a * O(a) = {a} fails".to_string()));
    }
    if a == b {
        return Ok(None);
    }
    let oa = s.right_orbit(a);
    let ob = s.right_orbit(b);
    if oa.iter().any(|c| ob.binary_search(c).is_ok()) {
        return Ok(None);
    }
    if ob.iter().any(|&d| s.op(a, d) == a) || oa.iter().any(|&c| s.op(b, c) == b) {
        return Ok(None);
    }
    let n = s.size();
    let into = |orbit: &[Elem], target: Elem| orbit.iter().any(|&c| c != target && (0..n).any(|e| s.op(c, e) == target));
    if into(&oa, a) || into(&ob, b) {
        return Ok(None);
    }
    let map: Vec<Elem> = (0..n)
        .map(|c| match c {
            _ if c == a => 0,
            _ if c == b => 1,
            _ if oa.binary_search(&c).is_ok() => 2,
            _ => 3,
        })
        .collect();
    let fd = zoo::fd_free();
    let onto = (0..4).all(|v| map.contains(&v));
    Ok((onto && is_homomorphism(s, &fd, &map)).then_some(map))
}

/// Brute-force search for any surjection onto `F_D(x,y)`.
pub fn surjects_onto_fd(s: &Groupoid) -> Option<Vec<Elem>> {
    first_homomorphism(s, &zoo::fd_free(), HomOptions { surjective: true, injective: false }, &[])
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    pub a: Elem,
    pub b: Elem,
    pub pair_algebra_size: usize,
    /// The map from the pair algebra, with `(a,b)` at index 0 and `(b,a)` at index 1.
    pub hom: Option<Vec<Elem>>,
    /// Brute-force verdict, computed for small pair algebras.
    pub brute_force: Option<bool>,
}

impl PairCertificate {
    pub fn agrees(&self) -> bool {
        self.brute_force.is_none_or(|b| b == self.hom.is_some())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DispersiveReport {
    pub dispersive: bool,
    pub d2: bool,
    pub inert: bool,
    pub pairs: Vec<PairCertificate>,
}

impl DispersiveReport {
    pub fn disagreements(&self) -> usize {
        self.pairs.iter().filter(|p| !p.agrees()).count()
    }
}

pub fn is_dispersive(g: &Groupoid) -> DispersiveReport {
    dispersive_report(g, BRUTE_FORCE_LIMIT)
}

pub fn dispersive_report(g: &Groupoid, brute_limit: usize) -> DispersiveReport {
    let d2 = g.is_idempotent() && check_d2(g);
    let mut report = DispersiveReport { dispersive: false, d2, inert: false, pairs: Vec::new() };
    if !d2 {
        return report;
    }
    let mut ok = true;
    for a in 0..g.size() {
        for b in a + 1..g.size() {
            if g.two_element_type(a, b) != PairType::NotClosed {
                continue;
            }
            let pa = pair_algebra(g, a, b);
            let s = &pa.groupoid;
            let brute = (s.size() <= brute_limit).then(|| surjects_onto_fd(s).is_some());
            let hom = match dispersive_hom_check(s, 0, 1) {
                Ok(h) => h,
                Err(_) => surjects_onto_fd(s),
            };
            ok &= hom.is_some();
            report.pairs.push(PairCertificate { a, b, pair_algebra_size: s.size(), hom, brute_force: brute });
        }
    }
    report.dispersive = ok;
    report.inert = ok && is_inert_dispersive(g);
    report
}

/// Every right orbit is a projection subalgebra.
pub fn is_inert_dispersive(g: &Groupoid) -> bool {
    (0..g.size()).all(|a| {
        let o = g.right_orbit(a);
        g.restrict(&o).map(|s| s.is_projection_algebra()).unwrap_or(false)
    })
}

// ---------------------------------------------------------------- spirals

pub fn is_spiral(g: &Groupoid) -> bool {
    if !g.is_idempotent() || !g.is_commutative() {
        return false;
    }
    for a in 0..g.size() {
        for b in a + 1..g.size() {
            if g.two_element_type(a, b) != PairType::NotClosed {
                continue;
            }
            let rest: Vec<Elem> = g.subuniverse_generated(&[a, b]).into_iter().filter(|&c| c != a && c != b).collect();
            let inside = |c: Elem| rest.binary_search(&c).is_ok();
            if !g.is_closed(&rest) || !rest.iter().all(|&c| inside(g.op(a, c)) && inside(g.op(b, c))) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------- probes

/// For every nontrivial `g ∈ Clo₂(f)`, `f ∈ Clo₂(g)`. Necessary for clone-minimality.
pub fn binary_reduct_minimality_check(g: &Groupoid) -> Result<bool> {
    let fa = free_algebra_two(g)?;
    let f = TermTable::basic(g);
    for t in fa.elements() {
        if t.is_projection() {
            continue;
        }
        let sub = free_algebra_two(&t.as_groupoid())?;
        if !sub.contains(&f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t = target` on every assignment using at most two distinct values.
pub fn absorption_two_value_check(g: &Groupoid, t: &Term, target: usize, var_count: usize) -> Result<bool> {
    if target >= var_count || t.var_count() > var_count {
        return Err(Error::Precondition("variable out of range".to_string()));
    }
    let n = g.size();
    let mut assignment = vec![0; var_count];
    for u in 0..n {
        for v in u..n {
            for mask in 0u64..(1u64 << var_count) {
                for (i, slot) in assignment.iter_mut().enumerate() {
                    *slot = if mask >> i & 1 == 1 { v } else { u };
                }
                if t.eval(g, &assignment)? != assignment[target] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn is_quasigroup(g: &Groupoid) -> bool {
    let n = g.size();
    (0..n).all(|a| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for b in 0..n {
            row[g.op(a, b)] = true;
            col[g.op(b, a)] = true;
        }
        row.iter().chain(&col).all(|&h| h)
    })
}

fn is_prime_power(n: usize) -> bool {
    (2..=n).find(|&d| n % d == 0).is_some_and(|p| {
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    })
}

// ---------------------------------------------------------------- classification

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Given,
    Swapped,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MeldCertificate {
    pub graph_valid: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rectangular_band: Option<RectBandDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_cyclic: Option<PCyclicCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_semilattice: Option<PartialSemilatticeCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meld: Option<MeldCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dispersive: Option<DispersiveReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub size: usize,
    pub is_projection_algebra: bool,
    pub taylor: bool,
    pub orientation: Orientation,
    pub tags: Vec<Tag>,
    pub certificates: Certificates,
}

impl Classification {
    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }

    /// Sorted tags joined by `+`, or `projection`.
    pub fn signature(&self) -> String {
        if self.is_projection_algebra {
            return "projection".to_string();
        }
        let mut names: Vec<String> = self.tags.iter().map(|t| t.to_string()).collect();
        names.sort();
        names.join("+")
    }
}

/// Rectangular band, p-cyclic, meld and dispersive checks for one orientation.
fn category_tags(g: &Groupoid, certs: &mut Certificates) -> Vec<Tag> {
    let mut tags = Vec::new();
    if is_rectangular_band(g) {
        tags.push(Tag::RectangularBand);
        certs.rectangular_band = rect_band_decompose(g).ok();
    }
    if let Some(c) = detect_p_cyclic(g) {
        tags.push(Tag::PCyclic(c.p as u32));
        certs.p_cyclic = Some(c);
    }
    if is_meld(g) {
        tags.push(Tag::Meld);
        certs.meld = Some(MeldCertificate { graph_valid: meld_graph_valid(g) });
    }
    let d = is_dispersive(g);
    if d.dispersive {
        tags.push(Tag::Dispersive);
        certs.dispersive = Some(d);
    }
    tags
}

pub fn classify(g: &Groupoid) -> Result<Classification> {
    if !g.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let taylor = !g.has_two_element_projection_subquotient();
    let mut c = Classification {
        size: g.size(),
        is_projection_algebra: g.is_projection_algebra(),
        taylor,
        orientation: Orientation::Given,
        tags: Vec::new(),
        certificates: Certificates::default(),
    };
    if c.is_projection_algebra {
        return Ok(c);
    }
    let ps = find_partial_semilattice_term(g);
    if taylor {
        let spiral = is_spiral(g);
        if spiral {
            c.tags.push(Tag::Spiral);
        }
        let affine = ps.is_none() && is_quasigroup(g) && is_prime_power(g.size());
        if affine {
            c.tags.push(Tag::AffineCandidate);
        } else if ps.is_none() && !spiral {
            c.tags.push(Tag::MajorityCandidate);
        }
    } else {
        let mut certs = Certificates::default();
        let mut tags = category_tags(g, &mut certs);
        if tags.is_empty() {
            let mut swapped_certs = Certificates::default();
            let swapped = category_tags(&g.transpose(), &mut swapped_certs);
            if !swapped.is_empty() {
                c.orientation = Orientation::Swapped;
                tags = swapped;
                certs = swapped_certs;
            }
        }
        c.tags = tags;
        c.certificates = certs;
    }
    if let Some(cert) = ps {
        c.tags.push(Tag::PartialSemilatticeTerm);
        c.certificates.partial_semilattice = Some(cert);
    }
    if c.tags.is_empty() {
        c.tags.push(Tag::Unclassified);
    }
    c.tags.sort();
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_isomorphic;
    use crate::zoo;

    fn max2() -> Groupoid {
        Groupoid::from_fn(2, |a, b| a.max(b))
    }

    #[test]
    fn rectangular_bands() {
        let rb = zoo::free_rect_band2();
        assert!(is_rectangular_band(&rb) && rect_band_absorption_equivalent(&rb));
        let d = rect_band_decompose(&rb).unwrap();
        assert_eq!((d.left_size, d.right_size), (2, 2));
        assert!(is_isomorphic(&d.left.product(&d.right), &rb.clone().without_names()).is_some());
        let m = d.product_map();
        assert!(is_homomorphism(&rb, &d.left.product(&d.right), &m));
        let pi = Groupoid::from_fn(3, |a, _| a);
        let d = rect_band_decompose(&pi).unwrap();
        assert_eq!((d.left_size, d.right_size), (3, 1));
        let fd = zoo::fd_free();
        assert!(!is_rectangular_band(&fd) && !rect_band_absorption_equivalent(&fd));
        assert_eq!(fd.op(fd.op(0, 1), fd.op(0, 0)), 2);
        assert!(rect_band_decompose(&fd).is_err());
    }

    #[test]
    fn p_cyclic_detection() {
        let c2 = zoo::free_2cyclic2();
        let cert = detect_p_cyclic(&c2).unwrap();
        assert_eq!(cert.p, 2);
        assert_eq!(cert.orbits, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(cert.vectors[0][1], Some(vec![1]));
        assert_eq!(cert.rebuild().unwrap(), c2.without_names());
        let c3 = zoo::free_p_cyclic(3, 2).unwrap();
        let cert = detect_p_cyclic(&c3).unwrap();
        assert_eq!(cert.p, 3);
        assert_eq!(cert.orbits.iter().map(|o| o.len()).collect::<Vec<_>>(), vec![3, 3]);
        assert!(detect_p_cyclic(&max2()).is_none());
    }

    #[test]
    fn partial_semilattices() {
        assert!(is_partial_semilattice(&zoo::free_partial_semi2()));
        assert!(is_partial_semilattice(&max2()));
        assert!(!is_partial_semilattice(&zoo::free_meld2()));
        let m = TermTable::basic(&max2());
        assert_eq!(extract_partial_semilattice(&m), Some(m));
        let ps = zoo::free_partial_semi2();
        let s = extract_partial_semilattice(&TermTable::basic(&ps)).unwrap();
        assert_eq!(s.at(0, 1), 2);
        assert!(extract_partial_semilattice(&TermTable::basic(&zoo::fd_free())).is_none());
    }

    #[test]
    fn melds() {
        for (g, want) in [(zoo::free_meld2(), true), (zoo::fd_free(), false), (Groupoid::from_fn(3, |a, _| a), true)] {
            assert_eq!(is_meld(&g), want);
            assert_eq!(meld_absorption_equivalent(&g), want);
        }
        assert!(meld_graph_valid(&zoo::free_meld2()));
        assert!(!meld_graph_valid(&zoo::free_rect_band2()));
        assert!(meld_graph_valid(&Groupoid::new(vec![vec![0]]).unwrap()));
    }

    #[test]
    fn dispersive_checks() {
        let fd = zoo::fd_free();
        assert_eq!(dispersive_hom_check(&fd, 0, 1).unwrap(), Some(vec![0, 1, 2, 3]));
        let h1 = zoo::hoop(1, false);
        let p = pair_algebra(&h1, 0, 1);
        assert!(dispersive_hom_check(&p.groupoid, 0, 1).unwrap().is_some());
        assert_eq!(dispersive_hom_check(&zoo::free_meld2(), 0, 1).unwrap(), None);
        assert!(dispersive_hom_check(&fd, 0, 2).is_err());
        for g in [fd.clone(), zoo::hoop(1, false), zoo::hoop(2, false), zoo::hoop(3, false), zoo::wheel_a(2, 0).unwrap(), zoo::wheel_s(2).unwrap()] {
            let r = is_dispersive(&g);
            assert!(r.dispersive, "{g:?}");
            assert_eq!(r.disagreements(), 0);
        }
        assert!(!is_dispersive(&zoo::free_meld2()).dispersive);
        assert!(is_dispersive(&zoo::a_n_dispersive(2)).dispersive);
    }

    #[test]
    fn inert() {
        for k in 0..3 {
            assert!(is_inert_dispersive(&zoo::wheel_a(3, k).unwrap()));
        }
        assert!(!is_inert_dispersive(&zoo::hoop(2, false)));
        assert!(is_inert_dispersive(&zoo::fd_free()));
    }

    #[test]
    fn spirals() {
        assert!(is_spiral(&max2()));
        assert!(!is_spiral(&zoo::free_meld2()));
        let free_semilattice = Groupoid::new(vec![vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]]).unwrap();
        assert!(is_spiral(&free_semilattice));
    }

    #[test]
    fn minimality_probe() {
        assert!(binary_reduct_minimality_check(&zoo::hoop(1, false)).unwrap());
        assert!(!binary_reduct_minimality_check(&zoo::a_n_dispersive(2)).unwrap());
        assert!(binary_reduct_minimality_check(&Groupoid::from_fn(3, |a, _| a)).unwrap());
    }

    #[test]
    fn two_value_absorption() {
        let (x, y, z) = (var(0), var(1), var(2));
        assert!(absorption_two_value_check(&zoo::fd_free(), &x, 0, 3).unwrap());
        let t = mul(&x, &mul(&mul(&y, &x), &z));
        assert!(absorption_two_value_check(&zoo::free_meld2(), &t, 0, 3).unwrap());
        let probe = mul(&mul(&x, &y), &mul(&z, &x));
        assert!(!absorption_two_value_check(&zoo::fd_free(), &probe, 0, 3).unwrap());
    }

    #[test]
    fn classify_golden_tables() {
        let cases = [
            (zoo::free_rect_band2(), Tag::RectangularBand),
            (zoo::free_2cyclic2(), Tag::PCyclic(2)),
            (zoo::free_partial_semi2(), Tag::PartialSemilatticeTerm),
            (zoo::free_meld2(), Tag::Meld),
            (zoo::fd_free(), Tag::Dispersive),
        ];
        for (g, tag) in cases {
            let c = classify(&g).unwrap();
            assert!(!c.taylor);
            assert_eq!(c.tags, vec![tag], "{g:?}");
        }
    }

    #[test]
    fn classify_small_cases() {
        let c = classify(&max2()).unwrap();
        assert!(c.taylor);
        assert_eq!(c.tags, vec![Tag::PartialSemilatticeTerm, Tag::Spiral]);
        let c = classify(&zoo::wheel_s(2).unwrap()).unwrap();
        assert_eq!(c.tags, vec![Tag::Dispersive]);
        assert!(c.certificates.dispersive.unwrap().inert);
        let c = classify(&Groupoid::from_fn(2, |_, b| b)).unwrap();
        assert!(c.is_projection_algebra && c.tags.is_empty());
        assert_eq!(classify(&Groupoid::from_fn(2, |_, _| 0)).unwrap_err(), Error::NotIdempotent);
    }

    #[test]
    fn orientation_swap() {
        let g = zoo::free_meld2().transpose();
        let c = classify(&g).unwrap();
        assert_eq!(c.orientation, Orientation::Swapped);
        assert_eq!(c.tags, vec![Tag::Meld]);
    }
}
