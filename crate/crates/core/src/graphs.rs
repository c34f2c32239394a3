//! Circulant graphs on `Z_n`, all-pairs BFS and the structural predicates
//! (bipartite, complete, crown, distance-regular, strongly regular).

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::arith::{gcd, units};
use crate::error::{Error, Result};

/// Symmetric subset of `Z_n \ {0}` describing the first row of a 0/1
/// circulant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: usize,
    elems: Vec<usize>,
}

impl ConnectionSet {
    /// Validates range, absence of `0` and closure under negation.
    pub fn new(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let mut elems: Vec<usize> = elems.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::InvalidConnectionSet(format!("{bad} is not in 1..{n}")));
        }
        let cs = ConnectionSet { n, elems };
        if let Some(&s) = cs.elems.iter().find(|&&s| !cs.contains(n - s)) {
            return Err(Error::InvalidConnectionSet(format!(
                "{s} is present but {} is not",
                n - s
            )));
        }
        Ok(cs)
    }

    pub fn empty(n: usize) -> Self {
        ConnectionSet { n, elems: Vec::new() }
    }

    /// The connection set of `X_d^n = Cay(Z_n, U_d)`, namely
    /// `{(n/d) k mod n : k in U_d}`.
    ///
    /// For `d = 1` the single element is `0`, i.e. `A_1 = I`. Graphs are
    /// loop-free, so the returned set is empty; [`crate::coherent`] tracks
    /// the identity separately.
    pub fn unitary(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Zero);
        }
        if !n.is_multiple_of(d) {
            return Err(Error::NotADivisor { n: n as u64, d: d as u64 });
        }
        let step = n / d;
        let elems = units(d as u64)
            .into_iter()
            .map(|k| (step * k as usize) % n)
            .filter(|&s| s != 0);
        ConnectionSet::new(n, elems)
    }

    /// `{1, n - 1}`; the cycle `C_n` for `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        ConnectionSet::new(n, [1, n - 1].into_iter().filter(|&s| s != 0 && s < n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.elems.binary_search(&s).is_ok()
    }

    pub fn is_disjoint(&self, other: &ConnectionSet) -> bool {
        self.elems.iter().all(|&s| !other.contains(s))
    }

    pub fn union(&self, other: &ConnectionSet) -> ConnectionSet {
        assert_eq!(self.n, other.n, "connection sets of different orders");
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        elems.sort_unstable();
        elems.dedup();
        ConnectionSet { n: self.n, elems }
    }

    /// `a_ij = 1` iff `(j - i) mod n` is in the set.
    pub fn materialize(&self) -> DenseGraph {
        let mut g = DenseGraph::new(self.n);
        for i in 0..self.n {
            for &s in &self.elems {
                g.set(i, (i + s) % self.n);
            }
        }
        g
    }
}

/// The unitary Cayley graph `X_n`.
pub fn unitary_graph(n: usize) -> Result<DenseGraph> {
    Ok(ConnectionSet::unitary(n, n)?.materialize())
}

/// Simple undirected graph with bit-packed adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        DenseGraph { n, words, bits: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = DenseGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::InvalidConnectionSet(format!("bad edge ({u}, {v})")));
        }
        self.set(u, v);
        self.set(v, u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    /// 0/1 adjacency matrix as rows of `i64`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| i64::from(self.has_edge(u, v))).collect())
            .collect()
    }

    /// Recovers the connection set if every row is the previous one
    /// shifted right by one position.
    pub fn circulant_connection_set(&self) -> Result<ConnectionSet> {
        let first: Vec<usize> = self.neighbors(0).collect();
        for u in 1..self.n {
            let row: Vec<usize> = self.neighbors(u).collect();
            let mut shifted: Vec<usize> = first.iter().map(|&s| (s + u) % self.n).collect();
            shifted.sort_unstable();
            if row != shifted {
                return Err(Error::NotCirculant);
            }
        }
        ConnectionSet::new(self.n, first)
    }

    /// One `"u v"` line per edge, `u < v`, in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                writeln!(out, "{u} {v}").unwrap();
            }
        }
        out
    }

    /// Parses [`DenseGraph::to_edge_list`] output; blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_edge_list(n: usize, text: &str) -> Result<Self> {
        let mut g = DenseGraph::new(n);
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| Error::EdgeList { line: idx + 1, reason: reason.to_string() };
            let mut parts = line.split_whitespace().map(str::parse::<usize>);
            let (Some(Ok(u)), Some(Ok(v)), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected two vertex indices"));
            };
            g.add_edge(u, v).map_err(|_| err("vertex out of range or loop"))?;
        }
        Ok(g)
    }
}

/// Marker for unreachable pairs in a [`DistanceProfile`].
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    n: usize,
    dist: Vec<u32>,
    /// `None` when the graph is disconnected.
    pub diameter: Option<u32>,
}

impl DistanceProfile {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn is_connected(&self) -> bool {
        self.diameter.is_some()
    }
}

pub fn bfs_all_pairs(g: &DenseGraph) -> DistanceProfile {
    let n = g.order();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for src in 0..n {
        let row = &mut dist[src * n..(src + 1) * n];
        row[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for v in g.neighbors(u) {
                if row[v] == UNREACHABLE {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let diameter = if dist.contains(&UNREACHABLE) {
        None
    } else {
        Some(dist.iter().copied().max().unwrap_or(0))
    };
    DistanceProfile { n, dist, diameter }
}

/// BFS 2-colouring, each component rooted with colour 0.
fn two_colouring(g: &DenseGraph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut colour = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if colour[root] != u8::MAX {
            continue;
        }
        colour[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

pub fn is_bipartite(g: &DenseGraph) -> bool {
    two_colouring(g).is_some()
}

pub fn is_complete(g: &DenseGraph) -> bool {
    let n = g.order();
    (0..n).all(|u| g.degree(u) == n - 1)
}

pub fn is_complete_bipartite(g: &DenseGraph) -> bool {
    let Some(colour) = two_colouring(g) else {
        return false;
    };
    if !bfs_all_pairs(g).is_connected() {
        return false;
    }
    let a = colour.iter().filter(|&&c| c == 0).count();
    let b = g.order() - a;
    a > 0 && b > 0 && g.edge_count() == a * b
}

/// `K_{m,m}` minus a perfect matching, `m >= 2`.
pub fn is_crown(g: &DenseGraph) -> bool {
    let Some(colour) = two_colouring(g) else {
        return false;
    };
    let n = g.order();
    let m = colour.iter().filter(|&&c| c == 0).count();
    if m < 2 || 2 * m != n {
        return false;
    }
    (0..n).all(|u| {
        let opposite = (0..n).filter(|&v| colour[v] != colour[u]);
        let missing = opposite.filter(|&v| !g.has_edge(u, v)).count();
        g.degree(u) == m - 1 && missing == 1
    })
}

/// `{b_0, ..., b_{D-1}; c_1, ..., c_D}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrVerdict {
    DistanceRegular(IntersectionArray),
    NotDistanceRegular,
    Disconnected,
}

impl DrVerdict {
    pub fn is_distance_regular(&self) -> bool {
        matches!(self, DrVerdict::DistanceRegular(_))
    }

    pub fn intersection_array(&self) -> Option<&IntersectionArray> {
        match self {
            DrVerdict::DistanceRegular(a) => Some(a),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrCheck {
    /// Neighbour-shell counts `(c_j, a_j, b_j)`.
    #[default]
    Shell,
    /// Every intersection number `p^k_ij`.
    Strict,
}

pub fn is_distance_regular(g: &DenseGraph) -> DrVerdict {
    is_distance_regular_with(g, DrCheck::Shell)
}

pub fn is_distance_regular_with(g: &DenseGraph, check: DrCheck) -> DrVerdict {
    let prof = bfs_all_pairs(g);
    let Some(diam) = prof.diameter else {
        return DrVerdict::Disconnected;
    };
    let diam = diam as usize;
    let n = g.order();

    // shell[j] = (c_j, a_j, b_j)
    let mut shell: Vec<Option<(usize, usize, usize)>> = vec![None; diam + 1];
    for u in 0..n {
        for v in 0..n {
            let j = prof.get(u, v);
            let mut counts = (0, 0, 0);
            for w in g.neighbors(v) {
                match prof.get(u, w) as i64 - j as i64 {
                    -1 => counts.0 += 1,
                    0 => counts.1 += 1,
                    1 => counts.2 += 1,
                    _ => unreachable!("neighbours differ in distance by at most one"),
                }
            }
            match &shell[j as usize] {
                None => shell[j as usize] = Some(counts),
                Some(prev) if *prev != counts => return DrVerdict::NotDistanceRegular,
                Some(_) => {}
            }
        }
    }

    if check == DrCheck::Strict && !intersection_numbers_constant(&prof, n, diam) {
        return DrVerdict::NotDistanceRegular;
    }

    let shell: Vec<(usize, usize, usize)> = shell.into_iter().map(Option::unwrap).collect();
    DrVerdict::DistanceRegular(IntersectionArray {
        b: shell[..diam].iter().map(|s| s.2).collect(),
        c: shell[1..].iter().map(|s| s.0).collect(),
    })
}

fn intersection_numbers_constant(prof: &DistanceProfile, n: usize, diam: usize) -> bool {
    let side = diam + 1;
    let mut reference: Vec<Option<Vec<usize>>> = vec![None; side];
    let mut counts = vec![0usize; side * side];
    for u in 0..n {
        for v in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for w in 0..n {
                counts[prof.get(u, w) as usize * side + prof.get(w, v) as usize] += 1;
            }
            let k = prof.get(u, v) as usize;
            match &reference[k] {
                None => reference[k] = Some(counts.clone()),
                Some(r) if *r != counts => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// Parameters `(n, k, lambda, mu)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Regular, diameter exactly 2, constant common-neighbour counts on edges
/// and on non-edges. Complete graphs are excluded by the diameter condition.
pub fn is_strongly_regular_combinatorial(g: &DenseGraph) -> Option<SrgParams> {
    let k = g.regular_degree()?;
    if bfs_all_pairs(g).diameter != Some(2) {
        return None;
    }
    let n = g.order();
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in (u + 1)..n {
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            let c = g.common_neighbors(u, v);
            match *slot {
                None => *slot = Some(c),
                Some(prev) if prev != c => return None,
                Some(_) => {}
            }
        }
    }
    Some(SrgParams { n, k, lambda: lambda?, mu: mu? })
}

/// Orbits of `Z_n \ {0}` under multiplication by units, keyed by
/// `gcd(s, n)`.
pub fn unit_orbits(n: usize) -> BTreeMap<usize, Vec<usize>> {
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in 1..n {
        orbits.entry(gcd(s as u64, n as u64) as usize).or_default().push(s);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_connection_sets() {
        assert_eq!(ConnectionSet::unitary(6, 6).unwrap().elems(), &[1, 5]);
        assert_eq!(ConnectionSet::unitary(12, 3).unwrap().elems(), &[4, 8]);
        assert_eq!(ConnectionSet::unitary(10, 2).unwrap().elems(), &[5]);
        assert!(ConnectionSet::unitary(10, 1).unwrap().is_empty());
        assert_eq!(
            ConnectionSet::unitary(12, 5),
            Err(Error::NotADivisor { n: 12, d: 5 })
        );
    }

    #[test]
    fn connection_set_validation() {
        assert!(ConnectionSet::new(8, [1]).is_err());
        assert!(ConnectionSet::new(8, [0]).is_err());
        assert!(ConnectionSet::new(8, [9]).is_err());
        assert_eq!(ConnectionSet::new(8, [7, 1, 1]).unwrap().elems(), &[1, 7]);
    }

    #[test]
    fn materialized_shapes() {
        let x6 = unitary_graph(6).unwrap();
        assert_eq!(x6, ConnectionSet::cycle(6).unwrap().materialize());
        assert!(is_complete(&unitary_graph(7).unwrap()));
        let x8 = unitary_graph(8).unwrap();
        assert!(is_complete_bipartite(&x8));
        assert_eq!(x8.edge_count(), 16);
    }

    #[test]
    fn distances() {
        let k5 = unitary_graph(5).unwrap();
        assert_eq!(bfs_all_pairs(&k5).diameter, Some(1));
        assert_eq!(bfs_all_pairs(&unitary_graph(6).unwrap()).diameter, Some(3));
        assert_eq!(bfs_all_pairs(&unitary_graph(16).unwrap()).diameter, Some(2));
        let split = ConnectionSet::unitary(10, 2).unwrap().materialize();
        assert_eq!(bfs_all_pairs(&split).diameter, None);
    }

    #[test]
    fn structural_predicates() {
        assert!(is_crown(&unitary_graph(10).unwrap()));
        assert!(!is_crown(&unitary_graph(4).unwrap()));
        assert!(!is_crown(&unitary_graph(2).unwrap()));
        assert!(!is_bipartite(&unitary_graph(9).unwrap()));
        assert!(is_complete_bipartite(&unitary_graph(8).unwrap()));
        assert!(!is_complete_bipartite(&unitary_graph(12).unwrap()));
        assert!(is_complete(&unitary_graph(2).unwrap()));
    }

    #[test]
    fn distance_regular_examples() {
        let v = is_distance_regular(&unitary_graph(9).unwrap());
        assert_eq!(v.intersection_array().unwrap(), &IntersectionArray { b: vec![6, 2], c: vec![1, 6] });
        let hexagon = is_distance_regular(&unitary_graph(6).unwrap());
        assert_eq!(hexagon.intersection_array().unwrap(), &IntersectionArray { b: vec![2, 1, 1], c: vec![1, 1, 2] });
        assert_eq!(is_distance_regular(&unitary_graph(12).unwrap()), DrVerdict::NotDistanceRegular);
        let split = ConnectionSet::unitary(10, 2).unwrap().materialize();
        assert_eq!(is_distance_regular(&split), DrVerdict::Disconnected);
    }

    #[test]
    fn strict_check_agrees_with_shell_check() {
        for n in 2..=30 {
            let g = unitary_graph(n).unwrap();
            assert_eq!(
                is_distance_regular(&g),
                is_distance_regular_with(&g, DrCheck::Strict),
                "n = {n}"
            );
        }
    }

    #[test]
    fn strongly_regular_examples() {
        assert_eq!(
            is_strongly_regular_combinatorial(&unitary_graph(4).unwrap()),
            Some(SrgParams { n: 4, k: 2, lambda: 0, mu: 2 })
        );
        assert_eq!(is_strongly_regular_combinatorial(&unitary_graph(12).unwrap()), None);
        assert_eq!(is_strongly_regular_combinatorial(&unitary_graph(6).unwrap()), None);
        assert_eq!(is_strongly_regular_combinatorial(&unitary_graph(7).unwrap()), None);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = unitary_graph(6).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n");
        assert_eq!(DenseGraph::from_edge_list(6, &text).unwrap(), g);
        assert!(matches!(
            DenseGraph::from_edge_list(3, "0 1\n1 x\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
    }

    #[test]
    fn circulant_detection() {
        let g = unitary_graph(12).unwrap();
        assert_eq!(g.circulant_connection_set().unwrap().elems(), &[1, 5, 7, 11]);
        let path = DenseGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.circulant_connection_set(), Err(Error::NotCirculant));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let g = unitary_graph(130).unwrap();
        assert_eq!(g.regular_degree(), Some(48));
        assert!(g.neighbors(0).all(|v| gcd(v as u64, 130) == 1));
    }
}
