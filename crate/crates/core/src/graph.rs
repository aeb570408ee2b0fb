//! k-uniform hypergraphs, degree statistics, standard constructions and
//! divisibility predicates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_integer::Integer;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A k-set of vertices, always stored sorted ascending.
pub type Edge = SmallVec<[Vertex; 6]>;

pub fn canonical(vs: &[Vertex]) -> Edge {
    let mut e: Edge = vs.iter().copied().collect();
    e.sort_unstable();
    e
}

fn all_distinct(sorted: &[Vertex]) -> bool {
    sorted.windows(2).all(|w| w[0] != w[1])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KGraph {
    k: usize,
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
}

impl KGraph {
    pub fn empty(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::RangeError(format!("uniformity {k} < 2")));
        }
        Ok(KGraph { k, vertices: BTreeSet::new(), edges: BTreeSet::new() })
    }

    /// Builds a graph whose vertex set is exactly the union of its edges.
    pub fn from_edges<I, E>(k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut g = KGraph::empty(k)?;
        for e in edges {
            let e = e.as_ref();
            g.vertices.extend(e.iter().copied());
            g.add_edge(e)?;
        }
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, vs: &[Vertex]) -> bool {
        vs.len() == self.k && self.edges.contains(&canonical(vs))
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    /// Adds an edge whose vertices are already present.
    pub fn add_edge(&mut self, vs: &[Vertex]) -> Result<()> {
        let e = canonical(vs);
        if e.len() != self.k || !all_distinct(&e) {
            return Err(Error::WrongArity(e.to_vec(), self.k));
        }
        if let Some(&v) = e.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        if !self.edges.insert(e.clone()) {
            return Err(Error::DuplicateEdge(e.to_vec()));
        }
        Ok(())
    }

    /// Adds an edge together with any missing vertices.
    pub fn insert_edge(&mut self, vs: &[Vertex]) -> Result<()> {
        self.vertices.extend(vs.iter().copied());
        self.add_edge(vs)
    }

    pub fn remove_edge(&mut self, vs: &[Vertex]) -> bool {
        self.edges.remove(&canonical(vs))
    }

    pub fn degree(&self, s: &[Vertex]) -> Result<usize> {
        if s.len() > self.k {
            return Err(Error::RangeError(format!("|S| = {} > k = {}", s.len(), self.k)));
        }
        let s = canonical(s);
        if !all_distinct(&s) {
            return Ok(0);
        }
        Ok(self.edges.iter().filter(|e| is_subset(&s, e)).count())
    }

    /// N(S) as (k-|S|)-sets, optionally restricted to completions inside `u`.
    pub fn neighborhood(&self, s: &[Vertex], u: Option<&BTreeSet<Vertex>>) -> Result<BTreeSet<Edge>> {
        if s.len() > self.k {
            return Err(Error::RangeError(format!("|S| = {} > k = {}", s.len(), self.k)));
        }
        let s = canonical(s);
        let mut out = BTreeSet::new();
        for e in self.edges.iter().filter(|e| is_subset(&s, e)) {
            let rest: Edge = e.iter().copied().filter(|v| !s.contains(v)).collect();
            if u.map_or(true, |u| rest.iter().all(|v| u.contains(v))) {
                out.insert(rest);
            }
        }
        Ok(out)
    }

    /// Degrees of all vertices, including isolated ones.
    pub fn vertex_degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut d: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for v in e {
                *d.get_mut(v).expect("edge vertex in vertex set") += 1;
            }
        }
        d
    }

    /// Nonzero degrees of all i-subsets that lie in some edge.
    pub fn subset_degrees(&self, i: usize) -> HashMap<Edge, usize> {
        let mut d = HashMap::new();
        for e in &self.edges {
            for s in e.iter().copied().combinations(i) {
                *d.entry(s.into_iter().collect()).or_insert(0) += 1;
            }
        }
        d
    }

    /// Completions of each (k-1)-set contained in an edge.
    pub fn link_map(&self) -> HashMap<Edge, Vec<Vertex>> {
        let mut m: HashMap<Edge, Vec<Vertex>> = HashMap::new();
        for e in &self.edges {
            for idx in 0..self.k {
                let s: Edge = e.iter().enumerate().filter(|&(j, _)| j != idx).map(|(_, &v)| v).collect();
                m.entry(s).or_default().push(e[idx]);
            }
        }
        for vs in m.values_mut() {
            vs.sort_unstable();
        }
        m
    }
}

pub(crate) fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

pub fn make_graph<I, E>(k: usize, vertices: impl IntoIterator<Item = Vertex>, edges: I) -> Result<KGraph>
where
    I: IntoIterator<Item = E>,
    E: AsRef<[Vertex]>,
{
    let mut g = KGraph::empty(k)?;
    g.vertices.extend(vertices);
    for e in edges {
        g.add_edge(e.as_ref())?;
    }
    Ok(g)
}

pub fn complete(n: usize, k: usize) -> Result<KGraph> {
    if n < k {
        return Err(Error::InvalidSize(format!("n = {n} < k = {k}")));
    }
    complete_on(&(0..n as Vertex).collect::<Vec<_>>(), k)
}

pub fn complete_on(vs: &[Vertex], k: usize) -> Result<KGraph> {
    let mut g = KGraph::empty(k)?;
    g.vertices.extend(vs.iter().copied());
    for c in vs.iter().copied().combinations(k) {
        g.add_edge(&c)?;
    }
    Ok(g)
}

/// All k-sets over A ∪ B meeting B in exactly i vertices.
pub fn split_graph(a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>, i: usize, k: usize) -> Result<KGraph> {
    if !a.is_disjoint(b) {
        return Err(Error::Overlap);
    }
    if i > k || a.len() < k - i || b.len() < i {
        return Err(Error::RangeError(format!("i = {i}, k = {k}, |A| = {}, |B| = {}", a.len(), b.len())));
    }
    let mut g = KGraph::empty(k)?;
    g.vertices.extend(a.iter().chain(b.iter()).copied());
    for ca in a.iter().copied().combinations(k - i) {
        for cb in b.iter().copied().combinations(i) {
            let e: Vec<Vertex> = ca.iter().chain(cb.iter()).copied().collect();
            g.add_edge(&e)?;
        }
    }
    Ok(g)
}

pub fn tight_cycle_graph(l: usize, k: usize) -> Result<KGraph> {
    if l <= k {
        return Err(Error::RangeError(format!("cycle length {l} <= k = {k}")));
    }
    let seq: Vec<Vertex> = (0..l as Vertex).collect();
    let mut g = KGraph::empty(k)?;
    g.vertices.extend(seq.iter().copied());
    for s in 0..l {
        let w: Vec<Vertex> = (0..k).map(|j| seq[(s + j) % l]).collect();
        g.add_edge(&w)?;
    }
    Ok(g)
}

pub fn tight_path_graph(l: usize, k: usize) -> Result<KGraph> {
    if l < k {
        return Err(Error::RangeError(format!("path order {l} < k = {k}")));
    }
    let mut g = KGraph::empty(k)?;
    g.vertices.extend(0..l as Vertex);
    for s in 0..=(l - k) {
        let w: Vec<Vertex> = (s..s + k).map(|v| v as Vertex).collect();
        g.add_edge(&w)?;
    }
    Ok(g)
}

fn binomial_u128(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for j in 0..r {
        acc = acc.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    acc
}

fn check_index(h: &KGraph, i: usize) -> Result<()> {
    if i >= h.k {
        return Err(Error::RangeError(format!("i = {i} must be < k = {}", h.k)));
    }
    Ok(())
}

/// δ_i(H): minimum degree over all i-subsets of V(H).
pub fn min_degree(h: &KGraph, i: usize) -> Result<usize> {
    check_index(h, i)?;
    if i == 0 {
        return Ok(h.edge_count());
    }
    let d = h.subset_degrees(i);
    if (d.len() as u128) < binomial_u128(h.vertex_count(), i) {
        return Ok(0);
    }
    Ok(d.values().copied().min().unwrap_or(0))
}

/// Δ_i(H): maximum degree over all i-subsets of V(H).
pub fn max_degree(h: &KGraph, i: usize) -> Result<usize> {
    check_index(h, i)?;
    if i == 0 {
        return Ok(h.edge_count());
    }
    Ok(h.subset_degrees(i).values().copied().max().unwrap_or(0))
}

/// δ^{(r)}(H, U): the minimum, over r distinct (k-1)-subsets of V(H), of the
/// size of their common neighbourhood inside U (all of V(H) when U is None).
pub fn delta_r(h: &KGraph, r: usize, u: Option<&BTreeSet<Vertex>>) -> Result<usize> {
    if r == 0 {
        return Err(Error::RangeError("r must be at least 1".into()));
    }
    let k = h.k;
    let n = h.vertex_count();
    let total = binomial_u128(n, k - 1);
    if total < r as u128 {
        return Err(Error::Degenerate(r));
    }
    let index: HashMap<Vertex, usize> = h.vertices.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let words = n.div_ceil(64).max(1);
    let mut u_mask = vec![0u64; words];
    for &v in h.vertices.iter().filter(|v| u.map_or(true, |u| u.contains(v))) {
        let j = index[&v];
        u_mask[j / 64] |= 1 << (j % 64);
    }
    let mut nbhd: HashMap<Edge, Vec<u64>> = HashMap::new();
    for (s, comps) in h.link_map() {
        let mut bits = vec![0u64; words];
        for v in comps {
            let j = index[&v];
            bits[j / 64] |= 1 << (j % 64);
        }
        for (b, m) in bits.iter_mut().zip(&u_mask) {
            *b &= m;
        }
        nbhd.insert(s, bits);
    }
    // Any (k-1)-set outside every edge has an empty neighbourhood.
    if (nbhd.len() as u128) < total {
        return Ok(0);
    }
    let mut sets: Vec<(usize, Vec<u64>)> = nbhd
        .into_values()
        .map(|b| (b.iter().map(|w| w.count_ones() as usize).sum(), b))
        .collect();
    sets.sort();
    let usize_u = u_mask.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    if r == 1 {
        return Ok(sets[0].0);
    }
    if r == 2 {
        let mut best = usize::MAX;
        for a in 0..sets.len() {
            if a + 1 < sets.len() && (sets[a].0 + sets[a + 1].0).saturating_sub(usize_u) >= best {
                break;
            }
            for b in (a + 1)..sets.len() {
                if (sets[a].0 + sets[b].0).saturating_sub(usize_u) >= best {
                    break;
                }
                let c: usize = sets[a].1.iter().zip(&sets[b].1).map(|(x, y)| (x & y).count_ones() as usize).sum();
                best = best.min(c);
                if best == 0 {
                    return Ok(0);
                }
            }
        }
        return Ok(best);
    }
    let mut best = usize::MAX;
    for combo in (0..sets.len()).combinations(r) {
        let mut acc = sets[combo[0]].1.clone();
        for &j in &combo[1..] {
            for (a, b) in acc.iter_mut().zip(&sets[j].1) {
                *a &= b;
            }
        }
        best = best.min(acc.iter().map(|w| w.count_ones() as usize).sum());
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityProfile {
    pub values: Vec<u64>,
}

impl DivisibilityProfile {
    /// True when `d` is divisible by div_i; a zero divisor admits everything.
    pub fn admits(&self, i: usize, d: u64) -> bool {
        let m = self.values[i];
        m == 0 || d % m == 0
    }
}

pub fn divisibility_profile(f: &KGraph) -> DivisibilityProfile {
    let values = (0..f.k)
        .map(|i| {
            if i == 0 {
                return f.edge_count() as u64;
            }
            f.subset_degrees(i).values().fold(0u64, |g, &d| g.gcd(&(d as u64)))
        })
        .collect();
    DivisibilityProfile { values }
}

pub fn is_f_divisible(h: &KGraph, f: &KGraph) -> Result<bool> {
    if h.k != f.k {
        return Err(Error::UniformityMismatch(h.k, f.k));
    }
    let p = divisibility_profile(f);
    if !p.admits(0, h.edge_count() as u64) {
        return Ok(false);
    }
    for i in 1..h.k {
        if !h.subset_degrees(i).values().all(|&d| p.admits(i, d as u64)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_cycle_divisible(h: &KGraph, l: usize) -> bool {
    h.edge_count() % l == 0 && h.vertex_degrees().values().all(|d| d % h.k == 0)
}

pub fn is_path_divisible(h: &KGraph, l: usize) -> bool {
    l >= h.k && h.edge_count() % (l - h.k + 1) == 0
}

fn check_same_k(h: &KGraph, g: &KGraph) -> Result<()> {
    if h.k != g.k {
        return Err(Error::UniformityMismatch(h.k, g.k));
    }
    Ok(())
}

pub fn induced(h: &KGraph, u: &BTreeSet<Vertex>) -> KGraph {
    KGraph {
        k: h.k,
        vertices: h.vertices.intersection(u).copied().collect(),
        edges: h.edges.iter().filter(|e| e.iter().all(|v| u.contains(v))).cloned().collect(),
    }
}

pub fn remove_vertices(h: &KGraph, u: &BTreeSet<Vertex>) -> KGraph {
    let keep: BTreeSet<Vertex> = h.vertices.difference(u).copied().collect();
    induced(h, &keep)
}

/// H - G: drop the edges of G, keep the vertex set of H.
pub fn minus(h: &KGraph, g: &KGraph) -> Result<KGraph> {
    check_same_k(h, g)?;
    Ok(KGraph { k: h.k, vertices: h.vertices.clone(), edges: h.edges.difference(&g.edges).cloned().collect() })
}

/// H ∪ G; in strict mode a shared edge is an error.
pub fn union(h: &KGraph, g: &KGraph, strict: bool) -> Result<KGraph> {
    check_same_k(h, g)?;
    let mut out = h.clone();
    out.vertices.extend(g.vertices.iter().copied());
    for e in &g.edges {
        if !out.edges.insert(e.clone()) && strict {
            return Err(Error::EdgeCollision(e.to_vec()));
        }
    }
    Ok(out)
}

/// G + qF: G together with q vertex-disjoint copies of F on new vertices.
/// Returns the graph and, per copy, the relabelling of F's vertices.
pub fn disjoint_union_with_copies(g: &KGraph, q: usize, f: &KGraph) -> Result<(KGraph, Vec<BTreeMap<Vertex, Vertex>>)> {
    check_same_k(g, f)?;
    let mut out = g.clone();
    let mut next = g.vertices.iter().next_back().map_or(0, |&v| v + 1);
    let mut maps = Vec::with_capacity(q);
    for _ in 0..q {
        let map: BTreeMap<Vertex, Vertex> = f
            .vertices
            .iter()
            .map(|&v| {
                let w = next;
                next += 1;
                (v, w)
            })
            .collect();
        out.vertices.extend(map.values().copied());
        for e in &f.edges {
            let img: Vec<Vertex> = e.iter().map(|v| map[v]).collect();
            out.add_edge(&img)?;
        }
        maps.push(map);
    }
    Ok((out, maps))
}

/// Image of H under a vertex map; `None` if some edge collapses.
pub fn image(h: &KGraph, phi: &dyn Fn(Vertex) -> Vertex) -> Option<Vec<Edge>> {
    let mut out = Vec::with_capacity(h.edge_count());
    for e in &h.edges {
        let img = canonical(&e.iter().map(|&v| phi(v)).collect::<Vec<_>>());
        if !all_distinct(&img) {
            return None;
        }
        out.push(img);
    }
    Some(out)
}

/// Checks that φ maps the edges of G bijectively onto the edges of G'.
pub fn check_edge_bijective(g: &KGraph, g2: &KGraph, phi: &dyn Fn(Vertex) -> Vertex) -> Result<()> {
    check_same_k(g, g2)?;
    let img = image(g, phi).ok_or_else(|| Error::NotHomomorphism("an edge collapses".into()))?;
    let set: BTreeSet<Edge> = img.iter().cloned().collect();
    if set.len() != img.len() {
        return Err(Error::NotHomomorphism("two edges share an image".into()));
    }
    if &set != g2.edges() {
        return Err(Error::NotHomomorphism("image differs from the target edge set".into()));
    }
    Ok(())
}
