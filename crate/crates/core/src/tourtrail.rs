//! Tour-trail decompositions and their residual calculus.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{canonical, Edge, KGraph, Vertex};
use crate::walks::{reverse, Tuple, Walk};

/// A partition of the host's edges into tours and trails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourTrailDecomposition {
    pub host: KGraph,
    pub walks: Vec<Walk>,
}

impl TourTrailDecomposition {
    /// Checks that the window edges of `walks` partition E(host).
    pub fn new(host: KGraph, walks: Vec<Walk>) -> Result<Self> {
        check_partition(&host, &walks)?;
        Ok(TourTrailDecomposition { host, walks })
    }

    /// Takes the host to be exactly the union of the walks, which must be edge-disjoint.
    pub fn from_walks(k: usize, walks: Vec<Walk>) -> Result<Self> {
        let mut host = KGraph::empty(k)?;
        for w in &walks {
            if w.k() != k {
                return Err(Error::UniformityMismatch(w.k(), k));
            }
            for win in w.windows() {
                host.insert_edge(win).map_err(|_| Error::EdgeCollision(canonical(win).to_vec()))?;
            }
        }
        Ok(TourTrailDecomposition { host, walks })
    }

    pub fn k(&self) -> usize {
        self.host.k()
    }

    pub fn residual(&self) -> Residual {
        Residual::of_walks(&self.walks)
    }
}

pub fn check_partition(host: &KGraph, walks: &[Walk]) -> Result<()> {
    let mut seen: HashSet<Edge> = HashSet::with_capacity(host.edge_count());
    for w in walks {
        if w.k() != host.k() {
            return Err(Error::UniformityMismatch(w.k(), host.k()));
        }
        for win in w.windows() {
            let e = canonical(win);
            if !host.edges().contains(&e) {
                return Err(Error::NotAnEdge(win.to_vec()));
            }
            if !seen.insert(e) {
                return Err(Error::EdgeCollision(win.to_vec()));
            }
        }
    }
    if seen.len() != host.edge_count() {
        let missing = host.edges().iter().find(|e| !seen.contains(*e)).expect("some edge uncovered");
        return Err(Error::InternalCheck(format!("edge {missing:?} not covered")));
    }
    Ok(())
}

/// One single-edge trail per edge, in the given vertex order (ascending by default).
pub fn trivial_decomposition(h: &KGraph, orientation: Option<&dyn Fn(&Edge) -> Vec<Vertex>>) -> Result<TourTrailDecomposition> {
    let walks = h
        .edges()
        .iter()
        .map(|e| {
            let seq = orientation.map_or_else(|| e.to_vec(), |f| f(e));
            if canonical(&seq) != *e {
                return Err(Error::InternalCheck(format!("orientation {seq:?} is not a permutation of {e:?}")));
            }
            Walk::new(h.k(), seq, false)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TourTrailDecomposition { host: h.clone(), walks })
}

/// The residual multiset D(𝒯), kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Residual {
    tuples: Vec<Tuple>,
}

impl Residual {
    pub fn new(mut tuples: Vec<Tuple>) -> Self {
        tuples.sort();
        Residual { tuples }
    }

    pub fn of_walks(walks: &[Walk]) -> Self {
        Residual::new(walks.iter().filter_map(|w| w.ends().ok()).flatten().collect())
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<&Tuple, usize> {
        let mut m = BTreeMap::new();
        for t in &self.tuples {
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }

    /// The multiset left once every pair {y, y^{-1}} is cancelled. It does not
    /// depend on the order of cancellation.
    pub fn reduced(&self) -> Residual {
        let counts = self.counts();
        let mut out = Vec::new();
        for (&y, &c) in &counts {
            let ry = reverse(y);
            let keep = if ry == *y {
                c % 2
            } else {
                c.saturating_sub(counts.get(&ry).copied().unwrap_or(0))
            };
            out.extend(std::iter::repeat_n(y.clone(), keep));
        }
        Residual::new(out)
    }

    /// p_i(v) for every vertex and position i ∈ 1..k-1 (index 0 unused).
    pub fn p_table(&self, k: usize) -> HashMap<Vertex, Vec<i64>> {
        let mut p: HashMap<Vertex, Vec<i64>> = HashMap::new();
        for t in &self.tuples {
            for (i, &v) in t.iter().enumerate() {
                p.entry(v).or_insert_with(|| vec![0; k])[i + 1] += 1;
            }
        }
        p
    }

    pub fn is_balanced(&self, k: usize) -> bool {
        self.p_table(k).values().all(|p| (1..k).all(|i| p[i] == p[k - i]))
    }
}

pub fn residual(t: &TourTrailDecomposition) -> Residual {
    t.residual()
}

pub fn p_count(t: &TourTrailDecomposition, i: usize, v: Vertex) -> Result<usize> {
    let k = t.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange(i, k - 1));
    }
    Ok(t.walks.iter().filter_map(|w| w.ends().ok()).flatten().filter(|y| y[i - 1] == v).count())
}

pub fn is_balanced(t: &TourTrailDecomposition) -> bool {
    t.residual().is_balanced(t.k())
}

/// Repeatedly joins trails along cancelling pairs {y, y^{-1}} of D, scanning
/// tuples in lexicographic order. Closed components become tours.
pub fn merge_walks(k: usize, walks: Vec<Walk>) -> Vec<Walk> {
    let mut out: Vec<Walk> = Vec::new();
    let mut trails: Vec<Walk> = Vec::new();
    for w in walks {
        if w.is_tour() {
            out.push(w);
        } else {
            trails.push(w);
        }
    }
    // slot 2j is the start of trail j (tuple rev(head)), slot 2j+1 its end (tuple tail)
    let mut by_tuple: BTreeMap<Tuple, Vec<usize>> = BTreeMap::new();
    for (j, w) in trails.iter().enumerate() {
        by_tuple.entry(reverse(w.head())).or_default().push(2 * j);
        by_tuple.entry(w.tail().to_vec()).or_default().push(2 * j + 1);
    }
    let mut partner: Vec<Option<usize>> = vec![None; 2 * trails.len()];
    for (y, slots) in &by_tuple {
        let ry = reverse(y);
        if ry == *y {
            for pair in slots.chunks_exact(2) {
                partner[pair[0]] = Some(pair[1]);
                partner[pair[1]] = Some(pair[0]);
            }
        } else if *y < ry {
            if let Some(others) = by_tuple.get(&ry) {
                for (&a, &b) in slots.iter().zip(others) {
                    partner[a] = Some(b);
                    partner[b] = Some(a);
                }
            }
        }
    }

    let mut visited = vec![false; trails.len()];
    let follow = |start: usize, forward: bool, visited: &mut Vec<bool>| -> (Vec<Vertex>, bool) {
        let mut seq: Vec<Vertex> = if forward { trails[start].seq().to_vec() } else { reverse(trails[start].seq()) };
        visited[start] = true;
        let mut exit = if forward { 2 * start + 1 } else { 2 * start };
        while let Some(s) = partner[exit] {
            let j = s / 2;
            if visited[j] {
                return (seq, true);
            }
            visited[j] = true;
            if s % 2 == 0 {
                seq.extend_from_slice(&trails[j].seq()[k - 1..]);
                exit = 2 * j + 1;
            } else {
                let r = reverse(trails[j].seq());
                seq.extend_from_slice(&r[k - 1..]);
                exit = 2 * j;
            }
        }
        (seq, false)
    };
    for j in 0..trails.len() {
        if visited[j] {
            continue;
        }
        let forward = if partner[2 * j].is_none() {
            true
        } else if partner[2 * j + 1].is_none() {
            false
        } else {
            continue;
        };
        let (seq, closed) = follow(j, forward, &mut visited);
        debug_assert!(!closed);
        out.push(Walk::from_parts(k, seq, false));
    }
    for j in 0..trails.len() {
        if visited[j] {
            continue;
        }
        let (seq, closed) = follow(j, true, &mut visited);
        debug_assert!(closed);
        out.push(Walk::from_parts(k, seq, true).normalized());
    }
    out
}

pub fn merge_cancelling(t: &TourTrailDecomposition) -> TourTrailDecomposition {
    TourTrailDecomposition { host: t.host.clone(), walks: merge_walks(t.k(), t.walks.clone()) }
}

pub fn is_tour_decomposition(t: &TourTrailDecomposition) -> bool {
    t.residual().reduced().is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModSumReport {
    /// Σ_i i·p_i(v) mod k for each vertex of the host.
    pub sums: BTreeMap<Vertex, usize>,
    /// For even k and balanced T: vertices with p_{k/2}(v) odd.
    pub odd_middle: Vec<Vertex>,
    pub holds: bool,
}

pub fn check_mod_sum(t: &TourTrailDecomposition) -> Result<ModSumReport> {
    let k = t.k();
    for (v, d) in t.host.vertex_degrees() {
        if d % k != 0 {
            return Err(Error::DegreeNotDivisible(v, d, k));
        }
    }
    let r = t.residual();
    let p = r.p_table(k);
    let mut sums = BTreeMap::new();
    for &v in t.host.vertices() {
        let s = p.get(&v).map_or(0, |pv| (1..k).map(|i| i as i64 * pv[i]).sum::<i64>());
        sums.insert(v, s.rem_euclid(k as i64) as usize);
    }
    let odd_middle = if k % 2 == 0 && r.is_balanced(k) {
        p.iter().filter(|(_, pv)| pv[k / 2] % 2 != 0).map(|(&v, _)| v).collect::<BTreeSet<_>>().into_iter().collect()
    } else {
        Vec::new()
    };
    let holds = sums.values().all(|&s| s == 0) && odd_middle.is_empty();
    Ok(ModSumReport { sums, odd_middle, holds })
}

/// A directed multigraph; arcs keep their insertion index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArcMultiDigraph {
    pub vertices: BTreeSet<Vertex>,
    pub arcs: Vec<(Vertex, Vertex)>,
}

impl ArcMultiDigraph {
    pub fn out_degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut d: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, _) in &self.arcs {
            *d.entry(a).or_insert(0) += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> BTreeMap<Vertex, usize> {
        let mut d: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(_, b) in &self.arcs {
            *d.entry(b).or_insert(0) += 1;
        }
        d
    }

    pub fn is_eulerian_balanced(&self) -> bool {
        self.out_degrees() == self.in_degrees()
    }

    /// Every vertex of `span` reaches and is reached from every other.
    pub fn is_strongly_connected_on(&self, span: &BTreeSet<Vertex>) -> bool {
        let Some(&root) = span.iter().next() else { return true };
        let reach = |forward: bool| -> HashSet<Vertex> {
            let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
            for &(a, b) in &self.arcs {
                let (x, y) = if forward { (a, b) } else { (b, a) };
                adj.entry(x).or_default().push(y);
            }
            let mut seen: HashSet<Vertex> = [root].into_iter().collect();
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in adj.get(&x).into_iter().flatten() {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            seen
        };
        let f = reach(true);
        let b = reach(false);
        span.iter().all(|v| f.contains(v) && b.contains(v))
    }

    /// Hierholzer's method from the least vertex, always taking the
    /// smallest-index unused arc. Returns arc indices in circuit order, or None
    /// when the arcs do not form a single closed trail.
    pub fn euler_circuit(&self) -> Option<Vec<usize>> {
        if self.arcs.is_empty() {
            return Some(Vec::new());
        }
        if !self.is_eulerian_balanced() {
            return None;
        }
        let mut adj: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (j, &(a, _)) in self.arcs.iter().enumerate() {
            adj.entry(a).or_default().push(j);
        }
        for list in adj.values_mut() {
            list.sort_by_key(|&j| (self.arcs[j].1, j));
            list.reverse();
        }
        let start = self.arcs.iter().map(|a| a.0).min()?;
        let mut stack: Vec<(Vertex, Option<usize>)> = vec![(start, None)];
        let mut circuit = Vec::with_capacity(self.arcs.len());
        while let Some(&(v, via)) = stack.last() {
            match adj.get_mut(&v).and_then(|l| l.pop()) {
                Some(j) => stack.push((self.arcs[j].1, Some(j))),
                None => {
                    stack.pop();
                    if let Some(j) = via {
                        circuit.push(j);
                    }
                }
            }
        }
        circuit.reverse();
        (circuit.len() == self.arcs.len()).then_some(circuit)
    }
}

/// A_i: one arc (position i → position k-i) per tuple of the residual.
pub fn arc_graph_of(r: &Residual, k: usize, i: usize) -> Result<ArcMultiDigraph> {
    if i == 0 || 2 * i >= k {
        return Err(Error::IndexOutOfRange(i, k.saturating_sub(1) / 2));
    }
    let arcs: Vec<(Vertex, Vertex)> = r.tuples().iter().map(|y| (y[i - 1], y[k - i - 1])).collect();
    let vertices = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    Ok(ArcMultiDigraph { vertices, arcs })
}

pub fn arc_graph(t: &TourTrailDecomposition, i: usize) -> Result<ArcMultiDigraph> {
    arc_graph_of(&t.residual(), t.k(), i)
}

/// ζ_i(y): z_i at position i and z_{k-i} at position k-i (z is 1-based in spirit).
pub fn zeta(y: &[Vertex], i: usize, z: &[Vertex]) -> Tuple {
    let k = y.len() + 1;
    let mut out = y.to_vec();
    out[i - 1] = z[i - 1];
    out[k - i - 1] = z[k - i - 1];
    out
}

/// ζ̄_i(y): z_{k-i} at position i and z_i at position k-i.
pub fn zeta_bar(y: &[Vertex], i: usize, z: &[Vertex]) -> Tuple {
    let k = y.len() + 1;
    let mut out = y.to_vec();
    out[i - 1] = z[k - i - 1];
    out[k - i - 1] = z[i - 1];
    out
}

/// Does D' = ζ_i(D_1) ∪ ζ̄_i(D_2) for some split of D into equal halves?
///
/// Both images of a tuple agree off positions i and k-i, so the matching
/// problem splits into classes by the remaining entries; inside a class any
/// assignment is realisable and only the totals matter.
pub fn is_i_convert_residual(d: &Residual, d2: &Residual, k: usize, i: usize, z: &[Vertex]) -> Result<bool> {
    if i == 0 || 2 * i > k {
        return Err(Error::IndexOutOfRange(i, k / 2));
    }
    if z.len() + 1 != k {
        return Err(Error::BadTupleLength(z.len(), k - 1));
    }
    if d.len() != d2.len() || d.len() % 2 != 0 {
        return Ok(false);
    }
    let (pi, pj) = (i - 1, k - i - 1);
    let frame = |y: &[Vertex]| -> Tuple {
        let mut f = y.to_vec();
        f[pi] = Vertex::MAX;
        f[pj] = Vertex::MAX;
        f
    };
    let mut balance: HashMap<Tuple, i64> = HashMap::new();
    for y in d.tuples() {
        *balance.entry(frame(y)).or_insert(0) += 1;
    }
    let mut straight = 0usize;
    for y in d2.tuples() {
        let pattern = (y[pi], y[pj]);
        if pattern == (z[pi], z[pj]) {
            straight += 1;
        } else if pattern != (z[pj], z[pi]) {
            return Ok(false);
        }
        *balance.entry(frame(y)).or_insert(0) -= 1;
    }
    if balance.values().any(|&b| b != 0) {
        return Ok(false);
    }
    Ok(pi == pj || straight * 2 == d.len())
}

pub fn is_i_convert(t: &TourTrailDecomposition, t2: &TourTrailDecomposition, i: usize, z: &[Vertex]) -> Result<bool> {
    is_i_convert_residual(&t.residual(), &t2.residual(), t.k(), i, z)
}
