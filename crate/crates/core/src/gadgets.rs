//! Cycle gadgets: explicit unions of tight ℓ-cycles whose tour-trail
//! decompositions realise a prescribed residual change.
//!
//! Every cycle is built host-free: it starts with one anchored edge, in a
//! prescribed order, followed by fresh vertices. Its decomposition is the two
//! trails `c_2 … c_ℓ c_1 … c_{k-1}` and the anchored edge read in a second,
//! prescribed order.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{canonical, Edge, KGraph, Vertex};
use crate::tourtrail::{check_partition, merge_walks, Residual, TourTrailDecomposition};
use crate::walks::{permute, reverse, s_pair, skip, t_quad, FreshVertexSupply, Tuple, Walk};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetResult {
    pub k: usize,
    pub l: usize,
    pub cycles: Vec<Walk>,
    pub decomposition: TourTrailDecomposition,
    pub claimed_residual: Residual,
    pub anchor_vertices: BTreeSet<Vertex>,
    pub fresh_vertices: BTreeSet<Vertex>,
    /// Fresh vertices shared by several cycles (the drawn completions).
    pub completions: BTreeSet<Vertex>,
    /// Edges allowed to lie entirely inside the anchor set.
    pub anchor_edges: BTreeSet<Edge>,
}

impl GadgetResult {
    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(Walk::edge_count).sum()
    }

    pub fn raw_residual(&self) -> Residual {
        self.decomposition.residual()
    }

    pub fn merged_residual(&self) -> Residual {
        Residual::of_walks(&merge_walks(self.k, self.decomposition.walks.clone()))
    }
}

/// Accumulates cycles and their two-trail decompositions.
pub(crate) struct Builder<'s> {
    k: usize,
    l: usize,
    supply: &'s mut FreshVertexSupply,
    pub(crate) cycles: Vec<Walk>,
    pub(crate) trails: Vec<Walk>,
    pub(crate) claimed: Vec<Tuple>,
    fresh: BTreeSet<Vertex>,
    completions: BTreeSet<Vertex>,
}

impl<'s> Builder<'s> {
    pub(crate) fn new(k: usize, l: usize, supply: &'s mut FreshVertexSupply) -> Result<Self> {
        if k < 3 {
            return Err(Error::RangeError(format!("gadgets need k >= 3, got {k}")));
        }
        if l < k * k - k + 1 {
            return Err(Error::RangeError(format!("ℓ = {l} < k² - k + 1 = {}", k * k - k + 1)));
        }
        Ok(Builder {
            k,
            l,
            supply,
            cycles: Vec::new(),
            trails: Vec::new(),
            claimed: Vec::new(),
            fresh: BTreeSet::new(),
            completions: BTreeSet::new(),
        })
    }

    fn completion(&mut self) -> Vertex {
        let v = self.supply.draw();
        self.fresh.insert(v);
        self.completions.insert(v);
        v
    }

    /// Cycle `prefix` + fresh vertices, decomposed with its first edge read as `first`.
    fn cycle(&mut self, prefix: &[Vertex], first: &[Vertex]) -> Result<()> {
        let k = self.k;
        debug_assert_eq!(prefix.len(), k);
        debug_assert_eq!(canonical(first), canonical(prefix));
        let mut core = prefix.to_vec();
        for _ in prefix.len()..self.l {
            let v = self.supply.draw();
            self.fresh.insert(v);
            core.push(v);
        }
        let cycle = Walk::cycle(k, &core)?;
        let mut rest = core[1..].to_vec();
        rest.extend_from_slice(&core[..k - 1]);
        self.trails.push(Walk::new(k, rest, false)?);
        self.trails.push(Walk::new(k, first.to_vec(), false)?);
        self.cycles.push(cycle);
        Ok(())
    }

    /// Cycles, their trails and the claimed (merged) residual, without a host.
    pub(crate) fn into_parts(self) -> (Vec<Walk>, Vec<Walk>, Vec<Tuple>) {
        (self.cycles, self.trails, self.claimed)
    }

    fn finish(self, anchors: impl IntoIterator<Item = Vertex>, anchor_edges: BTreeSet<Edge>) -> Result<GadgetResult> {
        let decomposition = TourTrailDecomposition::from_walks(self.k, self.trails)?;
        Ok(GadgetResult {
            k: self.k,
            l: self.l,
            cycles: self.cycles,
            decomposition,
            claimed_residual: Residual::new(self.claimed),
            anchor_vertices: anchors.into_iter().collect(),
            fresh_vertices: self.fresh,
            completions: self.completions,
            anchor_edges,
        })
    }
}

fn require_distinct(what: &str, vs: impl IntoIterator<Item = Vertex>, expect: usize) -> Result<()> {
    let set: HashSet<Vertex> = vs.into_iter().collect();
    if set.len() != expect {
        return Err(Error::AnchorCollision(format!("{what} is not a {expect}-set")));
    }
    Ok(())
}

fn without(y: &[Vertex], j: usize) -> Vec<Vertex> {
    y.iter().enumerate().filter(|&(i, _)| i + 1 != j).map(|(_, &v)| v).collect()
}

/// G_j(y, x, x') on a k-tuple y; y_j itself is never used.
pub(crate) fn basic_into(b: &mut Builder, j: usize, y: &[Vertex], x: Vertex, x2: Vertex) -> Result<()> {
    let k = b.k;
    if j == 0 || j >= k {
        return Err(Error::RangeError(format!("j = {j} not in 1..{}", k - 1)));
    }
    if y.len() != k {
        return Err(Error::BadTupleLength(y.len(), k));
    }
    if x == x2 {
        return Err(Error::AnchorCollision("x = x'".into()));
    }
    let ys = without(y, j);
    require_distinct("Y ∪ {x}", ys.iter().copied().chain([x]), k)?;
    require_distinct("Y ∪ {x'}", ys.iter().copied().chain([x2]), k)?;
    // 1-based access
    let yy = |i: usize| y[i - 1];
    let desc = |from: usize, to: usize| -> Vec<Vertex> { (to..=from).rev().map(yy).collect() };
    let asc = |from: usize, to: usize| -> Vec<Vertex> { (from..=to).map(yy).collect() };

    // C_1 = y_k … y_{j+1} x y_{j-1} … y_1, first edge read x y_1 … ŷ_j … y_k
    let mut c1 = desc(k, j + 1);
    c1.push(x);
    c1.extend(desc(j - 1, 1));
    let mut e1 = vec![x];
    e1.extend(asc(1, j - 1));
    e1.extend(asc(j + 1, k));
    b.cycle(&c1, &e1)?;

    // C_2 = x' y_1 … ŷ_j … y_k, first edge read y_k … y_{j+1} x' y_{j-1} … y_1
    let mut c2 = vec![x2];
    c2.extend(asc(1, j - 1));
    c2.extend(asc(j + 1, k));
    let mut e2 = desc(k, j + 1);
    e2.push(x2);
    e2.extend(desc(j - 1, 1));
    b.cycle(&c2, &e2)?;

    if j >= 2 {
        let sigma1: Vec<usize> = [j].into_iter().chain(1..j).chain(j + 1..=k).collect();
        let sigma2: Vec<usize> = (2..=k).chain([1]).collect();
        b.claimed.extend(s_pair(k, y, j, x, x2)?);
        b.claimed.extend(s_pair(k, &permute(y, &sigma1)?, 1, x2, x)?);
        b.claimed.extend(s_pair(k, &permute(y, &sigma2)?, j - 1, x2, x)?);
    } else {
        // With j = 1 the third term degenerates: the two cycles leave
        // S_1(y,x,x') ∪ S_1(y,x',x) plus y_k…y_2 and y_2…y_k twice each.
        b.claimed.extend(s_pair(k, y, 1, x, x2)?);
        b.claimed.extend(s_pair(k, y, 1, x2, x)?);
        for _ in 0..2 {
            b.claimed.push(desc(k, 2));
            b.claimed.push(asc(2, k));
        }
    }
    Ok(())
}

pub fn basic_gadget(k: usize, j: usize, y: &[Vertex], x: Vertex, x2: Vertex, l: usize, supply: &mut FreshVertexSupply) -> Result<GadgetResult> {
    let mut b = Builder::new(k, l, supply)?;
    basic_into(&mut b, j, y, x, x2)?;
    let ys = without(y, j);
    let anchor_edges: BTreeSet<Edge> = [x, x2].iter().map(|&v| canonical(&[ys.as_slice(), &[v]].concat())).collect();
    b.finish(y.iter().copied().chain([x, x2]), anchor_edges)
}

pub(crate) fn balancer_into(b: &mut Builder, j: usize, x: Vertex, x2: Vertex) -> Result<()> {
    let k = b.k;
    if j < 2 || j >= k {
        return Err(Error::RangeError(format!("balancer index {j} not in 2..{}", k - 1)));
    }
    if x == x2 {
        return Err(Error::AnchorCollision("x = x'".into()));
    }
    for level in (2..=j).rev() {
        let y: Vec<Vertex> = (1..=k).map(|i| if i == level { x } else { b.completion() }).collect();
        basic_into(b, level, &y, x, x2)?;
    }
    Ok(())
}

/// B_j(x, x') = G_j ∪ B_{j-1}, each level on its own fresh anchor tuple.
pub fn balancer(k: usize, j: usize, x: Vertex, x2: Vertex, l: usize, supply: &mut FreshVertexSupply) -> Result<GadgetResult> {
    let mut b = Builder::new(k, l, supply)?;
    balancer_into(&mut b, j, x, x2)?;
    b.finish([x, x2], BTreeSet::new())
}

fn check_f1_anchor(k: usize, y: &[Vertex], x: Vertex, x2: Vertex) -> Result<()> {
    if y.len() + 1 != k {
        return Err(Error::BadTupleLength(y.len(), k - 1));
    }
    require_distinct("{x,x'} ∪ {y_2..y_{k-1}}", y[1..].iter().copied().chain([x, x2]), k)
}

/// F_1(y, x, x') for a (k-1)-tuple y; returns the drawn y_k.
pub(crate) fn f1_into(b: &mut Builder, y: &[Vertex], x: Vertex, x2: Vertex, claim: bool) -> Result<Vertex> {
    let k = b.k;
    check_f1_anchor(k, y, x, x2)?;
    let yk = b.completion();
    let mut full = y.to_vec();
    full.push(yk);
    let yy = |i: usize| full[i - 1];
    let run = |from: usize, to: usize| -> Vec<Vertex> { (from..=to).map(yy).collect() };

    // C_1 = y_2 … y_k x', first edge x' y_2 … y_k
    let c1: Vec<Vertex> = run(2, k).into_iter().chain([x2]).collect();
    let e1: Vec<Vertex> = [x2].into_iter().chain(run(2, k)).collect();
    b.cycle(&c1, &e1)?;
    // C_2 = x y_2 … y_k, first edge y_2 … y_k x
    let c2: Vec<Vertex> = [x].into_iter().chain(run(2, k)).collect();
    let e2: Vec<Vertex> = run(2, k).into_iter().chain([x]).collect();
    b.cycle(&c2, &e2)?;
    // C_3 = y_3 … y_k x' x, first edge y_3 … y_k x x'
    let c3: Vec<Vertex> = run(3, k).into_iter().chain([x2, x]).collect();
    let e3: Vec<Vertex> = run(3, k).into_iter().chain([x, x2]).collect();
    b.cycle(&c3, &e3)?;

    if claim {
        b.claimed.extend(s_pair(k, y, 1, x, x2)?);
        b.claimed.extend(f1_extras(k, &full, x, x2));
    }
    Ok(yk)
}

/// The two tuples F_1 leaves besides S_1: {xx', xx'} for k = 3, else
/// {x x' y_k … y_4, y_4 … y_k x x'}.
fn f1_extras(k: usize, full: &[Vertex], x: Vertex, x2: Vertex) -> Vec<Tuple> {
    if k == 3 {
        return vec![vec![x, x2], vec![x, x2]];
    }
    let down: Vec<Vertex> = (4..=k).rev().map(|i| full[i - 1]).collect();
    let up: Vec<Vertex> = (4..=k).map(|i| full[i - 1]).collect();
    vec![[vec![x, x2], down].concat(), [up, vec![x, x2]].concat()]
}

pub fn f1_gadget(k: usize, y: &[Vertex], x: Vertex, x2: Vertex, l: usize, supply: &mut FreshVertexSupply) -> Result<GadgetResult> {
    let mut b = Builder::new(k, l, supply)?;
    f1_into(&mut b, y, x, x2, true)?;
    b.finish(y.iter().copied().chain([x, x2]), BTreeSet::new())
}

pub(crate) fn swapper1_into(b: &mut Builder, y: &[Vertex], y2: &[Vertex], x: Vertex, x2: Vertex) -> Result<()> {
    let k = b.k;
    check_f1_anchor(k, y, x, x2)?;
    check_f1_anchor(k, y2, x2, x)?;
    let yk = f1_into(b, y, x, x2, false)?;
    let yk2 = f1_into(b, y2, x2, x, false)?;
    let full: Vec<Vertex> = y.iter().copied().chain([yk]).collect();
    let full2: Vec<Vertex> = y2.iter().copied().chain([yk2]).collect();
    // telescoping pairs C^i, D^i for i = 4..k cancel the F_1 extras
    let mut zs: Vec<Vertex> = Vec::new();
    for i in 4..=k {
        zs.push(b.completion());
        let zdesc: Vec<Vertex> = zs.iter().rev().copied().collect();
        let tail = |f: &[Vertex]| -> Vec<Vertex> { (i..=k).rev().map(|m| f[m - 1]).collect() };
        let ci = [zdesc.clone(), vec![x, x2], tail(&full)].concat();
        let ci_first = [zdesc.clone(), vec![x2, x], tail(&full)].concat();
        b.cycle(&ci, &ci_first)?;
        let di = [zdesc.clone(), vec![x2, x], tail(&full2)].concat();
        let di_first = [zdesc, vec![x, x2], tail(&full2)].concat();
        b.cycle(&di, &di_first)?;
    }
    b.claimed.extend(t_quad(k, y, y2, 1, x, x2)?);
    Ok(())
}

/// T_1(y, y', x, x') for (k-1)-tuples y, y'.
pub fn swapper1(k: usize, y: &[Vertex], y2: &[Vertex], x: Vertex, x2: Vertex, l: usize, supply: &mut FreshVertexSupply) -> Result<GadgetResult> {
    let mut b = Builder::new(k, l, supply)?;
    swapper1_into(&mut b, y, y2, x, x2)?;
    b.finish(y.iter().chain(y2).copied().chain([x, x2]), BTreeSet::new())
}

pub(crate) fn swapper_into(b: &mut Builder, j: usize, y: &[Vertex], y2: &[Vertex], x: Vertex, x2: Vertex) -> Result<()> {
    let k = b.k;
    if j == 0 || j >= k {
        return Err(Error::RangeError(format!("swapper index {j} not in 1..{}", k - 1)));
    }
    if j == 1 {
        return swapper1_into(b, y, y2, x, x2);
    }
    for (t, a, c) in [(y, x, x2), (y2, x2, x)] {
        if t.len() + 1 != k {
            return Err(Error::BadTupleLength(t.len(), k - 1));
        }
        require_distinct("{x,x'} ∪ {y_i : i ≠ j}", without(t, j).into_iter().chain([a, c]), k)?;
    }
    let before = b.claimed.len();
    let full: Vec<Vertex> = y.iter().copied().chain([b.completion()]).collect();
    let full2: Vec<Vertex> = y2.iter().copied().chain([b.completion()]).collect();
    basic_into(b, j, &full, x, x2)?;
    basic_into(b, j, &full2, x2, x)?;
    let sigma1: Vec<usize> = [j].into_iter().chain(1..j).chain(j + 1..=k).collect();
    let sigma2: Vec<usize> = (2..=k).chain([1]).collect();
    let s1 = skip(&permute(&full, &sigma1)?, k)?;
    let s1b = skip(&permute(&full2, &sigma1)?, k)?;
    swapper1_into(b, &s1, &s1b, x, x2)?;
    let s2 = skip(&permute(&full, &sigma2)?, k)?;
    let s2b = skip(&permute(&full2, &sigma2)?, k)?;
    swapper_into(b, j - 1, &s2, &s2b, x, x2)?;
    b.claimed.truncate(before);
    b.claimed.extend(t_quad(k, y, y2, j, x, x2)?);
    Ok(())
}

/// T_j(y, y', x, x') = G_j(y,x,x') ∪ G_j(y',x',x) ∪ T_1(σ_1 y, σ_1 y', x, x') ∪ T_{j-1}(σ_2 y, σ_2 y', x, x').
pub fn swapper(k: usize, j: usize, y: &[Vertex], y2: &[Vertex], x: Vertex, x2: Vertex, l: usize, supply: &mut FreshVertexSupply) -> Result<GadgetResult> {
    let mut b = Builder::new(k, l, supply)?;
    swapper_into(&mut b, j, y, y2, x, x2)?;
    b.finish(y.iter().chain(y2).copied().chain([x, x2]), BTreeSet::new())
}

/// Edge count of T_j from the recursion 4ℓ + |T_1| + |T_{j-1}|, |T_1| = 2kℓ.
pub fn swapper_size(k: usize, j: usize, l: usize) -> usize {
    if j <= 1 {
        2 * k * l
    } else {
        4 * l + 2 * k * l + swapper_size(k, j - 1, l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetReport {
    pub checks: Vec<Check>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }
}

/// Re-checks every gadget invariant; never fails, only reports.
pub fn verify_gadget(g: &GadgetResult, host: Option<&KGraph>) -> GadgetReport {
    let mut r = GadgetReport::default();
    let k = g.k;

    let bad_cycles: Vec<usize> = g
        .cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_tour() || c.edge_count() != g.l || c.core().iter().collect::<HashSet<_>>().len() != g.l || Walk::new(k, c.seq().to_vec(), true).is_err())
        .map(|(i, _)| i)
        .collect();
    r.push("cycles are tight ℓ-cycles", bad_cycles.is_empty(), format!("bad cycles: {bad_cycles:?}"));

    let mut union: HashMap<Edge, usize> = HashMap::new();
    for (i, c) in g.cycles.iter().enumerate() {
        for e in c.edges() {
            union.entry(e).or_insert(i);
        }
    }
    let total: usize = g.cycles.iter().map(Walk::edge_count).sum();
    r.push("cycles are edge-disjoint", union.len() == total, format!("{} distinct of {total}", union.len()));

    let union_graph = KGraph::from_edges(k, union.keys());
    let partition = union_graph.as_ref().map_err(Clone::clone).and_then(|h| check_partition(h, &g.decomposition.walks));
    r.push("decomposition partitions the cycle edges", partition.is_ok(), format!("{partition:?}"));

    let merged = g.merged_residual();
    let claimed = g.claimed_residual.reduced();
    r.push("merged residual equals the claim", merged == claimed, format!("merged {:?} vs claimed {:?}", merged.tuples(), claimed.tuples()));

    let inside: Vec<&Edge> = union.keys().filter(|e| e.iter().all(|v| g.anchor_vertices.contains(v))).collect();
    let unexpected: Vec<&&Edge> = inside.iter().filter(|e| !g.anchor_edges.contains(**e)).collect();
    r.push("no unexpected anchor-internal edges", unexpected.is_empty(), format!("{unexpected:?}"));

    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    let mut shared = Vec::new();
    for (i, c) in g.cycles.iter().enumerate() {
        for &v in c.core() {
            if g.anchor_vertices.contains(&v) || g.completions.contains(&v) {
                continue;
            }
            if !g.fresh_vertices.contains(&v) {
                shared.push(v);
            } else if *owner.entry(v).or_insert(i) != i {
                shared.push(v);
            }
        }
    }
    r.push("interior vertices are fresh and private to one cycle", shared.is_empty(), format!("{shared:?}"));

    if let Some(h) = host {
        let missing: Vec<&Edge> = union.keys().filter(|e| !h.edges().contains(*e)).collect();
        r.push("cycle edges lie in the host", missing.is_empty(), format!("{} missing", missing.len()));
    }
    r
}

/// p_i - p_{k-i} at v, for i = 1..k-1 (index 0 unused).
pub fn signature(r: &Residual, k: usize, v: Vertex) -> Vec<i64> {
    let p = r.p_table(k);
    let pv = p.get(&v).cloned().unwrap_or_else(|| vec![0; k]);
    (0..k).map(|i| if i == 0 { 0 } else { pv[i] - pv[k - i] }).collect()
}

/// The balancer signature 1_{i=j} - 1_{i=k-j} - j(1_{i=1} - 1_{i=k-1}) at x.
pub fn balancer_signature(k: usize, j: usize) -> Vec<i64> {
    let ind = |c: bool| c as i64;
    (0..k)
        .map(|i| if i == 0 { 0 } else { ind(i == j) - ind(i == k - j) - j as i64 * (ind(i == 1) - ind(i == k - 1)) })
        .collect()
}

/// Tuples in the reverse orientation, used when comparing residual orderings.
pub fn reversed_all(ts: &[Tuple]) -> Vec<Tuple> {
    ts.iter().map(|t| reverse(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn supply() -> FreshVertexSupply {
        FreshVertexSupply::new(1000)
    }

    #[test]
    fn basic_gadget_k3_j2() {
        let g = basic_gadget(3, 2, &[1, 0, 2], 10, 11, 7, &mut supply()).unwrap();
        assert_eq!(g.edge_count(), 14);
        assert!(verify_gadget(&g, None).passed(), "{:?}", verify_gadget(&g, None).failures());
        assert_eq!(g.raw_residual().len(), 8);
        assert_eq!(g.merged_residual().len(), 6);
        let inside: BTreeSet<Edge> =
            g.cycles.iter().flat_map(|c| c.edges()).filter(|e| e.iter().all(|v| g.anchor_vertices.contains(v))).collect();
        assert_eq!(inside, g.anchor_edges);
    }

    #[test]
    fn basic_gadget_j1_is_computed_honestly() {
        let g = basic_gadget(4, 1, &[0, 1, 2, 3], 10, 11, 13, &mut supply()).unwrap();
        assert!(verify_gadget(&g, None).passed(), "{:?}", verify_gadget(&g, None).failures());
        assert_eq!(g.raw_residual().len(), 8);
        assert!(g.merged_residual().is_empty());
    }

    #[test]
    fn anchor_collisions_are_rejected() {
        assert!(matches!(basic_gadget(3, 2, &[1, 0, 10], 10, 11, 7, &mut supply()), Err(Error::AnchorCollision(_))));
        assert!(matches!(f1_gadget(3, &[1, 10], 10, 11, 7, &mut supply()), Err(Error::AnchorCollision(_))));
        assert!(matches!(balancer(3, 1, 1, 2, 7, &mut supply()), Err(Error::RangeError(_))));
    }

    #[test]
    fn balancer_signature_k4_j2() {
        let g = balancer(4, 2, 1, 2, 13, &mut supply()).unwrap();
        assert!(verify_gadget(&g, None).passed());
        let r = g.merged_residual();
        assert_eq!(signature(&r, 4, 1), balancer_signature(4, 2));
        let neg: Vec<i64> = balancer_signature(4, 2).iter().map(|s| -s).collect();
        assert_eq!(signature(&r, 4, 2), neg);
        let p = r.p_table(4);
        for (v, pv) in p {
            assert_eq!(pv[2] % 2 == 1, v == 1 || v == 2);
        }
    }

    #[test]
    fn f1_and_swappers_small() {
        let g = f1_gadget(3, &[5, 6], 10, 11, 7, &mut supply()).unwrap();
        assert_eq!(g.cycles.len(), 3);
        assert!(verify_gadget(&g, None).passed(), "{:?}", verify_gadget(&g, None).failures());
        let t = swapper1(4, &[5, 6, 7], &[8, 9, 4], 10, 11, 13, &mut supply()).unwrap();
        assert_eq!(t.cycles.len(), 8);
        assert!(verify_gadget(&t, None).passed(), "{:?}", verify_gadget(&t, None).failures());
        let t = swapper(4, 3, &[5, 6, 7], &[8, 9, 4], 10, 11, 13, &mut supply()).unwrap();
        assert_eq!(t.edge_count(), swapper_size(4, 3, 13));
        assert!(verify_gadget(&t, None).passed(), "{:?}", verify_gadget(&t, None).failures());
    }
}
