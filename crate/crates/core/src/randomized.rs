//! Seeded desk-scale simulations: vortex sampling, greedy cycle packing, the
//! sparse trail-extension process and the staged cover-down procedure.
//!
//! Every operation takes its randomness from a caller-supplied `Rng`, so a
//! fixed seed reproduces a run exactly.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;

use crate::error::{Error, Outcome, Result};
use crate::graph::{canonical, delta_r, induced, is_cycle_divisible, max_degree, minus, Edge, KGraph, Vertex};
use crate::solver::{self, CertKind, Certificate};
use crate::walks::{reverse, TrailSearch, Tuple, Visit, Walk};

/// Nested vertex sets U_0 ⊇ U_1 ⊇ … ⊇ U_t.
#[derive(Debug, Clone, PartialEq)]
pub struct Vortex {
    pub levels: Vec<BTreeSet<Vertex>>,
    /// The degree parameter the levels were certified against.
    pub delta: f64,
    pub xi: f64,
    pub m: usize,
    /// Samples drawn per level (level 0 is not sampled).
    pub attempts: Vec<usize>,
    pub warnings: Vec<String>,
}

pub const DEFAULT_RETRIES: usize = 100;

fn induced_delta2(h: &KGraph, u: &BTreeSet<Vertex>, w: Option<&BTreeSet<Vertex>>) -> Result<usize> {
    match delta_r(&induced(h, u), 2, w) {
        Err(Error::Degenerate(_)) => Ok(0),
        r => r,
    }
}

/// Exact recomputation of (V1)–(V5) for a (δ, ξ, m)-vortex.
pub fn check_vortex(h: &KGraph, v: &Vortex) -> Result<()> {
    let fail = |level: usize, observed: usize, needed: f64| Err(Error::VortexFailure { level, observed, needed });
    if v.levels.first() != Some(h.vertices()) {
        return fail(0, v.levels.first().map_or(0, BTreeSet::len), h.vertex_count() as f64);
    }
    for (i, w) in v.levels.windows(2).enumerate() {
        let want = (v.xi * w[0].len() as f64).floor() as usize;
        if w[1].len() != want || !w[1].is_subset(&w[0]) {
            return fail(i + 1, w[1].len(), want as f64);
        }
    }
    if v.levels.last().map(BTreeSet::len) != Some(v.m) {
        return fail(v.levels.len() - 1, v.levels.last().map_or(0, BTreeSet::len), v.m as f64);
    }
    for (i, u) in v.levels.iter().enumerate() {
        let d = induced_delta2(h, u, None)?;
        if (d as f64) < v.delta * u.len() as f64 {
            return fail(i, d, v.delta * u.len() as f64);
        }
        if let Some(next) = v.levels.get(i + 1) {
            let d = induced_delta2(h, u, Some(next))?;
            if (d as f64) < v.delta * next.len() as f64 {
                return fail(i, d, v.delta * next.len() as f64);
            }
        }
    }
    Ok(())
}

/// Samples a (δ - ξ, ξ, m)-vortex by uniform nested subsets, re-sampling a
/// level until its degree conditions hold.
pub fn sample_vortex<R: Rng>(h: &KGraph, delta: f64, xi: f64, m_prime: usize, rng: &mut R, retries: usize) -> Result<Vortex> {
    if !(0.0 < xi && xi < 1.0) {
        return Err(Error::RangeError(format!("ξ = {xi} must lie in (0, 1)")));
    }
    let n = h.vertex_count();
    let d0 = induced_delta2(h, h.vertices(), None)?;
    if (d0 as f64) < delta * n as f64 {
        return Err(Error::VortexFailure { level: 0, observed: d0, needed: delta * n as f64 });
    }
    let mut warnings = Vec::new();
    if m_prime as f64 * xi < 4.0 {
        warnings.push(format!("m' = {m_prime} is small relative to 1/ξ"));
    }
    let target = delta - xi;
    let mut levels = vec![h.vertices().clone()];
    let mut attempts = Vec::new();
    let mut slack = 0.0f64;
    while levels.last().expect("nonempty").len() > m_prime {
        let i = levels.len();
        slack = (slack + 2.0 * (xi.powi(i as i32) * n as f64).powf(-1.0 / 3.0)).min(xi);
        let need = delta - slack;
        let prev = levels.last().expect("nonempty").clone();
        let size = (xi * prev.len() as f64).floor() as usize;
        if size == 0 {
            return Err(Error::VortexFailure { level: i, observed: 0, needed: 1.0 });
        }
        let mut tries = 0;
        let next = loop {
            tries += 1;
            let cand: BTreeSet<Vertex> = prev.iter().copied().choose_multiple(rng, size).into_iter().collect();
            let inner = induced_delta2(h, &cand, None)?;
            let cross = induced_delta2(h, &prev, Some(&cand))?;
            let ok = inner as f64 >= need * size as f64 && cross as f64 >= need * size as f64;
            if ok {
                break cand;
            }
            if tries >= retries {
                let observed = if (inner as f64) < need * size as f64 { inner } else { cross };
                return Err(Error::VortexFailure { level: i, observed, needed: need * size as f64 });
            }
        };
        attempts.push(tries);
        levels.push(next);
    }
    let m = levels.last().expect("nonempty").len();
    let v = Vortex { levels, delta: target, xi, m, attempts, warnings };
    check_vortex(h, &v)?;
    Ok(v)
}

fn codegrees(edges: impl IntoIterator<Item = Edge>, k: usize) -> HashMap<Edge, usize> {
    let mut c = HashMap::new();
    for e in edges {
        for s in e.iter().copied().combinations(k - 1) {
            *c.entry(Edge::from_vec(s)).or_insert(0) += 1;
        }
    }
    c
}

fn bump(c: &mut HashMap<Edge, usize>, e: &[Vertex], up: bool) {
    for s in e.iter().copied().combinations(e.len() - 1) {
        let s = Edge::from_vec(s);
        if up {
            *c.entry(s).or_insert(0) += 1;
        } else if let Some(x) = c.get_mut(&s) {
            *x -= 1;
            if *x == 0 {
                c.remove(&s);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Packing {
    pub cycles: Vec<Walk>,
    pub leftover: KGraph,
    /// Δ_{k-1} of the leftover.
    pub achieved: usize,
    /// γn.
    pub target: f64,
}

const CYCLE_SEARCH_BUDGET: u64 = 20_000;

/// Randomized DFS for a tight ℓ-cycle through `e` inside `g`.
fn random_cycle_through<R: Rng>(g: &KGraph, link: &HashMap<Edge, Vec<Vertex>>, e: &[Vertex], l: usize, rng: &mut R) -> Option<Vec<Vertex>> {
    let k = g.k();
    let mut start = e.to_vec();
    start.shuffle(rng);
    let mut seq = start;
    let mut nodes = 0u64;
    fn dfs<R: Rng>(g: &KGraph, link: &HashMap<Edge, Vec<Vertex>>, seq: &mut Vec<Vertex>, l: usize, k: usize, nodes: &mut u64, rng: &mut R) -> bool {
        *nodes += 1;
        if *nodes > CYCLE_SEARCH_BUDGET {
            return false;
        }
        if seq.len() == l {
            return (1..k).all(|j| {
                let w: Vec<Vertex> = (0..k).map(|t| seq[(l - j + t) % l]).collect();
                g.contains_edge(&w)
            });
        }
        let last = canonical(&seq[seq.len() - (k - 1)..]);
        let mut cands: Vec<Vertex> = link.get(&last).map_or_else(Vec::new, |c| c.iter().copied().filter(|v| !seq.contains(v)).collect());
        cands.shuffle(rng);
        for v in cands {
            let mut w = seq[seq.len() - (k - 1)..].to_vec();
            w.push(v);
            if !g.contains_edge(&w) {
                continue;
            }
            seq.push(v);
            if dfs(g, link, seq, l, k, nodes, rng) {
                return true;
            }
            seq.pop();
        }
        false
    }
    dfs(g, link, &mut seq, l, k, &mut nodes, rng).then_some(seq)
}

/// Removes random tight ℓ-cycles until none is found or Δ_{k-1}(leftover) ≤ γn.
pub fn greedy_packing<R: Rng>(h: &KGraph, l: usize, gamma: f64, rng: &mut R) -> Result<Packing> {
    greedy_packing_by(h, l, gamma, rng, |_| 0)
}

/// As [`greedy_packing`], but seeds each cycle at a random live edge of
/// least `class`.
pub fn greedy_packing_by<R: Rng>(h: &KGraph, l: usize, gamma: f64, rng: &mut R, class: impl Fn(&Edge) -> usize) -> Result<Packing> {
    let k = h.k();
    if l <= k {
        return Err(Error::RangeError(format!("need ℓ > k, got ℓ = {l}")));
    }
    let target = gamma * h.vertex_count() as f64;
    let link = h.link_map();
    let mut left = h.clone();
    let mut codeg = codegrees(h.edges().iter().cloned(), k);
    let mut live: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for e in h.edges() {
        live.entry(class(e)).or_default().push(e.clone());
    }
    let mut cycles = Vec::new();
    loop {
        let achieved = codeg.values().copied().max().unwrap_or(0);
        if achieved as f64 <= target {
            break;
        }
        let Some(mut bucket) = live.first_entry() else { break };
        let pool = bucket.get_mut();
        let j = rng.gen_range(0..pool.len());
        let e = pool.swap_remove(j);
        if pool.is_empty() {
            bucket.remove();
        }
        if !left.contains_edge(&e) {
            continue;
        }
        // an edge with no cycle now never gains one, since `left` only shrinks
        let Some(core) = random_cycle_through(&left, &link, &e, l, rng) else { continue };
        let w = Walk::cycle(k, &core)?;
        for x in w.windows() {
            left.remove_edge(x);
            bump(&mut codeg, x, false);
        }
        cycles.push(w);
    }
    let achieved = codeg.values().copied().max().unwrap_or(0);
    Ok(Packing { cycles, leftover: left, achieved, target })
}

/// Pairs (a_i, b_i) of (k-1)-tuples in an n-vertex host.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePairList {
    pub n: usize,
    pub pairs: Vec<(Tuple, Tuple)>,
}

impl SparsePairList {
    /// Δ_j of the multiset of the sets {a_i}, {b_i}, for j = 0..k-1.
    pub fn delta_profile(&self) -> Vec<usize> {
        let Some((a, _)) = self.pairs.first() else { return Vec::new() };
        let km1 = a.len();
        let sets: Vec<Edge> = self.pairs.iter().flat_map(|(a, b)| [canonical(a), canonical(b)]).collect();
        (0..=km1)
            .map(|j| {
                let mut c: HashMap<Vec<Vertex>, usize> = HashMap::new();
                for s in &sets {
                    for sub in s.iter().copied().combinations(j) {
                        *c.entry(sub).or_insert(0) += 1;
                    }
                }
                c.values().copied().max().unwrap_or(0)
            })
            .collect()
    }
}

/// Δ_j(S) ≤ γ n^{k-j} for every j ≤ k-1.
pub fn check_sparse(pairs: &SparsePairList, gamma: f64) -> bool {
    check_sparse_upto(pairs, gamma, usize::MAX)
}

/// The same inequalities restricted to j ≤ `j_max`.
pub fn check_sparse_upto(pairs: &SparsePairList, gamma: f64, j_max: usize) -> bool {
    let prof = pairs.delta_profile();
    let k = prof.len();
    prof.iter().enumerate().take(j_max.saturating_add(1)).all(|(j, &d)| d as f64 <= gamma * (pairs.n as f64).powi((k - j) as i32))
}

#[derive(Debug, Clone, Copy)]
pub struct ExtendConfig {
    /// Edges per trail.
    pub edge_count: usize,
    pub mu: f64,
    /// Candidates enumerated per pick before settling for the sample so far.
    pub candidate_cap: usize,
    pub search_budget: u64,
}

impl ExtendConfig {
    pub fn new(edge_count: usize, mu: f64) -> Self {
        ExtendConfig { edge_count, mu, candidate_cap: 64, search_budget: 200_000 }
    }
}

#[derive(Debug, Clone)]
pub struct ExtendReport {
    pub trails: Vec<Walk>,
    pub max_codegree: usize,
    /// Picks whose candidate enumeration hit the cap or the budget.
    pub capped_picks: usize,
    pub candidates: Vec<usize>,
}

struct Pick {
    seq: Option<Vec<Vertex>>,
    seen: usize,
    capped: bool,
}

/// Reservoir sample over the trail enumeration (shuffled, capped).
#[allow(clippy::too_many_arguments)]
fn pick_trail<R: Rng>(search: &TrailSearch, a: &[Vertex], b: &[Vertex], edge_count: usize, avoid: &HashSet<Edge>, cap: usize, budget: u64, rng: &mut R) -> Result<Pick> {
    let rng = RefCell::new(rng);
    let mut chosen = None;
    let mut seen = 0usize;
    let out = search.run(
        a,
        b,
        edge_count,
        avoid,
        Some(budget),
        &mut |c: &mut Vec<Vertex>| c.shuffle(&mut **rng.borrow_mut()),
        &mut |s: &[Vertex]| {
            seen += 1;
            if rng.borrow_mut().gen_range(0..seen) == 0 {
                chosen = Some(s.to_vec());
            }
            if seen >= cap {
                Visit::Stop
            } else {
                Visit::Continue
            }
        },
    )?;
    let capped = seen >= cap || matches!(out, Outcome::BudgetExhausted);
    Ok(Pick { seq: chosen, seen, capped })
}

/// Joins each a_i to b_i by an edge-disjoint tight trail, aborting once some
/// (k-1)-set reaches codegree above μn in the union.
pub fn extend_all<R: Rng>(h: &KGraph, pairs: &SparsePairList, cfg: &ExtendConfig, forbidden: &HashSet<Edge>, rng: &mut R) -> Result<ExtendReport> {
    let k = h.k();
    let cap = (cfg.mu * pairs.n as f64).floor() as usize;
    let search = TrailSearch::new(h);
    let mut used = forbidden.clone();
    let mut codeg: HashMap<Edge, usize> = HashMap::new();
    let mut trails = Vec::with_capacity(pairs.pairs.len());
    let (mut capped_picks, mut candidates) = (0, Vec::new());
    for (index, (a, b)) in pairs.pairs.iter().enumerate() {
        let now = codeg.values().copied().max().unwrap_or(0);
        if now > cap {
            return Err(Error::ExtensionFailure { index, reason: format!("codegree {now} above μn = {cap}") });
        }
        let pick = pick_trail(&search, a, b, cfg.edge_count, &used, cfg.candidate_cap.max(1), cfg.search_budget, rng)?;
        let seq = pick.seq.ok_or_else(|| Error::ExtensionFailure { index, reason: "no trail avoiding used edges".into() })?;
        let w = Walk::new(k, seq, false)?;
        for e in w.edges() {
            bump(&mut codeg, &e, true);
            used.insert(e);
        }
        capped_picks += usize::from(pick.capped);
        candidates.push(pick.seen);
        trails.push(w);
    }
    let max_codegree = codeg.values().copied().max().unwrap_or(0);
    if max_codegree > cap {
        return Err(Error::ExtensionFailure { index: pairs.pairs.len(), reason: format!("final codegree {max_codegree} above μn = {cap}") });
    }
    Ok(ExtendReport { trails, max_codegree, capped_picks, candidates })
}

/// Post-hoc check of an extension: ends, distinct interiors, disjointness.
pub fn check_extension(h: &KGraph, pairs: &SparsePairList, forbidden: &HashSet<Edge>, rep: &ExtendReport, mu: f64) -> Result<()> {
    let k = h.k();
    let mut seen: HashSet<Edge> = HashSet::new();
    for (i, ((a, b), t)) in pairs.pairs.iter().zip(&rep.trails).enumerate() {
        let s = t.seq();
        let bad = |m: &str| Err(Error::ExtensionFailure { index: i, reason: m.into() });
        if s[..k - 1] != reverse(a)[..] || s[s.len() - (k - 1)..] != b[..] {
            return bad("ends differ from the pair");
        }
        let inner = &s[k - 1..s.len() - (k - 1)];
        let ends: BTreeSet<Vertex> = a.iter().chain(b).copied().collect();
        if inner.iter().collect::<BTreeSet<_>>().len() != inner.len() || inner.iter().any(|v| ends.contains(v)) {
            return bad("interior vertices repeat");
        }
        for e in t.edges() {
            if !h.edges().contains(&e) || forbidden.contains(&e) || !seen.insert(e) {
                return bad("edge missing, forbidden or reused");
            }
        }
    }
    let union = KGraph::from_edges(k, seen)?;
    let d = if union.is_empty() { 0 } else { max_degree(&union, k - 1)? };
    if d as f64 > mu * pairs.n as f64 {
        return Err(Error::ExtensionFailure { index: rep.trails.len(), reason: format!("Δ_(k-1) = {d} above μn") });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CoverDownParams {
    pub alpha: f64,
    pub mu: f64,
    /// p_1..p_{k-1}: reserve probabilities for edges with i vertices in U.
    pub p: Vec<f64>,
    pub gamma: f64,
    pub candidate_cap: usize,
    pub search_budget: u64,
    pub path_budget: u64,
}

impl CoverDownParams {
    /// Geometric ladder p_i = p·c^{k-1-i}.
    pub fn ladder(k: usize, p: f64, c: f64) -> Vec<f64> {
        (1..k).map(|i| p * c.powi((k - 1 - i) as i32)).collect()
    }

    pub fn defaults(k: usize) -> Self {
        CoverDownParams { alpha: 0.05, mu: 0.5, p: Self::ladder(k, 0.6, 0.8), gamma: 0.0, candidate_cap: 32, search_budget: 200_000, path_budget: 2_000_000 }
    }
}

/// One `stage key value` row of a run ledger.
pub type LedgerRow = (String, String, String);

fn row(stage: impl ToString, key: &str, value: impl ToString) -> LedgerRow {
    (stage.to_string(), key.to_string(), value.to_string())
}

#[derive(Debug, Clone)]
pub struct CoverDown {
    pub cycles: Vec<Walk>,
    pub leftover: KGraph,
    /// Δ_{k-1} of the leftover inside U, compared with μn.
    pub leftover_codegree: usize,
    pub mu_n: f64,
    pub ledger: Vec<LedgerRow>,
}

fn u_count(e: &[Vertex], u: &BTreeSet<Vertex>) -> usize {
    e.iter().filter(|v| u.contains(v)).count()
}

/// Packs cycles covering every edge of H outside H[U]; what remains lies in H[U].
pub fn cover_down<R: Rng>(h: &KGraph, u: &BTreeSet<Vertex>, l: usize, params: &CoverDownParams, rng: &mut R) -> Result<CoverDown> {
    let k = h.k();
    let n = h.vertex_count();
    if params.p.len() + 1 != k {
        return Err(Error::RangeError(format!("need {} reserve probabilities", k - 1)));
    }
    if l < 2 * k - 1 {
        return Err(Error::RangeError(format!("need ℓ >= 2k - 1, got ℓ = {l}")));
    }
    if !u.is_subset(h.vertices()) {
        return Err(Error::UnknownVertex(*u.difference(h.vertices()).next().expect("nonempty difference")));
    }
    let fail = |stage: usize, reason: String| Error::CoverDownFailure { stage, reason };
    let outside: Vec<Edge> = h.edges().iter().filter(|e| u_count(e, u) < k).cloned().collect();
    let mut ledger = vec![row("input", "edges", h.edge_count()), row("input", "outside_u", outside.len())];
    let mu_n = params.mu * n as f64;
    if outside.is_empty() {
        let leftover = h.clone();
        let leftover_codegree = if leftover.is_empty() { 0 } else { max_degree(&leftover, k - 1)? };
        return Ok(CoverDown { cycles: Vec::new(), leftover, leftover_codegree, mu_n, ledger });
    }
    let d2 = delta_r(h, 2, None)?;
    if (d2 as f64) < 2.0 * params.alpha * n as f64 {
        return Err(fail(0, format!("δ^(2)(H) = {d2} < 2αn")));
    }
    let d2u = delta_r(h, 2, Some(u))?;
    if (d2u as f64) < params.alpha * u.len() as f64 {
        return Err(fail(0, format!("δ^(2)(H, U) = {d2u} < α|U|")));
    }
    if let Some((v, d)) = h.vertex_degrees().into_iter().find(|(v, d)| !u.contains(v) && d % k != 0) {
        return Err(Error::DegreeNotDivisible(v, d, k));
    }

    // reserves, then a greedy packing of the rest of H - H[U]
    let mut reserve = KGraph::empty(k)?;
    let mut rest = KGraph::empty(k)?;
    for e in &outside {
        let i = u_count(e, u);
        if i > 0 && rng.gen_bool(params.p[i - 1]) {
            reserve.insert_edge(e)?;
        } else {
            rest.insert_edge(e)?;
        }
    }
    ledger.push(row("reserve", "edges", reserve.edge_count()));
    let packing = greedy_packing_by(&rest, l, params.gamma, rng, |e| u_count(e, u))?;
    ledger.push(row("packing", "cycles", packing.cycles.len()));
    ledger.push(row("packing", "leftover", packing.leftover.edge_count()));
    ledger.push(row("packing", "max_codegree", packing.achieved));
    let mut cycles = packing.cycles;
    // uncovered edges; the stages may also route through unused edges of H[U]
    let mut remaining = crate::graph::union(&packing.leftover, &reserve, true)?;
    remaining = crate::graph::union(&remaining, &induced(h, u), true)?;

    for i in 0..k - 1 {
        let stage = i + 1;
        let mut j_i: Vec<Edge> = remaining.edges().iter().filter(|e| u_count(e, u) == i).cloned().collect();
        j_i.shuffle(rng);
        let host = KGraph::from_edges(k, remaining.edges().iter().filter(|e| u_count(e, u) >= i).cloned())?;
        ledger.push(row(stage, "to_cover", j_i.len()));
        let search = TrailSearch::new(&host);
        let mut used: HashSet<Edge> = HashSet::new();
        let (mut capped, mut seeded) = (0, 0);
        for e in &j_i {
            if used.contains(e) {
                continue;
            }
            let (mut out, ins): (Vec<Vertex>, Vec<Vertex>) = e.iter().partition(|v| !u.contains(v));
            out.shuffle(rng);
            let mut order = vec![out[0]];
            order.extend(out[2..].iter().copied());
            order.extend(ins);
            order.push(out[1]);
            let a = reverse(&order[1..]);
            let b = order[..k - 1].to_vec();
            used.insert(e.clone());
            let pick = pick_trail(&search, &a, &b, l - 1, &used, params.candidate_cap.max(1), params.search_budget, rng)?;
            let seq = pick.seq.ok_or_else(|| fail(stage, format!("no closing trail for edge {e:?} ({seeded} cycles placed, {} edges to cover)", j_i.len())))?;
            capped += usize::from(pick.capped);
            seeded += 1;
            let w = Walk::cycle(k, &seq[..l])?;
            used.extend(w.edges());
            cycles.push(w);
        }
        for x in &used {
            remaining.remove_edge(x);
        }
        ledger.push(row(stage, "cycles", seeded));
        ledger.push(row(stage, "capped_picks", capped));
    }

    // last stage: links of outside vertices, closed through H[U]
    let stage = k;
    let inside = KGraph::from_edges(k, remaining.edges().iter().filter(|e| u_count(e, u) == k).cloned())?;
    let mut links: BTreeMap<Vertex, Vec<Vec<Vertex>>> = BTreeMap::new();
    for e in remaining.edges().iter().filter(|e| u_count(e, u) < k) {
        let (out, ins): (Vec<Vertex>, Vec<Vertex>) = e.iter().partition(|v| !u.contains(v));
        if out.len() != 1 {
            return Err(fail(stage, format!("edge {e:?} left with {} vertices outside U", out.len())));
        }
        links.entry(out[0]).or_default().push(ins);
    }
    let search = TrailSearch::new(&inside);
    let mut used: HashSet<Edge> = HashSet::new();
    for (v, link) in &links {
        if link.len() % k != 0 {
            return Err(fail(stage, format!("link of {v} has {} edges, not divisible by {k}", link.len())));
        }
        let f = KGraph::from_edges(k - 1, link.iter().cloned())?;
        let paths = match solver::decompose_paths(&f, 2 * k - 2, params.path_budget)? {
            Outcome::Found(c) => c,
            Outcome::None => return Err(fail(stage, format!("link of {v} has no P_{} decomposition", 2 * k - 2))),
            Outcome::BudgetExhausted => return Err(fail(stage, format!("path budget exhausted at {v}"))),
        };
        for p in paths.walk_pieces() {
            // q_1 … q_{k-1} v q_k … q_{2k-2}, closed by a trail of H[U]
            let q = p.seq();
            let a = reverse(&q[k - 1..]);
            let b = q[..k - 1].to_vec();
            let pick = pick_trail(&search, &a, &b, l - k, &used, params.candidate_cap.max(1), params.search_budget, rng)?;
            let seq = pick.seq.ok_or_else(|| fail(stage, format!("no closing trail in H[U] for the link path at {v}")))?;
            let mut full = q[..k - 1].to_vec();
            full.push(*v);
            full.extend_from_slice(&seq[..seq.len() - (k - 1)]);
            let w = Walk::cycle(k, &full)?;
            used.extend(w.windows().filter(|x| !x.contains(v)).map(canonical));
            cycles.push(w);
        }
    }
    ledger.push(row(stage, "links", links.len()));

    // every edge outside H[U] exactly once, the rest inside H[U]
    let mut covered: HashSet<Edge> = HashSet::new();
    for c in &cycles {
        for e in c.edges() {
            if !h.edges().contains(&e) || !covered.insert(e.clone()) {
                return Err(Error::InternalCheck(format!("cover-down cycle edge {e:?} missing or repeated")));
            }
        }
    }
    if let Some(e) = outside.iter().find(|e| !covered.contains(*e)) {
        return Err(Error::InternalCheck(format!("edge {e:?} outside H[U] left uncovered")));
    }
    let leftover = KGraph::from_edges(k, h.edges().iter().filter(|e| !covered.contains(*e)).cloned())?;
    let leftover_codegree = if leftover.is_empty() { 0 } else { max_degree(&leftover, k - 1)? };
    ledger.push(row("result", "cycles", cycles.len()));
    ledger.push(row("result", "leftover", leftover.edge_count()));
    ledger.push(row("result", "leftover_codegree", leftover_codegree));
    ledger.push(row("result", "mu_n", mu_n));
    Ok(CoverDown { cycles, leftover, leftover_codegree, mu_n, ledger })
}

#[derive(Debug, Clone)]
pub struct PipelineParams {
    pub delta: f64,
    pub xi: f64,
    pub m_prime: usize,
    pub retries: usize,
    pub cover: CoverDownParams,
    /// Node budget of the final exact solve.
    pub solve_budget: u64,
}

impl PipelineParams {
    pub fn defaults(k: usize) -> Self {
        PipelineParams { delta: 0.5, xi: 0.5, m_prime: 20, retries: DEFAULT_RETRIES, cover: CoverDownParams::defaults(k), solve_budget: solver::DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    /// Full C_ℓ-decomposition, when every stage succeeded.
    pub certificate: Option<Certificate>,
    pub cycles: Vec<Walk>,
    pub remaining: KGraph,
    pub ledger: Vec<LedgerRow>,
}

/// Vortex, iterated cover-down, then an exact solve of the last level.
pub fn pipeline<R: Rng>(h: &KGraph, l: usize, params: &PipelineParams, rng: &mut R) -> Result<PipelineReport> {
    if !is_cycle_divisible(h, l) {
        return Err(Error::NotDivisible(format!("H with {} edges is not C_{l}-divisible", h.edge_count())));
    }
    let mut ledger = Vec::new();
    let mut cycles = Vec::new();
    let mut remaining = h.clone();
    let finish = |remaining: &KGraph, mut cycles: Vec<Walk>, mut ledger: Vec<LedgerRow>, budget: u64| -> Result<PipelineReport> {
        match solver::decompose_cycles(remaining, l, budget)? {
            Outcome::Found(c) => {
                ledger.push(row("final", "solved_edges", remaining.edge_count()));
                cycles.extend(c.walk_pieces().into_iter().cloned());
                let cert = Certificate::walks(CertKind::Cycles(l), cycles.clone());
                Ok(PipelineReport { certificate: Some(cert), cycles, remaining: KGraph::empty(remaining.k())?, ledger })
            }
            other => {
                let tag = if matches!(other, Outcome::None) { "no_decomposition" } else { "budget_exhausted" };
                ledger.push(row("final", tag, remaining.edge_count()));
                Ok(PipelineReport { certificate: None, cycles, remaining: remaining.clone(), ledger })
            }
        }
    };
    if h.vertex_count() <= params.m_prime {
        return finish(&remaining, cycles, ledger, params.solve_budget);
    }
    let vortex = match sample_vortex(h, params.delta, params.xi, params.m_prime, rng, params.retries) {
        Ok(v) => v,
        Err(e) => {
            ledger.push(row("vortex", "failure", e));
            return Ok(PipelineReport { certificate: None, cycles, remaining, ledger });
        }
    };
    ledger.push(row("vortex", "levels", vortex.levels.len()));
    for (i, w) in vortex.levels.windows(2).enumerate() {
        let level = induced(&remaining, &w[0]);
        let outside_level = minus(&remaining, &level)?;
        if !outside_level.is_empty() {
            ledger.push(row(i, "stray_edges", outside_level.edge_count()));
            return Ok(PipelineReport { certificate: None, cycles, remaining, ledger });
        }
        match cover_down(&level, &w[1], l, &params.cover, rng) {
            Ok(cd) => {
                ledger.push(row(i, "covered", level.edge_count() - cd.leftover.edge_count()));
                ledger.extend(cd.ledger.into_iter().map(|(s, k, v)| (format!("{i}:{s}"), k, v)));
                cycles.extend(cd.cycles);
                remaining = cd.leftover;
            }
            Err(e) => {
                ledger.push(row(i, "failure", e));
                return Ok(PipelineReport { certificate: None, cycles, remaining, ledger });
            }
        }
    }
    finish(&remaining, cycles, ledger, params.solve_budget)
}
