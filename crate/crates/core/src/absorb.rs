//! Tour augmentation (balance, spread, focus, untangle), transformers,
//! absorbers and the degree adjuster.
//!
//! All constructions are host-free: new cycles live on vertices drawn from a
//! [`FreshVertexSupply`], so every added edge contains a fresh vertex and is
//! automatically disjoint from the input graph and from earlier additions.
//! Each stage keeps a logical residual (the tuples the lemmas talk about) next
//! to the raw trails; the two are reconciled by cancellation at the end.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Outcome, Result};
use crate::gadgets::{balancer_into, swapper_into, Builder};
use crate::graph::{canonical, check_edge_bijective, complete, complete_on, delta_r, is_cycle_divisible, is_f_divisible, minus, tight_cycle_graph, Edge, KGraph, Vertex};
use crate::randomized::{extend_all, ExtendConfig, SparsePairList};
use crate::solver::{self, CertKind, Certificate, Piece};
use crate::tourtrail::{arc_graph_of, is_i_convert_residual, merge_walks, trivial_decomposition, zeta, zeta_bar, Residual, TourTrailDecomposition};
use crate::walks::{replace, reverse, FreshVertexSupply, Tuple, Walk};

/// One row of an augmentation ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: String,
    pub edges_added: usize,
    /// The lemma bound the stage is checked against, if any.
    pub bound: Option<u128>,
    /// The quantity compared with `bound` (edges, or |G ∪ J|).
    pub measured: usize,
    /// Logical residual after the stage.
    pub residual: Residual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PrimeChoice {
    /// Smallest prime m₁ with |E(G₁)| < m₁/k.
    #[default]
    Minimal,
    /// Smallest prime at least kℓm^{k+1}.
    Wide,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AugmentOptions {
    pub prime: PrimeChoice,
}

#[derive(Debug, Clone)]
pub struct AugmentResult {
    pub k: usize,
    pub l: usize,
    /// J as a list of edge-disjoint tight ℓ-cycles.
    pub cycles: Vec<Walk>,
    /// Tour decomposition of G ∪ J.
    pub final_decomposition: TourTrailDecomposition,
    pub stage_log: Vec<StageRecord>,
    pub m1: usize,
    pub z: Vec<Vertex>,
}

impl AugmentResult {
    pub fn j(&self) -> KGraph {
        cycles_graph(self.k, &self.cycles)
    }

    pub fn j_edge_count(&self) -> usize {
        self.cycles.iter().map(Walk::edge_count).sum()
    }
}

fn cycles_graph(k: usize, cycles: &[Walk]) -> KGraph {
    let mut g = KGraph::empty(k).expect("k validated upstream");
    for c in cycles {
        for e in c.windows() {
            g.insert_edge(e).expect("cycles are edge-disjoint");
        }
    }
    g
}

fn pow_u128(b: usize, e: usize) -> u128 {
    (b as u128).saturating_pow(e as u32)
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(mut n: usize) -> usize {
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// p_i(v) for all vertices of a tuple multiset, ordered by vertex.
fn p_map(tuples: &[Tuple], k: usize) -> BTreeMap<Vertex, Vec<i64>> {
    let mut p: BTreeMap<Vertex, Vec<i64>> = BTreeMap::new();
    for t in tuples {
        for (i, &v) in t.iter().enumerate() {
            p.entry(v).or_insert_with(|| vec![0; k])[i + 1] += 1;
        }
    }
    p
}

fn multiset_eq(a: Vec<Tuple>, b: Vec<Tuple>) -> bool {
    Residual::new(a).reduced() == Residual::new(b).reduced()
}

/// Working state shared by the stages.
struct State<'a> {
    k: usize,
    l: usize,
    cycles: Vec<Walk>,
    walks: Vec<Walk>,
    residual: Vec<Tuple>,
    edges: usize,
    log: Vec<StageRecord>,
    /// Set when replaying onto a homomorphic image: vertices it identifies
    /// must never share a gadget cycle.
    phi: Option<&'a BTreeMap<Vertex, Vertex>>,
}

impl<'a> State<'a> {
    fn new(k: usize, l: usize, walks: Vec<Walk>, residual: Vec<Tuple>) -> Self {
        State { k, l, cycles: Vec::new(), walks, residual, edges: 0, log: Vec::new(), phi: None }
    }

    fn gadget(&mut self, supply: &mut FreshVertexSupply, f: impl FnOnce(&mut Builder) -> Result<()>) -> Result<Vec<Tuple>> {
        let mut b = Builder::new(self.k, self.l, supply)?;
        f(&mut b)?;
        let (cycles, trails, claimed) = b.into_parts();
        self.edges += cycles.iter().map(Walk::edge_count).sum::<usize>();
        self.cycles.extend(cycles);
        self.walks.extend(trails);
        Ok(claimed)
    }

    fn collapsed(&self, x: Vertex, y: Vertex) -> bool {
        self.phi.is_some_and(|p| p.get(&x).is_some_and(|a| p.get(&y) == Some(a)))
    }

    /// B_j(x, y); routed through a fresh hub when x and y are identified.
    fn balancer(&mut self, supply: &mut FreshVertexSupply, j: usize, x: Vertex, y: Vertex) -> Result<()> {
        let pairs = if self.collapsed(x, y) {
            let w = supply.draw();
            vec![(x, w), (w, y)]
        } else {
            vec![(x, y)]
        };
        for (a, b) in pairs {
            let claimed = self.gadget(supply, |bd| balancer_into(bd, j, a, b))?;
            self.residual.extend(claimed);
        }
        Ok(())
    }

    fn swapper(&mut self, supply: &mut FreshVertexSupply, i: usize, y: &[Vertex], y2: &[Vertex], x: Vertex, x2: Vertex, expect: Vec<Tuple>) -> Result<()> {
        let (y, y2) = (y.to_vec(), y2.to_vec());
        let claimed = self.gadget(supply, |bd| swapper_into(bd, i, &y, &y2, x, x2))?;
        if !multiset_eq(claimed, expect) {
            return Err(Error::InternalCheck(format!("swapper T_{i} residual differs from the planned rewrite")));
        }
        Ok(())
    }

    fn record(&mut self, stage: impl Into<String>, start_edges: usize, bound: Option<u128>, measured: usize) -> Result<()> {
        let rec = StageRecord {
            stage: stage.into(),
            edges_added: self.edges - start_edges,
            bound,
            measured,
            residual: Residual::new(self.residual.clone()),
        };
        let violated = bound.is_some_and(|b| measured as u128 > b);
        let msg = format!("stage {} measured {} above bound {:?}", rec.stage, measured, bound);
        self.log.push(rec);
        if violated {
            return Err(Error::InternalCheck(msg));
        }
        Ok(())
    }

    fn balance(&mut self, supply: &mut FreshVertexSupply) -> Result<()> {
        let k = self.k;
        if k % 2 == 0 {
            let odd: Vec<Vertex> = p_map(&self.residual, k).into_iter().filter(|(_, p)| p[k / 2] % 2 != 0).map(|(v, _)| v).collect();
            if odd.len() % 2 != 0 {
                return Err(Error::InternalCheck("odd number of vertices with p_{k/2} odd".into()));
            }
            for pair in odd.chunks(2) {
                self.balancer(supply, k / 2, pair[0], pair[1])?;
            }
        }
        for i in (2..k).take_while(|&i| 2 * i < k) {
            let (mut tails, mut heads) = (Vec::new(), Vec::new());
            for (v, p) in p_map(&self.residual, k) {
                let w = p[i] - p[k - i];
                let slot = if w < 0 { &mut tails } else { &mut heads };
                slot.extend(std::iter::repeat_n(v, w.unsigned_abs() as usize));
            }
            if tails.len() != heads.len() {
                return Err(Error::InternalCheck(format!("w_{i} does not sum to zero")));
            }
            for (x, y) in tails.into_iter().zip(heads) {
                self.balancer(supply, i, x, y)?;
            }
        }
        let (mut tails, mut heads) = (Vec::new(), Vec::new());
        for (v, p) in p_map(&self.residual, k) {
            let s = p[1] - p[k - 1];
            if s % k as i64 != 0 {
                return Err(Error::InternalCheck(format!("b({v}) = {s}/{k} is not an integer")));
            }
            let b = s / k as i64;
            let slot = if b > 0 { &mut tails } else { &mut heads };
            slot.extend(std::iter::repeat_n(v, b.unsigned_abs() as usize));
        }
        if tails.len() != heads.len() {
            return Err(Error::InternalCheck("b does not sum to zero".into()));
        }
        for (x, y) in tails.into_iter().zip(heads) {
            self.balancer(supply, k - 1, x, y)?;
        }
        self.residual = Residual::new(std::mem::take(&mut self.residual)).reduced().tuples().to_vec();
        if !Residual::new(self.residual.clone()).is_balanced(k) {
            return Err(Error::InternalCheck("balancing left an unbalanced residual".into()));
        }
        Ok(())
    }

    /// One cycle per window u_{j+1}…u_{j+k-1}, kept as a single open trail.
    fn spread(&mut self, u: &[Vertex], supply: &mut FreshVertexSupply) -> Result<()> {
        let (k, l, m) = (self.k, self.l, u.len());
        for j in 0..m {
            let window: Vec<Vertex> = (1..k).map(|t| u[(j + t) % m]).collect();
            let mut core = window.clone();
            core.extend(supply.draw_n(l + 1 - k));
            let cycle = Walk::cycle(k, &core)?;
            let mut seq = core;
            seq.extend_from_slice(&window);
            self.walks.push(Walk::new(k, seq, false)?);
            self.edges += cycle.edge_count();
            self.cycles.push(cycle);
            self.residual.push(reverse(&window));
            self.residual.push(window);
        }
        Ok(())
    }

    /// Case i < k/2: two sub-rounds of swappers along an Euler circuit of A_i.
    fn convert_round(&mut self, i: usize, z: &[Vertex], supply: &mut FreshVertexSupply) -> Result<()> {
        let k = self.k;
        let before = Residual::new(std::mem::take(&mut self.residual));
        let n = before.len();
        if n % 2 != 0 {
            return Err(Error::InternalCheck("odd residual in a focus round".into()));
        }
        let arcs = arc_graph_of(&before, k, i)?;
        let circuit = arcs.euler_circuit().ok_or_else(|| Error::InternalCheck(format!("A_{i} has no Euler circuit")))?;
        let b: Vec<Tuple> = circuit.iter().map(|&a| before.tuples()[a].clone()).collect();
        let (zi, zk) = (z[i - 1], z[k - i - 1]);
        let mut c = b.clone();
        for j in 0..n / 2 {
            let (odd, even) = (&b[2 * j], &b[2 * j + 1]);
            let star = odd[k - i - 1];
            debug_assert_eq!(even[i - 1], star);
            let new_even = replace(even, i, zi)?;
            let new_odd = replace(odd, k - i, zi)?;
            let expect = vec![new_even.clone(), reverse(even), reverse(odd), new_odd.clone()];
            self.swapper(supply, i, even, &reverse(odd), zi, star, expect)?;
            c[2 * j + 1] = new_even;
            c[2 * j] = new_odd;
        }
        let mut d = c.clone();
        for j in 0..n / 2 {
            let (lo, hi) = (2 * j + 1, (2 * j + 2) % n);
            let (ce, co) = (&c[lo], &c[hi]);
            let star = ce[k - i - 1];
            debug_assert_eq!(co[i - 1], star);
            let new_hi = replace(co, i, zk)?;
            let new_lo = replace(ce, k - i, zk)?;
            let expect = vec![new_hi.clone(), reverse(co), reverse(ce), new_lo.clone()];
            self.swapper(supply, i, co, &reverse(ce), zk, star, expect)?;
            d[hi] = new_hi;
            d[lo] = new_lo;
        }
        let after = Residual::new(d);
        if !is_i_convert_residual(&before, &after, k, i, z)? {
            return Err(Error::InternalCheck(format!("round {i} is not an {i}-convert")));
        }
        self.residual = after.tuples().to_vec();
        Ok(())
    }

    /// Case i = k/2: pair tuples with equal middle entries.
    fn middle_round(&mut self, z: &[Vertex], supply: &mut FreshVertexSupply) -> Result<()> {
        let k = self.k;
        let h = k / 2;
        let zm = z[h - 1];
        let before = Residual::new(std::mem::take(&mut self.residual));
        let mut groups: BTreeMap<Vertex, Vec<&Tuple>> = BTreeMap::new();
        for t in before.tuples() {
            groups.entry(t[h - 1]).or_default().push(t);
        }
        let mut out = Vec::with_capacity(before.len());
        for (v, list) in groups {
            if list.len() % 2 != 0 {
                return Err(Error::InternalCheck(format!("p_{h}({v}) is odd")));
            }
            for pair in list.chunks(2) {
                let (p, q) = (pair[0], pair[1]);
                let (np, nq) = (replace(p, h, zm)?, replace(q, h, zm)?);
                let expect = vec![np.clone(), reverse(p), reverse(q), nq.clone()];
                self.swapper(supply, h, p, &reverse(q), zm, v, expect)?;
                out.push(np);
                out.push(nq);
            }
        }
        let after = Residual::new(out);
        if !is_i_convert_residual(&before, &after, k, h, z)? {
            return Err(Error::InternalCheck(format!("round {h} is not an {h}-convert")));
        }
        self.residual = after.tuples().to_vec();
        Ok(())
    }

    fn focus(&mut self, u: &[Vertex], z: &[Vertex], supply: &mut FreshVertexSupply) -> Result<()> {
        let (k, l, m1) = (self.k, self.l, u.len());
        let start = self.edges;
        self.spread(u, supply)?;
        self.record("spread", start, Some((l * m1) as u128), self.edges - start)?;
        for i in (1..k).take_while(|&i| 2 * i <= k) {
            let s = self.residual.len() / 2;
            let before = self.edges;
            if 2 * i < k {
                self.convert_round(i, z, supply)?;
            } else {
                self.middle_round(z, supply)?;
            }
            let bound = 2 * pow_u128(3, i) * (k * l * s) as u128;
            self.record(format!("focus:{i}"), before, Some(bound), self.edges - before)?;
        }
        let bound = pow_u128(3, k) * (k * l * m1) as u128;
        self.record("focus", start, Some(bound), self.edges - start)?;
        if self.residual.len() > 3 * m1 {
            return Err(Error::InternalCheck(format!("|D(T2)| = {} > 3m1", self.residual.len())));
        }
        check_focus_shape(&self.residual, z)
    }

    fn untangle(&mut self, z: &[Vertex], supply: &mut FreshVertexSupply) -> Result<()> {
        let (k, l) = (self.k, self.l);
        self.residual = Residual::new(std::mem::take(&mut self.residual)).reduced().tuples().to_vec();
        check_focus_shape(&self.residual, z)?;
        let d_len = self.residual.len();
        let start = self.edges;
        for i in (2..k).take_while(|&i| 2 * i < k) {
            let (zi, zk) = (z[i - 1], z[k - i - 1]);
            let (mut red, mut blue, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for t in std::mem::take(&mut self.residual) {
                match (t[0] == z[0], t[i - 1]) {
                    (true, v) if v == zk => red.push(t),
                    (false, v) if v == zi => blue.push(t),
                    _ => rest.push(t),
                }
            }
            if red.len() != blue.len() {
                return Err(Error::InternalCheck(format!("{} red and {} blue {i}-bad tuples", red.len(), blue.len())));
            }
            if !red.is_empty() {
                let w = supply.draw();
                for (a, b) in red.iter().zip(&blue) {
                    let a1 = replace(a, i, w)?;
                    let b1 = replace(b, k - i, w)?;
                    let a2 = replace(&a1, k - i, zk)?;
                    let b2 = replace(&b1, i, zk)?;
                    let (a3, b3) = (zeta(a, i, z), zeta_bar(b, i, z));
                    let mut claimed = Vec::new();
                    for (y, y2, x, x2) in [(a.clone(), reverse(b), w, zk), (reverse(&a1), b1.clone(), zi, zk), (a2.clone(), reverse(&b2), zi, w)] {
                        claimed.extend(self.gadget(supply, |bd| swapper_into(bd, i, &y, &y2, x, x2))?);
                    }
                    if !multiset_eq(claimed, vec![reverse(a), reverse(b), a3.clone(), b3.clone()]) {
                        return Err(Error::InternalCheck(format!("untangle chain for i = {i} misbehaves")));
                    }
                    rest.push(a3);
                    rest.push(b3);
                }
            }
            self.residual = rest;
        }
        let bound = pow_u128(k, 3) * (l * d_len) as u128;
        self.record("untangle", start, Some(bound), self.edges - start)?;
        if !Residual::new(self.residual.clone()).reduced().is_empty() {
            return Err(Error::InternalCheck("untangled residual does not cancel".into()));
        }
        self.residual.clear();
        Ok(())
    }

    /// Merges all trails and checks the result against `g` and the cycle list.
    fn finish(&mut self, g: &KGraph) -> Result<TourTrailDecomposition> {
        let k = self.k;
        let walks = merge_walks(k, std::mem::take(&mut self.walks));
        let t = TourTrailDecomposition::from_walks(k, walks)?;
        if t.host.edge_count() != g.edge_count() + self.edges || !g.edges().iter().all(|e| t.host.edges().contains(e)) {
            return Err(Error::InternalCheck("final walks do not cover G ∪ J exactly".into()));
        }
        Ok(t)
    }
}

fn check_focus_shape(residual: &[Tuple], z: &[Vertex]) -> Result<()> {
    let k = z.len() + 1;
    for t in residual {
        if t.len() + 1 != k || (1..k).any(|j| t[j - 1] != z[j - 1] && t[j - 1] != z[k - j - 1]) {
            return Err(Error::MalformedResidual(format!("tuple {t:?} not supported on z")));
        }
    }
    Ok(())
}

fn check_degrees(g: &KGraph) -> Result<()> {
    let k = g.k();
    match g.vertex_degrees().into_iter().find(|&(_, d)| d % k != 0) {
        Some((v, d)) => Err(Error::DegreeNotDivisible(v, d, k)),
        None => Ok(()),
    }
}

fn check_params(k: usize, l: usize) -> Result<()> {
    if k < 3 || l < k * k - k + 1 {
        return Err(Error::RangeError(format!("need k >= 3 and ℓ >= k² - k + 1, got k = {k}, ℓ = {l}")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct StageResult {
    pub cycles: Vec<Walk>,
    /// Decomposition of the input graph together with the new cycles, trails merged.
    pub decomposition: TourTrailDecomposition,
    /// The residual the lemmas refer to, before cancellation.
    pub residual: Residual,
    pub stage_log: Vec<StageRecord>,
}

fn stage_result(mut st: State, g: &KGraph) -> Result<StageResult> {
    let residual = Residual::new(st.residual.clone());
    let decomposition = st.finish(g)?;
    if decomposition.residual().reduced() != residual.reduced() {
        return Err(Error::InternalCheck("trail ends disagree with the logical residual".into()));
    }
    Ok(StageResult { cycles: st.cycles, decomposition, residual, stage_log: st.log })
}

/// Adds balancer gadgets to G until the decomposition is balanced.
pub fn balance(g: &KGraph, t0: &TourTrailDecomposition, l: usize, supply: &mut FreshVertexSupply) -> Result<StageResult> {
    let k = g.k();
    check_params(k, l)?;
    check_degrees(g)?;
    if &t0.host != g {
        return Err(Error::InternalCheck("T0 does not decompose G".into()));
    }
    supply.reserve(g.vertices().iter().copied());
    let mut st = State::new(k, l, t0.walks.clone(), t0.residual().reduced().tuples().to_vec());
    st.balance(supply)?;
    let m = g.vertex_count();
    st.record("balance", 0, Some(l as u128 * pow_u128(m, k + 1)), g.edge_count() + st.edges)?;
    stage_result(st, g)
}

/// m cycles through the windows of U, each kept as one trail.
pub fn spread(u: &[Vertex], k: usize, l: usize, supply: &mut FreshVertexSupply) -> Result<StageResult> {
    check_params(k, l)?;
    if !is_prime(u.len()) {
        return Err(Error::NotPrime(u.len()));
    }
    if u.iter().collect::<BTreeSet<_>>().len() != u.len() {
        return Err(Error::InvalidSize("U has repeated vertices".into()));
    }
    supply.reserve(u.iter().copied());
    let mut st = State::new(k, l, Vec::new(), Vec::new());
    st.spread(u, supply)?;
    st.record("spread", 0, Some((l * u.len()) as u128), st.edges)?;
    let empty = KGraph::empty(k)?;
    stage_result(st, &empty)
}

/// Spread followed by the i-convert rounds; V(G1) (sorted) plays the role of U.
pub fn focus(g1: &KGraph, t1: &TourTrailDecomposition, z: &[Vertex], l: usize, supply: &mut FreshVertexSupply) -> Result<StageResult> {
    let k = g1.k();
    check_params(k, l)?;
    let m1 = g1.vertex_count();
    if !is_prime(m1) {
        return Err(Error::NotPrime(m1));
    }
    if k * g1.edge_count() >= m1 {
        return Err(Error::TooDense { edges: g1.edge_count(), vertices: m1, k });
    }
    if &t1.host != g1 {
        return Err(Error::InternalCheck("T1 does not decompose G1".into()));
    }
    if !t1.residual().is_balanced(k) {
        return Err(Error::NotBalanced);
    }
    check_z(z, k, g1)?;
    supply.reserve(g1.vertices().iter().copied().chain(z.iter().copied()));
    let u: Vec<Vertex> = g1.vertices().iter().copied().collect();
    let mut st = State::new(k, l, t1.walks.clone(), t1.residual().reduced().tuples().to_vec());
    st.focus(&u, z, supply)?;
    stage_result(st, g1)
}

fn check_z(z: &[Vertex], k: usize, g: &KGraph) -> Result<()> {
    if z.len() + 1 != k {
        return Err(Error::BadTupleLength(z.len(), k - 1));
    }
    if z.iter().collect::<BTreeSet<_>>().len() != z.len() || z.iter().any(|v| g.vertices().contains(v)) {
        return Err(Error::AnchorCollision("z must be distinct vertices outside G".into()));
    }
    Ok(())
}

/// Repairs the i-bad tuples of a focused decomposition so that it cancels.
pub fn untangle(g2: &KGraph, t2: &TourTrailDecomposition, z: &[Vertex], l: usize, supply: &mut FreshVertexSupply) -> Result<StageResult> {
    let k = g2.k();
    check_params(k, l)?;
    if &t2.host != g2 {
        return Err(Error::InternalCheck("T2 does not decompose G2".into()));
    }
    if !t2.residual().is_balanced(k) {
        return Err(Error::NotBalanced);
    }
    if z.len() + 1 != k {
        return Err(Error::BadTupleLength(z.len(), k - 1));
    }
    supply.reserve(g2.vertices().iter().copied().chain(z.iter().copied()));
    let mut st = State::new(k, l, t2.walks.clone(), t2.residual().reduced().tuples().to_vec());
    st.untangle(z, supply)?;
    stage_result(st, g2)
}

/// Smallest admissible prime for the padded graph G1.
fn choose_m1(k: usize, l: usize, m: usize, edges: usize, vertices: usize, spacing: usize, choice: PrimeChoice) -> usize {
    let mut lo = (k * edges + 1).max(vertices).max(k + 1).max(spacing);
    if choice == PrimeChoice::Wide {
        let wide = (k * l) as u128 * pow_u128(m, k + 1);
        lo = lo.max(usize::try_from(wide).unwrap_or(usize::MAX));
    }
    next_prime(lo)
}

/// Orders U so that each window of k-1 consecutive entries holds at most one
/// vertex of `spaced` (requires |U| ≥ (k-1)|spaced|).
fn order_u(k: usize, spaced: &[Vertex], others: &[Vertex]) -> Vec<Vertex> {
    if spaced.is_empty() || k < 3 {
        return spaced.iter().chain(others).copied().collect();
    }
    let mut out = Vec::with_capacity(spaced.len() + others.len());
    let mut rest = others.iter().copied();
    for &g in spaced {
        out.push(g);
        out.extend(rest.by_ref().take(k - 2));
    }
    out.extend(rest);
    out
}

fn augment_with(g: &KGraph, l: usize, supply: &mut FreshVertexSupply, phi: Option<&BTreeMap<Vertex, Vertex>>, opts: AugmentOptions) -> Result<AugmentResult> {
    let k = g.k();
    check_params(k, l)?;
    check_degrees(g)?;
    supply.reserve(g.vertices().iter().copied());
    let t0 = trivial_decomposition(g, None)?;
    if g.edge_count() == 0 {
        return Ok(AugmentResult { k, l, cycles: Vec::new(), final_decomposition: t0, stage_log: Vec::new(), m1: 0, z: Vec::new() });
    }
    let m = g.vertex_count();
    let mut st = State::new(k, l, t0.walks.clone(), t0.residual().reduced().tuples().to_vec());
    st.phi = phi;

    st.balance(supply)?;
    st.record("balance", 0, Some(l as u128 * pow_u128(m, k + 1)), g.edge_count() + st.edges)?;

    let mut v1: BTreeSet<Vertex> = g.vertices().clone();
    for c in &st.cycles {
        v1.extend(c.core().iter().copied());
    }
    let injective = phi.is_none_or(|p| p.values().collect::<BTreeSet<_>>().len() == p.len());
    let spacing = if injective { 0 } else { (k - 1) * m };
    let e1 = g.edge_count() + st.edges;
    let m1 = choose_m1(k, l, m, e1, v1.len(), spacing, opts.prime);
    let padding = supply.draw_n(m1 - v1.len());
    let spaced: Vec<Vertex> = if injective { Vec::new() } else { g.vertices().iter().copied().collect() };
    let others: Vec<Vertex> = v1.iter().copied().filter(|v| injective || !g.vertices().contains(v)).chain(padding).collect();
    let u = order_u(k, &spaced, &others);
    debug_assert_eq!(u.len(), m1);
    let z = supply.draw_n(k - 1);

    st.focus(&u, &z, supply)?;
    st.untangle(&z, supply)?;

    let decomposition = st.finish(g)?;
    if !decomposition.walks.iter().all(Walk::is_tour) {
        return Err(Error::InternalCheck("merged decomposition still has trails".into()));
    }
    let bound = pow_u128(3, k + 2) * pow_u128(k, 4) * pow_u128(l, 2) * pow_u128(m, k + 1);
    st.record("tour_augment", 0, Some(bound), decomposition.host.edge_count())?;
    Ok(AugmentResult { k, l, cycles: st.cycles, final_decomposition: decomposition, stage_log: st.log, m1, z })
}

/// Finds J such that G ∪ J has a tour decomposition: balance, pad to a prime,
/// focus, untangle.
pub fn tour_augment(g: &KGraph, l: usize, supply: &mut FreshVertexSupply) -> Result<AugmentResult> {
    augment_with(g, l, supply, None, AugmentOptions::default())
}

pub fn tour_augment_with(g: &KGraph, l: usize, supply: &mut FreshVertexSupply, opts: AugmentOptions) -> Result<AugmentResult> {
    augment_with(g, l, supply, None, opts)
}

#[derive(Debug, Clone)]
pub struct MirroredAugment {
    pub first: AugmentResult,
    /// ψ(J) as cycles.
    pub second_cycles: Vec<Walk>,
    /// Tour decomposition of G' ∪ ψ(J).
    pub second_decomposition: TourTrailDecomposition,
    /// The extension ψ of φ to V(G ∪ J).
    pub psi: BTreeMap<Vertex, Vertex>,
}

fn map_seq(seq: &[Vertex], psi: &BTreeMap<Vertex, Vertex>) -> Vec<Vertex> {
    seq.iter().map(|v| psi[v]).collect()
}

fn check_phi(g: &KGraph, g2: &KGraph, phi: &BTreeMap<Vertex, Vertex>) -> Result<()> {
    if let Some(v) = g.vertices().iter().find(|v| !phi.contains_key(v)) {
        return Err(Error::NotHomomorphism(format!("φ undefined at {v}")));
    }
    check_edge_bijective(g, g2, &|v| phi[&v])
}

/// Augments G and replays the construction on G' through φ, so that the
/// extension ψ of φ is edge-bijective from G ∪ J onto G' ∪ J'.
pub fn mirrored_augment(g: &KGraph, g2: &KGraph, phi: &BTreeMap<Vertex, Vertex>, l: usize, supply: &mut FreshVertexSupply) -> Result<MirroredAugment> {
    check_phi(g, g2, phi)?;
    supply.reserve(g2.vertices().iter().copied());
    let first = augment_with(g, l, supply, Some(phi), AugmentOptions::default())?;
    let k = g.k();
    let mut psi: BTreeMap<Vertex, Vertex> = g.vertices().iter().map(|v| (*v, phi[v])).collect();
    let new_vertices: BTreeSet<Vertex> = first.cycles.iter().flat_map(|c| c.core().iter().copied()).filter(|v| !psi.contains_key(v)).collect();
    for v in new_vertices {
        psi.insert(v, supply.draw());
    }
    let second_cycles = first
        .cycles
        .iter()
        .map(|c| Walk::cycle(k, &map_seq(c.core(), &psi)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::InternalCheck(format!("a mirrored cycle degenerates: {e}")))?;
    let walks = first
        .final_decomposition
        .walks
        .iter()
        .map(|w| Walk::new(k, map_seq(w.seq(), &psi), w.is_tour()))
        .collect::<Result<Vec<_>>>()?;
    let mut host2 = g2.clone();
    for c in &second_cycles {
        for e in c.windows() {
            host2.insert_edge(e).map_err(|_| Error::InternalCheck("mirrored cycles overlap".into()))?;
        }
    }
    check_edge_bijective(&first.final_decomposition.host, &host2, &|v| psi[&v])?;
    let second_decomposition = TourTrailDecomposition::new(host2, walks)?;
    Ok(MirroredAugment { first, second_cycles, second_decomposition, psi })
}

#[derive(Debug, Clone)]
pub struct TransformerResult {
    pub t: KGraph,
    /// Cycle decomposition of T ∪ G.
    pub cert_with_g: Certificate,
    /// Cycle decomposition of T ∪ G'.
    pub cert_with_g2: Certificate,
}

/// η(x) = 3^{k+3} k⁵ ℓ³ x^{k+1}.
pub fn eta(k: usize, l: usize, x: usize) -> u128 {
    pow_u128(3, k + 3) * pow_u128(k, 5) * pow_u128(l, 3) * pow_u128(x, k + 1)
}

/// A (G, G'; C_ℓ)-transformer for an edge-bijective φ: G → G'.
pub fn transformer(g: &KGraph, g2: &KGraph, phi: &BTreeMap<Vertex, Vertex>, l: usize, supply: &mut FreshVertexSupply) -> Result<TransformerResult> {
    let k = g.k();
    if k < 3 || l < 2 * (k * k - k) + 1 {
        return Err(Error::RangeError(format!("transformer needs ℓ >= 2(k² - k) + 1, got ℓ = {l}")));
    }
    if !g.vertices().is_disjoint(g2.vertices()) {
        return Err(Error::Overlap);
    }
    for h in [g, g2] {
        if !is_cycle_divisible(h, l) {
            return Err(Error::NotDivisible(format!("a graph with {} edges is not C_{l}-divisible", h.edge_count())));
        }
    }
    check_phi(g, g2, phi)?;
    supply.reserve(g.vertices().iter().chain(g2.vertices()).copied());
    let mirror = mirrored_augment(g, g2, phi, l, supply)?;
    let psi = &mirror.psi;

    let (a, b) = ((k - 1) * (k - 1), l - k * k);
    let mut t = cycles_graph(k, &mirror.first.cycles);
    for c in &mirror.second_cycles {
        for e in c.windows() {
            t.insert_edge(e)?;
        }
    }
    let mut with_g: Vec<Walk> = mirror.second_cycles.clone();
    let mut with_g2: Vec<Walk> = mirror.first.cycles.clone();
    for tour in &mirror.first.final_decomposition.walks {
        let v = tour.core();
        let n = v.len();
        let at = |j: usize| v[j % n];
        let w = |j: usize| psi[&v[j % n]];
        let xs: Vec<Vec<Vertex>> = (0..n).map(|_| supply.draw_n(a)).collect();
        let ys: Vec<Vec<Vertex>> = (0..n).map(|_| supply.draw_n(b)).collect();
        for j in 0..n {
            let mut c1: Vec<Vertex> = (j..j + k).map(at).collect();
            c1.extend(&xs[j]);
            c1.extend((j..j + k - 1).map(w));
            c1.extend(&ys[j]);
            let mut c2: Vec<Vertex> = (j..j + k).map(w).collect();
            c2.extend(&ys[(j + 1) % n]);
            c2.extend((j + 1..j + k).map(at));
            c2.extend(&xs[j]);
            let c1 = Walk::cycle(k, &c1)?;
            for e in c1.windows().skip(1) {
                t.insert_edge(e)?;
            }
            with_g.push(c1);
            with_g2.push(Walk::cycle(k, &c2)?);
        }
    }
    let cert_with_g = Certificate::walks(CertKind::Cycles(l), with_g);
    let cert_with_g2 = Certificate::walks(CertKind::Cycles(l), with_g2);
    let res = TransformerResult { t, cert_with_g, cert_with_g2 };
    check_transformer(g, g2, &res)?;
    let m = g.vertex_count().max(g2.vertex_count());
    if res.t.vertex_count() as u128 > eta(k, l, m) {
        return Err(Error::InternalCheck(format!("|V(T)| = {} exceeds η({m})", res.t.vertex_count())));
    }
    Ok(res)
}

/// Both certificates verify and T has no edge inside V(G) or V(G').
pub fn check_transformer(g: &KGraph, g2: &KGraph, r: &TransformerResult) -> Result<()> {
    for (h, cert) in [(g, &r.cert_with_g), (g2, &r.cert_with_g2)] {
        if r.t.edges().iter().any(|e| e.iter().all(|v| h.vertices().contains(v))) {
            return Err(Error::InternalCheck("T has an edge inside V(G)".into()));
        }
        let host = crate::graph::union(&r.t, h, true)?;
        let rep = solver::verify(&host, cert);
        if !rep.ok() {
            return Err(Error::InternalCheck(format!("transformer certificate fails: {:?}", rep.failures.first())));
        }
    }
    Ok(())
}

/// ∇_{F,u}(G) with the F-copies (maps from V(F)) that complete each edge of G.
#[derive(Debug, Clone)]
pub struct Extension {
    pub graph: KGraph,
    /// One copy per edge of G, in edge order; the anchor goes to the ordered edge.
    pub copies: Vec<BTreeMap<Vertex, Vertex>>,
    pub pattern: KGraph,
}

impl Extension {
    /// F-decomposition of G ∪ ∇(G).
    pub fn certificate(&self) -> Certificate {
        Certificate { kind: CertKind::FCopies, pieces: self.copies.iter().cloned().map(Piece::Map).collect(), pattern: Some(self.pattern.clone()) }
    }
}

pub fn extension_graph(f: &KGraph, anchor: &[Vertex], g: &KGraph, order: &dyn Fn(&Edge) -> Vec<Vertex>, supply: &mut FreshVertexSupply) -> Result<Extension> {
    let k = f.k();
    if g.k() != k {
        return Err(Error::UniformityMismatch(g.k(), k));
    }
    if anchor.len() != k || !f.contains_edge(anchor) {
        return Err(Error::AnchorNotEdge);
    }
    supply.reserve(g.vertices().iter().copied());
    let anchor_edge = canonical(anchor);
    let mut graph = KGraph::empty(k)?;
    let mut copies = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let ord = order(e);
        if canonical(&ord) != *e {
            return Err(Error::InternalCheck(format!("ordering {ord:?} is not a permutation of {e:?}")));
        }
        let mut map: BTreeMap<Vertex, Vertex> = anchor.iter().copied().zip(ord).collect();
        for &v in f.vertices() {
            map.entry(v).or_insert_with(|| supply.draw());
        }
        for fe in f.edges().iter().filter(|fe| **fe != anchor_edge) {
            let img: Vec<Vertex> = fe.iter().map(|v| map[v]).collect();
            graph.insert_edge(&img)?;
        }
        copies.push(map);
    }
    Ok(Extension { graph, copies, pattern: f.clone() })
}

/// Supplies F-decompositions of K_m minus a copy of G.
pub trait CliqueOracle {
    /// Largest clique order worth trying.
    fn max_order(&self) -> usize;
    fn decompose(&self, host: &KGraph, f: &KGraph) -> Result<Outcome<Vec<BTreeMap<Vertex, Vertex>>>>;
}

/// The exact solver with a node budget.
#[derive(Debug, Clone, Copy)]
pub struct SolverOracle {
    pub budget: u64,
    pub max_m: usize,
}

impl Default for SolverOracle {
    fn default() -> Self {
        SolverOracle { budget: solver::DEFAULT_BUDGET, max_m: 16 }
    }
}

impl CliqueOracle for SolverOracle {
    fn max_order(&self) -> usize {
        self.max_m
    }

    fn decompose(&self, host: &KGraph, f: &KGraph) -> Result<Outcome<Vec<BTreeMap<Vertex, Vertex>>>> {
        Ok(solver::f_decompose(host, f, self.budget)?.map(|cert| {
            cert.pieces
                .into_iter()
                .filter_map(|p| match p {
                    Piece::Map(m) => Some(m),
                    Piece::Walk(_) => None,
                })
                .collect()
        }))
    }
}

/// An edge-bijective homomorphism G + qF → K_m (clique on 0..m).
#[derive(Debug, Clone)]
pub struct CliqueHomomorphism {
    pub q: usize,
    pub m: usize,
    /// G + qF; the copies of F sit on fresh vertices.
    pub g_plus: KGraph,
    /// Maps from V(F) onto each added copy.
    pub copies: Vec<BTreeMap<Vertex, Vertex>>,
    pub phi: BTreeMap<Vertex, Vertex>,
}

/// Embeds G into K_m, F-decomposes the rest with the oracle and maps q fresh
/// copies of F onto the pieces. With `m` given only that order is tried.
pub fn clique_homomorphism(g: &KGraph, f: &KGraph, oracle: &dyn CliqueOracle, supply: &mut FreshVertexSupply, m: Option<usize>) -> Result<CliqueHomomorphism> {
    let k = f.k();
    if g.k() != k {
        return Err(Error::UniformityMismatch(g.k(), k));
    }
    supply.reserve(g.vertices().iter().copied());
    let embed: BTreeMap<Vertex, Vertex> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
    let mut g_img = KGraph::empty(k)?;
    for e in g.edges() {
        g_img.insert_edge(&e.iter().map(|v| embed[v]).collect::<Vec<_>>())?;
    }
    let lo = g.vertex_count().max(f.vertex_count()).max(k);
    let orders: Vec<usize> = match m {
        Some(m) => vec![m],
        None => (lo..=oracle.max_order()).collect(),
    };
    for m in orders {
        if m < lo {
            continue;
        }
        let km = complete(m, k)?;
        let rest = minus(&km, &g_img)?;
        if rest.edge_count() % f.edge_count() != 0 || !is_f_divisible(&rest, f)? {
            continue;
        }
        match oracle.decompose(&rest, f)? {
            Outcome::Found(pieces) => {
                let mut g_plus = g.clone();
                let mut phi = embed.clone();
                let mut copies = Vec::with_capacity(pieces.len());
                for piece in &pieces {
                    let copy: BTreeMap<Vertex, Vertex> = f.vertices().iter().map(|&v| (v, supply.draw())).collect();
                    for fe in f.edges() {
                        g_plus.insert_edge(&fe.iter().map(|v| copy[v]).collect::<Vec<_>>())?;
                    }
                    for (v, c) in &copy {
                        phi.insert(*c, piece[v]);
                    }
                    copies.push(copy);
                }
                check_edge_bijective(&g_plus, &km, &|v| phi[&v])
                    .map_err(|e| Error::OracleFailure(format!("oracle output is not a decomposition: {e}")))?;
                return Ok(CliqueHomomorphism { q: pieces.len(), m, g_plus, copies, phi });
            }
            Outcome::None => continue,
            Outcome::BudgetExhausted => return Err(Error::OracleFailure(format!("budget exhausted decomposing K_{m} - G"))),
        }
    }
    Err(Error::OracleFailure(format!("no F-decomposition of K_m - G for m up to {}", oracle.max_order())))
}

#[derive(Debug, Clone)]
pub struct AbsorberResult {
    pub a: KGraph,
    /// C_ℓ-decomposition of A.
    pub cert_a: Certificate,
    /// C_ℓ-decomposition of A ∪ G.
    pub cert_ag: Certificate,
    pub q1: usize,
    pub q2: usize,
    pub m1: usize,
}

fn copy_cycle(k: usize, l: usize, map: &BTreeMap<Vertex, Vertex>) -> Result<Walk> {
    Walk::cycle(k, &(0..l as Vertex).map(|v| map[&v]).collect::<Vec<_>>())
}

/// ψ between ∇-graphs induced by an edge-bijective map of their bases.
fn extension_map(src_base: &KGraph, src: &Extension, dst_base: &KGraph, dst: &Extension, phi: &BTreeMap<Vertex, Vertex>) -> Result<BTreeMap<Vertex, Vertex>> {
    let dst_index: HashMap<&Edge, usize> = dst_base.edges().iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut psi = BTreeMap::new();
    for (e, copy) in src_base.edges().iter().zip(&src.copies) {
        let img = canonical(&e.iter().map(|v| phi[v]).collect::<Vec<_>>());
        let j = *dst_index.get(&img).ok_or_else(|| Error::NotHomomorphism("edge image missing".into()))?;
        for (x, v) in copy {
            psi.insert(*v, dst.copies[j][x]);
        }
    }
    Ok(psi)
}

/// An absorber for a C_ℓ-divisible G, assembled from two transformers
/// between extension graphs; the clique decompositions come from `oracle`.
pub fn absorber(g: &KGraph, l: usize, supply: &mut FreshVertexSupply, oracle: &dyn CliqueOracle) -> Result<AbsorberResult> {
    let k = g.k();
    if !is_cycle_divisible(g, l) {
        return Err(Error::NotDivisible(format!("G with {} edges is not C_{l}-divisible", g.edge_count())));
    }
    let f = tight_cycle_graph(l, k)?;
    let anchor: Vec<Vertex> = (0..k as Vertex).collect();
    supply.reserve(g.vertices().iter().copied());

    let h1 = clique_homomorphism(g, &f, oracle, supply, None)?;
    let m1 = h1.m;
    let h3 = clique_homomorphism(&KGraph::empty(k)?, &f, oracle, supply, Some(m1))?;
    let labels = supply.draw_n(m1);
    let kv = complete_on(&labels, k)?;
    let lift = |phi: &BTreeMap<Vertex, Vertex>| -> BTreeMap<Vertex, Vertex> { phi.iter().map(|(v, i)| (*v, labels[*i as usize])).collect() };
    let (phi1, phi3) = (lift(&h1.phi), lift(&h3.phi));
    let by = |phi: &BTreeMap<Vertex, Vertex>| {
        let phi = phi.clone();
        move |e: &Edge| -> Vec<Vertex> {
            let mut o = e.to_vec();
            o.sort_by_key(|v| phi[v]);
            o
        }
    };
    let g1 = &h1.g_plus;
    let g3 = &h3.g_plus;
    let ext1 = extension_graph(&f, &anchor, g1, &by(&phi1), supply)?;
    let ext2 = extension_graph(&f, &anchor, &kv, &|e: &Edge| e.to_vec(), supply)?;
    let ext3 = extension_graph(&f, &anchor, g3, &by(&phi3), supply)?;
    let psi12 = extension_map(g1, &ext1, &kv, &ext2, &phi1)?;
    let psi32 = extension_map(g3, &ext3, &kv, &ext2, &phi3)?;
    let t1 = transformer(&ext1.graph, &ext2.graph, &psi12, l, supply)?;
    let t2 = transformer(&ext3.graph, &ext2.graph, &psi32, l, supply)?;

    let copies = |ms: &[BTreeMap<Vertex, Vertex>]| ms.iter().map(|m| copy_cycle(k, l, m)).collect::<Result<Vec<_>>>();
    let walks_of = |c: &Certificate| c.walk_pieces().into_iter().cloned().collect::<Vec<_>>();
    let mut ag = copies(&ext1.copies)?;
    ag.extend(walks_of(&t1.cert_with_g2));
    ag.extend(walks_of(&t2.cert_with_g));
    ag.extend(copies(&h3.copies)?);
    let mut a_only = copies(&h1.copies)?;
    a_only.extend(walks_of(&t1.cert_with_g));
    a_only.extend(walks_of(&t2.cert_with_g2));
    a_only.extend(copies(&ext3.copies)?);

    let mut a = minus(g1, g)?;
    for part in [&ext1.graph, &t1.t, &ext2.graph, &t2.t, &ext3.graph, g3] {
        a = crate::graph::union(&a, part, true)?;
    }
    let a: KGraph = KGraph::from_edges(k, a.edges().iter().cloned())?;
    let res = AbsorberResult {
        cert_a: Certificate::walks(CertKind::Cycles(l), a_only),
        cert_ag: Certificate::walks(CertKind::Cycles(l), ag),
        a,
        q1: h1.q,
        q2: h3.q,
        m1,
    };
    check_absorber(g, &res)?;
    Ok(res)
}

pub fn check_absorber(g: &KGraph, r: &AbsorberResult) -> Result<()> {
    if r.a.edges().iter().any(|e| e.iter().all(|v| g.vertices().contains(v))) {
        return Err(Error::InternalCheck("A has an edge inside V(G)".into()));
    }
    let ag = crate::graph::union(&r.a, g, true)?;
    for (h, cert) in [(&r.a, &r.cert_a), (&ag, &r.cert_ag)] {
        let rep = solver::verify(h, cert);
        if !rep.ok() {
            return Err(Error::InternalCheck(format!("absorber certificate fails: {:?}", rep.failures.first())));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct AdjusterParams {
    /// Required δ^{(2)}(H)/n.
    pub epsilon: f64,
    /// Codegree cap μ for the extension process.
    pub mu: f64,
    pub candidate_cap: usize,
    pub search_budget: u64,
}

impl Default for AdjusterParams {
    fn default() -> Self {
        AdjusterParams { epsilon: 0.1, mu: 0.5, candidate_cap: 64, search_budget: 200_000 }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeAdjustment {
    pub h_prime: KGraph,
    /// P_ℓ-decomposition of H'.
    pub certificate: Certificate,
    pub arcs: Vec<(Vertex, Vertex)>,
    pub l0: usize,
    pub pairs: SparsePairList,
    pub max_codegree: usize,
    /// Extension picks that fell back to a capped candidate prefix.
    pub capped_picks: usize,
}

/// Greedy multidigraph D with d⁺ - d⁻ + deg ≡ 0 mod k at every vertex.
pub fn adjuster_arcs(h: &KGraph) -> Vec<(Vertex, Vertex)> {
    let k = h.k() as i64;
    let mut r: BTreeMap<Vertex, i64> = h.vertex_degrees().into_iter().map(|(v, d)| (v, d as i64 % k)).collect();
    let mut arcs = Vec::new();
    loop {
        let positive: Vec<(Vertex, i64)> = r.iter().filter(|(_, &x)| x > 0).map(|(&v, &x)| (v, x)).collect();
        if positive.len() < 2 {
            break;
        }
        // tail: largest residue (it moves up towards k), head: smallest (moves down to 0)
        let &(u, _) = positive.iter().max_by_key(|&&(v, x)| (x, std::cmp::Reverse(v))).expect("nonempty");
        let &(v, _) = positive.iter().filter(|&&(w, _)| w != u).min_by_key(|&&(w, x)| (x, w)).expect("two positives");
        *r.get_mut(&u).expect("present") = (r[&u] + 1) % k;
        *r.get_mut(&v).expect("present") = (r[&v] - 1).rem_euclid(k);
        arcs.push((u, v));
    }
    arcs
}

/// Smallest multiple of ℓ-k+1 that is ≥ k²-k+2 and splits a trail with
/// repeated end vertices into genuine tight paths on ℓ vertices.
pub fn adjuster_length(k: usize, l: usize) -> usize {
    let piece = l + 1 - k;
    let mut l0 = (k * k - k + 2).div_ceil(piece) * piece;
    loop {
        let t = l0 + k - 1;
        let head: Vec<usize> = (0..k - 2).collect();
        let tail: Vec<usize> = (t - k + 1..t - 1).collect();
        let ok = (0..l0 / piece).all(|p| {
            let span = p * piece..p * piece + l;
            !(head.iter().any(|x| span.contains(x)) && tail.iter().any(|x| span.contains(x)))
        });
        if ok {
            return l0;
        }
        l0 += piece;
    }
}

/// A P_ℓ-decomposable H' ⊆ H whose removal makes every degree divisible by k.
pub fn degree_adjuster<R: Rng>(h: &KGraph, l: usize, params: &AdjusterParams, rng: &mut R) -> Result<DegreeAdjustment> {
    let k = h.k();
    if l <= k {
        return Err(Error::RangeError(format!("need ℓ > k, got ℓ = {l}")));
    }
    let n = h.vertex_count();
    let d2 = delta_r(h, 2, None)?;
    if (d2 as f64) < params.epsilon * n as f64 {
        return Err(Error::HostTooSparse(format!("δ^(2)(H) = {d2} < εn = {}", params.epsilon * n as f64)));
    }
    let arcs = adjuster_arcs(h);
    let l0 = adjuster_length(k, l);
    let vertices: Vec<Vertex> = h.vertices().iter().copied().collect();
    let mut pairs = Vec::with_capacity(arcs.len());
    for &(u, v) in &arcs {
        let pool: Vec<Vertex> = vertices.iter().copied().filter(|&w| w != u && w != v).collect();
        let x: Vec<Vertex> = pool.choose_multiple(rng, k - 2).copied().collect();
        let a: Tuple = std::iter::once(u).chain(x.iter().rev().copied()).collect();
        let b: Tuple = x.iter().copied().chain(std::iter::once(v)).collect();
        pairs.push((a, b));
    }
    let pairs = SparsePairList { n, pairs };
    let cfg = ExtendConfig { edge_count: l0, mu: params.mu, candidate_cap: params.candidate_cap, search_budget: params.search_budget };
    let ext = extend_all(h, &pairs, &cfg, &Default::default(), rng).map_err(|e| Error::HostTooSparse(e.to_string()))?;
    let piece = l + 1 - k;
    let mut h_prime = KGraph::empty(k)?;
    let mut paths = Vec::new();
    for t in &ext.trails {
        for e in t.windows() {
            h_prime.insert_edge(e)?;
        }
        for p in 0..l0 / piece {
            paths.push(Walk::new(k, t.seq()[p * piece..p * piece + l].to_vec(), false)?);
        }
    }
    let certificate = Certificate::walks(CertKind::Paths(l), paths);
    let rep = solver::verify(&h_prime, &certificate);
    if !rep.ok() {
        return Err(Error::InternalCheck(format!("adjuster certificate fails: {:?}", rep.failures.first())));
    }
    let rest = minus(h, &h_prime)?;
    if let Some((v, d)) = rest.vertex_degrees().into_iter().find(|&(_, d)| d % k != 0) {
        return Err(Error::InternalCheck(format!("deg_(H-H')({v}) = {d} not divisible by {k}")));
    }
    if h_prime.edge_count() > l * l * k * n {
        return Err(Error::InternalCheck(format!("|H'| = {} > ℓ²kn", h_prime.edge_count())));
    }
    let max_codegree = crate::graph::max_degree(&h_prime, k - 1).unwrap_or(0);
    Ok(DegreeAdjustment { h_prime, certificate, arcs, l0, pairs, max_codegree, capped_picks: ext.capped_picks })
}
