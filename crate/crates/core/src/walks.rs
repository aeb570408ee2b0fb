//! Tight trails and tours, the ordered-tuple algebra, trail search and
//! fresh-vertex constructions.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Outcome, Result};
use crate::graph::{canonical, Edge, KGraph, Vertex};

/// An ordered tuple of vertices; repetitions allowed.
pub type Tuple = Vec<Vertex>;

pub fn reverse(y: &[Vertex]) -> Tuple {
    y.iter().rev().copied().collect()
}

fn check_pos(y: &[Vertex], i: usize) -> Result<()> {
    if i == 0 || i > y.len() {
        return Err(Error::IndexOutOfRange(i, y.len()));
    }
    Ok(())
}

/// r_i(y, x): position i (1-based) replaced by x.
pub fn replace(y: &[Vertex], i: usize, x: Vertex) -> Result<Tuple> {
    check_pos(y, i)?;
    let mut out = y.to_vec();
    out[i - 1] = x;
    Ok(out)
}

/// s_i(y): position i (1-based) dropped.
pub fn skip(y: &[Vertex], i: usize) -> Result<Tuple> {
    check_pos(y, i)?;
    let mut out = y.to_vec();
    out.remove(i - 1);
    Ok(out)
}

/// σ(y) = y_{σ(1)} … y_{σ(n)} for a 1-based permutation σ.
pub fn permute(y: &[Vertex], sigma: &[usize]) -> Result<Tuple> {
    if sigma.len() != y.len() {
        return Err(Error::BadTupleLength(sigma.len(), y.len()));
    }
    let mut seen = vec![false; y.len()];
    for &s in sigma {
        check_pos(y, s)?;
        if std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::RangeError("σ is not a permutation".into()));
        }
    }
    Ok(sigma.iter().map(|&s| y[s - 1]).collect())
}

fn truncate_to(k: usize, z: &[Vertex]) -> Result<Tuple> {
    match z.len() {
        n if n == k => skip(z, k),
        n if n + 1 == k => Ok(z.to_vec()),
        n => Err(Error::BadTupleLength(n, k - 1)),
    }
}

/// S_i(z, x, x') = { r_i(z,x), r_i(z,x')^{-1} }; a k-tuple loses its last entry first.
pub fn s_pair(k: usize, z: &[Vertex], i: usize, x: Vertex, x2: Vertex) -> Result<Vec<Tuple>> {
    let z = truncate_to(k, z)?;
    Ok(vec![replace(&z, i, x)?, reverse(&replace(&z, i, x2)?)])
}

/// T_i(z, z', x, x') = S_i(z, x, x') ∪ S_i(z', x', x).
pub fn t_quad(k: usize, z: &[Vertex], z2: &[Vertex], i: usize, x: Vertex, x2: Vertex) -> Result<Vec<Tuple>> {
    let mut out = s_pair(k, z, i, x, x2)?;
    out.extend(s_pair(k, z2, i, x2, x)?);
    Ok(out)
}

/// A tight trail or tour. Tours use the wrap-overlap form: the last k-1
/// vertices repeat the first k-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    k: usize,
    seq: Vec<Vertex>,
    tour: bool,
}

impl Walk {
    /// Checks the walk conditions that do not depend on a host.
    pub fn new(k: usize, seq: Vec<Vertex>, tour: bool) -> Result<Walk> {
        if k < 2 {
            return Err(Error::RangeError(format!("uniformity {k} < 2")));
        }
        if seq.len() < k || (tour && seq.len() < 2 * k - 1) {
            return Err(Error::InvalidSize(format!("walk of length {} for k = {k}", seq.len())));
        }
        let w = Walk { k, seq, tour };
        if tour && (0..k - 1).any(|i| w.seq[i] != w.seq[w.seq.len() - k + 1 + i]) {
            return Err(Error::BadWrap);
        }
        let mut seen = HashSet::with_capacity(w.edge_count());
        for win in w.seq.windows(k) {
            let e = canonical(win);
            if e.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::NotAnEdge(win.to_vec()));
            }
            if !seen.insert(e) {
                return Err(Error::RepeatedEdge(win.to_vec()));
            }
        }
        Ok(w)
    }

    pub(crate) fn from_parts(k: usize, seq: Vec<Vertex>, tour: bool) -> Walk {
        Walk { k, seq, tour }
    }

    /// The tour through a cyclic core sequence c_1 … c_L.
    pub fn cycle(k: usize, core: &[Vertex]) -> Result<Walk> {
        if core.len() < k {
            return Err(Error::InvalidSize(format!("cycle of length {} for k = {k}", core.len())));
        }
        let mut seq = core.to_vec();
        seq.extend_from_slice(&core[..k - 1]);
        Walk::new(k, seq, true)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seq(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn is_tour(&self) -> bool {
        self.tour
    }

    pub fn edge_count(&self) -> usize {
        self.seq.len() + 1 - self.k
    }

    /// For a tour, the cyclic sequence without the wrap overlap.
    pub fn core(&self) -> &[Vertex] {
        if self.tour {
            &self.seq[..self.edge_count()]
        } else {
            &self.seq
        }
    }

    pub fn windows(&self) -> impl Iterator<Item = &[Vertex]> {
        self.seq.windows(self.k)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.windows().map(canonical).collect()
    }

    pub fn head(&self) -> &[Vertex] {
        &self.seq[..self.k - 1]
    }

    pub fn tail(&self) -> &[Vertex] {
        &self.seq[self.seq.len() + 1 - self.k..]
    }

    /// D(P) = { v_{k-1}…v_1, v_{t-k+2}…v_t }.
    pub fn ends(&self) -> Result<[Tuple; 2]> {
        if self.tour {
            return Err(Error::TourHasNoEnds);
        }
        Ok([reverse(self.head()), self.tail().to_vec()])
    }

    pub fn reversed(&self) -> Walk {
        Walk { k: self.k, seq: reverse(&self.seq), tour: self.tour }
    }

    /// A trail whose ends are mutually reverse closes into a tour.
    pub fn closed(&self) -> Option<Walk> {
        (!self.tour && self.seq.len() >= 2 * self.k - 1 && self.head() == self.tail())
            .then(|| Walk { k: self.k, seq: self.seq.clone(), tour: true })
    }

    /// The same edges viewed as a trail (a tour opened at its first vertex).
    pub fn opened(&self) -> Walk {
        Walk { k: self.k, seq: self.seq.clone(), tour: false }
    }

    /// Tours are rotated to the least rotation of their core; trails are unchanged.
    pub fn normalized(&self) -> Walk {
        if !self.tour {
            return self.clone();
        }
        let core = self.core();
        let r = least_rotation(core);
        let mut seq: Vec<Vertex> = core[r..].iter().chain(&core[..r]).copied().collect();
        seq.extend_from_slice(&seq[..self.k - 1].to_vec());
        Walk { k: self.k, seq, tour: true }
    }
}

/// Index of the lexicographically least rotation (two-pointer method, O(n)).
pub fn least_rotation(s: &[Vertex]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut l) = (0usize, 1usize, 0usize);
    while i < n && j < n && l < n {
        let a = s[(i + l) % n];
        let b = s[(j + l) % n];
        if a == b {
            l += 1;
            continue;
        }
        if a > b {
            i += l + 1;
        } else {
            j += l + 1;
        }
        if i == j {
            j += 1;
        }
        l = 0;
    }
    i.min(j)
}

/// Validates `seq` as a walk of H: every window is an edge of H, no edge repeats.
pub fn validate_walk(h: &KGraph, seq: &[Vertex], cyclic: bool) -> Result<Walk> {
    let w = Walk::new(h.k(), seq.to_vec(), cyclic)?;
    if let Some(win) = w.windows().find(|win| !h.contains_edge(win)) {
        return Err(Error::NotAnEdge(win.to_vec()));
    }
    Ok(w)
}

/// Hands out vertex ids that were never handed out before and are not reserved.
#[derive(Debug, Clone)]
pub struct FreshVertexSupply {
    next: Vertex,
    reserved: HashSet<Vertex>,
}

impl FreshVertexSupply {
    pub fn new(start: Vertex) -> Self {
        FreshVertexSupply { next: start, reserved: HashSet::new() }
    }

    /// Starts above every vertex of the given graphs.
    pub fn above<'a>(graphs: impl IntoIterator<Item = &'a KGraph>) -> Self {
        let start = graphs.into_iter().filter_map(|g| g.vertices().iter().next_back()).max().map_or(0, |&v| v + 1);
        Self::new(start)
    }

    pub fn reserve(&mut self, vs: impl IntoIterator<Item = Vertex>) {
        self.reserved.extend(vs);
    }

    pub fn draw(&mut self) -> Vertex {
        while self.reserved.contains(&self.next) {
            self.next += 1;
        }
        let v = self.next;
        self.next += 1;
        v
    }

    pub fn draw_n(&mut self, n: usize) -> Vec<Vertex> {
        (0..n).map(|_| self.draw()).collect()
    }

    pub fn peek_next(&self) -> Vertex {
        self.next
    }
}

/// A trail with ends {a, b} whose interior is entirely fresh; also returns its edges.
pub fn fresh_trail(supply: &mut FreshVertexSupply, a: &[Vertex], b: &[Vertex], edge_count: usize) -> Result<(Walk, Vec<Edge>)> {
    let k = a.len() + 1;
    if b.len() != a.len() {
        return Err(Error::BadTupleLength(b.len(), a.len()));
    }
    if edge_count < k {
        return Err(Error::RangeError(format!("edge_count {edge_count} < k = {k}")));
    }
    let mut seq = reverse(a);
    seq.extend(supply.draw_n(edge_count + 1 - k));
    seq.extend_from_slice(b);
    let w = Walk::new(k, seq, false)?;
    let edges = w.edges();
    Ok((w, edges))
}

/// Concatenates P and Q along an end of P that reverses an end of Q.
/// Called with the same trail twice, closes it into a tour.
pub fn join_trails(p: &Walk, q: &Walk) -> Result<Walk> {
    if p.k != q.k {
        return Err(Error::UniformityMismatch(p.k, q.k));
    }
    if p.tour || q.tour {
        return Err(Error::TourHasNoEnds);
    }
    if p == q {
        return p.closed().ok_or(Error::NoMatchingEnds);
    }
    let pe: HashSet<Edge> = p.edges().into_iter().collect();
    if let Some(e) = q.edges().into_iter().find(|e| pe.contains(e)) {
        return Err(Error::EdgeCollision(e.to_vec()));
    }
    for pp in [p.clone(), p.reversed()] {
        for qq in [q.clone(), q.reversed()] {
            if pp.tail() == qq.head() {
                let mut seq = pp.seq.clone();
                seq.extend_from_slice(&qq.seq[p.k - 1..]);
                return Walk::new(p.k, seq, false);
            }
        }
    }
    Err(Error::NoMatchingEnds)
}

/// Backtracking search for trails between two fixed ends.
pub struct TrailSearch<'a> {
    k: usize,
    link: HashMap<Edge, Vec<Vertex>>,
    host: &'a KGraph,
}

/// How the search treats each completed trail: keep going or stop.
pub enum Visit {
    Continue,
    Stop,
}

impl<'a> TrailSearch<'a> {
    pub fn new(host: &'a KGraph) -> Self {
        TrailSearch { k: host.k(), link: host.link_map(), host }
    }

    /// Enumerates trails v_1…v_t (t = edge_count + k - 1) with v_1…v_{k-1} = a^{-1}
    /// and v_{t-k+2}…v_t = b, fresh interior vertices, avoiding `avoid`.
    /// `order` may permute candidate lists; `visit` sees each full sequence.
    #[allow(clippy::too_many_arguments)]
    pub fn run(
        &self,
        a: &[Vertex],
        b: &[Vertex],
        edge_count: usize,
        avoid: &HashSet<Edge>,
        budget: Option<u64>,
        order: &mut dyn FnMut(&mut Vec<Vertex>),
        visit: &mut dyn FnMut(&[Vertex]) -> Visit,
    ) -> Result<Outcome<()>> {
        let k = self.k;
        for t in [a, b] {
            if t.len() + 1 != k {
                return Err(Error::BadTupleLength(t.len(), k - 1));
            }
        }
        if edge_count == 0 {
            return Err(Error::RangeError("edge_count must be positive".into()));
        }
        let t = edge_count + k - 1;
        let mut fixed: Vec<Option<Vertex>> = vec![None; t];
        for (i, &v) in reverse(a).iter().enumerate() {
            fixed[i] = Some(v);
        }
        for (i, &v) in b.iter().enumerate() {
            let p = t - (k - 1) + i;
            match fixed[p] {
                Some(u) if u != v => return Ok(Outcome::None),
                _ => fixed[p] = Some(v),
            }
        }
        let anchors: HashSet<Vertex> = a.iter().chain(b).copied().collect();
        let mut st = SearchState {
            seq: Vec::with_capacity(t),
            used_edges: HashSet::new(),
            used_vertices: HashSet::new(),
            nodes: 0,
            budget,
            stopped: false,
        };
        let complete = self.dfs(&fixed, &anchors, avoid, &mut st, order, visit);
        Ok(match complete {
            Some(()) => Outcome::Found(()),
            None if st.stopped => Outcome::Found(()),
            None if budget.is_some_and(|b| st.nodes > b) => Outcome::BudgetExhausted,
            None => Outcome::None,
        })
    }

    fn window_ok(&self, st: &SearchState, avoid: &HashSet<Edge>) -> Option<Edge> {
        let k = self.k;
        let n = st.seq.len();
        if n < k {
            return Some(Edge::new());
        }
        let e = canonical(&st.seq[n - k..]);
        if e.windows(2).any(|p| p[0] == p[1]) || !self.host.edges().contains(&e) || avoid.contains(&e) || st.used_edges.contains(&e) {
            return None;
        }
        Some(e)
    }

    /// Returns Some(()) when the visitor asked to stop.
    fn dfs(
        &self,
        fixed: &[Option<Vertex>],
        anchors: &HashSet<Vertex>,
        avoid: &HashSet<Edge>,
        st: &mut SearchState,
        order: &mut dyn FnMut(&mut Vec<Vertex>),
        visit: &mut dyn FnMut(&[Vertex]) -> Visit,
    ) -> Option<()> {
        st.nodes += 1;
        if st.budget.is_some_and(|b| st.nodes > b) {
            return None;
        }
        let p = st.seq.len();
        if p == fixed.len() {
            return match visit(&st.seq) {
                Visit::Stop => {
                    st.stopped = true;
                    Some(())
                }
                Visit::Continue => None,
            };
        }
        let k = self.k;
        let candidates: Vec<Vertex> = match fixed[p] {
            Some(v) => vec![v],
            None => {
                let key = canonical(&st.seq[p + 1 - k..]);
                let mut c: Vec<Vertex> = self
                    .link
                    .get(&key)
                    .map(|vs| vs.iter().copied().filter(|v| !anchors.contains(v) && !st.used_vertices.contains(v)).collect())
                    .unwrap_or_default();
                order(&mut c);
                c
            }
        };
        for v in candidates {
            st.seq.push(v);
            if let Some(e) = self.window_ok(st, avoid) {
                let fresh = fixed[p].is_none();
                let tracked = !e.is_empty();
                if tracked {
                    st.used_edges.insert(e.clone());
                }
                if fresh {
                    st.used_vertices.insert(v);
                }
                let r = self.dfs(fixed, anchors, avoid, st, order, visit);
                if tracked {
                    st.used_edges.remove(&e);
                }
                if fresh {
                    st.used_vertices.remove(&v);
                }
                if r.is_some() {
                    st.seq.pop();
                    return r;
                }
            }
            st.seq.pop();
            if st.budget.is_some_and(|b| st.nodes > b) {
                return None;
            }
        }
        None
    }
}

struct SearchState {
    seq: Vec<Vertex>,
    used_edges: HashSet<Edge>,
    used_vertices: HashSet<Vertex>,
    nodes: u64,
    budget: Option<u64>,
    stopped: bool,
}

/// First trail (ascending vertex order) with ends a and b, or None after exhaustion.
pub fn find_trail(h: &KGraph, a: &[Vertex], b: &[Vertex], edge_count: usize, avoid: &HashSet<Edge>) -> Result<Option<Walk>> {
    Ok(find_trail_budgeted(h, a, b, edge_count, avoid, None)?.found())
}

pub fn find_trail_budgeted(
    h: &KGraph,
    a: &[Vertex],
    b: &[Vertex],
    edge_count: usize,
    avoid: &HashSet<Edge>,
    budget: Option<u64>,
) -> Result<Outcome<Walk>> {
    let mut found = None;
    let out = TrailSearch::new(h).run(a, b, edge_count, avoid, budget, &mut |_| {}, &mut |s| {
        found = Some(s.to_vec());
        Visit::Stop
    })?;
    Ok(match (out, found) {
        (_, Some(seq)) => Outcome::Found(Walk::new(h.k(), seq, false)?),
        (Outcome::BudgetExhausted, None) => Outcome::BudgetExhausted,
        _ => Outcome::None,
    })
}

/// Every tight ℓ-cycle of H once, as a tour whose core is the lexicographically
/// least sequence among all sequences with the same edge set.
pub fn enumerate_cycles(h: &KGraph, l: usize) -> Result<Vec<Walk>> {
    let k = h.k();
    if l <= k {
        return Err(Error::RangeError(format!("cycle length {l} <= k = {k}")));
    }
    let link = h.link_map();
    let mut by_edges: BTreeMap<Vec<Edge>, Walk> = BTreeMap::new();
    let mut seq = Vec::with_capacity(l);
    let mut used = HashSet::new();
    for &v0 in h.vertices() {
        seq.push(v0);
        used.insert(v0);
        cycle_dfs(h, &link, l, &mut seq, &mut used, &mut |core| {
            let w = Walk::cycle(k, core).expect("distinct vertices give a valid cycle");
            let mut es = w.edges();
            es.sort();
            by_edges.entry(es).or_insert(w);
        });
        used.remove(&v0);
        seq.pop();
    }
    let mut out: Vec<Walk> = by_edges.into_values().collect();
    out.sort();
    Ok(out)
}

/// Sequences starting at their least vertex, with every window an edge of H.
fn cycle_dfs(
    h: &KGraph,
    link: &HashMap<Edge, Vec<Vertex>>,
    l: usize,
    seq: &mut Vec<Vertex>,
    used: &mut HashSet<Vertex>,
    emit: &mut dyn FnMut(&[Vertex]),
) {
    let k = h.k();
    let v0 = seq[0];
    if seq.len() == l {
        if seq[1] > seq[l - 1] {
            return;
        }
        let closes = (0..k - 1).all(|s| {
            let win: Vec<Vertex> = (0..k).map(|j| seq[(l - k + 1 + s + j) % l]).collect();
            h.contains_edge(&win)
        });
        if closes {
            emit(seq);
        }
        return;
    }
    let cands: Vec<Vertex> = if seq.len() < k - 1 {
        h.vertices().range(v0 + 1..).copied().filter(|v| !used.contains(v)).collect()
    } else {
        let key = canonical(&seq[seq.len() + 1 - k..]);
        match link.get(&key) {
            Some(vs) => vs.iter().copied().filter(|&v| v > v0 && !used.contains(&v)).collect(),
            None => return,
        }
    };
    for v in cands {
        seq.push(v);
        used.insert(v);
        cycle_dfs(h, link, l, seq, used, emit);
        used.remove(&v);
        seq.pop();
    }
}

pub fn cycles_through_edge(h: &KGraph, e: &[Vertex], l: usize) -> Result<Vec<Walk>> {
    let e = canonical(e);
    Ok(enumerate_cycles(h, l)?.into_iter().filter(|c| c.edges().contains(&e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, make_graph, tight_cycle_graph};
    use itertools::Itertools;

    #[test]
    fn tuple_algebra() {
        assert_eq!(replace(&[1, 2, 3], 2, 9).unwrap(), vec![1, 9, 3]);
        assert_eq!(skip(&[1, 2, 3, 4], 3).unwrap(), vec![1, 2, 4]);
        assert_eq!(reverse(&reverse(&[4, 5, 6])), vec![4, 5, 6]);
        assert_eq!(permute(&[7, 8, 9], &[3, 1, 2]).unwrap(), vec![9, 7, 8]);
        assert_eq!(replace(&[1, 2], 3, 0), Err(Error::IndexOutOfRange(3, 2)));
        // a=1, b=2, x=8, x'=9
        assert_eq!(s_pair(3, &[1, 2], 1, 8, 9).unwrap(), vec![vec![8, 2], vec![2, 9]]);
        assert_eq!(s_pair(4, &[1, 2, 3, 4], 1, 8, 9).unwrap(), s_pair(4, &[1, 2, 3], 1, 8, 9).unwrap());
        let t = t_quad(3, &[1, 2], &[3, 4], 1, 8, 9).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.iter().collect::<HashSet<_>>().len(), 4);
    }

    #[test]
    fn validate_examples() {
        let k4 = complete(5, 3).unwrap();
        let tour = validate_walk(&k4, &[1, 2, 3, 4, 1, 2], true).unwrap();
        assert_eq!(tour.edge_count(), 4);
        let c7 = tight_cycle_graph(7, 3).unwrap();
        let seq: Vec<Vertex> = (0..7).chain([0, 1]).collect();
        assert!(validate_walk(&c7, &seq, true).unwrap().is_tour());
        assert!(matches!(validate_walk(&k4, &[1, 2, 3, 1, 2, 3], false), Err(Error::RepeatedEdge(_))));
        assert!(matches!(validate_walk(&k4, &[1, 2, 3, 4, 1, 3], true), Err(Error::BadWrap)));
        assert!(matches!(validate_walk(&c7, &[0, 1, 3], false), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn ends_examples() {
        let e = Walk::new(3, vec![1, 2, 3], false).unwrap();
        assert_eq!(e.ends().unwrap(), [vec![2, 1], vec![2, 3]]);
        let p = Walk::new(3, vec![1, 2, 3, 4], false).unwrap();
        assert_eq!(p.ends().unwrap(), [vec![2, 1], vec![3, 4]]);
        let pal = Walk::new(3, vec![2, 1, 3, 4, 5, 1, 2], false).unwrap();
        let [x, y] = pal.ends().unwrap();
        assert_eq!(x, vec![1, 2]);
        assert_eq!(y, vec![1, 2]);
        assert_eq!(Walk::cycle(3, &[1, 2, 3, 4]).unwrap().ends(), Err(Error::TourHasNoEnds));
    }

    #[test]
    fn reversal_keeps_the_multiset_of_ends() {
        let p = Walk::new(3, vec![1, 2, 3, 4, 5], false).unwrap();
        let mut a = p.ends().unwrap().to_vec();
        let mut b = p.reversed().ends().unwrap().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn fresh_trails() {
        let mut s = FreshVertexSupply::new(100);
        let (w, es) = fresh_trail(&mut s, &[2, 1], &[3, 4], 5).unwrap();
        assert_eq!(w.seq(), &[1, 2, 100, 101, 102, 3, 4]);
        assert_eq!(es.len(), 5);
        let (w2, _) = fresh_trail(&mut s, &[2, 1], &[3, 4], 5).unwrap();
        assert!(w2.seq()[2..5].iter().all(|v| !w.seq().contains(v)));
        // closing: a is the reverse of b's suffix, so the trail wraps into a 7-cycle
        let (c, _) = fresh_trail(&mut s, &[2, 1], &[1, 2], 7).unwrap();
        let tour = c.closed().unwrap();
        assert_eq!(tour.edge_count(), 7);
        assert_eq!(tour.core().len(), 7);
    }

    #[test]
    fn supply_respects_reservations() {
        let mut s = FreshVertexSupply::new(0);
        s.reserve([0, 1, 3]);
        assert_eq!(s.draw_n(3), vec![2, 4, 5]);
    }

    #[test]
    fn find_trail_examples() {
        let k8 = complete(9, 3).unwrap();
        let w = find_trail(&k8, &[2, 1], &[3, 4], 5, &HashSet::new()).unwrap().unwrap();
        assert_eq!(w.ends().unwrap(), [vec![2, 1], vec![3, 4]]);
        assert_eq!(w.edge_count(), 5);
        validate_walk(&k8, w.seq(), false).unwrap();
        let avoid: HashSet<Edge> = [canonical(&[1, 2, 3])].into_iter().collect();
        assert_eq!(find_trail(&k8, &[2, 1], &[2, 3], 1, &avoid).unwrap(), None);
        let sparse = tight_cycle_graph(7, 3).unwrap();
        assert_eq!(find_trail(&sparse, &[1, 0], &[1, 0], 3, &HashSet::new()).unwrap(), None);
    }

    #[test]
    fn cycle_enumeration_examples() {
        let k5 = make_graph(3, 1..=5, (1..=5u32).combinations(3)).unwrap();
        assert_eq!(enumerate_cycles(&k5, 4).unwrap().len(), 5);
        assert_eq!(enumerate_cycles(&tight_cycle_graph(7, 3).unwrap(), 7).unwrap().len(), 1);
        assert_eq!(cycles_through_edge(&k5, &[1, 2, 3], 4).unwrap().len(), 2);
    }

    #[test]
    fn join_examples() {
        let p = Walk::new(3, vec![1, 2, 3, 4], false).unwrap();
        let q = Walk::new(3, vec![3, 4, 5, 6], false).unwrap();
        let j = join_trails(&p, &q).unwrap();
        assert_eq!(j.seq(), &[1, 2, 3, 4, 5, 6]);
        let loopy = Walk::new(3, vec![1, 2, 3, 4, 1, 2], false).unwrap();
        assert!(join_trails(&loopy, &loopy).unwrap().is_tour());
        let r = Walk::new(3, vec![7, 8, 9], false).unwrap();
        assert_eq!(join_trails(&p, &r), Err(Error::NoMatchingEnds));
    }

    #[test]
    fn least_rotation_matches_brute_force() {
        let s = [3, 1, 2, 1, 2, 1, 1, 5];
        let brute = (0..s.len()).min_by_key(|&r| s[r..].iter().chain(&s[..r]).copied().collect::<Vec<_>>()).unwrap();
        let r = least_rotation(&s);
        assert_eq!(
            s[r..].iter().chain(&s[..r]).collect::<Vec<_>>(),
            s[brute..].iter().chain(&s[..brute]).collect::<Vec<_>>()
        );
    }
}
