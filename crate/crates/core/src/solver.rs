//! Exact backtracking decompositions at desk scale.
//!
//! Every search counts nodes against a budget; running out yields
//! [`Outcome::BudgetExhausted`], never a false negative.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use itertools::Itertools;
use num_rational::Rational64;

use crate::error::{Error, Outcome, Result};
use crate::graph::{canonical, is_cycle_divisible, is_path_divisible, Edge, KGraph, Vertex};
use crate::walks::Walk;

pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertKind {
    Cycles(usize),
    Paths(usize),
    MixedCycles,
    EulerTour,
    FCopies,
}

impl CertKind {
    pub fn tag(&self) -> String {
        match self {
            CertKind::Cycles(l) => format!("cycles:{l}"),
            CertKind::Paths(l) => format!("paths:{l}"),
            CertKind::MixedCycles => "mixed".into(),
            CertKind::EulerTour => "euler".into(),
            CertKind::FCopies => "fcopies".into(),
        }
    }

    pub fn parse(s: &str) -> Option<CertKind> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().ok()?)),
            None => (s, None),
        };
        match (head, arg) {
            ("cycles", Some(l)) => Some(CertKind::Cycles(l)),
            ("paths", Some(l)) => Some(CertKind::Paths(l)),
            ("mixed", None) => Some(CertKind::MixedCycles),
            ("euler", None) => Some(CertKind::EulerTour),
            ("fcopies", None) => Some(CertKind::FCopies),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    Walk(Walk),
    /// Vertex map from the pattern F into the host.
    Map(BTreeMap<Vertex, Vertex>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub pieces: Vec<Piece>,
    /// The pattern F for `FCopies`.
    pub pattern: Option<KGraph>,
}

impl Certificate {
    pub fn walks(kind: CertKind, walks: Vec<Walk>) -> Self {
        Certificate { kind, pieces: walks.into_iter().map(Piece::Walk).collect(), pattern: None }
    }

    pub fn walk_pieces(&self) -> Vec<&Walk> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Walk(w) => Some(w),
                Piece::Map(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    /// (piece index if attributable, message)
    pub failures: Vec<(Option<usize>, String)>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_bad_piece(&self) -> Option<usize> {
        self.failures.iter().find_map(|f| f.0)
    }
}

struct Budget {
    left: u64,
    out: bool,
}

impl Budget {
    fn new(n: u64) -> Self {
        Budget { left: n, out: false }
    }

    fn tick(&mut self) -> bool {
        if self.left == 0 {
            self.out = true;
            return false;
        }
        self.left -= 1;
        true
    }
}

struct EdgeIndex {
    edges: Vec<Edge>,
    idx: HashMap<Edge, usize>,
}

impl EdgeIndex {
    fn new(h: &KGraph) -> Self {
        let edges: Vec<Edge> = h.edges().iter().cloned().collect();
        let idx = edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        EdgeIndex { edges, idx }
    }

    fn of(&self, vs: &[Vertex]) -> Option<usize> {
        self.idx.get(&canonical(vs)).copied()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn first_zero(&self, n: usize) -> Option<usize> {
        (0..n).find(|&i| !self.get(i))
    }
}

const MEMO_CAP: usize = 1 << 22;

/// Exact cover of edge ids 0..m; `gen` lists candidate pieces through the
/// least uncovered edge (None when it ran out of budget).
fn exact_cover<P: Clone>(
    m: usize,
    budget: &mut Budget,
    gen: &mut dyn FnMut(usize, &Bits, &mut Budget) -> Option<Vec<(Vec<usize>, P)>>,
) -> Outcome<Vec<P>> {
    fn rec<P: Clone>(
        m: usize,
        covered: &mut Bits,
        chosen: &mut Vec<P>,
        budget: &mut Budget,
        memo: &mut HashSet<Bits>,
        gen: &mut dyn FnMut(usize, &Bits, &mut Budget) -> Option<Vec<(Vec<usize>, P)>>,
    ) -> Option<bool> {
        let Some(e) = covered.first_zero(m) else { return Some(true) };
        if memo.contains(covered) {
            return Some(false);
        }
        if !budget.tick() {
            return None;
        }
        let cands = gen(e, covered, budget)?;
        for (ids, piece) in cands {
            if ids.iter().any(|&i| covered.get(i)) {
                continue;
            }
            for &i in &ids {
                covered.set(i);
            }
            chosen.push(piece);
            let r = rec(m, covered, chosen, budget, memo, gen);
            if r != Some(false) {
                return r;
            }
            chosen.pop();
            for &i in &ids {
                covered.clear(i);
            }
        }
        if memo.len() < MEMO_CAP {
            memo.insert(covered.clone());
        }
        Some(false)
    }
    let mut covered = Bits::new(m);
    let mut chosen = Vec::new();
    let mut memo = HashSet::new();
    match rec(m, &mut covered, &mut chosen, budget, &mut memo, gen) {
        Some(true) => Outcome::Found(chosen),
        Some(false) => Outcome::None,
        None => Outcome::BudgetExhausted,
    }
}

/// Tight cycles through edge `e` (read in every order as the first window)
/// using only edges accepted by `allowed`, with lengths in `lens`.
/// Returned cores are deduplicated by edge set; None means out of budget.
fn cycles_through(
    h: &KGraph,
    link: &HashMap<Edge, Vec<Vertex>>,
    e: &Edge,
    lens: (usize, usize),
    allowed: &dyn Fn(&[Vertex]) -> bool,
    budget: &mut Budget,
    stop_at_first: bool,
    prune: bool,
) -> Option<Vec<Vec<Vertex>>> {
    let k = h.k();
    let mut found: BTreeMap<Vec<Edge>, Vec<Vertex>> = BTreeMap::new();
    struct Ctx<'a> {
        k: usize,
        link: &'a HashMap<Edge, Vec<Vertex>>,
        allowed: &'a dyn Fn(&[Vertex]) -> bool,
        lens: (usize, usize),
        stop: bool,
        prune: bool,
    }
    fn closes(ctx: &Ctx, seq: &[Vertex]) -> bool {
        let (k, l) = (ctx.k, seq.len());
        (1..k).all(|s| {
            let win: Vec<Vertex> = (0..k).map(|j| seq[(l - k + s + j) % l]).collect();
            (ctx.allowed)(&win)
        })
    }
    // (k-1)-set reachability back to the start through unused vertices
    fn can_return(ctx: &Ctx, seq: &[Vertex], used: &HashSet<Vertex>) -> bool {
        let k = ctx.k;
        let target = canonical(&seq[..k - 1]);
        let start = canonical(&seq[seq.len() + 1 - k..]);
        if start == target {
            return true;
        }
        let head: HashSet<Vertex> = seq[..k - 1].iter().copied().collect();
        let tail: HashSet<Vertex> = start.iter().copied().collect();
        let mut seen: HashSet<Edge> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            let Some(nbrs) = ctx.link.get(&s) else { continue };
            for &b in nbrs {
                if used.contains(&b) && !head.contains(&b) {
                    continue;
                }
                let mut full: Vec<Vertex> = s.to_vec();
                full.push(b);
                if !(ctx.allowed)(&full) {
                    continue;
                }
                for drop in 0..k - 1 {
                    let mut t: Vec<Vertex> = full.clone();
                    t.remove(drop);
                    let t = canonical(&t);
                    if t == target {
                        return true;
                    }
                    if t.iter().all(|v| !used.contains(v) || head.contains(v) || tail.contains(v)) && seen.insert(t.clone()) {
                        queue.push_back(t);
                    }
                }
            }
        }
        false
    }
    fn rec(ctx: &Ctx, seq: &mut Vec<Vertex>, used: &mut HashSet<Vertex>, budget: &mut Budget, found: &mut BTreeMap<Vec<Edge>, Vec<Vertex>>) -> Option<bool> {
        if !budget.tick() {
            return None;
        }
        let k = ctx.k;
        if seq.len() >= ctx.lens.0 && closes(ctx, seq) {
            let w = Walk::cycle(k, seq).expect("distinct vertices");
            let mut es = w.edges();
            es.sort();
            found.entry(es).or_insert_with(|| seq.clone());
            if ctx.stop {
                return Some(true);
            }
        }
        if seq.len() >= ctx.lens.1 {
            return Some(false);
        }
        if ctx.prune && !can_return(ctx, seq, used) {
            return Some(false);
        }
        let key = canonical(&seq[seq.len() + 1 - k..]);
        let Some(nbrs) = ctx.link.get(&key) else { return Some(false) };
        for &v in nbrs {
            if used.contains(&v) {
                continue;
            }
            let mut win = seq[seq.len() + 1 - k..].to_vec();
            win.push(v);
            if !(ctx.allowed)(&win) {
                continue;
            }
            seq.push(v);
            used.insert(v);
            let r = rec(ctx, seq, used, budget, found);
            used.remove(&v);
            seq.pop();
            if r != Some(false) {
                return r;
            }
        }
        Some(false)
    }
    let ctx = Ctx { k, link, allowed, lens, stop: stop_at_first, prune };
    for order in e.iter().copied().permutations(k) {
        let mut seq = order.clone();
        let mut used: HashSet<Vertex> = order.into_iter().collect();
        if rec(&ctx, &mut seq, &mut used, budget, &mut found)? && stop_at_first {
            break;
        }
    }
    Some(found.into_values().collect())
}

fn cycle_cover(h: &KGraph, lens: &dyn Fn(usize) -> (usize, usize), budget: u64) -> Outcome<Vec<Walk>> {
    let k = h.k();
    let ix = EdgeIndex::new(h);
    let link = h.link_map();
    let m = ix.edges.len();
    let mut b = Budget::new(budget);
    let mut gen = |e: usize, covered: &Bits, budget: &mut Budget| -> Option<Vec<(Vec<usize>, Walk)>> {
        let uncovered = (0..m).filter(|&i| !covered.get(i)).count();
        let allowed = |vs: &[Vertex]| ix.of(vs).is_some_and(|i| !covered.get(i));
        let cores = cycles_through(h, &link, &ix.edges[e], lens(uncovered), &allowed, budget, false, false)?;
        let mut out: Vec<(Vec<usize>, Walk)> = cores
            .into_iter()
            .map(|c| {
                let w = Walk::cycle(k, &c).expect("valid core").normalized();
                let ids = w.edges().iter().map(|e| ix.idx[e]).collect();
                (ids, w)
            })
            .collect();
        out.sort_by(|a, b| a.1.edge_count().cmp(&b.1.edge_count()).then_with(|| a.1.cmp(&b.1)));
        Some(out)
    };
    exact_cover(m, &mut b, &mut gen)
}

fn finish(h: &KGraph, kind: CertKind, found: Outcome<Vec<Walk>>) -> Outcome<Certificate> {
    found.map(|ws| {
        let cert = Certificate::walks(kind, ws);
        let report = verify(h, &cert);
        assert!(report.ok(), "solver produced an invalid certificate: {report:?}");
        cert
    })
}

pub fn decompose_cycles(h: &KGraph, l: usize, budget: u64) -> Result<Outcome<Certificate>> {
    let k = h.k();
    if l <= k {
        return Err(Error::RangeError(format!("cycle length {l} <= k = {k}")));
    }
    if !is_cycle_divisible(h, l) {
        return Ok(Outcome::None);
    }
    Ok(finish(h, CertKind::Cycles(l), cycle_cover(h, &|_| (l, l), budget)))
}

pub fn decompose_mixed(h: &KGraph, budget: u64) -> Result<Outcome<Certificate>> {
    let k = h.k();
    if h.vertex_degrees().values().any(|d| d % k != 0) {
        return Ok(Outcome::None);
    }
    if codegree_core(h).edge_count() != h.edge_count() {
        return Ok(Outcome::None);
    }
    let n = h.vertex_count();
    Ok(finish(h, CertKind::MixedCycles, cycle_cover(h, &|left| (k + 1, left.min(n)), budget)))
}

/// Every tight path on `l` vertices, once per edge set.
pub fn enumerate_paths(h: &KGraph, l: usize) -> Result<Vec<Walk>> {
    let k = h.k();
    if l < k {
        return Err(Error::RangeError(format!("path length {l} < k = {k}")));
    }
    let link = h.link_map();
    let mut out: BTreeMap<Vec<Edge>, Walk> = BTreeMap::new();
    fn rec(k: usize, l: usize, link: &HashMap<Edge, Vec<Vertex>>, seq: &mut Vec<Vertex>, out: &mut BTreeMap<Vec<Edge>, Walk>) {
        if seq.len() == l {
            if seq[0] < seq[l - 1] || l == 1 {
                let w = Walk::new(k, seq.clone(), false).expect("distinct vertices");
                let mut es = w.edges();
                es.sort();
                out.entry(es).or_insert(w);
            }
            return;
        }
        let key = canonical(&seq[seq.len() + 1 - k..]);
        let Some(nbrs) = link.get(&key) else { return };
        for &v in nbrs {
            if seq.contains(&v) {
                continue;
            }
            seq.push(v);
            rec(k, l, link, seq, out);
            seq.pop();
        }
    }
    for e in h.edges() {
        for order in e.iter().copied().permutations(k) {
            let mut seq = order;
            rec(k, l, &link, &mut seq, &mut out);
        }
    }
    let mut ws: Vec<Walk> = out.into_values().collect();
    ws.sort();
    Ok(ws)
}

pub fn decompose_paths(h: &KGraph, l: usize, budget: u64) -> Result<Outcome<Certificate>> {
    let k = h.k();
    if l < k {
        return Err(Error::RangeError(format!("path length {l} < k = {k}")));
    }
    if !is_path_divisible(h, l) {
        return Ok(Outcome::None);
    }
    let ix = EdgeIndex::new(h);
    let paths = enumerate_paths(h, l)?;
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); ix.edges.len()];
    let ids: Vec<Vec<usize>> = paths.iter().map(|p| p.edges().iter().map(|e| ix.idx[e]).collect()).collect();
    for (pi, es) in ids.iter().enumerate() {
        for &e in es {
            by_edge[e].push(pi);
        }
    }
    let mut b = Budget::new(budget);
    let mut gen = |e: usize, _: &Bits, _: &mut Budget| -> Option<Vec<(Vec<usize>, Walk)>> {
        Some(by_edge[e].iter().map(|&pi| (ids[pi].clone(), paths[pi].clone())).collect())
    };
    let found = exact_cover(ix.edges.len(), &mut b, &mut gen);
    Ok(finish(h, CertKind::Paths(l), found))
}

/// A closed tight walk using every edge of H exactly once.
pub fn euler_tour(h: &KGraph, budget: u64) -> Outcome<Walk> {
    let k = h.k();
    let m = h.edge_count();
    if m <= k || h.vertex_degrees().values().any(|d| d % k != 0) {
        return Outcome::None;
    }
    let ix = EdgeIndex::new(h);
    let link = h.link_map();
    let mut b = Budget::new(budget);
    struct Ctx<'a> {
        k: usize,
        m: usize,
        ix: &'a EdgeIndex,
        link: &'a HashMap<Edge, Vec<Vertex>>,
    }
    fn rec(ctx: &Ctx, seq: &mut Vec<Vertex>, covered: &mut Bits, count: usize, b: &mut Budget, memo: &mut HashSet<(Bits, Vec<Vertex>)>) -> Option<bool> {
        let k = ctx.k;
        if count == ctx.m {
            return Some(true);
        }
        let last = seq[seq.len() + 1 - k..].to_vec();
        if memo.contains(&(covered.clone(), last.clone())) {
            return Some(false);
        }
        if !b.tick() {
            return None;
        }
        // after m vertices the wrap windows force the next vertex
        let forced = (seq.len() >= ctx.m).then(|| seq[seq.len() - ctx.m]);
        let key = canonical(&last);
        let cands: Vec<Vertex> = match forced {
            Some(v) => vec![v],
            None => ctx.link.get(&key).cloned().unwrap_or_default(),
        };
        for v in cands {
            if last.contains(&v) {
                continue;
            }
            let mut win = last.clone();
            win.push(v);
            let Some(i) = ctx.ix.of(&win) else { continue };
            if covered.get(i) {
                continue;
            }
            covered.set(i);
            seq.push(v);
            let r = rec(ctx, seq, covered, count + 1, b, memo);
            if r != Some(false) {
                return r;
            }
            seq.pop();
            covered.clear(i);
        }
        if memo.len() < MEMO_CAP {
            memo.insert((covered.clone(), last));
        }
        Some(false)
    }
    let ctx = Ctx { k, m, ix: &ix, link: &link };
    let e0 = ix.edges[0].clone();
    for order in e0.iter().copied().permutations(k) {
        let mut seq = order;
        let mut covered = Bits::new(m);
        covered.set(0);
        let mut memo = HashSet::new();
        match rec(&ctx, &mut seq, &mut covered, 1, &mut b, &mut memo) {
            Some(true) => {
                let w = Walk::new(k, seq, true).expect("search only emits tours");
                return Outcome::Found(w);
            }
            Some(false) => {}
            None => return Outcome::BudgetExhausted,
        }
    }
    Outcome::None
}

/// Iteratively removes edges that cannot lie on a tight cycle: an edge on a
/// cycle has at least two (k-1)-subsets each shared with another edge.
pub fn codegree_core(h: &KGraph) -> KGraph {
    let k = h.k();
    let mut g = h.clone();
    loop {
        let deg = g.subset_degrees(k - 1);
        let dead: Vec<Edge> = g
            .edges()
            .iter()
            .filter(|e| e.iter().combinations(k - 1).filter(|s| deg[&canonical(&s.iter().map(|v| **v).collect::<Vec<_>>())] >= 2).count() < 2)
            .cloned()
            .collect();
        if dead.is_empty() {
            return g;
        }
        for e in dead {
            g.remove_edge(&e);
        }
    }
}

/// True iff some tight cycle of length at most `l_max` contains `e`.
pub fn in_some_cycle(h: &KGraph, e: &[Vertex], l_max: usize) -> bool {
    in_some_cycle_budgeted(h, e, l_max, u64::MAX).found().unwrap_or(false)
}

pub fn in_some_cycle_budgeted(h: &KGraph, e: &[Vertex], l_max: usize, budget: u64) -> Outcome<bool> {
    let k = h.k();
    let e = canonical(e);
    if !h.edges().contains(&e) || l_max <= k {
        return Outcome::Found(false);
    }
    let core = codegree_core(h);
    if !core.edges().contains(&e) {
        return Outcome::Found(false);
    }
    let link = core.link_map();
    let allowed = |vs: &[Vertex]| core.contains_edge(vs);
    let mut b = Budget::new(budget);
    match cycles_through(&core, &link, &e, (k + 1, l_max.min(core.vertex_count())), &allowed, &mut b, true, true) {
        Some(found) => Outcome::Found(!found.is_empty()),
        None => Outcome::BudgetExhausted,
    }
}

/// Injective copies of F in H whose image contains `e`, deduplicated by edge set.
fn copies_through(h: &KGraph, f: &KGraph, e: &Edge, allowed: &dyn Fn(&[Vertex]) -> bool, budget: &mut Budget) -> Option<Vec<BTreeMap<Vertex, Vertex>>> {
    let fv: Vec<Vertex> = f.vertices().iter().copied().collect();
    let mut found: BTreeMap<Vec<Edge>, BTreeMap<Vertex, Vertex>> = BTreeMap::new();
    let hv: Vec<Vertex> = h.vertices().iter().copied().collect();
    fn rec(
        f: &KGraph,
        fv: &[Vertex],
        hv: &[Vertex],
        map: &mut BTreeMap<Vertex, Vertex>,
        allowed: &dyn Fn(&[Vertex]) -> bool,
        budget: &mut Budget,
        found: &mut BTreeMap<Vec<Edge>, BTreeMap<Vertex, Vertex>>,
    ) -> Option<()> {
        if !budget.tick() {
            return None;
        }
        let Some(&u) = fv.iter().find(|u| !map.contains_key(u)) else {
            let mut es: Vec<Edge> = f.edges().iter().map(|fe| canonical(&fe.iter().map(|v| map[v]).collect::<Vec<_>>())).collect();
            es.sort();
            found.entry(es).or_insert_with(|| map.clone());
            return Some(());
        };
        let image: HashSet<Vertex> = map.values().copied().collect();
        for &x in hv {
            if image.contains(&x) {
                continue;
            }
            map.insert(u, x);
            let ok = f.edges().iter().all(|fe| {
                if !fe.iter().all(|v| map.contains_key(v)) {
                    return true;
                }
                allowed(&fe.iter().map(|v| map[v]).collect::<Vec<_>>())
            });
            if ok {
                rec(f, fv, hv, map, allowed, budget, found)?;
            }
            map.remove(&u);
        }
        Some(())
    }
    for fe in f.edges() {
        for order in e.iter().copied().permutations(e.len()) {
            let mut map: BTreeMap<Vertex, Vertex> = fe.iter().copied().zip(order).collect();
            rec(f, &fv, &hv, &mut map, allowed, budget, &mut found)?;
        }
    }
    Some(found.into_values().collect())
}

pub fn f_decompose(h: &KGraph, f: &KGraph, budget: u64) -> Result<Outcome<Certificate>> {
    if h.k() != f.k() {
        return Err(Error::UniformityMismatch(h.k(), f.k()));
    }
    if f.edge_count() == 0 {
        return Err(Error::InvalidSize("pattern has no edges".into()));
    }
    if h.edge_count() % f.edge_count() != 0 {
        return Ok(Outcome::None);
    }
    let ix = EdgeIndex::new(h);
    let m = ix.edges.len();
    let mut b = Budget::new(budget);
    let mut gen = |e: usize, covered: &Bits, budget: &mut Budget| -> Option<Vec<(Vec<usize>, BTreeMap<Vertex, Vertex>)>> {
        let allowed = |vs: &[Vertex]| ix.of(vs).is_some_and(|i| !covered.get(i));
        let maps = copies_through(h, f, &ix.edges[e], &allowed, budget)?;
        Some(
            maps.into_iter()
                .map(|mp| {
                    let ids = f.edges().iter().map(|fe| ix.of(&fe.iter().map(|v| mp[v]).collect::<Vec<_>>()).expect("allowed")).collect();
                    (ids, mp)
                })
                .collect(),
        )
    };
    let found = exact_cover(m, &mut b, &mut gen);
    Ok(found.map(|maps| {
        let cert = Certificate { kind: CertKind::FCopies, pieces: maps.into_iter().map(Piece::Map).collect(), pattern: Some(f.clone()) };
        let report = verify(h, &cert);
        assert!(report.ok(), "solver produced an invalid certificate: {report:?}");
        cert
    }))
}

fn piece_edges(cert: &Certificate, idx: usize, piece: &Piece, h: &KGraph) -> std::result::Result<Vec<Edge>, String> {
    let k = h.k();
    match (piece, &cert.kind) {
        (Piece::Walk(w), kind) => {
            if w.k() != k {
                return Err(format!("uniformity {} != {k}", w.k()));
            }
            Walk::new(k, w.seq().to_vec(), w.is_tour()).map_err(|e| e.to_string())?;
            let distinct = w.core().iter().collect::<HashSet<_>>().len() == w.core().len();
            match kind {
                CertKind::Cycles(l) => {
                    if !w.is_tour() || w.edge_count() != *l || !distinct {
                        return Err(format!("piece {idx} is not a tight {l}-cycle"));
                    }
                }
                CertKind::MixedCycles => {
                    if !w.is_tour() || !distinct || w.edge_count() <= k {
                        return Err(format!("piece {idx} is not a tight cycle"));
                    }
                }
                CertKind::Paths(l) => {
                    if w.is_tour() || w.seq().len() != *l || !distinct {
                        return Err(format!("piece {idx} is not a tight path on {l} vertices"));
                    }
                }
                CertKind::EulerTour => {
                    if !w.is_tour() {
                        return Err(format!("piece {idx} is not closed"));
                    }
                }
                CertKind::FCopies => return Err(format!("piece {idx} is a walk in an F-copy certificate")),
            }
            Ok(w.edges())
        }
        (Piece::Map(mp), CertKind::FCopies) => {
            let f = cert.pattern.as_ref().ok_or("certificate lacks its pattern")?;
            if f.vertices().iter().any(|v| !mp.contains_key(v)) {
                return Err(format!("piece {idx} does not map every vertex of F"));
            }
            if mp.values().collect::<HashSet<_>>().len() != mp.len() {
                return Err(format!("piece {idx} is not injective"));
            }
            Ok(f.edges().iter().map(|fe| canonical(&fe.iter().map(|v| mp[v]).collect::<Vec<_>>())).collect())
        }
        (Piece::Map(_), _) => Err(format!("piece {idx} is a vertex map in a walk certificate")),
    }
}

/// Replays the certificate: each piece valid, pieces partition E(H).
pub fn verify(h: &KGraph, cert: &Certificate) -> VerifyReport {
    let mut rep = VerifyReport::default();
    if cert.kind == CertKind::EulerTour && cert.pieces.len() != 1 {
        rep.failures.push((None, format!("an Euler tour certificate has {} pieces", cert.pieces.len())));
    }
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    for (i, p) in cert.pieces.iter().enumerate() {
        match piece_edges(cert, i, p, h) {
            Err(msg) => rep.failures.push((Some(i), msg)),
            Ok(es) => {
                for e in es {
                    if !h.edges().contains(&e) {
                        rep.failures.push((Some(i), format!("edge {:?} of piece {i} is not in H", e.as_slice())));
                    } else if let Some(j) = owner.insert(e.clone(), i) {
                        rep.failures.push((Some(i), format!("edge {:?} covered by pieces {j} and {i}", e.as_slice())));
                    }
                }
            }
        }
    }
    let missing = h.edges().iter().filter(|e| !owner.contains_key(*e)).count();
    if missing > 0 {
        rep.failures.push((None, format!("{missing} edges of H uncovered")));
    }
    rep
}

/// Checks ω ∈ [0,1] on tight ℓ-cycles of H and Σ_{C ∋ e} ω(C) = 1 for every edge.
pub fn verify_fractional(h: &KGraph, l: usize, weights: &[(Walk, Rational64)]) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let mut sums: BTreeMap<Edge, Rational64> = h.edges().iter().map(|e| (e.clone(), Rational64::from_integer(0))).collect();
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    for (i, (w, wt)) in weights.iter().enumerate() {
        if *wt < zero || *wt > one {
            rep.failures.push((Some(i), format!("weight {wt} outside [0,1]")));
        }
        let distinct = w.core().iter().collect::<HashSet<_>>().len() == w.core().len();
        if !w.is_tour() || w.edge_count() != l || !distinct {
            rep.failures.push((Some(i), format!("piece {i} is not a tight {l}-cycle")));
            continue;
        }
        for e in w.edges() {
            match sums.get_mut(&e) {
                Some(s) => *s += *wt,
                None => rep.failures.push((Some(i), format!("edge {:?} not in H", e.as_slice()))),
            }
        }
    }
    for (e, s) in sums {
        if s != one {
            rep.failures.push((None, format!("edge {:?} has weight sum {s}", e.as_slice())));
        }
    }
    rep
}

/// Edge set of a certificate, for callers assembling unions.
pub fn certificate_edges(cert: &Certificate) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for p in &cert.pieces {
        match p {
            Piece::Walk(w) => out.extend(w.edges()),
            Piece::Map(mp) => {
                if let Some(f) = &cert.pattern {
                    out.extend(f.edges().iter().map(|fe| canonical(&fe.iter().map(|v| mp[v]).collect::<Vec<_>>())));
                }
            }
        }
    }
    out
}
