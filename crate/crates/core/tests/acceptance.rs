//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tightdec::absorb::{self, AdjusterParams};
use tightdec::extremal;
use tightdec::gadgets::{self, GadgetResult};
use tightdec::graph::{self, complete, is_cycle_divisible, is_path_divisible, make_graph, max_degree, union, KGraph};
use tightdec::randomized::{self, check_extension, extend_all, ExtendConfig, SparsePairList};
use tightdec::solver::{self, CertKind, Certificate};
use tightdec::tourtrail::{check_mod_sum, is_tour_decomposition, TourTrailDecomposition};
use tightdec::{FreshVertexSupply, Outcome, Vertex, Walk};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn pow(b: usize, e: usize) -> u128 {
    (b as u128).pow(e as u32)
}

fn cycle_on(k: usize, core: &[Vertex]) -> KGraph {
    let l = core.len();
    make_graph(k, core.iter().copied(), (0..l).map(|i| (0..k).map(|j| core[(i + j) % l]).collect::<Vec<_>>())).unwrap()
}

/// Tight cycle on Z_n with step s.
fn circulant(k: usize, n: u32, s: u32) -> KGraph {
    cycle_on(k, &(0..n).map(|i| (i * s) % n).collect::<Vec<_>>())
}

fn c1_gadgets() -> Verdict {
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    let mut bad = Vec::new();
    for k in 3..=5usize {
        for l in [k * k - k + 1, k * k - k + 8] {
            let y: Vec<Vertex> = (0..k as Vertex).collect();
            let y2: Vec<Vertex> = (10..9 + k as Vertex).collect();
            let (x, x2) = (100, 101);
            let mut cases: Vec<(String, usize, Box<dyn Fn(&mut FreshVertexSupply) -> tightdec::Result<GadgetResult>>)> = Vec::new();
            for j in 1..k {
                let y = y.clone();
                cases.push((format!("S_{j}"), 2 * l, Box::new(move |s| gadgets::basic_gadget(k, j, &y, x, x2, l, s))));
            }
            for j in 2..k {
                cases.push((format!("B_{j}"), 2 * (j - 1) * l, Box::new(move |s| gadgets::balancer(k, j, x, x2, l, s))));
            }
            {
                let y = y.clone();
                cases.push(("F_1".into(), 3 * l, Box::new(move |s| gadgets::f1_gadget(k, &y[..k - 1], x, x2, l, s))));
            }
            {
                let (y, y2) = (y.clone(), y2.clone());
                cases.push(("swapper1".into(), 2 * l * k, Box::new(move |s| gadgets::swapper1(k, &y[..k - 1], &y2, x, x2, l, s))));
            }
            for j in 1..k {
                let (y, y2) = (y.clone(), y2.clone());
                cases.push((format!("T_{j}"), 3usize.pow(j as u32) * l * k, Box::new(move |s| gadgets::swapper(k, j, &y[..k - 1], &y2, x, x2, l, s))));
            }
            for (name, size, build) in cases {
                let t = Instant::now();
                let g = build(&mut FreshVertexSupply::new(1000));
                let rep = g.as_ref().map(|g| (gadgets::verify_gadget(g, None), g.edge_count()));
                let el = t.elapsed();
                slowest = slowest.max(el);
                checked += 1;
                let exact = !name.starts_with("T_");
                match rep {
                    Ok((r, e)) if r.passed() && (if exact { e == size } else { e <= size }) && el < Duration::from_secs(1) => {}
                    Ok((r, e)) => bad.push(format!("{name} k={k} l={l}: passed={} edges={e} expected{}{size} time={el:?}", r.passed(), if exact { "=" } else { "<=" })),
                    Err(err) => bad.push(format!("{name} k={k} l={l}: {err}")),
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} gadgets, slowest {slowest:?}{}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }))
}

fn random_cycle_union(k: usize, n: usize, rng: &mut ChaCha8Rng) -> (KGraph, Vec<Vec<Vertex>>) {
    let mut used: HashSet<Vec<Vertex>> = HashSet::new();
    let mut cores = Vec::new();
    let want = rng.gen_range(1..=4);
    let mut tries = 0;
    while cores.len() < want && tries < 200 {
        tries += 1;
        let l = rng.gen_range(k + 1..=n);
        let mut vs: Vec<Vertex> = (0..n as Vertex).collect();
        vs.shuffle(rng);
        vs.truncate(l);
        let edges: Vec<Vec<Vertex>> = (0..l).map(|i| (0..k).map(|j| vs[(i + j) % l]).sorted().collect()).collect();
        if edges.iter().any(|e| used.contains(e)) {
            continue;
        }
        used.extend(edges);
        cores.push(vs);
    }
    let h = make_graph(k, 0..n as Vertex, used).unwrap();
    (h, cores)
}

/// Cuts every cycle into arcs of windows; no cut keeps it as a tour.
fn random_tour_trail(k: usize, cores: &[Vec<Vertex>], rng: &mut ChaCha8Rng) -> Vec<Walk> {
    let mut walks = Vec::new();
    for core in cores {
        let l = core.len();
        let cuts = rng.gen_range(0..=3.min(l));
        if cuts == 0 {
            walks.push(Walk::cycle(k, core).unwrap());
            continue;
        }
        let mut starts: Vec<usize> = rand::seq::index::sample(rng, l, cuts).into_vec();
        starts.sort();
        for (i, &s) in starts.iter().enumerate() {
            let next = if i + 1 < starts.len() { starts[i + 1] } else { starts[0] + l };
            let windows = next - s;
            let seq: Vec<Vertex> = (0..windows + k - 1).map(|j| core[(s + j) % l]).collect();
            let w = Walk::new(k, seq, false).unwrap();
            walks.push(if rng.gen_bool(0.5) { w.reversed() } else { w });
        }
    }
    walks
}

/// Σ_i i·p_i(v) straight from the walk sequences.
fn position_sums(k: usize, walks: &[Walk]) -> BTreeMap<Vertex, i64> {
    let mut s: BTreeMap<Vertex, i64> = BTreeMap::new();
    for w in walks.iter().filter(|w| !w.is_tour()) {
        let seq = w.seq();
        for a in 0..k - 1 {
            *s.entry(seq[a]).or_default() += (k - 1 - a) as i64;
            *s.entry(seq[seq.len() - (k - 1) + a]).or_default() += (a + 1) as i64;
        }
    }
    s
}

fn c2_mod_sum() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut violations = 0;
    let mut disagreements = 0;
    let mut trails = 0;
    for run in 0..1000 {
        let k = if run % 2 == 0 { 3 } else { 4 };
        let (h, cores) = random_cycle_union(k, 12, &mut rng);
        let walks = random_tour_trail(k, &cores, &mut rng);
        trails += walks.iter().filter(|w| !w.is_tour()).count();
        let sums = position_sums(k, &walks);
        let holds = sums.values().all(|s| s % k as i64 == 0);
        violations += usize::from(!holds);
        let t = TourTrailDecomposition::new(h, walks).unwrap();
        let lib = check_mod_sum(&t).map(|r| r.sums.values().all(|&s| s == 0)).unwrap_or(false);
        disagreements += usize::from(lib != holds);
    }
    verdict(violations == 0 && disagreements == 0, format!("1000 decompositions, {trails} trails, {violations} violations, {disagreements} library disagreements"))
}

fn c3_tour_augment() -> Verdict {
    let mut lines = Vec::new();
    let mut ok = true;
    let instances: Vec<(usize, usize, &str, KGraph)> = vec![
        (3, 7, "one cycle", cycle_on(3, &(0..7).collect::<Vec<_>>())),
        (3, 7, "two cycles", union(&cycle_on(3, &(0..7).collect::<Vec<_>>()), &cycle_on(3, &(5..12).collect::<Vec<_>>()), true).unwrap()),
        (3, 7, "three cycles", union(&union(&circulant(3, 7, 1), &circulant(3, 7, 2), true).unwrap(), &circulant(3, 7, 3), true).unwrap()),
        (4, 13, "one cycle", cycle_on(4, &(0..13).collect::<Vec<_>>())),
        (4, 13, "two cycles", union(&cycle_on(4, &(0..13).collect::<Vec<_>>()), &cycle_on(4, &(11..24).collect::<Vec<_>>()), true).unwrap()),
        (4, 13, "three cycles", union(&union(&circulant(4, 9, 1), &circulant(4, 9, 2), true).unwrap(), &circulant(4, 9, 4), true).unwrap()),
    ];
    for (k, l, name, g) in instances {
        let t = Instant::now();
        let m = g.vertex_count();
        let r = absorb::tour_augment(&g, l, &mut FreshVertexSupply::above([&g]));
        let el = t.elapsed();
        match r {
            Ok(r) => {
                let total = union(&g, &r.j(), true).map(|u| u.edge_count());
                let bound = pow(3, k + 2) * pow(k, 4) * pow(l, 2) * pow(m, k + 1);
                let host_ok = total.as_ref().is_ok_and(|&e| e == r.final_decomposition.host.edge_count());
                let tours = is_tour_decomposition(&r.final_decomposition);
                let within = total.as_ref().is_ok_and(|&e| (e as u128) <= bound);
                let good = host_ok && tours && within && el < Duration::from_secs(300);
                ok &= good;
                lines.push(format!("k={k} {name}: |G∪J|={} bound={bound} tours={tours} {el:.1?}", total.map_or("overlap".into(), |e| e.to_string())));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("k={k} {name}: {e}"));
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn c4_transformer() -> Verdict {
    let (k, l) = (3, 13);
    let g = cycle_on(k, &(0..13).collect::<Vec<_>>());
    let g2 = cycle_on(k, &(100..113).collect::<Vec<_>>());
    let phi: BTreeMap<Vertex, Vertex> = (0..13).map(|v| (v, v + 100)).collect();
    let t0 = Instant::now();
    let r = match absorb::transformer(&g, &g2, &phi, l, &mut FreshVertexSupply::above([&g, &g2])) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let el = t0.elapsed();
    let verifies = |h: &KGraph, c: &Certificate| union(&r.t, h, true).is_ok_and(|host| solver::verify(&host, c).ok());
    let inside = |h: &KGraph| r.t.edges().iter().filter(|e| e.iter().all(|v| h.vertices().contains(v))).count();
    let (ca, cb) = (verifies(&g, &r.cert_with_g), verifies(&g2, &r.cert_with_g2));
    let (ia, ib) = (inside(&g), inside(&g2));
    let bound = pow(3, k + 3) * pow(k, 5) * pow(l, 3) * pow(13, k + 1);
    let nv = r.t.vertex_count();
    verdict(
        ca && cb && ia == 0 && ib == 0 && (nv as u128) <= bound && el < Duration::from_secs(300),
        format!("|E(T)|={} |V(T)|={nv} bound={bound} certificates={ca}/{cb} T[V(G)]={ia} T[V(G')]={ib} {el:.1?}", r.t.edge_count()),
    )
}

/// Isomorphism classes of 3-graphs on 7 labelled vertices, by edge count.
struct Corpus {
    triples: Vec<[Vertex; 3]>,
    index: BTreeMap<[Vertex; 3], usize>,
}

impl Corpus {
    fn new() -> Self {
        let triples: Vec<[Vertex; 3]> = (0..7).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
        let index = triples.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        Corpus { triples, index }
    }

    fn image(&self, mask: u64, perm: &[Vertex]) -> u64 {
        let mut out = 0;
        for (i, t) in self.triples.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let mut e = [perm[t[0] as usize], perm[t[1] as usize], perm[t[2] as usize]];
                e.sort();
                out |= 1 << self.index[&e];
            }
        }
        out
    }

    /// Least image over relabellings that list vertices by decreasing degree.
    fn canonical(&self, mask: u64) -> u64 {
        let mut deg = [0usize; 7];
        for (i, t) in self.triples.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &v in t {
                    deg[v as usize] += 1;
                }
            }
        }
        let mut classes: BTreeMap<std::cmp::Reverse<usize>, Vec<Vertex>> = BTreeMap::new();
        for v in 0..7 {
            classes.entry(std::cmp::Reverse(deg[v])).or_default().push(v as Vertex);
        }
        let groups: Vec<Vec<Vertex>> = classes.into_values().collect();
        let mut best = u64::MAX;
        let mut perm = vec![0 as Vertex; 7];
        fn rec(c: &Corpus, mask: u64, groups: &[Vec<Vertex>], at: usize, perm: &mut Vec<Vertex>, best: &mut u64) {
            let Some((g, rest)) = groups.split_first() else {
                *best = (*best).min(c.image(mask, perm));
                return;
            };
            for order in g.iter().copied().permutations(g.len()) {
                for (j, v) in order.into_iter().enumerate() {
                    perm[v as usize] = (at + j) as Vertex;
                }
                rec(c, mask, rest, at + g.len(), perm, best);
            }
        }
        rec(self, mask, &groups, 0, &mut perm, &mut best);
        best
    }

    fn classes(&self, max_edges: usize) -> Vec<u64> {
        let mut all = vec![0u64];
        let mut level: BTreeSet<u64> = [0].into();
        for _ in 0..max_edges {
            let mut next = BTreeSet::new();
            for &g in &level {
                for i in 0..self.triples.len() {
                    if g >> i & 1 == 0 {
                        next.insert(self.canonical(g | 1 << i));
                    }
                }
            }
            all.extend(next.iter().copied());
            level = next;
        }
        all
    }

    fn edges(&self, mask: u64) -> Vec<[Vertex; 3]> {
        (0..self.triples.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.triples[i]).collect()
    }

    fn mask_of(&self, vs: &[Vertex]) -> Option<u64> {
        let mut e = [vs[0], vs[1], vs[2]];
        e.sort();
        self.index.get(&e).map(|&i| 1 << i)
    }

    /// Edge sets of all tight cycles (cyclic = true) or paths on `l` distinct vertices inside `mask`.
    fn pieces(&self, mask: u64, l: usize, cyclic: bool) -> Vec<u64> {
        let mut out = BTreeSet::new();
        let mut seq = Vec::new();
        fn rec(c: &Corpus, mask: u64, l: usize, cyclic: bool, seq: &mut Vec<Vertex>, acc: u64, out: &mut BTreeSet<u64>) {
            if seq.len() == l {
                let mut acc = acc;
                if cyclic {
                    for i in l - 2..l {
                        let w = [seq[i], seq[(i + 1) % l], seq[(i + 2) % l]];
                        match c.mask_of(&w) {
                            Some(b) if mask & b != 0 && acc & b == 0 => acc |= b,
                            _ => return,
                        }
                    }
                }
                out.insert(acc);
                return;
            }
            for v in 0..7 {
                if seq.contains(&v) {
                    continue;
                }
                seq.push(v);
                let n = seq.len();
                let mut next = Some(acc);
                if n >= 3 {
                    next = match c.mask_of(&seq[n - 3..]) {
                        Some(b) if mask & b != 0 && acc & b == 0 => Some(acc | b),
                        _ => None,
                    };
                }
                if let Some(a) = next {
                    rec(c, mask, l, cyclic, seq, a, out);
                }
                seq.pop();
            }
        }
        rec(self, mask, l, cyclic, &mut seq, 0, &mut out);
        out.into_iter().collect()
    }
}

fn partitions(target: u64, sets: &[u64]) -> bool {
    if target == 0 {
        return true;
    }
    let low = target & target.wrapping_neg();
    sets.iter().any(|&s| s & low != 0 && s & !target == 0 && partitions(target ^ s, sets))
}

fn c5_solver_oracle() -> Verdict {
    let c = Corpus::new();
    let classes = c.classes(8);
    let mut calls = 0usize;
    let mut disagreements = Vec::new();
    let mut necessity = 0usize;
    let mut yes = 0usize;
    let budget = 10_000_000;
    let answer = |o: tightdec::Result<Outcome<Certificate>>| -> Option<bool> {
        match o.ok()? {
            Outcome::Found(_) => Some(true),
            Outcome::None => Some(false),
            Outcome::BudgetExhausted => None,
        }
    };
    for &mask in &classes {
        let h = make_graph(3, 0..7, c.edges(mask)).unwrap();
        let mut all_cycles = Vec::new();
        for l in 4..=7 {
            let cyc = c.pieces(mask, l, true);
            all_cycles.extend(cyc.iter().copied());
            let want = partitions(mask, &cyc);
            let got = answer(solver::decompose_cycles(&h, l, budget));
            calls += 1;
            yes += usize::from(want);
            necessity += usize::from(want && !is_cycle_divisible(&h, l));
            if got != Some(want) {
                disagreements.push(format!("cycles:{l} on {:?}: oracle {want}, solver {got:?}", c.edges(mask)));
            }
        }
        for l in 3..=7 {
            let want = partitions(mask, &c.pieces(mask, l, false));
            let got = answer(solver::decompose_paths(&h, l, budget));
            calls += 1;
            yes += usize::from(want);
            necessity += usize::from(want && !is_path_divisible(&h, l));
            if got != Some(want) {
                disagreements.push(format!("paths:{l} on {:?}: oracle {want}, solver {got:?}", c.edges(mask)));
            }
        }
        let want = partitions(mask, &all_cycles);
        let got = answer(solver::decompose_mixed(&h, budget));
        calls += 1;
        yes += usize::from(want);
        necessity += usize::from(want && h.vertex_degrees().values().any(|d| d % 3 != 0));
        if got != Some(want) {
            disagreements.push(format!("mixed on {:?}: oracle {want}, solver {got:?}", c.edges(mask)));
        }
    }
    let first: Vec<String> = disagreements.iter().take(3).cloned().collect();
    verdict(
        disagreements.is_empty() && necessity == 0,
        format!("{} classes, {calls} queries, {yes} decomposable, {} disagreements, {necessity} divisibility violations{}", classes.len(), disagreements.len(), if first.is_empty() { String::new() } else { format!("; {}", first.join("; ")) }),
    )
}

fn c6_euler_counterexample() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for (k, m) in [(3, 2), (3, 3), (4, 2)] {
        match extremal::euler_counterexample(k, m) {
            Ok(cex) => {
                let h = &cex.graph;
                let n = h.vertex_count();
                let div = cex.degrees_divisible();
                let codeg = graph::min_degree(h, k - 1).unwrap_or(0);
                let need = n as i64 / 2 - 2 * k as i64 + 1;
                let codeg_ok = (2 * codeg as i64) >= n as i64 - 4 * k as i64 + 2;
                let in_cycle = solver::in_some_cycle(h, &cex.special_edge, h.edge_count());
                let good = div && codeg_ok && !in_cycle;
                ok &= good;
                lines.push(format!("(k={k},m={m}) n={n} degrees%k={div} δ={codeg} need≥{}{} special edge in a cycle={in_cycle}", need, if n % 2 == 1 { "+½" } else { "" }));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("(k={k},m={m}): {e}"));
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn c7_freeness() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for l in [4, 5, 7] {
        for s in [4, 5] {
            for i in [1, 2] {
                match extremal::check_cycle_free(3, l, i, (s, s)) {
                    Ok(r) => {
                        ok &= r.consistent();
                        lines.push(format!("ℓ={l} |A|=|B|={s} i={i}: predicted {} observed {}", if r.predicted_free { "free" } else { "-" }, if r.observed_free { "free" } else { "cycle" }));
                    }
                    Err(e) => {
                        ok = false;
                        lines.push(format!("ℓ={l} |A|=|B|={s} i={i}: {e}"));
                    }
                }
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn c8_bounds() -> Verdict {
    let (mut pairs, mut cased, mut printed_miss, mut corrected_miss, mut floor_miss) = (0, 0, Vec::new(), 0, 0);
    for k in 2..=10usize {
        for l in k + 1..=30 {
            if l % k == 0 {
                continue;
            }
            pairs += 1;
            let b = extremal::bound_value(k, l).unwrap();
            floor_miss += usize::from(b.value < extremal::general_floor(l));
            if let Some(case) = &b.case {
                cased += 1;
                if b.value != extremal::closed_form_printed(k, l, case) {
                    printed_miss.push(format!("(k={k},ℓ={l}) {} vs {}", b.value, extremal::closed_form_printed(k, l, case)));
                }
                corrected_miss += usize::from(b.value != extremal::closed_form_corrected(k, l, case));
            }
        }
    }
    verdict(
        printed_miss.is_empty() && floor_miss == 0,
        format!(
            "{pairs} pairs, {cased} with a closed form; printed form differs on {}{}; corrected form differs on {corrected_miss}; floor violated on {floor_miss}",
            printed_miss.len(),
            printed_miss.first().map_or(String::new(), |m| format!(" (first {m})"))
        ),
    )
}

fn random_pairs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> SparsePairList {
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    while pairs.len() < count {
        let mut vs: Vec<Vertex> = (0..n as Vertex).collect();
        vs.shuffle(rng);
        let (a, b) = (vec![vs[0], vs[1]], vec![vs[2], vs[3]]);
        if seen.insert(a.iter().copied().sorted().collect::<Vec<_>>()) & seen.insert(b.iter().copied().sorted().collect::<Vec<_>>()) {
            pairs.push((a, b));
        }
    }
    SparsePairList { n, pairs }
}

/// Lists meeting the full sparsity definition decide the verdict; the
/// relaxed lists (sparse only for j <= k-2) are reported alongside.
fn c9_extension() -> Verdict {
    let (n, gamma, mu) = (40, 0.01, 0.2);
    let h = complete(n, 3).unwrap();
    let mut ok = true;
    let mut strict = 0;
    let mut lines = Vec::new();
    let lists = [SparsePairList { n, pairs: Vec::new() }, random_pairs(n, 20, &mut ChaCha8Rng::seed_from_u64(91)), random_pairs(n, 40, &mut ChaCha8Rng::seed_from_u64(92))];
    for (i, pairs) in lists.iter().enumerate() {
        let full = randomized::check_sparse(pairs, gamma);
        if !full && !randomized::check_sparse_upto(pairs, gamma, 1) {
            lines.push(format!("list {i} skipped: not sparse below j = 2"));
            continue;
        }
        strict += usize::from(full);
        let tag = if full { "γ-sparse" } else { "relaxed, informational" };
        let cfg = ExtendConfig::new(8, mu);
        let none = HashSet::new();
        let t = Instant::now();
        let r = extend_all(&h, pairs, &cfg, &none, &mut ChaCha8Rng::seed_from_u64(100 + i as u64));
        let el = t.elapsed();
        let (good, line) = match r {
            Ok(rep) => {
                let post = check_extension(&h, pairs, &none, &rep, mu);
                let union = KGraph::from_edges(3, rep.trails.iter().flat_map(|w| w.edges())).unwrap();
                let d2 = if union.is_empty() { 0 } else { max_degree(&union, 2).unwrap() };
                let good = post.is_ok() && (d2 as f64) <= mu * n as f64 && rep.trails.len() == pairs.pairs.len() && el < Duration::from_secs(120);
                (good, format!("list {i} ({tag}): {} pairs, profile {:?}, Δ2(union)={d2} ≤ {}, capped picks {}", pairs.pairs.len(), pairs.delta_profile(), mu * n as f64, rep.capped_picks))
            }
            Err(e) => (false, format!("list {i} ({tag}): {} pairs, profile {:?}: {e}", pairs.pairs.len(), pairs.delta_profile())),
        };
        if full {
            ok &= good;
        }
        lines.push(line);
    }
    verdict(ok && strict > 0, lines.join("; "))
}

fn random_graph(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng) -> KGraph {
    let full = complete(n, k).unwrap();
    make_graph(k, 0..n as Vertex, full.edges().iter().filter(|_| rng.gen_bool(p)).cloned().collect::<Vec<_>>()).unwrap()
}

fn c10_vortex_adjuster() -> Verdict {
    let mut ok = true;
    let mut lines = Vec::new();
    for (n, seed) in [(40, 1u64), (100, 2), (200, 3)] {
        let h = complete(n, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match randomized::sample_vortex(&h, 0.9, 0.5, 20, &mut rng, randomized::DEFAULT_RETRIES) {
            Ok(v) => {
                let checked = randomized::check_vortex(&h, &v);
                ok &= checked.is_ok();
                lines.push(format!("K_{n} levels {:?} {}", v.levels.iter().map(|l| l.len()).collect::<Vec<_>>(), checked.map_or_else(|e| e.to_string(), |_| "V1-V5 ok".into())));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("K_{n}: {e}"));
            }
        }
    }
    for (k, l, n, p, seed) in [(3, 7, 30, 0.8, 11u64), (3, 7, 40, 0.8, 12), (4, 13, 26, 0.9, 13)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_graph(n, k, p, &mut rng);
        match absorb::degree_adjuster(&h, l, &AdjusterParams::default(), &mut rng) {
            Ok(r) => {
                let rest = graph::minus(&h, &r.h_prime);
                let div = rest.as_ref().is_ok_and(|u| u.vertex_degrees().values().all(|d| d % k == 0));
                let size_ok = r.h_prime.edge_count() <= l * l * k * n;
                let cert_ok = r.certificate.kind == CertKind::Paths(l) && solver::verify(&r.h_prime, &r.certificate).ok();
                ok &= div && size_ok && cert_ok;
                lines.push(format!("k={k} n={n}: |H'|={} ≤ {} degrees%k={div} certificate={cert_ok}", r.h_prime.edge_count(), l * l * k * n));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("adjuster k={k} n={n}: {e}"));
            }
        }
    }
    verdict(ok, lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("gadget certification", c1_gadgets),
        ("mod-k sum law", c2_mod_sum),
        ("tour augmentation", c3_tour_augment),
        ("transformer certification", c4_transformer),
        ("solver oracle agreement", c5_solver_oracle),
        ("Euler-tour counterexample", c6_euler_counterexample),
        ("extremal freeness", c7_freeness),
        ("bound values", c8_bounds),
        ("extension process", c9_extension),
        ("vortex and degree adjuster", c10_vortex_adjuster),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        failed += usize::from(!v.pass);
        println!("{} {id:>2} {name} ({:.1?}): {}", if v.pass { "PASS" } else { "FAIL" }, t.elapsed(), v.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
