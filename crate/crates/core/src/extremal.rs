//! Lower-bound constructions built from the split graphs H_i(A, B), whose
//! edges meet B in exactly i vertices.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Rational64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{canonical, min_degree, split_graph, Edge, KGraph, Vertex};
use crate::solver::in_some_cycle;
use crate::walks::enumerate_cycles;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    pub r: usize,
    pub free: BTreeSet<usize>,
    pub odd: BTreeSet<usize>,
    pub even: BTreeSet<usize>,
}

fn check_length(k: usize, l: usize) -> Result<()> {
    if l <= k {
        return Err(Error::RangeError(format!("need k < ℓ, got k = {k}, ℓ = {l}")));
    }
    if l % k == 0 {
        return Err(Error::DivisibleLength(l, k));
    }
    Ok(())
}

pub fn index_sets(k: usize, l: usize) -> Result<IndexSets> {
    check_length(k, l)?;
    let r = k / k.gcd(&l);
    Ok(IndexSets {
        r,
        free: (0..=k).filter(|i| i % r != 0).collect(),
        odd: (0..=k).filter(|i| i % 2 == 1).collect(),
        even: (0..=k).filter(|i| i % 2 == 0).collect(),
    })
}

fn binom(n: usize, r: usize) -> i64 {
    (0..r).fold(1i64, |acc, j| acc * (n - j) as i64 / (j as i64 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    /// k / gcd(ℓ, k) even: ½ + 1/(2(ℓ-1)).
    EvenRatio,
    /// gcd(ℓ, k) = 1 and k odd.
    CoprimeOdd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub value: Rational64,
    pub odd_sum: i64,
    pub even_sum: i64,
    pub case: Option<ClosedForm>,
}

impl BoundValue {
    pub fn max_term(&self) -> i64 {
        self.odd_sum.max(self.even_sum)
    }
}

/// ½ + max{Σ_{free∩odd} C(k,i), Σ_{free∩even} C(k,i)} / (2^k (ℓ-1)), exactly.
pub fn bound_value(k: usize, l: usize) -> Result<BoundValue> {
    let s = index_sets(k, l)?;
    let sum = |set: &BTreeSet<usize>| s.free.intersection(set).map(|&i| binom(k, i)).sum::<i64>();
    let (odd_sum, even_sum) = (sum(&s.odd), sum(&s.even));
    let value = Rational64::new(1, 2) + Rational64::new(odd_sum.max(even_sum), (1i64 << k) * (l as i64 - 1));
    let case = if s.r % 2 == 0 {
        Some(ClosedForm::EvenRatio)
    } else if s.r == k && k % 2 == 1 {
        Some(ClosedForm::CoprimeOdd)
    } else {
        None
    };
    Ok(BoundValue { value, odd_sum, even_sum, case })
}

/// The closed forms exactly as printed for the two special cases.
pub fn closed_form_printed(k: usize, l: usize, case: &ClosedForm) -> Rational64 {
    let half = Rational64::new(1, 2);
    let l1 = l as i64 - 1;
    match case {
        ClosedForm::EvenRatio => half + Rational64::new(1, 2 * l1),
        ClosedForm::CoprimeOdd => half + (Rational64::from_integer(1) - Rational64::new(1, 1i64 << k)) / (2 * l1),
    }
}

/// The coprime-odd closed form that the sums actually give: the maximum
/// is 2^{k-1} - 1, hence ½ + (1 - 2^{1-k})/(2(ℓ-1)).
pub fn closed_form_corrected(k: usize, l: usize, case: &ClosedForm) -> Rational64 {
    match case {
        ClosedForm::EvenRatio => closed_form_printed(k, l, case),
        ClosedForm::CoprimeOdd => {
            Rational64::new(1, 2) + (Rational64::from_integer(1) - Rational64::new(2, 1i64 << k)) / (2 * (l as i64 - 1))
        }
    }
}

pub fn general_floor(l: usize) -> Rational64 {
    Rational64::new(1, 2) + Rational64::new(1, 4 * (l as i64 - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub predicted_free: bool,
    pub observed_free: bool,
    pub cycles_found: usize,
}

impl FreenessReport {
    /// The prediction only asserts freeness; a non-free prediction is never contradicted.
    pub fn consistent(&self) -> bool {
        !self.predicted_free || self.observed_free
    }
}

pub const FREENESS_EDGE_LIMIT: usize = 4000;

/// Exhaustively checks whether H_i(A, B) with |A| = sizes.0, |B| = sizes.1 contains a tight ℓ-cycle.
pub fn check_cycle_free(k: usize, l: usize, i: usize, sizes: (usize, usize)) -> Result<FreenessReport> {
    if i == 0 || i >= k {
        return Err(Error::RangeError(format!("i = {i} not in 1..{k}")));
    }
    if l <= k {
        return Err(Error::RangeError(format!("need k < ℓ, got k = {k}, ℓ = {l}")));
    }
    let (a, b) = sides(sizes.0, sizes.1);
    let h = split_graph(&a, &b, i, k)?;
    if h.edge_count() > FREENESS_EDGE_LIMIT {
        return Err(Error::SizeTooLarge(format!("{} edges", h.edge_count())));
    }
    let r = k / k.gcd(&l);
    let found = enumerate_cycles(&h, l)?.len();
    Ok(FreenessReport { predicted_free: (k - i) % r != 0, observed_free: found == 0, cycles_found: found })
}

fn sides(na: usize, nb: usize) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
    let a = (0..na as Vertex).collect();
    let b = (na as Vertex..(na + nb) as Vertex).collect();
    (a, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundReport {
    pub p: f64,
    pub keep_probability: f64,
    pub min_codegree: usize,
    pub h_odd_free_edges: usize,
    pub h_even_star_edges: usize,
    /// |H'_odd|/(ℓ-1) - η n^k
    pub size_target: f64,
    pub size_condition_holds: bool,
    pub even_star_codegree: usize,
    pub degree_condition_holds: bool,
    /// (1 + p - 4.5η) n / 2
    pub codegree_prediction: f64,
}

/// H_odd ∪ H*_even, with H*_even a random sparsification of H_even.
pub fn lower_bound_graph<R: Rng>(k: usize, l: usize, n: usize, eta: f64, rng: &mut R) -> Result<(KGraph, LowerBoundReport)> {
    let s = index_sets(k, l)?;
    if n < 2 * k {
        return Err(Error::InvalidSize(format!("n = {n} < 2k")));
    }
    let (a, b) = sides(n / 2, n - n / 2);
    let mut h_odd = KGraph::empty(k)?;
    let mut odd_free = 0usize;
    let mut h_even: Vec<Edge> = Vec::new();
    for i in 0..=k {
        let hi = split_graph(&a, &b, i, k)?;
        if i % 2 == 1 {
            if s.free.contains(&i) {
                odd_free += hi.edge_count();
            }
            for e in hi.edges() {
                h_odd.insert_edge(e)?;
            }
        } else {
            h_even.extend(hi.edges().iter().cloned());
        }
    }
    let total = binom(n, k) as f64;
    let p = 2.0 * odd_free as f64 / ((l as f64 - 1.0) * total);
    let q = p - 3.0 * eta;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ParameterInfeasible(format!("p - 3η = {q}")));
    }
    let mut star = KGraph::empty(k)?;
    for v in a.iter().chain(b.iter()) {
        star.add_vertex(*v);
    }
    for e in h_even {
        if rng.gen_bool(q) {
            star.insert_edge(&e)?;
        }
    }
    let mut h = h_odd;
    for v in star.vertices() {
        h.add_vertex(*v);
    }
    for e in star.edges() {
        h.insert_edge(e)?;
    }
    let size_target = odd_free as f64 / (l as f64 - 1.0) - eta * (n as f64).powi(k as i32);
    let even_star_codegree = min_degree(&star, k - 1)?;
    let report = LowerBoundReport {
        p,
        keep_probability: q,
        min_codegree: min_degree(&h, k - 1)?,
        h_odd_free_edges: odd_free,
        h_even_star_edges: star.edge_count(),
        size_target,
        size_condition_holds: (star.edge_count() as f64) < size_target,
        even_star_codegree,
        degree_condition_holds: even_star_codegree as f64 >= (p - 4.0 * eta) * n as f64 / 2.0,
        codegree_prediction: (1.0 + p - 4.5 * eta) * n as f64 / 2.0,
    };
    Ok((h, report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCounterexample {
    pub graph: KGraph,
    pub special_edge: Edge,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub matchings_removed: usize,
}

impl EulerCounterexample {
    pub fn degrees_divisible(&self) -> bool {
        let k = self.graph.k();
        self.graph.vertex_degrees().values().all(|d| d % k == 0)
    }

    pub fn codegree_bound_holds(&self) -> Result<bool> {
        let k = self.graph.k();
        let n = self.graph.vertex_count() as i64;
        Ok(min_degree(&self.graph, k - 1)? as i64 >= n / 2 - 2 * k as i64 + 1)
    }

    pub fn special_edge_in_cycle(&self) -> bool {
        in_some_cycle(&self.graph, &self.special_edge, self.graph.edge_count())
    }
}

/// ∪_{i ∉ {1, k-1}} H_i(A, B) on |A| = |B| = mk, degree-corrected by removing
/// matchings of consecutive blocks, with one edge from each side swapped across.
pub fn euler_counterexample(k: usize, m: usize) -> Result<EulerCounterexample> {
    if m < 2 || k < 3 {
        return Err(Error::RangeError(format!("need k >= 3 and m >= 2, got k = {k}, m = {m}")));
    }
    let size = m * k;
    let (a, b) = sides(size, size);
    let mut h = KGraph::empty(k)?;
    for i in (0..=k).filter(|&i| i != 1 && i != k - 1) {
        let hi = split_graph(&a, &b, i, k)?;
        for v in hi.vertices() {
            h.add_vertex(*v);
        }
        for e in hi.edges() {
            h.insert_edge(e)?;
        }
    }
    let d = h.degree(&[0])?;
    let remove = d % k;
    let av: Vec<Vertex> = a.iter().copied().collect();
    let bv: Vec<Vertex> = b.iter().copied().collect();
    for side in [&av, &bv] {
        for shift in 0..remove {
            for block in 0..m {
                let e: Vec<Vertex> = (0..k).map(|j| side[(shift + block * k + j) % size]).collect();
                if !h.remove_edge(&e) {
                    return Err(Error::MatchingNotFound(format!("block {e:?} already removed")));
                }
            }
        }
    }
    // a_1 … a_{k-1} = first k-1 of the side, a_k skips one so it lies in no removed block
    let pick = |side: &[Vertex]| -> Vec<Vertex> { side[..k - 1].iter().copied().chain([side[k]]).collect() };
    let (sa, sb) = (pick(&av), pick(&bv));
    if !h.remove_edge(&sa) || !h.remove_edge(&sb) {
        return Err(Error::MatchingNotFound("swap edges missing".into()));
    }
    let special: Vec<Vertex> = sa[..k - 1].iter().copied().chain([sb[k - 1]]).collect();
    let mirror: Vec<Vertex> = sb[..k - 1].iter().copied().chain([sa[k - 1]]).collect();
    h.add_edge(&special)?;
    h.add_edge(&mirror)?;
    Ok(EulerCounterexample { graph: h, special_edge: canonical(&special), a: av, b: bv, matchings_removed: remove })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn index_sets_k4_l6() {
        let s = index_sets(4, 6).unwrap();
        assert_eq!(s.r, 2);
        assert_eq!(s.free, BTreeSet::from([1, 3]));
        assert!(matches!(index_sets(3, 6), Err(Error::DivisibleLength(6, 3))));
    }

    #[test]
    fn closed_forms() {
        let b = bound_value(4, 6).unwrap();
        assert_eq!(b.case, Some(ClosedForm::EvenRatio));
        assert_eq!(b.value, Rational64::new(1, 2) + Rational64::new(1, 10));
        let b = bound_value(3, 4).unwrap();
        assert_eq!(b.case, Some(ClosedForm::CoprimeOdd));
        assert_eq!(b.max_term(), 3);
        assert_eq!(b.value, closed_form_corrected(3, 4, &ClosedForm::CoprimeOdd));
        assert!(b.value < closed_form_printed(3, 4, &ClosedForm::CoprimeOdd));
        assert!(b.value >= general_floor(4));
    }

    #[test]
    fn split_freeness() {
        let r = check_cycle_free(3, 4, 1, (4, 4)).unwrap();
        assert!(r.predicted_free && r.observed_free);
        let r = check_cycle_free(4, 6, 1, (4, 4)).unwrap();
        assert!(r.predicted_free && r.consistent());
        // k - i = 2 ≡ 0 mod r = 2: cycles may exist
        let r = check_cycle_free(4, 6, 2, (4, 4)).unwrap();
        assert!(!r.predicted_free);
    }

    #[test]
    fn euler_cex_k3() {
        let cex = euler_counterexample(3, 2).unwrap();
        assert_eq!(cex.graph.vertex_count(), 12);
        assert!(cex.degrees_divisible());
        // with i ∉ {1, 2} only H_0 ∪ H_3 survives, so a cross pair {a, b} off the
        // swapped edges has codegree 0 and the bound n/2 - 2k + 1 = 1 is missed
        assert!(!cex.codegree_bound_holds().unwrap());
        assert_eq!(min_degree(&cex.graph, 2).unwrap(), 0);
        assert!(!cex.special_edge_in_cycle());
        let e = &cex.special_edge;
        assert_eq!(cex.graph.degree(&[e[0], e[2]]).unwrap(), 1);
    }

    #[test]
    fn euler_cex_k4_degrees_and_codegree() {
        let cex = euler_counterexample(4, 2).unwrap();
        assert!(cex.degrees_divisible());
        assert!(cex.codegree_bound_holds().unwrap());
    }

    #[test]
    fn lower_bound_graph_reports() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (h, rep) = lower_bound_graph(3, 4, 12, 0.001, &mut rng).unwrap();
        assert_eq!(h.vertex_count(), 12);
        assert!(rep.p > 0.0);
        assert!(matches!(lower_bound_graph(3, 4, 12, 5.0, &mut rng), Err(Error::ParameterInfeasible(_))));
    }
}
