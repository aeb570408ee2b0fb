use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tightdec::absorb::{self, AdjusterParams, SolverOracle};
use tightdec::extremal;
use tightdec::format;
use tightdec::gadgets::{self, GadgetResult};
use tightdec::graph::{self, is_cycle_divisible, is_f_divisible, is_path_divisible, KGraph};
use tightdec::randomized::{self, CoverDownParams};
use tightdec::solver::{self, CertKind, Certificate};
use tightdec::{Error, FreshVertexSupply, Outcome, Vertex};

#[derive(Parser)]
#[command(name = "tightdec", version, about = "Tight cycle decompositions of k-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Out {
    /// Main output file (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a k-graph.
    Gen {
        #[arg(long, num_args = 2, value_names = ["N", "K"], group = "shape")]
        complete: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["L", "K"], group = "shape")]
        cycle: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["L", "K"], group = "shape")]
        path: Option<Vec<usize>>,
        /// Binomial random k-graph G(N, K, P); needs --seed.
        #[arg(long, num_args = 3, value_names = ["N", "K", "P"], group = "shape")]
        random: Option<Vec<String>>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Out,
    },
    /// Print size, degree and divisibility statistics.
    Stats {
        input: PathBuf,
        /// Cycle length for the divisibility line.
        #[arg(long)]
        l: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Exit 0 if the graph is divisible, 1 if not.
    Divisible {
        input: PathBuf,
        #[arg(long, required_unless_present = "pattern")]
        l: Option<usize>,
        /// Test P_ℓ-divisibility instead of C_ℓ-divisibility.
        #[arg(long, requires = "l")]
        paths: bool,
        /// Test F-divisibility for the k-graph F in this file.
        #[arg(long, conflicts_with = "l")]
        pattern: Option<PathBuf>,
    },
    /// Exact decomposition into cycles, paths, mixed cycles or one Euler tour.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DecomposeKind,
        #[arg(long, required_if_eq_any = [("kind", "cycles"), ("kind", "paths")])]
        l: Option<usize>,
        #[arg(long, default_value_t = solver::DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Build a gadget on anchors y = 0.., y' = k.., x = 2k, x' = 2k+1.
    Gadget {
        #[arg(long = "type", value_enum)]
        kind: GadgetKind,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        /// Cycle length (default k²-k+1).
        #[arg(long)]
        l: Option<usize>,
        /// Re-check the gadget and exit 1 on any failed check.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Add edge-disjoint tight ℓ-cycles J so that G ∪ J has a tour decomposition.
    TourAugment {
        input: PathBuf,
        #[arg(long)]
        l: usize,
        /// Write the final tour decomposition here.
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Build a transformer between G and G' along an edge-bijective map.
    Transformer {
        g: PathBuf,
        g2: PathBuf,
        /// File with `a:b` pairs (optionally behind an `m` tag).
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        cert_g: Option<PathBuf>,
        #[arg(long)]
        cert_g2: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Build an absorber for a C_ℓ-divisible graph.
    Absorber {
        input: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = solver::DEFAULT_BUDGET)]
        budget: u64,
        /// Largest clique order tried by the oracle.
        #[arg(long, default_value_t = 16)]
        max_m: usize,
        #[arg(long)]
        cert_a: Option<PathBuf>,
        #[arg(long)]
        cert_ag: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Add tight ℓ-paths making every vertex degree divisible by k.
    AdjustDegrees {
        input: PathBuf,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Sample a vortex and write its levels as a ledger.
    Vortex {
        input: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        xi: f64,
        #[arg(long, default_value_t = 20)]
        m: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = randomized::DEFAULT_RETRIES)]
        retries: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Cover every edge outside H[U] by tight ℓ-cycles.
    CoverDown {
        input: PathBuf,
        #[arg(long)]
        l: usize,
        /// U as a whitespace-separated vertex list.
        #[arg(long, group = "uset", required = true)]
        u: Option<String>,
        /// U as the first N vertices.
        #[arg(long, group = "uset")]
        u_size: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// Reserve probabilities p_1..p_{k-1}, comma separated.
        #[arg(long, value_delimiter = ',')]
        p_ladder: Option<Vec<f64>>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        leftover: Option<PathBuf>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Extremal constructions and bounds.
    Extremal {
        #[arg(long, value_enum)]
        kind: ExtremalKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
        /// Layer index for freeness.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        eta: f64,
        /// Matching-block count for the Euler counterexample.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, cert: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeKind {
    Cycles,
    Paths,
    Mixed,
    Euler,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    Basic,
    Balancer,
    F1,
    Swapper1,
    Swapper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtremalKind {
    Bound,
    Freeness,
    Lowerbound,
    EulerCex,
}

enum Fail {
    Usage(String),
    No(String),
    Failure(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. } | Error::RangeError(_) | Error::InvalidSize(_) | Error::UniformityMismatch(..) | Error::DivisibleLength(..) | Error::ParameterInfeasible(_) => Fail::Usage(msg),
            Error::NotDivisible(_) | Error::DegreeNotDivisible(..) | Error::NotHomomorphism(_) => Fail::No(msg),
            _ => Fail::Failure(msg),
        }
    }
}

type Res = std::result::Result<(), Fail>;

fn read_text(p: &Path) -> std::result::Result<String, Fail> {
    if p == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Fail::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))
}

fn with_path<T>(p: &Path, r: tightdec::Result<T>) -> std::result::Result<T, Fail> {
    r.map_err(|e| match e {
        Error::Parse { .. } => Fail::Usage(format!("{}: {e}", p.display())),
        e => e.into(),
    })
}

fn load_graph(p: &Path) -> std::result::Result<KGraph, Fail> {
    with_path(p, format::read_graph(&read_text(p)?))
}

fn write_to(p: Option<&Path>, text: &str) -> Res {
    match p {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Failure(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Fail::Failure(e.to_string())),
    }
}

fn emit(out: &Out, text: &str) -> Res {
    write_to(out.output.as_deref(), text)
}

fn emit_opt(p: &Option<PathBuf>, text: &str) -> Res {
    match p {
        Some(p) => write_to(Some(p), text),
        None => Ok(()),
    }
}

fn rows<const N: usize>(stage: &str, kv: [(&str, String); N]) -> Vec<(String, String, String)> {
    kv.into_iter().map(|(k, v)| (stage.to_string(), k.to_string(), v)).collect()
}

fn join(vs: impl IntoIterator<Item = Vertex>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn outcome<T>(o: Outcome<T>, what: &str) -> std::result::Result<T, Fail> {
    match o {
        Outcome::Found(t) => Ok(t),
        Outcome::None => Err(Fail::No(format!("no {what}"))),
        Outcome::BudgetExhausted => Err(Fail::Failure(format!("budget exhausted while searching for {what}"))),
    }
}

fn gen(complete: Option<Vec<usize>>, cycle: Option<Vec<usize>>, path: Option<Vec<usize>>, random: Option<Vec<String>>, seed: Option<u64>) -> std::result::Result<KGraph, Fail> {
    if let Some(v) = complete {
        return Ok(graph::complete(v[0], v[1])?);
    }
    if let Some(v) = cycle {
        return Ok(graph::tight_cycle_graph(v[0], v[1])?);
    }
    if let Some(v) = path {
        return Ok(graph::tight_path_graph(v[0], v[1])?);
    }
    if let Some(v) = random {
        let seed = seed.ok_or_else(|| Fail::Usage("--random requires --seed".into()))?;
        let bad = |s: &String| Fail::Usage(format!("bad --random argument `{s}`"));
        let n: usize = v[0].parse().map_err(|_| bad(&v[0]))?;
        let k: usize = v[1].parse().map_err(|_| bad(&v[1]))?;
        let p: f64 = v[2].parse().map_err(|_| bad(&v[2]))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(bad(&v[2]));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = graph::complete(n, k)?;
        let edges: Vec<_> = full.edges().iter().filter(|_| rng.gen_bool(p)).cloned().collect();
        return Ok(graph::make_graph(k, 0..n as Vertex, edges)?);
    }
    Err(Fail::Usage("gen needs one of --complete, --cycle, --path, --random".into()))
}

fn build_gadget(kind: GadgetKind, k: usize, j: usize, l: usize) -> tightdec::Result<GadgetResult> {
    let y: Vec<Vertex> = (0..k as Vertex).collect();
    let y2: Vec<Vertex> = (k as Vertex..2 * k as Vertex - 1).collect();
    let (x, x2) = (2 * k as Vertex, 2 * k as Vertex + 1);
    let mut supply = FreshVertexSupply::new(x2 + 1);
    match kind {
        GadgetKind::Basic => gadgets::basic_gadget(k, j, &y, x, x2, l, &mut supply),
        GadgetKind::Balancer => gadgets::balancer(k, j, x, x2, l, &mut supply),
        GadgetKind::F1 => gadgets::f1_gadget(k, &y[..k - 1], x, x2, l, &mut supply),
        GadgetKind::Swapper1 => gadgets::swapper1(k, &y[..k - 1], &y2, x, x2, l, &mut supply),
        GadgetKind::Swapper => gadgets::swapper(k, j, &y[..k - 1], &y2, x, x2, l, &mut supply),
    }
}

fn parse_phi(text: &str) -> std::result::Result<BTreeMap<Vertex, Vertex>, Fail> {
    let mut phi = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace().filter(|t| *t != "m") {
            let bad = || Fail::Usage(format!("phi line {}: expected `a:b`, found `{tok}`", i + 1));
            let (a, b) = tok.split_once(':').ok_or_else(bad)?;
            phi.insert(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        }
    }
    Ok(phi)
}

fn run(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Gen { complete, cycle, path, random, seed, out } => {
            let g = gen(complete, cycle, path, random, seed)?;
            emit(&out, &format::write_graph(&g))
        }
        Cmd::Stats { input, l, out } => {
            let h = load_graph(&input)?;
            let k = h.k();
            let mut r = rows("stats", [("k", k.to_string()), ("vertices", h.vertex_count().to_string()), ("edges", h.edge_count().to_string())]);
            for i in 1..k {
                let lo = graph::min_degree(&h, i).map_or("-".to_string(), |d| d.to_string());
                let hi = graph::max_degree(&h, i).map_or("-".to_string(), |d| d.to_string());
                r.push(("stats".into(), format!("degree{i}"), format!("{lo} {hi}")));
            }
            if let Some(l) = l {
                r.push(("stats".into(), format!("cycle_divisible:{l}"), is_cycle_divisible(&h, l).to_string()));
                r.push(("stats".into(), format!("path_divisible:{l}"), is_path_divisible(&h, l).to_string()));
            }
            emit(&out, &format::write_ledger(&r))
        }
        Cmd::Divisible { input, l, paths, pattern } => {
            let h = load_graph(&input)?;
            let ok = match (pattern, l) {
                (Some(f), _) => is_f_divisible(&h, &load_graph(&f)?)?,
                (None, Some(l)) if paths => is_path_divisible(&h, l),
                (None, Some(l)) => is_cycle_divisible(&h, l),
                (None, None) => unreachable!("clap requires --l or --pattern"),
            };
            if ok {
                println!("divisible");
                Ok(())
            } else {
                Err(Fail::No("not divisible".into()))
            }
        }
        Cmd::Decompose { input, kind, l, budget, out } => {
            let h = load_graph(&input)?;
            let cert = match kind {
                DecomposeKind::Cycles => outcome(solver::decompose_cycles(&h, l.unwrap(), budget)?, "cycle decomposition")?,
                DecomposeKind::Paths => outcome(solver::decompose_paths(&h, l.unwrap(), budget)?, "path decomposition")?,
                DecomposeKind::Mixed => outcome(solver::decompose_mixed(&h, budget)?, "tight cycle decomposition")?,
                DecomposeKind::Euler => Certificate::walks(CertKind::EulerTour, vec![outcome(solver::euler_tour(&h, budget), "Euler tour")?]),
            };
            emit(&out, &format::write_certificate(&cert, h.k()))
        }
        Cmd::Gadget { kind, k, j, l, verify, out } => {
            let l = l.unwrap_or(k * k - k + 1);
            let g = build_gadget(kind, k, j, l)?;
            let cert = Certificate::walks(CertKind::Cycles(l), g.cycles.clone());
            let mut text = format::write_certificate(&cert, k);
            text.push_str(&format::write_residual(&g.merged_residual()));
            emit(&out, &text)?;
            if verify {
                let rep = gadgets::verify_gadget(&g, None);
                if !rep.passed() {
                    for c in rep.failures() {
                        eprintln!("check failed: {c:?}");
                    }
                    return Err(Fail::No("gadget verification failed".into()));
                }
                eprintln!("gadget verified: {} cycles, {} edges", g.cycles.len(), g.edge_count());
            }
            Ok(())
        }
        Cmd::TourAugment { input, l, decomposition, ledger, out } => {
            let g = load_graph(&input)?;
            let mut supply = FreshVertexSupply::above([&g]);
            let r = absorb::tour_augment(&g, l, &mut supply)?;
            let cert = Certificate::walks(CertKind::Cycles(l), r.cycles.clone());
            emit(&out, &format::write_certificate(&cert, g.k()))?;
            emit_opt(&decomposition, &format::write_decomposition(&r.final_decomposition))?;
            let mut led = Vec::new();
            for s in &r.stage_log {
                led.extend(rows(&s.stage, [
                    ("edges_added", s.edges_added.to_string()),
                    ("measured", s.measured.to_string()),
                    ("bound", s.bound.map_or("-".into(), |b| b.to_string())),
                    ("residual", s.residual.len().to_string()),
                ]));
            }
            led.extend(rows("result", [("m1", r.m1.to_string()), ("j_edges", r.j_edge_count().to_string()), ("z", join(r.z.iter().copied()))]));
            emit_opt(&ledger, &format::write_ledger(&led))
        }
        Cmd::Transformer { g, g2, phi, l, cert_g, cert_g2, out } => {
            let (ga, gb) = (load_graph(&g)?, load_graph(&g2)?);
            let phi = parse_phi(&read_text(&phi)?)?;
            let mut supply = FreshVertexSupply::above([&ga, &gb]);
            let r = absorb::transformer(&ga, &gb, &phi, l, &mut supply)?;
            absorb::check_transformer(&ga, &gb, &r)?;
            emit(&out, &format::write_graph(&r.t))?;
            emit_opt(&cert_g, &format::write_certificate(&r.cert_with_g, ga.k()))?;
            emit_opt(&cert_g2, &format::write_certificate(&r.cert_with_g2, ga.k()))
        }
        Cmd::Absorber { input, l, budget, max_m, cert_a, cert_ag, out } => {
            let g = load_graph(&input)?;
            let mut supply = FreshVertexSupply::above([&g]);
            let oracle = SolverOracle { budget, max_m };
            let r = absorb::absorber(&g, l, &mut supply, &oracle)?;
            absorb::check_absorber(&g, &r)?;
            emit(&out, &format::write_graph(&r.a))?;
            emit_opt(&cert_a, &format::write_certificate(&r.cert_a, g.k()))?;
            emit_opt(&cert_ag, &format::write_certificate(&r.cert_ag, g.k()))
        }
        Cmd::AdjustDegrees { input, l, seed, epsilon, mu, cert, ledger, out } => {
            let h = load_graph(&input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = AdjusterParams { epsilon, mu, ..AdjusterParams::default() };
            let r = absorb::degree_adjuster(&h, l, &params, &mut rng)?;
            emit(&out, &format::write_graph(&r.h_prime))?;
            emit_opt(&cert, &format::write_certificate(&r.certificate, h.k()))?;
            let led = rows("adjust", [
                ("seed", seed.to_string()),
                ("arcs", r.arcs.len().to_string()),
                ("l0", r.l0.to_string()),
                ("edges_added", r.h_prime.edge_count().to_string()),
                ("max_codegree", r.max_codegree.to_string()),
                ("capped_picks", r.capped_picks.to_string()),
            ]);
            emit_opt(&ledger, &format::write_ledger(&led))
        }
        Cmd::Vortex { input, delta, xi, m, seed, retries, out } => {
            let h = load_graph(&input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = randomized::sample_vortex(&h, delta, xi, m, &mut rng, retries)?;
            let mut led = rows("vortex", [("seed", seed.to_string()), ("delta", v.delta.to_string()), ("xi", v.xi.to_string()), ("m", v.m.to_string())]);
            for (i, lv) in v.levels.iter().enumerate() {
                let st = format!("level{i}");
                led.extend(rows(&st, [("size", lv.len().to_string()), ("attempts", v.attempts.get(i).copied().unwrap_or(0).to_string()), ("vertices", join(lv.iter().copied()))]));
            }
            for w in &v.warnings {
                led.push(("vortex".into(), "warning".into(), w.clone()));
            }
            emit(&out, &format::write_ledger(&led))
        }
        Cmd::CoverDown { input, l, u, u_size, seed, p_ladder, gamma, mu, alpha, leftover, ledger, out } => {
            let h = load_graph(&input)?;
            let uset: BTreeSet<Vertex> = match (u, u_size) {
                (Some(s), _) => s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| t.parse().map_err(|_| Fail::Usage(format!("bad vertex `{t}` in --u")))).collect::<std::result::Result<_, _>>()?,
                (None, Some(n)) => h.vertices().iter().copied().take(n).collect(),
                (None, None) => unreachable!("clap requires --u or --u-size"),
            };
            let mut params = CoverDownParams::defaults(h.k());
            if let Some(p) = p_ladder {
                params.p = p;
            }
            params.gamma = gamma.unwrap_or(params.gamma);
            params.mu = mu.unwrap_or(params.mu);
            params.alpha = alpha.unwrap_or(params.alpha);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = randomized::cover_down(&h, &uset, l, &params, &mut rng)?;
            let cert = Certificate::walks(CertKind::Cycles(l), r.cycles.clone());
            emit(&out, &format::write_certificate(&cert, h.k()))?;
            emit_opt(&leftover, &format::write_graph(&r.leftover))?;
            let mut led = rows("cover_down", [("seed", seed.to_string())]);
            led.extend(r.ledger.iter().cloned());
            emit_opt(&ledger, &format::write_ledger(&led))
        }
        Cmd::Extremal { kind, k, l, i, a, b, n, eta, m, seed, ledger, out } => {
            let need = |o: Option<usize>, flag: &str| o.ok_or_else(|| Fail::Usage(format!("--kind needs --{flag}")));
            match kind {
                ExtremalKind::Bound => {
                    let l = need(l, "l")?;
                    let bv = extremal::bound_value(k, l)?;
                    let mut r = rows("bound", [("k", k.to_string()), ("l", l.to_string()), ("value", bv.value.to_string()), ("odd_sum", bv.odd_sum.to_string()), ("even_sum", bv.even_sum.to_string())]);
                    if let Some(case) = &bv.case {
                        r.extend(rows("bound", [("case", format!("{case:?}")), ("printed", extremal::closed_form_printed(k, l, case).to_string()), ("corrected", extremal::closed_form_corrected(k, l, case).to_string())]));
                    }
                    emit(&out, &format::write_ledger(&r))
                }
                ExtremalKind::Freeness => {
                    let rep = extremal::check_cycle_free(k, need(l, "l")?, need(i, "i")?, (need(a, "a")?, need(b, "b")?))?;
                    let r = rows("freeness", [("predicted_free", rep.predicted_free.to_string()), ("observed_free", rep.observed_free.to_string()), ("cycles_found", rep.cycles_found.to_string())]);
                    emit(&out, &format::write_ledger(&r))?;
                    if rep.consistent() {
                        Ok(())
                    } else {
                        Err(Fail::No("predicted cycle-free but a cycle was found".into()))
                    }
                }
                ExtremalKind::Lowerbound => {
                    let seed = seed.ok_or_else(|| Fail::Usage("lowerbound requires --seed".into()))?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let (h, rep) = extremal::lower_bound_graph(k, need(l, "l")?, need(n, "n")?, eta, &mut rng)?;
                    emit(&out, &format::write_graph(&h))?;
                    let r = rows("lowerbound", [
                        ("seed", seed.to_string()),
                        ("p", rep.p.to_string()),
                        ("min_codegree", rep.min_codegree.to_string()),
                        ("size_condition_holds", rep.size_condition_holds.to_string()),
                        ("degree_condition_holds", rep.degree_condition_holds.to_string()),
                    ]);
                    emit_opt(&ledger, &format::write_ledger(&r))
                }
                ExtremalKind::EulerCex => {
                    let cex = extremal::euler_counterexample(k, need(m, "m")?)?;
                    emit(&out, &format::write_graph(&cex.graph))?;
                    let r = rows("euler_cex", [
                        ("special_edge", join(cex.special_edge.iter().copied())),
                        ("degrees_divisible", cex.degrees_divisible().to_string()),
                        ("codegree_bound_holds", cex.codegree_bound_holds()?.to_string()),
                        ("special_edge_in_cycle", cex.special_edge_in_cycle().to_string()),
                    ]);
                    emit_opt(&ledger, &format::write_ledger(&r))
                }
            }
        }
        Cmd::Verify { graph, cert } => {
            let h = load_graph(&graph)?;
            let c = with_path(&cert, format::read_certificate(&read_text(&cert)?))?;
            let rep = solver::verify(&h, &c);
            if rep.ok() {
                println!("ok: {} pieces", c.pieces.len());
                return Ok(());
            }
            for (idx, msg) in &rep.failures {
                match idx {
                    Some(i) => eprintln!("piece {i}: {msg}"),
                    None => eprintln!("certificate: {msg}"),
                }
            }
            Err(Fail::No(match rep.first_bad_piece() {
                Some(i) => format!("verification failed at piece {i}"),
                None => "verification failed".into(),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::No(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Failure(m)) => {
            eprintln!("failure: {m}");
            ExitCode::from(3)
        }
    }
}
