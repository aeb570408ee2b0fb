//! Plain-text formats for graphs, decompositions, certificates and ledgers.
//!
//! Every writer starts with a `v1` token. Readers accept the unversioned
//! graph header too, skip blank and `#` lines, and report 1-based line numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{KGraph, Vertex};
use crate::solver::{CertKind, Certificate, Piece};
use crate::tourtrail::{Residual, TourTrailDecomposition};
use crate::walks::Walk;

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(Vertex::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

fn strip_version<'a>(toks: &'a [&'a str]) -> &'a [&'a str] {
    match toks.first() {
        Some(&"v1") => &toks[1..],
        _ => toks,
    }
}

/// `v1 kgraph k n`, then `e` lines. When V(H) is not 0..n, `v` lines list it.
pub fn write_graph(h: &KGraph) -> String {
    let n = h.vertices().iter().next_back().map_or(0, |&v| v as usize + 1);
    let mut s = format!("v1 kgraph {} {}\n", h.k(), n);
    if h.vertex_count() != n {
        for v in h.vertices() {
            let _ = writeln!(s, "v {v}");
        }
    }
    for e in h.edges() {
        let _ = writeln!(s, "e {}", join(e));
    }
    s
}

pub fn read_graph(text: &str) -> Result<KGraph> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head = strip_version(&head);
    if head.len() != 3 || head[0] != "kgraph" {
        return Err(parse_err(ln, "expected `kgraph <k> <n>`"));
    }
    let (k, n): (usize, usize) = (num(ln, head[1])?, num(ln, head[2])?);
    let mut g = KGraph::empty(k).map_err(|e| parse_err(ln, e.to_string()))?;
    let mut listed = Vec::new();
    let mut edges = Vec::new();
    for (ln, toks) in it {
        match toks[0] {
            "v" if toks.len() == 2 => listed.push((ln, num::<Vertex>(ln, toks[1])?)),
            "e" => edges.push((ln, toks[1..].iter().map(|t| num::<Vertex>(ln, t)).collect::<Result<Vec<_>>>()?)),
            other => return Err(parse_err(ln, format!("unexpected line tag `{other}`"))),
        }
    }
    let check = |ln: usize, v: Vertex| if (v as usize) < n { Ok(()) } else { Err(parse_err(ln, format!("vertex {v} not below n = {n}"))) };
    if listed.is_empty() {
        for v in 0..n as Vertex {
            g.add_vertex(v);
        }
    }
    for (ln, v) in listed {
        check(ln, v)?;
        g.add_vertex(v);
    }
    for (ln, e) in edges {
        for &v in &e {
            check(ln, v)?;
        }
        g.add_edge(&e).map_err(|err| parse_err(ln, err.to_string()))?;
    }
    Ok(g)
}

fn walk_line(w: &Walk) -> String {
    format!("{} {}", if w.is_tour() { "wt" } else { "w" }, join(w.seq()))
}

fn read_walk(ln: usize, toks: &[&str], k: usize) -> Result<Option<Walk>> {
    let tour = match toks[0] {
        "w" => false,
        "wt" => true,
        _ => return Ok(None),
    };
    let seq = toks[1..].iter().map(|t| num(ln, t)).collect::<Result<Vec<Vertex>>>()?;
    Walk::new(k, seq, tour).map(Some).map_err(|e| parse_err(ln, e.to_string()))
}

/// `v1 ttd k count`, then one `w` (trail) or `wt` (tour) line per walk.
pub fn write_decomposition(t: &TourTrailDecomposition) -> String {
    let mut s = format!("v1 ttd {} {}\n", t.k(), t.walks.len());
    for w in &t.walks {
        s.push_str(&walk_line(w));
        s.push('\n');
    }
    s
}

pub fn read_decomposition(text: &str) -> Result<TourTrailDecomposition> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head = strip_version(&head);
    if head.len() != 3 || head[0] != "ttd" {
        return Err(parse_err(ln, "expected `ttd <k> <count>`"));
    }
    let (k, count): (usize, usize) = (num(ln, head[1])?, num(ln, head[2])?);
    let mut walks = Vec::with_capacity(count);
    let mut last = ln;
    for (ln, toks) in it {
        last = ln;
        match read_walk(ln, &toks, k)? {
            Some(w) => walks.push(w),
            None if toks[0] == "r" => {}
            None => return Err(parse_err(ln, format!("unexpected line tag `{}`", toks[0]))),
        }
    }
    if walks.len() != count {
        return Err(parse_err(last, format!("header announces {count} walks, found {}", walks.len())));
    }
    TourTrailDecomposition::from_walks(k, walks).map_err(|e| parse_err(last, e.to_string()))
}

/// One `r t_1 … t_{k-1}` line per tuple.
pub fn write_residual(r: &Residual) -> String {
    r.tuples().iter().map(|t| format!("r {}\n", join(t))).collect()
}

/// `v1 cert <kind> <count> <k>`, then walk lines, or for F-copies the
/// pattern as `pv`/`pe` lines followed by `m a:b …` maps. Readers skip
/// trailing `r` residual lines.
pub fn write_certificate(c: &Certificate, k: usize) -> String {
    let mut s = format!("v1 cert {} {} {}\n", c.kind.tag(), c.pieces.len(), k);
    if let Some(f) = &c.pattern {
        for v in f.vertices() {
            let _ = writeln!(s, "pv {v}");
        }
        for e in f.edges() {
            let _ = writeln!(s, "pe {}", join(e));
        }
    }
    for p in &c.pieces {
        match p {
            Piece::Walk(w) => s.push_str(&walk_line(w)),
            Piece::Map(m) => {
                s.push('m');
                for (a, b) in m {
                    let _ = write!(s, " {a}:{b}");
                }
            }
        }
        s.push('\n');
    }
    s
}

pub fn read_certificate(text: &str) -> Result<Certificate> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head = strip_version(&head);
    if head.len() != 4 || head[0] != "cert" {
        return Err(parse_err(ln, "expected `cert <kind> <count> <k>`"));
    }
    let kind = CertKind::parse(head[1]).ok_or_else(|| parse_err(ln, format!("unknown certificate kind `{}`", head[1])))?;
    let (count, k): (usize, usize) = (num(ln, head[2])?, num(ln, head[3])?);
    let mut pieces = Vec::with_capacity(count);
    let (mut pv, mut pe) = (Vec::new(), Vec::new());
    let mut last = ln;
    for (ln, toks) in it {
        last = ln;
        if let Some(w) = read_walk(ln, &toks, k)? {
            pieces.push(Piece::Walk(w));
            continue;
        }
        match toks[0] {
            "pv" if toks.len() == 2 => pv.push(num::<Vertex>(ln, toks[1])?),
            "pe" => pe.push((ln, toks[1..].iter().map(|t| num(ln, t)).collect::<Result<Vec<Vertex>>>()?)),
            "r" => {}
            "m" => {
                let mut m = BTreeMap::new();
                for t in &toks[1..] {
                    let (a, b) = t.split_once(':').ok_or_else(|| parse_err(ln, format!("expected `a:b`, found `{t}`")))?;
                    m.insert(num(ln, a)?, num(ln, b)?);
                }
                pieces.push(Piece::Map(m));
            }
            other => return Err(parse_err(ln, format!("unexpected line tag `{other}`"))),
        }
    }
    if pieces.len() != count {
        return Err(parse_err(last, format!("header announces {count} pieces, found {}", pieces.len())));
    }
    let pattern = if pv.is_empty() && pe.is_empty() {
        None
    } else {
        let mut f = KGraph::empty(k).map_err(|e| parse_err(ln, e.to_string()))?;
        for v in pv {
            f.add_vertex(v);
        }
        for (ln, e) in pe {
            f.insert_edge(&e).map_err(|err| parse_err(ln, err.to_string()))?;
        }
        Some(f)
    };
    Ok(Certificate { kind, pieces, pattern })
}

/// Tab-separated `stage key value` rows under a `v1 ledger` line.
pub fn write_ledger<S: AsRef<str>>(rows: &[(S, S, S)]) -> String {
    let mut s = String::from("v1\tledger\n");
    for (a, b, c) in rows {
        let _ = writeln!(s, "{}\t{}\t{}", a.as_ref(), b.as_ref(), c.as_ref());
    }
    s
}

pub fn read_ledger(text: &str) -> Result<Vec<(String, String, String)>> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if i == 0 && l == "v1\tledger" || l.is_empty() {
            continue;
        }
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 3 {
            return Err(parse_err(i + 1, "expected three tab-separated fields"));
        }
        out.push((f[0].to_string(), f[1].to_string(), f[2].to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_graph, tight_cycle_graph};
    use crate::tourtrail::trivial_decomposition;

    #[test]
    fn graph_text_is_sorted() {
        let g = make_graph(3, 0..5, [[3, 1, 0], [4, 2, 1]]).unwrap();
        assert_eq!(write_graph(&g), "v1 kgraph 3 5\ne 0 1 3\ne 1 2 4\n");
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn bare_header_and_comments() {
        let g = read_graph("# demo\nkgraph 3 4\n\ne 0 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn sparse_labels_round_trip() {
        let g = make_graph(3, [5, 9, 40], [[5, 9, 40]]).unwrap();
        let text = write_graph(&g);
        assert!(text.contains("v 40"));
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = read_graph("v1 kgraph 3 4\ne 0 1 2\ne 0 1 9\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = read_graph("v1 kgraph 3 4\nx 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(matches!(read_graph(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn decomposition_round_trip() {
        let g = tight_cycle_graph(7, 3).unwrap();
        let t = trivial_decomposition(&g, None).unwrap();
        let back = read_decomposition(&write_decomposition(&t)).unwrap();
        assert_eq!(back.walks, t.walks);
        assert_eq!(back.host, g);
    }

    #[test]
    fn certificate_round_trip() {
        let c = Certificate::walks(CertKind::Cycles(7), vec![Walk::cycle(3, &[0, 1, 2, 3, 4, 5, 6]).unwrap()]);
        let text = write_certificate(&c, 3);
        assert!(text.starts_with("v1 cert cycles:7 1 3\nwt 0 1 2 3 4 5 6 0 1\n"));
        assert_eq!(read_certificate(&text).unwrap(), c);
        let f = tight_cycle_graph(4, 3).unwrap();
        let m: BTreeMap<Vertex, Vertex> = (0..4).map(|v| (v, v + 10)).collect();
        let c = Certificate { kind: CertKind::FCopies, pieces: vec![Piece::Map(m)], pattern: Some(f) };
        assert_eq!(read_certificate(&write_certificate(&c, 3)).unwrap(), c);
    }

    #[test]
    fn ledger_round_trip() {
        let rows = vec![("balance", "edges", "28")];
        let text = write_ledger(&rows);
        assert_eq!(text, "v1\tledger\nbalance\tedges\t28\n");
        assert_eq!(read_ledger(&text).unwrap(), vec![("balance".into(), "edges".into(), "28".into())]);
    }
}
