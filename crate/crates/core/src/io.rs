//! Text formats and CSV output.
//!
//! * Graphs: `n m`, then `m` lines `i j` (1-based), then optionally a line
//!   `positions` followed by `n` lines `x y`.
//! * Selections: `K gamma mode k` (`k` is `-` in box mode), a line of
//!   relaxed weights and a line of 0/1 flags.
//! * Schedules: `n m`, then `m` lines `t i j` (1-based nodes).
//!
//! Every file is written to a temporary sibling and renamed into place, so
//! readers never see partial output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::dda::Trajectory;
use crate::design::{ConstraintMode, SelectionResult};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::protocols::TraceRow;

/// Formats like C's `%.12g`.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `contents` to `path` through a temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let name = path.file_name().ok_or_else(|| Error::InvalidArgument(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

fn parse_f64(tok: Option<&str>, line: usize, what: &str) -> Result<f64> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

fn parse_node(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let v = parse_usize(tok, line, "node index")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("node {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edges().len());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.i + 1, e.j + 1);
    }
    if let Some(pos) = g.positions() {
        s.push_str("positions\n");
        for p in pos {
            let _ = writeln!(s, "{} {}", fmt_g12(p[0]), fmt_g12(p[1]));
        }
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = numbered_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let mut tok = header.split_whitespace();
    let n = parse_usize(tok.next(), ln, "node count")?;
    let m = parse_usize(tok.next(), ln, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, "fewer edges than announced"))?;
        let mut tok = l.split_whitespace();
        let a = parse_node(tok.next(), ln, n)?;
        let b = parse_node(tok.next(), ln, n)?;
        edges.push(Edge::new(a, b).map_err(|e| parse_err(ln, e.to_string()))?);
    }
    let g = Graph::new(n, edges)?;
    match lines.next() {
        None => Ok(g),
        Some((_, "positions")) => {
            let mut pos = Vec::with_capacity(n);
            for _ in 0..n {
                let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, "fewer positions than nodes"))?;
                let mut tok = l.split_whitespace();
                pos.push([parse_f64(tok.next(), ln, "x")?, parse_f64(tok.next(), ln, "y")?]);
            }
            if let Some((ln, _)) = lines.next() {
                return Err(parse_err(ln, "trailing content"));
            }
            g.with_positions(pos)
        }
        Some((ln, _)) => Err(parse_err(ln, "expected end of file or 'positions'")),
    }
}

pub fn selection_to_string(r: &SelectionResult, gamma: f64, mode: ConstraintMode) -> String {
    let k = match mode {
        ConstraintMode::Box => "-".to_string(),
        ConstraintMode::CappedSimplex { k } => k.to_string(),
    };
    let relaxed: Vec<String> = r.w_relaxed.iter().map(|&w| fmt_g12(w)).collect();
    let binary: Vec<&str> = r.w_binary.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("{} {} {} {}\n{}\n{}\n", r.w_relaxed.len(), fmt_g12(gamma), mode.label(), k, relaxed.join(" "), binary.join(" "))
}

/// Parsed selection file.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionFile {
    pub gamma: f64,
    pub mode: ConstraintMode,
    pub w_relaxed: Vec<f64>,
    pub w_binary: Vec<bool>,
}

pub fn parse_selection(text: &str) -> Result<SelectionFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty selection file"))?;
    let mut tok = header.split_whitespace();
    let kk = parse_usize(tok.next(), ln, "K")?;
    let gamma = parse_f64(tok.next(), ln, "gamma")?;
    let mode = match (tok.next(), tok.next()) {
        (Some("C1"), _) => ConstraintMode::Box,
        (Some("C2"), k) => ConstraintMode::CappedSimplex { k: parse_usize(k, ln, "k")? },
        _ => return Err(parse_err(ln, "mode must be C1 or C2")),
    };
    let (ln, relaxed) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing relaxed weights"))?;
    let w_relaxed = relaxed.split_whitespace().map(|t| parse_f64(Some(t), ln, "weight")).collect::<Result<Vec<_>>>()?;
    let (ln2, binary) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing binary weights"))?;
    let w_binary = binary
        .split_whitespace()
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(parse_err(ln2, "binary weights must be 0 or 1")),
        })
        .collect::<Result<Vec<_>>>()?;
    if w_relaxed.len() != kk || w_binary.len() != kk {
        return Err(parse_err(ln2, format!("expected {kk} weights per line")));
    }
    Ok(SelectionFile { gamma, mode, w_relaxed, w_binary })
}

pub fn schedule_to_string(n: usize, additions: &[(usize, Edge)]) -> String {
    let mut s = format!("{} {}\n", n, additions.len());
    for (t, e) in additions {
        let _ = writeln!(s, "{} {} {}", t, e.i + 1, e.j + 1);
    }
    s
}

pub fn parse_schedule(text: &str) -> Result<(usize, Vec<(usize, Edge)>)> {
    let mut lines = numbered_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty schedule file"))?;
    let mut tok = header.split_whitespace();
    let n = parse_usize(tok.next(), ln, "node count")?;
    let m = parse_usize(tok.next(), ln, "addition count")?;
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, "fewer additions than announced"))?;
        let mut tok = l.split_whitespace();
        let t = parse_usize(tok.next(), ln, "time")?;
        let a = parse_node(tok.next(), ln, n)?;
        let b = parse_node(tok.next(), ln, n)?;
        out.push((t, Edge::new(a, b).map_err(|e| parse_err(ln, e.to_string()))?));
    }
    Ok((n, out))
}

pub const TRAJECTORY_HEADER: &str = "t,max_regret,sigma2_Pt,lambda_n1_Lt,edges_added_cumulative";

pub fn trajectory_csv(tr: &Trajectory) -> String {
    let mut s = format!("{TRAJECTORY_HEADER}\n");
    for c in &tr.checkpoints {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            c.t,
            fmt_g12(c.max_regret),
            fmt_g12(c.sigma2),
            fmt_g12(c.lambda_n1),
            c.edges_added
        );
    }
    s
}

pub const THEORY_HEADER: &str = "delta_star,beta_star,net_bound,thm2_bound_at_T,prop3_scale";
pub const THEORY_CHECKPOINT_HEADER: &str = "t,delta_star_t,thm2_bound,empirical_regret";

/// Summary row of the theory report.
pub fn theory_csv(delta_star: usize, beta_star: f64, net: f64, regret_bound: f64, time_bound: f64) -> String {
    format!(
        "{THEORY_HEADER}\n{},{},{},{},{}\n",
        delta_star,
        fmt_g12(beta_star),
        fmt_g12(net),
        fmt_g12(regret_bound),
        fmt_g12(time_bound)
    )
}

/// Per-checkpoint rows `(t, delta*(t), bound, empirical regret)`.
pub fn theory_checkpoints_csv(rows: &[(usize, usize, f64, f64)]) -> String {
    let mut s = format!("{THEORY_CHECKPOINT_HEADER}\n");
    for &(t, d, b, r) in rows {
        let _ = writeln!(s, "{},{},{},{}", t, d, fmt_g12(b), fmt_g12(r));
    }
    s
}

pub const SWEEP_HEADER: &str = "axis,regret_mean,regret_stderr,thm2_bound,delta_star,edges_added,cost_total";

pub const TRACE_HEADER: &str = "round,agent,quantity,value";

pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut s = format!("{TRACE_HEADER}\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.round, r.agent, r.quantity, fmt_g12(r.value));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_formatting() {
        assert_eq!(fmt_g12(0.0), "0");
        assert_eq!(fmt_g12(1.0), "1");
        assert_eq!(fmt_g12(0.5), "0.5");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(123456.789), "123456.789");
        assert_eq!(fmt_g12(1e-5), "1e-05");
        assert_eq!(fmt_g12(2.5e13), "2.5e+13");
        assert_eq!(fmt_g12(-0.25), "-0.25");
        assert_eq!(fmt_g12(999999999999.9), "1e+12");
    }

    #[test]
    fn graph_roundtrip() {
        let g = Graph::path(3).with_positions(vec![[0.0, 0.5], [0.25, 1.0], [1.0, 0.125]]).unwrap();
        let text = graph_to_string(&g);
        assert!(text.starts_with("3 2\n1 2\n2 3\npositions\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph("3 1\n1 3\n").unwrap().edges(), &[Edge { i: 0, j: 2 }]);
        assert!(parse_graph("3 1\n1 4\n").is_err());
        assert!(parse_graph("3 2\n1 2\n").is_err());
    }

    #[test]
    fn schedule_roundtrip() {
        let adds = vec![(1, Edge { i: 0, j: 2 }), (6, Edge { i: 1, j: 3 })];
        let text = schedule_to_string(4, &adds);
        assert_eq!(text, "4 2\n1 1 3\n6 2 4\n");
        assert_eq!(parse_schedule(&text).unwrap(), (4, adds));
    }

    #[test]
    fn selection_roundtrip() {
        let r = SelectionResult {
            w_relaxed: vec![0.25, 1.0],
            w_binary: vec![false, true],
            objective_trace: vec![],
            best_iteration: 0,
            selected_edges: vec![],
            best_objective: 0.0,
            binary_objective: 0.0,
        };
        let text = selection_to_string(&r, 0.01, ConstraintMode::Box);
        assert_eq!(text, "2 0.01 C1 -\n0.25 1\n0 1\n");
        let f = parse_selection(&text).unwrap();
        assert_eq!(f.w_relaxed, r.w_relaxed);
        assert_eq!(f.w_binary, r.w_binary);
        let text = selection_to_string(&r, 0.0, ConstraintMode::CappedSimplex { k: 1 });
        assert_eq!(parse_selection(&text).unwrap().mode, ConstraintMode::CappedSimplex { k: 1 });
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/out.csv");
        write_atomic(&p, "a\n").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "a\n");
        assert_eq!(fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }
}
