//! Replayable proof logs and their independent checker.
//!
//! The checker recomputes every quantity it needs (Floyd–Warshall
//! distances, common-neighbour counts, automorphism checks) from the
//! adjacency matrix alone and shares no code with the search.

use crate::error::{Error, Result};
use crate::graph::{read_graph, write_graph, Graph};
use crate::perm::Permutation;
use std::f64::consts::PI;
use std::fmt::{self, Write};

/// One lemma application. Vertex fields are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub enum ProofStep {
    /// No 4-cycle: every adjacent column pair commutes.
    QuadrangleFree,
    /// Every edge lies in exactly one triangle: every adjacent column pair commutes.
    OneCommonNeighbour,
    /// `j, l, q` is a triangle whose pairs each have exactly one common
    /// neighbour, and so is every edge with a single common neighbour.
    OneCommonNeighbourGen { j: usize, l: usize, q: usize },
    /// `l` is the only vertex at distance `m = d(j, l)` from `l`... i.e. `P0 = {j}`.
    UniqueAtDistance { j: usize, l: usize, m: u32 },
    /// Right lemma with `{l, q}` commuting: only `survivors` remain possible.
    ChooseQRight { j: usize, l: usize, q: usize, survivors: Vec<usize> },
    /// Middle lemma: `l` is the unique vertex with the distance pattern to `j, p, q`.
    ChooseQMiddle { j: usize, l: usize, p: usize, q: usize },
    /// `|CN(j, l)| ≠ |CN(l, p)|`.
    CnMismatch { j: usize, l: usize, p: usize },
    /// `d(p, q) ≠ d(j, q)` with `{l, q}` commuting.
    MonomialZero { j: usize, l: usize, p: usize, q: usize },
    /// Every `p ≠ j` with `d(p, l) = d(j, l)` is killed, so `{j, l}` commutes.
    AdjCommuteClose { j: usize, l: usize },
    /// An automorphism carries a commuting pair onto another.
    AutTransfer { from: (usize, usize), to: (usize, usize), perm: Permutation },
    /// Circulant with injective f: the whole algebra is commutative.
    InjectiveF { n: usize, chords: Vec<usize>, values: Vec<f64> },
    /// Closing claim: all column pairs commute.
    AllPairsCommute,
}

impl ProofStep {
    pub fn keyword(&self) -> &'static str {
        match self {
            ProofStep::QuadrangleFree => "quadrangle-free",
            ProofStep::OneCommonNeighbour => "one-common-neighbour",
            ProofStep::OneCommonNeighbourGen { .. } => "one-common-neighbour-gen",
            ProofStep::UniqueAtDistance { .. } => "unique-at-distance",
            ProofStep::ChooseQRight { .. } => "choose-q-right",
            ProofStep::ChooseQMiddle { .. } => "choose-q-middle",
            ProofStep::CnMismatch { .. } => "cn-mismatch",
            ProofStep::MonomialZero { .. } => "monomial-zero",
            ProofStep::AdjCommuteClose { .. } => "adj-commute-close",
            ProofStep::AutTransfer { .. } => "aut-transfer",
            ProofStep::InjectiveF { .. } => "injective-f",
            ProofStep::AllPairsCommute => "all-pairs-commute",
        }
    }
}

fn set1(vs: &[usize]) -> String {
    let body: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", body.join(","))
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.keyword())?;
        match self {
            ProofStep::QuadrangleFree | ProofStep::OneCommonNeighbour | ProofStep::AllPairsCommute => Ok(()),
            ProofStep::OneCommonNeighbourGen { j, l, q } => write!(f, " j={} l={} q={}", j + 1, l + 1, q + 1),
            ProofStep::UniqueAtDistance { j, l, m } => write!(f, " j={} l={} m={m}", j + 1, l + 1),
            ProofStep::ChooseQRight { j, l, q, survivors } => {
                write!(f, " j={} l={} q={} P={}", j + 1, l + 1, q + 1, set1(survivors))
            }
            ProofStep::ChooseQMiddle { j, l, p, q } => {
                write!(f, " j={} l={} p={} q={}", j + 1, l + 1, p + 1, q + 1)
            }
            ProofStep::CnMismatch { j, l, p } => write!(f, " j={} l={} p={}", j + 1, l + 1, p + 1),
            ProofStep::MonomialZero { j, l, p, q } => {
                write!(f, " j={} l={} p={} q={}", j + 1, l + 1, p + 1, q + 1)
            }
            ProofStep::AdjCommuteClose { j, l } => write!(f, " j={} l={}", j + 1, l + 1),
            ProofStep::AutTransfer { from, to, perm } => write!(
                f,
                " from={},{} to={},{} perm={perm}",
                from.0 + 1,
                from.1 + 1,
                to.0 + 1,
                to.1 + 1
            ),
            ProofStep::InjectiveF { n, chords, values } => {
                let vals: Vec<String> = values.iter().map(|x| format!("{x}")).collect();
                let ch: Vec<String> = chords.iter().map(|c| c.to_string()).collect();
                write!(f, " n={n} chords={{{}}} values={}", ch.join(","), vals.join(","))
            }
        }
    }
}

/// A graph together with a proof log that all of its column pairs commute.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    graph: Graph,
    steps: Vec<ProofStep>,
}

impl Certificate {
    pub fn new(graph: Graph, steps: Vec<ProofStep>) -> Certificate {
        Certificate { graph, steps }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }
}

const HEADER: &str = "qsym-certificate 1";

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    out.push_str(&write_graph(&cert.graph));
    for step in &cert.steps {
        let _ = writeln!(out, "step {step}");
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        _ => return Err(Error::Parse { line: 1, msg: format!("expected `{HEADER}`") }),
    }
    let mut graph_text = String::new();
    let mut label = None;
    let mut step_lines = Vec::new();
    for (idx, raw) in lines {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("step ") {
            step_lines.push((idx + 1, rest.trim().to_string()));
        } else if !step_lines.is_empty() && !line.is_empty() {
            return Err(Error::Parse { line: idx + 1, msg: "graph record after steps".into() });
        } else {
            if label.is_none() {
                if let Some(c) = line.strip_prefix('#') {
                    label = Some(c.trim().to_string());
                }
            }
            graph_text.push_str(raw);
            graph_text.push('\n');
        }
    }
    let mut graph = read_graph(&graph_text)?;
    if let Some(l) = label.filter(|l| !l.is_empty()) {
        graph = graph.with_label(l);
    }
    let n = graph.n();
    let steps = step_lines
        .into_iter()
        .map(|(line, s)| parse_step(n, &s).map_err(|msg| Error::Parse { line, msg }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate { graph, steps })
}

fn parse_step(n: usize, text: &str) -> std::result::Result<ProofStep, String> {
    let (kw, rest) = text.split_once(' ').unwrap_or((text, ""));
    let mut fields: Vec<(String, String)> = Vec::new();
    let mut rest = rest.trim();
    while !rest.is_empty() {
        let (key, after) = rest.split_once('=').ok_or_else(|| format!("expected key=value in `{rest}`"))?;
        if key == "perm" {
            fields.push((key.to_string(), after.trim().to_string()));
            break;
        }
        let (val, tail) = after.split_once(' ').unwrap_or((after, ""));
        fields.push((key.trim().to_string(), val.to_string()));
        rest = tail.trim();
    }
    let get = |k: &str| -> std::result::Result<&str, String> {
        fields.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str()).ok_or_else(|| format!("missing field `{k}`"))
    };
    let vertex = |s: &str| -> std::result::Result<usize, String> {
        let v: usize = s.parse().map_err(|_| format!("bad vertex `{s}`"))?;
        if v == 0 || v > n {
            return Err(format!("vertex {v} out of range"));
        }
        Ok(v - 1)
    };
    let vfield = |k: &str| get(k).and_then(vertex);
    let pair = |k: &str| -> std::result::Result<(usize, usize), String> {
        let s = get(k)?;
        let (a, b) = s.split_once(',').ok_or_else(|| format!("bad pair `{s}`"))?;
        Ok((vertex(a)?, vertex(b)?))
    };
    let set = |k: &str| -> std::result::Result<Vec<usize>, String> {
        let s = get(k)?;
        let inner = s.strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(|| format!("bad set `{s}`"))?;
        inner.split(',').filter(|x| !x.is_empty()).map(|x| x.parse::<usize>().map_err(|_| format!("bad entry `{x}`"))).collect()
    };
    let expected_fields = |keys: &[&str]| -> std::result::Result<(), String> {
        if fields.len() != keys.len() || fields.iter().any(|(k, _)| !keys.contains(&k.as_str())) {
            return Err(format!("`{kw}` takes fields {keys:?}"));
        }
        Ok(())
    };
    let step = match kw {
        "quadrangle-free" => {
            expected_fields(&[])?;
            ProofStep::QuadrangleFree
        }
        "one-common-neighbour" => {
            expected_fields(&[])?;
            ProofStep::OneCommonNeighbour
        }
        "all-pairs-commute" => {
            expected_fields(&[])?;
            ProofStep::AllPairsCommute
        }
        "one-common-neighbour-gen" => {
            expected_fields(&["j", "l", "q"])?;
            ProofStep::OneCommonNeighbourGen { j: vfield("j")?, l: vfield("l")?, q: vfield("q")? }
        }
        "unique-at-distance" => {
            expected_fields(&["j", "l", "m"])?;
            let m = get("m")?.parse().map_err(|_| "bad distance".to_string())?;
            ProofStep::UniqueAtDistance { j: vfield("j")?, l: vfield("l")?, m }
        }
        "choose-q-right" => {
            expected_fields(&["j", "l", "q", "P"])?;
            let survivors = set("P")?
                .into_iter()
                .map(|v| if v == 0 || v > n { Err(format!("vertex {v} out of range")) } else { Ok(v - 1) })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            ProofStep::ChooseQRight { j: vfield("j")?, l: vfield("l")?, q: vfield("q")?, survivors }
        }
        "choose-q-middle" => {
            expected_fields(&["j", "l", "p", "q"])?;
            ProofStep::ChooseQMiddle { j: vfield("j")?, l: vfield("l")?, p: vfield("p")?, q: vfield("q")? }
        }
        "cn-mismatch" => {
            expected_fields(&["j", "l", "p"])?;
            ProofStep::CnMismatch { j: vfield("j")?, l: vfield("l")?, p: vfield("p")? }
        }
        "monomial-zero" => {
            expected_fields(&["j", "l", "p", "q"])?;
            ProofStep::MonomialZero { j: vfield("j")?, l: vfield("l")?, p: vfield("p")?, q: vfield("q")? }
        }
        "adj-commute-close" => {
            expected_fields(&["j", "l"])?;
            ProofStep::AdjCommuteClose { j: vfield("j")?, l: vfield("l")? }
        }
        "aut-transfer" => {
            expected_fields(&["from", "to", "perm"])?;
            let perm = Permutation::parse_cycles(n, get("perm")?).map_err(|e| e.to_string())?;
            ProofStep::AutTransfer { from: pair("from")?, to: pair("to")?, perm }
        }
        "injective-f" => {
            expected_fields(&["n", "chords", "values"])?;
            let values = get("values")?
                .split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<f64>().map_err(|_| format!("bad value `{x}`")))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let cn: usize = get("n")?.parse().map_err(|_| "bad n".to_string())?;
            ProofStep::InjectiveF { n: cn, chords: set("chords")?, values }
        }
        other => return Err(format!("unknown step `{other}`")),
    };
    Ok(step)
}

/// Why a certificate was refused; `step` is 1-based, 0 for global problems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Error {
        Error::CertificateRejected { step: r.step, reason: r.reason }
    }
}

struct Checker {
    n: usize,
    adj: Vec<bool>,
    d: Vec<u32>,
    cn: Vec<usize>,
    commute: Vec<bool>,
    killed: Vec<bool>,
}

const INF: u32 = u32::MAX;

impl Checker {
    fn new(g: &Graph) -> Checker {
        let n = g.n();
        let mut adj = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                adj[a * n + b] = g.adjacent(a, b);
            }
        }
        let mut d = vec![INF; n * n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    d[a * n + b] = 0;
                } else if adj[a * n + b] {
                    d[a * n + b] = 1;
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let (x, y) = (d[a * n + k], d[k * n + b]);
                    if x != INF && y != INF && x + y < d[a * n + b] {
                        d[a * n + b] = x + y;
                    }
                }
            }
        }
        let mut cn = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cn[a * n + b] = (0..n).filter(|&c| adj[a * n + c] && adj[b * n + c]).count();
            }
        }
        let mut commute = vec![false; n * n];
        for j in 0..n {
            commute[j * n + j] = true;
        }
        Checker { n, adj, d, cn, commute, killed: vec![false; n * n * n] }
    }

    fn dist(&self, a: usize, b: usize) -> u32 {
        self.d[a * self.n + b]
    }
    fn cn(&self, a: usize, b: usize) -> usize {
        self.cn[a * self.n + b]
    }
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }
    fn commutes(&self, a: usize, b: usize) -> bool {
        self.commute[a * self.n + b]
    }
    fn killed(&self, j: usize, l: usize, p: usize) -> bool {
        self.killed[(j * self.n + l) * self.n + p]
    }
    fn kill(&mut self, j: usize, l: usize, p: usize) {
        self.killed[(j * self.n + l) * self.n + p] = true;
    }
    /// Returns true if the fact is new.
    fn add_commute(&mut self, a: usize, b: usize) -> bool {
        let new = !self.commutes(a, b);
        self.commute[a * self.n + b] = true;
        self.commute[b * self.n + a] = true;
        new
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.adjacent(a, b)).collect()
    }

    fn p0(&self, j: usize, l: usize) -> Vec<usize> {
        let m = self.dist(j, l);
        (0..self.n).filter(|&p| self.dist(p, l) == m).collect()
    }

    fn kill_target_ok(&self, j: usize, l: usize, p: usize) -> std::result::Result<(), String> {
        if p == j {
            return Err("p equals j".into());
        }
        if self.dist(j, l) == INF || self.dist(p, l) != self.dist(j, l) {
            return Err("d(p, l) differs from d(j, l)".into());
        }
        if self.killed(j, l, p) {
            return Err("monomial already known to vanish".into());
        }
        Ok(())
    }

    fn middle_ok(&self, j: usize, l: usize, p: usize, q: usize) -> bool {
        let m = self.dist(j, l);
        if self.dist(j, q) == self.dist(q, p) {
            return false;
        }
        let s = self.dist(q, l);
        let matching: Vec<usize> = (0..self.n)
            .filter(|&t| self.dist(t, j) == m && self.dist(t, p) == m && self.dist(t, q) == s)
            .collect();
        matching == [l]
    }

    fn monomial_ok(&self, j: usize, l: usize, p: usize, q: usize) -> bool {
        self.dist(p, q) != self.dist(j, q) && self.commutes(l, q)
    }

    fn right_fresh(&self, j: usize, l: usize, q: usize) -> Vec<usize> {
        let djq = self.dist(j, q);
        self.p0(j, l)
            .into_iter()
            .filter(|&p| p != j && self.dist(p, q) != djq && !self.killed(j, l, p))
            .collect()
    }

    fn isolated_triangle(&self, i: usize, k: usize) -> Option<usize> {
        if !self.adjacent(i, k) || self.cn(i, k) != 1 {
            return None;
        }
        let q = (0..self.n).find(|&q| self.adjacent(i, q) && self.adjacent(k, q))?;
        (self.cn(i, q) == 1 && self.cn(k, q) == 1).then_some(q)
    }

    fn apply(&mut self, step: &ProofStep, is_last: bool) -> std::result::Result<(), String> {
        let n = self.n;
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < n);
        match step {
            ProofStep::QuadrangleFree | ProofStep::OneCommonNeighbour => {
                let edges = self.edges();
                if matches!(step, ProofStep::QuadrangleFree) {
                    if (0..n).any(|a| (a + 1..n).any(|b| self.cn(a, b) >= 2)) {
                        return Err("graph contains a quadrangle".into());
                    }
                } else if edges.iter().any(|&(a, b)| self.cn(a, b) != 1) {
                    return Err("some edge does not have exactly one common neighbour".into());
                }
                let mut new = false;
                for (a, b) in edges {
                    new |= self.add_commute(a, b);
                }
                if !new {
                    return Err("adds no new fact".into());
                }
            }
            &ProofStep::OneCommonNeighbourGen { j, l, q } => {
                if !in_range(&[j, l, q]) {
                    return Err("vertex out of range".into());
                }
                if self.isolated_triangle(j, l) != Some(q) {
                    return Err("j, l, q is not an isolated triangle".into());
                }
                if self.edges().iter().any(|&(a, b)| self.cn(a, b) == 1 && self.isolated_triangle(a, b).is_none()) {
                    return Err("an edge with one common neighbour is not in an isolated triangle".into());
                }
                if !self.add_commute(j, l) {
                    return Err("adds no new fact".into());
                }
            }
            &ProofStep::UniqueAtDistance { j, l, m } => {
                if !in_range(&[j, l]) {
                    return Err("vertex out of range".into());
                }
                if self.dist(j, l) != m || m == INF {
                    return Err("m is not d(j, l)".into());
                }
                if self.p0(j, l) != [j] {
                    return Err("j is not the only vertex at that distance from l".into());
                }
                if !self.add_commute(j, l) {
                    return Err("adds no new fact".into());
                }
            }
            ProofStep::ChooseQRight { j, l, q, survivors } => {
                let (j, l, q) = (*j, *l, *q);
                if !in_range(&[j, l, q]) || !in_range(survivors) {
                    return Err("vertex out of range".into());
                }
                if q == l || !self.commutes(l, q) {
                    return Err("{l, q} not known to commute".into());
                }
                if self.dist(j, l) == INF {
                    return Err("infinite distance".into());
                }
                let djq = self.dist(j, q);
                let expected: Vec<usize> = self.p0(j, l).into_iter().filter(|&p| self.dist(p, q) == djq).collect();
                let mut given = survivors.clone();
                given.sort_unstable();
                if given != expected {
                    return Err("survivor set does not match the distance pattern".into());
                }
                for q2 in 0..q {
                    if q2 != l && self.commutes(l, q2) && !self.right_fresh(j, l, q2).is_empty() {
                        return Err(format!("smaller usable q = {} not applied first", q2 + 1));
                    }
                }
                let fresh = self.right_fresh(j, l, q);
                if fresh.is_empty() {
                    return Err("adds no new fact".into());
                }
                for p in fresh {
                    self.kill(j, l, p);
                }
            }
            &ProofStep::ChooseQMiddle { j, l, p, q } => {
                if !in_range(&[j, l, p, q]) {
                    return Err("vertex out of range".into());
                }
                self.kill_target_ok(j, l, p)?;
                if !self.middle_ok(j, l, p, q) {
                    return Err("middle-lemma conditions fail for this q".into());
                }
                if let Some(q2) = (0..q).find(|&q2| self.middle_ok(j, l, p, q2)) {
                    return Err(format!("smaller witness q = {} exists", q2 + 1));
                }
                self.kill(j, l, p);
            }
            &ProofStep::CnMismatch { j, l, p } => {
                if !in_range(&[j, l, p]) {
                    return Err("vertex out of range".into());
                }
                self.kill_target_ok(j, l, p)?;
                if self.cn(j, l) == self.cn(l, p) {
                    return Err("common-neighbour counts agree".into());
                }
                if (0..n).any(|q| self.middle_ok(j, l, p, q)) {
                    return Err("middle lemma applies and takes precedence".into());
                }
                self.kill(j, l, p);
            }
            &ProofStep::MonomialZero { j, l, p, q } => {
                if !in_range(&[j, l, p, q]) {
                    return Err("vertex out of range".into());
                }
                self.kill_target_ok(j, l, p)?;
                if !self.monomial_ok(j, l, p, q) {
                    return Err("monomial-lemma premise not established".into());
                }
                if (0..n).any(|q2| self.middle_ok(j, l, p, q2)) || self.cn(j, l) != self.cn(l, p) {
                    return Err("an earlier lemma applies and takes precedence".into());
                }
                if let Some(q2) = (0..q).find(|&q2| self.monomial_ok(j, l, p, q2)) {
                    return Err(format!("smaller witness q = {} exists", q2 + 1));
                }
                self.kill(j, l, p);
            }
            &ProofStep::AdjCommuteClose { j, l } => {
                if !in_range(&[j, l]) {
                    return Err("vertex out of range".into());
                }
                if self.dist(j, l) == INF {
                    return Err("infinite distance".into());
                }
                if let Some(p) = self.p0(j, l).into_iter().find(|&p| p != j && !self.killed(j, l, p)) {
                    return Err(format!("candidate p = {} not eliminated", p + 1));
                }
                if !self.add_commute(j, l) {
                    return Err("adds no new fact".into());
                }
            }
            ProofStep::AutTransfer { from, to, perm } => {
                if !in_range(&[from.0, from.1, to.0, to.1]) || perm.n() != n {
                    return Err("vertex out of range".into());
                }
                if !self.commutes(from.0, from.1) {
                    return Err("source pair not known to commute".into());
                }
                let is_aut = (0..n).all(|a| (0..n).all(|b| self.adjacent(a, b) == self.adjacent(perm.apply(a), perm.apply(b))));
                if !is_aut {
                    return Err("permutation is not an automorphism".into());
                }
                let img = (perm.apply(from.0), perm.apply(from.1));
                if img != *to && (img.1, img.0) != *to {
                    return Err("permutation does not map the source pair onto the target".into());
                }
                if !self.add_commute(to.0, to.1) {
                    return Err("adds no new fact".into());
                }
            }
            ProofStep::InjectiveF { n: cn, chords, values } => {
                if *cn != n || n < 3 || n == 4 {
                    return Err("order not admissible".into());
                }
                if chords.windows(2).any(|w| w[0] >= w[1]) || chords.iter().any(|&k| k <= 1 || k > n / 2) {
                    return Err("invalid chord list".into());
                }
                let conn: Vec<usize> = std::iter::once(1).chain(chords.iter().copied()).collect();
                for a in 0..n {
                    for b in 0..n {
                        let diff = (a + n - b) % n;
                        let circ = diff.min(n - diff);
                        if self.adjacent(a, b) != (a != b && conn.contains(&circ)) {
                            return Err("graph is not this circulant".into());
                        }
                    }
                }
                let recomputed: Vec<f64> = (1..=n / 2)
                    .map(|s| conn.iter().map(|&k| (2.0 * PI * (k * s) as f64 / n as f64).cos()).sum())
                    .collect();
                if recomputed.len() != values.len() || recomputed.iter().zip(values).any(|(a, b)| (a - b).abs() > 1e-9) {
                    return Err("recorded values of f are wrong".into());
                }
                for a in 0..recomputed.len() {
                    for b in a + 1..recomputed.len() {
                        if (recomputed[a] - recomputed[b]).abs() <= 1e-6 {
                            return Err("f is not injective".into());
                        }
                    }
                }
                let mut new = false;
                for a in 0..n {
                    for b in a + 1..n {
                        new |= self.add_commute(a, b);
                    }
                }
                if !new {
                    return Err("adds no new fact".into());
                }
            }
            ProofStep::AllPairsCommute => {
                if !is_last {
                    return Err("closing claim must be the last step".into());
                }
                if let Some(pos) = self.commute.iter().position(|&c| !c) {
                    return Err(format!("pair {{{}, {}}} not shown to commute", pos / n + 1, pos % n + 1));
                }
            }
        }
        Ok(())
    }
}

/// Replays the certificate against `g`; accepts iff every step checks and
/// every column pair commutes at the end.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> std::result::Result<(), Rejection> {
    if cert.graph != *g {
        return Err(Rejection { step: 0, reason: "certificate is about a different graph".into() });
    }
    let mut checker = Checker::new(g);
    let total = cert.steps.len();
    for (idx, step) in cert.steps.iter().enumerate() {
        checker
            .apply(step, idx + 1 == total)
            .map_err(|reason| Rejection { step: idx + 1, reason: format!("{}: {reason}", step.keyword()) })?;
    }
    if let Some(pos) = checker.commute.iter().position(|&c| !c) {
        let n = checker.n;
        return Err(Rejection {
            step: total,
            reason: format!("pair {{{}, {}}} never shown to commute", pos / n + 1, pos % n + 1),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Markdown,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Table {
    Right,
    Middle,
}

fn describe(step: &ProofStep) -> String {
    let v = |x: usize| x + 1;
    match step {
        ProofStep::QuadrangleFree => "no quadrangle, so every adjacent column pair commutes".into(),
        ProofStep::OneCommonNeighbour => {
            "adjacent vertices have exactly one common neighbour, so every adjacent column pair commutes".into()
        }
        ProofStep::OneCommonNeighbourGen { j, l, q } => {
            format!("{}, {}, {} is an isolated triangle: columns {} and {} commute", v(*j), v(*l), v(*q), v(*j), v(*l))
        }
        ProofStep::UniqueAtDistance { j, l, m } => {
            format!("{} is the only vertex at distance {m} from {}: columns {} and {} commute", v(*j), v(*l), v(*j), v(*l))
        }
        ProofStep::CnMismatch { j, l, p } => format!(
            "|CN({}, {})| ≠ |CN({}, {})|: u_{{i{}}} u_{{k{}}} u_{{i{}}} = 0",
            v(*j), v(*l), v(*l), v(*p), v(*j), v(*l), v(*p)
        ),
        ProofStep::MonomialZero { j, l, p, q } => format!(
            "monomial lemma with q = {}: u_{{i{}}} u_{{k{}}} u_{{i{}}} = 0",
            v(*q), v(*j), v(*l), v(*p)
        ),
        ProofStep::AdjCommuteClose { j, l } => {
            format!("all other candidates eliminated: columns {} and {} commute", v(*j), v(*l))
        }
        ProofStep::AutTransfer { from, to, perm } => format!(
            "automorphism {perm} maps {{{}, {}}} to {{{}, {}}}",
            v(from.0), v(from.1), v(to.0), v(to.1)
        ),
        ProofStep::InjectiveF { values, .. } => {
            let vals: Vec<String> = values.iter().map(|x| format!("{x:.2}")).collect();
            format!("circulant with injective f = ({}): no quantum symmetry", vals.join(", "))
        }
        ProofStep::AllPairsCommute => "all column pairs commute; the quantum automorphism group is classical".into(),
        ProofStep::ChooseQRight { .. } | ProofStep::ChooseQMiddle { .. } => step.to_string(),
    }
}

fn row(step: &ProofStep) -> Option<(Table, [String; 4])> {
    match step {
        ProofStep::ChooseQRight { j, l, q, survivors } => {
            Some((Table::Right, [(j + 1).to_string(), (l + 1).to_string(), (q + 1).to_string(), set1(survivors)]))
        }
        ProofStep::ChooseQMiddle { j, l, p, q } => Some((
            Table::Middle,
            [(j + 1).to_string(), (l + 1).to_string(), (p + 1).to_string(), (q + 1).to_string()],
        )),
        _ => None,
    }
}

fn flush(out: &mut String, fmt: RenderFormat, table: Option<Table>, rows: &mut Vec<[String; 4]>) {
    let Some(table) = table else { return };
    if rows.is_empty() {
        return;
    }
    let head = match table {
        Table::Right => ["j", "l", "q", "P"],
        Table::Middle => ["j", "l", "p", "q"],
    };
    match fmt {
        RenderFormat::Markdown => {
            let _ = writeln!(out, "\n| {} |", head.join(" | "));
            let _ = writeln!(out, "|---|---|---|---|");
            for r in rows.iter() {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
            out.push('\n');
        }
        RenderFormat::Latex => {
            let _ = writeln!(out, "\\begin{{tabular}}{{c|c|c|c}}");
            let cells: Vec<String> = head.iter().map(|h| format!("${h}$")).collect();
            let _ = writeln!(out, "{} \\\\ \\hline", cells.join(" & "));
            for r in rows.iter() {
                let cells: Vec<String> = r
                    .iter()
                    .map(|c| if c.starts_with('{') { format!("$\\{{{}\\}}$", &c[1..c.len() - 1]) } else { c.clone() })
                    .collect();
                let _ = writeln!(out, "{} \\\\", cells.join(" & "));
            }
            let _ = writeln!(out, "\\end{{tabular}}\n");
        }
    }
    rows.clear();
}

/// Renders a verified certificate; right-lemma applications become
/// `(j, l, q, P)` tables and middle-lemma applications `(j, l, p, q)` tables.
pub fn render_certificate(cert: &Certificate, fmt: RenderFormat) -> Result<String> {
    verify_certificate(&cert.graph, cert)?;
    let g = &cert.graph;
    let name = g.label().map(str::to_string).unwrap_or_else(|| format!("graph on {} vertices", g.n()));
    let mut out = String::new();
    match fmt {
        RenderFormat::Markdown => {
            let _ = writeln!(out, "# Commutativity certificate: {name}\n");
            let _ = writeln!(out, "{} vertices, {} edges, {} steps.", g.n(), g.edge_count(), cert.steps.len());
        }
        RenderFormat::Latex => {
            let _ = writeln!(out, "% commutativity certificate: {name}");
            let _ = writeln!(out, "% {} vertices, {} edges, {} steps", g.n(), g.edge_count(), cert.steps.len());
        }
    }
    // Closing steps that follow table rows are collected into one line after
    // the table so consecutive rows stay in a single table.
    let mut current: Option<Table> = None;
    let mut rows: Vec<[String; 4]> = Vec::new();
    let mut closed: Vec<(usize, usize)> = Vec::new();
    let line = |out: &mut String, keyword: &str, text: String| match fmt {
        RenderFormat::Markdown => {
            let _ = writeln!(out, "- {keyword}: {text}");
        }
        RenderFormat::Latex => {
            let text = text.replace('|', "\\lvert ").replace('≠', "$\\neq$");
            let _ = writeln!(out, "\\noindent\\texttt{{{keyword}}}: {text}\\\\");
        }
    };
    let flush_all = |out: &mut String, current: &mut Option<Table>, rows: &mut Vec<[String; 4]>, closed: &mut Vec<(usize, usize)>| {
        flush(out, fmt, *current, rows);
        *current = None;
        if !closed.is_empty() {
            let pairs: Vec<String> = closed.iter().map(|(j, l)| format!("{{{}, {}}}", j + 1, l + 1)).collect();
            line(out, "adj-commute-close", format!("all other candidates eliminated, so column pairs {} commute", pairs.join(", ")));
            closed.clear();
        }
    };
    for step in &cert.steps {
        if let Some((table, r)) = row(step) {
            if current != Some(table) {
                flush_all(&mut out, &mut current, &mut rows, &mut closed);
                current = Some(table);
            }
            rows.push(r);
        } else if let (Some(_), ProofStep::AdjCommuteClose { j, l }) = (current, step) {
            closed.push((*j, *l));
        } else {
            flush_all(&mut out, &mut current, &mut rows, &mut closed);
            line(&mut out, step.keyword(), describe(step));
        }
    }
    flush_all(&mut out, &mut current, &mut rows, &mut closed);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{decide, DecideOptions, Verdict};
    use crate::graph::{build_named, complete, cycle};

    fn certificate_for(name: &str) -> Certificate {
        let g = build_named(name).unwrap();
        match decide(&g, &DecideOptions::lemmas_only()).unwrap() {
            Verdict::NoQuantumSymmetry { certificate } => certificate,
            other => panic!("{name}: {other:?}"),
        }
    }

    #[test]
    fn serialization_round_trip() {
        for name in ["C5", "K2xC6", "TruncK4"] {
            let cert = certificate_for(name);
            let text = serialize_certificate(&cert);
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, cert);
            assert_eq!(back.graph().label(), Some(name));
            assert!(verify_certificate(cert.graph(), &back).is_ok());
        }
    }

    #[test]
    fn tampered_middle_witness_rejected() {
        let cert = certificate_for("C5");
        let mut steps = cert.steps().to_vec();
        let idx = steps.iter().position(|s| matches!(s, ProofStep::ChooseQMiddle { .. })).unwrap();
        if let ProofStep::ChooseQMiddle { q, .. } = &mut steps[idx] {
            *q = 1; // vertex 2, the column itself: d(1,2) = d(2,3)
        }
        let bad = Certificate::new(cert.graph().clone(), steps);
        let err = verify_certificate(cert.graph(), &bad).unwrap_err();
        assert_eq!(err.step, idx + 1);
    }

    #[test]
    fn premise_out_of_order_rejected() {
        let cert = certificate_for("C5");
        let mut steps = cert.steps().to_vec();
        let idx = steps.iter().position(|s| matches!(s, ProofStep::ChooseQRight { .. })).unwrap();
        let right = steps.remove(idx);
        steps.insert(0, right);
        let bad = Certificate::new(cert.graph().clone(), steps);
        assert_eq!(verify_certificate(cert.graph(), &bad).unwrap_err().step, 1);
    }

    #[test]
    fn wrong_graph_and_truncation_rejected() {
        let cert = certificate_for("C5");
        assert_eq!(verify_certificate(&complete(5), &cert).unwrap_err().step, 0);
        let mut steps = cert.steps().to_vec();
        steps.pop();
        steps.pop();
        let bad = Certificate::new(cert.graph().clone(), steps);
        assert!(verify_certificate(cert.graph(), &bad).is_err());
    }

    #[test]
    fn render_c5_tables() {
        let cert = certificate_for("C5");
        let md = render_certificate(&cert, RenderFormat::Markdown).unwrap();
        assert!(md.contains("| j | l | p | q |\n|---|---|---|---|\n| 1 | 2 | 3 | 1 |\n| 1 | 5 | 4 | 1 |"), "{md}");
        assert!(md.contains("| j | l | q | P |\n|---|---|---|---|\n| 1 | 3 | 2 | {1} |\n| 1 | 4 | 3 | {1} |"), "{md}");
        let tex = render_certificate(&cert, RenderFormat::Latex).unwrap();
        assert!(tex.contains("1 & 3 & 2 & $\\{1\\}$ \\\\"), "{tex}");
        assert!(tex.contains("1 & 2 & 3 & 1 \\\\"), "{tex}");
    }

    #[test]
    fn render_empty_and_refuse_unverified() {
        let k1 = complete(1);
        let empty = Certificate::new(k1, vec![]);
        let md = render_certificate(&empty, RenderFormat::Markdown).unwrap();
        assert_eq!(md.lines().filter(|l| !l.is_empty()).count(), 2);
        let c5 = cycle(5).unwrap();
        assert!(render_certificate(&Certificate::new(c5, vec![]), RenderFormat::Markdown).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_certificate("p 3\n").is_err());
        assert!(parse_certificate("qsym-certificate 1\np 3\nstep frobnicate\n").is_err());
        assert!(parse_certificate("qsym-certificate 1\np 3\nstep cn-mismatch j=1 l=2\n").is_err());
        assert!(parse_certificate("qsym-certificate 1\np 3\nstep cn-mismatch j=1 l=2 p=4\n").is_err());
        assert!(parse_certificate("qsym-certificate 1\np 3\nstep all-pairs-commute\ne 1 2\n").is_err());
    }
}
