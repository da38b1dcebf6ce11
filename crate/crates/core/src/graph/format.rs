//! Plain-text graph format: `p <n>` followed by `e <i> <j>` lines, 1-based,
//! with `#` comments.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write;

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let nums: Vec<usize> = fields
            .map(|f| f.parse::<usize>().map_err(|_| err(&format!("bad integer `{f}`"))))
            .collect::<Result<_>>()?;
        match tag {
            "p" => {
                if n.is_some() {
                    return Err(err("duplicate `p` line"));
                }
                if nums.len() != 1 {
                    return Err(err("expected `p <n>`"));
                }
                n = Some(nums[0]);
            }
            "e" => {
                let n = n.ok_or_else(|| err("edge before `p` line"))?;
                if nums.len() != 2 {
                    return Err(err("expected `e <i> <j>`"));
                }
                let (a, b) = (nums[0], nums[1]);
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(err(&format!("vertex out of range 1..{n}")));
                }
                if a == b {
                    return Err(err("loop edge"));
                }
                edges.push((a - 1, b - 1));
            }
            other => return Err(err(&format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing `p` line".into() })?;
    Graph::from_edges(n, &edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(label) = g.label() {
        let _ = writeln!(out, "# {label}");
    }
    let _ = writeln!(out, "p {}", g.n());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {} {}", a + 1, b + 1);
    }
    out
}
