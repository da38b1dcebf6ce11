use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `C_n(k_1, ..., k_r)`: the n-cycle plus chords at circular distances `k_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantSpec {
    pub n: usize,
    pub chords: Vec<usize>,
}

impl CirculantSpec {
    pub fn new(n: usize, chords: Vec<usize>) -> Result<CirculantSpec> {
        let spec = CirculantSpec { n, chords };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Construction(format!("circulant order {} < 3", self.n)));
        }
        for w in self.chords.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Construction("chords must be strictly increasing".into()));
            }
        }
        for &k in &self.chords {
            if k <= 1 || k > self.n / 2 {
                return Err(Error::Construction(format!(
                    "chord {k} outside (1, {}]",
                    self.n / 2
                )));
            }
        }
        Ok(())
    }

    /// The connection set including the implicit cycle offset 1.
    pub fn offsets(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.chords.iter().copied()).collect()
    }
}

/// A circulant plus extra chords leaving every other vertex.
///
/// Offsets are anchored at the vertices with odd 1-based label (1, 3, 5, ...)
/// and wrap modulo `n`: vertex `i` gains the edge `{i, i + l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemicirculantSpec {
    pub base: CirculantSpec,
    pub plus: Vec<usize>,
}

impl SemicirculantSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !self.base.n.is_multiple_of(2) {
            return Err(Error::Construction("semicirculant needs an even order".into()));
        }
        let mut seen = self.plus.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.plus.len() {
            return Err(Error::Construction("repeated plus offset".into()));
        }
        for &l in &self.plus {
            if l <= 1 || l >= self.base.n {
                return Err(Error::Construction(format!(
                    "plus offset {l} outside (1, {})",
                    self.base.n
                )));
            }
        }
        Ok(())
    }
}

pub fn build_circulant(spec: &CirculantSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n;
    let mut g = Graph::edgeless(n);
    for v in 0..n {
        for k in spec.offsets() {
            g.set_edge(v, (v + k) % n);
        }
    }
    Ok(g)
}

pub fn build_semicirculant(spec: &SemicirculantSpec) -> Result<Graph> {
    spec.validate()?;
    let mut g = build_circulant(&spec.base)?;
    let n = spec.base.n;
    for v in (0..n).step_by(2) {
        for &l in &spec.plus {
            g.set_edge(v, (v + l) % n);
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    build_circulant(&CirculantSpec::new(n, vec![])?)
}

pub fn complete(n: usize) -> Graph {
    complement(&Graph::edgeless(n))
}

pub fn edgeless(n: usize) -> Graph {
    Graph::edgeless(n)
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::edgeless(n);
    for v in 1..n {
        g.set_edge(v - 1, v);
    }
    g
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut c = Graph::edgeless(n);
    for a in 0..n {
        for b in a + 1..n {
            if !g.adjacent(a, b) {
                c.set_edge(a, b);
            }
        }
    }
    c
}

/// `m` disjoint copies; copy `c` of vertex `v` becomes `c * n + v`.
pub fn disjoint_copies(g: &Graph, m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::Construction("need at least one copy".into()));
    }
    let n = g.n();
    let mut out = Graph::edgeless(n * m);
    for c in 0..m {
        for (a, b) in g.edges() {
            out.set_edge(c * n + a, c * n + b);
        }
    }
    Ok(out)
}

/// Vertex `(a, b)` is `a * h.n() + b`; adjacent iff both coordinates are.
pub fn direct_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.n(), h.n());
    let mut out = Graph::edgeless(ng * nh);
    for (a1, a2) in g.edges() {
        for (b1, b2) in h.edges() {
            out.set_edge(a1 * nh + b1, a2 * nh + b2);
            out.set_edge(a1 * nh + b2, a2 * nh + b1);
        }
    }
    out
}

/// Vertex `(a, b)` is `a * h.n() + b`; adjacent iff one coordinate agrees
/// and the other is adjacent.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.n(), h.n());
    let mut out = Graph::edgeless(ng * nh);
    for a in 0..ng {
        for (b1, b2) in h.edges() {
            out.set_edge(a * nh + b1, a * nh + b2);
        }
    }
    for (a1, a2) in g.edges() {
        for b in 0..nh {
            out.set_edge(a1 * nh + b, a2 * nh + b);
        }
    }
    out
}

/// One vertex per edge of `g`, numbered in lexicographic edge order.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::Construction("line graph of an edgeless graph".into()));
    }
    let m = edges.len();
    let mut out = Graph::edgeless(m);
    for x in 0..m {
        for y in x + 1..m {
            let (a, b) = edges[x];
            let (c, d) = edges[y];
            if a == c || a == d || b == c || b == d {
                out.set_edge(x, y);
            }
        }
    }
    Ok(out)
}

/// Vertices adjacent iff at distance exactly `k` in `g`.
pub fn distance_k_graph(g: &Graph, k: u32) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Construction("distance must be positive".into()));
    }
    let d = g.distances();
    if d.diameter().is_none() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut out = Graph::edgeless(n);
    for a in 0..n {
        for b in a + 1..n {
            if d.get(a, b) == k {
                out.set_edge(a, b);
            }
        }
    }
    Ok(out)
}
