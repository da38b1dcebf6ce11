//! Permutations of `0..n`, printed in 1-based cycle notation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::Construction("image is not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Parses 1-based cycle notation such as `(1 7)(3 9)`; `()` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("{msg} in `{text}`") };
        let mut image: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let body = &rest[1..inner_end];
            let cyc: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("bad vertex")))
                .collect::<Result<_>>()?;
            for &v in &cyc {
                if v == 0 || v > n {
                    return Err(bad("vertex out of range"));
                }
                if moved[v - 1] {
                    return Err(bad("cycles not disjoint"));
                }
                moved[v - 1] = true;
            }
            for w in 0..cyc.len() {
                image[cyc[w] - 1] = cyc[(w + 1) % cyc.len()] - 1;
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        Ok(Permutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { image: other.image.iter().map(|&v| self.image[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.image.iter().enumerate().filter(|(v, w)| v != *w).map(|(v, _)| v).collect()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut v = self.image[start];
            while v != start {
                seen[v] = true;
                cyc.push(v);
                v = self.image[v];
            }
            out.push(cyc);
        }
        out
    }

    pub fn is_automorphism_of(&self, g: &crate::graph::Graph) -> bool {
        self.n() == g.n()
            && (0..g.n()).all(|a| (a + 1..g.n()).all(|b| g.adjacent(a, b) == g.adjacent(self.apply(a), self.apply(b))))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}
