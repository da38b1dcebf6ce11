//! Independent oracles shared by the integration tests. None of these call
//! into the engine or the Groebner code beyond polynomial arithmetic.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use qsym_core::groebner::{letter, letter_indices, Letter, Monomial, NcPoly};
use qsym_core::{Graph, Permutation};
use std::collections::HashMap;

pub const UNREACHABLE: u32 = u32::MAX;

/// Floyd-Warshall over the adjacency predicate.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for a in 0..n {
        d[a][a] = 0;
        for b in 0..n {
            if g.adjacent(a, b) {
                d[a][b] = 1;
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if d[a][k] != UNREACHABLE && d[k][b] != UNREACHABLE && d[a][k] + d[k][b] < d[a][b] {
                    d[a][b] = d[a][k] + d[k][b];
                }
            }
        }
    }
    d
}

/// Value of `p` at the permutation matrix of `sigma`, `u_ij -> [sigma(j) = i]`.
pub fn classical_value(p: &NcPoly, sigma: &Permutation) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let on = m.letters().iter().all(|&x| {
            let (i, j) = letter_indices(x);
            sigma.apply(j) == i
        });
        if on {
            total += c;
        }
    }
    total
}

/// Every word of length exactly `len` over `alphabet`.
pub fn words(alphabet: &[Letter], len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn alphabet(n: usize) -> Vec<Letter> {
    (0..n).flat_map(|i| (0..n).map(move |j| letter(i, j))).collect()
}

/// Row echelon form of the span of `{a g b : deg(a g b) <= d}` computed by
/// plain linear elimination on monomial coordinates.
pub struct TruncatedSpan {
    pivots: HashMap<Monomial, NcPoly>,
    pub degree: usize,
}

impl TruncatedSpan {
    pub fn new(gens: &[NcPoly], n: usize, degree: usize) -> TruncatedSpan {
        let abc = alphabet(n);
        let mut span = TruncatedSpan { pivots: HashMap::new(), degree };
        let mut by_len: Vec<Vec<Vec<Letter>>> = Vec::new();
        for len in 0..=degree {
            by_len.push(words(&abc, len));
        }
        for g in gens {
            let dg = g.degree().unwrap_or(0);
            if dg > degree {
                continue;
            }
            let slack = degree - dg;
            for la in 0..=slack {
                for lb in 0..=slack - la {
                    for a in &by_len[la] {
                        for b in &by_len[lb] {
                            span.insert(g.wrap(a, b));
                        }
                    }
                }
            }
        }
        span
    }

    fn reduce(&self, p: &NcPoly) -> NcPoly {
        let mut p = p.clone();
        let mut rest = NcPoly::zero();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match self.pivots.get(&m) {
                Some(row) => p = p.sub(&row.scale(&c)),
                None => {
                    rest.add_term(m.clone(), c.clone());
                    p = p.sub(&NcPoly::term(m, c));
                }
            }
        }
        rest
    }

    fn insert(&mut self, p: NcPoly) {
        let mut p = p;
        loop {
            let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) else { return };
            match self.pivots.get(&m) {
                Some(row) => p = p.sub(&row.scale(&c)),
                None => {
                    let inv = BigRational::one() / c;
                    self.pivots.insert(m, p.scale(&inv));
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, p: &NcPoly) -> bool {
        assert!(p.degree().unwrap_or(0) <= self.degree, "outside the truncated span");
        self.reduce(p).is_zero()
    }
}
