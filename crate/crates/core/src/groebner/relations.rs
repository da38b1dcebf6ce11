use super::buchberger::PartialGB;
use super::poly::NcPoly;
use crate::graph::Graph;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Generators of the ideal: idempotents, row and column sums, and the
/// entries of `Au − uA`. Zero polynomials are dropped.
pub fn quantum_relations(g: &Graph) -> Vec<NcPoly> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let u = NcPoly::var(i, j);
            out.push(u.mul(&u).sub(&u));
        }
    }
    for i in 0..n {
        let mut row = NcPoly::constant(-BigRational::one());
        let mut col = NcPoly::constant(-BigRational::one());
        for k in 0..n {
            row = row.add(&NcPoly::var(i, k));
            col = col.add(&NcPoly::var(k, i));
        }
        out.push(row);
        out.push(col);
    }
    for i in 0..n {
        for j in 0..n {
            let mut entry = NcPoly::zero();
            for k in 0..n {
                if g.adjacent(i, k) {
                    entry = entry.add(&NcPoly::var(k, j));
                }
                if g.adjacent(k, j) {
                    entry = entry.sub(&NcPoly::var(i, k));
                }
            }
            if !entry.is_zero() {
                out.push(entry);
            }
        }
    }
    out
}

/// Suggested cap: 4 up to six vertices, 3 beyond.
pub fn default_degree_cap(n: usize) -> usize {
    if n <= 6 {
        4
    } else {
        3
    }
}

/// `u_ij u_kl − u_kl u_ij`, 0-based.
pub fn commutator(a: (usize, usize), b: (usize, usize)) -> NcPoly {
    let (x, y) = (NcPoly::var(a.0, a.1), NcPoly::var(b.0, b.1));
    x.mul(&y).sub(&y.mul(&x))
}

/// True proves `u_ij u_kl = u_kl u_ij` in the quantum automorphism algebra;
/// false proves nothing.
pub fn commutator_reduces(g: &Graph, gb: &PartialGB, a: (usize, usize), b: (usize, usize)) -> bool {
    let n = g.n();
    assert!(a.0 < n && a.1 < n && b.0 < n && b.1 < n, "generator index out of range");
    gb.reduce(&commutator(a, b)).is_zero()
}

/// True proves `lhs = rhs` in the quantum automorphism algebra; false proves nothing.
pub fn verify_identity(_g: &Graph, gb: &PartialGB, lhs: &NcPoly, rhs: &NcPoly) -> bool {
    gb.reduce(&lhs.sub(rhs)).is_zero()
}

/// Which generator commutators reduce to zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutationMatrix {
    pub n: usize,
    /// Number of unordered pairs of distinct generators.
    pub commutators: usize,
    pub reduced: usize,
    /// Column pairs `{j, l}` (0-based, `j < l`) for which every
    /// `u_ij u_kl − u_kl u_ij` reduces.
    pub commuting_columns: Vec<(usize, usize)>,
}

impl CommutationMatrix {
    pub fn all_reduce(&self) -> bool {
        self.reduced == self.commutators
    }
}

pub fn commutation_matrix(g: &Graph, gb: &PartialGB) -> CommutationMatrix {
    let n = g.n();
    let gens: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut column_ok = vec![true; n * n];
    let (mut commutators, mut reduced) = (0, 0);
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x + 1..] {
            commutators += 1;
            if commutator_reduces(g, gb, a, b) {
                reduced += 1;
            } else {
                column_ok[a.1 * n + b.1] = false;
                column_ok[b.1 * n + a.1] = false;
            }
        }
    }
    let commuting_columns =
        (0..n).flat_map(|j| (j + 1..n).map(move |l| (j, l))).filter(|&(j, l)| column_ok[j * n + l]).collect();
    CommutationMatrix { n, commutators, reduced, commuting_columns }
}
