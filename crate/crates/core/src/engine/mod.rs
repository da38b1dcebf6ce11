//! Commutation facts about the generators `u_ij` of the quantum automorphism
//! algebra, derived by a fixpoint over combinatorial lemmas.
//!
//! A commute fact `{j, l}` means `u_ij u_kl = u_kl u_ij` for all rows `i, k`.
//! A kill `(j, l, p)` means `u_ij u_kl u_ip = 0` for all `i, k`.

mod certificate;

pub use certificate::{
    parse_certificate, render_certificate, serialize_certificate, verify_certificate, Certificate,
    ProofStep, RenderFormat, Rejection,
};

use crate::aut::{automorphism_group, find_disjoint_automorphisms, pair_orbits, DisjointPair, PairOrbits};
use crate::error::{Error, Result};
use crate::graph::{injective_f_check, CirculantSpec, DistanceMatrix, Graph};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Distances and common-neighbour counts of a graph.
#[derive(Clone, Debug)]
pub struct GraphFacts {
    n: usize,
    d: DistanceMatrix,
    cn: Vec<usize>,
}

impl GraphFacts {
    pub fn new(g: &Graph) -> GraphFacts {
        let n = g.n();
        let mut cn = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                cn[a * n + b] = g.cn_count(a, b);
            }
        }
        GraphFacts { n, d: g.distances(), cn }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> u32 {
        self.d.get(a, b)
    }

    #[inline]
    pub fn cn(&self, a: usize, b: usize) -> usize {
        self.cn[a * self.n + b]
    }

    /// `P0 = {p : d(p, l) = d(j, l)}`.
    pub fn same_distance(&self, j: usize, l: usize) -> Vec<usize> {
        let m = self.dist(j, l);
        (0..self.n).filter(|&p| self.dist(p, l) == m).collect()
    }
}

/// Monotone store of commute facts and kills, with the proof log.
#[derive(Clone, Debug)]
pub struct CommutationKb {
    graph: Graph,
    facts: GraphFacts,
    commute: Vec<bool>,
    killed: Vec<bool>,
    log: Vec<ProofStep>,
}

impl CommutationKb {
    /// A knowledge base holding only the diagonal facts `{j, j}`.
    pub fn empty(g: &Graph) -> CommutationKb {
        let n = g.n();
        let mut commute = vec![false; n * n];
        for j in 0..n {
            commute[j * n + j] = true;
        }
        CommutationKb {
            graph: g.clone(),
            facts: GraphFacts::new(g),
            commute,
            killed: vec![false; n * n * n],
            log: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn facts(&self) -> &GraphFacts {
        &self.facts
    }

    pub fn n(&self) -> usize {
        self.facts.n
    }

    pub fn commutes(&self, j: usize, l: usize) -> bool {
        self.commute[j * self.n() + l]
    }

    pub fn is_killed(&self, j: usize, l: usize, p: usize) -> bool {
        self.killed[(j * self.n() + l) * self.n() + p]
    }

    pub fn log(&self) -> &[ProofStep] {
        &self.log
    }

    /// Unordered commuting pairs `a < b`.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| self.commutes(a, b)).collect()
    }

    pub fn all_commute(&self) -> bool {
        self.commute.iter().all(|&c| c)
    }

    pub fn kill_count(&self) -> usize {
        self.killed.iter().filter(|&&k| k).count()
    }

    /// Records a commute fact; returns false if it was already known.
    pub fn assert_commute(&mut self, j: usize, l: usize, step: ProofStep) -> bool {
        if self.commutes(j, l) {
            return false;
        }
        let n = self.n();
        self.commute[j * n + l] = true;
        self.commute[l * n + j] = true;
        self.log.push(step);
        true
    }

    fn set_commute_silent(&mut self, j: usize, l: usize) -> bool {
        let n = self.n();
        let new = !self.commute[j * n + l];
        self.commute[j * n + l] = true;
        self.commute[l * n + j] = true;
        new
    }

    fn set_killed(&mut self, j: usize, l: usize, p: usize) {
        let n = self.n();
        self.killed[(j * n + l) * n + p] = true;
    }

    pub fn summary(&self) -> KbSummary {
        let n = self.n();
        KbSummary {
            commuting_pairs: self.commuting_pairs().len(),
            total_pairs: n * n.saturating_sub(1) / 2,
            kills: self.kill_count(),
            steps: self.log.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbSummary {
    pub commuting_pairs: usize,
    pub total_pairs: usize,
    pub kills: usize,
    pub steps: usize,
}

/// `i, k, q` form a triangle in which each pair has the third vertex as its
/// only common neighbour; returns `q` for the edge `{i, k}`.
fn isolated_triangle_apex(g: &Graph, f: &GraphFacts, i: usize, k: usize) -> Option<usize> {
    if !g.adjacent(i, k) || f.cn(i, k) != 1 {
        return None;
    }
    let q = (0..f.n).find(|&q| g.adjacent(i, q) && g.adjacent(k, q))?;
    (f.cn(i, q) == 1 && f.cn(k, q) == 1).then_some(q)
}

/// Seeds commute facts for adjacent column pairs from the quadrangle and
/// common-neighbour lemmas.
pub fn seed_kb(g: &Graph) -> Result<CommutationKb> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut kb = CommutationKb::empty(g);
    apply_seeds(&mut kb);
    Ok(kb)
}

/// Applies whichever adjacency seed lemma fits, logging it only if it adds
/// a fact not already known. Returns true if anything was added.
pub fn apply_seeds(kb: &mut CommutationKb) -> bool {
    let edges = kb.graph.edges();
    let missing = |kb: &CommutationKb| edges.iter().any(|&(a, b)| !kb.commutes(a, b));
    if edges.is_empty() || !missing(kb) {
        return false;
    }
    let global = if !kb.graph.has_quadrangle() {
        Some(ProofStep::QuadrangleFree)
    } else if edges.iter().all(|&(a, b)| kb.facts.cn(a, b) == 1) {
        Some(ProofStep::OneCommonNeighbour)
    } else {
        None
    };
    if let Some(step) = global {
        kb.log.push(step);
        for &(a, b) in &edges {
            kb.set_commute_silent(a, b);
        }
        return true;
    }
    let every_single_cn_edge_isolated = edges
        .iter()
        .all(|&(a, b)| kb.facts.cn(a, b) != 1 || isolated_triangle_apex(&kb.graph, &kb.facts, a, b).is_some());
    let mut added = false;
    if every_single_cn_edge_isolated {
        for &(j, l) in &edges {
            if let Some(q) = isolated_triangle_apex(&kb.graph, &kb.facts, j, l) {
                added |= kb.assert_commute(j, l, ProofStep::OneCommonNeighbourGen { j, l, q });
            }
        }
    }
    added
}

/// Intersects `P0` with `{p : d(p, q) = d(j, q)}` for every `q` with
/// `{l, q}` known to commute, logging each `q` that kills something new.
/// Returns the surviving candidates, always containing `j`.
pub fn reduce_candidates(kb: &mut CommutationKb, j: usize, l: usize) -> Vec<usize> {
    let p0 = kb.facts.same_distance(j, l);
    for q in 0..kb.n() {
        if q == l || !kb.commutes(l, q) {
            continue;
        }
        let djq = kb.facts.dist(j, q);
        let survivors: Vec<usize> = p0.iter().copied().filter(|&p| kb.facts.dist(p, q) == djq).collect();
        let fresh: Vec<usize> = p0
            .iter()
            .copied()
            .filter(|&p| p != j && !survivors.contains(&p) && !kb.is_killed(j, l, p))
            .collect();
        if fresh.is_empty() {
            continue;
        }
        for p in fresh {
            kb.set_killed(j, l, p);
        }
        kb.log.push(ProofStep::ChooseQRight { j, l, q, survivors });
    }
    p0.into_iter().filter(|&p| p == j || !kb.is_killed(j, l, p)).collect()
}

/// Smallest `q` for which the middle lemma gives `u_ij u_kl u_ip = 0`.
pub fn kill_choose_q_middle(f: &GraphFacts, j: usize, l: usize, p: usize) -> Option<usize> {
    let m = f.dist(j, l);
    if p == j || f.dist(p, l) != m {
        return None;
    }
    (0..f.n).find(|&q| {
        if f.dist(j, q) == f.dist(q, p) {
            return false;
        }
        let s = f.dist(l, q);
        (0..f.n).all(|t| t == l || !(f.dist(t, j) == m && f.dist(t, p) == m && f.dist(t, q) == s))
    })
}

/// `|CN(j, l)| ≠ |CN(l, p)|` kills `u_ij u_kl u_ip`.
pub fn kill_cn_mismatch(f: &GraphFacts, j: usize, l: usize, p: usize) -> bool {
    p != j && f.cn(j, l) != f.cn(l, p)
}

/// Smallest `q` with `d(p, q) ≠ d(j, q)` and `{l, q}` known to commute.
pub fn kill_monomial_zero(kb: &CommutationKb, j: usize, l: usize, p: usize) -> Option<usize> {
    if p == j {
        return None;
    }
    let f = &kb.facts;
    (0..f.n).find(|&q| f.dist(p, q) != f.dist(j, q) && kb.commutes(l, q))
}

/// Tries to establish `{j, l}`; keeps partial kills on failure.
pub fn prove_pair(kb: &mut CommutationKb, j: usize, l: usize) -> bool {
    if kb.commutes(j, l) {
        return true;
    }
    let m = kb.facts.dist(j, l);
    if m == crate::graph::INFINITE {
        return false;
    }
    let p0 = kb.facts.same_distance(j, l);
    if p0 == [j] {
        return kb.assert_commute(j, l, ProofStep::UniqueAtDistance { j, l, m });
    }
    let survivors = reduce_candidates(kb, j, l);
    let mut all_dead = true;
    for p in survivors {
        if p == j {
            continue;
        }
        if let Some(q) = kill_choose_q_middle(&kb.facts, j, l, p) {
            kb.set_killed(j, l, p);
            kb.log.push(ProofStep::ChooseQMiddle { j, l, p, q });
        } else if kill_cn_mismatch(&kb.facts, j, l, p) {
            kb.set_killed(j, l, p);
            kb.log.push(ProofStep::CnMismatch { j, l, p });
        } else if let Some(q) = kill_monomial_zero(kb, j, l, p) {
            kb.set_killed(j, l, p);
            kb.log.push(ProofStep::MonomialZero { j, l, p, q });
        } else {
            all_dead = false;
        }
    }
    all_dead && kb.assert_commute(j, l, ProofStep::AdjCommuteClose { j, l })
}

/// Extends the commute set to a union of pair orbits, logging the
/// automorphism used for each new pair. Returns the number of new facts.
pub fn close_under_automorphisms(kb: &mut CommutationKb, orbits: &PairOrbits) -> usize {
    let mut added = 0;
    for orbit in orbits.orbits() {
        let Some(&src) = orbit.iter().find(|&&(a, b)| kb.commutes(a, b)) else {
            continue;
        };
        for &dst in orbit {
            if kb.commutes(dst.0, dst.1) {
                continue;
            }
            let perm = orbits.transfer(src, dst).expect("pairs share an orbit");
            kb.assert_commute(dst.0, dst.1, ProofStep::AutTransfer { from: src, to: dst, perm });
            added += 1;
        }
    }
    added
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    pub timeout: Duration,
    pub max_rounds: usize,
    /// Run the disjoint-automorphism test first.
    pub use_disjoint: bool,
    /// Try the injective-f criterion on circulant graphs.
    pub use_injective_f: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { timeout: Duration::from_secs(30), max_rounds: 8, use_disjoint: true, use_injective_f: true }
    }
}

impl DecideOptions {
    /// Lemma fixpoint only.
    pub fn lemmas_only() -> DecideOptions {
        DecideOptions { use_disjoint: false, use_injective_f: false, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    HasQuantumSymmetry { witness: DisjointPair },
    NoQuantumSymmetry { certificate: Certificate },
    Undecided { reason: String, summary: KbSummary },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::HasQuantumSymmetry { .. } => "HasQuantumSymmetry",
            Verdict::NoQuantumSymmetry { .. } => "NoQuantumSymmetry",
            Verdict::Undecided { .. } => "Undecided",
        }
    }

    /// `Some(true)` for quantum symmetry, `Some(false)` for none, `None` if undecided.
    pub fn has_quantum_symmetry(&self) -> Option<bool> {
        match self {
            Verdict::HasQuantumSymmetry { .. } => Some(true),
            Verdict::NoQuantumSymmetry { .. } => Some(false),
            Verdict::Undecided { .. } => None,
        }
    }
}

/// Recognizes a labeled circulant `C_n(k...)` containing the cycle `1, 2, ..., n`.
pub fn detect_circulant(g: &Graph) -> Option<CirculantSpec> {
    let n = g.n();
    if n < 3 || !g.adjacent(0, 1) {
        return None;
    }
    let rot = Permutation::from_images((0..n).map(|v| (v + 1) % n).collect()).ok()?;
    if !rot.is_automorphism_of(g) {
        return None;
    }
    let chords = (2..=n / 2).filter(|&k| g.adjacent(0, k)).collect();
    CirculantSpec::new(n, chords).ok()
}

/// Sweep order for the column pairs `{j0, l}`: by distance, then label.
fn sweep_targets(f: &GraphFacts, j0: usize) -> Vec<usize> {
    let mut ls: Vec<usize> = (0..f.n).filter(|&l| l != j0 && f.dist(j0, l) != crate::graph::INFINITE).collect();
    ls.sort_by_key(|&l| (f.dist(j0, l), l));
    ls
}

/// Runs the lemma fixpoint on a seeded knowledge base.
pub fn run_fixpoint(
    kb: &mut CommutationKb,
    orbits: &PairOrbits,
    reps: &[usize],
    opts: &DecideOptions,
    started: Instant,
) -> std::result::Result<(), String> {
    // Seeds are deferred until the adjacent pairs of the first representative
    // have been tried directly, so that graphs the direct lemmas already
    // handle get the more informative log.
    let mut seeded = false;
    let mut seed_once = |kb: &mut CommutationKb| {
        if !seeded {
            seeded = true;
            if apply_seeds(kb) {
                close_under_automorphisms(kb, orbits);
            }
        }
    };
    close_under_automorphisms(kb, orbits);
    for _round in 0..opts.max_rounds {
        if kb.all_commute() {
            return Ok(());
        }
        let before = (kb.log.len(), kb.kill_count());
        for &j0 in reps {
            let targets = sweep_targets(&kb.facts, j0);
            let mut layer = None;
            for l in targets {
                let dl = kb.facts.dist(j0, l);
                if layer.is_some_and(|x| x != dl) {
                    close_under_automorphisms(kb, orbits);
                    seed_once(kb);
                }
                layer = Some(dl);
                if started.elapsed() > opts.timeout {
                    return Err("timeout".into());
                }
                prove_pair(kb, j0, l);
            }
            close_under_automorphisms(kb, orbits);
            seed_once(kb);
        }
        if (kb.log.len(), kb.kill_count()) == before {
            return Err("fixpoint reached without closing every pair".into());
        }
    }
    if kb.all_commute() {
        Ok(())
    } else {
        Err(format!("no full commutation after {} rounds", opts.max_rounds))
    }
}

/// Disjoint automorphisms, then injective-f for circulants, then the
/// lemma fixpoint.
pub fn decide(g: &Graph, opts: &DecideOptions) -> Result<Verdict> {
    let started = Instant::now();
    let undecided = |reason: &str, summary: KbSummary| Verdict::Undecided { reason: reason.to_string(), summary };
    let n = g.n();
    let empty_summary = KbSummary { commuting_pairs: 0, total_pairs: n * n.saturating_sub(1) / 2, kills: 0, steps: 0 };

    if opts.use_disjoint {
        if let Some(witness) = find_disjoint_automorphisms(g)? {
            return Ok(Verdict::HasQuantumSymmetry { witness });
        }
    }
    if !g.is_connected() {
        return Ok(undecided("disconnected graph without a disjoint-automorphism witness", empty_summary));
    }
    if opts.use_injective_f {
        if let Some(spec) = detect_circulant(g) {
            if spec.n != 4 {
                let f = injective_f_check(&spec)?;
                if f.injective {
                    let certificate = Certificate::new(
                        g.clone(),
                        vec![
                            ProofStep::InjectiveF { n: spec.n, chords: spec.chords, values: f.values },
                            ProofStep::AllPairsCommute,
                        ],
                    );
                    return Ok(Verdict::NoQuantumSymmetry { certificate });
                }
            }
        }
    }

    let group = automorphism_group(g)?;
    let orbits = pair_orbits(g, &group);
    let reps: Vec<usize> = group.vertex_orbits().iter().map(|o| o[0]).collect();
    let mut kb = CommutationKb::empty(g);
    match run_fixpoint(&mut kb, &orbits, &reps, opts, started) {
        Ok(()) => {
            let mut steps = kb.log.clone();
            steps.push(ProofStep::AllPairsCommute);
            Ok(Verdict::NoQuantumSymmetry { certificate: Certificate::new(g.clone(), steps) })
        }
        Err(reason) => Ok(undecided(&reason, kb.summary())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphism_group;
    use crate::graph::{build_named, cycle};

    fn v(x: usize) -> usize {
        x - 1
    }

    fn kb_with_orbits(g: &Graph) -> (CommutationKb, PairOrbits) {
        let grp = automorphism_group(g).unwrap();
        (CommutationKb::empty(g), pair_orbits(g, &grp))
    }

    #[test]
    fn seeding() {
        let t = build_named("TruncK4").unwrap();
        let kb = seed_kb(&t).unwrap();
        assert_eq!(kb.log(), &[ProofStep::QuadrangleFree]);
        for (a, b) in t.edges() {
            assert!(kb.commutes(a, b));
        }
        let c = build_named("Cuboctahedron").unwrap();
        let kb = seed_kb(&c).unwrap();
        assert_eq!(kb.log(), &[ProofStep::OneCommonNeighbour]);
        assert_eq!(kb.commuting_pairs().len(), c.edge_count());

        let c12_2 = build_named("C12(2)").unwrap();
        assert!(c12_2.has_quadrangle());
        let kb = seed_kb(&c12_2).unwrap();
        assert!(kb.log().is_empty());
        assert!(kb.commuting_pairs().is_empty());
        assert!((0..12).all(|j| kb.commutes(j, j)));

        assert!(seed_kb(&build_named("2C6").unwrap()).is_err());
    }

    #[test]
    fn generalized_seed_on_antiprism_graph() {
        // every adjacent pair with one common neighbour sits in an isolated triangle
        let g = build_named("Antip(TruncK4)").unwrap();
        let kb = seed_kb(&g).unwrap();
        assert!(kb.log().iter().all(|s| matches!(s, ProofStep::OneCommonNeighbourGen { .. })));
        for step in kb.log() {
            if let ProofStep::OneCommonNeighbourGen { j, l, q } = *step {
                assert!(g.adjacent(j, l) && g.adjacent(j, q) && g.adjacent(l, q));
            }
        }
    }

    #[test]
    fn right_lemma_on_c5() {
        let c5 = cycle(5).unwrap();
        let mut kb = CommutationKb::empty(&c5);
        for (a, b) in c5.edges() {
            kb.set_commute_silent(a, b);
        }
        let p = reduce_candidates(&mut kb, v(1), v(3));
        assert_eq!(p, vec![v(1)]);
        assert_eq!(kb.log(), &[ProofStep::ChooseQRight { j: v(1), l: v(3), q: v(2), survivors: vec![v(1)] }]);
    }

    #[test]
    fn right_lemma_on_prism() {
        let g = build_named("K2xC6").unwrap();
        let mut kb = CommutationKb::empty(&g);
        kb.set_commute_silent(v(7), v(2));
        let p = reduce_candidates(&mut kb, v(1), v(7));
        assert_eq!(p, vec![v(1), v(8)]);
    }

    #[test]
    fn right_lemma_without_usable_q() {
        let g = build_named("K2xC6").unwrap();
        let mut kb = CommutationKb::empty(&g);
        let p = reduce_candidates(&mut kb, v(1), v(3));
        assert_eq!(p, kb.facts().same_distance(v(1), v(3)));
        assert!(kb.log().is_empty());
    }

    #[test]
    fn middle_lemma() {
        let c5 = GraphFacts::new(&cycle(5).unwrap());
        assert_eq!(kill_choose_q_middle(&c5, v(1), v(2), v(3)), Some(v(1)));
        let prism = GraphFacts::new(&build_named("K2xC6").unwrap());
        assert_eq!(kill_choose_q_middle(&prism, v(1), v(3), v(5)), Some(v(2)));
        assert_eq!(kill_choose_q_middle(&prism, v(1), v(3), v(8)), Some(v(6)));
        assert_eq!(kill_choose_q_middle(&prism, v(1), v(3), v(10)), None);
    }

    #[test]
    fn cn_mismatch() {
        let prism = GraphFacts::new(&build_named("K2xC6").unwrap());
        assert!(kill_cn_mismatch(&prism, v(1), v(3), v(10)));
        assert!(!kill_cn_mismatch(&prism, v(1), v(3), v(5)));
        let g = GraphFacts::new(&build_named("C12(4,6)").unwrap());
        assert!(kill_cn_mismatch(&g, v(1), v(4), v(6)));
    }

    #[test]
    fn monomial_lemma() {
        let g = build_named("C12(2)").unwrap();
        let mut kb = CommutationKb::empty(&g);
        assert_eq!(kill_monomial_zero(&kb, v(1), v(7), v(2)), None);
        let d = g.distances();
        for a in 0..12 {
            for b in 0..12 {
                if a != b && d.get(a, b) <= 2 {
                    kb.set_commute_silent(a, b);
                }
            }
        }
        assert_eq!(kill_monomial_zero(&kb, v(1), v(7), v(2)), Some(v(4)));

        let g = build_named("C12(2,6)").unwrap();
        let mut kb = CommutationKb::empty(&g);
        kb.set_commute_silent(v(5), v(2));
        assert_eq!(kill_monomial_zero(&kb, v(1), v(5), v(9)), Some(v(2)));
    }

    #[test]
    fn closure_by_automorphisms() {
        let g = build_named("K2xC6").unwrap();
        let (mut kb, orbits) = kb_with_orbits(&g);
        kb.set_commute_silent(v(1), v(3));
        assert!(close_under_automorphisms(&mut kb, &orbits) > 0);
        assert!(kb.commutes(v(1), v(5)));
        let snapshot = kb.commuting_pairs();
        assert_eq!(close_under_automorphisms(&mut kb, &orbits), 0);
        assert_eq!(kb.commuting_pairs(), snapshot);
        for step in kb.log() {
            if let ProofStep::AutTransfer { from, to, perm } = step {
                assert!(perm.is_automorphism_of(&g));
                let img = (perm.apply(from.0), perm.apply(from.1));
                assert!(img == *to || (img.1, img.0) == *to);
            }
        }

        let g = build_named("C12(3,6)").unwrap();
        let (mut kb, orbits) = kb_with_orbits(&g);
        for l in 2..=7 {
            kb.set_commute_silent(v(1), v(l));
        }
        close_under_automorphisms(&mut kb, &orbits);
        let mirror = Permutation::parse_cycles(12, "(2 12)(3 11)(4 10)(5 9)(6 8)").unwrap();
        assert!(mirror.is_automorphism_of(&g));
        for l in 2..=7 {
            assert!(kb.commutes(v(1), mirror.apply(v(l))));
        }
    }

    #[test]
    fn prove_pair_examples() {
        let g = build_named("K2xC6").unwrap();
        let mut kb = CommutationKb::empty(&g);
        assert!(prove_pair(&mut kb, v(1), v(10)));
        assert_eq!(kb.log(), &[ProofStep::UniqueAtDistance { j: v(1), l: v(10), m: 4 }]);

        let c5 = cycle(5).unwrap();
        let mut kb = CommutationKb::empty(&c5);
        assert!(prove_pair(&mut kb, v(1), v(2)));
        let middles = kb.log().iter().filter(|s| matches!(s, ProofStep::ChooseQMiddle { .. })).count();
        assert_eq!(middles, 1);
        assert!(prove_pair(&mut kb, v(1), v(5)));

        let g = build_named("C12(5)").unwrap();
        let mut kb = seed_kb(&g).unwrap();
        assert!(!prove_pair(&mut kb, v(1), v(2)));
        assert!(!kb.commutes(v(1), v(2)));
    }

    #[test]
    fn decide_examples() {
        let c5 = cycle(5).unwrap();
        let verdict = decide(&c5, &DecideOptions::default()).unwrap();
        let Verdict::NoQuantumSymmetry { certificate } = verdict else { panic!("{verdict:?}") };
        assert!(verify_certificate(&c5, &certificate).is_ok());

        let g = build_named("C12(5)").unwrap();
        let Verdict::HasQuantumSymmetry { witness } = decide(&g, &DecideOptions::default()).unwrap() else {
            panic!()
        };
        assert!(witness.is_valid_for(&g));

        let g = build_named("K2xC6").unwrap();
        let verdict = decide(&g, &DecideOptions::default()).unwrap();
        assert_eq!(verdict.name(), "NoQuantumSymmetry");
    }

    #[test]
    fn c5_certificate_tables_match_worked_example() {
        let c5 = cycle(5).unwrap();
        let Verdict::NoQuantumSymmetry { certificate } = decide(&c5, &DecideOptions::lemmas_only()).unwrap() else {
            panic!()
        };
        let middle: Vec<_> = certificate
            .steps()
            .iter()
            .filter_map(|s| match *s {
                ProofStep::ChooseQMiddle { j, l, p, q } => Some((j + 1, l + 1, p + 1, q + 1)),
                _ => None,
            })
            .collect();
        assert_eq!(middle, vec![(1, 2, 3, 1), (1, 5, 4, 1)]);
        let right: Vec<_> = certificate
            .steps()
            .iter()
            .filter_map(|s| match s {
                ProofStep::ChooseQRight { j, l, q, survivors } => {
                    Some((j + 1, l + 1, q + 1, survivors.iter().map(|x| x + 1).collect::<Vec<_>>()))
                }
                _ => None,
            })
            .collect();
        assert_eq!(right, vec![(1, 3, 2, vec![1]), (1, 4, 3, vec![1])]);
    }

    #[test]
    fn circulant_detection() {
        let g = build_named("C12(4,5)").unwrap();
        assert_eq!(detect_circulant(&g), Some(CirculantSpec::new(12, vec![4, 5]).unwrap()));
        assert_eq!(detect_circulant(&build_named("K2xC6").unwrap()), None);
        assert_eq!(detect_circulant(&build_named("C12(5+)").unwrap()), None);
    }

    #[test]
    fn injective_f_route() {
        let g = build_named("C12(3)").unwrap();
        let Verdict::NoQuantumSymmetry { certificate } = decide(&g, &DecideOptions::default()).unwrap() else {
            panic!()
        };
        assert!(matches!(certificate.steps()[0], ProofStep::InjectiveF { .. }));
        assert!(verify_certificate(&g, &certificate).is_ok());
    }

    #[test]
    fn timeout_gives_undecided() {
        let g = build_named("Icosahedron").unwrap();
        let opts = DecideOptions { timeout: Duration::ZERO, ..DecideOptions::lemmas_only() };
        match decide(&g, &opts).unwrap() {
            Verdict::Undecided { reason, .. } => assert_eq!(reason, "timeout"),
            Verdict::NoQuantumSymmetry { .. } => {}
            other => panic!("{other:?}"),
        }
    }
}
