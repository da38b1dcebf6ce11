//! Automorphism groups by backtracking with distance-profile pruning.
//!
//! The group is stored as a stabilizer chain along a base of vertices: level
//! `k` holds one element for each point in the orbit of `base[k]` under the
//! pointwise stabilizer of `base[..k]`. Every automorphism is a unique
//! product `t_0 ∘ t_1 ∘ ... ∘ t_{n-1}` of one element per level.

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::perm::Permutation;
use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

/// Largest group order the crate will enumerate element by element.
pub const ELEMENT_CAP: u64 = 5_000_000;
/// Largest vertex count accepted by the automorphism search.
pub const MAX_VERTICES: usize = 16;

const UNSET: usize = usize::MAX;

/// Backtracking matcher of the vertices of `g` onto those of `h`,
/// preserving all pairwise distances.
struct Matcher<'a> {
    n: usize,
    dg: &'a DistanceMatrix,
    dh: &'a DistanceMatrix,
    order: Vec<usize>,
    cand: Vec<Vec<usize>>,
}

struct Constraints<'a> {
    forced: &'a [usize],
    max_moved: usize,
}

impl<'a> Matcher<'a> {
    fn new(g: &Graph, dg: &'a DistanceMatrix, dh: &'a DistanceMatrix) -> Matcher<'a> {
        let n = g.n();
        let order = search_order(g);
        let cand = (0..n)
            .map(|v| {
                let p = dg.profile(v);
                (0..n).filter(|&w| dh.profile(w) == p).collect()
            })
            .collect();
        Matcher { n, dg, dh, order, cand }
    }

    fn run<F>(&self, c: &Constraints, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut map = vec![UNSET; self.n];
        let mut used = vec![false; self.n];
        self.step(0, &mut map, &mut used, 0, c, visit)
    }

    fn step<F>(
        &self,
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        moved: usize,
        c: &Constraints,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.n {
            return visit(map);
        }
        let v = self.order[depth];
        let forced = c.forced[v];
        let single = [forced];
        let cands: &[usize] = if forced != UNSET { &single } else { &self.cand[v] };
        for &w in cands {
            if used[w] {
                continue;
            }
            let mv = moved + usize::from(w != v);
            if mv > c.max_moved {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.dh.get(w, map[u]) == self.dg.get(v, u));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            let flow = self.step(depth + 1, map, used, mv, c, visit);
            map[v] = UNSET;
            used[w] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn first(&self, c: &Constraints) -> Option<Vec<usize>> {
        let mut found = None;
        let _ = self.run(c, &mut |m: &[usize]| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }
}

/// Greedy order: next vertex is the one with most already-placed
/// neighbours, ties by smallest index.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut score = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| score[a].cmp(&score[b]).then(b.cmp(&a)))
            .unwrap();
        placed[v] = true;
        order.push(v);
        for w in g.neighbours(v) {
            score[w] += 1;
        }
    }
    order
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::Capability(format!(
            "automorphism search limited to {MAX_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Automorphism group as a stabilizer chain.
#[derive(Clone, Debug)]
pub struct AutGroup {
    n: usize,
    base: Vec<usize>,
    /// `levels[k]` maps each orbit point of `base[k]` to an element sending `base[k]` there.
    levels: Vec<Vec<Permutation>>,
    order: u64,
}

pub fn automorphism_group(g: &Graph) -> Result<AutGroup> {
    check_size(g)?;
    let n = g.n();
    let d = g.distances();
    let m = Matcher::new(g, &d, &d);
    let base = m.order.clone();
    let mut levels = Vec::with_capacity(n);
    let mut forced = vec![UNSET; n];
    let mut order: u64 = 1;
    for (k, &b) in base.iter().enumerate() {
        // Schreier tree of the orbit of b under elements found at this level
        let mut reps: BTreeMap<usize, Permutation> = BTreeMap::new();
        reps.insert(b, Permutation::identity(n));
        let mut gens: Vec<Permutation> = Vec::new();
        if k + 1 < n {
            for &w in &m.cand[b] {
                if reps.contains_key(&w) {
                    continue;
                }
                forced[b] = w;
                let found = m.first(&Constraints { forced: &forced, max_moved: n });
                forced[b] = UNSET;
                if let Some(img) = found {
                    gens.push(Permutation::from_images(img).expect("search yields bijections"));
                    close_orbit(&mut reps, &gens);
                }
            }
        }
        order = order
            .checked_mul(reps.len() as u64)
            .ok_or_else(|| Error::Capability("group order overflows u64".into()))?;
        levels.push(reps.into_values().collect());
        forced[b] = b;
    }
    Ok(AutGroup { n, base, levels, order })
}

fn close_orbit(reps: &mut BTreeMap<usize, Permutation>, gens: &[Permutation]) {
    let mut queue: VecDeque<usize> = reps.keys().copied().collect();
    while let Some(x) = queue.pop_front() {
        let psi = reps[&x].clone();
        for g in gens {
            let y = g.apply(x);
            if let std::collections::btree_map::Entry::Vacant(e) = reps.entry(y) {
                e.insert(g.compose(&psi));
                queue.push_back(y);
            }
        }
    }
}

impl AutGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Orbit sizes along the base; their product is the group order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Strong generating set: all non-identity transversal elements.
    pub fn generators(&self) -> Vec<Permutation> {
        self.levels.iter().flatten().filter(|p| !p.is_identity()).cloned().collect()
    }

    /// Lazily enumerates every element exactly once.
    pub fn iter_elements(&self) -> ElementIter<'_> {
        let levels: Vec<&Vec<Permutation>> = self.levels.iter().filter(|l| l.len() > 1).collect();
        let mut prefix = vec![Permutation::identity(self.n)];
        for l in &levels {
            let next = prefix.last().unwrap().compose(&l[0]);
            prefix.push(next);
        }
        ElementIter { idx: vec![0; levels.len()], levels, prefix, done: false }
    }

    /// All elements, refused when the order exceeds [`ELEMENT_CAP`].
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        if self.order > ELEMENT_CAP {
            return Err(Error::Capability(format!(
                "group of order {} exceeds the enumeration cap {ELEMENT_CAP}",
                self.order
            )));
        }
        Ok(self.iter_elements().collect())
    }

    pub fn vertex_orbits(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut comp = vec![UNSET; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != UNSET {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &gens {
                    let y = g.apply(x);
                    if comp[y] == UNSET {
                        comp[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.n <= 1 || self.vertex_orbits().len() == 1
    }
}

pub struct ElementIter<'a> {
    levels: Vec<&'a Vec<Permutation>>,
    idx: Vec<usize>,
    prefix: Vec<Permutation>,
    done: bool,
}

impl Iterator for ElementIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.prefix.last().unwrap().clone();
        // odometer, least significant level last
        let mut k = self.levels.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.idx[k] += 1;
            if self.idx[k] < self.levels[k].len() {
                for j in k..self.levels.len() {
                    if j > k {
                        self.idx[j] = 0;
                    }
                    self.prefix[j + 1] = self.prefix[j].compose(&self.levels[j][self.idx[j]]);
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn is_vertex_transitive(g: &Graph) -> Result<bool> {
    Ok(automorphism_group(g)?.is_transitive())
}

/// Finds an isomorphism `g -> h` as an image vector, if any.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (dg, dh) = (g.distances(), h.distances());
    let mut pg: Vec<Vec<u32>> = (0..g.n()).map(|v| dg.profile(v)).collect();
    let mut ph: Vec<Vec<u32>> = (0..h.n()).map(|v| dh.profile(v)).collect();
    pg.sort();
    ph.sort();
    if pg != ph {
        return None;
    }
    let m = Matcher::new(g, &dg, &dh);
    let forced = vec![UNSET; g.n()];
    m.first(&Constraints { forced: &forced, max_moved: g.n() })
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Two non-identity automorphisms with disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointPair {
    pub sigma: Permutation,
    pub tau: Permutation,
}

impl DisjointPair {
    /// Independent check against the graph.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        !self.sigma.is_identity()
            && !self.tau.is_identity()
            && self.sigma.is_automorphism_of(g)
            && self.tau.is_automorphism_of(g)
            && (0..g.n()).all(|v| self.sigma.apply(v) == v || self.tau.apply(v) == v)
    }
}

/// All automorphisms fixing `fixed` pointwise that move exactly `s` points,
/// sorted by (support, image). Counts visited elements against `budget`.
fn automorphisms_with_support(
    m: &Matcher,
    fixed: &[usize],
    s: usize,
    budget: &mut u64,
) -> Result<Vec<Permutation>> {
    let mut forced = vec![UNSET; m.n];
    for &v in fixed {
        forced[v] = v;
    }
    let mut out = Vec::new();
    let mut over = false;
    let _ = m.run(&Constraints { forced: &forced, max_moved: s }, &mut |img: &[usize]| {
        if *budget == 0 {
            over = true;
            return ControlFlow::Break(());
        }
        *budget -= 1;
        let moved = img.iter().enumerate().filter(|(v, w)| v != *w).count();
        if moved == s {
            out.push(Permutation::from_images(img.to_vec()).expect("bijection"));
        }
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::Capability(format!(
            "disjoint-automorphism search exceeded {ELEMENT_CAP} elements"
        )));
    }
    out.sort_by(|a, b| a.support().cmp(&b.support()).then_with(|| a.images().cmp(b.images())));
    Ok(out)
}

/// Scans automorphisms by increasing support size; for each candidate
/// `sigma` looks for the smallest non-identity automorphism fixing
/// `supp(sigma)` pointwise.
pub fn find_disjoint_automorphisms(g: &Graph) -> Result<Option<DisjointPair>> {
    check_size(g)?;
    let n = g.n();
    let d = g.distances();
    let m = Matcher::new(g, &d, &d);
    let mut budget = ELEMENT_CAP;
    for s in 2..=n {
        for sigma in automorphisms_with_support(&m, &[], s, &mut budget)? {
            let supp = sigma.support();
            for t in 2..=n - s {
                let taus = automorphisms_with_support(&m, &supp, t, &mut budget)?;
                if let Some(tau) = taus.into_iter().next() {
                    return Ok(Some(DisjointPair { sigma, tau }));
                }
            }
        }
    }
    Ok(None)
}

/// Partition of unordered pairs `{a, b}` (`a < b`) into orbits.
#[derive(Clone, Debug)]
pub struct PairOrbits {
    n: usize,
    orbit_of: Vec<usize>,
    /// For each pair, an element mapping its orbit representative onto it.
    witness: Vec<Permutation>,
    orbits: Vec<Vec<(usize, usize)>>,
    distance: Vec<u32>,
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * n + b
}

pub fn pair_orbits(g: &Graph, group: &AutGroup) -> PairOrbits {
    let n = g.n();
    let d = g.distances();
    let gens = group.generators();
    let mut orbit_of = vec![UNSET; n * n];
    let mut witness = vec![Permutation::identity(n); n * n];
    let mut orbits = Vec::new();
    let mut distance = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if orbit_of[pair_index(n, a, b)] != UNSET {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![(a, b)];
            orbit_of[pair_index(n, a, b)] = id;
            let mut i = 0;
            while i < members.len() {
                let (x, y) = members[i];
                let psi = witness[pair_index(n, x, y)].clone();
                for gen in &gens {
                    let (u, v) = (gen.apply(x), gen.apply(y));
                    let key = pair_index(n, u, v);
                    if orbit_of[key] == UNSET {
                        orbit_of[key] = id;
                        witness[key] = gen.compose(&psi);
                        members.push((u.min(v), u.max(v)));
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
            distance.push(d.get(a, b));
        }
    }
    PairOrbits { n, orbit_of, witness, orbits, distance }
}

impl PairOrbits {
    pub fn orbits(&self) -> &[Vec<(usize, usize)>] {
        &self.orbits
    }

    pub fn orbit_of(&self, a: usize, b: usize) -> usize {
        self.orbit_of[pair_index(self.n, a, b)]
    }

    /// Common distance of the pairs in an orbit.
    pub fn distance(&self, orbit: usize) -> u32 {
        self.distance[orbit]
    }

    /// An automorphism mapping `{a, b}` onto `{c, d}`, if they share an orbit.
    pub fn transfer(&self, from: (usize, usize), to: (usize, usize)) -> Option<Permutation> {
        if self.orbit_of(from.0, from.1) != self.orbit_of(to.0, to.1) {
            return None;
        }
        let src = &self.witness[pair_index(self.n, from.0, from.1)];
        let dst = &self.witness[pair_index(self.n, to.0, to.1)];
        Some(dst.compose(&src.inverse()))
    }
}
