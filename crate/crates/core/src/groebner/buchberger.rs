use super::poly::{Letter, Monomial, NcPoly};
use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

/// An ambiguity `word = left1 · m1 · right1 = left2 · m2 · right2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Obstruction {
    pub word: Monomial,
    pub left1: Vec<Letter>,
    pub right1: Vec<Letter>,
    pub left2: Vec<Letter>,
    pub right2: Vec<Letter>,
}

/// Proper overlaps in both directions plus strict containments of one
/// word in the other. Trivial placements (identical words aligned) are
/// excluded.
pub fn overlaps(m1: &Monomial, m2: &Monomial) -> Vec<Obstruction> {
    let (a, b) = (m1.letters(), m2.letters());
    let mut out = Vec::new();
    if a.is_empty() || b.is_empty() {
        return out;
    }
    // suffix of a = prefix of b
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            out.push(Obstruction {
                word: m1.wrap(&[], &b[k..]),
                left1: vec![],
                right1: b[k..].to_vec(),
                left2: a[..a.len() - k].to_vec(),
                right2: vec![],
            });
        }
    }
    // suffix of b = prefix of a; for a self-overlap this only mirrors the first loop
    for k in 1..a.len().min(b.len()) {
        if a == b {
            break;
        }
        if b[b.len() - k..] == a[..k] {
            out.push(Obstruction {
                word: m2.wrap(&[], &a[k..]),
                left1: b[..b.len() - k].to_vec(),
                right1: vec![],
                left2: vec![],
                right2: a[k..].to_vec(),
            });
        }
    }
    if a != b {
        for s in 0..a.len().saturating_sub(b.len() - 1) {
            if a[s..s + b.len()] == *b {
                out.push(Obstruction {
                    word: m1.clone(),
                    left1: vec![],
                    right1: vec![],
                    left2: a[..s].to_vec(),
                    right2: a[s + b.len()..].to_vec(),
                });
            }
        }
        for s in 0..b.len().saturating_sub(a.len() - 1) {
            if b[s..s + a.len()] == *a {
                out.push(Obstruction {
                    word: m2.clone(),
                    left1: b[..s].to_vec(),
                    right1: b[s + a.len()..].to_vec(),
                    left2: vec![],
                    right2: vec![],
                });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `left1 · g1 · right1 − left2 · g2 · right2`.
pub fn s_polynomial(g1: &NcPoly, g2: &NcPoly, ob: &Obstruction) -> NcPoly {
    g1.wrap(&ob.left1, &ob.right1).sub(&g2.wrap(&ob.left2, &ob.right2))
}

/// Lookup of leading monomials by exact word, for subword search.
#[derive(Default)]
struct LeadIndex {
    by_word: HashMap<Vec<Letter>, usize>,
    max_len: usize,
}

impl LeadIndex {
    fn insert(&mut self, word: &[Letter], id: usize) {
        self.max_len = self.max_len.max(word.len());
        self.by_word.insert(word.to_vec(), id);
    }

    fn remove(&mut self, word: &[Letter]) {
        self.by_word.remove(word);
    }

    /// Some `(id, start)` whose word occurs in `w`, scanning starts left to right.
    fn find(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for s in 0..w.len() {
            for len in 1..=self.max_len.min(w.len() - s) {
                if let Some(&id) = self.by_word.get(&w[s..s + len]) {
                    return Some((id, s));
                }
            }
        }
        None
    }

    /// Every occurrence `(id, start, end)` in `w`.
    fn occurrences(&self, w: &[Letter]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for s in 0..w.len() {
            for len in 1..=self.max_len.min(w.len() - s) {
                if let Some(&id) = self.by_word.get(&w[s..s + len]) {
                    out.push((id, s, s + len));
                }
            }
        }
        out
    }
}

fn reduce_with(p: &NcPoly, polys: &[Option<NcPoly>], index: &LeadIndex) -> NcPoly {
    let mut rem = p.clone();
    let mut out = NcPoly::zero();
    while let Some((m, c)) = rem.pop_leading() {
        match index.find(m.letters()) {
            Some((id, s)) => {
                let g = polys[id].as_ref().expect("indexed element is live");
                let glen = g.leading_monomial().expect("nonzero").degree();
                let (left, right) = (&m.letters()[..s], &m.letters()[s + glen..]);
                // g is monic, so its leading term cancels `c · m` exactly
                for (gm, gc) in g.terms().rev().skip(1) {
                    rem.add_term(gm.wrap(left, right), -(&c * gc));
                }
            }
            None => out.add_term(m, c),
        }
    }
    out
}

/// Fully reduces `p` modulo the monic `basis`: no term of the result contains
/// a leading monomial of the basis.
pub fn normal_form(p: &NcPoly, basis: &[NcPoly]) -> NcPoly {
    let mut index = LeadIndex::default();
    let polys: Vec<Option<NcPoly>> = basis.iter().map(|g| Some(g.monic())).collect();
    for (id, g) in polys.iter().enumerate() {
        if let Some(m) = g.as_ref().and_then(|g| g.leading_monomial()) {
            index.insert(m.letters(), id);
        }
    }
    reduce_with(p, &polys, &index)
}

/// A degree-truncated Gröbner basis with an honest completeness claim.
#[derive(Clone, Debug)]
pub struct PartialGB {
    /// Monic, with no leading monomial contained in another.
    pub basis: Vec<NcPoly>,
    /// Every obstruction with ambiguity degree at most this has an S-polynomial
    /// reducing to zero.
    pub complete_up_to_degree: usize,
    /// No obstruction of any degree remains: this is a full Gröbner basis.
    pub exhausted: bool,
    /// Stopped by the step budget.
    pub truncated: bool,
    /// S-polynomials reduced.
    pub steps: usize,
}

impl PartialGB {
    pub fn reduce(&self, p: &NcPoly) -> NcPoly {
        normal_form(p, &self.basis)
    }

    /// Re-derives every obstruction among basis elements up to `degree` and
    /// returns the first whose S-polynomial does not reduce to zero.
    pub fn check_confluence(&self, degree: usize) -> Option<(usize, usize, Obstruction)> {
        for (a, ga) in self.basis.iter().enumerate() {
            for (b, gb) in self.basis.iter().enumerate().skip(a) {
                let (ma, mb) = (ga.leading_monomial()?, gb.leading_monomial()?);
                for ob in overlaps(ma, mb) {
                    if ob.word.degree() <= degree && !self.reduce(&s_polynomial(ga, gb, &ob)).is_zero() {
                        return Some((a, b, ob));
                    }
                }
            }
        }
        None
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    word: Monomial,
    a: usize,
    b: usize,
    ob: Obstruction,
}

struct Engine {
    polys: Vec<Option<NcPoly>>,
    index: LeadIndex,
    queue: BinaryHeap<Reverse<Pending>>,
    /// Obstructions skipped because a leading monomial sits strictly inside
    /// their word, keyed by that element; reinstated if it leaves the basis.
    parked: HashMap<usize, Vec<Pending>>,
    max_degree: usize,
    cap_hit: bool,
}

impl Engine {
    fn live(&self, id: usize) -> bool {
        self.polys[id].is_some()
    }

    fn lm(&self, id: usize) -> &Monomial {
        self.polys[id].as_ref().and_then(|g| g.leading_monomial()).expect("live nonzero element")
    }

    fn add(&mut self, p: NcPoly) {
        let mut work = vec![p];
        while let Some(p) = work.pop() {
            let h = reduce_with(&p, &self.polys, &self.index).monic();
            let Some(lm) = h.leading_monomial().cloned() else { continue };
            // interreduce: elements whose leading word contains lm(h) go back to the worklist
            let displaced: Vec<usize> = (0..self.polys.len())
                .filter(|&id| self.live(id) && self.lm(id).find(&lm).is_some())
                .collect();
            for id in displaced {
                let g = self.polys[id].take().expect("live");
                self.index.remove(g.leading_monomial().expect("nonzero").letters());
                if let Some(parked) = self.parked.remove(&id) {
                    for pend in parked {
                        self.queue.push(Reverse(pend));
                    }
                }
                work.push(g);
            }
            let id = self.polys.len();
            self.polys.push(Some(h));
            self.index.insert(lm.letters(), id);
            for other in 0..=id {
                if !self.live(other) {
                    continue;
                }
                let obs = overlaps(&lm, self.lm(other));
                for ob in obs {
                    if ob.word.degree() > self.max_degree {
                        self.cap_hit = true;
                        continue;
                    }
                    self.queue.push(Reverse(Pending { word: ob.word.clone(), a: id, b: other, ob }));
                }
            }
        }
    }

    /// A third leading monomial strictly inside the ambiguity word makes the
    /// obstruction follow from two strictly shorter ones.
    fn redundant_by(&self, pend: &Pending) -> Option<usize> {
        let w = pend.word.letters();
        self.index
            .occurrences(w)
            .into_iter()
            .find(|&(c, s, e)| c != pend.a && c != pend.b && s > 0 && e < w.len())
            .map(|(c, _, _)| c)
    }
}

/// Degree-bounded noncommutative Buchberger over deglex. Obstructions are
/// processed by ascending ambiguity word; those above `max_degree` are
/// dropped and recorded in the result.
pub fn buchberger(gens: &[NcPoly], max_degree: usize, max_steps: usize) -> Result<PartialGB> {
    let gen_degree = gens.iter().filter_map(NcPoly::degree).max().unwrap_or(0);
    if max_degree < gen_degree.max(1) {
        return Err(Error::Capability(format!(
            "degree cap {max_degree} is below the generator degree {}",
            gen_degree.max(1)
        )));
    }
    let mut eng = Engine {
        polys: Vec::new(),
        index: LeadIndex::default(),
        queue: BinaryHeap::new(),
        parked: HashMap::new(),
        max_degree,
        cap_hit: false,
    };
    let mut sorted: Vec<NcPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in sorted {
        eng.add(g);
    }
    let mut steps = 0;
    let mut truncated = false;
    while let Some(Reverse(pend)) = eng.queue.pop() {
        if !eng.live(pend.a) || !eng.live(pend.b) {
            continue;
        }
        if let Some(c) = eng.redundant_by(&pend) {
            eng.parked.entry(c).or_default().push(pend);
            continue;
        }
        if steps >= max_steps {
            eng.queue.push(Reverse(pend));
            truncated = true;
            break;
        }
        steps += 1;
        let (ga, gb) = (eng.polys[pend.a].as_ref().expect("live"), eng.polys[pend.b].as_ref().expect("live"));
        let s = s_polynomial(ga, gb, &pend.ob);
        eng.add(s);
    }
    let complete_up_to_degree = if truncated {
        let pending_min = eng
            .queue
            .iter()
            .filter(|Reverse(p)| eng.live(p.a) && eng.live(p.b))
            .map(|Reverse(p)| p.word.degree())
            .min()
            .unwrap_or(max_degree + 1);
        pending_min.saturating_sub(1).min(max_degree)
    } else {
        max_degree
    };
    let basis: Vec<NcPoly> = eng.polys.into_iter().flatten().collect();
    Ok(PartialGB { basis, complete_up_to_degree, exhausted: !eng.cap_hit && !truncated, truncated, steps })
}
