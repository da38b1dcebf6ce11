use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Generator `u_ij` packed as `i << 8 | j` (0-based), so the natural order
/// on letters is by `i`, then `j`.
pub type Letter = u16;

pub fn letter(i: usize, j: usize) -> Letter {
    assert!(i < 256 && j < 256, "generator index out of range");
    ((i << 8) | j) as Letter
}

pub fn letter_indices(l: Letter) -> (usize, usize) {
    ((l >> 8) as usize, (l & 0xff) as usize)
}

/// A word in the generators, compared degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Letter>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// `left · self · right`.
    pub fn wrap(&self, left: &[Letter], right: &[Letter]) -> Monomial {
        let mut w = Vec::with_capacity(left.len() + self.0.len() + right.len());
        w.extend_from_slice(left);
        w.extend_from_slice(&self.0);
        w.extend_from_slice(right);
        Monomial(w)
    }

    /// First position at which `sub` occurs as a contiguous subword.
    pub fn find(&self, sub: &Monomial) -> Option<usize> {
        let (w, s) = (&self.0, &sub.0);
        if s.len() > w.len() {
            return None;
        }
        (0..=w.len() - s.len()).find(|&k| &w[k..k + s.len()] == s.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &l) in self.0.iter().enumerate() {
            let (i, j) = letter_indices(l);
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "u[{},{}]", i + 1, j + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in noncommuting generators with exact rational coefficients.
/// Terms are kept sorted; the leading term is the largest.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn constant(c: BigRational) -> NcPoly {
        NcPoly::term(Monomial::one(), c)
    }

    pub fn one() -> NcPoly {
        NcPoly::constant(BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(m, c);
        p
    }

    /// The generator `u_ij`, 0-based.
    pub fn var(i: usize, j: usize) -> NcPoly {
        NcPoly::term(Monomial(vec![letter(i, j)]), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, BigRational)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.wrap(&[], &m2.0), c1 * c2);
            }
        }
        out
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn wrap(&self, left: &[Letter], right: &[Letter]) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(m, c)| (m.wrap(left, right), c.clone())).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NcPoly {
        match self.leading() {
            None => NcPoly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Parses `3/2*u[1,2]*u[3,4] - u[2,2] + 1` (1-based generators,
    /// parentheses allowed).
    pub fn parse(text: &str) -> Result<NcPoly> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::PolyParse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let t = self.product()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<NcPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<BigInt>().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn factor(&mut self) -> Result<NcPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(b'u') => {
                self.pos += 1;
                if !self.eat(b'[') {
                    return Err(self.err("expected `[`"));
                }
                self.skip_ws();
                let i = self.number()?;
                if !self.eat(b',') {
                    return Err(self.err("expected `,`"));
                }
                self.skip_ws();
                let j = self.number()?;
                if !self.eat(b']') {
                    return Err(self.err("expected `]`"));
                }
                let to_index = |v: BigInt| -> Result<usize> {
                    let v: usize = v.try_into().map_err(|_| self.err("index too large"))?;
                    if v == 0 || v > 256 {
                        return Err(self.err("generator index out of range"));
                    }
                    Ok(v - 1)
                };
                Ok(NcPoly::var(to_index(i)?, to_index(j)?))
            }
            Some(b'0'..=b'9') => {
                let num = self.number()?;
                let den = if self.eat(b'/') {
                    self.skip_ws();
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(NcPoly::constant(BigRational::new(num, den)))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}
