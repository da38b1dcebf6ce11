//! Graph names such as `C12(3+,6)`, `K2xC6`, `K6*K2`, `2(K2xK3)`, `L(C6(2))`.
//!
//! Grammar (ASCII, whitespace ignored):
//!
//! ```text
//! expr  := term (('x' | '□' | '*') term)*      x / □ cartesian, * direct
//! term  := [count] atom                          count copies, disjoint
//! atom  := 'C' num ['(' arg (',' arg)* ')'] | 'K' num | 'P' num | 'E' num
//!        | 'L(' expr ')' | 'Antip(' expr ')' | '(' expr ')' | alias
//! arg   := num ['+']
//! ```

use super::build::*;
use super::Graph;
use crate::error::{Error, Result};

type Figure = (&'static str, usize, &'static [(usize, usize)]);

/// Graphs given by explicit edge lists, with the labeling used in proofs.
const FIGURES: &[Figure] = &[
    (
        "TruncK4",
        12,
        &[
            (1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 4), (3, 11), (4, 7), (5, 6),
            (5, 8), (6, 12), (7, 8), (7, 9), (8, 9), (9, 10), (10, 11), (10, 12), (11, 12),
        ],
    ),
    (
        "Antip(TruncK4)",
        12,
        &[
            (1, 2), (1, 3), (1, 11), (1, 5), (2, 4), (2, 6), (2, 12), (3, 5), (3, 4),
            (3, 10), (4, 6), (4, 9), (5, 7), (5, 8), (6, 7), (6, 8), (7, 9), (7, 11),
            (8, 10), (8, 12), (9, 10), (9, 11), (10, 12), (11, 12),
        ],
    ),
    (
        "Cuboctahedron",
        12,
        &[
            (1, 2), (1, 3), (1, 11), (1, 6), (2, 3), (2, 7), (2, 12), (3, 4), (3, 5),
            (4, 6), (4, 8), (4, 5), (5, 7), (5, 9), (6, 8), (6, 11), (7, 9), (7, 12),
            (8, 9), (8, 10), (9, 10), (10, 11), (10, 12), (11, 12),
        ],
    ),
    (
        "L(C6(2))",
        12,
        &[
            (1, 2), (1, 3), (1, 4), (1, 6), (1, 9), (1, 10), (2, 3), (2, 5), (2, 6),
            (2, 7), (2, 9), (3, 4), (3, 5), (3, 7), (3, 10), (4, 5), (4, 8), (4, 10),
            (4, 11), (5, 7), (5, 8), (5, 11), (6, 7), (6, 8), (6, 9), (6, 12), (7, 8),
            (7, 12), (8, 11), (8, 12), (9, 10), (9, 11), (9, 12), (10, 11), (10, 12),
            (11, 12),
        ],
    ),
    (
        // top 1, upper ring 2..6, lower ring 7..11, bottom 12
        "Icosahedron",
        12,
        &[
            (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6),
            (6, 2), (7, 8), (8, 9), (9, 10), (10, 11), (11, 7), (2, 7), (2, 8), (3, 8),
            (3, 9), (4, 9), (4, 10), (5, 10), (5, 11), (6, 11), (6, 7), (12, 7), (12, 8),
            (12, 9), (12, 10), (12, 11),
        ],
    ),
    (
        "Petersen",
        10,
        &[
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 10), (6, 8), (8, 10), (10, 7), (7, 9), (9, 6),
        ],
    ),
];

/// Names that expand to another expression.
const SYNONYMS: &[(&str, &str)] = &[
    ("Cube", "K2xC4"),
    ("C12+", "C12(6)"),
    ("K2xC6+", "K2xC6(3)"),
];

/// Alias table for display: every fixed name with its description.
pub fn named_aliases() -> Vec<(&'static str, &'static str)> {
    vec![
        ("TruncK4", "truncated tetrahedron, fixed labeling"),
        ("Antip(TruncK4)", "distance-3 graph of the truncated tetrahedron, fixed labeling"),
        ("Cuboctahedron", "line graph of the cube, fixed labeling"),
        ("L(C6(2))", "line graph of the octahedron, fixed labeling"),
        ("Icosahedron", "icosahedral graph"),
        ("Petersen", "Petersen graph"),
        ("Cube", "K2xC4"),
        ("C12+", "C12(6)"),
        ("K2xC6+", "K2xC6(3)"),
        ("C<n>(k,..,l+,..)", "circulant, chords k; l+ adds offset l from odd vertices"),
        ("K<n> / P<n> / E<n>", "complete, path, edgeless"),
        ("<m><G>", "m disjoint copies of G"),
        ("GxH", "cartesian product"),
        ("G*H", "direct (tensor) product"),
        ("L(G) / Antip(G)", "line graph / distance-diameter graph"),
    ]
}

pub fn build_named(name: &str) -> Result<Graph> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let g = expand(&compact).map_err(|e| match e {
        Error::Parse { .. } => Error::UnknownName(name.to_string()),
        other => other,
    })?;
    Ok(g.with_label(compact))
}

fn expand(name: &str) -> Result<Graph> {
    if let Some((_, n, edges)) = FIGURES.iter().find(|(k, _, _)| *k == name) {
        return Graph::from_edges_1based(*n, edges);
    }
    if let Some((_, to)) = SYNONYMS.iter().find(|(k, _)| *k == name) {
        return expand(to);
    }
    let mut p = Parser { s: name.chars().collect(), pos: 0 };
    let g = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

struct Parser {
    s: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, msg: format!("{msg} at offset {}", self.pos) }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn starts_with(&self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        self.s[self.pos..].starts_with(&w)
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected number"));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.err("number too large"))
    }

    fn expr(&mut self) -> Result<Graph> {
        let mut g = self.term()?;
        loop {
            if self.eat('x') || self.eat('□') {
                let h = self.term()?;
                g = cartesian_product(&g, &h);
            } else if self.eat('*') || self.eat('×') {
                let h = self.term()?;
                g = direct_product(&g, &h);
            } else {
                return Ok(g);
            }
        }
    }

    fn term(&mut self) -> Result<Graph> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let m = self.number()?;
            let g = self.atom()?;
            return disjoint_copies(&g, m);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Graph> {
        for (key, n, edges) in FIGURES {
            if self.starts_with(key) {
                self.pos += key.chars().count();
                return Graph::from_edges_1based(*n, edges);
            }
        }
        for (key, to) in SYNONYMS {
            // only whole-token synonyms, so `C12(6)` is not mistaken for `C12+`
            if self.starts_with(key) {
                let after = self.pos + key.chars().count();
                if !self.s.get(after).is_some_and(|c| c.is_ascii_digit() || *c == '(') {
                    self.pos = after;
                    return expand(to);
                }
            }
        }
        if self.starts_with("Antip(") {
            self.pos += 6;
            let g = self.expr()?;
            self.expect(')')?;
            let diam = g.distances().diameter().ok_or(Error::Disconnected)?;
            return distance_k_graph(&g, diam);
        }
        if self.starts_with("L(") {
            self.pos += 2;
            let g = self.expr()?;
            self.expect(')')?;
            return line_graph(&g);
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let g = self.expr()?;
                self.expect(')')?;
                Ok(g)
            }
            Some('K') => {
                self.pos += 1;
                Ok(complete(self.number()?))
            }
            Some('P') => {
                self.pos += 1;
                Ok(path(self.number()?))
            }
            Some('E') => {
                self.pos += 1;
                Ok(edgeless(self.number()?))
            }
            Some('C') => {
                self.pos += 1;
                let n = self.number()?;
                let mut chords = Vec::new();
                let mut plus = Vec::new();
                if self.eat('(') {
                    loop {
                        let k = self.number()?;
                        if self.eat('+') {
                            plus.push(k);
                        } else {
                            chords.push(k);
                        }
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                chords.sort_unstable();
                let base = CirculantSpec::new(n, chords)?;
                if plus.is_empty() {
                    build_circulant(&base)
                } else {
                    build_semicirculant(&SemicirculantSpec { base, plus })
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
