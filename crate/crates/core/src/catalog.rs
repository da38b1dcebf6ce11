//! The vertex-transitive graphs on twelve vertices up to complements, with
//! their expected classical group orders and quantum-symmetry flags, and a
//! batch runner that checks the decision procedure against them.

use crate::aut::{automorphism_group, DisjointPair};
use crate::engine::{decide, verify_certificate, DecideOptions, Verdict};
use crate::error::Result;
use crate::graph::build_named;
use crate::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subclass {
    Disconnected,
    Product,
    Circulant,
    Semicirculant,
    Special,
    Sanity,
}

impl Subclass {
    pub const ALL: [Subclass; 6] = [
        Subclass::Disconnected,
        Subclass::Product,
        Subclass::Circulant,
        Subclass::Semicirculant,
        Subclass::Special,
        Subclass::Sanity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Subclass::Disconnected => "disconnected",
            Subclass::Product => "product",
            Subclass::Circulant => "circulant",
            Subclass::Semicirculant => "semicirculant",
            Subclass::Special => "special",
            Subclass::Sanity => "sanity",
        }
    }

    pub fn parse(s: &str) -> Option<Subclass> {
        Subclass::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

/// How the classification of an entry is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofKind {
    /// Two non-trivial automorphisms with disjoint supports.
    Disjoint,
    /// Circulant whose eigenvalue function is injective.
    InjectiveF,
    /// Lemma applications the engine reproduces.
    LemmaMechanical,
    /// Lemma arguments that lean on the graph's geometry.
    LemmaStructural,
    /// A product theorem or a result from outside the lemma toolkit.
    External,
    /// Complete or disconnected graphs, settled by standard facts.
    Trivial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub subclass: Subclass,
    /// Input to [`build_named`].
    pub constructor: &'static str,
    pub expected_has_qsym: bool,
    pub expected_aut_order: Option<u64>,
    pub proof_kind: ProofKind,
    /// Display only.
    pub aut_group: &'static str,
    /// Display only; `?` where the group is not known.
    pub qaut_group: &'static str,
    /// A known disjoint pair in cycle notation.
    pub known_witness: Option<(&'static str, &'static str)>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Graph> {
        build_named(self.constructor).map(|g| g.with_label(self.name))
    }
}

const FACT_6: u64 = 720;

#[allow(clippy::too_many_arguments)]
const fn entry(
    name: &'static str,
    subclass: Subclass,
    expected_has_qsym: bool,
    expected_aut_order: u64,
    proof_kind: ProofKind,
    aut_group: &'static str,
    qaut_group: &'static str,
    known_witness: Option<(&'static str, &'static str)>,
) -> CatalogEntry {
    CatalogEntry {
        name,
        subclass,
        constructor: name,
        expected_has_qsym,
        expected_aut_order: Some(expected_aut_order),
        proof_kind,
        aut_group,
        qaut_group,
        known_witness,
    }
}

/// The 37 twelve-vertex entries in table order.
pub fn catalog() -> Vec<CatalogEntry> {
    use ProofKind::*;
    use Subclass::*;
    vec![
        entry("6K2", Disconnected, true, 64 * FACT_6, Trivial, "Z2 wr S6", "Z2 wr* S6+", None),
        entry("4K3", Disconnected, true, 1296 * 24, Trivial, "S3 wr S4", "S3 wr* S4+", None),
        entry("3K4", Disconnected, true, 13824 * 6, Trivial, "S4 wr S3", "S4+ wr* S3", None),
        entry("3C4", Disconnected, true, 512 * 6, Trivial, "H2 wr S3", "H2+ wr* S3", None),
        entry("2K6", Disconnected, true, FACT_6 * FACT_6 * 2, Trivial, "S6 wr Z2", "S6+ wr* Z2", None),
        entry("2C6", Disconnected, true, 144 * 2, Trivial, "D6 wr Z2", "D6 wr* Z2", None),
        entry("2(K2xK3)", Disconnected, true, 144 * 2, Trivial, "D6 wr Z2", "D6 wr* Z2", None),
        entry("2C6(2)", Disconnected, true, 48 * 48 * 2, Trivial, "(Z2 wr S3) wr Z2", "(Z2 wr* S3) wr* Z2", None),
        entry("2C6(3)", Disconnected, true, 72 * 72 * 2, Trivial, "(S3 wr Z2) wr Z2", "(S3 wr* Z2) wr* Z2", None),
        entry("K6*K2", Product, true, FACT_6 * 2, External, "S6 x Z2", "S6+ x Z2", None),
        entry("K3*K4", Product, true, 6 * 24, External, "S3 x S4", "S3 x S4+", None),
        entry("C4xC3", Product, true, 8 * 6, External, "H2 x S3", "H2+ x S3", None),
        entry("K2xC6(3)", Product, true, 2 * 72, External, "Z2 x (S3 wr Z2)", "Z2 x (S3 wr* Z2)", None),
        entry("K2xC6", Product, false, 2 * 12, LemmaMechanical, "Z2 x D6", "Z2 x D6", None),
        entry(
            "K2xC6(2)",
            Product,
            true,
            2 * 48,
            Disjoint,
            "Z2 x (Z2 wr S3)",
            "?",
            Some(("(1 4)(7 10)", "(2 5)(8 11)")),
        ),
        entry("C12", Circulant, false, 24, InjectiveF, "D12", "D12", None),
        entry("C12(3)", Circulant, false, 24, InjectiveF, "D12", "D12", None),
        entry("C12(6)", Circulant, false, 24, InjectiveF, "D12", "D12", None),
        entry("K12", Circulant, true, 479_001_600, Trivial, "S12", "S12+", None),
        entry("C12(5)", Circulant, true, 768, Disjoint, "A", "?", Some(("(1 7)", "(4 10)"))),
        entry(
            "C12(4,5)",
            Circulant,
            true,
            48,
            Disjoint,
            "H2 x S3",
            "H2+ x S3",
            Some(("(1 7)(3 9)(5 11)", "(2 8)(4 10)(6 12)")),
        ),
        entry("C12(5,6)", Circulant, true, 768, Disjoint, "A", "?", Some(("(1 7)", "(4 10)"))),
        entry("C12(2)", Circulant, false, 24, LemmaMechanical, "D12", "D12", None),
        entry("C12(4)", Circulant, false, 24, LemmaMechanical, "D12", "D12", None),
        entry("C12(2,6)", Circulant, false, 24, LemmaMechanical, "D12", "D12", None),
        entry("C12(3,6)", Circulant, false, 24, LemmaMechanical, "D12", "D12", None),
        entry("C12(4,6)", Circulant, false, 24, LemmaMechanical, "D12", "D12", None),
        entry("C12(5+)", Semicirculant, true, 48, Disjoint, "H3", "?", Some(("(1 7)(2 8)", "(3 9)(4 10)"))),
        entry(
            "C12(3+,6)",
            Semicirculant,
            true,
            48,
            Disjoint,
            "H2 x S3",
            "H2+ x S3",
            Some(("(2 7)(3 10)(6 11)", "(1 8)(4 9)(5 12)")),
        ),
        entry("C12(5+,6)", Semicirculant, true, 48, Disjoint, "H3", "?", Some(("(1 7)(2 8)", "(3 9)(4 10)"))),
        entry("C12(2,5+)", Semicirculant, false, 12, LemmaMechanical, "D6", "D6", None),
        entry("C12(4,5+)", Semicirculant, false, 12, LemmaMechanical, "D6", "D6", None),
        entry("Cuboctahedron", Special, false, 48, LemmaStructural, "H3", "H3", None),
        entry("L(C6(2))", Special, false, 48, LemmaMechanical, "H3", "H3", None),
        entry("Icosahedron", Special, false, 120, External, "Z2 x A5", "Z2 x A5", None),
        entry("TruncK4", Special, false, 24, LemmaStructural, "S4", "S4", None),
        entry("Antip(TruncK4)", Special, false, 24, LemmaStructural, "S4", "S4", None),
    ]
}

/// Small graphs with well-known answers, outside the twelve-vertex table.
pub fn sanity_entries() -> Vec<CatalogEntry> {
    use ProofKind::*;
    use Subclass::Sanity;
    vec![
        entry("C5", Sanity, false, 10, LemmaMechanical, "D5", "D5", None),
        entry("K3", Sanity, false, 6, Trivial, "S3", "S3", None),
        entry("C4", Sanity, true, 8, Disjoint, "H2", "H2+", Some(("(1 3)", "(2 4)"))),
        entry("Petersen", Sanity, false, 120, External, "S5", "S5", None),
    ]
}

/// Looks up an entry by name in the table and the sanity list.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().chain(sanity_entries()).find(|e| e.name == name)
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub decide: DecideOptions,
    /// Worker threads; 0 picks the default.
    pub jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Verified,
    Rejected,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub subclass: Subclass,
    pub vertices: usize,
    pub edges: usize,
    pub degree: Option<usize>,
    pub aut_order: Option<u64>,
    pub expected_aut_order: Option<u64>,
    pub aut_group: String,
    pub qaut_group: String,
    pub verdict: String,
    pub has_qsym: Option<bool>,
    pub expected_has_qsym: bool,
    /// A decided verdict disagreeing with the expected flag.
    pub contradiction: bool,
    pub aut_mismatch: bool,
    pub certificate: CertificateStatus,
    pub witness: Option<(String, String)>,
    pub undecided_reason: Option<String>,
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubclassSummary {
    pub subclass: Subclass,
    pub entries: usize,
    pub with_qsym: usize,
    pub without_qsym: usize,
    pub undecided: usize,
    pub contradictions: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SubclassSummary>,
}

fn run_entry(e: &CatalogEntry, opts: &DecideOptions) -> ReportRow {
    let started = Instant::now();
    let mut row = ReportRow {
        name: e.name.to_string(),
        subclass: e.subclass,
        vertices: 0,
        edges: 0,
        degree: None,
        aut_order: None,
        expected_aut_order: e.expected_aut_order,
        aut_group: e.aut_group.to_string(),
        qaut_group: e.qaut_group.to_string(),
        verdict: "Error".to_string(),
        has_qsym: None,
        expected_has_qsym: e.expected_has_qsym,
        contradiction: false,
        aut_mismatch: false,
        certificate: CertificateStatus::NotApplicable,
        witness: None,
        undecided_reason: None,
        error: None,
        elapsed_ms: 0.0,
    };
    let g = match e.build() {
        Ok(g) => g,
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.vertices = g.n();
    row.edges = g.edge_count();
    row.degree = g.regular_degree();
    match automorphism_group(&g) {
        Ok(grp) => {
            row.aut_order = Some(grp.order());
            row.aut_mismatch = e.expected_aut_order.is_some_and(|x| x != grp.order());
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    match decide(&g, opts) {
        Ok(v) => {
            row.verdict = v.name().to_string();
            row.has_qsym = v.has_quantum_symmetry();
            row.contradiction = row.has_qsym.is_some_and(|h| h != e.expected_has_qsym);
            match v {
                Verdict::HasQuantumSymmetry { witness: DisjointPair { sigma, tau } } => {
                    row.witness = Some((sigma.to_string(), tau.to_string()));
                }
                Verdict::NoQuantumSymmetry { certificate } => {
                    row.certificate = match verify_certificate(&g, &certificate) {
                        Ok(()) => CertificateStatus::Verified,
                        Err(_) => CertificateStatus::Rejected,
                    };
                }
                Verdict::Undecided { reason, .. } => row.undecided_reason = Some(reason),
            }
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    row.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    row
}

/// Runs every entry independently; failures are recorded per row.
pub fn run_report(entries: &[CatalogEntry], opts: &ReportOptions) -> Report {
    let work = || entries.par_iter().map(|e| run_entry(e, &opts.decide)).collect::<Vec<_>>();
    let rows = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => entries.iter().map(|e| run_entry(e, &opts.decide)).collect(),
    };
    let summary = Subclass::ALL
        .into_iter()
        .filter_map(|c| {
            let in_class: Vec<&ReportRow> = rows.iter().filter(|r| r.subclass == c).collect();
            (!in_class.is_empty()).then(|| SubclassSummary {
                subclass: c,
                entries: in_class.len(),
                with_qsym: in_class.iter().filter(|r| r.has_qsym == Some(true)).count(),
                without_qsym: in_class.iter().filter(|r| r.has_qsym == Some(false)).count(),
                undecided: in_class.iter().filter(|r| r.has_qsym.is_none()).count(),
                contradictions: in_class.iter().filter(|r| r.contradiction).count(),
            })
        })
        .collect();
    Report { rows, summary }
}

impl Report {
    pub fn contradictions(&self) -> usize {
        self.rows.iter().filter(|r| r.contradiction).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "| Graph | Automorphism group | Order | Quantum automorphism group | Verdict | Expected | Certificate | ms |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
        for r in &self.rows {
            let order = match (r.aut_order, r.aut_mismatch) {
                (Some(o), false) => o.to_string(),
                (Some(o), true) => format!("{o} (expected {})", r.expected_aut_order.unwrap_or_default()),
                (None, _) => "-".into(),
            };
            let verdict = match (&r.error, r.contradiction) {
                (Some(e), _) => format!("error: {e}"),
                (None, true) => format!("{} (CONTRADICTION)", r.verdict),
                (None, false) => r.verdict.clone(),
            };
            let expected = if r.expected_has_qsym { "quantum" } else { "classical" };
            let cert = match r.certificate {
                CertificateStatus::Verified => "verified",
                CertificateStatus::Rejected => "REJECTED",
                CertificateStatus::NotApplicable => "-",
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {:.1} |",
                r.name, r.aut_group, order, r.qaut_group, verdict, expected, cert, r.elapsed_ms
            );
        }
        if !self.summary.is_empty() {
            let _ = writeln!(out, "\n| Subclass | Entries | Quantum | Classical | Undecided | Contradictions |");
            let _ = writeln!(out, "|---|---|---|---|---|---|");
            for s in &self.summary {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    s.subclass.as_str(),
                    s.entries,
                    s.with_qsym,
                    s.without_qsym,
                    s.undecided,
                    s.contradictions
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn table_shape() {
        let c = catalog();
        assert_eq!(c.len(), 37);
        let count = |s: Subclass| c.iter().filter(|e| e.subclass == s).count();
        assert_eq!(
            [count(Subclass::Disconnected), count(Subclass::Product), count(Subclass::Circulant)],
            [9, 6, 12]
        );
        assert_eq!([count(Subclass::Semicirculant), count(Subclass::Special)], [5, 5]);
        let names: HashSet<_> = c.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), 37);
        assert_eq!(c.iter().filter(|e| e.expected_has_qsym).count(), 21);
    }

    #[test]
    fn spot_entries() {
        let e = find_entry("C12(4,5)").unwrap();
        assert!(e.expected_has_qsym);
        assert_eq!(e.proof_kind, ProofKind::Disjoint);
        let e = find_entry("Icosahedron").unwrap();
        assert!(!e.expected_has_qsym);
        assert_eq!(e.proof_kind, ProofKind::External);
        let e = find_entry("C12(2,5+)").unwrap();
        assert_eq!((e.expected_has_qsym, e.expected_aut_order), (false, Some(12)));
        assert!(find_entry("C13").is_none());
    }

    #[test]
    fn every_entry_builds_on_twelve_vertices() {
        for e in catalog() {
            let g = e.build().unwrap();
            assert_eq!(g.n(), 12, "{}", e.name);
            assert_eq!(g.label(), Some(e.name));
        }
    }

    #[test]
    fn empty_report() {
        let r = run_report(&[], &ReportOptions::default());
        assert!(r.rows.is_empty() && r.summary.is_empty());
        assert_eq!(r.contradictions(), 0);
    }

    #[test]
    fn sanity_report() {
        let r = run_report(&sanity_entries(), &ReportOptions { jobs: 2, ..Default::default() });
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.contradictions(), 0);
        let md = r.to_markdown();
        assert!(md.contains("| C5 | D5 | 10 |"), "{md}");
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["rows"][0]["name"], "C5");
        assert_eq!(json["summary"][0]["subclass"], "sanity");
    }
}
