//! Structured-text interchange: JSON setup/cocycle/witness documents,
//! the JSON classification report, and DOT output for the graph of `f`.
//!
//! All emission is deterministic: field order is fixed by the struct
//! definitions and collections are kept in canonical order upstream.

use crate::classify::{
    hereditary_oracle, is_hereditary, is_hereditary_allpairs, ClassificationReport, GraphOfF,
};
use crate::cohomology::CoboundaryWitness;
use crate::group::{FiniteGroup, GaloisSetup, GroupError, IdealAction};
use crate::qix::{ExactCocycle, QiRatFunc, QixError};
use crate::valuation::{lemma_check, CocycleError, ValCocycle, ValVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// CLI bound on explicit multiplication tables.
pub const MAX_GROUP_ORDER: usize = 64;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group order {0} exceeds the supported bound {MAX_GROUP_ORDER}")]
    GroupTooLarge(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Qix(#[from] QixError),
    #[error("qix cocycles are only defined over the built-in C2 setup with two swapped ideals")]
    QixSetupMismatch,
    #[error("witness document has wrong shape for the setup")]
    WitnessShape,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SetupDocument {
    pub group: GroupDocument,
    pub ideals: IdealsDocument,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    #[serde(default)]
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdealsDocument {
    pub count: usize,
    pub action: Vec<Vec<usize>>,
}

impl SetupDocument {
    pub fn from_setup(setup: &GaloisSetup) -> Self {
        SetupDocument {
            group: GroupDocument {
                order: setup.order(),
                names: setup.group.names.clone(),
                table: setup.group.table.clone(),
            },
            ideals: IdealsDocument {
                count: setup.ideal_count(),
                action: setup.ideals.perms.clone(),
            },
        }
    }

    pub fn validate(self) -> Result<GaloisSetup, DocError> {
        if self.group.order > MAX_GROUP_ORDER {
            return Err(DocError::GroupTooLarge(self.group.order));
        }
        let group = FiniteGroup::validate(self.group.order, self.group.names, self.group.table)?;
        let ideals = IdealAction::validate(self.ideals.count, self.ideals.action, &group)?;
        Ok(GaloisSetup::new(group, ideals)?)
    }
}

pub fn parse_setup(text: &str) -> Result<GaloisSetup, DocError> {
    let doc: SetupDocument = serde_json::from_str(text)?;
    doc.validate()
}

pub fn emit_setup(setup: &GaloisSetup) -> String {
    serde_json::to_string_pretty(&SetupDocument::from_setup(setup)).expect("setup serializes")
}

/// The three cocycle document models.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum CocycleDocument {
    #[serde(rename = "valuation")]
    Valuation { values: Vec<Vec<Vec<i64>>> },
    #[serde(rename = "qix")]
    Qix { values: Vec<Vec<String>> },
    #[serde(rename = "valuation-witness")]
    Witness { values: Vec<Vec<i64>> },
    /// Exact witness for the built-in C2 backend: `[c_1, c_sigma]`
    /// in the element grammar, with `c_1 = 1`.
    #[serde(rename = "qix-witness")]
    QixWitness { values: Vec<String> },
}

/// What a cocycle document validates to.
#[derive(Debug)]
pub enum ParsedCocycle {
    Valuation(ValCocycle),
    Exact(ExactCocycle, ValCocycle),
    Witness(CoboundaryWitness),
    ExactWitness(Vec<QiRatFunc>),
}

pub fn parse_cocycle(text: &str, setup: &GaloisSetup) -> Result<ParsedCocycle, DocError> {
    let doc: CocycleDocument = serde_json::from_str(text)?;
    match doc {
        CocycleDocument::Valuation { values } => {
            let vals = values
                .into_iter()
                .map(|row| row.into_iter().map(ValVector).collect())
                .collect();
            Ok(ParsedCocycle::Valuation(ValCocycle::validate(setup.clone(), vals)?))
        }
        CocycleDocument::Qix { values } => {
            if *setup != ExactCocycle::setup() {
                return Err(DocError::QixSetupMismatch);
            }
            if values.len() != 2 || values.iter().any(|row| row.len() != 2) {
                return Err(DocError::QixSetupMismatch);
            }
            let parse = |s: &str| crate::qix::parse_element(s);
            let vals = [
                [parse(&values[0][0])?, parse(&values[0][1])?],
                [parse(&values[1][0])?, parse(&values[1][1])?],
            ];
            let exact = ExactCocycle::validate(vals)?;
            let shadow = crate::qix::to_valuation_model(&exact)?;
            Ok(ParsedCocycle::Exact(exact, shadow))
        }
        CocycleDocument::Witness { values } => {
            if values.len() != setup.order()
                || values.iter().any(|row| row.len() != setup.ideal_count())
            {
                return Err(DocError::WitnessShape);
            }
            let cvecs = values.into_iter().map(ValVector).collect();
            CoboundaryWitness::validate(cvecs, setup).map_err(|_| DocError::WitnessShape).map(ParsedCocycle::Witness)
        }
        CocycleDocument::QixWitness { values } => {
            if *setup != ExactCocycle::setup() {
                return Err(DocError::QixSetupMismatch);
            }
            if values.len() != 2 {
                return Err(DocError::WitnessShape);
            }
            let c: Vec<QiRatFunc> = values
                .iter()
                .map(|s| crate::qix::parse_element(s))
                .collect::<Result<_, _>>()?;
            if !c[0].is_one() || c[1].is_zero() {
                return Err(DocError::WitnessShape);
            }
            Ok(ParsedCocycle::ExactWitness(c))
        }
    }
}

pub fn valuation_document(f: &ValCocycle) -> CocycleDocument {
    CocycleDocument::Valuation {
        values: f.vals.iter().map(|row| row.iter().map(|v| v.0.clone()).collect()).collect(),
    }
}

pub fn witness_document(w: &CoboundaryWitness) -> CocycleDocument {
    CocycleDocument::Witness {
        values: w.cvecs.iter().map(|v| v.0.clone()).collect(),
    }
}

pub fn qix_document(f: &ExactCocycle) -> CocycleDocument {
    CocycleDocument::Qix {
        values: f
            .vals
            .iter()
            .map(|row| row.iter().map(QiRatFunc::to_string).collect())
            .collect(),
    }
}

pub fn emit_cocycle(doc: &CocycleDocument) -> String {
    serde_json::to_string_pretty(doc).expect("cocycle serializes")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub h: Vec<usize>,
    pub graph: GraphDocument,
    pub azumaya: bool,
    pub hereditary: bool,
    pub maximal: bool,
    pub radical: Vec<Vec<i64>>,
    pub localizations: Vec<LocalizationDocument>,
    pub witnesses: WitnessesDocument,
    pub cross_checks: CrossChecksDocument,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphDocument {
    pub cosets: Vec<Vec<usize>>,
    pub hasse_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LocalizationDocument {
    pub ideal: usize,
    pub decomposition_group: Vec<usize>,
    pub maximal: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessesDocument {
    /// `(tau, ideal)` with `v_M(f(tau, tau^{-1})) >= 2`, when not hereditary.
    pub hereditary: Option<(usize, usize)>,
    /// `(ideal, coset)` with no unit representative, when not maximal.
    pub maximal: Option<(usize, Vec<usize>)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CrossChecksDocument {
    pub corollary1: bool,
    pub oracle: bool,
    pub lemma: bool,
}

pub fn report_document(f: &ValCocycle, report: &ClassificationReport) -> ReportDocument {
    ReportDocument {
        h: report.h.members.clone(),
        graph: GraphDocument {
            cosets: report.graph.cosets.clone(),
            hasse_edges: report.graph.hasse.clone(),
        },
        azumaya: report.azumaya,
        hereditary: report.hereditary,
        maximal: report.maximal,
        radical: report.radical.iexps.iter().map(|v| v.0.clone()).collect(),
        localizations: report
            .localizations
            .iter()
            .map(|l| LocalizationDocument {
                ideal: l.ideal,
                decomposition_group: l.decomposition_group.members.clone(),
                maximal: l.maximal,
            })
            .collect(),
        witnesses: WitnessesDocument {
            hereditary: report.hereditary_witness,
            maximal: report.maximal_witness.clone(),
        },
        cross_checks: CrossChecksDocument {
            corollary1: is_hereditary_allpairs(f) == is_hereditary(f).0,
            oracle: hereditary_oracle(f) == is_hereditary(f).0,
            lemma: lemma_check(f).is_ok(),
        },
    }
}

pub fn emit_report(report: &ReportDocument) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn coset_label(graph: &GraphOfF, index: usize, group: &FiniteGroup) -> String {
    if index == 0 {
        "H".to_string()
    } else {
        format!("{}H", group.names[graph.cosets[index][0]])
    }
}

/// DOT digraph of the Hasse cover edges, byte-stable for fixed input.
/// The least element `H` is drawn as a box.
pub fn dot_graph(graph: &GraphOfF, group: &FiniteGroup) -> String {
    let mut out = String::from("digraph graph_of_f {\n  rankdir=BT;\n");
    for (i, _) in graph.cosets.iter().enumerate() {
        let shape = if i == 0 { " shape=box" } else { "" };
        out.push_str(&format!(
            "  c{i} [label=\"{}\"{shape}];\n",
            coset_label(graph, i, group)
        ));
    }
    for &(lo, hi) in &graph.hasse {
        out.push_str(&format!("  c{lo} -> c{hi};\n"));
    }
    out.push_str("}\n");
    out
}

/// Human-readable summary of a report.
pub fn render_report_text(f: &ValCocycle, report: &ClassificationReport) -> String {
    let names = &f.setup.group.names;
    let mut out = String::new();
    let h_names: Vec<&str> = report.h.members.iter().map(|&g| names[g].as_str()).collect();
    out.push_str(&format!("H = {{{}}}\n", h_names.join(", ")));
    out.push_str(&format!(
        "graph of f: {} coset(s), cover edges: {}\n",
        report.graph.cosets.len(),
        if report.graph.hasse.is_empty() {
            "none".to_string()
        } else {
            report
                .graph
                .hasse
                .iter()
                .map(|&(a, b)| {
                    format!(
                        "{} -> {}",
                        coset_label(&report.graph, a, &f.setup.group),
                        coset_label(&report.graph, b, &f.setup.group)
                    )
                })
                .collect::<Vec<_>>()
                .join(", ")
        }
    ));
    out.push_str(&format!("azumaya: {}\n", report.azumaya));
    out.push_str(&format!("hereditary: {}", report.hereditary));
    if let Some((tau, m)) = report.hereditary_witness {
        out.push_str(&format!("  (witness: tau={}, ideal M{})", names[tau], m + 1));
    }
    out.push('\n');
    out.push_str(&format!("maximal: {}", report.maximal));
    if let Some((m, coset)) = &report.maximal_witness {
        let coset_names: Vec<&str> = coset.iter().map(|&g| names[g].as_str()).collect();
        out.push_str(&format!(
            "  (witness: ideal M{}, coset {{{}}})",
            m + 1,
            coset_names.join(", ")
        ));
    }
    out.push('\n');
    for (tau, iexp) in report.radical.iexps.iter().enumerate() {
        out.push_str(&format!("I_{} = {:?}\n", names[tau], iexp.0));
    }
    for l in &report.localizations {
        out.push_str(&format!(
            "localization at M{}: |D_M| = {}, maximal: {}\n",
            l.ideal + 1,
            l.decomposition_group.order(),
            l.maximal
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;
    use crate::valuation::example_profile;

    #[test]
    fn setup_round_trip() {
        let setup = GaloisSetup::builtin_example();
        let text = emit_setup(&setup);
        let back = parse_setup(&text).unwrap();
        assert_eq!(back, setup);
    }

    #[test]
    fn valuation_cocycle_round_trip() {
        let f = example_profile(false);
        let text = emit_cocycle(&valuation_document(&f));
        match parse_cocycle(&text, &f.setup).unwrap() {
            ParsedCocycle::Valuation(back) => assert_eq!(back.vals, f.vals),
            other => panic!("wrong model: {other:?}"),
        }
    }

    #[test]
    fn qix_cocycle_round_trip() {
        let f = crate::qix::build_example(crate::qix::ExampleCocycle::F1);
        let text = emit_cocycle(&qix_document(&f));
        let setup = GaloisSetup::builtin_example();
        match parse_cocycle(&text, &setup).unwrap() {
            ParsedCocycle::Exact(back, shadow) => {
                assert_eq!(back, f);
                assert_eq!(shadow.vals[1][1], ValVector(vec![1, 1]));
            }
            other => panic!("wrong model: {other:?}"),
        }
    }

    #[test]
    fn qix_requires_the_builtin_setup() {
        let f = crate::qix::build_example(crate::qix::ExampleCocycle::F1);
        let text = emit_cocycle(&qix_document(&f));
        let g = FiniteGroup::cyclic(2);
        let wrong = GaloisSetup::new(g.clone(), IdealAction::trivial(&g)).unwrap();
        assert!(matches!(
            parse_cocycle(&text, &wrong),
            Err(DocError::QixSetupMismatch)
        ));
    }

    #[test]
    fn witness_round_trip() {
        let setup = GaloisSetup::builtin_example();
        let w = CoboundaryWitness::validate(
            vec![ValVector::zero(2), ValVector(vec![1, 0])],
            &setup,
        )
        .unwrap();
        let text = emit_cocycle(&witness_document(&w));
        match parse_cocycle(&text, &setup).unwrap() {
            ParsedCocycle::Witness(back) => assert_eq!(back, w),
            other => panic!("wrong model: {other:?}"),
        }
    }

    #[test]
    fn dot_output_is_stable() {
        let f = example_profile(false);
        let report = classify::classify(&f).unwrap();
        let dot = dot_graph(&report.graph, &f.setup.group);
        assert_eq!(
            dot,
            "digraph graph_of_f {\n  rankdir=BT;\n  c0 [label=\"H\" shape=box];\n  c1 [label=\"sH\"];\n  c0 -> c1;\n}\n"
        );
    }

    #[test]
    fn report_document_carries_cross_checks() {
        let f = example_profile(true);
        let report = classify::classify(&f).unwrap();
        let doc = report_document(&f, &report);
        assert!(doc.cross_checks.corollary1 && doc.cross_checks.oracle && doc.cross_checks.lemma);
        assert!(!doc.hereditary);
        assert_eq!(doc.witnesses.hereditary, Some((1, 0)));
        let text = emit_report(&doc);
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.h, doc.h);
    }
}
