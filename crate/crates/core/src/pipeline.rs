//! End-to-end runs: normalization, translation, grounding, saturation and
//! query answering.

use std::collections::BTreeSet;

use crate::cqa::{self, Answer, CqaConfig, DecisionMode};
use crate::error::Result;
use crate::ground::{build_phi, Grounding, DEFAULT_CLAUSE_BUDGET};
use crate::model::{DlSubstitution, KnowledgeBase, Query, DEFAULT_CARDINALITY_CAP};
use crate::normalize::{normalize_kb_with_cap, NameTable};
use crate::tableau::{saturate, Context, Saturation, SearchMode, TableauConfig, TableauStats, DEFAULT_BRANCH_BUDGET};
use crate::translate::{theta_query, translate_kb, PhiKB, PsiQ, TranslationMode};

#[derive(Clone, Debug)]
pub struct Config {
    pub mode: TranslationMode,
    pub cardinality_cap: u32,
    pub clause_budget: u64,
    pub branch_budget: u64,
    pub audit: bool,
    pub trace: bool,
    pub threads: usize,
    pub decision: DecisionMode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: TranslationMode::Corrected,
            cardinality_cap: DEFAULT_CARDINALITY_CAP,
            clause_budget: DEFAULT_CLAUSE_BUDGET,
            branch_budget: DEFAULT_BRANCH_BUDGET,
            audit: false,
            trace: false,
            threads: 1,
            decision: DecisionMode::Extend,
        }
    }
}

impl Config {
    pub fn tableau(&self, mode: SearchMode) -> TableauConfig {
        TableauConfig { mode, branch_budget: self.branch_budget, audit: self.audit, trace: self.trace }
    }

    pub fn cqa(&self) -> CqaConfig {
        CqaConfig { mode: self.decision, threads: self.threads, tableau: self.tableau(SearchMode::Sat) }
    }
}

/// Every intermediate artefact of one knowledge base.
#[derive(Debug)]
pub struct Prepared {
    pub normalized: KnowledgeBase,
    pub names: NameTable,
    pub phi: PhiKB,
    pub grounding: Grounding,
    pub context: Context,
}

pub fn prepare(kb: &KnowledgeBase, cfg: &Config) -> Result<Prepared> {
    let (normalized, names) = normalize_kb_with_cap(kb, cfg.cardinality_cap)?;
    let phi = translate_kb(&normalized, cfg.mode)?;
    let grounding = build_phi(&phi, cfg.clause_budget)?;
    let context = Context::from_grounding(&grounding);
    Ok(Prepared { normalized, names, phi, grounding, context })
}

/// The outcome of a query under one or both engines.
#[derive(Clone, Debug, Default)]
pub struct QueryOutcome {
    pub tableau: Option<BTreeSet<Answer>>,
    pub tableau_stats: Option<TableauStats>,
    pub naive: Option<BTreeSet<Answer>>,
    pub naive_tests: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    Naive,
    #[default]
    Tableau,
    Both,
}

impl Prepared {
    /// Saturation in `Sat` mode: open iff the knowledge base is consistent.
    pub fn check(&self, cfg: &Config) -> Result<Saturation> {
        Ok(saturate(&self.context, &cfg.tableau(SearchMode::Sat))?)
    }

    pub fn saturate_all(&self, cfg: &Config) -> Result<Saturation> {
        Ok(saturate(&self.context, &cfg.tableau(SearchMode::AllModels))?)
    }

    pub fn psi(&self, q: &Query) -> Result<PsiQ> {
        Ok(theta_query(q, &self.grounding.vars)?)
    }

    pub fn query(&self, psi: &PsiQ, engine: Engine, cfg: &Config) -> Result<QueryOutcome> {
        let mut out = QueryOutcome::default();
        if engine != Engine::Naive {
            let (a, stats) = cqa::streamed_answer_set(&self.context, psi, &cfg.cqa())?;
            out.tableau = Some(a);
            out.tableau_stats = Some(stats);
        }
        if engine != Engine::Tableau {
            let (a, n) = cqa::naive_answers(&self.context, psi, &cfg.tableau(SearchMode::Sat))?;
            out.naive = Some(a);
            out.naive_tests = n;
        }
        Ok(out)
    }

    pub fn map_back(&self, answers: &BTreeSet<Answer>, psi: &PsiQ) -> BTreeSet<DlSubstitution> {
        cqa::map_back(answers, psi, &self.grounding.vars)
    }
}

/// Consistency of `kb` through the tableau.
pub fn consistent(kb: &KnowledgeBase, cfg: &Config) -> Result<bool> {
    Ok(prepare(kb, cfg)?.check(cfg)?.is_satisfiable())
}

/// Answers of `q` through the tableau, as DL substitutions.
pub fn answers(kb: &KnowledgeBase, q: &Query, cfg: &Config) -> Result<BTreeSet<DlSubstitution>> {
    let p = prepare(kb, cfg)?;
    let psi = p.psi(q)?;
    let out = p.query(&psi, Engine::Tableau, cfg)?;
    Ok(p.map_back(&out.tableau.unwrap_or_default(), &psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_kb, parse_query};

    #[test]
    fn end_to_end() {
        let kb = parse_kb("concept A, B. individual a. assert a : A. axiom A equiv not B.").unwrap();
        let cfg = Config::default();
        assert!(consistent(&kb, &cfg).unwrap());
        let q = parse_query("not B(?v)", &kb.signature).unwrap();
        let got: Vec<String> = answers(&kb, &q, &cfg).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["v=a"]);
        let bad = parse_kb("concept A, B. individual a. assert a : A. assert a : B. axiom A equiv not B.").unwrap();
        assert!(!consistent(&bad, &cfg).unwrap());
    }

    #[test]
    fn models_of_open_branches() {
        let kb =
            parse_kb("concept A, B. arole R. individual a, b. assert (a, b) : R. axiom some R . A sub B.").unwrap();
        let cfg = Config::default();
        let p = prepare(&kb, &cfg).unwrap();
        let t = p.saturate_all(&cfg).unwrap();
        assert!(!t.open.is_empty());
        for b in &t.open {
            let m = crate::tableau::extract_model(&p.context, b).unwrap();
            assert_eq!(m.violation(&p.grounding.clauses), None);
        }
    }
}
