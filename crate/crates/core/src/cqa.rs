//! Conjunctive query answering: per-branch decision trees, their union over
//! the open branches, the naive candidate-by-candidate method and the map
//! back to DL substitutions.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::TableauError;
use crate::model::{DlSubstitution, DlValue};
use crate::tableau::{
    explore, extract_model, saturate_from, Branch, BranchModel, Context, Flow, Saturation, TableauConfig, TableauStats,
};
use crate::translate::{sexpr, GroundLiteral, Literal, PsiQ, QTerm, Var0Origin, VarTable, V0};

/// A total or partial map from query variables (by index) to level-0
/// variables.
pub type Binding = Vec<Option<V0>>;

/// A total substitution `σ′`, indexed like [`PsiQ::vars`].
pub type Answer = Vec<V0>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DecisionMode {
    /// Positive conjuncts must be literals on the branch; negative and
    /// equality conjuncts are evaluated in the branch model.
    BranchOnly,
    /// Conjuncts undecided on the branch are admitted, and a leaf is kept
    /// when the branch extended with its undecided literals saturates open.
    #[default]
    Extend,
}

#[derive(Clone, Debug)]
pub struct CqaConfig {
    pub mode: DecisionMode,
    pub threads: usize,
    pub tableau: TableauConfig,
}

impl Default for CqaConfig {
    fn default() -> Self {
        CqaConfig { mode: DecisionMode::Extend, threads: 1, tableau: TableauConfig::default() }
    }
}

/// Positive literals first, otherwise in input order.
pub fn order_literals(psi: &PsiQ) -> Vec<Literal<QTerm>> {
    let mut lits = psi.literals.clone();
    lits.sort_by_key(|l| !l.positive);
    lits
}

fn vars_of(l: &Literal<QTerm>) -> impl Iterator<Item = usize> + '_ {
    l.atom.terms().filter_map(|t| match t {
        QTerm::Var(i) => Some(i as usize),
        QTerm::Const(_) => None,
    })
}

/// `qσ′` for a binding covering every variable of `q`.
pub fn ground_literal(q: &Literal<QTerm>, sigma: &Binding) -> GroundLiteral {
    q.map(|t| match t {
        QTerm::Var(i) => sigma[i as usize].expect("query variable bound"),
        QTerm::Const(v) => v,
    })
}

/// A node of `𝒟_ϑ`: level `i` binds the variables of the first `i`
/// conjuncts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionNode {
    pub level: usize,
    pub sigma: Binding,
    pub children: Vec<DecisionNode>,
}

impl DecisionNode {
    /// Substitutions at the leaves of level `d`.
    pub fn answers(&self, d: usize) -> Vec<Answer> {
        let mut out = Vec::new();
        self.collect(d, &mut out);
        out
    }

    fn collect(&self, d: usize, out: &mut Vec<Answer>) {
        if self.level == d {
            out.push(self.sigma.iter().map(|v| v.expect("total at level d")).collect());
        }
        for c in &self.children {
            c.collect(d, out);
        }
    }
}

/// Candidate values for query variables: every level-0 variable.
fn candidates(ctx: &Context) -> Vec<V0> {
    (0..ctx.k() as u32).map(V0).collect()
}

/// `𝒮_q`: the extensions of `sigma` over the variables of `q` that pass the
/// mode's test on `ϑ`.
pub fn match_conjunct(
    ctx: &Context,
    branch: &Branch,
    model: Option<&BranchModel>,
    q: &Literal<QTerm>,
    sigma: &Binding,
    mode: DecisionMode,
) -> Vec<Binding> {
    let free: Vec<usize> = {
        let mut v: Vec<usize> = vars_of(q).filter(|&i| sigma[i].is_none()).collect();
        v.dedup();
        v
    };
    let domain = candidates(ctx);
    let mut out = Vec::new();
    let mut s = sigma.clone();
    let mut idx = vec![0usize; free.len()];
    loop {
        for (j, &i) in free.iter().enumerate() {
            s[i] = Some(domain[idx[j]]);
        }
        let g = ground_literal(q, &s);
        let keep = match mode {
            DecisionMode::BranchOnly if q.positive && !matches!(q.atom, crate::translate::Atom::Eq(..)) => {
                branch.value(ctx, &g) == Some(true)
            }
            DecisionMode::BranchOnly => model.expect("branch model in branch-only mode").holds(&g),
            DecisionMode::Extend => branch.value(ctx, &g) != Some(false),
        };
        if keep {
            out.push(s.clone());
        }
        let mut j = 0;
        loop {
            if j == free.len() {
                return out;
            }
            idx[j] += 1;
            if idx[j] < domain.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Builds `𝒟_ϑ` over the conjuncts of `psi` in positive-first order.
pub fn decision_tree(
    ctx: &Context,
    branch: &Branch,
    psi: &PsiQ,
    mode: DecisionMode,
) -> Result<DecisionNode, TableauError> {
    let model = match mode {
        DecisionMode::BranchOnly => Some(extract_model(ctx, branch)?),
        DecisionMode::Extend if branch.is_closed() || !branch.is_complete(ctx) => {
            return Err(TableauError::BranchNotComplete);
        }
        DecisionMode::Extend => None,
    };
    let lits = order_literals(psi);
    fn grow(
        ctx: &Context,
        branch: &Branch,
        model: Option<&BranchModel>,
        lits: &[Literal<QTerm>],
        node: &mut DecisionNode,
        mode: DecisionMode,
    ) {
        if node.level == lits.len() {
            return;
        }
        for sigma in match_conjunct(ctx, branch, model, &lits[node.level], &node.sigma, mode) {
            let mut child = DecisionNode { level: node.level + 1, sigma, children: Vec::new() };
            grow(ctx, branch, model, lits, &mut child, mode);
            node.children.push(child);
        }
    }
    let mut root = DecisionNode { level: 0, sigma: vec![None; psi.vars.len()], children: Vec::new() };
    grow(ctx, branch, model.as_ref(), &lits, &mut root, mode);
    Ok(root)
}

/// `Σ′_ϑ`. In `Extend` mode each leaf is confirmed by saturating `ϑ`
/// extended with `ψ_Q σ′`; answers already in `known` are not re-checked.
pub fn branch_answers(
    ctx: &Context,
    branch: &Branch,
    psi: &PsiQ,
    cfg: &CqaConfig,
    known: &BTreeSet<Answer>,
) -> Result<BTreeSet<Answer>, TableauError> {
    let tree = decision_tree(ctx, branch, psi, cfg.mode)?;
    let mut out = BTreeSet::new();
    let sat =
        TableauConfig { mode: crate::tableau::SearchMode::Sat, audit: false, trace: false, ..cfg.tableau.clone() };
    for ans in tree.answers(psi.literals.len()) {
        if known.contains(&ans) || out.contains(&ans) {
            continue;
        }
        if cfg.mode == DecisionMode::Extend {
            let sigma: Binding = ans.iter().map(|&v| Some(v)).collect();
            let lits: Vec<GroundLiteral> = psi.literals.iter().map(|q| ground_literal(q, &sigma)).collect();
            if !lits.iter().all(|l| branch.value(ctx, l) == Some(true)) {
                let mut b = branch.clone();
                for l in &lits {
                    b.assign(ctx, l);
                }
                if b.is_closed() || !saturate_from(ctx, b, &sat)?.is_satisfiable() {
                    continue;
                }
            }
        }
        out.insert(ans);
    }
    Ok(out)
}

/// `Σ′`: the union of `Σ′_ϑ` over the open branches of a complete tableau.
pub fn answer_set(
    ctx: &Context,
    tableau: &Saturation,
    psi: &PsiQ,
    cfg: &CqaConfig,
) -> Result<BTreeSet<Answer>, TableauError> {
    if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| TableauError::PreconditionViolated(e.to_string()))?;
        let parts: Vec<BTreeSet<Answer>> = pool.install(|| {
            tableau
                .open
                .par_iter()
                .map(|b| branch_answers(ctx, b, psi, cfg, &BTreeSet::new()))
                .collect::<Result<_, _>>()
        })?;
        return Ok(parts.into_iter().flatten().collect());
    }
    let mut out = BTreeSet::new();
    for b in &tableau.open {
        let found = branch_answers(ctx, b, psi, cfg, &out)?;
        out.extend(found);
    }
    Ok(out)
}

/// `Σ′` computed while the tableau is built: each open complete branch is
/// handed to the decision procedure as soon as it is reached, so no more than
/// one batch of branches is held at a time.
pub fn streamed_answer_set(
    ctx: &Context,
    psi: &PsiQ,
    cfg: &CqaConfig,
) -> Result<(BTreeSet<Answer>, TableauStats), TableauError> {
    let all = TableauConfig { mode: crate::tableau::SearchMode::AllModels, ..cfg.tableau.clone() };
    let total = (ctx.k() as u64).saturating_pow(psi.vars.len() as u32);
    let mut out = BTreeSet::new();
    if cfg.threads <= 1 {
        let t = explore(ctx, Branch::root(ctx), &all, |b| {
            let found = branch_answers(ctx, b, psi, cfg, &out)?;
            out.extend(found);
            Ok(if out.len() as u64 == total { Flow::Stop } else { Flow::Continue })
        })?;
        return Ok((out, t.stats));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| TableauError::PreconditionViolated(e.to_string()))?;
    let mut batch: Vec<Branch> = Vec::new();
    let flush = |batch: &mut Vec<Branch>, out: &mut BTreeSet<Answer>| -> Result<(), TableauError> {
        let known = &*out;
        let parts: Vec<BTreeSet<Answer>> = pool
            .install(|| batch.par_iter().map(|b| branch_answers(ctx, b, psi, cfg, known)).collect::<Result<_, _>>())?;
        out.extend(parts.into_iter().flatten());
        batch.clear();
        Ok(())
    };
    let t = explore(ctx, Branch::root(ctx), &all, |b| {
        batch.push(b.clone());
        if batch.len() >= STREAM_BATCH {
            flush(&mut batch, &mut out)?;
        }
        Ok(if out.len() as u64 == total { Flow::Stop } else { Flow::Continue })
    })?;
    flush(&mut batch, &mut out)?;
    Ok((out, t.stats))
}

const STREAM_BATCH: usize = 1024;

/// The naive method: one satisfiability test of `Φ ∪ ψ_Q σ′` per candidate
/// `σ′` over all level-0 variables. Returns the answers and the number of
/// tests run.
pub fn naive_answers(ctx: &Context, psi: &PsiQ, cfg: &TableauConfig) -> Result<(BTreeSet<Answer>, u64), TableauError> {
    let n = psi.vars.len();
    let domain = candidates(ctx);
    let sat = TableauConfig { mode: crate::tableau::SearchMode::Sat, audit: false, trace: false, ..cfg.clone() };
    let mut out = BTreeSet::new();
    let mut tests = 0u64;
    if domain.is_empty() && n > 0 {
        return Ok((out, 0));
    }
    let mut idx = vec![0usize; n];
    loop {
        let sigma: Binding = idx.iter().map(|&i| Some(domain[i])).collect();
        let mut b = Branch::root(ctx);
        for q in &psi.literals {
            b.assign(ctx, &ground_literal(q, &sigma));
        }
        tests += 1;
        if !b.is_closed() && saturate_from(ctx, b, &sat)?.is_satisfiable() {
            out.insert(sigma.iter().map(|v| v.unwrap()).collect());
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok((out, tests));
            }
            idx[j] += 1;
            if idx[j] < domain.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Inverts the variable map; answers binding a witness are dropped.
pub fn map_back(answers: &BTreeSet<Answer>, psi: &PsiQ, vars: &VarTable) -> BTreeSet<DlSubstitution> {
    answers
        .iter()
        .filter_map(|a| {
            let mut s = DlSubstitution::new();
            for (name, &v) in psi.vars.iter().zip(a) {
                let value = match vars.origin0(v) {
                    Var0Origin::Individual(x) => DlValue::Individual(x.clone()),
                    Var0Origin::Constant(e) => DlValue::Constant(e.clone()),
                    Var0Origin::Witness(_) => return None,
                };
                s = s.bind(name.as_str(), value);
            }
            Some(s)
        })
        .collect()
}

/// Answers as `v1=x:a, v2=w:I` lines, witnesses included.
pub fn render_raw(answers: &BTreeSet<Answer>, psi: &PsiQ, vars: &VarTable) -> Vec<String> {
    answers
        .iter()
        .map(|a| {
            let parts: Vec<String> =
                psi.vars.iter().zip(a).map(|(n, &v)| format!("{n}={}", sexpr::var0(vars, v))).collect();
            if parts.is_empty() {
                "{}".to_string()
            } else {
                parts.join(", ")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{build_phi, DEFAULT_CLAUSE_BUDGET};
    use crate::normalize::normalize_kb;
    use crate::parser::{parse_kb, parse_query};
    use crate::tableau::saturate;
    use crate::translate::{theta_query, translate_kb, TranslationMode};

    struct Fixture {
        ctx: Context,
        vars: VarTable,
        tableau: Saturation,
        kb: crate::model::KnowledgeBase,
    }

    fn fixture(text: &str) -> Fixture {
        let kb = parse_kb(text).unwrap();
        let (norm, _) = normalize_kb(&kb).unwrap();
        let phi = translate_kb(&norm, TranslationMode::Corrected).unwrap();
        let g = build_phi(&phi, DEFAULT_CLAUSE_BUDGET).unwrap();
        let ctx = Context::from_grounding(&g);
        let tableau = saturate(&ctx, &TableauConfig::all_models()).unwrap();
        Fixture { ctx, vars: g.vars, tableau, kb }
    }

    fn psi(f: &Fixture, q: &str) -> PsiQ {
        theta_query(&parse_query(q, &f.kb.signature).unwrap(), &f.vars).unwrap()
    }

    fn lines(f: &Fixture, p: &PsiQ, a: &BTreeSet<Answer>) -> Vec<String> {
        map_back(a, p, &f.vars).iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn positive_match() {
        let f = fixture("concept A. individual a, b, c. assert a : A. assert b : A. assert c : not A.");
        let p = psi(&f, "A(?v)");
        let a = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        assert_eq!(lines(&f, &p, &a), vec!["v=a", "v=b"]);
        let (n, _) = naive_answers(&f.ctx, &p, &TableauConfig::default()).unwrap();
        assert_eq!(a, n);
    }

    #[test]
    fn negative_literal_uses_other_models() {
        let f = fixture("concept A. individual a, b. assert a : A.");
        let p = psi(&f, "not A(?v)");
        let brave = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        assert_eq!(lines(&f, &p, &brave), vec!["v=b"]);
        let (n, _) = naive_answers(&f.ctx, &p, &TableauConfig::default()).unwrap();
        assert_eq!(brave, n);
    }

    #[test]
    fn naive_test_count_is_k_to_the_n() {
        let f = fixture("concept A. individual a. assert a : A.");
        let p = psi(&f, "A(?v)");
        let (_, tests) = naive_answers(&f.ctx, &p, &TableauConfig::default()).unwrap();
        assert_eq!(tests, f.ctx.k() as u64);
        let p2 = psi(&f, "A(?v) and A(?u)");
        let (_, tests) = naive_answers(&f.ctx, &p2, &TableauConfig::default()).unwrap();
        assert_eq!(tests, (f.ctx.k() * f.ctx.k()) as u64);
    }

    #[test]
    fn ground_query_and_inconsistent_kb() {
        let f = fixture("concept A. individual a. assert a : A.");
        let p = psi(&f, "A(a)");
        let a = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        assert_eq!(lines(&f, &p, &a), vec!["{}"]);
        let f = fixture("concept A. individual a. assert a : A. assert a : not A.");
        let p = psi(&f, "A(?v)");
        assert!(answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn branch_only_is_sound() {
        let f = fixture("concept A, B. arole R. individual a, b. assert a : A. assert (a, b) : R. axiom A sub B.");
        let p = psi(&f, "R(?x, ?y) and B(?x)");
        let cfg = CqaConfig { mode: DecisionMode::BranchOnly, ..CqaConfig::default() };
        let only = answer_set(&f.ctx, &f.tableau, &p, &cfg).unwrap();
        let full = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        assert!(only.is_subset(&full));
        assert_eq!(lines(&f, &p, &only), vec!["x=a, y=b"]);
        for b in &f.tableau.open {
            let m = extract_model(&f.ctx, b).unwrap();
            let tree = decision_tree(&f.ctx, b, &p, DecisionMode::BranchOnly).unwrap();
            for ans in tree.answers(p.literals.len()) {
                let s: Binding = ans.iter().map(|&v| Some(v)).collect();
                assert!(p.literals.iter().all(|q| m.holds(&ground_literal(q, &s))));
            }
        }
    }

    #[test]
    fn witnesses_dropped_unless_raw() {
        let f = fixture("concept A. individual a.");
        let p = psi(&f, "?v = ?v");
        let a = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        assert_eq!(lines(&f, &p, &a), vec!["v=a"]);
        assert!(render_raw(&a, &p, &f.vars).iter().any(|l| l.contains("w:I")));
    }

    #[test]
    fn threads_agree() {
        let f = fixture("concept A, B. individual a, b. axiom A equiv not B.");
        let p = psi(&f, "A(?v) and not B(?u)");
        let one = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig::default()).unwrap();
        let four = answer_set(&f.ctx, &f.tableau, &p, &CqaConfig { threads: 4, ..CqaConfig::default() }).unwrap();
        assert_eq!(one, four);
    }
}
