use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use dlqs_core::corpus::{self, Bounds};
use dlqs_core::cqa::{self, answer_set, branch_answers, naive_answers, streamed_answer_set, CqaConfig, DecisionMode};
use dlqs_core::ground::{canonical_clause, distribute_and_rename, expand, Clause, PhiBar};
use dlqs_core::normalize::{normalize_kb, NormalStatement};
use dlqs_core::oracle::{
    brute_sat, concept_extent, data_extent, dl_consistent, enumerate_interpretations, statement_holds,
    DlInterpretation, Interpretation,
};
use dlqs_core::parser::{parse_kb, parse_query};
use dlqs_core::pipeline::{prepare, Config, Prepared};
use dlqs_core::tableau::{extract_model, saturate, BranchModel, Context, SearchMode, TableauConfig};
use dlqs_core::translate::{
    theta_statement, Atom, Formula, GroundLiteral, Literal, PhiKB, QTerm, Term, TranslationMode, Universal, Var0Origin,
    Var1Origin, Var3Origin, VarTable, Witness, V0, V1, V3,
};
use dlqs_core::*;

/// A set-theoretic model over the universe `0..n`: level-0 values,
/// level-1 extents as bitsets and level-3 extents over `x·n + y`.
struct SetModel {
    n: usize,
    x0: Vec<usize>,
    m1: Vec<u64>,
    m3: Vec<u64>,
}

impl SetModel {
    fn atom(&self, a: Atom<usize>) -> bool {
        match a {
            Atom::Eq(x, y) => x == y,
            Atom::Mem1(x, s) => self.m1[s.0 as usize] >> x & 1 == 1,
            Atom::Mem3(x, y, s) => self.m3[s.0 as usize] >> (x * self.n + y) & 1 == 1,
        }
    }

    fn ground(&self, c: &[GroundLiteral]) -> bool {
        c.iter().any(|l| self.atom(l.atom.map(|v| self.x0[v.0 as usize])) == l.positive)
    }

    fn open(&self, c: &[Literal<Term>], bound: &[u32], tuple: &[usize]) -> bool {
        let val = |t: Term| match t {
            Term::Free(v) => self.x0[v.0 as usize],
            Term::Bound(b) => tuple[bound.iter().position(|&x| x == b).unwrap()],
        };
        c.iter().any(|l| self.atom(l.atom.map(val)) == l.positive)
    }

    fn forall(&self, bound: &[u32], mut f: impl FnMut(&[usize]) -> bool) -> bool {
        let q = bound.len();
        let mut tuple = vec![0usize; q];
        loop {
            if !f(&tuple) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == q {
                    return true;
                }
                tuple[i] += 1;
                if tuple[i] < self.n {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
        }
    }

    fn universal(&self, u: &Universal) -> bool {
        self.forall(&u.bound, |t| u.matrix.iter().all(|c| self.open(c, &u.bound, t)))
    }

    fn formula(&self, f: &Formula) -> bool {
        f.ground.iter().all(|c| self.ground(c)) && f.universals.iter().all(|u| self.universal(u))
    }

    fn phi_kb(&self, p: &PhiKB) -> bool {
        p.ground_clauses.iter().all(|c| self.ground(c))
            && p.universals.iter().all(|u| self.universal(u))
            && p.witness_requests.iter().all(|w| self.m1[w.set.0 as usize] >> self.x0[w.witness.0 as usize] & 1 == 1)
    }

    fn phi_bar(&self, p: &PhiBar) -> bool {
        p.ground.iter().all(|c| self.ground(c))
            && p.universals.iter().all(|u| self.forall(&u.bound, |t| self.open(&u.clause, &u.bound, t)))
    }
}

fn low_bit(b: u64) -> usize {
    b.trailing_zeros() as usize
}

/// The model `M` induced by a DL interpretation: abstract elements first,
/// then data elements shifted by `na`.
fn induced_model(i: &DlInterpretation, vars: &VarTable) -> SetModel {
    let (na, nd) = (i.na, i.nd);
    let n = na + nd;
    let abs = (1u64 << na) - 1;
    let data = |b: u64| b << na;
    let x0 = vars
        .level0()
        .map(|v| match vars.origin0(v) {
            Var0Origin::Individual(a) => i.individuals[a],
            Var0Origin::Constant(e) => na + i.constants[e],
            Var0Origin::Witness(Witness::Individuals) => 0,
            Var0Origin::Witness(Witness::Data) => na,
            Var0Origin::Witness(Witness::Datatype(d)) => na + low_bit(i.datatypes[d]),
        })
        .collect();
    let m1 = vars
        .level1()
        .map(|v| match vars.origin1(v) {
            Var1Origin::Individuals | Var1Origin::Top => abs,
            Var1Origin::Data => data((1u64 << nd) - 1),
            Var1Origin::Bottom | Var1Origin::DataBottom(_) => 0,
            Var1Origin::Concept(c) => i.concepts[c],
            Var1Origin::NominalSet(ns) => concept_extent(i, &Concept::NominalSet(ns.clone())),
            Var1Origin::Datatype(d) | Var1Origin::DataTop(d) => data(i.datatypes[d]),
            Var1Origin::Facet(d, f) => data(i.facets[&(d.clone(), f.clone())]),
            Var1Origin::FacetExpr(d, cnf) => data(data_extent(i, &DataTerm::FacetExpr(d.clone(), cnf.clone()))),
            Var1Origin::Enumeration(es) => data(data_extent(i, &DataTerm::Enumeration(es.clone()))),
            Var1Origin::DataName(t) => data(i.data_names[t]),
        })
        .collect();
    let pairs = |bits: u64, w: usize, off: usize| -> u64 {
        (0..na * w).filter(|&j| bits >> j & 1 == 1).fold(0, |acc, j| acc | 1 << ((j / w) * n + off + j % w))
    };
    let m3 = vars
        .level3()
        .map(|v| match vars.origin3(v) {
            Var3Origin::Universal => pairs((1u64 << (na * na)) - 1, na, 0),
            Var3Origin::Role(r) => pairs(i.roles[r], na, 0),
            Var3Origin::ConcreteRole(p) => pairs(i.concrete_roles[p], nd, na),
        })
        .collect();
    SetModel { n, x0, m1, m3 }
}

fn subset<R: Rng>(rng: &mut R, mask: u64) -> u64 {
    rng.gen::<u64>() & mask
}

/// A random well-formed interpretation of `sig` with at most three abstract
/// and three data elements.
fn random_interpretation<R: Rng>(rng: &mut R, sig: &Signature) -> DlInterpretation {
    let na = rng.gen_range(1..=3);
    let ndt = sig.datatypes.len();
    let nd = rng.gen_range(ndt.max(1)..=3.max(ndt));
    let mut owner: Vec<Option<usize>> = (0..nd).map(|_| rng.gen_range(0..=ndt).checked_sub(1)).collect();
    for (j, o) in owner.iter_mut().enumerate().take(ndt) {
        *o = Some(j);
    }
    let mut i = DlInterpretation { na, nd, ..Default::default() };
    for a in &sig.individuals {
        i.individuals.insert(a.clone(), rng.gen_range(0..na));
    }
    for (j, (d, decl)) in sig.datatypes.iter().enumerate() {
        let ext = (0..nd).filter(|&x| owner[x] == Some(j)).fold(0u64, |acc, x| acc | 1 << x);
        i.datatypes.insert(d.clone(), ext);
        let members: Vec<usize> = (0..nd).filter(|&x| ext >> x & 1 == 1).collect();
        for e in &decl.constants {
            i.constants.insert(e.clone(), *members.choose(rng).unwrap());
        }
        for f in &decl.facets {
            i.facets.insert((d.clone(), f.clone()), subset(rng, ext));
        }
    }
    let (abs, dat) = ((1u64 << na) - 1, (1u64 << nd) - 1);
    for c in &sig.concepts {
        i.concepts.insert(c.clone(), subset(rng, abs));
    }
    for r in &sig.roles {
        i.roles.insert(r.clone(), subset(rng, (1u64 << (na * na)) - 1));
    }
    for p in &sig.concrete_roles {
        i.concrete_roles.insert(p.clone(), subset(rng, (1u64 << (na * nd)) - 1));
    }
    for t in &sig.data_names {
        i.data_names.insert(t.clone(), subset(rng, dat));
    }
    i
}

/// A random surjective quotient of `k` level-0 variables onto at most
/// eight blocks, with random extents.
fn random_ground_interpretation<R: Rng>(rng: &mut R, k: usize, n1: usize, n3: usize) -> Interpretation {
    let cap = k.clamp(1, 8);
    let raw: Vec<usize> = (0..k).map(|_| rng.gen_range(0..cap)).collect();
    let mut seen: Vec<usize> = Vec::new();
    let partition = raw
        .iter()
        .map(|r| match seen.iter().position(|s| s == r) {
            Some(p) => p as u32,
            None => {
                seen.push(*r);
                seen.len() as u32 - 1
            }
        })
        .collect();
    let b = seen.len().max(1);
    let mask = |w: usize| if w >= 64 { u64::MAX } else { (1u64 << w) - 1 };
    Interpretation {
        partition,
        blocks: b,
        mem1: (0..n1).map(|_| subset(rng, mask(b))).collect(),
        mem3: (0..n3).map(|_| subset(rng, mask(b * b))).collect(),
    }
}

fn ground_to_set(m: &Interpretation) -> SetModel {
    SetModel {
        n: m.blocks,
        x0: m.partition.iter().map(|&p| p as usize).collect(),
        m1: m.mem1.clone(),
        m3: m.mem3.clone(),
    }
}

fn branch_to_ground(m: &BranchModel, n1: usize, n3: usize) -> Interpretation {
    let idx = |v: V0| m.universe.iter().position(|&u| u == m.rep(v)).unwrap();
    let b = m.universe.len();
    let mut mem1 = vec![0u64; n1];
    for (s, xs) in &m.mem1 {
        for &x in xs {
            mem1[s.0 as usize] |= 1 << idx(x);
        }
    }
    let mut mem3 = vec![0u64; n3];
    for (s, ps) in &m.mem3 {
        for &(x, y) in ps {
            mem3[s.0 as usize] |= 1 << (idx(x) * b + idx(y));
        }
    }
    Interpretation { partition: m.rep.iter().map(|&v| idx(v) as u32).collect(), blocks: b, mem1, mem3 }
}

fn kb(seed: u64, b: &Bounds) -> KnowledgeBase {
    corpus::random_kb(&mut corpus::rng(seed), b)
}

fn cqa_bounds() -> Bounds {
    Bounds { individuals: 2, concepts: 2, statements: 3, ..Bounds::default() }
}

fn small_cfg() -> Config {
    Config { branch_budget: 50_000, clause_budget: 200_000, ..Config::default() }
}

fn try_prepare(k: &KnowledgeBase, cfg: &Config) -> Option<Prepared> {
    match prepare(k, cfg) {
        Ok(p) => Some(p),
        Err(e) if e.is_budget() => None,
        Err(e) => panic!("{e}"),
    }
}

fn qterm(t: QTerm, sigma: &[V0]) -> V0 {
    match t {
        QTerm::Var(i) => sigma[i as usize],
        QTerm::Const(v) => v,
    }
}

fn random_clauses<R: Rng>(rng: &mut R, k: usize, n1: usize, n3: usize) -> Vec<Clause> {
    let atom = |rng: &mut R| -> Atom<V0> {
        let v = |rng: &mut R| V0(rng.gen_range(0..k as u32));
        let choice = rng.gen_range(0..3);
        match choice {
            1 if n1 > 0 => Atom::Mem1(v(rng), V1(rng.gen_range(0..n1 as u32))),
            2 if n3 > 0 => Atom::Mem3(v(rng), v(rng), V3(rng.gen_range(0..n3 as u32))),
            _ => Atom::Eq(v(rng), v(rng)),
        }
    };
    let n = rng.gen_range(1..=10);
    let mut out = Vec::new();
    for _ in 0..n {
        let len = rng.gen_range(1..=3);
        let lits: Vec<GroundLiteral> = (0..len).map(|_| Literal { positive: rng.gen(), atom: atom(rng) }).collect();
        if let Some(c) = canonical_clause(lits) {
            out.push(c);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn stirling2(n: usize, k: usize) -> u64 {
    let mut s = vec![vec![0u64; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn pretty_then_parse_is_identity(seed in any::<u64>()) {
        let k = kb(seed, &Bounds::default());
        let text = pretty::kb(&k);
        prop_assert_eq!(parse_kb(&text).unwrap(), k);
    }

    #[test]
    fn parse_errors_point_inside_the_input(seed in any::<u64>(), cut in 0.0f64..1.0, junk in "[a-z(){}.,:# \n]{0,4}") {
        let text = pretty::kb(&kb(seed, &Bounds::default()));
        let mut at = (text.len() as f64 * cut) as usize;
        while !text.is_char_boundary(at) {
            at -= 1;
        }
        let mangled = format!("{}{}{}", &text[..at], junk, &text[(at + 3).min(text.len())..]);
        if let Err(e) = parse_kb(&mangled) {
            let lines: Vec<&str> = mangled.split('\n').collect();
            prop_assert!(e.span.line >= 1 && e.span.line <= lines.len(), "{e}");
            let width = lines[e.span.line - 1].chars().count();
            prop_assert!(e.span.column >= 1 && e.span.column <= width + 1, "{e}");
            prop_assert!(!e.message.is_empty());
        }
    }

    #[test]
    fn normalizer_emits_only_normalized_shapes(seed in any::<u64>()) {
        let (n, _) = normalize_kb(&kb(seed, &Bounds::default())).unwrap();
        for s in n.statements() {
            prop_assert!(s.is_normalized(), "{}", pretty::statement(s));
        }
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let (n, _) = normalize_kb(&kb(seed, &Bounds::default())).unwrap();
        let (again, names) = normalize_kb(&n).unwrap();
        prop_assert!(names.is_empty());
        prop_assert_eq!(again, n);
    }

    #[test]
    fn substitution_application_is_idempotent(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let k = corpus::random_kb(&mut rng, &Bounds::default());
        let q = corpus::random_query(&mut rng, &k.signature, 3);
        let mut values: Vec<DlValue> = k.signature.individuals.iter().cloned().map(DlValue::Individual).collect();
        values.extend(k.signature.constants().cloned().map(DlValue::Constant));
        let mut sigma = DlSubstitution::new();
        for v in query_vars(&q) {
            if let (true, Some(o)) = (rng.gen_bool(0.6), values.choose(&mut rng)) {
                sigma.0.insert(v, o.clone());
            }
        }
        let once = apply_dl_substitution(&q, &sigma);
        prop_assert_eq!(apply_dl_substitution(&once, &sigma), once);
    }

    #[test]
    fn each_statement_holds_iff_its_translation_does(seed in any::<u64>()) {
        let (n, _) = normalize_kb(&kb(seed, &Bounds::default())).unwrap();
        let mut rng = corpus::rng(seed ^ 0x5eed);
        let mut vars = VarTable::from_signature(&n.signature);
        let thetas: Vec<(Statement, Formula)> = n
            .statements()
            .map(|s| {
                let ns = NormalStatement::from_statement(s).unwrap();
                (s.clone(), theta_statement(&ns, &n.signature, &mut vars, TranslationMode::Corrected).unwrap())
            })
            .collect();
        for _ in 0..8 {
            let i = random_interpretation(&mut rng, &n.signature);
            let m = induced_model(&i, &vars);
            for (s, f) in &thetas {
                prop_assert_eq!(statement_holds(&i, s), m.formula(f), "{}\n{}", pretty::statement(s), i);
            }
        }
    }

    #[test]
    fn normalization_preserves_satisfiability(seed in any::<u64>()) {
        let b = Bounds { statements: 3, ..Bounds::default() };
        let k = kb(seed, &b);
        let (n, _) = normalize_kb(&k).unwrap();
        let (Ok(a), Ok(c)) = (dl_consistent(&k, 64), dl_consistent(&n, 64)) else {
            return Err(TestCaseError::reject("oracle budget"));
        };
        prop_assert_eq!(a.is_some(), c.is_some());
    }

    #[test]
    fn grounding_matches_the_universal_form(seed in any::<u64>()) {
        let cfg = small_cfg();
        let Some(p) = try_prepare(&kb(seed, &Bounds::default()), &cfg) else {
            return Err(TestCaseError::reject("budget"));
        };
        let bar = distribute_and_rename(&p.phi);
        let vars = &p.grounding.vars;
        let (k, n1, n3) = (vars.len0(), vars.len1(), vars.len3());
        let mut models: Vec<Interpretation> = Vec::new();
        let mut rng = corpus::rng(seed);
        for _ in 0..16 {
            models.push(random_ground_interpretation(&mut rng, k, n1, n3));
        }
        if let Ok(t) = p.check(&cfg) {
            for b in &t.open {
                models.push(branch_to_ground(&extract_model(&p.context, b).unwrap(), n1, n3));
            }
        }
        for m in &models {
            let s = ground_to_set(m);
            let expanded = m.satisfies(&p.grounding.clauses);
            prop_assert_eq!(s.phi_bar(&bar), expanded);
            prop_assert_eq!(s.phi_kb(&p.phi), expanded);
        }
    }

    #[test]
    fn grounding_counts(seed in any::<u64>()) {
        let cfg = small_cfg();
        let Some(p) = try_prepare(&kb(seed, &Bounds::default()), &cfg) else {
            return Err(TestCaseError::reject("budget"));
        };
        let s = &p.grounding.stats;
        let bar = distribute_and_rename(&p.phi);
        let domain: Vec<V0> = p.grounding.vars.level0().collect();
        let mut shuffled = domain.clone();
        shuffled.shuffle(&mut corpus::rng(seed));
        let mut instances = 0u64;
        for u in &bar.universals {
            let (a, n) = expand(u, &domain);
            prop_assert_eq!(n, (s.k as u64).pow(u.bound.len() as u32));
            prop_assert_eq!(expand(u, &shuffled).0, a);
            instances += n;
        }
        prop_assert_eq!(instances, s.instances);
        prop_assert!((s.clauses as u64) <= s.m as u64 * (s.k as u64).pow(s.r as u32) + s.ground as u64);
    }

    #[test]
    fn tableau_agrees_with_exhaustive_search(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let (k, n1, n3) = (rng.gen_range(1..=4), rng.gen_range(0..=2), rng.gen_range(0..=1));
        let clauses = random_clauses(&mut rng, k, n1, n3);
        let ctx = Context::new(k, n1, n3, clauses.clone());
        let brute = brute_sat(&clauses, k, n1, n3, 64).unwrap();
        if let Some(m) = &brute {
            prop_assert!(m.satisfies(&clauses));
        }
        let cfg = TableauConfig { audit: true, ..TableauConfig::all_models() };
        let t = saturate(&ctx, &cfg).unwrap();
        prop_assert_eq!(t.is_satisfiable(), brute.is_some());
        for b in &t.open {
            prop_assert_eq!(extract_model(&ctx, b).unwrap().violation(&clauses), None);
        }
        prop_assert!(t.pb_records.iter().all(|r| !r.e_rule_applicable));
    }

    #[test]
    fn open_branches_of_knowledge_bases_are_models(seed in any::<u64>()) {
        let cfg = Config { audit: true, ..small_cfg() };
        let Some(p) = try_prepare(&kb(seed, &Bounds::default()), &cfg) else {
            return Err(TestCaseError::reject("budget"));
        };
        let t = match p.saturate_all(&cfg) {
            Ok(t) => t,
            Err(e) if e.is_budget() => return Err(TestCaseError::reject("budget")),
            Err(e) => panic!("{e}"),
        };
        for b in &t.open {
            prop_assert_eq!(extract_model(&p.context, b).unwrap().violation(&p.grounding.clauses), None);
        }
        prop_assert!(t.pb_records.iter().all(|r| !r.e_rule_applicable));
        prop_assert_eq!(t.open.len() as u64, t.stats.open);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn query_engines_agree_branch_by_branch(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let k = corpus::random_kb(&mut rng, &cqa_bounds());
        let q = corpus::random_query(&mut rng, &k.signature, 2);
        let cfg = Config { branch_budget: 20_000, ..Config::default() };
        let Some(p) = try_prepare(&k, &cfg) else {
            return Err(TestCaseError::reject("budget"));
        };
        let psi = p.psi(&q).unwrap();
        let t = match p.saturate_all(&cfg) {
            Ok(t) => t,
            Err(e) if e.is_budget() => return Err(TestCaseError::reject("budget")),
            Err(e) => panic!("{e}"),
        };
        let extend = cfg.cqa();
        let only = CqaConfig { mode: DecisionMode::BranchOnly, ..cfg.cqa() };
        let mut union = BTreeSet::new();
        for b in &t.open {
            let m = extract_model(&p.context, b).unwrap();
            let strict = branch_answers(&p.context, b, &psi, &only, &BTreeSet::new()).unwrap();
            let wide = branch_answers(&p.context, b, &psi, &extend, &BTreeSet::new()).unwrap();
            for a in &strict {
                for l in &psi.literals {
                    let g: GroundLiteral = l.map(|t| qterm(t, a));
                    prop_assert!(m.holds(&g));
                }
            }
            prop_assert!(strict.is_subset(&wide));
            union.extend(wide);
        }
        let k0 = p.grounding.vars.len0() as u32;
        for a in &union {
            prop_assert_eq!(a.len(), psi.vars.len());
            prop_assert!(a.iter().all(|v| v.0 < k0));
        }
        let stored = answer_set(&p.context, &t, &psi, &extend).unwrap();
        prop_assert_eq!(&stored, &union);
        let (streamed, _) = streamed_answer_set(&p.context, &psi, &extend).unwrap();
        prop_assert_eq!(&streamed, &union);
        let threaded = CqaConfig { threads: 3, ..extend.clone() };
        prop_assert_eq!(&streamed_answer_set(&p.context, &psi, &threaded).unwrap().0, &union);
        let (naive, _) = naive_answers(&p.context, &psi, &cfg.tableau(SearchMode::Sat)).unwrap();
        prop_assert_eq!(&naive, &union);
    }

    #[test]
    fn answers_ignore_conjunct_order(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let k = corpus::random_kb(&mut rng, &cqa_bounds());
        let q = corpus::random_query(&mut rng, &k.signature, 2);
        let mut r = q.clone();
        r.literals.reverse();
        let cfg = Config { branch_budget: 20_000, ..Config::default() };
        let Some(p) = try_prepare(&k, &cfg) else {
            return Err(TestCaseError::reject("budget"));
        };
        let run = |q: &Query| p.psi(q).and_then(|psi| Ok((p.query(&psi, pipeline::Engine::Tableau, &cfg)?, psi)));
        match (run(&q), run(&r)) {
            (Ok((a, pa)), Ok((b, pb))) => {
                prop_assert_eq!(
                    p.map_back(&a.tableau.unwrap(), &pa),
                    p.map_back(&b.tableau.unwrap(), &pb)
                );
            }
            (Err(e), _) | (_, Err(e)) if e.is_budget() => return Err(TestCaseError::reject("budget")),
            (Err(e), _) | (_, Err(e)) => panic!("{e}"),
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn interpretation_count_has_closed_form(k in 1usize..=3, n1 in 0usize..=2, n3 in 0usize..=1, quotients in any::<bool>()) {
        let it = enumerate_interpretations(k, n1, n3, quotients, 24).unwrap();
        let expected: u64 = if quotients {
            (1..=k).map(|b| stirling2(k, b) << (b * n1 + b * b * n3)).sum()
        } else {
            1 << (k * n1 + k * k * n3)
        };
        prop_assert_eq!(it.count() as u64, expected);
    }
}

#[test]
fn printed_complement_formulae_break_the_correspondence() {
    let cases = [
        ("concept A, B. individual a.", "axiom A equiv not B."),
        ("arole R, S. individual a.", "axiom R equiv not S."),
    ];
    for (sig, stmt) in cases {
        let k = parse_kb(&format!("{sig} {stmt}")).unwrap();
        let s = k.statements().next().unwrap().clone();
        let ns = NormalStatement::from_statement(&s).unwrap();
        let mut vars = VarTable::from_signature(&k.signature);
        let lit = theta_statement(&ns, &k.signature, &mut vars, TranslationMode::Literal).unwrap();
        let cor = theta_statement(&ns, &k.signature, &mut vars, TranslationMode::Corrected).unwrap();
        let mut rng = corpus::rng(7);
        let (mut agree, mut split) = (true, false);
        for _ in 0..400 {
            let i = random_interpretation(&mut rng, &k.signature);
            let m = induced_model(&i, &vars);
            let h = statement_holds(&i, &s);
            agree &= h == m.formula(&cor);
            split |= h != m.formula(&lit);
        }
        assert!(agree, "{stmt}");
        assert!(split, "{stmt}");
    }
}

#[test]
fn answers_bind_declared_names_only() {
    let k = parse_kb("concept A. individual a. datatype d { constants e; } axiom A equiv top.").unwrap();
    let q = parse_query("A(?v)", &k.signature).unwrap();
    let cfg = Config::default();
    let p = prepare(&k, &cfg).unwrap();
    let psi = p.psi(&q).unwrap();
    let out = p.query(&psi, pipeline::Engine::Both, &cfg).unwrap();
    let raw = cqa::render_raw(out.tableau.as_ref().unwrap(), &psi, &p.grounding.vars);
    assert!(raw.len() > 1);
    let got: Vec<String> = p.map_back(&out.tableau.unwrap(), &psi).iter().map(|s| s.to_string()).collect();
    assert_eq!(got, ["v=a"]);
}
