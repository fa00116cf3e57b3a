//! KE-tableau saturation of a ground clause set: the E-rule, the PB-rule on
//! the complement of the lowest undecided disjunct, closure modulo equality
//! and extraction of branch models.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::TableauError;
use crate::ground::Clause;
use crate::translate::{Atom, GroundLiteral, Literal, V0, V1, V3};

/// Default upper bound on the number of branches created.
pub const DEFAULT_BRANCH_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first open complete branch.
    #[default]
    Sat,
    /// Visit every open complete branch.
    AllModels,
}

#[derive(Clone, Debug)]
pub struct TableauConfig {
    pub mode: SearchMode,
    pub branch_budget: u64,
    /// Check at every PB node that no E-rule was applicable.
    pub audit: bool,
    /// Record one event per rule application.
    pub trace: bool,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { mode: SearchMode::Sat, branch_budget: DEFAULT_BRANCH_BUDGET, audit: false, trace: false }
    }
}

impl TableauConfig {
    pub fn all_models() -> Self {
        TableauConfig { mode: SearchMode::AllModels, ..Self::default() }
    }
}

/// Literal packed as `atom << 1 | negated`.
type Lit = u32;

/// Dense numbering of the ground atoms over `k` level-0, `n1` level-1 and
/// `n3` level-3 variables, plus the clause set in packed form.
#[derive(Debug)]
pub struct Context {
    k: u32,
    n1: u32,
    n3: u32,
    clauses: Vec<Clause>,
    packed: Vec<Vec<Lit>>,
    has_eq: Vec<bool>,
    occurrences: Vec<Vec<u32>>,
    atoms_of: Vec<Vec<u32>>,
    order: Vec<u32>,
}

impl Context {
    pub fn new(k: usize, n1: usize, n3: usize, clauses: Vec<Clause>) -> Self {
        let (k, n1, n3) = (k as u32, n1 as u32, n3 as u32);
        let mut ctx = Context {
            k,
            n1,
            n3,
            clauses: Vec::new(),
            packed: Vec::new(),
            has_eq: Vec::new(),
            occurrences: Vec::new(),
            atoms_of: vec![Vec::new(); k as usize],
            order: Vec::new(),
        };
        let n_atoms = ctx.atom_count();
        ctx.occurrences = vec![Vec::new(); n_atoms];
        for id in 0..n_atoms as u32 {
            let a = ctx.atom(id);
            let mut vs: Vec<V0> = a.terms().collect();
            vs.dedup();
            for v in vs {
                ctx.atoms_of[v.0 as usize].push(id);
            }
        }
        for (ci, c) in clauses.iter().enumerate() {
            let p: Vec<Lit> = c.iter().map(|l| ctx.pack(l)).collect();
            for &l in &p {
                let occ = &mut ctx.occurrences[(l >> 1) as usize];
                if occ.last() != Some(&(ci as u32)) {
                    occ.push(ci as u32);
                }
            }
            ctx.has_eq.push(c.iter().any(|l| matches!(l.atom, Atom::Eq(..))));
            ctx.packed.push(p);
        }
        ctx.order = (0..clauses.len() as u32).collect();
        ctx.order.sort_by_key(|&i| (clauses[i as usize].len(), i));
        ctx.clauses = clauses;
        ctx
    }

    pub fn from_grounding(g: &crate::ground::Grounding) -> Self {
        Context::new(g.vars.len0(), g.vars.len1(), g.vars.len3(), g.clauses.clone())
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    fn atom_count(&self) -> usize {
        let k = self.k as usize;
        k * k + self.n1 as usize * k + self.n3 as usize * k * k
    }

    fn atom_id(&self, a: Atom<V0>) -> u32 {
        let k = self.k;
        match a {
            Atom::Eq(x, y) => x.0 * k + y.0,
            Atom::Mem1(x, s) => k * k + s.0 * k + x.0,
            Atom::Mem3(x, y, s) => k * k + self.n1 * k + (s.0 * k + x.0) * k + y.0,
        }
    }

    fn atom(&self, id: u32) -> Atom<V0> {
        let k = self.k;
        if id < k * k {
            return Atom::Eq(V0(id / k), V0(id % k));
        }
        let id = id - k * k;
        if id < self.n1 * k {
            return Atom::Mem1(V0(id % k), V1(id / k));
        }
        let id = id - self.n1 * k;
        Atom::Mem3(V0((id / k) % k), V0(id % k), V3(id / (k * k)))
    }

    fn pack(&self, l: &GroundLiteral) -> Lit {
        (self.atom_id(l.atom) << 1) | (!l.positive) as u32
    }

    fn unpack(&self, l: Lit) -> GroundLiteral {
        Literal { positive: l & 1 == 0, atom: self.atom(l >> 1) }
    }

    /// Checks that every variable of `l` is in range.
    pub fn admits(&self, l: &GroundLiteral) -> bool {
        let ok0 = |v: V0| v.0 < self.k;
        match l.atom {
            Atom::Eq(x, y) => ok0(x) && ok0(y),
            Atom::Mem1(x, s) => ok0(x) && s.0 < self.n1,
            Atom::Mem3(x, y, s) => ok0(x) && ok0(y) && s.0 < self.n3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    E,
    Pb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub rule: Rule,
    pub branch: u64,
    pub literal: GroundLiteral,
}

/// Audit record of one PB application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbRecord {
    pub branch: u64,
    pub clause: usize,
    pub literal: GroundLiteral,
    /// Some unfulfilled clause had all but one disjunct refuted.
    pub e_rule_applicable: bool,
}

/// Canonical form of an atom under the current equality partition.
enum Canon {
    /// `x = x`
    Reflexive,
    Id(u32),
}

/// One branch: literal values on canonical atoms, the equality partition
/// and the fulfilled clauses.
#[derive(Clone, Debug)]
pub struct Branch {
    pub id: u64,
    val: Vec<i8>,
    rep: Vec<u32>,
    fulfilled: Vec<bool>,
    closed: bool,
    merged: bool,
    depth: u32,
    pending: Vec<u32>,
    fresh: bool,
}

impl Branch {
    /// The initial branch: no literal decided yet, nothing fulfilled.
    pub fn root(ctx: &Context) -> Self {
        Branch {
            id: 0,
            val: vec![0; ctx.atom_count()],
            rep: (0..ctx.k).collect(),
            fulfilled: vec![false; ctx.clauses.len()],
            closed: false,
            merged: false,
            depth: 0,
            pending: Vec::new(),
            fresh: true,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Rule applications from the root to this node.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn rep(&self, v: V0) -> V0 {
        V0(self.rep[v.0 as usize])
    }

    fn canon(&self, ctx: &Context, a: Atom<V0>) -> Canon {
        let r = |v: V0| self.rep(v);
        match a {
            Atom::Eq(x, y) => {
                let (x, y) = (r(x), r(y));
                if x == y {
                    Canon::Reflexive
                } else {
                    Canon::Id(ctx.atom_id(Atom::Eq(x.min(y), x.max(y))))
                }
            }
            other => Canon::Id(ctx.atom_id(other.map(r))),
        }
    }

    fn atom_value(&self, ctx: &Context, id: u32, is_eq: bool) -> i8 {
        if !self.merged && !is_eq {
            return self.val[id as usize];
        }
        match self.canon(ctx, ctx.atom(id)) {
            Canon::Reflexive => 1,
            Canon::Id(c) => self.val[c as usize],
        }
    }

    fn lit_value(&self, ctx: &Context, l: Lit, is_eq: bool) -> Option<bool> {
        match self.atom_value(ctx, l >> 1, is_eq) {
            0 => None,
            v => Some((v > 0) == (l & 1 == 0)),
        }
    }

    /// Truth value of `l` on the branch modulo equality, if decided.
    pub fn value(&self, ctx: &Context, l: &GroundLiteral) -> Option<bool> {
        self.lit_value(ctx, ctx.pack(l), true)
    }

    fn canonical_lit(&self, ctx: &Context, l: Lit) -> Option<Lit> {
        match self.canon(ctx, ctx.atom(l >> 1)) {
            Canon::Reflexive => None,
            Canon::Id(c) => Some((c << 1) | (l & 1)),
        }
    }

    fn set(&mut self, id: u32, v: i8) {
        let cur = self.val[id as usize];
        if cur == 0 {
            self.val[id as usize] = v;
            self.pending.push(id);
        } else if cur != v {
            self.closed = true;
        }
    }

    fn assign_packed(&mut self, ctx: &Context, l: Lit) {
        let positive = l & 1 == 0;
        match (self.canon(ctx, ctx.atom(l >> 1)), positive) {
            (Canon::Reflexive, true) => {}
            (Canon::Reflexive, false) => self.closed = true,
            (Canon::Id(c), _) => match ctx.atom(c) {
                Atom::Eq(x, y) if positive => self.merge(ctx, x, y),
                _ => self.set(c, if positive { 1 } else { -1 }),
            },
        }
    }

    /// Adds `l` to the branch, merging classes on a positive equality and
    /// closing the branch on a clash.
    pub fn assign(&mut self, ctx: &Context, l: &GroundLiteral) {
        self.assign_packed(ctx, ctx.pack(l));
    }

    fn merge(&mut self, ctx: &Context, x: V0, y: V0) {
        let (lo, hi) = (x.0.min(y.0), x.0.max(y.0));
        for r in self.rep.iter_mut() {
            if *r == hi {
                *r = lo;
            }
        }
        self.merged = true;
        for &id in &ctx.atoms_of[hi as usize] {
            let v = self.val[id as usize];
            if v == 0 {
                continue;
            }
            match self.canon(ctx, ctx.atom(id)) {
                Canon::Reflexive => {
                    if v < 0 {
                        self.closed = true;
                    }
                }
                Canon::Id(c) => self.set(c, v),
            }
        }
    }

    /// `None` when the clause is fulfilled, else its distinct undecided
    /// canonical literals, at most two.
    fn scan(&self, ctx: &Context, ci: usize) -> Option<Vec<Lit>> {
        let is_eq = ctx.has_eq[ci];
        let mut open: Vec<Lit> = Vec::new();
        for &l in &ctx.packed[ci] {
            match self.lit_value(ctx, l, is_eq) {
                Some(true) => return None,
                Some(false) => {}
                None => {
                    let c = if self.merged || is_eq { self.canonical_lit(ctx, l).unwrap_or(l) } else { l };
                    if !open.contains(&c) {
                        open.push(c);
                    }
                }
            }
        }
        Some(open)
    }

    /// Processes clause `ci`; returns true when the E-rule fired.
    fn visit(&mut self, ctx: &Context, ci: usize, branch: u64, trace: &mut Option<&mut Vec<TraceEvent>>) -> bool {
        if self.fulfilled[ci] {
            return false;
        }
        match self.scan(ctx, ci) {
            None => {
                self.fulfilled[ci] = true;
                false
            }
            Some(open) if open.is_empty() => {
                self.closed = true;
                false
            }
            Some(open) if open.len() == 1 => {
                self.assign_packed(ctx, open[0]);
                self.fulfilled[ci] = true;
                self.depth += 1;
                if let Some(t) = trace.as_deref_mut() {
                    t.push(TraceEvent { rule: Rule::E, branch, literal: ctx.unpack(open[0]) });
                }
                true
            }
            Some(_) => false,
        }
    }

    /// Applies the E-rule to fixpoint or until the branch closes.
    fn propagate(&mut self, ctx: &Context, full: bool, trace: &mut Option<&mut Vec<TraceEvent>>) {
        let id = self.id;
        let mut full = full;
        self.fresh = false;
        loop {
            if self.closed {
                return;
            }
            if full || self.merged {
                self.pending.clear();
                let mut changed = false;
                for ci in 0..ctx.clauses.len() {
                    changed |= self.visit(ctx, ci, id, trace);
                    if self.closed {
                        return;
                    }
                }
                if !changed {
                    return;
                }
                full = self.merged;
                continue;
            }
            let Some(atom) = self.pending.pop() else { return };
            for &ci in &ctx.occurrences[atom as usize] {
                self.visit(ctx, ci as usize, id, trace);
                if self.closed || self.merged {
                    break;
                }
            }
        }
    }

    /// Lowest-ranked unfulfilled clause, marking fulfilled ones on the way.
    fn select(&mut self, ctx: &Context) -> Option<usize> {
        for &ci in &ctx.order {
            let ci = ci as usize;
            if self.fulfilled[ci] {
                continue;
            }
            if self.scan(ctx, ci).is_none() {
                self.fulfilled[ci] = true;
                continue;
            }
            return Some(ci);
        }
        None
    }

    /// True when every clause has a disjunct on the branch.
    pub fn is_complete(&self, ctx: &Context) -> bool {
        (0..ctx.clauses.len()).all(|ci| self.scan(ctx, ci).is_none())
    }

    /// True when some unfulfilled clause has every disjunct but one refuted,
    /// or every disjunct refuted.
    pub fn e_rule_applicable(&self, ctx: &Context) -> bool {
        (0..ctx.clauses.len()).any(|ci| matches!(self.scan(ctx, ci), Some(open) if open.len() <= 1))
    }

    /// Open branch: the members of each equality class.
    pub fn classes(&self) -> BTreeMap<V0, Vec<V0>> {
        let mut out: BTreeMap<V0, Vec<V0>> = BTreeMap::new();
        for (v, &r) in self.rep.iter().enumerate() {
            out.entry(V0(r)).or_default().push(V0(v as u32));
        }
        out
    }
}

/// The E-rule: adds disjunct `i` of clause `ci` when the complements of all
/// other disjuncts are on the branch.
pub fn e_rule(ctx: &Context, branch: &Branch, ci: usize, i: usize) -> Result<Branch, TableauError> {
    let clause = ctx.packed.get(ci).ok_or_else(|| TableauError::PreconditionViolated(format!("no clause {ci}")))?;
    let &target =
        clause.get(i).ok_or_else(|| TableauError::PreconditionViolated(format!("clause {ci} has no disjunct {i}")))?;
    if branch.scan(ctx, ci).is_none() {
        return Err(TableauError::PreconditionViolated(format!("clause {ci} is fulfilled")));
    }
    let target_c = branch.canonical_lit(ctx, target);
    for (j, &l) in clause.iter().enumerate() {
        if j == i || (target_c.is_some() && branch.canonical_lit(ctx, l) == target_c) {
            continue;
        }
        if branch.lit_value(ctx, l, true) != Some(false) {
            return Err(TableauError::PreconditionViolated(format!(
                "complement of disjunct {j} of clause {ci} is not on the branch"
            )));
        }
    }
    let mut out = branch.clone();
    out.assign_packed(ctx, target);
    out.fulfilled[ci] = true;
    out.depth += 1;
    Ok(out)
}

/// The PB-rule: the branch extended with `l` and with its complement.
pub fn pb_rule(ctx: &Context, branch: &Branch, l: &GroundLiteral) -> Result<(Branch, Branch), TableauError> {
    if branch.value(ctx, l).is_some() {
        return Err(TableauError::PreconditionViolated("literal already decided".into()));
    }
    let mut a = branch.clone();
    let mut b = branch.clone();
    a.assign(ctx, l);
    b.assign(ctx, &l.complement());
    a.depth += 1;
    b.depth += 1;
    Ok((a, b))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableauStats {
    pub branches: u64,
    pub open: u64,
    pub closed: u64,
    pub pb: u64,
    pub max_depth: u32,
}

/// The outcome of saturation: the open complete branches (one at most in
/// `Sat` mode) and the audit data.
#[derive(Clone, Debug, Default)]
pub struct Saturation {
    pub open: Vec<Branch>,
    pub stats: TableauStats,
    pub pb_records: Vec<PbRecord>,
    pub trace: Vec<TraceEvent>,
}

impl Saturation {
    pub fn is_satisfiable(&self) -> bool {
        self.stats.open > 0
    }
}

/// Saturation of `Φ` from the root branch.
pub fn saturate(ctx: &Context, cfg: &TableauConfig) -> Result<Saturation, TableauError> {
    saturate_from(ctx, Branch::root(ctx), cfg)
}

/// Whether exploration goes on after an open complete branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Saturation below `start`. A branch never saturated is scanned in full;
/// otherwise only literals assigned since its last saturation are propagated.
pub fn saturate_from(ctx: &Context, start: Branch, cfg: &TableauConfig) -> Result<Saturation, TableauError> {
    let mut open = Vec::new();
    let sat = cfg.mode == SearchMode::Sat;
    let mut out = explore(ctx, start, cfg, |b| {
        open.push(b.clone());
        Ok(if sat { Flow::Stop } else { Flow::Continue })
    })?;
    out.open = open;
    Ok(out)
}

/// Depth-first saturation below `start`, handing each open complete branch
/// to `visit` instead of storing it. The returned `open` is empty.
pub fn explore<F>(ctx: &Context, start: Branch, cfg: &TableauConfig, mut visit: F) -> Result<Saturation, TableauError>
where
    F: FnMut(&Branch) -> Result<Flow, TableauError>,
{
    let mut out = Saturation::default();
    let mut next_id = start.id + 1;
    let full = start.fresh;
    let mut stack = vec![(start, full)];
    out.stats.branches = 1;
    while let Some((mut b, full)) = stack.pop() {
        let mut trace = if cfg.trace { Some(&mut out.trace) } else { None };
        b.propagate(ctx, full, &mut trace);
        if b.closed {
            out.stats.closed += 1;
            out.stats.max_depth = out.stats.max_depth.max(b.depth);
        } else if let Some(ci) = b.select(ctx) {
            let lits = &ctx.packed[ci];
            let h = lits
                .iter()
                .copied()
                .find(|&l| b.lit_value(ctx, l, ctx.has_eq[ci]).is_none())
                .expect("unfulfilled clause at fixpoint has an undecided disjunct");
            let beta = ctx.unpack(h);
            if cfg.audit {
                out.pb_records.push(PbRecord {
                    branch: b.id,
                    clause: ci,
                    literal: beta.complement(),
                    e_rule_applicable: b.e_rule_applicable(ctx),
                });
            }
            if out.stats.branches + 2 > cfg.branch_budget {
                return Err(TableauError::CapacityExceeded(cfg.branch_budget));
            }
            let (mut with, mut without) = pb_rule(ctx, &b, &beta).expect("undecided literal");
            with.id = next_id;
            without.id = next_id + 1;
            next_id += 2;
            if let Some(t) = trace {
                t.push(TraceEvent { rule: Rule::Pb, branch: b.id, literal: beta.complement() });
            }
            out.stats.pb += 1;
            out.stats.branches += 2;
            stack.push((without, false));
            stack.push((with, false));
        } else {
            out.stats.open += 1;
            out.stats.max_depth = out.stats.max_depth.max(b.depth);
            if visit(&b)? == Flow::Stop {
                break;
            }
        }
    }
    Ok(out)
}

/// `M_ϑ`: the universe is the set of class representatives; extents hold
/// the representatives of the atoms set true on the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchModel {
    pub rep: Vec<V0>,
    pub universe: Vec<V0>,
    pub mem1: BTreeMap<V1, BTreeSet<V0>>,
    pub mem3: BTreeMap<V3, BTreeSet<(V0, V0)>>,
}

impl BranchModel {
    pub fn rep(&self, v: V0) -> V0 {
        self.rep[v.0 as usize]
    }

    pub fn holds(&self, l: &GroundLiteral) -> bool {
        let r = |v: V0| self.rep(v);
        let t = match l.atom {
            Atom::Eq(x, y) => r(x) == r(y),
            Atom::Mem1(x, s) => self.mem1.get(&s).is_some_and(|e| e.contains(&r(x))),
            Atom::Mem3(x, y, s) => self.mem3.get(&s).is_some_and(|e| e.contains(&(r(x), r(y)))),
        };
        t == l.positive
    }

    /// Index of the first clause the model falsifies.
    pub fn violation(&self, clauses: &[Clause]) -> Option<usize> {
        clauses.iter().position(|c| !c.iter().any(|l| self.holds(l)))
    }
}

pub fn extract_model(ctx: &Context, b: &Branch) -> Result<BranchModel, TableauError> {
    if b.closed || !b.is_complete(ctx) {
        return Err(TableauError::BranchNotComplete);
    }
    let rep: Vec<V0> = b.rep.iter().map(|&r| V0(r)).collect();
    let mut universe: Vec<V0> = rep.clone();
    universe.sort();
    universe.dedup();
    let mut mem1: BTreeMap<V1, BTreeSet<V0>> = BTreeMap::new();
    for s in (0..ctx.n1).map(V1) {
        let ext: BTreeSet<V0> =
            universe.iter().copied().filter(|&x| b.val[ctx.atom_id(Atom::Mem1(x, s)) as usize] > 0).collect();
        if !ext.is_empty() {
            mem1.insert(s, ext);
        }
    }
    let mut mem3: BTreeMap<V3, BTreeSet<(V0, V0)>> = BTreeMap::new();
    for s in (0..ctx.n3).map(V3) {
        let mut ext = BTreeSet::new();
        for &x in &universe {
            for &y in &universe {
                if b.val[ctx.atom_id(Atom::Mem3(x, y, s)) as usize] > 0 {
                    ext.insert((x, y));
                }
            }
        }
        if !ext.is_empty() {
            mem3.insert(s, ext);
        }
    }
    Ok(BranchModel { rep, universe, mem1, mem3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(x: u32, s: u32) -> Atom<V0> {
        Atom::Mem1(V0(x), V1(s))
    }

    fn p(x: Atom<V0>) -> GroundLiteral {
        Literal::pos(x)
    }

    fn n(x: Atom<V0>) -> GroundLiteral {
        Literal::neg(x)
    }

    fn ctx(clauses: Vec<Clause>) -> Context {
        Context::new(3, 3, 1, clauses)
    }

    #[test]
    fn clash_closes() {
        let c = ctx(vec![vec![p(a(0, 0))], vec![n(a(0, 0))]]);
        let s = saturate(&c, &TableauConfig::all_models()).unwrap();
        assert!(s.open.is_empty());
        assert_eq!(s.stats.branches, 1);
    }

    #[test]
    fn e_rule_has_priority() {
        let c = ctx(vec![vec![p(a(0, 0)), p(a(0, 1))], vec![n(a(0, 0))]]);
        let s = saturate(&c, &TableauConfig { audit: true, ..TableauConfig::all_models() }).unwrap();
        assert_eq!(s.open.len(), 1);
        assert_eq!(s.stats.pb, 0);
        assert_eq!(s.open[0].value(&c, &p(a(0, 1))), Some(true));
    }

    #[test]
    fn e_rule_preconditions() {
        let c = ctx(vec![vec![p(a(0, 0)), p(a(0, 1)), p(a(0, 2))], vec![p(a(1, 0))]]);
        let mut b = Branch::root(&c);
        b.assign(&c, &n(a(0, 0)));
        assert!(e_rule(&c, &b, 0, 1).is_err());
        b.assign(&c, &n(a(0, 2)));
        let e = e_rule(&c, &b, 0, 1).unwrap();
        assert_eq!(e.value(&c, &p(a(0, 1))), Some(true));
        let unit = e_rule(&c, &Branch::root(&c), 1, 0).unwrap();
        assert_eq!(unit.value(&c, &p(a(1, 0))), Some(true));
    }

    #[test]
    fn pb_rule_splits_and_merges() {
        let c = ctx(vec![]);
        let root = Branch::root(&c);
        let (x, y) = pb_rule(&c, &root, &p(a(0, 0))).unwrap();
        assert_eq!(x.value(&c, &p(a(0, 0))), Some(true));
        assert_eq!(y.value(&c, &p(a(0, 0))), Some(false));
        assert!(pb_rule(&c, &x, &p(a(0, 0))).is_err());
        let (eq, _) = pb_rule(&c, &root, &p(Atom::Eq(V0(0), V0(1)))).unwrap();
        assert_eq!(eq.rep(V0(1)), V0(0));
    }

    #[test]
    fn equality_closure() {
        let c = ctx(vec![vec![p(Atom::Eq(V0(0), V0(1)))], vec![p(a(0, 0))], vec![n(a(1, 0))]]);
        assert!(!saturate(&c, &TableauConfig::default()).unwrap().is_satisfiable());
        let c = ctx(vec![
            vec![n(Atom::Eq(V0(0), V0(1)))],
            vec![p(Atom::Eq(V0(0), V0(2)))],
            vec![p(Atom::Eq(V0(1), V0(2)))],
        ]);
        assert!(!saturate(&c, &TableauConfig::default()).unwrap().is_satisfiable());
    }

    #[test]
    fn models_satisfy_clauses() {
        let clauses = vec![
            vec![p(a(0, 0)), p(a(0, 1))],
            vec![n(a(0, 0)), p(a(1, 0))],
            vec![p(Atom::Eq(V0(1), V0(2))), n(a(1, 0))],
            vec![n(a(2, 1)), p(a(0, 2))],
        ];
        let c = ctx(clauses.clone());
        let s = saturate(&c, &TableauConfig { audit: true, ..TableauConfig::all_models() }).unwrap();
        assert!(s.open.len() >= 2);
        for b in &s.open {
            let m = extract_model(&c, b).unwrap();
            assert_eq!(m.violation(&clauses), None);
        }
        assert!(s.pb_records.iter().all(|r| !r.e_rule_applicable));
    }

    #[test]
    fn quotient_model() {
        let c = ctx(vec![vec![p(Atom::Eq(V0(0), V0(1)))], vec![p(a(0, 0))]]);
        let s = saturate(&c, &TableauConfig::default()).unwrap();
        let m = extract_model(&c, &s.open[0]).unwrap();
        assert_eq!(m.universe, vec![V0(0), V0(2)]);
        assert!(m.holds(&p(a(1, 0))));
        assert_eq!(m.mem1[&V1(0)], BTreeSet::from([V0(0)]));
    }

    #[test]
    fn closed_branch_has_no_model() {
        let c = ctx(vec![vec![p(a(0, 0))], vec![n(a(0, 0))]]);
        let mut b = Branch::root(&c);
        b.assign(&c, &p(a(0, 0)));
        b.assign(&c, &n(a(0, 0)));
        assert_eq!(extract_model(&c, &b), Err(TableauError::BranchNotComplete));
    }

    #[test]
    fn branch_budget() {
        let clauses: Vec<Clause> = (0..3).map(|x| vec![p(a(x, 0)), p(a(x, 1))]).collect();
        let c = ctx(clauses);
        let cfg = TableauConfig { branch_budget: 4, ..TableauConfig::all_models() };
        assert_eq!(saturate(&c, &cfg).unwrap_err(), TableauError::CapacityExceeded(4));
    }
}
