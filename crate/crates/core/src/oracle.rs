//! Brute-force reference engines: exhaustive interpretations of ground
//! clause sets, a direct model checker for the DL semantics and an
//! exhaustive DL consistency search over small domains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::OracleError;
use crate::ground::Clause;
use crate::model::*;
use crate::translate::{Atom, GroundLiteral, V0};

/// Default bound on the number of free bits of a ground interpretation.
pub const DEFAULT_BIT_BUDGET: u32 = 24;

/// Default bound on the number of free extent bits in a DL search.
pub const DEFAULT_DL_BIT_BUDGET: u32 = 64;

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, max: u32, n: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    go(&mut prefix, 0, n, &mut out);
    out
}

fn blocks(p: &[u32]) -> usize {
    p.iter().max().map_or(0, |&m| m as usize + 1)
}

/// A ground interpretation: level-0 variables are mapped to the blocks of a
/// partition; level-1 extents are bitsets over blocks and level-3 extents
/// bitsets over block pairs `x·b + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub partition: Vec<u32>,
    pub blocks: usize,
    pub mem1: Vec<u64>,
    pub mem3: Vec<u64>,
}

impl Interpretation {
    pub fn holds(&self, l: &GroundLiteral) -> bool {
        let b = |v: V0| self.partition[v.0 as usize] as usize;
        let t = match l.atom {
            Atom::Eq(x, y) => b(x) == b(y),
            Atom::Mem1(x, s) => self.mem1[s.0 as usize] >> b(x) & 1 == 1,
            Atom::Mem3(x, y, s) => self.mem3[s.0 as usize] >> (b(x) * self.blocks + b(y)) & 1 == 1,
        };
        t == l.positive
    }

    pub fn satisfies(&self, clauses: &[Clause]) -> bool {
        clauses.iter().all(|c| c.iter().any(|l| self.holds(l)))
    }
}

/// Every assignment of extents over every admitted partition, each
/// partition's assignments in Gray-code order.
pub struct InterpretationIter {
    partitions: Vec<Vec<u32>>,
    n1: usize,
    n3: usize,
    part: usize,
    step: u64,
    current: Option<Interpretation>,
}

impl InterpretationIter {
    fn start(&mut self) {
        self.current = self.partitions.get(self.part).map(|p| {
            let b = blocks(p).max(1);
            Interpretation { partition: p.clone(), blocks: b, mem1: vec![0; self.n1], mem3: vec![0; self.n3] }
        });
        self.step = 0;
    }

    fn bits(&self, b: usize) -> u32 {
        (b * self.n1 + b * b * self.n3) as u32
    }
}

impl Iterator for InterpretationIter {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        loop {
            let b = self.current.as_ref()?.blocks;
            let total = self.bits(b);
            let (n1, step) = (self.n1, self.step);
            let cur = self.current.as_mut()?;
            if step >> total != 0 {
                self.part += 1;
                self.start();
                continue;
            }
            if step > 0 {
                let j = step.trailing_zeros() as usize;
                if j < b * n1 {
                    cur.mem1[j / b] ^= 1 << (j % b);
                } else {
                    let j = j - b * n1;
                    cur.mem3[j / (b * b)] ^= 1 << (j % (b * b));
                }
            }
            self.step += 1;
            return Some(cur.clone());
        }
    }
}

/// Interpretations of `k` level-0, `n1` level-1 and `n3` level-3 variables.
/// With `quotients` every partition of the level-0 variables is used, else
/// only the one keeping them distinct.
pub fn enumerate_interpretations(
    k: usize,
    n1: usize,
    n3: usize,
    quotients: bool,
    budget: u32,
) -> Result<InterpretationIter, OracleError> {
    let bits = (k * n1 + k * k * n3) as u64;
    if bits > budget as u64 || k > 8 {
        return Err(OracleError::BudgetExceeded { bits, budget });
    }
    let partitions = if quotients { set_partitions(k) } else { vec![(0..k as u32).collect()] };
    let mut it = InterpretationIter { partitions, n1, n3, part: 0, step: 0, current: None };
    it.start();
    Ok(it)
}

/// Satisfiability of a ground clause set over `k` level-0 variables, by
/// exhaustive search over every partition and every truth assignment to
/// the atoms occurring in the clauses. Partial assignments falsifying a
/// clause are cut. Returns a satisfying interpretation.
pub fn brute_sat(
    clauses: &[Clause],
    k: usize,
    n1: usize,
    n3: usize,
    budget: u32,
) -> Result<Option<Interpretation>, OracleError> {
    if k > 8 {
        return Err(OracleError::BudgetExceeded { bits: (k * n1 + k * k * n3) as u64, budget });
    }
    let budget = budget.min(128);
    for p in set_partitions(k) {
        let b = blocks(&p).max(1);
        let key = |a: Atom<V0>| -> Option<(bool, usize, usize)> {
            let blk = |v: V0| p[v.0 as usize] as usize;
            match a {
                Atom::Eq(..) => None,
                Atom::Mem1(x, s) => Some((false, s.0 as usize, blk(x))),
                Atom::Mem3(x, y, s) => Some((true, s.0 as usize, blk(x) * b + blk(y))),
            }
        };
        let mut atoms: Vec<(bool, usize, usize)> = Vec::new();
        let mut masks: Vec<(u128, u128)> = Vec::new();
        let mut sorted: Vec<&Clause> = clauses.iter().collect();
        sorted.sort_by_key(|c| c.len());
        let mut refuted = false;
        for c in sorted {
            let (mut pos, mut neg, mut true_eq) = (0u128, 0u128, false);
            for l in c {
                match key(l.atom) {
                    None => {
                        let Atom::Eq(x, y) = l.atom else { unreachable!() };
                        if (p[x.0 as usize] == p[y.0 as usize]) == l.positive {
                            true_eq = true;
                        }
                    }
                    Some(a) => {
                        let i = match atoms.iter().position(|&x| x == a) {
                            Some(i) => i,
                            None => {
                                atoms.push(a);
                                atoms.len() - 1
                            }
                        };
                        if i >= budget as usize {
                            return Err(OracleError::BudgetExceeded { bits: atoms.len() as u64, budget });
                        }
                        if l.positive {
                            pos |= 1 << i;
                        } else {
                            neg |= 1 << i;
                        }
                    }
                }
            }
            if true_eq || pos & neg != 0 {
                continue;
            }
            if pos | neg == 0 {
                refuted = true;
                break;
            }
            masks.push((pos, neg));
        }
        if refuted {
            continue;
        }
        let n = atoms.len();
        let falsified = |assigned: u128, val: u128| {
            masks.iter().any(|&(pos, neg)| (pos | neg) & !assigned == 0 && pos & val == 0 && neg & !val == 0)
        };
        let mut found = None;
        let mut stack: Vec<(usize, u128)> = vec![(0, 0)];
        while let Some((depth, val)) = stack.pop() {
            let assigned = if depth == 128 { u128::MAX } else { (1u128 << depth) - 1 };
            if falsified(assigned, val) {
                continue;
            }
            if depth == n {
                found = Some(val);
                break;
            }
            stack.push((depth + 1, val | 1 << depth));
            stack.push((depth + 1, val));
        }
        if let Some(val) = found {
            let mut m = Interpretation { partition: p.clone(), blocks: b, mem1: vec![0; n1], mem3: vec![0; n3] };
            if b * b > 64 {
                return Err(OracleError::BudgetExceeded { bits: (b * b) as u64, budget });
            }
            for (i, &(pair, s, pos)) in atoms.iter().enumerate() {
                if val >> i & 1 == 1 {
                    if pair {
                        m.mem3[s] |= 1 << pos;
                    } else {
                        m.mem1[s] |= 1 << pos;
                    }
                }
            }
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// A finite interpretation of a signature. Abstract elements are `0..na`,
/// data elements `0..nd`; concept and data extents are bitsets, abstract
/// role extents bitsets over `x·na + y`, concrete role extents over
/// `x·nd + y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DlInterpretation {
    pub na: usize,
    pub nd: usize,
    pub individuals: BTreeMap<Name, usize>,
    pub constants: BTreeMap<Name, usize>,
    pub datatypes: BTreeMap<Name, u64>,
    /// Keyed by datatype and facet.
    pub facets: BTreeMap<(Name, Name), u64>,
    pub concepts: BTreeMap<Name, u64>,
    pub roles: BTreeMap<Name, u64>,
    pub concrete_roles: BTreeMap<Name, u64>,
    pub data_names: BTreeMap<Name, u64>,
}

fn elems(bits: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| bits >> i & 1 == 1).collect()
}

impl fmt::Display for DlInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "abstract domain: {} element(s)", self.na)?;
        writeln!(f, "data domain: {} element(s)", self.nd)?;
        for (a, x) in &self.individuals {
            writeln!(f, "{a} = o{x}")?;
        }
        for (e, x) in &self.constants {
            writeln!(f, "{e} = v{x}")?;
        }
        let set = |bits: u64, n: usize, p: &str| -> String {
            let v: Vec<String> = elems(bits, n).iter().map(|x| format!("{p}{x}")).collect();
            format!("{{{}}}", v.join(", "))
        };
        let pairs = |bits: u64, w: usize, q: &str| -> String {
            let v: Vec<String> = elems(bits, 64).iter().map(|i| format!("(o{}, {q}{})", i / w, i % w)).collect();
            format!("{{{}}}", v.join(", "))
        };
        for (d, b) in &self.datatypes {
            writeln!(f, "{d} = {}", set(*b, self.nd, "v"))?;
        }
        for ((d, g), b) in &self.facets {
            writeln!(f, "{d}.{g} = {}", set(*b, self.nd, "v"))?;
        }
        for (c, b) in &self.concepts {
            writeln!(f, "{c} = {}", set(*b, self.na, "o"))?;
        }
        for (r, b) in &self.roles {
            writeln!(f, "{r} = {}", pairs(*b, self.na.max(1), "o"))?;
        }
        for (p, b) in &self.concrete_roles {
            writeln!(f, "{p} = {}", pairs(*b, self.nd.max(1), "v"))?;
        }
        for (t, b) in &self.data_names {
            writeln!(f, "{t} = {}", set(*b, self.nd, "v"))?;
        }
        Ok(())
    }
}

/// Direct two-valued evaluation of the semantics, element by element.
struct Eval<'a> {
    i: &'a DlInterpretation,
}

impl Eval<'_> {
    fn mem(bits: u64, i: usize) -> bool {
        bits >> i & 1 == 1
    }

    fn collect(n: usize, f: impl Fn(usize) -> bool) -> u64 {
        (0..n).filter(|&x| f(x)).fold(0, |acc, x| acc | 1 << x)
    }

    fn ind(&self, a: &Name) -> usize {
        self.i.individuals[a]
    }

    fn cons(&self, e: &Name) -> usize {
        self.i.constants[e]
    }

    fn concept(&self, c: &Concept) -> u64 {
        let na = self.i.na;
        match c {
            Concept::Name(n) => self.i.concepts.get(n).copied().unwrap_or(0),
            Concept::Top => Self::collect(na, |_| true),
            Concept::Bottom => 0,
            Concept::Not(c) => {
                let s = self.concept(c);
                Self::collect(na, |x| !Self::mem(s, x))
            }
            Concept::Union(a, b) => {
                let (a, b) = (self.concept(a), self.concept(b));
                Self::collect(na, |x| Self::mem(a, x) || Self::mem(b, x))
            }
            Concept::Intersection(a, b) => {
                let (a, b) = (self.concept(a), self.concept(b));
                Self::collect(na, |x| Self::mem(a, x) && Self::mem(b, x))
            }
            Concept::Nominal(a) => 1 << self.ind(a),
            Concept::NominalSet(v) => v.iter().fold(0, |acc, a| acc | 1 << self.ind(a)),
            Concept::SelfRestriction(r) => {
                let r = self.role(r);
                Self::collect(na, |x| Self::mem(r, x * na + x))
            }
            Concept::ValuedExists(r, a) => {
                let (r, y) = (self.role(r), self.ind(a));
                Self::collect(na, |x| Self::mem(r, x * na + y))
            }
            Concept::DatatypedExists(p, e) => {
                let (p, y, nd) = (self.crole(p), self.cons(e), self.i.nd);
                Self::collect(na, |x| Self::mem(p, x * nd + y))
            }
        }
    }

    fn role(&self, r: &Role) -> u64 {
        let na = self.i.na;
        let pairs = |f: &dyn Fn(usize, usize) -> bool| Self::collect(na * na, |i| f(i / na, i % na));
        match r {
            Role::Name(n) => self.i.roles.get(n).copied().unwrap_or(0),
            Role::Universal => pairs(&|_, _| true),
            Role::Inverse(r) => {
                let r = self.role(r);
                pairs(&|x, y| Self::mem(r, y * na + x))
            }
            Role::Not(r) => {
                let r = self.role(r);
                pairs(&|x, y| !Self::mem(r, x * na + y))
            }
            Role::Union(a, b) => {
                let (a, b) = (self.role(a), self.role(b));
                pairs(&|x, y| Self::mem(a, x * na + y) || Self::mem(b, x * na + y))
            }
            Role::Intersection(a, b) => {
                let (a, b) = (self.role(a), self.role(b));
                pairs(&|x, y| Self::mem(a, x * na + y) && Self::mem(b, x * na + y))
            }
            Role::DomainRestr(r, c) => {
                let (r, c) = (self.role(r), self.concept(c));
                pairs(&|x, y| Self::mem(r, x * na + y) && Self::mem(c, x))
            }
            Role::RangeRestr(r, c) => {
                let (r, c) = (self.role(r), self.concept(c));
                pairs(&|x, y| Self::mem(r, x * na + y) && Self::mem(c, y))
            }
            Role::Restr(r, c1, c2) => {
                let (r, c1, c2) = (self.role(r), self.concept(c1), self.concept(c2));
                pairs(&|x, y| Self::mem(r, x * na + y) && Self::mem(c1, x) && Self::mem(c2, y))
            }
            Role::Id(c) => {
                let c = self.concept(c);
                pairs(&|x, y| x == y && Self::mem(c, x))
            }
            Role::Product(c1, c2) => {
                let (c1, c2) = (self.concept(c1), self.concept(c2));
                pairs(&|x, y| Self::mem(c1, x) && Self::mem(c2, y))
            }
        }
    }

    fn crole(&self, p: &ConcreteRole) -> u64 {
        let (na, nd) = (self.i.na, self.i.nd);
        let pairs = |f: &dyn Fn(usize, usize) -> bool| Self::collect(na * nd, |i| f(i / nd, i % nd));
        match p {
            ConcreteRole::Name(n) => self.i.concrete_roles.get(n).copied().unwrap_or(0),
            ConcreteRole::Not(p) => {
                let p = self.crole(p);
                pairs(&|x, y| !Self::mem(p, x * nd + y))
            }
            ConcreteRole::Union(a, b) => {
                let (a, b) = (self.crole(a), self.crole(b));
                pairs(&|x, y| Self::mem(a, x * nd + y) || Self::mem(b, x * nd + y))
            }
            ConcreteRole::Intersection(a, b) => {
                let (a, b) = (self.crole(a), self.crole(b));
                pairs(&|x, y| Self::mem(a, x * nd + y) && Self::mem(b, x * nd + y))
            }
            ConcreteRole::DomainRestr(p, c) => {
                let (p, c) = (self.crole(p), self.concept(c));
                pairs(&|x, y| Self::mem(p, x * nd + y) && Self::mem(c, x))
            }
            ConcreteRole::RangeRestr(p, t) => {
                let (p, t) = (self.crole(p), self.data(t));
                pairs(&|x, y| Self::mem(p, x * nd + y) && Self::mem(t, y))
            }
            ConcreteRole::Restr(p, c, t) => {
                let (p, c, t) = (self.crole(p), self.concept(c), self.data(t));
                pairs(&|x, y| Self::mem(p, x * nd + y) && Self::mem(c, x) && Self::mem(t, y))
            }
        }
    }

    fn facet_expr(&self, d: &Name, psi: &FacetCnf) -> u64 {
        let nd = self.i.nd;
        let dt = self.i.datatypes.get(d).copied().unwrap_or(0);
        let base = |b: &FacetBase| match b {
            FacetBase::Facet(f) => self.i.facets.get(&(d.clone(), f.clone())).copied().unwrap_or(0),
            FacetBase::Top => dt,
            FacetBase::Bottom => 0,
        };
        Self::collect(nd, |x| {
            Self::mem(dt, x)
                && psi.0.iter().all(|clause| {
                    clause.iter().any(|l| {
                        let inside = Self::mem(base(&l.base), x);
                        if l.positive {
                            inside
                        } else {
                            !inside
                        }
                    })
                })
        })
    }

    fn data(&self, t: &DataTerm) -> u64 {
        let nd = self.i.nd;
        match t {
            DataTerm::Datatype(d) => self.i.datatypes.get(d).copied().unwrap_or(0),
            DataTerm::Enumeration(v) => v.iter().fold(0, |acc, e| acc | 1 << self.cons(e)),
            DataTerm::FacetExpr(d, psi) => self.facet_expr(d, psi),
            DataTerm::Not(t) => {
                let s = self.data(t);
                Self::collect(nd, |x| !Self::mem(s, x))
            }
            DataTerm::Union(a, b) => {
                let (a, b) = (self.data(a), self.data(b));
                Self::collect(nd, |x| Self::mem(a, x) || Self::mem(b, x))
            }
            DataTerm::Intersection(a, b) => {
                let (a, b) = (self.data(a), self.data(b));
                Self::collect(nd, |x| Self::mem(a, x) && Self::mem(b, x))
            }
            DataTerm::Singleton(e) => 1 << self.cons(e),
            DataTerm::Named(n) => self.i.data_names.get(n).copied().unwrap_or(0),
        }
    }

    fn subset(a: u64, b: u64, n: usize) -> bool {
        (0..n).all(|x| !Self::mem(a, x) || Self::mem(b, x))
    }

    fn successors(r: u64, x: usize, w: usize, target: u64) -> usize {
        (0..w).filter(|&y| Self::mem(r, x * w + y) && Self::mem(target, y)).count()
    }

    fn forall(&self, r: u64, w: usize, d: u64) -> u64 {
        Self::collect(self.i.na, |x| (0..w).all(|y| !Self::mem(r, x * w + y) || Self::mem(d, y)))
    }

    fn at_least(&self, n: u32, r: u64, w: usize, c: u64) -> u64 {
        Self::collect(self.i.na, |x| Self::successors(r, x, w, c) >= n as usize)
    }

    fn at_most(&self, n: u32, r: u64, w: usize, c: u64) -> u64 {
        Self::collect(self.i.na, |x| Self::successors(r, x, w, c) <= n as usize)
    }

    /// `a ∘ b` over `n × n` pairs: `⟨x, z⟩` with `⟨x, y⟩ ∈ a` and
    /// `⟨y, z⟩ ∈ b` for some `y`.
    fn compose(a: u64, b: u64, n: usize) -> u64 {
        Self::collect(n * n, |i| {
            let (x, z) = (i / n, i % n);
            (0..n).any(|y| Self::mem(a, x * n + y) && Self::mem(b, y * n + z))
        })
    }

    fn statement(&self, s: &Statement) -> bool {
        let (na, nd) = (self.i.na, self.i.nd);
        let diag = Self::collect(na * na, |i| i / na == i % na);
        let inverse = |r: u64| Self::collect(na * na, |i| Self::mem(r, (i % na) * na + i / na));
        use Statement::*;
        match s {
            ConceptEquiv(a, b) => self.concept(a) == self.concept(b),
            ConceptSub(a, b) => Self::subset(self.concept(a), self.concept(b), na),
            SubAll { sub, role, filler } => {
                Self::subset(self.concept(sub), self.forall(self.role(role), na, self.concept(filler)), na)
            }
            ExistsSub { role, filler, sup } => {
                Self::subset(self.at_least(1, self.role(role), na, self.concept(filler)), self.concept(sup), na)
            }
            AtLeastSub { n, role, filler, sup } => {
                Self::subset(self.at_least(*n, self.role(role), na, self.concept(filler)), self.concept(sup), na)
            }
            SubAtMost { sub, n, role, filler } => {
                Self::subset(self.concept(sub), self.at_most(*n, self.role(role), na, self.concept(filler)), na)
            }
            SubAllData { sub, role, range } => {
                Self::subset(self.concept(sub), self.forall(self.crole(role), nd, self.data(range)), na)
            }
            ExistsDataSub { role, range, sup } => {
                Self::subset(self.at_least(1, self.crole(role), nd, self.data(range)), self.concept(sup), na)
            }
            AtLeastDataSub { n, role, range, sup } => {
                Self::subset(self.at_least(*n, self.crole(role), nd, self.data(range)), self.concept(sup), na)
            }
            SubAtMostData { sub, n, role, range } => {
                Self::subset(self.concept(sub), self.at_most(*n, self.crole(role), nd, self.data(range)), na)
            }
            DataEquiv(a, b) => self.data(a) == self.data(b),
            DataSub(a, b) => Self::subset(self.data(a), self.data(b), nd),
            RoleEquiv(a, b) => self.role(a) == self.role(b),
            RoleSub(a, b) => Self::subset(self.role(a), self.role(b), na * na),
            RoleChain(chain, r) => {
                let mut it = chain.iter().map(|x| self.role(x));
                let first = it.next().unwrap_or(diag);
                let comp = it.fold(first, |acc, x| Self::compose(acc, x, na));
                Self::subset(comp, self.role(r), na * na)
            }
            Sym(r) => {
                let r = self.role(r);
                Self::subset(inverse(r), r, na * na)
            }
            Asym(r) => {
                let r = self.role(r);
                r & inverse(r) == 0
            }
            Ref(r) => Self::subset(diag, self.role(r), na * na),
            Irref(r) => self.role(r) & diag == 0,
            Dis(a, b) => self.role(a) & self.role(b) == 0,
            Tra(r) => {
                let r = self.role(r);
                Self::subset(Self::compose(r, r, na), r, na * na)
            }
            Fun(r) => {
                let r = self.role(r);
                Self::subset(Self::compose(inverse(r), r, na), diag, na * na)
            }
            CRoleEquiv(a, b) => self.crole(a) == self.crole(b),
            CRoleSub(a, b) => Self::subset(self.crole(a), self.crole(b), na * nd),
            CRoleDis(a, b) => self.crole(a) & self.crole(b) == 0,
            CRoleFun(p) => {
                let p = self.crole(p);
                (0..na).all(|x| {
                    (0..nd).all(|y| (0..nd).all(|z| !(Self::mem(p, x * nd + y) && Self::mem(p, x * nd + z)) || y == z))
                })
            }
            ConceptAssert(a, c) => Self::mem(self.concept(c), self.ind(a)),
            RoleAssert(a, b, r) => Self::mem(self.role(r), self.ind(a) * na + self.ind(b)),
            NegRoleAssert(a, b, r) => !Self::mem(self.role(r), self.ind(a) * na + self.ind(b)),
            SameAs(a, b) => self.ind(a) == self.ind(b),
            DifferentFrom(a, b) => self.ind(a) != self.ind(b),
            DataAssert(e, t) => Self::mem(self.data(t), self.cons(e)),
            CRoleAssert(a, e, p) => Self::mem(self.crole(p), self.ind(a) * nd + self.cons(e)),
            NegCRoleAssert(a, e, p) => !Self::mem(self.crole(p), self.ind(a) * nd + self.cons(e)),
        }
    }
}

/// Whether `i` satisfies `s`, by direct evaluation.
pub fn statement_holds(i: &DlInterpretation, s: &Statement) -> bool {
    Eval { i }.statement(s)
}

/// The extent of `c` in `i` as a bitset over the abstract domain.
pub fn concept_extent(i: &DlInterpretation, c: &Concept) -> u64 {
    Eval { i }.concept(c)
}

/// The extent of `t` in `i` as a bitset over the data domain.
pub fn data_extent(i: &DlInterpretation, t: &DataTerm) -> u64 {
    Eval { i }.data(t)
}

/// True when `i` is a well-formed interpretation of the signature of `kb`
/// and satisfies every statement.
pub fn dl_model_check(kb: &KnowledgeBase, i: &DlInterpretation) -> bool {
    let sig = &kb.signature;
    if i.na == 0 || i.nd == 0 || i.na * i.na > 64 || i.na * i.nd > 64 {
        return false;
    }
    let full_d = Eval::collect(i.nd, |_| true);
    if !sig.individuals.iter().all(|a| i.individuals.get(a).is_some_and(|&x| x < i.na)) {
        return false;
    }
    let mut seen = 0u64;
    for (d, decl) in &sig.datatypes {
        let Some(&ext) = i.datatypes.get(d) else { return false };
        if ext == 0 || ext & !full_d != 0 || ext & seen != 0 {
            return false;
        }
        seen |= ext;
        if !decl.constants.iter().all(|e| i.constants.get(e).is_some_and(|&x| Eval::mem(ext, x))) {
            return false;
        }
        if !decl.facets.iter().all(|f| i.facets.get(&(d.clone(), f.clone())).is_some_and(|&b| b & !ext == 0)) {
            return false;
        }
    }
    let full_a = Eval::collect(i.na, |_| true);
    if i.concepts.values().any(|&b| b & !full_a != 0) || i.data_names.values().any(|&b| b & !full_d != 0) {
        return false;
    }
    let ev = Eval { i };
    kb.statements().all(|s| ev.statement(s))
}

/// Three-valued extent: `lo` holds the elements known to be in, `hi` those
/// possibly in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Iv {
    lo: u64,
    hi: u64,
}

impl Iv {
    fn exact(b: u64) -> Self {
        Iv { lo: b, hi: b }
    }

    fn map(self, f: impl Fn(u64) -> u64) -> Self {
        Iv { lo: f(self.lo), hi: f(self.hi) }
    }

    fn zip(self, o: Iv, f: impl Fn(u64, u64) -> u64) -> Self {
        Iv { lo: f(self.lo, o.lo), hi: f(self.hi, o.hi) }
    }

    fn complement(self, full: u64) -> Self {
        Iv { lo: full & !self.hi, hi: full & !self.lo }
    }
}

fn subset3(a: Iv, b: Iv) -> Option<bool> {
    if a.hi & !b.lo == 0 {
        Some(true)
    } else if a.lo & !b.hi != 0 {
        Some(false)
    } else {
        None
    }
}

fn disjoint3(a: Iv, b: Iv) -> Option<bool> {
    if a.hi & b.hi == 0 {
        Some(true)
    } else if a.lo & b.lo != 0 {
        Some(false)
    } else {
        None
    }
}

fn equal3(a: Iv, b: Iv) -> Option<bool> {
    and3(subset3(a, b), subset3(b, a))
}

fn member3(a: Iv, i: usize) -> Option<bool> {
    if a.lo >> i & 1 == 1 {
        Some(true)
    } else if a.hi >> i & 1 == 0 {
        Some(false)
    } else {
        None
    }
}

fn and3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Bit-parallel set operations on pair sets of width `w`.
mod bits {
    pub fn row(r: u64, x: usize, w: usize) -> u64 {
        (r >> (x * w)) & super::full(w)
    }

    pub fn transpose(r: u64, n: usize, w: usize) -> u64 {
        let mut out = 0;
        for x in 0..n {
            for y in 0..w {
                if r >> (x * w + y) & 1 == 1 {
                    out |= 1 << (y * n + x);
                }
            }
        }
        out
    }

    pub fn compose(a: u64, b: u64, n: usize) -> u64 {
        let mut out = 0;
        for x in 0..n {
            let mut acc = 0;
            let ra = row(a, x, n);
            for y in 0..n {
                if ra >> y & 1 == 1 {
                    acc |= row(b, y, n);
                }
            }
            out |= acc << (x * n);
        }
        out
    }

    pub fn rows_where(n: usize, f: impl Fn(usize) -> bool) -> u64 {
        (0..n).filter(|&x| f(x)).fold(0, |acc, x| acc | 1 << x)
    }

    pub fn product(c1: u64, c2: u64, n: usize, w: usize) -> u64 {
        let mut out = 0;
        for x in 0..n {
            if c1 >> x & 1 == 1 {
                out |= c2 << (x * w);
            }
        }
        out
    }

    pub fn diag(c: u64, n: usize) -> u64 {
        (0..n).filter(|&x| c >> x & 1 == 1).fold(0, |acc, x| acc | 1 << (x * n + x))
    }

    pub fn column(r: u64, y: usize, n: usize, w: usize) -> u64 {
        rows_where(n, |x| r >> (x * w + y) & 1 == 1)
    }
}

/// A partially assigned interpretation.
#[derive(Clone, Debug)]
struct Partial {
    na: usize,
    nd: usize,
    individuals: BTreeMap<Name, usize>,
    constants: BTreeMap<Name, usize>,
    datatypes: BTreeMap<Name, u64>,
    facets: BTreeMap<(Name, Name), Iv>,
    concepts: BTreeMap<Name, Iv>,
    roles: BTreeMap<Name, Iv>,
    concrete_roles: BTreeMap<Name, Iv>,
    data_names: BTreeMap<Name, Iv>,
}

impl Partial {
    fn concept(&self, c: &Concept) -> Iv {
        let na = self.na;
        match c {
            Concept::Name(n) => self.concepts.get(n).copied().unwrap_or_default(),
            Concept::Top => Iv::exact(full(na)),
            Concept::Bottom => Iv::exact(0),
            Concept::Not(c) => self.concept(c).complement(full(na)),
            Concept::Union(a, b) => self.concept(a).zip(self.concept(b), |x, y| x | y),
            Concept::Intersection(a, b) => self.concept(a).zip(self.concept(b), |x, y| x & y),
            Concept::Nominal(a) => Iv::exact(1 << self.individuals[a]),
            Concept::NominalSet(v) => Iv::exact(v.iter().fold(0, |acc, a| acc | 1 << self.individuals[a])),
            Concept::SelfRestriction(r) => self.role(r).map(|r| bits::rows_where(na, |x| r >> (x * na + x) & 1 == 1)),
            Concept::ValuedExists(r, a) => {
                let y = self.individuals[a];
                self.role(r).map(|r| bits::column(r, y, na, na))
            }
            Concept::DatatypedExists(p, e) => {
                let y = self.constants[e];
                let nd = self.nd;
                self.crole(p).map(|p| bits::column(p, y, na, nd))
            }
        }
    }

    fn role(&self, r: &Role) -> Iv {
        let na = self.na;
        let all = full(na * na);
        match r {
            Role::Name(n) => self.roles.get(n).copied().unwrap_or_default(),
            Role::Universal => Iv::exact(all),
            Role::Inverse(r) => self.role(r).map(|r| bits::transpose(r, na, na)),
            Role::Not(r) => self.role(r).complement(all),
            Role::Union(a, b) => self.role(a).zip(self.role(b), |x, y| x | y),
            Role::Intersection(a, b) => self.role(a).zip(self.role(b), |x, y| x & y),
            Role::DomainRestr(r, c) => self.role(r).zip(self.concept(c), |r, c| r & bits::product(c, full(na), na, na)),
            Role::RangeRestr(r, c) => self.role(r).zip(self.concept(c), |r, c| r & bits::product(full(na), c, na, na)),
            Role::Restr(r, c1, c2) => {
                let cc = self.concept(c1).zip(self.concept(c2), |a, b| bits::product(a, b, na, na));
                self.role(r).zip(cc, |r, c| r & c)
            }
            Role::Id(c) => self.concept(c).map(|c| bits::diag(c, na)),
            Role::Product(c1, c2) => self.concept(c1).zip(self.concept(c2), |a, b| bits::product(a, b, na, na)),
        }
    }

    fn crole(&self, p: &ConcreteRole) -> Iv {
        let (na, nd) = (self.na, self.nd);
        match p {
            ConcreteRole::Name(n) => self.concrete_roles.get(n).copied().unwrap_or_default(),
            ConcreteRole::Not(p) => self.crole(p).complement(full(na * nd)),
            ConcreteRole::Union(a, b) => self.crole(a).zip(self.crole(b), |x, y| x | y),
            ConcreteRole::Intersection(a, b) => self.crole(a).zip(self.crole(b), |x, y| x & y),
            ConcreteRole::DomainRestr(p, c) => {
                self.crole(p).zip(self.concept(c), |p, c| p & bits::product(c, full(nd), na, nd))
            }
            ConcreteRole::RangeRestr(p, t) => {
                self.crole(p).zip(self.data(t), |p, t| p & bits::product(full(na), t, na, nd))
            }
            ConcreteRole::Restr(p, c, t) => {
                let ct = self.concept(c).zip(self.data(t), |c, t| bits::product(c, t, na, nd));
                self.crole(p).zip(ct, |p, c| p & c)
            }
        }
    }

    fn data(&self, t: &DataTerm) -> Iv {
        let nd = self.nd;
        match t {
            DataTerm::Datatype(d) => Iv::exact(self.datatypes.get(d).copied().unwrap_or(0)),
            DataTerm::Enumeration(v) => Iv::exact(v.iter().fold(0, |acc, e| acc | 1 << self.constants[e])),
            DataTerm::FacetExpr(d, psi) => {
                let dt = self.datatypes.get(d).copied().unwrap_or(0);
                let lit = |l: &FacetLiteral| {
                    let base = match &l.base {
                        FacetBase::Facet(f) => self.facets.get(&(d.clone(), f.clone())).copied().unwrap_or_default(),
                        FacetBase::Top => Iv::exact(dt),
                        FacetBase::Bottom => Iv::exact(0),
                    };
                    if l.positive {
                        base
                    } else {
                        base.complement(dt)
                    }
                };
                psi.0.iter().fold(Iv::exact(dt), |acc, clause| {
                    let c = clause.iter().fold(Iv::exact(0), |a, l| a.zip(lit(l), |x, y| x | y));
                    acc.zip(c, |x, y| x & y)
                })
            }
            DataTerm::Not(t) => self.data(t).complement(full(nd)),
            DataTerm::Union(a, b) => self.data(a).zip(self.data(b), |x, y| x | y),
            DataTerm::Intersection(a, b) => self.data(a).zip(self.data(b), |x, y| x & y),
            DataTerm::Singleton(e) => Iv::exact(1 << self.constants[e]),
            DataTerm::Named(n) => self.data_names.get(n).copied().unwrap_or_default(),
        }
    }

    fn count_at_least(&self, n: u32, r: u64, w: usize, c: u64) -> u64 {
        bits::rows_where(self.na, |x| (bits::row(r, x, w) & c).count_ones() >= n)
    }

    fn at_least(&self, n: u32, r: Iv, w: usize, c: Iv) -> Iv {
        Iv { lo: self.count_at_least(n, r.lo, w, c.lo), hi: self.count_at_least(n, r.hi, w, c.hi) }
    }

    fn at_most(&self, n: u32, r: Iv, w: usize, c: Iv) -> Iv {
        let f = |r: u64, c: u64| bits::rows_where(self.na, |x| (bits::row(r, x, w) & c).count_ones() <= n);
        Iv { lo: f(r.hi, c.hi), hi: f(r.lo, c.lo) }
    }

    fn forall(&self, r: Iv, w: usize, d: Iv) -> Iv {
        let f = |r: u64, d: u64| bits::rows_where(self.na, |x| bits::row(r, x, w) & !d == 0);
        Iv { lo: f(r.hi, d.lo), hi: f(r.lo, d.hi) }
    }

    fn statement(&self, s: &Statement) -> Option<bool> {
        let (na, nd) = (self.na, self.nd);
        let diag = Iv::exact(bits::diag(full(na), na));
        let inv = |r: Iv| r.map(|r| bits::transpose(r, na, na));
        let comp = |a: Iv, b: Iv| a.zip(b, |x, y| bits::compose(x, y, na));
        use Statement::*;
        match s {
            ConceptEquiv(a, b) => equal3(self.concept(a), self.concept(b)),
            ConceptSub(a, b) => subset3(self.concept(a), self.concept(b)),
            SubAll { sub, role, filler } => {
                subset3(self.concept(sub), self.forall(self.role(role), na, self.concept(filler)))
            }
            ExistsSub { role, filler, sup } => {
                subset3(self.at_least(1, self.role(role), na, self.concept(filler)), self.concept(sup))
            }
            AtLeastSub { n, role, filler, sup } => {
                subset3(self.at_least(*n, self.role(role), na, self.concept(filler)), self.concept(sup))
            }
            SubAtMost { sub, n, role, filler } => {
                subset3(self.concept(sub), self.at_most(*n, self.role(role), na, self.concept(filler)))
            }
            SubAllData { sub, role, range } => {
                subset3(self.concept(sub), self.forall(self.crole(role), nd, self.data(range)))
            }
            ExistsDataSub { role, range, sup } => {
                subset3(self.at_least(1, self.crole(role), nd, self.data(range)), self.concept(sup))
            }
            AtLeastDataSub { n, role, range, sup } => {
                subset3(self.at_least(*n, self.crole(role), nd, self.data(range)), self.concept(sup))
            }
            SubAtMostData { sub, n, role, range } => {
                subset3(self.concept(sub), self.at_most(*n, self.crole(role), nd, self.data(range)))
            }
            DataEquiv(a, b) => equal3(self.data(a), self.data(b)),
            DataSub(a, b) => subset3(self.data(a), self.data(b)),
            RoleEquiv(a, b) => equal3(self.role(a), self.role(b)),
            RoleSub(a, b) => subset3(self.role(a), self.role(b)),
            RoleChain(chain, r) => {
                let mut it = chain.iter().map(|x| self.role(x));
                let first = it.next().unwrap_or(diag);
                subset3(it.fold(first, comp), self.role(r))
            }
            Sym(r) => {
                let r = self.role(r);
                subset3(inv(r), r)
            }
            Asym(r) => {
                let r = self.role(r);
                disjoint3(r, inv(r))
            }
            Ref(r) => subset3(diag, self.role(r)),
            Irref(r) => disjoint3(self.role(r), diag),
            Dis(a, b) => disjoint3(self.role(a), self.role(b)),
            Tra(r) => {
                let r = self.role(r);
                subset3(comp(r, r), r)
            }
            Fun(r) => {
                let r = self.role(r);
                subset3(comp(inv(r), r), diag)
            }
            CRoleEquiv(a, b) => equal3(self.crole(a), self.crole(b)),
            CRoleSub(a, b) => subset3(self.crole(a), self.crole(b)),
            CRoleDis(a, b) => disjoint3(self.crole(a), self.crole(b)),
            CRoleFun(p) => {
                let p = self.crole(p);
                let ok = |p: u64| (0..na).all(|x| bits::row(p, x, nd).count_ones() <= 1);
                if ok(p.hi) {
                    Some(true)
                } else if !ok(p.lo) {
                    Some(false)
                } else {
                    None
                }
            }
            ConceptAssert(a, c) => member3(self.concept(c), self.individuals[a]),
            RoleAssert(a, b, r) => member3(self.role(r), self.individuals[a] * na + self.individuals[b]),
            NegRoleAssert(a, b, r) => member3(self.role(r), self.individuals[a] * na + self.individuals[b]).map(|t| !t),
            SameAs(a, b) => Some(self.individuals[a] == self.individuals[b]),
            DifferentFrom(a, b) => Some(self.individuals[a] != self.individuals[b]),
            DataAssert(e, t) => member3(self.data(t), self.constants[e]),
            CRoleAssert(a, e, p) => member3(self.crole(p), self.individuals[a] * nd + self.constants[e]),
            NegCRoleAssert(a, e, p) => member3(self.crole(p), self.individuals[a] * nd + self.constants[e]).map(|t| !t),
        }
    }

    fn evaluate(&self, kb: &KnowledgeBase) -> Option<bool> {
        let mut all = Some(true);
        for s in kb.statements() {
            match self.statement(s) {
                Some(false) => return Some(false),
                None => all = None,
                Some(true) => {}
            }
        }
        all
    }

    /// The interpretation with every undecided bit false.
    fn lower(&self) -> DlInterpretation {
        let lo = |m: &BTreeMap<Name, Iv>| m.iter().map(|(k, v)| (k.clone(), v.lo)).collect();
        DlInterpretation {
            na: self.na,
            nd: self.nd,
            individuals: self.individuals.clone(),
            constants: self.constants.clone(),
            datatypes: self.datatypes.clone(),
            facets: self.facets.iter().map(|(k, v)| (k.clone(), v.lo)).collect(),
            concepts: lo(&self.concepts),
            roles: lo(&self.roles),
            concrete_roles: lo(&self.concrete_roles),
            data_names: lo(&self.data_names),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Concept,
    Role,
    ConcreteRole,
    Facet,
    DataName,
}

/// Counters of one consistency search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DlSearchStats {
    pub layouts: u64,
    pub nodes: u64,
    /// Leaves the three-valued evaluation accepted but the model checker
    /// rejected. Always zero unless the evaluators disagree.
    pub mismatches: u64,
}

/// Data domain size, constant positions and datatype extents.
type DataLayout = (usize, BTreeMap<Name, usize>, BTreeMap<Name, u64>);

/// Domain layouts: abstract elements are the blocks of a partition of the
/// individuals (one element when there are none); data elements are the
/// blocks of a partition of each datatype's constants, one element for a
/// datatype without constants, or a single element when there are no
/// datatypes.
fn layouts(sig: &Signature) -> Vec<Partial> {
    let ind_parts = set_partitions(sig.individuals.len());
    let dts: Vec<(&Name, &DatatypeDecl)> = sig.datatypes.iter().collect();
    let mut data_layouts: Vec<DataLayout> = vec![(0, BTreeMap::new(), BTreeMap::new())];
    if dts.is_empty() {
        data_layouts = vec![(1, BTreeMap::new(), BTreeMap::new())];
    }
    for (d, decl) in &dts {
        let mut next = Vec::new();
        for (nd, cons, ext) in &data_layouts {
            for p in set_partitions(decl.constants.len()) {
                let b = blocks(&p).max(1);
                let mut cons = cons.clone();
                for (e, &blk) in decl.constants.iter().zip(&p) {
                    cons.insert(e.clone(), nd + blk as usize);
                }
                let mut ext = ext.clone();
                ext.insert((*d).clone(), (full(b)) << nd);
                next.push((nd + b, cons, ext));
            }
        }
        data_layouts = next;
    }
    let mut out = Vec::new();
    for p in &ind_parts {
        let na = blocks(p).max(1);
        let individuals: BTreeMap<Name, usize> =
            sig.individuals.iter().zip(p).map(|(a, &b)| (a.clone(), b as usize)).collect();
        for (nd, constants, datatypes) in &data_layouts {
            let nd = *nd;
            let free = |n: usize| Iv { lo: 0, hi: full(n) };
            let mut facets = BTreeMap::new();
            for (d, decl) in &dts {
                for f in &decl.facets {
                    facets.insert(((*d).clone(), f.clone()), Iv { lo: 0, hi: datatypes[*d] });
                }
            }
            out.push(Partial {
                na,
                nd,
                individuals: individuals.clone(),
                constants: constants.clone(),
                datatypes: datatypes.clone(),
                facets,
                concepts: sig.concepts.iter().map(|c| (c.clone(), free(na))).collect(),
                roles: sig.roles.iter().map(|r| (r.clone(), free(na * na))).collect(),
                concrete_roles: sig.concrete_roles.iter().map(|p| (p.clone(), free(na * nd))).collect(),
                data_names: sig.data_names.iter().map(|t| (t.clone(), free(nd))).collect(),
            });
        }
    }
    out
}

fn free_bits(p: &Partial) -> Vec<(Slot, Name, Option<Name>, usize)> {
    let mut out = Vec::new();
    let mut push = |slot: Slot, key: &Name, sub: Option<&Name>, iv: &Iv| {
        for i in 0..64 {
            if (iv.hi & !iv.lo) >> i & 1 == 1 {
                out.push((slot, key.clone(), sub.cloned(), i));
            }
        }
    };
    for (k, v) in &p.concepts {
        push(Slot::Concept, k, None, v);
    }
    for (k, v) in &p.roles {
        push(Slot::Role, k, None, v);
    }
    for (k, v) in &p.concrete_roles {
        push(Slot::ConcreteRole, k, None, v);
    }
    for ((d, f), v) in &p.facets {
        push(Slot::Facet, d, Some(f), v);
    }
    for (k, v) in &p.data_names {
        push(Slot::DataName, k, None, v);
    }
    out
}

fn set_bit(p: &mut Partial, slot: &(Slot, Name, Option<Name>, usize), value: bool) {
    let (kind, key, sub, i) = slot;
    let iv = match kind {
        Slot::Concept => p.concepts.get_mut(key),
        Slot::Role => p.roles.get_mut(key),
        Slot::ConcreteRole => p.concrete_roles.get_mut(key),
        Slot::Facet => p.facets.get_mut(&(key.clone(), sub.clone().expect("facet key"))),
        Slot::DataName => p.data_names.get_mut(key),
    }
    .expect("slot exists");
    if value {
        iv.lo |= 1 << i;
    } else {
        iv.hi &= !(1 << i);
    }
}

fn search(
    kb: &KnowledgeBase,
    p: &mut Partial,
    slots: &[(Slot, Name, Option<Name>, usize)],
    stats: &mut DlSearchStats,
) -> Option<DlInterpretation> {
    stats.nodes += 1;
    match p.evaluate(kb) {
        Some(false) => return None,
        Some(true) => {
            let m = p.lower();
            if dl_model_check(kb, &m) {
                return Some(m);
            }
            stats.mismatches += 1;
        }
        None => {}
    }
    let (first, rest) = slots.split_first()?;
    for value in [false, true] {
        let saved = p.clone();
        set_bit(p, first, value);
        if let Some(m) = search(kb, p, rest, stats) {
            return Some(m);
        }
        *p = saved;
    }
    None
}

/// Consistency of `kb` by exhaustive search over the domain layouts of
/// [`layouts`], pruned by three-valued evaluation of every statement.
/// Returns a model and the search counters.
pub fn dl_consistent_with_stats(
    kb: &KnowledgeBase,
    budget: u32,
) -> Result<(Option<DlInterpretation>, DlSearchStats), OracleError> {
    let mut stats = DlSearchStats::default();
    for mut p in layouts(&kb.signature) {
        if p.na * p.na > 64 || p.na * p.nd > 64 {
            return Err(OracleError::BudgetExceeded { bits: (p.na * p.na) as u64, budget });
        }
        let slots = free_bits(&p);
        if slots.len() > budget as usize {
            return Err(OracleError::BudgetExceeded { bits: slots.len() as u64, budget });
        }
        stats.layouts += 1;
        if let Some(m) = search(kb, &mut p, &slots, &mut stats) {
            return Ok((Some(m), stats));
        }
    }
    Ok((None, stats))
}

pub fn dl_consistent(kb: &KnowledgeBase, budget: u32) -> Result<Option<DlInterpretation>, OracleError> {
    dl_consistent_with_stats(kb, budget).map(|(m, _)| m)
}

/// `Qσ` as assertions, or `None` when some literal is ill-typed under `σ`
/// and therefore false.
fn query_assertions(q: &Query, sigma: &BTreeMap<Name, DlValue>) -> Option<Vec<Statement>> {
    let value = |t: &QueryTerm| match t {
        QueryTerm::Var(v) => sigma[v].clone(),
        QueryTerm::Individual(a) => DlValue::Individual(a.clone()),
        QueryTerm::Constant(e) => DlValue::Constant(e.clone()),
    };
    let mut out = Vec::new();
    for l in &q.literals {
        let s = match (&l.atom, l.positive) {
            (QueryAtom::Concept(c, w), pos) => match value(w) {
                DlValue::Individual(a) => {
                    let c = Concept::Name(c.clone());
                    Statement::ConceptAssert(a, if pos { c } else { Concept::negation(c) })
                }
                DlValue::Constant(_) if pos => return None,
                DlValue::Constant(_) => continue,
            },
            (QueryAtom::Role(r, w1, w2), pos) => match (value(w1), value(w2)) {
                (DlValue::Individual(a), DlValue::Individual(b)) => {
                    let r = Role::Name(r.clone());
                    if pos {
                        Statement::RoleAssert(a, b, r)
                    } else {
                        Statement::NegRoleAssert(a, b, r)
                    }
                }
                _ if pos => return None,
                _ => continue,
            },
            (QueryAtom::ConcreteRole(p, w, u), pos) => match (value(w), value(u)) {
                (DlValue::Individual(a), DlValue::Constant(e)) => {
                    let p = ConcreteRole::Name(p.clone());
                    if pos {
                        Statement::CRoleAssert(a, e, p)
                    } else {
                        Statement::NegCRoleAssert(a, e, p)
                    }
                }
                _ if pos => return None,
                _ => continue,
            },
            (QueryAtom::Eq(w1, w2), pos) => match (value(w1), value(w2)) {
                (DlValue::Individual(a), DlValue::Individual(b)) => {
                    if pos {
                        Statement::SameAs(a, b)
                    } else {
                        Statement::DifferentFrom(a, b)
                    }
                }
                (DlValue::Constant(e1), DlValue::Constant(e2)) => {
                    let t = DataTerm::Singleton(e2);
                    Statement::DataAssert(e1, if pos { t } else { DataTerm::Not(Box::new(t)) })
                }
                _ if pos => return None,
                _ => continue,
            },
        };
        out.push(s);
    }
    Some(out)
}

/// Answers of `q` over individuals and constants: every `σ` for which
/// `kb` together with `Qσ` is consistent.
pub fn dl_answers(kb: &KnowledgeBase, q: &Query, budget: u32) -> Result<BTreeSet<DlSubstitution>, OracleError> {
    let vars = query_vars(q);
    let values: Vec<DlValue> = kb
        .signature
        .individuals
        .iter()
        .map(|a| DlValue::Individual(a.clone()))
        .chain(kb.signature.constants().map(|e| DlValue::Constant(e.clone())))
        .collect();
    let mut out = BTreeSet::new();
    if values.is_empty() && !vars.is_empty() {
        return Ok(out);
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let sigma: BTreeMap<Name, DlValue> =
            vars.iter().zip(&idx).map(|(v, &i)| (v.clone(), values[i].clone())).collect();
        if let Some(extra) = query_assertions(q, &sigma) {
            let mut ext = kb.clone();
            for s in extra {
                ext.push(s);
            }
            if dl_consistent(&ext, budget)?.is_some() {
                out.insert(DlSubstitution(sigma));
            }
        }
        let mut j = 0;
        loop {
            if j == vars.len() {
                return Ok(out);
            }
            idx[j] += 1;
            if idx[j] < values.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
