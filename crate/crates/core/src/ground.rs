//! Quantifier distribution, bound-variable renaming and Herbrand expansion of
//! `φ_KB` into the ground clause set `Φ_KB`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GroundError;
use crate::translate::{Atom, GroundLiteral, Literal, OpenLiteral, PhiKB, Term, VarTable, V0};

/// Default upper bound on the number of clause instances.
pub const DEFAULT_CLAUSE_BUDGET: u64 = 10_000_000;

/// A disjunction of ground literals, sorted and free of duplicates.
pub type Clause = Vec<GroundLiteral>;

/// `(∀z₁)…(∀z_q) C` with a single clause `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseUniversal {
    pub bound: Vec<u32>,
    pub clause: Vec<OpenLiteral>,
}

/// `φ̄_KB`: the ground part plus universals over single clauses with
/// pairwise distinct bound variables.
#[derive(Clone, Debug)]
pub struct PhiBar {
    pub vars: VarTable,
    pub ground: Vec<Clause>,
    pub universals: Vec<ClauseUniversal>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroundingStats {
    /// `|Var₀(φ̄_KB)|`
    pub k: usize,
    /// Number of universals.
    pub m: usize,
    /// Longest quantifier prefix.
    pub r: usize,
    /// Most literals in one clause.
    pub l: usize,
    /// Ground conjuncts of `φ̄_KB`.
    pub ground: usize,
    /// Instances produced by expansion before deduplication.
    pub instances: u64,
    /// Distinct clauses in `Φ_KB`.
    pub clauses: usize,
}

/// `Φ_KB` with its variable table.
#[derive(Clone, Debug)]
pub struct Grounding {
    pub vars: VarTable,
    pub clauses: Vec<Clause>,
    pub stats: GroundingStats,
}

fn canonical_atom(a: Atom<V0>) -> Atom<V0> {
    match a {
        Atom::Eq(x, y) if y < x => Atom::Eq(y, x),
        other => other,
    }
}

/// Orders the arguments of equalities, sorts and deduplicates. Returns `None`
/// for tautologies: a literal together with its complement, or `x = x`.
pub fn canonical_clause(lits: impl IntoIterator<Item = GroundLiteral>) -> Option<Clause> {
    let mut c: Clause =
        lits.into_iter().map(|l| Literal { positive: l.positive, atom: canonical_atom(l.atom) }).collect();
    c.sort();
    c.dedup();
    for (i, l) in c.iter().enumerate() {
        if let (true, Atom::Eq(x, y)) = (l.positive, l.atom) {
            if x == y {
                return None;
            }
        }
        if c[i + 1..].iter().any(|m| m.atom == l.atom) {
            return None;
        }
    }
    Some(c)
}

/// Splits every universal into one universal per clause, drops bound
/// variables a clause does not mention, moves clauses without bound
/// variables to the ground part and renames bound variables apart. The
/// witness requests become ground unit clauses.
pub fn distribute_and_rename(phi: &PhiKB) -> PhiBar {
    let mut ground: Vec<Clause> = Vec::new();
    let mut push_ground = |c: Vec<GroundLiteral>| {
        if let Some(c) = canonical_clause(c) {
            ground.push(c);
        }
    };
    for c in &phi.ground_clauses {
        push_ground(c.clone());
    }
    for w in &phi.witness_requests {
        push_ground(vec![Literal::pos(Atom::Mem1(w.witness, w.set))]);
    }
    let mut universals = Vec::new();
    let mut next = 0u32;
    for u in &phi.universals {
        for clause in &u.matrix {
            let used: Vec<u32> = u
                .bound
                .iter()
                .copied()
                .filter(|&b| clause.iter().any(|l| l.atom.terms().any(|t| t == Term::Bound(b))))
                .collect();
            if used.is_empty() {
                push_ground(
                    clause
                        .iter()
                        .map(|l| {
                            l.map(|t| match t {
                                Term::Free(v) => v,
                                Term::Bound(_) => unreachable!(),
                            })
                        })
                        .collect(),
                );
                continue;
            }
            let fresh: Vec<u32> = (next..next + used.len() as u32).collect();
            next += used.len() as u32;
            let clause = clause
                .iter()
                .map(|l| {
                    l.map(|t| match t {
                        Term::Bound(b) => Term::Bound(fresh[used.iter().position(|&x| x == b).unwrap()]),
                        free => free,
                    })
                })
                .collect();
            universals.push(ClauseUniversal { bound: fresh, clause });
        }
    }
    PhiBar { vars: phi.vars.clone(), ground, universals }
}

/// `Exp(S)`: one instance per map from the bound variables to `domain`,
/// with tautologies dropped and duplicates merged. Also returns the number
/// of instances before deduplication, `|domain|^q`.
pub fn expand(s: &ClauseUniversal, domain: &[V0]) -> (Vec<Clause>, u64) {
    let q = s.bound.len();
    let k = domain.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; q];
    let mut count = 0u64;
    if k == 0 {
        return (out, 0);
    }
    loop {
        count += 1;
        let lits = s.clause.iter().map(|l| {
            l.map(|t| match t {
                Term::Free(v) => v,
                Term::Bound(b) => domain[idx[s.bound.iter().position(|&x| x == b).unwrap()]],
            })
        });
        if let Some(c) = canonical_clause(lits) {
            out.push(c);
        }
        let mut i = 0;
        loop {
            if i == q {
                out.sort();
                out.dedup();
                return (out, count);
            }
            idx[i] += 1;
            if idx[i] < k {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn pow(k: usize, q: usize) -> u64 {
    (k as u64).saturating_pow(q as u32)
}

/// `Φ_KB`: the ground conjuncts as clauses plus every expansion over all
/// level-0 variables, in canonical order.
pub fn build_phi(phi: &PhiKB, budget: u64) -> Result<Grounding, GroundError> {
    build_phi_bar(&distribute_and_rename(phi), budget)
}

pub fn build_phi_bar(bar: &PhiBar, budget: u64) -> Result<Grounding, GroundError> {
    let domain: Vec<V0> = bar.vars.level0().collect();
    let k = domain.len();
    let mut stats = GroundingStats {
        k,
        m: bar.universals.len(),
        r: bar.universals.iter().map(|u| u.bound.len()).max().unwrap_or(0),
        l: bar.universals.iter().map(|u| u.clause.len()).chain(bar.ground.iter().map(Vec::len)).max().unwrap_or(0),
        ground: bar.ground.len(),
        instances: 0,
        clauses: 0,
    };
    let predicted =
        bar.universals.iter().fold(bar.ground.len() as u64, |acc, u| acc.saturating_add(pow(k, u.bound.len())));
    if predicted > budget {
        stats.instances = predicted - bar.ground.len() as u64;
        return Err(GroundError::CapacityExceeded { budget, stats });
    }
    let parts: Vec<(Vec<Clause>, u64)> = bar.universals.par_iter().map(|u| expand(u, &domain)).collect();
    let mut clauses = bar.ground.clone();
    for (cs, n) in parts {
        stats.instances += n;
        clauses.extend(cs);
    }
    clauses.sort();
    clauses.dedup();
    stats.clauses = clauses.len();
    Ok(Grounding { vars: bar.vars.clone(), clauses, stats })
}
