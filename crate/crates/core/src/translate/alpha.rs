//! Equality of formulae up to renaming of bound variables, clause order and
//! literal order.

use std::collections::BTreeSet;

use super::{Formula, GroundLiteral, OpenLiteral, Term, Universal};

type ClauseSet<L> = BTreeSet<BTreeSet<L>>;

fn ground_set(cs: &[Vec<GroundLiteral>]) -> ClauseSet<GroundLiteral> {
    cs.iter().map(|c| c.iter().copied().collect()).collect()
}

fn renamed(u: &Universal, map: &dyn Fn(u32) -> u32) -> ClauseSet<OpenLiteral> {
    u.matrix
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| {
                    l.map(|t| match t {
                        Term::Bound(i) => Term::Bound(map(i)),
                        free => free,
                    })
                })
                .collect()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// True when some bijection between the bound variables of `a` and `b` maps
/// the clause set of `a` onto that of `b`.
pub fn universal_alpha_equivalent(a: &Universal, b: &Universal) -> bool {
    if a.bound.len() != b.bound.len() {
        return false;
    }
    let target = renamed(b, &|i| i);
    let pos = |i: u32| a.bound.iter().position(|&x| x == i).expect("bound variable not declared");
    permutations(a.bound.len()).into_iter().any(|perm| renamed(a, &|i| b.bound[perm[pos(i)]]) == target)
}

/// Formula equality modulo bound-variable renaming and the order of clauses,
/// literals and universals.
pub fn alpha_equivalent(a: &Formula, b: &Formula) -> bool {
    if ground_set(&a.ground) != ground_set(&b.ground) || a.universals.len() != b.universals.len() {
        return false;
    }
    let mut used = vec![false; b.universals.len()];
    for ua in &a.universals {
        let hit = b.universals.iter().enumerate().find(|(j, ub)| !used[*j] && universal_alpha_equivalent(ua, ub));
        match hit {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}
