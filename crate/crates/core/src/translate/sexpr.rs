//! Stable s-expression rendering of translated formulae.
//!
//! Level-0 variables print as `x:a` (individuals and constants) or `w:I`,
//! `w:D`, `w:d` (witnesses); level-1 and level-3 variables as `X:name`;
//! bound variables as `z1`, `z2`, ....

use std::fmt::Write;

use super::*;

pub fn var0(vars: &VarTable, v: V0) -> String {
    match vars.origin0(v) {
        Var0Origin::Individual(a) | Var0Origin::Constant(a) => format!("x:{a}"),
        Var0Origin::Witness(Witness::Individuals) => "w:I".into(),
        Var0Origin::Witness(Witness::Data) => "w:D".into(),
        Var0Origin::Witness(Witness::Datatype(d)) => format!("w:{d}"),
    }
}

fn facet_expr(d: &Name, psi: &FacetCnf) -> String {
    let base = |b: &FacetBase| match b {
        FacetBase::Facet(f) => f.to_string(),
        FacetBase::Top => "top".into(),
        FacetBase::Bottom => "bot".into(),
    };
    let clauses: Vec<String> = psi
        .0
        .iter()
        .map(|c| {
            let lits: Vec<String> =
                c.iter().map(|l| format!("{}{}", if l.positive { "" } else { "~" }, base(&l.base))).collect();
            lits.join("|")
        })
        .collect();
    format!("{d}[{}]", clauses.join("&"))
}

pub fn var1(vars: &VarTable, v: V1) -> String {
    match vars.origin1(v) {
        Var1Origin::Individuals => "X:I".into(),
        Var1Origin::Data => "X:D".into(),
        Var1Origin::Top => "X:top".into(),
        Var1Origin::Bottom => "X:bot".into(),
        Var1Origin::Concept(a) | Var1Origin::Datatype(a) | Var1Origin::DataName(a) => format!("X:{a}"),
        Var1Origin::NominalSet(v) | Var1Origin::Enumeration(v) => {
            let names: Vec<&str> = v.iter().map(Name::as_str).collect();
            format!("X:{{{}}}", names.join(","))
        }
        Var1Origin::DataTop(d) => format!("X:top_{d}"),
        Var1Origin::DataBottom(d) => format!("X:bot_{d}"),
        Var1Origin::Facet(_, f) => format!("X:{f}"),
        Var1Origin::FacetExpr(d, psi) => format!("X:{}", facet_expr(d, psi)),
    }
}

pub fn var3(vars: &VarTable, v: V3) -> String {
    match vars.origin3(v) {
        Var3Origin::Universal => "X:U".into(),
        Var3Origin::Role(r) | Var3Origin::ConcreteRole(r) => format!("X:{r}"),
    }
}

fn atom<T: Copy>(vars: &VarTable, a: &Atom<T>, term: &dyn Fn(T) -> String) -> String {
    match *a {
        Atom::Eq(x, y) => format!("(= {} {})", term(x), term(y)),
        Atom::Mem1(x, s) => format!("(in {} {})", term(x), var1(vars, s)),
        Atom::Mem3(x, y, s) => format!("(in2 {} {} {})", term(x), term(y), var3(vars, s)),
    }
}

pub fn literal<T: Copy>(vars: &VarTable, l: &Literal<T>, term: &dyn Fn(T) -> String) -> String {
    let a = atom(vars, &l.atom, term);
    if l.positive {
        a
    } else {
        format!("(not {a})")
    }
}

fn clause<T: Copy>(vars: &VarTable, c: &[Literal<T>], term: &dyn Fn(T) -> String) -> String {
    if c.len() == 1 {
        return literal(vars, &c[0], term);
    }
    let mut s = String::from("(or");
    for l in c {
        write!(s, " {}", literal(vars, l, term)).unwrap();
    }
    s.push(')');
    s
}

pub fn ground_clause(vars: &VarTable, c: &[GroundLiteral]) -> String {
    clause(vars, c, &|v| var0(vars, v))
}

fn open_term(vars: &VarTable, t: Term) -> String {
    match t {
        Term::Free(v) => var0(vars, v),
        Term::Bound(i) => format!("z{}", i + 1),
    }
}

pub fn universal(vars: &VarTable, u: &Universal) -> String {
    let bound: Vec<String> = u.bound.iter().map(|&i| format!("z{}", i + 1)).collect();
    let term = |t: Term| open_term(vars, t);
    let body = if u.matrix.len() == 1 {
        clause(vars, &u.matrix[0], &term)
    } else {
        let parts: Vec<String> = u.matrix.iter().map(|c| clause(vars, c, &term)).collect();
        format!("(and {})", parts.join(" "))
    };
    format!("(forall ({}) {body})", bound.join(" "))
}

/// One line per ground clause, then one line per universal.
pub fn formula(vars: &VarTable, f: &Formula) -> String {
    let mut out = String::new();
    for c in &f.ground {
        writeln!(out, "{}", ground_clause(vars, c)).unwrap();
    }
    for u in &f.universals {
        writeln!(out, "{}", universal(vars, u)).unwrap();
    }
    out
}

/// Ground clauses, universals and witness requests of `φ_KB`.
pub fn phi(p: &PhiKB) -> String {
    let mut out = String::new();
    for c in &p.ground_clauses {
        writeln!(out, "{}", ground_clause(&p.vars, c)).unwrap();
    }
    for u in &p.universals {
        writeln!(out, "{}", universal(&p.vars, u)).unwrap();
    }
    for w in &p.witness_requests {
        writeln!(out, "(exists {} {})", var0(&p.vars, w.witness), var1(&p.vars, w.set)).unwrap();
    }
    out
}

/// The query as a conjunction; query variables print as `?v`.
pub fn query(vars: &VarTable, q: &PsiQ) -> String {
    let term = |t: QTerm| match t {
        QTerm::Var(i) => format!("?{}", q.vars[i as usize]),
        QTerm::Const(v) => var0(vars, v),
    };
    let parts: Vec<String> = q.literals.iter().map(|l| literal(vars, l, &term)).collect();
    format!("(and {})", parts.join(" "))
}
