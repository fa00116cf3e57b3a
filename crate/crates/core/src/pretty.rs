//! Printing of knowledge bases and queries in the parser's syntax.
//!
//! Output is fully determined by the AST, so `parse(print(kb)) == kb` for every
//! parsed knowledge base.

use std::fmt::Write;

use crate::model::*;

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;
const POSTFIX: u8 = 4;
const ATOM: u8 = 5;

fn wrap(s: String, prec: u8, min: u8) -> String {
    if prec < min {
        format!("({s})")
    } else {
        s
    }
}

fn names(ns: &[Name]) -> String {
    ns.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(", ")
}

pub fn concept(c: &Concept) -> String {
    concept_p(c, OR)
}

fn concept_p(c: &Concept, min: u8) -> String {
    let (s, prec) = match c {
        Concept::Name(n) => (n.to_string(), ATOM),
        Concept::Top => ("top".into(), ATOM),
        Concept::Bottom => ("bottom".into(), ATOM),
        Concept::Nominal(a) => (format!("{{{a}}}"), ATOM),
        Concept::NominalSet(ns) => (format!("{{{}}}", names(ns)), ATOM),
        Concept::Not(x) => (format!("not {}", concept_p(x, UNARY)), UNARY),
        Concept::Union(a, b) => (format!("{} or {}", concept_p(a, OR), concept_p(b, AND)), OR),
        Concept::Intersection(a, b) => (format!("{} and {}", concept_p(a, AND), concept_p(b, UNARY)), AND),
        Concept::SelfRestriction(r) => (format!("self {}", role_p(r, UNARY)), UNARY),
        Concept::ValuedExists(r, a) => (format!("some {} {{{a}}}", role_p(r, UNARY)), UNARY),
        Concept::DatatypedExists(p, e) => (format!("some {} {{{e}}}", crole_p(p, UNARY)), UNARY),
    };
    wrap(s, prec, min)
}

pub fn role(r: &Role) -> String {
    role_p(r, OR)
}

fn role_p(r: &Role, min: u8) -> String {
    let (s, prec) = match r {
        Role::Name(n) => (n.to_string(), ATOM),
        Role::Universal => ("U".into(), ATOM),
        Role::Inverse(x) => (format!("inv {}", role_p(x, UNARY)), UNARY),
        Role::Not(x) => (format!("not {}", role_p(x, UNARY)), UNARY),
        Role::Union(a, b) => (format!("{} or {}", role_p(a, OR), role_p(b, AND)), OR),
        Role::Intersection(a, b) => (format!("{} and {}", role_p(a, AND), role_p(b, UNARY)), AND),
        Role::DomainRestr(x, c) => (format!("{}[{}|]", role_p(x, POSTFIX), concept(c)), POSTFIX),
        Role::RangeRestr(x, c) => (format!("{}[|{}]", role_p(x, POSTFIX), concept(c)), POSTFIX),
        Role::Restr(x, c1, c2) => (format!("{}[{}|{}]", role_p(x, POSTFIX), concept(c1), concept(c2)), POSTFIX),
        Role::Id(c) => (format!("id({})", concept(c)), ATOM),
        Role::Product(a, b) => (format!("prod({}, {})", concept(a), concept(b)), ATOM),
    };
    wrap(s, prec, min)
}

pub fn crole(p: &ConcreteRole) -> String {
    crole_p(p, OR)
}

fn crole_p(p: &ConcreteRole, min: u8) -> String {
    let (s, prec) = match p {
        ConcreteRole::Name(n) => (n.to_string(), ATOM),
        ConcreteRole::Not(x) => (format!("not {}", crole_p(x, UNARY)), UNARY),
        ConcreteRole::Union(a, b) => (format!("{} or {}", crole_p(a, OR), crole_p(b, AND)), OR),
        ConcreteRole::Intersection(a, b) => (format!("{} and {}", crole_p(a, AND), crole_p(b, UNARY)), AND),
        ConcreteRole::DomainRestr(x, c) => (format!("{}[{}|]", crole_p(x, POSTFIX), concept(c)), POSTFIX),
        ConcreteRole::RangeRestr(x, t) => (format!("{}[|{}]", crole_p(x, POSTFIX), data(t)), POSTFIX),
        ConcreteRole::Restr(x, c, t) => (format!("{}[{}|{}]", crole_p(x, POSTFIX), concept(c), data(t)), POSTFIX),
    };
    wrap(s, prec, min)
}

pub fn facet_cnf(cnf: &FacetCnf) -> String {
    let lit = |l: &FacetLiteral| {
        let base = match &l.base {
            FacetBase::Facet(f) => f.to_string(),
            FacetBase::Top => "top".into(),
            FacetBase::Bottom => "bottom".into(),
        };
        if l.positive {
            base
        } else {
            format!("not {base}")
        }
    };
    cnf.0
        .iter()
        .map(|clause| {
            if clause.len() == 1 {
                lit(&clause[0])
            } else {
                format!("({})", clause.iter().map(lit).collect::<Vec<_>>().join(" or "))
            }
        })
        .collect::<Vec<_>>()
        .join(" and ")
}

pub fn data(t: &DataTerm) -> String {
    data_p(t, OR)
}

fn data_p(t: &DataTerm, min: u8) -> String {
    let (s, prec) = match t {
        DataTerm::Datatype(d) => (d.to_string(), ATOM),
        DataTerm::Enumeration(es) => (format!("{{{}}}", names(es)), ATOM),
        DataTerm::Singleton(e) => (format!("{{{e}}}"), ATOM),
        DataTerm::Named(n) => (n.to_string(), ATOM),
        // A facet expression extends as far to the right as it can, so it is
        // parenthesized whenever it is an operand.
        DataTerm::FacetExpr(d, cnf) => (format!("facet {d} {}", facet_cnf(cnf)), OR),
        DataTerm::Not(x) => (format!("not {}", data_p(x, UNARY)), UNARY),
        DataTerm::Union(a, b) => (format!("{} or {}", data_p(a, OR), data_p(b, AND)), OR),
        DataTerm::Intersection(a, b) => (format!("{} and {}", data_p(a, AND), data_p(b, UNARY)), AND),
    };
    let operand = min > OR && matches!(t, DataTerm::FacetExpr(..));
    if operand {
        format!("({s})")
    } else {
        wrap(s, prec, min)
    }
}

pub fn statement(s: &Statement) -> String {
    use Statement::*;
    let body = match s {
        ConceptEquiv(a, b) => format!("{} equiv {}", concept(a), concept(b)),
        ConceptSub(a, b) => format!("{} sub {}", concept(a), concept(b)),
        SubAll { sub, role: r, filler } => {
            format!("{} sub all {} . {}", concept(sub), role_p(r, UNARY), concept_p(filler, UNARY))
        }
        ExistsSub { role: r, filler, sup } => {
            format!("some {} . {} sub {}", role_p(r, UNARY), concept_p(filler, UNARY), concept(sup))
        }
        AtLeastSub { n, role: r, filler, sup } => {
            format!("atleast {n} {} . {} sub {}", role_p(r, UNARY), concept_p(filler, UNARY), concept(sup))
        }
        SubAtMost { sub, n, role: r, filler } => {
            format!("{} sub atmost {n} {} . {}", concept(sub), role_p(r, UNARY), concept_p(filler, UNARY))
        }
        SubAllData { sub, role: p, range } => {
            format!("{} sub all {} . {}", concept(sub), crole_p(p, UNARY), data_p(range, UNARY))
        }
        ExistsDataSub { role: p, range, sup } => {
            format!("some {} . {} sub {}", crole_p(p, UNARY), data_p(range, UNARY), concept(sup))
        }
        AtLeastDataSub { n, role: p, range, sup } => {
            format!("atleast {n} {} . {} sub {}", crole_p(p, UNARY), data_p(range, UNARY), concept(sup))
        }
        SubAtMostData { sub, n, role: p, range } => {
            format!("{} sub atmost {n} {} . {}", concept(sub), crole_p(p, UNARY), data_p(range, UNARY))
        }
        DataEquiv(a, b) => format!("{} equiv {}", data(a), data(b)),
        DataSub(a, b) => format!("{} sub {}", data(a), data(b)),
        RoleEquiv(a, b) => format!("{} equiv {}", role(a), role(b)),
        RoleSub(a, b) => format!("{} sub {}", role(a), role(b)),
        RoleChain(chain, r) => {
            let items: Vec<String> = chain.iter().map(|x| role_p(x, POSTFIX)).collect();
            format!("{} sub {}", items.join(" "), role(r))
        }
        Sym(r) => format!("Sym({})", role(r)),
        Asym(r) => format!("Asym({})", role(r)),
        Ref(r) => format!("Ref({})", role(r)),
        Irref(r) => format!("Irref({})", role(r)),
        Dis(a, b) => format!("Dis({}, {})", role(a), role(b)),
        Tra(r) => format!("Tra({})", role(r)),
        Fun(r) => format!("Fun({})", role(r)),
        CRoleEquiv(a, b) => format!("{} equiv {}", crole(a), crole(b)),
        CRoleSub(a, b) => format!("{} sub {}", crole(a), crole(b)),
        CRoleDis(a, b) => format!("Dis({}, {})", crole(a), crole(b)),
        CRoleFun(p) => format!("Fun({})", crole(p)),
        ConceptAssert(a, c) => format!("{a} : {}", concept(c)),
        RoleAssert(a, b, r) => format!("({a}, {b}) : {}", role(r)),
        NegRoleAssert(a, b, r) => format!("({a}, {b}) : not {}", role_p(r, UNARY)),
        SameAs(a, b) => format!("{a} = {b}"),
        DifferentFrom(a, b) => format!("{a} != {b}"),
        DataAssert(e, t) => format!("{e} : {}", data(t)),
        CRoleAssert(a, e, p) => format!("({a}, {e}) : {}", crole(p)),
        NegCRoleAssert(a, e, p) => format!("({a}, {e}) : not {}", crole_p(p, UNARY)),
    };
    let kw = if s.box_kind() == BoxKind::ABox { "assert" } else { "axiom" };
    format!("{kw} {body}.")
}

pub fn signature(sig: &Signature) -> String {
    let mut out = String::new();
    for (kw, list) in [
        ("concept", &sig.concepts),
        ("arole", &sig.roles),
        ("crole", &sig.concrete_roles),
        ("individual", &sig.individuals),
    ] {
        if !list.is_empty() {
            let _ = writeln!(out, "{kw} {}.", names(list));
        }
    }
    for (d, decl) in &sig.datatypes {
        if decl.constants.is_empty() && decl.facets.is_empty() {
            let _ = writeln!(out, "datatype {d}.");
            continue;
        }
        let mut parts = Vec::new();
        if !decl.constants.is_empty() {
            parts.push(format!("constants {};", names(&decl.constants)));
        }
        if !decl.facets.is_empty() {
            parts.push(format!("facets {};", names(&decl.facets)));
        }
        let _ = writeln!(out, "datatype {d} {{ {} }}", parts.join(" "));
    }
    out
}

pub fn kb(kb: &KnowledgeBase) -> String {
    let mut out = signature(&kb.signature);
    for s in kb.statements() {
        out.push_str(&statement(s));
        out.push('\n');
    }
    out
}

fn query_term(t: &QueryTerm) -> String {
    match t {
        QueryTerm::Var(v) => format!("?{v}"),
        QueryTerm::Individual(n) | QueryTerm::Constant(n) => n.to_string(),
    }
}

pub fn query(q: &Query) -> String {
    q.literals
        .iter()
        .map(|l| {
            let atom = match &l.atom {
                QueryAtom::Concept(c, t) => format!("{c}({})", query_term(t)),
                QueryAtom::Role(r, a, b) | QueryAtom::ConcreteRole(r, a, b) => {
                    format!("{r}({}, {})", query_term(a), query_term(b))
                }
                QueryAtom::Eq(a, b) => {
                    let op = if l.positive { "=" } else { "!=" };
                    return format!("{} {op} {}", query_term(a), query_term(b));
                }
            };
            if l.positive {
                atom
            } else {
                format!("not {atom}")
            }
        })
        .collect::<Vec<_>>()
        .join(" and ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_kb, parse_query};

    const TEXT: &str = "\
concept A, B, C.
arole R, S.
crole P.
individual a, b.
datatype d { constants e1, e2; facets f, g; }
axiom R S sub inv R.
axiom prod(A, B) equiv id(C) or R[|A].
axiom not P equiv P[A|not {e1, e2}].
axiom Fun(P).
axiom Dis(R, S).
axiom A equiv not (B or C).
axiom A sub all inv R . (B and C).
axiom some R[A|] . B sub C.
axiom atleast 2 R . A sub B.
axiom A sub atmost 1 P . (facet d (f or not g) and top).
axiom A equiv self R and some R {a}.
assert (a, b) : not (R or S).
assert a != b.
assert e1 : not d.
";

    #[test]
    fn round_trip_is_identity() {
        let kb1 = parse_kb(TEXT).unwrap();
        let printed = kb(&kb1);
        assert_eq!(printed, TEXT);
        assert_eq!(parse_kb(&printed).unwrap(), kb1);
    }

    #[test]
    fn query_round_trip() {
        let sig = parse_kb(TEXT).unwrap().signature;
        for q in ["R(?v1, ?v2) and A(?v1)", "not P(a, e1) and ?x != b", "?u = e1"] {
            let parsed = parse_query(q, &sig).unwrap();
            assert_eq!(query(&parsed), q);
        }
    }
}
