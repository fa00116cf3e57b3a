//! Abstract syntax for knowledge bases, conjunctive queries and DL-level
//! substitutions.
//!
//! Terms are plain trees compared structurally. All names are interned as
//! [`Name`], a cheaply clonable shared string.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Interned symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Default upper bound on `n` in cardinality axioms.
pub const DEFAULT_CARDINALITY_CAP: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Name(Name),
    Top,
    Bottom,
    Not(Box<Concept>),
    Union(Box<Concept>, Box<Concept>),
    Intersection(Box<Concept>, Box<Concept>),
    /// `{a}`
    Nominal(Name),
    /// `∃R.Self`
    SelfRestriction(Box<Role>),
    /// `∃R.{a}`
    ValuedExists(Box<Role>, Name),
    /// `∃P.{e}`
    DatatypedExists(Box<ConcreteRole>, Name),
    /// `{a1, ..., an}`, never empty.
    NominalSet(Vec<Name>),
}

impl Concept {
    pub fn name(s: &str) -> Self {
        Concept::Name(Name::new(s))
    }

    pub fn negation(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn union(a: Concept, b: Concept) -> Self {
        Concept::Union(Box::new(a), Box::new(b))
    }

    pub fn and(a: Concept, b: Concept) -> Self {
        Concept::Intersection(Box::new(a), Box::new(b))
    }
}

/// Abstract role terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Name(Name),
    /// The universal role `U`.
    Universal,
    Inverse(Box<Role>),
    Not(Box<Role>),
    Union(Box<Role>, Box<Role>),
    Intersection(Box<Role>, Box<Role>),
    /// `R_{C|}`
    DomainRestr(Box<Role>, Box<Concept>),
    /// `R_{|C}`
    RangeRestr(Box<Role>, Box<Concept>),
    /// `R_{C1|C2}`
    Restr(Box<Role>, Box<Concept>, Box<Concept>),
    /// `id(C)`
    Id(Box<Concept>),
    /// `C1 × C2`
    Product(Box<Concept>, Box<Concept>),
}

impl Role {
    pub fn name(s: &str) -> Self {
        Role::Name(Name::new(s))
    }
}

/// Concrete role terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConcreteRole {
    Name(Name),
    Not(Box<ConcreteRole>),
    Union(Box<ConcreteRole>, Box<ConcreteRole>),
    Intersection(Box<ConcreteRole>, Box<ConcreteRole>),
    /// `P_{C|}`
    DomainRestr(Box<ConcreteRole>, Box<Concept>),
    /// `P_{|t}`
    RangeRestr(Box<ConcreteRole>, Box<DataTerm>),
    /// `P_{C|t}`
    Restr(Box<ConcreteRole>, Box<Concept>, Box<DataTerm>),
}

impl ConcreteRole {
    pub fn name(s: &str) -> Self {
        ConcreteRole::Name(Name::new(s))
    }
}

/// Base of a facet literal: a facet of the datatype, `⊤_d` or `⊥_d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetBase {
    Facet(Name),
    Top,
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetLiteral {
    pub positive: bool,
    pub base: FacetBase,
}

/// A facet expression in conjunctive normal form: a conjunction of
/// disjunctions of (possibly negated) facets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetCnf(pub Vec<Vec<FacetLiteral>>);

impl FacetCnf {
    /// A single positive literal, i.e. a member of `N_F(d) ∪ {⊤_d, ⊥_d}`.
    pub fn as_base(&self) -> Option<&FacetBase> {
        match self.0.as_slice() {
            [clause] => match clause.as_slice() {
                [lit] if lit.positive => Some(&lit.base),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn facets(&self) -> impl Iterator<Item = &Name> {
        self.0.iter().flatten().filter_map(|l| match &l.base {
            FacetBase::Facet(f) => Some(f),
            _ => None,
        })
    }
}

/// Datatype terms and data ranges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataTerm {
    Datatype(Name),
    /// `{e1, ..., en}` with at least two constants.
    Enumeration(Vec<Name>),
    /// A facet expression `ψ_d` over the facets of `d`.
    FacetExpr(Name, FacetCnf),
    Not(Box<DataTerm>),
    Union(Box<DataTerm>, Box<DataTerm>),
    Intersection(Box<DataTerm>, Box<DataTerm>),
    /// `{e}`
    Singleton(Name),
    /// A name standing for a datatype term. Only the normalizer creates these.
    Named(Name),
}

/// Axioms and assertions. Which of RBox/TBox/ABox a statement belongs to is
/// determined by its variant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statement {
    ConceptEquiv(Concept, Concept),
    ConceptSub(Concept, Concept),
    /// `C ⊑ ∀R.D`
    SubAll {
        sub: Concept,
        role: Role,
        filler: Concept,
    },
    /// `∃R.C ⊑ D`
    ExistsSub {
        role: Role,
        filler: Concept,
        sup: Concept,
    },
    /// `≥n R.C ⊑ D`
    AtLeastSub {
        n: u32,
        role: Role,
        filler: Concept,
        sup: Concept,
    },
    /// `C ⊑ ≤n R.D`
    SubAtMost {
        sub: Concept,
        n: u32,
        role: Role,
        filler: Concept,
    },
    /// `C ⊑ ∀P.t`
    SubAllData {
        sub: Concept,
        role: ConcreteRole,
        range: DataTerm,
    },
    /// `∃P.t ⊑ C`
    ExistsDataSub {
        role: ConcreteRole,
        range: DataTerm,
        sup: Concept,
    },
    /// `≥n P.t ⊑ C`
    AtLeastDataSub {
        n: u32,
        role: ConcreteRole,
        range: DataTerm,
        sup: Concept,
    },
    /// `C ⊑ ≤n P.t`
    SubAtMostData {
        sub: Concept,
        n: u32,
        role: ConcreteRole,
        range: DataTerm,
    },
    DataEquiv(DataTerm, DataTerm),
    DataSub(DataTerm, DataTerm),

    RoleEquiv(Role, Role),
    RoleSub(Role, Role),
    /// `R1 ... Rn ⊑ R`
    RoleChain(Vec<Role>, Role),
    Sym(Role),
    Asym(Role),
    Ref(Role),
    Irref(Role),
    Dis(Role, Role),
    Tra(Role),
    Fun(Role),
    CRoleEquiv(ConcreteRole, ConcreteRole),
    CRoleSub(ConcreteRole, ConcreteRole),
    CRoleDis(ConcreteRole, ConcreteRole),
    CRoleFun(ConcreteRole),

    /// `a : C`
    ConceptAssert(Name, Concept),
    /// `(a, b) : R`
    RoleAssert(Name, Name, Role),
    /// `(a, b) : ¬R`
    NegRoleAssert(Name, Name, Role),
    SameAs(Name, Name),
    DifferentFrom(Name, Name),
    /// `e : t`
    DataAssert(Name, DataTerm),
    /// `(a, e) : P`
    CRoleAssert(Name, Name, ConcreteRole),
    /// `(a, e) : ¬P`
    NegCRoleAssert(Name, Name, ConcreteRole),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxKind {
    RBox,
    TBox,
    ABox,
}

impl Statement {
    pub fn box_kind(&self) -> BoxKind {
        use Statement::*;
        match self {
            ConceptEquiv(..)
            | ConceptSub(..)
            | SubAll { .. }
            | ExistsSub { .. }
            | AtLeastSub { .. }
            | SubAtMost { .. }
            | SubAllData { .. }
            | ExistsDataSub { .. }
            | AtLeastDataSub { .. }
            | SubAtMostData { .. }
            | DataEquiv(..)
            | DataSub(..) => BoxKind::TBox,
            RoleEquiv(..) | RoleSub(..) | RoleChain(..) | Sym(_) | Asym(_) | Ref(_) | Irref(_) | Dis(..) | Tra(_)
            | Fun(_) | CRoleEquiv(..) | CRoleSub(..) | CRoleDis(..) | CRoleFun(_) => BoxKind::RBox,
            ConceptAssert(..) | RoleAssert(..) | NegRoleAssert(..) | SameAs(..) | DifferentFrom(..)
            | DataAssert(..) | CRoleAssert(..) | NegCRoleAssert(..) => BoxKind::ABox,
        }
    }

    /// True when the statement is literally one of the shapes the translator
    /// accepts. See [`crate::normalize::NormalStatement`].
    pub fn is_normalized(&self) -> bool {
        crate::normalize::NormalStatement::from_statement(self).is_some()
    }
}

/// Declared constants and facets of one datatype.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatatypeDecl {
    pub constants: Vec<Name>,
    pub facets: Vec<Name>,
}

/// The declared vocabulary. Each name belongs to exactly one kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: Vec<Name>,
    pub roles: Vec<Name>,
    pub concrete_roles: Vec<Name>,
    pub individuals: Vec<Name>,
    pub datatypes: BTreeMap<Name, DatatypeDecl>,
    /// Names for datatype terms introduced by normalization.
    pub data_names: Vec<Name>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameKind {
    Concept,
    Role,
    ConcreteRole,
    Individual,
    Datatype,
    Constant,
    Facet,
    DataName,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Concept => "concept",
            NameKind::Role => "abstract role",
            NameKind::ConcreteRole => "concrete role",
            NameKind::Individual => "individual",
            NameKind::Datatype => "datatype",
            NameKind::Constant => "constant",
            NameKind::Facet => "facet",
            NameKind::DataName => "datatype term name",
        })
    }
}

impl Signature {
    pub fn kind_of(&self, name: &Name) -> Option<NameKind> {
        if self.concepts.contains(name) {
            Some(NameKind::Concept)
        } else if self.roles.contains(name) {
            Some(NameKind::Role)
        } else if self.concrete_roles.contains(name) {
            Some(NameKind::ConcreteRole)
        } else if self.individuals.contains(name) {
            Some(NameKind::Individual)
        } else if self.datatypes.contains_key(name) {
            Some(NameKind::Datatype)
        } else if self.datatype_of_constant(name).is_some() {
            Some(NameKind::Constant)
        } else if self.datatypes.values().any(|d| d.facets.contains(name)) {
            Some(NameKind::Facet)
        } else if self.data_names.contains(name) {
            Some(NameKind::DataName)
        } else {
            None
        }
    }

    pub fn datatype_of_constant(&self, constant: &Name) -> Option<&Name> {
        self.datatypes.iter().find(|(_, decl)| decl.constants.contains(constant)).map(|(d, _)| d)
    }

    pub fn constants(&self) -> impl Iterator<Item = &Name> {
        self.datatypes.values().flat_map(|d| d.constants.iter())
    }

    /// Adds `name` under `kind`, ignoring duplicates.
    pub fn declare(&mut self, kind: NameKind, name: Name) {
        let list = match kind {
            NameKind::Concept => &mut self.concepts,
            NameKind::Role => &mut self.roles,
            NameKind::ConcreteRole => &mut self.concrete_roles,
            NameKind::Individual => &mut self.individuals,
            NameKind::DataName => &mut self.data_names,
            NameKind::Datatype => {
                self.datatypes.entry(name).or_default();
                return;
            }
            NameKind::Constant | NameKind::Facet => {
                panic!("constants and facets are declared through their datatype")
            }
        };
        if !list.contains(&name) {
            list.push(name);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub signature: Signature,
    pub rbox: Vec<Statement>,
    pub tbox: Vec<Statement>,
    pub abox: Vec<Statement>,
}

impl KnowledgeBase {
    pub fn new(signature: Signature) -> Self {
        KnowledgeBase { signature, ..Default::default() }
    }

    pub fn push(&mut self, s: Statement) {
        match s.box_kind() {
            BoxKind::RBox => self.rbox.push(s),
            BoxKind::TBox => self.tbox.push(s),
            BoxKind::ABox => self.abox.push(s),
        }
    }

    /// RBox, then TBox, then ABox.
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.rbox.iter().chain(&self.tbox).chain(&self.abox)
    }

    pub fn len(&self) -> usize {
        self.rbox.len() + self.tbox.len() + self.abox.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Query argument: a variable, an individual or a datatype constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryTerm {
    Var(Name),
    Individual(Name),
    Constant(Name),
}

impl QueryTerm {
    pub fn var(&self) -> Option<&Name> {
        match self {
            QueryTerm::Var(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QueryAtom {
    /// `C(w)`
    Concept(Name, QueryTerm),
    /// `R(w1, w2)`
    Role(Name, QueryTerm, QueryTerm),
    /// `P(w, u)`
    ConcreteRole(Name, QueryTerm, QueryTerm),
    /// `w1 = w2` or `u1 = u2`
    Eq(QueryTerm, QueryTerm),
}

impl QueryAtom {
    pub fn terms(&self) -> Vec<&QueryTerm> {
        match self {
            QueryAtom::Concept(_, t) => vec![t],
            QueryAtom::Role(_, a, b) | QueryAtom::ConcreteRole(_, a, b) | QueryAtom::Eq(a, b) => {
                vec![a, b]
            }
        }
    }

    fn terms_mut(&mut self) -> Vec<&mut QueryTerm> {
        match self {
            QueryAtom::Concept(_, t) => vec![t],
            QueryAtom::Role(_, a, b) | QueryAtom::ConcreteRole(_, a, b) | QueryAtom::Eq(a, b) => {
                vec![a, b]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QueryLiteral {
    pub positive: bool,
    pub atom: QueryAtom,
}

/// A conjunctive query: an ordered conjunction of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Query {
    pub literals: Vec<QueryLiteral>,
}

/// Variables of `q` in first-occurrence order.
pub fn query_vars(q: &Query) -> Vec<Name> {
    let mut seen = Vec::new();
    for lit in &q.literals {
        for t in lit.atom.terms() {
            if let Some(v) = t.var() {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
        }
    }
    seen
}

/// Value a query variable may be bound to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlValue {
    Individual(Name),
    Constant(Name),
}

impl DlValue {
    pub fn name(&self) -> &Name {
        match self {
            DlValue::Individual(n) | DlValue::Constant(n) => n,
        }
    }

    fn as_term(&self) -> QueryTerm {
        match self {
            DlValue::Individual(n) => QueryTerm::Individual(n.clone()),
            DlValue::Constant(n) => QueryTerm::Constant(n.clone()),
        }
    }
}

/// `{v1/o1, ..., vn/on}`. The map representation keeps the domain variables
/// distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DlSubstitution(pub BTreeMap<Name, DlValue>);

impl DlSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, var: &str, value: DlValue) -> Self {
        self.0.insert(Name::new(var), value);
        self
    }

    pub fn domain(&self) -> BTreeSet<&Name> {
        self.0.keys().collect()
    }
}

impl fmt::Display for DlSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        let mut first = true;
        for (v, o) in &self.0 {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}={}", v, o.name())?;
        }
        Ok(())
    }
}

/// Replaces every occurrence of each bound variable. Unbound variables are
/// left in place.
pub fn apply_dl_substitution(q: &Query, sigma: &DlSubstitution) -> Query {
    let mut out = q.clone();
    for lit in &mut out.literals {
        for t in lit.atom.terms_mut() {
            if let QueryTerm::Var(v) = t {
                if let Some(o) = sigma.0.get(v) {
                    *t = o.as_term();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str) -> QueryTerm {
        QueryTerm::Var(Name::new(s))
    }

    fn ind(s: &str) -> QueryTerm {
        QueryTerm::Individual(Name::new(s))
    }

    fn lit(positive: bool, atom: QueryAtom) -> QueryLiteral {
        QueryLiteral { positive, atom }
    }

    #[test]
    fn vars_in_first_occurrence_order() {
        let q = Query {
            literals: vec![
                lit(true, QueryAtom::Concept("C".into(), var("v1"))),
                lit(true, QueryAtom::Role("R".into(), var("v1"), var("v2"))),
            ],
        };
        assert_eq!(query_vars(&q), vec![Name::new("v1"), Name::new("v2")]);

        let ground = Query { literals: vec![lit(true, QueryAtom::Concept("C".into(), ind("a")))] };
        assert!(query_vars(&ground).is_empty());

        let dedup = Query {
            literals: vec![
                lit(true, QueryAtom::Role("R".into(), var("v1"), ind("a"))),
                lit(false, QueryAtom::Concept("C".into(), var("v1"))),
            ],
        };
        assert_eq!(query_vars(&dedup), vec![Name::new("v1")]);
    }

    #[test]
    fn substitution_replaces_occurrences() {
        let a = DlValue::Individual("a".into());
        let q = Query { literals: vec![lit(true, QueryAtom::Concept("C".into(), var("v1")))] };
        let s = DlSubstitution::new().bind("v1", a.clone());
        assert_eq!(apply_dl_substitution(&q, &s).literals[0].atom, QueryAtom::Concept("C".into(), ind("a")));

        let eq = Query { literals: vec![lit(true, QueryAtom::Eq(var("v1"), var("v2")))] };
        let s = DlSubstitution::new().bind("v1", a.clone()).bind("v2", a);
        assert_eq!(apply_dl_substitution(&eq, &s).literals[0].atom, QueryAtom::Eq(ind("a"), ind("a")));

        let r = Query { literals: vec![lit(true, QueryAtom::Role("R".into(), var("v1"), var("v2")))] };
        assert_eq!(apply_dl_substitution(&r, &DlSubstitution::new()), r);
    }

    #[test]
    fn substitution_is_idempotent_on_ground_ranges() {
        let q = Query {
            literals: vec![
                lit(true, QueryAtom::Role("R".into(), var("x"), var("y"))),
                lit(false, QueryAtom::Concept("A".into(), var("x"))),
            ],
        };
        let s =
            DlSubstitution::new().bind("x", DlValue::Individual("a".into())).bind("y", DlValue::Constant("e".into()));
        let once = apply_dl_substitution(&q, &s);
        assert_eq!(apply_dl_substitution(&once, &s), once);
    }
}
