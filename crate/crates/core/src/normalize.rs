//! Rewriting of arbitrary statements into the normalized shapes accepted by
//! the translator.
//!
//! Complex subterms are replaced by fresh names, each defined by one or more
//! normalized statements. Definitions are full equivalences, so every model of
//! the input extends uniquely to a model of the output.

use std::collections::HashMap;

use crate::error::NormalizeError;
use crate::model::*;

/// Prefix of every normalizer-introduced name.
pub const FRESH_PREFIX: &str = "__n#";

/// A term standing in a concept slot of a normalized statement.
pub fn is_concept_atom(c: &Concept) -> bool {
    match c {
        Concept::Name(_) | Concept::Top | Concept::Bottom => true,
        Concept::NominalSet(v) => v.len() >= 2,
        _ => false,
    }
}

pub fn is_role_atom(r: &Role) -> bool {
    matches!(r, Role::Name(_) | Role::Universal)
}

pub fn is_crole_atom(p: &ConcreteRole) -> bool {
    matches!(p, ConcreteRole::Name(_))
}

pub fn is_data_atom(t: &DataTerm) -> bool {
    match t {
        DataTerm::Datatype(_) | DataTerm::FacetExpr(..) | DataTerm::Named(_) => true,
        DataTerm::Enumeration(v) => v.len() >= 2,
        _ => false,
    }
}

/// The normalized statement shapes. Concept slots hold concept atoms, role
/// slots role atoms, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalStatement {
    /// `C1 ≡ ⊤`
    CTop(Concept),
    /// `C1 ≡ ¬C2`
    CNot(Concept, Concept),
    /// `C1 ≡ C2 ⊔ C3`
    COr(Concept, Concept, Concept),
    /// `C1 ≡ {a}`
    CNominal(Concept, Name),
    /// `C1 ⊑ ∀R1.C2`
    CSubAll(Concept, Role, Concept),
    /// `∃R1.C1 ⊑ C2`
    CExistsSub(Role, Concept, Concept),
    /// `≥n R1.C1 ⊑ C2`
    CAtLeast(u32, Role, Concept, Concept),
    /// `C1 ⊑ ≤n R1.C2`
    CAtMost(Concept, u32, Role, Concept),
    /// `C1 ⊑ ∀P1.t1`
    CSubAllData(Concept, ConcreteRole, DataTerm),
    /// `∃P1.t1 ⊑ C1`
    CExistsDataSub(ConcreteRole, DataTerm, Concept),
    /// `≥n P1.t1 ⊑ C1`
    CAtLeastData(u32, ConcreteRole, DataTerm, Concept),
    /// `C1 ⊑ ≤n P1.t1`
    CAtMostData(Concept, u32, ConcreteRole, DataTerm),
    /// `C1 ≡ ∃R1.{a}`
    CValued(Concept, Role, Name),
    /// `C1 ≡ ∃P1.{e}`
    CDatatyped(Concept, ConcreteRole, Name),
    /// `C1 ≡ ∃R1.Self`
    CSelf(Concept, Role),

    /// `R1 ≡ U`
    RUniv(Role),
    /// `R1 ≡ ¬R2`
    RNot(Role, Role),
    /// `R1 ≡ R2 ⊔ R3`
    ROr(Role, Role, Role),
    /// `R1 ≡ R2⁻`
    RInv(Role, Role),
    /// `R1 ≡ id(C1)`
    RId(Role, Concept),
    /// `R1 ≡ R2_{C1|}`
    RDom(Role, Role, Concept),
    /// `R1 ≡ C1 × C2`
    RProd(Role, Concept, Concept),
    /// `R1 ... Rn ⊑ R`
    RChain(Vec<Role>, Role),
    RRef(Role),
    RIrref(Role),
    RDis(Role, Role),
    RFun(Role),

    /// `P1 ≡ P2`
    PEq(ConcreteRole, ConcreteRole),
    /// `P1 ≡ ¬P2`
    PNot(ConcreteRole, ConcreteRole),
    /// `P1 ≡ P2 ⊔ P3`
    POr(ConcreteRole, ConcreteRole, ConcreteRole),
    /// `P1 ⊑ P2`
    PSub(ConcreteRole, ConcreteRole),
    /// `P1 ≡ P2_{C1|}`
    PDom(ConcreteRole, ConcreteRole, Concept),
    /// `P1 ≡ P2_{|t1}`
    PRange(ConcreteRole, ConcreteRole, DataTerm),
    /// `P1 ≡ P2_{C1|t1}`
    PRestr(ConcreteRole, ConcreteRole, Concept, DataTerm),
    PDis(ConcreteRole, ConcreteRole),
    PFun(ConcreteRole),

    /// `t1 ≡ t2`
    TEq(DataTerm, DataTerm),
    /// `t1 ≡ ¬t2`
    TNot(DataTerm, DataTerm),
    /// `t1 ≡ t2 ⊔ t3`
    TOr(DataTerm, DataTerm, DataTerm),
    /// `t1 ≡ t2 ⊓ t3`
    TAnd(DataTerm, DataTerm, DataTerm),
    /// `t1 ≡ {e}`
    TSingleton(DataTerm, Name),

    AConcept(Name, Concept),
    ARole(Name, Name, Role),
    ANegRole(Name, Name, Role),
    ASame(Name, Name),
    ADiff(Name, Name),
    AData(Name, DataTerm),
    ACRole(Name, Name, ConcreteRole),
    ANegCRole(Name, Name, ConcreteRole),
}

impl NormalStatement {
    /// Classifies `s`, returning `None` unless it is exactly a normalized shape.
    pub fn from_statement(s: &Statement) -> Option<NormalStatement> {
        use NormalStatement as N;
        let c = |c: &Concept| is_concept_atom(c).then(|| c.clone());
        let r = |r: &Role| is_role_atom(r).then(|| r.clone());
        let p = |p: &ConcreteRole| is_crole_atom(p).then(|| p.clone());
        let t = |t: &DataTerm| is_data_atom(t).then(|| t.clone());
        Some(match s {
            Statement::ConceptEquiv(lhs, rhs) => {
                let c1 = c(lhs)?;
                match rhs {
                    Concept::Top => N::CTop(c1),
                    Concept::Not(x) => N::CNot(c1, c(x)?),
                    Concept::Union(a, b) => N::COr(c1, c(a)?, c(b)?),
                    Concept::Nominal(a) => N::CNominal(c1, a.clone()),
                    Concept::ValuedExists(x, a) => N::CValued(c1, r(x)?, a.clone()),
                    Concept::DatatypedExists(x, e) => N::CDatatyped(c1, p(x)?, e.clone()),
                    Concept::SelfRestriction(x) => N::CSelf(c1, r(x)?),
                    _ => return None,
                }
            }
            Statement::SubAll { sub, role, filler } => N::CSubAll(c(sub)?, r(role)?, c(filler)?),
            Statement::ExistsSub { role, filler, sup } => N::CExistsSub(r(role)?, c(filler)?, c(sup)?),
            Statement::AtLeastSub { n, role, filler, sup } => N::CAtLeast(*n, r(role)?, c(filler)?, c(sup)?),
            Statement::SubAtMost { sub, n, role, filler } => N::CAtMost(c(sub)?, *n, r(role)?, c(filler)?),
            Statement::SubAllData { sub, role, range } => N::CSubAllData(c(sub)?, p(role)?, t(range)?),
            Statement::ExistsDataSub { role, range, sup } => N::CExistsDataSub(p(role)?, t(range)?, c(sup)?),
            Statement::AtLeastDataSub { n, role, range, sup } => N::CAtLeastData(*n, p(role)?, t(range)?, c(sup)?),
            Statement::SubAtMostData { sub, n, role, range } => N::CAtMostData(c(sub)?, *n, p(role)?, t(range)?),
            Statement::DataEquiv(lhs, rhs) => {
                let t1 = t(lhs)?;
                match rhs {
                    DataTerm::Not(x) => N::TNot(t1, t(x)?),
                    DataTerm::Union(a, b) => N::TOr(t1, t(a)?, t(b)?),
                    DataTerm::Intersection(a, b) => N::TAnd(t1, t(a)?, t(b)?),
                    DataTerm::Singleton(e) => N::TSingleton(t1, e.clone()),
                    other => N::TEq(t1, t(other)?),
                }
            }
            Statement::RoleEquiv(lhs, rhs) => {
                let r1 = r(lhs)?;
                match rhs {
                    Role::Universal => N::RUniv(r1),
                    Role::Not(x) => N::RNot(r1, r(x)?),
                    Role::Union(a, b) => N::ROr(r1, r(a)?, r(b)?),
                    Role::Inverse(x) => N::RInv(r1, r(x)?),
                    Role::Id(x) => N::RId(r1, c(x)?),
                    Role::DomainRestr(x, y) => N::RDom(r1, r(x)?, c(y)?),
                    Role::Product(a, b) => N::RProd(r1, c(a)?, c(b)?),
                    _ => return None,
                }
            }
            Statement::RoleChain(rs, sup) => {
                if rs.is_empty() {
                    return None;
                }
                N::RChain(rs.iter().map(r).collect::<Option<_>>()?, r(sup)?)
            }
            Statement::Ref(x) => N::RRef(r(x)?),
            Statement::Irref(x) => N::RIrref(r(x)?),
            Statement::Dis(a, b) => N::RDis(r(a)?, r(b)?),
            Statement::Fun(x) => N::RFun(r(x)?),
            Statement::CRoleEquiv(lhs, rhs) => {
                let p1 = p(lhs)?;
                match rhs {
                    ConcreteRole::Name(_) => N::PEq(p1, rhs.clone()),
                    ConcreteRole::Not(x) => N::PNot(p1, p(x)?),
                    ConcreteRole::Union(a, b) => N::POr(p1, p(a)?, p(b)?),
                    ConcreteRole::DomainRestr(x, y) => N::PDom(p1, p(x)?, c(y)?),
                    ConcreteRole::RangeRestr(x, y) => N::PRange(p1, p(x)?, t(y)?),
                    ConcreteRole::Restr(x, y, z) => N::PRestr(p1, p(x)?, c(y)?, t(z)?),
                    ConcreteRole::Intersection(..) => return None,
                }
            }
            Statement::CRoleSub(a, b) => N::PSub(p(a)?, p(b)?),
            Statement::CRoleDis(a, b) => N::PDis(p(a)?, p(b)?),
            Statement::CRoleFun(x) => N::PFun(p(x)?),
            Statement::ConceptAssert(a, x) => N::AConcept(a.clone(), c(x)?),
            Statement::RoleAssert(a, b, x) => N::ARole(a.clone(), b.clone(), r(x)?),
            Statement::NegRoleAssert(a, b, x) => N::ANegRole(a.clone(), b.clone(), r(x)?),
            Statement::SameAs(a, b) => N::ASame(a.clone(), b.clone()),
            Statement::DifferentFrom(a, b) => N::ADiff(a.clone(), b.clone()),
            Statement::DataAssert(e, x) => N::AData(e.clone(), t(x)?),
            Statement::CRoleAssert(a, e, x) => N::ACRole(a.clone(), e.clone(), p(x)?),
            Statement::NegCRoleAssert(a, e, x) => N::ANegCRole(a.clone(), e.clone(), p(x)?),
            Statement::ConceptSub(..)
            | Statement::DataSub(..)
            | Statement::RoleSub(..)
            | Statement::Sym(_)
            | Statement::Asym(_)
            | Statement::Tra(_) => return None,
        })
    }

    /// Cardinality bound of the shape, if any.
    pub fn cardinality(&self) -> Option<u32> {
        match self {
            NormalStatement::CAtLeast(n, ..)
            | NormalStatement::CAtMost(_, n, ..)
            | NormalStatement::CAtLeastData(n, ..)
            | NormalStatement::CAtMostData(_, n, ..) => Some(*n),
            _ => None,
        }
    }
}

/// The subterm a fresh name abbreviates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DefinedTerm {
    Concept(Concept),
    Role(Role),
    CRole(ConcreteRole),
    Data(DataTerm),
}

/// Fresh names in order of introduction, each with the term it defines.
/// Definitions only mention names introduced earlier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameTable {
    pub entries: Vec<(Name, DefinedTerm)>,
}

impl NameTable {
    pub fn get(&self, name: &Name) -> Option<&DefinedTerm> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn normalize_kb(kb: &KnowledgeBase) -> Result<(KnowledgeBase, NameTable), NormalizeError> {
    normalize_kb_with_cap(kb, DEFAULT_CARDINALITY_CAP)
}

pub fn normalize_kb_with_cap(kb: &KnowledgeBase, cap: u32) -> Result<(KnowledgeBase, NameTable), NormalizeError> {
    let mut n = Normalizer {
        out: KnowledgeBase::new(kb.signature.clone()),
        memo: HashMap::new(),
        table: NameTable::default(),
        counter: next_counter(&kb.signature),
    };
    for s in kb.statements() {
        if let Some(ns) = NormalStatement::from_statement(s) {
            if let Some(k) = ns.cardinality() {
                check_cardinality(k, cap)?;
            }
            n.emit(s.clone());
        } else {
            n.statement(s, cap)?;
        }
    }
    Ok((n.out, n.table))
}

fn check_cardinality(n: u32, cap: u32) -> Result<(), NormalizeError> {
    if n == 0 || n > cap {
        Err(NormalizeError::CardinalityOutOfRange { n, cap })
    } else {
        Ok(())
    }
}

/// First counter value not already used by a fresh name in `sig`.
fn next_counter(sig: &Signature) -> usize {
    let all = sig.concepts.iter().chain(&sig.roles).chain(&sig.concrete_roles).chain(&sig.data_names);
    all.filter_map(|n| n.as_str().strip_prefix(FRESH_PREFIX)?.parse::<usize>().ok()).map(|k| k + 1).max().unwrap_or(1)
}

struct Normalizer {
    out: KnowledgeBase,
    memo: HashMap<DefinedTerm, Name>,
    table: NameTable,
    counter: usize,
}

impl Normalizer {
    fn emit(&mut self, s: Statement) {
        debug_assert!(s.is_normalized(), "not normalized: {s:?}");
        self.out.push(s);
    }

    /// Returns the name defining `term`, creating it on first use. The boolean
    /// is true when the name is new and still needs its definition.
    fn fresh(&mut self, term: DefinedTerm) -> (Name, bool) {
        if let Some(n) = self.memo.get(&term) {
            return (n.clone(), false);
        }
        let name = Name::new(&format!("{FRESH_PREFIX}{}", self.counter));
        self.counter += 1;
        let kind = match term {
            DefinedTerm::Concept(_) => NameKind::Concept,
            DefinedTerm::Role(_) => NameKind::Role,
            DefinedTerm::CRole(_) => NameKind::ConcreteRole,
            DefinedTerm::Data(_) => NameKind::DataName,
        };
        self.out.signature.declare(kind, name.clone());
        self.memo.insert(term.clone(), name.clone());
        self.table.entries.push((name.clone(), term));
        (name, true)
    }

    fn statement(&mut self, s: &Statement, cap: u32) -> Result<(), NormalizeError> {
        match s {
            Statement::ConceptEquiv(a, b) => {
                if is_concept_atom(a) {
                    self.define_concept(a.clone(), b);
                } else if is_concept_atom(b) {
                    self.define_concept(b.clone(), a);
                } else {
                    let lhs = self.concept(a);
                    self.define_concept(lhs, b);
                }
            }
            Statement::ConceptSub(a, b) => {
                let n1 = self.concept(&Concept::negation(a.clone()));
                let d = self.concept(b);
                let n2 = self.concept(&Concept::union(n1, d));
                self.emit(Statement::ConceptEquiv(n2, Concept::Top));
            }
            Statement::SubAll { sub, role, filler } => {
                let s =
                    Statement::SubAll { sub: self.concept(sub), role: self.role(role), filler: self.concept(filler) };
                self.emit(s);
            }
            Statement::ExistsSub { role, filler, sup } => {
                let s = Statement::ExistsSub {
                    role: self.role(role),
                    filler: self.concept(filler),
                    sup: self.concept(sup),
                };
                self.emit(s);
            }
            Statement::AtLeastSub { n, role, filler, sup } => {
                check_cardinality(*n, cap)?;
                let s = Statement::AtLeastSub {
                    n: *n,
                    role: self.role(role),
                    filler: self.concept(filler),
                    sup: self.concept(sup),
                };
                self.emit(s);
            }
            Statement::SubAtMost { sub, n, role, filler } => {
                check_cardinality(*n, cap)?;
                let s = Statement::SubAtMost {
                    sub: self.concept(sub),
                    n: *n,
                    role: self.role(role),
                    filler: self.concept(filler),
                };
                self.emit(s);
            }
            Statement::SubAllData { sub, role, range } => {
                let s =
                    Statement::SubAllData { sub: self.concept(sub), role: self.crole(role), range: self.data(range) };
                self.emit(s);
            }
            Statement::ExistsDataSub { role, range, sup } => {
                let s = Statement::ExistsDataSub {
                    role: self.crole(role),
                    range: self.data(range),
                    sup: self.concept(sup),
                };
                self.emit(s);
            }
            Statement::AtLeastDataSub { n, role, range, sup } => {
                check_cardinality(*n, cap)?;
                let s = Statement::AtLeastDataSub {
                    n: *n,
                    role: self.crole(role),
                    range: self.data(range),
                    sup: self.concept(sup),
                };
                self.emit(s);
            }
            Statement::SubAtMostData { sub, n, role, range } => {
                check_cardinality(*n, cap)?;
                let s = Statement::SubAtMostData {
                    sub: self.concept(sub),
                    n: *n,
                    role: self.crole(role),
                    range: self.data(range),
                };
                self.emit(s);
            }
            Statement::DataEquiv(a, b) => {
                if is_data_atom(a) {
                    self.define_data(a.clone(), b);
                } else if is_data_atom(b) {
                    self.define_data(b.clone(), a);
                } else {
                    let lhs = self.data(a);
                    self.define_data(lhs, b);
                }
            }
            Statement::DataSub(a, b) => {
                let t1 = self.data(a);
                let t2 = self.data(b);
                self.emit(Statement::DataEquiv(t1.clone(), DataTerm::Intersection(Box::new(t1), Box::new(t2))));
            }
            Statement::RoleEquiv(a, b) => {
                if is_role_atom(a) {
                    self.define_role(a.clone(), b);
                } else if is_role_atom(b) {
                    self.define_role(b.clone(), a);
                } else {
                    let lhs = self.role(a);
                    self.define_role(lhs, b);
                }
            }
            Statement::RoleSub(a, b) => {
                let s = Statement::RoleChain(vec![self.role(a)], self.role(b));
                self.emit(s);
            }
            Statement::RoleChain(rs, sup) => {
                let rs = rs.iter().map(|r| self.role(r)).collect();
                let s = Statement::RoleChain(rs, self.role(sup));
                self.emit(s);
            }
            Statement::Sym(r) => {
                let a = self.role(r);
                let inv = self.role(&Role::Inverse(Box::new(a.clone())));
                self.emit(Statement::RoleChain(vec![inv], a));
            }
            Statement::Asym(r) => {
                let a = self.role(r);
                let inv = self.role(&Role::Inverse(Box::new(a.clone())));
                self.emit(Statement::Dis(a, inv));
            }
            Statement::Tra(r) => {
                let a = self.role(r);
                self.emit(Statement::RoleChain(vec![a.clone(), a.clone()], a));
            }
            Statement::Ref(r) => {
                let s = Statement::Ref(self.role(r));
                self.emit(s);
            }
            Statement::Irref(r) => {
                let s = Statement::Irref(self.role(r));
                self.emit(s);
            }
            Statement::Fun(r) => {
                let s = Statement::Fun(self.role(r));
                self.emit(s);
            }
            Statement::Dis(a, b) => {
                let s = Statement::Dis(self.role(a), self.role(b));
                self.emit(s);
            }
            Statement::CRoleEquiv(a, b) => {
                if is_crole_atom(a) {
                    self.define_crole(a.clone(), b);
                } else if is_crole_atom(b) {
                    self.define_crole(b.clone(), a);
                } else {
                    let lhs = self.crole(a);
                    self.define_crole(lhs, b);
                }
            }
            Statement::CRoleSub(a, b) => {
                let s = Statement::CRoleSub(self.crole(a), self.crole(b));
                self.emit(s);
            }
            Statement::CRoleDis(a, b) => {
                let s = Statement::CRoleDis(self.crole(a), self.crole(b));
                self.emit(s);
            }
            Statement::CRoleFun(p) => {
                let s = Statement::CRoleFun(self.crole(p));
                self.emit(s);
            }
            Statement::ConceptAssert(a, c) => {
                let s = Statement::ConceptAssert(a.clone(), self.concept(c));
                self.emit(s);
            }
            Statement::RoleAssert(a, b, r) => {
                let s = Statement::RoleAssert(a.clone(), b.clone(), self.role(r));
                self.emit(s);
            }
            Statement::NegRoleAssert(a, b, r) => {
                let s = Statement::NegRoleAssert(a.clone(), b.clone(), self.role(r));
                self.emit(s);
            }
            Statement::DataAssert(e, t) => {
                let s = Statement::DataAssert(e.clone(), self.data(t));
                self.emit(s);
            }
            Statement::CRoleAssert(a, e, p) => {
                let s = Statement::CRoleAssert(a.clone(), e.clone(), self.crole(p));
                self.emit(s);
            }
            Statement::NegCRoleAssert(a, e, p) => {
                let s = Statement::NegCRoleAssert(a.clone(), e.clone(), self.crole(p));
                self.emit(s);
            }
            Statement::SameAs(..) | Statement::DifferentFrom(..) => self.emit(s.clone()),
        }
        Ok(())
    }

    /// An atom equivalent to `c`.
    fn concept(&mut self, c: &Concept) -> Concept {
        if is_concept_atom(c) {
            return c.clone();
        }
        let (name, new) = self.fresh(DefinedTerm::Concept(c.clone()));
        let atom = Concept::Name(name);
        if new {
            self.define_concept(atom.clone(), c);
        }
        atom
    }

    /// Emits statements making the atom `lhs` equivalent to `c`.
    fn define_concept(&mut self, lhs: Concept, c: &Concept) {
        let rhs = match c {
            Concept::Top => Concept::Top,
            Concept::Name(_) | Concept::Bottom => Concept::union(c.clone(), c.clone()),
            Concept::NominalSet(v) if v.len() >= 2 => Concept::union(c.clone(), c.clone()),
            Concept::NominalSet(v) => Concept::Nominal(v[0].clone()),
            Concept::Nominal(_) => c.clone(),
            Concept::Not(x) => Concept::negation(self.concept(x)),
            Concept::Union(a, b) => Concept::union(self.concept(a), self.concept(b)),
            Concept::Intersection(a, b) => {
                let na = self.concept(&Concept::negation((**a).clone()));
                let nb = self.concept(&Concept::negation((**b).clone()));
                Concept::negation(self.concept(&Concept::union(na, nb)))
            }
            Concept::SelfRestriction(r) => Concept::SelfRestriction(Box::new(self.role(r))),
            Concept::ValuedExists(r, a) => Concept::ValuedExists(Box::new(self.role(r)), a.clone()),
            Concept::DatatypedExists(p, e) => Concept::DatatypedExists(Box::new(self.crole(p)), e.clone()),
        };
        self.emit(Statement::ConceptEquiv(lhs, rhs));
    }

    fn role(&mut self, r: &Role) -> Role {
        if is_role_atom(r) {
            return r.clone();
        }
        let (name, new) = self.fresh(DefinedTerm::Role(r.clone()));
        let atom = Role::Name(name);
        if new {
            self.define_role(atom.clone(), r);
        }
        atom
    }

    fn define_role(&mut self, lhs: Role, r: &Role) {
        let rhs = match r {
            Role::Universal => Role::Universal,
            Role::Name(_) => {
                self.emit(Statement::RoleChain(vec![lhs.clone()], r.clone()));
                self.emit(Statement::RoleChain(vec![r.clone()], lhs));
                return;
            }
            Role::Inverse(x) => Role::Inverse(Box::new(self.role(x))),
            Role::Not(x) => Role::Not(Box::new(self.role(x))),
            Role::Union(a, b) => Role::Union(Box::new(self.role(a)), Box::new(self.role(b))),
            Role::Intersection(a, b) => {
                let na = self.role(&Role::Not(a.clone()));
                let nb = self.role(&Role::Not(b.clone()));
                Role::Not(Box::new(self.role(&Role::Union(Box::new(na), Box::new(nb)))))
            }
            Role::DomainRestr(x, c) => Role::DomainRestr(Box::new(self.role(x)), Box::new(self.concept(c))),
            Role::RangeRestr(x, c) => {
                let t = Role::Inverse(Box::new(Role::DomainRestr(Box::new(Role::Inverse(x.clone())), c.clone())));
                return self.define_role(lhs, &t);
            }
            Role::Restr(x, c1, c2) => {
                let t = Role::DomainRestr(Box::new(Role::RangeRestr(x.clone(), c2.clone())), c1.clone());
                return self.define_role(lhs, &t);
            }
            Role::Id(c) => Role::Id(Box::new(self.concept(c))),
            Role::Product(a, b) => Role::Product(Box::new(self.concept(a)), Box::new(self.concept(b))),
        };
        self.emit(Statement::RoleEquiv(lhs, rhs));
    }

    fn crole(&mut self, p: &ConcreteRole) -> ConcreteRole {
        if is_crole_atom(p) {
            return p.clone();
        }
        let (name, new) = self.fresh(DefinedTerm::CRole(p.clone()));
        let atom = ConcreteRole::Name(name);
        if new {
            self.define_crole(atom.clone(), p);
        }
        atom
    }

    fn define_crole(&mut self, lhs: ConcreteRole, p: &ConcreteRole) {
        let rhs = match p {
            ConcreteRole::Name(_) => p.clone(),
            ConcreteRole::Not(x) => ConcreteRole::Not(Box::new(self.crole(x))),
            ConcreteRole::Union(a, b) => ConcreteRole::Union(Box::new(self.crole(a)), Box::new(self.crole(b))),
            ConcreteRole::Intersection(a, b) => {
                let na = self.crole(&ConcreteRole::Not(a.clone()));
                let nb = self.crole(&ConcreteRole::Not(b.clone()));
                ConcreteRole::Not(Box::new(self.crole(&ConcreteRole::Union(Box::new(na), Box::new(nb)))))
            }
            ConcreteRole::DomainRestr(x, c) => {
                ConcreteRole::DomainRestr(Box::new(self.crole(x)), Box::new(self.concept(c)))
            }
            ConcreteRole::RangeRestr(x, t) => ConcreteRole::RangeRestr(Box::new(self.crole(x)), Box::new(self.data(t))),
            ConcreteRole::Restr(x, c, t) => {
                ConcreteRole::Restr(Box::new(self.crole(x)), Box::new(self.concept(c)), Box::new(self.data(t)))
            }
        };
        self.emit(Statement::CRoleEquiv(lhs, rhs));
    }

    fn data(&mut self, t: &DataTerm) -> DataTerm {
        if is_data_atom(t) {
            return t.clone();
        }
        let (name, new) = self.fresh(DefinedTerm::Data(t.clone()));
        let atom = DataTerm::Named(name);
        if new {
            self.define_data(atom.clone(), t);
        }
        atom
    }

    fn define_data(&mut self, lhs: DataTerm, t: &DataTerm) {
        let rhs = match t {
            DataTerm::Enumeration(v) if v.len() == 1 => DataTerm::Singleton(v[0].clone()),
            DataTerm::Singleton(_) => t.clone(),
            DataTerm::Not(x) => DataTerm::Not(Box::new(self.data(x))),
            DataTerm::Union(a, b) => DataTerm::Union(Box::new(self.data(a)), Box::new(self.data(b))),
            DataTerm::Intersection(a, b) => DataTerm::Intersection(Box::new(self.data(a)), Box::new(self.data(b))),
            atom => atom.clone(),
        };
        self.emit(Statement::DataEquiv(lhs, rhs));
    }
}
