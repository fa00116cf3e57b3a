//! The translation θ of normalized statements, queries and substitutions into
//! CNF formulae over level-0, level-1 and level-3 set variables, together with
//! the well-formedness constraints ξ₁ to ξ₁₂ and the facet rewriting ζ.

mod alpha;
pub mod sexpr;

use std::collections::{BTreeMap, HashMap};

use crate::error::TranslateError;
use crate::model::*;
use crate::normalize::NormalStatement;

pub use alpha::alpha_equivalent;

/// Level-0 variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct V0(pub u32);

/// Level-1 variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct V1(pub u32);

/// Level-3 variable, holding pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct V3(pub u32);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    Individuals,
    Data,
    Datatype(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var0Origin {
    Individual(Name),
    Constant(Name),
    /// Skolem witness for a non-emptiness requirement.
    Witness(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var1Origin {
    /// `X_I`
    Individuals,
    /// `X_D`
    Data,
    Top,
    Bottom,
    Concept(Name),
    NominalSet(Vec<Name>),
    Datatype(Name),
    DataTop(Name),
    DataBottom(Name),
    Facet(Name, Name),
    FacetExpr(Name, FacetCnf),
    Enumeration(Vec<Name>),
    DataName(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var3Origin {
    Universal,
    Role(Name),
    ConcreteRole(Name),
}

/// Bijective interning of variable origins, one table per level.
#[derive(Clone, Debug, Default)]
pub struct VarTable {
    var0: Vec<Var0Origin>,
    var1: Vec<Var1Origin>,
    var3: Vec<Var3Origin>,
    idx0: HashMap<Var0Origin, V0>,
    idx1: HashMap<Var1Origin, V1>,
    idx3: HashMap<Var3Origin, V3>,
}

impl VarTable {
    /// Level-0 variables for every individual and constant of `sig`, followed
    /// by the witnesses: one for `X_I`, one for `X_D` and one per datatype.
    pub fn from_signature(sig: &Signature) -> Self {
        let mut t = VarTable::default();
        for a in &sig.individuals {
            t.intern0(Var0Origin::Individual(a.clone()));
        }
        for e in sig.constants() {
            t.intern0(Var0Origin::Constant(e.clone()));
        }
        t.intern0(Var0Origin::Witness(Witness::Individuals));
        t.intern0(Var0Origin::Witness(Witness::Data));
        for d in sig.datatypes.keys() {
            t.intern0(Var0Origin::Witness(Witness::Datatype(d.clone())));
        }
        t.intern1(Var1Origin::Individuals);
        t.intern1(Var1Origin::Data);
        t.intern1(Var1Origin::Top);
        t.intern1(Var1Origin::Bottom);
        t.intern3(Var3Origin::Universal);
        t
    }

    pub fn intern0(&mut self, o: Var0Origin) -> V0 {
        if let Some(&v) = self.idx0.get(&o) {
            return v;
        }
        let v = V0(self.var0.len() as u32);
        self.var0.push(o.clone());
        self.idx0.insert(o, v);
        v
    }

    pub fn intern1(&mut self, o: Var1Origin) -> V1 {
        if let Some(&v) = self.idx1.get(&o) {
            return v;
        }
        let v = V1(self.var1.len() as u32);
        self.var1.push(o.clone());
        self.idx1.insert(o, v);
        v
    }

    pub fn intern3(&mut self, o: Var3Origin) -> V3 {
        if let Some(&v) = self.idx3.get(&o) {
            return v;
        }
        let v = V3(self.var3.len() as u32);
        self.var3.push(o.clone());
        self.idx3.insert(o, v);
        v
    }

    pub fn get0(&self, o: &Var0Origin) -> Option<V0> {
        self.idx0.get(o).copied()
    }

    pub fn get1(&self, o: &Var1Origin) -> Option<V1> {
        self.idx1.get(o).copied()
    }

    pub fn get3(&self, o: &Var3Origin) -> Option<V3> {
        self.idx3.get(o).copied()
    }

    pub fn origin0(&self, v: V0) -> &Var0Origin {
        &self.var0[v.0 as usize]
    }

    pub fn origin1(&self, v: V1) -> &Var1Origin {
        &self.var1[v.0 as usize]
    }

    pub fn origin3(&self, v: V3) -> &Var3Origin {
        &self.var3[v.0 as usize]
    }

    pub fn individual(&self, a: &Name) -> Option<V0> {
        self.get0(&Var0Origin::Individual(a.clone()))
    }

    pub fn constant(&self, e: &Name) -> Option<V0> {
        self.get0(&Var0Origin::Constant(e.clone()))
    }

    pub fn len0(&self) -> usize {
        self.var0.len()
    }

    pub fn len1(&self) -> usize {
        self.var1.len()
    }

    pub fn len3(&self) -> usize {
        self.var3.len()
    }

    pub fn level0(&self) -> impl Iterator<Item = V0> {
        (0..self.var0.len() as u32).map(V0)
    }

    pub fn level1(&self) -> impl Iterator<Item = V1> {
        (0..self.var1.len() as u32).map(V1)
    }

    pub fn level3(&self) -> impl Iterator<Item = V3> {
        (0..self.var3.len() as u32).map(V3)
    }

    pub fn is_witness(&self, v: V0) -> bool {
        matches!(self.origin0(v), Var0Origin::Witness(_))
    }
}

/// Argument of an open atom: a level-0 variable or a bound variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Free(V0),
    Bound(u32),
}

/// The three level-0 atom shapes `x = y`, `x ∈ X¹` and `⟨x, y⟩ ∈ X³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom<T> {
    Eq(T, T),
    Mem1(T, V1),
    Mem3(T, T, V3),
}

impl<T: Copy> Atom<T> {
    pub fn map<U>(&self, mut f: impl FnMut(T) -> U) -> Atom<U> {
        match *self {
            Atom::Eq(a, b) => Atom::Eq(f(a), f(b)),
            Atom::Mem1(a, x) => Atom::Mem1(f(a), x),
            Atom::Mem3(a, b, x) => Atom::Mem3(f(a), f(b), x),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = T> {
        let (a, b) = match *self {
            Atom::Eq(a, b) | Atom::Mem3(a, b, _) => (a, Some(b)),
            Atom::Mem1(a, _) => (a, None),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal<T> {
    pub positive: bool,
    pub atom: Atom<T>,
}

impl<T: Copy> Literal<T> {
    pub fn pos(atom: Atom<T>) -> Self {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom<T>) -> Self {
        Literal { positive: false, atom }
    }

    pub fn complement(&self) -> Self {
        Literal { positive: !self.positive, atom: self.atom }
    }

    pub fn map<U>(&self, f: impl FnMut(T) -> U) -> Literal<U> {
        Literal { positive: self.positive, atom: self.atom.map(f) }
    }
}

pub type OpenLiteral = Literal<Term>;
pub type GroundLiteral = Literal<V0>;

/// `(∀z₁)…(∀z_q) M` with `M` a conjunction of clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universal {
    pub bound: Vec<u32>,
    pub matrix: Vec<Vec<OpenLiteral>>,
}

/// A conjunction of ground clauses and universal formulae.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    pub ground: Vec<Vec<GroundLiteral>>,
    pub universals: Vec<Universal>,
}

impl Formula {
    fn universal(q: u32, matrix: Vec<Vec<OpenLiteral>>) -> Self {
        Formula { ground: vec![], universals: vec![Universal { bound: (0..q).collect(), matrix }] }
    }

    fn unit(l: GroundLiteral) -> Self {
        Formula { ground: vec![vec![l]], universals: vec![] }
    }

    fn extend(&mut self, other: Formula) {
        self.ground.extend(other.ground);
        self.universals.extend(other.universals);
    }
}

/// One group of well-formedness constraints. `index` is 1 to 12 for ξ₁ to
/// ξ₁₂ and 0 for the typing of fresh datatype-term names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiFormula {
    pub index: u8,
    pub formula: Formula,
}

/// A non-emptiness requirement `x ∈ X¹` met by a Skolem witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessRequest {
    pub witness: V0,
    pub set: V1,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TranslationMode {
    /// The formulae exactly as printed, converted to CNF.
    Literal,
    /// Relativized complements and disjunctive cardinality translations.
    #[default]
    Corrected,
}

/// `φ_KB` split into its ground part, its universal part and the
/// existential requests of ξ₁ and ξ₄.
#[derive(Clone, Debug)]
pub struct PhiKB {
    pub vars: VarTable,
    pub ground_clauses: Vec<Vec<GroundLiteral>>,
    pub universals: Vec<Universal>,
    pub witness_requests: Vec<WitnessRequest>,
}

/// Translates a normalized knowledge base.
pub fn translate_kb(kb: &KnowledgeBase, mode: TranslationMode) -> Result<PhiKB, TranslateError> {
    let mut vars = VarTable::from_signature(&kb.signature);
    let mut all = Formula::default();
    for s in kb.statements() {
        let ns = NormalStatement::from_statement(s)
            .ok_or_else(|| TranslateError::UnsupportedStatement(crate::pretty::statement(s)))?;
        all.extend(theta_statement(&ns, &kb.signature, &mut vars, mode)?);
    }
    let xi = build_xi(&kb.signature, &mut vars, mode);
    for x in xi {
        all.extend(x.formula);
    }
    let witness_requests = witness_requests(&kb.signature, &vars);
    Ok(PhiKB { vars, ground_clauses: all.ground, universals: all.universals, witness_requests })
}

fn witness_requests(sig: &Signature, vars: &VarTable) -> Vec<WitnessRequest> {
    let mut out = vec![
        WitnessRequest {
            witness: vars.get0(&Var0Origin::Witness(Witness::Individuals)).unwrap(),
            set: vars.get1(&Var1Origin::Individuals).unwrap(),
        },
        WitnessRequest {
            witness: vars.get0(&Var0Origin::Witness(Witness::Data)).unwrap(),
            set: vars.get1(&Var1Origin::Data).unwrap(),
        },
    ];
    for d in sig.datatypes.keys() {
        out.push(WitnessRequest {
            witness: vars.get0(&Var0Origin::Witness(Witness::Datatype(d.clone()))).unwrap(),
            set: vars.get1(&Var1Origin::Datatype(d.clone())).unwrap(),
        });
    }
    out
}

fn concept_var(c: &Concept, vars: &mut VarTable) -> V1 {
    vars.intern1(match c {
        Concept::Name(n) => Var1Origin::Concept(n.clone()),
        Concept::Top => Var1Origin::Top,
        Concept::Bottom => Var1Origin::Bottom,
        Concept::NominalSet(v) => Var1Origin::NominalSet(v.clone()),
        other => unreachable!("not a concept atom: {other:?}"),
    })
}

fn data_var(t: &DataTerm, vars: &mut VarTable) -> V1 {
    vars.intern1(match t {
        DataTerm::Datatype(d) => Var1Origin::Datatype(d.clone()),
        DataTerm::Named(n) => Var1Origin::DataName(n.clone()),
        DataTerm::Enumeration(v) => Var1Origin::Enumeration(v.clone()),
        DataTerm::FacetExpr(d, psi) => match psi.as_base() {
            Some(FacetBase::Facet(f)) => Var1Origin::Facet(d.clone(), f.clone()),
            Some(FacetBase::Top) => Var1Origin::DataTop(d.clone()),
            Some(FacetBase::Bottom) => Var1Origin::DataBottom(d.clone()),
            None => Var1Origin::FacetExpr(d.clone(), psi.clone()),
        },
        other => unreachable!("not a datatype atom: {other:?}"),
    })
}

fn role_var(r: &Role, vars: &mut VarTable) -> V3 {
    vars.intern3(match r {
        Role::Name(n) => Var3Origin::Role(n.clone()),
        Role::Universal => Var3Origin::Universal,
        other => unreachable!("not a role atom: {other:?}"),
    })
}

fn crole_var(p: &ConcreteRole, vars: &mut VarTable) -> V3 {
    match p {
        ConcreteRole::Name(n) => vars.intern3(Var3Origin::ConcreteRole(n.clone())),
        other => unreachable!("not a concrete role atom: {other:?}"),
    }
}

fn individual(a: &Name, vars: &VarTable) -> Result<V0, TranslateError> {
    vars.individual(a).ok_or_else(|| TranslateError::UnknownName(a.to_string()))
}

fn constant(e: &Name, vars: &VarTable) -> Result<V0, TranslateError> {
    vars.constant(e).ok_or_else(|| TranslateError::UnknownName(e.to_string()))
}

const Z: Term = Term::Bound(0);
const Z1: Term = Term::Bound(1);
const Z2: Term = Term::Bound(2);

fn b(i: u32) -> Term {
    Term::Bound(i)
}

fn m1<T: Copy>(t: T, x: V1) -> Atom<T> {
    Atom::Mem1(t, x)
}

fn m3<T: Copy>(s: T, t: T, x: V3) -> Atom<T> {
    Atom::Mem3(s, t, x)
}

fn eq<T: Copy>(s: T, t: T) -> Atom<T> {
    Atom::Eq(s, t)
}

fn p<T: Copy>(a: Atom<T>) -> Literal<T> {
    Literal::pos(a)
}

fn n<T: Copy>(a: Atom<T>) -> Literal<T> {
    Literal::neg(a)
}

/// `(∀z)(X ↔ Y)` over unary atoms.
fn equiv1(x: V1, y: V1) -> Formula {
    Formula::universal(1, vec![vec![n(m1(Z, x)), p(m1(Z, y))], vec![n(m1(Z, y)), p(m1(Z, x))]])
}

/// Pairwise equalities `z_i = z_j` for `i < j` among `zs`.
fn pairwise_eq(zs: &[Term]) -> Vec<OpenLiteral> {
    let mut out = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            out.push(p(eq(zs[i], zs[j])));
        }
    }
    out
}

/// Translation of one normalized statement. Pair-level bound variables are
/// numbered `z₁ = 0, z₂ = 1, …`; cardinality and chain forms put the centre
/// variable `z` at 0.
pub fn theta_statement(
    s: &NormalStatement,
    sig: &Signature,
    vars: &mut VarTable,
    mode: TranslationMode,
) -> Result<Formula, TranslateError> {
    use NormalStatement as N;
    let corrected = mode == TranslationMode::Corrected;
    let xi = vars.intern1(Var1Origin::Individuals);
    let xd = vars.intern1(Var1Origin::Data);
    let (z1, z2) = (b(0), b(1));
    Ok(match s {
        N::CTop(c1) => {
            let c1 = concept_var(c1, vars);
            equiv1(c1, vars.intern1(Var1Origin::Top))
        }
        N::CNot(c1, c2) => {
            let (c1, c2) = (concept_var(c1, vars), concept_var(c2, vars));
            let mut cover = vec![p(m1(Z, c2)), p(m1(Z, c1))];
            if corrected {
                cover.push(n(m1(Z, xi)));
            }
            Formula::universal(1, vec![vec![n(m1(Z, c1)), n(m1(Z, c2))], cover])
        }
        N::COr(c1, c2, c3) => {
            let (c1, c2, c3) = (concept_var(c1, vars), concept_var(c2, vars), concept_var(c3, vars));
            Formula::universal(
                1,
                vec![
                    vec![n(m1(Z, c1)), p(m1(Z, c2)), p(m1(Z, c3))],
                    vec![n(m1(Z, c2)), p(m1(Z, c1))],
                    vec![n(m1(Z, c3)), p(m1(Z, c1))],
                ],
            )
        }
        N::CNominal(c1, a) => {
            let c1 = concept_var(c1, vars);
            let xa = Term::Free(individual(a, vars)?);
            Formula::universal(1, vec![vec![n(m1(Z, c1)), p(eq(Z, xa))], vec![n(eq(Z, xa)), p(m1(Z, c1))]])
        }
        N::CSubAll(c1, r1, c2) => {
            let (c1, r1, c2) = (concept_var(c1, vars), role_var(r1, vars), concept_var(c2, vars));
            Formula::universal(2, vec![vec![n(m1(z1, c1)), n(m3(z1, z2, r1)), p(m1(z2, c2))]])
        }
        N::CExistsSub(r1, c1, c2) => {
            let (r1, c1, c2) = (role_var(r1, vars), concept_var(c1, vars), concept_var(c2, vars));
            Formula::universal(2, vec![vec![n(m3(z1, z2, r1)), n(m1(z2, c1)), p(m1(z1, c2))]])
        }
        N::CAtLeast(k, r1, c1, c2) => {
            let (r1, c1, c2) = (role_var(r1, vars), concept_var(c1, vars), concept_var(c2, vars));
            at_least(*k, |zi| m1(zi, c1), r1, c2, corrected)
        }
        N::CAtMost(c1, k, r1, c2) => {
            let (c1, r1, c2) = (concept_var(c1, vars), role_var(r1, vars), concept_var(c2, vars));
            at_most(c1, *k, r1, |zi| m1(zi, c2), corrected)
        }
        N::CSubAllData(c1, p1, t1) => {
            let (c1, p1, t1) = (concept_var(c1, vars), crole_var(p1, vars), data_var(t1, vars));
            Formula::universal(2, vec![vec![n(m1(z1, c1)), n(m3(z1, z2, p1)), p(m1(z2, t1))]])
        }
        N::CExistsDataSub(p1, t1, c1) => {
            let (p1, t1, c1) = (crole_var(p1, vars), data_var(t1, vars), concept_var(c1, vars));
            Formula::universal(2, vec![vec![n(m3(z1, z2, p1)), n(m1(z2, t1)), p(m1(z1, c1))]])
        }
        N::CAtLeastData(k, p1, t1, c1) => {
            let (p1, t1, c1) = (crole_var(p1, vars), data_var(t1, vars), concept_var(c1, vars));
            at_least(*k, |zi| m1(zi, t1), p1, c1, corrected)
        }
        N::CAtMostData(c1, k, p1, t1) => {
            let (c1, p1, t1) = (concept_var(c1, vars), crole_var(p1, vars), data_var(t1, vars));
            at_most(c1, *k, p1, |zi| m1(zi, t1), corrected)
        }
        N::CValued(c1, r1, a) => {
            let (c1, r1) = (concept_var(c1, vars), role_var(r1, vars));
            let xa = Term::Free(individual(a, vars)?);
            Formula::universal(1, vec![vec![n(m1(Z, c1)), p(m3(Z, xa, r1))], vec![n(m3(Z, xa, r1)), p(m1(Z, c1))]])
        }
        N::CDatatyped(c1, p1, e) => {
            let (c1, p1) = (concept_var(c1, vars), crole_var(p1, vars));
            let xe = Term::Free(constant(e, vars)?);
            Formula::universal(1, vec![vec![n(m1(Z, c1)), p(m3(Z, xe, p1))], vec![n(m3(Z, xe, p1)), p(m1(Z, c1))]])
        }
        N::CSelf(c1, r1) => {
            let (c1, r1) = (concept_var(c1, vars), role_var(r1, vars));
            Formula::universal(1, vec![vec![n(m1(Z, c1)), p(m3(Z, Z, r1))], vec![n(m3(Z, Z, r1)), p(m1(Z, c1))]])
        }
        N::RUniv(r1) => {
            let (r1, u) = (role_var(r1, vars), vars.intern3(Var3Origin::Universal));
            Formula::universal(
                2,
                vec![vec![n(m3(z1, z2, r1)), p(m3(z1, z2, u))], vec![n(m3(z1, z2, u)), p(m3(z1, z2, r1))]],
            )
        }
        N::RNot(r1, r2) => {
            let (r1, r2) = (role_var(r1, vars), role_var(r2, vars));
            let cover = if corrected {
                vec![p(m3(z1, z2, r2)), p(m3(z1, z2, r1)), n(m1(z1, xi)), n(m1(z2, xi))]
            } else {
                vec![p(m3(z1, z2, r2)), n(m3(z1, z2, r1))]
            };
            Formula::universal(2, vec![vec![n(m3(z1, z2, r1)), n(m3(z1, z2, r2))], cover])
        }
        N::ROr(r1, r2, r3) => {
            let (r1, r2, r3) = (role_var(r1, vars), role_var(r2, vars), role_var(r3, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, r1)), p(m3(z1, z2, r2)), p(m3(z1, z2, r3))],
                    vec![n(m3(z1, z2, r2)), p(m3(z1, z2, r1))],
                    vec![n(m3(z1, z2, r3)), p(m3(z1, z2, r1))],
                ],
            )
        }
        N::RInv(r1, r2) => {
            let (r1, r2) = (role_var(r1, vars), role_var(r2, vars));
            Formula::universal(
                2,
                vec![vec![n(m3(z1, z2, r1)), p(m3(z2, z1, r2))], vec![n(m3(z2, z1, r2)), p(m3(z1, z2, r1))]],
            )
        }
        N::RId(r1, c1) => {
            let (r1, c1) = (role_var(r1, vars), concept_var(c1, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, r1)), p(m1(z1, c1))],
                    vec![n(m3(z1, z2, r1)), p(m1(z2, c1))],
                    vec![n(m3(z1, z2, r1)), p(eq(z1, z2))],
                    vec![n(m1(z1, c1)), n(m1(z2, c1)), n(eq(z1, z2)), p(m3(z1, z2, r1))],
                ],
            )
        }
        N::RDom(r1, r2, c1) => {
            let (r1, r2, c1) = (role_var(r1, vars), role_var(r2, vars), concept_var(c1, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, r1)), p(m3(z1, z2, r2))],
                    vec![n(m3(z1, z2, r1)), p(m1(z1, c1))],
                    vec![n(m3(z1, z2, r2)), n(m1(z1, c1)), p(m3(z1, z2, r1))],
                ],
            )
        }
        N::RProd(r, c1, c2) => {
            let (r, c1, c2) = (role_var(r, vars), concept_var(c1, vars), concept_var(c2, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, r)), p(m1(z1, c1))],
                    vec![n(m3(z1, z2, r)), p(m1(z2, c2))],
                    vec![n(m1(z1, c1)), n(m1(z2, c2)), p(m3(z1, z2, r))],
                ],
            )
        }
        N::RChain(rs, sup) => {
            let k = rs.len() as u32;
            let mut clause: Vec<OpenLiteral> =
                rs.iter().enumerate().map(|(i, r)| n(m3(b(i as u32), b(i as u32 + 1), role_var(r, vars)))).collect();
            clause.push(p(m3(Z, b(k), role_var(sup, vars))));
            Formula::universal(k + 1, vec![clause])
        }
        N::RRef(r1) => {
            let r1 = role_var(r1, vars);
            let mut clause = vec![p(m3(Z, Z, r1))];
            if corrected {
                clause.insert(0, n(m1(Z, xi)));
            }
            Formula::universal(1, vec![clause])
        }
        N::RIrref(r1) => {
            let r1 = role_var(r1, vars);
            Formula::universal(1, vec![vec![n(m3(Z, Z, r1))]])
        }
        N::RDis(r1, r2) => {
            let (r1, r2) = (role_var(r1, vars), role_var(r2, vars));
            Formula::universal(2, vec![vec![n(m3(z1, z2, r1)), n(m3(z1, z2, r2))]])
        }
        N::RFun(r1) => fun(role_var(r1, vars)),
        N::PEq(p1, p2) => {
            let (p1, p2) = (crole_var(p1, vars), crole_var(p2, vars));
            Formula::universal(
                2,
                vec![vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2))], vec![n(m3(z1, z2, p2)), p(m3(z1, z2, p1))]],
            )
        }
        N::PNot(p1, p2) => {
            let (p1, p2) = (crole_var(p1, vars), crole_var(p2, vars));
            let mut cover = vec![p(m3(z1, z2, p2)), p(m3(z1, z2, p1))];
            if corrected {
                cover.extend([n(m1(z1, xi)), n(m1(z2, xd))]);
            }
            Formula::universal(2, vec![vec![n(m3(z1, z2, p1)), n(m3(z1, z2, p2))], cover])
        }
        N::POr(p1, p2, p3) => {
            let (p1, p2, p3) = (crole_var(p1, vars), crole_var(p2, vars), crole_var(p3, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2)), p(m3(z1, z2, p3))],
                    vec![n(m3(z1, z2, p2)), p(m3(z1, z2, p1))],
                    vec![n(m3(z1, z2, p3)), p(m3(z1, z2, p1))],
                ],
            )
        }
        N::PSub(p1, p2) => {
            let (p1, p2) = (crole_var(p1, vars), crole_var(p2, vars));
            Formula::universal(2, vec![vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2))]])
        }
        N::PDom(p1, p2, c1) => {
            let (p1, p2, c1) = (crole_var(p1, vars), crole_var(p2, vars), concept_var(c1, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2))],
                    vec![n(m3(z1, z2, p1)), p(m1(z1, c1))],
                    vec![n(m3(z1, z2, p2)), n(m1(z1, c1)), p(m3(z1, z2, p1))],
                ],
            )
        }
        N::PRange(p1, p2, t1) => {
            let (p1, p2, t1) = (crole_var(p1, vars), crole_var(p2, vars), data_var(t1, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2))],
                    vec![n(m3(z1, z2, p1)), p(m1(z2, t1))],
                    vec![n(m3(z1, z2, p2)), n(m1(z2, t1)), p(m3(z1, z2, p1))],
                ],
            )
        }
        N::PRestr(p1, p2, c1, t1) => {
            let (p1, p2) = (crole_var(p1, vars), crole_var(p2, vars));
            let (c1, t1) = (concept_var(c1, vars), data_var(t1, vars));
            Formula::universal(
                2,
                vec![
                    vec![n(m3(z1, z2, p1)), p(m3(z1, z2, p2))],
                    vec![n(m3(z1, z2, p1)), p(m1(z1, c1))],
                    vec![n(m3(z1, z2, p1)), p(m1(z2, t1))],
                    vec![n(m3(z1, z2, p2)), n(m1(z1, c1)), n(m1(z2, t1)), p(m3(z1, z2, p1))],
                ],
            )
        }
        N::PDis(p1, p2) => {
            let (p1, p2) = (crole_var(p1, vars), crole_var(p2, vars));
            Formula::universal(2, vec![vec![n(m3(z1, z2, p1)), n(m3(z1, z2, p2))]])
        }
        N::PFun(p1) => fun(crole_var(p1, vars)),
        N::TEq(t1, t2) => equiv1(data_var(t1, vars), data_var(t2, vars)),
        N::TNot(t1, t2) => {
            let (t1, t2) = (data_var(t1, vars), data_var(t2, vars));
            let mut cover = vec![p(m1(Z, t2)), p(m1(Z, t1))];
            if corrected {
                cover.push(n(m1(Z, xd)));
            }
            Formula::universal(1, vec![vec![n(m1(Z, t1)), n(m1(Z, t2))], cover])
        }
        N::TOr(t1, t2, t3) => {
            let (t1, t2, t3) = (data_var(t1, vars), data_var(t2, vars), data_var(t3, vars));
            Formula::universal(
                1,
                vec![
                    vec![n(m1(Z, t1)), p(m1(Z, t2)), p(m1(Z, t3))],
                    vec![n(m1(Z, t2)), p(m1(Z, t1))],
                    vec![n(m1(Z, t3)), p(m1(Z, t1))],
                ],
            )
        }
        N::TAnd(t1, t2, t3) => {
            let (t1, t2, t3) = (data_var(t1, vars), data_var(t2, vars), data_var(t3, vars));
            Formula::universal(
                1,
                vec![
                    vec![n(m1(Z, t1)), p(m1(Z, t2))],
                    vec![n(m1(Z, t1)), p(m1(Z, t3))],
                    vec![n(m1(Z, t2)), n(m1(Z, t3)), p(m1(Z, t1))],
                ],
            )
        }
        N::TSingleton(t1, e) => {
            let t1 = data_var(t1, vars);
            let xe = Term::Free(constant(e, vars)?);
            Formula::universal(1, vec![vec![n(m1(Z, t1)), p(eq(Z, xe))], vec![n(eq(Z, xe)), p(m1(Z, t1))]])
        }
        N::AConcept(a, c1) => {
            let xa = individual(a, vars)?;
            Formula::unit(p(m1(xa, concept_var(c1, vars))))
        }
        N::ARole(a, b_, r1) => {
            let (xa, xb) = (individual(a, vars)?, individual(b_, vars)?);
            Formula::unit(p(m3(xa, xb, role_var(r1, vars))))
        }
        N::ANegRole(a, b_, r1) => {
            let (xa, xb) = (individual(a, vars)?, individual(b_, vars)?);
            Formula::unit(n(m3(xa, xb, role_var(r1, vars))))
        }
        N::ASame(a, b_) => Formula::unit(p(eq(individual(a, vars)?, individual(b_, vars)?))),
        N::ADiff(a, b_) => Formula::unit(n(eq(individual(a, vars)?, individual(b_, vars)?))),
        N::AData(e, t1) => {
            let xe = constant(e, vars)?;
            Formula::unit(p(m1(xe, data_var(t1, vars))))
        }
        N::ACRole(a, e, p1) => {
            let (xa, xe) = (individual(a, vars)?, constant(e, vars)?);
            Formula::unit(p(m3(xa, xe, crole_var(p1, vars))))
        }
        N::ANegCRole(a, e, p1) => {
            let (xa, xe) = (individual(a, vars)?, constant(e, vars)?);
            Formula::unit(n(m3(xa, xe, crole_var(p1, vars))))
        }
    })
    .and_then(|f| check_kinds(s, sig).map(|_| f))
}

/// Names used by a statement must have the kind its slot requires.
fn check_kinds(s: &NormalStatement, sig: &Signature) -> Result<(), TranslateError> {
    use NormalStatement as N;
    let want = |name: &Name, kind: NameKind| match sig.kind_of(name) {
        Some(k) if k == kind => Ok(()),
        Some(_) => Err(TranslateError::WrongKind(name.to_string())),
        None => Err(TranslateError::UnknownName(name.to_string())),
    };
    match s {
        N::CDatatyped(_, _, e) | N::TSingleton(_, e) | N::AData(e, _) => want(e, NameKind::Constant),
        N::ACRole(_, e, _) | N::ANegCRole(_, e, _) => want(e, NameKind::Constant),
        _ => Ok(()),
    }
}

/// `≥n S.F ⊑ C`, where `filler(z_i)` is the filler atom and `C` sits at `z`.
fn at_least(k: u32, filler: impl Fn(Term) -> Atom<Term>, s: V3, c: V1, corrected: bool) -> Formula {
    let zs: Vec<Term> = (1..=k).map(b).collect();
    let eqs = pairwise_eq(&zs);
    let tail = p(m1(Z, c));
    let matrix = if corrected {
        let mut clause: Vec<OpenLiteral> = zs.iter().flat_map(|&zi| [n(filler(zi)), n(m3(Z, zi, s))]).collect();
        clause.extend(eqs);
        clause.push(tail);
        vec![clause]
    } else {
        zs.iter()
            .map(|&zi| {
                let mut clause = vec![n(filler(zi)), n(m3(Z, zi, s))];
                clause.extend(eqs.iter().copied());
                clause.push(tail);
                clause
            })
            .collect()
    };
    Formula::universal(k + 1, matrix)
}

/// `C ⊑ ≤n S.F`.
fn at_most(c: V1, k: u32, s: V3, filler: impl Fn(Term) -> Atom<Term>, corrected: bool) -> Formula {
    let zs: Vec<Term> = (1..=k + 1).map(b).collect();
    let eqs = pairwise_eq(&zs);
    let head = n(m1(Z, c));
    let matrix = if corrected {
        let mut clause = vec![head];
        clause.extend(zs.iter().flat_map(|&zi| [n(filler(zi)), n(m3(Z, zi, s))]));
        clause.extend(eqs);
        vec![clause]
    } else {
        zs.iter()
            .map(|&zi| {
                let mut clause = vec![head, n(filler(zi)), n(m3(Z, zi, s))];
                clause.extend(eqs.iter().copied());
                clause
            })
            .collect()
    };
    Formula::universal(k + 2, matrix)
}

fn fun(r: V3) -> Formula {
    let (z1, z2, z3) = (Z, Z1, Z2);
    Formula::universal(3, vec![vec![n(m3(z1, z2, r)), n(m3(z1, z3, r)), p(eq(z2, z3))]])
}

/// ζ applied to a facet expression, as a CNF over signed level-1 variables.
pub fn zeta(d: &Name, psi: &FacetCnf, vars: &mut VarTable) -> Vec<Vec<(bool, V1)>> {
    psi.0
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|lit| {
                    let v = vars.intern1(match &lit.base {
                        FacetBase::Facet(f) => Var1Origin::Facet(d.clone(), f.clone()),
                        FacetBase::Top => Var1Origin::DataTop(d.clone()),
                        FacetBase::Bottom => Var1Origin::DataBottom(d.clone()),
                    });
                    (lit.positive, v)
                })
                .collect()
        })
        .collect()
}

/// Every way of picking one element from each list.
fn choices<T: Copy>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![vec![]], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn dedup_clause(mut c: Vec<OpenLiteral>) -> Vec<OpenLiteral> {
    let mut seen = Vec::with_capacity(c.len());
    c.retain(|l| {
        if seen.contains(l) {
            false
        } else {
            seen.push(*l);
            true
        }
    });
    c
}

/// The constraints ξ₁ to ξ₁₂ over the signature, plus the typing of fresh
/// datatype-term names in corrected mode. Nominal sets, enumerations and
/// facet expressions are taken from the variables interned so far, so the
/// statements must be translated first.
pub fn build_xi(sig: &Signature, vars: &mut VarTable, mode: TranslationMode) -> Vec<XiFormula> {
    let corrected = mode == TranslationMode::Corrected;
    let xi = vars.intern1(Var1Origin::Individuals);
    let xd = vars.intern1(Var1Origin::Data);
    let top = vars.intern1(Var1Origin::Top);
    let bot = vars.intern1(Var1Origin::Bottom);
    let u = vars.intern3(Var3Origin::Universal);
    let (z1, z2) = (b(0), b(1));
    let mut out = Vec::new();
    let mut push = |index: u8, formula: Formula| out.push(XiFormula { index, formula });

    push(1, Formula::universal(1, vec![vec![n(m1(Z, xi)), n(m1(Z, xd))], vec![p(m1(Z, xd)), p(m1(Z, xi))]]));
    push(1, Formula::universal(1, vec![vec![p(m1(Z, xi)), p(m1(Z, xd))]]));

    push(2, equiv1(xi, top));
    push(2, Formula::universal(1, vec![vec![n(m1(Z, bot))]]));

    for a in &sig.concepts {
        let x = vars.intern1(Var1Origin::Concept(a.clone()));
        push(3, Formula::universal(1, vec![vec![n(m1(Z, x)), p(m1(Z, xi))]]));
    }

    let dts: Vec<V1> = sig.datatypes.keys().map(|d| vars.intern1(Var1Origin::Datatype(d.clone()))).collect();
    for &x in &dts {
        push(4, Formula::universal(1, vec![vec![n(m1(Z, x)), p(m1(Z, xd))]]));
    }
    for i in 0..dts.len() {
        for j in i + 1..dts.len() {
            let mut m = vec![vec![n(m1(Z, dts[i])), n(m1(Z, dts[j]))]];
            if !corrected {
                m.push(vec![p(m1(Z, dts[j])), p(m1(Z, dts[i]))]);
            }
            push(4, Formula::universal(1, m));
        }
    }

    for d in sig.datatypes.keys() {
        let x = vars.intern1(Var1Origin::Datatype(d.clone()));
        let t = vars.intern1(Var1Origin::DataTop(d.clone()));
        let f = vars.intern1(Var1Origin::DataBottom(d.clone()));
        push(5, equiv1(x, t));
        push(5, Formula::universal(1, vec![vec![n(m1(Z, f))]]));
    }

    for (d, decl) in &sig.datatypes {
        let x = vars.intern1(Var1Origin::Datatype(d.clone()));
        for f in &decl.facets {
            let fv = vars.intern1(Var1Origin::Facet(d.clone(), f.clone()));
            push(6, Formula::universal(1, vec![vec![n(m1(Z, fv)), p(m1(Z, x))]]));
        }
    }

    push(
        7,
        Formula::universal(
            2,
            vec![
                vec![n(m1(z1, xi)), n(m1(z2, xi)), p(m3(z1, z2, u))],
                vec![n(m3(z1, z2, u)), p(m1(z1, xi))],
                vec![n(m3(z1, z2, u)), p(m1(z2, xi))],
            ],
        ),
    );

    for r in &sig.roles {
        let x = vars.intern3(Var3Origin::Role(r.clone()));
        push(
            8,
            Formula::universal(2, vec![vec![n(m3(z1, z2, x)), p(m1(z1, xi))], vec![n(m3(z1, z2, x)), p(m1(z2, xi))]]),
        );
    }

    for t in &sig.concrete_roles {
        let x = vars.intern3(Var3Origin::ConcreteRole(t.clone()));
        push(
            9,
            Formula::universal(2, vec![vec![n(m3(z1, z2, x)), p(m1(z1, xi))], vec![n(m3(z1, z2, x)), p(m1(z2, xd))]]),
        );
    }

    let mut units = Formula::default();
    for a in &sig.individuals {
        units.ground.push(vec![p(m1(vars.individual(a).unwrap(), xi))]);
    }
    for (d, decl) in &sig.datatypes {
        let x = vars.intern1(Var1Origin::Datatype(d.clone()));
        for e in &decl.constants {
            units.ground.push(vec![p(m1(vars.constant(e).unwrap(), x))]);
        }
    }
    push(10, units);

    let sets: Vec<(V1, Vec<V0>)> = vars
        .level1()
        .filter_map(|v| match vars.origin1(v) {
            Var1Origin::Enumeration(es) => Some((v, es.iter().filter_map(|e| vars.constant(e)).collect())),
            _ => None,
        })
        .chain(vars.level1().filter_map(|v| match vars.origin1(v) {
            Var1Origin::NominalSet(as_) => Some((v, as_.iter().filter_map(|a| vars.individual(a)).collect())),
            _ => None,
        }))
        .collect();
    for (x, members) in sets {
        let mut first = vec![n(m1(Z, x))];
        first.extend(members.iter().map(|&m| p(eq(Z, Term::Free(m)))));
        let mut m = vec![first];
        m.extend(members.iter().map(|&mv| vec![n(eq(Z, Term::Free(mv))), p(m1(Z, x))]));
        push(11, Formula::universal(1, m));
    }

    let exprs: Vec<(V1, Name, FacetCnf)> = vars
        .level1()
        .filter_map(|v| match vars.origin1(v) {
            Var1Origin::FacetExpr(d, psi) => Some((v, d.clone(), psi.clone())),
            _ => None,
        })
        .collect();
    for (x, d, psi) in exprs {
        let z = zeta(&d, &psi, vars);
        let dv = vars.intern1(Var1Origin::Datatype(d));
        let lit = |(pos, v): (bool, V1)| Literal { positive: pos, atom: m1(Z, v) };
        let mut m = Vec::new();
        if corrected {
            m.push(vec![n(m1(Z, x)), p(m1(Z, dv))]);
        }
        for clause in &z {
            let mut c = vec![n(m1(Z, x))];
            c.extend(clause.iter().map(|&l| lit(l)));
            m.push(dedup_clause(c));
        }
        for pick in choices(&z) {
            let mut c = Vec::new();
            if corrected {
                c.push(n(m1(Z, dv)));
            }
            c.push(p(m1(Z, x)));
            c.extend(pick.into_iter().map(|(pos, v)| lit((!pos, v))));
            m.push(dedup_clause(c));
        }
        push(12, Formula::universal(1, m));
    }

    if corrected {
        for t in &sig.data_names {
            let x = vars.intern1(Var1Origin::DataName(t.clone()));
            push(0, Formula::universal(1, vec![vec![n(m1(Z, x)), p(m1(Z, xd))]]));
        }
    }
    out
}

/// Argument of a translated query literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QTerm {
    /// Index into [`PsiQ::vars`].
    Var(u32),
    Const(V0),
}

/// `ψ_Q`: the translated query. Query variables live in their own namespace,
/// disjoint from the level-0 variables of `φ_KB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiQ {
    pub vars: Vec<Name>,
    pub literals: Vec<Literal<QTerm>>,
}

pub fn theta_query(q: &Query, vars: &VarTable) -> Result<PsiQ, TranslateError> {
    let names = query_vars(q);
    let term = |t: &QueryTerm| -> Result<QTerm, TranslateError> {
        Ok(match t {
            QueryTerm::Var(v) => QTerm::Var(names.iter().position(|x| x == v).unwrap() as u32),
            QueryTerm::Individual(a) => QTerm::Const(individual(a, vars)?),
            QueryTerm::Constant(e) => QTerm::Const(constant(e, vars)?),
        })
    };
    let v1 = |o: Var1Origin, name: &Name| vars.get1(&o).ok_or_else(|| TranslateError::UnknownName(name.to_string()));
    let v3 = |o: Var3Origin, name: &Name| vars.get3(&o).ok_or_else(|| TranslateError::UnknownName(name.to_string()));
    let mut literals = Vec::with_capacity(q.literals.len());
    for lit in &q.literals {
        let atom = match &lit.atom {
            QueryAtom::Concept(c, w) => Atom::Mem1(term(w)?, v1(Var1Origin::Concept(c.clone()), c)?),
            QueryAtom::Role(r, w1, w2) => Atom::Mem3(term(w1)?, term(w2)?, v3(Var3Origin::Role(r.clone()), r)?),
            QueryAtom::ConcreteRole(t, w, u) => {
                Atom::Mem3(term(w)?, term(u)?, v3(Var3Origin::ConcreteRole(t.clone()), t)?)
            }
            QueryAtom::Eq(a, b_) => Atom::Eq(term(a)?, term(b_)?),
        };
        literals.push(Literal { positive: lit.positive, atom });
    }
    Ok(PsiQ { vars: names, literals })
}

/// A level-0 substitution `{x_v / x_o}`, keyed by query variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSubstitution(pub BTreeMap<Name, V0>);

pub fn theta_substitution(sigma: &DlSubstitution, vars: &VarTable) -> Result<GroundSubstitution, TranslateError> {
    let mut out = BTreeMap::new();
    for (v, o) in &sigma.0 {
        let x = match o {
            DlValue::Individual(a) => individual(a, vars)?,
            DlValue::Constant(e) => constant(e, vars)?,
        };
        out.insert(v.clone(), x);
    }
    Ok(GroundSubstitution(out))
}
