//! Seeded generators of small knowledge bases and conjunctive queries.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::*;

/// Size limits of generated knowledge bases.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub individuals: usize,
    pub concepts: usize,
    /// Abstract plus concrete roles.
    pub roles: usize,
    pub datatypes: usize,
    pub constants: usize,
    pub facets: usize,
    pub max_n: u32,
    pub statements: usize,
    /// Nesting depth of concept, role and data terms.
    pub depth: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            individuals: 3,
            concepts: 3,
            roles: 2,
            datatypes: 1,
            constants: 2,
            facets: 2,
            max_n: 2,
            statements: 4,
            depth: 1,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    sig: Signature,
    bounds: &'a Bounds,
}

fn names(prefix: &str, n: usize) -> Vec<Name> {
    (1..=n).map(|i| Name::new(&format!("{prefix}{i}"))).collect()
}

impl<R: Rng> Gen<'_, R> {
    fn pick(&mut self, v: &[Name]) -> Name {
        v.choose(self.rng).expect("non-empty").clone()
    }

    fn datatype(&mut self) -> Option<(Name, DatatypeDecl)> {
        let (d, decl) = self.sig.datatypes.iter().next()?;
        Some((d.clone(), decl.clone()))
    }

    fn constants(&self) -> Vec<Name> {
        self.sig.constants().cloned().collect()
    }

    fn concept(&mut self, depth: u32) -> Concept {
        let inds = self.sig.individuals.clone();
        let roles = self.sig.roles.clone();
        let croles = self.sig.concrete_roles.clone();
        let consts = self.constants();
        let k = if depth == 0 { self.rng.gen_range(0..10) } else { self.rng.gen_range(0..14) };
        match k {
            0..=4 => Concept::Name(self.pick(&self.sig.concepts.clone())),
            5 => Concept::Top,
            6 if !inds.is_empty() => Concept::Nominal(self.pick(&inds)),
            7 if inds.len() >= 2 => {
                let mut v: Vec<Name> = inds.choose_multiple(self.rng, 2).cloned().collect();
                v.sort();
                Concept::NominalSet(v)
            }
            8 if !roles.is_empty() && !inds.is_empty() => {
                Concept::ValuedExists(Box::new(self.role(0)), self.pick(&inds))
            }
            9 if !roles.is_empty() => Concept::SelfRestriction(Box::new(self.role(0))),
            9 if !croles.is_empty() && !consts.is_empty() => {
                Concept::DatatypedExists(Box::new(self.crole(0)), self.pick(&consts))
            }
            10 | 11 => Concept::negation(self.concept(depth - 1)),
            12 => Concept::union(self.concept(depth - 1), self.concept(depth - 1)),
            13 => Concept::and(self.concept(depth - 1), self.concept(depth - 1)),
            _ => Concept::Name(self.pick(&self.sig.concepts.clone())),
        }
    }

    fn role(&mut self, depth: u32) -> Role {
        let roles = self.sig.roles.clone();
        let k = if depth == 0 { 0 } else { self.rng.gen_range(0..12) };
        let b = |r: Role| Box::new(r);
        match k {
            0..=3 => Role::Name(self.pick(&roles)),
            4 => Role::Inverse(b(self.role(depth - 1))),
            5 => Role::Not(b(self.role(depth - 1))),
            6 => Role::Union(b(self.role(depth - 1)), b(self.role(depth - 1))),
            7 => Role::Intersection(b(self.role(depth - 1)), b(self.role(depth - 1))),
            8 => Role::DomainRestr(b(self.role(depth - 1)), Box::new(self.concept(0))),
            9 => Role::RangeRestr(b(self.role(depth - 1)), Box::new(self.concept(0))),
            10 => Role::Id(Box::new(self.concept(0))),
            _ => Role::Product(Box::new(self.concept(0)), Box::new(self.concept(0))),
        }
    }

    fn crole(&mut self, depth: u32) -> ConcreteRole {
        let croles = self.sig.concrete_roles.clone();
        let k = if depth == 0 { 0 } else { self.rng.gen_range(0..10) };
        let b = |p: ConcreteRole| Box::new(p);
        match k {
            0..=3 => ConcreteRole::Name(self.pick(&croles)),
            4 => ConcreteRole::Not(b(self.crole(depth - 1))),
            5 => ConcreteRole::Union(b(self.crole(depth - 1)), b(self.crole(depth - 1))),
            6 => ConcreteRole::Intersection(b(self.crole(depth - 1)), b(self.crole(depth - 1))),
            7 => ConcreteRole::DomainRestr(b(self.crole(depth - 1)), Box::new(self.concept(0))),
            8 if self.datatype().is_some() => {
                ConcreteRole::RangeRestr(b(self.crole(depth - 1)), Box::new(self.data(0)))
            }
            _ => ConcreteRole::Name(self.pick(&croles)),
        }
    }

    fn facet_cnf(&mut self, decl: &DatatypeDecl) -> FacetCnf {
        let n = self.rng.gen_range(1..=2);
        let clauses = (0..n)
            .map(|_| {
                let m = self.rng.gen_range(1..=2);
                (0..m)
                    .map(|_| {
                        let base = match self.rng.gen_range(0..6) {
                            0 => FacetBase::Top,
                            1 => FacetBase::Bottom,
                            _ if !decl.facets.is_empty() => FacetBase::Facet(self.pick(&decl.facets)),
                            _ => FacetBase::Top,
                        };
                        FacetLiteral { positive: self.rng.gen_bool(0.6), base }
                    })
                    .collect()
            })
            .collect();
        FacetCnf(clauses)
    }

    fn data(&mut self, depth: u32) -> DataTerm {
        let (d, decl) = self.datatype().expect("data terms need a datatype");
        let k = if depth == 0 { self.rng.gen_range(0..6) } else { self.rng.gen_range(0..9) };
        match k {
            0 | 1 => DataTerm::Datatype(d),
            2 if !decl.facets.is_empty() => {
                let f = self.pick(&decl.facets);
                DataTerm::FacetExpr(d, FacetCnf(vec![vec![FacetLiteral { positive: true, base: FacetBase::Facet(f) }]]))
            }
            3 => DataTerm::FacetExpr(d.clone(), self.facet_cnf(&decl)),
            4 if !decl.constants.is_empty() => DataTerm::Singleton(self.pick(&decl.constants)),
            5 if decl.constants.len() >= 2 => DataTerm::Enumeration(decl.constants.clone()),
            6 => DataTerm::Not(Box::new(self.data(depth - 1))),
            7 => DataTerm::Union(Box::new(self.data(depth - 1)), Box::new(self.data(depth - 1))),
            8 => DataTerm::Intersection(Box::new(self.data(depth - 1)), Box::new(self.data(depth - 1))),
            _ => DataTerm::Datatype(d),
        }
    }

    fn n(&mut self) -> u32 {
        self.rng.gen_range(1..=self.bounds.max_n.max(1))
    }

    fn statement(&mut self) -> Option<Statement> {
        let depth = self.bounds.depth;
        let has_roles = !self.sig.roles.is_empty();
        let has_croles = !self.sig.concrete_roles.is_empty();
        let has_data = self.datatype().is_some();
        let inds = self.sig.individuals.clone();
        let consts = self.constants();
        let s = match self.rng.gen_range(0..30) {
            0 | 1 => Statement::ConceptEquiv(Concept::Name(self.pick(&self.sig.concepts.clone())), self.concept(depth)),
            2 | 3 => Statement::ConceptSub(self.concept(depth), self.concept(depth)),
            4 if has_roles => {
                Statement::SubAll { sub: self.concept(0), role: self.role(depth), filler: self.concept(0) }
            }
            5 if has_roles => {
                Statement::ExistsSub { role: self.role(depth), filler: self.concept(0), sup: self.concept(0) }
            }
            6 if has_roles => {
                Statement::AtLeastSub { n: self.n(), role: self.role(0), filler: self.concept(0), sup: self.concept(0) }
            }
            7 if has_roles => {
                Statement::SubAtMost { sub: self.concept(0), n: self.n(), role: self.role(0), filler: self.concept(0) }
            }
            8 if has_croles => {
                Statement::SubAllData { sub: self.concept(0), role: self.crole(depth), range: self.data(0) }
            }
            9 if has_croles => {
                Statement::ExistsDataSub { role: self.crole(depth), range: self.data(0), sup: self.concept(0) }
            }
            10 if has_croles => Statement::AtLeastDataSub {
                n: self.n(),
                role: self.crole(0),
                range: self.data(0),
                sup: self.concept(0),
            },
            11 if has_croles => {
                Statement::SubAtMostData { sub: self.concept(0), n: self.n(), role: self.crole(0), range: self.data(0) }
            }
            12 if has_data => Statement::DataSub(self.data(depth), self.data(depth)),
            13 if has_data => Statement::DataEquiv(self.data(0), self.data(depth)),
            14 if has_roles => {
                let r = self.role(0);
                Statement::RoleSub(self.role(depth), r)
            }
            15 if has_roles => {
                let r = self.role(0);
                Statement::RoleEquiv(r, self.role(depth))
            }
            16 if has_roles => {
                let chain = vec![self.role(0), self.role(0)];
                Statement::RoleChain(chain, self.role(0))
            }
            17 if has_roles => {
                let r = self.role(0);
                match self.rng.gen_range(0..7) {
                    0 => Statement::Sym(r),
                    1 => Statement::Asym(r),
                    2 => Statement::Ref(r),
                    3 => Statement::Irref(r),
                    4 => Statement::Tra(r),
                    5 => Statement::Fun(r),
                    _ => Statement::Dis(r, self.role(0)),
                }
            }
            18 if has_croles => match self.rng.gen_range(0..4) {
                0 => Statement::CRoleFun(self.crole(0)),
                1 => Statement::CRoleDis(self.crole(0), self.crole(0)),
                2 => Statement::CRoleSub(self.crole(depth), self.crole(0)),
                _ => Statement::CRoleEquiv(self.crole(0), self.crole(depth)),
            },
            19..=22 if !inds.is_empty() => Statement::ConceptAssert(self.pick(&inds), self.concept(depth)),
            23 | 24 if !inds.is_empty() && has_roles => {
                let (a, b, r) = (self.pick(&inds), self.pick(&inds), self.role(0));
                if self.rng.gen_bool(0.7) {
                    Statement::RoleAssert(a, b, r)
                } else {
                    Statement::NegRoleAssert(a, b, r)
                }
            }
            25 if inds.len() >= 2 => {
                let (a, b) = (self.pick(&inds), self.pick(&inds));
                if self.rng.gen_bool(0.4) {
                    Statement::SameAs(a, b)
                } else {
                    Statement::DifferentFrom(a, b)
                }
            }
            26 if !consts.is_empty() => Statement::DataAssert(self.pick(&consts), self.data(depth)),
            27 if !inds.is_empty() && has_croles && !consts.is_empty() => {
                let (a, e, p) = (self.pick(&inds), self.pick(&consts), self.crole(0));
                if self.rng.gen_bool(0.7) {
                    Statement::CRoleAssert(a, e, p)
                } else {
                    Statement::NegCRoleAssert(a, e, p)
                }
            }
            _ => return None,
        };
        Some(s)
    }
}

/// A random knowledge base within `bounds`: first a signature, then up to
/// `bounds.statements` statements over it.
pub fn random_kb<R: Rng>(rng: &mut R, bounds: &Bounds) -> KnowledgeBase {
    let mut sig = Signature {
        individuals: names("a", rng.gen_range(0..=bounds.individuals)),
        concepts: names("A", rng.gen_range(1..=bounds.concepts.max(1))),
        ..Signature::default()
    };
    let nroles = rng.gen_range(0..=bounds.roles);
    let nconcrete = if nroles > 0 && bounds.datatypes > 0 { rng.gen_range(0..=nroles) } else { 0 };
    sig.roles = names("R", nroles - nconcrete);
    sig.concrete_roles = names("P", nconcrete);
    if bounds.datatypes > 0 && (nconcrete > 0 || rng.gen_bool(0.3)) {
        let decl = DatatypeDecl {
            constants: names("e", rng.gen_range(0..=bounds.constants)),
            facets: names("f", rng.gen_range(0..=bounds.facets)),
        };
        sig.datatypes.insert(Name::new("d"), decl);
    }
    let mut g = Gen { rng, sig: sig.clone(), bounds };
    let mut kb = KnowledgeBase::new(sig);
    let target = g.rng.gen_range(1..=bounds.statements.max(1));
    let mut tries = 0;
    while kb.len() < target && tries < 100 {
        tries += 1;
        if let Some(s) = g.statement() {
            kb.push(s);
        }
    }
    kb
}

/// A random query over `sig` with at most `max_vars` variables and one to
/// three literals. Variables are used either abstractly or as data values.
pub fn random_query<R: Rng>(rng: &mut R, sig: &Signature, max_vars: usize) -> Query {
    let vars: Vec<Name> = ["x", "y"].iter().take(max_vars).map(|v| Name::new(v)).collect();
    let consts: Vec<Name> = sig.constants().cloned().collect();
    let data_var = !sig.concrete_roles.is_empty() && vars.len() == 2 && rng.gen_bool(0.3);
    let abstract_vars: Vec<Name> = if data_var { vars[..1].to_vec() } else { vars.clone() };
    let term = |rng: &mut R| -> QueryTerm {
        if !abstract_vars.is_empty() && (sig.individuals.is_empty() || rng.gen_bool(0.75)) {
            QueryTerm::Var(abstract_vars.choose(rng).unwrap().clone())
        } else if let Some(a) = sig.individuals.choose(rng) {
            QueryTerm::Individual(a.clone())
        } else {
            QueryTerm::Var(Name::new("x"))
        }
    };
    let data_term = |rng: &mut R| -> QueryTerm {
        if data_var && (consts.is_empty() || rng.gen_bool(0.7)) {
            QueryTerm::Var(vars[1].clone())
        } else {
            QueryTerm::Constant(consts.choose(rng).unwrap().clone())
        }
    };
    let n = rng.gen_range(1..=3);
    let mut literals = Vec::new();
    for _ in 0..n {
        let atom = match rng.gen_range(0..8) {
            0..=2 => QueryAtom::Concept(sig.concepts.choose(rng).unwrap().clone(), term(rng)),
            3 | 4 if !sig.roles.is_empty() => {
                QueryAtom::Role(sig.roles.choose(rng).unwrap().clone(), term(rng), term(rng))
            }
            5 | 6 if !sig.concrete_roles.is_empty() && (data_var || !consts.is_empty()) => {
                QueryAtom::ConcreteRole(sig.concrete_roles.choose(rng).unwrap().clone(), term(rng), data_term(rng))
            }
            7 => QueryAtom::Eq(term(rng), term(rng)),
            _ => QueryAtom::Concept(sig.concepts.choose(rng).unwrap().clone(), term(rng)),
        };
        literals.push(QueryLiteral { positive: rng.gen_bool(0.7), atom });
    }
    Query { literals }
}
