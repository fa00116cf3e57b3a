//! Every normalized statement shape with the formula transcribed from the
//! translation table. Formulae that are not printed in CNF are distributed
//! here.

#![allow(dead_code)]

use dlqs_core::normalize::NormalStatement;
use dlqs_core::parser::parse_kb;
use dlqs_core::translate::{
    alpha_equivalent, theta_statement, Atom, Formula, GroundLiteral, Literal, OpenLiteral, Term, TranslationMode,
    Universal, Var0Origin, Var1Origin, Var3Origin, VarTable, V0, V1, V3,
};
use dlqs_core::Name;

pub const SIG: &str = "concept A, B, C. arole R, S, T. crole P, Q, O. individual a, b. \
                   datatype d { constants e; facets f; } datatype d2 { } datatype d3 { }\n";

#[derive(Clone)]
pub enum F {
    L(OpenLiteral),
    And(Vec<F>),
    Or(Vec<F>),
}

pub fn cnf(f: &F) -> Vec<Vec<OpenLiteral>> {
    match f {
        F::L(l) => vec![vec![*l]],
        F::And(fs) => fs.iter().flat_map(cnf).collect(),
        F::Or(fs) => fs.iter().fold(vec![vec![]], |acc, g| {
            let gs = cnf(g);
            acc.iter()
                .flat_map(|c| {
                    gs.iter().map(move |d| {
                        let mut e = c.clone();
                        e.extend(d.iter().copied());
                        e
                    })
                })
                .collect()
        }),
    }
}

pub fn forall(q: u32, f: F) -> Formula {
    Formula { ground: vec![], universals: vec![Universal { bound: (0..q).collect(), matrix: cnf(&f) }] }
}

pub fn ground(l: GroundLiteral) -> Formula {
    Formula { ground: vec![vec![l]], universals: vec![] }
}

pub fn z(i: u32) -> Term {
    Term::Bound(i)
}

pub fn in1(t: Term, x: V1) -> F {
    F::L(Literal::pos(Atom::Mem1(t, x)))
}

pub fn in3(s: Term, t: Term, x: V3) -> F {
    F::L(Literal::pos(Atom::Mem3(s, t, x)))
}

pub fn eq(s: Term, t: Term) -> F {
    F::L(Literal::pos(Atom::Eq(s, t)))
}

pub fn not(f: F) -> F {
    match f {
        F::L(l) => F::L(l.complement()),
        _ => panic!("negation of a compound formula"),
    }
}

pub fn or(fs: Vec<F>) -> F {
    F::Or(fs)
}

pub fn and(fs: Vec<F>) -> F {
    F::And(fs)
}

pub struct Names<'a>(pub &'a VarTable);

impl Names<'_> {
    pub fn v1(&self, o: Var1Origin) -> V1 {
        self.0.get1(&o).unwrap_or_else(|| panic!("no level-1 variable for {o:?}"))
    }
    pub fn c(&self, n: &str) -> V1 {
        self.v1(Var1Origin::Concept(Name::new(n)))
    }
    pub fn t(&self, n: &str) -> V1 {
        self.v1(Var1Origin::Datatype(Name::new(n)))
    }
    pub fn r(&self, n: &str) -> V3 {
        self.0.get3(&Var3Origin::Role(Name::new(n))).unwrap()
    }
    pub fn p(&self, n: &str) -> V3 {
        self.0.get3(&Var3Origin::ConcreteRole(Name::new(n))).unwrap()
    }
    pub fn x(&self, n: &str) -> V0 {
        self.0
            .get0(&Var0Origin::Individual(Name::new(n)))
            .or_else(|| self.0.get0(&Var0Origin::Constant(Name::new(n))))
            .unwrap()
    }
    pub fn xt(&self, n: &str) -> Term {
        Term::Free(self.x(n))
    }
}

/// Pairwise equalities among `zs`.
pub fn pairwise(zs: &[Term]) -> Vec<F> {
    let mut out = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            out.push(eq(zs[i], zs[j]));
        }
    }
    out
}

/// `C1 ⊑ ≤n S.F`: `(∀z)(∀z1)…(∀z_{n+1})(¬C1(z) ∨ ⋀ᵢ(¬F(zᵢ) ∨ ¬S(z,zᵢ) ∨ ⋁_{i<j} zᵢ=zⱼ))`.
pub fn at_most(n: u32, c1: V1, s: V3, fill: V1) -> Formula {
    let zs: Vec<Term> = (1..=n + 1).map(z).collect();
    let inner = zs
        .iter()
        .map(|&zi| {
            let mut d = vec![not(in1(zi, fill)), not(in3(z(0), zi, s))];
            d.extend(pairwise(&zs));
            or(d)
        })
        .collect();
    forall(n + 2, or(vec![not(in1(z(0), c1)), and(inner)]))
}

/// `≥n S.F ⊑ C2`: `(∀z)(∀z1)…(∀z_n)(⋀ᵢ((¬F(zᵢ) ∨ ¬S(z,zᵢ)) ∨ ⋁_{i<j} zᵢ=zⱼ) ∨ C2(z))`.
pub fn at_least(n: u32, s: V3, fill: V1, c2: V1) -> Formula {
    let zs: Vec<Term> = (1..=n).map(z).collect();
    let inner = zs
        .iter()
        .map(|&zi| {
            let mut d = vec![or(vec![not(in1(zi, fill)), not(in3(z(0), zi, s))])];
            d.extend(pairwise(&zs));
            or(d)
        })
        .collect();
    forall(n + 1, or(vec![and(inner), in1(z(0), c2)]))
}

pub type Expected = fn(&Names) -> Formula;

pub fn cases() -> Vec<(&'static str, &'static str, Expected)> {
    vec![
        ("concept_top", "axiom A equiv top.", |v| {
            let (c1, top) = (v.c("A"), v.v1(Var1Origin::Top));
            forall(
                1,
                and(vec![or(vec![not(in1(z(0), c1)), in1(z(0), top)]), or(vec![not(in1(z(0), top)), in1(z(0), c1)])]),
            )
        }),
        ("concept_not", "axiom A equiv not B.", |v| {
            let (c1, c2) = (v.c("A"), v.c("B"));
            forall(
                1,
                and(vec![or(vec![not(in1(z(0), c1)), not(in1(z(0), c2))]), or(vec![in1(z(0), c2), in1(z(0), c1)])]),
            )
        }),
        ("concept_or", "axiom A equiv B or C.", |v| {
            let (c1, c2, c3) = (v.c("A"), v.c("B"), v.c("C"));
            forall(
                1,
                and(vec![
                    or(vec![not(in1(z(0), c1)), or(vec![in1(z(0), c2), in1(z(0), c3)])]),
                    and(vec![or(vec![not(in1(z(0), c2)), in1(z(0), c1)]), or(vec![not(in1(z(0), c3)), in1(z(0), c1)])]),
                ]),
            )
        }),
        ("concept_nominal", "axiom A equiv {a}.", |v| {
            let (c1, xa) = (v.c("A"), v.xt("a"));
            forall(1, and(vec![or(vec![not(in1(z(0), c1)), eq(z(0), xa)]), or(vec![not(eq(z(0), xa)), in1(z(0), c1)])]))
        }),
        ("concept_sub_all", "axiom A sub all R . B.", |v| {
            let (c1, r1, c2) = (v.c("A"), v.r("R"), v.c("B"));
            forall(2, or(vec![not(in1(z(0), c1)), or(vec![not(in3(z(0), z(1), r1)), in1(z(1), c2)])]))
        }),
        ("exists_sub", "axiom some R . A sub B.", |v| {
            let (r1, c1, c2) = (v.r("R"), v.c("A"), v.c("B"));
            forall(2, or(vec![or(vec![not(in3(z(0), z(1), r1)), not(in1(z(1), c1))]), in1(z(0), c2)]))
        }),
        ("concept_has_value", "axiom A equiv some R {a}.", |v| {
            let (c1, r1, xa) = (v.c("A"), v.r("R"), v.xt("a"));
            forall(
                1,
                and(vec![
                    or(vec![not(in1(z(0), c1)), in3(z(0), xa, r1)]),
                    or(vec![not(in3(z(0), xa, r1)), in1(z(0), c1)]),
                ]),
            )
        }),
        ("at_most_1", "axiom A sub atmost 1 R . B.", |v| at_most(1, v.c("A"), v.r("R"), v.c("B"))),
        ("at_most_2", "axiom A sub atmost 2 R . B.", |v| at_most(2, v.c("A"), v.r("R"), v.c("B"))),
        ("at_least_1", "axiom atleast 1 R . A sub B.", |v| at_least(1, v.r("R"), v.c("A"), v.c("B"))),
        ("at_least_2", "axiom atleast 2 R . A sub B.", |v| at_least(2, v.r("R"), v.c("A"), v.c("B"))),
        ("concept_sub_all_data", "axiom A sub all P . d.", |v| {
            let (c1, p1, t1) = (v.c("A"), v.p("P"), v.t("d"));
            forall(2, or(vec![not(in1(z(0), c1)), or(vec![not(in3(z(0), z(1), p1)), in1(z(1), t1)])]))
        }),
        ("exists_data_sub", "axiom some P . d sub A.", |v| {
            let (p1, t1, c1) = (v.p("P"), v.t("d"), v.c("A"));
            forall(2, or(vec![or(vec![not(in3(z(0), z(1), p1)), not(in1(z(1), t1))]), in1(z(0), c1)]))
        }),
        ("concept_data_value", "axiom A equiv some P {e}.", |v| {
            let (c1, p1, xe) = (v.c("A"), v.p("P"), v.xt("e"));
            forall(
                1,
                and(vec![
                    or(vec![not(in1(z(0), c1)), in3(z(0), xe, p1)]),
                    or(vec![not(in3(z(0), xe, p1)), in1(z(0), c1)]),
                ]),
            )
        }),
        ("at_most_data_1", "axiom A sub atmost 1 P . d.", |v| at_most(1, v.c("A"), v.p("P"), v.t("d"))),
        ("at_most_data_2", "axiom A sub atmost 2 P . d.", |v| at_most(2, v.c("A"), v.p("P"), v.t("d"))),
        ("at_least_data_1", "axiom atleast 1 P . d sub A.", |v| at_least(1, v.p("P"), v.t("d"), v.c("A"))),
        ("at_least_data_2", "axiom atleast 2 P . d sub A.", |v| at_least(2, v.p("P"), v.t("d"), v.c("A"))),
        ("role_universal", "axiom R equiv U.", |v| {
            let (r1, u) = (v.r("R"), v.0.get3(&Var3Origin::Universal).unwrap());
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), r1)), in3(z(0), z(1), u)]),
                    or(vec![not(in3(z(0), z(1), u)), in3(z(0), z(1), r1)]),
                ]),
            )
        }),
        ("role_not", "axiom R equiv not S.", |v| {
            let (r1, r2) = (v.r("R"), v.r("S"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), r1)), not(in3(z(0), z(1), r2))]),
                    or(vec![in3(z(0), z(1), r2), not(in3(z(0), z(1), r1))]),
                ]),
            )
        }),
        ("role_product", "axiom R equiv prod(A, B).", |v| {
            let (r, c1, c2) = (v.r("R"), v.c("A"), v.c("B"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), r)), in1(z(0), c1)]),
                    or(vec![not(in3(z(0), z(1), r)), in1(z(1), c2)]),
                    or(vec![or(vec![not(in1(z(0), c1)), not(in1(z(1), c2))]), in3(z(0), z(1), r)]),
                ]),
            )
        }),
        ("role_or", "axiom R equiv S or T.", |v| {
            let (r1, r2, r3) = (v.r("R"), v.r("S"), v.r("T"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), r1)), or(vec![in3(z(0), z(1), r2), in3(z(0), z(1), r3)])]),
                    and(vec![
                        or(vec![not(in3(z(0), z(1), r2)), in3(z(0), z(1), r1)]),
                        or(vec![not(in3(z(0), z(1), r3)), in3(z(0), z(1), r1)]),
                    ]),
                ]),
            )
        }),
        ("role_inverse", "axiom R equiv inv S.", |v| {
            let (r1, r2) = (v.r("R"), v.r("S"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), r1)), in3(z(1), z(0), r2)]),
                    or(vec![not(in3(z(1), z(0), r2)), in3(z(0), z(1), r1)]),
                ]),
            )
        }),
        ("role_identity", "axiom R equiv id(A).", |v| {
            let (r1, c1) = (v.r("R"), v.c("A"));
            forall(
                2,
                and(vec![
                    and(vec![
                        or(vec![not(in3(z(0), z(1), r1)), in1(z(0), c1)]),
                        or(vec![not(in3(z(0), z(1), r1)), in1(z(1), c1)]),
                        or(vec![not(in3(z(0), z(1), r1)), eq(z(0), z(1))]),
                    ]),
                    or(vec![
                        or(vec![not(in1(z(0), c1)), not(in1(z(1), c1)), not(eq(z(0), z(1)))]),
                        in3(z(0), z(1), r1),
                    ]),
                ]),
            )
        }),
        ("role_domain", "axiom R equiv S[A|].", |v| {
            let (r1, r2, c1) = (v.r("R"), v.r("S"), v.c("A"));
            forall(
                2,
                and(vec![
                    and(vec![
                        or(vec![not(in3(z(0), z(1), r1)), in3(z(0), z(1), r2)]),
                        or(vec![not(in3(z(0), z(1), r1)), in1(z(0), c1)]),
                    ]),
                    or(vec![or(vec![not(in3(z(0), z(1), r2)), not(in1(z(0), c1))]), in3(z(0), z(1), r1)]),
                ]),
            )
        }),
        ("role_chain_2", "axiom R S sub T.", |v| {
            let (r1, r2, r3) = (v.r("R"), v.r("S"), v.r("T"));
            forall(3, or(vec![or(vec![not(in3(z(0), z(1), r1)), not(in3(z(1), z(2), r2))]), in3(z(0), z(2), r3)]))
        }),
        ("role_chain_3", "axiom R S R sub T.", |v| {
            let (r1, r2, r4) = (v.r("R"), v.r("S"), v.r("T"));
            forall(
                4,
                or(vec![
                    or(vec![not(in3(z(0), z(1), r1)), not(in3(z(1), z(2), r2)), not(in3(z(2), z(3), r1))]),
                    in3(z(0), z(3), r4),
                ]),
            )
        }),
        ("reflexive", "axiom Ref(R).", |v| forall(1, in3(z(0), z(0), v.r("R")))),
        ("irreflexive", "axiom Irref(R).", |v| forall(1, not(in3(z(0), z(0), v.r("R"))))),
        ("functional", "axiom Fun(R).", |v| {
            let r1 = v.r("R");
            forall(3, or(vec![or(vec![not(in3(z(0), z(1), r1)), not(in3(z(0), z(2), r1))]), eq(z(1), z(2))]))
        }),
        ("crole_equiv", "axiom P equiv Q.", |v| {
            let (p1, p2) = (v.p("P"), v.p("Q"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), p1)), in3(z(0), z(1), p2)]),
                    or(vec![not(in3(z(0), z(1), p2)), in3(z(0), z(1), p1)]),
                ]),
            )
        }),
        ("crole_not", "axiom P equiv not Q.", |v| {
            let (p1, p2) = (v.p("P"), v.p("Q"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), p1)), not(in3(z(0), z(1), p2))]),
                    or(vec![in3(z(0), z(1), p2), in3(z(0), z(1), p1)]),
                ]),
            )
        }),
        ("crole_sub", "axiom P sub Q.", |v| {
            let (p1, p2) = (v.p("P"), v.p("Q"));
            forall(2, or(vec![not(in3(z(0), z(1), p1)), in3(z(0), z(1), p2)]))
        }),
        ("crole_functional", "axiom Fun(P).", |v| {
            let p1 = v.p("P");
            forall(3, or(vec![not(in3(z(0), z(1), p1)), not(in3(z(0), z(2), p1)), eq(z(1), z(2))]))
        }),
        ("crole_domain", "axiom P equiv Q[A|].", |v| {
            let (p1, p2, c1) = (v.p("P"), v.p("Q"), v.c("A"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), p1)), in3(z(0), z(1), p2)]),
                    or(vec![not(in3(z(0), z(1), p1)), in1(z(0), c1)]),
                    or(vec![not(in3(z(0), z(1), p2)), not(in1(z(0), c1)), in3(z(0), z(1), p1)]),
                ]),
            )
        }),
        ("crole_range", "axiom P equiv Q[|d].", |v| {
            let (p1, p2, t1) = (v.p("P"), v.p("Q"), v.t("d"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), p1)), in3(z(0), z(1), p2)]),
                    or(vec![not(in3(z(0), z(1), p1)), in1(z(1), t1)]),
                    or(vec![or(vec![not(in3(z(0), z(1), p2)), not(in1(z(1), t1))]), in3(z(0), z(1), p1)]),
                ]),
            )
        }),
        ("crole_restriction", "axiom P equiv Q[A|d].", |v| {
            let (p1, p2, c1, t1) = (v.p("P"), v.p("Q"), v.c("A"), v.t("d"));
            forall(
                2,
                and(vec![
                    or(vec![not(in3(z(0), z(1), p1)), in3(z(0), z(1), p2)]),
                    or(vec![not(in3(z(0), z(1), p1)), in1(z(0), c1)]),
                    or(vec![not(in3(z(0), z(1), p1)), in1(z(1), t1)]),
                    or(vec![not(in3(z(0), z(1), p2)), not(in1(z(0), c1)), not(in1(z(1), t1)), in3(z(0), z(1), p1)]),
                ]),
            )
        }),
        ("data_equiv", "axiom d equiv d2.", |v| {
            let (t1, t2) = (v.t("d"), v.t("d2"));
            forall(
                1,
                and(vec![or(vec![not(in1(z(0), t1)), in1(z(0), t2)]), or(vec![not(in1(z(0), t2)), in1(z(0), t1)])]),
            )
        }),
        ("data_not", "axiom d equiv not d2.", |v| {
            let (t1, t2) = (v.t("d"), v.t("d2"));
            forall(
                1,
                and(vec![or(vec![not(in1(z(0), t1)), not(in1(z(0), t2))]), or(vec![in1(z(0), t2), in1(z(0), t1)])]),
            )
        }),
        ("data_or", "axiom d equiv d2 or d3.", |v| {
            let (t1, t2, t3) = (v.t("d"), v.t("d2"), v.t("d3"));
            forall(
                1,
                and(vec![
                    or(vec![not(in1(z(0), t1)), or(vec![in1(z(0), t2), in1(z(0), t3)])]),
                    and(vec![or(vec![not(in1(z(0), t2)), in1(z(0), t1)]), or(vec![not(in1(z(0), t3)), in1(z(0), t1)])]),
                ]),
            )
        }),
        ("data_and", "axiom d equiv d2 and d3.", |v| {
            let (t1, t2, t3) = (v.t("d"), v.t("d2"), v.t("d3"));
            forall(
                1,
                and(vec![
                    or(vec![not(in1(z(0), t1)), and(vec![in1(z(0), t2), in1(z(0), t3)])]),
                    or(vec![or(vec![not(in1(z(0), t2)), not(in1(z(0), t3))]), in1(z(0), t1)]),
                ]),
            )
        }),
        ("data_singleton", "axiom d equiv {e}.", |v| {
            let (t1, xe) = (v.t("d"), v.xt("e"));
            forall(1, and(vec![or(vec![not(in1(z(0), t1)), eq(z(0), xe)]), or(vec![not(eq(z(0), xe)), in1(z(0), t1)])]))
        }),
        ("concept_assertion", "assert a : A.", |v| ground(Literal::pos(Atom::Mem1(v.x("a"), v.c("A"))))),
        ("role_assertion", "assert (a, b) : R.", |v| ground(Literal::pos(Atom::Mem3(v.x("a"), v.x("b"), v.r("R"))))),
        ("negated_role_assertion", "assert (a, b) : not R.", |v| {
            ground(Literal::neg(Atom::Mem3(v.x("a"), v.x("b"), v.r("R"))))
        }),
        ("same_individual", "assert a = b.", |v| ground(Literal::pos(Atom::Eq(v.x("a"), v.x("b"))))),
        ("different_individuals", "assert a != b.", |v| ground(Literal::neg(Atom::Eq(v.x("a"), v.x("b"))))),
        ("data_assertion", "assert e : d.", |v| ground(Literal::pos(Atom::Mem1(v.x("e"), v.t("d"))))),
        ("crole_assertion", "assert (a, e) : P.", |v| ground(Literal::pos(Atom::Mem3(v.x("a"), v.x("e"), v.p("P"))))),
        ("negated_crole_assertion", "assert (a, e) : not P.", |v| {
            ground(Literal::neg(Atom::Mem3(v.x("a"), v.x("e"), v.p("P"))))
        }),
    ]
}

/// Translates every case in literal mode and returns the number of cases and
/// a description of each mismatch.
pub fn check_all() -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let all = cases();
    for (name, src, expected) in &all {
        let kb = parse_kb(&format!("{SIG}{src}")).unwrap_or_else(|e| panic!("{name}: {e}"));
        let s = kb.statements().next().unwrap();
        let Some(ns) = NormalStatement::from_statement(s) else {
            failures.push(format!("{name}: not a normalized shape"));
            continue;
        };
        let mut vars = VarTable::from_signature(&kb.signature);
        let got = theta_statement(&ns, &kb.signature, &mut vars, TranslationMode::Literal).unwrap();
        let want = expected(&Names(&vars));
        if !alpha_equivalent(&got, &want) {
            failures.push(format!("{name}:\n got  {got:?}\n want {want:?}"));
        }
    }
    (all.len(), failures)
}
