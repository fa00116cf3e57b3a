//! Text front end for knowledge bases (`.dlkb`) and conjunctive queries
//! (`.dlq`).
//!
//! The grammar is keyword-led and parsed by recursive descent. Terms are first
//! read into an untyped expression tree and then converted to concepts, roles,
//! concrete roles or datatype terms according to the declared kind of the
//! names they mention.

mod lexer;

use crate::error::ParseError;
use crate::model::*;
use lexer::{span, tokenize, Pos, Tok, Token};

pub use lexer::RESERVED_PREFIX;

const KEYWORDS: &[&str] = &[
    "signature",
    "concept",
    "arole",
    "crole",
    "individual",
    "datatype",
    "constants",
    "facets",
    "axiom",
    "assert",
    "equiv",
    "sub",
    "and",
    "or",
    "not",
    "inv",
    "id",
    "prod",
    "some",
    "all",
    "atleast",
    "atmost",
    "self",
    "top",
    "bottom",
    "U",
    "Ref",
    "Irref",
    "Sym",
    "Asym",
    "Tra",
    "Dis",
    "Fun",
    "facet",
];

pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    parse_kb_named("<input>", text)
}

pub fn parse_kb_named(file: &str, text: &str) -> Result<KnowledgeBase, ParseError> {
    let toks = tokenize(file, text)?;
    let mut p = Parser { file, toks, i: 0, sig: Signature::default() };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        if p.eat_kw("signature") {
            p.expect(Tok::LBrace)?;
            while !p.eat(&Tok::RBrace) {
                if !p.declaration()? {
                    return Err(p.error_here(
                        "expected a declaration",
                        &["concept", "arole", "crole", "individual", "datatype", "`}`"],
                    ));
                }
            }
        } else if p.declaration()? {
        } else if p.eat_kw("axiom") {
            stmts.push(p.axiom()?);
            p.expect(Tok::Dot)?;
        } else if p.eat_kw("assert") {
            stmts.push(p.assertion()?);
            p.expect(Tok::Dot)?;
        } else {
            return Err(
                p.error_here("expected a declaration or statement", &["signature", "concept", "axiom", "assert"])
            );
        }
    }
    let mut kb = KnowledgeBase::new(p.sig);
    for s in stmts {
        kb.push(s);
    }
    Ok(kb)
}

pub fn parse_query(text: &str, sig: &Signature) -> Result<Query, ParseError> {
    parse_query_named("<query>", text, sig)
}

pub fn parse_query_named(file: &str, text: &str, sig: &Signature) -> Result<Query, ParseError> {
    let toks = tokenize(file, text)?;
    let mut p = Parser { file, toks, i: 0, sig: sig.clone() };
    let mut literals = Vec::new();
    if p.peek() != &Tok::Eof {
        loop {
            literals.push(p.query_literal()?);
            if !p.eat_kw("and") {
                break;
            }
        }
    }
    p.eat(&Tok::Dot);
    if p.peek() != &Tok::Eof {
        return Err(p.error_here("unexpected input after query", &["and", "end of input"]));
    }
    Ok(Query { literals })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    Concept,
    Role,
    CRole,
    Data,
}

#[derive(Clone, Debug)]
enum Expr {
    Name(Name, Pos),
    Top(Pos),
    Bottom(Pos),
    Univ(Pos),
    Not(Box<Expr>, Pos),
    Inv(Box<Expr>, Pos),
    And(Box<Expr>, Box<Expr>, Pos),
    Or(Box<Expr>, Box<Expr>, Pos),
    Id(Box<Expr>, Pos),
    Prod(Box<Expr>, Box<Expr>, Pos),
    SelfR(Box<Expr>, Pos),
    SomeValue(Box<Expr>, Name, Pos),
    Some(Box<Expr>, Box<Expr>, Pos),
    All(Box<Expr>, Box<Expr>, Pos),
    AtLeast(u32, Box<Expr>, Box<Expr>, Pos),
    AtMost(u32, Box<Expr>, Box<Expr>, Pos),
    Set(Vec<(Name, Pos)>, Pos),
    Restr(Box<Expr>, Option<Box<Expr>>, Option<Box<Expr>>, Pos),
    Facet(Name, FacetCnf, Pos),
}

impl Expr {
    fn pos(&self) -> Pos {
        match self {
            Expr::Name(_, p)
            | Expr::Top(p)
            | Expr::Bottom(p)
            | Expr::Univ(p)
            | Expr::Not(_, p)
            | Expr::Inv(_, p)
            | Expr::And(_, _, p)
            | Expr::Or(_, _, p)
            | Expr::Id(_, p)
            | Expr::Prod(_, _, p)
            | Expr::SelfR(_, p)
            | Expr::SomeValue(_, _, p)
            | Expr::Some(_, _, p)
            | Expr::All(_, _, p)
            | Expr::AtLeast(_, _, _, p)
            | Expr::AtMost(_, _, _, p)
            | Expr::Set(_, p)
            | Expr::Restr(_, _, _, p)
            | Expr::Facet(_, _, p) => *p,
        }
    }
}

struct Parser<'a> {
    file: &'a str,
    toks: Vec<Token>,
    i: usize,
    sig: Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let j = (self.i + n).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn is_kw_at(&self, n: usize, kw: &str) -> bool {
        matches!(self.peek_at(n), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, pos: Pos, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            span: span(self.file, pos),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn error_here(&self, message: &str, expected: &[&str]) -> ParseError {
        let found = self.peek().describe();
        self.error_at(self.pos(), format!("{message}, found {found}"), expected)
    }

    fn expect(&mut self, t: Tok) -> Result<Token, ParseError> {
        if self.peek() == &t {
            Ok(self.bump())
        } else {
            let d = t.describe();
            Err(self.error_here(&format!("expected {d}"), &[&d]))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.error_here(&format!("expected `{kw}`"), &[kw]))
        }
    }

    /// A non-keyword identifier.
    fn ident(&mut self) -> Result<(Name, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let t = self.bump();
                Ok((Name::new(&s), t.pos))
            }
            _ => Err(self.error_here("expected a name", &["name"])),
        }
    }

    fn kind_of(&self, name: &Name, pos: Pos) -> Result<NameKind, ParseError> {
        self.sig.kind_of(name).ok_or_else(|| self.error_at(pos, format!("undeclared name `{name}`"), &[]))
    }

    fn name_list(&mut self) -> Result<Vec<(Name, Pos)>, ParseError> {
        let mut out = vec![self.ident()?];
        while self.eat(&Tok::Comma) {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn fresh(&self, name: &Name, pos: Pos, kind: NameKind) -> Result<(), ParseError> {
        match self.sig.kind_of(name) {
            Some(k) if k != kind => Err(self.error_at(pos, format!("`{name}` is already declared as a {k}"), &[])),
            _ => Ok(()),
        }
    }

    fn declaration(&mut self) -> Result<bool, ParseError> {
        let kind = match self.peek() {
            Tok::Ident(s) => match s.as_str() {
                "concept" => NameKind::Concept,
                "arole" => NameKind::Role,
                "crole" => NameKind::ConcreteRole,
                "individual" => NameKind::Individual,
                "datatype" => NameKind::Datatype,
                _ => return Ok(false),
            },
            _ => return Ok(false),
        };
        self.bump();
        if kind == NameKind::Datatype {
            let (d, dpos) = self.ident()?;
            self.fresh(&d, dpos, NameKind::Datatype)?;
            self.sig.declare(NameKind::Datatype, d.clone());
            if self.eat(&Tok::LBrace) {
                while !self.eat(&Tok::RBrace) {
                    let sub = if self.eat_kw("constants") {
                        NameKind::Constant
                    } else if self.eat_kw("facets") {
                        NameKind::Facet
                    } else {
                        return Err(
                            self.error_here("expected `constants` or `facets`", &["constants", "facets", "`}`"])
                        );
                    };
                    for (n, pos) in self.name_list()? {
                        self.fresh(&n, pos, sub)?;
                        if let Some(other) = self.sig.datatype_of_constant(&n) {
                            if other != &d {
                                return Err(self.error_at(
                                    pos,
                                    format!("`{n}` already belongs to datatype `{other}`"),
                                    &[],
                                ));
                            }
                        }
                        if sub == NameKind::Facet
                            && self.sig.datatypes.iter().any(|(o, decl)| o != &d && decl.facets.contains(&n))
                        {
                            return Err(self.error_at(
                                pos,
                                format!("facet `{n}` already belongs to another datatype"),
                                &[],
                            ));
                        }
                        let decl = self.sig.datatypes.get_mut(&d).expect("declared above");
                        let list = if sub == NameKind::Constant { &mut decl.constants } else { &mut decl.facets };
                        if !list.contains(&n) {
                            list.push(n);
                        }
                    }
                    self.expect(Tok::Semi)?;
                }
                self.eat(&Tok::Dot);
            } else {
                self.expect(Tok::Dot)?;
            }
            return Ok(true);
        }
        for (n, pos) in self.name_list()? {
            self.fresh(&n, pos, kind)?;
            self.sig.declare(kind, n);
        }
        self.expect(Tok::Dot)?;
        Ok(true)
    }

    fn can_start_expr(&self) -> bool {
        match self.peek() {
            Tok::LParen | Tok::LBrace => true,
            Tok::Ident(s) => {
                !KEYWORDS.contains(&s.as_str())
                    || matches!(
                        s.as_str(),
                        "not"
                            | "inv"
                            | "top"
                            | "bottom"
                            | "U"
                            | "id"
                            | "prod"
                            | "self"
                            | "some"
                            | "all"
                            | "atleast"
                            | "atmost"
                            | "facet"
                    )
            }
            _ => false,
        }
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.is_kw("or") {
            let pos = self.bump().pos;
            let rhs = self.and_expr()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.is_kw("and") {
            let pos = self.bump().pos;
            let rhs = self.unary()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat_kw("not") {
            return Ok(Expr::Not(Box::new(self.unary()?), pos));
        }
        if self.eat_kw("inv") {
            return Ok(Expr::Inv(Box::new(self.unary()?), pos));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while self.peek() == &Tok::LBracket {
            let pos = self.bump().pos;
            let left = if self.peek() == &Tok::Bar { None } else { Some(Box::new(self.or_expr()?)) };
            self.expect(Tok::Bar)?;
            let right = if self.peek() == &Tok::RBracket { None } else { Some(Box::new(self.or_expr()?)) };
            self.expect(Tok::RBracket)?;
            if left.is_none() && right.is_none() {
                return Err(self.error_at(pos, "empty role restriction", &[]));
            }
            e = Expr::Restr(Box::new(e), left, right, pos);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.or_expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrace => {
                self.bump();
                let names = self.name_list()?;
                self.expect(Tok::RBrace)?;
                Ok(Expr::Set(names, pos))
            }
            Tok::Ident(s) => match s.as_str() {
                "top" => {
                    self.bump();
                    Ok(Expr::Top(pos))
                }
                "bottom" => {
                    self.bump();
                    Ok(Expr::Bottom(pos))
                }
                "U" => {
                    self.bump();
                    Ok(Expr::Univ(pos))
                }
                "id" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let c = self.or_expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Id(Box::new(c), pos))
                }
                "prod" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let a = self.or_expr()?;
                    self.expect(Tok::Comma)?;
                    let b = self.or_expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Prod(Box::new(a), Box::new(b), pos))
                }
                "self" => {
                    self.bump();
                    Ok(Expr::SelfR(Box::new(self.unary()?), pos))
                }
                "some" => {
                    self.bump();
                    let r = self.unary()?;
                    if self.eat(&Tok::LBrace) {
                        let (o, _) = self.ident()?;
                        self.expect(Tok::RBrace)?;
                        Ok(Expr::SomeValue(Box::new(r), o, pos))
                    } else {
                        self.expect(Tok::Dot)?;
                        let f = self.unary()?;
                        Ok(Expr::Some(Box::new(r), Box::new(f), pos))
                    }
                }
                "all" => {
                    self.bump();
                    let r = self.unary()?;
                    self.expect(Tok::Dot)?;
                    let f = self.unary()?;
                    Ok(Expr::All(Box::new(r), Box::new(f), pos))
                }
                "atleast" | "atmost" => {
                    self.bump();
                    let n = match self.peek() {
                        Tok::Num(n) if *n >= 1 => *n,
                        Tok::Num(_) => return Err(self.error_here("cardinality must be at least 1", &[])),
                        _ => return Err(self.error_here("expected a number", &["number"])),
                    };
                    self.bump();
                    let r = self.unary()?;
                    self.expect(Tok::Dot)?;
                    let f = self.unary()?;
                    if s == "atleast" {
                        Ok(Expr::AtLeast(n, Box::new(r), Box::new(f), pos))
                    } else {
                        Ok(Expr::AtMost(n, Box::new(r), Box::new(f), pos))
                    }
                }
                "facet" => {
                    self.bump();
                    let (d, dpos) = self.ident()?;
                    if self.kind_of(&d, dpos)? != NameKind::Datatype {
                        return Err(self.error_at(dpos, format!("`{d}` is not a datatype"), &["datatype"]));
                    }
                    let cnf = self.facet_cnf(&d)?;
                    Ok(Expr::Facet(d, cnf, pos))
                }
                _ => {
                    let (n, pos) = self.ident()?;
                    Ok(Expr::Name(n, pos))
                }
            },
            _ => Err(self.error_here("expected a term", &["name", "`(`", "`{`", "not", "top"])),
        }
    }

    fn starts_facet_literal(&self, d: &Name, at: usize) -> bool {
        let is_base = |tok: &Tok| match tok {
            Tok::Ident(s) if s == "top" || s == "bottom" => true,
            Tok::Ident(s) => self.sig.datatypes.get(d).is_some_and(|decl| decl.facets.iter().any(|f| f.as_str() == s)),
            _ => false,
        };
        if self.is_kw_at(at, "not") {
            is_base(self.peek_at(at + 1))
        } else {
            is_base(self.peek_at(at))
        }
    }

    fn facet_literal(&mut self, d: &Name) -> Result<FacetLiteral, ParseError> {
        let positive = !self.eat_kw("not");
        if self.peek() == &Tok::LParen || self.is_kw("not") {
            return Err(self.error_here("facet expressions must be in conjunctive normal form", &[]));
        }
        let base = if self.eat_kw("top") {
            FacetBase::Top
        } else if self.eat_kw("bottom") {
            FacetBase::Bottom
        } else {
            let (f, pos) = self.ident()?;
            let ok = self.sig.datatypes.get(d).is_some_and(|decl| decl.facets.contains(&f));
            if !ok {
                return Err(match self.sig.kind_of(&f) {
                    None => self.error_at(pos, format!("undeclared name `{f}`"), &[]),
                    Some(_) => self.error_at(pos, format!("`{f}` is not a facet of `{d}`"), &["facet"]),
                });
            }
            FacetBase::Facet(f)
        };
        Ok(FacetLiteral { positive, base })
    }

    fn facet_clause(&mut self, d: &Name) -> Result<Vec<FacetLiteral>, ParseError> {
        if self.eat(&Tok::LParen) {
            let mut lits = vec![self.facet_literal(d)?];
            while self.eat_kw("or") {
                lits.push(self.facet_literal(d)?);
            }
            if self.is_kw("and") {
                return Err(self.error_here("facet expressions must be in conjunctive normal form", &[]));
            }
            self.expect(Tok::RParen)?;
            Ok(lits)
        } else {
            Ok(vec![self.facet_literal(d)?])
        }
    }

    fn facet_cnf(&mut self, d: &Name) -> Result<FacetCnf, ParseError> {
        let mut clauses = vec![self.facet_clause(d)?];
        loop {
            let continues = self.is_kw("and")
                && (self.starts_facet_literal(d, 1)
                    || (self.peek_at(1) == &Tok::LParen && self.starts_facet_literal(d, 2)));
            if !continues {
                break;
            }
            self.bump();
            clauses.push(self.facet_clause(d)?);
        }
        if self.is_kw("or") && self.starts_facet_literal(d, 1) {
            return Err(self.error_here("facet disjunctions must be parenthesized", &["`(`"]));
        }
        Ok(FacetCnf(clauses))
    }

    fn sort(&self, e: &Expr) -> Result<Option<Sort>, ParseError> {
        Ok(match e {
            Expr::Name(n, pos) => match self.kind_of(n, *pos)? {
                NameKind::Concept => Some(Sort::Concept),
                NameKind::Role => Some(Sort::Role),
                NameKind::ConcreteRole => Some(Sort::CRole),
                NameKind::Datatype | NameKind::DataName => Some(Sort::Data),
                _ => None,
            },
            Expr::Top(_)
            | Expr::Bottom(_)
            | Expr::SelfR(..)
            | Expr::SomeValue(..)
            | Expr::Some(..)
            | Expr::All(..)
            | Expr::AtLeast(..)
            | Expr::AtMost(..) => Some(Sort::Concept),
            Expr::Univ(_) | Expr::Id(..) | Expr::Prod(..) | Expr::Inv(..) => Some(Sort::Role),
            Expr::Facet(..) => Some(Sort::Data),
            Expr::Not(x, _) | Expr::Restr(x, _, _, _) => self.sort(x)?,
            Expr::And(a, b, _) | Expr::Or(a, b, _) => match self.sort(a)? {
                Some(s) => Some(s),
                None => self.sort(b)?,
            },
            Expr::Set(names, _) => match names.first() {
                Some((n, pos)) => match self.kind_of(n, *pos)? {
                    NameKind::Individual => Some(Sort::Concept),
                    NameKind::Constant => Some(Sort::Data),
                    _ => None,
                },
                None => None,
            },
        })
    }

    fn wrong(&self, e: &Expr, what: &str) -> ParseError {
        let found = match e {
            Expr::Name(n, _) => match self.sig.kind_of(n) {
                Some(k) => format!("{k} `{n}`"),
                None => format!("`{n}`"),
            },
            _ => "a term of another sort".to_string(),
        };
        self.error_at(e.pos(), format!("expected {what}, found {found}"), &[what])
    }

    fn individual(&self, n: &Name, pos: Pos) -> Result<Name, ParseError> {
        match self.kind_of(n, pos)? {
            NameKind::Individual => Ok(n.clone()),
            k => Err(self.error_at(pos, format!("expected an individual, found {k} `{n}`"), &["individual"])),
        }
    }

    fn constant(&self, n: &Name, pos: Pos) -> Result<Name, ParseError> {
        match self.kind_of(n, pos)? {
            NameKind::Constant => Ok(n.clone()),
            k => Err(self.error_at(pos, format!("expected a datatype constant, found {k} `{n}`"), &["constant"])),
        }
    }

    fn concept(&self, e: &Expr) -> Result<Concept, ParseError> {
        Ok(match e {
            Expr::Name(n, pos) => match self.kind_of(n, *pos)? {
                NameKind::Concept => Concept::Name(n.clone()),
                _ => return Err(self.wrong(e, "a concept")),
            },
            Expr::Top(_) => Concept::Top,
            Expr::Bottom(_) => Concept::Bottom,
            Expr::Not(x, _) => Concept::negation(self.concept(x)?),
            Expr::And(a, b, _) => Concept::and(self.concept(a)?, self.concept(b)?),
            Expr::Or(a, b, _) => Concept::union(self.concept(a)?, self.concept(b)?),
            Expr::Set(names, _) => {
                let inds = names.iter().map(|(n, p)| self.individual(n, *p)).collect::<Result<Vec<_>, _>>()?;
                if inds.len() == 1 {
                    Concept::Nominal(inds[0].clone())
                } else {
                    Concept::NominalSet(inds)
                }
            }
            Expr::SelfR(r, _) => Concept::SelfRestriction(Box::new(self.role(r)?)),
            Expr::SomeValue(r, o, pos) => {
                if self.sort(r)? == Some(Sort::CRole) {
                    Concept::DatatypedExists(Box::new(self.crole(r)?), self.constant(o, *pos)?)
                } else {
                    Concept::ValuedExists(Box::new(self.role(r)?), self.individual(o, *pos)?)
                }
            }
            Expr::Some(..) | Expr::All(..) | Expr::AtLeast(..) | Expr::AtMost(..) => {
                return Err(self.error_at(
                    e.pos(),
                    "quantified restrictions may only appear as a whole side of a subsumption axiom",
                    &[],
                ))
            }
            _ => return Err(self.wrong(e, "a concept")),
        })
    }

    fn role(&self, e: &Expr) -> Result<Role, ParseError> {
        Ok(match e {
            Expr::Name(n, pos) => match self.kind_of(n, *pos)? {
                NameKind::Role => Role::Name(n.clone()),
                _ => return Err(self.wrong(e, "an abstract role")),
            },
            Expr::Univ(_) => Role::Universal,
            Expr::Inv(x, _) => Role::Inverse(Box::new(self.role(x)?)),
            Expr::Not(x, _) => Role::Not(Box::new(self.role(x)?)),
            Expr::And(a, b, _) => Role::Intersection(Box::new(self.role(a)?), Box::new(self.role(b)?)),
            Expr::Or(a, b, _) => Role::Union(Box::new(self.role(a)?), Box::new(self.role(b)?)),
            Expr::Id(c, _) => Role::Id(Box::new(self.concept(c)?)),
            Expr::Prod(a, b, _) => Role::Product(Box::new(self.concept(a)?), Box::new(self.concept(b)?)),
            Expr::Restr(base, left, right, _) => {
                let r = Box::new(self.role(base)?);
                match (left, right) {
                    (Some(c), None) => Role::DomainRestr(r, Box::new(self.concept(c)?)),
                    (None, Some(c)) => Role::RangeRestr(r, Box::new(self.concept(c)?)),
                    (Some(c1), Some(c2)) => Role::Restr(r, Box::new(self.concept(c1)?), Box::new(self.concept(c2)?)),
                    (None, None) => unreachable!("rejected while parsing"),
                }
            }
            _ => return Err(self.wrong(e, "an abstract role")),
        })
    }

    fn crole(&self, e: &Expr) -> Result<ConcreteRole, ParseError> {
        Ok(match e {
            Expr::Name(n, pos) => match self.kind_of(n, *pos)? {
                NameKind::ConcreteRole => ConcreteRole::Name(n.clone()),
                _ => return Err(self.wrong(e, "a concrete role")),
            },
            Expr::Not(x, _) => ConcreteRole::Not(Box::new(self.crole(x)?)),
            Expr::And(a, b, _) => ConcreteRole::Intersection(Box::new(self.crole(a)?), Box::new(self.crole(b)?)),
            Expr::Or(a, b, _) => ConcreteRole::Union(Box::new(self.crole(a)?), Box::new(self.crole(b)?)),
            Expr::Restr(base, left, right, _) => {
                let p = Box::new(self.crole(base)?);
                match (left, right) {
                    (Some(c), None) => ConcreteRole::DomainRestr(p, Box::new(self.concept(c)?)),
                    (None, Some(t)) => ConcreteRole::RangeRestr(p, Box::new(self.data(t)?)),
                    (Some(c), Some(t)) => ConcreteRole::Restr(p, Box::new(self.concept(c)?), Box::new(self.data(t)?)),
                    (None, None) => unreachable!("rejected while parsing"),
                }
            }
            _ => return Err(self.wrong(e, "a concrete role")),
        })
    }

    fn data(&self, e: &Expr) -> Result<DataTerm, ParseError> {
        Ok(match e {
            Expr::Name(n, pos) => match self.kind_of(n, *pos)? {
                NameKind::Datatype => DataTerm::Datatype(n.clone()),
                NameKind::DataName => DataTerm::Named(n.clone()),
                _ => return Err(self.wrong(e, "a datatype term")),
            },
            Expr::Not(x, _) => DataTerm::Not(Box::new(self.data(x)?)),
            Expr::And(a, b, _) => DataTerm::Intersection(Box::new(self.data(a)?), Box::new(self.data(b)?)),
            Expr::Or(a, b, _) => DataTerm::Union(Box::new(self.data(a)?), Box::new(self.data(b)?)),
            Expr::Set(names, _) => {
                let cs = names.iter().map(|(n, p)| self.constant(n, *p)).collect::<Result<Vec<_>, _>>()?;
                if cs.len() == 1 {
                    DataTerm::Singleton(cs[0].clone())
                } else {
                    DataTerm::Enumeration(cs)
                }
            }
            Expr::Facet(d, cnf, _) => DataTerm::FacetExpr(d.clone(), cnf.clone()),
            _ => return Err(self.wrong(e, "a datatype term")),
        })
    }

    fn axiom(&mut self) -> Result<Statement, ParseError> {
        for kw in ["Ref", "Irref", "Sym", "Asym", "Tra", "Fun", "Dis"] {
            if self.eat_kw(kw) {
                self.expect(Tok::LParen)?;
                let a = self.or_expr()?;
                let b = if kw == "Dis" {
                    self.expect(Tok::Comma)?;
                    Some(self.or_expr()?)
                } else {
                    None
                };
                self.expect(Tok::RParen)?;
                let concrete = self.sort(&a)? == Some(Sort::CRole);
                return Ok(match (kw, concrete) {
                    ("Fun", true) => Statement::CRoleFun(self.crole(&a)?),
                    ("Dis", true) => Statement::CRoleDis(self.crole(&a)?, self.crole(b.as_ref().unwrap())?),
                    ("Dis", false) => Statement::Dis(self.role(&a)?, self.role(b.as_ref().unwrap())?),
                    ("Fun", false) => Statement::Fun(self.role(&a)?),
                    ("Ref", _) => Statement::Ref(self.role(&a)?),
                    ("Irref", _) => Statement::Irref(self.role(&a)?),
                    ("Sym", _) => Statement::Sym(self.role(&a)?),
                    ("Asym", _) => Statement::Asym(self.role(&a)?),
                    _ => Statement::Tra(self.role(&a)?),
                });
            }
        }

        let mut lhs = vec![self.or_expr()?];
        while !self.is_kw("equiv") && !self.is_kw("sub") {
            if !self.can_start_expr() {
                return Err(self.error_here("expected `equiv` or `sub`", &["equiv", "sub"]));
            }
            lhs.push(self.or_expr()?);
        }
        let op_pos = self.pos();
        let equiv = self.eat_kw("equiv");
        if !equiv {
            self.expect_kw("sub")?;
        }
        let rhs = self.or_expr()?;

        if lhs.len() > 1 {
            if equiv {
                return Err(self.error_at(op_pos, "role chains only support `sub`", &["sub"]));
            }
            let chain = lhs.iter().map(|e| self.role(e)).collect::<Result<Vec<_>, _>>()?;
            return Ok(Statement::RoleChain(chain, self.role(&rhs)?));
        }
        let lhs = lhs.pop().unwrap();

        if !equiv {
            match &lhs {
                Expr::Some(r, f, _) => {
                    let sup = self.concept(&rhs)?;
                    return Ok(if self.sort(r)? == Some(Sort::CRole) {
                        Statement::ExistsDataSub { role: self.crole(r)?, range: self.data(f)?, sup }
                    } else {
                        Statement::ExistsSub { role: self.role(r)?, filler: self.concept(f)?, sup }
                    });
                }
                Expr::AtLeast(n, r, f, _) => {
                    let sup = self.concept(&rhs)?;
                    return Ok(if self.sort(r)? == Some(Sort::CRole) {
                        Statement::AtLeastDataSub { n: *n, role: self.crole(r)?, range: self.data(f)?, sup }
                    } else {
                        Statement::AtLeastSub { n: *n, role: self.role(r)?, filler: self.concept(f)?, sup }
                    });
                }
                _ => {}
            }
            match &rhs {
                Expr::All(r, f, _) => {
                    let sub = self.concept(&lhs)?;
                    return Ok(if self.sort(r)? == Some(Sort::CRole) {
                        Statement::SubAllData { sub, role: self.crole(r)?, range: self.data(f)? }
                    } else {
                        Statement::SubAll { sub, role: self.role(r)?, filler: self.concept(f)? }
                    });
                }
                Expr::AtMost(n, r, f, _) => {
                    let sub = self.concept(&lhs)?;
                    return Ok(if self.sort(r)? == Some(Sort::CRole) {
                        Statement::SubAtMostData { sub, n: *n, role: self.crole(r)?, range: self.data(f)? }
                    } else {
                        Statement::SubAtMost { sub, n: *n, role: self.role(r)?, filler: self.concept(f)? }
                    });
                }
                _ => {}
            }
        }

        let sort = match self.sort(&lhs)? {
            Some(s) => s,
            None => match self.sort(&rhs)? {
                Some(s) => s,
                None => return Err(self.wrong(&lhs, "a concept, role or datatype term")),
            },
        };
        Ok(match (sort, equiv) {
            (Sort::Concept, true) => Statement::ConceptEquiv(self.concept(&lhs)?, self.concept(&rhs)?),
            (Sort::Concept, false) => Statement::ConceptSub(self.concept(&lhs)?, self.concept(&rhs)?),
            (Sort::Role, true) => Statement::RoleEquiv(self.role(&lhs)?, self.role(&rhs)?),
            (Sort::Role, false) => Statement::RoleSub(self.role(&lhs)?, self.role(&rhs)?),
            (Sort::CRole, true) => Statement::CRoleEquiv(self.crole(&lhs)?, self.crole(&rhs)?),
            (Sort::CRole, false) => Statement::CRoleSub(self.crole(&lhs)?, self.crole(&rhs)?),
            (Sort::Data, true) => Statement::DataEquiv(self.data(&lhs)?, self.data(&rhs)?),
            (Sort::Data, false) => Statement::DataSub(self.data(&lhs)?, self.data(&rhs)?),
        })
    }

    fn assertion(&mut self) -> Result<Statement, ParseError> {
        if self.eat(&Tok::LParen) {
            let (a, apos) = self.ident()?;
            let a = self.individual(&a, apos)?;
            self.expect(Tok::Comma)?;
            let (b, bpos) = self.ident()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Colon)?;
            let negated = self.eat_kw("not");
            let e = if negated { self.unary()? } else { self.or_expr()? };
            return Ok(match self.kind_of(&b, bpos)? {
                NameKind::Individual if negated => Statement::NegRoleAssert(a, b, self.role(&e)?),
                NameKind::Individual => Statement::RoleAssert(a, b, self.role(&e)?),
                NameKind::Constant if negated => Statement::NegCRoleAssert(a, b, self.crole(&e)?),
                NameKind::Constant => Statement::CRoleAssert(a, b, self.crole(&e)?),
                k => {
                    return Err(self.error_at(
                        bpos,
                        format!("expected an individual or constant, found {k} `{b}`"),
                        &[],
                    ))
                }
            });
        }
        let (a, apos) = self.ident()?;
        let kind = self.kind_of(&a, apos)?;
        if self.eat(&Tok::Colon) {
            let e = self.or_expr()?;
            return match kind {
                NameKind::Individual => Ok(Statement::ConceptAssert(a, self.concept(&e)?)),
                NameKind::Constant => Ok(Statement::DataAssert(a, self.data(&e)?)),
                k => Err(self.error_at(
                    apos,
                    format!("cannot assert membership of {k} `{a}`"),
                    &["individual", "constant"],
                )),
            };
        }
        let a = self.individual(&a, apos)?;
        let same = if self.eat(&Tok::Eq) {
            true
        } else if self.eat(&Tok::Neq) {
            false
        } else {
            return Err(self.error_here("expected `:`, `=` or `!=`", &["`:`", "`=`", "`!=`"]));
        };
        let (b, bpos) = self.ident()?;
        let b = self.individual(&b, bpos)?;
        Ok(if same { Statement::SameAs(a, b) } else { Statement::DifferentFrom(a, b) })
    }

    fn query_term(&mut self) -> Result<QueryTerm, ParseError> {
        if let Tok::Var(v) = self.peek().clone() {
            self.bump();
            return Ok(QueryTerm::Var(Name::new(&v)));
        }
        let (n, pos) = self.ident()?;
        match self.kind_of(&n, pos)? {
            NameKind::Individual => Ok(QueryTerm::Individual(n)),
            NameKind::Constant => Ok(QueryTerm::Constant(n)),
            k => Err(self.error_at(pos, format!("expected a variable, individual or constant, found {k} `{n}`"), &[])),
        }
    }

    fn query_literal(&mut self) -> Result<QueryLiteral, ParseError> {
        let mut positive = !self.eat_kw("not");
        let is_pred =
            matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str())) && self.peek_at(1) == &Tok::LParen;
        if is_pred {
            let (p, ppos) = self.ident()?;
            let kind = self.kind_of(&p, ppos)?;
            self.expect(Tok::LParen)?;
            let mut args = vec![self.query_term()?];
            while self.eat(&Tok::Comma) {
                args.push(self.query_term()?);
            }
            self.expect(Tok::RParen)?;
            let atom = match (kind, args.len()) {
                (NameKind::Concept, 1) => QueryAtom::Concept(p, args.pop().unwrap()),
                (NameKind::Role, 2) => {
                    let b = args.pop().unwrap();
                    QueryAtom::Role(p, args.pop().unwrap(), b)
                }
                (NameKind::ConcreteRole, 2) => {
                    let b = args.pop().unwrap();
                    QueryAtom::ConcreteRole(p, args.pop().unwrap(), b)
                }
                (NameKind::Concept | NameKind::Role | NameKind::ConcreteRole, n) => {
                    let want = if kind == NameKind::Concept { 1 } else { 2 };
                    return Err(self.error_at(
                        ppos,
                        format!("arity error: {kind} `{p}` takes {want} argument(s), got {n}"),
                        &[],
                    ));
                }
                (k, _) => return Err(self.error_at(ppos, format!("{k} `{p}` cannot be used as a predicate"), &[])),
            };
            return Ok(QueryLiteral { positive, atom });
        }
        let a = self.query_term()?;
        if self.eat(&Tok::Neq) {
            positive = !positive;
        } else {
            self.expect(Tok::Eq)?;
        }
        let b = self.query_term()?;
        Ok(QueryLiteral { positive, atom: QueryAtom::Eq(a, b) })
    }
}
