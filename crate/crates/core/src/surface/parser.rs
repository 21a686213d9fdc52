//! Recursive-descent parser for types, moded types, terms, natural-deduction
//! proofs and whole `.prk` files.

use std::collections::BTreeMap;

use crate::embeddings::{NdDerivation, NdProof, NdRule, BOTTOM};
use crate::syntax::{Context, MTy, Side, Sign, Term, Ty};

use super::lexer::{tokenize, Tok, Token};
use super::{Decl, ParseError, SourceFile};

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    type_aliases: &'a BTreeMap<String, Ty>,
    term_defs: &'a BTreeMap<String, Term>,
    /// Type variables bound by enclosing quantifiers or type binders.
    tscope: Vec<String>,
    /// Term variables bound by enclosing binders or the declared context.
    scope: Vec<String>,
    /// In formulas of natural-deduction proofs, `bot` denotes falsity.
    nd: bool,
}

type Res<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(toks: Vec<Token>, type_aliases: &'a BTreeMap<String, Ty>, term_defs: &'a BTreeMap<String, Term>) -> Self {
        Parser { toks, pos: 0, type_aliases, term_defs, tscope: Vec::new(), scope: Vec::new(), nd: false }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Res<T> {
        let (l, c) = self.here();
        Err(ParseError::new(l, c, msg))
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Signed(s, g)) => format!("`{s}{}`", g.pick("+", "-")),
            Some(Tok::Mode(m)) => format!("`{}`", m.ascii()),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Res<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_ident(&mut self) -> Res<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_reserved(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn done(&self) -> Res<()> {
        if self.pos < self.toks.len() {
            self.error(format!("unexpected {}", self.describe()))
        } else {
            Ok(())
        }
    }

    // Types.

    fn ty(&mut self) -> Res<Ty> {
        if self.at_ident("forall") || self.at_ident("exists") {
            let forall = self.at_ident("forall");
            self.pos += 1;
            let name = self.expect_ident()?;
            self.expect_sym(".")?;
            self.tscope.push(name.clone());
            let body = self.ty();
            self.tscope.pop();
            let body = body?;
            return Ok(if forall { Ty::forall(&name, body) } else { Ty::exists(&name, body) });
        }
        let lhs = self.ty_or()?;
        if self.eat_sym("->") {
            Ok(Ty::imp(lhs, self.ty()?))
        } else if self.eat_sym("-x") {
            Ok(Ty::coimp(lhs, self.ty()?))
        } else {
            Ok(lhs)
        }
    }

    fn ty_or(&mut self) -> Res<Ty> {
        let mut acc = self.ty_and()?;
        while self.eat_sym("\\/") {
            acc = Ty::or(acc, self.ty_and()?);
        }
        Ok(acc)
    }

    fn ty_and(&mut self) -> Res<Ty> {
        let mut acc = self.ty_unary()?;
        while self.eat_sym("/\\") {
            acc = Ty::and(acc, self.ty_unary()?);
        }
        Ok(acc)
    }

    fn ty_unary(&mut self) -> Res<Ty> {
        if self.eat_sym("~") {
            return Ok(Ty::neg(self.ty_unary()?));
        }
        if self.eat_sym("(") {
            let t = self.ty()?;
            self.expect_sym(")")?;
            return Ok(t);
        }
        if self.at_ident("forall") || self.at_ident("exists") {
            return self.ty();
        }
        let name = self.expect_ident()?;
        Ok(self.resolve_ty(name))
    }

    fn resolve_ty(&self, name: String) -> Ty {
        if self.tscope.contains(&name) {
            return Ty::var(name);
        }
        if self.nd && (name == "bot" || name == BOTTOM) {
            return Ty::var(BOTTOM);
        }
        match self.type_aliases.get(&name) {
            Some(t) => t.clone(),
            None => Ty::var(name),
        }
    }

    fn mty(&mut self) -> Res<MTy> {
        let ty = self.ty()?;
        match self.bump() {
            Some(Tok::Mode(m)) => Ok(MTy::new(ty, m)),
            _ => {
                self.pos -= 1;
                self.error(format!("expected a mode (!+ !- ?+ ?-), found {}", self.describe()))
            }
        }
    }

    // Terms.

    fn binder(&mut self) -> Res<(String, MTy)> {
        let name = self.expect_ident()?;
        self.expect_sym(":")?;
        let ty = self.mty()?;
        Ok((name, ty))
    }

    fn under<T>(&mut self, names: &[&str], f: impl FnOnce(&mut Self) -> Res<T>) -> Res<T> {
        let n = self.scope.len();
        self.scope.extend(names.iter().map(|s| s.to_string()));
        let r = f(self);
        self.scope.truncate(n);
        r
    }

    fn under_ty<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> Res<T>) -> Res<T> {
        self.tscope.push(name.to_string());
        let r = f(self);
        self.tscope.pop();
        r
    }

    fn args(&mut self, n: usize) -> Res<Vec<Term>> {
        self.expect_sym("(")?;
        let mut out = Vec::new();
        for i in 0..n {
            if i > 0 {
                self.expect_sym(",")?;
            }
            out.push(self.term()?);
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    fn bracket_ty(&mut self) -> Res<Ty> {
        self.expect_sym("[")?;
        let t = self.ty()?;
        self.expect_sym("]")?;
        Ok(t)
    }

    fn term(&mut self) -> Res<Term> {
        match self.peek().cloned() {
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Some(Tok::Ident(kw)) if kw == "abort" => {
                self.pos += 1;
                self.expect_sym("[")?;
                let q = self.mty()?;
                self.expect_sym("]")?;
                self.expect_sym("(")?;
                let a = self.term()?;
                self.expect_sym(";")?;
                let b = self.term()?;
                self.expect_sym(")")?;
                Ok(Term::abort(q, a, b))
            }
            Some(Tok::Ident(name)) => {
                if is_reserved(&name) {
                    return self.error(format!("keyword `{name}` needs a sign"));
                }
                self.pos += 1;
                if self.scope.contains(&name) {
                    return Ok(Term::var(name));
                }
                Ok(self.term_defs.get(&name).cloned().unwrap_or_else(|| Term::var(name)))
            }
            Some(Tok::Signed(kw, g)) => {
                self.pos += 1;
                self.signed(&kw, g)
            }
            _ => self.error(format!("expected a term, found {}", self.describe())),
        }
    }

    fn lam_like(&mut self) -> Res<(String, MTy, Term)> {
        self.expect_sym("(")?;
        let (x, p) = self.binder()?;
        self.expect_sym(")")?;
        self.expect_sym(".")?;
        let body = self.under(&[&x], |s| s.term())?;
        Ok((x, p, body))
    }

    fn signed(&mut self, kw: &str, g: Sign) -> Res<Term> {
        let two = |s: &mut Self| -> Res<(Term, Term)> {
            let mut v = s.args(2)?;
            let b = v.pop().expect("two arguments");
            let a = v.pop().expect("two arguments");
            Ok((a, b))
        };
        let one = |s: &mut Self| -> Res<Term> { Ok(s.args(1)?.pop().expect("one argument")) };
        match kw {
            "wlam" => {
                let (x, p, body) = self.lam_like()?;
                Ok(Term::wlam(g, &x, p, body))
            }
            "lam" => {
                let (x, p, body) = self.lam_like()?;
                Ok(Term::lam(g, &x, p, body))
            }
            "wapp" => two(self).map(|(a, b)| Term::wapp(g, a, b)),
            "pair" => two(self).map(|(a, b)| Term::pair(g, a, b)),
            "app" => two(self).map(|(a, b)| Term::app(g, a, b)),
            "copair" => two(self).map(|(a, b)| Term::copair(g, a, b)),
            "proj1" => one(self).map(|a| Term::proj(g, Side::Left, a)),
            "proj2" => one(self).map(|a| Term::proj(g, Side::Right, a)),
            "inj1" => one(self).map(|a| Term::inj(g, Side::Left, a)),
            "inj2" => one(self).map(|a| Term::inj(g, Side::Right, a)),
            "negi" => one(self).map(|a| Term::negi(g, a)),
            "nege" => one(self).map(|a| Term::nege(g, a)),
            "case" => {
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(";")?;
                let (x, px) = self.binder()?;
                self.expect_sym(".")?;
                let s = self.under(&[&x], |s| s.term())?;
                self.expect_sym(";")?;
                let (y, py) = self.binder()?;
                self.expect_sym(".")?;
                let u = self.under(&[&y], |s| s.term())?;
                self.expect_sym(")")?;
                Ok(Term::case(g, t, &x, px, s, &y, py, u))
            }
            "colam" => {
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(";")?;
                let (x, px) = self.binder()?;
                self.expect_sym(",")?;
                let (y, py) = self.binder()?;
                self.expect_sym(".")?;
                let body = self.under(&[&x, &y], |s| s.term())?;
                self.expect_sym(")")?;
                if x == y && x != "_" {
                    return self.error(format!("colam binds `{x}` twice"));
                }
                Ok(Term::colam(g, t, &x, px, &y, py, body))
            }
            "tlam" => {
                let a = self.expect_ident()?;
                self.expect_sym(".")?;
                let body = self.under_ty(&a, |s| s.term())?;
                Ok(Term::tlam(g, &a, body))
            }
            "tapp" => {
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(",")?;
                let a = self.bracket_ty()?;
                self.expect_sym(")")?;
                Ok(Term::tapp(g, t, a))
            }
            "pack" => {
                let a = self.bracket_ty()?;
                let t = one(self)?;
                Ok(Term::pack(g, a, t))
            }
            "unpack" => {
                self.expect_sym("(")?;
                let t = self.term()?;
                self.expect_sym(";")?;
                let a = self.expect_ident()?;
                self.expect_sym(",")?;
                let ((x, px), body) = self.under_ty(&a, |s| {
                    let b = s.binder()?;
                    s.expect_sym(".")?;
                    let x = b.0.clone();
                    let body = s.under(&[&x], |s| s.term())?;
                    Ok((b, body))
                })?;
                self.expect_sym(")")?;
                Ok(Term::unpack(g, t, &a, &x, px, body))
            }
            _ => self.error(format!("unknown keyword `{kw}`")),
        }
    }

    // Natural-deduction proofs.

    fn nd_formula(&mut self) -> Res<Ty> {
        self.expect_sym("[")?;
        let was = std::mem::replace(&mut self.nd, true);
        let t = self.ty();
        self.nd = was;
        let t = t?;
        self.expect_sym("]")?;
        Ok(t)
    }

    fn nd_rule_name(&mut self) -> Res<String> {
        let mut name = self.expect_ident_or_keyword()?;
        while self.at_sym("-") {
            self.pos += 1;
            name.push('-');
            name.push_str(&self.expect_ident_or_keyword()?);
        }
        Ok(name)
    }

    fn expect_ident_or_keyword(&mut self) -> Res<String> {
        match self.bump() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos -= 1;
                self.error(format!("expected a rule name, found {}", self.describe()))
            }
        }
    }

    fn nd(&mut self) -> Res<NdProof> {
        self.expect_sym("(")?;
        let name = self.nd_rule_name()?;
        let rule = match name.as_str() {
            "ax" => match self.bump() {
                Some(Tok::Int(n)) if n >= 1 => NdRule::Ax(n),
                _ => {
                    self.pos -= 1;
                    return self.error("ax expects a positive hypothesis index");
                }
            },
            "bot-e" => NdRule::BotE(self.nd_formula()?),
            "and-i" => NdRule::AndI,
            "and-e1" => NdRule::AndE(Side::Left),
            "and-e2" => NdRule::AndE(Side::Right),
            "or-i1" => NdRule::OrI(Side::Left, self.nd_formula()?),
            "or-i2" => NdRule::OrI(Side::Right, self.nd_formula()?),
            "or-e" => NdRule::OrE,
            "imp-i" => NdRule::ImpI(self.nd_formula()?),
            "imp-e" => NdRule::ImpE,
            "coimp-i" => NdRule::CoimpI,
            "coimp-e" => NdRule::CoimpE,
            "not-i" => NdRule::NotI(self.nd_formula()?),
            "not-e" => NdRule::NotE,
            "all-i" => NdRule::AllI(self.expect_ident()?),
            "all-e" => NdRule::AllE(self.nd_formula()?),
            "ex-i" => {
                let w = self.nd_formula()?;
                NdRule::ExI(w, self.nd_formula()?)
            }
            "ex-e" => NdRule::ExE(self.expect_ident()?),
            "lem" => NdRule::Lem(self.nd_formula()?),
            other => return self.error(format!("unknown rule `{other}`")),
        };
        let mut premises = Vec::new();
        for _ in 0..rule.arity() {
            premises.push(self.nd()?);
        }
        self.expect_sym(")")?;
        Ok(NdProof::new(rule, premises))
    }

    // Files.

    fn context(&mut self) -> Res<Context> {
        let mut ctx = Context::new();
        self.expect_sym("[")?;
        if !self.eat_sym("]") {
            loop {
                let (x, p) = self.binder()?;
                if ctx.contains(&x) {
                    return self.error(format!("`{x}` declared twice in the context"));
                }
                ctx.push(x, p);
                if self.eat_sym("]") {
                    break;
                }
                self.expect_sym(",")?;
            }
        }
        Ok(ctx)
    }

    fn decl_term(&mut self) -> Res<Decl> {
        let name = self.expect_ident()?;
        let ctx = if self.at_sym("[") { self.context()? } else { Context::new() };
        let ty = if self.eat_sym(":") { Some(self.mty()?) } else { None };
        self.expect_sym("=")?;
        let names: Vec<String> = ctx.entries().iter().map(|(x, _)| x.clone()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let term = self.under(&refs, |s| s.term())?;
        Ok(Decl::Term { name, ctx, ty, term })
    }

    fn decl_nd(&mut self) -> Res<Decl> {
        let name = self.expect_ident()?;
        let mut hyps = Vec::new();
        let mut concl = None;
        if self.eat_sym(":") {
            let was = std::mem::replace(&mut self.nd, true);
            let r = (|| -> Res<()> {
                if !self.at_sym("|-") {
                    loop {
                        hyps.push(self.ty()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                }
                self.expect_sym("|-")?;
                concl = Some(self.ty()?);
                Ok(())
            })();
            self.nd = was;
            r?;
        }
        self.expect_sym("=")?;
        let proof = self.nd()?;
        Ok(Decl::NdProof { deriv: NdDerivation { name: name.clone(), hyps, proof }, name, concl })
    }

    fn decl(&mut self) -> Res<Decl> {
        match self.peek() {
            Some(Tok::Ident(k)) if k == "type" => {
                self.pos += 1;
                let name = self.expect_ident()?;
                self.expect_sym("=")?;
                Ok(Decl::Type { name, ty: self.ty()? })
            }
            Some(Tok::Ident(k)) if k == "term" => {
                self.pos += 1;
                self.decl_term()
            }
            Some(Tok::Ident(k)) if k == "ndproof" => {
                self.pos += 1;
                self.decl_nd()
            }
            _ => self.error(format!("expected `type`, `term` or `ndproof`, found {}", self.describe())),
        }
    }

    fn at_decl_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(k)) if k == "type" || k == "term" || k == "ndproof")
            && matches!(self.peek_at(1), Some(Tok::Ident(_)))
    }
}

const RESERVED: &[&str] = &["abort", "forall", "exists", "type", "term", "ndproof"];

fn is_reserved(s: &str) -> bool {
    RESERVED.contains(&s) || super::lexer::SIGNED_KEYWORDS.contains(&s)
}

fn with_parser<T>(src: &str, f: impl FnOnce(&mut Parser) -> Res<T>) -> Res<T> {
    let toks = tokenize(src)?;
    let (aliases, defs) = (BTreeMap::new(), BTreeMap::new());
    let mut p = Parser::new(toks, &aliases, &defs);
    let r = f(&mut p)?;
    p.done()?;
    Ok(r)
}

pub fn parse_type(src: &str) -> Res<Ty> {
    with_parser(src, |p| p.ty())
}

pub fn parse_mty(src: &str) -> Res<MTy> {
    with_parser(src, |p| p.mty())
}

pub fn parse_term(src: &str) -> Res<Term> {
    with_parser(src, |p| p.term())
}

/// Parses a term whose free variables listed in `ctx` are treated as bound
/// by the context.
pub fn parse_term_in(src: &str, ctx: &Context) -> Res<Term> {
    with_parser(src, |p| {
        p.scope.extend(ctx.entries().iter().map(|(x, _)| x.clone()));
        p.term()
    })
}

pub fn parse_nd(src: &str) -> Res<NdProof> {
    with_parser(src, |p| p.nd())
}

/// Parses a formula where `bot` and `⊥` denote falsity.
pub fn parse_formula(src: &str) -> Res<Ty> {
    with_parser(src, |p| {
        p.nd = true;
        p.ty()
    })
}

pub fn parse_file(src: &str) -> Res<SourceFile> {
    let toks = tokenize(src)?;
    let mut aliases: BTreeMap<String, Ty> = BTreeMap::new();
    let mut defs: BTreeMap<String, Term> = BTreeMap::new();
    let mut decls: Vec<Decl> = Vec::new();
    let mut pos = 0;
    while pos < toks.len() {
        let mut p = Parser::new(toks.clone(), &aliases, &defs);
        p.pos = pos;
        if !p.at_decl_start() {
            return p.error(format!("expected a declaration, found {}", p.describe()));
        }
        let (line, col) = p.here();
        let d = p.decl()?;
        pos = p.pos;
        if decls.iter().any(|e| e.name() == d.name()) {
            return Err(ParseError::new(line, col, format!("`{}` is declared twice", d.name())));
        }
        match &d {
            Decl::Type { name, ty } => {
                aliases.insert(name.clone(), ty.clone());
            }
            Decl::Term { name, ctx, term, .. } if ctx.is_empty() => {
                defs.insert(name.clone(), term.clone());
            }
            _ => {}
        }
        decls.push(d);
    }
    Ok(SourceFile { decls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Mode;

    #[test]
    fn moded_type_example() {
        let p = parse_mty("a /\\ ~a ?-").unwrap();
        assert_eq!(p, MTy::new(Ty::and(Ty::var("a"), Ty::neg(Ty::var("a"))), Mode::WEAK_NEG));
    }

    #[test]
    fn arrows_associate_to_the_right() {
        let t = parse_type("a -> b -> c").unwrap();
        assert_eq!(t, Ty::imp(Ty::var("a"), Ty::imp(Ty::var("b"), Ty::var("c"))));
        let q = parse_type("forall a. a -> a").unwrap();
        assert_eq!(q, Ty::forall("a", Ty::imp(Ty::var("a"), Ty::var("a"))));
    }

    #[test]
    fn ill_typed_terms_still_parse() {
        let t = parse_term("wlam+ (x : a ?-). x").unwrap();
        assert_eq!(t, Term::wlam(Sign::Pos, "x", MTy::wneg(Ty::var("a")), Term::var("x")));
    }

    #[test]
    fn nd_example() {
        let p = parse_nd("(and-i (ax 1) (ax 2))").unwrap();
        assert_eq!(p, NdProof::new(NdRule::AndI, vec![NdProof::leaf(NdRule::Ax(1)), NdProof::leaf(NdRule::Ax(2))]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("wapp+(x,").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_file("term t : a !+ =\n  pair+(x y)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
    }

    #[test]
    fn files_expand_earlier_declarations() {
        let src = "type t = forall a. a -> a\nterm id : t ?+ = wlam+ (_ : t ?-). tlam+ a. wlam+ (_ : a -> a ?-). lam+ (x : a ?+). x\nterm again = id";
        let f = parse_file(src).unwrap();
        assert_eq!(f.decls.len(), 3);
        let (Decl::Term { term: a, .. }, Decl::Term { term: b, .. }) = (&f.decls[1], &f.decls[2]) else { panic!() };
        assert_eq!(a, b);
    }
}
