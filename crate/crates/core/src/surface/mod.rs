//! The `.prk` surface language: declarations of type aliases, proof terms
//! and natural-deduction proofs.
//!
//! ```text
//! -- a comment
//! type top = forall a. a -> a
//! term t [x : a ?-] : a ?+ = wlam+ (y : a ?-). x
//! ndproof p : a, b |- a /\ b = (and-i (ax 1) (ax 2))
//! ```

pub mod lexer;
pub mod parser;

use thiserror::Error;

use crate::embeddings::{NdDerivation, NdProof, NdRule};
use crate::syntax::pretty::{mty_to_string, term_to_string, ty_to_string, Style};
use crate::syntax::{Context, MTy, Side, Term, Ty};

pub use parser::{parse_file, parse_formula, parse_mty, parse_nd, parse_term, parse_term_in, parse_type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Type { name: String, ty: Ty },
    Term { name: String, ctx: Context, ty: Option<MTy>, term: Term },
    NdProof { name: String, deriv: NdDerivation, concl: Option<Ty> },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Type { name, .. } | Decl::Term { name, .. } | Decl::NdProof { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Type { .. } => "type",
            Decl::Term { .. } => "term",
            Decl::NdProof { .. } => "ndproof",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub decls: Vec<Decl>,
}

impl SourceFile {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    /// The declarations that carry something to check: terms and proofs.
    pub fn checkable(&self) -> impl Iterator<Item = &Decl> {
        self.decls.iter().filter(|d| !matches!(d, Decl::Type { .. }))
    }
}

fn formula(a: &Ty) -> String {
    ty_to_string(a, Style::Ascii)
}

/// Prints a proof in the bracketed notation read by [`parse_nd`].
pub fn nd_to_string(p: &NdProof) -> String {
    let mut out = format!("({}", p.rule.name());
    match &p.rule {
        NdRule::Ax(n) => out.push_str(&format!(" {n}")),
        NdRule::BotE(a)
        | NdRule::OrI(_, a)
        | NdRule::ImpI(a)
        | NdRule::NotI(a)
        | NdRule::AllE(a)
        | NdRule::Lem(a) => out.push_str(&format!(" [{}]", formula(a))),
        NdRule::ExI(w, c) => out.push_str(&format!(" [{}] [{}]", formula(w), formula(c))),
        NdRule::AllI(v) | NdRule::ExE(v) => out.push_str(&format!(" {v}")),
        NdRule::AndI | NdRule::AndE(_) | NdRule::OrE | NdRule::ImpE | NdRule::CoimpI | NdRule::CoimpE | NdRule::NotE => {}
    }
    for q in &p.premises {
        out.push(' ');
        out.push_str(&nd_to_string(q));
    }
    out.push(')');
    out
}

pub fn decl_to_string(d: &Decl) -> String {
    match d {
        Decl::Type { name, ty } => format!("type {name} = {}", formula(ty)),
        Decl::Term { name, ctx, ty, term } => {
            let mut s = format!("term {name}");
            if !ctx.is_empty() {
                let es: Vec<String> =
                    ctx.entries().iter().map(|(x, p)| format!("{x} : {}", mty_to_string(p, Style::Ascii))).collect();
                s.push_str(&format!(" [{}]", es.join(", ")));
            }
            if let Some(p) = ty {
                s.push_str(&format!(" : {}", mty_to_string(p, Style::Ascii)));
            }
            s.push_str(&format!(" = {}", term_to_string(term, Style::Ascii)));
            s
        }
        Decl::NdProof { name, deriv, concl } => {
            let mut s = format!("ndproof {name}");
            if concl.is_some() || !deriv.hyps.is_empty() {
                let hs: Vec<String> = deriv.hyps.iter().map(formula).collect();
                s.push_str(" : ");
                if !hs.is_empty() {
                    s.push_str(&hs.join(", "));
                    s.push(' ');
                }
                s.push_str("|-");
                if let Some(c) = concl {
                    s.push(' ');
                    s.push_str(&formula(c));
                }
            }
            s.push_str(&format!(" = {}", nd_to_string(&deriv.proof)));
            s
        }
    }
}

/// Prints a file with type aliases kept as declarations but not folded back
/// into later declarations.
pub fn file_to_string(f: &SourceFile) -> String {
    f.decls.iter().map(|d| decl_to_string(d) + "\n").collect()
}

/// Reads an injection side from `1` or `2`.
pub fn side_of(i: usize) -> Option<Side> {
    Side::from_index(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::BOTTOM;
    use crate::syntax::Sign;

    #[test]
    fn printed_terms_read_back() {
        let a = Ty::var("a");
        let samples = vec![
            Term::wlam(Sign::Pos, "x", MTy::wneg(a.clone()), Term::var("x")),
            Term::tlam(
                Sign::Pos,
                "b",
                Term::wlam(Sign::Pos, "y", MTy::wneg(Ty::imp(Ty::var("b"), Ty::var("b"))), Term::var("y")),
            ),
            Term::case(
                Sign::Neg,
                Term::var("t"),
                "x",
                MTy::wpos(a.clone()),
                Term::var("x"),
                "y",
                MTy::wpos(a.clone()),
                Term::var("y"),
            ),
            Term::unpack(
                Sign::Pos,
                Term::var("t"),
                "c",
                "x",
                MTy::wpos(Ty::imp(Ty::var("c"), a.clone())),
                Term::abort(MTy::pos(a.clone()), Term::var("x"), Term::var("z")),
            ),
            Term::colam(
                Sign::Neg,
                Term::var("t"),
                "x",
                MTy::wpos(a.clone()),
                "y",
                MTy::wneg(Ty::coimp(a.clone(), a.clone())),
                Term::copair(Sign::Pos, Term::var("x"), Term::var("y")),
            ),
            Term::pack(Sign::Neg, Ty::exists("q", Ty::var("q")), Term::tapp(Sign::Pos, Term::var("t"), a.clone())),
        ];
        for t in samples {
            let s = term_to_string(&t, Style::Ascii);
            assert_eq!(parse_term(&s).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn printed_proofs_read_back() {
        let src = "(imp-i [a /\\ bot] (or-i1 [b] (ex-i [a] [exists c. c] (and-e1 (ax 1)))))";
        let p = parse_nd(src).unwrap();
        let NdRule::ImpI(h) = &p.rule else { panic!() };
        assert_eq!(*h, Ty::and(Ty::var("a"), Ty::var(BOTTOM)));
        assert_eq!(parse_nd(&nd_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn printed_files_read_back() {
        let src = "type t = a -> a\nterm i [z : a ?-] : a ?+ = wlam+ (_ : a ?-). z\nndproof p : a, b |- a /\\ b = (and-i (ax 1) (ax 2))\n";
        let f = parse_file(src).unwrap();
        assert_eq!(file_to_string(&f), src);
        assert_eq!(parse_file(&file_to_string(&f)).unwrap(), f);
    }
}
