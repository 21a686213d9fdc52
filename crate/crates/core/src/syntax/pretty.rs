//! Printing of types and terms in two notations: the Unicode notation used
//! for reports, and the ASCII surface syntax read back by the parser.

use std::collections::BTreeSet;

use super::term::{fresh_name, Binder, Side, Term};
use super::types::{Hint, MTy, Sign, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Unicode,
    Ascii,
}

struct Printer {
    style: Style,
    free: BTreeSet<String>,
    tfree: BTreeSet<String>,
    names: Vec<String>,
    tnames: Vec<String>,
}

const PREC_QUANT: u8 = 0;
const PREC_ARROW: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NEG: u8 = 4;

impl Printer {
    fn new(style: Style, free: BTreeSet<String>, tfree: BTreeSet<String>) -> Printer {
        Printer { style, free, tfree, names: Vec::new(), tnames: Vec::new() }
    }

    fn uni(&self) -> bool {
        self.style == Style::Unicode
    }

    fn pick_tname(&self, hint: &Hint) -> String {
        let mut avoid = self.tfree.clone();
        avoid.extend(self.tnames.iter().cloned());
        fresh_name(if hint.as_str().is_empty() { "a" } else { hint.as_str() }, &avoid)
    }

    fn pick_name(&self, hint: &Hint, used: bool) -> String {
        if !used {
            return "_".to_string();
        }
        let mut avoid = self.free.clone();
        avoid.extend(self.names.iter().cloned());
        let base = if hint.as_str().is_empty() || hint.as_str() == "_" { "x" } else { hint.as_str() };
        fresh_name(base, &avoid)
    }

    fn ty(&mut self, t: &Ty, need: u8, out: &mut String) {
        let own = match t {
            Ty::Var(_) | Ty::Bound(_) => 5,
            Ty::Neg(_) => PREC_NEG,
            Ty::And(..) => PREC_AND,
            Ty::Or(..) => PREC_OR,
            Ty::Imp(..) | Ty::Coimp(..) => PREC_ARROW,
            Ty::Forall(..) | Ty::Exists(..) => PREC_QUANT,
        };
        let paren = own < need;
        if paren {
            out.push('(');
        }
        match t {
            Ty::Var(n) => out.push_str(n),
            Ty::Bound(i) => match self.tnames.len().checked_sub(i + 1) {
                Some(j) => out.push_str(&self.tnames[j].clone()),
                None => out.push_str(&format!("^{i}")),
            },
            Ty::Neg(a) => {
                out.push_str(if self.uni() { "¬" } else { "~" });
                self.ty(a, PREC_NEG, out);
            }
            Ty::And(a, b) | Ty::Or(a, b) => {
                let (lvl, op) = match (t, self.uni()) {
                    (Ty::And(..), true) => (PREC_AND, " ∧ "),
                    (Ty::And(..), false) => (PREC_AND, " /\\ "),
                    (_, true) => (PREC_OR, " ∨ "),
                    (_, false) => (PREC_OR, " \\/ "),
                };
                self.ty(a, lvl + 1, out);
                out.push_str(op);
                self.ty(b, lvl + 1, out);
            }
            Ty::Imp(a, b) | Ty::Coimp(a, b) => {
                let op = match (t, self.uni()) {
                    (Ty::Imp(..), true) => " → ",
                    (Ty::Imp(..), false) => " -> ",
                    (_, true) => " ⋉ ",
                    (_, false) => " -x ",
                };
                self.ty(a, PREC_ARROW + 1, out);
                out.push_str(op);
                self.ty(b, PREC_ARROW, out);
            }
            Ty::Forall(h, a) | Ty::Exists(h, a) => {
                let name = self.pick_tname(h);
                let q = match (t, self.uni()) {
                    (Ty::Forall(..), true) => "∀",
                    (Ty::Forall(..), false) => "forall ",
                    (_, true) => "∃",
                    (_, false) => "exists ",
                };
                out.push_str(q);
                out.push_str(&name);
                out.push_str(". ");
                self.tnames.push(name);
                self.ty(a, PREC_QUANT, out);
                self.tnames.pop();
            }
        }
        if paren {
            out.push(')');
        }
    }

    fn mty(&mut self, p: &MTy, out: &mut String) {
        if self.uni() {
            let atomic = matches!(p.ty, Ty::Var(_) | Ty::Bound(_));
            if atomic {
                self.ty(&p.ty, PREC_QUANT, out);
            } else {
                out.push('(');
                self.ty(&p.ty, PREC_QUANT, out);
                out.push(')');
            }
            out.push_str(p.mode.superscript());
        } else {
            self.ty(&p.ty, PREC_QUANT, out);
            out.push(' ');
            out.push_str(p.mode.ascii());
        }
    }

    fn sign(&self, g: Sign) -> &'static str {
        match (self.uni(), g) {
            (true, Sign::Pos) => "⁺",
            (true, Sign::Neg) => "⁻",
            (false, Sign::Pos) => "+",
            (false, Sign::Neg) => "-",
        }
    }

    fn binder(&mut self, b: &Binder, used: bool, out: &mut String) -> String {
        let name = self.pick_name(&b.hint, used);
        out.push_str(&name);
        out.push_str(if self.uni() { ":" } else { " : " });
        self.mty(&b.ty, out);
        name
    }

    fn under<R>(&mut self, name: String, f: impl FnOnce(&mut Printer) -> R) -> R {
        self.names.push(name);
        let r = f(self);
        self.names.pop();
        r
    }

    fn kw(&self, uni: &'static str, ascii: &'static str) -> &'static str {
        if self.uni() {
            uni
        } else {
            ascii
        }
    }

    fn args(&mut self, head: &str, g: Sign, ts: &[&Term], out: &mut String) {
        out.push_str(head);
        out.push_str(self.sign(g));
        out.push('(');
        for (i, t) in ts.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            self.term(t, out);
        }
        out.push(')');
    }

    fn term(&mut self, t: &Term, out: &mut String) {
        match t {
            Term::Var(n) => out.push_str(n),
            Term::BVar(i) => match self.names.len().checked_sub(i + 1) {
                Some(j) => out.push_str(&self.names[j].clone()),
                None => out.push_str(&format!("^{i}")),
            },
            Term::Abort(q, a, b) => {
                out.push_str(self.kw("℧[", "abort["));
                self.mty(q, out);
                out.push_str("](");
                self.term(a, out);
                out.push_str("; ");
                self.term(b, out);
                out.push(')');
            }
            Term::WLam(g, b, body) | Term::Lam(g, b, body) => {
                let head = match (t, self.uni()) {
                    (Term::WLam(..), true) => "λ∘",
                    (Term::WLam(..), false) => "wlam",
                    (_, true) => "λ",
                    (_, false) => "lam",
                };
                out.push_str(head);
                out.push_str(self.sign(*g));
                out.push_str(if self.uni() { "(" } else { " (" });
                let name = self.binder(b, body.has_loose(0), out);
                out.push_str("). ");
                self.under(name, |p| p.term(body, out));
            }
            Term::WApp(g, a, b) => self.args(self.kw("•", "wapp"), *g, &[a, b], out),
            Term::Pair(g, a, b) => {
                if self.uni() {
                    out.push('⟨');
                    self.term(a, out);
                    out.push_str(", ");
                    self.term(b, out);
                    out.push('⟩');
                    out.push_str(self.sign(*g));
                } else {
                    self.args("pair", *g, &[a, b], out);
                }
            }
            Term::Proj(g, i, a) => {
                let h = match (i, self.uni()) {
                    (Side::Left, true) => "π₁",
                    (Side::Right, true) => "π₂",
                    (Side::Left, false) => "proj1",
                    (Side::Right, false) => "proj2",
                };
                self.args(h, *g, &[a], out)
            }
            Term::Inj(g, i, a) => {
                let h = match (i, self.uni()) {
                    (Side::Left, true) => "in₁",
                    (Side::Right, true) => "in₂",
                    (Side::Left, false) => "inj1",
                    (Side::Right, false) => "inj2",
                };
                self.args(h, *g, &[a], out)
            }
            Term::Case(g, scrut, b1, s, b2, u) => {
                out.push_str("case");
                out.push_str(self.sign(*g));
                out.push('(');
                self.term(scrut, out);
                out.push_str("; ");
                let n1 = self.binder(b1, s.has_loose(0), out);
                out.push_str(". ");
                self.under(n1, |p| p.term(s, out));
                out.push_str("; ");
                let n2 = self.binder(b2, u.has_loose(0), out);
                out.push_str(". ");
                self.under(n2, |p| p.term(u, out));
                out.push(')');
            }
            Term::App(g, a, b) => self.args("app", *g, &[a, b], out),
            Term::Copair(g, a, b) => self.args("copair", *g, &[a, b], out),
            Term::Colam(g, scrut, b1, b2, body) => {
                out.push_str("colam");
                out.push_str(self.sign(*g));
                out.push('(');
                self.term(scrut, out);
                out.push_str("; ");
                let n1 = self.binder(b1, body.has_loose(1), out);
                out.push_str(", ");
                self.names.push(n1);
                let n2 = self.binder(b2, body.has_loose(0), out);
                out.push_str(". ");
                self.under(n2, |p| p.term(body, out));
                self.names.pop();
                out.push(')');
            }
            Term::NegI(g, a) => self.args("negi", *g, &[a], out),
            Term::NegE(g, a) => self.args("nege", *g, &[a], out),
            Term::TLam(g, h, body) => {
                out.push_str(self.kw("Λ", "tlam"));
                out.push_str(self.sign(*g));
                if !self.uni() {
                    out.push(' ');
                }
                let name = self.pick_tname(h);
                out.push_str(&name);
                out.push_str(". ");
                self.tnames.push(name);
                self.term(body, out);
                self.tnames.pop();
            }
            Term::TApp(g, a, ty) => {
                out.push_str("tapp");
                out.push_str(self.sign(*g));
                out.push('(');
                self.term(a, out);
                out.push_str(", [");
                self.ty(ty, PREC_QUANT, out);
                out.push_str("])");
            }
            Term::Pack(g, ty, a) => {
                out.push_str("pack");
                out.push_str(self.sign(*g));
                out.push('[');
                self.ty(ty, PREC_QUANT, out);
                out.push_str("](");
                self.term(a, out);
                out.push(')');
            }
            Term::Unpack(g, scrut, h, b, body) => {
                out.push_str("unpack");
                out.push_str(self.sign(*g));
                out.push('(');
                self.term(scrut, out);
                out.push_str("; ");
                let tname = self.pick_tname(h);
                out.push_str(&tname);
                out.push_str(", ");
                self.tnames.push(tname);
                let n = self.binder(b, body.has_loose(0), out);
                out.push_str(". ");
                self.under(n, |p| p.term(body, out));
                self.tnames.pop();
                out.push(')');
            }
        }
    }
}

pub fn ty_to_string(t: &Ty, style: Style) -> String {
    let mut p = Printer::new(style, BTreeSet::new(), t.ftv());
    let mut out = String::new();
    p.ty(t, PREC_QUANT, &mut out);
    out
}

pub fn mty_to_string(t: &MTy, style: Style) -> String {
    let mut p = Printer::new(style, BTreeSet::new(), t.ty.ftv());
    let mut out = String::new();
    p.mty(t, &mut out);
    out
}

pub fn term_to_string(t: &Term, style: Style) -> String {
    let mut p = Printer::new(style, t.free_vars(), t.free_type_vars());
    let mut out = String::new();
    p.term(t, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_print_in_both_notations() {
        let t = Ty::and(Ty::var("a"), Ty::neg(Ty::var("a")));
        assert_eq!(ty_to_string(&t, Style::Unicode), "a ∧ ¬a");
        assert_eq!(mty_to_string(&MTy::wneg(t), Style::Ascii), "a /\\ ~a ?-");
        let q = Ty::forall("b", Ty::imp(Ty::var("b"), Ty::var("b")));
        assert_eq!(ty_to_string(&q, Style::Ascii), "forall b. b -> b");
    }

    #[test]
    fn binder_names_avoid_free_variables() {
        let t = Term::wlam(Sign::Pos, "y", MTy::wneg(Ty::var("a")), Term::wapp(Sign::Pos, Term::var("y"), Term::var("y")));
        let t = t.subst("q", &Term::var("y"));
        assert_eq!(term_to_string(&t, Style::Ascii), "wlam+ (y : a ?-). wapp+(y, y)");
        let u = Term::wlam(Sign::Pos, "y", MTy::wneg(Ty::var("a")), Term::var("q")).subst("q", &Term::var("y"));
        assert_eq!(term_to_string(&u, Style::Ascii), "wlam+ (_ : a ?-). y");
        let v = Term::wlam(Sign::Pos, "y", MTy::wneg(Ty::var("a")), Term::wapp(Sign::Pos, Term::var("y"), Term::var("q")))
            .subst("q", &Term::var("y"));
        assert_eq!(term_to_string(&v, Style::Ascii), "wlam+ (y0 : a ?-). wapp+(y0, y)");
    }
}
