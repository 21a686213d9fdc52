//! Proof-term constructions for the admissible principles and for each
//! natural-deduction rule.
//!
//! All types taken here are pure types (falsity already translated).
//! Binder names are chosen to avoid the free variables of every subterm
//! they scope over.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::intuitionistic::occurrences;
use crate::syntax::{fresh_name, MTy, Mode, Side, Sign, Term, Ty};
use crate::typecheck::absurd;

use Sign::{Neg, Pos};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("contraposition needs a weak hypothesis type, got {0}")]
    StrongHypothesis(String),
    #[error("intuitionistic contraposition of the negative counterfactual {0} with useful occurrences")]
    UsefulCounterfactual(String),
    #[error("expected a quantified type, got {0}")]
    NotQuantified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContraKind {
    Classical,
    Intuitionistic,
}

fn avoid(ts: &[&Term]) -> BTreeSet<String> {
    let mut acc = BTreeSet::new();
    for t in ts {
        acc.extend(t.free_vars());
    }
    acc
}

fn fresh(base: &str, ts: &[&Term], names: &[&str]) -> String {
    let mut av = avoid(ts);
    av.extend(names.iter().map(|n| n.to_string()));
    fresh_name(base, &av)
}

/// The falsity of the embeddings, `α₀ ∧ ¬α₀`.
pub fn bottom(alpha0: &str) -> Ty {
    Ty::and(Ty::var(alpha0), Ty::neg(Ty::var(alpha0)))
}

fn lem_p_inner(y: &str, a: &Ty) -> Term {
    let z = fresh("z", &[], &[y]);
    let k = Term::wlam(Pos, "_", MTy::wneg(Ty::neg(a.clone())), Term::negi(Pos, Term::var(&z)));
    let body = absurd(MTy::pos(a.clone()), Mode::WEAK_NEG, Term::var(y), k);
    let lem = Ty::or(a.clone(), Ty::neg(a.clone()));
    Term::wlam(
        Pos,
        "_",
        MTy::wneg(lem),
        Term::inj(Pos, Side::Left, Term::wlam(Pos, &z, MTy::wneg(a.clone()), body)),
    )
}

/// Excluded middle: `⊢ lemP(A) : (A ∨ ¬A)⊕`.
pub fn lem_p(a: &Ty) -> Term {
    let lem = Ty::or(a.clone(), Ty::neg(a.clone()));
    let inner = lem_p_inner("y", a);
    let core = Term::negi(Pos, Term::proj(Neg, Side::Left, Term::wapp(Neg, Term::var("x"), inner)));
    let right = Term::wlam(Pos, "y", MTy::wneg(Ty::neg(a.clone())), core);
    Term::wlam(Pos, "x", MTy::wneg(lem), Term::inj(Pos, Side::Right, right))
}

fn lem_n_inner(y: &str, a: &Ty) -> Term {
    let z = fresh("z", &[], &[y]);
    let k = Term::wlam(Neg, "_", MTy::wpos(Ty::neg(a.clone())), Term::negi(Neg, Term::var(&z)));
    let body = absurd(MTy::neg(a.clone()), Mode::WEAK_POS, Term::var(y), k);
    let nc = Ty::and(a.clone(), Ty::neg(a.clone()));
    Term::wlam(
        Neg,
        "_",
        MTy::wpos(nc),
        Term::inj(Neg, Side::Left, Term::wlam(Neg, &z, MTy::wpos(a.clone()), body)),
    )
}

/// Non-contradiction: `⊢ lemN(A) : (A ∧ ¬A)⊖`.
pub fn lem_n(a: &Ty) -> Term {
    let nc = Ty::and(a.clone(), Ty::neg(a.clone()));
    let inner = lem_n_inner("y", a);
    let core = Term::negi(Neg, Term::proj(Pos, Side::Left, Term::wapp(Pos, Term::var("x"), inner)));
    let right = Term::wlam(Neg, "y", MTy::wpos(Ty::neg(a.clone())), core);
    Term::wlam(Neg, "x", MTy::wpos(nc), Term::inj(Neg, Side::Right, right))
}

/// Classical contraposition. From `Γ, x : P ⊢ t : Q` (with `Q` of mode
/// `q_mode`) builds `Γ, y : Q~ ⊢ result : P~`.
pub fn ccontrapose(x: &str, y: &str, t: &Term, p: &MTy, q_mode: Mode) -> Result<Term, BuildError> {
    if !p.is_weak() {
        return Err(BuildError::StrongHypothesis(p.to_string()));
    }
    let sign = p.sign().flip();
    let body = absurd(MTy::strong(p.ty.clone(), sign), q_mode, t.clone(), Term::var(y));
    Ok(Term::wlam(sign, x, p.clone(), body))
}

/// Intuitionistic contraposition of a positive hypothesis `x : A⊕`.
pub fn icontrapose(x: &str, y: &str, t: &Term, a: &Ty, q_mode: Mode) -> Term {
    ccontrapose(x, y, t, &MTy::wpos(a.clone()), q_mode).expect("weak hypothesis")
}

/// Contraposition of either kind. The intuitionistic kind rejects a
/// negative hypothesis with useful occurrences in `t`.
pub fn contrapose(kind: ContraKind, x: &str, y: &str, t: &Term, p: &MTy, q_mode: Mode) -> Result<Term, BuildError> {
    if kind == ContraKind::Intuitionistic
        && p.mode == Mode::WEAK_NEG
        && !occurrences(t, x).useful_positions.is_empty()
    {
        return Err(BuildError::UsefulCounterfactual(x.to_string()));
    }
    ccontrapose(x, y, t, p, q_mode)
}

/// Weak negation introduction: from `t : A⊖` to `(¬A)⊕`.
pub fn wneg_intro(t: Term, a: &Ty) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(Ty::neg(a.clone())), Term::negi(Pos, t))
}

/// Weak negation elimination: from `t : (¬A)⊕` to `A⊖`.
pub fn wneg_elim(t: Term, a: &Ty) -> Term {
    let x = fresh("x", &[&t], &[]);
    let na = Ty::neg(a.clone());
    let k = Term::wlam(Neg, "_", MTy::wpos(na), Term::negi(Neg, Term::var(&x)));
    let inner = Term::nege(Pos, Term::wapp(Pos, t, k));
    Term::wlam(Neg, &x, MTy::wpos(a.clone()), Term::wapp(Neg, inner, Term::var(&x)))
}

/// `I∧`: from `t : A⊕` and `s : B⊕` to `(A∧B)⊕`.
pub fn pair_c(t: Term, s: Term, a: &Ty, b: &Ty) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(Ty::and(a.clone(), b.clone())), Term::pair(Pos, t, s))
}

/// `E∧`: from `t : (A₁∧A₂)⊕` to `Aᵢ⊕`.
pub fn proj_c(side: Side, t: Term, a1: &Ty, a2: &Ty) -> Term {
    let x = fresh("x", &[&t], &[]);
    let ai = side.pick(a1, a2).clone();
    let conj = Ty::and(a1.clone(), a2.clone());
    let k = Term::wlam(Neg, "_", MTy::wpos(conj), Term::inj(Neg, side, Term::var(&x)));
    let body = Term::wapp(Pos, Term::proj(Pos, side, Term::wapp(Pos, t, k)), Term::var(&x));
    Term::wlam(Pos, &x, MTy::wneg(ai), body)
}

/// `I∨`: from `t : Aᵢ⊕` to `(A₁∨A₂)⊕`.
pub fn inj_c(side: Side, t: Term, a1: &Ty, a2: &Ty) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(Ty::or(a1.clone(), a2.clone())), Term::inj(Pos, side, t))
}

/// Arguments of the disjunction-elimination builders: the scrutinee
/// `t : (A∨B)⊕` and branches `x : A⊕ ⊢ s : C⊕`, `x : B⊕ ⊢ u : C⊕`.
pub struct CaseArgs<'a> {
    pub t: Term,
    pub a: &'a Ty,
    pub b: &'a Ty,
    pub c: &'a Ty,
    pub x: &'a str,
    pub s: Term,
    pub u: Term,
}

fn case_refutation(args: &CaseArgs, y: &str) -> Term {
    let cs = icontrapose(args.x, y, &args.s, args.a, Mode::WEAK_POS);
    let cu = icontrapose(args.x, y, &args.u, args.b, Mode::WEAK_POS);
    Term::wlam(Neg, "_", MTy::wpos(Ty::or(args.a.clone(), args.b.clone())), Term::pair(Neg, cs, cu))
}

/// Classical `E∨`.
pub fn case_c(args: CaseArgs) -> Term {
    let y = fresh("y", &[&args.t, &args.s, &args.u], &[args.x]);
    let scrut = Term::wapp(Pos, args.t.clone(), case_refutation(&args, &y));
    let (x, a, b) = (args.x, MTy::wpos(args.a.clone()), MTy::wpos(args.b.clone()));
    let cased = Term::case(Pos, scrut, x, a, args.s, x, b, args.u);
    Term::wlam(Pos, &y, MTy::wneg(args.c.clone()), Term::wapp(Pos, cased, Term::var(&y)))
}

/// Intuitionistic `E∨`: the counterfactual is applied inside each branch.
pub fn case_j(args: CaseArgs) -> Term {
    let y = fresh("y", &[&args.t, &args.s, &args.u], &[args.x]);
    let scrut = Term::wapp(Pos, args.t.clone(), case_refutation(&args, &y));
    let (x, a, b) = (args.x, MTy::wpos(args.a.clone()), MTy::wpos(args.b.clone()));
    let s = Term::wapp(Pos, args.s, Term::var(&y));
    let u = Term::wapp(Pos, args.u, Term::var(&y));
    let cased = Term::case(Pos, scrut, x, a, s, x, b, u);
    Term::wlam(Pos, &y, MTy::wneg(args.c.clone()), cased)
}

/// `I→`: from `x : A⊕ ⊢ t : B⊕` to `(A→B)⊕`.
pub fn lam_c(x: &str, t: Term, a: &Ty, b: &Ty) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(Ty::imp(a.clone(), b.clone())), Term::lam(Pos, x, MTy::wpos(a.clone()), t))
}

/// `E→`: from `p : (A→B)⊕` and `q : A⊕` to `B⊕`.
pub fn app_c(p: Term, q: Term, a: &Ty, b: &Ty) -> Term {
    let x = fresh("x", &[&p, &q], &[]);
    let imp = Ty::imp(a.clone(), b.clone());
    let k = Term::wlam(Neg, "_", MTy::wpos(imp), Term::copair(Neg, q.clone(), Term::var(&x)));
    let body = Term::wapp(Pos, Term::app(Pos, Term::wapp(Pos, p, k), q), Term::var(&x));
    Term::wlam(Pos, &x, MTy::wneg(b.clone()), body)
}

/// `I⋉`: from `t : (¬A)⊕` and `s : B⊕` to `(A⋉B)⊕`.
pub fn copair_c(t: Term, s: Term, a: &Ty, b: &Ty) -> Term {
    let co = Ty::coimp(a.clone(), b.clone());
    Term::wlam(Pos, "_", MTy::wneg(co), Term::copair(Pos, wneg_elim(t, a), s))
}

/// `E⋉`: from `t : (A⋉B)⊕` and `x : (¬A)⊕, y : B⊕ ⊢ s : C⊕` to `C⊕`.
pub fn colam_c(t: Term, a: &Ty, b: &Ty, c: &Ty, x: &str, y: &str, s: Term) -> Term {
    let z = fresh("z", &[&t, &s], &[x, y]);
    let x0 = fresh("x", &[&t, &s], &[x, y, &z]);
    let s1 = s.subst(x, &wneg_intro(Term::var(&x0), a));
    let refute = absurd(MTy::neg(b.clone()), Mode::WEAK_POS, s1.clone(), Term::var(&z));
    let inner = Term::wlam(Neg, y, MTy::wpos(b.clone()), refute);
    let lam = Term::lam(Neg, &x0, MTy::wneg(a.clone()), inner);
    let co = Ty::coimp(a.clone(), b.clone());
    let scrut = Term::wapp(Pos, t, Term::wlam(Neg, "_", MTy::wpos(co), lam));
    let colam = Term::colam(Pos, scrut, &x0, MTy::wneg(a.clone()), y, MTy::wpos(b.clone()), s1);
    Term::wlam(Pos, &z, MTy::wneg(c.clone()), Term::wapp(Pos, colam, Term::var(&z)))
}

/// `I¬`: from `x : A⊕ ⊢ t : ⊥⊕` to `(¬A)⊕`.
pub fn neglam_c(x: &str, t: Term, a: &Ty, alpha0: &str) -> Term {
    let refute = absurd(MTy::neg(a.clone()), Mode::WEAK_POS, t, lem_n(&Ty::var(alpha0)));
    let contra = Term::wlam(Neg, x, MTy::wpos(a.clone()), refute);
    wneg_intro(contra, a)
}

/// `E¬`: from `t : (¬A)⊕` and `s : A⊕` to `⊥⊕`.
pub fn negap_c(t: Term, s: Term, a: &Ty, alpha0: &str) -> Term {
    let k = Term::wlam(Neg, "_", MTy::wpos(Ty::neg(a.clone())), Term::negi(Neg, s));
    absurd(MTy::wpos(bottom(alpha0)), Mode::WEAK_POS, t, k)
}

/// `I∀`: from `t : A⊕` (with `α` free) to `(∀α.A)⊕`.
pub fn lamt_c(alpha: &str, t: Term, a: &Ty) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(Ty::forall(alpha, a.clone())), Term::tlam(Pos, alpha, t))
}

/// `E∀`: from `t : (∀α.B)⊕` to `B{α:=A}⊕`.
pub fn appt_c(t: Term, forall: &Ty, arg: &Ty) -> Result<Term, BuildError> {
    let body = match forall {
        Ty::Forall(_, b) => b.open(arg),
        _ => return Err(BuildError::NotQuantified(forall.to_string())),
    };
    let x = fresh("x", &[&t], &[]);
    let k = Term::wlam(Neg, "_", MTy::wpos(forall.clone()), Term::pack(Neg, arg.clone(), Term::var(&x)));
    let inner = Term::tapp(Pos, Term::wapp(Pos, t, k), arg.clone());
    Ok(Term::wlam(Pos, &x, MTy::wneg(body), Term::wapp(Pos, inner, Term::var(&x))))
}

/// `I∃`: from `t : B{α:=A}⊕` to `(∃α.B)⊕`.
pub fn pat_c(arg: &Ty, exists: &Ty, t: Term) -> Term {
    Term::wlam(Pos, "_", MTy::wneg(exists.clone()), Term::pack(Pos, arg.clone(), t))
}

/// `E∃`: from `t : (∃α.A)⊕` and `x : A⊕ ⊢ s : B⊕` (with `α` free in
/// `A` and not in `B`) to `B⊕`.
pub fn opt_c(t: Term, exists: &Ty, alpha: &str, x: &str, s: Term, b: &Ty) -> Result<Term, BuildError> {
    let a = match exists {
        Ty::Exists(_, body) => body.open(&Ty::var(alpha)),
        _ => return Err(BuildError::NotQuantified(exists.to_string())),
    };
    let y = fresh("y", &[&t, &s], &[x]);
    let contra = icontrapose(x, &y, &s, &a, Mode::WEAK_POS);
    let k = Term::wlam(Neg, "_", MTy::wpos(exists.clone()), Term::tlam(Neg, alpha, contra));
    let scrut = Term::wapp(Pos, t, k);
    let opened = Term::unpack(Pos, scrut, alpha, x, MTy::wpos(a), s);
    Ok(Term::wlam(Pos, &y, MTy::wneg(b.clone()), Term::wapp(Pos, opened, Term::var(&y))))
}

/// `E⊥`: from `t : ⊥⊕` to `A⊕`.
pub fn bot_elim(t: Term, a: &Ty, alpha0: &str) -> Term {
    absurd(MTy::wpos(a.clone()), Mode::WEAK_POS, t, lem_n(&Ty::var(alpha0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intuitionistic::is_intuitionistic;
    use crate::syntax::Context;
    use crate::typecheck::check;

    fn a() -> Ty {
        Ty::var("a")
    }

    fn ok(ctx: &Context, t: &Term, p: MTy) {
        if let Err(e) = check(ctx, t, &p) {
            panic!("{t} does not check at {p}: {e}");
        }
    }

    #[test]
    fn excluded_middle_and_non_contradiction() {
        let g = Context::new();
        ok(&g, &lem_p(&a()), MTy::wpos(Ty::or(a(), Ty::neg(a()))));
        ok(&g, &lem_n(&a()), MTy::wneg(Ty::and(a(), Ty::neg(a()))));
        assert!(!is_intuitionistic(&lem_p(&a()), &BTreeSet::new()));
    }

    #[test]
    fn weak_negation() {
        let g = Context::from_entries(vec![("x".into(), MTy::wneg(a()))]);
        let i = wneg_intro(Term::var("x"), &a());
        ok(&g, &i, MTy::wpos(Ty::neg(a())));
        let e = wneg_elim(i, &a());
        ok(&g, &e, MTy::wneg(a()));
        assert!(is_intuitionistic(&e, &BTreeSet::new()));
    }

    #[test]
    fn contraposition_shapes() {
        let g = Context::from_entries(vec![("y".into(), MTy::wneg(Ty::var("q")))]);
        let t = Term::var("t");
        let g2 = g.with("t", MTy::wpos(Ty::var("q")));
        let pos = ccontrapose("x", "y", &t, &MTy::wpos(a()), Mode::WEAK_POS).unwrap();
        ok(&g2, &pos, MTy::wneg(a()));
        let neg = ccontrapose("x", "y", &t, &MTy::wneg(a()), Mode::WEAK_POS).unwrap();
        ok(&g2, &neg, MTy::wpos(a()));
        let useful = Term::wapp(Neg, Term::var("x"), Term::var("w"));
        assert!(contrapose(ContraKind::Intuitionistic, "x", "y", &useful, &MTy::wneg(a()), Mode::STRONG_NEG).is_err());
        assert!(contrapose(ContraKind::Classical, "x", "y", &useful, &MTy::wneg(a()), Mode::STRONG_NEG).is_ok());
    }
}
