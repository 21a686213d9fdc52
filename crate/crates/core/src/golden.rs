//! Worked judgments with known types: truth and ex falso, the reduction
//! example, and every proof-term builder instantiated at its stated type.

use crate::embeddings::builders::{
    app_c, appt_c, bot_elim, case_c, case_j, ccontrapose, colam_c, copair_c, icontrapose, inj_c, lam_c, lamt_c,
    neglam_c, negap_c, opt_c, pair_c, pat_c, proj_c, CaseArgs,
};
use crate::embeddings::{bottom, lem_n, lem_p, wneg_elim, wneg_intro, DEFAULT_ALPHA0};
use crate::reduction::RuleName;
use crate::syntax::{Context, MTy, Mode, Side, Sign, Term, Ty};
use crate::typecheck::absurd;

use Sign::{Neg, Pos};

/// `⊤ = ∀α.(α → α)`
pub fn top_ty() -> Ty {
    Ty::forall("α", Ty::imp(Ty::var("α"), Ty::var("α")))
}

/// `⊥ = ∀α.α`
pub fn bot_ty() -> Ty {
    Ty::forall("α", Ty::var("α"))
}

/// `⊢ λ∘⁺(_:⊤⊖). Λ⁺α. λ∘⁺(_:(α→α)⊖). λ⁺(x:α⊕). x : ⊤⊕`
pub fn top_proof() -> Term {
    let al = Ty::var("α");
    let id = Term::lam(Pos, "x", MTy::wpos(al.clone()), Term::var("x"));
    let inner = Term::wlam(Pos, "_", MTy::wneg(Ty::imp(al.clone(), al)), id);
    Term::wlam(Pos, "_", MTy::wneg(top_ty()), Term::tlam(Pos, "α", inner))
}

/// `x : ⊥⊕ ⊢ 𝕒[A⊕](x, λ∘⁻(_:⊥⊕). pack⁻[A ∧ ¬A](lemN(A))) : A⊕`
pub fn ex_falso(x: &str, a: &Ty) -> Term {
    let refute = Term::wlam(Neg, "_", MTy::wpos(bot_ty()), Term::pack(Neg, Ty::and(a.clone(), Ty::neg(a.clone())), lem_n(a)));
    absurd(MTy::wpos(a.clone()), Mode::WEAK_POS, Term::var(x), refute)
}

/// The reduction example: with `t : A⊕` and `s : A⊖`,
/// `℧[q](Λ⁺α. λ∘⁺(_). λ⁺(x:α⊕).x ; pack⁻[A](λ∘⁻(_). copair⁻(t, s)))`.
pub fn reduction_example(a: &Ty, q: MTy, t: Term, s: Term) -> Term {
    let al = Ty::var("α");
    let id = Term::lam(Pos, "x", MTy::wpos(al.clone()), Term::var("x"));
    let left = Term::tlam(Pos, "α", Term::wlam(Pos, "_", MTy::wneg(Ty::imp(al.clone(), al)), id));
    let aa = Ty::imp(a.clone(), a.clone());
    let right = Term::pack(Neg, a.clone(), Term::wlam(Neg, "_", MTy::wpos(aa), Term::copair(Neg, t, s)));
    Term::abort(q, left, right)
}

/// Rule sequence of the reduction example under leftmost-outermost order.
pub const REDUCTION_RULES: [RuleName; 4] =
    [RuleName::AbsAll, RuleName::BetaWeak(Pos), RuleName::BetaWeak(Neg), RuleName::AbsImp];

/// Final term of the reduction example: `℧[q](•⁺(t, s), •⁻(s, t))`.
pub fn reduction_result(q: MTy, t: Term, s: Term) -> Term {
    absurd(q, Mode::WEAK_POS, t, s)
}

/// A named judgment `Γ ⊢ term : ty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma {
    pub name: &'static str,
    pub ctx: Context,
    pub term: Term,
    pub ty: MTy,
}

fn lemma(name: &'static str, ctx: &[(&str, MTy)], term: Term, ty: MTy) -> Lemma {
    Lemma { name, ctx: Context::from_entries(ctx.iter().map(|(x, p)| (x.to_string(), p.clone())).collect()), term, ty }
}

fn v(x: &str) -> Term {
    Term::var(x)
}

/// The worked judgments and every builder instantiated with `a` and `b`.
/// `a` and `b` must not mention the type variables `γ` or `bot0`.
pub fn lemmas(a: &Ty, b: &Ty) -> Vec<Lemma> {
    let (wp, wn) = (MTy::wpos, MTy::wneg);
    let or_ab = Ty::or(a.clone(), b.clone());
    let and_ab = Ty::and(a.clone(), b.clone());
    let or_ba = Ty::or(b.clone(), a.clone());
    let na = Ty::neg(a.clone());
    let bot0 = bottom(DEFAULT_ALPHA0);
    let g = Ty::var("γ");
    let case_args = || CaseArgs {
        t: v("t"),
        a,
        b,
        c: &or_ba,
        x: "x",
        s: inj_c(Side::Right, v("x"), b, a),
        u: inj_c(Side::Left, v("x"), b, a),
    };
    let fa_gb = Ty::forall("γ", Ty::imp(g.clone(), b.clone()));
    let ex_gb = Ty::exists("γ", Ty::and(g.clone(), b.clone()));
    let ex_g = Ty::exists("γ", g.clone());
    vec![
        lemma("top", &[], top_proof(), wp(top_ty())),
        lemma("ex-falso", &[("x", wp(bot_ty()))], ex_falso("x", a), wp(a.clone())),
        lemma("lemP", &[], lem_p(a), wp(Ty::or(a.clone(), na.clone()))),
        lemma("lemN", &[], lem_n(a), wn(Ty::and(a.clone(), na.clone()))),
        lemma("wneg-intro", &[("t", wn(a.clone()))], wneg_intro(v("t"), a), wp(na.clone())),
        lemma("wneg-elim", &[("t", wp(na.clone()))], wneg_elim(v("t"), a), wn(a.clone())),
        lemma(
            "ccontrapose",
            &[("y", wn(na.clone()))],
            ccontrapose("x", "y", &wneg_intro(v("x"), a), &wn(a.clone()), Mode::WEAK_POS).expect("weak"),
            wp(a.clone()),
        ),
        lemma(
            "icontrapose",
            &[("y", wn(or_ab.clone()))],
            icontrapose("x", "y", &inj_c(Side::Left, v("x"), a, b), a, Mode::WEAK_POS),
            wn(a.clone()),
        ),
        lemma("pair", &[("t", wp(a.clone())), ("s", wp(b.clone()))], pair_c(v("t"), v("s"), a, b), wp(and_ab.clone())),
        lemma("proj1", &[("t", wp(and_ab.clone()))], proj_c(Side::Left, v("t"), a, b), wp(a.clone())),
        lemma("proj2", &[("t", wp(and_ab))], proj_c(Side::Right, v("t"), a, b), wp(b.clone())),
        lemma("inj1", &[("t", wp(a.clone()))], inj_c(Side::Left, v("t"), a, b), wp(or_ab.clone())),
        lemma("inj2", &[("t", wp(b.clone()))], inj_c(Side::Right, v("t"), a, b), wp(or_ab.clone())),
        lemma("case", &[("t", wp(or_ab.clone()))], case_c(case_args()), wp(or_ba.clone())),
        lemma("case-j", &[("t", wp(or_ab))], case_j(case_args()), wp(or_ba)),
        lemma("lam", &[], lam_c("x", v("x"), a, a), wp(Ty::imp(a.clone(), a.clone()))),
        lemma(
            "app",
            &[("p", wp(Ty::imp(a.clone(), b.clone()))), ("q", wp(a.clone()))],
            app_c(v("p"), v("q"), a, b),
            wp(b.clone()),
        ),
        lemma(
            "copair",
            &[("t", wp(na.clone())), ("s", wp(b.clone()))],
            copair_c(v("t"), v("s"), a, b),
            wp(Ty::coimp(a.clone(), b.clone())),
        ),
        lemma(
            "colam",
            &[("t", wp(Ty::coimp(a.clone(), b.clone())))],
            colam_c(v("t"), a, b, &Ty::and(na.clone(), b.clone()), "x", "y", pair_c(v("x"), v("y"), &na, b)),
            wp(Ty::and(na.clone(), b.clone())),
        ),
        lemma(
            "neglam",
            &[("f", wp(Ty::imp(a.clone(), bot0.clone())))],
            neglam_c("x", app_c(v("f"), v("x"), a, &bot0), a, DEFAULT_ALPHA0),
            wp(na.clone()),
        ),
        lemma(
            "negap",
            &[("t", wp(na)), ("s", wp(a.clone()))],
            negap_c(v("t"), v("s"), a, DEFAULT_ALPHA0),
            wp(bot0.clone()),
        ),
        lemma(
            "lamt",
            &[],
            lamt_c("γ", lam_c("x", v("x"), &g, &g), &Ty::imp(g.clone(), g.clone())),
            wp(Ty::forall("γ", Ty::imp(g.clone(), g.clone()))),
        ),
        lemma(
            "appt",
            &[("t", wp(fa_gb.clone()))],
            appt_c(v("t"), &fa_gb, a).expect("universal"),
            wp(Ty::imp(a.clone(), b.clone())),
        ),
        lemma("pat", &[("t", wp(a.clone()))], pat_c(a, &ex_g, v("t")), wp(ex_g)),
        lemma(
            "opt",
            &[("t", wp(ex_gb.clone()))],
            opt_c(v("t"), &ex_gb, "γ", "x", proj_c(Side::Right, v("x"), &g, b), b).expect("existential"),
            wp(b.clone()),
        ),
        lemma("bot-elim", &[("t", wp(bot0))], bot_elim(v("t"), a, DEFAULT_ALPHA0), wp(a.clone())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{normalize, Strategy, DEFAULT_FUEL};
    use crate::typecheck::check;

    #[test]
    fn every_lemma_checks() {
        let (a, b) = (Ty::var("a"), Ty::imp(Ty::var("b"), Ty::var("a")));
        for l in lemmas(&a, &b) {
            if let Err(e) = check(&l.ctx, &l.term, &l.ty) {
                panic!("{}: {e}", l.name);
            }
        }
    }

    #[test]
    fn reduction_example_trace() {
        let a = Ty::var("a");
        let q = MTy::pos(Ty::var("c"));
        let t0 = reduction_example(&a, q.clone(), v("t"), v("s"));
        let ctx = Context::from_entries(vec![("t".into(), MTy::wpos(a.clone())), ("s".into(), MTy::wneg(a))]);
        check(&ctx, &t0, &q).unwrap();
        let tr = normalize(&t0, Strategy::LeftmostOutermost, DEFAULT_FUEL, false);
        assert_eq!(tr.rules(), REDUCTION_RULES.to_vec());
        assert_eq!(*tr.result(), reduction_result(q, v("t"), v("s")));
    }
}
