//! Compiling natural-deduction derivations into proof terms.

use std::collections::BTreeSet;

use crate::syntax::{Context, MTy, Side, Term, Ty};

use super::builders::{self, CaseArgs};
use super::nd::{conclusion, Logic, NdDerivation, NdError, NdFormula, NdProof, NdRule, Sequent, BOTTOM};

pub const DEFAULT_ALPHA0: &str = "bot0";

/// The term proving a translated sequent `x₁ : A₁⊕, …, xₙ : Aₙ⊕ ⊢ t : B⊕`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedded {
    pub sequent: Sequent,
    pub ctx: Context,
    pub term: Term,
    pub ty: MTy,
}

/// Replaces falsity by `α₀ ∧ ¬α₀`.
pub fn translate(a: &NdFormula, alpha0: &str) -> Ty {
    a.subst(BOTTOM, &builders::bottom(alpha0))
}

struct Embedder<'a> {
    logic: Logic,
    alpha0: &'a str,
    counter: usize,
}

impl Embedder<'_> {
    fn tr(&self, a: &NdFormula) -> Ty {
        translate(a, self.alpha0)
    }

    fn hyp_name(&mut self) -> String {
        self.counter += 1;
        format!("h{}", self.counter)
    }

    fn sub(&mut self, env: &mut Vec<(String, NdFormula)>, extra: Vec<(String, NdFormula)>, p: &NdProof) -> (Term, NdFormula) {
        let n = env.len();
        env.extend(extra);
        let r = self.go(env, p);
        env.truncate(n);
        r
    }

    /// Builds the term of an already validated proof.
    fn go(&mut self, env: &mut Vec<(String, NdFormula)>, p: &NdProof) -> (Term, NdFormula) {
        let prem = &p.premises;
        match &p.rule {
            NdRule::Ax(i) => {
                let (x, a) = env[i - 1].clone();
                (Term::var(x), a)
            }
            NdRule::BotE(a) => {
                let (t, _) = self.go(env, &prem[0]);
                (builders::bot_elim(t, &self.tr(a), self.alpha0), a.clone())
            }
            NdRule::AndI => {
                let (t, a) = self.go(env, &prem[0]);
                let (s, b) = self.go(env, &prem[1]);
                (builders::pair_c(t, s, &self.tr(&a), &self.tr(&b)), Ty::and(a, b))
            }
            NdRule::AndE(side) => {
                let (t, ab) = self.go(env, &prem[0]);
                let (a1, a2) = split(&ab);
                let out = builders::proj_c(*side, t, &self.tr(&a1), &self.tr(&a2));
                (out, side.pick(a1, a2))
            }
            NdRule::OrI(side, other) => {
                let (t, a) = self.go(env, &prem[0]);
                let (a1, a2) = match side {
                    Side::Left => (a, other.clone()),
                    Side::Right => (other.clone(), a),
                };
                let out = builders::inj_c(*side, t, &self.tr(&a1), &self.tr(&a2));
                (out, Ty::or(a1, a2))
            }
            NdRule::OrE => {
                let (t, ab) = self.go(env, &prem[0]);
                let (a, b) = split(&ab);
                let x = self.hyp_name();
                let (s, c) = self.sub(env, vec![(x.clone(), a.clone())], &prem[1]);
                let (u, _) = self.sub(env, vec![(x.clone(), b.clone())], &prem[2]);
                let (ta, tb, tc) = (self.tr(&a), self.tr(&b), self.tr(&c));
                let args = CaseArgs { t, a: &ta, b: &tb, c: &tc, x: &x, s, u };
                let out = match self.logic {
                    Logic::NK => builders::case_c(args),
                    Logic::NJ => builders::case_j(args),
                };
                (out, c)
            }
            NdRule::ImpI(a) => {
                let x = self.hyp_name();
                let (t, b) = self.sub(env, vec![(x.clone(), a.clone())], &prem[0]);
                (builders::lam_c(&x, t, &self.tr(a), &self.tr(&b)), Ty::imp(a.clone(), b))
            }
            NdRule::ImpE => {
                let (f, ab) = self.go(env, &prem[0]);
                let (q, _) = self.go(env, &prem[1]);
                let (a, b) = split(&ab);
                (builders::app_c(f, q, &self.tr(&a), &self.tr(&b)), b)
            }
            NdRule::CoimpI => {
                let (t, na) = self.go(env, &prem[0]);
                let (s, b) = self.go(env, &prem[1]);
                let a = match na {
                    Ty::Neg(a) => *a,
                    _ => unreachable!("validated"),
                };
                (builders::copair_c(t, s, &self.tr(&a), &self.tr(&b)), Ty::coimp(a, b))
            }
            NdRule::CoimpE => {
                let (t, ab) = self.go(env, &prem[0]);
                let (a, b) = split(&ab);
                let x = self.hyp_name();
                let y = self.hyp_name();
                let extra = vec![(x.clone(), Ty::neg(a.clone())), (y.clone(), b.clone())];
                let (s, c) = self.sub(env, extra, &prem[1]);
                let out = builders::colam_c(t, &self.tr(&a), &self.tr(&b), &self.tr(&c), &x, &y, s);
                (out, c)
            }
            NdRule::NotI(a) => {
                let x = self.hyp_name();
                let (t, _) = self.sub(env, vec![(x.clone(), a.clone())], &prem[0]);
                (builders::neglam_c(&x, t, &self.tr(a), self.alpha0), Ty::neg(a.clone()))
            }
            NdRule::NotE => {
                let (t, _) = self.go(env, &prem[0]);
                let (s, a) = self.go(env, &prem[1]);
                (builders::negap_c(t, s, &self.tr(&a), self.alpha0), Ty::var(BOTTOM))
            }
            NdRule::AllI(alpha) => {
                let (t, a) = self.go(env, &prem[0]);
                (builders::lamt_c(alpha, t, &self.tr(&a)), Ty::forall(alpha, a))
            }
            NdRule::AllE(arg) => {
                let (t, all) = self.go(env, &prem[0]);
                let out = builders::appt_c(t, &self.tr(&all), &self.tr(arg)).expect("validated");
                let body = match &all {
                    Ty::Forall(_, b) => b.open(arg),
                    _ => unreachable!("validated"),
                };
                (out, body)
            }
            NdRule::ExI(witness, ex) => {
                let (t, _) = self.go(env, &prem[0]);
                (builders::pat_c(&self.tr(witness), &self.tr(ex), t), ex.clone())
            }
            NdRule::ExE(alpha) => {
                let (t, ex) = self.go(env, &prem[0]);
                let body = match &ex {
                    Ty::Exists(_, b) => b.open(&Ty::var(alpha)),
                    _ => unreachable!("validated"),
                };
                let x = self.hyp_name();
                let (s, b) = self.sub(env, vec![(x.clone(), body)], &prem[1]);
                let out = builders::opt_c(t, &self.tr(&ex), alpha, &x, s, &self.tr(&b)).expect("validated");
                (out, b)
            }
            NdRule::Lem(a) => (builders::lem_p(&self.tr(a)), Ty::or(a.clone(), Ty::neg(a.clone()))),
        }
    }
}

fn split(a: &Ty) -> (Ty, Ty) {
    match a.as_binary() {
        Some((_, l, r)) => (l.clone(), r.clone()),
        None => unreachable!("validated"),
    }
}

/// Validates `d` in `logic` and compiles it, with falsity translated via
/// the base variable `alpha0`.
pub fn embed_with(d: &NdDerivation, logic: Logic, alpha0: &str) -> Result<Embedded, NdError> {
    let reserved: BTreeSet<String> = [alpha0.to_string()].into();
    let concl = conclusion(&d.hyps, &d.proof, logic, &reserved)?;
    let mut env: Vec<(String, NdFormula)> =
        d.hyps.iter().enumerate().map(|(i, a)| (format!("x{}", i + 1), a.clone())).collect();
    let mut e = Embedder { logic, alpha0, counter: 0 };
    let (term, _) = e.go(&mut env, &d.proof);
    let ctx = Context::from_entries(env.iter().map(|(x, a)| (x.clone(), MTy::wpos(translate(a, alpha0)))).collect());
    let ty = MTy::wpos(translate(&concl, alpha0));
    Ok(Embedded { sequent: Sequent { hyps: d.hyps.clone(), concl }, ctx, term, ty })
}

pub fn embed(d: &NdDerivation, logic: Logic) -> Result<Embedded, NdError> {
    embed_with(d, logic, DEFAULT_ALPHA0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intuitionistic::check_prj;
    use crate::typecheck::check;

    fn a() -> Ty {
        Ty::var("a")
    }

    fn leaf(r: NdRule) -> NdProof {
        NdProof::leaf(r)
    }

    fn node(r: NdRule, ps: Vec<NdProof>) -> NdProof {
        NdProof::new(r, ps)
    }

    fn check_both(hyps: Vec<Ty>, proof: NdProof) {
        let d = NdDerivation { name: "t".into(), hyps, proof };
        for logic in [Logic::NK, Logic::NJ] {
            let e = embed(&d, logic).unwrap();
            if let Err(err) = check(&e.ctx, &e.term, &e.ty) {
                panic!("{logic:?}: {} fails: {err}", e.term);
            }
            if logic == Logic::NJ {
                assert!(check_prj(&e.ctx, &e.term, &e.ty).unwrap(), "not intuitionistic: {}", e.term);
            }
        }
    }

    #[test]
    fn axiom_is_a_variable() {
        let d = NdDerivation { name: "t".into(), hyps: vec![a()], proof: leaf(NdRule::Ax(1)) };
        assert_eq!(embed(&d, Logic::NJ).unwrap().term, Term::var("x1"));
    }

    #[test]
    fn every_rule_embeds() {
        let b = Ty::var("b");
        let bot = Ty::var(BOTTOM);
        let ax = |i| leaf(NdRule::Ax(i));
        check_both(vec![a(), b.clone()], node(NdRule::AndI, vec![ax(1), ax(2)]));
        check_both(vec![Ty::and(a(), b.clone())], node(NdRule::AndE(Side::Right), vec![ax(1)]));
        check_both(vec![a()], node(NdRule::OrI(Side::Left, b.clone()), vec![ax(1)]));
        check_both(
            vec![Ty::or(a(), b.clone())],
            node(
                NdRule::OrE,
                vec![ax(1), node(NdRule::OrI(Side::Right, b.clone()), vec![ax(2)]), node(NdRule::OrI(Side::Left, a()), vec![ax(2)])],
            ),
        );
        check_both(vec![], node(NdRule::ImpI(a()), vec![ax(1)]));
        check_both(vec![Ty::imp(a(), b.clone()), a()], node(NdRule::ImpE, vec![ax(1), ax(2)]));
        check_both(vec![Ty::neg(a()), b.clone()], node(NdRule::CoimpI, vec![ax(1), ax(2)]));
        check_both(vec![Ty::coimp(a(), b.clone())], node(NdRule::CoimpE, vec![ax(1), ax(3)]));
        check_both(vec![Ty::coimp(a(), b.clone())], node(NdRule::CoimpE, vec![ax(1), ax(2)]));
        check_both(vec![Ty::neg(a()), a()], node(NdRule::NotE, vec![ax(1), ax(2)]));
        check_both(vec![bot.clone()], node(NdRule::BotE(a()), vec![ax(1)]));
        check_both(vec![], node(NdRule::NotI(bot.clone()), vec![ax(1)]));
        let id = node(NdRule::ImpI(a()), vec![ax(1)]);
        check_both(vec![], node(NdRule::AllI("a".into()), vec![id]));
        let all = Ty::forall("c", Ty::imp(Ty::var("c"), Ty::var("c")));
        check_both(vec![all], node(NdRule::AllE(b.clone()), vec![ax(1)]));
        let ex = Ty::exists("c", Ty::imp(Ty::var("c"), b.clone()));
        check_both(vec![Ty::imp(a(), b.clone())], node(NdRule::ExI(a(), ex.clone()), vec![ax(1)]));
        let use_it = node(NdRule::OrI(Side::Left, a()), vec![ax(2)]);
        let ex2 = Ty::exists("c", b.clone());
        check_both(vec![ex2], node(NdRule::ExE("d".into()), vec![ax(1), use_it]));
    }

    #[test]
    fn excluded_middle_embeds_classically() {
        let d = NdDerivation { name: "t".into(), hyps: vec![], proof: leaf(NdRule::Lem(a())) };
        let e = embed(&d, Logic::NK).unwrap();
        assert_eq!(e.term, builders::lem_p(&a()));
        assert!(check(&e.ctx, &e.term, &e.ty).is_ok());
        assert!(embed(&d, Logic::NJ).is_err());
    }
}
