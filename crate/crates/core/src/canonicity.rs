//! Normal-form classification, the shape of neutral terms, and extraction
//! of canonical proofs from closed terms.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::reduction::{normalize, Status, Strategy, DEFAULT_FUEL};
use crate::syntax::pretty::{mty_to_string, term_to_string, Style};
use crate::syntax::{fresh_name, Context, MTy, Path, Side, Sign, Term, Ty};
use crate::typecheck::{check, infer, TypeError};

/// Placeholder variable marking the hole of a critical context.
pub const HOLE: &str = "□";

/// Introduction shapes that make a term canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Head {
    Pair,
    Inj(Side),
    Lam,
    Copair,
    NegI,
    TLam,
    Pack,
    WLam,
}

impl Head {
    pub fn of(t: &Term) -> Option<(Head, Sign)> {
        let h = match t {
            Term::Pair(g, ..) => (Head::Pair, *g),
            Term::Inj(g, i, _) => (Head::Inj(*i), *g),
            Term::Lam(g, ..) => (Head::Lam, *g),
            Term::Copair(g, ..) => (Head::Copair, *g),
            Term::NegI(g, _) => (Head::NegI, *g),
            Term::TLam(g, ..) => (Head::TLam, *g),
            Term::Pack(g, ..) => (Head::Pack, *g),
            Term::WLam(g, ..) => (Head::WLam, *g),
            _ => return None,
        };
        Some(h)
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NormalClass {
    /// A normal term headed by an introduction.
    Canonical { head: Head, sign: Sign },
    /// A normal term generated by the neutral grammar.
    Neutral,
    /// Outside both grammars; `path` locates the innermost offending node.
    /// For typable terms this happens exactly when a redex is present.
    NotNormal { path: Path },
}

impl NormalClass {
    pub fn is_normal(&self) -> bool {
        !matches!(self, NormalClass::NotNormal { .. })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Neutral,
    Canonical,
}

fn shape(t: &Term, path: &mut Path) -> Result<Shape, Path> {
    fn sub(t: &Term, i: usize, path: &mut Path) -> Result<Shape, Path> {
        path.push(i);
        let r = shape(t, path);
        path.pop();
        r
    }
    let neutral = |t: &Term, i: usize, path: &mut Path| -> Result<(), Path> {
        match sub(t, i, path)? {
            Shape::Neutral => Ok(()),
            Shape::Canonical => Err(path.clone()),
        }
    };
    let children = t.children();
    let normal_from = |k: usize, path: &mut Path| -> Result<(), Path> {
        for (i, c) in children.iter().enumerate().skip(k) {
            sub(c, i, path)?;
        }
        Ok(())
    };
    match t {
        Term::Var(_) | Term::BVar(_) => Ok(Shape::Neutral),
        Term::Abort(_, a, b) => {
            let sa = sub(a, 0, path)?;
            let sb = sub(b, 1, path)?;
            if sa == Shape::Neutral || sb == Shape::Neutral {
                Ok(Shape::Neutral)
            } else {
                Err(path.clone())
            }
        }
        Term::Proj(_, _, e)
        | Term::Case(_, e, ..)
        | Term::App(_, e, _)
        | Term::Colam(_, e, ..)
        | Term::NegE(_, e)
        | Term::TApp(_, e, _)
        | Term::Unpack(_, e, ..)
        | Term::WApp(_, e, _) => {
            neutral(e, 0, path)?;
            normal_from(1, path)?;
            Ok(Shape::Neutral)
        }
        Term::Pair(..)
        | Term::Inj(..)
        | Term::Lam(..)
        | Term::Copair(..)
        | Term::NegI(..)
        | Term::TLam(..)
        | Term::Pack(..)
        | Term::WLam(..) => {
            normal_from(0, path)?;
            Ok(Shape::Canonical)
        }
    }
}

/// Classifies `t` by the grammars of neutral and normal terms, without
/// consulting the rewrite rules.
pub fn classify(t: &Term) -> NormalClass {
    match shape(t, &mut Vec::new()) {
        Ok(Shape::Neutral) => NormalClass::Neutral,
        Ok(Shape::Canonical) => {
            let (head, sign) = Head::of(t).expect("canonical shape has a head");
            NormalClass::Canonical { head, sign }
        }
        Err(path) => NormalClass::NotNormal { path },
    }
}

pub fn is_neutral(t: &Term) -> bool {
    classify(t) == NormalClass::Neutral
}

/// A neutral term split as `H[•±(x, p)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalDecomposition {
    /// The critical context, with [`HOLE`] in place of the weak application.
    pub context: Term,
    /// Position of the hole.
    pub path: Path,
    pub head: String,
    pub sign: Sign,
    /// Either a variable or a weak abstraction.
    pub capsule: Term,
}

impl CriticalDecomposition {
    /// `•±(x, p)`
    pub fn redex(&self) -> Term {
        Term::wapp(self.sign, Term::var(&self.head), self.capsule.clone())
    }

    /// Fills the hole, giving back the decomposed term.
    pub fn plug(&self) -> Term {
        let r = self.redex();
        self.context.rewrite_at(&self.path, &mut |_| Some(r.clone())).expect("hole path is valid")
    }

    pub fn context_string(&self, style: Style) -> String {
        term_to_string(&self.context, style)
    }
}

/// Result of [`decompose_neutral`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeutralShape {
    Variable(String),
    Critical(CriticalDecomposition),
}

pub fn is_capsule(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::WLam(..))
}

fn split(t: &Term) -> Option<(Path, String, Sign, Term)> {
    let within = |i: usize, c: &Term| {
        split(c).map(|(mut p, x, g, q)| {
            p.insert(0, i);
            (p, x, g, q)
        })
    };
    match t {
        Term::Abort(_, a, b) => {
            if is_neutral(a) {
                if let Some(r) = within(0, a) {
                    return Some(r);
                }
            }
            if is_neutral(b) {
                within(1, b)
            } else {
                None
            }
        }
        Term::WApp(g, e, f) => match &**e {
            Term::Var(x) if is_capsule(f) => Some((Vec::new(), x.clone(), *g, (**f).clone())),
            Term::Var(_) => within(1, f),
            _ => within(0, e),
        },
        Term::Proj(_, _, e)
        | Term::Case(_, e, ..)
        | Term::App(_, e, _)
        | Term::Colam(_, e, ..)
        | Term::NegE(_, e)
        | Term::TApp(_, e, _)
        | Term::Unpack(_, e, ..) => within(0, e),
        _ => None,
    }
}

/// Does `path` in `t` follow the critical-context grammar, with every
/// side argument normal?
pub fn is_critical_path(t: &Term, path: &[usize]) -> bool {
    let Some((&i, rest)) = path.split_first() else {
        return true;
    };
    let others_normal =
        t.children().iter().enumerate().filter(|(j, _)| *j != i).all(|(_, c)| classify(c).is_normal());
    let step_ok = match t {
        Term::Abort(..) => i < 2,
        Term::WApp(_, e, _) => i == 0 || matches!(&**e, Term::Var(_)),
        Term::Proj(..)
        | Term::Case(..)
        | Term::App(..)
        | Term::Colam(..)
        | Term::NegE(..)
        | Term::TApp(..)
        | Term::Unpack(..) => i == 0,
        _ => false,
    };
    step_ok && others_normal && t.child(i).is_some_and(|c| is_critical_path(c, rest))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("ill-typed: {0}")]
    IllTyped(#[from] TypeError),
    #[error("term is not closed (free: {0:?})")]
    NotClosed(Vec<String>),
    #[error("context is not weak")]
    NotWeakContext,
    #[error("term is not neutral")]
    NotNeutral,
    #[error("expected a weak type, got {0}")]
    NotWeak(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: usize },
    /// A situation the canonicity argument rules out; reaching it means a
    /// bug in the checker or the rewrite engine.
    #[error("kernel invariant violated: {0}")]
    Unsound(String),
}

/// Splits a neutral term typed under a weak context into a variable or a
/// critical context around `•±(x, p)` with `p` a capsule.
pub fn decompose_neutral(ctx: &Context, e: &Term) -> Result<NeutralShape, CanonError> {
    if !ctx.is_weak() {
        return Err(CanonError::NotWeakContext);
    }
    if !is_neutral(e) {
        return Err(CanonError::NotNeutral);
    }
    let p = infer(ctx, e)?;
    if let Term::Var(x) = e {
        if !p.is_weak() {
            return Err(CanonError::Unsound(format!("variable {x} at strong type under a weak context")));
        }
        return Ok(NeutralShape::Variable(x.clone()));
    }
    let (path, head, sign, capsule) =
        split(e).ok_or_else(|| CanonError::Unsound("neutral term without a critical redex".into()))?;
    let context = e.rewrite_at(&path, &mut |_| Some(Term::var(HOLE))).expect("split path is valid");
    Ok(NeutralShape::Critical(CriticalDecomposition { context, path, head, sign, capsule }))
}

/// A closed canonical normal form and the number of steps taken to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub term: Term,
    pub head: Head,
    pub sign: Sign,
    pub steps: usize,
}

fn closed_and_typed(t: &Term, p: &MTy) -> Result<(), CanonError> {
    let fv = t.free_vars();
    if !fv.is_empty() {
        return Err(CanonError::NotClosed(fv.into_iter().collect()));
    }
    check(&Context::new(), t, p)?;
    Ok(())
}

pub fn canonicalize(t: &Term, p: &MTy) -> Result<Canonical, CanonError> {
    canonicalize_with(t, p, Strategy::LeftmostOutermost, DEFAULT_FUEL)
}

/// Normalizes a closed term of type `p` and confirms the normal form is
/// canonical and still has type `p`.
pub fn canonicalize_with(t: &Term, p: &MTy, strategy: Strategy, fuel: usize) -> Result<Canonical, CanonError> {
    closed_and_typed(t, p)?;
    let trace = normalize(t, strategy, fuel, false);
    if trace.status == Status::FuelExhausted {
        return Err(CanonError::FuelExhausted { steps: trace.len() });
    }
    let f = trace.result().clone();
    if let Err(e) = check(&Context::new(), &f, p) {
        return Err(CanonError::Unsound(format!("normal form lost its type: {e}")));
    }
    match classify(&f) {
        NormalClass::Canonical { head, sign } => Ok(Canonical { term: f, head, sign, steps: trace.len() }),
        NormalClass::Neutral => Err(CanonError::Unsound(format!(
            "closed normal form is neutral: {}",
            term_to_string(&f, Style::Unicode)
        ))),
        NormalClass::NotNormal { path } => {
            Err(CanonError::Unsound(format!("normal form rejected by the grammar at {path:?}")))
        }
    }
}

/// A canonical proof of `strong(P)` under one counterfactual `x : P~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub var: String,
    pub var_ty: MTy,
    pub body: Term,
    pub head: Head,
    /// Capsules unwrapped before reaching a canonical body.
    pub rounds: usize,
    pub steps: usize,
}

impl Witness {
    /// `λ∘±(x:P~).t′`
    pub fn closed(&self) -> Term {
        Term::wlam(self.var_ty.sign().flip(), &self.var, self.var_ty.clone(), self.body.clone())
    }
}

pub fn witness(t: &Term, p: &MTy) -> Result<Witness, CanonError> {
    witness_with(t, p, Strategy::LeftmostOutermost, DEFAULT_FUEL)
}

/// Extracts a canonical body for a closed term of weak type by peeling
/// capsules off neutral bodies until an introduction surfaces.
pub fn witness_with(t: &Term, p: &MTy, strategy: Strategy, fuel: usize) -> Result<Witness, CanonError> {
    if !p.is_weak() {
        return Err(CanonError::NotWeak(mty_to_string(p, Style::Unicode)));
    }
    let canon = canonicalize_with(t, p, strategy, fuel)?;
    let Term::WLam(_, _, body) = &canon.term else {
        return Err(CanonError::Unsound("canonical form at a weak type is not a weak abstraction".into()));
    };
    let neg = p.opposite();
    let strong = p.to_strong();
    let mut names: Vec<String> = Vec::new();
    let mut used = BTreeSet::new();
    let mut open = |body: &Term, names: &mut Vec<String>| {
        let y = fresh_name("y", &used);
        used.insert(y.clone());
        names.push(y.clone());
        body.open(&Term::var(&y))
    };
    let mut cur = open(body, &mut names);
    let mut rounds = 0;
    loop {
        let ctx = Context::from_entries(names.iter().map(|y| (y.clone(), neg.clone())).collect());
        match classify(&cur) {
            NormalClass::Canonical { head, .. } => {
                let x = fresh_name("x", &BTreeSet::new());
                let x = if names.contains(&x) { fresh_name("x", &names.iter().cloned().collect()) } else { x };
                let body = names.iter().fold(cur, |acc, y| acc.rename(y, &x));
                let w = Witness { var: x, var_ty: neg.clone(), body, head, rounds, steps: canon.steps };
                let single = Context::new().with(w.var.clone(), neg.clone());
                if let Err(e) = check(&single, &w.body, &strong) {
                    return Err(CanonError::Unsound(format!("witness body does not check: {e}")));
                }
                if let Err(e) = check(&Context::new(), &w.closed(), p) {
                    return Err(CanonError::Unsound(format!("closed witness does not check: {e}")));
                }
                return Ok(w);
            }
            NormalClass::Neutral => {
                let NeutralShape::Critical(d) = decompose_neutral(&ctx, &cur)? else {
                    return Err(CanonError::Unsound("variable body at a strong type".into()));
                };
                if !names.contains(&d.head) {
                    return Err(CanonError::Unsound(format!("head {} is not a counterfactual", d.head)));
                }
                let Term::WLam(_, _, inner) = &d.capsule else {
                    return Err(CanonError::Unsound("capsule is a variable at the weak type".into()));
                };
                let next = open(inner, &mut names);
                if next.size() >= cur.size() {
                    return Err(CanonError::Unsound("witness loop did not shrink the body".into()));
                }
                cur = next;
                rounds += 1;
            }
            NormalClass::NotNormal { path } => {
                return Err(CanonError::Unsound(format!("body rejected by the grammar at {path:?}")));
            }
        }
    }
}

/// The injection chosen by a weak proof of a disjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctionChoice {
    pub side: Side,
    pub payload: Term,
    pub witness: Witness,
}

impl DisjunctionChoice {
    /// 1 or 2.
    pub fn index(&self) -> usize {
        self.side.index()
    }
}

pub fn disjunction_choice(t: &Term, p: &MTy) -> Result<DisjunctionChoice, CanonError> {
    if !(matches!(p.ty, Ty::Or(..)) && p.is_weak() && p.sign() == Sign::Pos) {
        return Err(CanonError::Precondition(format!(
            "expected (A ∨ B)⊕, got {}",
            mty_to_string(p, Style::Unicode)
        )));
    }
    let w = witness(t, p)?;
    match &w.body {
        Term::Inj(Sign::Pos, side, s) => Ok(DisjunctionChoice { side: *side, payload: (**s).clone(), witness: w }),
        _ => Err(CanonError::Unsound("canonical proof of a disjunction is not an injection".into())),
    }
}

/// The type packed by a weak proof of an existential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistentialWitness {
    pub ty: Ty,
    pub payload: Term,
    pub witness: Witness,
}

pub fn existential_witness(t: &Term, p: &MTy) -> Result<ExistentialWitness, CanonError> {
    if !(matches!(p.ty, Ty::Exists(..)) && p.is_weak() && p.sign() == Sign::Pos) {
        return Err(CanonError::Precondition(format!(
            "expected (∃α.A)⊕, got {}",
            mty_to_string(p, Style::Unicode)
        )));
    }
    let w = witness(t, p)?;
    match &w.body {
        Term::Pack(Sign::Pos, a, s) => Ok(ExistentialWitness { ty: a.clone(), payload: (**s).clone(), witness: w }),
        _ => Err(CanonError::Unsound("canonical proof of an existential is not a pack".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::lem_p;
    use crate::reduction::is_normal;
    use crate::syntax::Mode;

    fn a() -> Ty {
        Ty::var("a")
    }

    fn top() -> Ty {
        Ty::forall("α", Ty::imp(Ty::var("α"), Ty::var("α")))
    }

    fn top_proof() -> Term {
        let aa = Ty::imp(Ty::var("α"), Ty::var("α"));
        let id = Term::lam(Sign::Pos, "x", MTy::wpos(Ty::var("α")), Term::var("x"));
        let inner = Term::wlam(Sign::Pos, "_", MTy::wneg(aa), id);
        Term::wlam(Sign::Pos, "_", MTy::wneg(top()), Term::tlam(Sign::Pos, "α", inner))
    }

    #[test]
    fn classify_oracles() {
        let pair = Term::pair(Sign::Pos, Term::var("x"), Term::var("y"));
        assert_eq!(classify(&pair), NormalClass::Canonical { head: Head::Pair, sign: Sign::Pos });
        let k = Term::wlam(Sign::Neg, "y", MTy::wpos(a()), Term::var("y"));
        assert_eq!(classify(&Term::wapp(Sign::Pos, Term::var("x"), k)), NormalClass::Neutral);
        let id = Term::wlam(Sign::Pos, "x", MTy::wneg(a()), Term::var("x"));
        let r = Term::wapp(Sign::Pos, id, Term::var("y"));
        assert_eq!(classify(&r), NormalClass::NotNormal { path: vec![] });
        assert!(!is_normal(&r, false));
    }

    #[test]
    fn decomposition_at_the_root() {
        let ctx = Context::new().with("x", MTy::wneg(a())).with("w", MTy::wpos(a()));
        let body = Term::wapp(Sign::Pos, Term::var("w"), Term::var("z"));
        let e = Term::wapp(Sign::Neg, Term::var("x"), Term::wlam(Sign::Pos, "z", MTy::wneg(a()), body));
        match decompose_neutral(&ctx, &e) {
            Ok(NeutralShape::Critical(d)) => {
                assert_eq!(d.path, Vec::<usize>::new());
                assert_eq!(d.head, "x");
                assert!(is_capsule(&d.capsule));
                assert_eq!(d.plug(), e);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decomposition_under_projection() {
        let pa = Ty::or(a(), a());
        let ctx = Context::new().with("x", MTy::wneg(pa.clone())).with("w", MTy::wpos(a()));
        let k = Term::wlam(Sign::Pos, "z", MTy::wneg(pa), Term::inj(Sign::Pos, Side::Left, Term::var("w")));
        let inner = Term::wapp(Sign::Neg, Term::var("x"), k);
        let e = Term::proj(Sign::Neg, Side::Left, inner);
        let NeutralShape::Critical(d) = decompose_neutral(&ctx, &e).unwrap() else { panic!() };
        assert_eq!(d.path, vec![0]);
        assert_eq!(d.context, Term::proj(Sign::Neg, Side::Left, Term::var(HOLE)));
        assert_eq!(d.plug(), e);
        assert!(is_critical_path(&e, &d.path));
    }

    #[test]
    fn decomposition_rejects_strong_contexts() {
        let ctx = Context::new().with("x", MTy::pos(a()));
        assert_eq!(decompose_neutral(&ctx, &Term::var("x")), Err(CanonError::NotWeakContext));
    }

    #[test]
    fn lem_p_commits_to_the_right_disjunct() {
        let p = MTy::wpos(Ty::or(a(), Ty::neg(a())));
        let c = canonicalize(&lem_p(&a()), &p).unwrap();
        assert_eq!(c.head, Head::WLam);
        let d = disjunction_choice(&lem_p(&a()), &p).unwrap();
        assert_eq!(d.index(), 2);
        let ctx = Context::new().with(d.witness.var.clone(), p.opposite());
        check(&ctx, &d.payload, &MTy::wpos(Ty::neg(a()))).unwrap();
    }

    #[test]
    fn top_witness_is_a_type_abstraction() {
        let p = MTy::wpos(top());
        let w = witness(&top_proof(), &p).unwrap();
        assert_eq!(w.head, Head::TLam);
        assert_eq!(w.rounds, 0);
    }

    #[test]
    fn existential_of_packed_identity() {
        let b = Ty::var("b");
        let ex = Ty::exists("α", Ty::imp(Ty::var("α"), Ty::var("α")));
        let id = Term::lam(Sign::Pos, "u", MTy::wpos(b.clone()), Term::var("u"));
        let idw = Term::wlam(Sign::Pos, "_", MTy::wneg(Ty::imp(b.clone(), b.clone())), id);
        let t = Term::wlam(Sign::Pos, "_", MTy::wneg(ex.clone()), Term::pack(Sign::Pos, b.clone(), idw));
        let r = existential_witness(&t, &MTy::wpos(ex)).unwrap();
        assert_eq!(r.ty, b);
    }

    #[test]
    fn strong_types_are_rejected_by_witness() {
        let p = MTy::new(top(), Mode::strong(Sign::Pos));
        assert!(matches!(witness(&top_proof(), &p), Err(CanonError::NotWeak(_))));
    }

    #[test]
    fn nothing_inhabits_a_bare_variable() {
        let p = MTy::pos(a());
        let err = canonicalize(&Term::var("x"), &p).unwrap_err();
        assert!(matches!(err, CanonError::NotClosed(_)));
    }
}
