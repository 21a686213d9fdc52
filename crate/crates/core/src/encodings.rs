//! Böhm–Berarducci encodings of `∧`, `∨` and `∃` in the `{∀, →}`
//! fragment, their term constructions, and reduction experiments on the
//! composed introduction/elimination pairs.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::reduction::{normalize, redexes, Status, Strategy, DEFAULT_FUEL};
use crate::syntax::pretty::{term_to_string, ty_to_string, Style};
use crate::syntax::{fresh_name, Context, MTy, Mode, Path, Side, Sign, Term, Ty};
use crate::typecheck::{absurd, check, TypeError};

use Sign::{Neg, Pos};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("no encoding for {0}")]
    UnsupportedConnective(&'static str),
    #[error("type variable {0} would be captured")]
    Capture(String),
    #[error("construction does not check: {0}")]
    IllTyped(#[from] TypeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EncConn {
    And,
    Or,
    Exists,
}

impl EncConn {
    pub const ALL: [EncConn; 3] = [EncConn::And, EncConn::Or, EncConn::Exists];

    pub fn symbol(self) -> &'static str {
        match self {
            EncConn::And => "∧",
            EncConn::Or => "∨",
            EncConn::Exists => "∃",
        }
    }
}

impl fmt::Display for EncConn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncConn::And => "and",
            EncConn::Or => "or",
            EncConn::Exists => "exists",
        })
    }
}

impl std::str::FromStr for EncConn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "and" | "∧" => Ok(EncConn::And),
            "or" | "∨" => Ok(EncConn::Or),
            "exists" | "ex" | "∃" => Ok(EncConn::Exists),
            _ => Err(format!("unknown connective {s:?} (expected and, or, exists)")),
        }
    }
}

fn ftv_of(tys: &[&Ty], ts: &[&Term]) -> BTreeSet<String> {
    let mut acc = BTreeSet::new();
    for a in tys {
        acc.extend(a.ftv());
    }
    for t in ts {
        acc.extend(t.free_type_vars());
    }
    acc
}

fn fresh_tv(base: &str, tys: &[&Ty], ts: &[&Term]) -> String {
    fresh_name(base, &ftv_of(tys, ts))
}

fn fresh_v(base: &str, ts: &[&Term], extra: &[&str]) -> String {
    let mut av: BTreeSet<String> = ts.iter().flat_map(|t| t.free_vars()).collect();
    av.extend(extra.iter().map(|s| s.to_string()));
    fresh_name(base, &av)
}

fn imp(a: &Ty, b: &Ty) -> Ty {
    Ty::imp(a.clone(), b.clone())
}

/// `∀γ.((A₁ → A₂ → γ) → γ)`
pub fn and_ty(a1: &Ty, a2: &Ty) -> Ty {
    let g = fresh_tv("γ", &[a1, a2], &[]);
    let gv = Ty::var(&g);
    Ty::forall(&g, imp(&imp(a1, &imp(a2, &gv)), &gv))
}

/// `∀γ.((A₁ → γ) → (A₂ → γ) → γ)`
pub fn or_ty(a1: &Ty, a2: &Ty) -> Ty {
    let g = fresh_tv("γ", &[a1, a2], &[]);
    let gv = Ty::var(&g);
    Ty::forall(&g, imp(&imp(a1, &gv), &imp(&imp(a2, &gv), &gv)))
}

/// `∀β.((∀α.(A → β)) → β)` where `alpha` is free in `body`.
pub fn exists_ty(alpha: &str, body: &Ty) -> Ty {
    let mut av = body.ftv();
    av.insert(alpha.to_string());
    let b = fresh_name("β", &av);
    let bv = Ty::var(&b);
    Ty::forall(&b, imp(&Ty::forall(alpha, imp(body, &bv)), &bv))
}

/// Rewrites `∧`, `∨` and `∃` into `∀` and `→`, innermost first.
pub fn encode_type(a: &Ty) -> Result<Ty, EncodingError> {
    Ok(match a {
        Ty::Var(_) | Ty::Bound(_) => a.clone(),
        Ty::And(l, r) => and_ty(&encode_type(l)?, &encode_type(r)?),
        Ty::Or(l, r) => or_ty(&encode_type(l)?, &encode_type(r)?),
        Ty::Imp(l, r) => Ty::imp(encode_type(l)?, encode_type(r)?),
        Ty::Coimp(..) => return Err(EncodingError::UnsupportedConnective("⋉")),
        Ty::Neg(_) => return Err(EncodingError::UnsupportedConnective("¬")),
        Ty::Forall(h, body) => {
            let n = fresh_name(h.as_str(), &a.ftv());
            Ty::forall(&n, encode_type(&body.open(&Ty::var(&n)))?)
        }
        Ty::Exists(h, body) => {
            let n = fresh_name(h.as_str(), &a.ftv());
            exists_ty(&n, &encode_type(&body.open(&Ty::var(&n)))?)
        }
    })
}

/// The derived application `p @ q : B⊕` for `p : (A → B)⊕` and `q : A⊕`.
pub fn appc(p: &Term, q: &Term, a: &Ty, b: &Ty) -> Term {
    let x = fresh_v("x", &[p, q], &[]);
    let k = Term::wlam(Neg, "_", MTy::wpos(imp(a, b)), Term::copair(Neg, q.clone(), Term::var(&x)));
    let body = Term::wapp(Pos, Term::app(Pos, Term::wapp(Pos, p.clone(), k), q.clone()), Term::var(&x));
    Term::wlam(Pos, &x, MTy::wneg(b.clone()), body)
}

/// `λ∘⁺(_:Yᵢ⊖). λ⁺(y₁:A₁⊕). λ∘⁺(_:(A₂→Aᵢ)⊖). λ⁺(y₂:A₂⊕). yᵢ` with
/// `Yᵢ = A₁ → A₂ → Aᵢ`.
fn selector(side: Side, a1: &Ty, a2: &Ty) -> Term {
    let ai = side.pick(a1, a2);
    let yi = side.pick("y1", "y2");
    let inner = Term::lam(Pos, "y2", MTy::wpos(a2.clone()), Term::var(yi));
    let inner = Term::wlam(Pos, "_", MTy::wneg(imp(a2, ai)), inner);
    let outer = Term::lam(Pos, "y1", MTy::wpos(a1.clone()), inner);
    Term::wlam(Pos, "_", MTy::wneg(imp(a1, &imp(a2, ai))), outer)
}

/// Encoded `⟨t₁, t₂⟩⁺ : (A₁ ∧ A₂)⁺`.
pub fn pair_pos(t1: &Term, t2: &Term, a1: &Ty, a2: &Ty) -> Term {
    let al = fresh_tv("α", &[a1, a2], &[t1, t2]);
    let av = Ty::var(&al);
    let yty = imp(a1, &imp(a2, &av));
    let xty = imp(&yty, &av);
    let x = fresh_v("x", &[t1, t2], &[]);
    let y = fresh_v("y", &[t1, t2], &[&x]);
    let u = Term::wlam(Neg, "_", MTy::wpos(imp(a2, &av)), Term::copair(Neg, t2.clone(), Term::var(&y)));
    let k = Term::wlam(Neg, "_", MTy::wpos(yty.clone()), Term::copair(Neg, t1.clone(), u.clone()));
    let m = Term::wapp(Pos, Term::app(Pos, Term::wapp(Pos, Term::var(&x), k), t1.clone()), u);
    let body = Term::wapp(Pos, Term::app(Pos, m, t2.clone()), Term::var(&y));
    let body = Term::wlam(Pos, &y, MTy::wneg(av), body);
    let body = Term::lam(Pos, &x, MTy::wpos(yty), body);
    let body = Term::wlam(Pos, "_", MTy::wneg(xty), body);
    Term::tlam(Pos, &al, body)
}

/// Encoded `πᵢ⁺(s) : Aᵢ⊕` for `s : (A₁ ∧ A₂)⁺`.
pub fn proj_pos(side: Side, s: &Term, a1: &Ty, a2: &Ty) -> Term {
    let ai = side.pick(a1, a2);
    let x = fresh_v("x", &[s], &[]);
    let r = selector(side, a1, a2);
    let xi = imp(&imp(a1, &imp(a2, ai)), ai);
    let k = Term::wlam(Neg, "_", MTy::wpos(xi), Term::copair(Neg, r.clone(), Term::var(&x)));
    let m = Term::app(Pos, Term::wapp(Pos, Term::tapp(Pos, s.clone(), ai.clone()), k), r);
    Term::wlam(Pos, &x, MTy::wneg(ai.clone()), Term::wapp(Pos, m, Term::var(&x)))
}

/// Encoded `inᵢ⁻(t) : (A₁ ∧ A₂)⁻` for `t : Aᵢ⊖`.
pub fn inj_neg(side: Side, t: &Term, a1: &Ty, a2: &Ty) -> Term {
    let ai = side.pick(a1, a2);
    let r = selector(side, a1, a2);
    let xi = imp(&imp(a1, &imp(a2, ai)), ai);
    Term::pack(Neg, ai.clone(), Term::wlam(Neg, "_", MTy::wpos(xi), Term::copair(Neg, r, t.clone())))
}

/// Weak negative case on an encoded conjunction, concluding `C⊖`.
/// `sᵢ : C⊖` under `aᵢ : Aᵢ⊖`.
#[allow(clippy::too_many_arguments)]
pub fn case_neg(t: &Term, a1: &Ty, a2: &Ty, c_ty: &Ty, n1: &str, s1: &Term, n2: &str, s2: &Term) -> Term {
    let al = fresh_tv("α", &[a1, a2, c_ty], &[t, s1, s2]);
    let av = Ty::var(&al);
    let yty = imp(a1, &imp(a2, &av));
    let xty = imp(&yty, &av);
    let taken = [n1, n2];
    let x = fresh_v("x", &[t, s1, s2], &taken);
    let c = fresh_v("c", &[t, s1, s2], &[n1, n2, &x]);
    let z1 = fresh_v("z1", &[t, s1, s2], &[n1, n2, &x, &c]);
    let z2 = fresh_v("z2", &[t, s1, s2], &[n1, n2, &x, &c, &z1]);
    let y = fresh_v("y", &[], &[&z1, &z2]);
    let inner = appc(&appc(&Term::var(&y), &Term::var(&z1), a1, &imp(a2, &av)), &Term::var(&z2), a2, &av);
    let u = Term::wlam(Pos, "_", MTy::wneg(xty.clone()), Term::lam(Pos, &y, MTy::wpos(yty), inner));
    let k2 = absurd(MTy::neg(a2.clone()), Mode::WEAK_POS, u, Term::var(&x));
    let s2p = s2.subst(n2, &Term::wlam(Neg, &z2, MTy::wpos(a2.clone()), k2));
    let k1 = absurd(MTy::neg(a1.clone()), Mode::WEAK_NEG, s2p, Term::var(&c));
    let s1p = s1.subst(n1, &Term::wlam(Neg, &z1, MTy::wpos(a1.clone()), k1));
    let body = Term::wlam(Neg, &c, MTy::wpos(c_ty.clone()), Term::wapp(Neg, s1p, Term::var(&c)));
    Term::unpack(Neg, t.clone(), &al, &x, MTy::wneg(xty), body)
}

/// Encoded `inᵢ⁺(t) : (A₁ ∨ A₂)⁺` for `t : Aᵢ⊕`.
pub fn inj_pos(side: Side, t: &Term, a1: &Ty, a2: &Ty) -> Term {
    let ai = side.pick(a1, a2);
    let al = fresh_tv("α", &[a1, a2], &[t]);
    let av = Ty::var(&al);
    let y1 = fresh_v("y1", &[t], &[]);
    let y2 = fresh_v("y2", &[t], &[&y1]);
    let z = fresh_v("z", &[t], &[&y1, &y2]);
    let yi = side.pick(&y1, &y2);
    let k = Term::wlam(Neg, "_", MTy::wpos(imp(ai, &av)), Term::copair(Neg, t.clone(), Term::var(&z)));
    let u = Term::wapp(Pos, Term::app(Pos, Term::wapp(Pos, Term::var(yi), k), t.clone()), Term::var(&z));
    let xp = imp(&imp(a2, &av), &av);
    let xt = imp(&imp(a1, &av), &xp);
    let body = Term::wlam(Pos, &z, MTy::wneg(av.clone()), u);
    let body = Term::lam(Pos, &y2, MTy::wpos(imp(a2, &av)), body);
    let body = Term::wlam(Pos, "_", MTy::wneg(xp), body);
    let body = Term::lam(Pos, &y1, MTy::wpos(imp(a1, &av)), body);
    let body = Term::wlam(Pos, "_", MTy::wneg(xt), body);
    Term::tlam(Pos, &al, body)
}

/// Weak positive case on an encoded disjunction, concluding `B⊕`.
/// `sᵢ : B⊕` under `xᵢ : Aᵢ⊕`.
#[allow(clippy::too_many_arguments)]
pub fn case_pos(t: &Term, a1: &Ty, a2: &Ty, b: &Ty, x1: &str, s1: &Term, x2: &str, s2: &Term) -> Term {
    let y = fresh_v("y", &[t, s1, s2], &[x1, x2]);
    let r = |a: &Ty, x: &str, s: &Term| {
        Term::wlam(Pos, "_", MTy::wneg(imp(a, b)), Term::lam(Pos, x, MTy::wpos(a.clone()), s.clone()))
    };
    let r1 = r(a1, x1, s1);
    let r2 = r(a2, x2, s2);
    let tail = imp(&imp(a2, b), b);
    let xb = imp(&imp(a1, b), &tail);
    let p = Term::wlam(Neg, "_", MTy::wpos(tail), Term::copair(Neg, r2.clone(), Term::var(&y)));
    let k = Term::wlam(Neg, "_", MTy::wpos(xb), Term::copair(Neg, r1.clone(), p.clone()));
    let tp = Term::wapp(Pos, Term::tapp(Pos, t.clone(), b.clone()), k);
    let m = Term::app(Pos, Term::wapp(Pos, Term::app(Pos, tp, r1), p), r2);
    Term::wlam(Pos, &y, MTy::wneg(b.clone()), Term::wapp(Pos, m, Term::var(&y)))
}

/// Encoded `pack⁺[B](t) : (∃α.A)⁺` for `t : A{α:=B}⊕`.
pub fn pack_pos(b: &Ty, t: &Term, alpha: &str, a: &Ty) -> Term {
    let be = fresh_tv("β", &[a, b, &Ty::var(alpha)], &[t]);
    let bv = Ty::var(&be);
    let ab = a.subst(alpha, b);
    let yty = Ty::forall(alpha, imp(a, &bv));
    let xty = imp(&yty, &bv);
    let y = fresh_v("y", &[t], &[]);
    let z = fresh_v("z", &[t], &[&y]);
    let u = Term::wlam(Neg, "_", MTy::wpos(imp(&ab, &bv)), Term::copair(Neg, t.clone(), Term::var(&z)));
    let k = Term::wlam(Neg, "_", MTy::wpos(yty.clone()), Term::pack(Neg, b.clone(), u.clone()));
    let inst = Term::tapp(Pos, Term::wapp(Pos, Term::var(&y), k), b.clone());
    let tp = Term::app(Pos, Term::wapp(Pos, inst, u), t.clone());
    let body = Term::wlam(Pos, &z, MTy::wneg(bv), Term::wapp(Pos, tp, Term::var(&z)));
    let body = Term::lam(Pos, &y, MTy::wpos(yty), body);
    let body = Term::wlam(Pos, "_", MTy::wneg(xty), body);
    Term::tlam(Pos, &be, body)
}

/// Weak positive unpack of an encoded existential, concluding `C⊕`.
/// `s : C⊕` under `x : A⊕` with `α` free in `A`.
pub fn unpack_pos(t: &Term, alpha: &str, a: &Ty, c: &Ty, x: &str, s: &Term) -> Result<Term, EncodingError> {
    if c.mentions(alpha) {
        return Err(EncodingError::Capture(alpha.to_string()));
    }
    let z = fresh_v("z", &[t, s], &[x]);
    let yc = Ty::forall(alpha, imp(a, c));
    let xc = imp(&yc, c);
    let p = Term::lam(Pos, x, MTy::wpos(a.clone()), s.clone());
    let p = Term::wlam(Pos, "_", MTy::wneg(imp(a, c)), p);
    let p = Term::wlam(Pos, "_", MTy::wneg(yc), Term::tlam(Pos, alpha, p));
    let r = Term::wlam(Neg, "_", MTy::wpos(xc), Term::copair(Neg, p.clone(), Term::var(&z)));
    let m = Term::app(Pos, Term::wapp(Pos, Term::tapp(Pos, t.clone(), c.clone()), r), p);
    Ok(Term::wlam(Pos, &z, MTy::wneg(c.clone()), Term::wapp(Pos, m, Term::var(&z))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Role {
    Intro,
    Elim,
}

/// Payloads for one encoded rule. Types are taken as given; callers
/// wanting the fully encoded judgment pass encoded types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `t₁ : A₁⊕`, `t₂ : A₂⊕`
    AndIntroPos { t1: Term, t2: Term, a1: Ty, a2: Ty },
    /// `s : (A₁ ∧ A₂)⁺`
    AndElimPos { side: Side, s: Term, a1: Ty, a2: Ty },
    /// `t : Aᵢ⊖`
    AndIntroNeg { side: Side, t: Term, a1: Ty, a2: Ty },
    /// `t : (A₁ ∧ A₂)⁻`, `sᵢ : C⊖` under `nᵢ : Aᵢ⊖`
    AndElimNeg { t: Term, a1: Ty, a2: Ty, c: Ty, n1: String, s1: Term, n2: String, s2: Term },
    /// `t : Aᵢ⊕`
    OrIntroPos { side: Side, t: Term, a1: Ty, a2: Ty },
    /// `t : (A₁ ∨ A₂)⁺`, `sᵢ : B⊕` under `xᵢ : Aᵢ⊕`
    OrElimPos { t: Term, a1: Ty, a2: Ty, b: Ty, x1: String, s1: Term, x2: String, s2: Term },
    /// `t : A{α:=B}⊕`
    ExIntroPos { b: Ty, t: Term, alpha: String, a: Ty },
    /// `t : (∃α.A)⁺`, `s : C⊕` under `x : A⊕`
    ExElimPos { t: Term, alpha: String, a: Ty, c: Ty, x: String, s: Term },
}

impl Construction {
    pub fn connective(&self) -> EncConn {
        match self {
            Construction::AndIntroPos { .. }
            | Construction::AndElimPos { .. }
            | Construction::AndIntroNeg { .. }
            | Construction::AndElimNeg { .. } => EncConn::And,
            Construction::OrIntroPos { .. } | Construction::OrElimPos { .. } => EncConn::Or,
            Construction::ExIntroPos { .. } | Construction::ExElimPos { .. } => EncConn::Exists,
        }
    }

    pub fn sign(&self) -> Sign {
        match self {
            Construction::AndIntroNeg { .. } | Construction::AndElimNeg { .. } => Neg,
            _ => Pos,
        }
    }

    pub fn role(&self) -> Role {
        match self {
            Construction::AndIntroPos { .. }
            | Construction::AndIntroNeg { .. }
            | Construction::OrIntroPos { .. }
            | Construction::ExIntroPos { .. } => Role::Intro,
            _ => Role::Elim,
        }
    }

    /// The encoded type the construction is expected to have.
    pub fn conclusion(&self) -> MTy {
        match self {
            Construction::AndIntroPos { a1, a2, .. } => MTy::pos(and_ty(a1, a2)),
            Construction::AndElimPos { side, a1, a2, .. } => MTy::wpos(side.pick(a1, a2).clone()),
            Construction::AndIntroNeg { a1, a2, .. } => MTy::neg(and_ty(a1, a2)),
            Construction::AndElimNeg { c, .. } => MTy::wneg(c.clone()),
            Construction::OrIntroPos { a1, a2, .. } => MTy::pos(or_ty(a1, a2)),
            Construction::OrElimPos { b, .. } => MTy::wpos(b.clone()),
            Construction::ExIntroPos { alpha, a, .. } => MTy::pos(exists_ty(alpha, a)),
            Construction::ExElimPos { c, .. } => MTy::wpos(c.clone()),
        }
    }
}

/// Builds the term for a construction.
pub fn build_encoded(c: &Construction) -> Result<Term, EncodingError> {
    Ok(match c {
        Construction::AndIntroPos { t1, t2, a1, a2 } => pair_pos(t1, t2, a1, a2),
        Construction::AndElimPos { side, s, a1, a2 } => proj_pos(*side, s, a1, a2),
        Construction::AndIntroNeg { side, t, a1, a2 } => inj_neg(*side, t, a1, a2),
        Construction::AndElimNeg { t, a1, a2, c, n1, s1, n2, s2 } => case_neg(t, a1, a2, c, n1, s1, n2, s2),
        Construction::OrIntroPos { side, t, a1, a2 } => inj_pos(*side, t, a1, a2),
        Construction::OrElimPos { t, a1, a2, b, x1, s1, x2, s2 } => case_pos(t, a1, a2, b, x1, s1, x2, s2),
        Construction::ExIntroPos { b, t, alpha, a } => pack_pos(b, t, alpha, a),
        Construction::ExElimPos { t, alpha, a, c, x, s } => unpack_pos(t, alpha, a, c, x, s)?,
    })
}

/// Builds and checks a construction under `ctx`.
pub fn build_checked(ctx: &Context, c: &Construction) -> Result<Term, EncodingError> {
    let t = build_encoded(c)?;
    check(ctx, &t, &c.conclusion())?;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// The composite reduced to the expected right-hand side.
    Simulates { steps: usize, rules: Vec<String> },
    /// The composite reached a different normal form; `path` points at the
    /// eliminator left blocked on a non-introduction scrutinee.
    Stuck { normal_form: String, path: Path },
}

/// Result of [`simulate`] for one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub side: usize,
    pub composite: String,
    pub expected: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub connective: EncConn,
    pub sign: String,
    pub typed: bool,
    pub sides: Vec<SideReport>,
}

impl SimulationReport {
    pub fn simulates(&self) -> bool {
        self.sides.iter().all(|s| matches!(s.outcome, Outcome::Simulates { .. }))
    }

    pub fn stuck(&self) -> bool {
        self.sides.iter().all(|s| matches!(s.outcome, Outcome::Stuck { .. }))
    }
}

/// The composite for one side of an experiment, its context, its type
/// and the right-hand side of the simulated rule.
pub struct Experiment {
    pub ctx: Context,
    pub composite: Term,
    pub ty: MTy,
    pub expected: Term,
}

fn tv(n: &str) -> Ty {
    Ty::var(n)
}

/// Symbolic instance of `elim ∘ intro` for the given connective, sign and
/// side, with free variables standing for the payloads.
pub fn experiment(conn: EncConn, sign: Sign, side: Side) -> Result<Experiment, EncodingError> {
    let (a1, a2) = (tv("a"), tv("b"));
    let ai = side.pick(&a1, &a2).clone();
    match (conn, sign) {
        (EncConn::And, Pos) => {
            let ctx = Context::new().with("t1", MTy::wpos(a1.clone())).with("t2", MTy::wpos(a2.clone()));
            let pair = pair_pos(&Term::var("t1"), &Term::var("t2"), &a1, &a2);
            Ok(Experiment {
                ctx,
                composite: proj_pos(side, &pair, &a1, &a2),
                ty: MTy::wpos(ai),
                expected: Term::var(side.pick("t1", "t2")),
            })
        }
        (EncConn::And, Neg) => {
            let c = tv("c");
            let h = |a: &Ty| MTy::neg(Ty::coimp(a.clone(), c.clone()));
            let ctx = Context::new().with("t", MTy::wneg(ai.clone())).with("h1", h(&a1)).with("h2", h(&a2));
            let s1 = Term::app(Neg, Term::var("h1"), Term::var("a1"));
            let s2 = Term::app(Neg, Term::var("h2"), Term::var("a2"));
            let expected = side.pick(&s1, &s2).subst(side.pick("a1", "a2"), &Term::var("t"));
            let intro = inj_neg(side, &Term::var("t"), &a1, &a2);
            Ok(Experiment {
                ctx,
                composite: case_neg(&intro, &a1, &a2, &c, "a1", &s1, "a2", &s2),
                ty: MTy::wneg(c),
                expected,
            })
        }
        (EncConn::Or, Pos) => {
            let b = tv("c");
            let f = |a: &Ty| MTy::pos(Ty::imp(a.clone(), b.clone()));
            let ctx = Context::new().with("t", MTy::wpos(ai.clone())).with("f1", f(&a1)).with("f2", f(&a2));
            let s1 = Term::app(Pos, Term::var("f1"), Term::var("x1"));
            let s2 = Term::app(Pos, Term::var("f2"), Term::var("x2"));
            let expected = side.pick(&s1, &s2).subst(side.pick("x1", "x2"), &Term::var("t"));
            let intro = inj_pos(side, &Term::var("t"), &a1, &a2);
            Ok(Experiment {
                ctx,
                composite: case_pos(&intro, &a1, &a2, &b, "x1", &s1, "x2", &s2),
                ty: MTy::wpos(b),
                expected,
            })
        }
        (EncConn::Exists, Pos) => {
            let (alpha, b, c) = ("α", tv("b"), tv("c"));
            let a = Ty::imp(tv(alpha), tv("a"));
            let ab = a.subst(alpha, &b);
            let g = MTy::pos(Ty::forall(alpha, Ty::imp(a.clone(), c.clone())));
            let ctx = Context::new().with("t", MTy::wpos(ab)).with("g", g);
            let inst = |arg: &Ty| Term::tapp(Pos, Term::var("g"), arg.clone());
            let s = appc(&inst(&tv(alpha)), &Term::var("x"), &a, &c);
            let expected = appc(&inst(&b), &Term::var("t"), &a.subst(alpha, &b), &c);
            let intro = pack_pos(&b, &Term::var("t"), alpha, &a);
            Ok(Experiment { ctx, composite: unpack_pos(&intro, alpha, &a, &c, "x", &s)?, ty: MTy::wpos(c), expected })
        }
        (_, Neg) => Err(EncodingError::UnsupportedConnective(conn.symbol())),
    }
}

/// Leftmost eliminator whose principal argument is not an introduction.
fn blocked_eliminator(t: &Term) -> Path {
    t.paths()
        .into_iter()
        .find(|p| {
            let n = t.at(p).expect("path from paths()");
            let principal = match n {
                Term::Unpack(_, s, ..) | Term::Case(_, s, ..) | Term::Colam(_, s, ..) => s,
                Term::Proj(_, _, s) | Term::NegE(_, s) | Term::App(_, s, _) | Term::TApp(_, s, _) => s,
                _ => return false,
            };
            matches!(&**principal, Term::Abort(..) | Term::WApp(..) | Term::Var(_))
        })
        .unwrap_or_default()
}

fn run_side(conn: EncConn, sign: Sign, side: Side) -> Result<(bool, SideReport), EncodingError> {
    let ex = experiment(conn, sign, side)?;
    let typed = check(&ex.ctx, &ex.composite, &ex.ty).is_ok();
    let trace = normalize(&ex.composite, Strategy::LeftmostOutermost, DEFAULT_FUEL, true);
    let expected_nf = normalize(&ex.expected, Strategy::LeftmostOutermost, DEFAULT_FUEL, true);
    let result = trace.result();
    let outcome = if trace.status == Status::Normal && *result == *expected_nf.result() {
        Outcome::Simulates { steps: trace.len(), rules: trace.rules().iter().map(|r| r.name().to_string()).collect() }
    } else {
        debug_assert!(trace.status == Status::Normal && redexes(result, true).is_empty());
        Outcome::Stuck { normal_form: term_to_string(result, Style::Unicode), path: blocked_eliminator(result) }
    };
    let report = SideReport {
        side: side.index(),
        composite: term_to_string(&ex.composite, Style::Unicode),
        expected: term_to_string(&ex.expected, Style::Unicode),
        outcome,
    };
    Ok((typed, report))
}

/// Composes the encoded elimination with the encoded introduction on
/// symbolic payloads and normalizes with η∘ enabled.
pub fn simulate(conn: EncConn, sign: Sign) -> Result<SimulationReport, EncodingError> {
    let sides: &[Side] = match conn {
        EncConn::Exists => &[Side::Left],
        _ => &[Side::Left, Side::Right],
    };
    let mut typed = true;
    let mut out = Vec::new();
    for &side in sides {
        let (ok, r) = run_side(conn, sign, side)?;
        typed &= ok;
        out.push(r);
    }
    Ok(SimulationReport { connective: conn, sign: sign.pick("+", "-").to_string(), typed, sides: out })
}

/// Human-readable summary of an encoded type.
pub fn describe(conn: EncConn) -> String {
    let (a, b) = (tv("A"), tv("B"));
    let t = match conn {
        EncConn::And => and_ty(&a, &b),
        EncConn::Or => or_ty(&a, &b),
        EncConn::Exists => exists_ty("α", &Ty::var("A")),
    };
    ty_to_string(&t, Style::Unicode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Ty {
        Ty::var("a")
    }
    fn b() -> Ty {
        Ty::var("b")
    }

    #[test]
    fn encoded_type_shapes() {
        let s = |t: &Ty| ty_to_string(t, Style::Unicode);
        assert_eq!(s(&encode_type(&Ty::and(a(), b())).unwrap()), "∀γ. (a → b → γ) → γ");
        assert_eq!(s(&encode_type(&Ty::or(a(), b())).unwrap()), "∀γ. (a → γ) → (b → γ) → γ");
        let ex = Ty::exists("α", Ty::var("α"));
        assert_eq!(s(&encode_type(&ex).unwrap()), "∀β. (∀α. α → β) → β");
        assert_eq!(encode_type(&Ty::neg(a())), Err(EncodingError::UnsupportedConnective("¬")));
    }

    #[test]
    fn every_construction_checks() {
        let c = Ty::var("c");
        let ctx = Context::new()
            .with("t1", MTy::wpos(a()))
            .with("t2", MTy::wpos(b()))
            .with("p", MTy::pos(and_ty(&a(), &b())))
            .with("n", MTy::neg(and_ty(&a(), &b())))
            .with("q", MTy::pos(or_ty(&a(), &b())))
            .with("k", MTy::wneg(a()))
            .with("w", MTy::wneg(c.clone()))
            .with("v", MTy::wpos(c.clone()))
            .with("e", MTy::pos(exists_ty("α", &Ty::imp(Ty::var("α"), a()))));
        let cs = vec![
            Construction::AndIntroPos { t1: Term::var("t1"), t2: Term::var("t2"), a1: a(), a2: b() },
            Construction::AndElimPos { side: Side::Right, s: Term::var("p"), a1: a(), a2: b() },
            Construction::AndIntroNeg { side: Side::Left, t: Term::var("k"), a1: a(), a2: b() },
            Construction::AndElimNeg {
                t: Term::var("n"),
                a1: a(),
                a2: b(),
                c: c.clone(),
                n1: "m1".into(),
                s1: Term::var("w"),
                n2: "m2".into(),
                s2: Term::var("w"),
            },
            Construction::OrIntroPos { side: Side::Right, t: Term::var("t2"), a1: a(), a2: b() },
            Construction::OrElimPos {
                t: Term::var("q"),
                a1: a(),
                a2: b(),
                b: c.clone(),
                x1: "x1".into(),
                s1: Term::var("v"),
                x2: "x2".into(),
                s2: Term::var("v"),
            },
            Construction::ExIntroPos { b: b(), t: Term::var("t2"), alpha: "α".into(), a: Ty::var("α") },
            Construction::ExElimPos {
                t: Term::var("e"),
                alpha: "α".into(),
                a: Ty::imp(Ty::var("α"), a()),
                c: c.clone(),
                x: "x".into(),
                s: Term::var("v"),
            },
        ];
        for c in &cs {
            build_checked(&ctx, c).unwrap_or_else(|e| panic!("{:?} {:?}: {e}", c.connective(), c.role()));
        }
    }

    #[test]
    fn positive_half_simulates() {
        for conn in EncConn::ALL {
            let r = simulate(conn, Pos).unwrap();
            assert!(r.typed, "{conn}");
            assert!(r.simulates(), "{conn}: {:?}", r.sides);
        }
    }

    #[test]
    fn negative_conjunction_is_stuck() {
        let r = simulate(EncConn::And, Neg).unwrap();
        assert!(r.typed);
        assert!(r.stuck(), "{:?}", r.sides);
    }

    #[test]
    fn capture_is_refused() {
        let err = unpack_pos(&Term::var("e"), "α", &Ty::var("α"), &Ty::var("α"), "x", &Term::var("v"));
        assert_eq!(err, Err(EncodingError::Capture("α".into())));
    }
}
