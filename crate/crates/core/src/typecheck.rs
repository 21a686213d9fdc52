//! The typing judgment `Γ ⊢ t : P`.
//!
//! Checking is bidirectional: injections and packs cannot determine their
//! full type from their subterm, so they are checked against an expected
//! type. Every other constructor synthesizes. Scrutinees of the generalized
//! eliminators are checked against the type read off the binder
//! annotations, and the two sides of `℧` let one side fix the other.
//!
//! The same engine decides the inductive intuitionistic system when given a
//! counterfactual set (see [`crate::intuitionistic::check_prjv`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::pretty::{mty_to_string, Style};
use crate::syntax::{fresh_name, Context, Conn, MTy, Mode, Path, Quant, Sign, Term, Ty};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorKind {
    UnboundVar,
    ModeMismatch,
    SignMismatch,
    ConnectiveMismatch,
    FreshnessViolation,
    AnnotationMismatch,
    /// An injection or pack in a position that supplies no expected type.
    MissingAnnotation,
    /// A forbidden negative eliminator in a useful position.
    ForbiddenEliminator,
    /// A useful occurrence of a counterfactual variable.
    CounterfactualUse,
    /// A loose de Bruijn index.
    IllFormed,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub struct TypeError {
    pub kind: ErrorKind,
    pub rule: &'static str,
    pub path: Path,
    pub expected: Option<String>,
    pub found: Option<String>,
    pub detail: String,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in rule {} at {:?}", self.kind, self.rule, self.path)?;
        if let Some(e) = &self.expected {
            write!(f, ", expected {e}")?;
        }
        if let Some(x) = &self.found {
            write!(f, ", found {x}")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// A checked term with the type of every node, keyed by path in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elaborated {
    pub ctx: Context,
    pub term: Term,
    pub ty: MTy,
    pub nodes: BTreeMap<Path, MTy>,
}

/// Name of the typing rule that concludes with the root constructor of `t`.
pub fn rule_name(t: &Term) -> &'static str {
    use Sign::{Neg, Pos};
    match t {
        Term::Var(_) | Term::BVar(_) => "Ax",
        Term::Abort(..) => "Abs",
        Term::WLam(Pos, ..) => "I∘+",
        Term::WLam(Neg, ..) => "I∘-",
        Term::WApp(Pos, ..) => "E∘+",
        Term::WApp(Neg, ..) => "E∘-",
        Term::Pair(Pos, ..) => "I∧+",
        Term::Pair(Neg, ..) => "I∨-",
        Term::Proj(Pos, ..) => "E∧+",
        Term::Proj(Neg, ..) => "E∨-",
        Term::Inj(Pos, ..) => "I∨+",
        Term::Inj(Neg, ..) => "I∧-",
        Term::Case(Pos, ..) => "E∨+",
        Term::Case(Neg, ..) => "E∧-",
        Term::Lam(Pos, ..) => "I→+",
        Term::Lam(Neg, ..) => "I⋉-",
        Term::App(Pos, ..) => "E→+",
        Term::App(Neg, ..) => "E⋉-",
        Term::Copair(Pos, ..) => "I⋉+",
        Term::Copair(Neg, ..) => "I→-",
        Term::Colam(Pos, ..) => "E⋉+",
        Term::Colam(Neg, ..) => "E→-",
        Term::NegI(Pos, ..) => "I¬+",
        Term::NegI(Neg, ..) => "I¬-",
        Term::NegE(Pos, ..) => "E¬+",
        Term::NegE(Neg, ..) => "E¬-",
        Term::TLam(Pos, ..) => "I∀+",
        Term::TLam(Neg, ..) => "I∃-",
        Term::TApp(Pos, ..) => "E∀+",
        Term::TApp(Neg, ..) => "E∃-",
        Term::Pack(Pos, ..) => "I∃+",
        Term::Pack(Neg, ..) => "I∀-",
        Term::Unpack(Pos, ..) => "E∃+",
        Term::Unpack(Neg, ..) => "E∀-",
    }
}

type Res<T> = Result<T, TypeError>;

fn show(p: &MTy) -> String {
    mty_to_string(p, Style::Unicode)
}

/// Counterfactual set threaded through the inductive intuitionistic system;
/// `None` means plain classical checking.
type Cf<'a> = Option<&'a BTreeSet<String>>;

pub(crate) struct Checker {
    ctx: Vec<(String, MTy)>,
    used: BTreeSet<String>,
    tused: BTreeSet<String>,
    path: Path,
    nodes: BTreeMap<Path, MTy>,
}

impl Checker {
    pub(crate) fn new(ctx: &Context, t: &Term) -> Checker {
        let mut used = ctx.names();
        used.extend(t.free_vars());
        let mut tused = ctx.ftv();
        tused.extend(t.free_type_vars());
        Checker { ctx: ctx.entries().to_vec(), used, tused, path: Vec::new(), nodes: BTreeMap::new() }
    }

    fn err(&self, kind: ErrorKind, rule: &'static str, detail: impl Into<String>) -> TypeError {
        TypeError { kind, rule, path: self.path.clone(), expected: None, found: None, detail: detail.into() }
    }

    fn mismatch(&self, rule: &'static str, expected: &MTy, found: &MTy) -> TypeError {
        let kind = if expected.ty == found.ty {
            ErrorKind::ModeMismatch
        } else {
            ErrorKind::ConnectiveMismatch
        };
        TypeError {
            kind,
            rule,
            path: self.path.clone(),
            expected: Some(show(expected)),
            found: Some(show(found)),
            detail: String::new(),
        }
    }

    fn lookup(&self, x: &str) -> Option<&MTy> {
        self.ctx.iter().rev().find(|(n, _)| n == x).map(|(_, p)| p)
    }

    fn fresh(&mut self, hint: &str) -> String {
        let base = if hint.is_empty() || hint == "_" { "x" } else { hint };
        let n = fresh_name(base, &self.used);
        self.used.insert(n.clone());
        n
    }

    fn fresh_ty(&mut self, hint: &str) -> String {
        let base = if hint.is_empty() { "a" } else { hint };
        let n = fresh_name(base, &self.tused);
        self.tused.insert(n.clone());
        n
    }

    fn child<R>(&mut self, i: usize, f: impl FnOnce(&mut Checker) -> Res<R>) -> Res<R> {
        self.path.push(i);
        let r = f(self);
        self.path.pop();
        r
    }

    fn with_var<R>(&mut self, x: &str, p: MTy, f: impl FnOnce(&mut Checker) -> Res<R>) -> Res<R> {
        self.ctx.push((x.to_string(), p));
        let r = f(self);
        self.ctx.pop();
        r
    }

    /// Requires `found` to have the given mode; the pure type is returned.
    fn want_mode(&self, rule: &'static str, found: &MTy, mode: Mode) -> Res<Ty> {
        if found.mode == mode {
            Ok(found.ty.clone())
        } else {
            Err(self.mismatch(rule, &MTy::new(found.ty.clone(), mode), found))
        }
    }

    fn want_binary(&self, rule: &'static str, found: &MTy, conn: Conn, mode: Mode) -> Res<(Ty, Ty)> {
        let ty = self.want_mode(rule, found, mode)?;
        match ty.as_binary() {
            Some((c, a, b)) if c == conn => Ok((a.clone(), b.clone())),
            _ => Err(TypeError {
                kind: ErrorKind::ConnectiveMismatch,
                rule,
                path: self.path.clone(),
                expected: Some(format!("{conn:?}")),
                found: Some(show(found)),
                detail: String::new(),
            }),
        }
    }

    fn want_neg(&self, rule: &'static str, found: &MTy, mode: Mode) -> Res<Ty> {
        match self.want_mode(rule, found, mode)? {
            Ty::Neg(a) => Ok(*a),
            _ => Err(TypeError {
                kind: ErrorKind::ConnectiveMismatch,
                rule,
                path: self.path.clone(),
                expected: Some("negation".into()),
                found: Some(show(found)),
                detail: String::new(),
            }),
        }
    }

    /// Returns the quantifier's binder hint and unopened body.
    fn want_quant(&self, rule: &'static str, found: &MTy, q: Quant, mode: Mode) -> Res<(String, Ty)> {
        let ty = self.want_mode(rule, found, mode)?;
        match ty.as_quant() {
            Some((q2, h, b)) if q2 == q => Ok((h.as_str().to_string(), b.clone())),
            _ => Err(TypeError {
                kind: ErrorKind::ConnectiveMismatch,
                rule,
                path: self.path.clone(),
                expected: Some(format!("{q:?}")),
                found: Some(show(found)),
                detail: String::new(),
            }),
        }
    }

    fn want_sign(&self, rule: &'static str, exp: &MTy, sign: Sign, strength_weak: bool) -> Res<()> {
        let mode = if strength_weak { Mode::weak(sign) } else { Mode::strong(sign) };
        if exp.mode == mode {
            Ok(())
        } else if exp.mode.strength == mode.strength {
            Err(TypeError {
                kind: ErrorKind::SignMismatch,
                rule,
                path: self.path.clone(),
                expected: Some(show(exp)),
                found: Some(mode.superscript().into()),
                detail: "constructor sign disagrees with the expected mode".into(),
            })
        } else {
            Err(self.mismatch(rule, exp, &MTy::new(exp.ty.clone(), mode)))
        }
    }

    fn binder_mode(&self, rule: &'static str, ann: &MTy, mode: Mode) -> Res<Ty> {
        if ann.mode == mode {
            Ok(ann.ty.clone())
        } else {
            Err(TypeError {
                kind: ErrorKind::AnnotationMismatch,
                rule,
                path: self.path.clone(),
                expected: Some(mode.superscript().into()),
                found: Some(show(ann)),
                detail: "binder annotation has the wrong mode".into(),
            })
        }
    }

    fn synth(&mut self, t: &Term, cf: Cf) -> Res<MTy> {
        self.judge(t, None, cf)
    }

    fn check(&mut self, t: &Term, p: &MTy, cf: Cf) -> Res<MTy> {
        self.judge(t, Some(p), cf)
    }

    /// Synthesizes, or checks when `exp` is given; returns the type.
    pub(crate) fn judge(&mut self, t: &Term, exp: Option<&MTy>, cf: Cf) -> Res<MTy> {
        let rule = rule_name(t);
        let ty = self.rule(t, exp, cf, rule)?;
        if let Some(e) = exp {
            if *e != ty {
                return Err(self.mismatch(rule, e, &ty));
            }
        }
        self.nodes.insert(self.path.clone(), ty.clone());
        Ok(ty)
    }

    fn rule(&mut self, t: &Term, exp: Option<&MTy>, cf: Cf, rule: &'static str) -> Res<MTy> {
        use Sign::Pos;
        match t {
            Term::Var(x) => {
                if let Some(xs) = cf {
                    if xs.contains(x) {
                        return Err(self.err(
                            ErrorKind::CounterfactualUse,
                            "AxJ",
                            format!("useful occurrence of counterfactual {x}"),
                        ));
                    }
                }
                self.lookup(x).cloned().ok_or_else(|| self.err(ErrorKind::UnboundVar, rule, format!("unbound {x}")))
            }
            Term::BVar(i) => Err(self.err(ErrorKind::IllFormed, rule, format!("loose index {i}"))),
            Term::Abort(q, l, r) => {
                match self.child(0, |c| c.synth(l, cf)) {
                    Ok(lt) => {
                        let a = self.want_mode(rule, &lt, Mode::STRONG_POS)?;
                        self.child(1, |c| c.check(r, &MTy::neg(a), cf))?;
                    }
                    Err(e) if e.kind == ErrorKind::MissingAnnotation => {
                        let rt = self.child(1, |c| c.synth(r, cf))?;
                        let a = self.want_mode(rule, &rt, Mode::STRONG_NEG)?;
                        self.child(0, |c| c.check(l, &MTy::pos(a), cf))?;
                    }
                    Err(e) => return Err(e),
                }
                Ok(q.clone())
            }
            Term::WLam(g, b, body) => {
                let a = self.binder_mode(rule, &b.ty, Mode::weak(g.flip()))?;
                if let Some(e) = exp {
                    self.want_sign(rule, e, *g, true)?;
                }
                let x = self.fresh(b.hint.as_str());
                let opened = body.open(&Term::var(&x));
                let extended;
                let cf2 = match (cf, g) {
                    (Some(xs), Pos) => {
                        let mut s = xs.clone();
                        s.insert(x.clone());
                        extended = s;
                        Some(&extended)
                    }
                    _ => cf,
                };
                let target = MTy::strong(a.clone(), *g);
                self.with_var(&x, b.ty.clone(), |c| c.child(0, |c| c.check(&opened, &target, cf2)))?;
                Ok(MTy::weak(a, *g))
            }
            Term::WApp(g, l, r) => {
                let lt = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        self.child(0, |c| c.check(l, &MTy::weak(e.ty.clone(), *g), cf))?
                    }
                    None => self.child(0, |c| c.synth(l, cf))?,
                };
                let a = self.want_mode(rule, &lt, Mode::weak(*g))?;
                let cf_arg = if g.is_pos() { None } else { cf };
                self.child(1, |c| c.check(r, &MTy::weak(a.clone(), g.flip()), cf_arg))?;
                Ok(MTy::strong(a, *g))
            }
            Term::Pair(g, l, r) => {
                let conn = g.pick(Conn::And, Conn::Or);
                let (a, b) = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        let (a, b) = self.want_binary(rule, e, conn, Mode::strong(*g))?;
                        self.child(0, |c| c.check(l, &MTy::weak(a.clone(), *g), cf))?;
                        self.child(1, |c| c.check(r, &MTy::weak(b.clone(), *g), cf))?;
                        (a, b)
                    }
                    None => {
                        let lt = self.child(0, |c| c.synth(l, cf))?;
                        let a = self.want_mode(rule, &lt, Mode::weak(*g))?;
                        let rt = self.child(1, |c| c.synth(r, cf))?;
                        let b = self.want_mode(rule, &rt, Mode::weak(*g))?;
                        (a, b)
                    }
                };
                Ok(MTy::strong(Ty::binary(conn, a, b), *g))
            }
            Term::Proj(g, side, s) => {
                let conn = g.pick(Conn::And, Conn::Or);
                let st = self.child(0, |c| c.synth(s, cf))?;
                let (a, b) = self.want_binary(rule, &st, conn, Mode::strong(*g))?;
                Ok(MTy::weak(side.pick(a, b), *g))
            }
            Term::Inj(g, side, s) => {
                let conn = g.pick(Conn::Or, Conn::And);
                let e = exp.ok_or_else(|| {
                    self.err(ErrorKind::MissingAnnotation, rule, "injection needs an expected type")
                })?;
                self.want_sign(rule, e, *g, false)?;
                let (a, b) = self.want_binary(rule, e, conn, Mode::strong(*g))?;
                self.child(0, |c| c.check(s, &MTy::weak(side.pick(a, b), *g), cf))?;
                Ok(e.clone())
            }
            Term::Case(g, s, b1, l, b2, r) => {
                if let (Some(_), Sign::Neg) = (cf, g) {
                    return Err(self.err(ErrorKind::ForbiddenEliminator, rule, "negative case in PRJ"));
                }
                let conn = g.pick(Conn::Or, Conn::And);
                let a = self.binder_mode(rule, &b1.ty, Mode::weak(*g))?;
                let b = self.binder_mode(rule, &b2.ty, Mode::weak(*g))?;
                let scrut = MTy::strong(Ty::binary(conn, a, b), *g);
                self.child(0, |c| c.check(s, &scrut, cf))?;
                let x = self.fresh(b1.hint.as_str());
                let y = self.fresh(b2.hint.as_str());
                let lo = l.open(&Term::var(&x));
                let ro = r.open(&Term::var(&y));
                self.branches(exp, cf, (1, &x, &b1.ty, &lo), (2, &y, &b2.ty, &ro))
            }
            Term::Lam(g, b, body) => {
                let conn = g.pick(Conn::Imp, Conn::Coimp);
                let a = self.binder_mode(rule, &b.ty, Mode::weak(*g))?;
                let x = self.fresh(b.hint.as_str());
                let opened = body.open(&Term::var(&x));
                let body_exp = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        let (ea, eb) = self.want_binary(rule, e, conn, Mode::strong(*g))?;
                        if ea != a {
                            return Err(self.mismatch(rule, &MTy::weak(ea, *g), &b.ty));
                        }
                        Some(MTy::weak(eb, *g))
                    }
                    None => None,
                };
                let bt = self.with_var(&x, b.ty.clone(), |c| c.child(0, |c| c.judge(&opened, body_exp.as_ref(), cf)))?;
                let bty = self.want_mode(rule, &bt, Mode::weak(*g))?;
                Ok(MTy::strong(Ty::binary(conn, a, bty), *g))
            }
            Term::App(g, f, a) => {
                let conn = g.pick(Conn::Imp, Conn::Coimp);
                let ft = self.child(0, |c| c.synth(f, cf))?;
                let (dom, cod) = self.want_binary(rule, &ft, conn, Mode::strong(*g))?;
                self.child(1, |c| c.check(a, &MTy::weak(dom, *g), cf))?;
                Ok(MTy::weak(cod, *g))
            }
            Term::Copair(g, l, r) => {
                let conn = g.pick(Conn::Coimp, Conn::Imp);
                let (a, b) = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        let (a, b) = self.want_binary(rule, e, conn, Mode::strong(*g))?;
                        self.child(0, |c| c.check(l, &MTy::weak(a.clone(), g.flip()), cf))?;
                        self.child(1, |c| c.check(r, &MTy::weak(b.clone(), *g), cf))?;
                        (a, b)
                    }
                    None => {
                        let lt = self.child(0, |c| c.synth(l, cf))?;
                        let a = self.want_mode(rule, &lt, Mode::weak(g.flip()))?;
                        let rt = self.child(1, |c| c.synth(r, cf))?;
                        let b = self.want_mode(rule, &rt, Mode::weak(*g))?;
                        (a, b)
                    }
                };
                Ok(MTy::strong(Ty::binary(conn, a, b), *g))
            }
            Term::Colam(g, s, b1, b2, body) => {
                if let (Some(_), Sign::Neg) = (cf, g) {
                    return Err(self.err(ErrorKind::ForbiddenEliminator, rule, "negative colambda in PRJ"));
                }
                let conn = g.pick(Conn::Coimp, Conn::Imp);
                let a = self.binder_mode(rule, &b1.ty, Mode::weak(g.flip()))?;
                let b = self.binder_mode(rule, &b2.ty, Mode::weak(*g))?;
                let scrut = MTy::strong(Ty::binary(conn, a, b), *g);
                self.child(0, |c| c.check(s, &scrut, cf))?;
                let x = self.fresh(b1.hint.as_str());
                let y = self.fresh(b2.hint.as_str());
                let opened = body.open_at(1, &Term::var(&x)).open_at(0, &Term::var(&y));
                self.with_var(&x, b1.ty.clone(), |c| {
                    c.with_var(&y, b2.ty.clone(), |c| c.child(1, |c| c.judge(&opened, exp, cf)))
                })
            }
            Term::NegI(g, s) => {
                let a = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        let a = self.want_neg(rule, e, Mode::strong(*g))?;
                        self.child(0, |c| c.check(s, &MTy::weak(a.clone(), g.flip()), cf))?;
                        a
                    }
                    None => {
                        let st = self.child(0, |c| c.synth(s, cf))?;
                        self.want_mode(rule, &st, Mode::weak(g.flip()))?
                    }
                };
                Ok(MTy::strong(Ty::neg(a), *g))
            }
            Term::NegE(g, s) => {
                if let (Some(_), Sign::Neg) = (cf, g) {
                    return Err(self.err(ErrorKind::ForbiddenEliminator, rule, "negative negation elimination in PRJ"));
                }
                let st = self.child(0, |c| c.synth(s, cf))?;
                let a = self.want_neg(rule, &st, Mode::strong(*g))?;
                Ok(MTy::weak(a, g.flip()))
            }
            Term::TLam(g, h, body) => {
                let q = g.pick(Quant::Forall, Quant::Exists);
                let alpha = self.fresh_ty(h.as_str());
                let opened = body.open_ty(&Ty::var(&alpha));
                let body_exp = match exp {
                    Some(e) => {
                        self.want_sign(rule, e, *g, false)?;
                        let (_, b) = self.want_quant(rule, e, q, Mode::strong(*g))?;
                        Some(MTy::weak(b.open(&Ty::var(&alpha)), *g))
                    }
                    None => None,
                };
                let bt = self.child(0, |c| c.judge(&opened, body_exp.as_ref(), cf))?;
                let bty = self.want_mode(rule, &bt, Mode::weak(*g))?;
                Ok(MTy::strong(Ty::quant(q, &alpha, bty), *g))
            }
            Term::TApp(g, s, a) => {
                let q = g.pick(Quant::Forall, Quant::Exists);
                let st = self.child(0, |c| c.synth(s, cf))?;
                let (_, b) = self.want_quant(rule, &st, q, Mode::strong(*g))?;
                Ok(MTy::weak(b.open(a), *g))
            }
            Term::Pack(g, a, s) => {
                let q = g.pick(Quant::Exists, Quant::Forall);
                let e = exp
                    .ok_or_else(|| self.err(ErrorKind::MissingAnnotation, rule, "pack needs an expected type"))?;
                self.want_sign(rule, e, *g, false)?;
                let (_, b) = self.want_quant(rule, e, q, Mode::strong(*g))?;
                self.child(0, |c| c.check(s, &MTy::weak(b.open(a), *g), cf))?;
                Ok(e.clone())
            }
            Term::Unpack(g, s, h, b, body) => {
                if let (Some(_), Sign::Neg) = (cf, g) {
                    return Err(self.err(ErrorKind::ForbiddenEliminator, rule, "negative unpack in PRJ"));
                }
                let q = g.pick(Quant::Exists, Quant::Forall);
                let inner = self.binder_mode(rule, &b.ty, Mode::weak(*g))?;
                let scrut_ty = match q {
                    Quant::Exists => Ty::Exists(h.clone(), Box::new(inner.clone())),
                    Quant::Forall => Ty::Forall(h.clone(), Box::new(inner.clone())),
                };
                self.child(0, |c| c.check(s, &MTy::strong(scrut_ty, *g), cf))?;
                let alpha = self.fresh_ty(h.as_str());
                let x = self.fresh(b.hint.as_str());
                let xty = MTy::weak(inner.open(&Ty::var(&alpha)), *g);
                let opened = body.open_ty(&Ty::var(&alpha)).open(&Term::var(&x));
                let rt = self.with_var(&x, xty, |c| c.child(1, |c| c.judge(&opened, exp, cf)))?;
                if rt.ty.mentions(&alpha) {
                    return Err(TypeError {
                        kind: ErrorKind::FreshnessViolation,
                        rule,
                        path: self.path.clone(),
                        expected: None,
                        found: Some(show(&rt)),
                        detail: "the unpacked type variable escapes into the conclusion".into(),
                    });
                }
                Ok(rt)
            }
        }
    }

    /// Two branches of a case under their binders, sharing one conclusion.
    fn branches(
        &mut self,
        exp: Option<&MTy>,
        cf: Cf,
        left: (usize, &str, &MTy, &Term),
        right: (usize, &str, &MTy, &Term),
    ) -> Res<MTy> {
        let run = |c: &mut Checker, br: (usize, &str, &MTy, &Term), e: Option<&MTy>| {
            let (i, x, p, t) = br;
            c.with_var(x, p.clone(), |c| c.child(i, |c| c.judge(t, e, cf)))
        };
        match exp {
            Some(e) => {
                run(self, left, Some(e))?;
                run(self, right, Some(e))
            }
            None => match run(self, left, None) {
                Ok(lt) => run(self, right, Some(&lt)),
                Err(e) if e.kind == ErrorKind::MissingAnnotation => {
                    let rt = run(self, right, None)?;
                    run(self, left, Some(&rt))
                }
                Err(e) => Err(e),
            },
        }
    }

    pub(crate) fn into_nodes(self) -> BTreeMap<Path, MTy> {
        self.nodes
    }
}

/// Synthesizes the type of `t` under `ctx`.
pub fn infer(ctx: &Context, t: &Term) -> Result<MTy, TypeError> {
    Checker::new(ctx, t).synth(t, None)
}

/// Checks `t` against `p` and returns the elaborated judgment.
pub fn check(ctx: &Context, t: &Term, p: &MTy) -> Result<Elaborated, TypeError> {
    let mut c = Checker::new(ctx, t);
    let ty = c.check(t, p, None)?;
    Ok(Elaborated { ctx: ctx.clone(), term: t.clone(), ty, nodes: c.into_nodes() })
}

/// Checks when `p` is given, synthesizes otherwise.
pub fn elaborate(ctx: &Context, t: &Term, p: Option<&MTy>) -> Result<Elaborated, TypeError> {
    let mut c = Checker::new(ctx, t);
    let ty = c.judge(t, p, None)?;
    Ok(Elaborated { ctx: ctx.clone(), term: t.clone(), ty, nodes: c.into_nodes() })
}

/// Decides derivability in the inductive intuitionistic system with
/// counterfactual set `xs`.
pub(crate) fn derive_prjv(xs: &BTreeSet<String>, ctx: &Context, t: &Term, p: &MTy) -> Result<MTy, TypeError> {
    let mut c = Checker::new(ctx, t);
    c.used.extend(xs.iter().cloned());
    c.judge(t, Some(p), Some(xs))
}

/// The generalized absurdity `𝕒[q](t, s)` where `t` has mode `m` and `s`
/// has the opposite type.
pub fn absurd(q: MTy, m: Mode, t: Term, s: Term) -> Term {
    match (m.strength, m.sign) {
        (crate::syntax::Strength::Strong, Sign::Pos) => Term::abort(q, t, s),
        (crate::syntax::Strength::Strong, Sign::Neg) => Term::abort(q, s, t),
        (crate::syntax::Strength::Weak, Sign::Pos) => {
            Term::abort(q, Term::wapp(Sign::Pos, t.clone(), s.clone()), Term::wapp(Sign::Neg, s, t))
        }
        (crate::syntax::Strength::Weak, Sign::Neg) => {
            Term::abort(q, Term::wapp(Sign::Pos, s.clone(), t.clone()), Term::wapp(Sign::Neg, t, s))
        }
    }
}

/// Builds `𝕒[q](t, s)` after checking that `s` has the type opposite to
/// the one synthesized for `t` (or, failing that, the converse).
pub fn gen_absurdity(ctx: &Context, q: &MTy, t: &Term, s: &Term) -> Result<Term, TypeError> {
    let p = match infer(ctx, t) {
        Ok(p) => {
            check(ctx, s, &p.opposite())?;
            p
        }
        Err(e) if e.kind == ErrorKind::MissingAnnotation => {
            let ps = infer(ctx, s)?;
            let p = ps.opposite();
            check(ctx, t, &p)?;
            p
        }
        Err(e) => return Err(e),
    };
    Ok(absurd(q.clone(), p.mode, t.clone(), s.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sign::{Neg, Pos};

    fn a() -> Ty {
        Ty::var("a")
    }

    fn ctx(entries: &[(&str, MTy)]) -> Context {
        Context::from_entries(entries.iter().map(|(n, p)| (n.to_string(), p.clone())).collect())
    }

    fn top_proof() -> Term {
        let id = Ty::imp(a(), a());
        Term::tlam(
            Pos,
            "a",
            Term::wlam(Pos, "_", MTy::wneg(id), Term::lam(Pos, "x", MTy::wpos(a()), Term::var("x"))),
        )
    }

    #[test]
    fn axiom() {
        let g = ctx(&[("x", MTy::wpos(a()))]);
        assert_eq!(infer(&g, &Term::var("x")).unwrap(), MTy::wpos(a()));
    }

    #[test]
    fn polymorphic_identity_is_strong_universal() {
        let ty = infer(&Context::new(), &top_proof()).unwrap();
        assert_eq!(ty, MTy::pos(Ty::forall("a", Ty::imp(a(), a()))));
    }

    #[test]
    fn weak_elimination() {
        let g = ctx(&[("t", MTy::wpos(a())), ("s", MTy::wneg(a()))]);
        let t = Term::wapp(Pos, Term::var("t"), Term::var("s"));
        assert_eq!(infer(&g, &t).unwrap(), MTy::pos(a()));
    }

    #[test]
    fn wrong_mode_is_reported() {
        let g = ctx(&[("x", MTy::wpos(a()))]);
        let e = check(&g, &Term::var("x"), &MTy::wneg(a())).unwrap_err();
        assert_eq!(e.kind, ErrorKind::ModeMismatch);
    }

    #[test]
    fn injection_needs_expected_type() {
        let g = ctx(&[("x", MTy::wpos(a()))]);
        let t = Term::inj(Pos, crate::syntax::Side::Left, Term::var("x"));
        assert_eq!(infer(&g, &t).unwrap_err().kind, ErrorKind::MissingAnnotation);
        let p = MTy::pos(Ty::or(a(), Ty::var("b")));
        assert_eq!(check(&g, &t, &p).unwrap().ty, p);
    }

    #[test]
    fn absurdity_sides_infer_each_other() {
        let g = ctx(&[("x", MTy::wpos(a())), ("y", MTy::wneg(Ty::var("b")))]);
        let left = Term::inj(Pos, crate::syntax::Side::Left, Term::var("x"));
        let right = Term::pair(Neg, Term::var("z"), Term::var("y"));
        let g = g.with("z", MTy::wneg(a()));
        let t = Term::abort(MTy::wpos(Ty::var("c")), left, right);
        assert_eq!(infer(&g, &t).unwrap(), MTy::wpos(Ty::var("c")));
    }

    #[test]
    fn unpack_escape_is_a_freshness_violation() {
        let body = Ty::var("b");
        let g = ctx(&[("p", MTy::pos(Ty::exists("b", body.clone())))]);
        let t = Term::unpack(Pos, Term::var("p"), "b", "x", MTy::wpos(Ty::var("b")), Term::var("x"));
        assert_eq!(infer(&g, &t).unwrap_err().kind, ErrorKind::FreshnessViolation);
    }

    #[test]
    fn elaboration_records_every_node() {
        let t = top_proof();
        let e = check(&Context::new(), &t, &infer(&Context::new(), &t).unwrap()).unwrap();
        assert_eq!(e.nodes.len(), t.size());
        assert_eq!(e.nodes[&vec![0, 0]], MTy::pos(Ty::imp(Ty::var("a"), Ty::var("a"))));
    }

    #[test]
    fn absurdity_dispatch_by_mode() {
        let q = MTy::wpos(Ty::var("c"));
        let (t, s) = (Term::var("t"), Term::var("s"));
        assert_eq!(absurd(q.clone(), Mode::STRONG_POS, t.clone(), s.clone()), Term::abort(q.clone(), t.clone(), s.clone()));
        assert_eq!(absurd(q.clone(), Mode::STRONG_NEG, t.clone(), s.clone()), Term::abort(q.clone(), s.clone(), t.clone()));
        assert_eq!(
            absurd(q.clone(), Mode::WEAK_POS, t.clone(), s.clone()),
            Term::abort(q.clone(), Term::wapp(Pos, t.clone(), s.clone()), Term::wapp(Neg, s.clone(), t.clone()))
        );
        assert_eq!(
            absurd(q.clone(), Mode::WEAK_NEG, t.clone(), s.clone()),
            Term::abort(q, Term::wapp(Pos, s.clone(), t.clone()), Term::wapp(Neg, t, s))
        );
    }
}
