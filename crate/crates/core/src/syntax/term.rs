use std::collections::BTreeSet;
use std::fmt;

use super::types::{Hint, MTy, Sign, Ty};

/// A term binder: display hint plus its mandatory moded-type annotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binder {
    pub hint: Hint,
    pub ty: MTy,
}

impl Binder {
    pub fn new(name: &str, ty: MTy) -> Binder {
        Binder { hint: Hint::new(name), ty }
    }
}

/// Component selector of projections and injections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Left => 1,
            Side::Right => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Side> {
        match i {
            1 => Some(Side::Left),
            2 => Some(Side::Right),
            _ => None,
        }
    }

    pub fn pick<T>(self, left: T, right: T) -> T {
        match self {
            Side::Left => left,
            Side::Right => right,
        }
    }
}

/// Proof terms. Free variables are named; bound term variables are de
/// Bruijn indices counting enclosing term binders. Type annotations use the
/// same discipline for type variables, counting enclosing type binders.
///
/// Child order (used by paths): `Abort[t,s]`, `WLam[body]`, `WApp[t,s]`,
/// `Pair[t,s]`, `Proj[t]`, `Inj[t]`, `Case[scrut,left,right]`, `Lam[body]`,
/// `App[t,s]`, `Copair[t,s]`, `Colam[scrut,body]`, `NegI[t]`, `NegE[t]`,
/// `TLam[body]`, `TApp[t]`, `Pack[t]`, `Unpack[scrut,body]`.
///
/// In `Colam` the body sees the first binder as index 1 and the second as
/// index 0. In `Unpack` the binder annotation and the body are both under
/// the type binder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    BVar(usize),
    Abort(MTy, Box<Term>, Box<Term>),
    WLam(Sign, Binder, Box<Term>),
    WApp(Sign, Box<Term>, Box<Term>),
    Pair(Sign, Box<Term>, Box<Term>),
    Proj(Sign, Side, Box<Term>),
    Inj(Sign, Side, Box<Term>),
    Case(Sign, Box<Term>, Binder, Box<Term>, Binder, Box<Term>),
    Lam(Sign, Binder, Box<Term>),
    App(Sign, Box<Term>, Box<Term>),
    Copair(Sign, Box<Term>, Box<Term>),
    Colam(Sign, Box<Term>, Binder, Binder, Box<Term>),
    NegI(Sign, Box<Term>),
    NegE(Sign, Box<Term>),
    TLam(Sign, Hint, Box<Term>),
    TApp(Sign, Box<Term>, Ty),
    Pack(Sign, Ty, Box<Term>),
    Unpack(Sign, Box<Term>, Hint, Binder, Box<Term>),
}

/// Position of a subterm: child indices from the root.
pub type Path = Vec<usize>;

/// A binder crossed when entering a child, with its index inside that child.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossed {
    Term(usize),
    Type(usize),
}

fn bx(t: Term) -> Box<Term> {
    Box::new(t)
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn abort(q: MTy, t: Term, s: Term) -> Term {
        Term::Abort(q, bx(t), bx(s))
    }

    pub fn wlam(sign: Sign, x: &str, ty: MTy, body: Term) -> Term {
        Term::WLam(sign, Binder::new(x, ty), bx(body.close(x)))
    }

    pub fn wapp(sign: Sign, t: Term, s: Term) -> Term {
        Term::WApp(sign, bx(t), bx(s))
    }

    pub fn pair(sign: Sign, t: Term, s: Term) -> Term {
        Term::Pair(sign, bx(t), bx(s))
    }

    pub fn proj(sign: Sign, side: Side, t: Term) -> Term {
        Term::Proj(sign, side, bx(t))
    }

    pub fn inj(sign: Sign, side: Side, t: Term) -> Term {
        Term::Inj(sign, side, bx(t))
    }

    #[allow(clippy::too_many_arguments)]
    pub fn case(sign: Sign, t: Term, x: &str, tx: MTy, s: Term, y: &str, ty: MTy, u: Term) -> Term {
        Term::Case(sign, bx(t), Binder::new(x, tx), bx(s.close(x)), Binder::new(y, ty), bx(u.close(y)))
    }

    pub fn lam(sign: Sign, x: &str, ty: MTy, body: Term) -> Term {
        Term::Lam(sign, Binder::new(x, ty), bx(body.close(x)))
    }

    pub fn app(sign: Sign, t: Term, s: Term) -> Term {
        Term::App(sign, bx(t), bx(s))
    }

    pub fn copair(sign: Sign, t: Term, s: Term) -> Term {
        Term::Copair(sign, bx(t), bx(s))
    }

    pub fn colam(sign: Sign, t: Term, x: &str, tx: MTy, y: &str, ty: MTy, body: Term) -> Term {
        assert!(x != y || x == "_", "colam binders must be distinct");
        let body = body.close_at(1, x).close_at(0, y);
        Term::Colam(sign, bx(t), Binder::new(x, tx), Binder::new(y, ty), bx(body))
    }

    pub fn negi(sign: Sign, t: Term) -> Term {
        Term::NegI(sign, bx(t))
    }

    pub fn nege(sign: Sign, t: Term) -> Term {
        Term::NegE(sign, bx(t))
    }

    pub fn tlam(sign: Sign, alpha: &str, body: Term) -> Term {
        Term::TLam(sign, Hint::new(alpha), bx(body.close_ty(alpha)))
    }

    pub fn tapp(sign: Sign, t: Term, a: Ty) -> Term {
        Term::TApp(sign, bx(t), a)
    }

    pub fn pack(sign: Sign, a: Ty, t: Term) -> Term {
        Term::Pack(sign, a, bx(t))
    }

    pub fn unpack(sign: Sign, t: Term, alpha: &str, x: &str, tx: MTy, body: Term) -> Term {
        let tx = tx.map_ty(|ty| ty.close(alpha));
        let body = body.close_ty(alpha).close(x);
        Term::Unpack(sign, bx(t), Hint::new(alpha), Binder::new(x, tx), bx(body))
    }

    /// Immediate children in path order (bodies are returned unopened).
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::BVar(_) => vec![],
            Term::Abort(_, t, s)
            | Term::WApp(_, t, s)
            | Term::Pair(_, t, s)
            | Term::App(_, t, s)
            | Term::Copair(_, t, s) => vec![t, s],
            Term::WLam(_, _, t)
            | Term::Proj(_, _, t)
            | Term::Inj(_, _, t)
            | Term::Lam(_, _, t)
            | Term::NegI(_, t)
            | Term::NegE(_, t)
            | Term::TLam(_, _, t)
            | Term::TApp(_, t, _)
            | Term::Pack(_, _, t) => vec![t],
            Term::Case(_, t, _, s, _, u) => vec![t, s, u],
            Term::Colam(_, t, _, _, s) | Term::Unpack(_, t, _, _, s) => vec![t, s],
        }
    }

    pub fn child(&self, i: usize) -> Option<&Term> {
        self.children().get(i).copied()
    }

    /// Binders crossed when entering child `i`.
    pub fn crossed(&self, i: usize) -> &'static [Crossed] {
        match (self, i) {
            (Term::WLam(..), 0) | (Term::Lam(..), 0) | (Term::Case(..), 1) | (Term::Case(..), 2) => {
                &[Crossed::Term(0)]
            }
            (Term::Colam(..), 1) => &[Crossed::Term(1), Crossed::Term(0)],
            (Term::TLam(..), 0) => &[Crossed::Type(0)],
            (Term::Unpack(..), 1) => &[Crossed::Type(0), Crossed::Term(0)],
            _ => &[],
        }
    }

    /// Copy of `self` with child `i` replaced by `c` (given in raw, unopened form).
    pub fn with_child(&self, i: usize, c: Term) -> Term {
        let mut out = self.clone();
        let slot: &mut Box<Term> = match (&mut out, i) {
            (Term::Abort(_, t, _), 0)
            | (Term::WApp(_, t, _), 0)
            | (Term::Pair(_, t, _), 0)
            | (Term::App(_, t, _), 0)
            | (Term::Copair(_, t, _), 0)
            | (Term::Case(_, t, ..), 0)
            | (Term::Colam(_, t, ..), 0)
            | (Term::Unpack(_, t, ..), 0) => t,
            (Term::Abort(_, _, s), 1)
            | (Term::WApp(_, _, s), 1)
            | (Term::Pair(_, _, s), 1)
            | (Term::App(_, _, s), 1)
            | (Term::Copair(_, _, s), 1)
            | (Term::Colam(_, _, _, _, s), 1)
            | (Term::Unpack(_, _, _, _, s), 1) => s,
            (Term::WLam(_, _, t), 0)
            | (Term::Proj(_, _, t), 0)
            | (Term::Inj(_, _, t), 0)
            | (Term::Lam(_, _, t), 0)
            | (Term::NegI(_, t), 0)
            | (Term::NegE(_, t), 0)
            | (Term::TLam(_, _, t), 0)
            | (Term::TApp(_, t, _), 0)
            | (Term::Pack(_, _, t), 0) => t,
            (Term::Case(_, _, _, s, _, _), 1) => s,
            (Term::Case(_, _, _, _, _, u), 2) => u,
            _ => panic!("child index {i} out of range"),
        };
        **slot = c;
        out
    }

    /// Rebuilds the term, replacing variable leaves through `fv(leaf, depth)`
    /// and every type annotation through `ft(ty, tdepth)`. `depth` and
    /// `tdepth` count the term and type binders crossed so far.
    pub fn map_leaves<FV, FT>(&self, depth: usize, tdepth: usize, fv: &mut FV, ft: &mut FT) -> Term
    where
        FV: FnMut(&Term, usize) -> Term,
        FT: FnMut(&Ty, usize) -> Ty,
    {
        let go = |t: &Term, d: usize, td: usize, fv: &mut FV, ft: &mut FT| bx(t.map_leaves(d, td, fv, ft));
        let mt = |p: &MTy, td: usize, ft: &mut FT| MTy::new(ft(&p.ty, td), p.mode);
        let (d, td) = (depth, tdepth);
        match self {
            Term::Var(_) | Term::BVar(_) => fv(self, d),
            Term::Abort(q, t, s) => {
                let q = mt(q, td, ft);
                Term::Abort(q, go(t, d, td, fv, ft), go(s, d, td, fv, ft))
            }
            Term::WLam(g, b, t) => {
                let b = Binder { hint: b.hint.clone(), ty: mt(&b.ty, td, ft) };
                Term::WLam(*g, b, go(t, d + 1, td, fv, ft))
            }
            Term::WApp(g, t, s) => Term::WApp(*g, go(t, d, td, fv, ft), go(s, d, td, fv, ft)),
            Term::Pair(g, t, s) => Term::Pair(*g, go(t, d, td, fv, ft), go(s, d, td, fv, ft)),
            Term::Proj(g, i, t) => Term::Proj(*g, *i, go(t, d, td, fv, ft)),
            Term::Inj(g, i, t) => Term::Inj(*g, *i, go(t, d, td, fv, ft)),
            Term::Case(g, t, bx_, s, by, u) => {
                let bx_ = Binder { hint: bx_.hint.clone(), ty: mt(&bx_.ty, td, ft) };
                let by = Binder { hint: by.hint.clone(), ty: mt(&by.ty, td, ft) };
                let t = go(t, d, td, fv, ft);
                let s = go(s, d + 1, td, fv, ft);
                let u = go(u, d + 1, td, fv, ft);
                Term::Case(*g, t, bx_, s, by, u)
            }
            Term::Lam(g, b, t) => {
                let b = Binder { hint: b.hint.clone(), ty: mt(&b.ty, td, ft) };
                Term::Lam(*g, b, go(t, d + 1, td, fv, ft))
            }
            Term::App(g, t, s) => Term::App(*g, go(t, d, td, fv, ft), go(s, d, td, fv, ft)),
            Term::Copair(g, t, s) => Term::Copair(*g, go(t, d, td, fv, ft), go(s, d, td, fv, ft)),
            Term::Colam(g, t, bx_, by, s) => {
                let bx_ = Binder { hint: bx_.hint.clone(), ty: mt(&bx_.ty, td, ft) };
                let by = Binder { hint: by.hint.clone(), ty: mt(&by.ty, td, ft) };
                let t = go(t, d, td, fv, ft);
                Term::Colam(*g, t, bx_, by, go(s, d + 2, td, fv, ft))
            }
            Term::NegI(g, t) => Term::NegI(*g, go(t, d, td, fv, ft)),
            Term::NegE(g, t) => Term::NegE(*g, go(t, d, td, fv, ft)),
            Term::TLam(g, h, t) => Term::TLam(*g, h.clone(), go(t, d, td + 1, fv, ft)),
            Term::TApp(g, t, a) => {
                let a = ft(a, td);
                Term::TApp(*g, go(t, d, td, fv, ft), a)
            }
            Term::Pack(g, a, t) => {
                let a = ft(a, td);
                Term::Pack(*g, a, go(t, d, td, fv, ft))
            }
            Term::Unpack(g, t, h, b, s) => {
                let b = Binder { hint: b.hint.clone(), ty: mt(&b.ty, td + 1, ft) };
                let t = go(t, d, td, fv, ft);
                Term::Unpack(*g, t, h.clone(), b, go(s, d + 1, td + 1, fv, ft))
            }
        }
    }

    fn map_terms(&self, fv: &mut impl FnMut(&Term, usize) -> Term) -> Term {
        self.map_leaves(0, 0, fv, &mut |ty: &Ty, _| ty.clone())
    }

    fn map_types(&self, ft: &mut impl FnMut(&Ty, usize) -> Ty) -> Term {
        self.map_leaves(0, 0, &mut |leaf: &Term, _| leaf.clone(), ft)
    }

    /// Replaces the loose index `k` by the locally closed term `u`.
    pub fn open_at(&self, k: usize, u: &Term) -> Term {
        self.map_terms(&mut |leaf, d| match leaf {
            Term::BVar(i) if *i == k + d => u.clone(),
            other => other.clone(),
        })
    }

    pub fn open(&self, u: &Term) -> Term {
        self.open_at(0, u)
    }

    /// Abstracts the free variable `name` as loose index `k`.
    pub fn close_at(&self, k: usize, name: &str) -> Term {
        self.map_terms(&mut |leaf, d| match leaf {
            Term::Var(n) if n == name => Term::BVar(k + d),
            other => other.clone(),
        })
    }

    pub fn close(&self, name: &str) -> Term {
        self.close_at(0, name)
    }

    /// Replaces the loose type index `k` in every annotation by `a`.
    pub fn open_ty_at(&self, k: usize, a: &Ty) -> Term {
        self.map_types(&mut |ty, td| ty.open_at(k + td, a))
    }

    pub fn open_ty(&self, a: &Ty) -> Term {
        self.open_ty_at(0, a)
    }

    pub fn close_ty_at(&self, k: usize, name: &str) -> Term {
        self.map_types(&mut |ty, td| ty.close_at(k + td, name))
    }

    pub fn close_ty(&self, name: &str) -> Term {
        self.close_ty_at(0, name)
    }

    /// Capture-avoiding substitution `self{x:=s}` for a locally closed `s`.
    pub fn subst(&self, x: &str, s: &Term) -> Term {
        self.map_terms(&mut |leaf, _| match leaf {
            Term::Var(n) if n == x => s.clone(),
            other => other.clone(),
        })
    }

    /// Capture-avoiding substitution of a type for a free type variable.
    pub fn subst_ty(&self, alpha: &str, a: &Ty) -> Term {
        self.map_types(&mut |ty, _| ty.subst(alpha, a))
    }

    pub fn rename(&self, x: &str, y: &str) -> Term {
        self.subst(x, &Term::var(y))
    }

    fn visit(&self, fv: &mut impl FnMut(&Term), ft: &mut impl FnMut(&Ty)) {
        match self {
            Term::Var(_) | Term::BVar(_) => fv(self),
            Term::Abort(q, ..) => ft(&q.ty),
            Term::WLam(_, b, _) | Term::Lam(_, b, _) | Term::Unpack(_, _, _, b, _) => ft(&b.ty.ty),
            Term::Case(_, _, b1, _, b2, _) | Term::Colam(_, _, b1, b2, _) => {
                ft(&b1.ty.ty);
                ft(&b2.ty.ty);
            }
            Term::TApp(_, _, a) | Term::Pack(_, a, _) => ft(a),
            _ => {}
        }
        for c in self.children() {
            c.visit(fv, ft);
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.visit(
            &mut |leaf| {
                if let Term::Var(n) = leaf {
                    acc.insert(n.clone());
                }
            },
            &mut |_| {},
        );
        acc
    }

    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.visit(&mut |_| {}, &mut |ty| ty.collect_ftv(&mut acc));
        acc
    }

    pub fn has_free(&self, x: &str) -> bool {
        let mut found = false;
        self.visit(
            &mut |leaf| {
                if matches!(leaf, Term::Var(n) if n == x) {
                    found = true;
                }
            },
            &mut |_| {},
        );
        found
    }

    /// Does the loose index `k` occur (relative to this term's outside)?
    pub fn has_loose(&self, k: usize) -> bool {
        let mut found = false;
        self.map_terms(&mut |leaf, d| {
            if matches!(leaf, Term::BVar(i) if *i == k + d) {
                found = true;
            }
            leaf.clone()
        });
        found
    }

    /// True when no term or type index escapes its binder.
    pub fn is_locally_closed(&self) -> bool {
        let ok_terms = std::cell::Cell::new(true);
        let ok_types = std::cell::Cell::new(true);
        self.map_leaves(
            0,
            0,
            &mut |leaf: &Term, d| {
                if matches!(leaf, Term::BVar(i) if *i >= d) {
                    ok_terms.set(false);
                }
                leaf.clone()
            },
            &mut |ty: &Ty, td| {
                if !ty.is_closed_under(td) {
                    ok_types.set(false);
                }
                ty.clone()
            },
        );
        ok_terms.get() && ok_types.get()
    }

    /// Number of term nodes (annotations are not counted).
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Raw subterm at `path` (bodies unopened).
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.child(*i)?.at(rest),
        }
    }

    fn open_crossed(child: &Term, crossed: &[Crossed], level: usize) -> (Term, Vec<(Crossed, String)>) {
        let mut c = child.clone();
        let mut names = Vec::new();
        for (j, cr) in crossed.iter().enumerate() {
            let name = format!("%{level}.{j}");
            c = match cr {
                Crossed::Term(k) => c.open_at(*k, &Term::Var(name.clone())),
                Crossed::Type(k) => c.open_ty_at(*k, &Ty::Var(name.clone())),
            };
            names.push((*cr, name));
        }
        (c, names)
    }

    fn close_crossed(child: Term, names: &[(Crossed, String)]) -> Term {
        let mut c = child;
        for (cr, name) in names {
            c = match cr {
                Crossed::Term(k) => c.close_at(*k, name),
                Crossed::Type(k) => c.close_ty_at(*k, name),
            };
        }
        c
    }

    /// Subterm at `path` with every crossed binder opened to a reserved
    /// name, so the result is locally closed.
    pub fn at_opened(&self, path: &[usize]) -> Option<Term> {
        self.at_opened_from(path, 0)
    }

    fn at_opened_from(&self, path: &[usize], level: usize) -> Option<Term> {
        match path.split_first() {
            None => Some(self.clone()),
            Some((i, rest)) => {
                let child = self.child(*i)?;
                let (opened, _) = Term::open_crossed(child, self.crossed(*i), level);
                opened.at_opened_from(rest, level + 1)
            }
        }
    }

    /// Replaces the subterm at `path` by `f(subterm)`. The subterm handed to
    /// `f` is locally closed: binders on the way down are opened to reserved
    /// names and closed again afterwards. Returns `None` on a bad path or
    /// when `f` declines.
    pub fn rewrite_at(&self, path: &[usize], f: &mut dyn FnMut(&Term) -> Option<Term>) -> Option<Term> {
        self.rewrite_from(path, 0, f)
    }

    fn rewrite_from(&self, path: &[usize], level: usize, f: &mut dyn FnMut(&Term) -> Option<Term>) -> Option<Term> {
        match path.split_first() {
            None => f(self),
            Some((i, rest)) => {
                let child = self.child(*i)?;
                let (opened, names) = Term::open_crossed(child, self.crossed(*i), level);
                let new_child = opened.rewrite_from(rest, level + 1, f)?;
                Some(self.with_child(*i, Term::close_crossed(new_child, &names)))
            }
        }
    }

    /// All paths in preorder.
    pub fn paths(&self) -> Vec<Path> {
        fn go(t: &Term, cur: &mut Path, out: &mut Vec<Path>) {
            out.push(cur.clone());
            for (i, c) in t.children().into_iter().enumerate() {
                cur.push(i);
                go(c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Sign tag of the root constructor, if it carries one.
    pub fn sign(&self) -> Option<Sign> {
        match self {
            Term::Var(_) | Term::BVar(_) | Term::Abort(..) => None,
            Term::WLam(g, ..)
            | Term::WApp(g, ..)
            | Term::Pair(g, ..)
            | Term::Proj(g, ..)
            | Term::Inj(g, ..)
            | Term::Case(g, ..)
            | Term::Lam(g, ..)
            | Term::App(g, ..)
            | Term::Copair(g, ..)
            | Term::Colam(g, ..)
            | Term::NegI(g, ..)
            | Term::NegE(g, ..)
            | Term::TLam(g, ..)
            | Term::TApp(g, ..)
            | Term::Pack(g, ..)
            | Term::Unpack(g, ..) => Some(*g),
        }
    }

    /// Short constructor name with sign, e.g. `pair+`.
    pub fn head_name(&self) -> String {
        let base = match self {
            Term::Var(_) | Term::BVar(_) => "var",
            Term::Abort(..) => "abort",
            Term::WLam(..) => "wlam",
            Term::WApp(..) => "wapp",
            Term::Pair(..) => "pair",
            Term::Proj(_, Side::Left, _) => "proj1",
            Term::Proj(_, Side::Right, _) => "proj2",
            Term::Inj(_, Side::Left, _) => "inj1",
            Term::Inj(_, Side::Right, _) => "inj2",
            Term::Case(..) => "case",
            Term::Lam(..) => "lam",
            Term::App(..) => "app",
            Term::Copair(..) => "copair",
            Term::Colam(..) => "colam",
            Term::NegI(..) => "negi",
            Term::NegE(..) => "nege",
            Term::TLam(..) => "tlam",
            Term::TApp(..) => "tapp",
            Term::Pack(..) => "pack",
            Term::Unpack(..) => "unpack",
        };
        match self.sign() {
            Some(g) => format!("{base}{}", g.pick("+", "-")),
            None => base.to_string(),
        }
    }

    /// Flips every sign tag and dualizes every annotation.
    pub fn dual(&self) -> Term {
        let flip = |g: &Sign| g.flip();
        let db = |b: &Binder| Binder { hint: b.hint.clone(), ty: b.ty.dual() };
        let d = |t: &Term| bx(t.dual());
        match self {
            Term::Var(_) | Term::BVar(_) => self.clone(),
            Term::Abort(q, t, s) => Term::Abort(q.dual(), d(s), d(t)),
            Term::WLam(g, b, t) => Term::WLam(flip(g), db(b), d(t)),
            Term::WApp(g, t, s) => Term::WApp(flip(g), d(t), d(s)),
            Term::Pair(g, t, s) => Term::Pair(flip(g), d(t), d(s)),
            Term::Proj(g, i, t) => Term::Proj(flip(g), *i, d(t)),
            Term::Inj(g, i, t) => Term::Inj(flip(g), *i, d(t)),
            Term::Case(g, t, b1, s, b2, u) => Term::Case(flip(g), d(t), db(b1), d(s), db(b2), d(u)),
            Term::Lam(g, b, t) => Term::Lam(flip(g), db(b), d(t)),
            Term::App(g, t, s) => Term::App(flip(g), d(t), d(s)),
            Term::Copair(g, t, s) => Term::Copair(flip(g), d(t), d(s)),
            Term::Colam(g, t, b1, b2, s) => Term::Colam(flip(g), d(t), db(b1), db(b2), d(s)),
            Term::NegI(g, t) => Term::NegI(flip(g), d(t)),
            Term::NegE(g, t) => Term::NegE(flip(g), d(t)),
            Term::TLam(g, h, t) => Term::TLam(flip(g), h.clone(), d(t)),
            Term::TApp(g, t, a) => Term::TApp(flip(g), d(t), a.dual()),
            Term::Pack(g, a, t) => Term::Pack(flip(g), a.dual(), d(t)),
            Term::Unpack(g, t, h, b, s) => Term::Unpack(flip(g), d(t), h.clone(), db(b), d(s)),
        }
    }
}

/// Standalone forms of the substitution and free-variable operations.
pub fn subst_term(t: &Term, x: &str, s: &Term) -> Term {
    t.subst(x, s)
}

pub fn subst_type_in_term(t: &Term, alpha: &str, a: &Ty) -> Term {
    t.subst_ty(alpha, a)
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    t.free_vars()
}

pub fn free_type_vars(t: &Term) -> BTreeSet<String> {
    t.free_type_vars()
}

/// An ordered typing context with pairwise distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<(String, MTy)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<(String, MTy)>) -> Context {
        let mut ctx = Context::new();
        for (x, p) in entries {
            ctx.push(x, p);
        }
        ctx
    }

    /// Adds or replaces the entry for `x`, keeping names distinct.
    pub fn push(&mut self, x: impl Into<String>, p: MTy) {
        let x = x.into();
        self.entries.retain(|(n, _)| *n != x);
        self.entries.push((x, p));
    }

    pub fn with(&self, x: impl Into<String>, p: MTy) -> Context {
        let mut c = self.clone();
        c.push(x, p);
        c
    }

    pub fn remove(&mut self, x: &str) {
        self.entries.retain(|(n, _)| n != x);
    }

    pub fn lookup(&self, x: &str) -> Option<&MTy> {
        self.entries.iter().find(|(n, _)| n == x).map(|(_, p)| p)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn entries(&self) -> &[(String, MTy)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn ftv(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        for (_, p) in &self.entries {
            p.ty.collect_ftv(&mut acc);
        }
        acc
    }

    pub fn is_weak(&self) -> bool {
        self.entries.iter().all(|(_, p)| p.is_weak())
    }

    pub fn subst_ty(&self, alpha: &str, a: &Ty) -> Context {
        Context { entries: self.entries.iter().map(|(n, p)| (n.clone(), p.subst(alpha, a))).collect() }
    }
}

/// Picks a name based on `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem: String = {
        let s = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
        if s.is_empty() || s == "_" || s.starts_with('%') {
            "x".to_string()
        } else {
            s.to_string()
        }
    };
    if !avoid.contains(base) && !base.is_empty() && base != "_" && !base.starts_with('%') {
        return base.to_string();
    }
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty::term_to_string(self, crate::syntax::pretty::Style::Unicode))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::types::Mode;

    fn a() -> Ty {
        Ty::var("a")
    }

    #[test]
    fn substitution_base_case() {
        let s = Term::wapp(Sign::Pos, Term::var("p"), Term::var("q"));
        assert_eq!(Term::var("x").subst("x", &s), s);
    }

    #[test]
    fn substitution_avoids_capture() {
        let t = Term::wlam(Sign::Pos, "y", MTy::wneg(a()), Term::var("x"));
        let r = t.subst("x", &Term::var("y"));
        let expected = Term::wlam(Sign::Pos, "z", MTy::wneg(a()), Term::var("y"));
        assert_eq!(r, expected);
        assert!(r.free_vars().contains("y"));
    }

    #[test]
    fn type_substitution_leaves_bound_variables() {
        let t = Term::tlam(Sign::Pos, "a", Term::var("x"));
        assert_eq!(t.subst_ty("a", &Ty::var("b")), t);
        let u = Term::tapp(Sign::Pos, Term::var("z"), a());
        assert_eq!(u.subst_ty("a", &Ty::var("b")), Term::tapp(Sign::Pos, Term::var("z"), Ty::var("b")));
    }

    #[test]
    fn free_variable_sets() {
        let t = Term::wlam(Sign::Pos, "x", MTy::wneg(a()), Term::var("x"));
        assert!(t.free_vars().is_empty());
        let u = Term::wapp(Sign::Pos, Term::var("x"), Term::var("y"));
        assert_eq!(u.free_vars().len(), 2);
        let p = Term::pack(Sign::Pos, Ty::var("b"), Term::var("z"));
        assert_eq!(p.free_type_vars().into_iter().collect::<Vec<_>>(), vec!["b".to_string()]);
    }

    #[test]
    fn rewrite_under_binders_restores_indices() {
        let body = Term::wapp(Sign::Pos, Term::var("x"), Term::var("x"));
        let t = Term::wlam(Sign::Pos, "x", MTy::new(a(), Mode::WEAK_NEG), body);
        let r = t
            .rewrite_at(&[0, 1], &mut |sub| {
                assert!(sub.is_locally_closed());
                Some(Term::pair(Sign::Pos, sub.clone(), sub.clone()))
            })
            .unwrap();
        let expected = Term::wlam(
            Sign::Pos,
            "x",
            MTy::wneg(a()),
            Term::wapp(Sign::Pos, Term::var("x"), Term::pair(Sign::Pos, Term::var("x"), Term::var("x"))),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn unpack_binds_type_in_annotation() {
        let t = Term::unpack(Sign::Pos, Term::var("p"), "b", "x", MTy::wpos(Ty::var("b")), Term::var("x"));
        assert!(t.is_locally_closed());
        assert!(t.free_type_vars().is_empty());
    }
}
