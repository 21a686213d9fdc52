//! The untyped calculus: sign-free, type-free terms, their one-step
//! reduction, and the erasure of typed terms.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{fresh_name, Hint, Side, Term};

type B = Box<UTerm>;

/// Untyped terms, locally nameless like [`Term`]. `TLam`, `TApp` and `Pack`
/// carry the placeholder ◇ in place of a type and bind nothing; `Unpack`
/// binds one term variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UTerm {
    Var(String),
    BVar(usize),
    Abort(B, B),
    Pair(B, B),
    Proj(Side, B),
    Inj(Side, B),
    Case(B, Hint, B, Hint, B),
    Lam(Hint, B),
    App(B, B),
    Copair(B, B),
    Colam(B, Hint, Hint, B),
    NegI(B),
    NegE(B),
    TLam(B),
    TApp(B),
    Pack(B),
    Unpack(B, Hint, B),
}

fn bx(t: UTerm) -> B {
    Box::new(t)
}

/// `𝕒(a, b) = ℧(a b, b a)`.
pub fn uabs(a: UTerm, b: UTerm) -> UTerm {
    UTerm::Abort(bx(UTerm::App(bx(a.clone()), bx(b.clone()))), bx(UTerm::App(bx(b), bx(a))))
}

impl UTerm {
    pub fn var(name: impl Into<String>) -> UTerm {
        UTerm::Var(name.into())
    }

    pub fn lam(x: &str, body: UTerm) -> UTerm {
        UTerm::Lam(Hint::new(x), bx(body.close_at(0, x)))
    }

    pub fn app(a: UTerm, b: UTerm) -> UTerm {
        UTerm::App(bx(a), bx(b))
    }

    pub fn children(&self) -> Vec<&UTerm> {
        use UTerm::*;
        match self {
            Var(_) | BVar(_) => vec![],
            Abort(a, b) | Pair(a, b) | App(a, b) | Copair(a, b) => vec![a, b],
            Proj(_, a) | Inj(_, a) | Lam(_, a) | NegI(a) | NegE(a) | TLam(a) | TApp(a) | Pack(a) => vec![a],
            Case(a, _, b, _, c) => vec![a, b, c],
            Colam(a, _, _, b) | Unpack(a, _, b) => vec![a, b],
        }
    }

    /// Number of term binders crossed when entering child `i`.
    pub fn binds(&self, i: usize) -> usize {
        match (self, i) {
            (UTerm::Lam(..), 0) | (UTerm::Case(..), 1) | (UTerm::Case(..), 2) | (UTerm::Unpack(..), 1) => 1,
            (UTerm::Colam(..), 1) => 2,
            _ => 0,
        }
    }

    fn with_child(&self, i: usize, c: UTerm) -> UTerm {
        use UTerm::*;
        let mut out = self.clone();
        let slot: &mut B = match (&mut out, i) {
            (Abort(a, _), 0) | (Pair(a, _), 0) | (App(a, _), 0) | (Copair(a, _), 0) => a,
            (Abort(_, b), 1) | (Pair(_, b), 1) | (App(_, b), 1) | (Copair(_, b), 1) => b,
            (Proj(_, a), 0) | (Inj(_, a), 0) | (Lam(_, a), 0) | (NegI(a), 0) | (NegE(a), 0) => a,
            (TLam(a), 0) | (TApp(a), 0) | (Pack(a), 0) => a,
            (Case(a, ..), 0) | (Colam(a, ..), 0) | (Unpack(a, ..), 0) => a,
            (Case(_, _, b, _, _), 1) => b,
            (Case(_, _, _, _, c), 2) => c,
            (Colam(_, _, _, b), 1) | (Unpack(_, _, b), 1) => b,
            _ => panic!("child index {i} out of range"),
        };
        **slot = c;
        out
    }

    fn map_vars(&self, depth: usize, f: &mut impl FnMut(&UTerm, usize) -> UTerm) -> UTerm {
        use UTerm::*;
        let go = |t: &UTerm, d: usize, f: &mut dyn FnMut(&UTerm, usize) -> UTerm| bx(t.map_vars_dyn(d, f));
        let d = depth;
        match self {
            Var(_) | BVar(_) => f(self, d),
            Abort(a, b) => Abort(go(a, d, f), go(b, d, f)),
            Pair(a, b) => Pair(go(a, d, f), go(b, d, f)),
            App(a, b) => App(go(a, d, f), go(b, d, f)),
            Copair(a, b) => Copair(go(a, d, f), go(b, d, f)),
            Proj(i, a) => Proj(*i, go(a, d, f)),
            Inj(i, a) => Inj(*i, go(a, d, f)),
            Lam(h, a) => Lam(h.clone(), go(a, d + 1, f)),
            NegI(a) => NegI(go(a, d, f)),
            NegE(a) => NegE(go(a, d, f)),
            TLam(a) => TLam(go(a, d, f)),
            TApp(a) => TApp(go(a, d, f)),
            Pack(a) => Pack(go(a, d, f)),
            Case(a, h1, b, h2, c) => Case(go(a, d, f), h1.clone(), go(b, d + 1, f), h2.clone(), go(c, d + 1, f)),
            Colam(a, h1, h2, b) => Colam(go(a, d, f), h1.clone(), h2.clone(), go(b, d + 2, f)),
            Unpack(a, h, b) => Unpack(go(a, d, f), h.clone(), go(b, d + 1, f)),
        }
    }

    fn map_vars_dyn(&self, depth: usize, f: &mut dyn FnMut(&UTerm, usize) -> UTerm) -> UTerm {
        self.map_vars(depth, &mut |t, d| f(t, d))
    }

    pub fn open_at(&self, k: usize, u: &UTerm) -> UTerm {
        self.map_vars(0, &mut |leaf, d| match leaf {
            UTerm::BVar(i) if *i == k + d => u.clone(),
            other => other.clone(),
        })
    }

    pub fn open(&self, u: &UTerm) -> UTerm {
        self.open_at(0, u)
    }

    pub fn close_at(&self, k: usize, name: &str) -> UTerm {
        self.map_vars(0, &mut |leaf, d| match leaf {
            UTerm::Var(n) if n == name => UTerm::BVar(k + d),
            other => other.clone(),
        })
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.map_vars(0, &mut |leaf, _| {
            if let UTerm::Var(n) = leaf {
                acc.insert(n.clone());
            }
            leaf.clone()
        });
        acc
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Is the root built with a constructor?
    pub fn is_canonical(&self) -> bool {
        use UTerm::*;
        matches!(self, Pair(..) | Inj(..) | Lam(..) | Copair(..) | NegI(..) | TLam(..) | Pack(..))
    }
}

/// Forgets signs and types; weak abstraction and application become the
/// ordinary ones.
pub fn erase(t: &Term) -> UTerm {
    use UTerm as U;
    let e = |t: &Term| bx(erase(t));
    match t {
        Term::Var(x) => U::Var(x.clone()),
        Term::BVar(i) => U::BVar(*i),
        Term::Abort(_, a, b) => U::Abort(e(a), e(b)),
        Term::WLam(_, b, a) | Term::Lam(_, b, a) => U::Lam(b.hint.clone(), e(a)),
        Term::WApp(_, a, b) | Term::App(_, a, b) => U::App(e(a), e(b)),
        Term::Pair(_, a, b) => U::Pair(e(a), e(b)),
        Term::Proj(_, i, a) => U::Proj(*i, e(a)),
        Term::Inj(_, i, a) => U::Inj(*i, e(a)),
        Term::Case(_, a, b1, b, b2, c) => U::Case(e(a), b1.hint.clone(), e(b), b2.hint.clone(), e(c)),
        Term::Copair(_, a, b) => U::Copair(e(a), e(b)),
        Term::Colam(_, a, b1, b2, b) => U::Colam(e(a), b1.hint.clone(), b2.hint.clone(), e(b)),
        Term::NegI(_, a) => U::NegI(e(a)),
        Term::NegE(_, a) => U::NegE(e(a)),
        Term::TLam(_, _, a) => U::TLam(e(a)),
        Term::TApp(_, a, _) => U::TApp(e(a)),
        Term::Pack(_, _, a) => U::Pack(e(a)),
        Term::Unpack(_, a, _, b, c) => U::Unpack(e(a), b.hint.clone(), e(c)),
    }
}

/// Contracts a root redex of a locally closed untyped term.
pub fn ucontract_root(a: &UTerm) -> Option<UTerm> {
    use UTerm::*;
    let c = |b: &B| (**b).clone();
    match a {
        Proj(i, p) => match &**p {
            Pair(x, y) => Some(c(i.pick(x, y))),
            _ => None,
        },
        Case(s, _, l, _, r) => match &**s {
            Inj(i, x) => Some(i.pick(l, r).open(x)),
            _ => None,
        },
        App(f, b) => match &**f {
            Lam(_, body) => Some(body.open(b)),
            _ => None,
        },
        Colam(s, _, _, body) => match &**s {
            Copair(x, y) => Some(body.open_at(1, x).open_at(0, y)),
            _ => None,
        },
        NegE(s) => match &**s {
            NegI(x) => Some(c(x)),
            _ => None,
        },
        TApp(s) => match &**s {
            TLam(x) => Some(c(x)),
            _ => None,
        },
        Unpack(s, _, body) => match &**s {
            Pack(x) => Some(body.open(x)),
            _ => None,
        },
        Abort(l, r) => match (&**l, &**r) {
            (Pair(a1, a2), Inj(i, b)) => Some(uabs(c(i.pick(a1, a2)), c(b))),
            (Inj(i, x), Pair(b1, b2)) => Some(uabs(c(x), c(i.pick(b1, b2)))),
            (Lam(_, body), Copair(b, cc)) => Some(uabs(body.open(b), c(cc))),
            (Copair(x, b), Lam(_, body)) => Some(uabs(c(b), body.open(x))),
            (NegI(x), NegI(b)) => Some(uabs(c(b), c(x))),
            (TLam(x), Pack(b)) => Some(uabs(c(x), c(b))),
            (Pack(x), TLam(b)) => Some(uabs(c(x), c(b))),
            _ => None,
        },
        _ => None,
    }
}

/// Opens the binders crossed into child `i` with reserved names, applies
/// `f` to the opened child and closes the results again.
fn under_child(a: &UTerm, i: usize, level: usize, f: &mut dyn FnMut(&UTerm, usize) -> Vec<UTerm>) -> Vec<UTerm> {
    let child = a.children()[i];
    let n = a.binds(i);
    let names: Vec<String> = (0..n).map(|j| format!("%u{level}.{j}")).collect();
    let mut opened = child.clone();
    for (j, name) in names.iter().enumerate() {
        opened = opened.open_at(n - 1 - j, &UTerm::Var(name.clone()));
    }
    f(&opened, level + 1)
        .into_iter()
        .map(|r| {
            let mut closed = r;
            for (j, name) in names.iter().enumerate() {
                closed = closed.close_at(n - 1 - j, name);
            }
            a.with_child(i, closed)
        })
        .collect()
}

/// Every one-step reduct of `a`, outermost first, then left to right.
pub fn ustep(a: &UTerm) -> Vec<UTerm> {
    fn go(a: &UTerm, level: usize) -> Vec<UTerm> {
        let mut out: Vec<UTerm> = ucontract_root(a).into_iter().collect();
        for i in 0..a.children().len() {
            out.extend(under_child(a, i, level, &mut |c, l| go(c, l)));
        }
        out
    }
    go(a, 0)
}

/// The leftmost-outermost one-step reduct.
pub fn ustep_lo(a: &UTerm) -> Option<UTerm> {
    fn go(a: &UTerm, level: usize) -> Option<UTerm> {
        if let Some(r) = ucontract_root(a) {
            return Some(r);
        }
        for i in 0..a.children().len() {
            let found = under_child(a, i, level, &mut |c, l| go(c, l).into_iter().collect());
            if let Some(r) = found.into_iter().next() {
                return Some(r);
            }
        }
        None
    }
    go(a, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum UStatus {
    Normal,
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTrace {
    pub initial: UTerm,
    pub steps: Vec<UTerm>,
    pub status: UStatus,
}

impl UTrace {
    pub fn result(&self) -> &UTerm {
        self.steps.last().unwrap_or(&self.initial)
    }
}

/// Leftmost-outermost reduction of an untyped term.
pub fn unormalize(a: &UTerm, fuel: usize) -> UTrace {
    let mut steps = Vec::new();
    let mut cur = a.clone();
    while let Some(next) = ustep_lo(&cur) {
        if steps.len() >= fuel {
            return UTrace { initial: a.clone(), steps, status: UStatus::FuelExhausted };
        }
        steps.push(next.clone());
        cur = next;
    }
    UTrace { initial: a.clone(), steps, status: UStatus::Normal }
}

struct UPrinter {
    free: BTreeSet<String>,
    names: Vec<String>,
}

impl UPrinter {
    fn bind(&mut self, hint: &Hint, body: &UTerm, depth_index: usize) -> String {
        let used = {
            let mut found = false;
            body.map_vars(0, &mut |leaf, d| {
                if matches!(leaf, UTerm::BVar(i) if *i == depth_index + d) {
                    found = true;
                }
                leaf.clone()
            });
            found
        };
        if !used {
            return "_".to_string();
        }
        let mut avoid = self.free.clone();
        avoid.extend(self.names.iter().cloned());
        fresh_name(hint.as_str(), &avoid)
    }

    fn term(&mut self, a: &UTerm, out: &mut String) {
        use UTerm::*;
        match a {
            Var(x) => out.push_str(x),
            BVar(i) => match self.names.len().checked_sub(i + 1) {
                Some(k) => out.push_str(&self.names[k]),
                None => out.push_str(&format!("#{i}")),
            },
            Abort(x, y) => self.call("℧", &[x, y], out),
            Pair(x, y) => {
                out.push('⟨');
                self.term(x, out);
                out.push_str(", ");
                self.term(y, out);
                out.push('⟩');
            }
            Proj(i, x) => self.call(i.pick("π₁", "π₂"), &[x], out),
            Inj(i, x) => self.call(i.pick("in₁", "in₂"), &[x], out),
            Case(s, h1, l, h2, r) => {
                out.push_str("case(");
                self.term(s, out);
                let x = self.bind(h1, l, 0);
                out.push_str(&format!("; {x}. "));
                self.names.push(x);
                self.term(l, out);
                self.names.pop();
                let y = self.bind(h2, r, 0);
                out.push_str(&format!("; {y}. "));
                self.names.push(y);
                self.term(r, out);
                self.names.pop();
                out.push(')');
            }
            Lam(h, body) => {
                let x = self.bind(h, body, 0);
                out.push_str(&format!("λ{x}. "));
                self.names.push(x);
                self.term(body, out);
                self.names.pop();
            }
            App(f, x) => {
                out.push('(');
                self.term(f, out);
                out.push(' ');
                self.term(x, out);
                out.push(')');
            }
            Copair(x, y) => self.call("copair", &[x, y], out),
            Colam(s, h1, h2, body) => {
                out.push_str("colam(");
                self.term(s, out);
                let x = self.bind(h1, body, 1);
                self.names.push(x.clone());
                let y = self.bind(h2, body, 0);
                self.names.push(y.clone());
                out.push_str(&format!("; {x}, {y}. "));
                self.term(body, out);
                self.names.truncate(self.names.len() - 2);
                out.push(')');
            }
            NegI(x) => self.call("negi", &[x], out),
            NegE(x) => self.call("nege", &[x], out),
            TLam(x) => self.call("Λ◇", &[x], out),
            TApp(x) => self.call("app◇", &[x], out),
            Pack(x) => self.call("pack◇", &[x], out),
            Unpack(s, h, body) => {
                out.push_str("unpack◇(");
                self.term(s, out);
                let x = self.bind(h, body, 0);
                out.push_str(&format!("; {x}. "));
                self.names.push(x);
                self.term(body, out);
                self.names.pop();
                out.push(')');
            }
        }
    }

    fn call(&mut self, head: &str, args: &[&B], out: &mut String) {
        out.push_str(head);
        out.push('(');
        for (k, a) in args.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            self.term(a, out);
        }
        out.push(')');
    }
}

impl fmt::Display for UTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = UPrinter { free: self.free_vars(), names: Vec::new() };
        let mut out = String::new();
        p.term(self, &mut out);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{MTy, Sign, Ty};

    #[test]
    fn beta() {
        let t = UTerm::app(UTerm::lam("x", UTerm::app(UTerm::var("x"), UTerm::var("x"))), UTerm::var("b"));
        assert_eq!(ustep(&t), vec![UTerm::app(UTerm::var("b"), UTerm::var("b"))]);
    }

    #[test]
    fn negation_absurdity_swaps() {
        let (a, b) = (UTerm::var("a"), UTerm::var("b"));
        let t = UTerm::Abort(bx(UTerm::NegI(bx(a.clone()))), bx(UTerm::NegI(bx(b.clone()))));
        let expected = UTerm::Abort(bx(UTerm::app(b.clone(), a.clone())), bx(UTerm::app(a, b)));
        assert_eq!(ustep(&t), vec![expected]);
    }

    #[test]
    fn normal_variable() {
        let tr = unormalize(&UTerm::var("x"), 10);
        assert_eq!((tr.steps.len(), tr.status), (0, UStatus::Normal));
    }

    #[test]
    fn erasure_forgets_types() {
        let body = Term::pack(Sign::Pos, Ty::var("B"), Term::var("z"));
        let t = Term::wlam(Sign::Pos, "x", MTy::wneg(Ty::exists("a", Ty::var("a"))), body);
        assert_eq!(erase(&t).to_string(), "λ_. pack◇(z)");
        assert_eq!(erase(&Term::var("x")), UTerm::var("x"));
    }

    #[test]
    fn reduction_under_binder() {
        let inner = UTerm::app(UTerm::lam("y", UTerm::var("y")), UTerm::var("x"));
        let t = UTerm::lam("x", inner);
        assert_eq!(ustep(&t), vec![UTerm::lam("x", UTerm::var("x"))]);
        assert_eq!(unormalize(&t, 5).result(), &UTerm::lam("x", UTerm::var("x")));
    }
}
