use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Display name carried by a binder. Equality and hashing ignore it, so
/// derived equality on trees is equality up to renaming of bound names.
#[derive(Clone, Debug, Default)]
pub struct Hint(pub String);

impl Hint {
    pub fn new(name: impl Into<String>) -> Self {
        Hint(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// Pure types. Free type variables are named, bound ones are de Bruijn
/// indices counting enclosing type binders (quantifiers in types, and
/// type abstractions or unpackings in terms).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Var(String),
    Bound(usize),
    And(Box<Ty>, Box<Ty>),
    Or(Box<Ty>, Box<Ty>),
    Imp(Box<Ty>, Box<Ty>),
    Coimp(Box<Ty>, Box<Ty>),
    Neg(Box<Ty>),
    Forall(Hint, Box<Ty>),
    Exists(Hint, Box<Ty>),
}

/// The binary connectives, used where rules are stated uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conn {
    And,
    Or,
    Imp,
    Coimp,
}

/// The two quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Forall,
    Exists,
}

impl Ty {
    pub fn var(name: impl Into<String>) -> Ty {
        Ty::Var(name.into())
    }

    pub fn and(a: Ty, b: Ty) -> Ty {
        Ty::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Ty, b: Ty) -> Ty {
        Ty::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Ty, b: Ty) -> Ty {
        Ty::Imp(Box::new(a), Box::new(b))
    }

    pub fn coimp(a: Ty, b: Ty) -> Ty {
        Ty::Coimp(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Ty) -> Ty {
        Ty::Neg(Box::new(a))
    }

    pub fn binary(c: Conn, a: Ty, b: Ty) -> Ty {
        match c {
            Conn::And => Ty::and(a, b),
            Conn::Or => Ty::or(a, b),
            Conn::Imp => Ty::imp(a, b),
            Conn::Coimp => Ty::coimp(a, b),
        }
    }

    /// `∀name.body`, binding the free occurrences of `name` in `body`.
    pub fn forall(name: &str, body: Ty) -> Ty {
        Ty::Forall(Hint::new(name), Box::new(body.close(name)))
    }

    /// `∃name.body`, binding the free occurrences of `name` in `body`.
    pub fn exists(name: &str, body: Ty) -> Ty {
        Ty::Exists(Hint::new(name), Box::new(body.close(name)))
    }

    pub fn quant(q: Quant, name: &str, body: Ty) -> Ty {
        match q {
            Quant::Forall => Ty::forall(name, body),
            Quant::Exists => Ty::exists(name, body),
        }
    }

    /// Splits a binary connective into its tag and operands.
    pub fn as_binary(&self) -> Option<(Conn, &Ty, &Ty)> {
        match self {
            Ty::And(a, b) => Some((Conn::And, a, b)),
            Ty::Or(a, b) => Some((Conn::Or, a, b)),
            Ty::Imp(a, b) => Some((Conn::Imp, a, b)),
            Ty::Coimp(a, b) => Some((Conn::Coimp, a, b)),
            _ => None,
        }
    }

    /// Splits a quantifier into its tag, binder hint and (unopened) body.
    pub fn as_quant(&self) -> Option<(Quant, &Hint, &Ty)> {
        match self {
            Ty::Forall(h, b) => Some((Quant::Forall, h, b)),
            Ty::Exists(h, b) => Some((Quant::Exists, h, b)),
            _ => None,
        }
    }

    /// Number of symbols; a quantifier together with its variable counts once.
    pub fn size(&self) -> usize {
        match self {
            Ty::Var(_) | Ty::Bound(_) => 1,
            Ty::And(a, b) | Ty::Or(a, b) | Ty::Imp(a, b) | Ty::Coimp(a, b) => {
                1 + a.size() + b.size()
            }
            Ty::Neg(a) => 1 + a.size(),
            Ty::Forall(_, a) | Ty::Exists(_, a) => 1 + a.size(),
        }
    }

    /// Rebuilds the type, replacing every variable leaf by `f(leaf, depth)`,
    /// where `depth` counts the quantifiers crossed so far.
    pub fn map_leaves(&self, depth: usize, f: &mut impl FnMut(&Ty, usize) -> Ty) -> Ty {
        match self {
            Ty::Var(_) | Ty::Bound(_) => f(self, depth),
            Ty::And(a, b) => Ty::and(a.map_leaves(depth, f), b.map_leaves(depth, f)),
            Ty::Or(a, b) => Ty::or(a.map_leaves(depth, f), b.map_leaves(depth, f)),
            Ty::Imp(a, b) => Ty::imp(a.map_leaves(depth, f), b.map_leaves(depth, f)),
            Ty::Coimp(a, b) => Ty::coimp(a.map_leaves(depth, f), b.map_leaves(depth, f)),
            Ty::Neg(a) => Ty::neg(a.map_leaves(depth, f)),
            Ty::Forall(h, a) => Ty::Forall(h.clone(), Box::new(a.map_leaves(depth + 1, f))),
            Ty::Exists(h, a) => Ty::Exists(h.clone(), Box::new(a.map_leaves(depth + 1, f))),
        }
    }

    /// Replaces the bound index `k` (relative to the outside) by `u`.
    pub fn open_at(&self, k: usize, u: &Ty) -> Ty {
        self.map_leaves(0, &mut |leaf, d| match leaf {
            Ty::Bound(i) if *i == k + d => u.clone(),
            other => other.clone(),
        })
    }

    /// Instantiates the outermost loose index with `u`.
    pub fn open(&self, u: &Ty) -> Ty {
        self.open_at(0, u)
    }

    /// Abstracts the free variable `name` as the bound index `k`.
    pub fn close_at(&self, k: usize, name: &str) -> Ty {
        self.map_leaves(0, &mut |leaf, d| match leaf {
            Ty::Var(n) if n == name => Ty::Bound(k + d),
            other => other.clone(),
        })
    }

    pub fn close(&self, name: &str) -> Ty {
        self.close_at(0, name)
    }

    /// Capture-avoiding substitution `self{name:=u}` for a locally closed `u`.
    pub fn subst(&self, name: &str, u: &Ty) -> Ty {
        self.map_leaves(0, &mut |leaf, _| match leaf {
            Ty::Var(n) if n == name => u.clone(),
            other => other.clone(),
        })
    }

    /// Body of a quantifier instantiated at `u`.
    pub fn instantiate(body: &Ty, u: &Ty) -> Ty {
        body.open(u)
    }

    pub fn collect_ftv(&self, acc: &mut BTreeSet<String>) {
        match self {
            Ty::Var(n) => {
                acc.insert(n.clone());
            }
            Ty::Bound(_) => {}
            Ty::And(a, b) | Ty::Or(a, b) | Ty::Imp(a, b) | Ty::Coimp(a, b) => {
                a.collect_ftv(acc);
                b.collect_ftv(acc);
            }
            Ty::Neg(a) | Ty::Forall(_, a) | Ty::Exists(_, a) => a.collect_ftv(acc),
        }
    }

    pub fn ftv(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_ftv(&mut acc);
        acc
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Ty::Var(n) => n == name,
            Ty::Bound(_) => false,
            Ty::And(a, b) | Ty::Or(a, b) | Ty::Imp(a, b) | Ty::Coimp(a, b) => {
                a.mentions(name) || b.mentions(name)
            }
            Ty::Neg(a) | Ty::Forall(_, a) | Ty::Exists(_, a) => a.mentions(name),
        }
    }

    /// True when no index escapes its binders, counting `outer` enclosing binders.
    pub fn is_closed_under(&self, outer: usize) -> bool {
        match self {
            Ty::Var(_) => true,
            Ty::Bound(i) => *i < outer,
            Ty::And(a, b) | Ty::Or(a, b) | Ty::Imp(a, b) | Ty::Coimp(a, b) => {
                a.is_closed_under(outer) && b.is_closed_under(outer)
            }
            Ty::Neg(a) => a.is_closed_under(outer),
            Ty::Forall(_, a) | Ty::Exists(_, a) => a.is_closed_under(outer + 1),
        }
    }

    /// The dual type: ∧↔∨, →↔⋉, ∀↔∃, with ¬ and variables unchanged.
    pub fn dual(&self) -> Ty {
        match self {
            Ty::Var(_) | Ty::Bound(_) => self.clone(),
            Ty::And(a, b) => Ty::or(a.dual(), b.dual()),
            Ty::Or(a, b) => Ty::and(a.dual(), b.dual()),
            Ty::Imp(a, b) => Ty::coimp(a.dual(), b.dual()),
            Ty::Coimp(a, b) => Ty::imp(a.dual(), b.dual()),
            Ty::Neg(a) => Ty::neg(a.dual()),
            Ty::Forall(h, a) => Ty::Exists(h.clone(), Box::new(a.dual())),
            Ty::Exists(h, a) => Ty::Forall(h.clone(), Box::new(a.dual())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }

    /// Picks the first value for the positive sign, the second otherwise.
    pub fn pick<T>(self, pos: T, neg: T) -> T {
        match self {
            Sign::Pos => pos,
            Sign::Neg => neg,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub sign: Sign,
    pub strength: Strength,
}

impl Mode {
    pub const STRONG_POS: Mode = Mode { sign: Sign::Pos, strength: Strength::Strong };
    pub const STRONG_NEG: Mode = Mode { sign: Sign::Neg, strength: Strength::Strong };
    pub const WEAK_POS: Mode = Mode { sign: Sign::Pos, strength: Strength::Weak };
    pub const WEAK_NEG: Mode = Mode { sign: Sign::Neg, strength: Strength::Weak };
    pub const ALL: [Mode; 4] = [Mode::STRONG_POS, Mode::STRONG_NEG, Mode::WEAK_POS, Mode::WEAK_NEG];

    pub fn strong(sign: Sign) -> Mode {
        Mode { sign, strength: Strength::Strong }
    }

    pub fn weak(sign: Sign) -> Mode {
        Mode { sign, strength: Strength::Weak }
    }

    pub fn opposite(self) -> Mode {
        Mode { sign: self.sign.flip(), strength: self.strength }
    }

    pub fn is_weak(self) -> bool {
        self.strength == Strength::Weak
    }

    pub fn superscript(self) -> &'static str {
        match (self.strength, self.sign) {
            (Strength::Strong, Sign::Pos) => "⁺",
            (Strength::Strong, Sign::Neg) => "⁻",
            (Strength::Weak, Sign::Pos) => "⊕",
            (Strength::Weak, Sign::Neg) => "⊖",
        }
    }

    pub fn ascii(self) -> &'static str {
        match (self.strength, self.sign) {
            (Strength::Strong, Sign::Pos) => "!+",
            (Strength::Strong, Sign::Neg) => "!-",
            (Strength::Weak, Sign::Pos) => "?+",
            (Strength::Weak, Sign::Neg) => "?-",
        }
    }
}

/// A pure type decorated with a mode at the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTy {
    pub ty: Ty,
    pub mode: Mode,
}

impl MTy {
    pub fn new(ty: Ty, mode: Mode) -> MTy {
        MTy { ty, mode }
    }

    pub fn strong(ty: Ty, sign: Sign) -> MTy {
        MTy::new(ty, Mode::strong(sign))
    }

    pub fn weak(ty: Ty, sign: Sign) -> MTy {
        MTy::new(ty, Mode::weak(sign))
    }

    pub fn pos(ty: Ty) -> MTy {
        MTy::new(ty, Mode::STRONG_POS)
    }

    pub fn neg(ty: Ty) -> MTy {
        MTy::new(ty, Mode::STRONG_NEG)
    }

    pub fn wpos(ty: Ty) -> MTy {
        MTy::new(ty, Mode::WEAK_POS)
    }

    pub fn wneg(ty: Ty) -> MTy {
        MTy::new(ty, Mode::WEAK_NEG)
    }

    /// Flips the sign, keeping the strength.
    pub fn opposite(&self) -> MTy {
        MTy::new(self.ty.clone(), self.mode.opposite())
    }

    /// Same pure type at the strong mode of the same sign.
    pub fn to_strong(&self) -> MTy {
        MTy::strong(self.ty.clone(), self.mode.sign)
    }

    pub fn to_weak(&self) -> MTy {
        MTy::weak(self.ty.clone(), self.mode.sign)
    }

    pub fn is_weak(&self) -> bool {
        self.mode.is_weak()
    }

    pub fn sign(&self) -> Sign {
        self.mode.sign
    }

    /// `#(A±) = 2|A|`, `#(A⊕) = #(A⊖) = 2|A| + 1`.
    pub fn measure(&self) -> usize {
        2 * self.ty.size() + usize::from(self.is_weak())
    }

    pub fn map_ty(&self, f: impl FnOnce(&Ty) -> Ty) -> MTy {
        MTy::new(f(&self.ty), self.mode)
    }

    pub fn subst(&self, name: &str, u: &Ty) -> MTy {
        self.map_ty(|t| t.subst(name, u))
    }

    pub fn dual(&self) -> MTy {
        MTy::new(self.ty.dual(), self.mode.opposite())
    }
}

pub fn opposite(p: &MTy) -> MTy {
    p.opposite()
}

pub fn measure(p: &MTy) -> usize {
    p.measure()
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty::ty_to_string(self, crate::syntax::pretty::Style::Unicode))
    }
}

impl fmt::Display for MTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty::mty_to_string(self, crate::syntax::pretty::Style::Unicode))
    }
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
    fn quantifier_bodies_compare_up_to_renaming() {
        let x = Ty::forall("x", Ty::imp(Ty::var("x"), Ty::var("x")));
        let y = Ty::forall("y", Ty::imp(Ty::var("y"), Ty::var("y")));
        assert_eq!(x, y);
        assert_ne!(x, Ty::forall("y", Ty::imp(Ty::var("y"), Ty::var("x"))));
    }

    #[test]
    fn substitution_respects_binding() {
        assert_eq!(MTy::wpos(a()).subst("a", &b()), MTy::wpos(b()));
        let bound = Ty::forall("a", a());
        assert_eq!(bound.subst("a", &b()), bound);
        let p = MTy::pos(Ty::imp(a(), b()));
        assert_eq!(p.subst("b", &Ty::neg(a())), MTy::pos(Ty::imp(a(), Ty::neg(a()))));
    }

    #[test]
    fn substitution_does_not_capture() {
        let t = Ty::forall("b", Ty::and(a(), b()));
        let r = t.subst("a", &b());
        assert_eq!(r, Ty::forall("c", Ty::and(b(), Ty::var("c"))));
        assert_eq!(r.ftv().into_iter().collect::<Vec<_>>(), vec!["b".to_string()]);
    }

    #[test]
    fn opposite_flips_sign_only() {
        assert_eq!(MTy::wpos(a()).opposite(), MTy::wneg(a()));
        assert_eq!(MTy::pos(a()).opposite(), MTy::neg(a()));
        for m in Mode::ALL {
            let p = MTy::new(a(), m);
            assert_eq!(p.opposite().opposite(), p);
        }
    }

    #[test]
    fn measure_values() {
        assert_eq!(MTy::pos(a()).measure(), 2);
        assert_eq!(MTy::wpos(a()).measure(), 3);
        let ab = Ty::and(a(), b());
        assert!(MTy::wpos(ab.clone()).measure() > MTy::pos(ab).measure());
        assert!(MTy::pos(Ty::and(a(), b())).measure() > MTy::wpos(a()).measure());
    }

    #[test]
    fn size_counts_symbols() {
        assert_eq!(a().size(), 1);
        assert_eq!(Ty::and(a(), Ty::neg(b())).size(), 4);
        assert_eq!(Ty::forall("c", Ty::var("c")).size(), 2);
    }
}
