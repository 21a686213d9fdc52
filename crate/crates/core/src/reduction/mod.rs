//! Rewriting for typed terms: β-rules, ℧-rules and the optional η∘ rule,
//! closed under arbitrary contexts.

pub mod untyped;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::syntax::{Mode, Path, Sign, Term};
use crate::typecheck::absurd;

pub use untyped::{erase, unormalize, ustep, UStatus, UTerm, UTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    /// `•±(λ∘±x.t, s)`
    BetaWeak(Sign),
    /// `π±(⟨t, s⟩±)`: β∧⁺ and β∨⁻.
    BetaPair(Sign),
    /// `case±(in±(t); ...)`: β∨⁺ and β∧⁻.
    BetaCase(Sign),
    /// `app±(λ±x.t, s)`: β→⁺ and β⋉⁻.
    BetaLam(Sign),
    /// `colam±(copair±(t, s); ...)`: β⋉⁺ and β→⁻.
    BetaColam(Sign),
    BetaNeg(Sign),
    /// `tapp±(Λ±α.t, A)`: β∀⁺ and β∃⁻.
    BetaTApp(Sign),
    /// `unpack±(pack±[A](t); ...)`: β∃⁺ and β∀⁻.
    BetaUnpack(Sign),
    AbsAnd,
    AbsOr,
    AbsImp,
    AbsCoimp,
    AbsNeg,
    AbsAll,
    AbsEx,
    EtaWeak,
}

impl RuleName {
    pub const ALL: [RuleName; 24] = [
        RuleName::BetaWeak(Sign::Pos),
        RuleName::BetaWeak(Sign::Neg),
        RuleName::BetaPair(Sign::Pos),
        RuleName::BetaPair(Sign::Neg),
        RuleName::BetaCase(Sign::Pos),
        RuleName::BetaCase(Sign::Neg),
        RuleName::BetaLam(Sign::Pos),
        RuleName::BetaLam(Sign::Neg),
        RuleName::BetaColam(Sign::Pos),
        RuleName::BetaColam(Sign::Neg),
        RuleName::BetaNeg(Sign::Pos),
        RuleName::BetaNeg(Sign::Neg),
        RuleName::BetaTApp(Sign::Pos),
        RuleName::BetaTApp(Sign::Neg),
        RuleName::BetaUnpack(Sign::Pos),
        RuleName::BetaUnpack(Sign::Neg),
        RuleName::AbsAnd,
        RuleName::AbsOr,
        RuleName::AbsImp,
        RuleName::AbsCoimp,
        RuleName::AbsNeg,
        RuleName::AbsAll,
        RuleName::AbsEx,
        RuleName::EtaWeak,
    ];

    pub fn name(self) -> &'static str {
        use Sign::{Neg, Pos};
        match self {
            RuleName::BetaWeak(Pos) => "β∘+",
            RuleName::BetaWeak(Neg) => "β∘-",
            RuleName::BetaPair(Pos) => "β∧+",
            RuleName::BetaPair(Neg) => "β∨-",
            RuleName::BetaCase(Pos) => "β∨+",
            RuleName::BetaCase(Neg) => "β∧-",
            RuleName::BetaLam(Pos) => "β→+",
            RuleName::BetaLam(Neg) => "β⋉-",
            RuleName::BetaColam(Pos) => "β⋉+",
            RuleName::BetaColam(Neg) => "β→-",
            RuleName::BetaNeg(Pos) => "β¬+",
            RuleName::BetaNeg(Neg) => "β¬-",
            RuleName::BetaTApp(Pos) => "β∀+",
            RuleName::BetaTApp(Neg) => "β∃-",
            RuleName::BetaUnpack(Pos) => "β∃+",
            RuleName::BetaUnpack(Neg) => "β∀-",
            RuleName::AbsAnd => "℧∧",
            RuleName::AbsOr => "℧∨",
            RuleName::AbsImp => "℧→",
            RuleName::AbsCoimp => "℧⋉",
            RuleName::AbsNeg => "℧¬",
            RuleName::AbsAll => "℧∀",
            RuleName::AbsEx => "℧∃",
            RuleName::EtaWeak => "η∘",
        }
    }

    pub fn is_eta(self) -> bool {
        self == RuleName::EtaWeak
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for RuleName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Redex {
    pub path: Path,
    pub rule: RuleName,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no {rule} redex at {path:?}")]
    StaleRedex { path: Path, rule: RuleName },
}

/// The rule whose left-hand side matches the root of `t`, if any.
pub fn root_rule(t: &Term, eta: bool) -> Option<RuleName> {
    use Term::*;
    let same = |a: &Sign, b: &Sign| a == b;
    match t {
        WApp(g, l, _) => match &**l {
            WLam(h, ..) if same(g, h) => Some(RuleName::BetaWeak(*g)),
            _ => None,
        },
        Proj(g, _, s) => matches!(&**s, Pair(h, ..) if same(g, h)).then_some(RuleName::BetaPair(*g)),
        Case(g, s, ..) => matches!(&**s, Inj(h, ..) if same(g, h)).then_some(RuleName::BetaCase(*g)),
        App(g, s, _) => matches!(&**s, Lam(h, ..) if same(g, h)).then_some(RuleName::BetaLam(*g)),
        Colam(g, s, ..) => matches!(&**s, Copair(h, ..) if same(g, h)).then_some(RuleName::BetaColam(*g)),
        NegE(g, s) => matches!(&**s, NegI(h, ..) if same(g, h)).then_some(RuleName::BetaNeg(*g)),
        TApp(g, s, _) => matches!(&**s, TLam(h, ..) if same(g, h)).then_some(RuleName::BetaTApp(*g)),
        Unpack(g, s, ..) => matches!(&**s, Pack(h, ..) if same(g, h)).then_some(RuleName::BetaUnpack(*g)),
        Abort(_, l, r) => match (&**l, &**r) {
            (Pair(Sign::Pos, ..), Inj(Sign::Neg, ..)) => Some(RuleName::AbsAnd),
            (Inj(Sign::Pos, ..), Pair(Sign::Neg, ..)) => Some(RuleName::AbsOr),
            (Lam(Sign::Pos, ..), Copair(Sign::Neg, ..)) => Some(RuleName::AbsImp),
            (Copair(Sign::Pos, ..), Lam(Sign::Neg, ..)) => Some(RuleName::AbsCoimp),
            (NegI(Sign::Pos, ..), NegI(Sign::Neg, ..)) => Some(RuleName::AbsNeg),
            (TLam(Sign::Pos, ..), Pack(Sign::Neg, ..)) => Some(RuleName::AbsAll),
            (Pack(Sign::Pos, ..), TLam(Sign::Neg, ..)) => Some(RuleName::AbsEx),
            _ => None,
        },
        WLam(g, _, body) if eta => match &**body {
            WApp(h, u, x) if same(g, h) && **x == BVar(0) && !u.has_loose(0) => Some(RuleName::EtaWeak),
            _ => None,
        },
        _ => None,
    }
}

/// Contracts a root redex of the locally closed term `t`.
pub fn contract_root(t: &Term, eta: bool) -> Option<Term> {
    use Term::*;
    let rule = root_rule(t, eta)?;
    let wpos = Mode::WEAK_POS;
    let out = match (rule, t) {
        (RuleName::BetaWeak(_), WApp(_, l, s)) | (RuleName::BetaLam(_), App(_, l, s)) => match &**l {
            WLam(_, _, body) | Lam(_, _, body) => body.open(s),
            _ => unreachable!(),
        },
        (RuleName::BetaPair(_), Proj(_, side, p)) => match &**p {
            Pair(_, a, b) => side.pick(a, b).as_ref().clone(),
            _ => unreachable!(),
        },
        (RuleName::BetaCase(_), Case(_, s, _, l, _, r)) => match &**s {
            Inj(_, side, a) => side.pick(l, r).open(a),
            _ => unreachable!(),
        },
        (RuleName::BetaColam(_), Colam(_, s, _, _, body)) => match &**s {
            Copair(_, a, b) => body.open_at(1, a).open_at(0, b),
            _ => unreachable!(),
        },
        (RuleName::BetaNeg(_), NegE(_, s)) => match &**s {
            NegI(_, a) => a.as_ref().clone(),
            _ => unreachable!(),
        },
        (RuleName::BetaTApp(_), TApp(_, s, ty)) => match &**s {
            TLam(_, _, body) => body.open_ty(ty),
            _ => unreachable!(),
        },
        (RuleName::BetaUnpack(_), Unpack(_, s, _, _, body)) => match &**s {
            Pack(_, ty, a) => body.open_ty(ty).open(a),
            _ => unreachable!(),
        },
        (RuleName::EtaWeak, WLam(_, _, body)) => match &**body {
            WApp(_, u, _) => u.as_ref().clone(),
            _ => unreachable!(),
        },
        (_, Abort(q, l, r)) => {
            let q = q.clone();
            match (&**l, &**r) {
                (Pair(_, a, b), Inj(_, side, s)) => absurd(q, wpos, side.pick(a, b).as_ref().clone(), (**s).clone()),
                (Inj(_, side, a), Pair(_, s1, s2)) => absurd(q, wpos, (**a).clone(), side.pick(s1, s2).as_ref().clone()),
                (Lam(_, _, body), Copair(_, s, u)) => absurd(q, wpos, body.open(s), (**u).clone()),
                (Copair(_, a, s), Lam(_, _, body)) => absurd(q, wpos, (**s).clone(), body.open(a)),
                (NegI(_, a), NegI(_, s)) => absurd(q, Mode::WEAK_NEG, (**a).clone(), (**s).clone()),
                (TLam(_, _, body), Pack(_, ty, s)) => absurd(q, wpos, body.open_ty(ty), (**s).clone()),
                (Pack(_, ty, a), TLam(_, _, body)) => absurd(q, wpos, (**a).clone(), body.open_ty(ty)),
                _ => unreachable!(),
            }
        }
        _ => unreachable!(),
    };
    Some(out)
}

/// Every redex of `t`, ordered by preorder path.
pub fn redexes(t: &Term, eta: bool) -> Vec<Redex> {
    fn go(t: &Term, eta: bool, path: &mut Path, out: &mut Vec<Redex>) {
        if let Some(rule) = root_rule(t, eta) {
            out.push(Redex { path: path.clone(), rule });
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            go(c, eta, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(t, eta, &mut Vec::new(), &mut out);
    out
}

/// The leftmost-outermost redex.
pub fn first_redex(t: &Term, eta: bool) -> Option<Redex> {
    fn go(t: &Term, eta: bool, path: &mut Path) -> Option<Redex> {
        if let Some(rule) = root_rule(t, eta) {
            return Some(Redex { path: path.clone(), rule });
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            let r = go(c, eta, path);
            path.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
    go(t, eta, &mut Vec::new())
}

/// Contracts the redex `r` of `t`.
pub fn contract(t: &Term, r: &Redex) -> Result<Term, ReductionError> {
    let eta = r.rule.is_eta();
    let stale = || ReductionError::StaleRedex { path: r.path.clone(), rule: r.rule };
    match t.at(&r.path) {
        Some(sub) if root_rule(sub, eta) == Some(r.rule) => {}
        _ => return Err(stale()),
    }
    t.rewrite_at(&r.path, &mut |sub| contract_root(sub, eta)).ok_or_else(stale)
}

/// All one-step reducts, paired with the redex contracted.
pub fn one_step_reducts(t: &Term, eta: bool) -> Vec<(Redex, Term)> {
    redexes(t, eta)
        .into_iter()
        .map(|r| {
            let s = contract(t, &r).expect("enumerated redexes contract");
            (r, s)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Strategy {
    #[default]
    LeftmostOutermost,
    RightmostInnermost,
    Random(u64),
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lo" | "leftmost-outermost" | "leftmost_outermost" => Ok(Strategy::LeftmostOutermost),
            "ri" | "rightmost-innermost" | "rightmost_innermost" => Ok(Strategy::RightmostInnermost),
            _ => match s.strip_prefix("random:").or_else(|| s.strip_prefix("random=")) {
                Some(seed) => seed.parse().map(Strategy::Random).map_err(|e| format!("bad seed: {e}")),
                None if s == "random" => Ok(Strategy::Random(0)),
                None => Err(format!("unknown strategy {s:?} (expected lo, ri or random:SEED)")),
            },
        }
    }
}

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Normal,
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub redex: Redex,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub initial: Term,
    pub steps: Vec<Step>,
    pub status: Status,
}

impl Trace {
    pub fn result(&self) -> &Term {
        self.steps.last().map_or(&self.initial, |s| &s.term)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rules(&self) -> Vec<RuleName> {
        self.steps.iter().map(|s| s.redex.rule).collect()
    }
}

struct Chooser {
    strategy: Strategy,
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    fn new(strategy: Strategy) -> Chooser {
        let rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Chooser { strategy, rng }
    }

    fn pick(&mut self, t: &Term, eta: bool) -> Option<Redex> {
        match self.strategy {
            Strategy::LeftmostOutermost => first_redex(t, eta),
            Strategy::RightmostInnermost => {
                let all = redexes(t, eta);
                let innermost = |r: &Redex| !all.iter().any(|o| o.path.len() > r.path.len() && o.path.starts_with(&r.path));
                all.iter().rfind(|r| innermost(r)).cloned()
            }
            Strategy::Random(_) => {
                let mut all = redexes(t, eta);
                if all.is_empty() {
                    return None;
                }
                let rng = self.rng.as_mut().expect("seeded");
                let i = rng.gen_range(0..all.len());
                Some(all.swap_remove(i))
            }
        }
    }
}

/// Reduces until no redex remains or `fuel` steps have been taken.
pub fn normalize(t: &Term, strategy: Strategy, fuel: usize, eta: bool) -> Trace {
    let mut chooser = Chooser::new(strategy);
    let mut steps = Vec::new();
    let mut cur = t.clone();
    loop {
        let Some(r) = chooser.pick(&cur, eta) else {
            return Trace { initial: t.clone(), steps, status: Status::Normal };
        };
        if steps.len() >= fuel {
            return Trace { initial: t.clone(), steps, status: Status::FuelExhausted };
        }
        cur = contract(&cur, &r).expect("chosen redexes contract");
        steps.push(Step { redex: r, term: cur.clone() });
    }
}

/// Result of a normalization run without the intermediate terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub term: Term,
    pub steps: usize,
    pub status: Status,
}

pub fn normal_form(t: &Term, strategy: Strategy, fuel: usize, eta: bool) -> NormalForm {
    let mut chooser = Chooser::new(strategy);
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(r) = chooser.pick(&cur, eta) {
        if steps >= fuel {
            return NormalForm { term: cur, steps, status: Status::FuelExhausted };
        }
        cur = contract(&cur, &r).expect("chosen redexes contract");
        steps += 1;
    }
    NormalForm { term: cur, steps, status: Status::Normal }
}

/// Do the leftmost-outermost normal forms of `t1` and `t2` coincide?
pub fn joinable(t1: &Term, t2: &Term, fuel: usize) -> bool {
    joinable_with(t1, t2, fuel, false)
}

pub fn joinable_with(t1: &Term, t2: &Term, fuel: usize, eta: bool) -> bool {
    if t1 == t2 {
        return true;
    }
    let a = normal_form(t1, Strategy::LeftmostOutermost, fuel, eta);
    let b = normal_form(t2, Strategy::LeftmostOutermost, fuel, eta);
    a.status == Status::Normal && b.status == Status::Normal && a.term == b.term
}

pub fn is_normal(t: &Term, eta: bool) -> bool {
    first_redex(t, eta).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{MTy, Side, Ty};
    use Sign::{Neg, Pos};

    fn a() -> Ty {
        Ty::var("a")
    }

    #[test]
    fn weak_beta_at_root() {
        let t = Term::wapp(Pos, Term::wlam(Pos, "x", MTy::wneg(a()), Term::var("x")), Term::var("s"));
        assert_eq!(redexes(&t, false), vec![Redex { path: vec![], rule: RuleName::BetaWeak(Pos) }]);
        assert_eq!(contract(&t, &redexes(&t, false)[0]).unwrap(), Term::var("s"));
        assert!(redexes(&Term::var("x"), false).is_empty());
    }

    #[test]
    fn projection_of_pair() {
        let t = Term::proj(Pos, Side::Left, Term::pair(Pos, Term::var("t1"), Term::var("t2")));
        let tr = normalize(&t, Strategy::default(), 10, false);
        assert_eq!(tr.result(), &Term::var("t1"));
        assert_eq!(tr.rules(), vec![RuleName::BetaPair(Pos)]);
    }

    #[test]
    fn unpack_of_pack_substitutes_both() {
        let body = Term::wapp(Pos, Term::var("x"), Term::var("k"));
        let t = Term::unpack(
            Pos,
            Term::pack(Pos, Ty::var("b"), Term::var("t")),
            "c",
            "x",
            MTy::wpos(Ty::var("c")),
            Term::wlam(Neg, "_", MTy::wpos(Ty::var("c")), body),
        );
        let out = contract(&t, &Redex { path: vec![], rule: RuleName::BetaUnpack(Pos) }).unwrap();
        let expected =
            Term::wlam(Neg, "_", MTy::wpos(Ty::var("b")), Term::wapp(Pos, Term::var("t"), Term::var("k")));
        assert_eq!(out, expected);
    }

    #[test]
    fn negation_absurdity_uses_the_negative_weak_case() {
        let q = MTy::pos(a());
        let t = Term::abort(q.clone(), Term::negi(Pos, Term::var("t")), Term::negi(Neg, Term::var("s")));
        assert_eq!(root_rule(&t, false), Some(RuleName::AbsNeg));
        let out = contract_root(&t, false).unwrap();
        let expected =
            Term::abort(q, Term::wapp(Pos, Term::var("s"), Term::var("t")), Term::wapp(Neg, Term::var("t"), Term::var("s")));
        assert_eq!(out, expected);
    }

    #[test]
    fn stale_redex_is_rejected() {
        let r = Redex { path: vec![], rule: RuleName::BetaNeg(Pos) };
        assert!(contract(&Term::var("x"), &r).is_err());
    }

    #[test]
    fn eta_only_when_enabled() {
        let t = Term::wlam(Pos, "x", MTy::wneg(a()), Term::wapp(Pos, Term::var("u"), Term::var("x")));
        assert!(redexes(&t, false).is_empty());
        let tr = normalize(&t, Strategy::default(), 10, true);
        assert_eq!(tr.result(), &Term::var("u"));
        let bad = Term::wlam(Pos, "x", MTy::wneg(a()), Term::wapp(Pos, Term::var("x"), Term::var("x")));
        assert!(redexes(&bad, true).is_empty());
    }

    #[test]
    fn redex_under_binder_contracts_in_place() {
        let inner = Term::wapp(Pos, Term::wlam(Pos, "y", MTy::wneg(a()), Term::var("y")), Term::var("x"));
        let t = Term::lam(Pos, "x", MTy::wpos(a()), inner);
        let r = first_redex(&t, false).unwrap();
        assert_eq!(r.path, vec![0]);
        assert_eq!(contract(&t, &r).unwrap(), Term::lam(Pos, "x", MTy::wpos(a()), Term::var("x")));
    }

    #[test]
    fn strategies_parse() {
        assert_eq!("lo".parse::<Strategy>().unwrap(), Strategy::LeftmostOutermost);
        assert_eq!("random:7".parse::<Strategy>().unwrap(), Strategy::Random(7));
        assert!("sideways".parse::<Strategy>().is_err());
    }
}
