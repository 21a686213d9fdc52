//! The intuitionistic fragment: useful and useless occurrences,
//! intuitionistic terms, and the inductive counterfactual system.
//!
//! A position is useless when it sits inside the argument of a positive
//! weak elimination `•⁺(u, □)`. Everything else is useful.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::syntax::{Context, Crossed, MTy, Path, Sign, Term};
use crate::typecheck::{self, ErrorKind, TypeError};

/// Names whose useful occurrences are forbidden.
pub type CounterfactualSet = BTreeSet<String>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OccurrenceReport {
    pub variable: String,
    pub useful_positions: Vec<Path>,
    pub useless_positions: Vec<Path>,
}

/// Classifies every free occurrence of `x` in `t`.
pub fn occurrences(t: &Term, x: &str) -> OccurrenceReport {
    fn go(t: &Term, x: &str, useless: bool, path: &mut Path, out: &mut OccurrenceReport) {
        if let Term::Var(n) = t {
            if n == x {
                if useless {
                    out.useless_positions.push(path.clone());
                } else {
                    out.useful_positions.push(path.clone());
                }
            }
            return;
        }
        for (i, c) in t.children().into_iter().enumerate() {
            let shielded = useless || (matches!(t, Term::WApp(Sign::Pos, ..)) && i == 1);
            path.push(i);
            go(c, x, shielded, path, out);
            path.pop();
        }
    }
    let mut out = OccurrenceReport { variable: x.to_string(), ..Default::default() };
    go(t, x, false, &mut Vec::new(), &mut out);
    out
}

/// The first reason a term fails to be intuitionistic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A useful `case⁻`, `colam⁻`, `nege⁻` or `unpack⁻`.
    ForbiddenEliminator { path: Path, rule: &'static str },
    /// A useful free occurrence of a variable of the counterfactual set.
    CounterfactualVariable { path: Path, name: String },
    /// A useful occurrence of the variable bound by a useful `λ∘⁺`.
    CounterfactualBinder { path: Path, binder: Path },
}

impl Violation {
    pub fn path(&self) -> &Path {
        match self {
            Violation::ForbiddenEliminator { path, .. }
            | Violation::CounterfactualVariable { path, .. }
            | Violation::CounterfactualBinder { path, .. } => path,
        }
    }
}

/// Diagnostic form of [`is_intuitionistic`]: the first violation in preorder.
pub fn first_violation(t: &Term, xs: &CounterfactualSet) -> Option<Violation> {
    // One entry per enclosing term binder, innermost last; `Some(p)` marks a
    // useful λ∘⁺ at path `p`.
    fn go(t: &Term, xs: &CounterfactualSet, path: &mut Path, bound: &mut Vec<Option<Path>>) -> Option<Violation> {
        match t {
            Term::Var(n) if xs.contains(n) => {
                return Some(Violation::CounterfactualVariable { path: path.clone(), name: n.clone() })
            }
            Term::BVar(i) => {
                let slot = bound.len().checked_sub(i + 1).and_then(|k| bound[k].clone());
                return slot.map(|binder| Violation::CounterfactualBinder { path: path.clone(), binder });
            }
            Term::Case(Sign::Neg, ..)
            | Term::Colam(Sign::Neg, ..)
            | Term::NegE(Sign::Neg, ..)
            | Term::Unpack(Sign::Neg, ..) => {
                return Some(Violation::ForbiddenEliminator { path: path.clone(), rule: typecheck::rule_name(t) })
            }
            _ => {}
        }
        for (i, c) in t.children().into_iter().enumerate() {
            if matches!(t, Term::WApp(Sign::Pos, ..)) && i == 1 {
                continue;
            }
            let mut pushed = 0;
            for cr in t.crossed(i) {
                if let Crossed::Term(_) = cr {
                    let mark = matches!(t, Term::WLam(Sign::Pos, ..)).then(|| path.clone());
                    bound.push(mark);
                    pushed += 1;
                }
            }
            path.push(i);
            let r = go(c, xs, path, bound);
            path.pop();
            bound.truncate(bound.len() - pushed);
            if r.is_some() {
                return r;
            }
        }
        None
    }
    go(t, xs, &mut Vec::new(), &mut Vec::new())
}

/// Is `t` intuitionistic with counterfactuals `xs`?
pub fn is_intuitionistic(t: &Term, xs: &CounterfactualSet) -> bool {
    first_violation(t, xs).is_none()
}

/// Outcome of an intuitionistic check that passed the classical one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrjVerdict {
    Intuitionistic,
    Classical(Violation),
}

/// Checks `Γ ⊢ t : P` classically and then the intuitionistic condition.
pub fn check_prj_verdict(ctx: &Context, t: &Term, p: &MTy) -> Result<PrjVerdict, TypeError> {
    typecheck::check(ctx, t, p)?;
    Ok(match first_violation(t, &CounterfactualSet::new()) {
        None => PrjVerdict::Intuitionistic,
        Some(v) => PrjVerdict::Classical(v),
    })
}

pub fn check_prj(ctx: &Context, t: &Term, p: &MTy) -> Result<bool, TypeError> {
    Ok(check_prj_verdict(ctx, t, p)? == PrjVerdict::Intuitionistic)
}

/// Derivation in the inductive counterfactual system, reporting the failing
/// rule. Failures specific to the system are `CounterfactualUse` and
/// `ForbiddenEliminator`; any other kind is a classical typing error.
pub fn derive_prjv(xs: &CounterfactualSet, ctx: &Context, t: &Term, p: &MTy) -> Result<MTy, TypeError> {
    typecheck::derive_prjv(xs, ctx, t, p)
}

/// Is `X ; Γ ⊢ t : P` derivable? Classical typing errors are surfaced.
pub fn check_prjv(xs: &CounterfactualSet, ctx: &Context, t: &Term, p: &MTy) -> Result<bool, TypeError> {
    match derive_prjv(xs, ctx, t, p) {
        Ok(_) => Ok(true),
        Err(e) if matches!(e.kind, ErrorKind::CounterfactualUse | ErrorKind::ForbiddenEliminator) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Side, Ty};
    use Sign::{Neg, Pos};

    fn a() -> Ty {
        Ty::var("a")
    }

    fn set(names: &[&str]) -> CounterfactualSet {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn occurrence_classes() {
        let x = Term::var("x");
        assert_eq!(occurrences(&x, "x").useful_positions, vec![Vec::<usize>::new()]);
        let pos = Term::wapp(Pos, Term::var("y"), x.clone());
        let r = occurrences(&pos, "x");
        assert_eq!((r.useful_positions.len(), r.useless_positions), (0, vec![vec![1]]));
        let neg = Term::wapp(Neg, Term::var("y"), x);
        assert_eq!(occurrences(&neg, "x").useful_positions, vec![vec![1]]);
    }

    #[test]
    fn counterfactual_binder_used_usefully() {
        let t = Term::wlam(Pos, "x", MTy::wneg(a()), Term::wapp(Pos, Term::var("y"), Term::var("x")));
        assert!(is_intuitionistic(&t, &set(&[])));
        let bad = Term::wlam(Pos, "x", MTy::wneg(a()), Term::wapp(Neg, Term::var("x"), Term::var("y")));
        assert_eq!(
            first_violation(&bad, &set(&[])),
            Some(Violation::CounterfactualBinder { path: vec![0, 0], binder: vec![] })
        );
    }

    #[test]
    fn useless_forbidden_eliminator_is_allowed() {
        let nege = Term::nege(Neg, Term::var("z"));
        let t = Term::wapp(Pos, Term::var("y"), nege.clone());
        assert!(is_intuitionistic(&t, &set(&[])));
        assert!(!is_intuitionistic(&nege, &set(&[])));
    }

    #[test]
    fn prjv_axiom_side_condition() {
        let g = Context::from_entries(vec![("x".into(), MTy::wneg(a())), ("y".into(), MTy::wpos(a()))]);
        let x = set(&["x"]);
        assert!(!check_prjv(&x, &g, &Term::var("x"), &MTy::wneg(a())).unwrap());
        let t = Term::wapp(Pos, Term::var("y"), Term::var("x"));
        assert!(check_prjv(&x, &g, &t, &MTy::pos(a())).unwrap());
    }

    #[test]
    fn prj_on_plain_variable() {
        let g = Context::from_entries(vec![("x".into(), MTy::wpos(a()))]);
        assert!(check_prj(&g, &Term::var("x"), &MTy::wpos(a())).unwrap());
        let inj = Term::inj(Pos, Side::Left, Term::var("x"));
        assert!(check_prj(&g, &inj, &MTy::pos(Ty::or(a(), a()))).unwrap());
    }
}
