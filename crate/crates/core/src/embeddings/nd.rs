//! Second-order natural deduction: formulas, proofs and rule checking for
//! the intuitionistic system NJ and its classical extension NK.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::pretty::{ty_to_string, Style};
use crate::syntax::{Side, Ty};

/// A formula is a pure type in which falsity is the reserved variable
/// [`BOTTOM`].
pub type NdFormula = Ty;

pub const BOTTOM: &str = "⊥";

pub fn bottom() -> NdFormula {
    Ty::var(BOTTOM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Logic {
    NJ,
    NK,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NdRule {
    /// Hypothesis by 1-based position in the context.
    Ax(usize),
    BotE(NdFormula),
    AndI,
    AndE(Side),
    /// Injection, with the other disjunct.
    OrI(Side, NdFormula),
    /// Premises: the disjunction and two branches, each extending the
    /// context with the respective disjunct.
    OrE,
    /// The discharged hypothesis.
    ImpI(NdFormula),
    ImpE,
    /// Premises: `¬A` and `B`.
    CoimpI,
    /// Premises: `A⋉B` and a proof extending the context with `¬A`, `B`.
    CoimpE,
    NotI(NdFormula),
    NotE,
    /// The generalized type variable.
    AllI(String),
    /// The instantiating formula.
    AllE(NdFormula),
    /// The witness and the conclusion `∃α.B`.
    ExI(NdFormula, NdFormula),
    /// The eigenvariable.
    ExE(String),
    Lem(NdFormula),
}

impl NdRule {
    pub fn name(&self) -> &'static str {
        match self {
            NdRule::Ax(_) => "ax",
            NdRule::BotE(_) => "bot-e",
            NdRule::AndI => "and-i",
            NdRule::AndE(Side::Left) => "and-e1",
            NdRule::AndE(Side::Right) => "and-e2",
            NdRule::OrI(Side::Left, _) => "or-i1",
            NdRule::OrI(Side::Right, _) => "or-i2",
            NdRule::OrE => "or-e",
            NdRule::ImpI(_) => "imp-i",
            NdRule::ImpE => "imp-e",
            NdRule::CoimpI => "coimp-i",
            NdRule::CoimpE => "coimp-e",
            NdRule::NotI(_) => "not-i",
            NdRule::NotE => "not-e",
            NdRule::AllI(_) => "all-i",
            NdRule::AllE(_) => "all-e",
            NdRule::ExI(..) => "ex-i",
            NdRule::ExE(_) => "ex-e",
            NdRule::Lem(_) => "lem",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            NdRule::Ax(_) | NdRule::Lem(_) => 0,
            NdRule::BotE(_)
            | NdRule::AndE(_)
            | NdRule::OrI(..)
            | NdRule::ImpI(_)
            | NdRule::NotI(_)
            | NdRule::AllI(_)
            | NdRule::AllE(_)
            | NdRule::ExI(..) => 1,
            NdRule::AndI | NdRule::ImpE | NdRule::CoimpI | NdRule::CoimpE | NdRule::NotE | NdRule::ExE(_) => 2,
            NdRule::OrE => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdProof {
    pub rule: NdRule,
    pub premises: Vec<NdProof>,
}

impl NdProof {
    pub fn new(rule: NdRule, premises: Vec<NdProof>) -> NdProof {
        NdProof { rule, premises }
    }

    pub fn leaf(rule: NdRule) -> NdProof {
        NdProof { rule, premises: Vec::new() }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn uses_lem(&self) -> bool {
        matches!(self.rule, NdRule::Lem(_)) || self.premises.iter().any(|p| p.uses_lem())
    }
}

/// A proof together with its open hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdDerivation {
    pub name: String,
    pub hyps: Vec<NdFormula>,
    pub proof: NdProof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub hyps: Vec<NdFormula>,
    pub concl: NdFormula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyps.iter().map(|h| ty_to_string(h, Style::Unicode)).collect();
        if !hs.is_empty() {
            write!(f, "{} ", hs.join(", "))?;
        }
        write!(f, "⊢ {}", ty_to_string(&self.concl, Style::Unicode))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NdError {
    #[error("{rule} at {path:?}: {detail}")]
    Schema { path: Vec<usize>, rule: &'static str, detail: String },
    #[error("excluded middle at {path:?} is not an intuitionistic rule")]
    LemInNj { path: Vec<usize> },
    #[error("hypothesis {index} at {path:?} does not exist (context has {len})")]
    BadHypothesis { path: Vec<usize>, index: usize, len: usize },
    #[error("{rule} at {path:?}: type variable {var} is not fresh")]
    Freshness { path: Vec<usize>, rule: &'static str, var: String },
}

fn show(a: &NdFormula) -> String {
    ty_to_string(a, Style::Unicode)
}

/// Checks `p` against the rule schemas over the context `hyps` and returns
/// its conclusion. `reserved` names type variables that may not be used as
/// eigenvariables.
pub fn conclusion(
    hyps: &[NdFormula],
    p: &NdProof,
    logic: Logic,
    reserved: &BTreeSet<String>,
) -> Result<NdFormula, NdError> {
    Walker { logic, reserved }.go(&mut hyps.to_vec(), p, &mut Vec::new())
}

struct Walker<'a> {
    logic: Logic,
    reserved: &'a BTreeSet<String>,
}

impl Walker<'_> {
    fn schema(&self, path: &[usize], p: &NdProof, detail: impl Into<String>) -> NdError {
        NdError::Schema { path: path.to_vec(), rule: p.rule.name(), detail: detail.into() }
    }

    fn sub(&self, env: &mut Vec<NdFormula>, p: &NdProof, i: usize, path: &mut Vec<usize>) -> Result<NdFormula, NdError> {
        path.push(i);
        let r = self.go(env, &p.premises[i], path);
        path.pop();
        r
    }

    fn sub_with(
        &self,
        env: &mut Vec<NdFormula>,
        extra: &[NdFormula],
        p: &NdProof,
        i: usize,
        path: &mut Vec<usize>,
    ) -> Result<NdFormula, NdError> {
        let n = env.len();
        env.extend(extra.iter().cloned());
        let r = self.sub(env, p, i, path);
        env.truncate(n);
        r
    }

    fn want(&self, path: &[usize], p: &NdProof, got: &NdFormula, expected: &NdFormula, what: &str) -> Result<(), NdError> {
        if got == expected {
            Ok(())
        } else {
            Err(self.schema(path, p, format!("{what}: expected {}, found {}", show(expected), show(got))))
        }
    }

    fn eigen_ok(&self, a: &str) -> bool {
        a != BOTTOM && !self.reserved.contains(a)
    }

    fn go(&self, env: &mut Vec<NdFormula>, p: &NdProof, path: &mut Vec<usize>) -> Result<NdFormula, NdError> {
        if p.premises.len() != p.rule.arity() {
            return Err(self.schema(
                path,
                p,
                format!("expects {} premises, got {}", p.rule.arity(), p.premises.len()),
            ));
        }
        let bot = bottom();
        match &p.rule {
            NdRule::Ax(i) => match i.checked_sub(1).and_then(|k| env.get(k)) {
                Some(a) => Ok(a.clone()),
                None => Err(NdError::BadHypothesis { path: path.clone(), index: *i, len: env.len() }),
            },
            NdRule::BotE(a) => {
                let c = self.sub(env, p, 0, path)?;
                self.want(path, p, &c, &bot, "premise")?;
                Ok(a.clone())
            }
            NdRule::AndI => {
                let a = self.sub(env, p, 0, path)?;
                let b = self.sub(env, p, 1, path)?;
                Ok(Ty::and(a, b))
            }
            NdRule::AndE(side) => match self.sub(env, p, 0, path)? {
                Ty::And(a, b) => Ok(side.pick(*a, *b)),
                other => Err(self.schema(path, p, format!("premise {} is not a conjunction", show(&other)))),
            },
            NdRule::OrI(side, other) => {
                let a = self.sub(env, p, 0, path)?;
                Ok(match side {
                    Side::Left => Ty::or(a, other.clone()),
                    Side::Right => Ty::or(other.clone(), a),
                })
            }
            NdRule::OrE => {
                let (a, b) = match self.sub(env, p, 0, path)? {
                    Ty::Or(a, b) => (*a, *b),
                    other => return Err(self.schema(path, p, format!("premise {} is not a disjunction", show(&other)))),
                };
                let c1 = self.sub_with(env, &[a], p, 1, path)?;
                let c2 = self.sub_with(env, &[b], p, 2, path)?;
                self.want(path, p, &c2, &c1, "branches disagree")?;
                Ok(c1)
            }
            NdRule::ImpI(a) => {
                let b = self.sub_with(env, std::slice::from_ref(a), p, 0, path)?;
                Ok(Ty::imp(a.clone(), b))
            }
            NdRule::ImpE => {
                let f = self.sub(env, p, 0, path)?;
                let a = self.sub(env, p, 1, path)?;
                match f {
                    Ty::Imp(dom, cod) => {
                        self.want(path, p, &a, &dom, "argument")?;
                        Ok(*cod)
                    }
                    other => Err(self.schema(path, p, format!("premise {} is not an implication", show(&other)))),
                }
            }
            NdRule::CoimpI => {
                let na = self.sub(env, p, 0, path)?;
                let b = self.sub(env, p, 1, path)?;
                match na {
                    Ty::Neg(a) => Ok(Ty::coimp(*a, b)),
                    other => Err(self.schema(path, p, format!("premise {} is not a negation", show(&other)))),
                }
            }
            NdRule::CoimpE => match self.sub(env, p, 0, path)? {
                Ty::Coimp(a, b) => self.sub_with(env, &[Ty::neg(*a), *b], p, 1, path),
                other => Err(self.schema(path, p, format!("premise {} is not a co-implication", show(&other)))),
            },
            NdRule::NotI(a) => {
                let c = self.sub_with(env, std::slice::from_ref(a), p, 0, path)?;
                self.want(path, p, &c, &bot, "premise")?;
                Ok(Ty::neg(a.clone()))
            }
            NdRule::NotE => {
                let na = self.sub(env, p, 0, path)?;
                let a = self.sub(env, p, 1, path)?;
                self.want(path, p, &na, &Ty::neg(a), "negated premise")?;
                Ok(bot)
            }
            NdRule::AllI(alpha) => {
                let fresh = self.eigen_ok(alpha) && !env.iter().any(|h| h.mentions(alpha));
                if !fresh {
                    return Err(NdError::Freshness { path: path.clone(), rule: "all-i", var: alpha.clone() });
                }
                let a = self.sub(env, p, 0, path)?;
                Ok(Ty::forall(alpha, a))
            }
            NdRule::AllE(arg) => match self.sub(env, p, 0, path)? {
                Ty::Forall(_, body) => Ok(body.open(arg)),
                other => Err(self.schema(path, p, format!("premise {} is not universal", show(&other)))),
            },
            NdRule::ExI(witness, ex) => {
                let body = match ex {
                    Ty::Exists(_, body) => body.open(witness),
                    other => return Err(self.schema(path, p, format!("{} is not existential", show(other)))),
                };
                let got = self.sub(env, p, 0, path)?;
                self.want(path, p, &got, &body, "premise")?;
                Ok(ex.clone())
            }
            NdRule::ExE(alpha) => {
                let ex = self.sub(env, p, 0, path)?;
                let body = match &ex {
                    Ty::Exists(_, body) => body.open(&Ty::var(alpha)),
                    other => return Err(self.schema(path, p, format!("premise {} is not existential", show(other)))),
                };
                let stale = !self.eigen_ok(alpha) || ex.mentions(alpha) || env.iter().any(|h| h.mentions(alpha));
                if stale {
                    return Err(NdError::Freshness { path: path.clone(), rule: "ex-e", var: alpha.clone() });
                }
                let c = self.sub_with(env, &[body], p, 1, path)?;
                if c.mentions(alpha) {
                    return Err(NdError::Freshness { path: path.clone(), rule: "ex-e", var: alpha.clone() });
                }
                Ok(c)
            }
            NdRule::Lem(a) => match self.logic {
                Logic::NK => Ok(Ty::or(a.clone(), Ty::neg(a.clone()))),
                Logic::NJ => Err(NdError::LemInNj { path: path.clone() }),
            },
        }
    }
}

/// Checks a derivation and returns the sequent it proves.
pub fn validate_nd(d: &NdDerivation, logic: Logic) -> Result<Sequent, NdError> {
    let concl = conclusion(&d.hyps, &d.proof, logic, &BTreeSet::new())?;
    Ok(Sequent { hyps: d.hyps.clone(), concl })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Ty {
        Ty::var("a")
    }

    fn der(hyps: Vec<Ty>, proof: NdProof) -> NdDerivation {
        NdDerivation { name: "t".into(), hyps, proof }
    }

    #[test]
    fn axiom_proves_its_hypothesis() {
        let s = validate_nd(&der(vec![a()], NdProof::leaf(NdRule::Ax(1))), Logic::NJ).unwrap();
        assert_eq!(s.concl, a());
    }

    #[test]
    fn excluded_middle_is_classical_only() {
        let d = der(vec![], NdProof::leaf(NdRule::Lem(a())));
        assert_eq!(validate_nd(&d, Logic::NK).unwrap().concl, Ty::or(a(), Ty::neg(a())));
        assert!(matches!(validate_nd(&d, Logic::NJ), Err(NdError::LemInNj { .. })));
    }

    #[test]
    fn universal_introduction_freshness() {
        let d = der(vec![a()], NdProof::new(NdRule::AllI("a".into()), vec![NdProof::leaf(NdRule::Ax(1))]));
        assert!(matches!(validate_nd(&d, Logic::NJ), Err(NdError::Freshness { .. })));
        let id = NdProof::new(NdRule::ImpI(a()), vec![NdProof::leaf(NdRule::Ax(1))]);
        let d = der(vec![], NdProof::new(NdRule::AllI("a".into()), vec![id]));
        assert_eq!(validate_nd(&d, Logic::NJ).unwrap().concl, Ty::forall("a", Ty::imp(a(), a())));
    }

    #[test]
    fn bad_hypothesis_index() {
        let d = der(vec![], NdProof::leaf(NdRule::Ax(1)));
        assert!(matches!(validate_nd(&d, Logic::NK), Err(NdError::BadHypothesis { .. })));
    }
}
