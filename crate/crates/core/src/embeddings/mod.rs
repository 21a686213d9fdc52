//! Natural-deduction derivations and their compilation into proof terms.

pub mod builders;
pub mod embed;
pub mod nd;

pub use builders::{
    bottom, ccontrapose, contrapose, icontrapose, lem_n, lem_p, wneg_elim, wneg_intro, BuildError, ContraKind,
};
pub use embed::{embed, embed_with, translate, Embedded, DEFAULT_ALPHA0};
pub use nd::{validate_nd, Logic, NdDerivation, NdError, NdFormula, NdProof, NdRule, Sequent, BOTTOM};

use crate::syntax::{MTy, Sign, Ty};

/// Reads a moded type as a classical formula: affirmations as `A`,
/// denials as `¬A`.
pub fn classem(p: &MTy) -> NdFormula {
    match p.sign() {
        Sign::Pos => p.ty.clone(),
        Sign::Neg => Ty::neg(p.ty.clone()),
    }
}

/// Reads a moded type as an intuitionistic formula. The table coincides
/// with [`classem`].
pub fn intem(p: &MTy) -> NdFormula {
    classem(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_readings() {
        let a = Ty::var("a");
        assert_eq!(classem(&MTy::wneg(a.clone())), Ty::neg(a.clone()));
        assert_eq!(classem(&MTy::pos(a.clone())), a);
        assert_eq!(intem(&MTy::wpos(a.clone())), a);
    }
}
