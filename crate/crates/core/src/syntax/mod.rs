//! Types, modes, terms, binding and substitution.

pub mod pretty;
pub mod term;
pub mod types;

pub use term::{
    free_type_vars, free_vars, fresh_name, subst_term, subst_type_in_term, Binder, Context, Crossed, Path, Side,
    Term,
};
pub use types::{measure, opposite, Conn, Hint, MTy, Mode, Quant, Sign, Strength, Ty};
