//! Psi-class intersection numbers `<tau_{d_1} ... tau_{d_n}>_g`.

mod dvv;
mod eval;
mod memo;
mod reduce;
mod spec;

pub use dvv::{dvv_expand, DvvExpansion, DvvTerm};
pub use eval::{Evaluator, Strategy, TauMemo};
pub use memo::Memo;
pub use reduce::{dilaton_reduce, genus0_closed_form, string_reduce};
pub use spec::{dimension_valid, enumerate_specs, normalize, SpecEnumerator, TauSpec};
