pub mod full;
pub mod gen;
pub mod json;
pub mod reduce;
pub mod reduced;

pub use full::{fundamental_matrix, is_minuscule, is_regular_semisimple, FullInstance};
pub use gen::{gen_full, gen_reduced, gen_reduced_relaxed, parse_shape, FactorKind, ShapePart};
pub use reduce::{reduce_instance, DerivationLog};
pub use reduced::{all_passed, is_split_fp, t_max, validate_reduced, ReducedInstance, Verdict};
