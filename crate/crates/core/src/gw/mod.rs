//! Stationary Gromov-Witten invariants of the projective line.

pub mod checks;
mod closed;
mod plancherel;
mod poly;
mod toprec;

pub use closed::{closed_for, closed_form, closed_forms, ClosedForm, CLOSED_FORMS};
pub use plancherel::{dim_partition, partitions, set_partitions, shifted_power_sum, Plancherel};
pub use poly::{check_eval_props, p_polynomial, p_quasi, sector_insertions, sector_prefactor};
pub use toprec::{Class, GWKey, Insertion, TopRec};
