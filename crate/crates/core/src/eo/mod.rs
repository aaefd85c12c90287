//! The recursion engine and the structural checks on its output.

pub mod checks;
mod engine;
mod multidiff;

pub use engine::{is_stable, max_pole_order, max_total_excess, Engine};
pub use multidiff::{distinct_permutations, excess, multisets, Kind, Multidiff, PoleForm, Sheet};

#[allow(unused_imports)]
pub(crate) use engine::{bergmann_factor, mul_into, sub_multisets, FactorTables, FormSeries};

use crate::curve::SpectralCurve;
use crate::error::Result;

/// One-shot evaluation of `omega^g_n` with every invariant taken on the given
/// curve.
pub fn compute_omega(curve: &SpectralCurve, g: u32, n: u32) -> Result<Multidiff> {
    let e = Engine::with_fixed_truncation(curve.truncation());
    Ok((*e.omega(g, n)?).clone())
}
