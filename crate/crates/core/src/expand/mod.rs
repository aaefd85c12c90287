//! Expansion coefficients of the invariants: `N^g_n` at `z = 0`, `M^g_n` at
//! `x = infinity`, their quasi-polynomial forms and the exceptional cases.

mod coeffs;
mod divstring;
mod exceptional;
pub mod interp;
pub mod mpoly;
mod quasi;
mod transform;

pub use coeffs::{b_vectors, m_from_n, m_value_residue, n_value, CoeffTable, Expansion};
pub use divstring::{check_m_divisor_string, check_m_divisor_string_with, m_with_zero};
pub use exceptional::{expansion_0_1, expansion_0_2, inverse_branch};
pub use mpoly::MPoly;
pub use quasi::{interpolate_quasi, parity_order, top_degree, Form, QuasiPoly};
pub use transform::{m_to_p, n_to_m, p_in_b, prefactor, prefactor_product, q_in_b, transform_polys};
