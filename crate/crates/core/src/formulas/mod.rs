//! Closed forms and quadratures for the left-passage law and the
//! third-grading expected signature coefficient `A_κ`.

mod akappa;
pub mod quadrature;
mod schramm;

pub use akappa::{
    a_kappa_closed_form, a_kappa_double_integral, a_kappa_quadrature, expected_signature_level3,
    inner_radial_closed_form, inner_radial_quadrature, reflected_inner_radial, reflected_inner_radial_tail,
    table_rows, write_table_csv, ExpectedSignature3, TableRow, CATALAN, TABLE_KAPPAS,
};
pub use quadrature::{integrate, Integral, QuadratureSpec};
pub use schramm::{below_probability, below_probability_with, phi};
