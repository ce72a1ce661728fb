//! Exact nonlinear Fenchel conjugation on finite carriers.
//!
//! Every value is an extended rational, so every law is checked by exact
//! comparison rather than within a tolerance.

pub mod conjugate;
pub mod dualmap;
pub mod error;
pub mod extreal;
pub mod funcspace;
pub mod fuzz;
pub mod geometry;
pub mod group;
pub mod law;
pub mod regclose;

pub use conjugate::{attainers, conj, conjugate, conjugate_all, young_gap, ConjugateResult, Formulation};
pub use dualmap::{check_composition_rule, inf_image, pullback, CarrierMap};
pub use error::{Error, Result};
pub use extreal::{ExtReal, Extended, Extremum, Rational};
pub use funcspace::{Carrier, ExtFn, PointSet};
pub use geometry::{
    circle_log, discrete_legendre_1d, exp_local_conjugate, frechet_certificate, Certificate, CircleGrid, ExtPi,
    Grid, IntervalGrid, LegendreMethod, LocalConjugate, PiRational,
};
pub use group::{check_infconv_formula, inf_convolution, midpoint_checks, GroupFn, GroupKind, GroupSpec};
pub use law::{LawReport, Side, Verdict};
pub use regclose::{biconjugate, regularize, supcl_member, TestFamily};
