//! Virasoro operators on the large phase space and the coefficient
//! relations they impose on Hodge integrals.

mod builders;
mod cohomology;
mod operator;
mod relations;

pub use builders::{
    curve_operator, general_operator, point_constant, point_linear_coefficient, point_operator,
    point_quadratic_coefficient, point_t0_squared, surface_operator, CurveCoords, SurfaceData,
};
pub use cohomology::{CohomologyData, Matrix};
pub use operator::{Applied, DifferentialOperator, Term};
pub use relations::{x_curve, x_surface, y_curve, y_surface, HodgeSource, LinearForm};
