//! Exact scalar and series arithmetic.

mod degree;
mod hlaurent;
mod matrix;
pub mod rational;
mod scalar;
mod series;
mod tpoly;
mod unit;

pub use degree::MultiDegree;
pub use hlaurent::HLaurent;
pub use matrix::Matrix;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use scalar::{Coefficient, Scalar};
pub use series::{convolve, series_mul, NovikovSeries, SeriesRecord};
pub use tpoly::TPoly;
pub use unit::{invert_unit, linear_factor};
