//! Laurent polynomials with scalar or 2x2 matrix coefficients, block
//! matrices over them, determinants, and the map from the group ring.

mod det;
mod mat2;
mod phi;
mod poly;

pub use det::{
    det, det2, det_block, det_cofactor, det_interpolate, det_scalar, flatten, solve, LaurentMatrix,
};
pub use mat2::{Block, Mat2};
pub use phi::Images;
pub use poly::LaurentPoly;
