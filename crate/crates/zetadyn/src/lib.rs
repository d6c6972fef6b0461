//! zetadyn: numerical complex dynamics for the Riemann zeta family.
//!
//! The toolkit evaluates zeta/xi/eta/chi and friends, locates non-trivial
//! zeros on the critical line, classifies fixed points of the associated
//! nu-maps and relaxed Newton maps through multipliers and holomorphic
//! indices, expands rotation numbers into certified continued fractions, and
//! renders convergence basins.

pub mod config;
pub mod contour;
pub mod dynamics;
pub mod extended;
pub mod render;
pub mod rotation;
pub mod serde_util;
pub mod special;
pub mod zeros;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Closed axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl Rect {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        Rect {
            re_lo,
            re_hi,
            im_lo,
            im_hi,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_lo && z.re <= self.re_hi && z.im >= self.im_lo && z.im <= self.im_hi
    }

    pub fn is_valid(&self) -> bool {
        self.re_lo < self.re_hi
            && self.im_lo < self.im_hi
            && self.re_lo.is_finite()
            && self.re_hi.is_finite()
            && self.im_lo.is_finite()
            && self.im_hi.is_finite()
    }
}
