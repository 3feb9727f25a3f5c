//! Annular subsurface projections in the slope models.
//!
//! The annulus about an axis `γ` is handled in the frame where `γ = 1/0`;
//! there a curve `p/q` crosses the annulus with twist coordinate `p/q`, and
//! projection distance is measured by twist differences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::farey::{Slope, UnimodularMatrix};

/// Exact twist coordinate about an axis. Only differences of coordinates
/// about the same axis are intrinsic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistCoordinate(pub BigRational);

impl TwistCoordinate {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for TwistCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for TwistCoordinate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A core curve together with a determinant-one matrix sending it to `1/0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularAxis {
    axis: Slope,
    normalizer: UnimodularMatrix,
}

impl AnnularAxis {
    /// Uses an explicit normalizer; fails unless it sends `axis` to `1/0`.
    pub fn with_normalizer(axis: Slope, normalizer: UnimodularMatrix) -> Result<Self> {
        if !normalizer.apply(&axis).is_infinity() {
            return Err(Error::InvalidMatrix(format!(
                "{normalizer} does not send {axis} to 1/0"
            )));
        }
        if !normalizer.det().is_one() {
            return Err(Error::InvalidMatrix(format!(
                "normalizer {normalizer} must have determinant 1"
            )));
        }
        Ok(AnnularAxis { axis, normalizer })
    }

    pub fn axis(&self) -> &Slope {
        &self.axis
    }

    pub fn normalizer(&self) -> &UnimodularMatrix {
        &self.normalizer
    }
}

/// Builds the axis with the deterministic extended-Euclid normalizer.
pub fn make_axis(axis: &Slope) -> AnnularAxis {
    AnnularAxis {
        axis: axis.clone(),
        normalizer: UnimodularMatrix::normalizer(axis),
    }
}

/// Twist coordinate of `s` about the axis; a curve equal to the axis misses
/// the annulus and has no projection.
pub fn twist_coord(ax: &AnnularAxis, s: &Slope) -> Result<TwistCoordinate> {
    if *s == ax.axis {
        return Err(Error::ProjectionEmpty(s.to_string()));
    }
    let image = ax.normalizer.apply(s);
    Ok(TwistCoordinate(BigRational::new(
        image.p().clone(),
        image.q().clone(),
    )))
}

/// `|tw(a) - tw(b)|` as an exact rational.
pub fn twist_difference(ax: &AnnularAxis, a: &Slope, b: &Slope) -> Result<BigRational> {
    Ok((twist_coord(ax, a)?.0 - twist_coord(ax, b)?.0).abs())
}

/// Projection distance `1 + ceil(|tw(a) - tw(b)|)`.
pub fn annular_distance(ax: &AnnularAxis, a: &Slope, b: &Slope) -> Result<BigInt> {
    Ok(twist_difference(ax, a, b)?.ceil().to_integer() + 1)
}

/// Projection distance as a machine integer, saturating at `u64::MAX`.
pub fn annular_distance_u64(ax: &AnnularAxis, a: &Slope, b: &Slope) -> Result<u64> {
    Ok(annular_distance(ax, a, b)?.to_u64().unwrap_or(u64::MAX))
}

/// The `n`-th power of the twist about the axis: conjugate of `[[1, n], [0, 1]]`
/// by the normalizer, so twist coordinates shift by exactly `n`.
pub fn dehn_twist(ax: &AnnularAxis, n: impl Into<BigInt>, s: &Slope) -> Slope {
    let m = ax
        .normalizer
        .inverse()
        .mul(&UnimodularMatrix::twist(n))
        .mul(&ax.normalizer);
    m.apply(s)
}
