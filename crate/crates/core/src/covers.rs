//! Finite covers of the torus by tori, the pillowcase double cover, and the
//! covering relation on slopes.
//!
//! A lattice cover is a finite-index sublattice `Λ = M Z²` of the slope
//! lattice; slopes upstairs are written in the basis given by the columns of
//! `M`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::farey::{normalize_slope, Slope};
use crate::teich::Mobius;

/// A finite-index sublattice of `Z²`, i.e. a torus self-cover of degree
/// `|det M|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeCover {
    /// Row-major `[[m11, m12], [m21, m22]]`; columns generate the sublattice.
    basis: [[i64; 2]; 2],
    orientation_swapped: bool,
}

impl LatticeCover {
    /// Canonical cover: the Hermite normal form `[[a, b], [0, d]]` with
    /// `a, d > 0` and `0 <= b < a` of the sublattice spanned by the columns.
    pub fn new(basis: [[i64; 2]; 2]) -> Result<Self> {
        let raw = Self::from_basis(basis)?;
        Ok(LatticeCover {
            basis: raw.hnf(),
            orientation_swapped: false,
        })
    }

    /// Keeps the given basis, swapping columns if needed so `det > 0`.
    pub fn from_basis(basis: [[i64; 2]; 2]) -> Result<Self> {
        let det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
        if det == 0 {
            return Err(Error::InvalidMatrix(format!("{basis:?} is singular")));
        }
        if det < 0 {
            let swapped = [[basis[0][1], basis[0][0]], [basis[1][1], basis[1][0]]];
            return Ok(LatticeCover {
                basis: swapped,
                orientation_swapped: true,
            });
        }
        Ok(LatticeCover {
            basis,
            orientation_swapped: false,
        })
    }

    pub fn identity() -> Self {
        LatticeCover {
            basis: [[1, 0], [0, 1]],
            orientation_swapped: false,
        }
    }

    /// Every sublattice of index `degree`, each once, in Hermite normal form.
    pub fn all_of_degree(degree: u64) -> Vec<LatticeCover> {
        let d = degree as i64;
        let mut out = Vec::new();
        for a in 1..=d {
            if d % a != 0 {
                continue;
            }
            for b in 0..a {
                out.push(LatticeCover {
                    basis: [[a, b], [0, d / a]],
                    orientation_swapped: false,
                });
            }
        }
        out
    }

    pub fn basis(&self) -> [[i64; 2]; 2] {
        self.basis
    }

    pub fn degree(&self) -> u64 {
        self.det().unsigned_abs()
    }

    /// True when the input basis was orientation reversing and its columns were swapped.
    pub fn orientation_swapped(&self) -> bool {
        self.orientation_swapped
    }

    fn det(&self) -> i64 {
        self.basis[0][0] * self.basis[1][1] - self.basis[0][1] * self.basis[1][0]
    }

    /// Hermite normal form of the column lattice.
    pub fn hnf(&self) -> [[i64; 2]; 2] {
        // Column Euclid on the second row until one column has a zero there.
        let mut u = [self.basis[0][0], self.basis[1][0]];
        let mut v = [self.basis[0][1], self.basis[1][1]];
        while u[1] != 0 {
            let k = v[1].div_euclid(u[1]);
            v = [v[0] - k * u[0], v[1] - k * u[1]];
            std::mem::swap(&mut u, &mut v);
        }
        // Now u = (x, 0) spans the first-axis part, v carries the second row.
        if u[0] < 0 {
            u[0] = -u[0];
        }
        if v[1] < 0 {
            v = [-v[0], -v[1]];
        }
        v[0] = v[0].rem_euclid(u[0]);
        [[u[0], v[0]], [0, v[1]]]
    }

    /// Coordinates of the base vector `(p, q)` scaled by `det`: `adj(M) (p, q)`.
    fn adjugate_apply(&self, p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
        let [[a, b], [c, d]] = self.basis;
        (p * d - q * b, q * a - p * c)
    }

    /// Serialized form `[[m11,m21],[m12,m22]]`, listing the columns.
    pub fn to_column_string(&self) -> String {
        let [[a, b], [c, d]] = self.basis;
        format!("[[{a},{c}],[{b},{d}]]")
    }
}

impl fmt::Display for LatticeCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_column_string())
    }
}

fn parse_columns(s: &str) -> Result<[[i64; 2]; 2]> {
    let bad = || Error::Config(format!("cannot parse cover {s:?}, expected [[a,c],[b,d]]"));
    let digits: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = digits
        .strip_prefix("[[")
        .and_then(|t| t.strip_suffix("]]"))
        .ok_or_else(bad)?;
    let (first, second) = inner.split_once("],[").ok_or_else(bad)?;
    let pair = |t: &str| -> Result<[i64; 2]> {
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        Ok([x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?])
    };
    let (c1, c2) = (pair(first)?, pair(second)?);
    Ok([[c1[0], c2[0]], [c1[1], c2[1]]])
}

/// The fixed degree-two orbifold cover of the pillowcase by the torus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbifoldDoubleCover;

impl OrbifoldDoubleCover {
    pub fn degree(&self) -> u64 {
        2
    }
}

/// A cover named in a config file: a lattice cover or the pillowcase token.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoverSpec {
    Lattice(LatticeCover),
    Pillowcase(OrbifoldDoubleCover),
}

impl CoverSpec {
    pub fn degree(&self) -> u64 {
        match self {
            CoverSpec::Lattice(c) => c.degree(),
            CoverSpec::Pillowcase(c) => c.degree(),
        }
    }

    /// The covering relation applied to a base slope.
    pub fn lift(&self, a: &Slope) -> Slope {
        match self {
            CoverSpec::Lattice(c) => lift_curve(c, a).lifted,
            CoverSpec::Pillowcase(_) => orbifold_lift(a),
        }
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverSpec::Lattice(c) => c.fmt(f),
            CoverSpec::Pillowcase(_) => f.write_str("pillowcase"),
        }
    }
}

impl FromStr for CoverSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoverSpec> {
        if s.trim() == "pillowcase" {
            return Ok(CoverSpec::Pillowcase(OrbifoldDoubleCover));
        }
        Ok(CoverSpec::Lattice(LatticeCover::new(parse_columns(s)?)?))
    }
}

/// A lifted curve: the preimage of a base slope is `components` parallel
/// copies of `lifted`, each wrapping `wrap` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub lifted: Slope,
    pub wrap: u64,
    pub components: u64,
}

/// Covering relation for a lattice cover.
pub fn lift_curve(cov: &LatticeCover, a: &Slope) -> LiftResult {
    let degree = BigInt::from(cov.degree());
    let (w1, w2) = cov.adjugate_apply(a.p(), a.q());
    // k (p, q) lies in the sublattice iff det divides k * gcd(w1, w2).
    let g = degree.gcd(&w1.gcd(&w2));
    let wrap = &degree / &g;
    let lifted = normalize_slope(w1, w2).expect("adjugate of a nonzero vector is nonzero");
    let wrap: u64 = wrap.try_into().expect("wrap divides the degree");
    LiftResult {
        lifted,
        wrap,
        components: cov.degree() / wrap,
    }
}

/// Image of an upstairs slope: the primitive base slope and the multiplicity
/// with which the curve wraps it.
pub fn project_curve(cov: &LatticeCover, alpha: &Slope) -> (Slope, u64) {
    let [[a, b], [c, d]] = cov.basis;
    let v1 = alpha.p() * a + alpha.q() * b;
    let v2 = alpha.p() * c + alpha.q() * d;
    let g = v1.gcd(&v2);
    let mult: u64 = (&g)
        .try_into()
        .expect("multiplicity is bounded by the degree");
    (
        normalize_slope(v1, v2).expect("image of a nonzero vector is nonzero"),
        mult,
    )
}

/// Whether `alpha` is a component of the preimage of its own projection.
/// Always true for lattice covers.
pub fn is_symmetric(cov: &LatticeCover, alpha: &Slope) -> bool {
    let (base, _) = project_curve(cov, alpha);
    lift_curve(cov, &base).lifted == *alpha
}

/// Covering relation for the pillowcase double cover: the identity on slopes.
pub fn orbifold_lift(a: &Slope) -> Slope {
    a.clone()
}

/// Möbius map sending a base modulus to the modulus of the cover.
///
/// With curves `p/q` realized by the vectors `p - qX`, the cover lattice is
/// spanned by `m11 - m21 X` and `m12 - m22 X`, whose ratio gives
/// `X' = (m22 X - m12) / (m11 - m21 X)`.
pub fn cover_modulus_map(cov: &LatticeCover) -> Mobius {
    let [[a, b], [c, d]] = cov.basis;
    Mobius::new(d as f64, -b as f64, -c as f64, a as f64)
}

/// Lower bound `i_base / d` on the intersection of lifted arcs in a
/// degree-`d` cover of the annulus.
pub fn annulus_cover_distance(d: u64, i_base: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    Ok(BigRational::new(i_base.into(), d.into()))
}

/// Intersection number of upstairs slopes `alpha, beta` in the cover, from
/// base data: `wrap_a * wrap_b * i(a, b) / d`.
pub fn lifted_intersection(cov: &LatticeCover, a: &Slope, b: &Slope) -> BigInt {
    let la = lift_curve(cov, a);
    let lb = lift_curve(cov, b);
    let base = a.det(b).abs();
    let num = base * la.wrap * lb.wrap;
    let (quot, rem) = num.div_rem(&BigInt::from(cov.degree()));
    debug_assert!(rem.is_zero());
    quot
}
