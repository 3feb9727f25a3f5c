//! Slopes, the Farey-graph edge rule and exact curve-complex distances.
//!
//! A slope `p/q` is a primitive integer pair with `q >= 0` (and `1/0` for the
//! point at infinity). The torus, the once-punctured torus and the
//! four-cone-point sphere all have the Farey graph as curve complex; they
//! differ only in how intersection numbers are counted.

mod oracle;
mod strip;

pub use oracle::{all_geodesics_contain, bfs_distance_oracle, BoundedFareyGraph, Certification};
pub use strip::{Ladder, LadderVertex};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y = g`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let quot = old_r.div_floor(&r);
        let next_r = &old_r - &quot * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &quot * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &quot * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// An essential simple closed curve on a Farey-graph surface, as a
/// primitive integer pair in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Canonical primitive representative of the line through `(p, q)`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Slope> {
        normalize_slope(p.into(), q.into())
    }

    /// The slope `1/0`.
    pub fn infinity() -> Slope {
        Slope {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    /// Shorthand for slopes whose components fit in machine words.
    pub fn from_ints(p: i64, q: i64) -> Result<Slope> {
        Slope::new(p, q)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// `max(|p|, q)`, the size used by bounded oracles and samplers.
    pub fn size(&self) -> BigInt {
        std::cmp::max(self.p.abs(), self.q.clone())
    }

    /// Slope as an exact rational; `None` at infinity.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_infinity() {
            None
        } else {
            Some(BigRational::new(self.p.clone(), self.q.clone()))
        }
    }

    /// Small components, when both fit in an `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.p.to_i64()?, self.q.to_i64()?))
    }

    /// Signed determinant `p_a q_b - q_a p_b`.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        let bad = || Error::InvalidCurve(format!("cannot parse slope {s:?}, expected p/q"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduces `(p, q)` to the canonical slope: primitive, `q >= 0`, `1/0` at infinity.
pub fn normalize_slope(p: BigInt, q: BigInt) -> Result<Slope> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidCurve("(0, 0) is not a slope".into()));
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / &g, q / &g);
    if q.is_negative() || (q.is_zero() && p.is_negative()) {
        p = -p;
        q = -q;
    }
    Ok(Slope { p, q })
}

/// Which exactly computable curve complex is in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceModel {
    /// Torus or once-punctured torus: edges join slopes meeting once.
    TorusFarey,
    /// Sphere with four order-two cone points: edges join slopes meeting twice.
    SphereOrbifold2222,
    /// The annulus; it carries no slope vertices.
    Annulus,
}

impl SurfaceModel {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceModel::TorusFarey => "torus",
            SurfaceModel::SphereOrbifold2222 => "orbifold2222",
            SurfaceModel::Annulus => "annulus",
        }
    }

    /// Intersection number between Farey neighbours in this model.
    pub fn edge_intersection(self) -> Result<u32> {
        match self {
            SurfaceModel::TorusFarey => Ok(1),
            SurfaceModel::SphereOrbifold2222 => Ok(2),
            SurfaceModel::Annulus => Err(Error::UnsupportedModel("annulus")),
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SurfaceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<SurfaceModel> {
        match s.trim().to_ascii_lowercase().as_str() {
            "torus" | "torusfarey" | "torus-farey" => Ok(SurfaceModel::TorusFarey),
            "orbifold2222" | "sphereorbifold2222" | "orbifold" | "pillowcase" => {
                Ok(SurfaceModel::SphereOrbifold2222)
            }
            "annulus" => Ok(SurfaceModel::Annulus),
            other => Err(Error::Config(format!("unknown surface model {other:?}"))),
        }
    }
}

/// Geometric intersection number of two slopes in the given model.
pub fn intersection_number(model: SurfaceModel, a: &Slope, b: &Slope) -> Result<BigInt> {
    let factor = model.edge_intersection()?;
    Ok(a.det(b).abs() * factor)
}

/// Farey edge rule: `|p_a q_b - q_a p_b| = 1` in both slope models.
pub fn is_edge(model: SurfaceModel, a: &Slope, b: &Slope) -> Result<bool> {
    model.edge_intersection()?;
    if a == b {
        return Err(Error::DegeneratePair(a.to_string()));
    }
    Ok(a.det(b).abs().is_one())
}

/// Exact graph distance in the Farey graph.
pub fn farey_distance(a: &Slope, b: &Slope) -> u64 {
    Ladder::new(a, b).distance()
}

/// A 2x2 integer matrix of determinant ±1 acting on slopes by
/// `(p, q) -> (a p + b q, c p + d q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UnimodularMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = UnimodularMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if !m.det().abs().is_one() {
            return Err(Error::InvalidMatrix(format!(
                "determinant {} is not ±1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// The elementary twist `[[1, n], [0, 1]]` about `1/0`.
    pub fn twist(n: impl Into<BigInt>) -> Self {
        UnimodularMatrix {
            a: BigInt::one(),
            b: n.into(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub(crate) fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        UnimodularMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        // det is ±1, so the inverse is det * adjugate.
        let det = self.det();
        UnimodularMatrix {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        UnimodularMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        let p = &self.a * s.p() + &self.b * s.q();
        let q = &self.c * s.p() + &self.d * s.q();
        normalize_slope(p, q).expect("unimodular image of a slope is nonzero")
    }

    /// The image `(a p + b q, c p + d q)` without normalization.
    pub fn apply_raw(&self, s: &Slope) -> (BigInt, BigInt) {
        (
            &self.a * s.p() + &self.b * s.q(),
            &self.c * s.p() + &self.d * s.q(),
        )
    }

    /// Entries as floats, for the Möbius action on moduli.
    pub fn to_f64(&self) -> [f64; 4] {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        [f(&self.a), f(&self.b), f(&self.c), f(&self.d)]
    }

    /// Deterministic determinant-one matrix sending `s` to `1/0`
    /// (the identity when `s` is already `1/0`).
    pub fn normalizer(s: &Slope) -> Self {
        if s.is_infinity() {
            return Self::identity();
        }
        let (_, x, y) = ext_gcd(s.p(), s.q());
        UnimodularMatrix {
            a: -x,
            b: -y,
            c: s.q().clone(),
            d: -s.p().clone(),
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Fractional-linear action of `m` on `s`, normalized.
pub fn apply_unimodular(m: &UnimodularMatrix, s: &Slope) -> Slope {
    m.apply(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::from_ints(p, q).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(-1, 0), Slope::infinity());
        let t = s(3, -6);
        assert_eq!(
            (t.p().clone(), t.q().clone()),
            (BigInt::from(-1), BigInt::from(2))
        );
        assert!(matches!(Slope::new(0, 0), Err(Error::InvalidCurve(_))));
        assert_eq!(s(0, -5), s(0, 1));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::infinity());
        assert_eq!("-3/7".parse::<Slope>().unwrap().to_string(), "-3/7");
        assert_eq!("4".parse::<Slope>().unwrap().to_string(), "4/1");
        assert!("x/2".parse::<Slope>().is_err());
        assert!("0/0".parse::<Slope>().is_err());
    }

    #[test]
    fn intersection_examples() {
        let torus = SurfaceModel::TorusFarey;
        let orb = SurfaceModel::SphereOrbifold2222;
        assert_eq!(
            intersection_number(torus, &s(0, 1), &s(1, 0)).unwrap(),
            1.into()
        );
        assert_eq!(
            intersection_number(orb, &s(0, 1), &s(1, 0)).unwrap(),
            2.into()
        );
        assert_eq!(
            intersection_number(torus, &s(1, 2), &s(2, 5)).unwrap(),
            1.into()
        );
        assert!(matches!(
            intersection_number(SurfaceModel::Annulus, &s(0, 1), &s(1, 0)),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn edge_examples() {
        let m = SurfaceModel::TorusFarey;
        assert!(is_edge(m, &s(0, 1), &s(1, 0)).unwrap());
        assert!(!is_edge(m, &s(1, 0), &s(1, 2)).unwrap());
        assert!(is_edge(m, &s(1, 5), &s(5, 26)).unwrap());
        assert!(is_edge(SurfaceModel::SphereOrbifold2222, &s(1, 5), &s(5, 26)).unwrap());
        assert!(matches!(
            is_edge(m, &s(1, 5), &s(1, 5)),
            Err(Error::DegeneratePair(_))
        ));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(farey_distance(&s(0, 1), &s(1, 0)), 1);
        assert_eq!(farey_distance(&s(1, 0), &s(1, 2)), 2);
        assert_eq!(farey_distance(&s(1, 0), &s(2, 5)), 3);
        assert_eq!(farey_distance(&s(0, 1), &s(5, 26)), 2);
        assert_eq!(farey_distance(&s(7, 3), &s(7, 3)), 0);
    }

    #[test]
    fn unimodular_examples() {
        let id = UnimodularMatrix::identity();
        assert_eq!(apply_unimodular(&id, &s(3, 7)), s(3, 7));
        let t = UnimodularMatrix::twist(1);
        assert_eq!(apply_unimodular(&t, &s(3, 7)), s(10, 7));
        let r = UnimodularMatrix::new(0, -1, 1, 0).unwrap();
        assert_eq!(apply_unimodular(&r, &Slope::infinity()), s(0, 1));
        assert!(UnimodularMatrix::new(2, 0, 0, 1).is_err());
    }

    #[test]
    fn normalizer_sends_slope_to_infinity() {
        for (p, q) in [(0, 1), (1, 0), (2, 5), (-7, 3), (5, 26)] {
            let n = UnimodularMatrix::normalizer(&s(p, q));
            assert!(n.det().is_one());
            assert_eq!(n.apply(&s(p, q)), Slope::infinity());
        }
        assert_eq!(
            UnimodularMatrix::normalizer(&s(0, 1)),
            UnimodularMatrix::raw(0, -1, 1, 0)
        );
        assert_eq!(
            UnimodularMatrix::normalizer(&Slope::infinity()),
            UnimodularMatrix::identity()
        );
    }

    #[test]
    fn inverse_round_trips() {
        let m = UnimodularMatrix::new(2, 3, 1, 2).unwrap();
        let x = s(-4, 9);
        assert_eq!(m.inverse().apply(&m.apply(&x)), x);
        let r = UnimodularMatrix::new(1, 1, 0, -1).unwrap();
        assert_eq!(r.mul(&r.inverse()), UnimodularMatrix::identity());
    }

    #[test]
    fn distinct_slopes_always_intersect() {
        for p in -6..=6 {
            for q in 0..=6 {
                let Ok(a) = Slope::from_ints(p, q) else {
                    continue;
                };
                for b in [s(1, 0), s(0, 1), s(3, 5)] {
                    if a != b {
                        let i = intersection_number(SurfaceModel::TorusFarey, &a, &b).unwrap();
                        assert!(i > BigInt::zero());
                    }
                }
            }
        }
    }
}
