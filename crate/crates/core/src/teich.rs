//! Flat-torus Teichmüller engine on the upper half-plane.
//!
//! A modulus `X = x + iy` is the unit-area torus `C / (Z + XZ)` rescaled;
//! the slope `p/q` is realized by `qX - p`, so its flat length is
//! `|qX - p| / sqrt(y)` and it becomes short exactly near the cusp `p/q`.
//!
//! Geodesics are handled in the frame where the second endpoint sits at
//! infinity and the first at `x0 ∈ [0, 1)`; the point at time `t` is
//! `x0 + i e^t`, so `t` is hyperbolic arclength. All shortness windows are
//! solved in closed form in that frame.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::{Ladder, Slope, UnimodularMatrix};

/// Absolute tolerance used for all derived real comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// Largest possible systole of a unit-area flat torus, attained at the
/// hexagonal modulus: `(2 / sqrt 3)^(1/2)`.
pub fn bounded_length_constant() -> f64 {
    (2.0 / 3f64.sqrt()).sqrt()
}

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Modulus {
    pub x: f64,
    pub y: f64,
}

impl Modulus {
    pub fn new(x: f64, y: f64) -> Result<Modulus> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "modulus {x} + {y}i is not in the upper half-plane"
            )));
        }
        Ok(Modulus { x, y })
    }

    /// Action of a unimodular matrix, chosen so that
    /// `flat_length(X.transform(g), g s) == flat_length(X, s)`. Determinant
    /// `-1` lands in the lower half-plane and is conjugated back.
    pub fn transform(self, m: &UnimodularMatrix) -> Modulus {
        let [a, b, c, d] = m.to_f64();
        let out = Mobius { a, b, c, d }.apply(self);
        Modulus {
            x: out.x,
            y: out.y.abs(),
        }
    }
}

/// A real fractional-linear map `X -> (aX + b) / (cX + d)` with `ad - bc > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Mobius {
        Mobius { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, z: Modulus) -> Modulus {
        // (a z + b) / (c z + d) with z = x + iy.
        let (nr, ni) = (self.a * z.x + self.b, self.a * z.y);
        let (dr, di) = (self.c * z.x + self.d, self.c * z.y);
        let den = dr * dr + di * di;
        Modulus {
            x: (nr * dr + ni * di) / den,
            y: (ni * dr - nr * di) / den,
        }
    }
}

/// Hyperbolic distance in the curvature `-1` upper half-plane.
pub fn hyperbolic_distance(z: Modulus, w: Modulus) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (z.y * w.y).sqrt())).asinh()
}

/// Flat length of slope `s` on the unit-area torus of modulus `x`.
pub fn flat_length(x: Modulus, s: &Slope) -> f64 {
    let p = s.p().to_f64().unwrap_or(f64::INFINITY);
    let q = s.q().to_f64().unwrap_or(f64::INFINITY);
    let re = q * x.x - p;
    let im = q * x.y;
    (re * re + im * im).sqrt() / x.y.sqrt()
}

/// Shortest curve length and every slope attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Systole {
    pub value: f64,
    pub realizers: Vec<Slope>,
}

/// Systole by Lagrange reduction of the lattice spanned by `1` and `X`.
pub fn systole(x: Modulus) -> Systole {
    // Vectors are tracked as (p, q) with value q X - p.
    let vec_of = |(p, q): (i64, i64)| (q as f64 * x.x - p as f64, q as f64 * x.y);
    let norm2 = |v: (f64, f64)| v.0 * v.0 + v.1 * v.1;
    let mut b1 = (1i64, 0i64);
    let mut b2 = (0i64, 1i64);
    loop {
        if norm2(vec_of(b1)) > norm2(vec_of(b2)) {
            std::mem::swap(&mut b1, &mut b2);
        }
        let (v1, v2) = (vec_of(b1), vec_of(b2));
        let mu = ((v2.0 * v1.0 + v2.1 * v1.1) / norm2(v1)).round();
        if mu == 0.0 {
            break;
        }
        let mu = mu as i64;
        b2 = (b2.0 - mu * b1.0, b2.1 - mu * b1.1);
    }
    let candidates = [
        b1,
        b2,
        (b1.0 + b2.0, b1.1 + b2.1),
        (b1.0 - b2.0, b1.1 - b2.1),
    ];
    let lengths: Vec<(Slope, f64)> = candidates
        .iter()
        .map(|&(p, q)| {
            let s = Slope::from_ints(p, q).expect("reduced basis vectors are nonzero");
            let l = flat_length(x, &s);
            (s, l)
        })
        .collect();
    let value = lengths
        .iter()
        .map(|(_, l)| *l)
        .fold(f64::INFINITY, f64::min);
    let mut realizers: Vec<Slope> = lengths
        .into_iter()
        .filter(|(_, l)| *l - value <= TOLERANCE)
        .map(|(s, _)| s)
        .collect();
    realizers.sort();
    realizers.dedup();
    Systole { value, realizers }
}

/// A curve's position in the frame of a geodesic: in that frame the slope is
/// `P/Q`, and `offset = Q x0 - P` is exact before conversion.
#[derive(Clone, Debug)]
struct FramedCurve {
    slope: Slope,
    q: f64,
    offset: f64,
}

impl FramedCurve {
    fn length_at(&self, t: f64) -> f64 {
        let y = t.exp();
        if self.q == 0.0 {
            return (-t / 2.0).exp();
        }
        (self.offset * self.offset + self.q * self.q * y * y).sqrt() / y.sqrt()
    }

    /// Open time window where the length is below `eps`, if any.
    fn window_below(&self, eps: f64) -> Option<(f64, f64)> {
        if self.q == 0.0 {
            return Some((-2.0 * eps.ln(), f64::INFINITY));
        }
        let (q2, u2) = (self.q * self.q, self.offset * self.offset);
        let e2 = eps * eps;
        let disc = e2 * e2 - 4.0 * q2 * u2;
        if disc <= 0.0 {
            return None;
        }
        let y_hi = (e2 + disc.sqrt()) / (2.0 * q2);
        let y_lo = u2 / (q2 * y_hi);
        let t_lo = if y_lo > 0.0 {
            y_lo.ln()
        } else {
            f64::NEG_INFINITY
        };
        Some((t_lo, y_hi.ln()))
    }
}

/// A truncated hyperbolic geodesic between the cusps of two slopes.
#[derive(Clone, Debug)]
pub struct GeodesicSegment {
    a: Slope,
    b: Slope,
    frame: UnimodularMatrix,
    x0: BigRational,
    intersection: BigInt,
    t_lo: f64,
    t_hi: f64,
    candidates: Vec<FramedCurve>,
}

impl GeodesicSegment {
    /// Geodesic from the cusp of `a` to the cusp of `b`, truncated where the
    /// endpoint curves have length `cutoff`. When the two truncation times
    /// cross (only for Farey neighbours at the default cutoff) the segment
    /// collapses to the point where both endpoint curves have equal length.
    pub fn with_cutoff(a: &Slope, b: &Slope, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cutoff {cutoff} must be positive"
            )));
        }
        let mut g = Self::untruncated(a, b)?;
        let q = g.intersection.to_f64().unwrap_or(f64::INFINITY);
        let t_lo = 2.0 * (cutoff / q).ln();
        let t_hi = -2.0 * cutoff.ln();
        if t_lo < t_hi {
            g.t_lo = t_lo;
            g.t_hi = t_hi;
        } else {
            g.t_lo = -q.ln();
            g.t_hi = g.t_lo;
        }
        Ok(g)
    }

    /// Geodesic restricted to an explicit time window in its frame.
    pub fn with_times(a: &Slope, b: &Slope, t_lo: f64, t_hi: f64) -> Result<Self> {
        if !(t_lo <= t_hi) {
            return Err(Error::InvalidParameter(format!(
                "time window [{t_lo}, {t_hi}] is empty"
            )));
        }
        let mut g = Self::untruncated(a, b)?;
        g.t_lo = t_lo;
        g.t_hi = t_hi;
        Ok(g)
    }

    fn untruncated(a: &Slope, b: &Slope) -> Result<Self> {
        if a == b {
            return Err(Error::DegeneratePair(a.to_string()));
        }
        let to_inf = UnimodularMatrix::normalizer(b);
        let (p, q) = to_inf.apply_raw(a);
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
        let shift = p.div_floor(&q);
        let frame = UnimodularMatrix::twist(-shift.clone()).mul(&to_inf);
        let x0 = BigRational::new(p - &shift * &q, q.clone());
        let mut g = GeodesicSegment {
            a: a.clone(),
            b: b.clone(),
            frame,
            x0,
            intersection: q,
            t_lo: 0.0,
            t_hi: 0.0,
            candidates: Vec::new(),
        };
        g.candidates = Ladder::new(a, b)
            .vertices()
            .iter()
            .map(|v| g.framed(&v.slope))
            .collect();
        Ok(g)
    }

    fn framed(&self, s: &Slope) -> FramedCurve {
        let (p, q) = self.frame.apply_raw(s);
        let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
        if q.is_zero() {
            return FramedCurve {
                slope: s.clone(),
                q: 0.0,
                offset: 0.0,
            };
        }
        let offset = BigRational::from_integer(q.clone()) * &self.x0 - BigRational::from_integer(p);
        FramedCurve {
            slope: s.clone(),
            q: q.to_f64().unwrap_or(f64::INFINITY),
            offset: offset.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn endpoints(&self) -> (&Slope, &Slope) {
        (&self.a, &self.b)
    }

    pub fn t_lo(&self) -> f64 {
        self.t_lo
    }

    pub fn t_hi(&self) -> f64 {
        self.t_hi
    }

    pub fn length(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    /// Intersection number of the endpoint curves.
    pub fn intersection(&self) -> &BigInt {
        &self.intersection
    }

    /// The point at time `t` in the frame with `b` at infinity.
    pub fn frame_point(&self, t: f64) -> Modulus {
        Modulus {
            x: self.x0.to_f64().unwrap_or(0.0),
            y: t.exp(),
        }
    }

    /// The point at time `t` in the original coordinates.
    pub fn point(&self, t: f64) -> Modulus {
        self.frame_point(t).transform(&self.frame.inverse())
    }

    /// Flat length of any slope at time `t`, computed in the frame.
    pub fn length_of(&self, s: &Slope, t: f64) -> f64 {
        self.framed(s).length_at(t)
    }

    /// Systole at time `t`; candidates are the strip vertices, which contain
    /// every curve of length below the bounded-length constant on the geodesic.
    pub fn systole_at(&self, t: f64) -> Systole {
        let lengths: Vec<(f64, &Slope)> = self
            .candidates
            .iter()
            .map(|c| (c.length_at(t), &c.slope))
            .collect();
        let value = lengths
            .iter()
            .map(|(l, _)| *l)
            .fold(f64::INFINITY, f64::min);
        let mut realizers: Vec<Slope> = lengths
            .iter()
            .filter(|(l, _)| *l - value <= TOLERANCE)
            .map(|(_, s)| (*s).clone())
            .collect();
        realizers.sort();
        Systole { value, realizers }
    }

    /// Strip vertices used as shortness candidates.
    pub fn candidate_curves(&self) -> impl Iterator<Item = &Slope> {
        self.candidates.iter().map(|c| &c.slope)
    }
}

/// The geodesic between two slopes truncated at the bounded-length constant.
pub fn geodesic_between(a: &Slope, b: &Slope) -> Result<GeodesicSegment> {
    GeodesicSegment::with_cutoff(a, b, bounded_length_constant())
}

/// A time window during which one curve is shorter than `epsilon`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThinInterval {
    pub curve: Slope,
    pub t_enter: f64,
    pub t_exit: f64,
    pub epsilon: f64,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    let limit = bounded_length_constant();
    if !(epsilon > 0.0 && epsilon < limit) {
        return Err(Error::InvalidEpsilon { epsilon, limit });
    }
    Ok(())
}

/// Every curve that is `epsilon`-short somewhere on the segment, with its
/// window clipped to the segment, sorted by entry time.
pub fn thin_intervals(g: &GeodesicSegment, epsilon: f64) -> Result<Vec<ThinInterval>> {
    check_epsilon(epsilon)?;
    let mut out = Vec::new();
    for c in &g.candidates {
        let Some((enter, exit)) = c.window_below(epsilon) else {
            continue;
        };
        let (enter, exit) = (enter.max(g.t_lo), exit.min(g.t_hi));
        if enter < exit {
            out.push(ThinInterval {
                curve: c.slope.clone(),
                t_enter: enter,
                t_exit: exit,
                epsilon,
            });
        }
    }
    out.sort_by(|x, y| {
        x.t_enter
            .total_cmp(&y.t_enter)
            .then_with(|| x.curve.cmp(&y.curve))
    });
    Ok(out)
}

/// The thick intervals of length at least `min_length` and their total.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThickPart {
    pub endpoints: (Slope, Slope),
    pub intervals: Vec<(f64, f64)>,
    pub epsilon: f64,
    pub min_length: f64,
    pub total: f64,
}

impl ThickPart {
    pub fn count(&self) -> usize {
        self.intervals.len()
    }
}

/// Complement of the thin windows in the segment, keeping intervals of
/// length at least `min_length`.
pub fn thick_part(g: &GeodesicSegment, epsilon: f64, min_length: f64) -> Result<ThickPart> {
    if !(min_length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "minimum length {min_length} must be positive"
        )));
    }
    let thin = thin_intervals(g, epsilon)?;
    let mut intervals = Vec::new();
    let mut cursor = g.t_lo;
    let mut push = |lo: f64, hi: f64| {
        if hi - lo >= min_length {
            intervals.push((lo, hi));
        }
    };
    for w in &thin {
        if w.t_enter > cursor {
            push(cursor, w.t_enter);
        }
        cursor = cursor.max(w.t_exit);
    }
    if g.t_hi > cursor || (thin.is_empty() && g.t_hi >= cursor) {
        push(cursor, g.t_hi);
    }
    let total = intervals.iter().map(|(lo, hi)| hi - lo).sum();
    Ok(ThickPart {
        endpoints: (g.a.clone(), g.b.clone()),
        intervals,
        epsilon,
        min_length,
        total,
    })
}

/// Sample times `t_lo, t_lo + step, ...` ending exactly at `t_hi`.
pub fn sample_times(g: &GeodesicSegment, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step {step} must be positive"
        )));
    }
    let n = ((g.t_hi - g.t_lo) / step).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|i| g.t_lo + i as f64 * step).collect();
    if g.t_hi - times[n] > TOLERANCE {
        times.push(g.t_hi);
    }
    Ok(times)
}

/// Systole realizers along the segment (smallest slope on ties), with
/// consecutive repeats merged.
pub fn shadow(g: &GeodesicSegment, step: f64) -> Result<Vec<(f64, Slope)>> {
    let mut out: Vec<(f64, Slope)> = Vec::new();
    for t in sample_times(g, step)? {
        let s = g.systole_at(t).realizers.swap_remove(0);
        if out.last().map(|(_, prev)| prev != &s).unwrap_or(true) {
            out.push((t, s));
        }
    }
    Ok(out)
}
