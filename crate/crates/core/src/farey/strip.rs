//! The strip of Farey triangles crossed by the hyperbolic geodesic joining
//! two slopes, and shortest paths over it.
//!
//! After normalizing `a` to `1/0`, the triangles crossed by the vertical
//! geodesic down to `b = P/Q` are produced by subtractive Euclid on the
//! coordinates of `(P, Q)` in the basis of the current edge. Runs of steps
//! sharing a pivot form fans; a fan is compressed to its pivot, its first two
//! and its last two vertices, since interior fan vertices are never needed
//! by distance, projection or shortness computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{normalize_slope, Slope, UnimodularMatrix};

/// A strip vertex together with its Farey distance from the first endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderVertex {
    pub slope: Slope,
    pub distance: u64,
}

/// Compressed triangle strip between two slopes.
#[derive(Clone, Debug)]
pub struct Ladder {
    a: Slope,
    b: Slope,
    distance: u64,
    vertices: Vec<LadderVertex>,
    partial_quotients: usize,
}

#[derive(Clone)]
struct Vec2 {
    p: BigInt,
    q: BigInt,
}

impl Vec2 {
    fn add_scaled(&self, other: &Vec2, k: &BigInt) -> Vec2 {
        Vec2 {
            p: &self.p + &other.p * k,
            q: &self.q + &other.q * k,
        }
    }
}

/// Distance of the `j`-th new vertex in a fan about a pivot at distance `pivot`
/// whose opposite vertex starts at distance `start`.
fn fan_distance(pivot: u64, start: u64, j: &BigInt) -> u64 {
    let first = pivot.min(start) + 1;
    if j.is_one() {
        first
    } else {
        pivot.min(first) + 1
    }
}

impl Ladder {
    pub fn new(a: &Slope, b: &Slope) -> Ladder {
        let mut ladder = Ladder {
            a: a.clone(),
            b: b.clone(),
            distance: 0,
            vertices: vec![LadderVertex {
                slope: a.clone(),
                distance: 0,
            }],
            partial_quotients: 0,
        };
        if a == b {
            return ladder;
        }
        let norm = UnimodularMatrix::normalizer(a);
        let back = norm.inverse();
        let (mut pp, mut qq) = norm.apply_raw(b);
        if qq < BigInt::zero() {
            pp = -pp;
            qq = -qq;
        }
        let map_back = |v: &Vec2| back.apply(&normalize_slope(v.p.clone(), v.q.clone()).unwrap());

        if qq.is_one() {
            ladder.distance = 1;
            ladder.vertices.push(LadderVertex {
                slope: b.clone(),
                distance: 1,
            });
            return ladder;
        }

        let n = pp.div_floor(&qq);
        let mut left = Vec2 {
            p: n.clone(),
            q: BigInt::one(),
        };
        let mut right = Vec2 {
            p: &n + 1,
            q: BigInt::one(),
        };
        let (mut d_left, mut d_right) = (1u64, 1u64);
        ladder.vertices.push(LadderVertex {
            slope: map_back(&left),
            distance: 1,
        });
        ladder.vertices.push(LadderVertex {
            slope: map_back(&right),
            distance: 1,
        });

        // (P, Q) = alpha * left + beta * right with alpha, beta >= 1 coprime.
        let mut beta = &pp - &n * &qq;
        let mut alpha = &qq - &beta;
        while !(alpha.is_one() && beta.is_one()) {
            ladder.partial_quotients += 1;
            let left_run = alpha > beta;
            let (pivot, moving, d_pivot, d_moving, big, small) = if left_run {
                (&left, &right, d_left, d_right, &alpha, &beta)
            } else {
                (&right, &left, d_right, d_left, &beta, &alpha)
            };
            let k = (big - 1u32) / small;
            let mut recorded: Vec<BigInt> =
                vec![BigInt::one(), BigInt::from(2), &k - 1u32, k.clone()];
            recorded.retain(|j| *j >= BigInt::one() && *j <= k);
            recorded.sort();
            recorded.dedup();
            for j in &recorded {
                let v = moving.add_scaled(pivot, j);
                ladder.vertices.push(LadderVertex {
                    slope: map_back(&v),
                    distance: fan_distance(d_pivot, d_moving, j),
                });
            }
            let new_moving = moving.add_scaled(pivot, &k);
            let new_d = fan_distance(d_pivot, d_moving, &k);
            let reduced = big - &k * small;
            if left_run {
                right = new_moving;
                d_right = new_d;
                alpha = reduced;
            } else {
                left = new_moving;
                d_left = new_d;
                beta = reduced;
            }
        }
        ladder.distance = d_left.min(d_right) + 1;
        ladder.vertices.push(LadderVertex {
            slope: b.clone(),
            distance: ladder.distance,
        });
        let mut seen = std::collections::HashSet::new();
        ladder.vertices.retain(|v| seen.insert(v.slope.clone()));
        ladder
    }

    pub fn distance(&self) -> u64 {
        self.distance
    }

    pub fn endpoints(&self) -> (&Slope, &Slope) {
        (&self.a, &self.b)
    }

    /// Compressed strip vertices, endpoints included, in strip order.
    pub fn vertices(&self) -> &[LadderVertex] {
        &self.vertices
    }

    /// Strip vertices other than the two endpoints.
    pub fn interior(&self) -> impl Iterator<Item = &Slope> {
        self.vertices
            .iter()
            .map(|v| &v.slope)
            .filter(move |s| **s != self.a && **s != self.b)
    }

    /// Number of fans (continued-fraction runs) after the first triangle.
    pub fn fan_count(&self) -> usize {
        self.partial_quotients
    }
}
