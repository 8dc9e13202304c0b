//! Exact piecewise-linear tradeoff curves.
//!
//! A curve is a list of `(r, d)` vertices with rational coordinates. It
//! always contains every integer multiplexing gain `0..=r_max` and may
//! carry extra rational breakpoints where a pointwise minimum of two
//! curves crosses. Evaluation clamps `r < 0` to `d(0)` and returns zero
//! past the last vertex.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Rational64;

/// One vertex of a tradeoff curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub r: Q,
    pub d: Q,
}

impl Vertex {
    pub fn new(r: Q, d: Q) -> Self {
        Vertex { r, d }
    }

    pub fn int(r: i64, d: i64) -> Self {
        Vertex { r: Q::from_integer(r), d: Q::from_integer(d) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmtCurve {
    vertices: Vec<Vertex>,
}

impl DmtCurve {
    /// Builds a curve from integer samples `d(0), d(1), ..., d(k_max)`.
    pub fn from_integer_points(ds: &[i64]) -> Self {
        let vertices = ds
            .iter()
            .enumerate()
            .map(|(k, &d)| Vertex::int(k as i64, d))
            .collect();
        DmtCurve::from_vertices(vertices)
    }

    /// Builds a curve from arbitrary vertices sorted by `r`, then
    /// canonicalises it (trailing zeros dropped, redundant rational
    /// breakpoints removed).
    pub fn from_vertices(mut vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a curve needs at least one vertex");
        vertices.dedup_by(|b, a| a.r == b.r);
        debug_assert!(vertices.windows(2).all(|w| w[0].r < w[1].r));
        let mut curve = DmtCurve { vertices };
        curve.canonicalise();
        curve
    }

    /// The zero curve `d(r) = 0` with `r_max = 0`.
    pub fn zero() -> Self {
        DmtCurve { vertices: vec![Vertex::int(0, 0)] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Diversity at zero multiplexing gain.
    pub fn d_max(&self) -> Q {
        self.vertices[0].d
    }

    /// Multiplexing gain of the last vertex.
    pub fn r_max(&self) -> Q {
        self.vertices.last().unwrap().r
    }

    /// `d(k)` at the integer vertices `k = 0..=floor(r_max)`.
    pub fn integer_values(&self) -> Vec<Q> {
        let top = self.r_max().floor().to_integer();
        (0..=top).map(|k| self.eval(Q::from_integer(k))).collect()
    }

    pub fn eval(&self, r: Q) -> Q {
        let first = self.vertices[0];
        if r <= first.r {
            return first.d;
        }
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if r <= b.r {
                return a.d + (b.d - a.d) * (r - a.r) / (b.r - a.r);
            }
        }
        Q::zero()
    }

    pub fn eval_f64(&self, r: f64) -> f64 {
        let first = self.vertices[0];
        let rf = |q: Q| q.to_f64().unwrap();
        if r <= rf(first.r) {
            return rf(first.d);
        }
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if r <= rf(b.r) {
                let t = (r - rf(a.r)) / (rf(b.r) - rf(a.r));
                return rf(a.d) + t * (rf(b.d) - rf(a.d));
            }
        }
        0.0
    }

    /// Multiplies every diversity value by `factor`.
    pub fn scale(&self, factor: i64) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex::new(v.r, v.d * Q::from_integer(factor)))
            .collect();
        DmtCurve::from_vertices(vertices)
    }

    /// Pointwise sum. Breakpoints of both operands are kept.
    pub fn add(&self, other: &DmtCurve) -> Self {
        let rs = merged_breakpoints(&[self, other]);
        let vertices = rs
            .into_iter()
            .map(|r| Vertex::new(r, self.eval(r) + other.eval(r)))
            .collect();
        DmtCurve::from_vertices(vertices)
    }

    /// Pointwise minimum of a non-empty set of curves, with the crossing
    /// points of every pair inserted as exact rational breakpoints.
    pub fn pointwise_min(curves: &[&DmtCurve]) -> Self {
        assert!(!curves.is_empty(), "minimum of an empty set of curves");
        let mut rs = merged_breakpoints(curves);
        let mut extra = Vec::new();
        for w in rs.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            for (i, a) in curves.iter().enumerate() {
                for b in &curves[i + 1..] {
                    let g_lo = a.eval(lo) - b.eval(lo);
                    let g_hi = a.eval(hi) - b.eval(hi);
                    if (g_lo.is_positive() && g_hi.is_negative())
                        || (g_lo.is_negative() && g_hi.is_positive())
                    {
                        // both curves are affine on [lo, hi]
                        let t = g_lo / (g_lo - g_hi);
                        extra.push(lo + t * (hi - lo));
                    }
                }
            }
        }
        rs.extend(extra);
        rs.sort();
        rs.dedup();
        let vertices = rs
            .into_iter()
            .map(|r| {
                let d = curves.iter().map(|c| c.eval(r)).min().unwrap();
                Vertex::new(r, d)
            })
            .collect();
        DmtCurve::from_vertices(vertices)
    }

    fn canonicalise(&mut self) {
        // cut after the first zero
        if let Some(pos) = self.vertices.iter().position(|v| v.d.is_zero()) {
            self.vertices.truncate(pos + 1);
        }
        // drop non-integer vertices lying on the segment of their neighbours
        let mut out: Vec<Vertex> = Vec::with_capacity(self.vertices.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            let keep = v.r.is_integer()
                || i == 0
                || i + 1 == self.vertices.len()
                || !collinear(out[out.len() - 1], v, self.vertices[i + 1]);
            if keep {
                out.push(v);
            }
        }
        self.vertices = out;
    }
}

fn collinear(a: Vertex, b: Vertex, c: Vertex) -> bool {
    (b.d - a.d) * (c.r - b.r) == (c.d - b.d) * (b.r - a.r)
}

fn merged_breakpoints(curves: &[&DmtCurve]) -> Vec<Q> {
    let top = curves.iter().map(|c| c.r_max()).max().unwrap();
    let mut rs: Vec<Q> = curves
        .iter()
        .flat_map(|c| c.vertices.iter().map(|v| v.r))
        .collect();
    let mut k = Q::zero();
    while k <= top {
        rs.push(k);
        k += Q::one();
    }
    rs.sort();
    rs.dedup();
    rs
}

impl fmt::Display for DmtCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({}, {})", v.r, v.d))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
