//! Exact arithmetic in `Z[zeta_8]` and `Z[zeta_8][theta]`, `theta` the golden
//! ratio.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

pub type GaussInt = Complex<i64>;

/// `sum c_k zeta_8^k` on the power basis `1, zeta, zeta^2, zeta^3`, with
/// `zeta^4 = -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Zeta8(pub [i64; 4]);

impl Zeta8 {
    pub const ZERO: Zeta8 = Zeta8([0; 4]);
    pub const ONE: Zeta8 = Zeta8([1, 0, 0, 0]);
    pub const ZETA: Zeta8 = Zeta8([0, 1, 0, 0]);
    pub const I: Zeta8 = Zeta8([0, 0, 1, 0]);

    pub fn from_gauss(z: GaussInt) -> Self {
        Zeta8([z.re, 0, z.im, 0])
    }

    pub fn int(n: i64) -> Self {
        Zeta8([n, 0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Complex conjugation, `zeta -> zeta^{-1} = -zeta^3`.
    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Zeta8([a, -d, -c, -b])
    }

    /// The automorphism `zeta -> -zeta` fixing `Z[i]`.
    pub fn tau(self) -> Self {
        let [a, b, c, d] = self.0;
        Zeta8([a, -b, c, -d])
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        (self.0[1..] == [0, 0, 0]).then_some(self.0[0])
    }

    pub fn to_c64(self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let basis = [
            Complex64::new(1.0, 0.0),
            Complex64::new(h, h),
            Complex64::new(0.0, 1.0),
            Complex64::new(-h, h),
        ];
        self.0.iter().zip(basis).map(|(&c, b)| b * c as f64).sum()
    }
}

impl Add for Zeta8 {
    type Output = Zeta8;
    fn add(self, o: Zeta8) -> Zeta8 {
        Zeta8(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for Zeta8 {
    type Output = Zeta8;
    fn sub(self, o: Zeta8) -> Zeta8 {
        Zeta8(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Neg for Zeta8 {
    type Output = Zeta8;
    fn neg(self) -> Zeta8 {
        Zeta8(self.0.map(|c| -c))
    }
}

impl Mul for Zeta8 {
    type Output = Zeta8;
    fn mul(self, o: Zeta8) -> Zeta8 {
        let mut c = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let p = self.0[i] * o.0[j];
                if i + j < 4 {
                    c[i + j] += p;
                } else {
                    c[i + j - 4] -= p;
                }
            }
        }
        Zeta8(c)
    }
}

/// `p + q theta` with `theta^2 = theta + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldenZ8 {
    pub p: Zeta8,
    pub q: Zeta8,
}

impl GoldenZ8 {
    pub const ZERO: GoldenZ8 = GoldenZ8 { p: Zeta8::ZERO, q: Zeta8::ZERO };

    pub fn new(p: Zeta8, q: Zeta8) -> Self {
        GoldenZ8 { p, q }
    }

    pub fn scalar(p: Zeta8) -> Self {
        GoldenZ8 { p, q: Zeta8::ZERO }
    }

    /// `theta -> 1 - theta`.
    pub fn sigma(self) -> Self {
        GoldenZ8 { p: self.p + self.q, q: -self.q }
    }

    pub fn conj(self) -> Self {
        GoldenZ8 { p: self.p.conj(), q: self.q.conj() }
    }

    pub fn tau(self) -> Self {
        GoldenZ8 { p: self.p.tau(), q: self.q.tau() }
    }

    /// The value as an element of `Z[zeta_8]`, if `theta` does not appear.
    pub fn as_zeta8(&self) -> Option<Zeta8> {
        self.q.is_zero().then_some(self.p)
    }

    pub fn to_c64(self) -> Complex64 {
        let theta = (1.0 + 5f64.sqrt()) / 2.0;
        self.p.to_c64() + self.q.to_c64() * theta
    }
}

impl Add for GoldenZ8 {
    type Output = GoldenZ8;
    fn add(self, o: GoldenZ8) -> GoldenZ8 {
        GoldenZ8 { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for GoldenZ8 {
    type Output = GoldenZ8;
    fn sub(self, o: GoldenZ8) -> GoldenZ8 {
        GoldenZ8 { p: self.p - o.p, q: self.q - o.q }
    }
}

impl Neg for GoldenZ8 {
    type Output = GoldenZ8;
    fn neg(self) -> GoldenZ8 {
        GoldenZ8 { p: -self.p, q: -self.q }
    }
}

impl Mul for GoldenZ8 {
    type Output = GoldenZ8;
    fn mul(self, o: GoldenZ8) -> GoldenZ8 {
        let qq = self.q * o.q;
        GoldenZ8 { p: self.p * o.p + qq, q: self.p * o.q + self.q * o.p + qq }
    }
}
