//! Numerical intersection theory on `X = P1 x P2`.
//!
//! The Chow ring is `Q[f, l] / (f^2, l^3)` where `f` is the fibre class of
//! `X -> P1` and `l` the pull-back of a line from `P2`. Chern characters are
//! stored in the basis `(1, f, l, fl, l^2, fl^2)`; `fl^2` is the class of a
//! point.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat, rat_frac, Poly, Rational};

/// Reduced Hilbert polynomials and Hilbert polynomials share one carrier.
pub type HilbertPolynomial = Poly;

/// Divisor class `a F + b L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DivisorClass {
    pub f: i64,
    pub l: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass::new(0, 0);
    pub const F: DivisorClass = DivisorClass::new(1, 0);
    pub const L: DivisorClass = DivisorClass::new(0, 1);
    /// Hyperplane class `H = F + L` of the Segre embedding.
    pub const H: DivisorClass = DivisorClass::new(1, 1);
    /// `omega_X = O(-2F - 3L)`.
    pub const CANONICAL: DivisorClass = DivisorClass::new(-2, -3);

    pub const fn new(f: i64, l: i64) -> Self {
        DivisorClass { f, l }
    }

    /// `D + tH`.
    pub const fn twist(self, t: i64) -> Self {
        DivisorClass::new(self.f + t, self.l + t)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        DivisorClass::new(self.f + rhs.f, self.l + rhs.l)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        DivisorClass::new(self.f - rhs.f, self.l - rhs.l)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        DivisorClass::new(-self.f, -self.l)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.f, self * rhs.l)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}F{:+}L", self.f, self.l)
    }
}

/// Element of `Q[f, l] / (f^2, l^3)` in the basis `(1, f, l, fl, l^2, fl^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    c: [Rational; 6],
}

const R: usize = 0;
const CF: usize = 1;
const CL: usize = 2;
const CFL: usize = 3;
const CLL: usize = 4;
const CFLL: usize = 5;

impl ChernCharacter {
    pub fn new(c: [Rational; 6]) -> Self {
        ChernCharacter { c }
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        ChernCharacter::new(c.map(rat))
    }

    pub fn zero() -> Self {
        ChernCharacter::new(core::array::from_fn(|_| Rational::zero()))
    }

    pub fn one() -> Self {
        ChernCharacter::from_ints([1, 0, 0, 0, 0, 0])
    }

    pub fn components(&self) -> &[Rational; 6] {
        &self.c
    }

    pub fn rank(&self) -> &Rational {
        &self.c[R]
    }

    /// Degree of the point-class component.
    pub fn integral(&self) -> &Rational {
        &self.c[CFLL]
    }

    /// `ch(E^v)`: components of odd total degree change sign.
    pub fn dual(&self) -> Self {
        const SIGNS: [bool; 6] = [false, true, true, false, false, true];
        ChernCharacter::new(core::array::from_fn(|i| {
            if SIGNS[i] {
                -self.c[i].clone()
            } else {
                self.c[i].clone()
            }
        }))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ChernCharacter::new(core::array::from_fn(|i| &self.c[i] * k))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    /// `td(X) = (1 + f)(1 + 3l/2 + l^2)`.
    pub fn todd() -> Self {
        ChernCharacter::new([
            rat(1),
            rat(1),
            rat_frac(3, 2),
            rat_frac(3, 2),
            rat(1),
            rat(1),
        ])
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(core::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(core::array::from_fn(|i| &self.c[i] - &rhs.c[i]))
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        ChernCharacter::new(core::array::from_fn(|i| -self.c[i].clone()))
    }
}

impl Mul for &ChernCharacter {
    type Output = ChernCharacter;
    fn mul(self, rhs: &ChernCharacter) -> ChernCharacter {
        let a = &self.c;
        let b = &rhs.c;
        ChernCharacter::new([
            &a[R] * &b[R],
            &a[R] * &b[CF] + &a[CF] * &b[R],
            &a[R] * &b[CL] + &a[CL] * &b[R],
            &a[R] * &b[CFL] + &a[CF] * &b[CL] + &a[CL] * &b[CF] + &a[CFL] * &b[R],
            &a[R] * &b[CLL] + &a[CL] * &b[CL] + &a[CLL] * &b[R],
            &a[R] * &b[CFLL]
                + &a[CF] * &b[CLL]
                + &a[CL] * &b[CFL]
                + &a[CFL] * &b[CL]
                + &a[CLL] * &b[CF]
                + &a[CFLL] * &b[R],
        ])
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.c;
        write!(
            f,
            "({}; {}; {}; {}; {}; {})",
            c[0], c[1], c[2], c[3], c[4], c[5]
        )
    }
}

/// Truncated exponential `e^{af + bl} = (1; a; b; ab; b^2/2; ab^2/2)`.
pub fn ch_line(d: DivisorClass) -> ChernCharacter {
    let (a, b) = (d.f, d.l);
    ChernCharacter::new([
        rat(1),
        rat(a),
        rat(b),
        rat(a * b),
        rat_frac(b * b, 2),
        rat_frac(a * b * b, 2),
    ])
}

/// `ch(Omega_pi(D))` from the vertical Euler sequence
/// `0 -> Omega_pi -> O(-L)^3 -> O -> 0`.
pub fn ch_omega_pi(d: DivisorClass) -> ChernCharacter {
    let three = rat(3);
    let omega = &ch_line(DivisorClass::new(0, -1)).scale(&three) - &ChernCharacter::one();
    &omega * &ch_line(d)
}

/// `chi(u, v) = integral of u^v . v . td(X)`.
pub fn euler_pairing(u: &ChernCharacter, v: &ChernCharacter) -> Rational {
    let prod = &(&u.dual() * v) * &ChernCharacter::todd();
    prod.integral().clone()
}

/// `chi(O_X, u)`.
pub fn euler_characteristic(u: &ChernCharacter) -> Rational {
    euler_pairing(&ChernCharacter::one(), u)
}

/// Hilbert polynomial `t -> chi(u . e^{tH})` in closed form.
///
/// With `w = u . td(X)` and `e^{tH} = (1; t; t; t^2; t^2/2; t^3/2)` the point
/// component of `w . e^{tH}` is
/// `w_r t^3/2 + (w_f/2 + w_l) t^2 + (w_fl + w_ll) t + w_fll`.
pub fn hilbert_poly(u: &ChernCharacter) -> HilbertPolynomial {
    let w = u * &ChernCharacter::todd();
    let w = &w.c;
    let half = rat_frac(1, 2);
    Poly::new(alloc::vec![
        w[CFLL].clone(),
        &w[CFL] + &w[CLL],
        &w[CF] * &half + &w[CL],
        &w[R] * &half,
    ])
}

/// Reduced Hilbert polynomial `P(u, t) / r`; `None` in rank zero.
pub fn reduced_hilbert_poly(u: &ChernCharacter) -> Option<HilbertPolynomial> {
    if u.rank().is_zero() {
        return None;
    }
    Some(hilbert_poly(u).scale(&(Rational::one() / u.rank())))
}

/// The order `p <= q` iff `p(t) <= q(t)` for `t >> 0`.
pub fn compare_reduced(p: &HilbertPolynomial, q: &HilbertPolynomial) -> Ordering {
    p.cmp_eventually(q)
}
