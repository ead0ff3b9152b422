//! Line bundles on rational normal scrolls `S(a_1, ..., a_n)`, computed by
//! pushing forward to `P1`, and the quantities entering the wildness bound.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Poly, Rational};
use crate::error::{CoreError, CoreResult};
use crate::mutation::a_seq;

/// Splitting type `a_1 <= ... <= a_n` of the scroll, all `a_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScrollDescriptor {
    degrees: Vec<i64>,
}

impl ScrollDescriptor {
    /// Degrees are sorted; they must be positive and nonempty.
    pub fn new(mut degrees: Vec<i64>) -> CoreResult<Self> {
        if degrees.is_empty() {
            return Err(CoreError::OutOfRange(
                "scroll needs at least one degree".into(),
            ));
        }
        if let Some(bad) = degrees.iter().find(|&&a| a < 1) {
            return Err(CoreError::OutOfRange(format!("scroll degree {bad} < 1")));
        }
        degrees.sort_unstable();
        Ok(ScrollDescriptor { degrees })
    }

    /// The most balanced splitting type with `n` summands and degree `d`.
    pub fn balanced(n: usize, d: i64) -> CoreResult<Self> {
        if n == 0 || d < n as i64 {
            return Err(CoreError::OutOfRange(format!(
                "no scroll with n={n}, d={d}"
            )));
        }
        let q = d / n as i64;
        let r = (d % n as i64) as usize;
        ScrollDescriptor::new((0..n).map(|i| q + i64::from(i >= n - r)).collect())
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Relative dimension, i.e. the dimension of the scroll.
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn d(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// Dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> i64 {
        self.d() + self.n() as i64 - 1
    }

    /// `K = -nH + (d-2)F`.
    pub fn canonical(&self) -> ScrollDivisor {
        ScrollDivisor::new(-(self.n() as i64), self.d() - 2)
    }
}

impl fmt::Display for ScrollDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("S(")?;
        for (i, a) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `xH + yF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScrollDivisor {
    pub x: i64,
    pub y: i64,
}

impl ScrollDivisor {
    pub const fn new(x: i64, y: i64) -> Self {
        ScrollDivisor { x, y }
    }
}

impl core::ops::Sub for ScrollDivisor {
    type Output = ScrollDivisor;
    fn sub(self, o: ScrollDivisor) -> ScrollDivisor {
        ScrollDivisor::new(self.x - o.x, self.y - o.y)
    }
}

/// Number of exponent vectors `e` with `|e| = total`, grouped by the
/// weight `sum e_i a_i`; entry `w` counts weight `w`.
pub(crate) fn sym_weight_counts(weights: &[i64], total: usize) -> Vec<BigInt> {
    let top = weights.iter().copied().max().unwrap_or(0).max(0) as usize * total;
    // dp[j][w]: vectors in the processed variables with |e| = j, weight w
    let mut dp = vec![vec![BigInt::zero(); top + 1]; total + 1];
    dp[0][0] = BigInt::from(1);
    for &a in weights {
        let a = a as usize;
        for j in 1..=total {
            for w in a..=top {
                let carried = dp[j - 1][w - a].clone();
                if !carried.is_zero() {
                    dp[j][w] += carried;
                }
            }
        }
    }
    dp.swap_remove(total)
}

/// `(h0, h1)` on `P1` of `Sym^m(sum O(a_i)) (x) O(shift)`.
fn p1_sym_coh(weights: &[i64], m: usize, shift: i64) -> (BigInt, BigInt) {
    let mut h0 = BigInt::zero();
    let mut h1 = BigInt::zero();
    for (w, count) in sym_weight_counts(weights, m).into_iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let deg = w as i64 + shift;
        if deg >= 0 {
            h0 += &count * BigInt::from(deg + 1);
        } else if deg <= -2 {
            h1 += &count * BigInt::from(-deg - 1);
        }
    }
    (h0, h1)
}

/// `h^i(S, O(xH + yF))` for `i = 0..=n`, as `(degree, dimension)` pairs.
pub fn scroll_coh(s: &ScrollDescriptor, div: ScrollDivisor) -> Vec<(usize, BigInt)> {
    let n = s.n();
    let mut h = vec![BigInt::zero(); n + 1];
    let ScrollDivisor { x, y } = div;
    if x >= 0 {
        let (h0, h1) = p1_sym_coh(s.degrees(), x as usize, y);
        h[0] = h0;
        if n >= 1 {
            h[1] += h1;
        }
    } else if x <= -(n as i64) {
        // relative duality: R^{n-1} pi_* O(xH) = (Sym^{-x-n} E)^v (x) O(-d)
        let m = (-x - n as i64) as usize;
        let dual = dual_sym_coh(s.degrees(), m, y - s.d());
        h[n - 1] += dual.0;
        h[n] += dual.1;
    }
    h.into_iter().enumerate().collect()
}

/// `(h0, h1)` on `P1` of `Sym^m(sum O(-a_i)) (x) O(shift)`.
fn dual_sym_coh(weights: &[i64], m: usize, shift: i64) -> (BigInt, BigInt) {
    let mut h0 = BigInt::zero();
    let mut h1 = BigInt::zero();
    for (w, count) in sym_weight_counts(weights, m).into_iter().enumerate() {
        if count.is_zero() {
            continue;
        }
        let deg = shift - w as i64;
        if deg >= 0 {
            h0 += &count * BigInt::from(deg + 1);
        } else if deg <= -2 {
            h1 += &count * BigInt::from(-deg - 1);
        }
    }
    (h0, h1)
}

/// `chi(O(xH + yF))`.
pub fn scroll_chi(s: &ScrollDescriptor, div: ScrollDivisor) -> BigInt {
    scroll_coh(s, div)
        .into_iter()
        .map(|(i, h)| if i % 2 == 0 { h } else { -h })
        .sum()
}

/// `t -> chi(O(D + tH))`, interpolated from `n + 1` exact values.
pub fn scroll_hilbert_poly(s: &ScrollDescriptor, div: ScrollDivisor) -> Poly {
    let points: Vec<(i64, Rational)> = (0..=s.n() as i64)
        .map(|t| {
            let chi = scroll_chi(s, ScrollDivisor::new(div.x + t, div.y));
            (t, Rational::from_integer(chi))
        })
        .collect();
    Poly::interpolate(&points)
}

fn check_range(n: i64, d: i64) -> CoreResult<()> {
    if n < 2 || d < n {
        return Err(CoreError::OutOfRange(format!(
            "need d >= n >= 2, got n={n}, d={d}"
        )));
    }
    Ok(())
}

/// `l = (n-1)d - n`.
pub fn scroll_ell(n: i64, d: i64) -> CoreResult<i64> {
    check_range(n, d)?;
    Ok((n - 1) * d - n)
}

/// `chi(L^v) = 2n + (1-n)d` with `L = O((d-1)F - H)`.
pub fn chi_l_dual(n: i64, d: i64) -> CoreResult<i64> {
    check_range(n, d)?;
    Ok(2 * n + (1 - n) * d)
}

/// Lower bound `a_{l,k+1}((n-1)d - 2n) - 2 a_{l,k}` for `dim Ext^1(U_k, O)`.
pub fn dimext_bound(n: i64, d: i64, k: u64) -> CoreResult<BigInt> {
    let ell = scroll_ell(n, d)?;
    let next = a_seq(ell, k + 1)?;
    let cur = a_seq(ell, k)?;
    Ok(next * BigInt::from((n - 1) * d - 2 * n) - cur * 2)
}

/// Evaluation of the wildness bound at the index chosen for `(n, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WildnessCaseReport {
    pub n: i64,
    pub d: i64,
    pub k: u64,
    pub ell: i64,
    /// Multiplicity of `O(-F)` in `U_k`.
    pub sub_mult: BigInt,
    /// Multiplicity of `L` in `U_k`.
    pub quot_mult: BigInt,
    pub bound: BigInt,
    pub passes: bool,
}

/// The index `k`: `0` for `n >= 4`, `1` for `n = 3, d >= 4`, `3` for
/// `n = 2, d >= 5`.
pub fn wildness_index(n: i64, d: i64) -> CoreResult<u64> {
    check_range(n, d)?;
    match n {
        _ if n >= 4 => Ok(0),
        3 if d >= 4 => Ok(1),
        2 if d >= 5 => Ok(3),
        _ => Err(CoreError::OutOfRange(format!(
            "(n, d) = ({n}, {d}) is not in the wild range"
        ))),
    }
}

pub fn verify_wildness_cases(n: i64, d: i64) -> CoreResult<WildnessCaseReport> {
    let k = wildness_index(n, d)?;
    let ell = scroll_ell(n, d)?;
    let bound = dimext_bound(n, d, k)?;
    Ok(WildnessCaseReport {
        n,
        d,
        k,
        ell,
        sub_mult: a_seq(ell, k)?,
        quot_mult: a_seq(ell, k + 1)?,
        passes: bound >= BigInt::from(3),
        bound,
    })
}
