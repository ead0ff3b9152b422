//! Checkers for the numerical hypotheses of the CM-wildness criterion, the
//! del Pezzo kernel-bundle numerics and the quasi-minimal `Ext` tables.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{rat, Poly, Rational};
use crate::chow::compare_reduced;
use crate::error::{CoreError, CoreResult};
use crate::scroll::{
    dimext_bound, scroll_coh, scroll_hilbert_poly, verify_wildness_cases, ScrollDescriptor,
    ScrollDivisor,
};

/// Twist data certifying, on a curve, that no `t` has
/// `H^0(A(t)) = H^1(B(t)) = 0`.
///
/// `H^0(A(t)) = 0` exactly for `t <= a_h0_zero_until` and `H^1(B(t)) = 0`
/// exactly for `t >= b_h1_zero_from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveWindowCertificate {
    pub a_h0_zero_until: i64,
    pub b_h1_zero_from: i64,
}

impl CurveWindowCertificate {
    pub fn certifies_no_common_twist(&self) -> bool {
        self.a_h0_zero_until < self.b_h1_zero_from
    }
}

/// Numerical certificates for a pair `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WildnessInput {
    pub n: u32,
    pub rp_a: Poly,
    pub rp_b: Poly,
    /// `dim Ext^1(B, A)`, or a lower bound for it.
    pub ext1_dim: BigInt,
    pub ulrich_a: Option<i64>,
    pub ulrich_b: Option<i64>,
    pub curve_window: Option<CurveWindowCertificate>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WildVerdict {
    Inconclusive,
    CMWild,
    NonUlrichCMWild,
}

impl fmt::Display for WildVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WildVerdict::Inconclusive => "Inconclusive",
            WildVerdict::CMWild => "CMWild",
            WildVerdict::NonUlrichCMWild => "NonUlrichCMWild",
        })
    }
}

pub fn cm_wild_criterion(w: &WildnessInput) -> WildVerdict {
    let ordered = compare_reduced(&w.rp_b, &w.rp_a) == Ordering::Less;
    if !ordered || w.ext1_dim < BigInt::from(3) {
        return WildVerdict::Inconclusive;
    }
    let upgrade = if w.n >= 2 {
        !(w.ulrich_a.is_some() && w.ulrich_a == w.ulrich_b)
    } else {
        w.curve_window
            .is_some_and(|c| c.certifies_no_common_twist())
    };
    if upgrade {
        WildVerdict::NonUlrichCMWild
    } else {
        WildVerdict::CMWild
    }
}

/// The unique `t` with `H^*(E(t - j)) = 0` for `1 <= j <= n`, certified for
/// any sheaf `E` filtered by the given line bundles.
pub fn scroll_ulrich_init(s: &ScrollDescriptor, pieces: &[ScrollDivisor]) -> Option<i64> {
    let n = s.n() as i64;
    let bound = pieces.iter().map(|p| p.x.abs() + p.y.abs()).max()? + n + 2;
    let vanishes = |t: i64| {
        pieces.iter().all(|p| {
            scroll_coh(s, ScrollDivisor::new(p.x + t, p.y))
                .iter()
                .all(|(_, h)| h.is_zero())
        })
    };
    (-bound..=bound).find(|&t| (1..=n).all(|j| vanishes(t - j)))
}

/// `A = O` and `B = U_k` on the balanced scroll of type `(n, d)`.
pub fn scroll_wildness_input(n: i64, d: i64) -> CoreResult<WildnessInput> {
    let report = verify_wildness_cases(n, d)?;
    let s = ScrollDescriptor::balanced(n as usize, d)?;
    let minus_f = ScrollDivisor::new(0, -1);
    let ulrich_line = ScrollDivisor::new(-1, d - 1);
    let sub = Rational::from_integer(report.sub_mult.clone());
    let quot = Rational::from_integer(report.quot_mult.clone());
    let p_b = &scroll_hilbert_poly(&s, minus_f).scale(&sub)
        + &scroll_hilbert_poly(&s, ulrich_line).scale(&quot);
    let rank = &sub + &quot;
    let zero = ScrollDivisor::new(0, 0);
    let pieces: Vec<ScrollDivisor> = [
        (minus_f, &report.sub_mult),
        (ulrich_line, &report.quot_mult),
    ]
    .into_iter()
    .filter(|(_, m)| !m.is_zero())
    .map(|(p, _)| p)
    .collect();
    Ok(WildnessInput {
        n: n as u32,
        rp_a: scroll_hilbert_poly(&s, zero),
        rp_b: p_b.scale(&(Rational::from_integer(1.into()) / rank)),
        ext1_dim: dimext_bound(n, d, report.k)?,
        ulrich_a: scroll_ulrich_init(&s, &[zero]),
        ulrich_b: scroll_ulrich_init(&s, &pieces),
        curve_window: None,
    })
}

/// Del Pezzo surface carrying the kernel-bundle families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DelPezzoCase {
    /// Blow-up of `P2` at a point.
    BlowUp,
    /// `P1 x P1`.
    Quadric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DelPezzoDatum {
    pub case: DelPezzoCase,
    pub a: i64,
    pub b: i64,
}

impl DelPezzoDatum {
    pub fn new(case: DelPezzoCase, a: i64, b: i64) -> CoreResult<Self> {
        let min_a = match case {
            DelPezzoCase::BlowUp => 2,
            DelPezzoCase::Quadric => 1,
        };
        if a < min_a || b < 1 {
            return Err(CoreError::OutOfRange(format!(
                "{case:?} needs a >= {min_a} and b >= 1, got a={a}, b={b}"
            )));
        }
        Ok(DelPezzoDatum { case, a, b })
    }

    /// `b_a = 2a` (blow-up) or `3a` (quadric).
    pub fn b_threshold(&self) -> i64 {
        match self.case {
            DelPezzoCase::BlowUp => 2 * self.a,
            DelPezzoCase::Quadric => 3 * self.a,
        }
    }

    /// Euler characteristics of the two line bundles the kernel is built
    /// from: `chi(E) = b chi(L) - a chi(M)`.
    fn line_chis(&self) -> (i64, i64) {
        match self.case {
            DelPezzoCase::BlowUp => (3, 6),
            DelPezzoCase::Quadric => (2, 6),
        }
    }

    /// The construction needs `D(a, b) > 0` and `b >= b_a`.
    pub fn is_constructible(&self) -> bool {
        dp_family_dim(self) > 0 && self.b >= self.b_threshold()
    }
}

/// `D(a, b) = 3ab - a^2 - b^2 + 1` (blow-up), `4ab - a^2 - b^2 + 1` (quadric).
pub fn dp_family_dim(d: &DelPezzoDatum) -> i64 {
    let cross = match d.case {
        DelPezzoCase::BlowUp => 3,
        DelPezzoCase::Quadric => 4,
    };
    cross * d.a * d.b - d.a * d.a - d.b * d.b + 1
}

/// `chi(E)`; errors when the construction does not apply.
pub fn dp_kernel_chi(d: &DelPezzoDatum) -> CoreResult<i64> {
    if !d.is_constructible() {
        return Err(CoreError::OutOfRange(format!(
            "no kernel bundle for {:?}: D = {}, b_a = {}",
            d,
            dp_family_dim(d),
            d.b_threshold()
        )));
    }
    let (chi_l, chi_m) = d.line_chis();
    Ok(d.b * chi_l - d.a * chi_m)
}

/// `b > b_a` and `0 < chi(E) < deg (b - a)`.
pub fn dp_nonulrich_check(d: &DelPezzoDatum, deg: i64) -> CoreResult<bool> {
    let chi = dp_kernel_chi(d)?;
    Ok(d.b > d.b_threshold() && 0 < chi && chi < deg * (d.b - d.a))
}

/// `dim Ext^i(E_p, E_q)` for the two quasi-minimal sheaves, `i = 0, 1` and
/// `i >= 2` (unknown on a cone).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiMinimalExtTable {
    pub hom: [[u64; 2]; 2],
    pub ext1: [[u64; 2]; 2],
    pub higher: Option<[[u64; 2]; 2]>,
}

pub fn quasi_minimal_ext_table(big_n: i64, cone: bool) -> CoreResult<QuasiMinimalExtTable> {
    if big_n < 3 {
        return Err(CoreError::OutOfRange(format!(
            "N must be at least 3, got {big_n}"
        )));
    }
    let (diag, off) = if cone {
        (big_n as u64 + 1, big_n as u64)
    } else {
        (5, 4)
    };
    Ok(QuasiMinimalExtTable {
        hom: [[1, 0], [0, 1]],
        ext1: [[diag, off], [off, diag]],
        higher: (!cone).then_some([[0, 0], [0, 0]]),
    })
}

/// `(td + n)/n! prod_{i=1}^{n-1} (t + i)` and `td/n! prod (t + i)`, the
/// reduced Hilbert polynomials of `O` and of an initialized Ulrich sheaf.
pub fn scroll_reference_polys(n: i64, d: i64) -> (Poly, Poly) {
    let mut prod = Poly::constant(rat(1));
    let mut fact = rat(1);
    for i in 1..n {
        prod = &prod * &Poly::shifted_t(i);
    }
    for i in 1..=n {
        fact *= rat(i);
    }
    let inv = rat(1) / fact;
    let td = Poly::from_ints(&[0, d]);
    let structure = &(&td + &Poly::constant(rat(n))) * &prod;
    let ulrich = &td * &prod;
    (structure.scale(&inv), ulrich.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::a_seq;
    use proptest::prelude::*;

    fn base(ext1: i64) -> WildnessInput {
        let (rp_a, rp_b) = scroll_reference_polys(3, 4);
        WildnessInput {
            n: 3,
            rp_a,
            rp_b,
            ext1_dim: BigInt::from(ext1),
            ulrich_a: None,
            ulrich_b: Some(1),
            curve_window: None,
        }
    }

    #[test]
    fn criterion_examples() {
        assert_eq!(cm_wild_criterion(&base(8)), WildVerdict::NonUlrichCMWild);
        assert_eq!(cm_wild_criterion(&base(2)), WildVerdict::Inconclusive);
        let mut w = base(8);
        w.rp_b = w.rp_a.clone();
        assert_eq!(cm_wild_criterion(&w), WildVerdict::Inconclusive);
        let mut w = base(8);
        w.ulrich_a = Some(1);
        assert_eq!(cm_wild_criterion(&w), WildVerdict::CMWild);
    }

    #[test]
    fn curve_clause() {
        let mut w = base(5);
        w.n = 1;
        assert_eq!(cm_wild_criterion(&w), WildVerdict::CMWild);
        w.curve_window = Some(CurveWindowCertificate {
            a_h0_zero_until: -1,
            b_h1_zero_from: 0,
        });
        assert_eq!(cm_wild_criterion(&w), WildVerdict::NonUlrichCMWild);
        w.curve_window = Some(CurveWindowCertificate {
            a_h0_zero_until: 2,
            b_h1_zero_from: 0,
        });
        assert_eq!(cm_wild_criterion(&w), WildVerdict::CMWild);
    }

    #[test]
    fn scroll_pipeline() {
        for (n, d) in [(2, 5), (2, 7), (3, 4), (3, 6), (4, 4), (5, 9)] {
            let w = scroll_wildness_input(n, d).unwrap();
            let (structure, ulrich) = scroll_reference_polys(n, d);
            assert_eq!(w.rp_a, structure, "n={n} d={d}");
            assert_eq!(w.rp_b, ulrich, "n={n} d={d}");
            assert_eq!(w.ulrich_b, Some(1));
            assert_eq!(w.ulrich_a, None);
            assert_eq!(cm_wild_criterion(&w), WildVerdict::NonUlrichCMWild);
        }
    }

    #[test]
    fn del_pezzo_examples() {
        let d = DelPezzoDatum::new(DelPezzoCase::BlowUp, 2, 5).unwrap();
        assert_eq!(dp_family_dim(&d), 2);
        assert_eq!(dp_kernel_chi(&d).unwrap(), 3);
        let q = DelPezzoDatum::new(DelPezzoCase::Quadric, 1, 4).unwrap();
        assert_eq!(dp_family_dim(&q), 0);
        assert!(dp_kernel_chi(&q).is_err());
        let d = DelPezzoDatum::new(DelPezzoCase::BlowUp, 3, 7).unwrap();
        assert!(dp_nonulrich_check(&d, 6).unwrap());
        assert!(DelPezzoDatum::new(DelPezzoCase::BlowUp, 1, 3).is_err());
    }

    #[test]
    fn quadric_chi_vanishes_at_threshold() {
        for a in 2..6 {
            let at = DelPezzoDatum::new(DelPezzoCase::Quadric, a, 3 * a).unwrap();
            assert_eq!(dp_kernel_chi(&at).unwrap(), 0);
            let above = DelPezzoDatum::new(DelPezzoCase::Quadric, a, 3 * a + 1).unwrap();
            assert!(dp_kernel_chi(&above).unwrap() > 0);
        }
    }

    #[test]
    fn ext_tables() {
        let t = quasi_minimal_ext_table(4, false).unwrap();
        assert_eq!(t.ext1, [[5, 4], [4, 5]]);
        assert_eq!(t.higher, Some([[0, 0], [0, 0]]));
        let t = quasi_minimal_ext_table(5, true).unwrap();
        assert_eq!(t.ext1, [[6, 5], [5, 6]]);
        assert_eq!(t.hom[0][1], 0);
        assert!(quasi_minimal_ext_table(2, false).is_err());
    }

    proptest! {
        #[test]
        fn family_dim_is_symmetric(a in 2i64..30, b in 2i64..30) {
            for case in [DelPezzoCase::BlowUp, DelPezzoCase::Quadric] {
                let ab = DelPezzoDatum::new(case, a, b).unwrap();
                let ba = DelPezzoDatum::new(case, b, a).unwrap();
                prop_assert_eq!(dp_family_dim(&ab), dp_family_dim(&ba));
            }
        }

        #[test]
        fn criterion_is_monotone_in_ext1(ext1 in 0i64..20, extra in 0i64..20, same in any::<bool>()) {
            let mut w = base(ext1);
            if same {
                w.ulrich_a = w.ulrich_b;
            }
            let before = cm_wild_criterion(&w);
            w.ext1_dim += extra;
            prop_assert!(cm_wild_criterion(&w) >= before);
        }
    }

    #[test]
    fn case_index_matches_sequence() {
        let r = verify_wildness_cases(2, 6).unwrap();
        assert_eq!(r.quot_mult, a_seq(r.ell, 4).unwrap());
    }
}
