//! Fibonacci-type sequences and the numerical ladder of rigid Ulrich bundles
//! `U_k`, with `0 -> O(-F)^{c_{k-1}} -> U_k -> O(F-L)^{c_k} -> 0`.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::chow::{ch_line, euler_pairing, ChernCharacter, DivisorClass};
use crate::cohomology::ExtensionSheaf;
use crate::error::{CoreError, CoreResult};

/// `c_0 = 0`, `c_1 = 1`, `c_{k+2} = 3 c_{k+1} - c_k`, `c_{-k} = c_k`.
pub fn c_seq(k: i64) -> BigInt {
    recurrence(3, k.unsigned_abs())
}

/// `a_{l,0} = 0`, `a_{l,1} = 1`, `a_{l,k+2} = l a_{l,k+1} - a_{l,k}`.
pub fn a_seq(l: i64, k: u64) -> CoreResult<BigInt> {
    if l < 2 {
        return Err(CoreError::OutOfRange(alloc::format!(
            "a_seq needs l >= 2, got {l}"
        )));
    }
    Ok(recurrence(l, k))
}

fn recurrence(l: i64, k: u64) -> BigInt {
    let l = BigInt::from(l);
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &l * &cur - &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

fn sub_block() -> ChernCharacter {
    ch_line(DivisorClass::new(-1, 0))
}

fn quot_block() -> ChernCharacter {
    ch_line(DivisorClass::new(1, -1))
}

/// Numerical data of `U_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UlrichDatum {
    pub k: i64,
    /// Multiplicity of `O(-F)`.
    pub a: BigInt,
    /// Multiplicity of `O(F-L)`.
    pub b: BigInt,
    pub rank: BigInt,
    pub cls: ChernCharacter,
}

impl UlrichDatum {
    pub fn chi_self(&self) -> Rational {
        euler_pairing(&self.cls, &self.cls)
    }

    /// The extension shape carrying `U_k`.
    pub fn sheaf(&self) -> ExtensionSheaf {
        ExtensionSheaf::ulrich(self.a.clone(), self.b.clone())
    }
}

impl fmt::Display for UlrichDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "U_{}: a={} b={} rank={}",
            self.k, self.a, self.b, self.rank
        )
    }
}

fn class_of(a: &BigInt, b: &BigInt) -> ChernCharacter {
    &sub_block().scale_int(a) + &quot_block().scale_int(b)
}

pub fn ulrich_class(k: i64) -> UlrichDatum {
    let a = c_seq(k - 1);
    let b = c_seq(k);
    UlrichDatum {
        k,
        rank: &a + &b,
        cls: class_of(&a, &b),
        a,
        b,
    }
}

/// Flip the sign of a class whose rank (or first nonzero component) is
/// negative.
fn normalize_sign(v: ChernCharacter) -> ChernCharacter {
    let lead = v.components().iter().find(|c| !c.is_zero()).cloned();
    match lead {
        Some(c) if c.is_negative() => -&v,
        _ => v,
    }
}

/// `[L_e f] = chi(e, f) e - f`, sign-normalized.
pub fn left_mutation_class(e: &ChernCharacter, f: &ChernCharacter) -> ChernCharacter {
    normalize_sign(&e.scale(&euler_pairing(e, f)) - f)
}

/// `[R_e f] = chi(f, e) e - f`, sign-normalized.
pub fn right_mutation_class(e: &ChernCharacter, f: &ChernCharacter) -> ChernCharacter {
    normalize_sign(&e.scale(&euler_pairing(f, e)) - f)
}

/// `[U_k]` generated purely by mutations from `U_0 = O(-F)` and
/// `U_1 = O(F-L)`: left mutations upward, right mutations downward.
pub fn mutation_ladder_class(k: i64) -> ChernCharacter {
    let (mut lower, mut upper) = (sub_block(), quot_block());
    if k >= 1 {
        for _ in 1..k {
            let next = left_mutation_class(&upper, &lower);
            lower = core::mem::replace(&mut upper, next);
        }
        upper
    } else {
        for _ in k..0 {
            let next = right_mutation_class(&lower, &upper);
            upper = core::mem::replace(&mut lower, next);
        }
        lower
    }
}

/// `U_k^v (x) omega_X(2) = U_{1-k}`, with `omega_X(2) = O(-L)`.
pub fn serre_involution(u: &UlrichDatum) -> CoreResult<UlrichDatum> {
    let image = &u.cls.dual() * &ch_line(DivisorClass::new(0, -1));
    let partner = ulrich_class(1 - u.k);
    if image != partner.cls {
        return Err(CoreError::Mismatch(alloc::format!(
            "dual of U_{} twisted by O(-L) is {image}, not U_{}",
            u.k,
            1 - u.k
        )));
    }
    Ok(partner)
}

/// `chi(u, u) = 1`.
pub fn is_numerically_rigid(u: &UlrichDatum) -> bool {
    u.chi_self().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::euler_pairing;
    use proptest::prelude::*;

    #[test]
    fn c_values() {
        let expected = [0, 1, 3, 8, 21, 55, 144];
        for (k, v) in expected.iter().enumerate() {
            assert_eq!(c_seq(k as i64), BigInt::from(*v));
        }
        assert_eq!(c_seq(4), BigInt::from(21));
        assert_eq!(c_seq(-3), BigInt::from(8));
    }

    #[test]
    fn a_values() {
        for k in 0..=10 {
            assert_eq!(a_seq(3, k).unwrap(), c_seq(k as i64));
        }
        assert_eq!(a_seq(2, 5).unwrap(), BigInt::from(5));
        assert_eq!(a_seq(5, 3).unwrap(), BigInt::from(24));
        assert!(a_seq(1, 3).is_err());
    }

    #[test]
    fn ulrich_class_examples() {
        let u0 = ulrich_class(0);
        assert_eq!(
            (u0.a.clone(), u0.b.clone()),
            (BigInt::one(), BigInt::zero())
        );
        assert_eq!(u0.cls, sub_block());
        let u1 = ulrich_class(1);
        assert_eq!(u1.cls, quot_block());
        let u3 = ulrich_class(3);
        assert_eq!(
            (u3.a, u3.b, u3.rank),
            (BigInt::from(3), BigInt::from(8), BigInt::from(11))
        );
    }

    #[test]
    fn basic_pairings() {
        assert_eq!(
            euler_pairing(&quot_block(), &sub_block()),
            Rational::from_integer((-3).into())
        );
        assert!(euler_pairing(&sub_block(), &quot_block()).is_zero());
    }

    #[test]
    fn mutation_of_exceptional_object_by_itself_vanishes() {
        let e = quot_block();
        assert!(left_mutation_class(&e, &e)
            .components()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn ladder_regenerates_ulrich_classes() {
        for k in -8..=10 {
            assert_eq!(mutation_ladder_class(k), ulrich_class(k).cls, "k={k}");
        }
    }

    #[test]
    fn right_inverts_left_on_ladder() {
        for k in 2..=8 {
            let uk = ulrich_class(k).cls;
            let up = left_mutation_class(&uk, &ulrich_class(k - 1).cls);
            assert_eq!(right_mutation_class(&uk, &up), ulrich_class(k - 1).cls);
        }
    }

    #[test]
    fn serre_examples() {
        assert_eq!(serre_involution(&ulrich_class(0)).unwrap().k, 1);
        assert_eq!(serre_involution(&ulrich_class(1)).unwrap().k, 0);
        let p = serre_involution(&ulrich_class(4)).unwrap();
        assert_eq!((p.k, p.a, p.b), (-3, BigInt::from(21), BigInt::from(8)));
    }

    #[test]
    fn rigidity() {
        for k in -8..=8 {
            assert!(is_numerically_rigid(&ulrich_class(k)), "k={k}");
        }
    }

    proptest! {
        #[test]
        fn cassini(k in -12i64..=12) {
            let lhs = c_seq(k) * c_seq(k) - c_seq(k + 1) * c_seq(k - 1);
            // the symmetric extension flips the sign at k = 0
            let expected = if k == 0 { -BigInt::one() } else { BigInt::one() };
            prop_assert_eq!(lhs, expected);
        }

        #[test]
        fn serre_is_an_involution(k in -10i64..=10) {
            let u = ulrich_class(k);
            let back = serre_involution(&serre_involution(&u).unwrap()).unwrap();
            prop_assert_eq!(back, u);
        }

        #[test]
        fn rank_is_sum_of_neighbours(k in -12i64..=12) {
            let u = ulrich_class(k);
            prop_assert_eq!(u.rank, c_seq(k - 1) + c_seq(k));
        }
    }
}
