//! The exceptional collection adapted to ACM sheaves on `P1 x P2`, its left
//! dual, the Beilinson `E_1` table and the resulting classifier.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{rat, rat_frac, Rational};
use crate::chow::{euler_pairing, hilbert_poly, ChernCharacter, DivisorClass, HilbertPolynomial};
use crate::cohomology::{ext_blocks_with, is_acm, AcmCheck, BuildingBlock, ExtMode, Sheaf};
use crate::error::{CoreError, CoreResult};

/// `E = (O(-L), O(F-L), O(-F), O(L-F), Omega_pi(L), O)` and its left dual
/// `(O, O(L), O(1)[1], T_pi(F)[1], O(F+2L)[2], O(2)[2])`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalCollection;

impl ExceptionalCollection {
    /// Homological shift of each dual object.
    pub const SHIFTS: [usize; 6] = [0, 0, 1, 1, 2, 2];

    pub fn objects() -> [BuildingBlock; 6] {
        use BuildingBlock::*;
        [
            LineBundle(DivisorClass::new(0, -1)),
            LineBundle(DivisorClass::new(1, -1)),
            LineBundle(DivisorClass::new(-1, 0)),
            LineBundle(DivisorClass::new(-1, 1)),
            OmegaPi(DivisorClass::new(0, 1)),
            LineBundle(DivisorClass::ZERO),
        ]
    }

    /// Dual objects without their shifts.
    pub fn dual_blocks() -> [BuildingBlock; 6] {
        use BuildingBlock::*;
        [
            LineBundle(DivisorClass::ZERO),
            LineBundle(DivisorClass::L),
            LineBundle(DivisorClass::H),
            BuildingBlock::tangent_pi(DivisorClass::F),
            LineBundle(DivisorClass::new(1, 2)),
            LineBundle(DivisorClass::H.twist(1)),
        ]
    }

    /// Class of the shifted dual object `^dE_j`.
    pub fn dual_class(j: usize) -> ChernCharacter {
        let ch = Self::dual_blocks()[j].ch();
        if Self::SHIFTS[j] % 2 == 1 {
            -&ch
        } else {
            ch
        }
    }
}

/// The `6 x 6` table `a_{i,j} = dim Ext^i(^dE_j, F)` with interval entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BeilinsonTable {
    lo: [[BigInt; 6]; 6],
    hi: [[BigInt; 6]; 6],
}

impl BeilinsonTable {
    pub fn lo(&self, i: usize, j: usize) -> &BigInt {
        &self.lo[i][j]
    }

    pub fn hi(&self, i: usize, j: usize) -> &BigInt {
        &self.hi[i][j]
    }

    pub fn is_exact_at(&self, i: usize, j: usize) -> bool {
        self.lo[i][j] == self.hi[i][j]
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// `a_{i,j}` when exact.
    pub fn a(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.is_exact_at(i, j).then(|| &self.lo[i][j])
    }

    /// The reversed orientation `b_{i,j} = a_{5-i,5-j}`.
    pub fn b(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.a(5 - i, 5 - j)
    }

    pub fn certainly_zero(&self, i: usize, j: usize) -> bool {
        self.hi[i][j].is_zero()
    }

    pub fn certainly_nonzero(&self, i: usize, j: usize) -> bool {
        self.lo[i][j].is_positive()
    }

    pub fn lo_grid(&self) -> &[[BigInt; 6]; 6] {
        &self.lo
    }

    pub fn hi_grid(&self) -> &[[BigInt; 6]; 6] {
        &self.hi
    }

    /// Positions that are possibly nonzero, row-major.
    pub fn support(&self) -> Vec<(usize, usize)> {
        (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.certainly_zero(i, j))
            .collect()
    }
}

impl fmt::Display for BeilinsonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..6 {
            for j in 0..6 {
                if j > 0 {
                    f.write_str(" ")?;
                }
                if self.is_exact_at(i, j) {
                    write!(f, "{:>5}", self.lo[i][j])?;
                } else {
                    write!(f, "{:>5}", format!("{}..{}", self.lo[i][j], self.hi[i][j]))?;
                }
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

pub fn beilinson_table(s: &Sheaf) -> CoreResult<BeilinsonTable> {
    beilinson_table_with(s, ExtMode::Intervals)
}

pub fn beilinson_table_with(s: &Sheaf, mode: ExtMode) -> CoreResult<BeilinsonTable> {
    if s.is_zero() {
        return Err(CoreError::ZeroSheaf);
    }
    let mut lo: [[BigInt; 6]; 6] = Default::default();
    let mut hi: [[BigInt; 6]; 6] = Default::default();
    for (j, block) in ExceptionalCollection::dual_blocks().iter().enumerate() {
        let ext = s.ext_from(block, mode);
        let shift = ExceptionalCollection::SHIFTS[j];
        for i in shift..(shift + 4).min(6) {
            lo[i][j] = ext.lo[i - shift].clone();
            hi[i][j] = ext.hi[i - shift].clone();
        }
    }
    Ok(BeilinsonTable { lo, hi })
}

/// The unique `t0` with `h0(s(t0)) = 0` and `h0(s(t0 + 1)) != 0`.
pub fn normalize_twist(s: &Sheaf) -> CoreResult<i64> {
    if s.is_zero() {
        return Err(CoreError::ZeroSheaf);
    }
    let window = s.window(0);
    let start = window
        .min()
        .ok_or_else(|| CoreError::Undetermined("h0 window not bounded below".into()))?;
    // h0 is certainly zero at start - 1 and eventually certainly positive
    let mut t = start;
    loop {
        let c = s.coh(t);
        if c.lo[0].is_positive() {
            return Ok(t - 1);
        }
        if c.hi[0].is_positive() {
            return Err(CoreError::Undetermined(format!(
                "h0 at twist {t} is not pinned"
            )));
        }
        t += 1;
    }
}

/// Case of the classification of indecomposable ACM bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    OmegaPiTwist {
        t: i64,
    },
    /// `O(-1)` up to twist.
    StructureTwist {
        t: i64,
    },
    /// `O(-L)` up to twist.
    LTwist {
        t: i64,
    },
    Ulrich {
        a: BigInt,
        b: BigInt,
        t: i64,
    },
    NotAcm {
        degree: usize,
        twist: i64,
    },
    NotNormalizable,
    Undetermined {
        reason: String,
    },
}

impl Classification {
    pub fn twist(&self) -> Option<i64> {
        match self {
            Classification::OmegaPiTwist { t }
            | Classification::StructureTwist { t }
            | Classification::LTwist { t }
            | Classification::Ulrich { t, .. } => Some(*t),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::OmegaPiTwist { .. } => "OmegaPiTwist",
            Classification::StructureTwist { .. } => "StructureTwist",
            Classification::LTwist { .. } => "LTwist",
            Classification::Ulrich { .. } => "Ulrich",
            Classification::NotAcm { .. } => "NotACM",
            Classification::NotNormalizable => "NotNormalizable",
            Classification::Undetermined { .. } => "Undetermined",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::OmegaPiTwist { t }
            | Classification::StructureTwist { t }
            | Classification::LTwist { t } => write!(f, "{} t={t}", self.name()),
            Classification::Ulrich { a, b, t } => write!(f, "Ulrich a={a} b={b} t={t}"),
            Classification::NotAcm { degree, twist } => {
                write!(f, "NotACM degree={degree} twist={twist}")
            }
            Classification::NotNormalizable => f.write_str("NotNormalizable"),
            Classification::Undetermined { reason } => write!(f, "Undetermined: {reason}"),
        }
    }
}

fn undetermined(reason: impl Into<String>) -> Classification {
    Classification::Undetermined {
        reason: reason.into(),
    }
}

/// Some twist `t` with `h1(s(tH - L)) != 0`: `Ok(Some(_))` when certain,
/// `Ok(None)` when certainly absent, `Err` when bounds do not decide.
fn omega_trigger(s: &Sheaf) -> Result<Option<i64>, i64> {
    let shifted = s.twist_by(-DivisorClass::L);
    let window = shifted.window(1);
    if window.is_empty() {
        return Ok(None);
    }
    if shifted.is_formal() {
        return Ok(window.witness());
    }
    let Some(points) = window.points() else {
        return Err(window.witness().unwrap_or(0));
    };
    let mut pending = None;
    for t in points {
        let c = shifted.coh(t);
        if c.lo[1].is_positive() {
            return Ok(Some(t));
        }
        if c.hi[1].is_positive() {
            pending.get_or_insert(t);
        }
    }
    match pending {
        Some(t) => Err(t),
        None => Ok(None),
    }
}

/// Case of an indecomposable ACM bundle. Indecomposability is assumed.
pub fn classify(s: &Sheaf) -> CoreResult<Classification> {
    match is_acm(s)? {
        AcmCheck::Acm => {}
        AcmCheck::NotAcm { degree, twist } => {
            return Ok(Classification::NotAcm { degree, twist });
        }
        AcmCheck::Undetermined { degree, twist } => {
            return Ok(undetermined(format!(
                "h{degree} at twist {twist} is not pinned"
            )));
        }
    }
    let t0 = match normalize_twist(s) {
        Ok(t) => t,
        Err(CoreError::Undetermined(reason)) => return Ok(undetermined(reason)),
        Err(CoreError::OutOfRange(_)) => return Ok(Classification::NotNormalizable),
        Err(e) => return Err(e),
    };
    let normal = s.twist(t0);
    match omega_trigger(&normal) {
        Ok(Some(_)) => return Ok(Classification::OmegaPiTwist { t: t0 }),
        Ok(None) => {}
        Err(t) => return Ok(undetermined(format!("h1(F({t}H - L)) is not pinned"))),
    }

    let table = beilinson_table_with(&normal, ExtMode::Tight)?;
    let off_diagonal = |i: usize, j: usize| !((i, j) == (3, 3) || (i, j) == (4, 4));
    let support = table.support();
    let outside: Vec<_> = support
        .iter()
        .filter(|&&(i, j)| off_diagonal(i, j))
        .collect();
    if outside.is_empty() {
        return match (table.a(3, 3), table.a(4, 4)) {
            (Some(a), Some(b)) if !(a.is_zero() && b.is_zero()) => Ok(Classification::Ulrich {
                a: a.clone(),
                b: b.clone(),
                t: t0,
            }),
            (Some(_), Some(_)) => Ok(undetermined("table vanishes identically")),
            _ => Ok(undetermined("diagonal entries a33, a44 are not pinned")),
        };
    }
    if !outside.iter().any(|&&(i, j)| table.certainly_nonzero(i, j)) {
        let (i, j) = *outside[0];
        return Ok(undetermined(format!("table entry a{i}{j} is not pinned")));
    }

    let h0 = normal.twist_by(DivisorClass::L).coh(0);
    if h0.lo[0].is_positive() {
        Ok(Classification::LTwist { t: t0 })
    } else if h0.hi[0].is_zero() {
        Ok(Classification::StructureTwist { t: t0 })
    } else {
        Ok(undetermined("h0(F(L)) is not pinned"))
    }
}

/// Result of checking the dual collection against `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheckReport {
    /// `Ext^*(E_i, E_i) = (1, 0, 0, 0)` exactly.
    pub exceptional: [bool; 6],
    /// `Ext^*(E_i, E_j) = 0` exactly for `i > j`.
    pub backward_vanishing: Vec<(usize, usize, bool)>,
    /// `chi(^dE_i, E_j)`.
    pub pairing: [[Rational; 6]; 6],
    /// `chi(^dE_i, E_j) = (-1)^i delta_{i+j,5}`.
    pub pairing_ok: bool,
    /// `Hom(E_i, E_j) = 0` for the listed pairs, exactly.
    pub hom_vanishing: Vec<(usize, usize, bool)>,
    pub failures: Vec<String>,
}

impl DualCheckReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pairs `(i, j)` with `Hom(E_i, E_j) = 0` for the collection `E`.
pub const HOM_VANISHINGS: [(usize, usize); 8] = [
    (0, 2),
    (0, 3),
    (1, 0),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 4),
];

/// Extra pair `Hom(E_3, E_4) = 0`.
pub const HOM_VANISHING_LAST: (usize, usize) = (3, 4);

pub fn dual_collection_check() -> DualCheckReport {
    let objects = ExceptionalCollection::objects();
    let mut failures = Vec::new();
    let ext = |i: usize, j: usize| ext_blocks_with(&objects[i], &objects[j], ExtMode::Tight);

    let exceptional: [bool; 6] = core::array::from_fn(|i| {
        let e = ext(i, i);
        let ok = e.is_exact() && e.lo == [1, 0, 0, 0].map(BigInt::from);
        if !ok {
            failures.push(format!("E{i} is not exceptional: {e}"));
        }
        ok
    });

    let mut backward_vanishing = Vec::new();
    for i in 0..6 {
        for j in 0..i {
            let e = ext(i, j);
            let ok = e.certainly_zero();
            if !ok {
                failures.push(format!("Ext(E{i}, E{j}) = {e}"));
            }
            backward_vanishing.push((i, j, ok));
        }
    }

    let mut pairing_ok = true;
    let pairing: [[Rational; 6]; 6] = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let chi = euler_pairing(&ExceptionalCollection::dual_class(i), &objects[j].ch());
            let expected = if i + j == 5 {
                rat(if i % 2 == 0 { 1 } else { -1 })
            } else {
                rat(0)
            };
            if chi != expected {
                pairing_ok = false;
                failures.push(format!("chi(dE{i}, E{j}) = {chi}, expected {expected}"));
            }
            chi
        })
    });

    let hom_vanishing = HOM_VANISHINGS
        .iter()
        .chain(core::iter::once(&HOM_VANISHING_LAST))
        .map(|&(i, j)| {
            let e = ext(i, j);
            let ok = e.degree_is_exact(0) && e.lo[0].is_zero();
            if !ok {
                failures.push(format!("Hom(E{i}, E{j}) = {e}"));
            }
            (i, j, ok)
        })
        .collect();

    DualCheckReport {
        exceptional,
        backward_vanishing,
        pairing,
        pairing_ok,
        hom_vanishing,
        failures,
    }
}

/// Building-block family of a semistable ACM type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AcmFamily {
    /// Extensions of `O(-F)`, `O(F-L)` and `Omega_pi(L)`, all with the
    /// reduced Hilbert polynomial of an Ulrich sheaf.
    Ulrich,
    /// `O(-1)^m`.
    Structure,
    /// `O(-L)^m`.
    LMinus,
}

/// A cohomology type: family, twist by `O(t)` and multiplicities
/// `(a, b, c)` of `O(-F)`, `O(F-L)`, `Omega_pi(L)`, or `(m, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcmType {
    pub family: AcmFamily,
    pub twist: i64,
    pub mults: [u64; 3],
}

impl AcmType {
    pub fn ch(&self) -> ChernCharacter {
        let e = DivisorClass::ZERO.twist(self.twist);
        let pieces: [(BuildingBlock, u64); 3] = match self.family {
            AcmFamily::Ulrich => [
                (
                    BuildingBlock::LineBundle(DivisorClass::new(-1, 0)),
                    self.mults[0],
                ),
                (
                    BuildingBlock::LineBundle(DivisorClass::new(1, -1)),
                    self.mults[1],
                ),
                (BuildingBlock::OmegaPi(DivisorClass::L), self.mults[2]),
            ],
            AcmFamily::Structure => [
                (
                    BuildingBlock::LineBundle(DivisorClass::H.twist(-2)),
                    self.mults[0],
                ),
                (BuildingBlock::LineBundle(DivisorClass::ZERO), 0),
                (BuildingBlock::LineBundle(DivisorClass::ZERO), 0),
            ],
            AcmFamily::LMinus => [
                (BuildingBlock::LineBundle(-DivisorClass::L), self.mults[0]),
                (BuildingBlock::LineBundle(DivisorClass::ZERO), 0),
                (BuildingBlock::LineBundle(DivisorClass::ZERO), 0),
            ],
        };
        pieces.iter().fold(ChernCharacter::zero(), |acc, (b, m)| {
            &acc + &b.twist_by(e).ch().scale_int(&BigInt::from(*m))
        })
    }
}

/// Every direct-sum cohomology type of a semistable ACM sheaf with Hilbert
/// polynomial `p`, built from the indecomposable cases of the
/// classification. Terminates because the rank is read off `p`.
pub fn semistable_acm_types(p: &HilbertPolynomial) -> CoreResult<Vec<AcmType>> {
    let rank = p.coeff(3) * rat(2);
    if !rank.is_integer() || !rank.is_positive() {
        return Err(CoreError::OutOfRange(format!(
            "{p} is not the polynomial of a bundle"
        )));
    }
    let r = u64::try_from(rank.to_integer())
        .map_err(|_| CoreError::OutOfRange("rank too large".into()))?;
    let mut out = Vec::new();
    for family in [AcmFamily::Ulrich, AcmFamily::Structure, AcmFamily::LMinus] {
        let base = AcmType {
            family,
            twist: 0,
            mults: [1, 0, 0],
        };
        let reduced = hilbert_poly(&base.ch());
        // the t^2 coefficient of rp(t + s) is c_2 + 3s/2
        let s = (p.coeff(2) / &rank - reduced.coeff(2)) * rat_frac(2, 3);
        if !s.is_integer() {
            continue;
        }
        let Ok(twist) = i64::try_from(s.to_integer()) else {
            continue;
        };
        let unit = AcmType {
            family,
            twist,
            mults: [1, 0, 0],
        };
        if hilbert_poly(&unit.ch()).scale(&rank) != *p {
            continue;
        }
        match family {
            AcmFamily::Ulrich => {
                for c in 0..=r / 2 {
                    for a in 0..=r - 2 * c {
                        out.push(AcmType {
                            family,
                            twist,
                            mults: [a, r - 2 * c - a, c],
                        });
                    }
                }
            }
            _ => out.push(AcmType {
                family,
                twist,
                mults: [r, 0, 0],
            }),
        }
    }
    Ok(out)
}
