//! Kodaira fiber types: local classification from valuations of
//! `(c4, c6, Δ)`, numeric attributes, quadratic twisting and base change.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::ratfunc::Valuation;

/// Largest index `ν` accepted by the fiber-type parser.
pub const MAX_FIBER_INDEX: u32 = 1 << 24;

/// Kodaira type of a fiber. `I(0)` is the smooth fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KodairaError {
    #[error("valuations ({v_c4}, {v_c6}, {v_delta}) violate c4^3 - c6^2 = 1728 Δ")]
    Inconsistent {
        v_c4: Valuation,
        v_c6: Valuation,
        v_delta: u32,
    },
    #[error("valuations ({v_c4}, {v_c6}, {v_delta}) are not minimal")]
    NotMinimal {
        v_c4: Valuation,
        v_c6: Valuation,
        v_delta: u32,
    },
    #[error("no Kodaira type for valuations ({v_c4}, {v_c6}, {v_delta})")]
    NoKodairaType {
        v_c4: Valuation,
        v_c6: Valuation,
        v_delta: u32,
    },
    #[error("ramification index must be at least 1")]
    ZeroRamification,
    #[error("invalid fiber type '{0}'")]
    Parse(String),
}

impl FiberType {
    pub fn is_smooth(self) -> bool {
        self == FiberType::I(0)
    }

    /// Euler number of the fiber, equal to the order of the minimal
    /// discriminant at its place.
    pub fn euler_number(self) -> u32 {
        match self {
            FiberType::I(n) => n,
            FiberType::IStar(n) => 6 + n,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    /// Number of fiber components not meeting the zero section, i.e. the
    /// rank this fiber adds to the trivial lattice.
    pub fn lattice_contribution(self) -> u32 {
        match self {
            FiberType::I(0) => 0,
            FiberType::I(n) => n - 1,
            FiberType::IStar(n) => n + 4,
            FiberType::II => 0,
            FiberType::III => 1,
            FiberType::IV => 2,
            FiberType::IVStar => 6,
            FiberType::IIIStar => 7,
            FiberType::IIStar => 8,
        }
    }

    /// Fiber type after a quadratic twist ramified at this place.
    pub fn twist(self) -> FiberType {
        match self {
            FiberType::I(n) => FiberType::IStar(n),
            FiberType::IStar(n) => FiberType::I(n),
            FiberType::II => FiberType::IVStar,
            FiberType::IVStar => FiberType::II,
            FiberType::III => FiberType::IIIStar,
            FiberType::IIIStar => FiberType::III,
            FiberType::IV => FiberType::IIStar,
            FiberType::IIStar => FiberType::IV,
        }
    }

    /// Change of `h^{1,1} - ρ_tr` caused by twisting at a place carrying
    /// this fiber.
    pub fn twist_delta_change(self) -> i64 {
        match self {
            FiberType::I(0) | FiberType::IVStar | FiberType::IIIStar | FiberType::IIStar => 1,
            FiberType::I(_) | FiberType::IStar(1..) => 0,
            FiberType::II | FiberType::III | FiberType::IV | FiberType::IStar(0) => -1,
        }
    }

    /// A valuation triple realizing this type. Types over `j = 0` carry
    /// `v(c4) = ∞` and an exact `v(c6)`, types over `j = 1728` carry
    /// `v(c6) = ∞` and an exact `v(c4)`.
    pub fn canonical_local_data(self) -> LocalData {
        use Valuation::{Finite as F, Infinite as Inf};
        let (c4, c6, d) = match self {
            FiberType::I(n) => (F(0), F(0), n),
            FiberType::IStar(n) => (F(2), F(3), 6 + n),
            FiberType::II => (Inf, F(1), 2),
            FiberType::III => (F(1), Inf, 3),
            FiberType::IV => (Inf, F(2), 4),
            FiberType::IVStar => (Inf, F(4), 8),
            FiberType::IIIStar => (F(3), Inf, 9),
            FiberType::IIStar => (Inf, F(5), 10),
        };
        LocalData::new(c4, c6, d).expect("canonical triples are consistent")
    }

    /// Fiber type after pulling back along a map with ramification index
    /// `e` at this place.
    pub fn base_change(self, e: u32) -> Result<FiberType, KodairaError> {
        if e == 0 {
            return Err(KodairaError::ZeroRamification);
        }
        let (minimal, _) = self.canonical_local_data().scaled(e).minimalize();
        classify_local(&minimal)
    }

    /// Short class label: `I`, `I*`, `II`, … without the index.
    pub fn family(self) -> &'static str {
        match self {
            FiberType::I(_) => "I",
            FiberType::IStar(_) => "I*",
            FiberType::II => "II",
            FiberType::III => "III",
            FiberType::IV => "IV",
            FiberType::IVStar => "IV*",
            FiberType::IIIStar => "III*",
            FiberType::IIStar => "II*",
        }
    }

    /// All types with Euler number at most `max_euler`, smooth fiber excluded.
    pub fn all_singular_up_to(max_euler: u32) -> Vec<FiberType> {
        let mut out: Vec<FiberType> = (1..=max_euler).map(FiberType::I).collect();
        out.extend((0..=max_euler.saturating_sub(6)).map(FiberType::IStar).filter(|f| f.euler_number() <= max_euler));
        out.extend(
            [
                FiberType::II,
                FiberType::III,
                FiberType::IV,
                FiberType::IVStar,
                FiberType::IIIStar,
                FiberType::IIStar,
            ]
            .into_iter()
            .filter(|f| f.euler_number() <= max_euler),
        );
        out
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for FiberType {
    type Err = KodairaError;

    /// Accepts exactly the printed forms: `I0`, `I7`, `I0*`, `I3*`, `II`,
    /// `III`, `IV`, `II*`, `III*`, `IV*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KodairaError::Parse(s.to_string());
        match s {
            "II" => return Ok(FiberType::II),
            "III" => return Ok(FiberType::III),
            "IV" => return Ok(FiberType::IV),
            "II*" => return Ok(FiberType::IIStar),
            "III*" => return Ok(FiberType::IIIStar),
            "IV*" => return Ok(FiberType::IVStar),
            _ => {}
        }
        let rest = s.strip_prefix('I').ok_or_else(bad)?;
        let (digits, star) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let canonical = !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'));
        if !canonical {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        if n > MAX_FIBER_INDEX {
            return Err(bad());
        }
        Ok(if star {
            FiberType::IStar(n)
        } else {
            FiberType::I(n)
        })
    }
}

impl Serialize for FiberType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Valuations `(v(c4), v(c6), v(Δ))` of a Weierstrass model at one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalData {
    v_c4: Valuation,
    v_c6: Valuation,
    v_delta: u32,
}

impl LocalData {
    /// Validates the triple against `c4^3 - c6^2 = 1728 Δ`: when `3 v(c4)`
    /// and `2 v(c6)` differ, `v(Δ)` is their minimum; when they agree,
    /// `v(Δ)` is at least that value. `c4` and `c6` cannot both vanish.
    pub fn new(v_c4: Valuation, v_c6: Valuation, v_delta: u32) -> Result<Self, KodairaError> {
        let err = KodairaError::Inconsistent {
            v_c4,
            v_c6,
            v_delta,
        };
        let a = v_c4.scaled(3);
        let b = v_c6.scaled(2);
        let ok = match (a, b) {
            (Valuation::Infinite, Valuation::Infinite) => false,
            _ if a != b => a.min(b) == Valuation::Finite(v_delta),
            _ => Valuation::Finite(v_delta) >= a,
        };
        if ok {
            Ok(LocalData {
                v_c4,
                v_c6,
                v_delta,
            })
        } else {
            Err(err)
        }
    }

    pub fn v_c4(&self) -> Valuation {
        self.v_c4
    }

    pub fn v_c6(&self) -> Valuation {
        self.v_c6
    }

    pub fn v_delta(&self) -> u32 {
        self.v_delta
    }

    pub fn is_minimal(&self) -> bool {
        self.reduction_steps() == 0
    }

    fn reduction_steps(&self) -> u32 {
        let k4 = self.v_c4.finite().map_or(u32::MAX, |v| v / 4);
        let k6 = self.v_c6.finite().map_or(u32::MAX, |v| v / 6);
        k4.min(k6).min(self.v_delta / 12)
    }

    /// Subtracts `(4, 6, 12)` as many times as possible, returning the
    /// minimal triple and the number of steps.
    pub fn minimalize(&self) -> (LocalData, u32) {
        let k = self.reduction_steps();
        let sub = |v: Valuation, w: u32| match v {
            Valuation::Finite(x) => Valuation::Finite(x - w * k),
            Valuation::Infinite => Valuation::Infinite,
        };
        (
            LocalData {
                v_c4: sub(self.v_c4, 4),
                v_c6: sub(self.v_c6, 6),
                v_delta: self.v_delta - 12 * k,
            },
            k,
        )
    }

    /// Valuations after pulling back along a map with ramification index `e`.
    pub fn scaled(&self, e: u32) -> LocalData {
        LocalData {
            v_c4: self.v_c4.scaled(e),
            v_c6: self.v_c6.scaled(e),
            v_delta: self.v_delta * e,
        }
    }
}

impl fmt::Display for LocalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v_c4, self.v_c6, self.v_delta)
    }
}

/// Kodaira type of a minimal triple (residue characteristic zero).
pub fn classify_local(d: &LocalData) -> Result<FiberType, KodairaError> {
    use Valuation::Finite as F;
    let (v_c4, v_c6, v_delta) = (d.v_c4, d.v_c6, d.v_delta);
    if !d.is_minimal() {
        return Err(KodairaError::NotMinimal {
            v_c4,
            v_c6,
            v_delta,
        });
    }
    let ge = |v: Valuation, k: u32| v >= F(k);
    let ty = match v_delta {
        0 => Some(FiberType::I(0)),
        n if v_c4 == F(0) => Some(FiberType::I(n)),
        2 if v_c6 == F(1) && ge(v_c4, 1) => Some(FiberType::II),
        3 if v_c4 == F(1) && ge(v_c6, 2) => Some(FiberType::III),
        4 if v_c6 == F(2) && ge(v_c4, 2) => Some(FiberType::IV),
        6 if ge(v_c4, 2) && ge(v_c6, 3) && (v_c4 == F(2) || v_c6 == F(3)) => {
            Some(FiberType::IStar(0))
        }
        n if n > 6 && v_c4 == F(2) && v_c6 == F(3) => Some(FiberType::IStar(n - 6)),
        8 if v_c6 == F(4) && ge(v_c4, 3) => Some(FiberType::IVStar),
        9 if v_c4 == F(3) && ge(v_c6, 5) => Some(FiberType::IIIStar),
        10 if v_c6 == F(5) && ge(v_c4, 4) => Some(FiberType::IIStar),
        _ => None,
    };
    ty.ok_or(KodairaError::NoKodairaType {
        v_c4,
        v_c6,
        v_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Valuation::{Finite as F, Infinite as Inf};

    fn ld(a: Valuation, b: Valuation, d: u32) -> LocalData {
        LocalData::new(a, b, d).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ld(F(4), F(6), 12).minimalize(), (ld(F(0), F(0), 0), 1));
        assert_eq!(ld(F(8), F(12), 24).minimalize(), (ld(F(0), F(0), 0), 2));
        assert_eq!(ld(F(3), F(5), 9).minimalize(), (ld(F(3), F(5), 9), 0));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_local(&ld(Inf, F(1), 2)), Ok(FiberType::II));
        assert_eq!(classify_local(&ld(F(2), Inf, 6)), Ok(FiberType::IStar(0)));
        assert_eq!(classify_local(&ld(F(0), F(0), 6)), Ok(FiberType::I(6)));
        assert_eq!(classify_local(&ld(F(2), F(4), 6)), Ok(FiberType::IStar(0)));
        assert_eq!(classify_local(&ld(F(3), F(3), 6)), Ok(FiberType::IStar(0)));
        // both above the boundary would force v_delta >= 8
        assert!(LocalData::new(F(3), F(4), 6).is_err());
        assert_eq!(classify_local(&ld(F(2), F(3), 9)), Ok(FiberType::IStar(3)));
    }

    #[test]
    fn impossible_triples_are_rejected() {
        assert!(LocalData::new(F(1), F(1), 1).is_err());
        assert!(LocalData::new(F(2), F(3), 5).is_err());
        assert!(LocalData::new(Inf, F(3), 7).is_err());
        assert!(LocalData::new(Inf, Inf, 11).is_err());
        assert!(matches!(
            classify_local(&ld(F(4), F(6), 12)),
            Err(KodairaError::NotMinimal { .. })
        ));
    }

    #[test]
    fn every_minimal_consistent_triple_classifies() {
        let vals: Vec<Valuation> = (0..16).map(F).chain([Inf]).collect();
        for &a in &vals {
            for &b in &vals {
                for d in 0..40 {
                    if let Ok(data) = LocalData::new(a, b, d) {
                        let (m, _) = data.minimalize();
                        let ty = classify_local(&m).unwrap();
                        assert_eq!(ty.euler_number(), m.v_delta(), "{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn euler_and_lattice_examples() {
        assert_eq!(FiberType::IStar(0).euler_number(), 6);
        assert_eq!(FiberType::I(0).euler_number(), 0);
        assert_eq!(FiberType::IIStar.euler_number(), 10);
        assert_eq!(FiberType::IStar(0).lattice_contribution(), 4);
        assert_eq!(FiberType::I(1).lattice_contribution(), 0);
        assert_eq!(FiberType::IIStar.lattice_contribution(), 8);
    }

    #[test]
    fn euler_minus_components_is_one_or_two() {
        // rho_tr = 2 + 12 deg L - 2 (a+b+c+d) - e needs exactly this split
        for f in FiberType::all_singular_up_to(40) {
            let diff = f.euler_number() - f.lattice_contribution();
            let expected = if matches!(f, FiberType::I(_)) { 1 } else { 2 };
            assert_eq!(diff, expected, "{f}");
        }
    }

    #[test]
    fn twist_examples() {
        assert_eq!(FiberType::I(0).twist(), FiberType::IStar(0));
        assert_eq!(FiberType::IIIStar.twist(), FiberType::III);
        assert_eq!(FiberType::IV.twist().twist(), FiberType::IV);
    }

    #[test]
    fn twist_shifts_euler_by_six() {
        for f in FiberType::all_singular_up_to(30).into_iter().chain([FiberType::I(0)]) {
            let (a, b) = (f.euler_number() as i64, f.twist().euler_number() as i64);
            let starred = matches!(
                f,
                FiberType::IStar(_) | FiberType::IIStar | FiberType::IIIStar | FiberType::IVStar
            );
            assert_eq!(b - a, if starred { -6 } else { 6 }, "{f}");
        }
    }

    #[test]
    fn twist_delta_change_matches_lattice_bookkeeping() {
        // h11 moves by 10/12 of the Euler change, rho_tr by the component change
        for f in FiberType::all_singular_up_to(30).into_iter().chain([FiberType::I(0)]) {
            let g = f.twist();
            let de = g.euler_number() as i64 - f.euler_number() as i64;
            let dc = g.lattice_contribution() as i64 - f.lattice_contribution() as i64;
            assert_eq!((10 * de - 12 * dc) / 12, f.twist_delta_change(), "{f}");
        }
    }

    #[test]
    fn base_change_examples() {
        assert_eq!(FiberType::III.base_change(2), Ok(FiberType::IStar(0)));
        assert_eq!(FiberType::I(3).base_change(2), Ok(FiberType::I(6)));
        assert_eq!(FiberType::II.base_change(2), Ok(FiberType::IV));
        assert_eq!(FiberType::I(0).base_change(5), Ok(FiberType::I(0)));
        assert_eq!(FiberType::IStar(2).base_change(2), Ok(FiberType::I(4)));
        assert_eq!(FiberType::IStar(2).base_change(3), Ok(FiberType::IStar(6)));
        assert_eq!(FiberType::II.base_change(0), Err(KodairaError::ZeroRamification));
    }

    #[test]
    fn base_change_residue_rules() {
        for e in 1..=30u32 {
            if e % 6 == 2 {
                assert_eq!(FiberType::II.base_change(e), Ok(FiberType::IV));
            }
            if e % 4 == 2 {
                assert_eq!(FiberType::III.base_change(e), Ok(FiberType::IStar(0)));
            }
            let expected = if e % 2 == 0 {
                FiberType::I(5 * e)
            } else {
                FiberType::IStar(5 * e)
            };
            assert_eq!(FiberType::IStar(5).base_change(e), Ok(expected));
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!("I0".parse(), Ok(FiberType::I(0)));
        assert_eq!("I12*".parse(), Ok(FiberType::IStar(12)));
        assert_eq!("IV*".parse(), Ok(FiberType::IVStar));
        for bad in ["", "I", "I*", "I01", "i3", "IIII", "V", "I-1", "I3**", " I3", "I99999999999", "I16777217"] {
            assert!(bad.parse::<FiberType>().is_err(), "{bad:?}");
        }
    }

    fn any_fiber() -> impl Strategy<Value = FiberType> {
        prop_oneof![
            (0u32..200).prop_map(FiberType::I),
            (0u32..200).prop_map(FiberType::IStar),
            Just(FiberType::II),
            Just(FiberType::III),
            Just(FiberType::IV),
            Just(FiberType::IVStar),
            Just(FiberType::IIIStar),
            Just(FiberType::IIStar),
        ]
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(f in any_fiber()) {
            prop_assert_eq!(f.to_string().parse::<FiberType>(), Ok(f));
        }

        #[test]
        fn twist_is_an_involution(f in any_fiber()) {
            prop_assert_eq!(f.twist().twist(), f);
        }

        #[test]
        fn base_change_identity(f in any_fiber()) {
            prop_assert_eq!(f.base_change(1), Ok(f));
        }

        #[test]
        fn base_change_composes(f in any_fiber(), a in 1u32..=6, b in 1u32..=6) {
            let two_step = f.base_change(a).and_then(|g| g.base_change(b));
            prop_assert_eq!(two_step, f.base_change(a * b));
        }
    }
}
