//! Configurations of singular fibers and the surface-level calculus built on
//! them: global invariants, extremality, twists, base change, ramification
//! of the j-map and the numeric Torelli criteria.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::input::{content_lines, InputError};
use crate::kodaira::FiberType;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigurationError {
    #[error("invalid label '{0}': labels are nonempty and contain no whitespace, ':', ',', '=' or leading '#'")]
    InvalidLabel(String),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("fiber '{0}' is smooth (I0); configurations list singular fibers only")]
    SmoothFiber(String),
    #[error("Euler numbers sum to {0}, which is not divisible by 12")]
    NoetherViolation(u64),
    #[error("a twist needs an even number of sites, got {0}")]
    OddTwist(usize),
    #[error("twist site '{0}' listed twice")]
    DuplicateSite(String),
    #[error("the j-invariant is constant (no fibers of type I_n or I_n* with n > 0)")]
    ConstantJ,
    #[error("configuration is not realizable: its minimal twist has h11 - rho_tr = {0} < 0")]
    Unrealizable(i64),
    #[error("configuration is not *-minimal: fiber '{0}' has type {1}")]
    NotStarMinimal(String, FiberType),
    #[error("invalid ramification profile: {0}")]
    InvalidProfile(String),
    #[error("p_g = {0}; the criterion needs p_g > 1")]
    GeometricGenusTooSmall(i64),
    #[error(transparent)]
    Parse(#[from] InputError),
}

/// Name of a point of the base curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Label, ConfigurationError> {
        let s = s.into();
        let bad = s.is_empty()
            || s.starts_with('#')
            || s.chars().any(|c| c.is_whitespace() || matches!(c, ':' | ',' | '='));
        if bad {
            Err(ConfigurationError::InvalidLabel(s))
        } else {
            Ok(Label(s))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Label {
    type Err = ConfigurationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

/// Genus of the base curve plus the singular fibers, keyed by label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    genus: u32,
    fibers: BTreeMap<Label, FiberType>,
}

/// `a`: II*, III*, IV*; `b`: II, III, IV; `c`: I0*; `d`: In* with n > 0;
/// `e`: In with n > 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Counts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
}

impl fmt::Display for Counts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.a, self.b, self.c, self.d, self.e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub deg_l: u64,
    pub p_g: i64,
    pub h11: u64,
    pub rho_tr: i64,
    pub counts: Counts,
    /// `h11 - rho_tr`, an upper bound for the Mordell–Weil rank.
    pub delta: i64,
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "deg_L       = {}", self.deg_l)?;
        writeln!(f, "p_g         = {}", self.p_g)?;
        writeln!(f, "h11         = {}", self.h11)?;
        writeln!(f, "rho_tr      = {}", self.rho_tr)?;
        writeln!(f, "(a,b,c,d,e) = {}", self.counts)?;
        writeln!(f, "delta       = {}", self.delta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "note", rename_all = "kebab-case")]
pub enum Extremality {
    Extremal,
    NotExtremal,
    OutOfScope(String),
}

impl fmt::Display for Extremality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extremality::Extremal => f.write_str("extremal"),
            Extremality::NotExtremal => f.write_str("not extremal"),
            Extremality::OutOfScope(note) => write!(f, "out of scope ({note})"),
        }
    }
}

impl Configuration {
    pub fn new(
        genus: u32,
        fibers: impl IntoIterator<Item = (Label, FiberType)>,
    ) -> Result<Configuration, ConfigurationError> {
        let mut map = BTreeMap::new();
        for (label, fiber) in fibers {
            if fiber.is_smooth() {
                return Err(ConfigurationError::SmoothFiber(label.0));
            }
            if map.contains_key(&label) {
                return Err(ConfigurationError::DuplicateLabel(label.0));
            }
            map.insert(label, fiber);
        }
        let c = Configuration { genus, fibers: map };
        let sum = c.euler_sum();
        if !sum.is_multiple_of(12) {
            return Err(ConfigurationError::NoetherViolation(sum));
        }
        Ok(c)
    }

    /// Convenience constructor with labels `P1`, `P2`, ….
    pub fn from_types(
        genus: u32,
        types: impl IntoIterator<Item = FiberType>,
    ) -> Result<Configuration, ConfigurationError> {
        Configuration::new(
            genus,
            types
                .into_iter()
                .enumerate()
                .map(|(i, f)| (Label(format!("P{}", i + 1)), f)),
        )
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn fibers(&self) -> &BTreeMap<Label, FiberType> {
        &self.fibers
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<FiberType> {
        self.fibers.get(&Label(label.to_string())).copied()
    }

    /// The fiber types as a sorted multiset, forgetting labels.
    pub fn types(&self) -> Vec<FiberType> {
        let mut v: Vec<FiberType> = self.fibers.values().copied().collect();
        v.sort();
        v
    }

    pub fn euler_sum(&self) -> u64 {
        self.fibers.values().map(|f| u64::from(f.euler_number())).sum()
    }

    pub fn deg_l(&self) -> u64 {
        self.euler_sum() / 12
    }

    pub fn counts(&self) -> Counts {
        let mut n = Counts::default();
        for f in self.fibers.values() {
            match f {
                FiberType::IIStar | FiberType::IIIStar | FiberType::IVStar => n.a += 1,
                FiberType::II | FiberType::III | FiberType::IV => n.b += 1,
                FiberType::IStar(0) => n.c += 1,
                FiberType::IStar(_) => n.d += 1,
                FiberType::I(_) => n.e += 1,
            }
        }
        n
    }

    /// The j-invariant of a surface is constant exactly when no fiber is of
    /// type In or In* with n > 0.
    pub fn j_is_constant(&self) -> bool {
        let n = self.counts();
        n.d + n.e == 0
    }

    pub fn report(&self) -> InvariantReport {
        let g = i64::from(self.genus);
        let deg_l = self.deg_l();
        let dl = deg_l as i64;
        let n = self.counts();
        let h11 = 10 * deg_l + 2 * u64::from(self.genus);
        let lattice: i64 = self
            .fibers
            .values()
            .map(|f| i64::from(f.lattice_contribution()))
            .sum();
        let rho_tr = 2 + lattice;
        let delta = h11 as i64 - rho_tr;
        let additive = (n.a + n.b + n.c + n.d) as i64;
        assert_eq!(rho_tr, 2 + 12 * dl - 2 * additive - n.e as i64);
        assert_eq!(delta, closed_form_delta(n, deg_l, self.genus));
        InvariantReport {
            deg_l,
            p_g: dl - 1 + g,
            h11,
            rho_tr,
            counts: n,
            delta,
        }
    }

    /// Reads the text format
    ///
    /// ```text
    /// genus = 0
    /// P : II*
    /// Q : IV
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Configuration, ConfigurationError> {
        let mut lines = content_lines(text);
        let Some((first, header)) = lines.next() else {
            return Err(InputError::new(1, "expected `genus = <n>`").into());
        };
        let genus = match header.split_once('=') {
            Some((key, value)) if key.trim() == "genus" => value
                .trim()
                .parse::<u32>()
                .ok()
                .filter(|_| is_plain_decimal(value.trim()))
                .ok_or_else(|| InputError::new(first, format!("invalid genus '{}'", value.trim())))?,
            _ => return Err(InputError::new(first, "expected `genus = <n>`").into()),
        };
        let mut fibers = Vec::new();
        let mut seen = BTreeSet::new();
        for (line_no, raw) in lines {
            let Some((label, fiber)) = raw.split_once(':') else {
                return Err(InputError::new(line_no, "expected `<label> : <fiber-type>`").into());
            };
            let label = Label::new(label.trim())
                .map_err(|e| InputError::new(line_no, e.to_string()))?;
            let fiber: FiberType = fiber
                .trim()
                .parse()
                .map_err(|e: crate::kodaira::KodairaError| InputError::new(line_no, e.to_string()))?;
            if fiber.is_smooth() {
                return Err(InputError::new(line_no, format!("fiber '{label}' is smooth (I0)")).into());
            }
            if !seen.insert(label.clone()) {
                return Err(InputError::new(line_no, format!("duplicate label '{label}'")).into());
            }
            fibers.push((label, fiber));
        }
        Configuration::new(genus, fibers)
    }

    fn fresh_label(&self, taken: &BTreeSet<Label>) -> Label {
        (1..)
            .map(|i| Label(format!("pt{i}")))
            .find(|l| !self.fibers.contains_key(l) && !taken.contains(l))
            .expect("unbounded supply of labels")
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus = {}", self.genus)?;
        for (label, fiber) in &self.fibers {
            writeln!(f, "{label} : {fiber}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Configuration {
    type Err = ConfigurationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Configuration::parse(s)
    }
}

fn is_plain_decimal(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

/// `h11 - rho_tr = 2(a+b+c+d) + e - 2 deg L - 2 + 2g`.
pub fn closed_form_delta(n: Counts, deg_l: u64, genus: u32) -> i64 {
    2 * (n.a + n.b + n.c + n.d) as i64 + n.e as i64 - 2 * deg_l as i64 - 2 + 2 * i64::from(genus)
}

/// Extremality verdict. For constant j the criterion is the fiber count
/// `deg L + 1 - g`; otherwise it is `b = c = 0` together with
/// `h11 = rho_tr`.
pub fn is_extremal(c: &Configuration, j_constant: bool) -> Extremality {
    let n = c.counts();
    let deg_l = c.deg_l();
    if j_constant {
        if n.d + n.e > 0 {
            return Extremality::OutOfScope(
                "fibers of type I_n or I_n* with n > 0 force a non-constant j".into(),
            );
        }
        if constant_j_family(c).is_none() {
            return Extremality::OutOfScope("fiber types from different j-values".into());
        }
        if deg_l == 0 {
            return match c.genus {
                0 => Extremality::OutOfScope("product, not extremal".into()),
                1 => Extremality::OutOfScope("hyperelliptic".into()),
                _ => Extremality::NotExtremal,
            };
        }
        let target = deg_l as i64 + 1 - i64::from(c.genus);
        if c.len() as i64 == target {
            Extremality::Extremal
        } else {
            Extremality::NotExtremal
        }
    } else {
        if n.d + n.e == 0 {
            return Extremality::OutOfScope(
                "non-constant j needs a fiber of type I_n or I_n* with n > 0".into(),
            );
        }
        let delta = c.report().delta;
        if delta < 0 {
            return Extremality::OutOfScope(format!("not realizable (delta = {delta})"));
        }
        if n.b == 0 && n.c == 0 && delta == 0 {
            Extremality::Extremal
        } else {
            Extremality::NotExtremal
        }
    }
}

/// Constant j-value compatible with every fiber of a configuration with no
/// multiplicative fibers: `Some("0")`, `Some("1728")`, `Some("any")` when
/// only I0* fibers occur (or none), `None` for a mixture.
pub fn constant_j_family(c: &Configuration) -> Option<&'static str> {
    let mut family = "any";
    for f in c.fibers.values() {
        let fam = match f {
            FiberType::IStar(0) => continue,
            FiberType::II | FiberType::IV | FiberType::IVStar | FiberType::IIStar => "0",
            FiberType::III | FiberType::IIIStar => "1728",
            _ => return None,
        };
        if family != "any" && family != fam {
            return None;
        }
        family = fam;
    }
    Some(family)
}

/// The effect of a twist: the new configuration and the predicted change of
/// `h11 - rho_tr`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistOutcome {
    pub configuration: Configuration,
    pub delta_change: i64,
}

/// Quadratic twist at the given sites. A site that is not a fiber label is a
/// smooth point and acquires an I0* fiber.
pub fn twist(c: &Configuration, sites: &[Label]) -> Result<TwistOutcome, ConfigurationError> {
    if !sites.len().is_multiple_of(2) {
        return Err(ConfigurationError::OddTwist(sites.len()));
    }
    let mut seen = BTreeSet::new();
    for s in sites {
        if !seen.insert(s) {
            return Err(ConfigurationError::DuplicateSite(s.0.clone()));
        }
    }
    let mut fibers = c.fibers.clone();
    let mut change = 0;
    for s in sites {
        let old = fibers.remove(s).unwrap_or(FiberType::I(0));
        change += old.twist_delta_change();
        let new = old.twist();
        if !new.is_smooth() {
            fibers.insert(s.clone(), new);
        }
    }
    let out = Configuration {
        genus: c.genus,
        fibers,
    };
    debug_assert_eq!(out.euler_sum() % 12, 0);
    assert_eq!(out.report().delta, c.report().delta + change);
    Ok(TwistOutcome {
        configuration: out,
        delta_change: change,
    })
}

/// Twist sites of a *-minimal twist: every In* (n >= 0), II*, III* and IV*
/// fiber. With an odd number of sites one I0* fiber is left alone when
/// present, otherwise a fresh smooth point is added.
pub fn star_minimal_sites(c: &Configuration) -> Vec<Label> {
    let mut sites: Vec<Label> = c
        .fibers
        .iter()
        .filter(|(_, f)| {
            matches!(
                f,
                FiberType::IStar(_) | FiberType::IIStar | FiberType::IIIStar | FiberType::IVStar
            )
        })
        .map(|(l, _)| l.clone())
        .collect();
    if sites.len() % 2 == 1 {
        let keep = c
            .fibers
            .iter()
            .find(|(_, f)| **f == FiberType::IStar(0))
            .map(|(l, _)| l.clone());
        match keep {
            Some(l) => sites.retain(|s| *s != l),
            None => sites.push(c.fresh_label(&BTreeSet::new())),
        }
    }
    sites
}

pub fn star_minimal_twist(c: &Configuration) -> Configuration {
    let out = twist(c, &star_minimal_sites(c))
        .expect("site count is even")
        .configuration;
    debug_assert!(is_star_minimal(&out));
    out
}

/// No II*, III*, IV* or In* (n > 0) fibers and at most one I0*.
pub fn is_star_minimal(c: &Configuration) -> bool {
    let n = c.counts();
    n.a == 0 && n.d == 0 && n.c <= 1
}

/// Twist sites minimising `h11 - rho_tr`: every II, III, IV and I0* fiber,
/// plus, for parity, the In or In* fiber (n > 0) of smallest n, unstarred
/// first, then smallest label.
pub fn minimal_delta_sites(c: &Configuration) -> Result<Vec<Label>, ConfigurationError> {
    if c.j_is_constant() {
        return Err(ConfigurationError::ConstantJ);
    }
    let mut sites: Vec<Label> = c
        .fibers
        .iter()
        .filter(|(_, f)| f.twist_delta_change() < 0)
        .map(|(l, _)| l.clone())
        .collect();
    if sites.len() % 2 == 1 {
        let parity = c
            .fibers
            .iter()
            .filter_map(|(l, f)| match f {
                FiberType::I(n) if *n > 0 => Some((*n, false, l)),
                FiberType::IStar(n) if *n > 0 => Some((*n, true, l)),
                _ => None,
            })
            .min()
            .expect("non-constant j has a multiplicative fiber");
        sites.push(parity.2.clone());
    }
    Ok(sites)
}

/// A twist with `b = c = 0`, which minimises `h11 - rho_tr` over the twist
/// class. Rejects constant j, and configurations whose minimum would be
/// negative (no surface has such a twist class).
pub fn minimal_delta_twist(c: &Configuration) -> Result<Configuration, ConfigurationError> {
    let sites = minimal_delta_sites(c)?;
    let out = twist(c, &sites)?.configuration;
    let delta = out.report().delta;
    if delta < 0 {
        return Err(ConfigurationError::Unrealizable(delta));
    }
    let n = out.counts();
    debug_assert!(n.b == 0 && n.c == 0);
    Ok(out)
}

/// A finite cover of the base curve of degree `degree`, with the
/// ramification indices over the listed points. Points not listed are
/// unramified.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cover {
    pub degree: u32,
    pub ramification: BTreeMap<Label, Vec<u32>>,
}

/// Pullback of a configuration along a cover. The preimages of a point `P`
/// are labelled `P` when there is only one, otherwise `P.1`, `P.2`, ….
pub fn base_change(c: &Configuration, cover: &Cover) -> Result<Configuration, ConfigurationError> {
    let n = cover.degree;
    if n == 0 {
        return Err(ConfigurationError::InvalidProfile("degree must be positive".into()));
    }
    let mut ramification_total: i64 = 0;
    for (label, indices) in &cover.ramification {
        if indices.contains(&0) {
            return Err(ConfigurationError::InvalidProfile(format!(
                "zero ramification index at '{label}'"
            )));
        }
        let sum: u64 = indices.iter().map(|&e| u64::from(e)).sum();
        if sum != u64::from(n) {
            return Err(ConfigurationError::InvalidProfile(format!(
                "indices at '{label}' sum to {sum}, not {n}"
            )));
        }
        ramification_total += indices.iter().map(|&e| i64::from(e) - 1).sum::<i64>();
    }
    let two_g_minus_two = i64::from(n) * (2 * i64::from(c.genus) - 2) + ramification_total;
    if two_g_minus_two % 2 != 0 || two_g_minus_two < -2 {
        return Err(ConfigurationError::InvalidProfile(format!(
            "Riemann-Hurwitz gives 2g - 2 = {two_g_minus_two}"
        )));
    }
    let genus = u32::try_from((two_g_minus_two + 2) / 2)
        .map_err(|_| ConfigurationError::InvalidProfile("genus overflow".into()))?;

    let unramified = vec![1; n as usize];
    let mut fibers = Vec::new();
    for (label, fiber) in &c.fibers {
        let indices = cover.ramification.get(label).unwrap_or(&unramified);
        for (i, &e) in indices.iter().enumerate() {
            let f = fiber
                .base_change(e)
                .map_err(|err| ConfigurationError::InvalidProfile(err.to_string()))?;
            if f.is_smooth() {
                continue;
            }
            let name = if indices.len() == 1 {
                label.clone()
            } else {
                Label(format!("{label}.{}", i + 1))
            };
            fibers.push((name, f));
        }
    }
    Configuration::new(genus, fibers)
}

/// Ramification of the j-map of a *-minimal configuration with non-constant
/// j, assuming it is of (3,2)-type and unramified outside 0, 1728, ∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    /// Degree of j, the sum of n over the In fibers.
    pub degree: u64,
    /// Indices over 0: 1 for II, 2 for IV, 3 elsewhere. `None` when the
    /// remaining degree is not a nonnegative multiple of 3.
    pub over0: Option<Vec<u64>>,
    /// Indices over 1728: 1 for III, 2 elsewhere.
    pub over1728: Option<Vec<u64>>,
    /// Indices over ∞: the n of every In fiber.
    pub over_inf: Vec<u64>,
    /// Genus forced by Riemann–Hurwitz for the profile above.
    pub hurwitz_genus: Option<i64>,
    pub num_fibers: u64,
    /// `2 deg L + 2 - 2g`.
    pub expected_fibers: i64,
    /// The fiber count equals `2 deg L + 2 - 2g`, which holds exactly when
    /// j is of (3,2)-type and unramified outside 0, 1728 and ∞.
    pub equality: bool,
}

pub fn ramification_accounting(
    c: &Configuration,
) -> Result<RamificationProfile, ConfigurationError> {
    if let Some((l, f)) = c.fibers.iter().find(|(_, f)| {
        matches!(f, FiberType::IIStar | FiberType::IIIStar | FiberType::IVStar)
            || matches!(f, FiberType::IStar(n) if *n > 0)
    }) {
        return Err(ConfigurationError::NotStarMinimal(l.0.clone(), *f));
    }
    if c.counts().c > 1 {
        let l = c.fibers.iter().find(|(_, f)| **f == FiberType::IStar(0)).unwrap().0;
        return Err(ConfigurationError::NotStarMinimal(l.0.clone(), FiberType::IStar(0)));
    }
    if c.j_is_constant() {
        return Err(ConfigurationError::ConstantJ);
    }
    let count = |t: FiberType| c.fibers.values().filter(|f| **f == t).count() as u64;
    let (n2, n3, n4) = (count(FiberType::II), count(FiberType::III), count(FiberType::IV));
    let mut over_inf: Vec<u64> = c
        .fibers
        .values()
        .filter_map(|f| match f {
            FiberType::I(n) => Some(u64::from(*n)),
            _ => None,
        })
        .collect();
    over_inf.sort_unstable_by(|a, b| b.cmp(a));
    let r: u64 = over_inf.iter().sum();

    let over0 = r
        .checked_sub(n2 + 2 * n4)
        .filter(|rest| rest % 3 == 0)
        .map(|rest| {
            let mut v = vec![3; (rest / 3) as usize];
            v.extend(std::iter::repeat_n(2, n4 as usize));
            v.extend(std::iter::repeat_n(1, n2 as usize));
            v
        });
    let over1728 = r.checked_sub(n3).filter(|rest| rest % 2 == 0).map(|rest| {
        let mut v = vec![2; (rest / 2) as usize];
        v.extend(std::iter::repeat_n(1, n3 as usize));
        v
    });
    let hurwitz_genus = match (&over0, &over1728) {
        (Some(a), Some(b)) => {
            let points = (a.len() + b.len() + over_inf.len()) as i64;
            // 2g - 2 = -2r + (r - #0) + (r - #1728) + (r - #∞)
            let two_g_minus_two = r as i64 - points;
            (two_g_minus_two % 2 == 0).then_some((two_g_minus_two + 2) / 2)
        }
        _ => None,
    };
    let num_fibers = c.len() as u64;
    let expected = 2 * c.deg_l() as i64 + 2 - 2 * i64::from(c.genus);
    Ok(RamificationProfile {
        degree: r,
        over0,
        over1728,
        over_inf,
        hurwitz_genus,
        num_fibers,
        expected_fibers: expected,
        equality: num_fibers as i64 == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "note", rename_all = "kebab-case")]
pub enum TorelliVerdict {
    Fails,
    Satisfies,
    OutOfScope(String),
}

impl fmt::Display for TorelliVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorelliVerdict::Fails => f.write_str("FAILS infinitesimal Torelli"),
            TorelliVerdict::Satisfies => f.write_str("satisfies infinitesimal Torelli"),
            TorelliVerdict::OutOfScope(note) => write!(f, "out of scope ({note})"),
        }
    }
}

/// Infinitesimal Torelli for elliptic surfaces over the projective line
/// with a section: for `p_g > 1` it fails exactly when j is constant and
/// the surface is extremal.
pub fn torelli_verdict(p_g: i64, j_constant: bool, extremal: bool) -> TorelliVerdict {
    match p_g {
        i64::MIN..=0 => TorelliVerdict::OutOfScope("p_g <= 0: no variation of Hodge structure".into()),
        1 => TorelliVerdict::OutOfScope("p_g = 1: K3 surface, Torelli holds".into()),
        _ if j_constant && extremal => TorelliVerdict::Fails,
        _ => TorelliVerdict::Satisfies,
    }
}

/// `dim H^0(X, Ω^1(nF))` for a surface over the projective line that is not
/// birational to a product.
pub fn h0_omega_twist(n: u64, deg_l: u64, num_singular: u64, j_constant: bool) -> i64 {
    let n = n as i64;
    if !j_constant {
        return n - 1;
    }
    let d = deg_l as i64 - num_singular as i64;
    n - 1 + (n + d + 1).max(0)
}

/// Whether a maximal family with constant j-invariant 0 or 1728 and `s`
/// singular fibers has more moduli than the period domain bound:
/// `3g - 3 + s > (s - deg L + g - 1) p_g` with `p_g = deg L + g - 1`.
pub fn family_bound(genus: u32, deg_l: u64, s: u64) -> Result<bool, ConfigurationError> {
    let g = i64::from(genus);
    let p_g = deg_l as i64 + g - 1;
    if p_g <= 1 {
        return Err(ConfigurationError::GeometricGenusTooSmall(p_g));
    }
    let s = s as i64;
    Ok(3 * g - 3 + s > (s - deg_l as i64 + g - 1) * p_g)
}

/// Largest `s` for which [`family_bound`] holds, if any.
pub fn family_s_max(genus: u32, deg_l: u64) -> Result<Option<u64>, ConfigurationError> {
    // The difference of the two sides grows with s, so the solutions form
    // an initial segment; it ends before s = 3g + deg L + 2.
    let limit = 3 * u64::from(genus) + deg_l + 2;
    let mut best = None;
    for s in 0..=limit {
        if family_bound(genus, deg_l, s)? {
            best = Some(s);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub genus: u32,
    pub p_g: u64,
    pub deg_l: u64,
    pub s_max: u64,
    /// `⌈6 deg L / 5⌉`, the fewest singular fibers with j = 0, when at most
    /// `s_max`.
    pub min_s_j0: Option<u64>,
    /// `⌈4 deg L / 3⌉`, the fewest singular fibers with j = 1728, when at
    /// most `s_max`.
    pub min_s_j1728: Option<u64>,
}

/// All `(g, deg L)` with `g >= 1` and `p_g > 1` for which a family with
/// j = 0 and the fewest possible singular fibers beats the bound.
pub fn family_table() -> Vec<FamilyRow> {
    let mut rows = Vec::new();
    for genus in 1..=8u32 {
        for deg_l in 1..=40u64 {
            let p_g = deg_l + u64::from(genus) - 1;
            if p_g <= 1 {
                continue;
            }
            let Some(s_max) = family_s_max(genus, deg_l).expect("p_g > 1") else {
                continue;
            };
            let j0 = (6 * deg_l).div_ceil(5);
            if j0 > s_max {
                continue;
            }
            let j1728 = (4 * deg_l).div_ceil(3);
            rows.push(FamilyRow {
                genus,
                p_g,
                deg_l,
                s_max,
                min_s_j0: Some(j0),
                min_s_j1728: (j1728 <= s_max).then_some(j1728),
            });
        }
    }
    rows
}

/// Minimal base genus for a surface whose only singular fiber is `f`:
/// `k + 1` for I_{12k}, `k` for I*_{12k-6}, `None` otherwise.
pub fn single_fiber_genus_bound(f: FiberType) -> Option<u32> {
    match f {
        FiberType::I(n) if n > 0 && n % 12 == 0 => Some(n / 12 + 1),
        FiberType::IStar(n) if n % 12 == 6 => Some((n + 6) / 12),
        _ => None,
    }
}
