//! Short Weierstrass models `y^2 = x^3 + A(t) x + B(t)` over the projective
//! line, their invariants and the fiber type at every place.

use std::fmt;

use num_traits::Zero;

use crate::configuration::{Configuration, Label};
use crate::input::{content_lines, InputError};
use crate::kodaira::{classify_local, FiberType, KodairaError, LocalData};
use crate::ratfunc::{
    gcd, gcdfree_refine, is_squarefree, parse_poly, place_order, split_rational_roots, valuation,
    valuation_at_infinity, Place, Poly, RatFuncError, Rational, Valuation,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WeierstrassError {
    #[error("discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("twisting polynomial must be nonzero and squarefree: {0}")]
    NotSquarefree(String),
    #[error("Euler numbers sum to {0}, which is not divisible by 12")]
    NoetherViolation(u32),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    a: Poly,
    b: Poly,
}

/// `c4 = -48 A`, `c6 = -864 B`, `Δ = -16 (4 A^3 + 27 B^2)` and the reduced
/// quotient `j = c4^3 / Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInvariants {
    pub c4: Poly,
    pub c6: Poly,
    pub delta: Poly,
    pub j_num: Poly,
    pub j_den: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JInvariant {
    Constant(Rational),
    NonConstant,
}

impl JInvariant {
    pub fn is_constant(&self) -> bool {
        matches!(self, JInvariant::Constant(_))
    }
}

/// A singular fiber found on a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceFiber {
    pub place: Place,
    /// Minimal valuations at the place.
    pub local: LocalData,
    pub fiber: FiberType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelClassification {
    /// Singular fibers, finite places first in basis order, then infinity.
    pub fibers: Vec<PlaceFiber>,
    pub euler_sum: u32,
}

impl ModelClassification {
    pub fn deg_l(&self) -> u32 {
        self.euler_sum / 12
    }

    /// Genus-0 configuration. Linear places are labelled by their root,
    /// infinity by `inf`, and the points of a higher-degree place `q` by
    /// `{q}#1`, `{q}#2`, ….
    pub fn to_configuration(&self) -> Configuration {
        let mut fibers = Vec::new();
        for pf in &self.fibers {
            let name = pf.place.to_string();
            if pf.place.degree() == 1 {
                fibers.push((Label::new(name).expect("place labels are valid"), pf.fiber));
            } else {
                for i in 1..=pf.place.degree() {
                    let label = Label::new(format!("{name}#{i}")).expect("place labels are valid");
                    fibers.push((label, pf.fiber));
                }
            }
        }
        Configuration::new(0, fibers).expect("classified models satisfy Noether")
    }
}

impl WeierstrassModel {
    pub fn new(a: Poly, b: Poly) -> Result<Self, WeierstrassError> {
        let m = WeierstrassModel { a, b };
        if m.discriminant().is_zero() {
            return Err(WeierstrassError::ZeroDiscriminant);
        }
        Ok(m)
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    fn discriminant(&self) -> Poly {
        let a3 = self.a.pow(3).scale(&int(4));
        let b2 = self.b.pow(2).scale(&int(27));
        (&a3 + &b2).scale(&int(-16))
    }

    /// `(c4, c6, Δ)` without the reduced j-invariant.
    fn c_invariants(&self) -> (Poly, Poly, Poly) {
        (self.a.scale(&int(-48)), self.b.scale(&int(-864)), self.discriminant())
    }

    pub fn invariants(&self) -> ModelInvariants {
        let (c4, c6, delta) = self.c_invariants();
        let c4_cubed = c4.pow(3);
        assert_eq!(
            &c4_cubed - &c6.pow(2),
            delta.scale(&int(1728)),
            "c4^3 - c6^2 = 1728 delta"
        );
        let (j_num, j_den) = if c4.is_zero() {
            (Poly::zero(), Poly::one())
        } else {
            let g = gcd(&c4_cubed, &delta).expect("delta is nonzero");
            let num = c4_cubed.div_exact(&g).expect("gcd divides");
            let den = delta.div_exact(&g).expect("gcd divides");
            let lc = den.leading_coeff().expect("nonzero").recip();
            (num.scale(&lc), den.scale(&lc))
        };
        ModelInvariants {
            c4,
            c6,
            delta,
            j_num,
            j_den,
        }
    }

    pub fn j_invariant(&self) -> JInvariant {
        let inv = self.invariants();
        if inv.j_num.is_constant() && inv.j_den.is_constant() {
            JInvariant::Constant(inv.j_num.coeff(0) / inv.j_den.coeff(0))
        } else {
            JInvariant::NonConstant
        }
    }

    /// Twisting weight `k` at infinity: the least `k` with `deg A <= 4k`
    /// and `deg B <= 6k`.
    fn infinity_weight(&self) -> usize {
        let ka = self.a.degree().map_or(0, |d| d.div_ceil(4));
        let kb = self.b.degree().map_or(0, |d| d.div_ceil(6));
        ka.max(kb)
    }

    /// Minimal valuations of `(c4, c6, Δ)` at a place.
    pub fn local_data_at(&self, place: &Place) -> Result<LocalData, WeierstrassError> {
        let (c4, c6, delta) = self.c_invariants();
        self.local_data_from(place, &c4, &c6, &delta)
    }

    fn local_data_from(
        &self,
        place: &Place,
        c4: &Poly,
        c6: &Poly,
        delta: &Poly,
    ) -> Result<LocalData, WeierstrassError> {
        let (v4, v6, vd) = match place {
            Place::Finite(q) => (valuation(c4, q), valuation(c6, q), valuation(delta, q)),
            Place::Infinity => {
                let k = self.infinity_weight();
                let at = |p: &Poly, w: usize| valuation_at_infinity(p, w * k).expect("weights fit");
                (at(c4, 4), at(c6, 6), at(delta, 12))
            }
        };
        let vd = vd.finite().ok_or(WeierstrassError::ZeroDiscriminant)?;
        Ok(LocalData::new(v4, v6, vd)?.minimalize().0)
    }

    /// Every singular fiber of the model, checked against Noether's formula.
    pub fn classify(&self) -> Result<ModelClassification, WeierstrassError> {
        self.classify_with_probes(&[])
    }

    /// Like [`classify`](Self::classify), but first splits off the linear
    /// places `t - r` for every `r` in `probes` that is a root of some
    /// basis factor.
    pub fn classify_with_probes(
        &self,
        probes: &[Rational],
    ) -> Result<ModelClassification, WeierstrassError> {
        let (c4, c6, delta) = self.c_invariants();
        let mut inputs = vec![delta.clone()];
        let mut index = |p: &Poly| {
            (!p.is_zero()).then(|| {
                inputs.push(p.clone());
                inputs.len() - 1
            })
        };
        let (i4, i6) = (index(&c4), index(&c6));
        let basis = gcdfree_refine(&inputs)?;
        let exponent = |i: Option<usize>, k: usize| {
            i.map_or(Valuation::Infinite, |i| Valuation::Finite(basis.exponent(i, k)))
        };

        let mut finite = Vec::new();
        for (k, q) in basis.factors().iter().enumerate() {
            if basis.exponent(0, k) == 0 {
                continue;
            }
            let data = LocalData::new(exponent(i4, k), exponent(i6, k), basis.exponent(0, k))?;
            let (local, _) = data.minimalize();
            let fiber = classify_local(&local)?;
            if fiber.is_smooth() {
                continue;
            }
            let split = split_rational_roots(q, probes);
            for r in &split.roots {
                finite.push(PlaceFiber {
                    place: Place::at(r),
                    local,
                    fiber,
                });
            }
            if !split.cofactor.is_constant() {
                finite.push(PlaceFiber {
                    place: Place::Finite(split.cofactor),
                    local,
                    fiber,
                });
            }
        }
        finite.sort_by(|x, y| match (&x.place, &y.place) {
            (Place::Finite(p), Place::Finite(q)) => place_order(p, q),
            _ => std::cmp::Ordering::Equal,
        });

        let local = self.local_data_from(&Place::Infinity, &c4, &c6, &delta)?;
        let fiber = classify_local(&local)?;
        if !fiber.is_smooth() {
            finite.push(PlaceFiber {
                place: Place::Infinity,
                local,
                fiber,
            });
        }

        let euler_sum = finite
            .iter()
            .map(|pf| pf.fiber.euler_number() * pf.place.degree() as u32)
            .sum::<u32>();
        if euler_sum % 12 != 0 {
            return Err(WeierstrassError::NoetherViolation(euler_sum));
        }
        Ok(ModelClassification {
            fibers: finite,
            euler_sum,
        })
    }

    /// Quadratic twist by a squarefree polynomial: `(A, B) -> (f^2 A, f^3 B)`.
    pub fn quadratic_twist(&self, f: &Poly) -> Result<WeierstrassModel, WeierstrassError> {
        if f.is_zero() || !is_squarefree(f) {
            return Err(WeierstrassError::NotSquarefree(f.to_string()));
        }
        WeierstrassModel::new(&f.pow(2) * &self.a, &f.pow(3) * &self.b)
    }

    /// The model pulled back along `t -> map(t)`.
    pub fn pullback(&self, map: &Poly) -> Result<WeierstrassModel, WeierstrassError> {
        WeierstrassModel::new(self.a.compose(map), self.b.compose(map))
    }

    /// Reads the two-line model format:
    ///
    /// ```text
    /// A = 0
    /// B = t^5*(t-1)^2
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<WeierstrassModel, ModelParseError> {
        let mut a = None;
        let mut b = None;
        let last_line = text.lines().count().max(1);
        for (line_no, raw) in content_lines(text) {
            let Some((key, value)) = raw.split_once('=') else {
                return Err(InputError::new(line_no, "expected `A = <poly>` or `B = <poly>`").into());
            };
            let slot = match key.trim() {
                "A" => &mut a,
                "B" => &mut b,
                other => {
                    return Err(InputError::new(line_no, format!("unknown coefficient '{other}'")).into())
                }
            };
            if slot.is_some() {
                return Err(InputError::new(line_no, format!("duplicate '{}'", key.trim())).into());
            }
            let offset = raw.find('=').map_or(0, |p| p + 1);
            let poly = parse_poly(value).map_err(|e| {
                InputError::new(
                    line_no,
                    format!("column {}: {}", offset + e.position + 1, e.message),
                )
            })?;
            *slot = Some(poly);
        }
        let (Some(a), Some(b)) = (a, b) else {
            return Err(InputError::new(last_line, "both `A` and `B` are required").into());
        };
        WeierstrassModel::new(a, b).map_err(ModelParseError::Model)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelParseError {
    #[error(transparent)]
    Syntax(#[from] InputError),
    #[error(transparent)]
    Model(WeierstrassError),
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A = {}", self.a)?;
        writeln!(f, "B = {}", self.b)
    }
}

/// Text report: one line per singular place, then `deg L` and the Euler sum.
pub fn format_classification(c: &ModelClassification) -> String {
    let mut out = String::new();
    if c.fibers.is_empty() {
        out.push_str("no singular fibers\n");
    }
    for pf in &c.fibers {
        let mult = if pf.place.degree() > 1 {
            format!(" x{}", pf.place.degree())
        } else {
            String::new()
        };
        out.push_str(&format!("{}{} : {} {}\n", pf.place, mult, pf.fiber, pf.local));
    }
    out.push_str(&format!("deg L = {}\n", c.deg_l()));
    out.push_str(&format!("sum_euler = {}\n", c.euler_sum));
    out
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl JInvariant {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            JInvariant::Constant(j) => Some(j),
            JInvariant::NonConstant => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value().is_some_and(Zero::is_zero)
    }

    pub fn is_1728(&self) -> bool {
        self.value().is_some_and(|j| *j == int(1728))
    }
}
