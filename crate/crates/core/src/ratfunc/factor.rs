//! Gcd, Yun squarefree decomposition and gcd-free (coprime) factor bases.
//!
//! Nothing here factors into irreducibles. A [`FactorBasis`] only guarantees
//! pairwise coprime squarefree factors, each of which has a single exponent
//! in every input polynomial; that is all the valuation-driven fiber
//! classification needs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::{Rational, RatFuncError};

/// Monic greatest common divisor, computed with a primitive
/// pseudo-remainder sequence over the integers.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly, RatFuncError> {
    if p.is_zero() && q.is_zero() {
        return Err(RatFuncError::GcdOfZeros);
    }
    let mut a = p.primitive_integer_coeffs();
    let mut b = q.primitive_integer_coeffs();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_remainder(a, &b));
        a = b;
        b = r;
    }
    let g = Poly::from_coeffs(a.into_iter().map(Rational::from_integer).collect());
    Ok(g.monic())
}

/// Remainder of `a` by `b` after scaling `a` by powers of the leading
/// coefficient of `b`, so the computation stays in the integers.
fn pseudo_remainder(mut r: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let lr = r.last().expect("nonempty").clone();
        let g = lr.gcd(lb);
        let (scale, factor) = (lb / &g, lr / &g);
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &factor * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Divides out the content and makes the leading coefficient positive.
fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    let Some(last) = v.last() else {
        return v;
    };
    let mut content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if last.is_negative() {
        content = -content;
    }
    v.into_iter().map(|c| c / &content).collect()
}

pub fn is_squarefree(p: &Poly) -> bool {
    !p.is_zero() && gcd(p, &p.derivative()).is_ok_and(|g| g.is_constant())
}

/// Yun's algorithm. Returns monic, squarefree, pairwise coprime factors with
/// their multiplicities in increasing order of multiplicity; a constant input
/// yields no factors.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, u32)>, RatFuncError> {
    if p.is_zero() {
        return Err(RatFuncError::ZeroInput);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let f = p.monic();
    let df = f.derivative();
    let g = gcd(&f, &df)?;
    let mut b = f.div_exact(&g)?;
    let c = df.div_exact(&g)?;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        b = b.div_exact(&a)?;
        let c = d.div_exact(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, mult));
        }
        mult += 1;
    }
    Ok(out)
}

/// Pairwise coprime monic factors together with the exponent of every factor
/// in every input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBasis {
    factors: Vec<Poly>,
    /// `exponents[i][k]` is the exponent of `factors[k]` in input `i`.
    exponents: Vec<Vec<u32>>,
    /// Constant left over from each input after removing all factors.
    units: Vec<Rational>,
}

impl FactorBasis {
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn exponent(&self, input: usize, factor: usize) -> u32 {
        self.exponents[input][factor]
    }

    pub fn exponents_of(&self, input: usize) -> &[u32] {
        &self.exponents[input]
    }

    pub fn unit(&self, input: usize) -> &Rational {
        &self.units[input]
    }

    pub fn num_inputs(&self) -> usize {
        self.exponents.len()
    }

    /// `unit * prod factor^exponent` for input `i`.
    pub fn reconstruct(&self, input: usize) -> Poly {
        self.factors
            .iter()
            .zip(&self.exponents[input])
            .fold(Poly::constant(self.units[input].clone()), |acc, (f, &e)| {
                &acc * &f.pow(e)
            })
    }
}

/// Orders basis factors by degree, then by their coefficients read from the
/// second-highest term down with signs flipped, so linear factors `t - r`
/// come out sorted by the root `r`.
pub fn place_order(a: &Poly, b: &Poly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.coeffs().len();
        for i in (0..n.saturating_sub(1)).rev() {
            let ord = (-a.coeff(i)).cmp(&-b.coeff(i));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    })
}

/// Refines the squarefree parts of all inputs into a pairwise coprime basis.
pub fn gcdfree_refine(polys: &[Poly]) -> Result<FactorBasis, RatFuncError> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut decompositions = Vec::with_capacity(polys.len());
    for p in polys {
        let parts = squarefree_decomposition(p)?;
        for (s, _) in &parts {
            insert_coprime(&mut basis, s.clone())?;
        }
        decompositions.push(parts);
    }
    basis.sort_by(place_order);

    // Every basis factor divides at most one squarefree part of each input,
    // and its exponent is that part's multiplicity.
    let mut exponents = Vec::with_capacity(polys.len());
    let mut units = Vec::with_capacity(polys.len());
    for (p, parts) in polys.iter().zip(&decompositions) {
        let row: Vec<u32> = basis
            .iter()
            .map(|q| {
                parts
                    .iter()
                    .find(|(s, _)| q.divides(s))
                    .map_or(0, |(_, m)| *m)
            })
            .collect();
        let degree: usize = basis
            .iter()
            .zip(&row)
            .map(|(q, &e)| q.degree().unwrap_or(0) * e as usize)
            .sum();
        if degree != p.degree().unwrap_or(0) {
            return Err(RatFuncError::InconsistentBasis);
        }
        exponents.push(row);
        units.push(p.leading_coeff().cloned().unwrap_or_default());
    }
    Ok(FactorBasis {
        factors: basis,
        exponents,
        units,
    })
}

fn insert_coprime(basis: &mut Vec<Poly>, new: Poly) -> Result<(), RatFuncError> {
    let mut x = new;
    let mut i = 0;
    while i < basis.len() && !x.is_constant() {
        let g = gcd(&x, &basis[i])?;
        if g.is_constant() {
            i += 1;
            continue;
        }
        let b = basis.swap_remove(i);
        let rest = b.div_exact(&g)?;
        x = x.div_exact(&g)?.monic();
        if !rest.is_constant() {
            basis.push(rest.monic());
        }
        basis.push(g);
        // swap_remove moved an unvisited element into slot i
    }
    if !x.is_constant() {
        basis.push(x.monic());
    }
    Ok(())
}

/// Exponent of a place, with `Infinite` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// Multiplies by a positive integer; `Infinite` is absorbing.
    pub fn scaled(self, k: u32) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A point of the projective line over the algebraic closure, grouped by
/// Galois orbit: a finite place is a monic squarefree polynomial whose roots
/// are the points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(q: Poly) -> Result<Place, RatFuncError> {
        if q.is_constant() || !q.is_monic() || !is_squarefree(&q) {
            return Err(RatFuncError::InvalidPlace(q.to_string()));
        }
        Ok(Place::Finite(q))
    }

    pub fn at(root: &Rational) -> Place {
        Place::Finite(Poly::linear(root))
    }

    /// Number of geometric points in the place.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(q) => q.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    /// The root of a linear place.
    pub fn rational_point(&self) -> Option<Rational> {
        match self {
            Place::Finite(q) if q.degree() == Some(1) => Some(-q.coeff(0)),
            _ => None,
        }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(q) => match self.rational_point() {
                Some(r) => write!(f, "{r}"),
                None => write!(f, "{{{}}}", q.to_compact_string()),
            },
        }
    }
}

/// Largest `k` with `q^k | p`; `Infinite` when `p = 0`.
pub fn valuation(p: &Poly, q: &Poly) -> Valuation {
    if p.is_zero() {
        return Valuation::Infinite;
    }
    if q.is_constant() {
        return Valuation::Finite(0);
    }
    let mut rest = p.clone();
    let mut k = 0;
    while let Ok((quot, rem)) = rest.div_rem(q) {
        if !rem.is_zero() {
            break;
        }
        rest = quot;
        k += 1;
    }
    Valuation::Finite(k)
}

/// Valuation at infinity of `p` regarded as a section of `O(weight)`,
/// i.e. `weight - deg p`. `None` when `deg p > weight`.
pub fn valuation_at_infinity(p: &Poly, weight: usize) -> Option<Valuation> {
    match p.degree() {
        None => Some(Valuation::Infinite),
        Some(d) if d <= weight => Some(Valuation::Finite((weight - d) as u32)),
        Some(_) => None,
    }
}

impl Place {
    pub fn valuation(&self, p: &Poly, weight_at_infinity: usize) -> Option<Valuation> {
        match self {
            Place::Finite(q) => Some(valuation(p, q)),
            Place::Infinity => valuation_at_infinity(p, weight_at_infinity),
        }
    }
}

/// Largest absolute coefficient for which rational-root candidates are
/// enumerated by trial division.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Result of splitting rational roots off a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<Rational>,
    /// Monic remainder with no rational roots among those searched.
    pub cofactor: Poly,
}

/// Splits rational roots off a squarefree polynomial.
///
/// `probes` are tried first. Remaining roots are found with the rational
/// root theorem when the constant and leading integer coefficients are small
/// enough to enumerate divisors; otherwise they stay in the cofactor.
pub fn split_rational_roots(q: &Poly, probes: &[Rational]) -> RootSplit {
    let mut roots = Vec::new();
    let mut rest = q.monic();
    let take = |rest: &mut Poly, r: Rational, roots: &mut Vec<Rational>| {
        if let Ok(next) = rest.div_exact(&Poly::linear(&r)) {
            *rest = next.monic();
            roots.push(r);
        }
    };
    for r in probes {
        if !rest.is_constant() && rest.eval(r).is_zero() {
            take(&mut rest, r.clone(), &mut roots);
        }
    }
    if !rest.is_constant() && rest.coeff(0).is_zero() {
        take(&mut rest, Rational::zero(), &mut roots);
    }
    if rest.degree() == Some(1) {
        let r = -rest.coeff(0);
        take(&mut rest, r, &mut roots);
    } else if rest.degree().is_some_and(|d| d > 1) {
        let mut filter = ModularFilter::new(&rest);
        for r in root_candidates(&rest) {
            if rest.is_constant() {
                break;
            }
            if filter.may_vanish(&r) && rest.eval(&r).is_zero() {
                take(&mut rest, r, &mut roots);
                filter = ModularFilter::new(&rest);
            }
        }
        if rest.degree() == Some(1) {
            let r = -rest.coeff(0);
            take(&mut rest, r, &mut roots);
        }
    }
    roots.sort();
    RootSplit {
        roots,
        cofactor: rest,
    }
}

const FILTER_PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 1_000_000_009];

/// Residues of a primitive integer polynomial modulo a few primes; a
/// rational root `n/d` makes `Σ c_i n^i d^(m-i)` vanish modulo each.
struct ModularFilter {
    residues: Vec<[u64; 3]>,
}

impl ModularFilter {
    fn new(p: &Poly) -> ModularFilter {
        let residues = p
            .primitive_integer_coeffs()
            .iter()
            .map(|c| FILTER_PRIMES.map(|m| residue(c, m)))
            .collect();
        ModularFilter { residues }
    }

    fn may_vanish(&self, r: &Rational) -> bool {
        FILTER_PRIMES.iter().enumerate().all(|(k, &m)| {
            let n = residue(r.numer(), m);
            let d = residue(r.denom(), m);
            let mul = |x: u64, y: u64| ((u128::from(x) * u128::from(y)) % u128::from(m)) as u64;
            let mut h = 0u64;
            let mut dpow = 1u64;
            for c in self.residues.iter().rev() {
                h = (mul(h, n) + mul(c[k], dpow)) % m;
                dpow = mul(dpow, d);
            }
            h == 0
        })
    }
}

fn residue(c: &BigInt, m: u64) -> u64 {
    let r = c % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    u64::try_from(r).expect("reduced below the modulus")
}

fn root_candidates(p: &Poly) -> Vec<Rational> {
    let ints = p.primitive_integer_coeffs();
    let (Some(a0), Some(an)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    let (Some(a0), Some(an)) = (small_abs(a0), small_abs(an)) else {
        return Vec::new();
    };
    if a0 == 0 {
        return Vec::new();
    }
    let num_divs = divisors(a0);
    let den_divs = divisors(an);
    let mut out = Vec::new();
    for n in &num_divs {
        for d in &den_divs {
            let r = Rational::new(BigInt::from(*n), BigInt::from(*d));
            if r.denom() == &BigInt::from(*d) {
                out.push(-r.clone());
                out.push(r);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn small_abs(n: &BigInt) -> Option<u64> {
    u64::try_from(n.abs()).ok().filter(|&v| v <= ROOT_SEARCH_LIMIT)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
