use std::collections::BTreeMap;

use esurf::ratfunc::{
    gcd, gcdfree_refine, is_squarefree, parse_poly, split_rational_roots,
    squarefree_decomposition, valuation, Poly, Rational, Valuation,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A polynomial with known factorization: distinct rational roots with
/// multiplicities, times powers of `t^2 + k` (k > 0, no rational roots).
#[derive(Clone, Debug)]
struct Known {
    roots: Vec<(Rational, u32)>,
    quadratic: Option<(Poly, u32)>,
    unit: Rational,
}

impl Known {
    fn random(rng: &mut ChaCha8Rng) -> Known {
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        for _ in 0..rng.gen_range(0..5) {
            let r = q(rng.gen_range(-30..=30), rng.gen_range(1..=6));
            if roots.iter().all(|(s, _)| *s != r) {
                roots.push((r, rng.gen_range(1..=4)));
            }
        }
        let quadratic = rng.gen_bool(0.5).then(|| {
            let k = q(rng.gen_range(1..=20), rng.gen_range(1..=3));
            (&Poly::t().pow(2) + &Poly::constant(k), rng.gen_range(1..=3))
        });
        let unit = q(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { -1 } else { 1 }, rng.gen_range(1..=5));
        Known { roots, quadratic, unit }
    }

    fn poly(&self) -> Poly {
        let mut p = Poly::constant(self.unit.clone());
        for (r, m) in &self.roots {
            p = &p * &Poly::linear(r).pow(*m);
        }
        if let Some((f, m)) = &self.quadratic {
            p = &p * &f.pow(*m);
        }
        p
    }

    /// Monic squarefree part of every multiplicity.
    fn by_multiplicity(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        let mut push = |m: u32, f: &Poly| {
            let e = out.entry(m).or_insert_with(Poly::one);
            *e = &*e * f;
        };
        for (r, m) in &self.roots {
            push(*m, &Poly::linear(r));
        }
        if let Some((f, m)) = &self.quadratic {
            push(*m, f);
        }
        out
    }
}

fn knowns(seed: u64, n: usize) -> Vec<Known> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Known::random(&mut rng)).collect()
}

#[test]
fn squarefree_decomposition_matches_construction() {
    for k in knowns(1, 300) {
        let got: BTreeMap<u32, Poly> = squarefree_decomposition(&k.poly())
            .unwrap()
            .into_iter()
            .map(|(f, m)| (m, f))
            .collect();
        assert_eq!(got, k.by_multiplicity(), "{}", k.poly());
        assert_eq!(is_squarefree(&k.poly()), got.keys().all(|&m| m == 1));
    }
}

#[test]
fn gcd_of_products_is_the_common_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        // disjoint integer roots for the cofactors, so the gcd is exactly g
        let g = Known::random(&mut rng).poly();
        let left: Vec<i64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(100..200)).collect();
        let right: Vec<i64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(-200..-100)).collect();
        let build = |roots: &[i64]| {
            roots.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::linear(&q(r, 1)))
        };
        let (a, b) = (&build(&left) * &g, &build(&right) * &g);
        assert_eq!(gcd(&a, &b).unwrap(), g.monic(), "{a} / {b}");
        assert_eq!(gcd(&b, &a).unwrap(), g.monic());
    }
}

#[test]
fn gcd_divides_both_inputs() {
    let ks = knowns(3, 120);
    for pair in ks.chunks(2) {
        let (a, b) = (pair[0].poly(), pair[1].poly());
        let g = gcd(&a, &b).unwrap();
        assert!(g.divides(&a) && g.divides(&b));
        let (ra, rb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
        assert!(gcd(&ra, &rb).unwrap().is_constant());
    }
}

#[test]
fn rational_roots_are_all_found() {
    for k in knowns(4, 300) {
        let sf = k.by_multiplicity().values().fold(Poly::one(), |acc, f| &acc * f);
        let split = split_rational_roots(&sf, &[]);
        let mut expected: Vec<Rational> = k.roots.iter().map(|(r, _)| r.clone()).collect();
        expected.sort();
        assert_eq!(split.roots, expected);
        let rest = k.quadratic.as_ref().map_or(Poly::one(), |(f, _)| f.clone());
        assert_eq!(split.cofactor, rest);
    }
}

#[test]
fn valuations_are_multiplicities() {
    for k in knowns(5, 200) {
        let p = k.poly();
        for (r, m) in &k.roots {
            assert_eq!(valuation(&p, &Poly::linear(r)), Valuation::Finite(*m));
        }
        assert_eq!(valuation(&p, &Poly::linear(&q(1000, 1))), Valuation::Finite(0));
    }
    assert_eq!(valuation(&Poly::zero(), &Poly::t()), Valuation::Infinite);
}

#[test]
fn gcd_free_basis_reconstructs_and_is_coprime() {
    let ks = knowns(6, 240);
    for group in ks.chunks(3) {
        let polys: Vec<Poly> = group.iter().map(Known::poly).collect();
        let basis = gcdfree_refine(&polys).unwrap();
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(&basis.reconstruct(i), p);
        }
        let fs = basis.factors();
        for (i, f) in fs.iter().enumerate() {
            assert!(f.is_monic() && is_squarefree(f));
            for g in &fs[i + 1..] {
                assert!(gcd(f, g).unwrap().is_constant(), "{f} / {g}");
            }
        }
    }
}

#[test]
fn parser_reads_products_and_powers() {
    let p = parse_poly("-2*(t - 1/2)^3*(t^2 + 3)").unwrap();
    let expected = &(&Poly::linear(&q(1, 2)).pow(3) * &Poly::from_int_coeffs(&[3, 0, 1]))
        * &Poly::from_int(-2);
    assert_eq!(p, expected);
    assert_eq!(parse_poly("t^0").unwrap(), Poly::one());
    assert!(parse_poly("0").unwrap().is_zero());
    for bad in ["", "t^", "t^-1", "(t", "t)", "2**t", "1/0", "x", "t^99999999999"] {
        assert!(parse_poly(bad).is_err(), "{bad:?}");
    }
}

fn any_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((-50i64..50, 1i64..9), 0..8).prop_map(|cs| {
        Poly::from_coeffs(cs.into_iter().map(|(n, d)| q(n, d)).collect())
    })
}

proptest! {
    #[test]
    fn poly_text_round_trips(p in any_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(parse_poly(&p.to_compact_string()).unwrap(), p);
    }

    #[test]
    fn division_identity(a in any_poly(), b in any_poly()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in any_poly(), b in any_poly(), n in -20i64..20, d in 1i64..7) {
        let x = q(n, d);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn poly_parse_never_panics(s in "[t0-9^*/()+\\- ]{0,40}") {
        let _ = parse_poly(&s);
    }
}

#[test]
fn zero_constant_and_unit_edge_cases() {
    assert!(gcd(&Poly::zero(), &Poly::zero()).is_err());
    assert_eq!(gcd(&Poly::zero(), &Poly::from_int(5)).unwrap(), Poly::one());
    assert!(squarefree_decomposition(&Poly::zero()).is_err());
    assert!(squarefree_decomposition(&Poly::from_int(7)).unwrap().is_empty());
    assert!(Rational::one() > Rational::zero());
}
