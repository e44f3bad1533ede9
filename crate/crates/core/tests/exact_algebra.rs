use proptest::prelude::*;
use reglab::exact::{
    count_roots_open, odd_multiplicity_part, rational_residue, squarefree_decomposition, Field, Polynomial, Rational,
    RationalFunction, TruncatedSeries, BASE_VAR,
};

fn poly() -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(-9i64..=9, 0..=5).prop_map(|c| Polynomial::from_ints(BASE_VAR, &c))
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial<Rational>> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::from((n, d)))
}

/// `1 + c₁q + c₂q² + …` truncated at `q^order`.
fn unit_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), (order - 1) as usize).prop_map(move |tail| {
        let mut coeffs = vec![Rational::from(1)];
        coeffs.extend(tail);
        TruncatedSeries::new("q", 0, coeffs, order)
    })
}

proptest! {
    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn division_with_remainder(a in poly(), b in nonzero_poly()) {
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn bezout_identity(a in nonzero_poly(), b in nonzero_poly()) {
        let (d, s, t) = a.extended_euclid(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), d.clone());
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert_eq!(d.monic(), a.gcd(&b).monic());
    }

    #[test]
    fn squarefree_decomposition_reconstructs(a in nonzero_poly(), b in nonzero_poly()) {
        let p = &(&a * &b) * &b;
        let parts = squarefree_decomposition(&p);
        let rebuilt = parts
            .iter()
            .enumerate()
            .fold(Polynomial::constant(BASE_VAR, p.leading().unwrap().clone()), |acc, (i, f)| &acc * &f.pow(i as u32 + 1));
        prop_assert_eq!(rebuilt, p.clone());
        for f in &parts {
            prop_assert!(f.gcd(&f.derivative()).is_constant());
        }
        prop_assert!(odd_multiplicity_part(&p).divides(&p));
    }

    #[test]
    fn sturm_counts_distinct_rational_roots(roots in prop::collection::btree_set(1i64..40, 0..5), lead in 1i64..5) {
        // roots r/40 in (0, 1) plus two outside
        let mut p = Polynomial::from_ints(BASE_VAR, &[3 * lead, -lead]);
        p = &p * &Polynomial::from_ints(BASE_VAR, &[1, 1]);
        for r in &roots {
            p = &p * &Polynomial::from_ints(BASE_VAR, &[-r, 40]).pow(1 + (*r as u32 % 2));
        }
        prop_assert_eq!(count_roots_open(&p, &Rational::new(), &Rational::from(1)), roots.len());
    }

    #[test]
    fn rational_function_field_laws(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let f = RationalFunction::new(a.clone(), b.clone());
        let g = RationalFunction::new(c.clone(), a.clone());
        prop_assert!(f.mul_ref(&f.inv_ref()).is_one());
        prop_assert_eq!(f.mul_ref(&g), RationalFunction::new(c.clone(), b.clone()));
        let lhs = f.mul_ref(&g).derivative();
        let rhs = f.derivative().mul_ref(&g).add_ref(&f.mul_ref(&g.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn simple_pole_residue(c in rational(), p in rational(), other in nonzero_poly()) {
        prop_assume!(other.eval(&p) != 0);
        // c·other(t) / ((t - p)·other(t)) has residue c
        let num = other.scale(&c);
        let den = &Polynomial::linear_root(BASE_VAR, &p) * &other;
        prop_assert_eq!(rational_residue(&num, &den, &p).unwrap(), c);
    }

    #[test]
    fn series_inverse(f in unit_series(8)) {
        let one = f.mul(&f.inv().unwrap());
        prop_assert_eq!(one, TruncatedSeries::constant("q", Rational::from(1), 8));
    }

    #[test]
    fn fractional_power_laws(f in unit_series(7), alpha in rational(), beta in rational()) {
        let fa = f.fractional_pow(&alpha).unwrap();
        let fb = f.fractional_pow(&beta).unwrap();
        let sum = Rational::from(&alpha + &beta);
        prop_assert_eq!(fa.mul(&fb), f.fractional_pow(&sum).unwrap());
        let product = Rational::from(&alpha * &beta);
        prop_assert_eq!(fa.fractional_pow(&beta).unwrap(), f.fractional_pow(&product).unwrap());
    }

    #[test]
    fn integral_fractional_powers_agree(f in unit_series(6), n in 1i64..4) {
        prop_assert_eq!(f.fractional_pow(&Rational::from(n)).unwrap(), f.powi(n).unwrap());
        let root = f.fractional_pow(&Rational::from((1, n))).unwrap();
        prop_assert_eq!(root.powi(n).unwrap(), f);
    }
}
