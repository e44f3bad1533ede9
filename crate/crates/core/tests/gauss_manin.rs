use proptest::prelude::*;
use reglab::exact::{Field, LaurentPoly, Polynomial, Rational, RationalFunction, BASE_VAR};
use reglab::gauss_manin::{
    basis, connection_matrix, gm_delta, reduce_to_basis, weierstrass_connection, CechCocycle, Coeff,
    ConnectionMatrix, HyperellipticFamily, Lifting, X_VAR, Z_VAR,
};

fn tp(c: &[i64]) -> Polynomial<Rational> {
    Polynomial::from_ints(BASE_VAR, c)
}

fn matrix_with(family: &HyperellipticFamily, lifting: &Lifting) -> ConnectionMatrix {
    let columns = basis(family)
        .iter()
        .map(|b| reduce_to_basis(family, &gm_delta(family, b, lifting).unwrap()).unwrap())
        .collect();
    ConnectionMatrix::from_columns(columns)
}

fn x_poly(var: &'static str, coeffs: &[(i64, i64)]) -> Polynomial<Coeff> {
    Polynomial::new(var, coeffs.iter().map(|&(c0, c1)| RationalFunction::from_poly(tp(&[c0, c1]))).collect())
}

fn weierstrass_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-6i64..=6, 1..=3), prop::collection::vec(-6i64..=6, 1..=3))
}

const GENUS_TWO: [&str; 3] = ["1; 0,1; 0; 0; 0; 1", "0,1; 1; 0; 0; 1; 0; 1", "1,1; 0; 0,1; 0; 0; 1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cech_connection_matches_closed_form((g2, g3) in weierstrass_pair()) {
        let (g2, g3) = (tp(&g2), tp(&g3));
        let closed = weierstrass_connection(&g2, &g3);
        prop_assume!(closed.is_ok());
        let fam = HyperellipticFamily::from_weierstrass(&g2, &g3).unwrap();
        prop_assert_eq!(connection_matrix(&fam).unwrap(), closed.unwrap());
    }

    #[test]
    fn independent_of_bezout_pair(
        (g2, g3) in weierstrass_pair(),
        k0 in prop::collection::vec((-3i64..=3, -3i64..=3), 0..=2),
        k_inf in prop::collection::vec((-3i64..=3, -3i64..=3), 0..=2),
    ) {
        let (g2, g3) = (tp(&g2), tp(&g3));
        prop_assume!(weierstrass_connection(&g2, &g3).is_ok());
        let fam = HyperellipticFamily::from_weierstrass(&g2, &g3).unwrap();
        let base = Lifting::new(&fam);
        let shifted = base.shifted(&fam, &x_poly(X_VAR, &k0), &x_poly(Z_VAR, &k_inf));
        prop_assert_eq!(matrix_with(&fam, &base), matrix_with(&fam, &shifted));
    }

    #[test]
    fn leibniz_rule(h in prop::collection::vec(-5i64..=5, 1..=3), col in 0usize..2) {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[12, -9]), &tp(&[8, -9])).unwrap();
        let lifting = Lifting::new(&fam);
        let h = RationalFunction::from_poly(tp(&h));
        let e = &basis(&fam)[col];
        let lhs = reduce_to_basis(&fam, &gm_delta(&fam, &e.scale(&h), &lifting).unwrap()).unwrap();
        let rhs = reduce_to_basis(&fam, &gm_delta(&fam, e, &lifting).unwrap()).unwrap();
        for (k, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
            let mut expected = h.mul_ref(r);
            if k == col {
                expected = expected.add_ref(&h.derivative());
            }
            prop_assert_eq!(l, &expected);
        }
    }

    #[test]
    fn exact_classes_stay_exact(
        even in prop::collection::vec((-4i64..=4, -4i64..=4), 0..=3),
        odd in prop::collection::vec((-4i64..=4, -4i64..=4), 0..=2),
    ) {
        let fam = HyperellipticFamily::from_weierstrass(&tp(&[3]), &tp(&[1, -2])).unwrap();
        let lp = |c: &[(i64, i64)]| LaurentPoly::from_poly(&x_poly(X_VAR, c));
        let zero_z = LaurentPoly::zero(Z_VAR);
        let exact = CechCocycle::coboundary(&fam, (&lp(&even), &lp(&odd)), (&zero_z, &zero_z));
        let lifting = Lifting::new(&fam);
        let coords = reduce_to_basis(&fam, &gm_delta(&fam, &exact, &lifting).unwrap()).unwrap();
        prop_assert!(coords.iter().all(Field::is_zero));
    }
}

#[test]
fn genus_two_lifting_independence() {
    for text in GENUS_TWO {
        let fam = HyperellipticFamily::parse(text, None).unwrap();
        assert_eq!(fam.genus(), 2);
        let base = Lifting::new(&fam);
        let shifted = base.shifted(&fam, &x_poly(X_VAR, &[(1, 2), (0, -1)]), &x_poly(Z_VAR, &[(-1, 1)]));
        let m = matrix_with(&fam, &base);
        assert_eq!(m.dim(), 4);
        assert_eq!(m, matrix_with(&fam, &shifted), "{text}");
    }
}

#[test]
fn genus_two_basis_reduces_to_unit_vectors() {
    for text in GENUS_TWO {
        let fam = HyperellipticFamily::parse(text, None).unwrap();
        for (i, b) in basis(&fam).iter().enumerate() {
            let coords = reduce_to_basis(&fam, b).unwrap();
            for (k, c) in coords.iter().enumerate() {
                assert_eq!(c, &if k == i { Coeff::one() } else { Coeff::zero() });
            }
        }
    }
}
