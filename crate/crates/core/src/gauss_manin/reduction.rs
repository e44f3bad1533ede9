use std::fmt;

use rug::Rational;
use serde::Serialize;

use super::{ConnectionMatrix, GaussManinError};
use crate::exact::{rational_residue, Field, Polynomial, RationalFunction, BASE_VAR};

/// Reduction of a Weierstrass model at a finite point of the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionType {
    Smooth,
    Multiplicative(u32),
    Additive,
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionType::Smooth => f.write_str("smooth"),
            ReductionType::Multiplicative(n) => write!(f, "multiplicative({n})"),
            ReductionType::Additive => f.write_str("additive"),
        }
    }
}

/// Order of vanishing at `point`; `None` for the zero polynomial.
pub(crate) fn order_at(p: &Polynomial<Rational>, point: &Rational) -> Option<u32> {
    (!p.is_zero()).then(|| p.root_multiplicity(point) as u32)
}

pub(crate) fn discriminant(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>) -> Polynomial<Rational> {
    let (g2, g3) = (g2.with_var(BASE_VAR), g3.with_var(BASE_VAR));
    &g2.pow(3) - &g3.pow(2).scale(&Rational::from(27))
}

pub fn reduction_type(
    g2: &Polynomial<Rational>,
    g3: &Polynomial<Rational>,
    point: &Rational,
) -> Result<ReductionType, GaussManinError> {
    let delta = discriminant(g2, g3);
    let Some(v_delta) = order_at(&delta, point) else {
        return Err(GaussManinError::DegenerateDiscriminant);
    };
    let v2 = order_at(g2, point);
    let v3 = order_at(g3, point);
    if v2.map_or(true, |v| v >= 4) && v3.map_or(true, |v| v >= 6) {
        return Err(GaussManinError::NonMinimal { point: point.to_string() });
    }
    Ok(match (v_delta, v2) {
        (0, _) => ReductionType::Smooth,
        (n, Some(0)) => ReductionType::Multiplicative(n),
        _ => ReductionType::Additive,
    })
}

/// Exponents `e_i` such that `((t - P)^{e_i} e_i)` spans the canonical
/// extension at `P`, in the order `(ω, ω*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisScaling {
    #[serde(serialize_with = "crate::text::rational")]
    pub point: Rational,
    pub exponents: Vec<u32>,
}

/// `{ω, ω*}` for smooth or semistable reduction, `{(t - P)ω, ω*}` for additive.
pub fn canonical_extension_basis(
    g2: &Polynomial<Rational>,
    g3: &Polynomial<Rational>,
    point: &Rational,
) -> Result<BasisScaling, GaussManinError> {
    let exponents = match reduction_type(g2, g3, point)? {
        ReductionType::Additive => vec![1, 0],
        _ => vec![0, 0],
    };
    Ok(BasisScaling { point: point.clone(), exponents })
}

/// Exact square matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl ResidueMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim()).fold(Rational::new(), |acc, i| acc + &self.entries[i][i])
    }

    /// Determinant by Gaussian elimination over ℚ.
    pub fn det(&self) -> Rational {
        let n = self.dim();
        let mut a = self.entries.clone();
        let mut det = Rational::from(1);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !Field::is_zero(&a[r][col])) else {
                return Rational::new();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= &a[col][col];
            for row in col + 1..n {
                let factor = Rational::from(&a[row][col] / &a[col][col]);
                for k in col..n {
                    let t = Rational::from(&factor * &a[col][k]);
                    a[row][k] -= t;
                }
            }
        }
        det
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::new(), |acc, k| acc + Rational::from(&self.entries[i][k] * &o.entries[k][j])))
                    .collect()
            })
            .collect();
        ResidueMatrix { entries }
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.dim() {
            p = p.mul(self);
        }
        p.entries.iter().flatten().all(Field::is_zero)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()
    }
}

/// Exact residue at `P` of the connection rewritten in the basis
/// `(t - P)^{e_i} e_i`: `M' = S⁻¹MS + S⁻¹S'`.
pub fn residue_matrix(conn: &ConnectionMatrix, scaling: &BasisScaling) -> Result<ResidueMatrix, GaussManinError> {
    let n = conn.dim();
    assert_eq!(scaling.exponents.len(), n, "scaling has the wrong length");
    let lin = Polynomial::linear_root(BASE_VAR, &scaling.point);
    let s = |i: usize| RationalFunction::from_poly(lin.pow(scaling.exponents[i]));
    let mut entries = vec![vec![Rational::new(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut m = conn.entry(i, j).mul_ref(&s(j)).div_ref(&s(i));
            if i == j {
                let sj = s(j);
                m = m.add_ref(&sj.derivative().div_ref(&sj));
            }
            *cell = rational_residue(m.num(), m.den(), &scaling.point)
                .map_err(|source| GaussManinError::Residue { row: i, col: j, source })?;
        }
    }
    Ok(ResidueMatrix { entries })
}

/// True when every eigenvalue of a 2×2 rational matrix has real part in
/// `[0, 1)`, decided exactly from the trace and determinant.
pub fn eigenvalues_in_unit_interval(m: &ResidueMatrix) -> bool {
    assert_eq!(m.dim(), 2, "exact eigenvalue test is for 2×2 matrices");
    let tr = m.trace();
    let det = m.det();
    let disc = Rational::from(tr.square_ref()) - Rational::from(&det * 4);
    if disc < 0 {
        // complex pair with real part tr/2
        return tr >= 0 && tr < 2;
    }
    // real roots of λ² - tr λ + det: both ≥ 0 iff tr ≥ 0 and det ≥ 0;
    // both < 1 iff p(1) > 0 and tr/2 < 1
    let p1 = Rational::from(1) - &tr + &det;
    tr >= 0 && det >= 0 && p1 > 0 && tr < 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss_manin::weierstrass_connection;

    fn tp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(BASE_VAR, c)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn reduction_types() {
        let zero = Rational::new();
        assert_eq!(reduction_type(&tp(&[3]), &tp(&[1, -2]), &zero), Ok(ReductionType::Multiplicative(1)));
        assert_eq!(reduction_type(&tp(&[0]), &tp(&[0, -4]), &zero), Ok(ReductionType::Additive));
        assert_eq!(reduction_type(&tp(&[3]), &tp(&[1, -2]), &q(1, 2)), Ok(ReductionType::Smooth));
        let non_minimal = reduction_type(&tp(&[0, 0, 0, 0, 3]), &tp(&[0, 0, 0, 0, 0, 0, 2]), &zero);
        assert!(matches!(non_minimal, Err(GaussManinError::NonMinimal { .. })));
    }

    #[test]
    fn multiplicative_residue_is_nilpotent() {
        let (g2, g3) = (tp(&[3]), tp(&[1, -2]));
        let conn = weierstrass_connection(&g2, &g3).unwrap();
        let basis = canonical_extension_basis(&g2, &g3, &Rational::new()).unwrap();
        assert_eq!(basis.exponents, vec![0, 0]);
        let r = residue_matrix(&conn, &basis).unwrap();
        assert_eq!(r.entries, vec![vec![q(-1, 12), q(1, 12)], vec![q(-1, 12), q(1, 12)]]);
        assert_eq!(r.trace(), 0);
        assert_eq!(r.det(), 0);
        assert!(r.is_nilpotent());
        assert!(eigenvalues_in_unit_interval(&r));
    }

    #[test]
    fn additive_residue_in_scaled_basis() {
        let (g2, g3) = (tp(&[0]), tp(&[0, -4]));
        let conn = weierstrass_connection(&g2, &g3).unwrap();
        let basis = canonical_extension_basis(&g2, &g3, &Rational::new()).unwrap();
        assert_eq!(basis.exponents, vec![1, 0]);
        let r = residue_matrix(&conn, &basis).unwrap();
        assert_eq!(r.entries, vec![vec![q(5, 6), q(0, 1)], vec![q(0, 1), q(1, 6)]]);
        assert!(eigenvalues_in_unit_interval(&r));
        // without the scaling the eigenvalue -1/6 falls outside [0, 1)
        let plain = BasisScaling { point: Rational::new(), exponents: vec![0, 0] };
        assert!(!eigenvalues_in_unit_interval(&residue_matrix(&conn, &plain).unwrap()));
    }

    #[test]
    fn smooth_point_has_zero_residue() {
        let (g2, g3) = (tp(&[3]), tp(&[1, -2]));
        let conn = weierstrass_connection(&g2, &g3).unwrap();
        let basis = canonical_extension_basis(&g2, &g3, &q(1, 3)).unwrap();
        let r = residue_matrix(&conn, &basis).unwrap();
        assert!(r.entries.iter().flatten().all(Field::is_zero));
    }
}
