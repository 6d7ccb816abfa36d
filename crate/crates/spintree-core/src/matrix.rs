//! Dense complex operators and the small linear-algebra kit used on them.
//!
//! Operators live on the full tensor-product spin space and are assembled
//! factor-by-factor with Kronecker products; slots holding the unit never
//! materialize an intermediate identity matrix.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::Error;

/// A dense complex square matrix on the tensor-product spin space.
pub type Operator = Array2<Complex64>;

pub fn identity(n: usize) -> Operator {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

pub fn zeros(n: usize) -> Operator {
    Array2::zeros((n, n))
}

/// Kronecker product `a (x) b` (left factor slowest-varying).
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    ndarray::linalg::kron(a, b)
}

/// `a (x) I_n` without building the identity.
pub fn kron_identity_right(a: &Operator, n: usize) -> Operator {
    let (ra, ca) = a.dim();
    let mut out = Array2::zeros((ra * n, ca * n));
    for i in 0..ra {
        for j in 0..ca {
            let v = a[(i, j)];
            if v == Complex64::default() {
                continue;
            }
            for k in 0..n {
                out[(i * n + k, j * n + k)] = v;
            }
        }
    }
    out
}

/// `AB - BA`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator, Error> {
    check_same_dim(a, b)?;
    Ok(a.dot(b) - b.dot(a))
}

/// Largest entry magnitude.
pub fn max_abs(a: &Operator) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry magnitude of `a - b`.
pub fn max_abs_diff(a: &Operator, b: &Operator) -> Result<f64, Error> {
    check_same_dim(a, b)?;
    Ok(a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max))
}

pub fn frobenius(a: &Operator) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry magnitude of `A - A^dagger`.
pub fn hermiticity_defect(a: &Operator) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (a[(i, j)] - a[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

fn check_same_dim(a: &Operator, b: &Operator) -> Result<(), Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities() {
        let a = identity(2);
        assert_eq!(kron(&a, &identity(3)), identity(6));
        assert_eq!(kron_identity_right(&a, 3), identity(6));
    }

    #[test]
    fn kron_identity_right_matches_generic_kron() {
        let a = ndarray::array![[c(1.0, 2.0), c(0.0, -1.0)], [c(3.0, 0.0), c(0.5, 0.5)]];
        assert_eq!(kron_identity_right(&a, 3), kron(&a, &identity(3)));
    }

    #[test]
    fn commutator_of_equal_operators_is_zero() {
        let a = ndarray::array![[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(2.0, 0.0)]];
        let comm = commutator(&a, &a).unwrap();
        assert_eq!(max_abs(&comm), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = identity(2);
        let b = identity(3);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(max_abs_diff(&a, &b).is_err());
    }

    #[test]
    fn hermiticity_defect_detects_asymmetry() {
        let h = ndarray::array![[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(2.0, 0.0)]];
        assert_eq!(hermiticity_defect(&h), 0.0);
        let mut broken = h;
        broken[(0, 1)] = c(0.0, 1.5);
        assert!(hermiticity_defect(&broken) > 0.4);
    }
}
