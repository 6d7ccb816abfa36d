//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Rotations are applied directly to the complex matrix: the 2x2 pivot
//! block is diagonalized by a unitary plane rotation whose off-diagonal
//! phase matches the pivot entry. Sweeps run over all upper-triangle pairs
//! until the off-diagonal Frobenius norm drops below `1e-13 * ||A||_F`,
//! with a hard cap of 100 sweeps.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::{frobenius, hermiticity_defect, max_abs, Operator};

const MAX_SWEEPS: usize = 100;
const CONVERGENCE_FACTOR: f64 = 1e-13;

/// How far from Hermitian the input may be.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Ascending eigenvalues of a Hermitian operator.
pub fn spectrum(a: &Operator) -> Result<Vec<f64>, Error> {
    Ok(eigh(a)?.0)
}

/// Ascending eigenvalues and matching eigenvector columns.
pub fn eigh(a: &Operator) -> Result<(Vec<f64>, Operator), Error> {
    let n = a.nrows();
    let defect = hermiticity_defect(a);
    if defect > HERMITICITY_TOL * 1.0f64.max(max_abs(a)) {
        return Err(Error::NotHermitian { deviation: defect });
    }

    // Work on the Hermitian average so roundoff in the input cannot feed
    // the rotations a non-real diagonal.
    let mut m = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (a[(i, j)] + a[(j, i)].conj()) * Complex64::new(0.5, 0.0);
        }
    }
    let mut vecs = crate::matrix::identity(n);
    let threshold = CONVERGENCE_FACTOR * frobenius(&m);

    let mut converged = n < 2;
    let mut off = off_diagonal_norm(&m);
    for _sweep in 0..MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        // Entries too small to matter for this sweep's target are skipped.
        let skip = threshold / (2.0 * (n * n) as f64).max(1.0);
        for p in 0..n {
            for q in (p + 1)..n {
                if m[(p, q)].norm() > skip {
                    rotate(&mut m, &mut vecs, p, q);
                }
            }
        }
        off = off_diagonal_norm(&m);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let values: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vecs = Array2::<Complex64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vecs[(row, dst)] = vecs[(row, src)];
        }
    }
    Ok((sorted_values, sorted_vecs))
}

fn off_diagonal_norm(m: &Operator) -> f64 {
    let n = m.nrows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += 2.0 * m[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// One unitary plane rotation annihilating the (p, q) entry.
fn rotate(m: &mut Operator, vecs: &mut Operator, p: usize, q: usize) {
    let apq = m[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / Complex64::new(abs, 0.0);
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    // Classic symmetric Schur parameters on (app, |apq|, aqq).
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U differs from I only at U_pp = U_qq = c, U_pq = s*phase,
    // U_qp = -s*conj(phase).
    let cs = Complex64::new(c, 0.0);
    let s_phase = phase * s;
    let s_conj = phase.conj() * s;

    let n = m.nrows();
    // columns: B = A U
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * cs - akq * s_conj;
        m[(k, q)] = akp * s_phase + akq * cs;
    }
    // rows: A' = U^dagger B
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * cs - aqk * s_phase;
        m[(q, k)] = apk * s_conj + aqk * cs;
    }
    m[(p, q)] = Complex64::default();
    m[(q, p)] = Complex64::default();
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = vecs[(k, p)];
        let vkq = vecs[(k, q)];
        vecs[(k, p)] = vkp * cs - vkq * s_conj;
        vecs[(k, q)] = vkp * s_phase + vkq * cs;
    }
}

/// Groups sorted eigenvalues into `(level, multiplicity)` pairs, starting a
/// new level whenever the gap to the previous value exceeds `tol`. The
/// reported level is the mean of its cluster.
pub fn cluster_levels(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut cluster: Vec<f64> = Vec::new();
    for &v in values {
        match cluster.last() {
            Some(&prev) if (v - prev).abs() <= tol => cluster.push(v),
            Some(_) => {
                out.push(summarize(&cluster));
                cluster.clear();
                cluster.push(v);
            }
            None => cluster.push(v),
        }
    }
    if !cluster.is_empty() {
        out.push(summarize(&cluster));
    }
    out
}

fn summarize(cluster: &[f64]) -> (f64, usize) {
    let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
    (mean, cluster.len())
}
