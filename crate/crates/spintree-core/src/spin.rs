//! Spin quantum numbers and matrix representations on tensor-product
//! Hilbert spaces.
//!
//! The irreducible representation convention: the `S3` matrix is diagonal
//! with eigenvalues `s, s-1, ..., -s` (descending), and `S1`, `S2` come
//! from the standard ladder-operator matrix elements. Basis indices run
//! with leaf 1 as the slowest Kronecker factor, matching the left-to-right
//! leaf order of the trees.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Monomial};
use crate::error::Error;
use crate::matrix::{identity, kron, kron_identity_right, Operator};
use crate::tensor::{from_algebra_element, TensorElement};

/// Default ceiling on the dense Hilbert-space dimension.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// A half-integer spin, stored as `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice: 1 };
    pub const ONE: Spin = Spin { twice: 2 };

    pub fn from_twice(twice: u32) -> Spin {
        Spin { twice }
    }

    pub fn twice(&self) -> u32 {
        self.twice
    }

    pub fn value(&self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// `s(s+1)`, exact in floating point for desk-scale spins.
    pub fn casimir_eigenvalue(&self) -> f64 {
        let t = f64::from(self.twice);
        t * (t + 2.0) / 4.0
    }

    /// Multiplet dimension `2s + 1`.
    pub fn dim(&self) -> usize {
        self.twice as usize + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Parses `"1/2"`, `"1"`, `"3/2"`, ...
    fn from_str(s: &str) -> Result<Spin, Error> {
        let bad = || Error::InvalidSpin(format!("`{s}` is not a half-integer like 1/2 or 2"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            let twice: u32 = num.trim().parse().map_err(|_| bad())?;
            if twice % 2 == 0 {
                return Err(Error::InvalidSpin(format!(
                    "`{s}` should be written as the integer {}",
                    twice / 2
                )));
            }
            Ok(Spin { twice })
        } else {
            let whole: u32 = s.parse().map_err(|_| bad())?;
            Ok(Spin { twice: 2 * whole })
        }
    }
}

/// One spin per leaf label plus the dense-dimension envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfig {
    spins: Vec<Spin>,
    max_dim: usize,
}

impl SpinConfig {
    /// Spins listed in leaf-label order (`spins[0]` is leaf 1). All spins
    /// must be at least 1/2.
    pub fn new(spins: Vec<Spin>) -> Result<SpinConfig, Error> {
        if spins.is_empty() {
            return Err(Error::InvalidSpin("at least one spin is required".into()));
        }
        if let Some(s) = spins.iter().find(|s| s.twice == 0) {
            return Err(Error::InvalidSpin(format!("spin {s} is below 1/2")));
        }
        Ok(SpinConfig {
            spins,
            max_dim: DEFAULT_MAX_DIM,
        })
    }

    /// `leaf_count` copies of the same spin.
    pub fn uniform(s: Spin, leaf_count: usize) -> Result<SpinConfig, Error> {
        SpinConfig::new(vec![s; leaf_count])
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> SpinConfig {
        self.max_dim = max_dim;
        self
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn spin(&self, leaf: u32) -> Option<Spin> {
        self.spins.get(leaf as usize - 1).copied()
    }

    /// Total Hilbert-space dimension, checked against the envelope.
    pub fn dimension(&self) -> Result<usize, Error> {
        let dim = self
            .spins
            .iter()
            .map(|s| s.dim())
            .try_fold(1usize, usize::checked_mul)
            .unwrap_or(usize::MAX);
        if dim > self.max_dim {
            return Err(Error::DimensionOverflow {
                dim,
                limit: self.max_dim,
            });
        }
        Ok(dim)
    }
}

/// The three spin matrices `(S1, S2, S3)` in the descending-`m` basis.
pub fn spin_generators(s: Spin) -> [Operator; 3] {
    let n = s.dim();
    let mut s3 = Array2::<Complex64>::zeros((n, n));
    let mut s_plus = Array2::<Complex64>::zeros((n, n));
    let ss1 = s.casimir_eigenvalue();
    for i in 0..n {
        // m runs s, s-1, ..., -s with the row index.
        let m = s.value() - i as f64;
        s3[(i, i)] = Complex64::new(m, 0.0);
        if i > 0 {
            // <m+1| S+ |m> = sqrt(s(s+1) - m(m+1))
            s_plus[(i - 1, i)] = Complex64::new((ss1 - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let s_minus = s_plus.t().mapv(|z| z.conj());
    let half = Complex64::new(0.5, 0.0);
    let half_over_i = Complex64::new(0.0, -0.5);
    let s1 = (&s_plus + &s_minus).mapv(|z| z * half);
    let s2 = (&s_plus - &s_minus).mapv(|z| z * half_over_i);
    [s1, s2, s3]
}

/// `S1^a S2^b S3^c` on a single site.
fn monomial_matrix(m: &Monomial, gens: &[Operator; 3]) -> Operator {
    let n = gens[0].nrows();
    let mut out = identity(n);
    for (idx, &count) in m.0.iter().enumerate() {
        for _ in 0..count {
            out = out.dot(&gens[idx]);
        }
    }
    out
}

/// Represents a tensor element as a dense operator on the product space.
///
/// Each monomial tensor maps to the Kronecker product over leaves of its
/// per-slot matrices; terms are summed in deterministic (sorted-key) order
/// even though their matrices are built in parallel.
pub fn represent(t: &TensorElement, cfg: &SpinConfig) -> Result<Operator, Error> {
    if t.arity() != cfg.len() {
        return Err(Error::SiteCountMismatch {
            arity: t.arity(),
            sites: cfg.len(),
        });
    }
    let dim = cfg.dimension()?;

    let gens: HashMap<u32, [Operator; 3]> = cfg
        .spins()
        .iter()
        .map(|s| (s.twice(), spin_generators(*s)))
        .collect();

    // Site matrices for every distinct (spin, monomial) pair, built once.
    let mut site_cache: HashMap<(u32, Monomial), Operator> = HashMap::new();
    for (key, _) in t.terms() {
        for (slot, m) in key.iter().enumerate() {
            let s = cfg.spins()[slot];
            site_cache
                .entry((s.twice(), *m))
                .or_insert_with(|| monomial_matrix(m, &gens[&s.twice()]));
        }
    }

    let terms: Vec<(&Vec<Monomial>, &Complex64)> = t.terms().collect();
    let contributions: Vec<Operator> = terms
        .par_iter()
        .map(|(key, coeff)| {
            let mut acc = Array2::from_elem((1, 1), **coeff);
            for (slot, m) in key.iter().enumerate() {
                let s = cfg.spins()[slot];
                if m.is_unit() {
                    acc = kron_identity_right(&acc, s.dim());
                } else {
                    acc = kron(&acc, &site_cache[&(s.twice(), *m)]);
                }
            }
            acc
        })
        .collect();

    let mut out = Array2::zeros((dim, dim));
    for c in contributions {
        out += &c;
    }
    Ok(out)
}

/// Represents a plain algebra element on a single site.
pub fn represent_element(a: &AlgebraElement, s: Spin) -> Result<Operator, Error> {
    let cfg = SpinConfig::new(vec![s])?;
    represent(&from_algebra_element(a), &cfg)
}

/// `I (x) ... (x) local (x) ... (x) I` with `local` at the given site
/// (0-based). Used for assembling explicit exchange sums independently of
/// the coproduct machinery.
pub fn site_operator(cfg: &SpinConfig, site: usize, local: &Operator) -> Result<Operator, Error> {
    if site >= cfg.len() {
        return Err(Error::SiteCountMismatch {
            arity: site + 1,
            sites: cfg.len(),
        });
    }
    if local.nrows() != cfg.spins()[site].dim() {
        return Err(Error::DimensionMismatch {
            left: local.nrows(),
            right: cfg.spins()[site].dim(),
        });
    }
    cfg.dimension()?;
    let mut acc = Array2::from_elem((1, 1), Complex64::new(1.0, 0.0));
    for (slot, s) in cfg.spins().iter().enumerate() {
        if slot == site {
            acc = kron(&acc, local);
        } else {
            acc = kron_identity_right(&acc, s.dim());
        }
    }
    Ok(acc)
}
