//! Spectrum prediction from angular-momentum coupling along the tree.
//!
//! Every leaf carries its fixed spin; every internal node ranges over the
//! coupling series `|j1 - j2| ..= j1 + j2` of its children. One full
//! assignment of intermediate spins labels one multiplet of dimension
//! `2 j_root + 1`, a Casimir term at a node contributes
//! `coeff * j(j+1)`, and a root `X3` term splits each multiplet into its
//! `m`-levels. Assignments are enumerated outright so each multiplet keeps
//! its derivation trace.

use crate::error::Error;
use crate::model::{ElementKind, HamiltonianSpec};
use crate::spin::Spin;
use crate::tree::NodeRef;

/// One irreducible multiplet with its intermediate-spin assignment.
#[derive(Clone, Debug)]
pub struct Multiplet {
    /// Intermediate (and leaf) spin per node, sorted by node ref.
    pub assignment: Vec<(NodeRef, Spin)>,
    /// Total spin at the root.
    pub total_spin: Spin,
    /// Energy before any root `X3` splitting.
    pub energy: f64,
    pub dimension: usize,
}

/// Predicted levels plus the multiplets they came from.
#[derive(Clone, Debug)]
pub struct SpectrumPrediction {
    /// `(energy, multiplicity)` sorted by energy.
    pub levels: Vec<(f64, usize)>,
    pub multiplets: Vec<Multiplet>,
}

impl SpectrumPrediction {
    pub fn total_multiplicity(&self) -> usize {
        self.levels.iter().map(|(_, m)| m).sum()
    }
}

/// The coupling series `|a - b| ..= a + b` in unit steps.
pub fn coupling_range(a: Spin, b: Spin) -> Vec<Spin> {
    let lo = a.twice().abs_diff(b.twice());
    let hi = a.twice() + b.twice();
    (lo..=hi).step_by(2).map(Spin::from_twice).collect()
}

/// Predicts the spectrum of a Hamiltonian built from Casimir lifts and an
/// optional root `X3` term.
pub fn predict_spectrum(spec: &HamiltonianSpec) -> Result<SpectrumPrediction, Error> {
    let root = spec.tree.root_ref();
    let mut zeeman = 0.0;
    for term in &spec.terms {
        match term.kind {
            ElementKind::Casimir => {}
            ElementKind::X3 if term.node == root => zeeman += term.coeff,
            ElementKind::X3 => {
                return Err(Error::UnsupportedTerm(format!(
                    "{term}: X3 terms are only predictable at the root"
                )));
            }
        }
    }

    let assignments = enumerate_assignments(spec)?;
    let mut multiplets = Vec::with_capacity(assignments.len());
    for (assignment, total_spin) in assignments {
        let energy: f64 = spec
            .terms
            .iter()
            .filter(|t| t.kind == ElementKind::Casimir)
            .map(|t| {
                let j = assignment
                    .iter()
                    .find(|(n, _)| n == &t.node)
                    .expect("terms validated against the tree")
                    .1;
                t.coeff * j.casimir_eigenvalue()
            })
            .sum();
        multiplets.push(Multiplet {
            assignment,
            total_spin,
            energy,
            dimension: total_spin.dim(),
        });
    }

    // Expand multiplets into levels; a nonzero Zeeman coefficient splits
    // each multiplet into its 2j+1 magnetic sublevels.
    let mut raw: Vec<(f64, usize)> = Vec::new();
    for m in &multiplets {
        if zeeman == 0.0 {
            raw.push((m.energy, m.dimension));
        } else {
            let twice_j = m.total_spin.twice() as i64;
            for twice_m in (-twice_j..=twice_j).step_by(2) {
                raw.push((m.energy + zeeman * twice_m as f64 / 2.0, 1));
            }
        }
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = raw.iter().map(|(e, _)| e.abs()).fold(1.0, f64::max);
    let tol = 1e-10 * scale;
    let mut levels: Vec<(f64, usize)> = Vec::new();
    for (e, mult) in raw {
        match levels.last_mut() {
            Some((last, m)) if (e - *last).abs() <= tol => *m += mult,
            _ => levels.push((e, mult)),
        }
    }

    Ok(SpectrumPrediction { levels, multiplets })
}

/// All intermediate-spin assignments, depth-first over the tree.
fn enumerate_assignments(
    spec: &HamiltonianSpec,
) -> Result<Vec<(Vec<(NodeRef, Spin)>, Spin)>, Error> {
    fn rec(
        spec: &HamiltonianSpec,
        node: &NodeRef,
    ) -> Result<Vec<(Vec<(NodeRef, Spin)>, Spin)>, Error> {
        match spec.tree.children(node)? {
            None => {
                let label = node.labels().next().expect("leaf has one label");
                let s = spec.config.spin(label).ok_or(Error::WrongLeafCount {
                    expected: label as usize,
                    got: spec.config.len(),
                })?;
                Ok(vec![(vec![(node.clone(), s)], s)])
            }
            Some((left, right)) => {
                let lefts = rec(spec, &left)?;
                let rights = rec(spec, &right)?;
                let mut out = Vec::new();
                for (la, lj) in &lefts {
                    for (ra, rj) in &rights {
                        for j in coupling_range(*lj, *rj) {
                            let mut assignment = la.clone();
                            assignment.extend(ra.iter().cloned());
                            assignment.push((node.clone(), j));
                            assignment.sort_by(|a, b| a.0.cmp(&b.0));
                            out.push((assignment, j));
                        }
                    }
                }
                Ok(out)
            }
        }
    }
    rec(spec, &spec.tree.root_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{gaudin_spec, octahedron_spec, HamiltonianTerm};
    use crate::spin::SpinConfig;
    use crate::tree::CouplingTree;

    #[test]
    fn coupling_range_examples() {
        let half = Spin::HALF;
        assert_eq!(
            coupling_range(half, half),
            vec![Spin::from_twice(0), Spin::ONE]
        );
        assert_eq!(
            coupling_range(Spin::ONE, half),
            vec![Spin::HALF, Spin::from_twice(3)]
        );
        assert_eq!(
            coupling_range(Spin::ONE, Spin::ONE),
            vec![Spin::from_twice(0), Spin::ONE, Spin::from_twice(4)]
        );
    }

    #[test]
    fn pair_casimir_levels() {
        let tree = CouplingTree::parse("(1 2)").unwrap();
        let cfg = SpinConfig::uniform(Spin::HALF, 2).unwrap();
        let spec = HamiltonianSpec::new(
            tree.clone(),
            cfg,
            vec![HamiltonianTerm {
                node: tree.root_ref(),
                kind: ElementKind::Casimir,
                coeff: 1.0,
            }],
        )
        .unwrap();
        let prediction = predict_spectrum(&spec).unwrap();
        assert_eq!(prediction.levels, vec![(0.0, 1), (2.0, 3)]);
        assert_eq!(prediction.total_multiplicity(), 4);
    }

    #[test]
    fn octahedron_extremes_and_total() {
        let prediction = predict_spectrum(&octahedron_spec(1.0, Spin::HALF).unwrap()).unwrap();
        assert_eq!(prediction.total_multiplicity(), 64);
        let energies: Vec<f64> = prediction.levels.iter().map(|(e, _)| *e).collect();
        assert!((energies.first().unwrap() + 6.0).abs() < 1e-12);
        assert!((energies.last().unwrap() - 6.0).abs() < 1e-12);
        assert!(energies.iter().any(|e| e.abs() < 1e-12), "level 0 missing");
    }

    #[test]
    fn gaudin_total_multiplicity() {
        let prediction = predict_spectrum(&gaudin_spec(1.0, 0.5, Spin::HALF).unwrap()).unwrap();
        assert_eq!(prediction.total_multiplicity(), 64);
    }

    #[test]
    fn single_leaf_zeeman_splitting() {
        let tree = CouplingTree::parse("1").unwrap();
        let cfg = SpinConfig::uniform(Spin::ONE, 1).unwrap();
        let mu = 0.7;
        let spec = HamiltonianSpec::new(
            tree.clone(),
            cfg,
            vec![HamiltonianTerm {
                node: tree.root_ref(),
                kind: ElementKind::X3,
                coeff: mu,
            }],
        )
        .unwrap();
        let prediction = predict_spectrum(&spec).unwrap();
        assert_eq!(prediction.levels, vec![(-mu, 1), (0.0, 1), (mu, 1)]);
    }

    #[test]
    fn non_root_x3_is_unsupported() {
        let tree = CouplingTree::parse("(1 2)").unwrap();
        let cfg = SpinConfig::uniform(Spin::HALF, 2).unwrap();
        let spec = HamiltonianSpec::new(
            tree,
            cfg,
            vec![HamiltonianTerm {
                node: NodeRef::leaf(1),
                kind: ElementKind::X3,
                coeff: 1.0,
            }],
        )
        .unwrap();
        assert!(matches!(
            predict_spectrum(&spec),
            Err(Error::UnsupportedTerm(_))
        ));
    }

    #[test]
    fn traces_respect_triangle_rule() {
        let spec = octahedron_spec(1.0, Spin::HALF).unwrap();
        let prediction = predict_spectrum(&spec).unwrap();
        let dims: usize = prediction.multiplets.iter().map(|m| m.dimension).sum();
        assert_eq!(dims, 64);
        for m in &prediction.multiplets {
            assert_eq!(m.assignment.len(), spec.tree.node_count());
            for (node, j) in &m.assignment {
                if let Some((left, right)) = spec.tree.children(node).unwrap() {
                    let find = |n: &NodeRef| m.assignment.iter().find(|(x, _)| x == n).unwrap().1;
                    let (lj, rj) = (find(&left), find(&right));
                    assert!(coupling_range(lj, rj).contains(j));
                }
            }
        }
    }
}
