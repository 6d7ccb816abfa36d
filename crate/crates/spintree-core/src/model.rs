//! Commuting observable families and Hamiltonians built from them.
//!
//! For a tree with `L` leaves the family consists of the lifted Casimir at
//! every internal node plus the lifted `X3` at the root: `L` operators in
//! total, pairwise commuting. Any real combination of Casimir lifts (plus a
//! root `X3` Zeeman term) is then an integrable Hamiltonian; the octahedron
//! and Gaudin central-spin models are shipped as presets.

use num_complex::Complex64;
use rayon::prelude::*;
use std::fmt;

use crate::algebra::AlgebraElement;
use crate::eig::{cluster_levels, spectrum};
use crate::error::Error;
use crate::matrix::{commutator, hermiticity_defect, max_abs, zeros, Operator};
use crate::spin::{represent, site_operator, spin_generators, Spin, SpinConfig};
use crate::tensor::lift_at_node;
use crate::tree::{CouplingTree, NodeRef};

/// Which element gets lifted in a Hamiltonian term or family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Casimir,
    X3,
}

impl ElementKind {
    pub fn element(&self) -> AlgebraElement {
        match self {
            ElementKind::Casimir => AlgebraElement::casimir(),
            ElementKind::X3 => AlgebraElement::generator(3),
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Casimir => f.write_str("casimir"),
            ElementKind::X3 => f.write_str("x3"),
        }
    }
}

/// One summand `coeff * lifted(kind) at node`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianTerm {
    pub node: NodeRef,
    pub kind: ElementKind,
    pub coeff: f64,
}

impl fmt::Display for HamiltonianTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}@{}", self.coeff, self.kind, self.node)
    }
}

/// A tree, a spin per leaf, and the term list of a Hamiltonian.
#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    pub tree: CouplingTree,
    pub config: SpinConfig,
    pub terms: Vec<HamiltonianTerm>,
}

impl HamiltonianSpec {
    pub fn new(
        tree: CouplingTree,
        config: SpinConfig,
        terms: Vec<HamiltonianTerm>,
    ) -> Result<HamiltonianSpec, Error> {
        if config.len() != tree.leaf_count() {
            return Err(Error::WrongLeafCount {
                expected: tree.leaf_count(),
                got: config.len(),
            });
        }
        for term in &terms {
            if !tree.contains_node(&term.node) {
                return Err(Error::Tree(crate::tree::TreeError::UnknownNode(
                    term.node.clone(),
                )));
            }
            if !term.coeff.is_finite() {
                return Err(Error::UnsupportedTerm(format!(
                    "non-finite coefficient in {term}"
                )));
            }
        }
        Ok(HamiltonianSpec {
            tree,
            config,
            terms,
        })
    }
}

/// One represented member of a commuting family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub node: NodeRef,
    pub kind: ElementKind,
    pub operator: Operator,
}

impl FamilyMember {
    pub fn label(&self) -> String {
        format!("{}@{}", self.kind, self.node)
    }
}

/// The `L` commuting observables of a tree: Casimir lifts at the internal
/// nodes (pre-order) followed by the root `X3`.
#[derive(Clone, Debug)]
pub struct CommutingFamily {
    pub members: Vec<FamilyMember>,
}

impl CommutingFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labelled(&self) -> Vec<(String, &Operator)> {
        self.members
            .iter()
            .map(|m| (m.label(), &m.operator))
            .collect()
    }

    /// The member lifted at `node` with the given kind, if present.
    pub fn member(&self, node: &NodeRef, kind: ElementKind) -> Option<&FamilyMember> {
        self.members
            .iter()
            .find(|m| &m.node == node && m.kind == kind)
    }
}

/// Builds the represented commuting family of a tree.
pub fn commuting_family(tree: &CouplingTree, cfg: &SpinConfig) -> Result<CommutingFamily, Error> {
    cfg.dimension()?;
    let mut members = Vec::with_capacity(tree.leaf_count());
    for node in tree.internal_node_refs() {
        let lifted = lift_at_node(tree, &node, &AlgebraElement::casimir())?;
        members.push(FamilyMember {
            node,
            kind: ElementKind::Casimir,
            operator: represent(&lifted, cfg)?,
        });
    }
    let root = tree.root_ref();
    let lifted = lift_at_node(tree, &root, &AlgebraElement::generator(3))?;
    members.push(FamilyMember {
        node: root,
        kind: ElementKind::X3,
        operator: represent(&lifted, cfg)?,
    });
    Ok(CommutingFamily { members })
}

/// Max-entry norm of one pairwise commutator.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCommutator {
    pub left: String,
    pub right: String,
    pub norm: f64,
}

/// Outcome of an all-pairs commutation check.
#[derive(Clone, Debug)]
pub struct CommutationReport {
    pub pairs: Vec<PairCommutator>,
    pub max_norm: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks `[A, B] = 0` for every unordered pair of the given operators.
pub fn verify_commuting(ops: &[(String, &Operator)], tol: f64) -> Result<CommutationReport, Error> {
    for window in ops.windows(2) {
        if window[0].1.dim() != window[1].1.dim() {
            return Err(Error::DimensionMismatch {
                left: window[0].1.nrows(),
                right: window[1].1.nrows(),
            });
        }
    }
    let mut index_pairs = Vec::new();
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            index_pairs.push((i, j));
        }
    }
    let pairs: Vec<PairCommutator> = index_pairs
        .par_iter()
        .map(|&(i, j)| {
            let norm = max_abs(&commutator(ops[i].1, ops[j].1).expect("dimensions checked"));
            PairCommutator {
                left: ops[i].0.clone(),
                right: ops[j].0.clone(),
                norm,
            }
        })
        .collect();
    let max_norm = pairs.iter().map(|p| p.norm).fold(0.0, f64::max);
    Ok(CommutationReport {
        pairs,
        max_norm,
        tolerance: tol,
        pass: max_norm <= tol,
    })
}

/// Assembles `sum coeff * represent(lift_at_node(...))`.
pub fn build_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator, Error> {
    let dim = spec.config.dimension()?;
    let mut h = zeros(dim);
    for term in &spec.terms {
        if term.coeff == 0.0 {
            continue;
        }
        let lifted = lift_at_node(&spec.tree, &term.node, &term.kind.element())?;
        let op = represent(&lifted, &spec.config)?;
        h += &op.mapv(|z| z * Complex64::new(term.coeff, 0.0));
    }
    Ok(h)
}

/// The six-spin coupling tree behind both presets: pairs (1,2), (3,4),
/// (5,6) coupled first, the last two pairs merged, then everything.
pub fn octahedron_tree() -> CouplingTree {
    CouplingTree::parse("((1 2)((3 4)(5 6)))").expect("preset tree is valid")
}

/// Heisenberg octahedron: `J * (c@root - c@{1,2} - c@{3,4} - c@{5,6})`,
/// which equals `2J` times the exchange sum over the twelve octahedron
/// edges.
pub fn octahedron_spec(j: f64, s: Spin) -> Result<HamiltonianSpec, Error> {
    let tree = octahedron_tree();
    let cfg = SpinConfig::uniform(s, 6)?;
    let node = |labels: &[u32]| NodeRef::from_labels(labels.iter().copied());
    let terms = vec![
        HamiltonianTerm {
            node: tree.root_ref(),
            kind: ElementKind::Casimir,
            coeff: j,
        },
        HamiltonianTerm {
            node: node(&[1, 2]),
            kind: ElementKind::Casimir,
            coeff: -j,
        },
        HamiltonianTerm {
            node: node(&[3, 4]),
            kind: ElementKind::Casimir,
            coeff: -j,
        },
        HamiltonianTerm {
            node: node(&[5, 6]),
            kind: ElementKind::Casimir,
            coeff: -j,
        },
    ];
    HamiltonianSpec::new(tree, cfg, terms)
}

/// Gaudin central-spin model on the same tree: spins 1 and 2 are the
/// central pair, 3..6 the bath: `A * (c@root - c@{3,4,5,6}) + J * c@{1,2}`.
pub fn gaudin_spec(a: f64, j: f64, s: Spin) -> Result<HamiltonianSpec, Error> {
    let tree = octahedron_tree();
    let cfg = SpinConfig::uniform(s, 6)?;
    let node = |labels: &[u32]| NodeRef::from_labels(labels.iter().copied());
    let terms = vec![
        HamiltonianTerm {
            node: tree.root_ref(),
            kind: ElementKind::Casimir,
            coeff: a,
        },
        HamiltonianTerm {
            node: node(&[3, 4, 5, 6]),
            kind: ElementKind::Casimir,
            coeff: -a,
        },
        HamiltonianTerm {
            node: node(&[1, 2]),
            kind: ElementKind::Casimir,
            coeff: j,
        },
    ];
    HamiltonianSpec::new(tree, cfg, terms)
}

/// The twelve edges of the octahedron graph on vertices 0..6: every pair
/// except the three antipodal ones (0,1), (2,3), (4,5).
pub fn octahedron_edges() -> Vec<(usize, usize)> {
    let antipodal = [(0, 1), (2, 3), (4, 5)];
    let mut edges = Vec::with_capacity(12);
    for a in 0..6 {
        for b in (a + 1)..6 {
            if !antipodal.contains(&(a, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// `coupling * sum_edges S^(a) . S^(b)`, assembled from explicit site
/// operators rather than coproduct lifts.
pub fn exchange_sum(
    cfg: &SpinConfig,
    edges: &[(usize, usize)],
    coupling: f64,
) -> Result<Operator, Error> {
    let dim = cfg.dimension()?;
    let mut h = zeros(dim);
    for &(a, b) in edges {
        let gens_a = spin_generators(cfg.spins()[a]);
        let gens_b = spin_generators(cfg.spins()[b]);
        for i in 0..3 {
            let sa = site_operator(cfg, a, &gens_a[i])?;
            let sb = site_operator(cfg, b, &gens_b[i])?;
            h += &sa.dot(&sb);
        }
    }
    Ok(h.mapv(|z| z * Complex64::new(coupling, 0.0)))
}

/// Gap-clustering threshold for turning raw eigenvalues into levels.
pub fn level_cluster_tol(op: &Operator) -> f64 {
    1e-7 * 1.0f64.max(max_abs(op))
}

/// Diagonalizes a Hamiltonian and clusters its spectrum into levels.
pub fn numeric_levels(op: &Operator) -> Result<Vec<(f64, usize)>, Error> {
    let defect = hermiticity_defect(op);
    if defect > 1e-10 * 1.0f64.max(max_abs(op)) {
        return Err(Error::NotHermitian { deviation: defect });
    }
    let values = spectrum(op)?;
    Ok(cluster_levels(&values, level_cluster_tol(op)))
}

/// One row of a numeric-vs-predicted level comparison.
#[derive(Clone, Debug)]
pub struct LevelMatch {
    pub numeric: f64,
    pub predicted: f64,
    pub numeric_multiplicity: usize,
    pub predicted_multiplicity: usize,
    pub deviation: f64,
}

/// Outcome of matching two spectra level by level.
#[derive(Clone, Debug)]
pub struct SpectrumComparison {
    pub levels: Vec<LevelMatch>,
    pub max_deviation: f64,
    pub multiplicities_match: bool,
    pub level_counts_match: bool,
    pub tolerance: f64,
    pub pass: bool,
}

/// Greedy sorted-multiset matching: level lists must align one-to-one with
/// equal multiplicities and energies within `tol`.
pub fn compare_spectra(
    numeric: &[(f64, usize)],
    predicted: &[(f64, usize)],
    tol: f64,
) -> Result<SpectrumComparison, Error> {
    let total = |levels: &[(f64, usize)]| levels.iter().map(|(_, m)| m).sum::<usize>();
    let (n_total, p_total) = (total(numeric), total(predicted));
    if n_total != p_total {
        return Err(Error::SpectrumSizeMismatch {
            left: n_total,
            right: p_total,
        });
    }
    let level_counts_match = numeric.len() == predicted.len();
    let mut levels = Vec::new();
    let mut max_deviation = 0.0f64;
    let mut multiplicities_match = level_counts_match;
    if level_counts_match {
        for (&(ne, nm), &(pe, pm)) in numeric.iter().zip(predicted) {
            let deviation = (ne - pe).abs();
            max_deviation = max_deviation.max(deviation);
            if nm != pm {
                multiplicities_match = false;
            }
            levels.push(LevelMatch {
                numeric: ne,
                predicted: pe,
                numeric_multiplicity: nm,
                predicted_multiplicity: pm,
                deviation,
            });
        }
    }
    let pass = level_counts_match && multiplicities_match && max_deviation <= tol;
    Ok(SpectrumComparison {
        levels,
        max_deviation,
        multiplicities_match,
        level_counts_match,
        tolerance: tol,
        pass,
    })
}
