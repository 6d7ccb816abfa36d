//! Two-tree machinery: co-commutativity and co-associativity of the
//! coproduct, lift equality on common nodes, and the extended commutation
//! check between the families of two trees over the same leaves.
//!
//! All equality checks compare represented matrices on a pool of test
//! elements: the three generators, the Casimir, and seeded pseudo-random
//! low-degree elements with dyadic coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Monomial};
use crate::error::Error;
use crate::matrix::{commutator, max_abs, max_abs_diff, Operator};
use crate::model::{
    build_hamiltonian, commuting_family, CommutationReport, CommutingFamily, ElementKind,
    HamiltonianSpec, HamiltonianTerm, PairCommutator,
};
use crate::spin::{represent, SpinConfig};
use crate::tensor::lift_at_node;
use crate::tree::{CouplingTree, NodeRef};

/// Fixed seed for the reproducible test-element pool.
pub const DEFAULT_POOL_SEED: u64 = 0xB1A2;

/// Two trees over the same leaf labels, their common nodes, and the spins.
#[derive(Clone, Debug)]
pub struct TreePair {
    pub left: CouplingTree,
    pub right: CouplingTree,
    /// Leaf sets occurring as nodes of both trees (roots and leaves always).
    pub common: Vec<NodeRef>,
    pub config: SpinConfig,
}

impl TreePair {
    pub fn new(
        left: CouplingTree,
        right: CouplingTree,
        config: SpinConfig,
    ) -> Result<TreePair, Error> {
        if config.len() != left.leaf_count() {
            return Err(Error::WrongLeafCount {
                expected: left.leaf_count(),
                got: config.len(),
            });
        }
        let common = left.common_nodes(&right)?;
        Ok(TreePair {
            left,
            right,
            common,
            config,
        })
    }

    /// Common internal nodes (the Casimir generators of the shared algebra).
    pub fn common_internal(&self) -> Vec<NodeRef> {
        self.common
            .iter()
            .filter(|n| !n.is_leaf())
            .cloned()
            .collect()
    }
}

/// The families of both trees plus the labels generating their common part.
#[derive(Clone, Debug)]
pub struct GeneratorSets {
    pub left: CommutingFamily,
    pub right: CommutingFamily,
    /// `casimir@n` for every common internal node, plus `x3@root`.
    pub common_labels: Vec<String>,
}

pub fn generator_sets(pair: &TreePair) -> Result<GeneratorSets, Error> {
    let left = commuting_family(&pair.left, &pair.config)?;
    let right = commuting_family(&pair.right, &pair.config)?;
    let mut common_labels: Vec<String> = pair
        .common_internal()
        .iter()
        .map(|n| format!("{}@{n}", ElementKind::Casimir))
        .collect();
    common_labels.push(format!("{}@{}", ElementKind::X3, pair.left.root_ref()));
    Ok(GeneratorSets {
        left,
        right,
        common_labels,
    })
}

/// One matrix-equality measurement.
#[derive(Clone, Debug)]
pub struct EqualityRow {
    /// What was lifted.
    pub element: String,
    /// Where, when the check ranges over nodes.
    pub node: Option<String>,
    pub deviation: f64,
}

/// Outcome of a family of matrix-equality checks.
#[derive(Clone, Debug)]
pub struct EqualityReport {
    pub rows: Vec<EqualityRow>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl EqualityReport {
    fn from_rows(rows: Vec<EqualityRow>, tolerance: f64) -> EqualityReport {
        let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
        EqualityReport {
            rows,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }
}

/// Deterministic element pool: `X1, X2, X3, c`, then `extra` pseudo-random
/// elements of total degree at most `max_degree` with dyadic coefficients.
pub fn element_pool(seed: u64, extra: usize, max_degree: u32) -> Vec<(String, AlgebraElement)> {
    let mut pool: Vec<(String, AlgebraElement)> = (1..=3)
        .map(|i| (format!("X{i}"), AlgebraElement::generator(i)))
        .collect();
    pool.push(("c".to_string(), AlgebraElement::casimir()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..extra {
        pool.push((format!("rand{k}"), random_element(&mut rng, max_degree)));
    }
    pool
}

/// A random element: 2-4 monomials of bounded degree, coefficients `n/2^d`.
pub fn random_element<R: Rng>(rng: &mut R, max_degree: u32) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    let terms = rng.gen_range(2..=4);
    for _ in 0..terms {
        let mut exps = [0u32; 3];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.gen_range(0..3)] += 1;
        }
        let numerator = loop {
            let n = rng.gen_range(-16i32..=16);
            if n != 0 {
                break n;
            }
        };
        let denominator = f64::from(1u32 << rng.gen_range(0..=4));
        out = out.add(&AlgebraElement::monomial(
            Monomial(exps),
            num_complex::Complex64::new(f64::from(numerator) / denominator, 0.0),
        ));
    }
    out
}

fn compare_lifts(
    trees: [&CouplingTree; 2],
    cfg: &SpinConfig,
    elements: &[(String, AlgebraElement)],
    tol: f64,
) -> Result<EqualityReport, Error> {
    let mut rows = Vec::with_capacity(elements.len());
    for (name, el) in elements {
        let a = represent(&crate::tensor::lift(trees[0], el)?, cfg)?;
        let b = represent(&crate::tensor::lift(trees[1], el)?, cfg)?;
        rows.push(EqualityRow {
            element: name.clone(),
            node: None,
            deviation: max_abs_diff(&a, &b)?,
        });
    }
    Ok(EqualityReport::from_rows(rows, tol))
}

/// Compares the lifts over `(1 2)` and `(2 1)` on the element pool.
pub fn check_cocommutative(cfg: &SpinConfig, seed: u64, tol: f64) -> Result<EqualityReport, Error> {
    if cfg.len() != 2 {
        return Err(Error::WrongLeafCount {
            expected: 2,
            got: cfg.len(),
        });
    }
    let a = CouplingTree::parse("(1 2)").expect("valid");
    let b = CouplingTree::parse("(2 1)").expect("valid");
    let elements = element_pool(seed, 10, 2);
    compare_lifts([&a, &b], cfg, &elements, tol)
}

/// Compares the lifts over `((1 2) 3)` and `(1 (2 3))` on the element pool.
pub fn check_coassociative(cfg: &SpinConfig, seed: u64, tol: f64) -> Result<EqualityReport, Error> {
    if cfg.len() != 3 {
        return Err(Error::WrongLeafCount {
            expected: 3,
            got: cfg.len(),
        });
    }
    let a = CouplingTree::parse("((1 2) 3)").expect("valid");
    let b = CouplingTree::parse("(1 (2 3))").expect("valid");
    let elements = element_pool(seed, 10, 2);
    compare_lifts([&a, &b], cfg, &elements, tol)
}

/// Lift equality on every common node: for each shared leaf set the two
/// trees' node lifts must represent identically.
pub fn check_common_node_lifts(
    pair: &TreePair,
    elements: &[(String, AlgebraElement)],
    tol: f64,
) -> Result<EqualityReport, Error> {
    let mut rows = Vec::new();
    for node in &pair.common {
        for (name, el) in elements {
            let a = represent(&lift_at_node(&pair.left, node, el)?, &pair.config)?;
            let b = represent(&lift_at_node(&pair.right, node, el)?, &pair.config)?;
            rows.push(EqualityRow {
                element: name.clone(),
                node: Some(node.to_string()),
                deviation: max_abs_diff(&a, &b)?,
            });
        }
    }
    Ok(EqualityReport::from_rows(rows, tol))
}

/// Commutation of one operator against every member of both families.
///
/// Places no requirement on where `h` came from; deliberately usable as a
/// negative control with operators outside the common sub-algebra.
pub fn cross_commutation(
    pair: &TreePair,
    h: &Operator,
    h_label: &str,
    tol: f64,
) -> Result<CommutationReport, Error> {
    let sets = generator_sets(pair)?;
    let mut pairs = Vec::new();
    for (side, family) in [("left", &sets.left), ("right", &sets.right)] {
        for member in &family.members {
            let norm = max_abs(&commutator(h, &member.operator)?);
            pairs.push(PairCommutator {
                left: h_label.to_string(),
                right: format!("{side}:{}", member.label()),
                norm,
            });
        }
    }
    let max_norm = pairs.iter().map(|p| p.norm).fold(0.0, f64::max);
    Ok(CommutationReport {
        pairs,
        max_norm,
        tolerance: tol,
        pass: max_norm <= tol,
    })
}

/// Extended commutation: a Hamiltonian generated by the common-node
/// Casimirs (and the root `X3`) must commute with both full families.
///
/// Terms outside that generating set are rejected; use
/// [`cross_commutation`] to measure such operators anyway.
pub fn verify_extended_commutation(
    pair: &TreePair,
    terms: &[HamiltonianTerm],
    tol: f64,
) -> Result<CommutationReport, Error> {
    let common_internal = pair.common_internal();
    let root = pair.left.root_ref();
    for term in terms {
        let allowed = match term.kind {
            ElementKind::Casimir => common_internal.contains(&term.node),
            ElementKind::X3 => term.node == root,
        };
        if !allowed {
            return Err(Error::NotInCommonAlgebra(term.to_string()));
        }
    }
    let spec = HamiltonianSpec::new(pair.left.clone(), pair.config.clone(), terms.to_vec())?;
    let h = build_hamiltonian(&spec)?;
    cross_commutation(pair, &h, "hamiltonian", tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::Spin;

    fn nr(labels: &[u32]) -> NodeRef {
        NodeRef::from_labels(labels.iter().copied())
    }

    fn uniform(n: usize) -> SpinConfig {
        SpinConfig::uniform(Spin::HALF, n).unwrap()
    }

    #[test]
    fn primitive_coproduct_is_cocommutative() {
        let report = check_cocommutative(&uniform(2), DEFAULT_POOL_SEED, 1e-12).unwrap();
        assert!(report.pass, "max deviation {:e}", report.max_deviation);
        assert_eq!(report.rows.len(), 14);
    }

    #[test]
    fn primitive_coproduct_is_coassociative() {
        let report = check_coassociative(&uniform(3), DEFAULT_POOL_SEED, 1e-12).unwrap();
        assert!(report.pass, "max deviation {:e}", report.max_deviation);
    }

    #[test]
    fn leaf_count_preconditions() {
        assert!(check_cocommutative(&uniform(3), 1, 1e-12).is_err());
        assert!(check_coassociative(&uniform(2), 1, 1e-12).is_err());
    }

    #[test]
    fn casimir_lift_is_reassociation_invariant() {
        // c lifted over ((1 2) 3) and (1 (2 3)) agree as 8x8 matrices.
        let a = CouplingTree::parse("((1 2) 3)").unwrap();
        let b = CouplingTree::parse("(1 (2 3))").unwrap();
        let cfg = uniform(3);
        let ca = represent(
            &crate::tensor::lift(&a, &AlgebraElement::casimir()).unwrap(),
            &cfg,
        )
        .unwrap();
        let cb = represent(
            &crate::tensor::lift(&b, &AlgebraElement::casimir()).unwrap(),
            &cfg,
        )
        .unwrap();
        assert!(max_abs_diff(&ca, &cb).unwrap() <= 1e-13);
    }

    #[test]
    fn unit_lift_equality_is_exact() {
        let pair = TreePair::new(
            CouplingTree::parse("(1 2)").unwrap(),
            CouplingTree::parse("(2 1)").unwrap(),
            uniform(2),
        )
        .unwrap();
        let elements = vec![("e".to_string(), AlgebraElement::unit())];
        let report = check_common_node_lifts(&pair, &elements, 0.0).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_deviation, 0.0);
    }

    #[test]
    fn lift_equality_on_comb_pair() {
        let pair = TreePair::new(
            CouplingTree::parse("(((1 2) 3) 4)").unwrap(),
            CouplingTree::parse("(1 (2 (3 4)))").unwrap(),
            uniform(4),
        )
        .unwrap();
        // Only the root is a common internal node here.
        assert_eq!(pair.common_internal(), vec![nr(&[1, 2, 3, 4])]);
        let elements = element_pool(DEFAULT_POOL_SEED, 2, 2);
        let report = check_common_node_lifts(&pair, &elements, 1e-12).unwrap();
        assert!(report.pass, "max deviation {:e}", report.max_deviation);
    }

    #[test]
    fn lift_equality_identical_trees_all_nodes() {
        let t = CouplingTree::parse("((1 2)((3 4)(5 6)))").unwrap();
        let pair = TreePair::new(t.clone(), t.clone(), uniform(6)).unwrap();
        assert_eq!(pair.common.len(), t.node_count());
        let elements = element_pool(DEFAULT_POOL_SEED, 1, 2);
        let report = check_common_node_lifts(&pair, &elements, 1e-12).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn lift_equality_mirror_pair_common_internal_nodes() {
        let pair = TreePair::new(
            CouplingTree::parse("((1 2)((3 4)(5 6)))").unwrap(),
            CouplingTree::parse("(((3 4)(5 6))(1 2))").unwrap(),
            uniform(6),
        )
        .unwrap();
        assert_eq!(pair.common_internal().len(), 5);
        let elements = element_pool(DEFAULT_POOL_SEED, 0, 2);
        let report = check_common_node_lifts(&pair, &elements, 1e-12).unwrap();
        assert!(report.pass, "max deviation {:e}", report.max_deviation);
    }

    #[test]
    fn extended_commutation_root_x3_on_comb_pair() {
        let pair = TreePair::new(
            CouplingTree::parse("(((1 2) 3) 4)").unwrap(),
            CouplingTree::parse("(1 (2 (3 4)))").unwrap(),
            uniform(4),
        )
        .unwrap();
        let terms = vec![HamiltonianTerm {
            node: pair.left.root_ref(),
            kind: ElementKind::X3,
            coeff: 1.0,
        }];
        let report = verify_extended_commutation(&pair, &terms, 1e-12).unwrap();
        assert_eq!(report.pairs.len(), 8);
        assert!(report.pass, "max norm {:e}", report.max_norm);
    }

    #[test]
    fn extended_commutation_common_casimir_on_mirror_pair() {
        let pair = TreePair::new(
            CouplingTree::parse("((1 2)((3 4)(5 6)))").unwrap(),
            CouplingTree::parse("(((3 4)(5 6))(1 2))").unwrap(),
            uniform(6),
        )
        .unwrap();
        let terms = vec![HamiltonianTerm {
            node: nr(&[1, 2]),
            kind: ElementKind::Casimir,
            coeff: 1.0,
        }];
        let report = verify_extended_commutation(&pair, &terms, 1e-12).unwrap();
        assert!(report.pass, "max norm {:e}", report.max_norm);
    }

    #[test]
    fn extended_commutation_rejects_non_common_terms() {
        let pair = TreePair::new(
            CouplingTree::parse("(((1 2) 3) 4)").unwrap(),
            CouplingTree::parse("(1 (2 (3 4)))").unwrap(),
            uniform(4),
        )
        .unwrap();
        let terms = vec![HamiltonianTerm {
            node: nr(&[1, 2]),
            kind: ElementKind::Casimir,
            coeff: 1.0,
        }];
        assert!(matches!(
            verify_extended_commutation(&pair, &terms, 1e-12),
            Err(Error::NotInCommonAlgebra(_))
        ));
    }

    #[test]
    fn non_common_casimir_fails_cross_commutation() {
        // Negative control: c@{1,2} is a node of the left comb only, and
        // must fail against the right comb's family.
        let pair = TreePair::new(
            CouplingTree::parse("(((1 2) 3) 4)").unwrap(),
            CouplingTree::parse("(1 (2 (3 4)))").unwrap(),
            uniform(4),
        )
        .unwrap();
        let spec = HamiltonianSpec::new(
            pair.left.clone(),
            pair.config.clone(),
            vec![HamiltonianTerm {
                node: nr(&[1, 2]),
                kind: ElementKind::Casimir,
                coeff: 1.0,
            }],
        )
        .unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let report = cross_commutation(&pair, &h, "c@{1,2}", 1e-12).unwrap();
        assert!(!report.pass);
        assert!(report.max_norm > 1e-6, "expected a visible violation");
    }

    #[test]
    fn rewrite_invariance_of_lifts() {
        // Applying a rewrite sequence never changes the represented lift.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let leaves = rng.gen_range(2..=4);
            let a = crate::tree::random_coupling_tree(&mut rng, leaves);
            let b = crate::tree::random_coupling_tree(&mut rng, leaves);
            let cfg = uniform(leaves);
            let el = random_element(&mut rng, 2);
            let ra = represent(&crate::tensor::lift(&a, &el).unwrap(), &cfg).unwrap();
            let rb = represent(&crate::tensor::lift(&b, &el).unwrap(), &cfg).unwrap();
            assert!(max_abs_diff(&ra, &rb).unwrap() <= 1e-12);
        }
    }
}
