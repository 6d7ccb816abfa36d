//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spintree_core::algebra::AlgebraElement;
use spintree_core::eig::spectrum;
use spintree_core::matrix::{commutator, max_abs, max_abs_diff};
use spintree_core::model::{
    build_hamiltonian, commuting_family, compare_spectra, exchange_sum, gaudin_spec,
    numeric_levels, octahedron_edges, octahedron_spec, octahedron_tree, verify_commuting,
    ElementKind, HamiltonianSpec, HamiltonianTerm,
};
use spintree_core::predict::predict_spectrum;
use spintree_core::spin::{represent, Spin, SpinConfig};
use spintree_core::superint::{
    check_coassociative, check_cocommutative, check_common_node_lifts, cross_commutation,
    element_pool, random_element, verify_extended_commutation, TreePair, DEFAULT_POOL_SEED,
};
use spintree_core::tensor::lift;
use spintree_core::tensor::lift_at_node;
use spintree_core::tree::{enumerate_coupling_trees, random_coupling_tree, CouplingTree, NodeRef};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn family_commutation_max(cfg: &SpinConfig) -> (usize, f64) {
    let family = commuting_family(&octahedron_tree(), cfg).unwrap();
    let report = verify_commuting(&family.labelled(), 1e-12).unwrap();
    (report.pairs.len(), report.max_norm)
}

#[test]
fn criterion_1_family_commutation() {
    let start = Instant::now();
    let cfg = SpinConfig::uniform(Spin::HALF, 6).unwrap();
    let (pairs, max_norm) = family_commutation_max(&cfg);
    let elapsed = start.elapsed();
    let pass = pairs == 15 && max_norm <= 1e-12 && elapsed.as_secs_f64() < 5.0;
    report(
        "1 (pairwise commutation, six spin-1/2)",
        pass,
        &format!("{pairs} pairs, max norm {max_norm:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_octahedron_edge_sum_identity() {
    let spec = octahedron_spec(1.0, Spin::HALF).unwrap();
    let h_tree = build_hamiltonian(&spec).unwrap();
    let h_edges = exchange_sum(&spec.config, &octahedron_edges(), 2.0).unwrap();
    let dev = max_abs_diff(&h_tree, &h_edges).unwrap();
    report(
        "2 (octahedron equals 12-edge exchange sum)",
        dev <= 1e-12,
        &format!("max entry deviation {dev:.2e}"),
    );
}

#[test]
fn criterion_3_spectrum_cross_check() {
    // Octahedron, J = 1, s = 1/2.
    let spec = octahedron_spec(1.0, Spin::HALF).unwrap();
    let h = build_hamiltonian(&spec).unwrap();
    let numeric = numeric_levels(&h).unwrap();
    let predicted = predict_spectrum(&spec).unwrap();
    let cmp = compare_spectra(&numeric, &predicted.levels, 1e-9).unwrap();
    let total: usize = numeric.iter().map(|(_, m)| m).sum();
    let vals = spectrum(&h).unwrap();
    let extremes_ok =
        (vals.first().unwrap() + 6.0).abs() <= 1e-9 && (vals.last().unwrap() - 6.0).abs() <= 1e-9;
    let oct_pass = cmp.pass && total == 64 && extremes_ok;
    report(
        "3a (octahedron spectrum matches coupling prediction)",
        oct_pass,
        &format!(
            "64 states in {} levels, max energy deviation {:.2e}, extremes +-6 {}",
            numeric.len(),
            cmp.max_deviation,
            if extremes_ok { "present" } else { "missing" }
        ),
    );

    // Gaudin preset, A = 1, J = 1/2.
    let spec = gaudin_spec(1.0, 0.5, Spin::HALF).unwrap();
    let h = build_hamiltonian(&spec).unwrap();
    let numeric = numeric_levels(&h).unwrap();
    let predicted = predict_spectrum(&spec).unwrap();
    let cmp = compare_spectra(&numeric, &predicted.levels, 1e-9).unwrap();
    report(
        "3b (Gaudin spectrum matches coupling prediction)",
        cmp.pass,
        &format!(
            "{} levels, max energy deviation {:.2e}",
            numeric.len(),
            cmp.max_deviation
        ),
    );
}

#[test]
fn criterion_4_lift_is_algebra_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_POOL_SEED);
    let pairs: Vec<(AlgebraElement, AlgebraElement)> = (0..10)
        .map(|_| (random_element(&mut rng, 2), random_element(&mut rng, 2)))
        .collect();
    let mut worst = 0.0f64;
    let mut checks = 0usize;
    for leaves in 1..=3 {
        let cfg = SpinConfig::uniform(Spin::HALF, leaves).unwrap();
        for tree in enumerate_coupling_trees(leaves) {
            for (a, b) in &pairs {
                let ra = represent(&lift(&tree, a).unwrap(), &cfg).unwrap();
                let rb = represent(&lift(&tree, b).unwrap(), &cfg).unwrap();

                let product = represent(&lift(&tree, &a.multiply(b)).unwrap(), &cfg).unwrap();
                worst = worst.max(max_abs_diff(&product, &ra.dot(&rb)).unwrap());

                let bracket = represent(&lift(&tree, &a.bracket(b)).unwrap(), &cfg).unwrap();
                worst = worst.max(max_abs_diff(&bracket, &commutator(&ra, &rb).unwrap()).unwrap());
                checks += 2;
            }
        }
    }
    report(
        "4 (lift preserves products and brackets)",
        worst <= 1e-10,
        &format!("{checks} morphism checks, worst deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_5_disjoint_nodes_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_POOL_SEED);
    let mut worst = 0.0f64;
    let mut done = 0usize;
    while done < 20 {
        let leaves = rng.gen_range(4..=6);
        let tree = random_coupling_tree(&mut rng, leaves);
        let nodes = tree.node_refs();
        let disjoint: Vec<(NodeRef, NodeRef)> = nodes
            .iter()
            .flat_map(|n| {
                nodes
                    .iter()
                    .filter(move |m| n < m && n.is_disjoint(m))
                    .map(move |m| (n.clone(), m.clone()))
            })
            .collect();
        let (n, m) = disjoint[rng.gen_range(0..disjoint.len())].clone();
        let x = random_element(&mut rng, 2);
        let y = random_element(&mut rng, 2);
        let cfg = SpinConfig::uniform(Spin::HALF, leaves).unwrap();
        let a = represent(&lift_at_node(&tree, &n, &x).unwrap(), &cfg).unwrap();
        let b = represent(&lift_at_node(&tree, &m, &y).unwrap(), &cfg).unwrap();
        worst = worst.max(max_abs(&commutator(&a, &b).unwrap()));
        done += 1;
    }
    report(
        "5 (disjoint-node lifts commute)",
        worst <= 1e-12,
        &format!("20 random disjoint pairs, worst commutator norm {worst:.2e}"),
    );
}

#[test]
fn criterion_6_node_count_and_rewrite_calculus() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_POOL_SEED);

    // N = 2L - 1 on 200 random trees.
    let mut count_ok = true;
    for _ in 0..200 {
        let leaves = rng.gen_range(1..=10);
        let tree = random_coupling_tree(&mut rng, leaves);
        count_ok &= tree.node_count() == 2 * tree.leaf_count() - 1;
    }

    // Exhaustive replay over all coupling-tree pairs with L <= 4.
    let mut replayed = 0usize;
    let mut replay_ok = true;
    for leaves in 1..=4 {
        let all = enumerate_coupling_trees(leaves);
        for a in &all {
            for b in &all {
                let seq = a.rewrite_sequence_to(b).unwrap();
                replay_ok &= &a.apply_moves(&seq).unwrap() == b;
                replayed += 1;
            }
        }
    }

    // 200 random pairs with L <= 8.
    for _ in 0..200 {
        let leaves = rng.gen_range(2..=8);
        let a = random_coupling_tree(&mut rng, leaves);
        let b = random_coupling_tree(&mut rng, leaves);
        let seq = a.rewrite_sequence_to(&b).unwrap();
        replay_ok &= a.apply_moves(&seq).unwrap() == b;
        replayed += 1;
    }

    let elapsed = start.elapsed();
    let pass = count_ok && replay_ok && elapsed.as_secs_f64() < 10.0;
    report(
        "6 (node-count law and rewrite replay)",
        pass,
        &format!("{replayed} sequences replayed exactly, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_7_two_tree_machinery() {
    // Co-commutativity and co-associativity of the primitive coproduct.
    let cocomm = check_cocommutative(
        &SpinConfig::uniform(Spin::HALF, 2).unwrap(),
        DEFAULT_POOL_SEED,
        1e-12,
    )
    .unwrap();
    let coassoc = check_coassociative(
        &SpinConfig::uniform(Spin::HALF, 3).unwrap(),
        DEFAULT_POOL_SEED,
        1e-12,
    )
    .unwrap();

    // Lift equality on common nodes, exhaustively over all same-leaf-set
    // pairs with L <= 4 (unordered, including each tree against itself).
    let elements = element_pool(DEFAULT_POOL_SEED, 0, 2);
    let mut equality_pairs = 0usize;
    let mut equality_worst = 0.0f64;
    for leaves in 1..=4 {
        let cfg = SpinConfig::uniform(Spin::HALF, leaves).unwrap();
        let all = enumerate_coupling_trees(leaves);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i..] {
                let pair = TreePair::new(a.clone(), b.clone(), cfg.clone()).unwrap();
                let rep = check_common_node_lifts(&pair, &elements, 1e-12).unwrap();
                equality_worst = equality_worst.max(rep.max_deviation);
                equality_pairs += 1;
            }
        }
    }

    // Extended commutation on the comb pair (L = 4) and the mirror pair (L = 6).
    let comb_pair = TreePair::new(
        CouplingTree::parse("(((1 2) 3) 4)").unwrap(),
        CouplingTree::parse("(1 (2 (3 4)))").unwrap(),
        SpinConfig::uniform(Spin::HALF, 4).unwrap(),
    )
    .unwrap();
    let comb = verify_extended_commutation(
        &comb_pair,
        &[HamiltonianTerm {
            node: comb_pair.left.root_ref(),
            kind: ElementKind::X3,
            coeff: 1.0,
        }],
        1e-12,
    )
    .unwrap();

    let mirror_pair = TreePair::new(
        octahedron_tree(),
        CouplingTree::parse("(((3 4)(5 6))(1 2))").unwrap(),
        SpinConfig::uniform(Spin::HALF, 6).unwrap(),
    )
    .unwrap();
    let mirror = verify_extended_commutation(
        &mirror_pair,
        &[HamiltonianTerm {
            node: NodeRef::from_labels([1, 2]),
            kind: ElementKind::Casimir,
            coeff: 1.0,
        }],
        1e-12,
    )
    .unwrap();

    // Negative control: a Casimir at a node of only one tree must fail.
    let bad_spec = HamiltonianSpec::new(
        comb_pair.left.clone(),
        comb_pair.config.clone(),
        vec![HamiltonianTerm {
            node: NodeRef::from_labels([1, 2]),
            kind: ElementKind::Casimir,
            coeff: 1.0,
        }],
    )
    .unwrap();
    let h_bad = build_hamiltonian(&bad_spec).unwrap();
    let control = cross_commutation(&comb_pair, &h_bad, "c@{1,2}", 1e-12).unwrap();

    let pass = cocomm.pass
        && coassoc.pass
        && equality_worst <= 1e-12
        && comb.pass
        && mirror.pass
        && !control.pass
        && control.max_norm > 1e-6;
    report(
        "7 (co-commutativity, lift equality, extended commutation)",
        pass,
        &format!(
            "coproduct checks {:.2e}/{:.2e}, {equality_pairs} tree pairs worst {equality_worst:.2e}, \
             extended families {:.2e}/{:.2e}, negative control norm {:.2e}",
            cocomm.max_deviation,
            coassoc.max_deviation,
            comb.max_norm,
            mirror.max_norm,
            control.max_norm
        ),
    );
}

#[test]
fn criterion_8_mixed_spins() {
    let spins = vec![
        Spin::HALF,
        Spin::HALF,
        Spin::HALF,
        Spin::HALF,
        Spin::ONE,
        Spin::ONE,
    ];
    let cfg = SpinConfig::new(spins).unwrap();
    assert_eq!(cfg.dimension().unwrap(), 144);
    let (pairs, max_norm) = family_commutation_max(&cfg);
    report(
        "8 (pairwise commutation, mixed spins, D = 144)",
        pairs == 15 && max_norm <= 1e-12,
        &format!("{pairs} pairs, max norm {max_norm:.2e}"),
    );
}
