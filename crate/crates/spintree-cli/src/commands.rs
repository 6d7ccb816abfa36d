//! The four pipelines behind the subcommands.

use spintree_core::model::{
    build_hamiltonian, commuting_family, compare_spectra, numeric_levels, verify_commuting,
    CommutationReport, ElementKind, HamiltonianSpec,
};
use spintree_core::predict::predict_spectrum;
use spintree_core::superint::{
    check_common_node_lifts, cross_commutation, element_pool, verify_extended_commutation, TreePair,
};

use crate::config::ModelConfig;
use crate::error::CliError;
use crate::report::{
    Check, ComparisonSection, EqualityRecord, Level, MoveRecord, Report, RewriteSection,
    SpectrumSection, TwoTreeSection, Verdict,
};

fn base_report(command: &str, config_path: &str, model: &ModelConfig, tolerance: f64) -> Report {
    Report {
        command: command.to_string(),
        config: config_path.to_string(),
        preset: model.preset.clone(),
        tree: model.tree.to_expression(),
        tree2: model.tree2.as_ref().map(|t| t.to_expression()),
        spins: model.spins.spins().iter().map(|s| s.to_string()).collect(),
        seed: None,
        tolerance,
        checks: Vec::new(),
        spectrum: None,
        rewrite: None,
        two_tree: None,
        verdict: Verdict::Fail,
    }
}

fn commutation_checks(rep: &CommutationReport) -> Vec<Check> {
    rep.pairs
        .iter()
        .map(|p| Check {
            name: format!("[{}, {}]", p.left, p.right),
            status: Verdict::from_bool(p.norm <= rep.tolerance),
            max_deviation: p.norm,
        })
        .collect()
}

/// Family (plus optional Hamiltonian) pairwise commutation.
pub fn cmd_verify(
    model: &ModelConfig,
    config_path: &str,
    tol: Option<f64>,
) -> Result<Report, CliError> {
    let tolerance = tol.unwrap_or(model.tolerances.commute);
    let family = commuting_family(&model.tree, &model.spins).map_err(CliError::from_core)?;

    let hamiltonian;
    let mut ops = family.labelled();
    if !model.terms.is_empty() {
        let spec =
            HamiltonianSpec::new(model.tree.clone(), model.spins.clone(), model.terms.clone())
                .map_err(CliError::from_core)?;
        hamiltonian = build_hamiltonian(&spec).map_err(CliError::from_core)?;
        ops.push(("hamiltonian".to_string(), &hamiltonian));
    }
    let rep = verify_commuting(&ops, tolerance).map_err(CliError::from_core)?;

    let mut report = base_report("verify", config_path, model, tolerance);
    report.checks = commutation_checks(&rep);
    report.verdict = Verdict::from_bool(rep.pass);
    Ok(report)
}

/// Diagonalization, optional coupling-scheme prediction, optional match.
pub fn cmd_spectrum(
    model: &ModelConfig,
    config_path: &str,
    predict: bool,
    compare: bool,
    tol: Option<f64>,
) -> Result<Report, CliError> {
    let tolerance = tol.unwrap_or(model.tolerances.spectrum);
    let spec = HamiltonianSpec::new(model.tree.clone(), model.spins.clone(), model.terms.clone())
        .map_err(CliError::from_core)?;
    let h = build_hamiltonian(&spec).map_err(CliError::from_core)?;
    let numeric = numeric_levels(&h).map_err(CliError::from_core)?;

    let mut section = SpectrumSection {
        numeric: numeric
            .iter()
            .map(|&(energy, multiplicity)| Level {
                energy,
                multiplicity,
            })
            .collect(),
        predicted: None,
        comparison: None,
    };
    let mut pass = true;
    if predict || compare {
        let prediction = predict_spectrum(&spec).map_err(CliError::from_core)?;
        section.predicted = Some(
            prediction
                .levels
                .iter()
                .map(|&(energy, multiplicity)| Level {
                    energy,
                    multiplicity,
                })
                .collect(),
        );
        if compare {
            let cmp = compare_spectra(&numeric, &prediction.levels, tolerance)
                .map_err(CliError::from_core)?;
            pass = cmp.pass;
            section.comparison = Some(ComparisonSection {
                level_counts_match: cmp.level_counts_match,
                multiplicities_match: cmp.multiplicities_match,
                max_energy_deviation: cmp.max_deviation,
                status: Verdict::from_bool(cmp.pass),
            });
        }
    }

    let mut report = base_report("spectrum", config_path, model, tolerance);
    report.spectrum = Some(section);
    report.verdict = Verdict::from_bool(pass);
    Ok(report)
}

/// Exchange/flop sequence between the two configured trees, with replay.
pub fn cmd_rewrite(model: &ModelConfig, config_path: &str) -> Result<Report, CliError> {
    let target = model
        .tree2
        .as_ref()
        .ok_or_else(|| CliError::Config("rewrite needs a `tree2`".into()))?;
    let moves = model
        .tree
        .rewrite_sequence_to(target)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let replayed = model
        .tree
        .apply_moves(&moves)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let replay_ok = &replayed == target;

    let mut report = base_report("rewrite", config_path, model, 0.0);
    report.rewrite = Some(RewriteSection {
        moves: moves
            .iter()
            .map(|m| MoveRecord {
                kind: m.kind.to_string(),
                node: m.node.to_string(),
            })
            .collect(),
        replay_ok,
    });
    report.verdict = Verdict::from_bool(replay_ok);
    Ok(report)
}

/// Common-node table, lift-equality report, and the extended commutation
/// verdict for the configured Hamiltonian.
pub fn cmd_super(
    model: &ModelConfig,
    config_path: &str,
    tol: Option<f64>,
    seed: u64,
) -> Result<Report, CliError> {
    let tolerance = tol.unwrap_or(model.tolerances.equality);
    let right = model
        .tree2
        .as_ref()
        .ok_or_else(|| CliError::Config("super needs a `tree2`".into()))?;
    let pair = TreePair::new(model.tree.clone(), right.clone(), model.spins.clone())
        .map_err(CliError::from_core)?;

    let pool = element_pool(seed, 10, 2);
    let lift_eq = check_common_node_lifts(&pair, &pool, tolerance).map_err(CliError::from_core)?;

    let mut section = TwoTreeSection {
        common_nodes: pair.common.iter().map(|n| n.to_string()).collect(),
        lift_equality: lift_eq
            .rows
            .iter()
            .map(|r| EqualityRecord {
                element: r.element.clone(),
                node: r.node.clone().unwrap_or_default(),
                deviation: r.deviation,
            })
            .collect(),
        hamiltonian_in_common_algebra: None,
    };

    let mut pass = lift_eq.pass;
    let mut checks = Vec::new();
    if !model.terms.is_empty() {
        // Terms generated by the common nodes go through the strict
        // checker; anything else is measured anyway and flagged.
        let common_internal = pair.common_internal();
        let root = pair.left.root_ref();
        let in_common = model.terms.iter().all(|t| match t.kind {
            ElementKind::Casimir => common_internal.contains(&t.node),
            ElementKind::X3 => t.node == root,
        });
        let comm = if in_common {
            verify_extended_commutation(&pair, &model.terms, tolerance)
                .map_err(CliError::from_core)?
        } else {
            let spec =
                HamiltonianSpec::new(pair.left.clone(), pair.config.clone(), model.terms.clone())
                    .map_err(CliError::from_core)?;
            let h = build_hamiltonian(&spec).map_err(CliError::from_core)?;
            cross_commutation(&pair, &h, "hamiltonian", tolerance).map_err(CliError::from_core)?
        };
        section.hamiltonian_in_common_algebra = Some(in_common);
        checks = commutation_checks(&comm);
        pass = pass && comm.pass;
    }

    let mut report = base_report("super", config_path, model, tolerance);
    report.seed = Some(seed);
    report.checks = checks;
    report.two_tree = Some(section);
    report.verdict = Verdict::from_bool(pass);
    Ok(report)
}
