//! Human-readable summary on stderr.

use std::time::Duration;

use crate::report::{Report, Verdict};

pub fn print(report: &Report, wall: Duration) {
    let status = |v: Verdict| if v.passed() { "pass" } else { "FAIL" };
    eprintln!("spintree {} — {}", report.command, report.config);
    if let Some(preset) = &report.preset {
        eprintln!("  preset   {preset}");
    }
    eprintln!("  tree     {}", report.tree);
    if let Some(tree2) = &report.tree2 {
        eprintln!("  tree2    {tree2}");
    }
    eprintln!("  spins    [{}]", report.spins.join(", "));
    if report.tolerance > 0.0 {
        eprintln!("  tol      {:.1e}", report.tolerance);
    }
    if let Some(seed) = report.seed {
        eprintln!("  seed     {seed:#x}");
    }

    if !report.checks.is_empty() {
        let worst = report
            .checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max);
        let failed = report.checks.iter().filter(|c| !c.status.passed()).count();
        eprintln!(
            "  checks   {} run, {} failed, worst deviation {:.2e}",
            report.checks.len(),
            failed,
            worst
        );
        for check in report.checks.iter().filter(|c| !c.status.passed()) {
            eprintln!("    FAIL {} ({:.2e})", check.name, check.max_deviation);
        }
    }

    if let Some(spectrum) = &report.spectrum {
        eprintln!("  spectrum {} levels", spectrum.numeric.len());
        for level in &spectrum.numeric {
            eprintln!("    E = {:>12.6}  x{}", level.energy, level.multiplicity);
        }
        if let Some(cmp) = &spectrum.comparison {
            eprintln!(
                "  compare  {} (max energy deviation {:.2e})",
                status(cmp.status),
                cmp.max_energy_deviation
            );
        }
    }

    if let Some(rewrite) = &report.rewrite {
        eprintln!(
            "  rewrite  {} moves, replay {}",
            rewrite.moves.len(),
            if rewrite.replay_ok {
                "exact"
            } else {
                "MISMATCH"
            }
        );
        for m in &rewrite.moves {
            eprintln!("    {}@{}", m.kind, m.node);
        }
    }

    if let Some(two) = &report.two_tree {
        eprintln!("  common   {}", two.common_nodes.join(" "));
        let worst = two
            .lift_equality
            .iter()
            .map(|r| r.deviation)
            .fold(0.0, f64::max);
        eprintln!(
            "  lifts    {} node/element equalities, worst deviation {:.2e}",
            two.lift_equality.len(),
            worst
        );
        if let Some(in_common) = two.hamiltonian_in_common_algebra {
            eprintln!(
                "  H        {} the common-node algebra",
                if in_common { "inside" } else { "OUTSIDE" }
            );
        }
    }

    eprintln!("  verdict  {}  ({wall:.2?})", status(report.verdict));
}
