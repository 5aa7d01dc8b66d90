//! The end-to-end run: geometry, automata, brute force, crosscheck, net
//! certificate, artifacts.

use crate::artifacts::{write_automaton, write_json_value, write_text};
use crate::config::RunConfig;
use cosetnet_core::error::Result;
use cosetnet_core::net::pipeline::run_analysis;

/// Returns the process exit code: 0 when every certified check passed,
/// 1 otherwise.
pub fn run(config: &RunConfig) -> Result<i32> {
    let analysis = config.to_analysis_config()?;
    let outcome = run_analysis(&analysis)?;
    let report = &outcome.report;

    let dir = config.artifact_dir();
    write_json_value(&dir, "report.json", report)?;
    write_text(&dir, "defect.csv", &report.defect_csv())?;
    write_text(&dir, "config.txt", &config.to_canonical_text())?;
    write_json_value(
        &dir,
        "ball.json",
        &outcome.ball.to_json(&report.family),
    )?;
    if let Some(lambda) = &outcome.lambda {
        write_automaton(&dir, "lambda", lambda)?;
    }
    if let Some(lambda_h) = &outcome.lambda_h {
        write_automaton(&dir, "lambda_h", lambda_h)?;
    }
    if let Some(s) = &outcome.s_language {
        write_automaton(&dir, &format!("S_c1_{}", s.c1), &s.automaton)?;
    }
    if let Some(tower) = &outcome.tower {
        for (n, level) in tower.levels.iter().enumerate() {
            write_automaton(&dir, &format!("Ln_{n}"), level)?;
        }
    }

    println!("family            {}", report.family);
    println!("subgroup          <{}>", report.subgroup);
    println!("radius            {}", report.radius);
    println!(
        "delta             thin {} / four-point {}",
        report.delta_thin, report.delta_four_point
    );
    println!("quasiconvexity K  {}", report.quasiconvexity_k);
    println!(
        "C1                {} (formula {})",
        report.c1_used, report.c1_formula
    );
    println!("cone types        {}", report.cone_type_count);
    println!(
        "cosets / S        {} / {}",
        report.coset_count, report.s_size
    );
    match (report.net_defect, report.net_margin) {
        (Some(d), Some(m)) => println!(
            "net defect        {d} (margin {m}{})",
            if report.net_stabilized {
                ""
            } else {
                ", NOT-A-NET: defect did not stabilize"
            }
        ),
        _ => println!("net defect        unmeasured"),
    }
    match report.oracle_agreement {
        Some(true) => println!("oracle crosscheck agree"),
        Some(false) => println!(
            "oracle crosscheck DISAGREE at {}",
            report.first_discrepancy.as_deref().unwrap_or("?")
        ),
        None => println!(
            "oracle crosscheck skipped ({})",
            report
                .automaton_error
                .as_deref()
                .unwrap_or("automaton unavailable")
        ),
    }
    if let Some(d) = report.completion_distance {
        println!(
            "completion        {d} (<= {} states)",
            report.s_acceptor_states.unwrap_or(0)
        );
    }
    println!("artifacts         {}", dir.display());

    let ok = report.certified_ok();
    if !ok {
        println!("FAILED certified checks");
    }
    Ok(if ok { 0 } else { 1 })
}
