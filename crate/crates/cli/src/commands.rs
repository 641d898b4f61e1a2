use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use num_rational::BigRational;

use pvote_core::analytic::compare_and_crossover;
use pvote_core::exact::{parse_probability, to_decimal_string, to_f64};
use pvote_core::sim::{run_sweep, SimConfig, DEFAULT_PE_GRID};
use pvote_core::voter::{
    default_names, emit_minterm_sop, emit_threshold_sop, error_profile, render_cost_table,
    render_decision_table, render_generic_table, synthesize_majority, synthesize_probabilistic,
    ErrorProfile, TiePolicy,
};

use crate::args::{
    AnalyticArgs, Command, GridArgs, PlotArgs, SimulateArgs, SourceArgs, SynthArgs, TieArg,
    VoterArgs, VoterKind,
};
use crate::report::{self, RunManifest, MAJORITY_LABEL, PROB_LABEL};
use crate::source::{self, Resolved};
use crate::{plot, CliError};

pub(crate) fn dispatch(
    command: Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Profile(args) => profile(&args, out),
        Command::Synth(args) => synth(&args, out),
        Command::Simulate(args) => simulate(&args, out, err),
        Command::Analytic(args) => analytic(&args, out, err),
        Command::Plot(args) => plot_cmd(&args, out),
    }
}

fn profile_line(p: &ErrorProfile) -> String {
    format!(
        "N0={} N1={} E0={} E1={}",
        p.n0(),
        p.n1(),
        p.e0_display(),
        p.e1_display()
    )
}

fn profile(args: &SourceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let Resolved { table, .. } = source::resolve(args)?;
    writeln!(out, "{}", profile_line(&error_profile(&table)))?;
    Ok(())
}

fn tie_policy(args: &VoterArgs) -> Option<TiePolicy> {
    args.tie_policy.map(|t| match t {
        TieArg::Zero => TiePolicy::Zero,
        TieArg::One => TiePolicy::One,
    })
}

fn tie_name(args: &VoterArgs) -> Option<String> {
    args.tie_policy.map(|t| match t {
        TieArg::Zero => "0".to_owned(),
        TieArg::One => "1".to_owned(),
    })
}

fn voter_error(e: impl std::fmt::Display) -> CliError {
    CliError::usage(e.to_string())
}

fn synth(args: &SynthArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let Resolved { table, .. } = source::resolve(&args.source)?;
    let profile = error_profile(&table);
    let k = args.voter.replicas;
    let (voter, kind) = match args.kind {
        VoterKind::Prob => (
            synthesize_probabilistic(&profile, k).map_err(voter_error)?,
            "probabilistic",
        ),
        VoterKind::Majority => (
            synthesize_majority(k, tie_policy(&args.voter)).map_err(voter_error)?,
            "majority",
        ),
    };
    let names = default_names(k);
    let minterms = emit_minterm_sop(&voter, &names).map_err(voter_error)?;
    let (threshold_sop, metrics) = emit_threshold_sop(&voter, &names).map_err(voter_error)?;

    writeln!(
        out,
        "function: n={} {}",
        table.arity(),
        profile_line(&profile)
    )?;
    writeln!(out, "voter: {kind} k={k} t={}", voter.threshold())?;
    writeln!(out)?;
    match args.kind {
        VoterKind::Prob => write!(out, "{}", render_cost_table(&profile, &voter))?,
        VoterKind::Majority => write!(out, "{}", render_decision_table(&voter))?,
    }
    writeln!(out)?;
    writeln!(out, "minterm SOP: {minterms}")?;
    writeln!(out, "threshold SOP: {threshold_sop}")?;
    writeln!(
        out,
        "complexity: terms={} literals={}",
        metrics.terms, metrics.literals
    )?;
    if args.dump_generic {
        writeln!(out)?;
        writeln!(out, "generic table (k={k}):")?;
        write!(out, "{}", render_generic_table(k))?;
    }
    Ok(())
}

struct Grid {
    text: Vec<String>,
    exact: Vec<BigRational>,
}

fn grid(args: &GridArgs) -> Result<Grid, CliError> {
    let text: Vec<String> = if args.pe.is_empty() {
        DEFAULT_PE_GRID.iter().map(|s| s.to_string()).collect()
    } else {
        args.pe.iter().map(|s| s.trim().to_owned()).collect()
    };
    let exact = text
        .iter()
        .map(|s| parse_probability(s).map_err(|e| CliError::usage(format!("--pe: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    Ok(Grid { text, exact })
}

fn emit(
    path: Option<&Path>,
    body: &str,
    manifest: RunManifest,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        None => out.write_all(body.as_bytes())?,
        Some(path) => {
            std::fs::write(path, body)?;
            std::fs::write(report::manifest_path(path), manifest.to_json())?;
        }
    }
    Ok(())
}

fn sweep_manifest(
    command: &str,
    resolved: &Resolved,
    voter: &VoterArgs,
    grid: &Grid,
    trials: u64,
    out: Option<&Path>,
) -> RunManifest {
    let mut m = RunManifest::new(command);
    m.source = Some(resolved.source.clone());
    m.function = Some(resolved.table.to_tt_string());
    m.replicas = Some(voter.replicas);
    m.tie_policy = tie_name(voter);
    m.pe = grid.text.clone();
    m.trials = Some(trials);
    m.outputs = out.map(|p| p.display().to_string()).into_iter().collect();
    m
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let resolved = source::resolve(&args.source)?;
    let grid = grid(&args.grid)?;
    let k = args.voter.replicas;
    let profile = error_profile(&resolved.table);
    let majority = synthesize_majority(k, tie_policy(&args.voter)).map_err(voter_error)?;
    let prob = synthesize_probabilistic(&profile, k).map_err(voter_error)?;
    let config = SimConfig::new(
        resolved.table.clone(),
        k,
        vec![
            (MAJORITY_LABEL.to_owned(), majority),
            (PROB_LABEL.to_owned(), prob),
        ],
        grid.exact.iter().map(to_f64).collect(),
        args.grid.trials,
        args.seed,
    )
    .map_err(voter_error)?;
    let records = run_sweep(&config);
    let csv = report::write_csv(&report::simulation_rows(&grid.exact, &records))
        .map_err(|e| CliError::usage(e.to_string()))?;

    let out_path = args.grid.out.as_deref();
    let mut manifest = sweep_manifest(
        "simulate",
        &resolved,
        &args.voter,
        &grid,
        args.grid.trials,
        out_path,
    );
    manifest.seed = Some(format!("{:#x}", args.seed));
    emit(out_path, &csv, manifest, out)?;
    if let Some(path) = out_path {
        writeln!(err, "wrote {} rows to {}", records.len(), path.display())?;
    }
    Ok(())
}

fn crossover_report(comparison: &pvote_core::analytic::Comparison) -> String {
    let mut s = String::new();
    if comparison.crossovers.is_empty() {
        let sign = comparison
            .points
            .iter()
            .map(|p| p.advantage_sign())
            .find(|&s| s != 0);
        let _ = writeln!(
            s,
            "no crossover on grid ({})",
            match sign {
                Some(1) => "probabilistic voter ahead wherever the curves differ",
                Some(_) => "majority voter ahead wherever the curves differ",
                None => "curves identical",
            }
        );
    }
    for c in &comparison.crossovers {
        let ahead = if c.sign_after > 0 {
            "probabilistic"
        } else {
            "majority"
        };
        let _ = writeln!(
            s,
            "crossover in ({}, {}): {ahead} voter ahead above",
            to_decimal_string(&c.lo),
            to_decimal_string(&c.hi)
        );
    }
    s
}

fn analytic(args: &AnalyticArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let resolved = source::resolve(&args.source)?;
    let grid = grid(&args.grid)?;
    let profile = error_profile(&resolved.table);
    let comparison = compare_and_crossover(
        &profile,
        args.voter.replicas,
        &grid.exact,
        tie_policy(&args.voter),
    )
    .map_err(voter_error)?;
    let csv = report::write_csv(&report::analytic_rows(&comparison, args.grid.trials))
        .map_err(|e| CliError::usage(e.to_string()))?;

    let out_path = args.grid.out.as_deref();
    let manifest = sweep_manifest(
        "analytic",
        &resolved,
        &args.voter,
        &grid,
        args.grid.trials,
        out_path,
    );
    emit(out_path, &csv, manifest, out)?;
    let summary = crossover_report(&comparison);
    match out_path {
        Some(_) => out.write_all(summary.as_bytes())?,
        None => err.write_all(summary.as_bytes())?,
    }
    Ok(())
}

fn plot_cmd(args: &PlotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let bytes = std::fs::read(&args.csv)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.csv.display())))?;
    let rows = report::read_csv(&bytes)
        .map_err(|e| CliError::parse(format!("{}: {e}", args.csv.display())))?;

    let data_path = args.out.with_extension("dat");
    let image_path = args.out.with_extension("png");
    if data_path == args.out {
        return Err(CliError::usage("--out must not end in .dat"));
    }
    let file_name = |p: &Path| {
        p.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let script = plot::script(
        &rows,
        &file_name(&data_path),
        &file_name(&image_path),
        &file_name(&args.csv),
    );
    std::fs::write(&data_path, plot::data_file(&rows))?;
    std::fs::write(&args.out, &script)?;

    let mut manifest = RunManifest::new("plot");
    manifest.input = Some(args.csv.display().to_string());
    manifest.pe = rows.iter().map(|r| r.text[0].clone()).collect();
    manifest.outputs = vec![
        args.out.display().to_string(),
        data_path.display().to_string(),
    ];
    std::fs::write(report::manifest_path(&args.out), manifest.to_json())?;
    writeln!(
        out,
        "wrote {} and {}",
        args.out.display(),
        data_path.display()
    )?;
    Ok(())
}
