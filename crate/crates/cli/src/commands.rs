use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use homophily_core::edgelist::{write_edge_list, Provenance};
use homophily_core::figures::{fig1_dataset, FigureOptions, Panel};
use homophily_core::generate::{empirical_group_degrees, generate_with, GenSpec, GeneratorConfig};
use homophily_core::model::{critical_minority_size, ExpectedStats, ModelParams};
use homophily_core::sweep::{sweep as run_sweep, SweepGrid, SweepRow};
use homophily_core::table::{Cell, Record, Table};
use homophily_core::McConfig;

use crate::config::Resolved;
use crate::Failure;

type Flags = BTreeMap<&'static str, String>;
type FileConfig = BTreeMap<String, String>;

const DEFAULT_SEED: &str = "1";

#[derive(Clone, Copy)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn from_resolved(r: &Resolved) -> Result<Self, Failure> {
        match r.raw("format").unwrap_or("csv") {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Failure::validation(format!("--format must be csv or json, got {other:?}"))),
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn open_output(out: &str) -> Result<Box<dyn Write>, Failure> {
    if out == "-" {
        return Ok(Box::new(io::stdout().lock()));
    }
    let file = File::create(out).map_err(|e| Failure::io(format!("cannot create {out}: {e}")))?;
    Ok(Box::new(BufWriter::new(file)))
}

fn write_table(table: &Table, format: Format, out: &str) -> Result<(), Failure> {
    let writer = open_output(out)?;
    let result = match format {
        Format::Csv => table.write_csv(writer),
        Format::Json => table.write_json(writer),
    };
    result.map_err(|e| Failure::io(format!("cannot write {out}: {e}")))
}

fn resolve(
    command: &'static str,
    keys: &[&'static str],
    flags: &Flags,
    file: &FileConfig,
    defaults: &[(&'static str, &str)],
) -> Result<Resolved, Failure> {
    let resolved = Resolved::new(command, keys, flags, file, defaults)?;
    eprint!("{}", resolved.echo());
    Ok(resolved)
}

fn model_params(r: &Resolved) -> Result<ModelParams, Failure> {
    let params = ModelParams::new(r.required("n")?, r.required("f0")?, r.required("h00")?, r.required("h11")?)?;
    if !params.minority_is_smaller() {
        eprintln!(
            "warning: group 0 is not the smaller group (n0={}, n1={})",
            params.n_minority(),
            params.n_majority()
        );
    }
    Ok(params)
}

fn mc_config(r: &Resolved) -> Result<Option<McConfig>, Failure> {
    let replicates: usize = r.required("replicates")?;
    let seed: u64 = r.required("seed")?;
    Ok((replicates > 0).then(|| McConfig::new(replicates, seed)))
}

struct AnalyticRecord {
    params: ModelParams,
    stats: ExpectedStats,
}

impl Record for AnalyticRecord {
    const COLUMNS: &'static [&'static str] = &[
        "n_total",
        "n_minority",
        "n_majority",
        "f_minority",
        "h00",
        "h11",
        "e00",
        "e01",
        "e10",
        "e11",
        "k0_mean",
        "k1_mean",
        "gap",
        "gap_slope",
        "minority_is_smaller",
    ];

    fn cells(&self) -> Vec<Cell> {
        let (p, s) = (&self.params, &self.stats);
        vec![
            p.n_total().into(),
            p.n_minority().into(),
            p.n_majority().into(),
            p.f_minority().into(),
            p.h_intra_minority().into(),
            p.h_intra_majority().into(),
            s.e00.into(),
            s.e01.into(),
            s.e10.into(),
            s.e11.into(),
            s.k0_mean.into(),
            s.k1_mean.into(),
            s.gap.into(),
            s.gap_slope.into(),
            Cell::Int(p.minority_is_smaller() as u64),
        ]
    }
}

pub fn analytic(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let r = resolve(
        "analytic",
        &["n", "f0", "h00", "h11", "format", "out"],
        flags,
        file,
        &[("format", "csv"), ("out", "-")],
    )?;
    let format = Format::from_resolved(&r)?;
    let params = model_params(&r)?;
    let record = AnalyticRecord {
        params,
        stats: ExpectedStats::compute(&params),
    };
    write_table(&Table::from_records(&[record]), format, &r.required::<String>("out")?)
}

struct CriticalRecord {
    n_total: usize,
    f_star: f64,
}

impl Record for CriticalRecord {
    const COLUMNS: &'static [&'static str] = &["n_total", "f_star_analytic"];

    fn cells(&self) -> Vec<Cell> {
        vec![self.n_total.into(), self.f_star.into()]
    }
}

pub fn critical_size(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let r = resolve(
        "critical-size",
        &["n", "format", "out"],
        flags,
        file,
        &[("format", "csv"), ("out", "-")],
    )?;
    let format = Format::from_resolved(&r)?;
    let n: usize = r.required("n")?;
    if n < 2 {
        return Err(Failure::validation(format!("n out of range: {n} (expected n >= 2)")));
    }
    let record = CriticalRecord {
        n_total: n,
        f_star: critical_minority_size(n),
    };
    write_table(&Table::from_records(&[record]), format, &r.required::<String>("out")?)
}

pub fn generate(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let r = resolve(
        "generate",
        &["n", "f0", "h00", "h11", "seed", "out"],
        flags,
        file,
        &[("seed", DEFAULT_SEED), ("out", "-")],
    )?;
    let params = model_params(&r)?;
    let spec = GenSpec::new(params, r.required("seed")?);
    let graph = generate_with(&spec, &GeneratorConfig::default())?;
    let out: String = r.required("out")?;
    let writer = open_output(&out)?;
    write_edge_list(writer, &graph, &Provenance::from(&spec))
        .map_err(|e| Failure::io(format!("cannot write {out}: {e}")))?;
    let (k0, k1) = empirical_group_degrees(&graph)?;
    eprintln!("edges = {}, k0 = {k0}, k1 = {k1}", graph.edge_count());
    Ok(())
}

pub fn simulate(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let r = resolve(
        "simulate",
        &["n", "f0", "h00", "h11", "seed", "replicates", "format", "out"],
        flags,
        file,
        &[("seed", DEFAULT_SEED), ("replicates", "100"), ("format", "csv"), ("out", "-")],
    )?;
    let format = Format::from_resolved(&r)?;
    let params = model_params(&r)?;
    let cfg = mc_config(&r)?.ok_or_else(|| Failure::validation("--replicates must be at least 2"))?;
    let row = SweepRow::simulated(&params, &cfg)?;
    write_table(&Table::from_records(&[row]), format, &r.required::<String>("out")?)
}

pub fn sweep(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let mut flags = flags.clone();
    for (single, grid) in [("n", "n-grid"), ("f0", "f0-grid"), ("h00", "h00-grid"), ("h11", "h11-grid")] {
        if let Some(v) = flags.get(single).cloned() {
            flags.entry(grid).or_insert(v);
        }
    }
    let r = resolve(
        "sweep",
        &["n-grid", "f0-grid", "h00-grid", "h11-grid", "seed", "replicates", "format", "out"],
        &flags,
        file,
        &[("seed", DEFAULT_SEED), ("replicates", "0"), ("format", "csv"), ("out", "-")],
    )?;
    let format = Format::from_resolved(&r)?;
    let grid = SweepGrid {
        n_total: r.int_grid("n-grid")?,
        f_minority: r.grid("f0-grid")?,
        h00: r.grid("h00-grid")?,
        h11: r.grid("h11-grid")?,
    };
    let mc = mc_config(&r)?;
    let rows = run_sweep(&grid, mc.as_ref())?;
    write_table(&Table::from_records(&rows), format, &r.required::<String>("out")?)
}

pub fn figure(flags: &Flags, file: &FileConfig) -> Result<(), Failure> {
    let defaults = FigureOptions::default();
    let n_grid_default = defaults
        .n_grid_critical
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let r = resolve(
        "figure",
        &["panel", "n", "h11", "seed", "replicates", "n-grid", "tol", "budget", "format", "out", "out-dir"],
        flags,
        file,
        &[
            ("n", "1000"),
            ("h11", "0.8"),
            ("seed", DEFAULT_SEED),
            ("replicates", "100"),
            ("n-grid", &n_grid_default),
            ("tol", "0.01"),
            ("format", "csv"),
            ("out", "-"),
        ],
    )?;
    let format = Format::from_resolved(&r)?;
    let panel_arg: String = r.required("panel")?;
    let panels = if panel_arg == "all" {
        Panel::ALL.to_vec()
    } else {
        vec![panel_arg.parse::<Panel>()?]
    };
    let out_dir: Option<String> = r.optional("out-dir")?;
    if panels.len() > 1 && out_dir.is_none() {
        return Err(Failure::validation("--panel all requires --out-dir"));
    }

    let n_total: usize = r.required("n")?;
    let h11: f64 = r.required("h11")?;
    let tol: f64 = r.required("tol")?;
    if !(tol > 0.0) {
        return Err(Failure::validation(format!("tol out of range: {tol} (expected tol > 0)")));
    }
    let opts = FigureOptions {
        n_total,
        h11,
        n_grid_critical: r.int_grid("n-grid")?,
        critical_mc_max_n: defaults.critical_mc_max_n.max(n_total),
        critical_tol: tol,
        replicate_budget: r.optional("budget")?,
        mc: mc_config(&r)?,
        ..defaults
    };

    if let Some(dir) = &out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("cannot create {dir}: {e}")))?;
    }
    for panel in panels {
        let table = fig1_dataset(panel, &opts)?;
        let target = match &out_dir {
            Some(dir) => Path::new(dir)
                .join(panel.file_name(format.extension()))
                .to_string_lossy()
                .into_owned(),
            None => r.required("out")?,
        };
        write_table(&table, format, &target)?;
        eprintln!("panel {panel}: {} rows -> {target}", table.rows.len());
    }
    Ok(())
}
