use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crystgraph::graph::ReadoutMode;
use crystgraph::line_graph::LineGraphVariant;
use crystgraph::ndjson::GraphRecord;
use crystgraph::ngn::{self, NgnConfig};
use crystgraph::pipeline::{
    self, list_inputs, load_structure, EdgeSelection, LoadedStructure, PipelineConfig, SymmetrySource,
};
use crystgraph::stats;
use crystgraph::symmetry::DEFAULT_SYMPREC;

#[derive(Parser)]
#[command(name = "crystgraph", version, about = "Crystal structures to periodic graphs")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "CRYSTGRAPH_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a CIF (or JSON) structure and print it as canonical JSON.
    Parse {
        file: PathBuf,
        #[arg(long)]
        to_json: Option<PathBuf>,
    },
    /// Unit-cell graphs as NDJSON.
    Graph {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        edges: EdgeArgs,
    },
    /// Asymmetric-unit graphs as NDJSON.
    Asu {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        edges: EdgeArgs,
        #[command(flatten)]
        sym: SymArgs,
    },
    /// Graphs with line-graph angles as NDJSON.
    Linegraph {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        edges: EdgeArgs,
        #[command(flatten)]
        lg: LgArgs,
        /// Build on the asymmetric-unit graph.
        #[arg(long)]
        asu: bool,
        #[command(flatten)]
        sym: SymArgs,
    },
    /// Seeded reference forward pass over an NDJSON graph file.
    Forward {
        /// NgnConfig JSON; missing fields take the preset's values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Preset::Cogn)]
        preset: Preset,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        readout: Option<Readout>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corpus statistics, connectivity sweeps and ASU reduction factors.
    Stats {
        /// CIF/JSON files or directories.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Report::Graphs)]
        report: Report,
        #[command(flatten)]
        edges: EdgeArgs,
        #[command(flatten)]
        sym: SymArgs,
        /// Line-graph variant counted in graph and reduction reports.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        /// kNN k values for the sweep, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,6,8,12,16,24,32")]
        k_grid: Vec<usize>,
        /// Radius values (Å) for the sweep, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8")]
        r_grid: Vec<f64>,
        /// JSON output path (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV output path for the sweep report.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full pipeline: parse, edges, optional ASU and line graph, NDJSON out.
    Export {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        edges: EdgeArgs,
        /// Emit asymmetric-unit graphs.
        #[arg(long)]
        asu: bool,
        #[command(flatten)]
        sym: SymArgs,
        /// Attach a line graph of this variant.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        /// Line-graph order (2 drops angles).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
        /// Keep path pairs that walk straight back.
        #[arg(long)]
        keep_backtrack: bool,
        /// Keep going past failing inputs and write an error report.
        #[arg(long)]
        skip_errors: bool,
        /// Error report path (default: `<out>.errors.json`, or stderr).
        #[arg(long)]
        error_report: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InOut {
    /// CIF/JSON files or directories.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Output path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EdgeArgs {
    #[arg(long, value_enum, default_value_t = Method::Knn)]
    method: Method,
    #[arg(long, default_value_t = 24)]
    k: usize,
    /// kNN tie tolerance, Å.
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    /// Radius cutoff, Å.
    #[arg(long, default_value_t = 5.0)]
    r: f64,
    /// Add reverse kNN edges.
    #[arg(long)]
    symmetrize: bool,
    /// Attach Voronoi ridge areas.
    #[arg(long)]
    ridge_area: bool,
    #[arg(long, default_value_t = 1e-7)]
    area_eps: f64,
}

impl EdgeArgs {
    fn selection(&self) -> EdgeSelection {
        match self.method {
            Method::Knn => EdgeSelection::Knn {
                k: self.k,
                tie_epsilon: self.eps,
                symmetrize: self.symmetrize,
            },
            Method::Radius => EdgeSelection::Radius { r: self.r },
            Method::Voronoi => EdgeSelection::Voronoi {
                ridge_area: self.ridge_area,
                area_epsilon: self.area_eps,
            },
        }
    }
}

#[derive(Args)]
struct SymArgs {
    #[arg(long, default_value_t = DEFAULT_SYMPREC)]
    symprec: f64,
    #[arg(long, value_enum, default_value_t = Symmetry::Detect)]
    symmetry: Symmetry,
}

#[derive(Args)]
struct LgArgs {
    #[arg(long, value_enum, default_value_t = Variant::Destination)]
    variant: Variant,
    /// Line-graph order (2 drops angles).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    order: u8,
    /// Keep path pairs that walk straight back.
    #[arg(long)]
    keep_backtrack: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Knn,
    Radius,
    Voronoi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Symmetry {
    Detect,
    Cif,
    None,
}

impl From<Symmetry> for SymmetrySource {
    fn from(s: Symmetry) -> Self {
        match s {
            Symmetry::Detect => SymmetrySource::Detect,
            Symmetry::Cif => SymmetrySource::Cif,
            Symmetry::None => SymmetrySource::None,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Path,
    Destination,
}

impl From<Variant> for LineGraphVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Path => LineGraphVariant::Path,
            Variant::Destination => LineGraphVariant::Destination,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Cogn,
    Congn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Readout {
    Mean,
    Sum,
    Min,
    Max,
    Attention,
}

impl From<Readout> for ReadoutMode {
    fn from(r: Readout) -> Self {
        match r {
            Readout::Mean => ReadoutMode::Mean,
            Readout::Sum => ReadoutMode::Sum,
            Readout::Min => ReadoutMode::Min,
            Readout::Max => ReadoutMode::Max,
            Readout::Attention => ReadoutMode::Attention,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Graphs,
    Sweep,
    Reduction,
}

fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            out.extend(list_inputs(p)?);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn write_lines(path: Option<&Path>, lines: &[String]) -> Result<()> {
    let mut w = open_out(path)?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<LoadedStructure>> {
    paths
        .par_iter()
        .map(|p| load_structure(p).with_context(|| format!("loading {}", p.display())))
        .collect()
}

/// Strict pipeline run: the first failure aborts.
fn run_pipeline(io: &InOut, cfg: &PipelineConfig) -> Result<()> {
    let paths = expand_inputs(&io.inputs)?;
    let out = pipeline::export(&paths, cfg);
    if let Some(e) = out.errors.first() {
        bail!("{}: {}", e.file, e.error);
    }
    write_lines(io.out.as_deref(), &out.lines)
}

fn forward_cmd(
    config: Option<&Path>,
    preset: Preset,
    seed: Option<u64>,
    readout: Option<Readout>,
    input: &Path,
    out: Option<&Path>,
) -> Result<()> {
    let mut base = serde_json::to_value(match preset {
        Preset::Cogn => NgnConfig::cogn(),
        Preset::Congn => NgnConfig::congn(),
    })?;
    if let Some(path) = config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let overrides: serde_json::Value = serde_json::from_str(&text).context("parsing config")?;
        let obj = overrides.as_object().context("config must be a JSON object")?;
        for (k, v) in obj {
            base[k] = v.clone();
        }
    }
    let mut cfg: NgnConfig = serde_json::from_value(base).context("invalid config")?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(r) = readout {
        cfg.readout = r.into();
    }
    let params = ngn::init_params(&cfg)?;
    let reader = BufReader::new(fs::File::open(input).with_context(|| format!("opening {}", input.display()))?);
    let records: Vec<GraphRecord> = reader
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|(i, l)| -> Result<GraphRecord> {
            serde_json::from_str(&l?).with_context(|| format!("line {}", i + 1))
        })
        .collect::<Result<_>>()?;
    let lines: Vec<String> = records
        .par_iter()
        .map(|rec| -> Result<String> {
            let (graph, lg) = rec.to_graph();
            let (y, _) = ngn::forward(&graph, lg.as_ref(), &cfg, &params).with_context(|| rec.id.clone())?;
            Ok(serde_json::json!({"id": rec.id, "prediction": y}).to_string())
        })
        .collect::<Result<_>>()?;
    write_lines(out, &lines)?;
    eprintln!("params {} checksum {}", params.n_params(), params.checksum());
    Ok(())
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    let mut w = open_out(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    match cli.command {
        Command::Parse { file, to_json } => {
            let loaded = load_structure(&file)?;
            let json = loaded.structure.to_json_string();
            match to_json {
                Some(p) => fs::write(&p, json + "\n")?,
                None => println!("{json}"),
            }
            eprintln!(
                "{}: {} sites, {} symmetry operations in file",
                loaded.structure.id,
                loaded.structure.len(),
                loaded.file_ops.len()
            );
        }
        Command::Graph { io, edges } => {
            let cfg = PipelineConfig {
                edges: edges.selection(),
                ..Default::default()
            };
            run_pipeline(&io, &cfg)?;
        }
        Command::Asu { io, edges, sym } => {
            let cfg = PipelineConfig {
                edges: edges.selection(),
                asu: true,
                symmetry: sym.symmetry.into(),
                symprec: sym.symprec,
                ..Default::default()
            };
            run_pipeline(&io, &cfg)?;
        }
        Command::Linegraph {
            io,
            edges,
            lg,
            asu,
            sym,
        } => {
            let cfg = PipelineConfig {
                edges: edges.selection(),
                asu,
                symmetry: sym.symmetry.into(),
                symprec: sym.symprec,
                line_graph: Some(lg.variant.into()),
                line_graph_order: lg.order,
                keep_backtrack: lg.keep_backtrack,
            };
            run_pipeline(&io, &cfg)?;
        }
        Command::Forward {
            config,
            preset,
            seed,
            readout,
            input,
            out,
        } => forward_cmd(config.as_deref(), preset, seed, readout, &input, out.as_deref())?,
        Command::Stats {
            inputs,
            report,
            edges,
            sym,
            variant,
            k_grid,
            r_grid,
            out,
            csv,
        } => {
            let structures = load_all(&expand_inputs(&inputs)?)?;
            let variant = variant.map(LineGraphVariant::from);
            match report {
                Report::Graphs => {
                    let cfg = PipelineConfig {
                        edges: edges.selection(),
                        line_graph: variant,
                        ..Default::default()
                    };
                    let processed = structures
                        .par_iter()
                        .map(|l| pipeline::process(l, &cfg).with_context(|| l.structure.id.clone()))
                        .collect::<Result<Vec<_>>>()?;
                    write_json(out.as_deref(), &stats::corpus_stats(&processed))?;
                }
                Report::Sweep => {
                    let mut grid: Vec<EdgeSelection> = k_grid.iter().map(|&k| EdgeSelection::knn(k)).collect();
                    grid.extend(r_grid.iter().map(|&r| EdgeSelection::radius(r)));
                    grid.push(EdgeSelection::voronoi());
                    let rows = stats::sweep_connectivity(&structures, &grid);
                    if let Some(p) = csv {
                        fs::write(&p, stats::sweep_to_csv(&rows))?;
                    }
                    write_json(out.as_deref(), &rows)?;
                }
                Report::Reduction => {
                    let rep = stats::asu_reduction_report(
                        &structures,
                        &edges.selection(),
                        variant,
                        sym.symmetry.into(),
                        sym.symprec,
                    );
                    write_json(out.as_deref(), &rep)?;
                }
            }
        }
        Command::Export {
            io,
            edges,
            asu,
            sym,
            variant,
            order,
            keep_backtrack,
            skip_errors,
            error_report,
        } => {
            let cfg = PipelineConfig {
                edges: edges.selection(),
                asu,
                symmetry: sym.symmetry.into(),
                symprec: sym.symprec,
                line_graph: variant.map(Into::into),
                line_graph_order: order,
                keep_backtrack,
            };
            let paths = expand_inputs(&io.inputs)?;
            let result = pipeline::export(&paths, &cfg);
            if !result.errors.is_empty() && !skip_errors {
                for e in &result.errors {
                    eprintln!("error: {}: {}", e.file, e.error);
                }
                return Ok(ExitCode::FAILURE);
            }
            write_lines(io.out.as_deref(), &result.lines)?;
            if skip_errors {
                let report_path = error_report.or_else(|| {
                    io.out.as_ref().map(|o| {
                        let mut s = o.clone().into_os_string();
                        s.push(".errors.json");
                        PathBuf::from(s)
                    })
                });
                match report_path {
                    Some(p) => write_json(Some(&p), &result.errors)?,
                    None => {
                        for e in &result.errors {
                            eprintln!("skipped: {}: {}", e.file, e.error);
                        }
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
