//! Command-line drivers: every figure and table of the study maps to one
//! subcommand that writes CSV/PPM/PBM/JSON artifacts plus a run manifest.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cqca::automaton::{Automaton, SymplecticVector};
use cqca::codes::{build_quasicyclic, erasure_failure_rate, rmt_failure_model, ErasureModel};
use cqca::correlations::{ergodicity_class, step_channel, Diagonal};
use cqca::dynamics::{
    detect_gliders, evolve_operator, fractal_dimension, recurrence_time, spread_stats,
    trace_footprint, RecurrenceOutcome, DEFAULT_RECURRENCE_BUDGET,
};
use cqca::hybrid::{hybrid_step, measurement_round, run_hybrid};
use cqca::lattice::{
    build, CircuitSpec, CoreGate, Lattice, MeasurementSchedule, ALL_ONE_SITE_GATES,
};
use cqca::pauli::Pauli;
use cqca::pointgroup::{classify, detect_symmetries};
use cqca::tableau::StabilizerGroup;

use output::{write_csv, write_json, write_pbm, write_ppm, write_text};

const EXIT_INVALID_SPEC: u8 = 2;
const EXIT_BUDGET_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(name = "cqca", version, about = "Clifford cellular automaton toolkit")]
struct Cli {
    /// Output directory for artifacts and manifests.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Worker threads for independent parameter points.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Circuit spec JSON file.
    #[arg(long, conflicts_with = "class")]
    spec: Option<PathBuf>,
    /// Named preset class (see `classify --all-square` and the kagome T1/T2/T3).
    #[arg(long)]
    class: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a spec, or tabulate all 36 iSWAP-core specs.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Tabulate every (first, second) edge-gate pair with the iSWAP core.
        #[arg(long)]
        all_square: bool,
    },
    /// Strong point-group symmetries of a square-lattice spec.
    Symmetries {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print the centered full-period automaton matrix.
    Matrix {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also print the raw (uncentered) program matrix.
        #[arg(long)]
        raw: bool,
    },
    /// Characteristic and minimal polynomial of the centered automaton.
    Charpoly {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Spacetime image of one spreading operator.
    Spread {
        #[command(flatten)]
        spec: SpecArgs,
        /// Initial operator, e.g. Z1, X2, XXXX, or XXXX@0+XXXX@2.
        #[arg(long, default_value = "Z1")]
        op: String,
        #[arg(long, default_value_t = 64)]
        t: u64,
    },
    /// Bitmap of the nonzero trace coefficients of the automaton powers.
    Tracemap {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 256)]
        t: u64,
    },
    /// Fractal-dimension fit of a cumulative spacetime count.
    Fractaldim {
        #[command(flatten)]
        spec: SpecArgs,
        /// Count nonzero trace coefficients or operator support.
        #[arg(long, default_value = "trace")]
        mode: String,
        #[arg(long, default_value = "Z1")]
        op: String,
        #[arg(long, default_value_t = 2048)]
        t: u64,
        #[arg(long, default_value_t = 16)]
        fit_lo: u64,
    },
    /// Recurrence time tau(m) on rings of m cells.
    Recurrence {
        #[command(flatten)]
        spec: SpecArgs,
        /// Ring sizes, e.g. 8 or 1..32 (inclusive).
        #[arg(long, default_value = "1..16")]
        m: String,
    },
    /// Single-cell operators the automaton maps to pure translates.
    Gliders {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
    },
    /// Page curves of an evolving random product state.
    Page {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 16)]
        m: usize,
        #[arg(long, default_value_t = 16)]
        t: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mean mutual information of windows under measured dynamics.
    Mutualinfo {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 32)]
        m: usize,
        #[arg(long, default_value_t = 16)]
        t: u64,
    },
    /// Contiguous code distance of the quasicyclic code versus time.
    D1 {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 16)]
        m: usize,
        #[arg(long, default_value_t = 32)]
        t: u64,
    },
    /// Monte Carlo erasure-failure probabilities for the quasicyclic code.
    Erasure {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10)]
        m: usize,
        #[arg(long, default_value_t = 64)]
        t: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated erasure rates.
        #[arg(long, default_value = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4")]
        rates: String,
    },
    /// Purification trace of the measured circuit from the mixed state.
    Hybrid {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 16)]
        m: usize,
        #[arg(long, default_value_t = 64)]
        t: u64,
        /// Measurement basis when the spec has no schedule (x, y, or z).
        #[arg(long, default_value = "x")]
        basis: String,
    },
    /// One-layer correlation channels and the ergodicity class.
    Correlations {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<CircuitSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    outputs: Vec<String>,
    tool_version: String,
}

fn manifest(spec: Option<&CircuitSpec>, seed: Option<u64>, outputs: &[PathBuf]) -> RunManifest {
    RunManifest {
        command: std::env::args().collect::<Vec<_>>().join(" "),
        spec: spec.cloned(),
        seed,
        outputs: outputs
            .iter()
            .map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned())
            .collect(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn fail_spec(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID_SPEC)
}

impl SpecArgs {
    fn resolve(&self) -> Result<CircuitSpec, String> {
        let spec = match (&self.spec, &self.class) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                serde_json::from_str::<CircuitSpec>(&text)
                    .map_err(|e| format!("invalid spec JSON: {e}"))?
            }
            (None, Some(name)) => CircuitSpec::preset(name)
                .ok_or_else(|| format!("unknown class {name:?}"))?,
            (None, None) => return Err("one of --spec or --class is required".into()),
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

/// The centered automaton for one full period: the square half-step matrix
/// is squared first, the kagome program is already one period.
fn centered(spec: &CircuitSpec) -> Result<(Automaton, i64), String> {
    let m = build(spec).map_err(|e| e.to_string())?;
    let full = if spec.lattice == Lattice::Square { m.power(2, None) } else { m };
    full.center().map_err(|e| e.to_string())
}

/// Parse an operator: `Z1`-style single sites (1-based within the cell),
/// plain site strings over consecutive sites from cell 0, and sums of
/// `STRING@cell` segments.
fn parse_operator(spec: &CircuitSpec, text: &str) -> Result<SymplecticVector, String> {
    let a = spec.cell_size();
    let pauli_of = |c: char| match c {
        'I' => Ok(Pauli::I),
        'X' => Ok(Pauli::X),
        'Y' => Ok(Pauli::Y),
        'Z' => Ok(Pauli::Z),
        _ => Err(format!("bad Pauli letter {c:?}")),
    };
    let mut total = SymplecticVector::zero(a);
    for segment in text.split('+') {
        let (letters, cell) = match segment.split_once('@') {
            Some((l, c)) => {
                (l, c.parse::<i64>().map_err(|_| format!("bad cell index {c:?}"))?)
            }
            None => (segment, 0),
        };
        let v = if letters.len() >= 2
            && letters.chars().next().is_some_and(|c| "XYZ".contains(c))
            && letters[1..].chars().all(|c| c.is_ascii_digit())
        {
            let site: usize = letters[1..].parse().map_err(|_| "bad site".to_string())?;
            if site == 0 || site > a {
                return Err(format!("site {site} outside 1..={a}"));
            }
            let mut cellp = vec![Pauli::I; a];
            cellp[site - 1] = pauli_of(letters.chars().next().unwrap())?;
            SymplecticVector::from_cell_paulis(&cellp)
        } else {
            if letters.is_empty() || letters.len() % a != 0 {
                return Err(format!(
                    "operator string length must be a multiple of the cell size {a}"
                ));
            }
            let paulis: Result<Vec<Pauli>, String> = letters.chars().map(pauli_of).collect();
            let paulis = paulis?;
            let mut v = SymplecticVector::zero(a);
            for (k, chunk) in paulis.chunks(a).enumerate() {
                let w = SymplecticVector::from_cell_paulis(chunk);
                v = v.add(&w.scale(&cqca::polyring::LaurentPoly::monomial(k as i64)));
            }
            v
        };
        total = total.add(&v.scale(&cqca::polyring::LaurentPoly::monomial(cell)));
    }
    if total.is_zero() {
        return Err("operator is the identity".into());
    }
    Ok(total)
}

fn parse_range(text: &str) -> Result<Vec<usize>, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range {text:?}"))?;
        if lo == 0 || hi < lo {
            return Err(format!("bad range {text:?}"));
        }
        Ok((lo..=hi).collect())
    } else {
        let m: usize = text.trim().parse().map_err(|_| format!("bad ring size {text:?}"))?;
        if m == 0 {
            return Err("ring size must be positive".into());
        }
        Ok(vec![m])
    }
}

fn recurrence_budget() -> u64 {
    std::env::var("CQCA_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_RECURRENCE_BUDGET)
}

fn measured(spec: &CircuitSpec, basis: &str) -> Result<CircuitSpec, String> {
    if spec.measurement_schedule.is_some() {
        return Ok(spec.clone());
    }
    let basis = match basis {
        "x" | "X" => cqca::lattice::MeasurementBasis::X,
        "y" | "Y" => cqca::lattice::MeasurementBasis::Y,
        "z" | "Z" => cqca::lattice::MeasurementBasis::Z,
        other => return Err(format!("unknown basis {other:?}")),
    };
    Ok(spec.clone().with_measurements(MeasurementSchedule { basis, site: 0 }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("error: cannot create {}: {e}", cli.out.display());
        return ExitCode::FAILURE;
    }
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => fail_spec(&msg),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let out = &cli.out;
    match &cli.command {
        Command::Classify { spec, all_square } => {
            if *all_square {
                let mut rows = Vec::new();
                for g1 in ALL_ONE_SITE_GATES {
                    for g2 in ALL_ONE_SITE_GATES {
                        let s = CircuitSpec::square(CoreGate::Iswap, g1, g2);
                        let id = classify(&s).map_err(|e| e.to_string())?;
                        rows.push(vec![
                            format!("{g1:?}").to_lowercase(),
                            format!("{g2:?}").to_lowercase(),
                            id.to_string(),
                        ]);
                    }
                }
                let path = out.join("classify.csv");
                write_csv(&path, &["first", "second", "class"], &rows)?;
                write_json(
                    &out.join("classify.manifest.json"),
                    &manifest(None, None, &[path.clone()]),
                )?;
                for row in &rows {
                    println!("{}", row.join(","));
                }
            } else {
                let s = spec.resolve()?;
                let id = classify(&s).map_err(|e| e.to_string())?;
                println!("{id}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Symmetries { spec } => {
            let s = spec.resolve()?;
            let ops = detect_symmetries(&s).map_err(|e| e.to_string())?;
            let names: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
            let path = out.join("symmetries.json");
            write_json(&path, &names)?;
            write_json(
                &out.join("symmetries.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            for n in &names {
                println!("{n}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { spec, raw } => {
            let s = spec.resolve()?;
            let (m, d) = centered(&s)?;
            let mut text = format!("# centered, shift u^{d}\n{m}\n");
            if *raw {
                let program = build(&s).map_err(|e| e.to_string())?;
                text.push_str(&format!("# program\n{program}\n"));
            }
            let path = out.join("matrix.txt");
            write_text(&path, &text)?;
            write_json(
                &out.join("matrix.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Charpoly { spec } => {
            let s = spec.resolve()?;
            let (m, _) = centered(&s)?;
            let chi = m.char_poly();
            let mu = m.min_poly().map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out {
                chi: String,
                mu: String,
            }
            let data = Out { chi: chi.to_string(), mu: mu.to_string() };
            let path = out.join("charpoly.json");
            write_json(&path, &data)?;
            write_json(
                &out.join("charpoly.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            println!("chi = {}", data.chi);
            println!("mu  = {}", data.mu);
            Ok(ExitCode::SUCCESS)
        }
        Command::Spread { spec, op, t } => {
            let s = spec.resolve()?;
            let (m, _) = centered(&s)?;
            let start = parse_operator(&s, op)?;
            let fp = evolve_operator(&m, &start, *t as usize);
            let ppm = out.join("spread.ppm");
            write_ppm(&ppm, fp.rows())?;
            let stats = spread_stats(&m, &start, *t as usize);
            let rows: Vec<Vec<String>> = stats
                .counts
                .iter()
                .zip(&stats.cumulative)
                .enumerate()
                .map(|(t, (n, c))| {
                    vec![
                        t.to_string(),
                        n[1].to_string(),
                        n[2].to_string(),
                        n[3].to_string(),
                        (c[1] + c[2] + c[3]).to_string(),
                    ]
                })
                .collect();
            let csv = out.join("spread.csv");
            write_csv(&csv, &["t", "n_x", "n_y", "n_z", "cumulative_support"], &rows)?;
            write_json(
                &out.join("spread.manifest.json"),
                &manifest(Some(&s), None, &[ppm, csv]),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tracemap { spec, t } => {
            let s = spec.resolve()?;
            let (m, _) = centered(&s)?;
            let grid = trace_footprint(&m, *t as usize);
            let path = out.join("tracemap.pbm");
            write_pbm(&path, &grid.rows)?;
            write_json(
                &out.join("tracemap.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fractaldim { spec, mode, op, t, fit_lo } => {
            let s = spec.resolve()?;
            let (m, _) = centered(&s)?;
            let cumulative = match mode.as_str() {
                "trace" => trace_footprint(&m, *t as usize).cumulative_counts(),
                "operator" => {
                    let start = parse_operator(&s, op)?;
                    spread_stats(&m, &start, *t as usize).cumulative_support()
                }
                other => return Err(format!("unknown mode {other:?}")),
            };
            let (dim, stderr) =
                fractal_dimension(&cumulative, *fit_lo as usize, *t as usize)
                    .map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out {
                mode: String,
                t_max: u64,
                fit_lo: u64,
                dimension: f64,
                stderr: f64,
            }
            let data =
                Out { mode: mode.clone(), t_max: *t, fit_lo: *fit_lo, dimension: dim, stderr };
            let path = out.join("fractaldim.json");
            write_json(&path, &data)?;
            write_json(
                &out.join("fractaldim.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            println!("dimension = {dim:.4} +- {stderr:.4}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Recurrence { spec, m } => {
            let s = spec.resolve()?;
            let (auto, _) = centered(&s)?;
            let sizes = parse_range(m)?;
            let budget = recurrence_budget();
            let results: Vec<_> = {
                use rayon::prelude::*;
                sizes
                    .par_iter()
                    .map(|&cells| recurrence_time(&auto, cells, budget))
                    .collect()
            };
            let mut exceeded = false;
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| match r.outcome {
                    RecurrenceOutcome::Found { tau, shift_d } => {
                        vec![r.cells.to_string(), tau.to_string(), shift_d.to_string()]
                    }
                    RecurrenceOutcome::LowerBound(b) => {
                        exceeded = true;
                        vec![r.cells.to_string(), format!(">{b}"), String::new()]
                    }
                })
                .collect();
            let path = out.join("recurrence.csv");
            write_csv(&path, &["m", "tau", "shift"], &rows)?;
            write_json(
                &out.join("recurrence.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            for row in &rows {
                println!("{}", row.join(","));
            }
            if exceeded {
                eprintln!("warning: budget {budget} exceeded; lower bounds emitted");
                return Ok(ExitCode::from(EXIT_BUDGET_EXCEEDED));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gliders { spec, max_weight } => {
            let s = spec.resolve()?;
            let (m, _) = centered(&s)?;
            let gliders = detect_gliders(&m, *max_weight);
            let a = s.cell_size();
            let rows: Vec<Vec<String>> = gliders
                .iter()
                .map(|(v, n)| {
                    let label: String =
                        (0..a).map(|site| v.pauli_at(site, 0).to_string()).collect();
                    vec![label, n.to_string()]
                })
                .collect();
            let path = out.join("gliders.csv");
            write_csv(&path, &["operator", "velocity"], &rows)?;
            write_json(
                &out.join("gliders.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            for row in &rows {
                println!("{}", row.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Page { spec, m, t, seed } => {
            let s = spec.resolve()?;
            let mut g = StabilizerGroup::random_product_state(*m, s.cell_size(), *seed);
            let mut rows = Vec::new();
            for step in 0..=*t {
                let page = g.page_curve();
                for (len, mean) in page.iter().enumerate() {
                    rows.push(vec![
                        step.to_string(),
                        (len + 1).to_string(),
                        format!("{mean}"),
                    ]);
                }
                if step < *t {
                    g = g.step(&s).map_err(|e| e.to_string())?;
                }
            }
            let path = out.join("page.csv");
            write_csv(&path, &["t", "len", "mean_entropy"], &rows)?;
            write_json(
                &out.join("page.manifest.json"),
                &manifest(Some(&s), Some(*seed), &[path]),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutualinfo { spec, m, t } => {
            let s = measured(&spec.resolve()?, "x")?;
            let (mut g, _) = measurement_round(&StabilizerGroup::fully_mixed(*m, s.cell_size()), &s)
                .map_err(|e| e.to_string())?;
            let qubits = s.cell_size() * m;
            let mut rows = Vec::new();
            for step in 1..=*t {
                g = hybrid_step(&g, &s).map_err(|e| e.to_string())?.0;
                let page = g.page_curve();
                let total = g.entropy() as f64;
                for len in 1..qubits {
                    let mi = page[len - 1] + page[qubits - len - 1] - total;
                    rows.push(vec![step.to_string(), len.to_string(), format!("{mi}")]);
                }
            }
            let path = out.join("mutualinfo.csv");
            write_csv(&path, &["t", "len", "mean_mutual_information"], &rows)?;
            write_json(
                &out.join("mutualinfo.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::D1 { spec, m, t } => {
            let s = spec.resolve()?;
            let initial =
                vec![SymplecticVector::from_cell_paulis(&{
                    let mut p = vec![Pauli::I; s.cell_size()];
                    p[0] = Pauli::Z;
                    p
                })];
            let snapshot = build_quasicyclic(&s, &initial, *m, *t)
                .map_err(|e| e.to_string())?;
            let mut g = StabilizerGroup::from_translates(*m, &initial)
                .map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for step in 0..=*t {
                let d1 = cqca::codes::contiguous_code_distance(&g)
                    .map_err(|e| e.to_string())?;
                rows.push(vec![step.to_string(), d1.to_string()]);
                if step < *t {
                    g = g.step(&s).map_err(|e| e.to_string())?;
                }
            }
            let path = out.join("d1.csv");
            write_csv(&path, &["t", "d1"], &rows)?;
            #[derive(Serialize)]
            struct Best {
                t: u64,
                d1: usize,
                rate: f64,
            }
            let best_path = out.join("d1_best.json");
            write_json(
                &best_path,
                &Best { t: snapshot.t, d1: snapshot.d1, rate: snapshot.rate() },
            )?;
            write_json(
                &out.join("d1.manifest.json"),
                &manifest(Some(&s), None, &[path, best_path]),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Erasure { spec, m, t, trials, seed, rates } => {
            let s = spec.resolve()?;
            let initial =
                vec![SymplecticVector::from_cell_paulis(&{
                    let mut p = vec![Pauli::I; s.cell_size()];
                    p[0] = Pauli::Z;
                    p
                })];
            let snapshot =
                build_quasicyclic(&s, &initial, *m, *t).map_err(|e| e.to_string())?;
            let es: Result<Vec<f64>, String> = rates
                .split(',')
                .map(|r| r.trim().parse::<f64>().map_err(|_| format!("bad rate {r:?}")))
                .collect();
            let mut rows = Vec::new();
            for e in es? {
                let model = ErasureModel { fraction: e, trials: *trials, seed: *seed };
                let (p, stderr) = erasure_failure_rate(&snapshot.group, &model)
                    .map_err(|err| err.to_string())?;
                let rmt = rmt_failure_model(e, snapshot.rate(), snapshot.group.qubits())
                    .map(|v| format!("{v}"))
                    .unwrap_or_default();
                rows.push(vec![format!("{e}"), format!("{p}"), format!("{stderr}"), rmt]);
            }
            let path = out.join("erasure.csv");
            write_csv(&path, &["e", "p_fail", "stderr", "rmt"], &rows)?;
            write_json(
                &out.join("erasure.manifest.json"),
                &manifest(Some(&s), Some(*seed), &[path]),
            )?;
            for row in &rows {
                println!("{}", row.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hybrid { spec, m, t, basis } => {
            let s = measured(&spec.resolve()?, basis)?;
            let trace = run_hybrid(&s, &StabilizerGroup::fully_mixed(*m, s.cell_size()), *t)
                .map_err(|e| e.to_string())?;
            let rows: Vec<Vec<String>> = trace
                .entropies
                .iter()
                .enumerate()
                .map(|(step, e)| {
                    let purified = if step == 0 {
                        String::new()
                    } else {
                        trace.purified_bits[step - 1].to_string()
                    };
                    vec![step.to_string(), e.to_string(), purified]
                })
                .collect();
            let path = out.join("hybrid.csv");
            write_csv(&path, &["t", "entropy", "purified"], &rows)?;
            write_json(
                &out.join("hybrid.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            println!("t* = {}", trace.purification_time);
            Ok(ExitCode::SUCCESS)
        }
        Command::Correlations { spec } => {
            let s = spec.resolve()?;
            let plus = step_channel(&s, Diagonal::Plus).map_err(|e| e.to_string())?;
            let minus = step_channel(&s, Diagonal::Minus).map_err(|e| e.to_string())?;
            let class = ergodicity_class(&s).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out {
                plus: [[i64; 4]; 4],
                minus: [[i64; 4]; 4],
                ergodicity: String,
            }
            let data =
                Out { plus: plus.0, minus: minus.0, ergodicity: format!("{class:?}") };
            let path = out.join("correlations.json");
            write_json(&path, &data)?;
            write_json(
                &out.join("correlations.manifest.json"),
                &manifest(Some(&s), None, &[path]),
            )?;
            println!("ergodicity: {}", data.ergodicity);
            Ok(ExitCode::SUCCESS)
        }
    }
}
