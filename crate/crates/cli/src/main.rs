use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cracktope::classifier;
use cracktope::cracked::{self, SearchSummary};
use cracktope::fan::{promote, shape, Fan};
use cracktope::ks_io::{self, KS3_ENV};
use cracktope::laurent;
use cracktope::pieces;
use cracktope::scaffolding::{self, Scaffolding};
use cracktope::{Error, Point, Polytope};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "cracktope", version, about = "Cracked polytopes, scaffoldings and reflexive pieces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (0: all cores). Output does not depend on it.
    #[arg(long, short = 'j', default_value_t = 0, global = true)]
    jobs: usize,
    /// Print errors as JSON on stderr.
    #[arg(long, global = true)]
    error_json: bool,
    /// Not accepted: every algorithm is deterministic.
    #[arg(long, hide = true, global = true)]
    seed: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cracked polytopes.
    #[command(subcommand)]
    Cracked(CrackedCmd),
    /// Scaffolding checks and Laurent inversion.
    #[command(subcommand)]
    Scaffold(ScaffoldCmd),
    /// Reflexive pieces.
    #[command(subcommand)]
    Pieces(PiecesCmd),
    /// Reflexive 3-topes cracked along a fan.
    Classify(ClassifyArgs),
    /// Mutation admissibility.
    #[command(subcommand)]
    Mutate(MutateCmd),
    /// Reflexive polytope lists.
    #[command(subcommand)]
    Ks(KsCmd),
}

#[derive(Args)]
struct KsArg {
    /// PALP file of reflexive 3-topes.
    #[arg(long, env = KS3_ENV)]
    ks: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CrackedCmd {
    /// Is P cracked along FAN (a fan file or a shape label)?
    Check {
        #[arg(short = 'p', long)]
        polytope: PathBuf,
        #[arg(short = 'f', long)]
        fan: String,
    },
    /// Polytopes cracked in half in a reflexive 3-tope list.
    Search {
        #[command(flatten)]
        ks: KsArg,
    },
}

#[derive(Subcommand)]
enum ScaffoldCmd {
    Validate {
        #[arg(short = 's', long)]
        scaffolding: PathBuf,
    },
    Weights {
        #[arg(short = 's', long)]
        scaffolding: PathBuf,
    },
    Equations {
        #[arg(short = 's', long)]
        scaffolding: PathBuf,
    },
}

#[derive(Subcommand)]
enum PiecesCmd {
    Classify {
        #[arg(short = 'p', long)]
        polytope: PathBuf,
    },
    /// All pieces inside a bounding polytope.
    Enumerate {
        #[arg(long)]
        bound: PathBuf,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Shape label (promoted to dimension 3) or fan file.
    #[arg(long)]
    shape: String,
    #[command(flatten)]
    ks: KsArg,
    /// Also write a CSV table.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MutateCmd {
    Check {
        #[arg(short = 'p', long)]
        polytope: PathBuf,
        /// Grading, comma separated.
        #[arg(short = 'w', long, value_delimiter = ',', allow_negative_numbers = true)]
        weight: Vec<i64>,
        /// Factor polytope file.
        #[arg(short = 'F', long)]
        factor: PathBuf,
    },
}

#[derive(Subcommand)]
enum KsCmd {
    /// Parse a PALP file and write its JSON index.
    Index {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Parse { .. } | Error::UnknownShape(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// `{"vertices": [[..], ..]}` or a bare list of points.
fn read_polytope(path: &Path) -> Res<Polytope> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let pts = v.get("vertices").cloned().unwrap_or(v);
    let pts: Vec<Point> =
        serde_json::from_value(pts).map_err(|e| Failure::Usage(format!("{}: expected vertex list: {e}", path.display())))?;
    Ok(Polytope::from_vertices(&pts)?)
}

fn read_scaffolding(path: &Path) -> Res<Scaffolding> {
    Ok(Scaffolding::from_json(&read(path)?)?)
}

/// A fan file, or a shape label promoted to dimension `dim`.
fn resolve_fan(spec: &str, dim: usize) -> Res<Fan> {
    let p = Path::new(spec);
    if p.exists() {
        let f = Fan::from_json(&read(p)?)?;
        return Ok(if f.ambient_dim < dim { promote(&f, dim - f.ambient_dim) } else { f });
    }
    let z = shape(spec)?;
    let d = z.fan.ambient_dim;
    if d > dim {
        return Err(Failure::Usage(format!("shape {spec} has dimension {d} > {dim}")));
    }
    Ok(if d < dim { promote(&z.fan, dim - d) } else { z.fan })
}

fn load_ks(arg: &KsArg) -> Res<ks_io::KsIndex> {
    let path = arg.ks.clone().ok_or_else(|| Failure::Usage(format!("no reflexive list: pass --ks or set {KS3_ENV}")))?;
    let parsed = ks_io::parse_palp_file(&path, &ks_io::ParseOptions::default())?;
    for e in &parsed.skipped {
        eprintln!("warning: skipped block: {e}");
    }
    Ok(ks_io::build_index(parsed.records))
}

struct Out {
    format: Format,
    text: String,
    json: Value,
}

impl Out {
    fn new(format: Format) -> Self {
        Out { format, text: String::new(), json: json!({ "schema_version": SCHEMA_VERSION }) }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: impl Serialize) {
        self.json[key] = serde_json::to_value(v).expect("serializable");
    }

    fn emit(self) {
        let mut so = std::io::stdout().lock();
        let _ = match self.format {
            Format::Text => so.write_all(self.text.as_bytes()),
            Format::Json => writeln!(so, "{}", serde_json::to_string_pretty(&self.json).unwrap()),
        };
    }
}

fn fmt_point(p: &[i64]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn run(cli: Cli) -> Res<bool> {
    let mut out = Out::new(cli.format);
    let mut ok = true;
    match cli.cmd {
        Cmd::Cracked(CrackedCmd::Check { polytope, fan }) => {
            let p = read_polytope(&polytope)?;
            let f = resolve_fan(&fan, p.ambient_dim())?;
            let r = cracked::is_cracked(&p, &f)?;
            out.line(format!("cracked={}", r.verdict));
            for (i, e) in r.evidence.iter().enumerate() {
                match e {
                    cracked::ConeEvidence::Unimodular => out.line(format!("cone {i}: unimodular")),
                    cracked::ConeEvidence::Offending { vertex, den } => {
                        out.line(format!("cone {i}: offending vertex {}/{den}", fmt_point(vertex)))
                    }
                }
            }
            out.set("report", &r);
        }
        Cmd::Cracked(CrackedCmd::Search { ks }) => {
            let idx = load_ks(&ks)?;
            let db: Vec<(usize, Polytope)> = idx.records().iter().map(|r| (r.id, r.polytope.clone())).collect();
            let rows = cracked::cracked_in_half_search(&db)?;
            let sum = SearchSummary::of(&rows);
            for r in rows.iter().filter(|r| r.cracked) {
                let ds: Vec<String> = r.cracked_directions.iter().map(|d| fmt_point(d)).collect();
                out.line(format!("{} dimVP={} directions={}", r.id, r.dim_v_p, ds.join(" ")));
            }
            out.line(sum.line());
            out.set("rows", rows.iter().filter(|r| r.candidate).collect::<Vec<_>>());
            out.set("summary", &sum);
        }
        Cmd::Scaffold(ScaffoldCmd::Validate { scaffolding }) => {
            let s = read_scaffolding(&scaffolding)?;
            let rep = scaffolding::validate(&s);
            ok = rep.is_valid();
            out.line(if ok { "valid".to_string() } else { "invalid".to_string() });
            for v in &rep.violations {
                out.line(format!("  {v:?}"));
            }
            out.set("valid", ok);
            out.set("violations", &rep.violations);
        }
        Cmd::Scaffold(ScaffoldCmd::Weights { scaffolding }) => {
            let s = read_scaffolding(&scaffolding)?;
            let w = laurent::weights(&s)?;
            let names = laurent::column_names(&w.columns);
            out.text.push_str(&laurent::render_table(&w, &names));
            out.set("columns", &names);
            out.set("weights", w.r.to_rows());
            out.set("omega", &w.omega);
        }
        Cmd::Scaffold(ScaffoldCmd::Equations { scaffolding }) => {
            let s = read_scaffolding(&scaffolding)?;
            let eqs = if s.shape.factors.is_some() {
                laurent::binomials_product_shape(&s)?
            } else {
                laurent::binomials_general(&s)?
            };
            let w = laurent::weights(&s)?;
            let names = laurent::column_names(&w.columns);
            let rendered: Vec<String> = eqs.iter().map(|e| e.render(&names)).collect();
            for r in &rendered {
                out.line(r);
            }
            out.set("columns", &names);
            out.set("equations", &rendered);
        }
        Cmd::Pieces(PiecesCmd::Classify { polytope }) => {
            let p = read_polytope(&polytope)?;
            let rec = pieces::classify_piece(&p)?;
            out.line(format!("family={} type={}", rec.family, rec.piece_type));
            out.set("piece", rec.atlas_entry()?);
        }
        Cmd::Pieces(PiecesCmd::Enumerate { bound }) => {
            let b = read_polytope(&bound)?;
            let found = pieces::enumerate_pieces_oracle(&b)?;
            let mut entries = Vec::new();
            for q in &found {
                let rec = pieces::classify_piece(q)?;
                let e = rec.atlas_entry()?;
                out.line(format!("family={} type={} vertices={}", rec.family, rec.piece_type, e.normal_form));
                entries.push(e);
            }
            out.line(format!("pieces={}", found.len()));
            out.set("pieces", entries);
        }
        Cmd::Classify(a) => {
            let f = resolve_fan(&a.shape, 3)?;
            let idx = match &a.ks.ks {
                Some(_) => Some(load_ks(&a.ks)?),
                None => None,
            };
            eprintln!("classifying along a fan with {} maximal cones", f.cones.len());
            let res = classifier::classify_cracked(&f, idx.as_ref())?;
            let rows: Vec<Value> = res
                .iter()
                .map(|c| json!({ "id": c.id, "normal_form": c.key.to_string(), "vertices": c.polytope.vertices() }))
                .collect();
            for c in &res {
                let id = c.id.map(|i| i.to_string()).unwrap_or_else(|| "-".into());
                out.line(format!("{id} {}", c.key));
            }
            out.line(format!("cracked={}", res.len()));
            if let Some(path) = &a.out {
                let mut w = csv::Writer::from_path(path).map_err(|e| Failure::Usage(e.to_string()))?;
                let io = |e: csv::Error| Failure::Usage(e.to_string());
                w.write_record(["id", "normal_form", "vertices"]).map_err(io)?;
                for c in &res {
                    let vs: Vec<String> = c.polytope.vertices().iter().map(|v| fmt_point(v)).collect();
                    let id = c.id.map(|i| i.to_string()).unwrap_or_default();
                    w.write_record([id, c.key.to_string(), vs.join(" ")]).map_err(io)?;
                }
                w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
            }
            out.set("polytopes", rows);
        }
        Cmd::Mutate(MutateCmd::Check { polytope, weight, factor }) => {
            let p = read_polytope(&polytope)?;
            let fac = read_polytope(&factor)?;
            let adm = scaffolding::admits_mutation(&p, &weight, &fac)?;
            out.line(format!("admissible={adm}"));
            out.set("admissible", adm);
        }
        Cmd::Ks(KsCmd::Index { file, strict, out: dest }) => {
            let bytes = std::fs::read(&file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let opts = ks_io::ParseOptions { strict, ..Default::default() };
            let parsed = ks_io::parse_palp(bytes.as_slice(), &opts)?;
            for e in &parsed.skipped {
                eprintln!("warning: skipped block: {e}");
            }
            let n = parsed.records.len();
            let cache = ks_io::build_index(parsed.records).cache(ks_io::fnv1a(&bytes));
            let text = serde_json::to_string(&cache).unwrap();
            match dest {
                Some(d) => std::fs::write(&d, text).map_err(|e| Failure::Usage(format!("{}: {e}", d.display())))?,
                None => out.set("index", &cache),
            }
            out.line(format!("records={n} skipped={}", parsed.skipped.len()));
            out.set("records", n);
        }
    }
    out.emit();
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let error_json = cli.error_json;
    let fail = |code: u8, kind: &str, msg: String| {
        if error_json {
            eprintln!("{}", json!({ "schema_version": SCHEMA_VERSION, "error": kind, "message": msg }));
        } else {
            eprintln!("error: {msg}");
        }
        ExitCode::from(code)
    };
    if cli.seed.is_some() {
        return fail(2, "usage", "--seed is not supported: all algorithms are deterministic".into());
    }
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => fail(2, "usage", m),
        Err(Failure::Domain(m)) => fail(1, "domain", m),
    }
}
