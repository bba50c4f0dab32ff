//! Command-line front end for `vertexlab-core`.
//!
//! [`run`] parses an argument vector, runs one computation and returns the
//! exit code together with everything destined for stdout and stderr.
//! Exit codes: 0 success, 2 invalid input, 3 resource limit, 4 internal
//! consistency failure.

pub mod doc;

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vertexlab_core::dtvertex::{
    dt_counts, dt_series, dt_vertex_normalized, macmahon, SearchLimits, DEFAULT_MAX_LEN,
    DEFAULT_MAX_STATES,
};
use vertexlab_core::gv::{
    extract_gv, gv_connected, gv_generate, gv_roundtrip, product_form, reconstruct_from_truncation,
    vd_membership, GVTable,
};
use vertexlab_core::localcurve::{
    correspondence_check, gw_contribution, pairs_contribution, sym_euler, taut_chern_integral,
    CurveData,
};
use vertexlab_core::partitions::renormalized_volume;
use vertexlab_core::ptvertex::{pt_euler_counts, vertex_compare};
use vertexlab_core::qseries::{HalfLaurentSeries, MultiClassSeries, Rational, RationalFunction};
use vertexlab_core::{Error, LegTriple};

use doc::{
    multiclass_from_json, multiclass_to_json, rational_to_json, series_from_json, series_to_json,
    table_from_json, table_to_json, useries_to_json,
};

/// Largest `--order` accepted by the series commands.
pub const MAX_ORDER: i64 = 400;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "vertexlab",
    version,
    about = "Exact DT/PT vertices and Gopakumar-Vafa series calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; comparisons default to text, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result here instead of stdout (`-` for stdout).
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Raw and normalized DT vertex.
    DtVertex(VertexArgs),
    /// PT vertex from finite-field point counts.
    PtVertex(VertexArgs),
    /// Compare the normalized DT vertex with the PT vertex.
    VertexCompare(VertexArgs),
    /// MacMahon series through q^order.
    Macmahon {
        #[arg(long)]
        order: i64,
    },
    /// BPS numbers from a partition function (or a connected potential).
    GvExtract {
        #[command(flatten)]
        input: InputArgs,
        /// The input is already the connected potential F.
        #[arg(long)]
        connected: bool,
    },
    /// Partition function from a GV table.
    GvGenerate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: i64,
        /// Degree cutoff; defaults to the largest degree in the table.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Emit the connected potential F instead of Z.
        #[arg(long, conflicts_with = "product")]
        connected: bool,
        /// Expand the infinite-product form instead of exp(F).
        #[arg(long)]
        product: bool,
    },
    /// extract(log(generate(T))) == T.
    GvRoundtrip {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Full partition function from its coefficients of q^n, n <= 1.
    GvReconstruct {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        order: i64,
    },
    /// Membership of a series or rational function in V_d.
    VdTest {
        #[command(flatten)]
        input: OptionalInputArgs,
        #[arg(long)]
        d: u32,
        /// Numerator coefficients, ascending, comma-separated.
        #[arg(long, requires = "denominator", allow_hyphen_values = true)]
        numerator: Option<String>,
        #[arg(long, requires = "numerator", allow_hyphen_values = true)]
        denominator: Option<String>,
        /// Expansion window for --numerator/--denominator.
        #[arg(long, default_value_t = 12)]
        order: i64,
    },
    /// Pairs and GW contributions of an isolated curve.
    LocalCurve(CurveArgs),
    /// Compare both sides of -q = e^{iu} for an isolated curve.
    Correspondence(CurveArgs),
}

#[derive(Args, Debug)]
struct VertexArgs {
    /// Legs as "mu1;mu2;mu3", rows comma-separated, e.g. "2,1;1;".
    #[arg(long, allow_hyphen_values = true)]
    legs: String,
    #[arg(long)]
    lmax: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input JSON file, `-` for stdin.
    #[arg(long = "in")]
    input: String,
}

#[derive(Args, Debug)]
struct OptionalInputArgs {
    /// Input series JSON file, `-` for stdin.
    #[arg(long = "in", conflicts_with = "numerator")]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    genus: u32,
    /// ∫_C c_1(X).
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long, default_value_t = 8)]
    order: i64,
}

impl Command {
    fn input_path(&self) -> Option<&str> {
        match self {
            Command::GvExtract { input, .. }
            | Command::GvGenerate { input, .. }
            | Command::GvRoundtrip { input, .. }
            | Command::GvReconstruct { input, .. } => Some(&input.input),
            Command::VdTest { input, .. } => input.input.as_deref(),
            _ => None,
        }
    }
}

struct Rendered {
    json: Value,
    text: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_INVALID,
    }
}

fn failure(code: i32, msg: String) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Runs with the process stdin available to `--in -`.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_input(argv, std::io::stdin())
}

pub fn run_with_input<I, T, R>(argv: I, stdin: R) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    R: Read,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let threads = match std::env::var("VERTEXLAB_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                return failure(
                    EXIT_INVALID,
                    format!("VERTEXLAB_THREADS must be a positive integer, got {s:?}"),
                )
            }
        },
        Err(_) => None,
    };
    let stdin_text = if cli.command.input_path() == Some("-") {
        let mut buf = String::new();
        let mut stdin = stdin;
        if let Err(e) = stdin.read_to_string(&mut buf) {
            return failure(EXIT_INVALID, format!("reading stdin: {e}"));
        }
        Some(buf)
    } else {
        None
    };
    let read_input = |path: &str| -> Result<Value, Error> {
        let buf = match &stdin_text {
            Some(t) if path == "-" => t.clone(),
            _ => std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("reading {path}: {e}")))?,
        };
        serde_json::from_str(&buf).map_err(|e| Error::Parse(format!("invalid JSON in {path}: {e}")))
    };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &read_input)),
            Err(e) => return failure(EXIT_INVALID, format!("cannot start {n} threads: {e}")),
        },
        None => dispatch(&cli.command, &read_input),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(e) => return failure(exit_code(&e), e.to_string()),
    };
    let format = cli.format.unwrap_or(match cli.command {
        Command::VertexCompare(_) | Command::Correspondence(_) => Format::Text,
        _ => Format::Json,
    });
    let mut body = match format {
        Format::Json => {
            serde_json::to_string_pretty(&rendered.json).expect("JSON values serialize")
        }
        Format::Text => rendered.text,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match cli.out.as_deref() {
        None | Some("-") => Outcome {
            code: EXIT_OK,
            stdout: body,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => failure(EXIT_INVALID, format!("writing {path}: {e}")),
        },
    }
}

fn check_order(order: i64) -> Result<(), Error> {
    if order < 0 {
        return Err(Error::Domain(format!(
            "order must be non-negative, got {order}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::ResourceLimit(format!(
            "order {order} exceeds configured bound {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn parse_legs(s: &str) -> Result<LegTriple, Error> {
    s.parse()
}

fn limits(a: &VertexArgs) -> SearchLimits {
    SearchLimits {
        max_len: a.max_len,
        max_states: a.max_states,
    }
}

fn dispatch(
    cmd: &Command,
    read: &(dyn Fn(&str) -> Result<Value, Error> + Sync),
) -> Result<Rendered, Error> {
    match cmd {
        Command::DtVertex(a) => dt_vertex_cmd(a),
        Command::PtVertex(a) => pt_vertex_cmd(a),
        Command::VertexCompare(a) => vertex_compare_cmd(a),
        Command::Macmahon { order } => {
            check_order(*order)?;
            let m = macmahon(*order);
            Ok(Rendered {
                json: series_to_json(&m),
                text: m.to_string(),
            })
        }
        Command::GvExtract { input, connected } => {
            let z = multiclass_from_json(&read(&input.input)?)?;
            let f = if *connected { z } else { z.graded_log()? };
            let t = extract_gv(&f)?;
            Ok(Rendered {
                json: table_to_json(&t),
                text: table_text(&t),
            })
        }
        Command::GvGenerate {
            input,
            order,
            cutoff,
            connected,
            product,
        } => {
            check_order(*order)?;
            let t = table_from_json(&read(&input.input)?)?;
            let cutoff = cutoff.unwrap_or_else(|| t.max_degree());
            let z = if *connected {
                gv_connected(&t, *order, cutoff)?
            } else if *product {
                product_form(&t, *order, cutoff)?
            } else {
                gv_generate(&t, *order, cutoff)?
            };
            Ok(Rendered {
                json: multiclass_to_json(&z),
                text: multiclass_text(&z),
            })
        }
        Command::GvRoundtrip { input, cutoff } => {
            let t = table_from_json(&read(&input.input)?)?;
            let cutoff = cutoff.unwrap_or_else(|| t.max_degree());
            let (back, same) = gv_roundtrip(&t, cutoff)?;
            let text = if same {
                format!("ROUNDTRIP OK ({} entries, cutoff {cutoff})", back.len())
            } else {
                format!("ROUNDTRIP MISMATCH\nextracted:\n{}", table_text(&back))
            };
            Ok(Rendered {
                json: json!({ "equal": same, "cutoff": cutoff, "extracted": table_to_json(&back) }),
                text,
            })
        }
        Command::GvReconstruct { input, order } => {
            check_order(*order)?;
            let data = multiclass_from_json(&read(&input.input)?)?;
            let (t, z) = reconstruct_from_truncation(&data, *order)?;
            let text = format!("{}\n{}", table_text(&t), multiclass_text(&z));
            Ok(Rendered {
                json: json!({ "table": table_to_json(&t), "series": multiclass_to_json(&z) }),
                text,
            })
        }
        Command::VdTest {
            input,
            d,
            numerator,
            denominator,
            order,
        } => {
            let s = match (&input.input, numerator, denominator) {
                (Some(path), _, _) => series_from_json(&read(path)?)?,
                (None, Some(n), Some(dn)) => {
                    check_order(*order)?;
                    RationalFunction::new(parse_coeffs(n)?, parse_coeffs(dn)?)?.expand(*order)?
                }
                _ => {
                    return Err(Error::Domain(
                        "vd-test needs --in or --numerator/--denominator".into(),
                    ))
                }
            };
            vd_cmd(&s, *d)
        }
        Command::LocalCurve(a) => local_curve_cmd(a),
        Command::Correspondence(a) => {
            let c = correspondence_check(CurveData::new(a.genus, a.degree), a.order)?;
            let text = if c.equal() {
                format!("EQUAL to u-order {}", a.order)
            } else {
                let diffs: Vec<String> = c
                    .differences
                    .iter()
                    .map(|(k, v)| format!("u^{k}: {v}"))
                    .collect();
                format!("DIFFER at {}", diffs.join(", "))
            };
            let diffs: Vec<Value> = c
                .differences
                .iter()
                .map(|(k, v)| json!([k, rational_to_json(&v.re), rational_to_json(&v.im)]))
                .collect();
            Ok(Rendered {
                json: json!({
                    "genus": a.genus,
                    "degree": a.degree,
                    "order": a.order,
                    "equal": c.equal(),
                    "differences": diffs,
                    "pairs_side": useries_to_json(&c.pairs_side),
                    "gw_side": useries_to_json(&c.gw_side),
                }),
                text,
            })
        }
    }
}

fn parse_coeffs(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational>()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {s:?}")))
        })
        .collect()
}

/// `(-q)^vol * (c0 + c1(-q) + ...)` with zero terms dropped.
pub fn neg_q_text(vol: i64, coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (l, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match l {
            0 => String::new(),
            1 => "(-q)".to_string(),
            _ => format!("(-q)^{l}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}{mono}"),
        });
    }
    let body = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    if vol == 0 {
        body
    } else {
        format!("(-q)^{vol} * ({body})")
    }
}

fn dt_vertex_cmd(a: &VertexArgs) -> Result<Rendered, Error> {
    let legs = parse_legs(&a.legs)?;
    let lim = limits(a);
    let vol = renormalized_volume(&legs)?;
    let counts = dt_counts(&legs, a.lmax, lim)?.counts;
    let raw = dt_series(&legs, a.lmax, lim)?;
    let norm = dt_vertex_normalized(&legs, a.lmax, lim)?;
    let text = format!(
        "counts: {}\nZ = {}\nW = {}",
        counts
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        neg_q_text(vol, &counts),
        norm
    );
    Ok(Rendered {
        json: json!({
            "legs": legs.to_string(),
            "lmax": a.lmax,
            "volume": vol,
            "counts": counts,
            "raw": series_to_json(&raw),
            "normalized": series_to_json(&norm),
        }),
        text,
    })
}

fn pt_vertex_cmd(a: &VertexArgs) -> Result<Rendered, Error> {
    let legs = parse_legs(&a.legs)?;
    let vol = renormalized_volume(&legs)?;
    let e = pt_euler_counts(&legs, a.lmax, limits(a))?;
    let euler = e.euler();
    let series = vertexlab_core::dtvertex::signed_count_series(&euler, vol);
    let lengths: Vec<Value> = e
        .lengths
        .iter()
        .map(|d| {
            json!({
                "length": d.length,
                "samples": d.samples,
                "poly": d.poly.iter().map(rational_to_json).collect::<Vec<_>>(),
                "plus_one_basis": d.plus_one_coeffs.iter().map(rational_to_json).collect::<Vec<_>>(),
                "euler": d.euler,
            })
        })
        .collect();
    Ok(Rendered {
        json: json!({
            "legs": legs.to_string(),
            "lmax": a.lmax,
            "volume": vol,
            "euler": euler,
            "series": series_to_json(&series),
            "lengths": lengths,
        }),
        text: neg_q_text(vol, &euler),
    })
}

fn vertex_compare_cmd(a: &VertexArgs) -> Result<Rendered, Error> {
    let legs = parse_legs(&a.legs)?;
    let c = vertex_compare(&legs, a.lmax, limits(a))?;
    let text = if c.equal() {
        format!("EQUAL to order {}", a.lmax)
    } else {
        let diffs: Vec<String> = c
            .differences
            .iter()
            .map(|(n, d)| format!("q^{n}: {d}"))
            .collect();
        format!("DIFFER at {}", diffs.join(", "))
    };
    let diffs: Vec<Value> = c
        .differences
        .iter()
        .map(|(n, d)| json!([n, rational_to_json(d)]))
        .collect();
    Ok(Rendered {
        json: json!({
            "legs": legs.to_string(),
            "lmax": a.lmax,
            "volume": c.volume,
            "equal": c.equal(),
            "differences": diffs,
            "dt": series_to_json(&c.dt),
            "pt": series_to_json(&c.pt),
        }),
        text,
    })
}

fn vd_cmd(s: &HalfLaurentSeries, d: u32) -> Result<Rendered, Error> {
    let m = vd_membership(s, d)?;
    let witness: Vec<Value> = m
        .witness
        .iter()
        .map(|((g, r), c)| json!([g, r, rational_to_json(c)]))
        .collect();
    let mut text = if m.member {
        format!("MEMBER of V_{d}")
    } else {
        format!("NOT in V_{d}")
    };
    for ((g, r), c) in &m.witness {
        let _ = write!(text, "\n  g={g} r={r}: {c}");
    }
    if !m.member {
        let _ = write!(text, "\n  residual: {}", m.residual);
    }
    Ok(Rendered {
        json: json!({ "d": d, "member": m.member, "witness": witness, "residual": series_to_json(&m.residual) }),
        text,
    })
}

fn local_curve_cmd(a: &CurveArgs) -> Result<Rendered, Error> {
    check_order(a.order)?;
    let c = CurveData::new(a.genus, a.degree);
    let pairs = pairs_contribution(c, a.order)?;
    let gw = gw_contribution(c, a.order)?;
    let top = a.order.max(0) as u64;
    let chern: Vec<Value> = (0..=top)
        .map(|d| rational_to_json(&taut_chern_integral(a.genus, a.degree, d)))
        .collect();
    let sym: Vec<Value> = (0..=top)
        .map(|d| rational_to_json(&sym_euler(a.genus, d)))
        .collect();
    let text = format!("Z_P = {pairs}\nZ_GW = {gw}");
    Ok(Rendered {
        json: json!({
            "genus": a.genus,
            "degree": a.degree,
            "pairs": series_to_json(&pairs),
            "gw": useries_to_json(&gw),
            "chern_integrals": chern,
            "sym_euler": sym,
        }),
        text,
    })
}

fn table_text(t: &GVTable) -> String {
    if t.is_empty() {
        return "(empty table)".into();
    }
    t.iter()
        .map(|(g, b, n)| format!("n[g={g}, class={b}] = {n}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn multiclass_text(z: &MultiClassSeries) -> String {
    let mut lines = vec![format!("constant: {}", z.constant())];
    for b in z.classes_by_degree() {
        lines.push(format!("class {b}: {}", z.get(&b).expect("listed class")));
    }
    lines.join("\n")
}
