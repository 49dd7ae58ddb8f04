use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use stabkit::arith::{fmt_rational, int, parse_rational};
use stabkit::hall::dt_invariant;
use stabkit::quiver::io::QuiverFile;
use stabkit::quiver::{
    bg_audit_from_table, check_delta_kt_support, fixtures, heart_membership, hn_filtration,
    object_sample, object_walls, realizable_classes, search_k, small_t_classes_at, t_walls,
    validate_vw, DimVector, Fp, HeartInput, Quiver, SearchConfig, SupportData, VWCharge,
};
use stabkit::walls::{
    check_limit_bg, emit_plot_csv, enumerate_wall_decompositions, numerical_wall, self_wall,
    Interval, LatticeBox, Region,
};
use stabkit::{ChargeKind, ChernVector, Error, Rational};

#[derive(Parser)]
#[command(
    name = "stabkit",
    version,
    about = "Exact stability-condition computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twist, rescale and evaluate the charges of a Chern vector.
    Chern {
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        #[arg(long)]
        scale: Option<String>,
        /// Parameter of the tilt and double-tilt charges.
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Check the BG-type inequalities for a Chern vector.
    CheckBg {
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        #[arg(long, value_enum, default_value_t = Form::All)]
        form: Form,
    },
    /// Self wall, a numerical wall, or all wall decompositions in a lattice box.
    Walls {
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        /// Compute only the numerical wall of this subclass.
        #[arg(long, allow_hyphen_values = true)]
        with: Option<String>,
        /// Box half-width in lattice units.
        #[arg(long = "box", default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value = "1,1,2,6")]
        denominators: String,
        #[arg(long, default_value = "(0,inf)", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "(-inf,inf)", allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        emit_plot: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 4.0)]
        alpha_max: f64,
    },
    /// HN filtration of a representation from a quiver file.
    Hn {
        #[arg(long)]
        input: PathBuf,
        /// Also decide membership in the tilted heart at this `t`.
        #[arg(long)]
        t: Option<String>,
    },
    /// Realizable classes, BG audit and support data for a quiver with charge.
    QuiverAudit {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bound: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        t: Option<String>,
    },
    /// Walls in the tilt parameter for a class.
    TWalls {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        bound: Option<String>,
        /// Parameter for the small-t comparison; defaults to t0/2.
        #[arg(long)]
        t: Option<String>,
    },
    /// Naive DT invariant of a class from point counts.
    Dt {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        class: String,
    },
}

#[derive(clap::Args)]
struct Source {
    /// Quiver file with `[quiver]` and `[charge]` tables.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// One of kronecker:L, three-vertex, one-vertex, a2.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = 2)]
    field: u32,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Form {
    Bms,
    Bmt,
    Limit,
    All,
}

/// A run that finished: its results and any violated checks.
struct Outcome {
    results: Value,
    violations: Vec<Value>,
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl From<anyhow::Error> for InputError {
    fn from(e: anyhow::Error) -> Self {
        Self(e)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self(e.into())
    }
}

type Run = std::result::Result<Outcome, InputError>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn chern(s: &str) -> anyhow::Result<ChernVector> {
    ChernVector::parse(s).with_context(|| format!("bad Chern vector {s:?}"))
}

fn rational(s: &str) -> anyhow::Result<Rational> {
    parse_rational(s).with_context(|| format!("bad fraction {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, inputs) = echo(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            let doc = json!({
                "command": name,
                "inputs": inputs,
                "results": out.results,
                "violations": out.violations,
            });
            let text = serde_json::to_string_pretty(&doc).expect("json");
            // A closed pipe on stdout is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn echo(cmd: &Command) -> (&'static str, Value) {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        if !v.is_null() {
            m.insert(k.into(), v);
        }
    };
    let src = |put: &mut dyn FnMut(&str, Value), s: &Source| {
        put(
            "input",
            json!(s.input.as_ref().map(|p| p.display().to_string())),
        );
        put("fixture", json!(s.fixture));
        put("field", json!(s.field));
    };
    let name = match cmd {
        Command::Chern {
            chern,
            twist,
            scale,
            t,
        } => {
            put("chern", json!(chern));
            put("twist", json!(twist));
            put("scale", json!(scale));
            put("t", json!(t));
            "chern"
        }
        Command::CheckBg { chern, form } => {
            put("chern", json!(chern));
            put("form", to_value(form));
            "check-bg"
        }
        Command::Walls {
            chern,
            with,
            bound,
            denominators,
            alpha,
            beta,
            emit_plot,
            resolution,
            alpha_max,
        } => {
            put("chern", json!(chern));
            put("with", json!(with));
            put("box", json!(bound));
            put("denominators", json!(denominators));
            put("alpha", json!(alpha));
            put("beta", json!(beta));
            if let Some(p) = emit_plot {
                put("emit_plot", json!(p.display().to_string()));
                put("resolution", json!(resolution));
                put("alpha_max", json!(alpha_max.to_string()));
            }
            "walls"
        }
        Command::Hn { input, t } => {
            put("input", json!(input.display().to_string()));
            put("t", json!(t));
            "hn"
        }
        Command::QuiverAudit {
            source,
            bound,
            k,
            t,
        } => {
            src(&mut put, source);
            put("bound", json!(bound));
            put("k", json!(k));
            put("t", json!(t));
            "quiver-audit"
        }
        Command::TWalls {
            source,
            class,
            bound,
            t,
        } => {
            src(&mut put, source);
            put("class", json!(class));
            put("bound", json!(bound));
            put("t", json!(t));
            "t-walls"
        }
        Command::Dt { source, class } => {
            src(&mut put, source);
            put("class", json!(class));
            "dt"
        }
    };
    (name, Value::Object(m))
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Chern {
            chern: v,
            twist,
            scale,
            t,
        } => run_chern(&v, twist, scale, &t),
        Command::CheckBg { chern: v, form } => run_check_bg(&v, form),
        Command::Walls {
            chern: v,
            with,
            bound,
            denominators,
            alpha,
            beta,
            emit_plot,
            resolution,
            alpha_max,
        } => run_walls(
            &v,
            with,
            bound,
            &denominators,
            &alpha,
            &beta,
            emit_plot,
            resolution,
            alpha_max,
        ),
        Command::Hn { input, t } => run_hn(&input, t),
        Command::QuiverAudit {
            source,
            bound,
            k,
            t,
        } => run_audit(&source, bound, k, t),
        Command::TWalls {
            source,
            class,
            bound,
            t,
        } => run_t_walls(&source, &class, bound, t),
        Command::Dt { source, class } => run_dt(&source, &class),
    }
}

fn charges(v: &ChernVector, t: &Rational) -> anyhow::Result<Value> {
    let slope = |k: &ChargeKind| -> Value {
        match v.slope(k) {
            Ok(s) => to_value(&s),
            Err(_) => Value::Null,
        }
    };
    let kinds = [
        ("slope", ChargeKind::Slope),
        ("tilt", ChargeKind::tilt(t.clone())?),
        ("double_tilt", ChargeKind::double_tilt(t.clone())?),
        ("bridgeland", ChargeKind::Bridgeland),
    ];
    let mut m = Map::new();
    for (name, k) in kinds {
        m.insert(
            name.into(),
            json!({ "charge": to_value(&v.central_charge(&k)), "slope": slope(&k) }),
        );
    }
    Ok(Value::Object(m))
}

fn run_chern(v: &str, twist: Option<String>, scale: Option<String>, t: &str) -> Run {
    let mut v = chern(v)?;
    let t = rational(t)?;
    let mut results = Map::new();
    results.insert("input".into(), to_value(&v));
    if let Some(th) = twist {
        v = v.twist(&rational(&th)?);
        results.insert("twisted".into(), to_value(&v));
    }
    if let Some(s) = scale {
        v = v.scale_omega(&rational(&s)?)?;
        results.insert("scaled".into(), to_value(&v));
    }
    results.insert("vector".into(), to_value(&v));
    results.insert("charges".into(), charges(&v, &t)?);
    results.insert("delta_bar".into(), json!(fmt_rational(&v.delta_bar())));
    results.insert("nabla_bar".into(), json!(fmt_rational(&v.nabla_bar())));
    results.insert(
        "bms_discrepancy".into(),
        json!(fmt_rational(&v.bms_discrepancy())),
    );
    results.insert(
        "nu".into(),
        v.nu().map(|x| to_value(&x)).unwrap_or(Value::Null),
    );
    results.insert(
        "xi".into(),
        v.xi().map(|x| to_value(&x)).unwrap_or(Value::Null),
    );
    Ok(Outcome {
        results: Value::Object(results),
        violations: Vec::new(),
    })
}

fn run_check_bg(v: &str, form: Form) -> Run {
    let v = chern(v)?;
    let mut results = Map::new();
    let mut violations = Vec::new();
    let all = matches!(form, Form::All);
    if all || matches!(form, Form::Bms) {
        let d = v.bms_discrepancy();
        let holds = v.check_bms();
        let zero = int(0);
        let status = if d < zero {
            "violated"
        } else if d == zero {
            "boundary"
        } else {
            "strict"
        };
        results.insert(
            "bms".into(),
            json!({ "discrepancy": fmt_rational(&d), "holds": holds, "status": status }),
        );
        if !holds {
            violations.push(json!({ "form": "bms", "discrepancy": fmt_rational(&d) }));
        }
    }
    if all || matches!(form, Form::Bmt) {
        let c = v.check_bmt();
        results.insert("bmt".into(), to_value(&c));
        if c.applicable && !c.holds {
            violations.push(
                json!({ "form": "bmt", "v3": fmt_rational(&v.v3), "v1": fmt_rational(&v.v1) }),
            );
        }
    }
    if all || matches!(form, Form::Limit) {
        match check_limit_bg(&v) {
            Ok(c) => {
                if !c.holds {
                    violations.push(json!({ "form": "limit", "value": to_value(&c.value) }));
                }
                results.insert("limit".into(), to_value(&c));
            }
            Err(
                e @ (Error::NotApplicable(_) | Error::DivisionByZero | Error::NegativeRadicand(_)),
            ) => {
                results.insert("limit".into(), json!({ "not_applicable": e.to_string() }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        results: Value::Object(results),
        violations,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_walls(
    v: &str,
    with: Option<String>,
    bound: i64,
    denominators: &str,
    alpha: &str,
    beta: &str,
    emit_plot: Option<PathBuf>,
    resolution: usize,
    alpha_max: f64,
) -> Run {
    let v = chern(v)?;
    let mut results = Map::new();
    match self_wall(&v) {
        Ok(sw) => results.insert("self_wall".into(), to_value(&sw)),
        Err(e @ Error::NotApplicable(_)) => results.insert(
            "self_wall".into(),
            json!({ "not_applicable": e.to_string() }),
        ),
        Err(e) => return Err(e.into()),
    };
    let walls = if let Some(w) = with {
        let w = chern(&w)?;
        let wall = numerical_wall(&v, &w);
        results.insert(
            "walls".into(),
            json!([{ "wall_id": 0, "w": to_value(&w), "wall": to_value(&wall) }]),
        );
        vec![wall]
    } else {
        let dens: Vec<i64> = denominators
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("bad denominators {denominators:?}"))?;
        let dens: [i64; 4] = dens
            .try_into()
            .map_err(|_| anyhow!("expected four denominators"))?;
        if bound < 0 {
            return Err(anyhow!("box bound must be nonnegative").into());
        }
        let region = Region::new(Interval::parse(alpha)?, Interval::parse(beta)?);
        let found =
            enumerate_wall_decompositions(&v, &LatticeBox::symmetric(bound, dens), &region)?;
        let listed: Vec<Value> = found
            .iter()
            .enumerate()
            .map(|(i, d)| {
                json!({ "wall_id": i, "w": to_value(&d.w), "rest": to_value(&d.rest), "wall": to_value(&d.wall) })
            })
            .collect();
        results.insert("walls".into(), Value::Array(listed));
        found.into_iter().map(|d| d.wall).collect()
    };
    if let Some(path) = emit_plot {
        if alpha_max.is_nan() || alpha_max <= 0.0 || resolution == 0 {
            return Err(anyhow!("resolution and alpha-max must be positive").into());
        }
        let file =
            fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
        emit_plot_csv(&walls, resolution, alpha_max, std::io::BufWriter::new(file))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(Outcome {
        results: Value::Object(results),
        violations: Vec::new(),
    })
}

fn read_file(path: &PathBuf) -> anyhow::Result<QuiverFile> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(QuiverFile::parse(&text)?)
}

fn load(source: &Source) -> anyhow::Result<(Arc<Quiver>, VWCharge)> {
    match (&source.input, &source.fixture) {
        (Some(p), None) => {
            let f = read_file(p)?;
            let q = f.quiver()?;
            Ok((q, f.charge()?))
        }
        (None, Some(name)) => fixture(name),
        _ => bail!("give exactly one of --input and --fixture"),
    }
}

fn fixture(name: &str) -> anyhow::Result<(Arc<Quiver>, VWCharge)> {
    if let Some(l) = name.strip_prefix("kronecker:") {
        let l: usize = l
            .parse()
            .with_context(|| format!("bad arrow count in {name:?}"))?;
        if l == 0 {
            bail!("kronecker needs at least one arrow");
        }
        return Ok(fixtures::kronecker(l));
    }
    Ok(match name {
        "three-vertex" => fixtures::three_vertex(),
        "one-vertex" => fixtures::one_vertex(),
        "a2" => fixtures::a2(),
        _ => bail!("unknown fixture {name:?}"),
    })
}

fn dims(s: &str, n: usize) -> anyhow::Result<DimVector> {
    let d = DimVector::parse(s).with_context(|| format!("bad dimension vector {s:?}"))?;
    if d.len() != n {
        bail!("dimension vector {s:?} needs {n} entries");
    }
    Ok(d)
}

fn bound_or_default(bound: Option<String>, n: usize) -> anyhow::Result<DimVector> {
    match bound {
        Some(b) => {
            let d = dims(&b, n)?;
            if !d.is_nonnegative() {
                bail!("bound must be nonnegative");
            }
            Ok(d)
        }
        None => Ok(DimVector(vec![2; n])),
    }
}

fn check_charge(q: &Quiver, z: &VWCharge) -> anyhow::Result<()> {
    let v = validate_vw(q, z);
    if !v.is_empty() {
        bail!(
            "charge is not a very weak stability function: {}",
            v.join("; ")
        );
    }
    Ok(())
}

fn run_hn(input: &PathBuf, t: Option<String>) -> Run {
    let f = read_file(input)?;
    let q = f.quiver()?;
    let z = f.charge()?;
    check_charge(&q, &z)?;
    let rep = f.rep(&q)?;
    let hn = hn_filtration(&rep, &z)?;
    let mut results = Map::new();
    results.insert("class".into(), to_value(&rep.dim_vector()));
    results.insert("semistable".into(), json!(hn.factors.len() <= 1));
    results.insert("hn".into(), to_value(&hn));
    if let Some(t) = t {
        let t = rational(&t)?;
        let input = match f.shifted(&q)? {
            Some((u, ext)) => HeartInput::pair(u, rep, ext)?,
            None => HeartInput::object(rep),
        };
        results.insert("heart".into(), to_value(&heart_membership(&input, &z, &t)?));
    }
    Ok(Outcome {
        results: Value::Object(results),
        violations: Vec::new(),
    })
}

fn run_audit(source: &Source, bound: Option<String>, k: Option<String>, t: Option<String>) -> Run {
    let (q, z) = load(source)?;
    check_charge(&q, &z)?;
    let bound = bound_or_default(bound, q.vertices())?;
    let cfg = SearchConfig::new(Fp::new(source.field)?);
    let table = realizable_classes(&q, &z, &bound, &cfg)?;
    let audit = bg_audit_from_table(&z, &table);
    let support = SupportData::from_table(&z, &table)?;
    let mut violations: Vec<Value> = Vec::new();
    for f in &audit.form_violations {
        violations.push(json!({ "check": "delta_form", "detail": f }));
    }
    for c in &audit.violations {
        violations.push(
            json!({ "check": "bg", "class": to_value(&c.dims), "delta": fmt_rational(&c.delta) }),
        );
    }
    for d in &support.q_violations {
        violations.push(json!({ "check": "support", "class": to_value(d) }));
    }
    if !support.negative_definite_on_ker {
        violations
            .push(json!({ "check": "support", "detail": "Q not negative definite on ker Z" }));
    }
    let mut results = Map::new();
    results.insert("bound".into(), to_value(&bound));
    results.insert("classes".into(), to_value(&table));
    results.insert("bg_audit".into(), to_value(&audit));
    results.insert("support".into(), to_value(&support));
    match (k, t) {
        (Some(k), Some(t)) => {
            let report =
                check_delta_kt_support(&support, &z, &table, &rational(&k)?, &rational(&t)?)?;
            if !report.passes() {
                violations.push(json!({ "check": "delta_kt", "k": k, "t": t }));
            }
            results.insert("delta_kt".into(), to_value(&report));
        }
        (None, Some(t)) => {
            let s = search_k(&support, &z, &rational(&t)?, 40)?;
            results.insert("k_search".into(), to_value(&s));
        }
        (Some(_), None) => return Err(anyhow!("--k needs --t").into()),
        (None, None) => {}
    }
    Ok(Outcome {
        results: Value::Object(results),
        violations,
    })
}

const OBJECT_LIMIT: u64 = 1 << 12;
const OBJECT_SAMPLES: u64 = 512;

fn run_t_walls(source: &Source, class: &str, bound: Option<String>, t: Option<String>) -> Run {
    let (q, z) = load(source)?;
    check_charge(&q, &z)?;
    let v = dims(class, q.vertices())?;
    let bound = match bound {
        Some(b) => bound_or_default(Some(b), q.vertices())?,
        None => DimVector(v.0.iter().map(|x| x.abs()).collect()),
    };
    let field = Fp::new(source.field)?;
    let table = realizable_classes(&q, &z, &bound, &SearchConfig::new(field))?;
    let walls = t_walls(&z, &v, &table)?;
    let mut violations = Vec::new();
    if !walls.no_wall_below_t0 {
        violations.push(json!({ "check": "wall_free_interval", "t0": to_value(&walls.t0) }));
    }
    let mut results = Map::new();
    results.insert("class_walls".into(), to_value(&walls));
    if v.is_nonnegative() && !v.is_zero() {
        let sample = object_sample(&q, field, &v, OBJECT_LIMIT, OBJECT_SAMPLES, 0)?;
        match object_walls(&z, &sample) {
            Ok(ow) => {
                if let Some(t0) = walls.t0.value() {
                    let below: Vec<String> = ow
                        .walls
                        .iter()
                        .filter(|w| *w < t0)
                        .map(fmt_rational)
                        .collect();
                    if !below.is_empty() {
                        violations.push(json!({ "check": "object_wall_below_t0", "walls": below }));
                    }
                }
                results.insert("object_walls".into(), to_value(&ow));
                let t = t.as_deref().map(rational).transpose()?;
                let small = small_t_classes_at(&z, &sample, t.as_ref());
                match small {
                    Ok(s) => {
                        if !s.agree {
                            violations.push(json!({ "check": "small_t", "t": fmt_rational(&s.t) }));
                        }
                        results.insert("small_t".into(), to_value(&s));
                    }
                    Err(e @ Error::NotApplicable(_)) => {
                        results
                            .insert("small_t".into(), json!({ "not_applicable": e.to_string() }));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Err(e @ Error::NotApplicable(_)) => {
                results.insert(
                    "object_walls".into(),
                    json!({ "not_applicable": e.to_string() }),
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        results: Value::Object(results),
        violations,
    })
}

fn run_dt(source: &Source, class: &str) -> Run {
    let (q, z) = load(source)?;
    check_charge(&q, &z)?;
    let v = dims(class, q.vertices())?;
    if !v.is_nonnegative() || v.is_zero() {
        return Err(anyhow!("class must be a nonzero dimension vector").into());
    }
    let report = dt_invariant(&q, &z, &v)?;
    let mut results = to_value(&report);
    results["label"] = json!("naive DT");
    Ok(Outcome {
        results,
        violations: Vec::new(),
    })
}
