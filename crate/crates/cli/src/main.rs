use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hermhull::constacyclic::{self, ExponentVector};
use hermhull::factorizer::{self, FactorOptions, FactorizationReport};
use hermhull::quasitwisted::{self, QtCode, QtRing};
use hermhull::verify::{self, Suite};
use hermhull::{arith, json as hj, mds, oracle, Elem, Error, Field};

/// Overrides the exhaustive-scan work bounds (codewords, divisors, subspaces).
const WORK_BOUND_ENV: &str = "HERMHULL_WORK_BOUND";

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_BOUND: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "hermhull", version, about = "Constacyclic and quasi-twisted Hermitian self-dual codes over F_{q^2}")]
struct Cli {
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor x^n - lambda into irreducibles, grouped by conjugate-reciprocal type.
    Factor {
        #[command(flatten)]
        inst: Instance,
        /// Use the (k+1)-th admissible root of unity instead of the first.
        #[arg(long, default_value_t = 0)]
        xi_rank: usize,
    },
    /// Count Hermitian self-dual, LCD or all lambda-constacyclic codes.
    Count {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        kind: Kind,
        /// Also count by scanning every divisor with linear algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// List the codes behind `count`, at most `--limit` of them.
    Enumerate {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        kind: Kind,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Possible Hermitian hull dimensions of lambda-constacyclic codes.
    HullSpectrum {
        #[command(flatten)]
        inst: Instance,
    },
    /// MDS self-dual constacyclic codes: construction and nonexistence.
    #[command(subcommand)]
    Mds(MdsCmd),
    /// Quasi-twisted codes: counts and CRT decomposition.
    #[command(subcommand)]
    Qt(QtCmd),
    /// Compare closed forms against brute force.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum MdsCmd {
    /// Build the MDS self-dual code with T = {ir + 1 : i < n/2} and certify it.
    Construct {
        #[command(flatten)]
        inst: Instance,
    },
    /// Test the nonexistence criterion for MDS self-dual codes.
    Exists {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Also search every self-dual defining set exhaustively.
        #[arg(long)]
        search: bool,
    },
}

#[derive(Subcommand)]
enum QtCmd {
    /// Number of (lambda, ell)-QT Hermitian self-dual codes.
    Count {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        ell: usize,
    },
    /// Split a QT code, given by generator matrix JSON, into CRT components.
    Decompose {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        ell: usize,
        /// JSON file with the generator matrix; `-` reads stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Rebuild a QT code from CRT components as emitted by `qt decompose`.
    Reconstruct {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value = "-")]
        input: String,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Characteristic; the code alphabet is F_{q^2} with q = p^e.
    #[arg(long, requires = "e", conflicts_with = "q")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    e: Option<u32>,
    /// Prime power q, instead of --p/--e.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Clone)]
struct Instance {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: u64,
    /// `g^k` (power of the canonical generator), `[c0,c1,...]` or an integer such as `-1`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args, Clone, Copy)]
#[group(required = true, multiple = false)]
struct Kind {
    #[arg(long)]
    self_dual: bool,
    #[arg(long)]
    lcd: bool,
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Factor,
    Hull,
    Counts,
    Mds,
    Qt,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Factor => Suite::Factor,
            SuiteArg::Hull => Suite::Hull,
            SuiteArg::Counts => Suite::Counts,
            SuiteArg::Mds => Suite::Mds,
            SuiteArg::Qt => Suite::Qt,
        }
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<(Value, u8), Failure>;

impl FieldArgs {
    fn q(&self) -> Result<u64, Failure> {
        match (self.p, self.e, self.q) {
            (Some(p), Some(e), None) => {
                if !arith::is_prime(p) {
                    return Err(Failure::Usage(format!("--p {p} is not prime")));
                }
                arith::checked_pow(p, e).ok_or_else(|| Failure::Usage("p^e overflows".into()))
            }
            (None, None, Some(q)) => match arith::prime_power(q) {
                Some(_) => Ok(q),
                None => Err(Failure::Usage(format!("--q {q} is not a prime power"))),
            },
            _ => Err(Failure::Usage("give either --p and --e, or --q".into())),
        }
    }

    fn field(&self) -> Result<Field, Failure> {
        let q = self.q()?;
        if q < 2 || self.e == Some(0) {
            return Err(Failure::Usage("q must be at least 2".into()));
        }
        Ok(verify::make_field_q2(q)?)
    }
}

fn parse_lambda(f: &Field, s: &str) -> Result<Elem, Failure> {
    let s = s.trim();
    let lam = if let Some(k) = s.strip_prefix("g^") {
        let k: i64 = k.parse().map_err(|_| Failure::Usage(format!("bad exponent in {s:?}")))?;
        f.gen_pow(k.rem_euclid(f.order() as i64 - 1) as u64)
    } else if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad coefficient list {s:?}: {e}")))?;
        let cs = v.as_array().ok_or_else(|| Failure::Usage("coefficient list expected".into()))?;
        // F_{q^2} sits over F_p, so coefficients are integers mod p
        if cs.len() > f.degree() {
            return Err(Failure::Usage(format!("at most {} coefficients", f.degree())));
        }
        let cs = cs
            .iter()
            .map(|c| c.as_i64().map(|i| f.from_int(i)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Failure::Usage(format!("coefficients of {s:?} must be integers")))?;
        f.from_coeffs(&cs)
    } else {
        let i: i64 = s
            .parse()
            .map_err(|_| Failure::Usage(format!("lambda {s:?} is not g^k, [c0,...] or an integer")))?;
        f.from_int(i)
    };
    if lam == 0 {
        return Err(Failure::Usage("lambda must be nonzero".into()));
    }
    Ok(lam)
}

impl Instance {
    fn resolve(&self) -> Result<(Field, u64, Elem), Failure> {
        let f = self.field.field()?;
        if self.n == 0 {
            return Err(Failure::Usage("--n must be positive".into()));
        }
        let lam = parse_lambda(&f, &self.lambda)?;
        Ok((f, self.n, lam))
    }

    fn report(&self) -> Result<Arc<FactorizationReport>, Failure> {
        let (f, n, lam) = self.resolve()?;
        Ok(Arc::new(factorizer::factorize(&f, n, lam)?))
    }
}

fn work_bound(default: u128) -> Result<u128, Failure> {
    match std::env::var(WORK_BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{WORK_BOUND_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(default),
    }
}

fn read_input(path: &str) -> Result<Value, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    }
    serde_json::from_str(&s).map_err(|e| Failure::Usage(format!("input is not JSON: {e}")))
}

fn instance_json(r: &FactorizationReport) -> Value {
    let f = r.field();
    json!({
        "field": hj::field(f),
        "n": r.n(),
        "lambda": hj::elem(f, r.norm.lam),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(x), Value::Object(y)) = (&mut a, b) {
        x.extend(y);
    }
    a
}

fn kind_name(k: Kind) -> &'static str {
    if k.self_dual {
        "self-dual"
    } else if k.lcd {
        "lcd"
    } else {
        "all"
    }
}

fn count(inst: &Instance, kind: Kind, with_oracle: bool) -> Out {
    let r = inst.report()?;
    let mut body = merge(instance_json(&r), json!({"kind": kind_name(kind), "s": r.s, "t": r.t}));
    let value = if kind.self_dual {
        let c = constacyclic::count_self_dual(&r);
        body = merge(body, hj::self_dual_count(&c));
        c.count
    } else if kind.lcd {
        let c = constacyclic::count_lcd(&r);
        body = merge(body, json!({"count": hj::big(&c), "formula": "2^(s+t)"}));
        c
    } else {
        let c = constacyclic::count_all(&r);
        body = merge(body, json!({"count": hj::big(&c), "formula": "(p^nu+1)^(s+2t)"}));
        c
    };
    if with_oracle {
        let (f, n, lam) = inst.resolve()?;
        let scan = oracle::divisor_scan(&f, n as usize, lam, work_bound(oracle::DIVISOR_BOUND)?)?;
        let c = scan
            .value
            .iter()
            .filter(|d| (!kind.self_dual || d.self_dual) && (!kind.lcd || d.lcd))
            .count();
        body = merge(
            body,
            json!({"oracle": {
                "count": c.to_string(),
                "method": scan.method.to_string(),
                "work": scan.work,
                "agrees": value == c.into(),
            }}),
        );
    }
    Ok((body, 0))
}

fn enumerate(inst: &Instance, kind: Kind, limit: usize) -> Out {
    let r = inst.report()?;
    let (total, it): (_, Box<dyn Iterator<Item = ExponentVector>>) = if kind.self_dual {
        (constacyclic::count_self_dual(&r).count, constacyclic::enumerate_self_dual(&r))
    } else if kind.lcd {
        (constacyclic::count_lcd(&r), Box::new(constacyclic::enumerate_lcd(&r)))
    } else {
        (constacyclic::count_all(&r), Box::new(constacyclic::enumerate_all(&r)))
    };
    let mut codes = Vec::new();
    for e in it.take(limit) {
        let c = constacyclic::code_from_exponents(&r, e)?;
        codes.push(json!({
            "exponents": hj::exponents(c.exponents()),
            "generator": hj::poly(c.generator()),
            "dim": c.dim(),
            "hull_dim": constacyclic::hull_dimension(&c),
        }));
    }
    let truncated = total > codes.len().into();
    Ok((
        merge(
            instance_json(&r),
            json!({
                "kind": kind_name(kind),
                "count": hj::big(&total),
                "emitted": codes.len(),
                "truncated": truncated,
                "codes": codes,
            }),
        ),
        0,
    ))
}

fn hull_spectrum(inst: &Instance) -> Out {
    let r = inst.report()?;
    let classes: Vec<Value> = r
        .classes
        .iter()
        .map(|c| {
            let top = if c.pi == 0 {
                c.gamma_or_beta * (r.multiplicity / 2)
            } else {
                c.gamma_or_beta * r.multiplicity
            };
            json!({"j": c.j, "pi": c.pi, "coset_size": c.ord, "max_multiple": top})
        })
        .collect();
    Ok((
        merge(
            instance_json(&r),
            json!({"spectrum": constacyclic::hull_dim_spectrum(&r), "classes": classes}),
        ),
        0,
    ))
}

fn mds_exists(field: &FieldArgs, n: u64, r: u64, search: bool) -> Out {
    let q = field.q()?;
    let witness = mds::mds_nonexistence(q, n, r)?;
    let mut body = json!({
        "q": q,
        "n": n,
        "r": r,
        "witness": witness,
        "excluded": witness.is_some(),
    });
    if search {
        let sets = mds::self_dual_defining_sets(q, n, r)?;
        let f = field.field()?;
        let lam = f.gen_pow((q * q - 1) / r);
        let report = Arc::new(factorizer::factorize(&f, n, lam)?);
        let bound = work_bound(oracle::CODEWORD_BOUND)?;
        let mut found = Vec::new();
        let mut work = 0;
        for t in &sets {
            let code = mds::code_from_cosets(t, &report)?;
            let d = oracle::exhaustive_min_distance(&constacyclic::generator_matrix(&code), bound)?;
            work += d.work;
            if d.value as u64 == n - code.dim() as u64 + 1 {
                found.push(json!({"defining_set": t.elems, "generator": hj::poly(code.generator())}));
            }
        }
        body = merge(
            body,
            json!({"search": {
                "self_dual_defining_sets": sets.len(),
                "mds_codes": found,
                "codewords_scanned": work,
            }}),
        );
    }
    Ok((body, 0))
}

fn qt_decompose(inst: &Instance, ell: usize, input: &str) -> Out {
    let (f, n, lam) = inst.resolve()?;
    let ring = QtRing::new(&f, n as usize, lam)?;
    let v = read_input(input)?;
    let m = hj::parse_matrix(&f, v.get("generator_matrix").unwrap_or(&v))?;
    let code = QtCode::generated_by(&f, n as usize, ell, lam, &m.row_vecs())?;
    let parts = ring.decompose(&code)?;
    Ok((
        json!({
            "field": hj::field(&f),
            "n": n,
            "lambda": hj::elem(&f, lam),
            "code": hj::qt_code(&code),
            "hermitian_self_dual": ring.is_hermitian_self_dual(&code)?,
            "components": hj::crt_components(&ring, &parts),
        }),
        0,
    ))
}

fn qt_reconstruct(inst: &Instance, input: &str) -> Out {
    let (f, n, lam) = inst.resolve()?;
    let ring = QtRing::new(&f, n as usize, lam)?;
    let v = read_input(input)?;
    let parts = hj::parse_crt_components(&ring, v.get("components").unwrap_or(&v))?;
    let code = ring.reconstruct(&parts)?;
    Ok((
        json!({
            "field": hj::field(&f),
            "n": n,
            "lambda": hj::elem(&f, lam),
            "code": hj::qt_code(&code),
            "hermitian_self_dual": code.is_hermitian_self_dual()?,
        }),
        0,
    ))
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Factor { inst, xi_rank } => {
            let (f, n, lam) = inst.resolve()?;
            let r = factorizer::factorize_with(&f, n, lam, FactorOptions { xi_rank: *xi_rank })?;
            Ok((hj::factorization(&r), 0))
        }
        Cmd::Count { inst, kind, oracle } => count(inst, *kind, *oracle),
        Cmd::Enumerate { inst, kind, limit } => enumerate(inst, *kind, *limit),
        Cmd::HullSpectrum { inst } => hull_spectrum(inst),
        Cmd::Mds(MdsCmd::Construct { inst }) => {
            let (f, n, lam) = inst.resolve()?;
            let m = mds::construct_tmds(&f, n, lam, work_bound(oracle::CODEWORD_BOUND)?)?;
            Ok((hj::mds_code(&m), 0))
        }
        Cmd::Mds(MdsCmd::Exists { field, n, r, search }) => mds_exists(field, *n, *r, *search),
        Cmd::Qt(QtCmd::Count { inst, ell }) => {
            let (f, n, lam) = inst.resolve()?;
            let c = quasitwisted::count_qt_self_dual(&f, n as usize, lam, *ell)?;
            Ok((
                json!({
                    "field": hj::field(&f),
                    "n": n,
                    "lambda": hj::elem(&f, lam),
                    "ell": ell,
                    "result": hj::qt_count(&c),
                }),
                0,
            ))
        }
        Cmd::Qt(QtCmd::Decompose { inst, ell, input }) => qt_decompose(inst, *ell, input),
        Cmd::Qt(QtCmd::Reconstruct { inst, input }) => qt_reconstruct(inst, input),
        Cmd::Verify { suite, max_n } => {
            let r = verify::run_suite((*suite).into(), *max_n)?;
            let code = if r.passed() { 0 } else { EXIT_VERIFY_FAILED };
            Ok((r.to_json(), code))
        }
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Factor { .. } => "factor",
        Cmd::Count { .. } => "count",
        Cmd::Enumerate { .. } => "enumerate",
        Cmd::HullSpectrum { .. } => "hull-spectrum",
        Cmd::Mds(MdsCmd::Construct { .. }) => "mds construct",
        Cmd::Mds(MdsCmd::Exists { .. }) => "mds exists",
        Cmd::Qt(QtCmd::Count { .. }) => "qt count",
        Cmd::Qt(QtCmd::Decompose { .. }) => "qt decompose",
        Cmd::Qt(QtCmd::Reconstruct { .. }) => "qt reconstruct",
        Cmd::Verify { .. } => "verify",
    }
}

fn emit(doc: &Value, path: Option<&std::path::Path>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (doc, code) = match run(&cli) {
        Ok((body, code)) => (hj::document(command_name(&cli.cmd), body), code),
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Usage(m) => ("usage", m, EXIT_USAGE),
                Failure::Io(m) => ("io", m, EXIT_USAGE),
                Failure::Lib(e) if e.is_bound() => ("work-bound", e.to_string(), EXIT_BOUND),
                Failure::Lib(e @ (Error::Precondition(_) | Error::NoConjugation(_))) => {
                    ("precondition", e.to_string(), EXIT_PRECONDITION)
                }
                Failure::Lib(e) => ("invalid", e.to_string(), EXIT_USAGE),
            };
            eprintln!("hermhull: {msg}");
            (hj::error_document(kind, &msg), code)
        }
    };
    if let Err(e) = emit(&doc, cli.output.as_deref()) {
        eprintln!("hermhull: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}
