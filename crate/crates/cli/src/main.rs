use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descent_algebra::combinatorics::Composition;
use descent_algebra::exact_linalg::Polynomial;
use descent_algebra::face_monoid::enumerate_faces;
use descent_algebra::knapsack::{
    knapsack_number, knapsack_spectrum, signed_knapsack, signed_spectrum, weighted_knapsack,
    weighted_signed, weighted_signed_spectrum, weighted_spectrum, SpectrumSet, WeightVector,
};
use descent_algebra::scalar::{is_prime, SUPPORTED_PRIMES};
use descent_algebra::theorems::{
    applicable_claims, min_poly_of, run_claim, BoundKind, Bounds, Claim, ElementSelector,
    SuiteConfig, VerificationReport,
};
use descent_algebra::{with_prime, Error, Rational, Result, Scalar};
use serde_json::{json, Map, Value};

// A closed pipe (e.g. `| head`) ends the program quietly.
macro_rules! emit {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "descent-algebra",
    version,
    about = "Spectra and minimal polynomials in the descent algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Knapsack and signed knapsack spectra with face counts.
    Spectrum(Common),
    /// Minimal polynomial of a selected element of kS_n.
    Minpoly(Common),
    /// Run verifiers and stream their reports.
    Verify(Common),
    /// List the faces of [n] in canonical order.
    Faces(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Field {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    /// Composition of n, e.g. 2,1,3.
    #[arg(long)]
    alpha: Option<Composition>,
    /// JSON file mapping compositions to nonnegative rational weights.
    #[arg(long)]
    gamma: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "Q")]
    field: Field,
    /// Prime modulus when --field Fp.
    #[arg(long)]
    p: Option<u64>,
    /// One of Balpha, w0Balpha, Balphaw0, T1, w0T1, T1w0, Bgamma, w0Bgamma.
    #[arg(long)]
    element: Option<ElementSelector>,
    /// Claim to verify.
    #[arg(long, conflicts_with = "all")]
    claim: Option<Claim>,
    /// Verify every claim within the bounds.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    /// Raise every size bound to this n.
    #[arg(long)]
    max_n_override: Option<usize>,
}

impl Common {
    fn bounds(&self) -> Bounds {
        self.max_n_override
            .map_or_else(Bounds::default, Bounds::overridden)
    }

    fn check_bound(&self, kind: BoundKind) -> Result<()> {
        let max = self.bounds().limit(kind);
        if self.n > max {
            return Err(Error::TooLarge { n: self.n, max });
        }
        Ok(())
    }

    fn alpha(&self) -> Result<Option<&Composition>> {
        match &self.alpha {
            Some(a) if a.n() != self.n => Err(Error::InvalidComposition(format!(
                "{a} is not a composition of {}",
                self.n
            ))),
            a => Ok(a.as_ref()),
        }
    }

    fn gamma(&self) -> Result<Option<WeightVector>> {
        let Some(path) = &self.gamma else {
            return Ok(None);
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        WeightVector::from_json(self.n, &v).map(Some)
    }

    fn prime(&self) -> Result<u64> {
        let p = self
            .p
            .ok_or_else(|| Error::MissingArgument("--field Fp needs --p".into()))?;
        if !is_prime(p) {
            return Err(Error::InvalidScalar(format!("{p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::InvalidScalar(format!(
                "modulus {p} is not supported; choose one of {SUPPORTED_PRIMES:?}"
            )));
        }
        Ok(p)
    }
}

fn spectrum_json<T: Ord + Clone + Display>(s: &SpectrumSet<T>) -> Value {
    let counts: Map<String, Value> = s.counts().map(|(v, c)| (v.to_string(), json!(c))).collect();
    json!({ "values": s.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(), "counts": counts })
}

fn spectrum_text<T: Ord + Clone + Display>(s: &SpectrumSet<T>) -> String {
    let parts: Vec<String> = s.counts().map(|(v, c)| format!("{v} ({c})")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_spectrum(a: &Common) -> Result<bool> {
    a.check_bound(BoundKind::Combinatorics)?;
    let alpha = a.alpha()?;
    let gamma = a.gamma()?;
    let (label, plain, signed) = match (alpha, &gamma) {
        (Some(alpha), None) => {
            let p = knapsack_spectrum(alpha);
            let s = signed_spectrum(alpha);
            (
                ("alpha", alpha.to_string()),
                (spectrum_json(&p), spectrum_text(&p), csv_rows(&p)),
                (spectrum_json(&s), spectrum_text(&s), csv_rows(&s)),
            )
        }
        (None, Some(g)) => {
            let p = weighted_spectrum(g);
            let s = weighted_signed_spectrum(g);
            (
                ("gamma", g.to_json().to_string()),
                (spectrum_json(&p), spectrum_text(&p), csv_rows(&p)),
                (spectrum_json(&s), spectrum_text(&s), csv_rows(&s)),
            )
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either --alpha or --gamma, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::MissingArgument(
                "spectrum needs --alpha or --gamma".into(),
            ))
        }
    };
    match a.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("n".into(), json!(a.n));
            m.insert(label.0.into(), Value::String(label.1));
            m.insert("knapsack".into(), plain.0);
            m.insert("signed".into(), signed.0);
            emit!("{}", Value::Object(m));
        }
        Format::Csv => {
            emit!("kind,value,faces");
            for (v, c) in plain.2 {
                emit!("knapsack,{v},{c}");
            }
            for (v, c) in signed.2 {
                emit!("signed,{v},{c}");
            }
        }
        Format::Pretty => {
            emit!("n = {}, {} = {}", a.n, label.0, label.1);
            emit!("knapsack: {}", plain.1);
            emit!("signed:   {}", signed.1);
        }
    }
    Ok(true)
}

fn csv_rows<T: Ord + Clone + Display>(s: &SpectrumSet<T>) -> Vec<(String, usize)> {
    s.counts().map(|(v, c)| (v.to_string(), *c)).collect()
}

fn poly_output<S: Scalar>(a: &Common, sel: ElementSelector, field: &str, mu: &Polynomial<S>) {
    let factored = if S::characteristic() == 0 {
        mu.to_factored_string()
    } else {
        None
    };
    let coeffs: Vec<String> = mu.coeffs().iter().map(|c| c.to_string()).collect();
    match a.format {
        Format::Json => emit!(
            "{}",
            json!({
                "n": a.n,
                "element": sel.name(),
                "field": field,
                "coefficients": coeffs,
                "factored": factored,
            })
        ),
        Format::Csv => {
            emit!("degree,coefficient");
            for (i, c) in coeffs.iter().enumerate() {
                emit!("{i},{c}");
            }
        }
        Format::Pretty => {
            emit!("{}", factored.unwrap_or_else(|| mu.to_coefficient_string()));
        }
    }
}

fn cmd_minpoly(a: &Common) -> Result<bool> {
    a.check_bound(BoundKind::GroupAlgebra)?;
    let sel = a
        .element
        .ok_or_else(|| Error::MissingArgument("minpoly needs --element".into()))?;
    let alpha = a.alpha()?;
    let gamma = a.gamma()?;
    match a.field {
        Field::Q => {
            let mu = min_poly_of::<Rational>(sel, a.n, alpha, gamma.as_ref())?;
            poly_output(a, sel, "Q", &mu);
        }
        Field::Fp => {
            let p = a.prime()?;
            with_prime!(p, P => {
                let mu = min_poly_of::<descent_algebra::Fp<P>>(sel, a.n, alpha, gamma.as_ref())?;
                poly_output(a, sel, &format!("F{P}"), &mu);
            })
            .ok_or_else(|| Error::InvalidScalar(format!("unsupported modulus {p}")))?;
        }
    }
    Ok(true)
}

fn report_line(a: &Common, r: &VerificationReport) {
    match a.format {
        Format::Json => emit!("{}", r.to_json()),
        Format::Csv => {
            let params: Vec<String> = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            emit!(
                "{},{},{},{},{}",
                r.claim,
                csv_field(&params.join(" ")),
                if r.pass { "pass" } else { "fail" },
                r.millis,
                csv_field(r.witness.as_deref().unwrap_or(""))
            );
        }
        Format::Pretty => emit!("{r}"),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_verify(a: &Common) -> Result<bool> {
    let bounds = a.bounds();
    let claims = match (a.claim, a.all) {
        (Some(c), _) => vec![c],
        (None, true) => {
            let cs = applicable_claims(a.n, &bounds);
            if cs.is_empty() {
                return Err(Error::TooLarge {
                    n: a.n,
                    max: bounds.combinatorics,
                });
            }
            cs
        }
        (None, false) => {
            return Err(Error::MissingArgument(
                "verify needs --claim or --all".into(),
            ))
        }
    };
    let cfg = SuiteConfig {
        n: a.n,
        alpha: a.alpha()?.cloned(),
        gamma: a.gamma()?,
        p: if a.field == Field::Fp {
            a.prime()?
        } else {
            a.p.unwrap_or(3)
        },
        bounds,
    };
    if a.format == Format::Csv {
        emit!("claim,params,result,millis,witness");
    }
    let mut all_pass = true;
    for claim in claims {
        for r in run_claim(claim, &cfg)? {
            all_pass &= r.pass;
            report_line(a, &r);
        }
    }
    Ok(all_pass)
}

fn cmd_faces(a: &Common) -> Result<bool> {
    a.check_bound(BoundKind::Combinatorics)?;
    let alpha = a.alpha()?;
    let gamma = a.gamma()?;
    let mut header = vec!["face", "type", "length"];
    if alpha.is_some() {
        header.extend(["n_alpha", "signed_alpha"]);
    }
    if gamma.is_some() {
        header.extend(["n_gamma", "signed_gamma"]);
    }
    match a.format {
        Format::Csv => emit!("{}", header.join(",")),
        Format::Pretty => emit!("{}", header.join("\t")),
        Format::Json => {}
    }
    for f in enumerate_faces(a.n) {
        let mut row: Vec<Value> = vec![
            Value::String(f.compact()),
            Value::String(f.face_type().to_string()),
            json!(f.len()),
        ];
        if let Some(alpha) = alpha {
            row.push(json!(knapsack_number(alpha, &f)));
            row.push(json!(signed_knapsack(alpha, &f)));
        }
        if let Some(g) = &gamma {
            row.push(Value::String(weighted_knapsack(g, &f).to_string()));
            row.push(Value::String(weighted_signed(g, &f).to_string()));
        }
        match a.format {
            Format::Json => {
                let m: Map<String, Value> = header.iter().map(|h| h.to_string()).zip(row).collect();
                emit!("{}", Value::Object(m));
            }
            Format::Csv => {
                let cells: Vec<String> = row.iter().map(|v| csv_field(&plain(v))).collect();
                emit!("{}", cells.join(","));
            }
            Format::Pretty => {
                let cells: Vec<String> = row.iter().map(plain).collect();
                emit!("{}", cells.join("\t"));
            }
        }
    }
    Ok(true)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Minpoly(a) => cmd_minpoly(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Faces(a) => cmd_faces(a),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
