//! Command-line front end for the exact character library.
//!
//! Subcommands: `char` evaluates one closed formula and extracts the
//! character, `kl` tabulates Kazhdan-Lusztig polynomials below a weight,
//! `diagram` renders arc and weight diagrams, `shorten` prints the move
//! sequence from the standard arc diagram to its special form, and
//! `verify` sweeps a window of dominant weights cross-checking every
//! applicable formula pair.
//!
//! Exit codes: 0 on success, 1 on usage or data errors, 2 when `verify`
//! finds a failing identity.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use glchar::exactring::Coeff;
use glchar::roots::{normalize_to_integral, rho, standard_atypical_set};
use glchar::weightdiag::{
    enumerate_paths, enumerate_sources, is_totally_connected, kl_polynomial, to_weight_diagram,
};
use glchar::{
    determinantal, expand_to_valuation, extract_character, kac_formula, kw_formula,
    nested_formula, rc_equal, stepwise_formula, su_zhang, truncated_kl_char, ArcDiagram,
    ExponentVector, FormulaResult, LaurentPoly, RationalChar, RhoWeight, SimpleRootSystem,
};

#[derive(Parser)]
#[command(name = "glchar", version, about = "Exact characters of gl(m|n) modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WeightArgs {
    /// Number of eps directions.
    #[arg(long)]
    m: usize,
    /// Number of del directions.
    #[arg(long)]
    n: usize,
    /// rho-shifted highest weight: m eps entries, then n del entries.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "lambda")]
    lambda_rho: Option<Vec<i64>>,
    /// Unshifted highest weight: m eps entries, then n del entries.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lambda: Option<Vec<i64>>,
    /// Simple root order as a string of m 'e's and n 'd's (default standard).
    #[arg(long)]
    pi: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one character formula at a highest weight.
    Char {
        #[command(flatten)]
        weight: WeightArgs,
        /// One of: kac, kw, stepwise, su-zhang, nested, determinantal.
        #[arg(long)]
        formula: String,
        /// Output format: json or ascii.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Tabulate Kazhdan-Lusztig polynomials K[lambda, mu].
    Kl {
        #[command(flatten)]
        weight: WeightArgs,
        /// Restrict the table to a single mu (rho-shifted entries).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        mu_rho: Option<Vec<i64>>,
        /// Budget bounding how far below lambda sources are collected.
        #[arg(long, default_value_t = 5)]
        v: u32,
        /// Output format: json or ascii.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Render the arc diagram and the weight diagram of a weight.
    Diagram {
        #[command(flatten)]
        weight: WeightArgs,
        /// Output format: ascii or json.
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Print the shortening move sequence down to the special diagram.
    Shorten {
        #[command(flatten)]
        weight: WeightArgs,
        /// Output format: ascii or json.
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Cross-check all applicable formulas over a window of weights.
    Verify {
        /// Number of eps directions.
        #[arg(long)]
        m: usize,
        /// Number of del directions.
        #[arg(long)]
        n: usize,
        /// Inclusive entry range for rho-shifted entries, e.g. 0..5.
        #[arg(long)]
        window: String,
        /// Truncation order for the Kazhdan-Lusztig comparison.
        #[arg(long, default_value_t = 5)]
        v: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Char { weight, formula, format } => cmd_char(&weight, &formula, &format),
        Command::Kl { weight, mu_rho, v, format } => cmd_kl(&weight, mu_rho.as_deref(), v, &format),
        Command::Diagram { weight, format } => cmd_diagram(&weight, &format),
        Command::Shorten { weight, format } => cmd_shorten(&weight, &format),
        Command::Verify { m, n, window, v } => cmd_verify(m, n, &window, v),
    }
}

/// Split an entry list into its eps and del halves after a length check.
fn split_entries(values: &[i64], m: usize, n: usize) -> Result<(Vec<i64>, Vec<i64>)> {
    if values.len() != m + n {
        bail!("expected {} entries ({} eps + {} del), got {}", m + n, m, n, values.len());
    }
    Ok((values[..m].to_vec(), values[m..].to_vec()))
}

impl WeightArgs {
    /// Parse the order, shift the weight if it was given unshifted, and
    /// return the rho-shifted weight together with the parity twist that
    /// was added to make it integral.
    fn resolve(&self) -> Result<(SimpleRootSystem, RhoWeight, i64)> {
        let pi = match &self.pi {
            Some(s) => SimpleRootSystem::from_shuffle(s)?,
            None => SimpleRootSystem::standard(self.m, self.n),
        };
        if pi.m() != self.m || pi.n() != self.n {
            bail!(
                "order {} has {} 'e' and {} 'd' nodes, but m={} n={} was given",
                pi.shuffle_string(),
                pi.m(),
                pi.n(),
                self.m,
                self.n
            );
        }
        match (&self.lambda_rho, &self.lambda) {
            (Some(values), None) => {
                let (a, b) = split_entries(values, self.m, self.n)?;
                Ok((pi, RhoWeight::from_integers(&a, &b), 0))
            }
            (None, Some(values)) => {
                let (a, b) = split_entries(values, self.m, self.n)?;
                let lambda = RhoWeight::from_integers(&a, &b);
                let (shifted, c2) = normalize_to_integral(&lambda, &pi)?;
                let lr = shifted.add(&rho(&pi));
                Ok((pi, lr, c2))
            }
            (Some(_), Some(_)) => bail!("give either --lambda-rho or --lambda, not both"),
            (None, None) => bail!("one of --lambda-rho or --lambda is required"),
        }
    }
}

/// Integer entries of an integral rho-shifted weight, eps half first.
fn weight_entries(lr: &RhoWeight) -> Result<Vec<i64>> {
    let (a, b) = lr
        .integer_entries()
        .ok_or_else(|| anyhow!("weight {lr} does not have integer entries"))?;
    Ok(a.into_iter().chain(b).collect())
}

fn compute_formula(
    formula: &str,
    pi: &SimpleRootSystem,
    lr: &RhoWeight,
) -> Result<FormulaResult> {
    let atypical = standard_atypical_set(lr)?;
    let require_standard = |name: &str| -> Result<()> {
        if !pi.is_standard() {
            bail!("formula {name} is defined for the standard order only");
        }
        Ok(())
    };
    let fr = match formula {
        "kac" => kac_formula(lr),
        "kw" => kw_formula(&ArcDiagram::build(pi, lr, &atypical)?)?,
        "stepwise" => stepwise_formula(&ArcDiagram::build(pi, lr, &atypical)?)?,
        "su-zhang" => {
            require_standard("su-zhang")?;
            su_zhang(lr, &atypical)?
        }
        "nested" => {
            require_standard("nested")?;
            nested_formula(lr, &atypical)?
        }
        "determinantal" => {
            require_standard("determinantal")?;
            let special = ArcDiagram::special_direct(lr, &atypical)?;
            determinantal(&special.special_shape()?)?
        }
        other => bail!(
            "unknown formula {other:?}; expected kac, kw, stepwise, su-zhang, nested, or determinantal"
        ),
    };
    Ok(fr)
}

/// Display string for a bare exponent, written as the monomial it names.
fn unit_string(unit: &ExponentVector) -> String {
    LaurentPoly::monomial(unit.clone(), Coeff::from(1)).to_string()
}

fn value_json(value: &RationalChar) -> Value {
    json!({
        "num": value.num.to_string(),
        "den": value.den.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "unit": unit_string(&value.unit),
        "display": value.to_string(),
    })
}

fn cmd_char(weight: &WeightArgs, formula: &str, format: &str) -> Result<ExitCode> {
    let (pi, lr, twist) = weight.resolve()?;
    let fr = compute_formula(formula, &pi, &lr)?;
    let character = extract_character(&fr, &pi)?;
    let dimension = character.eval_at_one();
    match format {
        "json" => {
            let s_set: Vec<Value> = fr
                .meta
                .s_set
                .iter()
                .map(|root| json!([root.plus.1 + 1, root.minus.1 + 1]))
                .collect();
            let envelope = json!({
                "formula": fr.meta.kind.to_string(),
                "m": pi.m(),
                "n": pi.n(),
                "pi": pi.shuffle_string(),
                "lambda_rho": weight_entries(&fr.meta.lambda_rho)?,
                "S": s_set,
                "sign": fr.meta.sign,
                "value": value_json(&fr.value),
                "character": character.to_string(),
                "dimension": dimension.to_string(),
                "checks": {
                    "weyl_invariant": true,
                    "leading_coefficient_one": true,
                    "twist": twist,
                },
            });
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
        "ascii" => {
            println!("formula:    {}", fr.meta.kind);
            println!("order:      {}", pi.shuffle_string());
            println!("lambda+rho: {}", fr.meta.lambda_rho);
            println!("value:      {}", fr.value);
            println!("character:  {character}");
            println!("dimension:  {dimension}");
            if twist != 0 {
                println!("twist:      {twist}");
            }
        }
        other => bail!("unknown format {other:?}; expected json or ascii"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kl(weight: &WeightArgs, mu_rho: Option<&[i64]>, v: u32, format: &str) -> Result<ExitCode> {
    let (pi, lr, _) = weight.resolve()?;
    let dlambda = to_weight_diagram(&lr)?;
    let mut sources = match mu_rho {
        Some(values) => {
            let (a, b) = split_entries(values, pi.m(), pi.n())?;
            vec![to_weight_diagram(&RhoWeight::from_integers(&a, &b))?]
        }
        None => enumerate_sources(&dlambda, v),
    };
    sources.sort_by_key(|d| weight_entries(&d.to_rho_weight()).unwrap_or_default());

    let mut rows = Vec::new();
    for dmu in &sources {
        let kl = kl_polynomial(&dlambda, dmu);
        let paths = enumerate_paths(dmu, &dlambda).len();
        rows.push((weight_entries(&dmu.to_rho_weight())?, kl.to_string(), paths));
    }
    match format {
        "json" => {
            let table: Vec<Value> = rows
                .iter()
                .map(|(mu, kl, paths)| json!({ "mu_rho": mu, "kl": kl, "paths": paths }))
                .collect();
            let envelope = json!({
                "m": pi.m(),
                "n": pi.n(),
                "lambda_rho": weight_entries(&lr)?,
                "v": v,
                "rows": table,
            });
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
        "ascii" => {
            println!("lambda+rho: {lr}");
            for (mu, kl, paths) in &rows {
                let entries: Vec<String> = mu.iter().map(|e| e.to_string()).collect();
                println!("mu_rho=({})  K = {kl}  [{paths} path(s)]", entries.join(","));
            }
        }
        other => bail!("unknown format {other:?}; expected json or ascii"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_diagram(weight: &WeightArgs, format: &str) -> Result<ExitCode> {
    let (pi, lr, _) = weight.resolve()?;
    let atypical = standard_atypical_set(&lr)?;
    let arc = ArcDiagram::build(&pi, &lr, &atypical)?;
    let wd = to_weight_diagram(&lr)?;
    match format {
        "ascii" => {
            println!("arc diagram ({}):", pi.shuffle_string());
            println!("{}", arc.render_ascii());
            println!();
            println!("weight diagram:");
            println!("{}", wd.render_ascii());
        }
        "json" => {
            let arcs: Vec<Value> =
                arc.arcs().iter().map(|&(i, j)| json!([i + 1, j + 1])).collect();
            let envelope = json!({
                "m": pi.m(),
                "n": pi.n(),
                "order": pi.shuffle_string(),
                "lambda_rho": weight_entries(&lr)?,
                "arcs": arcs,
                "arc_diagram": arc.render_ascii(),
                "weight_diagram": wd.render_ascii(),
            });
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
        other => bail!("unknown format {other:?}; expected ascii or json"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_shorten(weight: &WeightArgs, format: &str) -> Result<ExitCode> {
    let (pi, lr, _) = weight.resolve()?;
    if !pi.is_standard() {
        bail!("shortening starts from the standard order");
    }
    let atypical = standard_atypical_set(&lr)?;
    let start = ArcDiagram::build(&pi, &lr, &atypical)?;
    let steps = start.shorten()?;
    let last = steps.last().expect("shortening yields at least the start diagram");
    let shape = last.special_shape()?;
    match format {
        "ascii" => {
            for (k, step) in steps.iter().enumerate() {
                println!("step {k} ({}):", step.order().shuffle_string());
                println!("{}", step.render_ascii());
                println!();
            }
            println!(
                "special shape: p={} q={} r={} t={} s={} z={}",
                shape.p, shape.q, shape.r, shape.t, shape.s, shape.z
            );
        }
        "json" => {
            let rendered: Vec<Value> = steps
                .iter()
                .map(|step| {
                    json!({
                        "order": step.order().shuffle_string(),
                        "render": step.render_ascii(),
                    })
                })
                .collect();
            let envelope = json!({
                "m": pi.m(),
                "n": pi.n(),
                "lambda_rho": weight_entries(&lr)?,
                "steps": rendered,
                "shape": {
                    "p": shape.p, "q": shape.q, "r": shape.r,
                    "t": shape.t, "s": shape.s, "z": shape.z,
                    "a": shape.a, "b": shape.b,
                },
            });
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
        other => bail!("unknown format {other:?}; expected ascii or json"),
    }
    Ok(ExitCode::SUCCESS)
}

/// Strictly dominant integral rho-shifted weights with all entries in
/// `lo..=hi`, in lexicographic order of their entry lists.
fn window_weights(m: usize, n: usize, lo: i64, hi: i64) -> Vec<RhoWeight> {
    fn combos(count: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(next: i64, hi: i64, left: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if left == 0 {
                out.push(current.clone());
                return;
            }
            for value in next..=hi {
                current.push(value);
                rec(value + 1, hi, left - 1, current, out);
                current.pop();
            }
        }
        rec(lo, hi, count, &mut current, &mut out);
        out
    }
    let mut weights = Vec::new();
    for a_set in combos(m, lo, hi) {
        let a: Vec<i64> = a_set.iter().rev().copied().collect();
        for b_set in combos(n, lo, hi) {
            weights.push(RhoWeight::from_integers(&a, &b_set));
        }
    }
    weights.sort_by_key(|lr| weight_entries(lr).unwrap_or_default());
    weights
}

struct VerifyRecord {
    lambda_rho: Vec<i64>,
    identity: &'static str,
    lhs: &'static str,
    rhs: &'static str,
    pass: bool,
    witness: Option<(String, String)>,
}

fn check_pair(
    lambda_rho: &[i64],
    identity: &'static str,
    lhs_name: &'static str,
    rhs_name: &'static str,
    lhs: &RationalChar,
    rhs: &RationalChar,
) -> VerifyRecord {
    let pass = rc_equal(lhs, rhs);
    VerifyRecord {
        lambda_rho: lambda_rho.to_vec(),
        identity,
        lhs: lhs_name,
        rhs: rhs_name,
        pass,
        witness: if pass { None } else { Some((lhs.to_string(), rhs.to_string())) },
    }
}

fn verify_weight(lr: &RhoWeight, pi: &SimpleRootSystem, v: u32) -> Result<Vec<VerifyRecord>> {
    let entries = weight_entries(lr)?;
    let atypical = standard_atypical_set(lr)?;
    let mut records = Vec::new();

    if atypical.is_empty() {
        let kac = kac_formula(lr);
        let kw = kw_formula(&ArcDiagram::build(pi, lr, &atypical)?)?;
        records.push(check_pair(&entries, "kac == kw", "kac", "kw", &kac.value, &kw.value));
    }
    if is_totally_connected(lr)? {
        let sz = su_zhang(lr, &atypical)?;
        let nested = nested_formula(lr, &atypical)?;
        let special = ArcDiagram::special_direct(lr, &atypical)?;
        let kw = kw_formula(&special)?;
        let det = determinantal(&special.special_shape()?)?;
        records.push(check_pair(
            &entries,
            "su-zhang == nested",
            "su-zhang",
            "nested",
            &sz.value,
            &nested.value,
        ));
        records.push(check_pair(
            &entries,
            "su-zhang == kw",
            "su-zhang",
            "kw",
            &sz.value,
            &kw.value,
        ));
        records.push(check_pair(
            &entries,
            "kw == determinantal",
            "kw",
            "determinantal",
            &kw.value,
            &det.value,
        ));
        let expansion = expand_to_valuation(&sz, v);
        let truncated = truncated_kl_char(lr, v)?;
        let pass = expansion.sub(&truncated).is_zero();
        records.push(VerifyRecord {
            lambda_rho: entries.clone(),
            identity: "expansion == kl-truncation",
            lhs: "su-zhang",
            rhs: "kl-sum",
            pass,
            witness: if pass {
                None
            } else {
                Some((expansion.to_string(), truncated.to_string()))
            },
        });
    }
    Ok(records)
}

fn cmd_verify(m: usize, n: usize, window: &str, v: u32) -> Result<ExitCode> {
    let (lo, hi) = window
        .split_once("..")
        .and_then(|(lo, hi)| Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?)))
        .ok_or_else(|| anyhow!("window must look like LO..HI, e.g. 0..5"))?;
    if lo > hi {
        bail!("window is empty: {lo} > {hi}");
    }
    let pi = SimpleRootSystem::standard(m, n);
    let mut weights_checked = 0usize;
    let mut identities = 0usize;
    let mut failures = 0usize;
    for lr in window_weights(m, n, lo, hi) {
        weights_checked += 1;
        for record in verify_weight(&lr, &pi, v)? {
            identities += 1;
            let mut line = json!({
                "m": m,
                "n": n,
                "lambda_rho": record.lambda_rho,
                "identity": record.identity,
                "lhs_formula": record.lhs,
                "rhs_formula": record.rhs,
                "pass": record.pass,
            });
            if let Some((lhs, rhs)) = &record.witness {
                line["witness"] = json!({ "lhs": lhs, "rhs": rhs });
            }
            println!("{line}");
            if !record.pass {
                failures += 1;
            }
        }
    }
    eprintln!("checked {weights_checked} weights, {identities} identities, {failures} failures");
    if failures > 0 {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
