//! The `kunion` command line.
//!
//! Every run starts its output with the resolved configuration and then
//! streams report objects. See `docs/json-schema.md` for the JSON layout.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::analysis::{
    fk_scan_csv, minimize_m_k, verify_corollary_main, verify_fk_nonneg, verify_lemma_cl, verify_lemma_main_small,
    verify_mk_bounds, DEFAULT_EXCLUSION, DEFAULT_GRID,
};
use crate::constants::{
    bits_for_tolerance, check_table1, frequency_bound_with, table1, verify_lemma_mu_with, verify_prop_zk_with,
    BoundQuery, ConstantsRow, FrequencyBound,
};
use crate::error::Error;
use crate::numerics::{parse_rational, Sign};
use crate::paperpoly::{
    appendix_a_reports, build_p_parts, check_p0_sign, check_p4_patterns, check_structure, check_table2,
    check_unit_interval_roots, derivative_root_pattern, discriminant_sign_pattern, pattern_from_discriminants,
    rolle_consistent, unit_interval_root_count, AlphaPoly,
};
use crate::report::{overall_status, PaperCheckReport, Status, SCHEMA_VERSION};
use crate::simulate::{verify_simulation, SimReport};

/// Exit code for usage errors and invalid parameters.
pub const USAGE_EXIT: i32 = 3;

pub const DEFAULT_PRECISION: &str = "128";
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_M_TRIALS: u64 = 100_000;
pub const DEFAULT_ENTROPY_TRIALS: u64 = 10_000;
pub const DEFAULT_SIM_TRIALS: u64 = 100_000;
pub const DEFAULT_CONSTANTS_KMAX: u64 = 10_000;
pub const DEFAULT_RATIO_K: u64 = 1 << 20;
pub const MINIMIZE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "kunion", version, about = "Certified checks for almost k-union closed set systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working precision: bits (`128`) or an absolute tolerance (`1e-6`).
    #[arg(long, global = true, env = "KUNION_PRECISION", default_value = DEFAULT_PRECISION)]
    pub prec: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Omit the timestamp so that identical configs give identical output.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

/// A single `k` or the range `2..=kmax`.
#[derive(Debug, Clone, Args)]
pub struct KRange {
    /// Comma separated values of k.
    #[arg(long, value_delimiter = ',', conflicts_with = "kmax")]
    pub k: Option<Vec<u64>>,
    /// Use every k in 2..=kmax.
    #[arg(long)]
    pub kmax: Option<u64>,
}

impl KRange {
    fn resolve(&self, default: &[u64]) -> Vec<u64> {
        match (&self.k, self.kmax) {
            (Some(ks), _) => ks.clone(),
            (None, Some(m)) => (2..=m).collect(),
            (None, None) => default.to_vec(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// phi_k, psi_k, z_k, alpha_k, mu_k (default k = 2..8 and 16).
    Table(KRange),
    /// The polynomial p_k and its reference checks.
    Poly {
        #[arg(long)]
        k: u64,
    },
    /// Root counts of p_k in (0,1) (default k = 2..4).
    Roots(KRange),
    /// Discriminant signs and real-root counts of the derivatives of p_k.
    Discriminants {
        #[arg(long, default_value_t = 4)]
        k: u64,
    },
    /// Nonnegativity of f_k on [0,1] (default k = 2..8).
    VerifyFk {
        #[command(flatten)]
        ks: KRange,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_EXCLUSION)]
        exclusion: f64,
        /// With --format csv, emit this many grid values of f_k instead.
        #[arg(long)]
        scan_points: Option<usize>,
    },
    /// The two-variable entropy inequality and the M_k suite (default k = 2..6).
    VerifyM {
        #[command(flatten)]
        ks: KRange,
        #[arg(long, default_value_t = DEFAULT_M_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The derivatives, sign evaluations and root pattern of p_4.
    VerifyAppendix {
        #[arg(long, default_value_t = 4)]
        k: u64,
    },
    /// The propositions on z_k and mu_k for k <= kmax.
    VerifyConstants {
        #[arg(long, default_value_t = DEFAULT_CONSTANTS_KMAX)]
        kmax: u64,
        /// k at which z_k / psi_k is compared with its limit.
        #[arg(long, default_value_t = DEFAULT_RATIO_K)]
        ratio_k: u64,
    },
    /// The entropy inequality for independent random sets (default k = 2..3).
    VerifyEntropyLemma {
        #[command(flatten)]
        ks: KRange,
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_ENTROPY_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Monte Carlo on the extremal family.
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_SIM_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Guaranteed element frequency for an approximately closed family.
    Bound {
        #[arg(long)]
        k: u64,
        /// Exact decimal or fraction, e.g. `0.001` or `1/1000`.
        #[arg(long)]
        eps: String,
        #[arg(long)]
        family_size: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Table(_) => "table",
            Command::Poly { .. } => "poly",
            Command::Roots(_) => "roots",
            Command::Discriminants { .. } => "discriminants",
            Command::VerifyFk { .. } => "verify-fk",
            Command::VerifyM { .. } => "verify-m",
            Command::VerifyAppendix { .. } => "verify-appendix",
            Command::VerifyConstants { .. } => "verify-constants",
            Command::VerifyEntropyLemma { .. } => "verify-entropy-lemma",
            Command::Simulate { .. } => "simulate",
            Command::Bound { .. } => "bound",
        }
    }
}

/// Parsed `--prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct Precision {
    pub bits: u32,
    /// Set when the precision was given as a tolerance.
    pub tolerance: Option<f64>,
}

impl Precision {
    pub fn parse(s: &str) -> Result<Precision, Error> {
        let s = s.trim();
        if let Ok(bits) = s.parse::<u32>() {
            if !(24..=4096).contains(&bits) {
                return Err(Error::InvalidParameter(format!("precision must lie in 24..=4096 bits, got {bits}")));
            }
            return Ok(Precision { bits, tolerance: None });
        }
        let tol: f64 = s.parse().map_err(|_| Error::Parse(format!("bad precision {s:?}")))?;
        Ok(Precision { bits: bits_for_tolerance(tol)?, tolerance: Some(tol) })
    }

    /// Decimal digits shown for table values.
    pub fn digits(&self) -> usize {
        match self.tolerance {
            Some(t) => (-t.log10()).ceil() as usize + 1,
            None => ((self.bits as f64) * std::f64::consts::LOG10_2).floor() as usize,
        }
        .clamp(4, 40)
    }
}

/// The resolved configuration, echoed as the first output record.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub schema_version: &'static str,
    pub kind: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub k: Vec<String>,
    pub precision: String,
    pub precision_bits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exclusion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_points: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kmax: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_size: Option<String>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunConfig {
    fn from_cli(cli: &Cli, prec: &Precision) -> RunConfig {
        let s = |x: &dyn ToString| Some(x.to_string());
        let mut c = RunConfig {
            schema_version: SCHEMA_VERSION,
            kind: "run_config",
            tool_version: env!("CARGO_PKG_VERSION"),
            command: cli.command.name(),
            k: Vec::new(),
            precision: cli.prec.trim().to_string(),
            precision_bits: prec.bits.to_string(),
            grid: None,
            exclusion: None,
            scan_points: None,
            trials: None,
            seed: None,
            n: None,
            kmax: None,
            ratio_k: None,
            eps: None,
            family_size: None,
            format: cli.format,
            output: cli.output.as_ref().map(|p| p.display().to_string()),
            timestamp: None,
        };
        let ks = |v: Vec<u64>| v.iter().map(u64::to_string).collect();
        match &cli.command {
            Command::Table(r) => c.k = ks(r.resolve(&TABLE_DEFAULT)),
            Command::Poly { k } | Command::Discriminants { k } | Command::VerifyAppendix { k } => c.k = ks(vec![*k]),
            Command::Roots(r) => c.k = ks(r.resolve(&[2, 3, 4])),
            Command::VerifyFk { ks: r, grid, exclusion, scan_points } => {
                c.k = ks(r.resolve(&[2, 3, 4, 5, 6, 7, 8]));
                c.grid = s(grid);
                c.exclusion = s(exclusion);
                c.scan_points = scan_points.map(|p| p.to_string());
            }
            Command::VerifyM { ks: r, trials, seed } => {
                c.k = ks(r.resolve(&[2, 3, 4, 5, 6]));
                c.trials = s(trials);
                c.seed = s(seed);
            }
            Command::VerifyConstants { kmax, ratio_k } => {
                c.kmax = s(kmax);
                c.ratio_k = s(ratio_k);
            }
            Command::VerifyEntropyLemma { ks: r, n, trials, seed } => {
                c.k = ks(r.resolve(&[2, 3]));
                c.n = s(n);
                c.trials = s(trials);
                c.seed = s(seed);
            }
            Command::Simulate { n, k, trials, seed } => {
                c.k = ks(vec![*k]);
                c.n = s(n);
                c.trials = s(trials);
                c.seed = s(seed);
            }
            Command::Bound { k, eps, family_size } => {
                c.k = ks(vec![*k]);
                c.eps = Some(eps.clone());
                c.family_size = Some(family_size.clone());
            }
        }
        if !cli.no_timestamp {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            c.timestamp = Some(secs.to_string());
        }
        c
    }
}

const TABLE_DEFAULT: [u64; 8] = [2, 3, 4, 5, 6, 7, 8, 16];

/// One object of the output stream.
enum Item {
    Config(RunConfig),
    Report(PaperCheckReport),
    Row(ConstantsRow),
    Sim(SimReport),
    Bound(BoundQuery, FrequencyBound),
    Poly { k: u64, poly: AlphaPoly },
    Pattern { k: u64, roots: Vec<usize>, signs: Vec<Sign> },
    Csv(String),
}

fn to_u32(x: u64, what: &str) -> Result<u32, Error> {
    u32::try_from(x).map_err(|_| Error::InvalidParameter(format!("{what} out of range: {x}")))
}

fn rows(ks: &[u64], prec: &Precision) -> Result<Vec<Item>, Error> {
    let rows = table1(ks, prec.bits)?;
    let check = check_table1(&rows);
    let mut out: Vec<Item> = rows.into_iter().map(Item::Row).collect();
    out.push(Item::Report(check));
    Ok(out)
}

fn poly_items(k: u64) -> Result<Vec<Item>, Error> {
    let k32 = to_u32(k, "k")?;
    let poly = build_p_parts(k32)?;
    let mut out = vec![Item::Poly { k, poly }];
    out.push(Item::Report(check_structure(k32)?));
    out.push(Item::Report(check_p0_sign(k32)?));
    if (2..=6).contains(&k) {
        out.push(Item::Report(check_table2(k32)?));
    }
    Ok(out)
}

fn pattern_report(k: u32, roots: &[usize], signs: &[Sign]) -> PaperCheckReport {
    let fmt = |v: &[usize]| format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    let mut rep = PaperCheckReport::new(
        format!("derivative-patterns-k{k}"),
        "real-root counts of the derivatives of p_k and the signs of their discriminants",
        0,
    );
    rep.info("real roots of p_k^(i), with multiplicity", fmt(roots));
    rep.info(
        "sign disc(p_k^(i))",
        format!("({})", signs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")),
    );
    let ok = rolle_consistent(roots);
    rep.check("Rolle consistency", ok, "pattern[i] <= pattern[i+1] + 1", ok);
    let zero: Vec<Option<usize>> =
        signs.iter().zip(roots).map(|(s, r)| (*s == Sign::Zero).then_some(*r)).collect();
    match pattern_from_discriminants(signs, roots.len(), &zero) {
        Some(d) => {
            rep.check("root counts forced by the discriminant signs", fmt(&d), format!("= {}", fmt(roots)), d == roots)
        }
        None => {
            rep.info("root counts forced by the discriminant signs", "not forced");
            true
        }
    };
    rep
}

fn dispatch(cli: &Cli, prec: &Precision) -> Result<Vec<Item>, Error> {
    let mut out = Vec::new();
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Table(r) => out.extend(rows(&r.resolve(&TABLE_DEFAULT), prec)?),
        Command::Poly { k } => out.extend(poly_items(*k)?),
        Command::Roots(r) => {
            for k in r.resolve(&[2, 3, 4]) {
                let k32 = to_u32(k, "k")?;
                if csv {
                    let c = unit_interval_root_count(k32)?;
                    out.push(Item::Csv(format!("{k},{},{}", c.distinct, c.with_multiplicity)));
                }
                out.push(Item::Report(check_unit_interval_roots(k32)?));
            }
        }
        Command::Discriminants { k } => {
            let k32 = to_u32(*k, "k")?;
            let roots = derivative_root_pattern(k32)?;
            let signs = discriminant_sign_pattern(k32)?;
            out.push(Item::Report(pattern_report(k32, &roots, &signs)));
            out.push(Item::Pattern { k: *k, roots, signs });
            if *k == 4 {
                out.extend(check_p4_patterns()?.into_iter().map(Item::Report));
            }
        }
        Command::VerifyFk { ks, grid, exclusion, scan_points } => {
            for k in ks.resolve(&[2, 3, 4, 5, 6, 7, 8]) {
                let k32 = to_u32(k, "k")?;
                if let (true, Some(p)) = (csv, scan_points) {
                    out.push(Item::Csv(fk_scan_csv(k32, *p)?));
                } else {
                    out.push(Item::Report(verify_fk_nonneg(k32, *grid, *exclusion)?));
                }
            }
        }
        Command::VerifyM { ks, trials, seed } => {
            let samples = usize::try_from(*trials).map_err(|_| Error::InvalidParameter("too many trials".into()))?;
            out.push(Item::Report(verify_lemma_cl(samples, *seed)?));
            for k in ks.resolve(&[2, 3, 4, 5, 6]) {
                let k32 = to_u32(k, "k")?;
                out.push(Item::Report(verify_corollary_main(k32, samples, *seed)?));
                out.push(Item::Report(minimize_m_k(k32, MINIMIZE_TOLERANCE)?.report(MINIMIZE_TOLERANCE)?));
                out.push(Item::Report(verify_mk_bounds(k32, samples, *seed)?));
            }
        }
        Command::VerifyAppendix { k } => {
            if *k != 4 {
                return Err(Error::InvalidParameter(format!("the appendix covers k = 4 only, got {k}")));
            }
            out.extend(appendix_a_reports()?.into_iter().map(Item::Report));
        }
        Command::VerifyConstants { kmax, ratio_k } => {
            out.push(Item::Report(verify_prop_zk_with(*kmax, *ratio_k, prec.bits)?));
            out.push(Item::Report(verify_lemma_mu_with(*kmax, prec.bits)?));
        }
        Command::VerifyEntropyLemma { ks, n, trials, seed } => {
            let n32 = to_u32(*n, "n")?;
            let t = usize::try_from(*trials).map_err(|_| Error::InvalidParameter("too many trials".into()))?;
            for k in ks.resolve(&[2, 3]) {
                out.push(Item::Report(verify_lemma_main_small(n32, to_u32(k, "k")?, t, *seed)?));
            }
        }
        Command::Simulate { n, k, trials, seed } => {
            let (sim, rep) = verify_simulation(to_u32(*n, "n")?, to_u32(*k, "k")?, *trials, *seed)?;
            out.push(Item::Sim(sim));
            out.push(Item::Report(rep));
        }
        Command::Bound { k, eps, family_size } => {
            let eps = parse_rational(eps)?;
            let size: BigUint = family_size
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad family size {family_size:?}")))?;
            let q = BoundQuery::new(*k, eps, size)?;
            let b = frequency_bound_with(&q, prec.bits)?;
            out.push(Item::Bound(q, b));
        }
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const WITNESS_HEADER: &str = "claim_id,status,expression,value,predicate,outcome,precision_bits";

fn witness_csv(r: &PaperCheckReport) -> String {
    let mut s = String::new();
    for w in &r.witnesses {
        let outcome = serde_json::to_value(w.outcome).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&r.claim_id),
            r.status,
            csv_field(&w.expression),
            csv_field(&w.value),
            csv_field(&w.predicate),
            outcome,
            w.precision_bits
        ));
    }
    s
}

fn poly_json(k: u64, p: &AlphaPoly) -> serde_json::Value {
    let deg = p.degree().unwrap_or(0);
    let coeffs: Vec<_> = (0..=deg)
        .map(|i| {
            let (a, b) = p.coeff(i);
            serde_json::json!({ "degree": i.to_string(), "rational": a.to_string(), "alpha": b.to_string() })
        })
        .collect();
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "polynomial",
        "name": format!("p_{k}"),
        "k": k.to_string(),
        "degree": deg.to_string(),
        "display": p.to_string(),
        "coefficients": coeffs,
    })
}

fn pattern_json(k: u64, roots: &[usize], signs: &[Sign]) -> serde_json::Value {
    serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "derivative_patterns",
        "k": k.to_string(),
        "real_roots": roots.iter().map(usize::to_string).collect::<Vec<_>>(),
        "discriminant_signs": signs.iter().map(|s| s.as_i32().to_string()).collect::<Vec<_>>(),
    })
}

fn render(items: &[Item], format: Format, prec: &Precision) -> String {
    let mut s = String::new();
    match format {
        Format::Json => {
            for it in items {
                let v = match it {
                    Item::Config(c) => serde_json::to_value(c).expect("serializable config"),
                    Item::Report(r) => serde_json::to_value(r).expect("serializable report"),
                    Item::Row(r) => r.to_json(),
                    Item::Sim(r) => r.to_json(),
                    Item::Bound(q, b) => b.to_json(q),
                    Item::Poly { k, poly } => poly_json(*k, poly),
                    Item::Pattern { k, roots, signs } => pattern_json(*k, roots, signs),
                    Item::Csv(_) => continue,
                };
                s.push_str(&serde_json::to_string(&v).expect("json"));
                s.push('\n');
            }
        }
        Format::Text => {
            for it in items {
                match it {
                    Item::Config(c) => {
                        s.push_str(&format!("# {}\n", serde_json::to_string(c).expect("json")));
                    }
                    Item::Report(r) => s.push_str(&r.render_text()),
                    Item::Row(r) => {
                        s.push_str(&r.to_text(prec.digits()));
                        s.push('\n');
                    }
                    Item::Sim(r) => {
                        s.push_str(&format!(
                            "n = {}, k = {}, sizes [{}, {}], trials {}\n  closure fraction {:.6} +- {:.6}\n  element frequency {:.6} +- {:.6}\n",
                            r.spec.n,
                            r.spec.k,
                            r.spec.t2,
                            r.spec.t1,
                            r.trials,
                            r.closure_fraction.value,
                            r.closure_fraction.half_width,
                            r.element_frequency.value,
                            r.element_frequency.half_width
                        ));
                    }
                    Item::Bound(q, b) => {
                        let d = prec.digits();
                        s.push_str(&format!(
                            "k = {}, eps = {}, |F| = {}\n  delta = {}\n  {} = {}\n  guaranteed fraction = {}{}\n",
                            q.k,
                            q.eps,
                            q.family_size,
                            b.delta.mid_decimal(d),
                            b.constant_name,
                            b.constant.mid_decimal(d),
                            b.guaranteed_fraction.mid_decimal(d),
                            if b.clamped { " (clamped at 0)" } else { "" }
                        ));
                    }
                    Item::Poly { k, poly } => s.push_str(&format!("p_{k} = {poly}\n")),
                    Item::Pattern { .. } | Item::Csv(_) => {}
                }
            }
        }
        Format::Csv => {
            let has_table = items.iter().any(|i| {
                matches!(i, Item::Row(_) | Item::Csv(_) | Item::Sim(_) | Item::Pattern { .. } | Item::Poly { .. } | Item::Bound(..))
            });
            let mut wrote_witness_header = false;
            let mut wrote_root_header = false;
            for it in items {
                match it {
                    Item::Config(c) => s.push_str(&format!("# {}\n", serde_json::to_string(c).expect("json"))),
                    Item::Row(_) => {}
                    Item::Report(r) => {
                        // Reports only become CSV when nothing else is tabular.
                        if has_table {
                            continue;
                        }
                        if !wrote_witness_header {
                            s.push_str(WITNESS_HEADER);
                            s.push('\n');
                            wrote_witness_header = true;
                        }
                        s.push_str(&witness_csv(r));
                    }
                    Item::Sim(r) => s.push_str(&r.histogram_csv()),
                    Item::Bound(q, b) => {
                        let d = prec.digits();
                        s.push_str("k,eps,family_size,delta,constant_name,constant,guaranteed_fraction,clamped\n");
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{},{}\n",
                            q.k,
                            q.eps,
                            q.family_size,
                            b.delta.mid_decimal(d),
                            b.constant_name,
                            b.constant.mid_decimal(d),
                            b.guaranteed_fraction.mid_decimal(d),
                            b.clamped
                        ));
                    }
                    Item::Poly { poly, .. } => {
                        s.push_str("degree,rational,alpha\n");
                        for i in 0..=poly.degree().unwrap_or(0) {
                            let (a, b) = poly.coeff(i);
                            s.push_str(&format!("{i},{a},{b}\n"));
                        }
                    }
                    Item::Pattern { roots, signs, .. } => {
                        s.push_str("derivative,real_roots,discriminant_sign\n");
                        for (i, (r, g)) in roots.iter().zip(signs).enumerate() {
                            s.push_str(&format!("{i},{r},{}\n", g.as_i32()));
                        }
                    }
                    Item::Csv(line) => {
                        if line.contains('\n') {
                            s.push_str(line);
                        } else {
                            if !wrote_root_header {
                                s.push_str("k,distinct,with_multiplicity\n");
                                wrote_root_header = true;
                            }
                            s.push_str(line);
                            s.push('\n');
                        }
                    }
                }
            }
            if items.iter().any(|i| matches!(i, Item::Row(_))) {
                let mut body = String::from(ConstantsRow::CSV_HEADER);
                body.push('\n');
                for it in items {
                    if let Item::Row(r) = it {
                        body.push_str(&r.to_csv(prec.digits()));
                        body.push('\n');
                    }
                }
                s.push_str(&body);
            }
        }
    }
    s
}

/// Outcome of a run: the exit code and the rendered output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Uncertified(_) => Status::Inconclusive.exit_code(),
        Error::InvalidParameter(_) | Error::Parse(_) | Error::EmptyInterval(_) | Error::ZeroPolynomial(_) => USAGE_EXIT,
        Error::ContextMismatch { .. } | Error::DivisionByZero => Status::Fail.exit_code(),
    }
}

/// Run an already parsed command line, returning the rendered stream.
pub fn run(cli: &Cli) -> RunOutput {
    let usage = Cli::command().render_usage().to_string();
    let prec = match Precision::parse(&cli.prec) {
        Ok(p) => p,
        Err(e) => return RunOutput { exit_code: USAGE_EXIT, stdout: String::new(), stderr: format!("error: {e}\n\n{usage}\n") },
    };
    let config = RunConfig::from_cli(cli, &prec);
    match dispatch(cli, &prec) {
        Ok(items) => {
            let status = overall_status(items.iter().filter_map(|i| match i {
                Item::Report(r) => Some(r),
                _ => None,
            }));
            let mut all = vec![Item::Config(config)];
            all.extend(items);
            RunOutput { exit_code: status.exit_code(), stdout: render(&all, cli.format, &prec), stderr: String::new() }
        }
        Err(e) => {
            let code = error_exit(&e);
            let stderr = if code == USAGE_EXIT { format!("error: {e}\n\n{usage}\n") } else { format!("error: {e}\n") };
            RunOutput { exit_code: code, stdout: String::new(), stderr }
        }
    }
}

/// Parse `args` (including the program name) and run.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let mut text = e.render().to_string();
            if code == USAGE_EXIT && !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
            }
            if code == 0 {
                RunOutput { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                RunOutput { exit_code: code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run_from_env() -> i32 {
    let args: Vec<OsString> = std::env::args_os().collect();
    let output = Cli::try_parse_from(&args).ok().and_then(|c| c.output);
    let res = run_args(args);
    eprint!("{}", res.stderr);
    let written = match &output {
        Some(path) if res.exit_code != USAGE_EXIT => std::fs::write(path, &res.stdout),
        _ => std::io::stdout().write_all(res.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return USAGE_EXIT;
    }
    res.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_forms() {
        assert_eq!(Precision::parse("128").unwrap(), Precision { bits: 128, tolerance: None });
        let p = Precision::parse("1e-6").unwrap();
        assert_eq!(p.bits, 64);
        assert_eq!(p.digits(), 7);
        assert!(Precision::parse("7").is_err());
        assert!(Precision::parse("abc").is_err());
    }

    #[test]
    fn usage_errors_exit_three() {
        assert_eq!(run_args(["kunion", "table", "--bogus"]).exit_code, 3);
        assert_eq!(run_args(["kunion", "bound", "--k", "3", "--eps", "0.7", "--family-size", "10"]).exit_code, 3);
        assert_eq!(run_args(["kunion", "verify-appendix", "--k", "5"]).exit_code, 3);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("x"), "x");
    }
}
