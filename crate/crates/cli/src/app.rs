//! Subcommand definitions and dispatch.
//!
//! Every command builds its text and JSON renderings from the same values, so
//! the two modes cannot drift apart.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use segre_acm_core::{
    beilinson_table_with, chi_l_dual, classify, cm_wild_criterion, dimext_bound, dp_family_dim,
    dp_kernel_chi, dp_nonulrich_check, euler_pairing, hilbert_poly, is_acm,
    quasi_minimal_ext_table, reduced_hilbert_poly, scroll_coh, scroll_ell, scroll_wildness_input,
    serre_involution, ulrich_class, ulrich_init, verify_wildness_cases, AcmCheck, Classification,
    CohInterval, CoreError, CurveWindowCertificate, DelPezzoCase, DelPezzoDatum, ExtMode, Poly,
    Rational, ScrollDescriptor, ScrollDivisor, WildnessInput,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{parse, ParseError, SheafExpr};

/// Largest twist range `coh --range` evaluates.
const MAX_RANGE: i64 = 10_000;
/// Bound on `|k|` for `uk`.
const MAX_UK: i64 = 100_000;
/// Bound on numeric scroll arguments.
const MAX_SCROLL: i64 = 10_000;
/// Bound on `|x|`, `|y|` and the number of summands for `scroll coh`.
const MAX_SCROLL_COH: i64 = 400;
/// Bound on `n` for the full scroll pipeline.
const MAX_PIPELINE_N: i64 = 10;

#[derive(Debug, Parser)]
#[command(
    name = "segre-acm",
    version,
    about = "Exact cohomology, Beilinson tables and ACM bundles on P1 x P2 and rational normal scrolls",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology dimensions h^0..h^3 of E(t).
    Coh {
        expr: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
        twist: Option<i64>,
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Hilbert polynomial t -> chi(E(t)).
    Hilb { expr: String },
    /// Euler pairing chi(A, B).
    Chi { a: String, b: String },
    /// Ext^i(A, B) for a direct sum A.
    Ext {
        a: String,
        b: String,
        /// Resolve Omega-to-Omega connecting maps exactly.
        #[arg(long)]
        tight: bool,
    },
    /// Whether intermediate cohomology vanishes in every twist.
    Acm { expr: String },
    /// Ulrich test and initializing twist.
    Ulrich { expr: String },
    /// Beilinson table against the dual collection.
    Table {
        expr: String,
        #[arg(long)]
        tight: bool,
        #[arg(long, value_enum, default_value_t = Orientation::A)]
        orientation: Orientation,
    },
    /// Classification of an indecomposable ACM bundle.
    Classify { expr: String },
    /// Numerical data of the rigid Ulrich bundle U_k.
    Uk {
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Rational normal scrolls.
    Scroll(ScrollArgs),
    /// Wildness criteria.
    #[command(subcommand)]
    Wild(WildCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Orientation {
    /// `a_{i,j}`, rows indexed by cohomological degree.
    A,
    /// `b_{i,j} = a_{5-i,5-j}`.
    B,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScrollArgs {
    /// Degrees `a_1,..,a_n` of the scroll, for `coh`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub degrees: Vec<i64>,
    #[command(subcommand)]
    pub command: ScrollCommand,
}

#[derive(Debug, Subcommand)]
pub enum ScrollCommand {
    /// h^i(O(xH + yF)).
    #[command(allow_negative_numbers = true)]
    Coh { x: i64, y: i64 },
    /// l = (n-1)d - n and chi(L^v).
    Ell { n: i64, d: i64 },
    /// Lower bound for dim Ext^1(U_k, O).
    Dimext { n: i64, d: i64, k: u64 },
    /// Wildness bound at the index chosen for (n, d).
    Wildcheck { n: i64, d: i64 },
}

#[derive(Debug, Subcommand)]
pub enum WildCommand {
    /// Evaluate the criterion on supplied certificates.
    #[command(allow_negative_numbers = true)]
    Check(CheckArgs),
    /// Build the certificates for the balanced scroll and evaluate.
    Scroll { n: i64, d: i64 },
    /// Kernel-bundle numerics on a del Pezzo surface.
    Dp {
        #[arg(value_enum)]
        case: DpCase,
        a: i64,
        b: i64,
        /// Degree for the non-Ulrich inequality.
        #[arg(long)]
        deg: Option<i64>,
    },
    /// Ext dimensions between the two quasi-minimal sheaves.
    Table {
        n: i64,
        #[arg(long)]
        cone: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DpCase {
    Blowup,
    Quadric,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: u32,
    /// Reduced Hilbert polynomial of A, ascending coefficients `c0,c1,..`.
    #[arg(long, allow_hyphen_values = true)]
    pub rp_a: String,
    /// Reduced Hilbert polynomial of B.
    #[arg(long, allow_hyphen_values = true)]
    pub rp_b: String,
    /// dim Ext^1(B, A) or a lower bound for it.
    #[arg(long)]
    pub ext1: BigInt,
    /// Initializing twist of A; omit when A is not Ulrich.
    #[arg(long, allow_hyphen_values = true)]
    pub ulrich_a: Option<i64>,
    /// Initializing twist of B; omit when B is not Ulrich.
    #[arg(long, allow_hyphen_values = true)]
    pub ulrich_b: Option<i64>,
    /// Curves: H^0(A(t)) = 0 exactly for t up to this value.
    #[arg(long, allow_hyphen_values = true, requires = "b_h1_zero_from")]
    pub a_h0_zero_until: Option<i64>,
    /// Curves: H^1(B(t)) = 0 exactly from this value on.
    #[arg(long, allow_hyphen_values = true, requires = "a_h0_zero_until")]
    pub b_h1_zero_from: Option<i64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) | CliError::Usage(_) => 2,
        }
    }
}

/// Both renderings of a command result.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(lines: Vec<String>, json: Value) -> Self {
        let mut text = lines.join("\n");
        text.push('\n');
        Report { text, json }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = self.json.to_string();
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn rat(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat).collect())
}

fn interval_json(c: &CohInterval) -> (Value, Value, Value) {
    let exact: Vec<bool> = (0..4).map(|i| c.degree_is_exact(i)).collect();
    (bigs(&c.lo), bigs(&c.hi), json!(exact))
}

fn sheaf(src: &str) -> Result<SheafExpr, CliError> {
    Ok(parse(src)?)
}

fn bounded(name: &str, v: i64, limit: i64) -> Result<(), CliError> {
    if v.unsigned_abs() > limit.unsigned_abs() {
        return Err(CliError::Domain(format!(
            "{name} = {v} is outside the supported range [-{limit}, {limit}]"
        )));
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Coh { expr, twist, range } => coh(expr, *twist, range.as_deref()),
        Command::Hilb { expr } => hilb(expr),
        Command::Chi { a, b } => chi(a, b),
        Command::Ext { a, b, tight } => ext(a, b, *tight),
        Command::Acm { expr } => acm(expr),
        Command::Ulrich { expr } => ulrich(expr),
        Command::Table {
            expr,
            tight,
            orientation,
        } => table(expr, *tight, *orientation),
        Command::Classify { expr } => classify_cmd(expr),
        Command::Uk { k } => uk(*k),
        Command::Scroll(args) => scroll(args),
        Command::Wild(w) => wild(w),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("--range expects `a..b`, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Usage(format!("empty range {a}..{b}")));
    }
    if b - a >= MAX_RANGE {
        return Err(CliError::Domain(format!(
            "range {a}..{b} has more than {MAX_RANGE} twists"
        )));
    }
    Ok((a, b))
}

fn coh(src: &str, twist: Option<i64>, range: Option<&str>) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let s = e.to_sheaf();
    let (lo, hi) = match (twist, range) {
        (_, Some(r)) => parse_range(r)?,
        (Some(t), None) => (t, t),
        (None, None) => (0, 0),
    };
    bounded("twist", lo, i64::from(i32::MAX))?;
    bounded("twist", hi, i64::from(i32::MAX))?;
    let mut lines = Vec::new();
    let mut records = Vec::new();
    for t in lo..=hi {
        let c = s.coh(t);
        lines.push(format!("t={t} h={c}"));
        let (l, h, x) = interval_json(&c);
        records.push(json!({ "twist": t, "lo": l, "hi": h, "exact": x }));
    }
    Ok(Report::new(
        lines,
        json!({ "command": "coh", "expr": e.to_string(), "records": records }),
    ))
}

fn hilb(src: &str) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let ch = e.to_sheaf().ch();
    let p = hilbert_poly(&ch);
    let reduced = reduced_hilbert_poly(&ch);
    let rank = ch.rank().clone();
    let lines = vec![
        format!("P(t) = {p}"),
        format!("rank = {rank}"),
        match &reduced {
            Some(r) => format!("reduced(t) = {r}"),
            None => "reduced(t) = undefined".into(),
        },
    ];
    let json = json!({
        "command": "hilb",
        "expr": e.to_string(),
        "coefficients": poly_json(&p),
        "rank": rat(&rank),
        "reduced": reduced.as_ref().map(poly_json),
    });
    Ok(Report::new(lines, json))
}

fn chi(a: &str, b: &str) -> Result<Report, CliError> {
    let (ea, eb) = (sheaf(a)?, sheaf(b)?);
    let v = euler_pairing(&ea.to_sheaf().ch(), &eb.to_sheaf().ch());
    Ok(Report::new(
        vec![format!("chi = {v}")],
        json!({ "command": "chi", "a": ea.to_string(), "b": eb.to_string(), "chi": rat(&v) }),
    ))
}

fn mode(tight: bool) -> ExtMode {
    if tight {
        ExtMode::Tight
    } else {
        ExtMode::Intervals
    }
}

fn mode_name(tight: bool) -> &'static str {
    if tight {
        "tight"
    } else {
        "intervals"
    }
}

fn ext(a: &str, b: &str, tight: bool) -> Result<Report, CliError> {
    let (ea, eb) = (sheaf(a)?, sheaf(b)?);
    let terms = ea.as_sum().ok_or_else(|| {
        CliError::Domain("ext: the first argument must be a direct sum of blocks".into())
    })?;
    let target = eb.to_sheaf();
    let total = terms
        .iter()
        .map(|t| target.ext_from(&t.block, mode(tight)).scale(&t.mult))
        .fold(CohInterval::default(), |acc, c| acc.add(&c));
    let (l, h, x) = interval_json(&total);
    Ok(Report::new(
        vec![format!("ext = {total}")],
        json!({
            "command": "ext",
            "a": ea.to_string(),
            "b": eb.to_string(),
            "mode": mode_name(tight),
            "lo": l,
            "hi": h,
            "exact": x,
        }),
    ))
}

fn acm(src: &str) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let check = is_acm(&e.to_sheaf())?;
    let (line, status, degree, twist) = match check {
        AcmCheck::Acm => ("ACM".to_string(), "acm", None, None),
        AcmCheck::NotAcm { degree, twist } => (
            format!("not ACM: h{degree}(t={twist}) > 0"),
            "not_acm",
            Some(degree),
            Some(twist),
        ),
        AcmCheck::Undetermined { degree, twist } => (
            format!("undetermined: h{degree}(t={twist}) not resolved by bounds"),
            "undetermined",
            Some(degree),
            Some(twist),
        ),
    };
    Ok(Report::new(
        vec![line],
        json!({
            "command": "acm",
            "expr": e.to_string(),
            "status": status,
            "degree": degree,
            "twist": twist,
        }),
    ))
}

fn ulrich(src: &str) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let init = ulrich_init(&e.to_sheaf())?;
    let line = match init {
        Some(t) => format!("Ulrich t={t}"),
        None => "not Ulrich".into(),
    };
    Ok(Report::new(
        vec![line],
        json!({
            "command": "ulrich",
            "expr": e.to_string(),
            "ulrich": init.is_some(),
            "twist": init,
        }),
    ))
}

fn oriented(o: Orientation, i: usize, j: usize) -> (usize, usize) {
    match o {
        Orientation::A => (i, j),
        Orientation::B => (5 - i, 5 - j),
    }
}

fn table(src: &str, tight: bool, o: Orientation) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let tab = beilinson_table_with(&e.to_sheaf(), mode(tight))?;
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut exact = Vec::new();
    let mut cells = Vec::new();
    for i in 0..6 {
        let (mut lr, mut hr, mut xr, mut cr) = (vec![], vec![], vec![], vec![]);
        for j in 0..6 {
            let (p, q) = oriented(o, i, j);
            lr.push(big(tab.lo(p, q)));
            hr.push(big(tab.hi(p, q)));
            xr.push(tab.is_exact_at(p, q));
            cr.push(if tab.is_exact_at(p, q) {
                tab.lo(p, q).to_string()
            } else {
                format!("{}..{}", tab.lo(p, q), tab.hi(p, q))
            });
        }
        lo.push(lr);
        hi.push(hr);
        exact.push(xr);
        cells.push(cr);
    }
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1) + 1;
    let name = match o {
        Orientation::A => "a",
        Orientation::B => "b",
    };
    let lines = cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let body: String = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("{name}[{i}]{body}")
        })
        .collect();
    let json = json!({
        "command": "table",
        "expr": e.to_string(),
        "mode": mode_name(tight),
        "orientation": name,
        "a": lo,
        "hi": hi,
        "exact": exact,
    });
    Ok(Report::new(lines, json))
}

fn classify_cmd(src: &str) -> Result<Report, CliError> {
    let e = sheaf(src)?;
    let c = classify(&e.to_sheaf())?;
    let mut json = json!({
        "command": "classify",
        "expr": e.to_string(),
        "case": c.name(),
        "t": c.twist(),
    });
    match &c {
        Classification::Ulrich { a, b, .. } => {
            json["a"] = big(a);
            json["b"] = big(b);
        }
        Classification::NotAcm { degree, twist } => {
            json["degree"] = json!(degree);
            json["twist"] = json!(twist);
        }
        Classification::Undetermined { reason } => json["reason"] = json!(reason),
        _ => {}
    }
    Ok(Report::new(vec![c.to_string()], json))
}

fn uk(k: i64) -> Result<Report, CliError> {
    bounded("k", k, MAX_UK)?;
    let u = ulrich_class(k);
    let partner = serre_involution(&u)?;
    let chi_self = u.chi_self();
    let class: Vec<Value> = u.cls.components().iter().map(rat).collect();
    let lines = vec![
        format!(
            "a={} b={} rank={} chi_self={} serre_partner={}",
            u.a, u.b, u.rank, chi_self, partner.k
        ),
        format!("class={}", u.cls),
    ];
    let json = json!({
        "command": "uk",
        "k": k,
        "a": big(&u.a),
        "b": big(&u.b),
        "rank": big(&u.rank),
        "chi_self": rat(&chi_self),
        "serre_partner": partner.k,
        "class": class,
    });
    Ok(Report::new(lines, json))
}

fn scroll_bounds(n: i64, d: i64) -> Result<(), CliError> {
    bounded("n", n, MAX_SCROLL)?;
    bounded("d", d, MAX_SCROLL)
}

fn scroll(args: &ScrollArgs) -> Result<Report, CliError> {
    match &args.command {
        ScrollCommand::Coh { x, y } => {
            if args.degrees.is_empty() {
                return Err(CliError::Usage("scroll coh needs --degrees".into()));
            }
            if args.degrees.len() as i64 > MAX_SCROLL_COH {
                return Err(CliError::Domain("too many scroll degrees".into()));
            }
            for &a in &args.degrees {
                bounded("degree", a, MAX_SCROLL_COH)?;
            }
            bounded("x", *x, MAX_SCROLL_COH)?;
            bounded("y", *y, MAX_SCROLL_COH)?;
            let s = ScrollDescriptor::new(args.degrees.clone())?;
            let h: Vec<BigInt> = scroll_coh(&s, ScrollDivisor::new(*x, *y))
                .into_iter()
                .map(|(_, v)| v)
                .collect();
            let shown: Vec<String> = h.iter().map(BigInt::to_string).collect();
            Ok(Report::new(
                vec![format!("{s} x={x} y={y} h=({})", shown.join(", "))],
                json!({
                    "command": "scroll-coh",
                    "degrees": s.degrees(),
                    "x": x,
                    "y": y,
                    "h": bigs(&h),
                }),
            ))
        }
        ScrollCommand::Ell { n, d } => {
            scroll_bounds(*n, *d)?;
            let ell = scroll_ell(*n, *d)?;
            let chi = chi_l_dual(*n, *d)?;
            Ok(Report::new(
                vec![format!("ell={ell} chi_l_dual={chi}")],
                json!({ "command": "scroll-ell", "n": n, "d": d, "ell": ell, "chi_l_dual": chi }),
            ))
        }
        ScrollCommand::Dimext { n, d, k } => {
            scroll_bounds(*n, *d)?;
            bounded("k", i64::try_from(*k).unwrap_or(i64::MAX), MAX_SCROLL)?;
            let v = dimext_bound(*n, *d, *k)?;
            Ok(Report::new(
                vec![format!("dimext={v}")],
                json!({ "command": "scroll-dimext", "n": n, "d": d, "k": k, "dimext": big(&v) }),
            ))
        }
        ScrollCommand::Wildcheck { n, d } => {
            scroll_bounds(*n, *d)?;
            let r = verify_wildness_cases(*n, *d)?;
            let line = format!(
                "n={} d={} k={} ell={} sub={} quot={} bound={} {}",
                r.n,
                r.d,
                r.k,
                r.ell,
                r.sub_mult,
                r.quot_mult,
                r.bound,
                if r.passes { "pass" } else { "fail" }
            );
            Ok(Report::new(
                vec![line],
                json!({
                    "command": "scroll-wildcheck",
                    "n": r.n,
                    "d": r.d,
                    "k": r.k,
                    "ell": r.ell,
                    "sub": big(&r.sub_mult),
                    "quot": big(&r.quot_mult),
                    "bound": big(&r.bound),
                    "passes": r.passes,
                }),
            ))
        }
    }
}

fn parse_poly(flag: &str, s: &str) -> Result<Poly, CliError> {
    let coeffs = s
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("{flag}: `{c}` is not a rational number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn wild_report(command: &str, w: &WildnessInput) -> Report {
    let verdict = cm_wild_criterion(w);
    let opt = |v: Option<i64>| v.map_or("none".to_string(), |t| t.to_string());
    let lines = vec![
        verdict.to_string(),
        format!("rp_a(t) = {}", w.rp_a),
        format!("rp_b(t) = {}", w.rp_b),
        format!(
            "ext1={} ulrich_a={} ulrich_b={}",
            w.ext1_dim,
            opt(w.ulrich_a),
            opt(w.ulrich_b)
        ),
    ];
    let json = json!({
        "command": command,
        "verdict": verdict.to_string(),
        "n": w.n,
        "rp_a": poly_json(&w.rp_a),
        "rp_b": poly_json(&w.rp_b),
        "ext1": big(&w.ext1_dim),
        "ulrich_a": w.ulrich_a,
        "ulrich_b": w.ulrich_b,
    });
    Report::new(lines, json)
}

fn wild(cmd: &WildCommand) -> Result<Report, CliError> {
    match cmd {
        WildCommand::Check(c) => {
            if c.ext1.is_negative() {
                return Err(CliError::Usage("--ext1 must be nonnegative".into()));
            }
            let curve_window = match (c.a_h0_zero_until, c.b_h1_zero_from) {
                (Some(a), Some(b)) => Some(CurveWindowCertificate {
                    a_h0_zero_until: a,
                    b_h1_zero_from: b,
                }),
                _ => None,
            };
            let w = WildnessInput {
                n: c.n,
                rp_a: parse_poly("--rp-a", &c.rp_a)?,
                rp_b: parse_poly("--rp-b", &c.rp_b)?,
                ext1_dim: c.ext1.clone(),
                ulrich_a: c.ulrich_a,
                ulrich_b: c.ulrich_b,
                curve_window,
            };
            Ok(wild_report("wild-check", &w))
        }
        WildCommand::Scroll { n, d } => {
            bounded("n", *n, MAX_PIPELINE_N)?;
            bounded("d", *d, MAX_SCROLL_COH)?;
            let w = scroll_wildness_input(*n, *d)?;
            Ok(wild_report("wild-scroll", &w))
        }
        WildCommand::Dp { case, a, b, deg } => {
            bounded("a", *a, MAX_SCROLL)?;
            bounded("b", *b, MAX_SCROLL)?;
            let case = match case {
                DpCase::Blowup => DelPezzoCase::BlowUp,
                DpCase::Quadric => DelPezzoCase::Quadric,
            };
            let datum = DelPezzoDatum::new(case, *a, *b)?;
            let dim = dp_family_dim(&datum);
            let constructible = datum.is_constructible();
            let chi = constructible.then(|| dp_kernel_chi(&datum)).transpose()?;
            let non_ulrich = match (constructible, deg) {
                (true, Some(g)) => {
                    bounded("deg", *g, MAX_SCROLL)?;
                    Some(dp_nonulrich_check(&datum, *g)?)
                }
                _ => None,
            };
            let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
            let line = format!(
                "family_dim={dim} b_threshold={} constructible={constructible} kernel_chi={} non_ulrich={}",
                datum.b_threshold(),
                opt(chi.map(|c| c.to_string())),
                opt(non_ulrich.map(|v| v.to_string())),
            );
            Ok(Report::new(
                vec![line],
                json!({
                    "command": "wild-dp",
                    "case": format!("{case:?}"),
                    "a": a,
                    "b": b,
                    "family_dim": dim,
                    "b_threshold": datum.b_threshold(),
                    "constructible": constructible,
                    "kernel_chi": chi,
                    "non_ulrich": non_ulrich,
                }),
            ))
        }
        WildCommand::Table { n, cone } => {
            let t = quasi_minimal_ext_table(*n, *cone)?;
            let grid = |g: &[[u64; 2]; 2]| {
                format!("[[{}, {}], [{}, {}]]", g[0][0], g[0][1], g[1][0], g[1][1])
            };
            let lines = vec![
                format!("hom = {}", grid(&t.hom)),
                format!("ext1 = {}", grid(&t.ext1)),
                format!(
                    "higher = {}",
                    t.higher.as_ref().map_or("unknown".into(), grid)
                ),
            ];
            Ok(Report::new(
                lines,
                json!({
                    "command": "wild-table",
                    "n": n,
                    "cone": cone,
                    "hom": t.hom,
                    "ext1": t.ext1,
                    "higher": t.higher,
                }),
            ))
        }
    }
}
