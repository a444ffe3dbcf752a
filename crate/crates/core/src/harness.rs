//! Declarative code specs (TOML), the seeded error-injection channel, and
//! reports that put designed and brute-forced parameters side by side.
//!
//! A spec file looks like
//!
//! ```toml
//! [field]
//! p = 2
//! r = 2
//!
//! [curve]
//! family = "A"
//! m = 3
//! tail = [[0, 1, 1]]      # (x exponent, y exponent, coefficient): G = y
//! points = "all"          # or { first = 6 }
//!
//! [code]
//! kind = "eval"           # rs | eval | bezout | raw-generator
//! l = 4
//!
//! [channel]               # optional
//! errors = 1
//! trials = 1000
//! ```
//!
//! Field elements are written as integer encodings (little-endian base-p
//! coefficients), as everywhere else.

use std::fmt::{self, Write as _};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bezout_code::{bezout_code, BezoutCode};
use crate::bipoly::BiPoly;
use crate::curve_algebra::{curve_family_a, curve_family_b, Curve};
use crate::error::{Error, Result};
use crate::evaluation_code::{eval_code, eval_dimensions, rational_points, EvalCode, PointSet};
use crate::gf::FieldSpec;
use crate::linear::{min_weight_of_span, LinearCode, Matrix};
use crate::order_bound::{nu, order_bound_d, order_bound_dphi};
use crate::reed_solomon::RsCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u32,
    #[serde(default = "one")]
    pub r: u32,
    /// Full coefficient vector `[c0, ..., c_(r-1), 1]`; canonical when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsSelector {
    Keyword(String),
    First { first: usize },
}

impl Default for PointsSelector {
    fn default() -> Self {
        PointsSelector::Keyword("all".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    pub family: String,
    /// Family A only; family B takes `m` from `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Family A tail as `(a, b, c)` triples for `c x^a y^b`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tail: Vec<(u32, u32, u32)>,
    /// Family B `g(x)`, little-endian coefficients.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub g: Vec<u32>,
    #[serde(default)]
    pub points: PointsSelector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CodeSection {
    Rs { k: usize },
    Eval { l: usize },
    Bezout { l: u32 },
    RawGenerator { generator: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    /// Injected error weight; defaults to `⌊(d - 1)/2⌋` of the brute-forced `d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errors: Option<usize>,
    #[serde(default = "default_trials")]
    pub trials: u64,
}

fn default_trials() -> u64 {
    1000
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub field: FieldSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSection>,
    pub code: CodeSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelSection>,
}

/// Parses and validates a spec: syntax and unknown keys give `Parse`, values
/// that do not describe a constructible code give `InconsistentSpec`.
pub fn parse_spec(text: &str) -> Result<CodeSpecFile> {
    let spec: CodeSpecFile =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
    spec.instantiate()?;
    Ok(spec)
}

/// A spec turned into concrete objects.
#[derive(Debug, Clone)]
pub struct Instance {
    pub field: FieldSpec,
    pub curve: Option<Curve>,
    pub points: Option<PointSet>,
    pub code: CodeInstance,
}

#[derive(Debug, Clone)]
pub enum CodeInstance {
    Rs(RsCode),
    Eval(EvalCode),
    Bezout(BezoutCode),
    Raw(LinearCode),
}

fn inconsistent(section: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::InconsistentSpec(format!("[{section}]: {e}"))
}

impl CodeSpecFile {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn instantiate(&self) -> Result<Instance> {
        let fs = &self.field;
        let field =
            FieldSpec::new(fs.p, fs.r, fs.modulus.as_deref()).map_err(inconsistent("field"))?;
        let (curve, points) = match &self.curve {
            None => (None, None),
            Some(cs) => {
                let curve = build_curve(&field, cs).map_err(inconsistent("curve"))?;
                let all = rational_points(&curve).map_err(inconsistent("curve"))?;
                let points = match &cs.points {
                    PointsSelector::Keyword(k) if k == "all" => all,
                    PointsSelector::Keyword(k) => {
                        return Err(Error::InconsistentSpec(format!(
                            "[curve]: unknown points selector {k:?}"
                        )))
                    }
                    PointsSelector::First { first } => {
                        all.first(*first).map_err(inconsistent("curve"))?
                    }
                };
                (Some(curve), Some(points))
            }
        };
        let needs_curve =
            || Error::InconsistentSpec("[code]: this kind needs a [curve] section".into());
        let code = match &self.code {
            CodeSection::Rs { k } => {
                CodeInstance::Rs(RsCode::new(&field, *k).map_err(inconsistent("code"))?)
            }
            CodeSection::Eval { l } => {
                let (c, p) = curve
                    .as_ref()
                    .zip(points.as_ref())
                    .ok_or_else(needs_curve)?;
                CodeInstance::Eval(eval_code(c, p, *l).map_err(inconsistent("code"))?)
            }
            CodeSection::Bezout { l } => {
                let (c, p) = curve
                    .as_ref()
                    .zip(points.as_ref())
                    .ok_or_else(needs_curve)?;
                CodeInstance::Bezout(
                    bezout_code(c.defining_polynomial(), p.points(), *l)
                        .map_err(inconsistent("code"))?,
                )
            }
            CodeSection::RawGenerator { generator } => {
                let cols = generator.first().map_or(0, Vec::len);
                let g = Matrix::from_rows(&field, cols, generator).map_err(inconsistent("code"))?;
                CodeInstance::Raw(LinearCode::from_generator(g).map_err(inconsistent("code"))?)
            }
        };
        Ok(Instance {
            field,
            curve,
            points,
            code,
        })
    }
}

fn build_curve(field: &FieldSpec, cs: &CurveSection) -> Result<Curve> {
    match cs.family.as_str() {
        "A" => {
            let m =
                cs.m.ok_or_else(|| Error::InvalidCurve("family A needs m".into()))?;
            if !cs.g.is_empty() {
                return Err(Error::InvalidCurve("family A takes a tail, not g".into()));
            }
            curve_family_a(field, m, BiPoly::from_terms(field, &cs.tail)?)
        }
        "B" => {
            if !cs.tail.is_empty() {
                return Err(Error::InvalidCurve("family B takes g, not a tail".into()));
            }
            let curve = curve_family_b(field, &cs.g)?;
            if cs.m.is_some_and(|m| m != curve.m()) {
                return Err(Error::InvalidCurve(format!(
                    "m = {:?} but deg g = {}",
                    cs.m,
                    curve.m()
                )));
            }
            Ok(curve)
        }
        other => Err(Error::InvalidCurve(format!("unknown family {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelResult {
    pub seed: u64,
    pub trials: u64,
    pub error_weight: usize,
    pub successes: u64,
}

impl ChannelResult {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

/// Random message, random error of exact weight `e` with nonzero values,
/// syndrome decoding, comparison. Trial `t` draws from a ChaCha8 stream
/// seeded with `seed + t`, so results do not depend on scheduling.
pub fn run_channel_experiment(
    code: &LinearCode,
    e: usize,
    trials: u64,
    seed: u64,
    budget: u64,
) -> Result<ChannelResult> {
    let n = code.n();
    if e > n {
        return Err(Error::ErrorWeightTooLarge { e, n });
    }
    // build the coset table once, up front, so a budget failure surfaces here
    code.coset_leader(&vec![0; n], budget)?;
    let q = code.field().q();
    let successes = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<u64> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            let message: Vec<u32> = (0..code.k()).map(|_| rng.random_range(0..q)).collect();
            let sent = code.encode(&message)?;
            let mut received = sent.clone();
            let f = code.field();
            for pos in sample(&mut rng, n, e) {
                received[pos] = f.add(received[pos], rng.random_range(1..q));
            }
            Ok(u64::from(code.syndrome_decode(&received, budget)? == sent))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ChannelResult {
        seed,
        trials,
        error_weight: e,
        successes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub kind: String,
    pub n: usize,
    pub k_designed: Option<usize>,
    pub k_actual: usize,
    pub d_designed: Option<usize>,
    pub d_bruteforce: Option<usize>,
    /// `n + 1 - k - g`, evaluation codes only.
    pub genus_bound: Option<i64>,
}

/// One row of the order-bound table, for `C_l = E_l^⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub l: usize,
    pub dim_c: usize,
    pub nu: u64,
    pub d: u64,
    pub d_phi: Option<u64>,
    pub d_bruteforce: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub field: FieldSection,
    pub curve: Option<String>,
    pub params: CodeParams,
    pub bounds: Vec<BoundEntry>,
    pub channel: Option<ChannelResult>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub seed: u64,
    pub budget: u64,
    /// Overrides the spec's `[channel]` section.
    pub channel: Option<(Option<usize>, u64)>,
    /// Largest `l` in the bound table (evaluation codes only); defaults to
    /// the last `l` with `C_l != 0`.
    pub bound_upto: Option<usize>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            seed: 0,
            budget: crate::linear::DEFAULT_BUDGET,
            channel: None,
            bound_upto: None,
        }
    }
}

/// Runs budget-limited brute force, treating `BudgetExceeded` as "unknown".
fn within_budget<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check(checks: &mut Vec<Check>, name: impl Into<String>, holds: bool) {
    checks.push(Check {
        name: name.into(),
        holds,
    });
}

/// `E_l` dimensions from 1 until they reach `n`, plus a margin for the tail check.
fn dims_until_full(pts: &PointSet) -> Vec<usize> {
    let n = pts.len();
    let mut upto = 2 * n.max(4);
    loop {
        let dims = eval_dimensions(pts, upto);
        if let Some(full) = dims.iter().position(|&d| d == n) {
            let sg = pts.curve().semigroup();
            let need = (full + 2).max(sg.index_of(2 * sg.conductor()).unwrap() + 2);
            if dims.len() >= need {
                return dims;
            }
        }
        upto *= 2;
    }
}

fn bound_entries(
    pts: &PointSet,
    upto: Option<usize>,
    budget: u64,
    checks: &mut Vec<Check>,
) -> Result<Vec<BoundEntry>> {
    let dims = dims_until_full(pts);
    let n = pts.len();
    let horizon = dims.len() - 1;
    let sg = pts.curve().semigroup();
    let last_nonzero = dims.iter().position(|&d| d == n).unwrap_or(horizon);
    let upto = upto.unwrap_or(last_nonzero).min(horizon);
    let mut rows = Vec::new();
    for l in 1..=upto {
        let d = order_bound_d(sg, l, horizon)?;
        let d_phi = order_bound_dphi(sg, &dims, n, l, horizon)?;
        let dim_c = n - dims[l - 1];
        let d_bruteforce = if dim_c == 0 {
            None
        } else {
            let ec = eval_code(pts.curve(), pts, l)?;
            within_budget(min_weight_of_span(&ec.dual_basis(), budget))?.flatten()
        };
        if let (Some(dp), Some(db)) = (d_phi, d_bruteforce) {
            check(checks, format!("d(C_{l}) >= d_phi({l})"), db as u64 >= dp);
        }
        if let Some(dp) = d_phi {
            check(checks, format!("d_phi({l}) >= d({l})"), dp >= d);
        }
        rows.push(BoundEntry {
            l,
            dim_c,
            nu: nu(sg, l),
            d,
            d_phi,
            d_bruteforce,
        });
    }
    Ok(rows)
}

/// Builds the code, brute-forces what the budget allows, fills the order
/// bound table for evaluation codes, runs the channel if requested, and
/// records every inequality that was checked.
pub fn report(spec: &CodeSpecFile, options: &ReportOptions) -> Result<ExperimentReport> {
    let inst = spec.instantiate()?;
    let budget = options.budget;
    let mut checks = Vec::new();
    let mut bounds = Vec::new();
    let mut bound_checks = Vec::new();
    let (params, linear) = match &inst.code {
        CodeInstance::Rs(rs) => {
            let d = within_budget(rs.min_distance_bruteforce(budget))?;
            let params = CodeParams {
                kind: "rs".into(),
                n: rs.n(),
                k_designed: Some(rs.k()),
                k_actual: rs.generator().rank(),
                d_designed: Some(rs.designed_distance()),
                d_bruteforce: d,
                genus_bound: None,
            };
            (params, rs.linear_code().ok())
        }
        CodeInstance::Eval(ec) => {
            let d = if ec.rank() == ec.n() {
                Some(1)
            } else {
                within_budget(ec.min_distance_bruteforce(budget))?
            };
            let designed = ec.designed();
            let params = CodeParams {
                kind: "eval".into(),
                n: ec.n(),
                k_designed: designed.k,
                k_actual: ec.rank(),
                d_designed: designed.d,
                d_bruteforce: d,
                genus_bound: designed.genus_bound,
            };
            bounds = bound_entries(ec.points(), options.bound_upto, budget, &mut bound_checks)?;
            (params, ec.linear_code().ok())
        }
        CodeInstance::Bezout(bc) => {
            let d = if bc.rank() == bc.n() {
                Some(1)
            } else {
                within_budget(bc.min_distance_bruteforce(budget))?
            };
            let params = CodeParams {
                kind: "bezout".into(),
                n: bc.n(),
                k_designed: Some(bc.designed_k()),
                k_actual: bc.rank(),
                d_designed: Some(bc.designed_d()),
                d_bruteforce: d,
                genus_bound: None,
            };
            (params, bc.linear_code().ok())
        }
        CodeInstance::Raw(code) => {
            let d = within_budget(code.min_distance_bruteforce(budget))?;
            let params = CodeParams {
                kind: "raw-generator".into(),
                n: code.n(),
                k_designed: None,
                k_actual: code.k(),
                d_designed: None,
                d_bruteforce: d,
                genus_bound: None,
            };
            (params, Some(code.clone()))
        }
    };
    if let Some(k) = params.k_designed {
        check(&mut checks, "k_actual = k_designed", params.k_actual == k);
    }
    if let Some(d) = params.d_bruteforce {
        if let Some(dd) = params.d_designed {
            check(&mut checks, "d_bruteforce >= d_designed", d >= dd);
        }
        if let Some(gb) = params.genus_bound {
            check(&mut checks, "d_bruteforce >= n + 1 - k - g", d as i64 >= gb);
        }
        check(
            &mut checks,
            "d_bruteforce <= n - k + 1",
            d + params.k_actual <= params.n + 1,
        );
    }
    checks.append(&mut bound_checks);
    let channel_request = options
        .channel
        .or(spec.channel.as_ref().map(|c| (c.errors, c.trials)));
    let channel = match channel_request {
        None => None,
        Some((errors, trials)) => {
            let code = linear.ok_or(Error::TrivialCode {
                k: params.k_actual,
                n: params.n,
            })?;
            let capacity = params.d_bruteforce.map(|d| (d - 1) / 2);
            let e = errors
                .or(capacity)
                .ok_or(Error::BudgetExceeded { needed: 0, budget })?;
            let result = run_channel_experiment(&code, e, trials, options.seed, budget)?;
            if capacity.is_some_and(|c| e <= c) {
                check(
                    &mut checks,
                    format!("all {trials} trials with {e} errors decode"),
                    result.successes == trials,
                );
            }
            Some(result)
        }
    };
    let curve = inst.curve.as_ref().map(|c| {
        format!(
            "family {}: {} = 0",
            c.family_name(),
            c.defining_polynomial()
        )
    });
    let field = FieldSection {
        p: inst.field.p(),
        r: inst.field.r(),
        modulus: Some(inst.field.modulus().to_vec()),
    };
    Ok(ExperimentReport {
        field,
        curve,
        params,
        bounds,
        channel,
        checks,
    })
}

impl ExperimentReport {
    /// Every recorded inequality holds.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let fl = &self.field;
        writeln!(
            s,
            "field        GF({}^{}) modulus {:?}",
            fl.p,
            fl.r,
            fl.modulus.as_deref().unwrap_or(&[])
        )?;
        if let Some(c) = &self.curve {
            writeln!(s, "curve        {c}")?;
        }
        let p = &self.params;
        writeln!(s, "code         {}", p.kind)?;
        writeln!(s, "n            {}", p.n)?;
        writeln!(s, "k_designed   {}", opt(&p.k_designed))?;
        writeln!(s, "k_actual     {}", p.k_actual)?;
        writeln!(s, "d_designed   {}", opt(&p.d_designed))?;
        writeln!(s, "d_bruteforce {}", opt(&p.d_bruteforce))?;
        if p.genus_bound.is_some() {
            writeln!(s, "genus_bound  {}", opt(&p.genus_bound))?;
        }
        if !self.bounds.is_empty() {
            writeln!(s, "order bound for C_l:")?;
            writeln!(
                s,
                "  {:>3} {:>5} {:>4} {:>4} {:>5} {:>6}",
                "l", "dim", "nu", "d", "d_phi", "d(C_l)"
            )?;
            for b in &self.bounds {
                writeln!(
                    s,
                    "  {:>3} {:>5} {:>4} {:>4} {:>5} {:>6}",
                    b.l,
                    b.dim_c,
                    b.nu,
                    b.d,
                    opt(&b.d_phi),
                    opt(&b.d_bruteforce)
                )?;
            }
        }
        if let Some(c) = &self.channel {
            writeln!(
                s,
                "channel      seed {} trials {} errors {} successes {} rate {:.4}",
                c.seed,
                c.trials,
                c.error_weight,
                c.successes,
                c.success_rate()
            )?;
        }
        writeln!(s, "checks:")?;
        for c in &self.checks {
            writeln!(s, "  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name)?;
        }
        write!(s, "result       {}", if self.ok() { "ok" } else { "FAIL" })?;
        f.write_str(&s)
    }
}
