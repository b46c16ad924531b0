//! Command implementations behind the `torsion8` binary.
//!
//! Each command returns an [`Outcome`]: a JSON report for stdout plus the
//! process exit code. Exit codes: 0 ok, 1 verification failed, 2 bad curve,
//! 3 bad point, 4 parse error.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::curve::{Curve, Point, Sign, Tolerance};
use crate::division;
use crate::error::{Error, Result};
use crate::golden::{GoldenValues, MULTIPLE_TOL, RADICAL_TOL, STATED_TWO_P_X, X_P_REL_TOL};
use crate::json;
use crate::normalize::{map_point, to_short};
use crate::radicals::beta_gamma;
use crate::torsion::{self, Order8Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn new(report: Value, passed: bool) -> Self {
        Outcome {
            report,
            exit_code: if passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            },
        }
    }

    pub fn from_error(err: &Error) -> Self {
        Outcome {
            report: error_report(err),
            exit_code: err.exit_code(),
        }
    }

    pub fn render(&self) -> String {
        json::render(&self.report)
    }
}

pub fn error_report(err: &Error) -> Value {
    json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
            "exit_code": err.exit_code(),
        }
    })
}

/// Flags shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: Tolerance,
    pub branch: Sign,
    pub max_order: u32,
    pub permute_roots: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: Tolerance::default(),
            branch: Sign::Plus,
            max_order: torsion::ORDER_SEARCH_LIMIT,
            permute_roots: false,
        }
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (also with exponents such as
/// `1e-3-2.5e2i`).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse {text:?} as a complex number"));
    if s.is_empty() {
        return Err(bad());
    }
    let real = |part: &str| -> Result<f64> {
        let v: f64 = part.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => real(other)?,
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        real(re_part)?
    };
    Ok(Complex64::new(re, im))
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    let bad = || Error::Parse(format!("expected [re, im], a number or a string, got {v}"));
    match v {
        Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)).ok_or_else(bad),
        Value::String(s) => parse_complex(s),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64().ok_or_else(bad)?;
            let im = parts[1].as_f64().ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        _ => Err(bad()),
    }
}

/// Three comma-separated complex numbers, or a JSON array of three
/// `[re, im]` pairs.
fn parse_complex_list(text: &str, expected: usize, what: &str) -> Result<Vec<Complex64>> {
    let trimmed = text.trim();
    let values = if trimmed.starts_with('[') {
        let parsed: Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("{what}: invalid JSON: {e}")))?;
        let items = parsed
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{what}: expected a JSON array")))?;
        items
            .iter()
            .map(complex_from_json)
            .collect::<Result<Vec<_>>>()?
    } else {
        trimmed
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?
    };
    if values.len() != expected {
        return Err(Error::Parse(format!(
            "{what}: expected {expected} complex numbers, got {}",
            values.len()
        )));
    }
    Ok(values)
}

/// The three roots `e1, e2, e3` of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSpec {
    pub roots: [Complex64; 3],
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let v = parse_complex_list(text, 3, "roots")?;
        Ok(CurveSpec {
            roots: [v[0], v[1], v[2]],
        })
    }

    pub fn curve(&self) -> Result<Curve> {
        let [e1, e2, e3] = self.roots;
        Curve::new(e1, e2, e3)
    }
}

/// How a command receives its input point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointArg {
    Coords(Complex64, Complex64),
    /// `x` only; `y` from the configured branch.
    X(Complex64),
    /// The constructed order-8 point on the configured branch.
    Order8,
}

impl PointArg {
    /// Parse `"x,y"`.
    pub fn parse_coords(text: &str) -> Result<Self> {
        let v = parse_complex_list(text, 2, "point")?;
        Ok(PointArg::Coords(v[0], v[1]))
    }

    pub fn resolve(&self, curve: &Curve, opts: &Options) -> Result<Point> {
        let p = match *self {
            PointArg::Coords(x, y) => Point::affine(x, y),
            PointArg::X(x) => curve.lift_x(x, opts.branch),
            PointArg::Order8 => torsion::order8_point(curve, opts.branch)?,
        };
        if !curve.contains(&p, opts.tol) {
            return Err(Error::OffCurve(format!("{p} is not on the curve")));
        }
        Ok(p)
    }
}

fn curve_json(curve: &Curve) -> Value {
    let [e1, e2, e3] = curve.roots();
    json!({ "e1": json::complex(e1), "e2": json::complex(e2), "e3": json::complex(e3) })
}

fn options_json(opts: &Options) -> Value {
    json!({
        "tol": json::float(opts.tol.rel),
        "branch": opts.branch.symbol(),
        "max_order": opts.max_order,
        "permute_roots": opts.permute_roots,
    })
}

fn order8_json(report: &Order8Report) -> Map<String, Value> {
    let r = &report.radicals;
    let mut m = Map::new();
    m.insert("beta".into(), json::complex(r.beta));
    m.insert("gamma".into(), json::complex(r.gamma));
    m.insert("beta1".into(), json::complex(r.beta1));
    m.insert("beta2".into(), json::complex(r.beta2));
    m.insert("branch".into(), Value::from(report.branch.symbol()));
    m.insert("P".into(), json::point(&report.point));
    if let Some(x) = report.point.x() {
        m.insert("x_P".into(), json::complex(x));
    }
    m.insert(
        "multiples".into(),
        Value::Array(
            report
                .multiples
                .iter()
                .map(|(k, p)| json!({ "k": k, "point": json::point(p) }))
                .collect(),
        ),
    );
    if let Some(x) = report.multiple(2).and_then(|p| p.x()) {
        m.insert("two_P_x".into(), json::complex(x));
    }
    if let Some(p) = report.multiple(4) {
        m.insert("four_P".into(), json::point(&p));
    }
    m.insert(
        "verified_order".into(),
        json::optional_order(report.verified_order),
    );
    m.insert(
        "oracle_order".into(),
        json::optional_order(report.oracle_order),
    );
    m.insert("four_p_is_e2".into(), Value::from(report.four_p_is_e2));
    m.insert(
        "oracle_confirms".into(),
        Value::from(report.oracle_confirms),
    );
    m.insert(
        "beta_assumption_met".into(),
        Value::from(report.beta_assumption_met),
    );
    m
}

struct Check {
    name: &'static str,
    expected: Value,
    actual: Value,
    error: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.error <= self.tolerance
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "error": json::float(self.error),
            "tolerance": json::float(self.tolerance),
            "pass": self.passed(),
        })
    }

    fn complex(
        name: &'static str,
        expected: Complex64,
        actual: Complex64,
        tolerance: f64,
        relative: bool,
    ) -> Self {
        let mut error = (actual - expected).norm();
        if relative {
            error /= expected.norm();
        }
        if !error.is_finite() {
            error = f64::INFINITY;
        }
        Check {
            name,
            expected: json::complex(expected),
            actual: json::complex(actual),
            error,
            tolerance,
        }
    }

    fn flag(name: &'static str, actual: bool) -> Self {
        Check {
            name,
            expected: Value::Bool(true),
            actual: Value::Bool(actual),
            error: if actual { 0.0 } else { 1.0 },
            tolerance: 0.0,
        }
    }
}

fn golden_checks(report: &Order8Report, golden: &GoldenValues) -> Vec<Check> {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let r = &report.radicals;
    let two_p = report.multiple(2).and_then(|p| p.coords());
    let four_p = report.multiple(4).and_then(|p| p.coords());
    let two_p_y_abs = two_p.map_or(f64::NAN, |(_, y)| y.norm());
    vec![
        Check::complex(
            "x_P",
            golden.x_p,
            report.point.x().unwrap_or(nan),
            X_P_REL_TOL,
            true,
        ),
        Check::complex("beta", golden.beta, r.beta, RADICAL_TOL, false),
        Check::complex("gamma", golden.gamma, r.gamma, RADICAL_TOL, false),
        Check::complex("beta1", golden.beta1, r.beta1, RADICAL_TOL, false),
        Check::complex("beta2", golden.beta2, r.beta2, RADICAL_TOL, false),
        Check::complex(
            "two_P_x",
            golden.two_p_x,
            two_p.map_or(nan, |(x, _)| x),
            MULTIPLE_TOL,
            false,
        ),
        Check {
            name: "two_P_abs_y",
            expected: json::float(golden.two_p_y_abs),
            actual: json::float(two_p_y_abs),
            error: (two_p_y_abs - golden.two_p_y_abs).abs().max(0.0),
            tolerance: MULTIPLE_TOL,
        },
        Check::complex(
            "four_P_x",
            golden.four_p[0],
            four_p.map_or(nan, |(x, _)| x),
            MULTIPLE_TOL,
            false,
        ),
        Check::complex(
            "four_P_y",
            golden.four_p[1],
            four_p.map_or(nan, |(_, y)| y),
            MULTIPLE_TOL,
            false,
        ),
        Check::flag(
            "eight_P_is_infinity",
            report.multiple(8) == Some(Point::Infinity),
        ),
        Check::flag("verified_order_is_8", report.verified_order == Some(8)),
        Check::flag("four_p_is_e2", report.four_p_is_e2),
        Check::flag("oracle_confirms", report.oracle_confirms),
    ]
}

/// Replay the worked example on `(i, 0, -i)` against the embedded values.
pub fn cmd_example(opts: &Options) -> Outcome {
    cmd_example_with(&GoldenValues::EXAMPLE, opts)
}

/// [`cmd_example`] with caller-supplied expectations.
pub fn cmd_example_with(golden: &GoldenValues, opts: &Options) -> Outcome {
    let [e1, e2, e3] = golden.roots;
    let result = Curve::new(e1, e2, e3).and_then(|curve| {
        Ok((
            curve,
            torsion::verify_order8(&curve, opts.branch, opts.tol)?,
        ))
    });
    let (curve, report) = match result {
        Ok(v) => v,
        Err(err) => return Outcome::from_error(&err),
    };
    let checks = golden_checks(&report, golden);
    let passed = checks.iter().all(Check::passed);
    let mut m = order8_json(&report);
    m.insert("command".into(), Value::from("example"));
    m.insert("curve".into(), curve_json(&curve));
    m.insert("options".into(), options_json(opts));
    m.insert(
        "golden".into(),
        json!({ "checks": checks.iter().map(Check::json).collect::<Vec<_>>(), "pass": passed }),
    );
    let stated = Complex64::new(STATED_TWO_P_X, 0.0);
    let matches_stated = report
        .multiple(2)
        .and_then(|p| p.x())
        .is_some_and(|x| (x - stated).norm() <= MULTIPLE_TOL);
    m.insert("stated_two_P_x".into(), json::complex(stated));
    m.insert("two_P_x_matches_stated".into(), Value::from(matches_stated));
    m.insert(
        "status".into(),
        Value::from(if passed { "pass" } else { "fail" }),
    );
    Outcome::new(Value::Object(m), passed)
}

/// Which torsion points `cmd_torsion` should construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionOrder {
    Two,
    Four,
    Eight,
    All,
}

impl TorsionOrder {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "2" => Ok(TorsionOrder::Two),
            "4" => Ok(TorsionOrder::Four),
            "8" => Ok(TorsionOrder::Eight),
            "all" => Ok(TorsionOrder::All),
            other => Err(Error::Parse(format!(
                "--order must be 2, 4, 8 or all, got {other:?}"
            ))),
        }
    }
}

fn small_torsion_json(
    curve: &Curve,
    points: &[Point],
    expected: u32,
    opts: &Options,
) -> Result<(Value, bool)> {
    let sw = to_short(curve);
    let mut ok = true;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let group = curve.order_of(p, opts.max_order, opts.tol)?;
        let oracle = division::certified_order(&sw, &map_point(&sw, p, opts.tol)?, opts.tol)?;
        ok &= group == Some(expected) && oracle == Some(expected);
        out.push(json!({
            "point": json::point(p),
            "double": json::point(&curve.double(p, opts.tol)?),
            "group_order": json::optional_order(group),
            "oracle_order": json::optional_order(oracle),
        }));
    }
    Ok((Value::Array(out), ok))
}

/// Relabel the roots when `--permute-roots` asks for it.
fn prepare_curve(spec: &CurveSpec, opts: &Options) -> Result<(Curve, Value)> {
    let curve = spec.curve()?;
    if !opts.permute_roots {
        return Ok((curve, json!({ "requested": false })));
    }
    let candidates = torsion::permutations_with_real_beta(&curve, opts.tol);
    let listed: Vec<Value> = candidates.iter().map(|(perm, _)| json!(perm)).collect();
    Ok(match candidates.first() {
        Some((perm, relabelled)) => (
            *relabelled,
            json!({ "requested": true, "found": true, "permutation": perm, "candidates": listed }),
        ),
        None => {
            log::warn!("no ordering of the roots gives a real beta above 1");
            (curve, json!({ "requested": true, "found": false }))
        }
    })
}

pub fn cmd_torsion(spec: &CurveSpec, order: TorsionOrder, opts: &Options) -> Result<Outcome> {
    let (curve, permutation) = prepare_curve(spec, opts)?;
    let mut m = Map::new();
    m.insert("command".into(), Value::from("torsion"));
    m.insert("curve".into(), curve_json(&curve));
    m.insert("options".into(), options_json(opts));
    m.insert("permutation".into(), permutation);
    let mut passed = true;

    if matches!(order, TorsionOrder::Two | TorsionOrder::All) {
        let (v, ok) = small_torsion_json(&curve, &torsion::order2_points(&curve), 2, opts)?;
        m.insert("order2".into(), v);
        passed &= ok;
    }
    if matches!(order, TorsionOrder::Four | TorsionOrder::All) {
        let (v, ok) = small_torsion_json(&curve, &torsion::order4_points(&curve)?, 4, opts)?;
        m.insert("order4".into(), v);
        passed &= ok;
    }
    if matches!(order, TorsionOrder::Eight | TorsionOrder::All) {
        let report = torsion::verify_order8(&curve, opts.branch, opts.tol)?;
        passed &= report.passed();
        m.insert("order8".into(), Value::Object(order8_json(&report)));
    }
    m.insert(
        "status".into(),
        Value::from(if passed { "pass" } else { "fail" }),
    );
    Ok(Outcome::new(Value::Object(m), passed))
}

pub fn cmd_mul(
    spec: &CurveSpec,
    k: u64,
    point: &PointArg,
    with_order: bool,
    opts: &Options,
) -> Result<Outcome> {
    let curve = spec.curve()?;
    let p = point.resolve(&curve, opts)?;
    let kp = curve.multiply(k, &p, opts.tol)?;
    let mut m = Map::new();
    m.insert("command".into(), Value::from("mul"));
    m.insert("curve".into(), curve_json(&curve));
    m.insert("options".into(), options_json(opts));
    m.insert("k".into(), Value::from(k));
    m.insert("point".into(), json::point(&p));
    m.insert("result".into(), json::point(&kp));
    if with_order {
        m.insert(
            "order".into(),
            json::optional_order(curve.order_of(&p, opts.max_order, opts.tol)?),
        );
    }
    Ok(Outcome::new(Value::Object(m), true))
}

/// Order of a point by both certifiers; exit code 1 when they disagree.
pub fn cmd_order(spec: &CurveSpec, point: &PointArg, opts: &Options) -> Result<Outcome> {
    let curve = spec.curve()?;
    let p = point.resolve(&curve, opts)?;
    let group = curve.order_of(&p, opts.max_order, opts.tol)?;
    let sw = to_short(&curve);
    let mapped = map_point(&sw, &p, opts.tol)?;
    let (oracle, profile) = if mapped.is_infinity() {
        (Some(1), Value::Array(vec![]))
    } else {
        let profile = division::torsion_profile(&sw, &mapped, opts.tol)?;
        let first = profile.iter().find(|(_, v)| *v).map(|(n, _)| *n);
        let listed = profile
            .iter()
            .map(|(n, v)| json!({ "n": n, "vanishes": v }))
            .collect();
        (first, Value::Array(listed))
    };
    // the oracle only sees indices up to 16
    let comparable = group.is_none_or(|n| n <= division::MAX_INDEX);
    let agree = !comparable || group == oracle;
    let mut m = Map::new();
    m.insert("command".into(), Value::from("order"));
    m.insert("curve".into(), curve_json(&curve));
    m.insert("options".into(), options_json(opts));
    m.insert("point".into(), json::point(&p));
    m.insert("group_order".into(), json::optional_order(group));
    m.insert("oracle_order".into(), json::optional_order(oracle));
    m.insert("psi_profile".into(), profile);
    m.insert("agree".into(), Value::from(agree));
    Ok(Outcome::new(Value::Object(m), agree))
}

pub fn cmd_normalize(
    spec: &CurveSpec,
    point: Option<&PointArg>,
    opts: &Options,
) -> Result<Outcome> {
    let curve = spec.curve()?;
    let sw = to_short(&curve);
    let mut m = Map::new();
    m.insert("command".into(), Value::from("normalize"));
    m.insert("curve".into(), curve_json(&curve));
    m.insert("options".into(), options_json(opts));
    m.insert("A".into(), json::complex(sw.a));
    m.insert("B".into(), json::complex(sw.b));
    m.insert("shift".into(), json::complex(sw.shift));
    m.insert("discriminant".into(), json::complex(sw.discriminant()));
    if let Some(arg) = point {
        let p = arg.resolve(&curve, opts)?;
        m.insert("point".into(), json::point(&p));
        m.insert("mapped".into(), json::point(&map_point(&sw, &p, opts.tol)?));
    }
    let (beta, _) = beta_gamma(&curve)?;
    m.insert("beta".into(), json::complex(beta));
    Ok(Outcome::new(Value::Object(m), true))
}
