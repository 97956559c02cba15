//! Module definition files, the series text grammar, and the command
//! implementations behind the `abmod` binary.
//!
//! A module file is JSON, either an explicit presentation
//!
//! ```json
//! {"rank": 1, "precision": 6, "matrix": [["1/2*b^1 + 1*b^2"]]}
//! ```
//!
//! or a named construction with its parameters:
//!
//! ```json
//! {"construct": "Epair", "lambda": "2", "mu": "1/2", "precision": 10}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::InvariantReport;
use crate::jets::{determination_bound, is_intertwiner, jet_isomorphism, lift_jet_isomorphism, JetIsoResult};
use crate::module::{AbModule, Construct};
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::{random_unit_matrix, SeriesMatrix};
use crate::structure::{classify_rank2, ext_dims, jordan_holder, ClassificationRank2};

/// Fallback for `ABMOD_MAX_PRECISION`.
pub const DEFAULT_MAX_PRECISION: usize = 64;

/// Byte offset and message of a grammar error inside one string.
type Located<T> = std::result::Result<T, (usize, String)>;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Located<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err((self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Located<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err((start, "expected a digit".into()));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    /// `n` or `n/d` without sign.
    fn rational(&mut self) -> Located<num_rational::BigRational> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let d = self.integer()?;
            if num_traits::Zero::is_zero(&d) {
                return Err((at, "zero denominator".into()));
            }
            Ok(num_rational::BigRational::new(n, d))
        } else {
            Ok(num_rational::BigRational::from_integer(n))
        }
    }

    fn signed_rational(&mut self) -> Located<num_rational::BigRational> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    /// `r`, `(r±ri)` or `(±ri)`, without a leading sign.
    fn coefficient(&mut self) -> Located<Q> {
        if !self.eat(b'(') {
            return Ok(Q::from_rational(self.rational()?));
        }
        let first = self.signed_rational()?;
        if self.eat(b'i') {
            self.expect(b')')?;
            return Ok(Q::new(num_traits::Zero::zero(), first));
        }
        let im = match self.peek() {
            Some(b'+') | Some(b'-') => {
                let im = self.signed_rational()?;
                self.expect(b'i')?;
                im
            }
            _ => num_traits::Zero::zero(),
        };
        self.expect(b')')?;
        Ok(Q::new(first, im))
    }

    /// `b` or `b^k`.
    fn power(&mut self) -> Located<Option<usize>> {
        if !self.eat(b'b') {
            return Ok(None);
        }
        if !self.eat(b'^') {
            return Ok(Some(1));
        }
        let at = self.pos;
        let k = self.integer()?;
        usize::try_from(k).map(Some).map_err(|_| (at, "exponent too large".into()))
    }

    fn term(&mut self) -> Located<(Q, usize)> {
        if let Some(k) = self.power()? {
            return Ok((Q::one(), k));
        }
        let c = self.coefficient()?;
        if self.eat(b'*') {
            let at = self.pos;
            let k = self.power()?.ok_or((at, "expected 'b'".to_string()))?;
            Ok((c, k))
        } else {
            Ok((c, 0))
        }
    }
}

/// Parse a series in the `c*b^k + ...` grammar. Terms at or beyond `order`
/// are dropped.
pub fn parse_series_at(text: &str, order: usize) -> Located<TruncSeries> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut out = TruncSeries::zero(order);
    let mut first = true;
    loop {
        let neg = match cur.peek() {
            None if !first => break,
            Some(b'-') => {
                cur.pos += 1;
                true
            }
            Some(b'+') if !first => {
                cur.pos += 1;
                false
            }
            _ if first => false,
            _ => return Err((cur.pos, "expected '+' or '-'".into())),
        };
        let (c, k) = cur.term()?;
        if k < order {
            let c = if neg { -&c } else { c };
            let v = out.coeff(k).expect("k < order") + &c;
            out.set_coeff(k, v);
        }
        first = false;
    }
    Ok(out)
}

/// Parse a scalar: a series with only a constant term.
pub fn parse_scalar(text: &str) -> Located<Q> {
    let s = parse_series_at(text, 64)?;
    if s.coeffs().iter().skip(1).any(|c| !c.is_zero()) {
        return Err((0, "expected a constant".into()));
    }
    Ok(s.constant_term())
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn parse_error(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, offset);
    Error::Parse { line, column, message: message.into() }
}

/// Locate the `nth` occurrence of a JSON string literal in the source.
fn literal_offset(text: &str, literal: &str, nth: usize) -> usize {
    let quoted = serde_json::to_string(literal).expect("string serializes");
    text.match_indices(&quoted).nth(nth).map_or(0, |(i, _)| i + 1)
}

fn from_json_error(e: serde_json::Error) -> Error {
    let line = e.line().max(1);
    let message = e.to_string();
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    Error::Parse { line, column: e.column().max(1), message }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rank: usize,
    precision: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructFile {
    construct: String,
    precision: Option<usize>,
    lambda: Option<Number>,
    mu: Option<Number>,
    alpha: Option<Number>,
    rho: Option<Number>,
    n: Option<usize>,
    k: Option<usize>,
    parts: Option<Vec<Value>>,
}

/// A parsed module file.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSpec {
    /// Explicit presentation; entries are known modulo `b^precision`.
    Matrix { matrix: SeriesMatrix, precision: usize },
    Construct { construct: Box<Construct>, precision: Option<usize> },
}

impl ModuleSpec {
    pub fn default_precision(&self) -> usize {
        match self {
            ModuleSpec::Matrix { precision, .. } => *precision,
            ModuleSpec::Construct { construct, precision } => {
                precision.unwrap_or_else(|| construct.default_precision())
            }
        }
    }

    /// Whether a higher working precision can be produced on demand.
    pub fn can_raise_precision(&self) -> bool {
        matches!(self, ModuleSpec::Construct { .. })
    }

    /// Build at the requested precision. Explicit presentations are read as
    /// polynomials when raised past their stated precision.
    pub fn build(&self, precision: Option<usize>) -> Result<AbModule> {
        let n = precision.unwrap_or_else(|| self.default_precision());
        match self {
            ModuleSpec::Matrix { matrix, .. } => AbModule::new(matrix.with_order(n), n),
            ModuleSpec::Construct { construct, .. } => construct.build(Some(n)),
        }
    }
}

fn construct_from_file(text: &str, f: ConstructFile) -> Result<Construct> {
    let at = literal_offset(text, &f.construct, 0);
    let bad = |m: String| parse_error(text, at, m);
    let scalar = |name: &str, v: &Option<Number>| -> Result<Q> {
        match v {
            None => Err(bad(format!("missing parameter '{name}'"))),
            Some(Number::Int(i)) => Ok(Q::from_int(*i)),
            Some(Number::Text(s)) => parse_scalar(s).map_err(|(off, m)| {
                parse_error(text, literal_offset(text, s, 0) + off, m)
            }),
        }
    };
    let nat = |name: &str, v: Option<usize>| v.ok_or_else(|| bad(format!("missing parameter '{name}'")));
    let allowed: &[&str] = match f.construct.as_str() {
        "E" => &["lambda"],
        "Elog" => &["lambda", "n"],
        "Epair" => &["lambda", "mu"],
        "Ealpha" => &["lambda", "n", "alpha"],
        "J" => &["k", "lambda"],
        "F" => &["k", "lambda", "rho"],
        "Rank3Example" => &[],
        "DirectSum" => &["parts"],
        other => return Err(bad(format!("unknown construction '{other}'"))),
    };
    let given = [
        ("lambda", f.lambda.is_some()),
        ("mu", f.mu.is_some()),
        ("alpha", f.alpha.is_some()),
        ("rho", f.rho.is_some()),
        ("n", f.n.is_some()),
        ("k", f.k.is_some()),
        ("parts", f.parts.is_some()),
    ];
    if let Some((name, _)) = given.iter().find(|(name, set)| *set && !allowed.contains(name)) {
        return Err(bad(format!("'{}' does not take parameter '{name}'", f.construct)));
    }
    Ok(match f.construct.as_str() {
        "E" => Construct::E { lambda: scalar("lambda", &f.lambda)? },
        "Elog" => Construct::Elog { lambda: scalar("lambda", &f.lambda)?, n: nat("n", f.n)? },
        "Epair" => Construct::Epair { lambda: scalar("lambda", &f.lambda)?, mu: scalar("mu", &f.mu)? },
        "Ealpha" => Construct::Ealpha {
            lambda: scalar("lambda", &f.lambda)?,
            n: nat("n", f.n)?,
            alpha: scalar("alpha", &f.alpha)?,
        },
        "J" => Construct::J { k: nat("k", f.k)?, lambda: scalar("lambda", &f.lambda)? },
        "F" => Construct::F {
            k: nat("k", f.k)?,
            lambda: scalar("lambda", &f.lambda)?,
            rho: scalar("rho", &f.rho)?,
        },
        "Rank3Example" => Construct::Rank3Example,
        _ => {
            let parts = f.parts.unwrap_or_default();
            if parts.is_empty() {
                return Err(bad("DirectSum needs a nonempty 'parts' list".into()));
            }
            let inner = parts
                .into_iter()
                .map(|v| {
                    let part: ConstructFile = serde_json::from_value(v)
                        .map_err(|e| bad(format!("in DirectSum part: {e}")))?;
                    if part.precision.is_some() {
                        return Err(bad("precision belongs to the outer file".into()));
                    }
                    construct_from_file(text, part)
                })
                .collect::<Result<Vec<_>>>()?;
            Construct::DirectSum(inner)
        }
    })
}

/// Parse a module file.
pub fn parse_module_file(text: &str) -> Result<ModuleSpec> {
    let value: Value = serde_json::from_str(text).map_err(from_json_error)?;
    let Some(obj) = value.as_object() else {
        return Err(parse_error(text, 0, "expected a JSON object"));
    };
    if obj.contains_key("construct") {
        let f: ConstructFile = serde_json::from_str(text).map_err(from_json_error)?;
        let precision = f.precision;
        if precision == Some(0) {
            return Err(parse_error(text, literal_offset(text, "precision", 0), "precision must be positive"));
        }
        let construct = construct_from_file(text, f)?;
        // Surface parameter errors (k = 0, alpha = 0, ...) at parse time.
        construct.build(Some(1)).map_err(|e| match e {
            Error::BadParameter(m) => parse_error(text, literal_offset(text, "construct", 0), m),
            other => other,
        })?;
        return Ok(ModuleSpec::Construct { construct: Box::new(construct), precision });
    }
    let f: MatrixFile = serde_json::from_str(text).map_err(from_json_error)?;
    let rank_at = literal_offset(text, "rank", 0);
    if f.rank == 0 {
        return Err(parse_error(text, rank_at, "rank must be at least 1"));
    }
    if f.precision == 0 {
        return Err(parse_error(text, literal_offset(text, "precision", 0), "precision must be positive"));
    }
    if f.matrix.len() != f.rank || f.matrix.iter().any(|r| r.len() != f.rank) {
        return Err(parse_error(
            text,
            literal_offset(text, "matrix", 0),
            format!("matrix must be {0}x{0}", f.rank),
        ));
    }
    let mut seen = std::collections::HashMap::<&str, usize>::new();
    let mut rows = Vec::with_capacity(f.rank);
    for row in &f.matrix {
        let mut out = Vec::with_capacity(f.rank);
        for entry in row {
            let nth = seen.entry(entry.as_str()).or_insert(0);
            let series = parse_series_at(entry, f.precision).map_err(|(off, m)| {
                parse_error(text, literal_offset(text, entry, *nth) + off, m)
            })?;
            *nth += 1;
            out.push(series);
        }
        rows.push(out);
    }
    let matrix = SeriesMatrix::from_rows(rows)?;
    Ok(ModuleSpec::Matrix { matrix, precision: f.precision })
}

/// Canonical text of a presentation; parsing it back gives the same module.
pub fn format_module(e: &AbModule) -> String {
    let p = e.rank();
    let m = e.matrix();
    let file = MatrixFile {
        rank: p,
        precision: e.known_order(),
        matrix: (0..p).map(|i| (0..p).map(|j| m.get(i, j).to_string()).collect()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::InsufficientPrecision { .. } => 4,
        _ => 3,
    }
}

/// Working-precision policy shared by the commands.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Starting precision; otherwise each file's own.
    pub precision: Option<usize>,
    /// Ceiling for automatic retries.
    pub max_precision: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision: None, max_precision: DEFAULT_MAX_PRECISION }
    }
}

impl Options {
    /// Reads `ABMOD_MAX_PRECISION`, ignoring unparsable values.
    pub fn from_env(precision: Option<usize>) -> Options {
        let max_precision = std::env::var("ABMOD_MAX_PRECISION")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_PRECISION);
        Options { precision, max_precision }
    }
}

/// Run `f` on the built modules, doubling the working precision of
/// constructed inputs after a precision failure, up to the cap.
fn with_retry<T>(
    specs: &[&ModuleSpec],
    opts: Options,
    f: impl Fn(&[AbModule]) -> Result<T>,
) -> Result<T> {
    let mut precision = opts
        .precision
        .unwrap_or_else(|| specs.iter().map(|s| s.default_precision()).max().unwrap_or(1));
    loop {
        let modules = specs
            .iter()
            .map(|s| {
                let n = if s.can_raise_precision() || opts.precision.is_some() {
                    Some(precision)
                } else {
                    None
                };
                s.build(n)
            })
            .collect::<Result<Vec<_>>>()?;
        match f(&modules) {
            Err(Error::InsufficientPrecision { context, needed, have })
                if specs.iter().any(|s| s.can_raise_precision()) =>
            {
                let next = (2 * precision).max(needed);
                if precision >= opts.max_precision {
                    return Err(Error::InsufficientPrecision { context, needed: needed.max(next), have });
                }
                precision = next.min(opts.max_precision);
            }
            other => return other,
        }
    }
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &SeriesMatrix) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

pub fn cmd_invariants(spec: &ModuleSpec, opts: Options) -> Result<Value> {
    with_retry(&[spec], opts, |m| {
        let e = &m[0];
        let r = InvariantReport::compute(e)?;
        let jh = jordan_holder(e)?;
        let classes: Vec<Value> = r
            .widths
            .classes
            .iter()
            .map(|c| {
                json!({
                    "class": c.class.to_string(),
                    "lambda_min": c.lambda_min.to_string(),
                    "lambda_max": c.lambda_max.to_string(),
                    "width": c.width,
                })
            })
            .collect();
        Ok(json!({
            "rank": r.rank,
            "precision": e.known_order(),
            "simple_pole": r.simple_pole,
            "or": r.regularity_order,
            "delta": r.delta,
            "saturation_steps": r.saturation_steps,
            "spectrum_sharp": strings(&r.spectrum_sharp.eigenvalues),
            "spectrum_b": strings(&r.spectrum_flat.eigenvalues),
            "widths": classes,
            "width": r.widths.width,
            "alpha": r.alpha.to_string(),
            "jh_exponents": strings(&jh.exponents),
            "N0": r.determination_bound(),
        }))
    })
}

pub fn cmd_jet_iso(a: &ModuleSpec, b: &ModuleSpec, order: usize, seed: u64, opts: Options) -> Result<Value> {
    let opts = Options { precision: opts.precision.or(Some(order.max(a.default_precision()).max(b.default_precision()))), ..opts };
    with_retry(&[a, b], opts, |m| {
        Ok(match jet_isomorphism(&m[0], &m[1], order, seed)? {
            JetIsoResult::Iso(p) => json!({"status": "Iso", "order": order, "witness": matrix_json(&p)}),
            JetIsoResult::NotIso => json!({"status": "NotIso", "order": order}),
            JetIsoResult::UndecidedRandomized(trials) => {
                json!({"status": "UndecidedRandomized", "order": order, "trials": trials})
            }
        })
    })
}

pub fn cmd_dual(spec: &ModuleSpec, opts: Options) -> Result<String> {
    with_retry(&[spec], opts, |m| Ok(format_module(&m[0].dual())))
}

pub fn cmd_saturate(spec: &ModuleSpec, opts: Options) -> Result<String> {
    with_retry(&[spec], opts, |m| Ok(format_module(&crate::invariants::saturate(&m[0])?.module)))
}

pub fn classification_json(c: &ClassificationRank2) -> Value {
    match c {
        ClassificationRank2::Sum(l, m) => json!({"variant": "Sum", "lambda": l.to_string(), "mu": m.to_string()}),
        ClassificationRank2::Log(l, n) => json!({"variant": "Log", "lambda": l.to_string(), "n": n}),
        ClassificationRank2::Pair(l, m) => json!({"variant": "Pair", "lambda": l.to_string(), "mu": m.to_string()}),
        ClassificationRank2::Alpha(l, n, a) => {
            json!({"variant": "Alpha", "lambda": l.to_string(), "n": n, "alpha": a.to_string()})
        }
    }
}

pub fn cmd_classify(spec: &ModuleSpec, opts: Options) -> Result<Value> {
    with_retry(&[spec], opts, |m| Ok(classification_json(&classify_rank2(&m[0])?)))
}

pub fn cmd_jh(spec: &ModuleSpec, opts: Options) -> Result<Value> {
    with_retry(&[spec], opts, |m| {
        let jh = jordan_holder(&m[0])?;
        Ok(json!({"exponents": strings(&jh.exponents), "sum": jh.sum().to_string()}))
    })
}

pub fn cmd_ext(a: &ModuleSpec, b: &ModuleSpec, opts: Options) -> Result<Value> {
    with_retry(&[a, b], opts, |m| {
        let (ext0, ext1) = ext_dims(&m[0], &m[1])?;
        Ok(json!({"ext0": ext0, "ext1": ext1}))
    })
}

/// Determination check: a seeded random base change of the module is
/// recognised at `N0` and the jet isomorphism lifts to the working
/// precision.
pub fn cmd_verify_bound(spec: &ModuleSpec, seed: u64, opts: Options) -> Result<Value> {
    with_retry(&[spec], opts, |m| {
        let e = &m[0];
        let n0 = determination_bound(e)?;
        let q = random_unit_matrix(e.rank(), e.known_order(), seed);
        let moved = e.change_basis(&q)?;
        let JetIsoResult::Iso(phi) = jet_isomorphism(e, &moved, n0, seed)? else {
            return Ok(json!({"N0": n0, "jet_iso": false, "verified": false}));
        };
        let target = 2 * n0 + 2;
        let lift = lift_jet_isomorphism(e, &moved, &phi, target)?;
        let order = lift.matrix.known_order();
        let ok = is_intertwiner(e, &moved, &lift.matrix, order);
        Ok(json!({
            "N0": n0,
            "jet_iso": true,
            "lift_order": order,
            "pinned": lift.pinned,
            "verified": ok,
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_grammar() {
        let s = parse_series_at("1/2*b^1 - b^3 + (1/3-2i)*b^2 + 4", 5).unwrap();
        assert_eq!(s.to_string(), "4*b^0 + 1/2*b^1 + (1/3-2i)*b^2 - 1*b^3");
        let back = parse_series_at(&s.to_string(), 5).unwrap();
        assert_eq!(back, s);
        assert_eq!(parse_series_at("(3i)*b", 2).unwrap().coeff(1), Some(&Q::complex((0, 1), (3, 1))));
        assert!(parse_series_at("1/0", 2).is_err());
        assert_eq!(parse_series_at("1 +", 2).unwrap_err().0, 3);
    }

    #[test]
    fn module_files() {
        let text = "{\"rank\": 1, \"precision\": 4, \"matrix\": [[\"1/2*b^1 + b^2\"]]}";
        let spec = parse_module_file(text).unwrap();
        let e = spec.build(None).unwrap();
        let canon = format_module(&e);
        let again = parse_module_file(&canon).unwrap().build(None).unwrap();
        assert_eq!(format_module(&again), canon);

        let bad = "{\"rank\": 0, \"precision\": 4, \"matrix\": []}";
        assert!(matches!(parse_module_file(bad), Err(Error::Parse { line: 1, .. })));
        let extra = "{\"rank\": 1, \"precision\": 4, \"matrix\": [[\"0\"]], \"x\": 1}";
        assert!(matches!(parse_module_file(extra), Err(Error::Parse { .. })));
        let typo = "{\"rank\": 1,\n \"precision\": 4,\n \"matrix\": [[\"1/2*c\"]]}";
        match parse_module_file(typo) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 19)),
            other => panic!("{other:?}"),
        }
        let c = parse_module_file("{\"construct\": \"J\", \"k\": 3, \"lambda\": \"0\", \"precision\": 10}").unwrap();
        assert_eq!(c.build(None).unwrap().known_order(), 10);
        assert!(parse_module_file("{\"construct\": \"E\", \"lambda\": 1, \"mu\": 2}").is_err());
    }

    #[test]
    fn commands() {
        let j3 = parse_module_file("{\"construct\":\"J\",\"k\":3,\"lambda\":\"0\",\"precision\":10}").unwrap();
        let r = cmd_invariants(&j3, Options::default()).unwrap();
        assert_eq!(r["N0"], 4);
        assert_eq!(r["width"], -2);
        let e0 = parse_module_file("{\"construct\":\"E\",\"lambda\":\"0\"}").unwrap();
        let x = cmd_ext(&e0, &e0, Options::default()).unwrap();
        assert_eq!((x["ext0"].clone(), x["ext1"].clone()), (json!(1), json!(2)));
        let el = parse_module_file("{\"construct\":\"E\",\"lambda\":\"1/3\"}").unwrap();
        let d = cmd_dual(&el, Options::default()).unwrap();
        assert!(d.contains("-1/3*b^1"));
    }
}
