//! File formats: matrices (CSV or JSON), code specs, certificate reports and
//! symbol streams. Every file names its field by descriptor.

use coltrs_core::certify::{CertificateReport, NonGrs};
use coltrs_core::{CodeSpec, Elem, Field, Matrix, Regime, SpecParts, Subgroup};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct ParseError(pub String);

impl From<coltrs_core::Error> for ParseError {
    fn from(e: coltrs_core::Error) -> Self {
        ParseError(e.to_string())
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError(e.to_string())
    }
}

impl From<csv::Error> for ParseError {
    fn from(e: csv::Error) -> Self {
        ParseError(e.to_string())
    }
}

type Parsed<T> = Result<T, ParseError>;

/// One field element in JSON. Prime-field elements are plain integers;
/// extension-field elements carry both the exponent and coefficient forms.
/// A bare string token is accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Token(String),
    Both { exp: String, coeffs: Vec<u32> },
}

impl Number {
    pub fn of(field: &Field, x: Elem) -> Number {
        if field.degree() == 1 {
            Number::Int(i64::from(x.index()))
        } else {
            Number::Both { exp: field.format_elem(x), coeffs: field.coeffs(x) }
        }
    }

    pub fn to_elem(&self, field: &Field) -> Parsed<Elem> {
        match self {
            Number::Int(n) => Ok(field.from_int(*n)),
            Number::Token(t) => Ok(field.parse_elem(t)?),
            Number::Both { exp, coeffs } => {
                let a = field.parse_elem(exp)?;
                if a != field.from_coeffs(coeffs)? {
                    return Err(ParseError(format!("{exp} does not match coefficients {coeffs:?}")));
                }
                Ok(a)
            }
        }
    }
}

fn numbers(field: &Field, xs: &[Elem]) -> Vec<Number> {
    xs.iter().map(|&x| Number::of(field, x)).collect()
}

fn elems(field: &Field, xs: &[Number]) -> Parsed<Vec<Elem>> {
    xs.iter().map(|x| x.to_elem(field)).collect()
}

/// Both forms of one element, for terminal output.
pub fn show(field: &Field, x: Elem) -> String {
    if field.degree() == 1 {
        field.format_elem(x)
    } else {
        format!("{} {}", field.format_elem(x), field.format_coeffs(x))
    }
}

/// Multi-line rendering of a matrix, both forms per entry for extension fields.
pub fn show_matrix(g: &Matrix) -> String {
    let f = g.field();
    let cells: Vec<Vec<String>> = (0..g.rows()).map(|r| g.row(r).iter().map(|&x| show(f, x)).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

// ---- matrices ----

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    field: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Number>>,
}

pub fn matrix_to_json(g: &Matrix) -> String {
    let f = g.field();
    let file = MatrixFile {
        field: f.descriptor(),
        rows: g.rows(),
        cols: g.cols(),
        entries: (0..g.rows()).map(|r| numbers(f, g.row(r))).collect(),
    };
    serde_json::to_string_pretty(&file).expect("matrix serializes") + "\n"
}

pub fn matrix_from_json(text: &str) -> Parsed<Matrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let field = Field::parse_descriptor(&file.field)?;
    let rows = file.entries.iter().map(|r| elems(&field, r)).collect::<Parsed<Vec<_>>>()?;
    matrix_with_shape(&field, &rows, file.rows, file.cols)
}

fn matrix_with_shape(field: &Field, rows: &[Vec<Elem>], r: usize, c: usize) -> Parsed<Matrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(ParseError(format!("entries do not form a {r}x{c} matrix")));
    }
    let entries = rows.concat();
    Ok(Matrix::new(field, r, c, entries)?)
}

/// CSV with a `# field=... rows=... cols=...` header line and one token per
/// cell: residues for prime fields, `w^e` for extension fields.
pub fn matrix_to_csv(g: &Matrix) -> String {
    let f = g.field();
    let mut out = format!("# field={} rows={} cols={}\n", f.descriptor(), g.rows(), g.cols());
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in 0..g.rows() {
        let row: Vec<String> = g.row(r).iter().map(|&x| f.format_elem(x)).collect();
        writer.write_record(&row).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii"));
    out
}

pub fn matrix_from_csv(text: &str) -> Parsed<Matrix> {
    let (header, body) = text.split_once('\n').unwrap_or((text, ""));
    let fields = header_fields(header.strip_prefix('#').ok_or_else(|| ParseError("missing header line".into()))?);
    let field = Field::parse_descriptor(lookup(&fields, "field")?)?;
    let r = lookup_usize(&fields, "rows")?;
    let c = lookup_usize(&fields, "cols")?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        rows.push(record.iter().map(|t| field.parse_elem(t)).collect::<Result<Vec<_>, _>>()?);
    }
    matrix_with_shape(&field, &rows, r, c)
}

/// Picks the parser by content: JSON objects start with `{`.
pub fn matrix_from_text(text: &str) -> Parsed<Matrix> {
    if text.trim_start().starts_with('{') {
        matrix_from_json(text)
    } else {
        matrix_from_csv(text)
    }
}

fn header_fields(line: &str) -> Vec<(String, String)> {
    line.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn lookup<'a>(fields: &'a [(String, String)], key: &str) -> Parsed<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| ParseError(format!("header lacks {key}=")))
}

fn lookup_usize(fields: &[(String, String)], key: &str) -> Parsed<usize> {
    let v = lookup(fields, key)?;
    v.parse().map_err(|_| ParseError(format!("{key}={v} is not a count")))
}

// ---- specs ----

#[derive(Debug, Serialize, Deserialize)]
struct SpecFile {
    field: String,
    k: usize,
    b: Number,
    c: Number,
    subgroup_order: usize,
    mus: Vec<Number>,
    lambdas: Vec<Number>,
    extended: bool,
    #[serde(default = "default_regime")]
    regime: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Number>>,
}

fn default_regime() -> String {
    "subgroup".into()
}

pub fn spec_to_json(spec: &CodeSpec) -> String {
    let f = spec.field();
    let file = SpecFile {
        field: f.descriptor(),
        k: spec.k(),
        b: Number::of(f, spec.b()),
        c: Number::of(f, spec.c()),
        subgroup_order: spec.subgroup().order(),
        mus: numbers(f, spec.mus()),
        lambdas: numbers(f, spec.lambdas()),
        extended: spec.extended(),
        regime: match spec.regime() {
            Regime::Subgroup => "subgroup",
            Regime::EvenCubics => "even-cubics",
        }
        .into(),
        n: Some(spec.n()),
        points: Some(numbers(f, spec.points())),
    };
    serde_json::to_string_pretty(&file).expect("spec serializes") + "\n"
}

/// Parses a spec. `n` and `points`, when present, must agree with the
/// rebuilt code.
pub fn spec_from_json(text: &str) -> Parsed<CodeSpec> {
    let file: SpecFile = serde_json::from_str(text)?;
    let field = Field::parse_descriptor(&file.field)?;
    let regime = match file.regime.as_str() {
        "subgroup" => Regime::Subgroup,
        "even-cubics" => Regime::EvenCubics,
        other => return Err(ParseError(format!("unknown regime {other:?}"))),
    };
    let parts = SpecParts {
        k: file.k,
        b: file.b.to_elem(&field)?,
        c: file.c.to_elem(&field)?,
        subgroup: Subgroup::new(&field, file.subgroup_order)?,
        mus: elems(&field, &file.mus)?,
        lambdas: elems(&field, &file.lambdas)?,
        extended: file.extended,
        regime,
    };
    let spec = CodeSpec::new(&field, parts)?;
    if let Some(n) = file.n {
        if n != spec.n() {
            return Err(ParseError(format!("n = {n} but the recipe gives length {}", spec.n())));
        }
    }
    if let Some(points) = &file.points {
        if elems(&field, points)? != spec.points() {
            return Err(ParseError("listed points differ from those derived from b, c and mus".into()));
        }
    }
    Ok(spec)
}

// ---- reports ----

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportFile {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub is_mds: bool,
    pub witness: Vec<usize>,
    pub schur_dim: usize,
    pub schur_distance: Option<usize>,
    /// "not-equivalent", "inconclusive", or null outside 3 <= k <= n/2.
    pub non_grs: Option<String>,
    pub dual_ok: Option<bool>,
    /// "oracle" or "criterion-only".
    pub mode: String,
}

impl ReportFile {
    pub fn new(r: &CertificateReport) -> ReportFile {
        ReportFile {
            n: r.n,
            k: r.k,
            d: r.d,
            is_mds: r.is_mds,
            witness: r.witness.clone(),
            schur_dim: r.schur_dim,
            schur_distance: r.schur_distance,
            non_grs: r.non_grs.map(|v| {
                match v {
                    NonGrs::NotEquivalent => "not-equivalent",
                    NonGrs::Inconclusive => "inconclusive",
                }
                .to_string()
            }),
            dual_ok: r.dual_ok,
            mode: if r.criterion_only { "criterion-only" } else { "oracle" }.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

// ---- symbol streams ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamKind {
    Message,
    Codeword,
}

impl StreamKind {
    fn name(self) -> &'static str {
        match self {
            StreamKind::Message => "message",
            StreamKind::Codeword => "codeword",
        }
    }
}

/// Header `field=... n=... k=... kind=message|codeword`, then one word per
/// line as whitespace-separated tokens with `?` for an erasure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stream {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub kind: StreamKind,
    pub words: Vec<Vec<Option<Elem>>>,
}

impl Stream {
    pub fn width(&self) -> usize {
        match self.kind {
            StreamKind::Message => self.k,
            StreamKind::Codeword => self.n,
        }
    }
}

pub fn stream_to_text(s: &Stream) -> String {
    let mut out = format!("field={} n={} k={} kind={}\n", s.field.descriptor(), s.n, s.k, s.kind.name());
    for word in &s.words {
        let tokens: Vec<String> = word
            .iter()
            .map(|x| match x {
                Some(x) => s.field.format_elem(*x),
                None => "?".into(),
            })
            .collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

pub fn stream_from_text(text: &str) -> Parsed<Stream> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| ParseError("empty stream".into()))?;
    let fields = header_fields(header);
    let field = Field::parse_descriptor(lookup(&fields, "field")?)?;
    let kind = match lookup(&fields, "kind")? {
        "message" => StreamKind::Message,
        "codeword" => StreamKind::Codeword,
        other => return Err(ParseError(format!("unknown stream kind {other:?}"))),
    };
    let mut stream = Stream { field, n: lookup_usize(&fields, "n")?, k: lookup_usize(&fields, "k")?, kind, words: Vec::new() };
    for (i, line) in lines {
        let word = line
            .split_whitespace()
            .map(|t| match t {
                "?" if kind == StreamKind::Codeword => Ok(None),
                "?" => Err(ParseError(format!("line {}: erasure in a message", i + 1))),
                t => stream.field.parse_elem(t).map(Some).map_err(ParseError::from),
            })
            .collect::<Parsed<Vec<_>>>()?;
        if word.len() != stream.width() {
            return Err(ParseError(format!("line {}: {} symbols, expected {}", i + 1, word.len(), stream.width())));
        }
        stream.words.push(word);
    }
    Ok(stream)
}

#[cfg(test)]
mod tests {
    use super::*;
    use coltrs_core::construct::gen_rs;

    fn gf9_matrix() -> Matrix {
        let f = Field::with_order(9).unwrap();
        let pts: Vec<Elem> = f.elements().take(6).collect();
        gen_rs(&f, &pts, 3, true).unwrap()
    }

    #[test]
    fn matrix_round_trips() {
        let g = gf9_matrix();
        assert_eq!(matrix_from_csv(&matrix_to_csv(&g)).unwrap(), g);
        assert_eq!(matrix_from_json(&matrix_to_json(&g)).unwrap(), g);
        assert_eq!(matrix_from_text(&matrix_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn json_entries_carry_both_forms() {
        let text = matrix_to_json(&gf9_matrix());
        assert!(text.contains("\"exp\"") && text.contains("\"coeffs\""));
    }

    #[test]
    fn mismatched_forms_rejected() {
        let f = Field::with_order(9).unwrap();
        let bad = Number::Both { exp: "w^1".into(), coeffs: vec![1, 0] };
        assert!(bad.to_elem(&f).is_err());
    }

    #[test]
    fn csv_shape_checked() {
        let text = "# field=GF(7) rows=2 cols=2\n1,2\n3\n";
        assert!(matrix_from_csv(text).is_err());
        assert!(matrix_from_csv("1,2\n").is_err());
    }

    #[test]
    fn spec_round_trips() {
        let r = coltrs_core::reference::reference(3).unwrap();
        let back = spec_from_json(&spec_to_json(&r.spec)).unwrap();
        assert_eq!(back.generator(), r.spec.generator());
    }

    #[test]
    fn stream_round_trips() {
        let f = Field::prime(7).unwrap();
        let s = Stream {
            field: f,
            n: 4,
            k: 2,
            kind: StreamKind::Codeword,
            words: vec![vec![Some(Elem::ONE), None, Some(Elem::ZERO), Some(Elem::from_index(6))]],
        };
        let text = stream_to_text(&s);
        assert!(text.contains("1 ? 0 6"));
        assert_eq!(stream_from_text(&text).unwrap(), s);
        assert!(stream_from_text(&text.replace("kind=codeword", "kind=message")).is_err());
    }
}
