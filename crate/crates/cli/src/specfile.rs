//! The on-disk generator description format.
//!
//! Line-oriented UTF-8 with `#` comments. Sections appear in order:
//!
//! ```text
//! [generator]
//! name = <text>
//! dimension = <int>
//! alphabet = <symbol> <symbol> ...
//! [unitary]            # exactly `dimension` row lines
//! row = <c> <c> ...    # complex literal: -0.7071067811865476+0.0i
//! [projector <symbol>] # one section per alphabet symbol; either:
//! basis = <i> <j> ...  #   projector onto listed computational basis states, or
//! row = <c> ...        #   explicit matrix rows
//! [protocol]
//! pattern = M | SM | SSM | ...
//! ```
//!
//! Complex literals are plain decimal numbers (`0.5`, `1e-3`), optionally
//! with an imaginary part (`0.5-0.5i`, `1i`); no expression evaluation, so
//! irrational entries are written as decimals (16 or more digits keeps them
//! inside the validation tolerance).

use std::fmt;

use num_complex::Complex64;
use qproc_core::generator::{MeasurementProtocol, QuantumGenerator};
use qproc_core::linalg::CMatrix;

/// Parse or validation failure, with a 1-based line number when known.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub line: Option<usize>,
    pub message: String,
}

impl SpecError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for SpecError {}

/// Projector description: either a list of computational basis states or
/// explicit matrix rows.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjectorSpec {
    Basis(Vec<usize>),
    Rows(Vec<Vec<Complex64>>),
}

/// Parsed form of a generator file.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub dimension: usize,
    pub alphabet: Vec<String>,
    pub unitary_rows: Vec<Vec<Complex64>>,
    /// One projector per alphabet symbol, in alphabet order.
    pub projectors: Vec<ProjectorSpec>,
    /// Measurement pattern over `{M, S}`.
    pub pattern: String,
}

/// Parses a complex literal: `a`, `ai`, `a+bi`, or `a-bi`.
pub fn parse_complex(token: &str) -> Option<Complex64> {
    fn finite(x: f64) -> Option<f64> {
        x.is_finite().then_some(x)
    }
    fn imag(text: &str) -> Option<f64> {
        match text {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            other => other.parse().ok().and_then(finite),
        }
    }

    let s = token.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().and_then(finite).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse().ok().and_then(finite)?;
            let im = imag(&body[k..])?;
            Some(Complex64::new(re, im))
        }
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

/// Renders a complex number as a parseable literal.
pub fn format_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn logical_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let without_comment = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = without_comment.trim();
            (!trimmed.is_empty()).then_some(Line {
                number: idx + 1,
                text: trimmed,
            })
        })
        .collect()
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    cursor: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Line<'a>> {
        self.lines.get(self.cursor).copied()
    }

    fn next(&mut self, expected: &str) -> Result<Line<'a>, SpecError> {
        match self.lines.get(self.cursor) {
            Some(&line) => {
                self.cursor += 1;
                Ok(line)
            }
            None => Err(SpecError::general(format!(
                "unexpected end of file, expected {expected}"
            ))),
        }
    }

    fn expect_header(&mut self, header: &str) -> Result<(), SpecError> {
        let line = self.next(&format!("`{header}`"))?;
        if line.text != header {
            return Err(SpecError::at(
                line.number,
                format!("expected `{header}`, found `{}`", line.text),
            ));
        }
        Ok(())
    }
}

fn split_key(line: Line<'_>) -> Result<(&str, &str), SpecError> {
    line.text
        .split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| SpecError::at(line.number, "expected `key = value`"))
}

fn key_value<'a>(line: Line<'a>, expected_key: &str) -> Result<&'a str, SpecError> {
    let (key, value) = split_key(line)?;
    if key != expected_key {
        return Err(SpecError::at(
            line.number,
            format!("expected key `{expected_key}`, found `{key}`"),
        ));
    }
    Ok(value)
}

fn complex_row(line: Line<'_>, expected_len: usize) -> Result<Vec<Complex64>, SpecError> {
    let value = key_value(line, "row")?;
    let mut row = Vec::with_capacity(expected_len);
    for token in value.split_whitespace() {
        let z = parse_complex(token).ok_or_else(|| {
            SpecError::at(line.number, format!("invalid complex literal `{token}`"))
        })?;
        row.push(z);
    }
    if row.len() != expected_len {
        return Err(SpecError::at(
            line.number,
            format!("expected {expected_len} entries, found {}", row.len()),
        ));
    }
    Ok(row)
}

impl GeneratorSpec {
    /// Parses a generator file, reporting the first error with its line number.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut p = Parser {
            lines: logical_lines(text),
            cursor: 0,
        };

        p.expect_header("[generator]")?;
        let mut name = None;
        let mut dimension = None;
        let mut alphabet: Option<Vec<String>> = None;
        while let Some(line) = p.peek() {
            if line.text.starts_with('[') {
                break;
            }
            p.cursor += 1;
            let (key, value) = split_key(line)?;
            match key {
                "name" => name = Some(value.to_string()),
                "dimension" => {
                    let dim: usize = value.parse().map_err(|_| {
                        SpecError::at(line.number, format!("invalid dimension `{value}`"))
                    })?;
                    if dim == 0 {
                        return Err(SpecError::at(line.number, "dimension must be positive"));
                    }
                    dimension = Some(dim);
                }
                "alphabet" => {
                    let symbols: Vec<String> =
                        value.split_whitespace().map(str::to_string).collect();
                    if symbols.is_empty() {
                        return Err(SpecError::at(line.number, "alphabet is empty"));
                    }
                    alphabet = Some(symbols);
                }
                other => {
                    return Err(SpecError::at(
                        line.number,
                        format!("unknown key `{other}` in [generator]"),
                    ))
                }
            }
        }
        let name = name.ok_or_else(|| SpecError::general("missing `name` in [generator]"))?;
        let dimension =
            dimension.ok_or_else(|| SpecError::general("missing `dimension` in [generator]"))?;
        let alphabet =
            alphabet.ok_or_else(|| SpecError::general("missing `alphabet` in [generator]"))?;

        p.expect_header("[unitary]")?;
        let mut unitary_rows = Vec::with_capacity(dimension);
        for _ in 0..dimension {
            let line = p.next("a unitary `row = ...` line")?;
            unitary_rows.push(complex_row(line, dimension)?);
        }

        let mut projectors = Vec::with_capacity(alphabet.len());
        for symbol in &alphabet {
            let expected = format!("[projector {symbol}]");
            p.expect_header(&expected)?;
            let first = p.peek().ok_or_else(|| {
                SpecError::general(format!("unexpected end of file inside {expected}"))
            })?;
            if first.text.starts_with("basis") {
                p.cursor += 1;
                let value = key_value(first, "basis")?;
                let mut states = Vec::new();
                for token in value.split_whitespace() {
                    let idx: usize = token.parse().map_err(|_| {
                        SpecError::at(first.number, format!("invalid basis index `{token}`"))
                    })?;
                    if idx >= dimension {
                        return Err(SpecError::at(
                            first.number,
                            format!("basis index {idx} out of range for dimension {dimension}"),
                        ));
                    }
                    if states.contains(&idx) {
                        return Err(SpecError::at(
                            first.number,
                            format!("repeated basis index {idx}"),
                        ));
                    }
                    states.push(idx);
                }
                projectors.push(ProjectorSpec::Basis(states));
            } else {
                let mut rows = Vec::with_capacity(dimension);
                for _ in 0..dimension {
                    let line = p.next("a projector `row = ...` line")?;
                    rows.push(complex_row(line, dimension)?);
                }
                projectors.push(ProjectorSpec::Rows(rows));
            }
        }

        p.expect_header("[protocol]")?;
        let line = p.next("`pattern = ...`")?;
        let pattern = key_value(line, "pattern")?.to_string();
        if pattern.is_empty() || !pattern.chars().all(|c| c == 'M' || c == 'S') {
            return Err(SpecError::at(
                line.number,
                format!("pattern `{pattern}` must be a nonempty string over {{M, S}}"),
            ));
        }

        if let Some(extra) = p.peek() {
            return Err(SpecError::at(
                extra.number,
                format!("unexpected content after [protocol]: `{}`", extra.text),
            ));
        }

        Ok(Self {
            name,
            dimension,
            alphabet,
            unitary_rows,
            projectors,
            pattern,
        })
    }

    /// Builds the validated generator and protocol, attaching section
    /// context to validation failures.
    pub fn build(&self) -> Result<(QuantumGenerator, MeasurementProtocol), SpecError> {
        let unitary = CMatrix::from_rows(&self.unitary_rows)
            .map_err(|e| SpecError::general(format!("in [unitary]: {e}")))?;
        let mut projectors = Vec::with_capacity(self.projectors.len());
        for (symbol, spec) in self.alphabet.iter().zip(&self.projectors) {
            let matrix = match spec {
                ProjectorSpec::Basis(states) => {
                    let mut diag = vec![0.0; self.dimension];
                    for &idx in states {
                        diag[idx] = 1.0;
                    }
                    CMatrix::diagonal(&diag)
                }
                ProjectorSpec::Rows(rows) => CMatrix::from_rows(rows).map_err(|e| {
                    SpecError::general(format!("in [projector {symbol}]: {e}"))
                })?,
            };
            projectors.push(matrix);
        }
        let generator = QuantumGenerator::new(
            self.name.clone(),
            unitary,
            self.alphabet.clone(),
            projectors,
        )
        .map_err(|e| {
            let section = match &e {
                qproc_core::Error::NotUnitary { .. } => "[unitary]".to_string(),
                qproc_core::Error::NotProjector { symbol, .. }
                | qproc_core::Error::ProjectorNotDiagonal { symbol } => {
                    format!("[projector {symbol}]")
                }
                qproc_core::Error::ProjectorsNotOrthogonal { a, b, .. } => {
                    format!("[projector {a}] vs [projector {b}]")
                }
                qproc_core::Error::ProjectorsIncomplete { .. } => {
                    "[projector] sections".to_string()
                }
                _ => "[generator]".to_string(),
            };
            SpecError::general(format!("in {section}: {e}"))
        })?;
        let protocol = MeasurementProtocol::parse(&self.pattern)
            .map_err(|e| SpecError::general(format!("in [protocol]: {e}")))?;
        Ok((generator, protocol))
    }

    /// Describes an in-memory generator in the file format. Diagonal 0/1
    /// projectors become `basis =` lines, everything else explicit rows.
    pub fn from_generator(g: &QuantumGenerator, protocol: &MeasurementProtocol) -> Self {
        let dim = g.dim();
        let unitary_rows = (0..dim)
            .map(|i| (0..dim).map(|j| g.unitary().get(i, j)).collect())
            .collect();
        let projectors = (0..g.alphabet_size())
            .map(|s| {
                let p = g.projector_by_index(s).expect("index in range");
                let mut basis = Vec::new();
                let mut diagonal_01 = true;
                for i in 0..dim {
                    for j in 0..dim {
                        let z = p.get(i, j);
                        if i == j {
                            if z == Complex64::new(1.0, 0.0) {
                                basis.push(i);
                            } else if z != Complex64::new(0.0, 0.0) {
                                diagonal_01 = false;
                            }
                        } else if z != Complex64::new(0.0, 0.0) {
                            diagonal_01 = false;
                        }
                    }
                }
                if diagonal_01 {
                    ProjectorSpec::Basis(basis)
                } else {
                    ProjectorSpec::Rows(
                        (0..dim)
                            .map(|i| (0..dim).map(|j| p.get(i, j)).collect())
                            .collect(),
                    )
                }
            })
            .collect();
        Self {
            name: g.name().to_string(),
            dimension: dim,
            alphabet: g.alphabet().to_vec(),
            unitary_rows,
            projectors,
            pattern: protocol.to_string(),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[generator]")?;
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "dimension = {}", self.dimension)?;
        writeln!(f, "alphabet = {}", self.alphabet.join(" "))?;
        writeln!(f, "[unitary]")?;
        for row in &self.unitary_rows {
            let cells: Vec<String> = row.iter().map(|&z| format_complex(z)).collect();
            writeln!(f, "row = {}", cells.join(" "))?;
        }
        for (symbol, projector) in self.alphabet.iter().zip(&self.projectors) {
            writeln!(f, "[projector {symbol}]")?;
            match projector {
                ProjectorSpec::Basis(states) => {
                    let cells: Vec<String> = states.iter().map(usize::to_string).collect();
                    writeln!(f, "basis = {}", cells.join(" "))?;
                }
                ProjectorSpec::Rows(rows) => {
                    for row in rows {
                        let cells: Vec<String> =
                            row.iter().map(|&z| format_complex(z)).collect();
                        writeln!(f, "row = {}", cells.join(" "))?;
                    }
                }
            }
        }
        writeln!(f, "[protocol]")?;
        writeln!(f, "pattern = {}", self.pattern)
    }
}
