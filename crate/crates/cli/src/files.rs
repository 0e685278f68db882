//! Text formats for presentations and algebra maps.
//!
//! ```text
//! field QQ            # or: Fp 5, FpX 2 [var]
//! ring X:1 Y:1        # name:weight, weight defaults to 1
//! rel X^2*Y^2 + X^5 + Y^5
//! mode local          # local | graded | plain (default)
//! ```
//!
//! A `#` starts a comment when it begins a line or follows whitespace, so
//! variable names such as `X#2` are unaffected.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use kahler_core::algebra::{Mode, Presentation};
use kahler_core::parse::parse_polynomial;
use kahler_core::{Error as CoreError, Field, MonomialOrder, PolyRing, Polynomial, RingRef};

use crate::error::CliError;

/// A located problem in a text file; line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, column, message: message.into() }
}

/// Strips a trailing comment.
fn content(line: &str) -> &str {
    let mut prev_space = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_space {
            return &line[..i];
        }
        prev_space = c.is_whitespace();
    }
    line
}

/// A non-empty line split into its keyword and the rest, with the column at
/// which the rest starts.
struct Directive<'a> {
    line: usize,
    keyword: &'a str,
    rest: &'a str,
    rest_column: usize,
}

fn directives(text: &str) -> impl Iterator<Item = Directive<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = content(raw);
        let start = body.len() - body.trim_start().len();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let kw_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let keyword = &trimmed[..kw_end];
        let after = &trimmed[kw_end..];
        let rest = after.trim_start();
        let rest_byte = start + kw_end + (after.len() - rest.len());
        Some(Directive { line: i + 1, keyword, rest, rest_column: raw[..rest_byte].chars().count() + 1 })
    })
}

/// Column of byte `offset` inside `text`, which starts at `column`.
fn column_of(text: &str, column: usize, offset: usize) -> usize {
    column + text[..offset.min(text.len())].chars().count()
}

fn expression_error(d_line: usize, text: &str, column: usize, e: CoreError) -> FormatError {
    match e {
        CoreError::Parse { offset, message } => err(d_line, column_of(text, column, offset), message),
        other => err(d_line, column, other.to_string()),
    }
}

/// `QQ`, `Fp:5`, `FpX:2`, or the file spellings `Fp 5`, `FpX 2 t`.
pub fn parse_field(text: &str) -> Result<Field, String> {
    let parts: Vec<&str> = text.split(|c: char| c == ':' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    let prime = |s: Option<&&str>| -> Result<u64, String> {
        let s = s.ok_or("missing characteristic")?;
        s.parse::<u64>().map_err(|_| format!("bad characteristic `{s}`"))
    };
    match parts.first().copied() {
        Some("QQ") if parts.len() == 1 => Ok(Field::Rationals),
        Some("Fp") if parts.len() == 2 => Field::prime(prime(parts.get(1))?).map_err(|e| e.to_string()),
        Some("FpX") if (2..=3).contains(&parts.len()) => {
            Field::rational_functions(prime(parts.get(1))?, parts.get(2).copied().unwrap_or("x")).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown field `{text}` (expected QQ, Fp:p or FpX:p)")),
    }
}

fn field_line(field: &Field) -> String {
    match field {
        Field::Rationals => "field QQ".into(),
        Field::Prime(p) => format!("field Fp {p}"),
        Field::RationalFunctions { p, var } => format!("field FpX {p} {var}"),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut field: Option<Field> = None;
    let mut ring: Option<RingRef> = None;
    let mut mode: Option<Mode> = None;
    let mut rels: Vec<Polynomial> = Vec::new();
    let mut last_line = 0;
    for d in directives(text) {
        last_line = d.line;
        match d.keyword {
            "field" => {
                if field.is_some() {
                    return Err(err(d.line, 1, "duplicate `field` line"));
                }
                field = Some(parse_field(d.rest).map_err(|m| err(d.line, d.rest_column, m))?);
            }
            "ring" => {
                if ring.is_some() {
                    return Err(err(d.line, 1, "duplicate `ring` line"));
                }
                let f = field.clone().ok_or_else(|| err(d.line, 1, "`ring` before `field`"))?;
                let mut names = Vec::new();
                let mut weights = Vec::new();
                let mut offset = 0;
                for tok in d.rest.split_whitespace() {
                    let at = offset + d.rest[offset..].find(tok).expect("token comes from the line");
                    offset = at + tok.len();
                    let column = column_of(d.rest, d.rest_column, at);
                    let (name, w) = match tok.rsplit_once(':') {
                        Some((n, w)) => (n, w.parse::<u32>().map_err(|_| err(d.line, column, format!("bad weight in `{tok}`")))?),
                        None => (tok, 1),
                    };
                    names.push(name.to_string());
                    weights.push(w);
                }
                ring = Some(PolyRing::new(f, names, weights, MonomialOrder::default()).map_err(|e| err(d.line, d.rest_column, e.to_string()))?);
            }
            "rel" => {
                let r = ring.as_ref().ok_or_else(|| err(d.line, 1, "`rel` before `ring`"))?;
                rels.push(parse_polynomial(r, d.rest).map_err(|e| expression_error(d.line, d.rest, d.rest_column, e))?);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(err(d.line, 1, "duplicate `mode` line"));
                }
                mode = Some(match d.rest {
                    "local" => Mode::Local,
                    "graded" => Mode::Graded,
                    "plain" => Mode::Plain,
                    other => return Err(err(d.line, d.rest_column, format!("unknown mode `{other}`"))),
                });
            }
            other => return Err(err(d.line, 1, format!("unknown directive `{other}`"))),
        }
    }
    let ring = ring.ok_or_else(|| err(last_line.max(1), 1, "missing `ring` line"))?;
    Presentation::new(&ring, rels, mode.unwrap_or_default()).map_err(|e| err(last_line.max(1), 1, e.to_string()))
}

/// Canonical text of a presentation; parses back to an equal presentation.
pub fn dump_presentation(p: &Presentation) -> String {
    let ring = p.ring();
    let mut out = field_line(ring.field());
    out.push_str("\nring");
    for (v, w) in ring.variables().iter().zip(ring.weights()) {
        write!(out, " {v}:{w}").unwrap();
    }
    out.push('\n');
    for r in p.relations() {
        writeln!(out, "rel {r}").unwrap();
    }
    writeln!(out, "mode {}", p.mode().name()).unwrap();
    out
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    parse_presentation(&read_text(path)?).map_err(|e| CliError::Format { path: path.to_path_buf(), error: e })
}

/// A map file before the images are parsed: the images need the target
/// ring, which needs the target file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFile {
    pub source: PathBuf,
    pub target: PathBuf,
    /// `(line, variable, column of expression, expression)`.
    pub images: Vec<(usize, String, usize, String)>,
}

/// ```text
/// source a1.alg      # relative to the map file
/// target a2.alg
/// map Y = Y^2
/// ```
pub fn parse_map_file(text: &str, base_dir: &Path) -> Result<MapFile, FormatError> {
    let mut source = None;
    let mut target = None;
    let mut images = Vec::new();
    let mut last_line = 1;
    for d in directives(text) {
        last_line = d.line;
        match d.keyword {
            "source" => source = Some(base_dir.join(d.rest)),
            "target" => target = Some(base_dir.join(d.rest)),
            "map" => {
                let (var, expr) = d.rest.split_once('=').ok_or_else(|| err(d.line, d.rest_column, "expected `map VAR = EXPR`"))?;
                let expr_trim = expr.trim_start();
                let expr_byte = d.rest.len() - expr_trim.len();
                images.push((d.line, var.trim().to_string(), column_of(d.rest, d.rest_column, expr_byte), expr_trim.trim_end().to_string()));
            }
            other => return Err(err(d.line, 1, format!("unknown directive `{other}`"))),
        }
    }
    Ok(MapFile {
        source: source.ok_or_else(|| err(last_line, 1, "missing `source` line"))?,
        target: target.ok_or_else(|| err(last_line, 1, "missing `target` line"))?,
        images,
    })
}

/// Images of the source variables, in source order, parsed in `target`.
pub fn map_images(map: &MapFile, source: &RingRef, target: &RingRef) -> Result<Vec<Polynomial>, FormatError> {
    let mut out: Vec<Option<Polynomial>> = vec![None; source.nvars()];
    for (line, var, column, expr) in &map.images {
        let i = source.var_index(var).map_err(|_| err(*line, 1, format!("`{var}` is not a source variable")))?;
        if out[i].is_some() {
            return Err(err(*line, 1, format!("`{var}` mapped twice")));
        }
        out[i] = Some(parse_polynomial(target, expr).map_err(|e| expression_error(*line, expr, *column, e))?);
    }
    out.into_iter()
        .zip(source.variables())
        .map(|(img, v)| img.ok_or_else(|| err(1, 1, format!("no image given for `{v}`"))))
        .collect()
}
