//! Parsing of ideals from monomial strings, exponent rows and input files.
//!
//! Grammar of one generator, with whitespace allowed between tokens:
//!
//! ```text
//! generator := (uint '*'?)? term | uint
//! term      := var ('^' uint)? ('*' var ('^' uint)?)*
//! ```
//!
//! A leading integer coefficient is ignored; a bare integer is the unit
//! monomial. Generators are separated by commas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;

use crate::arith::{Integer, IntegerVector};
use crate::newton::MonomialIdeal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column, when the error has a location.
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            column: Some(column),
            message: message.into(),
        }
    }

    pub fn plain(message: impl Into<String>) -> Self {
        ParseError {
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError {
                column: Some(c),
                message,
            } => write!(f, "column {c}: {message}"),
            ParseError {
                column: None,
                message,
            } => f.write_str(message),
        }
    }
}

impl std::error::Error for ParseError {}

/// One generator before variables are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawGenerator {
    /// `(name, exponent, column)` factors.
    Monomial(Vec<(String, u64, usize)>),
    Row(Vec<i64>),
}

/// An ideal as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub generators: Vec<RawGenerator>,
}

impl IdealSpec {
    /// Parses either a comma-separated monomial list or a JSON array of
    /// exponent rows such as `[[5,0],[0,5]]`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('[') {
            let rows: Vec<Vec<i64>> = serde_json::from_str(text)
                .map_err(|e| ParseError::at(e.column(), format!("bad exponent rows: {e}")))?;
            return Self::from_rows(rows);
        }
        let mut generators = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            generators.push(parse_generator(piece, offset)?);
            offset += piece.chars().count() + 1;
        }
        let spec = IdealSpec { generators };
        spec.check_non_empty()?;
        Ok(spec)
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ParseError> {
        let spec = IdealSpec {
            generators: rows.into_iter().map(RawGenerator::Row).collect(),
        };
        spec.check_non_empty()?;
        Ok(spec)
    }

    fn check_non_empty(&self) -> Result<(), ParseError> {
        if self.generators.is_empty() {
            return Err(ParseError::plain("empty generator list"));
        }
        Ok(())
    }

    /// Variable names in order of first appearance.
    pub fn variable_names(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for g in &self.generators {
            if let RawGenerator::Monomial(factors) = g {
                for (name, _, _) in factors {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
            }
        }
        seen
    }

    fn row_width(&self) -> Option<usize> {
        self.generators.iter().find_map(|g| match g {
            RawGenerator::Row(r) => Some(r.len()),
            RawGenerator::Monomial(_) => None,
        })
    }

    pub fn resolve(&self, variables: &[String]) -> Result<MonomialIdeal, ParseError> {
        let n = variables.len();
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let v = match g {
                RawGenerator::Row(row) => {
                    if row.len() != n {
                        return Err(ParseError::plain(format!(
                            "exponent row {row:?} has {} entries for {n} variables",
                            row.len()
                        )));
                    }
                    if row.iter().any(|&e| e < 0) {
                        return Err(ParseError::plain(format!(
                            "exponent row {row:?} has a negative entry"
                        )));
                    }
                    IntegerVector::from_i64(row)
                }
                RawGenerator::Monomial(factors) => {
                    let mut v = vec![Integer::from(0); n];
                    for (name, e, column) in factors {
                        let idx = variables.iter().position(|x| x == name).ok_or_else(|| {
                            ParseError::at(*column, format!("unknown variable `{name}`"))
                        })?;
                        v[idx] += Integer::from(*e);
                    }
                    IntegerVector(v)
                }
            };
            gens.push(v);
        }
        MonomialIdeal::new(n, gens)
            .map(|i| i.with_names(variables.to_vec()))
            .map_err(|e| ParseError::plain(e.to_string()))
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    /// Column of `chars[0]` minus one.
    base: usize,
}

impl Scanner {
    fn new(text: &str, base: usize) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            base,
        }
    }

    fn column(&self) -> usize {
        self.base + self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            let col = self.column();
            return Err(match self.chars.get(self.pos) {
                Some('-') => ParseError::at(col, "negative exponent"),
                Some(c) => {
                    ParseError::at(col, format!("expected a non-negative integer, found `{c}`"))
                }
                None => ParseError::at(col, "expected a non-negative integer"),
            });
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| {
            ParseError::at(
                self.base + start + 1,
                format!("integer `{digits}` is too large"),
            )
        })
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        self.skip_ws();
        let col = self.column();
        match self.chars.get(self.pos) {
            Some(&c) if is_ident_start(c) => {}
            Some(&c) => {
                return Err(ParseError::at(
                    col,
                    format!("expected a variable, found `{c}`"),
                ))
            }
            None => return Err(ParseError::at(col, "expected a variable")),
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
            self.pos += 1;
        }
        Ok((self.chars[start..self.pos].iter().collect(), col))
    }
}

fn parse_generator(text: &str, offset: usize) -> Result<RawGenerator, ParseError> {
    let mut s = Scanner::new(text, offset);
    if s.peek().is_none() {
        return Err(ParseError::at(s.column(), "empty generator"));
    }
    if s.peek().is_some_and(|c| c.is_ascii_digit()) {
        s.uint()?;
        s.eat('*');
        if s.peek().is_none() {
            return Ok(RawGenerator::Monomial(Vec::new()));
        }
    }
    let mut factors = Vec::new();
    loop {
        let (name, col) = s.ident()?;
        let exp = if s.eat('^') { s.uint()? } else { 1 };
        factors.push((name, exp, col));
        if !s.eat('*') {
            break;
        }
    }
    if let Some(c) = s.peek() {
        return Err(ParseError::at(s.column(), format!("unexpected `{c}`")));
    }
    Ok(RawGenerator::Monomial(factors))
}

/// Default variable names for `n` variables without user-supplied names.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Picks the variable list for a set of ideals: explicit names win, then the
/// sorted union of names used, then defaults sized by exponent rows.
pub fn choose_variables(
    explicit: Option<Vec<String>>,
    specs: &[&IdealSpec],
) -> Result<Vec<String>, ParseError> {
    if let Some(vars) = explicit {
        let unique: BTreeSet<&String> = vars.iter().collect();
        if unique.len() != vars.len() {
            return Err(ParseError::plain("variable names must be unique"));
        }
        if let Some(bad) = vars.iter().find(|v| {
            let mut cs = v.chars();
            !cs.next().is_some_and(is_ident_start) || !cs.all(is_ident_char)
        }) {
            return Err(ParseError::plain(format!(
                "`{bad}` is not a valid variable name"
            )));
        }
        if vars.is_empty() {
            return Err(ParseError::plain("no variables given"));
        }
        return Ok(vars);
    }
    let names: BTreeSet<String> = specs.iter().flat_map(|s| s.variable_names()).collect();
    let width = specs.iter().find_map(|s| s.row_width());
    match (names.is_empty(), width) {
        (false, Some(w)) if w != names.len() => Err(ParseError::plain(
            "mixing exponent rows with monomials needs explicit variables",
        )),
        (false, _) => Ok(names.into_iter().collect()),
        (true, Some(w)) => Ok(default_names(w)),
        (true, None) => Err(ParseError::plain("cannot infer the number of variables")),
    }
}

/// Parses `--vars x,y,z`.
pub fn parse_variable_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parses `--point 5/2,5/2`.
pub fn parse_point(text: &str) -> Result<Vec<crate::arith::Rational>, ParseError> {
    text.split(',')
        .map(|s| {
            crate::arith::parse_rational(s.trim()).ok_or_else(|| {
                ParseError::plain(format!("`{}` is not a rational number", s.trim()))
            })
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorValue {
    Text(String),
    Row(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdealValue {
    Text(String),
    List(Vec<GeneratorValue>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    variables: Option<Vec<String>>,
    ideals: BTreeMap<String, IdealValue>,
    #[serde(default)]
    pair: Option<Vec<String>>,
}

/// Contents of an input file: `{"variables": [...], "ideals": {...}}`,
/// optionally nested under an `"input"` key as in a saved report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputFile {
    pub variables: Option<Vec<String>>,
    pub ideals: BTreeMap<String, IdealSpec>,
    pub pair: Option<(String, String)>,
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| ParseError::plain(format!("line {}: {e}", e.line())))?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("input") => {
                map.remove("input").expect("checked")
            }
            v => v,
        };
        let raw: RawInput = serde_json::from_value(value)
            .map_err(|e| ParseError::plain(format!("input file: {e}")))?;
        let mut ideals = BTreeMap::new();
        for (name, v) in raw.ideals {
            let spec = match v {
                IdealValue::Text(t) => IdealSpec::parse(&t),
                IdealValue::List(items) => {
                    let mut generators = Vec::new();
                    for item in items {
                        match item {
                            GeneratorValue::Text(t) => {
                                let spec = IdealSpec::parse(&t).map_err(|e| {
                                    ParseError::plain(format!("ideal {name}, `{t}`: {e}"))
                                })?;
                                generators.extend(spec.generators);
                            }
                            GeneratorValue::Row(r) => generators.push(RawGenerator::Row(r)),
                        }
                    }
                    let spec = IdealSpec { generators };
                    spec.check_non_empty().map(|_| spec)
                }
            }
            .map_err(|e| ParseError::plain(format!("ideal {name}: {e}")))?;
            ideals.insert(name, spec);
        }
        let pair = match raw.pair {
            None => None,
            Some(p) if p.len() == 2 => Some((p[0].clone(), p[1].clone())),
            Some(_) => return Err(ParseError::plain("`pair` must name exactly two ideals")),
        };
        Ok(InputFile {
            variables: raw.variables,
            ideals,
            pair,
        })
    }

    pub fn get(&self, name: &str) -> Result<&IdealSpec, ParseError> {
        self.ideals.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.ideals.keys().map(String::as_str).collect();
            ParseError::plain(format!(
                "no ideal named `{name}` (available: {})",
                known.join(", ")
            ))
        })
    }
}

/// Renders an exponent vector as a monomial over `names`.
pub fn format_monomial(k: &IntegerVector, names: &[String]) -> String {
    let factors: Vec<String> = k
        .coords()
        .iter()
        .zip(names)
        .filter(|(e, _)| *e != &Integer::from(0))
        .map(|(e, x)| {
            if *e == Integer::from(1) {
                x.clone()
            } else {
                format!("{x}^{e}")
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}
