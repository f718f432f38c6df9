//! Interpolation fixtures: text format and the built-in example cases.
//!
//! ```text
//! # comment
//! name: EM1
//! expected_class: M1
//! default_variant: corrected        (optional)
//! notes: free text
//!
//! @W1
//! [-8/7,-4/7) [4/7,6/7) [24/7,32/7)
//! @W2 [variant]                     (repeatable, one per variant)
//! ...
//! @h1
//! <set> | <value>                   value grammar: p/q + r/s*sqrt2
//! @h2
//! ...
//! @sigma
//! <set> | <shift>                   ξ ↦ ξ + shift·π on <set>
//! ```
//!
//! A `<set>` is either canonical interval-set text or the token `W1&W2`.

use crate::classify::WaveletClass;
use crate::error::{Error, Result};
use crate::interpolate::DilationPeriodicFn;
use crate::sets::{IntervalSet, ParseError, QuadReal, RatPi};

const BUILTINS: &[(&str, &str)] = &[
    ("Shannon", include_str!("../fixtures/shannon.fix")),
    ("EM1", include_str!("../fixtures/em1.fix")),
    ("EM2", include_str!("../fixtures/em2.fix")),
    ("EM3", include_str!("../fixtures/em3.fix")),
    ("EM0", include_str!("../fixtures/em0.fix")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Option<FixtureFile> {
    BUILTINS
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| FixtureFile::parse(text).expect("built-in fixture parses"))
}

/// A σ piece as printed: `ξ ↦ ξ + shift·π` on `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedPiece {
    pub domain: IntervalSet,
    pub shift: RatPi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SetExpr {
    Literal(IntervalSet),
    Common,
}

impl SetExpr {
    fn resolve(&self, common: &IntervalSet) -> IntervalSet {
        match self {
            SetExpr::Literal(s) => s.clone(),
            SetExpr::Common => common.clone(),
        }
    }
}

/// A parsed fixture file; W2 may come in several variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureFile {
    pub name: String,
    pub expected_class: WaveletClass,
    pub notes: String,
    pub default_variant: Option<String>,
    w1: IntervalSet,
    w2: Vec<(Option<String>, IntervalSet)>,
    h1: Vec<(SetExpr, QuadReal)>,
    h2: Vec<(SetExpr, QuadReal)>,
    sigma: Vec<(SetExpr, RatPi)>,
}

/// A fully resolved interpolation case.
#[derive(Clone, Debug)]
pub struct FixtureCase {
    pub name: String,
    pub variant: Option<String>,
    pub w1: IntervalSet,
    pub w2: IntervalSet,
    pub h1: DilationPeriodicFn,
    pub h2: DilationPeriodicFn,
    pub printed_sigma: Vec<PrintedPiece>,
    pub expected_class: WaveletClass,
    pub notes: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    W1,
    W2,
    H1,
    H2,
    Sigma,
}

fn line_err(lineno: usize, msg: impl std::fmt::Display) -> ParseError {
    ParseError::new(lineno, format!("line {lineno}: {msg}"))
}

fn parse_set_expr(s: &str, lineno: usize) -> Result<SetExpr, ParseError> {
    let t = s.trim();
    if t == "W1&W2" {
        return Ok(SetExpr::Common);
    }
    t.parse::<IntervalSet>().map(SetExpr::Literal).map_err(|e| line_err(lineno, e))
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name = None;
        let mut class = None;
        let mut notes = String::new();
        let mut default_variant = None;
        let mut w1 = None;
        let mut w2: Vec<(Option<String>, IntervalSet)> = Vec::new();
        let (mut h1, mut h2, mut sigma) = (Vec::new(), Vec::new(), Vec::new());
        let mut section = Section::Header;
        let mut w2_label: Option<String> = None;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(head) = line.strip_prefix('@') {
                let mut words = head.split_whitespace();
                section = match words.next() {
                    Some("W1") => Section::W1,
                    Some("W2") => {
                        w2_label = words.next().map(str::to_string);
                        Section::W2
                    }
                    Some("h1") => Section::H1,
                    Some("h2") => Section::H2,
                    Some("sigma") => Section::Sigma,
                    other => return Err(line_err(lineno, format!("unknown section {other:?}"))),
                };
                continue;
            }
            match section {
                Section::Header => {
                    let (key, value) = line.split_once(':').ok_or_else(|| line_err(lineno, "expected `key: value`"))?;
                    let value = value.trim();
                    match key.trim() {
                        "name" => name = Some(value.to_string()),
                        "expected_class" => {
                            class = Some(value.parse::<WaveletClass>().map_err(|e| line_err(lineno, e))?)
                        }
                        "notes" => notes = value.to_string(),
                        "default_variant" => default_variant = Some(value.to_string()),
                        other => return Err(line_err(lineno, format!("unknown key `{other}`"))),
                    }
                }
                Section::W1 => {
                    let s: IntervalSet = line.parse().map_err(|e| line_err(lineno, e))?;
                    w1 = Some(w1.map_or(s.clone(), |prev: IntervalSet| prev.union(&s)));
                }
                Section::W2 => {
                    let s: IntervalSet = line.parse().map_err(|e| line_err(lineno, e))?;
                    match w2.iter_mut().find(|(l, _)| *l == w2_label) {
                        Some((_, prev)) => *prev = prev.union(&s),
                        None => w2.push((w2_label.clone(), s)),
                    }
                }
                Section::H1 | Section::H2 | Section::Sigma => {
                    let (set_txt, val_txt) =
                        line.split_once('|').ok_or_else(|| line_err(lineno, "expected `<set> | <value>`"))?;
                    let set = parse_set_expr(set_txt, lineno)?;
                    match section {
                        Section::Sigma => {
                            let shift: RatPi = val_txt.parse().map_err(|e| line_err(lineno, e))?;
                            sigma.push((set, shift));
                        }
                        _ => {
                            let v: QuadReal = val_txt.parse().map_err(|e| line_err(lineno, e))?;
                            if section == Section::H1 {
                                h1.push((set, v));
                            } else {
                                h2.push((set, v));
                            }
                        }
                    }
                }
            }
        }
        let name = name.ok_or_else(|| ParseError::new(0, "missing `name`"))?;
        let expected_class = class.ok_or_else(|| ParseError::new(0, "missing `expected_class`"))?;
        let w1 = w1.ok_or_else(|| ParseError::new(0, "missing @W1 section"))?;
        if w2.is_empty() {
            return Err(ParseError::new(0, "missing @W2 section"));
        }
        Ok(FixtureFile { name, expected_class, notes, default_variant, w1, w2, h1, h2, sigma })
    }

    /// Labels of the W2 variants (`None` for an unlabeled W2).
    pub fn variants(&self) -> Vec<Option<String>> {
        self.w2.iter().map(|(l, _)| l.clone()).collect()
    }

    /// Builds the case for `variant` (or the default one).
    pub fn resolve(&self, variant: Option<&str>) -> Result<FixtureCase> {
        let wanted = variant.map(str::to_string).or_else(|| self.default_variant.clone());
        let (label, w2) = match &wanted {
            Some(v) => self.w2.iter().find(|(l, _)| l.as_deref() == Some(v.as_str())),
            None => self.w2.first(),
        }
        .ok_or_else(|| Error::Fixture {
            name: self.name.clone(),
            message: format!("no W2 variant {wanted:?}; available {:?}", self.variants()),
        })?;
        let common = self.w1.intersect(w2);
        let h = |pieces: &[(SetExpr, QuadReal)]| {
            DilationPeriodicFn::new(pieces.iter().map(|(s, v)| (s.resolve(&common), v.clone())).collect())
        };
        Ok(FixtureCase {
            name: self.name.clone(),
            variant: label.clone(),
            w1: self.w1.clone(),
            w2: w2.clone(),
            h1: h(&self.h1)?,
            h2: h(&self.h2)?,
            printed_sigma: self
                .sigma
                .iter()
                .map(|(s, shift)| PrintedPiece { domain: s.resolve(&common), shift: shift.clone() })
                .collect(),
            expected_class: self.expected_class,
            notes: self.notes.clone(),
        })
    }
}
