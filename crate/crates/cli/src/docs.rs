//! Output documents and their renderings.

use std::fmt::Write as _;

use bintri::sequences::{LinearRecurrence, SequenceKind};
use bintri::{Rational, TriangleSpec};
use serde::{Deserialize, Serialize};

use crate::args::{Direction, Format};
use crate::CliError;

pub trait Document: Serialize {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError>;

    /// `(index, value)` pairs for a b-file.
    fn bfile_terms(&self) -> Result<Vec<(usize, &Rational)>, CliError> {
        Err(CliError::Validation(
            "this output has no b-file form".into(),
        ))
    }

    fn pretty(&self) -> String;
}

pub fn render<D: Document>(doc: &D, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(Vec::new());
            for record in doc.csv_records()? {
                w.write_record(&record)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
        }
        Format::Bfile => {
            let mut out = String::new();
            for (n, value) in doc.bfile_terms()? {
                if !value.is_integer() {
                    return Err(CliError::Validation(format!(
                        "b-file terms must be integers; term {n} is {value}"
                    )));
                }
                writeln!(out, "{n} {value}").expect("writing to a String");
            }
            Ok(out)
        }
        Format::Pretty => Ok(doc.pretty()),
    }
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    xs.into_iter().map(ToString::to_string).collect()
}

fn join(xs: &[Rational]) -> String {
    strings(xs).join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDoc {
    pub spec: TriangleSpec,
    pub rows: Vec<Vec<Rational>>,
}

impl Document for TriangleDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        Ok(self.rows.iter().map(strings).collect())
    }

    fn bfile_terms(&self) -> Result<Vec<(usize, &Rational)>, CliError> {
        Ok(self.rows.iter().flatten().enumerate().collect())
    }

    fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(strings).collect();
        let mut width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        // an odd pitch would not split evenly between rows
        if width % 2 == 0 {
            width += 1;
        }
        let last = cells.len().saturating_sub(1);
        let mut out = format!("{}\n", self.spec);
        for (n, row) in cells.iter().enumerate() {
            let indent = " ".repeat((last - n) * (width + 1) / 2);
            let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(out, "{indent}{}", body.join(" ")).expect("writing to a String");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceDoc {
    pub name: String,
    pub coefficients: Vec<Rational>,
    pub valid_from: usize,
}

impl RecurrenceDoc {
    pub fn new(name: &str, rec: &LinearRecurrence) -> Self {
        RecurrenceDoc {
            name: name.into(),
            coefficients: rec.coefficients().to_vec(),
            valid_from: rec.valid_from(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub spec: Option<TriangleSpec>,
    pub kind: SequenceKind,
    /// Index of the first term.
    pub offset: usize,
    pub terms: Vec<Rational>,
    pub recurrences: Vec<RecurrenceDoc>,
}

fn kind_label(kind: &SequenceKind) -> String {
    match kind {
        SequenceKind::RowSum => "row sums".into(),
        SequenceKind::AltSum => "alternating row sums".into(),
        SequenceKind::RisingDiag => "rising diagonal sums".into(),
        SequenceKind::DSeq => "D sequence".into(),
        SequenceKind::Column(l) => format!("column l = {l}"),
        SequenceKind::LeftDiag => "left diagonal".into(),
        SequenceKind::RightDiag => "right diagonal".into(),
    }
}

impl Document for SequenceDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        let mut out = vec![vec!["n".to_string(), "value".to_string()]];
        out.extend(
            self.terms
                .iter()
                .enumerate()
                .map(|(i, t)| vec![(self.offset + i).to_string(), t.to_string()]),
        );
        Ok(out)
    }

    fn bfile_terms(&self) -> Result<Vec<(usize, &Rational)>, CliError> {
        Ok(self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (self.offset + i, t))
            .collect())
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        if let Some(spec) = &self.spec {
            writeln!(out, "{spec}").expect("writing to a String");
        }
        writeln!(
            out,
            "{} from n = {}: {}",
            kind_label(&self.kind),
            self.offset,
            join(&self.terms)
        )
        .expect("writing to a String");
        for r in &self.recurrences {
            writeln!(
                out,
                "{}: ({}) from n = {}",
                r.name,
                join(&r.coefficients),
                r.valid_from
            )
            .expect("writing to a String");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformDoc {
    pub direction: Direction,
    pub u: Rational,
    pub v: Rational,
    pub input: Vec<Rational>,
    pub output: Vec<Rational>,
}

impl Document for TransformDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        let mut out = vec![vec!["n".to_string(), "value".to_string()]];
        out.extend(
            self.output
                .iter()
                .enumerate()
                .map(|(i, t)| vec![i.to_string(), t.to_string()]),
        );
        Ok(out)
    }

    fn bfile_terms(&self) -> Result<Vec<(usize, &Rational)>, CliError> {
        Ok(self.output.iter().enumerate().collect())
    }

    fn pretty(&self) -> String {
        format!("{}\n", join(&self.output))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryStatus {
    Member,
    NonMember,
    /// `a0 = 0`: the family classification does not apply.
    OutOfHypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub spec: TriangleSpec,
    pub rows: usize,
    pub symmetry: SymmetryStatus,
    pub lambda: Option<Rational>,
    pub families: Vec<String>,
    /// Brute-force symmetry over the built rows.
    pub symmetric_on_rows: bool,
    pub sum_above_case1: bool,
    pub sum_above_case2: bool,
    /// `A = B = 0`.
    pub degenerate: bool,
    pub notice: Option<String>,
}

impl ClassifyDoc {
    fn symmetric_text(&self) -> String {
        match self.symmetry {
            SymmetryStatus::Member => self.families.join(", "),
            SymmetryStatus::NonMember => "no".into(),
            SymmetryStatus::OutOfHypothesis => "not classified (a0 = 0)".into(),
        }
    }

    fn sum_above_text(&self) -> String {
        match (self.sum_above_case1, self.sum_above_case2) {
            (true, true) => "case1 and case2".into(),
            (true, false) => "case1".into(),
            (false, true) => "case2".into(),
            (false, false) => "none".into(),
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

impl Document for ClassifyDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        let pair = |k: &str, v: String| vec![k.to_string(), v];
        Ok(vec![
            pair("spec", self.spec.to_string()),
            pair("symmetric", self.symmetric_text()),
            pair("symmetric_on_rows", yes_no(self.symmetric_on_rows)),
            pair("sum_above", self.sum_above_text()),
            pair("degenerate", yes_no(self.degenerate)),
        ])
    }

    fn pretty(&self) -> String {
        let mut out = format!(
            "{}\nsymmetric: {}; sum-above: {}; degenerate: {}\n",
            self.spec,
            self.symmetric_text(),
            self.sum_above_text(),
            yes_no(self.degenerate)
        );
        if let Some(n) = &self.notice {
            writeln!(out, "note: {n}").expect("writing to a String");
        }
        out
    }
}

/// Where a failed check went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Locus {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub expected: Option<Rational>,
    pub found: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    /// Number of indices checked, when passing.
    pub checked: Option<usize>,
    pub locus: Option<Locus>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub spec: TriangleSpec,
    pub rows: usize,
    pub all_pass: bool,
    pub checks: Vec<CheckRow>,
}

fn locus_text(l: &Locus) -> String {
    let mut parts = Vec::new();
    match (l.n, l.k) {
        (Some(n), Some(k)) => parts.push(format!("at ({n},{k})")),
        (Some(n), None) => parts.push(format!("at n = {n}")),
        _ => {}
    }
    if let (Some(e), Some(f)) = (&l.expected, &l.found) {
        parts.push(format!("expected {e}, found {f}"));
    }
    parts.join(": ")
}

impl Document for CheckDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        let mut out = vec![["check", "passed", "checked", "locus", "note"]
            .map(String::from)
            .to_vec()];
        for c in &self.checks {
            out.push(vec![
                c.name.clone(),
                c.passed.to_string(),
                c.checked.map(|x| x.to_string()).unwrap_or_default(),
                c.locus.as_ref().map(locus_text).unwrap_or_default(),
                c.note.clone().unwrap_or_default(),
            ]);
        }
        Ok(out)
    }

    fn pretty(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("{} ({} rows)\n", self.spec, self.rows);
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let mut line = format!("{:<width$}  {status}", c.name);
            if let Some(l) = &c.locus {
                write!(line, "  {}", locus_text(l)).expect("writing to a String");
            }
            if let Some(n) = &c.note {
                write!(line, "  ({n})").expect("writing to a String");
            }
            writeln!(out, "{}", line.trim_end()).expect("writing to a String");
        }
        let verdict = if self.all_pass {
            "all checks pass"
        } else {
            "some checks failed"
        };
        writeln!(out, "{verdict}").expect("writing to a String");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisDoc {
    pub spec: TriangleSpec,
    pub target: String,
    pub terms: Vec<Rational>,
    pub matches: Vec<String>,
    /// First non-integer term, when the sequence cannot be matched.
    pub unmatchable_at: Option<usize>,
}

impl Document for OeisDoc {
    fn csv_records(&self) -> Result<Vec<Vec<String>>, CliError> {
        let mut out = vec![vec!["id".to_string()]];
        out.extend(self.matches.iter().map(|m| vec![m.clone()]));
        Ok(out)
    }

    fn pretty(&self) -> String {
        let result = match (self.unmatchable_at, self.matches.is_empty()) {
            (Some(i), _) => format!("unmatchable: term {i} is not an integer"),
            (None, true) => "no embedded sequence matches".into(),
            (None, false) => format!("matches {}", self.matches.join(", ")),
        };
        format!(
            "{} {}: {}\n{result}\n",
            self.spec,
            self.target,
            join(&self.terms)
        )
    }
}
