//! Library side of the `bintri` command-line tool.

pub mod args;
pub mod battery;
pub mod docs;

use bintri::classify::{classify_spec, FamilyTag};
use bintri::oeis::{prefix_matches, MatchOutcome};
use bintri::sequences::{
    alternating_row_sums, alternating_sum_recurrence, column_recurrence, column_sequence,
    left_diagonal, right_diagonal, rising_diagonal_recurrence, rising_diagonal_sums,
    row_sum_recurrence, row_sums, DerivedSequence, LinearRecurrence, SequenceKind,
};
use bintri::transform::{forward_transform, inverse_transform};
use bintri::triangle::{build_triangle, right_diagonal_recurrence};
use bintri::{Rational, Sequence, Triangle, TriangleSpec};

pub use args::{Cli, Command, Direction, Format, MatchTarget, SequenceArg, SpecArgs};
use docs::{
    render, ClassifyDoc, RecurrenceDoc, SequenceDoc, SymmetryStatus, TransformDoc, TriangleDoc,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    /// Some check failed; carries the rendered report.
    #[error("one or more checks failed")]
    CheckFailed(String),
    #[error("internal fault: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::CheckFailed(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<bintri::Error> for CliError {
    fn from(e: bintri::Error) -> Self {
        match e {
            bintri::Error::Internal(_) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn rows_or(rows: Option<usize>, default: usize) -> Result<usize, CliError> {
    match rows.unwrap_or(default) {
        0 => Err(CliError::Validation("--rows must be at least 1".into())),
        n => Ok(n),
    }
}

fn derived(t: &Triangle, which: SequenceArg, ell: i64) -> Result<DerivedSequence, CliError> {
    Ok(match which {
        SequenceArg::RowSum => row_sums(t),
        SequenceArg::AltSum => alternating_row_sums(t),
        SequenceArg::RisingDiag => rising_diagonal_sums(t),
        SequenceArg::Column => column_sequence(t, ell)?,
        SequenceArg::LeftDiagonal => left_diagonal(t),
        SequenceArg::RightDiagonal => right_diagonal(t),
    })
}

/// The recurrences the sequence is known to satisfy.
fn recurrences(spec: &TriangleSpec, kind: &SequenceKind) -> Vec<RecurrenceDoc> {
    let mut out = Vec::new();
    match kind {
        SequenceKind::RowSum => {
            let r = row_sum_recurrence(spec);
            out.push(RecurrenceDoc::new("order 4", &r.order4));
            if let Some(o2) = &r.order2 {
                out.push(RecurrenceDoc::new("order 2", o2));
            }
        }
        SequenceKind::AltSum => {
            let r = alternating_sum_recurrence(spec);
            out.push(RecurrenceDoc::new("order 4", &r.order4));
            if let Some(el) = &r.even_lag {
                out.push(RecurrenceDoc::new("even lags", el));
            }
        }
        SequenceKind::RisingDiag => {
            out.push(RecurrenceDoc::new(
                "order 6",
                &rising_diagonal_recurrence(spec).order6,
            ));
        }
        SequenceKind::Column(_) => out.push(RecurrenceDoc::new("column", &column_recurrence(spec))),
        SequenceKind::LeftDiag => {
            let rec = LinearRecurrence::new(vec![spec.alpha().clone(), spec.beta().clone()], 2)
                .expect("order-2 recurrence");
            out.push(RecurrenceDoc::new("left leg", &rec));
        }
        SequenceKind::RightDiag => {
            out.push(RecurrenceDoc::new(
                "right leg",
                &right_diagonal_recurrence(spec).recurrence,
            ));
        }
        SequenceKind::DSeq => {}
    }
    out
}

fn sequence_doc(
    spec: &TriangleSpec,
    t: &Triangle,
    which: SequenceArg,
    ell: i64,
) -> Result<SequenceDoc, CliError> {
    let seq = derived(t, which, ell)?;
    Ok(SequenceDoc {
        spec: Some(spec.clone()),
        recurrences: recurrences(spec, &seq.kind),
        kind: seq.kind,
        offset: seq.offset,
        terms: seq.terms,
    })
}

fn family_label(tag: FamilyTag, spec: &TriangleSpec) -> String {
    match tag {
        FamilyTag::F1 => format!("F1(beta={})", spec.beta()),
        FamilyTag::F2 => format!("F2(u={})", spec.u()),
        FamilyTag::F3 => "F3".into(),
        FamilyTag::GeometricSeed => {
            format!("geometric-seed(alpha={}, u={})", spec.alpha(), spec.u())
        }
    }
}

fn parse_injection(text: &str) -> Result<(usize, usize, Rational), CliError> {
    let bad = || CliError::Validation(format!("expected \"n,k,value\", got {text:?}"));
    let mut parts = text.split(',').map(str::trim);
    let (Some(n), Some(k), Some(value), None) =
        (parts.next(), parts.next(), parts.next(), parts.next())
    else {
        return Err(bad());
    };
    Ok((
        n.parse().map_err(|_| bad())?,
        k.parse().map_err(|_| bad())?,
        value.parse()?,
    ))
}

fn parse_terms(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(CliError::from))
        .collect()
}

/// Runs one command and returns the text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Generate {
            spec,
            sequence,
            ell,
        } => {
            let spec = spec.spec()?;
            let t = build_triangle(&spec, rows_or(cli.rows, 7)?)?;
            match sequence {
                Some(which) => render(&sequence_doc(&spec, &t, *which, *ell)?, format),
                None => render(
                    &TriangleDoc {
                        spec,
                        rows: t.rows().to_vec(),
                    },
                    format,
                ),
            }
        }
        Command::Sequence { spec, kind, ell } => {
            let spec = spec.spec()?;
            let t = build_triangle(&spec, rows_or(cli.rows, 10)?)?;
            render(&sequence_doc(&spec, &t, *kind, *ell)?, format)
        }
        Command::Transform {
            direction,
            terms,
            u,
            v,
        } => {
            let input = parse_terms(terms)?;
            let seq = Sequence::new(input.clone());
            let count = input.len();
            let output = match direction {
                Direction::Forward => forward_transform(&seq, u, v, count)?,
                Direction::Inverse => inverse_transform(&seq, u, v, count)?,
            };
            let doc = TransformDoc {
                direction: *direction,
                u: u.clone(),
                v: v.clone(),
                input,
                output: output.into_terms(),
            };
            render(&doc, format)
        }
        Command::Classify { spec } => {
            let spec = spec.spec()?;
            let rows = rows_or(cli.rows, 12)?;
            let c = classify_spec(&spec, rows)?;
            let (symmetry, lambda, families, notice) = match &c.symmetry {
                None => (
                    SymmetryStatus::OutOfHypothesis,
                    None,
                    Vec::new(),
                    Some("symmetry classification assumes a0 != 0".to_string()),
                ),
                Some(s) => (
                    if s.is_member() {
                        SymmetryStatus::Member
                    } else {
                        SymmetryStatus::NonMember
                    },
                    Some(s.lambda.clone()),
                    s.families.iter().map(|f| family_label(*f, &spec)).collect(),
                    None,
                ),
            };
            let doc = ClassifyDoc {
                spec,
                rows,
                symmetry,
                lambda,
                families,
                symmetric_on_rows: c.symmetric_on_rows.passed(),
                sum_above_case1: c.sum_above_case1.passed(),
                sum_above_case2: c.sum_above_case2.passed(),
                degenerate: c.degenerate,
                notice,
            };
            render(&doc, format)
        }
        Command::Check { spec, inject } => {
            let spec = spec.spec()?;
            let mut t = build_triangle(&spec, rows_or(cli.rows, 14)?)?;
            if let Some(text) = inject {
                let (n, k, value) = parse_injection(text)?;
                t = t.with_entry(n, k, value)?;
            }
            let doc = battery::run_checks_on(t)?;
            let text = render(&doc, format)?;
            if doc.all_pass {
                Ok(text)
            } else {
                Err(CliError::CheckFailed(text))
            }
        }
        Command::OeisMatch {
            spec,
            sequence,
            ell,
        } => {
            let spec = spec.spec()?;
            let t = build_triangle(&spec, rows_or(cli.rows, 16)?)?;
            let terms = match sequence.sequence() {
                Some(which) => derived(&t, which, *ell)?.terms,
                None => t.flatten(),
            };
            let (matches, unmatchable_at) = match prefix_matches(&terms) {
                MatchOutcome::Matched { ids } => {
                    (ids.into_iter().map(String::from).collect(), None)
                }
                MatchOutcome::Unmatchable { index } => (Vec::new(), Some(index)),
            };
            let target = clap::ValueEnum::to_possible_value(sequence)
                .map(|p| p.get_name().to_string())
                .unwrap_or_default();
            let doc = docs::OeisDoc {
                spec,
                target,
                terms,
                matches,
                unmatchable_at,
            };
            render(&doc, format)
        }
    }
}
