//! The full set of checks run by `bintri check`.

use bintri::classify::{sum_above_check, Orientation};
use bintri::explicit::{girard_waring_entry, ClosedForm, ClosedFormCase};
use bintri::sequences::{
    alternating_row_sums, alternating_sum_recurrence, check_d_even_relation, column_recurrence,
    column_sequence, d_sequence, left_diagonal, right_diagonal, rising_diagonal_recurrence,
    rising_diagonal_sums, row_sum_recurrence, row_sums, DerivedSequence, LinearRecurrence, Verdict,
};
use bintri::transform::{
    entry_from_column, entry_from_right_diagonal, forward_transform, inverse_transform,
};
use bintri::triangle::{build_triangle, Entries, EntryMismatch};
use bintri::{Error, Rational, Sequence, Triangle, TriangleSpec};

use crate::docs::{CheckDoc, CheckRow, Locus};
use crate::CliError;

fn row(name: impl Into<String>) -> CheckRow {
    CheckRow {
        name: name.into(),
        passed: true,
        checked: None,
        locus: None,
        note: None,
    }
}

fn from_verdict(name: impl Into<String>, v: Verdict) -> CheckRow {
    let mut r = row(name);
    match v {
        Verdict::Pass { checked } => r.checked = Some(checked),
        Verdict::Fail {
            index,
            expected,
            found,
        } => {
            r.passed = false;
            r.locus = Some(Locus {
                n: Some(index),
                k: None,
                expected: Some(expected),
                found: Some(found),
            });
        }
    }
    r
}

fn from_mismatch(name: impl Into<String>, checked: usize, m: Option<EntryMismatch>) -> CheckRow {
    let mut r = row(name);
    match m {
        None => r.checked = Some(checked),
        Some(m) => {
            r.passed = false;
            r.locus = Some(Locus {
                n: Some(m.n),
                k: Some(m.k),
                expected: Some(m.expected),
                found: Some(m.found),
            });
        }
    }
    r
}

/// A recurrence check that may not have enough terms at this row count.
fn recurrence_row(
    name: &str,
    seq: &DerivedSequence,
    rec: &LinearRecurrence,
) -> Result<CheckRow, Error> {
    match seq.verify(rec) {
        Ok(v) => Ok(from_verdict(name, v)),
        Err(Error::Length { needed, got }) => {
            let mut r = row(name);
            r.note = Some(format!("skipped: needs {needed} terms, have {got}"));
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Compares every entry against `f(n, k)`.
fn entrywise(
    name: &str,
    t: &Triangle,
    from_row: usize,
    mut f: impl FnMut(usize, usize) -> Result<Rational, Error>,
) -> Result<CheckRow, Error> {
    let mut checked = 0;
    for n in from_row..t.num_rows() {
        for k in 0..=n {
            let expected = f(n, k)?;
            if &expected != t.entry(n, k) {
                let m = EntryMismatch {
                    n,
                    k,
                    expected,
                    found: t.entry(n, k).clone(),
                };
                return Ok(from_mismatch(name, checked, Some(m)));
            }
            checked += 1;
        }
    }
    Ok(from_mismatch(name, checked, None))
}

fn sequence_equal(name: &str, got: &[Rational], want: &[Rational]) -> CheckRow {
    let first = got.iter().zip(want).position(|(g, w)| g != w);
    let mut r = row(name);
    match first {
        None if got.len() == want.len() => r.checked = Some(got.len()),
        None => {
            r.passed = false;
            r.note = Some(format!("length {} against {}", got.len(), want.len()));
        }
        Some(i) => {
            r.passed = false;
            r.locus = Some(Locus {
                n: Some(i),
                k: None,
                expected: Some(want[i].clone()),
                found: Some(got[i].clone()),
            });
        }
    }
    r
}

pub fn run_checks(spec: &TriangleSpec, rows: usize) -> Result<CheckDoc, CliError> {
    run_checks_on(build_triangle(spec, rows)?)
}

/// Runs the checks on an already built, possibly modified, triangle.
pub fn run_checks_on(t: Triangle) -> Result<CheckDoc, CliError> {
    let rows = t.num_rows();
    let spec = &t.spec().clone();
    let mut checks = Vec::new();

    if rows >= 4 {
        for c in t.check_local_identities()?.checks {
            checks.push(from_mismatch(
                format!("identity {}", c.identity.label()),
                c.checked,
                c.first_failure,
            ));
        }
    }

    let (u, v) = (spec.u(), spec.v());
    let left = Sequence::new(left_diagonal(&t).terms);
    let right = Sequence::new(right_diagonal(&t).terms);
    let fwd = forward_transform(&left, u, v, rows)?;
    checks.push(sequence_equal(
        "right leg = transform of left leg",
        fwd.terms(),
        right.terms(),
    ));
    let inv = inverse_transform(&right, u, v, rows)?;
    checks.push(sequence_equal(
        "left leg = inverse transform of right leg",
        inv.terms(),
        left.terms(),
    ));
    let col0 = t.column(0);
    checks.push(entrywise("entries from left leg", &t, 0, |n, k| {
        entry_from_column(&col0, 0, u, v, n, k)
    })?);
    checks.push(entrywise("entries from right leg", &t, 0, |n, k| {
        entry_from_right_diagonal(&right, u, v, n, k)
    })?);

    let rs = row_sum_recurrence(spec);
    let sums = row_sums(&t);
    checks.push(recurrence_row("row sums, order 4", &sums, &rs.order4)?);
    if let Some(o2) = &rs.order2 {
        checks.push(recurrence_row("row sums, order 2", &sums, o2)?);
    }
    let ar = alternating_sum_recurrence(spec);
    let alt = alternating_row_sums(&t);
    checks.push(recurrence_row(
        "alternating sums, order 4",
        &alt,
        &ar.order4,
    )?);
    if let Some(el) = &ar.even_lag {
        checks.push(recurrence_row("alternating sums, even lags", &alt, el)?);
    }

    let rd = rising_diagonal_recurrence(spec);
    let d = rising_diagonal_sums(&t);
    checks.push(recurrence_row("rising diagonals, order 6", &d, &rd.order6)?);
    let big_d = d_sequence(&d, spec.alpha(), spec.beta());
    checks.push(recurrence_row(
        "D_n = A D_(n-2) + B D_(n-4)",
        &big_d,
        &rd.d_relation,
    )?);
    match check_d_even_relation(&big_d, right.terms()) {
        Ok(v) => checks.push(from_verdict("D_2k = -b_k", v)),
        Err(Error::Length { .. }) => {
            let mut r = row("D_2k = -b_k");
            r.note = Some("skipped: too few rows".into());
            checks.push(r);
        }
        Err(e) => return Err(e.into()),
    }

    let crec = column_recurrence(spec);
    for ell in -3..=3 {
        let name = format!("column l = {ell}");
        match column_sequence(&t, ell) {
            Ok(c) => checks.push(recurrence_row(&name, &c, &crec)?),
            Err(Error::Index(_)) => {
                let mut r = row(name);
                r.note = Some("skipped: too few rows".into());
                checks.push(r);
            }
            Err(e) => return Err(e.into()),
        }
    }

    let cf = ClosedForm::new(spec)?;
    let case = match cf.data().case {
        ClosedFormCase::Generic => "generic",
        ClosedFormCase::RepeatedRoot => "repeated-root",
        ClosedFormCase::DoublyDegenerate => "doubly degenerate",
    };
    let mut rows_cache: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for n in 0..rows {
        rows_cache.push(cf.row(n)?);
    }
    let mut closed = entrywise("closed form", &t, 0, |n, k| Ok(rows_cache[n][k].clone()))?;
    closed.note = Some(format!("{case} case"));
    checks.push(closed);

    if spec.u() == spec.alpha() && spec.v() == spec.beta() {
        let (a0, a1, al, be) = (spec.a0(), spec.a1(), spec.alpha(), spec.beta());
        checks.push(entrywise("binomial-sum form", &t, 1, |n, k| {
            girard_waring_entry(a0, a1, al, be, n, k)
        })?);
        let v = sum_above_check(&t, Orientation::Case1);
        checks.push(match v {
            bintri::classify::EntryVerdict::Pass { checked } => {
                from_mismatch("sum of above, case 1", checked, None)
            }
            bintri::classify::EntryVerdict::Fail(m) => {
                from_mismatch("sum of above, case 1", 0, Some(m))
            }
        });
    }

    let all_pass = checks.iter().all(|c| c.passed);
    Ok(CheckDoc {
        spec: spec.clone(),
        rows,
        all_pass,
        checks,
    })
}
