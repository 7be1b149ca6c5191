//! Special families: symmetric triangles, sum-of-above triangles, and the
//! check that Pascal's triangle is not a binomial interpolated triangle.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::triangle::{build_triangle, EntryMismatch, Triangle, TriangleSpec};

/// Result of an entrywise check over a built triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EntryVerdict {
    Pass { checked: usize },
    Fail(EntryMismatch),
}

impl EntryVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, EntryVerdict::Pass { .. })
    }
}

/// Checks `a_{n,k} = a_{n,n-k}`; a failure reports `found = a_{n,k}` and
/// `expected = a_{n,n-k}` at the first offending entry (row-major order).
pub fn is_symmetric(t: &Triangle) -> EntryVerdict {
    let mut checked = 0;
    for (n, row) in t.rows().iter().enumerate() {
        for k in 0..=n / 2 {
            checked += 1;
            if row[k] != row[n - k] {
                return EntryVerdict::Fail(EntryMismatch {
                    n,
                    k,
                    expected: row[n - k].clone(),
                    found: row[k].clone(),
                });
            }
        }
    }
    EntryVerdict::Pass { checked }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    /// `u = -1`, `v = alpha = 2 lambda`, `beta` free.
    F1,
    /// `alpha = 2 lambda`, `beta = -lambda^2`, `v = lambda (1 - u)`, `u` free.
    F2,
    /// `u = -1`, `v = alpha = 2 lambda`, `beta = -lambda^2`.
    F3,
    /// Geometric left leg: `beta = lambda (lambda - alpha)` and `v = lambda (1 - u)`,
    /// so row `n` is constant `a0 lambda^n`. Contains F2.
    GeometricSeed,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::F1 => "F1",
            FamilyTag::F2 => "F2",
            FamilyTag::F3 => "F3",
            FamilyTag::GeometricSeed => "geometric-seed",
        };
        f.write_str(s)
    }
}

/// A symmetric family for fixed `a0` and `lambda = a1 / a0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryFamily {
    pub tag: FamilyTag,
    pub a0: Rational,
    pub lambda: Rational,
    pub free_params: &'static str,
}

impl SymmetryFamily {
    /// Member of the family. `free` is `beta` for F1, `u` for F2 and ignored for F3.
    /// For the geometric-seed family it is `u`, with `alpha = 2 lambda + 1`.
    pub fn instantiate(&self, free: Option<&Rational>) -> Result<TriangleSpec> {
        let l = &self.lambda;
        let two_l = Rational::from(2) * l;
        let a1 = &self.a0 * l;
        let need = || {
            free.cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("family {} needs a free parameter", self.tag))
            })
        };
        let (alpha, beta, u, v) = match self.tag {
            FamilyTag::F1 => (two_l.clone(), need()?, Rational::from(-1), two_l),
            FamilyTag::F2 => {
                let u = need()?;
                if u.is_one() {
                    return Err(Error::InvalidParameter("F2 needs u != 1".into()));
                }
                let v = l * (Rational::one() - &u);
                (two_l, -(l * l), u, v)
            }
            FamilyTag::F3 => (two_l.clone(), -(l * l), Rational::from(-1), two_l),
            FamilyTag::GeometricSeed => {
                let u = need()?;
                let alpha = two_l + Rational::one();
                let beta = l * (l - &alpha);
                let v = l * (Rational::one() - &u);
                (alpha, beta, u, v)
            }
        };
        TriangleSpec::new(self.a0.clone(), a1, alpha, beta, u, v)
    }
}

fn lambda_of(a0: &Rational, a1: &Rational) -> Result<Rational> {
    if a0.is_zero() {
        return Err(Error::Domain(
            "symmetry classification needs a0 != 0".into(),
        ));
    }
    a1.checked_div(a0)
}

/// The three symmetric families for seeds `(a0, a1)`. Empty when `a1 = 0`,
/// since then `alpha = 2 lambda` would vanish.
pub fn symmetric_families(a0: &Rational, a1: &Rational) -> Result<Vec<SymmetryFamily>> {
    let lambda = lambda_of(a0, a1)?;
    if lambda.is_zero() {
        return Ok(Vec::new());
    }
    let fam = |tag, free_params| SymmetryFamily {
        tag,
        a0: a0.clone(),
        lambda: lambda.clone(),
        free_params,
    };
    Ok(vec![
        fam(FamilyTag::F1, "beta != 0"),
        fam(FamilyTag::F2, "u not in {0, 1}"),
        fam(FamilyTag::F3, "none"),
    ])
}

/// Families a spec belongs to, decided from the parameters alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryClass {
    pub lambda: Rational,
    pub families: Vec<FamilyTag>,
}

impl SymmetryClass {
    pub fn is_member(&self) -> bool {
        !self.families.is_empty()
    }
}

pub fn check_symmetry_conditions(spec: &TriangleSpec) -> Result<SymmetryClass> {
    let l = lambda_of(spec.a0(), spec.a1())?;
    let (alpha, beta, u, v) = (spec.alpha(), spec.beta(), spec.u(), spec.v());
    let two_l = Rational::from(2) * &l;
    let minus_one = Rational::from(-1);
    let lean = v == &(&l * (Rational::one() - u));

    let mut families = Vec::new();
    let f1 = u == &minus_one && v == alpha && alpha == &two_l;
    let f2 = alpha == &two_l && beta == &-(&l * &l) && lean;
    if f1 {
        families.push(FamilyTag::F1);
    }
    if f2 {
        families.push(FamilyTag::F2);
    }
    if f1 && beta == &-(&l * &l) {
        families.push(FamilyTag::F3);
    }
    if lean && beta == &(&l * (&l - alpha)) {
        families.push(FamilyTag::GeometricSeed);
    }
    Ok(SymmetryClass {
        lambda: l,
        families,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `a_{n,k} = v a_{n-1,k-1} + u a_{n-1,k}`.
    Case1,
    /// `a_{n,k} = u a_{n-1,k-1} + v a_{n-1,k}`.
    Case2,
}

/// Checks that every interior entry is the weighted sum of the two above it.
pub fn sum_above_check(t: &Triangle, orientation: Orientation) -> EntryVerdict {
    let (u, v) = (t.spec().u(), t.spec().v());
    let (w_left, w_right) = match orientation {
        Orientation::Case1 => (v, u),
        Orientation::Case2 => (u, v),
    };
    let rows = t.rows();
    let mut checked = 0;
    for n in 2..rows.len() {
        for k in 1..n {
            checked += 1;
            let expected = w_left * &rows[n - 1][k - 1] + w_right * &rows[n - 1][k];
            if expected != rows[n][k] {
                return EntryVerdict::Fail(EntryMismatch {
                    n,
                    k,
                    expected,
                    found: rows[n][k].clone(),
                });
            }
        }
    }
    EntryVerdict::Pass { checked }
}

/// `BT(a0, a1, alpha, beta; alpha, beta)`.
pub fn case1_spec(
    a0: &Rational,
    a1: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<TriangleSpec> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::Domain("case 1 needs alpha beta != 0".into()));
    }
    TriangleSpec::new(
        a0.clone(),
        a1.clone(),
        alpha.clone(),
        beta.clone(),
        alpha.clone(),
        beta.clone(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Case2Outcome {
    /// `(alpha - 1)^2 + 4 beta = 0`: the single spec with `u = -1`, `v = (alpha - 1)/2`.
    Degenerate,
    /// Rational square discriminant: one spec per root `v`.
    TwoRational,
    /// Solutions exist only in `Q(sqrt(discriminant))`; no spec is produced.
    Irrational { discriminant: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumAboveSolution {
    pub orientation: Orientation,
    pub outcome: Case2Outcome,
    pub specs: Vec<TriangleSpec>,
}

/// Solves `v^2 + (1 - alpha) v - beta = 0`, `u = v^2 / beta`.
pub fn case2_specs(
    a0: &Rational,
    a1: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<SumAboveSolution> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::Domain("case 2 needs alpha beta != 0".into()));
    }
    let am1 = alpha - Rational::one();
    let disc = &am1 * &am1 + Rational::from(4) * beta;
    let half = Rational::new(1, 2)?;
    let make = |u: Rational, v: Rational| {
        TriangleSpec::new(a0.clone(), a1.clone(), alpha.clone(), beta.clone(), u, v)
    };
    let solution = |outcome, specs| SumAboveSolution {
        orientation: Orientation::Case2,
        outcome,
        specs,
    };
    if disc.is_zero() {
        let spec = make(Rational::from(-1), &am1 * &half)?;
        return Ok(solution(Case2Outcome::Degenerate, vec![spec]));
    }
    let Some(root) = disc.sqrt_exact() else {
        return Ok(solution(
            Case2Outcome::Irrational { discriminant: disc },
            Vec::new(),
        ));
    };
    let mut specs = Vec::with_capacity(2);
    for s in [root.clone(), -root] {
        let v = (&am1 + s) * &half;
        let u = (&v * &v).checked_div(beta)?;
        specs.push(make(u, v)?);
    }
    Ok(solution(Case2Outcome::TwoRational, specs))
}

/// The two triangles that are both symmetric and sum-of-above:
/// `BT(a0, -a0/2, -1, -1; -1, -1)` and `BT(a0, a0, 2, -1; 2, -1)`.
pub fn symmetric_sum_above_specs(a0: &Rational) -> Result<Vec<TriangleSpec>> {
    if a0.is_zero() {
        return Err(Error::Domain("a0 = 0 gives the zero triangle".into()));
    }
    let m1 = Rational::from(-1);
    Ok(vec![
        TriangleSpec::new(
            a0.clone(),
            -(a0 * Rational::new(1, 2)?),
            m1.clone(),
            m1.clone(),
            m1.clone(),
            m1.clone(),
        )?,
        TriangleSpec::new(
            a0.clone(),
            a0.clone(),
            Rational::from(2),
            m1.clone(),
            Rational::from(2),
            m1,
        )?,
    ])
}

/// Distinct entry values of a triangle.
pub fn value_set(t: &Triangle) -> BTreeSet<Rational> {
    t.rows().iter().flatten().cloned().collect()
}

/// Everything `classify` reports about one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub spec: TriangleSpec,
    /// `None` when `a0 = 0`, where the family classification does not apply.
    pub symmetry: Option<SymmetryClass>,
    pub symmetric_on_rows: EntryVerdict,
    pub sum_above_case1: EntryVerdict,
    pub sum_above_case2: EntryVerdict,
    /// `A = B = 0`.
    pub degenerate: bool,
    pub rows: usize,
}

pub fn classify_spec(spec: &TriangleSpec, rows: usize) -> Result<Classification> {
    let t = build_triangle(spec, rows)?;
    let symmetry = match check_symmetry_conditions(spec) {
        Ok(c) => Some(c),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    let c = spec.constants();
    Ok(Classification {
        spec: spec.clone(),
        symmetry,
        symmetric_on_rows: is_symmetric(&t),
        sum_above_case1: sum_above_check(&t, Orientation::Case1),
        sum_above_case2: sum_above_check(&t, Orientation::Case2),
        degenerate: c.a().is_zero() && c.b().is_zero(),
        rows,
    })
}

/// First contradiction of the symmetric-family branch with `u = -1`, `v = -beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftLegContradiction {
    pub alpha: Rational,
    pub beta: Rational,
    pub v: Rational,
    /// Row index of the first left-leg entry that differs from Pascal's.
    pub n: usize,
    pub forced: Rational,
    pub pascal: Rational,
}

/// The two values `v` is forced to take in the F2 branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterClash {
    pub v_from_family: Rational,
    pub v_from_sum_above: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSearch {
    pub values: usize,
    pub seed_pairs: usize,
    pub seed_pairs_matching_leg: usize,
    pub specs_tested: usize,
    pub matches: Vec<TriangleSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PascalReport {
    pub branch_a: LeftLegContradiction,
    pub branch_b: ParameterClash,
    pub grid: GridSearch,
}

fn pascal_row(n: usize) -> Vec<Rational> {
    crate::transform::binomial_row(n)
        .into_iter()
        .map(Rational::from)
        .collect()
}

fn branch_a() -> Result<LeftLegContradiction> {
    // a_{0,0} = a_{1,0} = 1 and F1 give alpha = v = 2; sum-above with t2 gives v = -beta.
    let alpha = Rational::from(2);
    let v = alpha.clone();
    let beta = -&v;
    let mut leg = vec![Rational::one(), Rational::one()];
    let mut n = 2;
    loop {
        let next = &alpha * &leg[n - 1] + &beta * &leg[n - 2];
        if !next.is_one() {
            return Ok(LeftLegContradiction {
                alpha,
                beta,
                v,
                n,
                forced: next,
                pascal: Rational::one(),
            });
        }
        leg.push(next);
        n += 1;
        if n > 64 {
            return Err(Error::Internal("left leg never left Pascal's".into()));
        }
    }
}

fn branch_b() -> ParameterClash {
    // F2 with lambda = 1: alpha = 2, beta = -1, v = 1 - u; u = -1 forces v = 2,
    // while v = -beta = 1.
    let beta = Rational::from(-1);
    let u = Rational::from(-1);
    ParameterClash {
        v_from_family: Rational::one() - u,
        v_from_sum_above: -beta,
    }
}

/// Rationals `p/q` with `1 <= q <= max_den`, `0 < |p| <= max_num`, deduplicated.
pub fn rational_grid(max_den: i64, max_num: i64) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in 1..=max_den {
        for p in -max_num..=max_num {
            if p != 0 {
                set.insert(Rational::new(p, q).expect("nonzero denominator"));
            }
        }
    }
    set.into_iter().collect()
}

/// Whether `BT(1, 1, alpha, beta; u, v)` agrees with Pascal's triangle on
/// `rows` rows; stops at the first differing entry.
fn matches_pascal(
    alpha: &Rational,
    beta: &Rational,
    u: &Rational,
    v: &Rational,
    rows: usize,
) -> bool {
    let mut prev: Vec<Rational> = vec![Rational::one()];
    let mut leg = vec![Rational::one(), Rational::one()];
    for n in 1..rows {
        if n >= 2 {
            let next = alpha * &leg[n - 1] + beta * &leg[n - 2];
            leg.push(next);
        }
        let target = pascal_row(n);
        let mut row = Vec::with_capacity(n + 1);
        row.push(leg[n].clone());
        if row[0] != target[0] {
            return false;
        }
        for k in 1..=n {
            let x = u * &row[k - 1] + v * &prev[k - 1];
            if x != target[k] {
                return false;
            }
            row.push(x);
        }
        prev = row;
    }
    true
}

fn grid_search(max_den: i64, max_num: i64, rows: usize) -> Result<GridSearch> {
    let values = rational_grid(max_den, max_num);
    let ones = vec![Rational::one(); rows];
    let mut seed_pairs = 0;
    let mut survivors = Vec::new();
    for alpha in &values {
        for beta in &values {
            seed_pairs += 1;
            let leg = crate::sequences::LinearRecurrence::from_coefficients(vec![
                alpha.clone(),
                beta.clone(),
            ])?
            .generate(&ones[..2], rows);
            if leg == ones {
                survivors.push((alpha.clone(), beta.clone()));
            }
        }
    }
    let mut specs_tested = 0;
    let mut matches = Vec::new();
    for (alpha, beta) in &survivors {
        for u in &values {
            for v in &values {
                specs_tested += 1;
                if matches_pascal(alpha, beta, u, v, rows) {
                    let one = Rational::one();
                    matches.push(TriangleSpec::new(
                        one.clone(),
                        one,
                        alpha.clone(),
                        beta.clone(),
                        u.clone(),
                        v.clone(),
                    )?);
                }
            }
        }
    }
    Ok(GridSearch {
        values: values.len(),
        seed_pairs,
        seed_pairs_matching_leg: survivors.len(),
        specs_tested,
        matches,
    })
}

/// Replays both branches of the argument and runs a finite grid search over
/// `p/q` parameters (`q <= 4`, `|p| <= 8`) against Pascal's first 6 rows.
pub fn pascal_impossibility_report() -> Result<PascalReport> {
    Ok(PascalReport {
        branch_a: branch_a()?,
        branch_b: branch_b(),
        grid: grid_search(4, 8, 6)?,
    })
}
