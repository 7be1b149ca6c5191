//! Binary binomial interpolated triangles `BT(a0, a1, alpha, beta; u, v)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::sequences::LinearRecurrence;
use crate::transform::Sequence;

/// The six parameters of a binary binomial interpolated triangle.
///
/// The left leg is `a_0 = a0`, `a_1 = a1`, `a_n = alpha a_{n-1} + beta a_{n-2}`;
/// the interior rule is `a_{n,k} = u a_{n,k-1} + v a_{n-1,k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct TriangleSpec {
    a0: Rational,
    a1: Rational,
    alpha: Rational,
    beta: Rational,
    u: Rational,
    v: Rational,
}

#[derive(Deserialize)]
struct RawSpec {
    a0: Rational,
    a1: Rational,
    alpha: Rational,
    beta: Rational,
    u: Rational,
    v: Rational,
}

impl TryFrom<RawSpec> for TriangleSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        TriangleSpec::new_allow_trivial(raw.a0, raw.a1, raw.alpha, raw.beta, raw.u, raw.v)
    }
}

impl TriangleSpec {
    /// Validates `u v != 0`, `alpha beta != 0` and that the seeds are not both zero.
    pub fn new(
        a0: Rational,
        a1: Rational,
        alpha: Rational,
        beta: Rational,
        u: Rational,
        v: Rational,
    ) -> Result<Self> {
        if a0.is_zero() && a1.is_zero() {
            return Err(Error::InvalidParameter(
                "a0 and a1 are both zero (the trivial triangle needs an explicit opt-in)".into(),
            ));
        }
        Self::new_allow_trivial(a0, a1, alpha, beta, u, v)
    }

    /// Like [`TriangleSpec::new`] but accepts `a0 = a1 = 0`, the all-zero triangle.
    pub fn new_allow_trivial(
        a0: Rational,
        a1: Rational,
        alpha: Rational,
        beta: Rational,
        u: Rational,
        v: Rational,
    ) -> Result<Self> {
        if u.is_zero() || v.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "u v must be nonzero (u = {u}, v = {v})"
            )));
        }
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "alpha beta must be nonzero (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(TriangleSpec {
            a0,
            a1,
            alpha,
            beta,
            u,
            v,
        })
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    pub fn a1(&self) -> &Rational {
        &self.a1
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn is_trivial(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn constants(&self) -> DerivedConstants {
        DerivedConstants::of(self)
    }

    /// Recurrence of the right diagonal `b_n = a_{n,n}`.
    pub fn right_diagonal_recurrence(&self) -> RightDiagonalRecurrence {
        right_diagonal_recurrence(self)
    }

    pub fn build(&self, rows: usize) -> Result<Triangle> {
        build_triangle(self, rows)
    }
}

impl fmt::Display for TriangleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BT({},{},{},{};{},{})",
            self.a0, self.a1, self.alpha, self.beta, self.u, self.v
        )
    }
}

/// `A = u alpha + 2v`, `B = u^2 beta - u v alpha - v^2` and `delta = alpha^2 + 4 beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedConstants {
    a: Rational,
    b: Rational,
    delta: Rational,
}

impl DerivedConstants {
    pub fn of(spec: &TriangleSpec) -> Self {
        let TriangleSpec {
            alpha, beta, u, v, ..
        } = spec;
        DerivedConstants {
            a: u * alpha + v * Rational::from(2),
            b: u * u * beta - u * v * alpha - v * v,
            delta: alpha * alpha + beta * Rational::from(4),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }
}

/// Read access to triangular arrays of entries `a_{n,k}`, `0 <= k <= n`.
pub trait Entries {
    fn num_rows(&self) -> usize;

    /// Panics when `(n, k)` is outside the materialized triangle.
    fn entry(&self, n: usize, k: usize) -> &Rational;

    fn source_spec(&self) -> Option<&TriangleSpec> {
        None
    }
}

impl Entries for [Vec<Rational>] {
    fn num_rows(&self) -> usize {
        self.len()
    }

    fn entry(&self, n: usize, k: usize) -> &Rational {
        &self[n][k]
    }
}

impl Entries for Vec<Vec<Rational>> {
    fn num_rows(&self) -> usize {
        self.len()
    }

    fn entry(&self, n: usize, k: usize) -> &Rational {
        &self[n][k]
    }
}

/// Materialized rows `0..rows` of a triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    spec: TriangleSpec,
    rows: Vec<Vec<Rational>>,
}

pub fn build_triangle(spec: &TriangleSpec, rows: usize) -> Result<Triangle> {
    if rows == 0 {
        return Err(Error::InvalidParameter("rows must be at least 1".into()));
    }
    let mut left = Vec::with_capacity(rows);
    for n in 0..rows {
        let value = match n {
            0 => spec.a0.clone(),
            1 => spec.a1.clone(),
            _ => &spec.alpha * &left[n - 1] + &spec.beta * &left[n - 2],
        };
        left.push(value);
    }
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (n, first) in left.into_iter().enumerate() {
        let mut row = Vec::with_capacity(n + 1);
        row.push(first);
        for k in 1..=n {
            let value = &spec.u * &row[k - 1] + &spec.v * &out[n - 1][k - 1];
            row.push(value);
        }
        out.push(row);
    }
    Ok(Triangle {
        spec: spec.clone(),
        rows: out,
    })
}

impl Triangle {
    /// Wraps explicit rows without checking them against the construction rule.
    /// Only the shape is validated; used for fixtures and fault injection.
    pub fn from_parts(spec: TriangleSpec, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some((n, row)) = rows.iter().enumerate().find(|(n, r)| r.len() != n + 1) {
            return Err(Error::InvalidParameter(format!(
                "row {n} has {} entries, expected {}",
                row.len(),
                n + 1
            )));
        }
        Ok(Triangle { spec, rows })
    }

    pub fn spec(&self) -> &TriangleSpec {
        &self.spec
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[Rational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Rational> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<Rational> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn left_diagonal(&self) -> Sequence {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }

    pub fn right_diagonal(&self) -> Sequence {
        self.rows.iter().map(|r| r[r.len() - 1].clone()).collect()
    }

    /// Column `k0` starting at its top entry: `[a_{k0,k0}, a_{k0+1,k0}, ...]`.
    pub fn column(&self, k0: usize) -> Sequence {
        self.rows.iter().skip(k0).map(|r| r[k0].clone()).collect()
    }

    /// Replaces a single entry, leaving every other entry untouched.
    pub fn with_entry(mut self, n: usize, k: usize, value: Rational) -> Result<Self> {
        let slot = self
            .rows
            .get_mut(n)
            .and_then(|r| r.get_mut(k))
            .ok_or_else(|| Error::Index(format!("({n}, {k}) outside the triangle")))?;
        *slot = value;
        Ok(self)
    }

    pub fn subtriangle(&self, n0: usize, k0: usize, rows: usize) -> Result<SubTriangle<'_>> {
        subtriangle(self, n0, k0, rows)
    }

    pub fn check_local_identities(&self) -> Result<IdentityReport> {
        check_local_identities(self)
    }
}

impl Entries for Triangle {
    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn entry(&self, n: usize, k: usize) -> &Rational {
        &self.rows[n][k]
    }

    fn source_spec(&self) -> Option<&TriangleSpec> {
        Some(&self.spec)
    }
}

/// The entries `a_{n0+i, k0+j}`, `0 <= j <= i < rows`, of a parent triangle.
#[derive(Clone, Copy, Debug)]
pub struct SubTriangle<'a> {
    parent: &'a Triangle,
    n0: usize,
    k0: usize,
    rows: usize,
}

pub fn subtriangle(t: &Triangle, n0: usize, k0: usize, rows: usize) -> Result<SubTriangle<'_>> {
    if k0 > n0 {
        return Err(Error::Index(format!(
            "apex needs k0 <= n0, got k0 = {k0}, n0 = {n0}"
        )));
    }
    if rows == 0 || n0 + rows > t.num_rows() {
        return Err(Error::Index(format!(
            "rows {n0}..{} not materialized (triangle has {})",
            n0 + rows,
            t.num_rows()
        )));
    }
    Ok(SubTriangle {
        parent: t,
        n0,
        k0,
        rows,
    })
}

impl SubTriangle<'_> {
    pub fn apex(&self) -> (usize, usize) {
        (self.n0, self.k0)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..=i).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn left_diagonal(&self) -> Sequence {
        (0..self.rows).map(|i| self.entry(i, 0).clone()).collect()
    }

    pub fn right_diagonal(&self) -> Sequence {
        (0..self.rows).map(|i| self.entry(i, i).clone()).collect()
    }
}

impl Entries for SubTriangle<'_> {
    fn num_rows(&self) -> usize {
        self.rows
    }

    fn entry(&self, i: usize, j: usize) -> &Rational {
        assert!(
            j <= i && i < self.rows,
            "({i}, {j}) outside the sub-triangle"
        );
        self.parent.entry(self.n0 + i, self.k0 + j)
    }
}

/// The seven local recurrences every binary binomial interpolated triangle obeys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LocalIdentity {
    /// `a_{n,k} = alpha a_{n-1,k} + beta a_{n-2,k}`, `n >= k + 2`
    T1,
    /// `a_{n,k} = (u beta / v) a_{n-1,k} - (B / v) a_{n-1,k-1}`, `1 <= k < n`
    T2,
    /// `a_{n,k} = ((u alpha + v) / u) a_{n-1,k} + (B / u) a_{n-2,k-1}`, `1 <= k < n`
    T3,
    /// `a_{n,k} = (u alpha + v) a_{n-1,k-1} + u beta a_{n-2,k-1}`, `1 <= k < n`
    T4,
    /// `a_{n,k} = ((u^2 beta + v^2) / v) a_{n-1,k-1} - (u B / v) a_{n-1,k-2}`, `2 <= k <= n`
    T5,
    /// `a_{n,k} = A a_{n-1,k-1} + B a_{n-2,k-2}`, `2 <= k <= n`
    T6,
    /// `a_{n,k} = ((2 u beta - v alpha) / beta) a_{n,k-1} - (B / beta) a_{n,k-2}`, `2 <= k <= n`
    T7,
}

impl LocalIdentity {
    pub const ALL: [LocalIdentity; 7] = [
        LocalIdentity::T1,
        LocalIdentity::T2,
        LocalIdentity::T3,
        LocalIdentity::T4,
        LocalIdentity::T5,
        LocalIdentity::T6,
        LocalIdentity::T7,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LocalIdentity::T1 => "t1",
            LocalIdentity::T2 => "t2",
            LocalIdentity::T3 => "t3",
            LocalIdentity::T4 => "t4",
            LocalIdentity::T5 => "t5",
            LocalIdentity::T6 => "t6",
            LocalIdentity::T7 => "t7",
        }
    }

    fn applies(self, n: usize, k: usize) -> bool {
        match self {
            LocalIdentity::T1 => n >= k + 2,
            LocalIdentity::T2 | LocalIdentity::T3 | LocalIdentity::T4 => k >= 1 && n > k,
            LocalIdentity::T5 | LocalIdentity::T6 | LocalIdentity::T7 => k >= 2 && n >= k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub n: usize,
    pub k: usize,
    /// Value predicted by the relation.
    pub expected: Rational,
    /// Value stored in the triangle.
    pub found: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: LocalIdentity,
    pub checked: usize,
    pub first_failure: Option<EntryMismatch>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, identity: LocalIdentity) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == identity)
    }
}

/// Evaluates identities t1..t7 at every index where each is defined.
pub fn check_local_identities(t: &Triangle) -> Result<IdentityReport> {
    if t.num_rows() < 4 {
        return Err(Error::Length {
            needed: 4,
            got: t.num_rows(),
        });
    }
    let spec = &t.spec;
    let consts = spec.constants();
    let (alpha, beta, u, v) = (&spec.alpha, &spec.beta, &spec.u, &spec.v);
    let (big_a, big_b) = (&consts.a, &consts.b);
    let two = Rational::from(2);

    let t2_left = (u * beta).checked_div(v)?;
    let t2_right = -big_b.checked_div(v)?;
    let t3_left = (u * alpha + v).checked_div(u)?;
    let t3_right = big_b.checked_div(u)?;
    let t4_left = u * alpha + v;
    let t4_right = u * beta;
    let t5_left = (u * u * beta + v * v).checked_div(v)?;
    let t5_right = -(u * big_b).checked_div(v)?;
    let t7_left = (&two * u * beta - v * alpha).checked_div(beta)?;
    let t7_right = -big_b.checked_div(beta)?;

    let a = |n: usize, k: usize| t.entry(n, k);
    let predict = |id: LocalIdentity, n: usize, k: usize| -> Rational {
        match id {
            LocalIdentity::T1 => alpha * a(n - 1, k) + beta * a(n - 2, k),
            LocalIdentity::T2 => &t2_left * a(n - 1, k) + &t2_right * a(n - 1, k - 1),
            LocalIdentity::T3 => &t3_left * a(n - 1, k) + &t3_right * a(n - 2, k - 1),
            LocalIdentity::T4 => &t4_left * a(n - 1, k - 1) + &t4_right * a(n - 2, k - 1),
            LocalIdentity::T5 => &t5_left * a(n - 1, k - 1) + &t5_right * a(n - 1, k - 2),
            LocalIdentity::T6 => big_a * a(n - 1, k - 1) + big_b * a(n - 2, k - 2),
            LocalIdentity::T7 => &t7_left * a(n, k - 1) + &t7_right * a(n, k - 2),
        }
    };

    let checks = LocalIdentity::ALL
        .iter()
        .map(|&id| {
            let mut checked = 0;
            let mut first_failure = None;
            'scan: for n in 0..t.num_rows() {
                for k in 0..=n {
                    if !id.applies(n, k) {
                        continue;
                    }
                    checked += 1;
                    let expected = predict(id, n, k);
                    if &expected != a(n, k) {
                        first_failure = Some(EntryMismatch {
                            n,
                            k,
                            expected,
                            found: a(n, k).clone(),
                        });
                        break 'scan;
                    }
                }
            }
            IdentityCheck {
                identity: id,
                checked,
                first_failure,
            }
        })
        .collect();
    Ok(IdentityReport { checks })
}

/// `b_n = A b_{n-1} + B b_{n-2}` for the right diagonal, with its seeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightDiagonalRecurrence {
    pub recurrence: LinearRecurrence,
    pub b0: Rational,
    pub b1: Rational,
    /// `A = B = 0`, which happens exactly when `v = -u alpha / 2` and `alpha^2 + 4 beta = 0`.
    pub degenerate: bool,
}

impl RightDiagonalRecurrence {
    /// The first `count` terms generated from the seeds.
    pub fn terms(&self, count: usize) -> Vec<Rational> {
        self.recurrence
            .generate(&[self.b0.clone(), self.b1.clone()], count)
    }
}

pub fn right_diagonal_recurrence(spec: &TriangleSpec) -> RightDiagonalRecurrence {
    let consts = spec.constants();
    let degenerate = consts.a.is_zero() && consts.b.is_zero();
    RightDiagonalRecurrence {
        recurrence: LinearRecurrence::new(vec![consts.a, consts.b], 2)
            .expect("order-2 recurrence is well formed"),
        b0: spec.a0.clone(),
        b1: &spec.u * &spec.a1 + &spec.v * &spec.a0,
        degenerate,
    }
}
