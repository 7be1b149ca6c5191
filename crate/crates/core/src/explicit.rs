//! Closed forms for `a_{n,k}`.
//!
//! The general evaluator splits on the seed discriminant `alpha^2 + 4 beta`:
//! distinct roots are handled in `Q(sqrt(alpha^2 + 4 beta))`, a repeated root
//! through the `(p + q k) y0^k` polynomial form, and the case `A = B = 0`
//! collapses every entry beyond the second column to zero. For the
//! sum-of-above triangles `BT(a0, a1, alpha, beta; alpha, beta)` there is
//! also a binomial-sum form derived from the Girard-Waring expansion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{QuadraticNumber, Rational};
use crate::transform::binomial;
use crate::triangle::{build_triangle, Entries, TriangleSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormCase {
    /// `alpha^2 + 4 beta != 0`.
    Generic,
    /// `alpha^2 + 4 beta = 0` and `A != 0`.
    RepeatedRoot,
    /// `alpha^2 + 4 beta = 0` and `A = 0` (then `B = 0` as well).
    DoublyDegenerate,
}

/// Quantities shared by every entry of one triangle's closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormData {
    pub case: ClosedFormCase,
    /// `sqrt(alpha^2 + 4 beta)`.
    pub d: QuadraticNumber,
    /// Roots `(alpha + D)/2` and `(alpha - D)/2` of `x^2 - alpha x - beta`.
    pub x1: QuadraticNumber,
    pub x2: QuadraticNumber,
    /// Roots of the row recurrence: `(beta u - v x2)/beta` and `(beta u - v x1)/beta`.
    pub y1: QuadraticNumber,
    pub y2: QuadraticNumber,
    /// Left leg as `p x1^n + q x2^n` (distinct roots) or `(p + q n) (alpha/2)^n`.
    pub p: QuadraticNumber,
    pub q: QuadraticNumber,
}

impl ClosedFormData {
    pub fn new(spec: &TriangleSpec) -> Result<Self> {
        let consts = spec.constants();
        let delta = consts.delta().clone();
        let case = if !delta.is_zero() {
            ClosedFormCase::Generic
        } else if !consts.a().is_zero() {
            ClosedFormCase::RepeatedRoot
        } else {
            ClosedFormCase::DoublyDegenerate
        };
        let lift = |r: &Rational| QuadraticNumber::from_rational(r.clone(), &delta);
        let half = Rational::new(1, 2)?;
        let (alpha, beta, u, v) = (spec.alpha(), spec.beta(), spec.u(), spec.v());
        let (a0, a1) = (lift(spec.a0()), lift(spec.a1()));

        let d = QuadraticNumber::sqrt_of(&delta);
        let x1 = d.add_rational(alpha).scale(&half);
        let x2 = d.neg().add_rational(alpha).scale(&half);
        let beta_inv = beta.recip()?;
        let y_of = |x: &QuadraticNumber| x.scale(&-v).add_rational(&(beta * u)).scale(&beta_inv);
        let (y1, y2) = (y_of(&x2), y_of(&x1));

        let (p, q) = match case {
            ClosedFormCase::Generic => (
                a1.sub(&a0.mul(&x2)?)?.div(&d)?,
                a0.mul(&x1)?.sub(&a1)?.div(&d)?,
            ),
            _ => (
                a0.clone(),
                lift(&(Rational::from(2) * spec.a1() - alpha * spec.a0()).checked_div(alpha)?),
            ),
        };
        Ok(ClosedFormData {
            case,
            d,
            x1,
            x2,
            y1,
            y2,
            p,
            q,
        })
    }
}

fn surd_free(x: QuadraticNumber, what: &str) -> Result<Rational> {
    x.is_rational()
        .ok_or_else(|| Error::Internal(format!("surd residue in {what}: {x}")))
}

/// Closed-form evaluator for one spec; the root data is computed once.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    spec: TriangleSpec,
    data: ClosedFormData,
}

impl ClosedForm {
    pub fn new(spec: &TriangleSpec) -> Result<Self> {
        Ok(ClosedForm {
            spec: spec.clone(),
            data: ClosedFormData::new(spec)?,
        })
    }

    pub fn data(&self) -> &ClosedFormData {
        &self.data
    }

    /// `a_{n,k}`, `0 <= k <= n`.
    pub fn entry(&self, n: usize, k: usize) -> Result<Rational> {
        if k > n {
            return Err(Error::Index(format!("need k <= n, got k = {k}, n = {n}")));
        }
        Ok(self
            .row_prefix(n, k + 1)?
            .pop()
            .expect("non-empty row prefix"))
    }

    /// Row `n` in full.
    pub fn row(&self, n: usize) -> Result<Vec<Rational>> {
        self.row_prefix(n, n + 1)
    }

    /// `a_{n,0}, ..., a_{n,len-1}`.
    fn row_prefix(&self, n: usize, len: usize) -> Result<Vec<Rational>> {
        let spec = &self.spec;
        match self.data.case {
            ClosedFormCase::Generic => {
                let (an0, weights) = generic_row(spec, &self.data, n)?;
                let mut out = vec![surd_free(an0, "a_{n,0}")?];
                if let Some((first, second)) = weights {
                    let (mut p1, mut p2) = (self.data.y1.clone(), self.data.y2.clone());
                    for _ in 1..len {
                        let value = first.mul(&p1)?.add(&second.mul(&p2)?)?;
                        out.push(surd_free(value, "a_{n,k}")?);
                        p1 = p1.mul(&self.data.y1)?;
                        p2 = p2.mul(&self.data.y2)?;
                    }
                }
                Ok(out)
            }
            ClosedFormCase::RepeatedRoot => {
                let an0 = repeated_left_leg(spec, n)?;
                let mut out = vec![an0.clone()];
                if len > 1 {
                    let (alpha, u, v) = (spec.alpha(), spec.u(), spec.v());
                    let big_a = spec.constants().a().clone();
                    let an1 = u * &an0 + v * repeated_left_leg(spec, n - 1)?;
                    let y0 = big_a.checked_div(alpha)?;
                    let slope = (alpha * &an1).checked_div(&big_a)? - &an0;
                    let mut power = y0.clone();
                    for k in 1..len {
                        out.push((&an0 + Rational::from(k as i64) * &slope) * &power);
                        power *= &y0;
                    }
                }
                Ok(out)
            }
            ClosedFormCase::DoublyDegenerate => {
                let mut out = vec![repeated_left_leg(spec, n)?];
                if len > 1 {
                    let half_alpha = spec.alpha().checked_div(&Rational::from(2))?;
                    out.push(spec.u() * repeated_slope(spec)? * half_alpha.pow(exponent(n)?));
                }
                out.resize(len.max(1), Rational::zero());
                Ok(out)
            }
        }
    }
}

/// `a_{n,k}` from the closed form matching the spec's case.
pub fn closed_form_entry(spec: &TriangleSpec, n: usize, k: usize) -> Result<Rational> {
    ClosedForm::new(spec)?.entry(n, k)
}

fn exponent(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("index {n} too large")))
}

type RowWeights = (QuadraticNumber, QuadraticNumber);

/// `a_{n,0}` and, for `n >= 1`, the weights of `y1^k` and `y2^k` in row `n`.
fn generic_row(
    spec: &TriangleSpec,
    data: &ClosedFormData,
    n: usize,
) -> Result<(QuadraticNumber, Option<RowWeights>)> {
    let (alpha, beta, u, v) = (spec.alpha(), spec.beta(), spec.u(), spec.v());
    let (a0, a1) = (spec.a0(), spec.a1());
    let two = Rational::from(2);
    let d = &data.d;
    let two_d = d.scale(&two);

    // a_{n,0} = c1 x1^n + c2 x2^n
    let c1 = d
        .add_rational(&-alpha)
        .scale(a0)
        .add_rational(&(&two * a1))
        .div(&two_d)?;
    let c2 = d
        .add_rational(alpha)
        .scale(a0)
        .add_rational(&-(&two * a1))
        .div(&two_d)?;
    let ne = exponent(n)?;
    let an0 = c1.mul(&data.x1.pow(ne))?.add(&c2.mul(&data.x2.pow(ne))?)?;
    if n == 0 {
        return Ok((an0, None));
    }

    // a_{n,1} = c1 x1^(n-1) (u x1 + v) + c2 x2^(n-1) (u x2 + v)
    let lean = |x: &QuadraticNumber| x.scale(u).add_rational(v);
    let an1 = c1
        .mul(&data.x1.pow(ne - 1))?
        .mul(&lean(&data.x1))?
        .add(&c2.mul(&data.x2.pow(ne - 1))?.mul(&lean(&data.x2))?)?;

    let two_vd = d.scale(&(&two * v));
    let beta2 = &two * beta;
    let shift = alpha * v - &two * beta * u;
    let first = d
        .scale(v)
        .add_rational(&shift)
        .mul(&an0)?
        .add(&an1.scale(&beta2))?
        .div(&two_vd)?;
    let second = d
        .scale(v)
        .add_rational(&-&shift)
        .mul(&an0)?
        .sub(&an1.scale(&beta2))?
        .div(&two_vd)?;
    Ok((an0, Some((first, second))))
}

/// `(a0 + n c) (alpha/2)^n` with `c = (2 a1 - alpha a0) / alpha`.
fn repeated_left_leg(spec: &TriangleSpec, n: usize) -> Result<Rational> {
    let (alpha, a0) = (spec.alpha(), spec.a0());
    let c = repeated_slope(spec)?;
    let half_alpha = alpha.checked_div(&Rational::from(2))?;
    Ok((a0 + Rational::from(n as i64) * c) * half_alpha.pow(exponent(n)?))
}

fn repeated_slope(spec: &TriangleSpec) -> Result<Rational> {
    let (alpha, a0, a1) = (spec.alpha(), spec.a0(), spec.a1());
    (Rational::from(2) * a1 - alpha * a0).checked_div(alpha)
}

/// `a_{n,k}` of `BT(a0, a1, alpha, beta; alpha, beta)` as
/// `a0 sum_i C(n+k-i-2, i) alpha^(n+k-2i-2) beta^(i+1) + a1 sum_i C(n+k-i-1, i) alpha^(n+k-2i-1) beta^i`.
///
/// Defined for `n >= 1`.
pub fn girard_waring_entry(
    a0: &Rational,
    a1: &Rational,
    alpha: &Rational,
    beta: &Rational,
    n: usize,
    k: usize,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain(
            "the binomial-sum form starts at row 1".into(),
        ));
    }
    let m = n + k;
    let first = binomial_power_sum(alpha, beta, m as i64 - 2) * beta;
    let second = binomial_power_sum(alpha, beta, m as i64 - 1);
    Ok(a0 * first + a1 * second)
}

/// `sum_{i=0}^{floor(N/2)} C(N-i, i) alpha^(N-2i) beta^i`, zero for `N < 0`.
fn binomial_power_sum(alpha: &Rational, beta: &Rational, big_n: i64) -> Rational {
    if big_n < 0 {
        return Rational::zero();
    }
    let big_n = big_n as usize;
    (0..=big_n / 2)
        .map(|i| {
            Rational::from(binomial(big_n - i, i))
                * alpha.pow((big_n - 2 * i) as u32)
                * beta.pow(i as u32)
        })
        .sum()
}

/// `F_m = (x1^m - x2^m) / (x1 - x2)` for the roots of `x^2 - alpha x - beta`;
/// `m x0^(m-1)` when the roots coincide.
pub fn root_quotient(alpha: &Rational, beta: &Rational, m: usize) -> Result<Rational> {
    let delta = alpha * alpha + Rational::from(4) * beta;
    let me = exponent(m)?;
    if delta.is_zero() {
        if m == 0 {
            return Ok(Rational::zero());
        }
        let x0 = alpha.checked_div(&Rational::from(2))?;
        return Ok(Rational::from(m as i64) * x0.pow(me - 1));
    }
    let half = Rational::new(1, 2)?;
    let d = QuadraticNumber::sqrt_of(&delta);
    let x1 = d.add_rational(alpha).scale(&half);
    let x2 = d.neg().add_rational(alpha).scale(&half);
    let value = x1.pow(me).sub(&x2.pow(me))?.div(&x1.sub(&x2)?)?;
    surd_free(value, "root quotient")
}

/// The intermediate Case-1 form `a0 beta F_{n+k-1} + a1 F_{n+k}` (`n >= 1`).
pub fn root_quotient_entry(
    a0: &Rational,
    a1: &Rational,
    alpha: &Rational,
    beta: &Rational,
    n: usize,
    k: usize,
) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain(
            "the root-quotient form starts at row 1".into(),
        ));
    }
    Ok(
        a0 * beta * root_quotient(alpha, beta, n + k - 1)?
            + a1 * root_quotient(alpha, beta, n + k)?,
    )
}

/// Both sides of `(X^(N+1) - Y^(N+1)) / (X - Y) = sum_i (-1)^i C(N-i, i) (X+Y)^(N-2i) (XY)^i`
/// evaluated at the two seed roots. Needs distinct roots.
pub fn girard_waring_sides(
    alpha: &Rational,
    beta: &Rational,
    big_n: usize,
) -> Result<(QuadraticNumber, QuadraticNumber)> {
    let delta = alpha * alpha + Rational::from(4) * beta;
    if delta.is_zero() {
        return Err(Error::Domain("the seed roots coincide".into()));
    }
    let half = Rational::new(1, 2)?;
    let d = QuadraticNumber::sqrt_of(&delta);
    let x = d.add_rational(alpha).scale(&half);
    let y = d.neg().add_rational(alpha).scale(&half);
    let ne = exponent(big_n + 1)?;
    let lhs = x.pow(ne).sub(&y.pow(ne))?.div(&x.sub(&y)?)?;

    let sum = x.add(&y)?;
    let prod = x.mul(&y)?;
    let mut rhs = QuadraticNumber::from_rational(Rational::zero(), &delta);
    for i in 0..=big_n / 2 {
        let c = Rational::from(binomial(big_n - i, i));
        let sign = if i % 2 == 0 { c } else { -c };
        let term = sum
            .pow(exponent(big_n - 2 * i)?)
            .mul(&prod.pow(exponent(i)?))?
            .scale(&sign);
        rhs = rhs.add(&term)?;
    }
    Ok((lhs, rhs))
}

/// The common value of the rising diagonal `a_{n-k,k}`, `0 <= k <= floor(n/2)`,
/// of `BT(a0, a1, alpha, beta; alpha, beta)`, checked against a built triangle.
pub fn rising_diagonal_constant(
    a0: &Rational,
    a1: &Rational,
    alpha: &Rational,
    beta: &Rational,
    n: usize,
) -> Result<Rational> {
    let spec = TriangleSpec::new(
        a0.clone(),
        a1.clone(),
        alpha.clone(),
        beta.clone(),
        alpha.clone(),
        beta.clone(),
    )?;
    let value = if n == 0 {
        a0.clone()
    } else {
        girard_waring_entry(a0, a1, alpha, beta, n, 0)?
    };
    let t = build_triangle(&spec, n + 1)?;
    for k in 0..=n / 2 {
        let entry = t.entry(n - k, k);
        if entry != &value {
            return Err(Error::Internal(format!(
                "rising diagonal {n} not constant: a_({},{k}) = {entry}, expected {value}",
                n - k
            )));
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn spec(p: [i64; 6]) -> TriangleSpec {
        let [a0, a1, alpha, beta, u, v] = p.map(rat);
        TriangleSpec::new(a0, a1, alpha, beta, u, v).unwrap()
    }

    fn assert_matches_construction(s: &TriangleSpec, rows: usize) {
        let t = build_triangle(s, rows).unwrap();
        for n in 0..rows {
            for k in 0..=n {
                assert_eq!(
                    &closed_form_entry(s, n, k).unwrap(),
                    t.entry(n, k),
                    "{s} at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn case_dispatch() {
        assert_eq!(
            ClosedFormData::new(&spec([1, 1, 1, 1, 1, 1])).unwrap().case,
            ClosedFormCase::Generic
        );
        assert_eq!(
            ClosedFormData::new(&spec([1, 2, 2, -1, 2, -1]))
                .unwrap()
                .case,
            ClosedFormCase::RepeatedRoot
        );
        assert_eq!(
            ClosedFormData::new(&spec([1, 2, 2, -1, 1, -1]))
                .unwrap()
                .case,
            ClosedFormCase::DoublyDegenerate
        );
    }

    #[test]
    fn examples() {
        assert_eq!(
            closed_form_entry(&spec([1, 1, 1, 1, 1, 1]), 3, 2).unwrap(),
            rat(8)
        );
        assert_eq!(
            closed_form_entry(&spec([1, 2, 2, -1, 2, -1]), 5, 3).unwrap(),
            rat(9)
        );
        assert_eq!(
            closed_form_entry(&spec([1, 2, 2, -1, 1, -1]), 4, 2).unwrap(),
            rat(0)
        );
        assert!(matches!(
            closed_form_entry(&spec([1, 1, 1, 1, 1, 1]), 2, 3),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn each_case_matches_construction() {
        assert_matches_construction(&spec([2, 1, 1, 1, -1, 1]), 12);
        assert_matches_construction(&spec([1, 1, 1, 1, 1, 1]), 12);
        // complex roots: alpha^2 + 4 beta = -3
        assert_matches_construction(&spec([3, -2, 1, -1, 2, 5]), 12);
        // perfect-square discriminant: roots 2 and -1
        assert_matches_construction(&spec([1, 4, 1, 2, -3, 2]), 12);
        assert_matches_construction(&spec([1, 1, 1, 2, 1, 1]), 10);
        assert_matches_construction(&spec([1, 2, 2, -1, 2, -1]), 12);
        assert_matches_construction(&spec([3, -5, 4, -4, 7, -2]), 12);
        assert_matches_construction(&spec([1, 2, 2, -1, 1, -1]), 12);
        assert_matches_construction(&spec([5, 1, -6, -9, 2, 6]), 12);
    }

    #[test]
    fn root_identities() {
        for s in [
            spec([1, 1, 1, 1, 1, 1]),
            spec([3, -2, 1, -1, 2, 5]),
            spec([1, 2, 2, -1, 2, -1]),
        ] {
            let data = ClosedFormData::new(&s).unwrap();
            let sum = data.x1.add(&data.x2).unwrap();
            let prod = data.x1.mul(&data.x2).unwrap();
            assert_eq!(sum.is_rational().as_ref(), Some(s.alpha()));
            assert_eq!(prod.is_rational(), Some(-s.beta()));
            assert_eq!(data.x1.sub(&data.x2).unwrap(), data.d);
        }
    }

    #[test]
    fn golden_ratio_roots() {
        let data = ClosedFormData::new(&spec([1, 1, 1, 1, 1, 1])).unwrap();
        let half = rat((1, 2));
        assert_eq!(
            data.x1,
            QuadraticNumber::new(half.clone(), half.clone(), rat(5))
        );
        assert_eq!(data.x2, QuadraticNumber::new(half.clone(), -half, rat(5)));
    }

    #[test]
    fn girard_waring_examples() {
        let one = rat(1);
        assert_eq!(
            girard_waring_entry(&one, &one, &one, &one, 2, 1).unwrap(),
            rat(3)
        );
        assert_eq!(
            girard_waring_entry(&rat(0), &one, &rat(3), &one, 1, 0).unwrap(),
            rat(1)
        );
        assert_eq!(
            girard_waring_entry(&rat(0), &one, &rat(2), &one, 2, 0).unwrap(),
            rat(2)
        );
        assert!(matches!(
            girard_waring_entry(&one, &one, &one, &one, 0, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn case_one_forms_agree() {
        let params = [
            [1, 1, 1, 1],
            [0, 1, 3, 1],
            [2, -1, 2, 1],
            [3, 2, 4, -4],
            [1, -2, -3, 5],
        ];
        for p in params {
            let [a0, a1, alpha, beta] = p.map(rat);
            let s = TriangleSpec::new(
                a0.clone(),
                a1.clone(),
                alpha.clone(),
                beta.clone(),
                alpha.clone(),
                beta.clone(),
            )
            .unwrap();
            let t = build_triangle(&s, 12).unwrap();
            for n in 1..12 {
                for k in 0..=n {
                    let gw = girard_waring_entry(&a0, &a1, &alpha, &beta, n, k).unwrap();
                    assert_eq!(&gw, t.entry(n, k), "{s} ({n},{k})");
                    assert_eq!(
                        root_quotient_entry(&a0, &a1, &alpha, &beta, n, k).unwrap(),
                        gw
                    );
                    assert_eq!(closed_form_entry(&s, n, k).unwrap(), gw);
                }
            }
        }
    }

    #[test]
    fn girard_waring_expansion() {
        for (alpha, beta) in [(1, 1), (3, 1), (2, -3), (-1, 5)] {
            for big_n in 0..=12 {
                let (lhs, rhs) = girard_waring_sides(&rat(alpha), &rat(beta), big_n).unwrap();
                assert_eq!(lhs, rhs, "alpha = {alpha}, beta = {beta}, N = {big_n}");
            }
        }
        assert!(girard_waring_sides(&rat(2), &rat(-1), 3).is_err());
    }

    #[test]
    fn fibonacci_root_quotient() {
        let fib: Vec<Rational> = (0..10)
            .map(|m| root_quotient(&rat(1), &rat(1), m).unwrap())
            .collect();
        assert_eq!(fib, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34].map(rat).to_vec());
        assert_eq!(root_quotient(&rat(2), &rat(-1), 5).unwrap(), rat(5));
    }

    #[test]
    fn rising_diagonals_constant() {
        let one = rat(1);
        assert_eq!(
            rising_diagonal_constant(&one, &one, &one, &one, 4).unwrap(),
            rat(5)
        );
        assert_eq!(
            rising_diagonal_constant(&rat(7), &rat(3), &one, &one, 0).unwrap(),
            rat(7)
        );
        assert_eq!(
            rising_diagonal_constant(&rat(7), &rat(3), &one, &one, 1).unwrap(),
            rat(3)
        );
        for n in 0..14 {
            rising_diagonal_constant(&rat(2), &rat(-3), &rat(5), &rat((1, 2)), n).unwrap();
        }
    }

    fn small_rational() -> impl proptest::strategy::Strategy<Value = Rational> {
        use proptest::prelude::*;
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat((p, q)))
    }

    proptest::proptest! {
        #[test]
        fn closed_form_agrees_with_construction(
            a0 in small_rational(), a1 in small_rational(), alpha in small_rational(),
            beta in small_rational(), u in small_rational(), v in small_rational(),
        ) {
            let Ok(s) = TriangleSpec::new(a0, a1, alpha, beta, u, v) else {
                return Ok(());
            };
            let t = build_triangle(&s, 8).unwrap();
            let cf = ClosedForm::new(&s).unwrap();
            for n in 0..8 {
                proptest::prop_assert_eq!(&cf.row(n).unwrap(), &t.rows()[n]);
            }
        }
    }
}
