//! The binomial interpolated transform `b_n = sum_i C(n,i) u^i v^(n-i) a_i`,
//! its inverse, and entry formulas that rebuild a triangle from one column or
//! from its right diagonal.

use std::ops::Index;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Finite prefix of a sequence, indexed from 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequence(Vec<Rational>);

impl Sequence {
    pub fn new(terms: Vec<Rational>) -> Self {
        Sequence(terms)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }
}

impl Index<usize> for Sequence {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for Sequence {
    fn from(terms: Vec<Rational>) -> Self {
        Sequence(terms)
    }
}

impl FromIterator<Rational> for Sequence {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Sequence(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Sequence {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Row `n` of Pascal's triangle, by repeated application of the addition rule.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        row = next_binomial_row(&row);
    }
    row
}

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

fn next_binomial_row(row: &[BigInt]) -> Vec<BigInt> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigInt::one());
    next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
    next.push(BigInt::one());
    next
}

/// `sum_{i=0}^{m} C(m,i) x^i y^(m-i) terms[offset + i]`.
fn interpolated_sum(
    binomials: &[BigInt],
    x: &Rational,
    y: &Rational,
    terms: &[Rational],
    offset: usize,
) -> Rational {
    let m = binomials.len() - 1;
    let x_pows = powers(x, m);
    let y_pows = powers(y, m);
    binomials
        .iter()
        .enumerate()
        .map(|(i, c)| Rational::from(c.clone()) * &x_pows[i] * &y_pows[m - i] * &terms[offset + i])
        .sum()
}

fn powers(x: &Rational, max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Rational::one());
    for i in 0..max {
        let next = &out[i] * x;
        out.push(next);
    }
    out
}

fn check_nonzero(u: &Rational, v: &Rational) -> Result<()> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "u and v must be nonzero (u = {u}, v = {v})"
        )));
    }
    Ok(())
}

fn binomial_transform(a: &Sequence, x: &Rational, y: &Rational, count: usize) -> Result<Sequence> {
    if a.len() < count {
        return Err(Error::Length {
            needed: count,
            got: a.len(),
        });
    }
    let mut row = vec![BigInt::one()];
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            row = next_binomial_row(&row);
        }
        out.push(interpolated_sum(&row, x, y, a.terms(), 0));
    }
    Ok(Sequence(out))
}

/// `b_n = sum_{i=0}^{n} C(n,i) u^i v^(n-i) a_i` for `n < count`.
pub fn forward_transform(
    a: &Sequence,
    u: &Rational,
    v: &Rational,
    count: usize,
) -> Result<Sequence> {
    check_nonzero(u, v)?;
    binomial_transform(a, u, v, count)
}

/// Undoes [`forward_transform`]: the same transform with parameters `1/u` and `-v/u`.
pub fn inverse_transform(
    b: &Sequence,
    u: &Rational,
    v: &Rational,
    count: usize,
) -> Result<Sequence> {
    check_nonzero(u, v)?;
    let (x, y) = inverse_parameters(u, v)?;
    binomial_transform(b, &x, &y, count)
}

fn inverse_parameters(u: &Rational, v: &Rational) -> Result<(Rational, Rational)> {
    Ok((u.recip()?, -v.checked_div(u)?))
}

/// Entry `a_{n,k}` from the column `k0`, where `column[j] = a_{k0+j, k0}`:
///
/// `a_{n,k} = sum_{i=0}^{k-k0} C(k-k0,i) u^i v^(k-k0-i) a_{n-k+k0+i, k0}`.
pub fn entry_from_column(
    column: &Sequence,
    k0: usize,
    u: &Rational,
    v: &Rational,
    n: usize,
    k: usize,
) -> Result<Rational> {
    check_nonzero(u, v)?;
    if k < k0 || k > n {
        return Err(Error::Index(format!(
            "need k0 <= k <= n, got k0 = {k0}, k = {k}, n = {n}"
        )));
    }
    // column index of row m is m - k0; rows n-k+k0 ..= n are used
    let first = n - k;
    let needed = n - k0 + 1;
    if column.len() < needed {
        return Err(Error::Length {
            needed,
            got: column.len(),
        });
    }
    Ok(interpolated_sum(
        &binomial_row(k - k0),
        u,
        v,
        column.terms(),
        first,
    ))
}

/// Entry `a_{n,k}` from the right diagonal `diag[m] = a_{m,m}`:
///
/// `a_{n,k} = sum_{i=0}^{n-k} C(n-k,i) (1/u)^i (-v/u)^(n-k-i) a_{k+i,k+i}`.
pub fn entry_from_right_diagonal(
    diag: &Sequence,
    u: &Rational,
    v: &Rational,
    n: usize,
    k: usize,
) -> Result<Rational> {
    check_nonzero(u, v)?;
    if k > n {
        return Err(Error::Index(format!("need k <= n, got k = {k}, n = {n}")));
    }
    if diag.len() <= n {
        return Err(Error::Length {
            needed: n + 1,
            got: diag.len(),
        });
    }
    let (x, y) = inverse_parameters(u, v)?;
    Ok(interpolated_sum(
        &binomial_row(n - k),
        &x,
        &y,
        diag.terms(),
        k,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use proptest::prelude::*;

    fn seq(xs: &[i64]) -> Sequence {
        xs.iter().map(|&x| rat(x)).collect()
    }

    /// Direct summation with factorial binomials, independent of the Pascal rows above.
    fn oracle_transform(a: &[Rational], u: &Rational, v: &Rational) -> Vec<Rational> {
        let fact = |m: usize| (1..=m as i64).map(rat).product::<Rational>();
        (0..a.len())
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let c = fact(n).checked_div(&(fact(i) * fact(n - i))).unwrap();
                        c * u.pow(i as u32) * v.pow((n - i) as u32) * &a[i]
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn pascal_rows() {
        let r: Vec<i64> = binomial_row(5)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(r, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial_row(0), vec![BigInt::one()]);
        for n in 0..30 {
            let row = binomial_row(n);
            for k in 0..=n + 1 {
                let expected = row.get(k).cloned().unwrap_or_default();
                assert_eq!(binomial(n, k), expected, "C({n}, {k})");
            }
        }
    }

    #[test]
    fn forward_examples() {
        let lucas = seq(&[2, 1, 3, 4, 7]);
        assert_eq!(
            forward_transform(&lucas, &rat(-1), &rat(1), 5).unwrap(),
            lucas
        );
        assert_eq!(
            forward_transform(&seq(&[1, 1, 1, 1, 1]), &rat(1), &rat(1), 5).unwrap(),
            seq(&[1, 2, 4, 8, 16])
        );
        let fib = seq(&[1, 1, 2, 3, 5]);
        let expected = oracle_transform(fib.terms(), &rat(1), &rat(1));
        assert_eq!(expected, seq(&[1, 2, 5, 13, 34]).into_terms());
        assert_eq!(
            forward_transform(&fib, &rat(1), &rat(1), 5)
                .unwrap()
                .into_terms(),
            expected
        );
    }

    #[test]
    fn inverse_examples() {
        let a = seq(&[3, -1, 4, 1, 5]);
        let (u, v) = (rat((2, 3)), rat(-5));
        let b = Sequence::new(oracle_transform(a.terms(), &u, &v));
        assert_eq!(forward_transform(&a, &u, &v, 5).unwrap(), b);
        assert_eq!(inverse_transform(&b, &u, &v, 5).unwrap(), a);
        assert_eq!(
            inverse_transform(&seq(&[1, 2, 4, 8, 16]), &rat(1), &rat(1), 5).unwrap(),
            seq(&[1, 1, 1, 1, 1])
        );
        let lucas = seq(&[2, 1, 3, 4, 7]);
        assert_eq!(
            inverse_transform(&lucas, &rat(-1), &rat(1), 5).unwrap(),
            lucas
        );
    }

    #[test]
    fn transform_errors() {
        let a = seq(&[1, 2, 3]);
        assert!(matches!(
            forward_transform(&a, &rat(0), &rat(1), 3),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            inverse_transform(&a, &rat(1), &rat(0), 3),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(
            forward_transform(&a, &rat(1), &rat(1), 4),
            Err(Error::Length { needed: 4, got: 3 })
        );
    }

    #[test]
    fn column_entries() {
        // left leg of BT(2,1,1,1;-1,1)
        let lucas = seq(&[2, 1, 3, 4, 7]);
        assert_eq!(
            entry_from_column(&lucas, 0, &rat(-1), &rat(1), 4, 2).unwrap(),
            rat(2)
        );
        assert_eq!(
            entry_from_column(&lucas, 0, &rat(-1), &rat(1), 3, 0).unwrap(),
            rat(4)
        );
        // column k0 = 1 of the same triangle, starting at a_{1,1}
        let col1 = seq(&[1, -2, -1, -3]);
        assert_eq!(
            entry_from_column(&col1, 1, &rat(-1), &rat(1), 3, 2).unwrap(),
            rat(-1)
        );
        assert_eq!(
            entry_from_column(&col1, 1, &rat(-1), &rat(1), 2, 1).unwrap(),
            rat(-2)
        );
        assert!(matches!(
            entry_from_column(&col1, 1, &rat(-1), &rat(1), 3, 0),
            Err(Error::Index(_))
        ));
        assert!(matches!(
            entry_from_column(&col1, 1, &rat(-1), &rat(1), 5, 2),
            Err(Error::Length { .. })
        ));
    }

    #[test]
    fn right_diagonal_entries() {
        let lucas = seq(&[2, 1, 3, 4, 7]);
        assert_eq!(
            entry_from_right_diagonal(&lucas, &rat(-1), &rat(1), 2, 0).unwrap(),
            rat(3)
        );
        assert_eq!(
            entry_from_right_diagonal(&lucas, &rat(-1), &rat(1), 4, 4).unwrap(),
            rat(7)
        );
        let diag = seq(&[1, 2, 5, 13]);
        assert_eq!(
            entry_from_right_diagonal(&diag, &rat(1), &rat(1), 3, 2).unwrap(),
            rat(8)
        );
        assert!(matches!(
            entry_from_right_diagonal(&diag, &rat(1), &rat(1), 4, 2),
            Err(Error::Length { .. })
        ));
    }

    fn small_nonzero() -> impl Strategy<Value = Rational> {
        (1i64..=10, 1i64..=10, any::<bool>())
            .prop_map(|(p, q, neg)| rat((if neg { -p } else { p }, q)))
    }

    proptest! {
        #[test]
        fn round_trip(terms in prop::collection::vec((-10i64..=10, 1i64..=10), 1..12),
                      u in small_nonzero(), v in small_nonzero()) {
            let a: Sequence = terms.into_iter().map(rat).collect();
            let n = a.len();
            let b = forward_transform(&a, &u, &v, n).unwrap();
            let expected = oracle_transform(a.terms(), &u, &v);
            prop_assert_eq!(b.terms(), expected.as_slice());
            prop_assert_eq!(inverse_transform(&b, &u, &v, n).unwrap(), a.clone());
            // k0 = 0, k = n reproduces the transform
            let last = entry_from_column(&a, 0, &u, &v, n - 1, n - 1).unwrap();
            prop_assert_eq!(&last, &b[n - 1]);
        }
    }
}
