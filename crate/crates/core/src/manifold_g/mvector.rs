use std::fmt;

use serde::Serialize;

use crate::homology::BettiVector;
use crate::report::{ReportInputs, Verdict, VerificationReport};
use crate::util::binomial;

/// Why a sequence is not an M-vector. Indices are positions in the sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MvectorFailure {
    Empty,
    FirstEntry {
        value: i64,
    },
    Negative {
        index: usize,
        value: i64,
    },
    ExceedsBound {
        index: usize,
        value: i64,
        previous: i64,
        bound: u128,
    },
}

impl fmt::Display for MvectorFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MvectorFailure::Empty => write!(f, "empty sequence"),
            MvectorFailure::FirstEntry { value } => write!(f, "first entry is {value}, not 1"),
            MvectorFailure::Negative { index, value } => {
                write!(f, "negative entry {value} at i={index}")
            }
            MvectorFailure::ExceedsBound {
                index,
                value,
                previous,
                bound,
            } => {
                write!(
                    f,
                    "FAIL at i={index}: {previous}^<{}> = {bound} < {value}",
                    index - 1
                )
            }
        }
    }
}

/// The `i`-th Macaulay representation `a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j)`
/// with `a_i > a_{i-1} > ... > a_j >= j >= 1`, as pairs `(a_k, k)`. Empty for `a = 0`.
pub fn macaulay_representation(a: u64, i: u64) -> Vec<(u64, u64)> {
    assert!(i >= 1, "Macaulay representations start at i = 1");
    let mut rest = a as u128;
    let mut out = Vec::new();
    let mut k = i;
    while rest > 0 && k >= 1 {
        let mut top = k;
        while binomial(top + 1, k) <= rest {
            top += 1;
        }
        rest -= binomial(top, k);
        out.push((top, k));
        k -= 1;
    }
    out
}

/// `a^<i> = C(a_i + 1, i + 1) + ... + C(a_j + 1, j + 1)`.
pub fn pseudo_power(a: u64, i: u64) -> u128 {
    macaulay_representation(a, i)
        .into_iter()
        .map(|(top, k)| binomial(top + 1, k + 1))
        .sum()
}

/// Macaulay's criterion: `seq_0 = 1` and `seq_{i+1} <= seq_i^<i>` for `i >= 1`.
pub fn check_mvector(seq: &[i64]) -> Result<(), MvectorFailure> {
    match seq.first() {
        None => return Err(MvectorFailure::Empty),
        Some(&v) if v != 1 => return Err(MvectorFailure::FirstEntry { value: v }),
        _ => {}
    }
    if let Some((index, &value)) = seq.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(MvectorFailure::Negative { index, value });
    }
    for i in 1..seq.len().saturating_sub(1) {
        let bound = pseudo_power(seq[i] as u64, i as u64);
        if seq[i + 1] as u128 > bound {
            return Err(MvectorFailure::ExceedsBound {
                index: i + 1,
                value: seq[i + 1],
                previous: seq[i],
                bound,
            });
        }
    }
    Ok(())
}

pub fn is_mvector(seq: &[i64]) -> bool {
    check_mvector(seq).is_ok()
}

fn describe(seq: &[i64]) -> String {
    match check_mvector(seq) {
        Ok(()) => "M-vector".into(),
        Err(e) => e.to_string(),
    }
}

/// The numerical consequences of the manifold g-conjecture for `h''` of a `(d-1)`-dimensional
/// complex: (a) `h''` rises to the middle, (b) its first differences up to the middle form an
/// M-vector, (c) for each `i < floor(d/2)` the variant built from `k(Δ, i)` is an M-vector.
pub fn mvector_consequences(
    h2: &[i64],
    betti: &BettiVector,
    inputs: ReportInputs,
) -> VerificationReport {
    let d = h2.len() - 1;
    let half = d / 2;
    let mut report = VerificationReport::new("mvector-consequences", inputs);
    report.check(
        "(a) h'' nondecreasing up to degree floor(d/2)",
        true,
        h2[..=half].windows(2).all(|w| w[0] <= w[1]),
    );

    let diffs: Vec<i64> = (0..=half)
        .map(|i| if i == 0 { h2[0] } else { h2[i] - h2[i - 1] })
        .collect();
    report.check("(b) first differences of h''", "M-vector", describe(&diffs));
    report.note(format!("g'' = {diffs:?}"));

    for i in 0..half {
        let mut seq = diffs[..=i].to_vec();
        let correction = binomial(d as u64, i as u64 + 1) as i64 * betti.get(i as isize) as i64;
        seq.push(h2[i + 1] - h2[i] + correction);
        report.check(
            format!("(c) truncation at i={i}: {seq:?}"),
            "M-vector",
            describe(&seq),
        );
    }
    report.finalize(Verdict::Pass)
}
