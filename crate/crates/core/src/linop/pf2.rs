//! Discrete PF(2) test for two-sided sequences.
//!
//! A positive sequence `alpha_n` passes when, for every `n1 < n2` and
//! `m1 < m2` whose differences stay in the window `[-M, M]`,
//!
//! ```text
//! D = alpha(n1 - m1) alpha(n2 - m2) - alpha(n1 - m2) alpha(n2 - m1) >= 0
//! ```
//!
//! with strict inequality whenever `n2 > m1` and `n1 < m2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pf2Violation {
    /// `alpha_n <= 0`.
    Positivity,
    /// `D < 0`.
    Weak,
    /// `D = 0` in the overlapping case.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pf2Witness {
    pub n1: i64,
    pub n2: i64,
    pub m1: i64,
    pub m2: i64,
    pub determinant: f64,
    pub violation: Pf2Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pf2Report {
    pub pass: bool,
    pub window: usize,
    pub quadruples_checked: u64,
    pub witness: Option<Pf2Witness>,
}

/// Largest window for which the four-index brute force is used.
pub const BRUTE_FORCE_MAX: usize = 24;

fn validate(seq: &[f64]) -> Result<usize> {
    if seq.len().is_multiple_of(2) || seq.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "sequence on [-M, M] needs odd length, got {}",
            seq.len()
        )));
    }
    let m = seq.len() / 2;
    for i in 0..=m {
        let (a, b) = (seq[m + i], seq[m - i]);
        if (a - b).abs() > REL_TOL * a.abs().max(b.abs()) {
            return Err(Error::InvalidParameter(format!(
                "sequence is not even at n = {i}: {b} vs {a}"
            )));
        }
    }
    Ok(m)
}

fn positivity(seq: &[f64], m: usize) -> Option<Pf2Report> {
    let bad = seq.iter().position(|&v| !(v > 0.0))?;
    let n = bad as i64 - m as i64;
    Some(Pf2Report {
        pass: false,
        window: m,
        quadruples_checked: 0,
        witness: Some(Pf2Witness {
            n1: n,
            n2: n,
            m1: 0,
            m2: 0,
            determinant: seq[bad],
            violation: Pf2Violation::Positivity,
        }),
    })
}

/// Tests one quadruple; `None` if it satisfies the condition.
fn test_quadruple(
    at: &impl Fn(i64) -> f64,
    n1: i64,
    n2: i64,
    m1: i64,
    m2: i64,
) -> Option<Pf2Witness> {
    let p = at(n1 - m1) * at(n2 - m2);
    let q = at(n1 - m2) * at(n2 - m1);
    let d = p - q;
    let tol = REL_TOL * p.abs().max(q.abs());
    let strict = n2 > m1 && n1 < m2;
    let violation = if d < -tol {
        Pf2Violation::Weak
    } else if strict && d <= tol {
        Pf2Violation::Strict
    } else {
        return None;
    };
    Some(Pf2Witness {
        n1,
        n2,
        m1,
        m2,
        determinant: d,
        violation,
    })
}

/// Every quadruple with indices in `[-M, M]` and all four differences in
/// the window.
pub fn pf2_brute_force(seq: &[f64]) -> Result<Pf2Report> {
    let m = validate(seq)?;
    if let Some(r) = positivity(seq, m) {
        return Ok(r);
    }
    let mi = m as i64;
    let at = |d: i64| seq[(d + mi) as usize];
    let inside = |d: i64| d.abs() <= mi;
    let mut checked = 0u64;
    for n1 in -mi..=mi {
        for n2 in n1 + 1..=mi {
            for m1 in -mi..=mi {
                if !inside(n1 - m1) || !inside(n2 - m1) {
                    continue;
                }
                for m2 in m1 + 1..=mi {
                    if !inside(n1 - m2) || !inside(n2 - m2) {
                        continue;
                    }
                    checked += 1;
                    if let Some(w) = test_quadruple(&at, n1, n2, m1, m2) {
                        return Ok(Pf2Report {
                            pass: false,
                            window: m,
                            quadruples_checked: checked,
                            witness: Some(w),
                        });
                    }
                }
            }
        }
    }
    Ok(Pf2Report {
        pass: true,
        window: m,
        quadruples_checked: checked,
        witness: None,
    })
}

/// Same test with `m1 = 0` fixed by translation invariance.
pub fn pf2_normal_form(seq: &[f64]) -> Result<Pf2Report> {
    let m = validate(seq)?;
    if let Some(r) = positivity(seq, m) {
        return Ok(r);
    }
    let mi = m as i64;
    let at = |d: i64| seq[(d + mi) as usize];
    let inside = |d: i64| d.abs() <= mi;
    let mut checked = 0u64;
    for n1 in -mi..=mi {
        for n2 in n1 + 1..=mi {
            for m2 in 1..=mi {
                if !inside(n1 - m2) || !inside(n2 - m2) {
                    continue;
                }
                checked += 1;
                if let Some(w) = test_quadruple(&at, n1, n2, 0, m2) {
                    return Ok(Pf2Report {
                        pass: false,
                        window: m,
                        quadruples_checked: checked,
                        witness: Some(w),
                    });
                }
            }
        }
    }
    Ok(Pf2Report {
        pass: true,
        window: m,
        quadruples_checked: checked,
        witness: None,
    })
}

/// Brute force for small windows, the three-index normal form above
/// [`BRUTE_FORCE_MAX`].
pub fn pf2_check(seq: &[f64]) -> Result<Pf2Report> {
    if seq.len() / 2 <= BRUTE_FORCE_MAX {
        pf2_brute_force(seq)
    } else {
        pf2_normal_form(seq)
    }
}

/// Samples `f(|n|)` on `[-M, M]`.
pub fn even_sequence(m: usize, f: impl Fn(u64) -> f64) -> Vec<f64> {
    let mi = m as i64;
    (-mi..=mi).map(|n| f(n.unsigned_abs())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_kernels_pass() {
        for &eta in &[0.3, 0.8, 2.0] {
            let s = even_sequence(16, |n| (-eta * n as f64).exp());
            let r = pf2_check(&s).unwrap();
            assert!(r.pass, "eta={eta}: {:?}", r.witness);
            assert!(r.quadruples_checked > 0);
        }
    }

    #[test]
    fn linear_growth_fails_with_a_witness() {
        let s = even_sequence(8, |n| 1.0 + n as f64);
        let r = pf2_check(&s).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        let at = |d: i64| 1.0 + d.abs() as f64;
        let d = at(w.n1 - w.m1) * at(w.n2 - w.m2) - at(w.n1 - w.m2) * at(w.n2 - w.m1);
        assert!((d - w.determinant).abs() < 1e-12);
        assert!(d <= 0.0);
    }

    #[test]
    fn non_positive_entries_fail_condition_one() {
        let mut s = even_sequence(4, |n| (-(n as f64)).exp());
        s[0] = 0.0;
        s[8] = 0.0;
        let r = pf2_check(&s).unwrap();
        assert_eq!(r.witness.unwrap().violation, Pf2Violation::Positivity);
    }

    #[test]
    fn odd_length_and_evenness_are_required() {
        assert!(pf2_check(&[1.0, 1.0]).is_err());
        assert!(pf2_check(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn normal_form_agrees_with_brute_force() {
        for m in 1..=16 {
            for &eta in &[0.3, 1.1] {
                let s = even_sequence(m, |n| (-eta * n as f64).exp());
                assert_eq!(
                    pf2_brute_force(&s).unwrap().pass,
                    pf2_normal_form(&s).unwrap().pass
                );
            }
            let s = even_sequence(m, |n| 1.0 + n as f64);
            assert_eq!(
                pf2_brute_force(&s).unwrap().pass,
                pf2_normal_form(&s).unwrap().pass
            );
        }
    }
}
