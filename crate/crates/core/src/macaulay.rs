//! Macaulay expansions, the k-boundary operator and M-sequences.
//!
//! Every positive integer `v` has a unique greedy `k`-binomial expansion
//!
//! ```text
//! v = C(a_k, k) + C(a_{k-1}, k-1) + ... + C(a_s, s),   a_k > a_{k-1} > ... > a_s >= s >= 1
//! ```
//!
//! and its `k`-boundary is `C(a_k - 1, k - 1) + ... + C(a_s - 1, s - 1)`.
//! A sequence `(n_0, n_1, ...)` is an M-sequence when `n_0 = 1` and
//! `boundary(n_k, k) <= n_{k-1}` for every `k >= 1`. By Macaulay's theorem
//! these are exactly the degree counts of multicomplexes; [`oracle_is_m_sequence`]
//! checks that side by exhaustive search.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{choose, Integer};
use crate::io::integer_json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayExpansion {
    k: usize,
    /// `(a, idx)` pairs, `idx` running down from `k`.
    terms: Vec<(u64, usize)>,
}

impl MacaulayExpansion {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(u64, usize)] {
        &self.terms
    }

    /// Sum of `C(a, idx)` over the terms.
    pub fn value(&self) -> Integer {
        self.terms.iter().map(|&(a, idx)| choose(a, idx as i64)).sum()
    }

    /// Sum of `C(a - 1, idx - 1)` over the terms.
    pub fn boundary(&self) -> Integer {
        self.terms.iter().map(|&(a, idx)| choose(a - 1, idx as i64 - 1)).sum()
    }
}

/// Largest `a >= idx` with `C(a, idx) <= target`. Requires `target >= 1`.
fn largest_top(target: &Integer, idx: usize) -> u64 {
    let k = idx as i64;
    let fits = |a: u64| choose(a, k) <= *target;
    let mut lo = idx as u64;
    let mut step = 1u64;
    while fits(lo + step) {
        lo += step;
        step *= 2;
    }
    // fits(lo) holds and fits(lo + step) fails.
    let mut hi = lo + step;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy `k`-binomial expansion of `value`. Zero has the empty expansion.
pub fn macaulay_expand(value: &Integer, k: usize) -> Result<MacaulayExpansion> {
    if k == 0 {
        return Err(Error::domain("expansion index k must be >= 1"));
    }
    if value.is_negative() {
        return Err(Error::domain(format!("cannot expand negative value {value}")));
    }
    let mut rest = value.clone();
    let mut terms = Vec::new();
    for idx in (1..=k).rev() {
        if rest.is_zero() {
            break;
        }
        let a = largest_top(&rest, idx);
        rest -= choose(a, idx as i64);
        terms.push((a, idx));
    }
    debug_assert!(rest.is_zero());
    Ok(MacaulayExpansion { k, terms })
}

/// The `k`-boundary of a nonnegative value.
pub fn boundary(value: &Integer, k: usize) -> Result<Integer> {
    Ok(macaulay_expand(value, k)?.boundary())
}

/// Why a sequence fails to be an M-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The sequence does not start with 1.
    LeadingNotOne { value: Integer },
    Negative { index: usize, value: Integer },
    /// `boundary(n_k, k) > n_{k-1}`.
    Boundary { k: usize, boundary: Integer, previous: Integer },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSequenceVerdict {
    pub holds: bool,
    /// First violation, scanning indices upward.
    pub witness: Option<Violation>,
}

impl MSequenceVerdict {
    /// `{"is_m_sequence", "witness_k", "boundary_value", "previous_value"}`;
    /// the witness fields are null when the sequence passes.
    pub fn to_json(&self) -> Value {
        let (k, b, p) = match &self.witness {
            None => (Value::Null, Value::Null, Value::Null),
            Some(Violation::LeadingNotOne { value }) => (json!(0), Value::Null, integer_json(value)),
            Some(Violation::Negative { index, value }) => (json!(index), Value::Null, integer_json(value)),
            Some(Violation::Boundary { k, boundary, previous }) => {
                (json!(k), integer_json(boundary), integer_json(previous))
            }
        };
        json!({
            "is_m_sequence": self.holds,
            "witness_k": k,
            "boundary_value": b,
            "previous_value": p,
        })
    }
}

/// Tests `n_0 = 1` and `boundary(n_k, k) <= n_{k-1}` for all `k >= 1`.
pub fn is_m_sequence(seq: &[Integer]) -> Result<MSequenceVerdict> {
    let fail = |v| Ok(MSequenceVerdict { holds: false, witness: Some(v) });
    let Some(first) = seq.first() else {
        return Err(Error::domain("M-sequence test needs a nonempty sequence"));
    };
    if let Some((index, value)) = seq.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return fail(Violation::Negative { index, value: value.clone() });
    }
    if *first != Integer::from(1) {
        return fail(Violation::LeadingNotOne { value: first.clone() });
    }
    for k in 1..seq.len() {
        let b = boundary(&seq[k], k)?;
        if b > seq[k - 1] {
            return fail(Violation::Boundary { k, boundary: b, previous: seq[k - 1].clone() });
        }
    }
    Ok(MSequenceVerdict { holds: true, witness: None })
}

/// Largest total of entries the multicomplex oracle accepts.
pub const ORACLE_MAX_TOTAL: u64 = 40;
/// Search nodes the oracle may visit before giving up.
pub const ORACLE_MAX_NODES: u64 = 5_000_000;

type Monomial = Vec<u8>;

struct Search<'a> {
    counts: &'a [usize],
    nvars: usize,
    failed: Vec<HashSet<Vec<Monomial>>>,
    nodes: u64,
}

impl Search<'_> {
    /// Degree-`k` monomials all of whose degree-`k-1` divisors lie in `prev`,
    /// in graded lexicographic order.
    fn candidates(&self, prev: &[Monomial]) -> Vec<Monomial> {
        let prev_set: HashSet<&Monomial> = prev.iter().collect();
        let mut out = BTreeSet::new();
        for m in prev {
            for v in 0..self.nvars {
                let mut up = m.clone();
                up[v] += 1;
                let closed = (0..self.nvars).filter(|&u| up[u] > 0).all(|u| {
                    let mut down = up.clone();
                    down[u] -= 1;
                    prev_set.contains(&down)
                });
                if closed {
                    out.insert(up);
                }
            }
        }
        // BTreeSet orders ascending by exponent vector; reverse gives lex order
        // with x_0 largest.
        out.into_iter().rev().collect()
    }

    fn extend(&mut self, degree: usize, prev: &[Monomial]) -> Result<bool> {
        if degree == self.counts.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > ORACLE_MAX_NODES {
            return Err(Error::BudgetExceeded(format!(
                "multicomplex search visited more than {ORACLE_MAX_NODES} nodes"
            )));
        }
        let want = self.counts[degree];
        let cands = self.candidates(prev);
        if cands.len() < want {
            return Ok(false);
        }
        if degree + 1 == self.counts.len() {
            return Ok(true);
        }
        for chosen in cands.into_iter().combinations(want) {
            if self.failed[degree].contains(&chosen) {
                continue;
            }
            if self.extend(degree + 1, &chosen)? {
                return Ok(true);
            }
            self.failed[degree].insert(chosen);
        }
        Ok(false)
    }
}

/// Decides by exhaustive search whether some nonempty multicomplex on at most
/// `max_vars` variables has exactly `seq[k]` monomials of degree `k`.
///
/// Only feasible for small inputs: the entries must sum to at most
/// [`ORACLE_MAX_TOTAL`] and the search is capped at [`ORACLE_MAX_NODES`];
/// beyond either limit the oracle reports [`Error::BudgetExceeded`].
pub fn oracle_is_m_sequence(seq: &[Integer], max_vars: usize) -> Result<bool> {
    if seq.is_empty() {
        return Err(Error::domain("M-sequence test needs a nonempty sequence"));
    }
    if seq.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let total: Integer = seq.iter().sum();
    if total > Integer::from(ORACLE_MAX_TOTAL) {
        return Err(Error::BudgetExceeded(format!(
            "oracle needs entries summing to at most {ORACLE_MAX_TOTAL}, got {total}"
        )));
    }
    let counts: Vec<usize> = seq.iter().map(|v| v.to_usize().expect("bounded by budget")).collect();
    // A nonempty order ideal contains the monomial 1.
    if counts[0] != 1 {
        return Ok(false);
    }
    if counts.len() == 1 {
        return Ok(true);
    }
    // Variables missing from degree 1 cannot divide anything in the ideal, and
    // any n_1 variables are interchangeable.
    let nvars = counts[1];
    if nvars > max_vars {
        return Ok(false);
    }
    let level1: Vec<Monomial> = (0..nvars)
        .map(|v| {
            let mut m = vec![0u8; nvars];
            m[v] = 1;
            m
        })
        .collect();
    let mut search = Search {
        counts: &counts,
        nvars,
        failed: vec![HashSet::new(); counts.len()],
        nodes: 0,
    };
    search.extend(2, &level1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    /// Every strictly decreasing admissible expansion summing to `value`,
    /// found by brute force.
    fn all_expansions(value: u64, k: usize) -> Vec<Vec<(u64, usize)>> {
        fn go(rest: u64, idx: usize, max_a: u64, acc: &mut Vec<(u64, usize)>, out: &mut Vec<Vec<(u64, usize)>>) {
            if rest == 0 {
                out.push(acc.clone());
                return;
            }
            if idx == 0 {
                return;
            }
            for a in idx as u64..max_a {
                let c = choose(a, idx as i64);
                if c > Integer::from(rest) {
                    break;
                }
                acc.push((a, idx));
                go(rest - c.to_u64().unwrap(), idx - 1, a, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(value, k, value + k as u64 + 1, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn expansion_examples() {
        let e = macaulay_expand(&10.into(), 2).unwrap();
        assert_eq!(e.terms(), &[(5, 2)]);
        let e = macaulay_expand(&4.into(), 2).unwrap();
        assert_eq!(e.terms(), &[(3, 2), (1, 1)]);
        for k in 1..6 {
            assert_eq!(macaulay_expand(&1.into(), k).unwrap().terms(), &[(k as u64, k)]);
        }
        assert!(macaulay_expand(&0.into(), 3).unwrap().terms().is_empty());
        assert!(macaulay_expand(&Integer::from(-1), 3).is_err());
        assert!(macaulay_expand(&1.into(), 0).is_err());
    }

    #[test]
    fn greedy_expansion_is_the_unique_one() {
        for value in 1..=60u64 {
            for k in 1..=4 {
                let all = all_expansions(value, k);
                assert_eq!(all.len(), 1, "value {value}, k {k}: {all:?}");
                assert_eq!(macaulay_expand(&value.into(), k).unwrap().terms(), all[0].as_slice());
            }
        }
    }

    #[test]
    fn expansion_invariants() {
        for value in 1..=500u64 {
            for k in 1..=6 {
                let e = macaulay_expand(&value.into(), k).unwrap();
                assert_eq!(e.value(), Integer::from(value));
                assert_eq!(e.terms()[0].1, k);
                for w in e.terms().windows(2) {
                    assert_eq!(w[1].1 + 1, w[0].1);
                    assert!(w[1].0 < w[0].0);
                }
                assert!(e.terms().iter().all(|&(a, idx)| idx >= 1 && a >= idx as u64));
            }
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary(&10.into(), 2).unwrap(), Integer::from(4));
        assert_eq!(boundary(&4.into(), 2).unwrap(), Integer::from(3));
        assert_eq!(boundary(&2.into(), 2).unwrap(), Integer::from(2));
        for k in 1..5 {
            assert_eq!(boundary(&0.into(), k).unwrap(), Integer::from(0));
        }
    }

    #[test]
    fn boundary_is_monotone() {
        for k in 1..=6 {
            let mut last = Integer::from(0);
            for value in 0..=200u64 {
                let b = boundary(&value.into(), k).unwrap();
                assert!(b >= last, "k={k} value={value}");
                last = b;
            }
        }
    }

    #[test]
    fn m_sequence_examples() {
        assert!(is_m_sequence(&seq(&[1, 4, 10, 20])).unwrap().holds);
        let v = is_m_sequence(&seq(&[1, 2, 4])).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(Violation::Boundary { k: 2, boundary: 3.into(), previous: 2.into() })
        );
        assert!(is_m_sequence(&seq(&[1])).unwrap().holds);
        let v = is_m_sequence(&seq(&[2, 1])).unwrap();
        assert_eq!(v.witness, Some(Violation::LeadingNotOne { value: 2.into() }));
        assert!(!is_m_sequence(&seq(&[1, 0, 1])).unwrap().holds);
        assert!(!is_m_sequence(&seq(&[1, -1])).unwrap().holds);
        assert!(is_m_sequence(&[]).is_err());
    }

    #[test]
    fn zero_then_positive_rejected() {
        for len in 2..5 {
            for k in 1..len - 1 {
                let mut s = vec![Integer::from(1); len];
                s[k] = 0.into();
                s[k + 1] = 1.into();
                assert!(!is_m_sequence(&s).unwrap().holds, "{s:?}");
            }
        }
    }

    #[test]
    fn verdict_json() {
        let v = is_m_sequence(&seq(&[1, 2, 4])).unwrap();
        assert_eq!(
            v.to_json().to_string(),
            r#"{"boundary_value":3,"is_m_sequence":false,"previous_value":2,"witness_k":2}"#
        );
        let v = is_m_sequence(&seq(&[1, 3])).unwrap();
        assert_eq!(v.to_json()["witness_k"], Value::Null);
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_is_m_sequence(&seq(&[1, 4, 10, 20]), 4).unwrap());
        assert!(!oracle_is_m_sequence(&seq(&[1, 2, 4]), 2).unwrap());
        assert!(oracle_is_m_sequence(&seq(&[1, 2, 3]), 2).unwrap());
        assert!(!oracle_is_m_sequence(&seq(&[1, 0, 1]), 1).unwrap());
        assert!(oracle_is_m_sequence(&seq(&[1]), 0).unwrap());
        assert!(!oracle_is_m_sequence(&seq(&[2, 1]), 3).unwrap());
        assert!(!oracle_is_m_sequence(&seq(&[1, 3, 2]), 2).unwrap());
    }

    #[test]
    fn oracle_budget() {
        let err = oracle_is_m_sequence(&seq(&[1, 10, 20, 30]), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn oracle_agrees_on_small_sequences() {
        for a in 0..=4i64 {
            for b in 0..=5i64 {
                let s = seq(&[1, a, b]);
                assert_eq!(
                    is_m_sequence(&s).unwrap().holds,
                    oracle_is_m_sequence(&s, a as usize).unwrap(),
                    "{s:?}"
                );
            }
        }
    }
}
