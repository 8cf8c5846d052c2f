//! Exact integer evaluation of the complexity sequences.
//!
//! Three independent paths produce `A_n`:
//!
//! * [`recursion_triple`]: the coupled system for `(A, B, C)` reducing the
//!   index modulo 3, seeded with the ten initial columns.
//! * [`simplified_recursion_a`]: the `A`-only system dispatching on the index
//!   modulo 3 and 9, seeded with `A_1..A_8`.
//! * [`closed_form_a`]: the closed formula in `n`, `alpha` and `beta`.
//!
//! Nothing here touches floating point. `log_3(243)` evaluates to
//! `4.999999999999999` in IEEE-754 double precision, which would give a wrong
//! `alpha` at `n = 245`.

use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact integer type for sequence values; wide and signed so the simplified
/// recursion can subtract before it adds.
pub type Count = i128;

/// `A_n`, `B_n`, `C_n` for `n = 1..=10`.
pub const INITIAL_A: [Count; 10] = [2, 14, 70, 126, 270, 438, 630, 790, 958, 1134];
pub const INITIAL_B: [Count; 10] = [4, 36, 96, 192, 348, 528, 708, 872, 1044, 1332];
pub const INITIAL_C: [Count; 10] = INITIAL_B;

/// Numbers of distinct `n x n`, `n x (n+1)` and `(n+1) x n` patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ComplexityTriple {
    pub n: u64,
    #[serde(rename = "A", serialize_with = "ser_count")]
    pub a: Count,
    #[serde(rename = "B", serialize_with = "ser_count")]
    pub b: Count,
    #[serde(rename = "C", serialize_with = "ser_count")]
    pub c: Count,
}

/// Values that fit in 64 bits are written as JSON numbers, larger ones as
/// decimal strings.
fn ser_count<S: Serializer>(value: &Count, s: S) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(*value) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&value.to_string()),
    }
}

impl ComplexityTriple {
    pub fn new(n: u64, a: Count, b: Count, c: Count) -> Self {
        ComplexityTriple { n, a, b, c }
    }
}

/// `alpha = floor(log_3(n - 2))` and `beta = floor(log_3((n - 2) / 2))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormParams {
    pub n: u64,
    pub alpha: u32,
    pub beta: u32,
}

/// The `k` with `3^k <= x < 3^(k+1)`.
pub fn ilog3(x: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::Argument("ilog3 of zero".into()));
    }
    let mut k = 0;
    let mut rest = x;
    while rest >= 3 {
        rest /= 3;
        k += 1;
    }
    Ok(k)
}

/// Smallest `k` with `base * 3^(k+1) > x`, i.e. the `k` with
/// `base * 3^k <= x < base * 3^(k+1)` given `base <= x`.
fn scaled_floor_log3(x: u128, base: u128) -> u32 {
    debug_assert!(base >= 1 && base <= x);
    let mut k = 0;
    let mut bound = base * 3;
    while bound <= x {
        bound *= 3;
        k += 1;
    }
    k
}

pub fn closed_form_params(n: u64) -> Result<ClosedFormParams> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "closed-form parameters need n >= 4, got {n}"
        )));
    }
    let m = u128::from(n - 2);
    Ok(ClosedFormParams {
        n,
        alpha: scaled_floor_log3(m, 1),
        beta: scaled_floor_log3(m, 2),
    })
}

/// `A_n` from the closed formula; `A_1..A_3` are the fixed values 2, 14, 70.
pub fn closed_form_a(n: u64) -> Result<Count> {
    match n {
        0 => Err(Error::Domain("A_n is defined for n >= 1".into())),
        1..=3 => Ok(INITIAL_A[n as usize - 1]),
        _ => {
            let p = closed_form_params(n)?;
            let overflow = || Error::Overflow(format!("closed form at n = {n}"));
            let n1 = Count::from(n - 1);
            let pow3_alpha = 3i128.checked_pow(p.alpha).ok_or_else(overflow)?;
            let pow3_beta = 3i128.checked_pow(p.beta).ok_or_else(overflow)?;
            let quad = Count::from(4 + 8 * p.alpha) - Count::from(8 * p.beta);
            let lin = 12 * pow3_alpha + 24 * pow3_beta;
            let n1_sq = n1.checked_mul(n1).ok_or_else(overflow)?;
            let tail = pow3_alpha
                .checked_mul(pow3_alpha)
                .and_then(|sq| sq.checked_mul(18))
                .ok_or_else(overflow)?;
            quad.checked_mul(n1_sq)
                .and_then(|v| v.checked_add(lin.checked_mul(n1)?))
                .and_then(|v| v.checked_sub(tail))
                .ok_or_else(overflow)
        }
    }
}

/// Memoized evaluator for the coupled `(A, B, C)` recursion system.
#[derive(Debug, Default)]
pub struct TripleRecursion {
    memo: FxHashMap<u64, ComplexityTriple>,
}

impl TripleRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn triple(&mut self, n: u64) -> Result<ComplexityTriple> {
        if n == 0 {
            return Err(Error::Domain("the recursion is defined for n >= 1".into()));
        }
        Ok(self.eval(n))
    }

    fn eval(&mut self, n: u64) -> ComplexityTriple {
        if n <= 10 {
            let i = n as usize - 1;
            return ComplexityTriple::new(n, INITIAL_A[i], INITIAL_B[i], INITIAL_C[i]);
        }
        if let Some(&t) = self.memo.get(&n) {
            return t;
        }
        // n = 3k - 2, 3k - 1 or 3k with k >= 4
        let k = n.div_ceil(3);
        let lo = self.eval(k);
        let hi = self.eval(k + 1);
        let (a, b, c, a1) = (lo.a, lo.b, lo.c, hi.a);
        let t = match n % 3 {
            1 => ComplexityTriple::new(n, 9 * a, 6 * a + 3 * b, 6 * a + 3 * c),
            2 => ComplexityTriple::new(
                n,
                4 * a + 2 * b + 2 * c + a1,
                2 * a + 4 * b + c + 2 * a1,
                2 * a + b + 4 * c + 2 * a1,
            ),
            _ => ComplexityTriple::new(
                n,
                a + 2 * b + 2 * c + 4 * a1,
                3 * b + 6 * a1,
                3 * c + 6 * a1,
            ),
        };
        self.memo.insert(n, t);
        t
    }
}

/// `(A_n, B_n, C_n)` from the coupled recursion system.
pub fn recursion_triple(n: u64) -> Result<ComplexityTriple> {
    TripleRecursion::new().triple(n)
}

/// Memoized evaluator for the `A`-only recursion system.
#[derive(Debug, Default)]
pub struct SimplifiedRecursion {
    memo: FxHashMap<u64, Count>,
}

impl SimplifiedRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn a(&mut self, n: u64) -> Result<Count> {
        if n == 0 {
            return Err(Error::Domain("the recursion is defined for n >= 1".into()));
        }
        Ok(self.eval(n))
    }

    fn eval(&mut self, n: u64) -> Count {
        if n <= 8 {
            return INITIAL_A[n as usize - 1];
        }
        if let Some(&v) = self.memo.get(&n) {
            return v;
        }
        let v = match n % 3 {
            // A_{3k-2} = 9 A_k
            1 => 9 * self.eval(n.div_ceil(3)),
            // A_{3k} = A_{3k-1} + 3 A_{k+1} - 3 A_k
            0 => {
                let k = n / 3;
                self.eval(n - 1) + 3 * self.eval(k + 1) - 3 * self.eval(k)
            }
            _ => {
                // n = 9k - 7, 9k - 4 or 9k - 1 with k >= 2
                let k = n.div_ceil(9);
                let up = self.eval(3 * k + 1);
                let mid = self.eval(3 * k);
                let down = self.eval(3 * k - 1);
                match n % 9 {
                    2 => 5 * up - 16 * mid + 20 * down,
                    5 => -up + 5 * mid + 5 * down,
                    _ => 2 * up + 8 * mid - down,
                }
            }
        };
        self.memo.insert(n, v);
        v
    }
}

/// `A_n` from the `A`-only recursion system.
pub fn simplified_recursion_a(n: u64) -> Result<Count> {
    SimplifiedRecursion::new().a(n)
}

/// Triples for `n = 1..=max_n`, from the coupled recursion.
pub fn sequence_table(max_n: u64) -> Result<Vec<ComplexityTriple>> {
    if max_n == 0 {
        return Err(Error::Argument("max_n must be at least 1".into()));
    }
    let mut rec = TripleRecursion::new();
    (1..=max_n).map(|n| rec.triple(n)).collect()
}
