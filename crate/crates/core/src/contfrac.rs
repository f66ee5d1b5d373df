//! Continued fractions `[c_1, ..., c_n] = c_1 - 1/(c_2 - 1/(... - 1/c_n))`
//! with nonzero integer coefficients.
//!
//! Positions in the documentation are 1-based, matching the usual notation;
//! slices and indices in code are 0-based, so "odd position" means an even
//! index.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ratio, Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    coeffs: Vec<Int>,
}

impl ContinuedFraction {
    pub fn new(coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        if let Some(index) = coeffs.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoefficient { index: index + 1 });
        }
        Ok(ContinuedFraction { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn has_odd_length(&self) -> bool {
        self.coeffs.len() % 2 == 1
    }

    /// `ε = sign(c)` of the coefficient at 0-based `index`.
    pub fn epsilon(&self, index: usize) -> i32 {
        if self.coeffs[index].is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn reversed(&self) -> Self {
        ContinuedFraction { coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// `[-c_1, ..., -c_n]`, whose template diagram is the mirror image.
    pub fn negated(&self) -> Self {
        ContinuedFraction { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Value `p_n/q_n`; fails only when `q_n = 0` (e.g. `[1, 1, 1] = -1/0`).
    pub fn eval(&self) -> Result<Rational> {
        self.convergents().value()
    }

    pub fn convergents(&self) -> Convergents {
        // Seeds (p_0, q_0) = (1, 0) and (p_-1, q_-1) = (0, -1) give p_1 = c_1, q_1 = 1.
        let mut pairs = Vec::with_capacity(self.coeffs.len());
        let (mut p_prev2, mut q_prev2) = (Int::zero(), -Int::one());
        let (mut p_prev, mut q_prev) = (Int::one(), Int::zero());
        for c in &self.coeffs {
            let p = c * &p_prev - &p_prev2;
            let q = c * &q_prev - &q_prev2;
            p_prev2 = std::mem::replace(&mut p_prev, p.clone());
            q_prev2 = std::mem::replace(&mut q_prev, q.clone());
            pairs.push((p, q));
        }
        Convergents { pairs }
    }

    /// The determinant of the knot or link, `|p_n|`.
    pub fn determinant(&self) -> Int {
        self.convergents().last().0.abs()
    }

    /// True iff the template diagram is a knot, i.e. `|p_n|` is odd.
    pub fn is_knot(&self) -> bool {
        self.convergents().last().0.is_odd()
    }

    /// Odd length with every even-position coefficient even.
    pub fn is_even_cf(&self) -> bool {
        self.has_odd_length() && self.coeffs.iter().skip(1).step_by(2).all(Integer::is_even)
    }

    /// Rewrites `[.., c_n]` as `[.., c_n + 1, 1]` (or `[.., c_n - 1, -1]`
    /// when `c_n = -1`), which has the same value and odd length.
    pub fn normalize_odd_length(&self) -> Self {
        if self.has_odd_length() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.pop().expect("nonempty");
        let bumped: Int = &last + 1;
        if bumped.is_zero() {
            coeffs.push(last - 1);
            coeffs.push(-Int::one());
        } else {
            coeffs.push(bumped);
            coeffs.push(Int::one());
        }
        ContinuedFraction { coeffs }
    }

    /// Nearest-integer expansion of `p/q` (no parity constraints). Every
    /// coefficient after the first has absolute value at least 2.
    pub fn nearest_integer_expansion(p: &Int, q: &Int) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if p.is_zero() {
            return Err(Error::Parse("0 has no continued fraction with nonzero coefficients".into()));
        }
        let (mut a, mut b) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
        let mut coeffs = Vec::new();
        loop {
            // round a/b to nearest, ties upward
            let two_b: Int = &b * 2;
            let shifted: Int = &a * 2 + &b;
            let mut c = shifted.div_floor(&two_b);
            if coeffs.is_empty() && c.is_zero() {
                c = if a.is_positive() { Int::one() } else { -Int::one() };
            }
            let rem = &c * &b - &a;
            coeffs.push(c);
            if rem.is_zero() {
                break;
            }
            // next value b / rem, normalized to a positive denominator
            let (na, nb) = if rem.is_negative() { (-&b, -rem) } else { (b.clone(), rem) };
            a = na;
            b = nb;
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `"3,-2,-2,-4,-4"`; surrounding brackets and spaces are allowed.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        let coeffs = body.split(',').map(|tok| parse_int(tok.trim())).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

pub fn parse_int(tok: &str) -> Result<Int> {
    let normalized = tok.trim().replace('\u{2212}', "-");
    let normalized = normalized.strip_prefix('+').unwrap_or(&normalized);
    if normalized.is_empty() {
        return Err(Error::Parse("empty integer".into()));
    }
    normalized.parse::<Int>().map_err(|_| Error::Parse(format!("malformed integer {tok:?}")))
}

/// Parses `"p/q"` without reducing it.
pub fn parse_fraction(s: &str) -> Result<(Int, Int)> {
    let (p, q) = s.trim().split_once('/').ok_or_else(|| Error::Parse(format!("expected a fraction p/q, got {s:?}")))?;
    let p = parse_int(p)?;
    let q = parse_int(q)?;
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((p, q))
}

/// Canonical representatives `(p_i, q_i)` of every prefix `[c_1, ..., c_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergents {
    pairs: Vec<(Int, Int)>,
}

impl Convergents {
    pub const SEED: (i64, i64) = (1, 0);

    /// All pairs; `pairs()[i]` is `(p_{i+1}, q_{i+1})`.
    pub fn pairs(&self) -> &[(Int, Int)] {
        &self.pairs
    }

    /// `p_position` for a 1-based position; position 0 is the seed `p_0 = 1`.
    pub fn p(&self, position: usize) -> Int {
        if position == 0 {
            Int::one()
        } else {
            self.pairs[position - 1].0.clone()
        }
    }

    pub fn q(&self, position: usize) -> Int {
        if position == 0 {
            Int::zero()
        } else {
            self.pairs[position - 1].1.clone()
        }
    }

    pub fn last(&self) -> &(Int, Int) {
        self.pairs.last().expect("nonempty")
    }

    pub fn value(&self) -> Result<Rational> {
        let (p, q) = self.last();
        if q.is_zero() {
            return Err(Error::InfiniteValue);
        }
        ratio(p.clone(), q.clone())
    }
}

/// One row of the even-expansion bookkeeping:
/// `ε_{n-2} r_{n-2} = c_n r_{n-1} - ε_{n-1} r_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub step: usize,
    pub coefficient: Int,
    /// `ε_{n-1}`; recorded as +1 on the terminating row where `r_n = 0`.
    pub sign: i32,
    pub remainder: Int,
}

impl TraceRow {
    pub fn new(step: usize, coefficient: i64, sign: i32, remainder: i64) -> Self {
        TraceRow { step, coefficient: Int::from(coefficient), sign, remainder: Int::from(remainder) }
    }
}

/// How the raw expansion was turned into an even one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// Already odd length.
    None,
    /// Even length with odd `c_n`: `[.., c_n ± 1, ±1]`, same value.
    SplitLast,
    /// Even length with even `c_n`: `[1, 1 + c_1, c_2, ..]`, value `p/(p+q)`.
    PrependOne,
    /// As above when `c_1 = -1`: `[-1, c_1 - 1, c_2, ..]`, value `p/(q-p)`.
    PrependMinusOne,
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completion::None => "none",
            Completion::SplitLast => "split-last",
            Completion::PrependOne => "prepend-one",
            Completion::PrependMinusOne => "prepend-minus-one",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenCfTrace {
    /// `ε_{-1} = sign(p)`.
    pub sign_of_p: i32,
    /// The first division (`c_1`, `ε_0`, `r_1`); for integral `p/q` this is
    /// `(1, p, +1, 0)`.
    pub first: TraceRow,
    /// The remaining divisions, steps 2..n.
    pub rows: Vec<TraceRow>,
    pub completion: Completion,
    /// The fraction the returned expansion evaluates to; differs from the
    /// input only for the two `Prepend*` completions, which name isotopic
    /// knots.
    pub target: (Int, Int),
}

impl EvenCfTrace {
    pub fn uses_isotopic_fraction(&self) -> bool {
        matches!(self.completion, Completion::PrependOne | Completion::PrependMinusOne)
    }

    /// `r_{-1}, r_0, r_1, ..., r_n`.
    pub fn remainders(&self) -> Vec<Int> {
        let mut out = vec![self.first.remainder.clone()];
        out.extend(self.rows.iter().map(|r| r.remainder.clone()));
        out
    }
}

/// Divides `a` by `b > 0` as `a = c·b ± r` with `0 <= r < b`, choosing the
/// sign so that `c` has the requested parity. Returns `(c, ε, r)` where
/// `ε = ∓1` records the choice (and is +1 when `r = 0`).
fn parity_division(a: &Int, b: &Int, want_odd: bool) -> (Int, i32, Int) {
    let (floor, rem) = a.div_mod_floor(b);
    if rem.is_zero() {
        return (floor, 1, rem);
    }
    if floor.is_odd() == want_odd {
        // a = floor·b + rem
        (floor, -1, rem)
    } else {
        // a = (floor + 1)·b - (b - rem)
        (floor + 1, 1, b - rem)
    }
}

/// Even continued fraction expansion of `p/q`: odd length, every
/// even-position coefficient even, and `c_1` odd.
pub fn even_cf(p: &Int, q: &Int) -> Result<(ContinuedFraction, EvenCfTrace)> {
    if !q.is_positive() {
        return Err(Error::NonPositiveDenominator { q: q.clone() });
    }
    let g = p.gcd(q);
    if !g.is_one() {
        return Err(Error::NotCoprime { p: p.clone(), q: q.clone(), gcd: g });
    }
    if p.is_even() {
        return Err(Error::NotAKnot { det: p.abs() });
    }

    let sign_of_p = if p.is_negative() { -1 } else { 1 };
    let mut coeffs = Vec::new();
    let mut rows = Vec::new();

    // r_{k-2}, r_{k-1} with the sign ε_{k-2} folded into `num`
    let (c1, eps0, r1) = parity_division(p, q, true);
    let first = TraceRow { step: 1, coefficient: c1.clone(), sign: eps0, remainder: r1.clone() };
    coeffs.push(c1);

    let mut num = Int::from(eps0) * q;
    let mut den = r1;
    let mut step = 2;
    while !den.is_zero() {
        let (c, eps, r) = parity_division(&num, &den, false);
        rows.push(TraceRow { step, coefficient: c.clone(), sign: eps, remainder: r.clone() });
        coeffs.push(c);
        num = Int::from(eps) * &den;
        den = r;
        step += 1;
    }

    let mut target = (p.clone(), q.clone());
    let completion = if coeffs.len() % 2 == 1 {
        Completion::None
    } else if coeffs.last().expect("nonempty").is_odd() {
        let cf = ContinuedFraction::new(coeffs)?.normalize_odd_length();
        coeffs = cf.coeffs;
        Completion::SplitLast
    } else if coeffs[0] == -Int::one() {
        coeffs[0] = Int::from(-2);
        coeffs.insert(0, -Int::one());
        target = (p.clone(), q - p);
        Completion::PrependMinusOne
    } else {
        coeffs[0] += 1;
        coeffs.insert(0, Int::one());
        target = (p.clone(), p + q);
        Completion::PrependOne
    };
    // keep the target in canonical sign form
    if target.1.is_negative() {
        target = (-target.0, -target.1);
    }

    let cf = ContinuedFraction::new(coeffs)?;
    Ok((cf, EvenCfTrace { sign_of_p, first, rows, completion, target }))
}
