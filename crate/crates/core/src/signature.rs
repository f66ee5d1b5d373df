//! Knot signatures `σ(K) = σ(G) - μ`, the remainder-counting oracle, and
//! signatures of connected sums.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::contfrac::{even_cf, parse_fraction, parse_int, ContinuedFraction, EvenCfTrace};
use crate::diagram::{mu, MuValue};
use crate::error::{Error, Result};
use crate::goeritz::{congruence_diagonalize, goeritz_matrix, sigma_g};
use crate::numeric::Int;

/// Largest `p` the O(p) oracle will run on.
pub const MAX_ORACLE_P: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed-form `σ(G)` of the given expansion with `μ` from its template.
    ClosedForm,
    /// Even expansion, where `μ = 0`.
    EvenCf,
    /// Remainder counting.
    Oracle,
    /// All applicable routes, required to agree.
    Verified,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::EvenCf => "even-cf",
            Method::Oracle => "oracle",
            Method::Verified => "verified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    /// The fraction asked about, when the input was a fraction.
    pub fraction: Option<(Int, Int)>,
    /// The odd-length expansion whose diagram was used.
    pub cf: ContinuedFraction,
    pub sigma_g: Int,
    pub mu: Int,
    pub sigma: Int,
    pub determinant: Int,
    pub method: Method,
    /// Present when the even expansion was used.
    pub even_cf: Option<EvenCfTrace>,
    /// `σ(G)` came from generic congruence because the closed form hit a
    /// zero `λ`.
    pub congruence_fallback: bool,
}

/// `σ(G)` of an odd-length expansion, falling back to exact congruence
/// diagonalization of the full matrix when the closed form degenerates.
pub fn goeritz_signature(cf: &ContinuedFraction) -> Result<(Int, bool)> {
    match sigma_g(cf) {
        Ok(s) => Ok((s, false)),
        Err(Error::DegenerateLambda { .. }) => {
            let g = goeritz_matrix(cf)?;
            let d = congruence_diagonalize(&g.to_rational())?;
            Ok((d.signature(), true))
        }
        Err(e) => Err(e),
    }
}

/// Signature of the knot of an arbitrary expansion (normalized to odd
/// length first).
pub fn signature_from_cf(cf: &ContinuedFraction) -> Result<SignatureReport> {
    let cf = cf.normalize_odd_length();
    if !cf.is_knot() {
        return Err(Error::NotAKnot { det: cf.determinant() });
    }
    let (sg, fallback) = goeritz_signature(&cf)?;
    let MuValue { total, .. } = mu(&cf)?;
    let sigma = &sg - &total;
    Ok(SignatureReport {
        fraction: None,
        determinant: cf.determinant(),
        cf,
        sigma_g: sg,
        mu: total,
        sigma,
        method: Method::ClosedForm,
        even_cf: None,
        congruence_fallback: fallback,
    })
}

/// Checks `q ≠ 0`, lowest terms and odd `p`; returns `(p, q)` with `q > 0`.
pub fn validate_fraction(p: &Int, q: &Int) -> Result<(Int, Int)> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let (p, q) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
    let g = p.gcd(&q);
    if !g.is_one() {
        return Err(Error::NotCoprime { p, q, gcd: g });
    }
    if p.is_even() {
        return Err(Error::NotAKnot { det: p.abs() });
    }
    Ok((p, q))
}

/// Signature of `K(p/q)` from its even expansion. Negative `p` (after moving
/// the sign off `q`) is the mirror image, handled by the expansion itself.
///
/// When the nearest-integer expansion has length at most 5 the closed-form
/// route also runs, and any disagreement is an error.
pub fn signature_from_pq(p: &Int, q: &Int) -> Result<SignatureReport> {
    let report = even_route(p, q)?;
    let (p, q) = validate_fraction(p, q)?;
    let short = ContinuedFraction::nearest_integer_expansion(&p, &q)?.normalize_odd_length();
    if short.len() <= 5 {
        let check = signature_from_cf(&short)?;
        if check.sigma != report.sigma {
            return Err(mismatch("even-cf", &report.sigma, "closed-form", &check.sigma, &p, &q));
        }
    }
    Ok(report)
}

fn even_route(p: &Int, q: &Int) -> Result<SignatureReport> {
    let (p, q) = validate_fraction(p, q)?;
    let (cf, trace) = even_cf(&p, &q)?;
    let (sg, fallback) = goeritz_signature(&cf)?;
    Ok(SignatureReport {
        fraction: Some((p, q)),
        determinant: cf.determinant(),
        cf,
        sigma: sg.clone(),
        sigma_g: sg,
        mu: Int::zero(),
        method: Method::EvenCf,
        even_cf: Some(trace),
        congruence_fallback: fallback,
    })
}

/// Runs the even-expansion route, the closed-form route on the
/// nearest-integer expansion, and (when `|p|` is small enough) the oracle.
/// Every pair must agree.
pub fn signature_verified(p: &Int, q: &Int) -> Result<SignatureReport> {
    let mut report = even_route(p, q)?;
    let (p, q) = validate_fraction(p, q)?;
    let generic = ContinuedFraction::nearest_integer_expansion(&p, &q)?;
    let closed = signature_from_cf(&generic)?;
    if closed.sigma != report.sigma {
        return Err(mismatch("even-cf", &report.sigma, "closed-form", &closed.sigma, &p, &q));
    }
    if p.abs() <= Int::from(MAX_ORACLE_P) {
        let oracle = oracle_any(&p, &q)?;
        if oracle != report.sigma {
            return Err(mismatch("even-cf", &report.sigma, "oracle", &oracle, &p, &q));
        }
    }
    report.method = Method::Verified;
    Ok(report)
}

fn mismatch(a: &str, x: &Int, b: &str, y: &Int, p: &Int, q: &Int) -> Error {
    Error::CrossCheck(format!("signature of {p}/{q}: {a} gives {x}, {b} gives {y}"))
}

/// Remainder-counting signature of `K(p/q)` for `p > 0` odd, `0 < q < p`,
/// coprime.
///
/// Even `q` is replaced by `q + p`. The residues `k q mod 2p`, `k = 0..p-1`,
/// are taken in `(-p, p)` and the result is `#negative - #positive`.
pub fn murasugi_oracle(p: &Int, q: &Int) -> Result<Int> {
    let domain = || Error::OracleDomain { p: p.clone(), q: q.clone() };
    if !p.is_positive() || p.is_even() || !q.is_positive() || q >= p || !p.gcd(q).is_one() {
        return Err(domain());
    }
    if p > &Int::from(MAX_ORACLE_P) {
        return Err(Error::OracleTooLarge { p: p.clone() });
    }
    let pp = p.to_i64().ok_or_else(domain)?;
    let mut qq = q.to_i64().ok_or_else(domain)?;
    if qq % 2 == 0 {
        qq += pp;
    }
    let modulus = 2 * pp;
    let mut count: i64 = 0;
    let mut r: i64 = 0;
    for _ in 0..pp {
        // r = k q mod 2p, in [0, 2p)
        if r > 0 && r < pp {
            count -= 1;
        } else if r > pp {
            count += 1;
        }
        r = (r + qq) % modulus;
    }
    Ok(Int::from(count))
}

/// Oracle extended to any valid fraction: `q` is reduced modulo `p`, and
/// negative `p` is the mirror image.
pub fn oracle_any(p: &Int, q: &Int) -> Result<Int> {
    let (p, q) = validate_fraction(p, q)?;
    let abs = p.abs();
    if abs.is_one() {
        return Ok(Int::zero());
    }
    let s = murasugi_oracle(&abs, &q.mod_floor(&abs))?;
    Ok(if p.is_negative() { -s } else { s })
}

/// One summand `mult · K(p/q)`; negative multiplicity means copies of the
/// reverse mirror.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumEntry {
    pub p: Int,
    pub q: Int,
    pub multiplicity: Int,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SumSpec {
    pub entries: Vec<SumEntry>,
}

impl SumSpec {
    pub fn new(entries: Vec<SumEntry>) -> Result<Self> {
        for e in &entries {
            validate_fraction(&e.p, &e.q)?;
        }
        Ok(SumSpec { entries })
    }
}

/// Text form: one summand per line, `[±mult x] p/q`; `#` starts a comment.
impl FromStr for SumSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
            let (mult, frac) = match line.split_once(['x', 'X', '×', '*']) {
                Some((m, f)) => (parse_int(m).map_err(at)?, f),
                None => (Int::one(), line),
            };
            let (p, q) = parse_fraction(frac).map_err(at)?;
            validate_fraction(&p, &q).map_err(at)?;
            entries.push(SumEntry { p, q, multiplicity: mult });
        }
        Ok(SumSpec { entries })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceVerdict {
    /// Nonzero total signature: the sum is not slice.
    Obstructed { total: Int },
    /// Total signature zero: this test says nothing.
    Inconclusive,
}

impl fmt::Display for SliceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceVerdict::Obstructed { total } => write!(f, "obstructed: not slice (signature {total})"),
            SliceVerdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Per-summand signatures and the total `Σ mult · σ(K_i)`.
pub fn sum_signature(spec: &SumSpec) -> Result<(Vec<Int>, Int)> {
    let mut each = Vec::with_capacity(spec.entries.len());
    let mut total = Int::zero();
    for e in &spec.entries {
        let s = signature_from_pq(&e.p, &e.q)?.sigma;
        total += &e.multiplicity * &s;
        each.push(s);
    }
    Ok((each, total))
}

pub fn slice_obstruction(spec: &SumSpec) -> Result<SliceVerdict> {
    let (_, total) = sum_signature(spec)?;
    Ok(if total.is_zero() { SliceVerdict::Inconclusive } else { SliceVerdict::Obstructed { total } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use proptest::prelude::*;

    fn cf(c: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64s(c).unwrap()
    }

    fn sig(p: i64, q: i64) -> i64 {
        signature_from_pq(&int(p), &int(q)).unwrap().sigma.to_i64().unwrap()
    }

    #[test]
    fn figure_eight_family_example() {
        let r = signature_from_cf(&cf(&[2, -3, 3])).unwrap();
        assert_eq!((r.sigma_g, r.mu, r.sigma, r.determinant), (int(-4), int(-2), int(-2), int(23)));
        assert!(!r.congruence_fallback);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(signature_from_cf(&cf(&[7, -5, 5])).unwrap().sigma, int(6));
        assert_eq!(signature_from_cf(&cf(&[31, -12, -2])).unwrap().sigma, int(-30));
        assert_eq!(signature_from_cf(&cf(&[3])).unwrap().sigma, int(-2));
        assert_eq!(signature_from_cf(&cf(&[-3])).unwrap().sigma, int(2));
    }

    #[test]
    fn fraction_examples() {
        assert_eq!(sig(3023, 151), -22);
        assert_eq!(sig(1451, 131), -10);
        assert_eq!(sig(1, 1), 0);
        assert_eq!(sig(23, 10), -2);
        assert_eq!(sig(187, 26), 6);
        assert_eq!(sig(715, 23), -30);
        assert_eq!(sig(52587, 4825), -22);
        // sign moves off the denominator
        assert_eq!(sig(23, -10), 2);
        assert_eq!(sig(-23, 10), 2);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(murasugi_oracle(&int(3), &int(1)).unwrap(), int(-2));
        assert_eq!(murasugi_oracle(&int(23), &int(10)).unwrap(), int(-2));
        assert_eq!(murasugi_oracle(&int(52587), &int(4825)).unwrap(), int(-22));
        assert!(matches!(murasugi_oracle(&int(4), &int(1)), Err(Error::OracleDomain { .. })));
        assert!(matches!(murasugi_oracle(&int(9), &int(3)), Err(Error::OracleDomain { .. })));
        assert!(matches!(murasugi_oracle(&int(5), &int(7)), Err(Error::OracleDomain { .. })));
        assert!(matches!(murasugi_oracle(&int(1_000_000_001), &int(2)), Err(Error::OracleTooLarge { .. })));
    }

    #[test]
    fn links_and_bad_fractions_are_rejected() {
        assert!(matches!(signature_from_cf(&cf(&[2])), Err(Error::NotAKnot { .. })));
        assert!(matches!(signature_from_pq(&int(8), &int(3)), Err(Error::NotAKnot { .. })));
        assert!(matches!(signature_from_pq(&int(9), &int(6)), Err(Error::NotCoprime { .. })));
        assert!(matches!(signature_from_pq(&int(9), &int(0)), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn degenerate_closed_form_falls_back() {
        // λ_2 = 0 here; the expansion evaluates to 1/0, an unknot
        let r = signature_from_cf(&cf(&[2, 1, 2, 2, 1])).unwrap();
        assert!(r.congruence_fallback);
        assert_eq!(r.determinant, int(1));
        assert_eq!(r.sigma, int(0));
        // a degenerate prefix inside a nontrivial knot
        let longer = cf(&[2, 1, 2, 2, 1, 3, 5]);
        let r = signature_from_cf(&longer).unwrap();
        let v = longer.eval().unwrap();
        assert_eq!(r.sigma, oracle_any(v.numer(), v.denom()).unwrap());
    }

    #[test]
    fn isotopic_completion_is_flagged() {
        // 5/3 -> [1, -2, -2] directly; 7/3 needs a prepended entry
        let r = signature_from_pq(&int(7), &int(3)).unwrap();
        let trace = r.even_cf.unwrap();
        assert!(r.cf.is_even_cf());
        assert_eq!(r.sigma, oracle_any(&int(7), &int(3)).unwrap());
        if trace.uses_isotopic_fraction() {
            assert_ne!(trace.target, (int(7), int(3)));
        }
    }

    #[test]
    fn verified_mode() {
        let r = signature_verified(&int(23), &int(10)).unwrap();
        assert_eq!(r.method, Method::Verified);
        assert_eq!(r.sigma, int(-2));
    }

    #[test]
    fn sums() {
        let spec: SumSpec = "# example\n+1 x 35/16\n1 x 283/34\n1193/145\n".parse().unwrap();
        assert_eq!(spec.entries.len(), 3);
        let (each, total) = sum_signature(&spec).unwrap();
        assert_eq!(each, vec![int(-2), int(-10), int(-4)]);
        assert_eq!(total, int(-16));
        assert_eq!(slice_obstruction(&spec).unwrap(), SliceVerdict::Obstructed { total: int(-16) });

        let empty = SumSpec::default();
        assert_eq!(slice_obstruction(&empty).unwrap(), SliceVerdict::Inconclusive);

        let cancel: SumSpec = "1 x 23/10\n-1 x 23/10".parse().unwrap();
        assert_eq!(slice_obstruction(&cancel).unwrap(), SliceVerdict::Inconclusive);

        assert!("2 x 8/3".parse::<SumSpec>().is_err());
        assert!("two x 3/1".parse::<SumSpec>().is_err());
    }

    fn coeff() -> impl Strategy<Value = i64> {
        prop_oneof![-9i64..=-1, 1i64..=9]
    }

    proptest! {
        #[test]
        fn routes_agree(c in prop::collection::vec(coeff(), 1..8)) {
            let f = ContinuedFraction::from_i64s(&c).unwrap();
            prop_assume!(f.is_knot());
            let r = signature_from_cf(&f).unwrap();
            prop_assert!(r.sigma.is_even());
            let v = f.eval();
            prop_assume!(v.is_ok());
            let v = v.unwrap();
            let (p, q) = (v.numer().clone(), v.denom().clone());
            prop_assert_eq!(&r.sigma, &signature_from_pq(&p, &q).unwrap().sigma);
            prop_assert_eq!(&r.sigma, &oracle_any(&p, &q).unwrap());
        }

        #[test]
        fn mirror_and_reversal(c in prop::collection::vec(coeff(), 1..8)) {
            let f = ContinuedFraction::from_i64s(&c).unwrap();
            prop_assume!(f.is_knot());
            let s = signature_from_cf(&f).unwrap().sigma;
            prop_assert_eq!(signature_from_cf(&f.negated()).unwrap().sigma, -s.clone());
            prop_assert_eq!(signature_from_cf(&f.reversed()).unwrap().sigma, s);
        }
    }
}
