//! Goeritz matrix of the template diagram `D[c_1, ..., c_n]` (odd `n`) and
//! its diagonalizations.
//!
//! Bounded white regions are labelled `e^i_k` (odd position `i`,
//! `k = 1..|c_i|-1`, the regions between consecutive crossings of the `i`th
//! twist box) and `e^j` (even position `j`, the region beside the `j`th box).
//! The basis order is all `e^1_*`, `e^3_*`, ..., `e^n_*`, then `e^2`, `e^4`,
//! ..., `e^{n-1}`; with this order the transition matrix to the orthogonal
//! basis is upper triangular.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::numeric::{
    checked_recip, integer_determinant, rational_determinant, rational_sign, to_rational, Int, Matrix, Rational,
};

/// Largest basis the dense matrix routines will materialize.
pub const MAX_MATRIX_SIZE: usize = 1500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `e^position_k`, `position` odd and 1-based.
    Odd { position: usize, k: usize },
    /// `e^position`, `position` even.
    Even { position: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Odd { position, k } => write!(f, "e{position}_{k}"),
            BasisLabel::Even { position } => write!(f, "e{position}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteRegionBasis {
    labels: Vec<BasisLabel>,
    /// start of each odd block, indexed by (position - 1) / 2
    odd_starts: Vec<usize>,
    /// index of `e^j`, indexed by j / 2 - 1
    even_index: Vec<usize>,
}

impl WhiteRegionBasis {
    pub fn new(cf: &ContinuedFraction) -> Result<Self> {
        Self::with_limit(cf, MAX_MATRIX_SIZE)
    }

    pub(crate) fn with_limit(cf: &ContinuedFraction, limit: usize) -> Result<Self> {
        require_odd(cf)?;
        let size = basis_size(cf);
        if size > Int::from(limit) {
            return Err(Error::MatrixTooLarge { size, limit });
        }
        let mut labels = Vec::new();
        let mut odd_starts = Vec::new();
        for (idx, c) in cf.coefficients().iter().enumerate().step_by(2) {
            odd_starts.push(labels.len());
            let m = block_len(c);
            labels.extend((1..=m).map(|k| BasisLabel::Odd { position: idx + 1, k }));
        }
        let mut even_index = Vec::new();
        for idx in (1..cf.len()).step_by(2) {
            even_index.push(labels.len());
            labels.push(BasisLabel::Even { position: idx + 1 });
        }
        Ok(WhiteRegionBasis { labels, odd_starts, even_index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        match label {
            BasisLabel::Odd { position, k } => {
                let start = *self.odd_starts.get((position.checked_sub(1)?) / 2)?;
                let idx = start + k.checked_sub(1)?;
                (self.labels.get(idx) == Some(&label)).then_some(idx)
            }
            BasisLabel::Even { position } => {
                let idx = *self.even_index.get((position / 2).checked_sub(1)?)?;
                (self.labels[idx] == label).then_some(idx)
            }
        }
    }

    /// Basis index of `e^i_k` for odd position `i`, 1-based `k`.
    pub(crate) fn odd(&self, position: usize, k: usize) -> usize {
        self.odd_starts[(position - 1) / 2] + k - 1
    }

    pub(crate) fn even(&self, position: usize) -> usize {
        self.even_index[position / 2 - 1]
    }
}

/// `N = |c_1| + |c_3| + ... + |c_n| - 1`.
pub fn basis_size(cf: &ContinuedFraction) -> Int {
    let total: Int = cf.coefficients().iter().step_by(2).map(Signed::abs).sum();
    total - 1
}

pub(crate) fn block_len(c: &Int) -> usize {
    let m: Int = c.abs() - 1;
    usize::try_from(m).expect("block size checked against a size limit")
}

fn require_odd(cf: &ContinuedFraction) -> Result<()> {
    if cf.has_odd_length() {
        Ok(())
    } else {
        Err(Error::EvenLength { len: cf.len() })
    }
}

fn eps(cf: &ContinuedFraction, position: usize) -> Int {
    Int::from(cf.epsilon(position - 1))
}

fn coeff(cf: &ContinuedFraction, position: usize) -> &Int {
    &cf.coefficients()[position - 1]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzMatrix {
    pub basis: WhiteRegionBasis,
    pub matrix: Matrix<Int>,
}

impl GoeritzMatrix {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn determinant(&self) -> Int {
        integer_determinant(&self.matrix).expect("square")
    }

    pub fn to_rational(&self) -> Matrix<Rational> {
        self.matrix.map(to_rational)
    }
}

/// Goeritz matrix of `D[c_1, ..., c_n]` in the white-region basis.
///
/// Each odd box `i` contributes a chain of `|c_i|` crossings running from the
/// region before it (`e^{i-1}`, or the unbounded region when `i = 1`)
/// through `e^i_1, ..., e^i_{|c_i|-1}` to the region after it. Every link of
/// the chain has entry `ε_i`. When `|c_i| = 1` the chain is a single crossing
/// joining `e^{i-1}` and `e^{i+1}` directly, so those two even regions get an
/// off-diagonal `ε_i`.
pub fn goeritz_matrix(cf: &ContinuedFraction) -> Result<GoeritzMatrix> {
    let basis = WhiteRegionBasis::new(cf)?;
    let n = cf.len();
    let mut g = Matrix::<Int>::zeros(basis.len(), basis.len());

    for position in (1..=n).step_by(2) {
        let e = eps(cf, position);
        let m = block_len(coeff(cf, position));
        let mut chain: Vec<Option<usize>> = Vec::with_capacity(m + 2);
        chain.push((position > 1).then(|| basis.even(position - 1)));
        for k in 1..=m {
            let idx = basis.odd(position, k);
            g.set(idx, idx, Int::from(-2) * &e);
            chain.push(Some(idx));
        }
        chain.push((position < n).then(|| basis.even(position + 1)));
        for link in chain.windows(2) {
            if let [Some(a), Some(b)] = *link {
                g.set(a, b, e.clone());
                g.set(b, a, e.clone());
            }
        }
    }
    for position in (2..n).step_by(2) {
        let idx = basis.even(position);
        g.set(idx, idx, coeff(cf, position) - eps(cf, position - 1) - eps(cf, position + 1));
    }
    Ok(GoeritzMatrix { basis, matrix: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    pub entries: Vec<Rational>,
}

impl DiagonalForm {
    pub fn inertia(&self) -> Inertia {
        let mut inertia = Inertia::default();
        for e in &self.entries {
            match rational_sign(e) {
                1 => inertia.positive += 1,
                -1 => inertia.negative += 1,
                _ => inertia.zero += 1,
            }
        }
        inertia
    }

    pub fn signature(&self) -> Int {
        Int::from(self.inertia().signature())
    }

    pub fn product(&self) -> Rational {
        self.entries.iter().fold(Rational::one(), |acc, e| acc * e)
    }
}

/// `λ_2, λ_4, ..., λ_{n-1}` from the recursion
/// `λ_2 = c_2 - 1/c_1 - 1/c_3`,
/// `λ_2j = (c_2j - 1/c_{2j-1} - 1/c_{2j+1}) - 1/(c_{2j-1}² λ_{2j-2})`.
pub fn lambdas_recursive(cf: &ContinuedFraction) -> Result<Vec<Rational>> {
    require_odd(cf)?;
    let n = cf.len();
    let mut out: Vec<Rational> = Vec::with_capacity(n / 2);
    for j in (2..n).step_by(2) {
        let before = to_rational(coeff(cf, j - 1));
        let after = to_rational(coeff(cf, j + 1));
        let mut lambda = to_rational(coeff(cf, j)) - before.recip() - after.recip();
        if let Some(prev) = out.last() {
            if prev.is_zero() {
                return Err(Error::DegenerateLambda { index: j - 2 });
            }
            lambda -= (&before * &before * prev).recip();
        }
        out.push(lambda);
    }
    Ok(out)
}

/// The same sequence from convergent numerators,
/// `λ_2j = p_{2j+1} / (c_{2j+1} p_{2j-1})`.
pub fn lambdas_from_convergents(cf: &ContinuedFraction) -> Result<Vec<Rational>> {
    require_odd(cf)?;
    let conv = cf.convergents();
    let n = cf.len();
    (2..n)
        .step_by(2)
        .map(|j| {
            let den = coeff(cf, j + 1) * conv.p(j - 1);
            if den.is_zero() {
                return Err(Error::DegenerateLambda { index: j - 2 });
            }
            Ok(Rational::new(conv.p(j + 1), den))
        })
        .collect()
}

fn checked_lambdas(cf: &ContinuedFraction) -> Result<Vec<Rational>> {
    let lambdas = lambdas_recursive(cf)?;
    if let Some(i) = lambdas.iter().position(Zero::is_zero) {
        return Err(Error::DegenerateLambda { index: 2 * i + 2 });
    }
    Ok(lambdas)
}

/// Diagonal `⊕ -ε_i (k+1)/k ⊕ λ_2 ⊕ ... ⊕ λ_{n-1}`, in basis order. The
/// `λ`s are computed by the recursion and by convergent ratios, and the two
/// must agree.
pub fn closed_form_diagonal(cf: &ContinuedFraction) -> Result<DiagonalForm> {
    require_odd(cf)?;
    let size = basis_size(cf);
    if size > Int::from(MAX_MATRIX_SIZE) {
        return Err(Error::MatrixTooLarge { size, limit: MAX_MATRIX_SIZE });
    }
    let lambdas = checked_lambdas(cf)?;
    let ratios = lambdas_from_convergents(cf)?;
    if lambdas != ratios {
        return Err(Error::CrossCheck(format!(
            "lambda recursion {lambdas:?} disagrees with convergent ratios {ratios:?}"
        )));
    }
    let mut entries = Vec::new();
    for (idx, c) in cf.coefficients().iter().enumerate().step_by(2) {
        let e = -Int::from(cf.epsilon(idx));
        for k in 1..=block_len(c) {
            entries.push(Rational::new(&e * (k + 1), Int::from(k)));
        }
    }
    entries.extend(lambdas);
    Ok(DiagonalForm { entries })
}

/// `σ(G) = Σ_{i odd} (ε_i - c_i) + Σ_{j even} sign(λ_j)`, without
/// materializing the matrix.
pub fn sigma_g(cf: &ContinuedFraction) -> Result<Int> {
    require_odd(cf)?;
    let odd: Int = cf.coefficients().iter().enumerate().step_by(2).map(|(idx, c)| Int::from(cf.epsilon(idx)) - c).sum();
    let lambdas = checked_lambdas(cf)?;
    let even: i64 = lambdas.iter().map(|l| i64::from(rational_sign(l))).sum();
    Ok(odd + even)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub basis: WhiteRegionBasis,
    /// Column `t` holds the `t`th orthogonal basis vector in `e`-coordinates.
    pub matrix: Matrix<Rational>,
}

impl TransitionMatrix {
    pub fn determinant(&self) -> Rational {
        rational_determinant(&self.matrix).expect("square")
    }
}

/// Change of basis to the orthogonal vectors
///
/// * `f^i_k = (ε_i/k)(e^i_1 + 2 e^i_2 + ... + k e^i_k)`,
/// * `f̂^j = e^j + ((|c_{j-1}|-1)/c_{j-1}) f^{j-1}_{last} + Σ_k ε_{j+1}/(k+1) f^{j+1}_k`,
/// * `f^2 = f̂^2`, `f^j = f̂^j - f^{j-2} / (c_{j-1} λ_{j-2})`,
///
/// so that `Pᵀ G P` is the closed-form diagonal. Empty blocks (`|c_i| = 1`)
/// contribute nothing to `f̂^j`.
pub fn transition_matrix(cf: &ContinuedFraction) -> Result<TransitionMatrix> {
    let basis = WhiteRegionBasis::new(cf)?;
    let lambdas = checked_lambdas(cf)?;
    let n = cf.len();
    let size = basis.len();
    let mut p = Matrix::<Rational>::zeros(size, size);

    let f_odd = |position: usize, k: usize| -> Vec<(usize, Rational)> {
        let e = eps(cf, position);
        (1..=k).map(|r| (basis.odd(position, r), Rational::new(&e * r, Int::from(k)))).collect()
    };

    for position in (1..=n).step_by(2) {
        for k in 1..=block_len(coeff(cf, position)) {
            let col = basis.odd(position, k);
            for (row, v) in f_odd(position, k) {
                p.set(row, col, v);
            }
        }
    }

    let mut previous: Option<Vec<Rational>> = None;
    for j in (2..n).step_by(2) {
        let mut column = vec![Rational::zero(); size];
        column[basis.even(j)] = Rational::one();

        let before = coeff(cf, j - 1);
        let m_before = block_len(before);
        if m_before > 0 {
            let scale = Rational::new(Int::from(m_before), before.clone());
            for (row, v) in f_odd(j - 1, m_before) {
                column[row] += &scale * v;
            }
        }
        let e_after = eps(cf, j + 1);
        for k in 1..=block_len(coeff(cf, j + 1)) {
            let scale = Rational::new(e_after.clone(), Int::from(k + 1));
            for (row, v) in f_odd(j + 1, k) {
                column[row] += &scale * v;
            }
        }

        if let Some(prev) = &previous {
            let lambda = &lambdas[j / 2 - 2];
            let scale = checked_recip(&(to_rational(before) * lambda))?;
            for (c, pv) in column.iter_mut().zip(prev) {
                if !pv.is_zero() {
                    *c -= &scale * pv;
                }
            }
        }

        let col = basis.even(j);
        for (row, v) in column.iter().enumerate() {
            if !v.is_zero() {
                p.set(row, col, v.clone());
            }
        }
        previous = Some(column);
    }

    Ok(TransitionMatrix { basis, matrix: p })
}

/// Diagonalizes a symmetric rational matrix by congruence (symmetric
/// Gaussian elimination). Returns the diagonal and `Q` with `Qᵀ M Q`
/// diagonal.
pub fn congruence_diagonalize_with_transform(m: &Matrix<Rational>) -> Result<(DiagonalForm, Matrix<Rational>)> {
    if !m.is_symmetric() {
        return Err(Error::Dimension("congruence diagonalization needs a symmetric matrix".into()));
    }
    let n = m.nrows();
    let mut a = m.to_rows();
    let mut q = identity(n);
    let mut entries = Vec::with_capacity(n);

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
                for row in q.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // all remaining diagonal entries vanish: column k += column j
                // makes the pivot 2 a[k][j]
                for col in 0..n {
                    let v = a[j][col].clone();
                    a[k][col] += v;
                }
                for row in 0..n {
                    let v = a[row][j].clone();
                    a[row][k] += v;
                }
                for row in q.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            }
        }

        let pivot = a[k][k].clone();
        if !pivot.is_zero() {
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k + 1..n {
                    if a[k][j].is_zero() {
                        continue;
                    }
                    let v = &factor * &a[k][j];
                    a[i][j] -= v;
                }
                for row in q.iter_mut() {
                    if row[k].is_zero() {
                        continue;
                    }
                    let v = &factor * &row[k];
                    row[i] -= v;
                }
            }
            for i in k + 1..n {
                a[i][k] = Rational::zero();
                a[k][i] = Rational::zero();
            }
        }
        entries.push(pivot);
    }

    Ok((DiagonalForm { entries }, Matrix::from_rows(q)?))
}

pub fn congruence_diagonalize(m: &Matrix<Rational>) -> Result<DiagonalForm> {
    congruence_diagonalize_with_transform(m).map(|(d, _)| d)
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rational};
    use proptest::prelude::*;

    fn cf(c: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64s(c).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d).unwrap()
    }

    fn imat(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn qmat(rows: &[&[Rational]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn goeritz_examples() {
        assert_eq!(goeritz_matrix(&cf(&[3])).unwrap().matrix, imat(&[&[-2, 1], &[1, -2]]));

        let g = goeritz_matrix(&cf(&[2, -3, 3])).unwrap();
        let labels: Vec<String> = g.basis.labels().iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["e1_1", "e3_1", "e3_2", "e2"]);
        assert_eq!(g.matrix, imat(&[&[-2, 0, 0, 1], &[0, -2, 1, 1], &[0, 1, -2, 0], &[1, 1, 0, -5]]));
        assert_eq!(g.determinant(), int(23));
        assert_eq!(congruence_diagonalize(&g.to_rational()).unwrap().signature(), int(-4));

        let unknot = goeritz_matrix(&cf(&[1])).unwrap();
        assert_eq!(unknot.size(), 0);
        assert!(matches!(goeritz_matrix(&cf(&[2, 3])), Err(Error::EvenLength { len: 2 })));
    }

    #[test]
    fn single_crossing_box_joins_even_regions() {
        // c_3 = 1: e^2 and e^4 touch at one crossing
        let g = goeritz_matrix(&cf(&[3, 2, 1, 2, 3])).unwrap();
        let e2 = g.basis.index_of(BasisLabel::Even { position: 2 }).unwrap();
        let e4 = g.basis.index_of(BasisLabel::Even { position: 4 }).unwrap();
        assert_eq!(g.matrix.get(e2, e4), &int(1));
        assert_eq!(g.determinant().abs(), cf(&[3, 2, 1, 2, 3]).determinant());
    }

    #[test]
    fn basis_lookup() {
        let b = WhiteRegionBasis::new(&cf(&[3, -3, -5])).unwrap();
        assert_eq!(b.len(), 3 + 5 - 1);
        assert_eq!(b.index_of(BasisLabel::Odd { position: 3, k: 4 }), Some(5));
        assert_eq!(b.index_of(BasisLabel::Odd { position: 3, k: 5 }), None);
        assert_eq!(b.index_of(BasisLabel::Even { position: 2 }), Some(6));
        assert_eq!(b.index_of(BasisLabel::Even { position: 4 }), None);
        assert_eq!(basis_size(&cf(&[3, -3, -5])), int(7));
    }

    #[test]
    fn closed_form_examples() {
        let d = closed_form_diagonal(&cf(&[3])).unwrap();
        assert_eq!(d.entries, vec![q(-2, 1), q(-3, 2)]);
        assert_eq!(d.inertia(), Inertia { positive: 0, negative: 2, zero: 0 });
        assert_eq!(sigma_g(&cf(&[3])).unwrap(), int(-2));

        let d = closed_form_diagonal(&cf(&[2, -3, 3])).unwrap();
        assert_eq!(d.entries, vec![q(-2, 1), q(-2, 1), q(-3, 2), q(-23, 6)]);
        assert_eq!(d.signature(), int(-4));
        assert_eq!(sigma_g(&cf(&[2, -3, 3])).unwrap(), int(-4));

        let c = cf(&[3, -3, -5]);
        assert_eq!(lambdas_recursive(&c).unwrap(), vec![q(-47, 15)]);
        assert_eq!(lambdas_from_convergents(&c).unwrap(), vec![q(47, -15)]);

        // (1 - 20) + (1 - 3) + sign(-50 - 1/20 - 1/3)
        assert_eq!(sigma_g(&cf(&[20, -50, 3])).unwrap(), int(-22));
    }

    #[test]
    fn degenerate_lambda_is_reported() {
        // [2, 1, 2] = 0, so λ_2 = 0
        let c = cf(&[2, 1, 2, 2, 1]);
        assert!(c.is_knot());
        assert_eq!(closed_form_diagonal(&c), Err(Error::DegenerateLambda { index: 2 }));
        assert!(matches!(sigma_g(&c), Err(Error::DegenerateLambda { .. })));
        // the generic route still works
        let g = goeritz_matrix(&c).unwrap();
        let d = congruence_diagonalize(&g.to_rational()).unwrap();
        assert_eq!(d.inertia().zero, 0);
    }

    #[test]
    fn transition_examples() {
        let t = transition_matrix(&cf(&[3])).unwrap();
        assert_eq!(t.matrix, qmat(&[&[q(1, 1), q(1, 2)], &[q(0, 1), q(1, 1)]]));
        let g = goeritz_matrix(&cf(&[3])).unwrap().to_rational();
        assert_eq!(t.matrix.congruence(&g).unwrap(), Matrix::diagonal(&[q(-2, 1), q(-3, 2)]));

        assert_eq!(transition_matrix(&cf(&[1])).unwrap().matrix.nrows(), 0);

        let c = cf(&[2, -3, 3]);
        let t = transition_matrix(&c).unwrap();
        let z = q(0, 1);
        let one = q(1, 1);
        // columns f^1_1, f^3_1, f^3_2, f^2 over rows e1_1, e3_1, e3_2, e2
        assert_eq!(
            t.matrix,
            qmat(&[
                &[one.clone(), z.clone(), z.clone(), q(1, 2)],
                &[z.clone(), one.clone(), q(1, 2), q(2, 3)],
                &[z.clone(), z.clone(), one.clone(), q(1, 3)],
                &[z.clone(), z.clone(), z, one],
            ])
        );
        let g = goeritz_matrix(&c).unwrap().to_rational();
        let expect = Matrix::diagonal(&closed_form_diagonal(&c).unwrap().entries);
        assert_eq!(t.matrix.congruence(&g).unwrap(), expect);
        assert_eq!(t.determinant(), q(1, 1));
    }

    #[test]
    fn congruence_examples() {
        let m = qmat(&[&[q(-2, 1), q(1, 1)], &[q(1, 1), q(-2, 1)]]);
        assert_eq!(congruence_diagonalize(&m).unwrap().inertia(), Inertia { positive: 0, negative: 2, zero: 0 });

        let id = Matrix::diagonal(&[q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(congruence_diagonalize(&id).unwrap().inertia(), Inertia { positive: 3, negative: 0, zero: 0 });

        let h = qmat(&[&[q(0, 1), q(1, 1)], &[q(1, 1), q(0, 1)]]);
        let (d, t) = congruence_diagonalize_with_transform(&h).unwrap();
        assert_eq!(d.inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
        assert_eq!(t.congruence(&h).unwrap(), Matrix::diagonal(&d.entries));

        let singular = qmat(&[&[q(1, 1), q(1, 1)], &[q(1, 1), q(1, 1)]]);
        assert_eq!(congruence_diagonalize(&singular).unwrap().inertia(), Inertia { positive: 1, negative: 0, zero: 1 });

        let asym = qmat(&[&[q(1, 1), q(2, 1)], &[q(0, 1), q(1, 1)]]);
        assert!(congruence_diagonalize(&asym).is_err());
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        prop_oneof![-6i64..=-1, 1i64..=6]
    }

    fn odd_cf() -> impl Strategy<Value = ContinuedFraction> {
        prop_oneof![Just(1usize), Just(3), Just(5), Just(7)]
            .prop_flat_map(|n| prop::collection::vec(nonzero(), n))
            .prop_map(|c| cf(&c))
    }

    fn small_symmetric() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..6).prop_flat_map(|n| {
            prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..=i {
                        let x = q(v[i * n + j], 1);
                        m.set(i, j, x.clone());
                        m.set(j, i, x);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn closed_form_matches_matrix(c in odd_cf()) {
            let g = goeritz_matrix(&c).unwrap();
            prop_assert!(g.matrix.is_symmetric());
            let p_n = c.convergents().last().0.clone();
            prop_assert_eq!(g.determinant().abs(), p_n.abs());

            let generic = congruence_diagonalize(&g.to_rational()).unwrap();
            match closed_form_diagonal(&c) {
                Ok(d) => {
                    let t = transition_matrix(&c).unwrap();
                    prop_assert!(t.matrix.is_upper_triangular());
                    prop_assert_eq!(t.matrix.congruence(&g.to_rational()).unwrap(), Matrix::diagonal(&d.entries));
                    prop_assert_eq!(d.product().abs(), to_rational(&p_n).abs());
                    prop_assert_eq!(sigma_g(&c).unwrap(), generic.signature());
                    prop_assert_eq!(d.signature(), generic.signature());
                }
                Err(Error::DegenerateLambda { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }

        #[test]
        fn congruence_transform_diagonalizes(m in small_symmetric()) {
            let (d, t) = congruence_diagonalize_with_transform(&m).unwrap();
            prop_assert_eq!(t.congruence(&m).unwrap(), Matrix::diagonal(&d.entries));
            prop_assert!(!rational_determinant(&t).unwrap().is_zero());
            // n_0 equals the nullity
            prop_assert_eq!(d.inertia().zero, m.nrows() - rank(&m));
        }
    }

    /// Row-echelon rank, independent of the congruence routine.
    fn rank(m: &Matrix<Rational>) -> usize {
        let mut a = m.to_rows();
        let cols = m.ncols();
        let mut r = 0;
        for c in 0..cols {
            let Some(pivot) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, pivot);
            for i in r + 1..a.len() {
                let factor = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &factor * &a[r][j];
                    a[i][j] -= v;
                }
            }
            r += 1;
        }
        r
    }
}
