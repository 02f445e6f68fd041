//! Counting coherent walks, in total and by length.
//!
//! The generation surgeries change a walk's ending type and length in a
//! fixed way, so the census of coherent walks obeys a 3x3 integer matrix
//! recursion, and the census refined by length obeys the same recursion
//! over integer polynomials in `z` (exponent = length). This module iterates
//! both recursions exactly, exposes the closed form for the total, the
//! extremal-length data, the count of longest unrestricted walks, a
//! log-concavity test, and a polynomial-interpolation check for the columns
//! of the length table.

use std::ops::{Add, Mul, RangeInclusive};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense integer polynomial in one variable, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn monomial(coeff: i64, exp: usize) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = BigInt::from(coeff);
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by the monomial `z^by`.
    pub fn shifted(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Census of coherent walks of size `n` by ending type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountState {
    pub n: usize,
    /// Walks whose last step enters `n` over `n - 1`.
    pub t: BigInt,
    /// Walks ending in a chain of at least two steps holding `n`.
    pub q: BigInt,
    /// Walks ending in exactly one step holding `n`.
    pub c: BigInt,
}

impl CountState {
    pub fn total(&self) -> BigInt {
        &self.t + &self.q + &self.c
    }
}

/// Iterates the type census recursion from the size-4 census `(3, 1, 4)`.
pub fn count_vector(n: usize) -> Result<CountState> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the census recursion starts at n = 4, got n = {n}"
        )));
    }
    let (mut t, mut q, mut c) = (BigInt::from(3), BigInt::from(1), BigInt::from(4));
    for _ in 4..n {
        let next_t = &t + 2 * (&q + &c);
        let next_q = 2 * &q + &c;
        let next_c = 2 * (&t + &c);
        (t, q, c) = (next_t, next_q, next_c);
        debug_assert_eq!(2 * &t, 2 * &q + &c);
        debug_assert_eq!(c, &t + 1);
    }
    Ok(CountState { n, t, q, c })
}

/// Closed form for the number of coherent walks of size `n`.
pub fn count_total(n: usize) -> Result<BigInt> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the closed form holds for n >= 4, got n = {n}"
        )));
    }
    let numerator: BigInt = 25 * (BigInt::one() << (2 * (n - 4))) - 1;
    let (quotient, remainder) = numerator.div_rem(&BigInt::from(3));
    debug_assert!(remainder.is_zero());
    Ok(quotient)
}

/// Census of coherent walks of size `n` by ending type, refined by length:
/// the coefficient of `z^l` counts walks with `l` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCountState {
    pub n: usize,
    pub t: Poly,
    pub q: Poly,
    pub c: Poly,
}

impl PolyCountState {
    /// The full length generating polynomial of size `n`.
    pub fn total(&self) -> Poly {
        &(&self.t + &self.q) + &self.c
    }
}

/// Iterates the length-refined recursion from the size-4 polynomials
/// `(z^4 + 2z^3, z^4, 2z^4 + 2z^3)`.
pub fn length_polys(n: usize) -> Result<PolyCountState> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the length recursion starts at n = 4, got n = {n}"
        )));
    }
    let one_z = Poly::from_coeffs(vec![BigInt::one(), BigInt::one()]);
    let mut t = &Poly::monomial(1, 4) + &Poly::monomial(2, 3);
    let mut q = Poly::monomial(1, 4);
    let mut c = &Poly::monomial(2, 4) + &Poly::monomial(2, 3);
    for _ in 4..n {
        let next_t = &(&t.shifted(1) + &(&one_z * &q)) + &(&one_z * &c);
        let next_q = &(&one_z * &q) + &c.shifted(1);
        let next_c = &(&t.shifted(1) + &t.shifted(2)) + &(&one_z * &c);
        (t, q, c) = (next_t, next_q, next_c);
    }
    let state = PolyCountState { n, t, q, c };
    for poly in [&state.t, &state.q, &state.c] {
        debug_assert!(poly.coeffs().iter().all(|x| !x.is_negative()));
        debug_assert!(poly.coeffs().iter().take(3).all(Zero::is_zero));
    }
    Ok(state)
}

/// The maximal length of a coherent walk of size `n`, with the number of
/// walks attaining it. Both values are checked against the degree and
/// leading coefficient of the length generating polynomial.
pub fn max_coherent_length(n: usize) -> Result<(usize, BigInt)> {
    let ell_max = 3 * (n - 1) / 2;
    let top = if n % 2 == 1 {
        BigInt::one()
    } else {
        BigInt::from(ell_max)
    };
    let total = length_polys(n)?.total();
    if total.degree() != Some(ell_max) || total.leading() != Some(&top) {
        return Err(Error::OracleDisagreement(format!(
            "extremal length of size {n}: closed form says degree {ell_max}, \
             count {top}, but the recursion disagrees"
        )));
    }
    Ok((ell_max, top))
}

/// The number of longest monotone paths of size `n` (no coherence
/// restriction): these have `2(n - 2)` steps and form a Catalan family.
pub fn catalan_longest_count(n: usize) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "longest-walk counting needs n >= 3, got n = {n}"
        )));
    }
    let m = BigInt::from(n - 2);
    let (quotient, remainder) = binomial(&m + &m, m).div_rem(&BigInt::from(n - 1));
    debug_assert!(remainder.is_zero());
    Ok(quotient)
}

/// Tests `a[i]^2 >= a[i-1] * a[i+1]` for all interior indices of the
/// nonzero support (leading and trailing zeros are ignored).
pub fn is_log_concave(seq: &[BigInt]) -> bool {
    let first = seq.iter().position(|x| !x.is_zero());
    let last = seq.iter().rposition(|x| !x.is_zero());
    let (Some(first), Some(last)) = (first, last) else {
        return true;
    };
    let support = &seq[first..=last];
    support.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Outcome of fitting one column of the length table by a polynomial in `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnFit {
    pub ell: usize,
    /// Coefficients of the fitted polynomial in the size variable, ascending.
    pub coeffs: Vec<Rational>,
    /// Degree of the fit; `None` when the fit is identically zero.
    pub degree: Option<usize>,
    /// Sample points where the fit misses, with the actual minus fitted gap.
    pub residuals: Vec<(usize, Rational)>,
}

impl ColumnFit {
    /// True when the fit has the expected degree bound and no residuals.
    pub fn verified(&self) -> bool {
        self.degree.is_none_or(|d| d + 3 <= self.ell) && self.residuals.is_empty()
    }
}

/// Smallest size whose length polynomial reaches degree `ell`; the column
/// is polynomial in `n` from there on. The recursion itself starts at 4.
pub fn column_support_start(ell: usize) -> usize {
    (2 * ell).div_ceil(3).max(3) + 1
}

/// Interpolates column `ell` of the length table on its first `ell - 2`
/// sizes in `n_range`, then reports the fit degree and the residuals on
/// the remaining sizes. The fit must use sizes where the column is already
/// polynomial, so the range has to start at or after the column's support.
pub fn column_polynomial_check(ell: usize, n_range: RangeInclusive<usize>) -> Result<ColumnFit> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if ell < 3 {
        return Err(Error::InvalidParameter(format!(
            "walk lengths start at 3, got column {ell}"
        )));
    }
    if lo < column_support_start(ell) {
        return Err(Error::InvalidParameter(format!(
            "column {ell} is polynomial from size {}, range starts at {lo}",
            column_support_start(ell)
        )));
    }
    let points = ell - 2;
    if hi < lo || hi - lo + 1 < points {
        return Err(Error::InvalidParameter(format!(
            "column {ell} needs {points} sizes to interpolate, got {}",
            hi.saturating_sub(lo) + 1
        )));
    }
    let xs: Vec<Rational> = (lo..=hi).map(|x| Rational::from(BigInt::from(x))).collect();
    let ys: Vec<Rational> = (lo..=hi)
        .map(|x| Ok(Rational::from(length_polys(x)?.total().coeff(ell))))
        .collect::<Result<_>>()?;

    // Newton divided differences on the first `points` samples, expanded to
    // monomial coefficients.
    let mut table = ys[..points].to_vec();
    let mut coeffs = vec![Rational::zero(); points];
    let mut basis = vec![Rational::one()];
    for level in 0..points {
        for (exp, b) in basis.iter().enumerate() {
            coeffs[exp] += &table[0] * b;
        }
        if level + 1 == points {
            break;
        }
        for i in 0..points - level - 1 {
            table[i] = (&table[i + 1] - &table[i]) / (&xs[i + level + 1] - &xs[i]);
        }
        table.truncate(points - level - 1);
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (exp, b) in basis.iter().enumerate() {
            next[exp] -= b * &xs[level];
            next[exp + 1] += b;
        }
        basis = next;
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let degree = coeffs.len().checked_sub(1);
    let mut residuals = Vec::new();
    for (x, y) in xs.iter().zip(&ys).skip(points) {
        let mut fitted = Rational::zero();
        for c in coeffs.iter().rev() {
            fitted = fitted * x + c;
        }
        if &fitted != y {
            let n = usize::try_from(x.to_integer()).expect("sizes fit in usize");
            residuals.push((n, y - &fitted));
        }
    }
    Ok(ColumnFit {
        ell,
        coeffs,
        degree,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::generate_coherent;
    use crate::hypersimplex::{enumerate_monotone_paths, Direction};
    use crate::rational::rat;

    /// The length table: rows `n = 4..=11`, columns from length 3. Every
    /// row sums to the closed-form total; the `l = 8` entry of row 11 is
    /// additionally pinned by exhaustively generating all 136533 walks
    /// (a transposed-digit variant, 21416, fails both cross-checks).
    const LENGTH_TABLE: [(usize, &[u64]); 8] = [
        (4, &[4, 4]),
        (5, &[4, 16, 12, 1]),
        (6, &[4, 28, 56, 38, 7]),
        (7, &[4, 40, 132, 195, 129, 32, 1]),
        (8, &[4, 52, 240, 556, 694, 448, 129, 10]),
        (9, &[4, 64, 380, 1205, 2250, 2496, 1571, 501, 61, 1]),
        (
            10,
            &[4, 76, 552, 2226, 5565, 8896, 9019, 5564, 1914, 304, 13],
        ),
        (
            11,
            &[
                4, 88, 756, 3703, 11627, 24416, 34622, 32725, 19881, 7236, 1375, 99, 1,
            ],
        ),
    ];

    #[test]
    fn census_recursion_is_pinned_at_small_sizes() {
        let v4 = count_vector(4).unwrap();
        assert_eq!((v4.t, v4.q, v4.c), (3.into(), 1.into(), 4.into()));
        let v5 = count_vector(5).unwrap();
        assert_eq!((v5.t, v5.q, v5.c), (13.into(), 6.into(), 14.into()));
        let v6 = count_vector(6).unwrap();
        assert_eq!((v6.t, v6.q, v6.c), (53.into(), 26.into(), 54.into()));
        assert!(matches!(count_vector(3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn census_invariants_hold_along_the_recursion() {
        for n in 4..=40 {
            let v = count_vector(n).unwrap();
            assert_eq!(2 * &v.t, 2 * &v.q + &v.c);
            assert_eq!(v.c, &v.t + 1);
        }
    }

    #[test]
    fn closed_form_is_pinned_and_matches_the_recursion() {
        let expected: [u64; 5] = [8, 33, 133, 533, 2133];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(count_total(4 + i).unwrap(), BigInt::from(*want));
        }
        for n in 4..=300 {
            assert_eq!(count_vector(n).unwrap().total(), count_total(n).unwrap());
        }
        assert!(matches!(count_total(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn length_polynomials_reproduce_the_table() {
        for (n, row) in LENGTH_TABLE {
            let sum: BigInt = row.iter().map(|&x| BigInt::from(x)).sum();
            assert_eq!(sum, count_total(n).unwrap(), "row sum at n = {n}");
            let total = length_polys(n).unwrap().total();
            assert_eq!(total.degree(), Some(row.len() + 2), "degree at n = {n}");
            for (i, want) in row.iter().enumerate() {
                assert_eq!(
                    total.coeff(i + 3),
                    BigInt::from(*want),
                    "n = {n}, l = {}",
                    i + 3
                );
            }
        }
    }

    #[test]
    fn length_polynomials_sum_to_the_total_count() {
        for n in 4..=50 {
            let state = length_polys(n).unwrap();
            assert_eq!(state.total().eval_one(), count_total(n).unwrap());
            assert_eq!(state.t.eval_one(), count_vector(n).unwrap().t);
        }
    }

    #[test]
    fn length_histogram_of_generated_walks_matches() {
        for n in 4..=8 {
            let total = length_polys(n).unwrap().total();
            let mut histogram = vec![BigInt::zero(); total.degree().unwrap() + 1];
            for walk in generate_coherent(n).unwrap() {
                histogram[walk.len()] += 1;
            }
            assert_eq!(Poly::from_coeffs(histogram), total, "histogram at n = {n}");
        }
    }

    #[test]
    fn extremal_length_follows_the_parity_rule() {
        let expected: [(usize, usize, u64); 5] =
            [(5, 6, 1), (6, 7, 7), (8, 10, 10), (9, 12, 1), (10, 13, 13)];
        for (n, ell, top) in expected {
            assert_eq!(
                max_coherent_length(n).unwrap(),
                (ell, BigInt::from(top)),
                "extremal data at n = {n}"
            );
        }
        for n in 4..=50 {
            let (ell, _) = max_coherent_length(n).unwrap();
            assert_eq!(ell, 3 * (n - 1) / 2);
        }
    }

    #[test]
    fn longest_walk_counts_form_the_catalan_sequence() {
        let expected: [u64; 5] = [1, 2, 5, 14, 42];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(catalan_longest_count(3 + i).unwrap(), BigInt::from(*want));
        }
        // Longest walks have 2(n - 2) steps, hence 2n - 3 vertices.
        for n in 3..=5 {
            let c = Direction::standard(n).unwrap();
            let longest = enumerate_monotone_paths(n, 2, &c)
                .unwrap()
                .iter()
                .filter(|p| p.len() == 2 * n - 3)
                .count();
            assert_eq!(BigInt::from(longest), catalan_longest_count(n).unwrap());
        }
    }

    #[test]
    fn log_concavity_checks_interior_triples() {
        let seq = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(is_log_concave(&seq(&[1, 2, 1])));
        assert!(!is_log_concave(&seq(&[1, 1, 3])));
        assert!(is_log_concave(&seq(&[0, 0, 5, 9, 11, 4, 0])));
        assert!(!is_log_concave(&seq(&[2, 0, 2])));
        assert!(is_log_concave(&seq(&[])));
        for n in 4..=60 {
            let total = length_polys(n).unwrap().total();
            assert!(is_log_concave(total.coeffs()), "row n = {n}");
        }
    }

    #[test]
    fn column_fits_are_polynomial_of_the_expected_degree() {
        let constant = column_polynomial_check(3, 4..=12).unwrap();
        assert_eq!(constant.coeffs, vec![rat(4)]);
        let linear = column_polynomial_check(4, 4..=12).unwrap();
        assert_eq!(linear.coeffs, vec![rat(-44), rat(12)]);
        for ell in 5..=9 {
            let lo = column_support_start(ell);
            let fit = column_polynomial_check(ell, lo..=lo + ell + 3).unwrap();
            assert!(fit.verified(), "column {ell}: {fit:?}");
            assert_eq!(fit.degree, Some(ell - 3), "column {ell}");
        }
    }

    #[test]
    fn column_checks_validate_their_range() {
        assert!(matches!(
            column_polynomial_check(6, 4..=12),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            column_polynomial_check(6, 5..=7),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            column_polynomial_check(2, 4..=12),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn the_poly_type_normalizes_and_multiplies() {
        let p = Poly::from_coeffs(vec![BigInt::from(1), BigInt::from(2), BigInt::zero()]);
        assert_eq!(p.degree(), Some(1));
        let q = &p * &p;
        assert_eq!(q.coeffs(), &[1.into(), 4.into(), 4.into()]);
        assert_eq!((&p + &Poly::zero()), p);
        assert_eq!(Poly::monomial(0, 7), Poly::zero());
        assert_eq!(p.shifted(2).coeff(3), BigInt::from(2));
        assert!(Poly::zero().degree().is_none());
    }
}
