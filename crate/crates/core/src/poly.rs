//! Dense polynomials in `ξ` and finite Laurent polynomials in `s`.

use std::fmt;

use crate::scalar::Scalar;

/// `Σ coeffs[k] ξ^k`, ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Degree ignoring trailing zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn constant_term(&self) -> T {
        self.coeffs.first().cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)),
            "ξ",
        )
    }
}

/// `Σ coeffs[k] s^(lowest + k)`: a finite Laurent polynomial, stored densely from the
/// deepest pole upwards.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<T> {
    lowest: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn new(lowest: i64, coeffs: Vec<T>) -> Self {
        LaurentPoly { lowest, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly::new(0, Vec::new())
    }

    /// `c · s^exponent`.
    pub fn monomial(c: T, exponent: i64) -> Self {
        LaurentPoly::new(exponent, vec![c])
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.lowest
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coefficient(&self, exponent: i64) -> T {
        let idx = exponent - self.lowest;
        if idx < 0 {
            return T::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lowest + k as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops zero coefficients at both ends.
    pub fn trimmed(&self) -> Self {
        let Some(first) = self.coeffs.iter().position(|c| !c.is_zero()) else {
            return LaurentPoly::zero();
        };
        let last = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(first);
        LaurentPoly::new(
            self.lowest + first as i64,
            self.coeffs[first..=last].to_vec(),
        )
    }

    fn highest(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.lowest.min(other.lowest);
        let hi = self.highest().max(other.highest());
        let coeffs = (lo..=hi)
            .map(|e| self.coefficient(e) + other.coefficient(e))
            .collect();
        LaurentPoly::new(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, factor: &T) -> Self {
        LaurentPoly::new(
            self.lowest,
            self.coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly::new(self.lowest + k, self.coeffs.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return LaurentPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.lowest + other.lowest, out)
    }

    /// `d/ds`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.lowest + k as i64;
                let factor = T::from_i64(e).expect("exponent fits the scalar type");
                c.clone() * factor
            })
            .collect();
        LaurentPoly::new(self.lowest - 1, coeffs).trimmed()
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64() * s.powi((self.lowest + k as i64) as i32))
            .sum()
    }
}

impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (self.lowest + k as i64, c)),
            "s",
        )
    }
}

fn write_terms<'a, T: Scalar + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a T)>,
    var: &str,
) -> fmt::Result {
    let mut any = false;
    for (e, c) in terms.filter(|(_, c)| !c.is_zero()) {
        if any {
            write!(f, " + ")?;
        }
        match e {
            0 => write!(f, "({c})")?,
            1 => write!(f, "({c}){var}")?,
            _ => write!(f, "({c}){var}^{e}")?,
        }
        any = true;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn laurent_arithmetic() {
        // (s^-2 - s^-1)(s - 1) = -s^-2 + 2s^-1 - 1
        let a = LaurentPoly::new(-2, vec![q(1), q(-1)]);
        let b = LaurentPoly::new(0, vec![q(-1), q(1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.coefficient(-2), q(-1));
        assert_eq!(prod.coefficient(-1), q(2));
        assert_eq!(prod.coefficient(0), q(-1));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&b).trimmed().lowest_exponent(), -2);
    }

    #[test]
    fn laurent_derivative() {
        // d/ds (3 s^-2 + s) = -6 s^-3 + 1
        let p = LaurentPoly::new(-2, vec![q(3), q(0), q(0), q(1)]);
        let d = p.derivative();
        assert_eq!(d.coefficient(-3), q(-6));
        assert_eq!(d.coefficient(0), q(1));
        assert_eq!(d.terms().count(), 2);
    }

    #[test]
    fn trimming_and_zero() {
        let p = LaurentPoly::new(-3, vec![q(0), q(2), q(0)]);
        let t = p.trimmed();
        assert_eq!(t.lowest_exponent(), -2);
        assert_eq!(t.coeffs(), &[q(2)]);
        assert!(LaurentPoly::new(1, vec![q(0), q(0)]).trimmed().is_zero());
        assert_eq!(LaurentPoly::<Rational>::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_eval_and_degree() {
        let p = Polynomial::new(vec![6.0, -4.0, 0.5, 0.0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&2.0), 0.0);
        assert_eq!(p.eval_f64(0.0), 6.0);
        assert_eq!(Polynomial::<f64>::new(vec![0.0]).degree(), None);
    }
}
