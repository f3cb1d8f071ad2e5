//! Polynomials in bosonic creation/annihilation operators with complex
//! coefficients, kept in a unique normal-ordered canonical form, and the
//! two-term BCH closed forms that hold when `[X, Y]` commutes with `X`.

mod fock;
mod monomial;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

pub use fock::{fock_adjoint_oracle, fock_matrix, fock_unitary, max_interior_deviation, FockOracleConfig};
pub use monomial::{ModeFactor, Monomial};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Σ c_i · m_i` with distinct normal-ordered monomials `m_i`, sorted by
/// (degree, factors), and no coefficient below [`Scalar::prune_threshold`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPolynomial<T> {
    terms: Vec<(Monomial, Complex<T>)>,
}

impl<T: Scalar> Default for OperatorPolynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> OperatorPolynomial<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn scalar(c: Complex<T>) -> Self {
        Self::from_terms([(Monomial::identity(), c)])
    }

    pub fn real_scalar(c: T) -> Self {
        Self::scalar(Complex::new(c, T::zero()))
    }

    pub fn creation(mode: u32) -> Self {
        Self::from_terms([(Monomial::creation(mode), Complex::new(T::one(), T::zero()))])
    }

    pub fn annihilation(mode: u32) -> Self {
        Self::from_terms([(Monomial::annihilation(mode), Complex::new(T::one(), T::zero()))])
    }

    /// Canonicalizes an arbitrary list of terms. Equal monomials are merged in
    /// input order, so the result is deterministic for a given input.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Complex<T>)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, Complex<T>)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => merged.push((m, c)),
            }
        }
        let eps = T::prune_threshold();
        merged.retain(|(_, c)| c.norm() > eps);
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[(Monomial, Complex<T>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial degree; 0 for scalars and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.last().map_or(0, |(m, _)| m.degree())
    }

    /// True iff the polynomial is a multiple of the identity (a c-number).
    pub fn is_central(&self) -> bool {
        self.degree() == 0
    }

    /// Coefficient of the identity.
    pub fn scalar_part(&self) -> Complex<T> {
        self.coefficient(&Monomial::identity())
    }

    pub fn coefficient(&self, m: &Monomial) -> Complex<T> {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(m))
            .map(|i| self.terms[i].1)
            .unwrap_or_else(|_| Complex::new(T::zero(), T::zero()))
    }

    /// Sorted, deduplicated list of modes that appear.
    pub fn modes(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.iter().flat_map(|(m, _)| m.modes()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), *c * s)))
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.adjoint(), c.conj())))
    }

    /// `P† = −P` up to `tol` times the largest coefficient.
    pub fn is_anti_hermitian(&self, tol: T) -> bool {
        let scale = self.max_coefficient();
        (self.clone() + self.adjoint()).terms.iter().all(|(_, c)| c.norm() <= tol * scale)
    }

    pub fn max_coefficient(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, (_, c)| acc.max(c.norm()))
    }

    /// Largest coefficient modulus of `self − other`.
    pub fn max_difference(&self, other: &Self) -> T {
        (self.clone() - other.clone()).max_coefficient()
    }

    /// Full normal-ordered product `self · other`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = *ca * *cb;
                for (m, n) in ma.product(mb) {
                    out.push((m, c * T::from_i64(n).unwrap()));
                }
            }
        }
        Self::from_terms(out)
    }
}

impl<T: Scalar> Add for OperatorPolynomial<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_terms(self.terms.into_iter().chain(o.terms))
    }
}

impl<T: Scalar> Sub for OperatorPolynomial<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Scalar> Neg for OperatorPolynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<T: Scalar> Mul<Complex<T>> for OperatorPolynomial<T> {
    type Output = Self;
    fn mul(self, s: Complex<T>) -> Self {
        self.scale(s)
    }
}

impl<T: Scalar> fmt::Display for OperatorPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i) {}", c.re, c.im, m)?;
        }
        Ok(())
    }
}

/// Exact normal-ordered `[P, Q] = PQ − QP`.
///
/// Only pairs of monomials that share a mode contribute, so the cost is
/// linear in the number of overlapping pairs rather than `|P|·|Q|`.
pub fn commutator<T: Scalar>(p: &OperatorPolynomial<T>, q: &OperatorPolynomial<T>) -> OperatorPolynomial<T> {
    let mut by_mode: Vec<(u32, usize)> = q
        .terms
        .iter()
        .enumerate()
        .flat_map(|(idx, (m, _))| m.modes().map(move |mode| (mode, idx)))
        .collect();
    by_mode.sort_unstable();

    let mut out = Vec::new();
    let mut candidates: Vec<usize> = Vec::new();
    for (mp, cp) in &p.terms {
        if mp.is_identity() {
            continue;
        }
        candidates.clear();
        for mode in mp.modes() {
            let start = by_mode.partition_point(|&(m, _)| m < mode);
            candidates.extend(by_mode[start..].iter().take_while(|&&(m, _)| m == mode).map(|&(_, i)| i));
        }
        candidates.sort_unstable();
        candidates.dedup();
        for &j in &candidates {
            let (mq, cq) = &q.terms[j];
            let c = *cp * *cq;
            for (m, n) in mp.commutator(mq) {
                out.push((m, c * T::from_i64(n).unwrap()));
            }
        }
    }
    OperatorPolynomial::from_terms(out)
}

/// True iff `p` is a pure scalar after canonicalization.
pub fn is_central<T: Scalar>(p: &OperatorPolynomial<T>) -> bool {
    p.is_central()
}

/// `[X, Y]` after checking that `[X, [X, Y]]` vanishes.
fn centred_commutator<T: Scalar>(x: &OperatorPolynomial<T>, y: &OperatorPolynomial<T>) -> Result<OperatorPolynomial<T>> {
    let xy = commutator(x, y);
    let nested = commutator(x, &xy);
    if !nested.is_zero() {
        return Err(Error::BchOrderViolation { terms: nested.len() });
    }
    Ok(xy)
}

/// `e^{sX} Y e^{-sX} = Y + s[X, Y]`, valid when `[X, [X, Y]] = 0`.
pub fn adjoint_action_at<T: Scalar>(x: &OperatorPolynomial<T>, y: &OperatorPolynomial<T>, s: T) -> Result<OperatorPolynomial<T>> {
    let xy = centred_commutator(x, y)?;
    Ok(y.clone() + xy.scale_real(s))
}

/// `e^X Y e^{-X} = Y + [X, Y]`.
pub fn adjoint_action<T: Scalar>(x: &OperatorPolynomial<T>, y: &OperatorPolynomial<T>) -> Result<OperatorPolynomial<T>> {
    adjoint_action_at(x, y, T::one())
}

/// `∫₀¹ e^{sX} Y e^{-sX} ds = Y + ½[X, Y]`.
pub fn time_derivative_conjugation<T: Scalar>(x: &OperatorPolynomial<T>, y: &OperatorPolynomial<T>) -> Result<OperatorPolynomial<T>> {
    adjoint_action_at(x, y, T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = OperatorPolynomial<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn displacement(xi: f64) -> P {
        (P::creation(0) - P::annihilation(0)).scale_real(xi)
    }

    fn quadrature() -> P {
        P::annihilation(0) + P::creation(0)
    }

    #[test]
    fn canonical_commutation() {
        let r = commutator(&P::annihilation(0), &P::creation(0));
        assert_eq!(r, P::real_scalar(1.0));
        assert!(commutator(&P::annihilation(1), &P::creation(2)).is_zero());
    }

    #[test]
    fn number_operator_lowers() {
        let n = P::creation(0).product(&P::annihilation(0));
        assert_eq!(commutator(&n, &P::annihilation(0)), -P::annihilation(0));
    }

    #[test]
    fn centrality_detection() {
        assert!(is_central(&P::real_scalar(3.7)));
        assert!(is_central(&P::zero()));
        assert!(!is_central(&quadrature()));
    }

    #[test]
    fn displacement_adjoint_action() {
        let out = adjoint_action(&displacement(0.3), &quadrature()).unwrap();
        let want = quadrature() - P::real_scalar(0.6);
        assert!(out.max_difference(&want) < 1e-15);
        let half = time_derivative_conjugation(&displacement(0.3), &quadrature()).unwrap();
        let want = quadrature() - P::real_scalar(0.3);
        assert!(half.max_difference(&want) < 1e-15);
    }

    #[test]
    fn scalar_y_is_unchanged() {
        let y = P::scalar(c(2.0, -1.0));
        let x = P::creation(0).product(&P::annihilation(1)).scale(c(0.0, 1.0));
        assert_eq!(adjoint_action(&x, &y).unwrap(), y);
        assert_eq!(time_derivative_conjugation(&x, &y).unwrap(), y);
    }

    #[test]
    fn half_step_is_mean_of_endpoints() {
        let x = displacement(0.7) + (P::creation(1) - P::annihilation(1)).scale(c(0.0, 0.2));
        let y = quadrature() + P::creation(1).scale(c(0.5, 0.1));
        let half = time_derivative_conjugation(&x, &y).unwrap();
        let full = adjoint_action(&x, &y).unwrap();
        let mean = (y + full).scale_real(0.5);
        assert!(half.max_difference(&mean) < 1e-15);
    }

    #[test]
    fn squeezing_generator_violates_two_term_bch() {
        // X = a†² − a², Y = a: [X, Y] = −2a†, [X, [X, Y]] = 4a ≠ 0.
        let x = P::creation(0).product(&P::creation(0)) - P::annihilation(0).product(&P::annihilation(0));
        let err = adjoint_action(&x, &P::annihilation(0)).unwrap_err();
        assert!(matches!(err, Error::BchOrderViolation { terms: 1 }));
    }

    #[test]
    fn pruning_drops_tiny_coefficients() {
        let p = P::from_terms([(Monomial::creation(0), c(1e-16, 0.0)), (Monomial::identity(), c(1.0, 0.0))]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn anti_hermitian_pattern() {
        assert!(displacement(0.4).is_anti_hermitian(1e-14));
        assert!(!quadrature().is_anti_hermitian(1e-14));
        assert!(quadrature().scale(c(0.0, 1.0)).is_anti_hermitian(1e-14));
    }

    #[test]
    fn display_lists_terms() {
        assert_eq!(P::zero().to_string(), "0");
        assert!(quadrature().to_string().contains("a†0"));
    }
}
