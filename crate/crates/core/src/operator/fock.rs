//! Dense truncated-Fock representation and the matrix-exponential oracle for
//! `e^X Y e^{-X}`. Test and verification use only.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Monomial, OperatorPolynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on the total Fock dimension.
pub const DEFAULT_MAX_DIMENSION: usize = 4096;

/// Active modes with their truncation dimensions. The first listed mode is the
/// most significant digit of the product-basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockOracleConfig {
    modes: Vec<(u32, usize)>,
    max_dimension: usize,
}

impl FockOracleConfig {
    pub fn new(modes: Vec<(u32, usize)>, max_dimension: usize) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidArgument("Fock oracle needs at least one mode".into()));
        }
        if let Some((m, d)) = modes.iter().find(|(_, d)| *d < 2) {
            return Err(Error::InvalidArgument(format!("mode {m} truncation {d} must be at least 2")));
        }
        let mut seen: Vec<u32> = modes.iter().map(|(m, _)| *m).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate mode in Fock oracle config".into()));
        }
        let dim = modes
            .iter()
            .try_fold(1usize, |acc, (_, d)| acc.checked_mul(*d))
            .unwrap_or(usize::MAX);
        if dim > max_dimension {
            return Err(Error::OracleTooLarge { dim, cap: max_dimension });
        }
        Ok(Self { modes, max_dimension })
    }

    pub fn single_mode(mode: u32, truncation: usize) -> Result<Self> {
        Self::new(vec![(mode, truncation)], DEFAULT_MAX_DIMENSION)
    }

    pub fn modes(&self) -> &[(u32, usize)] {
        &self.modes
    }

    pub fn max_dimension(&self) -> usize {
        self.max_dimension
    }

    pub fn dimension(&self) -> usize {
        self.modes.iter().map(|(_, d)| d).product()
    }

    /// Product-basis indices whose occupation is below half the truncation in
    /// every mode.
    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.dimension())
            .filter(|&idx| {
                let mut rest = idx;
                self.modes.iter().rev().all(|&(_, d)| {
                    let n = rest % d;
                    rest /= d;
                    n < d / 2
                })
            })
            .collect()
    }
}

fn ladder(dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

fn monomial_matrix(m: &Monomial, cfg: &FockOracleConfig) -> Result<DMatrix<Complex64>> {
    for mode in m.modes() {
        if !cfg.modes.iter().any(|(x, _)| *x == mode) {
            return Err(Error::InvalidArgument(format!("mode {mode} is not active in the Fock oracle")));
        }
    }
    let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for &(mode, dim) in &cfg.modes {
        let a = ladder(dim);
        let ad = a.adjoint();
        let mut local = DMatrix::identity(dim, dim);
        if let Some(f) = m.factors().iter().find(|f| f.mode == mode) {
            for _ in 0..f.creations {
                local = &local * &ad;
            }
            for _ in 0..f.annihilations {
                local = &local * &a;
            }
        }
        out = out.kronecker(&local);
    }
    Ok(out)
}

/// Dense matrix of a polynomial in the truncated product basis. Truncation is
/// applied to each ladder operator, so entries near the top of the ladder are
/// not faithful.
pub fn fock_matrix<T: Scalar>(p: &OperatorPolynomial<T>, cfg: &FockOracleConfig) -> Result<DMatrix<Complex64>> {
    let dim = cfg.dimension();
    let mut out = DMatrix::zeros(dim, dim);
    for (m, c) in p.terms() {
        let c = Complex64::new(c.re.to_f64().unwrap(), c.im.to_f64().unwrap());
        out += monomial_matrix(m, cfg)? * c;
    }
    Ok(out)
}

fn require_anti_hermitian<T: Scalar>(x: &OperatorPolynomial<T>) -> Result<()> {
    if !x.is_anti_hermitian(T::lit(1e-12).max(T::epsilon() * T::lit(16.0))) {
        return Err(Error::InvalidArgument("oracle generator must be anti-Hermitian".into()));
    }
    Ok(())
}

/// `e^X` in the truncated basis.
pub fn fock_unitary<T: Scalar>(x: &OperatorPolynomial<T>, cfg: &FockOracleConfig) -> Result<DMatrix<Complex64>> {
    require_anti_hermitian(x)?;
    Ok(fock_matrix(x, cfg)?.exp())
}

/// `e^X · Y · e^{-X}` by dense matrix exponentiation.
pub fn fock_adjoint_oracle<T: Scalar>(
    x: &OperatorPolynomial<T>,
    y: &OperatorPolynomial<T>,
    cfg: &FockOracleConfig,
) -> Result<DMatrix<Complex64>> {
    require_anti_hermitian(x)?;
    let xm = fock_matrix(x, cfg)?;
    let ym = fock_matrix(y, cfg)?;
    let forward = xm.exp();
    let backward = (-xm).exp();
    Ok(forward * ym * backward)
}

/// Largest `|a_ij − b_ij|` over interior row and column indices.
pub fn max_interior_deviation(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, cfg: &FockOracleConfig) -> f64 {
    let idx = cfg.interior_indices();
    let mut worst = 0.0f64;
    for &i in &idx {
        for &j in &idx {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}
