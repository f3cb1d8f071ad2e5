use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Values of ħ, ε₀ and c. Everything is computed in natural units and these
/// only rescale the prefactors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem<T> {
    pub hbar: T,
    pub epsilon0: T,
    pub c: T,
}

impl<T: Scalar> Default for UnitSystem<T> {
    fn default() -> Self {
        Self::natural()
    }
}

impl<T: Scalar> UnitSystem<T> {
    /// ħ = ε₀ = c = 1.
    pub fn natural() -> Self {
        Self { hbar: T::one(), epsilon0: T::one(), c: T::one() }
    }

    pub fn new(hbar: T, epsilon0: T, c: T) -> Result<Self> {
        let u = Self { hbar, epsilon0, c };
        u.validate()?;
        Ok(u)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("epsilon0", self.epsilon0), ("c", self.c)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::InvalidArgument(format!("{name} must be finite and positive, got {v}")));
            }
        }
        Ok(())
    }

    /// 1 / (4π ε₀), the electrostatic prefactor.
    #[inline]
    pub fn coulomb_prefactor(&self) -> T {
        T::one() / (T::lit(4.0) * T::PI() * self.epsilon0)
    }
}
