//! Plane-wave mode expansion of the transverse vector potential and electric
//! field in a periodic box, and the equal-time `[A_m(R), E_m'(R')]` kernel.
//!
//! Each wavevector `k` carries three Cartesian oscillators `a_{k,j}`
//! (`j = x, y, z`). Field amplitudes are projected with `δ − k̂k̂`, so only
//! the two transverse combinations couple to the field and the polarization
//! sum over those three oscillators reproduces the projector exactly. The
//! oscillator for `(k, j)` has operator index `3 * mode + j`.
//!
//! Smeared fields carry a Gaussian form factor `exp(-k²σ²/2)` on every mode
//! amplitude, so a commutator of two smeared fields is weighted by
//! `exp(-k²σ²)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{Tensor3, Vec3};
use crate::scalar::Scalar;
use crate::units::UnitSystem;

/// Operator index of the Cartesian oscillator `j` attached to lattice mode `mode`.
#[inline]
pub fn operator_index(mode: usize, polarization: usize) -> u32 {
    debug_assert!(polarization < 3);
    u32::try_from(3 * mode + polarization).expect("operator index fits in u32")
}

/// Inverse of [`operator_index`].
#[inline]
pub fn split_operator_index(index: u32) -> (usize, usize) {
    let i = index as usize;
    (i / 3, i % 3)
}

/// Wavevectors `k = 2πn/L` with `n ∈ ℤ³`, `|n_i| ≤ N`, `n ≠ 0`, ordered
/// lexicographically in `(n_x, n_y, n_z)`. Modes are generated on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLattice<T> {
    box_length: T,
    half_extent: usize,
    units: UnitSystem<T>,
}

/// One lattice mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode<T> {
    pub index: usize,
    pub n: [i64; 3],
    pub k: Vec3<T>,
    pub omega: T,
}

impl<T: Scalar> ModeLattice<T> {
    pub fn new(box_length: T, half_extent: usize, units: UnitSystem<T>) -> Result<Self> {
        if !(box_length.is_finite() && box_length > T::zero()) {
            return Err(Error::InvalidArgument(format!("box length must be positive, got {box_length}")));
        }
        if half_extent < 1 {
            return Err(Error::InvalidArgument("half extent N must be at least 1".into()));
        }
        units.validate()?;
        Ok(Self { box_length, half_extent, units })
    }

    pub fn box_length(&self) -> T {
        self.box_length
    }

    pub fn half_extent(&self) -> usize {
        self.half_extent
    }

    pub fn units(&self) -> &UnitSystem<T> {
        &self.units
    }

    pub fn volume(&self) -> T {
        self.box_length.powi(3)
    }

    #[inline]
    fn side(&self) -> usize {
        2 * self.half_extent + 1
    }

    /// Number of modes, `(2N+1)³ − 1`.
    pub fn len(&self) -> usize {
        self.side().pow(3) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of bosonic oscillators (three per mode).
    pub fn operator_count(&self) -> usize {
        3 * self.len()
    }

    /// `2π/L`.
    pub fn k_unit(&self) -> T {
        T::TAU() / self.box_length
    }

    pub fn integer_vector(&self, index: usize) -> [i64; 3] {
        assert!(index < self.len(), "mode index {index} out of range");
        let side = self.side();
        let centre = self.len() / 2;
        let flat = if index < centre { index } else { index + 1 };
        let n = self.half_extent as i64;
        [
            (flat / (side * side)) as i64 - n,
            ((flat / side) % side) as i64 - n,
            (flat % side) as i64 - n,
        ]
    }

    /// Index of the mode with integer vector `n`, if it is on the lattice.
    pub fn index_of(&self, n: [i64; 3]) -> Option<usize> {
        let h = self.half_extent as i64;
        if n == [0, 0, 0] || n.iter().any(|c| c.abs() > h) {
            return None;
        }
        let side = self.side();
        let flat = ((n[0] + h) as usize * side + (n[1] + h) as usize) * side + (n[2] + h) as usize;
        let centre = self.len() / 2;
        Some(if flat < centre { flat } else { flat - 1 })
    }

    pub fn mode(&self, index: usize) -> Mode<T> {
        let n = self.integer_vector(index);
        let ku = self.k_unit();
        let k = Vec3::new(
            T::from_i64(n[0]).unwrap() * ku,
            T::from_i64(n[1]).unwrap() * ku,
            T::from_i64(n[2]).unwrap() * ku,
        );
        Mode { index, n, k, omega: self.units.c * k.norm() }
    }

    pub fn iter(&self) -> impl Iterator<Item = Mode<T>> + '_ {
        (0..self.len()).map(move |i| self.mode(i))
    }

    /// Amplitude `sqrt(ħ / (2 ε₀ ω V))` times the Gaussian form factor.
    fn amplitude(&self, mode: &Mode<T>, sigma: T) -> T {
        let u = &self.units;
        let bare = (u.hbar / (T::lit(2.0) * u.epsilon0 * mode.omega * self.volume())).sqrt();
        bare * (-(mode.k.norm_squared() * sigma * sigma) / T::lit(2.0)).exp()
    }
}

/// Which field an expansion belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    VectorPotential,
    ElectricField,
}

/// Coefficients of one mode: entry `(m, j)` multiplies `a_{k,j}`
/// (resp. `a†_{k,j}`) in field component `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients<T> {
    pub annihilation: Tensor3<T>,
    pub creation: Tensor3<T>,
}

impl<T: Scalar> ModeCoefficients<T> {
    /// Coefficient 3-vectors (over polarization) of field component `m`.
    pub fn component(&self, m: usize) -> ([Complex<T>; 3], [Complex<T>; 3]) {
        (self.annihilation.entries[m], self.creation.entries[m])
    }
}

/// Operator expansion of a field at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldCoefficients<T> {
    pub kind: FieldKind,
    pub point: Vec3<T>,
    pub sigma: T,
    pub modes: Vec<ModeCoefficients<T>>,
}

pub(crate) fn mode_coefficients<T: Scalar>(
    lattice: &ModeLattice<T>,
    mode: &Mode<T>,
    r: Vec3<T>,
    sigma: T,
    kind: FieldKind,
) -> ModeCoefficients<T> {
    let amp = lattice.amplitude(mode, sigma);
    let phase = Complex::from_polar(T::one(), mode.k.dot(r));
    let projector = Tensor3::transverse_projector(mode.k);
    let mut annihilation = projector.scale(phase * amp);
    let mut creation = projector.scale(phase.conj() * amp);
    if kind == FieldKind::ElectricField {
        // E = -∂ₜA with a(t) = a e^{-iωt}.
        let i_omega = Complex::new(T::zero(), mode.omega);
        annihilation = annihilation.scale(i_omega);
        creation = creation.scale(-i_omega);
    }
    ModeCoefficients { annihilation, creation }
}

fn field_coeffs<T: Scalar>(lattice: &ModeLattice<T>, r: Vec3<T>, sigma: T, kind: FieldKind) -> Result<FieldCoefficients<T>> {
    if !r.is_finite() {
        return Err(Error::InvalidArgument("evaluation point must be finite".into()));
    }
    if !(sigma.is_finite() && sigma >= T::zero()) {
        return Err(Error::InvalidArgument(format!("smearing length must be non-negative, got {sigma}")));
    }
    let modes = lattice.iter().map(|m| mode_coefficients(lattice, &m, r, sigma, kind)).collect();
    Ok(FieldCoefficients { kind, point: r, sigma, modes })
}

/// Expansion of the (unsmeared) vector potential at `r`.
pub fn vector_potential_coeffs<T: Scalar>(lattice: &ModeLattice<T>, r: Vec3<T>) -> Result<FieldCoefficients<T>> {
    field_coeffs(lattice, r, T::zero(), FieldKind::VectorPotential)
}

/// Expansion of the vector potential smeared over a Gaussian of width `sigma`.
pub fn vector_potential_coeffs_smeared<T: Scalar>(
    lattice: &ModeLattice<T>,
    r: Vec3<T>,
    sigma: T,
) -> Result<FieldCoefficients<T>> {
    field_coeffs(lattice, r, sigma, FieldKind::VectorPotential)
}

/// Expansion of the (unsmeared) electric field at `r`.
pub fn electric_field_coeffs<T: Scalar>(lattice: &ModeLattice<T>, r: Vec3<T>) -> Result<FieldCoefficients<T>> {
    field_coeffs(lattice, r, T::zero(), FieldKind::ElectricField)
}

pub fn electric_field_coeffs_smeared<T: Scalar>(
    lattice: &ModeLattice<T>,
    r: Vec3<T>,
    sigma: T,
) -> Result<FieldCoefficients<T>> {
    field_coeffs(lattice, r, sigma, FieldKind::ElectricField)
}

// [αa + α'a†, βa + β'a†] = αβ' − α'β, summed over the three oscillators of a mode.
fn accumulate_mode_commutator<T: Scalar>(acc: &mut Tensor3<T>, a: &ModeCoefficients<T>, e: &ModeCoefficients<T>) {
    for m in 0..3 {
        for n in 0..3 {
            let mut s = Complex::new(T::zero(), T::zero());
            for j in 0..3 {
                s += a.annihilation.entries[m][j] * e.creation.entries[n][j]
                    - a.creation.entries[m][j] * e.annihilation.entries[n][j];
            }
            acc.entries[m][n] += s;
        }
    }
}

fn check_sigma<T: Scalar>(sigma: T) -> Result<()> {
    if !(sigma.is_finite() && sigma > T::zero()) {
        return Err(Error::InvalidArgument(format!("regulator sigma must be positive, got {sigma}")));
    }
    Ok(())
}

/// Equal-time `[A_m(R), E_m'(R')]` summed over the lattice, with both fields
/// smeared by `sigma`. Modes are accumulated in lattice order.
pub fn commutator_ae_modesum<T: Scalar>(lattice: &ModeLattice<T>, r: Vec3<T>, rp: Vec3<T>, sigma: T) -> Result<Tensor3<T>> {
    check_sigma(sigma)?;
    if (r - rp).norm() == T::zero() {
        return Err(Error::DegenerateSeparation(
            "commutator kernel requested at zero separation; the contact term is not modelled".into(),
        ));
    }
    Ok(commutator_ae_unchecked(lattice, r, rp, sigma))
}

pub(crate) fn commutator_ae_unchecked<T: Scalar>(lattice: &ModeLattice<T>, r: Vec3<T>, rp: Vec3<T>, sigma: T) -> Tensor3<T> {
    let mut acc = Tensor3::zero();
    for mode in lattice.iter() {
        let a = mode_coefficients(lattice, &mode, r, sigma, FieldKind::VectorPotential);
        let e = mode_coefficients(lattice, &mode, rp, sigma, FieldKind::ElectricField);
        accumulate_mode_commutator(&mut acc, &a, &e);
    }
    acc
}

/// Smeared `[A_m(R), E_m'(R)]` at coincident points.
///
/// At zero separation every mode contributes `(δ − k̂k̂) exp(-k²σ²)`; the cube
/// `|n_i| ≤ N` is invariant under axis permutations and reflections, so the
/// lattice sum of `k̂k̂` is `δ/3` times the sum of the weights, and the weight
/// sum factorizes over axes.
pub fn coincident_commutator<T: Scalar>(lattice: &ModeLattice<T>, sigma: T) -> Result<Tensor3<T>> {
    check_sigma(sigma)?;
    let ku = lattice.k_unit();
    let h = lattice.half_extent() as i64;
    let axis_sum: T = (-h..=h)
        .map(|n| {
            let k = T::from_i64(n).unwrap() * ku;
            (-(k * k * sigma * sigma)).exp()
        })
        .sum();
    let weight_sum = axis_sum.powi(3) - T::one();
    let u = lattice.units();
    let diag = -(u.hbar / (u.epsilon0 * lattice.volume())) * T::lit(2.0) / T::lit(3.0) * weight_sum;
    Ok(Tensor3::from_fn(|m, n| {
        if m == n {
            Complex::new(T::zero(), diag)
        } else {
            Complex::new(T::zero(), T::zero())
        }
    }))
}

/// Closed form `(iħ/4πε₀)(1/ρ³)(δ_mm' − 3ρ̂_m ρ̂_m')`.
pub fn analytic_dipole_tensor<T: Scalar>(rho: Vec3<T>, units: &UnitSystem<T>) -> Result<Tensor3<T>> {
    let r = rho.norm();
    if r == T::zero() {
        return Err(Error::DegenerateSeparation("dipole tensor at zero separation".into()));
    }
    let hat = rho * (T::one() / r);
    let pre = units.hbar * units.coulomb_prefactor() / r.powi(3);
    Ok(Tensor3::from_fn(|m, n| {
        let delta = if m == n { T::one() } else { T::zero() };
        Complex::new(T::zero(), pre * (delta - T::lit(3.0) * hat[m] * hat[n]))
    }))
}

/// Max-entry deviation of `computed` from `reference`, relative to the largest
/// reference entry.
pub fn max_relative_deviation<T: Scalar>(computed: &Tensor3<T>, reference: &Tensor3<T>) -> T {
    (*computed - *reference).max_abs() / reference.max_abs()
}
