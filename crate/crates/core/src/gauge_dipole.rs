//! Multi-dipole Göppert-Mayer transformation with an operator-valued gauge
//! function.
//!
//! With `X = −(i/ħ) Σ_q d_q·A(R_q)` and `Y = ∂ₜX = (i/ħ) Σ_q d_q·E(R_q)`,
//! `[X, Y]` is a c-number, so the transformed Hamiltonian picks up
//! `−(iħ/2)[X, Y] = Σ_{q>q'} ε_dip + ε_self` and the field operator shifts by
//! the classical dipole field: `E − Ẽ = −[X, E] = Σ_q E_dip(R − R_q, d_q)`.
//! Dipole moments are classical parameter vectors.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field_modes::{
    coincident_commutator, commutator_ae_modesum, mode_coefficients, operator_index, FieldKind, ModeLattice,
};
use crate::linalg::Vec3;
use crate::operator::{commutator, Monomial, OperatorPolynomial};
use crate::scalar::Scalar;
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole<T> {
    pub position: Vec3<T>,
    pub moment: Vec3<T>,
}

impl<T: Scalar> Dipole<T> {
    pub fn new(position: Vec3<T>, moment: Vec3<T>) -> Self {
        Self { position, moment }
    }
}

/// A set of point dipoles at pairwise distinct positions.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleConfig<T> {
    dipoles: Vec<Dipole<T>>,
    units: UnitSystem<T>,
}

impl<T: Scalar> DipoleConfig<T> {
    pub fn new(dipoles: Vec<Dipole<T>>, units: UnitSystem<T>) -> Result<Self> {
        units.validate()?;
        for (i, d) in dipoles.iter().enumerate() {
            if !(d.position.is_finite() && d.moment.is_finite()) {
                return Err(Error::InvalidArgument(format!("dipole {i} has non-finite components")));
            }
        }
        for q in 0..dipoles.len() {
            for qp in 0..q {
                if (dipoles[q].position - dipoles[qp].position).norm() == T::zero() {
                    return Err(Error::DegenerateSeparation(format!("dipoles {q} and {qp} coincide")));
                }
            }
        }
        Ok(Self { dipoles, units })
    }

    pub fn dipoles(&self) -> &[Dipole<T>] {
        &self.dipoles
    }

    pub fn units(&self) -> &UnitSystem<T> {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.dipoles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dipoles.is_empty()
    }
}

/// Static interaction energy of two dipoles at relative position `r`:
/// `(1/4πε₀)(1/R³){d·d' − 3(d·R̂)(d'·R̂)}`.
pub fn epsilon_dip<T: Scalar>(r: Vec3<T>, d: Vec3<T>, dp: Vec3<T>, units: &UnitSystem<T>) -> Result<T> {
    let dist = r.norm();
    if dist == T::zero() {
        return Err(Error::DegenerateSeparation("dipole interaction at zero separation".into()));
    }
    let hat = r * (T::one() / dist);
    Ok(units.coulomb_prefactor() / dist.powi(3) * (d.dot(dp) - T::lit(3.0) * d.dot(hat) * dp.dot(hat)))
}

/// Electrostatic field at displacement `r` from a point dipole `d`:
/// `−(1/4πε₀)(1/R³){d − 3(d·R̂)R̂}`.
pub fn e_dip_field<T: Scalar>(r: Vec3<T>, d: Vec3<T>, units: &UnitSystem<T>) -> Result<Vec3<T>> {
    let dist = r.norm();
    if dist == T::zero() {
        return Err(Error::DegenerateSeparation("dipole field at zero separation".into()));
    }
    let hat = r * (T::one() / dist);
    Ok((d - hat * (T::lit(3.0) * d.dot(hat))) * (-units.coulomb_prefactor() / dist.powi(3)))
}

/// Pair energies keyed by `(q, q')` with `q > q'`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairInteraction<T> {
    pub pair_energies: BTreeMap<(usize, usize), T>,
    pub total: T,
}

/// `Σ_{q>q'} ε_dip(R_q − R_q', d_q, d_q')`.
pub fn pairwise_interaction<T: Scalar>(config: &DipoleConfig<T>) -> Result<PairInteraction<T>> {
    let ds = config.dipoles();
    let mut pair_energies = BTreeMap::new();
    let mut total = T::zero();
    for q in 0..ds.len() {
        for qp in 0..q {
            let e = epsilon_dip(ds[q].position - ds[qp].position, ds[q].moment, ds[qp].moment, config.units())
                .map_err(|_| Error::DegenerateSeparation(format!("dipoles {q} and {qp} coincide")))?;
            pair_energies.insert((q, qp), e);
            total += e;
        }
    }
    Ok(PairInteraction { pair_energies, total })
}

fn dipole_sum_polynomial<T: Scalar>(
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    sigma: T,
    kind: FieldKind,
    prefactor: Complex<T>,
) -> Result<OperatorPolynomial<T>> {
    if config.is_empty() {
        return Err(Error::InvalidArgument("dipole configuration is empty".into()));
    }
    if !(sigma.is_finite() && sigma >= T::zero()) {
        return Err(Error::InvalidArgument(format!("smearing length must be non-negative, got {sigma}")));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut terms = Vec::with_capacity(6 * lattice.len());
    for mode in lattice.iter() {
        let mut ann = [zero; 3];
        let mut cre = [zero; 3];
        for dip in config.dipoles() {
            let c = mode_coefficients(lattice, &mode, dip.position, sigma, kind);
            for j in 0..3 {
                for m in 0..3 {
                    ann[j] += c.annihilation.entries[m][j] * dip.moment[m];
                    cre[j] += c.creation.entries[m][j] * dip.moment[m];
                }
            }
        }
        for j in 0..3 {
            let op = operator_index(mode.index, j);
            terms.push((Monomial::annihilation(op), ann[j] * prefactor));
            terms.push((Monomial::creation(op), cre[j] * prefactor));
        }
    }
    Ok(OperatorPolynomial::from_terms(terms))
}

/// Exponent `X = −(i/ħ) Σ_q d_q·A(R_q)` of the transformation `T = e^X`.
pub fn build_gm_generator<T: Scalar>(config: &DipoleConfig<T>, lattice: &ModeLattice<T>) -> Result<OperatorPolynomial<T>> {
    build_gm_generator_smeared(config, lattice, T::zero())
}

/// [`build_gm_generator`] with Gaussian-smeared field operators.
pub fn build_gm_generator_smeared<T: Scalar>(
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    sigma: T,
) -> Result<OperatorPolynomial<T>> {
    let pre = Complex::new(T::zero(), -T::one() / lattice.units().hbar);
    dipole_sum_polynomial(config, lattice, sigma, FieldKind::VectorPotential, pre)
}

/// `Y = ∂ₜX = (i/ħ) Σ_q d_q·E(R_q)`.
pub fn build_y_generator<T: Scalar>(config: &DipoleConfig<T>, lattice: &ModeLattice<T>) -> Result<OperatorPolynomial<T>> {
    build_y_generator_smeared(config, lattice, T::zero())
}

pub fn build_y_generator_smeared<T: Scalar>(
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    sigma: T,
) -> Result<OperatorPolynomial<T>> {
    let pre = Complex::new(T::zero(), T::one() / lattice.units().hbar);
    dipole_sum_polynomial(config, lattice, sigma, FieldKind::ElectricField, pre)
}

/// Field operator `E_m(R)` as a polynomial.
pub fn electric_field_operator<T: Scalar>(
    lattice: &ModeLattice<T>,
    point: Vec3<T>,
    component: usize,
    sigma: T,
) -> Result<OperatorPolynomial<T>> {
    if component > 2 {
        return Err(Error::InvalidArgument(format!("field component {component} out of range")));
    }
    let probe = DipoleConfig::new(vec![Dipole::new(point, Vec3::axis(component))], *lattice.units())?;
    dipole_sum_polynomial(&probe, lattice, sigma, FieldKind::ElectricField, Complex::new(T::one(), T::zero()))
}

fn check_pair<T: Scalar>(config: &DipoleConfig<T>, q: usize, qp: usize) -> Result<()> {
    if q >= config.len() || qp >= config.len() {
        return Err(Error::InvalidArgument(format!("dipole index ({q}, {qp}) out of range for {} dipoles", config.len())));
    }
    if q == qp {
        return Err(Error::InvalidArgument(
            "diagonal term requested; use epsilon_self_regularized for q = q'".into(),
        ));
    }
    Ok(())
}

/// Pair energy `ε_dip` for dipoles `q`, `qp` extracted from the mode-sum
/// commutator.
///
/// The pair enters `[X, Y] = (1/ħ²) Σ_{qq'} d_q·[A(R_q), E(R_q')]·d_q'` twice
/// (as `(q, q')` and `(q', q)`), and the Hamiltonian carries `−(iħ/2)[X, Y]`.
pub fn epsilon_dip_from_commutator<T: Scalar>(
    q: usize,
    qp: usize,
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    sigma: T,
) -> Result<T> {
    check_pair(config, q, qp)?;
    let (a, b) = (&config.dipoles()[q], &config.dipoles()[qp]);
    let hbar = lattice.units().hbar;
    let forward = commutator_ae_modesum(lattice, a.position, b.position, sigma)?.contract(a.moment, b.moment);
    let backward = commutator_ae_modesum(lattice, b.position, a.position, sigma)?.contract(b.moment, a.moment);
    let xy_pair = (forward + backward) / (hbar * hbar);
    let energy = Complex::new(T::zero(), -hbar / T::lit(2.0)) * xy_pair;
    Ok(energy.re)
}

/// Diagonal `q = q'` contribution for one dipole, `−(iħ/2)(1/ħ²) d·[A(R), E(R)]_σ·d`,
/// with the coincident commutator regularized by `sigma`. Diverges as `σ⁻³`.
pub fn epsilon_self_regularized<T: Scalar>(d: Vec3<T>, lattice: &ModeLattice<T>, sigma: T) -> Result<T> {
    let c0 = coincident_commutator(lattice, sigma)?;
    let hbar = lattice.units().hbar;
    let energy = Complex::new(T::zero(), -T::one() / (T::lit(2.0) * hbar)) * c0.contract(d, d);
    Ok(energy.re)
}

/// `Σ_q E_dip(R − R_q, d_q)`, the c-number by which `E` and `Ẽ` differ.
pub fn field_shift<T: Scalar>(config: &DipoleConfig<T>, point: Vec3<T>) -> Result<Vec3<T>> {
    let mut total = Vec3::zero();
    for (q, dip) in config.dipoles().iter().enumerate() {
        total += e_dip_field(point - dip.position, dip.moment, config.units())
            .map_err(|_| Error::DegenerateSeparation(format!("field point coincides with dipole {q}")))?;
    }
    Ok(total)
}

/// Field shift computed at operator level: `E − Ẽ = −[X, E(R)]` with
/// `Ẽ = e^X E e^{-X}` from the BCH closed form.
pub fn field_shift_from_commutator<T: Scalar>(
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    point: Vec3<T>,
    sigma: T,
) -> Result<Vec3<T>> {
    if sigma.is_nan() || sigma <= T::zero() {
        return Err(Error::InvalidArgument(format!("regulator sigma must be positive, got {sigma}")));
    }
    for (q, dip) in config.dipoles().iter().enumerate() {
        if (point - dip.position).norm() == T::zero() {
            return Err(Error::DegenerateSeparation(format!("field point coincides with dipole {q}")));
        }
    }
    let x = build_gm_generator_smeared(config, lattice, sigma)?;
    let mut shift = Vec3::zero();
    for m in 0..3 {
        let e = electric_field_operator(lattice, point, m, sigma)?;
        let xe = commutator(&x, &e);
        debug_assert!(xe.is_central());
        shift[m] = -xe.scalar_part().re;
    }
    Ok(shift)
}

/// Regulated self energy and the regulator it depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfEnergy<T> {
    pub value: T,
    pub sigma: T,
    /// Always set: the value diverges as the regulator is removed.
    pub regulator_dependent: bool,
}

/// A Hamiltonian term carried symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub label: &'static str,
    pub expression: &'static str,
}

/// Terms of the transformed Hamiltonian `H₀ + H_ext + Σ_{q>q'} ε_dip + ε_self`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformReport<T> {
    pub pair_energies: BTreeMap<(usize, usize), T>,
    pub total_interaction: T,
    pub self_energy: SelfEnergy<T>,
    pub h_ext: SymbolicTerm,
    pub h0: SymbolicTerm,
}

pub const H0_TERM: SymbolicTerm = SymbolicTerm {
    label: "H0",
    expression: "sum_q [ p_q^2/(2m) + V(r_q - R_q) ]",
};

pub const H_EXT_TERM: SymbolicTerm = SymbolicTerm {
    label: "H_ext",
    expression: "-sum_q d_q . E~(R_q, t)",
};

pub fn transform_report<T: Scalar>(
    config: &DipoleConfig<T>,
    lattice: &ModeLattice<T>,
    sigma: T,
) -> Result<TransformReport<T>> {
    let pairs = pairwise_interaction(config)?;
    let mut self_value = T::zero();
    for dip in config.dipoles() {
        self_value += epsilon_self_regularized(dip.moment, lattice, sigma)?;
    }
    Ok(TransformReport {
        pair_energies: pairs.pair_energies,
        total_interaction: pairs.total,
        self_energy: SelfEnergy { value: self_value, sigma, regulator_dependent: true },
        h_ext: H_EXT_TERM,
        h0: H0_TERM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn units() -> UnitSystem<f64> {
        UnitSystem::natural()
    }

    fn v(x: f64, y: f64, z: f64) -> Vec3<f64> {
        Vec3::new(x, y, z)
    }

    fn lattice(n: usize) -> ModeLattice<f64> {
        ModeLattice::new(1.0, n, units()).unwrap()
    }

    #[test]
    fn epsilon_dip_examples() {
        let u = units();
        let e = epsilon_dip(v(0., 0., 1.), v(1., 0., 0.), v(1., 0., 0.), &u).unwrap();
        assert!((e - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((e - 0.0795775).abs() < 1e-7);
        let e = epsilon_dip(v(0., 0., 1.), v(0., 0., 1.), v(0., 0., 1.), &u).unwrap();
        assert!((e + 1.0 / (2.0 * PI)).abs() < 1e-15);
        let e2 = epsilon_dip(v(0., 0., 2.), v(0., 0., 1.), v(0., 0., 1.), &u).unwrap();
        assert!((e2 * 8.0 - e).abs() < 1e-15);
        assert!(epsilon_dip(Vec3::zero(), v(1., 0., 0.), v(1., 0., 0.), &u).is_err());
    }

    #[test]
    fn e_dip_examples() {
        let u = units();
        let f = e_dip_field(v(0., 0., 1.), v(0., 0., 1.), &u).unwrap();
        assert!((f - v(0., 0., 1.0 / (2.0 * PI))).norm() < 1e-15);
        let f = e_dip_field(v(0., 0., 1.), v(1., 0., 0.), &u).unwrap();
        assert!((f - v(-1.0 / (4.0 * PI), 0., 0.)).norm() < 1e-15);
        assert!(matches!(e_dip_field(Vec3::zero(), v(1., 0., 0.), &u), Err(Error::DegenerateSeparation(_))));
    }

    #[test]
    fn pairwise_examples() {
        let u = units();
        let one = DipoleConfig::new(vec![Dipole::new(Vec3::zero(), v(1., 0., 0.))], u).unwrap();
        let p = pairwise_interaction(&one).unwrap();
        assert!(p.pair_energies.is_empty() && p.total == 0.0);

        let dx = v(1., 0., 0.);
        let two = DipoleConfig::new(vec![Dipole::new(Vec3::zero(), dx), Dipole::new(v(0., 0., 1.), dx)], u).unwrap();
        let p = pairwise_interaction(&two).unwrap();
        assert_eq!(p.pair_energies.len(), 1);
        assert!((p.pair_energies[&(1, 0)] - 1.0 / (4.0 * PI)).abs() < 1e-15);

        let three = DipoleConfig::new(
            (0..3).map(|i| Dipole::new(v(0., 0., i as f64), dx)).collect(),
            u,
        )
        .unwrap();
        let p = pairwise_interaction(&three).unwrap();
        assert_eq!(p.pair_energies.len(), 3);
        let by_calls: f64 = [(1., 1.), (1., 1.), (2., 1.)]
            .iter()
            .map(|(z, _)| epsilon_dip(v(0., 0., *z), dx, dx, &u).unwrap())
            .sum();
        assert!((p.total - by_calls).abs() < 1e-15);
        assert!((p.total - (1.0 + 1.0 + 0.125) / (4.0 * PI)).abs() < 1e-15);
        assert!((p.total - p.pair_energies.values().sum::<f64>()).abs() < 1e-15);
    }

    #[test]
    fn coincident_dipoles_rejected() {
        let err = DipoleConfig::new(
            vec![Dipole::new(v(1., 1., 1.), v(1., 0., 0.)), Dipole::new(v(1., 1., 1.), v(0., 1., 0.))],
            units(),
        )
        .unwrap_err();
        assert_eq!(err, Error::DegenerateSeparation("dipoles 1 and 0 coincide".into()));
    }

    #[test]
    fn generator_examples() {
        let lat = lattice(2);
        let zero = DipoleConfig::new(vec![Dipole::new(v(0.1, 0.2, 0.3), Vec3::zero())], units()).unwrap();
        assert!(build_gm_generator(&zero, &lat).unwrap().is_zero());
        assert!(build_y_generator(&zero, &lat).unwrap().is_zero());

        let empty = DipoleConfig::new(vec![], units()).unwrap();
        assert!(matches!(build_gm_generator(&empty, &lat), Err(Error::InvalidArgument(_))));

        let a = Dipole::new(v(0.1, 0.2, 0.3), v(0.3, -1.0, 0.5));
        let b = Dipole::new(v(0.6, 0.4, 0.1), v(1.0, 0.2, -0.7));
        let xa = build_gm_generator(&DipoleConfig::new(vec![a], units()).unwrap(), &lat).unwrap();
        let xb = build_gm_generator(&DipoleConfig::new(vec![b], units()).unwrap(), &lat).unwrap();
        let xab = build_gm_generator(&DipoleConfig::new(vec![a, b], units()).unwrap(), &lat).unwrap();
        assert!(xab.max_difference(&(xa + xb)) < 1e-14);
        assert!(xab.is_anti_hermitian(1e-13));
        assert_eq!(xab.degree(), 1);
    }

    #[test]
    fn y_coefficients_are_frequency_weighted_x() {
        let lat = lattice(2);
        let cfg = DipoleConfig::new(vec![Dipole::new(v(0.1, 0.7, 0.3), v(0.3, -1.0, 0.5))], units()).unwrap();
        let x = build_gm_generator(&cfg, &lat).unwrap();
        let y = build_y_generator(&cfg, &lat).unwrap();
        for mode in lat.iter() {
            for j in 0..3 {
                let op = operator_index(mode.index, j);
                let io = Complex::new(0.0, mode.omega);
                let ann = y.coefficient(&Monomial::annihilation(op));
                let cre = y.coefficient(&Monomial::creation(op));
                let scale = ann.norm().max(1e-300);
                assert!((ann - io * -x.coefficient(&Monomial::annihilation(op))).norm() <= 1e-12 * scale);
                assert!((cre + io * -x.coefficient(&Monomial::creation(op))).norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn commutator_route_pair_bookkeeping() {
        // At coarse resolution the mode-sum kernel is inexact, but the factor
        // relating the contraction to ε is fixed: ε = −(i/ħ) d·C·d'.
        let lat = lattice(4);
        let a = Dipole::new(v(0.2, 0.3, 0.4), v(1.0, 0.0, 0.2));
        let b = Dipole::new(v(0.5, 0.3, 0.45), v(0.1, 1.0, 0.0));
        let cfg = DipoleConfig::new(vec![a, b], units()).unwrap();
        let c = commutator_ae_modesum(&lat, a.position, b.position, 0.05).unwrap();
        let direct = (Complex::new(0.0, -1.0) * c.contract(a.moment, b.moment)).re;
        let e = epsilon_dip_from_commutator(0, 1, &cfg, &lat, 0.05).unwrap();
        assert!((e - direct).abs() < 1e-12 * direct.abs());
        let swapped = epsilon_dip_from_commutator(1, 0, &cfg, &lat, 0.05).unwrap();
        assert!((e - swapped).abs() < 1e-12 * e.abs());
        assert!(matches!(epsilon_dip_from_commutator(0, 0, &cfg, &lat, 0.05), Err(Error::InvalidArgument(_))));
        assert!(epsilon_dip_from_commutator(0, 2, &cfg, &lat, 0.05).is_err());
    }

    #[test]
    fn zero_moment_gives_zero_pair_energy() {
        let lat = lattice(3);
        let cfg = DipoleConfig::new(
            vec![Dipole::new(v(0.2, 0.3, 0.4), Vec3::zero()), Dipole::new(v(0.5, 0.3, 0.4), v(1., 0., 0.))],
            units(),
        )
        .unwrap();
        assert_eq!(epsilon_dip_from_commutator(0, 1, &cfg, &lat, 0.05).unwrap(), 0.0);
    }

    #[test]
    fn self_energy_basics() {
        let lat = lattice(16);
        assert_eq!(epsilon_self_regularized(Vec3::zero(), &lat, 0.05).unwrap(), 0.0);
        let d = v(0.3, -0.4, 1.1);
        let e1 = epsilon_self_regularized(d, &lat, 0.05).unwrap();
        let e2 = epsilon_self_regularized(d * 2.0, &lat, 0.05).unwrap();
        assert!((e2 - 4.0 * e1).abs() < 1e-12 * e1.abs());
        assert!(e1 < 0.0);
        assert!(matches!(epsilon_self_regularized(d, &lat, 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(epsilon_self_regularized(d, &lat, -1.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn field_shift_examples() {
        let u = units();
        let empty = DipoleConfig::new(vec![], u).unwrap();
        assert_eq!(field_shift(&empty, v(1., 2., 3.)).unwrap(), Vec3::zero());
        let d = Dipole::new(v(0.5, 0.5, 0.5), v(0.2, 0.1, 1.0));
        let one = DipoleConfig::new(vec![d], u).unwrap();
        let r = v(0.5, 0.5, 1.5);
        assert_eq!(field_shift(&one, r).unwrap(), e_dip_field(r - d.position, d.moment, &u).unwrap());
        assert!(matches!(field_shift(&one, d.position), Err(Error::DegenerateSeparation(_))));
    }

    #[test]
    fn report_composition() {
        let lat = lattice(8);
        let empty = DipoleConfig::new(vec![], units()).unwrap();
        let r = transform_report(&empty, &lat, 0.05).unwrap();
        assert!(r.pair_energies.is_empty() && r.total_interaction == 0.0 && r.self_energy.value == 0.0);

        let dx = v(1., 0., 0.);
        let cfg = DipoleConfig::new(vec![Dipole::new(Vec3::zero(), dx), Dipole::new(v(0., 0., 1.), dx)], units()).unwrap();
        let r = transform_report(&cfg, &lat, 0.05).unwrap();
        assert!((r.pair_energies[&(1, 0)] - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let per = epsilon_self_regularized(dx, &lat, 0.05).unwrap();
        assert!((r.self_energy.value - 2.0 * per).abs() < 1e-12 * per.abs());
        assert!(r.self_energy.regulator_dependent);
        assert_eq!(r.total_interaction, r.pair_energies.values().sum::<f64>());
        assert_eq!(r.h_ext.label, "H_ext");
    }
}
