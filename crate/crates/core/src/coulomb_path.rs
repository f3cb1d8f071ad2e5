//! Line-integral gauge generator for a point charge.
//!
//! `X = (i/ħ) q ∫₀ A(s)·ds` along a polyline from the origin. With
//! `[A_m'(s), E_m(r)] = (iħ/4πε₀) ∂/∂ρ_m' (ρ_m/ρ³)`, `ρ = s − r`, the
//! commutator `[X, E_m(r)]` is a line integral of a total derivative: it
//! depends only on the endpoints and tends to `−E_c(r)` as the far endpoint
//! recedes.

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::quadrature::{integrate_vec3, QuadratureOptions};
use crate::scalar::Scalar;
use crate::units::UnitSystem;

/// Default distance of the far endpoint, in units of the field-point radius.
pub const DEFAULT_ENDPOINT_FACTOR: f64 = 200.0;

/// Polyline carrying charge `q`, starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargePath<T> {
    vertices: Vec<Vec3<T>>,
    charge: T,
}

impl<T: Scalar> ChargePath<T> {
    pub fn new(vertices: Vec<Vec3<T>>, charge: T) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument("charge path needs at least two vertices".into()));
        }
        if vertices[0] != Vec3::zero() {
            return Err(Error::InvalidArgument("charge path must start at the origin".into()));
        }
        if !charge.is_finite() || vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("charge path has non-finite values".into()));
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("vertices {i} and {} coincide", i + 1)));
        }
        Ok(Self { vertices, charge })
    }

    /// Straight segment from the origin along `direction`.
    pub fn straight(direction: Vec3<T>, length: T, charge: T) -> Result<Self> {
        let dir = direction
            .normalized()
            .ok_or_else(|| Error::InvalidArgument("path direction must be nonzero".into()))?;
        Self::new(vec![Vec3::zero(), dir * length], charge)
    }

    /// Axis-aligned staircase from the origin to `endpoint`: x leg, then y, then z.
    pub fn staircase(endpoint: Vec3<T>, charge: T) -> Result<Self> {
        let mut vertices = vec![Vec3::zero()];
        let mut cur = Vec3::zero();
        for axis in 0..3 {
            if endpoint[axis] != T::zero() {
                cur[axis] = endpoint[axis];
                vertices.push(cur);
            }
        }
        Self::new(vertices, charge)
    }

    pub fn vertices(&self) -> &[Vec3<T>] {
        &self.vertices
    }

    pub fn charge(&self) -> T {
        self.charge
    }

    pub fn endpoint(&self) -> Vec3<T> {
        *self.vertices.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Vec3<T>, Vec3<T>)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn with_charge(&self, charge: T) -> Self {
        Self { vertices: self.vertices.clone(), charge }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegralOptions<T> {
    pub quadrature: QuadratureOptions<T>,
    /// Minimum allowed distance between the path and the field point, in
    /// units of `|r|`.
    pub exclusion_factor: T,
}

impl<T: Scalar> Default for LineIntegralOptions<T> {
    fn default() -> Self {
        Self { quadrature: QuadratureOptions::default(), exclusion_factor: T::lit(1e-6) }
    }
}

/// `E_c(r) = (q/4πε₀) r/r³`.
pub fn coulomb_field<T: Scalar>(r: Vec3<T>, q: T, units: &UnitSystem<T>) -> Result<Vec3<T>> {
    let d = r.norm();
    if d == T::zero() {
        return Err(Error::DegenerateSeparation("Coulomb field at the charge position".into()));
    }
    Ok(r * (q * units.coulomb_prefactor() / d.powi(3)))
}

/// `∂/∂ρ_m' (ρ_m/ρ³) = (δ_mm' − 3ρ̂_mρ̂_m')/ρ³`, row `m`, column `m'`.
pub fn line_kernel<T: Scalar>(rho: Vec3<T>) -> [[T; 3]; 3] {
    let r2 = rho.norm_squared();
    let r = r2.sqrt();
    let inv3 = T::one() / (r2 * r);
    let mut k = [[T::zero(); 3]; 3];
    for (m, row) in k.iter_mut().enumerate() {
        for (n, e) in row.iter_mut().enumerate() {
            let delta = if m == n { T::one() } else { T::zero() };
            *e = (delta - T::lit(3.0) * rho[m] * rho[n] / r2) * inv3;
        }
    }
    k
}

/// `ρ/ρ³`, the antiderivative of [`line_kernel`].
pub fn kernel_antiderivative<T: Scalar>(rho: Vec3<T>) -> Vec3<T> {
    rho * (T::one() / rho.norm().powi(3))
}

fn segment_distance<T: Scalar>(a: Vec3<T>, b: Vec3<T>, p: Vec3<T>) -> T {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm_squared()).max(T::zero()).min(T::one());
    (a + ab * t - p).norm()
}

fn check_path<T: Scalar>(path: &ChargePath<T>, r: Vec3<T>, exclusion_factor: T) -> Result<()> {
    let rn = r.norm();
    if rn == T::zero() {
        return Err(Error::DegenerateSeparation("field point at the origin".into()));
    }
    let limit = exclusion_factor * rn;
    for (i, (a, b)) in path.segments().enumerate() {
        let d = segment_distance(a, b, r);
        if d <= limit {
            return Err(Error::PathSingularity { segment: i, distance: d.to_f64().unwrap_or(f64::NAN) });
        }
    }
    Ok(())
}

/// The c-number `[X, E_m(r)]` for `m = x, y, z`, by adaptive quadrature of the
/// kernel along each segment.
pub fn commutator_line_integral<T: Scalar>(path: &ChargePath<T>, r: Vec3<T>, units: &UnitSystem<T>) -> Result<Vec3<T>> {
    commutator_line_integral_with(path, r, units, &LineIntegralOptions::default())
}

pub fn commutator_line_integral_with<T: Scalar>(
    path: &ChargePath<T>,
    r: Vec3<T>,
    units: &UnitSystem<T>,
    opts: &LineIntegralOptions<T>,
) -> Result<Vec3<T>> {
    check_path(path, r, opts.exclusion_factor)?;
    let mut integral = Vec3::zero();
    for (a, b) in path.segments() {
        let step = b - a;
        let res = integrate_vec3(
            |t| {
                let k = line_kernel(a + step * t - r);
                Vec3::new(
                    k[0][0] * step.x + k[0][1] * step.y + k[0][2] * step.z,
                    k[1][0] * step.x + k[1][1] * step.y + k[1][2] * step.z,
                    k[2][0] * step.x + k[2][1] * step.y + k[2][2] * step.z,
                )
            },
            T::zero(),
            T::one(),
            &opts.quadrature,
        );
        integral += res.value;
    }
    // (i/ħ) q · (iħ/4πε₀) = −q/4πε₀
    Ok(integral * (-path.charge() * units.coulomb_prefactor()))
}

/// The same commutator from the endpoint values of the antiderivative.
pub fn commutator_endpoint_formula<T: Scalar>(path: &ChargePath<T>, r: Vec3<T>, units: &UnitSystem<T>) -> Result<Vec3<T>> {
    check_path(path, r, T::zero())?;
    let start = kernel_antiderivative(-r);
    let end = kernel_antiderivative(path.endpoint() - r);
    Ok((end - start) * (-path.charge() * units.coulomb_prefactor()))
}

/// `Ẽ(r) − E(r) = [X, E(r)]`, where `Ẽ = e^X E e^{-X} = E + [X, E]`.
pub fn transformed_field<T: Scalar>(path: &ChargePath<T>, r: Vec3<T>, units: &UnitSystem<T>) -> Result<Vec3<T>> {
    commutator_line_integral(path, r, units)
}

/// Max-norm difference of the two line integrals divided by `|E_c(r)|`.
pub fn path_independence_residual<T: Scalar>(
    path1: &ChargePath<T>,
    path2: &ChargePath<T>,
    r: Vec3<T>,
    units: &UnitSystem<T>,
) -> Result<T> {
    if path1.charge() != path2.charge() {
        return Err(Error::InvalidArgument("paths carry different charges".into()));
    }
    let diff = (commutator_line_integral(path1, r, units)? - commutator_line_integral(path2, r, units)?).max_abs();
    let scale = coulomb_field(r, path1.charge(), units)?.norm();
    Ok(if scale > T::zero() { diff / scale } else { diff })
}
