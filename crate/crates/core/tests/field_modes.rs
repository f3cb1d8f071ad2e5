use dipole_gauge::{analytic_dipole_tensor, commutator_ae_modesum, max_relative_deviation, ModeLattice, UnitSystem, Vec3};
use proptest::prelude::*;

fn lattice(n: usize) -> ModeLattice<f64> {
    ModeLattice::new(1.0, n, UnitSystem::natural()).unwrap()
}

/// Continuum value of the smeared `[A_z(R), E_z(R')]` for `ρ = R − R'` along z,
/// by composite Simpson integration of the radial form
/// `−(i/π²) ∫ k² e^{-k²σ²} j₁(kρ)/(kρ) dk` (ħ = ε₀ = 1).
fn radial_zz(rho: f64, sigma: f64) -> f64 {
    let kmax = 12.0 / sigma;
    let n = 400_000;
    let h = kmax / n as f64;
    let f = |k: f64| -> f64 {
        if k == 0.0 {
            return 0.0;
        }
        let x = k * rho;
        let j1 = x.sin() / (x * x) - x.cos() / x;
        k * k * (-(k * sigma).powi(2)).exp() * j1 / x
    };
    let mut s = f(0.0) + f(kmax);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    -(s * h / 3.0) / (std::f64::consts::PI * std::f64::consts::PI)
}

#[test]
fn radial_oracle_agrees_with_closed_form_and_mode_sum() {
    let rho = 0.1;
    let sigma = rho / 6.0;
    let radial = radial_zz(rho, sigma);
    let closed = analytic_dipole_tensor(Vec3::new(0.0, 0.0, rho), &UnitSystem::natural()).unwrap();
    // closed form zz = −2/(4πρ³) = −159.15
    assert!((radial - closed[(2, 2)].im).abs() < 1e-3 * closed[(2, 2)].im.abs(), "radial {radial}");
    assert!((closed[(2, 2)].im + 159.15).abs() < 0.01);

    let sum = commutator_ae_modesum(&lattice(24), Vec3::new(0.5, 0.5, 0.5 + rho), Vec3::new(0.5, 0.5, 0.5), sigma).unwrap();
    assert!((sum[(2, 2)].im - radial).abs() < 0.02 * radial.abs());
}

#[test]
fn mode_sum_reproduces_dipole_tensor_along_z() {
    let rho = Vec3::new(0.0, 0.0, 0.1);
    let c = commutator_ae_modesum(&lattice(24), rho, Vec3::zero(), 0.1 / 6.0).unwrap();
    let want = [79.58, 79.58, -159.15];
    for m in 0..3 {
        assert!((c[(m, m)].im - want[m]).abs() < 0.02 * want[m].abs(), "entry {m}: {}", c[(m, m)].im);
        for n in 0..3 {
            assert!(c[(m, n)].re.abs() < 1e-9 * c.max_abs());
            if m != n {
                assert!(c[(m, n)].norm() < 0.02 * c.max_abs());
            }
        }
    }
    assert!(c.trace().norm() / c.norm() < 0.02);
}

#[test]
fn axis_permutation_permutes_diagonal() {
    let lat = lattice(16);
    let cz = commutator_ae_modesum(&lat, Vec3::new(0.0, 0.0, 0.1), Vec3::zero(), 0.025).unwrap();
    let cx = commutator_ae_modesum(&lat, Vec3::new(0.1, 0.0, 0.0), Vec3::zero(), 0.025).unwrap();
    assert!((cz[(2, 2)] - cx[(0, 0)]).norm() < 1e-10 * cz.max_abs());
    assert!((cz[(0, 0)] - cx[(2, 2)]).norm() < 1e-10 * cz.max_abs());
}

#[test]
fn deviation_does_not_grow_when_lattice_doubles() {
    for rho in [Vec3::new(0.0, 0.0, 0.1), Vec3::new(0.125, 0.0, 0.0), Vec3::new(0.06, 0.06, 0.06)] {
        let sigma = rho.norm() / 6.0;
        let exact = analytic_dipole_tensor(rho, &UnitSystem::natural()).unwrap();
        let dev = |n| max_relative_deviation(&commutator_ae_modesum(&lattice(n), rho, Vec3::zero(), sigma).unwrap(), &exact);
        let (coarse, fine) = (dev(12), dev(24));
        assert!(fine <= coarse, "ρ={rho:?}: N=12 {coarse} vs N=24 {fine}");
    }
}

#[test]
fn unit_system_scales_commutator() {
    let units = UnitSystem::new(2.0, 0.5, 3.0).unwrap();
    let rho = Vec3::new(0.0, 0.1, 0.0);
    let scaled = ModeLattice::new(1.0, 8, units).unwrap();
    let a = commutator_ae_modesum(&scaled, rho, Vec3::zero(), 0.03).unwrap();
    let b = commutator_ae_modesum(&lattice(8), rho, Vec3::zero(), 0.03).unwrap();
    // ħ/ε₀ = 4; c cancels between ω in E and 1/√ω in the amplitudes.
    assert!((a[(1, 1)] - b[(1, 1)] * 4.0).norm() < 1e-10 * a.max_abs());
    let closed = analytic_dipole_tensor(rho, &units).unwrap();
    let natural = analytic_dipole_tensor(rho, &UnitSystem::natural()).unwrap();
    assert!((closed[(1, 1)] - natural[(1, 1)] * 4.0).norm() < 1e-12);
}

#[test]
fn single_precision_matches_double() {
    let lat32 = ModeLattice::<f32>::new(1.0, 10, UnitSystem::natural()).unwrap();
    let c32 = commutator_ae_modesum(&lat32, Vec3::new(0.0f32, 0.0, 0.1), Vec3::zero(), 0.025).unwrap();
    let c64 = commutator_ae_modesum(&lattice(10), Vec3::new(0.0, 0.0, 0.1), Vec3::zero(), 0.025).unwrap();
    for m in 0..3 {
        let rel = (c32[(m, m)].im as f64 - c64[(m, m)].im).abs() / c64.max_abs();
        assert!(rel < 1e-4, "entry {m}: {rel}");
    }
}

fn rotation(axis: Vec3<f64>, angle: f64) -> [[f64; 3]; 3] {
    let k = axis.normalized().unwrap();
    let (s, c) = angle.sin_cos();
    let mut q = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let cross = match (i, j) {
                (0, 1) => -k.z,
                (0, 2) => k.y,
                (1, 0) => k.z,
                (1, 2) => -k.x,
                (2, 0) => -k.y,
                (2, 1) => k.x,
                _ => 0.0,
            };
            q[i][j] = c * delta + s * cross + (1.0 - c) * k[i] * k[j];
        }
    }
    q
}

fn rotate(q: &[[f64; 3]; 3], v: Vec3<f64>) -> Vec3<f64> {
    Vec3::new(
        q[0][0] * v.x + q[0][1] * v.y + q[0][2] * v.z,
        q[1][0] * v.x + q[1][1] * v.y + q[1][2] * v.z,
        q[2][0] * v.x + q[2][1] * v.y + q[2][2] * v.z,
    )
}

fn unit_vec() -> impl Strategy<Value = Vec3<f64>> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(x, y, z)| Vec3::new(x, y, z))
        .prop_filter("nonzero", |v| v.norm() > 0.1)
}

proptest! {
    #[test]
    fn analytic_tensor_is_rotation_covariant(rho in unit_vec(), axis in unit_vec(), angle in -3.2..3.2f64, scale in 0.1..5.0f64) {
        let u = UnitSystem::natural();
        let rho = rho * scale;
        let q = rotation(axis, angle);
        let lhs = analytic_dipole_tensor(rotate(&q, rho), &u).unwrap();
        let rhs = analytic_dipole_tensor(rho, &u).unwrap().conjugate_by(&q);
        prop_assert!((lhs - rhs).max_abs() <= 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn analytic_tensor_is_traceless_and_symmetric(rho in unit_vec()) {
        let t = analytic_dipole_tensor(rho, &UnitSystem::natural()).unwrap();
        prop_assert!(t.trace().norm() <= 1e-12 * t.max_abs());
        prop_assert!((t - t.transpose()).max_abs() <= 1e-15 * t.max_abs());
    }
}
