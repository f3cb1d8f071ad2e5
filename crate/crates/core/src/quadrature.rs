//! Globally adaptive Gauss-Kronrod (7/15) quadrature for vector-valued
//! integrands on a finite interval.

use crate::linalg::Vec3;
use crate::scalar::Scalar;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_intervals: usize,
}

impl<T: Scalar> Default for QuadratureOptions<T> {
    fn default() -> Self {
        Self { rel_tol: T::lit(1e-9), abs_tol: T::zero(), max_intervals: 2000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: Vec3<T>,
    /// Sum of per-interval |K15 − G7| estimates (max-norm).
    pub error_estimate: T,
    pub intervals: usize,
    pub converged: bool,
}

struct Interval<T> {
    a: T,
    b: T,
    value: Vec3<T>,
    error: T,
}

fn kronrod<T: Scalar>(f: &impl Fn(T) -> Vec3<T>, a: T, b: T) -> Interval<T> {
    let half = (b - a) / T::lit(2.0);
    let centre = (a + b) / T::lit(2.0);
    let fc = f(centre);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let pair = f(centre - dx) + f(centre + dx);
        k += pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            g += pair * T::lit(WG[i / 2]);
        }
    }
    let value = k * half;
    let error = ((k - g) * half).max_abs();
    Interval { a, b, value, error }
}

/// Integrates `f` over `[a, b]`, repeatedly bisecting the interval with the
/// largest error estimate until the total estimate falls below
/// `max(abs_tol, rel_tol · |I|)`.
pub fn integrate_vec3<T: Scalar>(f: impl Fn(T) -> Vec3<T>, a: T, b: T, opts: &QuadratureOptions<T>) -> QuadratureResult<T> {
    let mut intervals = vec![kronrod(&f, a, b)];
    loop {
        let value: Vec3<T> = intervals.iter().map(|iv| iv.value).sum();
        let error: T = intervals.iter().map(|iv| iv.error).sum();
        let target = opts.abs_tol.max(opts.rel_tol * value.max_abs());
        if error <= target || intervals.len() >= opts.max_intervals {
            return QuadratureResult { value, error_estimate: error, intervals: intervals.len(), converged: error <= target };
        }
        let worst = intervals
            .iter()
            .enumerate()
            .fold(0, |best, (i, iv)| if iv.error > intervals[best].error { i } else { best });
        let iv = intervals.swap_remove(worst);
        let mid = (iv.a + iv.b) / T::lit(2.0);
        if !(mid > iv.a && mid < iv.b) {
            // Interval cannot be split further at this precision.
            intervals.push(iv);
            let value: Vec3<T> = intervals.iter().map(|iv| iv.value).sum();
            let error: T = intervals.iter().map(|iv| iv.error).sum();
            return QuadratureResult { value, error_estimate: error, intervals: intervals.len(), converged: false };
        }
        intervals.push(kronrod(&f, iv.a, mid));
        intervals.push(kronrod(&f, mid, iv.b));
    }
}
