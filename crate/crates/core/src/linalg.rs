//! Small fixed-size vectors and tensors used for positions, fields and
//! commutator kernels.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;

use crate::scalar::Scalar;

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    #[inline]
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Unit vector along axis 0, 1 or 2.
    pub fn axis(i: usize) -> Self {
        let mut v = Self::zero();
        v[i] = T::one();
        v
    }

    #[inline]
    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() {
            Some(self * (T::one() / n))
        } else {
            None
        }
    }

    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    #[inline]
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut T {
        match i {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> SubAssign for Vec3<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> std::iter::Sum for Vec3<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

/// Complex 3×3 tensor, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor3<T> {
    pub entries: [[Complex<T>; 3]; 3],
}

impl<T: Scalar> Default for Tensor3<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Tensor3<T> {
    pub fn zero() -> Self {
        Self { entries: [[Complex::new(T::zero(), T::zero()); 3]; 3] }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut t = Self::zero();
        for m in 0..3 {
            for n in 0..3 {
                t.entries[m][n] = f(m, n);
            }
        }
        t
    }

    /// Real tensor `f(m, n)` embedded in the complex one.
    pub fn from_real_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Self::from_fn(|m, n| Complex::new(f(m, n), T::zero()))
    }

    /// Transverse projector δ − k̂k̂ for a nonzero `k`.
    pub fn transverse_projector(k: Vec3<T>) -> Self {
        let k2 = k.norm_squared();
        Self::from_real_fn(|m, n| {
            let delta = if m == n { T::one() } else { T::zero() };
            delta - k[m] * k[n] / k2
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(|m, n| self.entries[m][n] * s)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|m, n| self.entries[n][m])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|m, n| self.entries[m][n].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `u · T · v`.
    pub fn contract(&self, u: Vec3<T>, v: Vec3<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for m in 0..3 {
            for n in 0..3 {
                acc += self.entries[m][n] * (u[m] * v[n]);
            }
        }
        acc
    }

    /// `T · v`.
    pub fn apply(&self, v: Vec3<T>) -> [Complex<T>; 3] {
        let mut out = [Complex::new(T::zero(), T::zero()); 3];
        for (m, row) in self.entries.iter().enumerate() {
            for n in 0..3 {
                out[m] += row[n] * v[n];
            }
        }
        out
    }

    /// `Q · T · Qᵀ` for a real matrix `Q`.
    pub fn conjugate_by(&self, q: &[[T; 3]; 3]) -> Self {
        Self::from_fn(|m, n| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for a in 0..3 {
                for b in 0..3 {
                    acc += self.entries[a][b] * (q[m][a] * q[n][b]);
                }
            }
            acc
        })
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T> Index<(usize, usize)> for Tensor3<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (m, n): (usize, usize)) -> &Complex<T> {
        &self.entries[m][n]
    }
}

impl<T> IndexMut<(usize, usize)> for Tensor3<T> {
    #[inline]
    fn index_mut(&mut self, (m, n): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[m][n]
    }
}

impl<T: Scalar> Add for Tensor3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_fn(|m, n| self.entries[m][n] + o.entries[m][n])
    }
}

impl<T: Scalar> AddAssign for Tensor3<T> {
    fn add_assign(&mut self, o: Self) {
        for m in 0..3 {
            for n in 0..3 {
                self.entries[m][n] += o.entries[m][n];
            }
        }
    }
}

impl<T: Scalar> Sub for Tensor3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_fn(|m, n| self.entries[m][n] - o.entries[m][n])
    }
}
