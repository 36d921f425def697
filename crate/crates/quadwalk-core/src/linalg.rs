//! Dense complex linear algebra fixed at dimension 4.
//!
//! The walk has exactly four internal states, so everything here is stored
//! inline and fully unrolled; there is no generic-N machinery.

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as Complex;

/// A 4-component complex amplitude vector.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct C4Vector(pub [Complex; 4]);

impl C4Vector {
    pub const ZERO: Self = Self([Complex::new(0.0, 0.0); 4]);

    pub fn new(v0: Complex, v1: Complex, v2: Complex, v3: Complex) -> Self {
        Self([v0, v1, v2, v3])
    }

    /// Basis vector with a 1 in component `i`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::ZERO;
        v.0[i] = Complex::new(1.0, 0.0);
        v
    }

    /// Squared Euclidean norm, `Σ |v_i|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Max component-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for C4Vector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for C4Vector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for C4Vector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

/// A dense 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C4Matrix(pub [[Complex; 4]; 4]);

impl C4Matrix {
    pub const ZERO: Self = Self([[Complex::new(0.0, 0.0); 4]; 4]);

    pub fn identity() -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            m.0[i][i] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(d: [Complex; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, entry) in d.into_iter().enumerate() {
            m.0[i][i] = entry;
        }
        m
    }

    pub fn from_rows(rows: [[Complex; 4]; 4]) -> Self {
        Self(rows)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn mat_vec(&self, v: &C4Vector) -> C4Vector {
        let mut out = C4Vector::ZERO;
        for i in 0..4 {
            let row = &self.0[i];
            out.0[i] = row[0] * v.0[0] + row[1] * v.0[1] + row[2] * v.0[2] + row[3] * v.0[3];
        }
        out
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        let mut out = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        m
    }

    /// Max entry-wise deviation of `self · self†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.mat_mul(&self.adjoint());
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod.0[i][j] - Complex::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Whether `self · self†` is entry-wise within `tol` of the identity.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub fn determinant(&self) -> Complex {
        // Laplace expansion along the first row; four 3×3 cofactors.
        let m = &self.0;
        let det3 = |r: [usize; 3], c: [usize; 3]| -> Complex {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        m[0][0] * det3([1, 2, 3], [1, 2, 3]) - m[0][1] * det3([1, 2, 3], [0, 2, 3])
            + m[0][2] * det3([1, 2, 3], [0, 1, 3])
            - m[0][3] * det3([1, 2, 3], [0, 1, 2])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

impl Mul<C4Vector> for C4Matrix {
    type Output = C4Vector;
    fn mul(self, v: C4Vector) -> C4Vector {
        self.mat_vec(&v)
    }
}

impl Mul for C4Matrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mat_mul(&rhs)
    }
}

impl Add for C4Matrix {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}
