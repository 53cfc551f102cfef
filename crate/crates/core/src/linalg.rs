//! Dense complex matrices for the handful of small operators this crate
//! works with (dimension 2 through 6).
//!
//! Everything here is a value type. Operator overloads (`&a * &b`, `&a + &b`)
//! panic on a dimension mismatch; the fallible [`ComplexMatrix::mat_mul`],
//! [`ComplexMatrix::commutator`] and [`ComplexMatrix::anticommutator`] return
//! an error instead.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when validating Hermitian input to [`ComplexMatrix::expm_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square matrix of complex entries stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                data.push(f(r, col));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row slices. Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        for row in rows {
            assert_eq!(row.as_ref().len(), dim, "rows must form a square matrix");
        }
        Self::from_fn(dim, |r, col| rows[r].as_ref()[col])
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        for row in rows {
            assert_eq!(row.as_ref().len(), dim, "rows must form a square matrix");
        }
        Self::from_fn(dim, |r, col| re(rows[r].as_ref()[col]))
    }

    /// Builds a matrix from a flat row-major vector of length `dim * dim`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        Self::from_fn(diag.len(), |r, col| if r == col { diag[r] } else { ZERO })
    }

    /// Outer product `|ket><bra|`.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Self {
        assert_eq!(ket.len(), bra.len());
        Self::from_fn(ket.len(), |r, col| ket[r] * bra[col].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self[(col, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self[(col, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for col in 0..n {
                    out.data[r * n + col] += a * other.data[k * n + col];
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.mat_mul(other)? - &other.mat_mul(self)?)
    }

    /// `self * other + other * self`
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.mat_mul(other)? + &other.mat_mul(self)?)
    }

    /// Trace inner product `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut acc = ZERO;
        for r in 0..n {
            for k in 0..n {
                acc += self.data[r * n + k] * other.data[k * n + r];
            }
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |r, col| {
            self[(r / m, col / m)] * other[(r % m, col % m)]
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[pivot * n + col] == ZERO {
                return ZERO;
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let f = a[r * n + col] / p;
                if f == ZERO {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[r * n + k] -= f * v;
                }
            }
        }
        det
    }

    /// Largest entrywise modulus of `self - other`; infinite when the
    /// dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|U U† - I|` entry.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self * &self.adjoint();
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }

    /// Worst entry of `h - h†`, as `(row, col, |h_rc - conj(h_cr)|)`.
    pub fn hermiticity_violation(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for r in 0..self.dim {
            for col in r..self.dim {
                let d = (self[(r, col)] - self[(col, r)].conj()).norm();
                if d > worst.2 {
                    worst = (r, col, d);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_violation().2 <= tol
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let (row, col, deviation) = self.hermiticity_violation();
        if deviation > tol || !deviation.is_finite() {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation,
            });
        }
        Ok(())
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and the unitary whose columns
    /// are the matching eigenvectors, so that `self = V diag(λ) V†`.
    pub fn eigh(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        self.ensure_hermitian(HERMITIAN_TOL)?;
        let n = self.dim;
        // Symmetrize so that rounding noise in the input cannot accumulate.
        let mut a = Self::from_fn(n, |r, col| 0.5 * (self[(r, col)] + self[(col, r)].conj()));
        let mut v = Self::identity(n);
        let scale = a.frobenius_norm().max(1.0);

        for sweep in 0..=JACOBI_MAX_SWEEPS {
            let off = off_diagonal_norm(&a);
            if off < JACOBI_OFF_TOL * scale {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
                let evals = order.iter().map(|&i| a[(i, i)].re).collect();
                let sorted = Self::from_fn(n, |r, col| v[(r, order[col])]);
                return Ok((evals, sorted));
            }
            if sweep == JACOBI_MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps: sweep,
                    off_norm: off,
                });
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
        unreachable!()
    }

    /// `exp(i h t)` for Hermitian `h`, via eigendecomposition.
    pub fn expm_hermitian(&self, t: f64) -> Result<Self> {
        let (evals, v) = self.eigh()?;
        let n = self.dim;
        let phases: Vec<Complex64> = evals
            .iter()
            .map(|&l| Complex64::from_polar(1.0, l * t))
            .collect();
        Ok(Self::from_fn(n, |r, col| {
            (0..n)
                .map(|k| v[(r, k)] * phases[k] * v[(col, k)].conj())
                .sum()
        }))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for r in 0..n {
        for col in 0..n {
            if r != col {
                s += a[(r, col)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing `a[p][q]` (and `a[q][p]`).
///
/// The rotation is `G = diag(1, e^{-iφ}) R(c, s)` on the (p, q) plane, where
/// `φ = arg a[p][q]` makes the pivot real and `R` is the classical real
/// Jacobi rotation. Updates `a <- G† a G` and `v <- v G`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = a[(p, q)];
    let mag = z.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.dim;
    let phase = z / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    // G entries on the (p, q) block.
    let gpp = re(cs);
    let gpq = re(sn);
    let gqp = -phase.conj() * sn;
    let gqq = phase.conj() * cs;

    // a <- a G (columns p, q)
    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * gpp + arq * gqp;
        a[(r, q)] = arp * gpq + arq * gqq;
    }
    // a <- G† a (rows p, q)
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = gpp.conj() * apc + gqp.conj() * aqc;
        a[(q, col)] = gpq.conj() * apc + gqq.conj() * aqc;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = re(a[(p, p)].re);
    a[(q, q)] = re(a[(q, q)].re);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * gpp + vrq * gqp;
        v[(r, q)] = vrp * gpq + vrq * gqq;
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, col): (usize, usize)) -> &Complex64 {
        assert!(r < self.dim && col < self.dim, "index out of bounds");
        &self.data[r * self.dim + col]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.dim && col < self.dim, "index out of bounds");
        &mut self.data[r * self.dim + col]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.mat_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Complex64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_re(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Smallest `max |a - e^{iφ} b|` over global phases `φ`, with the phase
/// fixed by the largest entry of `b`. Returns the residual and the phase.
pub fn diff_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> (f64, Complex64) {
    if a.dim() != b.dim() {
        return (f64::INFINITY, ONE);
    }
    let phase = phase_between(a.as_slice(), b.as_slice());
    (a.max_abs_diff(&b.scale(phase)), phase)
}

/// Like [`diff_up_to_phase`] for vectors.
pub fn vec_diff_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let phase = phase_between(a, b);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

fn phase_between(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    // Overlap-weighted phase; exact whenever a = e^{iφ} b.
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    if overlap.norm() == 0.0 {
        ONE
    } else {
        overlap / overlap.norm()
    }
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
