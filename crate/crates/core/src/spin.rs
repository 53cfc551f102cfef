//! Irreducible spherical tensor operators for a single spin `j <= 5/2`.
//!
//! Matrix elements are built from Clebsch-Gordan coefficients,
//! `<j m'| τ^k_q |j m> = sqrt(2k+1) <j m; k q | j m'>`, which fixes the
//! normalization `Tr(τ^k_q† τ^k'_q') = (2j+1) δ_kk' δ_qq'` and, with the
//! Condon-Shortley phase, reproduces `τ^1_0 = sqrt(3/2) J_z` and
//! `τ^1_1 = -(sqrt(3)/2) J_+`.
//!
//! Basis ordering everywhere is `m = j, j-1, ..., -j` (row/column 0 is `m = j`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{re, ComplexMatrix, I, ZERO};

/// Largest supported `2j`.
pub const MAX_TWO_J: u32 = 5;

/// Spin quantum number stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinLabel {
    two_j: u32,
}

impl SpinLabel {
    pub fn from_two_j(two_j: u32) -> Result<Self> {
        if two_j > MAX_TWO_J {
            return Err(Error::OutOfRange(format!(
                "spin 2j = {two_j} exceeds the supported maximum {MAX_TWO_J}"
            )));
        }
        Ok(Self { two_j })
    }

    /// Spin 1, the symmetric two-qubit subspace.
    pub const ONE: SpinLabel = SpinLabel { two_j: 2 };
    pub const HALF: SpinLabel = SpinLabel { two_j: 1 };

    #[inline]
    pub fn two_j(self) -> u32 {
        self.two_j
    }

    #[inline]
    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Hilbert-space dimension `2j + 1`.
    #[inline]
    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Largest tensor rank `2j`.
    #[inline]
    pub fn max_rank(self) -> usize {
        self.two_j as usize
    }

    /// Twice the projection `m` of basis row `index`.
    #[inline]
    fn two_m(self, index: usize) -> i32 {
        self.two_j as i32 - 2 * index as i32
    }

    pub fn all() -> impl Iterator<Item = SpinLabel> {
        (0..=MAX_TWO_J).map(|two_j| SpinLabel { two_j })
    }
}

impl std::fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.two_j.is_multiple_of(2) {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

// Factorials up to 20! are exact in f64 to well below the tolerances used here.
const FACTORIALS: [f64; 21] = {
    let mut t = [1.0; 21];
    let mut i = 1;
    while i < 21 {
        t[i] = t[i - 1] * i as f64;
        i += 1;
    }
    t
};

fn fact_doubled(two_n: i32) -> Option<f64> {
    if two_n < 0 || two_n % 2 != 0 {
        return None;
    }
    FACTORIALS.get((two_n / 2) as usize).copied()
}

fn validate_pair(two_j: i32, two_m: i32, name: &str) -> Result<()> {
    if two_j < 0 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{name}: negative j (2j = {two_j})"
        )));
    }
    if two_m.abs() > two_j || (two_j + two_m) % 2 != 0 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{name}: m = {}/2 is not a valid projection of j = {}/2",
            two_m, two_j
        )));
    }
    Ok(())
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | J M>` (Condon-Shortley phase).
///
/// All quantum numbers are passed doubled, so `j = 1/2` is `1`. Returns zero
/// when `m1 + m2 != M` or the triangle rule fails.
pub fn clebsch_gordan(
    two_j1: i32,
    two_m1: i32,
    two_j2: i32,
    two_m2: i32,
    two_j: i32,
    two_m: i32,
) -> Result<f64> {
    validate_pair(two_j1, two_m1, "j1")?;
    validate_pair(two_j2, two_m2, "j2")?;
    validate_pair(two_j, two_m, "J")?;
    if two_m1 + two_m2 != two_m {
        return Ok(0.0);
    }
    if two_j < (two_j1 - two_j2).abs()
        || two_j > two_j1 + two_j2
        || (two_j1 + two_j2 + two_j) % 2 != 0
    {
        return Ok(0.0);
    }

    let f = |x: i32| fact_doubled(x).expect("factorial argument within table");
    let prefactor = ((two_j + 1) as f64
        * f(two_j + two_j1 - two_j2)
        * f(two_j - two_j1 + two_j2)
        * f(two_j1 + two_j2 - two_j)
        / f(two_j1 + two_j2 + two_j + 2))
    .sqrt()
        * (f(two_j + two_m)
            * f(two_j - two_m)
            * f(two_j1 - two_m1)
            * f(two_j1 + two_m1)
            * f(two_j2 - two_m2)
            * f(two_j2 + two_m2))
        .sqrt();

    // Racah sum over integer k (stored doubled as two_k).
    let mut sum = 0.0;
    let mut two_k = 0;
    loop {
        let args = [
            two_k,
            two_j1 + two_j2 - two_j - two_k,
            two_j1 - two_m1 - two_k,
            two_j2 + two_m2 - two_k,
            two_j - two_j2 + two_m1 + two_k,
            two_j - two_j1 - two_m2 + two_k,
        ];
        if args[1] < 0 || args[2] < 0 || args[3] < 0 {
            break;
        }
        if args[4] >= 0 && args[5] >= 0 {
            let denom: f64 = args.iter().map(|&a| f(a)).product();
            let sign = if (two_k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign / denom;
        }
        two_k += 2;
    }
    Ok(prefactor * sum)
}

/// Which Hermitian combination (or the raw spherical form) a tensor operator is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TensorComponent {
    Spherical,
    /// `(τ + τ†) / sqrt(2(2j+1))`
    Plus,
    /// `i(τ - τ†) / sqrt(2(2j+1))`
    Minus,
    /// `τ^k_0 / sqrt(2j+1)`
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorOperator {
    pub spin: SpinLabel,
    pub k: usize,
    pub q: i32,
    pub component: TensorComponent,
    pub matrix: ComplexMatrix,
}

fn check_rank(spin: SpinLabel, k: usize, q: i32) -> Result<()> {
    if k > spin.max_rank() {
        return Err(Error::OutOfRange(format!(
            "rank k = {k} exceeds 2j = {}",
            spin.max_rank()
        )));
    }
    if q.unsigned_abs() as usize > k {
        return Err(Error::OutOfRange(format!(
            "projection q = {q} outside -{k}..={k}"
        )));
    }
    Ok(())
}

/// Spherical tensor operator `τ^k_q` for spin `spin`.
pub fn tau(spin: SpinLabel, k: usize, q: i32) -> Result<TensorOperator> {
    check_rank(spin, k, q)?;
    let two_j = spin.two_j() as i32;
    let two_k = 2 * k as i32;
    let norm = ((2 * k + 1) as f64).sqrt();
    let dim = spin.dim();
    let mut matrix = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            let cg = clebsch_gordan(two_j, spin.two_m(col), two_k, 2 * q, two_j, spin.two_m(row))?;
            matrix[(row, col)] = re(norm * cg);
        }
    }
    Ok(TensorOperator {
        spin,
        k,
        q,
        component: TensorComponent::Spherical,
        matrix,
    })
}

/// The orthonormal Hermitian basis `{(T^0)^k_0} ∪ {(T^±)^k_q, q >= 1}`.
///
/// Ordered by rank; within rank `k` the zero component comes first, then
/// `Plus`, `Minus` for `q = 1..=k`. Satisfies `Tr(T_a T_b) = δ_ab`.
pub fn hermitian_basis(spin: SpinLabel) -> Vec<TensorOperator> {
    let dim = spin.dim() as f64;
    let mut out = Vec::with_capacity(spin.dim() * spin.dim());
    for k in 0..=spin.max_rank() {
        let t0 = tau(spin, k, 0).expect("rank within range");
        out.push(TensorOperator {
            matrix: t0.matrix.scale_re(1.0 / dim.sqrt()),
            component: TensorComponent::Zero,
            ..t0
        });
        for q in 1..=k as i32 {
            let t = tau(spin, k, q).expect("rank within range").matrix;
            let td = t.adjoint();
            let s = 1.0 / (2.0 * dim).sqrt();
            out.push(TensorOperator {
                spin,
                k,
                q,
                component: TensorComponent::Plus,
                matrix: (&t + &td).scale_re(s),
            });
            out.push(TensorOperator {
                spin,
                k,
                q,
                component: TensorComponent::Minus,
                matrix: (&t - &td).scale(I * s),
            });
        }
    }
    out
}

/// Spin matrices `(J_x, J_y, J_z)` in the `m = j..-j` basis.
pub fn spin_matrices(spin: SpinLabel) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let dim = spin.dim();
    let j = spin.j();
    let mut jp = ComplexMatrix::zeros(dim);
    // J+ |j m> = sqrt(j(j+1) - m(m+1)) |j m+1>, and m+1 sits one row up.
    for col in 1..dim {
        let m = spin.two_m(col) as f64 / 2.0;
        jp[(col - 1, col)] = re((j * (j + 1.0) - m * (m + 1.0)).sqrt());
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm).scale_re(0.5);
    let jy = (&jp - &jm).scale(Complex64::new(0.0, -0.5));
    let jz = ComplexMatrix::from_fn(dim, |r, col| {
        if r == col {
            re(spin.two_m(r) as f64 / 2.0)
        } else {
            ZERO
        }
    });
    (jx, jy, jz)
}

/// Rotation operator `exp(-iαJ_z) exp(-iβJ_y) exp(-iγJ_z)`.
pub fn rotation_operator(spin: SpinLabel, alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let (_, jy, jz) = spin_matrices(spin);
    let rz = |a: f64| jz.expm_hermitian(-a).expect("J_z is Hermitian");
    let ry = jy.expm_hermitian(-beta).expect("J_y is Hermitian");
    &(&rz(alpha) * &ry) * &rz(gamma)
}

/// Spherical tensor parameters `h^k_q = Tr(H τ^k_q)` of an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorParams {
    pub spin: SpinLabel,
    coeffs: Vec<Complex64>,
}

impl TensorParams {
    pub fn zeros(spin: SpinLabel) -> Self {
        Self {
            spin,
            coeffs: vec![ZERO; spin.dim() * spin.dim()],
        }
    }

    fn index(&self, k: usize, q: i32) -> Result<usize> {
        check_rank(self.spin, k, q)?;
        Ok(k * k + (q + k as i32) as usize)
    }

    pub fn get(&self, k: usize, q: i32) -> Result<Complex64> {
        Ok(self.coeffs[self.index(k, q)?])
    }

    pub fn set(&mut self, k: usize, q: i32, value: Complex64) -> Result<()> {
        let i = self.index(k, q)?;
        self.coeffs[i] = value;
        Ok(())
    }

    /// Iterates `(k, q, h^k_q)` in rank order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i32, Complex64)> + '_ {
        (0..=self.spin.max_rank()).flat_map(move |k| {
            (-(k as i32)..=k as i32)
                .map(move |q| (k, q, self.coeffs[k * k + (q + k as i32) as usize]))
        })
    }

    /// `Σ_q |h^k_q|²` for rank `k`.
    pub fn rank_weight(&self, k: usize) -> f64 {
        self.iter()
            .filter(|&(kk, _, _)| kk == k)
            .map(|(_, _, h)| h.norm_sqr())
            .sum()
    }

    /// Largest `|h^k_q* - (-1)^q h^k_{-q}|`; zero for a Hermitian operator.
    pub fn hermiticity_residual(&self) -> f64 {
        self.iter()
            .map(|(k, q, h)| {
                let partner = self.coeffs[k * k + (-q + k as i32) as usize];
                (h.conj() - partner * parity(q)).norm()
            })
            .fold(0.0, f64::max)
    }
}

#[inline]
fn parity(q: i32) -> f64 {
    if q.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Tensor parameters of a Hermitian operator on spin `spin`.
pub fn decompose(h: &ComplexMatrix, spin: SpinLabel) -> Result<TensorParams> {
    if h.dim() != spin.dim() {
        return Err(Error::DimensionMismatch {
            left: spin.dim(),
            right: h.dim(),
        });
    }
    h.ensure_hermitian(crate::linalg::HERMITIAN_TOL)?;
    let mut p = TensorParams::zeros(spin);
    for k in 0..=spin.max_rank() {
        for q in -(k as i32)..=k as i32 {
            let t = tau(spin, k, q)?;
            p.set(k, q, h.trace_product(&t.matrix)?)?;
        }
    }
    Ok(p)
}

/// Inverse of [`decompose`]: `H = (2j+1)^{-1} Σ h^k_q τ^k_q†`.
pub fn reconstruct(p: &TensorParams) -> ComplexMatrix {
    let spin = p.spin;
    let mut h = ComplexMatrix::zeros(spin.dim());
    for (k, q, coeff) in p.iter() {
        if coeff == ZERO {
            continue;
        }
        let t = tau(spin, k, q).expect("indices come from the params");
        h += &t.matrix.adjoint().scale(coeff);
    }
    h.scale_re(1.0 / spin.dim() as f64)
}

/// Wigner small-d matrix `d^k_{q'q}(β) = <k q'| exp(-iβJ_y) |k q>`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSmallD {
    pub k: usize,
    entries: Vec<f64>,
}

impl WignerSmallD {
    /// Element `d^k_{q' q}`.
    pub fn get(&self, q_prime: i32, q: i32) -> f64 {
        let n = 2 * self.k + 1;
        let r = (self.k as i32 - q_prime) as usize;
        let col = (self.k as i32 - q) as usize;
        self.entries[r * n + col]
    }

    /// The same matrix in the `q = k..-k` ordering as a complex matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = 2 * self.k + 1;
        ComplexMatrix::from_fn(n, |r, col| re(self.entries[r * n + col]))
    }
}

pub fn wigner_d(k: usize, beta: f64) -> Result<WignerSmallD> {
    if k > 2 {
        return Err(Error::UnsupportedRank(k));
    }
    let n = 2 * k + 1;
    let ki = k as i32;
    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let fact = |x: i32| FACTORIALS[x as usize];
    let mut entries = vec![0.0; n * n];
    for r in 0..n {
        let mp = ki - r as i32;
        for col in 0..n {
            let m = ki - col as i32;
            let norm = (fact(ki + mp) * fact(ki - mp) * fact(ki + m) * fact(ki - m)).sqrt();
            let s_min = 0.max(m - mp);
            let s_max = (ki + m).min(ki - mp);
            let mut sum = 0.0;
            for s in s_min..=s_max {
                let sign = if (mp - m + s).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                };
                let denom = fact(ki + m - s) * fact(s) * fact(mp - m + s) * fact(ki - mp - s);
                sum += sign * cb.powi(2 * ki + m - mp - 2 * s) * sb.powi(mp - m + 2 * s) / denom;
            }
            entries[r * n + col] = norm * sum;
        }
    }
    Ok(WignerSmallD { k, entries })
}

/// `D^k_{q'q}(α, β, γ) = e^{-iq'α} d^k_{q'q}(β) e^{-iqγ}`.
pub fn wigner_big_d(
    k: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    q_prime: i32,
    q: i32,
) -> Result<Complex64> {
    let d = wigner_d(k, beta)?;
    Ok(
        Complex64::from_polar(1.0, -(q_prime as f64) * alpha - (q as f64) * gamma)
            * d.get(q_prime, q),
    )
}

/// Applies `(h^k_q)^R = Σ_{q'} D^k_{q'q}(α, β, γ) h^k_{q'}` rank by rank.
///
/// The result is the parameter set of `R† H R` with `R` the
/// [`rotation_operator`] for the same angles. Only ranks up to 2 are
/// supported, so spins above 1 are rejected.
pub fn rotate_params(p: &TensorParams, alpha: f64, beta: f64, gamma: f64) -> Result<TensorParams> {
    if p.spin.max_rank() > 2 {
        return Err(Error::UnsupportedRank(p.spin.max_rank()));
    }
    let mut out = TensorParams::zeros(p.spin);
    for k in 0..=p.spin.max_rank() {
        let d = wigner_d(k, beta)?;
        let ki = k as i32;
        for q in -ki..=ki {
            let mut acc = ZERO;
            for qp in -ki..=ki {
                let big_d = Complex64::from_polar(1.0, -(qp as f64) * alpha - (q as f64) * gamma)
                    * d.get(qp, q);
                acc += big_d * p.get(k, qp)?;
            }
            out.set(k, q, acc)?;
        }
    }
    Ok(out)
}
