//! One-parameter symmetric gates `B_k = exp(i M_k θ)` and the
//! Lipkin-Meshkov-Glick gate `B_L = exp(i H_L t)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ONE, ZERO};
use crate::su3::{angular_momentum, m, to_qubit_basis, Axis};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Unitarity tolerance for gate matrices.
pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateLabel {
    /// `B_k`, `k = 1..=8`.
    B(u8),
    /// The LMG evolution `B_L`.
    Lmg,
    Custom,
}

impl fmt::Display for GateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateLabel::B(k) => write!(f, "B{k}"),
            GateLabel::Lmg => write!(f, "BL"),
            GateLabel::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateParam {
    Theta(f64),
    Lmg(LmgParams),
    None,
}

/// A unitary on the spin-1 subspace together with its two-qubit form
/// (identity on the singlet).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGate {
    pub label: GateLabel,
    pub param: GateParam,
    pub u3: ComplexMatrix,
    pub u4: ComplexMatrix,
}

impl SymmetricGate {
    pub fn new(label: GateLabel, param: GateParam, u3: ComplexMatrix) -> Result<Self> {
        if u3.dim() != 3 {
            return Err(Error::DimensionMismatch {
                left: 3,
                right: u3.dim(),
            });
        }
        let residual = u3.unitarity_residual();
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let u4 = to_qubit_basis(&u3, ONE)?;
        Ok(Self {
            label,
            param,
            u3,
            u4,
        })
    }

    pub fn custom(u3: ComplexMatrix) -> Result<Self> {
        Self::new(GateLabel::Custom, GateParam::None, u3)
    }

    pub fn theta(&self) -> Option<f64> {
        match self.param {
            GateParam::Theta(t) => Some(t),
            _ => None,
        }
    }
}

/// `B_k(θ)` for `k = 1..=8`.
///
/// For `k <= 7` the generator has spectrum `{1, 0, -1}`, so
/// `exp(iθM) = I + (cos θ - 1) M² + i sin θ M`. `M_8` has spectrum
/// `{1, -2, 1}/√3` and its exponential is written out directly.
pub fn gate(k: usize, theta: f64) -> Result<SymmetricGate> {
    let u3 = match k {
        1..=7 => {
            let mk = m(k);
            let sq = &mk * &mk;
            let mut u = ComplexMatrix::identity(3);
            u += &sq.scale_re(theta.cos() - 1.0);
            u += &mk.scale(I * theta.sin());
            u
        }
        8 => {
            let corner = Complex64::from_polar(1.0, theta / SQRT3);
            let center = Complex64::from_polar(1.0, -2.0 * theta / SQRT3);
            ComplexMatrix::from_diag(&[corner, center, corner])
        }
        0 => {
            return Err(Error::OutOfRange(
                "B0 is a global phase and not one of the symmetric gates B1..B8".into(),
            ))
        }
        _ => return Err(Error::OutOfRange(format!("gate index {k} outside 1..=8"))),
    };
    SymmetricGate::new(GateLabel::B(k as u8), GateParam::Theta(theta), u3)
}

/// Gate parameter at which `B_k` reaches the maximal entangling power 2/9:
/// `π/2` for `k = 4..=7` and `√3 π/2` for `k = 8`.
pub fn special_perfect_entangler_theta(k: usize) -> Result<f64> {
    match k {
        4..=7 => Ok(FRAC_PI_2),
        8 => Ok(SQRT3 * FRAC_PI_2),
        _ => Err(Error::FamilyMismatch(format!(
            "B{k} never reaches e_p = 2/9"
        ))),
    }
}

/// Couplings and evolution time of the LMG interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgParams {
    pub g1: f64,
    pub g2: f64,
    pub t: f64,
}

impl LmgParams {
    pub fn new(g1: f64, g2: f64, t: f64) -> Self {
        Self { g1, g2, t }
    }

    /// `ξ = 2 g1 t`
    pub fn xi(&self) -> f64 {
        2.0 * self.g1 * self.t
    }

    /// `β = (2/√3) g2 t`
    pub fn beta(&self) -> f64 {
        2.0 / SQRT3 * self.g2 * self.t
    }

    /// The `g2` that puts `B_L` at `e_p = 2/9` for given `g1` and `t`,
    /// from `2 g2 t = π/2 + 2 g1 t`.
    pub fn spe_coupling(g1: f64, t: f64) -> f64 {
        (FRAC_PI_2 + 2.0 * g1 * t) / (2.0 * t)
    }
}

/// `g1 (J+² + J-²) + g2 (J+J- + J-J+)`, checked against its basis-matrix
/// form `2 g1 M7 + (2/√3) g2 (√8 M0 - M8)`.
pub fn lmg_hamiltonian(g1: f64, g2: f64) -> Result<ComplexMatrix> {
    let jp = angular_momentum(Axis::Plus);
    let jm = angular_momentum(Axis::Minus);
    let direct =
        &(&(&jp * &jp) + &(&jm * &jm)).scale_re(g1) + &(&(&jp * &jm) + &(&jm * &jp)).scale_re(g2);
    let via_basis = lmg_hamiltonian_from_basis(g1, g2);
    let residual = direct.max_abs_diff(&via_basis);
    let scale = 1.0 + g1.abs() + g2.abs();
    if residual > 1e-12 * scale {
        return Err(Error::Inconsistent(format!(
            "LMG Hamiltonian: ladder form and basis form differ by {residual:e}"
        )));
    }
    Ok(direct)
}

/// `2 g1 M7 + (2/√3) g2 (√8 M0 - M8)`.
pub fn lmg_hamiltonian_from_basis(g1: f64, g2: f64) -> ComplexMatrix {
    let g1p = 2.0 * g1;
    let g2p = 2.0 / SQRT3 * g2;
    &m(7).scale_re(g1p) + &(&m(0).scale_re(8f64.sqrt()) - &m(8)).scale_re(g2p)
}

/// `B_L = exp(i H_L t)` by eigendecomposition.
pub fn lmg_gate(p: LmgParams) -> Result<SymmetricGate> {
    let h = lmg_hamiltonian(p.g1, p.g2)?;
    let u3 = h.expm_hermitian(p.t)?;
    SymmetricGate::new(GateLabel::Lmg, GateParam::Lmg(p), u3)
}

/// Closed form of `B_L`: corners `e^{i√3β} cos ξ`, anti-diagonal corners
/// `i e^{i√3β} sin ξ`, center `e^{2i√3β}`.
pub fn lmg_closed_form(p: LmgParams) -> ComplexMatrix {
    let (xi, beta) = (p.xi(), p.beta());
    let ph = Complex64::from_polar(1.0, SQRT3 * beta);
    let diag = ph * xi.cos();
    let off = I * ph * xi.sin();
    ComplexMatrix::from_rows(&[
        [diag, ZERO, off],
        [ZERO, Complex64::from_polar(1.0, 2.0 * SQRT3 * beta), ZERO],
        [off, ZERO, diag],
    ])
}

/// Factors a two-qubit operator as `v ⊗ w` by alternating least squares on
/// its realigned form. Returns the factors and `max |u - v ⊗ w|`; the
/// factors are scaled so that `v` has Frobenius norm √2.
pub fn factor_local(u4: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix, f64)> {
    if u4.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: u4.dim(),
        });
    }
    // realigned[(i, j)][(k, l)] = u[2i + k][2j + l], so u = v ⊗ w  <=>  realigned = vec(v) vec(w)^T.
    let realigned = |vij: usize, wkl: usize| {
        let (i, j) = (vij / 2, vij % 2);
        let (k, l) = (wkl / 2, wkl % 2);
        u4[(2 * i + k, 2 * j + l)]
    };
    // Seed with the row of largest norm.
    let seed_row = (0..4)
        .max_by(|&x, &y| {
            let nx: f64 = (0..4).map(|c| realigned(x, c).norm_sqr()).sum();
            let ny: f64 = (0..4).map(|c| realigned(y, c).norm_sqr()).sum();
            nx.total_cmp(&ny)
        })
        .expect("four rows");
    let mut w: Vec<Complex64> = (0..4).map(|c| realigned(seed_row, c)).collect();
    let mut v = vec![ZERO; 4];
    for _ in 0..50 {
        let wn: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if wn == 0.0 {
            break;
        }
        for (r, vr) in v.iter_mut().enumerate() {
            *vr = (0..4)
                .map(|c| realigned(r, c) * w[c].conj())
                .sum::<Complex64>()
                / wn;
        }
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vn == 0.0 {
            break;
        }
        for (c, wc) in w.iter_mut().enumerate() {
            *wc = (0..4)
                .map(|r| realigned(r, c) * v[r].conj())
                .sum::<Complex64>()
                / vn;
        }
    }
    let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if vn > 0.0 {
        let s = 2f64.sqrt() / vn;
        v.iter_mut().for_each(|z| *z *= s);
        w.iter_mut().for_each(|z| *z /= s);
    }
    let vm = ComplexMatrix::from_vec(2, v)?;
    let wm = ComplexMatrix::from_vec(2, w)?;
    let residual = u4.max_abs_diff(&vm.kron(&wm));
    Ok((vm, wm, residual))
}

/// True when `u4 = v ⊗ v` (up to a global phase split between the
/// factors) within `tol`.
pub fn is_identical_local_product(u4: &ComplexMatrix, tol: f64) -> Result<bool> {
    let (v, w, residual) = factor_local(u4)?;
    Ok(residual <= tol && crate::linalg::diff_up_to_phase(&v, &w).0 <= tol)
}
