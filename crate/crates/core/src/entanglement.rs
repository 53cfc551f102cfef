//! Entangling capability of two-qubit gates: the Makhlin invariant `G1`,
//! entangling power `e_p = (2/9)(1 - |G1|)`, concurrence of pure states,
//! and the product-basis conditions for special perfect entanglers.
//!
//! Two-qubit amplitudes are always ordered `(↑↑, ↑↓, ↓↑, ↓↓)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{lmg_gate, GateLabel, LmgParams, SymmetricGate};
use crate::linalg::{c, vec_norm, ComplexMatrix, ONE, ZERO};
use crate::su3::basis_change;

pub type State4 = [Complex64; 4];

/// Unitarity residual above which a gate is rejected by [`makhlin_g1`].
pub const UNITARITY_GATE_TOL: f64 = 1e-10;
/// Tolerance on `e_p` used for classification.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Concurrence threshold for "maximally entangled" in product-basis checks.
pub const MAXIMAL_TOL: f64 = 1e-10;

pub const EP_MAX: f64 = 2.0 / 9.0;
pub const EP_PERFECT: f64 = 1.0 / 6.0;

/// The transform `U` whose rows are the magic (Bell) basis bras in
/// `(|1 1>, |1 0>, |1 -1>, |0 0>)` coordinates:
/// `(↑↑+↓↓)/√2`, `i(↑↓+↓↑)/√2`, `(↓↑-↑↓)/√2`, `i(↓↓-↑↑)/√2`, the last
/// two up to a sign.
pub fn bell_transform() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[
        [c(h, 0.0), ZERO, c(h, 0.0), ZERO],
        [ZERO, c(0.0, -1.0), ZERO, ZERO],
        [ZERO, ZERO, ZERO, ONE],
        [c(0.0, -h), ZERO, c(0.0, h), ZERO],
    ])
}

/// [`bell_transform`] composed with the product-to-angular-momentum change
/// of basis, so it acts on product-basis operators directly.
pub fn magic_transform() -> ComplexMatrix {
    &bell_transform() * &basis_change()
}

/// `G1 = tr²(m) / (16 det u)` with `m = u_B^T u_B` and `u_B = Q u Q†`.
pub fn makhlin_g1(u4: &ComplexMatrix) -> Result<Complex64> {
    if u4.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: u4.dim(),
        });
    }
    let residual = u4.unitarity_residual();
    if residual > UNITARITY_GATE_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let q = magic_transform();
    let ub = &(&q * u4) * &q.adjoint();
    let mm = &ub.transpose() * &ub;
    let tr = mm.trace();
    Ok(tr * tr / (16.0 * u4.det()))
}

pub fn ep_from_g1_abs(g1_abs: f64) -> f64 {
    EP_MAX * (1.0 - g1_abs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `e_p = 0`: the gate is locally equivalent to the identity.
    Local,
    /// `0 < e_p < 1/6`
    Entangling,
    /// `1/6 <= e_p < 2/9`
    PerfectEntangler,
    /// `e_p = 2/9`
    SpecialPerfectEntangler,
}

impl Classification {
    pub fn from_ep(ep: f64) -> Self {
        if ep >= EP_MAX - CLASSIFY_TOL {
            Classification::SpecialPerfectEntangler
        } else if ep >= EP_PERFECT - CLASSIFY_TOL {
            Classification::PerfectEntangler
        } else if ep <= CLASSIFY_TOL {
            Classification::Local
        } else {
            Classification::Entangling
        }
    }

    pub fn is_perfect_entangler(self) -> bool {
        matches!(
            self,
            Classification::PerfectEntangler | Classification::SpecialPerfectEntangler
        )
    }

    /// Short machine-friendly tag used in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            Classification::Local => "local",
            Classification::Entangling => "entangling",
            Classification::PerfectEntangler => "perfect",
            Classification::SpecialPerfectEntangler => "special_perfect",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Local => "local gate",
            Classification::Entangling => "entangling, not a perfect entangler",
            Classification::PerfectEntangler => "perfect entangler",
            Classification::SpecialPerfectEntangler => "special perfect entangler",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub gate_label: Option<GateLabel>,
    pub theta: Option<f64>,
    pub g1: Complex64,
    pub g1_abs: f64,
    pub ep: f64,
    pub classification: Classification,
}

pub fn entangling_power(u4: &ComplexMatrix) -> Result<EntanglementReport> {
    let g1 = makhlin_g1(u4)?;
    let g1_abs = g1.norm();
    let ep = ep_from_g1_abs(g1_abs);
    Ok(EntanglementReport {
        gate_label: None,
        theta: None,
        g1,
        g1_abs,
        ep,
        classification: Classification::from_ep(ep),
    })
}

pub fn analyze(gate: &SymmetricGate) -> Result<EntanglementReport> {
    let mut report = entangling_power(&gate.u4)?;
    report.gate_label = Some(gate.label);
    report.theta = gate.theta();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    pub input_norm: f64,
    /// The input was not unit-norm (beyond 1e-10) and was rescaled.
    pub renormalized: bool,
}

/// `C = 2|ad - bc|` for `a↑↑ + b↑↓ + c↓↑ + d↓↓`, renormalizing the input
/// when needed.
pub fn concurrence_checked(psi: &[Complex64]) -> Result<ConcurrenceResult> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: psi.len(),
        });
    }
    let norm = vec_norm(psi);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    let raw = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
    Ok(ConcurrenceResult {
        value: raw / (norm * norm),
        input_norm: norm,
        renormalized: (norm - 1.0).abs() > 1e-10,
    })
}

pub fn concurrence(psi: &[Complex64]) -> Result<f64> {
    concurrence_checked(psi).map(|r| r.value)
}

/// `(cos(α/2)|↑> + sin(α/2) e^{iφ}|↓>)^{⊗2}` in both spin-1 and product
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableSymmetricState {
    pub alpha: f64,
    pub phi: f64,
    pub vec3: [Complex64; 3],
    pub vec4: State4,
}

/// Builds the symmetric product state. `α` is folded into `[0, π]` and `φ`
/// into `[0, 2π)`; the folding changes each spinor by at most a sign, which
/// cancels in the two-qubit state.
pub fn separable_state(alpha: f64, phi: f64) -> SeparableSymmetricState {
    let two_pi = 2.0 * PI;
    let mut a = alpha.rem_euclid(two_pi);
    let mut p = phi;
    if a > PI {
        a = two_pi - a;
        p += PI;
    }
    let p = p.rem_euclid(two_pi);
    let (ch, sh) = ((a / 2.0).cos(), (a / 2.0).sin());
    let e = Complex64::from_polar(1.0, p);
    let up = c(ch, 0.0);
    let down = e * sh;
    let vec4 = [up * up, up * down, down * up, down * down];
    let vec3 = [
        c(ch * ch, 0.0),
        e * (2f64.sqrt() * sh * ch),
        e * e * (sh * sh),
    ];
    SeparableSymmetricState {
        alpha: a,
        phi: p,
        vec3,
        vec4,
    }
}

/// Applies the gate's two-qubit form and returns the image and its concurrence.
pub fn apply_gate(gate: &SymmetricGate, state: &SeparableSymmetricState) -> Result<(State4, f64)> {
    let out = gate.u4.apply(&state.vec4)?;
    let arr: State4 = [out[0], out[1], out[2], out[3]];
    let conc = concurrence(&arr)?;
    Ok((arr, conc))
}

/// An orthonormal product basis parameterized by three single-qubit
/// spinors `(a, b)`, `(c, d)`, `(e, f)`:
///
/// ```text
/// |ψ1> = (a, b) ⊗ (c, d)          |ψ2> = (-b*, a*) ⊗ (c, d)
/// |ψ3> = (e, f) ⊗ (-d*, c*)       |ψ4> = (-f*, e*) ⊗ (-d*, c*)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ProductBasis {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
    pub vectors: [State4; 4],
}

fn kron2(x: [Complex64; 2], y: [Complex64; 2]) -> State4 {
    [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]]
}

pub fn product_basis(
    a: Complex64,
    b: Complex64,
    c_: Complex64,
    d: Complex64,
    e: Complex64,
    f: Complex64,
) -> Result<ProductBasis> {
    for (name, x, y) in [("(a, b)", a, b), ("(c, d)", c_, d), ("(e, f)", e, f)] {
        let n = x.norm_sqr() + y.norm_sqr();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(format!("|{name}|² = {n}")));
        }
    }
    let second = [c_, d];
    let second_perp = [-d.conj(), c_.conj()];
    let vectors = [
        kron2([a, b], second),
        kron2([-b.conj(), a.conj()], second),
        kron2([e, f], second_perp),
        kron2([-f.conj(), e.conj()], second_perp),
    ];
    Ok(ProductBasis {
        a,
        b,
        c: c_,
        d,
        e,
        f,
        vectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeFamily {
    /// `B4`, `B7`, `B8`: condition `|abcd| = |cdef| = 1/4`.
    B4B7B8,
    /// `B5`, `B6`: condition `|(a²+b²)(c²+d²)| = |(e²+f²)(c²+d²)| = 1`.
    B5B6,
}

impl SpeFamily {
    pub fn of(label: GateLabel) -> Result<Self> {
        match label {
            GateLabel::B(4) | GateLabel::B(7) | GateLabel::B(8) => Ok(SpeFamily::B4B7B8),
            GateLabel::B(5) | GateLabel::B(6) => Ok(SpeFamily::B5B6),
            other => Err(Error::FamilyMismatch(format!(
                "{other} has no product-basis condition (expected one of B4..B8)"
            ))),
        }
    }

    /// The two quantities the condition requires to equal their target.
    pub fn condition_values(self, basis: &ProductBasis) -> (f64, f64) {
        let ProductBasis {
            a, b, c, d, e, f, ..
        } = *basis;
        match self {
            SpeFamily::B4B7B8 => ((a * b * c * d).norm(), (c * d * e * f).norm()),
            SpeFamily::B5B6 => {
                let cd = c * c + d * d;
                (((a * a + b * b) * cd).norm(), ((e * e + f * f) * cd).norm())
            }
        }
    }

    pub fn target(self) -> f64 {
        match self {
            SpeFamily::B4B7B8 => 0.25,
            SpeFamily::B5B6 => 1.0,
        }
    }
}

/// Outcome of checking a product basis against a special perfect
/// entangler: the printed algebraic condition next to the concurrences of
/// the four images. When the two disagree, `agrees` is false and the
/// discrepancy is left for the caller to report.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeCheck {
    pub family: SpeFamily,
    pub condition_values: (f64, f64),
    pub condition_holds: bool,
    pub concurrences: [f64; 4],
    pub all_maximal: bool,
    pub agrees: bool,
}

pub fn spe_condition(gate: &SymmetricGate, basis: &ProductBasis) -> Result<SpeCheck> {
    let family = SpeFamily::of(gate.label)?;
    let report = entangling_power(&gate.u4)?;
    if (report.ep - EP_MAX).abs() > CLASSIFY_TOL {
        return Err(Error::FamilyMismatch(format!(
            "{} is not at its special-perfect-entangler parameter (e_p = {})",
            gate.label, report.ep
        )));
    }
    let condition_values = family.condition_values(basis);
    let target = family.target();
    let condition_holds = (condition_values.0 - target).abs() <= MAXIMAL_TOL
        && (condition_values.1 - target).abs() <= MAXIMAL_TOL;
    let mut concurrences = [0.0; 4];
    for (slot, v) in concurrences.iter_mut().zip(&basis.vectors) {
        *slot = concurrence(&gate.u4.apply(v)?)?;
    }
    let all_maximal = concurrences.iter().all(|&x| x >= 1.0 - MAXIMAL_TOL);
    Ok(SpeCheck {
        family,
        condition_values,
        condition_holds,
        concurrences,
        all_maximal,
        agrees: condition_holds == all_maximal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgSample {
    pub t: f64,
    pub ep: f64,
    /// Concurrence of `B_L |↑↑>`.
    pub concurrence: f64,
}

/// `e_p(B_L)` and the concurrence of `B_L|↑↑>` along a time grid.
pub fn lmg_entanglement_profile(g1: f64, g2: f64, t_grid: &[f64]) -> Result<Vec<LmgSample>> {
    if let Some(bad) = t_grid.iter().find(|t| !t.is_finite()) {
        return Err(Error::OutOfRange(format!("non-finite time {bad}")));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OutOfRange(
            "time grid must be strictly ascending".into(),
        ));
    }
    let up_up: State4 = [ONE, ZERO, ZERO, ZERO];
    t_grid
        .iter()
        .map(|&t| {
            let gate = lmg_gate(LmgParams::new(g1, g2, t))?;
            let ep = entangling_power(&gate.u4)?.ep;
            let image = gate.u4.apply(&up_up)?;
            Ok(LmgSample {
                t,
                ep,
                concurrence: concurrence(&image)?,
            })
        })
        .collect()
}
