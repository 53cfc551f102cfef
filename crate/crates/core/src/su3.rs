//! The nine spin-1 basis matrices `M_0..M_8` and their algebra.
//!
//! `M_0 ∝ I` and `M_1..M_8` are traceless Hermitian SU(3) generators with
//! `Tr(M_k M_k') = 2 δ_kk'`, written in the `|1 m>` basis ordered
//! `m = 1, 0, -1`. In terms of spin-1 operators:
//! `M_1 = -J_x`, `M_2 = J_y`, `M_3 = J_z`, `M_4 = -{J_x, J_y}`,
//! `M_5 = {J_y, J_z}`, `M_6 = -{J_x, J_z}`, `M_7 = J_x² - J_y²`, and
//! `M_8 = (3J_z² - 2)/√3`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, re, ComplexMatrix, I, ONE, ZERO};
use crate::spin::{spin_matrices, tau, SpinLabel};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Index of a basis matrix, `0..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MIndex(u8);

impl MIndex {
    pub fn new(k: usize) -> Result<Self> {
        if k > 8 {
            return Err(Error::OutOfRange(format!("basis index {k} outside 0..=8")));
        }
        Ok(Self(k as u8))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = MIndex> {
        (0..9u8).map(MIndex)
    }

    pub fn matrix(self) -> ComplexMatrix {
        m_matrix(self)
    }
}

impl fmt::Display for MIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.0)
    }
}

/// The literal basis matrix `M_k`.
pub fn m_matrix(k: MIndex) -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    let ih = c(0.0, h);
    match k.0 {
        0 => ComplexMatrix::identity(3).scale_re((2.0f64 / 3.0).sqrt()),
        1 => ComplexMatrix::from_real_rows(&[[0.0, -h, 0.0], [-h, 0.0, -h], [0.0, -h, 0.0]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -ih, ZERO], [ih, ZERO, -ih], [ZERO, ih, ZERO]]),
        3 => ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]]),
        4 => ComplexMatrix::from_rows(&[[ZERO, ZERO, I], [ZERO, ZERO, ZERO], [-I, ZERO, ZERO]]),
        5 => ComplexMatrix::from_rows(&[[ZERO, -ih, ZERO], [ih, ZERO, ih], [ZERO, -ih, ZERO]]),
        6 => ComplexMatrix::from_real_rows(&[[0.0, -h, 0.0], [-h, 0.0, h], [0.0, h, 0.0]]),
        7 => ComplexMatrix::from_real_rows(&[[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
        8 => ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 1.0]])
            .scale_re(1.0 / SQRT3),
        _ => unreachable!("MIndex is range-checked"),
    }
}

/// Shorthand for `m_matrix(MIndex::new(k))`; panics when `k > 8`.
pub fn m(k: usize) -> ComplexMatrix {
    m_matrix(MIndex::new(k).expect("basis index in 0..=8"))
}

pub fn all_m() -> Vec<ComplexMatrix> {
    MIndex::all().map(m_matrix).collect()
}

/// `M_k` rebuilt from spherical tensor operators of spin 1.
pub fn m_from_tensors(k: MIndex) -> ComplexMatrix {
    let t = |rank: usize, q: i32| {
        tau(SpinLabel::ONE, rank, q)
            .expect("valid spin-1 tensor")
            .matrix
    };
    let s23 = (2.0f64 / 3.0).sqrt();
    let herm = |x: ComplexMatrix| (&x + &x.adjoint()).scale_re(1.0 / SQRT3);
    let anti = |x: ComplexMatrix| (&x - &x.adjoint()).scale(I / SQRT3);
    match k.0 {
        0 => t(0, 0).scale_re(s23),
        1 => herm(t(1, 1)),
        2 => anti(t(1, 1)),
        3 => t(1, 0).scale_re(s23),
        4 => anti(t(2, 2)),
        5 => anti(t(2, 1)),
        6 => herm(t(2, 1)),
        7 => herm(t(2, 2)),
        8 => t(2, 0).scale_re(s23),
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

/// Spin-1 angular momentum operator in the `m = 1, 0, -1` basis.
pub fn angular_momentum(axis: Axis) -> ComplexMatrix {
    let (jx, jy, jz) = spin_matrices(SpinLabel::ONE);
    match axis {
        Axis::X => jx,
        Axis::Y => jy,
        Axis::Z => jz,
        Axis::Plus => &jx + &jy.scale(I),
        Axis::Minus => &jx - &jy.scale(I),
    }
}

/// The quadratic angular-momentum expression listed for `M_k`, `k = 1..=8`,
/// with `M_8` taken literally as `3J_z² - 2`.
///
/// That literal `M_8` form is larger than [`m_matrix`]`(8)` by a factor √3;
/// see [`m8_from_angular_momentum`] for the normalized relation.
pub fn angular_momentum_expression(k: MIndex) -> Result<ComplexMatrix> {
    let jx = angular_momentum(Axis::X);
    let jy = angular_momentum(Axis::Y);
    let jz = angular_momentum(Axis::Z);
    let sym = |a: &ComplexMatrix, b: &ComplexMatrix| &(a * b) + &(b * a);
    Ok(match k.0 {
        1 => -&jx,
        2 => jy,
        3 => jz,
        4 => -&sym(&jx, &jy),
        5 => sym(&jy, &jz),
        6 => -&sym(&jx, &jz),
        7 => &(&jx * &jx) - &(&jy * &jy),
        8 => &(&jz * &jz).scale_re(3.0) - &ComplexMatrix::identity(3).scale_re(2.0),
        _ => {
            return Err(Error::OutOfRange(
                "no angular-momentum expression for M0".into(),
            ))
        }
    })
}

/// `(3J_z² - 2)/√3`, which equals `M_8`.
pub fn m8_from_angular_momentum() -> ComplexMatrix {
    angular_momentum_expression(MIndex(8))
        .expect("k = 8")
        .scale_re(1.0 / SQRT3)
}

/// Coefficients `c_0..c_8` of `Σ c_k M_k`.
pub type MCombination = [Complex64; 9];

/// Expands an arbitrary 3×3 matrix as `Σ c_k M_k`, with `c_k = Tr(X M_k)/2`.
pub fn m_coefficients(x: &ComplexMatrix) -> Result<MCombination> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: x.dim(),
        });
    }
    let mut out = [ZERO; 9];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = x.trace_product(&m(k))? * 0.5;
    }
    Ok(out)
}

pub fn combine(coeffs: &MCombination) -> ComplexMatrix {
    let mut x = ComplexMatrix::zeros(3);
    for (k, &ck) in coeffs.iter().enumerate() {
        if ck != ZERO {
            x += &m(k).scale(ck);
        }
    }
    x
}

/// Renders a coefficient list as e.g. `-1i*M1 + 2*M7`.
pub fn format_combination(coeffs: &MCombination) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > 1e-12)
        .map(|(k, z)| {
            let coeff = if z.im.abs() < 1e-12 {
                format!("{}", round_for_display(z.re))
            } else if z.re.abs() < 1e-12 {
                format!("{}i", round_for_display(z.im))
            } else {
                format!(
                    "({}{:+}i)",
                    round_for_display(z.re),
                    round_for_display(z.im)
                )
            };
            format!("{coeff}*M{k}")
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn round_for_display(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Commutator,
    Anticommutator,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Commutator => write!(f, "commutator"),
            AlgebraKind::Anticommutator => write!(f, "anticommutator"),
        }
    }
}

/// An 8×8 table of `[M_k, M_k']` or `{M_k, M_k'}` for `k, k' = 1..=8`,
/// each entry expanded over `M_0..M_8`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraTable {
    pub kind: AlgebraKind,
    entries: Vec<MCombination>,
}

impl AlgebraTable {
    /// Entry for `(k, k')`, both in `1..=8`.
    pub fn get(&self, k: usize, kp: usize) -> &MCombination {
        assert!(
            (1..=8).contains(&k) && (1..=8).contains(&kp),
            "table indices are 1..=8"
        );
        &self.entries[(k - 1) * 8 + (kp - 1)]
    }

    /// The table as printed in the reference tables of commutators and
    /// anticommutators, including the entries `a`, `b`, `A`, `B`, `C`, `D`.
    pub fn printed(kind: AlgebraKind) -> Self {
        let entries = match kind {
            AlgebraKind::Commutator => printed_commutators(),
            AlgebraKind::Anticommutator => printed_anticommutators(),
        };
        Self { kind, entries }
    }

    /// The table computed from the basis matrices.
    pub fn computed(kind: AlgebraKind) -> Self {
        let ms = all_m();
        let mut entries = Vec::with_capacity(64);
        for k in 1..=8 {
            for kp in 1..=8 {
                let prod = match kind {
                    AlgebraKind::Commutator => ms[k].commutator(&ms[kp]),
                    AlgebraKind::Anticommutator => ms[k].anticommutator(&ms[kp]),
                }
                .expect("3x3 operands");
                entries.push(m_coefficients(&prod).expect("3x3"));
            }
        }
        Self { kind, entries }
    }

    /// Largest deviation from (anti)symmetry under `k <-> k'`.
    pub fn symmetry_residual(&self) -> f64 {
        let sign = match self.kind {
            AlgebraKind::Commutator => -1.0,
            AlgebraKind::Anticommutator => 1.0,
        };
        let mut worst: f64 = 0.0;
        for k in 1..=8 {
            for kp in 1..=8 {
                let a = self.get(k, kp);
                let b = self.get(kp, k);
                for (x, y) in a.iter().zip(b) {
                    worst = worst.max((x - y * sign).norm());
                }
            }
        }
        worst
    }
}

fn term(k: usize, coeff: Complex64) -> MCombination {
    let mut out = [ZERO; 9];
    out[k] = coeff;
    out
}

fn sum(terms: &[(usize, Complex64)]) -> MCombination {
    let mut out = [ZERO; 9];
    for &(k, coeff) in terms {
        out[k] += coeff;
    }
    out
}

fn neg(x: MCombination) -> MCombination {
    x.map(|z| -z)
}

fn printed_commutators() -> Vec<MCombination> {
    let z = [ZERO; 9];
    let i = |k: usize, s: f64| term(k, c(0.0, s));
    let r3 = SQRT3;
    // a = i(√3 M8 + M7), b = i(√3 M8 - M7)
    let a = sum(&[(8, c(0.0, r3)), (7, I)]);
    let b = sum(&[(8, c(0.0, r3)), (7, -I)]);
    let rows: [[MCombination; 8]; 8] = [
        [
            z,
            i(3, -1.0),
            i(2, 1.0),
            i(6, -1.0),
            neg(a),
            i(4, 1.0),
            i(5, 1.0),
            i(5, r3),
        ],
        [
            i(3, 1.0),
            z,
            i(1, -1.0),
            i(5, 1.0),
            i(4, -1.0),
            b,
            i(6, 1.0),
            i(6, -r3),
        ],
        [
            i(2, -1.0),
            i(1, 1.0),
            z,
            i(7, 2.0),
            i(6, 1.0),
            i(5, -1.0),
            i(4, -2.0),
            z,
        ],
        [
            i(6, 1.0),
            i(5, -1.0),
            i(7, -2.0),
            z,
            i(2, 1.0),
            i(1, -1.0),
            i(3, 2.0),
            z,
        ],
        [
            a,
            i(4, 1.0),
            i(6, -1.0),
            i(2, -1.0),
            z,
            i(3, 1.0),
            i(1, 1.0),
            i(1, -r3),
        ],
        [
            i(4, -1.0),
            neg(b),
            i(5, 1.0),
            i(1, 1.0),
            i(3, -1.0),
            z,
            i(2, -1.0),
            i(2, r3),
        ],
        [
            i(5, -1.0),
            i(6, -1.0),
            i(4, 2.0),
            i(3, -2.0),
            i(1, -1.0),
            i(2, 1.0),
            z,
            z,
        ],
        [i(5, -r3), i(6, r3), z, z, i(1, r3), i(2, -r3), z, z],
    ];
    rows.into_iter().flatten().collect()
}

fn printed_anticommutators() -> Vec<MCombination> {
    let z = [ZERO; 9];
    let r = |k: usize, s: f64| term(k, re(s));
    let q = 2.0 * (2.0f64 / 3.0).sqrt();
    let u = 1.0 / SQRT3;
    let w = 2.0 / SQRT3;
    let ca = sum(&[(0, re(q)), (7, ONE), (8, re(-u))]);
    let cb = sum(&[(0, re(q)), (7, -ONE), (8, re(-u))]);
    let cc = sum(&[(0, re(q)), (8, re(w))]);
    let cd = sum(&[(0, re(q)), (8, re(-w))]);
    let rows: [[MCombination; 8]; 8] = [
        [
            ca,
            r(4, 1.0),
            r(6, 1.0),
            r(2, 1.0),
            z,
            r(3, 1.0),
            r(1, 1.0),
            r(1, -u),
        ],
        [
            r(4, 1.0),
            cb,
            r(5, 1.0),
            r(1, 1.0),
            r(3, 1.0),
            z,
            r(2, -1.0),
            r(2, -u),
        ],
        [
            r(6, 1.0),
            r(5, 1.0),
            cc,
            z,
            r(2, 1.0),
            r(1, 1.0),
            z,
            r(3, w),
        ],
        [
            r(2, 1.0),
            r(1, 1.0),
            z,
            cc,
            r(6, -1.0),
            r(5, -1.0),
            z,
            r(4, w),
        ],
        [
            z,
            r(3, 1.0),
            r(2, 1.0),
            r(6, -1.0),
            ca,
            r(4, -1.0),
            r(5, 1.0),
            r(5, -u),
        ],
        [
            r(3, 1.0),
            z,
            r(1, 1.0),
            r(5, -1.0),
            r(4, -1.0),
            cb,
            r(6, -1.0),
            r(6, -u),
        ],
        [
            r(1, 1.0),
            r(2, -1.0),
            z,
            z,
            r(5, 1.0),
            r(6, -1.0),
            cc,
            r(7, w),
        ],
        [
            r(1, -u),
            r(2, -u),
            r(3, w),
            r(4, w),
            r(5, -u),
            r(6, -u),
            r(7, w),
            cd,
        ],
    ];
    rows.into_iter().flatten().collect()
}

/// A printed table entry that the basis matrices refute, with the value
/// the matrices actually give.
#[derive(Debug, Clone, PartialEq)]
pub struct Misprint {
    pub kind: AlgebraKind,
    pub k: usize,
    pub kp: usize,
    pub printed: MCombination,
    pub corrected: MCombination,
}

/// Known sign misprints in the printed commutator table: the table gives
/// `[M5, M7] = iM1`, but the matrices (cross-checked against the tensor
/// construction, the angular-momentum forms and the Gell-Mann relations)
/// give `-iM1`, and likewise for the transposed entry.
pub fn known_misprints() -> Vec<Misprint> {
    vec![
        Misprint {
            kind: AlgebraKind::Commutator,
            k: 5,
            kp: 7,
            printed: term(1, I),
            corrected: term(1, -I),
        },
        Misprint {
            kind: AlgebraKind::Commutator,
            k: 7,
            kp: 5,
            printed: term(1, -I),
            corrected: term(1, I),
        },
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableMismatch {
    pub kind: AlgebraKind,
    pub k: usize,
    pub kp: usize,
    pub expected: MCombination,
    pub computed: MCombination,
    pub residual: f64,
}

impl fmt::Display for TableMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.kind {
            AlgebraKind::Commutator => ("[", "]"),
            AlgebraKind::Anticommutator => ("{", "}"),
        };
        write!(
            f,
            "{open}M{}, M{}{close}: expected {}, computed {} (residual {:.3e})",
            self.k,
            self.kp,
            format_combination(&self.expected),
            format_combination(&self.computed),
            self.residual
        )
    }
}

/// A structural identity checked on the computed algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub description: String,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub commutators: AlgebraTable,
    pub anticommutators: AlgebraTable,
    /// Every entry where the printed table disagrees with the computation.
    pub mismatches: Vec<TableMismatch>,
    /// Largest coefficient residual over entries that match.
    pub max_matched_residual: f64,
    pub entries_checked: usize,
    pub identities: Vec<IdentityCheck>,
}

/// Tolerance on coefficient residuals when comparing against the tables.
pub const TABLE_TOL: f64 = 1e-13;

impl AlgebraReport {
    pub fn entries_matched(&self) -> usize {
        self.entries_checked - self.mismatches.len()
    }

    /// Mismatches that are not explained by [`known_misprints`]. A known
    /// misprint only counts as explained when the computed value equals its
    /// corrected value.
    pub fn unexplained_mismatches(&self) -> Vec<&TableMismatch> {
        let known = known_misprints();
        self.mismatches
            .iter()
            .filter(|mm| {
                !known.iter().any(|kn| {
                    kn.kind == mm.kind
                        && kn.k == mm.k
                        && kn.kp == mm.kp
                        && coeff_residual(&kn.printed, &mm.expected) < TABLE_TOL
                        && coeff_residual(&kn.corrected, &mm.computed) < TABLE_TOL
                })
            })
            .collect()
    }

    pub fn identities_hold(&self, tol: f64) -> bool {
        self.identities.iter().all(|c| c.residual < tol)
    }

    /// True when every disagreement is a confirmed known misprint and every
    /// structural identity holds.
    pub fn is_consistent(&self) -> bool {
        self.unexplained_mismatches().is_empty() && self.identities_hold(TABLE_TOL)
    }
}

fn coeff_residual(a: &MCombination, b: &MCombination) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Computes all 64 commutators and 64 anticommutators of `M_1..M_8`,
/// compares them against the printed tables, and checks the vector
/// triplets and vanishing commutators.
pub fn verify_algebra_tables() -> AlgebraReport {
    let mut mismatches = Vec::new();
    let mut max_matched_residual: f64 = 0.0;
    let mut computed_tables = Vec::new();
    for kind in [AlgebraKind::Commutator, AlgebraKind::Anticommutator] {
        let printed = AlgebraTable::printed(kind);
        let computed = AlgebraTable::computed(kind);
        for k in 1..=8 {
            for kp in 1..=8 {
                let residual = coeff_residual(printed.get(k, kp), computed.get(k, kp));
                if residual < TABLE_TOL {
                    max_matched_residual = max_matched_residual.max(residual);
                } else {
                    mismatches.push(TableMismatch {
                        kind,
                        k,
                        kp,
                        expected: *printed.get(k, kp),
                        computed: *computed.get(k, kp),
                        residual,
                    });
                }
            }
        }
        computed_tables.push(computed);
    }
    let anticommutators = computed_tables.pop().expect("two tables");
    let commutators = computed_tables.pop().expect("two tables");

    AlgebraReport {
        identities: structural_identities(),
        commutators,
        anticommutators,
        mismatches,
        max_matched_residual,
        entries_checked: 128,
    }
}

fn structural_identities() -> Vec<IdentityCheck> {
    let ms = all_m();
    let comm = |a: usize, b: usize| ms[a].commutator(&ms[b]).expect("3x3");
    let mut checks = Vec::new();

    // [M_i, M_j] = s·(-i) ε_ijk M_k over cyclic permutations.
    let triplets: [([usize; 3], f64); 5] = [
        ([1, 2, 3], 1.0),
        ([1, 4, 6], 1.0),
        ([4, 2, 5], 1.0),
        ([5, 3, 6], 1.0),
        ([4, 3, 7], 2.0),
    ];
    for (t, scale) in triplets {
        let mut worst: f64 = 0.0;
        for rot in 0..3 {
            let (a, b, cidx) = (t[rot], t[(rot + 1) % 3], t[(rot + 2) % 3]);
            let expected = ms[cidx].scale(c(0.0, -scale));
            worst = worst.max(comm(a, b).max_abs_diff(&expected));
        }
        checks.push(IdentityCheck {
            description: format!(
                "triplet [M{}, M{}, M{}] with coefficient -{}i",
                t[0], t[1], t[2], scale
            ),
            residual: worst,
        });
    }
    for k in [3, 4, 7] {
        checks.push(IdentityCheck {
            description: format!("[M{k}, M8] = 0"),
            residual: comm(k, 8).max_abs(),
        });
    }
    checks
}

/// Standard Gell-Mann matrix `Λ_k`, `k = 1..=8`.
pub fn gellmann(k: usize) -> Result<ComplexMatrix> {
    let o = ZERO;
    let l = ONE;
    let mi = -I;
    Ok(match k {
        1 => ComplexMatrix::from_rows(&[[o, l, o], [l, o, o], [o, o, o]]),
        2 => ComplexMatrix::from_rows(&[[o, mi, o], [I, o, o], [o, o, o]]),
        3 => ComplexMatrix::from_rows(&[[l, o, o], [o, -l, o], [o, o, o]]),
        4 => ComplexMatrix::from_rows(&[[o, o, l], [o, o, o], [l, o, o]]),
        5 => ComplexMatrix::from_rows(&[[o, o, mi], [o, o, o], [I, o, o]]),
        6 => ComplexMatrix::from_rows(&[[o, o, o], [o, o, l], [o, l, o]]),
        7 => ComplexMatrix::from_rows(&[[o, o, o], [o, o, mi], [o, I, o]]),
        8 => {
            ComplexMatrix::from_rows(&[[l, o, o], [o, l, o], [o, o, -l - l]]).scale_re(1.0 / SQRT3)
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "Gell-Mann index {k} outside 1..=8"
            )))
        }
    })
}

/// `M_m = Σ coeff · Λ_idx`.
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannRelation {
    pub m: usize,
    pub terms: Vec<(usize, f64)>,
}

impl fmt::Display for GellMannRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> = self
            .terms
            .iter()
            .map(|(k, s)| format!("{s:+.6}*L{k}"))
            .collect();
        write!(f, "M{} = {}", self.m, rhs.join(" "))
    }
}

pub fn gellmann_map() -> Vec<GellMannRelation> {
    let h = FRAC_1_SQRT_2;
    let rel = |m: usize, terms: &[(usize, f64)]| GellMannRelation {
        m,
        terms: terms.to_vec(),
    };
    vec![
        rel(1, &[(1, -h), (6, -h)]),
        rel(2, &[(2, h), (7, h)]),
        rel(3, &[(3, 0.5), (8, SQRT3 / 2.0)]),
        rel(4, &[(5, -1.0)]),
        rel(5, &[(2, h), (7, -h)]),
        rel(6, &[(6, h), (1, -h)]),
        rel(7, &[(4, 1.0)]),
        rel(8, &[(3, SQRT3 / 2.0), (8, -0.5)]),
    ]
}

#[derive(Debug, Clone)]
pub struct GellMannReport {
    pub relations: Vec<(GellMannRelation, f64)>,
}

impl GellMannReport {
    pub fn passed(&self, tol: f64) -> usize {
        self.relations.iter().filter(|(_, r)| *r <= tol).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

pub fn verify_gellmann() -> GellMannReport {
    let relations = gellmann_map()
        .into_iter()
        .map(|rel| {
            let mut rhs = ComplexMatrix::zeros(3);
            for &(k, s) in &rel.terms {
                rhs += &gellmann(k).expect("index from table").scale_re(s);
            }
            let residual = m(rel.m).max_abs_diff(&rhs);
            (rel, residual)
        })
        .collect();
    GellMannReport { relations }
}

/// Real expansion coefficients `h_k = Tr(H M_k)` of a spin-1 Hamiltonian
/// `H = ½ Σ h_k M_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HCoefficients(pub [f64; 9]);

impl HCoefficients {
    pub fn get(&self, k: MIndex) -> f64 {
        self.0[k.get()]
    }
}

pub fn decompose_hamiltonian(h: &ComplexMatrix) -> Result<HCoefficients> {
    if h.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: h.dim(),
        });
    }
    h.ensure_hermitian(crate::linalg::HERMITIAN_TOL)?;
    let mut out = [0.0; 9];
    for (k, slot) in out.iter_mut().enumerate() {
        let v = h.trace_product(&m(k))?;
        if v.im.abs() > 1e-12 {
            return Err(Error::Inconsistent(format!(
                "Tr(H M{k}) has imaginary part {:e}",
                v.im
            )));
        }
        *slot = v.re;
    }
    Ok(HCoefficients(out))
}

pub fn build_hamiltonian(coeffs: &HCoefficients) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(3);
    for (k, &hk) in coeffs.0.iter().enumerate() {
        h += &m(k).scale_re(0.5 * hk);
    }
    h
}

/// Change of basis taking two-qubit product coordinates
/// `(↑↑, ↑↓, ↓↑, ↓↓)` to `(|1 1>, |1 0>, |1 -1>, |0 0>)` coordinates.
pub fn basis_change() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, h, h, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, h, -h, 0.0],
    ])
}

/// Embeds a spin-1 operator as a two-qubit operator in the product basis,
/// acting as `singlet_value` on the singlet. Basis operators use 0, gates 1.
pub fn to_qubit_basis(op3: &ComplexMatrix, singlet_value: Complex64) -> Result<ComplexMatrix> {
    if op3.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: op3.dim(),
        });
    }
    let block = ComplexMatrix::from_fn(4, |r, col| match (r, col) {
        (3, 3) => singlet_value,
        (3, _) | (_, 3) => ZERO,
        _ => op3[(r, col)],
    });
    let u = basis_change();
    Ok(&(&u.adjoint() * &block) * &u)
}

/// Inverse of [`to_qubit_basis`]: the triplet block and the singlet
/// diagonal entry. Fails if the operator couples triplet and singlet.
pub fn from_qubit_basis(op4: &ComplexMatrix) -> Result<(ComplexMatrix, Complex64)> {
    if op4.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: op4.dim(),
        });
    }
    let u = basis_change();
    let block = &(&u * op4) * &u.adjoint();
    let leak = (0..3)
        .map(|i| block[(i, 3)].norm().max(block[(3, i)].norm()))
        .fold(0.0, f64::max);
    if leak > 1e-12 {
        return Err(Error::Inconsistent(format!(
            "operator mixes triplet and singlet sectors (coupling {leak:e})"
        )));
    }
    let op3 = ComplexMatrix::from_fn(3, |r, col| block[(r, col)]);
    Ok((op3, block[(3, 3)]))
}
