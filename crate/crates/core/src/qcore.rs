//! Dense linear algebra on small labeled qubit registers.
//!
//! Every register stores its modes in the fixed global order
//! `A < B1 < B2 < C1 < C2`, with the first mode as the most significant bit of
//! the basis index. Operations that combine or relabel registers re-sort the
//! qubits so this holds for every value in the crate.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::noise::KrausSet;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Hermiticity tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-10;
/// Trace and norm tolerance for normalized states.
pub const NORM_TOL: f64 = 1e-12;

const MAX_QUBITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeLabel {
    A,
    B1,
    B2,
    C1,
    C2,
}

impl ModeLabel {
    pub const ALL: [ModeLabel; 5] = [
        ModeLabel::A,
        ModeLabel::B1,
        ModeLabel::B2,
        ModeLabel::C1,
        ModeLabel::C2,
    ];

    /// Exchanges Bob's and Charlie's modes, leaving `A` fixed.
    pub fn swap_bob_charlie(self) -> Self {
        match self {
            ModeLabel::A => ModeLabel::A,
            ModeLabel::B1 => ModeLabel::C1,
            ModeLabel::B2 => ModeLabel::C2,
            ModeLabel::C1 => ModeLabel::B1,
            ModeLabel::C2 => ModeLabel::B2,
        }
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModeLabel::A => "A",
            ModeLabel::B1 => "B1",
            ModeLabel::B2 => "B2",
            ModeLabel::C1 => "C1",
            ModeLabel::C2 => "C2",
        };
        f.write_str(s)
    }
}

impl FromStr for ModeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" => Ok(ModeLabel::A),
            "B1" => Ok(ModeLabel::B1),
            "B2" => Ok(ModeLabel::B2),
            "C1" => Ok(ModeLabel::C1),
            "C2" => Ok(ModeLabel::C2),
            other => Err(Error::Label(format!("unknown mode {other:?}"))),
        }
    }
}

fn check_labels(labels: &[ModeLabel]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Label("register has no modes".into()));
    }
    if labels.len() > MAX_QUBITS {
        return Err(Error::Label(format!(
            "{} modes exceeds the {MAX_QUBITS}-qubit limit",
            labels.len()
        )));
    }
    for pair in labels.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::Label(format!("duplicate mode {}", pair[0])));
        }
        if pair[0] > pair[1] {
            return Err(Error::Label(format!(
                "modes must follow global order, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

fn check_disjoint(a: &[ModeLabel], b: &[ModeLabel]) -> Result<()> {
    match a.iter().find(|l| b.contains(l)) {
        Some(&l) => Err(Error::LabelCollision(l)),
        None => Ok(()),
    }
}

/// Index map taking basis indices of a register ordered as `current` to the
/// register sorted into global order.
struct QubitPermutation {
    n: usize,
    // source position for each target position
    source: Vec<usize>,
}

impl QubitPermutation {
    fn sorting(current: &[ModeLabel]) -> (Self, Vec<ModeLabel>) {
        let mut order: Vec<usize> = (0..current.len()).collect();
        order.sort_by_key(|&k| current[k]);
        let sorted = order.iter().map(|&k| current[k]).collect();
        (
            QubitPermutation {
                n: current.len(),
                source: order,
            },
            sorted,
        )
    }

    fn is_identity(&self) -> bool {
        self.source.iter().enumerate().all(|(t, &s)| t == s)
    }

    fn map(&self, old: usize) -> usize {
        let n = self.n;
        self.source
            .iter()
            .enumerate()
            .fold(0, |acc, (t, &s)| acc | (((old >> (n - 1 - s)) & 1) << (n - 1 - t)))
    }
}

/// Normalized state vector over an ordered set of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<C64>,
    labels: Vec<ModeLabel>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, labels: Vec<ModeLabel>) -> Result<Self> {
        check_labels(&labels)?;
        let dim = 1usize << labels.len();
        if amplitudes.len() != dim {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {} modes (expected {dim})",
                amplitudes.len(),
                labels.len()
            )));
        }
        let amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm_squared();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "squared norm {norm} differs from 1"
            )));
        }
        Ok(PureState { amplitudes, labels })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C64>, labels: Vec<ModeLabel>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize, norm = {norm}")));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect(), labels)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(labels: Vec<ModeLabel>, index: usize) -> Result<Self> {
        check_labels(&labels)?;
        let dim = 1usize << labels.len();
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(amps, labels)
    }

    /// Normalized linear combination of states on identical modes.
    pub fn superpose(terms: &[(C64, &PureState)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidState("empty superposition".into()))?
            .1;
        let mut acc = DVector::zeros(first.dim());
        for (coeff, state) in terms {
            if state.labels != first.labels {
                return Err(Error::Label("superposed states differ in modes".into()));
            }
            acc += &state.amplitudes * *coeff;
        }
        Self::new(acc.iter().copied().collect(), first.labels.clone())
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        check_disjoint(&self.labels, &other.labels)?;
        let amps = self.amplitudes.kronecker(&other.amplitudes);
        let labels: Vec<ModeLabel> = self.labels.iter().chain(&other.labels).copied().collect();
        let (perm, sorted) = QubitPermutation::sorting(&labels);
        let amps = if perm.is_identity() {
            amps
        } else {
            let mut out = DVector::zeros(amps.len());
            for (i, a) in amps.iter().enumerate() {
                out[perm.map(i)] = *a;
            }
            out
        };
        Ok(PureState {
            amplitudes: amps,
            labels: sorted,
        })
    }

    pub fn to_density(&self) -> DensityMatrix {
        let entries = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix {
            entries,
            labels: self.labels.clone(),
            normalized: true,
        }
    }
}

/// Density matrix over an ordered set of modes.
///
/// `normalized == false` marks the intermediate output of a
/// non-trace-preserving map; such matrices are still Hermitian and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    labels: Vec<ModeLabel>,
    normalized: bool,
}

impl DensityMatrix {
    /// Validated, unit-trace density matrix.
    pub fn new(entries: CMatrix, labels: Vec<ModeLabel>) -> Result<Self> {
        let rho = DensityMatrix {
            entries,
            labels,
            normalized: true,
        };
        rho.validate()?;
        Ok(rho)
    }

    /// Validated Hermitian positive matrix with arbitrary nonnegative trace.
    pub fn new_unnormalized(entries: CMatrix, labels: Vec<ModeLabel>) -> Result<Self> {
        let rho = DensityMatrix {
            entries,
            labels,
            normalized: false,
        };
        rho.validate()?;
        Ok(rho)
    }

    pub fn maximally_mixed(labels: Vec<ModeLabel>) -> Result<Self> {
        check_labels(&labels)?;
        let dim = 1usize << labels.len();
        let entries = CMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        Ok(DensityMatrix {
            entries,
            labels,
            normalized: true,
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_labels(&self.labels)?;
        let dim = 1usize << self.labels.len();
        if self.entries.nrows() != dim || self.entries.ncols() != dim {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for {} modes",
                self.entries.nrows(),
                self.entries.ncols(),
                self.labels.len()
            )));
        }
        if let Some(v) = self.entries.iter().find(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite entry {v}")));
        }
        let herm = (&self.entries - self.entries.adjoint()).camax();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |rho - rho^dagger| = {herm:e})"
            )));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        if self.normalized {
            let tr = self.trace();
            if (tr - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        // symmetrize so rounding noise cannot leak into the spectrum
        let herm = (&self.entries + self.entries.adjoint()) * C64::new(0.5, 0.0);
        let mut eig: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|a, b| a.total_cmp(b));
        eig
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Divides by the trace. Returns the normalized matrix and the trace.
    pub fn normalize(&self) -> Result<(DensityMatrix, f64)> {
        let tr = self.trace();
        if !(tr > 0.0) {
            return Err(Error::InvalidState(format!("cannot normalize trace {tr}")));
        }
        let entries = &self.entries * C64::new(1.0 / tr, 0.0);
        Ok((
            DensityMatrix {
                entries,
                labels: self.labels.clone(),
                normalized: true,
            },
            tr,
        ))
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        check_disjoint(&self.labels, &other.labels)?;
        let entries = self.entries.kronecker(&other.entries);
        let labels: Vec<ModeLabel> = self.labels.iter().chain(&other.labels).copied().collect();
        let (perm, sorted) = QubitPermutation::sorting(&labels);
        Ok(DensityMatrix {
            entries: permute_matrix(&entries, &perm),
            labels: sorted,
            normalized: self.normalized && other.normalized,
        })
    }

    /// Renames every mode through `map` and re-sorts the qubits into global
    /// order. `map` must be injective on this register's modes.
    pub fn relabel(&self, map: impl Fn(ModeLabel) -> ModeLabel) -> Result<DensityMatrix> {
        let renamed: Vec<ModeLabel> = self.labels.iter().map(|&l| map(l)).collect();
        let mut check = renamed.clone();
        check.sort();
        check.dedup();
        if check.len() != renamed.len() {
            return Err(Error::Label("relabeling merges two modes".into()));
        }
        let (perm, sorted) = QubitPermutation::sorting(&renamed);
        Ok(DensityMatrix {
            entries: permute_matrix(&self.entries, &perm),
            labels: sorted,
            normalized: self.normalized,
        })
    }

    /// Conjugates by a single-qubit unitary acting on `target`.
    pub fn conjugate_local(
        &self,
        unitary: &nalgebra::Matrix2<C64>,
        target: ModeLabel,
    ) -> Result<DensityMatrix> {
        let q = self.position(target)?;
        let n = self.labels.len();
        Ok(DensityMatrix {
            entries: sandwich(&self.entries, unitary, n - 1 - q),
            labels: self.labels.clone(),
            normalized: self.normalized,
        })
    }

    fn position(&self, label: ModeLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::Label(format!("mode {label} not in register")))
    }
}

fn permute_matrix(m: &CMatrix, perm: &QubitPermutation) -> CMatrix {
    if perm.is_identity() {
        return m.clone();
    }
    let dim = m.nrows();
    let map: Vec<usize> = (0..dim).map(|i| perm.map(i)).collect();
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}

/// `(op ⊗ I) rho (op ⊗ I)^†` with `op` acting on the qubit at bit position
/// `bit` (0 = least significant).
fn sandwich(rho: &CMatrix, op: &nalgebra::Matrix2<C64>, bit: usize) -> CMatrix {
    let dim = rho.nrows();
    let mask = 1usize << bit;
    // left multiply: (op ⊗ I) rho
    let mut left = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        let bi = (i >> bit) & 1;
        let i0 = i & !mask;
        let i1 = i | mask;
        let (e0, e1) = (op[(bi, 0)], op[(bi, 1)]);
        if e0 == C64::new(0.0, 0.0) && e1 == C64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..dim {
            left[(i, j)] = e0 * rho[(i0, j)] + e1 * rho[(i1, j)];
        }
    }
    // right multiply by (op ⊗ I)^†: entry (j', j) of the adjoint is conj(op[bj, bj'])
    let mut out = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let bj = (j >> bit) & 1;
        let j0 = j & !mask;
        let j1 = j | mask;
        let (e0, e1) = (op[(bj, 0)].conj(), op[(bj, 1)].conj());
        for i in 0..dim {
            out[(i, j)] = left[(i, j0)] * e0 + left[(i, j1)] * e1;
        }
    }
    out
}

/// Composition shared by [`PureState`] and [`DensityMatrix`].
pub trait Tensor: Sized {
    fn tensor_with(&self, other: &Self) -> Result<Self>;
}

impl Tensor for PureState {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

impl Tensor for DensityMatrix {
    fn tensor_with(&self, other: &Self) -> Result<Self> {
        self.tensor(other)
    }
}

pub fn tensor<T: Tensor>(a: &T, b: &T) -> Result<T> {
    a.tensor_with(b)
}

/// Traces out every mode not listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[ModeLabel]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::Label("keep set is empty".into()));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort();
    keep_sorted.dedup();
    if let Some(l) = keep_sorted.iter().find(|l| !rho.labels.contains(l)) {
        return Err(Error::Label(format!("mode {l} not in register")));
    }

    let n = rho.labels.len();
    let kept_bits: Vec<usize> = keep_sorted
        .iter()
        .map(|l| n - 1 - rho.labels.iter().position(|x| x == l).unwrap())
        .collect();
    let traced_bits: Vec<usize> = (0..n).filter(|b| !kept_bits.contains(b)).collect();

    let k = kept_bits.len();
    let out_dim = 1usize << k;
    let env_dim = 1usize << traced_bits.len();
    let scatter = |sub: usize, bits: &[usize]| -> usize {
        let m = bits.len();
        bits.iter()
            .enumerate()
            .fold(0, |acc, (pos, &bit)| acc | (((sub >> (m - 1 - pos)) & 1) << bit))
    };
    let kept_index: Vec<usize> = (0..out_dim).map(|i| scatter(i, &kept_bits)).collect();
    let env_index: Vec<usize> = (0..env_dim).map(|e| scatter(e, &traced_bits)).collect();

    let mut out = CMatrix::zeros(out_dim, out_dim);
    for i in 0..out_dim {
        for j in 0..out_dim {
            let mut acc = C64::new(0.0, 0.0);
            for &e in &env_index {
                acc += rho.entries[(kept_index[i] | e, kept_index[j] | e)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix {
        entries: out,
        labels: keep_sorted,
        normalized: rho.normalized,
    })
}

/// `Σᵢ (Eᵢ ⊗ I) ρ (Eᵢ ⊗ I)^†` with every `Eᵢ` acting on `target`.
pub fn apply_single_qubit_kraus(
    rho: &DensityMatrix,
    ops: &KrausSet,
    target: ModeLabel,
) -> Result<DensityMatrix> {
    let q = rho.position(target)?;
    let bit = rho.labels.len() - 1 - q;
    let dim = rho.dim();
    let mut out = CMatrix::zeros(dim, dim);
    for op in ops.ops() {
        out += sandwich(&rho.entries, op, bit);
    }
    Ok(DensityMatrix {
        entries: out,
        labels: rho.labels.clone(),
        normalized: rho.normalized && ops.is_trace_preserving(),
    })
}

/// Parameters of a three-qubit X state.
///
/// Diagonal layout is `(μ₁, μ₂, μ₃, μ₄, ν₄, ν₃, ν₂, ν₁)`; block `i` couples row
/// `i` with row `7 - i` through `wᵢ`, so `μᵢ` pairs with `νᵢ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub mu: [f64; 4],
    pub nu: [f64; 4],
    pub w: [C64; 4],
}

impl XState {
    pub const TRACE_TOL: f64 = 1e-10;
    const BLOCK_TOL: f64 = 1e-12;

    pub fn new(mu: [f64; 4], nu: [f64; 4], w: [C64; 4]) -> Result<Self> {
        let x = XState { mu, nu, w };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let total: f64 = self.mu.iter().sum::<f64>() + self.nu.iter().sum::<f64>();
        if (total - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::InvalidState(format!("X-state trace {total} differs from 1")));
        }
        for i in 0..4 {
            if self.mu[i] < -Self::BLOCK_TOL || self.nu[i] < -Self::BLOCK_TOL {
                return Err(Error::InvalidState(format!("negative population in block {}", i + 1)));
            }
            let excess = self.w[i].norm_sqr() - self.mu[i] * self.nu[i];
            if excess > Self::BLOCK_TOL {
                return Err(Error::InvalidState(format!(
                    "|w{}|^2 exceeds mu*nu by {excess:e}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Main diagonal in matrix order.
    pub fn diagonal(&self) -> [f64; 8] {
        let [m1, m2, m3, m4] = self.mu;
        let [n1, n2, n3, n4] = self.nu;
        [m1, m2, m3, m4, n4, n3, n2, n1]
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(8, 8);
        for (i, d) in self.diagonal().iter().enumerate() {
            m[(i, i)] = C64::new(*d, 0.0);
        }
        for i in 0..4 {
            m[(i, 7 - i)] = self.w[i];
            m[(7 - i, i)] = self.w[i].conj();
        }
        m
    }
}

/// Reads the X-state parameters off an 8x8 normalized density matrix.
///
/// Fails with [`Error::NotXForm`] on the largest entry outside the diagonal
/// and anti-diagonal when its modulus exceeds `tol`.
pub fn as_x_state(rho: &DensityMatrix, tol: f64) -> Result<XState> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(format!("X state needs 8x8, got {}", rho.dim())));
    }
    if !rho.normalized {
        return Err(Error::InvalidState("X-state extraction needs a normalized matrix".into()));
    }
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..8 {
        for j in 0..8 {
            if i == j || i + j == 7 {
                continue;
            }
            let mag = rho.entries[(i, j)].norm();
            if mag > tol && worst.map_or(true, |(_, _, m)| mag > m) {
                worst = Some((i, j, mag));
            }
        }
    }
    if let Some((row, col, magnitude)) = worst {
        return Err(Error::NotXForm { row, col, magnitude });
    }
    let d = |i: usize| rho.entries[(i, i)].re;
    let x = XState {
        mu: [d(0), d(1), d(2), d(3)],
        nu: [d(7), d(6), d(5), d(4)],
        w: [
            rho.entries[(0, 7)],
            rho.entries[(1, 6)],
            rho.entries[(2, 5)],
            rho.entries[(3, 4)],
        ],
    };
    x.validate()?;
    Ok(x)
}
