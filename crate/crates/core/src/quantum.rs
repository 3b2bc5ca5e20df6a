//! Polarization-qubit linear algebra: pure states, density matrices, Pauli
//! operators, entanglement metrics and composite-system plumbing.
//!
//! Basis ordering is fixed as {|H⟩, |V⟩} per qubit, with multi-qubit kets
//! ordered so the first tensor factor is the most significant bit:
//! |HH⟩, |HV⟩, |VH⟩, |VV⟩ for two qubits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const HERMITICITY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = -1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn is_power_of_two(d: usize) -> bool {
    d >= 2 && d & (d - 1) == 0
}

/// A normalized pure state over one or more polarization qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Builds a state from raw amplitudes. The squared norm must equal 1
    /// within 1e-12 and the dimension must be a power of two.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = amplitudes.len();
        if !is_power_of_two(d) {
            return Err(Error::InvalidState(format!(
                "pure state dimension must be a power of two >= 2, got {d}"
            )));
        }
        let v = DVector::from_vec(amplitudes);
        let norm_sq: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "pure state norm^2 = {norm_sq}, expected 1 within {NORM_TOL}"
            )));
        }
        Ok(Self { amplitudes: v })
    }

    /// Single-qubit state a|H⟩ + b|V⟩, normalized on construction.
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        Self::new(vec![a / n, b / n])
    }

    pub fn horizontal() -> Self {
        Self::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap()
    }

    pub fn vertical() -> Self {
        Self::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    pub fn diagonal() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap()
    }

    pub fn antidiagonal() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(-s, 0.0)]).unwrap()
    }

    /// Right-circular: (|H⟩ + i|V⟩)/√2.
    pub fn right_circular() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(0.0, s)]).unwrap()
    }

    /// Left-circular: (|H⟩ − i|V⟩)/√2.
    pub fn left_circular() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(0.0, -s)]).unwrap()
    }

    /// The six cardinal polarization states {H, V, D, A, R, L}.
    pub fn cardinal_states() -> [Self; 6] {
        [
            Self::horizontal(),
            Self::vertical(),
            Self::diagonal(),
            Self::antidiagonal(),
            Self::right_circular(),
            Self::left_circular(),
        ]
    }

    /// |φ+⟩ = (|HH⟩ + |VV⟩)/√2
    pub fn bell_phi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
    }

    /// |φ−⟩ = (|HH⟩ − |VV⟩)/√2
    pub fn bell_phi_minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)]).unwrap()
    }

    /// |ψ+⟩ = (|HV⟩ + |VH⟩)/√2
    pub fn bell_psi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap()
    }

    /// |ψ−⟩ = (|HV⟩ − |VH⟩)/√2
    pub fn bell_psi_minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Projector |ψ⟩⟨ψ| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix { entries: m }
    }
}

/// Pauli operator labels in the {I, X, Y, Z} convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> DMatrix<Complex64> {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        }
    }

    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
}

/// A d×d Hermitian, positive-semidefinite, trace-one operator.
///
/// Validity (Hermiticity within 1e-10, unit trace within 1e-10, eigenvalues
/// ≥ −1e-9) is enforced at construction. Tomography reconstructions that
/// fall slightly outside the PSD cone can be repaired with
/// [`DensityMatrix::repaired_psd`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidState(format!(
                "density matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dm = Self { entries };
        dm.validate()?;
        Ok(dm)
    }

    /// Constructor for values that are valid by algebraic construction.
    pub(crate) fn from_valid(entries: DMatrix<Complex64>) -> Self {
        Self { entries }
    }

    fn validate(&self) -> Result<()> {
        let m = &self.entries;
        let d = m.nrows();
        if !is_power_of_two(d) {
            return Err(Error::InvalidState(format!(
                "density matrix dimension must be a power of two >= 2, got {d}"
            )));
        }
        for i in 0..d {
            for j in 0..d {
                let delta = (m[(i, j)] - m[(j, i)].conj()).norm();
                if delta > HERMITICITY_TOL {
                    return Err(Error::InvalidState(format!(
                        "not Hermitian at ({i},{j}): deviation {delta:.3e}"
                    )));
                }
            }
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace = {tr}, expected 1")));
        }
        let eigs = self.eigenvalues();
        if let Some(min) = eigs.iter().cloned().reduce(f64::min) {
            if min < PSD_TOL {
                return Err(Error::InvalidState(format!(
                    "negative eigenvalue {min:.3e} below tolerance {PSD_TOL:.0e}"
                )));
            }
        }
        Ok(())
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if !is_power_of_two(dim) {
            return Err(Error::InvalidState(format!(
                "dimension must be a power of two >= 2, got {dim}"
            )));
        }
        let p = c(1.0 / dim as f64, 0.0);
        Ok(Self {
            entries: DMatrix::from_diagonal(&DVector::from_element(dim, p)),
        })
    }

    /// Two-qubit Werner state p·|φ+⟩⟨φ+| + (1−p)·I/4.
    pub fn werner(p: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!(
                "Werner parameter {p} outside [-1/3, 1]"
            )));
        }
        let bell = PureState::bell_phi_plus().density();
        let mixed = Self::maximally_mixed(4)?;
        let m = bell.entries * c(p, 0.0) + mixed.entries * c(1.0 - p, 0.0);
        Ok(Self { entries: m })
    }

    /// Bell state |φ+⟩ with its HH–VV coherence scaled by a complex factor
    /// of magnitude ≤ 1. Diagonal entries stay (½, 0, 0, ½), so the fidelity
    /// to |φ+⟩ is (1 + Re coherence)/2.
    pub fn dephased_phi_plus(coherence: Complex64) -> Result<Self> {
        if coherence.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidInput(format!(
                "coherence magnitude {} exceeds 1",
                coherence.norm()
            )));
        }
        let z = c(0.0, 0.0);
        let h = c(0.5, 0.0);
        let off = coherence * 0.5;
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                h,
                z,
                z,
                off.conj(),
                z,
                z,
                z,
                z,
                z,
                z,
                z,
                z,
                off,
                z,
                z,
                h,
            ],
        );
        Ok(Self { entries: m })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Real eigenvalues of the Hermitian matrix, unsorted.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect()
    }

    /// Opt-in repair: clips negative eigenvalues to zero and renormalizes
    /// the trace to one. Intended for tomography reconstructions that land
    /// slightly outside the PSD cone.
    pub fn repaired_psd(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || !is_power_of_two(m.nrows()) {
            return Err(Error::InvalidState(
                "repair requires a square power-of-two matrix".into(),
            ));
        }
        // Symmetrize first so the eigendecomposition is well defined.
        let herm = (m.clone() + m.adjoint()) * c(0.5, 0.0);
        let eig = herm.symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().map(|v| v.max(0.0)).collect();
        let total: f64 = vals.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidState(
                "matrix has no positive eigenvalue mass to repair".into(),
            ));
        }
        for v in &mut vals {
            *v /= total;
        }
        let d = herm.nrows();
        let mut out = DMatrix::zeros(d, d);
        for k in 0..d {
            let col = eig.eigenvectors.column(k);
            let outer = DMatrix::from_fn(d, d, |i, j| col[i] * col[j].conj());
            out += outer * c(vals[k], 0.0);
        }
        Ok(Self { entries: out })
    }

    /// Kronecker product; the result carries this state's qubits as the
    /// most significant factor.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    /// Reduced state over the qubits listed in `keep` (0 = most significant
    /// factor); all other qubits are traced out.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits();
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        if keep_sorted.len() != keep.len() {
            return Err(Error::InvalidInput("duplicate subsystem index".into()));
        }
        if keep_sorted.is_empty() || keep_sorted.iter().any(|&q| q >= n) {
            return Err(Error::InvalidInput(format!(
                "subsystem indices {keep:?} invalid for {n} qubits"
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|q| !keep_sorted.contains(q)).collect();
        let dk = 1usize << keep_sorted.len();
        let dt = 1usize << traced.len();

        // Index with qubit 0 as the most significant bit.
        let assemble = |kept_bits: usize, traced_bits: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &q) in keep_sorted.iter().enumerate() {
                let bit = (kept_bits >> (keep_sorted.len() - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            for (pos, &q) in traced.iter().enumerate() {
                let bit = (traced_bits >> (traced.len() - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            idx
        };

        let mut out = DMatrix::zeros(dk, dk);
        for r in 0..dk {
            for col in 0..dk {
                let mut acc = c(0.0, 0.0);
                for e in 0..dt {
                    acc += self.entries[(assemble(r, e), assemble(col, e))];
                }
                out[(r, col)] = acc;
            }
        }
        Ok(DensityMatrix { entries: out })
    }

    /// U ρ U† for a unitary of matching dimension.
    pub fn conjugated_by(&self, u: &DMatrix<Complex64>) -> Result<DensityMatrix> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, state is {}",
                u.nrows(),
                u.ncols(),
                self.dim()
            )));
        }
        Ok(DensityMatrix {
            entries: u * &self.entries * u.adjoint(),
        })
    }
}

/// Overlap fidelity ⟨target|ρ|target⟩ with a pure target state.
pub fn fidelity(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    if rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} vs target dim {}",
            rho.dim(),
            target.dim()
        )));
    }
    let v = target.amplitudes();
    let bra_rho_ket: Complex64 = (rho.matrix() * v).dotc(v).conj();
    if bra_rho_ket.im.abs() > 1e-10 {
        return Err(Error::InvalidState(format!(
            "fidelity has imaginary part {:.3e}",
            bra_rho_ket.im
        )));
    }
    Ok(bra_rho_ket.re)
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// Computed from the square roots of the eigenvalues of
/// √ρ · (σ_Y⊗σ_Y) ρ* (σ_Y⊗σ_Y) · √ρ, which shares its spectrum with
/// ρ(σ_Y⊗σ_Y)ρ*(σ_Y⊗σ_Y) but is Hermitian.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence requires a 4x4 density matrix, got {}",
            rho.dim()
        )));
    }
    let yy = Pauli::Y.matrix().kronecker(&Pauli::Y.matrix());
    let rho_star = rho.matrix().map(|v| v.conj());
    let rho_tilde = &yy * rho_star * &yy;

    let eig = rho.matrix().clone().symmetric_eigen();
    let d = 4;
    let mut sqrt_rho = DMatrix::zeros(d, d);
    for k in 0..d {
        let lam = eig.eigenvalues[k].max(0.0).sqrt();
        let col = eig.eigenvectors.column(k);
        let outer = DMatrix::from_fn(d, d, |i, j| col[i] * col[j].conj());
        sqrt_rho += outer * c(lam, 0.0);
    }
    let r = &sqrt_rho * rho_tilde * &sqrt_rho;
    let mut lambdas: Vec<f64> = r
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// JSON wire form: dimension plus row-major [re, im] pairs.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        let dim = m.nrows();
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        Self { dim, data }
    }

    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.data.len() != self.dim * self.dim {
            return Err(Error::InvalidInput(format!(
                "matrix JSON claims dim {} but holds {} entries",
                self.dim,
                self.data.len()
            )));
        }
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let [re, im] = self.data[i * self.dim + j];
            c(re, im)
        }))
    }
}

impl DensityMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from_matrix(&self.entries)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::new(wire.to_matrix()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fidelity_identity_case() {
        let bell = PureState::bell_phi_plus();
        let f = fidelity(&bell.density(), &bell).unwrap();
        assert_abs_diff_eq!(f, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let f = fidelity(&rho, &PureState::bell_phi_plus()).unwrap();
        assert_abs_diff_eq!(f, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_werner_against_direct_contraction() {
        // Oracle: explicit elementwise Werner construction and loop contraction.
        let p = 0.92;
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new((1.0 - p) / 4.0, 0.0);
        }
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[i][j] += Complex64::new(p / 2.0, 0.0);
        }
        let psi = PureState::bell_phi_plus();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += psi.amplitudes()[i].conj() * m[i][j] * psi.amplitudes()[j];
            }
        }
        assert_abs_diff_eq!(acc.re, (1.0 + 3.0 * p) / 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(acc.re, 0.94, epsilon = 1e-12);

        let f = fidelity(&DensityMatrix::werner(p).unwrap(), &psi).unwrap();
        assert_abs_diff_eq!(f, acc.re, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_rejects_dimension_mismatch() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(fidelity(&rho, &PureState::horizontal()).is_err());
    }

    #[test]
    fn concurrence_bell_and_mixed() {
        let bell = PureState::bell_phi_plus().density();
        assert_abs_diff_eq!(concurrence(&bell).unwrap(), 1.0, epsilon = 1e-9);
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert_abs_diff_eq!(concurrence(&mixed).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn concurrence_werner_matches_eigen_oracle() {
        let p = 0.92;
        let rho = DensityMatrix::werner(p).unwrap();
        // For Werner states the spin-flipped product is diagonal in the Bell
        // basis; max(0, (3p-1)/2) is the closed form.
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        assert_abs_diff_eq!(expected, 0.88, epsilon = 1e-12);
        assert_abs_diff_eq!(concurrence(&rho).unwrap(), expected, epsilon = 1e-9);
    }

    #[test]
    fn tensor_trivials() {
        let half = DensityMatrix::maximally_mixed(2).unwrap();
        let quarter = half.tensor(&half);
        let expect = DensityMatrix::maximally_mixed(4).unwrap();
        assert!((quarter.matrix() - expect.matrix()).norm() < 1e-14);

        let h = PureState::horizontal().density();
        let v = PureState::vertical().density();
        let hv = h.tensor(&v);
        assert_abs_diff_eq!(hv.entry(1, 1).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn tensor_against_elementwise_kronecker_oracle() {
        let a = DensityMatrix::werner(0.5).unwrap();
        let b = PureState::horizontal().density();
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 8);
        assert_abs_diff_eq!(t.trace().re, 1.0, epsilon = 1e-12);
        for i in 0..8 {
            for j in 0..8 {
                let expect = a.entry(i / 2, j / 2) * b.entry(i % 2, j % 2);
                assert!((t.entry(i, j) - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_trace_trivials() {
        let bell = PureState::bell_phi_plus().density();
        let reduced = bell.partial_trace(&[0]).unwrap();
        let expect = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((reduced.matrix() - expect.matrix()).norm() < 1e-12);

        let hv = PureState::horizontal()
            .density()
            .tensor(&PureState::vertical().density());
        let first = hv.partial_trace(&[0]).unwrap();
        assert!((first.matrix() - PureState::horizontal().density().matrix()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_werner_marginal_by_index_contraction() {
        let w = DensityMatrix::werner(0.92).unwrap();
        let got = w.partial_trace(&[1]).unwrap();
        // Oracle: direct index contraction over the traced qubit.
        let mut expect = DMatrix::zeros(2, 2);
        for r in 0..2 {
            for col in 0..2 {
                for e in 0..2 {
                    expect[(r, col)] += w.entry(2 * e + r, 2 * e + col);
                }
            }
        }
        assert!((got.matrix() - &expect).norm() < 1e-12);
        assert!((got.matrix() - DensityMatrix::maximally_mixed(2).unwrap().matrix()).norm() < 1e-12);
        assert_abs_diff_eq!(got.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_indices() {
        let bell = PureState::bell_phi_plus().density();
        assert!(bell.partial_trace(&[2]).is_err());
        assert!(bell.partial_trace(&[]).is_err());
        assert!(bell.partial_trace(&[0, 0]).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let rho = DensityMatrix::werner(0.731594).unwrap();
        let s = rho.to_json();
        let back = DensityMatrix::from_json(&s).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(rho.entry(i, j), back.entry(i, j));
            }
        }
    }

    #[test]
    fn repair_clips_and_renormalizes() {
        // Slightly negative eigenvalue, as linear-inversion tomography produces.
        let mut m = DensityMatrix::maximally_mixed(2).unwrap().matrix().clone();
        m[(0, 0)] = c(1.02, 0.0);
        m[(1, 1)] = c(-0.02, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_err());
        let fixed = DensityMatrix::repaired_psd(m).unwrap();
        assert_abs_diff_eq!(fixed.trace().re, 1.0, epsilon = 1e-12);
        assert!(fixed.eigenvalues().iter().all(|&l| l >= -1e-12));
    }

    #[test]
    fn invalid_states_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.3, 0.0)]);
        assert!(DensityMatrix::new(m).is_err(), "non-Hermitian must fail");
        let m2 = DMatrix::from_row_slice(2, 2, &[c(0.8, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)]);
        assert!(DensityMatrix::new(m2).is_err(), "trace != 1 must fail");
    }
}
