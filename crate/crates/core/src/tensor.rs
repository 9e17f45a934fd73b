//! Dense complex linear algebra for two-party systems whose local spaces
//! have two or three levels.
//!
//! Basis label `(i, j)` (1-based, `i` for player A and `j` for player B)
//! maps to the flat index `(i - 1) * dim_b + (j - 1)`. Kronecker products
//! put player A's factor first so that operators and state vectors agree on
//! this ordering.
//!
//! Everything is stored dense and row-major. The largest matrix in play is
//! 9×9.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Numerical tolerance for every invariant check on states, operators and
/// density matrices.
pub const TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("state is not normalized: squared norm is {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported local dimension {0}, expected 2 or 3")]
    UnsupportedDimension(usize),
    #[error("basis label ({i}, {j}) is out of range for local dimension {dim}")]
    BasisOutOfRange { i: usize, j: usize, dim: usize },
    #[error("trace has an imaginary residue of {residue}")]
    ImaginaryResidue { residue: f64 },
    #[error("density matrix invariant violated: {0}")]
    InvalidDensity(String),
}

pub type Result<T> = std::result::Result<T, TensorError>;

fn check_finite(entries: &[Complex64]) -> Result<()> {
    match entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(TensorError::NonFinite { index }),
        None => Ok(()),
    }
}

fn check_local_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(TensorError::UnsupportedDimension(dim))
    }
}

/// Pure state of the two-party system, amplitudes `u_ij` in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes that must already be normalized.
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_local_dim(dim_a)?;
        check_local_dim(dim_b)?;
        if amplitudes.len() != dim_a * dim_b {
            return Err(TensorError::DimensionMismatch {
                expected: dim_a * dim_b,
                found: amplitudes.len(),
            });
        }
        check_finite(&amplitudes)?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOLERANCE {
            return Err(TensorError::NotNormalized { norm_sqr });
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Rescales arbitrary non-zero amplitudes onto the unit sphere.
    pub fn normalized(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_finite(&amplitudes)?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(TensorError::NotNormalized { norm_sqr: 0.0 });
        }
        Self::new(
            dim_a,
            dim_b,
            amplitudes.into_iter().map(|z| z / norm).collect(),
        )
    }

    /// The product basis state `|ij⟩`, labels 1-based.
    pub fn basis(dim: usize, i: usize, j: usize) -> Result<Self> {
        check_local_dim(dim)?;
        if !(1..=dim).contains(&i) || !(1..=dim).contains(&j) {
            return Err(TensorError::BasisOutOfRange { i, j, dim });
        }
        let mut amplitudes = vec![ZERO; dim * dim];
        amplitudes[(i - 1) * dim + (j - 1)] = ONE;
        Self::new(dim, dim, amplitudes)
    }

    /// State with real non-negative amplitudes `sqrt(w_ij)` for the given
    /// outcome weights. The weights must sum to one.
    pub fn from_weights(dim: usize, weights: &[f64]) -> Result<Self> {
        if let Some(index) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(TensorError::NonFinite { index });
        }
        Self::new(
            dim,
            dim,
            weights.iter().map(|w| Complex64::new(w.sqrt(), 0.0)).collect(),
        )
    }

    /// Uniformly distributed state on the complex unit sphere: real and
    /// imaginary parts drawn from a standard normal, then normalized.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let amplitudes: Vec<Complex64> = (0..dim * dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            if let Ok(state) = Self::normalized(dim, dim, amplitudes) {
                return state;
            }
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Dimension of the joint space.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Flat index of the 1-based basis label `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.dim_b + (j - 1)
    }

    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitudes[self.index(i, j)]
    }

    /// `|u_ij|²`
    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.amplitude(i, j).norm_sqr()
    }

    /// All `|u_ij|²` in row-major order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Returns `(i, j)` if the state is a basis state up to a global phase.
    pub fn as_basis_label(&self) -> Option<(usize, usize)> {
        let k = self
            .amplitudes
            .iter()
            .position(|z| (z.norm_sqr() - 1.0).abs() <= TOLERANCE)?;
        Some((k / self.dim_b + 1, k % self.dim_b + 1))
    }
}

fn matmul_skip_zeros(dim: usize, lhs: &[Complex64], rhs: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let factor = lhs[r * dim + k];
            if factor == ZERO {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += factor * rhs[k * dim + c];
            }
        }
    }
    out
}

fn adjoint_of(dim: usize, entries: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c * dim + r] = entries[r * dim + c].conj();
        }
    }
    out
}

/// Square complex matrix acting on a local or joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(TensorError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = ONE;
        }
        Self { dim, entries }
    }

    /// Permutation matrix sending basis vector `k` to basis vector
    /// `images[k]` (0-based). `images` must be a permutation of `0..n`.
    pub fn permutation(images: &[usize]) -> Self {
        let dim = images.len();
        let mut seen = vec![false; dim];
        let mut entries = vec![ZERO; dim * dim];
        for (k, &image) in images.iter().enumerate() {
            assert!(image < dim && !seen[image], "not a permutation: {images:?}");
            seen[image] = true;
            entries[image * dim + k] = ONE;
        }
        Self { dim, entries }
    }

    /// Real diagonal operator.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        let mut entries = vec![ZERO; dim * dim];
        for (k, v) in values.iter().enumerate() {
            entries[k * dim + k] = Complex64::new(*v, 0.0);
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            entries: adjoint_of(self.dim, &self.entries),
        }
    }

    pub fn matmul(&self, other: &Operator) -> Result<Self> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            entries: matmul_skip_zeros(self.dim, &self.entries, &other.entries),
        })
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        match self.matmul(&self.adjoint()) {
            Ok(product) => product.max_abs_diff(&Operator::identity(self.dim)) <= tol,
            Err(_) => false,
        }
    }

    /// `op |psi⟩`. The operator must act on the joint space of `psi`; the
    /// result is renormalized only through the unitarity of `op`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.dim != psi.len() {
            return Err(TensorError::DimensionMismatch {
                expected: psi.len(),
                found: self.dim,
            });
        }
        let amplitudes = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.entries[r * self.dim + c] * psi.amplitudes[c])
                    .sum()
            })
            .collect();
        StateVector::new(psi.dim_a, psi.dim_b, amplitudes)
    }
}

/// Kronecker product `op_a ⊗ op_b`, with `op_a` as the leading factor.
pub fn tensor(op_a: &Operator, op_b: &Operator) -> Operator {
    let (na, nb) = (op_a.dim, op_b.dim);
    let dim = na * nb;
    let mut entries = vec![ZERO; dim * dim];
    for ra in 0..na {
        for ca in 0..na {
            let x = op_a.entries[ra * na + ca];
            if x == ZERO {
                continue;
            }
            for rb in 0..nb {
                for cb in 0..nb {
                    entries[(ra * nb + rb) * dim + (ca * nb + cb)] = x * op_b.entries[rb * nb + cb];
                }
            }
        }
    }
    Operator { dim, entries }
}

/// Hermitian, unit-trace, positive-semidefinite matrix over the joint space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates the entries against every density-matrix invariant checked
    /// here: Hermiticity, unit trace and non-negative real diagonal.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(TensorError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        check_finite(&entries)?;
        let rho = Self { dim, entries };
        rho.check_invariants()?;
        Ok(rho)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.dim;
        for r in 0..n {
            for c in r..n {
                let gap = (self.entries[r * n + c] - self.entries[c * n + r].conj()).norm();
                if gap > TOLERANCE {
                    return Err(TensorError::InvalidDensity(format!(
                        "not Hermitian at ({r}, {c}): gap {gap:e}"
                    )));
                }
            }
        }
        let trace = self.trace();
        if (trace.re - 1.0).abs() > TOLERANCE || trace.im.abs() > TOLERANCE {
            return Err(TensorError::InvalidDensity(format!("trace is {trace}")));
        }
        for k in 0..n {
            let z = self.entries[k * n + k];
            if z.re < -TOLERANCE || z.im.abs() > TOLERANCE {
                return Err(TensorError::InvalidDensity(format!(
                    "diagonal entry {k} is {z}"
                )));
            }
        }
        Ok(())
    }

    /// Convex combination `Σ w_k ρ_k`. Terms with zero weight are skipped.
    pub fn mixture<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a DensityMatrix)>,
    {
        let mut dim = None;
        let mut entries: Vec<Complex64> = Vec::new();
        for (weight, rho) in terms {
            match dim {
                None => {
                    dim = Some(rho.dim);
                    entries = vec![ZERO; rho.dim * rho.dim];
                }
                Some(n) if n != rho.dim => {
                    return Err(TensorError::DimensionMismatch {
                        expected: n,
                        found: rho.dim,
                    })
                }
                Some(_) => {}
            }
            if weight == 0.0 {
                continue;
            }
            for (acc, z) in entries.iter_mut().zip(&rho.entries) {
                *acc += *z * weight;
            }
        }
        let dim = dim.ok_or(TensorError::DimensionMismatch {
            expected: 1,
            found: 0,
        })?;
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.entries[k * self.dim + k]).sum()
    }

    /// Real parts of the diagonal, i.e. the outcome distribution in the
    /// product basis.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|k| self.entries[k * self.dim + k].re)
            .collect()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// `|psi⟩⟨psi|`
pub fn outer_product(psi: &StateVector) -> DensityMatrix {
    let u = &psi.amplitudes;
    let dim = u.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            entries.push(u[r] * u[c].conj());
        }
    }
    DensityMatrix { dim, entries }
}

/// `U ρ U†`
pub fn conjugate_sandwich(op: &Operator, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if op.dim != rho.dim {
        return Err(TensorError::DimensionMismatch {
            expected: rho.dim,
            found: op.dim,
        });
    }
    let n = op.dim;
    // W U† = (U W†)†, which keeps the sparse factor on the left both times.
    let left = matmul_skip_zeros(n, &op.entries, &rho.entries);
    let right = matmul_skip_zeros(n, &op.entries, &adjoint_of(n, &left));
    Ok(DensityMatrix {
        dim: n,
        entries: adjoint_of(n, &right),
    })
}

/// `Tr(observable · ρ)` for a Hermitian observable.
pub fn expectation(observable: &Operator, rho: &DensityMatrix) -> Result<f64> {
    if observable.dim != rho.dim {
        return Err(TensorError::DimensionMismatch {
            expected: rho.dim,
            found: observable.dim,
        });
    }
    let n = rho.dim;
    let mut trace = ZERO;
    for r in 0..n {
        for k in 0..n {
            let o = observable.entries[r * n + k];
            if o != ZERO {
                trace += o * rho.entries[k * n + r];
            }
        }
    }
    if trace.im.abs() > TOLERANCE {
        return Err(TensorError::ImaginaryResidue { residue: trace.im });
    }
    Ok(trace.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn swap2() -> Operator {
        Operator::permutation(&[1, 0])
    }

    // C: 1 <-> 3, D: 1 <-> 2 on the three-level space (0-based images).
    fn c3() -> Operator {
        Operator::permutation(&[2, 1, 0])
    }

    fn d3() -> Operator {
        Operator::permutation(&[1, 0, 2])
    }

    #[test]
    fn rejects_unnormalized_state() {
        let err = StateVector::new(2, 2, vec![ONE, ONE, ZERO, ZERO]).unwrap_err();
        assert!(matches!(err, TensorError::NotNormalized { norm_sqr } if norm_sqr == 2.0));
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        let nan = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            StateVector::new(2, 2, vec![nan, ZERO, ZERO, ZERO]),
            Err(TensorError::NonFinite { index: 0 })
        ));
        assert!(matches!(
            StateVector::new(2, 2, vec![ONE]),
            Err(TensorError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            StateVector::basis(4, 1, 1),
            Err(TensorError::UnsupportedDimension(4))
        ));
        assert!(matches!(
            StateVector::basis(2, 3, 1),
            Err(TensorError::BasisOutOfRange { .. })
        ));
    }

    #[test]
    fn outer_product_of_basis_state() {
        let rho = outer_product(&StateVector::basis(2, 1, 1).unwrap());
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r == 0 && c == 0 { 1.0 } else { 0.0 };
                assert_eq!(rho.get(r, c), Complex64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn outer_product_of_entangled_state() {
        let h = 0.5f64.sqrt();
        let mut amps = vec![ZERO; 9];
        amps[0] = Complex64::new(h, 0.0);
        amps[8] = Complex64::new(h, 0.0);
        let rho = outer_product(&StateVector::new(3, 3, amps).unwrap());
        for r in 0..9 {
            for c in 0..9 {
                let coupled = (r == 0 || r == 8) && (c == 0 || c == 8);
                let expected = if coupled { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(rho.get(r, c).re, expected, epsilon = 1e-15);
                assert_eq!(rho.get(r, c).im, 0.0);
            }
        }
    }

    #[test]
    fn outer_product_of_random_state_has_unit_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in [2, 3] {
            for _ in 0..50 {
                let rho = outer_product(&StateVector::random(dim, &mut rng));
                let t = rho.trace();
                assert!((t.re - 1.0).abs() <= TOLERANCE && t.im.abs() <= TOLERANCE);
                rho.check_invariants().unwrap();
            }
        }
    }

    #[test]
    fn tensor_products_act_in_player_order() {
        assert_eq!(tensor(&Operator::identity(2), &Operator::identity(2)), Operator::identity(4));

        let flipped = tensor(&swap2(), &Operator::identity(2))
            .apply(&StateVector::basis(2, 1, 1).unwrap())
            .unwrap();
        assert_eq!(flipped, StateVector::basis(2, 2, 1).unwrap());

        let moved = tensor(&c3(), &d3())
            .apply(&StateVector::basis(3, 1, 2).unwrap())
            .unwrap();
        assert_eq!(moved, StateVector::basis(3, 3, 1).unwrap());
    }

    #[test]
    fn tensor_is_associative_for_permutations() {
        let (x, y, z) = (swap2(), c3(), d3());
        let left = tensor(&tensor(&x, &y), &z);
        let right = tensor(&x, &tensor(&y, &z));
        assert_eq!(left, right);
    }

    #[test]
    fn sandwich_with_identity_is_a_no_op() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = outer_product(&StateVector::random(3, &mut rng));
        let out = conjugate_sandwich(&Operator::identity(9), &rho).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn sandwich_flips_both_qubits() {
        let rho = outer_product(&StateVector::basis(2, 1, 1).unwrap());
        let cc = tensor(&swap2(), &swap2());
        let out = conjugate_sandwich(&cc, &rho).unwrap();
        assert_eq!(out, outer_product(&StateVector::basis(2, 2, 2).unwrap()));
    }

    #[test]
    fn sandwich_dimension_mismatch() {
        let rho = outer_product(&StateVector::basis(2, 1, 1).unwrap());
        assert!(matches!(
            conjugate_sandwich(&Operator::identity(9), &rho),
            Err(TensorError::DimensionMismatch { expected: 4, found: 9 })
        ));
    }

    #[test]
    fn sandwich_matches_dense_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = outer_product(&StateVector::random(3, &mut rng));
        let u = tensor(&c3(), &d3());
        let dense = u.matmul(&Operator::from_entries(9, rho.entries().to_vec()).unwrap())
            .unwrap()
            .matmul(&u.adjoint())
            .unwrap();
        let out = conjugate_sandwich(&u, &rho).unwrap();
        assert!(dense.max_abs_diff(&Operator::from_entries(9, out.entries().to_vec()).unwrap()) < 1e-15);
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = outer_product(&StateVector::random(2, &mut rng));
        assert_abs_diff_eq!(expectation(&Operator::identity(4), &rho).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn expectation_of_diagonal_matches_elementwise_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let rho = outer_product(&StateVector::random(3, &mut rng));
            let values: Vec<f64> = (0..9).map(|_| rng.random_range(-5.0..5.0)).collect();
            let obs = Operator::diagonal(&values).unwrap();
            let brute: f64 = values.iter().zip(rho.diagonal()).map(|(v, p)| v * p).sum();
            assert_abs_diff_eq!(expectation(&obs, &rho).unwrap(), brute, epsilon = 1e-12);
        }
    }

    #[test]
    fn expectation_rejects_imaginary_residue() {
        // A non-Hermitian "observable" leaves an imaginary trace.
        let mut entries = vec![ZERO; 4];
        entries[0] = Complex64::new(0.0, 1.0);
        let obs = Operator::from_entries(2, entries).unwrap();
        let rho = DensityMatrix::from_entries(2, vec![ONE, ZERO, ZERO, ZERO]).unwrap();
        assert!(matches!(
            expectation(&obs, &rho),
            Err(TensorError::ImaginaryResidue { .. })
        ));
    }

    #[test]
    fn density_rejects_broken_invariants() {
        let not_unit = vec![Complex64::new(0.5, 0.0), ZERO, ZERO, ZERO];
        assert!(DensityMatrix::from_entries(2, not_unit).is_err());
        let not_hermitian = vec![ONE, Complex64::new(0.1, 0.0), ZERO, ZERO];
        assert!(DensityMatrix::from_entries(2, not_hermitian).is_err());
        let negative = vec![Complex64::new(1.5, 0.0), ZERO, ZERO, Complex64::new(-0.5, 0.0)];
        assert!(DensityMatrix::from_entries(2, negative).is_err());
    }

    #[test]
    fn permutation_operators_are_unitary_and_hermitian() {
        for op in [swap2(), c3(), d3()] {
            assert!(op.is_unitary(0.0));
            assert!(op.is_hermitian(0.0));
        }
    }

    #[test]
    fn basis_label_detection() {
        let psi = StateVector::basis(3, 2, 3).unwrap();
        assert_eq!(psi.as_basis_label(), Some((2, 3)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(StateVector::random(3, &mut rng).as_basis_label(), None);
    }
}
