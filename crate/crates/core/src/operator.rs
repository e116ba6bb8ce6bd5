//! Matrix realizations of the register operators.
//!
//! Basis index of a label is its numeric value, so component 1 is the
//! fastest-varying Kronecker factor. Matrix entry `[r, c]` is `<r|Op|c>`.
//! The shift, projector and successor factors are built as exact integer
//! matrices and only converted to complex form at the end.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::arith::{add_apply, successor_apply, PairState};
use crate::digits::{encode_number, Radix};
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::permutation::Permutation;

/// Largest dense operator dimension.
pub const DENSE_CAP: usize = 4096;
/// `U†U − I` tolerance for floating-point operators.
pub const UNITARY_TOLERANCE: f64 = 1e-10;
/// `H − H†` tolerance for extracted generators.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

pub type CMatrix = DMatrix<Complex64>;

fn check_dim(dim: u64) -> Result<usize> {
    if dim > DENSE_CAP as u64 {
        Err(Error::DimensionCap { dim, cap: DENSE_CAP })
    } else {
        Ok(dim as usize)
    }
}

/// `I_{k^(L-j)} ⊗ factor ⊗ I_{k^(j-1)}`.
fn lift(factor: &ExactMatrix, j: usize, radix: Radix) -> Result<ExactMatrix> {
    radix.check_component(j)?;
    check_dim(radix.modulus())?;
    let k = radix.k() as usize;
    let below = k.pow(j as u32 - 1);
    let above = k.pow((radix.len() - j) as u32);
    Ok(ExactMatrix::identity(above).kron(&factor.kron(&ExactMatrix::identity(below))))
}

/// `u_j`: cyclic shift of period `k` on component `j`.
pub fn shift_exact(j: usize, radix: Radix) -> Result<ExactMatrix> {
    let k = radix.k() as usize;
    let local = ExactMatrix::from_entries(k, (0..k).map(|h| ((h + 1) % k, h, 1)));
    lift(&local, j, radix)
}

/// `P_{m,j}`: projector onto digit `m` at component `j`.
pub fn projector_exact(m: u32, j: usize, radix: Radix) -> Result<ExactMatrix> {
    if m >= radix.k() {
        return Err(Error::DigitOutOfRange { j, digit: m, k: radix.k() });
    }
    let m = m as usize;
    lift(&ExactMatrix::from_entries(radix.k() as usize, [(m, m, 1)]), j, radix)
}

/// The successor `V_j` built as the literal sum over carry-chain lengths:
///
/// `Σ_{n=j..L} u_n P_{≠k-1,n} Π_{l=j..n-1} u_l P_{k-1,l}  +  Π_{l=j..L} u_l P_{k-1,l}`
pub fn successor_literal_exact(j: usize, radix: Radix) -> Result<ExactMatrix> {
    radix.check_component(j)?;
    let dim = check_dim(radix.modulus())?;
    let top = radix.k() - 1;
    let identity = ExactMatrix::identity(dim);
    // u_l P_{k-1,l} for l = j..L
    let wraps = (j..=radix.len())
        .map(|l| Ok(shift_exact(l, radix)?.mul(&projector_exact(top, l, radix)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut total = ExactMatrix::zeros(dim);
    let mut chain = identity.clone();
    for n in j..=radix.len() {
        let no_wrap = identity.sub(&projector_exact(top, n, radix)?);
        let term = shift_exact(n, radix)?.mul(&no_wrap).mul(&chain);
        total = total.add(&term);
        chain = wraps[n - j].mul(&chain);
    }
    Ok(total.add(&chain))
}

/// Permutation induced by the carry-chain successor on basis labels.
pub fn successor_permutation(j: usize, radix: Radix) -> Result<Permutation> {
    radix.check_component(j)?;
    Permutation::from_fn(radix.modulus() as usize, |i| {
        Ok(successor_apply(j, &encode_number(i as u64, radix)?)?.value() as usize)
    })
}

/// Permutation of `+` on pair indices `value(s) + k^L·value(w)`.
pub fn add_permutation(radix: Radix) -> Result<Permutation> {
    let modulus = radix.modulus();
    let dim = check_dim(modulus.checked_mul(modulus).unwrap_or(u64::MAX))?;
    Permutation::from_fn(dim, |i| {
        let i = i as u64;
        let pair = PairState::new(encode_number(i % modulus, radix)?, encode_number(i / modulus, radix)?)?;
        Ok(add_apply(&pair)?.index() as usize)
    })
}

/// A dense complex operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch { left: matrix.nrows(), right: matrix.ncols() });
        }
        check_dim(matrix.nrows() as u64)?;
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub fn from_exact(m: &ExactMatrix) -> Result<Self> {
        let dim = check_dim(m.dim() as u64)?;
        let mut matrix = CMatrix::zeros(dim, dim);
        for (r, c, v) in m.entries() {
            matrix[(r, c)] = Complex64::new(v as f64, 0.0);
        }
        Ok(Self { matrix })
    }

    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        Self::from_exact(&ExactMatrix::from_permutation(p))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> DenseOperator {
        Self { matrix: self.matrix.adjoint() }
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(Self { matrix: &self.matrix * &other.matrix })
    }

    pub fn pow(&self, exp: u64) -> DenseOperator {
        let mut out = CMatrix::identity(self.dim(), self.dim());
        for _ in 0..exp {
            out = &self.matrix * out;
        }
        Self { matrix: out }
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn to_dump(&self) -> MatrixDump {
        let entries = self
            .matrix
            .row_iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        MatrixDump { dim: self.dim(), entries }
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// JSON form of a dense operator: rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixDump {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// JSON form of a permutation operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationDump {
    pub dim: usize,
    pub permutation: Vec<usize>,
}

impl From<&Permutation> for PermutationDump {
    fn from(p: &Permutation) -> Self {
        Self { dim: p.dim(), permutation: p.images().to_vec() }
    }
}

pub fn shift_matrix(j: usize, radix: Radix) -> Result<DenseOperator> {
    DenseOperator::from_exact(&shift_exact(j, radix)?)
}

pub fn projector_matrix(m: u32, j: usize, radix: Radix) -> Result<DenseOperator> {
    DenseOperator::from_exact(&projector_exact(m, j, radix)?)
}

pub fn successor_matrix_literal(j: usize, radix: Radix) -> Result<DenseOperator> {
    DenseOperator::from_exact(&successor_literal_exact(j, radix)?)
}

/// Dense form of the carry-chain successor.
pub fn successor_matrix(j: usize, radix: Radix) -> Result<DenseOperator> {
    DenseOperator::from_permutation(&successor_permutation(j, radix)?)
}

pub fn add_matrix(radix: Radix) -> Result<DenseOperator> {
    DenseOperator::from_permutation(&add_permutation(radix)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitaryCheck {
    pub unitary: bool,
    /// Largest entry modulus of `U†U − I`.
    pub residual: f64,
}

pub fn check_unitary(op: &DenseOperator) -> UnitaryCheck {
    let n = op.dim();
    let gram = op.matrix.adjoint() * &op.matrix - CMatrix::identity(n, n);
    let residual = max_abs(&gram);
    UnitaryCheck { unitary: residual <= UNITARY_TOLERANCE, residual }
}

/// `U · op · U†`.
pub fn conjugate_by(op: &DenseOperator, u: &DenseOperator) -> Result<DenseOperator> {
    if op.dim() != u.dim() {
        return Err(Error::DimensionMismatch { left: op.dim(), right: u.dim() });
    }
    let check = check_unitary(u);
    if !check.unitary {
        return Err(Error::NotUnitary { residual: check.residual });
    }
    Ok(DenseOperator { matrix: &u.matrix * &op.matrix * u.matrix.adjoint() })
}

/// Haar-random unitary: QR of a complex Gaussian matrix, with the phases of
/// `R`'s diagonal pushed into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<DenseOperator> {
    check_dim(dim as u64)?;
    let gaussian = CMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = gaussian.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for i in 0..dim {
        let d = r[(i, i)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for row in 0..dim {
            q[(row, i)] *= phase;
        }
    }
    DenseOperator::new(q)
}

/// [`haar_unitary`] drawn from a ChaCha8 stream seeded with `seed`.
pub fn haar_unitary_seeded(dim: usize, seed: u64) -> Result<DenseOperator> {
    haar_unitary(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A Hermitian `H` with `exp(−iHt)` equal to a target unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGenerator {
    matrix: CMatrix,
    time: f64,
}

impl HermitianGenerator {
    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Largest entry modulus of `H − H†`.
    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `exp(−iHt)` by nalgebra's Padé matrix exponential, independent of the
    /// eigendecomposition used to build `H`.
    pub fn evolve(&self) -> DenseOperator {
        let scaled = self.matrix.map(|z| z * Complex64::new(0.0, -self.time));
        DenseOperator { matrix: scaled.exp() }
    }

    pub fn to_dump(&self) -> MatrixDump {
        DenseOperator { matrix: self.matrix.clone() }.to_dump()
    }
}

/// Maps `-arg(λ)` into `(−π, π]`.
fn principal_phase(lambda: Complex64) -> f64 {
    use std::f64::consts::PI;
    let phase = -lambda.arg();
    // -arg lies in [-π, π); lift the lower endpoint, with slack for rounding
    if phase <= -PI + 1e-12 {
        phase + 2.0 * PI
    } else {
        phase
    }
}

/// Mixing coefficients tried, in order, by [`unitary_eigen`].
const PENCIL_MIX: [f64; 4] = [0.618_033_988_749_894_9, 0.471_404_520_791_031_7, 1.543_080_634_815_243_7, 0.318_309_886_183_790_7];

/// Orthonormal eigenbasis and eigenvalues of a unitary.
///
/// `U = A + iB` with `A = (U+U†)/2` and `B = (U−U†)/2i` commuting Hermitian
/// matrices, so the Hermitian pencil `A + αB` shares U's eigenvectors. A
/// Hermitian solver converges on matrices (cyclic permutations) where a
/// general Schur iteration stalls. Eigenvalues whose images `Re λ + α Im λ`
/// collide would mix, so the basis is checked against `U` and another `α`
/// tried on failure.
pub fn unitary_eigen(op: &DenseOperator) -> Result<(CMatrix, Vec<Complex64>)> {
    let u = &op.matrix;
    let ud = u.adjoint();
    let a = (u + &ud).map(|z| z * 0.5);
    let b = (u - &ud).map(|z| z * Complex64::new(0.0, -0.5));
    let mut worst = f64::INFINITY;
    for alpha in PENCIL_MIX {
        let pencil = &a + b.map(|z| z * alpha);
        let pencil = (&pencil + pencil.adjoint()).map(|z| z * 0.5);
        let vectors = pencil.symmetric_eigen().eigenvectors;
        let projected = vectors.adjoint() * u * &vectors;
        let values: Vec<Complex64> = projected.diagonal().iter().copied().collect();
        let off_diagonal = projected - CMatrix::from_diagonal(&DVector::from_vec(values.clone()));
        let residual = max_abs(&off_diagonal);
        if residual <= EIGEN_TOLERANCE {
            return Ok((vectors, values));
        }
        worst = worst.min(residual);
    }
    Err(Error::NotUnitary { residual: worst })
}

/// Off-diagonal tolerance of `Q† U Q` in [`unitary_eigen`].
const EIGEN_TOLERANCE: f64 = 1e-10;

/// Builds `H = Q diag(φ/t) Q†` from an orthonormal eigenbasis `Q` of `U`,
/// with each eigenphase `φ` in `(−π, π]` chosen so that `exp(−iφ) = λ`.
pub fn extract_hamiltonian(op: &DenseOperator, t: f64) -> Result<HermitianGenerator> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let check = check_unitary(op);
    if !check.unitary {
        return Err(Error::NotUnitary { residual: check.residual });
    }
    let (q, values) = unitary_eigen(op)?;
    let phases = DVector::from_iterator(
        op.dim(),
        values.iter().map(|&lambda| Complex64::new(principal_phase(lambda) / t, 0.0)),
    );
    let h = &q * CMatrix::from_diagonal(&phases) * q.adjoint();
    // symmetrize away rounding in Q
    let matrix = (&h + h.adjoint()).map(|z| z * 0.5);
    Ok(HermitianGenerator { matrix, time: t })
}

/// Eigenvalues of a unitary, in no particular order.
pub fn spectrum(op: &DenseOperator) -> Result<Vec<Complex64>> {
    Ok(unitary_eigen(op)?.1)
}

/// Whether two eigenvalue lists agree as multisets within `tol`.
pub fn spectra_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&i| !used[i] && (x - b[i]).norm() <= tol);
        hit.map(|i| used[i] = true).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_add;
    use std::f64::consts::PI;

    fn r(k: u32, len: usize) -> Radix {
        Radix::new(k, len).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn shift_examples() {
        let m = shift_matrix(1, r(2, 1)).unwrap();
        assert_eq!(m.matrix(), &CMatrix::from_row_slice(2, 2, &[c(0.), c(1.), c(1.), c(0.)]));
        let m = shift_exact(1, r(3, 1)).unwrap();
        assert_eq!(m.as_permutation().unwrap().images(), &[1, 2, 0]);
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(2, 1), 1);
        assert_eq!(m.get(0, 2), 1);
        for radix in [r(2, 3), r(3, 2)] {
            for j in 1..=radix.len() {
                let u = shift_exact(j, radix).unwrap();
                assert_eq!(u.pow(u64::from(radix.k())), ExactMatrix::identity(u.dim()));
            }
        }
    }

    #[test]
    fn projector_examples() {
        let p = projector_exact(1, 1, r(2, 1)).unwrap();
        assert_eq!(p, ExactMatrix::from_entries(2, [(1, 1, 1)]));
        let radix = r(3, 2);
        for j in 1..=2 {
            let mut sum = ExactMatrix::zeros(9);
            for m in 0..3 {
                let p = projector_exact(m, j, radix).unwrap();
                assert_eq!(p.mul(&p), p);
                sum = sum.add(&p);
            }
            assert_eq!(sum, ExactMatrix::identity(9));
        }
        assert!(projector_exact(3, 1, radix).is_err());
    }

    #[test]
    fn literal_successor_examples() {
        let v = successor_literal_exact(1, r(2, 1)).unwrap();
        assert_eq!(v.as_permutation().unwrap().images(), &[1, 0]);
        let radix = r(2, 2);
        let v1 = successor_literal_exact(1, radix).unwrap().as_permutation().unwrap();
        let v2 = successor_literal_exact(2, radix).unwrap().as_permutation().unwrap();
        for n in 0..4u64 {
            assert_eq!(v1.apply(n as usize) as u64, oracle_add(n, 1, radix).unwrap());
            assert_eq!(v2.apply(n as usize) as u64, oracle_add(n, 2, radix).unwrap());
        }
    }

    #[test]
    fn literal_matches_carry_chain() {
        for radix in [r(2, 4), r(3, 3), r(4, 2), r(5, 2)] {
            for j in 1..=radix.len() {
                let literal = successor_literal_exact(j, radix).unwrap();
                let chain = ExactMatrix::from_permutation(&successor_permutation(j, radix).unwrap());
                assert_eq!(literal, chain, "{radix} j={j}");
            }
        }
    }

    #[test]
    fn shift_projector_commutation_and_factor_commutativity() {
        let radix = r(3, 2);
        let k = radix.k();
        for j in 1..=2 {
            let u = shift_exact(j, radix).unwrap();
            for m in 0..k {
                let lhs = u.mul(&projector_exact(m, j, radix).unwrap());
                let rhs = projector_exact((m + 1) % k, j, radix).unwrap().mul(&u);
                assert_eq!(lhs, rhs);
            }
        }
        for p in 0..k {
            for q in 0..k {
                let a = shift_exact(1, radix).unwrap().mul(&projector_exact(p, 1, radix).unwrap());
                let b = shift_exact(2, radix).unwrap().mul(&projector_exact(q, 2, radix).unwrap());
                assert_eq!(a.mul(&b), b.mul(&a));
            }
        }
    }

    #[test]
    fn unitarity_checks() {
        let radix = r(2, 3);
        for j in 1..=3 {
            let check = check_unitary(&successor_matrix_literal(j, radix).unwrap());
            assert!(check.unitary);
            assert_eq!(check.residual, 0.0);
            assert_eq!(check_unitary(&shift_matrix(j, radix).unwrap()).residual, 0.0);
        }
        let d = DenseOperator::new(CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(0.5)]))).unwrap();
        assert!(!check_unitary(&d).unitary);
        assert!(DenseOperator::new(CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn add_matrix_examples() {
        let p = add_permutation(r(2, 1)).unwrap();
        // index = s + 2w: (0,w) fixed, (1,w) -> (1,w+1)
        assert_eq!(p.images(), &[0, 3, 2, 1]);
        let radix = r(3, 2);
        let p = add_permutation(radix).unwrap();
        for i in 0..81 {
            assert_eq!(p.apply(i) % 9, i % 9);
        }
        assert_eq!(check_unitary(&add_matrix(radix).unwrap()).residual, 0.0);
        assert!(matches!(add_matrix(r(2, 7)), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn dense_cap() {
        assert!(matches!(shift_matrix(1, r(2, 13)), Err(Error::DimensionCap { dim: 8192, .. })));
        assert!(successor_permutation(1, r(2, 13)).is_ok());
    }

    #[test]
    fn hamiltonian_of_identity_is_zero() {
        let h = extract_hamiltonian(&DenseOperator::identity(4).unwrap(), 1.0).unwrap();
        assert!(max_abs(h.matrix()) < 1e-12);
    }

    #[test]
    fn hamiltonian_of_swap_is_pi_times_antisymmetric_projector() {
        let swap = shift_matrix(1, r(2, 1)).unwrap();
        let h = extract_hamiltonian(&swap, 1.0).unwrap();
        let expected = CMatrix::from_row_slice(2, 2, &[c(0.5), c(-0.5), c(-0.5), c(0.5)]) * c(PI);
        assert!(max_abs(&(h.matrix() - expected)) < 1e-9);
        assert!(h.evolve().distance(&swap) < 1e-9);
    }

    #[test]
    fn hamiltonian_round_trip_with_time() {
        let v = successor_matrix(1, r(2, 2)).unwrap();
        for t in [0.5, 1.0, 3.0] {
            let h = extract_hamiltonian(&v, t).unwrap();
            assert!(h.hermiticity_residual() <= HERMITIAN_TOLERANCE);
            assert!(h.evolve().distance(&v) <= 1e-9, "t={t}");
        }
        assert_eq!(extract_hamiltonian(&v, 0.0), Err(Error::InvalidTime(0.0)));
        let d = DenseOperator::new(CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(0.5)]))).unwrap();
        assert!(matches!(extract_hamiltonian(&d, 1.0), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn haar_unitaries_are_unitary_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = haar_unitary(8, &mut rng).unwrap();
        assert!(check_unitary(&u).residual < 1e-12);
        let again = haar_unitary(8, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(u, again);
    }

    #[test]
    fn conjugation_properties() {
        let radix = r(2, 2);
        let v = successor_matrix(1, radix).unwrap();
        assert_eq!(conjugate_by(&v, &DenseOperator::identity(4).unwrap()).unwrap(), v);
        let u = haar_unitary(4, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let conj = conjugate_by(&v, &u).unwrap();
        assert!(check_unitary(&conj).unitary);
        assert!(spectra_match(&spectrum(&v).unwrap(), &spectrum(&conj).unwrap(), 1e-9));
        assert!(!spectra_match(&spectrum(&v).unwrap(), &spectrum(&DenseOperator::identity(4).unwrap()).unwrap(), 1e-9));
        assert!(conjugate_by(&v, &DenseOperator::identity(2).unwrap()).is_err());
        let not_u = DenseOperator::new(CMatrix::identity(4, 4) * c(2.0)).unwrap();
        assert!(matches!(conjugate_by(&v, &not_u), Err(Error::NotUnitary { .. })));
    }
}
