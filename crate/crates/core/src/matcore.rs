//! Dense real matrix kernel at desk scale (n <= 50).
//!
//! Provides structured linear matrix equations (a vectorized least-squares
//! engine with symmetry tags), Sylvester/Lyapunov solvers via Kronecker
//! vectorization, a scaling-and-squaring matrix exponential, an algebraic
//! Riccati solver based on the stable invariant subspace of the associated
//! Hamiltonian matrix, and spectral helpers (nullspace, symmetric
//! eigendecomposition, PSD square roots).

use ndarray::{s, Array1, Array2, ArrayView2, Axis};
use ndarray_linalg::{Eig, Eigh, Inverse, Solve, SVD, UPLO};
use num_complex::Complex64;
use thiserror::Error;

use crate::tol::{scale, FEAS_TOL, NULL_TOL, SYM_TOL};

/// Dense real matrix. Entries are finite; row-major semantic order.
pub type Mat = Array2<f64>;
/// Complex matrix used internally by resolvent and eigen routines.
pub type CMat = Array2<Complex64>;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("spectra of A and -B overlap; Sylvester equation not solvable")]
    SpectrumOverlap,
    #[error("matrix is not Hurwitz (eigenvalue with nonnegative real part)")]
    NotHurwitz,
    #[error("Hamiltonian matrix has an eigenvalue on the imaginary axis")]
    ImaginaryAxisEigenvalue,
    #[error("Riccati equation has no stabilizing solution")]
    NotStabilizable,
    #[error("matrix is not symmetric within tolerance")]
    NotSymmetric,
    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

impl From<ndarray_linalg::error::LinalgError> for MatError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        MatError::Backend(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, MatError>;

// ---------------------------------------------------------------------------
// small helpers

/// Frobenius norm.
pub fn frob(m: &ArrayView2<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn frob_owned(m: &Mat) -> f64 {
    frob(&m.view())
}

/// Symmetric part (M + M^T)/2.
pub fn sym_part(m: &Mat) -> Mat {
    (m + &m.t()) / 2.0
}

/// Skew-symmetric part (M - M^T)/2.
pub fn skew_part(m: &Mat) -> Mat {
    (m - &m.t()) / 2.0
}

/// ||M - M^T||_F.
pub fn asymmetry(m: &Mat) -> f64 {
    frob_owned(&(m - &m.t()))
}

pub fn eye(n: usize) -> Mat {
    Array2::eye(n)
}

/// Eigenvalues of a general real square matrix.
pub fn eigvals(m: &Mat) -> Result<Array1<Complex64>> {
    use ndarray_linalg::EigVals;
    if m.nrows() == 0 {
        return Ok(Array1::from_vec(vec![]));
    }
    Ok(m.eigvals()?)
}

/// True when every eigenvalue has strictly negative real part.
pub fn is_hurwitz(m: &Mat) -> Result<bool> {
    Ok(eigvals(m)?.iter().all(|l| l.re < 0.0))
}

/// Solve AX = B for a matrix right-hand side.
pub fn solve_mat(a: &Mat, b: &Mat) -> Result<Mat> {
    let mut out = Mat::zeros(b.dim());
    for (j, col) in b.axis_iter(Axis(1)).enumerate() {
        let x = a.solve(&col.to_owned())?;
        out.column_mut(j).assign(&x);
    }
    Ok(out)
}

/// Solve the complex system AX = B column by column.
pub fn solve_cmat(a: &CMat, b: &CMat) -> Result<CMat> {
    let mut out = CMat::zeros(b.dim());
    for (j, col) in b.axis_iter(Axis(1)).enumerate() {
        let x = a.solve(&col.to_owned())?;
        out.column_mut(j).assign(&x);
    }
    Ok(out)
}

pub fn inv(m: &Mat) -> Result<Mat> {
    Ok(m.inv()?)
}

/// Largest singular value; 0 for empty matrices.
pub fn spectral_norm(m: &Mat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s.iter().cloned().fold(0.0, f64::max)
}

/// Minimal singular value; +inf for empty matrices (vacuously invertible).
pub fn min_singular_value(m: &Mat) -> f64 {
    if m.is_empty() {
        return f64::INFINITY;
    }
    let (_, s, _) = m.svd(false, false).expect("svd failed");
    s.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Kronecker product.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Mat::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == 0.0 {
                continue;
            }
            let mut block = out.slice_mut(s![i * rb..(i + 1) * rb, j * cb..(j + 1) * cb]);
            block.assign(&(b * aij));
        }
    }
    out
}

/// Column-stacked vectorization.
fn vec_cols(m: &Mat) -> Array1<f64> {
    let (r, c) = m.dim();
    let mut v = Array1::zeros(r * c);
    for j in 0..c {
        for i in 0..r {
            v[j * r + i] = m[[i, j]];
        }
    }
    v
}

fn unvec_cols(v: &Array1<f64>, r: usize, c: usize) -> Mat {
    let mut m = Mat::zeros((r, c));
    for j in 0..c {
        for i in 0..r {
            m[[i, j]] = v[j * r + i];
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Sylvester / Lyapunov

/// Solve AX + XB = C by Kronecker vectorization.
///
/// Errors with [`MatError::SpectrumOverlap`] when A and -B share an
/// eigenvalue within tolerance.
pub fn solve_sylvester(a: &Mat, b: &Mat, c: &Mat) -> Result<Mat> {
    let n = a.nrows();
    let m = b.nrows();
    if a.ncols() != n || b.ncols() != m || c.dim() != (n, m) {
        return Err(MatError::Dimension(format!(
            "sylvester shapes {:?} {:?} {:?}",
            a.dim(),
            b.dim(),
            c.dim()
        )));
    }
    if n == 0 || m == 0 {
        return Ok(Mat::zeros((n, m)));
    }
    let la = eigvals(a)?;
    let lb = eigvals(b)?;
    let sc = la.iter().chain(lb.iter()).map(|l| l.norm()).fold(0.0, f64::max);
    for x in &la {
        for y in &lb {
            if (x + y).norm() <= 1e-9 * scale(sc) {
                return Err(MatError::SpectrumOverlap);
            }
        }
    }
    // (I_m (x) A + B^T (x) I_n) vec(X) = vec(C)
    let k = kron(&eye(m), a) + kron(&b.t().to_owned(), &eye(n));
    let x = k.solve(&vec_cols(c))?;
    let x = unvec_cols(&x, n, m);
    let resid = frob_owned(&(a.dot(&x) + x.dot(b) - c));
    if resid > 1e-10 * scale(frob_owned(c)) {
        return Err(MatError::Backend(format!("sylvester residual {resid:.3e}")));
    }
    Ok(x)
}

/// Solve AX + XA^T + W = 0 for symmetric W with A Hurwitz.
pub fn solve_lyapunov(a: &Mat, w: &Mat) -> Result<Mat> {
    let n = a.nrows();
    if a.ncols() != n || w.dim() != (n, n) {
        return Err(MatError::Dimension(format!(
            "lyapunov shapes {:?} {:?}",
            a.dim(),
            w.dim()
        )));
    }
    if !is_hurwitz(a)? {
        return Err(MatError::NotHurwitz);
    }
    let x = solve_sylvester(a, &a.t().to_owned(), &(-w))?;
    Ok(sym_part(&x))
}

// ---------------------------------------------------------------------------
// structured linear systems

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    None,
    Symmetric,
    SkewSymmetric,
}

/// A stack of scalar linear constraints over the entries of an unknown
/// matrix, with an optional symmetry tag halving the effective unknowns.
///
/// Coefficients address the unknown's entries in row-major order.
#[derive(Debug, Clone)]
pub struct LinearConstraintSystem {
    shape: (usize, usize),
    symmetry: Symmetry,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

/// Affine solution set of a [`LinearConstraintSystem`].
#[derive(Debug, Clone)]
pub enum StructuredSolution {
    Unique(Mat),
    Family { particular: Mat, basis: Vec<Mat> },
    Infeasible { residual: f64 },
}

impl LinearConstraintSystem {
    pub fn new(rows: usize, cols: usize, symmetry: Symmetry) -> Self {
        if symmetry != Symmetry::None {
            assert_eq!(rows, cols, "symmetry tags require a square unknown");
        }
        LinearConstraintSystem {
            shape: (rows, cols),
            symmetry,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    /// Add one scalar constraint sum_ij coeffs[i*cols+j] * X[i][j] = rhs.
    pub fn add_row(&mut self, coeffs: Vec<f64>, rhs: f64) {
        assert_eq!(coeffs.len(), self.shape.0 * self.shape.1);
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Add the matrix equation `sum_k sign_k * L_k X R_k = rhs`, one scalar
    /// row per entry of the result.
    pub fn add_equation(&mut self, terms: &[(ArrayView2<f64>, ArrayView2<f64>, f64)], rhs: &Mat) {
        let (xr, xc) = self.shape;
        let (or, oc) = rhs.dim();
        for &(l, r, _) in terms {
            assert_eq!(l.dim(), (or, xr), "left factor shape");
            assert_eq!(r.dim(), (xc, oc), "right factor shape");
        }
        for i in 0..or {
            for j in 0..oc {
                let mut coeffs = vec![0.0; xr * xc];
                for &(l, r, sign) in terms {
                    for p in 0..xr {
                        let lip = l[[i, p]];
                        if lip == 0.0 {
                            continue;
                        }
                        for q in 0..xc {
                            coeffs[p * xc + q] += sign * lip * r[[q, j]];
                        }
                    }
                }
                self.add_row(coeffs, rhs[[i, j]]);
            }
        }
    }

    /// Number of free parameters after applying the symmetry tag.
    fn param_count(&self) -> usize {
        let (r, c) = self.shape;
        match self.symmetry {
            Symmetry::None => r * c,
            Symmetry::Symmetric => r * (r + 1) / 2,
            Symmetry::SkewSymmetric => r * (r - 1) / 2,
        }
    }

    /// List of (entry index, coefficient) pairs per parameter.
    fn param_map(&self) -> Vec<Vec<(usize, f64)>> {
        let (r, c) = self.shape;
        match self.symmetry {
            Symmetry::None => (0..r * c).map(|k| vec![(k, 1.0)]).collect(),
            Symmetry::Symmetric => {
                let mut map = Vec::new();
                for i in 0..r {
                    for j in i..r {
                        if i == j {
                            map.push(vec![(i * c + j, 1.0)]);
                        } else {
                            map.push(vec![(i * c + j, 1.0), (j * c + i, 1.0)]);
                        }
                    }
                }
                map
            }
            Symmetry::SkewSymmetric => {
                let mut map = Vec::new();
                for i in 0..r {
                    for j in (i + 1)..r {
                        map.push(vec![(i * c + j, 1.0), (j * c + i, -1.0)]);
                    }
                }
                map
            }
        }
    }

    fn params_to_matrix(&self, theta: &Array1<f64>) -> Mat {
        let (r, c) = self.shape;
        let mut m = Mat::zeros((r, c));
        for (k, entries) in self.param_map().iter().enumerate() {
            for &(idx, coef) in entries {
                m[[idx / c, idx % c]] += coef * theta[k];
            }
        }
        m
    }
}

/// Least-squares solve of a vectorized constraint system.
///
/// Reports the affine solution set: `Unique` iff the homogeneous null space
/// is trivial within [`NULL_TOL`]; `Infeasible` iff the minimal residual
/// exceeds `FEAS_TOL * (1 + ||rhs||)`.
pub fn solve_structured(sys: &LinearConstraintSystem) -> Result<StructuredSolution> {
    let p = sys.param_count();
    let nrows = sys.rows.len();
    let map = sys.param_map();
    let mut m = Mat::zeros((nrows, p));
    for (r, coeffs) in sys.rows.iter().enumerate() {
        for (k, entries) in map.iter().enumerate() {
            m[[r, k]] = entries.iter().map(|&(idx, coef)| coef * coeffs[idx]).sum();
        }
    }
    let b = Array1::from_vec(sys.rhs.clone());
    let rhs_norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();

    if p == 0 {
        // no unknowns left (e.g. skew 1x1); residual decides feasibility
        let residual = rhs_norm;
        return Ok(if residual > FEAS_TOL * scale(rhs_norm) {
            StructuredSolution::Infeasible { residual }
        } else {
            StructuredSolution::Unique(Mat::zeros(sys.shape))
        });
    }
    if nrows == 0 {
        let basis: Vec<Mat> = (0..p)
            .map(|k| {
                let mut theta = Array1::zeros(p);
                theta[k] = 1.0;
                sys.params_to_matrix(&theta)
            })
            .collect();
        return Ok(StructuredSolution::Family {
            particular: Mat::zeros(sys.shape),
            basis,
        });
    }

    let (u, sv, vt) = m.svd(true, true)?;
    let u = u.expect("svd U");
    let vt = vt.expect("svd Vt");
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = NULL_TOL * smax.max(1.0);
    let rank = sv.iter().filter(|&&s| s > cut).count();

    // min-norm least squares: theta = V diag(1/s) U^T b over the leading rank
    let utb = u.t().dot(&b);
    let mut theta = Array1::zeros(p);
    for k in 0..rank {
        let coef = utb[k] / sv[k];
        theta = theta + &(vt.row(k).to_owned() * coef);
    }
    let residual = {
        let r = m.dot(&theta) - &b;
        r.iter().map(|x| x * x).sum::<f64>().sqrt()
    };
    if residual > FEAS_TOL * scale(rhs_norm) {
        return Ok(StructuredSolution::Infeasible { residual });
    }
    let particular = sys.params_to_matrix(&theta);
    if rank == p {
        Ok(StructuredSolution::Unique(particular))
    } else {
        let basis: Vec<Mat> = (rank..p.min(vt.nrows()))
            .map(|k| sys.params_to_matrix(&vt.row(k).to_owned()))
            .chain((vt.nrows()..p).map(|_| Mat::zeros(sys.shape)))
            .collect();
        Ok(StructuredSolution::Family { particular, basis })
    }
}

// ---------------------------------------------------------------------------
// matrix exponential

/// e^{At} by Pade approximation with scaling and squaring.
pub fn matrix_exponential(a: &Mat, t: f64) -> Mat {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "matrix_exponential needs a square matrix");
    if n == 0 {
        return Mat::zeros((0, 0));
    }
    let at = a * t;
    expm(&at)
}

/// Higham-style expm: degree-13 Pade with scaling and squaring, lower
/// degrees for small norms.
pub fn expm(a: &Mat) -> Mat {
    let n = a.nrows();
    let norm = one_norm(a);
    let theta = [
        (3usize, 1.495_585_217_958_292e-2),
        (5, 2.539_398_330_063_23e-1),
        (7, 9.504_178_996_162_932e-1),
        (9, 2.097_847_961_257_068e0),
    ];
    for &(deg, th) in &theta {
        if norm <= th {
            return pade(a, deg);
        }
    }
    let theta13 = 5.371_920_351_148_152e0;
    let mut squarings = 0u32;
    let mut b = a.clone();
    if norm > theta13 {
        squarings = ((norm / theta13).log2().ceil()) as u32;
        b = a / 2f64.powi(squarings as i32);
    }
    let mut e = pade(&b, 13);
    for _ in 0..squarings {
        e = e.dot(&e);
    }
    debug_assert_eq!(e.nrows(), n);
    e
}

fn one_norm(a: &Mat) -> f64 {
    let mut best: f64 = 0.0;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|x| x.abs()).sum();
        best = best.max(s);
    }
    best
}

fn pade(a: &Mat, degree: usize) -> Mat {
    let n = a.nrows();
    let id = eye(n);
    let coeffs: Vec<f64> = match degree {
        3 => vec![120.0, 60.0, 12.0, 1.0],
        5 => vec![30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
        7 => vec![
            17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
        ],
        9 => vec![
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ],
        13 => vec![
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
            10559470521600.0,
            670442572800.0,
            33522128640.0,
            1323241920.0,
            40840800.0,
            960960.0,
            16380.0,
            182.0,
            1.0,
        ],
        _ => unreachable!(),
    };
    let a2 = a.dot(a);
    // split into even/odd parts: p(A) = U + V, p(-A) = -U + V
    let mut even = &id * coeffs[0];
    let mut odd = &id * coeffs[1];
    let mut pow = id.clone(); // A^{2k}
    for k in 1..=(degree / 2) {
        pow = pow.dot(&a2);
        even = even + &pow * coeffs[2 * k];
        if 2 * k + 1 <= degree {
            odd = odd + &pow * coeffs[2 * k + 1];
        }
    }
    let u = a.dot(&odd);
    let num = &even + &u;
    let den = &even - &u;
    solve_mat(&den, &num).expect("pade solve")
}

// ---------------------------------------------------------------------------
// Riccati

/// Solve F^T X + X F - X P X + S = 0 for the stabilizing symmetric X
/// (F - PX Hurwitz), via the stable invariant subspace of the Hamiltonian
/// matrix [[F, -P], [-S, -F^T]].
pub fn solve_care(f: &Mat, p: &Mat, s: &Mat) -> Result<Mat> {
    care_invariant_subspace(f, p, s, true)
}

/// Anti-stabilizing counterpart of [`solve_care`] (F - PX anti-Hurwitz).
pub fn solve_care_antistabilizing(f: &Mat, p: &Mat, s: &Mat) -> Result<Mat> {
    care_invariant_subspace(f, p, s, false)
}

fn care_invariant_subspace(f: &Mat, p: &Mat, s: &Mat, stable: bool) -> Result<Mat> {
    let n = f.nrows();
    if f.ncols() != n || p.dim() != (n, n) || s.dim() != (n, n) {
        return Err(MatError::Dimension("care shapes".into()));
    }
    if n == 0 {
        return Ok(Mat::zeros((0, 0)));
    }
    let mut h = Mat::zeros((2 * n, 2 * n));
    h.slice_mut(s![0..n, 0..n]).assign(f);
    h.slice_mut(s![0..n, n..2 * n]).assign(&(-p));
    h.slice_mut(s![n..2 * n, 0..n]).assign(&(-s));
    h.slice_mut(s![n..2 * n, n..2 * n]).assign(&(-&f.t().to_owned()));

    let (vals, vecs) = h.eig()?;
    let hscale = vals.iter().map(|l| l.norm()).fold(0.0, f64::max);
    if vals.iter().any(|l| l.re.abs() <= 1e-9 * scale(hscale)) {
        return Err(MatError::ImaginaryAxisEigenvalue);
    }
    // select the n-dimensional invariant subspace; ties broken by
    // (real part, imaginary part) ordering
    let mut idx: Vec<usize> = (0..2 * n)
        .filter(|&k| {
            if stable {
                vals[k].re < 0.0
            } else {
                vals[k].re > 0.0
            }
        })
        .collect();
    if idx.len() != n {
        return Err(MatError::NotStabilizable);
    }
    idx.sort_by(|&a, &b| {
        (vals[a].re, vals[a].im)
            .partial_cmp(&(vals[b].re, vals[b].im))
            .unwrap()
    });
    let mut u1 = CMat::zeros((n, n));
    let mut u2 = CMat::zeros((n, n));
    for (col, &k) in idx.iter().enumerate() {
        for i in 0..n {
            u1[[i, col]] = vecs[[i, k]];
            u2[[i, col]] = vecs[[n + i, k]];
        }
    }
    // X = U2 U1^{-1}: solve U1^T X^T = U2^T
    let xt = solve_cmat(&u1.t().to_owned(), &u2.t().to_owned())
        .map_err(|_| MatError::NotStabilizable)?;
    let mut x = Mat::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            x[[i, j]] = xt[[j, i]].re;
        }
    }
    let mut x = sym_part(&x);

    // Newton refinement on the Riccati residual
    for _ in 0..8 {
        let resid = f.t().dot(&x) + x.dot(f) - x.dot(p).dot(&x) + s;
        let rn = frob_owned(&resid);
        let sc = scale(frob_owned(s) + frob_owned(&x));
        if rn <= 1e-13 * sc {
            break;
        }
        let fc = f - &p.dot(&x);
        match solve_sylvester(&fc.t().to_owned(), &fc, &(-resid)) {
            Ok(delta) => x = sym_part(&(x + delta)),
            Err(_) => break,
        }
    }

    let closed = f - &p.dot(&x);
    let closed_ok = if stable {
        is_hurwitz(&closed)?
    } else {
        eigvals(&closed)?.iter().all(|l| l.re > 0.0)
    };
    let resid = frob_owned(&(f.t().dot(&x) + x.dot(f) - x.dot(p).dot(&x) + s));
    if !closed_ok || resid > 1e-8 * scale(frob_owned(s) + frob_owned(&x)) {
        return Err(MatError::NotStabilizable);
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// spectral helpers

/// Orthonormal basis of {x : Mx = 0}; singular values below
/// `NULL_TOL * sigma_max` are treated as zero. Returns an n x k matrix.
pub fn nullspace(m: &Mat) -> Mat {
    let (rows, cols) = m.dim();
    if cols == 0 {
        return Mat::zeros((0, 0));
    }
    if rows == 0 {
        return eye(cols);
    }
    let (_, sv, vt) = m.svd(false, true).expect("svd failed");
    let vt = vt.expect("svd Vt");
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = NULL_TOL * smax.max(1.0);
    let rank = sv.iter().filter(|&&s| s > cut).count();
    let k = cols - rank;
    let mut basis = Mat::zeros((cols, k));
    for (col, row) in (rank..cols).enumerate() {
        if row < vt.nrows() {
            basis.column_mut(col).assign(&vt.row(row));
        }
    }
    // rows of Vt beyond min(rows, cols) do not exist; complete by projection
    if vt.nrows() < cols {
        return complete_nullspace(m, cut);
    }
    basis
}

/// Fallback for wide matrices where LAPACK returns a truncated Vt.
fn complete_nullspace(m: &Mat, _cut: f64) -> Mat {
    let cols = m.ncols();
    let gram = m.t().dot(m);
    let (vals, vecs) = gram.eigh(UPLO::Lower).expect("eigh failed");
    let vmax = vals.iter().cloned().fold(0.0, f64::max).max(1.0);
    let cut2 = f64::max((NULL_TOL * vmax.sqrt()).powi(2), NULL_TOL * vmax);
    let keep: Vec<usize> = (0..cols).filter(|&k| vals[k].abs() <= cut2).collect();
    let mut basis = Mat::zeros((cols, keep.len()));
    for (col, &k) in keep.iter().enumerate() {
        basis.column_mut(col).assign(&vecs.column(k));
    }
    basis
}

/// Numerical rank with the [`NULL_TOL`] cutoff.
pub fn rank(m: &Mat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let (_, sv, _) = m.svd(false, false).expect("svd failed");
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = NULL_TOL * smax.max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Eigendecomposition of a symmetric matrix: eigenvalues ascending with
/// orthonormal eigenvectors in matching columns.
pub fn symmetric_eig(m: &Mat) -> Result<(Array1<f64>, Mat)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(MatError::Dimension("symmetric_eig needs square".into()));
    }
    if n == 0 {
        return Ok((Array1::zeros(0), Mat::zeros((0, 0))));
    }
    if asymmetry(m) > SYM_TOL * scale(frob_owned(m)) {
        return Err(MatError::NotSymmetric);
    }
    let (vals, vecs) = sym_part(m).eigh(UPLO::Lower)?;
    Ok((vals, vecs))
}

/// Symmetric PSD square root; eigenvalues in [-clip, 0) are clipped to 0.
pub fn psd_sqrt(m: &Mat, clip: f64) -> Result<Mat> {
    let (vals, vecs) = symmetric_eig(m)?;
    let vmax = vals.iter().cloned().fold(0.0, f64::max);
    let mut d = Array1::zeros(vals.len());
    for (k, &v) in vals.iter().enumerate() {
        if v < -clip * scale(vmax) {
            return Err(MatError::NotSymmetric);
        }
        d[k] = v.max(0.0).sqrt();
    }
    let mut vd = vecs.clone();
    for (k, mut col) in vd.axis_iter_mut(Axis(1)).enumerate() {
        col *= d[k];
    }
    Ok(vd.dot(&vecs.t()))
}

/// Definiteness classification of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PosDef,
    NegDef,
    Indefinite,
    Singular,
}

/// Classify using an eigenvalue threshold relative to the matrix scale.
pub fn definiteness(m: &Mat) -> Result<Definiteness> {
    let (vals, _) = symmetric_eig(m)?;
    if vals.is_empty() {
        return Ok(Definiteness::PosDef);
    }
    let sc = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tol = FEAS_TOL * scale(sc);
    if vals.iter().any(|v| v.abs() <= tol) {
        return Ok(Definiteness::Singular);
    }
    let pos = vals.iter().filter(|&&v| v > 0.0).count();
    Ok(if pos == vals.len() {
        Definiteness::PosDef
    } else if pos == 0 {
        Definiteness::NegDef
    } else {
        Definiteness::Indefinite
    })
}
