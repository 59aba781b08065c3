//! Finite-dimensional subspace calculus on the doubled space F x E
//! (Lagrangian subspaces under the symplectic pairing, Dirac structures
//! under the symmetric plus-pairing, separability, hybrid and kernel
//! representations), together with grid discretizations of the associated
//! operators: the symmetric weighted Hankel matrix and the constrained
//! lower-triangular Volterra form.

use ndarray::{s, Array1, ArrayView2};
use thiserror::Error;

use crate::certify::{self, Certificate, CertificateKind};
use crate::lti::{self, StateSpaceSystem};
use crate::matcore::{self, eye, frob, frob_owned, matrix_exponential, nullspace, Mat};
use crate::tol::{scale, FEAS_TOL, NULL_TOL};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("ambient dimension must be even")]
    OddAmbient,
    #[error("subspace is not a Dirac structure")]
    NotDirac,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("feedthrough must be zero")]
    FeedthroughNonzero,
    #[error("input does not satisfy the moment constraints")]
    ConstraintViolated,
    #[error("A must be Hurwitz")]
    NotHurwitz,
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
    #[error(transparent)]
    Lti(#[from] lti::LtiError),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

// ---------------------------------------------------------------------------
// subspaces and pairings

/// A subspace of R^d stored by an orthonormal basis.
#[derive(Debug, Clone)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Mat,
}

fn orthonormalize(cols: &ArrayView2<f64>) -> Mat {
    use ndarray_linalg::SVD;
    let (rows, ncols) = cols.dim();
    if ncols == 0 || rows == 0 {
        return Mat::zeros((rows, 0));
    }
    // force standard layout: size-1 axes can carry zero strides, which the
    // LAPACK bindings reject
    let cols = Mat::from_shape_vec((rows, ncols), cols.iter().cloned().collect())
        .expect("contiguous copy");
    let (u, sv, _) = cols.svd(true, false).expect("svd failed");
    let u = u.expect("svd U");
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&x| x > NULL_TOL * smax.max(1.0)).count();
    u.slice(s![.., 0..rank]).to_owned()
}

impl LinearSubspace {
    /// Span of the given columns inside R^ambient.
    pub fn new(ambient: usize, spanning: &Mat) -> Self {
        assert_eq!(spanning.nrows(), ambient, "spanning columns live in R^ambient");
        LinearSubspace {
            ambient,
            basis: orthonormalize(&spanning.view()),
        }
    }

    /// The graph {(f, M f)} of a linear map e = M f in F x E.
    pub fn graph(map: &Mat) -> Self {
        let n = map.ncols();
        assert_eq!(map.nrows(), n, "graph needs a square map");
        let mut cols = Mat::zeros((2 * n, n));
        cols.slice_mut(s![0..n, ..]).assign(&eye(n));
        cols.slice_mut(s![n..2 * n, ..]).assign(map);
        LinearSubspace::new(2 * n, &cols)
    }

    pub fn zero(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: Mat::zeros((ambient, 0)),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    fn projector(&self) -> Mat {
        self.basis.dot(&self.basis.t())
    }

    /// Subspace equality via orthogonal projectors (basis-independent).
    pub fn equals(&self, other: &LinearSubspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && frob_owned(&(self.projector() - other.projector()))
                <= 1e-9 * scale(self.ambient as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingKind {
    /// Antisymmetric pairing <(fa,ea),(fb,eb)> = <ea,fb> - <eb,fa>.
    Symplectic,
    /// Symmetric pairing [[(fa,ea),(fb,eb)]] = <ea,fb> + <eb,fa>.
    Plus,
}

/// Matrix of the pairing on R^{2n}.
pub fn pairing_matrix(kind: PairingKind, n: usize) -> Mat {
    let mut m = Mat::zeros((2 * n, 2 * n));
    for i in 0..n {
        match kind {
            PairingKind::Symplectic => {
                m[[i, n + i]] = -1.0;
                m[[n + i, i]] = 1.0;
            }
            PairingKind::Plus => {
                m[[i, n + i]] = 1.0;
                m[[n + i, i]] = 1.0;
            }
        }
    }
    m
}

/// Orthogonal companion {v : pairing(v, w) = 0 for all w in S}.
pub fn orthogonal_companion(sub: &LinearSubspace, kind: PairingKind) -> Result<LinearSubspace> {
    let d = sub.ambient();
    if d % 2 == 1 {
        return Err(GeometryError::OddAmbient);
    }
    let form = pairing_matrix(kind, d / 2);
    let rows = sub.basis().t().dot(&form);
    Ok(LinearSubspace {
        ambient: d,
        basis: orthonormalize(&nullspace(&rows).view()),
    })
}

/// S is Lagrangian iff it equals its symplectic companion.
pub fn is_lagrangian(sub: &LinearSubspace) -> Result<bool> {
    Ok(orthogonal_companion(sub, PairingKind::Symplectic)?.equals(sub))
}

/// S is a Dirac structure iff it equals its plus-pairing companion.
pub fn is_dirac(sub: &LinearSubspace) -> Result<bool> {
    Ok(orthogonal_companion(sub, PairingKind::Plus)?.equals(sub))
}

/// For a Dirac structure, test whether it splits as K x K^perp; on success
/// return K (a subspace of F).
pub fn separable_test(sub: &LinearSubspace) -> Result<Option<LinearSubspace>> {
    if !is_dirac(sub)? {
        return Err(GeometryError::NotDirac);
    }
    let n = sub.ambient() / 2;
    let b = sub.basis();
    let f_part = b.slice(s![0..n, ..]).to_owned();
    let e_part = b.slice(s![n..2 * n, ..]).to_owned();
    // separability: the one-sided pairing <e_b, f_a> vanishes on all pairs
    let cross = e_part.t().dot(&f_part);
    if frob_owned(&cross) > 1e-9 * scale(frob_owned(b)) {
        return Ok(None);
    }
    Ok(Some(LinearSubspace::new(n, &f_part)))
}

/// Hybrid (mixed input) representation of a Lagrangian subspace: a split of
/// indices into a flow set and an effort set such that S is the graph of a
/// matrix over the mixed coordinates (f on the flow set, e on the effort
/// set), with the signature-symmetry identity Sig * S_h = S_h^T * Sig.
#[derive(Debug, Clone)]
pub struct HybridRepresentation {
    /// Indices parametrized by the f-coordinate; the rest use e.
    pub flow_set: Vec<usize>,
    pub matrix: Mat,
    /// +1 on the flow set, -1 elsewhere.
    pub signature: Array1<f64>,
}

pub fn hybrid_representation(sub: &LinearSubspace) -> Result<HybridRepresentation> {
    if !is_lagrangian(sub)? {
        return Err(GeometryError::NotLagrangian);
    }
    let n = sub.ambient() / 2;
    let b = sub.basis();
    // greedy split: per index, keep whichever of the f-row / e-row adds the
    // larger new direction to the selection
    let mut selected = Mat::zeros((n, n));
    let mut complement = Mat::zeros((n, n));
    let mut flow_set = Vec::new();
    let mut signature = Array1::zeros(n);
    for i in 0..n {
        let f_row = b.row(i).to_owned();
        let e_row = b.row(n + i).to_owned();
        let gain = |row: &Array1<f64>, count: usize| -> f64 {
            // component of `row` outside the span of the selected rows
            let mut v = row.clone();
            for k in 0..count {
                let sel = selected.row(k);
                let sel_norm = sel.dot(&sel);
                if sel_norm > 0.0 {
                    let coef = v.dot(&sel) / sel_norm;
                    v = v - &(sel.to_owned() * coef);
                }
            }
            v.dot(&v).sqrt()
        };
        let gf = gain(&f_row, i);
        let ge = gain(&e_row, i);
        // flow-first pivoting: take the f-coordinate whenever it carries a
        // genuinely new direction, fall back to e otherwise
        if gf > 1e-8 * scale(ge) {
            selected.row_mut(i).assign(&f_row);
            complement.row_mut(i).assign(&e_row);
            flow_set.push(i);
            signature[i] = 1.0;
        } else {
            selected.row_mut(i).assign(&e_row);
            complement.row_mut(i).assign(&f_row);
            signature[i] = -1.0;
        }
    }
    // S_h maps the mixed parameters to the complementary coordinates
    let matrix = matcore::solve_mat(&selected.t().to_owned(), &complement.t().to_owned())
        .map_err(|_| GeometryError::NotLagrangian)?
        .t()
        .to_owned();
    let sig = Mat::from_diag(&signature);
    let resid = frob_owned(&(sig.dot(&matrix) - matrix.t().dot(&sig)));
    if resid > 1e-9 * scale(frob_owned(&matrix)) {
        return Err(GeometryError::NotLagrangian);
    }
    Ok(HybridRepresentation {
        flow_set,
        matrix,
        signature,
    })
}

/// Evaluate the generating function (f1, e2) -> (f1, e2)^T S_h (f1, e2) / 2
/// of a hybrid representation at a mixed parameter vector.
pub fn generating_function_value(rep: &HybridRepresentation, mixed: &Array1<f64>) -> f64 {
    0.5 * mixed.dot(&rep.matrix.dot(mixed))
}

/// Kernel representation of a Dirac structure: D = ker [F E] with
/// F E^T + E F^T = 0 and [F E] of full row rank.
pub fn kernel_representation(sub: &LinearSubspace) -> Result<(Mat, Mat)> {
    if !is_dirac(sub)? {
        return Err(GeometryError::NotDirac);
    }
    let n = sub.ambient() / 2;
    // the standard orthogonal complement of a Dirac structure is Pi * D,
    // so the rows of (Pi * basis)^T annihilate D and inherit isotropy
    let b = sub.basis();
    let mut swapped = Mat::zeros((2 * n, n));
    swapped
        .slice_mut(s![0..n, ..])
        .assign(&b.slice(s![n..2 * n, ..]));
    swapped
        .slice_mut(s![n..2 * n, ..])
        .assign(&b.slice(s![0..n, ..]));
    let f = swapped.slice(s![0..n, ..]).t().to_owned();
    let e = swapped.slice(s![n..2 * n, ..]).t().to_owned();
    let skew = frob_owned(&(f.dot(&e.t()) + e.dot(&f.t())));
    debug_assert!(skew <= 1e-9 * scale(n as f64), "isotropy residual {skew}");
    Ok((f, e))
}

// ---------------------------------------------------------------------------
// discretized weighted Hankel matrix

#[derive(Debug, Clone)]
pub struct HankelGridReport {
    pub symmetric: bool,
    pub symmetry_residual: f64,
    /// Estimates of the nonzero operator eigenvalues (real parts of the
    /// reduced n x n product; imaginary parts recorded separately).
    pub eigenvalue_estimates: Array1<f64>,
    pub max_imag: f64,
}

/// Grid check of the weighted Hankel operator on [0, horizon] with `cells`
/// midpoint cells: kernel symmetry (self-adjointness) and the nonzero
/// spectrum, computed through the rank-n factorization of the grid matrix
/// (the full N x N matrix is never formed).
pub fn discretized_hankel_check(
    sys: &StateSpaceSystem,
    horizon: f64,
    cells: usize,
) -> Result<HankelGridReport> {
    if !matcore::is_hurwitz(&sys.a)? {
        return Err(GeometryError::NotHurwitz);
    }
    let n = sys.state_dim();
    let h = horizon / cells as f64;
    let sg = sys.sigma_mat();
    let sc = sg.dot(&sys.c);
    // kernel blocks depend on t+tau only; walk s = (k + l + 1) h
    let step = matrix_exponential(&sys.a, h);
    let mut carrier = matrix_exponential(&sys.a, h); // e^{A s}, s = h at (0,0)
    let mut sym_res: f64 = 0.0;
    let mut kernel_scale: f64 = 0.0;
    for _ in 0..(2 * cells - 1) {
        let block = sc.dot(&carrier).dot(&sys.b);
        sym_res = sym_res.max(matcore::asymmetry(&block));
        kernel_scale = kernel_scale.max(frob_owned(&block));
        carrier = step.dot(&carrier);
    }
    let symmetry_residual = sym_res / scale(kernel_scale);
    // nonzero eigenvalues of the grid matrix equal those of the n x n
    // product  h * sum_l e^{A t_l} B sigma C e^{A t_l}
    let mut reduced = Mat::zeros((n, n));
    let mut left = matrix_exponential(&sys.a, h / 2.0); // e^{A t_l}, t_l = (l + 1/2) h
    for _ in 0..cells {
        reduced = reduced + left.dot(&sys.b).dot(&sc).dot(&left) * h;
        left = step.dot(&left);
    }
    let evs = matcore::eigvals(&reduced)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| evs[b].norm().partial_cmp(&evs[a].norm()).unwrap());
    let eigenvalue_estimates = Array1::from_vec(order.iter().map(|&k| evs[k].re).collect());
    let max_imag = evs.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(HankelGridReport {
        symmetric: symmetry_residual <= 1e-6,
        symmetry_residual,
        eigenvalue_estimates,
        max_imag,
    })
}

// ---------------------------------------------------------------------------
// constrained Volterra form

/// Binary verdict on the restricted quadratic form: `Psd` when it is
/// positive semidefinite on the admissible subspace, `Indefinite` otherwise
/// (i.e. the form takes negative values, so the supply rate cannot be
/// dominated by any storage).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstrainedDefiniteness {
    Psd,
    Indefinite,
}

#[derive(Debug, Clone)]
pub struct VolterraGrid {
    pub alpha: f64,
    pub h: f64,
    /// Quadratic-form matrix of the triangular kernel (quadrature weights
    /// folded in, half weight on diagonal cells).
    pub v: Mat,
    /// Moment constraint matrix; admissible inputs lie in its kernel.
    pub constraints: Mat,
    /// Orthonormal basis of the admissible input space.
    pub admissible: Mat,
}

#[derive(Debug, Clone)]
pub struct VolterraReport {
    pub symmetric: bool,
    pub symmetry_residual: f64,
    pub definiteness: ConstrainedDefiniteness,
    pub admissible_dim: usize,
}

/// Build the grid quadratic form of the one-sided kernel
/// B^T e^{-A^T t} Omega e^{-A tau} B on [alpha, beta] together with the
/// discretized moment constraints (exact cellwise integrals of e^{-A tau} B).
pub fn volterra_grid(
    sys: &StateSpaceSystem,
    omega: &Mat,
    window: (f64, f64),
    cells: usize,
) -> Result<VolterraGrid> {
    let (alpha, beta) = window;
    let n = sys.state_dim();
    let m = sys.io_dim();
    let h = (beta - alpha) / cells as f64;
    // E_k = e^{-A t_k} B at midpoints t_k = alpha + (k + 1/2) h
    let back = matrix_exponential(&sys.a, -h);
    let mut e_blocks = Vec::with_capacity(cells);
    let mut carrier = matrix_exponential(&sys.a, -(alpha + h / 2.0));
    for _ in 0..cells {
        e_blocks.push(carrier.dot(&sys.b));
        carrier = back.dot(&carrier);
    }
    let dim = cells * m;
    let mut v = Mat::zeros((dim, dim));
    for k in 0..cells {
        let left = e_blocks[k].t().dot(omega);
        for l in 0..=k {
            let weight = if l == k { 0.5 * h * h } else { h * h };
            let block = left.dot(&e_blocks[l]) * weight;
            v.slice_mut(s![k * m..(k + 1) * m, l * m..(l + 1) * m])
                .assign(&block);
        }
    }
    // exact cellwise integral: int_0^h e^{-A s} ds from the augmented
    // exponential [[-A, I], [0, 0]]
    let mut aug = Mat::zeros((2 * n, 2 * n));
    aug.slice_mut(s![0..n, 0..n]).assign(&(-&sys.a));
    aug.slice_mut(s![0..n, n..2 * n]).assign(&eye(n));
    let phi = matrix_exponential(&aug, h)
        .slice(s![0..n, n..2 * n])
        .to_owned();
    let mut constraints = Mat::zeros((n, dim));
    let mut cell_start = matrix_exponential(&sys.a, -alpha); // e^{-A (alpha + l h)}
    for l in 0..cells {
        let block = cell_start.dot(&phi).dot(&sys.b);
        constraints
            .slice_mut(s![.., l * m..(l + 1) * m])
            .assign(&block);
        cell_start = back.dot(&cell_start);
    }
    let admissible = nullspace(&constraints);
    Ok(VolterraGrid {
        alpha,
        h,
        v,
        constraints,
        admissible,
    })
}

/// Symmetry and definiteness of the Volterra quadratic form restricted to
/// the admissible (constrained) input subspace.
pub fn constrained_volterra_check(
    sys: &StateSpaceSystem,
    omega_cert: &Certificate,
    window: (f64, f64),
    cells: usize,
) -> Result<VolterraReport> {
    if frob_owned(&sys.d) > FEAS_TOL * scale(frob_owned(&sys.d)) {
        return Err(GeometryError::FeedthroughNonzero);
    }
    if omega_cert.kind != CertificateKind::IOHamiltonian
        || !certify::verify_certificate(sys, omega_cert.kind, &omega_cert.matrix)
    {
        return Err(GeometryError::NotDirac);
    }
    let grid = volterra_grid(sys, &omega_cert.matrix, window, cells)?;
    let u = &grid.admissible;
    let restricted = u.t().dot(&grid.v).dot(u);
    report_restricted(&restricted, u.ncols())
}

fn report_restricted(restricted: &Mat, dim: usize) -> Result<VolterraReport> {
    let sym_res = matcore::asymmetry(restricted) / scale(frob_owned(restricted));
    let symmetric = sym_res <= 1e-6;
    let sym = matcore::sym_part(restricted);
    let vals = matcore::symmetric_eig(&sym)?.0;
    let vmax = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tol = 1e-9 * scale(vmax);
    let definiteness = if vals.iter().all(|&v| v >= -tol) {
        ConstrainedDefiniteness::Psd
    } else {
        ConstrainedDefiniteness::Indefinite
    };
    Ok(VolterraReport {
        symmetric,
        symmetry_residual: sym_res,
        definiteness,
        admissible_dim: dim,
    })
}

/// Value of the generating functional (half the kernel quadratic form) at a
/// grid input satisfying the moment constraints.
pub fn generating_functional_value(grid: &VolterraGrid, input: &Array1<f64>) -> Result<f64> {
    let viol = {
        let r = grid.constraints.dot(input);
        r.dot(&r).sqrt()
    };
    let unorm = input.dot(input).sqrt();
    if viol > 1e-6 * scale(unorm * frob(&grid.constraints.view())) {
        return Err(GeometryError::ConstraintViolated);
    }
    Ok(0.5 * input.dot(&grid.v.dot(input)))
}
