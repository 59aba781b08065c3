//! Gramian-based spectral analysis of the signature-weighted Hankel
//! operator: controllability/observability Gramians, the cross-Gramian,
//! real eigenvalues and eigenfunctions, the kernel expansion, and the
//! quadratic memory functional of the past input.

use ndarray::Array1;
use thiserror::Error;

use crate::certify::{self, Certificate, CertificateKind};
use crate::lti::{self, StateSpaceSystem};
use crate::matcore::{
    self, matrix_exponential, min_singular_value, psd_sqrt, spectral_norm, Mat,
};

#[derive(Debug, Error)]
pub enum HankelError {
    #[error("A must be Hurwitz")]
    NotHurwitz,
    #[error("system is not reciprocal (no valid metric certificate)")]
    NotReciprocal,
    #[error("controllability Gramian is singular")]
    SingularGramian,
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
    #[error(transparent)]
    Lti(#[from] lti::LtiError),
}

pub type Result<T> = std::result::Result<T, HankelError>;

/// Gramians and the spectrum of the weighted Hankel operator.
///
/// Eigenvalues are those of the product ctrb * G (all real); eigenvector
/// columns are scaled so that x_i^T ctrb^{-1} x_i = 1.
#[derive(Debug, Clone)]
pub struct HankelSpectralData {
    pub ctrb: Mat,
    pub obsv: Mat,
    pub cross: Mat,
    pub eigenvalues: Array1<f64>,
    pub eigvecs: Mat,
}

/// Controllability and observability Gramians plus the cross-Gramian
/// solving A Z + Z A = -B sigma C.
pub fn compute_gramians(sys: &StateSpaceSystem) -> Result<(Mat, Mat, Mat)> {
    if !matcore::is_hurwitz(&sys.a)? {
        return Err(HankelError::NotHurwitz);
    }
    let ctrb = matcore::solve_lyapunov(&sys.a, &sys.b.dot(&sys.b.t()))?;
    let obsv = matcore::solve_lyapunov(&sys.a.t().to_owned(), &sys.c.t().dot(&sys.c))?;
    let rhs = -(sys.b.dot(&sys.sigma_mat()).dot(&sys.c));
    let cross = matcore::solve_sylvester(&sys.a, &sys.a, &rhs)?;
    Ok((ctrb, obsv, cross))
}

/// Spectrum of ctrb * G computed through the symmetric congruence
/// ctrb^{1/2} G ctrb^{1/2} (similar to ctrb * G, manifestly real).
pub fn hankel_spectrum(sys: &StateSpaceSystem, g_cert: &Certificate) -> Result<HankelSpectralData> {
    if g_cert.kind != CertificateKind::Reciprocal
        || !certify::verify_certificate(sys, g_cert.kind, &g_cert.matrix)
    {
        return Err(HankelError::NotReciprocal);
    }
    let (ctrb, obsv, cross) = compute_gramians(sys)?;
    let root = psd_sqrt(&ctrb, 1e-10)?;
    let congruent = root.dot(&g_cert.matrix).dot(&root);
    let (vals, vecs) = matcore::symmetric_eig(&congruent)?;
    // eigenvectors of ctrb*G are root * v, already normalized so that
    // x^T ctrb^{-1} x = v^T v = 1
    let x = root.dot(&vecs);
    // descending magnitude
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[b].abs().partial_cmp(&vals[a].abs()).unwrap());
    let mut eigenvalues = Array1::zeros(n);
    let mut eigvecs = Mat::zeros((n, n));
    for (col, &k) in order.iter().enumerate() {
        eigenvalues[col] = vals[k];
        eigvecs.column_mut(col).assign(&x.column(k));
    }
    Ok(HankelSpectralData {
        ctrb,
        obsv,
        cross,
        eigenvalues,
        eigvecs,
    })
}

/// Samples of the eigenfunctions phi_i(t) = B^T e^{A^T t} ctrb^{-1} x_i on
/// the given time grid; element i is an (len(times) x m) matrix.
pub fn eigenfunctions(
    sys: &StateSpaceSystem,
    data: &HankelSpectralData,
    times: &[f64],
) -> Result<Vec<Mat>> {
    let n = sys.state_dim();
    if n > 0 && min_singular_value(&data.ctrb) <= 1e-10 * spectral_norm(&data.ctrb).max(1.0) {
        return Err(HankelError::SingularGramian);
    }
    let ci = matcore::inv(&data.ctrb)?;
    let seeds = ci.dot(&data.eigvecs); // columns ctrb^{-1} x_i
    let m = sys.io_dim();
    let mut out = vec![Mat::zeros((times.len(), m)); n];
    for (row, &t) in times.iter().enumerate() {
        let e = matrix_exponential(&sys.a.t().to_owned(), t);
        let phi = sys.b.t().dot(&e).dot(&seeds); // m x n
        for (i, mat) in out.iter_mut().enumerate() {
            mat.row_mut(row).assign(&phi.column(i));
        }
    }
    Ok(out)
}

/// Closed-form pairwise L2 inner products of the eigenfunctions,
/// x_i^T ctrb^{-1} x_j; equals the identity for a valid spectrum.
pub fn orthonormality(data: &HankelSpectralData) -> Result<Mat> {
    let ci = matcore::inv(&data.ctrb)?;
    Ok(data.eigvecs.t().dot(&ci).dot(&data.eigvecs))
}

/// Max absolute deviation over the grid of the kernel expansion
/// sigma C e^{A(t+tau)} B = sum_i lambda_i phi_i(t) phi_i(tau)^T,
/// optionally truncated to the leading `terms` eigenpairs.
pub fn mercer_residual(
    sys: &StateSpaceSystem,
    data: &HankelSpectralData,
    times: &[f64],
    terms: Option<usize>,
) -> Result<f64> {
    let n = sys.state_dim();
    let keep = terms.unwrap_or(n).min(n);
    let phis = eigenfunctions(sys, data, times)?;
    let sg = sys.sigma_mat();
    // precompute sigma C e^{At} and e^{At} B per grid point
    let mut left = Vec::with_capacity(times.len());
    let mut right = Vec::with_capacity(times.len());
    for &t in times {
        let e = matrix_exponential(&sys.a, t);
        left.push(sg.dot(&sys.c).dot(&e));
        right.push(e.dot(&sys.b));
    }
    let m = sys.io_dim();
    let mut worst: f64 = 0.0;
    for (it, _) in times.iter().enumerate() {
        for (jt, _) in times.iter().enumerate() {
            let kernel = left[it].dot(&right[jt]);
            let mut expansion = Mat::zeros((m, m));
            for (i, phi) in phis.iter().enumerate().take(keep) {
                let pt = phi.row(it);
                let ptau = phi.row(jt);
                for a in 0..m {
                    for b in 0..m {
                        expansion[[a, b]] += data.eigenvalues[i] * pt[a] * ptau[b];
                    }
                }
            }
            let dev = (&kernel - &expansion)
                .iter()
                .map(|x| x.abs())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

/// Result of evaluating the quadratic memory functional of a past input.
#[derive(Debug, Clone)]
pub struct MemoryFunctionalSample {
    /// Double-quadrature value of the pairing integral.
    pub value: f64,
    /// State reached at time zero by the past input.
    pub x0: Array1<f64>,
    /// The closed form x0^T G x0 / 2.
    pub quadratic: f64,
}

/// Evaluate the memory functional of a past input sampled on [-T, 0]
/// (row k at time -T + k h) both by quadrature of the pairing integral and
/// by the closed form x(0)^T G x(0) / 2.
pub fn memory_functional(
    sys: &StateSpaceSystem,
    g: &Mat,
    past: &Mat,
    h: f64,
) -> Result<MemoryFunctionalSample> {
    if !matcore::is_hurwitz(&sys.a)? {
        return Err(HankelError::NotHurwitz);
    }
    let n = sys.state_dim();
    let steps = past.nrows();
    let horizon = h * (steps.saturating_sub(1)) as f64;
    let traj = sys.simulate(past, h, -horizon, &Array1::zeros(n))?;
    let x0 = traj.states.row(steps - 1).to_owned();
    // the pairing integral factorizes through the reversed input
    // u_hat(t) = u(-t):
    //   integral = w1^T G w2 with w_k = int e^{At} B u_hat(t) dt,
    // since the kernel is B^T e^{A^T t} G e^{A tau} B
    let step = matrix_exponential(&sys.a, h);
    let mut w = Array1::<f64>::zeros(n);
    let mut carrier = matcore::eye(n); // e^{A * jh}
    for j in 0..steps {
        let u = past.row(steps - 1 - j).to_owned();
        let weight = if j == 0 || j == steps - 1 { 0.5 } else { 1.0 };
        w = w + &(carrier.dot(&sys.b.dot(&u)) * (weight * h));
        carrier = step.dot(&carrier);
    }
    let value = 0.5 * w.dot(&g.dot(&w));
    let quadratic = 0.5 * x0.dot(&g.dot(&x0));
    Ok(MemoryFunctionalSample {
        value,
        x0,
        quadratic,
    })
}

/// Default analysis grid: horizon 15 / |slowest decay rate| capped at 100,
/// spacing chosen to keep at most 20001 points.
pub fn default_grid(a: &Mat) -> Result<(f64, f64)> {
    let evs = matcore::eigvals(a)?;
    let slow = evs
        .iter()
        .map(|l| l.re.abs())
        .fold(f64::INFINITY, f64::min)
        .max(1e-3);
    let horizon = (15.0 / slow).min(100.0);
    let h = (horizon / 20000.0).max(1e-3);
    Ok((horizon, h))
}

/// Uniform grid of `count` points from 0 to `span`.
pub fn uniform_times(span: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| span * k as f64 / (count.max(2) - 1) as f64)
        .collect()
}
