//! Passivity analysis: KYP storage matrices, the compatibility fixed point
//! Q = G Q^{-1} G, relaxation-system classification, and storage matrices
//! for systems carrying a skew form.
//!
//! The dissipation LMI is never handed to a general semidefinite solver.
//! Two regimes are supported: D + D^T positive definite (positive-real
//! algebraic Riccati equation) and the lossless equality case; anything
//! else fails loudly with `SingularFeedthrough`.

use ndarray::{s, Array1};
use serde::Serialize;
use thiserror::Error;

use crate::certify::{self, Certificate, CertificateKind, CertifyOutcome};
use crate::lti::StateSpaceSystem;
use crate::matcore::{
    self, definiteness, eye, frob_owned, inv, min_singular_value, solve_structured, spectral_norm,
    sym_part, Definiteness, LinearConstraintSystem, Mat, StructuredSolution, Symmetry,
};
use crate::tol::{scale, FEAS_TOL, NULL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StorageKind {
    MinStorage,
    MaxStorage,
    Compatible,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Min,
    Max,
}

/// A storage matrix together with the spectrum of its dissipation slack.
#[derive(Debug, Clone)]
pub struct StorageCertificate {
    pub q: Mat,
    /// Eigenvalues of the dissipation LMI slack; all >= -FEAS_TOL.
    pub slack_spectrum: Array1<f64>,
    pub lossless: bool,
    pub kind: StorageKind,
}

#[derive(Debug, Clone)]
pub struct RelaxationVerdict {
    pub is_relaxation: bool,
    pub g: Option<Mat>,
    /// P = -GA is PSD (the dissipation certificate of a relaxation system).
    pub potential_psd: bool,
    /// Minimum eigenvalue of the LMI slack at Q = G (when G exists).
    pub slack_min_eig: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub kernel_dim: usize,
    pub a_invariance_residual: f64,
    pub output_kernel_residual: f64,
}

#[derive(Debug, Error)]
pub enum PassivityError {
    #[error("system is not minimal")]
    NotMinimal,
    #[error("D + D^T is singular and the system is not lossless; regime unsupported")]
    SingularFeedthrough,
    #[error("no PSD storage matrix exists")]
    NotPassive,
    #[error("storage kernel structure violated: {0}")]
    PropositionViolated(String),
    #[error("fixed-point iteration did not converge; last residual {residual:.3e}")]
    NoConvergence { residual: f64 },
    #[error("fixed-point iterate became singular")]
    IterateSingular,
    #[error("no storage matrix for the skew form exists; the quadratic form is indefinite")]
    Indefinite,
    #[error("feedthrough must be zero")]
    FeedthroughNonzero,
    #[error(transparent)]
    Certify(#[from] certify::CertifyError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

pub type Result<T> = std::result::Result<T, PassivityError>;

/// The (n+m) x (n+m) dissipation slack
/// [[-A^T Q - Q A, C^T - Q B], [C - B^T Q, D + D^T]].
pub fn lmi_slack(sys: &StateSpaceSystem, q: &Mat) -> Mat {
    let n = sys.state_dim();
    let m = sys.io_dim();
    let mut slack = Mat::zeros((n + m, n + m));
    let top = -(sys.a.t().dot(q)) - q.dot(&sys.a);
    slack.slice_mut(s![0..n, 0..n]).assign(&sym_part(&top));
    let off = sys.c.t().to_owned() - q.dot(&sys.b);
    slack.slice_mut(s![0..n, n..n + m]).assign(&off);
    slack.slice_mut(s![n..n + m, 0..n]).assign(&off.t());
    slack
        .slice_mut(s![n..n + m, n..n + m])
        .assign(&(&sys.d + &sys.d.t()));
    slack
}

fn slack_spectrum(sys: &StateSpaceSystem, q: &Mat) -> Result<Array1<f64>> {
    let (vals, _) = matcore::symmetric_eig(&lmi_slack(sys, q))?;
    Ok(vals)
}

fn min_eig(vals: &Array1<f64>) -> f64 {
    vals.iter().cloned().fold(f64::INFINITY, f64::min)
}

fn assemble_storage(
    sys: &StateSpaceSystem,
    q: Mat,
    kind: StorageKind,
) -> Result<StorageCertificate> {
    let spectrum = slack_spectrum(sys, &q)?;
    let sc = scale(spectral_norm(&q) + spectral_norm(&sys.a));
    if min_eig(&spectrum) < -FEAS_TOL * sc {
        return Err(PassivityError::NotPassive);
    }
    let lossless = spectrum.iter().all(|v| v.abs() <= FEAS_TOL * sc);
    Ok(StorageCertificate {
        q,
        slack_spectrum: spectrum,
        lossless,
        kind,
    })
}

/// Storage matrix Q solving the lossless equalities A^T Q + Q A = 0,
/// B^T Q = C, if they are feasible with a unique solution.
fn lossless_storage(sys: &StateSpaceSystem) -> Result<Option<Mat>> {
    let n = sys.state_dim();
    if n == 0 {
        return Ok(Some(Mat::zeros((0, 0))));
    }
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::Symmetric);
    let at = sys.a.t().to_owned();
    let id = eye(n);
    lcs.add_equation(
        &[(at.view(), id.view(), 1.0), (id.view(), sys.a.view(), 1.0)],
        &Mat::zeros((n, n)),
    );
    let bt = sys.b.t().to_owned();
    lcs.add_equation(&[(bt.view(), id.view(), 1.0)], &sys.c.clone());
    match solve_structured(&lcs)? {
        StructuredSolution::Unique(q) => Ok(Some(sym_part(&q))),
        _ => Ok(None),
    }
}

/// Extreme storage matrices via the positive-real Riccati equation when
/// D + D^T is positive definite, or the lossless equalities when D + D^T = 0.
///
/// `Min` returns the stabilizing solution (available storage), `Max` the
/// anti-stabilizing one (required supply). The result must be PSD.
pub fn kyp_storage(sys: &StateSpaceSystem, objective: Objective) -> Result<StorageCertificate> {
    if !sys.minimality().minimal() {
        return Err(PassivityError::NotMinimal);
    }
    let r = &sys.d + &sys.d.t();
    let kind = match objective {
        Objective::Min => StorageKind::MinStorage,
        Objective::Max => StorageKind::MaxStorage,
    };
    let rsc = scale(spectral_norm(&r));
    if sys.io_dim() > 0 && frob_owned(&r) <= FEAS_TOL * rsc {
        // lossless route: both extremes coincide with the unique equality
        // solution
        if let Some(q) = lossless_storage(sys)? {
            return assemble_storage(sys, q, kind);
        }
        return Err(PassivityError::SingularFeedthrough);
    }
    if definiteness(&r)? != Definiteness::PosDef {
        return Err(PassivityError::SingularFeedthrough);
    }
    let r_inv = inv(&r)?;
    // Schur complement of the LMI at equality:
    // F^T Q + Q F + Q P Q + S = 0 with F = A - B R^{-1} C,
    // P = B R^{-1} B^T, S = C^T R^{-1} C
    let f = &sys.a - &sys.b.dot(&r_inv).dot(&sys.c);
    let p = sys.b.dot(&r_inv).dot(&sys.b.t());
    let s_mat = sys.c.t().dot(&r_inv).dot(&sys.c);
    let neg_p = -&p;
    let q = match objective {
        Objective::Min => matcore::solve_care(&f, &neg_p, &s_mat),
        Objective::Max => matcore::solve_care_antistabilizing(&f, &neg_p, &s_mat),
    }
    .map_err(|_| PassivityError::NotPassive)?;
    if let Some(&low) = matcore::symmetric_eig(&q)?.0.first() {
        if low < -FEAS_TOL * scale(spectral_norm(&q)) {
            return Err(PassivityError::NotPassive);
        }
    }
    assemble_storage(sys, q, kind)
}

/// Verify that ker Q is A-invariant and contained in ker C; for observable
/// systems the kernel must be trivial.
pub fn kernel_invariance_check(
    sys: &StateSpaceSystem,
    storage: &StorageCertificate,
) -> Result<KernelReport> {
    let q = &storage.q;
    let sc = scale(spectral_norm(q) + spectral_norm(&sys.a));
    if min_eig(&slack_spectrum(sys, q)?) < -FEAS_TOL * sc {
        return Err(PassivityError::PropositionViolated(
            "storage matrix fails the dissipation LMI".into(),
        ));
    }
    let kernel = matcore::nullspace(q);
    let k = kernel.ncols();
    if k == 0 {
        return Ok(KernelReport {
            kernel_dim: 0,
            a_invariance_residual: 0.0,
            output_kernel_residual: 0.0,
        });
    }
    if sys.minimality().observable {
        return Err(PassivityError::PropositionViolated(
            "observable system with a nontrivial storage kernel".into(),
        ));
    }
    // A ker Q subset of ker Q: project A*kernel off span(kernel)
    let ak = sys.a.dot(&kernel);
    let proj = &ak - &kernel.dot(&kernel.t().dot(&ak));
    let a_res = frob_owned(&proj) / scale(frob_owned(&ak));
    let c_res = frob_owned(&sys.c.dot(&kernel)) / scale(frob_owned(&sys.c));
    if a_res > FEAS_TOL || c_res > FEAS_TOL {
        return Err(PassivityError::PropositionViolated(format!(
            "kernel invariance residuals {a_res:.3e} / {c_res:.3e}"
        )));
    }
    Ok(KernelReport {
        kernel_dim: k,
        a_invariance_residual: a_res,
        output_kernel_residual: c_res,
    })
}

/// Midpoint iteration Q <- (Q + G Q^{-1} G)/2 towards a storage matrix
/// compatible with the reciprocity metric (Q = G Q^{-1} G).
pub fn compatible_q(
    sys: &StateSpaceSystem,
    g_cert: &Certificate,
    q0: &StorageCertificate,
) -> Result<StorageCertificate> {
    if g_cert.kind != CertificateKind::Reciprocal
        || !certify::verify_certificate(sys, g_cert.kind, &g_cert.matrix)
    {
        return Err(PassivityError::PropositionViolated(
            "invalid reciprocity certificate".into(),
        ));
    }
    let g = &g_cert.matrix;
    let mut q = q0.q.clone();
    let mut residual = f64::INFINITY;
    for _ in 0..500 {
        if min_singular_value(&q) <= NULL_TOL * spectral_norm(&q).max(1.0) {
            return Err(PassivityError::IterateSingular);
        }
        let reflected = g.dot(&inv(&q)?).dot(g);
        residual = frob_owned(&(&q - &reflected));
        if residual <= 1e-9 * scale(frob_owned(&q)) {
            break;
        }
        q = sym_part(&((&q + &reflected) / 2.0));
    }
    if residual > 1e-9 * scale(frob_owned(&q)) {
        return Err(PassivityError::NoConvergence { residual });
    }
    assemble_storage(sys, q, StorageKind::Compatible)
}

/// Classify the system as a relaxation system: reciprocal with identity
/// signature and positive definite metric G. Reports the definiteness of
/// P = -GA and the dissipation slack at Q = G.
pub fn relaxation_test(sys: &StateSpaceSystem) -> Result<RelaxationVerdict> {
    if !sys.sigma_is_identity() {
        return Ok(RelaxationVerdict {
            is_relaxation: false,
            g: None,
            potential_psd: false,
            slack_min_eig: None,
            note: "signature is not the identity".into(),
        });
    }
    let outcome = certify::find_reciprocal_g(sys, false)?;
    let cert = match outcome {
        CertifyOutcome::Certified(c) => c,
        CertifyOutcome::Infeasible { .. } => {
            return Ok(RelaxationVerdict {
                is_relaxation: false,
                g: None,
                potential_psd: false,
                slack_min_eig: None,
                note: "not reciprocal".into(),
            })
        }
        CertifyOutcome::NonUnique { family_dim } => {
            return Ok(RelaxationVerdict {
                is_relaxation: false,
                g: None,
                potential_psd: false,
                slack_min_eig: None,
                note: format!("metric not unique (family dimension {family_dim})"),
            })
        }
    };
    let g = cert.matrix;
    let g_posdef = cert.definiteness == Some(Definiteness::PosDef);
    let p = -(g.dot(&sys.a));
    let p_vals = matcore::symmetric_eig(&sym_part(&p))?.0;
    let potential_psd = p_vals
        .iter()
        .all(|&v| v >= -FEAS_TOL * scale(spectral_norm(&p)));
    let slack_min = min_eig(&slack_spectrum(sys, &g)?);
    let note = if g_posdef {
        "reciprocal with positive definite metric".into()
    } else {
        "reciprocal but metric is not positive definite".into()
    };
    Ok(RelaxationVerdict {
        is_relaxation: g_posdef,
        g: Some(g),
        potential_psd,
        slack_min_eig: Some(slack_min),
        note,
    })
}

/// Storage matrix W for a system with a skew form: symmetric invertible W
/// with B^T W = sigma C, A^T W + W A <= 0, and the reflection identities
/// (Omega^{-1} W)^2 = I and (Omega^{-1} W)^T Omega (Omega^{-1} W) = -Omega.
///
/// Solves the affine constraint set, then runs the midpoint map
/// W <- (W + Omega W^{-1} Omega)/2 towards the fixed point W = Omega W^{-1} Omega.
pub fn io_ham_storage_w(
    sys: &StateSpaceSystem,
    omega_cert: &Certificate,
) -> Result<StorageCertificate> {
    if frob_owned(&sys.d) > FEAS_TOL * scale(frob_owned(&sys.d)) {
        return Err(PassivityError::FeedthroughNonzero);
    }
    if omega_cert.kind != CertificateKind::IOHamiltonian
        || !certify::verify_certificate(sys, omega_cert.kind, &omega_cert.matrix)
    {
        return Err(PassivityError::PropositionViolated(
            "invalid skew-form certificate".into(),
        ));
    }
    let omega = &omega_cert.matrix;
    let n = sys.state_dim();
    if n == 0 {
        return assemble_storage(sys, Mat::zeros((0, 0)), StorageKind::Generic);
    }
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::Symmetric);
    let bt = sys.b.t().to_owned();
    let id = eye(n);
    lcs.add_equation(
        &[(bt.view(), id.view(), 1.0)],
        &sys.sigma_mat().dot(&sys.c),
    );
    let (particular, basis) = match solve_structured(&lcs)? {
        StructuredSolution::Unique(w) => (w, Vec::new()),
        StructuredSolution::Family { particular, basis } => (particular, basis),
        StructuredSolution::Infeasible { .. } => return Err(PassivityError::Indefinite),
    };
    // ensure an invertible starting point within the affine family
    let mut w = particular.clone();
    if min_singular_value(&w) <= NULL_TOL * spectral_norm(&w).max(1.0) {
        let mut found = false;
        for dir in &basis {
            for &step in &[1.0, -1.0, 0.5, -0.5] {
                let cand = &particular + &(dir * step);
                if min_singular_value(&cand) > 1e-6 * spectral_norm(&cand).max(1.0) {
                    w = cand;
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        if !found {
            return Err(PassivityError::Indefinite);
        }
    }
    let mut residual = f64::INFINITY;
    for _ in 0..200 {
        if min_singular_value(&w) <= NULL_TOL * spectral_norm(&w).max(1.0) {
            return Err(PassivityError::IterateSingular);
        }
        let reflected = omega.dot(&inv(&w)?).dot(omega);
        residual = frob_owned(&(&w - &reflected));
        if residual <= 1e-9 * scale(frob_owned(&w)) {
            break;
        }
        w = sym_part(&((&w + &reflected) / 2.0));
    }
    if residual > 1e-9 * scale(frob_owned(&w)) {
        return Err(PassivityError::Indefinite);
    }
    // dissipation inequality and constraint re-verification
    let sc = scale(spectral_norm(&w) + spectral_norm(&sys.a));
    let diss = sym_part(&(sys.a.t().dot(&w) + w.dot(&sys.a)));
    let diss_max = matcore::symmetric_eig(&diss)?
        .0
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let constraint_res = frob_owned(&(sys.b.t().dot(&w) - sys.sigma_mat().dot(&sys.c)));
    if diss_max > FEAS_TOL * sc || constraint_res > FEAS_TOL * sc {
        return Err(PassivityError::Indefinite);
    }
    // reflection identities
    let v = inv(omega)?.dot(&w);
    let sc_v = scale(spectral_norm(&v));
    if frob_owned(&(v.dot(&v) - eye(n))) > FEAS_TOL * sc_v
        || frob_owned(&(v.t().dot(omega).dot(&v) + omega)) > FEAS_TOL * scale(spectral_norm(omega))
    {
        return Err(PassivityError::Indefinite);
    }
    assemble_storage(sys, w, StorageKind::Generic)
}
