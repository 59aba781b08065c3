//! Structure certificates for LTI symmetry classes.
//!
//! Each finder sets up the defining matrix equations of one symmetry class
//! as a vectorized constraint system, solves it, and validates the result
//! both algebraically (equation residuals) and in the frequency domain
//! (transfer-matrix identities at a fixed sample set). Certificates can be
//! composed: two of the three structures (symplectic form, pseudo-inner
//! product, time-reversal map) determine the third, and a lossless storage
//! matrix combined with a reciprocity metric yields the signed reversal map.

use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lti::{self, StateSpaceSystem};
use crate::matcore::{
    self, asymmetry, definiteness, eye, frob_owned, inv, min_singular_value, solve_structured,
    spectral_norm, Definiteness, LinearConstraintSystem, Mat, StructuredSolution, Symmetry,
};
use crate::tol::{scale, FEAS_TOL, NULL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    Reciprocal,
    IOHamiltonian,
    SignedTimeReversible,
    TimeReversible,
    CycloLossless,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::Reciprocal => "reciprocal",
            CertificateKind::IOHamiltonian => "iohamiltonian",
            CertificateKind::SignedTimeReversible => "signed-reversible",
            CertificateKind::TimeReversible => "reversible",
            CertificateKind::CycloLossless => "lossless",
        }
    }
}

/// A named structure matrix together with the residuals proving it.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub matrix: Mat,
    pub algebraic_residual: f64,
    pub frequency_residual: f64,
    /// Definiteness classification for the symmetric kinds.
    pub definiteness: Option<Definiteness>,
}

/// Result of a certificate search.
#[derive(Debug, Clone)]
pub enum CertifyOutcome {
    Certified(Certificate),
    Infeasible { residual: f64, reason: String },
    /// Non-minimal system with a solution family; no canonical member is
    /// chosen because uniqueness requires minimality.
    NonUnique { family_dim: usize },
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_certificate(self) -> Option<Certificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("system is not minimal")]
    NotMinimal,
    #[error("solution exists but is not an involution (flags non-minimality)")]
    NotInvolution,
    #[error("certificates must be of distinct composable kinds")]
    KindClash,
    #[error("composed certificate fails its defining equations")]
    ThirdInvalid,
    #[error("certificates are inconsistent with the system: {0}")]
    CompatibilityFailed(String),
    #[error("A must be Hurwitz for input-output identification")]
    NotHurwitz,
    #[error("system must be controllable for input-output identification")]
    NotControllable,
    #[error(transparent)]
    Lti(#[from] lti::LtiError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

pub type Result<T> = std::result::Result<T, CertifyError>;

// ---------------------------------------------------------------------------
// algebraic verification

/// Relative residual of the defining equations of `kind` for matrix `m`.
pub fn algebraic_residual(sys: &StateSpaceSystem, kind: CertificateKind, m: &Mat) -> f64 {
    let a = &sys.a;
    let b = &sys.b;
    let c = &sys.c;
    let d = &sys.d;
    let sg = sys.sigma_mat();
    let rel = |num: f64, den: f64| num / scale(den);
    let mut worst: f64 = 0.0;
    match kind {
        CertificateKind::Reciprocal => {
            worst = worst.max(rel(
                frob_owned(&(a.t().dot(m) - m.dot(a))),
                frob_owned(a) * frob_owned(m),
            ));
            worst = worst.max(rel(
                frob_owned(&(b.t().dot(m) - sg.dot(c))),
                frob_owned(b) * frob_owned(m) + frob_owned(c),
            ));
            worst = worst.max(rel(
                frob_owned(&(sg.dot(d) - d.t().dot(&sg))),
                frob_owned(d),
            ));
            worst = worst.max(rel(asymmetry(m), frob_owned(m)));
        }
        CertificateKind::IOHamiltonian => {
            worst = worst.max(rel(
                frob_owned(&(a.t().dot(m) + m.dot(a))),
                frob_owned(a) * frob_owned(m),
            ));
            worst = worst.max(rel(
                frob_owned(&(b.t().dot(m) - sg.dot(c))),
                frob_owned(b) * frob_owned(m) + frob_owned(c),
            ));
            worst = worst.max(rel(
                frob_owned(&(sg.dot(d) - d.t().dot(&sg))),
                frob_owned(d),
            ));
            worst = worst.max(rel(frob_owned(&(m + &m.t())), frob_owned(m)));
        }
        CertificateKind::SignedTimeReversible | CertificateKind::TimeReversible => {
            let bsign = if kind == CertificateKind::SignedTimeReversible {
                1.0
            } else {
                -1.0
            };
            worst = worst.max(rel(
                frob_owned(&(m.dot(a) + a.dot(m))),
                frob_owned(a) * frob_owned(m),
            ));
            worst = worst.max(rel(
                frob_owned(&(m.dot(b) - &(b * bsign))),
                frob_owned(b) * frob_owned(m),
            ));
            worst = worst.max(rel(
                frob_owned(&(c.dot(m) - c)),
                frob_owned(c) * frob_owned(m),
            ));
            let n = m.nrows();
            worst = worst.max(rel(frob_owned(&(m.dot(m) - eye(n))), frob_owned(m)));
        }
        CertificateKind::CycloLossless => {
            worst = worst.max(rel(
                frob_owned(&(a.t().dot(m) + m.dot(a))),
                frob_owned(a) * frob_owned(m),
            ));
            worst = worst.max(rel(
                frob_owned(&(b.t().dot(m) - c)),
                frob_owned(b) * frob_owned(m) + frob_owned(c),
            ));
            worst = worst.max(rel(frob_owned(&(d + &d.t())), frob_owned(d)));
            worst = worst.max(rel(asymmetry(m), frob_owned(m)));
        }
    }
    worst
}

/// Frequency-domain residual of the transfer identity defining `kind`,
/// maximized over the fixed sample set.
pub fn frequency_residual(sys: &StateSpaceSystem, kind: CertificateKind) -> Result<f64> {
    let sg = sys.sigma_mat().mapv(|x| Complex64::new(x, 0.0));
    let mut worst: f64 = 0.0;
    for s in lti::frequency_samples(&sys.a, &sys.a)? {
        let k = sys.transfer(s)?;
        let kn = sys.transfer(-s)?;
        let diff = match kind {
            CertificateKind::Reciprocal => sg.dot(&k) - k.t().dot(&sg),
            CertificateKind::IOHamiltonian => sg.dot(&k) - kn.t().dot(&sg),
            CertificateKind::SignedTimeReversible => &k + &kn,
            CertificateKind::TimeReversible => &k - &kn,
            CertificateKind::CycloLossless => &k + &kn.t(),
        };
        let num = diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let den = scale(k.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
        worst = worst.max(num / den);
    }
    Ok(worst)
}

/// Full re-verification of a claimed certificate: shape constraints,
/// invertibility, and equation residuals. Used to reject corrupted inputs.
pub fn verify_certificate(sys: &StateSpaceSystem, kind: CertificateKind, m: &Mat) -> bool {
    let n = sys.state_dim();
    if m.dim() != (n, n) {
        return false;
    }
    if n > 0 && min_singular_value(m) <= 1e-8 * spectral_norm(m).max(NULL_TOL) {
        return false;
    }
    algebraic_residual(sys, kind, m) <= FEAS_TOL
}

// ---------------------------------------------------------------------------
// finders

fn feedthrough_symmetry_residual(sys: &StateSpaceSystem) -> f64 {
    let sg = sys.sigma_mat();
    frob_owned(&(sg.dot(&sys.d) - sys.d.t().dot(&sg))) / scale(frob_owned(&sys.d))
}

fn finish_certificate(
    sys: &StateSpaceSystem,
    kind: CertificateKind,
    mut m: Mat,
) -> Result<CertifyOutcome> {
    // remove floating-point drift before residual evaluation
    match kind {
        CertificateKind::Reciprocal | CertificateKind::CycloLossless => {
            m = matcore::sym_part(&m);
        }
        CertificateKind::IOHamiltonian => m = matcore::skew_part(&m),
        _ => {}
    }
    let n = sys.state_dim();
    if n > 0 {
        let smin = min_singular_value(&m);
        let smax = spectral_norm(&m);
        if smin <= NULL_TOL * smax.max(1.0) {
            return Ok(CertifyOutcome::Infeasible {
                residual: smin,
                reason: "unique solution is singular; no invertible certificate exists".into(),
            });
        }
    }
    let alg = algebraic_residual(sys, kind, &m);
    if alg > FEAS_TOL {
        return Ok(CertifyOutcome::Infeasible {
            residual: alg,
            reason: "solution fails re-verification of the defining equations".into(),
        });
    }
    let freq = frequency_residual(sys, kind)?;
    let defin = match kind {
        CertificateKind::Reciprocal | CertificateKind::CycloLossless => {
            Some(definiteness(&m)?)
        }
        _ => None,
    };
    Ok(CertifyOutcome::Certified(Certificate {
        kind,
        matrix: m,
        algebraic_residual: alg,
        frequency_residual: freq,
        definiteness: defin,
    }))
}

fn solve_certificate(
    sys: &StateSpaceSystem,
    kind: CertificateKind,
    lcs: &LinearConstraintSystem,
) -> Result<CertifyOutcome> {
    match solve_structured(lcs)? {
        StructuredSolution::Infeasible { residual } => Ok(CertifyOutcome::Infeasible {
            residual,
            reason: "defining equations are inconsistent".into(),
        }),
        StructuredSolution::Family { basis, .. } => Ok(CertifyOutcome::NonUnique {
            family_dim: basis.len(),
        }),
        StructuredSolution::Unique(m) => finish_certificate(sys, kind, m),
    }
}

/// Search for the reciprocity metric G: A^T G = G A, B^T G = sigma C,
/// sigma D = D^T sigma, G = G^T invertible.
pub fn find_reciprocal_g(sys: &StateSpaceSystem, require_minimal: bool) -> Result<CertifyOutcome> {
    if require_minimal && !sys.minimality().minimal() {
        return Err(CertifyError::NotMinimal);
    }
    let dres = feedthrough_symmetry_residual(sys);
    if dres > FEAS_TOL {
        return Ok(CertifyOutcome::Infeasible {
            residual: dres,
            reason: "feedthrough violates sigma D = D^T sigma".into(),
        });
    }
    let n = sys.state_dim();
    if n == 0 {
        return finish_certificate(sys, CertificateKind::Reciprocal, Mat::zeros((0, 0)));
    }
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::Symmetric);
    let at = sys.a.t().to_owned();
    let id = eye(n);
    lcs.add_equation(
        &[(at.view(), id.view(), 1.0), (id.view(), sys.a.view(), -1.0)],
        &Mat::zeros((n, n)),
    );
    let bt = sys.b.t().to_owned();
    lcs.add_equation(
        &[(bt.view(), id.view(), 1.0)],
        &sys.sigma_mat().dot(&sys.c),
    );
    solve_certificate(sys, CertificateKind::Reciprocal, &lcs)
}

/// Search for the state-space symplectic form Omega: A^T Omega + Omega A = 0,
/// B^T Omega = sigma C, Omega = -Omega^T invertible (n must be even).
pub fn find_io_hamiltonian_omega(
    sys: &StateSpaceSystem,
    require_minimal: bool,
) -> Result<CertifyOutcome> {
    if require_minimal && !sys.minimality().minimal() {
        return Err(CertifyError::NotMinimal);
    }
    let dres = feedthrough_symmetry_residual(sys);
    if dres > FEAS_TOL {
        return Ok(CertifyOutcome::Infeasible {
            residual: dres,
            reason: "feedthrough violates sigma D = D^T sigma".into(),
        });
    }
    let n = sys.state_dim();
    if n % 2 == 1 {
        return Ok(CertifyOutcome::Infeasible {
            residual: f64::INFINITY,
            reason: "odd state dimension admits no invertible skew form".into(),
        });
    }
    if n == 0 {
        return finish_certificate(sys, CertificateKind::IOHamiltonian, Mat::zeros((0, 0)));
    }
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::SkewSymmetric);
    let at = sys.a.t().to_owned();
    let id = eye(n);
    lcs.add_equation(
        &[(at.view(), id.view(), 1.0), (id.view(), sys.a.view(), 1.0)],
        &Mat::zeros((n, n)),
    );
    let bt = sys.b.t().to_owned();
    lcs.add_equation(
        &[(bt.view(), id.view(), 1.0)],
        &sys.sigma_mat().dot(&sys.c),
    );
    solve_certificate(sys, CertificateKind::IOHamiltonian, &lcs)
}

fn find_reversal(sys: &StateSpaceSystem, kind: CertificateKind) -> Result<CertifyOutcome> {
    if !sys.minimality().minimal() {
        return Err(CertifyError::NotMinimal);
    }
    let bsign = if kind == CertificateKind::SignedTimeReversible {
        1.0
    } else {
        -1.0
    };
    let n = sys.state_dim();
    if n == 0 {
        return finish_certificate(sys, kind, Mat::zeros((0, 0)));
    }
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::None);
    let id = eye(n);
    // R A + A R = 0
    lcs.add_equation(
        &[(id.view(), sys.a.view(), 1.0), (sys.a.view(), id.view(), 1.0)],
        &Mat::zeros((n, n)),
    );
    // R B = (+/-) B
    lcs.add_equation(&[(id.view(), sys.b.view(), 1.0)], &(&sys.b * bsign));
    // C R = C
    lcs.add_equation(&[(sys.c.view(), id.view(), 1.0)], &sys.c.clone());
    match solve_structured(&lcs)? {
        StructuredSolution::Infeasible { residual } => Ok(CertifyOutcome::Infeasible {
            residual,
            reason: "defining equations are inconsistent".into(),
        }),
        StructuredSolution::Family { basis, .. } => Ok(CertifyOutcome::NonUnique {
            family_dim: basis.len(),
        }),
        StructuredSolution::Unique(r) => {
            let inv_res = frob_owned(&(r.dot(&r) - eye(n))) / scale(frob_owned(&r));
            if inv_res > FEAS_TOL {
                return Err(CertifyError::NotInvolution);
            }
            finish_certificate(sys, kind, r)
        }
    }
}

/// Search for the signed time-reversal map R: RA = -AR, RB = B, C = CR.
pub fn find_signed_time_reversal(sys: &StateSpaceSystem) -> Result<CertifyOutcome> {
    find_reversal(sys, CertificateKind::SignedTimeReversible)
}

/// Search for the plain time-reversal map R: RA = -AR, RB = -B, C = CR.
pub fn find_time_reversal(sys: &StateSpaceSystem) -> Result<CertifyOutcome> {
    find_reversal(sys, CertificateKind::TimeReversible)
}

/// Search for the lossless storage matrix Q: A^T Q + Q A = 0, B^T Q = C,
/// D + D^T = 0, Q = Q^T invertible.
pub fn find_cyclo_lossless_q(sys: &StateSpaceSystem) -> Result<CertifyOutcome> {
    if !sys.minimality().minimal() {
        return Err(CertifyError::NotMinimal);
    }
    let dres = frob_owned(&(&sys.d + &sys.d.t())) / scale(frob_owned(&sys.d));
    if dres > FEAS_TOL {
        return Ok(CertifyOutcome::Infeasible {
            residual: dres,
            reason: "feedthrough violates D + D^T = 0".into(),
        });
    }
    let n = sys.state_dim();
    if n == 0 {
        return finish_certificate(sys, CertificateKind::CycloLossless, Mat::zeros((0, 0)));
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
    solve_certificate(sys, CertificateKind::CycloLossless, &lcs)
}

// ---------------------------------------------------------------------------
// composition

fn composable(kind: CertificateKind) -> bool {
    matches!(
        kind,
        CertificateKind::IOHamiltonian | CertificateKind::Reciprocal | CertificateKind::TimeReversible
    )
}

/// Given valid certificates of two distinct kinds among the symplectic form,
/// the pseudo-inner product, and the time-reversal map, produce the third
/// and verify both its defining equations and the pairwise identities
/// (G Omega^{-1} G = Omega, R^T G R = -G, R^T Omega R = -Omega).
pub fn two_of_three(
    sys: &StateSpaceSystem,
    first: &Certificate,
    second: &Certificate,
) -> Result<Certificate> {
    if first.kind == second.kind || !composable(first.kind) || !composable(second.kind) {
        return Err(CertifyError::KindClash);
    }
    if !verify_certificate(sys, first.kind, &first.matrix)
        || !verify_certificate(sys, second.kind, &second.matrix)
    {
        return Err(CertifyError::ThirdInvalid);
    }
    let pick = |kind: CertificateKind| -> Option<&Mat> {
        if first.kind == kind {
            Some(&first.matrix)
        } else if second.kind == kind {
            Some(&second.matrix)
        } else {
            None
        }
    };
    let omega = pick(CertificateKind::IOHamiltonian);
    let g = pick(CertificateKind::Reciprocal);
    let r = pick(CertificateKind::TimeReversible);
    let (third_kind, third, identity_residual) = match (omega, g, r) {
        (Some(om), Some(g), None) => {
            let om_inv = inv(om)?;
            let third = om_inv.dot(g);
            let ident = g.dot(&om_inv).dot(g) - om;
            (
                CertificateKind::TimeReversible,
                third,
                frob_owned(&ident) / scale(frob_owned(om)),
            )
        }
        (None, Some(g), Some(r)) => {
            let third = g.dot(r);
            let ident = r.t().dot(g).dot(r) + g;
            (
                CertificateKind::IOHamiltonian,
                third,
                frob_owned(&ident) / scale(frob_owned(g)),
            )
        }
        (Some(om), None, Some(r)) => {
            let third = om.dot(r);
            let ident = r.t().dot(om).dot(r) + om;
            (
                CertificateKind::Reciprocal,
                third,
                frob_owned(&ident) / scale(frob_owned(om)),
            )
        }
        _ => return Err(CertifyError::KindClash),
    };
    if identity_residual > FEAS_TOL {
        return Err(CertifyError::ThirdInvalid);
    }
    match finish_certificate(sys, third_kind, third)? {
        CertifyOutcome::Certified(c) => Ok(c),
        _ => Err(CertifyError::ThirdInvalid),
    }
}

/// Output of the lossless-plus-reciprocal composition.
#[derive(Debug, Clone)]
pub struct LosslessReciprocalComposition {
    pub reversal: Certificate,
    /// The feedthrough vanishes.
    pub d_zero: bool,
    /// Q = G Q^{-1} G holds.
    pub compatible: bool,
}

/// Compose a lossless storage matrix Q and a reciprocity metric G into the
/// signed time-reversal map R = Q^{-1} G, checking D = 0 and the
/// compatibility fixed point Q = G Q^{-1} G.
pub fn lossless_reciprocal_composition(
    sys: &StateSpaceSystem,
    q_cert: &Certificate,
    g_cert: &Certificate,
) -> Result<LosslessReciprocalComposition> {
    if q_cert.kind != CertificateKind::CycloLossless || g_cert.kind != CertificateKind::Reciprocal {
        return Err(CertifyError::KindClash);
    }
    if !verify_certificate(sys, q_cert.kind, &q_cert.matrix)
        || !verify_certificate(sys, g_cert.kind, &g_cert.matrix)
    {
        return Err(CertifyError::CompatibilityFailed(
            "certificates fail re-verification against the system".into(),
        ));
    }
    let q = &q_cert.matrix;
    let g = &g_cert.matrix;
    let q_inv = inv(q)?;
    let r = q_inv.dot(g);
    let compat_res =
        frob_owned(&(q - &g.dot(&q_inv).dot(g))) / scale(frob_owned(q));
    let compatible = compat_res <= FEAS_TOL;
    let d_zero = frob_owned(&sys.d) <= FEAS_TOL;
    let reversal = match finish_certificate(sys, CertificateKind::SignedTimeReversible, r)? {
        CertifyOutcome::Certified(c) => c,
        _ => {
            return Err(CertifyError::CompatibilityFailed(
                "composed map fails the signed reversal equations".into(),
            ))
        }
    };
    Ok(LosslessReciprocalComposition {
        reversal,
        d_zero,
        compatible,
    })
}

// ---------------------------------------------------------------------------
// input-output identification of G

/// Estimate the reciprocity metric from simulated input-output data.
///
/// For n(n+1)/2 steering experiments the system is driven from rest over
/// [-T, 0] by minimum-energy inputs, released with u = 0, and the pairing
/// integral of the mirrored past input against the future output is
/// accumulated by the trapezoid rule; G is recovered from the resulting
/// quadratic-form interpolation.
pub fn estimate_g_from_io(sys: &StateSpaceSystem, horizon: f64, h: f64) -> Result<Mat> {
    if !matcore::is_hurwitz(&sys.a)? {
        return Err(CertifyError::NotHurwitz);
    }
    let minimality = sys.minimality();
    if !minimality.controllable {
        return Err(CertifyError::NotControllable);
    }
    let n = sys.state_dim();
    let gram = matcore::solve_lyapunov(&sys.a, &sys.b.dot(&sys.b.t()))?;
    let gram_inv = inv(&gram)?;

    let mut targets: Vec<Array1<f64>> = Vec::new();
    for i in 0..n {
        let mut e = Array1::zeros(n);
        e[i] = 1.0;
        targets.push(e);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e = Array1::<f64>::zeros(n);
            e[i] = 1.0;
            e[j] = 1.0;
            targets.push(e);
        }
    }

    let steps = (horizon / h).round() as usize + 1;
    let step_back = matcore::matrix_exponential(&sys.a.t().to_owned(), -h);
    let mut lcs = LinearConstraintSystem::new(n, n, Symmetry::Symmetric);
    for target in &targets {
        // minimum-energy steering input u(t) = B^T e^{-A^T t} C_gram^{-1} x*
        // sampled on [-T, 0]
        let v = gram_inv.dot(target);
        let mut w = matcore::matrix_exponential(&sys.a.t().to_owned(), horizon).dot(&v);
        let mut inputs = Mat::zeros((steps, sys.io_dim()));
        for k in 0..steps {
            inputs.row_mut(k).assign(&sys.b.t().dot(&w));
            w = step_back.dot(&w);
        }
        let traj = sys.simulate(&inputs, h, -horizon, &Array1::zeros(n))?;
        let x0 = traj.states.row(steps - 1).to_owned();
        // future output under u = 0
        let y = sys.free_response(&x0, h, steps)?;
        let sg = &sys.sigma;
        let integral = traj.trapezoid(|k| {
            // u(-t_k) is the past input mirrored through 0
            let u = traj.inputs.row(steps - 1 - k);
            let yk = y.row(k);
            u.iter()
                .zip(sg.iter())
                .zip(yk.iter())
                .map(|((u, s), y)| u * s * y)
                .sum()
        });
        // x0^T G x0 = integral
        let mut coeffs = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                coeffs[i * n + j] = x0[i] * x0[j];
            }
        }
        lcs.add_row(coeffs, integral);
    }
    match solve_structured(&lcs)? {
        StructuredSolution::Unique(g) => Ok(g),
        StructuredSolution::Family { particular, .. } => Ok(particular),
        StructuredSolution::Infeasible { .. } => Err(CertifyError::CompatibilityFailed(
            "quadratic-form interpolation is inconsistent".into(),
        )),
    }
}
