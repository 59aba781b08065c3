//! Canonical-form constructors.
//!
//! Every constructor returns an explicit change of coordinates together with
//! the structured blocks, and re-verifies that the input-output behavior is
//! preserved (transfer matrices compared on the fixed frequency sample set).

use ndarray::s;
use thiserror::Error;

use crate::certify::{self, Certificate, CertificateKind};
use crate::lti::{self, StateSpaceSystem};
use crate::matcore::{
    self, asymmetry, eye, frob_owned, inv, nullspace, psd_sqrt, spectral_norm, sym_part, Mat,
};
use crate::passivity::StorageCertificate;
use crate::tol::{scale, FEAS_TOL};

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("-GA is not symmetric; the metric certificate is invalid")]
    AsymmetricP,
    #[error("Q and G are not compatible (Q != G Q^-1 G)")]
    NotCompatible,
    #[error("only identity signature is supported for this form")]
    SignatureNotIdentity,
    #[error("dissipation blocks have the wrong definiteness")]
    BlockDefinitenessFailed,
    #[error("system is not a relaxation system")]
    NotRelaxation,
    #[error("feedthrough must be zero")]
    FeedthroughNonzero,
    #[error("+1/-1 eigenspaces of the involution have unequal dimensions")]
    EigenspaceImbalance,
    #[error("R is not an anti-symplectomorphism for Omega (R^T Omega R != -Omega)")]
    NotAntiSymplectic,
    #[error("constructed form deviates from the source transfer matrix by {0:.3e}")]
    TransferMismatch(f64),
    #[error(transparent)]
    Certify(#[from] certify::CertifyError),
    #[error(transparent)]
    Lti(#[from] lti::LtiError),
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

pub type Result<T> = std::result::Result<T, FormsError>;

pub const TRANSFER_TOL: f64 = 1e-8;

fn check_transfer(original: &StateSpaceSystem, rebuilt: &StateSpaceSystem) -> Result<()> {
    let dev = original.transfer_deviation(rebuilt)?;
    if dev > TRANSFER_TOL {
        return Err(FormsError::TransferMismatch(dev));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pseudo-gradient

/// G x' = -P x + C^T sigma u, y = C x + D u.
#[derive(Debug, Clone)]
pub struct PseudoGradientForm {
    pub g: Mat,
    /// P = -GA, symmetric (the potential is x^T P x / 2).
    pub p: Mat,
    pub c: Mat,
    pub d: Mat,
    pub sigma: ndarray::Array1<f64>,
}

impl PseudoGradientForm {
    /// Reassemble the explicit state-space system.
    pub fn assemble(&self) -> Result<StateSpaceSystem> {
        let g_inv = inv(&self.g)?;
        let sg = Mat::from_diag(&self.sigma);
        Ok(StateSpaceSystem::new(
            -g_inv.dot(&self.p),
            g_inv.dot(&self.c.t()).dot(&sg),
            self.c.clone(),
            self.d.clone(),
            self.sigma.clone(),
        )?)
    }
}

pub fn to_pseudo_gradient(
    sys: &StateSpaceSystem,
    g_cert: &Certificate,
) -> Result<PseudoGradientForm> {
    if g_cert.kind != CertificateKind::Reciprocal
        || !certify::verify_certificate(sys, g_cert.kind, &g_cert.matrix)
    {
        return Err(FormsError::AsymmetricP);
    }
    let p = -(g_cert.matrix.dot(&sys.a));
    if asymmetry(&p) > FEAS_TOL * scale(frob_owned(&p)) {
        return Err(FormsError::AsymmetricP);
    }
    let form = PseudoGradientForm {
        g: g_cert.matrix.clone(),
        p: sym_part(&p),
        c: sys.c.clone(),
        d: sys.d.clone(),
        sigma: sys.sigma.clone(),
    };
    check_transfer(sys, &form.assemble()?)?;
    Ok(form)
}

// ---------------------------------------------------------------------------
// compatible coordinates

/// Change of basis splitting the state by the +1/-1 eigenspaces of Q^{-1}G,
/// in which Q = diag(Q1, Q2) and G = diag(Q1, -Q2).
#[derive(Debug, Clone)]
pub struct CompatibleCoordinates {
    pub t: Mat,
    pub q1: Mat,
    pub q2: Mat,
}

/// Flip column signs so the dominant entry is positive (makes eigenspace
/// bases deterministic up to LAPACK tie behavior).
fn normalize_columns(mut m: Mat) -> Mat {
    for mut col in m.columns_mut() {
        let mut idx = 0;
        let mut best = 0.0f64;
        for (i, &v) in col.iter().enumerate() {
            if v.abs() > best {
                best = v.abs();
                idx = i;
            }
        }
        if best > 0.0 && col[idx] < 0.0 {
            col.mapv_inplace(|x| -x);
        }
    }
    m
}

fn eigenspace(v: &Mat, lambda: f64) -> Mat {
    let n = v.nrows();
    normalize_columns(nullspace(&(v - &(eye(n) * lambda))))
}

pub fn compatible_coordinates(g: &Mat, q: &Mat) -> Result<CompatibleCoordinates> {
    let n = g.nrows();
    if q.dim() != (n, n) || g.ncols() != n {
        return Err(FormsError::NotCompatible);
    }
    let q_inv = inv(q).map_err(|_| FormsError::NotCompatible)?;
    let compat = frob_owned(&(q - &g.dot(&q_inv).dot(g)));
    if compat > FEAS_TOL * scale(frob_owned(q)) {
        return Err(FormsError::NotCompatible);
    }
    let v = q_inv.dot(g);
    let plus = eigenspace(&v, 1.0);
    let minus = eigenspace(&v, -1.0);
    if plus.ncols() + minus.ncols() != n {
        return Err(FormsError::NotCompatible);
    }
    let mut t = Mat::zeros((n, n));
    t.slice_mut(s![.., 0..plus.ncols()]).assign(&plus);
    t.slice_mut(s![.., plus.ncols()..n]).assign(&minus);
    let k = plus.ncols();
    let qt = t.t().dot(q).dot(&t);
    let gt = t.t().dot(g).dot(&t);
    // cross blocks vanish because the eigenspaces are Q-orthogonal
    let off = frob_owned(&qt.slice(s![0..k, k..n]).to_owned())
        + frob_owned(&gt.slice(s![0..k, k..n]).to_owned());
    if off > 1e-9 * scale(frob_owned(&qt)) {
        return Err(FormsError::NotCompatible);
    }
    Ok(CompatibleCoordinates {
        t,
        q1: sym_part(&qt.slice(s![0..k, 0..k]).to_owned()),
        q2: sym_part(&qt.slice(s![k..n, k..n]).to_owned()),
    })
}

// ---------------------------------------------------------------------------
// port-Hamiltonian

/// Two-domain port form in z = (Q1 x1, Q2 x2) coordinates:
/// z1' = -P1 Q1^{-1} z1 - Pc Q2^{-1} z2 + C1^T u
/// z2' =  Pc^T Q1^{-1} z1 + P2 Q2^{-1} z2 - C2^T u
/// y   =  C1 Q1^{-1} z1 + C2 Q2^{-1} z2 + D u
/// with Hamiltonian (z1^T Q1^{-1} z1 + z2^T Q2^{-1} z2)/2.
#[derive(Debug, Clone)]
pub struct PortHamiltonianForm {
    /// x = T z_x state change into the split x-coordinates (before scaling by Q).
    pub t: Mat,
    pub q1: Mat,
    pub q2: Mat,
    /// Dissipation blocks: P1 >= 0, P2 <= 0 required.
    pub p1: Mat,
    pub p2: Mat,
    /// Coupling block between the two domains.
    pub p_c: Mat,
    pub c1: Mat,
    pub c2: Mat,
    pub d: Mat,
    /// Assembled dynamics in z-coordinates.
    pub assembled: StateSpaceSystem,
}

impl PortHamiltonianForm {
    /// Hamiltonian value at a z-state.
    pub fn hamiltonian(&self, z: &ndarray::Array1<f64>) -> Result<f64> {
        let k = self.q1.nrows();
        let z1 = z.slice(s![0..k]).to_owned();
        let z2 = z.slice(s![k..]).to_owned();
        let h1 = if k > 0 {
            z1.dot(&inv(&self.q1)?.dot(&z1))
        } else {
            0.0
        };
        let h2 = if self.q2.nrows() > 0 {
            z2.dot(&inv(&self.q2)?.dot(&z2))
        } else {
            0.0
        };
        Ok(0.5 * (h1 + h2))
    }
}

fn assemble_port_form(
    sys: &StateSpaceSystem,
    coords: CompatibleCoordinates,
    p_full: &Mat,
    c_full: &Mat,
) -> Result<PortHamiltonianForm> {
    let n = sys.state_dim();
    let k = coords.q1.nrows();
    let t = &coords.t;
    let pt = t.t().dot(p_full).dot(t);
    let ct = c_full.dot(t);
    let p1 = sym_part(&pt.slice(s![0..k, 0..k]).to_owned());
    let p2 = sym_part(&pt.slice(s![k..n, k..n]).to_owned());
    let p_c = pt.slice(s![0..k, k..n]).to_owned();
    let c1 = ct.slice(s![.., 0..k]).to_owned();
    let c2 = ct.slice(s![.., k..n]).to_owned();
    // passivity structure: P1 PSD, P2 NSD
    let sc = scale(spectral_norm(&pt));
    let p1_ok = k == 0
        || matcore::symmetric_eig(&p1)?.0.iter().all(|&v| v >= -FEAS_TOL * sc);
    let p2_ok = n == k
        || matcore::symmetric_eig(&p2)?.0.iter().all(|&v| v <= FEAS_TOL * sc);
    if !p1_ok || !p2_ok {
        return Err(FormsError::BlockDefinitenessFailed);
    }
    let q1_inv = inv(&coords.q1)?;
    let q2_inv = if n > k {
        inv(&coords.q2)?
    } else {
        Mat::zeros((0, 0))
    };
    let m = sys.io_dim();
    let mut a_z = Mat::zeros((n, n));
    a_z.slice_mut(s![0..k, 0..k]).assign(&(-p1.dot(&q1_inv)));
    a_z.slice_mut(s![0..k, k..n]).assign(&(-p_c.dot(&q2_inv)));
    a_z.slice_mut(s![k..n, 0..k]).assign(&p_c.t().dot(&q1_inv));
    a_z.slice_mut(s![k..n, k..n]).assign(&p2.dot(&q2_inv));
    let mut b_z = Mat::zeros((n, m));
    b_z.slice_mut(s![0..k, ..]).assign(&c1.t());
    b_z.slice_mut(s![k..n, ..]).assign(&(-&c2.t().to_owned()));
    let mut c_z = Mat::zeros((m, n));
    c_z.slice_mut(s![.., 0..k]).assign(&c1.dot(&q1_inv));
    c_z.slice_mut(s![.., k..n]).assign(&c2.dot(&q2_inv));
    let assembled =
        StateSpaceSystem::new(a_z, b_z, c_z, sys.d.clone(), sys.sigma.clone())?;
    check_transfer(sys, &assembled)?;
    Ok(PortHamiltonianForm {
        t: coords.t,
        q1: coords.q1,
        q2: coords.q2,
        p1,
        p2,
        p_c,
        c1,
        c2,
        d: sys.d.clone(),
        assembled,
    })
}

pub fn to_port_hamiltonian(
    sys: &StateSpaceSystem,
    g_cert: &Certificate,
    storage: &StorageCertificate,
) -> Result<PortHamiltonianForm> {
    if !sys.sigma_is_identity() {
        return Err(FormsError::SignatureNotIdentity);
    }
    let gradient = to_pseudo_gradient(sys, g_cert)?;
    let coords = compatible_coordinates(&g_cert.matrix, &storage.q)?;
    assemble_port_form(sys, coords, &gradient.p, &sys.c)
}

/// Single-domain port form of a relaxation system: z = Gx, with
/// z' = -P G^{-1} z + C^T u and y = C G^{-1} z + D u.
pub fn relaxation_port_form(
    sys: &StateSpaceSystem,
    g_cert: &Certificate,
) -> Result<PortHamiltonianForm> {
    if !sys.sigma_is_identity() {
        return Err(FormsError::SignatureNotIdentity);
    }
    if g_cert.kind != CertificateKind::Reciprocal
        || matcore::definiteness(&g_cert.matrix)? != matcore::Definiteness::PosDef
    {
        return Err(FormsError::NotRelaxation);
    }
    let gradient = to_pseudo_gradient(sys, g_cert)?;
    let n = sys.state_dim();
    let coords = CompatibleCoordinates {
        t: eye(n),
        q1: g_cert.matrix.clone(),
        q2: Mat::zeros((0, 0)),
    };
    assemble_port_form(sys, coords, &gradient.p, &sys.c)
}

// ---------------------------------------------------------------------------
// derivative-output port form for skew certificates

/// Port realization obtained by replacing the output with its derivative:
/// (A, -J C^T, C J Q, -C J C^T) with J = Omega^{-1} and Q = Omega A.
#[derive(Debug, Clone)]
pub struct DerivativeOutputForm {
    pub j: Mat,
    /// Q = Omega A, symmetric; the energy is x^T Q x / 2.
    pub q: Mat,
    pub realization: StateSpaceSystem,
}

pub fn io_ham_to_port_ham(
    sys: &StateSpaceSystem,
    omega_cert: &Certificate,
) -> Result<DerivativeOutputForm> {
    if frob_owned(&sys.d) > FEAS_TOL * scale(frob_owned(&sys.d)) {
        return Err(FormsError::FeedthroughNonzero);
    }
    if !sys.sigma_is_identity() {
        return Err(FormsError::SignatureNotIdentity);
    }
    if omega_cert.kind != CertificateKind::IOHamiltonian
        || !certify::verify_certificate(sys, omega_cert.kind, &omega_cert.matrix)
    {
        return Err(FormsError::NotAntiSymplectic);
    }
    let omega = &omega_cert.matrix;
    let j = inv(omega)?;
    let q = sym_part(&omega.dot(&sys.a));
    // skew sandwich identities: QJQ and CJC^T are skew, so the quadratic
    // forms x^T QJQ x and u^T CJC^T u vanish identically
    let qjq = q.dot(&j).dot(&q);
    let cjc = sys.c.dot(&j).dot(&sys.c.t());
    if asymmetry(&(-&qjq)) > FEAS_TOL * scale(frob_owned(&qjq)) * 2.0
        && frob_owned(&sym_part(&qjq)) > FEAS_TOL * scale(frob_owned(&qjq))
    {
        return Err(FormsError::NotAntiSymplectic);
    }
    if frob_owned(&sym_part(&cjc)) > FEAS_TOL * scale(frob_owned(&cjc)) {
        return Err(FormsError::NotAntiSymplectic);
    }
    let b_new = -(j.dot(&sys.c.t()));
    let c_new = sys.c.dot(&j).dot(&q);
    let d_new = -cjc;
    let realization =
        StateSpaceSystem::new(sys.a.clone(), b_new, c_new, d_new, sys.sigma.clone())?;
    Ok(DerivativeOutputForm { j, q, realization })
}

// ---------------------------------------------------------------------------
// symplectic normal forms

/// Blocks of a system in canonical split coordinates:
/// A = [[F, -P], [-S, -F^T]], B = [0; H^T], C = [H, 0].
#[derive(Debug, Clone)]
pub struct FactorBlocks {
    pub f: Mat,
    pub p: Mat,
    pub s: Mat,
    pub h: Mat,
}

impl FactorBlocks {
    pub fn assemble(&self) -> Result<StateSpaceSystem> {
        let k = self.f.nrows();
        let m = self.h.nrows();
        let mut a = Mat::zeros((2 * k, 2 * k));
        a.slice_mut(s![0..k, 0..k]).assign(&self.f);
        a.slice_mut(s![0..k, k..2 * k]).assign(&(-&self.p));
        a.slice_mut(s![k..2 * k, 0..k]).assign(&(-&self.s));
        a.slice_mut(s![k..2 * k, k..2 * k])
            .assign(&(-&self.f.t().to_owned()));
        let mut b = Mat::zeros((2 * k, m));
        b.slice_mut(s![k..2 * k, ..]).assign(&self.h.t());
        let mut c = Mat::zeros((m, 2 * k));
        c.slice_mut(s![.., 0..k]).assign(&self.h);
        Ok(StateSpaceSystem::new(
            a,
            b,
            c,
            Mat::zeros((m, m)),
            ndarray::Array1::ones(m),
        )?)
    }
}

#[derive(Debug, Clone)]
pub struct NonnegNormalForm {
    pub t: Mat,
    pub blocks: FactorBlocks,
}

#[derive(Debug, Clone)]
pub struct TimeReversibleNormalForm {
    pub t: Mat,
    pub p: Mat,
    pub q: Mat,
    pub b: Mat,
}

/// Basis in which the skew form is canonical [[0,-I],[I,0]] and the
/// involution `v` is diag(I,-I): +1/-1 eigenspaces of `v` paired by the
/// symplectic pairing.
fn symplectic_split(omega: &Mat, v: &Mat) -> Result<(Mat, usize)> {
    let n = omega.nrows();
    let plus = eigenspace(v, 1.0);
    let minus = eigenspace(v, -1.0);
    let k = plus.ncols();
    if k * 2 != n || minus.ncols() != k {
        return Err(FormsError::EigenspaceImbalance);
    }
    // pairing between the eigenspaces; T_p = -minus * M^{-1} makes
    // T_q^T Omega T_p = -I
    let m_pair = plus.t().dot(omega).dot(&minus);
    let t_p = -(minus.dot(&inv(&m_pair).map_err(|_| FormsError::EigenspaceImbalance)?));
    let mut t = Mat::zeros((n, n));
    t.slice_mut(s![.., 0..k]).assign(&plus);
    t.slice_mut(s![.., k..n]).assign(&t_p);
    // verify the canonical form of Omega
    let mut canon = Mat::zeros((n, n));
    for i in 0..k {
        canon[[i, k + i]] = -1.0;
        canon[[k + i, i]] = 1.0;
    }
    let res = frob_owned(&(t.t().dot(omega).dot(&t) - &canon));
    if res > 1e-9 * scale(spectral_norm(omega)) {
        return Err(FormsError::EigenspaceImbalance);
    }
    Ok((t, k))
}

fn zero_block_residual(m: &Mat) -> f64 {
    frob_owned(m)
}

/// Split coordinates for a system with skew form Omega and storage W
/// (W = Omega W^{-1} Omega): transformed Omega = [[0,-I],[I,0]],
/// W = [[0,I],[I,0]], and (A,B,C) in the F/P/S/H block pattern.
pub fn nonneg_normal_form(
    sys: &StateSpaceSystem,
    omega_cert: &Certificate,
    w_storage: &StorageCertificate,
) -> Result<NonnegNormalForm> {
    let omega = &omega_cert.matrix;
    let n = sys.state_dim();
    let v = inv(omega)?.dot(&w_storage.q);
    if frob_owned(&(v.dot(&v) - eye(n))) > FEAS_TOL * scale(spectral_norm(&v)) {
        return Err(FormsError::EigenspaceImbalance);
    }
    let (t, k) = symplectic_split(omega, &v)?;
    // transformed W must be the canonical plus form
    let wt = t.t().dot(&w_storage.q).dot(&t);
    let mut plus_form = Mat::zeros((n, n));
    for i in 0..k {
        plus_form[[i, k + i]] = 1.0;
        plus_form[[k + i, i]] = 1.0;
    }
    if frob_owned(&(&wt - &plus_form)) > 1e-9 * scale(spectral_norm(&wt)) {
        return Err(FormsError::EigenspaceImbalance);
    }
    let z = sys.similarity(&t)?;
    let sc = scale(spectral_norm(&z.a) + spectral_norm(&z.b) + spectral_norm(&z.c));
    let f = z.a.slice(s![0..k, 0..k]).to_owned();
    let p = -z.a.slice(s![0..k, k..n]).to_owned();
    let s_blk = -z.a.slice(s![k..n, 0..k]).to_owned();
    let h = z.c.slice(s![.., 0..k]).to_owned();
    let lower_right = z.a.slice(s![k..n, k..n]).to_owned();
    let resid = frob_owned(&(&lower_right + &f.t()))
        + asymmetry(&p)
        + asymmetry(&s_blk)
        + zero_block_residual(&z.b.slice(s![0..k, ..]).to_owned())
        + zero_block_residual(&z.c.slice(s![.., k..n]).to_owned())
        + frob_owned(&(z.b.slice(s![k..n, ..]).to_owned() - h.t()));
    if resid > 1e-8 * sc {
        return Err(FormsError::EigenspaceImbalance);
    }
    let blocks = FactorBlocks {
        f,
        p: sym_part(&p),
        s: sym_part(&s_blk),
        h,
    };
    check_transfer(sys, &blocks.assemble()?)?;
    Ok(NonnegNormalForm { t, blocks })
}

/// Split coordinates for a time-reversible system with skew form Omega and
/// reversal map R: transformed system is
/// [q'; p'] = [[0, P], [-Q, 0]] [q; p] + [0; B] u, y = [B^T, 0] [q; p].
pub fn time_reversible_normal_form(
    sys: &StateSpaceSystem,
    omega_cert: &Certificate,
    r_cert: &Certificate,
) -> Result<TimeReversibleNormalForm> {
    let omega = &omega_cert.matrix;
    let r = &r_cert.matrix;
    let anti = frob_owned(&(r.t().dot(omega).dot(r) + omega));
    if anti > FEAS_TOL * scale(spectral_norm(omega)) {
        return Err(FormsError::NotAntiSymplectic);
    }
    let (t, k) = symplectic_split(omega, r)?;
    let n = sys.state_dim();
    let z = sys.similarity(&t)?;
    let sc = scale(spectral_norm(&z.a) + spectral_norm(&z.b) + spectral_norm(&z.c));
    let p = z.a.slice(s![0..k, k..n]).to_owned();
    let q = -z.a.slice(s![k..n, 0..k]).to_owned();
    let b = z.b.slice(s![k..n, ..]).to_owned();
    let resid = zero_block_residual(&z.a.slice(s![0..k, 0..k]).to_owned())
        + zero_block_residual(&z.a.slice(s![k..n, k..n]).to_owned())
        + asymmetry(&p)
        + asymmetry(&q)
        + zero_block_residual(&z.b.slice(s![0..k, ..]).to_owned())
        + zero_block_residual(&z.c.slice(s![.., k..n]).to_owned())
        + frob_owned(&(z.c.slice(s![.., 0..k]).to_owned() - b.t()));
    if resid > 1e-8 * sc {
        return Err(FormsError::EigenspaceImbalance);
    }
    check_transfer(sys, &z)?;
    Ok(TimeReversibleNormalForm {
        t,
        p: sym_part(&p),
        q: sym_part(&q),
        b,
    })
}

// ---------------------------------------------------------------------------
// spectral factorization

/// Spectral factor K(s) = M(s) M^T(-s) with
/// M(s) = H (sI - (F - P X))^{-1} P_factor, X the stabilizing Riccati
/// solution of F^T X + X F - X P X + S = 0 and P = P_factor P_factor^T.
#[derive(Debug, Clone)]
pub struct FactorizationForm {
    pub x: Mat,
    pub p_factor: Mat,
    pub m_realization: StateSpaceSystem,
}

pub fn spectral_factorize(blocks: &FactorBlocks) -> Result<FactorizationForm> {
    let x = matcore::solve_care(&blocks.f, &blocks.p, &blocks.s)?;
    let p_factor = psd_sqrt(&blocks.p, 1e-10)?;
    let closed = &blocks.f - &blocks.p.dot(&x);
    let m = blocks.h.nrows();
    let m_realization = StateSpaceSystem::new(
        closed,
        p_factor.clone(),
        blocks.h.clone(),
        Mat::zeros((m, p_factor.ncols())),
        ndarray::Array1::ones(m),
    )?;
    // frequency identity K(s) = M(s) M^T(-s) on the sample set
    let full = blocks.assemble()?;
    let mut worst: f64 = 0.0;
    for s_pt in lti::frequency_samples(&full.a, &m_realization.a)? {
        let k = full.transfer(s_pt)?;
        let m1 = m_realization.transfer(s_pt)?;
        let m2 = m_realization.transfer(-s_pt)?;
        let prod = m1.dot(&m2.t());
        let diff = &k - &prod;
        let num = diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let den = scale(k.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
        worst = worst.max(num / den);
    }
    if worst > TRANSFER_TOL {
        return Err(FormsError::TransferMismatch(worst));
    }
    Ok(FactorizationForm {
        x,
        p_factor,
        m_realization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{find_io_hamiltonian_omega, find_reciprocal_g, find_time_reversal};
    use crate::lti::{lc_oscillator, point_mass, scalar_relaxation};
    use crate::passivity::{self, kyp_storage, Objective};
    use ndarray::{array, Array1};

    fn g_of(sys: &StateSpaceSystem) -> Certificate {
        find_reciprocal_g(sys, true).unwrap().into_certificate().unwrap()
    }

    #[test]
    fn pseudo_gradient_cases() {
        let sys = scalar_relaxation();
        let form = to_pseudo_gradient(&sys, &g_of(&sys)).unwrap();
        assert!((form.p[[0, 0]] - 1.0).abs() < 1e-10);

        let sys = lc_oscillator();
        let form = to_pseudo_gradient(&sys, &g_of(&sys)).unwrap();
        assert!(frob_owned(&(&form.p - &array![[0.0, 1.0], [1.0, 0.0]])) < 1e-9);

        let mut bad = g_of(&sys);
        bad.matrix[[0, 0]] = 5.0;
        assert!(matches!(
            to_pseudo_gradient(&sys, &bad),
            Err(FormsError::AsymmetricP)
        ));
    }

    #[test]
    fn compatible_coordinates_cases() {
        let coords =
            compatible_coordinates(&array![[-1.0, 0.0], [0.0, 1.0]], &eye(2)).unwrap();
        assert_eq!(coords.q1.nrows(), 1);
        assert!((coords.q1[[0, 0]] - 1.0).abs() < 1e-10);
        assert!((coords.q2[[0, 0]] - 1.0).abs() < 1e-10);

        // relaxation: involution is the identity, single block
        let g = array![[2.0, 1.0], [1.0, 2.0]];
        let coords = compatible_coordinates(&g, &g).unwrap();
        assert_eq!(coords.q1.nrows(), 2);
        assert_eq!(coords.q2.nrows(), 0);
        assert!(frob_owned(&(&coords.t.t().dot(&g).dot(&coords.t) - &coords.q1)) < 1e-9);

        let q = array![[2.0, 0.0], [0.0, 2.0]];
        let g = array![[0.0, 2.0], [2.0, 0.0]];
        let coords = compatible_coordinates(&g, &q).unwrap();
        assert!((coords.q1[[0, 0]] - 2.0).abs() < 1e-9);
        assert!((coords.q2[[0, 0]] - 2.0).abs() < 1e-9);

        assert!(matches!(
            compatible_coordinates(&array![[1.0]], &array![[2.0]]),
            Err(FormsError::NotCompatible)
        ));
    }

    #[test]
    fn port_hamiltonian_cases() {
        // scalar relaxation: z' = -z + u, y = z
        let sys = scalar_relaxation();
        let g = g_of(&sys);
        let q = passivity::StorageCertificate {
            q: array![[1.0]],
            slack_spectrum: Array1::zeros(2),
            lossless: false,
            kind: passivity::StorageKind::Compatible,
        };
        let form = to_port_hamiltonian(&sys, &g, &q).unwrap();
        assert_eq!(form.q2.nrows(), 0);
        assert!((form.assembled.a[[0, 0]] + 1.0).abs() < 1e-10);
        assert!((form.assembled.b[[0, 0]] - 1.0).abs() < 1e-10);
        assert!((form.assembled.c[[0, 0]] - 1.0).abs() < 1e-10);

        // LC oscillator: two domains coupled without dissipation
        let sys = lc_oscillator();
        let g = g_of(&sys);
        let q = kyp_storage(&sys, Objective::Min).unwrap();
        let form = to_port_hamiltonian(&sys, &g, &q).unwrap();
        assert_eq!(form.q1.nrows(), 1);
        assert!(frob_owned(&form.p1) < 1e-10);
        assert!(frob_owned(&form.p2) < 1e-10);
        assert!((form.p_c[[0, 0]].abs() - 1.0) < 1e-9);
    }

    #[test]
    fn relaxation_port_form_cases() {
        let sys = scalar_relaxation();
        let form = relaxation_port_form(&sys, &g_of(&sys)).unwrap();
        assert!((form.assembled.a[[0, 0]] + 1.0).abs() < 1e-10);

        // RC pair: diagonal relaxation system, G = I
        let sys = StateSpaceSystem::new(
            array![[-1.0, 0.0], [0.0, -2.0]],
            array![[1.0], [1.0]],
            array![[1.0, 1.0]],
            array![[0.0]],
            array![1.0],
        )
        .unwrap();
        let form = relaxation_port_form(&sys, &g_of(&sys)).unwrap();
        assert_eq!(form.q2.nrows(), 0);

        // integrator form: G x' = C^T u has zero potential
        let sys = StateSpaceSystem::new(
            array![[0.0]],
            array![[0.5]],
            array![[2.0]],
            array![[0.0]],
            array![1.0],
        )
        .unwrap();
        let form = relaxation_port_form(&sys, &g_of(&sys)).unwrap();
        assert!(frob_owned(&form.p1) < 1e-10);

        // indefinite metric is rejected
        let sys = lc_oscillator();
        assert!(matches!(
            relaxation_port_form(&sys, &g_of(&sys)),
            Err(FormsError::NotRelaxation)
        ));
    }

    #[test]
    fn derivative_output_form() {
        let sys = point_mass();
        let omega = find_io_hamiltonian_omega(&sys, true)
            .unwrap()
            .into_certificate()
            .unwrap();
        let form = io_ham_to_port_ham(&sys, &omega).unwrap();
        assert!(frob_owned(&(&form.q - &array![[0.0, 0.0], [0.0, 1.0]])) < 1e-10);
        // new output is the velocity
        assert!(frob_owned(&(&form.realization.c - &array![[0.0, 1.0]])) < 1e-10);

        // energy balance: d/dt (x^T Q x / 2) = z^T u along trajectories
        let h = 1e-3;
        let steps = 2001;
        let mut inputs = Mat::zeros((steps, 1));
        for i in 0..steps {
            let t = i as f64 * h;
            inputs[[i, 0]] = (2.0 * t).sin();
        }
        let traj = form
            .realization
            .simulate(&inputs, h, 0.0, &Array1::zeros(2))
            .unwrap();
        let energy = |i: usize| {
            let x = traj.states.row(i).to_owned();
            0.5 * x.dot(&form.q.dot(&x))
        };
        let work = traj.trapezoid(|i| traj.outputs.row(i).dot(&traj.inputs.row(i)));
        let delta = energy(steps - 1) - energy(0);
        assert!((delta - work).abs() < 1e-6, "imbalance {}", delta - work);
    }

    fn factor_fixture() -> StateSpaceSystem {
        FactorBlocks {
            f: array![[0.0]],
            p: array![[1.0]],
            s: array![[1.0]],
            h: array![[1.0]],
        }
        .assemble()
        .unwrap()
    }

    #[test]
    fn nonneg_normal_form_cases() {
        let sys = factor_fixture();
        let omega = find_io_hamiltonian_omega(&sys, true)
            .unwrap()
            .into_certificate()
            .unwrap();
        let w = passivity::io_ham_storage_w(&sys, &omega).unwrap();
        let form = nonneg_normal_form(&sys, &omega, &w).unwrap();
        // already in canonical coordinates
        assert!(frob_owned(&(&form.t - &eye(2))) < 1e-9);
        assert!((form.blocks.p[[0, 0]] - 1.0).abs() < 1e-9);
        assert!((form.blocks.s[[0, 0]] - 1.0).abs() < 1e-9);
        assert!((form.blocks.h[[0, 0]] - 1.0).abs() < 1e-9);

        // conjugated fixture: recovery preserves the transfer matrix
        let t0 = array![[1.0, 2.0], [-1.0, 1.0]];
        let conj = sys.similarity(&t0).unwrap();
        let omega = find_io_hamiltonian_omega(&conj, true)
            .unwrap()
            .into_certificate()
            .unwrap();
        let w = passivity::io_ham_storage_w(&conj, &omega).unwrap();
        let form = nonneg_normal_form(&conj, &omega, &w).unwrap();
        let rebuilt = form.blocks.assemble().unwrap();
        assert!(conj.transfer_deviation(&rebuilt).unwrap() < 1e-8);
    }

    #[test]
    fn spectral_factorize_cases() {
        let blocks = FactorBlocks {
            f: array![[0.0]],
            p: array![[1.0]],
            s: array![[1.0]],
            h: array![[1.0]],
        };
        let fact = spectral_factorize(&blocks).unwrap();
        assert!((fact.x[[0, 0]] - 1.0).abs() < 1e-10);
        assert!((fact.m_realization.a[[0, 0]] + 1.0).abs() < 1e-10);

        // S = 0 with Hurwitz F gives the zero Riccati solution
        let blocks = FactorBlocks {
            f: array![[-2.0]],
            p: array![[1.0]],
            s: array![[0.0]],
            h: array![[1.0]],
        };
        let fact = spectral_factorize(&blocks).unwrap();
        assert!(fact.x[[0, 0]].abs() < 1e-10);

        // double-integrator pattern has no stabilizing solution
        let blocks = FactorBlocks {
            f: array![[0.0]],
            p: array![[0.0]],
            s: array![[0.0]],
            h: array![[1.0]],
        };
        assert!(spectral_factorize(&blocks).is_err());
    }

    #[test]
    fn time_reversible_normal_form_cases() {
        let sys = point_mass();
        let omega = find_io_hamiltonian_omega(&sys, true)
            .unwrap()
            .into_certificate()
            .unwrap();
        let r = find_time_reversal(&sys).unwrap().into_certificate().unwrap();
        let form = time_reversible_normal_form(&sys, &omega, &r).unwrap();
        assert!((form.p[[0, 0]] - 1.0).abs() < 1e-9);
        assert!(form.q[[0, 0]].abs() < 1e-9);
        assert!((form.b[[0, 0]] - 1.0).abs() < 1e-9);

        // construct from blocks, conjugate, recover
        let a = array![[0.0, 2.0], [-3.0, 0.0]];
        let b = array![[0.0], [1.0]];
        let c = array![[1.0, 0.0]];
        let base = StateSpaceSystem::new(a, b, c, array![[0.0]], array![1.0]).unwrap();
        let t0 = array![[2.0, 1.0], [1.0, 1.0]];
        let conj = base.similarity(&t0).unwrap();
        let omega = find_io_hamiltonian_omega(&conj, true)
            .unwrap()
            .into_certificate()
            .unwrap();
        let r = find_time_reversal(&conj).unwrap().into_certificate().unwrap();
        let form = time_reversible_normal_form(&conj, &omega, &r).unwrap();
        // the product PQ is a similarity invariant (eigenvalues of A)
        assert!((form.p[[0, 0]] * form.q[[0, 0]] - 6.0).abs() < 1e-8);

        // broken reversal map is rejected
        let mut bad = r.clone();
        bad.matrix = eye(2);
        assert!(matches!(
            time_reversible_normal_form(&conj, &omega, &bad),
            Err(FormsError::NotAntiSymplectic)
        ));
    }
}
