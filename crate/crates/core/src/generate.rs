//! Seeded generators for structured random systems with embedded ground
//! truth, used by the round-trip test suites and the CLI `generate` command.

use ndarray::{s, Array1};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certify::CertificateKind;
use crate::lti::StateSpaceSystem;
use crate::matcore::{eye, inv, min_singular_value, skew_part, sym_part, Mat};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("io-hamiltonian systems need even state dimension")]
    OddDimension,
    #[error("dimensions must be at least 1")]
    BadDimension,
    #[error("failed to draw a minimal structured system after {0} attempts")]
    Degenerate(usize),
}

pub type Result<T> = std::result::Result<T, GenerateError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    Reciprocal,
    IOHamiltonian,
    Relaxation,
    Lossless,
    TimeReversible,
}

impl GenerateKind {
    pub fn name(self) -> &'static str {
        match self {
            GenerateKind::Reciprocal => "reciprocal",
            GenerateKind::IOHamiltonian => "iohamiltonian",
            GenerateKind::Relaxation => "relaxation",
            GenerateKind::Lossless => "lossless",
            GenerateKind::TimeReversible => "time-reversible",
        }
    }

    pub fn parse(s: &str) -> Option<GenerateKind> {
        match s {
            "reciprocal" => Some(GenerateKind::Reciprocal),
            "iohamiltonian" => Some(GenerateKind::IOHamiltonian),
            "relaxation" => Some(GenerateKind::Relaxation),
            "lossless" => Some(GenerateKind::Lossless),
            "time-reversible" => Some(GenerateKind::TimeReversible),
            _ => None,
        }
    }

    /// Certificate kind the embedded ground truth certifies.
    pub fn certificate_kind(self) -> CertificateKind {
        match self {
            GenerateKind::Reciprocal | GenerateKind::Relaxation => CertificateKind::Reciprocal,
            GenerateKind::IOHamiltonian => CertificateKind::IOHamiltonian,
            GenerateKind::Lossless => CertificateKind::CycloLossless,
            GenerateKind::TimeReversible => CertificateKind::SignedTimeReversible,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedSystem {
    pub system: StateSpaceSystem,
    pub kind: GenerateKind,
    pub truth: Mat,
}

const MAX_ATTEMPTS: usize = 64;

fn random_mat(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat {
    Mat::from_shape_fn((r, c), |_| rng.random_range(-1.0..1.0))
}

/// Well-conditioned random invertible matrix.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let t = random_mat(rng, n, n);
        if min_singular_value(&t) > 0.3 {
            return t;
        }
    }
}

fn random_sigma(rng: &mut ChaCha8Rng, m: usize) -> Array1<f64> {
    Array1::from_shape_fn(m, |_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
}

fn sign_diag(rng: &mut ChaCha8Rng, n: usize) -> Array1<f64> {
    Array1::from_shape_fn(n, |_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
}

/// Draw a structured system of the given kind; deterministic per seed.
pub fn generate(kind: GenerateKind, n: usize, m: usize, seed: u64) -> Result<GeneratedSystem> {
    if n == 0 || m == 0 {
        return Err(GenerateError::BadDimension);
    }
    if kind == GenerateKind::IOHamiltonian && n % 2 == 1 {
        return Err(GenerateError::OddDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let candidate = draw(kind, n, m, &mut rng);
        if let Some(gs) = candidate {
            if gs.system.minimality().minimal() {
                return Ok(gs);
            }
        }
    }
    Err(GenerateError::Degenerate(MAX_ATTEMPTS))
}

fn draw(kind: GenerateKind, n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    match kind {
        GenerateKind::Reciprocal => draw_reciprocal(n, m, rng, false),
        GenerateKind::Relaxation => draw_reciprocal(n, m, rng, true),
        GenerateKind::IOHamiltonian => draw_io_hamiltonian(n, m, rng),
        GenerateKind::Lossless => draw_lossless(n, m, rng),
        GenerateKind::TimeReversible => draw_time_reversible(n, m, rng),
    }
}

/// A = -G^{-1} P with G = T^T D T, P = T^T (D diag(pos)) T, so that
/// G A = -P is symmetric and A is similar to -diag(pos) (Hurwitz).
fn draw_reciprocal(
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
    relaxation: bool,
) -> Option<GeneratedSystem> {
    let t = random_invertible(rng, n);
    let d_signs = if relaxation {
        Array1::ones(n)
    } else {
        sign_diag(rng, n)
    };
    let pos = Array1::from_shape_fn(n, |_| rng.random_range(0.3..2.0));
    let g = t.t().dot(&Mat::from_diag(&d_signs)).dot(&t);
    let p = t
        .t()
        .dot(&Mat::from_diag(&(&d_signs * &pos)))
        .dot(&t);
    let g_inv = inv(&g).ok()?;
    let a = -g_inv.dot(&p);
    let sigma = if relaxation {
        Array1::ones(m)
    } else {
        random_sigma(rng, m)
    };
    let sg = Mat::from_diag(&sigma);
    let c = random_mat(rng, m, n);
    let b = g_inv.dot(&c.t()).dot(&sg);
    let d = if relaxation {
        // symmetric psd feedthrough keeps the relaxation slack feasible
        let l = random_mat(rng, m, m) * 0.3;
        l.t().dot(&l)
    } else {
        sg.dot(&sym_part(&random_mat(rng, m, m)))
    };
    let system = StateSpaceSystem::new(a, b, c, d, sigma).ok()?;
    Some(GeneratedSystem {
        system,
        kind: if relaxation {
            GenerateKind::Relaxation
        } else {
            GenerateKind::Reciprocal
        },
        truth: g,
    })
}

/// A = Omega^{-1} Q0 (Q0 symmetric) and B = -Omega^{-1} C^T Sigma, so that
/// A^T Omega + Omega A = 0 and B^T Omega = Sigma C.
fn draw_io_hamiltonian(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let half = n / 2;
    let t = random_invertible(rng, n);
    let mut j0 = Mat::zeros((n, n));
    for i in 0..half {
        j0[[i, half + i]] = -1.0;
        j0[[half + i, i]] = 1.0;
    }
    let omega = t.t().dot(&j0).dot(&t);
    let q0 = sym_part(&random_mat(rng, n, n));
    let omega_inv = inv(&omega).ok()?;
    let a = omega_inv.dot(&q0);
    let sigma = random_sigma(rng, m);
    let sg = Mat::from_diag(&sigma);
    let c = random_mat(rng, m, n);
    let b = -omega_inv.dot(&c.t()).dot(&sg);
    let d = sg.dot(&sym_part(&random_mat(rng, m, m)));
    let system = StateSpaceSystem::new(a, b, c, d, sigma).ok()?;
    Some(GeneratedSystem {
        system,
        kind: GenerateKind::IOHamiltonian,
        truth: omega,
    })
}

/// A = Q^{-1} K with K skew, C = B^T Q, D skew: A^T Q + Q A = 0, B^T Q = C.
fn draw_lossless(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let t = random_invertible(rng, n);
    let q = t.t().dot(&Mat::from_diag(&sign_diag(rng, n))).dot(&t);
    let k = skew_part(&random_mat(rng, n, n));
    let a = inv(&q).ok()?.dot(&k);
    let b = random_mat(rng, n, m);
    let c = b.t().dot(&q);
    let d = skew_part(&random_mat(rng, m, m));
    let system = StateSpaceSystem::new(a, b, c, d, Array1::ones(m)).ok()?;
    Some(GeneratedSystem {
        system,
        kind: GenerateKind::Lossless,
        truth: q,
    })
}

/// Block recipe: R0 = diag(I_k, -I_{n-k}) with A0 block-antidiagonal,
/// B0 supported on the +1 block, C0 on the +1 block, conjugated by a random
/// similarity.
fn draw_time_reversible(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<GeneratedSystem> {
    let k = n - n / 2;
    let t = random_invertible(rng, n);
    let t_inv = inv(&t).ok()?;
    let mut a0 = Mat::zeros((n, n));
    a0.slice_mut(s![0..k, k..n]).assign(&random_mat(rng, k, n - k));
    a0.slice_mut(s![k..n, 0..k]).assign(&random_mat(rng, n - k, k));
    let mut b0 = Mat::zeros((n, m));
    b0.slice_mut(s![0..k, ..]).assign(&random_mat(rng, k, m));
    let mut c0 = Mat::zeros((m, n));
    c0.slice_mut(s![.., 0..k]).assign(&random_mat(rng, m, k));
    let mut r0 = eye(n);
    for i in k..n {
        r0[[i, i]] = -1.0;
    }
    let a = t_inv.dot(&a0).dot(&t);
    let b = t_inv.dot(&b0);
    let c = c0.dot(&t);
    let r = t_inv.dot(&r0).dot(&t);
    let sigma = random_sigma(rng, m);
    let system = StateSpaceSystem::new(a, b, c, Mat::zeros((m, m)), sigma).ok()?;
    Some(GeneratedSystem {
        system,
        kind: GenerateKind::TimeReversible,
        truth: r,
    })
}

pub fn all_kinds() -> [GenerateKind; 5] {
    [
        GenerateKind::Reciprocal,
        GenerateKind::IOHamiltonian,
        GenerateKind::Relaxation,
        GenerateKind::Lossless,
        GenerateKind::TimeReversible,
    ]
}
