//! Continuous-time LTI system model: the quadruple (A, B, C, D) with a
//! signature vector, transfer and impulse responses, minimality analysis,
//! dual/adjoint companion systems, and fixed-step time simulation.

use ndarray::{Array1, Axis};
use num_complex::Complex64;
use thiserror::Error;

use crate::matcore::{
    self, eigvals, matrix_exponential, rank, solve_cmat, CMat, Mat,
};
use crate::tol::scale;

#[derive(Debug, Error)]
pub enum LtiError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("signature entries must be +1 or -1")]
    BadSignature,
    #[error("s is too close to an eigenvalue of A; resolvent is singular")]
    SingularResolvent,
    #[error("impulse response requires t >= 0")]
    NegativeTime,
    #[error("grid spacing too coarse for the state matrix (need h <= 0.1/||A||)")]
    GridTooCoarse,
    #[error(transparent)]
    Mat(#[from] matcore::MatError),
}

pub type Result<T> = std::result::Result<T, LtiError>;

/// State-space system x' = Ax + Bu, y = Cx + Du with equal input and output
/// count m and a signature vector sigma of m entries in {+1, -1}.
#[derive(Debug, Clone)]
pub struct StateSpaceSystem {
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
    pub d: Mat,
    pub sigma: Array1<f64>,
}

/// Controllability/observability summary.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MinimalityReport {
    pub controllable: bool,
    pub observable: bool,
    pub ctrb_rank: usize,
    pub obsv_rank: usize,
}

impl MinimalityReport {
    pub fn minimal(&self) -> bool {
        self.controllable && self.observable
    }
}

/// Sampled trajectory on a uniform time grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Time of the first sample.
    pub t0: f64,
    /// Grid spacing, > 0.
    pub h: f64,
    /// N x n state samples.
    pub states: Mat,
    /// N x m input samples.
    pub inputs: Mat,
    /// N x m output samples.
    pub outputs: Mat,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.states.nrows() == 0
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.h * i as f64
    }

    /// Trapezoid-rule integral of a scalar function of the sample index.
    pub fn trapezoid<F: Fn(usize) -> f64>(&self, f: F) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let mut acc = 0.5 * (f(0) + f(n - 1));
        for i in 1..n - 1 {
            acc += f(i);
        }
        acc * self.h
    }
}

impl StateSpaceSystem {
    pub fn new(a: Mat, b: Mat, c: Mat, d: Mat, sigma: Array1<f64>) -> Result<Self> {
        let n = a.nrows();
        if a.ncols() != n {
            return Err(LtiError::Dimension("A must be square".into()));
        }
        let m = b.ncols();
        if b.nrows() != n {
            return Err(LtiError::Dimension("B must be n x m".into()));
        }
        if c.dim() != (m, n) {
            return Err(LtiError::Dimension(
                "C must be m x n (equal input and output count)".into(),
            ));
        }
        if d.dim() != (m, m) {
            return Err(LtiError::Dimension("D must be m x m".into()));
        }
        if sigma.len() != m || sigma.iter().any(|&s| s != 1.0 && s != -1.0) {
            return Err(LtiError::BadSignature);
        }
        let finite = a.iter().chain(b.iter()).chain(c.iter()).chain(d.iter());
        if finite.clone().any(|x| !x.is_finite()) {
            return Err(LtiError::Dimension("entries must be finite".into()));
        }
        Ok(StateSpaceSystem { a, b, c, d, sigma })
    }

    pub fn state_dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn io_dim(&self) -> usize {
        self.b.ncols()
    }

    /// Signature vector as a diagonal matrix.
    pub fn sigma_mat(&self) -> Mat {
        Mat::from_diag(&self.sigma)
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma.iter().all(|&s| s == 1.0)
    }

    /// Transfer matrix K(s) = C (sI - A)^{-1} B + D.
    pub fn transfer(&self, s: Complex64) -> Result<CMat> {
        let n = self.state_dim();
        let m = self.io_dim();
        let evs = eigvals(&self.a)?;
        let sc = evs.iter().map(|l| l.norm()).fold(s.norm(), f64::max);
        if evs.iter().any(|l| (s - l).norm() <= 1e-8 * scale(sc)) {
            return Err(LtiError::SingularResolvent);
        }
        let mut res = CMat::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                res[[i, j]] = -Complex64::new(self.a[[i, j]], 0.0);
                if i == j {
                    res[[i, j]] += s;
                }
            }
        }
        let bc: CMat = self.b.mapv(|x| Complex64::new(x, 0.0));
        let x = if n > 0 {
            solve_cmat(&res, &bc)?
        } else {
            CMat::zeros((0, m))
        };
        let cc: CMat = self.c.mapv(|x| Complex64::new(x, 0.0));
        let dc: CMat = self.d.mapv(|x| Complex64::new(x, 0.0));
        Ok(cc.dot(&x) + dc)
    }

    /// Smooth part of the impulse response, C e^{At} B. The feedthrough
    /// delta atom is not sampled; D travels separately.
    pub fn impulse_response(&self, t: f64) -> Result<Mat> {
        if t < 0.0 {
            return Err(LtiError::NegativeTime);
        }
        Ok(self.c.dot(&matrix_exponential(&self.a, t)).dot(&self.b))
    }

    /// Ranks of the Krylov controllability/observability blocks.
    pub fn minimality(&self) -> MinimalityReport {
        let n = self.state_dim();
        let m = self.io_dim();
        let mut ctrb = Mat::zeros((n, n * m));
        let mut blk = self.b.clone();
        for k in 0..n {
            ctrb.slice_mut(ndarray::s![.., k * m..(k + 1) * m]).assign(&blk);
            blk = self.a.dot(&blk);
        }
        let mut obsv = Mat::zeros((n * m, n));
        let mut blk = self.c.clone();
        for k in 0..n {
            obsv.slice_mut(ndarray::s![k * m..(k + 1) * m, ..]).assign(&blk);
            blk = blk.dot(&self.a);
        }
        let cr = rank(&ctrb);
        let or = rank(&obsv);
        MinimalityReport {
            controllable: cr == n,
            observable: or == n,
            ctrb_rank: cr,
            obsv_rank: or,
        }
    }

    /// Dual system (A^T, C^T, B^T, D^T) with the same signature.
    pub fn dual_system(&self) -> StateSpaceSystem {
        StateSpaceSystem {
            a: self.a.t().to_owned(),
            b: self.c.t().to_owned(),
            c: self.b.t().to_owned(),
            d: self.d.t().to_owned(),
            sigma: self.sigma.clone(),
        }
    }

    /// Adjoint system (-A^T, -C^T, B^T, D^T) with the same signature.
    pub fn adjoint_system(&self) -> StateSpaceSystem {
        StateSpaceSystem {
            a: -self.a.t().to_owned(),
            b: -self.c.t().to_owned(),
            c: self.b.t().to_owned(),
            d: self.d.t().to_owned(),
            sigma: self.sigma.clone(),
        }
    }

    /// Classical fourth-order fixed-step integration of x' = Ax + Bu from
    /// x(t0) = x0, with `inputs` sampled on the grid (N x m) and linear
    /// interpolation at half steps.
    pub fn simulate(&self, inputs: &Mat, h: f64, t0: f64, x0: &Array1<f64>) -> Result<Trajectory> {
        let n = self.state_dim();
        let m = self.io_dim();
        if inputs.ncols() != m {
            return Err(LtiError::Dimension("input samples must be N x m".into()));
        }
        if x0.len() != n {
            return Err(LtiError::Dimension("x0 must have length n".into()));
        }
        if !(h > 0.0) {
            return Err(LtiError::Dimension("grid spacing must be positive".into()));
        }
        let anorm = matcore::spectral_norm(&self.a);
        if anorm > 0.0 && h > 0.1 / anorm {
            return Err(LtiError::GridTooCoarse);
        }
        let steps = inputs.nrows();
        let mut states = Mat::zeros((steps, n));
        let mut outputs = Mat::zeros((steps, m));
        let mut x = x0.clone();
        let deriv = |x: &Array1<f64>, u: &Array1<f64>| self.a.dot(x) + self.b.dot(u);
        for i in 0..steps {
            states.row_mut(i).assign(&x);
            let u_i = inputs.row(i).to_owned();
            outputs.row_mut(i).assign(&(self.c.dot(&x) + self.d.dot(&u_i)));
            if i + 1 == steps {
                break;
            }
            let u_next = inputs.row(i + 1).to_owned();
            let u_half = (&u_i + &u_next) / 2.0;
            let k1 = deriv(&x, &u_i);
            let k2 = deriv(&(&x + &(&k1 * (h / 2.0))), &u_half);
            let k3 = deriv(&(&x + &(&k2 * (h / 2.0))), &u_half);
            let k4 = deriv(&(&x + &(&k3 * h)), &u_next);
            x = &x + &((k1 + k2.clone() * 2.0 + k3.clone() * 2.0 + k4) * (h / 6.0));
        }
        Ok(Trajectory {
            t0,
            h,
            states,
            inputs: inputs.clone(),
            outputs,
        })
    }

    /// Free response output C e^{At} x0 sampled on a uniform grid of
    /// `steps` points with spacing h, starting at t = 0.
    pub fn free_response(&self, x0: &Array1<f64>, h: f64, steps: usize) -> Result<Mat> {
        let m = self.io_dim();
        let mut out = Mat::zeros((steps, m));
        let step = matrix_exponential(&self.a, h);
        let mut x = x0.clone();
        for i in 0..steps {
            out.row_mut(i).assign(&self.c.dot(&x));
            x = step.dot(&x);
        }
        Ok(out)
    }

    /// Similarity transform: x = T z gives (T^{-1}AT, T^{-1}B, CT, D).
    pub fn similarity(&self, t: &Mat) -> Result<StateSpaceSystem> {
        let ti_a = matcore::solve_mat(t, &self.a.dot(t))?;
        let ti_b = matcore::solve_mat(t, &self.b)?;
        Ok(StateSpaceSystem {
            a: ti_a,
            b: ti_b,
            c: self.c.dot(t),
            d: self.d.clone(),
            sigma: self.sigma.clone(),
        })
    }

    /// Relative transfer-matrix deviation max_s ||K1(s) - K2(s)|| over the
    /// shared frequency sample set.
    pub fn transfer_deviation(&self, other: &StateSpaceSystem) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in frequency_samples(&self.a, &other.a)? {
            let k1 = self.transfer(s)?;
            let k2 = other.transfer(s)?;
            let diff = &k1 - &k2;
            let num = diff.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let den = scale(k1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
            worst = worst.max(num / den);
        }
        Ok(worst)
    }
}

/// Deterministic frequency sample set: s = i*omega with omega log-spaced in
/// [1e-2, 1e2] (20 points) plus s = 1 + i, excluding points within 1e-6 of
/// an eigenvalue of either argument.
pub fn frequency_samples(a1: &Mat, a2: &Mat) -> matcore::Result<Vec<Complex64>> {
    let mut evs = eigvals(a1)?.to_vec();
    evs.extend(eigvals(a2)?.to_vec());
    let mut out = Vec::new();
    for k in 0..20 {
        let omega = 10f64.powf(-2.0 + 4.0 * k as f64 / 19.0);
        let s = Complex64::new(0.0, omega);
        if evs.iter().all(|l| (s - l).norm() > 1e-6) {
            out.push(s);
        }
    }
    let s = Complex64::new(1.0, 1.0);
    if evs.iter().all(|l| (s - l).norm() > 1e-6) {
        out.push(s);
    }
    Ok(out)
}

/// Uniform input grid filled with a constant vector.
pub fn constant_input(value: &Array1<f64>, steps: usize) -> Mat {
    let mut u = Mat::zeros((steps, value.len()));
    for mut row in u.axis_iter_mut(Axis(0)) {
        row.assign(value);
    }
    u
}

/// The point-mass fixture: double integrator with position output.
pub fn point_mass() -> StateSpaceSystem {
    StateSpaceSystem::new(
        ndarray::array![[0.0, 1.0], [0.0, 0.0]],
        ndarray::array![[0.0], [1.0]],
        ndarray::array![[1.0, 0.0]],
        ndarray::array![[0.0]],
        ndarray::array![1.0],
    )
    .unwrap()
}

/// LC oscillator fixture: A = [[0,1],[-1,0]], B = [0;1], C = [0,1].
pub fn lc_oscillator() -> StateSpaceSystem {
    StateSpaceSystem::new(
        ndarray::array![[0.0, 1.0], [-1.0, 0.0]],
        ndarray::array![[0.0], [1.0]],
        ndarray::array![[0.0, 1.0]],
        ndarray::array![[0.0]],
        ndarray::array![1.0],
    )
    .unwrap()
}

/// Scalar relaxation fixture (a, b, c, d) = (-1, 1, 1, 0).
pub fn scalar_relaxation() -> StateSpaceSystem {
    StateSpaceSystem::new(
        ndarray::array![[-1.0]],
        ndarray::array![[1.0]],
        ndarray::array![[1.0]],
        ndarray::array![[0.0]],
        ndarray::array![1.0],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::frob_owned;
    use ndarray::array;

    #[test]
    fn transfer_point_mass() {
        let k = point_mass().transfer(Complex64::new(2.0, 0.0)).unwrap();
        assert!((k[[0, 0]] - Complex64::new(0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn transfer_scalar_at_zero() {
        let k = scalar_relaxation().transfer(Complex64::new(0.0, 0.0)).unwrap();
        assert!((k[[0, 0]].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transfer_rejects_eigenvalue() {
        let r = scalar_relaxation().transfer(Complex64::new(-1.0, 0.0));
        assert!(matches!(r, Err(LtiError::SingularResolvent)));
    }

    #[test]
    fn impulse_response_cases() {
        let w = point_mass().impulse_response(3.0).unwrap();
        assert!((w[[0, 0]] - 3.0).abs() < 1e-12);
        let sys = scalar_relaxation();
        let w = sys.impulse_response(0.0).unwrap();
        assert!((w[[0, 0]] - 1.0).abs() < 1e-14); // CB
        let w = sys.impulse_response(1.0).unwrap();
        assert!((w[[0, 0]] - (-1f64).exp()).abs() < 1e-12);
        assert!(matches!(
            sys.impulse_response(-0.5),
            Err(LtiError::NegativeTime)
        ));
    }

    #[test]
    fn minimality_cases() {
        assert!(point_mass().minimality().minimal());
        assert!(scalar_relaxation().minimality().minimal());
        let sys = StateSpaceSystem::new(
            Mat::zeros((2, 2)),
            array![[1.0], [0.0]],
            array![[1.0, 0.0]],
            array![[0.0]],
            array![1.0],
        )
        .unwrap();
        let rep = sys.minimality();
        assert!(!rep.controllable && !rep.observable);
        assert_eq!(rep.ctrb_rank, 1);
        assert_eq!(rep.obsv_rank, 1);
    }

    #[test]
    fn dual_and_adjoint() {
        let sys = point_mass();
        let d = sys.dual_system();
        assert_eq!(d.a, array![[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(d.b, array![[1.0], [0.0]]);
        assert_eq!(d.c, array![[0.0, 1.0]]);
        let a = sys.adjoint_system();
        assert_eq!(a.a, array![[0.0, 0.0], [-1.0, 0.0]]);
        assert_eq!(a.b, array![[-1.0], [0.0]]);
        assert_eq!(a.c, array![[0.0, 1.0]]);
        // involutions
        let dd = d.dual_system();
        assert!(frob_owned(&(&dd.a - &sys.a)) < 1e-15);
        let aa = a.adjoint_system();
        assert!(frob_owned(&(&aa.a - &sys.a)) < 1e-15);
        // scalar adjoint
        let s = scalar_relaxation().adjoint_system();
        assert_eq!((s.a[[0, 0]], s.b[[0, 0]], s.c[[0, 0]]), (1.0, -1.0, 1.0));
    }

    #[test]
    fn simulate_step_responses() {
        let sys = scalar_relaxation();
        let steps = 5001;
        let u = constant_input(&array![1.0], steps);
        let traj = sys.simulate(&u, 0.001, 0.0, &Array1::zeros(1)).unwrap();
        let y_end = traj.outputs[[steps - 1, 0]];
        assert!((y_end - (1.0 - (-5f64).exp())).abs() < 1e-8);

        let sys = point_mass();
        let u = constant_input(&array![1.0], 2001);
        let traj = sys.simulate(&u, 0.001, 0.0, &Array1::zeros(2)).unwrap();
        assert!((traj.outputs[[2000, 0]] - 2.0).abs() < 1e-8); // t^2/2 at t=2

        let zero = sys
            .simulate(&Mat::zeros((10, 1)), 0.01, 0.0, &Array1::zeros(2))
            .unwrap();
        assert!(frob_owned(&zero.outputs) < 1e-15);
    }

    #[test]
    fn simulate_rejects_coarse_grid() {
        let sys = StateSpaceSystem::new(
            array![[-100.0]],
            array![[1.0]],
            array![[1.0]],
            array![[0.0]],
            array![1.0],
        )
        .unwrap();
        let r = sys.simulate(&Mat::zeros((4, 1)), 0.01, 0.0, &Array1::zeros(1));
        assert!(matches!(r, Err(LtiError::GridTooCoarse)));
    }

    #[test]
    fn transfer_transpose_identities() {
        let sys = point_mass();
        let dual = sys.dual_system();
        let adj = sys.adjoint_system();
        for s in frequency_samples(&sys.a, &sys.a).unwrap() {
            let k = sys.transfer(s).unwrap();
            let kd = dual.transfer(s).unwrap();
            let ka = adj.transfer(s).unwrap();
            let kt = sys.transfer(-s).unwrap();
            for i in 0..1 {
                for j in 0..1 {
                    assert!((kd[[i, j]] - k[[j, i]]).norm() < 1e-9);
                    assert!((ka[[i, j]] - kt[[j, i]]).norm() < 1e-9);
                }
            }
        }
    }
}
