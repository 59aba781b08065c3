//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see the lines; a FAIL also
//! fails the test).

use ndarray::{array, s, Array1};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use symcert::certify::{self, CertificateKind, CertifyOutcome};
use symcert::forms;
use symcert::generate::{self, GenerateKind};
use symcert::geometry::{self, ConstrainedDefiniteness, LinearSubspace, PairingKind};
use symcert::hankel;
use symcert::lti::{lc_oscillator, point_mass, scalar_relaxation, StateSpaceSystem};
use symcert::matcore::{eye, frob_owned, inv, sym_part, Mat};
use symcert::passivity::{self, Objective};
use symcert::report::{self, FormChoice};

fn scale(x: f64) -> f64 {
    1.0 + x
}

fn certified(outcome: CertifyOutcome) -> certify::Certificate {
    match outcome {
        CertifyOutcome::Certified(c) => c,
        other => panic!("expected a certificate, got {other:?}"),
    }
}

fn pass(n: usize, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

/// Point mass: skew form, impulse response, transfer value, and the
/// constrained Volterra verdict.
#[test]
fn criterion_1_point_mass() {
    let sys = point_mass();
    let omega = certified(certify::find_io_hamiltonian_omega(&sys, true).unwrap());
    let expect = array![[0.0, -1.0], [1.0, 0.0]];
    assert!(frob_owned(&(&omega.matrix - &expect)) <= 1e-10);
    assert!(omega.algebraic_residual <= 1e-10);

    // kernel depends on t - tau only; (t, tau) = (3, 1)
    let w = sys.impulse_response(2.0).unwrap();
    assert!((w[[0, 0]] - 2.0).abs() <= 1e-12);

    let k = sys.transfer(Complex64::new(2.0, 0.0)).unwrap();
    assert!((k[[0, 0]].re - 0.25).abs() <= 1e-12 && k[[0, 0]].im.abs() <= 1e-12);

    let volterra = geometry::constrained_volterra_check(&sys, &omega, (0.0, 1.0), 200).unwrap();
    assert!(volterra.symmetric);
    assert_eq!(volterra.definiteness, ConstrainedDefiniteness::Indefinite);

    pass(1, "point mass: skew form, W(3,1)=2, K(2)=0.25, Volterra symmetric+indefinite");
}

/// Scalar relaxation: metric, verdict, Hankel eigenvalue, kernel expansion,
/// and input-output recovery of the metric.
#[test]
fn criterion_2_scalar_relaxation() {
    let sys = scalar_relaxation();
    let verdict = passivity::relaxation_test(&sys).unwrap();
    assert!(verdict.is_relaxation);
    let g = verdict.g.as_ref().unwrap();
    assert!((g[[0, 0]] - 1.0).abs() <= 1e-12);

    let g_cert = certified(certify::find_reciprocal_g(&sys, true).unwrap());
    let data = hankel::hankel_spectrum(&sys, &g_cert).unwrap();
    assert!((data.eigenvalues[0] - 0.5).abs() <= 1e-10);

    let times = hankel::uniform_times(8.0, 30);
    let mercer = hankel::mercer_residual(&sys, &data, &times, None).unwrap();
    assert!(mercer <= 1e-10);

    let g_est = certify::estimate_g_from_io(&sys, 15.0, 1e-3).unwrap();
    assert!((g_est[[0, 0]] - 1.0).abs() <= 5e-3);

    pass(2, "scalar relaxation: G=1, lambda=0.5, Mercer<=1e-10, G recovered from i/o");
}

/// LC oscillator: indefinite metric, lossless storage, composition into the
/// reversal, metric compatibility, and the two-domain port form.
#[test]
fn criterion_3_lc_oscillator() {
    let sys = lc_oscillator();
    let g_cert = certified(certify::find_reciprocal_g(&sys, true).unwrap());
    assert!(frob_owned(&(&g_cert.matrix - &array![[-1.0, 0.0], [0.0, 1.0]])) <= 1e-10);

    let q_cert = certified(certify::find_cyclo_lossless_q(&sys).unwrap());
    assert!(frob_owned(&(&q_cert.matrix - &eye(2))) <= 1e-10);
    assert!(q_cert.algebraic_residual <= 1e-10);

    let comp = certify::lossless_reciprocal_composition(&sys, &q_cert, &g_cert).unwrap();
    let r = &comp.reversal.matrix;
    assert!(frob_owned(&(r - &array![[-1.0, 0.0], [0.0, 1.0]])) <= 1e-10);
    assert!(frob_owned(&(r.dot(r) - eye(2))) <= 1e-10);
    assert!(comp.d_zero && comp.compatible);

    let q0 = passivity::kyp_storage(&sys, Objective::Min).unwrap();
    let compat = passivity::compatible_q(&sys, &g_cert, &q0).unwrap();
    let reflected = g_cert.matrix.dot(&inv(&compat.q).unwrap()).dot(&g_cert.matrix);
    assert!(frob_owned(&(&compat.q - &reflected)) <= 1e-10);

    let form = forms::to_port_hamiltonian(&sys, &g_cert, &compat).unwrap();
    let dev = sys.transfer_deviation(&form.assembled).unwrap();
    assert!(dev <= 1e-8);

    pass(3, "LC oscillator: G=diag(-1,1), Q=I, R=diag(-1,1), compatible, port form exact");
}

/// Riccati-based spectral factorization of the F=0,P=1,S=1,H=1 fixture.
#[test]
fn criterion_4_factorization_fixture() {
    let sys = StateSpaceSystem::new(
        array![[0.0, -1.0], [-1.0, 0.0]],
        array![[0.0], [1.0]],
        array![[1.0, 0.0]],
        array![[0.0]],
        array![1.0],
    )
    .unwrap();
    let omega = certified(certify::find_io_hamiltonian_omega(&sys, true).unwrap());
    let storage = passivity::io_ham_storage_w(&sys, &omega).unwrap();
    assert!(frob_owned(&(&storage.q - &array![[0.0, 1.0], [1.0, 0.0]])) <= 1e-10);

    let nf = forms::nonneg_normal_form(&sys, &omega, &storage).unwrap();
    let fact = forms::spectral_factorize(&nf.blocks).unwrap();
    assert!((fact.x[[0, 0]] - 1.0).abs() <= 1e-10);

    let m_sys = &fact.m_realization;
    for idx in 0..20 {
        let omega_f = 10f64.powf(-1.0 + 2.0 * idx as f64 / 19.0);
        let s = Complex64::new(0.0, omega_f);
        let k = sys.transfer(s).unwrap()[[0, 0]];
        let m_pos = m_sys.transfer(s).unwrap()[[0, 0]];
        let m_neg = m_sys.transfer(-s).unwrap()[[0, 0]];
        assert!((k - m_pos * m_neg).norm() <= 1e-8, "omega={omega_f}");
    }

    pass(4, "factorization fixture: X=1, W=[[0,1],[1,0]], K(iw)=M(iw)M^T(-iw)");
}

/// Triple-structured fixture in which the metric, the skew form, and the
/// reversal coexist: G R = Omega and Omega R = G.
fn triple_fixture(rng: &mut ChaCha8Rng, k: usize, m: usize) -> StateSpaceSystem {
    let n = 2 * k;
    loop {
        let p = sym_part(&Mat::from_shape_fn((k, k), |_| rng.random_range(-1.0..1.0)));
        let qh = sym_part(&Mat::from_shape_fn((k, k), |_| rng.random_range(-1.0..1.0)));
        let b2 = Mat::from_shape_fn((k, m), |_| rng.random_range(-1.0..1.0));
        let t = Mat::from_shape_fn((n, n), |_| rng.random_range(-1.0..1.0));
        if symcert::matcore::min_singular_value(&t) < 0.3 {
            continue;
        }
        let mut a0 = Mat::zeros((n, n));
        a0.slice_mut(s![0..k, k..n]).assign(&p);
        a0.slice_mut(s![k..n, 0..k]).assign(&(-&qh));
        let mut b0 = Mat::zeros((n, m));
        b0.slice_mut(s![k..n, ..]).assign(&b2);
        let mut c0 = Mat::zeros((m, n));
        c0.slice_mut(s![.., 0..k]).assign(&b2.t());
        let t_inv = inv(&t).unwrap();
        let sys = StateSpaceSystem::new(
            t_inv.dot(&a0).dot(&t),
            t_inv.dot(&b0),
            c0.dot(&t),
            Mat::zeros((m, m)),
            Array1::ones(m),
        )
        .unwrap();
        if sys.minimality().minimal() {
            return sys;
        }
    }
}

/// 100-seed round trips for every generator kind plus two-of-three
/// composition consistency.
#[test]
fn criterion_5_round_trips() {
    for kind in generate::all_kinds() {
        for seed in 0..100u64 {
            let n = match kind {
                GenerateKind::IOHamiltonian => 2 * (1 + (seed as usize % 4)),
                _ => 1 + (seed as usize % 8),
            };
            let m = 1 + (seed as usize % 2);
            let gs = generate::generate(kind, n, m, seed).unwrap();
            let outcome = match kind.certificate_kind() {
                CertificateKind::Reciprocal => certify::find_reciprocal_g(&gs.system, true),
                CertificateKind::IOHamiltonian => {
                    certify::find_io_hamiltonian_omega(&gs.system, true)
                }
                CertificateKind::SignedTimeReversible => {
                    certify::find_signed_time_reversal(&gs.system)
                }
                CertificateKind::CycloLossless => certify::find_cyclo_lossless_q(&gs.system),
                CertificateKind::TimeReversible => certify::find_time_reversal(&gs.system),
            }
            .unwrap();
            let cert = certified(outcome);
            let rel = frob_owned(&(&cert.matrix - &gs.truth)) / scale(frob_owned(&gs.truth));
            assert!(rel <= 1e-8, "{} seed {seed} n {n}: rel {rel}", kind.name());
            // frequency-domain characterizations at the sampled points
            if matches!(
                kind.certificate_kind(),
                CertificateKind::Reciprocal | CertificateKind::IOHamiltonian
            ) {
                assert!(
                    cert.frequency_residual <= 1e-8,
                    "{} seed {seed}: freq {}",
                    kind.name(),
                    cert.frequency_residual
                );
            }
        }
    }

    // two-of-three composition on triple-structured fixtures
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for trial in 0..100 {
        let k = 1 + trial % 3;
        let sys = triple_fixture(&mut rng, k, 1);
        let g = certified(certify::find_reciprocal_g(&sys, true).unwrap());
        let om = certified(certify::find_io_hamiltonian_omega(&sys, true).unwrap());
        let r = certified(certify::find_time_reversal(&sys).unwrap());
        let sc = scale(frob_owned(&om.matrix));
        assert!(frob_owned(&(g.matrix.dot(&r.matrix) - &om.matrix)) <= 1e-8 * sc);
        assert!(frob_owned(&(om.matrix.dot(&r.matrix) - &g.matrix)) <= 1e-8 * sc);
        // each pair reproduces the independently found third certificate
        let r2 = certify::two_of_three(&sys, &g, &om).unwrap();
        assert!(frob_owned(&(&r2.matrix - &r.matrix)) <= 1e-8 * scale(frob_owned(&r.matrix)));
        let om2 = certify::two_of_three(&sys, &g, &r).unwrap();
        assert!(frob_owned(&(&om2.matrix - &om.matrix)) <= 1e-8 * sc);
        let g2 = certify::two_of_three(&sys, &om, &r).unwrap();
        assert!(frob_owned(&(&g2.matrix - &g.matrix)) <= 1e-8 * scale(frob_owned(&g.matrix)));
    }

    pass(5, "round trips: 100 seeds x 5 kinds recovered; two-of-three consistent");
}

/// Subspace calculus laws on 100 random instances.
#[test]
fn criterion_6_subspace_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for trial in 0..100 {
        let n = 1 + trial % 5;
        let k = rng.random_range(0..=2 * n);
        let span = Mat::from_shape_fn((2 * n, k), |_| rng.random_range(-1.0..1.0));
        let sub = LinearSubspace::new(2 * n, &span);
        for kind in [PairingKind::Symplectic, PairingKind::Plus] {
            let cc = geometry::orthogonal_companion(
                &geometry::orthogonal_companion(&sub, kind).unwrap(),
                kind,
            )
            .unwrap();
            assert!(cc.equals(&sub));
        }

        let m = Mat::from_shape_fn((n, n), |_| rng.random_range(-1.0..1.0));
        let sym_graph = LinearSubspace::graph(&(&m + &m.t()));
        assert!(geometry::is_lagrangian(&sym_graph).unwrap());
        let skew_graph = LinearSubspace::graph(&(&m - &m.t()));
        assert!(geometry::is_dirac(&skew_graph).unwrap());

        let separable = geometry::separable_test(&skew_graph).unwrap().is_some();
        let both = geometry::is_dirac(&skew_graph).unwrap()
            && geometry::is_lagrangian(&skew_graph).unwrap();
        assert_eq!(separable, both);

        let rep = geometry::hybrid_representation(&sym_graph).unwrap();
        let sig = Mat::from_diag(&rep.signature);
        let resid = frob_owned(&(sig.dot(&rep.matrix) - rep.matrix.t().dot(&sig)));
        assert!(resid <= 1e-9 * scale(frob_owned(&rep.matrix)));
    }
    pass(6, "subspace suite: involutivity, graph laws, separability, hybrid identity");
}

/// Gramian identities, orthonormality, and the discretized Hankel spectrum.
#[test]
fn criterion_7_gramian_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for trial in 0..40 {
        let n = 1 + trial % 6;
        let drawn = 1 + rng.random_range(0..2usize);
        // the 1e-9 targets below need a well-posed fixture: single-input
        // draws at n >= 5 give controllability Gramians with cond beyond
        // 1e7, so use two inputs there and redraw while the Gramian is
        // badly conditioned
        let m = if n >= 5 { 2 } else { drawn };
        let gs = (0..50u64)
            .map(|offset| {
                generate::generate(GenerateKind::Reciprocal, n, m, 7000 + trial as u64 + 1000 * offset)
                    .unwrap()
            })
            .find(|gs| {
                let (ctrb, _, _) = hankel::compute_gramians(&gs.system).unwrap();
                symcert::matcore::spectral_norm(&ctrb)
                    / symcert::matcore::min_singular_value(&ctrb)
                    <= 1e6
            })
            .expect("no well-conditioned draw");
        let g_cert = certified(certify::find_reciprocal_g(&gs.system, true).unwrap());
        let g = &g_cert.matrix;
        let data = hankel::hankel_spectrum(&gs.system, &g_cert).unwrap();
        let sc = scale(frob_owned(&data.cross));
        assert!(frob_owned(&(data.ctrb.dot(g) - &data.cross)) <= 1e-9 * sc);
        assert!(frob_owned(&(g.dot(&data.cross) - &data.obsv)) <= 1e-9 * sc);
        assert!(
            frob_owned(&(data.cross.dot(&data.cross) - data.ctrb.dot(&data.obsv)))
                <= 1e-9 * scale(sc * sc)
        );

        let ortho = hankel::orthonormality(&data).unwrap();
        assert!(frob_owned(&(&ortho - &eye(n))) <= 1e-9 * scale(n as f64));
    }

    // discretized Hankel spectrum at h = 1e-3, T = 15
    let cells = 15_000;
    let scalar = scalar_relaxation();
    let g_cert = certified(certify::find_reciprocal_g(&scalar, true).unwrap());
    let exact = hankel::hankel_spectrum(&scalar, &g_cert).unwrap();
    let grid = geometry::discretized_hankel_check(&scalar, 15.0, cells).unwrap();
    assert!(grid.symmetric);
    assert!((grid.eigenvalue_estimates[0] - exact.eigenvalues[0]).abs() <= 2e-3);

    let gs = generate::generate(GenerateKind::Reciprocal, 4, 2, 77).unwrap();
    let g_cert = certified(certify::find_reciprocal_g(&gs.system, true).unwrap());
    let exact = hankel::hankel_spectrum(&gs.system, &g_cert).unwrap();
    let grid = geometry::discretized_hankel_check(&gs.system, 15.0, cells).unwrap();
    assert!(grid.symmetric, "residual {}", grid.symmetry_residual);
    for i in 0..4 {
        assert!(
            (grid.eigenvalue_estimates[i] - exact.eigenvalues[i]).abs() <= 2e-3,
            "eig {i}: grid {} exact {}",
            grid.eigenvalue_estimates[i],
            exact.eigenvalues[i]
        );
    }

    pass(7, "Gramian identities, orthonormality, discretized Hankel spectrum to 2e-3");
}

/// Negative controls: things that must fail, fail for the right reason.
#[test]
fn criterion_8_negative_controls() {
    // gyrator-coupled fixture is not reciprocal
    let gyrator = StateSpaceSystem::new(
        array![[0.0, 1.0], [-1.0, -1.0]],
        eye(2),
        eye(2),
        Mat::zeros((2, 2)),
        Array1::ones(2),
    )
    .unwrap();
    assert!(matches!(
        certify::find_reciprocal_g(&gyrator, true).unwrap(),
        CertifyOutcome::Infeasible { .. }
    ));

    // point mass refuses factorization with an explicit reason
    let rep = report::run_canonicalize("point-mass", &point_mass(), FormChoice::Factorize);
    let verdict = &rep.verdicts["factorize"];
    assert_eq!(verdict.value, symcert::doc::VerdictValue::False);
    assert!(verdict.reason.as_ref().unwrap().contains("no PSD storage"));

    // skew feedthrough breaks the signature-symmetry of D
    // (relaxation systems have identity signature, so sigma*D = D here)
    let gs = generate::generate(GenerateKind::Relaxation, 3, 2, 88).unwrap();
    let mut broken = gs.system.clone();
    broken.d = array![[0.0, 0.5], [-0.5, 0.0]];
    let residual = certify::algebraic_residual(&broken, CertificateKind::Reciprocal, &gs.truth);
    assert!(residual > 1e-3);
    assert!(!certify::verify_certificate(
        &broken,
        CertificateKind::Reciprocal,
        &gs.truth
    ));

    // corrupted certificates are rejected on re-verification
    let sys = lc_oscillator();
    let g_cert = certified(certify::find_reciprocal_g(&sys, true).unwrap());
    assert!(certify::verify_certificate(&sys, g_cert.kind, &g_cert.matrix));
    let mut corrupted = g_cert.matrix.clone();
    corrupted[[0, 1]] += 1e-3;
    assert!(!certify::verify_certificate(&sys, g_cert.kind, &corrupted));
    let omega = certified(certify::find_io_hamiltonian_omega(&point_mass(), true).unwrap());
    let mut bad_omega = omega.matrix.clone();
    bad_omega[[1, 0]] -= 1e-3;
    assert!(!certify::verify_certificate(
        &point_mass(),
        omega.kind,
        &bad_omega
    ));

    pass(8, "negative controls all rejected with explicit reasons");
}
