//! Report drivers behind the CLI subcommands: run an analysis on a parsed
//! document and assemble a deterministic ReportDocument. Precondition
//! failures (non-minimal, non-Hurwitz, unsupported regimes) become
//! "unknown" verdicts with reasons, never errors.

use serde_json::json;

use crate::certify::{self, Certificate, CertifyError, CertifyOutcome};
use crate::doc::{
    matrix_rows, CertificateDocument, GroundTruthDocument, ReportDocument, SystemDocument,
    Verdict,
};
use crate::forms;
use crate::generate::{self, GenerateError, GenerateKind};
use crate::geometry::{self, LinearSubspace};
use crate::hankel;
use crate::lti::StateSpaceSystem;
use crate::passivity::{self, Objective, PassivityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Reciprocal,
    IOHamiltonian,
    SignedReversible,
    Reversible,
    Lossless,
    Passive,
    Relaxation,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Reciprocal => "reciprocal",
            Property::IOHamiltonian => "iohamiltonian",
            Property::SignedReversible => "signed-reversible",
            Property::Reversible => "reversible",
            Property::Lossless => "lossless",
            Property::Passive => "passive",
            Property::Relaxation => "relaxation",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Property>> {
        match s {
            "reciprocal" => Some(vec![Property::Reciprocal]),
            "iohamiltonian" => Some(vec![Property::IOHamiltonian]),
            "signed-reversible" => Some(vec![Property::SignedReversible]),
            "reversible" => Some(vec![Property::Reversible]),
            "lossless" => Some(vec![Property::Lossless]),
            "passive" => Some(vec![Property::Passive]),
            "relaxation" => Some(vec![Property::Relaxation]),
            "all" => Some(Property::all().to_vec()),
            _ => None,
        }
    }

    pub fn all() -> [Property; 7] {
        [
            Property::Reciprocal,
            Property::IOHamiltonian,
            Property::SignedReversible,
            Property::Reversible,
            Property::Lossless,
            Property::Passive,
            Property::Relaxation,
        ]
    }
}

fn certify_error_verdict(err: &CertifyError) -> Verdict {
    match err {
        CertifyError::NotMinimal => Verdict::unknown("system is not minimal"),
        other => Verdict::unknown(other.to_string()),
    }
}

fn outcome_verdict(
    report: &mut ReportDocument,
    key: &str,
    outcome: Result<CertifyOutcome, CertifyError>,
) -> Option<Certificate> {
    match outcome {
        Ok(CertifyOutcome::Certified(cert)) => {
            report.verdicts.insert(
                key.into(),
                Verdict::yes(cert.algebraic_residual, Some(cert.frequency_residual)),
            );
            report
                .certificates
                .insert(key.into(), CertificateDocument::from_certificate(&cert));
            Some(cert)
        }
        Ok(CertifyOutcome::Infeasible { residual, reason }) => {
            report
                .verdicts
                .insert(key.into(), Verdict::no(reason, Some(residual)));
            None
        }
        Ok(CertifyOutcome::NonUnique { family_dim }) => {
            report.verdicts.insert(
                key.into(),
                Verdict::unknown(format!(
                    "certificate family has dimension {family_dim}; not unique"
                )),
            );
            None
        }
        Err(e) => {
            report.verdicts.insert(key.into(), certify_error_verdict(&e));
            None
        }
    }
}

fn passive_verdict(report: &mut ReportDocument, sys: &StateSpaceSystem) {
    match passivity::kyp_storage(sys, Objective::Min) {
        Ok(storage) => {
            let min_slack = storage
                .slack_spectrum
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            report
                .verdicts
                .insert("passive".into(), Verdict::yes(min_slack.max(0.0), None));
            report.forms.insert(
                "passive_storage".into(),
                json!({
                    "q": matrix_rows(&storage.q),
                    "slack_spectrum": storage.slack_spectrum.to_vec(),
                    "lossless": storage.lossless,
                }),
            );
        }
        Err(PassivityError::NotPassive) => {
            report.verdicts.insert(
                "passive".into(),
                Verdict::no("no PSD storage matrix exists", None),
            );
        }
        Err(e) => {
            report
                .verdicts
                .insert("passive".into(), Verdict::unknown(e.to_string()));
        }
    }
}

fn relaxation_verdict(report: &mut ReportDocument, sys: &StateSpaceSystem) {
    match passivity::relaxation_test(sys) {
        Ok(v) => {
            let verdict = if v.is_relaxation {
                Verdict::yes(0.0, None)
            } else {
                Verdict::no(v.note.clone(), None)
            };
            report.verdicts.insert("relaxation".into(), verdict);
            if let Some(g) = &v.g {
                report.forms.insert(
                    "relaxation".into(),
                    json!({
                        "g": matrix_rows(g),
                        "potential_psd": v.potential_psd,
                        "slack_min_eig": v.slack_min_eig,
                    }),
                );
            }
        }
        Err(e) => {
            report
                .verdicts
                .insert("relaxation".into(), Verdict::unknown(e.to_string()));
        }
    }
}

pub fn run_certify(input: &str, sys: &StateSpaceSystem, props: &[Property]) -> ReportDocument {
    let mut report = ReportDocument::new("certify", input);
    for &p in props {
        match p {
            Property::Reciprocal => {
                outcome_verdict(
                    &mut report,
                    "reciprocal",
                    certify::find_reciprocal_g(sys, true),
                );
            }
            Property::IOHamiltonian => {
                outcome_verdict(
                    &mut report,
                    "iohamiltonian",
                    certify::find_io_hamiltonian_omega(sys, true),
                );
            }
            Property::SignedReversible => {
                outcome_verdict(
                    &mut report,
                    "signed-reversible",
                    certify::find_signed_time_reversal(sys),
                );
            }
            Property::Reversible => {
                outcome_verdict(&mut report, "reversible", certify::find_time_reversal(sys));
            }
            Property::Lossless => {
                outcome_verdict(&mut report, "lossless", certify::find_cyclo_lossless_q(sys));
            }
            Property::Passive => passive_verdict(&mut report, sys),
            Property::Relaxation => relaxation_verdict(&mut report, sys),
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormChoice {
    PseudoGradient,
    PortHamiltonian,
    Relaxation,
    Factorize,
    NormalForm,
}

impl FormChoice {
    pub fn name(self) -> &'static str {
        match self {
            FormChoice::PseudoGradient => "pseudo-gradient",
            FormChoice::PortHamiltonian => "port-hamiltonian",
            FormChoice::Relaxation => "relaxation",
            FormChoice::Factorize => "factorize",
            FormChoice::NormalForm => "normal-form",
        }
    }

    pub fn parse(s: &str) -> Option<FormChoice> {
        match s {
            "pseudo-gradient" => Some(FormChoice::PseudoGradient),
            "port-hamiltonian" => Some(FormChoice::PortHamiltonian),
            "relaxation" => Some(FormChoice::Relaxation),
            "factorize" => Some(FormChoice::Factorize),
            "normal-form" => Some(FormChoice::NormalForm),
            _ => None,
        }
    }
}

fn require_certificate(
    report: &mut ReportDocument,
    key: &str,
    outcome: Result<CertifyOutcome, CertifyError>,
) -> Option<Certificate> {
    let cert = outcome_verdict(report, key, outcome);
    if cert.is_none() {
        report
            .notes
            .push(format!("prerequisite certificate `{key}` unavailable"));
    }
    cert
}

pub fn run_canonicalize(input: &str, sys: &StateSpaceSystem, form: FormChoice) -> ReportDocument {
    let mut report = ReportDocument::new("canonicalize", input);
    match form {
        FormChoice::PseudoGradient => {
            let Some(g) =
                require_certificate(&mut report, "reciprocal", certify::find_reciprocal_g(sys, true))
            else {
                return report;
            };
            match forms::to_pseudo_gradient(sys, &g) {
                Ok(f) => {
                    report
                        .verdicts
                        .insert("pseudo-gradient".into(), Verdict::yes(0.0, None));
                    report.forms.insert(
                        "pseudo-gradient".into(),
                        json!({
                            "g": matrix_rows(&f.g),
                            "p": matrix_rows(&f.p),
                            "c": matrix_rows(&f.c),
                            "d": matrix_rows(&f.d),
                        }),
                    );
                }
                Err(e) => {
                    report
                        .verdicts
                        .insert("pseudo-gradient".into(), Verdict::no(e.to_string(), None));
                }
            }
        }
        FormChoice::PortHamiltonian => {
            let Some(g) =
                require_certificate(&mut report, "reciprocal", certify::find_reciprocal_g(sys, true))
            else {
                return report;
            };
            let result = passivity::kyp_storage(sys, Objective::Min)
                .and_then(|q0| passivity::compatible_q(sys, &g, &q0))
                .map_err(|e| e.to_string())
                .and_then(|q| {
                    forms::to_port_hamiltonian(sys, &g, &q).map_err(|e| e.to_string())
                });
            match result {
                Ok(f) => {
                    report
                        .verdicts
                        .insert("port-hamiltonian".into(), Verdict::yes(0.0, None));
                    report.forms.insert(
                        "port-hamiltonian".into(),
                        json!({
                            "t": matrix_rows(&f.t),
                            "q1": matrix_rows(&f.q1),
                            "q2": matrix_rows(&f.q2),
                            "p1": matrix_rows(&f.p1),
                            "p2": matrix_rows(&f.p2),
                            "p_c": matrix_rows(&f.p_c),
                            "c1": matrix_rows(&f.c1),
                            "c2": matrix_rows(&f.c2),
                            "a_z": matrix_rows(&f.assembled.a),
                            "b_z": matrix_rows(&f.assembled.b),
                            "c_z": matrix_rows(&f.assembled.c),
                        }),
                    );
                }
                Err(reason) => {
                    report
                        .verdicts
                        .insert("port-hamiltonian".into(), Verdict::no(reason, None));
                }
            }
        }
        FormChoice::Relaxation => {
            let Some(g) =
                require_certificate(&mut report, "reciprocal", certify::find_reciprocal_g(sys, true))
            else {
                return report;
            };
            match forms::relaxation_port_form(sys, &g) {
                Ok(f) => {
                    report
                        .verdicts
                        .insert("relaxation".into(), Verdict::yes(0.0, None));
                    report.forms.insert(
                        "relaxation".into(),
                        json!({
                            "q1": matrix_rows(&f.q1),
                            "p1": matrix_rows(&f.p1),
                            "a_z": matrix_rows(&f.assembled.a),
                            "b_z": matrix_rows(&f.assembled.b),
                            "c_z": matrix_rows(&f.assembled.c),
                        }),
                    );
                }
                Err(e) => {
                    report
                        .verdicts
                        .insert("relaxation".into(), Verdict::no(e.to_string(), None));
                }
            }
        }
        FormChoice::Factorize => {
            let Some(omega) = require_certificate(
                &mut report,
                "iohamiltonian",
                certify::find_io_hamiltonian_omega(sys, true),
            ) else {
                return report;
            };
            let result = passivity::io_ham_storage_w(sys, &omega);
            let storage = match result {
                Ok(w) => w,
                Err(PassivityError::Indefinite) => {
                    report.verdicts.insert(
                        "factorize".into(),
                        Verdict::no(
                            "no PSD storage: the generating functional is sign-indefinite, \
                             so the transfer function admits no factorization",
                            None,
                        ),
                    );
                    return report;
                }
                Err(e) => {
                    report
                        .verdicts
                        .insert("factorize".into(), Verdict::unknown(e.to_string()));
                    return report;
                }
            };
            let built = forms::nonneg_normal_form(sys, &omega, &storage)
                .map_err(|e| e.to_string())
                .and_then(|nf| {
                    forms::spectral_factorize(&nf.blocks)
                        .map(|f| (nf, f))
                        .map_err(|e| e.to_string())
                });
            match built {
                Ok((nf, f)) => {
                    report
                        .verdicts
                        .insert("factorize".into(), Verdict::yes(0.0, None));
                    report.forms.insert(
                        "factorize".into(),
                        json!({
                            "w": matrix_rows(&storage.q),
                            "t": matrix_rows(&nf.t),
                            "f": matrix_rows(&nf.blocks.f),
                            "p": matrix_rows(&nf.blocks.p),
                            "s": matrix_rows(&nf.blocks.s),
                            "h": matrix_rows(&nf.blocks.h),
                            "x": matrix_rows(&f.x),
                            "m_a": matrix_rows(&f.m_realization.a),
                            "m_b": matrix_rows(&f.m_realization.b),
                            "m_c": matrix_rows(&f.m_realization.c),
                        }),
                    );
                }
                Err(reason) => {
                    report
                        .verdicts
                        .insert("factorize".into(), Verdict::no(reason, None));
                }
            }
        }
        FormChoice::NormalForm => {
            let Some(omega) = require_certificate(
                &mut report,
                "iohamiltonian",
                certify::find_io_hamiltonian_omega(sys, true),
            ) else {
                return report;
            };
            let Some(r) = require_certificate(
                &mut report,
                "signed-reversible",
                certify::find_signed_time_reversal(sys),
            ) else {
                return report;
            };
            match forms::time_reversible_normal_form(sys, &omega, &r) {
                Ok(f) => {
                    report
                        .verdicts
                        .insert("normal-form".into(), Verdict::yes(0.0, None));
                    report.forms.insert(
                        "normal-form".into(),
                        json!({
                            "t": matrix_rows(&f.t),
                            "p": matrix_rows(&f.p),
                            "q": matrix_rows(&f.q),
                            "b": matrix_rows(&f.b),
                        }),
                    );
                }
                Err(e) => {
                    report
                        .verdicts
                        .insert("normal-form".into(), Verdict::no(e.to_string(), None));
                }
            }
        }
    }
    report
}

pub fn run_hankel(
    input: &str,
    sys: &StateSpaceSystem,
    grid: Option<(f64, f64)>,
) -> ReportDocument {
    let mut report = ReportDocument::new("hankel", input);
    let Some(g) =
        require_certificate(&mut report, "reciprocal", certify::find_reciprocal_g(sys, true))
    else {
        return report;
    };
    let data = match hankel::hankel_spectrum(sys, &g) {
        Ok(d) => d,
        Err(e) => {
            report
                .verdicts
                .insert("hankel".into(), Verdict::unknown(e.to_string()));
            return report;
        }
    };
    let span = match grid {
        Some((t, _)) => t,
        None => match hankel::default_grid(&sys.a) {
            Ok((t, _)) => t,
            Err(e) => {
                report
                    .verdicts
                    .insert("hankel".into(), Verdict::unknown(e.to_string()));
                return report;
            }
        },
    };
    // a modest fixed sample count keeps the report deterministic and cheap
    let times = hankel::uniform_times(span, 25);
    let mercer = hankel::mercer_residual(sys, &data, &times, None).unwrap_or(f64::NAN);
    let ortho = hankel::orthonormality(&data)
        .map(|m| {
            let n = m.nrows();
            crate::matcore::frob_owned(&(&m - &crate::matcore::eye(n)))
        })
        .unwrap_or(f64::NAN);
    report
        .verdicts
        .insert("hankel".into(), Verdict::yes(mercer, None));
    report.spectral = Some(json!({
        "eigenvalues": data.eigenvalues.to_vec(),
        "ctrb": matrix_rows(&data.ctrb),
        "obsv": matrix_rows(&data.obsv),
        "cross": matrix_rows(&data.cross),
        "mercer_residual": mercer,
        "orthonormality_residual": ortho,
        "horizon": span,
        "sample_count": times.len(),
    }));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryTest {
    Lagrangian,
    Dirac,
    Separable,
    Hybrid,
}

impl GeometryTest {
    pub fn parse(s: &str) -> Option<GeometryTest> {
        match s {
            "lagrangian" => Some(GeometryTest::Lagrangian),
            "dirac" => Some(GeometryTest::Dirac),
            "separable" => Some(GeometryTest::Separable),
            "hybrid" => Some(GeometryTest::Hybrid),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeometryTest::Lagrangian => "lagrangian",
            GeometryTest::Dirac => "dirac",
            GeometryTest::Separable => "separable",
            GeometryTest::Hybrid => "hybrid",
        }
    }
}

pub fn run_geometry(input: &str, sub: &LinearSubspace, test: GeometryTest) -> ReportDocument {
    let mut report = ReportDocument::new("geometry", input);
    let key = test.name().to_string();
    match test {
        GeometryTest::Lagrangian => match geometry::is_lagrangian(sub) {
            Ok(true) => {
                report.verdicts.insert(key, Verdict::yes(0.0, None));
            }
            Ok(false) => {
                report.verdicts.insert(
                    key,
                    Verdict::no("subspace differs from its symplectic companion", None),
                );
            }
            Err(e) => {
                report.verdicts.insert(key, Verdict::unknown(e.to_string()));
            }
        },
        GeometryTest::Dirac => match geometry::is_dirac(sub) {
            Ok(true) => {
                report.verdicts.insert(key, Verdict::yes(0.0, None));
            }
            Ok(false) => {
                report.verdicts.insert(
                    key,
                    Verdict::no("subspace differs from its plus-pairing companion", None),
                );
            }
            Err(e) => {
                report.verdicts.insert(key, Verdict::unknown(e.to_string()));
            }
        },
        GeometryTest::Separable => match geometry::separable_test(sub) {
            Ok(Some(k_sub)) => {
                report.verdicts.insert(key.clone(), Verdict::yes(0.0, None));
                report.forms.insert(
                    key,
                    json!({ "k_basis": matrix_rows(k_sub.basis()) }),
                );
            }
            Ok(None) => {
                report
                    .verdicts
                    .insert(key, Verdict::no("cross pairing does not vanish", None));
            }
            Err(e) => {
                report.verdicts.insert(key, Verdict::no(e.to_string(), None));
            }
        },
        GeometryTest::Hybrid => match geometry::hybrid_representation(sub) {
            Ok(rep) => {
                report.verdicts.insert(key.clone(), Verdict::yes(0.0, None));
                report.forms.insert(
                    key,
                    json!({
                        "flow_set": rep.flow_set,
                        "matrix": matrix_rows(&rep.matrix),
                        "signature": rep.signature.to_vec(),
                    }),
                );
            }
            Err(e) => {
                report.verdicts.insert(key, Verdict::no(e.to_string(), None));
            }
        },
    }
    report
}

/// Record a user-supplied feasibility tolerance and demote any "true"
/// verdict whose residuals exceed it, keeping the invariant that true
/// verdicts have residuals below the recorded tolerance.
pub fn apply_tolerance(report: &mut ReportDocument, tol: f64) {
    report.tolerances.feasibility = tol;
    for verdict in report.verdicts.values_mut() {
        if verdict.value != crate::doc::VerdictValue::True {
            continue;
        }
        let worst = verdict
            .algebraic_residual
            .unwrap_or(0.0)
            .max(verdict.frequency_residual.unwrap_or(0.0));
        if worst > tol {
            verdict.value = crate::doc::VerdictValue::False;
            verdict.reason = Some(format!(
                "residual {worst:.3e} exceeds requested tolerance {tol:.3e}"
            ));
        }
    }
}

/// Build the SystemDocument for a generated fixture, ground truth embedded.
pub fn run_generate(
    kind: GenerateKind,
    n: usize,
    m: usize,
    seed: u64,
) -> Result<SystemDocument, GenerateError> {
    let gs = generate::generate(kind, n, m, seed)?;
    let mut doc = SystemDocument::from_system(
        &format!("{}-n{}-m{}-seed{}", kind.name(), n, m, seed),
        &gs.system,
    );
    doc.ground_truth = Some(GroundTruthDocument {
        kind: gs.kind.certificate_kind().name().to_string(),
        matrix: matrix_rows(&gs.truth),
    });
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::VerdictValue;
    use crate::lti::{lc_oscillator, point_mass, scalar_relaxation};
    use ndarray::array;

    #[test]
    fn certify_point_mass_iohamiltonian() {
        let sys = point_mass();
        let rep = run_certify("point-mass", &sys, &[Property::IOHamiltonian]);
        let v = &rep.verdicts["iohamiltonian"];
        assert_eq!(v.value, VerdictValue::True);
        let cert = &rep.certificates["iohamiltonian"];
        let expect = [[0.0, -1.0], [1.0, 0.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((cert.matrix[i][j] - expect[i][j]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn certify_scalar_relaxation() {
        let sys = scalar_relaxation();
        let rep = run_certify("scalar", &sys, &[Property::Relaxation]);
        assert_eq!(rep.verdicts["relaxation"].value, VerdictValue::True);
        let g = &rep.forms["relaxation"]["g"];
        assert!((g[0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certify_all_never_panics_and_is_deterministic() {
        for sys in [point_mass(), lc_oscillator(), scalar_relaxation()] {
            let a = run_certify("fixture", &sys, &Property::all());
            let b = run_certify("fixture", &sys, &Property::all());
            assert_eq!(a.to_json(), b.to_json());
            assert_eq!(a.verdicts.len(), 7);
        }
    }

    #[test]
    fn canonicalize_factorize_refusal_for_point_mass() {
        let sys = point_mass();
        let rep = run_canonicalize("point-mass", &sys, FormChoice::Factorize);
        let v = &rep.verdicts["factorize"];
        assert_eq!(v.value, VerdictValue::False);
        assert!(v.reason.as_ref().unwrap().contains("no PSD storage"));
    }

    #[test]
    fn canonicalize_factorize_fixture() {
        let sys = StateSpaceSystem::new(
            array![[0.0, -1.0], [-1.0, 0.0]],
            array![[0.0], [1.0]],
            array![[1.0, 0.0]],
            array![[0.0]],
            array![1.0],
        )
        .unwrap();
        let rep = run_canonicalize("fixture", &sys, FormChoice::Factorize);
        assert_eq!(rep.verdicts["factorize"].value, VerdictValue::True);
        let x = &rep.forms["factorize"]["x"];
        assert!((x[0][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
        let ma = &rep.forms["factorize"]["m_a"];
        assert!((ma[0][0].as_f64().unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn canonicalize_port_hamiltonian_lc() {
        let sys = lc_oscillator();
        let rep = run_canonicalize("lc", &sys, FormChoice::PortHamiltonian);
        assert_eq!(rep.verdicts["port-hamiltonian"].value, VerdictValue::True);
        let form = &rep.forms["port-hamiltonian"];
        assert_eq!(form["q1"].as_array().unwrap().len(), 1);
        assert_eq!(form["q2"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn hankel_scalar_report() {
        let sys = scalar_relaxation();
        let rep = run_hankel("scalar", &sys, None);
        assert_eq!(rep.verdicts["hankel"].value, VerdictValue::True);
        let spectral = rep.spectral.unwrap();
        let lam = spectral["eigenvalues"][0].as_f64().unwrap();
        assert!((lam - 0.5).abs() < 1e-12);
        assert!(spectral["mercer_residual"].as_f64().unwrap() <= 1e-12);
    }

    #[test]
    fn hankel_non_hurwitz_is_unknown() {
        let sys = lc_oscillator();
        let rep = run_hankel("lc", &sys, None);
        assert_eq!(rep.verdicts["hankel"].value, VerdictValue::Unknown);
    }

    #[test]
    fn geometry_reports() {
        let sym = LinearSubspace::graph(&array![[2.0]]);
        let rep = run_geometry("graph", &sym, GeometryTest::Lagrangian);
        assert_eq!(rep.verdicts["lagrangian"].value, VerdictValue::True);

        let skew = LinearSubspace::graph(&array![[0.0, 1.0], [-1.0, 0.0]]);
        let rep = run_geometry("skew", &skew, GeometryTest::Dirac);
        assert_eq!(rep.verdicts["dirac"].value, VerdictValue::True);
        let rep = run_geometry("skew", &skew, GeometryTest::Separable);
        assert_eq!(rep.verdicts["separable"].value, VerdictValue::False);
    }

    #[test]
    fn generate_document_round_trip() {
        let doc = run_generate(GenerateKind::Relaxation, 3, 1, 7).unwrap();
        let sys = doc.to_system().unwrap();
        let rep = run_certify(&doc.name, &sys, &[Property::Relaxation]);
        assert_eq!(rep.verdicts["relaxation"].value, VerdictValue::True);
        assert!(doc.ground_truth.is_some());
    }
}
