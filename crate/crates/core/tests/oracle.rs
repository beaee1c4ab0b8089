mod common;

use hellmann::bound::{bound_energy, QuantumNumbers};
use hellmann::model::ApproxScheme;
use hellmann::oracle::{
    calibrate_table, numerov_eigen, numerov_eigenstate, table_one, validate_table, SolverConfig,
    TABLE_ONE,
};
use hellmann::{PotentialParams, Variant};
use rayon::prelude::*;

#[test]
fn eigenstates_have_the_requested_node_count() {
    let p = PotentialParams::natural(1.0, 0.5, 0.01).unwrap();
    let cfg = SolverConfig::default();
    for n in 0..=4 {
        for ell in [0, 2] {
            let qn = QuantumNumbers::new(n, ell);
            let (_, trace) =
                numerov_eigenstate(&p, qn, ApproxScheme::PekerisCentrifugal, &cfg).unwrap();
            assert_eq!(trace.sign_changes(1e-6), n as usize, "{qn:?}");
        }
    }
}

#[test]
fn approximation_error_grows_with_screening() {
    let cfg = SolverConfig::default();
    let states = [
        QuantumNumbers::new(0, 0),
        QuantumNumbers::new(1, 1),
        QuantumNumbers::new(2, 2),
    ];
    states.par_iter().for_each(|&qn| {
        let errs: Vec<f64> = [0.001, 0.01, 0.1]
            .iter()
            .map(|&l| {
                let p = TABLE_ONE.params(1.0, 0.5, l).unwrap();
                let exact = numerov_eigen(&p, qn, ApproxScheme::ExactCentrifugal, &cfg)
                    .unwrap()
                    .energy
                    .re;
                let analytic = bound_energy(&p, Variant::RadialHermitian, qn)
                    .unwrap()
                    .energy
                    .re;
                (exact - analytic).abs()
            })
            .collect();
        assert!(errs[0] < errs[1] && errs[1] < errs[2], "{qn:?}: {errs:?}");
    });
}

#[test]
fn approximated_equation_oracle_agrees_with_closed_form() {
    let cfg = SolverConfig::default();
    let p = PotentialParams::natural(1.0, -0.5, 0.05).unwrap();
    for qn in [
        QuantumNumbers::new(0, 0),
        QuantumNumbers::new(2, 1),
        QuantumNumbers::new(1, 3),
    ] {
        let num = numerov_eigen(&p, qn, ApproxScheme::PekerisCentrifugal, &cfg)
            .unwrap()
            .energy
            .re;
        let ana = bound_energy(&p, Variant::RadialHermitian, qn)
            .unwrap()
            .energy
            .re;
        assert!(common::rel(num, ana) <= 1e-6, "{qn:?}: {num} vs {ana}");
    }
}

#[test]
fn table_is_embedded_with_all_columns() {
    let rows = table_one();
    assert_eq!(rows.len(), 40);
    let row = rows
        .iter()
        .find(|r| r.b == -0.5 && r.lambda == 0.001 && r.n == 1 && r.ell == 0)
        .unwrap();
    assert_eq!(row.present, -2.25050);
    let row = rows
        .iter()
        .find(|r| r.b == 0.5 && r.lambda == 0.01 && r.n == 4 && r.ell == 3)
        .unwrap();
    assert_eq!(row.present, -0.02690);
}

#[test]
fn calibration_selects_the_frozen_convention() {
    let c = calibrate_table();
    assert_eq!(c.convention, TABLE_ONE);
    assert!(c.max_deviation < 1e-5);
}

#[test]
fn validation_report_contains_reference_row() {
    let report = validate_table(&TABLE_ONE, None).unwrap();
    let row = report
        .rows
        .iter()
        .find(|r| r.id == "b=0.5,lambda=0.001,n=1,l=0")
        .unwrap();
    assert_eq!(row.table_value, -0.25150);
    assert!(row.dev_analytic.abs() < 1e-5);
    assert!(report.blocks.iter().all(|b| b.pass));
}

#[test]
fn invalid_solver_settings_are_domain_errors() {
    let p = PotentialParams::natural(1.0, 0.5, 0.1).unwrap();
    let qn = QuantumNumbers::new(0, 0);
    for cfg in [
        SolverConfig::default().with_step(0.0),
        SolverConfig {
            tolerance: -1.0,
            ..SolverConfig::default()
        },
        SolverConfig {
            energy_bracket: Some((1.0, -1.0)),
            ..SolverConfig::default()
        },
    ] {
        let e = numerov_eigen(&p, qn, ApproxScheme::PekerisCentrifugal, &cfg).unwrap_err();
        assert_eq!(e.kind(), hellmann::ErrorKind::Domain);
    }
}
