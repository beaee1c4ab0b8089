//! Independent numerical checks: a Numerov shooting solver for the exact and
//! approximated radial equations, asymptotic phase fits, the embedded
//! energy table and the search for its unit convention.

pub mod calibrate;
pub mod numerov;
pub mod report;
pub mod table;

pub use calibrate::{calibrate_table, CalibrationResult, IndexMap, TableConvention, TABLE_ONE};
pub use numerov::{
    count_nodes, numeric_phase, numerov_eigen, numerov_eigenstate, PhaseFit, RadialTrace,
    SolverConfig,
};
pub use report::{validate_table, ValidationReport, ValidationRow};
pub use table::{table_one, TableRow};
