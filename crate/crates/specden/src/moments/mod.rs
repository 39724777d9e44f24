//! Moment tables (exact, symbolic-in-N, negative-index) and 1/N-expansion
//! coefficient tables, with the printed recursion families as fixtures.

pub mod fixtures;
pub mod tables;

pub use fixtures::{
    check_coeff_fixture, check_jue_delta_reciprocity, check_jue_odd_l_vanish,
    check_lue_reciprocity, check_recurrence_fixture, check_zero_sum, CoeffFixture, FixtureReport,
    RecurrenceFixture,
};
pub use tables::{
    coeff_table, moments_exact, moments_exact_symbolic, moments_negative, CoeffShape, CoeffTable,
    MomentTable,
};
