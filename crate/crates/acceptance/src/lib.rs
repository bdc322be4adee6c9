//! Holds the acceptance suite in `tests/acceptance.rs`; kept as its own
//! package so its report runs after every other test target.
