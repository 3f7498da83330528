//! Holds the acceptance target only; see `tests/acceptance.rs`.
