//! Acceptance criteria live in `tests/acceptance.rs`; run with `cargo test -p zernike-validation --test acceptance`.
