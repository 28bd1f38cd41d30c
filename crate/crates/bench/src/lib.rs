//! Fixed inputs shared by the benchmarks in `benches/`.

use mellin_core::phase::{random_operator, Profile};
use mellin_core::{DiffOp, LaurentPolynomial, LocalDiffOp, TruncatedSeries};

/// A reproducible batch of operators.
pub fn operators(profile: Profile, count: u64) -> Vec<DiffOp> {
    (0..count).map(|s| random_operator(s, profile)).collect()
}

/// `(x^2 + 3x^3) θ^3 - x θ^2 + 2 θ - x^4`, order 3 with irregularity 2.
pub fn local_operator() -> LocalDiffOp {
    LocalDiffOp::new(vec![
        LaurentPolynomial::from_coeffs(&[0, 0, 0, 0, -1]),
        LaurentPolynomial::from_coeffs(&[2]),
        LaurentPolynomial::from_coeffs(&[0, -1]),
        LaurentPolynomial::from_coeffs(&[0, 0, 1, 3]),
    ])
    .expect("nonzero")
}

/// `1 + 2u + 3u^2 + … + n u^{n-1}` known to `u^n`.
pub fn dense_series(n: i64) -> TruncatedSeries {
    let coeffs: Vec<i64> = (1..=n).collect();
    TruncatedSeries::from_poly(&LaurentPolynomial::from_coeffs(&coeffs), n)
}
