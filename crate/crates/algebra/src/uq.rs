//! Relations of the dual algebras `U_q(su(2))` and `U_q(e(2))`, kept as
//! reference data only.

/// Defining relations of `U_q(su(2))` with generators `k`, `E+`, `E-`.
pub const UQ_SU2_RELATIONS: &[&str] = &[
    "k E+ = q E+ k",
    "k E- = q^-1 E- k",
    "[E+, E-] = (k^2 - k^-2) / (q - q^-1)",
];

/// Hopf maps of `U_q(su(2))`.
pub const UQ_SU2_HOPF: &[&str] = &[
    "Delta(k) = k (x) k",
    "Delta(E+-) = E+- (x) k + k^-1 (x) E+-",
    "eps(k) = 1, eps(E+-) = 0",
    "S(k) = k^-1, S(E+-) = -q^-+1 E+-",
];

/// Defining relations of `U_q(e(2))` with generators `k`, `E+`, `E-`.
pub const UQ_E2_RELATIONS: &[&str] = &["k E+ = q E+ k", "k E- = q^-1 E- k", "[E+, E-] = 0"];
