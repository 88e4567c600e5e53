//! Transition amplitudes: a complex value plus the optional expression text it
//! was written as.
//!
//! The expression text is carried verbatim so machine files round-trip exactly;
//! the numeric value is the semantic contract. The constructors here are the
//! single evaluation path for the expression grammar — the file-format parser
//! and the built-in machines both go through them, so equal expressions always
//! yield bit-identical values.

use alloc::string::String;
use alloc::string::ToString;
use num_complex::Complex64;

/// An amplitude with optional source expression.
#[derive(Clone, Debug, PartialEq)]
pub struct Amp {
    pub value: Complex64,
    pub source: Option<String>,
}

impl Amp {
    pub fn new(value: Complex64, source: Option<String>) -> Self {
        Amp { value, source }
    }

    /// Amplitude 1.
    pub fn one() -> Self {
        Amp { value: Complex64::new(1.0, 0.0), source: Some("1".to_string()) }
    }

    /// Integer amplitude.
    pub fn int(n: i64) -> Self {
        Amp { value: Complex64::new(n as f64, 0.0), source: Some(format_i64(n)) }
    }

    /// `1/sqrt(n)`, evaluated as `sqrt(1/n)`.
    pub fn inv_sqrt(n: u64) -> Self {
        Amp {
            value: Complex64::new(inv_sqrt_value(n), 0.0),
            source: Some(alloc::format!("1/sqrt({n})")),
        }
    }
}

/// Value of the grammar factor `1/sqrt(n)` (and `k/sqrt(n)` scales it).
pub fn inv_sqrt_value(n: u64) -> f64 {
    crate::sqrt(1.0 / n as f64)
}

/// Value of the grammar factor `sqrt(n)`.
pub fn sqrt_value(n: u64) -> f64 {
    crate::sqrt(n as f64)
}

fn format_i64(n: i64) -> String {
    alloc::format!("{n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inv_sqrt_two_matches_reference_digits() {
        // sqrt(0.5) is the correctly rounded double for 1/sqrt(2)
        assert_eq!(Amp::inv_sqrt(2).value.re, 0.7071067811865476);
        assert_eq!(alloc::format!("{:.17}", Amp::inv_sqrt(2).value.re), "0.70710678118654757");
    }

    #[test]
    fn inv_sqrt_three_is_close() {
        let v = Amp::inv_sqrt(3).value.re;
        let exact = 0.577350269189625764509148780501957456_f64;
        assert!(crate::abs(v - exact) / exact < 1e-15);
    }
}
