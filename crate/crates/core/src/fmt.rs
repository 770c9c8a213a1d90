//! Deterministic plain-text formatting for report output.
//!
//! All floating-point values in CSV/JSON reports go through
//! [`format_sig`], which renders a fixed number of significant digits and
//! trims trailing fractional zeros, so byte-identical inputs always yield
//! byte-identical report text regardless of platform printf behavior.

/// Significant digits used across report output.
pub const REPORT_SIG_DIGITS: u32 = 6;

/// Render `value` with `sig_digits` significant digits: plain decimal for
/// moderate exponents, otherwise scientific. Output is valid JSON numeric
/// syntax.
pub fn format_sig(value: f64, sig_digits: u32) -> String {
    assert!(sig_digits >= 1, "need at least one significant digit");
    if value.is_nan() {
        return "nan".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if value == 0.0 {
        return "0".to_string();
    }

    // Round once in scientific form; the exponent after rounding drives
    // the presentation (this absorbs carries such as 9.9999 -> 1.0e1).
    let sci = format!("{:.*e}", sig_digits as usize - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("LowerExp always emits an exponent");
    let exp: i32 = exp.parse().expect("LowerExp exponent is an integer");

    if (-4..sig_digits as i32).contains(&exp) {
        let frac = (sig_digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{value:.frac$}"))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

/// Shorthand for [`format_sig`] at the report-wide precision.
pub fn report_num(value: f64) -> String {
    format_sig(value, REPORT_SIG_DIGITS)
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}
