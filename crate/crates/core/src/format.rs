//! Number formatting for emitted tables: 12 significant digits everywhere.

use num_complex::Complex64;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style rendering: fixed notation for moderate magnitudes, exponent
/// notation otherwise, trailing zeros trimmed.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

/// Rounds to 12 significant digits; JSON output goes through this so the
/// shortest round-trip representation has at most 12 digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    sig(x).parse().unwrap_or(x)
}

/// `re+imi` rendering for CSV cells.
pub fn complex(z: Complex64) -> String {
    let im = sig(z.im);
    if im.starts_with('-') {
        format!("{}{}i", sig(z.re), im)
    } else {
        format!("{}+{}i", sig(z.re), im)
    }
}
