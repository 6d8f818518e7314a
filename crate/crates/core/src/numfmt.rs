//! Locale-free number formatting with a fixed count of significant digits,
//! matching C's `%.{n}g`.

/// Significant digits used in CSV output.
pub const CSV_DIGITS: usize = 12;

/// Formats `x` like `printf("%.{digits}g", x)`.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// [`fmt_g`] with [`CSV_DIGITS`].
pub fn csv(x: f64) -> String {
    fmt_g(x, CSV_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(csv(std::f64::consts::FRAC_PI_4), "0.785398163397");
        assert_eq!(csv(1.0), "1");
        assert_eq!(csv(1e6), "1000000");
        assert_eq!(csv(1e12), "1e+12");
        assert_eq!(csv(123456789012.0), "123456789012");
        assert_eq!(csv(0.0001), "0.0001");
        assert_eq!(csv(0.00001234), "1.234e-05");
        assert_eq!(csv(-2.5), "-2.5");
        assert_eq!(fmt_g(9.9999999, 3), "10");
        assert_eq!(fmt_g(f64::NAN, 3), "nan");
    }
}
