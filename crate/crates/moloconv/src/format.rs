//! Numeric text output: 12 significant digits, `%g`-style layout.

/// Formats a finite value with 12 significant digits, ties to even, trailing
/// zeros trimmed. Plain notation for decimal exponents in `[-4, 12)`,
/// scientific otherwise. Negative zero prints as `0`.
pub fn num(x: f64) -> String {
    debug_assert!(x.is_finite(), "non-finite value reached the formatter");
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if mantissa.starts_with('-') { "-" } else { "" };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    if (-4..12).contains(&exp) {
        let (int, frac) = if exp >= 0 {
            let split = exp as usize + 1;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
        };
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let frac = digits[1..].trim_end_matches('0');
        let dot = if frac.is_empty() { "" } else { "." };
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{}{dot}{frac}e{esign}{:02}", &digits[..1], exp.abs())
    }
}

/// `x` rounded to the precision that [`num`] prints.
pub fn round(x: f64) -> f64 {
    if x.is_finite() {
        num(x).parse().expect("formatter output parses")
    } else {
        x
    }
}
