//! Float formatting shared by the CSV and JSON emitters.

/// `printf("%.15g")`: 15 significant digits, trailing zeros trimmed,
/// exponent notation outside `[1e-4, 1e15)`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..15).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (14 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_float;

    #[test]
    fn matches_printf_g15() {
        // reference strings from C printf("%.15g")
        let cases = [
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333333"),
            (0.552920880484997, "0.552920880484997"),
            (1.0986122886681098, "1.09861228866811"),
            (123456.0, "123456"),
            (1e-7, "1e-07"),
            (1.5e-5, "1.5e-05"),
            (0.00012345, "0.00012345"),
            (1e15, "1e+15"),
            (-2.5, "-2.5"),
            (0.0, "0"),
            (9.999999999999999e-1, "1"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_float(x), want, "{x:e}");
        }
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }
}
