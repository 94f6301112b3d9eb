//! Number formatting for the text file formats.

/// Format `x` with `digits` significant digits, like C's `%.{digits}g`.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
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

/// Shortest round-trip decimal for `x`, padded to at least `min_decimals`
/// digits after the point.
pub fn padded(x: f64, min_decimals: usize) -> String {
    let s = format!("{x}");
    let decimals = s.split_once('.').map_or(0, |(_, frac)| frac.len());
    if s.contains('e') || decimals >= min_decimals {
        s
    } else {
        format!("{:.*}", min_decimals, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(-1.0 / 3.0, 12), "-0.333333333333");
        assert_eq!(sig(2.0, 12), "2");
        assert_eq!(sig(123456.5, 12), "123456.5");
        assert_eq!(sig(1.5e-9, 12), "1.5e-9");
        assert_eq!(sig(0.0, 12), "0");
    }

    #[test]
    fn padding_keeps_round_trip() {
        assert_eq!(padded(14.5, 9), "14.500000000");
        let g = 14.134725141734695;
        assert_eq!(padded(g, 9).parse::<f64>().unwrap(), g);
    }
}
