use std::fmt::Write as _;

/// Significant digits in every CSV number.
pub const SIGNIFICANT_DIGITS: usize = 12;
/// Magnitudes below this print as `0`.
pub const PRINT_ZERO_BELOW: f64 = 1e-12;

/// Plain decimal with at most 12 significant digits, trailing zeros trimmed.
/// Never uses exponent notation; `|x| < 1e−12` prints as `0`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.abs() < PRINT_ZERO_BELOW {
        return "0".into();
    }
    // d.ddddddddddde±X, rounded once, then shifted into place
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    } else {
        let int_len = exponent as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            for _ in digits.len()..int_len {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

/// Accumulates `\n`-terminated CSV rows.
#[derive(Debug, Default, Clone)]
pub struct CsvBuffer {
    text: String,
}

impl CsvBuffer {
    pub fn with_header(columns: &[&str]) -> Self {
        let mut buf = Self::default();
        buf.row(columns.iter().map(|s| s.to_string()));
        buf
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        for (i, cell) in cells.into_iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            let _ = write!(self.text, "{cell}");
        }
        self.text.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_plain_decimals() {
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(-2.25), "-2.25");
        assert_eq!(format_number(1234.5), "1234.5");
        assert_eq!(format_number(1e15), "1000000000000000");
    }

    #[test]
    fn keeps_twelve_significant_digits() {
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_number(1.0 / 3.0 * 1e-5), "0.00000333333333333");
    }

    #[test]
    fn tiny_values_print_as_zero() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(9.9e-13), "0");
        assert_eq!(format_number(1e-12), "0.000000000001");
    }

    #[test]
    fn non_finite_values() {
        assert_eq!(format_number(f64::NAN), "nan");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn rounding_carries_into_the_exponent() {
        assert_eq!(format_number(0.9999999999999), "1");
        assert_eq!(format_number(99.99999999999999), "100");
    }

    #[test]
    fn buffer_uses_unix_newlines() {
        let mut b = CsvBuffer::with_header(&["T", "value"]);
        b.row(["0.1".to_string(), "0.2".to_string()]);
        assert_eq!(b.as_str(), "T,value\n0.1,0.2\n");
    }
}
