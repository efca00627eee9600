//! CSV tables with a fixed number rendering.

use std::io::Write;

use crate::error::CliError;

/// Significant digits of every float written to CSV.
pub const SIG_DIGITS: usize = 12;

/// Renders `x` like C's `%.12g`: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-4, 1e12)`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1640.0 / 9.0, "182.222222222"),
            (2.0 / 3.0, "0.666666666667"),
            (1.0, "1"),
            (-0.5, "-0.5"),
            (12.0, "12"),
            (1e-7, "1e-7"),
            (1.5e-5, "1.5e-5"),
            (1.25e-4, "0.000125"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e12"),
            (0.999_999_999_999_9, "1"),
            (f64::INFINITY, "inf"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_num(x), want, "{x:e}");
        }
    }

    #[test]
    fn round_trips_to_twelve_digits() {
        for &x in &[std::f64::consts::PI, 1.0 / 82f64.sqrt(), 7.316_022_3, 3.3e-9, 9.87e15] {
            let back: f64 = fmt_num(x).parse().unwrap();
            assert!((back - x).abs() <= x.abs() * 1e-11, "{x} -> {}", fmt_num(x));
        }
    }

    #[test]
    fn writes_header_first() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "x".into()]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,x\n");
    }
}
