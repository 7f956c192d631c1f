//! CSV output with a fixed number format.

use std::io::Write;

use crate::error::CliResult;

/// Formats `v` with 15 significant digits, in plain decimal notation when
/// the exponent is between -5 and 14 and in scientific notation otherwise.
pub fn sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.14e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-5..15).contains(&exp) {
        return sci;
    }
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::with_capacity(24);
    if neg {
        out.push('-');
    }
    if exp >= 0 {
        let split = exp as usize + 1;
        out.push_str(&digits[..split]);
        if split < digits.len() {
            out.push('.');
            out.push_str(&digits[split..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    }
    out
}

/// One CSV table: a header and rows of already formatted fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(header: I) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|&v| sig15(v)).collect());
    }

    pub fn push(&mut self, fields: Vec<String>) {
        self.rows.push(fields);
    }

    pub fn write<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
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
    fn fifteen_digits() {
        assert_eq!(sig15(0.5), "0.500000000000000");
        assert_eq!(sig15(-2.0), "-2.00000000000000");
        assert_eq!(sig15(0.2078795763507619), "0.207879576350762");
        assert_eq!(sig15(9.999999999999999999), "10.0000000000000");
        assert_eq!(sig15(1.25e-7), "1.25000000000000e-7");
        assert_eq!(sig15(0.00012), "0.000120000000000000");
        assert_eq!(sig15(123456.0), "123456.000000000");
        assert_eq!(sig15(f64::INFINITY), "inf");
    }

    #[test]
    fn table_output() {
        let mut t = Table::new(["a", "b"]);
        t.push_numbers(&[1.0, 0.25]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1.00000000000000,0.250000000000000\n");
    }
}
