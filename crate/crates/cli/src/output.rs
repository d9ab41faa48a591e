//! Number formatting and the two output formats.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

/// Significant digits used for every number in JSON output.
pub const JSON_DIGITS: usize = 17;

/// `x` rounded to `digits` significant digits. Positional notation for
/// exponents in `[-5, 17)`, scientific otherwise; trailing zeros are dropped
/// but a decimal point is kept so the value always reads as a float.
pub fn sig_digits(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let mut s = format!("{:.*}", decimals, x);
        trim_zeros(&mut s);
        s
    } else {
        let mut m = mantissa.to_string();
        trim_zeros(&mut m);
        format!("{m}e{exp}")
    }
}

fn trim_zeros(s: &mut String) {
    if !s.contains('.') {
        s.push_str(".0");
        return;
    }
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.push('0');
    }
}

/// JSON number with [`JSON_DIGITS`] significant digits; `null` if not finite.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let n: Number = serde_json::from_str(&sig_digits(x, JSON_DIGITS)).expect("valid JSON number");
    Value::Number(n)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Ordered JSON object builder.
#[derive(Default)]
pub struct Object(Map<String, Value>);

impl Object {
    pub fn new() -> Self {
        Object(Map::new())
    }

    pub fn put(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn num(self, key: &str, x: f64) -> Self {
        self.put(key, num(x))
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

/// A table of named float columns.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| sig_digits(x, digits)))?;
        }
        w.flush()
    }

    /// Columns as arrays, alongside `extra` fields.
    pub fn to_json(&self, extra: Object) -> Value {
        let mut obj = extra;
        for (j, name) in self.header.iter().enumerate() {
            let col: Vec<f64> = self.rows.iter().map(|r| r[j]).collect();
            obj = obj.put(name, nums(&col));
        }
        obj.into_value()
    }
}

pub fn write_json<W: Write>(mut out: W, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}
