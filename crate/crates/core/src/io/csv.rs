use std::io::Write;

use crate::dynamics::{PeriodRecord, Trajectory};
use crate::error::{Error, Result};

pub const HEADER: [&str; 19] = [
    "t",
    "K_w",
    "K_c",
    "K",
    "W",
    "P_w",
    "P_c",
    "P",
    "FCS_w",
    "FCS_c",
    "S_w",
    "S_c",
    "S",
    "US_w",
    "US_c",
    "US",
    "ratio_K",
    "ratio_S",
    "equilibrium_residual",
];

/// Formats `x` with 17 significant digits, like C's `%.17g`: positional
/// notation for decimal exponents in `[-4, 17)`, scientific otherwise, trailing
/// zeros removed. Enough digits to read back the identical f64.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');

    if !(-4..17).contains(&exp) {
        let (lead, rest) = digits.split_at(1);
        return if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        };
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        format!("{sign}{digits}{}", "0".repeat(int_len - digits.len()))
    } else {
        format!("{sign}{}.{}", &digits[..int_len], &digits[int_len..])
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

fn row(r: &PeriodRecord) -> String {
    let numbers = [
        r.worker_capital,
        r.capitalist_capital,
        r.capital,
        r.wage,
        r.worker_profit,
        r.capitalist_profit,
        r.profit,
        r.worker_fcs,
        r.capitalist_fcs,
        r.worker_saving,
        r.capitalist_saving,
        r.saving,
        r.worker_unsaved,
        r.capitalist_unsaved,
        r.unsaved,
    ];
    let mut fields = Vec::with_capacity(HEADER.len());
    fields.push(r.t.to_string());
    fields.extend(numbers.into_iter().map(format_number));
    fields.push(optional(r.ratio_k));
    fields.push(optional(r.ratio_s));
    fields.push(optional(r.equilibrium_residual));
    fields.join(",")
}

/// Writes the header and one row per period; returns the number of bytes written.
pub fn emit_trajectory<W: Write>(traj: &Trajectory, mut sink: W) -> Result<usize> {
    let mut written = 0;
    let header = HEADER.join(",");
    writeln!(sink, "{header}")?;
    written += header.len() + 1;
    for r in &traj.records {
        let line = row(r);
        writeln!(sink, "{line}")?;
        written += line.len() + 1;
    }
    sink.flush()?;
    Ok(written)
}

/// Reads back what [`emit_trajectory`] wrote.
pub fn parse_trajectory(text: &str) -> Result<Trajectory> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or_default();
    if header != HEADER.join(",") {
        return Err(Error::Csv {
            line: 1,
            message: format!("unexpected header `{header}`"),
        });
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != HEADER.len() {
            return Err(Error::Csv {
                line: lineno,
                message: format!("expected {} fields, found {}", HEADER.len(), fields.len()),
            });
        }
        let num = |i: usize| -> Result<f64> {
            fields[i].parse::<f64>().map_err(|e| Error::Csv {
                line: lineno,
                message: format!("column {}: {e}", HEADER[i]),
            })
        };
        let opt = |i: usize| -> Result<Option<f64>> {
            if fields[i].is_empty() {
                Ok(None)
            } else {
                num(i).map(Some)
            }
        };
        let t = fields[0].parse::<usize>().map_err(|e| Error::Csv {
            line: lineno,
            message: format!("column t: {e}"),
        })?;
        records.push(PeriodRecord {
            t,
            worker_capital: num(1)?,
            capitalist_capital: num(2)?,
            capital: num(3)?,
            wage: num(4)?,
            worker_profit: num(5)?,
            capitalist_profit: num(6)?,
            profit: num(7)?,
            worker_fcs: num(8)?,
            capitalist_fcs: num(9)?,
            worker_saving: num(10)?,
            capitalist_saving: num(11)?,
            saving: num(12)?,
            worker_unsaved: num(13)?,
            capitalist_unsaved: num(14)?,
            unsaved: num(15)?,
            ratio_k: opt(16)?,
            ratio_s: opt(17)?,
            equilibrium_residual: opt(18)?,
        });
    }
    Ok(Trajectory::from_records(records))
}
