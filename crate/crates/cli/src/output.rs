//! CSV dialect: comma separated, `.` decimal point, mandatory header, LF endings.
//! Floats use the shortest representation that parses back to the same bits.

use std::fmt::Write;

use hybridcool::SystemParams;

use crate::engine::{Outcome, SweepRecord};

pub const SPECTRUM_HEADER: &str = "omega,gnn_full,gnn_bare,gnn_optical_part,gnn_thermal_part";
pub const RESULT_COLUMNS: [&str; 7] = [
    "stable",
    "n0",
    "n0_drive",
    "n0_local",
    "n0_ancilla",
    "n0_qnoise",
    "error",
];

/// Shortest round-trip decimal; scientific notation outside `[1e-5, 1e16)`.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\"").replace(['\n', '\r'], " "))
    } else {
        s.to_string()
    }
}

pub fn spectrum_csv(rows: &[[f64; 5]]) -> String {
    let mut out = String::with_capacity(rows.len() * 100);
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|&x| fmt_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn sweep_header() -> String {
    SystemParams::FIELDS
        .iter()
        .chain(RESULT_COLUMNS.iter())
        .copied()
        .collect::<Vec<_>>()
        .join(",")
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = sweep_header();
    out.push('\n');
    for rec in records {
        for name in SystemParams::FIELDS {
            out.push_str(&fmt_f64(rec.params.get(name).unwrap()));
            out.push(',');
        }
        let (stable, cells, error) = match &rec.outcome {
            Outcome::Done {
                n0,
                n0_drive,
                n0_local,
                n0_ancilla,
                n0_qnoise,
            } => (
                "true",
                [*n0, *n0_drive, *n0_local, *n0_ancilla, *n0_qnoise],
                String::new(),
            ),
            Outcome::Unstable { .. } => ("false", [None; 5], "unstable".to_string()),
            Outcome::Failed { stable, message } => (
                match stable {
                    Some(true) => "true",
                    Some(false) => "false",
                    None => "",
                },
                [None; 5],
                message.clone(),
            ),
        };
        let _ = writeln!(
            out,
            "{stable},{},{}",
            cells.map(opt).join(","),
            quote(&error)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats() {
        assert_eq!(fmt_f64(100.0), "100");
        assert_eq!(fmt_f64(0.7), "0.7");
        assert_eq!(fmt_f64(1e-6), "1e-6");
        assert_eq!(fmt_f64(-2.5e-9), "-2.5e-9");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(7000.0), "7000");
    }

    #[test]
    fn header_columns() {
        let h = sweep_header();
        assert!(
            h.starts_with("omega0,omega1,kappa,gamma0,gamma1,g0as,g1as,delta,nth0,nth1,stable,n0")
        );
        assert!(h.ends_with("n0_qnoise,error"));
        assert_eq!(h.split(',').count(), 17);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("plain"), "plain");
        assert_eq!(quote("a, b"), "\"a, b\"");
    }

    proptest! {
        #[test]
        fn round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
            let s = fmt_f64(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
