//! CSV ingestion for audit records and headroom series.
//!
//! Both formats are UTF-8 with a mandatory header row and `.` as the decimal
//! separator. Errors carry the 1-based line number of the offending row
//! (the header is line 1).

use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Scalar;

use super::{AuditRecord, HeadroomSeries};

pub const AUDIT_HEADER: [&str; 3] = ["paper_id", "reported_gain", "audited_gain"];
pub const HEADROOM_HEADER: [&str; 2] = ["period", "best_metric"];

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(|e| csv_error(e, 1))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(Error::Format {
            row: 1,
            message: format!("expected header `{}`, found `{}`", expected.join(","), got.join(",")),
        });
    }
    Ok(())
}

fn csv_error(e: csv::Error, fallback_row: usize) -> Error {
    let row = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback_row);
    Error::Format {
        row,
        message: e.to_string(),
    }
}

fn field<T: FromStr>(rec: &csv::StringRecord, idx: usize, name: &str, row: usize) -> Result<T> {
    let raw = rec.get(idx).ok_or_else(|| Error::Format {
        row,
        message: format!("missing column `{name}`"),
    })?;
    raw.parse().map_err(|_| Error::Format {
        row,
        message: format!("cannot parse `{raw}` as {name}"),
    })
}

fn check_width(rec: &csv::StringRecord, width: usize, row: usize) -> Result<()> {
    if rec.len() != width {
        return Err(Error::Format {
            row,
            message: format!("expected {width} fields, found {}", rec.len()),
        });
    }
    Ok(())
}

/// Reads `paper_id,reported_gain,audited_gain` rows.
pub fn read_audit_csv<F: Scalar, R: Read>(input: R) -> Result<Vec<AuditRecord<F>>> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &AUDIT_HEADER)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(e, i + 2))?;
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(i + 2);
        check_width(&rec, 3, row)?;
        let id: String = field(&rec, 0, "paper_id", row)?;
        let y: F = field(&rec, 1, "reported_gain", row)?;
        let y_audit: F = field(&rec, 2, "audited_gain", row)?;
        let record = AuditRecord::new(id, y, y_audit).map_err(|e| Error::Format {
            row,
            message: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}

/// Writes audit records with the canonical header; floats use Rust's shortest round-trip form.
pub fn write_audit_csv<F: Scalar, W: Write>(records: &[AuditRecord<F>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(AUDIT_HEADER).map_err(io)?;
    for r in records {
        w.write_record([
            r.paper_id.clone(),
            r.reported_gain.to_string(),
            r.audited_gain.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `period,best_metric` rows into a validated series.
pub fn read_headroom_csv<F: Scalar, R: Read>(input: R) -> Result<HeadroomSeries<F>> {
    let mut rdr = reader(input);
    check_header(&mut rdr, &HEADROOM_HEADER)?;
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_error(e, i + 2))?;
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(i + 2);
        check_width(&rec, 2, row)?;
        let period: i64 = field(&rec, 0, "period", row)?;
        let metric: F = field(&rec, 1, "best_metric", row)?;
        points.push((period, metric));
        rows.push(row);
    }
    // report validation failures against file lines, not series positions
    HeadroomSeries::new(points).map_err(|e| match e {
        Error::Format { row, message } => Error::Format {
            row: rows[row - 1],
            message,
        },
        other => other,
    })
}
