//! CSV readers and writers. Reals are written with 17 significant digits so
//! that reading a file back reproduces every value bit for bit.

use std::io::{Read, Write};

use fuzznorm::{AlphaCutTable, Vector};

use crate::CliError;

/// Formats a real with 17 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_real(cell: &str, what: &str) -> Result<f64, CliError> {
    cell.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("{what}: cannot parse {cell:?} as a number")))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Usage(format!("csv: {e}"))
}

/// Reads a points file with header `x1,...,xd`.
pub fn read_points<R: Read>(reader: R, dim: usize) -> Result<Vec<Vector>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers().map_err(csv_error)?.clone();
    let expected: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
    if header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(CliError::Usage(format!(
            "points header must be {:?}, got {:?}",
            expected.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let values = record
            .iter()
            .map(|cell| parse_real(cell, &format!("points row {}", row + 1)))
            .collect::<Result<Vec<f64>, _>>()?;
        points.push(
            Vector::new(values)
                .map_err(|e| CliError::Usage(format!("points row {}: {e}", row + 1)))?,
        );
    }
    if points.is_empty() {
        return Err(CliError::Usage("points file has no rows".into()));
    }
    Ok(points)
}

/// Writes the α-cut table alpha-major with header
/// `alpha,point_index,p_alpha,flag`.
pub fn write_alpha_table<W: Write>(writer: W, table: &AlphaCutTable) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["alpha", "point_index", "p_alpha", "flag"])
        .map_err(csv_error)?;
    for (i, &alpha) in table.alphas().iter().enumerate() {
        for j in 0..table.points().len() {
            let flag = if table.is_degenerate(i, j) {
                "degenerate"
            } else {
                "ok"
            };
            wtr.write_record([
                format_real(alpha),
                j.to_string(),
                format_real(table.value(i, j)),
                flag.into(),
            ])
            .map_err(csv_error)?;
        }
    }
    wtr.flush()
        .map_err(|e| CliError::Usage(format!("write failed: {e}")))
}

/// One row of an α-cut CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaRow {
    pub alpha: f64,
    pub point_index: usize,
    pub p_alpha: f64,
    pub degenerate: bool,
}

pub fn read_alpha_table<R: Read>(reader: R) -> Result<Vec<AlphaRow>, CliError> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header = rdr.headers().map_err(csv_error)?.clone();
    if header
        .iter()
        .ne(["alpha", "point_index", "p_alpha", "flag"])
    {
        return Err(CliError::Usage("unexpected alpha table header".into()));
    }
    rdr.records()
        .map(|record| {
            let r = record.map_err(csv_error)?;
            let degenerate = match &r[3] {
                "ok" => false,
                "degenerate" => true,
                other => return Err(CliError::Usage(format!("unknown flag {other:?}"))),
            };
            Ok(AlphaRow {
                alpha: parse_real(&r[0], "alpha")?,
                point_index: r[1]
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad point index {:?}", &r[1])))?,
                p_alpha: parse_real(&r[2], "p_alpha")?,
                degenerate,
            })
        })
        .collect()
}

/// Writes `t,value` rows.
pub fn write_curve<W: Write>(writer: W, ts: &[f64], values: &[f64]) -> Result<(), CliError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["t", "value"]).map_err(csv_error)?;
    for (&t, &v) in ts.iter().zip(values) {
        wtr.write_record([format_real(t), format_real(v)])
            .map_err(csv_error)?;
    }
    wtr.flush()
        .map_err(|e| CliError::Usage(format!("write failed: {e}")))
}

pub fn read_curve<R: Read>(reader: R) -> Result<Vec<(f64, f64)>, CliError> {
    let mut rdr = csv::Reader::from_reader(reader);
    if rdr.headers().map_err(csv_error)?.iter().ne(["t", "value"]) {
        return Err(CliError::Usage("unexpected curve header".into()));
    }
    rdr.records()
        .map(|record| {
            let r = record.map_err(csv_error)?;
            Ok((parse_real(&r[0], "t")?, parse_real(&r[1], "value")?))
        })
        .collect()
}
