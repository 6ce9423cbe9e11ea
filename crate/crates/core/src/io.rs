//! CSV and JSON serialization. JSON floats are written with 17 significant digits
//! so that reports are byte-identical across runs and round-trip exactly.

use std::io::{self, Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::delay_operator::MarkovSequence;
use crate::experiments::SweepReport;
use crate::error::{Error, Result};
use crate::laguerre_basis::{Domain, LaguerreParams, SampledSignal, Spectrum};

struct FixedDigits<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(writer: W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(
        writer,
        FixedDigits {
            inner: PrettyFormatter::new(),
        },
    );
    value.serialize(&mut ser)?;
    Ok(())
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn read_json<T: DeserializeOwned, R: Read>(reader: R) -> Result<T> {
    Ok(serde_json::from_reader(reader)?)
}

fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize, Deserialize)]
struct SignalRow {
    t: f64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRow {
    j: usize,
    coeff: f64,
}

#[derive(Serialize, Deserialize)]
struct MarkovRow {
    k: usize,
    h_k: f64,
}

pub fn write_signal_csv<W: Write>(writer: W, signal: &SampledSignal) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["t", "value"])?;
    for (t, v) in signal.times().zip(&signal.values) {
        w.write_record([csv_float(t), csv_float(*v)])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `t,value` table. Times must be uniformly spaced.
pub fn read_signal_csv<R: Read>(reader: R, domain: Domain) -> Result<SampledSignal> {
    let mut r = csv::Reader::from_reader(reader);
    let rows: Vec<SignalRow> = r.deserialize().collect::<std::result::Result<_, _>>()?;
    let first = rows
        .first()
        .ok_or_else(|| Error::Parse("signal file has no rows".into()))?;
    let dt = match (domain, rows.get(1)) {
        (Domain::Discrete, _) => 1.0,
        (Domain::Continuous, Some(second)) => second.t - first.t,
        (Domain::Continuous, None) => {
            return Err(Error::Parse("a continuous signal needs at least two samples".into()))
        }
    };
    for (i, row) in rows.iter().enumerate() {
        let expected = first.t + i as f64 * dt;
        if (row.t - expected).abs() > 1e-9 * dt.max(expected.abs()) {
            return Err(Error::Parse(format!(
                "sample {i} at t = {} breaks the uniform grid (expected {expected})",
                row.t
            )));
        }
    }
    SampledSignal::new(
        domain,
        first.t,
        dt,
        rows.into_iter().map(|r| r.value).collect(),
    )
}

pub fn write_spectrum_csv<W: Write>(writer: W, spectrum: &Spectrum) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["j", "coeff"])?;
    for (j, c) in spectrum.coeffs.iter().enumerate() {
        w.write_record([j.to_string(), csv_float(*c)])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `j,coeff` table; missing indices are zero.
pub fn read_spectrum_csv<R: Read>(reader: R, params: LaguerreParams) -> Result<Spectrum> {
    let mut r = csv::Reader::from_reader(reader);
    let rows: Vec<SpectrumRow> = r.deserialize().collect::<std::result::Result<_, _>>()?;
    let len = rows.iter().map(|r| r.j + 1).max().unwrap_or(0);
    let mut coeffs = vec![0.0; len];
    for row in rows {
        coeffs[row.j] = row.coeff;
    }
    Spectrum::new(params, coeffs)
}

pub fn write_markov_csv<W: Write>(writer: W, markov: &MarkovSequence) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["k", "h_k"])?;
    for (k, h) in markov.h.iter().enumerate() {
        w.write_record([k.to_string(), csv_float(*h)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_markov_csv<R: Read>(reader: R) -> Result<MarkovSequence> {
    let mut r = csv::Reader::from_reader(reader);
    let rows: Vec<MarkovRow> = r.deserialize().collect::<std::result::Result<_, _>>()?;
    let len = rows.iter().map(|r| r.k + 1).max().unwrap_or(0);
    let mut h = vec![0.0; len];
    for row in rows {
        h[row.k] = row.h_k;
    }
    MarkovSequence::new(h)
}

/// Writes a header row followed by numeric rows.
pub fn write_table_csv<W: Write>(writer: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| csv_float(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// One row per sweep case; undefined values are left empty.
pub fn write_sweep_csv<W: Write>(writer: W, report: &SweepReport) -> Result<()> {
    let opt = |v: Option<f64>| v.map(csv_float).unwrap_or_default();
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["p", "tau", "m", "raw", "estimate", "error", "status"])?;
    for r in &report.rows {
        let status = serde_json::to_value(r.status)?;
        w.write_record([
            csv_float(r.p),
            csv_float(r.tau),
            r.m.to_string(),
            opt(r.raw),
            opt(r.estimate),
            opt(r.error),
            status.as_str().unwrap_or_default().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
