//! Trajectory files and config provenance.

use std::io::{Read, Write};

use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::energy::DiagnosticsRecord;
use crate::error::{Error, Result};
use crate::fluid::FluidState;

pub const SCHEMA_VERSION: u32 = 1;

pub const TRAJECTORY_COLUMNS: &str =
    "t,delta,w,zeta_R,q_wall,E_sw,E_sol,E_tot,P_cor,mass_total,subsonic_margin_min";

pub const PRESCRIBED_COLUMNS: &str = "t,w,zeta_R,q_wall";

/// SHA-256 of the canonical TOML form of the config.
pub fn config_hash(cfg: &RunConfig) -> String {
    hex::encode(Sha256::digest(cfg.to_toml().as_bytes()))
}

fn header<W: Write>(out: &mut W, hash: &str, columns: &str) -> std::io::Result<()> {
    writeln!(out, "# schema={SCHEMA_VERSION}")?;
    writeln!(out, "# config-hash={hash}")?;
    writeln!(out, "{columns}")
}

fn row<W: Write>(out: &mut W, values: &[f64]) -> std::io::Result<()> {
    // adding 0.0 turns −0 into +0
    let line: Vec<String> = values.iter().map(|v| format!("{:.16e}", v + 0.0)).collect();
    writeln!(out, "{}", line.join(","))
}

pub fn write_trajectory<W: Write>(
    out: &mut W,
    hash: &str,
    records: &[DiagnosticsRecord],
) -> std::io::Result<()> {
    header(out, hash, TRAJECTORY_COLUMNS)?;
    for r in records {
        row(
            out,
            &[
                r.t,
                r.delta,
                r.w,
                r.zeta_r,
                r.q_wall,
                r.e_sw,
                r.e_sol,
                r.e_tot,
                r.p_cor,
                r.mass_total,
                r.subsonic_margin_min,
            ],
        )?;
    }
    Ok(())
}

pub fn write_prescribed<W: Write>(
    out: &mut W,
    hash: &str,
    times: &[f64],
    w: &[f64],
    zeta_wall: &[f64],
    q_wall: &[f64],
) -> std::io::Result<()> {
    header(out, hash, PRESCRIBED_COLUMNS)?;
    for k in 0..times.len() {
        row(out, &[times[k], w[k], zeta_wall[k], q_wall[k]])?;
    }
    Ok(())
}

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn parse_rows<R: Read>(input: R, expected: &[&str], what: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| Error::Io(format!("{what}: {e}")))?
        .clone();
    let index: Vec<usize> = expected
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| Error::Io(format!("{what}: missing column `{name}`")))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Io(format!("{what}: {e}")))?;
        let values = index
            .iter()
            .map(|&i| {
                rec.get(i)
                    .unwrap_or("")
                    .parse::<f64>()
                    .map_err(|e| Error::Io(format!("{what}: row {}: {e}", line + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(values);
    }
    Ok(rows)
}

/// Reads a trajectory CSV back into records. Outer-boundary outflow is not
/// part of the file and is read as zero.
pub fn read_trajectory<R: Read>(input: R) -> Result<Vec<DiagnosticsRecord>> {
    let cols: Vec<&str> = TRAJECTORY_COLUMNS.split(',').collect();
    let rows = parse_rows(input, &cols, "trajectory")?;
    Ok(rows
        .into_iter()
        .map(|v| DiagnosticsRecord {
            t: v[0],
            delta: v[1],
            w: v[2],
            zeta_r: v[3],
            q_wall: v[4],
            e_sw: v[5],
            e_sol: v[6],
            e_tot: v[7],
            boundary_energy_flux: 0.0,
            p_cor: v[8],
            mass_total: v[9],
            subsonic_margin_min: v[10],
            min_h: f64::NAN,
            outer_mass_out: 0.0,
            outer_energy_out: 0.0,
        })
        .collect())
}

/// Reads `r,zeta,q` and checks the radii against the cell centres.
pub fn read_fluid_csv<R: Read>(input: R, centers: &[f64]) -> Result<FluidState> {
    let rows = parse_rows(input, &["r", "zeta", "q"], "initial condition")?;
    if rows.len() != centers.len() {
        return Err(Error::config(
            "initial.path",
            format!("expected {} rows, found {}", centers.len(), rows.len()),
        ));
    }
    for (j, (row, r)) in rows.iter().zip(centers).enumerate() {
        if (row[0] - r).abs() > 1e-9 * r.abs().max(1.0) {
            return Err(Error::config(
                "initial.path",
                format!("row {j}: radius {} does not match cell centre {r}", row[0]),
            ));
        }
    }
    Ok(FluidState::new(
        rows.iter().map(|v| v[1]).collect(),
        rows.iter().map(|v| v[2]).collect(),
    ))
}

/// Reads `t,w` samples for a prescribed motion.
pub fn read_signal_csv<R: Read>(input: R) -> Result<Vec<(f64, f64)>> {
    let rows = parse_rows(input, &["t", "w"], "signal")?;
    if rows.is_empty() {
        return Err(Error::config("prescribed.path", "signal has no samples"));
    }
    if rows.windows(2).any(|w| !(w[1][0] > w[0][0])) {
        return Err(Error::config(
            "prescribed.path",
            "times must increase strictly",
        ));
    }
    Ok(rows.into_iter().map(|v| (v[0], v[1])).collect())
}

/// Linear interpolation, constant beyond the ends.
pub fn interpolate(samples: &[(f64, f64)], t: f64) -> f64 {
    let k = samples.partition_point(|s| s.0 <= t);
    if k == 0 {
        return samples[0].1;
    }
    if k == samples.len() {
        return samples[k - 1].1;
    }
    let (a, b) = (samples[k - 1], samples[k]);
    a.1 + (b.1 - a.1) * (t - a.0) / (b.0 - a.0)
}
