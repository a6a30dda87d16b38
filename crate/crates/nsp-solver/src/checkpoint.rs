//! Self-describing binary checkpoints with exact bit round-trip.

use crate::state::FluidState;
use crate::{Complex, SolverError, Variant};
use spectral_core::{Grid, SpectralField, VectorField};
use std::io::{Read, Write};

const MAGIC: &[u8; 8] = b"NSPCHKP1";

fn write_f64<W: Write>(w: &mut W, v: f64) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn read_f64<R: Read>(r: &mut R) -> std::io::Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn write_u32<W: Write>(w: &mut W, v: u32) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn read_u32<R: Read>(r: &mut R) -> std::io::Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn write_field<W: Write>(w: &mut W, f: &SpectralField) -> std::io::Result<()> {
    for c in f.coeffs() {
        write_f64(w, c.re)?;
        write_f64(w, c.im)?;
    }
    Ok(())
}

fn read_field<R: Read>(r: &mut R, grid: &Grid) -> std::io::Result<SpectralField> {
    let mut coeffs = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = read_f64(r)?;
        let im = read_f64(r)?;
        coeffs.push(Complex::new(re, im));
    }
    Ok(SpectralField::from_coeffs(grid, coeffs).expect("length enforced"))
}

/// Write grid metadata, variant, eps, time and raw coefficients.
pub fn write_checkpoint<W: Write>(w: &mut W, state: &FluidState, t: f64) -> Result<(), SolverError> {
    let grid = state.grid();
    w.write_all(MAGIC)?;
    write_u32(w, grid.dim() as u32)?;
    write_u32(w, grid.points_per_axis() as u32)?;
    write_f64(w, grid.box_length())?;
    write_f64(w, grid.dealias_fraction())?;
    write_u32(w, matches!(state.variant, Variant::Ion) as u32)?;
    write_f64(w, state.epsilon)?;
    write_f64(w, t)?;
    write_field(w, &state.rho)?;
    for a in 0..grid.dim() {
        write_field(w, state.u.component(a))?;
    }
    Ok(())
}

/// Read a checkpoint; returns the state and its time stamp.
pub fn read_checkpoint<R: Read>(r: &mut R) -> Result<(FluidState, f64), SolverError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(SolverError::Checkpoint(format!(
            "bad magic {:?}",
            String::from_utf8_lossy(&magic)
        )));
    }
    let dim = read_u32(r)? as usize;
    let n = read_u32(r)? as usize;
    let box_length = read_f64(r)?;
    let dealias = read_f64(r)?;
    let variant = if read_u32(r)? == 1 {
        Variant::Ion
    } else {
        Variant::Electron
    };
    let epsilon = read_f64(r)?;
    let t = read_f64(r)?;
    let grid = Grid::new(dim, n, box_length, dealias)
        .map_err(|e| SolverError::Checkpoint(e.to_string()))?;
    let rho = read_field(r, &grid)?;
    let mut comps = Vec::with_capacity(dim);
    for _ in 0..dim {
        comps.push(read_field(r, &grid)?);
    }
    let u = VectorField::from_components(comps).map_err(|e| SolverError::Checkpoint(e.to_string()))?;
    Ok((
        FluidState {
            variant,
            epsilon,
            rho,
            u,
        },
        t,
    ))
}
