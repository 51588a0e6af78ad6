//! Chunk-parallel histogram accumulation.  Chunks are independent RNG
//! streams merged in ascending index order, so results are identical to
//! the serial routine for any thread count.

use rayon::prelude::*;

use obversim_core::fluctuation::{
    classify_entry, omega_histogram_chunk, rotation_invariant, table_cases, table_entry_seed,
    OmegaHistogram, TableEntry, CARTESIAN_AXES, DEFAULT_BIN_WIDTH, SAMPLE_CHUNK,
};
use obversim_core::{Result, Rotation, SphereDensity};

/// Thread pool honouring `OBVERSIM_THREADS` (unset or 0 = all cores).
pub fn thread_pool() -> std::result::Result<rayon::ThreadPool, crate::CliError> {
    let threads = match std::env::var("OBVERSIM_THREADS") {
        Err(_) => 0,
        Ok(s) => s.parse::<usize>().map_err(|_| {
            crate::CliError::Validation(format!("OBVERSIM_THREADS: invalid value '{s}'"))
        })?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::CliError::Runtime(format!("thread pool: {e}")))
}

/// Parallel twin of [`obversim_core::fluctuation::omega_histogram`];
/// bitwise-identical output.
pub fn omega_histogram_parallel(
    d: &SphereDensity,
    r: &Rotation,
    n: usize,
    seed: u64,
    bin_width: f64,
) -> Result<OmegaHistogram> {
    let mut chunks = Vec::new();
    let mut remaining = n;
    let mut index = 0u64;
    while remaining > 0 {
        let count = remaining.min(SAMPLE_CHUNK);
        chunks.push((index, count));
        remaining -= count;
        index += 1;
    }
    let parts: Result<Vec<OmegaHistogram>> = chunks
        .par_iter()
        .map(|&(i, count)| omega_histogram_chunk(d, r, seed, i, count, bin_width))
        .collect();
    let mut h = OmegaHistogram::new(bin_width, seed);
    for part in parts? {
        h.merge(&part);
    }
    Ok(h)
}

/// Parallel twin of [`obversim_core::fluctuation::table_matrix`]:
/// same per-entry seeds, same entries.
pub fn table_matrix_parallel(angle: f64, n: usize, seed: u64) -> Result<Vec<TableEntry>> {
    let mut entries = Vec::new();
    let mut idx = 0u64;
    for d in table_cases() {
        for axis in CARTESIAN_AXES {
            let r = Rotation::from_axis_angle(axis.0, angle)?;
            let entry = if rotation_invariant(&d, &r) {
                classify_entry(&d, axis, None)?
            } else {
                let h = omega_histogram_parallel(
                    &d,
                    &r,
                    n,
                    table_entry_seed(seed, idx),
                    DEFAULT_BIN_WIDTH,
                )?;
                classify_entry(&d, axis, Some(&h))?
            };
            entries.push(entry);
            idx += 1;
        }
    }
    Ok(entries)
}
