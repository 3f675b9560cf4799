//! Sweeps and enumerations spread over a rayon pool. Work is split into the
//! same slices regardless of the job count and merged in slice order, so
//! results do not depend on `jobs`.

use std::ops::Range;

use rayon::prelude::*;

use ontolab_core::cloning::{bound_sweep_row, SweepRow};
use ontolab_core::composite::{proposition1_range, proposition1_table_count, Proposition1Tally, SettingGrid};
use ontolab_core::{Error, Result};

/// Slices the Proposition 1 enumeration is cut into.
const SLICES: u64 = 64;

/// Runs `f` over `items` on `jobs` threads; `jobs <= 1` stays on the calling
/// thread.
fn map_ordered<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

pub fn slices(total: u64, count: u64) -> Vec<Range<u64>> {
    let count = count.clamp(1, total.max(1));
    let size = total.div_ceil(count);
    (0..count)
        .map(|i| (i * size).min(total)..((i + 1) * size).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

pub fn proposition1(grid: &SettingGrid, jobs: usize) -> Result<Proposition1Tally> {
    let total = proposition1_table_count(grid)?;
    let parts = map_ordered(&slices(total, SLICES), jobs, |r| {
        proposition1_range(grid, r.clone())
    });
    parts
        .into_iter()
        .try_fold(Proposition1Tally::default(), |acc, part| Ok(acc.merge(part?)))
}

pub fn bound_sweep(alphas: &[f64], jobs: usize) -> Result<Vec<SweepRow>> {
    map_ordered(alphas, jobs, |&a| bound_sweep_row(a))
        .into_iter()
        .collect::<std::result::Result<Vec<_>, Error>>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ontolab_core::composite::proposition1_check;

    #[test]
    fn slices_cover_the_range_once() {
        for (total, count) in [(0, 4), (5, 64), (256, 64), (1000, 7)] {
            let s = slices(total, count);
            let covered: u64 = s.iter().map(|r| r.end - r.start).sum();
            assert_eq!(covered, total);
            assert!(s.windows(2).all(|w| w[0].end == w[1].start));
        }
    }

    #[test]
    fn job_count_does_not_change_results() {
        let grid = SettingGrid::square(&["sz", "sx"]).unwrap();
        let serial = proposition1(&grid, 1).unwrap();
        assert_eq!(serial, proposition1(&grid, 4).unwrap());
        assert_eq!(serial, proposition1_check(&grid).unwrap());
        let alphas = [0.1, 0.2, 0.5];
        assert_eq!(bound_sweep(&alphas, 1).unwrap(), bound_sweep(&alphas, 3).unwrap());
    }
}
