use alloc::vec;

// inherent float methods are only there when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::quantum::chsh_closed_form;
use crate::search::simplex::{LinearProgram, Relation};
use crate::tolerance;
use crate::{Error, Result};

fn check_arguments(alpha_sq: f64, chsh_value: f64) -> Result<()> {
    if !(alpha_sq > 0.0 && alpha_sq < 1.0) {
        return Err(Error::DegenerateAlpha(alpha_sq));
    }
    let top = chsh_closed_form(alpha_sq);
    if !(chsh_value >= 2.0 - tolerance::ALGEBRAIC && chsh_value <= top + tolerance::ALGEBRAIC) {
        return Err(Error::OutOfRange {
            what: "chsh_value",
            value: chsh_value,
        });
    }
    Ok(())
}

/// Largest overlap mass `m_phi + m_phi_perp` for which the three-region
/// budget still reaches `chsh_value`, with the overlaps capped by
/// `alpha_sq` and `1 - alpha_sq`.
pub fn max_overlap_with_chsh(alpha_sq: f64, chsh_value: f64) -> Result<f64> {
    check_arguments(alpha_sq, chsh_value)?;
    // variables: m_phi, m_phi_perp, m_rest
    let mut lp = LinearProgram::maximize(vec![1.0, 1.0, 0.0]);
    lp.constrain("normalization", vec![1.0, 1.0, 1.0], Relation::Eq, 1.0);
    lp.constrain("chsh", vec![2.0, 2.0, 4.0], Relation::Ge, chsh_value);
    lp.constrain("overlap phi", vec![1.0, 0.0, 0.0], Relation::Le, alpha_sq);
    lp.constrain(
        "overlap phi_perp",
        vec![0.0, 1.0, 0.0],
        Relation::Le,
        1.0 - alpha_sq,
    );
    Ok(lp.solve()?.value)
}

/// Grid search for the same optimum: every `(m_phi, m_phi_perp)` on a grid
/// of spacing `resolution`.
pub fn brute_force_budget(alpha_sq: f64, chsh_value: f64, resolution: f64) -> Result<f64> {
    check_arguments(alpha_sq, chsh_value)?;
    if !(resolution >= 1e-4) {
        return Err(Error::InstanceTooLarge(alloc::format!(
            "resolution {resolution} below 1e-4"
        )));
    }
    let units = (1.0 / resolution).round() as i64;
    let r = 1.0 / units as f64;
    let phi_max = (alpha_sq * units as f64).floor() as i64;
    let perp_max = ((1.0 - alpha_sq) * units as f64).floor() as i64;
    let mut best: Option<i64> = None;
    for i in 0..=phi_max {
        // feasibility only gets easier as m_phi_perp shrinks
        let feasible = (0..=perp_max).rev().find(|&j| {
            let m = (i + j) as f64 * r;
            m <= 1.0 && 2.0 * m + 4.0 * (1.0 - m) >= chsh_value
        });
        if let Some(j) = feasible {
            best = Some(best.map_or(i + j, |b| b.max(i + j)));
        }
    }
    best.map(|b| b as f64 * r)
        .ok_or_else(|| Error::Infeasible("no grid point reaches the CHSH value".into()))
}
