//! Reproductions of the analytical results.

use serde::Serialize;

use super::generate::gen_thin_triangle;
use crate::error::{Error, Result};
use crate::geometry::geodesic_to_half_plane;
use crate::offline::osp;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundRow {
    pub eps: f64,
    pub opt_len: f64,
    pub wrong_dir_len: f64,
    pub ratio: f64,
}

/// Thin-triangle family with unit legs. An online robot that cannot tell
/// the two long edges apart may start the wrong way: it walks to the apex,
/// which touches the far long edge's line, and then has to travel the whole
/// leg back to reach the short edge's half-plane.
pub fn lower_bound_experiment(eps_list: &[f64]) -> Result<Vec<LowerBoundRow>> {
    eps_list
        .iter()
        .map(|&eps| {
            if eps.is_nan() || eps <= 0.0 {
                return Err(Error::InvalidDims(format!("eps must be positive, got {eps}")));
            }
            let inst = gen_thin_triangle(1.0, eps)?;
            let poly = &inst.polygon;
            let opt_len = osp(inst.start, poly)?.length();
            let apex = poly.vertex(0);
            let short = poly.supporting_half_plane(1)?;
            let (back, _) = geodesic_to_half_plane(apex, &short, poly)?;
            let wrong_dir_len = inst.start.dist(apex) + back;
            Ok(LowerBoundRow { eps, opt_len, wrong_dir_len, ratio: wrong_dir_len / opt_len })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_approach_three() {
        let rows = lower_bound_experiment(&[0.1, 0.01, 0.001]).unwrap();
        for (row, expect) in rows.iter().zip([2.5, 1.5 / 0.51, 1.5 / 0.501]) {
            assert!((row.opt_len - (0.5 + row.eps)).abs() < 0.05 * (0.5 + row.eps), "{row:?}");
            assert!((row.ratio - expect).abs() < 0.01 * expect, "{row:?}");
        }
        assert!(rows.windows(2).all(|w| w[0].ratio < w[1].ratio && w[1].ratio < 3.0));
    }
}
