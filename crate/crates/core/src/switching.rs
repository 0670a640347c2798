//! Zeros of the normalized switching function `e^{p1 phi} sin(phi) - C1`.
//!
//! Negative-jerk sections sit where the function is above zero, one around
//! each maximum that clears the offset `C1`. Angles are measured relative to
//! the last interior switch `phi_{n-1}`, which on the function's own axis is
//! the right zero around the maximum with index `k = 0`; earlier sections
//! use `k = -1, -2, ...`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// Below this normalized damping the closed-form undamped structure is used.
pub const ZERO_DAMPING_THRESHOLD: f64 = 1e-9;

/// Iteration cap of the `C1` bisection.
pub const C1_MAX_ITER: usize = 60;

/// Width residual at which the `C1` bisection stops (rad).
pub const WIDTH_TOL: f64 = 1e-13;

/// Zero searches keep this far from the neighbouring extrema (rad).
const EDGE: f64 = 1e-12;

/// Number of grid points of the optional precomputed structure table.
pub const TABLE_POINTS: usize = 64;

/// Relative switching angles for one terminal angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingStructure {
    /// Number of negative-jerk sections.
    pub n_el: usize,
    /// Offset of the switching function.
    pub c1: f64,
    /// `phi_{n-1} - phi_i` for `i = 2..n-1`; the last entry is zero.
    pub delta_phi: Vec<f64>,
    /// Total width of all negative sections (rad).
    pub delta_phi_abs: f64,
    /// Position of `phi_{n-1}` on the axis of [`switching_fn`].
    pub anchor: f64,
}

impl SwitchingStructure {
    /// Total number of jerk steps, including the first and the terminal one.
    pub fn n(&self) -> usize {
        2 * self.n_el + 2
    }

    /// Widths of the negative sections, earliest first.
    pub fn widths(&self) -> Vec<f64> {
        self.delta_phi.chunks(2).map(|c| c[0] - c[1]).collect()
    }
}

pub fn switching_fn(phi: f64, c1: f64, p1: f64) -> f64 {
    (p1 * phi).exp() * phi.sin() - c1
}

/// Phase `Theta` with `d/dphi (e^{p1 phi} sin phi) ~ sin(phi + Theta)`.
pub fn peak_offset(p1: f64) -> f64 {
    (p1 / (p1 * p1 + 1.0).sqrt()).acos()
}

pub fn maximum_angle(p1: f64, k: i32) -> f64 {
    (2 * k + 1) as f64 * PI - peak_offset(p1)
}

pub fn maxima_angles(p1: f64, ks: RangeInclusive<i32>) -> Vec<f64> {
    ks.map(|k| maximum_angle(p1, k)).collect()
}

/// Value of `e^{p1 phi} sin phi` at maximum `k`.
pub fn maximum_value(p1: f64, k: i32) -> f64 {
    let phi = maximum_angle(p1, k);
    (p1 * phi).exp() * phi.sin()
}

/// Bisection for a sign change of `f` on `[lo, hi]`, run to floating-point
/// resolution.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_negative = f(lo) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// The two zeros around maximum `k`: one on `(phi_m - pi, phi_m)`, one on
/// `(phi_m, phi_m + pi)`. The function is monotonic on both intervals.
pub fn zeros_near_maximum(c1: f64, p1: f64, k: i32) -> Result<(f64, f64)> {
    let phi_m = maximum_angle(p1, k);
    let top = switching_fn(phi_m, c1, p1);
    if top < 0.0 {
        return Err(Error::NoZero { k, c1 });
    }
    if top == 0.0 {
        return Ok((phi_m, phi_m));
    }
    let f = |phi| switching_fn(phi, c1, p1);
    let left = bisect(f, phi_m - PI + EDGE, phi_m);
    let right = bisect(f, phi_m, phi_m + PI - EDGE);
    Ok((left, right))
}

fn zero_pairs(c1: f64, n_el: usize, p1: f64) -> Result<Vec<(f64, f64)>> {
    if n_el == 0 {
        return Err(Error::InvalidInput("at least one negative section is required".into()));
    }
    let first = -(n_el as i32 - 1);
    (first..=0).map(|k| zeros_near_maximum(c1, p1, k)).collect()
}

/// Switching structure for `n_el` sections at a fixed offset `c1`.
pub fn relative_angles_general(c1: f64, n_el: usize, p1: f64) -> Result<SwitchingStructure> {
    let pairs = zero_pairs(c1, n_el, p1)?;
    let anchor = pairs.last().map(|p| p.1).unwrap_or_default();
    let delta_phi = pairs.iter().flat_map(|&(l, r)| [anchor - l, anchor - r]).collect();
    let delta_phi_abs = pairs.iter().map(|&(l, r)| r - l).sum();
    Ok(SwitchingStructure { n_el, c1, delta_phi, delta_phi_abs, anchor })
}

/// Total width of the last `n_el` negative sections at offset `c1`.
pub fn total_negative_width(c1: f64, n_el: usize, p1: f64) -> Result<f64> {
    Ok(zero_pairs(c1, n_el, p1)?.iter().map(|&(l, r)| r - l).sum())
}

/// Largest number of consecutive sections, counted back from the last one,
/// whose maxima clear `c1` and whose left zero fits into `[-phi_f, 0]`.
pub fn count_segments(c1: f64, phi_f: f64, p1: f64) -> Result<usize> {
    let (_, anchor) = zeros_near_maximum(c1, p1, 0)?;
    let mut count = 1;
    let mut k = -1;
    while (2 * -k) as f64 * PI < phi_f + TAU {
        if maximum_value(p1, k) < c1 {
            break;
        }
        let (left, _) = zeros_near_maximum(c1, p1, k)?;
        if left - anchor + phi_f > 0.0 {
            count += 1;
            k -= 1;
        } else {
            break;
        }
    }
    Ok(count)
}

/// Total negative width demanded by the terminal acceleration.
pub fn delta_phi_abs(phi_f: f64, a_star: f64) -> Result<f64> {
    let v = 0.5 * (phi_f - a_star);
    if !(v >= 0.0) || v >= FRAC_PI_2 {
        return Err(Error::OutOfRange { delta_phi_abs: v });
    }
    Ok(v)
}

/// Structure for terminal angle `phi_f`, with as many sections as fit.
pub fn solve_structure(phi_f: f64, a_star: f64, p1: f64) -> Result<SwitchingStructure> {
    solve_structure_limited(phi_f, a_star, p1, None)
}

/// As [`solve_structure`], optionally capping the number of sections.
pub fn solve_structure_limited(
    phi_f: f64,
    a_star: f64,
    p1: f64,
    max_sections: Option<usize>,
) -> Result<SwitchingStructure> {
    let width = delta_phi_abs(phi_f, a_star)?;
    let cap = max_sections.unwrap_or(usize::MAX).max(1);
    if p1 < ZERO_DAMPING_THRESHOLD {
        let n_el = ((phi_f / TAU).ceil() as usize).clamp(1, cap);
        return Ok(undamped_structure(width, n_el));
    }
    let mut best = single_section(width, p1)?;
    if width == 0.0 {
        return Ok(best);
    }
    for n_el in 2..=cap {
        // The earliest maximum sits roughly 2 pi (n_el - 1) before the anchor.
        if TAU * (n_el - 1) as f64 >= phi_f {
            break;
        }
        let floor = maximum_value(p1, -(n_el as i32 - 1));
        if total_negative_width(floor, n_el, p1)? >= width {
            break;
        }
        let s = sections_for_width(width, n_el, floor, p1)?;
        if s.delta_phi[0] >= phi_f {
            break;
        }
        best = s;
    }
    Ok(best)
}

/// Closed-form undamped structure: all sections share the same width.
pub fn undamped_structure(width: f64, n_el: usize) -> SwitchingStructure {
    let w = width / n_el as f64;
    let delta_phi = (1..=n_el)
        .flat_map(|k| {
            let base = TAU * (n_el - k) as f64;
            [base + w, base]
        })
        .collect();
    SwitchingStructure {
        n_el,
        c1: (0.5 * w).cos(),
        delta_phi,
        delta_phi_abs: width,
        anchor: FRAC_PI_2 + 0.5 * w,
    }
}

/// One section of exactly `width`: the zero pair around the last maximum
/// whose separation is `width`.
fn single_section(width: f64, p1: f64) -> Result<SwitchingStructure> {
    let phi_m = maximum_angle(p1, 0);
    let (left, c1) = if width == 0.0 {
        (phi_m, maximum_value(p1, 0))
    } else {
        let level = |phi: f64| (p1 * phi).exp() * phi.sin();
        let left = bisect(|l| level(l) - level(l + width), phi_m - width, phi_m);
        (left, level(left))
    };
    Ok(SwitchingStructure {
        n_el: 1,
        c1,
        delta_phi: vec![width, 0.0],
        delta_phi_abs: width,
        anchor: left + width,
    })
}

/// Solves `total_negative_width(c1, n_el) = width` for `c1` on `[0, floor]`,
/// where `floor` is the value of the earliest maximum.
fn sections_for_width(width: f64, n_el: usize, floor: f64, p1: f64) -> Result<SwitchingStructure> {
    let (mut lo, mut hi) = (0.0, floor);
    let mut c1 = 0.5 * (lo + hi);
    for _ in 0..C1_MAX_ITER {
        c1 = 0.5 * (lo + hi);
        let residual = total_negative_width(c1, n_el, p1)? - width;
        if residual.abs() < WIDTH_TOL {
            break;
        }
        // Wider sections call for a larger offset.
        if residual > 0.0 {
            lo = c1;
        } else {
            hi = c1;
        }
    }
    let mut s = relative_angles_general(c1, n_el, p1)?;
    if (s.delta_phi_abs - width).abs() > 1e-6 {
        return Err(Error::NotBracketed { target: width });
    }
    // Fold the leftover width residual into the last section so the total
    // matches the terminal acceleration exactly.
    let last_left = s.delta_phi.len() - 2;
    s.delta_phi[last_left] += width - s.delta_phi_abs;
    s.delta_phi_abs = width;
    Ok(s)
}

/// Structures precomputed on a uniform grid of terminal angles, linearly
/// interpolated between grid points that share the same section count.
#[derive(Debug, Clone)]
pub struct StructureTable {
    a_star: f64,
    p1: f64,
    max_sections: Option<usize>,
    step: f64,
    entries: Vec<Option<SwitchingStructure>>,
}

impl StructureTable {
    pub fn build(a_star: f64, p1: f64, max_sections: Option<usize>) -> Self {
        let step = PI / TABLE_POINTS as f64;
        let entries = (0..TABLE_POINTS)
            .map(|i| solve_structure_limited(a_star + step * i as f64, a_star, p1, max_sections).ok())
            .collect();
        Self { a_star, p1, max_sections, step, entries }
    }

    pub fn lookup(&self, phi_f: f64) -> Result<SwitchingStructure> {
        let width = delta_phi_abs(phi_f, self.a_star)?;
        let pos = (phi_f - self.a_star) / self.step;
        let i = pos.floor() as usize;
        if let (Some(Some(a)), Some(Some(b))) = (self.entries.get(i), self.entries.get(i + 1)) {
            if a.n_el == b.n_el {
                let w = pos - i as f64;
                let mix = |x: f64, y: f64| x + w * (y - x);
                return Ok(SwitchingStructure {
                    n_el: a.n_el,
                    c1: mix(a.c1, b.c1),
                    delta_phi: a.delta_phi.iter().zip(&b.delta_phi).map(|(&x, &y)| mix(x, y)).collect(),
                    delta_phi_abs: width,
                    anchor: mix(a.anchor, b.anchor),
                });
            }
        }
        solve_structure_limited(phi_f, self.a_star, self.p1, self.max_sections)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    const P1_TABLE1: f64 = 0.028_182_7;

    #[test]
    fn switching_fn_values() {
        assert_eq!(switching_fn(0.0, 0.0, 0.3), 0.0);
        assert_abs_diff_eq!(switching_fn(PI / 6.0, 0.5, 0.0), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn maxima_positions() {
        assert_abs_diff_eq!(peak_offset(0.0), FRAC_PI_2);
        assert_abs_diff_eq!(maximum_angle(0.0, 0), FRAC_PI_2);
        assert!(peak_offset(1e9) < 1e-8);
        assert_abs_diff_eq!(maximum_angle(1e9, 2), 5.0 * PI, epsilon = 1e-8);
        // Oracle: Theta = atan(1 / p1) for p1 > 0.
        let p1 = 4.761_904_761_9 / 168.966;
        assert_abs_diff_eq!(peak_offset(p1), (1.0 / p1).atan(), epsilon = 1e-14);
        assert_abs_diff_eq!(peak_offset(p1), 1.542_613, epsilon = 1e-5);
        assert_eq!(maxima_angles(0.0, -1..=1).len(), 3);
    }

    #[test]
    fn symmetric_undamped_zeros() {
        let (l, r) = zeros_near_maximum(FRAC_PI_4.sin(), 0.0, 0).unwrap();
        assert_abs_diff_eq!(l, FRAC_PI_4, epsilon = 1e-14);
        assert_abs_diff_eq!(r, 3.0 * FRAC_PI_4, epsilon = 1e-14);
        assert_abs_diff_eq!(total_negative_width(FRAC_PI_4.sin(), 1, 0.0).unwrap(), FRAC_PI_2, epsilon = 1e-14);
    }

    #[test]
    fn tangency_gives_double_zero() {
        let c1 = maximum_value(P1_TABLE1, 0);
        let (l, r) = zeros_near_maximum(c1, P1_TABLE1, 0).unwrap();
        assert_eq!(l, r);
        assert_eq!(total_negative_width(c1, 1, P1_TABLE1).unwrap(), 0.0);
        assert!(matches!(zeros_near_maximum(c1 * 1.01, P1_TABLE1, 0), Err(Error::NoZero { .. })));
    }

    #[test]
    fn zero_residuals() {
        for &(p1, c1, k) in &[(0.0282, 0.3, 0), (0.1, 0.9, 0), (0.003, 0.95, -1), (0.5, 0.01, -1)] {
            let (l, r) = zeros_near_maximum(c1, p1, k).unwrap();
            assert!(switching_fn(l, c1, p1).abs() < 1e-12 * (1.0 + c1));
            assert!(switching_fn(r, c1, p1).abs() < 1e-12 * (1.0 + c1));
            assert!(l < maximum_angle(p1, k) && maximum_angle(p1, k) < r);
        }
    }

    #[test]
    fn single_section_relative_angles() {
        let s = relative_angles_general(0.8, 1, P1_TABLE1).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.delta_phi[1], 0.0);
        assert_abs_diff_eq!(s.delta_phi[0], s.delta_phi_abs);
    }

    #[test]
    fn undamped_sections_are_equal() {
        let s = relative_angles_general(0.6, 3, 0.0).unwrap();
        let w = s.widths();
        assert_abs_diff_eq!(w[0], w[1], epsilon = 1e-13);
        assert_abs_diff_eq!(w[1], w[2], epsilon = 1e-13);
    }

    #[test]
    fn damping_narrows_earlier_sections() {
        let s = relative_angles_general(0.5, 2, P1_TABLE1 * 0.1).unwrap();
        let w = s.widths();
        assert!(w[0] < w[1]);
        assert!(s.delta_phi.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn delta_phi_abs_bounds() {
        assert_eq!(delta_phi_abs(3.0, 3.0).unwrap(), 0.0);
        assert!(matches!(delta_phi_abs(3.0 + PI, 3.0), Err(Error::OutOfRange { .. })));
        assert!(delta_phi_abs(2.9, 3.0).is_err());
        // t_f = 30 ms, a_max = 20, j_max = 800: dt_abs = 2.5 ms.
        let wd = 168.966;
        let dphi = delta_phi_abs(wd * 0.030, wd * 20.0 / 800.0).unwrap();
        assert_abs_diff_eq!(dphi / wd, 0.0025, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_structure_at_lower_end() {
        let s = solve_structure(2.0, 2.0, P1_TABLE1).unwrap();
        assert_eq!(s.n_el, 1);
        assert_eq!(s.delta_phi, vec![0.0, 0.0]);
        assert_eq!(s.delta_phi_abs, 0.0);
    }

    #[test]
    fn undamped_closed_form() {
        let (a_star, phi_f) = (7.0, 7.6);
        let s = solve_structure(phi_f, a_star, 0.0).unwrap();
        let dphi = 0.3;
        assert_eq!(s.n_el, 2);
        assert_abs_diff_eq!(s.delta_phi[0], TAU + dphi / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.delta_phi[1], TAU, epsilon = 1e-14);
        assert_abs_diff_eq!(s.delta_phi[2], dphi / 2.0, epsilon = 1e-14);
        assert_eq!(s.delta_phi[3], 0.0);
        let (l, r) = zeros_near_maximum(s.c1, 0.0, 0).unwrap();
        assert_abs_diff_eq!(r, s.anchor, epsilon = 1e-14);
        assert_abs_diff_eq!(r - l, dphi / 2.0, epsilon = 1e-13);
    }

    #[test]
    fn count_undamped_narrow_limit() {
        // Narrow sections (C1 just under the peak) reproduce ceil(phi_f / 2 pi).
        let c1 = 1.0 - 1e-9;
        for &phi_f in &[1.0, 5.0, 7.0, 13.0, 19.5] {
            let n = count_segments(c1, phi_f, 0.0).unwrap();
            assert_eq!(n, (phi_f / TAU).ceil() as usize, "phi_f = {phi_f}");
        }
        assert_eq!(count_segments(maximum_value(P1_TABLE1, 0) * 0.999, 1.0, P1_TABLE1).unwrap(), 1);
        assert!(count_segments(2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn structure_widths_sum_to_target() {
        let p1 = P1_TABLE1 * 0.05;
        let a_star = 8.0;
        for &phi_f in &[8.2, 8.9, 9.5, 10.5, 11.0] {
            let s = solve_structure(phi_f, a_star, p1).unwrap();
            let target = 0.5 * (phi_f - a_star);
            assert_abs_diff_eq!(s.widths().iter().sum::<f64>(), target, epsilon = 1e-14);
            for (i, d) in s.delta_phi.iter().enumerate() {
                let phi = s.anchor - d;
                assert!(switching_fn(phi, s.c1, p1).abs() < 1e-10, "zero {i} at phi_f {phi_f}");
            }
        }
    }

    #[test]
    fn table_lookup_close_to_exact() {
        let (a_star, p1) = (4.2, P1_TABLE1);
        let table = StructureTable::build(a_star, p1, None);
        let phi_f = 5.43;
        let exact = solve_structure(phi_f, a_star, p1).unwrap();
        let approx = table.lookup(phi_f).unwrap();
        assert_eq!(exact.n_el, approx.n_el);
        assert_abs_diff_eq!(exact.delta_phi[0], approx.delta_phi[0], epsilon = 1e-12);
    }
}
