//! Discrete Legendre transform `g*(s) = max_t (s·t − g(t))` on a 1-D grid.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Extended, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LegendreMethod {
    Brute,
    /// Lower convex hull plus a monotone pointer over ascending slopes.
    Fast,
}

fn check_grid(points: &[Rational], g: &[ExtReal]) -> Result<()> {
    if points.len() != g.len() {
        return Err(Error::LengthMismatch { expected: points.len(), got: g.len() });
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedGrid);
    }
    Ok(())
}

/// `g*(s)` for every slope, by the chosen method.
pub fn discrete_legendre_1d(
    points: &[Rational],
    g: &[ExtReal],
    slopes: &[Rational],
    method: LegendreMethod,
) -> Result<Vec<ExtReal>> {
    check_grid(points, g)?;
    match method {
        LegendreMethod::Brute => Ok(brute(points, g, slopes)),
        LegendreMethod::Fast => {
            if slopes.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::UnsortedSlopes);
            }
            let out = fast(points, g, slopes);
            debug_assert_eq!(out, brute(points, g, slopes), "fast and brute transforms disagree");
            Ok(out)
        }
    }
}

fn brute(points: &[Rational], g: &[ExtReal], slopes: &[Rational]) -> Vec<ExtReal> {
    slopes
        .iter()
        .map(|s| {
            ExtReal::sup(points.iter().zip(g).filter_map(|(t, v)| match v {
                Extended::PosInf => None,
                Extended::NegInf => Some(Extended::PosInf),
                Extended::Finite(v) => Some(Extended::Finite(s * t - v)),
            }))
        })
        .collect()
}

fn fast(points: &[Rational], g: &[ExtReal], slopes: &[Rational]) -> Vec<ExtReal> {
    if g.iter().any(Extended::is_neg_inf) {
        return vec![Extended::PosInf; slopes.len()];
    }
    let finite: Vec<(&Rational, &Rational)> =
        points.iter().zip(g).filter_map(|(t, v)| v.finite().map(|v| (t, v))).collect();
    if finite.is_empty() {
        return vec![Extended::NegInf; slopes.len()];
    }
    let hull = lower_hull(&finite);
    let value = |s: &Rational, j: usize| s * hull[j].0 - hull[j].1;
    let mut j = 0;
    slopes
        .iter()
        .map(|s| {
            while j + 1 < hull.len() && value(s, j + 1) >= value(s, j) {
                j += 1;
            }
            Extended::Finite(value(s, j))
        })
        .collect()
}

/// Lower convex hull of points sorted by abscissa (monotone chain).
fn lower_hull<'a>(pts: &[(&'a Rational, &'a Rational)]) -> Vec<(&'a Rational, &'a Rational)> {
    let mut hull: Vec<(&Rational, &Rational)> = Vec::with_capacity(pts.len());
    for &p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b unless it lies strictly below the chord from a to p.
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= Rational::from_integer(0.into()) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{int, ratio};

    fn e(s: &str) -> ExtReal {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let pts = [int(-1), int(0), int(1)];
        for m in [LegendreMethod::Brute, LegendreMethod::Fast] {
            let zero = [e("0"), e("0"), e("0")];
            assert_eq!(discrete_legendre_1d(&pts, &zero, &[int(1)], m).unwrap(), vec![e("1")]);
            let top = [e("inf"), e("inf"), e("inf")];
            assert_eq!(discrete_legendre_1d(&pts, &top, &[int(-2), int(3)], m).unwrap(), vec![e("-inf"); 2]);
            let sq = [e("1"), e("0"), e("1")];
            assert_eq!(discrete_legendre_1d(&pts, &sq, &[int(0)], m).unwrap(), vec![e("0")]);
            let bottom = [e("1"), e("-inf"), e("1")];
            assert_eq!(discrete_legendre_1d(&pts, &bottom, &[int(0)], m).unwrap(), vec![e("inf")]);
        }
    }

    #[test]
    fn validation() {
        let pts = [int(0), int(0)];
        assert_eq!(
            discrete_legendre_1d(&pts, &[e("0"), e("0")], &[], LegendreMethod::Brute),
            Err(Error::UnsortedGrid)
        );
        let pts = [int(0), int(1)];
        assert_eq!(
            discrete_legendre_1d(&pts, &[e("0"), e("0")], &[int(1), int(0)], LegendreMethod::Fast),
            Err(Error::UnsortedSlopes)
        );
        assert!(discrete_legendre_1d(&pts, &[e("0"), e("0")], &[int(1), int(0)], LegendreMethod::Brute).is_ok());
    }

    #[test]
    fn fast_handles_collinear_and_gaps() {
        let pts = [int(0), ratio(1, 2), int(1), int(2), int(3)];
        let g = [e("0"), e("inf"), e("1"), e("2"), e("1/3")];
        let slopes = [int(-3), int(0), ratio(1, 2), int(1), int(1), int(4)];
        assert_eq!(
            discrete_legendre_1d(&pts, &g, &slopes, LegendreMethod::Fast).unwrap(),
            discrete_legendre_1d(&pts, &g, &slopes, LegendreMethod::Brute).unwrap()
        );
    }
}
