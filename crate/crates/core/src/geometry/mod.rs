//! Sampled one-dimensional manifolds: a uniformly sampled circle with its
//! exponential map, and real interval grids.
//!
//! Angles are stored as rational multiples of π, so `θ_i = 2πi/n` is the
//! rational `2i/n`, and every conjugate value on the circle is an exact
//! element of `ℚ + ℚπ`.

mod legendre;
pub mod pi;

use std::collections::BTreeSet;

use serde::Serialize;

pub use legendre::{discrete_legendre_1d, LegendreMethod};
pub use pi::PiRational;

use crate::conjugate::{attainers, conj};
use crate::error::{Error, Result};
use crate::extreal::{int, ExtReal, Extended, Rational};
use crate::funcspace::{Carrier, ExtFn, PointSet};
use crate::law::{LawReport, Side};

/// Extended value in `ℚ + ℚπ`.
pub type ExtPi = Extended<PiRational>;

/// `n` equally spaced samples of the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleGrid {
    n: usize,
    carrier: Carrier,
}

impl CircleGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CircleTooSmall(n));
        }
        Ok(CircleGrid { n, carrier: Carrier::indexed(n)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// `θ_i / π = 2i/n`.
    pub fn angle(&self, i: usize) -> Rational {
        Rational::new((2 * i).into(), self.n.into())
    }

    /// Index of the sample antipodal to `x`, when `n` is even.
    pub fn antipode(&self, x: usize) -> Option<usize> {
        self.n.is_multiple_of(2).then(|| (x + self.n / 2) % self.n)
    }

    /// Sampled tangent vectors `ξ/π ∈ (−1, 1)` at any base point, with the
    /// sample offset each one reaches.
    pub fn tangent_samples(&self) -> Vec<(Rational, i64)> {
        let n = self.n as i64;
        (-(n - 1) / 2..=(n - 1) / 2)
            .filter(|k| 2 * k.abs() < n)
            .map(|k| (Rational::new((2 * k).into(), n.into()), k))
            .collect()
    }

    /// `exp_x(ξ)` for a sampled tangent offset.
    pub fn exp_index(&self, x: usize, offset: i64) -> usize {
        (x as i64 + offset).rem_euclid(self.n as i64) as usize
    }
}

/// Principal logarithm on the circle: the wrapped difference `y − x` in
/// `(−π, π]`. Arguments and result are multiples of π.
pub fn circle_log(x: &Rational, y: &Rational) -> Rational {
    let two = int(2);
    let mut d = y - x;
    // Reduce into (−1, 1].
    let turns = ((&d + int(1)) / &two).floor();
    d -= &two * turns;
    if d <= int(-1) {
        d += &two;
    }
    d
}

/// Local conjugate over the exponential-map test family at one base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConjugate {
    /// `sup_{ξ ∈ V} x*·ξ − f(exp_x ξ)`.
    pub tangent: ExtPi,
    /// `sup_{y ∈ exp_x(V)} x*·log_x(y) − f(y)`.
    pub manifold: ExtPi,
    /// Samples `y` attaining the manifold supremum.
    pub attainers: PointSet,
}

fn local_term(slope: &Rational, xi: &Rational, fy: &ExtReal) -> Option<ExtPi> {
    match fy {
        Extended::PosInf => None,
        Extended::NegInf => Some(Extended::PosInf),
        Extended::Finite(v) => Some(Extended::Finite(PiRational::new(-v, slope * xi))),
    }
}

/// Both sides of the exp-map conjugate identity at base sample `x` and cotangent slope `x*`.
pub fn exp_local_conjugate(grid: &CircleGrid, f: &ExtFn, x: usize, slope: &Rational) -> Result<LocalConjugate> {
    grid.carrier.check_same(f.carrier())?;
    if x >= grid.n {
        return Err(Error::PointOutOfRange { index: x, len: grid.n });
    }
    let tangent = ExtPi::sup(
        grid.tangent_samples()
            .iter()
            .filter_map(|(xi, k)| local_term(slope, xi, f.at(grid.exp_index(x, *k)))),
    );
    let antipode = grid.antipode(x);
    let base = grid.angle(x);
    let terms: Vec<(usize, ExtPi)> = (0..grid.n)
        .filter(|y| Some(*y) != antipode)
        .filter_map(|y| local_term(slope, &circle_log(&base, &grid.angle(y)), f.at(y)).map(|t| (y, t)))
        .collect();
    let manifold = ExtPi::sup(terms.iter().map(|(_, t)| t.clone()));
    let attainers = terms.iter().filter(|(_, t)| *t == manifold).map(|(y, _)| *y).collect();
    Ok(LocalConjugate { tangent, manifold, attainers })
}

/// Strictly increasing sample points of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalGrid {
    points: Vec<Rational>,
    carrier: Carrier,
}

impl IntervalGrid {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedGrid);
        }
        let carrier = Carrier::indexed(points.len())?;
        Ok(IntervalGrid { points, carrier })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grid {
    Circle(CircleGrid),
    Interval(IntervalGrid),
}

impl Grid {
    pub fn carrier(&self) -> &Carrier {
        match self {
            Grid::Circle(c) => c.carrier(),
            Grid::Interval(i) => i.carrier(),
        }
    }

    pub fn len(&self) -> usize {
        self.carrier().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Samples within index distance `radius` of `x` (cyclic on circles).
    pub fn neighborhood(&self, x: usize, radius: usize) -> PointSet {
        let n = self.len();
        match self {
            Grid::Circle(_) => (0..n)
                .filter(|&y| {
                    let d = x.abs_diff(y);
                    d.min(n - d) <= radius
                })
                .collect(),
            Grid::Interval(_) => (0..n).filter(|&y| x.abs_diff(y) <= radius).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    GlobalMin,
    LocalMin,
    None,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Certificate::GlobalMin => "GLOBAL_MIN",
            Certificate::LocalMin => "LOCAL_MIN",
            Certificate::None => "NONE",
        })
    }
}

/// Whether `f − φ` is minimal at `x`, over the grid or over a neighborhood.
///
/// Only points where `f ≠ +∞` and `φ ≠ −∞` compete; elsewhere `f − φ` is
/// `+∞` or undefined. `radius` is clamped to the grid.
pub fn frechet_certificate(grid: &Grid, f: &ExtFn, phi: &ExtFn, x: usize, radius: usize) -> Result<Certificate> {
    grid.carrier().check_same(f.carrier())?;
    f.same_carrier(phi)?;
    if x >= grid.len() {
        return Err(Error::PointOutOfRange { index: x, len: grid.len() });
    }
    if radius == 0 {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    let value = |y: usize| -> Option<ExtReal> {
        let (fy, py) = (f.at(y), phi.at(y));
        if fy.is_pos_inf() || py.is_neg_inf() {
            None
        } else {
            fy.checked_sub(py)
        }
    };
    let Some(vx) = value(x) else {
        return Ok(Certificate::None);
    };
    let below_all = |set: &PointSet| set.iter().filter_map(|&y| value(y)).all(|vy| vx <= vy);
    let everywhere: PointSet = (0..grid.len()).collect();
    if below_all(&everywhere) {
        Ok(Certificate::GlobalMin)
    } else if below_all(&grid.neighborhood(x, radius.min(grid.len()))) {
        Ok(Certificate::LocalMin)
    } else {
        Ok(Certificate::None)
    }
}

/// Geometry checks at one instance: tangent/manifold agreement for each
/// slope, certificates versus attainers for `phi`, the `δ_x` side of
/// Fenchel-Young equality over `family`, and log/exp round trips.
pub fn verify_geometry_laws(
    grid: &Grid,
    f: &ExtFn,
    phi: &ExtFn,
    family: &[ExtFn],
    base: usize,
    slopes: &[Rational],
    radius: usize,
) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    if let Grid::Circle(circle) = grid {
        for s in slopes {
            let lc = exp_local_conjugate(circle, f, base, s)?;
            let at = format!("x={base} slope={}", Extended::Finite(s.clone()));
            out.push(LawReport::new(
                "geometry.tangent-equals-manifold",
                &at,
                Side::Text(lc.tangent.to_string()),
                Side::Text(lc.manifold.to_string()),
                lc.tangent == lc.manifold,
            ));
        }
        let theta = circle.angle(base);
        for (xi, k) in circle.tangent_samples() {
            let y = circle.angle(circle.exp_index(base, k));
            let back = circle_log(&theta, &y);
            out.push(LawReport::new(
                "geometry.log-exp",
                format!("x={base} xi={}*pi", Extended::Finite(xi.clone())),
                Side::Text(Extended::Finite(back.clone()).to_string()),
                Side::Text(Extended::Finite(xi.clone()).to_string()),
                back == xi,
            ));
        }
    }

    let att = attainers(f, phi)?;
    let v = conj(f, phi)?;
    let mut global = BTreeSet::new();
    for x in 0..grid.len() {
        let cert = frechet_certificate(grid, f, phi, x, radius)?;
        if cert == Certificate::GlobalMin {
            global.insert(x);
            // δ_x side: ψ ↦ f*(ψ) − ψ(x) is minimal at φ among the family.
            let here = v.checked_sub(phi.at(x));
            for (j, psi) in family.iter().enumerate() {
                let there = conj(f, psi)?.checked_sub(psi.at(x));
                if let (Some(a), Some(b)) = (&here, &there) {
                    out.push(LawReport::leq(
                        "geometry.dirac-subgradient",
                        format!("x={x} member={j}"),
                        Some(a.clone()),
                        Some(b.clone()),
                    ));
                }
            }
        }
    }
    let names = |s: &PointSet| Side::Text(s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
    out.push(LawReport::new("geometry.global-min-is-attainer", "", names(&global), names(&att), global == att));
    Ok(out)
}
