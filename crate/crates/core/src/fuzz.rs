//! Seeded random instance generators and a law sweep over them.
//!
//! Values are drawn from a small pool so ties, shifts, and infinities are
//! common: that is where the interesting edge cases of the laws live.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugate::{formulation_report, verify_algebraic_laws, verify_analytic_laws, verify_young};
use crate::dualmap::{check_composition_rule, verify_pullback_laws, CarrierMap};
use crate::error::Result;
use crate::extreal::{int, ratio, ExtReal, Extended, Rational};
use crate::funcspace::{Carrier, ExtFn};
use crate::geometry::{verify_geometry_laws, CircleGrid, Grid};
use crate::group::{dual_samples, midpoint_checks, verify_infconv_laws, GroupFn, GroupSpec};
use crate::law::LawReport;
use crate::regclose::{regularize, verify_closure_laws, verify_conjugate_interplay, TestFamily};

/// Convexity weights used by the analytic suite.
pub fn lambdas() -> Vec<Rational> {
    vec![ratio(1, 4), ratio(1, 2), ratio(3, 4)]
}

pub struct Fuzzer {
    rng: ChaCha8Rng,
}

impl Fuzzer {
    pub fn new(seed: u64) -> Self {
        Fuzzer { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A finite decimal: mostly halves in `[-4, 4]`, sometimes hundredths.
    pub fn real(&mut self) -> Rational {
        if self.rng.gen_bool(0.8) {
            ratio(self.rng.gen_range(-8..=8), 2)
        } else {
            ratio(self.rng.gen_range(-400..=400), 100)
        }
    }

    pub fn nonzero_real(&mut self) -> Rational {
        loop {
            let r = self.real();
            if r != int(0) {
                return r;
            }
        }
    }

    pub fn positive_real(&mut self) -> Rational {
        ratio(self.rng.gen_range(1..=12), self.rng.gen_range(1..=4))
    }

    /// `−∞` and `+∞` each with probability 1/8.
    pub fn value(&mut self) -> ExtReal {
        match self.rng.gen_range(0..8) {
            0 => Extended::NegInf,
            1 => Extended::PosInf,
            _ => Extended::Finite(self.real()),
        }
    }

    pub fn upper_value(&mut self) -> ExtReal {
        if self.rng.gen_bool(0.15) {
            Extended::PosInf
        } else {
            Extended::Finite(self.real())
        }
    }

    pub fn carrier(&mut self, max: usize) -> Carrier {
        let n = self.rng.gen_range(1..=max);
        Carrier::indexed(n).expect("nonempty")
    }

    pub fn function(&mut self, c: &Carrier) -> ExtFn {
        ExtFn::from_fn(c, |_| self.value())
    }

    /// Nowhere `−∞`.
    pub fn lower_extended(&mut self, c: &Carrier) -> ExtFn {
        ExtFn::from_fn(c, |_| self.upper_value())
    }

    pub fn real_function(&mut self, c: &Carrier) -> ExtFn {
        ExtFn::from_fn(c, |_| Extended::Finite(self.real()))
    }

    /// One of several shapes: arbitrary, lower-extended, real-valued,
    /// constant, or a shift of `base`.
    pub fn related(&mut self, c: &Carrier, base: &ExtFn) -> ExtFn {
        match self.rng.gen_range(0..6) {
            0 | 1 => self.function(c),
            2 => self.lower_extended(c),
            3 => self.real_function(c),
            4 => ExtFn::constant(c, self.value()),
            _ => base.add_const(&self.real()),
        }
    }

    pub fn family(&mut self, c: &Carrier, real_valued: bool, max: usize) -> Vec<ExtFn> {
        let k = self.rng.gen_range(1..=max);
        (0..k)
            .map(|_| if real_valued { self.real_function(c) } else { self.related(c, &ExtFn::constant(c, ExtReal::zero())) })
            .collect()
    }

    /// Indicators of a nested chain of sets, plus `0`: a convex cone modulo shifts.
    pub fn cone_family(&mut self, c: &Carrier) -> TestFamily {
        let mut order: Vec<usize> = (0..c.len()).collect();
        order.shuffle(&mut self.rng);
        let mut members = vec![ExtFn::constant(c, ExtReal::zero())];
        let mut kept = c.len();
        for _ in 0..self.rng.gen_range(0..=2) {
            kept = self.rng.gen_range(0..=kept);
            let set = &order[..kept];
            members.push(ExtFn::from_fn(c, |i| if set.contains(&i) { ExtReal::zero() } else { Extended::PosInf }));
        }
        TestFamily::new(c.clone(), members).expect("same carrier").declare_cone(true)
    }

    /// Arbitrary map, biased towards empty and large fibers.
    pub fn map(&mut self, source: &Carrier, target: &Carrier) -> CarrierMap {
        let hits = self.rng.gen_range(1..=target.len());
        let assignment = (0..source.len()).map(|_| self.rng.gen_range(0..hits)).collect();
        CarrierMap::new(source.clone(), target.clone(), assignment).expect("in range")
    }

    pub fn surjective_map(&mut self, source: &Carrier, target: &Carrier) -> CarrierMap {
        let mut assignment: Vec<usize> = (0..source.len()).map(|i| i % target.len()).collect();
        assignment.shuffle(&mut self.rng);
        CarrierMap::new(source.clone(), target.clone(), assignment).expect("in range")
    }

    pub fn group_spec(&mut self) -> Arc<GroupSpec> {
        match self.rng.gen_range(0..3) {
            0 => GroupSpec::zd(1, self.rng.gen_range(2..=8)),
            1 => GroupSpec::zd(2, self.rng.gen_range(1..=3)),
            _ => GroupSpec::dyadic(self.rng.gen_range(1..=3), int(self.rng.gen_range(1..=2))),
        }
        .expect("small window")
    }

    /// Supported in the half window, so any two such functions convolve in-window.
    pub fn group_fn(&mut self, spec: &Arc<GroupSpec>, allow_neg_inf: bool) -> GroupFn {
        let half = half_window(spec);
        GroupFn::from_fn(spec, |x| {
            if !half.contains(&x) || self.rng.gen_bool(0.4) {
                Extended::PosInf
            } else if allow_neg_inf && self.rng.gen_bool(0.05) {
                Extended::NegInf
            } else {
                Extended::Finite(self.real())
            }
        })
    }

    /// `a·|δ_x|² + ⟨b, δ_x⟩ + c` restricted to a symmetric box, or a random function.
    pub fn midpoint_candidate(&mut self, spec: &Arc<GroupSpec>) -> GroupFn {
        if self.rng.gen_bool(0.3) {
            return GroupFn::from_fn(spec, |_| self.value());
        }
        let a = ratio(self.rng.gen_range(0..=4), 2);
        let b: Vec<Rational> = (0..spec.hom_count()).map(|_| self.real()).collect();
        let c = self.real();
        let cut = self.rng.gen_bool(0.5).then(|| self.positive_real());
        GroupFn::from_fn(spec, |x| {
            let d = spec.embed(x);
            if cut.as_ref().is_some_and(|r| d.iter().any(|v| v > r || -v > *r)) {
                return Extended::PosInf;
            }
            let sq: Rational = d.iter().map(|v| v * v).sum();
            let lin: Rational = d.iter().zip(&b).map(|(v, w)| v * w).sum();
            Extended::Finite(&a * sq + lin + &c)
        })
    }

    pub fn coeffs(&mut self, spec: &GroupSpec) -> Vec<Rational> {
        (0..spec.hom_count()).map(|_| self.real()).collect()
    }
}

fn half_window(spec: &GroupSpec) -> Vec<usize> {
    let e = spec.identity();
    (0..spec.len()).filter(|&x| spec.op(x, x).is_some() || x == e).collect()
}

/// Every law suite on one random instance; `index` labels the reports.
pub fn fuzz_instance(fz: &mut Fuzzer, index: usize) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    let c = fz.carrier(8);
    let f = fz.function(&c);
    let g = fz.related(&c, &f);
    let phi = fz.related(&c, &f);
    let psi = fz.related(&c, &phi);
    let family = fz.family(&c, false, 4);
    let (alpha, beta) = (fz.positive_real(), fz.real());

    out.push(formulation_report(&f, &phi)?);
    out.extend(verify_young(&f, &phi, &family)?);
    out.extend(verify_algebraic_laws(&f, &g, &phi, &psi, &alpha, &beta)?);
    let shifts = vec![fz.positive_real(), int(0)];
    out.extend(verify_analytic_laws(&f, &family, &lambdas(), &shifts)?);

    let src = fz.carrier(8);
    let a = fz.map(&src, &c);
    let h = fz.function(&src);
    out.push(check_composition_rule(&h, &a, &phi)?);
    out.extend(verify_pullback_laws(&a, &phi, &psi, &alpha, &beta)?);

    let big_f = TestFamily::new(c.clone(), fz.family(&c, true, 3))?;
    let (closure_f, closure_g) = match fz.rng.gen_range(0..3) {
        0 => (big_f.clone(), big_f.extended_by(fz.family(&c, true, 2))?),
        1 => (big_f.clone(), fz.cone_family(&c)),
        _ => {
            let cone = fz.cone_family(&c);
            let larger = cone.extended_by(fz.family(&c, false, 2))?;
            (cone, larger)
        }
    };
    let alphas = vec![ratio(1, 2), int(2)];
    out.extend(verify_closure_laws(&f, &g, &closure_f, &closure_g, &alphas)?);
    let phi_lsc = regularize(&fz.function(&c), &big_f)?;
    let probes = vec![fz.function(&src), fz.function(&src)];
    out.extend(verify_conjugate_interplay(&f, &g, &big_f, &phi_lsc, &a, &probes)?);

    let circle = CircleGrid::new(fz.rng.gen_range(3..=16))?;
    let cf = fz.function(circle.carrier());
    let cphi = fz.related(circle.carrier(), &cf);
    let base = fz.rng.gen_range(0..circle.n());
    let slopes = vec![fz.real(), fz.real()];
    out.extend(verify_geometry_laws(&Grid::Circle(circle), &cf, &cphi, &[cphi.clone(), cf.clone()], base, &slopes, 1)?);

    let spec = fz.group_spec();
    out.extend(spec.verify_axioms());
    let (gf, gg) = (fz.group_fn(&spec, true), fz.group_fn(&spec, false));
    let coeffs = fz.coeffs(&spec);
    out.extend(verify_infconv_laws(&gf, &gg, &coeffs)?);
    let cand = fz.midpoint_candidate(&spec);
    out.extend(midpoint_checks(&cand, &dual_samples(&cand))?);

    Ok(out.into_iter().map(|r| r.in_context(&format!("fuzz{index}"))).collect())
}

/// Reports for `count` instances drawn from `seed`.
pub fn fuzz_reports(seed: u64, count: usize) -> Result<Vec<LawReport>> {
    let mut fz = Fuzzer::new(seed);
    let mut out = Vec::new();
    for i in 0..count {
        out.extend(fuzz_instance(&mut fz, i)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = fuzz_reports(7, 3).unwrap();
        let b = fuzz_reports(7, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, fuzz_reports(8, 3).unwrap());
    }

    #[test]
    fn sweep_has_no_failures() {
        let reports = fuzz_reports(1, 25).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| r.failed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn cone_families_verify() {
        let mut fz = Fuzzer::new(3);
        for _ in 0..20 {
            let c = fz.carrier(6);
            assert!(fz.cone_family(&c).verify_cone(&[ratio(1, 2), int(3)]).unwrap());
        }
    }
}
