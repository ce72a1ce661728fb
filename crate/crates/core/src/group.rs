//! Finite windows of abelian groups with nontrivial real homomorphisms,
//! infimal convolution, and mid-point convexity checks.
//!
//! Elements are stored as integer coordinate vectors in "units": plain
//! integers for `ℤ^d`, and numerators over `2^depth` for the dyadic
//! rationals. Composition is coordinate addition in both cases.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, Integer};

use crate::conjugate::conj;
use crate::error::{Error, Result};
use crate::extreal::{format_rational, parse_rational, ExtReal, Extended, Rational};
use crate::funcspace::{Carrier, ExtFn};
use crate::law::{LawReport, Side};

/// Largest window the brute-force routines accept.
pub const MAX_WINDOW: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `{x ∈ ℤ^d : |x_i| ≤ radius}`.
    Zd { d: usize, radius: u32 },
    /// `{j / 2^depth : |j / 2^depth| ≤ window}`.
    Dyadic { depth: u32, window: Rational },
}

#[derive(Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    dims: usize,
    bound: i64,
    elements: Vec<Vec<i64>>,
    carrier: Carrier,
}

impl GroupSpec {
    pub fn zd(d: usize, radius: u32) -> Result<Arc<Self>> {
        if d == 0 {
            return Err(Error::Precondition("Zd needs d >= 1".into()));
        }
        Self::build(GroupKind::Zd { d, radius }, d, radius as i64)
    }

    pub fn dyadic(depth: u32, window: Rational) -> Result<Arc<Self>> {
        if depth > 30 {
            return Err(Error::Precondition("dyadic depth must be at most 30".into()));
        }
        if window < Rational::from_integer(0.into()) {
            return Err(Error::Precondition("dyadic window must be nonnegative".into()));
        }
        let units = (&window * Rational::from_integer(BigInt::from(1u64 << depth))).floor().to_integer();
        let bound = i64::try_from(units).map_err(|_| Error::Precondition("dyadic window too large".into()))?;
        Self::build(GroupKind::Dyadic { depth, window }, 1, bound)
    }

    pub fn from_kind(kind: GroupKind) -> Result<Arc<Self>> {
        match kind {
            GroupKind::Zd { d, radius } => Self::zd(d, radius),
            GroupKind::Dyadic { depth, window } => Self::dyadic(depth, window),
        }
    }

    fn build(kind: GroupKind, dims: usize, bound: i64) -> Result<Arc<Self>> {
        let side = (2 * bound + 1) as usize;
        let size = side
            .checked_pow(dims as u32)
            .filter(|&s| s <= MAX_WINDOW)
            .ok_or_else(|| Error::Precondition(format!("window exceeds {MAX_WINDOW} elements")))?;
        let elements: Vec<Vec<i64>> = (0..size)
            .map(|mut idx| {
                let mut c = vec![0; dims];
                for slot in c.iter_mut().rev() {
                    *slot = (idx % side) as i64 - bound;
                    idx /= side;
                }
                c
            })
            .collect();
        let mut spec = GroupSpec { kind, dims, bound, elements, carrier: Carrier::indexed(1)? };
        let names: Vec<String> = (0..size).map(|i| spec.format_units(&spec.elements[i])).collect();
        spec.carrier = Carrier::new(names)?;
        Ok(Arc::new(spec))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self.kind, GroupKind::Dyadic { .. })
    }

    /// Number of basis homomorphisms into `(ℝ, +)`.
    pub fn hom_count(&self) -> usize {
        self.dims
    }

    fn unit(&self) -> Rational {
        match &self.kind {
            GroupKind::Zd { .. } => Rational::from_integer(1.into()),
            GroupKind::Dyadic { depth, .. } => Rational::new(1.into(), BigInt::from(1u64 << depth)),
        }
    }

    fn format_units(&self, units: &[i64]) -> String {
        match self.kind {
            GroupKind::Zd { .. } => units.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            GroupKind::Dyadic { .. } => format_rational(&(self.unit() * Rational::from_integer(units[0].into()))),
        }
    }

    fn index_of_units(&self, units: &[i64]) -> Option<usize> {
        let side = 2 * self.bound + 1;
        let mut idx = 0i64;
        for &c in units {
            if c.abs() > self.bound {
                return None;
            }
            idx = idx * side + c + self.bound;
        }
        Some(idx as usize)
    }

    /// Index of an element written as `"a,b"` (`ℤ^d`) or a rational (dyadic).
    pub fn index_of(&self, text: &str) -> Result<usize> {
        let unknown = || Error::UnknownPoint(text.to_string());
        let units: Vec<i64> = match &self.kind {
            GroupKind::Zd { .. } => text
                .split(',')
                .map(|p| p.trim().parse::<i64>().map_err(|_| unknown()))
                .collect::<Result<_>>()?,
            GroupKind::Dyadic { depth, .. } => {
                let v = parse_rational(text.trim())? * Rational::from_integer(BigInt::from(1u64 << depth));
                if !v.is_integer() {
                    return Err(unknown());
                }
                vec![i64::try_from(v.to_integer()).map_err(|_| unknown())?]
            }
        };
        if units.len() != self.dims {
            return Err(unknown());
        }
        self.index_of_units(&units).ok_or_else(unknown)
    }

    pub fn name(&self, i: usize) -> &str {
        self.carrier.name(i)
    }

    pub fn identity(&self) -> usize {
        self.index_of_units(&vec![0; self.dims]).expect("identity lies in every window")
    }

    /// `x · y`, or `None` when it leaves the window.
    pub fn op(&self, x: usize, y: usize) -> Option<usize> {
        let sum: Vec<i64> = self.elements[x].iter().zip(&self.elements[y]).map(|(a, b)| a + b).collect();
        self.index_of_units(&sum)
    }

    pub fn inv(&self, x: usize) -> usize {
        let neg: Vec<i64> = self.elements[x].iter().map(|a| -a).collect();
        self.index_of_units(&neg).expect("windows are symmetric")
    }

    /// The element `m` with `m · m = x · y`, when it lies in the window.
    pub fn midpoint(&self, x: usize, y: usize) -> Option<usize> {
        let sum: Option<Vec<i64>> = self.elements[x]
            .iter()
            .zip(&self.elements[y])
            .map(|(a, b)| (a + b).is_even().then_some((a + b) / 2))
            .collect();
        self.index_of_units(&sum?)
    }

    /// `h_b(x)` for basis homomorphism `b`.
    pub fn hom(&self, b: usize, x: usize) -> Rational {
        self.unit() * Rational::from_integer(self.elements[x][b].into())
    }

    /// `δ_x`: the values of every basis homomorphism at `x`.
    pub fn embed(&self, x: usize) -> Vec<Rational> {
        (0..self.dims).map(|b| self.hom(b, x)).collect()
    }

    /// `Σ coeffs_b · h_b` as a function on the window.
    pub fn hom_combination(&self, coeffs: &[Rational]) -> Result<ExtFn> {
        if coeffs.len() != self.dims {
            return Err(Error::LengthMismatch { expected: self.dims, got: coeffs.len() });
        }
        Ok(ExtFn::from_fn(&self.carrier, |x| {
            Extended::Finite(coeffs.iter().enumerate().map(|(b, c)| c * self.hom(b, x)).sum())
        }))
    }

    /// Identity, inverse, and homomorphism checks over all in-window pairs.
    pub fn verify_axioms(&self) -> Vec<LawReport> {
        let e = self.identity();
        let n = self.len();
        let identity_ok = (0..n).all(|x| self.op(x, e) == Some(x) && self.op(e, x) == Some(x));
        let inverse_ok = (0..n).all(|x| self.op(x, self.inv(x)) == Some(e));
        let mut additive = true;
        for x in 0..n {
            for y in 0..n {
                if let Some(xy) = self.op(x, y) {
                    let (dx, dy, dxy) = (self.embed(x), self.embed(y), self.embed(xy));
                    additive &= dxy.iter().zip(dx.iter().zip(&dy)).all(|(s, (a, b))| *s == a + b);
                }
            }
        }
        vec![
            LawReport::new("group.identity", "", identity_ok, true, identity_ok),
            LawReport::new("group.inverse", "", inverse_ok, true, inverse_ok),
            LawReport::new("group.embedding-homomorphism", "", additive, true, additive),
        ]
    }
}

/// A function on the window; everything outside the window is `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFn {
    spec: Arc<GroupSpec>,
    f: ExtFn,
}

impl GroupFn {
    pub fn new(spec: &Arc<GroupSpec>, values: Vec<ExtReal>) -> Result<Self> {
        let f = ExtFn::new(spec.carrier.clone(), values)?;
        Ok(GroupFn { spec: spec.clone(), f })
    }

    pub fn from_fn(spec: &Arc<GroupSpec>, f: impl FnMut(usize) -> ExtReal) -> Self {
        GroupFn { spec: spec.clone(), f: ExtFn::from_fn(&spec.carrier, f) }
    }

    /// Values at named elements, `default` elsewhere.
    pub fn from_entries<'a, I>(spec: &Arc<GroupSpec>, entries: I, default: ExtReal) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, ExtReal)>,
    {
        let mut values = vec![default; spec.len()];
        let mut seen = vec![false; spec.len()];
        for (name, v) in entries {
            let i = spec.index_of(name)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicatePoint(name.to_string()));
            }
            values[i] = v;
        }
        Self::new(spec, values)
    }

    pub fn indicator(spec: &Arc<GroupSpec>, points: &[usize]) -> Self {
        Self::from_fn(spec, |x| if points.contains(&x) { ExtReal::zero() } else { Extended::PosInf })
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn as_fn(&self) -> &ExtFn {
        &self.f
    }

    pub fn at(&self, x: usize) -> &ExtReal {
        self.f.at(x)
    }

    fn support(&self) -> Vec<usize> {
        (0..self.spec.len()).filter(|&x| !self.at(x).is_pos_inf()).collect()
    }

    fn check_same(&self, other: &GroupFn) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::CarrierMismatch("functions live on different group windows".into()))
        }
    }
}

impl std::fmt::Display for GroupFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// Every product of effective-domain points must stay in the window, so the
/// window carries the whole convolution.
fn check_window(f: &GroupFn, g: &GroupFn) -> Result<()> {
    f.check_same(g)?;
    let spec = &f.spec;
    let gs = g.support();
    for z in f.support() {
        for &y in &gs {
            if spec.op(z, y).is_none() {
                return Err(Error::WindowOverflow(format!("{} · {} leaves the window", spec.name(z), spec.name(y))));
            }
        }
    }
    Ok(())
}

fn convolve(spec: &Arc<GroupSpec>, term: impl Fn(usize, usize) -> Option<Option<ExtReal>>) -> GroupFn {
    GroupFn::from_fn(spec, |x| ExtReal::inf((0..spec.len()).filter_map(|y| term(x, y).flatten())))
}

/// `(f □ g)(x) = inf_y f(x · y⁻¹) + g(y)`; undefined sums are skipped.
pub fn inf_convolution(f: &GroupFn, g: &GroupFn) -> Result<GroupFn> {
    check_window(f, g)?;
    let spec = &f.spec;
    let out = convolve(spec, |x, y| spec.op(x, spec.inv(y)).map(|xy| f.at(xy).checked_add(g.at(y))));
    debug_assert_eq!(out, convolve_symmetric(f, g), "both convolution orders must agree");
    Ok(out)
}

/// `inf_z f(z) + g(z⁻¹ · x)`.
pub fn inf_convolution_symmetric(f: &GroupFn, g: &GroupFn) -> Result<GroupFn> {
    check_window(f, g)?;
    Ok(convolve_symmetric(f, g))
}

fn convolve_symmetric(f: &GroupFn, g: &GroupFn) -> GroupFn {
    let spec = &f.spec;
    convolve(spec, |x, z| spec.op(spec.inv(z), x).map(|zx| f.at(z).checked_add(g.at(zx))))
}

fn coeff_text(coeffs: &[Rational]) -> String {
    format!("coeffs=({})", coeffs.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

/// `(f □ g)*(φ) = f*(φ) + g*(φ)` for `φ = Σ coeffs · h`.
pub fn check_infconv_formula(f: &GroupFn, g: &GroupFn, coeffs: &[Rational]) -> Result<LawReport> {
    let law = "group.infconv-formula";
    let inst = coeff_text(coeffs);
    let phi = f.spec.hom_combination(coeffs)?;
    if !f.f.is_lower_extended() || !g.f.is_lower_extended() {
        return Ok(LawReport::not_applicable(law, inst, "f or g takes the value -inf"));
    }
    let lhs = conj(inf_convolution(f, g)?.as_fn(), &phi)?;
    let rhs = conj(&f.f, &phi)?.checked_add(&conj(&g.f, &phi)?);
    assert!(rhs.is_some(), "conjugates of lower-extended functions never sum to inf - inf");
    Ok(LawReport::equal(law, inst, lhs, rhs))
}

/// Both convolution orders, commutativity, the neutral element, and the conjugate formula.
pub fn verify_infconv_laws(f: &GroupFn, g: &GroupFn, coeffs: &[Rational]) -> Result<Vec<LawReport>> {
    let fg = inf_convolution(f, g)?;
    let gf = inf_convolution(g, f)?;
    let neutral = GroupFn::indicator(&f.spec, &[f.spec.identity()]);
    Ok(vec![
        LawReport::equal("group.infconv-orders", "", fg.as_fn(), inf_convolution_symmetric(f, g)?.as_fn()),
        LawReport::equal("group.infconv-commutative", "", fg.as_fn(), gf.as_fn()),
        LawReport::equal("group.infconv-neutral", "", inf_convolution(f, &neutral)?.as_fn(), f.as_fn()),
        check_infconv_formula(f, g, coeffs)?,
    ])
}

/// `a ≤ (b + c)/2` in the epigraph sense: vacuous when `b` or `c` is `+∞`.
fn midpoint_ineq(a: &ExtReal, b: &ExtReal, c: &ExtReal) -> bool {
    if b.is_pos_inf() || c.is_pos_inf() {
        return true;
    }
    let sum = b.checked_add(c).expect("no +inf summand");
    let half = Rational::new(1.into(), 2.into());
    *a <= sum.scale(&half).expect("nonzero scale")
}

/// Samples of a function on the algebraic dual, keyed by embedded point.
pub type DualSamples = BTreeMap<Vec<Rational>, ExtReal>;

/// `f` on the embedded window, read off from `ψ` through `δ`.
pub fn dual_samples(psi: &GroupFn) -> DualSamples {
    (0..psi.spec.len()).map(|x| (psi.spec.embed(x), psi.at(x).clone())).collect()
}

/// First in-window pair `(x, y)` violating `ψ(x) ≤ ½(ψ(y·x) + ψ(y⁻¹·x))`.
pub fn group_convex_violation(psi: &GroupFn) -> Option<(usize, usize)> {
    let spec = &psi.spec;
    (0..spec.len()).flat_map(|x| (0..spec.len()).map(move |y| (x, y))).find(|&(x, y)| {
        match (spec.op(y, x), spec.op(spec.inv(y), x)) {
            (Some(yx), Some(ix)) => !midpoint_ineq(psi.at(x), psi.at(yx), psi.at(ix)),
            _ => false,
        }
    })
}

/// First embedded pair whose embedded midpoint violates the mid-point inequality for `f`.
fn midpoint_violation(spec: &GroupSpec, f: &[ExtReal]) -> Option<(usize, usize)> {
    (0..spec.len()).flat_map(|a| (a..spec.len()).map(move |b| (a, b))).find(|&(a, b)| {
        spec.midpoint(a, b).is_some_and(|m| !midpoint_ineq(&f[m], &f[a], &f[b]))
    })
}

/// Mid-point convexity transfer between `f` on the dual and `ψ = f ∘ δ`.
pub fn midpoint_checks(psi: &GroupFn, f_on_dual: &DualSamples) -> Result<Vec<LawReport>> {
    let spec = &psi.spec;
    let f: Vec<ExtReal> = (0..spec.len())
        .map(|x| f_on_dual.get(&spec.embed(x)).cloned().ok_or_else(|| Error::MissingValue(spec.name(x).into())))
        .collect::<Result<_>>()?;
    let pulled = GroupFn::new(spec, f.clone())?;
    let mut out = vec![LawReport::equal("group.psi-is-pullback", "", psi.as_fn(), pulled.as_fn())];

    let pair = |p: Option<(usize, usize)>| match p {
        None => Side::Truth(true),
        Some((a, b)) => Side::Text(format!("fails at ({}, {})", spec.name(a), spec.name(b))),
    };
    let f_mid = midpoint_violation(spec, &f);
    let psi_convex = group_convex_violation(psi);

    out.push(if f_mid.is_some() {
        LawReport::not_applicable("group.midpoint-item1", "", "f is not mid-point convex on the embedded window")
    } else {
        LawReport::new("group.midpoint-item1", "", pair(f_mid), pair(psi_convex), psi_convex.is_none())
    });
    out.push(if !spec.is_dyadic() {
        LawReport::not_applicable("group.midpoint-item2", "", "embedded image is not mid-point convex")
    } else if psi_convex.is_some() {
        LawReport::not_applicable("group.midpoint-item2", "", "psi violates the group mid-point inequality")
    } else {
        LawReport::new("group.midpoint-item2", "", pair(psi_convex), pair(f_mid), f_mid.is_none())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{int, ratio};
    use num::Signed;

    fn e(s: &str) -> ExtReal {
        s.parse().unwrap()
    }

    #[test]
    fn windows_enumerate() {
        let z = GroupSpec::zd(2, 1).unwrap();
        assert_eq!(z.len(), 9);
        assert_eq!(z.name(0), "-1,-1");
        assert_eq!(z.index_of("1,0").unwrap(), 7);
        assert_eq!(z.name(z.identity()), "0,0");
        assert!(z.index_of("2,0").is_err());

        let d = GroupSpec::dyadic(2, int(1)).unwrap();
        assert_eq!(d.len(), 9);
        assert_eq!(d.index_of("3/4").unwrap(), 7);
        assert_eq!(d.index_of("0.75").unwrap(), 7);
        assert!(d.index_of("1/8").is_err());
        assert_eq!(d.hom(0, 7), ratio(3, 4));
        assert_eq!(d.midpoint(d.index_of("1/4").unwrap(), d.index_of("3/4").unwrap()), d.index_of("1/2").ok());
        assert_eq!(d.midpoint(d.index_of("1/4").unwrap(), d.index_of("1/2").unwrap()), None);
    }

    #[test]
    fn axioms_hold() {
        for spec in [GroupSpec::zd(1, 4).unwrap(), GroupSpec::zd(2, 2).unwrap(), GroupSpec::dyadic(3, int(2)).unwrap()] {
            assert!(spec.verify_axioms().iter().all(LawReport::passed));
        }
    }

    #[test]
    fn convolution_examples() {
        let spec = GroupSpec::zd(1, 8).unwrap();
        let at = |s: &str| spec.index_of(s).unwrap();
        let f = GroupFn::indicator(&spec, &[at("2")]);
        let g = GroupFn::indicator(&spec, &[at("3")]);
        assert_eq!(inf_convolution(&f, &g).unwrap(), GroupFn::indicator(&spec, &[at("5")]));

        let neutral = GroupFn::indicator(&spec, &[spec.identity()]);
        let h = GroupFn::from_fn(&spec, |x| if x % 3 == 0 { Extended::PosInf } else { ExtReal::from_int(x as i64 % 5) });
        let small = GroupFn::from_fn(&spec, |x| if spec.hom(0, x).abs() <= int(4) { h.at(x).clone() } else { Extended::PosInf });
        assert_eq!(inf_convolution(&small, &neutral).unwrap(), small);

        let top = GroupFn::from_fn(&spec, |_| Extended::PosInf);
        assert_eq!(inf_convolution(&top, &h).unwrap(), top);
    }

    #[test]
    fn overflow_is_an_error() {
        let spec = GroupSpec::zd(1, 3).unwrap();
        let f = GroupFn::indicator(&spec, &[spec.index_of("2").unwrap()]);
        let g = GroupFn::indicator(&spec, &[spec.index_of("3").unwrap()]);
        assert!(matches!(inf_convolution(&f, &g), Err(Error::WindowOverflow(_))));
    }

    #[test]
    fn formula_examples() {
        let spec = GroupSpec::zd(1, 8).unwrap();
        let at = |s: &str| spec.index_of(s).unwrap();
        let f = GroupFn::indicator(&spec, &[at("2")]);
        let g = GroupFn::indicator(&spec, &[at("3")]);
        let r = check_infconv_formula(&f, &g, &[int(1)]).unwrap();
        assert_eq!(r.lhs, Side::Scalar(e("5")));
        assert!(r.passed());

        let id = GroupFn::indicator(&spec, &[spec.identity()]);
        let r = check_infconv_formula(&id, &id, &[ratio(-7, 3)]).unwrap();
        assert_eq!(r.lhs, Side::Scalar(e("0")));
        assert!(r.passed());

        let top = GroupFn::from_fn(&spec, |_| Extended::PosInf);
        let r = check_infconv_formula(&top, &g, &[int(2)]).unwrap();
        assert_eq!(r.lhs, Side::Scalar(e("-inf")));
        assert!(r.passed());

        let bottom = GroupFn::indicator(&spec, &[at("0")]);
        let bottom = GroupFn::from_fn(&spec, |x| if x == at("1") { Extended::NegInf } else { bottom.at(x).clone() });
        assert_eq!(check_infconv_formula(&bottom, &g, &[int(1)]).unwrap().verdict, crate::law::Verdict::NotApplicable);
    }

    #[test]
    fn midpoint_examples() {
        let spec = GroupSpec::zd(1, 6).unwrap();
        let sq = GroupFn::from_fn(&spec, |x| Extended::Finite(spec.hom(0, x) * spec.hom(0, x)));
        let reports = midpoint_checks(&sq, &dual_samples(&sq)).unwrap();
        assert!(reports[0].passed() && reports[1].passed(), "{reports:#?}");
        assert_eq!(reports[2].verdict, crate::law::Verdict::NotApplicable);

        let spec = GroupSpec::zd(2, 2).unwrap();
        let affine = GroupFn { spec: spec.clone(), f: spec.hom_combination(&[int(3), ratio(-1, 2)]).unwrap() };
        for x in 0..spec.len() {
            for y in 0..spec.len() {
                if let (Some(a), Some(b)) = (spec.op(y, x), spec.op(spec.inv(y), x)) {
                    let sum = affine.at(a).checked_add(affine.at(b)).unwrap();
                    assert_eq!(sum, affine.at(x).scale(&int(2)).unwrap());
                }
            }
        }

        let spec = GroupSpec::dyadic(3, int(2)).unwrap();
        let abs = GroupFn::from_fn(&spec, |x| Extended::Finite(spec.hom(0, x).abs()));
        let reports = midpoint_checks(&abs, &dual_samples(&abs)).unwrap();
        assert!(reports.iter().all(LawReport::passed), "{reports:#?}");

        let bumpy = GroupFn::from_fn(&spec, |x| ExtReal::from_int((x % 2) as i64));
        let reports = midpoint_checks(&bumpy, &dual_samples(&bumpy)).unwrap();
        assert!(reports.iter().all(|r| !r.failed()));
        assert_eq!(reports[2].verdict, crate::law::Verdict::NotApplicable);
    }

    #[test]
    fn midpoint_oracle_on_dyadic_window() {
        // Brute-force triple enumeration against the pair-based check.
        let spec = GroupSpec::dyadic(2, int(1)).unwrap();
        let vals = ["3", "1", "0", "-inf", "0", "1", "inf", "5", "2"];
        let psi = GroupFn::new(&spec, vals.iter().map(|s| e(s)).collect()).unwrap();
        let mut ok = true;
        for x in 0..spec.len() {
            for y in 0..spec.len() {
                let (a, b) = (spec.hom(0, x) + spec.hom(0, y), spec.hom(0, x) - spec.hom(0, y));
                let find = |v: &Rational| (0..spec.len()).find(|&i| spec.hom(0, i) == *v);
                if let (Some(a), Some(b)) = (find(&a), find(&b)) {
                    ok &= midpoint_ineq(psi.at(x), psi.at(a), psi.at(b));
                }
            }
        }
        assert_eq!(group_convex_violation(&psi).is_none(), ok);
        assert_eq!(midpoint_violation(&spec, psi.as_fn().values()).is_none(), ok);
    }
}
