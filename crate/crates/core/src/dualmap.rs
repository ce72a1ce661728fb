//! Maps between finite carriers, pullbacks `A^⋄ψ = ψ ∘ A`, inf-images, and
//! the conjugate-of-composition rule.

use crate::conjugate::conj;
use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Rational};
use crate::funcspace::{Carrier, ExtFn};
use crate::law::LawReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierMap {
    source: Carrier,
    target: Carrier,
    assignment: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl CarrierMap {
    pub fn new(source: Carrier, target: Carrier, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::LengthMismatch { expected: source.len(), got: assignment.len() });
        }
        let mut fibers = vec![Vec::new(); target.len()];
        for (x, &y) in assignment.iter().enumerate() {
            if y >= target.len() {
                return Err(Error::PointOutOfRange { index: y, len: target.len() });
            }
            fibers[y].push(x);
        }
        Ok(CarrierMap { source, target, assignment, fibers })
    }

    /// Map from `(source point, target point)` name pairs covering the source.
    pub fn from_names<'a, I>(source: Carrier, target: Carrier, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut assignment: Vec<Option<usize>> = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x)?;
            if assignment[i].is_some() {
                return Err(Error::DuplicatePoint(x.to_string()));
            }
            assignment[i] = Some(target.index_of(y)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::MissingValue(source.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(carrier: &Carrier) -> Self {
        Self::new(carrier.clone(), carrier.clone(), (0..carrier.len()).collect())
            .expect("identity is total")
    }

    pub fn source(&self) -> &Carrier {
        &self.source
    }

    pub fn target(&self) -> &Carrier {
        &self.target
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn fiber(&self, y: usize) -> &[usize] {
        &self.fibers[y]
    }

    pub fn is_surjective(&self) -> bool {
        self.fibers.iter().all(|f| !f.is_empty())
    }

    pub fn is_injective(&self) -> bool {
        self.fibers.iter().all(|f| f.len() <= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// `ψ ∘ A` for `ψ` on the target.
    pub fn pullback(&self, psi: &ExtFn) -> Result<ExtFn> {
        self.target.check_same(psi.carrier())?;
        Ok(ExtFn::from_fn(&self.source, |x| psi.at(self.assignment[x]).clone()))
    }

    /// `(f • A⁻¹)(y) = inf { f(x) : A(x) = y }`, `+∞` on empty fibers.
    pub fn inf_image(&self, f: &ExtFn) -> Result<ExtFn> {
        self.source.check_same(f.carrier())?;
        Ok(ExtFn::from_fn(&self.target, |y| ExtReal::inf(self.fibers[y].iter().map(|&x| f.at(x).clone()))))
    }
}

pub fn pullback(a: &CarrierMap, psi: &ExtFn) -> Result<ExtFn> {
    a.pullback(psi)
}

pub fn inf_image(f: &ExtFn, a: &CarrierMap) -> Result<ExtFn> {
    a.inf_image(f)
}

/// `(f • A⁻¹)*(φ) = f*(φ ∘ A)`.
pub fn check_composition_rule(f: &ExtFn, a: &CarrierMap, phi: &ExtFn) -> Result<LawReport> {
    let lhs = conj(&a.inf_image(f)?, phi)?;
    let rhs = conj(f, &a.pullback(phi)?)?;
    let report = LawReport::equal("dual.composition", "", lhs, rhs);
    Ok(if a.is_bijective() { report.with_note("bijective") } else { report })
}

/// Order preservation (and reflection when `A` is surjective), linearity on
/// real-valued arguments, and commutation with constant shifts.
pub fn verify_pullback_laws(a: &CarrierMap, phi: &ExtFn, psi: &ExtFn, alpha: &Rational, c: &Rational) -> Result<Vec<LawReport>> {
    let (pa, pb) = (a.pullback(phi)?, a.pullback(psi)?);
    let mut out = Vec::new();
    let le_target = phi.leq(psi)?;
    let le_source = pa.leq(&pb)?;
    out.push(LawReport::new(
        "dual.pullback-monotone",
        "",
        le_target,
        le_source,
        !le_target || le_source,
    ));
    if a.is_surjective() {
        out.push(LawReport::equal("dual.pullback-order-reflecting", "", le_source, le_target));
    } else {
        out.push(LawReport::not_applicable("dual.pullback-order-reflecting", "", "map is not surjective"));
    }
    if phi.is_real_valued() && psi.is_real_valued() && *alpha != Rational::from_integer(0.into()) {
        let combo = phi.scale(alpha)?.checked_add(psi)?;
        let lhs = a.pullback(&combo)?;
        let rhs = pa.scale(alpha)?.checked_add(&pb)?;
        out.push(LawReport::equal("dual.pullback-linear", "", &lhs, &rhs));
    } else {
        out.push(LawReport::not_applicable("dual.pullback-linear", "", "arguments not real-valued"));
    }
    out.push(LawReport::equal("dual.pullback-shift", "", a.pullback(&phi.add_const(c))?, pa.add_const(c)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ExtReal {
        s.parse().unwrap()
    }

    fn func(c: &Carrier, vals: &[&str]) -> ExtFn {
        ExtFn::new(c.clone(), vals.iter().map(|s| e(s)).collect()).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let src = Carrier::new(["a", "b"]).unwrap();
        let tgt = Carrier::new(["c", "d"]).unwrap();
        let a = CarrierMap::from_names(src.clone(), tgt.clone(), [("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(a.pullback(&func(&tgt, &["1", "7"])).unwrap(), func(&src, &["1", "1"]));
        assert!(!a.is_surjective());
        assert!(!a.is_injective());

        let id = CarrierMap::identity(&src);
        let f = func(&src, &["-inf", "2"]);
        assert_eq!(id.pullback(&f).unwrap(), f);
        assert_eq!(id.inf_image(&f).unwrap(), f);
        assert!(id.is_bijective());
    }

    #[test]
    fn inf_image_examples() {
        let src = Carrier::new(["a", "b"]).unwrap();
        let single = Carrier::new(["c"]).unwrap();
        let a = CarrierMap::from_names(src.clone(), single.clone(), [("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(a.inf_image(&func(&src, &["1", "4"])).unwrap(), func(&single, &["1"]));

        let tgt = Carrier::new(["c", "d"]).unwrap();
        let a = CarrierMap::from_names(src.clone(), tgt.clone(), [("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(a.inf_image(&func(&src, &["1", "4"])).unwrap(), func(&tgt, &["1", "inf"]));
    }

    #[test]
    fn composition_rule_examples() {
        let src = Carrier::new(["a", "b"]).unwrap();
        let single = Carrier::new(["c"]).unwrap();
        let a = CarrierMap::from_names(src.clone(), single.clone(), [("a", "c"), ("b", "c")]).unwrap();
        let r = check_composition_rule(&func(&src, &["1", "4"]), &a, &func(&single, &["0"])).unwrap();
        assert_eq!(r.lhs, crate::law::Side::Scalar(e("-1")));
        assert!(r.passed());

        let swap = CarrierMap::from_names(src.clone(), src.clone(), [("a", "b"), ("b", "a")]).unwrap();
        let f = func(&src, &["1", "3"]);
        let phi = func(&src, &["2", "5"]);
        let r = check_composition_rule(&f, &swap, &phi).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, crate::law::Side::Scalar(e("4")));
    }

    #[test]
    fn rejects_bad_maps() {
        let src = Carrier::new(["a", "b"]).unwrap();
        assert!(CarrierMap::from_names(src.clone(), src.clone(), [("a", "b")]).is_err());
        assert!(CarrierMap::new(src.clone(), src.clone(), vec![0, 5]).is_err());
        let a = CarrierMap::identity(&src);
        assert!(a.pullback(&func(&Carrier::indexed(2).unwrap(), &["1", "1"])).is_err());
    }

    #[test]
    fn pullback_laws_hold() {
        let src = Carrier::indexed(3).unwrap();
        let tgt = Carrier::new(["u", "v"]).unwrap();
        let a = CarrierMap::new(src, tgt.clone(), vec![0, 0, 1]).unwrap();
        let reports = verify_pullback_laws(
            &a,
            &func(&tgt, &["1", "2"]),
            &func(&tgt, &["3", "-1"]),
            &crate::extreal::int(2),
            &crate::extreal::int(-3),
        )
        .unwrap();
        assert!(reports.iter().all(|r| !r.failed()), "{reports:#?}");
    }
}
