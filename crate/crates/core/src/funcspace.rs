//! Extended-real-valued functions on a finite carrier.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Extended, Extremum, Rational};

/// Set of carrier indices. Ordered so that reports list points in carrier order.
pub type PointSet = BTreeSet<usize>;

#[derive(Debug)]
struct CarrierInner {
    points: Vec<String>,
    index: HashMap<String, usize>,
}

/// Non-empty ordered list of distinct point names. Cheap to clone.
#[derive(Clone)]
pub struct Carrier(Arc<CarrierInner>);

impl Carrier {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Ok(Carrier(Arc::new(CarrierInner { points, index })))
    }

    /// Carrier with points named `0`, `1`, ..., `n-1`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    /// Always false; carriers are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[String] {
        &self.0.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    pub fn check_same(&self, other: &Carrier) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!(
                "[{}] vs [{}]",
                self.points().join(","),
                other.points().join(",")
            )))
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.points == other.0.points
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.points()).finish()
    }
}

/// Total map from a carrier to the extended reals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtFn {
    carrier: Carrier,
    values: Vec<ExtReal>,
}

impl fmt::Debug for ExtFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl ExtFn {
    pub fn new(carrier: Carrier, values: Vec<ExtReal>) -> Result<Self> {
        if values.len() != carrier.len() {
            return Err(Error::LengthMismatch { expected: carrier.len(), got: values.len() });
        }
        Ok(ExtFn { carrier, values })
    }

    /// Builds a function from `(point, value)` pairs that must cover the carrier exactly.
    pub fn from_pairs<'a, I>(carrier: Carrier, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, ExtReal)>,
    {
        let mut values: Vec<Option<ExtReal>> = vec![None; carrier.len()];
        for (name, v) in pairs {
            let i = carrier.index_of(name)?;
            if values[i].is_some() {
                return Err(Error::DuplicatePoint(name.to_string()));
            }
            values[i] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingValue(carrier.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtFn { carrier, values })
    }

    pub fn constant(carrier: &Carrier, v: ExtReal) -> Self {
        ExtFn { values: vec![v; carrier.len()], carrier: carrier.clone() }
    }

    pub fn from_fn(carrier: &Carrier, mut f: impl FnMut(usize) -> ExtReal) -> Self {
        ExtFn { values: (0..carrier.len()).map(&mut f).collect(), carrier: carrier.clone() }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> &ExtReal {
        &self.values[i]
    }

    pub fn value_of(&self, name: &str) -> Result<&ExtReal> {
        Ok(&self.values[self.carrier.index_of(name)?])
    }

    pub fn is_real_valued(&self) -> bool {
        self.values.iter().all(Extended::is_finite)
    }

    /// No value equals `−∞`.
    pub fn is_lower_extended(&self) -> bool {
        !self.values.iter().any(Extended::is_neg_inf)
    }

    pub fn is_const(&self, v: &ExtReal) -> bool {
        self.values.iter().all(|x| x == v)
    }

    pub fn same_carrier(&self, other: &ExtFn) -> Result<()> {
        self.carrier.check_same(&other.carrier)
    }

    pub fn map(&self, f: impl Fn(&ExtReal) -> ExtReal) -> ExtFn {
        ExtFn { carrier: self.carrier.clone(), values: self.values.iter().map(f).collect() }
    }

    fn zip_checked(
        &self,
        other: &ExtFn,
        op: impl Fn(&ExtReal, &ExtReal) -> Option<ExtReal>,
    ) -> Result<ExtFn> {
        self.same_carrier(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| {
                op(a, b).ok_or_else(|| Error::UndefinedSum(self.carrier.name(i).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtFn { carrier: self.carrier.clone(), values })
    }

    /// Pointwise `self + other`; fails if the sum is undefined anywhere.
    pub fn checked_add(&self, other: &ExtFn) -> Result<ExtFn> {
        self.zip_checked(other, ExtReal::checked_add)
    }

    /// Pointwise `self − other`; fails if the difference is undefined anywhere.
    pub fn checked_sub(&self, other: &ExtFn) -> Result<ExtFn> {
        self.zip_checked(other, ExtReal::checked_sub)
    }

    pub fn add_const(&self, c: &Rational) -> ExtFn {
        self.map(|v| v.add_real(c))
    }

    pub fn neg(&self) -> ExtFn {
        self.map(ExtReal::neg)
    }

    pub fn scale(&self, alpha: &Rational) -> Result<ExtFn> {
        let values = self.values.iter().map(|v| v.scale(alpha)).collect::<Result<Vec<_>>>()?;
        Ok(ExtFn { carrier: self.carrier.clone(), values })
    }

    pub fn max(&self, other: &ExtFn) -> Result<ExtFn> {
        self.zip_checked(other, |a, b| Some(a.max(b).clone()))
    }

    pub fn min(&self, other: &ExtFn) -> Result<ExtFn> {
        self.zip_checked(other, |a, b| Some(a.min(b).clone()))
    }

    /// Pointwise order `self ≤ other`.
    pub fn leq(&self, other: &ExtFn) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// `max |f(x)|` for real-valued `f`.
    pub fn sup_norm(&self) -> Result<ExtReal> {
        if !self.is_real_valued() {
            return Err(Error::NotRealValued);
        }
        Ok(ExtReal::sup(self.values.iter().map(ExtReal::abs)))
    }

    /// Points where `f(x)` is finite.
    pub fn finite_points(&self) -> PointSet {
        (0..self.len()).filter(|&i| self.values[i].is_finite()).collect()
    }
}

/// Domains of the sum `f + g`: where it is defined, and where neither summand is `−∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumDomains {
    pub dom: PointSet,
    pub rdom: PointSet,
}

pub fn sum_domains(f: &ExtFn, g: &ExtFn) -> Result<SumDomains> {
    f.same_carrier(g)?;
    let mut dom = PointSet::new();
    let mut rdom = PointSet::new();
    for i in 0..f.len() {
        let (a, b) = (f.at(i), g.at(i));
        if a.checked_add(b).is_some() {
            dom.insert(i);
        }
        if !a.is_neg_inf() && !b.is_neg_inf() {
            rdom.insert(i);
        }
    }
    Ok(SumDomains { dom, rdom })
}

/// `max |f(x)|`; rejects functions with infinite values.
pub fn sup_norm(f: &ExtFn) -> Result<ExtReal> {
    f.sup_norm()
}

pub fn leq_fn(f: &ExtFn, g: &ExtFn) -> Result<bool> {
    f.leq(g)
}

/// Pointwise sup or inf of a family. The empty family gives the constant
/// `−∞` (sup) or `+∞` (inf) on `carrier`.
pub fn pointwise_extremum(carrier: &Carrier, family: &[ExtFn], mode: Extremum) -> Result<ExtFn> {
    for member in family {
        carrier.check_same(member.carrier())?;
    }
    Ok(ExtFn::from_fn(carrier, |i| {
        ExtReal::extremum(family.iter().map(|m| m.at(i).clone()), mode)
    }))
}

/// `0` on `set`, `+∞` elsewhere.
pub fn indicator_fn(carrier: &Carrier, set: &PointSet) -> Result<ExtFn> {
    if let Some(&bad) = set.iter().find(|&&i| i >= carrier.len()) {
        return Err(Error::PointOutOfRange { index: bad, len: carrier.len() });
    }
    Ok(ExtFn::from_fn(carrier, |i| if set.contains(&i) { ExtReal::zero() } else { Extended::PosInf }))
}

/// Indicator from point names.
pub fn indicator_of_names(carrier: &Carrier, names: &[&str]) -> Result<ExtFn> {
    let set = names.iter().map(|n| carrier.index_of(n)).collect::<Result<PointSet>>()?;
    indicator_fn(carrier, &set)
}

/// Epigraph of `f` restricted to the given levels: pairs `(point index, level)`
/// with `level ≥ f(point)`, in carrier-then-grid order.
pub fn epigraph_fn(f: &ExtFn, levels: &[Rational]) -> Vec<(usize, Rational)> {
    let mut out = Vec::new();
    for (i, v) in f.values().iter().enumerate() {
        for c in levels {
            if Extended::Finite(c.clone()) >= *v {
                out.push((i, c.clone()));
            }
        }
    }
    out
}
