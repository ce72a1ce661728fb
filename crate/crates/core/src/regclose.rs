//! Regularization with respect to a finite test family, sup-closure
//! membership, biconjugation, and the closure and interplay laws.
//!
//! A family `F` stands for all its constant shifts `φ + c`. Shifts are never
//! enumerated: for each member the best feasible shift is `f*(φ)`.

use crate::conjugate::conj;
use crate::dualmap::CarrierMap;
use crate::error::{Error, Result};
use crate::extreal::{int, ExtReal, Extended, Extremum, Rational};
use crate::funcspace::{pointwise_extremum, Carrier, ExtFn};
use crate::law::LawReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestFamily {
    carrier: Carrier,
    members: Vec<ExtFn>,
    declared_cone: bool,
}

impl TestFamily {
    pub fn new(carrier: Carrier, members: Vec<ExtFn>) -> Result<Self> {
        for m in &members {
            carrier.check_same(m.carrier())?;
        }
        Ok(TestFamily { carrier, members, declared_cone: false })
    }

    /// Marks the family as a convex cone (modulo constant shifts).
    pub fn declare_cone(mut self, cone: bool) -> Self {
        self.declared_cone = cone;
        self
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn members(&self) -> &[ExtFn] {
        &self.members
    }

    pub fn declared_cone(&self) -> bool {
        self.declared_cone
    }

    pub fn all_real_valued(&self) -> bool {
        self.members.iter().all(ExtFn::is_real_valued)
    }

    pub fn all_lower_extended(&self) -> bool {
        self.members.iter().all(ExtFn::is_lower_extended)
    }

    /// Whether `phi` is a constant shift of some member.
    pub fn contains_shift_of(&self, phi: &ExtFn) -> bool {
        self.members.iter().any(|m| is_shift_of(phi, m))
    }

    /// Every member of `self` is a shift of a member of `other`.
    pub fn is_subfamily_of(&self, other: &TestFamily) -> bool {
        self.carrier == other.carrier && self.members.iter().all(|m| other.contains_shift_of(m))
    }

    pub fn union(&self, other: &TestFamily) -> Result<TestFamily> {
        self.extended_by(other.members.iter().cloned())
    }

    pub fn extended_by(&self, extra: impl IntoIterator<Item = ExtFn>) -> Result<TestFamily> {
        let mut members = self.members.clone();
        members.extend(extra);
        TestFamily::new(self.carrier.clone(), members)
    }

    /// `{ψ + φ : ψ ∈ F}` for real-valued `φ`.
    pub fn translated(&self, phi: &ExtFn) -> Result<TestFamily> {
        let members = self.members.iter().map(|m| m.checked_add(phi)).collect::<Result<Vec<_>>>()?;
        TestFamily::new(self.carrier.clone(), members)
    }

    /// `A^⋄F = {φ ∘ A : φ ∈ F}`.
    pub fn pullback(&self, a: &CarrierMap) -> Result<TestFamily> {
        let members = self.members.iter().map(|m| a.pullback(m)).collect::<Result<Vec<_>>>()?;
        TestFamily::new(a.source().clone(), members)
    }

    /// Checks `α₁φ₁ + α₂φ₂ ∈ F̃` for all member pairs and all `α` drawn from
    /// `grid`, its reciprocals, and `1`.
    pub fn verify_cone(&self, grid: &[Rational]) -> Result<bool> {
        if !self.all_lower_extended() {
            return Ok(false);
        }
        let mut alphas: Vec<Rational> = vec![int(1)];
        for a in grid {
            if *a <= int(0) {
                return Err(Error::Precondition("cone coefficients must be positive".into()));
            }
            alphas.push(a.clone());
            alphas.push(a.recip());
        }
        alphas.sort();
        alphas.dedup();
        for p in &self.members {
            for q in &self.members {
                for a in &alphas {
                    for b in &alphas {
                        let combo = p.scale(a)?.checked_add(&q.scale(b)?)?;
                        if !self.contains_shift_of(&combo) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `a = b + c` for some real `c`.
pub fn is_shift_of(a: &ExtFn, b: &ExtFn) -> bool {
    if a.carrier() != b.carrier() {
        return false;
    }
    let mut offset: Option<Rational> = None;
    for (x, y) in a.values().iter().zip(b.values()) {
        match (x, y) {
            (Extended::Finite(x), Extended::Finite(y)) => {
                let d = x - y;
                match &offset {
                    Some(o) if *o != d => return false,
                    Some(_) => {}
                    None => offset = Some(d),
                }
            }
            (x, y) if x == y => {}
            _ => return false,
        }
    }
    true
}

/// `f*(φ)`: for finite values, `φ − f*(φ)` is the largest shift of `φ` below `f`.
pub fn tightest_shift(f: &ExtFn, phi: &ExtFn) -> Result<ExtReal> {
    conj(f, phi)
}

/// The best shifted minorant contributed by `phi` given its tightest shift.
fn contribution(phi: &ExtFn, shift: &ExtReal) -> Option<ExtFn> {
    match shift {
        Extended::PosInf => None,
        Extended::Finite(c) => Some(phi.add_const(&-c)),
        Extended::NegInf => Some(phi.map(|v| if v.is_neg_inf() { Extended::NegInf } else { Extended::PosInf })),
    }
}

/// Pointwise sup of all shifted members lying below `f`.
pub fn regularize(f: &ExtFn, family: &TestFamily) -> Result<ExtFn> {
    family.carrier.check_same(f.carrier())?;
    let mut parts = Vec::with_capacity(family.members.len());
    for phi in &family.members {
        if let Some(c) = contribution(phi, &conj(f, phi)?) {
            parts.push(c);
        }
    }
    pointwise_extremum(f.carrier(), &parts, Extremum::Sup)
}

/// `x ↦ (f*|_F)*(δ_x)`, computed as a conjugate on the carrier indexed by the
/// family members. Requires a real-valued family.
pub fn biconjugate(f: &ExtFn, family: &TestFamily) -> Result<ExtFn> {
    family.carrier.check_same(f.carrier())?;
    if !family.all_real_valued() {
        return Err(Error::Precondition("biconjugate needs a real-valued family".into()));
    }
    if family.members.is_empty() {
        return Ok(ExtFn::constant(f.carrier(), Extended::NegInf));
    }
    let index = Carrier::indexed(family.members.len())?;
    let restricted = ExtFn::new(
        index.clone(),
        family.members.iter().map(|m| conj(f, m)).collect::<Result<Vec<_>>>()?,
    )?;
    let values = (0..f.len())
        .map(|x| {
            let dirac = ExtFn::from_fn(&index, |i| family.members[i].at(x).clone());
            conj(&restricted, &dirac)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = ExtFn::new(f.carrier().clone(), values)?;
    debug_assert_eq!(out, regularize(f, family)?, "biconjugate must equal the regularization");
    Ok(out)
}

/// `f ∈ supcl F`, decided by `f ≤ reg_F f`.
pub fn supcl_member(f: &ExtFn, family: &TestFamily) -> Result<bool> {
    f.leq(&regularize(f, family)?)
}

/// Pointwise sup of `member[i] + c` over `picks`; a certified element of `supcl F`.
pub fn sup_of_shifted(family: &TestFamily, picks: &[(usize, Rational)]) -> Result<ExtFn> {
    let parts = picks
        .iter()
        .map(|(i, c)| {
            family
                .members
                .get(*i)
                .map(|m| m.add_const(c))
                .ok_or(Error::PointOutOfRange { index: *i, len: family.members.len() })
        })
        .collect::<Result<Vec<_>>>()?;
    pointwise_extremum(&family.carrier, &parts, Extremum::Sup)
}

fn not_neg_inf(f: &ExtFn) -> bool {
    !f.is_const(&Extended::NegInf)
}

fn combine(a1: &Rational, f1: &ExtFn, a2: &Rational, f2: &ExtFn) -> Result<ExtFn> {
    f1.scale(a1)?.checked_add(&f2.scale(a2)?)
}

fn fmt_q(q: &Rational) -> String {
    Extended::Finite(q.clone()).to_string()
}

/// Whether adding `±φ` maps every member to a shift of a member.
fn invariant_under(family: &TestFamily, phi: &ExtFn) -> Result<bool> {
    for m in &family.members {
        if !family.contains_shift_of(&m.checked_add(phi)?) || !family.contains_shift_of(&m.checked_sub(phi)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monotonicity, shift rules, idempotence, cone rules, and hull-operator laws.
pub fn verify_closure_laws(
    f: &ExtFn,
    g: &ExtFn,
    big_f: &TestFamily,
    big_g: &TestFamily,
    alphas: &[Rational],
) -> Result<Vec<LawReport>> {
    f.same_carrier(g)?;
    big_f.carrier.check_same(f.carrier())?;
    big_g.carrier.check_same(f.carrier())?;
    if alphas.iter().any(|a| *a <= int(0)) {
        return Err(Error::Precondition("alpha grid must be positive".into()));
    }
    let mut out = Vec::new();
    let reg_f = regularize(f, big_f)?;
    let reg_g = regularize(g, big_f)?;
    let union = big_f.union(big_g)?;
    let f_sub_g = big_f.is_subfamily_of(big_g);

    if f.leq(g)? && f_sub_g {
        out.push(LawReport::new(
            "reg.monotone",
            "given",
            &reg_f,
            &regularize(g, big_g)?,
            reg_f.leq(&regularize(g, big_g)?)?,
        ));
    } else {
        out.push(LawReport::not_applicable("reg.monotone", "given", "f <= g and F in G not both satisfied"));
    }
    let upper = f.max(g)?;
    let reg_upper = regularize(&upper, &union)?;
    out.push(LawReport::new("reg.monotone", "f,max(f,g),F,F+G", &reg_f, &reg_upper, reg_f.leq(&reg_upper)?));

    out.push(LawReport::new("reg.below", "f", &reg_f, f, reg_f.leq(f)?));
    out.push(LawReport::new("reg.below", "g", &reg_g, g, reg_g.leq(g)?));

    for (i, phi) in big_f.members.iter().enumerate() {
        let at = format!("member={i}");
        out.push(LawReport::equal("reg.fixes-members", &at, &regularize(phi, big_f)?, phi));
        if !phi.is_real_valued() {
            out.push(LawReport::not_applicable("reg.shift-equivariance", &at, "member not real-valued"));
            continue;
        }
        let translated = big_f.translated(phi)?;
        let invariant = invariant_under(big_f, phi)?;
        for c in std::iter::once(int(0)).chain(alphas.iter().cloned()).chain(alphas.iter().map(|a| -a)) {
            let at = format!("member={i} c={}", fmt_q(&c));
            let moved = f.checked_add(phi)?.add_const(&c);
            let rhs = reg_f.checked_add(phi)?.add_const(&c);
            out.push(LawReport::equal("reg.translate-family", &at, &regularize(&moved, &translated)?, &rhs));
            if invariant {
                out.push(LawReport::equal("reg.shift-equivariance", &at, &regularize(&moved, big_f)?, &rhs));
            } else {
                out.push(LawReport::not_applicable(
                    "reg.shift-equivariance",
                    &at,
                    "family shifts not invariant under adding the member",
                ));
            }
        }
    }

    if f_sub_g {
        let lhs = regularize(&regularize(f, big_g)?, big_f)?;
        out.push(LawReport::equal("reg.idempotent", "given", &lhs, &reg_f));
    } else {
        out.push(LawReport::not_applicable("reg.idempotent", "given", "F is not a subfamily of G"));
    }
    let lhs = regularize(&regularize(f, &union)?, big_f)?;
    out.push(LawReport::equal("reg.idempotent", "F,F+G", &lhs, &reg_f));
    out.push(LawReport::equal("reg.idempotent", "F,F", &regularize(&reg_f, big_f)?, &reg_f));

    out.extend(cone_laws(f, g, &reg_f, &reg_g, big_f, alphas)?);

    out.push(LawReport::new("supcl.contains-regularization", "f", &reg_f, true, supcl_member(&reg_f, big_f)?));
    out.push(LawReport::new("supcl.contains-regularization", "g", &reg_g, true, supcl_member(&reg_g, big_f)?));

    for (i, phi) in big_f.members.iter().enumerate() {
        out.push(LawReport::new("hull.extensive", format!("member={i}"), phi, true, supcl_member(phi, big_f)?));
    }
    let mut certified: Vec<ExtFn> = vec![reg_f.clone(), reg_g.clone()];
    certified.extend(big_f.members.iter().cloned());
    for (i, h) in certified.iter().enumerate() {
        out.push(LawReport::new("hull.monotone", format!("probe={i}"), h, true, supcl_member(h, &union)?));
    }
    let hull = big_f.extended_by([reg_f.clone(), reg_g.clone()])?;
    let probes = [f.clone(), g.clone(), reg_f.clone(), upper.clone(), f.min(g)?];
    for (i, h) in probes.iter().enumerate() {
        let at = format!("probe={i}");
        out.push(LawReport::equal("hull.idempotent", &at, supcl_member(h, &hull)?, supcl_member(h, big_f)?));
        out.push(LawReport::equal("hull.idempotent-regularization", &at, &regularize(h, &hull)?, &regularize(h, big_f)?));
    }

    let sup = pointwise_extremum(f.carrier(), &certified, Extremum::Sup)?;
    out.push(LawReport::new("supcl.sup-closed", "", &sup, true, supcl_member(&sup, big_f)?));

    // A periodic sequence of certified members: liminf is the pointwise min,
    // and equality of the shift certificate to zero is what makes it closed.
    let low = pointwise_extremum(f.carrier(), &certified[..2], Extremum::Inf)?;
    let cert = certified[..2]
        .iter()
        .map(|h| conj(&low, h))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("two probes");
    if cert <= ExtReal::zero() {
        out.push(LawReport::new("supcl.liminf-closed", "", &low, true, supcl_member(&low, big_f)?));
    } else {
        out.push(LawReport::not_applicable("supcl.liminf-closed", "", format!("least certificate {cert} is positive")));
    }
    Ok(out)
}

fn cone_laws(
    f: &ExtFn,
    g: &ExtFn,
    reg_f: &ExtFn,
    reg_g: &ExtFn,
    family: &TestFamily,
    alphas: &[Rational],
) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    if !family.declared_cone {
        out.push(LawReport::not_applicable("reg.cone", "", "family not declared a convex cone"));
        return Ok(out);
    }
    let verified = family.verify_cone(alphas)?;
    out.push(LawReport::new("family.cone-flag", "", true, verified, verified));
    if !verified {
        return Ok(out);
    }
    for a in alphas {
        let at = format!("alpha={}", fmt_q(a));
        out.push(LawReport::equal("reg.cone-scaling", &at, &reg_f.scale(a)?, &regularize(&f.scale(a)?, family)?));
    }
    if !(not_neg_inf(reg_f) && not_neg_inf(reg_g)) {
        out.push(LawReport::not_applicable("reg.cone-combination", "", "a regularization is identically -inf"));
        return Ok(out);
    }
    for a1 in alphas {
        for a2 in alphas {
            let at = format!("a1={} a2={}", fmt_q(a1), fmt_q(a2));
            let lower = combine(a1, reg_f, a2, reg_g)?;
            let upper = combine(a1, f, a2, g)?;
            let mid = regularize(&upper, family)?;
            out.push(LawReport::new("reg.cone-combination-lower", &at, &lower, &mid, lower.leq(&mid)?));
            out.push(LawReport::new("reg.cone-combination-upper", &at, &mid, &upper, mid.leq(&upper)?));
            out.push(LawReport::equal("supcl.cone-combination", &at, &regularize(&lower, family)?, &lower));
        }
    }
    Ok(out)
}

/// `reg_F(k)` pulled back: the function on `A`'s target whose pullback
/// reproduces `k` when `k ∈ supcl(A^⋄F)`.
fn lift_through(k: &ExtFn, family: &TestFamily, a: &CarrierMap) -> Result<ExtFn> {
    let mut parts = Vec::new();
    for psi in &family.members {
        if let Some(c) = contribution(psi, &conj(k, &a.pullback(psi)?)?) {
            parts.push(c);
        }
    }
    pointwise_extremum(&family.carrier, &parts, Extremum::Sup)
}

/// Conjugate-of-regularization identities, the triconjugate rule, and the
/// pullback rules. `f`, `g`, `family` and `phi_lsc` live on `a`'s target;
/// `source_probes` live on its source.
pub fn verify_conjugate_interplay(
    f: &ExtFn,
    g: &ExtFn,
    family: &TestFamily,
    phi_lsc: &ExtFn,
    a: &CarrierMap,
    source_probes: &[ExtFn],
) -> Result<Vec<LawReport>> {
    f.same_carrier(g)?;
    f.same_carrier(phi_lsc)?;
    family.carrier.check_same(f.carrier())?;
    a.target().check_same(f.carrier())?;
    let mut out = Vec::new();
    let reg_f = regularize(f, family)?;

    let mut rhs = Vec::new();
    for phi in &family.members {
        let gv = conj(g, phi)?;
        match conj(f, phi)? {
            Extended::PosInf => {}
            Extended::Finite(c) => rhs.push(gv.add_real(&-c)),
            Extended::NegInf => rhs.push(if gv.is_neg_inf() { Extended::NegInf } else { Extended::PosInf }),
        }
    }
    out.push(LawReport::equal("interplay.conjugate-of-regularization", "", conj(g, &reg_f)?, ExtReal::sup(rhs)));

    let certified = supcl_member(phi_lsc, family)?;
    if !family.all_lower_extended() {
        out.push(LawReport::not_applicable("interplay.fenchel-of-regularization", "", "family takes the value -inf"));
    } else if !certified {
        out.push(LawReport::not_applicable("interplay.fenchel-of-regularization", "", "argument not in supcl"));
    } else {
        out.push(LawReport::equal("interplay.fenchel-of-regularization", "phi_lsc", conj(&reg_f, phi_lsc)?, conj(f, phi_lsc)?));
        for (i, phi) in family.members.iter().enumerate() {
            out.push(LawReport::equal(
                "interplay.fenchel-of-regularization",
                format!("member={i}"),
                conj(&reg_f, phi)?,
                conj(f, phi)?,
            ));
        }
    }

    if family.all_real_valued() && certified {
        let bi = biconjugate(f, family)?;
        out.push(LawReport::equal("interplay.biconjugate", "", &bi, &reg_f));
        out.push(LawReport::equal("interplay.triconjugate", "", conj(&bi, phi_lsc)?, conj(f, phi_lsc)?));
    } else {
        out.push(LawReport::not_applicable(
            "interplay.triconjugate",
            "",
            "family not real-valued or argument not in supcl",
        ));
    }

    let pulled = family.pullback(a)?;
    let lhs = a.pullback(&reg_f)?;
    let rhs = regularize(&a.pullback(f)?, &pulled)?;
    out.push(LawReport::new("interplay.pullback-regularization", "", &lhs, &rhs, lhs.leq(&rhs)?));
    if a.is_surjective() {
        out.push(LawReport::equal("interplay.pullback-regularization-surjective", "", &lhs, &rhs));
    } else {
        out.push(LawReport::not_applicable("interplay.pullback-regularization-surjective", "", "map is not surjective"));
    }

    let mut forward = vec![reg_f.clone(), regularize(g, family)?];
    if certified {
        forward.push(phi_lsc.clone());
    }
    for (i, h) in forward.iter().enumerate() {
        let image = a.pullback(h)?;
        out.push(LawReport::new("interplay.pullback-supcl-forward", format!("probe={i}"), &image, true, supcl_member(&image, &pulled)?));
    }
    let mut backward = vec![a.pullback(f)?, a.pullback(g)?];
    backward.extend(source_probes.iter().cloned());
    for (i, k) in backward.iter().enumerate() {
        a.source().check_same(k.carrier())?;
        let target = regularize(k, &pulled)?;
        let lifted = lift_through(&target, family, a)?;
        let at = format!("probe={i}");
        out.push(LawReport::equal("interplay.pullback-supcl-reverse", &at, &a.pullback(&lifted)?, &target));
        out.push(LawReport::new("interplay.pullback-supcl-lift", &at, &lifted, true, supcl_member(&lifted, family)?));
    }
    Ok(out)
}
