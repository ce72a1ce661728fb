//! The nonlinear Fenchel conjugate `f*(φ) = sup (φ − f)` on a finite carrier,
//! its four equivalent formulations, and executable law checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{int, ExtReal, Extended, Extremum, Rational};
use crate::funcspace::{pointwise_extremum, sum_domains, ExtFn, PointSet};
use crate::law::{LawReport, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    /// Supremum of `φ − f` over the points where the difference is defined.
    Definition,
    /// Supremum over points with `φ(x) ≠ −∞` and `f(x) ≠ +∞`.
    Restricted,
    /// Least real `c` with `φ ≤ f + c`.
    Shift,
    /// Supremum of `φ(x) − c` over the epigraph of `f`.
    Epigraph,
}

impl Formulation {
    pub const ALL: [Formulation; 4] =
        [Formulation::Definition, Formulation::Restricted, Formulation::Shift, Formulation::Epigraph];

    pub fn name(self) -> &'static str {
        match self {
            Formulation::Definition => "definition",
            Formulation::Restricted => "restricted",
            Formulation::Shift => "shift",
            Formulation::Epigraph => "epigraph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateResult {
    pub value: ExtReal,
    pub formulation: Formulation,
    /// Maximizers of `φ − f` over the restricted domain.
    pub attainers: PointSet,
}

fn by_definition(f: &ExtFn, phi: &ExtFn) -> ExtReal {
    ExtReal::sup(phi.values().iter().zip(f.values()).filter_map(|(p, v)| p.checked_sub(v)))
}

fn restricted_terms<'a>(f: &'a ExtFn, phi: &'a ExtFn) -> impl Iterator<Item = (usize, ExtReal)> + 'a {
    phi.values().iter().zip(f.values()).enumerate().filter_map(|(i, (p, v))| {
        if p.is_neg_inf() || v.is_pos_inf() {
            None
        } else {
            Some((i, p.checked_sub(v).expect("restricted difference is defined")))
        }
    })
}

fn restricted(f: &ExtFn, phi: &ExtFn) -> ExtReal {
    ExtReal::sup(restricted_terms(f, phi).map(|(_, v)| v))
}

fn by_shift(f: &ExtFn, phi: &ExtFn) -> ExtReal {
    let mut best: Option<Rational> = None;
    for (p, v) in phi.values().iter().zip(f.values()) {
        match (p, v) {
            (Extended::NegInf, _) | (_, Extended::PosInf) => {}
            (Extended::PosInf, _) | (_, Extended::NegInf) => return Extended::PosInf,
            (Extended::Finite(a), Extended::Finite(b)) => {
                let deficit = a - b;
                if best.as_ref().is_none_or(|c| deficit > *c) {
                    best = Some(deficit);
                }
            }
        }
    }
    best.map_or(Extended::NegInf, Extended::Finite)
}

fn by_epigraph(f: &ExtFn, phi: &ExtFn) -> ExtReal {
    ExtReal::sup(phi.values().iter().zip(f.values()).filter_map(|(p, v)| match v {
        Extended::PosInf => None,
        Extended::NegInf if p.is_neg_inf() => Some(Extended::NegInf),
        Extended::NegInf => Some(Extended::PosInf),
        Extended::Finite(c) => Some(match p {
            Extended::Finite(a) => Extended::Finite(a - c),
            inf => inf.clone(),
        }),
    }))
}

/// `f*(φ)` in the requested formulation, with attainers.
pub fn conjugate(f: &ExtFn, phi: &ExtFn, formulation: Formulation) -> Result<ConjugateResult> {
    f.same_carrier(phi)?;
    let value = match formulation {
        Formulation::Definition => by_definition(f, phi),
        Formulation::Restricted => restricted(f, phi),
        Formulation::Shift => by_shift(f, phi),
        Formulation::Epigraph => by_epigraph(f, phi),
    };
    let attainers = restricted_terms(f, phi).filter(|(_, v)| *v == value).map(|(i, _)| i).collect();
    Ok(ConjugateResult { value, formulation, attainers })
}

/// `f*(φ)`.
pub fn conj(f: &ExtFn, phi: &ExtFn) -> Result<ExtReal> {
    f.same_carrier(phi)?;
    Ok(restricted(f, phi))
}

/// Values of all four formulations, in [`Formulation::ALL`] order.
pub fn conjugate_all(f: &ExtFn, phi: &ExtFn) -> Result<[ExtReal; 4]> {
    f.same_carrier(phi)?;
    Ok([by_definition(f, phi), restricted(f, phi), by_shift(f, phi), by_epigraph(f, phi)])
}

/// Points where `φ − f` attains `f*(φ)` over the restricted domain.
pub fn attainers(f: &ExtFn, phi: &ExtFn) -> Result<PointSet> {
    Ok(conjugate(f, phi, Formulation::Restricted)?.attainers)
}

/// `f(x) + f*(φ) − φ(x)`, or `None` where that expression is undefined.
pub fn young_gap(f: &ExtFn, phi: &ExtFn, x: usize) -> Result<Option<ExtReal>> {
    let v = conj(f, phi)?;
    if x >= f.len() {
        return Err(Error::PointOutOfRange { index: x, len: f.len() });
    }
    Ok(gap_with(f.at(x), &v, phi.at(x)))
}

fn gap_with(fx: &ExtReal, v: &ExtReal, px: &ExtReal) -> Option<ExtReal> {
    fx.checked_add(v)?.checked_sub(px)
}

/// The three Fenchel-Young inequalities at every point, the primal equality
/// characterization, and the dual-side attainment restricted to `family`.
pub fn verify_young(f: &ExtFn, phi: &ExtFn, family: &[ExtFn]) -> Result<Vec<LawReport>> {
    let v = conj(f, phi)?;
    let att = attainers(f, phi)?;
    // Maximizers over the full domain of `φ − f`; these include points where
    // the difference is −∞ when the conjugate itself is −∞.
    let dom_att: PointSet = (0..f.len())
        .filter(|&i| phi.at(i).checked_sub(f.at(i)) == Some(by_definition(f, phi)))
        .collect();
    let mut dual_values = Vec::with_capacity(family.len());
    for psi in family {
        dual_values.push(conj(f, psi)?);
    }
    let mut out = Vec::new();
    for x in 0..f.len() {
        let (fx, px) = (f.at(x), phi.at(x));
        let at = format!("x={}", f.carrier().name(x));
        if let Some(d) = px.checked_sub(fx) {
            out.push(LawReport::leq("young.ineq-conjugate", &at, Some(d), Some(v.clone())));
        }
        if let Some(r) = px.checked_sub(&v) {
            out.push(LawReport::leq("young.ineq-primal", &at, Some(r), Some(fx.clone())));
        }
        if let Some(r) = fx.checked_add(&v) {
            out.push(LawReport::leq("young.ineq-test", &at, Some(px.clone()), Some(r)));
        }
        let gap = gap_with(fx, &v, px);
        match &gap {
            Some(g) => {
                out.push(LawReport::leq("young.gap-nonneg", &at, Some(ExtReal::zero()), Some(g.clone())));
                let is_zero = *g == ExtReal::zero();
                out.push(
                    LawReport::equal("young.gap-zero-iff-attainer", &at, is_zero, att.contains(&x))
                        .with_note(format!("gap={g}")),
                );
            }
            None => out.push(LawReport::not_applicable(
                "young.gap-zero-iff-attainer",
                &at,
                "gap undefined",
            )),
        }
        let primal_eq = px.checked_sub(fx).is_some_and(|d| d == v);
        out.push(LawReport::equal("young.primal-equality", &at, primal_eq, dom_att.contains(&x)));

        // Dual side over the supplied members plus φ itself.
        let dual_eq = px.checked_sub(&v).is_some_and(|d| d == *fx);
        let candidates: Vec<ExtReal> = family
            .iter()
            .zip(&dual_values)
            .filter_map(|(psi, w)| psi.at(x).checked_sub(w))
            .chain(px.checked_sub(&v))
            .collect();
        let best = ExtReal::sup(candidates);
        out.push(LawReport::leq("young.dual-bound", &at, Some(best.clone()), Some(fx.clone())));
        let attains = px.checked_sub(&v).is_some_and(|d| d == best && best == *fx);
        out.push(
            LawReport::equal("young.dual-equality", &at, dual_eq, attains)
                .with_note("dual side checked over the supplied family only"),
        );
    }
    Ok(out)
}

/// `α a + β` for `α > 0`.
fn affine(a: &ExtReal, alpha: &Rational, beta: &Rational) -> ExtReal {
    a.scale(alpha).expect("alpha is nonzero").add_real(beta)
}

/// Symmetry, order, self-conjugate and transformation rules.
pub fn verify_algebraic_laws(
    f: &ExtFn,
    g: &ExtFn,
    phi: &ExtFn,
    psi: &ExtFn,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Vec<LawReport>> {
    f.same_carrier(g)?;
    f.same_carrier(phi)?;
    f.same_carrier(psi)?;
    if *alpha <= int(0) {
        return Err(Error::Precondition("alpha must be positive".into()));
    }
    let mut out = Vec::new();
    let v = conj(f, phi)?;

    out.push(LawReport::equal("conj.neg-symmetry-function", "", conj(&f.neg(), phi)?, conj(&phi.neg(), f)?));
    out.push(LawReport::equal("conj.neg-symmetry-argument", "", conj(f, &phi.neg())?, conj(phi, &f.neg())?));

    let below = phi.leq(f)?;
    let self_value = conj(f, f)?;
    out.push(LawReport::equal("conj.order-criterion", "", below, v <= ExtReal::zero()));
    out.push(LawReport::equal("conj.order-criterion-self", "", below, v <= self_value));

    let expected_self = if f.values().iter().any(Extended::is_finite) {
        ExtReal::zero()
    } else {
        Extended::NegInf
    };
    out.push(LawReport::equal("conj.self-value", "", self_value, expected_self));

    let blocked = phi.values().iter().zip(f.values()).all(|(p, x)| p.is_neg_inf() || x.is_pos_inf());
    let empty_rdom = sum_domains(phi, &f.neg())?.rdom.is_empty();
    out.push(LawReport::equal("conj.neg-inf-characterization", "", v.is_neg_inf(), blocked));
    out.push(LawReport::equal("conj.neg-inf-empty-rdom", "", v.is_neg_inf(), empty_rdom));

    let detail = format!("alpha={} beta={}", Extended::Finite(alpha.clone()), Extended::Finite(beta.clone()));
    let lhs = affine(&v, alpha, beta);
    let af = f.scale(alpha)?;
    let aphi = phi.scale(alpha)?;
    out.push(LawReport::equal("conj.scale-shift-argument", &detail, lhs.clone(), conj(&af, &aphi.add_const(beta))?));
    out.push(LawReport::equal("conj.scale-shift-function", &detail, lhs, conj(&af.add_const(&-beta), &aphi)?));

    let full = f.carrier().all();
    let dom_f_psi = sum_domains(f, &psi.neg())?.dom;
    let dom_phi_psi = sum_domains(phi, psi)?.dom;
    if dom_f_psi == full && dom_phi_psi == full {
        let lhs = conj(&f.checked_sub(psi)?, phi)?;
        let rhs = conj(f, &phi.checked_add(psi)?)?;
        out.push(LawReport::equal("conj.difference-rule", "", lhs, rhs));
    } else {
        out.push(LawReport::not_applicable("conj.difference-rule", "", "dom(f-psi) or dom(phi+psi) is not the carrier"));
    }

    let dom_fg = sum_domains(f, g)?.dom;
    let sum_rhs = v.checked_add(&conj(g, psi)?);
    match sum_rhs {
        Some(rhs) if dom_fg == full && dom_phi_psi == full => {
            let lhs = conj(&f.checked_add(g)?, &phi.checked_add(psi)?)?;
            out.push(LawReport::leq("conj.sum-bound", "", Some(lhs), Some(rhs)));
        }
        Some(_) => out.push(LawReport::not_applicable("conj.sum-bound", "", "dom(f+g) or dom(phi+psi) is not the carrier")),
        None => out.push(LawReport::not_applicable("conj.sum-bound", "", "f*(phi) + g*(psi) undefined")),
    }
    Ok(out)
}

/// Least `ε ≥ 0` with `member ≤ target + ε`, if any real one exists.
pub fn shift_certificate(target: &ExtFn, member: &ExtFn) -> Result<Option<Rational>> {
    Ok(match conj(target, member)? {
        Extended::PosInf => None,
        Extended::NegInf => Some(int(0)),
        Extended::Finite(c) => Some(if c < int(0) { int(0) } else { c }),
    })
}

/// Monotonicity, Lipschitz estimate, convexity, and the sup/inf/liminf rules.
///
/// `family` doubles as the sequence for the liminf rule: it is read as one
/// period of a periodic sequence, whose pointwise liminf is the pointwise min.
pub fn verify_analytic_laws(
    f: &ExtFn,
    family: &[ExtFn],
    lambdas: &[Rational],
    shifts: &[Rational],
) -> Result<Vec<LawReport>> {
    if family.is_empty() {
        return Err(Error::Precondition("family must be non-empty".into()));
    }
    for m in family {
        f.same_carrier(m)?;
    }
    if lambdas.iter().any(|l| *l <= int(0) || *l >= int(1)) {
        return Err(Error::Precondition("lambda must lie in (0, 1)".into()));
    }
    if shifts.iter().any(|s| *s < int(0)) {
        return Err(Error::Precondition("shifts must be nonnegative".into()));
    }
    let values = family.iter().map(|m| conj(f, m)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();

    for (i, phi) in family.iter().enumerate() {
        for (j, other) in family.iter().enumerate() {
            let pair = format!("i={i} j={j}");
            let psi = phi.min(other)?;
            for s in shifts {
                let g = f.add_const(s);
                out.push(LawReport::leq(
                    "conj.monotone",
                    format!("{pair} s={}", Extended::Finite(s.clone())),
                    Some(conj(&g, &psi)?),
                    Some(values[i].clone()),
                ));
            }

            if j < i {
                continue;
            }
            if phi.is_real_valued() && other.is_real_valued() {
                let norm = phi.checked_sub(other)?.sup_norm()?;
                let (a, b) = (&values[i], &values[j]);
                let report = match a.checked_sub(b) {
                    Some(d) => LawReport::leq("conj.lipschitz", &pair, Some(d.abs()), Some(norm)),
                    None => LawReport::leq("conj.lipschitz", &pair, Some(ExtReal::zero()), Some(norm))
                        .with_note(format!("both conjugates {a}; gap taken as 0")),
                };
                out.push(report);
            } else {
                out.push(LawReport::not_applicable("conj.lipschitz", &pair, "arguments not real-valued"));
            }

            if phi.is_lower_extended() && other.is_lower_extended() {
                for l in lambdas {
                    let rest = int(1) - l;
                    let mix = phi.scale(l)?.checked_add(&other.scale(&rest)?)?;
                    let lhs = conj(f, &mix)?;
                    let rhs = values[i].scale(l)?.checked_add(&values[j].scale(&rest)?);
                    out.push(LawReport::leq(
                        "conj.convex",
                        format!("{pair} lambda={}", Extended::Finite(l.clone())),
                        Some(lhs),
                        rhs,
                    ));
                }
            } else {
                out.push(LawReport::not_applicable("conj.convex", &pair, "arguments take the value -inf"));
            }
        }
    }

    let carrier = f.carrier();
    let sup = pointwise_extremum(carrier, family, Extremum::Sup)?;
    out.push(LawReport::equal("conj.sup-exchange", "", conj(f, &sup)?, ExtReal::sup(values.iter().cloned())));

    let inf = pointwise_extremum(carrier, family, Extremum::Inf)?;
    let at_inf = conj(f, &inf)?;
    let inf_values = ExtReal::inf(values.iter().cloned());
    out.push(LawReport::leq("conj.inf-bound", "", Some(at_inf.clone()), Some(inf_values.clone())));
    let certificates = family
        .iter()
        .map(|m| shift_certificate(&inf, m))
        .collect::<Result<Vec<_>>>()?;
    out.extend(certified_equality("conj.inf-equality", &certificates, &at_inf, &inf_values));

    // Periodic sequence: liminf over k is the minimum over one period.
    let liminf_values = ExtReal::inf(values.iter().cloned());
    out.push(LawReport::leq("conj.liminf-bound", "", Some(at_inf.clone()), Some(liminf_values.clone())));
    out.extend(certified_equality("conj.liminf-equality", &certificates, &at_inf, &liminf_values));
    Ok(out)
}

fn certified_equality(
    law: &str,
    certificates: &[Option<Rational>],
    at_inf: &ExtReal,
    inf_values: &ExtReal,
) -> Option<LawReport> {
    let eps = certificates.iter().flatten().min()?.clone();
    let bound = at_inf.add_real(&eps);
    let detail = format!("eps={}", Extended::Finite(eps.clone()));
    Some(if eps == int(0) {
        LawReport::equal(law, detail, at_inf.clone(), inf_values.clone())
    } else {
        LawReport::leq(law, detail, Some(inf_values.clone()), Some(bound))
    })
}

/// Side for a formulation-agreement report.
pub fn formulation_report(f: &ExtFn, phi: &ExtFn) -> Result<LawReport> {
    let all = conjugate_all(f, phi)?;
    let agree = all.iter().all(|v| *v == all[0]);
    let listing = all.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    Ok(LawReport::new("conj.formulations-agree", "", all[0].clone(), Side::Text(listing), agree))
}
