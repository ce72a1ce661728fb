//! Typed runs: argument resolution, execution, and golden expectations.

use std::collections::BTreeMap;
use std::sync::Arc;

use nlconj::conjugate::{
    attainers, conj, formulation_report, verify_algebraic_laws, verify_analytic_laws, verify_young, young_gap,
};
use nlconj::dualmap::{check_composition_rule, verify_pullback_laws};
use nlconj::extreal::{format_checked, format_rational, int, Rational};
use nlconj::fuzz::lambdas;
use nlconj::geometry::{
    discrete_legendre_1d, exp_local_conjugate, frechet_certificate, verify_geometry_laws, Grid, LegendreMethod,
};
use nlconj::group::{
    dual_samples, inf_convolution, inf_convolution_symmetric, midpoint_checks, verify_infconv_laws, GroupFn, GroupSpec,
};
use nlconj::regclose::{verify_closure_laws, verify_conjugate_interplay};
use nlconj::{biconjugate, regularize, supcl_member, CarrierMap, ExtFn, LawReport, PointSet, Side, TestFamily};
use serde_json::{Map, Value};

use crate::instance::{family_of, rational_value, Domain, Instance};

pub const OPS: &[&str] = &[
    "conjugate",
    "regularize",
    "biconjugate",
    "supcl",
    "infconv",
    "geometry",
    "legendre",
    "pullback",
    "inf-image",
    "composition",
    "formulations",
    "young",
    "algebraic",
    "analytic",
    "pullback-laws",
    "closure",
    "interplay",
    "geometry-laws",
    "group-axioms",
    "infconv-laws",
    "midpoint",
];

enum Kind {
    Conjugate { f: ExtFn, phi: ExtFn, x: Option<usize> },
    Regularize { f: ExtFn, family: TestFamily },
    Biconjugate { f: ExtFn, family: TestFamily },
    Supcl { f: ExtFn, family: TestFamily },
    Infconv { f: GroupFn, g: GroupFn, coeffs: Option<Vec<Rational>> },
    Geometry { grid: Grid, f: ExtFn, phi: ExtFn, x: usize, slopes: Vec<Rational>, radius: usize },
    Legendre { grid: Grid, f: ExtFn, slopes: Vec<Rational> },
    Pullback { map: CarrierMap, f: ExtFn },
    InfImage { map: CarrierMap, f: ExtFn },
    Composition { f: ExtFn, map: CarrierMap, phi: ExtFn },
    Formulations { f: ExtFn, phi: ExtFn },
    Young { f: ExtFn, phi: ExtFn, family: Vec<ExtFn> },
    Algebraic { f: ExtFn, g: ExtFn, phi: ExtFn, psi: ExtFn, alpha: Rational, beta: Rational },
    Analytic { f: ExtFn, family: Vec<ExtFn>, lambdas: Vec<Rational>, shifts: Vec<Rational> },
    PullbackLaws { map: CarrierMap, phi: ExtFn, psi: ExtFn, alpha: Rational, c: Rational },
    Closure { f: ExtFn, g: ExtFn, big_f: TestFamily, big_g: TestFamily, alphas: Vec<Rational> },
    Interplay { f: ExtFn, g: ExtFn, family: TestFamily, phi_lsc: ExtFn, map: CarrierMap, probes: Vec<ExtFn> },
    GeometryLaws { grid: Grid, f: ExtFn, phi: ExtFn, family: Vec<ExtFn>, x: usize, slopes: Vec<Rational>, radius: usize },
    GroupAxioms { group: Arc<GroupSpec> },
    InfconvLaws { f: GroupFn, g: GroupFn, coeffs: Vec<Rational> },
    Midpoint { psi: GroupFn },
}

pub struct Run {
    pub label: String,
    pub op: String,
    kind: Kind,
    expect: BTreeMap<String, String>,
}

/// Results of one run: named output fields, law reports, and plot files.
#[derive(Default)]
pub struct RunOutput {
    pub label: String,
    pub op: String,
    pub fields: Vec<(String, String)>,
    pub reports: Vec<LawReport>,
    pub plots: Vec<(String, String)>,
}

impl RunOutput {
    fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }
}

/// Pulls typed arguments out of a run object, recording every problem.
struct Args<'a> {
    inst: &'a Instance,
    ctx: String,
    map: Map<String, Value>,
    errors: Vec<String>,
}

impl<'a> Args<'a> {
    fn err(&mut self, key: &str, msg: impl std::fmt::Display) {
        self.errors.push(format!("{}.{key}: {msg}", self.ctx));
    }

    fn take(&mut self, key: &str) -> Option<Value> {
        let v = self.map.remove(key);
        if v.is_none() {
            self.err(key, "missing argument");
        }
        v
    }

    fn name(&mut self, key: &str) -> Option<String> {
        match self.take(key)? {
            Value::String(s) => Some(s),
            other => {
                self.err(key, format!("expected a name, got {other}"));
                None
            }
        }
    }

    fn names(&mut self, key: &str) -> Option<Vec<String>> {
        match self.take(key)? {
            Value::Array(items) => {
                let names: Option<Vec<String>> = items.iter().map(|v| v.as_str().map(String::from)).collect();
                if names.is_none() {
                    self.err(key, "expected a list of names");
                }
                names
            }
            Value::String(s) => Some(vec![s]),
            other => {
                self.err(key, format!("expected a list of names, got {other}"));
                None
            }
        }
    }

    fn lookup(&mut self, key: &str, name: &str) -> Option<&'a crate::instance::Function> {
        let found = self.inst.functions.get(name);
        if found.is_none() {
            self.err(key, format!("unknown function `{name}`"));
        }
        found
    }

    fn func(&mut self, key: &str) -> Option<ExtFn> {
        let name = self.name(key)?;
        Some(self.lookup(key, &name)?.f.clone())
    }

    fn funcs(&mut self, key: &str) -> Option<Vec<ExtFn>> {
        let names = self.names(key)?;
        let fns: Vec<Option<ExtFn>> = names.iter().map(|n| self.lookup(key, n).map(|f| f.f.clone())).collect();
        fns.into_iter().collect()
    }

    fn group_fn(&mut self, key: &str) -> Option<GroupFn> {
        let name = self.name(key)?;
        let f = self.lookup(key, &name)?;
        if f.domain != Domain::Group {
            self.err(key, format!("function `{name}` is not defined on a group"));
            return None;
        }
        f.group.clone()
    }

    /// A named family, or an inline list of member function names.
    fn family(&mut self, key: &str) -> Option<TestFamily> {
        let v = self.map.get(key).cloned();
        if let Some(Value::String(name)) = &v {
            if let Some(fam) = self.inst.families.get(name) {
                self.map.remove(key);
                return Some(fam.clone());
            }
        }
        let names = self.names(key)?;
        match family_of(&names, &self.inst.functions) {
            Ok(f) => Some(f),
            Err(e) => {
                self.err(key, e);
                None
            }
        }
    }

    fn family_members(&mut self, key: &str) -> Option<Vec<ExtFn>> {
        self.family(key).map(|f| f.members().to_vec())
    }

    fn map_arg(&mut self, key: &str) -> Option<CarrierMap> {
        let name = self.name(key)?;
        let m = self.inst.maps.get(&name).cloned();
        if m.is_none() {
            self.err(key, format!("unknown map `{name}`"));
        }
        m
    }

    fn grid(&mut self, key: &str) -> Option<Grid> {
        let name = self.name(key)?;
        let g = self.inst.grids.get(&name).cloned();
        if g.is_none() {
            self.err(key, format!("unknown grid `{name}`"));
        }
        g
    }

    fn group(&mut self, key: &str) -> Option<Arc<GroupSpec>> {
        let name = self.name(key)?;
        let g = self.inst.groups.get(&name).cloned();
        if g.is_none() {
            self.err(key, format!("unknown group `{name}`"));
        }
        g
    }

    fn rational(&mut self, key: &str) -> Option<Rational> {
        let v = self.take(key)?;
        rational_value(&v).map_err(|e| self.err(key, e)).ok()
    }

    fn rational_or(&mut self, key: &str, default: Rational) -> Option<Rational> {
        if self.map.contains_key(key) {
            self.rational(key)
        } else {
            Some(default)
        }
    }

    fn rationals(&mut self, key: &str) -> Option<Vec<Rational>> {
        match self.take(key)? {
            Value::Array(items) => {
                let parsed: Result<Vec<_>, _> = items.iter().map(rational_value).collect();
                parsed.map_err(|e| self.err(key, e)).ok()
            }
            other => {
                self.err(key, format!("expected a list of rationals, got {other}"));
                None
            }
        }
    }

    fn rationals_or(&mut self, key: &str, default: Vec<Rational>) -> Option<Vec<Rational>> {
        if self.map.contains_key(key) {
            self.rationals(key)
        } else {
            Some(default)
        }
    }

    fn usize_or(&mut self, key: &str, default: usize) -> Option<usize> {
        match self.map.remove(key) {
            None => Some(default),
            Some(Value::Number(n)) if n.as_u64().is_some() => Some(n.as_u64().expect("checked") as usize),
            Some(other) => {
                self.err(key, format!("expected a nonnegative integer, got {other}"));
                None
            }
        }
    }

    /// A point of `f`'s carrier, by name or index.
    fn point(&mut self, key: &str, f: &ExtFn) -> Option<usize> {
        let v = self.take(key)?;
        let name = match &v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            other => {
                self.err(key, format!("expected a point, got {other}"));
                return None;
            }
        };
        f.carrier().index_of(&name).map_err(|e| self.err(key, e)).ok()
    }

    fn opt_point(&mut self, key: &str, f: &ExtFn) -> Option<Option<usize>> {
        if self.map.contains_key(key) {
            self.point(key, f).map(Some)
        } else {
            Some(None)
        }
    }

    fn finish(mut self) -> Vec<String> {
        let leftover: Vec<String> = self.map.keys().cloned().collect();
        for k in leftover {
            self.err(&k, "unknown argument");
        }
        self.errors
    }
}

impl Run {
    pub fn resolve(inst: &Instance, index: usize, raw: &Map<String, Value>) -> Result<Run, Vec<String>> {
        let mut map = raw.clone();
        let op = match map.remove("op") {
            Some(Value::String(s)) => s,
            _ => return Err(vec![format!("runs[{index}]: missing string field `op`")]),
        };
        let label = match map.remove("label") {
            Some(Value::String(s)) => s,
            _ => format!("run{index}-{op}"),
        };
        let mut expect = BTreeMap::new();
        let mut errors = Vec::new();
        match map.remove("expect") {
            None => {}
            Some(Value::Object(e)) => {
                for (k, v) in e {
                    match v {
                        Value::String(s) => {
                            expect.insert(k, s);
                        }
                        other => errors.push(format!("runs[{index}].expect.{k}: expected a string, got {other}")),
                    }
                }
            }
            Some(_) => errors.push(format!("runs[{index}].expect: expected an object")),
        }
        let mut a = Args { inst, ctx: format!("runs[{index}]"), map, errors };
        let kind = build(&op, &mut a);
        let errors = a.finish();
        match kind {
            Some(kind) if errors.is_empty() => Ok(Run { label, op, kind, expect }),
            _ if errors.is_empty() => Err(vec![format!("runs[{index}]: could not resolve `{op}`")]),
            _ => Err(errors),
        }
    }

    pub fn execute(&self) -> nlconj::Result<RunOutput> {
        let mut out = RunOutput { label: self.label.clone(), op: self.op.clone(), ..Default::default() };
        execute(&self.kind, &mut out)?;
        for (key, want) in &self.expect {
            let got = out.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone());
            let holds = got.as_deref() == Some(want.as_str());
            out.reports.push(LawReport::new(
                "golden.expect",
                key.clone(),
                Side::Text(got.unwrap_or_else(|| "missing".into())),
                Side::Text(want.clone()),
                holds,
            ));
        }
        let label = self.label.clone();
        out.reports = out.reports.into_iter().map(|r| r.in_context(&label)).collect();
        Ok(out)
    }
}

#[allow(clippy::redundant_locals)]
fn build(op: &str, a: &mut Args) -> Option<Kind> {
    // Evaluate every argument before combining, so all errors are reported.
    macro_rules! all {
        ($($v:ident = $e:expr),* ; $body:expr) => {{
            $(let $v = $e;)*
            Some({ $(let $v = $v?;)* $body })
        }};
    }
    match op {
        "conjugate" => {
            let f = a.func("f");
            let phi = a.func("phi");
            let x = match &f {
                Some(f) => a.opt_point("x", f),
                None => Some(None),
            };
            all!(f = f, phi = phi, x = x; Kind::Conjugate { f, phi, x })
        }
        "regularize" => all!(f = a.func("f"), family = a.family("family"); Kind::Regularize { f, family }),
        "biconjugate" => all!(f = a.func("f"), family = a.family("family"); Kind::Biconjugate { f, family }),
        "supcl" => all!(f = a.func("f"), family = a.family("family"); Kind::Supcl { f, family }),
        "infconv" => {
            let f = a.group_fn("f");
            let g = a.group_fn("g");
            let coeffs = if a.map.contains_key("coeffs") { a.rationals("coeffs").map(Some) } else { Some(None) };
            all!(f = f, g = g, coeffs = coeffs; Kind::Infconv { f, g, coeffs })
        }
        "geometry" | "geometry-laws" => {
            let grid = a.grid("grid");
            let f = a.func("f");
            let phi = if a.map.contains_key("phi") {
                a.func("phi")
            } else {
                f.as_ref().map(|f| ExtFn::constant(f.carrier(), nlconj::ExtReal::zero()))
            };
            let x = match &f {
                Some(f) => a.point("x", f),
                None => None,
            };
            let slopes = a.rationals_or("slopes", vec![int(0)]);
            let radius = a.usize_or("radius", 1);
            if op == "geometry" {
                all!(grid = grid, f = f, phi = phi, x = x, slopes = slopes, radius = radius;
                    Kind::Geometry { grid, f, phi, x, slopes, radius })
            } else {
                let family = a.family_members("family");
                all!(grid = grid, f = f, phi = phi, family = family, x = x, slopes = slopes, radius = radius;
                    Kind::GeometryLaws { grid, f, phi, family, x, slopes, radius })
            }
        }
        "legendre" => all!(grid = a.grid("grid"), f = a.func("f"), slopes = a.rationals("slopes");
            Kind::Legendre { grid, f, slopes }),
        "pullback" => all!(map = a.map_arg("map"), f = a.func("f"); Kind::Pullback { map, f }),
        "inf-image" => all!(map = a.map_arg("map"), f = a.func("f"); Kind::InfImage { map, f }),
        "composition" => all!(f = a.func("f"), map = a.map_arg("map"), phi = a.func("phi");
            Kind::Composition { f, map, phi }),
        "formulations" => all!(f = a.func("f"), phi = a.func("phi"); Kind::Formulations { f, phi }),
        "young" => all!(f = a.func("f"), phi = a.func("phi"), family = a.family_members("family");
            Kind::Young { f, phi, family }),
        "algebraic" => all!(
            f = a.func("f"), g = a.func("g"), phi = a.func("phi"), psi = a.func("psi"),
            alpha = a.rational_or("alpha", int(2)), beta = a.rational_or("beta", int(1));
            Kind::Algebraic { f, g, phi, psi, alpha, beta }),
        "analytic" => all!(
            f = a.func("f"), family = a.family_members("family"),
            lambdas = a.rationals_or("lambdas", lambdas()), shifts = a.rationals_or("shifts", vec![int(0), int(1)]);
            Kind::Analytic { f, family, lambdas, shifts }),
        "pullback-laws" => all!(
            map = a.map_arg("map"), phi = a.func("phi"), psi = a.func("psi"),
            alpha = a.rational_or("alpha", int(2)), c = a.rational_or("c", int(1));
            Kind::PullbackLaws { map, phi, psi, alpha, c }),
        "closure" => all!(
            f = a.func("f"), g = a.func("g"), big_f = a.family("family"), big_g = a.family("larger"),
            alphas = a.rationals_or("alphas", vec![Rational::new(1.into(), 2.into()), int(2)]);
            Kind::Closure { f, g, big_f, big_g, alphas }),
        "interplay" => all!(
            f = a.func("f"), g = a.func("g"), family = a.family("family"), phi_lsc = a.func("phi"),
            map = a.map_arg("map"), probes = a.funcs("probes");
            Kind::Interplay { f, g, family, phi_lsc, map, probes }),
        "group-axioms" => all!(group = a.group("group"); Kind::GroupAxioms { group }),
        "infconv-laws" => all!(f = a.group_fn("f"), g = a.group_fn("g"), coeffs = a.rationals("coeffs");
            Kind::InfconvLaws { f, g, coeffs }),
        "midpoint" => all!(psi = a.group_fn("psi"); Kind::Midpoint { psi }),
        _ => None,
    }
}

pub fn point_set(f: &ExtFn, set: &PointSet) -> String {
    let names: Vec<&str> = set.iter().map(|&i| f.carrier().name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Non-`+∞` entries of a group function.
pub fn sparse(f: &GroupFn) -> String {
    let spec = f.spec();
    let parts: Vec<String> = (0..spec.len())
        .filter(|&x| !f.at(x).is_pos_inf())
        .map(|x| format!("{}: {}", spec.name(x), f.at(x)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn slope_key(s: &Rational) -> String {
    format_rational(s)
}

fn execute(kind: &Kind, out: &mut RunOutput) -> nlconj::Result<()> {
    match kind {
        Kind::Conjugate { f, phi, x } => {
            out.field("value", conj(f, phi)?);
            out.field("attainers", point_set(f, &attainers(f, phi)?));
            if let Some(x) = x {
                out.field("gap", format_checked(&young_gap(f, phi, *x)?));
            }
            out.reports.push(formulation_report(f, phi)?);
        }
        Kind::Regularize { f, family } => out.field("value", regularize(f, family)?),
        Kind::Biconjugate { f, family } => {
            let bi = biconjugate(f, family)?;
            out.reports.push(LawReport::equal("reg.biconjugate", "", &bi, &regularize(f, family)?));
            out.field("value", bi);
        }
        Kind::Supcl { f, family } => {
            out.field("member", supcl_member(f, family)?);
            out.field("regularization", regularize(f, family)?);
        }
        Kind::Infconv { f, g, coeffs } => {
            let fg = inf_convolution(f, g)?;
            out.reports.push(LawReport::equal(
                "group.infconv-orders",
                "",
                fg.as_fn(),
                inf_convolution_symmetric(f, g)?.as_fn(),
            ));
            out.field("value", sparse(&fg));
            if let Some(c) = coeffs {
                let phi = f.spec().hom_combination(c)?;
                out.field("conjugate", conj(fg.as_fn(), &phi)?);
                out.reports.push(nlconj::check_infconv_formula(f, g, c)?);
            }
        }
        Kind::Geometry { grid, f, phi, x, slopes, radius } => geometry(grid, f, phi, *x, slopes, *radius, out)?,
        Kind::Legendre { grid, f, slopes } => {
            let Grid::Interval(ig) = grid else {
                return Err(nlconj::Error::Precondition("legendre needs an interval grid".into()));
            };
            let brute = discrete_legendre_1d(ig.points(), f.values(), slopes, LegendreMethod::Brute)?;
            let list = |v: &[nlconj::ExtReal]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            out.field("values", format!("({})", list(&brute)));
            let mut sorted = slopes.clone();
            sorted.sort();
            if sorted == *slopes {
                let fast = discrete_legendre_1d(ig.points(), f.values(), slopes, LegendreMethod::Fast)?;
                out.reports.push(LawReport::new("geometry.legendre-fast-brute", "", Side::Text(list(&fast)), Side::Text(list(&brute)), fast == brute));
            }
        }
        Kind::Pullback { map, f } => out.field("value", map.pullback(f)?),
        Kind::InfImage { map, f } => out.field("value", map.inf_image(f)?),
        Kind::Composition { f, map, phi } => {
            let r = check_composition_rule(f, map, phi)?;
            out.field("value", &r.lhs);
            out.reports.push(r);
        }
        Kind::Formulations { f, phi } => out.reports.push(formulation_report(f, phi)?),
        Kind::Young { f, phi, family } => out.reports.extend(verify_young(f, phi, family)?),
        Kind::Algebraic { f, g, phi, psi, alpha, beta } => {
            out.reports.extend(verify_algebraic_laws(f, g, phi, psi, alpha, beta)?)
        }
        Kind::Analytic { f, family, lambdas, shifts } => {
            out.reports.extend(verify_analytic_laws(f, family, lambdas, shifts)?)
        }
        Kind::PullbackLaws { map, phi, psi, alpha, c } => {
            out.reports.extend(verify_pullback_laws(map, phi, psi, alpha, c)?)
        }
        Kind::Closure { f, g, big_f, big_g, alphas } => {
            out.reports.extend(verify_closure_laws(f, g, big_f, big_g, alphas)?)
        }
        Kind::Interplay { f, g, family, phi_lsc, map, probes } => {
            out.reports.extend(verify_conjugate_interplay(f, g, family, phi_lsc, map, probes)?)
        }
        Kind::GeometryLaws { grid, f, phi, family, x, slopes, radius } => {
            out.reports.extend(verify_geometry_laws(grid, f, phi, family, *x, slopes, *radius)?)
        }
        Kind::GroupAxioms { group } => out.reports.extend(group.verify_axioms()),
        Kind::InfconvLaws { f, g, coeffs } => out.reports.extend(verify_infconv_laws(f, g, coeffs)?),
        Kind::Midpoint { psi } => out.reports.extend(midpoint_checks(psi, &dual_samples(psi))?),
    }
    Ok(())
}

fn geometry(
    grid: &Grid,
    f: &ExtFn,
    phi: &ExtFn,
    x: usize,
    slopes: &[Rational],
    radius: usize,
    out: &mut RunOutput,
) -> nlconj::Result<()> {
    let certs: Vec<String> =
        (0..grid.len()).map(|y| frechet_certificate(grid, f, phi, y, radius).map(|c| c.to_string())).collect::<Result<_, _>>()?;
    out.field("certificate", &certs[x]);
    out.field("certificates", format!("({})", certs.join(", ")));
    out.field("attainers", point_set(f, &attainers(f, phi)?));
    let header = "point,f,conjugate_value,attainer\n";
    for (j, s) in slopes.iter().enumerate() {
        let key = slope_key(s);
        let (value, approx, att) = match grid {
            Grid::Circle(circle) => {
                let lc = exp_local_conjugate(circle, f, x, s)?;
                out.field(format!("tangent@{key}"), &lc.tangent);
                out.reports.push(LawReport::new(
                    "geometry.tangent-equals-manifold",
                    format!("slope={key}"),
                    Side::Text(lc.tangent.to_string()),
                    Side::Text(lc.manifold.to_string()),
                    lc.tangent == lc.manifold,
                ));
                (lc.manifold.to_string(), lc.manifold.to_f64(), lc.attainers)
            }
            Grid::Interval(ig) => {
                let v = discrete_legendre_1d(ig.points(), f.values(), std::slice::from_ref(s), LegendreMethod::Brute)?
                    .remove(0);
                let att: PointSet = (0..ig.points().len())
                    .filter(|&t| {
                        f.at(t).finite().is_some_and(|ft| nlconj::ExtReal::Finite(s * &ig.points()[t] - ft) == v)
                            || (f.at(t).is_neg_inf() && v.is_pos_inf())
                    })
                    .collect();
                (v.to_string(), v.to_f64(), att)
            }
        };
        out.field(format!("conjugate@{key}"), &value);
        out.field(format!("attainers@{key}"), point_set(f, &att));
        let mut csv = String::from(header);
        for y in 0..grid.len() {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                f.carrier().name(y),
                f.at(y),
                approx,
                u8::from(att.contains(&y))
            ));
        }
        out.plots.push((format!("{}-slope{j}.csv", out.label), csv));
    }
    Ok(())
}
