//! Acceptance suite: one line per criterion, each with its own time budget.
//!
//! Instances come from the seeded core fuzzer; every check compares library
//! output against an oracle written here from the definitions, or re-derives
//! the hypothesis behind each not-applicable verdict.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nlconj::conjugate::{conjugate_all, verify_algebraic_laws, verify_analytic_laws};
use nlconj::extreal::{int, ratio};
use nlconj::fuzz::{lambdas, Fuzzer};
use nlconj::geometry::{
    discrete_legendre_1d, exp_local_conjugate, frechet_certificate, CircleGrid, ExtPi, Grid, LegendreMethod,
    PiRational,
};
use nlconj::group::{
    dual_samples, inf_convolution, inf_convolution_symmetric, midpoint_checks, GroupFn, GroupSpec,
};
use nlconj::regclose::{verify_closure_laws, verify_conjugate_interplay};
use nlconj::{
    attainers, biconjugate, check_composition_rule, check_infconv_formula, conj, regularize, supcl_member, young_gap,
    Carrier, Certificate, ExtFn, ExtReal, Extended, LawReport, PointSet, Rational, TestFamily, Verdict,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_failures(reports: &[LawReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.failed()) {
        Some(r) => Err(format!("law failed: {}", r.line())),
        None => Ok(()),
    }
}

fn err(e: nlconj::Error) -> String {
    e.to_string()
}

// ----------------------------------------------------------------------------
// Oracles written directly from the definitions.

/// `sup φ − f` over points where `f ≠ +∞` and `φ ≠ −∞`, with its maximizers.
fn conj_oracle(f: &ExtFn, phi: &ExtFn) -> (ExtReal, PointSet) {
    let mut terms = Vec::new();
    for x in 0..f.len() {
        let term = match (f.at(x), phi.at(x)) {
            (Extended::PosInf, _) | (_, Extended::NegInf) => continue,
            (Extended::NegInf, _) | (_, Extended::PosInf) => Extended::PosInf,
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(b - a),
        };
        terms.push((x, term));
    }
    let best = terms.iter().map(|(_, t)| t.clone()).max().unwrap_or(Extended::NegInf);
    let att = terms.iter().filter(|(_, t)| *t == best).map(|(x, _)| *x).collect();
    (best, att)
}

/// Whether `a + b` is defined on extended reals.
fn sum_defined(a: &ExtReal, b: &ExtReal) -> bool {
    !matches!((a, b), (Extended::PosInf, Extended::NegInf) | (Extended::NegInf, Extended::PosInf))
}

/// Pointwise max over every real shift `φ + c ≤ f`, shifts drawn from `f − φ`.
fn shift_enumeration(f: &ExtFn, members: &[ExtFn]) -> Vec<ExtReal> {
    let n = f.len();
    let mut best = vec![Extended::NegInf; n];
    for phi in members {
        if f.values().iter().all(|v| v.is_pos_inf()) {
            best = vec![Extended::PosInf; n];
            continue;
        }
        let candidates: BTreeSet<Rational> = (0..n)
            .filter_map(|x| match (f.at(x), phi.at(x)) {
                (Extended::Finite(a), Extended::Finite(b)) => Some(a - b),
                _ => None,
            })
            .collect();
        for c in candidates {
            let shifted = phi.add_const(&c);
            if shifted.leq(f).expect("same carrier") {
                for (x, slot) in best.iter_mut().enumerate() {
                    *slot = slot.clone().max(shifted.at(x).clone());
                }
            }
        }
    }
    best
}

// ----------------------------------------------------------------------------
// Shared corpus for the conjugate criteria.

struct Instance {
    f: ExtFn,
    g: ExtFn,
    phi: ExtFn,
    psi: ExtFn,
    family: Vec<ExtFn>,
    alpha: Rational,
    beta: Rational,
    shifts: Vec<Rational>,
}

fn corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut fz = Fuzzer::new(seed);
    (0..count)
        .map(|_| {
            let c = fz.carrier(12);
            let f = fz.function(&c);
            let g = fz.related(&c, &f);
            let phi = fz.related(&c, &f);
            let psi = fz.related(&c, &phi);
            let mut family = fz.family(&c, false, 4);
            family.push(phi.clone());
            Instance {
                f,
                g,
                phi,
                psi,
                family,
                alpha: fz.positive_real(),
                beta: fz.real(),
                shifts: vec![int(0), fz.positive_real()],
            }
        })
        .collect()
}

// ----------------------------------------------------------------------------

fn ac1(corpus: &[Instance]) -> Outcome {
    let sizes: BTreeSet<usize> = corpus.iter().map(|i| i.f.len()).collect();
    ensure(sizes.len() == 12, || format!("carrier sizes seen: {sizes:?}"))?;
    let mut pairs = 0;
    for inst in corpus {
        for phi in inst.family.iter().chain([&inst.psi, &inst.g]) {
            let all = conjugate_all(&inst.f, phi).map_err(err)?;
            let (oracle, _) = conj_oracle(&inst.f, phi);
            ensure(all.iter().all(|v| *v == oracle), || format!("f={} phi={} got {all:?}, oracle {oracle}", inst.f, phi))?;
            pairs += 1;
        }
    }
    Ok(format!("{} instances, {pairs} (f, phi) pairs, sizes 1-12, 4 formulations identical", corpus.len()))
}

fn ac2(corpus: &[Instance]) -> Outcome {
    let (mut defined, mut zero, mut undefined) = (0, 0, 0);
    for inst in corpus {
        for phi in &inst.family {
            let (_, oracle_att) = conj_oracle(&inst.f, phi);
            ensure(attainers(&inst.f, phi).map_err(err)? == oracle_att, || format!("attainers differ for f={}", inst.f))?;
            for x in 0..inst.f.len() {
                match young_gap(&inst.f, phi, x).map_err(err)? {
                    None => undefined += 1,
                    Some(gap) => {
                        defined += 1;
                        ensure(gap >= ExtReal::zero(), || format!("negative gap {gap} at {x}, f={} phi={phi}", inst.f))?;
                        let is_zero = gap == ExtReal::zero();
                        zero += usize::from(is_zero);
                        ensure(is_zero == oracle_att.contains(&x), || {
                            format!("gap {gap} vs attainer status at {x}, f={} phi={phi}", inst.f)
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("{defined} defined gaps ({zero} zero), {undefined} undefined"))
}

/// The hypotheses behind each not-applicable algebraic verdict, from scratch.
fn algebraic_hypothesis_fails(law: &str, note: &str, inst: &Instance) -> bool {
    let full = |a: &ExtFn, b: &ExtFn, negate_b: bool| {
        (0..a.len()).all(|x| {
            let bx = if negate_b { b.at(x).neg() } else { b.at(x).clone() };
            sum_defined(a.at(x), &bx)
        })
    };
    match law {
        "conj.difference-rule" => !full(&inst.f, &inst.psi, true) || !full(&inst.phi, &inst.psi, false),
        "conj.sum-bound" if note.contains("undefined") => {
            !sum_defined(&conj_oracle(&inst.f, &inst.phi).0, &conj_oracle(&inst.g, &inst.psi).0)
        }
        "conj.sum-bound" => !full(&inst.f, &inst.g, false) || !full(&inst.phi, &inst.psi, false),
        _ => false,
    }
}

fn ac3(corpus: &[Instance]) -> Outcome {
    let (mut pass, mut na) = (0usize, 0usize);
    for inst in corpus {
        let reports =
            verify_algebraic_laws(&inst.f, &inst.g, &inst.phi, &inst.psi, &inst.alpha, &inst.beta).map_err(err)?;
        no_failures(&reports)?;
        for r in &reports {
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::NotApplicable => {
                    na += 1;
                    ensure(algebraic_hypothesis_fails(&r.law, &r.note, inst), || {
                        format!("{} marked not-applicable but its hypotheses hold: f={} phi={}", r.law, inst.f, inst.phi)
                    })?;
                }
                Verdict::Fail => unreachable!(),
            }
        }
        // Conversely, every unmet hypothesis must surface as not-applicable.
        for law in ["conj.difference-rule", "conj.sum-bound"] {
            let applied = reports.iter().any(|r| r.law == law && r.passed());
            if applied {
                ensure(!algebraic_hypothesis_fails(law, "", inst), || format!("{law} applied outside its hypotheses"))?;
            }
        }
    }
    let rate = 100.0 * na as f64 / (pass + na) as f64;
    Ok(format!("{pass} pass, {na} not-applicable ({rate:.1}%), each re-verified against its hypothesis"))
}

fn ac4(corpus: &[Instance]) -> Outcome {
    let lams = lambdas();
    ensure(lams == vec![ratio(1, 4), ratio(1, 2), ratio(3, 4)], || "lambda grid".into())?;
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    for inst in corpus {
        let reports = verify_analytic_laws(&inst.f, &inst.family, &lams, &inst.shifts).map_err(err)?;
        no_failures(&reports)?;
        for r in reports.iter().filter(|r| r.passed()) {
            *counts.entry(r.law.clone()).or_default() += 1;
        }
    }
    for law in [
        "conj.lipschitz",
        "conj.convex",
        "conj.sup-exchange",
        "conj.inf-bound",
        "conj.liminf-bound",
        "conj.inf-equality",
        "conj.liminf-equality",
    ] {
        ensure(counts.get(law).copied().unwrap_or(0) > 0, || format!("{law} never exercised"))?;
    }
    let total: usize = counts.values().sum();
    Ok(format!(
        "{total} passing checks, {} certificate-triggered equalities",
        counts["conj.inf-equality"] + counts["conj.liminf-equality"]
    ))
}

fn ac5() -> Outcome {
    let mut fz = Fuzzer::new(5);
    let (mut empty_fibers, mut collisions) = (0, 0);
    let count = 1000;
    for _ in 0..count {
        let (src, tgt) = (fz.carrier(10), fz.carrier(10));
        let a = fz.map(&src, &tgt);
        let (f, phi) = (fz.function(&src), fz.function(&tgt));
        let report = check_composition_rule(&f, &a, &phi).map_err(err)?;
        ensure(report.passed(), || report.line())?;
        // Oracle: inf over fibers, +∞ on empty ones, then conjugate.
        let image = ExtFn::from_fn(&tgt, |y| {
            (0..src.len()).filter(|&x| a.image_of(x) == y).map(|x| f.at(x).clone()).min().unwrap_or(Extended::PosInf)
        });
        let pulled = ExtFn::from_fn(&src, |x| phi.at(a.image_of(x)).clone());
        let (lhs, rhs) = (conj_oracle(&image, &phi).0, conj_oracle(&f, &pulled).0);
        ensure(lhs == rhs && lhs == conj(&f, &pulled).map_err(err)?, || format!("oracle {lhs} vs {rhs}"))?;
        empty_fibers += usize::from(!a.is_surjective());
        collisions += usize::from(!a.is_injective());
    }
    ensure(empty_fibers > 0 && collisions > 0, || "maps lacked empty fibers or collisions".into())?;
    Ok(format!("{count} maps, {empty_fibers} non-surjective, {collisions} non-injective"))
}

fn ac6() -> Outcome {
    let mut fz = Fuzzer::new(6);
    let count = 600;
    for _ in 0..count {
        let c = fz.carrier(10);
        let f = fz.function(&c);
        let members = fz.family(&c, true, 4);
        let family = TestFamily::new(c.clone(), members.clone()).map_err(err)?;
        let reg = regularize(&f, &family).map_err(err)?;
        let bi = biconjugate(&f, &family).map_err(err)?;
        ensure(bi == reg, || format!("biconjugate {bi} vs regularization {reg} for f={f}"))?;
        let oracle = shift_enumeration(&f, &members);
        ensure(reg.values() == oracle.as_slice(), || format!("regularization {reg} vs shift oracle for f={f}"))?;
    }
    Ok(format!("{count} (f, F) instances with real-valued families"))
}

fn closure_families(fz: &mut Fuzzer, c: &Carrier) -> Result<(TestFamily, TestFamily), String> {
    let big_f = TestFamily::new(c.clone(), fz.family(c, true, 3)).map_err(err)?;
    Ok(match fz.rng().gen_range(0..3) {
        0 => {
            let extra = fz.family(c, true, 2);
            (big_f.clone(), big_f.extended_by(extra).map_err(err)?)
        }
        1 => (big_f, fz.cone_family(c)),
        _ => {
            let cone = fz.cone_family(c);
            let extra = fz.family(c, false, 2);
            let larger = cone.extended_by(extra).map_err(err)?;
            (cone, larger)
        }
    })
}

fn ac7() -> Outcome {
    let mut fz = Fuzzer::new(7);
    let count = 600;
    let mut cone_checks = 0;
    let mut passes = 0;
    let alphas = vec![ratio(1, 2), int(1), int(3)];
    for _ in 0..count {
        let c = fz.carrier(8);
        let f = fz.function(&c);
        let g = fz.related(&c, &f);
        let (big_f, big_g) = closure_families(&mut fz, &c)?;
        let reports = verify_closure_laws(&f, &g, &big_f, &big_g, &alphas).map_err(err)?;
        no_failures(&reports)?;
        passes += reports.iter().filter(|r| r.passed()).count();
        cone_checks += reports.iter().filter(|r| r.passed() && r.law.starts_with("reg.cone-")).count();
        for fam in [&big_f, &big_g] {
            let reg = regularize(&f, fam).map_err(err)?;
            ensure(supcl_member(&reg, fam).map_err(err)?, || format!("reg {reg} not in supcl"))?;
        }
    }
    ensure(cone_checks > 0, || "cone laws never exercised".into())?;
    Ok(format!("{count} instances, {passes} passing checks ({cone_checks} cone), regularizations all in supcl"))
}

fn ac8() -> Outcome {
    let mut fz = Fuzzer::new(8);
    let count = 600;
    let mut passes = 0;
    for _ in 0..count {
        let c = fz.carrier(8);
        let src = fz.carrier(8);
        let f = fz.function(&c);
        let g = fz.related(&c, &f);
        let family = TestFamily::new(c.clone(), fz.family(&c, true, 3)).map_err(err)?;
        let raw = fz.function(&c);
        let phi_lsc = regularize(&raw, &family).map_err(err)?;
        ensure(supcl_member(&phi_lsc, &family).map_err(err)?, || "argument not certified in supcl".into())?;
        let a = if fz.rng().gen_bool(0.5) { fz.map(&src, &c) } else { fz.surjective_map(&src, &c) };
        let probes = vec![fz.function(&src), fz.function(&src)];
        let reports = verify_conjugate_interplay(&f, &g, &family, &phi_lsc, &a, &probes).map_err(err)?;
        no_failures(&reports)?;
        passes += reports.iter().filter(|r| r.passed()).count();
    }
    Ok(format!("{count} instances, {passes} passing checks"))
}

fn tangent_oracle(grid: &CircleGrid, f: &ExtFn, x: usize, slope: &Rational) -> ExtPi {
    let n = grid.n() as i64;
    (-n..=n)
        .filter(|k| 2 * k.abs() < n)
        .filter_map(|k| {
            let y = (x as i64 + k).rem_euclid(n) as usize;
            match f.at(y) {
                Extended::PosInf => None,
                Extended::NegInf => Some(Extended::PosInf),
                Extended::Finite(v) => Some(Extended::Finite(PiRational::new(-v, slope * ratio(2 * k, n)))),
            }
        })
        .max()
        .unwrap_or(Extended::NegInf)
}

fn ac9() -> Outcome {
    let mut fz = Fuzzer::new(9);
    let mut circle_cases = 0;
    for n in [7usize, 31, 101] {
        let grid = CircleGrid::new(n).map_err(err)?;
        let wrapped = Grid::Circle(grid.clone());
        for _ in 0..50 {
            let f = fz.function(grid.carrier());
            let phi = fz.related(grid.carrier(), &f);
            let x = fz.rng().gen_range(0..n);
            let slope = fz.real();
            let lc = exp_local_conjugate(&grid, &f, x, &slope).map_err(err)?;
            ensure(lc.tangent == lc.manifold, || format!("n={n} x={x}: {} vs {}", lc.tangent, lc.manifold))?;
            let oracle = tangent_oracle(&grid, &f, x, &slope);
            ensure(lc.tangent == oracle, || format!("n={n} x={x}: {} vs oracle {oracle}", lc.tangent))?;
            let global: PointSet = (0..n)
                .filter(|&y| matches!(frechet_certificate(&wrapped, &f, &phi, y, 1), Ok(Certificate::GlobalMin)))
                .collect();
            let att = attainers(&f, &phi).map_err(err)?;
            ensure(global == att, || format!("n={n}: GLOBAL_MIN {global:?} vs attainers {att:?}"))?;
            circle_cases += 1;
        }
    }
    let mut legendre_cases = 0;
    for _ in 0..100 {
        let len = fz.rng().gen_range(1..=40);
        let mut t = fz.rng().gen_range(-40i64..0);
        let points: Vec<Rational> = (0..len)
            .map(|_| {
                t += fz.rng().gen_range(1..=5);
                ratio(t, 4)
            })
            .collect();
        let carrier = Carrier::indexed(len).map_err(err)?;
        let g = fz.function(&carrier);
        let mut slopes: Vec<Rational> = (0..fz.rng().gen_range(1..=30)).map(|_| fz.real()).collect();
        slopes.sort();
        let fast = discrete_legendre_1d(&points, g.values(), &slopes, LegendreMethod::Fast).map_err(err)?;
        let brute = discrete_legendre_1d(&points, g.values(), &slopes, LegendreMethod::Brute).map_err(err)?;
        ensure(fast == brute, || format!("fast {fast:?} vs brute {brute:?}"))?;
        legendre_cases += 1;
    }
    Ok(format!("{circle_cases} circle instances (n = 7, 31, 101), {legendre_cases} Legendre instances"))
}

/// `(f □ g)(x) = inf_y f(x·y⁻¹) + g(y)`, enumerated with the group operations.
fn infconv_oracle(f: &GroupFn, g: &GroupFn) -> Vec<ExtReal> {
    let spec = f.spec();
    (0..spec.len())
        .map(|x| {
            (0..spec.len())
                .filter_map(|y| {
                    let z = spec.op(x, spec.inv(y))?;
                    f.at(z).checked_add(g.at(y))
                })
                .min()
                .unwrap_or(Extended::PosInf)
        })
        .collect()
}

fn ac10() -> Outcome {
    let mut fz = Fuzzer::new(10);
    let count = 200;
    let (mut formula, mut item1, mut item2, mut dyadic) = (0, 0, 0, 0);
    let mut kinds = BTreeSet::new();
    for _ in 0..count {
        let spec: std::sync::Arc<GroupSpec> = fz.group_spec();
        kinds.insert(format!("{}:{}", if spec.is_dyadic() { "dyadic" } else { "zd" }, spec.hom_count()));
        let (f, g) = (fz.group_fn(&spec, false), fz.group_fn(&spec, false));
        let fg = inf_convolution(&f, &g).map_err(err)?;
        ensure(fg.as_fn() == inf_convolution_symmetric(&f, &g).map_err(err)?.as_fn(), || "orders differ".into())?;
        ensure(fg.as_fn().values() == infconv_oracle(&f, &g).as_slice(), || "oracle differs".into())?;
        let coeffs = fz.coeffs(&spec);
        let r = check_infconv_formula(&f, &g, &coeffs).map_err(err)?;
        ensure(r.passed(), || r.line())?;
        formula += 1;
        let psi = fz.midpoint_candidate(&spec);
        let reports = midpoint_checks(&psi, &dual_samples(&psi)).map_err(err)?;
        no_failures(&reports)?;
        item1 += reports.iter().filter(|r| r.law == "group.midpoint-item1" && r.passed()).count();
        let i2 = reports.iter().filter(|r| r.law == "group.midpoint-item2" && r.passed()).count();
        ensure(spec.is_dyadic() || i2 == 0, || "item 2 applied outside dyadic windows".into())?;
        item2 += i2;
        dyadic += usize::from(spec.is_dyadic());
    }
    ensure(kinds.len() == 3, || format!("group kinds seen: {kinds:?}"))?;
    ensure(item1 > 0 && item2 > 0, || format!("item1 {item1}, item2 {item2}"))?;
    Ok(format!(
        "{count} instances ({dyadic} dyadic), formula exact on {formula}, item 1 applied {item1}x, item 2 applied {item2}x"
    ))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn run_check(dir: &Path, out: Option<&Path>) -> Result<(Vec<u8>, i32), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nlconj"));
    cmd.arg("check").arg("--instance").arg(dir);
    if let Some(o) = out {
        cmd.arg("--out").arg(o).arg("--format").arg("json");
    }
    let output = cmd.output().map_err(|e| e.to_string())?;
    Ok((output.stdout, output.status.code().unwrap_or(-1)))
}

fn ac11() -> Outcome {
    let golden = golden_dir();
    let (first, code1) = run_check(&golden, None)?;
    let (second, code2) = run_check(&golden, None)?;
    ensure(code1 == 0 && code2 == 0, || format!("exit codes {code1}, {code2}"))?;
    ensure(first == second, || "stdout differs between runs".into())?;

    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (o1, o2) = (tmp.path().join("a"), tmp.path().join("b"));
    run_check(&golden, Some(&o1))?;
    run_check(&golden, Some(&o2))?;
    let read = |p: &Path| std::fs::read(p.join("report.json")).map_err(|e| e.to_string());
    ensure(read(&o1)? == read(&o2)?, || "report files differ between runs".into())?;

    // Corrupt one input value and expect the law-failure exit code.
    let corrupt = tmp.path().join("corrupt");
    std::fs::create_dir(&corrupt).map_err(|e| e.to_string())?;
    for entry in std::fs::read_dir(&golden).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        std::fs::copy(&path, corrupt.join(path.file_name().expect("file"))).map_err(|e| e.to_string())?;
    }
    let target = corrupt.join("01-conjugate.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    doc["functions"]["f"]["a"] = serde_json::Value::String("1.5".into());
    std::fs::write(&target, serde_json::to_string_pretty(&doc).expect("json")).map_err(|e| e.to_string())?;
    let (_, code3) = run_check(&corrupt, None)?;
    ensure(code3 == 3, || format!("corrupted golden set exited {code3}"))?;
    Ok(format!("{} bytes identical across runs, exit 0; corrupted value exits {code3}", first.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let shared = corpus(2024, 1000);
    let setup = start.elapsed();
    let criteria: Vec<Criterion> = vec![
        (1, "formulation equivalence", 5, Box::new(|| ac1(&shared))),
        (2, "Fenchel-Young suite", 5, Box::new(|| ac2(&shared))),
        (3, "algebraic law suite", 10, Box::new(|| ac3(&shared))),
        (4, "analytic law suite", 10, Box::new(|| ac4(&shared))),
        (5, "composition rule", 5, Box::new(ac5)),
        (6, "biconjugation theorem", 10, Box::new(ac6)),
        (7, "closure-operator and cone laws", 10, Box::new(ac7)),
        (8, "conjugate/regularization interplay", 10, Box::new(ac8)),
        (9, "geometry", 5, Box::new(ac9)),
        (10, "group suite", 10, Box::new(ac10)),
        (11, "CLI determinism", 5, Box::new(ac11)),
    ];
    println!("acceptance: shared corpus of 1000 instances built in {:.2} s", setup.as_secs_f64());
    let mut failed = 0;
    for (id, name, limit, body) in &criteria {
        let t = Instant::now();
        let outcome = body();
        let elapsed = t.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] AC{id} {name}: {detail} ({:.2} s, limit {limit} s)", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
