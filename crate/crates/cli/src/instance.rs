//! Instance files: raw JSON shapes and their resolution into core objects.
//!
//! Resolution collects every problem it finds instead of stopping at the
//! first, so a broken file yields one error line per defect.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use nlconj::extreal::{parse_rational, ExtReal, Rational};
use nlconj::geometry::{CircleGrid, Grid, IntervalGrid};
use nlconj::group::{GroupFn, GroupSpec};
use nlconj::{Carrier, CarrierMap, ExtFn, TestFamily};
use serde::Deserialize;
use serde_json::{Map, Value};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    /// Free-form comment; ignored.
    #[serde(default, rename = "description")]
    _description: Option<String>,
    #[serde(default)]
    carrier: Option<Vec<String>>,
    #[serde(default)]
    carriers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    grid: Option<RawGrid>,
    #[serde(default)]
    grids: BTreeMap<String, RawGrid>,
    #[serde(default)]
    group: Option<RawGroup>,
    #[serde(default)]
    groups: BTreeMap<String, RawGroup>,
    #[serde(default)]
    functions: BTreeMap<String, Value>,
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    runs: Vec<Map<String, Value>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RawGrid {
    Circle { n: usize },
    Interval { points: Vec<Value> },
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawGroup {
    Zd { d: usize, radius: u32 },
    Dyadic { depth: u32, window: Value },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawFamily {
    Members(Vec<String>),
    Full {
        members: Vec<String>,
        #[serde(default)]
        cone: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    source: String,
    target: String,
    assign: BTreeMap<String, String>,
}

/// Where a function lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Carrier,
    Grid,
    Group,
}

pub struct Function {
    pub domain: Domain,
    pub on: String,
    pub f: ExtFn,
    pub group: Option<GroupFn>,
}

/// A resolved instance file. Named objects share one namespace per kind.
pub struct Instance {
    pub grids: BTreeMap<String, Grid>,
    pub groups: BTreeMap<String, Arc<GroupSpec>>,
    pub functions: BTreeMap<String, Function>,
    pub families: BTreeMap<String, TestFamily>,
    pub maps: BTreeMap<String, CarrierMap>,
    pub runs: Vec<Map<String, Value>>,
}

/// A finite extended real given as a JSON string or number.
pub fn ext_value(v: &Value) -> Result<ExtReal, String> {
    match v {
        Value::String(s) => s.parse::<ExtReal>().map_err(|e| e.to_string()),
        Value::Number(n) if n.is_i64() => Ok(ExtReal::from_int(n.as_i64().expect("checked"))),
        Value::Number(n) => n.to_string().parse::<ExtReal>().map_err(|e| e.to_string()),
        other => Err(format!("expected an extended real, got {other}")),
    }
}

pub fn rational_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(_) => parse_rational(&v.to_string()).map_err(|e| e.to_string()),
        other => Err(format!("expected a rational, got {other}")),
    }
}

/// Read and resolve an instance file; `Err` holds one message per defect.
pub fn load(path: &Path) -> Result<Instance, Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Instance, Vec<String>> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| vec![format!("malformed instance: {e}")])?;
    Resolver::default().resolve(raw)
}

#[derive(Default)]
struct Resolver {
    errors: Vec<String>,
}

impl Resolver {
    fn err(&mut self, msg: String) {
        self.errors.push(msg);
    }

    fn resolve(mut self, raw: RawInstance) -> Result<Instance, Vec<String>> {
        let mut carriers = BTreeMap::new();
        let mut carrier_decls = raw.carriers;
        if let Some(points) = raw.carrier {
            if carrier_decls.insert("carrier".into(), points).is_some() {
                self.err("carriers.carrier: declared twice".into());
            }
        }
        for (name, points) in carrier_decls {
            match Carrier::new(points) {
                Ok(c) => {
                    carriers.insert(name, c);
                }
                Err(e) => self.err(format!("carriers.{name}: {e}")),
            }
        }

        let mut grid_decls = raw.grids;
        if let Some(g) = raw.grid {
            if grid_decls.insert("grid".into(), g).is_some() {
                self.err("grids.grid: declared twice".into());
            }
        }
        let mut grids = BTreeMap::new();
        for (name, g) in grid_decls {
            let built = match g {
                RawGrid::Circle { n } => CircleGrid::new(n).map(Grid::Circle).map_err(|e| e.to_string()),
                RawGrid::Interval { points } => points
                    .iter()
                    .map(rational_value)
                    .collect::<Result<Vec<_>, _>>()
                    .and_then(|p| IntervalGrid::new(p).map(Grid::Interval).map_err(|e| e.to_string())),
            };
            match built {
                Ok(g) => {
                    grids.insert(name, g);
                }
                Err(e) => self.err(format!("grids.{name}: {e}")),
            }
        }

        let mut group_decls = raw.groups;
        if let Some(g) = raw.group {
            if group_decls.insert("group".into(), g).is_some() {
                self.err("groups.group: declared twice".into());
            }
        }
        let mut groups = BTreeMap::new();
        for (name, g) in group_decls {
            let built = match g {
                RawGroup::Zd { d, radius } => GroupSpec::zd(d, radius).map_err(|e| e.to_string()),
                RawGroup::Dyadic { depth, window } => {
                    rational_value(&window).and_then(|w| GroupSpec::dyadic(depth, w).map_err(|e| e.to_string()))
                }
            };
            match built {
                Ok(s) => {
                    groups.insert(name, s);
                }
                Err(e) => self.err(format!("groups.{name}: {e}")),
            }
        }

        for name in carriers.keys() {
            if grids.contains_key(name) || groups.contains_key(name) {
                self.err(format!("{name}: name used by more than one carrier, grid, or group"));
            }
        }
        for name in grids.keys() {
            if groups.contains_key(name) {
                self.err(format!("{name}: name used by more than one carrier, grid, or group"));
            }
        }

        let mut functions = BTreeMap::new();
        for (name, decl) in &raw.functions {
            if let Some(f) = self.function(name, decl, &carriers, &grids, &groups) {
                functions.insert(name.clone(), f);
            }
        }

        let mut families = BTreeMap::new();
        for (name, decl) in raw.families {
            let (members, cone) = match decl {
                RawFamily::Members(m) => (m, false),
                RawFamily::Full { members, cone } => (members, cone),
            };
            if let Some(family) = self.family(&format!("families.{name}"), &members, &functions) {
                families.insert(name, family.declare_cone(cone));
            }
        }

        let mut maps = BTreeMap::new();
        for (name, m) in raw.maps {
            let domain = |n: &str| {
                carriers
                    .get(n)
                    .cloned()
                    .or_else(|| grids.get(n).map(|g| g.carrier().clone()))
                    .or_else(|| groups.get(n).map(|g| g.carrier().clone()))
            };
            let (Some(src), Some(tgt)) = (domain(&m.source), domain(&m.target)) else {
                self.err(format!("maps.{name}: unknown source or target `{}` -> `{}`", m.source, m.target));
                continue;
            };
            match CarrierMap::from_names(src, tgt, m.assign.iter().map(|(a, b)| (a.as_str(), b.as_str()))) {
                Ok(a) => {
                    maps.insert(name, a);
                }
                Err(e) => self.err(format!("maps.{name}: {e}")),
            }
        }

        for (i, run) in raw.runs.iter().enumerate() {
            match run.get("op") {
                Some(Value::String(op)) if crate::runs::OPS.contains(&op.as_str()) => {}
                Some(Value::String(op)) => self.err(format!("runs[{i}]: unknown operation `{op}`")),
                _ => self.err(format!("runs[{i}]: missing string field `op`")),
            }
        }

        if !self.errors.is_empty() {
            return Err(self.errors);
        }
        let instance = Instance {
            grids,
            groups,
            functions,
            families,
            maps,
            runs: raw.runs,
        };
        // Resolve every run once so reference errors surface before any output.
        let errors: Vec<String> = instance
            .runs
            .iter()
            .enumerate()
            .filter_map(|(i, r)| crate::runs::Run::resolve(&instance, i, r).err())
            .flatten()
            .collect();
        if errors.is_empty() {
            Ok(instance)
        } else {
            Err(errors)
        }
    }

    fn function(
        &mut self,
        name: &str,
        decl: &Value,
        carriers: &BTreeMap<String, Carrier>,
        grids: &BTreeMap<String, Grid>,
        groups: &BTreeMap<String, Arc<GroupSpec>>,
    ) -> Option<Function> {
        let ctx = format!("functions.{name}");
        let Value::Object(obj) = decl else {
            self.err(format!("{ctx}: expected an object"));
            return None;
        };
        // Plain form: point -> value on the default carrier.
        let (on, values, default) = if obj.contains_key("values") {
            if let Some(k) = obj.keys().find(|k| !["on", "values", "default"].contains(&k.as_str())) {
                self.err(format!("{ctx}: unknown field `{k}`"));
                return None;
            }
            let on = match obj.get("on") {
                None => "carrier".to_string(),
                Some(Value::String(s)) => s.clone(),
                Some(_) => {
                    self.err(format!("{ctx}.on: expected a name"));
                    return None;
                }
            };
            (on, obj["values"].clone(), obj.get("default").cloned())
        } else {
            ("carrier".to_string(), decl.clone(), None)
        };

        let (domain, carrier, spec) = if let Some(c) = carriers.get(&on) {
            (Domain::Carrier, c.clone(), None)
        } else if let Some(g) = grids.get(&on) {
            (Domain::Grid, g.carrier().clone(), None)
        } else if let Some(s) = groups.get(&on) {
            (Domain::Group, s.carrier().clone(), Some(s.clone()))
        } else {
            self.err(format!("{ctx}: unknown carrier, grid, or group `{on}`"));
            return None;
        };

        let default = match default {
            None if domain == Domain::Group => Some(ExtReal::PosInf),
            None => None,
            Some(v) => match ext_value(&v) {
                Ok(v) => Some(v),
                Err(e) => {
                    self.err(format!("{ctx}.default: {e}"));
                    return None;
                }
            },
        };

        let mut slots: Vec<Option<ExtReal>> = vec![default.clone(); carrier.len()];
        let mut ok = true;
        match &values {
            Value::Array(list) => {
                if list.len() != carrier.len() {
                    self.err(format!("{ctx}: expected {} values, got {}", carrier.len(), list.len()));
                    return None;
                }
                for (i, v) in list.iter().enumerate() {
                    match ext_value(v) {
                        Ok(v) => slots[i] = Some(v),
                        Err(e) => {
                            self.err(format!("{ctx}[{i}]: {e}"));
                            ok = false;
                        }
                    }
                }
            }
            Value::Object(map) => {
                for (point, v) in map {
                    let idx = match &spec {
                        Some(s) => s.index_of(point).map_err(|e| e.to_string()),
                        None => carrier.index_of(point).map_err(|e| e.to_string()),
                    };
                    match (idx, ext_value(v)) {
                        (Ok(i), Ok(v)) => slots[i] = Some(v),
                        (Err(e), _) | (_, Err(e)) => {
                            self.err(format!("{ctx}.{point}: {e}"));
                            ok = false;
                        }
                    }
                }
            }
            _ => {
                self.err(format!("{ctx}: values must be a list or an object"));
                return None;
            }
        }
        if !ok {
            return None;
        }
        let missing: Vec<&str> = slots
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| carrier.name(i))
            .collect();
        if !missing.is_empty() {
            self.err(format!("{ctx}: no value for {}", missing.join(", ")));
            return None;
        }
        let f = ExtFn::new(carrier, slots.into_iter().map(Option::unwrap).collect()).ok()?;
        let group = spec.map(|s| GroupFn::new(&s, f.values().to_vec()).expect("same window"));
        Some(Function { domain, on, f, group })
    }

    fn family(&mut self, ctx: &str, members: &[String], functions: &BTreeMap<String, Function>) -> Option<TestFamily> {
        family_of(members, functions).map_err(|e| self.err(format!("{ctx}: {e}"))).ok()
    }
}

/// A family from function names, which must share one domain.
pub fn family_of(members: &[String], functions: &BTreeMap<String, Function>) -> Result<TestFamily, String> {
    let fns = members
        .iter()
        .map(|m| functions.get(m).ok_or_else(|| format!("unknown function `{m}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let first = fns.first().ok_or("a family needs at least one member")?;
    if let Some(other) = fns.iter().find(|f| f.on != first.on) {
        return Err(format!("members live on `{}` and `{}`", first.on, other.on));
    }
    TestFamily::new(first.f.carrier().clone(), fns.iter().map(|f| f.f.clone()).collect()).map_err(|e| e.to_string())
}
