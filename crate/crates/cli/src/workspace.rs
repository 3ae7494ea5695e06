//! Workspace files: named lattices, vectors, sublattices, isometries and groups in JSON syntax.
//!
//! ```json
//! {
//!   "lattices":    { "NS": { "gram": [[4, 0], [0, -8]], "exceptional": { "coordinate": 1, "class": "e" } } },
//!   "vectors":     { "h": { "lattice": "NS", "coords": [1, 0] } },
//!   "sublattices": { "H": { "lattice": "NS", "columns": ["h"] } },
//!   "isometries":  { "i": { "lattice": "NS", "matrix": [[3, 4], [-2, -3]] } },
//!   "groups":      { "G": { "lattice": "NS", "generators": ["i"], "cap": 100 } }
//! }
//! ```
//!
//! Integers may be JSON numbers or decimal strings. Lattice names fall back to the builtins
//! `U`, `E8`, `E8_MINUS`, `K3` and `DOUADY(n)`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use hilblat::group::{closure, IsometryGroup, DEFAULT_GROUP_CAP};
use hilblat::k3::{k3_lattice, natural_lift};
use hilblat::lattice::reflection_isometry;
use hilblat::{
    DouadyLattice, IntMatrix, Isometry, Lattice, LatticeVector, MarkedClass, Sublattice,
};
use num_bigint::BigInt;
use serde_json::{Map, Value as Json};

use crate::error::{CliError, CliResult};

const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug)]
enum LatticeSpec {
    Alias(String),
    Gram {
        gram: IntMatrix,
        marking: Option<(usize, MarkedClass)>,
    },
    Sum(Vec<String>),
    Rescale {
        lattice: String,
        by: BigInt,
    },
}

#[derive(Clone, Debug)]
enum VectorRef {
    Coords(Vec<BigInt>),
    Named(String),
}

#[derive(Clone, Debug)]
struct VectorSpec {
    lattice: String,
    coords: Vec<BigInt>,
}

#[derive(Clone, Debug)]
struct SublatticeSpec {
    lattice: String,
    columns: Vec<VectorRef>,
}

#[derive(Clone, Debug)]
enum IsometryKind {
    Matrix(IntMatrix),
    Identity,
    Reflection(VectorRef),
    Lift(String),
    Product(Vec<String>),
}

#[derive(Clone, Debug)]
struct IsometrySpec {
    lattice: String,
    kind: IsometryKind,
}

#[derive(Clone, Debug)]
struct GroupSpec {
    lattice: String,
    generators: Vec<String>,
    cap: usize,
    ns: Option<String>,
}

/// A resolved lattice together with its Douady structure, when it has one.
#[derive(Clone, Debug)]
pub struct NamedLattice {
    pub name: String,
    pub lattice: Lattice,
    pub douady: Option<DouadyLattice>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    lattices: BTreeMap<String, LatticeSpec>,
    vectors: BTreeMap<String, VectorSpec>,
    sublattices: BTreeMap<String, SublatticeSpec>,
    isometries: BTreeMap<String, IsometrySpec>,
    groups: BTreeMap<String, GroupSpec>,
}

impl Workspace {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let root: Json = serde_json::from_str(text)
            .map_err(|e| CliError::input(format!("invalid JSON: {e}")))?;
        let root = object(&root, "workspace")?;
        let mut ws = Workspace::empty();
        for (key, value) in root {
            let section = object(value, key)?;
            match key.as_str() {
                "lattices" => {
                    for (name, v) in section {
                        ws.lattices.insert(name.clone(), parse_lattice(v, name)?);
                    }
                }
                "vectors" => {
                    for (name, v) in section {
                        ws.vectors.insert(name.clone(), parse_vector(v, name)?);
                    }
                }
                "sublattices" => {
                    for (name, v) in section {
                        ws.sublattices
                            .insert(name.clone(), parse_sublattice(v, name)?);
                    }
                }
                "isometries" => {
                    for (name, v) in section {
                        ws.isometries.insert(name.clone(), parse_isometry(v, name)?);
                    }
                }
                "groups" => {
                    for (name, v) in section {
                        ws.groups.insert(name.clone(), parse_group(v, name)?);
                    }
                }
                other => {
                    return Err(CliError::input(format!(
                        "unknown top-level key \"{other}\""
                    )))
                }
            }
        }
        ws.check_names()?;
        Ok(ws)
    }

    /// Names are unique across sections and every reference points at something.
    fn check_names(&self) -> CliResult<()> {
        let mut seen = BTreeSet::new();
        let all = self
            .lattices
            .keys()
            .chain(self.vectors.keys())
            .chain(self.sublattices.keys())
            .chain(self.isometries.keys())
            .chain(self.groups.keys());
        for name in all {
            if !seen.insert(name) {
                return Err(CliError::input(format!("name \"{name}\" is defined twice")));
            }
        }
        let lattice_ok = |n: &String| self.lattices.contains_key(n) || builtin(n).is_some();
        let need = |ok: bool, what: &str, n: &str, owner: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::input(format!("{owner}: unknown {what} \"{n}\"")))
            }
        };
        for (owner, spec) in &self.lattices {
            let refs: Vec<&String> = match spec {
                LatticeSpec::Alias(n) => vec![n],
                LatticeSpec::Sum(ns) => ns.iter().collect(),
                LatticeSpec::Rescale { lattice, .. } => vec![lattice],
                LatticeSpec::Gram { .. } => vec![],
            };
            for n in refs {
                need(lattice_ok(n), "lattice", n, owner)?;
            }
        }
        for (owner, v) in &self.vectors {
            need(lattice_ok(&v.lattice), "lattice", &v.lattice, owner)?;
        }
        for (owner, s) in &self.sublattices {
            need(lattice_ok(&s.lattice), "lattice", &s.lattice, owner)?;
            for c in &s.columns {
                if let VectorRef::Named(n) = c {
                    need(self.vectors.contains_key(n), "vector", n, owner)?;
                }
            }
        }
        for (owner, f) in &self.isometries {
            need(lattice_ok(&f.lattice), "lattice", &f.lattice, owner)?;
            match &f.kind {
                IsometryKind::Reflection(VectorRef::Named(n)) => {
                    need(self.vectors.contains_key(n), "vector", n, owner)?
                }
                IsometryKind::Lift(n) => {
                    need(self.isometries.contains_key(n), "isometry", n, owner)?
                }
                IsometryKind::Product(ns) => {
                    for n in ns {
                        need(self.isometries.contains_key(n), "isometry", n, owner)?;
                    }
                }
                _ => {}
            }
        }
        for (owner, g) in &self.groups {
            need(lattice_ok(&g.lattice), "lattice", &g.lattice, owner)?;
            for n in &g.generators {
                need(self.isometries.contains_key(n), "isometry", n, owner)?;
            }
            if let Some(ns) = &g.ns {
                need(self.sublattices.contains_key(ns), "sublattice", ns, owner)?;
            }
        }
        Ok(())
    }

    pub fn lattice_names(&self) -> Vec<String> {
        self.lattices.keys().cloned().collect()
    }

    pub fn vector_names(&self) -> Vec<String> {
        self.vectors.keys().cloned().collect()
    }

    pub fn sublattice_names(&self) -> Vec<String> {
        self.sublattices.keys().cloned().collect()
    }

    pub fn isometry_names(&self) -> Vec<String> {
        self.isometries.keys().cloned().collect()
    }

    pub fn group_names(&self) -> Vec<String> {
        self.groups.keys().cloned().collect()
    }

    pub fn lattice(&self, name: &str) -> CliResult<NamedLattice> {
        self.lattice_at(name, 0)
    }

    fn lattice_at(&self, name: &str, depth: usize) -> CliResult<NamedLattice> {
        if depth > MAX_DEPTH {
            return Err(CliError::input(format!(
                "lattice \"{name}\" is defined in terms of itself"
            )));
        }
        let named = |lattice: Lattice, douady| NamedLattice {
            name: name.to_string(),
            lattice: lattice.with_label(name),
            douady,
        };
        let Some(spec) = self.lattices.get(name) else {
            return match builtin(name) {
                Some(b) => b.map(|(l, d)| named(l, d)),
                None => Err(CliError::input(format!("unknown lattice \"{name}\""))),
            };
        };
        match spec {
            LatticeSpec::Alias(target) if target == name => match builtin(name) {
                Some(b) => b.map(|(l, d)| named(l, d)),
                None => Err(CliError::input(format!(
                    "lattice \"{name}\" refers to itself"
                ))),
            },
            LatticeSpec::Alias(target) => {
                let t = self.lattice_at(target, depth + 1)?;
                Ok(named(t.lattice, t.douady))
            }
            LatticeSpec::Gram { gram, marking } => {
                let l = Lattice::new(gram.clone())?;
                let d = match marking {
                    Some((coord, class)) => {
                        Some(DouadyLattice::with_marked_class(&l, *coord, *class)?)
                    }
                    None => None,
                };
                Ok(named(l, d))
            }
            LatticeSpec::Sum(parts) => {
                let mut l = Lattice::empty();
                for p in parts {
                    l = l.direct_sum(&self.lattice_at(p, depth + 1)?.lattice);
                }
                Ok(named(l, None))
            }
            LatticeSpec::Rescale { lattice, by } => {
                let l = self.lattice_at(lattice, depth + 1)?.lattice.rescale(by)?;
                Ok(named(l, None))
            }
        }
    }

    pub fn douady(&self, name: &str) -> CliResult<(NamedLattice, DouadyLattice)> {
        let l = self.lattice(name)?;
        match l.douady.clone() {
            Some(d) => Ok((l, d)),
            None => Err(CliError::input(format!(
                "lattice \"{name}\" has no marked exceptional class; use DOUADY(n) or an \"exceptional\" marking"
            ))),
        }
    }

    pub fn vector(&self, name: &str) -> CliResult<(NamedLattice, LatticeVector)> {
        let spec = self
            .vectors
            .get(name)
            .ok_or_else(|| CliError::input(format!("unknown vector \"{name}\"")))?;
        let l = self.lattice(&spec.lattice)?;
        let v = LatticeVector(spec.coords.clone());
        check_len(&l, v.len(), name)?;
        Ok((l, v))
    }

    fn vector_ref(&self, l: &NamedLattice, r: &VectorRef, owner: &str) -> CliResult<LatticeVector> {
        let v = match r {
            VectorRef::Coords(c) => LatticeVector(c.clone()),
            VectorRef::Named(n) => {
                let (vl, v) = self.vector(n)?;
                if !vl.lattice.same_form(&l.lattice) {
                    return Err(CliError::input(format!(
                        "{owner}: vector \"{n}\" lives in \"{}\", not \"{}\"",
                        vl.name, l.name
                    )));
                }
                v
            }
        };
        check_len(l, v.len(), owner)?;
        Ok(v)
    }

    pub fn sublattice(&self, name: &str) -> CliResult<(NamedLattice, Sublattice)> {
        let spec = self
            .sublattices
            .get(name)
            .ok_or_else(|| CliError::input(format!("unknown sublattice \"{name}\"")))?;
        let l = self.lattice(&spec.lattice)?;
        let cols = spec
            .columns
            .iter()
            .map(|c| self.vector_ref(&l, c, name))
            .collect::<CliResult<Vec<_>>>()?;
        let s = Sublattice::from_vectors(&l.lattice, &cols)?;
        Ok((l, s))
    }

    /// The matrix of an isometry entry, not yet checked against the form.
    pub fn isometry_matrix(&self, name: &str) -> CliResult<(NamedLattice, IntMatrix)> {
        self.isometry_at(name, 0)
    }

    fn isometry_at(&self, name: &str, depth: usize) -> CliResult<(NamedLattice, IntMatrix)> {
        if depth > MAX_DEPTH {
            return Err(CliError::input(format!(
                "isometry \"{name}\" is defined in terms of itself"
            )));
        }
        let spec = self
            .isometries
            .get(name)
            .ok_or_else(|| CliError::input(format!("unknown isometry \"{name}\"")))?;
        let l = self.lattice(&spec.lattice)?;
        let rank = l.lattice.rank();
        let m = match &spec.kind {
            IsometryKind::Matrix(m) => {
                if m.rows() != rank || m.cols() != rank {
                    return Err(CliError::input(format!(
                        "{name}: matrix is {}x{}, lattice \"{}\" has rank {rank}",
                        m.rows(),
                        m.cols(),
                        l.name
                    )));
                }
                m.clone()
            }
            IsometryKind::Identity => IntMatrix::identity(rank),
            IsometryKind::Reflection(r) => {
                let v = self.vector_ref(&l, r, name)?;
                reflection_isometry(&l.lattice, &v)?.into_matrix()
            }
            IsometryKind::Lift(inner) => {
                let d = l.douady.as_ref().ok_or_else(|| {
                    CliError::input(format!(
                        "{name}: lift target \"{}\" is not a Douady lattice",
                        l.name
                    ))
                })?;
                let (_, phi) = self.isometry_at(inner, depth + 1)?;
                let phi = Isometry::new(d.surface_lattice(), phi)?;
                natural_lift(d, &phi)?.into_matrix()
            }
            IsometryKind::Product(factors) => {
                let mut m = IntMatrix::identity(rank);
                for f in factors {
                    let (_, fm) = self.isometry_at(f, depth + 1)?;
                    m = m.mul(&fm)?;
                }
                if m.rows() != rank {
                    return Err(CliError::input(format!(
                        "{name}: factor ranks differ from {rank}"
                    )));
                }
                m
            }
        };
        Ok((l, m))
    }

    pub fn isometry(&self, name: &str) -> CliResult<(NamedLattice, Isometry)> {
        let (l, m) = self.isometry_matrix(name)?;
        let f = Isometry::new(&l.lattice, m)?;
        Ok((l, f))
    }

    pub fn group(&self, name: &str) -> CliResult<(NamedLattice, IsometryGroup)> {
        let spec = self.group_spec(name)?;
        let l = self.lattice(&spec.lattice)?;
        let mut gens = Vec::with_capacity(spec.generators.len());
        for g in &spec.generators {
            let (gl, m) = self.isometry_matrix(g)?;
            if !gl.lattice.same_form(&l.lattice) {
                return Err(CliError::input(format!(
                    "{name}: generator \"{g}\" acts on \"{}\", not \"{}\"",
                    gl.name, l.name
                )));
            }
            gens.push(m);
        }
        let g = closure(&l.lattice, &gens, spec.cap)?;
        Ok((l, g))
    }

    /// The Néron–Severi sublattice attached to a group entry, if any.
    pub fn group_ns(&self, name: &str) -> CliResult<Option<String>> {
        Ok(self.group_spec(name)?.ns.clone())
    }

    fn group_spec(&self, name: &str) -> CliResult<&GroupSpec> {
        self.groups
            .get(name)
            .ok_or_else(|| CliError::input(format!("unknown group \"{name}\"")))
    }
}

fn check_len(l: &NamedLattice, len: usize, owner: &str) -> CliResult<()> {
    if len == l.lattice.rank() {
        Ok(())
    } else {
        Err(CliError::input(format!(
            "{owner}: vector has {len} coordinates, lattice \"{}\" has rank {}",
            l.name,
            l.lattice.rank()
        )))
    }
}

type Builtin = CliResult<(Lattice, Option<DouadyLattice>)>;

fn builtin(name: &str) -> Option<Builtin> {
    let plain = |l: Lattice| Some(Ok((l, None)));
    match name {
        "U" => plain(Lattice::hyperbolic_plane()),
        "E8" => plain(Lattice::e8()),
        "E8_MINUS" => plain(Lattice::e8().rescale(&BigInt::from(-1)).expect("nonzero")),
        "K3" => plain(k3_lattice()),
        _ => {
            let n = name.strip_prefix("DOUADY(")?.strip_suffix(')')?;
            Some(
                n.parse::<i64>()
                    .map_err(|_| CliError::input(format!("bad Douady order in \"{name}\"")))
                    .and_then(|n| {
                        let d = DouadyLattice::new(n)?;
                        Ok((d.full().clone(), Some(d)))
                    }),
            )
        }
    }
}

fn object<'a>(v: &'a Json, what: &str) -> CliResult<&'a Map<String, Json>> {
    v.as_object()
        .ok_or_else(|| CliError::input(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Json, what: &str) -> CliResult<&'a Vec<Json>> {
    v.as_array()
        .ok_or_else(|| CliError::input(format!("{what}: expected an array")))
}

fn string(v: &Json, what: &str) -> CliResult<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| CliError::input(format!("{what}: expected a string")))
}

fn integer(v: &Json, what: &str) -> CliResult<BigInt> {
    let bad = || CliError::input(format!("{what}: expected an integer, found {v}"));
    match v {
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(bad),
        Json::String(s) => s.parse::<BigInt>().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn small(v: &Json, what: &str) -> CliResult<usize> {
    usize::try_from(integer(v, what)?)
        .map_err(|_| CliError::input(format!("{what}: expected a nonnegative integer")))
}

fn integers(v: &Json, what: &str) -> CliResult<Vec<BigInt>> {
    array(v, what)?.iter().map(|x| integer(x, what)).collect()
}

fn names(v: &Json, what: &str) -> CliResult<Vec<String>> {
    array(v, what)?.iter().map(|x| string(x, what)).collect()
}

fn matrix(v: &Json, what: &str) -> CliResult<IntMatrix> {
    let rows = array(v, what)?
        .iter()
        .map(|r| integers(r, what))
        .collect::<CliResult<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::input(format!(
            "{what}: rows have different lengths"
        )));
    }
    Ok(IntMatrix::from_rows(cols, &rows)?)
}

/// Rejects keys outside `allowed`.
fn fields<'a>(v: &'a Json, what: &str, allowed: &[&str]) -> CliResult<&'a Map<String, Json>> {
    let obj = object(v, what)?;
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::input(format!("{what}: unexpected key \"{k}\"")));
    }
    Ok(obj)
}

fn required<'a>(obj: &'a Map<String, Json>, key: &str, what: &str) -> CliResult<&'a Json> {
    obj.get(key)
        .ok_or_else(|| CliError::input(format!("{what}: missing \"{key}\"")))
}

fn parse_lattice(v: &Json, name: &str) -> CliResult<LatticeSpec> {
    if let Json::String(s) = v {
        return Ok(LatticeSpec::Alias(s.clone()));
    }
    let obj = fields(v, name, &["gram", "exceptional", "sum", "rescale", "by"])?;
    if let Some(g) = obj.get("gram") {
        let gram = matrix(g, name)?;
        let marking = match obj.get("exceptional") {
            None => None,
            Some(m) => {
                let what = format!("{name}.exceptional");
                let m = fields(m, &what, &["coordinate", "class"])?;
                let coord = small(required(m, "coordinate", &what)?, &what)?;
                let class = match string(required(m, "class", &what)?, &what)?.as_str() {
                    "e" => MarkedClass::Exceptional,
                    "delta" => MarkedClass::Delta,
                    other => {
                        return Err(CliError::input(format!(
                            "{what}: class must be \"e\" or \"delta\", found \"{other}\""
                        )))
                    }
                };
                Some((coord, class))
            }
        };
        return Ok(LatticeSpec::Gram { gram, marking });
    }
    if let Some(s) = obj.get("sum") {
        return Ok(LatticeSpec::Sum(names(s, name)?));
    }
    if let Some(r) = obj.get("rescale") {
        let by = integer(required(obj, "by", name)?, name)?;
        return Ok(LatticeSpec::Rescale {
            lattice: string(r, name)?,
            by,
        });
    }
    Err(CliError::input(format!(
        "{name}: expected \"gram\", \"sum\" or \"rescale\""
    )))
}

fn parse_vector(v: &Json, name: &str) -> CliResult<VectorSpec> {
    let obj = fields(v, name, &["lattice", "coords"])?;
    Ok(VectorSpec {
        lattice: string(required(obj, "lattice", name)?, name)?,
        coords: integers(required(obj, "coords", name)?, name)?,
    })
}

fn parse_vector_ref(v: &Json, what: &str) -> CliResult<VectorRef> {
    match v {
        Json::String(s) => Ok(VectorRef::Named(s.clone())),
        _ => Ok(VectorRef::Coords(integers(v, what)?)),
    }
}

fn parse_sublattice(v: &Json, name: &str) -> CliResult<SublatticeSpec> {
    let obj = fields(v, name, &["lattice", "columns"])?;
    let columns = array(required(obj, "columns", name)?, name)?
        .iter()
        .map(|c| parse_vector_ref(c, name))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SublatticeSpec {
        lattice: string(required(obj, "lattice", name)?, name)?,
        columns,
    })
}

fn parse_isometry(v: &Json, name: &str) -> CliResult<IsometrySpec> {
    const KINDS: [&str; 5] = ["matrix", "identity", "reflection", "lift", "product"];
    let obj = fields(
        v,
        name,
        &[
            "lattice",
            "matrix",
            "identity",
            "reflection",
            "lift",
            "product",
        ],
    )?;
    let lattice = string(required(obj, "lattice", name)?, name)?;
    let present: Vec<&str> = KINDS
        .iter()
        .copied()
        .filter(|k| obj.contains_key(*k))
        .collect();
    let [kind] = present.as_slice() else {
        return Err(CliError::input(format!(
            "{name}: give exactly one of {}",
            KINDS.map(|k| format!("\"{k}\"")).join(", ")
        )));
    };
    let value = &obj[*kind];
    let kind = match *kind {
        "matrix" => IsometryKind::Matrix(matrix(value, name)?),
        "identity" => match value {
            Json::Bool(true) => IsometryKind::Identity,
            _ => {
                return Err(CliError::input(format!(
                    "{name}: \"identity\" must be true"
                )))
            }
        },
        "reflection" => IsometryKind::Reflection(parse_vector_ref(value, name)?),
        "lift" => IsometryKind::Lift(string(value, name)?),
        _ => IsometryKind::Product(names(value, name)?),
    };
    Ok(IsometrySpec { lattice, kind })
}

fn parse_group(v: &Json, name: &str) -> CliResult<GroupSpec> {
    let obj = fields(v, name, &["lattice", "generators", "cap", "ns"])?;
    let cap = match obj.get("cap") {
        Some(c) => small(c, name)?,
        None => DEFAULT_GROUP_CAP,
    };
    if cap == 0 {
        return Err(CliError::input(format!("{name}: cap must be positive")));
    }
    Ok(GroupSpec {
        lattice: string(required(obj, "lattice", name)?, name)?,
        generators: names(required(obj, "generators", name)?, name)?,
        cap,
        ns: obj.get("ns").map(|n| string(n, name)).transpose()?,
    })
}
