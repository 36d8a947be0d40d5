//! JSON encoding of inputs and results. Integers are written as JSON numbers
//! of arbitrary size; vectors and matrices are arrays of them.

use std::str::FromStr;

use num::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::fibre::{
    Answer, Certificate, CookResult, Corank1Case, Corank1Witness, Plan, TwistMatrix, Verdict,
    Warning,
};
use crate::grouplang::{OneRelatorPresentation, SimplicialGraph};
use crate::lattice::{IntMatrix, Subspace};
use crate::quotient::QuotientDatum;
use crate::sigma::{
    brown_sigma_complement, check_warnings, raag_sigma_complement, relator_lattice, SigmaResult,
};
use crate::sphere::{Arc, Piece, Ray, SphereSet};

/// Largest accepted sphere rank; keeps malformed files from requesting huge
/// allocations.
pub const MAX_RANK: usize = 64;

// ---- encoding ----

pub fn int_to_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integers are valid numbers"))
}

pub fn vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn vecs_to_json(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| vec_to_json(v)).collect())
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    vecs_to_json(&m.to_rows())
}

fn arc_to_json(a: &Arc) -> Value {
    json!([vec_to_json(a.start().dir()), vec_to_json(a.end().dir())])
}

pub fn sphere_set_to_json(s: &SphereSet) -> Value {
    json!({
        "rank": s.rank(),
        "subspaces": s.subspaces().iter().map(|v| vecs_to_json(&v.integer_basis())).collect::<Vec<_>>(),
        "rays": s.rays().iter().map(|r| vec_to_json(r.dir())).collect::<Vec<_>>(),
        "arcs": s.arcs().iter().map(arc_to_json).collect::<Vec<_>>(),
    })
}

pub fn sigma_to_json(r: &SigmaResult) -> Value {
    json!({
        "complement": sphere_set_to_json(&r.complement),
        "warnings": r.warnings.iter().map(|w| vec_to_json(w.dir())).collect::<Vec<_>>(),
    })
}

pub fn piece_to_json(p: &Piece) -> Value {
    match p {
        Piece::Subspace(s) => json!({"subspace": subspace_to_json(s)}),
        Piece::Ray(r) => json!({"ray": vec_to_json(r.dir())}),
        Piece::Arc(a) => json!({"arc": arc_to_json(a)}),
    }
}

fn subspace_to_json(s: &Subspace) -> Value {
    json!({"ambient": s.ambient(), "basis": vecs_to_json(&s.integer_basis())})
}

fn twist_to_json(t: &TwistMatrix) -> Value {
    json!({"b": matrix_to_json(t.b()), "mu_star": matrix_to_json(&t.mu_star())})
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    let mut obj = Map::new();
    let kind = match c {
        Certificate::Meeting { image, target } => {
            obj.insert("image".into(), piece_to_json(image));
            obj.insert("target".into(), piece_to_json(target));
            "meeting"
        }
        Certificate::Twist(t) => {
            if let Value::Object(m) = twist_to_json(t) {
                obj.extend(m);
            }
            "twist"
        }
        Certificate::Ray(r) => {
            obj.insert("ray".into(), vec_to_json(r.dir()));
            "ray"
        }
        Certificate::Subspace(s) => {
            if let Value::Object(m) = subspace_to_json(s) {
                obj.extend(m);
            }
            "subspace"
        }
        Certificate::Separator(names) => {
            obj.insert("vertices".into(), json!(names));
            "separator"
        }
        Certificate::Corank1(w) => {
            obj.insert("case".into(), json!(w.case.as_str()));
            obj.insert("chi1".into(), vec_to_json(w.chi1.dir()));
            obj.insert("chi2".into(), vec_to_json(w.chi2.dir()));
            obj.insert("n_gens1".into(), vecs_to_json(&w.n_gens1));
            obj.insert("n_gens2".into(), vecs_to_json(&w.n_gens2));
            obj.insert("mu_star".into(), matrix_to_json(&w.mu_star));
            let t_map = w
                .t_inverted
                .map(|inv| if inv { "t1 -> t2^-1" } else { "t1 -> t2" });
            obj.insert("t_map".into(), json!(t_map));
            "corank1"
        }
    };
    let mut out = Map::new();
    out.insert("type".into(), json!(kind));
    out.extend(obj);
    Value::Object(out)
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    json!({
        "answer": v.answer.as_str(),
        "certificate": v.certificate.as_ref().map(certificate_to_json),
        "warnings": v.warnings.iter().map(|w| json!({"source": w.source, "ray": vec_to_json(w.ray.dir())})).collect::<Vec<_>>(),
    })
}

pub fn cook_to_json(c: &CookResult) -> Value {
    json!({
        "mu": matrix_to_json(c.twist.b()),
        "mu_star": matrix_to_json(&c.twist.mu_star()),
        "alpha": c.alpha.as_ref().map(int_to_json),
        "swapped": c.swapped,
        "m": c.m,
        "k": c.k,
        "verdict": verdict_to_json(&c.verdict),
    })
}

pub fn plan_to_json(p: &Plan) -> Value {
    json!({
        "n": p.n,
        "m": p.m,
        "k": p.k,
        "factor1": {"n_gens": vecs_to_json(&p.n_gens1), "k_gens": vecs_to_json(&p.k_gens1)},
        "factor2": {"n_gens": vecs_to_json(&p.n_gens2), "k_gens": vecs_to_json(&p.k_gens2)},
        "cook": cook_to_json(&p.cook),
    })
}

// ---- decoding ----

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::validation(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::validation(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::validation(join(path, key), "missing field"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::validation(path, "expected a string"))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::validation(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

pub fn int_from_json(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::validation(path, format!("expected an integer, got {n}"))),
        _ => Err(Error::validation(path, "expected an integer")),
    }
}

fn usize_from_json(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::validation(path, "expected a nonnegative integer"))
}

pub fn vec_from_json(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<BigInt>> {
    let items = array(v, path)?;
    if let Some(n) = len {
        if items.len() != n {
            return Err(Error::validation(
                path,
                format!("expected a vector of length {n}, found length {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| int_from_json(x, &index(path, i)))
        .collect()
}

pub fn vecs_from_json(v: &Value, path: &str, len: Option<usize>) -> Result<Vec<Vec<BigInt>>> {
    let items = array(v, path)?;
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(items.len());
    for (i, x) in items.iter().enumerate() {
        let expect = len.or_else(|| out.first().map(Vec::len));
        out.push(vec_from_json(x, &index(path, i), expect)?);
    }
    Ok(out)
}

/// A matrix given as a list of rows; `[]` is the empty `0 x 0` matrix.
pub fn matrix_from_json(v: &Value, path: &str) -> Result<IntMatrix> {
    let rows = vecs_from_json(v, path, None)?;
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(cols, rows).map_err(|e| Error::validation(path, e.to_string()))
}

fn ray_from_json(v: &Value, path: &str, rank: Option<usize>) -> Result<Ray> {
    Ray::new(&vec_from_json(v, path, rank)?)
        .map_err(|_| Error::validation(path, "a ray needs a nonzero vector"))
}

fn arc_from_json(v: &Value, path: &str) -> Result<Arc> {
    let ends = array(v, path)?;
    if ends.len() != 2 {
        return Err(Error::validation(path, "an arc is a pair of endpoints"));
    }
    let p = ray_from_json(&ends[0], &index(path, 0), Some(2))?;
    let q = ray_from_json(&ends[1], &index(path, 1), Some(2))?;
    Arc::new(p, q).map_err(|e| Error::validation(path, e.to_string()))
}

fn subspace_from_basis(v: &Value, path: &str, rank: usize) -> Result<Subspace> {
    let basis = vecs_from_json(v, path, Some(rank))?;
    Subspace::span_int(rank, &basis).map_err(|e| Error::validation(path, e.to_string()))
}

fn subspace_from_json(v: &Value, path: &str) -> Result<Subspace> {
    let obj = object(v, path)?;
    let ambient = usize_from_json(field(obj, "ambient", path)?, &join(path, "ambient"))?;
    subspace_from_basis(field(obj, "basis", path)?, &join(path, "basis"), ambient)
}

/// A sphere set document: `{"rank": n, "subspaces": [...], "rays": [...],
/// "arcs": [...]}` with the last three optional.
pub fn sphere_set_from_json(v: &Value, path: &str) -> Result<SphereSet> {
    let obj = object(v, path)?;
    check_keys(obj, &["kind", "rank", "subspaces", "rays", "arcs", "warnings"], path)?;
    let rank_path = join(path, "rank");
    let rank = usize_from_json(field(obj, "rank", path)?, &rank_path)?;
    if rank > MAX_RANK {
        return Err(Error::validation(rank_path, format!("rank exceeds {MAX_RANK}")));
    }
    let list = |key: &str| -> Result<Vec<Value>> {
        match obj.get(key) {
            None => Ok(Vec::new()),
            Some(v) => Ok(array(v, &join(path, key))?.clone()),
        }
    };
    let subspaces = list("subspaces")?
        .iter()
        .enumerate()
        .map(|(i, s)| subspace_from_basis(s, &index(&join(path, "subspaces"), i), rank))
        .collect::<Result<Vec<_>>>()?;
    let rays = list("rays")?
        .iter()
        .enumerate()
        .map(|(i, r)| ray_from_json(r, &index(&join(path, "rays"), i), Some(rank)))
        .collect::<Result<Vec<_>>>()?;
    let arcs_raw = list("arcs")?;
    if !arcs_raw.is_empty() && rank != 2 {
        return Err(Error::validation(
            join(path, "arcs"),
            format!("arcs are only allowed in rank 2, not rank {rank}"),
        ));
    }
    let arcs = arcs_raw
        .iter()
        .enumerate()
        .map(|(i, a)| arc_from_json(a, &index(&join(path, "arcs"), i)))
        .collect::<Result<Vec<_>>>()?;
    SphereSet::new(rank, subspaces, rays, arcs).map_err(|e| Error::validation(path, e.to_string()))
}

fn warnings_from_json(v: Option<&Value>, path: &str, rank: usize) -> Result<Vec<Ray>> {
    let Some(v) = v else {
        return Ok(Vec::new());
    };
    let path = join(path, "warnings");
    let mut out = array(v, &path)?
        .iter()
        .enumerate()
        .map(|(i, r)| ray_from_json(r, &index(&path, i), Some(rank)))
        .collect::<Result<Vec<_>>>()?;
    check_warnings(rank, &out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// A complement given explicitly, either as a sphere set document (kind
/// `sigma_complement`, optionally with `warnings`) or as a
/// `{"complement": ..., "warnings": ...}` result.
pub fn load_sigma(v: &Value) -> Result<SigmaResult> {
    sigma_from_json(v, "")
}

fn sigma_from_json(v: &Value, path: &str) -> Result<SigmaResult> {
    let obj = object(v, path)?;
    if let Some(kind) = obj.get("kind") {
        let kind = string(kind, &join(path, "kind"))?;
        if kind != "sigma_complement" {
            return Err(Error::validation(
                join(path, "kind"),
                format!("expected sigma_complement, got {kind:?}"),
            ));
        }
    }
    let (complement, cpath) = match obj.get("complement") {
        Some(c) => {
            check_keys(obj, &["kind", "complement", "warnings"], path)?;
            let cpath = join(path, "complement");
            (sphere_set_from_json(c, &cpath)?, path.to_string())
        }
        None => (sphere_set_from_json(v, path)?, path.to_string()),
    };
    let warnings = warnings_from_json(obj.get("warnings"), &cpath, complement.rank())?;
    Ok(SigmaResult {
        complement,
        warnings,
    })
}

pub fn presentation_from_json(v: &Value, path: &str) -> Result<OneRelatorPresentation> {
    let obj = object(v, path)?;
    check_keys(obj, &["kind", "generators", "relator", "presentation"], path)?;
    let wrap = |key: &str, e: Error| match e {
        Error::Syntax { pos, msg } => Error::validation(
            join(path, key),
            format!("syntax error at position {pos}: {msg}"),
        ),
        other => other,
    };
    if let Some(text) = obj.get("presentation") {
        let text = string(text, &join(path, "presentation"))?;
        return crate::grouplang::parse_presentation(text).map_err(|e| wrap("presentation", e));
    }
    let gpath = join(path, "generators");
    let gens = array(field(obj, "generators", path)?, &gpath)?
        .iter()
        .enumerate()
        .map(|(i, g)| string(g, &index(&gpath, i)).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let relator = string(field(obj, "relator", path)?, &join(path, "relator"))?;
    OneRelatorPresentation::from_parts(gens, relator).map_err(|e| wrap("relator", e))
}

pub fn graph_from_json(v: &Value, path: &str) -> Result<SimplicialGraph> {
    let obj = object(v, path)?;
    check_keys(obj, &["kind", "vertices", "edges"], path)?;
    let vpath = join(path, "vertices");
    let vertices = array(field(obj, "vertices", path)?, &vpath)?
        .iter()
        .enumerate()
        .map(|(i, g)| string(g, &index(&vpath, i)).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let epath = join(path, "edges");
    let edges = match obj.get("edges") {
        None => Vec::new(),
        Some(e) => array(e, &epath)?
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let p = index(&epath, i);
                let pair = array(e, &p)?;
                if pair.len() != 2 {
                    return Err(Error::validation(p, "an edge is a pair of vertex names"));
                }
                Ok((
                    string(&pair[0], &index(&p, 0))?.to_string(),
                    string(&pair[1], &index(&p, 1))?.to_string(),
                ))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    SimplicialGraph::new(vertices, &edges).map_err(|e| Error::validation(path, e.to_string()))
}

/// Any document that determines a complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupInput {
    OneRelator(OneRelatorPresentation),
    Graph(SimplicialGraph),
    Sigma(SigmaResult),
}

pub fn kind_of(v: &Value) -> Option<&str> {
    v.get("kind").and_then(Value::as_str)
}

pub fn group_input_from_json(v: &Value, path: &str) -> Result<GroupInput> {
    match kind_of(v) {
        Some("one_relator") => Ok(GroupInput::OneRelator(presentation_from_json(v, path)?)),
        Some("graph") => Ok(GroupInput::Graph(graph_from_json(v, path)?)),
        _ => Ok(GroupInput::Sigma(sigma_from_json(v, path)?)),
    }
}

impl GroupInput {
    /// The complement, plus lattice vectors that must lie in every `N`
    /// (the relator's exponent sum for one-relator groups).
    pub fn sigma(&self) -> (SigmaResult, Vec<Vec<BigInt>>) {
        match self {
            GroupInput::OneRelator(p) => (brown_sigma_complement(p), relator_lattice(p)),
            GroupInput::Graph(g) => (raag_sigma_complement(g), Vec::new()),
            GroupInput::Sigma(s) => (s.clone(), Vec::new()),
        }
    }
}

/// One factor of a task: a complement, the subgroup `N`, and optionally a
/// finitely generated overgroup `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub sigma: SigmaResult,
    pub quotient: QuotientDatum,
    pub k_gens: Vec<Vec<BigInt>>,
}

/// `{"sigma": <group input>, "n_gens": [...], "k_gens": [...]}`; both
/// generator lists default to empty.
pub fn factor_from_json(v: &Value, path: &str) -> Result<Factor> {
    let obj = object(v, path)?;
    check_keys(obj, &["sigma", "n_gens", "k_gens"], path)?;
    let input = group_input_from_json(field(obj, "sigma", path)?, &join(path, "sigma"))?;
    let (sigma, extra) = input.sigma();
    let rank = sigma.rank();
    let gens = |key: &str| -> Result<Vec<Vec<BigInt>>> {
        match obj.get(key) {
            None => Ok(Vec::new()),
            Some(g) => vecs_from_json(g, &join(path, key), Some(rank)),
        }
    };
    let mut n_gens = gens("n_gens")?;
    n_gens.extend(extra);
    let k_gens = gens("k_gens")?;
    let quotient = QuotientDatum::new(rank, n_gens)?;
    Ok(Factor {
        sigma,
        quotient,
        k_gens,
    })
}

fn piece_from_json(v: &Value, path: &str) -> Result<Piece> {
    let obj = object(v, path)?;
    if let Some(s) = obj.get("subspace") {
        Ok(Piece::Subspace(subspace_from_json(s, &join(path, "subspace"))?))
    } else if let Some(r) = obj.get("ray") {
        Ok(Piece::Ray(ray_from_json(r, &join(path, "ray"), None)?))
    } else if let Some(a) = obj.get("arc") {
        Ok(Piece::Arc(arc_from_json(a, &join(path, "arc"))?))
    } else {
        Err(Error::validation(path, "expected a subspace, ray or arc piece"))
    }
}

pub fn certificate_from_json(v: &Value, path: &str) -> Result<Certificate> {
    let obj = object(v, path)?;
    let kind = string(field(obj, "type", path)?, &join(path, "type"))?;
    let get = |key: &str| field(obj, key, path);
    let at = |key: &str| join(path, key);
    Ok(match kind {
        "meeting" => Certificate::Meeting {
            image: piece_from_json(get("image")?, &at("image"))?,
            target: piece_from_json(get("target")?, &at("target"))?,
        },
        "twist" => Certificate::Twist(
            TwistMatrix::new(matrix_from_json(get("b")?, &at("b"))?)
                .map_err(|e| Error::validation(at("b"), e.to_string()))?,
        ),
        "ray" => Certificate::Ray(ray_from_json(get("ray")?, &at("ray"), None)?),
        "subspace" => Certificate::Subspace(subspace_from_json(v, path)?),
        "separator" => Certificate::Separator(
            array(get("vertices")?, &at("vertices"))?
                .iter()
                .enumerate()
                .map(|(i, s)| string(s, &index(&at("vertices"), i)).map(str::to_string))
                .collect::<Result<_>>()?,
        ),
        "corank1" => {
            let case_str = string(get("case")?, &at("case"))?;
            let case = Corank1Case::parse(case_str)
                .ok_or_else(|| Error::validation(at("case"), format!("unknown case {case_str:?}")))?;
            let t_inverted = match get("t_map")? {
                Value::Null => None,
                t => Some(match string(t, &at("t_map"))? {
                    "t1 -> t2" => false,
                    "t1 -> t2^-1" => true,
                    other => {
                        return Err(Error::validation(at("t_map"), format!("unknown map {other:?}")))
                    }
                }),
            };
            Certificate::Corank1(Box::new(Corank1Witness {
                case,
                chi1: ray_from_json(get("chi1")?, &at("chi1"), None)?,
                chi2: ray_from_json(get("chi2")?, &at("chi2"), None)?,
                n_gens1: vecs_from_json(get("n_gens1")?, &at("n_gens1"), None)?,
                n_gens2: vecs_from_json(get("n_gens2")?, &at("n_gens2"), None)?,
                mu_star: matrix_from_json(get("mu_star")?, &at("mu_star"))?,
                t_inverted,
            }))
        }
        other => return Err(Error::validation(at("type"), format!("unknown certificate type {other:?}"))),
    })
}

pub fn verdict_from_json(v: &Value) -> Result<Verdict> {
    let obj = object(v, "")?;
    let answer_str = string(field(obj, "answer", "")?, "answer")?;
    let answer = Answer::parse(answer_str)
        .ok_or_else(|| Error::validation("answer", format!("unknown answer {answer_str:?}")))?;
    let certificate = match obj.get("certificate") {
        None | Some(Value::Null) => None,
        Some(c) => Some(certificate_from_json(c, "certificate")?),
    };
    let warnings = match obj.get("warnings") {
        None => Vec::new(),
        Some(w) => array(w, "warnings")?
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let p = index("warnings", i);
                let o = object(w, &p)?;
                Ok(Warning {
                    source: string(field(o, "source", &p)?, &join(&p, "source"))?.to_string(),
                    ray: ray_from_json(field(o, "ray", &p)?, &join(&p, "ray"), None)?,
                })
            })
            .collect::<Result<_>>()?,
    };
    Ok(Verdict {
        answer,
        certificate,
        warnings,
    })
}
