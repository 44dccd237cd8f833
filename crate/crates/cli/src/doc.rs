//! The on-disk JSON document format: graded Lie algebras, Artin local
//! algebras, graded morphisms and representations (with file references
//! for their endpoints), and functor suites for the representability
//! checker.
//!
//! Parsing is strict by default: unknown keys are rejected, every value is
//! type-checked, and errors carry the JSON path of the offending node.
//! `lax` mode ignores unknown keys but keeps all structural checks.
//! Serialization uses sorted keys, so parse ∘ serialize is the identity on
//! parsed objects and output bytes are stable.

use lieforge_core::coeff::CoeffRing;
use lieforge_core::graded_lie::{BracketSpec, GradedLieAlgebra, GradedMorphism};
use lieforge_core::harrison::ArtinLocalAlgebra;
use lieforge_core::rep_deform::GradedRep;
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: not valid UTF-8")]
    Utf8 { path: String },
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    At { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

impl DocError {
    fn at(path: &str, message: impl Into<String>) -> Self {
        DocError::At {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MorphismDoc {
    pub source: GradedLieAlgebra,
    pub target: GradedLieAlgebra,
    pub map: GradedMorphism,
    pub source_ref: String,
    pub target_ref: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteCategory {
    Epsilon,
    Quotient,
}

#[derive(Debug, Clone)]
pub enum OracleSpec {
    Representable { object: usize },
    Table { sizes: Vec<usize>, actions: Vec<Vec<usize>> },
}

#[derive(Debug, Clone)]
pub struct SuiteDoc {
    pub category: SuiteCategory,
    pub seed: GradedLieAlgebra,
    pub seed_ref: String,
    pub oracles: Vec<OracleSpec>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Lie(GradedLieAlgebra),
    Artin(ArtinLocalAlgebra),
    Morphism(MorphismDoc),
    Rep(MorphismDoc),
    Suite(SuiteDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lie(_) => "lie",
            Document::Artin(_) => "artin",
            Document::Morphism(_) => "morphism",
            Document::Rep(_) => "rep",
            Document::Suite(_) => "functor-suite",
        }
    }
}

/// Read and parse a document; file references inside it are resolved
/// relative to the document's own directory.
pub fn read_document(path: &Path, lax: bool) -> Result<Document, DocError> {
    let bytes = std::fs::read(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|_| DocError::Utf8 {
        path: path.display().to_string(),
    })?;
    let dir = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
    parse_document(&text, &dir, lax)
}

pub fn parse_document(text: &str, dir: &Path, lax: bool) -> Result<Document, DocError> {
    let value: Value = serde_json::from_str(text)?;
    let root = as_object(&value, "$")?;
    let kind = string_key(root, "$", "kind")?;
    let ring = parse_ring(root, "$")?;
    match kind.as_str() {
        "lie" => {
            check_keys(root, "$", &["kind", "ring", "degrees", "basis", "brackets"], lax)?;
            Ok(Document::Lie(parse_lie(root, "$", ring)?))
        }
        "artin" => {
            check_keys(root, "$", &["kind", "ring", "rank", "unit", "maximal", "table"], lax)?;
            Ok(Document::Artin(parse_artin(root, "$", ring)?))
        }
        "morphism" | "rep" => {
            check_keys(root, "$", &["kind", "ring", "source", "target", "matrices"], lax)?;
            let doc = parse_morphism(root, "$", ring, dir, lax)?;
            if kind == "rep" {
                GradedRep::new(doc.source.clone(), doc.target.clone(), doc.map.clone())
                    .map_err(|e| DocError::Invalid(format!("invalid representation: {e}")))?;
                Ok(Document::Rep(doc))
            } else {
                Ok(Document::Morphism(doc))
            }
        }
        "functor-suite" => {
            check_keys(root, "$", &["kind", "ring", "category", "seed", "oracles"], lax)?;
            Ok(Document::Suite(parse_suite(root, "$", ring, dir, lax)?))
        }
        other => Err(DocError::at(
            "$.kind",
            format!("unknown kind {other:?}; expected one of lie, artin, morphism, rep, functor-suite"),
        )),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, DocError> {
    v.as_object()
        .ok_or_else(|| DocError::at(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocError> {
    v.as_array()
        .ok_or_else(|| DocError::at(path, "expected an array"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, DocError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| DocError::at(path, "expected a non-negative integer"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64, DocError> {
    v.as_u64()
        .ok_or_else(|| DocError::at(path, "expected a non-negative integer"))
}

fn get<'a>(map: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, DocError> {
    map.get(key)
        .ok_or_else(|| DocError::at(path, format!("missing key {key:?}")))
}

fn string_key(map: &Map<String, Value>, path: &str, key: &str) -> Result<String, DocError> {
    get(map, path, key)?
        .as_str()
        .map(|s| s.to_string())
        .ok_or_else(|| DocError::at(&format!("{path}.{key}"), "expected a string"))
}

fn check_keys(
    map: &Map<String, Value>,
    path: &str,
    allowed: &[&str],
    lax: bool,
) -> Result<(), DocError> {
    if lax {
        return Ok(());
    }
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(DocError::at(
                &format!("{path}.{key}"),
                format!("unknown key (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn parse_ring(root: &Map<String, Value>, path: &str) -> Result<CoeffRing, DocError> {
    let rpath = format!("{path}.ring");
    let ring = as_object(get(root, path, "ring")?, &rpath)?;
    check_keys(ring, &rpath, &["l", "N"], false)?;
    let l = as_u64(get(ring, &rpath, "l")?, &format!("{rpath}.l"))?;
    let n = as_u64(get(ring, &rpath, "N")?, &format!("{rpath}.N"))?;
    let n = u32::try_from(n).map_err(|_| DocError::at(&format!("{rpath}.N"), "exponent too large"))?;
    CoeffRing::new(l, n).map_err(|e| DocError::at(&rpath, e.to_string()))
}

fn parse_lie(
    root: &Map<String, Value>,
    path: &str,
    ring: CoeffRing,
) -> Result<GradedLieAlgebra, DocError> {
    let dpath = format!("{path}.degrees");
    let degrees = as_array(get(root, path, "degrees")?, &dpath)?;
    let ranks: Vec<usize> = degrees
        .iter()
        .enumerate()
        .map(|(i, v)| as_usize(v, &format!("{dpath}[{i}]")))
        .collect::<Result<_, _>>()?;
    if ranks.is_empty() {
        return Err(DocError::at(&dpath, "at least one degree is required"));
    }
    let d = ranks.len();
    let labels: Vec<Vec<String>> = match root.get("basis") {
        None => vec![],
        Some(v) => {
            let bpath = format!("{path}.basis");
            let per_degree = as_array(v, &bpath)?;
            if per_degree.len() != d {
                return Err(DocError::at(
                    &bpath,
                    format!("expected {d} label groups, one per degree"),
                ));
            }
            per_degree
                .iter()
                .enumerate()
                .map(|(i, group)| {
                    let gpath = format!("{bpath}[{i}]");
                    let group = as_array(group, &gpath)?;
                    if group.len() != ranks[i] {
                        return Err(DocError::at(
                            &gpath,
                            format!("expected {} labels for degree {}", ranks[i], i + 1),
                        ));
                    }
                    group
                        .iter()
                        .enumerate()
                        .map(|(j, l)| {
                            l.as_str().map(|s| s.to_string()).ok_or_else(|| {
                                DocError::at(&format!("{gpath}[{j}]"), "expected a string label")
                            })
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?
        }
    };
    let mut specs: Vec<BracketSpec> = Vec::new();
    let mut seen: Vec<((usize, usize), (usize, usize), usize)> = Vec::new();
    if let Some(v) = root.get("brackets") {
        let bpath = format!("{path}.brackets");
        for (k, entry) in as_array(v, &bpath)?.iter().enumerate() {
            let epath = format!("{bpath}[{k}]");
            let entry = as_object(entry, &epath)?;
            check_keys(entry, &epath, &["left", "right", "value"], false)?;
            let left = parse_basis_ref(get(entry, &epath, "left")?, &format!("{epath}.left"), &ranks)?;
            let right =
                parse_basis_ref(get(entry, &epath, "right")?, &format!("{epath}.right"), &ranks)?;
            if right <= left {
                // name the conflicting stored entry if its transpose exists
                if let Some((_, _, prev)) = seen.iter().find(|(l, r, _)| *l == right && *r == left) {
                    return Err(DocError::at(
                        &epath,
                        format!(
                            "antisymmetry: entry {k} stores [{:?}, {:?}] but entry {prev} already \
                             stores its transpose; only left < right entries may appear",
                            left, right
                        ),
                    ));
                }
                return Err(DocError::at(
                    &epath,
                    "bracket entries must satisfy left < right in (degree, index) order; \
                     transposed and diagonal values are derived",
                ));
            }
            if seen.iter().any(|(l, r, _)| *l == left && *r == right) {
                return Err(DocError::at(&epath, "duplicate bracket entry"));
            }
            seen.push((left, right, k));
            let out_degree = left.0 + right.0;
            if out_degree > d {
                return Err(DocError::at(
                    &epath,
                    format!("bracket lands in degree {out_degree}, beyond the truncation {d}"),
                ));
            }
            let vpath = format!("{epath}.value");
            let mut value = Vec::new();
            for (t, term) in as_array(get(entry, &epath, "value")?, &vpath)?.iter().enumerate() {
                let tpath = format!("{vpath}[{t}]");
                let term = as_array(term, &tpath)?;
                if term.len() != 2 {
                    return Err(DocError::at(&tpath, "expected [index, coeff]"));
                }
                let idx = as_usize(&term[0], &format!("{tpath}[0]"))?;
                let coeff = as_u64(&term[1], &format!("{tpath}[1]"))?;
                if idx >= ranks[out_degree - 1] {
                    return Err(DocError::at(
                        &format!("{tpath}[0]"),
                        format!(
                            "index {idx} out of range for degree {out_degree} (rank {})",
                            ranks[out_degree - 1]
                        ),
                    ));
                }
                value.push((idx, coeff));
            }
            specs.push((left, right, value));
        }
    }
    GradedLieAlgebra::new(ring, ranks, labels, &specs)
        .map_err(|e| DocError::Invalid(format!("invalid Lie algebra: {e}")))
}

fn parse_basis_ref(
    v: &Value,
    path: &str,
    ranks: &[usize],
) -> Result<(usize, usize), DocError> {
    let pair = as_array(v, path)?;
    if pair.len() != 2 {
        return Err(DocError::at(path, "expected [degree, index]"));
    }
    let deg = as_usize(&pair[0], &format!("{path}[0]"))?;
    let idx = as_usize(&pair[1], &format!("{path}[1]"))?;
    if deg == 0 || deg > ranks.len() {
        return Err(DocError::at(
            &format!("{path}[0]"),
            format!("degree {deg} outside 1..={}", ranks.len()),
        ));
    }
    if idx >= ranks[deg - 1] {
        return Err(DocError::at(
            &format!("{path}[1]"),
            format!("index {idx} out of range for degree {deg} (rank {})", ranks[deg - 1]),
        ));
    }
    Ok((deg, idx))
}

fn parse_artin(
    root: &Map<String, Value>,
    path: &str,
    ring: CoeffRing,
) -> Result<ArtinLocalAlgebra, DocError> {
    let rank = as_usize(get(root, path, "rank")?, &format!("{path}.rank"))?;
    let unit = as_usize(get(root, path, "unit")?, &format!("{path}.unit"))?;
    if rank == 0 {
        return Err(DocError::at(&format!("{path}.rank"), "rank must be positive"));
    }
    if unit >= rank {
        return Err(DocError::at(&format!("{path}.unit"), "unit index out of range"));
    }
    let mpath = format!("{path}.maximal");
    let maximal: Vec<usize> = as_array(get(root, path, "maximal")?, &mpath)?
        .iter()
        .enumerate()
        .map(|(i, v)| as_usize(v, &format!("{mpath}[{i}]")))
        .collect::<Result<_, _>>()?;
    let expected: Vec<usize> = (0..rank).filter(|&i| i != unit).collect();
    if maximal != expected {
        return Err(DocError::at(
            &mpath,
            "maximal ideal basis must list every non-unit index in increasing order",
        ));
    }
    let tpath = format!("{path}.table");
    let table_rows = as_array(get(root, path, "table")?, &tpath)?;
    if table_rows.len() != rank {
        return Err(DocError::at(&tpath, format!("expected {rank} rows")));
    }
    let mut table = vec![vec![vec![0u64; rank]; rank]; rank];
    for (i, row) in table_rows.iter().enumerate() {
        let rpath = format!("{tpath}[{i}]");
        let row = as_array(row, &rpath)?;
        if row.len() != rank {
            return Err(DocError::at(&rpath, format!("expected {rank} entries")));
        }
        for (j, cell) in row.iter().enumerate() {
            let cpath = format!("{rpath}[{j}]");
            for (t, term) in as_array(cell, &cpath)?.iter().enumerate() {
                let term_path = format!("{cpath}[{t}]");
                let term = as_array(term, &term_path)?;
                if term.len() != 2 {
                    return Err(DocError::at(&term_path, "expected [index, coeff]"));
                }
                let idx = as_usize(&term[0], &format!("{term_path}[0]"))?;
                let coeff = as_u64(&term[1], &format!("{term_path}[1]"))?;
                if idx >= rank {
                    return Err(DocError::at(
                        &format!("{term_path}[0]"),
                        format!("index {idx} out of range (rank {rank})"),
                    ));
                }
                table[i][j][idx] = coeff;
            }
        }
    }
    ArtinLocalAlgebra::new(ring, unit, vec![], table)
        .map_err(|e| DocError::Invalid(format!("invalid Artin algebra: {e}")))
}

fn parse_morphism(
    root: &Map<String, Value>,
    path: &str,
    ring: CoeffRing,
    dir: &Path,
    lax: bool,
) -> Result<MorphismDoc, DocError> {
    let source_ref = string_key(root, path, "source")?;
    let target_ref = string_key(root, path, "target")?;
    let load = |reference: &str, key: &str| -> Result<GradedLieAlgebra, DocError> {
        let full: PathBuf = dir.join(reference);
        match read_document(&full, lax)? {
            Document::Lie(alg) => Ok(alg),
            other => Err(DocError::at(
                &format!("{path}.{key}"),
                format!("referenced document {reference:?} has kind {:?}, expected lie", other.kind()),
            )),
        }
    };
    let source = load(&source_ref, "source")?;
    let target = load(&target_ref, "target")?;
    if source.ring() != ring || target.ring() != ring {
        return Err(DocError::at(
            &format!("{path}.ring"),
            "ring differs from the referenced source/target rings",
        ));
    }
    let mpath = format!("{path}.matrices");
    let per_degree = as_array(get(root, path, "matrices")?, &mpath)?;
    let d = source.truncation();
    if per_degree.len() != d {
        return Err(DocError::at(&mpath, format!("expected {d} matrices, one per degree")));
    }
    let mut mats = Vec::with_capacity(d);
    for (deg0, m) in per_degree.iter().enumerate() {
        let deg = deg0 + 1;
        let (rows, cols) = (source.rank(deg), target.rank(deg));
        let dpath = format!("{mpath}[{deg0}]");
        let rows_v = as_array(m, &dpath)?;
        if rows_v.len() != rows {
            return Err(DocError::at(&dpath, format!("expected {rows} rows for degree {deg}")));
        }
        let mut mat = lieforge_core::coeff::Mat::zero(ring, rows, cols);
        for (r, row) in rows_v.iter().enumerate() {
            let rpath = format!("{dpath}[{r}]");
            let row = as_array(row, &rpath)?;
            if row.len() != cols {
                return Err(DocError::at(&rpath, format!("expected {cols} entries")));
            }
            for (c, v) in row.iter().enumerate() {
                mat.set(r, c, as_u64(v, &format!("{rpath}[{c}]"))?);
            }
        }
        mats.push(mat);
    }
    let map = GradedMorphism::new(&source, &target, mats)
        .map_err(|e| DocError::Invalid(format!("invalid morphism: {e}")))?;
    map.validate(&source, &target)
        .map_err(|e| DocError::Invalid(format!("invalid morphism: {e}")))?;
    Ok(MorphismDoc {
        source,
        target,
        map,
        source_ref,
        target_ref,
    })
}

fn parse_suite(
    root: &Map<String, Value>,
    path: &str,
    ring: CoeffRing,
    dir: &Path,
    lax: bool,
) -> Result<SuiteDoc, DocError> {
    let category = match string_key(root, path, "category")?.as_str() {
        "epsilon" => SuiteCategory::Epsilon,
        "quotient" => SuiteCategory::Quotient,
        other => {
            return Err(DocError::at(
                &format!("{path}.category"),
                format!("unknown category {other:?}; expected epsilon or quotient"),
            ))
        }
    };
    let seed_ref = string_key(root, path, "seed")?;
    let seed = match read_document(&dir.join(&seed_ref), lax)? {
        Document::Lie(alg) => alg,
        other => {
            return Err(DocError::at(
                &format!("{path}.seed"),
                format!("referenced document has kind {:?}, expected lie", other.kind()),
            ))
        }
    };
    if seed.ring() != ring {
        return Err(DocError::at(
            &format!("{path}.ring"),
            "ring differs from the seed's ring",
        ));
    }
    let opath = format!("{path}.oracles");
    let mut oracles = Vec::new();
    for (k, oracle) in as_array(get(root, path, "oracles")?, &opath)?.iter().enumerate() {
        let kpath = format!("{opath}[{k}]");
        let oracle = as_object(oracle, &kpath)?;
        match string_key(oracle, &kpath, "type")?.as_str() {
            "representable" => {
                check_keys(oracle, &kpath, &["type", "object"], false)?;
                let object = as_usize(get(oracle, &kpath, "object")?, &format!("{kpath}.object"))?;
                oracles.push(OracleSpec::Representable { object });
            }
            "table" => {
                check_keys(oracle, &kpath, &["type", "sizes", "actions"], false)?;
                let spath = format!("{kpath}.sizes");
                let sizes = as_array(get(oracle, &kpath, "sizes")?, &spath)?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| as_usize(v, &format!("{spath}[{i}]")))
                    .collect::<Result<_, _>>()?;
                let apath = format!("{kpath}.actions");
                let actions = as_array(get(oracle, &kpath, "actions")?, &apath)?
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let rpath = format!("{apath}[{i}]");
                        as_array(row, &rpath)?
                            .iter()
                            .enumerate()
                            .map(|(j, v)| as_usize(v, &format!("{rpath}[{j}]")))
                            .collect()
                    })
                    .collect::<Result<_, _>>()?;
                oracles.push(OracleSpec::Table { sizes, actions });
            }
            other => {
                return Err(DocError::at(
                    &format!("{kpath}.type"),
                    format!("unknown oracle type {other:?}; expected representable or table"),
                ))
            }
        }
    }
    Ok(SuiteDoc {
        category,
        seed,
        seed_ref,
        oracles,
    })
}

fn ring_value(ring: CoeffRing) -> Value {
    let mut m = Map::new();
    m.insert("l".into(), Value::from(ring.l()));
    m.insert("N".into(), Value::from(ring.exponent()));
    Value::Object(m)
}

pub fn serialize_lie(alg: &GradedLieAlgebra) -> Value {
    let d = alg.truncation();
    let mut root = Map::new();
    root.insert("kind".into(), Value::from("lie"));
    root.insert("ring".into(), ring_value(alg.ring()));
    root.insert(
        "degrees".into(),
        Value::Array((1..=d).map(|i| Value::from(alg.rank(i))).collect()),
    );
    root.insert(
        "basis".into(),
        Value::Array(
            (1..=d)
                .map(|i| {
                    Value::Array(
                        (0..alg.rank(i))
                            .map(|a| Value::from(alg.label(i, a)))
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    let mut brackets = Vec::new();
    let basis = alg.basis();
    for (p, &(i, a)) in basis.iter().enumerate() {
        for &(j, b) in &basis[p + 1..] {
            if i + j > d {
                continue;
            }
            let value = alg.bracket_basis(i, a, j, b);
            let terms: Vec<Value> = value
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(idx, &c)| Value::Array(vec![Value::from(idx), Value::from(c)]))
                .collect();
            if terms.is_empty() {
                continue;
            }
            let mut entry = Map::new();
            entry.insert(
                "left".into(),
                Value::Array(vec![Value::from(i), Value::from(a)]),
            );
            entry.insert(
                "right".into(),
                Value::Array(vec![Value::from(j), Value::from(b)]),
            );
            entry.insert("value".into(), Value::Array(terms));
            brackets.push(Value::Object(entry));
        }
    }
    root.insert("brackets".into(), Value::Array(brackets));
    Value::Object(root)
}

pub fn serialize_artin(alg: &ArtinLocalAlgebra) -> Value {
    let rank = alg.rank();
    let mut root = Map::new();
    root.insert("kind".into(), Value::from("artin"));
    root.insert("ring".into(), ring_value(alg.ring()));
    root.insert("rank".into(), Value::from(rank));
    root.insert("unit".into(), Value::from(alg.unit_index()));
    root.insert(
        "maximal".into(),
        Value::Array(
            (0..rank)
                .filter(|&i| i != alg.unit_index())
                .map(Value::from)
                .collect(),
        ),
    );
    let table: Vec<Value> = (0..rank)
        .map(|i| {
            Value::Array(
                (0..rank)
                    .map(|j| {
                        Value::Array(
                            alg.basis_product(i, j)
                                .iter()
                                .enumerate()
                                .filter(|(_, &c)| c != 0)
                                .map(|(idx, &c)| {
                                    Value::Array(vec![Value::from(idx), Value::from(c)])
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    root.insert("table".into(), Value::Array(table));
    Value::Object(root)
}

pub fn serialize_morphism(doc: &MorphismDoc, kind: &str) -> Value {
    let mut root = Map::new();
    root.insert("kind".into(), Value::from(kind));
    root.insert("ring".into(), ring_value(doc.source.ring()));
    root.insert("source".into(), Value::from(doc.source_ref.as_str()));
    root.insert("target".into(), Value::from(doc.target_ref.as_str()));
    let d = doc.source.truncation();
    let mats: Vec<Value> = (1..=d)
        .map(|deg| {
            let m = doc.map.matrix(deg);
            Value::Array(
                (0..m.rows())
                    .map(|r| {
                        Value::Array((0..m.cols()).map(|c| Value::from(m.get(r, c))).collect())
                    })
                    .collect(),
            )
        })
        .collect();
    root.insert("matrices".into(), Value::Array(mats));
    Value::Object(root)
}

/// Render a document value to the canonical on-disk form: two-space
/// indentation, sorted keys, trailing newline.
pub fn to_document_string(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("values serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Document, DocError> {
        parse_document(text, Path::new("."), false)
    }

    #[test]
    fn heisenberg_round_trips() {
        let heis = GradedLieAlgebra::heisenberg(CoeffRing::field(5).unwrap());
        let text = to_document_string(&serialize_lie(&heis));
        let doc = parse(&text).unwrap();
        let Document::Lie(parsed) = doc else {
            panic!("expected a lie document")
        };
        assert_eq!(parsed, heis);
        // serialize ∘ parse ∘ serialize is stable byte-for-byte
        assert_eq!(to_document_string(&serialize_lie(&parsed)), text);
    }

    #[test]
    fn transposed_bracket_entries_are_rejected_naming_both() {
        let text = r#"{
            "kind": "lie",
            "ring": {"l": 5, "N": 1},
            "degrees": [2, 1],
            "brackets": [
                {"left": [1, 0], "right": [1, 1], "value": [[0, 1]]},
                {"left": [1, 1], "right": [1, 0], "value": [[0, 1]]}
            ]
        }"#;
        let err = parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("antisymmetry"), "got: {msg}");
        assert!(msg.contains("entry 1") && msg.contains("entry 0"), "got: {msg}");
    }

    #[test]
    fn out_of_degree_bracket_values_carry_a_json_path() {
        // rank of degree 2 is 1, so index 1 violates the forced grading
        let text = r#"{
            "kind": "lie",
            "ring": {"l": 5, "N": 1},
            "degrees": [2, 1],
            "brackets": [
                {"left": [1, 0], "right": [1, 1], "value": [[1, 1]]}
            ]
        }"#;
        let err = parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("$.brackets[0].value[0][0]"), "got: {msg}");
    }

    #[test]
    fn unknown_keys_are_rejected_unless_lax() {
        let text = r#"{
            "kind": "lie",
            "ring": {"l": 5, "N": 1},
            "degrees": [1],
            "comment": "hello"
        }"#;
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("$.comment"), "got: {err}");
        assert!(parse_document(text, Path::new("."), true).is_ok());
    }

    #[test]
    fn jacobi_violations_are_reported_with_the_triple() {
        // [x,y] = u and [w,u] = v make the cyclic sum over (x,y,w) equal
        // -v, a genuine Jacobi failure inside the truncation
        let text = r#"{
            "kind": "lie",
            "ring": {"l": 5, "N": 1},
            "degrees": [3, 1, 1],
            "brackets": [
                {"left": [1, 0], "right": [1, 1], "value": [[0, 1]]},
                {"left": [1, 2], "right": [2, 0], "value": [[0, 1]]}
            ]
        }"#;
        let err = parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Jacobi"), "got: {msg}");
        assert!(msg.contains("(1,0)") || msg.contains("((1,0)"), "got: {msg}");
    }

    #[test]
    fn artin_documents_round_trip() {
        let a = ArtinLocalAlgebra::truncated_polynomial(CoeffRing::field(5).unwrap(), 3);
        let text = to_document_string(&serialize_artin(&a));
        let Document::Artin(parsed) = parse(&text).unwrap() else {
            panic!("expected an artin document")
        };
        assert!(parsed.same_structure(&a));
        assert_eq!(to_document_string(&serialize_artin(&parsed)), text);
    }

    #[test]
    fn morphism_documents_resolve_references() {
        let dir = tempfile::tempdir().unwrap();
        let ring = CoeffRing::field(2).unwrap();
        let heis = GradedLieAlgebra::heisenberg(ring);
        let ab = GradedLieAlgebra::abelian(ring, vec![2, 1]).unwrap();
        std::fs::write(
            dir.path().join("heis.json"),
            to_document_string(&serialize_lie(&heis)),
        )
        .unwrap();
        std::fs::write(
            dir.path().join("ab.json"),
            to_document_string(&serialize_lie(&ab)),
        )
        .unwrap();
        let text = r#"{
            "kind": "rep",
            "ring": {"l": 2, "N": 1},
            "source": "ab.json",
            "target": "heis.json",
            "matrices": [[[0, 0], [0, 0]], [[0]]]
        }"#;
        let Document::Rep(doc) = parse_document(text, dir.path(), false).unwrap() else {
            panic!("expected a rep document")
        };
        assert_eq!(doc.source, ab);
        assert_eq!(doc.target, heis);
        assert!(doc.map.matrix(1).is_zero());
    }

    #[test]
    fn syntax_errors_surface_as_syntax() {
        assert!(matches!(parse("{"), Err(DocError::Syntax(_))));
        // comments are not JSON
        assert!(matches!(
            parse("// hi\n{\"kind\": \"lie\"}"),
            Err(DocError::Syntax(_))
        ));
    }
}
