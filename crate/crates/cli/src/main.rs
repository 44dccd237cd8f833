//! `lieforge`: command-line front end for the deformation-theory
//! workbench. One subcommand per operation family; strict JSON documents
//! in, deterministic text (or `--json`) out.
//!
//! Exit codes: 0 = success, 1 = a negative mathematical answer (an
//! obstruction, a failed representability criterion), 2 = usage or
//! document errors.

use clap::{Parser, Subcommand};
use lieforge_cli::doc::{self, Document, MorphismDoc, OracleSpec, SuiteCategory};
use lieforge_core::ce_cohomology::cohomology_space;
use lieforge_core::coeff::CoeffRing;
use lieforge_core::deformation::{
    eta_zero, extend_deformation, lift_table, miniversal_tower, obstruction_of_lift,
    quadratic_map, CocycleSection, ExtendOutcome, LieDeformation,
};
use lieforge_core::graded_lie::{
    adjoint_module, free_lie_truncated, pullback_module, GradedLieAlgebra,
};
use lieforge_core::harrison::{
    harrison_cohomology, universal_extension, AlgExtension, ArtinLocalAlgebra,
};
use lieforge_core::rep_deform::{
    enumerate_lifts, lift_representation, quadratic_relations, rep_obstruction, tangent_space,
    GradedRep, RepDeformation, RepLiftOutcome,
};
use lieforge_core::schlessinger::{
    check_criteria, universal_property_holds, FunctorOracle, TableOracle, TestCategory,
};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lieforge",
    version,
    about = "Exact deformation theory for truncated graded Lie algebras"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Ignore unknown keys in input documents.
    #[arg(long, global = true)]
    lax: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document, reporting its shape.
    Validate { file: PathBuf },
    /// Dimension of H^q(L, L)(grade) for a Lie document.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        grade: i64,
        /// "adjoint" or a path to a rep document with this algebra as source.
        #[arg(long, default_value = "adjoint")]
        coeffs: String,
    },
    /// Dimension of the degree-i Harrison cohomology of an Artin document.
    Harrison {
        file: PathBuf,
        #[arg(long)]
        i: u32,
    },
    /// Build the free graded Lie algebra on weighted generators.
    Free {
        /// Comma-separated name:degree pairs, e.g. x:1,y:1.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        degree: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Coefficient prime.
        #[arg(long, default_value_t = 5)]
        l: u64,
        /// Coefficient exponent (modulus l^N).
        #[arg(long = "ring-power", default_value_t = 1)]
        n: u32,
    },
    /// The universal first-order deformation of a Lie document.
    Eta { file: PathBuf },
    /// Obstruction classes of the first-order deformation along an extension.
    Obstruct {
        file: PathBuf,
        /// "universal" or tN (extend the base to k[t]/t^N).
        #[arg(long, default_value = "universal")]
        ext: String,
    },
    /// Extend the first-order deformation along an extension.
    Extend {
        file: PathBuf,
        #[arg(long, default_value = "universal")]
        ext: String,
    },
    /// Miniversal base tower D_1, D_2, ... for a Lie document.
    Tower {
        file: PathBuf,
        #[arg(long)]
        stages: usize,
    },
    /// Tangent space of the representation-lifting functor.
    RepTangent {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Lift a representation stepwise to k[t]/t^N.
    RepLift {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        /// tN: the truncated polynomial base to reach.
        #[arg(long, default_value = "t2")]
        base: String,
    },
    /// Enumerate all lifts of a representation over a truncated base.
    RepEnumerate {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, default_value = "t2")]
        base: String,
        #[arg(long, default_value_t = 1 << 16)]
        bound: u128,
    },
    /// Order-two obstruction data: bracket pairing on tangent classes.
    Quadratic {
        /// Rep document: pairing on H^1(G, Ad rho)(0).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Lie document: pairing on H^2(L, L)(0).
        #[arg(long)]
        lie: Option<PathBuf>,
    },
    /// Run the lifting criteria H1-H4 for a functor suite document.
    Schlessinger {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long, default_value_t = 1 << 16)]
        bound: u128,
    },
}

struct Output {
    lines: Vec<String>,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Output { lines, json, code: 0 }
    }

    fn negative(lines: Vec<String>, json: Value) -> Self {
        Output { lines, json, code: 1 }
    }
}

type CliResult = Result<Output, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(value) = std::env::var_os("LIEFORGE_THREADS") {
        let ok = value
            .to_str()
            .and_then(|s| s.parse::<u64>().ok())
            .is_some_and(|n| n >= 1);
        if !ok {
            eprintln!(
                "error: LIEFORGE_THREADS must be a positive integer, got {:?}",
                value.to_string_lossy()
            );
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                doc::to_document_string(&out.json)
            } else {
                let mut t = out.lines.join("\n");
                t.push('\n');
                t
            };
            let mut stdout = std::io::stdout();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Validate { file } => validate(file, cli.lax),
        Command::Cohomology {
            file,
            q,
            grade,
            coeffs,
        } => cohomology(file, *q, *grade, coeffs, cli.lax),
        Command::Harrison { file, i } => harrison(file, *i, cli.lax),
        Command::Free {
            gens,
            degree,
            output,
            l,
            n,
        } => free(gens, *degree, output.as_deref(), *l, *n),
        Command::Eta { file } => eta(file, cli.lax),
        Command::Obstruct { file, ext } => obstruct_or_extend(file, ext, false, cli.lax),
        Command::Extend { file, ext } => obstruct_or_extend(file, ext, true, cli.lax),
        Command::Tower { file, stages } => tower(file, *stages, cli.lax),
        Command::RepTangent { map, source, target } => {
            let rep = load_rep(map, source.as_deref(), target.as_deref(), cli.lax)?;
            rep_tangent(&rep)
        }
        Command::RepLift {
            map,
            source,
            target,
            base,
        } => {
            let rep = load_rep(map, source.as_deref(), target.as_deref(), cli.lax)?;
            rep_lift(&rep, base)
        }
        Command::RepEnumerate {
            map,
            source,
            target,
            base,
            bound,
        } => {
            let rep = load_rep(map, source.as_deref(), target.as_deref(), cli.lax)?;
            rep_enumerate(&rep, base, *bound)
        }
        Command::Quadratic { rep, lie } => quadratic(rep.as_deref(), lie.as_deref(), cli.lax),
        Command::Schlessinger { suite, bound } => schlessinger(suite, *bound, cli.lax),
    }
}

fn ring_name(ring: CoeffRing) -> String {
    if ring.exponent() == 1 {
        format!("F_{}", ring.l())
    } else {
        format!("Z/{}^{}", ring.l(), ring.exponent())
    }
}

fn ranks_string(alg: &GradedLieAlgebra) -> String {
    alg.ranks()
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn read_doc(path: &Path, lax: bool) -> Result<Document, String> {
    doc::read_document(path, lax).map_err(|e| e.to_string())
}

fn lie_doc(path: &Path, lax: bool) -> Result<GradedLieAlgebra, String> {
    match read_doc(path, lax)? {
        Document::Lie(alg) => Ok(alg),
        other => Err(format!(
            "{}: expected a lie document, found kind {:?}",
            path.display(),
            other.kind()
        )),
    }
}

fn artin_doc(path: &Path, lax: bool) -> Result<ArtinLocalAlgebra, String> {
    match read_doc(path, lax)? {
        Document::Artin(alg) => Ok(alg),
        other => Err(format!(
            "{}: expected an artin document, found kind {:?}",
            path.display(),
            other.kind()
        )),
    }
}

fn field_of(alg: &GradedLieAlgebra) -> Result<CoeffRing, String> {
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(format!(
            "this command requires field coefficients; the document uses {}",
            ring_name(ring)
        ));
    }
    Ok(ring)
}

// ---------------------------------------------------------------- validate

fn validate(path: &Path, lax: bool) -> CliResult {
    let document = read_doc(path, lax)?;
    let (line, json) = match &document {
        Document::Lie(alg) => (
            format!(
                "ok: lie algebra over {}, truncation {}, ranks {}",
                ring_name(alg.ring()),
                alg.truncation(),
                ranks_string(alg)
            ),
            json!({
                "kind": "lie",
                "ring": ring_name(alg.ring()),
                "truncation": alg.truncation(),
                "ranks": alg.ranks(),
                "total_dim": alg.total_dim(),
            }),
        ),
        Document::Artin(alg) => {
            let m_mod_m2 = alg.dim_m_mod_m2().ok();
            let mut line = format!(
                "ok: artin local algebra over {}, rank {}",
                ring_name(alg.ring()),
                alg.rank()
            );
            if let Some(d) = m_mod_m2 {
                line.push_str(&format!(", dim m/m^2 = {d}"));
            }
            (
                line,
                json!({
                    "kind": "artin",
                    "ring": ring_name(alg.ring()),
                    "rank": alg.rank(),
                    "dim_m_mod_m2": m_mod_m2,
                }),
            )
        }
        Document::Morphism(m) | Document::Rep(m) => (
            format!(
                "ok: {} {} -> {} over {}, truncation {}",
                if matches!(document, Document::Rep(_)) {
                    "representation"
                } else {
                    "graded morphism"
                },
                m.source_ref,
                m.target_ref,
                ring_name(m.source.ring()),
                m.source.truncation()
            ),
            json!({
                "kind": document.kind(),
                "ring": ring_name(m.source.ring()),
                "source": m.source_ref,
                "target": m.target_ref,
                "truncation": m.source.truncation(),
            }),
        ),
        Document::Suite(s) => (
            format!(
                "ok: functor suite ({} category on {}, {} oracles)",
                match s.category {
                    SuiteCategory::Epsilon => "epsilon",
                    SuiteCategory::Quotient => "quotient",
                },
                s.seed_ref,
                s.oracles.len()
            ),
            json!({
                "kind": "functor-suite",
                "category": match s.category {
                    SuiteCategory::Epsilon => "epsilon",
                    SuiteCategory::Quotient => "quotient",
                },
                "seed": s.seed_ref,
                "oracles": s.oracles.len(),
            }),
        ),
    };
    Ok(Output::ok(vec![line], json))
}

// -------------------------------------------------------------- cohomology

fn cohomology(path: &Path, q: usize, grade: i64, coeffs: &str, lax: bool) -> CliResult {
    let alg = lie_doc(path, lax)?;
    let (module, name) = if coeffs == "adjoint" {
        (adjoint_module(&alg), format!("H^{q}(L,L)({grade})"))
    } else {
        let rep_doc = match read_doc(Path::new(coeffs), lax)? {
            Document::Rep(m) | Document::Morphism(m) => m,
            other => {
                return Err(format!(
                    "--coeffs {coeffs}: expected a rep document, found kind {:?}",
                    other.kind()
                ))
            }
        };
        if rep_doc.source != alg {
            return Err(format!(
                "--coeffs {coeffs}: the rep's source differs from the algebra in {}",
                path.display()
            ));
        }
        let module = pullback_module(&rep_doc.source, &rep_doc.target, &rep_doc.map);
        (module, format!("H^{q}(G, Ad rho)({grade})"))
    };
    let space = cohomology_space(&alg, &module, q, grade).map_err(|e| e.to_string())?;
    let dim = space.dimension();
    Ok(Output::ok(
        vec![format!("dim {name} = {dim}")],
        json!({"q": q, "grade": grade, "dim": dim}),
    ))
}

// ---------------------------------------------------------------- harrison

fn harrison(path: &Path, i: u32, lax: bool) -> CliResult {
    let alg = artin_doc(path, lax)?;
    if !(1..=2).contains(&i) {
        return Err(format!("--i must be 1 or 2, got {i}"));
    }
    if !alg.ring().is_field() {
        return Err("harrison requires field coefficients".into());
    }
    let dim = harrison_cohomology(&alg, 1, i)
        .map_err(|e| e.to_string())?
        .dimension();
    Ok(Output::ok(
        vec![format!("dim H^{i}_Harr(A, k) = {dim}")],
        json!({"i": i, "dim": dim}),
    ))
}

// -------------------------------------------------------------------- free

fn free(gens: &str, degree: usize, output: Option<&Path>, l: u64, n: u32) -> CliResult {
    let ring = CoeffRing::new(l, n).map_err(|e| e.to_string())?;
    let mut parsed = Vec::new();
    for part in gens.split(',') {
        let (name, deg) = part
            .split_once(':')
            .ok_or_else(|| format!("--gens entry {part:?} is not name:degree"))?;
        let deg: usize = deg
            .parse()
            .map_err(|_| format!("--gens entry {part:?} has a non-numeric degree"))?;
        parsed.push((name.to_string(), deg));
    }
    let fl = free_lie_truncated(ring, &parsed, degree).map_err(|e| e.to_string())?;
    let alg = fl.into_algebra();
    let mut lines = vec![
        format!(
            "free Lie algebra on {} generators over {}, truncation {}",
            parsed.len(),
            ring_name(ring),
            degree
        ),
        format!("ranks {}", ranks_string(&alg)),
    ];
    if let Some(out) = output {
        let text = doc::to_document_string(&doc::serialize_lie(&alg));
        std::fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))?;
        lines.push(format!("wrote {}", out.display()));
    }
    Ok(Output::ok(
        lines,
        json!({
            "generators": parsed.len(),
            "truncation": degree,
            "ranks": alg.ranks(),
            "total_dim": alg.total_dim(),
        }),
    ))
}

// --------------------------------------------------------------------- eta

fn deformed_bracket_lines(def: &LieDeformation) -> (Vec<String>, Value) {
    let alg = def.algebra();
    let base = def.base();
    let d = alg.truncation();
    let basis = alg.basis();
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (p, &(i, a)) in basis.iter().enumerate() {
        for &(j, b) in &basis[p + 1..] {
            if i + j > d {
                continue;
            }
            let table = def.bracket_basis(i, a, j, b);
            let mut terms = Vec::new();
            for (m, coords) in table.iter().enumerate() {
                for (q, &c) in coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut term = String::new();
                    if c != 1 {
                        term.push_str(&format!("{c}*"));
                    }
                    term.push_str(alg.label(i + j, m));
                    if q != base.unit_index() {
                        term.push('*');
                        term.push_str(base.label(q));
                    }
                    terms.push(term);
                }
            }
            if !terms.is_empty() {
                lines.push(format!(
                    "  [{}, {}] = {}",
                    alg.label(i, a),
                    alg.label(j, b),
                    terms.join(" + ")
                ));
                entries.push(json!({
                    "left": [i, a],
                    "right": [j, b],
                    "value": table,
                }));
            }
        }
    }
    if lines.is_empty() {
        lines.push("  (all brackets zero)".into());
    }
    (lines, Value::Array(entries))
}

fn eta(path: &Path, lax: bool) -> CliResult {
    let alg = lie_doc(path, lax)?;
    field_of(&alg)?;
    let section = CocycleSection::standard(&alg).map_err(|e| e.to_string())?;
    let h = section.dimension();
    let def = eta_zero(&alg, &section).map_err(|e| e.to_string())?;
    let base = def.base();
    let mut lines = vec![
        format!("dim H^2(L,L)(0) = {h}"),
        format!(
            "base D_1: rank {} over {}, square-zero",
            base.rank(),
            ring_name(base.ring())
        ),
        "deformed brackets over D_1:".into(),
    ];
    let (bracket_lines, bracket_json) = deformed_bracket_lines(&def);
    lines.extend(bracket_lines);
    Ok(Output::ok(
        lines,
        json!({
            "h2": h,
            "base_rank": base.rank(),
            "brackets": bracket_json,
        }),
    ))
}

// --------------------------------------------------------- obstruct/extend

/// Resolve `--ext`: "universal" (the universal square-zero extension of
/// the current base) or "tN" (reach k[t]/t^N, requiring the current base
/// to be k[t]/t^(N-1)).
fn resolve_extension(base: &ArtinLocalAlgebra, spec: &str) -> Result<AlgExtension, String> {
    if spec == "universal" {
        return universal_extension(base).map_err(|e| e.to_string());
    }
    let n: usize = spec
        .strip_prefix('t')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("--ext must be \"universal\" or tN, got {spec:?}"))?;
    if n < 2 {
        return Err("--ext tN needs N >= 2".into());
    }
    let ext = AlgExtension::truncation(base.ring(), n - 1);
    if !base.same_structure(ext.base()) {
        return Err(format!(
            "the deformation base (rank {}) is not k[t]/t^{}; --ext t{n} does not apply",
            base.rank(),
            n - 1
        ));
    }
    Ok(ext)
}

fn obstruct_or_extend(path: &Path, ext_spec: &str, extend: bool, lax: bool) -> CliResult {
    let alg = lie_doc(path, lax)?;
    field_of(&alg)?;
    let section = CocycleSection::standard(&alg).map_err(|e| e.to_string())?;
    let def = eta_zero(&alg, &section).map_err(|e| e.to_string())?;
    let ext = resolve_extension(def.base(), ext_spec)?;
    let mut lines = Vec::new();
    let classes: Vec<Vec<u64>>;
    if extend {
        match extend_deformation(&def, &ext).map_err(|e| e.to_string())? {
            ExtendOutcome::Extended(bigger) => {
                lines.push(format!(
                    "extended: new base rank {} over {}",
                    bigger.base().rank(),
                    ring_name(bigger.base().ring())
                ));
                lines.push("deformed brackets:".into());
                let (bracket_lines, bracket_json) = deformed_bracket_lines(&bigger);
                lines.extend(bracket_lines);
                return Ok(Output::ok(
                    lines,
                    json!({
                        "extended": true,
                        "base_rank": bigger.base().rank(),
                        "brackets": bracket_json,
                    }),
                ));
            }
            ExtendOutcome::Obstructed(obs) => {
                classes = obs.into_iter().map(|o| o.coords).collect();
            }
        }
    } else {
        let table = lift_table(&def, &ext).map_err(|e| e.to_string())?;
        classes = obstruction_of_lift(&alg, &ext, &table)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|o| o.coords)
            .collect();
    }
    let obstructed = classes.iter().flatten().any(|&c| c != 0);
    for (k, class) in classes.iter().enumerate() {
        let coords = class
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!(
            "obstruction class {} of {}: ({coords})",
            k + 1,
            classes.len()
        ));
    }
    let verdict = if obstructed { "obstructed" } else { "unobstructed" };
    lines.push(verdict.into());
    let json = json!({
        "classes": classes,
        "obstructed": obstructed,
    });
    if obstructed {
        Ok(Output::negative(lines, json))
    } else {
        Ok(Output::ok(lines, json))
    }
}

// ------------------------------------------------------------------- tower

fn tower(path: &Path, stages: usize, lax: bool) -> CliResult {
    if stages == 0 {
        return Err("--stages must be at least 1".into());
    }
    let alg = lie_doc(path, lax)?;
    let ring = field_of(&alg)?;
    let section = CocycleSection::standard(&alg).map_err(|e| e.to_string())?;
    let tower = miniversal_tower(&alg, &section, stages).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut stage_json = Vec::new();
    for stage in &tower {
        let base = &stage.base;
        let shape = match base.as_truncated_polynomial() {
            Some(1) => ring_name(ring),
            Some(n) => format!("{}[t]/t^{}", ring_name(ring), n),
            None => format!("local algebra of rank {}", base.rank()),
        };
        lines.push(format!(
            "stage {}: D_{} = {} (obstruction map rank {})",
            stage.stage, stage.stage, shape, stage.phi_rank
        ));
        stage_json.push(json!({
            "stage": stage.stage,
            "rank": base.rank(),
            "truncated_polynomial": base.as_truncated_polynomial(),
            "phi_rank": stage.phi_rank,
        }));
    }
    let last = tower.last().expect("at least one stage");
    lines.push(format!("deformed brackets over D_{}:", last.stage));
    let (bracket_lines, bracket_json) = deformed_bracket_lines(&last.eta);
    lines.extend(bracket_lines);
    Ok(Output::ok(
        lines,
        json!({
            "stages": stage_json,
            "brackets": bracket_json,
        }),
    ))
}

// ----------------------------------------------------------- rep commands

fn load_rep(
    map: &Path,
    source: Option<&Path>,
    target: Option<&Path>,
    lax: bool,
) -> Result<GradedRep, String> {
    let m: MorphismDoc = match read_doc(map, lax)? {
        Document::Rep(m) | Document::Morphism(m) => m,
        other => {
            return Err(format!(
                "{}: expected a rep document, found kind {:?}",
                map.display(),
                other.kind()
            ))
        }
    };
    if let Some(p) = source {
        if lie_doc(p, lax)? != m.source {
            return Err(format!(
                "--source {} differs from the source referenced by the map document",
                p.display()
            ));
        }
    }
    if let Some(p) = target {
        if lie_doc(p, lax)? != m.target {
            return Err(format!(
                "--target {} differs from the target referenced by the map document",
                p.display()
            ));
        }
    }
    GradedRep::new(m.source, m.target, m.map).map_err(|e| e.to_string())
}

fn parse_truncated_base(spec: &str) -> Result<usize, String> {
    let n: usize = spec
        .strip_prefix('t')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("--base must be tN (a truncated polynomial ring), got {spec:?}"))?;
    if n < 1 {
        return Err("--base tN needs N >= 1".into());
    }
    Ok(n)
}

fn rep_tangent(rep: &GradedRep) -> CliResult {
    let ring = rep.source().ring();
    if !ring.is_field() {
        return Err("rep-tangent requires field coefficients".into());
    }
    let tangent = tangent_space(rep).map_err(|e| e.to_string())?;
    let h = tangent.dimension();
    let l = ring.l();
    let count: Option<u128> = (l as u128).checked_pow(h as u32);
    let mut line = format!("first-order lifts: {l}^{h}");
    if let Some(c) = count {
        line.push_str(&format!(" = {c}"));
    }
    Ok(Output::ok(
        vec![format!("dim H^1(G, Ad rho)(0) = {h}"), line],
        json!({"h1": h, "lift_count": count.map(|c| c.to_string())}),
    ))
}

fn rep_lift(rep: &GradedRep, base_spec: &str) -> CliResult {
    let ring = rep.source().ring();
    if !ring.is_field() {
        return Err("rep-lift requires field coefficients".into());
    }
    let n = parse_truncated_base(base_spec)?;
    if n < 2 {
        return Err("--base tN needs N >= 2 for a lift".into());
    }
    let mut rho =
        RepDeformation::trivial(rep, &ArtinLocalAlgebra::base(ring)).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    let mut steps = Vec::new();
    for j in 1..n {
        let ext = AlgExtension::truncation(ring, j);
        let cert = rep_obstruction(rep, &rho, &ext).map_err(|e| e.to_string())?;
        if !cert.is_zero() {
            lines.push(format!(
                "step {}[t]/t^{}: obstructed, class {:?}",
                ring_name(ring),
                j + 1,
                cert.coords
            ));
            lines.push("obstructed".into());
            steps.push(json!({"to": j + 1, "lifted": false, "class": cert.coords}));
            return Ok(Output::negative(
                lines,
                json!({"lifted": false, "steps": steps}),
            ));
        }
        match lift_representation(rep, &rho, &ext).map_err(|e| e.to_string())? {
            RepLiftOutcome::Lifted(next) => {
                lines.push(format!("step {}[t]/t^{}: lifted", ring_name(ring), j + 1));
                steps.push(json!({"to": j + 1, "lifted": true}));
                rho = next;
            }
            RepLiftOutcome::Obstructed(cert) => {
                lines.push(format!(
                    "step {}[t]/t^{}: obstructed, class {:?}",
                    ring_name(ring),
                    j + 1,
                    cert.coords
                ));
                lines.push("obstructed".into());
                steps.push(json!({"to": j + 1, "lifted": false, "class": cert.coords}));
                return Ok(Output::negative(
                    lines,
                    json!({"lifted": false, "steps": steps}),
                ));
            }
        }
    }
    lines.push(format!("lifted to {}[t]/t^{}", ring_name(ring), n));
    Ok(Output::ok(lines, json!({"lifted": true, "steps": steps})))
}

fn rep_enumerate(rep: &GradedRep, base_spec: &str, bound: u128) -> CliResult {
    let ring = rep.source().ring();
    if !ring.is_field() {
        return Err("rep-enumerate requires field coefficients".into());
    }
    let n = parse_truncated_base(base_spec)?;
    let base = if n == 1 {
        ArtinLocalAlgebra::base(ring)
    } else {
        ArtinLocalAlgebra::truncated_polynomial(ring, n)
    };
    let enumeration = enumerate_lifts(rep, &base, bound).map_err(|e| e.to_string())?;
    let base_name = if n == 1 {
        ring_name(ring)
    } else {
        format!("{}[t]/t^{}", ring_name(ring), n)
    };
    Ok(Output::ok(
        vec![
            format!("search space: {}", enumeration.search_space),
            format!("lifts over {}: {}", base_name, enumeration.lifts.len()),
        ],
        json!({
            "search_space": enumeration.search_space.to_string(),
            "lifts": enumeration.lifts.len(),
        }),
    ))
}

// --------------------------------------------------------------- quadratic

fn format_class(v: &[u64]) -> String {
    format!(
        "({})",
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    )
}

fn quadratic(rep: Option<&Path>, lie: Option<&Path>, lax: bool) -> CliResult {
    match (rep, lie) {
        (Some(rep_path), None) => {
            let rep = load_rep(rep_path, None, None, lax)?;
            let ring = rep.source().ring();
            if !ring.is_field() {
                return Err("quadratic requires field coefficients".into());
            }
            let pres = quadratic_relations(&rep).map_err(|e| e.to_string())?;
            let symmetric = (0..pres.h1_dimension).all(|i| {
                (0..pres.h1_dimension).all(|j| pres.pairing[i][j] == pres.pairing[j][i])
            });
            let mut lines = vec![
                format!("dim H^1(G, Ad rho)(0) = {}", pres.h1_dimension),
                format!("dim H^2(G, Ad rho)(0) = {}", pres.h2_dimension),
                format!(
                    "pairing on H^1(0): {}",
                    if pres.is_zero_pairing() {
                        "zero"
                    } else if symmetric {
                        "symmetric, nonzero"
                    } else {
                        "NOT symmetric"
                    }
                ),
            ];
            for i in 0..pres.h1_dimension {
                for j in i..pres.h1_dimension {
                    if pres.pairing[i][j].iter().any(|&c| c != 0) {
                        lines.push(format!(
                            "  <c_{i}, c_{j}> = {}",
                            format_class(&pres.pairing[i][j])
                        ));
                    }
                }
            }
            for (i, sc) in pres.self_classes.iter().enumerate() {
                if sc.iter().any(|&c| c != 0) {
                    lines.push(format!("  q(c_{i}) = {}", format_class(sc)));
                }
            }
            // count the zero locus when the tangent space is enumerable
            let l = ring.l() as u128;
            let total = l.checked_pow(pres.h1_dimension as u32);
            let mut vanishing = None;
            if let Some(total) = total.filter(|&t| t <= 1 << 16) {
                let mut count: u128 = 0;
                let mut alpha = vec![0u64; pres.h1_dimension];
                loop {
                    if pres.obstruction_value(&alpha).iter().all(|&c| c == 0) {
                        count += 1;
                    }
                    let mut i = 0;
                    loop {
                        if i == alpha.len() {
                            break;
                        }
                        alpha[i] += 1;
                        if alpha[i] < ring.l() {
                            break;
                        }
                        alpha[i] = 0;
                        i += 1;
                    }
                    if i == alpha.len() {
                        break;
                    }
                }
                lines.push(format!(
                    "vanishing locus: {count} of {total} tangent vectors"
                ));
                vanishing = Some(count);
            }
            Ok(Output::ok(
                lines,
                json!({
                    "h1": pres.h1_dimension,
                    "h2": pres.h2_dimension,
                    "symmetric": symmetric,
                    "zero": pres.is_zero_pairing(),
                    "pairing": pres.pairing,
                    "self_classes": pres.self_classes,
                    "vanishing": vanishing.map(|c| c.to_string()),
                }),
            ))
        }
        (None, Some(lie_path)) => {
            let alg = lie_doc(lie_path, lax)?;
            field_of(&alg)?;
            let section = CocycleSection::standard(&alg).map_err(|e| e.to_string())?;
            let form = quadratic_map(&alg, &section).map_err(|e| e.to_string())?;
            let n = section.dimension();
            let symmetric =
                (0..n).all(|i| (0..n).all(|j| form.pairing[i][j] == form.pairing[j][i]));
            let mut lines = vec![
                format!("dim H^2(L,L)(0) = {n}"),
                format!("dim H^3(L,L)(0) = {}", form.h3_dimension),
                format!(
                    "pairing on H^2(0): {}",
                    if form.is_zero() {
                        "zero"
                    } else if symmetric {
                        "symmetric, nonzero"
                    } else {
                        "NOT symmetric"
                    }
                ),
            ];
            for i in 0..n {
                for j in i..n {
                    if form.pairing[i][j].iter().any(|&c| c != 0) {
                        lines.push(format!(
                            "  <mu_{i}, mu_{j}> = {}",
                            format_class(&form.pairing[i][j])
                        ));
                    }
                }
            }
            Ok(Output::ok(
                lines,
                json!({
                    "h2": n,
                    "h3": form.h3_dimension,
                    "symmetric": symmetric,
                    "zero": form.is_zero(),
                    "pairing": form.pairing,
                }),
            ))
        }
        _ => Err("exactly one of --rep or --lie is required".into()),
    }
}

// ------------------------------------------------------------ schlessinger

fn schlessinger(suite_path: &Path, bound: u128, lax: bool) -> CliResult {
    let suite = match read_doc(suite_path, lax)? {
        Document::Suite(s) => s,
        other => {
            return Err(format!(
                "{}: expected a functor-suite document, found kind {:?}",
                suite_path.display(),
                other.kind()
            ))
        }
    };
    let category = match suite.category {
        SuiteCategory::Epsilon => TestCategory::epsilon_category(&suite.seed),
        SuiteCategory::Quotient => TestCategory::quotient_category(&suite.seed),
    }
    .map_err(|e| e.to_string())?;
    let category_name = match suite.category {
        SuiteCategory::Epsilon => "epsilon",
        SuiteCategory::Quotient => "quotient",
    };
    let mut lines = vec![format!(
        "category: {} on {} ({} objects, {} arrows, {} cospans)",
        category_name,
        suite.seed_ref,
        category.objects().len(),
        category.arrows().len(),
        category.cospans().len()
    )];
    for ci in 0..category.cospans().len() {
        universal_property_holds(&category, ci, bound).map_err(|e| e.to_string())?;
    }
    lines.push(format!(
        "universal properties: verified for {} cospans",
        category.cospans().len()
    ));
    let mut oracle_json = Vec::new();
    let mut all_pass = true;
    for (k, spec) in suite.oracles.iter().enumerate() {
        let (oracle, describe) = match spec {
            OracleSpec::Representable { object } => (
                FunctorOracle::Representable { object: *object },
                format!("representable object {object}"),
            ),
            OracleSpec::Table { sizes, actions } => (
                FunctorOracle::Table(TableOracle {
                    sizes: sizes.clone(),
                    actions: actions.clone(),
                }),
                "table".to_string(),
            ),
        };
        let report = check_criteria(&category, &oracle, bound).map_err(|e| e.to_string())?;
        let verdict = if report.pro_representable() {
            "pro-representable"
        } else if report.has_hull() {
            "hull only (H4 fails)"
        } else {
            "no hull"
        };
        if !report.pro_representable() {
            all_pass = false;
        }
        lines.push(format!("oracle {}: {describe}", k + 1));
        lines.push(format!(
            "  tangent size {}{}",
            report.tangent_size,
            report
                .tangent_dimension
                .map(|d| format!(" (dimension {d})"))
                .unwrap_or_else(|| " (not a power of l)".into())
        ));
        lines.push(format!(
            "  H1 {}  H2 {}  H3 {}  H4 {}",
            pass_fail(report.h1),
            pass_fail(report.h2),
            pass_fail(report.h3),
            pass_fail(report.h4)
        ));
        lines.push(format!("  verdict: {verdict}"));
        oracle_json.push(json!({
            "oracle": k + 1,
            "kind": describe,
            "tangent_size": report.tangent_size,
            "tangent_dimension": report.tangent_dimension,
            "h1": report.h1,
            "h2": report.h2,
            "h3": report.h3,
            "h4": report.h4,
            "verdict": verdict,
        }));
    }
    lines.push(if all_pass {
        "overall: all oracles pass".into()
    } else {
        "overall: some oracle fails the criteria".into()
    });
    let json = json!({
        "category": category_name,
        "objects": category.objects().len(),
        "arrows": category.arrows().len(),
        "cospans": category.cospans().len(),
        "oracles": oracle_json,
        "all_pass": all_pass,
    });
    if all_pass {
        Ok(Output::ok(lines, json))
    } else {
        Ok(Output::negative(lines, json))
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}
