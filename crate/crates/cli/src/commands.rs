use std::path::Path;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use semiample::coxring::{CoxRing, Nondegeneracy};
use semiample::divisor::TorusInvariantDivisor;
use semiample::fan::Fan;
use semiample::hodge::{self, HodgeReport, HodgeValue};
use semiample::residue::{admissible_index_sets, degree_volume, toric_jacobian, toric_jacobian_with, toric_residue, TraceForm};
use semiample::threefold::{BlockKind, H3Block, SemiampleThreefold};
use semiample::Error;

use crate::wire::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error(transparent)]
    Math(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Schema { .. } | CliError::UnknownCommand(_) => 1,
            CliError::Math(Error::Validation(_)) => 1,
            CliError::Math(_) => 2,
        }
    }

    pub fn report(&self) -> Value {
        let (kind, anchor) = match self {
            CliError::Io(_) => ("io", None),
            CliError::Schema { .. } => ("schema", None),
            CliError::UnknownCommand(_) => ("usage", None),
            CliError::Math(Error::Validation(_)) => ("validation", None),
            CliError::Math(Error::Precondition { anchor, .. }) => ("precondition", Some(*anchor)),
            CliError::Math(_) => ("precondition", None),
        };
        let mut err = serde_json::json!({ "kind": kind, "message": self.to_string(), "exit": self.exit_code() });
        if let CliError::Schema { path, .. } = self {
            err["path"] = Value::String(path.clone());
        }
        serde_json::json!({ "error": err, "paper_anchor": anchor })
    }
}

/// The thirteen subcommands, by their two-word names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    FanCheck,
    DivisorAnalyze,
    DivisorSigmaD,
    DivisorNakai,
    DivisorStratify,
    RingDims,
    ResidueEval,
    CupPair,
    ThreefoldH3,
    HodgeHp2,
    HodgeH21,
    MirrorCheck,
    CorpusRun,
}

impl Command {
    pub const ALL: [(&'static str, Command); 13] = [
        ("fan check", Command::FanCheck),
        ("divisor analyze", Command::DivisorAnalyze),
        ("divisor sigma-d", Command::DivisorSigmaD),
        ("divisor nakai", Command::DivisorNakai),
        ("divisor stratify", Command::DivisorStratify),
        ("ring dims", Command::RingDims),
        ("residue eval", Command::ResidueEval),
        ("cup pair", Command::CupPair),
        ("threefold h3", Command::ThreefoldH3),
        ("hodge h-p2", Command::HodgeHp2),
        ("hodge h21", Command::HodgeH21),
        ("mirror check", Command::MirrorCheck),
        ("corpus run", Command::CorpusRun),
    ];

    pub fn parse(words: &str) -> Result<Command, CliError> {
        let norm = words.split_whitespace().collect::<Vec<_>>().join(" ");
        Self::ALL.iter().find(|(n, _)| *n == norm).map(|(_, c)| *c).ok_or(CliError::UnknownCommand(norm))
    }

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, c)| *c == self).map(|(n, _)| *n).unwrap_or("?")
    }
}

pub struct Options<'a> {
    pub verify: bool,
    /// Directory that relative paths inside the input resolve against.
    pub base: &'a Path,
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn to_json<T: Serialize>(anchor: &str, command: Command, body: T) -> Value {
    let mut v = serde_json::to_value(body).expect("report serializes");
    v["paper_anchor"] = Value::String(anchor.to_string());
    v["command"] = Value::String(command.name().to_string());
    v
}

pub fn run(command: Command, text: &str, opts: &Options) -> Result<Value, CliError> {
    match command {
        Command::FanCheck => fan_check(text),
        Command::DivisorAnalyze => divisor_analyze(text, opts),
        Command::DivisorSigmaD => divisor_sigma_d(text, opts),
        Command::DivisorNakai => divisor_nakai(text, opts),
        Command::DivisorStratify => divisor_stratify(text),
        Command::RingDims => ring_dims(text),
        Command::ResidueEval => residue_eval(text, opts),
        Command::CupPair => cup_pair(text),
        Command::ThreefoldH3 => threefold_h3(text),
        Command::HodgeHp2 => hodge_hp2(text, opts),
        Command::HodgeH21 => hodge_h21(text),
        Command::MirrorCheck => mirror_check(text),
        Command::CorpusRun => corpus_run(text, opts),
    }
}

fn fan_check(text: &str) -> Result<Value, CliError> {
    let fan = parse::<FanDoc>(text)?.build()?;
    let diag = fan.validate();
    #[derive(Serialize)]
    struct Report {
        valid: bool,
        complete: bool,
        simplicial: bool,
        violations: Vec<String>,
        dim: usize,
        rays: usize,
        max_cones: usize,
    }
    Ok(to_json(
        "fan axioms for a complete simplicial fan",
        Command::FanCheck,
        Report {
            valid: diag.is_valid(),
            complete: diag.complete,
            simplicial: diag.simplicial,
            violations: diag.violations,
            dim: fan.dim(),
            rays: fan.rays().len(),
            max_cones: fan.max_cones().len(),
        },
    ))
}

/// The base fan and, when requested, its refinement.
struct DivisorInput {
    base: Fan,
    target: Option<Fan>,
    coeffs: Vec<semiample::Int>,
}

impl DivisorInput {
    fn read(text: &str) -> Result<Self, CliError> {
        let doc: DivisorDoc = parse(text)?;
        let base = doc.fan.build()?;
        let target = doc.pullback_to.as_ref().map(FanDoc::build).transpose()?;
        let coeffs = doc.coeffs.iter().map(Num::int).collect::<Result<_, _>>()?;
        for f in std::iter::once(&base).chain(&target) {
            let diag = f.validate();
            if !diag.is_valid() {
                return Err(Error::validation(format!("invalid fan: {}", diag.violations.join("; "))).into());
            }
        }
        Ok(DivisorInput { base, target, coeffs })
    }

    fn with_divisor<T>(&self, f: impl FnOnce(&TorusInvariantDivisor) -> Result<T, CliError>) -> Result<T, CliError> {
        let d = TorusInvariantDivisor::new(&self.base, self.coeffs.clone())?;
        match &self.target {
            None => f(&d),
            Some(fine) => f(&d.pullback(fine)?),
        }
    }
}

fn divisor_analyze(text: &str, opts: &Options) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct Report {
        coeffs: Vec<String>,
        cartier: bool,
        globally_generated: Option<bool>,
        ample: Option<bool>,
        semiample: Option<bool>,
        polytope_vertices: Option<Vec<Vec<String>>>,
        top_self_intersection: Option<String>,
        verified: Option<bool>,
    }
    let input = DivisorInput::read(text)?;
    input.with_divisor(|d| {
        let cartier = d.is_cartier()?;
        let mut r = Report {
            coeffs: int_vec(d.coeffs()),
            cartier,
            globally_generated: None,
            ample: None,
            semiample: None,
            polytope_vertices: None,
            top_self_intersection: None,
            verified: None,
        };
        if cartier {
            let gg = d.is_globally_generated()?;
            r.globally_generated = Some(gg);
            r.ample = Some(d.is_ample()?);
            r.semiample = Some(d.is_semiample()?);
            let p = d.section_polytope()?;
            r.polytope_vertices = Some(p.vertices().iter().map(|v| rat_vec(v)).collect());
            if gg {
                let top = d.top_self_intersection()?;
                if opts.verify {
                    let expected = if p.is_full_dimensional() { p.normalized_volume() } else { semiample::Rat::from_integer(0.into()) };
                    r.verified = Some(top == expected);
                }
                r.top_self_intersection = Some(rat_str(&top));
            }
        }
        Ok(to_json("convexity of the support function and the section polytope", Command::DivisorAnalyze, r))
    })
}

fn divisor_sigma_d(text: &str, opts: &Options) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct Report {
        fan: FanOut,
        ray_indices: Vec<usize>,
        classes: Vec<Vec<usize>>,
        m: Vec<Vec<String>>,
        constructions_compared: usize,
    }
    let input = DivisorInput::read(text)?;
    input.with_divisor(|d| {
        // sigma_d compares the support-function, wall and normal-fan constructions
        let (sd, compared) = if opts.verify { (d.sigma_d()?, 3) } else { (d.sigma_d_by_support()?, 1) };
        Ok(to_json(
            "coarsened fan of a semiample divisor",
            Command::DivisorSigmaD,
            Report {
                fan: FanOut::from(&sd.fan),
                ray_indices: sd.ray_indices.clone(),
                classes: sd.classes.clone(),
                m: sd.m.iter().map(|v| int_vec(v.coords())).collect(),
                constructions_compared: compared,
            },
        ))
    })
}

fn divisor_nakai(text: &str, opts: &Options) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct Wall {
        wall: ConeOut,
        cones: (usize, usize),
        value: String,
    }
    #[derive(Serialize)]
    struct Report {
        nakai_globally_generated: bool,
        nakai_ample: bool,
        walls: Vec<Wall>,
        agrees_with_convexity: Option<bool>,
    }
    let input = DivisorInput::read(text)?;
    input.with_divisor(|d| {
        let gg = d.nakai_globally_generated()?;
        let ample = d.nakai_ample()?;
        let walls = d
            .wall_intersections()?
            .iter()
            .map(|w| Wall { wall: ConeOut::from(&w.wall), cones: w.cones, value: int_str(&w.value) })
            .collect();
        let agrees = if opts.verify {
            Some(gg == d.is_globally_generated()? && ample == d.is_strictly_convex()?)
        } else {
            None
        };
        Ok(to_json(
            "toric Nakai criterion",
            Command::DivisorNakai,
            Report { nakai_globally_generated: gg, nakai_ample: ample, walls, agrees_with_convexity: agrees },
        ))
    })
}

fn divisor_stratify(text: &str) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct Stratum {
        cone: ConeOut,
        container: ConeOut,
        torus_factor_dim: usize,
    }
    let input = DivisorInput::read(text)?;
    input.with_divisor(|d| {
        let strata: Vec<Stratum> = d
            .stratify()?
            .iter()
            .map(|s| Stratum {
                cone: ConeOut::from(&s.cone),
                container: ConeOut::from(&s.container),
                torus_factor_dim: s.torus_factor_dim,
            })
            .collect();
        Ok(to_json(
            "orbit stratification of a semiample hypersurface",
            Command::DivisorStratify,
            serde_json::json!({ "strata": strata }),
        ))
    })
}

struct Hypersurface {
    ring: CoxRing,
    doc: HypersurfaceDoc,
}

impl Hypersurface {
    fn read(text: &str) -> Result<Self, CliError> {
        let doc: HypersurfaceDoc = parse(text)?;
        let fan = doc.fan.build()?;
        Ok(Hypersurface { ring: CoxRing::new(&fan)?, doc })
    }
}

fn certificate(n: Nondegeneracy) -> &'static str {
    match n {
        Nondegeneracy::CertifiedNondegenerate => "certified",
        Nondegeneracy::Inconclusive => "inconclusive",
    }
}

fn ring_dims(text: &str) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct Level {
        level: usize,
        degree_rep: Vec<String>,
        r: usize,
        r0: usize,
        r1: usize,
    }
    let h = Hypersurface::read(text)?;
    let ring = &h.ring;
    let f = h.doc.f.build(ring)?;
    let levels = (0..ring.dim())
        .map(|a| {
            let deg = ring.combine(&[(a as i64 + 1, &f.degree), (-1, &ring.beta0())]);
            Ok(Level {
                level: a,
                degree_rep: int_vec(deg.representative()),
                r: ring.r_dim(&f, &deg)?,
                r0: ring.r0_dim(&f, &deg)?,
                r1: ring.r1_dim(&f, &deg)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let interior = ring.polytope(&f.degree)?.relative_interior_points().len();
    Ok(to_json(
        "graded pieces of the Jacobian rings R, R_0 and R_1",
        Command::RingDims,
        serde_json::json!({
            "degree_rep": int_vec(f.degree.representative()),
            "nondegeneracy": certificate(ring.nondegeneracy_certificate(&f)?),
            "levels": levels,
            "interior_lattice_points": interior,
        }),
    ))
}

fn residue_eval(text: &str, opts: &Options) -> Result<Value, CliError> {
    let doc: ResidueDoc = parse(text)?;
    let fan = doc.fan.build()?;
    let ring = CoxRing::new(&fan)?;
    let system = doc.system.iter().map(|p| p.build(&ring)).collect::<Result<Vec<_>, _>>()?;
    if system.len() != ring.dim() + 1 {
        return Err(Error::validation(format!("system needs {} polynomials", ring.dim() + 1)).into());
    }
    let numerator = match &doc.numerator {
        Some(p) => p.build(&ring)?,
        None => toric_jacobian(&ring, &system)?,
    };
    let value = toric_residue(&ring, &system, &numerator)?;
    let beta = &system[0].degree;
    let volume = degree_volume(&ring, beta)?;
    let verified = if opts.verify && doc.numerator.is_none() {
        // every admissible index set gives the same class of J_F
        let mut ok = value == volume;
        for index in admissible_index_sets(&ring, beta) {
            let j = toric_jacobian_with(&ring, &system, &index)?;
            ok &= toric_residue(&ring, &system, &j)? == volume;
        }
        Some(ok)
    } else {
        None
    };
    Ok(to_json(
        "toric residue normalized by Res(J_F) = d!vol",
        Command::ResidueEval,
        serde_json::json!({
            "value": rat_str(&value),
            "normalized_volume": rat_str(&volume),
            "numerator": PolyOut::from(&numerator),
            "verified": verified,
        }),
    ))
}

fn cup_pair(text: &str) -> Result<Value, CliError> {
    let doc: CupDoc = parse(text)?;
    let fan = doc.fan.build()?;
    let ring = CoxRing::new(&fan)?;
    let f = doc.f.build(&ring)?;
    let tf = TraceForm::new(&ring, &f)?;
    let anchor = "cup product as a trace against the cup-Jacobian";
    match (&doc.left, &doc.right) {
        (Some(l), Some(r)) => {
            let v = tf.cup_pair(&l.build(&ring)?, doc.a, &r.build(&ring)?, doc.b)?;
            Ok(to_json(anchor, Command::CupPair, serde_json::json!({ "a": doc.a, "b": doc.b, "value": PairingOut::from(&v) })))
        }
        (None, None) => {
            let basis = |a| -> Result<Vec<PolyOut>, Error> { Ok(tf.r1_basis(a)?.iter().map(PolyOut::from).collect()) };
            let g = tf.gram(doc.a, doc.b)?;
            let exponent = ring.dim() as u32;
            let entries: Vec<Vec<PairingOut>> = g
                .iter()
                .map(|row| row.iter().map(|r| PairingOut { rational: rat_str(r), two_pi_i_exponent: exponent }).collect())
                .collect();
            Ok(to_json(
                anchor,
                Command::CupPair,
                serde_json::json!({
                    "a": doc.a,
                    "b": doc.b,
                    "row_basis": basis(doc.a)?,
                    "col_basis": basis(doc.b)?,
                    "gram": entries,
                }),
            ))
        }
        _ => Err(Error::validation("give both \"left\" and \"right\", or neither for the full Gram matrix").into()),
    }
}

#[derive(Serialize)]
struct BlockOut {
    level: usize,
    kind: &'static str,
    chart: Option<usize>,
    ray: Option<usize>,
    degree_rep: Vec<String>,
    dim: usize,
    basis: Vec<Vec<u32>>,
}

impl From<&H3Block> for BlockOut {
    fn from(b: &H3Block) -> Self {
        let (kind, chart, ray) = match b.kind {
            BlockKind::R1 => ("R1", None, None),
            BlockKind::L { chart, ray } => ("L", Some(chart), Some(ray)),
        };
        BlockOut {
            level: b.level,
            kind,
            chart,
            ray,
            degree_rep: int_vec(b.degree.representative()),
            dim: b.dim(),
            basis: b.basis.clone(),
        }
    }
}

fn threefold_h3(text: &str) -> Result<Value, CliError> {
    let h = Hypersurface::read(text)?;
    let f = h.doc.f.build(&h.ring)?;
    let x = SemiampleThreefold::new(&h.ring, &f)?;
    let blocks: Vec<Vec<BlockOut>> = x.h3_decomposition()?.iter().map(|l| l.iter().map(BlockOut::from).collect()).collect();
    let grams = (0..=3)
        .map(|a| {
            let g = x.gram(a)?;
            let entries: Vec<Vec<PairingOut>> = g.entries.iter().map(|r| r.iter().map(PairingOut::from).collect()).collect();
            Ok(serde_json::json!({ "a": a, "b": 3 - a, "entries": entries }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let charts: Vec<Value> = x
        .charts()
        .iter()
        .map(|c| {
            serde_json::json!({
                "sigma": ConeOut::from(&c.sigma),
                "interior_rays": c.interior.iter().map(|r| r.ray).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(to_json(
        "H^3 decomposition and cup product for semiample threefolds",
        Command::ThreefoldH3,
        serde_json::json!({
            "hodge_numbers": x.hodge_numbers()?,
            "sigma_x": FanOut::from(x.sigma_x()),
            "charts": charts,
            "blocks": blocks,
            "gram": grams,
        }),
    ))
}

fn hodge_value_json(v: &HodgeValue) -> Value {
    let (i, j) = v.indices();
    serde_json::json!({
        "p": v.p,
        "d": v.d,
        "indices": [i, j],
        "value": int_str(&v.value),
        "terms": v.terms.iter().map(|t| serde_json::json!({
            "face_vertices": t.face.vertices,
            "face_dim": t.face.dim,
            "cone_dim": t.cone_dim,
            "contribution": int_str(&t.contribution),
        })).collect::<Vec<_>>(),
    })
}

fn hodge_hp2(text: &str, opts: &Options) -> Result<Value, CliError> {
    let doc: HodgeDoc = parse(text)?;
    let delta = doc.polytope.build()?;
    let (value, source) = match &doc.fan {
        Some(f) => (hodge::h_p2(&delta, &f.build()?, doc.p)?, "explicit fan"),
        None => (hodge::h_p2_with_counts(&delta, &hodge::mpcp_counts(&delta)?, doc.p)?, "MPCP counts"),
    };
    let verified = if opts.verify && doc.fan.is_none() {
        let helper = hodge::triangulation_helper(&delta.dual_polytope()?)?;
        Some(hodge::h_p2(&delta, &helper, doc.p)?.value == value.value)
    } else {
        None
    };
    let mut v = hodge_value_json(&value);
    v["subdivision"] = Value::String(source.to_string());
    v["verified"] = serde_json::json!(verified);
    Ok(to_json("h^{p,2} from e-numbers of faces and subdivision counts", Command::HodgeHp2, v))
}

fn hodge_h21(text: &str) -> Result<Value, CliError> {
    let doc: HodgeDoc = parse(text)?;
    let delta = doc.polytope.build()?;
    let v = hodge::h21_batyrev(&delta)?;
    Ok(to_json(
        "Batyrev h^{2,1} formula",
        Command::HodgeH21,
        serde_json::json!({ "value": int_str(&v), "lattice_points": delta.lattice_points().len() }),
    ))
}

fn side_json(r: &HodgeReport) -> Value {
    let pts = |v: &[semiample::lattice::LatticeVector]| v.iter().map(|p| int_vec(p.coords())).collect::<Vec<_>>();
    serde_json::json!({
        "name": r.name,
        "value": int_str(&r.value),
        "a2_exact": r.a2_exact,
        "lattice_points": r.lattice_points,
        "witnesses": r.witnesses.iter().map(|w| serde_json::json!({
            "face_vertices": w.face_vertices.iter().map(|v| rat_vec(v)).collect::<Vec<_>>(),
            "dual_face_vertices": w.dual_face_vertices.iter().map(|v| rat_vec(v)).collect::<Vec<_>>(),
            "double_interior": pts(&w.double_interior),
            "dual_interior": pts(&w.dual_interior),
            "contribution": int_str(&w.contribution),
        })).collect::<Vec<_>>(),
    })
}

fn mirror_check(text: &str) -> Result<Value, CliError> {
    let doc: HodgeDoc = parse(text)?;
    let delta = doc.polytope.build()?;
    let r = hodge::mirror_check(&delta, doc.p)?;
    Ok(to_json(
        "mirror comparison of h^{p,2} for Δ and Δ*",
        Command::MirrorCheck,
        serde_json::json!({
            "d": r.d,
            "p": r.p,
            "dual_has_only_vertices_and_origin": r.dual_has_only_vertices_and_origin,
            "values_differ": r.values_differ(),
            "delta": side_json(&r.delta),
            "dual": side_json(&r.dual),
        }),
    ))
}

/// `expect` matches when each of its keys is present with an equal value;
/// nested objects are compared the same way.
fn matches(report: &Value, expect: &serde_json::Map<String, Value>) -> Vec<String> {
    let mut out = Vec::new();
    for (k, want) in expect {
        match (report.get(k), want) {
            (Some(got @ Value::Object(_)), Value::Object(sub)) => {
                out.extend(matches(got, sub).into_iter().map(|m| format!("{k}.{m}")));
            }
            (Some(got), _) if got == want => {}
            (got, _) => out.push(format!("{k}: expected {want}, got {}", got.unwrap_or(&Value::Null))),
        }
    }
    out
}

fn corpus_run(text: &str, opts: &Options) -> Result<Value, CliError> {
    #[derive(Serialize)]
    struct CaseResult {
        name: String,
        command: String,
        exit: i32,
        passed: bool,
        mismatches: Vec<String>,
    }
    let doc: CorpusDoc = parse(text)?;
    let results: Vec<CaseResult> = doc
        .cases
        .par_iter()
        .map(|case| {
            let outcome = Command::parse(&case.command).and_then(|c| {
                if c == Command::CorpusRun {
                    return Err(CliError::UnknownCommand("corpus run inside a corpus".into()));
                }
                let path = opts.base.join(&case.input);
                let input = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                let base = path.parent().unwrap_or(opts.base);
                run(c, &input, &Options { verify: opts.verify, base })
            });
            let (exit, report) = match outcome {
                Ok(v) => (0, v),
                Err(e) => (e.exit_code(), e.report()),
            };
            let mut mismatches = matches(&report, &case.expect);
            if exit != case.exit {
                mismatches.push(format!("exit: expected {}, got {exit}", case.exit));
            }
            CaseResult {
                name: case.name.clone(),
                command: case.command.clone(),
                exit,
                passed: mismatches.is_empty(),
                mismatches,
            }
        })
        .collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    Ok(to_json(
        "regression corpus",
        Command::CorpusRun,
        serde_json::json!({ "cases": results.len(), "failed": failed, "results": results }),
    ))
}
