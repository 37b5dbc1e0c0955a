//! Command implementations. Each returns its report text (and files to
//! write) so that tests can drive them without a process boundary.

use std::collections::BTreeMap;

use inscriber::builder::{
    build_bounded_degree, build_from_plan, build_from_tree, build_path, lift_delaunay, verify_inscribed, Build,
    BuildConfig, BuildError, BuildTrace, InscribedPolytope,
};
use inscriber::complex::{check_delaunay, ComplexError, DelaunayMode, Triangulation};
use inscriber::generators::{
    cyclic_spherical, cyclic_standard, cyclic_trig, fvector_families, steinitz_member, GeneratorError,
};
use inscriber::kernel::{
    format_scalar, int, parse_scalar, point_in_simplex, ratio, stereographic_project, Scalar, SimplexLocation,
};
use inscriber::obstruction::{
    angle_obstruction_2d, certify_tree, CertifyReport, ObstructionError, Spoke, TriangleConfig,
};
use inscriber::trees::{
    decide_inscribable, extract_dual_tree, unrooted_canonical, Buildability, Decision, DualTree, RootedPlan,
};
use serde::Serialize;
use serde_json::json;

use crate::args::Method;
use crate::formats::{to_json, InputFile};
use crate::{CliError, Result, Status};

/// Settings every command runs under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub scale: Scalar,
    pub halving_cap: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, scale: int(1), halving_cap: 256 }
    }
}

impl RunConfig {
    pub fn new(seed: u64, scale: &str, halving_cap: u32) -> Result<Self> {
        let scale = parse_scalar(scale).map_err(|e| CliError::Input(e.to_string()))?;
        if scale <= int(0) {
            return Err(CliError::Input("scale must be positive".into()));
        }
        Ok(RunConfig { seed, scale, halving_cap })
    }

    fn build_config(&self) -> BuildConfig {
        BuildConfig { scale: self.scale.clone(), halving_cap: self.halving_cap }
    }
}

/// Text for the terminal plus the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: Status,
    pub text: String,
}

fn build_error(e: BuildError) -> CliError {
    match e {
        BuildError::PlanNotBuildable(b) => {
            CliError::Negative(format!("plan is not buildable: {}", buildability_text(b)))
        }
        BuildError::BadDimension(_) | BuildError::BadScale | BuildError::NotALeaf(_) | BuildError::Tree(_) => {
            CliError::Input(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    }
}

fn buildability_text(b: Buildability) -> String {
    match b {
        Buildability::Ok => "ok".into(),
        Buildability::TooManyChildren { node } => format!("node {node} has more than two children"),
        Buildability::LabelOutOfRange { node } => format!("node {node} has a face label outside 0..d"),
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

pub fn decide(tree: &DualTree, json: bool) -> Report {
    let d = decide_inscribable(tree);
    let status = match d {
        Decision::Inscribable => Status::Affirmative,
        Decision::NotInscribable { .. } => Status::Negative,
    };
    let text = if json {
        to_json(&d)
    } else {
        match d {
            Decision::Inscribable => "inscribable\n".into(),
            Decision::NotInscribable { witness, degree } => {
                format!("not inscribable: node {witness} has degree {degree} > 3\n")
            }
        }
    };
    Report { status, text }
}

/// What to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildSource {
    Plan { plan: RootedPlan, d: usize },
    Tree { tree: DualTree, root: Option<usize>, d: usize },
    Path { n: usize, d: usize },
}

impl BuildSource {
    fn d(&self) -> usize {
        match self {
            BuildSource::Plan { d, .. } | BuildSource::Tree { d, .. } | BuildSource::Path { d, .. } => *d,
        }
    }

    /// Number of vertices of the resulting polytope.
    fn vertex_count(&self) -> usize {
        match self {
            BuildSource::Plan { plan, d } => d + 1 + plan.len(),
            BuildSource::Tree { tree, d, .. } => d + tree.len(),
            BuildSource::Path { n, d } => d + 1 + n,
        }
    }

    /// Dual tree the lifted polytope must have.
    fn expected_tree(&self) -> Result<DualTree> {
        Ok(match self {
            BuildSource::Tree { tree, .. } => tree.clone(),
            BuildSource::Plan { plan, .. } => with_north_leaf(&plan.to_tree().0)?,
            BuildSource::Path { n, .. } => DualTree::path(n + 1).map_err(internal)?,
        })
    }
}

/// `t` with one more node attached to node 0.
fn with_north_leaf(t: &DualTree) -> Result<DualTree> {
    let n = t.len();
    DualTree::new(n + 1, t.edges().into_iter().chain([(0, n)])).map_err(internal)
}

/// Verified build products. `triangulation` and `trace` are absent for the
/// planar (`d = 2`) special case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOutputs {
    pub triangulation: Option<Triangulation>,
    pub polytope: InscribedPolytope,
    pub trace: Option<BuildTrace>,
}

impl BuildOutputs {
    /// File names and contents.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(t) = &self.triangulation {
            out.push(("triangulation.json", to_json(t)));
        }
        out.push(("polytope.json", to_json(&self.polytope)));
        if let Some(tr) = &self.trace {
            out.push(("trace.json", to_json(tr)));
        }
        out
    }
}

/// Builds and runs every check: Delaunay modes 1 and 4, trace replay, the
/// inscribed polytope checks and the dual tree of the lift.
pub fn build(source: &BuildSource, cfg: &RunConfig) -> Result<BuildOutputs> {
    let d = source.d();
    if d < 2 {
        return Err(CliError::Input(format!("dimension {d} < 2")));
    }
    if let BuildSource::Plan { plan, d } = source {
        if let b @ (Buildability::TooManyChildren { .. } | Buildability::LabelOutOfRange { .. }) =
            inscriber::trees::plan_is_buildable(plan, *d)
        {
            return Err(CliError::Negative(format!("plan is not buildable: {}", buildability_text(b))));
        }
    }
    if let BuildSource::Tree { tree, .. } = source {
        if let Decision::NotInscribable { witness, degree } = decide_inscribable(tree) {
            return Err(CliError::Negative(format!("tree is not realizable: node {witness} has degree {degree} > 3")));
        }
    }
    if d == 2 {
        let p = build_bounded_degree(2, source.vertex_count() - 3, &cfg.build_config()).map_err(build_error)?;
        let report = verify_inscribed(&p);
        if !report.ok {
            return Err(internal(format!("polygon failed inscribed checks: {:?}", report.violations)));
        }
        return Ok(BuildOutputs { triangulation: None, polytope: p, trace: None });
    }
    let bc = cfg.build_config();
    let b: Build = match source {
        BuildSource::Plan { plan, d } => build_from_plan(plan, *d, &bc),
        BuildSource::Tree { tree, root, d } => build_from_tree(tree, *root, *d, &bc),
        BuildSource::Path { n, d } => build_path(*d, *n, &bc),
    }
    .map_err(build_error)?;
    verify_build(&b, &source.expected_tree()?)?;
    let polytope = b.lift().map_err(internal)?;
    Ok(BuildOutputs { triangulation: Some(b.triangulation), polytope, trace: Some(b.trace) })
}

fn verify_build(b: &Build, expected: &DualTree) -> Result<()> {
    for mode in [DelaunayMode::FacetsEmpty, DelaunayMode::InteriorRidgesLocal] {
        let r = check_delaunay(&b.triangulation, mode).map_err(internal)?;
        if !r.ok {
            return Err(internal(format!("mode {} violations {:?}", mode.number(), r.violations)));
        }
    }
    if b.trace.replay().map_err(internal)? != b.triangulation {
        return Err(internal("trace replay differs from the build"));
    }
    let p = b.lift().map_err(internal)?;
    let r = verify_inscribed(&p);
    if !r.ok {
        return Err(internal(format!("inscribed checks failed: {:?}", r.violations)));
    }
    let (tree, _) = extract_dual_tree(&p.facets, p.d).map_err(internal)?;
    if unrooted_canonical(&tree) != unrooted_canonical(expected) {
        return Err(internal("dual tree of the lift differs from the input"));
    }
    Ok(())
}

/// Resolves `build` arguments into a source.
pub fn build_source(
    input: Option<InputFile>,
    root: Option<usize>,
    path: Option<usize>,
    d: Option<usize>,
) -> Result<BuildSource> {
    let need_d = |d: Option<usize>| d.ok_or_else(|| CliError::Input("dimension not given (use --d)".into()));
    match (input, path) {
        (None, Some(n)) => Ok(BuildSource::Path { n, d: need_d(d)? }),
        (Some(InputFile::Plan(p)), None) => {
            if root.is_some() {
                return Err(CliError::Input("--root applies to tree input only".into()));
            }
            Ok(BuildSource::Plan { plan: p.plan, d: need_d(d.or(p.d))? })
        }
        (Some(InputFile::Tree(tree)), None) => Ok(BuildSource::Tree { tree, root, d: need_d(d)? }),
        (Some(other), None) => Err(CliError::Input(format!("cannot build from a {} file", other.kind()))),
        (None, None) => Err(CliError::Input("give a plan or tree file, or --path".into())),
        (Some(_), Some(_)) => Err(CliError::Input("--path takes no input file".into())),
    }
}

/// Verification target for `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Inscribed,
    Delaunay(DelaunayMode),
}

impl std::str::FromStr for VerifyMode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inscribed" {
            return Ok(VerifyMode::Inscribed);
        }
        s.strip_prefix("delaunay:")
            .and_then(|n| n.parse::<u8>().ok())
            .and_then(DelaunayMode::from_number)
            .map(VerifyMode::Delaunay)
            .ok_or_else(|| CliError::Input(format!("unknown mode {s:?}; use inscribed or delaunay:<1..4>")))
    }
}

#[derive(Debug, Clone, Serialize)]
struct SpokeFailure {
    edge: Spoke,
    vertices: [usize; 2],
}

/// Triangulation of the planar configuration: a triangle split at `x` with
/// the three resulting triangles split again. Returns the configuration and
/// the vertex ids of `A, B, C, x`.
fn triangle_configuration(t: &Triangulation) -> Option<(TriangleConfig, [usize; 4])> {
    if t.dim() != 2 || t.num_vertices() != 7 || t.num_facets() != 9 {
        return None;
    }
    let mut corners: Vec<usize> = t.boundary_ridges().flatten().copied().collect();
    corners.sort_unstable();
    corners.dedup();
    if corners.len() != 3 {
        return None;
    }
    let x = (0..7).find(|v| !corners.contains(v) && t.vertex_degree(*v).ok() == Some(6))?;
    let inner: Vec<usize> = (0..7).filter(|v| !corners.contains(v) && *v != x).collect();
    let p = |i: usize| t.vertex(i).clone();
    let mut placed = [None; 3];
    for &r in &inner {
        for k in 0..3 {
            let tri = [p(corners[(k + 1) % 3]), p(corners[(k + 2) % 3]), p(x)];
            if point_in_simplex(&tri, &p(r)).ok() == Some(SimplexLocation::Interior) {
                placed[k] = Some(r);
            }
        }
    }
    let [Some(a), Some(b), Some(c)] = placed else { return None };
    let cfg =
        TriangleConfig { corners: [p(corners[0]), p(corners[1]), p(corners[2])], x: p(x), inner: [p(a), p(b), p(c)] };
    Some((cfg, [corners[0], corners[1], corners[2], x]))
}

fn delaunay_report(t: &Triangulation, mode: DelaunayMode, json: bool) -> Result<Report> {
    let r = check_delaunay(t, mode).map_err(internal)?;
    let mut spokes = Vec::new();
    if !r.ok {
        if let Some((cfg, ids)) = triangle_configuration(t) {
            if let Ok(o) = angle_obstruction_2d(&cfg) {
                for e in o.failing {
                    let corner = match e {
                        Spoke::Ax => ids[0],
                        Spoke::Bx => ids[1],
                        Spoke::Cx => ids[2],
                    };
                    spokes.push(SpokeFailure { edge: e, vertices: [corner, ids[3]] });
                }
            }
        }
    }
    let status = if r.ok { Status::Affirmative } else { Status::Negative };
    let text = if json {
        to_json(&json!({ "mode": mode.number(), "ok": r.ok, "violations": r.violations, "failing_spokes": spokes }))
    } else {
        let mut s = format!("delaunay mode {}: {}\n", mode.number(), if r.ok { "ok" } else { "violated" });
        for v in &r.violations {
            s.push_str(&format!("  face {:?} witness vertex {}\n", v.face, v.witness));
        }
        for f in &spokes {
            s.push_str(&format!("  failing edge {:?} = {:?}\n", f.edge, f.vertices));
        }
        s
    };
    Ok(Report { status, text })
}

fn inscribed_report(p: &InscribedPolytope, json: bool) -> Report {
    let r = verify_inscribed(p);
    let status = if r.ok { Status::Affirmative } else { Status::Negative };
    let text = if json {
        to_json(&r)
    } else {
        let mut s = format!("inscribed: {}\n", if r.ok { "ok" } else { "violated" });
        for v in &r.violations {
            s.push_str(&format!("  {v:?}\n"));
        }
        s
    };
    Report { status, text }
}

/// Triangulation seen from the north pole: the stereographic images of the
/// other vertices with the facets avoiding the pole.
pub fn project_from_north(p: &InscribedPolytope) -> Result<Triangulation> {
    if p.d < 3 {
        return Err(CliError::Input("delaunay modes need d >= 3".into()));
    }
    let mut index = BTreeMap::new();
    let mut vertices = Vec::new();
    for (i, v) in p.vertices.iter().enumerate() {
        if i != p.north {
            let q = stereographic_project(v).map_err(|e| CliError::Negative(format!("vertex {i}: {e}")))?;
            index.insert(i, vertices.len());
            vertices.push(q);
        }
    }
    let facets =
        p.facets.iter().filter(|f| !f.contains(&p.north)).map(|f| f.iter().map(|v| index[v]).collect()).collect();
    Triangulation::new(p.d - 1, vertices, facets)
        .map_err(|e: ComplexError| CliError::Negative(format!("projection is not a triangulation: {e}")))
}

pub fn verify(input: &InputFile, mode: Option<VerifyMode>, json: bool) -> Result<Report> {
    match (input, mode) {
        (InputFile::Polytope(p), None | Some(VerifyMode::Inscribed)) => Ok(inscribed_report(p, json)),
        (InputFile::Polytope(p), Some(VerifyMode::Delaunay(m))) => {
            if !verify_inscribed(p).ok {
                return Ok(inscribed_report(p, json));
            }
            delaunay_report(&project_from_north(p)?, m, json)
        }
        (InputFile::Triangulation(t), None) => delaunay_report(t, DelaunayMode::FacetsEmpty, json),
        (InputFile::Triangulation(t), Some(VerifyMode::Delaunay(m))) => delaunay_report(t, m, json),
        (InputFile::Triangulation(t), Some(VerifyMode::Inscribed)) => match lift_delaunay(t) {
            Ok(p) => Ok(inscribed_report(&p, json)),
            Err(BuildError::NotDelaunay) => delaunay_report(t, DelaunayMode::FacetsEmpty, json),
            Err(e) => Err(CliError::Negative(format!("cannot lift: {e}"))),
        },
        (other, _) => Err(CliError::Input(format!("cannot verify a {} file", other.kind()))),
    }
}

fn generator_error(e: GeneratorError) -> CliError {
    match e {
        GeneratorError::BadParameters(_) | GeneratorError::NonDistinctParams | GeneratorError::OddDimension(_) => {
            CliError::Input(e.to_string())
        }
        other => internal(other),
    }
}

fn parse_params(raw: &[String]) -> Result<Vec<Scalar>> {
    raw.iter().map(|s| parse_scalar(s).map_err(|e| CliError::Input(e.to_string()))).collect()
}

/// Default half-angle tangents: `n` evenly spaced values in `(-1, 1)`.
fn default_half_tangents(n: usize) -> Vec<Scalar> {
    (0..n as i64).map(|i| ratio(2 * i + 1 - n as i64, n as i64)).collect()
}

/// A cyclic polytope, its curve parameters, and a verified inscribed check.
pub fn cyclic(
    method: Method,
    d: usize,
    n: usize,
    params: Option<&[String]>,
) -> Result<(InscribedPolytope, Vec<Scalar>)> {
    let given = params.map(parse_params).transpose()?;
    if let Some(g) = &given {
        if g.len() != n {
            return Err(CliError::Input(format!("{} parameters given for n = {n}", g.len())));
        }
    }
    let (p, params) = match method {
        Method::Standard => {
            if given.is_some() {
                return Err(CliError::Input("the standard curve chooses its own parameters".into()));
            }
            cyclic_standard(d, n).map_err(generator_error)?
        }
        Method::Spherical => {
            let ps = given.unwrap_or_else(|| (1..=n as i64).map(int).collect());
            (cyclic_spherical(d, &ps).map_err(generator_error)?, ps)
        }
        Method::Trig => {
            let ps = given.unwrap_or_else(|| default_half_tangents(n));
            (cyclic_trig(d, &ps).map_err(generator_error)?, ps)
        }
    };
    let r = verify_inscribed(&p);
    if !r.ok {
        return Err(internal(format!("generated polytope failed inscribed checks: {:?}", r.violations)));
    }
    Ok((p, params))
}

pub fn cyclic_summary(method: Method, p: &InscribedPolytope, params: &[Scalar]) -> String {
    let ps: Vec<String> = params.iter().map(format_scalar).collect();
    format!(
        "cyclic polytope ({method:?}): d = {}, {} vertices, {} facets (Gale evenness verified)\nparameters: {}\n",
        p.d,
        p.vertices.len(),
        p.facets.len(),
        ps.join(", ")
    )
}

/// f-vector rows, each checked against the Steinitz inequalities.
pub fn fvectors(f0_max: u64) -> Result<Vec<inscriber::generators::FamilyVector>> {
    if f0_max < 4 {
        return Err(CliError::Input("--f0-max must be at least 4".into()));
    }
    let rows = fvector_families(f0_max);
    if let Some(r) = rows.iter().find(|r| !steinitz_member(r.f.f0, r.f.f2) || !r.f.satisfies_euler()) {
        return Err(internal(format!("family member {:?} is not a 3-polytope f-vector", r.f)));
    }
    Ok(rows)
}

pub fn certify(tree: &DualTree, d: usize, trials: usize, seed: u64) -> Result<CertifyReport> {
    let r = certify_tree(tree, d, trials, seed).map_err(|e| match e {
        ObstructionError::NotObstructed(deg) => {
            CliError::Negative(format!("tree has maximum degree {deg}; nothing to certify"))
        }
        ObstructionError::BadInput(m) => CliError::Input(m),
        other => internal(other),
    })?;
    if !r.all_violated {
        return Err(internal(format!("{} of {} trials showed no violation", r.trials - r.violated_trials, r.trials)));
    }
    Ok(r)
}

pub fn certify_summary(r: &CertifyReport) -> String {
    let (node, deg) = r.witness.unwrap_or((0, 0));
    let pipeline = r.reports.iter().filter(|t| t.pipeline.is_some()).count();
    let mut s = format!(
        "node {node} has degree {deg}: {} of {} trials at d = {} violate the Delaunay condition (seed {})\n",
        r.violated_trials, r.trials, r.d, r.seed
    );
    if r.d > 3 {
        s.push_str(&format!("inversion pipeline found a planar obstruction in {pipeline} trials\n"));
    }
    s
}
