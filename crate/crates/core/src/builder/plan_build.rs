use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expand::{all_spheres, barycenter};
use super::{
    expand_at, init_root, initial_simplex, lift_to_inscribed, BuildConfig, BuildError, InscribedPolytope, Result,
};
use crate::complex::{stellar_subdivide, Facet, Triangulation};
use crate::kernel::{
    int, inverse_stereographic, north_pole, point_in_simplex, ratio, serde_scalar_opt, sphere_side, Line, Point,
    Scalar, SimplexLocation, SphereSide,
};
use crate::trees::{plan_is_buildable, root_plan, Buildability, ChildEdge, DualTree, RootedPlan};

/// One inserted vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStep {
    /// Plan node realized by this vertex.
    pub node: usize,
    pub vertex: usize,
    /// Vertex whose expansion created this one; `None` for the first step.
    pub parent_vertex: Option<usize>,
    /// Which simplex created at the parent was subdivided.
    pub label: Option<usize>,
    pub subdivided: Facet,
    pub point: Point,
    /// Line along which the point was searched.
    pub line: Option<Line>,
    #[serde(with = "serde_scalar_opt")]
    pub lambda: Option<Scalar>,
    /// Largest denominator bit length among the point's coordinates.
    pub denominator_bits: u64,
}

/// Everything needed to replay a build with plain stellar subdivisions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildTrace {
    pub d: usize,
    pub initial: Triangulation,
    pub steps: Vec<BuildStep>,
}

impl BuildTrace {
    /// Applies the recorded subdivisions to the initial simplex.
    pub fn replay(&self) -> Result<Triangulation> {
        let mut t = self.initial.clone();
        for s in &self.steps {
            if s.vertex != t.num_vertices() {
                return Err(BuildError::BadFaces(vec![s.subdivided.clone()]));
            }
            t = stellar_subdivide(&t, &s.subdivided, s.point.clone())?;
        }
        Ok(t)
    }

    /// Rooted subdivision tree read off the steps alone: the parent of a step
    /// is the step that inserted the newest vertex of the facet it subdivides,
    /// and the label is the position of the parent's facet vertex that the
    /// subdivided facet misses. Node `i` is step `i`.
    pub fn rooted_plan(&self) -> Result<RootedPlan> {
        let first_inserted = self.initial.num_vertices();
        let by_vertex: BTreeMap<usize, usize> = self.steps.iter().enumerate().map(|(i, s)| (s.vertex, i)).collect();
        let mut children: BTreeMap<usize, Vec<ChildEdge>> = BTreeMap::new();
        for (i, s) in self.steps.iter().enumerate().skip(1) {
            let newest = *s.subdivided.iter().max().expect("facets are nonempty");
            if newest < first_inserted {
                return Err(BuildError::BadFaces(vec![s.subdivided.clone()]));
            }
            let p = by_vertex[&newest];
            let parent = &self.steps[p].subdivided;
            let label = parent.iter().position(|v| !s.subdivided.contains(v));
            children.entry(p).or_default().push(ChildEdge { node: i, face: label });
        }
        Ok(RootedPlan::new(0, children)?)
    }
}

/// A realized plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Build {
    pub triangulation: Triangulation,
    pub trace: BuildTrace,
    /// Plan node to inserted vertex.
    pub node_vertex: BTreeMap<usize, usize>,
    /// Tree node whose simplex carries the north pole after lifting, when
    /// built from a tree.
    pub north_node: Option<usize>,
}

impl Build {
    pub fn lift(&self) -> Result<InscribedPolytope> {
        lift_to_inscribed(&self.triangulation)
    }
}

fn bits(p: &Point) -> u64 {
    p.coords().iter().map(|x| x.denom().bits()).max().unwrap_or(0)
}

/// Created facet `label` of a subdivision of `subdivided` by `vertex`: the
/// facet missing the `label`-th vertex of `subdivided`.
fn created_facet(subdivided: &[usize], label: usize, vertex: usize) -> Facet {
    let mut f: Facet = subdivided.iter().enumerate().filter(|&(i, _)| i != label).map(|(_, &v)| v).collect();
    f.push(vertex);
    f.sort_unstable();
    f
}

/// Labels for a node's children: explicit labels are kept, the others get
/// the smallest unused labels in order.
fn assign_labels(children: &[ChildEdge]) -> Vec<usize> {
    let used: Vec<usize> = children.iter().filter_map(|c| c.face).collect();
    let mut free = (0..).filter(|l| !used.contains(l));
    children.iter().map(|c| c.face.unwrap_or_else(|| free.next().expect("infinite"))).collect()
}

/// Realizes a buildable plan, depth first: the root is the barycenter of the
/// initial simplex, and every node with children expands its vertex on the
/// labeled facets in a single step.
pub fn build_from_plan(plan: &RootedPlan, d: usize, cfg: &BuildConfig) -> Result<Build> {
    match plan_is_buildable(plan, d) {
        Buildability::Ok => {}
        b => return Err(BuildError::PlanNotBuildable(b)),
    }
    let initial = initial_simplex(d, &cfg.scale)?;
    let mut t = init_root(d, &cfg.scale)?;
    let root_facet: Facet = (0..d).collect();
    let root_vertex = d;
    let mut steps = vec![BuildStep {
        node: plan.root(),
        vertex: root_vertex,
        parent_vertex: None,
        label: None,
        subdivided: root_facet.clone(),
        point: t.vertex(root_vertex).clone(),
        line: None,
        lambda: None,
        denominator_bits: bits(t.vertex(root_vertex)),
    }];
    let mut node_vertex = BTreeMap::from([(plan.root(), root_vertex)]);
    let mut subdivided = BTreeMap::from([(plan.root(), root_facet)]);
    let mut stack = vec![plan.root()];
    while let Some(v) = stack.pop() {
        let children = plan.children(v);
        if children.is_empty() {
            continue;
        }
        let c = node_vertex[&v];
        let labels = assign_labels(children);
        let faces: Vec<Facet> = labels.iter().map(|&l| created_facet(&subdivided[&v], l, c)).collect();
        let e = expand_at(&t, c, &faces, cfg)?;
        let points = [&e.choice.x1, &e.choice.x2];
        for (i, child) in children.iter().enumerate() {
            let vertex = e.new_vertices[i];
            node_vertex.insert(child.node, vertex);
            subdivided.insert(child.node, faces[i].clone());
            let line =
                if i == 0 { e.line.clone() } else { Line::new(e.line.base.clone(), e.line.direction.scale(&int(-1)))? };
            steps.push(BuildStep {
                node: child.node,
                vertex,
                parent_vertex: Some(c),
                label: Some(labels[i]),
                subdivided: faces[i].clone(),
                point: points[i].clone(),
                line: Some(line),
                lambda: Some(e.choice.lambda.clone()),
                denominator_bits: bits(points[i]),
            });
        }
        t = e.triangulation;
        for child in children.iter().rev() {
            stack.push(child.node);
        }
    }
    let trace = BuildTrace { d, initial, steps };
    Ok(Build { triangulation: t, trace, node_vertex, north_node: None })
}

/// Realizes the stacked polytope with dual tree `tree`: the leaf `north`
/// (default: smallest leaf) is the simplex containing the north pole, and
/// the rest of the tree, rooted at its neighbor, is the subdivision plan.
/// A single node gives the bare simplex.
pub fn build_from_tree(tree: &DualTree, north: Option<usize>, d: usize, cfg: &BuildConfig) -> Result<Build> {
    if tree.len() == 1 {
        if north.is_some_and(|n| n != 0) {
            return Err(BuildError::NotALeaf(north.unwrap_or(0)));
        }
        let initial = initial_simplex(d, &cfg.scale)?;
        let trace = BuildTrace { d, initial: initial.clone(), steps: Vec::new() };
        return Ok(Build { triangulation: initial, trace, node_vertex: BTreeMap::new(), north_node: Some(0) });
    }
    let leaf = match north {
        Some(n) if !tree.contains(n) => return Err(crate::trees::TreeError::UnknownNode(n).into()),
        Some(n) if tree.degree(n) != 1 => return Err(BuildError::NotALeaf(n)),
        Some(n) => n,
        None => tree.leaves()[0],
    };
    let full = root_plan(tree, leaf)?;
    let plan = full.subtree(full.children(leaf)[0].node)?;
    let mut b = build_from_plan(&plan, d, cfg)?;
    b.north_node = Some(leaf);
    Ok(b)
}

/// Subdivides along a ray: from vertex 0 of the initial simplex through its
/// barycenter, inserting `n` points, each in the simplex created by the
/// previous one that the ray enters next. Plan node `k` is the `k`-th point.
pub fn build_path(d: usize, n: usize, cfg: &BuildConfig) -> Result<Build> {
    let initial = initial_simplex(d, &cfg.scale)?;
    let mut t = initial.clone();
    let all: Facet = (0..d).collect();
    let v = t.vertex(0).clone();
    let dir = barycenter(&t, &all)?.sub(&v)?;
    let ray = Line::new(v.clone(), dir.clone())?;
    let mut steps = Vec::new();
    let mut node_vertex = BTreeMap::new();
    let mut s = Scalar::from(int(1));
    let mut facet = all;
    for k in 0..n {
        let vertex = t.num_vertices();
        let (point, delta) = if k == 0 {
            (ray.at(&s), None)
        } else {
            let cache = all_spheres(&t)?;
            let fpts = t.points(&facet);
            let mut delta = ratio(1, 1);
            let mut found = None;
            for _ in 0..cfg.halving_cap {
                let p = ray.at(&(&s + &delta));
                let inside = point_in_simplex(&fpts, &p)? == SimplexLocation::Interior;
                if inside {
                    let mut clear = true;
                    for (f, sph) in &cache {
                        if **f != facet && sphere_side(sph, &p)? != SphereSide::Outside {
                            clear = false;
                            break;
                        }
                    }
                    if clear {
                        found = Some(p);
                        break;
                    }
                }
                delta /= int(2);
            }
            let p = found.ok_or(BuildError::SearchExhausted(cfg.halving_cap))?;
            s += &delta;
            (p, Some(delta))
        };
        let label = match k {
            0 => None,
            1 => Some(0),
            _ => Some(d - 1),
        };
        steps.push(BuildStep {
            node: k,
            vertex,
            parent_vertex: (k > 0).then(|| vertex - 1),
            label,
            subdivided: facet.clone(),
            point: point.clone(),
            line: Some(ray.clone()),
            lambda: delta,
            denominator_bits: bits(&point),
        });
        node_vertex.insert(k, vertex);
        t = stellar_subdivide(&t, &facet, point)?;
        // the ray leaves through the facet opposite to its previous vertex
        let behind = if k == 0 { 0 } else { vertex - 1 };
        facet = facet.iter().copied().filter(|&u| u != behind).chain([vertex]).collect();
        facet.sort_unstable();
    }
    let trace = BuildTrace { d, initial, steps };
    Ok(Build { triangulation: t, trace, node_vertex, north_node: None })
}

/// Inscribed stacked `d`-polytope on `d + 1 + n` vertices in which vertices
/// `i` and `j` are adjacent iff `|i - j| <= d`. Vertex 0 is the north pole;
/// each new vertex is stacked next to the previous one. For `d = 2` this is
/// an inscribed polygon.
pub fn build_bounded_degree(d: usize, n: usize, cfg: &BuildConfig) -> Result<InscribedPolytope> {
    if d == 2 {
        return Ok(polygon(n + 3));
    }
    let t = if n == 0 {
        initial_simplex(d, &cfg.scale)?
    } else {
        build_from_plan(&RootedPlan::chain(n, Some(0)), d, cfg)?.triangulation
    };
    let p = lift_to_inscribed(&t)?;
    let perm: Vec<usize> = (0..p.vertices.len()).map(|i| if i == p.north { 0 } else { i + 1 }).collect();
    Ok(p.relabeled(&perm))
}

/// Convex `k`-gon on the unit circle with vertex 0 at the north pole.
fn polygon(k: usize) -> InscribedPolytope {
    let half = Scalar::from(int(k as i64 - 2)) / int(2);
    let mut vertices = vec![north_pole(2)];
    for i in 0..k - 1 {
        let t = Scalar::from(int(i as i64)) - &half;
        vertices.push(inverse_stereographic(&Point::new(vec![t])));
    }
    let facets = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    InscribedPolytope::new(2, 0, vertices, facets)
}
