use inscriber::builder::{build_from_plan, BuildConfig};
use inscriber::complex::{
    brute_force_delaunay, check_delaunay, stellar_subdivide, undo_stellar, DelaunayMode, Triangulation,
};
use inscriber::generators::gale_evenness_facets;
use inscriber::kernel::{
    circumsphere, format_scalar, insphere_lifted, inverse_stereographic, invert_in_sphere, orientation, parse_scalar,
    ratio, sphere_side, stereographic_project, Point, Scalar, Sign,
};
use inscriber::random::Sampler;
use inscriber::trees::{rooted_canonical, ChildEdge, RootedPlan};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| ratio(n, d))
}

fn point(m: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(scalar(), m).prop_map(Point::new)
}

fn points(m: usize, n: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(m), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_text_round_trip(x in scalar(), big in any::<i64>()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x.clone());
        let y = x * ratio(big, 7);
        prop_assert_eq!(parse_scalar(&format_scalar(&y)).unwrap(), y);
    }

    #[test]
    fn point_json_round_trip(p in point(4)) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), p);
    }

    #[test]
    fn stereographic_round_trip(m in 1usize..5, seed in any::<u64>()) {
        let q = Sampler::new(seed).point(m, -9, 9);
        let s = inverse_stereographic(&q);
        prop_assert_eq!(s.norm_sq(), ratio(1, 1));
        prop_assert_eq!(stereographic_project(&s).unwrap(), q);
    }

    #[test]
    fn inversion_is_an_involution(c in point(3), p in point(3), r in (1i64..30, 1i64..9)) {
        prop_assume!(c != p);
        let r2 = ratio(r.0, r.1);
        let q = invert_in_sphere(&c, &r2, &p).unwrap();
        prop_assert_eq!(invert_in_sphere(&c, &r2, &q).unwrap(), p.clone());
        // |p - c| |q - c| = r^2
        prop_assert_eq!(p.dist_sq(&c).unwrap() * q.dist_sq(&c).unwrap(), &r2 * &r2);
    }

    #[test]
    fn lifted_insphere_agrees_with_circumsphere(m in 2usize..5, seed in any::<u64>(), q in point(4)) {
        let mut s = Sampler::new(seed);
        let simplex = s.simplex(m, 6);
        let q = Point::new(q.coords()[..m].to_vec());
        let sph = circumsphere(&simplex).unwrap();
        prop_assert_eq!(insphere_lifted(&simplex, &q).unwrap(), sphere_side(&sph, &q).unwrap());
        for v in &simplex {
            prop_assert_eq!(sphere_side(&sph, v).unwrap(), inscriber::kernel::SphereSide::On);
        }
    }

    #[test]
    fn orientation_flips_under_a_swap(pts in points(3, 4)) {
        let mut swapped = pts.clone();
        swapped.swap(0, 1);
        let (a, b) = (orientation(&pts).unwrap(), orientation(&swapped).unwrap());
        prop_assert_eq!(a == Sign::Zero, b == Sign::Zero);
        if a != Sign::Zero {
            prop_assert_ne!(a, b);
        }
    }
}

/// Brute-force triangulation of random points, optionally subdivided once so
/// that the result is usually not Delaunay.
fn triangulation(seed: u64, m: usize, n: usize, subdivide: bool) -> Option<Triangulation> {
    let mut s = Sampler::new(seed);
    let pts: Vec<Point> = (0..n).map(|_| s.point(m, -5, 5)).collect();
    let t = brute_force_delaunay(&pts).ok()?;
    if !subdivide {
        return Some(t);
    }
    let f = t.facets()[s.index(t.num_facets())].clone();
    let p = s.interior_point(&t.points(&f));
    stellar_subdivide(&t, &f, p).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delaunay_modes_agree(seed in any::<u64>(), m in 2usize..4, extra in 0usize..4, subdivide in any::<bool>()) {
        let Some(t) = triangulation(seed, m, m + 2 + extra, subdivide) else { return Ok(()) };
        let oks: Vec<bool> = DelaunayMode::ALL.iter().map(|&mode| check_delaunay(&t, mode).unwrap().ok).collect();
        prop_assert!(oks.iter().all(|&o| o == oks[0]), "{:?}", oks);
        if !subdivide {
            prop_assert!(oks[0]);
        }
    }

    #[test]
    fn undo_inverts_subdivision(seed in any::<u64>(), m in 2usize..4, extra in 0usize..4) {
        let Some(t) = triangulation(seed, m, m + 2 + extra, false) else { return Ok(()) };
        let mut s = Sampler::new(seed ^ 0x5555);
        let f = t.facets()[s.index(t.num_facets())].clone();
        let sub = stellar_subdivide(&t, &f, s.interior_point(&t.points(&f))).unwrap();
        let back = undo_stellar(&sub, sub.num_vertices() - 1).unwrap();
        let sorted = |t: &Triangulation| { let mut f = t.facets().to_vec(); f.sort(); f };
        prop_assert_eq!(back.vertices(), t.vertices());
        prop_assert_eq!(sorted(&back), sorted(&t));
    }

    #[test]
    fn gale_facets_form_a_closed_pseudomanifold(d in 2usize..6, extra in 1usize..5) {
        let n = d + extra;
        let facets = gale_evenness_facets(d, n).unwrap();
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in &facets {
            for i in 0..d {
                let mut r = f.clone();
                r.remove(i);
                *ridges.entry(r).or_default() += 1;
            }
        }
        prop_assert!(ridges.values().all(|&c| c == 2));
    }
}

/// Random plan with at most two children per node, built from a parent
/// list: node `i > 0` hangs below `parents[i - 1] % i` if it has room.
fn random_plan(parents: &[usize], labels: &[Option<usize>]) -> RootedPlan {
    let mut children: BTreeMap<usize, Vec<ChildEdge>> = BTreeMap::new();
    for (next, (i, &p)) in (1..).zip(parents.iter().enumerate()) {
        let mut parent = p % next;
        while children.get(&parent).is_some_and(|c| c.len() >= 2) {
            parent = (parent + 1) % next;
        }
        let entry = children.entry(parent).or_default();
        let face = labels[i].filter(|l| entry.iter().all(|c| c.face != Some(*l)));
        entry.push(ChildEdge { node: next, face });
    }
    RootedPlan::new(0, children).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn builds_realize_their_plans(
        d in 3usize..5,
        parents in prop::collection::vec(0usize..8, 0..6),
        labels in prop::collection::vec(prop::option::of(0usize..3), 6),
    ) {
        let plan = random_plan(&parents, &labels);
        let b = build_from_plan(&plan, d, &BuildConfig::default()).unwrap();
        for mode in [DelaunayMode::FacetsEmpty, DelaunayMode::InteriorRidgesLocal] {
            prop_assert!(check_delaunay(&b.triangulation, mode).unwrap().ok);
        }
        prop_assert_eq!(&b.trace.replay().unwrap(), &b.triangulation);
        let recovered = b.trace.rooted_plan().unwrap();
        let (t1, _) = plan.to_tree();
        let (t2, _) = recovered.to_tree();
        prop_assert_eq!(rooted_canonical(&t1, 0), rooted_canonical(&t2, 0));
        // every explicit label is honored
        for v in plan.preorder() {
            for c in plan.children(v) {
                if let Some(l) = c.face {
                    let step = &b.trace.steps[b.node_vertex[&c.node] - d];
                    prop_assert_eq!(step.label, Some(l));
                }
            }
        }
    }
}
