use inscriber::builder::{build_from_tree, lift_to_inscribed, verify_inscribed, BuildConfig};
use inscriber::complex::{check_delaunay, undo_stellar, DelaunayMode};
use inscriber::kernel::stereographic_project;
use inscriber::trees::{all_trees, max_degree, unrooted_canonical};

#[test]
fn every_small_tree_of_degree_three_builds() {
    let cfg = BuildConfig::default();
    for d in [3, 4, 5] {
        for n in 1..=7 {
            for tree in all_trees(n).into_iter().filter(|t| max_degree(t).0 <= 3) {
                let b = build_from_tree(&tree, None, d, &cfg).unwrap();
                let t = &b.triangulation;
                for mode in [DelaunayMode::FacetsEmpty, DelaunayMode::InteriorRidgesLocal] {
                    assert!(check_delaunay(t, mode).unwrap().ok, "d={d} tree={tree:?}");
                }
                let p = lift_to_inscribed(t).unwrap();
                assert!(verify_inscribed(&p).ok);
                assert_eq!(p.facets.len(), t.num_facets() + d);
                assert_eq!(p.vertices.len(), d + n);
                let (dual, _) = inscriber::trees::extract_dual_tree(&p.facets, d).unwrap();
                assert_eq!(unrooted_canonical(&dual), unrooted_canonical(&tree));
                let last = t.num_vertices() - 1;
                if n > 1 && t.num_vertices() > d + 1 {
                    let back = undo_stellar(t, last).unwrap();
                    assert!(check_delaunay(&back, DelaunayMode::FacetsEmpty).unwrap().ok);
                }
                for (i, v) in t.vertices().iter().enumerate() {
                    assert_eq!(&stereographic_project(&p.vertices[i]).unwrap(), v);
                }
            }
        }
    }
}
