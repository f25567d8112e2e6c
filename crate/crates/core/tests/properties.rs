use std::sync::OnceLock;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sunada::algebra::{Element, FiniteGroup, Perm};
use sunada::catalog;
use sunada::covering::{
    cone_points, orbifold_euler, smoothness, PolygonSpec, Rational, VertexCycle,
};
use sunada::gassmann::{
    are_conjugate_subgroups, are_gassmann, class_intersection_profile, Subgroup,
};
use sunada::schreier::{cycles_of, graph_isomorphic, schreier_graph, CosetTable, IsoMode};
use sunada::search::{find_sunada_pairs, SearchConfig};
use sunada::spectra::{adjacency_matrix, eigenvalues_symmetric, spectra_equal};

fn groups() -> &'static [FiniteGroup] {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let p = |s: &str| -> Element { Perm::parse_cycles(s, 4).unwrap().into() };
        let s4 = FiniteGroup::generate(&[p("(0,1)"), p("(0,1,2,3)")]).unwrap();
        let mut out = vec![s4];
        out.extend(
            catalog::NAMES
                .iter()
                .map(|n| catalog::build(n).unwrap().loaded.group),
        );
        out
    })
}

/// A group from the fixed list plus a handful of raw indices to reduce mod its order.
fn group_and_indices(k: usize) -> impl Strategy<Value = (&'static FiniteGroup, Vec<usize>)> {
    (0..groups().len(), prop::collection::vec(any::<usize>(), k)).prop_map(|(i, xs)| {
        let g = &groups()[i];
        (g, xs.into_iter().map(|x| x % g.order()).collect())
    })
}

fn labels_of(g: &FiniteGroup) -> Vec<(String, usize)> {
    g.generators()
        .iter()
        .enumerate()
        .map(|(i, &x)| (format!("g{i}"), x))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matches_elements((g, xs) in group_and_indices(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        let raw = g.element(a).compose(g.element(b)).unwrap();
        prop_assert_eq!(g.index_of(&raw), Some(g.mul(a, b)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.element(g.inv(a)), &g.element(a).inverse());
    }

    #[test]
    fn element_orders_divide_group_order((g, xs) in group_and_indices(1)) {
        let a = xs[0];
        let m = g.element_order(a);
        prop_assert_eq!(g.order() as u64 % m, 0);
        prop_assert_eq!(g.pow(a, m), g.identity());
        prop_assert_eq!(m, g.element(a).order());
    }

    #[test]
    fn classes_are_conjugation_stable((g, xs) in group_and_indices(2)) {
        let (x, h) = (xs[0], xs[1]);
        prop_assert_eq!(g.class_of(g.conjugate(h, x)), g.class_of(x));
        prop_assert_eq!(g.classes().sizes().iter().sum::<usize>(), g.order());
    }

    #[test]
    fn profiles_count_members((g, xs) in group_and_indices(3)) {
        let u = Subgroup::generate(g, &xs[..2]);
        let profile = class_intersection_profile(g, &u);
        prop_assert_eq!(profile.iter().sum::<usize>(), u.order());
        let conj = u.conjugate_by(g, xs[2]);
        prop_assert_eq!(class_intersection_profile(g, &conj), profile);
        prop_assert!(are_conjugate_subgroups(g, &u, &conj).unwrap().is_some());
    }

    #[test]
    fn gassmann_is_symmetric((g, xs) in group_and_indices(2)) {
        let u = Subgroup::generate(g, &xs[..1]);
        let v = Subgroup::generate(g, &xs[1..]);
        prop_assert_eq!(are_gassmann(g, &u, &v).equivalent, are_gassmann(g, &v, &u).equivalent);
    }

    #[test]
    fn orbits_partition_cosets((g, xs) in group_and_indices(2)) {
        let u = Subgroup::generate(g, &xs[..1]);
        let table = CosetTable::new(g, &u);
        let x = xs[1];
        let orbits = table.orbits(g, x);
        prop_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), u.index());
        for o in &orbits {
            prop_assert_eq!(g.element_order(x) as usize % o.len(), 0);
        }
        let mut lens: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let mut cyc: Vec<usize> = cycles_of(&table.action(g, x)).iter().map(Vec::len).collect();
        lens.sort_unstable();
        cyc.sort_unstable();
        prop_assert_eq!(lens, cyc);
    }

    #[test]
    fn smooth_iff_no_cone_points((g, xs) in group_and_indices(4)) {
        let u = Subgroup::generate(g, &xs[..1]);
        let cycles: Vec<VertexCycle> = xs[1..]
            .iter()
            .enumerate()
            .map(|(i, &e)| VertexCycle { label: format!("p{i}"), element: e })
            .collect();
        let spec = PolygonSpec::new(2, cycles).unwrap();
        let flags = smoothness(g, &u, &spec).unwrap();
        let points = cone_points(g, &u, &spec).unwrap();
        for (c, smooth) in spec.cycles.iter().zip(&flags) {
            prop_assert_eq!(*smooth, !points.iter().any(|p| p.label == c.label));
        }
        // orbifold Euler characteristic scales with the index
        let base = orbifold_euler(g, &Subgroup::whole(g), &spec).unwrap();
        prop_assert_eq!(orbifold_euler(g, &u, &spec).unwrap(), base * Rational::from_integer(u.index() as i64));
    }

    #[test]
    fn conjugate_subgroups_give_isomorphic_graphs((g, xs) in group_and_indices(3)) {
        let u = Subgroup::generate(g, &xs[..2]);
        let v = u.conjugate_by(g, xs[2]);
        let ls = labels_of(g);
        let gu = schreier_graph(g, &CosetTable::new(g, &u), &ls);
        let gv = schreier_graph(g, &CosetTable::new(g, &v), &ls);
        let phi = graph_isomorphic(&gu, &gv, IsoMode::Direct);
        prop_assert!(phi.is_some());
        prop_assert!(graph_isomorphic(&gv, &gu, IsoMode::Direct).is_some());
        prop_assert_eq!(
            graph_isomorphic(&gu, &gv, IsoMode::Reversed).is_some(),
            graph_isomorphic(&gv, &gu, IsoMode::Reversed).is_some()
        );
    }

    #[test]
    fn spectrum_ignores_vertex_order(
        (g, xs) in group_and_indices(1),
        seed in any::<u64>(),
    ) {
        let u = Subgroup::generate(g, &xs);
        let graph = schreier_graph(g, &CosetTable::new(g, &u), &labels_of(g));
        let n = graph.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let s1 = eigenvalues_symmetric(&adjacency_matrix(&graph), 1e-9).unwrap();
        let s2 = eigenvalues_symmetric(&adjacency_matrix(&graph.relabel_vertices(&perm)), 1e-9).unwrap();
        prop_assert!(spectra_equal(&s1.eigenvalues, &s2.eigenvalues, 1e-9));
        // connected and 2L-regular: top eigenvalue is the degree
        let degree = 2.0 * g.generators().len() as f64;
        prop_assert!((s1.eigenvalues[n - 1] - degree).abs() < 1e-9);
    }

    #[test]
    fn permutation_text_round_trips(images in Just((0..9u32).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(images).unwrap();
        prop_assert_eq!(Perm::parse_cycles(&p.to_string(), 9).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn search_results_hold_up(k in prop::sample::select(vec![2usize, 4, 8]), dedupe in any::<bool>()) {
        let g = &groups()[3];
        let mut cfg = SearchConfig::new(k);
        cfg.dedupe = dedupe;
        for p in find_sunada_pairs(g, &cfg).unwrap() {
            prop_assert_eq!(p.u.order(), k);
            prop_assert!(are_gassmann(g, &p.u, &p.v).equivalent);
            let conjugate = (0..g.order()).any(|x| p.u.conjugate_by(g, x) == p.v);
            prop_assert!(!conjugate);
            let ls = labels_of(g);
            let su = eigenvalues_symmetric(&adjacency_matrix(&schreier_graph(g, &CosetTable::new(g, &p.u), &ls)), 1e-9).unwrap();
            let sv = eigenvalues_symmetric(&adjacency_matrix(&schreier_graph(g, &CosetTable::new(g, &p.v), &ls)), 1e-9).unwrap();
            prop_assert!(spectra_equal(&su.eigenvalues, &sv.eigenvalues, 1e-9));
        }
    }
}
