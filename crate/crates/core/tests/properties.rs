use std::collections::HashMap;

use dagwidth::antichain::{chain_cover_from_mpc, check_chain_cover, max_antichain};
use dagwidth::generate::gen_random_dag;
use dagwidth::io::{parse_cover, parse_edge_list, write_cover, write_edge_list};
use dagwidth::mpc::{solve_with, SolveOptions};
use dagwidth::oracle::{is_antichain, oracle_width, reachability_matrix, validate_cover};
use dagwidth::shrink::shrink;
use dagwidth::sparsify::sparsify_all;
use dagwidth::thin::{audit_support, splice, thin};
use dagwidth::{solve, Dag, PathCover, Variant};
use proptest::prelude::*;

/// Any DAG: random forward pairs under a random relabeling.
fn any_dag() -> impl Strategy<Value = Dag> {
    (1usize..25)
        .prop_flat_map(|n| {
            let pairs = proptest::collection::vec((0..n, 0..n), 0..3 * n);
            (Just(n), pairs, Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(n, pairs, label)| {
            let edges: Vec<_> = pairs
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (label[a.min(b)], label[a.max(b)]))
                .collect();
            Dag::new(n, &edges).unwrap()
        })
}

/// Generated DAGs of bounded width.
fn generated() -> impl Strategy<Value = (Dag, usize)> {
    (1usize..40, 1usize..7, 0.0f64..3.0, any::<u64>()).prop_map(|(n, k, f, seed)| {
        let k = k.min(n);
        (gen_random_dag(n, k, f, seed).unwrap(), k)
    })
}

/// Maximal walks from the given starts.
fn walks(g: &Dag, starts: &[(usize, usize)]) -> Vec<Vec<usize>> {
    starts
        .iter()
        .map(|&(s, choice)| {
            let mut v = s % g.n();
            let mut p = vec![v];
            let mut c = choice;
            while !g.out_neighbors(v).is_empty() {
                let out = g.out_neighbors(v);
                v = out[c % out.len()];
                c = c / out.len() + 7 * c % 13;
                p.push(v);
            }
            p
        })
        .collect()
}

fn multiplicities(cover: &PathCover) -> HashMap<(usize, usize), usize> {
    let mut m = HashMap::new();
    for p in &cover.paths {
        for w in p.windows(2) {
            *m.entry((w[0], w[1])).or_insert(0) += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trip(g in any_dag()) {
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert!(!back.remapped);
        prop_assert_eq!(back.dag, g);
    }

    #[test]
    fn shifted_ids_remap_to_the_same_graph(g in any_dag(), shift in 1000u64..5000) {
        let mut text = format!("{} {}\n", g.n(), g.edge_count());
        for (u, v) in g.edges() {
            text.push_str(&format!("{} {}\n", u as u64 + shift, v as u64 + shift));
        }
        let back = parse_edge_list(&text).unwrap();
        // isolated vertices lose their names, so compare edge counts and width
        prop_assert_eq!(back.dag.edge_count(), g.edge_count());
        prop_assert_eq!(oracle_width(&back.dag).unwrap(), oracle_width(&g).unwrap());
    }

    #[test]
    fn cover_format_round_trip(g in any_dag()) {
        let cover = solve(&g, Variant::K3).cover;
        prop_assert_eq!(parse_cover(&write_cover(&cover.paths)).unwrap(), cover);
    }

    #[test]
    fn topological_positions_respect_edges(g in any_dag()) {
        let pos = g.topo_pos();
        for (u, v) in g.edges() {
            prop_assert!(pos[u] < pos[v]);
        }
    }

    #[test]
    fn prefix_width_is_monotone(g in any_dag()) {
        let w = oracle_width(&g).unwrap();
        let mut last = 0;
        for i in 1..=g.n() {
            let (p, _) = g.prefix(i).unwrap();
            let wi = oracle_width(&p).unwrap();
            // one more vertex keeps every antichain and adds at most one
            prop_assert!(wi <= w && last <= wi && wi <= last + 1);
            last = wi;
        }
    }

    #[test]
    fn trajectory_tracks_prefix_width(g in any_dag()) {
        let r = solve(&g, Variant::K2);
        for (i, &f) in r.trajectory.iter().enumerate() {
            let (p, _) = g.prefix(i + 1).unwrap();
            prop_assert_eq!(f as usize, oracle_width(&p).unwrap());
        }
    }

    #[test]
    fn both_variants_are_minimum_and_audited(g in any_dag()) {
        let w = oracle_width(&g).unwrap();
        let options = SolveOptions { audit: true, trace: false };
        for variant in [Variant::K2, Variant::K3] {
            let r = solve_with(&g, variant, options).unwrap();
            prop_assert!(validate_cover(&g, &r.cover).is_empty());
            prop_assert_eq!(r.cover.size(), w);
        }
    }

    #[test]
    fn generated_width_is_bounded((g, k) in generated()) {
        prop_assert!(oracle_width(&g).unwrap() <= k);
    }

    #[test]
    fn antichain_and_chains_match_the_cover(g in any_dag()) {
        let cover = solve(&g, Variant::K3).cover;
        let a = max_antichain(&g, &cover).unwrap();
        prop_assert_eq!(a.len(), cover.size());
        prop_assert!(is_antichain(&g, &a));
        let chains = chain_cover_from_mpc(&g, &cover).unwrap();
        prop_assert!(check_chain_cover(&g, &chains).is_ok());
        prop_assert_eq!(chains.len(), cover.size());
    }

    #[test]
    fn sparsification_keeps_reachability((g, _) in generated()) {
        let cover = solve(&g, Variant::K3).cover;
        let s = sparsify_all(&g, &cover).unwrap();
        prop_assert_eq!(reachability_matrix(&s), reachability_matrix(&g));
        for v in 0..s.n() {
            prop_assert!(s.in_neighbors(v).len() <= cover.size());
        }
    }

    #[test]
    fn shrink_reaches_the_width(g in any_dag(), extra in proptest::collection::vec((0usize..100, 0usize..1000), 0..6)) {
        let w = oracle_width(&g).unwrap();
        let r = shrink(&g, &PathCover::trivial(g.n())).unwrap();
        prop_assert_eq!((r.cover.size(), r.decrementing_paths), (w, g.n() - w));
        let mut paths = PathCover::trivial(g.n()).paths;
        paths.extend(walks(&g, &extra));
        let r = shrink(&g, &PathCover::new(paths)).unwrap();
        prop_assert_eq!(r.cover.size(), w);
    }

    #[test]
    fn splice_preserves_multiplicities(
        (g, _) in generated(),
        extra in proptest::collection::vec((0usize..100, 0usize..1000), 0..8),
        pick in any::<proptest::sample::Index>(),
        len in 1usize..8,
    ) {
        let mut paths = solve(&g, Variant::K3).cover.paths;
        paths.extend(walks(&g, &extra));
        let cover = PathCover::new(paths);
        let mu = multiplicities(&cover);
        let mut used: Vec<_> = mu.keys().copied().collect();
        prop_assume!(!used.is_empty());
        used.sort_unstable();
        let (a, b) = used[pick.index(used.len())];
        let mut d = vec![a, b];
        while d.len() <= len {
            let last = *d.last().unwrap();
            match g.out_neighbors(last).iter().find(|&&x| mu.contains_key(&(last, x))) {
                Some(&x) => d.push(x),
                None => break,
            }
        }
        let out = splice(&g, &cover, &d).unwrap();
        prop_assert_eq!(out.size(), cover.size());
        prop_assert_eq!(multiplicities(&out), mu);
        prop_assert!(out.paths.iter().any(|p| p.windows(d.len()).any(|w| w == d.as_slice())));
    }

    #[test]
    fn thinning_keeps_size_and_bound(
        (g, _) in generated(),
        extra in proptest::collection::vec((0usize..100, 0usize..1000), 0..10),
    ) {
        let mut paths = solve(&g, Variant::K3).cover.paths;
        paths.extend(walks(&g, &extra));
        let cover = PathCover::new(paths);
        let r = thin(&g, &cover).unwrap();
        prop_assert!(validate_cover(&g, &r.cover).is_empty());
        prop_assert_eq!(r.cover.size(), cover.size());
        prop_assert!(audit_support(g.n(), &r.cover.distinct_edges()).is_ok());
        for p in &r.passes {
            prop_assert!(p.delta_phi >= p.cycle_len as u64);
        }
    }

    #[test]
    fn validator_rejects_corrupted_covers(g in any_dag(), victim in any::<proptest::sample::Index>()) {
        let cover = solve(&g, Variant::K3).cover;
        // drop every occurrence of one vertex
        let v = victim.index(g.n());
        let dropped = PathCover::new(
            cover.paths.iter().map(|p| p.iter().copied().filter(|&x| x != v).collect::<Vec<_>>())
                .filter(|p: &Vec<usize>| !p.is_empty()).collect(),
        );
        prop_assert!(!validate_cover(&g, &dropped).is_empty());
        // reversing a path with an edge makes it use non-edges
        if let Some(i) = cover.paths.iter().position(|p| p.len() > 1) {
            let mut bad = cover.clone();
            bad.paths[i].reverse();
            prop_assert!(!validate_cover(&g, &bad).is_empty());
        }
    }
}
