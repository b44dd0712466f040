use super::*;
use crate::generate::{corpus, remark_family};
use crate::oracle::oracle_width;

const AUDIT: SolveOptions = SolveOptions {
    audit: true,
    trace: true,
};

fn d4() -> Dag {
    Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

fn audited(dag: &Dag, variant: Variant) -> MpcResult {
    solve_with(dag, variant, AUDIT).unwrap_or_else(|e| panic!("{variant:?} on {dag:?}: {e}"))
}

#[test]
fn d4_has_width_two() {
    for variant in [Variant::K2, Variant::K3] {
        let r = audited(&d4(), variant);
        assert_eq!(r.cover.size(), 2);
        assert!(r.cover.check(&d4()).is_ok());
        assert_eq!(r.trajectory, vec![1, 1, 2, 2]);
    }
}

#[test]
fn chain_is_one_path() {
    let edges: Vec<_> = (0..99).map(|i| (i, i + 1)).collect();
    let chain = Dag::new(100, &edges).unwrap();
    for variant in [Variant::K2, Variant::K3] {
        let r = audited(&chain, variant);
        assert_eq!(r.cover.paths, vec![(0..100).collect::<Vec<_>>()]);
        // each insertion finds the previous end vertex right away
        assert!(r.charges.search <= 3 * 100);
    }
}

#[test]
fn remark_three() {
    let g = remark_family(3).unwrap();
    for variant in [Variant::K2, Variant::K3] {
        assert_eq!(audited(&g, variant).cover.size(), 3);
    }
}

#[test]
fn first_insertion() {
    let mut s = Solver::<LayeredLevels>::new(Variant::K2).with_audit(true);
    let r = s.insert_vertex(&[]).unwrap();
    assert_eq!(
        r,
        StepReport {
            found: false,
            min_level: 0,
            size: 1,
            merged: false
        }
    );
    assert_eq!(s.level_pair(0), (0, 1));
    assert_eq!(s.cut_demand(), &[1]);
}

#[test]
fn d4_insertions() {
    let mut s = Solver::<LayeredLevels>::new(Variant::K3).with_audit(true);
    s.insert_vertex(&[]).unwrap();
    let r = s.insert_vertex(&[0]).unwrap();
    // shortest possible decrementing path: s, 1_in, 0_out, t
    assert!(r.found);
    let r = s.insert_vertex(&[0]).unwrap();
    assert!(!r.found);
    assert_eq!(r.size, 2);
    let r = s.insert_vertex(&[1, 2]).unwrap();
    assert!(r.found);
    assert_eq!(r.size, 2);
}

#[test]
fn isolated_insertion_grows_cover() {
    let mut s = Solver::<LayeredLevels>::new(Variant::K2).with_audit(true);
    s.insert_vertex(&[]).unwrap();
    s.insert_vertex(&[0]).unwrap();
    let r = s.insert_vertex(&[]).unwrap();
    assert!(!r.found);
    assert_eq!(r.min_level, 0);
    assert_eq!(r.size, 2);
    assert_eq!(s.level_pair(2), (0, 1));
}

#[test]
fn order_violation() {
    let mut s = Solver::<LayeredLevels>::new(Variant::K2);
    s.insert_vertex(&[]).unwrap();
    assert_eq!(
        s.insert_vertex(&[3]),
        Err(crate::Error::OrderViolation { vertex: 1, neighbor: 3 })
    );
}

#[test]
fn independent_set_does_no_search() {
    let g = Dag::new(30, &[]).unwrap();
    let r = audited(&g, Variant::K2);
    assert_eq!(r.cover.size(), 30);
    assert_eq!(r.charges.search, 0);
}

#[test]
fn audited_corpus_both_variants() {
    for inst in corpus(150, 30, 5, 77) {
        let width = oracle_width(&inst.dag).unwrap();
        let k2 = audited(&inst.dag, Variant::K2);
        let k3 = audited(&inst.dag, Variant::K3);
        assert_eq!(k2.cover.size(), width, "{:?}", inst.dag);
        assert_eq!(k2.trajectory, k3.trajectory);
        for r in [&k2, &k3] {
            assert!(r.cover.check(&inst.dag).is_ok());
            assert!(r.cover.check(&r.sparse).is_ok());
        }
    }
}

#[test]
fn level_stores_agree() {
    for inst in corpus(60, 40, 6, 5) {
        for variant in [Variant::K2, Variant::K3] {
            let a = solve_with_store::<EagerLevels>(&inst.dag, variant, AUDIT).unwrap();
            let b = solve_with_store::<LayeredLevels>(&inst.dag, variant, AUDIT).unwrap();
            assert_eq!(a.levels, b.levels);
            assert_eq!(a.trace, b.trace);
            assert_eq!(a.cover, b.cover);
        }
    }
}

#[test]
fn k2_cover_matches_network_decomposition() {
    for inst in corpus(100, 60, 6, 31) {
        let r = solve(&inst.dag, Variant::K2);
        let net = FlowNetwork::reduce(&r.sparse);
        assert_eq!(net.decompose(&r.flow).unwrap(), r.cover, "seed {}", inst.seed);
    }
}
