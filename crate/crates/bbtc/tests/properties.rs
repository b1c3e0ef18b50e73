//! Property tests over the structural invariants: canonical form,
//! intersection, queue ordering, and the block decomposition identity.

use proptest::prelude::*;

use bbtc::bcsr::build_block_graph;
use bbtc::graph::{canonicalize, degree_order, RawEdgeList};
use bbtc::kernels::{intersect_count, tc_hash, tc_latapy, tc_list, LatapyConfig, ScratchMap};
use bbtc::partition::partition_symmetric;
use bbtc::tasking::{build_task_list, compose_tasks, order_tasks, Estimator, TaskList};

fn edge_list() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..40, 0usize..40), 0..250)
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(edges in edge_list()) {
        let g = canonicalize(&RawEdgeList::from_edges(edges));
        let again = canonicalize(&g.to_raw());
        prop_assert_eq!(&g, &again);
    }

    #[test]
    fn canonical_form_invariants(edges in edge_list()) {
        let g = canonicalize(&RawEdgeList::from_edges(edges));
        let mut stored = 0usize;
        for u in 0..g.vertex_count() {
            let ns = g.neighbors(u);
            for w in ns.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            if let Some(&first) = ns.first() {
                prop_assert!(first > u);
            }
            stored += ns.len();
        }
        prop_assert_eq!(stored, g.edge_count());
    }

    #[test]
    fn degree_order_is_monotone_and_count_preserving(edges in edge_list()) {
        let g = canonicalize(&RawEdgeList::from_edges(edges));
        let ordered = degree_order(&g);
        let deg = ordered.full_degrees();
        for w in deg.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        prop_assert_eq!(ordered.edge_count(), g.edge_count());
        prop_assert_eq!(tc_list(&ordered), tc_list(&g));
    }

    #[test]
    fn intersect_matches_set_semantics(
        mut a in prop::collection::btree_set(0usize..200, 0..60),
        mut b in prop::collection::btree_set(0usize..200, 0..60),
    ) {
        let expected = a.intersection(&b).count() as u64;
        let av: Vec<usize> = std::mem::take(&mut a).into_iter().collect();
        let bv: Vec<usize> = std::mem::take(&mut b).into_iter().collect();
        prop_assert_eq!(intersect_count(&av, &bv), expected);
    }

    #[test]
    fn decomposition_identity(edges in edge_list(), p in 1usize..9, k in prop::sample::select(vec![0u64, 2, 32, u64::MAX])) {
        let g = degree_order(&canonicalize(&RawEdgeList::from_edges(edges)));
        let want = tc_list(&g);
        prop_assert_eq!(tc_hash(&g, &mut ScratchMap::new(g.vertex_count())), want);
        prop_assert_eq!(tc_latapy(&g, LatapyConfig::new(k)), want);

        let pv = partition_symmetric(&g, p.min(g.vertex_count()).max(1));
        let bg = build_block_graph(&g, &pv);
        let tl = build_task_list(&bg, Estimator::Bbtc, 4.0);
        let mut scratch = ScratchMap::new(bg.max_part_len());
        let mut by_list = 0u64;
        let mut by_hash = 0u64;
        for t in tl.tasks() {
            let (first, second, third) = (bg.block(t.i, t.j), bg.block(t.j, t.k), bg.block(t.i, t.k));
            by_list += bbtc::kernels::task_count_list(first, second, third);
            by_hash += bbtc::kernels::task_count_hash(first, second, third, &mut scratch);
        }
        prop_assert_eq!(by_list, want);
        prop_assert_eq!(by_hash, want);
    }

    #[test]
    fn ordering_sorts_and_keeps_the_task_set(edges in edge_list(), p in 1usize..7, weights in prop::collection::vec(0.0f64..1e6, 120)) {
        let g = canonicalize(&RawEdgeList::from_edges(edges));
        let pv = partition_symmetric(&g, p.min(g.vertex_count()).max(1));
        let bg = build_block_graph(&g, &pv);
        let mut tl = compose_tasks(&bg);
        prop_assert_eq!(tl.len(), TaskList::expected_len(bg.part_count()));

        for (task, w) in tl.tasks_mut().iter_mut().zip(weights.iter()) {
            task.est_weight = *w;
        }
        let mut before: Vec<(usize, usize, usize)> = tl.tasks().iter().map(|t| t.triplet()).collect();
        let ordered = order_tasks(tl);

        let out: Vec<f64> = ordered.tasks().iter().map(|t| t.est_weight).collect();
        for w in out.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        let mut after: Vec<(usize, usize, usize)> = ordered.tasks().iter().map(|t| t.triplet()).collect();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
    }
}
