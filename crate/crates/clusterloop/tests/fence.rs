use clusterloop::fence::{BraidWord, PlabicFence};
use clusterloop::seed::ClusterAutomorphism;
use clusterloop::Seed;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| prop::collection::vec(1..n, 2..=7).prop_map(move |l| BraidWord::new(n, l).unwrap()))
}

fn moves(f: &PlabicFence) -> Vec<clusterloop::fence::FenceMove> {
    let m = f.columns().len();
    (0..m).flat_map(|s| [f.r3_move(s), f.square_move(s), f.slide(s)]).filter_map(Result::ok).collect()
}

/// Mutating at the reported face and moving faces along `face_map`
/// must give the target fence's quiver.
fn lands_on_target(f: &PlabicFence, mv: &clusterloop::fence::FenceMove) {
    let q = f.to_quiver();
    let q = match mv.mutated {
        Some(k) => q.mutate(k).unwrap(),
        None => q,
    };
    let moved = q.relabeled(&mv.face_map);
    assert!(moved.same_arrows(&mv.fence.to_quiver()), "{f:?} -> {:?}", mv.fence);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(0xfe1ce), ..ProptestConfig::default() })]

    #[test]
    fn braid_round_trip(b in braid()) {
        let f = PlabicFence::from_braid(&b);
        prop_assert_eq!(f.to_braid(), b);
        prop_assert_eq!(PlabicFence::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn local_moves_relate_seeds(b in braid(), pick in 0usize..64, pick2 in 0usize..64) {
        let f = PlabicFence::from_braid(&b);
        let ms = moves(&f);
        for mv in &ms {
            lands_on_target(&f, mv);
        }
        // one more step from a moved fence, where colors are mixed
        if let Some(mv) = ms.get(pick % ms.len().max(1)) {
            let g = &mv.fence;
            let ms2 = moves(g);
            if let Some(mv2) = ms2.get(pick2 % ms2.len().max(1)) {
                lands_on_target(g, mv2);
            }
        }
    }
}

#[test]
fn dt_squared_is_inverse_full_rotation() {
    for (w, n) in [("s1^3", 2), ("s1^4", 2), ("s1^5", 2), ("s1 s2 s1 s2 s1 s2", 3), ("s1^2 s2^2 s1 s2", 3), ("s1^3 s2^3", 3)] {
        let f = PlabicFence::from_braid(&BraidWord::parse(w, n).unwrap());
        let q = f.to_quiver();
        let dt = f.dt_sequence().unwrap();
        assert!(dt.is_automorphism(&q, false), "{w}");
        let rot = f.full_cyclic_rotation().unwrap();
        assert!(rot.is_automorphism(&q, false), "{w}");
        let s = Seed::initial(&q);
        let dt2 = ClusterAutomorphism::compose(&dt, &dt);
        assert!(s.action_equal(&dt2, &rot.inverse()).unwrap(), "{w}");
    }
}

#[test]
fn a2_dt_word() {
    let f = PlabicFence::from_braid(&BraidWord::parse("s1^3", 2).unwrap());
    let dt = f.dt_sequence().unwrap();
    assert_eq!(dt.word().len(), 3);
    assert_eq!(Seed::initial(&f.to_quiver()).order(&dt, 100).unwrap(), clusterloop::Order::Finite(5));
}
