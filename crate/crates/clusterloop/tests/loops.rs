use clusterloop::fence::BraidWord;
use clusterloop::loops::{self, instances, theta_from_satellite, theta_sequence, ThetaReading, TnQuiverSpec};
use clusterloop::{Order, Seed};

#[test]
fn printed_example_braid_is_a_larger_instance() {
    let t = theta_from_satellite(&instances::example_beta(), 2, 4).unwrap();
    assert_eq!(t.quiver.n(), 15);
    assert_eq!(t.input.q_gamma.len(), 8);
    let phi = theta_sequence(&t.input, ThetaReading::Example).unwrap();
    assert_eq!(phi, t.traced);
    assert!(phi.is_automorphism(&t.quiver, false));
    assert_ne!(phi.to_tuple("v"), instances::example_tuple());
}

#[test]
fn example_reproduced_without_the_s3_square() {
    let beta = BraidWord::parse("s1^2 s3 s2^2 s1^2 D2", 4).unwrap();
    let t = theta_from_satellite(&beta, 2, 4).unwrap();
    assert_eq!(t.input, instances::example_input());
    let phi = theta_sequence(&t.input, ThetaReading::Example).unwrap();
    assert_eq!(phi.to_tuple("v"), instances::example_tuple());
    assert!(phi.is_automorphism(&t.quiver, false));
    assert_eq!(phi, t.traced);
    let lemma = theta_sequence(&t.input, ThetaReading::Lemma).unwrap();
    assert!(!lemma.is_automorphism(&t.quiver, false));
}

#[test]
fn hopf_companion_gives_dn() {
    for n in 4..=7 {
        let t = theta_from_satellite(&BraidWord::parse("s1^2 D2", 2).unwrap(), 1, n).unwrap();
        assert_eq!(t.quiver.n(), n);
        assert_eq!(t.traced.reduced(), instances::dn_theta(n));
        assert!(t.quiver.finite_type().unwrap().is_finite());
    }
}

#[test]
fn dtilde_labeling() {
    let q = instances::dtilde_fence(6).to_quiver();
    let alpha = instances::dtilde_alphabet(6);
    let both = loops::all_labelings(&q, &alpha, &[instances::dtilde_theta1(6), instances::dtilde_theta2()], 100);
    assert_eq!(both.len(), 1);
    let one = loops::all_labelings(&q, &alpha, &[instances::dtilde_theta1(6)], 100);
    let two = loops::all_labelings(&q, &alpha, &[instances::dtilde_theta2()], 100);
    println!("theta1 alone {}, theta2 alone {}", one.len(), two.len());
    for n in 5..=7 {
        assert!(instances::dtilde_quiver(n).is_some(), "n={n}");
    }
}

#[test]
fn tau_generators_are_automorphisms() {
    for tails in [vec![2, 2, 2], vec![3, 2, 2], vec![3, 3, 2], vec![4, 2, 2], vec![5, 3, 2]] {
        let s = TnQuiverSpec::new(tails.clone()).unwrap();
        let q = s.quiver();
        for i in 1..=3 {
            assert!(s.tau(i).unwrap().is_automorphism(&q, false), "{tails:?} tau{i}");
        }
    }
}

#[test]
fn kalman_small_orders() {
    let (f, rho) = loops::kalman_rho(2, 3).unwrap();
    let s = Seed::initial(&f.to_quiver());
    assert_eq!(s.order(&rho, 100).unwrap(), Order::Finite(5));
    let (f, rho) = loops::kalman_rho(3, 3).unwrap();
    let s = Seed::initial(&f.to_quiver());
    assert_eq!(s.order(&rho, 100).unwrap(), Order::Finite(6));
}
