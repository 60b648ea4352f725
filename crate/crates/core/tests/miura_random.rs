use jetoper::liealg::ChevalleyAlgebra;
use jetoper::miura::{miura_residue_check, miura_transform, theta, Twist};
use jetoper::random::Sampler;

#[test]
fn miura_square_commutes() {
    for (l, seed) in [(1, 41), (2, 42)] {
        let g = ChevalleyAlgebra::build("A", l).unwrap();
        let mut s = Sampler::with_bound(seed, 20);
        for n in 1..=3 {
            for _ in 0..4 {
                let conn = s.h_connection(&g, Twist::PlusRho, n, n as i64 + 1);
                let r = miura_residue_check(&g, &conn).unwrap();
                assert!(r.passed(), "A{l} n={n}: {r:?}");
            }
        }
    }
}

#[test]
fn miura_image_has_the_embedding_pattern() {
    let g = ChevalleyAlgebra::build("A", 2).unwrap();
    let mut s = Sampler::with_bound(43, 20);
    for n in 1..=3 {
        let conn = s.h_connection(&g, Twist::PlusRho, n, n as i64);
        let c = miura_transform(&g, &conn).unwrap();
        for (v, d) in c.v.iter().zip(g.exponents()) {
            assert!(v.order().map_or(true, |o| o >= -(n as i64) * (d + 1)));
        }
    }
}

#[test]
fn theta_then_miura() {
    let g = ChevalleyAlgebra::build("A", 1).unwrap();
    let mut s = Sampler::with_bound(44, 20);
    let conn = s.h_connection(&g, Twist::MinusRho, 2, 3);
    assert!(miura_residue_check(&g, &theta(&conn).unwrap()).unwrap().passed());
}
