use jetoper::liealg::ChevalleyAlgebra;
use jetoper::series::Coeff;
use num_traits::{One, Zero};

#[test]
fn jacobi_and_invariance_on_all_basis_triples() {
    for l in 1..=3 {
        let g = ChevalleyAlgebra::build("A", l).unwrap();
        let b: Vec<_> = (0..g.dim()).map(|k| g.basis(k)).collect();
        for x in &b {
            for y in &b {
                let xy = g.bracket(x, y);
                for z in &b {
                    let jac = g
                        .bracket(x, &g.bracket(y, z))
                        .add_coeff(&g.bracket(y, &g.bracket(z, x)))
                        .add_coeff(&g.bracket(z, &xy));
                    assert!(jac.is_zero(), "Jacobi fails in A{l}");
                    let inv = g.trace_form(&xy, z) + g.trace_form(y, &g.bracket(x, z));
                    assert!(inv.is_zero(), "invariance fails in A{l}");
                }
            }
        }
    }
}

#[test]
fn simple_root_vectors_pair_to_coroots() {
    for l in 1..=3 {
        let g = ChevalleyAlgebra::build("A", l).unwrap();
        for i in 0..l {
            for j in 0..l {
                let br = g.bracket(&g.basis(g.e(g.simple_root(i))), &g.basis(g.f(g.simple_root(j))));
                if i == j {
                    assert_eq!(br, g.basis(g.h(i)));
                } else {
                    assert!(br.is_zero());
                }
            }
        }
    }
}

#[test]
fn structure_constants_are_integers() {
    for l in 1..=3 {
        let g = ChevalleyAlgebra::build("A", l).unwrap();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                assert!(g.bracket_basis(a, b).iter().all(|(_, c)| c.is_integer()));
            }
        }
        let rho = g.roots().rho();
        assert!(rho.iter().all(|c| c.is_one()));
    }
}

#[test]
fn vcan_vectors_are_invariant_and_graded() {
    for l in 1..=3 {
        let g = ChevalleyAlgebra::build("A", l).unwrap();
        let p1 = &g.principal_triple().p_plus;
        let v = g.vcan();
        assert_eq!(v.vectors.len(), l);
        assert_eq!(&v.vectors[0], p1);
        for (x, d) in v.vectors.iter().zip(&v.degrees) {
            assert!(g.bracket(p1, x).is_zero());
            assert_eq!(&g.component(x, *d), x);
        }
        assert_eq!(v.degrees, (1..=l as i64).collect::<Vec<_>>());
    }
}
