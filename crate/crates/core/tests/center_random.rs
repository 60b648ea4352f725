use std::collections::BTreeMap;

use jetoper::affine::{sugawara_commutator, AffineMode, GenVermaModule, Level, AffineRep};
use jetoper::liealg::{BasisKind, ChevalleyAlgebra};
use jetoper::pbw::PbwVector;
use jetoper::rational::{q, Q};
use jetoper::random::Sampler;
use jetoper::takiff::{central_eigenvalue, centrality_failures, geoffriau_character, rho_n, CentralQuadratic, JetWeight};
use num_traits::Zero;

fn sl2() -> ChevalleyAlgebra {
    ChevalleyAlgebra::build("A", 1).unwrap()
}

/// Test vectors: products of up to `depth` creators with modes in `[-2, n)`.
fn test_vectors(g: &ChevalleyAlgebra, module: &GenVermaModule<'_>, depth: usize, n: i64) -> Vec<PbwVector<AffineMode>> {
    let mut creators = Vec::new();
    for m in -2..n {
        for b in 0..g.dim() {
            let x = AffineMode::new(b, m);
            if module.is_creator(&x) {
                creators.push(x);
            }
        }
    }
    let mut out = vec![PbwVector::vacuum()];
    let mut frontier = vec![(PbwVector::vacuum(), 0usize)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (v, start) in &frontier {
            for (i, c) in creators.iter().enumerate().skip(*start).step_by(2) {
                let w = module.act(c, v);
                out.push(w.clone());
                next.push((w, i));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn sugawara_is_central_at_the_critical_level() {
    let g = sl2();
    let mut s = Sampler::with_bound(51, 10);
    for n in 1..=2usize {
        let lam = s.jet_weight(1, n);
        let module = GenVermaModule::new(&g, Level::critical(&g), &lam).unwrap();
        let vs = test_vectors(&g, &module, 2, n as i64);
        for m in [0i64, 1, 2, 3] {
            for v in &vs {
                for b in 0..g.dim() {
                    for r in -1..=1 {
                        let c = sugawara_commutator(&module, &g, m, &AffineMode::new(b, r), v);
                        assert!(c.is_zero(), "n={n} m={m} b={b} r={r}");
                    }
                }
            }
        }
    }
}

#[test]
fn sugawara_is_not_central_off_criticality() {
    let g = sl2();
    let lam = JetWeight::new(vec![vec![q(1)]]).unwrap();
    let module = GenVermaModule::new(&g, Level::new(q(1)), &lam).unwrap();
    let v = module.act(&AffineMode::new(g.f(0), -1), &PbwVector::vacuum());
    let c = sugawara_commutator(&module, &g, 1, &AffineMode::new(g.e(0), -1), &v);
    assert!(!c.is_zero());
}

/// Independent straightening: rewrite words until every letter is a sorted
/// creator, one adjacent swap or annihilation at a time.
fn oracle_eigenvalue(g: &ChevalleyAlgebra, n: usize, lam: &[Q], a: usize) -> Q {
    type Letter = (usize, usize); // (basis, degree)
    let creator = |l: &Letter| matches!(g.basis_kind(l.0), BasisKind::F(_));
    let dual = jetoper::linalg::inverse(g.trace_form_matrix()).unwrap();
    let mut todo: Vec<(Vec<Letter>, Q)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i + j != a {
                continue;
            }
            for x in 0..g.dim() {
                for y in 0..g.dim() {
                    if !dual[x][y].is_zero() {
                        todo.push((vec![(x, i), (y, j)], dual[x][y].clone()));
                    }
                }
            }
        }
    }
    let mut done: BTreeMap<Vec<Letter>, Q> = BTreeMap::new();
    while let Some((w, c)) = todo.pop() {
        if c.is_zero() {
            continue;
        }
        // Rightmost letter that is not a creator acts on the vacuum directly
        // if it is last; otherwise swap it rightwards.
        let pos = w.iter().rposition(|l| !creator(l));
        let bad = match pos {
            Some(p) => Some(p),
            None => (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]),
        };
        let Some(p) = bad else {
            *done.entry(w).or_insert_with(Q::zero) += c;
            continue;
        };
        if pos.is_some() && p == w.len() - 1 {
            let l = w[p];
            let val = match g.basis_kind(l.0) {
                BasisKind::H(_) => lam[l.1].clone(),
                _ => Q::zero(),
            };
            todo.push((w[..p].to_vec(), c * val));
            continue;
        }
        let (x, y) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        todo.push((swapped, c.clone()));
        if x.1 + y.1 < n {
            let br = g.bracket(&g.basis(x.0), &g.basis(y.0));
            for (k, bk) in br.coeffs().iter().enumerate() {
                if !bk.is_zero() {
                    let mut shorter = w[..p].to_vec();
                    shorter.push((k, x.1 + y.1));
                    shorter.extend_from_slice(&w[p + 2..]);
                    todo.push((shorter, &c * bk));
                }
            }
        }
    }
    assert!(done.keys().all(Vec::is_empty), "non-scalar result");
    done.get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
}

#[test]
fn takiff_quadratics_are_central_and_match_the_oracle() {
    let g = sl2();
    let mut s = Sampler::with_bound(52, 20);
    for n in 1..=3usize {
        let lam = s.jet_weight(1, n);
        let labels: Vec<Q> = lam.lambdas().iter().map(|l| l[0].clone()).collect();
        for a in n - 1..=2 * n - 2 {
            let c = CentralQuadratic::new(&g, n, a).unwrap();
            assert!(centrality_failures(&g, &c, &lam, 3).unwrap().is_empty());
            let val = central_eigenvalue(&g, &c, &lam).unwrap();
            assert_eq!(val, oracle_eigenvalue(&g, n, &labels, a));
            // Reflection Lambda + rho_n -> -(Lambda + rho_n).
            let rho = rho_n(&g, n).unwrap();
            let reflected = lam.add(&rho).unwrap().neg().sub(&rho).unwrap();
            assert_eq!(central_eigenvalue(&g, &c, &reflected).unwrap(), val);
            assert_eq!(geoffriau_character(&g, &reflected).unwrap(), geoffriau_character(&g, &lam).unwrap());
            // Eigenvalue through varpi(Lambda + rho_n).
            let jet = geoffriau_character(&g, &lam).unwrap();
            let mut expect = q(2) * &jet.jets[0].coeffs()[2 * n - 2 - a];
            if n == 1 {
                expect -= Q::new(1.into(), 2.into());
            }
            assert_eq!(val, expect);
        }
    }
}

#[test]
fn sl3_quadratics_are_central() {
    let g = ChevalleyAlgebra::build("A", 2).unwrap();
    let mut s = Sampler::with_bound(53, 20);
    for n in 1..=2usize {
        let lam = s.jet_weight(2, n);
        for a in n - 1..=2 * n - 2 {
            let c = CentralQuadratic::new(&g, n, a).unwrap();
            assert!(centrality_failures(&g, &c, &lam, 2).unwrap().is_empty());
        }
    }
}

#[test]
fn smooth_bounds_are_honest() {
    let g = sl2();
    let lam = JetWeight::new(vec![vec![q(2)], vec![q(5)]]).unwrap();
    let module = GenVermaModule::new(&g, Level::critical(&g), &lam).unwrap();
    let v = module.act(&AffineMode::new(g.e(0), -2), &module.act(&AffineMode::new(g.f(0), 1), &PbwVector::vacuum()));
    let bound = module.smooth_bound(&v);
    assert_eq!(bound, 4);
    for b in 0..g.dim() {
        for m in bound..bound + 3 {
            assert!(module.act(&AffineMode::new(b, m), &v).is_zero());
        }
    }
}
