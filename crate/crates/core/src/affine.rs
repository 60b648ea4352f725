//! The affine algebra `g((t)) + C 1` at level `k` (in units of the trace
//! form), generalized Verma modules induced from the deeper Iwahori
//! subalgebra `I_n`, and the quadratic Segal-Sugawara modes.
//!
//! Modes are `x_m = x (x) t^m` and the bracket is
//! `[x_r, y_s] = [x, y]_{r+s} + k (x, y) r delta_{r+s,0} 1`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{BasisKind, ChevalleyAlgebra};
use crate::pbw::{Bracket, InducedData, PbwModule, PbwVector};
use crate::rational::Q;
use crate::takiff::{casimir_tensor, JetWeight};

#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub k: Q,
}

impl Level {
    pub fn new(k: Q) -> Self {
        Self { k }
    }

    /// `k = -h^vee`, i.e. minus one half of the Killing form.
    pub fn critical(alg: &ChevalleyAlgebra) -> Self {
        Self { k: alg.critical_level() }
    }

    pub fn is_critical(&self, alg: &ChevalleyAlgebra) -> bool {
        self.k == alg.critical_level()
    }
}

/// The mode `x_basis (x) t^m`. Ordered by mode first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMode {
    pub m: i64,
    pub basis: usize,
}

impl AffineMode {
    pub fn new(basis: usize, m: i64) -> Self {
        Self { m, basis }
    }
}

/// `[x_r, y_s]` as a combination of modes and a multiple of `1`.
pub fn affine_bracket(alg: &ChevalleyAlgebra, level: &Level, x: &AffineMode, y: &AffineMode) -> Bracket<AffineMode> {
    let m = x.m + y.m;
    let terms = alg
        .bracket_basis(x.basis, y.basis)
        .iter()
        .map(|(k, c)| (AffineMode::new(*k, m), c.clone()))
        .collect();
    let central = if m == 0 {
        &level.k * &alg.trace_form_matrix()[x.basis][y.basis] * Q::from_integer(x.m.into())
    } else {
        Q::zero()
    };
    Bracket { terms, central }
}

/// A module on which affine modes act and whose vectors carry a smoothness
/// bound: every mode `m >= bound(v)` kills `v`.
pub trait AffineRep {
    type V: Clone + PartialEq + std::fmt::Debug;

    fn act(&self, x: &AffineMode, v: &Self::V) -> Self::V;
    fn smooth_bound(&self, v: &Self::V) -> i64;
    fn zero(&self) -> Self::V;
    fn add_scaled(&self, acc: &mut Self::V, v: &Self::V, c: &Q);
}

/// Induction data of `M_kappa(Lambda) = Ind_{I_n + C 1}(Lambda)`.
pub struct GenVerma<'a> {
    alg: &'a ChevalleyAlgebra,
    level: Level,
    lambda: JetWeight,
}

impl InducedData for GenVerma<'_> {
    type Gen = AffineMode;

    fn is_creator(&self, g: &AffineMode) -> bool {
        g.m < 0 || (g.m < self.lambda.n() as i64 && matches!(self.alg.basis_kind(g.basis), BasisKind::F(_)))
    }

    fn bracket(&self, a: &AffineMode, b: &AffineMode) -> Bracket<AffineMode> {
        affine_bracket(self.alg, &self.level, a, b)
    }

    fn character(&self, g: &AffineMode) -> Q {
        match self.alg.basis_kind(g.basis) {
            BasisKind::H(i) if g.m < self.lambda.n() as i64 => self.lambda.label(g.m as usize, i).clone(),
            _ => Q::zero(),
        }
    }
}

pub type GenVermaVector = PbwVector<AffineMode>;

/// The generalized Verma module with its straightening engine.
pub struct GenVermaModule<'a> {
    module: PbwModule<GenVerma<'a>>,
    n: usize,
}

impl<'a> GenVermaModule<'a> {
    pub fn new(alg: &'a ChevalleyAlgebra, level: Level, lambda: &JetWeight) -> Result<Self> {
        if lambda.rank() != alg.rank() {
            return Err(Error::Dimension { expected: alg.rank(), got: lambda.rank() });
        }
        Ok(Self {
            module: PbwModule::new(GenVerma { alg, level, lambda: lambda.clone() }),
            n: lambda.n(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alg(&self) -> &'a ChevalleyAlgebra {
        self.module.data().alg
    }

    pub fn is_creator(&self, g: &AffineMode) -> bool {
        self.module.data().is_creator(g)
    }
}

impl AffineRep for GenVermaModule<'_> {
    type V = GenVermaVector;

    fn act(&self, x: &AffineMode, v: &GenVermaVector) -> GenVermaVector {
        self.module.act(x, v)
    }

    /// `n + sum |m|` over the negative modes of the longest monomial.
    fn smooth_bound(&self, v: &GenVermaVector) -> i64 {
        let extra = v
            .terms()
            .keys()
            .map(|mono| mono.iter().filter(|g| g.m < 0).map(|g| -g.m).sum::<i64>())
            .max()
            .unwrap_or(0);
        self.n as i64 + extra
    }

    fn zero(&self) -> GenVermaVector {
        PbwVector::zero()
    }

    fn add_scaled(&self, acc: &mut GenVermaVector, v: &GenVermaVector, c: &Q) {
        acc.add_scaled(v, c);
    }
}

/// `x_m . v` in the generalized Verma module.
pub fn gen_verma_act(module: &GenVermaModule<'_>, x: &AffineMode, v: &GenVermaVector) -> GenVermaVector {
    module.act(x, v)
}

/// `S_m = 1/2 sum_a sum_{r+s=m-1} :J_{a,r} J^a_s:`, the coefficient of
/// `z^{-m-1}` in the normally ordered quadratic field, applied to `v`.
/// Modes with nonnegative index are moved to the right.
pub fn sugawara_apply<R: AffineRep>(rep: &R, alg: &ChevalleyAlgebra, m: i64, v: &R::V) -> R::V {
    let bound = rep.smooth_bound(v);
    let half = Q::new(1.into(), 2.into());
    let tensor = casimir_tensor(alg);
    let mut out = rep.zero();
    for r in (m - bound)..bound {
        let s = m - 1 - r;
        for (a, b, c) in &tensor {
            let ja = AffineMode::new(*a, r);
            let jb = AffineMode::new(*b, s);
            let w = if r < 0 {
                if s >= bound {
                    continue;
                }
                rep.act(&ja, &rep.act(&jb, v))
            } else {
                rep.act(&jb, &rep.act(&ja, v))
            };
            rep.add_scaled(&mut out, &w, &(c * &half));
        }
    }
    out
}

/// Scalars of `S_m`, `n <= m < 2n`, on the vacuum of the generalized Verma
/// module, after checking that `S_m` kills it for `2n <= m < 2n + extra`.
pub fn verma_sugawara_scalars(alg: &ChevalleyAlgebra, level: &Level, lambda: &JetWeight, extra: i64) -> Result<Vec<Q>> {
    let module = GenVermaModule::new(alg, level.clone(), lambda)?;
    let vac = PbwVector::vacuum();
    let n = lambda.n() as i64;
    for m in 2 * n..2 * n + extra {
        if !sugawara_apply(&module, alg, m, &vac).is_zero() {
            return Err(Error::Invariant(format!("S_{m} does not annihilate the vacuum")));
        }
    }
    (n..2 * n)
        .map(|m| {
            sugawara_apply(&module, alg, m, &vac)
                .as_vacuum_multiple()
                .ok_or_else(|| Error::Invariant(format!("S_{m} is not scalar on the vacuum")))
        })
        .collect()
}

/// Report of [`symbol_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolReport {
    pub m: i64,
    pub n: usize,
    /// `S_m` maps the vacuum into the span of the vacuum.
    pub in_inducing_module: bool,
    /// `S_m` and its classical symbol differ by a polynomial of degree at most
    /// one along the ray `t Lambda`.
    pub symbol_matches: bool,
}

impl SymbolReport {
    pub fn passed(&self) -> bool {
        self.in_inducing_module && self.symbol_matches
    }
}

/// The symbol `1/2 sum_{r+s=m-1} sum_a J_{a,r} J^a_s` evaluated on the
/// character `Lambda` (root vectors to zero, `h_{i,r}` to `<lambda_r, h_i>`).
pub fn symbol_value(alg: &ChevalleyAlgebra, m: i64, lambda: &JetWeight) -> Q {
    let n = lambda.n() as i64;
    let value = |basis: usize, r: i64| -> Q {
        match alg.basis_kind(basis) {
            BasisKind::H(i) if (0..n).contains(&r) => lambda.label(r as usize, i).clone(),
            _ => Q::zero(),
        }
    };
    let mut total = Q::zero();
    for r in 0..n {
        let s = m - 1 - r;
        for (a, b, c) in casimir_tensor(alg) {
            total += c * value(a, r) * value(b, s);
        }
    }
    total / Q::from_integer(2.into())
}

/// Checks, for `n <= m < 2n` at the critical level, that `S_m` preserves the
/// vacuum line and acts there by its symbol up to lower filtration.
pub fn symbol_check(alg: &ChevalleyAlgebra, m: i64, lambda: &JetWeight) -> Result<SymbolReport> {
    let n = lambda.n();
    if m < n as i64 || m >= 2 * n as i64 {
        return Err(Error::Invalid(format!("symbol check needs n <= m < 2n, got m = {m}, n = {n}")));
    }
    let level = Level::critical(alg);
    let mut in_inducing_module = true;
    let mut diffs = Vec::new();
    for t in 0..3i64 {
        let scaled = lambda.scale(&Q::from_integer(t.into()));
        let module = GenVermaModule::new(alg, level.clone(), &scaled)?;
        let out = sugawara_apply(&module, alg, m, &PbwVector::vacuum());
        match out.as_vacuum_multiple() {
            Some(s) => diffs.push(s - symbol_value(alg, m, &scaled)),
            None => in_inducing_module = false,
        }
    }
    let symbol_matches =
        diffs.len() == 3 && (&diffs[0] - Q::from_integer(2.into()) * &diffs[1] + &diffs[2]).is_zero();
    Ok(SymbolReport { m, n, in_inducing_module, symbol_matches })
}

/// `[S_m, x_r] v` for the given representation.
pub fn sugawara_commutator<R: AffineRep>(rep: &R, alg: &ChevalleyAlgebra, m: i64, x: &AffineMode, v: &R::V) -> R::V {
    let a = sugawara_apply(rep, alg, m, &rep.act(x, v));
    let b = rep.act(x, &sugawara_apply(rep, alg, m, v));
    let mut out = a;
    rep.add_scaled(&mut out, &b, &-Q::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn sl2() -> ChevalleyAlgebra {
        ChevalleyAlgebra::build("A", 1).unwrap()
    }

    #[test]
    fn cocycle() {
        let g = sl2();
        let lvl = Level::new(q(3));
        let (e, h, f) = (g.e(0), g.h(0), g.f(0));
        let b = affine_bracket(&g, &lvl, &AffineMode::new(e, 0), &AffineMode::new(f, 0));
        assert_eq!(b.terms, vec![(AffineMode::new(h, 0), q(1))]);
        assert!(b.central.is_zero());
        let b = affine_bracket(&g, &lvl, &AffineMode::new(e, 1), &AffineMode::new(f, -1));
        assert_eq!(b.central, q(3));
        let b = affine_bracket(&g, &lvl, &AffineMode::new(h, 1), &AffineMode::new(h, -1));
        assert!(b.terms.is_empty());
        assert_eq!(b.central, q(6));
    }

    #[test]
    fn vacuum_properties() {
        let g = sl2();
        let lam = JetWeight::new(vec![vec![q(2)], vec![qf(1, 3)]]).unwrap();
        let m = GenVermaModule::new(&g, Level::critical(&g), &lam).unwrap();
        let vac = PbwVector::vacuum();
        for basis in 0..g.dim() {
            for mode in 2..5 {
                assert!(m.act(&AffineMode::new(basis, mode), &vac).is_zero());
            }
        }
        for j in 0..2 {
            let hv = m.act(&AffineMode::new(g.h(0), j), &vac);
            assert_eq!(hv.as_vacuum_multiple(), Some(lam.label(j as usize, 0).clone()));
        }
        // e_0 f_{-1} v = h_{-1} v + f_{-1} e_0 v = h_{-1} v.
        let w = m.act_word_for_test(&[AffineMode::new(g.e(0), 0), AffineMode::new(g.f(0), -1)]);
        assert_eq!(w, PbwVector::monomial(vec![AffineMode::new(g.h(0), -1)], q(1)));
    }

    impl GenVermaModule<'_> {
        fn act_word_for_test(&self, word: &[AffineMode]) -> GenVermaVector {
            self.module.act_word(word, &PbwVector::vacuum())
        }
    }

    #[test]
    fn sugawara_on_sl2_vacua() {
        let g = sl2();
        let crit = Level::critical(&g);
        let mu = qf(4, 5);
        let s = verma_sugawara_scalars(&g, &crit, &JetWeight::new(vec![vec![mu.clone()]]).unwrap(), 3).unwrap();
        assert_eq!(s, vec![&mu * &mu / q(4) + &mu / q(2)]);
        let (m0, m1) = (q(3), qf(-2, 7));
        let lam = JetWeight::new(vec![vec![m0.clone()], vec![m1.clone()]]).unwrap();
        let s = verma_sugawara_scalars(&g, &crit, &lam, 3).unwrap();
        assert_eq!(s, vec![&m1 * (&m0 + q(2)) / q(2), &m1 * &m1 / q(4)]);
    }

    #[test]
    fn symbols() {
        let g = sl2();
        for (n, m) in [(1usize, 1i64), (2, 2), (2, 3)] {
            let lam = JetWeight::new((0..n).map(|i| vec![qf(3 + i as i64, 2)]).collect()).unwrap();
            assert!(symbol_check(&g, m, &lam).unwrap().passed());
        }
    }
}
