//! Takiff (jet) algebras `g_n = g[t]/t^n`: weights, `rho_n`, the projection
//! `varpi` and Verma modules with their quadratic central elements.
//!
//! A [`JetWeight`] is indexed by modes: `lambdas[m]` is the weight paired with
//! `h (x) t^m`, given by Dynkin labels. Under the residue pairing the mode-`m`
//! weight is the coefficient of `t^{n-1-m}` in a jet, so [`varpi`] evaluates
//! the invariant polynomials on `sum_m lambda_m t^{n-1-m}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{BasisKind, ChevalleyAlgebra};
use crate::linalg;
use crate::opers::{chi_jet, JetInvariantClass};
use crate::pbw::{Bracket, InducedData, PbwModule, PbwVector};
use crate::rational::Q;
use crate::series::JetPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetWeight {
    lambdas: Vec<Vec<Q>>,
}

impl JetWeight {
    /// Weight with `lambdas[m]` paired with `h (x) t^m`.
    pub fn new(lambdas: Vec<Vec<Q>>) -> Result<Self> {
        let Some(first) = lambdas.first() else {
            return Err(Error::Invalid("a jet weight needs n >= 1 components".into()));
        };
        let rank = first.len();
        if rank == 0 || lambdas.iter().any(|l| l.len() != rank) {
            return Err(Error::Invalid("jet weight components must share a positive rank".into()));
        }
        Ok(Self { lambdas })
    }

    /// Weight whose jet `sum_i c_i t^i` has the given coefficients.
    pub fn from_jet(coeffs: Vec<Vec<Q>>) -> Result<Self> {
        let mut l = coeffs;
        l.reverse();
        Self::new(l)
    }

    pub fn zero(rank: usize, n: usize) -> Self {
        Self { lambdas: vec![vec![Q::zero(); rank]; n] }
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn rank(&self) -> usize {
        self.lambdas[0].len()
    }

    pub fn lambdas(&self) -> &[Vec<Q>] {
        &self.lambdas
    }

    /// `<lambda_m, h_i>`.
    pub fn label(&self, m: usize, i: usize) -> &Q {
        &self.lambdas[m][i]
    }

    /// Jet coefficients `c_0, ..., c_{n-1}` (the modes in reverse).
    pub fn jet_coeffs(&self) -> Vec<Vec<Q>> {
        self.lambdas.iter().rev().cloned().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Result<Self> {
        if self.n() != other.n() || self.rank() != other.rank() {
            return Err(Error::Invalid("jet weights of different shapes".into()));
        }
        Ok(Self {
            lambdas: self
                .lambdas
                .iter()
                .zip(&other.lambdas)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            lambdas: self.lambdas.iter().map(|l| l.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            lambdas: self.lambdas.iter().map(|l| l.iter().map(|x| x * c).collect()).collect(),
        }
    }
}

/// `rho_n = (n rho, 0, ..., 0)`.
pub fn rho_n(alg: &ChevalleyAlgebra, n: usize) -> Result<JetWeight> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let mut w = JetWeight::zero(alg.rank(), n);
    w.lambdas[0] = alg.roots().rho().iter().map(|r| r * Q::from_integer((n as i64).into())).collect();
    Ok(w)
}

/// The projection `h*_n -> (h*/W)_n`.
pub fn varpi(alg: &ChevalleyAlgebra, lambda: &JetWeight) -> Result<JetInvariantClass> {
    if lambda.rank() != alg.rank() {
        return Err(Error::Dimension { expected: alg.rank(), got: lambda.rank() });
    }
    let n = lambda.n();
    let cartan = lambda
        .jet_coeffs()
        .iter()
        .map(|mu| alg.weight_to_cartan(mu))
        .collect::<Result<Vec<_>>>()?;
    let coeffs: Vec<JetPoly> = (0..alg.dim())
        .map(|b| JetPoly::new(cartan.iter().map(|h| h.get(b).clone()).collect()).expect("n >= 1"))
        .collect();
    let class = chi_jet(alg, &coeffs);
    debug_assert_eq!(class.len(), n);
    Ok(class)
}

/// Geoffriau's central character `varpi(Lambda + rho_n)` of `M(Lambda)`.
pub fn geoffriau_character(alg: &ChevalleyAlgebra, lambda: &JetWeight) -> Result<JetInvariantClass> {
    varpi(alg, &lambda.add(&rho_n(alg, lambda.n())?)?)
}

/// The generator `x_basis (x) t^degree` of `g_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TakiffGen {
    pub basis: usize,
    pub degree: usize,
}

/// A formal sum of generators of `g_n`.
pub type TakiffElement = Vec<(TakiffGen, Q)>;

pub type TakiffVermaVector = PbwVector<TakiffGen>;

/// Induction data of the Verma module `M(Lambda)` over `g_n`.
pub struct TakiffVerma<'a> {
    alg: &'a ChevalleyAlgebra,
    lambda: JetWeight,
}

impl InducedData for TakiffVerma<'_> {
    type Gen = TakiffGen;

    fn is_creator(&self, g: &TakiffGen) -> bool {
        matches!(self.alg.basis_kind(g.basis), BasisKind::F(_))
    }

    fn bracket(&self, a: &TakiffGen, b: &TakiffGen) -> Bracket<TakiffGen> {
        let degree = a.degree + b.degree;
        let terms = if degree >= self.lambda.n() {
            Vec::new()
        } else {
            self.alg
                .bracket_basis(a.basis, b.basis)
                .iter()
                .map(|(k, c)| (TakiffGen { basis: *k, degree }, c.clone()))
                .collect()
        };
        Bracket { terms, central: Q::zero() }
    }

    fn character(&self, g: &TakiffGen) -> Q {
        match self.alg.basis_kind(g.basis) {
            BasisKind::H(i) => self.lambda.label(g.degree, i).clone(),
            _ => Q::zero(),
        }
    }
}

/// `M(Lambda)` with its straightening engine.
pub fn takiff_verma<'a>(alg: &'a ChevalleyAlgebra, lambda: &JetWeight) -> Result<PbwModule<TakiffVerma<'a>>> {
    if lambda.rank() != alg.rank() {
        return Err(Error::Dimension { expected: alg.rank(), got: lambda.rank() });
    }
    Ok(PbwModule::new(TakiffVerma { alg, lambda: lambda.clone() }))
}

/// Applies an element of `g_n` to a Verma vector.
pub fn verma_act(module: &PbwModule<TakiffVerma<'_>>, x: &TakiffElement, v: &TakiffVermaVector) -> TakiffVermaVector {
    let mut out = PbwVector::zero();
    for (g, c) in x {
        out.add_scaled(&module.act(g, v), c);
    }
    out
}

/// Every generator of `g_n`.
pub fn takiff_generators(alg: &ChevalleyAlgebra, n: usize) -> Vec<TakiffGen> {
    (0..alg.dim())
        .flat_map(|basis| (0..n).map(move |degree| TakiffGen { basis, degree }))
        .collect()
}

/// Verma vectors `f...f v_Lambda` of length at most `depth`.
pub fn verma_monomials(alg: &ChevalleyAlgebra, n: usize, depth: usize) -> Vec<Vec<TakiffGen>> {
    let creators: Vec<TakiffGen> = takiff_generators(alg, n)
        .into_iter()
        .filter(|g| matches!(alg.basis_kind(g.basis), BasisKind::F(_)))
        .collect();
    PbwModule::<TakiffVerma<'_>>::monomials(&creators, depth)
}

/// Pairs `(a, b, c)` with `sum_a J_a (x) J^a = sum c J_a (x) J_b`, the dual
/// basis taken with respect to the trace form.
pub fn casimir_tensor(alg: &ChevalleyAlgebra) -> Vec<(usize, usize, Q)> {
    let inv = linalg::inverse(alg.trace_form_matrix()).expect("trace form is nondegenerate");
    let mut out = Vec::new();
    for (a, row) in inv.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.push((a, b, c.clone()));
            }
        }
    }
    out
}

/// `C_a = sum_{i+j=a} sum_b (J_b (x) t^i)(J^b (x) t^j)` in `U(g_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralQuadratic {
    pub a: usize,
    pub n: usize,
    pub terms: Vec<(TakiffGen, TakiffGen, Q)>,
}

impl CentralQuadratic {
    /// Requires `n - 1 <= a <= 2n - 2`.
    pub fn new(alg: &ChevalleyAlgebra, n: usize, a: usize) -> Result<Self> {
        if n == 0 || a + 1 < n || a > 2 * n - 2 {
            return Err(Error::Invalid(format!("quadratic index {a} outside [n-1, 2n-2] for n = {n}")));
        }
        let mut terms = Vec::new();
        for i in 0..n {
            let Some(j) = a.checked_sub(i) else { continue };
            if j >= n {
                continue;
            }
            for (x, y, c) in casimir_tensor(alg) {
                terms.push((TakiffGen { basis: x, degree: i }, TakiffGen { basis: y, degree: j }, c));
            }
        }
        Ok(Self { a, n, terms })
    }

    pub fn apply(&self, module: &PbwModule<TakiffVerma<'_>>, v: &TakiffVermaVector) -> TakiffVermaVector {
        let mut out = PbwVector::zero();
        for (x, y, c) in &self.terms {
            out.add_scaled(&module.act(x, &module.act(y, v)), c);
        }
        out
    }
}

/// Scalar by which `C` acts on the highest-weight vector of `M(Lambda)`.
pub fn central_eigenvalue(alg: &ChevalleyAlgebra, c: &CentralQuadratic, lambda: &JetWeight) -> Result<Q> {
    if lambda.n() != c.n {
        return Err(Error::Invalid("weight and central element have different n".into()));
    }
    let module = takiff_verma(alg, lambda)?;
    c.apply(&module, &PbwVector::vacuum())
        .as_vacuum_multiple()
        .ok_or_else(|| Error::Invariant("quadratic element does not act by a scalar on the vacuum".into()))
}

/// Commutators `[C, x]` applied to all Verma monomials of length at most
/// `depth`; returns the failing `(generator, monomial)` pairs.
pub fn centrality_failures(
    alg: &ChevalleyAlgebra,
    c: &CentralQuadratic,
    lambda: &JetWeight,
    depth: usize,
) -> Result<Vec<(TakiffGen, Vec<TakiffGen>)>> {
    let module = takiff_verma(alg, lambda)?;
    let mut failures = Vec::new();
    for m in verma_monomials(alg, c.n, depth) {
        let v = PbwVector::monomial(m.clone(), Q::from_integer(1.into()));
        let cv = c.apply(&module, &v);
        for g in takiff_generators(alg, c.n) {
            let lhs = c.apply(&module, &module.act(&g, &v));
            let rhs = module.act(&g, &cv);
            if lhs != rhs {
                failures.push((g, m.clone()));
            }
        }
    }
    Ok(failures)
}
