//! Simple Lie algebras of type A in a Chevalley basis.
//!
//! `A_l` is realized as traceless `(l+1) x (l+1)` matrices with
//! `e_{ij} = E_ij` (`i < j`), `f_{ij} = E_ji` and `h_i = E_ii - E_{i+1,i+1}`.
//! Structure constants are read off matrix commutators, so they are exact
//! integers. Weights are stored by their Dynkin labels `<lambda, h_i>`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::series::{CRing, Coeff, TruncLaurent};

/// Largest rank accepted by [`ChevalleyAlgebra::build`]; labels use one digit
/// per simple root.
pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    E(usize),
    H(usize),
    F(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coordinates in the simple roots.
    pub coords: Vec<i64>,
    /// Matrix indices `(i, j)` with `i < j` of the root vector `E_ij`.
    pub span: (usize, usize),
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
    /// Exponents in increasing order.
    pub exponents: Vec<i64>,
    /// `w0(alpha) = -alpha[w0_roots[alpha]]` on positive roots.
    pub w0_roots: Vec<usize>,
}

impl RootSystemData {
    /// Dynkin labels `<beta, h_i>` of a positive root.
    pub fn root_labels(&self, r: usize) -> Vec<i64> {
        let b = &self.positive_roots[r].coords;
        (0..self.cartan.len())
            .map(|i| b.iter().enumerate().map(|(j, bj)| bj * self.cartan[i][j]).sum())
            .collect()
    }

    /// Longest Weyl group element on Dynkin labels.
    pub fn w0_weight(&self, mu: &[Q]) -> Vec<Q> {
        let l = mu.len();
        (0..l).map(|i| -mu[l - 1 - i].clone()).collect()
    }

    /// `rho` in Dynkin labels: the half-sum of positive roots.
    pub fn rho(&self) -> Vec<Q> {
        vec![Q::one(); self.cartan.len()]
    }
}

/// An element of the algebra with coefficients in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieElement {
    coeffs: Vec<Q>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![Q::zero(); dim] }
    }

    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        Self { coeffs }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut x = Self::zero(dim);
        x.coeffs[k] = Q::one();
        x
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn get(&self, k: usize) -> &Q {
        &self.coeffs[k]
    }

    pub fn set(&mut self, k: usize, c: Q) {
        self.coeffs[k] = c;
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &Q) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl Coeff for LieElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.dim())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "Lie elements from different algebras");
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    fn scale(&self, s: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }
}

/// A Lie-algebra-valued Laurent series.
pub type LieSeries = TruncLaurent<LieElement>;

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalTriple {
    pub p_minus: LieElement,
    pub semisimple: LieElement,
    pub p_plus: LieElement,
}

/// Graded basis of `ker(ad p_1)` inside the positive nilradical.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalSubspace {
    pub vectors: Vec<LieElement>,
    pub degrees: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rank: usize,
    roots: RootSystemData,
    kinds: Vec<BasisKind>,
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// `brackets[a][b]` is `[x_a, x_b]` as a sparse combination.
    brackets: Vec<Vec<Vec<(usize, Q)>>>,
    /// Defining-representation matrix of each basis element.
    matrices: Vec<Matrix>,
    trace_form: Matrix,
    killing: Matrix,
    triple: PrincipalTriple,
    vcan: CanonicalSubspace,
    /// `P_i(p_{-1} + p_i)`, the leading Kostant coefficients.
    kostant_leading: Vec<Q>,
}

fn root_label(prefix: char, r: &PositiveRoot) -> String {
    let mut s = String::from(prefix);
    for k in r.span.0..r.span.1 {
        s.push_str(&(k + 1).to_string());
    }
    s
}

impl ChevalleyAlgebra {
    /// Builds `A_rank` for `1 <= rank <= MAX_RANK`.
    pub fn build(kind: &str, rank: usize) -> Result<Self> {
        if !kind.eq_ignore_ascii_case("A") || rank == 0 || rank > MAX_RANK {
            return Err(Error::UnsupportedAlgebra { kind: kind.to_string(), rank });
        }
        let l = rank;
        let size = l + 1;
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let mut positive_roots: Vec<PositiveRoot> = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                let coords = (0..l).map(|k| i64::from(k >= i && k < j)).collect();
                positive_roots.push(PositiveRoot { coords, span: (i, j) });
            }
        }
        positive_roots.sort_by_key(|r| (r.height(), r.span));
        let w0_roots = positive_roots
            .iter()
            .map(|r| {
                let target = (l - r.span.1, l - r.span.0);
                positive_roots.iter().position(|s| s.span == target).expect("w0 permutes roots")
            })
            .collect();

        let mut kinds = Vec::new();
        kinds.extend((0..positive_roots.len()).map(BasisKind::E));
        kinds.extend((0..l).map(BasisKind::H));
        kinds.extend((0..positive_roots.len()).map(BasisKind::F));
        let dim = kinds.len();

        let mut labels = Vec::with_capacity(dim);
        let mut degrees = Vec::with_capacity(dim);
        let mut matrices = Vec::with_capacity(dim);
        for k in &kinds {
            let mut m = linalg::zeros(size, size);
            match *k {
                BasisKind::E(r) => {
                    let (i, j) = positive_roots[r].span;
                    m[i][j] = Q::one();
                    labels.push(root_label('e', &positive_roots[r]));
                    degrees.push(positive_roots[r].height());
                }
                BasisKind::F(r) => {
                    let (i, j) = positive_roots[r].span;
                    m[j][i] = Q::one();
                    labels.push(root_label('f', &positive_roots[r]));
                    degrees.push(-positive_roots[r].height());
                }
                BasisKind::H(i) => {
                    m[i][i] = Q::one();
                    m[i + 1][i + 1] = -Q::one();
                    labels.push(format!("h{}", i + 1));
                    degrees.push(0);
                }
            }
            matrices.push(m);
        }

        let mut alg = Self {
            rank: l,
            roots: RootSystemData { cartan, positive_roots, exponents: Vec::new(), w0_roots },
            kinds,
            labels,
            degrees,
            brackets: Vec::new(),
            matrices,
            trace_form: Vec::new(),
            killing: Vec::new(),
            triple: PrincipalTriple {
                p_minus: LieElement::zero(dim),
                semisimple: LieElement::zero(dim),
                p_plus: LieElement::zero(dim),
            },
            vcan: CanonicalSubspace { vectors: Vec::new(), degrees: Vec::new() },
            kostant_leading: Vec::new(),
        };

        alg.brackets = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let c = commutator(&alg.matrices[a], &alg.matrices[b]);
                        let x = alg.from_matrix(&c).expect("commutator is traceless");
                        x.coeffs
                            .iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(k, v)| (k, v.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        alg.trace_form = (0..dim)
            .map(|a| (0..dim).map(|b| trace(&mat_mul(&alg.matrices[a], &alg.matrices[b]))).collect())
            .collect();
        let ads: Vec<Matrix> = (0..dim).map(|a| alg.ad_matrix(&LieElement::basis(dim, a))).collect();
        alg.killing = (0..dim)
            .map(|a| (0..dim).map(|b| trace(&mat_mul(&ads[a], &ads[b]))).collect())
            .collect();

        alg.triple = alg.compute_triple()?;
        alg.vcan = alg.compute_vcan()?;
        alg.roots.exponents = alg.vcan.degrees.clone();
        alg.kostant_leading = (0..l)
            .map(|i| {
                let x = alg.triple.p_minus.add_coeff(&alg.vcan.vectors[i]);
                alg.chi(&x)[i].clone()
            })
            .collect();
        if alg.kostant_leading.iter().any(Zero::is_zero) {
            return Err(Error::Invariant("Kostant section is not triangular".into()));
        }
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> &'static str {
        "A"
    }

    pub fn dim(&self) -> usize {
        self.kinds.len()
    }

    pub fn roots(&self) -> &RootSystemData {
        &self.roots
    }

    pub fn exponents(&self) -> &[i64] {
        &self.roots.exponents
    }

    pub fn basis_kind(&self, k: usize) -> BasisKind {
        self.kinds[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    /// Basis index of a label. In rank one `e`, `h`, `f` are accepted too.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        let canonical = match (self.rank, label) {
            (1, "e") => "e1",
            (1, "h") => "h1",
            (1, "f") => "f1",
            _ => label,
        };
        self.labels.iter().position(|l| l == canonical)
    }

    /// Principal degree of a basis vector: `ht(alpha)`, `0` or `-ht(alpha)`.
    pub fn degree(&self, k: usize) -> i64 {
        self.degrees[k]
    }

    pub fn max_degree(&self) -> i64 {
        self.roots.positive_roots.last().map_or(0, PositiveRoot::height)
    }

    pub fn e(&self, r: usize) -> usize {
        r
    }

    pub fn f(&self, r: usize) -> usize {
        self.roots.positive_roots.len() + self.rank + r
    }

    pub fn h(&self, i: usize) -> usize {
        self.roots.positive_roots.len() + i
    }

    /// Index of the positive root whose Chevalley vector is `e_{alpha_i}`.
    pub fn simple_root(&self, i: usize) -> usize {
        self.roots
            .positive_roots
            .iter()
            .position(|r| r.span == (i, i + 1))
            .expect("simple roots are positive roots")
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(self.dim())
    }

    pub fn basis(&self, k: usize) -> LieElement {
        LieElement::basis(self.dim(), k)
    }

    /// Sparse structure constants of `[x_a, x_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.brackets[a][b]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = self.zero();
        for (a, xa) in x.coeffs.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coeffs.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (k, c) in &self.brackets[a][b] {
                    out.coeffs[*k] += c * &s;
                }
            }
        }
        out
    }

    /// Pointwise bracket of Lie-valued series, truncated like a product.
    pub fn bracket_series(&self, x: &LieSeries, y: &LieSeries) -> LieSeries {
        crate::series::cauchy(x, y, self.zero(), |a, b| self.bracket(a, b))
    }

    /// Matrix of `ad x` on the Chevalley basis (column `b` is `[x, x_b]`).
    pub fn ad_matrix(&self, x: &LieElement) -> Matrix {
        let dim = self.dim();
        let mut m = linalg::zeros(dim, dim);
        for b in 0..dim {
            let col = self.bracket(x, &self.basis(b));
            for (k, c) in col.coeffs.into_iter().enumerate() {
                m[k][b] = c;
            }
        }
        m
    }

    /// `exp(ad y) x` for nilpotent `y`; the series is finite.
    pub fn exp_ad(&self, y: &LieElement, x: &LieElement) -> LieElement {
        let mut out = x.clone();
        let mut term = x.clone();
        let mut k = 1i64;
        loop {
            term = self.bracket(y, &term).scale(&Q::new(1.into(), k.into()));
            if term.is_zero() {
                return out;
            }
            out = out.add_coeff(&term);
            k += 1;
            assert!(k <= 4 * self.dim() as i64, "exp(ad y) requires nilpotent y");
        }
    }

    pub fn to_matrix(&self, x: &LieElement) -> Matrix {
        let n = self.rank + 1;
        let mut m = linalg::zeros(n, n);
        for (k, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, row) in self.matrices[k].iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        m[i][j] += v * c;
                    }
                }
            }
        }
        m
    }

    /// Inverse of [`Self::to_matrix`]; rejects matrices with nonzero trace.
    pub fn from_matrix(&self, m: &Matrix) -> Result<LieElement> {
        let n = self.rank + 1;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, got: m.len() });
        }
        let mut x = self.zero();
        for (r, root) in self.roots.positive_roots.iter().enumerate() {
            let (i, j) = root.span;
            x.coeffs[self.e(r)] = m[i][j].clone();
            x.coeffs[self.f(r)] = m[j][i].clone();
        }
        let mut running = Q::zero();
        for i in 0..self.rank {
            running += &m[i][i];
            x.coeffs[self.h(i)] = running.clone();
        }
        if !(running + &m[self.rank][self.rank]).is_zero() {
            return Err(Error::Invalid("matrix is not traceless".into()));
        }
        Ok(x)
    }

    /// The trace form of the defining representation (long roots have
    /// square length two).
    pub fn trace_form(&self, x: &LieElement, y: &LieElement) -> Q {
        bilinear(&self.trace_form, x, y)
    }

    pub fn trace_form_matrix(&self) -> &Matrix {
        &self.trace_form
    }

    pub fn killing_form(&self, x: &LieElement, y: &LieElement) -> Q {
        bilinear(&self.killing, x, y)
    }

    /// Killing form divided by twice the trace form.
    pub fn dual_coxeter(&self) -> Q {
        let h = self.basis(self.h(0));
        self.killing_form(&h, &h) / (Q::from_integer(2.into()) * self.trace_form(&h, &h))
    }

    /// Critical level in units of the trace form: `-h^vee`.
    pub fn critical_level(&self) -> Q {
        -self.dual_coxeter()
    }

    /// Cartan element `sum_j c_j h_j` paired with Dynkin labels `mu` through
    /// the trace form.
    pub fn weight_to_cartan(&self, mu: &[Q]) -> Result<LieElement> {
        if mu.len() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: mu.len() });
        }
        let a: Matrix = self
            .roots
            .cartan
            .iter()
            .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
            .collect();
        let c = linalg::solve(&a, mu).ok_or_else(|| Error::Invariant("Cartan matrix is singular".into()))?;
        let mut x = self.zero();
        for (i, ci) in c.into_iter().enumerate() {
            x.coeffs[self.h(i)] = ci;
        }
        Ok(x)
    }

    /// Dynkin labels of the weight `kappa_0(h, .)` for a Cartan element `h`.
    pub fn cartan_to_weight(&self, h: &LieElement) -> Vec<Q> {
        (0..self.rank)
            .map(|i| self.trace_form(h, &self.basis(self.h(i))))
            .collect()
    }

    pub fn principal_triple(&self) -> &PrincipalTriple {
        &self.triple
    }

    pub fn vcan(&self) -> &CanonicalSubspace {
        &self.vcan
    }

    fn compute_triple(&self) -> Result<PrincipalTriple> {
        let mut p_minus = self.zero();
        for i in 0..self.rank {
            p_minus.coeffs[self.f(self.simple_root(i))] = Q::one();
        }
        let two = vec![Q::from_integer(2.into()); self.rank];
        let semisimple = self.weight_to_cartan(&two)?;
        let mut p_plus = self.zero();
        for i in 0..self.rank {
            p_plus.coeffs[self.e(self.simple_root(i))] = semisimple.coeffs[self.h(i)].clone();
        }
        let t = PrincipalTriple { p_minus, semisimple, p_plus };
        if self.bracket(&t.p_plus, &t.p_minus) != t.semisimple {
            return Err(Error::Invariant("principal triple relation fails".into()));
        }
        Ok(t)
    }

    fn compute_vcan(&self) -> Result<CanonicalSubspace> {
        let ad = self.ad_matrix(&self.triple.p_plus);
        let mut vectors = Vec::new();
        let mut degrees = Vec::new();
        for d in 1..=self.max_degree() {
            let idx: Vec<usize> = (0..self.dim()).filter(|&k| self.degrees[k] == d).collect();
            let sub: Matrix = ad.iter().map(|row| idx.iter().map(|&k| row[k].clone()).collect()).collect();
            let kernel = linalg::nullspace(&sub, idx.len());
            if d == 1 {
                if kernel.len() != 1 {
                    return Err(Error::Invariant("degree-one invariants are not one-dimensional".into()));
                }
                vectors.push(self.triple.p_plus.clone());
                degrees.push(1);
                continue;
            }
            for v in kernel {
                let mut x = self.zero();
                for (k, c) in idx.iter().zip(v) {
                    x.coeffs[*k] = c;
                }
                vectors.push(x);
                degrees.push(d);
            }
        }
        if vectors.len() != self.rank {
            return Err(Error::Invariant("dim V_can differs from the rank".into()));
        }
        Ok(CanonicalSubspace { vectors, degrees })
    }

    /// Projection onto principal degree `d`.
    pub fn component(&self, x: &LieElement, d: i64) -> LieElement {
        let mut out = self.zero();
        for k in 0..self.dim() {
            if self.degrees[k] == d {
                out.coeffs[k] = x.coeffs[k].clone();
            }
        }
        out
    }

    /// True when `x` lies in the Borel subalgebra (no `f` components).
    pub fn in_borel(&self, x: &LieElement) -> bool {
        (0..self.dim()).all(|k| self.degrees[k] >= 0 || x.coeffs[k].is_zero())
    }

    /// Invariant polynomials `P_1, ..., P_l` evaluated over any commutative
    /// ring. `P_i = (-1)^i e_{i+1}(X)` in the defining representation, so that
    /// `P_1` is quadratic and `chi(f + c e) = c` on `sl_2`.
    pub fn chi_over<R: CRing>(&self, coeffs: &[R]) -> Vec<R> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient vector has wrong dimension");
        let n = self.rank + 1;
        let zero = coeffs[0].zero_like();
        let mut x = vec![vec![zero.clone(); n]; n];
        for (k, c) in coeffs.iter().enumerate() {
            for (i, row) in self.matrices[k].iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        x[i][j] = x[i][j].radd(&c.rscale(v));
                    }
                }
            }
        }
        char_poly_tail(&x)
            .into_iter()
            .skip(2)
            .map(|a| a.rneg())
            .collect()
    }

    pub fn chi(&self, x: &LieElement) -> Vec<Q> {
        self.chi_over(&x.coeffs)
    }

    /// Coordinates `c` with `chi(p_{-1} + sum_j c_j p_j) = target`, solved
    /// triangularly over any commutative ring.
    pub fn kostant_inverse<R: CRing>(&self, target: &[R]) -> Result<Vec<R>> {
        if target.len() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: target.len() });
        }
        let zero = target[0].zero_like();
        let one = zero.one_like();
        let mut c: Vec<R> = vec![zero.clone(); self.rank];
        for i in 0..self.rank {
            let x = self.kostant_point(&c, &one);
            let g = self.chi_over(&x)[i].clone();
            let inv = Q::one() / &self.kostant_leading[i];
            c[i] = target[i].rsub(&g).rscale(&inv);
        }
        Ok(c)
    }

    /// Coefficient vector of `p_{-1} + sum_j c_j p_j` over a ring.
    pub fn kostant_point<R: CRing>(&self, c: &[R], one: &R) -> Vec<R> {
        let zero = one.zero_like();
        let mut x: Vec<R> = self
            .triple
            .p_minus
            .coeffs
            .iter()
            .map(|v| if v.is_zero() { zero.clone() } else { one.rscale(v) })
            .collect();
        for (cj, pj) in c.iter().zip(&self.vcan.vectors) {
            for (k, v) in pj.coeffs.iter().enumerate() {
                if !v.is_zero() {
                    x[k] = x[k].radd(&cj.rscale(v));
                }
            }
        }
        x
    }

    /// Checks that `c -> chi(p_{-1} + sum c_j p_j)` is triangular with
    /// nonzero leading coefficients and recovers each sample.
    pub fn kostant_check(&self, samples: &[Vec<Q>]) -> KostantReport {
        let mut failures = Vec::new();
        for s in samples {
            if s.len() != self.rank {
                failures.push(format!("sample {s:?} has wrong length"));
                continue;
            }
            let x = self.kostant_point(s, &Q::one());
            let values = self.chi_over(&x);
            match self.kostant_inverse(&values) {
                Ok(back) if back == *s => {}
                _ => failures.push(format!("sample {s:?} not recovered")),
            }
            for i in 0..self.rank {
                let mut bumped = s.clone();
                for v in bumped.iter_mut().skip(i + 1) {
                    *v += Q::one();
                }
                let y = self.kostant_point(&bumped, &Q::one());
                if self.chi_over(&y)[i] != values[i] {
                    failures.push(format!("P_{} depends on later coordinates at {s:?}", i + 1));
                }
            }
        }
        KostantReport {
            leading: self.kostant_leading.clone(),
            samples: samples.len(),
            failures,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KostantReport {
    pub leading: Vec<Q>,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl KostantReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.leading.iter().all(|c| !c.is_zero())
    }
}

fn bilinear(m: &Matrix, x: &LieElement, y: &LieElement) -> Q {
    let mut s = Q::zero();
    for (a, xa) in x.coeffs.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.coeffs.iter().enumerate() {
            if !yb.is_zero() && !m[a][b].is_zero() {
                s += xa * yb * &m[a][b];
            }
        }
    }
    s
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = linalg::zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn trace(a: &Matrix) -> Q {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Characteristic polynomial coefficients `a_0 = 1, a_1, ..., a_n` of
/// `det(lambda - X) = sum a_k lambda^{n-k}`, by Faddeev-LeVerrier.
fn char_poly_tail<R: CRing>(x: &[Vec<R>]) -> Vec<R> {
    let n = x.len();
    let zero = x[0][0].zero_like();
    let one = zero.one_like();
    let ring_mul = |a: &[Vec<R>], b: &[Vec<R>]| -> Vec<Vec<R>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(zero.clone(), |acc, k| acc.radd(&a[i][k].rmul(&b[k][j]))))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![one.clone()];
    let mut m: Vec<Vec<R>> = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let mut next = ring_mul(x, &m);
        let prev = coeffs[k - 1].clone();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].radd(&prev);
        }
        m = next;
        let xm = ring_mul(x, &m);
        let tr = (0..n).fold(zero.clone(), |acc, i| acc.radd(&xm[i][i]));
        coeffs.push(tr.rscale(&Q::new((-1).into(), (k as i64).into())));
    }
    coeffs
}

/// Dynkin-label helpers collected for the other modules.
pub fn weight_map(alg: &ChevalleyAlgebra, mu: &[Q]) -> BTreeMap<String, Q> {
    mu.iter()
        .enumerate()
        .map(|(i, v)| (alg.label(alg.h(i)).to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn sl(n: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build("A", n).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = sl(1);
        let (e, h, f) = (g.basis(g.e(0)), g.basis(g.h(0)), g.basis(g.f(0)));
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.bracket(&h, &e), e.scale(&q(2)));
        assert_eq!(g.bracket(&h, &f), f.scale(&q(-2)));
        assert_eq!(g.exponents(), &[1]);
        assert_eq!(g.labels(), &["e1", "h1", "f1"]);
    }

    #[test]
    fn sl3_shape() {
        let g = sl(2);
        assert_eq!(g.roots().positive_roots.len(), 3);
        assert_eq!(g.exponents(), &[1, 2]);
        let e1 = g.basis(g.index_of("e1").unwrap());
        let e2 = g.basis(g.index_of("e2").unwrap());
        let e12 = g.basis(g.index_of("e12").unwrap());
        assert_eq!(g.bracket(&e1, &e2), e12);
        assert!(g.bracket(&e12, &e12).is_zero());
        // V_can degree two is spanned by the highest root vector.
        assert_eq!(g.vcan().degrees, vec![1, 2]);
        let p2 = &g.vcan().vectors[1];
        assert_eq!(p2.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
        assert!(!p2.get(g.index_of("e12").unwrap()).is_zero());
    }

    #[test]
    fn principal_triples() {
        let g = sl(1);
        let t = g.principal_triple();
        assert_eq!(t.p_minus, g.basis(g.f(0)));
        assert_eq!(t.semisimple, g.basis(g.h(0)));
        assert_eq!(t.p_plus, g.basis(g.e(0)));
        let g = sl(2);
        let t = g.principal_triple();
        let mut p1 = g.zero();
        p1.set(g.index_of("e1").unwrap(), q(2));
        p1.set(g.index_of("e2").unwrap(), q(2));
        assert_eq!(t.p_plus, p1);
        assert_eq!(g.bracket(&t.semisimple, &t.p_minus), t.p_minus.scale(&q(-2)));
        assert_eq!(g.bracket(&t.semisimple, &t.p_plus), t.p_plus.scale(&q(2)));
        assert_eq!(g.bracket(&t.p_plus, &t.p_minus), t.semisimple);
    }

    #[test]
    fn chi_on_sl2() {
        let g = sl(1);
        let c = qf(7, 3);
        let mut x = g.basis(g.f(0));
        x.set(g.e(0), c.clone());
        assert_eq!(g.chi(&x), vec![c]);
        let lam = q(5);
        let diag = g.basis(g.h(0)).scale(&(lam.clone() / q(2)));
        assert_eq!(g.chi(&diag), vec![lam.clone() * lam / q(4)]);
        assert_eq!(g.chi(&g.principal_triple().p_minus), vec![q(0)]);
    }

    #[test]
    fn chi_is_conjugation_invariant() {
        for l in 1..=3 {
            let g = sl(l);
            let mut x = g.zero();
            for k in 0..g.dim() {
                x.set(k, q((k as i64 * 7 + 3) % 5 - 2));
            }
            for r in 0..g.roots().positive_roots.len() {
                for y in [g.basis(g.e(r)).scale(&qf(3, 2)), g.basis(g.f(r)).scale(&q(-2))] {
                    assert_eq!(g.chi(&g.exp_ad(&y, &x)), g.chi(&x));
                }
            }
        }
    }

    #[test]
    fn kostant_section_is_triangular() {
        for l in 1..=3 {
            let g = sl(l);
            let samples: Vec<Vec<Q>> = (0..6)
                .map(|s| (0..l).map(|j| qf(s * 3 - 7 + j as i64, 1 + j as i64)).collect())
                .collect();
            let report = g.kostant_check(&samples);
            assert!(report.passed(), "{report:?}");
        }
        let g = sl(2);
        assert_eq!(g.chi(&g.principal_triple().p_minus), vec![q(0), q(0)]);
    }

    #[test]
    fn forms_and_levels() {
        for l in 1..=3 {
            let g = sl(l);
            assert_eq!(g.dual_coxeter(), q(l as i64 + 1));
            assert_eq!(g.critical_level(), q(-(l as i64) - 1));
            let theta = g.roots().positive_roots.len() - 1;
            assert_eq!(g.trace_form(&g.basis(g.e(theta)), &g.basis(g.f(theta))), q(1));
        }
    }

    #[test]
    fn rho_and_root_sums() {
        for l in 1..=3 {
            let g = sl(l);
            let rs = g.roots();
            let mut total = vec![0i64; l];
            for r in 0..rs.positive_roots.len() {
                for (t, v) in total.iter_mut().zip(rs.root_labels(r)) {
                    *t += v;
                }
            }
            assert!(total.iter().all(|&v| v == 2));
            assert_eq!(rs.rho(), vec![q(1); l]);
            assert_eq!(rs.positive_roots.len() as i64, rs.exponents.iter().sum::<i64>());
            for r in 0..rs.positive_roots.len() {
                assert_eq!(rs.w0_roots[rs.w0_roots[r]], r);
            }
        }
    }

    #[test]
    fn unsupported_types() {
        assert!(ChevalleyAlgebra::build("B", 2).is_err());
        assert!(ChevalleyAlgebra::build("A", 0).is_err());
    }

    #[test]
    fn weight_identification() {
        let g = sl(1);
        let h = g.weight_to_cartan(&[q(3)]).unwrap();
        assert_eq!(h, g.basis(g.h(0)).scale(&qf(3, 2)));
        assert_eq!(g.cartan_to_weight(&h), vec![q(3)]);
    }
}
