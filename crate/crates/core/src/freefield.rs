//! Free-field realization: the Weyl algebra module `M_{g,n}`, the Heisenberg
//! module `pi(Lambda)`, normally ordered field expressions and the
//! generalized Wakimoto module with its `w_0`-twisted affine action.
//!
//! Conventions:
//! - `[a_{alpha,p}, a*_{beta,r}] = delta_{alpha,beta} delta_{p+r,0}`.
//! - `a(z) = sum a_p z^{-p-1}`, `a*(z) = sum a*_r z^{-r}`,
//!   `b(z) = sum b_q z^{-q-1}`, and `(d a*)_r = -r a*_r`.
//! - The vacuum `u_n` is killed by `a_p` for `p >= n` and by `a*_r` for
//!   `r >= 1 - n`; the Heisenberg vacuum `v_n` is killed by `b_q`, `q >= n`,
//!   and `b_{i,q}` acts by the label `<lambda_q, h_i>` for `0 <= q < n`.
//! - Normal ordering moves `a_p` (`p >= 0`), `a*_r` (`r > 0`) and `b_q`
//!   (`q >= 0`) to the right.
//!
//! Vectors are polynomials in creation variables: `X_{alpha,p}` for `a_p`
//! with `p < n`, `Y_{alpha,r}` for `a*_r` with `r <= -n`, and `B_{i,q}` for
//! `b_q` with `q < 0`. Annihilators act by derivations:
//! `a_p = d/dY_{-p}` (`p >= n`), `a*_r = -d/dX_{-r}` (`r >= 1 - n`) and
//! `b_{i,q} = q sum_j G_{ij} d/dB_{j,-q}` (`q > 0`) plus the vacuum label.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::affine::{affine_bracket, AffineMode, AffineRep, Level};
use crate::error::{Error, Result};
use crate::liealg::{BasisKind, ChevalleyAlgebra};
use crate::linalg::{self, Matrix};
use crate::opers::{coordinate, disk_with_class, embed, JetInvariantClass};
use crate::rational::Q;
use crate::takiff::{rho_n, varpi, JetWeight};

/// A creation variable of the Fock module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `a_{root,p}` with `p < n`.
    X { root: usize, p: i64 },
    /// `a*_{root,r}` with `r <= -n`.
    Y { root: usize, r: i64 },
    /// `b_{i,q}` with `q < 0`.
    B { i: usize, q: i64 },
}

impl Var {
    /// Grading in which every creator has positive degree; used for the
    /// smoothness bound.
    fn degree(&self, n: i64) -> i64 {
        match *self {
            Var::X { p, .. } => n - p,
            Var::Y { r, .. } => 1 - n - r,
            Var::B { q, .. } => -q,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::X { root, p } => write!(f, "a[{root}]({p})"),
            Var::Y { root, r } => write!(f, "a*[{root}]({r})"),
            Var::B { i, q } => write!(f, "b[{i}]({q})"),
        }
    }
}

/// A monomial in creation variables, as variable to exponent.
pub type Monomial = BTreeMap<Var, u32>;

/// A vector of `M_{g,n} (x) pi(Lambda)`: a polynomial in creation variables
/// applied to `w_n = u_n (x) v_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FockVector {
    terms: BTreeMap<Monomial, Q>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The vacuum `w_n`.
    pub fn vacuum() -> Self {
        Self::monomial(Monomial::new(), Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// The product of the given variables applied to the vacuum.
    pub fn from_vars(vars: &[Var]) -> Self {
        let mut m = Monomial::new();
        for v in vars {
            *m.entry(*v).or_insert(0) += 1;
        }
        Self::monomial(m, Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += x * c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// `c` if the vector is `c w_n`.
    pub fn as_vacuum_multiple(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// `c` if the vector is `c w` for the given vector `w`.
    pub fn as_multiple_of(&self, w: &Self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        let (m, c) = w.terms.iter().next()?;
        let ratio = self.terms.get(m)? / c;
        (self.sub(&w.scale(&ratio))).is_zero().then_some(ratio)
    }

    fn mul_var(&self, var: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                *m.entry(var).or_insert(0) += 1;
                (m, c.clone())
            })
            .collect();
        Self { terms }
    }

    fn diff(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let Some(&e) = m.get(&var) else { continue };
            let mut m = m.clone();
            if e == 1 {
                m.remove(&var);
            } else {
                m.insert(var, e - 1);
            }
            out.add_scaled(&Self::monomial(m, c.clone()), &Q::from_integer(e.into()));
        }
        out
    }

    fn max_degree(&self, n: i64) -> i64 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(v, e)| v.degree(n) * i64::from(*e)).sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in m {
                write!(f, " {v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The space `M_{g,n} (x) pi(Lambda)` with its mode actions.
#[derive(Clone, Debug, PartialEq)]
pub struct FockSpace {
    n: usize,
    roots: usize,
    /// `G` in `[b_{i,r}, b_{j,s}] = r G_{ij} delta_{r+s,0}`.
    heis: Matrix,
    /// `weight[q][i] = <lambda_q, h_i>` for `0 <= q < n`.
    weight: Vec<Vec<Q>>,
}

impl FockSpace {
    /// `n >= 1`; `heis` is square; `weight` has `n` rows of its size.
    pub fn new(n: usize, roots: usize, heis: Matrix, weight: Vec<Vec<Q>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("order must be at least 1".into()));
        }
        let rank = heis.len();
        if heis.iter().any(|row| row.len() != rank) {
            return Err(Error::Invalid("Heisenberg form must be square".into()));
        }
        if weight.len() != n {
            return Err(Error::Dimension { expected: n, got: weight.len() });
        }
        if let Some(row) = weight.iter().find(|row| row.len() != rank) {
            return Err(Error::Dimension { expected: rank, got: row.len() });
        }
        Ok(Self { n, roots, heis, weight })
    }

    /// Only the Weyl part, with a rank-zero Heisenberg factor.
    pub fn weyl(n: usize, roots: usize) -> Result<Self> {
        Self::new(n, roots, Vec::new(), vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    pub fn rank(&self) -> usize {
        self.heis.len()
    }

    fn ni(&self) -> i64 {
        self.n as i64
    }

    /// `a_{root,p} . v`.
    pub fn a(&self, root: usize, p: i64, v: &FockVector) -> FockVector {
        if p < self.ni() {
            v.mul_var(Var::X { root, p })
        } else {
            v.diff(Var::Y { root, r: -p })
        }
    }

    /// `a*_{root,r} . v`.
    pub fn a_star(&self, root: usize, r: i64, v: &FockVector) -> FockVector {
        if r <= -self.ni() {
            v.mul_var(Var::Y { root, r })
        } else {
            v.diff(Var::X { root, p: -r }).scale(&-Q::one())
        }
    }

    /// `b_{i,q} . v`.
    pub fn b(&self, i: usize, q: i64, v: &FockVector) -> FockVector {
        if q < 0 {
            return v.mul_var(Var::B { i, q });
        }
        let mut out = FockVector::zero();
        if q < self.ni() {
            out.add_scaled(v, &self.weight[q as usize][i]);
        }
        if q > 0 {
            let qq = Q::from_integer(q.into());
            for (j, g) in self.heis[i].iter().enumerate() {
                if !g.is_zero() {
                    out.add_scaled(&v.diff(Var::B { i: j, q: -q }), &(g * &qq));
                }
            }
        }
        out
    }

    /// Creation variables of degree at most `max_degree` in the grading
    /// `deg X_p = n - p`, `deg Y_r = 1 - n - r`, `deg B_q = -q`.
    pub fn creators(&self, max_degree: i64) -> Vec<Var> {
        let n = self.ni();
        let mut out = Vec::new();
        for d in 1..=max_degree {
            for root in 0..self.roots {
                out.push(Var::X { root, p: n - d });
                out.push(Var::Y { root, r: 1 - n - d });
            }
            for i in 0..self.rank() {
                out.push(Var::B { i, q: -d });
            }
        }
        out.sort();
        out
    }

    /// Every monomial in `vars` with total exponent at most `depth`, as unit
    /// vectors, the vacuum first.
    pub fn pbw_vectors(vars: &[Var], depth: usize) -> Vec<FockVector> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for word in &layer {
                let start = word.last().copied().unwrap_or(0);
                for k in start..vars.len() {
                    let mut w = word.clone();
                    w.push(k);
                    next.push(w);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.iter()
            .map(|w| FockVector::from_vars(&w.iter().map(|&k| vars[k]).collect::<Vec<_>>()))
            .collect()
    }
}

/// A free field appearing in a normally ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    /// `a_root(z)`.
    A(usize),
    /// `a*_root(z)`.
    AStar(usize),
    /// `d/dz a*_root(z)`.
    DAStar(usize),
    /// `b_i(z)`.
    B(usize),
}

impl Field {
    /// Conformal weight: the mode `X_k` multiplies `z^{-k-weight}`.
    pub fn weight(&self) -> i64 {
        match self {
            Field::AStar(_) => 0,
            _ => 1,
        }
    }

    /// Whether the mode of index `k` is placed on the right.
    fn is_annihilation_side(&self, k: i64) -> bool {
        match self {
            Field::A(_) | Field::B(_) => k >= 0,
            Field::AStar(_) | Field::DAStar(_) => k > 0,
        }
    }

    /// Shift bound of the smoothness grading: the mode `k` raises degree by
    /// at most `offset - k`.
    fn offset(&self, n: i64) -> i64 {
        match self {
            Field::A(_) => n,
            Field::AStar(_) | Field::DAStar(_) => 1 - n,
            Field::B(_) => n - 1,
        }
    }

    /// Largest mode index that can act nontrivially on `v` or on anything
    /// produced from `v` by the other factors of a normally ordered product.
    fn max_live_index(&self, n: i64, v: &FockVector) -> i64 {
        let vars = v.terms.keys().flat_map(|m| m.keys());
        match *self {
            Field::A(a) => vars
                .filter_map(|x| match *x {
                    Var::Y { root, r } if root == a => Some(-r),
                    _ => None,
                })
                .fold(n - 1, i64::max),
            Field::AStar(a) | Field::DAStar(a) => vars
                .filter_map(|x| match *x {
                    Var::X { root, p } if root == a => Some(-p),
                    _ => None,
                })
                .fold(0, i64::max),
            Field::B(_) => vars
                .filter_map(|x| match *x {
                    Var::B { q, .. } => Some(-q),
                    _ => None,
                })
                .fold(n - 1, i64::max),
        }
    }

    fn apply_mode(&self, space: &FockSpace, k: i64, v: &FockVector) -> FockVector {
        match *self {
            Field::A(a) => space.a(a, k, v),
            Field::AStar(a) => space.a_star(a, k, v),
            Field::DAStar(a) => space.a_star(a, k, v).scale(&Q::from_integer((-k).into())),
            Field::B(i) => space.b(i, k, v),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::A(a) => write!(f, "a[{a}]"),
            Field::AStar(a) => write!(f, "a*[{a}]"),
            Field::DAStar(a) => write!(f, "da*[{a}]"),
            Field::B(i) => write!(f, "b[{i}]"),
        }
    }
}

/// `coeff * :F_1(z) ... F_k(z):`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldTerm {
    pub coeff: Q,
    pub factors: Vec<Field>,
}

/// A finite sum of normally ordered products of free fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldExpression {
    pub terms: Vec<FieldTerm>,
}

impl FieldExpression {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `coeff * :factors:`.
    pub fn term(mut self, coeff: Q, factors: &[Field]) -> Self {
        if !coeff.is_zero() {
            self.terms.push(FieldTerm { coeff, factors: factors.to_vec() });
        }
        self
    }

    pub fn scale(&self, c: &Q) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|_| !c.is_zero())
            .map(|t| FieldTerm { coeff: &t.coeff * c, factors: t.factors.clone() })
            .collect();
        Self { terms }
    }

    /// The expression with every term containing a `b` field removed.
    pub fn weyl_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.factors.iter().any(|f| matches!(f, Field::B(_))))
            .cloned()
            .collect();
        Self { terms }
    }

    /// Coefficient `c_beta` of `:a*_beta(z) a_beta(z):`.
    pub fn linear_a_star_a(&self, beta: usize) -> Q {
        self.terms
            .iter()
            .filter(|t| {
                let mut f = t.factors.clone();
                f.sort();
                f == [Field::A(beta), Field::AStar(beta)]
            })
            .map(|t| t.coeff.clone())
            .sum()
    }

    /// Every product term has at least one factor.
    pub fn has_constant_term(&self) -> bool {
        self.terms.iter().any(|t| t.factors.is_empty())
    }

    /// Upper bound `C` such that mode `m` raises the smoothness degree by at
    /// most `C - m - 1`.
    fn grading_offset(&self, n: i64) -> i64 {
        self.terms
            .iter()
            .map(|t| t.factors.iter().map(|f| f.offset(n) + f.weight()).sum::<i64>())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for FieldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) :", t.coeff)?;
            for (j, x) in t.factors.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ":")?;
        }
        Ok(())
    }
}

/// All index tuples with `sum = total` and `k_j <= hi[j]`.
fn index_tuples(hi: &[i64], total: i64) -> Vec<Vec<i64>> {
    fn go(hi: &[i64], rest: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        match hi {
            [] => {
                if rest == 0 {
                    out.push(acc.clone());
                }
            }
            [last] => {
                if rest <= *last {
                    acc.push(rest);
                    out.push(acc.clone());
                    acc.pop();
                }
            }
            [h, tail @ ..] => {
                let lo = rest - tail.iter().sum::<i64>();
                for k in lo..=*h {
                    acc.push(k);
                    go(tail, rest - k, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(hi, total, &mut Vec::new(), &mut out);
    out
}

/// `[expr]_m . v`, the coefficient of `z^{-m-1}` applied to `v`. The
/// bilateral sum is cut off by the modes that act trivially on `v`.
pub fn mode_apply(space: &FockSpace, expr: &FieldExpression, m: i64, v: &FockVector) -> FockVector {
    let n = space.ni();
    let mut out = FockVector::zero();
    for term in &expr.terms {
        if term.factors.is_empty() {
            if m == -1 {
                out.add_scaled(v, &term.coeff);
            }
            continue;
        }
        let total = m + 1 - term.factors.iter().map(Field::weight).sum::<i64>();
        let hi: Vec<i64> = term.factors.iter().map(|f| f.max_live_index(n, v)).collect();
        for idx in index_tuples(&hi, total) {
            let mut w = v.clone();
            // Annihilation side first, then the creation side.
            for pass in [true, false] {
                for (f, &k) in term.factors.iter().zip(&idx) {
                    if f.is_annihilation_side(k) == pass {
                        w = f.apply_mode(space, k, &w);
                    }
                }
                if w.is_zero() {
                    break;
                }
            }
            out.add_scaled(&w, &term.coeff);
        }
    }
    out
}

/// Fields attached to the affine generators by the free-field realization
/// of `sl_2`, together with the `w_0` twist flag.
#[derive(Clone, Debug, PartialEq)]
pub struct WakimotoAction {
    pub level: Level,
    /// Coefficient of `d a*(z)` in the `f` field.
    pub c1: Q,
    /// Heisenberg normalization `[b_r, b_s] = r c_h delta_{r+s,0}`.
    pub c_h: Q,
    /// Untwisted images of the basis elements, indexed like the algebra.
    pub fields: Vec<FieldExpression>,
    pub twisted: bool,
}

impl WakimotoAction {
    /// The field giving the action of the basis element `k`, after the
    /// twist `e <-> f`, `h -> -h` if enabled.
    pub fn image(&self, alg: &ChevalleyAlgebra, k: usize) -> FieldExpression {
        if !self.twisted {
            return self.fields[k].clone();
        }
        match alg.basis_kind(k) {
            BasisKind::E(r) => self.fields[alg.f(r)].clone(),
            BasisKind::F(r) => self.fields[alg.e(r)].clone(),
            BasisKind::H(_) => self.fields[k].scale(&-Q::one()),
        }
    }
}

fn require_sl2(alg: &ChevalleyAlgebra) -> Result<()> {
    if alg.kind() != "A" || alg.rank() != 1 {
        return Err(Error::UnsupportedAlgebra { kind: alg.kind().to_string(), rank: alg.rank() });
    }
    Ok(())
}

/// The untwisted `sl_2` fields
/// `e = a`, `h = -2 :a* a: + b`, `f = -:a* a* a: + c1 d a* + :a* b:`.
pub fn sl2_fields(alg: &ChevalleyAlgebra, c1: &Q) -> Result<Vec<FieldExpression>> {
    require_sl2(alg)?;
    let one = Q::one();
    let mut fields = vec![FieldExpression::new(); alg.dim()];
    fields[alg.e(0)] = FieldExpression::new().term(one.clone(), &[Field::A(0)]);
    fields[alg.h(0)] = FieldExpression::new()
        .term(Q::from_integer((-2).into()), &[Field::AStar(0), Field::A(0)])
        .term(one.clone(), &[Field::B(0)]);
    fields[alg.f(0)] = FieldExpression::new()
        .term(-one.clone(), &[Field::AStar(0), Field::AStar(0), Field::A(0)])
        .term(c1.clone(), &[Field::DAStar(0)])
        .term(one, &[Field::AStar(0), Field::B(0)]);
    Ok(fields)
}

/// The module `M_{g,n} (x) pi(Lambda')` with an affine action given by
/// field modes.
#[derive(Clone, Debug)]
pub struct WakimotoModule<'a> {
    alg: &'a ChevalleyAlgebra,
    action: WakimotoAction,
    space: FockSpace,
    images: Vec<FieldExpression>,
    offset: i64,
}

impl<'a> WakimotoModule<'a> {
    /// The Fock space of order `n` for `sl_2` with Heisenberg weight
    /// `heis_weight` and the given action data.
    pub fn new(alg: &'a ChevalleyAlgebra, action: WakimotoAction, heis_weight: &JetWeight) -> Result<Self> {
        require_sl2(alg)?;
        if heis_weight.rank() != 1 {
            return Err(Error::Dimension { expected: 1, got: heis_weight.rank() });
        }
        let n = heis_weight.n();
        let space = FockSpace::new(n, 1, vec![vec![action.c_h.clone()]], heis_weight.lambdas().to_vec())?;
        let images: Vec<FieldExpression> = (0..alg.dim()).map(|k| action.image(alg, k)).collect();
        let offset = images.iter().map(|e| e.grading_offset(n as i64)).max().unwrap_or(0);
        Ok(Self { alg, action, space, images, offset })
    }

    pub fn alg(&self) -> &'a ChevalleyAlgebra {
        self.alg
    }

    pub fn action(&self) -> &WakimotoAction {
        &self.action
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }
}

impl AffineRep for WakimotoModule<'_> {
    type V = FockVector;

    fn act(&self, x: &AffineMode, v: &FockVector) -> FockVector {
        mode_apply(&self.space, &self.images[x.basis], x.m, v)
    }

    fn smooth_bound(&self, v: &FockVector) -> i64 {
        v.max_degree(self.space.ni()) + self.offset
    }

    fn zero(&self) -> FockVector {
        FockVector::zero()
    }

    fn add_scaled(&self, acc: &mut FockVector, v: &FockVector, c: &Q) {
        acc.add_scaled(v, c);
    }
}

/// `[x_r, y_s] v - [x, y]_{r+s} v - central v` for the affine action.
fn relation_defect<R: AffineRep>(rep: &R, alg: &ChevalleyAlgebra, level: &Level, x: &AffineMode, y: &AffineMode, v: &R::V) -> R::V {
    let one = Q::one();
    let mut d = rep.zero();
    rep.add_scaled(&mut d, &rep.act(x, &rep.act(y, v)), &one);
    rep.add_scaled(&mut d, &rep.act(y, &rep.act(x, v)), &-one.clone());
    let br = affine_bracket(alg, level, x, y);
    for (g, c) in &br.terms {
        rep.add_scaled(&mut d, &rep.act(g, v), &-c.clone());
    }
    rep.add_scaled(&mut d, v, &-br.central);
    d
}

fn modes(alg: &ChevalleyAlgebra, bound: i64) -> Vec<AffineMode> {
    (0..alg.dim()).flat_map(|k| (-bound..=bound).map(move |m| AffineMode::new(k, m))).collect()
}

/// Solves `(c1, c_h)` from the affine relations on a spanning set of small
/// vectors of the order-1 Fock space.
pub fn solve_wakimoto_constants(alg: &ChevalleyAlgebra, level: &Level) -> Result<(Q, Q)> {
    require_sl2(alg)?;
    let weight = JetWeight::zero(1, 1);
    let build = |c1: Q, c_h: Q| -> Result<WakimotoModule<'_>> {
        let action = WakimotoAction { level: level.clone(), c1: c1.clone(), c_h, fields: sl2_fields(alg, &c1)?, twisted: false };
        WakimotoModule::new(alg, action, &weight)
    };
    let samples = [build(Q::zero(), Q::zero())?, build(Q::one(), Q::zero())?, build(Q::zero(), Q::one())?];
    let vectors = FockSpace::pbw_vectors(&samples[0].space.creators(2), 1);
    let modes = modes(alg, 2);
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for v in &vectors {
        for x in &modes {
            for y in &modes {
                let d: Vec<FockVector> = samples.iter().map(|s| relation_defect(s, alg, level, x, y, v)).collect();
                let d1 = d[1].sub(&d[0]);
                let d2 = d[2].sub(&d[0]);
                let keys: std::collections::BTreeSet<&Monomial> =
                    d.iter().flat_map(|w| w.terms.keys()).collect();
                for key in keys {
                    let get = |w: &FockVector| w.terms.get(key).cloned().unwrap_or_else(Q::zero);
                    rows.push(vec![get(&d1), get(&d2)]);
                    rhs.push(-get(&d[0]));
                }
            }
        }
    }
    let sol = linalg::solve(&rows, &rhs).ok_or_else(|| Error::NoSolution("free-field ansatz admits no constants".into()))?;
    if linalg::rank(&rows) < 2 {
        return Err(Error::Invariant("free-field constants are not determined by the relations".into()));
    }
    Ok((sol[0].clone(), sol[1].clone()))
}

/// The Heisenberg weight `w_0(Lambda) - 2 rho_n` of the Wakimoto module.
pub fn wakimoto_heisenberg_weight(alg: &ChevalleyAlgebra, lambda: &JetWeight) -> Result<JetWeight> {
    if lambda.rank() != alg.rank() {
        return Err(Error::Dimension { expected: alg.rank(), got: lambda.rank() });
    }
    let twisted = JetWeight::new(lambda.lambdas().iter().map(|l| alg.roots().w0_weight(l)).collect())?;
    let rho = rho_n(alg, lambda.n())?;
    twisted.sub(&rho.scale(&Q::from_integer(2.into())))
}

/// The generalized Wakimoto module at `level` with highest weight `lambda`:
/// constants solved from the relations, Heisenberg weight
/// `w_0(Lambda) - 2 rho_n`, and the `w_0`-twisted action.
pub fn build_wakimoto_action<'a>(alg: &'a ChevalleyAlgebra, level: &Level, lambda: &JetWeight) -> Result<WakimotoModule<'a>> {
    let (c1, c_h) = solve_wakimoto_constants(alg, level)?;
    wakimoto_with_constants(alg, level, lambda, c1, c_h)
}

/// As [`build_wakimoto_action`] with prescribed constants.
pub fn wakimoto_with_constants<'a>(alg: &'a ChevalleyAlgebra, level: &Level, lambda: &JetWeight, c1: Q, c_h: Q) -> Result<WakimotoModule<'a>> {
    let fields = sl2_fields(alg, &c1)?;
    let action = WakimotoAction { level: level.clone(), c1, c_h, fields, twisted: true };
    let weight = wakimoto_heisenberg_weight(alg, lambda)?;
    WakimotoModule::new(alg, action, &weight)
}

/// Result of a batch of exact checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Checks `[x_r, y_s] v = [x, y]_{r+s} v + k (x, y) r delta_{r+s,0} v` for
/// all basis pairs, `|r|, |s| <= 2`, on every monomial of at most `depth`
/// creators of degree at most 2.
pub fn verify_affine_relations(module: &WakimotoModule<'_>, depth: usize) -> CheckReport {
    let alg = module.alg;
    let level = &module.action.level;
    let vectors = FockSpace::pbw_vectors(&module.space.creators(2), depth);
    let modes = modes(alg, 2);
    let mut report = CheckReport::default();
    for v in &vectors {
        for (i, x) in modes.iter().enumerate() {
            for y in &modes[i..] {
                let d = relation_defect(module, alg, level, x, y, v);
                report.record(d.is_zero(), || {
                    format!(
                        "[{}_{}, {}_{}] on {v}: defect {d}",
                        alg.label(x.basis),
                        x.m,
                        alg.label(y.basis),
                        y.m
                    )
                });
            }
        }
    }
    report
}

/// `[:a_beta(z) a*_beta(z):]_m . u_n` for `m = 0..=max_m`, as multiples of
/// `u_n`.
pub fn basic0_values(n: usize, max_m: i64) -> Result<Vec<Q>> {
    let space = FockSpace::weyl(n, 1)?;
    let expr = FieldExpression::new().term(Q::one(), &[Field::A(0), Field::AStar(0)]);
    let vac = FockVector::vacuum();
    (0..=max_m)
        .map(|m| {
            mode_apply(&space, &expr, m, &vac)
                .as_vacuum_multiple()
                .ok_or_else(|| Error::Invariant(format!("mode {m} of :a a*: is not scalar on the vacuum")))
        })
        .collect()
}

/// Checks `[:T(a*) a_beta:]_m . u_n = 0` on a Fock space with `roots` roots
/// for every monomial `T` of degree 1 or 2: for `m >= n` in general, and for
/// all `m >= 0` when `T` is not a multiple of `a*_beta`. Modes run up to
/// `max_m`.
pub fn basic_check(n: usize, roots: usize, max_m: i64) -> Result<CheckReport> {
    let space = FockSpace::weyl(n, roots)?;
    let vac = FockVector::vacuum();
    let mut monomials: Vec<Vec<usize>> = (0..roots).map(|g| vec![g]).collect();
    for g in 0..roots {
        for d in g..roots {
            monomials.push(vec![g, d]);
        }
    }
    let mut report = CheckReport::default();
    for beta in 0..roots {
        for t in &monomials {
            let linear_in_beta = t.len() == 1 && t[0] == beta;
            let mut factors: Vec<Field> = t.iter().map(|&g| Field::AStar(g)).collect();
            factors.push(Field::A(beta));
            let expr = FieldExpression::new().term(Q::one(), &factors);
            let start = if linear_in_beta { n as i64 } else { 0 };
            for m in start..=max_m {
                let w = mode_apply(&space, &expr, m, &vac);
                report.record(w.is_zero(), || format!("[{expr}]_{m} u_{n} = {w}"));
            }
        }
    }
    Ok(report)
}

/// Checks `[R(a*) b_i]_m . w_n = 0` for `0 <= m <= max_m` and monomials `R`
/// of degree 1 and 2 in one root, with generic Heisenberg labels.
pub fn basic2_check(n: usize, weight: &JetWeight, max_m: i64) -> Result<CheckReport> {
    let space = FockSpace::new(n, 1, vec![vec![Q::one()]], weight.lambdas().to_vec())?;
    let vac = FockVector::vacuum();
    let mut report = CheckReport::default();
    for deg in 1..=2 {
        let mut factors = vec![Field::AStar(0); deg];
        factors.push(Field::B(0));
        let expr = FieldExpression::new().term(Q::one(), &factors);
        for m in 0..=max_m {
            let w = mode_apply(&space, &expr, m, &vac);
            report.record(w.is_zero(), || format!("[{expr}]_{m} w_{n} = {w}"));
        }
    }
    Ok(report)
}

/// Vacuum checks on the Wakimoto module built for `lambda`:
/// - `sum_beta c_beta = 0` for the linear part of the `f` field;
/// - the Weyl part of the `f` field kills `u_n` in mode 0;
/// - `e_m w_n = 0` for `0 <= m <= max_m` (twisted `f` modes);
/// - `f_m w_n = 0` and `h_m w_n = 0` for `n <= m <= max_m`;
/// - `h_m w_n = <lambda_m, h> w_n` for `0 <= m < n`.
pub fn vacuum_in_check(module: &WakimotoModule<'_>, lambda: &JetWeight, max_m: i64) -> CheckReport {
    let alg = module.alg;
    let n = module.n() as i64;
    let vac = FockVector::vacuum();
    let mut report = CheckReport::default();

    let f_field = &module.action.fields[alg.f(0)];
    let c_sum: Q = (0..module.space.roots).map(|b| f_field.linear_a_star_a(b)).sum();
    report.record(c_sum.is_zero(), || format!("sum of c_beta is {c_sum}"));
    report.record(!f_field.has_constant_term(), || "f field has a constant term".into());

    let weyl = FockSpace::weyl(module.n(), 1).expect("n >= 1");
    let w = mode_apply(&weyl, &f_field.weyl_part(), 0, &vac);
    report.record(w.is_zero(), || format!("f_0 u_n = {w}"));

    for m in 0..=max_m {
        let w = module.act(&AffineMode::new(alg.e(0), m), &vac);
        report.record(w.is_zero(), || format!("e_{m} w_n = {w}"));
    }
    for m in n..=max_m.max(n) {
        for k in [alg.f(0), alg.h(0)] {
            let w = module.act(&AffineMode::new(k, m), &vac);
            report.record(w.is_zero(), || format!("{}_{m} w_n = {w}", alg.label(k)));
        }
    }
    for m in 0..n {
        let w = module.act(&AffineMode::new(alg.h(0), m), &vac);
        let expected = lambda.label(m as usize, 0);
        let got = w.as_vacuum_multiple();
        report.record(got.as_ref() == Some(expected), || format!("h_{m} w_n = {w}, expected {expected} w_n"));
    }
    report
}

/// Scalars of `S_m`, `n <= m < 2n`, on `v` in the critical-level Wakimoto
/// module, after checking that `S_m v = 0` for `2n <= m < 2n + extra`.
pub fn wakimoto_scalars_on(module: &WakimotoModule<'_>, v: &FockVector, extra: i64) -> Result<Vec<Q>> {
    use crate::affine::sugawara_apply;
    let alg = module.alg;
    if !module.action.level.is_critical(alg) {
        return Err(Error::Invalid("Sugawara scalars need the critical level".into()));
    }
    let n = module.n() as i64;
    for m in 2 * n..2 * n + extra {
        let w = sugawara_apply(module, alg, m, v);
        if !w.is_zero() {
            return Err(Error::Invariant(format!("S_{m} does not annihilate the vector: {w}")));
        }
    }
    (n..2 * n)
        .map(|m| {
            sugawara_apply(module, alg, m, v)
                .as_multiple_of(v)
                .ok_or_else(|| Error::Invariant(format!("S_{m} does not act by a scalar")))
        })
        .collect()
}

/// Sugawara scalars on the vacuum of the critical-level Wakimoto module of
/// highest weight `lambda`.
pub fn wakimoto_central_character(alg: &ChevalleyAlgebra, lambda: &JetWeight) -> Result<Vec<Q>> {
    let module = build_wakimoto_action(alg, &Level::critical(alg), lambda)?;
    wakimoto_scalars_on(&module, &FockVector::vacuum(), 2)
}

/// The scalars predicted by the class `varpi(-Lambda - rho_n)`: the
/// coefficients of `t^{-m-1}`, `n <= m < 2n`, of the first canonical
/// coordinate of the embedded oper with that residue.
pub fn predicted_central_character(alg: &ChevalleyAlgebra, lambda: &JetWeight) -> Result<Vec<Q>> {
    let n = lambda.n();
    let shifted = lambda.neg().sub(&rho_n(alg, n)?)?;
    scalars_from_class(alg, &varpi(alg, &shifted)?)
}

/// Coefficients of `t^{-m-1}`, `n <= m < 2n`, of the first canonical
/// coordinate of the embedded disk oper with residue `class`.
pub fn scalars_from_class(alg: &ChevalleyAlgebra, class: &JetInvariantClass) -> Result<Vec<Q>> {
    let n = class.len() as i64;
    let op = disk_with_class(alg, class, n + 1)?;
    let canonical = embed(alg, &op)?;
    (n..2 * n).map(|m| coordinate(&canonical, 0, m)).collect()
}
