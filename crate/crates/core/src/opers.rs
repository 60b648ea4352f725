//! Opers on the disk and the punctured disk, Drinfeld-Sokolov reduction and
//! higher residues.
//!
//! A disk oper of order `n` is `d/dt + t^{-n}(p_{-1} + x(t))` with `x` valued
//! in the Borel subalgebra and regular at `t = 0`; a punctured oper is
//! `d/dt + p_{-1} + x(t)` with `x` allowed to have poles. Internally both are
//! handled in the form `d/dt + t^{-pole}(p_{-1} + x)`, split by principal
//! degree so that precision is tracked separately on each graded piece.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{ChevalleyAlgebra, LieElement, LieSeries};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::series::{Coeff, JetPoly, TruncLaurent};

#[derive(Clone, Debug, PartialEq)]
pub struct OperDisk {
    pub order: usize,
    pub x: LieSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperPunctured {
    pub x: LieSeries,
}

/// Coefficients `v_j` of the canonical representative against the basis
/// `p_j` of `V_can`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    pub v: Vec<TruncLaurent>,
}

impl CanonicalForm {
    /// Coefficientwise agreement on every exponent both sides know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.v.len() == other.v.len() && self.v.iter().zip(&other.v).all(|(a, b)| a.agrees_with(b))
    }

    /// Smallest number of coefficients two forms can be compared on.
    pub fn overlap(&self, other: &Self) -> i64 {
        self.v
            .iter()
            .zip(&other.v)
            .map(|(a, b)| a.precision().min(b.precision()) - a.valuation().min(b.valuation()))
            .min()
            .unwrap_or(0)
    }
}

/// The product `exp(y_1) exp(y_2) ...` recorded as `(degree, y)` pairs;
/// `exp(y_1)` is applied first.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GaugeTransform {
    factors: Vec<(i64, LieSeries)>,
}

impl GaugeTransform {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Checks that each factor is of pure positive principal degree and that
    /// degrees increase strictly.
    pub fn new(alg: &ChevalleyAlgebra, factors: Vec<(i64, LieSeries)>) -> Result<Self> {
        let mut last = 0;
        for (d, y) in &factors {
            if *d <= last || *d > alg.max_degree() {
                return Err(Error::Invalid(format!("gauge degrees must increase within 1..={}", alg.max_degree())));
            }
            last = *d;
            for c in y.coeffs() {
                if c.dim() != alg.dim() || alg.component(c, *d) != *c {
                    return Err(Error::Invalid(format!("gauge factor is not of pure degree {d}")));
                }
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(i64, LieSeries)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }
}

/// A point of `(h*/W)_n`: one jet per invariant polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetInvariantClass {
    pub jets: Vec<JetPoly>,
}

impl JetInvariantClass {
    pub fn len(&self) -> usize {
        self.jets.first().map_or(0, JetPoly::len)
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        Ok(Self {
            jets: self.jets.iter().map(|j| j.truncate(m)).collect::<Result<_>>()?,
        })
    }
}

/// Evaluates the invariant polynomials on a Lie-valued jet given by its
/// basis coefficients.
pub fn chi_jet(alg: &ChevalleyAlgebra, coeffs: &[JetPoly]) -> JetInvariantClass {
    JetInvariantClass { jets: alg.chi_over(coeffs) }
}

/// Lie series split by principal degree. Absent degrees are exactly zero.
#[derive(Clone, Debug, Default)]
struct Graded {
    comps: BTreeMap<i64, LieSeries>,
}

impl Graded {
    fn from_series(alg: &ChevalleyAlgebra, x: &LieSeries) -> Result<Self> {
        if x.coeffs().iter().any(|c| c.dim() != alg.dim()) {
            return Err(Error::Dimension { expected: alg.dim(), got: x.zero_coeff().dim() });
        }
        if !x.coeffs().iter().all(|c| alg.in_borel(c)) {
            return Err(Error::Invalid("oper coefficient has components outside the Borel subalgebra".into()));
        }
        let mut comps = BTreeMap::new();
        for d in 0..=alg.max_degree() {
            comps.insert(d, x.map(|c| alg.component(c, d)).trim());
        }
        Ok(Self { comps })
    }

    fn add(&mut self, d: i64, s: LieSeries) {
        let merged = match self.comps.remove(&d) {
            Some(old) => old.add(&s),
            None => s,
        };
        self.comps.insert(d, merged.trim());
    }

    fn add_all(&mut self, other: &Graded) {
        for (d, s) in &other.comps {
            self.add(*d, s.clone());
        }
    }

    fn to_series(&self, alg: &ChevalleyAlgebra) -> LieSeries {
        let mut it = self.comps.values();
        match it.next() {
            None => TruncLaurent::zero(0, 1, alg.zero()),
            Some(first) => it.fold(first.clone(), |acc, s| acc.add(s)),
        }
    }

    /// `[y, self]` for `y` of pure degree `dy`, dropping degrees that are
    /// structurally zero.
    fn bracket_left(&self, alg: &ChevalleyAlgebra, y: &LieSeries, dy: i64) -> Graded {
        let mut out = Graded::default();
        for (d, s) in &self.comps {
            let target = d + dy;
            if target > alg.max_degree() {
                continue;
            }
            out.add(target, alg.bracket_series(y, s));
        }
        out
    }

    fn scale(&self, c: &Q) -> Graded {
        Graded {
            comps: self.comps.iter().map(|(d, s)| (*d, s.scale(c))).collect(),
        }
    }

    fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// Replaces `p_{-1} + x` by the gauge transform under `exp(y)` of the operator
/// `d/dt + t^{-pole}(p_{-1} + x)`, with `y` of pure degree `d`.
fn apply_exp(alg: &ChevalleyAlgebra, x: &Graded, y: &LieSeries, d: i64, pole: i64) -> Graded {
    let p = &alg.principal_triple().p_minus;
    let mut out = x.clone();
    // exp(ad y)(p_{-1} + x) - p_{-1}
    let mut term = x.bracket_left(alg, y, d);
    if d - 1 <= alg.max_degree() {
        term.add(d - 1, y.map(|c| alg.bracket(c, p)));
    }
    let mut k = 1i64;
    while !term.is_empty() {
        out.add_all(&term);
        k += 1;
        term = term.bracket_left(alg, y, d).scale(&Q::new(1.into(), k.into()));
    }
    // t^pole * sum_k (ad y)^k (y') / (k+1)!
    let mut r = Graded::default();
    r.add(d, y.derivative());
    let mut k = 0i64;
    while !r.is_empty() {
        let factor = Q::new((-1).into(), (k + 1).into());
        for (deg, s) in &r.comps {
            out.add(*deg, s.shift(pole).scale(&factor));
        }
        k += 1;
        r = r.bracket_left(alg, y, d).scale(&Q::new(1.into(), k.into()));
    }
    out
}

/// Per-degree solvers for `b_k = [p_{-1}, n_{k+1}] + V_can,k`.
struct DsTables {
    degrees: Vec<DegreeTable>,
}

struct DegreeTable {
    rows: Vec<usize>,
    z_cols: Vec<usize>,
    v_idx: Vec<usize>,
    inverse: Matrix,
}

impl DsTables {
    fn new(alg: &ChevalleyAlgebra) -> Result<Self> {
        let p = &alg.principal_triple().p_minus;
        let vcan = alg.vcan();
        let mut degrees = Vec::new();
        for k in 0..=alg.max_degree() {
            let rows: Vec<usize> = (0..alg.dim()).filter(|&b| alg.degree(b) == k).collect();
            let z_cols: Vec<usize> = (0..alg.dim()).filter(|&b| alg.degree(b) == k + 1).collect();
            let v_idx: Vec<usize> = (0..vcan.vectors.len()).filter(|&j| vcan.degrees[j] == k).collect();
            let mut columns: Vec<LieElement> = z_cols.iter().map(|&b| alg.bracket(p, &alg.basis(b))).collect();
            columns.extend(v_idx.iter().map(|&j| vcan.vectors[j].clone()));
            let a: Matrix = rows
                .iter()
                .map(|&r| columns.iter().map(|c| c.get(r).clone()).collect())
                .collect();
            let inverse = linalg::inverse(&a)
                .ok_or_else(|| Error::Invariant(format!("degree {k} does not split as [p_-1, n] + V_can")))?;
            degrees.push(DegreeTable { rows, z_cols, v_idx, inverse });
        }
        Ok(Self { degrees })
    }

    /// Splits a degree-`k` element as `[p_{-1}, z] + sum v_j p_j`.
    fn decompose(&self, alg: &ChevalleyAlgebra, k: i64, x: &LieElement) -> (LieElement, Vec<Q>) {
        let t = &self.degrees[k as usize];
        let b: Vec<Q> = t.rows.iter().map(|&r| x.get(r).clone()).collect();
        let s = linalg::mat_vec(&t.inverse, &b);
        let mut z = alg.zero();
        for (c, &col) in s.iter().zip(&t.z_cols) {
            z.set(col, c.clone());
        }
        (z, s[t.z_cols.len()..].to_vec())
    }
}

/// Result of Drinfeld-Sokolov reduction.
struct Reduction {
    canonical: CanonicalForm,
    gauge: GaugeTransform,
}

fn reduce(alg: &ChevalleyAlgebra, x: Graded, pole: i64) -> Result<Reduction> {
    let tables = DsTables::new(alg)?;
    let vcan = alg.vcan();
    let mut x = x;
    let mut v: Vec<Option<TruncLaurent>> = vec![None; vcan.vectors.len()];
    let mut factors = Vec::new();
    for k in 0..=alg.max_degree() {
        let Some(comp) = x.comps.get(&k).cloned() else {
            for &j in &tables.degrees[k as usize].v_idx {
                v[j] = Some(TruncLaurent::zero(0, 1, Q::zero()));
            }
            continue;
        };
        let parts: Vec<(LieElement, Vec<Q>)> = comp.coeffs().iter().map(|c| tables.decompose(alg, k, c)).collect();
        for (slot, &j) in tables.degrees[k as usize].v_idx.iter().enumerate() {
            let coeffs = parts.iter().map(|(_, vs)| vs[slot].clone()).collect();
            v[j] = Some(TruncLaurent::new(comp.valuation(), coeffs)?.trim());
        }
        if tables.degrees[k as usize].z_cols.is_empty() {
            continue;
        }
        let z = TruncLaurent::new(comp.valuation(), parts.into_iter().map(|(z, _)| z).collect())?.trim();
        x = apply_exp(alg, &x, &z, k + 1, pole);
        if !z.is_zero_in_window() {
            factors.push((k + 1, z));
        }
    }
    let v = v.into_iter().map(|s| s.expect("every V_can degree visited")).collect();
    Ok(Reduction {
        canonical: CanonicalForm { v },
        gauge: GaugeTransform { factors },
    })
}

fn disk_graded(alg: &ChevalleyAlgebra, op: &OperDisk) -> Result<Graded> {
    if op.order == 0 {
        return Err(Error::Invalid("oper order must be at least 1".into()));
    }
    if op.x.order().is_some_and(|o| o < 0) {
        return Err(Error::Invalid("disk oper coefficient must be regular at t = 0".into()));
    }
    Graded::from_series(alg, &op.x)
}

pub fn gauge_apply_disk(alg: &ChevalleyAlgebra, s: &GaugeTransform, op: &OperDisk) -> Result<OperDisk> {
    if s.factors.iter().any(|(_, y)| y.order().is_some_and(|o| o < 0)) {
        return Err(Error::Invalid("disk gauge transformations must be regular at t = 0".into()));
    }
    let mut x = disk_graded(alg, op)?;
    for (d, y) in &s.factors {
        x = apply_exp(alg, &x, y, *d, op.order as i64);
    }
    Ok(OperDisk { order: op.order, x: x.to_series(alg) })
}

pub fn gauge_apply_punctured(alg: &ChevalleyAlgebra, s: &GaugeTransform, op: &OperPunctured) -> Result<OperPunctured> {
    let mut x = Graded::from_series(alg, &op.x)?;
    for (d, y) in &s.factors {
        x = apply_exp(alg, &x, y, *d, 0);
    }
    Ok(OperPunctured { x: x.to_series(alg) })
}

/// Canonical representative `d/dt + t^{-n}(p_{-1} + sum_j v_j p_j)` of a
/// disk oper, and the regular gauge transformation reaching it.
pub fn canonicalize_disk(alg: &ChevalleyAlgebra, op: &OperDisk) -> Result<(CanonicalForm, GaugeTransform)> {
    let r = reduce(alg, disk_graded(alg, op)?, op.order as i64)?;
    Ok((r.canonical, r.gauge))
}

/// Canonical representative `d/dt + p_{-1} + sum_j v_j p_j` of a punctured
/// oper, and the gauge transformation reaching it.
pub fn canonicalize_punctured(alg: &ChevalleyAlgebra, op: &OperPunctured) -> Result<(CanonicalForm, GaugeTransform)> {
    let r = reduce(alg, Graded::from_series(alg, &op.x)?, 0)?;
    Ok((r.canonical, r.gauge))
}

/// Rebuilds the punctured oper `p_{-1} + sum_j v_j p_j`.
pub fn canonical_to_punctured(alg: &ChevalleyAlgebra, c: &CanonicalForm) -> Result<OperPunctured> {
    let vcan = alg.vcan();
    if c.v.len() != vcan.vectors.len() {
        return Err(Error::Dimension { expected: vcan.vectors.len(), got: c.v.len() });
    }
    let mut x: Option<LieSeries> = None;
    for (vj, pj) in c.v.iter().zip(&vcan.vectors) {
        let s = vj.map(|a| pj.scale(a));
        x = Some(match x {
            None => s,
            Some(acc) => acc.add(&s),
        });
    }
    Ok(OperPunctured { x: x.expect("rank is positive") })
}

/// Basis coefficients of `p_{-1} + ev_m(x)` as jets of length `m`.
fn residue_point(alg: &ChevalleyAlgebra, x: &LieSeries, m: usize) -> Result<Vec<JetPoly>> {
    let jet = x.ev_jet(m)?;
    let p = &alg.principal_triple().p_minus;
    Ok((0..alg.dim())
        .map(|b| {
            let mut coeffs: Vec<Q> = jet.coeffs().iter().map(|c| c.get(b).clone()).collect();
            coeffs[0] += p.get(b);
            JetPoly::new(coeffs).expect("m >= 1")
        })
        .collect())
}

/// `n`-th residue: the point `p_{-1} + ev_n(x)` (as a jet of Lie elements)
/// and its class.
pub fn res_n(alg: &ChevalleyAlgebra, op: &OperDisk) -> Result<(JetPoly<LieElement>, JetInvariantClass)> {
    if op.order == 0 {
        return Err(Error::Invalid("oper order must be at least 1".into()));
    }
    let n = op.order;
    let point = residue_point(alg, &op.x, n)?;
    let elems = (0..n)
        .map(|i| LieElement::from_coeffs(point.iter().map(|j| j.coeffs()[i].clone()).collect()))
        .collect();
    Ok((JetPoly::new(elems)?, chi_jet(alg, &point)))
}

/// Class of `p_{-1} + sum_{i<m} x_i t^i` in `(h*/W)_m`.
pub fn res_n_m(alg: &ChevalleyAlgebra, op: &OperDisk, m: usize) -> Result<JetInvariantClass> {
    if m == 0 || m > op.order {
        return Err(Error::Invalid(format!("need 1 <= m <= n = {}, got m = {m}", op.order)));
    }
    Ok(chi_jet(alg, &residue_point(alg, &op.x, m)?))
}

/// The constant in front of `t^{-2} p_1` produced by the two explicit gauge
/// steps of the embedding.
pub fn embed_shift(n: usize) -> Q {
    let n = n as i64;
    Q::new((n * n - 2 * n).into(), 4.into())
}

/// Canonical form on the punctured disk of the oper underlying a disk oper of
/// order `n`. Requires `x` known modulo `t^{n+1}`.
///
/// Steps: disk reduction to `t^{-n}(p_{-1} + sum c_j p_j)`, conjugation by
/// `rho(t)^{-n}`, then the gauge `exp(-n p_1 / 2t)`. The result is checked to
/// lie in `V_can` with `v_j` of order at least `-n(d_j+1)`.
pub fn embed(alg: &ChevalleyAlgebra, op: &OperDisk) -> Result<CanonicalForm> {
    let n = op.order;
    if op.x.precision() < n as i64 + 1 {
        return Err(Error::Precision(format!(
            "embed needs x modulo t^{}, got O(t^{})",
            n + 1,
            op.x.precision()
        )));
    }
    let (disk, _) = canonicalize_disk(alg, op)?;
    let vcan = alg.vcan();
    let ni = n as i64;
    let exact = disk.v.iter().map(TruncLaurent::precision).max().unwrap_or(1) + 8;

    // rho(t)^{-n}: the degree-d piece picks up t^{-n(d+1)}, plus n rho / t.
    let mut x = Graded::default();
    for ((c, p), d) in disk.v.iter().zip(&vcan.vectors).zip(&vcan.degrees) {
        x.add(*d, c.shift(-ni * (d + 1)).map(|a| p.scale(a)));
    }
    let rho = alg.principal_triple().semisimple.scale(&Q::new(ni.into(), 2.into()));
    x.add(0, TruncLaurent::monomial(-1, rho, exact));

    let p1 = &alg.principal_triple().p_plus;
    let y = TruncLaurent::monomial(-1, p1.scale(&Q::new((-ni).into(), 2.into())), exact);
    let x = apply_exp(alg, &x, &y, 1, 0);

    let tables = DsTables::new(alg)?;
    let mut v = Vec::with_capacity(vcan.vectors.len());
    for k in 0..=alg.max_degree() {
        let Some(comp) = x.comps.get(&k) else { continue };
        let parts: Vec<(LieElement, Vec<Q>)> = comp.coeffs().iter().map(|c| tables.decompose(alg, k, c)).collect();
        if parts.iter().any(|(z, _)| !z.is_zero()) {
            return Err(Error::Invariant(format!("embedded oper has a non-canonical degree-{k} component")));
        }
        for (slot, &j) in tables.degrees[k as usize].v_idx.iter().enumerate() {
            let coeffs = parts.iter().map(|(_, vs)| vs[slot].clone()).collect();
            v.push((j, TruncLaurent::new(comp.valuation(), coeffs)?.trim()));
        }
    }
    v.sort_by_key(|(j, _)| *j);
    let v: Vec<TruncLaurent> = v.into_iter().map(|(_, s)| s).collect();
    if v.len() != vcan.vectors.len() {
        return Err(Error::Invariant("embedded oper misses a canonical coordinate".into()));
    }
    for (vj, d) in v.iter().zip(&vcan.degrees) {
        if vj.order().is_some_and(|o| o < -ni * (d + 1)) {
            return Err(Error::Invariant(format!(
                "embedded coordinate of degree {d} has a pole beyond t^{}",
                -ni * (d + 1)
            )));
        }
    }
    Ok(CanonicalForm { v })
}

/// Class of the disk oper whose embedding is `canonical`, read off from
/// `u_j = t^{n(d_j+1)} v_j` after removing the `t^{2n-2}` shift from `u_1`.
pub fn residue_from_canonical(alg: &ChevalleyAlgebra, canonical: &CanonicalForm, n: usize) -> Result<JetInvariantClass> {
    let vcan = alg.vcan();
    if n == 0 {
        return Err(Error::Invalid("order must be at least 1".into()));
    }
    if canonical.v.len() != vcan.vectors.len() {
        return Err(Error::Dimension { expected: vcan.vectors.len(), got: canonical.v.len() });
    }
    let ni = n as i64;
    let mut c = Vec::with_capacity(vcan.vectors.len());
    for (j, (vj, d)) in canonical.v.iter().zip(&vcan.degrees).enumerate() {
        let mut u = vj.shift(ni * (d + 1));
        if j == 0 {
            u = u.add_monomial(2 * ni - 2, &-embed_shift(n));
        }
        if u.order().is_some_and(|o| o < 0) {
            return Err(Error::Invalid(format!(
                "canonical coordinate {} is not in the order-{n} pattern",
                j + 1
            )));
        }
        c.push(u.with_valuation_at_most(0).ev_jet(n)?);
    }
    let one = JetPoly::constant(Q::one(), n);
    let point = alg.kostant_point(&c, &one);
    Ok(chi_jet(alg, &point))
}

/// Disk oper in canonical form with the given coordinates.
pub fn disk_from_coordinates(alg: &ChevalleyAlgebra, order: usize, c: &[TruncLaurent]) -> Result<OperDisk> {
    let op = canonical_to_punctured(alg, &CanonicalForm { v: c.to_vec() })?;
    Ok(OperDisk { order, x: op.x })
}

/// A disk oper whose `n`-th residue is the given class, built through the
/// Kostant section; coordinates are known modulo `t^precision`.
pub fn disk_with_class(alg: &ChevalleyAlgebra, class: &JetInvariantClass, precision: i64) -> Result<OperDisk> {
    let n = class.len();
    if n == 0 || class.jets.len() != alg.rank() {
        return Err(Error::Dimension { expected: alg.rank(), got: class.jets.len() });
    }
    if precision < n as i64 {
        return Err(Error::Precision(format!("precision {precision} below the jet length {n}")));
    }
    let c = alg.kostant_inverse(&class.jets)?;
    let series = c
        .into_iter()
        .map(|j| {
            let mut coeffs = j.coeffs().to_vec();
            coeffs.resize(precision as usize, Q::zero());
            TruncLaurent::new(0, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    disk_from_coordinates(alg, n, &series)
}

/// Degree-by-degree list of the coordinates `v_{i,m}` of a canonical form,
/// i.e. the coefficient of `t^{-m-1}` in `v_i`.
pub fn coordinate(canonical: &CanonicalForm, i: usize, m: i64) -> Result<Q> {
    canonical
        .v
        .get(i)
        .ok_or_else(|| Error::Invalid(format!("no canonical coordinate {}", i + 1)))?
        .coeff(-m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn sl(l: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build("A", l).unwrap()
    }

    fn lie_series(alg: &ChevalleyAlgebra, v: i64, terms: &[(&str, &[i64])], len: usize) -> LieSeries {
        let mut coeffs = vec![alg.zero(); len];
        for (label, cs) in terms {
            let k = alg.index_of(label).unwrap();
            for (i, c) in cs.iter().enumerate() {
                coeffs[i].set(k, q(*c));
            }
        }
        TruncLaurent::new(v, coeffs).unwrap()
    }

    #[test]
    fn sl2_gauge_by_constant_e() {
        let g = sl(1);
        let op = OperPunctured { x: lie_series(&g, 0, &[], 4) };
        let c = qf(3, 2);
        let y = TruncLaurent::monomial(0, g.basis(g.e(0)).scale(&c), 6);
        let s = GaugeTransform::new(&g, vec![(1, y)]).unwrap();
        let out = gauge_apply_punctured(&g, &s, &op).unwrap();
        let x0 = out.x.coeff(0).unwrap();
        assert_eq!(x0.get(g.h(0)), &c);
        assert_eq!(x0.get(g.e(0)), &-(c.clone() * c));
        assert!(x0.get(g.f(0)).is_zero());
    }

    #[test]
    fn gauge_and_inverse_cancel() {
        let g = sl(1);
        let op = OperPunctured { x: lie_series(&g, -1, &[("h", &[1, 2, 0, 1]), ("e", &[0, 3, 1, 2])], 4) };
        let y = lie_series(&g, 0, &[("e", &[2, -1, 1, 0, 1])], 5);
        let there = GaugeTransform::new(&g, vec![(1, y.clone())]).unwrap();
        let back = GaugeTransform::new(&g, vec![(1, y.neg())]).unwrap();
        let out = gauge_apply_punctured(&g, &back, &gauge_apply_punctured(&g, &there, &op).unwrap()).unwrap();
        assert!(out.x.agrees_with(&op.x));
        assert!(out.x.precision() >= 1);
    }

    #[test]
    fn sl2_reduction_matches_scalar_normal_form() {
        // d + f + phi h reduces to v = phi^2 + phi' on sl_2.
        let g = sl(1);
        let phi = TruncLaurent::from_ints(0, &[1, 2, -1, 3, 0]);
        let op = OperPunctured { x: phi.map(|a| g.basis(g.h(0)).scale(a)) };
        let (canon, gauge) = canonicalize_punctured(&g, &op).unwrap();
        let expect = phi.mul(&phi).add(&phi.derivative());
        assert!(canon.v[0].agrees_with(&expect));
        assert_eq!(gauge.factors().len(), 1);
        let twice = canonicalize_punctured(&g, &canonical_to_punctured(&g, &canon).unwrap()).unwrap();
        assert!(twice.0.agrees_with(&canon));
        assert!(twice.1.is_identity());
    }

    #[test]
    fn residues_ignore_high_order_terms() {
        let g = sl(1);
        let op = OperDisk { order: 2, x: lie_series(&g, 0, &[("e", &[0, 0, 1])], 3) };
        let (_, class) = res_n(&g, &op).unwrap();
        assert_eq!(class.jets[0].coeffs(), &[q(0), q(0)]);
        let c = qf(-5, 7);
        let op = OperDisk { order: 1, x: TruncLaurent::monomial(0, g.basis(g.e(0)).scale(&c), 2) };
        assert_eq!(res_n(&g, &op).unwrap().1.jets[0].coeffs(), &[c]);
        assert!(res_n_m(&g, &op, 2).is_err());
    }

    #[test]
    fn embed_sl2_order_one_shift() {
        let g = sl(1);
        let c0 = q(3);
        let op = OperDisk { order: 1, x: lie_series(&g, 0, &[("e", &[3, 1, 0])], 3) };
        let e = embed(&g, &op).unwrap();
        assert_eq!(e.v[0].coeff(-2).unwrap(), c0 - qf(1, 4));
        assert_eq!(e.v[0].coeff(-1).unwrap(), q(1));
        let class = residue_from_canonical(&g, &e, 1).unwrap();
        assert_eq!(class, res_n(&g, &op).unwrap().1);
    }

    #[test]
    fn embed_order_two_pattern() {
        let g = sl(1);
        let op = OperDisk { order: 2, x: lie_series(&g, 0, &[("e", &[1, -2, 5]), ("h", &[1, 1, 1])], 3) };
        let e = embed(&g, &op).unwrap();
        assert!(e.v[0].order().unwrap() >= -4);
        assert_eq!(residue_from_canonical(&g, &e, 2).unwrap(), res_n(&g, &op).unwrap().1);
    }

    #[test]
    fn embed_shift_values() {
        assert_eq!(embed_shift(1), qf(-1, 4));
        assert_eq!(embed_shift(2), q(0));
        assert_eq!(embed_shift(3), qf(3, 4));
    }
}
