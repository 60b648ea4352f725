//! Truncated Laurent series and jets with exact coefficients.
//!
//! A [`TruncLaurent`] stores the coefficients `c_k` for `v <= k < N`. Below
//! the valuation `v` every coefficient is known to vanish; from the precision
//! `N` on nothing is known. Arithmetic never invents coefficients past `N`:
//! every result carries the weakest precision its inputs imply.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Coefficient space of a series: the rationals, or a vector space over them.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn scale(&self, s: &Q) -> Self;

    fn neg_coeff(&self) -> Self {
        self.scale(&-Q::one())
    }
    fn sub_coeff(&self, other: &Self) -> Self {
        self.add_coeff(&other.neg_coeff())
    }
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, s: &Q) -> Self {
        self * s
    }
}

/// Commutative rings that the invariant-polynomial code evaluates over.
pub trait CRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rscale(&self, s: &Q) -> Self;
    fn rneg(&self) -> Self {
        self.rscale(&-Q::one())
    }
    fn rsub(&self, o: &Self) -> Self {
        self.radd(&o.rneg())
    }
}

impl CRing for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rscale(&self, s: &Q) -> Self {
        self * s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncLaurent<C = Q> {
    valuation: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncLaurent<C> {
    /// Builds a series from the coefficients of `t^v, t^{v+1}, ...`.
    pub fn new(valuation: i64, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("series window must be nonempty (N > v)".into()));
        }
        Ok(Self { valuation, coeffs })
    }

    /// The series `O(t^precision)` stored from `valuation` on.
    pub fn zero(valuation: i64, precision: i64, zero: C) -> Self {
        assert!(precision > valuation, "precision must exceed valuation");
        Self {
            valuation,
            coeffs: vec![zero; (precision - valuation) as usize],
        }
    }

    /// `c t^k` known through precision `precision`.
    pub fn monomial(k: i64, c: C, precision: i64) -> Self {
        assert!(precision > k, "precision must exceed the exponent");
        let z = c.zero_like();
        let mut coeffs = vec![z; (precision - k) as usize];
        coeffs[0] = c;
        Self { valuation: k, coeffs }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn zero_coeff(&self) -> C {
        self.coeffs[0].zero_like()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; below the valuation it is exactly zero, from the
    /// precision on it is unknown and an error.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if k >= self.precision() {
            return Err(Error::Precision(format!(
                "coefficient t^{k} requested from a series known to O(t^{})",
                self.precision()
            )));
        }
        if k < self.valuation {
            return Ok(self.zero_coeff());
        }
        Ok(self.coeffs[(k - self.valuation) as usize].clone())
    }

    fn coeff_ref(&self, k: i64) -> Option<&C> {
        if k < self.valuation || k >= self.precision() {
            None
        } else {
            Some(&self.coeffs[(k - self.valuation) as usize])
        }
    }

    pub fn is_zero_in_window(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero_coeff)
    }

    /// Exponent of the first nonzero coefficient in the window.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero_coeff())
            .map(|p| self.valuation + p as i64)
    }

    pub fn add(&self, other: &Self) -> Self {
        let v = self.valuation.min(other.valuation);
        let n = self.precision().min(other.precision());
        let z = self.zero_coeff();
        let coeffs = (v..n)
            .map(|k| match (self.coeff_ref(k), other.coeff_ref(k)) {
                (Some(a), Some(b)) => a.add_coeff(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => z.clone(),
            })
            .collect();
        Self { valuation: v, coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::neg_coeff)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Applies a coefficientwise map (which must send zero to zero).
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncLaurent<D> {
        TruncLaurent {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplication by the exact monomial `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Formal derivative in `t`; the precision drops by one.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Q::from_integer((self.valuation + i as i64).into())))
            .collect();
        Self {
            valuation: self.valuation - 1,
            coeffs,
        }
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue_coeff(&self) -> Result<C> {
        if self.precision() <= -1 {
            return Err(Error::Precision(format!(
                "residue needs the t^-1 coefficient, series known to O(t^{})",
                self.precision()
            )));
        }
        self.coeff(-1)
    }

    /// Adds the exact term `c t^k`. Terms past the precision are invisible.
    pub fn add_monomial(&self, k: i64, c: &C) -> Self {
        let n = self.precision();
        if k >= n {
            return self.clone();
        }
        let v = self.valuation.min(k);
        let z = self.zero_coeff();
        let mut coeffs: Vec<C> = (v..n).map(|j| self.coeff_ref(j).cloned().unwrap_or_else(|| z.clone())).collect();
        let slot = &mut coeffs[(k - v) as usize];
        *slot = slot.add_coeff(c);
        Self { valuation: v, coeffs }
    }

    /// Moves the valuation up past leading zeros. An all-zero window keeps a
    /// single stored coefficient.
    pub fn trim(&self) -> Self {
        let n = self.precision();
        let first = self.order().unwrap_or(n - 1);
        Self {
            valuation: first,
            coeffs: self.coeffs[(first - self.valuation) as usize..].to_vec(),
        }
    }

    /// Forgets every coefficient from `precision` on.
    pub fn truncate(&self, precision: i64) -> Result<Self> {
        if precision > self.precision() {
            return Err(Error::Precision(format!(
                "cannot raise precision from {} to {precision}",
                self.precision()
            )));
        }
        if precision <= self.valuation {
            return Ok(Self::zero(precision - 1, precision, self.zero_coeff()));
        }
        Ok(Self {
            valuation: self.valuation,
            coeffs: self.coeffs[..(precision - self.valuation) as usize].to_vec(),
        })
    }

    /// Lowers the stored valuation to `v`, padding with exact zeros.
    pub fn with_valuation_at_most(&self, v: i64) -> Self {
        if v >= self.valuation {
            return self.clone();
        }
        let z = self.zero_coeff();
        let mut coeffs = vec![z; (self.valuation - v) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { valuation: v, coeffs }
    }

    /// True when both series agree on every exponent both of them know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.precision().min(other.precision());
        let v = self.valuation.min(other.valuation);
        (v..n).all(|k| self.coeff(k).ok() == other.coeff(k).ok())
    }

    /// Coefficients of `t^0 .. t^{n-1}`.
    pub fn ev_jet(&self, n: usize) -> Result<JetPoly<C>> {
        if n == 0 {
            return Err(Error::Invalid("jet length must be positive".into()));
        }
        if self.valuation < 0 && self.coeffs[..((-self.valuation) as usize).min(self.coeffs.len())]
            .iter()
            .any(|c| !c.is_zero_coeff())
        {
            return Err(Error::Invalid("ev_n needs a series without polar part".into()));
        }
        if self.precision() < n as i64 {
            return Err(Error::Precision(format!(
                "ev_{n} needs precision >= {n}, series known to O(t^{})",
                self.precision()
            )));
        }
        let coeffs = (0..n as i64).map(|k| self.coeff(k)).collect::<Result<Vec<_>>>()?;
        Ok(JetPoly { coeffs })
    }
}

/// Truncated product with an arbitrary bilinear map on coefficients.
///
/// Valuation `v_a + v_b`; precision `min(N_a + v_b, N_b + v_a)`.
pub fn cauchy<A: Coeff, B: Coeff, C: Coeff>(
    a: &TruncLaurent<A>,
    b: &TruncLaurent<B>,
    zero: C,
    f: impl Fn(&A, &B) -> C,
) -> TruncLaurent<C> {
    let v = a.valuation + b.valuation;
    let n = (a.precision() + b.valuation).min(b.precision() + a.valuation);
    let mut coeffs = vec![zero; (n - v) as usize];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero_coeff() {
            continue;
        }
        let ka = a.valuation + i as i64;
        for (j, cb) in b.coeffs.iter().enumerate() {
            let k = ka + b.valuation + j as i64;
            if k >= n {
                break;
            }
            if cb.is_zero_coeff() {
                continue;
            }
            let slot = &mut coeffs[(k - v) as usize];
            *slot = slot.add_coeff(&f(ca, cb));
        }
    }
    TruncLaurent { valuation: v, coeffs }
}

impl TruncLaurent<Q> {
    pub fn from_ints(valuation: i64, coeffs: &[i64]) -> Self {
        Self::new(valuation, coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
            .expect("nonempty coefficient list")
    }

    pub fn mul(&self, other: &Self) -> Self {
        cauchy(self, other, Q::zero(), |a, b| a * b)
    }

    /// Scalar series times a vector-valued series.
    pub fn mul_vec<C: Coeff>(&self, other: &TruncLaurent<C>) -> TruncLaurent<C> {
        cauchy(self, other, other.zero_coeff(), |a, b| b.scale(a))
    }
}

/// A jet `c_0 + c_1 t + ... + c_{n-1} t^{n-1}` modulo `t^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetPoly<C = Q> {
    coeffs: Vec<C>,
}

impl<C: Coeff> JetPoly<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("jet length must be positive".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.len() {
            return Err(Error::Invalid(format!("cannot truncate a length-{} jet to {m}", self.len())));
        }
        Ok(Self { coeffs: self.coeffs[..m].to_vec() })
    }

    pub fn into_series(self) -> TruncLaurent<C> {
        TruncLaurent { valuation: 0, coeffs: self.coeffs }
    }
}

impl JetPoly<Q> {
    pub fn constant(c: Q, n: usize) -> Self {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[0] = c;
        Self { coeffs }
    }
}

impl CRing for JetPoly<Q> {
    fn zero_like(&self) -> Self {
        Self { coeffs: vec![Q::zero(); self.len()] }
    }
    fn one_like(&self) -> Self {
        Self::constant(Q::one(), self.len())
    }
    fn radd(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len(), "jet lengths differ");
        Self {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    fn rmul(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len(), "jet lengths differ");
        let n = self.len();
        let mut coeffs = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }
    fn rscale(&self, s: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn s(v: i64, c: &[i64]) -> TruncLaurent {
        TruncLaurent::from_ints(v, c)
    }

    #[test]
    fn add_cancels_and_meets_precision() {
        let a = s(0, &[1, 1]);
        let b = s(0, &[-1, 1]);
        let c = a.add(&b);
        assert_eq!(c.coeff(0).unwrap(), q(0));
        assert_eq!(c.coeff(1).unwrap(), q(2));
        let p3 = s(0, &[1, 2, 3]);
        let p5 = s(0, &[1, 2, 3, 4, 5]);
        assert_eq!(p3.add(&p5).precision(), 3);
        let polar = s(-1, &[1, 0, 1]);
        assert_eq!(polar.add(&s(0, &[0, 0])).valuation(), -1);
    }

    #[test]
    fn products() {
        let a = s(0, &[1, 1, 0, 0]);
        let b = s(0, &[1, -1, 0, 0]);
        assert_eq!(a.mul(&b), s(0, &[1, 0, -1, 0]));
        let geo = s(0, &[1, 1, 1, 1, 1]);
        let one_minus = s(0, &[1, -1, 0, 0, 0]);
        assert_eq!(geo.mul(&one_minus), s(0, &[1, 0, 0, 0, 0]));
        let tm2 = s(-2, &[1, 0, 0, 0, 0, 0, 0]);
        let t3 = s(3, &[1, 0, 0]);
        let p = tm2.mul(&t3).trim();
        assert_eq!(p.order(), Some(1));
        assert_eq!(p.coeff(1).unwrap(), q(1));
    }

    #[test]
    fn product_precision_rule() {
        let a = s(-1, &[1, 2, 3]); // known to O(t^2)
        let b = s(1, &[1, 1]); // known to O(t^3)
        let p = a.mul(&b);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.precision(), 2);
    }

    #[test]
    fn derivatives_and_residues() {
        assert_eq!(s(2, &[1, 0]).derivative(), s(1, &[2, 0]));
        let inv = s(-1, &[1, 0]);
        assert_eq!(inv.derivative().coeff(-2).unwrap(), q(-1));
        assert!(s(0, &[5, 0]).derivative().is_zero_in_window());
        assert_eq!(inv.residue_coeff().unwrap(), q(1));
        assert_eq!(s(2, &[1]).residue_coeff().unwrap(), q(0));
        let mixed = TruncLaurent::new(-1, vec![qf(3, 2), q(0), q(5)]).unwrap();
        assert_eq!(mixed.residue_coeff().unwrap(), qf(3, 2));
        assert!(s(-5, &[1, 1]).residue_coeff().is_err());
    }

    #[test]
    fn jets() {
        let a = s(0, &[1, 2, 3]);
        assert_eq!(a.ev_jet(2).unwrap().coeffs(), &[q(1), q(2)]);
        assert_eq!(s(1, &[1]).ev_jet(1).unwrap().coeffs(), &[q(0)]);
        assert!(matches!(s(0, &[1, 2]).ev_jet(3), Err(Error::Precision(_))));
        assert!(s(-1, &[1, 0, 0]).ev_jet(1).is_err());
    }

    #[test]
    fn unknown_coefficients_are_errors() {
        let a = s(0, &[1, 2]);
        assert!(a.coeff(2).is_err());
        assert_eq!(a.coeff(-3).unwrap(), q(0));
    }

    #[test]
    fn monomial_insertion() {
        let a = s(0, &[1, 1, 1]);
        let b = a.add_monomial(-2, &q(4));
        assert_eq!(b.valuation(), -2);
        assert_eq!(b.coeff(-2).unwrap(), q(4));
        assert_eq!(b.precision(), 3);
        assert_eq!(a.add_monomial(7, &q(1)), a);
    }

    #[test]
    fn jet_ring() {
        let a = JetPoly::new(vec![q(1), q(1), q(0)]).unwrap();
        let sq = a.rmul(&a);
        assert_eq!(sq.coeffs(), &[q(1), q(2), q(1)]);
        let t = JetPoly::new(vec![q(0), q(1)]).unwrap();
        assert_eq!(t.rmul(&t).coeffs(), &[q(0), q(0)]);
    }
}
