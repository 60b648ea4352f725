//! Straightening in modules induced from a character.
//!
//! A module is described by a set of generators (modes), a bracket with an
//! optional central scalar, the subset of *creators* spanning a complement
//! to the inducing subalgebra, and the character by which the remaining
//! generators act on the generating vector. Vectors are combinations of
//! creator monomials sorted in the generator order.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Zero;

use crate::rational::Q;

/// Bracket of two generators: a combination of generators plus a central
/// scalar (the central element acts by one).
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket<G> {
    pub terms: Vec<(G, Q)>,
    pub central: Q,
}

pub trait InducedData {
    type Gen: Clone + Ord + Hash + Debug;

    fn is_creator(&self, g: &Self::Gen) -> bool;
    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> Bracket<Self::Gen>;
    /// Scalar by which a non-creator acts on the generating vector.
    fn character(&self, g: &Self::Gen) -> Q;
}

/// A combination of sorted creator monomials applied to the generating
/// vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwVector<G: Ord> {
    terms: BTreeMap<Vec<G>, Q>,
}

impl<G: Clone + Ord> PbwVector<G> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// The generating vector.
    pub fn vacuum() -> Self {
        Self::monomial(Vec::new(), Q::from_integer(1.into()))
    }

    /// `c * m` for a monomial that must already be sorted.
    pub fn monomial(m: Vec<G>, c: Q) -> Self {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]), "monomial must be sorted");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<G>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Q::from_integer(1.into()));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Q::from_integer((-1).into()));
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// The scalar `c` if the vector equals `c` times the generating vector.
    pub fn as_vacuum_multiple(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Longest monomial length.
    pub fn depth(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

/// Induced module with memoized straightening.
pub struct PbwModule<D: InducedData> {
    data: D,
    cache: RefCell<HashMap<(D::Gen, Vec<D::Gen>), PbwVector<D::Gen>>>,
}

impl<D: InducedData> PbwModule<D> {
    pub fn new(data: D) -> Self {
        Self { data, cache: RefCell::new(HashMap::new()) }
    }

    pub fn data(&self) -> &D {
        &self.data
    }

    pub fn act(&self, g: &D::Gen, v: &PbwVector<D::Gen>) -> PbwVector<D::Gen> {
        let mut out = PbwVector::zero();
        for (m, c) in &v.terms {
            out.add_scaled(&self.act_monomial(g, m), c);
        }
        out
    }

    /// Applies `g_1 g_2 ... g_k` (rightmost first).
    pub fn act_word(&self, word: &[D::Gen], v: &PbwVector<D::Gen>) -> PbwVector<D::Gen> {
        word.iter().rev().fold(v.clone(), |acc, g| self.act(g, &acc))
    }

    fn act_combo(&self, b: &Bracket<D::Gen>, m: &[D::Gen]) -> PbwVector<D::Gen> {
        let base = PbwVector::monomial(m.to_vec(), Q::from_integer(1.into()));
        let mut out = base.scale(&b.central);
        for (g, c) in &b.terms {
            out.add_scaled(&self.act_monomial(g, m), c);
        }
        out
    }

    pub fn act_monomial(&self, g: &D::Gen, m: &[D::Gen]) -> PbwVector<D::Gen> {
        let key = (g.clone(), m.to_vec());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let creator = self.data.is_creator(g);
        let out = match m.split_first() {
            None if creator => PbwVector::monomial(vec![g.clone()], Q::from_integer(1.into())),
            None => PbwVector::vacuum().scale(&self.data.character(g)),
            Some((first, _)) if creator && g <= first => {
                let mut w = Vec::with_capacity(m.len() + 1);
                w.push(g.clone());
                w.extend_from_slice(m);
                PbwVector::monomial(w, Q::from_integer(1.into()))
            }
            Some((first, rest)) => {
                // g y w = y (g w) + [g, y] w
                let inner = self.act_monomial(g, rest);
                let mut out = self.act(first, &inner);
                out.add_scaled(&self.act_combo(&self.data.bracket(g, first), rest), &Q::from_integer(1.into()));
                out
            }
        };
        self.cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// All sorted monomials of length at most `depth` in the given creators.
    pub fn monomials(creators: &[D::Gen], depth: usize) -> Vec<Vec<D::Gen>> {
        let mut sorted = creators.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<(Vec<D::Gen>, usize)> = vec![(Vec::new(), 0)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (m, start) in &frontier {
                for (i, g) in sorted.iter().enumerate().skip(*start) {
                    let mut w = m.clone();
                    w.push(g.clone());
                    out.push(w.clone());
                    next.push((w, i));
                }
            }
            frontier = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    /// The Weyl algebra `[a, a*] = 1` acting on `C[a*]`.
    struct Weyl;

    impl InducedData for Weyl {
        type Gen = u8; // 0 = a*, 1 = a
        fn is_creator(&self, g: &u8) -> bool {
            *g == 0
        }
        fn bracket(&self, a: &u8, b: &u8) -> Bracket<u8> {
            let central = match (a, b) {
                (1, 0) => q(1),
                (0, 1) => q(-1),
                _ => q(0),
            };
            Bracket { terms: Vec::new(), central }
        }
        fn character(&self, _: &u8) -> Q {
            q(0)
        }
    }

    #[test]
    fn weyl_derivative() {
        let m = PbwModule::new(Weyl);
        let v = PbwVector::monomial(vec![0, 0, 0], q(1));
        let w = m.act(&1, &v);
        assert_eq!(w, PbwVector::monomial(vec![0, 0], q(3)));
        assert_eq!(PbwModule::<Weyl>::monomials(&[0, 1], 2).len(), 6);
    }
}
