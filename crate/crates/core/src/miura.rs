//! Cartan connections `d/dt + t^{-n} u(t)`, the twist `theta` and the Miura
//! transformation to opers.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{BasisKind, ChevalleyAlgebra, LieSeries};
use crate::opers::{canonicalize_punctured, residue_from_canonical, CanonicalForm, JetInvariantClass, OperPunctured};
use crate::takiff::{rho_n, varpi, JetWeight};

/// Which twisted bundle the connection lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    PlusRho,
    MinusRho,
}

impl Twist {
    pub fn as_str(self) -> &'static str {
        match self {
            Twist::PlusRho => "+rho",
            Twist::MinusRho => "-rho",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+rho" => Ok(Twist::PlusRho),
            "-rho" => Ok(Twist::MinusRho),
            other => Err(Error::Parse(format!("unknown twist {other:?}"))),
        }
    }
}

/// `d/dt + t^{-order} u(t)` with `u` Cartan-valued and regular.
#[derive(Clone, Debug, PartialEq)]
pub struct HConnection {
    pub twist: Twist,
    pub order: usize,
    pub u: LieSeries,
}

impl HConnection {
    pub fn new(alg: &ChevalleyAlgebra, twist: Twist, order: usize, u: LieSeries) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("connection order must be at least 1".into()));
        }
        for c in u.coeffs() {
            if c.dim() != alg.dim() {
                return Err(Error::Dimension { expected: alg.dim(), got: c.dim() });
            }
            let off_cartan = (0..alg.dim()).any(|k| !matches!(alg.basis_kind(k), BasisKind::H(_)) && !c.get(k).is_zero());
            if off_cartan {
                return Err(Error::Invalid("connection must be Cartan-valued".into()));
            }
        }
        if u.order().is_some_and(|o| o < 0) {
            return Err(Error::Invalid("u must be regular at t = 0".into()));
        }
        Ok(Self { twist, order, u })
    }
}

/// Negates `u` and moves a `-rho` connection to the `+rho` side.
pub fn theta(conn: &HConnection) -> Result<HConnection> {
    if conn.twist != Twist::MinusRho {
        return Err(Error::Invalid("theta takes a connection on the -rho side".into()));
    }
    Ok(HConnection { twist: Twist::PlusRho, order: conn.order, u: conn.u.neg() })
}

/// Canonical form of the oper `d/dt + p_{-1} + t^{-n} u(t)`.
pub fn miura_transform(alg: &ChevalleyAlgebra, conn: &HConnection) -> Result<CanonicalForm> {
    if conn.twist != Twist::PlusRho {
        return Err(Error::Invalid("the Miura transformation takes a connection on the +rho side".into()));
    }
    let op = OperPunctured { x: conn.u.shift(-(conn.order as i64)) };
    Ok(canonicalize_punctured(alg, &op)?.0)
}

/// The jet weight of `u` modulo `t^n`.
pub fn res_h(alg: &ChevalleyAlgebra, conn: &HConnection) -> Result<JetWeight> {
    let jet = conn.u.with_valuation_at_most(0).ev_jet(conn.order)?;
    JetWeight::from_jet(jet.coeffs().iter().map(|h| alg.cartan_to_weight(h)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiuraReport {
    /// `varpi(res_h - rho_n)`.
    pub predicted: JetInvariantClass,
    /// Residue class of the Miura transform.
    pub observed: JetInvariantClass,
}

impl MiuraReport {
    pub fn passed(&self) -> bool {
        self.predicted == self.observed
    }
}

/// Compares `varpi(res_h(conn) - rho_n)` with the residue of the oper
/// `miura_transform(conn)`. A `-rho` connection is first moved across by `theta`.
pub fn miura_residue_check(alg: &ChevalleyAlgebra, conn: &HConnection) -> Result<MiuraReport> {
    let moved;
    let conn = if conn.twist == Twist::MinusRho {
        moved = theta(conn)?;
        &moved
    } else {
        conn
    };
    let n = conn.order;
    let shifted = res_h(alg, conn)?.sub(&rho_n(alg, n)?)?;
    let predicted = varpi(alg, &shifted)?;
    let observed = residue_from_canonical(alg, &miura_transform(alg, conn)?, n)?;
    Ok(MiuraReport { predicted, observed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, Q};
    use crate::series::{Coeff, TruncLaurent};

    fn cartan_series(alg: &ChevalleyAlgebra, cs: &[Q]) -> LieSeries {
        let h = alg.basis(alg.h(0));
        TruncLaurent::new(0, cs.iter().map(|c| h.scale(c)).collect()).unwrap()
    }


    #[test]
    fn sl2_order_one_oracle() {
        // u = a h: the oper is d + f + (a^2 - a) t^{-2} e, class (a - 1/2)^2.
        let g = ChevalleyAlgebra::build("A", 1).unwrap();
        let a = qf(7, 3);
        let conn = HConnection::new(&g, Twist::PlusRho, 1, cartan_series(&g, &[a.clone(), q(0), q(0)])).unwrap();
        let canon = miura_transform(&g, &conn).unwrap();
        assert_eq!(canon.v[0].coeff(-2).unwrap(), &a * &a - &a);
        let report = miura_residue_check(&g, &conn).unwrap();
        let half = qf(1, 2);
        assert_eq!(report.observed.jets[0].coeffs(), &[(&a - &half) * (&a - &half)]);
        assert!(report.passed());
    }

    #[test]
    fn trivial_connection() {
        let g = ChevalleyAlgebra::build("A", 1).unwrap();
        let conn = HConnection::new(&g, Twist::PlusRho, 1, cartan_series(&g, &[q(0), q(0)])).unwrap();
        let canon = miura_transform(&g, &conn).unwrap();
        assert!(canon.v[0].is_zero_in_window());
        assert_eq!(miura_residue_check(&g, &conn).unwrap().observed.jets[0].coeffs(), &[qf(1, 4)]);
    }

    #[test]
    fn theta_negates_and_flips() {
        let g = ChevalleyAlgebra::build("A", 1).unwrap();
        let conn = HConnection::new(&g, Twist::MinusRho, 2, cartan_series(&g, &[q(1), q(2), q(3)])).unwrap();
        let t = theta(&conn).unwrap();
        assert_eq!(t.twist, Twist::PlusRho);
        assert_eq!(res_h(&g, &t).unwrap(), res_h(&g, &conn).unwrap().neg());
        assert!(theta(&t).is_err());
        // res_h keeps the first n jet coefficients.
        assert_eq!(res_h(&g, &conn).unwrap().jet_coeffs(), vec![vec![q(2)], vec![q(4)]]);
    }
}
