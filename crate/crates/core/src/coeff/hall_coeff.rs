use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rational_to_string, LaurentPoly};
use crate::{Error, Result};

/// An element `a + b·v` of `Z[1/q][v]` with `v² = q`, for one fixed prime
/// power `q`.
///
/// Both parts are exact rationals whose denominators are powers of `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HallCoefficient {
    q: u64,
    even: BigRational,
    odd: BigRational,
}

/// One parity of a [`HallCoefficient`] in canonical form
/// `v^parity · body / q^denom_pow`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallCoefficientTerm {
    pub v_parity: u8,
    pub q_poly: String,
    pub q_denom_pow: u32,
}

impl HallCoefficient {
    pub fn zero(q: u64) -> Self {
        HallCoefficient {
            q,
            even: BigRational::zero(),
            odd: BigRational::zero(),
        }
    }

    pub fn from_int(q: u64, n: i64) -> Self {
        HallCoefficient {
            q,
            even: BigRational::from_integer(BigInt::from(n)),
            odd: BigRational::zero(),
        }
    }

    /// `v^exp`, reduced with `v² = q`.
    pub fn v_pow(q: u64, exp: i64) -> Self {
        let half = exp.div_euclid(2);
        let parity = exp.rem_euclid(2);
        let qq = BigRational::from_integer(BigInt::from(q));
        let mag = if half >= 0 {
            num_traits::pow(qq, half as usize)
        } else {
            num_traits::pow(qq.recip(), (-half) as usize)
        };
        if parity == 0 {
            HallCoefficient {
                q,
                even: mag,
                odd: BigRational::zero(),
            }
        } else {
            HallCoefficient {
                q,
                even: BigRational::zero(),
                odd: mag,
            }
        }
    }

    /// Evaluates a Laurent polynomial in `v` (or `t = v`) at this `q`.
    pub fn from_laurent(q: u64, poly: &LaurentPoly) -> Self {
        let mut acc = HallCoefficient::zero(q);
        for (e, c) in poly.terms() {
            acc = &acc + &Self::v_pow(q, e).scale(c);
        }
        acc
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn even(&self) -> &BigRational {
        &self.even
    }

    pub fn odd(&self) -> &BigRational {
        &self.odd
    }

    /// Part with the given `v`-parity (0 or 1).
    pub fn part(&self, parity: u8) -> &BigRational {
        if parity == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        HallCoefficient {
            q: self.q,
            even: &self.even * c,
            odd: &self.odd * c,
        }
    }

    pub fn terms(&self) -> Vec<HallCoefficientTerm> {
        [(0u8, &self.even), (1u8, &self.odd)]
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(parity, r)| {
                let (body, pow) = split_q_power(r, self.q);
                HallCoefficientTerm {
                    v_parity: parity,
                    q_poly: rational_to_string(&body),
                    q_denom_pow: pow,
                }
            })
            .collect()
    }

    pub fn from_terms(q: u64, terms: &[HallCoefficientTerm]) -> Result<Self> {
        let mut acc = HallCoefficient::zero(q);
        for t in terms {
            if t.v_parity > 1 {
                return Err(Error::invalid(format!("v_parity must be 0 or 1, got {}", t.v_parity)));
            }
            let body = parse_rational(&t.q_poly)?;
            let den = num_traits::pow(BigInt::from(q), t.q_denom_pow as usize);
            let val = body / BigRational::from_integer(den);
            acc = &acc + &Self::v_pow(q, t.v_parity as i64).scale(&val);
        }
        Ok(acc)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.q, other.q, "Hall coefficients over different fields");
    }
}

/// Writes `r = body / q^k` with `q ∤ body` unless `k = 0`.
pub(crate) fn split_q_power(r: &BigRational, q: u64) -> (BigRational, u32) {
    let q = BigInt::from(q);
    let mut den = r.denom().clone();
    let mut k = 0u32;
    while den.is_multiple_of(&q) && !den.is_one() {
        den /= &q;
        k += 1;
    }
    (BigRational::new(r.numer().clone(), den), k)
}

impl Add for &HallCoefficient {
    type Output = HallCoefficient;
    fn add(self, rhs: &HallCoefficient) -> HallCoefficient {
        self.check_same(rhs);
        HallCoefficient {
            q: self.q,
            even: &self.even + &rhs.even,
            odd: &self.odd + &rhs.odd,
        }
    }
}

impl Sub for &HallCoefficient {
    type Output = HallCoefficient;
    fn sub(self, rhs: &HallCoefficient) -> HallCoefficient {
        self + &(-rhs)
    }
}

impl Neg for &HallCoefficient {
    type Output = HallCoefficient;
    fn neg(self) -> HallCoefficient {
        HallCoefficient {
            q: self.q,
            even: -self.even.clone(),
            odd: -self.odd.clone(),
        }
    }
}

impl Mul for &HallCoefficient {
    type Output = HallCoefficient;
    fn mul(self, rhs: &HallCoefficient) -> HallCoefficient {
        self.check_same(rhs);
        let q = BigRational::from_integer(BigInt::from(self.q));
        HallCoefficient {
            q: self.q,
            even: &self.even * &rhs.even + &self.odd * &rhs.odd * q,
            odd: &self.even * &rhs.odd + &self.odd * &rhs.even,
        }
    }
}

impl fmt::Display for HallCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", rational_to_string(&self.even)),
            (true, false) => write!(f, "{}·v", rational_to_string(&self.odd)),
            (false, false) => write!(
                f,
                "{} + {}·v",
                rational_to_string(&self.even),
                rational_to_string(&self.odd)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{quantum_int, rat};

    #[test]
    fn v_squared_is_q() {
        for q in [2u64, 3, 5] {
            let v = HallCoefficient::v_pow(q, 1);
            assert_eq!(&v * &v, HallCoefficient::from_int(q, q as i64));
            let vinv = HallCoefficient::v_pow(q, -1);
            assert_eq!(&v * &vinv, HallCoefficient::from_int(q, 1));
            assert_eq!(HallCoefficient::v_pow(q, 3), &(&v * &v) * &v);
        }
    }

    #[test]
    fn canonical_terms() {
        // v^-3 = v / q^2
        let c = HallCoefficient::v_pow(3, -3);
        assert_eq!(
            c.terms(),
            vec![HallCoefficientTerm {
                v_parity: 1,
                q_poly: "1".into(),
                q_denom_pow: 2
            }]
        );
        // [2] at v: v + v^-1 = (q + 1)/q · v ... with q = 2: 3/2 · v
        let two = HallCoefficient::from_laurent(2, &quantum_int(2));
        assert_eq!(two.odd(), &BigRational::new(3.into(), 2.into()));
        assert!(two.even().is_zero());
        let back = HallCoefficient::from_terms(2, &two.terms()).unwrap();
        assert_eq!(back, two);
        let mixed = &HallCoefficient::from_int(5, 7) + &HallCoefficient::v_pow(5, -1).scale(&rat(10));
        assert_eq!(mixed.terms().len(), 2);
        assert_eq!(HallCoefficient::from_terms(5, &mixed.terms()).unwrap(), mixed);
    }
}
