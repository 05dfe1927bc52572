use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rat, rational_to_string};
use crate::{Error, Result};

/// A Laurent polynomial in one variable with rational coefficients.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// polynomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (e + by, a.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dmin), Some(dmax)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let lead = divisor.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        // Long division on the highest exponent; the remainder's span
        // shrinks by one each step until it is shorter than the divisor.
        while let (Some(rmin), Some(rmax)) = (rem.min_exp(), rem.max_exp()) {
            if rmax - rmin < dmax - dmin {
                return Err(Error::invalid("Laurent polynomial division is not exact"));
            }
            let c = rem.coeff(rmax) / &lead;
            let e = rmax - dmax;
            quot.add_term(e, c.clone());
            rem = &rem - &divisor.shift(e).scale(&c);
        }
        Ok(quot)
    }

    /// Substitutes a concrete rational value for the variable.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        if t.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let pow = if *e >= 0 {
                num_traits::pow(t.clone(), *e as usize)
            } else {
                num_traits::pow(t.recip(), (-*e) as usize)
            };
            acc += c * pow;
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `t^2 + 1 + t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", rational_to_string(&mag))?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.coeffs
                .iter()
                .map(|(e, c)| (e.to_string(), rational_to_string(c))),
        )
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// The balanced quantum integer `[n] = (t^n - t^-n) / (t - t^-1)`.
pub fn quantum_int(n: i64) -> LaurentPoly {
    let sign = n.signum();
    let m = n.abs();
    LaurentPoly::from_terms((0..m).map(|k| (m - 1 - 2 * k, rat(sign))))
}

/// `[n]! = [1][2]...[n]`.
pub fn quantum_factorial(n: u32) -> LaurentPoly {
    (1..=n as i64).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_int(k))
}

/// The quantum binomial `[m]! / ([p]! [m-p]!)`.
pub fn quantum_binomial(m: u32, p: u32) -> Result<LaurentPoly> {
    if p > m {
        return Err(Error::invalid(format!(
            "quantum binomial needs p <= m, got m = {m}, p = {p}"
        )));
    }
    let den = &quantum_factorial(p) * &quantum_factorial(m - p);
    quantum_factorial(m).div_exact(&den)
}
