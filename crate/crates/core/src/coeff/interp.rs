use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::rational_to_string;
use crate::{Error, Result};

/// A polynomial in `q` with rational coefficients, lowest degree first,
/// without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if !mag.is_one() || e == 0 {
                write!(f, "{}", rational_to_string(&mag))?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational_to_string))
    }
}

/// Fits the unique polynomial of degree `<= degree_bound` through the first
/// `degree_bound + 1` samples and checks every remaining sample against it.
pub fn interpolate_in_q(samples: &[(u64, BigRational)], degree_bound: usize) -> Result<QPoly> {
    if samples.len() < degree_bound + 1 {
        return Err(Error::invalid(format!(
            "interpolation with degree bound {degree_bound} needs at least {} samples, got {}",
            degree_bound + 1,
            samples.len()
        )));
    }
    for (i, (q, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(r, _)| r == q) {
            return Err(Error::invalid(format!("repeated sample point q = {q}")));
        }
    }
    let (fit, extra) = samples.split_at(degree_bound + 1);
    let xs: Vec<BigRational> = fit
        .iter()
        .map(|(q, _)| BigRational::from_integer(BigInt::from(*q)))
        .collect();

    // Lagrange basis polynomials, expanded into coefficient form.
    let mut coeffs = vec![BigRational::zero(); fit.len()];
    for (i, (_, y)) in fit.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= &xs[i] - xj;
        }
        let scale = y / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    let poly = QPoly::new(coeffs);

    for (q, y) in extra {
        if poly.eval(&BigRational::from_integer(BigInt::from(*q))) != *y {
            return Err(Error::InterpolationUnstable { witness: *q });
        }
    }
    Ok(poly)
}
