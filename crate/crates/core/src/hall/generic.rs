use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{HallAlgebra, HallElement};
use crate::coeff::{interpolate_in_q, split_q_power, LaurentPoly};
use crate::quiver::{Path, Quiver};
use crate::rep::Rep;
use crate::{Error, Field, Limits, PrimeField, Result};

/// What to evaluate at each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallComputation {
    /// `[S^{i_1}]·…·[S^{i_n}]` (vertex indices).
    Word(Vec<usize>),
    /// The quantum Serre sum for the ordered pair `(i, j)`.
    SerreResidual { i: usize, j: usize },
}

/// Discrete invariants used to match classes across primes: dimension
/// vector, ranks of all nontrivial path maps up to length `#Q_1` (in path
/// enumeration order), and `dim End`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassFingerprint {
    pub dim: Vec<usize>,
    pub path_ranks: Vec<usize>,
    pub end_dim: usize,
}

impl fmt::Display for ClassFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim: Vec<String> = self.dim.iter().map(|d| d.to_string()).collect();
        let ranks: Vec<String> = self.path_ranks.iter().map(|d| d.to_string()).collect();
        write!(f, "dim ({}) ranks [{}] end {}", dim.join(","), ranks.join(","), self.end_dim)
    }
}

pub fn fingerprint<F: Field>(rep: &Rep<F>) -> Result<ClassFingerprint> {
    let q = rep.quiver();
    let path_ranks = q
        .enumerate_paths(q.n_arrows())
        .iter()
        .filter(|p| matches!(p, Path::Arrows(_)))
        .map(|p| rep.path_map(p).rank(rep.field()))
        .collect();
    Ok(ClassFingerprint {
        dim: rep.dims().0.clone(),
        path_ranks,
        end_dim: rep.hom_space(rep)?.len(),
    })
}

/// A combination of fingerprinted classes with coefficients in `Q[v, v⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenericElement {
    pub terms: BTreeMap<ClassFingerprint, LaurentPoly>,
}

impl GenericElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| json!({"class": k, "coeff": c, "display": c.to_string()}))
                .collect(),
        )
    }
}

impl fmt::Display for GenericElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c})[{k}]"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn evaluate(alg: &HallAlgebra, c: &HallComputation) -> Result<HallElement> {
    match c {
        HallComputation::Word(w) => alg.monomial(w),
        HallComputation::SerreResidual { i, j } => alg.serre_residual(*i, *j),
    }
}

/// Evaluates `computation` at every prime, matches classes by fingerprint,
/// and interpolates each coefficient in `q`. The `v`-parity is split off
/// first, then the largest power of `q` in any denominator is cleared, so a
/// fitted `Σ c_j q^j / q^K` on parity `ε` becomes `Σ c_j v^{2(j-K)+ε}`.
/// `degree_bound` bounds the degree of the cleared numerator; at least
/// `degree_bound + 3` primes are required so that two surplus primes check
/// the fit.
pub fn generic_lift(
    quiver: Arc<Quiver>,
    computation: &HallComputation,
    primes: &[u64],
    degree_bound: usize,
    limits: &Limits,
) -> Result<GenericElement> {
    if primes.len() < degree_bound + 3 {
        return Err(Error::invalid(format!(
            "degree bound {degree_bound} needs at least {} primes, got {}",
            degree_bound + 3,
            primes.len()
        )));
    }
    let distinct: BTreeSet<u64> = primes.iter().copied().collect();
    if distinct.len() != primes.len() {
        return Err(Error::invalid("primes must be distinct"));
    }
    for &p in primes {
        PrimeField::new(p)?;
    }
    let per_prime: Vec<BTreeMap<ClassFingerprint, (BigRational, BigRational)>> = primes
        .par_iter()
        .map(|&p| {
            let alg = HallAlgebra::new(quiver.clone(), p, *limits)?;
            let x = evaluate(&alg, computation)?;
            let mut keyed = BTreeMap::new();
            for (id, c) in x.terms() {
                let key = fingerprint(&alg.representative(id)?)?;
                if keyed
                    .insert(key.clone(), (c.even().clone(), c.odd().clone()))
                    .is_some()
                {
                    return Err(Error::AmbiguousKey(format!(
                        "two classes share the fingerprint {key} at p = {p}"
                    )));
                }
            }
            Ok(keyed)
        })
        .collect::<Result<_>>()?;

    let keys: BTreeSet<ClassFingerprint> = per_prime.iter().flat_map(|m| m.keys().cloned()).collect();
    let mut out = GenericElement::default();
    for key in keys {
        let mut poly = LaurentPoly::zero();
        for parity in [0u8, 1] {
            let values: Vec<BigRational> = per_prime
                .iter()
                .map(|m| {
                    m.get(&key)
                        .map(|(e, o)| if parity == 0 { e.clone() } else { o.clone() })
                        .unwrap_or_default()
                })
                .collect();
            let k = primes
                .iter()
                .zip(&values)
                .map(|(&p, v)| split_q_power(v, p).1)
                .max()
                .unwrap_or(0);
            let samples: Vec<(u64, BigRational)> = primes
                .iter()
                .zip(values)
                .map(|(&p, v)| {
                    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(p), k as usize));
                    (p, v * scale)
                })
                .collect();
            let fitted = interpolate_in_q(&samples, degree_bound)?;
            for (j, c) in fitted.coeffs().iter().enumerate() {
                poly.add_term(2 * (j as i64 - k as i64) + parity as i64, c.clone());
            }
        }
        if !poly.is_zero() {
            out.terms.insert(key, poly);
        }
    }
    Ok(out)
}
