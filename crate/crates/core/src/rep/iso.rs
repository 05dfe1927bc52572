use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Rep, RepMorphism};
use crate::limits::pow_u128;
use crate::{Field, Limits, Result};

/// Outcome of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism<F: Field> {
    Isomorphic(RepMorphism<F>),
    NotIsomorphic,
    /// Random search exhausted its trials without a witness.
    Unknown,
}

impl<F: Field> Isomorphism<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Isomorphism::Isomorphic(_))
    }
}

/// Decides `V ≅ W`. Over a finite field with `|Hom(V, W)|` within the
/// enumeration budget the answer is exact; otherwise random elements of
/// `Hom(V, W)` are tried and `Unknown` may be returned.
pub fn is_isomorphic<F: Field>(v: &Rep<F>, w: &Rep<F>, limits: &Limits) -> Result<Isomorphism<F>> {
    v.check_same_setting(w)?;
    let f = v.field();
    if v.dims() != w.dims() {
        return Ok(Isomorphism::NotIsomorphic);
    }
    for (a, b) in v.maps().iter().zip(w.maps()) {
        if a.rank(f) != b.rank(f) {
            return Ok(Isomorphism::NotIsomorphic);
        }
    }
    let hom = v.hom_space(w)?;
    let end = v.hom_space(v)?;
    if hom.len() != end.len() {
        return Ok(Isomorphism::NotIsomorphic);
    }
    if hom.is_empty() {
        // Only the zero representation has End = 0.
        return Ok(Isomorphism::Isomorphic(v.identity_morphism()));
    }
    let combine = |coeffs: &[F::Elem]| -> RepMorphism<F> {
        let mut acc = hom[0].scale(&coeffs[0], f);
        for (h, c) in hom.iter().zip(coeffs).skip(1) {
            acc = acc.add(&h.scale(c, f), f);
        }
        acc
    };
    if let Some(q) = f.order() {
        let count = pow_u128(q, hom.len());
        if count <= limits.enumeration as u128 {
            let mut digits = vec![0u64; hom.len()];
            loop {
                let coeffs: Vec<F::Elem> = digits.iter().map(|&d| f.element(d)).collect();
                let phi = combine(&coeffs);
                if phi.is_invertible(f) {
                    return Ok(Isomorphism::Isomorphic(phi));
                }
                if !increment(&mut digits, q) {
                    return Ok(Isomorphism::NotIsomorphic);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    for _ in 0..limits.trials {
        let coeffs: Vec<F::Elem> = hom.iter().map(|_| f.random(&mut rng)).collect();
        let phi = combine(&coeffs);
        if phi.is_invertible(f) {
            return Ok(Isomorphism::Isomorphic(phi));
        }
    }
    Ok(Isomorphism::Unknown)
}

/// Base-`q` counter, least significant digit last. Returns false on wrap.
pub(crate) fn increment(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}
