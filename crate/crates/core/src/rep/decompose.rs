use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::iso::{increment, is_isomorphic};
use super::{Rep, RepMorphism};
use crate::limits::pow_u128;
use crate::matrix::{Matrix, Subspace};
use crate::{Error, Field, Limits, PrimeField, Rationals, Result};

/// Fields in which eigenvalues of a matrix can be searched for.
pub trait Eigenvalues: Field {
    /// Distinct eigenvalues of a square matrix that lie in the field. May be
    /// incomplete for large prime fields.
    fn eigenvalues(&self, m: &Matrix<Self::Elem>) -> Vec<Self::Elem>;
}

const FULL_SCAN_MAX_P: u64 = 1024;

impl Eigenvalues for PrimeField {
    fn eigenvalues(&self, m: &Matrix<u64>) -> Vec<u64> {
        let n = m.rows();
        if n == 0 {
            return Vec::new();
        }
        let singular = |l: u64| m.sub(&Matrix::scalar(self, n, &l), self).det(self) == 0;
        if self.p() <= FULL_SCAN_MAX_P {
            return (0..self.p()).filter(|&l| singular(l)).collect();
        }
        let mut cands: Vec<u64> = (0..n).map(|i| *m.get(i, i)).collect();
        cands.push(0);
        if let Ok(inv_n) = self.inv(&self.from_i64(n as i64)) {
            cands.push(self.mul(&m.trace(self), &inv_n));
        }
        cands.sort_unstable();
        cands.dedup();
        cands.into_iter().filter(|&l| singular(l)).collect()
    }
}

impl Eigenvalues for Rationals {
    fn eigenvalues(&self, m: &Matrix<BigRational>) -> Vec<BigRational> {
        rational_roots(&charpoly(m))
    }
}

/// Characteristic polynomial `det(xI - A)`, lowest degree first, by the
/// Faddeev-LeVerrier recursion.
fn charpoly(a: &Matrix<BigRational>) -> Vec<BigRational> {
    let f = Rationals;
    let n = a.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = Matrix::zeros(&f, n, n);
    for k in 1..=n {
        m = a.mul(&m, &f).add(&Matrix::scalar(&f, n, &c[n - k + 1]), &f);
        let tr = a.mul(&m, &f).trace(&f);
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

const DIVISOR_SEARCH_MAX: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_SEARCH_MAX {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots via the rational root theorem. Gives up (returning only
/// the roots found so far) when the coefficients are too large to factor.
fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    if ints.first().is_some_and(|c| c.is_zero()) {
        roots.push(BigRational::zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &BigRational| {
        ints.iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    let mut cands: Vec<BigRational> = Vec::new();
    for &a in &num {
        for &b in &den {
            let r = BigRational::new(BigInt::from(a), BigInt::from(b));
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    roots.extend(cands.into_iter().filter(|x| eval(x).is_zero()));
    roots.sort();
    roots
}

fn shifted<F: Field>(phi: &RepMorphism<F>, lambda: &F::Elem, f: &F) -> RepMorphism<F> {
    RepMorphism {
        components: phi
            .components
            .iter()
            .map(|m| m.sub(&Matrix::scalar(f, m.rows(), lambda), f))
            .collect(),
    }
}


enum Fitting<F: Field> {
    Split(Rep<F>, Rep<F>),
    Nilpotent,
    Invertible,
}

/// Fitting decomposition `V = ker ψ^N ⊕ im ψ^N` for `ψ = φ - λ`.
fn fitting<F: Field>(v: &Rep<F>, psi: &RepMorphism<F>) -> Result<Fitting<F>> {
    let f = v.field();
    let mut kernels = Vec::new();
    let mut images = Vec::new();
    let mut kdim = 0;
    for (m, &d) in psi.components.iter().zip(v.dims().iter()) {
        let pw = m.pow(d, f);
        let k = pw.nullspace(f);
        let i = pw.column_space(f);
        kdim += k.len();
        kernels.push(Matrix::from_columns(d, &k));
        images.push(Matrix::from_columns(d, &i));
    }
    if kdim == 0 {
        return Ok(Fitting::Invertible);
    }
    if kdim == v.total_dim() {
        return Ok(Fitting::Nilpotent);
    }
    Ok(Fitting::Split(v.restrict(&kernels)?, v.restrict(&images)?))
}

fn eigen_candidates<F: Eigenvalues>(phi: &RepMorphism<F>, f: &F) -> Vec<F::Elem> {
    let mut all: Vec<F::Elem> = phi
        .components
        .iter()
        .flat_map(|m| f.eigenvalues(m))
        .collect();
    all.sort();
    all.dedup();
    all
}

fn unflatten<F: Field>(v: &Rep<F>, data: &[F::Elem]) -> RepMorphism<F> {
    let mut k = 0;
    RepMorphism {
        components: v
            .dims()
            .iter()
            .map(|&d| {
                let m = Matrix::from_vec(d, d, data[k..k + d * d].to_vec());
                k += d * d;
                m
            })
            .collect(),
    }
}

/// True when `span(nilps)` is a nilpotent ideal of codimension one in
/// `End(V)`, which makes `End(V)` local.
fn radical_is_codim_one<F: Field>(v: &Rep<F>, end_dim: usize, nilps: &[RepMorphism<F>]) -> bool {
    let f = v.field();
    let ambient: usize = v.dims().iter().map(|d| d * d).sum();
    let flat: Vec<Vec<F::Elem>> = nilps.iter().map(|n| n.flatten()).collect();
    let rad = Subspace::span(f, ambient, &flat);
    if rad.dim() + 1 != end_dim {
        return false;
    }
    for a in nilps {
        for b in nilps {
            if !rad.contains(f, &a.compose(b, f).flatten()) {
                return false;
            }
        }
    }
    // Powers rad^k must reach zero.
    let mut power = rad;
    for _ in 0..=v.total_dim() {
        if power.dim() == 0 {
            return true;
        }
        let prods: Vec<Vec<F::Elem>> = power
            .basis_vectors()
            .iter()
            .flat_map(|x| {
                let x = unflatten(v, x);
                nilps.iter().map(move |n| x.compose(n, f).flatten()).collect::<Vec<_>>()
            })
            .collect();
        power = Subspace::span(f, ambient, &prods);
    }
    false
}

const RANDOM_SPLIT_TRIALS: usize = 64;

/// Either a nontrivial splitting `V = A ⊕ B` or `None` when `V` is
/// indecomposable.
fn split<F: Eigenvalues>(v: &Rep<F>, limits: &Limits) -> Result<Option<(Rep<F>, Rep<F>)>> {
    if v.is_zero() {
        return Err(Error::invalid("the zero representation has no indecomposability status"));
    }
    let f = v.field();
    let end = v.hom_space(v)?;
    if end.len() == 1 {
        return Ok(None);
    }
    let try_phi = |phi: &RepMorphism<F>| -> Result<(Option<(Rep<F>, Rep<F>)>, Option<RepMorphism<F>>)> {
        let mut nil = None;
        for l in eigen_candidates(phi, f) {
            let psi = shifted(phi, &l, f);
            match fitting(v, &psi)? {
                Fitting::Split(a, b) => return Ok((Some((a, b)), None)),
                Fitting::Nilpotent => nil = Some(psi),
                Fitting::Invertible => {}
            }
        }
        Ok((None, nil))
    };

    let mut nilps = Vec::new();
    let mut missing_eigenvalue = false;
    for phi in &end {
        let (found, nil) = try_phi(phi)?;
        if found.is_some() {
            return Ok(found);
        }
        match nil {
            Some(n) => nilps.push(n),
            None => missing_eigenvalue = true,
        }
    }
    if !missing_eigenvalue && radical_is_codim_one(v, end.len(), &nilps) {
        return Ok(None);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let trials = limits.trials.min(RANDOM_SPLIT_TRIALS);
    for _ in 0..trials {
        let mut phi = end[0].scale(&f.random(&mut rng), f);
        for e in &end[1..] {
            phi = phi.add(&e.scale(&f.random(&mut rng), f), f);
        }
        let (found, _) = try_phi(&phi)?;
        if found.is_some() {
            return Ok(found);
        }
    }

    if let Some(q) = f.order() {
        let count = pow_u128(q, end.len());
        if count <= limits.enumeration as u128 {
            // A local algebra is exactly one where every element is
            // invertible or nilpotent; otherwise λ = 0 gives a Fitting split.
            let mut digits = vec![0u64; end.len()];
            while increment(&mut digits, q) {
                let mut phi = end[0].scale(&f.element(digits[0]), f);
                for (e, &d) in end.iter().zip(&digits).skip(1) {
                    phi = phi.add(&e.scale(&f.element(d), f), f);
                }
                if let Fitting::Split(a, b) = fitting(v, &phi)? {
                    return Ok(Some((a, b)));
                }
            }
            return Ok(None);
        }
    } else if missing_eigenvalue {
        return Err(Error::FieldNotSplitting(format!(
            "an endomorphism of the representation with dimension vector {} has no eigenvalue in {}",
            v.dims(),
            f.name()
        )));
    }
    Err(Error::Undecided {
        what: format!("indecomposability of dimension vector {}", v.dims()),
        trials,
    })
}

/// Decides whether `V` is indecomposable by inspecting `End(V)`.
pub fn is_indecomposable<F: Eigenvalues>(v: &Rep<F>, limits: &Limits) -> Result<bool> {
    Ok(split(v, limits)?.is_none())
}

/// Splits `V` into indecomposable summands, sorted by dimension vector.
pub fn krull_schmidt<F: Eigenvalues>(v: &Rep<F>, limits: &Limits) -> Result<Vec<Rep<F>>> {
    if v.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack = vec![v.clone()];
    while let Some(r) = stack.pop() {
        match split(&r, limits)? {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => out.push(r),
        }
    }
    out.sort_by(|a, b| (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims())));
    Ok(out)
}

/// Whether two lists of representations agree as multisets up to
/// isomorphism. `None` if some comparison was inconclusive.
pub fn same_multiset<F: Field>(a: &[Rep<F>], b: &[Rep<F>], limits: &Limits) -> Result<Option<bool>> {
    if a.len() != b.len() {
        return Ok(Some(false));
    }
    let mut used = vec![false; b.len()];
    let mut unsure = false;
    for x in a {
        let mut matched = false;
        for (j, y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            match is_isomorphic(x, y, limits)? {
                super::Isomorphism::Isomorphic(_) => {
                    used[j] = true;
                    matched = true;
                    break;
                }
                super::Isomorphism::Unknown => unsure = true,
                super::Isomorphism::NotIsomorphic => {}
            }
        }
        if !matched {
            return Ok(if unsure { None } else { Some(false) });
        }
    }
    Ok(Some(true))
}
