use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::forms::{cartan_matrix, classify_type, RepType};
use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::rep::{enumerate_iso_classes, DimVector};
use crate::{Error, Limits, PrimeField, Rationals, Result};

/// All words in the vertices with content `nu`, in lexicographic order.
fn words_with_content(nu: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = nu.iter().sum();
    let mut out = Vec::new();
    let mut left = nu.to_vec();
    let mut cur = Vec::with_capacity(total);
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, total, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, total, &mut out);
    out
}

fn multinomial(nu: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in nu {
        for j in 1..=k as u128 {
            n += 1;
            acc = acc * n / j;
        }
    }
    acc
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Dimension of the `ν`-graded piece of the free algebra on `e_i` modulo
/// the classical Serre relations
/// `Σ_k (-1)^k C(n, k) e_i^k e_j e_i^{n-k}`, `n = 1 - c_ij`.
pub fn u_plus_graded_dim(q: &Quiver, nu: &DimVector, limits: &Limits) -> Result<usize> {
    let n_vertices = q.n_vertices();
    if nu.len() != n_vertices {
        return Err(Error::invalid("dimension vector length does not match the quiver"));
    }
    limits.check_points("words of the given content", multinomial(nu))?;
    let words = words_with_content(nu);
    let index: HashMap<&[usize], usize> = words.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let cartan = cartan_matrix(q);
    let f = Rationals;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..n_vertices {
        for j in 0..n_vertices {
            if i == j {
                continue;
            }
            let n = (1 - cartan[i][j]) as usize;
            let mut content = vec![0usize; n_vertices];
            content[i] += n;
            content[j] += 1;
            let Some(rest) = nu.checked_sub(&DimVector(content)) else {
                continue;
            };
            let relation: Vec<(Vec<usize>, i64)> = (0..=n)
                .map(|k| {
                    let mut w = vec![i; k];
                    w.push(j);
                    w.extend(std::iter::repeat_n(i, n - k));
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    (w, sign * binomial(n as u32, k as u32))
                })
                .collect();
            // m1 · r · m2 with content(m1) + content(m2) = rest.
            for left in rest.below() {
                let right = rest.checked_sub(&left).expect("left is below rest");
                for m1 in words_with_content(&left) {
                    for m2 in words_with_content(&right) {
                        let mut row = vec![BigRational::zero(); words.len()];
                        for (w, c) in &relation {
                            let mut full = m1.clone();
                            full.extend(w);
                            full.extend(&m2);
                            row[index[full.as_slice()]] += BigRational::from_integer((*c).into());
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(words.len(), &rows).rank(&f)
    };
    Ok(words.len() - rank)
}

/// Both sides of `dim H_ν = dim U⁺_ν` for a finite-type quiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimCheck {
    pub nu: Vec<usize>,
    pub prime: u64,
    pub hall_dim: usize,
    pub u_plus_dim: usize,
    pub equal: bool,
}

pub fn finite_type_dim_check(q: &Arc<Quiver>, nu: &DimVector, p: u64, limits: &Limits) -> Result<DimCheck> {
    let t = classify_type(q)?;
    if t.kind != RepType::Finite {
        return Err(Error::invalid(format!(
            "dimension check needs a quiver of finite type, this one is {}",
            t.kind
        )));
    }
    let hall_dim = enumerate_iso_classes(q.clone(), nu.clone(), PrimeField::new(p)?, limits)?.num_classes();
    let u_plus_dim = u_plus_graded_dim(q, nu, limits)?;
    Ok(DimCheck {
        nu: nu.0.clone(),
        prime: p,
        hall_dim,
        u_plus_dim,
        equal: hall_dim == u_plus_dim,
    })
}
