use std::collections::BTreeMap;

use crate::limits::Limits;
use crate::matrix::{for_each_subspace, grassmannian_size, Subspace};
use crate::rep::{DimVector, IsoClassTable, Rep};
use crate::{Error, PrimeField, Result};

/// Counts of submodules `W ⊂ V` of a fixed dimension vector, keyed by
/// `(class of V/W, class of W)`.
pub type SubmoduleProfile = BTreeMap<(usize, usize), u64>;

/// Number of graded subspaces with dimension vector `e` inside spaces of
/// dimensions `d` (before any stability pruning).
pub fn graded_subspace_count(p: u64, d: &DimVector, e: &DimVector) -> u128 {
    d.iter()
        .zip(e.iter())
        .map(|(&n, &k)| grassmannian_size(p, n, k))
        .fold(1u128, |a, b| a.saturating_mul(b))
}

/// Visits every subrepresentation of `rep` with dimension vector `e`, as one
/// RREF subspace per vertex. Subspaces are chosen vertex by vertex and a
/// partial choice is dropped as soon as an arrow between chosen vertices
/// fails to map it into itself.
pub fn for_each_submodule(
    rep: &Rep<PrimeField>,
    e: &DimVector,
    limits: &Limits,
    mut visit: impl FnMut(&[Subspace<u64>]) -> Result<()>,
) -> Result<()> {
    let d = rep.dims();
    if e.len() != d.len() || e.iter().zip(d.iter()).any(|(a, b)| a > b) {
        return Err(Error::invalid(format!("sub-dimension {e} does not fit inside {d}")));
    }
    let p = rep.field().p();
    limits.check_subspaces(graded_subspace_count(p, d, e))?;
    let mut chosen = Vec::with_capacity(d.len());
    choose(rep, e, 0, &mut chosen, &mut visit)
}

fn choose(
    rep: &Rep<PrimeField>,
    e: &DimVector,
    vertex: usize,
    chosen: &mut Vec<Subspace<u64>>,
    visit: &mut dyn FnMut(&[Subspace<u64>]) -> Result<()>,
) -> Result<()> {
    if vertex == e.len() {
        return visit(chosen);
    }
    let p = rep.field().p();
    for_each_subspace(p, rep.dims()[vertex], e[vertex], |w| {
        chosen.push(w.clone());
        if stable_at(rep, chosen, vertex) {
            choose(rep, e, vertex + 1, chosen, visit)?;
        }
        chosen.pop();
        Ok(())
    })
}

/// Checks `x_ρ W_t ⊆ W_h` for arrows whose later endpoint is `vertex`.
fn stable_at(rep: &Rep<PrimeField>, chosen: &[Subspace<u64>], vertex: usize) -> bool {
    let f = rep.field();
    rep.quiver().arrows().iter().enumerate().all(|(rho, a)| {
        if a.tail.max(a.head) != vertex {
            return true;
        }
        chosen[a.tail]
            .basis_vectors()
            .iter()
            .all(|b| chosen[a.head].contains(f, &rep.map(rho).mul_vec(b, f)))
    })
}

/// Arrow-matrix entries of the subrepresentation `W` in its RREF basis.
pub(crate) fn sub_entries(rep: &Rep<PrimeField>, w: &[Subspace<u64>]) -> Vec<u64> {
    let f = rep.field();
    let mut out = Vec::new();
    for (rho, a) in rep.quiver().arrows().iter().enumerate() {
        let images: Vec<Vec<u64>> = w[a.tail]
            .basis_vectors()
            .iter()
            .map(|b| {
                w[a.head]
                    .coordinates(f, &rep.map(rho).mul_vec(b, f))
                    .expect("subspace is stable")
            })
            .collect();
        for r in 0..w[a.head].dim() {
            for img in &images {
                out.push(img[r]);
            }
        }
    }
    out
}

/// Arrow-matrix entries of `V/W`, using the non-pivot coordinate vectors as
/// a basis of the quotient.
pub(crate) fn quotient_entries(rep: &Rep<PrimeField>, w: &[Subspace<u64>]) -> Vec<u64> {
    let f = rep.field();
    let mut out = Vec::new();
    for (rho, a) in rep.quiver().arrows().iter().enumerate() {
        let cols_t = w[a.tail].complement_columns();
        let cols_h = w[a.head].complement_columns();
        let images: Vec<Vec<u64>> = cols_t
            .iter()
            .map(|&c| w[a.head].reduce(f, &rep.map(rho).column(c)).1)
            .collect();
        for &r in &cols_h {
            for img in &images {
                out.push(img[r]);
            }
        }
    }
    out
}

/// Counts submodules of `rep` with dimension vector `e` by the iso types of
/// quotient and submodule.
pub fn submodule_profile(
    rep: &Rep<PrimeField>,
    e: &DimVector,
    sub_table: &IsoClassTable,
    quot_table: &IsoClassTable,
    limits: &Limits,
) -> Result<SubmoduleProfile> {
    let mut profile = SubmoduleProfile::new();
    for_each_submodule(rep, e, limits, |w| {
        let s = sub_table.class_of_entries(&sub_entries(rep, w));
        let q = quot_table.class_of_entries(&quotient_entries(rep, w));
        *profile.entry((q, s)).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(profile)
}
