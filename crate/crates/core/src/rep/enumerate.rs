use std::sync::Arc;

use super::{DimVector, Rep};
use crate::limits::pow_u128;
use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::{Error, Field, Limits, PrimeField, Result};

/// The affine space `Rep(Q, d)` over `F_p`, with points numbered by reading
/// all arrow matrices (arrow order, row-major) as big-endian base-`p` digits.
/// Numeric order of indices is therefore lexicographic order of entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpace {
    quiver: Arc<Quiver>,
    field: PrimeField,
    dims: DimVector,
    offsets: Vec<usize>,
    n_entries: usize,
}

impl RepSpace {
    pub fn new(quiver: Arc<Quiver>, field: PrimeField, dims: DimVector) -> Result<Self> {
        if dims.len() != quiver.n_vertices() {
            return Err(Error::invalid("dimension vector length does not match the quiver"));
        }
        let mut offsets = Vec::with_capacity(quiver.n_arrows());
        let mut n = 0;
        for a in quiver.arrows() {
            offsets.push(n);
            n += dims[a.head] * dims[a.tail];
        }
        Ok(RepSpace {
            quiver,
            field,
            dims,
            offsets,
            n_entries: n,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// `p^{Σ d_{h(ρ)} d_{t(ρ)}}`, saturating.
    pub fn n_points(&self) -> u128 {
        pow_u128(self.field.p(), self.n_entries)
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        let p = self.field.p();
        let mut e = vec![0u64; self.n_entries];
        for x in e.iter_mut().rev() {
            *x = index % p;
            index /= p;
        }
        e
    }

    pub fn encode(&self, entries: &[u64]) -> u64 {
        let p = self.field.p();
        entries.iter().fold(0u64, |acc, &x| acc * p + x)
    }

    pub fn rep_from_entries(&self, entries: &[u64]) -> Rep<PrimeField> {
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.offsets)
            .map(|(a, &o)| {
                let (r, c) = (self.dims[a.head], self.dims[a.tail]);
                Matrix::from_vec(r, c, entries[o..o + r * c].to_vec())
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
            .expect("shapes follow the dimension vector")
    }

    pub fn rep_at(&self, index: u64) -> Rep<PrimeField> {
        self.rep_from_entries(&self.decode(index))
    }

    pub fn index_of(&self, rep: &Rep<PrimeField>) -> Result<u64> {
        if rep.dims() != &self.dims || rep.field() != &self.field || **rep.quiver() != *self.quiver {
            return Err(Error::invalid("representation does not belong to this space"));
        }
        if self.n_points() > u64::MAX as u128 {
            return Err(Error::invalid("representation space too large to index"));
        }
        let entries: Vec<u64> = rep.maps().iter().flat_map(|m| m.data().iter().copied()).collect();
        Ok(self.encode(&entries))
    }

    /// `|G_d| = Π_i |GL_{d_i}(F_p)|`.
    pub fn group_order(&self) -> u128 {
        let p = self.field.p() as u128;
        self.dims
            .iter()
            .map(|&d| {
                let pd = p.pow(d as u32);
                (0..d as u32).map(|k| pd - p.pow(k)).product::<u128>()
            })
            .product()
    }

    fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for (v, &d) in self.dims.iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    if a != b {
                        gens.push(Generator::Transvection { vertex: v, a, b });
                    }
                }
            }
            if d > 0 && self.field.p() > 2 {
                gens.push(Generator::Scale { vertex: v });
            }
        }
        gens
    }

    /// `x_ρ ↦ g_{h(ρ)} x_ρ g_{t(ρ)}⁻¹` for a single generator `g`.
    fn apply(&self, g: Generator, e: &mut [u64], root: u64, root_inv: u64) {
        let f = &self.field;
        for (arrow, &o) in self.quiver.arrows().iter().zip(&self.offsets) {
            let (rows, cols) = (self.dims[arrow.head], self.dims[arrow.tail]);
            match g {
                Generator::Transvection { vertex, a, b } => {
                    if arrow.head == vertex {
                        for c in 0..cols {
                            e[o + a * cols + c] = f.add(&e[o + a * cols + c], &e[o + b * cols + c]);
                        }
                    }
                    if arrow.tail == vertex {
                        for r in 0..rows {
                            e[o + r * cols + b] = f.sub(&e[o + r * cols + b], &e[o + r * cols + a]);
                        }
                    }
                }
                Generator::Scale { vertex } => {
                    if arrow.head == vertex {
                        for c in 0..cols {
                            e[o + c] = f.mul(&e[o + c], &root);
                        }
                    }
                    if arrow.tail == vertex {
                        for r in 0..rows {
                            e[o + r * cols] = f.mul(&e[o + r * cols], &root_inv);
                        }
                    }
                }
            }
        }
    }
}

/// Generators of `GL_d(F_p)`: elementary transvections `I + E_ab` and
/// `diag(g, 1, ..., 1)` for a primitive root `g`.
#[derive(Debug, Clone, Copy)]
enum Generator {
    Transvection { vertex: usize, a: usize, b: usize },
    Scale { vertex: usize },
}

/// Partition of `Rep(Q, d)(F_p)` into `G_d`-orbits.
#[derive(Debug, Clone)]
pub struct IsoClassTable {
    space: RepSpace,
    class_of: Vec<u32>,
    representatives: Vec<u64>,
    orbit_sizes: Vec<u64>,
}

/// Enumerates isomorphism classes of representations of dimension vector
/// `dims` over `F_p` by walking orbits. Classes are numbered by their
/// lexicographically smallest point, which is also the stored
/// representative.
pub fn enumerate_iso_classes(
    quiver: Arc<Quiver>,
    dims: DimVector,
    field: PrimeField,
    limits: &Limits,
) -> Result<IsoClassTable> {
    let space = RepSpace::new(quiver, field, dims)?;
    let total = space.n_points();
    limits.check_points("representation space", total)?;
    let total = total as usize;
    let gens = space.generators();
    let root = field.primitive_root();
    let root_inv = field.inv(&root)?;
    let mut class_of = vec![u32::MAX; total];
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut stack = Vec::new();
    let mut scratch = vec![0u64; space.n_entries];
    for start in 0..total {
        if class_of[start] != u32::MAX {
            continue;
        }
        let k = representatives.len() as u32;
        representatives.push(start as u64);
        class_of[start] = k;
        stack.push(start as u64);
        let mut size = 0u64;
        while let Some(idx) = stack.pop() {
            size += 1;
            let entries = space.decode(idx);
            for &g in &gens {
                scratch.copy_from_slice(&entries);
                space.apply(g, &mut scratch, root, root_inv);
                let j = space.encode(&scratch) as usize;
                if class_of[j] == u32::MAX {
                    class_of[j] = k;
                    stack.push(j as u64);
                }
            }
        }
        orbit_sizes.push(size);
    }
    Ok(IsoClassTable {
        space,
        class_of,
        representatives,
        orbit_sizes,
    })
}

impl IsoClassTable {
    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative_index(&self, class: usize) -> u64 {
        self.representatives[class]
    }

    pub fn representative(&self, class: usize) -> Rep<PrimeField> {
        self.space.rep_at(self.representatives[class])
    }

    pub fn orbit_size(&self, class: usize) -> u64 {
        self.orbit_sizes[class]
    }

    /// `|Aut(V)| = |G_d| / |orbit|`.
    pub fn automorphism_count(&self, class: usize) -> u128 {
        self.space.group_order() / self.orbit_sizes[class] as u128
    }

    pub fn class_of_index(&self, index: u64) -> usize {
        self.class_of[index as usize] as usize
    }

    pub fn class_of_entries(&self, entries: &[u64]) -> usize {
        self.class_of_index(self.space.encode(entries))
    }

    pub fn class_of(&self, rep: &Rep<PrimeField>) -> Result<usize> {
        Ok(self.class_of_index(self.space.index_of(rep)?))
    }
}
