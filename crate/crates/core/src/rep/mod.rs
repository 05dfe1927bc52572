//! Quiver representations over a field.

mod decompose;
mod enumerate;
mod iso;

pub use decompose::{is_indecomposable, krull_schmidt, same_multiset, Eigenvalues};
pub use enumerate::{enumerate_iso_classes, IsoClassTable, RepSpace};
pub use iso::{is_isomorphic, Isomorphism};

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver};
use crate::{Error, Field, PrimeField, Rationals, Result};

/// Dimension vector `d_V : Q_0 -> Z_{>=0}` in the quiver's vertex order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        DimVector(d)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&d| d as i64).collect()
    }

    /// Every vector `0 <= d <= self` componentwise, in lexicographic order.
    pub fn below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (0..=bound).map(move |d| {
                        let mut p = prefix.clone();
                        p.push(d);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl Deref for DimVector {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl std::ops::Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A representation: a vector space `k^{d_i}` per vertex and a
/// `d_{h(ρ)} × d_{t(ρ)}` matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    dims: DimVector,
    maps: Vec<Matrix<F::Elem>>,
}

/// A family of linear maps `ψ_i : V_i -> W_i`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMorphism<F: Field> {
    pub components: Vec<Matrix<F::Elem>>,
}

impl<F: Field> Rep<F> {
    pub fn new(
        quiver: Arc<Quiver>,
        field: F,
        dims: DimVector,
        maps: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        if dims.len() != quiver.n_vertices() {
            return Err(Error::invalid(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                quiver.n_vertices()
            )));
        }
        if maps.len() != quiver.n_arrows() {
            return Err(Error::invalid(format!(
                "{} maps given for {} arrows",
                maps.len(),
                quiver.n_arrows()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.head], dims[a.tail]) {
                return Err(Error::invalid(format!(
                    "map for arrow {:?} has shape {:?}, expected {:?}",
                    a.name,
                    m.shape(),
                    (dims[a.head], dims[a.tail])
                )));
            }
        }
        Ok(Rep {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: F, dims: DimVector) -> Result<Self> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(&field, *dims.get(a.head).unwrap_or(&0), *dims.get(a.tail).unwrap_or(&0)))
            .collect();
        Rep::new(quiver, field, dims, maps)
    }

    /// The simple representation `S^i`.
    pub fn simple(quiver: Arc<Quiver>, field: F, vertex: &str) -> Result<Self> {
        let i = quiver.vertex_index(vertex)?;
        let n = quiver.n_vertices();
        Rep::zero(quiver, field, DimVector::unit(n, i))
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F::Elem> {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub(crate) fn check_same_setting(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver) {
            return Err(Error::invalid("representations of different quivers"));
        }
        if self.field != other.field {
            return Err(Error::invalid("representations over different fields"));
        }
        Ok(())
    }

    /// `V ⊕ W` with block-diagonal arrow maps.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_setting(other)?;
        let dims = &self.dims + &other.dims;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b, &self.field))
            .collect();
        Rep::new(self.quiver.clone(), self.field.clone(), dims, maps)
    }

    pub fn direct_sum_all<'a>(summands: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        F: 'a,
    {
        let mut it = summands.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::invalid("direct sum of no representations"))?
            .clone();
        it.try_fold(first, |acc, r| acc.direct_sum(r))
    }

    /// Applies the base change `g` (`g_i ∈ GL(V_i)`): `x_ρ ↦ g_h x_ρ g_t⁻¹`.
    pub fn transform(&self, g: &[Matrix<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let inv: Vec<Matrix<F::Elem>> = g
            .iter()
            .map(|m| {
                m.inverse(f)
                    .ok_or_else(|| Error::invalid("base change is not invertible"))
            })
            .collect::<Result<_>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.head].mul(m, f).mul(&inv[a.tail], f))
            .collect();
        Rep::new(self.quiver.clone(), f.clone(), self.dims.clone(), maps)
    }

    /// Composite map along a path (`ρ_m` first); identity for trivial paths.
    pub fn path_map(&self, path: &Path) -> Matrix<F::Elem> {
        match path {
            Path::Trivial(v) => Matrix::identity(&self.field, self.dims[*v]),
            Path::Arrows(rs) => {
                let mut acc = self.maps[*rs.last().expect("nonempty")].clone();
                for &r in rs.iter().rev().skip(1) {
                    acc = self.maps[r].mul(&acc, &self.field);
                }
                acc
            }
        }
    }

    /// Restriction to a graded subspace given by column bases `bases[i]`
    /// (`d_i × k_i`, full column rank) that is stable under every arrow.
    pub fn restrict(&self, bases: &[Matrix<F::Elem>]) -> Result<Self> {
        let f = &self.field;
        let dims = DimVector(bases.iter().map(|b| b.cols()).collect());
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| bases[a.head].solve(&m.mul(&bases[a.tail], f), f))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(self.quiver.clone(), f.clone(), dims, maps)
    }

    /// Basis of `Hom(V, W)`, solving `W_ρ ψ_{t(ρ)} = ψ_{h(ρ)} V_ρ` for all
    /// arrows.
    pub fn hom_space(&self, w: &Self) -> Result<Vec<RepMorphism<F>>> {
        self.check_same_setting(w)?;
        let f = &self.field;
        let n = self.quiver.n_vertices();
        // Unknown ψ_i[r][c] lives at offset[i] + r * dV_i + c.
        let mut offset = vec![0usize; n + 1];
        for i in 0..n {
            offset[i + 1] = offset[i] + w.dims[i] * self.dims[i];
        }
        let unknowns = offset[n];
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (rho, a) in self.quiver.arrows().iter().enumerate() {
            let (t, h) = (a.tail, a.head);
            let (vm, wm) = (&self.maps[rho], &w.maps[rho]);
            for r in 0..w.dims[h] {
                for c in 0..self.dims[t] {
                    let mut eq = vec![f.zero(); unknowns];
                    // Σ_k W_ρ[r][k] ψ_t[k][c]
                    for k in 0..w.dims[t] {
                        let idx = offset[t] + k * self.dims[t] + c;
                        eq[idx] = f.add(&eq[idx], wm.get(r, k));
                    }
                    // - Σ_k ψ_h[r][k] V_ρ[k][c]
                    for k in 0..self.dims[h] {
                        let idx = offset[h] + r * self.dims[h] + k;
                        eq[idx] = f.sub(&eq[idx], vm.get(k, c));
                    }
                    rows.push(eq);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..unknowns)
                .map(|u| {
                    let mut v = vec![f.zero(); unknowns];
                    v[u] = f.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(unknowns, &rows).nullspace(f)
        };
        Ok(basis
            .into_iter()
            .map(|v| RepMorphism {
                components: (0..n)
                    .map(|i| {
                        Matrix::from_vec(
                            w.dims[i],
                            self.dims[i],
                            v[offset[i]..offset[i + 1]].to_vec(),
                        )
                    })
                    .collect(),
            })
            .collect())
    }

    pub fn identity_morphism(&self) -> RepMorphism<F> {
        RepMorphism {
            components: self
                .dims
                .iter()
                .map(|&d| Matrix::identity(&self.field, d))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut dims = Map::new();
        let mut maps = Map::new();
        for (v, d) in self.quiver.vertices().iter().zip(self.dims.iter()) {
            dims.insert(v.clone(), Value::from(*d));
        }
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            maps.insert(a.name.clone(), m.to_json(&self.field));
        }
        let mut out = Map::new();
        out.insert("quiver".into(), self.quiver.to_json_value());
        out.insert("field".into(), Value::String(self.field.name()));
        out.insert("dims".into(), Value::Object(dims));
        out.insert("maps".into(), Value::Object(maps));
        Value::Object(out)
    }

    /// Reads `dims` and `maps` of a Rep JSON object over a known quiver and
    /// field. Missing maps are zero.
    pub fn from_json_parts(quiver: Arc<Quiver>, field: F, v: &Value) -> Result<Self> {
        let dims_obj = v
            .get("dims")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::invalid("representation needs a \"dims\" object"))?;
        let mut dims = vec![0usize; quiver.n_vertices()];
        for (name, d) in dims_obj {
            let i = quiver.vertex_index(name)?;
            dims[i] = d
                .as_u64()
                .ok_or_else(|| Error::invalid(format!("dimension at {name:?} must be a non-negative integer")))?
                as usize;
        }
        let maps_obj = v.get("maps").and_then(Value::as_object);
        if let Some(obj) = maps_obj {
            for name in obj.keys() {
                quiver.arrow_index(name)?;
            }
        }
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.head], dims[a.tail]);
                match maps_obj.and_then(|o| o.get(&a.name)) {
                    Some(m) => Matrix::from_json(&field, m, r, c),
                    None => Ok(Matrix::zeros(&field, r, c)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(quiver, field, DimVector(dims), maps)
    }
}

impl<F: Field> RepMorphism<F> {
    /// Checks `W_ρ ψ_t = ψ_h V_ρ` at every arrow.
    pub fn is_intertwiner(&self, v: &Rep<F>, w: &Rep<F>) -> bool {
        let f = v.field();
        v.quiver().arrows().iter().enumerate().all(|(rho, a)| {
            w.map(rho).mul(&self.components[a.tail], f)
                == self.components[a.head].mul(v.map(rho), f)
        })
    }

    pub fn is_invertible(&self, f: &F) -> bool {
        self.components.iter().all(|m| m.is_invertible(f))
    }

    pub fn compose(&self, after: &Self, f: &F) -> Self {
        RepMorphism {
            components: self
                .components
                .iter()
                .zip(&after.components)
                .map(|(a, b)| b.mul(a, f))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self, f: &F) -> Self {
        RepMorphism {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b, f))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, f: &F) -> Self {
        RepMorphism {
            components: self.components.iter().map(|m| m.scale(c, f)).collect(),
        }
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.components
            .iter()
            .flat_map(|m| m.data().iter().cloned())
            .collect()
    }
}

/// A representation read from JSON, over whichever field it names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRep {
    Prime(Rep<PrimeField>),
    Rational(Rep<Rationals>),
}

/// Field named in JSON: `"F<p>"` or `"Q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(PrimeField),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let p = s
            .strip_prefix('F')
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::invalid(format!("field must be \"F<p>\" or \"Q\", got {s:?}")))?;
        Ok(FieldSpec::Prime(PrimeField::new(p)?))
    }
}

impl AnyRep {
    /// Parses the full Rep JSON, `{"quiver", "field", "dims", "maps"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let quiver = Arc::new(Quiver::from_json_value(
            v.get("quiver")
                .ok_or_else(|| Error::invalid("representation needs a \"quiver\""))?,
        )?);
        let field = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("representation needs a \"field\" string"))?;
        Ok(match FieldSpec::parse(field)? {
            FieldSpec::Prime(f) => AnyRep::Prime(Rep::from_json_parts(quiver, f, v)?),
            FieldSpec::Rational => AnyRep::Rational(Rep::from_json_parts(quiver, Rationals, v)?),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRep::Prime(r) => r.to_json(),
            AnyRep::Rational(r) => r.to_json(),
        }
    }
}
