//! The Ringel-Hall algebra of a quiver over `F_p`.
//!
//! Basis elements are isomorphism classes `[V]`, numbered per dimension
//! vector by [`enumerate_iso_classes`]. The product is
//! `[A]·[B] = v^{⟨dim A, dim B⟩} Σ_V g^V_{A,B} [V]` where `g^V_{A,B}` counts
//! submodules `W ⊂ V` with `V/W ≅ A` and `W ≅ B`, and `v² = p`.

mod generic;
mod submodules;
mod uplus;

pub use generic::{fingerprint, generic_lift, ClassFingerprint, GenericElement, HallComputation};
pub use submodules::{for_each_submodule, graded_subspace_count, submodule_profile, SubmoduleProfile};
pub use uplus::{finite_type_dim_check, u_plus_graded_dim, DimCheck};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::coeff::{quantum_binomial, HallCoefficient};
use crate::forms::{cartan_matrix, euler_form};
use crate::quiver::Quiver;
use crate::rep::{enumerate_iso_classes, DimVector, IsoClassTable, Rep};
use crate::{Error, Limits, PrimeField, Result};

/// An isomorphism class: its dimension vector and its number among the
/// classes of that dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoClassId {
    pub dim: DimVector,
    pub class: usize,
}

/// A finite combination `Σ c_V [V]` with exact coefficients at a fixed `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    q: u64,
    terms: BTreeMap<IsoClassId, HallCoefficient>,
}

impl HallElement {
    pub fn zero(q: u64) -> Self {
        HallElement {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(q: u64, id: IsoClassId) -> Self {
        let mut e = HallElement::zero(q);
        e.add_term(id, HallCoefficient::from_int(q, 1));
        e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<IsoClassId, HallCoefficient> {
        &self.terms
    }

    pub fn coeff(&self, id: &IsoClassId) -> HallCoefficient {
        self.terms
            .get(id)
            .cloned()
            .unwrap_or_else(|| HallCoefficient::zero(self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, id: IsoClassId, c: HallCoefficient) {
        let sum = match self.terms.remove(&id) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(id, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in &other.terms {
            out.add_term(id.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&HallCoefficient::from_int(self.q, -1)))
    }

    pub fn scale(&self, c: &HallCoefficient) -> Self {
        let mut out = HallElement::zero(self.q);
        for (id, x) in &self.terms {
            out.add_term(id.clone(), x * c);
        }
        out
    }

    /// Dimension vectors occurring in the support.
    pub fn grades(&self) -> Vec<DimVector> {
        let mut g: Vec<DimVector> = self.terms.keys().map(|k| k.dim.clone()).collect();
        g.dedup();
        g
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(id, c)| format!("({c})[{}#{}]", id.dim, id.class))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Outcome of a single structure-constant query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HallConstant {
    pub count: u64,
    /// Set when `dim V != dim V1 + dim V2`; the count is then 0.
    pub dimension_mismatch: bool,
}

/// Residual of the quantum Serre relation for an ordered pair of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreCheck {
    pub holds: bool,
    pub residual: HallElement,
}

type ProfileKey = (DimVector, DimVector);

/// Hall algebra of an acyclic quiver over `F_p`, with caches for orbit
/// tables and submodule profiles.
#[derive(Debug)]
pub struct HallAlgebra {
    quiver: Arc<Quiver>,
    field: PrimeField,
    limits: Limits,
    tables: Mutex<HashMap<DimVector, Arc<IsoClassTable>>>,
    profiles: Mutex<HashMap<ProfileKey, Arc<Vec<SubmoduleProfile>>>>,
}

impl HallAlgebra {
    pub fn new(quiver: Arc<Quiver>, p: u64, limits: Limits) -> Result<Self> {
        if !quiver.is_acyclic() {
            return Err(Error::invalid("Hall algebras are only supported for acyclic quivers"));
        }
        Ok(HallAlgebra {
            quiver,
            field: PrimeField::new(p)?,
            limits,
            tables: Mutex::new(HashMap::new()),
            profiles: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn q(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn table(&self, dims: &DimVector) -> Result<Arc<IsoClassTable>> {
        if let Some(t) = self.tables.lock().expect("table cache").get(dims) {
            return Ok(t.clone());
        }
        let t = Arc::new(enumerate_iso_classes(
            self.quiver.clone(),
            dims.clone(),
            self.field,
            &self.limits,
        )?);
        Ok(self
            .tables
            .lock()
            .expect("table cache")
            .entry(dims.clone())
            .or_insert(t)
            .clone())
    }

    pub fn representative(&self, id: &IsoClassId) -> Result<Rep<PrimeField>> {
        let t = self.table(&id.dim)?;
        if id.class >= t.num_classes() {
            return Err(Error::invalid(format!(
                "class {} out of range for dimension {}",
                id.class, id.dim
            )));
        }
        Ok(t.representative(id.class))
    }

    pub fn class_of(&self, rep: &Rep<PrimeField>) -> Result<IsoClassId> {
        let t = self.table(rep.dims())?;
        Ok(IsoClassId {
            dim: rep.dims().clone(),
            class: t.class_of(rep)?,
        })
    }

    /// `[0]`, the class of the zero representation.
    pub fn unit(&self) -> HallElement {
        HallElement::basis(
            self.q(),
            IsoClassId {
                dim: DimVector::zero(self.quiver.n_vertices()),
                class: 0,
            },
        )
    }

    /// `[S^i]`.
    pub fn simple(&self, vertex: usize) -> HallElement {
        HallElement::basis(
            self.q(),
            IsoClassId {
                dim: DimVector::unit(self.quiver.n_vertices(), vertex),
                class: 0,
            },
        )
    }

    /// Submodule profiles of every class of dimension `d` for submodule
    /// dimension `e`, computed in parallel over classes.
    pub fn profiles(&self, d: &DimVector, e: &DimVector) -> Result<Arc<Vec<SubmoduleProfile>>> {
        let key = (d.clone(), e.clone());
        if let Some(p) = self.profiles.lock().expect("profile cache").get(&key) {
            return Ok(p.clone());
        }
        let quot_dim = d
            .checked_sub(e)
            .ok_or_else(|| Error::invalid(format!("{e} is not below {d}")))?;
        let whole = self.table(d)?;
        let subs = self.table(e)?;
        let quots = self.table(&quot_dim)?;
        let computed: Vec<SubmoduleProfile> = (0..whole.num_classes())
            .into_par_iter()
            .map(|k| submodule_profile(&whole.representative(k), e, &subs, &quots, &self.limits))
            .collect::<Result<_>>()?;
        Ok(self
            .profiles
            .lock()
            .expect("profile cache")
            .entry(key)
            .or_insert(Arc::new(computed))
            .clone())
    }

    /// `g^V_{V1,V2}`: submodules `W ⊂ V` with `V/W ≅ V1` and `W ≅ V2`.
    pub fn hall_constant(&self, v: &IsoClassId, v1: &IsoClassId, v2: &IsoClassId) -> Result<HallConstant> {
        if v.dim != &v1.dim + &v2.dim {
            return Ok(HallConstant {
                count: 0,
                dimension_mismatch: true,
            });
        }
        let prof = self.profiles(&v.dim, &v2.dim)?;
        let count = prof
            .get(v.class)
            .and_then(|p| p.get(&(v1.class, v2.class)))
            .copied()
            .unwrap_or(0);
        Ok(HallConstant {
            count,
            dimension_mismatch: false,
        })
    }

    fn multiply_basis(&self, a: &IsoClassId, b: &IsoClassId) -> Result<HallElement> {
        let d = &a.dim + &b.dim;
        let twist = euler_form(&self.quiver, &a.dim.as_i64(), &b.dim.as_i64())?;
        let vt = HallCoefficient::v_pow(self.q(), twist);
        let prof = self.profiles(&d, &b.dim)?;
        let mut out = HallElement::zero(self.q());
        for (k, p) in prof.iter().enumerate() {
            if let Some(&g) = p.get(&(a.class, b.class)) {
                out.add_term(
                    IsoClassId { dim: d.clone(), class: k },
                    vt.scale(&num_rational::BigRational::from_integer(g.into())),
                );
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        if x.q != self.q() || y.q != self.q() {
            return Err(Error::invalid("Hall elements over a different prime"));
        }
        let mut out = HallElement::zero(self.q());
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let prod = self.multiply_basis(a, b)?;
                out = out.add(&prod.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }

    /// `[S^{i_1}]·[S^{i_2}]·…`, multiplied left to right; `[0]` for the
    /// empty word.
    pub fn monomial(&self, word: &[usize]) -> Result<HallElement> {
        let n = self.quiver.n_vertices();
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(Error::invalid(format!("vertex index {bad} out of range")));
        }
        word.iter()
            .try_fold(self.unit(), |acc, &i| self.multiply(&acc, &self.simple(i)))
    }

    /// `Σ_k (-1)^k [n k]_v E_i^k E_j E_i^{n-k}` with `n = 1 - c_ij`.
    pub fn serre_residual(&self, i: usize, j: usize) -> Result<HallElement> {
        let n_vertices = self.quiver.n_vertices();
        if i == j || i >= n_vertices || j >= n_vertices {
            return Err(Error::invalid("Serre relations need two distinct vertices"));
        }
        let n = (1 - cartan_matrix(&self.quiver)[i][j]) as u32;
        let mut out = HallElement::zero(self.q());
        for k in 0..=n {
            let mut word = vec![i; k as usize];
            word.push(j);
            word.extend(std::iter::repeat_n(i, (n - k) as usize));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let binom = quantum_binomial(n, k)?.scale(&num_rational::BigRational::from_integer(sign.into()));
            let c = HallCoefficient::from_laurent(self.q(), &binom);
            out = out.add(&self.monomial(&word)?.scale(&c));
        }
        Ok(out)
    }

    pub fn serre_check(&self, i: usize, j: usize) -> Result<SerreCheck> {
        let residual = self.serre_residual(i, j)?;
        Ok(SerreCheck {
            holds: residual.is_zero(),
            residual,
        })
    }

    /// `[{"class": {"dim", "index", "rep"}, "coeff": {...}}, ...]`, one entry
    /// per class and nonzero `v`-parity.
    pub fn element_to_json(&self, x: &HallElement) -> Result<Value> {
        let mut out = Vec::new();
        for (id, c) in &x.terms {
            let rep = self.representative(id)?.to_json();
            let mut class = Map::new();
            class.insert("dim".into(), json!(id.dim));
            class.insert("index".into(), json!(id.class));
            class.insert("rep".into(), json!({"dims": rep["dims"], "maps": rep["maps"]}));
            for t in c.terms() {
                out.push(json!({"class": class, "coeff": t}));
            }
        }
        Ok(Value::Array(out))
    }

    /// Reads the format written by [`HallAlgebra::element_to_json`]; classes
    /// are resolved from their representatives.
    pub fn element_from_json(&self, v: &Value) -> Result<HallElement> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::invalid("Hall element must be a JSON array"))?;
        let mut out = HallElement::zero(self.q());
        for entry in arr {
            let rep = entry
                .get("class")
                .and_then(|c| c.get("rep"))
                .ok_or_else(|| Error::invalid("Hall element entry needs class.rep"))?;
            let rep = Rep::from_json_parts(self.quiver.clone(), self.field, rep)?;
            let id = self.class_of(&rep)?;
            let term = serde_json::from_value(
                entry
                    .get("coeff")
                    .cloned()
                    .ok_or_else(|| Error::invalid("Hall element entry needs coeff"))?,
            )?;
            out.add_term(id, HallCoefficient::from_terms(self.q(), &[term])?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
