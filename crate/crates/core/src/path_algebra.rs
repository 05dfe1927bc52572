//! The path algebra `kQ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver};
use crate::{Error, Field, Result};

/// A finite linear combination of paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PathAlgElem<F: Field> {
    quiver: Arc<Quiver>,
    field: F,
    terms: BTreeMap<Path, F::Elem>,
}

/// Dimension of `kQ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraDimension {
    Finite(usize),
    Infinite,
}

pub fn algebra_dimension(q: &Quiver) -> AlgebraDimension {
    if q.is_acyclic() {
        AlgebraDimension::Finite(q.enumerate_paths(q.n_arrows()).len())
    } else {
        AlgebraDimension::Infinite
    }
}

/// Product of two basis paths: concatenation when `h(y) = t(x)`.
pub fn path_product(q: &Quiver, x: &Path, y: &Path) -> Option<Path> {
    if q.path_tail(x) != q.path_head(y) {
        return None;
    }
    Some(match (x, y) {
        (Path::Trivial(_), _) => y.clone(),
        (_, Path::Trivial(_)) => x.clone(),
        (Path::Arrows(a), Path::Arrows(b)) => Path::Arrows(a.iter().chain(b).copied().collect()),
    })
}

impl<F: Field> PathAlgElem<F> {
    pub fn zero(quiver: Arc<Quiver>, field: F) -> Self {
        PathAlgElem {
            quiver,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(quiver: Arc<Quiver>, field: F, path: Path) -> Result<Self> {
        if !quiver.is_composable(&path) {
            return Err(Error::invalid("path is not composable in this quiver"));
        }
        let one = field.one();
        let mut e = Self::zero(quiver, field);
        e.add_term(path, one);
        Ok(e)
    }

    /// Sum of all trivial paths.
    pub fn unit(quiver: Arc<Quiver>, field: F) -> Self {
        let mut e = Self::zero(quiver.clone(), field);
        for v in 0..quiver.n_vertices() {
            let one = e.field.one();
            e.add_term(Path::Trivial(v), one);
        }
        e
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Path, F::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Path, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&path) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&path);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(path, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            || self.field != other.field
        {
            return Err(Error::invalid(
                "path algebra elements live on different quivers or fields",
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.quiver.clone(), self.field.clone());
        for (p, a) in &self.terms {
            out.add_term(p.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Bilinear extension of [`path_product`].
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = Self::zero(self.quiver.clone(), f.clone());
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                if let Some(xy) = path_product(&self.quiver, x, y) {
                    out.add_term(xy, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// JSON list of `{"path": [...] | {"e": v}, "coeff": ...}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(p, c)| {
                    let path = match p {
                        Path::Trivial(v) => json!({ "e": self.quiver.vertices()[*v] }),
                        Path::Arrows(rs) => Value::Array(
                            rs.iter()
                                .map(|&r| Value::String(self.quiver.arrows()[r].name.clone()))
                                .collect(),
                        ),
                    };
                    let coeff = match self.field.elem_to_json(c) {
                        Value::Number(n) => Value::String(n.to_string()),
                        other => other,
                    };
                    json!({ "path": path, "coeff": coeff })
                })
                .collect(),
        )
    }

    pub fn from_json(quiver: Arc<Quiver>, field: F, v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::invalid("path algebra element must be a JSON list"))?;
        let mut out = Self::zero(quiver.clone(), field.clone());
        for item in items {
            let path = match item.get("path") {
                Some(Value::Object(o)) => {
                    let v = o
                        .get("e")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::invalid("trivial path must be {\"e\": vertex}"))?;
                    Path::Trivial(quiver.vertex_index(v)?)
                }
                Some(Value::Array(names)) => {
                    let mut rs = Vec::with_capacity(names.len());
                    for n in names {
                        let n = n
                            .as_str()
                            .ok_or_else(|| Error::invalid("arrow names must be strings"))?;
                        rs.push(quiver.arrow_index(n)?);
                    }
                    Path::Arrows(rs)
                }
                _ => return Err(Error::invalid("term is missing a \"path\"")),
            };
            if !quiver.is_composable(&path) {
                return Err(Error::invalid("path is not composable"));
            }
            let coeff = field.elem_from_json(
                item.get("coeff")
                    .ok_or_else(|| Error::invalid("term is missing a \"coeff\""))?,
            )?;
            out.add_term(path, coeff);
        }
        Ok(out)
    }
}

/// Position of each vertex along a linearly oriented `A_n` quiver
/// (the source is position 0), or `None` for any other shape.
pub fn linear_order(q: &Quiver) -> Option<Vec<usize>> {
    let n = q.n_vertices();
    if n == 0 || q.n_arrows() != n - 1 {
        return None;
    }
    let mut next = vec![None; n];
    let mut has_in = vec![false; n];
    for a in q.arrows() {
        if a.head == a.tail || next[a.tail].is_some() || has_in[a.head] {
            return None;
        }
        next[a.tail] = Some(a.head);
        has_in[a.head] = true;
    }
    let start = (0..n).find(|&v| !has_in[v])?;
    let mut pos = vec![usize::MAX; n];
    let mut cur = Some(start);
    let mut k = 0;
    while let Some(v) = cur {
        pos[v] = k;
        k += 1;
        cur = next[v];
    }
    (k == n).then_some(pos)
}

/// The isomorphism from `kA_n` (linear orientation) onto lower triangular
/// `n × n` matrices: the path from `i` to `j` goes to `E_{ji}`.
pub fn triangular_iso<F: Field>(n: usize, x: &PathAlgElem<F>) -> Result<Matrix<F::Elem>> {
    let q = x.quiver();
    let pos = linear_order(q)
        .filter(|_| q.n_vertices() == n)
        .ok_or_else(|| Error::invalid(format!("quiver is not a linearly oriented A_{n}")))?;
    let f = x.field();
    let mut m = Matrix::zeros(f, n, n);
    for (p, c) in x.terms() {
        let (i, j) = (pos[q.path_tail(p)], pos[q.path_head(p)]);
        let v = f.add(m.get(j, i), c);
        m.set(j, i, v);
    }
    Ok(m)
}
