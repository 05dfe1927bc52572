//! Representation spaces of the double quiver: the symplectic form, the
//! moment map, nilpotency, the point sets `Λ_V(F_p)` and stability of
//! framed points.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::matrix::Matrix;
use crate::quiver::{DoubleQuiver, Quiver};
use crate::rep::{DimVector, FieldSpec, Rep, RepSpace};
use crate::{Error, Field, Limits, PrimeField, Rationals, Result};

/// A point `x = (x_ρ)` of `E_V` for the double quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleRepPoint<F: Field> {
    double: Arc<DoubleQuiver>,
    rep: Rep<F>,
}

/// `ε(ρ)`: `+1` on the original orientation, `-1` on reversed arrows.
pub fn epsilon(double: &DoubleQuiver, arrow: usize) -> i64 {
    double.epsilon(arrow)
}

impl<F: Field> DoubleRepPoint<F> {
    pub fn new(double: Arc<DoubleQuiver>, field: F, dims: DimVector, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let rep = Rep::new(double.quiver().clone(), field, dims, maps)?;
        Ok(DoubleRepPoint { double, rep })
    }

    pub fn zero(double: Arc<DoubleQuiver>, field: F, dims: DimVector) -> Result<Self> {
        let rep = Rep::zero(double.quiver().clone(), field, dims)?;
        Ok(DoubleRepPoint { double, rep })
    }

    pub fn from_rep(double: Arc<DoubleQuiver>, rep: Rep<F>) -> Result<Self> {
        if **rep.quiver() != **double.quiver() {
            return Err(Error::invalid("representation is not over this double quiver"));
        }
        Ok(DoubleRepPoint { double, rep })
    }

    pub fn double(&self) -> &Arc<DoubleQuiver> {
        &self.double
    }

    pub fn rep(&self) -> &Rep<F> {
        &self.rep
    }

    pub fn dims(&self) -> &DimVector {
        self.rep.dims()
    }

    pub fn field(&self) -> &F {
        self.rep.field()
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F::Elem> {
        self.rep.map(arrow)
    }

    /// `g · x`, i.e. `x_ρ ↦ g_{h(ρ)} x_ρ g_{t(ρ)}⁻¹`.
    pub fn act(&self, g: &[Matrix<F::Elem>]) -> Result<Self> {
        Ok(DoubleRepPoint {
            double: self.double.clone(),
            rep: self.rep.transform(g)?,
        })
    }

    /// Zeroes every reversed-arrow component.
    pub fn omega_part(&self) -> Self {
        let f = self.field();
        let maps = (0..self.double.quiver().n_arrows())
            .map(|a| {
                if self.double.in_omega(a) {
                    self.map(a).clone()
                } else {
                    Matrix::zeros(f, self.map(a).rows(), self.map(a).cols())
                }
            })
            .collect();
        DoubleRepPoint::new(self.double.clone(), f.clone(), self.dims().clone(), maps)
            .expect("same shapes")
    }

    /// `⟨x, y⟩ = Σ_ρ ε(ρ) tr(x_ρ y_ρ̄)`.
    pub fn symplectic_form(&self, y: &Self) -> Result<F::Elem> {
        if self.double != y.double || self.dims() != y.dims() || self.field() != y.field() {
            return Err(Error::invalid("points of different representation spaces"));
        }
        let f = self.field();
        let mut acc = f.zero();
        for a in 0..self.double.quiver().n_arrows() {
            let tr = self.map(a).mul(y.map(self.double.bar(a)), f).trace(f);
            acc = f.add(&acc, &f.mul(&f.from_i64(epsilon(&self.double, a)), &tr));
        }
        Ok(acc)
    }

    /// `ψ_i(x) = Σ_{h(ρ) = i} ε(ρ) x_ρ x_ρ̄`, one `v_i × v_i` matrix per vertex.
    pub fn moment_map(&self) -> Vec<Matrix<F::Elem>> {
        let f = self.field();
        let q = self.double.quiver();
        let mut psi: Vec<Matrix<F::Elem>> = self.dims().iter().map(|&d| Matrix::zeros(f, d, d)).collect();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let term = self
                .map(a)
                .mul(self.map(self.double.bar(a)), f)
                .scale(&f.from_i64(epsilon(&self.double, a)), f);
            psi[arrow.head] = psi[arrow.head].add(&term, f);
        }
        psi
    }

    pub fn moment_map_vanishes(&self) -> bool {
        self.moment_map().iter().all(|m| m.is_zero(self.field()))
    }

    /// Whether every long enough composite `x_{ρ_1} ⋯ x_{ρ_N}` vanishes.
    /// Tracks the graded subspaces `U_{k+1,h} = Σ_{h(ρ)=h} x_ρ U_{k,t(ρ)}`
    /// starting from `U_0 = V`; `x` is nilpotent iff `U_N = 0` for
    /// `N = 1 + Σ v_i`.
    pub fn is_nilpotent(&self) -> bool {
        let f = self.field();
        let q = self.double.quiver();
        let dims = self.dims();
        let mut spans: Vec<Matrix<F::Elem>> = dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        for _ in 0..=dims.total() {
            if spans.iter().all(|s| s.cols() == 0) {
                return true;
            }
            let mut next: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); dims.len()];
            for (a, arrow) in q.arrows().iter().enumerate() {
                let img = self.map(a).mul(&spans[arrow.tail], f);
                next[arrow.head].extend((0..img.cols()).map(|c| img.column(c)));
            }
            spans = next
                .into_iter()
                .zip(dims.iter())
                .map(|(cols, &d)| {
                    let m = Matrix::from_columns(d, &cols);
                    Matrix::from_columns(d, &m.column_space(f))
                })
                .collect();
        }
        spans.iter().all(|s| s.cols() == 0)
    }

    /// Rep-style JSON over the base quiver; maps are keyed by double-quiver
    /// arrow names.
    pub fn to_json(&self) -> Value {
        let mut v = self.rep.to_json();
        v["quiver"] = self.double.base().to_json_value();
        v
    }

    pub fn from_json_parts(double: Arc<DoubleQuiver>, field: F, v: &Value) -> Result<Self> {
        let rep = Rep::from_json_parts(double.quiver().clone(), field, v)?;
        Ok(DoubleRepPoint { double, rep })
    }
}

/// `Λ_V(F_p)`: nilpotent points with vanishing moment map, in index order.
#[derive(Debug, Clone)]
pub struct LambdaPoints {
    pub total_scanned: u128,
    pub points: Vec<DoubleRepPoint<PrimeField>>,
}

impl LambdaPoints {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Exhaustive scan of `E_V(F_p)`, parallel over points, merged in index
/// order.
pub fn lambda_points(q: &Quiver, dims: &DimVector, p: u64, limits: &Limits) -> Result<LambdaPoints> {
    let double = Arc::new(q.double()?);
    let field = PrimeField::new(p)?;
    let space = RepSpace::new(double.quiver().clone(), field, dims.clone())?;
    let total = space.n_points();
    limits.check_points("double representation space", total)?;
    let hits: Vec<u64> = (0..total as u64)
        .into_par_iter()
        .filter(|&idx| {
            let x = DoubleRepPoint {
                double: double.clone(),
                rep: space.rep_at(idx),
            };
            x.moment_map_vanishes() && x.is_nilpotent()
        })
        .collect();
    Ok(LambdaPoints {
        total_scanned: total,
        points: hits
            .into_iter()
            .map(|idx| DoubleRepPoint {
                double: double.clone(),
                rep: space.rep_at(idx),
            })
            .collect(),
    })
}

/// A point `x` together with framing maps `t_i : V_i -> W_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedPoint<F: Field> {
    pub point: DoubleRepPoint<F>,
    pub framing_dims: DimVector,
    pub framing: Vec<Matrix<F::Elem>>,
}

impl<F: Field> FramedPoint<F> {
    pub fn new(point: DoubleRepPoint<F>, framing_dims: DimVector, framing: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let n = point.dims().len();
        if framing_dims.len() != n || framing.len() != n {
            return Err(Error::invalid("framing needs one dimension and one map per vertex"));
        }
        for (i, t) in framing.iter().enumerate() {
            if t.shape() != (framing_dims[i], point.dims()[i]) {
                return Err(Error::invalid(format!(
                    "framing map at vertex {i} has shape {:?}, expected {:?}",
                    t.shape(),
                    (framing_dims[i], point.dims()[i])
                )));
            }
        }
        Ok(FramedPoint {
            point,
            framing_dims,
            framing,
        })
    }

    /// Stable iff no nonzero graded `S ⊆ V` is `x`-stable with `t_i(S_i) = 0`.
    /// The largest such `S` is the common kernel of functionals `F_i`,
    /// seeded with the rows of `t_i` and closed under
    /// `F_{t(ρ)} ← F_{t(ρ)} + F_{h(ρ)} x_ρ`; the point is stable iff every
    /// `F_i` reaches full rank.
    pub fn is_stable(&self) -> bool {
        let f = self.point.field();
        let q = self.point.double().quiver();
        let dims = self.point.dims();
        let mut funcs: Vec<Matrix<F::Elem>> = self
            .framing
            .iter()
            .map(|t| Matrix::from_rows(t.cols(), &row_basis(t, f)))
            .collect();
        loop {
            let mut changed = false;
            for (a, arrow) in q.arrows().iter().enumerate() {
                let pulled = funcs[arrow.head].mul(self.point.map(a), f);
                let stacked = funcs[arrow.tail].vstack(&pulled);
                let basis = row_basis(&stacked, f);
                if basis.len() > funcs[arrow.tail].rows() {
                    funcs[arrow.tail] = Matrix::from_rows(dims[arrow.tail], &basis);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        funcs.iter().zip(dims.iter()).all(|(m, &d)| m.rows() == d)
    }

    /// Rep-style JSON plus `"framing": {"dims": {...}, "maps": {...}}`, with
    /// framing maps keyed by vertex name.
    pub fn to_json(&self) -> Value {
        let mut v = self.point.to_json();
        let f = self.point.field();
        let q = self.point.double().base();
        let mut dims = Map::new();
        let mut maps = Map::new();
        for (i, name) in q.vertices().iter().enumerate() {
            dims.insert(name.clone(), Value::from(self.framing_dims[i]));
            maps.insert(name.clone(), self.framing[i].to_json(f));
        }
        v["framing"] = serde_json::json!({"dims": dims, "maps": maps});
        v
    }

    pub fn from_json_parts(double: Arc<DoubleQuiver>, field: F, v: &Value) -> Result<Self> {
        let point = DoubleRepPoint::from_json_parts(double.clone(), field.clone(), v)?;
        let q = double.base();
        let framing = v.get("framing");
        let mut w = vec![0usize; q.n_vertices()];
        if let Some(d) = framing.and_then(|fr| fr.get("dims")).and_then(Value::as_object) {
            for (name, x) in d {
                w[q.vertex_index(name)?] = x
                    .as_u64()
                    .ok_or_else(|| Error::invalid("framing dimensions must be non-negative integers"))?
                    as usize;
            }
        }
        let maps_obj = framing.and_then(|fr| fr.get("maps")).and_then(Value::as_object);
        if let Some(o) = maps_obj {
            for name in o.keys() {
                q.vertex_index(name)?;
            }
        }
        let maps = q
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, name)| match maps_obj.and_then(|o| o.get(name)) {
                Some(m) => Matrix::from_json(&field, m, w[i], point.dims()[i]),
                None => Ok(Matrix::zeros(&field, w[i], point.dims()[i])),
            })
            .collect::<Result<Vec<_>>>()?;
        FramedPoint::new(point, DimVector(w), maps)
    }
}

fn row_basis<F: Field>(m: &Matrix<F::Elem>, f: &F) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = m.rref(f);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// A framed point read from JSON, over the field it names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyFramedPoint {
    Prime(FramedPoint<PrimeField>),
    Rational(FramedPoint<Rationals>),
}

impl AnyFramedPoint {
    pub fn from_json(v: &Value) -> Result<Self> {
        let base = Quiver::from_json_value(
            v.get("quiver")
                .ok_or_else(|| Error::invalid("point needs a \"quiver\""))?,
        )?;
        let double = Arc::new(base.double()?);
        let field = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("point needs a \"field\" string"))?;
        Ok(match FieldSpec::parse(field)? {
            FieldSpec::Prime(f) => AnyFramedPoint::Prime(FramedPoint::from_json_parts(double, f, v)?),
            FieldSpec::Rational => AnyFramedPoint::Rational(FramedPoint::from_json_parts(double, Rationals, v)?),
        })
    }

    pub fn is_stable(&self) -> bool {
        match self {
            AnyFramedPoint::Prime(p) => p.is_stable(),
            AnyFramedPoint::Rational(p) => p.is_stable(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyFramedPoint::Prime(p) => p.to_json(),
            AnyFramedPoint::Rational(p) => p.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::matrix::{for_each_subspace, Subspace};

    fn a2_double() -> Arc<DoubleQuiver> {
        Arc::new(Quiver::linear_a(2).double().unwrap())
    }

    fn scalar_point<F: Field>(d: &Arc<DoubleQuiver>, f: F, dims: &[usize], entries: &[i64]) -> DoubleRepPoint<F> {
        let mut k = 0;
        let maps = d
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.head], dims[a.tail]);
                let m = Matrix::from_vec(r, c, entries[k..k + r * c].iter().map(|&x| f.from_i64(x)).collect());
                k += r * c;
                m
            })
            .collect();
        DoubleRepPoint::new(d.clone(), f, DimVector(dims.to_vec()), maps).unwrap()
    }

    fn random_point<F: Field>(d: &Arc<DoubleQuiver>, f: F, dims: &[usize], rng: &mut ChaCha8Rng) -> DoubleRepPoint<F> {
        let maps = d
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::random(&f, dims[a.head], dims[a.tail], rng))
            .collect();
        DoubleRepPoint::new(d.clone(), f, DimVector(dims.to_vec()), maps).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn epsilon_signs() {
        let d = a2_double();
        assert_eq!(epsilon(&d, 0), 1);
        assert_eq!(epsilon(&d, d.bar(0)), -1);
        let k = Quiver::kronecker(2).double().unwrap();
        for a in 0..4 {
            assert_eq!(epsilon(&k, a) * epsilon(&k, k.bar(a)), -1);
        }
    }

    #[test]
    fn a2_formulas() {
        let d = a2_double();
        let (a, b, c, e) = (2, 3, 5, 7);
        let x = scalar_point(&d, Rationals, &[1, 1], &[a, b]);
        let y = scalar_point(&d, Rationals, &[1, 1], &[c, e]);
        assert_eq!(x.symplectic_form(&y).unwrap(), rat(a * e - b * c));
        let psi = x.moment_map();
        assert_eq!(psi[0].get(0, 0), &rat(-b * a));
        assert_eq!(psi[1].get(0, 0), &rat(a * b));
        let z = DoubleRepPoint::zero(d.clone(), Rationals, DimVector(vec![1, 1])).unwrap();
        assert!(z.moment_map().iter().all(|m| m.is_zero(&Rationals)));
        assert!(z.is_nilpotent());
        assert!(!scalar_point(&d, Rationals, &[1, 1], &[1, 1]).is_nilpotent());
        assert!(scalar_point(&d, Rationals, &[1, 1], &[1, 0]).is_nilpotent());
        // Pairing only couples an arrow with its reversal.
        let xo = scalar_point(&d, Rationals, &[1, 1], &[4, 0]);
        let yo = scalar_point(&d, Rationals, &[1, 1], &[9, 0]);
        assert_eq!(xo.symplectic_form(&yo).unwrap(), rat(0));
    }

    #[test]
    fn total_matrix_powering_is_not_nilpotency() {
        // Kronecker double, v = (1,1): x_a = 1, x_b = -1, x_abar = 1.
        // The sum of all arrow maps is nilpotent, yet x_abar x_a = 1.
        let d = Arc::new(Quiver::kronecker(2).double().unwrap());
        let x = scalar_point(&d, Rationals, &[1, 1], &[1, -1, 1, 0]);
        assert!(!x.is_nilpotent());
    }

    #[test]
    fn lambda_counts() {
        let q = Quiver::linear_a(2);
        let l = Limits::default();
        let two = lambda_points(&q, &DimVector(vec![1, 1]), 2, &l).unwrap();
        let entries: Vec<Vec<u64>> = two
            .points
            .iter()
            .map(|x| vec![x.map(0).data()[0], x.map(1).data()[0]])
            .collect();
        assert_eq!(entries, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(lambda_points(&q, &DimVector(vec![1, 1]), 3, &l).unwrap().count(), 5);
        assert_eq!(lambda_points(&q, &DimVector(vec![0, 0]), 3, &l).unwrap().count(), 1);
        assert!(matches!(
            lambda_points(&Quiver::kronecker(2), &DimVector(vec![3, 3]), 3, &l),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lambda_points_closure_properties() {
        let l = Limits::default();
        for (q, dims, p) in [
            (Quiver::linear_a(2), vec![1, 2], 2),
            (Quiver::linear_a(3), vec![1, 1, 1], 3),
            (Quiver::linear_a(2), vec![2, 2], 2),
        ] {
            let lam = lambda_points(&q, &DimVector(dims.clone()), p, &l).unwrap();
            let f = PrimeField::new(p).unwrap();
            let set: std::collections::BTreeSet<Vec<u64>> = lam.points.iter().map(|x| x.rep().maps().iter().flat_map(|m| m.data().to_vec()).collect()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for x in &lam.points {
                assert!(x.is_nilpotent() && x.moment_map_vanishes());
                let o = x.omega_part();
                assert!(o.is_nilpotent() && o.moment_map_vanishes());
                let g: Vec<Matrix<u64>> = dims
                    .iter()
                    .map(|&d| loop {
                        let m = Matrix::random(&f, d, d, &mut rng);
                        if m.is_invertible(&f) {
                            break m;
                        }
                    })
                    .collect();
                let y = x.act(&g).unwrap();
                let key: Vec<u64> = y.rep().maps().iter().flat_map(|m| m.data().to_vec()).collect();
                assert!(set.contains(&key));
            }
        }
    }

    #[test]
    fn moment_map_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (q, dims) in [(Quiver::linear_a(3), vec![2, 1, 2]), (Quiver::kronecker(2), vec![2, 3])] {
            let d = Arc::new(q.double().unwrap());
            for f in [PrimeField::new(7).unwrap(), PrimeField::new(2).unwrap()] {
                for _ in 0..50 {
                    let x = random_point(&d, f, &dims, &mut rng);
                    let y = random_point(&d, f, &dims, &mut rng);
                    let tr = x.moment_map().iter().fold(0, |acc, m| f.add(&acc, &m.trace(&f)));
                    assert_eq!(tr, 0);
                    let xy = x.symplectic_form(&y).unwrap();
                    assert_eq!(xy, f.neg(&y.symplectic_form(&x).unwrap()));
                    let g: Vec<Matrix<u64>> = dims
                        .iter()
                        .map(|&n| loop {
                            let m = Matrix::random(&f, n, n, &mut rng);
                            if m.is_invertible(&f) {
                                break m;
                            }
                        })
                        .collect();
                    let lhs = x.act(&g).unwrap().moment_map();
                    let rhs: Vec<Matrix<u64>> = x
                        .moment_map()
                        .iter()
                        .zip(&g)
                        .map(|(m, gi)| gi.mul(m, &f).mul(&gi.inverse(&f).unwrap(), &f))
                        .collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn symplectic_form_is_nondegenerate() {
        let f = PrimeField::new(5).unwrap();
        for (q, dims) in [(Quiver::linear_a(2), vec![1, 2]), (Quiver::linear_a(3), vec![1, 1, 1])] {
            let d = Arc::new(q.double().unwrap());
            let space = RepSpace::new(d.quiver().clone(), f, DimVector(dims.clone())).unwrap();
            let n = space.decode(0).len();
            let basis: Vec<DoubleRepPoint<PrimeField>> = (0..n)
                .map(|k| {
                    let mut e = vec![0u64; n];
                    e[k] = 1;
                    DoubleRepPoint::from_rep(d.clone(), space.rep_from_entries(&e)).unwrap()
                })
                .collect();
            let gram: Vec<Vec<u64>> = basis
                .iter()
                .map(|x| basis.iter().map(|y| x.symplectic_form(y).unwrap()).collect())
                .collect();
            assert_eq!(Matrix::from_rows(n, &gram).rank(&f), n);
        }
    }

    #[test]
    fn stability_examples() {
        let one = Arc::new(Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap().double().unwrap());
        let f = PrimeField::new(3).unwrap();
        let x = DoubleRepPoint::zero(one.clone(), f, DimVector(vec![1])).unwrap();
        let unstable = FramedPoint::new(x.clone(), DimVector(vec![1]), vec![Matrix::from_vec(1, 1, vec![0])]).unwrap();
        assert!(!unstable.is_stable());
        let stable = FramedPoint::new(x, DimVector(vec![1]), vec![Matrix::from_vec(1, 1, vec![2])]).unwrap();
        assert!(stable.is_stable());
        let empty = DoubleRepPoint::zero(one, f, DimVector(vec![0])).unwrap();
        assert!(FramedPoint::new(empty, DimVector(vec![1]), vec![Matrix::zeros(&f, 1, 0)]).unwrap().is_stable());
    }

    /// Unstable iff some nonzero graded subspace inside `ker t` is x-stable,
    /// found by listing every graded subspace.
    fn stable_by_enumeration(fp: &FramedPoint<PrimeField>) -> bool {
        let f = *fp.point.field();
        let dims = fp.point.dims().clone();
        let q = fp.point.double().quiver().clone();
        for e in dims.below() {
            if e.is_zero() {
                continue;
            }
            let mut lists: Vec<Vec<Subspace<u64>>> = Vec::new();
            for i in 0..dims.len() {
                let mut l = Vec::new();
                for_each_subspace(f.p(), dims[i], e[i], |s| {
                    l.push(s.clone());
                    Ok(())
                })
                .unwrap();
                lists.push(l);
            }
            let mut choice = vec![0usize; dims.len()];
            'outer: loop {
                let s: Vec<&Subspace<u64>> = choice.iter().enumerate().map(|(i, &c)| &lists[i][c]).collect();
                let killed = (0..dims.len()).all(|i| {
                    s[i].basis_vectors().iter().all(|b| fp.framing[i].mul_vec(b, &f).iter().all(|&x| x == 0))
                });
                let closed = q.arrows().iter().enumerate().all(|(a, arrow)| {
                    s[arrow.tail]
                        .basis_vectors()
                        .iter()
                        .all(|b| s[arrow.head].contains(&f, &fp.point.map(a).mul_vec(b, &f)))
                });
                if killed && closed {
                    return false;
                }
                let mut i = 0;
                loop {
                    if i == dims.len() {
                        break 'outer;
                    }
                    choice[i] += 1;
                    if choice[i] < lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
            }
        }
        true
    }

    fn arb_framed() -> impl Strategy<Value = FramedPoint<PrimeField>> {
        (0usize..=2, 0usize..=2, 0usize..=1, 0usize..=1, any::<u64>()).prop_map(|(v1, v2, w1, w2, seed)| {
            let d = Arc::new(Quiver::linear_a(2).double().unwrap());
            let f = PrimeField::new(2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_point(&d, f, &[v1, v2], &mut rng);
            let t = vec![Matrix::random(&f, w1, v1, &mut rng), Matrix::random(&f, w2, v2, &mut rng)];
            FramedPoint::new(x, DimVector(vec![w1, w2]), t).unwrap()
        })
    }

    proptest! {
        #[test]
        fn stability_matches_enumeration(fp in arb_framed()) {
            prop_assert_eq!(fp.is_stable(), stable_by_enumeration(&fp));
        }

        #[test]
        fn symplectic_form_is_bilinear_over_q(
            xs in proptest::collection::vec(-9i64..9, 8),
            ys in proptest::collection::vec(-9i64..9, 8),
            zs in proptest::collection::vec(-9i64..9, 8),
            c in -5i64..5,
        ) {
            let d = Arc::new(Quiver::linear_a(3).double().unwrap());
            let dims = [1, 2, 1];
            let x = scalar_point(&d, Rationals, &dims, &xs);
            let y = scalar_point(&d, Rationals, &dims, &ys);
            let z = scalar_point(&d, Rationals, &dims, &zs);
            let sum: Vec<i64> = ys.iter().zip(&zs).map(|(a, b)| c * a + b).collect();
            let yz = scalar_point(&d, Rationals, &dims, &sum);
            let lhs = x.symplectic_form(&yz).unwrap();
            let rhs = rat(c) * x.symplectic_form(&y).unwrap() + x.symplectic_form(&z).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.symplectic_form(&x).unwrap(), rat(0));
        }
    }

    #[test]
    fn framed_json_round_trip() {
        let d = a2_double();
        let f = PrimeField::new(3).unwrap();
        let x = scalar_point(&d, f, &[1, 1], &[1, 2]);
        let fp = FramedPoint::new(x, DimVector(vec![1, 0]), vec![Matrix::from_vec(1, 1, vec![1]), Matrix::zeros(&f, 0, 1)]).unwrap();
        let v = fp.to_json();
        assert!(v["maps"].get("a1_bar").is_some());
        assert_eq!(AnyFramedPoint::from_json(&v).unwrap(), AnyFramedPoint::Prime(fp));
    }
}
