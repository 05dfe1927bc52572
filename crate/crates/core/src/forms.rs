//! Euler, Cartan and Tits forms, representation type, positive roots, and
//! the Gabriel/Kac verification harnesses.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::quiver::Quiver;
use crate::rep::{enumerate_iso_classes, is_indecomposable, DimVector};
use crate::{Error, Limits, PrimeField, Result};

/// Euler matrix `E = (a_ij)` and Cartan matrix `C = E + Eᵀ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormMatrices {
    pub euler: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

/// `a_ij = δ_ij - #{ρ : t(ρ) = i, h(ρ) = j}`.
pub fn euler_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n_vertices();
    let mut e = vec![vec![0i64; n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = 1;
    }
    for a in q.arrows() {
        e[a.tail][a.head] -= 1;
    }
    e
}

pub fn cartan_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let e = euler_matrix(q);
    let n = e.len();
    (0..n)
        .map(|i| (0..n).map(|j| e[i][j] + e[j][i]).collect())
        .collect()
}

pub fn form_matrices(q: &Quiver) -> FormMatrices {
    FormMatrices {
        euler: euler_matrix(q),
        cartan: cartan_matrix(q),
    }
}

fn check_len(q: &Quiver, v: &[i64]) -> Result<()> {
    if v.len() != q.n_vertices() {
        return Err(Error::invalid(format!(
            "vector has {} entries for {} vertices",
            v.len(),
            q.n_vertices()
        )));
    }
    Ok(())
}

/// `⟨α, β⟩ = Σ_i α_i β_i - Σ_ρ α_{t(ρ)} β_{h(ρ)}`.
pub fn euler_form(q: &Quiver, alpha: &[i64], beta: &[i64]) -> Result<i64> {
    check_len(q, alpha)?;
    check_len(q, beta)?;
    let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
    let arrows: i64 = q.arrows().iter().map(|r| alpha[r.tail] * beta[r.head]).sum();
    Ok(diag - arrows)
}

/// `(α, β) = ⟨α, β⟩ + ⟨β, α⟩`.
pub fn symmetric_form(q: &Quiver, alpha: &[i64], beta: &[i64]) -> Result<i64> {
    Ok(euler_form(q, alpha, beta)? + euler_form(q, beta, alpha)?)
}

/// `q(α) = ⟨α, α⟩`.
pub fn tits_form(q: &Quiver, alpha: &[i64]) -> Result<i64> {
    let v = euler_form(q, alpha, alpha)?;
    let c = cartan_matrix(q);
    let twice: i64 = (0..alpha.len())
        .flat_map(|i| (0..alpha.len()).map(move |j| (i, j)))
        .map(|(i, j)| alpha[i] * c[i][j] * alpha[j])
        .sum();
    if 2 * v != twice {
        return Err(Error::Invariant(format!(
            "Tits form {v} disagrees with half the Cartan form {twice}/2"
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepType {
    Finite,
    Tame,
    Wild,
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepType::Finite => "finite",
            RepType::Tame => "tame",
            RepType::Wild => "wild",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentType {
    pub vertices: Vec<String>,
    #[serde(rename = "type")]
    pub kind: RepType,
    /// Dynkin or extended Dynkin label such as `D4` or `E~6`.
    pub shape: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    #[serde(rename = "type")]
    pub kind: RepType,
    pub components: Vec<ComponentType>,
}

pub const LOOP_NOTE: &str = "loop vertex: outside ADE classification";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Definiteness {
    Positive,
    Semidefinite,
    Indefinite,
}

/// Exact symmetric elimination: definite iff all pivots are positive,
/// semidefinite iff pivots are non-negative and every zero pivot has a zero
/// row.
fn definiteness(c: &[Vec<i64>]) -> Definiteness {
    let n = c.len();
    let mut m: Vec<Vec<BigRational>> = c
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut degenerate = false;
    for k in 0..n {
        let pivot = m[k][k].clone();
        if pivot.is_negative() {
            return Definiteness::Indefinite;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return Definiteness::Indefinite;
            }
            degenerate = true;
            continue;
        }
        for i in k + 1..n {
            let factor = &m[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &m[i][j] - &factor * &m[k][j];
                m[i][j] = v;
            }
        }
    }
    if degenerate {
        Definiteness::Semidefinite
    } else {
        Definiteness::Positive
    }
}

/// Recognizes a connected loop-free underlying graph by its shape.
fn recognize_shape(n: usize, edges: &BTreeMap<(usize, usize), usize>, vertices: &[usize]) -> (RepType, Option<String>) {
    let wild = (RepType::Wild, None);
    if n == 1 {
        return (RepType::Finite, Some("A1".into()));
    }
    let local = |v: usize| vertices.iter().position(|&x| x == v).expect("vertex in component");
    let mut adj = vec![Vec::new(); n];
    let mut simple_edges = 0usize;
    for (&(a, b), &mult) in edges {
        if mult >= 3 {
            return wild;
        }
        if mult == 2 {
            return if n == 2 && edges.len() == 1 {
                (RepType::Tame, Some("A~1".into()))
            } else {
                wild
            };
        }
        adj[local(a)].push(local(b));
        adj[local(b)].push(local(a));
        simple_edges += 1;
    }
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    if simple_edges == n {
        return if deg.iter().all(|&d| d == 2) {
            (RepType::Tame, Some(format!("A~{}", n - 1)))
        } else {
            wild
        };
    }
    if simple_edges != n - 1 {
        return wild;
    }
    // Tree from here on.
    let branches: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    if branches.is_empty() {
        return (RepType::Finite, Some(format!("A{n}")));
    }
    // Vertices on the arm leaving `from` through `first`, stopping before
    // any branch vertex.
    let arm = |from: usize, first: usize| -> (usize, bool) {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        loop {
            if deg[cur] >= 3 {
                return (len - 1, true);
            }
            match adj[cur].iter().find(|&&x| x != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                None => return (len, false),
            }
        }
    };
    match branches.as_slice() {
        [b] if deg[*b] == 4 => {
            if n == 5 {
                (RepType::Tame, Some("D~4".into()))
            } else {
                wild
            }
        }
        [b] if deg[*b] == 3 => {
            let mut legs: Vec<usize> = adj[*b].iter().map(|&x| arm(*b, x).0).collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, c] => (RepType::Finite, Some(format!("D{}", c + 3))),
                [1, 2, 2] => (RepType::Finite, Some("E6".into())),
                [1, 2, 3] => (RepType::Finite, Some("E7".into())),
                [1, 2, 4] => (RepType::Finite, Some("E8".into())),
                [2, 2, 2] => (RepType::Tame, Some("E~6".into())),
                [1, 3, 3] => (RepType::Tame, Some("E~7".into())),
                [1, 2, 5] => (RepType::Tame, Some("E~8".into())),
                _ => wild,
            }
        }
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let leaves_ok = |v: usize| {
                adj[v]
                    .iter()
                    .filter(|&&x| !arm(v, x).1)
                    .all(|&x| arm(v, x).0 == 1)
            };
            if leaves_ok(*a) && leaves_ok(*b) {
                (RepType::Tame, Some(format!("D~{}", n - 1)))
            } else {
                wild
            }
        }
        _ => wild,
    }
}

/// Classifies each connected component by Cartan-form definiteness and by
/// graph shape, failing if the two disagree.
pub fn classify_type(q: &Quiver) -> Result<TypeReport> {
    let cartan = cartan_matrix(q);
    let edges = q.edge_multiplicities();
    let mut components = Vec::new();
    for comp in q.components() {
        let names: Vec<String> = comp.iter().map(|&v| q.vertices()[v].clone()).collect();
        if comp.iter().any(|&v| cartan[v][v] < 2) {
            components.push(ComponentType {
                vertices: names,
                kind: RepType::Wild,
                shape: None,
                note: Some(LOOP_NOTE.into()),
            });
            continue;
        }
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let by_form = match definiteness(&sub) {
            Definiteness::Positive => RepType::Finite,
            Definiteness::Semidefinite => RepType::Tame,
            Definiteness::Indefinite => RepType::Wild,
        };
        let comp_edges: BTreeMap<(usize, usize), usize> = edges
            .iter()
            .filter(|((a, _), _)| comp.contains(a))
            .map(|(k, v)| (*k, *v))
            .collect();
        let (by_shape, shape) = recognize_shape(comp.len(), &comp_edges, &comp);
        if by_form != by_shape {
            return Err(Error::Invariant(format!(
                "type classifiers disagree on component {names:?}: form says {by_form}, shape says {by_shape}"
            )));
        }
        components.push(ComponentType {
            vertices: names,
            kind: by_form,
            shape,
            note: None,
        });
    }
    let kind = components
        .iter()
        .map(|c| c.kind)
        .max()
        .unwrap_or(RepType::Finite);
    Ok(TypeReport { kind, components })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root {
    pub vector: Vec<i64>,
    pub kind: RootKind,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.vector.iter().sum()
    }
}

pub const DEFAULT_HEIGHT_BOUND: u32 = 8;

/// `s_i(α) = α - (α, α_i) α_i`.
fn reflect(cartan: &[Vec<i64>], alpha: &[i64], i: usize) -> Vec<i64> {
    let pairing: i64 = (0..alpha.len()).map(|j| alpha[j] * cartan[j][i]).sum();
    let mut out = alpha.to_vec();
    out[i] -= pairing;
    out
}

/// Real roots reachable from the simple roots at loop-free vertices by
/// height-increasing reflections, up to `max_height` (unbounded if `None`).
fn real_roots(q: &Quiver, max_height: Option<i64>) -> BTreeSet<Vec<i64>> {
    let n = q.n_vertices();
    let cartan = cartan_matrix(q);
    let reflective: Vec<usize> = (0..n).filter(|&i| cartan[i][i] == 2).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for &i in &reflective {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(a) = queue.pop_front() {
        for &i in &reflective {
            let b = reflect(&cartan, &a, i);
            let h: i64 = b.iter().sum();
            if b.iter().all(|&x| x >= 0)
                && h > a.iter().sum::<i64>()
                && max_height.is_none_or(|m| h <= m)
                && seen.insert(b.clone())
            {
                queue.push_back(b);
            }
        }
    }
    seen
}

/// Non-negative vectors with `1 <= height <= bound`.
fn vectors_up_to_height(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| (a.height(), &a.vector).cmp(&(b.height(), &b.vector)));
}

/// Positive roots: the full reflection closure for finite type, otherwise
/// real roots and imaginary candidates (connected support, `q <= 0`) up to
/// `height_bound`.
pub fn positive_roots(q: &Quiver, height_bound: u32) -> Result<Vec<Root>> {
    let finite = classify_type(q)?.kind == RepType::Finite;
    let mut roots: Vec<Root> = real_roots(q, (!finite).then_some(height_bound as i64))
        .into_iter()
        .map(|vector| Root {
            vector,
            kind: RootKind::Real,
        })
        .collect();
    if !finite {
        for v in vectors_up_to_height(q.n_vertices(), height_bound as i64) {
            let support: Vec<bool> = v.iter().map(|&x| x > 0).collect();
            if q.support_connected(&support) && tits_form(q, &v)? <= 0 {
                roots.push(Root {
                    vector: v,
                    kind: RootKind::Imaginary,
                });
            }
        }
    }
    sort_roots(&mut roots);
    Ok(roots)
}

/// Root status of a single vector, by Tits form and connected support.
pub fn root_kind(q: &Quiver, v: &[i64]) -> Result<Option<RootKind>> {
    check_len(q, v)?;
    if v.iter().any(|&x| x < 0) {
        return Ok(None);
    }
    let support: Vec<bool> = v.iter().map(|&x| x > 0).collect();
    if !q.support_connected(&support) {
        return Ok(None);
    }
    let t = tits_form(q, v)?;
    if t <= 0 {
        return Ok(Some(RootKind::Imaginary));
    }
    if t == 1 && real_roots(q, Some(v.iter().sum())).contains(v) {
        return Ok(Some(RootKind::Real));
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCount {
    pub dim: Vec<usize>,
    /// Isomorphism classes of indecomposables with this dimension vector.
    pub count: usize,
    pub root: Option<RootKind>,
}

/// Outcome of checking indecomposables against roots in the box
/// `0 <= d_i <= dim_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub roots: Vec<Root>,
    pub indecomposables: Vec<DimensionCount>,
    pub verdict: String,
    pub violations: Vec<String>,
}

impl RootReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "roots": self.roots,
            "indecomposables": self.indecomposables,
            "verdict": self.verdict,
            "violations": self.violations,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("dim\tcount\troot\n");
        for d in &self.indecomposables {
            let dim: Vec<String> = d.dim.iter().map(|x| x.to_string()).collect();
            let root = match d.root {
                Some(RootKind::Real) => "real",
                Some(RootKind::Imaginary) => "imaginary",
                None => "-",
            };
            out.push_str(&format!("{}\t{}\t{}\n", dim.join(","), d.count, root));
        }
        out
    }
}

/// Number of indecomposable iso classes of each nonzero dimension vector
/// in the box, computed in parallel and returned in lexicographic order.
pub fn count_indecomposables(
    q: &Arc<Quiver>,
    field: PrimeField,
    dim_bound: usize,
    limits: &Limits,
) -> Result<Vec<(DimVector, usize)>> {
    let boxed = DimVector(vec![dim_bound; q.n_vertices()]);
    let dims: Vec<DimVector> = boxed.below().into_iter().filter(|d| !d.is_zero()).collect();
    dims.into_par_iter()
        .map(|d| {
            let table = enumerate_iso_classes(q.clone(), d.clone(), field, limits)?;
            let mut count = 0;
            for k in 0..table.num_classes() {
                if is_indecomposable(&table.representative(k), limits)? {
                    count += 1;
                }
            }
            Ok((d, count))
        })
        .collect()
}

fn root_report(q: &Arc<Quiver>, p: u64, dim_bound: usize, limits: &Limits) -> Result<RootReport> {
    let field = PrimeField::new(p)?;
    let counts = count_indecomposables(q, field, dim_bound, limits)?;
    let mut roots = Vec::new();
    let mut indecomposables = Vec::new();
    let mut violations = Vec::new();
    for (d, count) in counts {
        let v = d.as_i64();
        let kind = root_kind(q, &v)?;
        if let Some(k) = kind {
            roots.push(Root { vector: v, kind: k });
        }
        match kind {
            None if count > 0 => {
                violations.push(format!("{count} indecomposable class(es) of dimension {d}, which is not a root"))
            }
            Some(RootKind::Real) if count != 1 => {
                violations.push(format!("real root {d} has {count} indecomposable classes"))
            }
            _ => {}
        }
        if count > 0 || kind.is_some() {
            indecomposables.push(DimensionCount {
                dim: d.0,
                count,
                root: kind,
            });
        }
    }
    sort_roots(&mut roots);
    let verdict = if violations.is_empty() {
        "verified".to_string()
    } else {
        "failed".to_string()
    };
    Ok(RootReport {
        roots,
        indecomposables,
        verdict,
        violations,
    })
}

/// For a finite-type quiver: every positive root in the box carries exactly
/// one indecomposable class, and no other dimension vector carries any.
pub fn check_gabriel(q: &Arc<Quiver>, p: u64, dim_bound: usize, limits: &Limits) -> Result<RootReport> {
    let t = classify_type(q)?;
    if t.kind != RepType::Finite {
        return Err(Error::invalid(format!(
            "Gabriel check needs a quiver of finite type, this one is {}",
            t.kind
        )));
    }
    root_report(q, p, dim_bound, limits)
}

/// Every indecomposable dimension vector in the box is a positive root, and
/// real roots carry exactly one class; imaginary counts are recorded.
pub fn check_kac(q: &Arc<Quiver>, p: u64, dim_bound: usize, limits: &Limits) -> Result<RootReport> {
    root_report(q, p, dim_bound, limits)
}
