//! Graded ring models: basis, grading, pairing, cup and quantum structure constants.
//!
//! A [`ModelSpec`] is only ever constructed through validation, so every instance
//! satisfies the unit, symmetry, grading and nondegeneracy invariants listed on
//! [`ModelSpec::from_file`].

mod builtin;
mod class;
mod file;

use std::collections::{BTreeMap, BTreeSet};

pub use builtin::{builtin_model, builtin_names};
pub use class::{CohClass, JsonScalar};
pub use file::{load_model, BasisElement, CupEntry, ModelFile, QuantumEntry};

use crate::algebra::{Coefficient, Matrix, MultiDegree, Rational, Scalar};

/// Reasons a model document is rejected. Each names the offending indices.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("pairing not symmetric at ({i}, {j})")]
    PairingNotSymmetric { i: usize, j: usize },
    #[error("pairing singular")]
    PairingSingular,
    #[error("pairing violates grading at ({i}, {j}): |b_i| + |b_j| != 2n")]
    PairingGrading { i: usize, j: usize },
    #[error("identity violation at (i={i}, j={j}, D={degree:?}): b_0 must act as the unit")]
    Identity { i: usize, j: usize, degree: Vec<u32> },
    #[error("grading violation at (i={i}, j={j}, k={k}, D={degree:?})")]
    Grading { i: usize, j: usize, k: usize, degree: Vec<u32> },
    #[error("q^0 part of b_{i}∘b_{j} differs from the cup product at component {k}")]
    ClassicalLimit { i: usize, j: usize, k: usize },
    #[error("not commutative at (i={i}, j={j}, k={k}, D={degree:?})")]
    NotCommutative { i: usize, j: usize, k: usize, degree: Vec<u32> },
    #[error("duplicate structure constant at (i={i}, j={j}, k={k}, D={degree:?})")]
    Duplicate { i: usize, j: usize, k: usize, degree: Vec<u32> },
    #[error("pairing is not invariant under the product at (i={i}, j={j}, k={k}, D={degree:?})")]
    NotFrobenius { i: usize, j: usize, k: usize, degree: Vec<u32> },
}

/// One quantum structure constant: `c · q^degree · b_k` inside `b_i ∘ b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumTerm {
    pub k: usize,
    pub degree: MultiDegree,
    pub c: Rational,
}

/// A validated ring model. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    name: String,
    dim: u32,
    rank: usize,
    basis: Vec<BasisElement>,
    pairing: Vec<Vec<i64>>,
    chern: Vec<i64>,
    aliases: BTreeMap<String, String>,
    /// `cup[i][j]` lists `(k, c_ij^k)` for nonzero constants, both orders stored.
    cup: Vec<Vec<Vec<(usize, Rational)>>>,
    /// `quantum[i][j]` lists every term of `b_i ∘ b_j`, both orders stored.
    quantum: Vec<Vec<Vec<QuantumTerm>>>,
    dual: Vec<CohClass<Rational>>,
}

impl ModelSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Complex dimension `n`.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of degree-2 generators `b_1, ..., b_r`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `s + 1` of the basis.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    /// Real cohomological degree `|b_i|`.
    pub fn degree(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    /// Real degree of the dual class `a_i`.
    pub fn dual_degree(&self, i: usize) -> u32 {
        2 * self.dim - self.basis[i].degree
    }

    /// `⟨c_1 TM, A_i⟩` for `i = 1..r` (zero-based here).
    pub fn chern(&self) -> &[i64] {
        &self.chern
    }

    /// `deg q_i = 2⟨c_1 TM, A_i⟩`.
    pub fn q_degree(&self, i: usize) -> i64 {
        2 * self.chern[i]
    }

    /// `⟨c_1 TM, D⟩`.
    pub fn c1_pairing(&self, d: &MultiDegree) -> i64 {
        d.as_slice().iter().zip(&self.chern).map(|(a, c)| *a as i64 * c).sum()
    }

    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    /// Display name of `q_{i+1}`.
    pub fn q_name(&self, i: usize) -> String {
        let key = format!("q{}", i + 1);
        self.aliases.get(&key).cloned().unwrap_or(key)
    }

    pub fn pairing(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn pairing_matrix(&self) -> Matrix<Rational> {
        Matrix::from_rows(
            self.pairing.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
    }

    /// Intersection form `(x, y)`.
    pub fn pair<S: Scalar>(&self, x: &CohClass<S>, y: &CohClass<S>) -> S {
        let mut acc = S::zero();
        for (i, row) in self.pairing.iter().enumerate() {
            if x.get(i).is_zero() {
                continue;
            }
            for (j, g) in row.iter().enumerate() {
                if *g == 0 || y.get(j).is_zero() {
                    continue;
                }
                let t = x.get(i).mul_ref(y.get(j)).scale(&Rational::from_integer((*g).into()));
                acc.add_assign_ref(&t);
            }
        }
        acc
    }

    /// Dual basis `a_0, ..., a_s` with `(a_i, b_j) = δ_ij`.
    pub fn dual_basis(&self) -> &[CohClass<Rational>] {
        &self.dual
    }

    pub fn basis_class<S: Scalar>(&self, i: usize) -> CohClass<S> {
        CohClass::basis(self.len(), i)
    }

    pub fn one<S: Scalar>(&self) -> CohClass<S> {
        self.basis_class(0)
    }

    /// Classical cup product, extended bilinearly.
    pub fn cup<S: Scalar>(&self, x: &CohClass<S>, y: &CohClass<S>) -> CohClass<S> {
        let n = self.len();
        let mut out = CohClass::<S>::zero(n);
        for i in 0..n {
            let xi = x.get(i);
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                let yj = y.get(j);
                if yj.is_zero() {
                    continue;
                }
                let p = xi.mul_ref(yj);
                for (k, c) in &self.cup[i][j] {
                    let mut v = out.get(*k).clone();
                    v.add_assign_ref(&p.scale(c));
                    out.set(*k, v);
                }
            }
        }
        out
    }

    /// Cup constants `c_ij^k` of `b_i ∪ b_j`.
    pub fn cup_constants(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.cup[i][j]
    }

    /// Every term of `b_i ∘ b_j`, including the classical `D = 0` part.
    pub fn quantum_constants(&self, i: usize, j: usize) -> &[QuantumTerm] {
        &self.quantum[i][j]
    }

    /// Largest total degree occurring in any structure constant.
    pub fn max_quantum_degree(&self) -> u32 {
        self.quantum.iter().flatten().flatten().map(|t| t.degree.total()).max().unwrap_or(0)
    }

    /// Validates a model document.
    ///
    /// Checks, in order: shapes and index ranges; `b_0` of degree 0 and `b_1..b_r` of
    /// degree 2; pairing symmetric, graded and nondegenerate; cup and quantum constants
    /// commutative, graded (with `deg q_i = 2⟨c_1, A_i⟩`) and unital; the `q^0` part of
    /// `∘` equal to `∪`; and `(x ∪ y, z) = (x, y ∪ z)`.
    pub fn from_file(file: ModelFile) -> Result<Self, ModelError> {
        let n = file.basis.len();
        let r = file.rank;
        if n == 0 {
            return Err(ModelError::Shape("empty basis".into()));
        }
        if r == 0 || r >= n {
            return Err(ModelError::Shape(format!("rank {r} incompatible with basis of size {n}")));
        }
        if file.chern.len() != r {
            return Err(ModelError::Shape(format!("chern vector has length {}, expected {r}", file.chern.len())));
        }
        if file.pairing.len() != n || file.pairing.iter().any(|row| row.len() != n) {
            return Err(ModelError::Shape(format!("pairing must be {n}x{n}")));
        }
        for (i, b) in file.basis.iter().enumerate() {
            if b.degree % 2 != 0 || b.degree > 2 * file.dim {
                return Err(ModelError::Shape(format!("basis element {i} has invalid degree {}", b.degree)));
            }
        }
        if file.basis[0].degree != 0 {
            return Err(ModelError::Shape("b_0 must have degree 0".into()));
        }
        if let Some(i) = (1..=r).find(|&i| file.basis[i].degree != 2) {
            return Err(ModelError::Shape(format!("generator b_{i} must have degree 2")));
        }
        if let Some(i) = (1..n).find(|&i| file.basis[i].degree == 0) {
            return Err(ModelError::Shape(format!("b_{i} has degree 0; only b_0 may")));
        }
        for key in file.aliases.keys() {
            let ok = key.strip_prefix('q').and_then(|s| s.parse::<usize>().ok()).is_some_and(|i| (1..=r).contains(&i));
            if !ok {
                return Err(ModelError::Schema(format!("alias key {key:?} is not one of q1..q{r}")));
            }
        }
        let deg = |i: usize| file.basis[i].degree as i64;

        // pairing
        for i in 0..n {
            for j in 0..n {
                if file.pairing[i][j] != file.pairing[j][i] {
                    return Err(ModelError::PairingNotSymmetric { i, j });
                }
                if file.pairing[i][j] != 0 && deg(i) + deg(j) != 2 * file.dim as i64 {
                    return Err(ModelError::PairingGrading { i, j });
                }
            }
        }
        let g = Matrix::from_rows(
            file.pairing.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        );
        let ginv = g.inverse().ok_or(ModelError::PairingSingular)?;

        // cup constants
        let zero_d = vec![0u32; r];
        let mut cup_map: BTreeMap<Key, Rational> = BTreeMap::new();
        let mut given = BTreeSet::new();
        for e in &file.cup {
            check_index(n, e.i, e.j, e.k)?;
            let c = Rational::from_integer(e.c.into());
            insert_symmetric(&mut cup_map, &mut given, (e.i, e.j, e.k, zero_d.clone()), c)?;
        }
        cup_map.retain(|_, c| !c.is_zero());
        for (i, j, k, _) in cup_map.keys() {
            if deg(*i) + deg(*j) != deg(*k) {
                return Err(ModelError::Grading { i: *i, j: *j, k: *k, degree: zero_d.clone() });
            }
        }
        for j in 0..n {
            for k in 0..n {
                let c = cup_map.get(&(0, j, k, zero_d.clone())).cloned().unwrap_or_else(Rational::zero);
                let want = if j == k { Rational::one() } else { Rational::zero() };
                if c != want {
                    return Err(ModelError::Identity { i: 0, j, degree: zero_d.clone() });
                }
            }
        }

        // quantum constants
        let mut q_map: BTreeMap<Key, Rational> = BTreeMap::new();
        let mut given = BTreeSet::new();
        for e in &file.quantum {
            check_index(n, e.i, e.j, e.k)?;
            if e.degree.len() != r {
                return Err(ModelError::Shape(format!(
                    "quantum entry ({}, {}, {}) has degree of length {}, expected {r}",
                    e.i,
                    e.j,
                    e.k,
                    e.degree.len()
                )));
            }
            insert_symmetric(&mut q_map, &mut given, (e.i, e.j, e.k, e.degree.clone()), e.c.clone())?;
        }
        q_map.retain(|_, c| !c.is_zero());
        for (i, j, k, d) in q_map.keys() {
            let qdeg: i64 = d.iter().zip(&file.chern).map(|(a, c)| 2 * *a as i64 * c).sum();
            if deg(*i) + deg(*j) != deg(*k) + qdeg {
                return Err(ModelError::Grading { i: *i, j: *j, k: *k, degree: d.clone() });
            }
            if *i == 0 && (d.iter().any(|&x| x != 0) || j != k) {
                return Err(ModelError::Identity { i: 0, j: *j, degree: d.clone() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let key = (i, j, k, zero_d.clone());
                    let qc = q_map.get(&key).cloned().unwrap_or_else(Rational::zero);
                    let cc = cup_map.get(&key).cloned().unwrap_or_else(Rational::zero);
                    if qc != cc {
                        return Err(ModelError::ClassicalLimit { i, j, k });
                    }
                }
            }
        }

        let mut cup = vec![vec![Vec::new(); n]; n];
        for ((i, j, k, _), c) in cup_map {
            cup[i][j].push((k, c));
        }
        let mut quantum = vec![vec![Vec::new(); n]; n];
        for ((i, j, k, d), c) in q_map {
            quantum[i][j].push(QuantumTerm { k, degree: MultiDegree::new(d), c });
        }

        let dual = (0..n).map(|i| CohClass::from_coeffs(ginv.row(i).to_vec())).collect();

        let model = ModelSpec {
            name: file.name,
            dim: file.dim,
            rank: r,
            basis: file.basis,
            pairing: file.pairing,
            chern: file.chern,
            aliases: file.aliases,
            cup,
            quantum,
            dual,
        };

        // Frobenius at every q-degree: (b_i∘b_j, b_k)_D = (b_i, b_j∘b_k)_D
        let product_at = |i: usize, j: usize, d: &MultiDegree| -> CohClass<Rational> {
            let mut c = CohClass::zero(n);
            for t in model.quantum_constants(i, j).iter().filter(|t| &t.degree == d) {
                c.add_at(t.k, &t.c);
            }
            c
        };
        let mut degrees: BTreeSet<MultiDegree> = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                degrees.extend(model.quantum_constants(i, j).iter().map(|t| t.degree.clone()));
            }
        }
        for d in &degrees {
            for i in 0..n {
                for j in 0..n {
                    let bij = product_at(i, j, d);
                    for k in 0..n {
                        let lhs = model.pair(&bij, &model.basis_class(k));
                        let rhs = model.pair(&model.basis_class(i), &product_at(j, k, d));
                        if lhs != rhs {
                            return Err(ModelError::NotFrobenius { i, j, k, degree: d.as_slice().to_vec() });
                        }
                    }
                }
            }
        }
        Ok(model)
    }

    /// The document form, listing each unordered pair once (`i <= j`).
    pub fn to_file(&self) -> ModelFile {
        let n = self.len();
        let mut cup = Vec::new();
        let mut quantum = Vec::new();
        for i in 0..n {
            for j in i..n {
                for (k, c) in &self.cup[i][j] {
                    cup.push(CupEntry { i, j, k: *k, c: rational_to_i64(c) });
                }
                for t in &self.quantum[i][j] {
                    quantum.push(QuantumEntry { i, j, k: t.k, degree: t.degree.as_slice().to_vec(), c: t.c.clone() });
                }
            }
        }
        ModelFile {
            name: self.name.clone(),
            dim: self.dim,
            rank: self.rank,
            basis: self.basis.clone(),
            pairing: self.pairing.clone(),
            cup,
            quantum,
            chern: self.chern.clone(),
            aliases: self.aliases.clone(),
        }
    }
}

fn rational_to_i64(c: &Rational) -> i64 {
    assert!(c.is_integer(), "cup constants are integral");
    i64::try_from(c.to_integer()).expect("cup constant fits in i64")
}

fn check_index(n: usize, i: usize, j: usize, k: usize) -> Result<(), ModelError> {
    if i >= n || j >= n || k >= n {
        return Err(ModelError::Shape(format!("index ({i}, {j}, {k}) out of range for basis of size {n}")));
    }
    Ok(())
}

type Key = (usize, usize, usize, Vec<u32>);

/// Inserts `(i, j, k, D) -> c` and its mirror `(j, i, k, D)`. Listing a pair in both
/// orders is allowed when the values agree; listing the same key twice is not.
fn insert_symmetric(
    map: &mut BTreeMap<Key, Rational>,
    given: &mut BTreeSet<Key>,
    key: Key,
    c: Rational,
) -> Result<(), ModelError> {
    let (i, j, k, degree) = key.clone();
    if !given.insert(key.clone()) {
        return Err(ModelError::Duplicate { i, j, k, degree });
    }
    if let Some(prev) = map.get(&key) {
        if prev != &c {
            return Err(ModelError::NotCommutative { i, j, k, degree });
        }
    }
    map.insert((j, i, k, degree), c.clone());
    map.insert(key, c);
    Ok(())
}
