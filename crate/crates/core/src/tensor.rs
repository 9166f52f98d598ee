//! Labeled finite-dimensional spaces, their tensor products, and dense linear
//! maps over [`ScalarExpr`].
//!
//! Matrices are stored ROW-PER-INPUT: entry `(i, j)` is the coefficient of
//! codomain basis vector `j` in the image of domain basis vector `i`. Under this
//! convention `matrix(g ∘ f) = matrix(f) · matrix(g)`. Product bases are ordered
//! lexicographically with the first factor most significant, so for `A = ⟨1, x⟩`
//! the basis of `A⊗A` is `1⊗1, 1⊗x, x⊗1, x⊗x`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::ScalarExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("invalid space `{label}`: {reason}")]
    InvalidSpace { label: String, reason: String },
    #[error("space mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("expected a map on a {expected}-fold tensor product, found {found} factors")]
    Arity { expected: usize, found: usize },
    #[error("matrix shape {rows}x{cols} does not match the spaces ({expected_rows}x{expected_cols})")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("map is not an endomorphism")]
    NotSquare,
    #[error("map is singular over the scalar field")]
    Singular,
    #[error("invalid leg permutation {0:?}")]
    BadPermutation(Vec<usize>),
}

/// A vector space with a labeled, ordered basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Space {
    label: String,
    basis: Vec<String>,
}

pub const GROUND_LABEL: &str = "k";

impl Space {
    pub fn new<S: Into<String>>(label: impl Into<String>, basis: Vec<S>) -> Result<Space, TensorError> {
        let label = label.into();
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        if basis.is_empty() {
            return Err(TensorError::InvalidSpace {
                label,
                reason: "basis must be nonempty".into(),
            });
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(TensorError::InvalidSpace {
                    label,
                    reason: format!("duplicate basis label `{b}`"),
                });
            }
        }
        Ok(Space { label, basis })
    }

    /// The ground field as a one-dimensional space.
    pub fn ground() -> Space {
        Space {
            label: GROUND_LABEL.into(),
            basis: vec!["1".into()],
        }
    }

    pub fn is_ground(&self) -> bool {
        self.label == GROUND_LABEL && self.basis.len() == 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Space of the dual basis. Toggles a trailing `*`, so dualizing twice is the identity.
    pub fn dual(&self) -> Space {
        if self.is_ground() {
            return self.clone();
        }
        let toggle = |s: &str| match s.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{s}*"),
        };
        Space {
            label: toggle(&self.label),
            basis: self.basis.iter().map(|b| toggle(b)).collect(),
        }
    }

    pub fn position(&self, basis_label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == basis_label)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// An ordered tensor product of spaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProductSpace {
    factors: Vec<Space>,
}

impl ProductSpace {
    /// An empty factor list is read as the ground field.
    pub fn new(factors: Vec<Space>) -> ProductSpace {
        if factors.is_empty() {
            return ProductSpace {
                factors: vec![Space::ground()],
            };
        }
        ProductSpace { factors }
    }

    pub fn factors(&self) -> &[Space] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Space::dim).product()
    }

    pub fn tensor(&self, other: &ProductSpace) -> ProductSpace {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ProductSpace { factors }
    }

    /// Linear index of a tuple of factor indices.
    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.factors.len());
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, s)| acc * s.dim() + i)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, s) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % s.dim();
            index /= s.dim();
        }
        out
    }

    /// Basis label such as `x⊗1⊗e`.
    pub fn basis_label(&self, index: usize) -> String {
        self.tuple(index)
            .iter()
            .zip(&self.factors)
            .map(|(&i, s)| s.basis[i].as_str())
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Drops ground-field factors; a product of only ground factors becomes `k`.
    pub fn strip_ground(&self) -> ProductSpace {
        ProductSpace::new(
            self.factors
                .iter()
                .filter(|s| !s.is_ground())
                .cloned()
                .collect(),
        )
    }

    pub fn dual(&self) -> ProductSpace {
        ProductSpace::new(self.factors.iter().map(Space::dual).collect())
    }
}

impl From<Space> for ProductSpace {
    fn from(s: Space) -> Self {
        ProductSpace { factors: vec![s] }
    }
}

impl From<&Space> for ProductSpace {
    fn from(s: &Space) -> Self {
        ProductSpace {
            factors: vec![s.clone()],
        }
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.factors.iter().map(|s| s.label()).collect();
        f.write_str(&labels.join("⊗"))
    }
}

/// A linear map between product spaces, stored as a dense row-per-input matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinMap {
    domain: ProductSpace,
    codomain: ProductSpace,
    entries: Vec<ScalarExpr>,
}

// Row count above which products are computed in parallel.
const PAR_ROWS: usize = 64;

impl LinMap {
    pub fn new(
        domain: ProductSpace,
        codomain: ProductSpace,
        entries: Vec<ScalarExpr>,
    ) -> Result<LinMap, TensorError> {
        let (r, c) = (domain.dim(), codomain.dim());
        if entries.len() != r * c {
            return Err(TensorError::Shape {
                rows: entries.len() / c.max(1),
                cols: c,
                expected_rows: r,
                expected_cols: c,
            });
        }
        Ok(LinMap {
            domain,
            codomain,
            entries,
        })
    }

    pub fn from_rows(
        domain: ProductSpace,
        codomain: ProductSpace,
        rows: Vec<Vec<ScalarExpr>>,
    ) -> Result<LinMap, TensorError> {
        let (r, c) = (domain.dim(), codomain.dim());
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(TensorError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                expected_rows: r,
                expected_cols: c,
            });
        }
        LinMap::new(domain, codomain, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        domain: ProductSpace,
        codomain: ProductSpace,
        mut f: impl FnMut(usize, usize) -> ScalarExpr,
    ) -> LinMap {
        let (r, c) = (domain.dim(), codomain.dim());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(f(i, j));
            }
        }
        LinMap {
            domain,
            codomain,
            entries,
        }
    }

    pub fn zero(domain: ProductSpace, codomain: ProductSpace) -> LinMap {
        let n = domain.dim() * codomain.dim();
        LinMap {
            domain,
            codomain,
            entries: vec![ScalarExpr::zero(); n],
        }
    }

    pub fn identity(space: ProductSpace) -> LinMap {
        let n = space.dim();
        let mut m = LinMap::zero(space.clone(), space);
        for i in 0..n {
            m.entries[i * n + i] = ScalarExpr::one();
        }
        m
    }

    /// The map `v_1⊗…⊗v_n ↦ v_{perm[0]}⊗…⊗v_{perm[n-1]}`.
    pub fn permutation(factors: &[Space], perm: &[usize]) -> Result<LinMap, TensorError> {
        let n = factors.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(TensorError::BadPermutation(perm.to_vec()));
        }
        let domain = ProductSpace::new(factors.to_vec());
        let codomain = ProductSpace::new(perm.iter().map(|&p| factors[p].clone()).collect());
        let mut m = LinMap::zero(domain.clone(), codomain.clone());
        let cols = codomain.dim();
        for i in 0..domain.dim() {
            let t = domain.tuple(i);
            let image: Vec<usize> = perm.iter().map(|&p| t[p]).collect();
            m.entries[i * cols + codomain.index(&image)] = ScalarExpr::one();
        }
        Ok(m)
    }

    /// The flip `τ_{V,W}: v⊗w ↦ w⊗v`.
    pub fn flip(v: &Space, w: &Space) -> LinMap {
        LinMap::permutation(&[v.clone(), w.clone()], &[1, 0]).expect("valid permutation")
    }

    pub fn domain(&self) -> &ProductSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &ProductSpace {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.domain.dim()
    }

    pub fn cols(&self) -> usize {
        self.codomain.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> &ScalarExpr {
        &self.entries[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ScalarExpr) {
        let c = self.cols();
        self.entries[row * c + col] = value;
    }

    pub fn row(&self, row: usize) -> &[ScalarExpr] {
        let c = self.cols();
        &self.entries[row * c..(row + 1) * c]
    }

    pub fn entries(&self) -> &[ScalarExpr] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ScalarExpr::is_zero)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &ScalarExpr)> {
        let c = self.cols();
        self.entries
            .iter()
            .enumerate()
            .find(|(_, e)| !e.is_zero())
            .map(|(k, e)| (k / c, k % c, e))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Image coordinates of a coordinate row vector: `v · M`.
    pub fn apply(&self, v: &[ScalarExpr]) -> Vec<ScalarExpr> {
        assert_eq!(v.len(), self.rows(), "vector length must match the domain");
        let mut out = vec![ScalarExpr::zero(); self.cols()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                if !m.is_zero() {
                    *o = &*o + &(vi * m);
                }
            }
        }
        out
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &LinMap) -> Result<LinMap, TensorError> {
        if self.codomain != g.domain {
            return Err(TensorError::Mismatch {
                expected: g.domain.to_string(),
                found: self.codomain.to_string(),
            });
        }
        let entries = matmul(&self.entries, self.rows(), self.cols(), &g.entries, g.cols());
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            entries,
        })
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &LinMap) -> Result<LinMap, TensorError> {
        f.then(self)
    }

    /// Kronecker product `self ⊗ g` under the lexicographic product basis.
    pub fn tensor(&self, g: &LinMap) -> LinMap {
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), g.rows(), g.cols());
        let cols = c1 * c2;
        let mut entries = vec![ScalarExpr::zero(); r1 * r2 * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = g.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        entries[(i1 * r2 + i2) * cols + j1 * c2 + j2] = a * b;
                    }
                }
            }
        }
        LinMap {
            domain: self.domain.tensor(&g.domain),
            codomain: self.codomain.tensor(&g.codomain),
            entries,
        }
    }

    fn expect_arity(&self, n: usize) -> Result<(), TensorError> {
        for ps in [&self.domain, &self.codomain] {
            if ps.arity() != n {
                return Err(TensorError::Arity {
                    expected: n,
                    found: ps.arity(),
                });
            }
        }
        Ok(())
    }

    /// `M₁₂ = M ⊗ id_third`.
    pub fn lift12(&self, third: &Space) -> Result<LinMap, TensorError> {
        self.expect_arity(2)?;
        Ok(self.tensor(&LinMap::identity(third.into())))
    }

    /// `M₂₃ = id_first ⊗ M`.
    pub fn lift23(&self, first: &Space) -> Result<LinMap, TensorError> {
        self.expect_arity(2)?;
        Ok(LinMap::identity(first.into()).tensor(self))
    }

    /// `M₁₃`: acts on legs 1 and 3 of `V⊗middle⊗V″`, identity on the middle leg.
    ///
    /// Equal to `(I⊗τ_{V″,middle})∘(M⊗I_middle)∘(I⊗τ_{middle,V″})`, but built
    /// directly by index arithmetic.
    pub fn lift13(&self, middle: &Space) -> Result<LinMap, TensorError> {
        self.expect_arity(2)?;
        let df = self.domain.factors();
        let cf = self.codomain.factors();
        let domain = ProductSpace::new(vec![df[0].clone(), middle.clone(), df[1].clone()]);
        let codomain = ProductSpace::new(vec![cf[0].clone(), middle.clone(), cf[1].clone()]);
        let mut out = LinMap::zero(domain.clone(), codomain.clone());
        let cols = codomain.dim();
        for i in 0..self.rows() {
            let [a, c] = self.domain.tuple(i)[..] else { unreachable!() };
            for j in 0..self.cols() {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let [a2, c2] = self.codomain.tuple(j)[..] else { unreachable!() };
                for m in 0..middle.dim() {
                    let row = domain.index(&[a, m, c]);
                    let col = codomain.index(&[a2, m, c2]);
                    out.entries[row * cols + col] = v.clone();
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &LinMap) -> Result<(), TensorError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(TensorError::Mismatch {
                expected: format!("{} -> {}", self.domain, self.codomain),
                found: format!("{} -> {}", other.domain, other.codomain),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &LinMap, f: impl Fn(&ScalarExpr, &ScalarExpr) -> ScalarExpr) -> LinMap {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ScalarExpr) -> LinMap {
        self.map_entries(|e| e * c)
    }

    pub fn map_entries(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> LinMap {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Plain matrix transpose: a map `codomain → domain`.
    pub fn transpose(&self) -> LinMap {
        let (r, c) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                entries.push(self.entries[i * c + j].clone());
            }
        }
        LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries,
        }
    }

    /// The adjoint under the basis-dual pairing: `f*: W* → V*` for `f: V → W`.
    pub fn dual(&self) -> LinMap {
        let mut t = self.transpose();
        t.domain = t.domain.dual();
        t.codomain = t.codomain.dual();
        t
    }

    /// Same matrix, ground-field factors removed from both sides.
    pub fn strip_ground(&self) -> LinMap {
        LinMap {
            domain: self.domain.strip_ground(),
            codomain: self.codomain.strip_ground(),
            entries: self.entries.clone(),
        }
    }

    /// Reinterprets the matrix on other spaces of the same dimensions.
    pub fn with_spaces(&self, domain: ProductSpace, codomain: ProductSpace) -> Result<LinMap, TensorError> {
        if domain.dim() != self.rows() || codomain.dim() != self.cols() {
            return Err(TensorError::Shape {
                rows: self.rows(),
                cols: self.cols(),
                expected_rows: domain.dim(),
                expected_cols: codomain.dim(),
            });
        }
        Ok(LinMap {
            domain,
            codomain,
            entries: self.entries.clone(),
        })
    }

    /// Exact inverse by Gauss-Jordan elimination, pivoting on the first nonzero entry.
    pub fn invert(&self) -> Result<LinMap, TensorError> {
        let n = self.rows();
        if n != self.cols() {
            return Err(TensorError::NotSquare);
        }
        let mut a: Vec<Vec<ScalarExpr>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<ScalarExpr>> = (0..n)
            .map(|i| {
                let mut row = vec![ScalarExpr::zero(); n];
                row[i] = ScalarExpr::one();
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(TensorError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip().expect("pivot is nonzero");
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x = &*x * &p;
                }
            }
            let (pa, pi) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&pa).chain(inv[r].iter_mut().zip(&pi)) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
        }
        Ok(LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries: inv.into_iter().flatten().collect(),
        })
    }
}

fn matmul(a: &[ScalarExpr], rows: usize, inner: usize, b: &[ScalarExpr], cols: usize) -> Vec<ScalarExpr> {
    let b_nz: Vec<Vec<(usize, &ScalarExpr)>> = (0..inner)
        .map(|k| {
            b[k * cols..(k + 1) * cols]
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .collect()
        })
        .collect();
    let row = |i: usize| -> Vec<ScalarExpr> {
        let mut acc: Vec<Vec<ScalarExpr>> = vec![Vec::new(); cols];
        for (k, aik) in a[i * inner..(i + 1) * inner].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for &(j, bkj) in &b_nz[k] {
                acc[j].push(aik * bkj);
            }
        }
        acc.into_iter().map(sum_terms).collect()
    };
    if rows >= PAR_ROWS {
        (0..rows).into_par_iter().flat_map_iter(row).collect()
    } else {
        (0..rows).flat_map(row).collect()
    }
}

/// Sums products, grouping equal denominators first to save gcd work.
fn sum_terms(mut terms: Vec<ScalarExpr>) -> ScalarExpr {
    match terms.len() {
        0 => ScalarExpr::zero(),
        1 => terms.pop().unwrap(),
        _ => {
            if terms.iter().all(ScalarExpr::is_polynomial) {
                let mut num = crate::scalar::MultiPoly::zero();
                for t in &terms {
                    num = &num + t.numer();
                }
                return ScalarExpr::from_poly(num);
            }
            terms.into_iter().sum()
        }
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.domain, self.codomain)?;
        for i in 0..self.rows() {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
