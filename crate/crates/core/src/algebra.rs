//! Algebras presented by structure constants, their elements and subspaces.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::linalg::{FieldSpec, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("basis label `{0}` is not a valid name")]
    InvalidLabel(String),
    #[error("basis label `{0}` is declared twice")]
    DuplicateLabel(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("element has {found} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate in {found} but the algebra is over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("product {left}*{right} specified twice")]
    DuplicateProduct { left: String, right: String },
    #[error("missing products: {}", format_pairs(.0))]
    MissingProducts(Vec<(String, String)>),
    #[error("an algebra needs at least one basis element")]
    EmptyBasis,
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(x, y)| format!("{x}*{y}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn is_valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A coordinate vector over the basis of some algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Element {
        Element { coords }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Element {
        Element::new(vec![field.zero(); n])
    }

    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Element {
        let mut e = Element::zero(field, n);
        e.coords[i] = field.one();
        e
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element::new(self.coords.iter().map(|x| x * c).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Element) -> Element {
        Element::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| if y.is_zero() { x.clone() } else { x + &(c * y) })
                .collect(),
        )
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|x| !x.is_zero())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element::new(self.coords.iter().zip(&rhs.coords).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim());
        Element::new(self.coords.iter().zip(&rhs.coords).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::new(self.coords.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A subspace of the ambient algebra, stored as the nonzero rows of its
/// reduced row-echelon form so that equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<Element>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|i| Element::basis(field, ambient, i)))
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator,
        I::Item: std::borrow::Borrow<Element>,
    {
        use std::borrow::Borrow;
        let rows: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .map(|v| {
                let v: &Element = v.borrow();
                assert_eq!(v.dim(), ambient, "vector outside the ambient space");
                v.coords().to_vec()
            })
            .collect();
        if rows.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let r = Matrix::from_rows(field, rows).rref();
        Subspace {
            field,
            ambient,
            rows: (0..r.rank).map(|i| Element::new(r.reduced.row(i).to_vec())).collect(),
            pivots: r.pivot_columns,
        }
    }

    /// Subspace spanned by the columns of `m`.
    pub fn column_span(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.rows(), m.columns().into_iter().map(Element::new))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// The canonical basis: reduced row-echelon rows.
    pub fn basis(&self) -> &[Element] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// What is left of `v` after eliminating the pivot coordinates; zero iff `v` lies in the subspace.
    pub fn residue(&self, v: &Element) -> Element {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out.coords()[p].clone();
            if !c.is_zero() {
                out = out.add_scaled(&-c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Element) -> bool {
        self.residue(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.rows.iter().chain(&other.rows))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // Annihilator of `other`: x ∈ other iff w·x = 0 for every annihilator column w.
        let other_rows = Matrix::from_rows(self.field, other.rows.iter().map(|r| r.coords().to_vec()).collect());
        let ann = other_rows.kernel();
        if ann.cols() == 0 {
            return self.clone();
        }
        let mine = self.basis_matrix();
        let coeffs = ann.transpose().mul(&mine).kernel();
        Subspace::column_span(&mine.mul(&coeffs))
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        let cols: Vec<&[Scalar]> = self.rows.iter().map(Element::coords).collect();
        Matrix::from_columns(self.field, self.ambient, &cols)
    }
}

/// A finite-dimensional algebra given by a total table of basis products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    labels: Vec<String>,
    table: Vec<Element>,
    sparse: Vec<Vec<(usize, Scalar)>>,
}

impl Algebra {
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    pub fn new(field: FieldSpec, labels: Vec<String>, table: Vec<Vec<Element>>) -> Result<Algebra, AlgebraError> {
        check_labels(&labels)?;
        let n = labels.len();
        if table.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: table.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for e in row {
                check_element(field, n, &e)?;
                flat.push(e);
            }
        }
        let sparse = flat
            .iter()
            .map(|e| {
                e.coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        Ok(Algebra {
            field,
            labels,
            table: flat,
            sparse,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    /// The basis element with the given label.
    pub fn named(&self, name: &str) -> Result<Element, AlgebraError> {
        Ok(self.basis_element(self.index_of(name)?))
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    /// `Σ c·name` over the given terms.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<Element, AlgebraError> {
        let mut e = self.zero();
        for (name, c) in terms {
            if c.field() != self.field {
                return Err(AlgebraError::FieldMismatch {
                    expected: self.field,
                    found: c.field(),
                });
            }
            let i = self.index_of(name)?;
            e.coords[i] += c;
        }
        Ok(e)
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim() + j]
    }

    pub fn check(&self, x: &Element) -> Result<(), AlgebraError> {
        check_element(self.field, self.dim(), x)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Bilinear extension of the table. Panics on dimension mismatch.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim();
        assert!(x.dim() == n && y.dim() == n, "element dimension mismatch");
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in &self.sparse[i * n + j] {
                    out[*k] += &(&c * t);
                }
            }
        }
        Element::new(out)
    }

    /// Matrix of `z ↦ y·z`.
    pub fn left_mult_matrix(&self, y: &Element) -> Matrix {
        self.mult_matrix(|e| self.mul(y, e))
    }

    /// Matrix of `z ↦ z·y`.
    pub fn right_mult_matrix(&self, y: &Element) -> Matrix {
        self.mult_matrix(|e| self.mul(e, y))
    }

    fn mult_matrix(&self, f: impl Fn(&Element) -> Element) -> Matrix {
        let n = self.dim();
        let cols: Vec<Element> = (0..n).map(|i| f(&self.basis_element(i))).collect();
        let refs: Vec<&[Scalar]> = cols.iter().map(Element::coords).collect();
        Matrix::from_columns(self.field, n, &refs)
    }

    pub fn is_idempotent(&self, x: &Element) -> bool {
        self.mul(x, x) == *x
    }

    /// Span of all products `u·v` with `u` in `left` and `v` in `right`.
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut prods = Vec::with_capacity(left.dim() * right.dim());
        for u in left.basis() {
            for v in right.basis() {
                prods.push(self.mul(u, v));
            }
        }
        Subspace::span(self.field, self.dim(), prods)
    }

    /// The subalgebra generated by `gens`.
    pub fn subalgebra_closure(&self, gens: &[Element]) -> Subspace {
        let mut w = Subspace::span(self.field, self.dim(), gens);
        loop {
            let next = w.sum(&self.product_space(&w, &w));
            if next.dim() == w.dim() {
                return w;
            }
            w = next;
        }
    }

    pub fn is_subalgebra(&self, w: &Subspace) -> bool {
        self.product_space(w, w).is_subspace_of(w)
    }

    pub fn is_ideal(&self, w: &Subspace) -> bool {
        let all = Subspace::full(self.field, self.dim());
        self.product_space(&all, w).is_subspace_of(w) && self.product_space(w, &all).is_subspace_of(w)
    }

    pub fn is_square_zero(&self, w: &Subspace) -> bool {
        self.product_space(w, w).is_zero()
    }

    pub fn is_annihilating(&self, w: &Subspace) -> bool {
        let all = Subspace::full(self.field, self.dim());
        self.product_space(&all, w).is_zero() && self.product_space(w, &all).is_zero()
    }

    /// The annihilator `{z : zA = Az = 0}`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim();
        let mut stacked = Matrix::zeros(self.field, 0, n);
        for i in 0..n {
            let e = self.basis_element(i);
            stacked = stacked
                .vstack(&self.left_mult_matrix(&e))
                .vstack(&self.right_mult_matrix(&e));
        }
        // Column z of the kernel satisfies e·z = z·e = 0 for every basis e.
        Subspace::column_span(&stacked.kernel())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i)))
    }

    /// Renders `Σ c·label` using the presentation term syntax, or `0`.
    pub fn format_element(&self, x: &Element) -> String {
        let terms: Vec<String> = x
            .coords()
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}*{l}"))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn check_labels(labels: &[String]) -> Result<(), AlgebraError> {
    if labels.is_empty() {
        return Err(AlgebraError::EmptyBasis);
    }
    let mut seen = HashMap::new();
    for l in labels {
        if !is_valid_label(l) {
            return Err(AlgebraError::InvalidLabel(l.clone()));
        }
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(AlgebraError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn check_element(field: FieldSpec, n: usize, e: &Element) -> Result<(), AlgebraError> {
    if e.dim() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: e.dim(),
        });
    }
    if let Some(c) = e.coords().iter().find(|c| c.field() != field) {
        return Err(AlgebraError::FieldMismatch {
            expected: field,
            found: c.field(),
        });
    }
    Ok(())
}

/// Collects basis products one at a time and refuses to build until the table is total.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    field: FieldSpec,
    labels: Vec<String>,
    table: Vec<Option<Element>>,
}

impl AlgebraBuilder {
    pub fn new<S: Into<String>>(
        field: FieldSpec,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<AlgebraBuilder, AlgebraError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        Ok(AlgebraBuilder {
            field,
            labels,
            table: vec![None; n * n],
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
    }

    pub fn is_set(&self, i: usize, j: usize) -> bool {
        self.table[i * self.dim() + j].is_some()
    }

    pub fn set(&mut self, i: usize, j: usize, product: Element) -> Result<(), AlgebraError> {
        check_element(self.field, self.dim(), &product)?;
        let n = self.dim();
        let slot = &mut self.table[i * n + j];
        if slot.is_some() {
            return Err(AlgebraError::DuplicateProduct {
                left: self.labels[i].clone(),
                right: self.labels[j].clone(),
            });
        }
        *slot = Some(product);
        Ok(())
    }

    /// Sets `x*y = Σ c·name`.
    pub fn product(&mut self, x: &str, y: &str, terms: &[(&str, Scalar)]) -> Result<(), AlgebraError> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        let mut e = Element::zero(self.field, self.dim());
        for (name, c) in terms {
            let k = self.index_of(name)?;
            e.coords[k] += c;
        }
        self.set(i, j, e)
    }

    /// Sets both `x*y` and `y*x`.
    pub fn symmetric(&mut self, x: &str, y: &str, terms: &[(&str, Scalar)]) -> Result<(), AlgebraError> {
        self.product(x, y, terms)?;
        if x != y {
            self.product(y, x, terms)?;
        }
        Ok(())
    }

    /// Sets every still-unspecified product to zero.
    pub fn fill_zero(&mut self) {
        let z = Element::zero(self.field, self.dim());
        for slot in &mut self.table {
            if slot.is_none() {
                *slot = Some(z.clone());
            }
        }
    }

    /// Copies `x*y` into each unset `y*x`.
    pub fn fill_symmetric(&mut self) {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.table[i * n + j].is_none() {
                    if let Some(p) = self.table[j * n + i].clone() {
                        self.table[i * n + j] = Some(p);
                    }
                }
            }
        }
    }

    pub fn missing(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n * n)
            .filter(|k| self.table[*k].is_none())
            .map(|k| (k / n, k % n))
            .collect()
    }

    pub fn build(self) -> Result<Algebra, AlgebraError> {
        let missing = self.missing();
        if !missing.is_empty() {
            return Err(AlgebraError::MissingProducts(
                missing
                    .into_iter()
                    .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
                    .collect(),
            ));
        }
        let n = self.dim();
        let mut rows = Vec::with_capacity(n);
        let mut it = self.table.into_iter().map(|e| e.expect("table is total"));
        for _ in 0..n {
            rows.push(it.by_ref().take(n).collect());
        }
        Algebra::new(self.field, self.labels, rows)
    }
}
