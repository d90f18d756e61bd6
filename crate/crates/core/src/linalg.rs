//! Vectors, matrices, subspaces and exhaustive enumeration over GF(p)^n.
//!
//! Subspaces are always held in reduced row-echelon form, so two subspaces
//! are equal exactly when their stored bases are equal.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

/// Default cap on the number of points or subspaces an enumeration may produce.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Upper bound on enumeration sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::EnumerationTooLarge { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    field: Field,
    coords: Vec<u32>,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl Vector {
    /// Builds a vector, reducing every coordinate mod p.
    pub fn new(field: Field, coords: Vec<u32>) -> Self {
        let p = field.modulus();
        let coords = coords.into_iter().map(|c| c % p).collect();
        Vector { field, coords }
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Self {
        Vector { field, coords: coords.iter().map(|&c| field.reduce(c)).collect() }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Vector { field, coords: vec![0; n] }
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.coords[i] = 1;
        v
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn get(&self, i: usize) -> Fe {
        self.field.elem(self.coords[i] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_len(&self, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
    }

    pub fn scale(&self, a: Fe) -> Vector {
        self.scale_raw(a.value())
    }

    pub fn scale_raw(&self, a: u32) -> Vector {
        let f = self.field;
        Vector { field: f, coords: self.coords.iter().map(|&c| f.mul(c, a)).collect() }
    }

    /// Adds `a * other` in place.
    pub fn axpy(&mut self, a: u32, other: &Vector) {
        self.check_len(other);
        let f = self.field;
        for (x, &y) in self.coords.iter_mut().zip(&other.coords) {
            *x = f.add(*x, f.mul(a, y));
        }
    }

    /// Standard ("Cartesian") dot product.
    pub fn dot(&self, other: &Vector) -> Fe {
        self.check_len(other);
        let f = self.field;
        let s = self.coords.iter().zip(&other.coords).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        f.elem(s as i64)
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> Option<usize> {
        self.coords.iter().position(|&c| c != 0)
    }

    /// Scales so the first nonzero coordinate is 1 (projective representative).
    pub fn normalized(&self) -> Vector {
        match self.pivot() {
            None => self.clone(),
            Some(i) => {
                let inv = self.field.inv(self.coords[i]).expect("pivot is nonzero");
                self.scale_raw(inv)
            }
        }
    }

    pub fn concat(&self, other: &Vector) -> Vector {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Vector { field: self.field, coords }
    }

    pub fn split_at(&self, k: usize) -> (Vector, Vector) {
        let (a, b) = self.coords.split_at(k);
        (Vector { field: self.field, coords: a.to_vec() }, Vector { field: self.field, coords: b.to_vec() })
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.check_len(rhs);
        let f = self.field;
        Vector { field: f, coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| f.add(a, b)).collect() }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.check_len(rhs);
        let f = self.field;
        Vector { field: f, coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| f.sub(a, b)).collect() }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        let f = self.field;
        Vector { field: f, coords: self.coords.iter().map(|&a| f.neg(a)).collect() }
    }
}

/// The space GF(p)^dim, with row-major indexing of its vectors
/// (first coordinate most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    pub field: Field,
    pub dim: usize,
}

impl Ambient {
    pub fn new(field: Field, dim: usize) -> Self {
        Ambient { field, dim }
    }

    /// Number of vectors, p^dim.
    pub fn size(&self) -> u128 {
        (self.field.modulus() as u128).saturating_pow(self.dim as u32)
    }

    /// Number of 1-dimensional subspaces.
    pub fn projective_size(&self) -> u128 {
        gaussian_binomial(self.dim, 1, self.field.modulus())
    }

    pub fn vector_at(&self, mut index: usize) -> Vector {
        let p = self.field.modulus() as usize;
        let mut coords = vec![0u32; self.dim];
        for c in coords.iter_mut().rev() {
            *c = (index % p) as u32;
            index /= p;
        }
        Vector { field: self.field, coords }
    }

    pub fn index_of(&self, v: &Vector) -> usize {
        let p = self.field.modulus() as usize;
        v.coords.iter().fold(0, |acc, &c| acc * p + c as usize)
    }

    /// All vectors in index order. Checks the budget first.
    pub fn vectors(&self, budget: Budget) -> Result<Vec<Vector>> {
        budget.check(self.size())?;
        Ok((0..self.size() as usize).map(|i| self.vector_at(i)).collect())
    }

    /// Canonical representatives (first nonzero coordinate 1) of all
    /// 1-dimensional subspaces, in index order.
    pub fn projective_points(&self, budget: Budget) -> Result<Vec<Vector>> {
        budget.check(self.size())?;
        Ok((1..self.size() as usize).map(|i| self.vector_at(i)).filter(|v| v.coords[v.pivot().unwrap()] == 1).collect())
    }
}

/// Every vector of an ambient space, addressed by its index, with
/// arithmetic carried out on indices. Used by the table-driven checkers.
#[derive(Clone, Debug)]
pub struct Grid {
    ambient: Ambient,
    size: usize,
    digits: Vec<u32>,
}

impl Grid {
    pub fn new(ambient: Ambient, budget: Budget) -> Result<Self> {
        budget.check(ambient.size())?;
        let size = ambient.size() as usize;
        let mut digits = Vec::with_capacity(size * ambient.dim);
        for i in 0..size {
            digits.extend(ambient.vector_at(i).coords);
        }
        Ok(Grid { ambient, size, digits })
    }

    #[inline]
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.ambient.field
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.ambient.dim
    }

    #[inline]
    pub fn coords(&self, i: usize) -> &[u32] {
        let d = self.ambient.dim;
        &self.digits[i * d..(i + 1) * d]
    }

    pub fn vector(&self, i: usize) -> Vector {
        Vector { field: self.ambient.field, coords: self.coords(i).to_vec() }
    }

    #[inline]
    pub fn index(&self, coords: &[u32]) -> usize {
        let p = self.ambient.field.modulus() as usize;
        coords.iter().fold(0, |acc, &c| acc * p + c as usize)
    }

    pub fn index_of(&self, v: &Vector) -> usize {
        self.index(&v.coords)
    }

    #[inline]
    fn combine(&self, i: usize, j: usize, op: impl Fn(u32, u32) -> u32) -> usize {
        let p = self.ambient.field.modulus() as usize;
        self.coords(i).iter().zip(self.coords(j)).fold(0, |acc, (&a, &b)| acc * p + op(a, b) as usize)
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        let f = self.ambient.field;
        self.combine(i, j, |a, b| f.add(a, b))
    }

    #[inline]
    pub fn sub(&self, i: usize, j: usize) -> usize {
        let f = self.ambient.field;
        self.combine(i, j, |a, b| f.sub(a, b))
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.sub(0, i)
    }

    #[inline]
    pub fn scale(&self, a: u32, i: usize) -> usize {
        let f = self.ambient.field;
        let p = f.modulus() as usize;
        self.coords(i).iter().fold(0, |acc, &c| acc * p + f.mul(a, c) as usize)
    }
}

/// A matrix over GF(p), stored row-major. As a linear map it acts by
/// `x -> M x`, so column `j` is the image of the `j`-th standard basis vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Linear maps are matrices acting on column vectors.
pub type LinearMap = Matrix;

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: Field, n: usize, a: Fe) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a.value();
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a `rows x cols` matrix from raw row-major residues.
    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let p = field.modulus();
        Matrix { field, rows, cols, data: data.into_iter().map(|x| x % p).collect() }
    }

    /// Builds the linear map sending `e_j` to `images[j]`.
    pub fn from_images(field: Field, codomain_dim: usize, images: &[Vector]) -> Result<Self> {
        let mut m = Self::zero(field, codomain_dim, images.len());
        for (j, img) in images.iter().enumerate() {
            if img.len() != codomain_dim {
                return Err(Error::DimensionMismatch { expected: codomain_dim, found: img.len() });
            }
            for i in 0..codomain_dim {
                m.data[i * m.cols + j] = img.coords[i];
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain_dim(&self) -> usize {
        self.cols
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.field.modulus();
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector { field: self.field, coords: self.data[i * self.cols..(i + 1) * self.cols].to_vec() }
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector { field: self.field, coords: (0..self.rows).map(|i| self.get(i, j)).collect() }
    }

    pub fn rows_as_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_nested(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        assert_eq!(x.len(), self.cols, "linear map applied to a vector of the wrong length");
        let f = self.field;
        let coords = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(&x.coords).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect();
        Vector { field: f, coords }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, a: Fe) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(x, a.value())).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows_as_vectors();
        rref(&mut rows).len()
    }

    pub fn determinant(&self) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return f.zero();
            };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        f.elem(det as i64)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.determinant().is_zero()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        // Row-reduce [M | I].
        let mut rows: Vec<Vector> = (0..n).map(|i| self.row(i).concat(&Vector::unit(f, n, i))).collect();
        let pivots = rref(&mut rows);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Matrix::zero(f, n, n);
        for (i, r) in rows.iter().enumerate() {
            for j in 0..n {
                out.data[i * n + j] = r.coords[n + j];
            }
        }
        Some(out)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = Matrix::zero(a.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                out.data[i * cols + j] = x;
            }
        }
        out
    }

    /// Sub-matrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }
}

/// In-place reduced row echelon form. Zero rows are dropped; returns the
/// pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let f = first.field;
    let ncols = first.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].coords[c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r].coords[c]).expect("nonzero pivot");
        rows[r] = rows[r].scale_raw(inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let factor = row.coords[c];
            if i != r && factor != 0 {
                row.axpy(f.neg(factor), &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A vector subspace held by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: Ambient,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: Ambient) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: Ambient) -> Self {
        let basis = (0..ambient.dim).map(|i| Vector::unit(ambient.field, ambient.dim, i)).collect();
        Subspace { ambient, basis }
    }

    /// Span of the generators, in canonical form.
    pub fn span(ambient: Ambient, generators: &[Vector]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient.dim {
                return Err(Error::DimensionMismatch { expected: ambient.dim, found: g.len() });
            }
            if g.field != ambient.field {
                return Err(Error::InvalidArgument("generator over a different field".into()));
            }
        }
        let mut rows = generators.to_vec();
        rref(&mut rows);
        Ok(Subspace { ambient, basis: rows })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.pivot().expect("basis rows are nonzero")).collect()
    }

    /// Number of vectors, p^dim.
    pub fn size(&self) -> u128 {
        (self.ambient.field.modulus() as u128).pow(self.dim() as u32)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let f = self.ambient.field;
        let mut r = v.clone();
        for b in &self.basis {
            let c = b.pivot().unwrap();
            let x = r.coords[c];
            if x != 0 {
                r.axpy(f.neg(x), b);
            }
        }
        r.is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &gens).expect("same ambient")
    }

    /// `{x : b . x = 0 for every basis vector b}`.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = Matrix::from_images(self.ambient.field, self.ambient.dim, &self.basis)
            .expect("basis lengths match")
            .transpose();
        kernel(&m)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Every vector of the subspace, in the order of coefficient tuples.
    pub fn elements(&self) -> Vec<Vector> {
        let k = self.dim();
        let coeffs = Ambient::new(self.ambient.field, k);
        (0..self.size() as usize)
            .map(|i| {
                let c = coeffs.vector_at(i);
                let mut v = Vector::zero(self.ambient.field, self.ambient.dim);
                for (a, b) in c.coords.iter().zip(&self.basis) {
                    if *a != 0 {
                        v.axpy(*a, b);
                    }
                }
                v
            })
            .collect()
    }

    /// Canonical projective representatives of the 1-subspaces inside.
    pub fn projective_points(&self) -> Vec<Vector> {
        let mut pts: Vec<Vector> =
            self.elements().into_iter().filter(|v| !v.is_zero()).map(|v| v.normalized()).collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

/// Canonical basis of the span of `generators`.
pub fn canonical_basis(ambient: Ambient, generators: &[Vector]) -> Result<Subspace> {
    Subspace::span(ambient, generators)
}

pub fn kernel(f: &Matrix) -> Subspace {
    let field = f.field;
    let n = f.cols;
    let ambient = Ambient::new(field, n);
    let mut rows = f.rows_as_vectors();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let gens: Vec<Vector> = free
        .iter()
        .map(|&fc| {
            let mut v = Vector::unit(field, n, fc);
            for (r, &pc) in rows.iter().zip(&pivots) {
                v.coords[pc] = field.neg(r.coords[fc]);
            }
            v
        })
        .collect();
    Subspace::span(ambient, &gens).expect("dimensions agree")
}

pub fn image(f: &Matrix) -> Subspace {
    let cols: Vec<Vector> = (0..f.cols).map(|j| f.column(j)).collect();
    Subspace::span(Ambient::new(f.field, f.rows), &cols).expect("dimensions agree")
}

/// Solves `f(x) = target`. Returns one particular solution and the kernel,
/// or `None` when `target` is outside the image.
pub fn solve(f: &Matrix, target: &Vector) -> Option<(Vector, Subspace)> {
    assert_eq!(target.len(), f.rows, "target has the wrong length");
    let field = f.field;
    let n = f.cols;
    let mut rows: Vec<Vector> =
        (0..f.rows).map(|i| f.row(i).concat(&Vector::new(field, vec![target.coords[i]]))).collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = Vector::zero(field, n);
    for (r, &pc) in rows.iter().zip(&pivots) {
        x.coords[pc] = r.coords[n];
    }
    Some((x, kernel(f)))
}

/// Number of k-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All k-dimensional subspaces of the ambient space, each canonical, in a
/// deterministic order (by pivot pattern, then free entries).
pub fn enumerate_subspaces(k: usize, ambient: Ambient, budget: Budget) -> Result<Vec<Subspace>> {
    let n = ambient.dim;
    if k > n {
        return Err(Error::DimensionMismatch { expected: n, found: k });
    }
    budget.check(gaussian_binomial(n, k, ambient.field.modulus()))?;
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        emit_with_pivots(ambient, &pivots, &mut out);
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn emit_with_pivots(ambient: Ambient, pivots: &[usize], out: &mut Vec<Subspace>) {
    let n = ambient.dim;
    let f = ambient.field;
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| (c + 1..n).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
        .collect();
    let assignments = Ambient::new(f, free.len());
    for idx in 0..assignments.size() as usize {
        let vals = assignments.vector_at(idx);
        let mut basis: Vec<Vector> = pivots.iter().map(|&c| Vector::unit(f, n, c)).collect();
        for (&(r, j), &x) in free.iter().zip(&vals.coords) {
            basis[r].coords[j] = x;
        }
        out.push(Subspace { ambient, basis });
    }
}

/// If the distinct points form an affine subspace, its dimension.
pub fn affine_dimension(points: &[Vector]) -> Option<usize> {
    let base = points.first()?;
    let distinct: HashSet<&Vector> = points.iter().collect();
    let diffs: Vec<Vector> = points.iter().map(|p| p - base).collect();
    let span = Subspace::span(Ambient::new(base.field, base.len()), &diffs).ok()?;
    (span.size() == distinct.len() as u128).then_some(span.dim())
}

/// All invertible n x n matrices, in row-major index order.
pub fn general_linear_group(field: Field, n: usize, budget: Budget) -> Result<Vec<Matrix>> {
    let all = Ambient::new(field, n * n);
    budget.check(all.size())?;
    Ok((0..all.size() as usize)
        .map(|i| Matrix { field, rows: n, cols: n, data: all.vector_at(i).coords })
        .filter(|m| m.is_invertible())
        .collect())
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..3, r * c)
                .prop_map(move |d| Matrix::from_data(Field::new(3).unwrap(), r, c, d))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            prop_assert_eq!(kernel(&m).dim() + image(&m).dim(), m.domain_dim());
            prop_assert_eq!(image(&m).dim(), m.rank());
        }

        #[test]
        fn canonical_basis_is_idempotent_and_order_insensitive(
            gens in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..5)
        ) {
            let f3 = Field::new(3).unwrap();
            let amb = Ambient::new(f3, 4);
            let vs: Vec<Vector> = gens.into_iter().map(|g| Vector::new(f3, g)).collect();
            let s = canonical_basis(amb, &vs).unwrap();
            prop_assert_eq!(&canonical_basis(amb, s.basis()).unwrap(), &s);
            let mut rev = vs.clone();
            rev.reverse();
            prop_assert_eq!(&canonical_basis(amb, &rev).unwrap(), &s);
            for g in &vs {
                prop_assert!(s.contains(g));
            }
        }

        #[test]
        fn solve_agrees_with_image(m in matrix_strategy(), t in proptest::collection::vec(0u32..3, 4)) {
            let f3 = Field::new(3).unwrap();
            let target = Vector::new(f3, t[..m.rows()].to_vec());
            match solve(&m, &target) {
                Some((x, k)) => {
                    prop_assert_eq!(m.apply(&x), target);
                    prop_assert_eq!(k, kernel(&m));
                }
                None => prop_assert!(!image(&m).contains(&target)),
            }
        }
    }
}
