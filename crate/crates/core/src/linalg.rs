//! Exact rational linear algebra.
//!
//! Every subspace is stored by its reduced row-echelon basis, so two
//! subspaces are equal exactly when their stored bases are equal. Matrices act
//! on column vectors: `apply(v)[i] = sum_j m[i][j] * v[j]`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("inner subspace is not contained in the outer subspace")]
    NotContained,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational '{text}': {reason}")]
pub struct ScalarParseError {
    pub text: String,
    pub reason: &'static str,
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, `q > 0` after normalisation).
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let err = |reason| ScalarParseError {
        text: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let parse_int = |s: &str| -> Result<BigInt, ScalarParseError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("not an integer"));
        }
        s.parse::<BigInt>().map_err(|_| err("not an integer"))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Scalar::new(n, d))
}

/// Lowest-terms text form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("[{}]", parts.join(", "))
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Accumulates `acc += c * v`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length must match matrix columns");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Scalar::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn rank(&self) -> usize {
        rref(&self.to_rows(), self.cols).dim()
    }

    /// Right kernel `{v : M v = 0}` inside `Q^cols`.
    pub fn nullspace(&self) -> Subspace {
        let (reduced, pivots) = row_reduce(self.to_rows(), self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = zero_vector(self.cols);
            v[f] = Scalar::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let augmented: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend(unit_vector(n, r));
                row
            })
            .collect();
        let (reduced, pivots) = row_reduce(augmented, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = reduced.into_iter().map(|row| row[n..].to_vec()).collect();
        Matrix::from_rows(rows, n).ok()
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, exponent: i64) -> Option<Matrix> {
        let base = if exponent < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut out = Matrix::identity(self.rows);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        Some(out)
    }

    /// Coefficients `[c0, .., cn]` of `det(xI - M)`, lowest degree first.
    pub fn char_poly(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "characteristic polynomial needs a square matrix");
        // Faddeev-LeVerrier; exact in characteristic zero.
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
            let t = self.mul(&m).trace();
            coeffs[n - k] = -t / int(k as i64);
        }
        coeffs
    }

    /// Distinct rational eigenvalues in increasing order.
    pub fn rational_eigenvalues(&self) -> Vec<Scalar> {
        let mut roots = rational_roots(&self.char_poly());
        roots.sort();
        roots.dedup();
        roots
    }

    /// Span of `M v` over the basis of `space`.
    pub fn image_of(&self, space: &Subspace) -> Subspace {
        Subspace::span(self.rows, space.basis().iter().map(|v| self.apply(v)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|r| format_vector(self.row(r))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A square matrix viewed as an endomorphism, with invertibility cached.
#[derive(Debug)]
pub struct LinearOperator {
    matrix: Matrix,
    inverse: OnceLock<Option<Matrix>>,
}

impl Clone for LinearOperator {
    fn clone(&self) -> Self {
        LinearOperator {
            matrix: self.matrix.clone(),
            inverse: self.inverse.clone(),
        }
    }
}

impl PartialEq for LinearOperator {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for LinearOperator {}

impl LinearOperator {
    pub fn new(matrix: Matrix) -> Result<Self, LinalgError> {
        if !matrix.is_square() {
            return Err(LinalgError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(LinearOperator {
            matrix,
            inverse: OnceLock::new(),
        })
    }

    pub fn identity(n: usize) -> Self {
        LinearOperator::new(Matrix::identity(n)).expect("identity is square")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(v)
    }

    pub fn inverse(&self) -> Option<&Matrix> {
        self.inverse.get_or_init(|| self.matrix.inverse()).as_ref()
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.dim())
    }
}

/// Full reduced row-echelon form: returns the nonzero rows and their pivot columns.
fn row_reduce(mut rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Canonical row space of `rows` inside `Q^ambient`.
pub fn rref(rows: &[Vector], ambient: usize) -> Subspace {
    Subspace::span(ambient, rows.iter().cloned())
}

pub fn kernel(op: &LinearOperator) -> Subspace {
    op.matrix().nullspace()
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len(), "right-hand side length must match rows");
    let n = m.cols();
    let rows: Vec<Vector> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let (reduced, pivots) = row_reduce(rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vector(n);
    for (row, &p) in reduced.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Kernel of the map obtained by stacking the rows of all `maps` (each with `ambient` columns).
pub fn common_kernel<'a, I: IntoIterator<Item = &'a Matrix>>(ambient: usize, maps: I) -> Subspace {
    let mut rows = Vec::new();
    for m in maps {
        assert_eq!(m.cols(), ambient, "stacked map has wrong source dimension");
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        return Subspace::full(ambient);
    }
    Matrix::from_rows(rows, ambient)
        .expect("rows checked above")
        .nullspace()
}

/// A subspace of `Q^n` held as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vector>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector outside ambient space"))
            .filter(|v| !is_zero_vector(v))
            .collect();
        let (basis, _) = row_reduce(rows, ambient);
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let coords: Vector = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vector(self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut rebuilt, c, row);
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn sum_all<'a, I: IntoIterator<Item = &'a Subspace>>(ambient: usize, spaces: I) -> Subspace {
        Subspace::span(
            ambient,
            spaces.into_iter().flat_map(|s| s.basis.iter().cloned()),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve sum a_i u_i - sum b_j w_j = 0 and map the a-part back.
        let columns: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        let system = Matrix::from_columns(&columns, self.ambient);
        let null = system.nullspace();
        Subspace::span(
            self.ambient,
            null.basis.iter().map(|coeffs| {
                let mut v = zero_vector(self.ambient);
                for (c, u) in coeffs.iter().zip(&self.basis) {
                    axpy(&mut v, c, u);
                }
                v
            }),
        )
    }

    /// Image under a linear map given as a matrix.
    pub fn image(&self, m: &Matrix) -> Subspace {
        m.image_of(self)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "0");
        }
        let rows: Vec<String> = self.basis.iter().map(|v| format_vector(v)).collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Extends `inner` to `outer` by scanning `outer`'s RREF basis in order and
/// keeping each vector not already in the running span.
pub fn complement(inner: &Subspace, outer: &Subspace) -> Result<Subspace, LinalgError> {
    if inner.ambient_dim() != outer.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: outer.ambient_dim(),
            found: inner.ambient_dim(),
        });
    }
    if !outer.contains_space(inner) {
        return Err(LinalgError::NotContained);
    }
    let mut running = inner.clone();
    let mut chosen = Vec::new();
    for v in outer.basis() {
        if running.dim() == outer.dim() {
            break;
        }
        if !running.contains(v) {
            running = running.sum(&Subspace::span(outer.ambient_dim(), [v.clone()]));
            chosen.push(v.clone());
        }
    }
    Ok(Subspace::span(outer.ambient_dim(), chosen))
}

/// Result of a simultaneous eigenspace computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEigenspaces {
    /// `(eigenvalue of each operator, common eigenspace)`, sorted by eigenvalues.
    pub classes: Vec<(Vector, Subspace)>,
    /// Deterministic complement of the sum of the classes.
    pub remainder: Subspace,
}

/// Maximal common eigenspaces of `ops` with rational eigenvalues.
///
/// The operators need not commute; whatever is not a common eigenvector
/// (non-commuting, nilpotent or irrational content) ends up in the remainder.
pub fn joint_eigenspaces(
    ambient: usize,
    ops: &[LinearOperator],
) -> Result<JointEigenspaces, LinalgError> {
    for op in ops {
        if op.dim() != ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient,
                found: op.dim(),
            });
        }
    }
    let mut classes: Vec<(Vector, Subspace)> = vec![(Vec::new(), Subspace::full(ambient))];
    for op in ops {
        let eigenvalues = op.matrix().rational_eigenvalues();
        let mut next = Vec::new();
        for (values, space) in &classes {
            for lambda in &eigenvalues {
                let shifted = op.matrix().sub(&Matrix::identity(ambient).scale(lambda));
                let w = eigenvectors_within(&shifted, space);
                if !w.is_zero() {
                    let mut vals = values.clone();
                    vals.push(lambda.clone());
                    next.push((vals, w));
                }
            }
        }
        classes = next;
    }
    classes.retain(|(_, s)| !s.is_zero());
    classes.sort();
    let total = Subspace::sum_all(ambient, classes.iter().map(|(_, s)| s));
    let remainder = complement(&total, &Subspace::full(ambient))?;
    Ok(JointEigenspaces { classes, remainder })
}

/// `{v in space : m v = 0}`.
fn eigenvectors_within(m: &Matrix, space: &Subspace) -> Subspace {
    let columns: Vec<Vector> = space.basis().iter().map(|b| m.apply(b)).collect();
    let system = Matrix::from_columns(&columns, m.rows());
    let null = system.nullspace();
    Subspace::span(
        space.ambient_dim(),
        null.basis().iter().map(|coeffs| {
            let mut v = zero_vector(space.ambient_dim());
            for (c, b) in coeffs.iter().zip(space.basis()) {
                axpy(&mut v, c, b);
            }
            v
        }),
    )
}

/// Rational roots of a polynomial given lowest degree first (with multiplicity removed).
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut poly = integer_primitive(coeffs);
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        if !roots.iter().any(Zero::is_zero) {
            roots.push(Scalar::zero());
        }
    }
    loop {
        if poly.len() <= 1 {
            break;
        }
        let lead = poly.last().expect("nonempty").abs();
        let constant = poly[0].abs();
        let mut found = None;
        'search: for p in divisors(&constant) {
            for q in divisors(&lead) {
                for sign in [1i64, -1] {
                    let candidate = Scalar::new(&p * BigInt::from(sign), q.clone());
                    if eval_int_poly(&poly, &candidate).is_zero() {
                        found = Some(candidate);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        poly = deflate(&poly, &root);
        if !roots.contains(&root) {
            roots.push(root);
        }
    }
    roots
}

fn integer_primitive(coeffs: &[Scalar]) -> Vec<BigInt> {
    let mut trimmed: Vec<Scalar> = coeffs.to_vec();
    while trimmed.len() > 1 && trimmed.last().is_some_and(Zero::is_zero) {
        trimmed.pop();
    }
    let lcm = trimmed
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = trimmed
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn eval_int_poly(poly: &[BigInt], x: &Scalar) -> Scalar {
    poly.iter()
        .rev()
        .fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()))
}

/// Divides out `(x - root)` and renormalises to a primitive integer polynomial.
fn deflate(poly: &[BigInt], root: &Scalar) -> Vec<BigInt> {
    let n = poly.len() - 1;
    let mut quotient = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        carry = carry * root + Scalar::from_integer(poly[i + 1].clone());
        quotient[i] = carry.clone();
    }
    integer_primitive(&quotient)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_scales_to_identity() {
        let s = rref(&[v(&[2, 0]), v(&[0, 2])], 2);
        assert_eq!(s.basis(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let s = rref(&[v(&[1, 2]), v(&[2, 4])], 2);
        assert_eq!(s.basis(), &[v(&[1, 2])]);
    }

    #[test]
    fn rref_of_nothing_is_zero() {
        let s = rref(&[], 3);
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 3);
    }

    #[test]
    fn kernel_examples() {
        let id = LinearOperator::new(Matrix::identity(3)).unwrap();
        assert!(kernel(&id).is_zero());
        let z = LinearOperator::new(Matrix::zeros(2, 2)).unwrap();
        assert_eq!(kernel(&z).dim(), 2);
        // x + y = 0 by hand: the line through (1, -1).
        let ones = LinearOperator::new(m(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(kernel(&ones), Subspace::span(2, [v(&[1, -1])]));
    }

    #[test]
    fn joint_eigenspaces_examples() {
        let d = LinearOperator::new(m(&[&[1, 0], &[0, 2]])).unwrap();
        let je = joint_eigenspaces(2, &[d]).unwrap();
        assert_eq!(je.classes.len(), 2);
        assert_eq!(je.classes[0], (v(&[1]), Subspace::span(2, [v(&[1, 0])])));
        assert_eq!(je.classes[1], (v(&[2]), Subspace::span(2, [v(&[0, 1])])));
        assert!(je.remainder.is_zero());

        let id = LinearOperator::identity(2);
        let je = joint_eigenspaces(2, &[id]).unwrap();
        assert_eq!(je.classes, vec![(v(&[1]), Subspace::full(2))]);

        // Jordan block: kernel of [[0,1],[0,0]] solved directly is span{e1}.
        let nil = LinearOperator::new(m(&[&[0, 1], &[0, 0]])).unwrap();
        let je = joint_eigenspaces(2, &[nil]).unwrap();
        assert_eq!(je.classes, vec![(v(&[0]), Subspace::span(2, [v(&[1, 0])]))]);
        assert_eq!(je.remainder, Subspace::span(2, [v(&[0, 1])]));
    }

    #[test]
    fn irrational_eigenvalues_land_in_remainder() {
        // x^2 - 2 has no rational root.
        let op = LinearOperator::new(m(&[&[0, 2], &[1, 0]])).unwrap();
        let je = joint_eigenspaces(2, &[op]).unwrap();
        assert!(je.classes.is_empty());
        assert!(je.remainder.is_full());
    }

    #[test]
    fn complement_examples() {
        let full = Subspace::full(3);
        assert!(complement(&full, &full).unwrap().is_zero());
        assert_eq!(complement(&Subspace::zero(3), &full).unwrap(), full);
        // Greedy scan over e1, e2, e3: e1 is new, e2 = (1,1,0) - e1 is not, e3 is new.
        let inner = Subspace::span(3, [v(&[1, 1, 0])]);
        assert_eq!(
            complement(&inner, &full).unwrap(),
            Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 0, 1])])
        );
        let line = Subspace::span(3, [v(&[0, 0, 1])]);
        assert_eq!(
            complement(&full, &line),
            Err(LinalgError::NotContained)
        );
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar("6/4").unwrap(), frac(3, 2));
        assert_eq!(format_scalar(&frac(3, 2)), "3/2");
        assert_eq!(format_scalar(&frac(-4, 2)), "-2");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn char_poly_and_inverse() {
        let a = m(&[&[2, 1], &[1, 2]]);
        // det(xI - A) = x^2 - 4x + 3
        assert_eq!(a.char_poly(), vec![int(3), int(-4), int(1)]);
        assert_eq!(a.rational_eigenvalues(), vec![int(1), int(3)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let p = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let q = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(p.intersection(&q), Subspace::span(3, [v(&[0, 1, 0])]));
    }
}
