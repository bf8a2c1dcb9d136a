//! Dense structure-constant tensors.

use num_traits::Zero;

use crate::linalg::{axpy, zero_vector, Matrix, Scalar, Vector};

/// `c[i][j][k]`: the product of basis `i` (first factor) with basis `j`
/// (second factor) has coefficient `c[i][j][k]` on output basis `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dims: (usize, usize, usize),
    data: Vec<Scalar>,
}

impl StructureConstants {
    pub fn zeros(n1: usize, n2: usize, n3: usize) -> Self {
        StructureConstants {
            dims: (n1, n2, n3),
            data: vec![Scalar::zero(); n1 * n2 * n3],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let (n1, n2, n3) = self.dims;
        assert!(i < n1 && j < n2, "structure constant index out of range");
        (i * n2 + j) * n3
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        assert!(k < self.dims.2, "structure constant index out of range");
        &self.data[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        assert!(k < self.dims.2, "structure constant index out of range");
        let o = self.offset(i, j);
        self.data[o + k] = value;
    }

    /// Output vector for the pair of basis elements `(i, j)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dims.2]
    }

    pub fn set_basis_product(&mut self, i: usize, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.dims.2);
        let o = self.offset(i, j);
        self.data[o..o + v.len()].clone_from_slice(v);
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn product(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let (n1, n2, n3) = self.dims;
        assert_eq!(u.len(), n1);
        assert_eq!(v.len(), n2);
        let mut out = zero_vector(n3);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(ui * vj), self.basis_product(i, j));
            }
        }
        out
    }

    /// Matrix of `v -> product(u, v)`.
    pub fn left_matrix(&self, u: &[Scalar]) -> Matrix {
        let (_, n2, n3) = self.dims;
        let columns: Vec<Vector> = (0..n2)
            .map(|j| self.product(u, &crate::linalg::unit_vector(n2, j)))
            .collect();
        Matrix::from_columns(&columns, n3)
    }

    /// Matrix of `u -> product(u, v)`.
    pub fn right_matrix(&self, v: &[Scalar]) -> Matrix {
        let (n1, _, n3) = self.dims;
        let columns: Vec<Vector> = (0..n1)
            .map(|i| self.product(&crate::linalg::unit_vector(n1, i), v))
            .collect();
        Matrix::from_columns(&columns, n3)
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let (_, n2, n3) = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(idx, x)| (idx / (n2 * n3), (idx / n3) % n2, idx % n3, x))
    }

    /// Applies `m` to every output vector.
    pub fn map_outputs(&self, m: &Matrix) -> StructureConstants {
        let (n1, n2, _) = self.dims;
        let mut out = StructureConstants::zeros(n1, n2, m.rows());
        for i in 0..n1 {
            for j in 0..n2 {
                out.set_basis_product(i, j, &m.apply(self.basis_product(i, j)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, unit_vector};

    #[test]
    fn entries_round_trip_indices() {
        let mut t = StructureConstants::zeros(2, 3, 4);
        t.set(1, 2, 3, int(5));
        t.set(0, 1, 0, int(-1));
        let found: Vec<_> = t.entries().map(|(i, j, k, x)| (i, j, k, x.clone())).collect();
        assert_eq!(found, vec![(0, 1, 0, int(-1)), (1, 2, 3, int(5))]);
    }

    #[test]
    fn product_is_bilinear_on_basis() {
        let mut t = StructureConstants::zeros(2, 2, 2);
        t.set(0, 1, 1, int(1));
        t.set(1, 0, 1, int(-1));
        let u = vec![int(2), int(3)];
        let v = vec![int(5), int(7)];
        // 2*7*e1 - 3*5*e1
        assert_eq!(t.product(&u, &v), vec![int(0), int(-1)]);
        assert_eq!(t.left_matrix(&unit_vector(2, 0)).apply(&v), t.product(&unit_vector(2, 0), &v));
        assert_eq!(t.right_matrix(&v).apply(&u), t.product(&u, &v));
    }
}
