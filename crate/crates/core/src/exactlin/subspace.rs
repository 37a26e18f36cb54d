use super::field::{Rationals, Q};
use super::matrix::{generic, RationalMatrix};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Subspace of ℚ^d stored as a canonical reduced row-echelon basis, so equal subspaces
/// compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalSubspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl RationalSubspace {
    pub fn zero(ambient: usize) -> Self {
        RationalSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, RationalMatrix::identity(ambient).data())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let mut basis = vectors.to_vec();
        generic::rref(&Rationals, &mut basis, ambient);
        RationalSubspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        generic::rank(&Rationals, &rows, self.ambient) == self.dim()
    }

    pub fn contains_space(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Self::span(self.ambient, &rows)
    }

    /// Orthogonal complement {y : y·b = 0 for every basis vector b}.
    pub fn annihilator(&self) -> Self {
        let k = generic::right_kernel(&Rationals, &self.basis, self.ambient);
        Self::span(self.ambient, &k)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    /// Image of the space under the row action v ↦ v·m.
    pub fn left_image(&self, m: &RationalMatrix) -> Self {
        let rows: Vec<Vec<Q>> = self.basis.iter().map(|v| m.left_apply(v)).collect();
        Self::span(m.cols(), &rows)
    }

    /// Image of the space (as column vectors) under v ↦ m·v.
    pub fn image(&self, m: &RationalMatrix) -> Self {
        let rows: Vec<Vec<Q>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows(), &rows)
    }

    /// Basis as the rows of a matrix.
    pub fn as_matrix(&self) -> RationalMatrix {
        RationalMatrix::with_shape(self.dim(), self.ambient, self.basis.clone())
    }

    /// Coordinates of `v` with respect to the stored basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.is_zero() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        generic::solve_left(&Rationals, &self.basis, v)
    }
}

/// {x : x·m = 0}.
pub fn kernel_left(m: &RationalMatrix) -> RationalSubspace {
    let k = generic::right_kernel(&Rationals, m.transpose().data(), m.rows());
    RationalSubspace::span(m.rows(), &k)
}

/// {x : m·x = 0}.
pub fn kernel_right(m: &RationalMatrix) -> RationalSubspace {
    let k = generic::right_kernel(&Rationals, m.data(), m.cols());
    RationalSubspace::span(m.cols(), &k)
}

/// Column space m·ℚ^d.
pub fn column_space(m: &RationalMatrix) -> RationalSubspace {
    RationalSubspace::span(m.rows(), m.transpose().data())
}

/// Eventual image m^d·ℚ^d (column convention).
pub fn eventual_image(m: &RationalMatrix) -> RationalSubspace {
    assert!(m.is_square());
    column_space(&m.pow(m.rows()))
}

/// Eventual image for the row action: ℚ^d·m^d.
pub fn eventual_left_image(m: &RationalMatrix) -> RationalSubspace {
    eventual_image(&m.transpose())
}

/// Generalized left eigenspace for 0: {x : x·m^d = 0}.
pub fn left_nilspace(m: &RationalMatrix) -> RationalSubspace {
    kernel_left(&m.pow(m.rows()))
}

/// The unique u in the left eventual image with u·mⁿ = v.
pub fn restricted_inverse_apply(m: &RationalMatrix, v: &[Q], n: usize) -> Result<Vec<Q>> {
    let image = eventual_left_image(m);
    if !image.contains(v) {
        return Err(Error::Precondition(
            "vector is not in the eventual image".into(),
        ));
    }
    if n == 0 || image.is_zero() {
        return Ok(v.to_vec());
    }
    // Unknown coordinates c over the image basis B: (c·B)·mⁿ = v.
    let mn = m.pow(n);
    let pushed: Vec<Vec<Q>> = image.basis().iter().map(|b| mn.left_apply(b)).collect();
    let c = generic::solve_left(&Rationals, &pushed, v)
        .ok_or_else(|| Error::Precondition("restriction is not invertible".into()))?;
    let mut u = vec![Q::zero(); m.rows()];
    for (ci, b) in c.iter().zip(image.basis()) {
        for (uj, bj) in u.iter_mut().zip(b) {
            *uj += ci * bj;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::super::field::qi;
    use super::*;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| qi(a)).collect()
    }

    #[test]
    fn kernel_left_examples() {
        assert!(kernel_left(&RationalMatrix::identity(3)).is_zero());
        let col = RationalMatrix::from_ints(&[[0], [1], [0], [-1]]);
        let k = kernel_left(&col);
        assert_eq!(k.dim(), 3);
        assert!(k.contains(&v(&[1, 0, 0, 0])));
        assert!(k.contains(&v(&[0, 1, 0, 1])));
        assert_eq!(k, kernel_left(&col.scale(&qi(7))));
    }

    #[test]
    fn eventual_image_examples() {
        let m = RationalMatrix::from_ints(&[[1, 1], [0, 0]]);
        assert_eq!(eventual_image(&m), RationalSubspace::span(2, &[v(&[1, 0])]));
        let nil = RationalMatrix::from_ints(&[[0, 1], [0, 0]]);
        assert!(eventual_image(&nil).is_zero());
        let inv = RationalMatrix::from_ints(&[[2, 1], [1, 1]]);
        assert_eq!(eventual_image(&inv), RationalSubspace::full(2));
    }

    #[test]
    fn restricted_inverse_examples() {
        let m = RationalMatrix::from_ints(&[[2, 0], [0, 0]]);
        assert_eq!(
            restricted_inverse_apply(&m, &v(&[4, 0]), 2).unwrap(),
            v(&[1, 0])
        );
        assert_eq!(
            restricted_inverse_apply(&m, &v(&[4, 0]), 0).unwrap(),
            v(&[4, 0])
        );
        assert!(restricted_inverse_apply(&m, &v(&[0, 1]), 1).is_err());
        let inv = RationalMatrix::from_ints(&[[2, 1], [1, 1]]);
        let u = restricted_inverse_apply(&inv, &v(&[3, 5]), 1).unwrap();
        assert_eq!(inv.left_apply(&u), v(&[3, 5]));
    }

    #[test]
    fn intersection_and_annihilator() {
        let a = RationalSubspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = RationalSubspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), RationalSubspace::span(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.annihilator(), RationalSubspace::span(3, &[v(&[0, 0, 1])]));
    }
}
