use super::field::{common_denominator, qb, Q};
use super::subspace::RationalSubspace;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer matrix as a list of rows.
pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let s = rows[src].clone();
    for (t, x) in rows[target].iter_mut().zip(&s) {
        *t -= k * x;
    }
}

/// Row Hermite normal form: returns (h, u) with u·m = h, det u = ±1, h in echelon form with
/// positive pivots and entries above each pivot reduced into [0, pivot).
pub fn hnf(m: &[Vec<BigInt>], cols: usize) -> (IntMatrix, IntMatrix) {
    let r = m.len();
    let mut h: IntMatrix = m.to_vec();
    let mut u = identity(r);
    let mut k = 0;
    for c in 0..cols {
        if k == r {
            break;
        }
        loop {
            let piv = (k..r)
                .filter(|&i| !h[i][c].is_zero())
                .min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(k, p);
            u.swap(k, p);
            let mut done = true;
            for i in k + 1..r {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[k][c]);
                row_axpy(&mut h, i, k, &q);
                row_axpy(&mut u, i, k, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[k][c].is_zero() {
            continue;
        }
        if h[k][c].is_negative() {
            for x in h[k].iter_mut().chain(u[k].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..k {
            let q = h[i][c].div_floor(&h[k][c]);
            row_axpy(&mut h, i, k, &q);
            row_axpy(&mut u, i, k, &q);
        }
        k += 1;
    }
    (h, u)
}

/// Basis of the integer left kernel {x ∈ ℤ^r : x·m = 0}, in Hermite normal form.
pub fn integer_left_kernel(m: &[Vec<BigInt>], cols: usize) -> IntMatrix {
    let (h, u) = hnf(m, cols);
    let kernel: IntMatrix = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect();
    IntegerLattice::new(m.len(), kernel).basis
}

/// Solves a·x = b over the integers (a given by rows), returning one solution if any.
pub fn solve_integer(a: &[Vec<BigInt>], cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let eqs = a.len();
    let at: IntMatrix = (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();
    let (h, u) = hnf(&at, eqs);
    // a·uᵀ = hᵀ; solve hᵀ·z = b by forward substitution along the pivots of h.
    let mut z = vec![BigInt::zero(); cols];
    for (i, row) in h.iter().enumerate() {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            break;
        };
        let mut rhs = b[p].clone();
        for (k, zk) in z.iter().enumerate().take(i) {
            rhs -= &h[k][p] * zk;
        }
        let (q, rem) = rhs.div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    for e in 0..eqs {
        let lhs: BigInt = (0..cols).map(|i| &h[i][e] * &z[i]).sum();
        if lhs != b[e] {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|j| (0..cols).map(|i| &u[i][j] * &z[i]).sum())
            .collect(),
    )
}

/// Lattice in ℤ^d given by a canonical Hermite-normal-form basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegerLattice {
    ambient: usize,
    basis: IntMatrix,
}

impl IntegerLattice {
    /// Lattice generated by arbitrary integer vectors.
    pub fn new(ambient: usize, generators: IntMatrix) -> Self {
        let (h, _) = hnf(&generators, ambient);
        let basis = h
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        IntegerLattice { ambient, basis }
    }

    pub fn standard(ambient: usize) -> Self {
        IntegerLattice {
            ambient,
            basis: identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        IntegerLattice::new(self.ambient, gens) == *self
    }
}

/// {x ∈ L : x ∈ span(S)} as an HNF lattice.
pub fn lattice_meet_subspace(l: &IntegerLattice, s: &RationalSubspace) -> IntegerLattice {
    let d = l.ambient();
    let normals = s.annihilator();
    if normals.is_zero() {
        return l.clone();
    }
    // x = c·B lies in S iff c·(B·N) = 0, N the normal vectors as columns.
    let nrows: Vec<Vec<BigInt>> = normals
        .basis()
        .iter()
        .map(|n| {
            let den = common_denominator(n);
            n.iter().map(|x| (x * qb(&den)).to_integer()).collect()
        })
        .collect();
    let bn: IntMatrix = l
        .basis()
        .iter()
        .map(|b| {
            nrows
                .iter()
                .map(|n| b.iter().zip(n).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let coeffs = integer_left_kernel(&bn, nrows.len());
    let gens: IntMatrix = coeffs
        .iter()
        .map(|c| {
            (0..d)
                .map(|j| c.iter().zip(l.basis()).map(|(ci, b)| ci * &b[j]).sum())
                .collect()
        })
        .collect();
    IntegerLattice::new(d, gens)
}

/// Converts a lattice basis to rational row vectors.
pub fn lattice_rows_q(l: &IntegerLattice) -> Vec<Vec<Q>> {
    l.basis()
        .iter()
        .map(|r| r.iter().map(qb).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::field::qi;
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix, cols: usize) -> IntMatrix {
        a.iter()
            .map(|r| {
                (0..cols)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn hnf_examples() {
        let id = im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(hnf(&id, 3), (id.clone(), id.clone()));
        let zero = im(&[&[0, 0], &[0, 0]]);
        let (h, u) = hnf(&zero, 2);
        assert_eq!(h, zero);
        assert_eq!(u, im(&[&[1, 0], &[0, 1]]));
        let m = im(&[&[2, 4], &[1, 1]]);
        let (h, u) = hnf(&m, 2);
        assert_eq!(mul(&u, &m, 2), h);
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        assert_eq!(det.abs(), BigInt::from(2));
    }

    #[test]
    fn integer_solve() {
        let a = im(&[&[2, 4], &[1, 3]]);
        let b = vec![BigInt::from(6), BigInt::from(5)];
        let x = solve_integer(&a, 2, &b).unwrap();
        assert_eq!(x, vec![BigInt::from(-1), BigInt::from(2)]);
        assert!(solve_integer(&im(&[&[2, 4]]), 2, &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn meet_with_paper_folding_kernel() {
        let s = RationalSubspace::span(4, &[vec![qi(0), qi(1), qi(0), qi(-1)]]).annihilator();
        let l = lattice_meet_subspace(&IntegerLattice::standard(4), &s);
        assert_eq!(l.rank(), 3);
        assert!(l.contains(&[0, 1, 0, 1].map(BigInt::from)));
        assert!(!l.contains(&[0, 1, 0, 0].map(BigInt::from)));
        let full = lattice_meet_subspace(&IntegerLattice::standard(4), &RationalSubspace::full(4));
        assert_eq!(full, IntegerLattice::standard(4));
        assert_eq!(
            lattice_meet_subspace(&IntegerLattice::standard(4), &RationalSubspace::zero(4)).rank(),
            0
        );
    }
}
