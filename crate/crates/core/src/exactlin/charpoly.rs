use super::field::{Rationals, Q};
use super::matrix::{generic, RationalMatrix};
use super::poly::RationalPolynomial;
use num_traits::{One, Zero};

/// Characteristic polynomial det(x·I − m) via reduction to Hessenberg form.
pub fn char_poly(m: &RationalMatrix) -> RationalPolynomial {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    let mut h: Vec<Vec<Q>> = m.data().to_vec();
    for c in 1..n.saturating_sub(1) {
        let Some(i) = (c..n).find(|&i| !h[i][c - 1].is_zero()) else {
            continue;
        };
        if i != c {
            h.swap(i, c);
            for row in h.iter_mut() {
                row.swap(i, c);
            }
        }
        for j in c + 1..n {
            if h[j][c - 1].is_zero() {
                continue;
            }
            let u = &h[j][c - 1] / &h[c][c - 1];
            let (top, bottom) = h.split_at_mut(j);
            for (x, y) in bottom[0].iter_mut().zip(&top[c]) {
                *x -= &u * y;
            }
            for row in h.iter_mut() {
                let t = &u * &row[j];
                row[c] += t;
            }
        }
    }
    let x = RationalPolynomial::x();
    let mut p: Vec<RationalPolynomial> = vec![RationalPolynomial::one()];
    for k in 0..n {
        let mut next = &(&x - &RationalPolynomial::constant(h[k][k].clone())) * &p[k];
        let mut prod = Q::one();
        for i in (0..k).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coeff = &prod * &h[i][k];
            next = &next - &p[i].scale(&coeff);
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// Minimal polynomial: the first power of `m` linearly dependent on the lower ones.
pub fn min_poly(m: &RationalMatrix) -> RationalPolynomial {
    let n = m.rows();
    let flat = |a: &RationalMatrix| -> Vec<Q> { a.data().iter().flatten().cloned().collect() };
    let mut powers = vec![flat(&RationalMatrix::identity(n))];
    let mut current = RationalMatrix::identity(n);
    loop {
        current = current.mul(m);
        let v = flat(&current);
        if let Some(c) = generic::solve_left(&Rationals, &powers, &v) {
            let mut coeffs: Vec<Q> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Q::one());
            return RationalPolynomial::new(coeffs);
        }
        powers.push(v);
    }
}

/// Characteristic and minimal polynomials together.
pub fn char_min_poly(m: &RationalMatrix) -> (RationalPolynomial, RationalPolynomial) {
    (char_poly(m), min_poly(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn tribonacci() {
        let m = RationalMatrix::from_ints(&[[1, 1, 1], [1, 0, 0], [0, 1, 0]]);
        let (c, mp) = char_min_poly(&m);
        assert_eq!(c, p(&[-1, -1, -1, 1]));
        assert_eq!(mp, c);
    }

    #[test]
    fn jordan_block_minimal_polynomial() {
        let m = RationalMatrix::from_ints(&[[2, 1, 0], [0, 2, 0], [0, 0, 2]]);
        let (c, mp) = char_min_poly(&m);
        assert_eq!(c, p(&[-2, 1]).pow(3));
        assert_eq!(mp, p(&[-2, 1]).pow(2));
        assert!(m.eval_poly(&mp).is_zero());
    }

    #[test]
    fn hessenberg_with_zero_subdiagonal() {
        let m =
            RationalMatrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(char_poly(&m), p(&[-1, 0, 1]).pow(2));
        assert_eq!(min_poly(&m), p(&[-1, 0, 1]));
    }
}
