use super::field::{qi, Q};
use super::poly::{generic, RationalPolynomial};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sturm sequence p, p', −rem(p, p'), … of a polynomial.
pub fn sturm_sequence(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = -&seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|q| !q.is_zero());
    seq
}

fn variations(seq: &[RationalPolynomial], x: &Q) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval (a, b].
pub fn count_real_roots(p: &RationalPolynomial, a: &Q, b: &Q) -> usize {
    let seq = sturm_sequence(p);
    variations(&seq, a).saturating_sub(variations(&seq, b))
}

/// True iff the coefficient list is a palindrome.
pub fn is_palindromic(p: &RationalPolynomial) -> bool {
    p.reversed() == *p && p.coeff(0) == p.lc()
}

/// For a palindromic p of degree 2m returns q of degree m with p(x) = x^m·q(x + 1/x).
pub fn reciprocal_transform(p: &RationalPolynomial) -> Option<RationalPolynomial> {
    let n = p.degree();
    if !n.is_multiple_of(2) || !is_palindromic(p) {
        return None;
    }
    let m = n / 2;
    // D_k(y) = x^k + x^{-k} expressed in y = x + 1/x.
    let y = RationalPolynomial::x();
    let mut d_prev = RationalPolynomial::constant(qi(2));
    let mut d_cur = y.clone();
    let mut q = RationalPolynomial::constant(p.coeff(m));
    for k in 1..=m {
        if k > 1 {
            let next = &(&y * &d_cur) - &d_prev;
            d_prev = std::mem::replace(&mut d_cur, next);
        }
        q = &q + &d_cur.scale(&p.coeff(m + k));
    }
    Some(q)
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// For an irreducible polynomial, returns Some(n) if it is the n-th cyclotomic polynomial.
pub fn cyclotomic_order(f: &RationalPolynomial) -> Option<u64> {
    let f = f.primitive();
    let d = f.degree();
    if d == 0 || !f.lc().is_one() {
        return None;
    }
    if d == 1 {
        return match f.coeff(0).to_integer() {
            c if c == BigInt::from(-1) => Some(1),
            c if c.is_one() => Some(2),
            _ => None,
        };
    }
    let q = reciprocal_transform(&f)?;
    // All roots on the unit circle iff all roots of q are real and lie in (−2, 2).
    if count_real_roots(&q, &qi(-2), &qi(2)) != q.degree() {
        return None;
    }
    let x = RationalPolynomial::x();
    let bound = 2 * (d as u64) * (d as u64) + 2;
    (1..=bound)
        .filter(|&n| euler_phi(n) == d as u64)
        .find(|&n| {
            let r = generic::pow_mod(&super::field::Rationals, x.coeffs(), n, f.coeffs());
            RationalPolynomial::new(r) == RationalPolynomial::one()
        })
}

/// Product of the cyclotomic irreducible factors of p, with multiplicity.
pub fn cyclotomic_part(p: &RationalPolynomial) -> RationalPolynomial {
    super::factor::factor_poly(p)
        .into_iter()
        .filter(|(f, _)| cyclotomic_order(f).is_some())
        .fold(RationalPolynomial::one(), |acc, (f, m)| &acc * &f.pow(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn sturm_counts() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(count_real_roots(&f, &qi(-10), &qi(10)), 2);
        assert_eq!(count_real_roots(&f, &qi(0), &qi(10)), 1);
        assert_eq!(count_real_roots(&p(&[1, 0, 1]), &qi(-10), &qi(10)), 0);
    }

    #[test]
    fn transform_roundtrip() {
        // Φ_5 = x⁴+x³+x²+x+1 → y² + y − 1.
        assert_eq!(
            reciprocal_transform(&p(&[1, 1, 1, 1, 1])).unwrap(),
            p(&[-1, 1, 1])
        );
        assert!(reciprocal_transform(&p(&[1, 2, 3])).is_none());
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(cyclotomic_order(&p(&[1, 1])), Some(2));
        assert_eq!(cyclotomic_order(&p(&[1, 1, 1])), Some(3));
        assert_eq!(cyclotomic_order(&p(&[1, -1, 1])), Some(6));
        assert_eq!(cyclotomic_order(&p(&[1, 0, -1, 0, 1])), Some(12));
        assert_eq!(cyclotomic_order(&p(&[-1, -1, 1])), None);
        // Salem-type palindromic polynomial: not all roots on the circle.
        assert_eq!(cyclotomic_order(&p(&[1, -1, -1, -1, 1])), None);
    }

    #[test]
    fn cyclotomic_parts() {
        assert_eq!(
            cyclotomic_part(&(&p(&[-1, 1]) * &p(&[1, -3, 1]))),
            p(&[-1, 1])
        );
        assert_eq!(
            cyclotomic_part(&p(&[-1, -1, 0, 1])),
            RationalPolynomial::one()
        );
        assert_eq!(cyclotomic_part(&p(&[1, 1, 1])), p(&[1, 1, 1]));
    }
}
