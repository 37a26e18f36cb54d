//! Factorization of rational polynomials into irreducibles over ℚ.
//!
//! Squarefree parts are factored modulo a single prime larger than twice the coefficient
//! bound of any factor, then true factors are recovered by subset recombination. No lifting
//! step is needed because the prime already exceeds the bound.

use super::field::{Field, Q};
use super::poly::{generic, RationalPolynomial};
use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The prime field ℤ/pℤ with canonical representatives in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: BigInt,
}

impl PrimeField {
    pub fn new(p: BigInt) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.p
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.p)
    }

    /// Symmetric representative in (−p/2, p/2].
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let r = self.reduce(a);
        if &r * 2 > self.p {
            r - &self.p
        } else {
            r
        }
    }
}

impl Field for PrimeField {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let e = a.extended_gcd(&self.p);
        Some(self.reduce(&e.x))
    }
    fn from_rational(&self, q: &Q) -> BigInt {
        let d = self.inv(q.denom()).expect("denominator invertible mod p");
        self.mul(&self.reduce(q.numer()), &d)
    }
}

fn small_primes() -> impl Iterator<Item = u32> {
    [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47].into_iter()
}

/// Miller–Rabin with the fixed small-prime bases plus random bases.
pub fn is_probable_prime(n: &BigInt, rng: &mut ChaCha8Rng) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for sp in small_primes() {
        let sp = BigInt::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut bases: Vec<BigInt> = small_primes().map(BigInt::from).collect();
    for _ in 0..8 {
        bases.push(rng.gen_bigint_range(&two, &n1));
    }
    'outer: for a in bases {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn next_prime(start: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let mut c = start.clone();
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c, rng) {
        c += 2;
    }
    c
}

fn big_pow_mod(f: &PrimeField, base: &[BigInt], e: &BigInt, m: &[BigInt]) -> Vec<BigInt> {
    let mut result = generic::rem(f, &[BigInt::one()], m);
    let mut b = generic::rem(f, base, m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = generic::rem(f, &generic::mul(f, &result, &b), m);
        }
        if i + 1 < bits {
            b = generic::rem(f, &generic::mul(f, &b, &b), m);
        }
    }
    result
}

/// Distinct-degree factorization of a monic squarefree polynomial mod p.
fn distinct_degree(f: &PrimeField, poly: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut out = Vec::new();
    let mut rest = poly.to_vec();
    let mut h = x.clone();
    let mut i = 1;
    while rest.len() > 2 * i {
        h = big_pow_mod(f, &h, f.modulus(), &rest);
        let g = generic::gcd(f, &generic::sub(f, &h, &x), &rest);
        if g.len() > 1 {
            rest = generic::div_rem(f, &rest, &g).0;
            h = generic::rem(f, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd p).
fn equal_degree(
    f: &PrimeField,
    g: &[BigInt],
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.to_vec());
        return;
    }
    let e = (f.modulus().pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<BigInt> = (0..n)
            .map(|_| rng.gen_bigint_range(&BigInt::zero(), f.modulus()))
            .collect();
        let mut a = a;
        generic::trim(f, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = big_pow_mod(f, &a, &e, g);
        let c = generic::gcd(f, &generic::sub(f, &b, &[BigInt::one()]), g);
        if c.len() > 1 && c.len() < g.len() {
            let q = generic::div_rem(f, g, &c).0;
            equal_degree(f, &c, d, rng, out);
            equal_degree(f, &generic::monic(f, &q), d, rng, out);
            return;
        }
    }
}

fn factor_mod_p(f: &PrimeField, poly: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let monic = generic::monic(f, poly);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, &monic) {
        equal_degree(f, &g, d, rng, &mut out);
    }
    out
}

fn int_poly_primitive(c: &[BigInt]) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let s = if c.last().is_some_and(|x| x.is_negative()) {
        -g
    } else {
        g
    };
    c.iter().map(|x| x / &s).collect()
}

/// Exact division of integer polynomials, `None` unless the quotient is integral and exact.
fn int_poly_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + b.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Factors a primitive squarefree integer polynomial of positive degree (positive leading
/// coefficient) into primitive irreducible integer polynomials.
pub fn factor_squarefree_integer(poly: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut f = int_poly_primitive(poly);
    let mut found = Vec::new();
    if f[0].is_zero() {
        found.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    let n = f.len() - 1;
    if n == 0 {
        return found;
    }
    if n == 1 {
        found.push(f);
        return found;
    }
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let lc = f.last().unwrap().clone();
    let bound = BigInt::from(2) * &lc * (BigInt::one() << n) * norm1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ n as u64);
    let mut best: Option<(PrimeField, Vec<Vec<BigInt>>)> = None;
    let mut attempts = 0;
    let mut start = &bound + 1;
    while attempts < 3 {
        let p = next_prime(&start, &mut rng);
        start = &p + rng.gen_bigint_range(&BigInt::one(), &(&p >> 4usize).max(BigInt::from(4)));
        let fp = PrimeField::new(p);
        if fp.reduce(&lc).is_zero() {
            continue;
        }
        let reduced: Vec<BigInt> = f.iter().map(|c| fp.reduce(c)).collect();
        let deriv = generic::derivative(&fp, &reduced);
        if generic::gcd(&fp, &reduced, &deriv).len() != 1 {
            continue;
        }
        attempts += 1;
        let facs = factor_mod_p(&fp, &reduced, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (fp, mut modular) = best.expect("a suitable prime exists");
    let mut s = 1;
    while 2 * s <= modular.len() {
        let mut hit = None;
        let lcf = f.last().unwrap().clone();
        for subset in subsets(modular.len(), s) {
            let mut g = vec![fp.reduce(&lcf)];
            for &i in &subset {
                g = generic::mul(&fp, &g, &modular[i]);
            }
            let g: Vec<BigInt> = g.iter().map(|c| fp.symmetric(c)).collect();
            let g = int_poly_primitive(&g);
            if let Some(q) = int_poly_div(&f, &g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                f = int_poly_primitive(&q);
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

fn sort_key(p: &RationalPolynomial) -> (usize, Vec<BigInt>) {
    (p.degree(), p.primitive_integer_coeffs())
}

/// Irreducible factorization over ℚ: integer-primitive factors with positive leading
/// coefficient and their multiplicities, sorted by degree then coefficients.
pub fn factor_poly(p: &RationalPolynomial) -> Vec<(RationalPolynomial, usize)> {
    assert!(!p.is_zero(), "factorization of the zero polynomial");
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree_integer(&part.primitive_integer_coeffs()) {
            out.push((RationalPolynomial::from_bigints(&f), mult));
        }
    }
    out.sort_by_key(|(f, m)| (sort_key(f), *m));
    out
}

/// True iff `p` is irreducible over ℚ (non-constant, single factor of multiplicity one).
pub fn is_irreducible(p: &RationalPolynomial) -> bool {
    if p.degree() == 0 {
        return false;
    }
    let f = factor_poly(p);
    f.len() == 1 && f[0].1 == 1
}

/// Distinct irreducible factors of `p` (multiplicities dropped).
pub fn irreducible_factors(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    factor_poly(p).into_iter().map(|(f, _)| f).collect()
}
