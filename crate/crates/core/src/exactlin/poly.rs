use super::field::{common_denominator, gcd_all, qb, qi, Field, Rationals, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial arithmetic over an arbitrary [`Field`].
/// Coefficients are stored in ascending order; the zero polynomial is the empty vector.
pub mod generic {
    use super::Field;

    pub fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
        while p.last().is_some_and(|c| f.is_zero(c)) {
            p.pop();
        }
    }

    pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        trim(f, &mut out);
        out
    }

    pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|c| f.neg(c)).collect()
    }

    pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        add(f, a, &neg(f, b))
    }

    pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trim(f, &mut out);
        out
    }

    pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        let mut out: Vec<F::Elem> = a.iter().map(|x| f.mul(x, c)).collect();
        trim(f, &mut out);
        out
    }

    /// Euclidean division; panics on division by the zero polynomial.
    pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        trim(f, &mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc_inv = f
            .inv(b.last().unwrap())
            .expect("nonzero leading coefficient");
        let mut q = vec![f.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(r.last().unwrap(), &lc_inv);
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = f.sub(&r[shift + j], &f.mul(&c, bj));
            }
            q[shift] = c;
            r.pop();
            trim(f, &mut r);
        }
        trim(f, &mut q);
        (q, r)
    }

    pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        div_rem(f, a, b).1
    }

    pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => scale(f, a, &f.inv(lc).unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(f, &mut x);
        trim(f, &mut y);
        while !y.is_empty() {
            let r = rem(f, &x, &y);
            x = y;
            y = r;
        }
        monic(f, &x)
    }

    type Bezout<E> = (Vec<E>, Vec<E>, Vec<E>);

    /// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Bezout<F::Elem> {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(f, &mut r0);
        trim(f, &mut r1);
        let (mut s0, mut s1) = (vec![f.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
        while !r1.is_empty() {
            let (q, r) = div_rem(f, &r0, &r1);
            let s2 = sub(f, &s0, &mul(f, &q, &s1));
            let t2 = sub(f, &t0, &mul(f, &q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(&lc).unwrap();
                (
                    scale(f, &r0, &inv),
                    scale(f, &s0, &inv),
                    scale(f, &t0, &inv),
                )
            }
        }
    }

    pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
        let mut out: Vec<F::Elem> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_rational(&super::qi(i as i64)), c))
            .collect();
        trim(f, &mut out);
        out
    }

    /// Polynomial composition a(b(x)).
    pub fn compose<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut out: Vec<F::Elem> = Vec::new();
        for c in a.iter().rev() {
            out = add(f, &mul(f, &out, b), std::slice::from_ref(c));
        }
        trim(f, &mut out);
        out
    }

    /// Taylor shift a(x + c).
    pub fn shift<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        let mut out = a.to_vec();
        let n = out.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(c, &out[j + 1]);
                out[j] = f.add(&out[j], &t);
            }
        }
        trim(f, &mut out);
        out
    }

    /// `base^e mod m`.
    pub fn pow_mod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut result = rem(f, &[f.one()], m);
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(f, &mul(f, &result, &b), m);
            }
            b = rem(f, &mul(f, &b, &b), m);
            e >>= 1;
        }
        result
    }
}

/// Univariate polynomial with rational coefficients (ascending order, trimmed).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Q>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        generic::trim(&Rationals, &mut coeffs);
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(qb).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: &Q) -> Self {
        Self::new(vec![-c.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        generic::eval(&Rationals, &self.coeffs, x)
    }

    /// Evaluates the polynomial in an arbitrary field containing ℚ.
    pub fn eval_in<F: Field>(&self, f: &F, x: &F::Elem) -> F::Elem {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| {
            f.add(&f.mul(&acc, x), &f.from_rational(c))
        })
    }

    /// Coefficients mapped into another field.
    pub fn lift<F: Field>(&self, f: &F) -> Vec<F::Elem> {
        self.coeffs.iter().map(|c| f.from_rational(c)).collect()
    }

    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let (q, r) = generic::div_rem(&Rationals, &self.coeffs, &other.coeffs);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.div_rem(other).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self::new(generic::gcd(&Rationals, &self.coeffs, &other.coeffs))
    }

    pub fn derivative(&self) -> Self {
        Self::new(generic::derivative(&Rationals, &self.coeffs))
    }

    pub fn monic(&self) -> Self {
        Self::new(generic::monic(&Rationals, &self.coeffs))
    }

    pub fn compose(&self, inner: &Self) -> Self {
        Self::new(generic::compose(&Rationals, &self.coeffs, &inner.coeffs))
    }

    pub fn shift(&self, c: &Q) -> Self {
        Self::new(generic::shift(&Rationals, &self.coeffs, c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(generic::scale(&Rationals, &self.coeffs, c))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficients reversed: xⁿ·p(1/x) for n = deg p.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Integer coefficients of the primitive associate with positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * qb(&d)).to_integer())
            .collect();
        let mut g = gcd_all(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }

    /// The primitive integer associate with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        Self::from_bigints(&self.primitive_integer_coeffs())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree part (product of distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree decomposition: returns monic (a_i, i) with p = lc·∏ a_i^i and a_i
    /// squarefree, pairwise coprime; only non-constant parts are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let mut a = p.gcd(&dp);
        let mut b = p.exact_div(&a).unwrap();
        let mut c = dp.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            i += 1;
        }
        out
    }

    /// Human-readable rendering in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, o: &RationalPolynomial) -> RationalPolynomial {
        RationalPolynomial::new(generic::add(&Rationals, &self.coeffs, &o.coeffs))
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, o: &RationalPolynomial) -> RationalPolynomial {
        RationalPolynomial::new(generic::sub(&Rationals, &self.coeffs, &o.coeffs))
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, o: &RationalPolynomial) -> RationalPolynomial {
        RationalPolynomial::new(generic::mul(&Rationals, &self.coeffs, &o.coeffs))
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(generic::neg(&Rationals, &self.coeffs))
    }
}
