use crate::exactlin::Q;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn pow2(bits: u32) -> BigInt {
    BigInt::from(1) << bits
}

/// Largest multiple of 2^{−bits} that is ≤ q.
pub fn round_down(q: &Q, bits: u32) -> Q {
    let s = pow2(bits);
    Q::new((q * Q::from_integer(s.clone())).floor().to_integer(), s)
}

/// Smallest multiple of 2^{−bits} that is ≥ q.
pub fn round_up(q: &Q, bits: u32) -> Q {
    let s = pow2(bits);
    Q::new((q * Q::from_integer(s.clone())).ceil().to_integer(), s)
}

/// Closed real interval with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval::new(b, a)
        } else {
            Interval::new(a, b)
        }
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> Q {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value attained.
    pub fn mig(&self) -> Q {
        if self.contains_zero() {
            Q::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Outward rounding to the dyadic grid 2^{−bits}.
    pub fn round(&self, bits: u32) -> Self {
        Interval::new(round_down(&self.lo, bits), round_up(&self.hi, bits))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }
}

/// Axis-parallel complex rectangle re × im.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CBox {
    pub re: Interval,
    pub im: Interval,
}

impl CBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        CBox { re, im }
    }

    pub fn point(re: Q, im: Q) -> Self {
        CBox {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn real(x: Q) -> Self {
        Self::point(x, Q::zero())
    }

    pub fn width(&self) -> Q {
        self.re.width().max(self.im.width())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_point(&self, re: &Q, im: &Q) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains_box(&self, o: &Self) -> bool {
        self.re.lo <= o.re.lo
            && o.re.hi <= self.re.hi
            && self.im.lo <= o.im.lo
            && o.im.hi <= self.im.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        CBox::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CBox::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        CBox::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBox::new(re, im)
    }

    pub fn scale(&self, c: &Q) -> Self {
        CBox::new(self.re.scale(c), self.im.scale(c))
    }

    pub fn conj(&self) -> Self {
        CBox::new(self.re.clone(), self.im.neg())
    }

    pub fn round(&self, bits: u32) -> Self {
        CBox::new(self.re.round(bits), self.im.round(bits))
    }

    /// Upper bound for |z|² over the box.
    pub fn mag2_upper(&self) -> Q {
        let (a, b) = (self.re.mag(), self.im.mag());
        &a * &a + &b * &b
    }

    /// Lower bound for |z|² over the box.
    pub fn mag2_lower(&self) -> Q {
        let (a, b) = (self.re.mig(), self.im.mig());
        &a * &a + &b * &b
    }

    /// Centre as a pair of floats (decoration only).
    pub fn approx(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    /// Evaluates a polynomial with interval coefficients by Horner's rule, rounding outward to
    /// `bits` after every step.
    pub fn horner(coeffs: &[CBox], z: &CBox, bits: u32) -> CBox {
        let mut acc = CBox::real(Q::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(z).add(c).round(bits);
        }
        acc
    }

    /// Horner evaluation of a rational polynomial.
    pub fn horner_q(coeffs: &[Q], z: &CBox, bits: u32) -> CBox {
        let cs: Vec<CBox> = coeffs.iter().map(|c| CBox::real(c.clone())).collect();
        Self::horner(&cs, z, bits)
    }
}
