//! Certified isolation of all complex roots of a squarefree rational polynomial.
//!
//! Approximations come from the Aberth–Ehrlich iteration (first in `f64`, then in big
//! fixed-point arithmetic). Each approximation set is certified exactly: with Weierstrass
//! corrections Wᵢ = p(zᵢ) / (lc·∏_{j≠i}(zᵢ − zⱼ)), every root lies in one of the discs
//! centred at zᵢ − Wᵢ with radius (n−1)|Wᵢ|, and a connected union of m discs holds exactly
//! m roots. Enclosing rectangles are accepted only when pairwise disjoint.

use super::interval::{round_down, round_up, CBox, Interval};
use crate::exactlin::{RationalPolynomial, Q};
use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

type Cache = Mutex<HashMap<(Vec<BigInt>, u32), Vec<CBox>>>;

static CACHE: LazyLock<Cache> = LazyLock::new(|| Mutex::new(HashMap::new()));

const MAX_WORKING_BITS: u32 = 1 << 16;

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
    fn sub(self, o: C64) -> C64 {
        C64 {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64 {
            re: (self.re * o.re + self.im * o.im) / d,
            im: (self.im * o.re - self.re * o.im) / d,
        }
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn aberth_f64(c: &[f64]) -> Vec<C64> {
    let n = c.len() - 1;
    let lc = c[n];
    let radius = (0..n)
        .map(|k| (c[k] / lc).abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            C64 {
                re: radius * t.cos(),
                im: radius * t.sin(),
            }
        })
        .collect();
    let dc: Vec<f64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let eval = |p: &[f64], x: C64| {
        p.iter().rev().fold(C64 { re: 0.0, im: 0.0 }, |acc, &a| {
            acc.mul(x).add(C64 { re: a, im: 0.0 })
        })
    };
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let num = eval(c, z[i]).div(eval(&dc, z[i]));
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..n {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let w = num.div(C64 { re: 1.0, im: 0.0 }.sub(num.mul(s)));
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = z[i].sub(w);
                max_step = max_step.max(w.abs() / z[i].abs().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Complex number a/2^P + i·b/2^P in fixed point.
#[derive(Clone, Debug, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

struct FixedCtx {
    bits: u32,
}

impl FixedCtx {
    fn one(&self) -> Fx {
        Fx {
            re: BigInt::from(1) << self.bits,
            im: BigInt::zero(),
        }
    }
    fn fixed(&self, z: C64) -> Fx {
        let conv = |x: f64| {
            let q = Q::from_f64(if x.is_finite() { x } else { 0.0 }).unwrap_or_default();
            (q * Q::from_integer(BigInt::from(1) << self.bits))
                .round()
                .to_integer()
        };
        Fx {
            re: conv(z.re),
            im: conv(z.im),
        }
    }
    fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }
    fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: &a.re - &b.re,
            im: &a.im - &b.im,
        }
    }
    fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.bits,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.bits,
        }
    }
    fn div(&self, a: &Fx, b: &Fx) -> Option<Fx> {
        let d = &b.re * &b.re + &b.im * &b.im;
        if d.is_zero() {
            return None;
        }
        let nr = &a.re * &b.re + &a.im * &b.im;
        let ni = &a.im * &b.re - &a.re * &b.im;
        Some(Fx {
            re: (nr << self.bits) / &d,
            im: (ni << self.bits) / &d,
        })
    }
    fn eval(&self, p: &[BigInt], z: &Fx) -> Fx {
        let mut acc = Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        };
        for c in p.iter().rev() {
            acc = self.mul(&acc, z);
            acc.re += c << self.bits;
        }
        acc
    }
    fn small(&self, a: &Fx, exp: u32) -> bool {
        let lim = BigInt::from(1) << exp;
        a.re.abs() < lim && a.im.abs() < lim
    }
}

fn aberth_fixed(p: &[BigInt], dp: &[BigInt], start: &[Fx], ctx: &FixedCtx, target: u32) -> Vec<Fx> {
    let n = start.len();
    let mut z = start.to_vec();
    let tol = ctx.bits.saturating_sub(target + 8);
    for _ in 0..200 {
        let mut done = true;
        for i in 0..n {
            let Some(num) = ctx.div(&ctx.eval(p, &z[i]), &ctx.eval(dp, &z[i])) else {
                z[i].re += BigInt::from(1) << (ctx.bits / 2);
                done = false;
                continue;
            };
            let mut s = Fx {
                re: BigInt::zero(),
                im: BigInt::zero(),
            };
            for j in 0..n {
                if j != i {
                    if let Some(t) = ctx.div(&ctx.one(), &ctx.sub(&z[i], &z[j])) {
                        s = ctx.add(&s, &t);
                    }
                }
            }
            let denom = ctx.sub(&ctx.one(), &ctx.mul(&num, &s));
            let w = ctx.div(&num, &denom).unwrap_or(num);
            if !ctx.small(&w, tol) {
                done = false;
            }
            z[i] = ctx.sub(&z[i], &w);
        }
        if done {
            break;
        }
    }
    z
}

/// Snaps near-real approximations onto the real axis and pairs the rest conjugately.
fn symmetrize(z: &mut [Fx], bits: u32) {
    let lim = BigInt::from(1) << (bits / 2);
    for w in z.iter_mut() {
        if w.im.abs() < lim {
            w.im = BigInt::zero();
        }
    }
    let upper: Vec<usize> = (0..z.len()).filter(|&i| z[i].im.is_positive()).collect();
    let mut lower: Vec<usize> = (0..z.len()).filter(|&i| z[i].im.is_negative()).collect();
    if upper.len() != lower.len() {
        return;
    }
    for i in upper {
        let (pos, _) = lower
            .iter()
            .enumerate()
            .map(|(k, &j)| {
                let dr = &z[i].re - &z[j].re;
                let di = &z[i].im + &z[j].im;
                (k, dr.abs() + di.abs())
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        let j = lower.remove(pos);
        z[j] = Fx {
            re: z[i].re.clone(),
            im: -z[i].im.clone(),
        };
    }
}

fn sqrt_upper(num: &BigInt, den: &BigInt) -> Q {
    let k = 16u32;
    let s = (num * den * (BigInt::from(1) << (2 * k))).sqrt() + 1;
    Q::new(s, den * (BigInt::from(1) << k))
}

/// Certified enclosures, or `None` if the approximations are not good enough.
fn certify(p: &[BigInt], z: &[Fx], bits: u32, prec: u32) -> Option<Vec<CBox>> {
    let n = z.len();
    let lc = p.last().unwrap();
    let scale = Q::from_integer(BigInt::from(1) << bits);
    let grid = prec + 16;
    let mut boxes = Vec::with_capacity(n);
    for i in 0..n {
        // H = 2^{P·n}·p(zᵢ) as a Gaussian integer.
        let (mut hr, mut hi) = (BigInt::zero(), BigInt::zero());
        for (k, c) in p.iter().enumerate().rev() {
            let nr = &hr * &z[i].re - &hi * &z[i].im;
            let ni = &hr * &z[i].im + &hi * &z[i].re;
            hr = nr + (c << (bits as usize * (n - k)));
            hi = ni;
        }
        // G = 2^{P(n−1)}·∏_{j≠i}(zᵢ − zⱼ).
        let (mut gr, mut gi) = (BigInt::from(1), BigInt::zero());
        for j in 0..n {
            if j == i {
                continue;
            }
            let dr = &z[i].re - &z[j].re;
            let di = &z[i].im - &z[j].im;
            let nr = &gr * &dr - &gi * &di;
            let ni = &gr * &di + &gi * &dr;
            gr = nr;
            gi = ni;
        }
        let g2 = &gr * &gr + &gi * &gi;
        if g2.is_zero() {
            return None;
        }
        // W = H / (lc·G·2^P).
        let den = &g2 * lc * (BigInt::from(1) << bits);
        let w_re = Q::new(&hr * &gr + &hi * &gi, den.clone());
        let w_im = Q::new(&hi * &gr - &hr * &gi, den);
        let mag_num = &hr * &hr + &hi * &hi;
        let mag_den = &g2 * lc * lc * (BigInt::from(1) << (2 * bits));
        let r = sqrt_upper(&mag_num, &mag_den) * Q::from_integer(BigInt::from(n as u64 - 1));
        let c_re = Q::from_integer(z[i].re.clone()) / &scale - w_re;
        let c_im = Q::from_integer(z[i].im.clone()) / &scale - w_im;
        let bx = CBox::new(
            Interval::new(
                round_down(&(&c_re - &r), grid),
                round_up(&(&c_re + &r), grid),
            ),
            Interval::new(
                round_down(&(&c_im - &r), grid),
                round_up(&(&c_im + &r), grid),
            ),
        );
        if bx.width() > Q::new(BigInt::from(1), BigInt::from(1) << prec) {
            return None;
        }
        boxes.push(bx);
    }
    for i in 0..n {
        for j in i + 1..n {
            if boxes[i].overlaps(&boxes[j]) {
                return None;
            }
        }
    }
    Some(boxes)
}

fn sort_boxes(boxes: &mut [CBox]) {
    boxes.sort_by(|a, b| {
        let (ar, ai) = (a.re.mid(), a.im.mid());
        let (br, bi) = (b.re.mid(), b.im.mid());
        ar.cmp(&br).then(ai.cmp(&bi))
    });
}

fn isolate_uncached(p: &RationalPolynomial, prec: u32) -> Vec<CBox> {
    let ints = p.primitive_integer_coeffs();
    let n = ints.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let root = Q::new(-ints[0].clone(), ints[1].clone());
        return vec![CBox::real(root)];
    }
    let floats: Vec<f64> = ints
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX))
        .collect();
    let approx = aberth_f64(&floats);
    let dp: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let mut bits = (prec + 64).max(128);
    let mut start: Option<Vec<Fx>> = None;
    loop {
        let ctx = FixedCtx { bits };
        let init: Vec<Fx> = match &start {
            None => approx.iter().map(|&z| ctx.fixed(z)).collect(),
            Some(prev) => prev.clone(),
        };
        let mut z = aberth_fixed(&ints, &dp, &init, &ctx, prec.max(bits / 2));
        symmetrize(&mut z, bits);
        if let Some(mut boxes) = certify(&ints, &z, bits, prec) {
            sort_boxes(&mut boxes);
            return boxes;
        }
        assert!(
            bits < MAX_WORKING_BITS,
            "root isolation failed to converge for {p}"
        );
        let next = bits * 2;
        start = Some(
            z.into_iter()
                .map(|w| Fx {
                    re: w.re << (next - bits),
                    im: w.im << (next - bits),
                })
                .collect(),
        );
        bits = next;
    }
}

/// Pairwise disjoint certified rectangles, one per root, each of width ≤ 2^{−prec}.
/// `p` must be squarefree.
pub fn isolate_roots_prec(p: &RationalPolynomial, prec: u32) -> Vec<CBox> {
    let key = (p.primitive_integer_coeffs(), prec);
    if let Some(v) = CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let boxes = isolate_uncached(p, prec);
    CACHE.lock().unwrap().insert(key, boxes.clone());
    boxes
}

/// Isolating rectangles at 53 bits of precision.
pub fn isolate_roots(p: &RationalPolynomial) -> Vec<CBox> {
    isolate_roots_prec(p, 53)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn sqrt_two() {
        let b = isolate_roots(&p(&[-2, 0, 1]));
        assert_eq!(b.len(), 2);
        assert!(b[0].re.hi < Q::zero() && b[1].re.lo > Q::zero());
        assert!((b[1].approx().0 - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(!b[0].overlaps(&b[1]));
    }

    #[test]
    fn tribonacci_roots() {
        let b = isolate_roots(&p(&[-1, -1, -1, 1]));
        assert_eq!(b.len(), 3);
        let real: Vec<&CBox> = b.iter().filter(|x| x.im.lo == -x.im.hi.clone()).collect();
        assert_eq!(real.len(), 1);
        let (re, _) = real[0].approx();
        assert!((re - 1.839286755214161).abs() < 1e-12);
        // The complex pair is conjugate-symmetric.
        let cplx: Vec<&CBox> = b.iter().filter(|x| x.im.lo != -x.im.hi.clone()).collect();
        assert_eq!(cplx[0].conj(), *cplx[1]);
    }

    #[test]
    fn imaginary_unit_and_high_precision() {
        let b = isolate_roots_prec(&p(&[1, 0, 1]), 300);
        assert_eq!(b.len(), 2);
        let eps = Q::new(BigInt::from(1), BigInt::from(1) << 300);
        assert!(b.iter().all(|x| x.re.contains_zero() && x.width() <= eps));
        assert!((b[0].approx().1 + 1.0).abs() < 1e-15 && (b[1].approx().1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn clustered_roots() {
        // (x − 1/1000)(x − 2/1000)(x² − 2) scaled to integers.
        let f = &(&p(&[-1, 1000]) * &p(&[-2, 1000])) * &p(&[-2, 0, 1]);
        let b = isolate_roots(&f);
        assert_eq!(b.len(), 4);
    }
}
