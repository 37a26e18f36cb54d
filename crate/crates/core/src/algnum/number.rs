use super::interval::CBox;
use super::isolate::isolate_roots_prec;
use crate::exactlin::{
    count_real_roots, cyclotomic_order, irreducible_factors, is_palindromic, qi,
    reciprocal_transform, RationalPolynomial, Q,
};
use num_traits::{One, Signed, Zero};
use std::fmt;

const BASE_PREC: u32 = 53;

/// Position of an algebraic number relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModulusClass {
    LessThanOne,
    OnUnitCircle,
    GreaterThanOne,
}

impl ModulusClass {
    /// Modulus ≥ 1.
    pub fn is_noncontracting(self) -> bool {
        self != ModulusClass::LessThanOne
    }
}

/// One root of an irreducible integer-primitive polynomial, selected by an isolating
/// rectangle.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: RationalPolynomial,
    bx: CBox,
    prec: u32,
}

fn precision_schedule(start: u32) -> impl Iterator<Item = u32> {
    (0..12).map(move |k| start.max(BASE_PREC) << k)
}

impl AlgebraicNumber {
    /// All roots of an irreducible polynomial, in a deterministic order (real part, then
    /// imaginary part of the isolating rectangles).
    pub fn roots_of_irreducible(f: &RationalPolynomial) -> Vec<AlgebraicNumber> {
        let minpoly = f.primitive();
        isolate_roots_prec(&minpoly, BASE_PREC)
            .into_iter()
            .map(|bx| AlgebraicNumber {
                minpoly: minpoly.clone(),
                bx,
                prec: BASE_PREC,
            })
            .collect()
    }

    /// All roots of an arbitrary non-zero polynomial, grouped by irreducible factor.
    pub fn roots_of(p: &RationalPolynomial) -> Vec<AlgebraicNumber> {
        irreducible_factors(p)
            .iter()
            .flat_map(Self::roots_of_irreducible)
            .collect()
    }

    pub fn rational(q: &Q) -> AlgebraicNumber {
        AlgebraicNumber {
            minpoly: RationalPolynomial::linear_root(q).primitive(),
            bx: CBox::real(q.clone()),
            prec: u32::MAX,
        }
    }

    /// The root of `f` (irreducible) whose isolating rectangle contains the given point
    /// estimate; `None` if no unique match is found.
    pub fn root_near(f: &RationalPolynomial, re: f64, im: f64) -> Option<AlgebraicNumber> {
        let roots = Self::roots_of_irreducible(f);
        roots.into_iter().min_by(|a, b| {
            let da = (a.approx().0 - re).hypot(a.approx().1 - im);
            let db = (b.approx().0 - re).hypot(b.approx().1 - im);
            da.partial_cmp(&db).unwrap()
        })
    }

    /// The real root of largest value of an irreducible polynomial.
    pub fn largest_real_root(f: &RationalPolynomial) -> Option<AlgebraicNumber> {
        Self::roots_of_irreducible(f)
            .into_iter()
            .rfind(|r| r.is_real())
    }

    pub fn minpoly(&self) -> &RationalPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn isolating_box(&self) -> &CBox {
        &self.bx
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.degree() == 1).then(|| -self.minpoly.coeff(0) / self.minpoly.coeff(1))
    }

    /// Real iff the isolating rectangle is symmetric about the real axis.
    pub fn is_real(&self) -> bool {
        self.bx.im.lo == -self.bx.im.hi.clone()
    }

    /// Index of the unique rectangle at precision `prec` that meets our rectangle.
    fn locate(&self, prec: u32) -> Option<(usize, Vec<CBox>)> {
        let list = isolate_roots_prec(&self.minpoly, prec);
        let hits: Vec<usize> = (0..list.len())
            .filter(|&i| list[i].overlaps(&self.bx))
            .collect();
        (hits.len() == 1).then(|| (hits[0], list))
    }

    /// An enclosure of width ≤ 2^{−prec}.
    pub fn enclosure(&self, prec: u32) -> CBox {
        if self.prec >= prec || self.degree() == 1 {
            return self.bx.clone();
        }
        for p in precision_schedule(prec) {
            if let Some((i, list)) = self.locate(p) {
                return list[i].clone();
            }
        }
        panic!("could not refine root of {}", self.minpoly);
    }

    /// A copy with an isolating rectangle of width ≤ 2^{−prec}.
    pub fn refined(&self, prec: u32) -> AlgebraicNumber {
        if self.prec >= prec {
            return self.clone();
        }
        AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            bx: self.enclosure(prec),
            prec,
        }
    }

    /// Exact identity test.
    pub fn same(&self, o: &AlgebraicNumber) -> bool {
        if self.minpoly != o.minpoly {
            return false;
        }
        if self.degree() == 1 || self.bx == o.bx {
            return true;
        }
        if !self.bx.overlaps(&o.bx) {
            return false;
        }
        for p in precision_schedule(self.prec.max(o.prec).min(1 << 20)) {
            if let (Some((i, _)), Some((j, _))) = (self.locate(p), o.locate(p)) {
                return i == j;
            }
        }
        panic!("could not compare roots of {}", self.minpoly);
    }

    /// All roots of the minimal polynomial (this number included).
    pub fn conjugates(&self) -> Vec<AlgebraicNumber> {
        Self::roots_of_irreducible(&self.minpoly)
    }

    /// Index of this number among [`Self::conjugates`].
    pub fn conjugate_index(&self) -> usize {
        let conj = self.conjugates();
        conj.iter()
            .position(|c| c.same(self))
            .expect("a root of its own minimal polynomial")
    }

    /// Centre of the isolating rectangle (decoration only).
    pub fn approx(&self) -> (f64, f64) {
        self.bx.approx()
    }

    /// Exact classification against the unit circle.
    pub fn modulus_class(&self) -> ModulusClass {
        if let Some(q) = self.as_rational() {
            return match q.abs().cmp(&Q::one()) {
                std::cmp::Ordering::Less => ModulusClass::LessThanOne,
                std::cmp::Ordering::Equal => ModulusClass::OnUnitCircle,
                std::cmp::Ordering::Greater => ModulusClass::GreaterThanOne,
            };
        }
        let n = self.degree();
        let on_circle = if is_palindromic(&self.minpoly) {
            let q = reciprocal_transform(&self.minpoly).expect("palindromic of even degree");
            2 * count_real_roots(&q, &qi(-2), &qi(2))
        } else {
            0
        };
        let off = |b: &CBox| -> Option<ModulusClass> {
            if b.mag2_upper() < Q::one() {
                Some(ModulusClass::LessThanOne)
            } else if b.mag2_lower() > Q::one() {
                Some(ModulusClass::GreaterThanOne)
            } else {
                None
            }
        };
        if on_circle == 0 {
            for p in precision_schedule(self.prec) {
                if let Some(c) = off(&self.enclosure(p)) {
                    return c;
                }
            }
        } else {
            for p in precision_schedule(self.prec) {
                let Some((i, list)) = self.locate(p) else {
                    continue;
                };
                let classes: Vec<Option<ModulusClass>> = list.iter().map(off).collect();
                if classes.iter().filter(|c| c.is_some()).count() == n - on_circle {
                    return classes[i].unwrap_or(ModulusClass::OnUnitCircle);
                }
            }
        }
        panic!(
            "modulus classification did not terminate for {}",
            self.minpoly
        );
    }

    /// Some(order) iff this number is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        cyclotomic_order(&self.minpoly)
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.root_of_unity_order().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let (re, im) = self.approx();
        if self.is_real() {
            write!(f, "root of {} ≈ {re:.10}", self.minpoly)
        } else {
            write!(f, "root of {} ≈ {re:.10}{im:+.10}i", self.minpoly)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn modulus_examples() {
        let two = AlgebraicNumber::rational(&qi(2));
        assert_eq!(two.modulus_class(), ModulusClass::GreaterThanOne);
        let golden = AlgebraicNumber::roots_of_irreducible(&p(&[-1, -1, 1]));
        assert_eq!(golden[0].modulus_class(), ModulusClass::LessThanOne);
        assert_eq!(golden[1].modulus_class(), ModulusClass::GreaterThanOne);
        let plastic = AlgebraicNumber::roots_of_irreducible(&p(&[-1, -1, 0, 1]));
        let classes: Vec<ModulusClass> = plastic.iter().map(|r| r.modulus_class()).collect();
        assert_eq!(
            classes
                .iter()
                .filter(|c| **c == ModulusClass::LessThanOne)
                .count(),
            2
        );
        assert_eq!(
            classes
                .iter()
                .filter(|c| **c == ModulusClass::GreaterThanOne)
                .count(),
            1
        );
    }

    #[test]
    fn salem_conjugates_on_the_circle() {
        let roots = AlgebraicNumber::roots_of_irreducible(&p(&[1, -1, -1, -1, 1]));
        let classes: Vec<ModulusClass> = roots.iter().map(|r| r.modulus_class()).collect();
        assert_eq!(
            classes
                .iter()
                .filter(|c| **c == ModulusClass::OnUnitCircle)
                .count(),
            2
        );
        assert_eq!(
            classes
                .iter()
                .filter(|c| **c == ModulusClass::GreaterThanOne)
                .count(),
            1
        );
        assert_eq!(
            classes
                .iter()
                .filter(|c| **c == ModulusClass::LessThanOne)
                .count(),
            1
        );
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(
            AlgebraicNumber::rational(&qi(-1)).root_of_unity_order(),
            Some(2)
        );
        let w = AlgebraicNumber::roots_of_irreducible(&p(&[1, 1, 1]));
        assert!(w.iter().all(|r| r.root_of_unity_order() == Some(3)));
        assert!(w
            .iter()
            .all(|r| r.modulus_class() == ModulusClass::OnUnitCircle));
        let golden = AlgebraicNumber::roots_of_irreducible(&p(&[-1, -1, 1]));
        assert!(!golden[1].is_root_of_unity());
    }

    #[test]
    fn identity_and_refinement() {
        let r = AlgebraicNumber::roots_of_irreducible(&p(&[-2, 0, 1]));
        let fine = r[1].refined(200);
        assert!(fine.same(&r[1]));
        assert!(!fine.same(&r[0]));
        assert_eq!(fine.conjugate_index(), 1);
        assert!(r[0].is_real() && r[1].is_real());
        let i = AlgebraicNumber::roots_of_irreducible(&p(&[1, 0, 1]));
        assert!(!i[0].is_real());
    }
}
