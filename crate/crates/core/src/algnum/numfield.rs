use super::interval::CBox;
use super::number::AlgebraicNumber;
use crate::exactlin::{polyops, Field, RationalMatrix, RationalPolynomial, Rationals, Q};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

struct FieldData {
    generator: AlgebraicNumber,
    modulus: Vec<Q>,
}

/// The number field ℚ(β) for an algebraic number β, with the power basis 1, β, …, β^{d−1}.
/// Elements of the [`Field`] implementation are coordinate vectors of length d.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.generator.same(&o.0.generator)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({:?})", self.0.generator)
    }
}

impl NumberField {
    pub fn new(generator: AlgebraicNumber) -> Self {
        let modulus = generator.minpoly().monic().coeffs().to_vec();
        NumberField(Arc::new(FieldData { generator, modulus }))
    }

    pub fn rationals() -> Self {
        Self::new(AlgebraicNumber::rational(&Q::zero()))
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.0.generator
    }

    /// Monic minimal polynomial of the generator.
    pub fn modulus(&self) -> RationalPolynomial {
        RationalPolynomial::new(self.0.modulus.clone())
    }

    fn pad(&self, mut v: Vec<Q>) -> Vec<Q> {
        v.resize(self.degree(), Q::zero());
        v
    }

    /// Reduces a polynomial in β to power-basis coordinates.
    pub fn reduce(&self, p: &[Q]) -> Vec<Q> {
        self.pad(polyops::rem(&Rationals, p, &self.0.modulus))
    }

    pub fn element(&self, coords: Vec<Q>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: self.reduce(&coords),
        }
    }

    pub fn from_poly(&self, p: &RationalPolynomial) -> FieldElement {
        self.element(p.coeffs().to_vec())
    }

    pub fn rational(&self, q: &Q) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: self.from_rational(q),
        }
    }

    /// The generator β as a field element.
    pub fn gen(&self) -> FieldElement {
        self.from_poly(&RationalPolynomial::x())
    }

    /// Matrix of multiplication by `a` acting on row coordinate vectors: row i holds a·βⁱ.
    pub fn multiplication_matrix(&self, a: &[Q]) -> RationalMatrix {
        let d = self.degree();
        let mut rows = Vec::with_capacity(d);
        let mut cur = a.to_vec();
        let x = self.reduce(&[Q::zero(), Q::one()]);
        for _ in 0..d {
            rows.push(cur.clone());
            cur = self.mul(&cur, &x);
        }
        RationalMatrix::with_shape(d, d, rows)
    }

    /// Monic minimal polynomial over ℚ of an element.
    pub fn minpoly_of(&self, a: &[Q]) -> RationalPolynomial {
        crate::exactlin::char_poly(&self.multiplication_matrix(a))
            .squarefree_part()
            .monic()
    }

    /// Certified enclosure of the numeric value at the selected generator, width ≤ 2^{−prec}.
    pub fn embed(&self, a: &[Q], prec: u32) -> CBox {
        let target = Q::new(One::one(), num_bigint::BigInt::one() << prec);
        let mut gp = prec + 16;
        loop {
            let g = self.0.generator.enclosure(gp);
            let b = CBox::horner_q(a, &g, gp + 8);
            if b.width() <= target {
                return b;
            }
            gp *= 2;
        }
    }

    /// The element as an [`AlgebraicNumber`].
    pub fn to_algebraic(&self, a: &[Q]) -> AlgebraicNumber {
        let mp = self.minpoly_of(a);
        if mp.degree() == 1 {
            return AlgebraicNumber::rational(&-mp.coeff(0));
        }
        let roots = AlgebraicNumber::roots_of_irreducible(&mp);
        let mut prec = 53;
        loop {
            let b = self.embed(a, prec);
            let hits: Vec<&AlgebraicNumber> = roots
                .iter()
                .filter(|r| r.enclosure(prec).overlaps(&b))
                .collect();
            if hits.len() == 1 {
                return hits[0].clone();
            }
            prec *= 2;
        }
    }

    /// Expresses an algebraic number as an element of this field, if it lies in it.
    pub fn locate(&self, alpha: &AlgebraicNumber) -> Option<FieldElement> {
        let factors = super::trager::factor_over_field(alpha.minpoly(), self);
        factors
            .iter()
            .filter(|f| f.degree() == 1)
            .map(|f| self.neg(&f.coeffs[0]))
            .find(|root| self.to_algebraic(root).same(alpha))
            .map(|coords| FieldElement {
                field: self.clone(),
                coords,
            })
    }
}

impl Field for NumberField {
    type Elem = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.degree()]
    }
    fn one(&self) -> Vec<Q> {
        self.from_rational(&Q::one())
    }
    fn is_zero(&self, a: &Vec<Q>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        if self.degree() == 1 {
            return vec![&a[0] * &b[0]];
        }
        self.reduce(&polyops::mul(&Rationals, a, b))
    }
    fn neg(&self, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|x| -x).collect()
    }
    fn inv(&self, a: &Vec<Q>) -> Option<Vec<Q>> {
        if self.is_zero(a) {
            return None;
        }
        let (_, s, _) = polyops::ext_gcd(&Rationals, a, &self.0.modulus);
        Some(self.reduce(&s))
    }
    fn from_rational(&self, q: &Q) -> Vec<Q> {
        let mut v = self.zero();
        v[0] = q.clone();
        v
    }
}

/// An element of a [`NumberField`] in power-basis coordinates.
#[derive(Clone, PartialEq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Q>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    fn with(&self, coords: Vec<Q>) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    fn check(&self, o: &Self) {
        assert!(
            self.field == o.field,
            "field elements from different fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.field.add(&self.coords, &o.coords))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.field.sub(&self.coords, &o.coords))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.field.mul(&self.coords, &o.coords))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(&self.coords))
    }

    pub fn scale(&self, q: &Q) -> Self {
        self.with(self.coords.iter().map(|c| c * q).collect())
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(&self.coords)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = self.with(self.field.one());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.coords)
    }

    pub fn as_rational(&self) -> Option<Q> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn minpoly(&self) -> RationalPolynomial {
        self.field.minpoly_of(&self.coords)
    }

    pub fn embed_numeric(&self, prec: u32) -> CBox {
        if let Some(q) = self.as_rational() {
            return CBox::real(q);
        }
        self.field.embed(&self.coords, prec)
    }

    pub fn to_algebraic(&self) -> AlgebraicNumber {
        self.field.to_algebraic(&self.coords)
    }

    /// Renders as a polynomial in the given variable name.
    pub fn render(&self, var: &str) -> String {
        RationalPolynomial::new(self.coords.clone()).render(var)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("β"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qi, qr};

    fn field(c: &[i64]) -> NumberField {
        let f = RationalPolynomial::from_ints(c);
        NumberField::new(AlgebraicNumber::largest_real_root(&f).unwrap())
    }

    #[test]
    fn golden_relation() {
        let k = field(&[-1, -1, 1]);
        let phi = k.gen();
        assert_eq!(phi.mul(&phi), phi.add(&k.rational(&qi(1))));
        assert_eq!(phi.mul(&phi.inv().unwrap()), k.rational(&qi(1)));
        assert!(k.rational(&qi(0)).inv().is_err());
    }

    #[test]
    fn plastic_relation() {
        let k = field(&[-1, -1, 0, 1]);
        let b = k.gen();
        let b2 = b.mul(&b);
        assert_eq!(b.mul(&b2), b.add(&k.rational(&qi(1))));
    }

    #[test]
    fn numeric_embedding() {
        assert_eq!(
            field(&[-2, 0, 1]).rational(&qr(1, 2)).embed_numeric(53),
            CBox::real(qr(1, 2))
        );
        let phi = field(&[-1, -1, 1]).gen();
        let (re, _) = phi.embed_numeric(53).approx();
        assert!((re - 1.618_033_988_749_895).abs() < 1e-12);
        let b = field(&[-1, 0, -2, 1]).gen();
        let sq = b.mul(&b).embed_numeric(60);
        assert!(sq.width() <= Q::new(1.into(), num_bigint::BigInt::one() << 60));
        assert!((sq.approx().0 - 4.864_536_512_3).abs() < 1e-8);
    }

    #[test]
    fn element_minimal_polynomials() {
        let k = field(&[-1, -1, 1]);
        let conj = k.rational(&qi(1)).sub(&k.gen());
        assert_eq!(conj.minpoly(), RationalPolynomial::from_ints(&[-1, -1, 1]));
        let a = conj.to_algebraic();
        assert!((a.approx().0 + 0.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(
            k.rational(&qi(3)).minpoly(),
            RationalPolynomial::from_ints(&[-3, 1])
        );
    }
}
