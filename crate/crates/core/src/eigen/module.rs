use crate::algnum::{FieldElement, NumberField};
use crate::exactlin::{
    common_denominator, gcd_all, linalg, qb, Field, IntegerLattice, Rationals, Q,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// How the generator lattice is saturated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    /// The lattice itself.
    None,
    /// ℤ[1/β]·L, β the generator of the field (the Perron root).
    InversePerron,
    /// ℤ[1/q]·L for a positive integer q.
    InverseDet(BigInt),
}

/// A subgroup of ℝ of the form R·L: L a finitely generated ℤ-module inside a number field,
/// R = ℤ, ℤ[1/β] or ℤ[1/q]. The lattice is kept as (1/D)·H with H in Hermite normal form
/// over the power basis and gcd(D, H) = 1.
#[derive(Clone, Debug)]
pub struct EigenvalueModule {
    field: NumberField,
    denominator: BigInt,
    lattice: IntegerLattice,
    closure: Closure,
}

impl EigenvalueModule {
    /// The module generated by coordinate vectors over the power basis of `field`.
    pub fn new(field: NumberField, generators: &[Vec<Q>], closure: Closure) -> Self {
        let deg = field.degree();
        let all: Vec<Q> = generators.iter().flatten().cloned().collect();
        let den = common_denominator(&all);
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| g.iter().map(|x| (x * qb(&den)).to_integer()).collect())
            .collect();
        let lattice = IntegerLattice::new(deg, rows);
        let content = gcd_all(
            &lattice
                .basis()
                .iter()
                .flatten()
                .cloned()
                .collect::<Vec<_>>(),
        );
        let g = if content.is_zero() {
            den.clone()
        } else {
            content.gcd(&den)
        };
        let lattice = IntegerLattice::new(
            deg,
            lattice
                .basis()
                .iter()
                .map(|r| r.iter().map(|x| x / &g).collect())
                .collect(),
        );
        let closure = match closure {
            Closure::InverseDet(q) if q.abs().is_one() => Closure::None,
            Closure::InverseDet(q) => Closure::InverseDet(q.abs()),
            c => c,
        };
        EigenvalueModule {
            field,
            denominator: den / g,
            lattice,
            closure,
        }
    }

    pub fn from_elements(
        field: NumberField,
        generators: &[FieldElement],
        closure: Closure,
    ) -> Self {
        let coords: Vec<Vec<Q>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        Self::new(field, &coords, closure)
    }

    /// A module of rational numbers.
    pub fn rational(generators: &[Q], closure: Closure) -> Self {
        let coords: Vec<Vec<Q>> = generators.iter().map(|g| vec![g.clone()]).collect();
        Self::new(NumberField::rationals(), &coords, closure)
    }

    /// The integers.
    pub fn integers() -> Self {
        Self::rational(&[Q::one()], Closure::None)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Hermite normal form rows of D·L over the power basis.
    pub fn lattice_basis(&self) -> &[Vec<BigInt>] {
        self.lattice.basis()
    }

    /// Canonical generators (1/D)·h for the rows h of the Hermite basis.
    pub fn generators(&self) -> Vec<FieldElement> {
        self.coords()
            .into_iter()
            .map(|c| self.field.element(c))
            .collect()
    }

    fn coords(&self) -> Vec<Vec<Q>> {
        let d = qb(&self.denominator);
        self.lattice
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| qb(x) / &d).collect())
            .collect()
    }

    /// Dimension of the ℚ-span.
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Exact membership test.
    pub fn contains(&self, x: &FieldElement) -> bool {
        let Some(sat) = Saturated::of(self, &self.field) else {
            return false;
        };
        match transport(x.coords(), x.field(), &self.field) {
            Some(c) => sat.contains(&self.field, &c),
            None => false,
        }
    }

    /// Human-readable description, e.g. `ℤ[1/β]·⟨1/2⟩`.
    pub fn render(&self) -> String {
        let var = "β";
        let rational_field = self.field.degree() == 1;
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                if rational_field {
                    g.coords()[0].to_string()
                } else {
                    g.render(var)
                }
            })
            .collect();
        let ring = match &self.closure {
            Closure::None => String::new(),
            Closure::InversePerron if rational_field => {
                format!("ℤ[1/{}]·", self.field.gen().coords()[0])
            }
            Closure::InversePerron => format!("ℤ[1/{var}]·"),
            Closure::InverseDet(q) => format!("ℤ[1/{q}]·"),
        };
        let body = format!("{ring}⟨{}⟩", gens.join(", "));
        if rational_field {
            body
        } else {
            format!(
                "{body} with {var} a root of {}",
                self.field.modulus().render("x")
            )
        }
    }
}

/// Maps power-basis coordinates over `from` into `to`, if the generator of `from` lies in `to`.
fn transport(coords: &[Q], from: &NumberField, to: &NumberField) -> Option<Vec<Q>> {
    if from == to {
        return Some(coords.to_vec());
    }
    if from.degree() == 1 {
        return Some(to.from_rational(&coords[0]));
    }
    let g = to.locate(from.generator())?.into_coords();
    let mut acc = to.zero();
    for c in coords.iter().rev() {
        acc = to.add(&to.mul(&acc, &g), &to.from_rational(c));
    }
    Some(acc)
}

/// A module transported into a fixed field: lattice generators and the inverted ring element.
struct Saturated {
    gens: Vec<Vec<Q>>,
    ring: Option<Vec<Q>>,
}

impl Saturated {
    fn of(m: &EigenvalueModule, target: &NumberField) -> Option<Saturated> {
        let gens = m
            .coords()
            .iter()
            .map(|c| transport(c, &m.field, target))
            .collect::<Option<Vec<_>>>()?;
        let ring = match &m.closure {
            Closure::None => None,
            Closure::InversePerron => Some(transport(m.field.gen().coords(), &m.field, target)?),
            Closure::InverseDet(q) => Some(target.from_rational(&qb(q))),
        };
        Some(Saturated { gens, ring })
    }

    /// x ∈ ⋃ r^{−m}·L. Membership at depth m means r^m·x ∈ L; since L is stable under
    /// multiplication by r, the admissible depths form an up-set, and the search stops at a
    /// depth proportional to the size of the denominator of x in lattice coordinates.
    fn contains(&self, field: &NumberField, x: &[Q]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        let Some(mut c) = linalg::solve_left(&Rationals, &self.gens, x) else {
            return false;
        };
        let Some(r) = &self.ring else {
            return c.iter().all(|q| q.is_integer());
        };
        let images: Option<Vec<Vec<Q>>> = self
            .gens
            .iter()
            .map(|g| linalg::solve_left(&Rationals, &self.gens, &field.mul(g, r)))
            .collect();
        let Some(images) = images else { return false };
        let bits = common_denominator(&c).bits() as usize;
        let bound = 4 * field.degree() * (bits + 1) + 8;
        for _ in 0..=bound {
            if c.iter().all(|q| q.is_integer()) {
                return true;
            }
            c = (0..c.len())
                .map(|j| c.iter().zip(&images).map(|(ci, row)| ci * &row[j]).sum())
                .collect();
        }
        false
    }

    fn inverse_ring_images(&self, field: &NumberField, ring: &Option<Vec<Q>>) -> Vec<Vec<Q>> {
        match ring {
            None => Vec::new(),
            Some(r) => {
                let inv = field.inv(r).expect("closure element is non-zero");
                self.gens.iter().map(|g| field.mul(g, &inv)).collect()
            }
        }
    }
}

/// True iff the two modules are the same subset of ℝ.
pub fn module_equal(a: &EigenvalueModule, b: &EigenvalueModule) -> bool {
    let pair = [(&a.field, a, b), (&b.field, b, a)]
        .into_iter()
        .find_map(|(f, x, y)| Some((f, Saturated::of(x, f)?, Saturated::of(y, f)?)));
    let Some((field, sa, sb)) = pair else {
        return false;
    };
    let inside = |s: &Saturated, xs: &[Vec<Q>]| xs.iter().all(|x| s.contains(field, x));
    inside(&sb, &sa.gens)
        && inside(&sa, &sb.gens)
        && inside(&sb, &sb.inverse_ring_images(field, &sa.ring))
        && inside(&sa, &sa.inverse_ring_images(field, &sb.ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::AlgebraicNumber;
    use crate::exactlin::{qi, qr, RationalPolynomial};

    fn half_ring(gen: Q) -> EigenvalueModule {
        EigenvalueModule::rational(&[gen], Closure::InverseDet(BigInt::from(2)))
    }

    #[test]
    fn dyadic_rings() {
        assert!(module_equal(&half_ring(qi(1)), &half_ring(qr(1, 2))));
        assert!(!module_equal(&half_ring(qi(1)), &half_ring(qi(3))));
        assert!(module_equal(&half_ring(qi(3)), &half_ring(qi(6))));
        assert!(!module_equal(
            &half_ring(qi(1)),
            &EigenvalueModule::integers()
        ));
        assert!(!module_equal(
            &EigenvalueModule::integers(),
            &half_ring(qi(1))
        ));
        assert!(!module_equal(
            &half_ring(qi(1)),
            &EigenvalueModule::rational(&[qi(1)], Closure::InverseDet(BigInt::from(6)))
        ));
        let two = NumberField::new(AlgebraicNumber::rational(&qi(2)));
        let perron = EigenvalueModule::new(two, &[vec![qr(1, 8)]], Closure::InversePerron);
        assert!(module_equal(&perron, &half_ring(qi(1))));
    }

    #[test]
    fn golden_ring() {
        let phi = AlgebraicNumber::largest_real_root(&RationalPolynomial::from_ints(&[-1, -1, 1]))
            .unwrap();
        let f = NumberField::new(phi);
        let ring = EigenvalueModule::new(
            f.clone(),
            &[vec![qi(1), qi(0)], vec![qi(0), qi(1)]],
            Closure::None,
        );
        let other = EigenvalueModule::from_elements(
            f.clone(),
            &[f.gen().mul(&f.gen()), f.gen().add(&f.rational(&qi(2)))],
            Closure::None,
        );
        assert!(module_equal(&ring, &other));
        assert!(!module_equal(
            &ring,
            &EigenvalueModule::from_elements(
                f.clone(),
                &[f.gen().scale(&qi(2)), f.rational(&qi(1))],
                Closure::None
            )
        ));
        assert!(ring.contains(&f.gen().pow(5).unwrap()));
        assert!(!ring.contains(&f.gen().inv().unwrap().scale(&qr(1, 2))));
        let sqrt5 = NumberField::new(
            AlgebraicNumber::largest_real_root(&RationalPolynomial::from_ints(&[-5, 0, 1]))
                .unwrap(),
        );
        let phi_again = EigenvalueModule::from_elements(
            sqrt5.clone(),
            &[
                sqrt5.rational(&qi(1)),
                sqrt5.gen().add(&sqrt5.rational(&qi(1))).scale(&qr(1, 2)),
            ],
            Closure::None,
        );
        assert!(module_equal(&ring, &phi_again));
    }

    #[test]
    fn canonical_form() {
        let m = EigenvalueModule::rational(&[qr(2, 4), qr(3, 2)], Closure::None);
        assert_eq!(m.denominator(), &BigInt::from(2));
        assert_eq!(m.generators()[0].coords(), &[qr(1, 2)]);
        assert_eq!(m.render(), "⟨1/2⟩");
        assert_eq!(half_ring(qi(1)).render(), "ℤ[1/2]·⟨1⟩");
    }
}
