//! Factorization over a number field by norms, and the Galois orbits of pairs of algebraic
//! numbers that this factorization induces.
//!
//! For a squarefree p ∈ ℚ[x] and K = ℚ(γ), pick a small integer k such that
//! N(x) = ∏ᵢ p(x − kγᵢ) is squarefree. N is the characteristic polynomial of
//! C_p ⊗ I + k·I ⊗ C_γ, so its roots are δⱼ + kγᵢ. Every irreducible factor Nₗ of N over ℚ
//! gives the irreducible factor gcd(p(x), Nₗ(x + kγ)) of p over K, and the pair (γᵢ, δⱼ)
//! is carried by the Galois group exactly within the set of pairs sharing the same ℓ.

use super::interval::CBox;
use super::number::AlgebraicNumber;
use super::numfield::{FieldElement, NumberField};
use crate::exactlin::{
    char_poly, irreducible_factors, polyops, qi, Field, RationalMatrix, RationalPolynomial, Q,
};
use std::fmt;

/// A monic polynomial with coefficients in a number field (ascending order).
#[derive(Clone, PartialEq)]
pub struct FieldPolynomial {
    pub(crate) field: NumberField,
    pub(crate) coeffs: Vec<Vec<Q>>,
}

impl FieldPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs
            .iter()
            .map(|c| self.field.element(c.clone()))
            .collect()
    }

    /// Product of a list of polynomials over the same field.
    pub fn product(field: &NumberField, polys: &[FieldPolynomial]) -> FieldPolynomial {
        let coeffs = polys.iter().fold(vec![field.one()], |acc, f| {
            polyops::mul(field, &acc, &f.coeffs)
        });
        FieldPolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// The same polynomial with rational coefficients, if it has them.
    pub fn as_rational(&self) -> Option<RationalPolynomial> {
        self.coeffs()
            .iter()
            .map(FieldElement::as_rational)
            .collect::<Option<Vec<Q>>>()
            .map(RationalPolynomial::new)
    }

    pub fn lift(field: &NumberField, p: &RationalPolynomial) -> FieldPolynomial {
        FieldPolynomial {
            field: field.clone(),
            coeffs: p.lift(field),
        }
    }
}

impl fmt::Debug for FieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})·x^{i}", c.render("γ")))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn companion(p: &RationalPolynomial) -> RationalMatrix {
    let m = p.monic();
    let n = m.degree();
    let mut c = RationalMatrix::zeros(n, n);
    for i in 1..n {
        c.set(i, i - 1, qi(1));
    }
    for i in 0..n {
        c.set(i, n - 1, -m.coeff(i));
    }
    c
}

fn kronecker_sum(a: &RationalMatrix, b: &RationalMatrix, k: i64) -> RationalMatrix {
    let (n, m) = (a.rows(), b.rows());
    let kq = qi(k);
    let mut out = RationalMatrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            for s in 0..m {
                let v = if i == j {
                    a.get(i, j) + &kq * b.get(s, s)
                } else {
                    a.get(i, j).clone()
                };
                out.set(i * m + s, j * m + s, v);
            }
        }
        for s in 0..m {
            for t in 0..m {
                if s != t {
                    out.set(i * m + s, i * m + t, &kq * b.get(s, t));
                }
            }
        }
    }
    out
}

/// Smallest shift k (in the order 0, 1, −1, 2, −2, …) making the norm of p(x − kγ)
/// squarefree, together with that norm.
pub fn squarefree_norm(
    p: &RationalPolynomial,
    gamma_minpoly: &RationalPolynomial,
) -> (i64, RationalPolynomial) {
    let (cp, cg) = (companion(p), companion(gamma_minpoly));
    (0..)
        .map(|t: i64| if t % 2 == 1 { (t + 1) / 2 } else { -t / 2 })
        .map(|k| (k, char_poly(&kronecker_sum(&cp, &cg, k))))
        .find(|(_, n)| n.is_squarefree())
        .unwrap()
}

/// Irreducible factorization over K of a squarefree rational polynomial; the factors are
/// monic and their product equals monic(p).
pub fn factor_over_field(p: &RationalPolynomial, field: &NumberField) -> Vec<FieldPolynomial> {
    if field.degree() == 1 {
        return irreducible_factors(p)
            .iter()
            .map(|f| FieldPolynomial::lift(field, &f.monic()))
            .collect();
    }
    let (k, norm) = squarefree_norm(p, field.generator().minpoly());
    let kg = field.gen().scale(&qi(k)).into_coords();
    let lifted = p.lift(field);
    irreducible_factors(&norm)
        .iter()
        .map(|nl| {
            let shifted = polyops::shift(field, &nl.lift(field), &kg);
            polyops::gcd(field, &lifted, &shifted)
        })
        .filter(|g| g.len() > 1)
        .map(|coeffs| FieldPolynomial {
            field: field.clone(),
            coeffs,
        })
        .collect()
}

/// Galois orbits on pairs (γᵢ, δⱼ) of roots of two irreducible polynomials.
pub struct PairOrbits {
    gammas: Vec<AlgebraicNumber>,
    deltas: Vec<AlgebraicNumber>,
    labels: Vec<Vec<usize>>,
}

impl PairOrbits {
    pub fn new(gamma_minpoly: &RationalPolynomial, delta_minpoly: &RationalPolynomial) -> Self {
        let gammas = AlgebraicNumber::roots_of_irreducible(gamma_minpoly);
        let deltas = AlgebraicNumber::roots_of_irreducible(delta_minpoly);
        let (k, norm) = squarefree_norm(delta_minpoly, gamma_minpoly);
        let factors = irreducible_factors(&norm);
        let kq = qi(k);
        let labels = gammas
            .iter()
            .map(|g| {
                deltas
                    .iter()
                    .map(|d| {
                        let mut prec = 64;
                        loop {
                            let z = d.enclosure(prec).add(&g.enclosure(prec).scale(&kq));
                            let hits: Vec<usize> = (0..factors.len())
                                .filter(|&l| {
                                    CBox::horner_q(factors[l].coeffs(), &z, prec + 16)
                                        .contains_zero()
                                })
                                .collect();
                            if hits.len() == 1 {
                                break hits[0];
                            }
                            prec *= 2;
                        }
                    })
                    .collect()
            })
            .collect();
        PairOrbits {
            gammas,
            deltas,
            labels,
        }
    }

    pub fn gammas(&self) -> &[AlgebraicNumber] {
        &self.gammas
    }

    pub fn deltas(&self) -> &[AlgebraicNumber] {
        &self.deltas
    }

    /// Indices (i, j) of all pairs in the orbit of (γᵢ₀, δⱼ₀).
    pub fn orbit(&self, i0: usize, j0: usize) -> Vec<(usize, usize)> {
        let l = self.labels[i0][j0];
        let mut out = Vec::new();
        for (i, row) in self.labels.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == l {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of distinct orbits.
    pub fn orbit_count(&self) -> usize {
        let mut ls: Vec<usize> = self.labels.iter().flatten().copied().collect();
        ls.sort_unstable();
        ls.dedup();
        ls.len()
    }
}

/// The Galois orbit of the pair (γ, δ).
pub fn conjugate_pairs(
    gamma: &AlgebraicNumber,
    delta: &AlgebraicNumber,
) -> Vec<(AlgebraicNumber, AlgebraicNumber)> {
    let orbits = PairOrbits::new(gamma.minpoly(), delta.minpoly());
    let i0 = orbits
        .gammas
        .iter()
        .position(|g| g.same(gamma))
        .expect("root of its minimal polynomial");
    let j0 = orbits
        .deltas
        .iter()
        .position(|d| d.same(delta))
        .expect("root of its minimal polynomial");
    orbits
        .orbit(i0, j0)
        .into_iter()
        .map(|(i, j)| (orbits.gammas[i].clone(), orbits.deltas[j].clone()))
        .collect()
}

/// A number field containing every given algebraic number, together with each number
/// expressed in it. The field is built by adjoining the numbers one at a time through
/// primitive elements α + kθ.
pub fn compositum(numbers: &[AlgebraicNumber]) -> (NumberField, Vec<FieldElement>) {
    let mut field = match numbers.first() {
        Some(a) => NumberField::new(a.clone()),
        None => NumberField::rationals(),
    };
    for alpha in numbers.iter().skip(1) {
        if field.locate(alpha).is_some() {
            continue;
        }
        let theta = field.generator().clone();
        let (k, norm) = squarefree_norm(alpha.minpoly(), theta.minpoly());
        let candidates: Vec<AlgebraicNumber> = AlgebraicNumber::roots_of(&norm);
        let kq = qi(k);
        let mut prec = 64;
        let generator = loop {
            let z = alpha.enclosure(prec).add(&theta.enclosure(prec).scale(&kq));
            let hits: Vec<&AlgebraicNumber> = candidates
                .iter()
                .filter(|r| r.enclosure(prec).overlaps(&z))
                .collect();
            if hits.len() == 1 {
                break hits[0].clone();
            }
            prec *= 2;
        };
        field = NumberField::new(generator);
    }
    let images = numbers
        .iter()
        .map(|a| {
            field
                .locate(a)
                .expect("adjoined numbers lie in the compositum")
        })
        .collect();
    (field, images)
}
