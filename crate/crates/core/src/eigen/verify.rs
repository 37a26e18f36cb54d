use super::pipeline::{kernel_in_span, length_row};
use super::spectrum::{spectral_data, NonContractingBasis, NonContractingBlock, SpectralData};
use crate::algnum::{compositum, FieldElement, NumberField};
use crate::exactlin::{linalg, qb, solve_integer, Field, RationalMatrix, Q};
use crate::returns::{coboundary_space, return_words};
use crate::substitution::{growing_seed, Morphism};
use crate::Result;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A certificate that t is an eigenvalue: (t·(1…1)·M_τ·M_σᵏ + c − w)·v′ = 0 for every
/// generalized eigenvector v′ of modulus ≥ 1, with c a coboundary and w integral.
#[derive(Clone, Debug)]
pub struct EigenvalueWitness {
    pub k: usize,
    pub w: Vec<BigInt>,
    /// The coboundary c, with entries in the field of the check.
    pub c: Vec<FieldElement>,
    /// The identity was re-evaluated exactly against all columns and found to vanish.
    pub residual_zero: bool,
}

#[derive(Clone, Debug)]
pub enum Verification {
    Witness(EigenvalueWitness),
    NotFound { k_max: usize },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Witness(w) if w.residual_zero)
    }
}

/// Non-contracting basis over a field that also contains `t`, with t expressed there.
fn basis_containing(
    m: &RationalMatrix,
    s: &SpectralData,
    t: &FieldElement,
) -> (NonContractingBasis, Vec<Q>) {
    let entries = s.noncontracting();
    let mut numbers: Vec<_> = entries.iter().map(|e| e.value.clone()).collect();
    numbers.push(t.field().generator().clone());
    let (field, images) = compositum(&numbers);
    let g = images.last().expect("generator of t").coords().to_vec();
    let mut tk = field.zero();
    for c in t.coords().iter().rev() {
        tk = field.add(&field.mul(&tk, &g), &field.from_rational(c));
    }
    let blocks = entries
        .iter()
        .zip(images)
        .map(|(e, value)| {
            let mut a = super::spectrum::lift_matrix(&field, m);
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = field.sub(&row[i], &value.coords().to_vec());
            }
            let mut p = a.clone();
            for _ in 1..e.multiplicity {
                p = linalg::mat_mul(&field, &p, &a, m.rows());
            }
            NonContractingBlock {
                eigenvalue: e.value.clone(),
                class: e.class,
                multiplicity: e.multiplicity,
                value,
                columns: linalg::right_kernel(&field, &p, m.cols()),
            }
        })
        .collect();
    (NonContractingBasis { field, blocks }, tk)
}

fn apply_to_columns(field: &NumberField, u: &[Vec<Q>], cols: &[&Vec<Vec<Q>>]) -> Vec<Vec<Q>> {
    cols.iter()
        .map(|c| {
            u.iter().zip(c.iter()).fold(field.zero(), |acc, (x, y)| {
                field.add(&acc, &field.mul(x, y))
            })
        })
        .collect()
}

/// Searches k ≤ k_max for a witness of the eigenvalue criterion.
pub fn verify_eigenvalue_with(
    t: &FieldElement,
    sigma: &Morphism,
    tau: &Morphism,
    k_max: usize,
) -> Result<Verification> {
    let m = sigma.abelianization();
    let s = spectral_data(&m)?;
    let (v, tk) = basis_containing(&m, &s, t);
    let field = v.field.clone();
    let d = m.rows();
    let cob: Vec<Vec<Q>> = coboundary_space(sigma)?.basis().to_vec();
    let test_vectors = kernel_in_span(&cob, &v);
    let deg = field.degree();
    let equations: Vec<Vec<BigInt>> = test_vectors
        .iter()
        .flat_map(|u| (0..deg).map(move |s| u.iter().map(|x| x[s].clone()).collect::<Vec<Q>>()))
        .map(|row| scale_to_integers(&row).0)
        .collect();
    let denominators: Vec<BigInt> = test_vectors
        .iter()
        .flat_map(|u| (0..deg).map(move |s| u.iter().map(|x| x[s].clone()).collect::<Vec<Q>>()))
        .map(|row| scale_to_integers(&row).1)
        .collect();
    let cols = v.raw_columns();
    let cob_v: Vec<Vec<Vec<Q>>> = cob
        .iter()
        .map(|r| apply_to_columns(&field, &lift_row(&field, r), &cols))
        .collect();
    let mut row = length_row(tau);
    for k in 0..=k_max {
        let u: Vec<Vec<Q>> = row
            .iter()
            .map(|x| field.mul(&tk, &field.from_rational(x)))
            .collect();
        let rhs: Option<Vec<BigInt>> = test_vectors
            .iter()
            .flat_map(|tv| {
                let val = tv.iter().zip(&u).fold(field.zero(), |acc, (a, b)| {
                    field.add(&acc, &field.mul(a, b))
                });
                (0..deg).map(move |s| val[s].clone())
            })
            .zip(&denominators)
            .map(|(x, den)| {
                let y = x * qb(den);
                y.is_integer().then(|| y.to_integer())
            })
            .collect();
        if let Some(w) = rhs.and_then(|b| solve_integer(&equations, d, &b)) {
            let wq = lift_row(&field, &w.iter().map(qb).collect::<Vec<Q>>());
            let diff: Vec<Vec<Q>> = u.iter().zip(&wq).map(|(a, b)| field.sub(a, b)).collect();
            let target: Vec<Vec<Q>> = apply_to_columns(&field, &diff, &cols)
                .iter()
                .map(|x| field.neg(x))
                .collect();
            let lambda = if cob.is_empty() {
                Some(Vec::new())
            } else {
                linalg::solve_left(&field, &cob_v, &target)
            };
            let c: Vec<Vec<Q>> = match &lambda {
                Some(l) => (0..d)
                    .map(|a| {
                        l.iter().zip(&cob).fold(field.zero(), |acc, (li, r)| {
                            field.add(&acc, &field.mul(li, &field.from_rational(&r[a])))
                        })
                    })
                    .collect(),
                None => vec![field.zero(); d],
            };
            let total: Vec<Vec<Q>> = diff.iter().zip(&c).map(|(a, b)| field.add(a, b)).collect();
            let residual_zero = lambda.is_some()
                && apply_to_columns(&field, &total, &cols)
                    .iter()
                    .all(|x| field.is_zero(x));
            return Ok(Verification::Witness(EigenvalueWitness {
                k,
                w,
                c: c.into_iter().map(|x| field.element(x)).collect(),
                residual_zero,
            }));
        }
        row = m.left_apply(&row);
    }
    Ok(Verification::NotFound { k_max })
}

/// [`verify_eigenvalue_with`] with the default bound k ≤ |𝓐| + 4.
pub fn verify_eigenvalue(
    t: &FieldElement,
    sigma: &Morphism,
    tau: &Morphism,
) -> Result<Verification> {
    verify_eigenvalue_with(t, sigma, tau, sigma.domain().len() + 4)
}

fn lift_row(field: &NumberField, r: &[Q]) -> Vec<Vec<Q>> {
    r.iter().map(|x| field.from_rational(x)).collect()
}

fn scale_to_integers(row: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = crate::exactlin::common_denominator(row);
    (
        row.iter().map(|x| (x * qb(&den)).to_integer()).collect(),
        den,
    )
}

/// Distances to ℤ of t·|τσⁿ(r)| over the return words r on the seed letter.
#[derive(Clone, Debug)]
pub struct BoundednessReport {
    /// Maximum over return words at each level n = 0, 1, ….
    pub deviations: Vec<f64>,
}

impl BoundednessReport {
    /// Deviation at the deepest level.
    pub fn final_deviation(&self) -> f64 {
        *self.deviations.last().unwrap_or(&0.0)
    }

    /// Largest deviation over the last half of the levels.
    pub fn tail_deviation(&self) -> f64 {
        let half = self.deviations.len() / 2;
        self.deviations[half..].iter().cloned().fold(0.0, f64::max)
    }
}

fn distance_to_integer(x: &FieldElement, bits: u32) -> f64 {
    let b = x.embed_numeric(bits);
    let mid = (&b.re.lo + &b.re.hi) / Q::from_integer(2.into());
    let frac = &mid - mid.round();
    let f = frac.abs();
    f.numer().to_string().parse::<f64>().unwrap_or(0.0)
        / f.denom().to_string().parse::<f64>().unwrap_or(1.0)
}

/// Empirical oracle: along the return words r on the seed letter, the values t·|τσⁿ(r)|
/// approach ℤ when t is an eigenvalue, while non-eigenvalues keep a positive distance.
pub fn boundedness_check(
    t: &FieldElement,
    sigma: &Morphism,
    tau: &Morphism,
    levels: usize,
) -> Result<BoundednessReport> {
    let (k, a) = growing_seed(sigma)?;
    let returns = return_words(&sigma.pow(k)?, a)?;
    let m = sigma.abelianization();
    let row = length_row(tau);
    let mut vectors: Vec<Vec<Q>> = returns
        .iter()
        .map(|r| {
            let mut v = vec![Q::zero(); m.rows()];
            for &b in r {
                v[b] += Q::from_integer(1.into());
            }
            v
        })
        .collect();
    let mut deviations = Vec::with_capacity(levels);
    for _ in 0..levels {
        let mut worst: f64 = 0.0;
        for v in &vectors {
            let len: Q = row.iter().zip(v).map(|(x, y)| x * y).sum();
            let bits = 64 + len.numer().bits() as u32;
            worst = worst.max(distance_to_integer(&t.scale(&len), bits));
        }
        deviations.push(worst);
        vectors = vectors.iter().map(|v| m.apply(v)).collect();
    }
    Ok(BoundednessReport { deviations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::AlgebraicNumber;
    use crate::exactlin::{qi, qr, RationalPolynomial};

    fn m(letters: &str, images: &[&str]) -> Morphism {
        Morphism::from_images(letters, images).unwrap()
    }

    fn rat(x: Q) -> FieldElement {
        NumberField::rationals().rational(&x)
    }

    #[test]
    fn integers_and_dyadics() {
        let tm = m("ab", &["ab", "ba"]);
        let id = Morphism::identity(tm.domain());
        let Verification::Witness(w) = verify_eigenvalue(&rat(qi(1)), &tm, &id).unwrap() else {
            panic!()
        };
        assert_eq!(w.k, 0);
        assert_eq!(&w.w[0] + &w.w[1], BigInt::from(2));
        assert!(w.residual_zero);
        let Verification::Witness(h) = verify_eigenvalue(&rat(qr(1, 2)), &tm, &id).unwrap() else {
            panic!()
        };
        assert_eq!(h.k, 0);
        assert_eq!(&h.w[0] + &h.w[1], BigInt::from(1));
        assert!(h.residual_zero);
        assert!(!verify_eigenvalue(&rat(qr(1, 3)), &tm, &id)
            .unwrap()
            .is_verified());
    }

    #[test]
    fn golden_ratio_with_coboundary() {
        let s = m("abc", &["aba", "cb", "cba"]);
        let phi = AlgebraicNumber::largest_real_root(&RationalPolynomial::from_ints(&[-1, -1, 1]))
            .unwrap();
        let f = NumberField::new(phi);
        let id = Morphism::identity(s.domain());
        assert!(verify_eigenvalue(&f.gen(), &s, &id).unwrap().is_verified());
        assert!(!verify_eigenvalue(&f.gen().scale(&qr(1, 2)), &s, &id)
            .unwrap()
            .is_verified());
    }

    #[test]
    fn oracle_separates() {
        let tm = m("ab", &["ab", "ba"]);
        let id = Morphism::identity(tm.domain());
        assert_eq!(
            boundedness_check(&rat(qi(1)), &tm, &id, 10)
                .unwrap()
                .tail_deviation(),
            0.0
        );
        assert_eq!(
            boundedness_check(&rat(qr(1, 2)), &tm, &id, 10)
                .unwrap()
                .final_deviation(),
            0.0
        );
        let third = boundedness_check(&rat(qr(1, 3)), &tm, &id, 10).unwrap();
        assert!(third.tail_deviation() > 0.3);
    }
}
