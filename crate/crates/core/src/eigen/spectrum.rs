use crate::algnum::{compositum, AlgebraicNumber, FieldElement, ModulusClass, NumberField};
use crate::exactlin::{
    char_min_poly, factor_poly, linalg, Field, RationalMatrix, RationalPolynomial, Q,
};
use crate::substitution::Morphism;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// One root of the minimal polynomial.
#[derive(Clone, Debug)]
pub struct SpectralEntry {
    pub value: AlgebraicNumber,
    pub class: ModulusClass,
    /// Multiplicity of the root in the minimal polynomial.
    pub multiplicity: usize,
    /// Multiplicity of the root in the characteristic polynomial.
    pub algebraic_multiplicity: usize,
}

/// Spectrum of a primitive matrix.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub char_poly: RationalPolynomial,
    pub min_poly: RationalPolynomial,
    pub eigenvalues: Vec<SpectralEntry>,
    pub perron: AlgebraicNumber,
}

impl SpectralData {
    /// Roots of modulus at least one, the Perron root first.
    pub fn noncontracting(&self) -> Vec<&SpectralEntry> {
        let mut out: Vec<&SpectralEntry> = self
            .eigenvalues
            .iter()
            .filter(|e| e.class.is_noncontracting())
            .collect();
        let p = out
            .iter()
            .position(|e| e.value.same(&self.perron))
            .expect("Perron root is non-contracting");
        let perron = out.remove(p);
        out.insert(0, perron);
        out
    }

    /// Product of the non-zero roots of the characteristic polynomial is ±1.
    pub fn is_pseudo_unimodular(&self) -> bool {
        let c = self.char_poly.coeffs();
        let low = c
            .iter()
            .position(|x| !x.is_zero())
            .expect("non-zero polynomial");
        (&c[low] / self.char_poly.lc()).abs().is_one()
    }

    /// Total dimension of the generalized eigenspaces of the non-contracting roots.
    pub fn noncontracting_dimension(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|e| e.class.is_noncontracting())
            .map(|e| e.algebraic_multiplicity)
            .sum()
    }
}

/// True iff the matrix is non-negative and some power is strictly positive.
pub fn is_primitive_matrix(m: &RationalMatrix) -> bool {
    if !m.is_square() || m.data().iter().flatten().any(|x| x.is_negative()) {
        return false;
    }
    let n = m.rows();
    let pattern: Vec<Vec<bool>> = m
        .data()
        .iter()
        .map(|r| r.iter().map(|x| !x.is_zero()).collect())
        .collect();
    let mut cur = pattern.clone();
    for _ in 0..(n - 1) * (n - 1) + 1 {
        if cur.iter().flatten().all(|&b| b) {
            return true;
        }
        cur = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|k| cur[i][k] && pattern[k][j]))
                    .collect()
            })
            .collect();
    }
    cur.iter().flatten().all(|&b| b)
}

/// Factors the characteristic and minimal polynomials, classifies every root against the
/// unit circle and singles out the Perron root.
pub fn spectral_data(m: &RationalMatrix) -> Result<SpectralData> {
    if !is_primitive_matrix(m) || m.to_integer_rows().is_none() {
        return Err(Error::NotPrimitive);
    }
    let (chi, mu) = char_min_poly(m);
    let char_factors = factor_poly(&chi);
    let mut eigenvalues = Vec::new();
    let mut perron: Option<AlgebraicNumber> = None;
    for (f, e) in factor_poly(&mu) {
        let alg = char_factors
            .iter()
            .find(|(g, _)| g.monic() == f.monic())
            .map_or(e, |(_, a)| *a);
        let roots = AlgebraicNumber::roots_of_irreducible(&f);
        for r in &roots {
            eigenvalues.push(SpectralEntry {
                value: r.clone(),
                class: r.modulus_class(),
                multiplicity: e,
                algebraic_multiplicity: alg,
            });
        }
        if let Some(top) = AlgebraicNumber::largest_real_root(&f) {
            if perron
                .as_ref()
                .is_none_or(|p| top.approx().0 > p.approx().0)
            {
                perron = Some(top);
            }
        }
    }
    let perron = perron.ok_or(Error::NotPrimitive)?;
    Ok(SpectralData {
        char_poly: chi,
        min_poly: mu,
        eigenvalues,
        perron,
    })
}

/// Generalized eigenspace of one non-contracting root, with columns over the common field.
#[derive(Clone, Debug)]
pub struct NonContractingBlock {
    pub eigenvalue: AlgebraicNumber,
    pub class: ModulusClass,
    pub multiplicity: usize,
    /// The root as an element of the common field.
    pub value: FieldElement,
    pub(crate) columns: Vec<Vec<Vec<Q>>>,
}

impl NonContractingBlock {
    pub fn columns(&self, field: &NumberField) -> Vec<Vec<FieldElement>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|x| field.element(x.clone())).collect())
            .collect()
    }
}

/// Bases of the generalized right eigenspaces for all roots of modulus ≥ 1, expressed over a
/// single number field containing every such root.
#[derive(Clone, Debug)]
pub struct NonContractingBasis {
    pub field: NumberField,
    pub blocks: Vec<NonContractingBlock>,
}

impl NonContractingBasis {
    /// All columns of V, block after block.
    pub fn raw_columns(&self) -> Vec<&Vec<Vec<Q>>> {
        self.blocks.iter().flat_map(|b| b.columns.iter()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.columns.len()).sum()
    }
}

pub(crate) fn lift_matrix(field: &NumberField, m: &RationalMatrix) -> Vec<Vec<Vec<Q>>> {
    m.data()
        .iter()
        .map(|r| r.iter().map(|x| field.from_rational(x)).collect())
        .collect()
}

fn shifted_power(
    field: &NumberField,
    m: &RationalMatrix,
    beta: &[Q],
    power: usize,
) -> Vec<Vec<Vec<Q>>> {
    let n = m.rows();
    let mut a = lift_matrix(field, m);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = field.sub(&row[i], &beta.to_vec());
    }
    let mut out = a.clone();
    for _ in 1..power {
        out = linalg::mat_mul(field, &out, &a, n);
    }
    out
}

/// Kernel of (M − β)^m over the compositum, for every root β of modulus ≥ 1.
pub fn noncontracting_basis(m: &RationalMatrix, s: &SpectralData) -> NonContractingBasis {
    let entries = s.noncontracting();
    let values: Vec<AlgebraicNumber> = entries.iter().map(|e| e.value.clone()).collect();
    let (field, images) = compositum(&values);
    let blocks = entries
        .iter()
        .zip(images)
        .map(|(e, value)| {
            let a = shifted_power(&field, m, value.coords(), e.multiplicity);
            let columns = linalg::right_kernel(&field, &a, m.cols());
            NonContractingBlock {
                eigenvalue: e.value.clone(),
                class: e.class,
                multiplicity: e.multiplicity,
                value,
                columns,
            }
        })
        .collect();
    NonContractingBasis { field, blocks }
}

/// Right Perron eigenvector of M_σ over ℚ(β_P), scaled so that (1…1)·M_τ·v = 1.
pub fn perron_vector(
    sigma: &Morphism,
    tau: &Morphism,
    s: &SpectralData,
) -> Result<Vec<FieldElement>> {
    let field = NumberField::new(s.perron.clone());
    let m = sigma.abelianization();
    let a = shifted_power(&field, &m, field.gen().coords(), 1);
    let kernel = linalg::right_kernel(&field, &a, m.cols());
    let [v] = kernel.as_slice() else {
        return Err(Error::Certification(
            "Perron eigenspace is not one-dimensional".into(),
        ));
    };
    let mut norm = field.zero();
    for (len, x) in tau.images().iter().map(Vec::len).zip(v) {
        norm = field.add(
            &norm,
            &field.mul(&field.from_rational(&Q::from_integer(len.into())), x),
        );
    }
    let inv = field.inv(&norm).ok_or(Error::DivisionByZero)?;
    let v: Vec<FieldElement> = v
        .iter()
        .map(|x| field.element(field.mul(x, &inv)))
        .collect();
    if v.iter().any(|x| x.embed_numeric(64).re.lo <= Q::zero()) {
        return Err(Error::Certification("Perron vector is not positive".into()));
    }
    Ok(v)
}
