use super::module::{Closure, EigenvalueModule};
use super::spectrum::{
    noncontracting_basis, perron_vector, spectral_data, NonContractingBasis, SpectralData,
};
use crate::algnum::{FieldElement, NumberField};
use crate::exactlin::{
    eventual_left_image, lattice_meet_subspace, left_nilspace, linalg, qi, Field, IntegerLattice,
    RationalMatrix, RationalSubspace, Q,
};
use crate::recog::{recognizable, RecognizabilityVerdict};
use crate::returns::{coboundary_space, is_periodic};
use crate::substitution::Morphism;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The matrix C: first row (1…1)·M_τ, then a basis of the coboundary space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintMatrix {
    rows: Vec<Vec<Q>>,
}

impl ConstraintMatrix {
    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn first_row(&self) -> &[Q] {
        &self.rows[0]
    }

    pub fn coboundary_rows(&self) -> &[Vec<Q>] {
        &self.rows[1..]
    }

    pub fn as_matrix(&self) -> RationalMatrix {
        RationalMatrix::with_shape(self.rows.len(), self.rows[0].len(), self.rows.clone())
    }
}

/// Lengths |τ(a)|, i.e. the row (1…1)·M_τ.
pub fn length_row(tau: &Morphism) -> Vec<Q> {
    tau.images().iter().map(|w| qi(w.len() as i64)).collect()
}

fn check_tau(sigma: &Morphism, tau: &Morphism) -> Result<()> {
    if tau.domain() != sigma.domain() {
        return Err(Error::AlphabetMismatch(
            "τ must be defined on the alphabet of σ".into(),
        ));
    }
    Ok(())
}

pub fn build_c(sigma: &Morphism, tau: &Morphism) -> Result<ConstraintMatrix> {
    sigma.require_primitive()?;
    check_tau(sigma, tau)?;
    let mut rows = vec![length_row(tau)];
    rows.extend(coboundary_space(sigma)?.basis().iter().cloned());
    Ok(ConstraintMatrix { rows })
}

fn dot(field: &NumberField, row: &[Q], col: &[Vec<Q>]) -> Vec<Q> {
    row.iter()
        .zip(col)
        .filter(|(r, _)| !r.is_zero())
        .fold(field.zero(), |acc, (r, x)| {
            field.add(&acc, &field.mul(&field.from_rational(r), x))
        })
}

fn products(rows: &[Vec<Q>], v: &NonContractingBasis) -> Vec<Vec<Vec<Q>>> {
    let cols = v.raw_columns();
    rows.iter()
        .map(|r| cols.iter().map(|c| dot(&v.field, r, c)).collect())
        .collect()
}

/// The matrix C·V over the common field of V.
pub fn constraint_products(
    c: &ConstraintMatrix,
    v: &NonContractingBasis,
) -> Vec<Vec<FieldElement>> {
    products(&c.rows, v)
        .into_iter()
        .map(|r| r.into_iter().map(|x| v.field.element(x)).collect())
        .collect()
}

/// Vectors V·y with (rows·V)·y = 0, i.e. a basis of ker(rows) ∩ span(V) over the common field.
pub(crate) fn kernel_in_span(rows: &[Vec<Q>], v: &NonContractingBasis) -> Vec<Vec<Vec<Q>>> {
    let field = &v.field;
    let cols = v.raw_columns();
    let d = cols.first().map_or(0, |c| c.len());
    let ys: Vec<Vec<Vec<Q>>> = if rows.is_empty() {
        (0..cols.len())
            .map(|j| {
                (0..cols.len())
                    .map(|i| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect()
    } else {
        linalg::right_kernel(field, &products(rows, v), cols.len())
    };
    ys.iter()
        .map(|y| {
            (0..d)
                .map(|a| {
                    y.iter().zip(&cols).fold(field.zero(), |acc, (yi, c)| {
                        field.add(&acc, &field.mul(yi, &c[a]))
                    })
                })
                .collect()
        })
        .collect()
}

/// W = ℚ^𝓐 ∩ (ker C ∩ span V)°: the rational row vectors annihilating every vector of
/// ker C ∩ span V. Each such vector has entries in the common field, so annihilation by a
/// rational w splits into one rational equation per power-basis coordinate.
pub fn compute_w(c: &ConstraintMatrix, v: &NonContractingBasis) -> RationalSubspace {
    let d = c.first_row().len();
    let deg = v.field.degree();
    let equations: Vec<Vec<Q>> = kernel_in_span(&c.rows, v)
        .iter()
        .flat_map(|u| (0..deg).map(move |s| u.iter().map(|x| x[s].clone()).collect::<Vec<Q>>()))
        .collect();
    RationalSubspace::span(d, &equations).annihilator()
}

/// How Δ_M is handled when assembling the module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCase {
    /// Product of non-zero eigenvalues is ±1: Δ_M = ℤ^𝓐 modulo the nilspace.
    PseudoUnimodular,
    /// (1…1)·M_τ is a left eigenvector of M_σ.
    LeftEigenRow,
    /// C·V is square and invertible.
    InvertibleCV,
    /// W·M_σ = W modulo the left nilspace of M_σ.
    InvariantW,
    /// Some power of M_σ vanishes modulo det M_σ.
    DetNilpotent,
    /// Stage-by-stage computation of ⋃ₙ (W·Mⁿ ∩ ℤ^𝓐)·v/βⁿ.
    GeneralFallback(Stabilization),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// Stages n and n+1 coincide.
    At(usize),
    /// No two consecutive stages up to the depth bound coincide.
    Unstabilized,
}

/// Smallest n ≤ dim with Mⁿ ≡ 0 mod det M, for |det M| > 1.
fn det_nilpotent(m: &RationalMatrix) -> Option<(BigInt, usize)> {
    let det = m.determinant().to_integer();
    if det.abs() <= BigInt::one() {
        return None;
    }
    let mut p = m.clone();
    for n in 1..=m.rows() {
        if p.data()
            .iter()
            .flatten()
            .all(|x| (x.to_integer() % &det).is_zero())
        {
            return Some((det.abs(), n));
        }
        p = p.mul(m);
    }
    None
}

fn is_left_eigenvector(m: &RationalMatrix, row: &[Q]) -> bool {
    let image = m.left_apply(row);
    RationalSubspace::span(row.len(), &[row.to_vec()]).contains(&image)
}

fn is_invariant(m: &RationalMatrix, w: &RationalSubspace) -> bool {
    let image = w.left_image(m);
    w.contains_space(&image) && image.sum(&left_nilspace(m)).contains_space(w)
}

enum Dispatch {
    Direct(DeltaCase, Closure),
    Fallback,
}

fn dispatch(
    s: &SpectralData,
    m: &RationalMatrix,
    row: &[Q],
    w: &RationalSubspace,
    rows_of_c: usize,
) -> Dispatch {
    if s.is_pseudo_unimodular() {
        return Dispatch::Direct(DeltaCase::PseudoUnimodular, Closure::None);
    }
    if is_left_eigenvector(m, row) {
        return Dispatch::Direct(DeltaCase::LeftEigenRow, Closure::InversePerron);
    }
    if s.noncontracting_dimension() == rows_of_c && w.dim() == w.ambient() {
        return Dispatch::Direct(DeltaCase::InvertibleCV, Closure::InversePerron);
    }
    if is_invariant(m, w) {
        return Dispatch::Direct(DeltaCase::InvariantW, Closure::InversePerron);
    }
    if let Some((det, _)) = det_nilpotent(m) {
        return Dispatch::Direct(DeltaCase::DetNilpotent, Closure::InverseDet(det));
    }
    Dispatch::Fallback
}

/// Values w·v for a basis w of the lattice W ∩ ℤ^𝓐 (or any sublattice given by rows).
fn evaluate(lattice: &IntegerLattice, v: &[FieldElement]) -> Vec<FieldElement> {
    lattice
        .basis()
        .iter()
        .map(|b| {
            b.iter()
                .zip(v)
                .filter(|(x, _)| !x.is_zero())
                .fold(v[0].field().rational(&Q::zero()), |acc, (x, vi)| {
                    acc.add(&vi.scale(&Q::from_integer(x.clone())))
                })
        })
        .collect()
}

fn integer_points(w: &RationalSubspace) -> IntegerLattice {
    lattice_meet_subspace(&IntegerLattice::standard(w.ambient()), w)
}

/// Stages Λₙ·v = (Sₙ ∩ ℤ^𝓐)·v/βⁿ with Sₙ = (W ∩ I)·Mⁿ, I the eventual left image. The
/// vector u ∈ W ∩ I with u·Mⁿ = z satisfies u·v = z·v/βⁿ, so no inverse is needed.
fn fallback_stages(
    m: &RationalMatrix,
    w: &RationalSubspace,
    v: &[FieldElement],
    depth: usize,
) -> (Vec<EigenvalueModule>, Stabilization) {
    let field = v[0].field().clone();
    let beta_inv = field.gen().inv().expect("Perron root is non-zero");
    let mut s = w.intersect(&eventual_left_image(m));
    let mut scale = field.rational(&Q::one());
    let mut stages: Vec<EigenvalueModule> = Vec::new();
    for n in 0..=depth {
        let gens: Vec<FieldElement> = evaluate(&integer_points(&s), v)
            .iter()
            .map(|g| g.mul(&scale))
            .collect();
        let stage = EigenvalueModule::from_elements(field.clone(), &gens, Closure::None);
        if let Some(prev) = stages.last() {
            if super::module::module_equal(prev, &stage) {
                stages.push(stage);
                return (stages, Stabilization::At(n - 1));
            }
        }
        stages.push(stage);
        s = s.left_image(m);
        scale = scale.mul(&beta_inv);
    }
    (stages, Stabilization::Unstabilized)
}

/// Options of the eigenvalue pipeline.
#[derive(Clone, Debug)]
pub struct EigenOptions {
    /// Largest window radius tried by the recognizability search.
    pub max_window: usize,
    /// Depth of the general Δ computation; `None` means 2·|𝓐|.
    pub fallback_depth: Option<usize>,
    /// Skip the recognizability search and assume τ is recognizable.
    pub assume_recognizable: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            max_window: 16,
            fallback_depth: None,
            assume_recognizable: false,
        }
    }
}

/// How recognizability of the directive sequence was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecognizabilityStatus {
    Verified {
        window: usize,
    },
    Assumed,
    /// σ and τ unimodular with an aperiodic shift.
    UnimodularShortcut,
    Unknown {
        max_window_tried: usize,
    },
}

fn is_unimodular(m: &RationalMatrix) -> bool {
    m.is_square() && m.determinant().abs().is_one()
}

/// Recognizability of τ in the subshift of σ as used by the pipeline: assumed on request,
/// granted when σ and τ are unimodular, otherwise searched up to the window bound.
pub fn recognizability_status(
    sigma: &Morphism,
    tau: &Morphism,
    opts: &EigenOptions,
) -> Result<RecognizabilityStatus> {
    if opts.assume_recognizable {
        return Ok(RecognizabilityStatus::Assumed);
    }
    if is_unimodular(&sigma.abelianization()) && is_unimodular(&tau.abelianization()) {
        return Ok(RecognizabilityStatus::UnimodularShortcut);
    }
    Ok(match recognizable(sigma, tau, opts.max_window)? {
        RecognizabilityVerdict::Recognizable { window } => {
            RecognizabilityStatus::Verified { window }
        }
        RecognizabilityVerdict::Unknown { max_window_tried } => {
            RecognizabilityStatus::Unknown { max_window_tried }
        }
    })
}

/// Every intermediate object of the computation together with the resulting module.
#[derive(Clone, Debug)]
pub struct EigenvalueReport {
    pub spectral: SpectralData,
    pub basis: NonContractingBasis,
    pub constraints: ConstraintMatrix,
    pub cv: Vec<Vec<FieldElement>>,
    pub w: RationalSubspace,
    pub perron_vector: Vec<FieldElement>,
    pub case: DeltaCase,
    pub module: EigenvalueModule,
    /// Stages of the general computation (empty unless the fallback ran).
    pub stages: Vec<EigenvalueModule>,
    pub recognizability: RecognizabilityStatus,
    /// When recognizability is unknown, the eigenvalues lie between this module and
    /// [`Self::module`].
    pub lower_bound: Option<EigenvalueModule>,
}

/// The full pipeline: C, V, W, v, the Δ case and the eigenvalue module.
pub fn analyze(sigma: &Morphism, tau: &Morphism, opts: &EigenOptions) -> Result<EigenvalueReport> {
    sigma.require_primitive()?;
    check_tau(sigma, tau)?;
    if is_periodic(sigma)? {
        return Err(Error::Periodic);
    }
    let recognizability = recognizability_status(sigma, tau, opts)?;
    let m = sigma.abelianization();
    let spectral = spectral_data(&m)?;
    let basis = noncontracting_basis(&m, &spectral);
    let constraints = build_c(sigma, tau)?;
    let cv = constraint_products(&constraints, &basis);
    let w = compute_w(&constraints, &basis);
    let v = perron_vector(sigma, tau, &spectral)?;
    let field = v[0].field().clone();
    let base = evaluate(&integer_points(&w), &v);
    let mut stages = Vec::new();
    let (case, module) = match dispatch(
        &spectral,
        &m,
        constraints.first_row(),
        &w,
        constraints.rows().len(),
    ) {
        Dispatch::Direct(case, closure) => (
            case,
            EigenvalueModule::from_elements(field.clone(), &base, closure),
        ),
        Dispatch::Fallback => {
            let depth = opts.fallback_depth.unwrap_or(2 * m.rows());
            let (st, stab) = fallback_stages(&m, &w, &v, depth);
            let last = st.last().expect("at least one stage").clone();
            stages = st;
            (DeltaCase::GeneralFallback(stab), last)
        }
    };
    let lower_bound = matches!(recognizability, RecognizabilityStatus::Unknown { .. })
        .then(|| EigenvalueModule::from_elements(field, &base, Closure::None));
    Ok(EigenvalueReport {
        spectral,
        basis,
        constraints,
        cv,
        w,
        perron_vector: v,
        case,
        module,
        stages,
        recognizability,
        lower_bound,
    })
}

/// The Δ case selected for (σ, τ) with the space W.
pub fn delta_case(sigma: &Morphism, tau: &Morphism, w: &RationalSubspace) -> Result<DeltaCase> {
    let m = sigma.abelianization();
    let spectral = spectral_data(&m)?;
    let c = build_c(sigma, tau)?;
    Ok(
        match dispatch(&spectral, &m, c.first_row(), w, c.rows().len()) {
            Dispatch::Direct(case, _) => case,
            Dispatch::Fallback => {
                let v = perron_vector(sigma, tau, &spectral)?;
                DeltaCase::GeneralFallback(fallback_stages(&m, w, &v, 2 * m.rows()).1)
            }
        },
    )
}

/// The group of additive eigenvalues of the subshift generated by τσ^ω.
pub fn eigenvalue_module(sigma: &Morphism, tau: &Morphism) -> Result<EigenvalueModule> {
    Ok(analyze(sigma, tau, &EigenOptions::default())?.module)
}

#[cfg(test)]
mod tests {
    use super::super::module::module_equal;
    use super::*;
    use crate::exactlin::qr;

    fn m(letters: &str, images: &[&str]) -> Morphism {
        Morphism::from_images(letters, images).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn id(s: &Morphism) -> Morphism {
        Morphism::identity(s.domain())
    }

    fn dyadic(q: i64) -> EigenvalueModule {
        EigenvalueModule::rational(&[qi(1)], Closure::InverseDet(BigInt::from(q)))
    }

    #[test]
    fn thue_morse() {
        let tm = m("ab", &["ab", "ba"]);
        let r = analyze(&tm, &id(&tm), &EigenOptions::default()).unwrap();
        assert_eq!(r.constraints.rows(), &[q(&[1, 1])]);
        assert_eq!(r.w, RationalSubspace::full(2));
        assert_eq!(r.case, DeltaCase::LeftEigenRow);
        assert!(module_equal(&r.module, &dyadic(2)));
    }

    #[test]
    fn constant_length_with_coboundary() {
        let s = m("abc", &["aca", "acb", "cbc"]);
        let r = analyze(&s, &id(&s), &EigenOptions::default()).unwrap();
        assert_eq!(r.constraints.rows(), &[q(&[1, 1, 1]), q(&[1, 1, -1])]);
        assert_eq!(
            r.w,
            RationalSubspace::span(3, &[q(&[1, 1, 0]), q(&[0, 0, 1])])
        );
        let v: Vec<Option<Q>> = r
            .perron_vector
            .iter()
            .map(FieldElement::as_rational)
            .collect();
        assert_eq!(v, [Some(qr(1, 4)), Some(qr(1, 4)), Some(qr(1, 2))]);
        assert_eq!(r.case, DeltaCase::LeftEigenRow);
        let expected =
            EigenvalueModule::rational(&[qr(1, 2)], Closure::InverseDet(BigInt::from(3)));
        assert!(module_equal(&r.module, &expected));
    }

    #[test]
    fn weakly_mixing_with_coboundary() {
        let s = m("abcd", &["d", "ca", "bd", "abc"]);
        let r = analyze(&s, &id(&s), &EigenOptions::default()).unwrap();
        assert!(module_equal(&r.module, &EigenvalueModule::integers()));
    }

    #[test]
    fn unimodular_with_coboundary() {
        let s = m("abc", &["aba", "cb", "cba"]);
        let r = analyze(&s, &id(&s), &EigenOptions::default()).unwrap();
        assert_eq!(r.case, DeltaCase::PseudoUnimodular);
        assert_eq!(r.w, RationalSubspace::full(3));
        let f = r.module.field().clone();
        let ring = EigenvalueModule::from_elements(
            f.clone(),
            &[f.rational(&qi(1)), f.gen()],
            Closure::None,
        );
        assert!(module_equal(&r.module, &ring));
    }

    #[test]
    fn paper_folding() {
        let s = m("abcd", &["ab", "cb", "ad", "cd"]);
        let tau = Morphism::parse_with_domain("a->11\nb->01\nc->10\nd->00", s.domain()).unwrap();
        let r = analyze(&s, &tau, &EigenOptions::default()).unwrap();
        assert!(
            r.recognizability
                != RecognizabilityStatus::Unknown {
                    max_window_tried: 16
                }
        );
        let cv: Vec<Vec<Option<Q>>> =
            r.cv.iter()
                .map(|row| row.iter().map(FieldElement::as_rational).collect())
                .collect();
        assert_eq!(cv[0].iter().filter(|x| **x == Some(qi(8))).count(), 1);
        assert!(cv[1].iter().all(|x| *x == Some(qi(0))));
        assert_eq!(
            r.w,
            crate::exactlin::kernel_left(&RationalMatrix::from_ints(&[[0], [1], [0], [-1]]))
        );
        assert!(module_equal(&r.module, &dyadic(2)));
    }

    #[test]
    fn fallback_stages_are_nested() {
        let s = m("abc", &["aca", "acb", "cbc"]);
        let mat = s.abelianization();
        let spectral = spectral_data(&mat).unwrap();
        let v = perron_vector(&s, &id(&s), &spectral).unwrap();
        let w = RationalSubspace::span(3, &[q(&[1, 1, 0]), q(&[0, 0, 1])]);
        let (stages, stab) = fallback_stages(&mat, &w, &v, 4);
        assert_eq!(stab, Stabilization::Unstabilized);
        for pair in stages.windows(2) {
            for g in pair[0].generators() {
                assert!(pair[1].contains(&g));
            }
        }
        assert!(stages[2].contains(&spectral_field_rational(&v, qr(1, 18))));
    }

    fn spectral_field_rational(v: &[FieldElement], x: Q) -> FieldElement {
        v[0].field().rational(&x)
    }

    #[test]
    fn periodic_is_rejected() {
        let p = m("abc", &["ab", "c", "abc"]);
        assert_eq!(
            analyze(&p, &id(&p), &EigenOptions::default()).unwrap_err(),
            Error::Periodic
        );
    }
}
