//! The set 𝓑 of algebraic eigenvalues seen by τ, its Galois graph, the dimension of the
//! ℚ-span of the additive eigenvalues, and the weak mixing criterion for unimodular
//! substitutions without coboundary.

use crate::algnum::{AlgebraicNumber, PairOrbits};
use crate::eigen::{length_row, recognizability_status, EigenOptions, RecognizabilityStatus};
use crate::exactlin::{
    cyclotomic_order, factor_poly, gcd_all, kernel_right, min_poly, RationalPolynomial,
    RationalSubspace, Q,
};
use crate::returns::{coboundary_graph, is_periodic, return_words_on};
use crate::substitution::Morphism;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A factor π_i of the minimal polynomial together with its subspace G_i.
#[derive(Clone, Debug)]
pub struct SpectralComponent {
    /// π_i (a power of an irreducible factor, or the whole cyclotomic part for i = 0).
    pub polynomial: RationalPolynomial,
    pub cyclotomic: bool,
    pub space: RationalSubspace,
    /// (1…1)·M_τ·G_i ≠ {0}.
    pub seen: bool,
}

/// The span of the abelianized return words over every letter.
pub fn return_space(sigma: &Morphism) -> Result<RationalSubspace> {
    let d = sigma.domain().len();
    let mut vectors = Vec::new();
    for b in sigma.domain().letters() {
        for w in return_words_on(sigma, b)? {
            vectors.push(
                Morphism::count(d, &w)
                    .into_iter()
                    .map(|c| Q::from_integer(c.into()))
                    .collect(),
            );
        }
    }
    Ok(RationalSubspace::span(d, &vectors))
}

/// The decomposition π_0·π_1⋯π_n of the minimal polynomial with the spaces G_i.
pub fn spectral_components(sigma: &Morphism, tau: &Morphism) -> Result<Vec<SpectralComponent>> {
    sigma.require_primitive()?;
    if tau.domain() != sigma.domain() {
        return Err(Error::AlphabetMismatch(
            "τ must be defined on the alphabet of σ".into(),
        ));
    }
    if is_periodic(sigma)? {
        return Err(Error::Periodic);
    }
    let m = sigma.abelianization();
    let row = length_row(tau);
    let sees = |s: &RationalSubspace| {
        s.basis()
            .iter()
            .any(|g| !row.iter().zip(g).map(|(a, b)| a * b).sum::<Q>().is_zero())
    };
    let mut cyclotomic = RationalPolynomial::one();
    let mut out = Vec::new();
    for (f, e) in factor_poly(&min_poly(&m)) {
        let pi = f.monic().pow(e);
        if cyclotomic_order(&f).is_some() {
            cyclotomic = &cyclotomic * &pi;
            continue;
        }
        let space = kernel_right(&m.eval_poly(&pi));
        out.push(SpectralComponent {
            seen: sees(&space),
            polynomial: pi,
            cyclotomic: false,
            space,
        });
    }
    if !cyclotomic.is_constant() {
        let space = return_space(sigma)?.intersect(&kernel_right(&m.eval_poly(&cyclotomic)));
        out.insert(
            0,
            SpectralComponent {
                seen: sees(&space),
                polynomial: cyclotomic,
                cyclotomic: true,
                space,
            },
        );
    }
    Ok(out)
}

/// 𝓑: roots of modulus ≥ 1 of the factors π_i whose space G_i is seen by (1…1)·M_τ.
pub fn compute_b(sigma: &Morphism, tau: &Morphism) -> Result<Vec<AlgebraicNumber>> {
    let mut out = Vec::new();
    for c in spectral_components(sigma, tau)?
        .into_iter()
        .filter(|c| c.seen)
    {
        for (f, _) in factor_poly(&c.polynomial) {
            out.extend(
                AlgebraicNumber::roots_of_irreducible(&f)
                    .into_iter()
                    .filter(|r| r.modulus_class().is_noncontracting()),
            );
        }
    }
    Ok(out)
}

/// Graph on 𝓑 and its conjugates; γ and δ are adjacent when a Galois automorphism maps both
/// into 𝓑. Self-loops are not recorded.
#[derive(Clone, Debug)]
pub struct BGraph {
    pub vertices: Vec<AlgebraicNumber>,
    /// `in_b[i]` iff vertex i belongs to 𝓑.
    pub in_b: Vec<bool>,
    /// Pairs (i, j) with i < j.
    pub edges: Vec<(usize, usize)>,
}

impl BGraph {
    /// Connected components as sorted vertex index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }
}

/// Builds the graph of a set of algebraic numbers.
pub fn b_graph(b: &[AlgebraicNumber]) -> BGraph {
    let mut minpolys: Vec<RationalPolynomial> = Vec::new();
    for x in b {
        let f = x.minpoly().monic();
        if !minpolys.contains(&f) {
            minpolys.push(f);
        }
    }
    let mut vertices = Vec::new();
    let mut offsets = Vec::new();
    for f in &minpolys {
        offsets.push(vertices.len());
        vertices.extend(AlgebraicNumber::roots_of_irreducible(f));
    }
    let in_b: Vec<bool> = vertices
        .iter()
        .map(|v| b.iter().any(|x| x.same(v)))
        .collect();
    let mut edges = Vec::new();
    for (p, f) in minpolys.iter().enumerate() {
        for (q, g) in minpolys.iter().enumerate().skip(p) {
            let orbits = PairOrbits::new(f, g);
            let (og, od) = (offsets[p], offsets[q]);
            for i in 0..orbits.gammas().len() {
                for j in 0..orbits.deltas().len() {
                    let (a, c) = (og + i, od + j);
                    if a >= c {
                        continue;
                    }
                    if orbits
                        .orbit(i, j)
                        .iter()
                        .any(|&(x, y)| in_b[og + x] && in_b[od + y])
                    {
                        edges.push((a, c));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    BGraph {
        vertices,
        in_b,
        edges,
    }
}

/// Dimension of the ℚ-vector space spanned by the additive eigenvalues.
pub fn eigenvalue_dimension(sigma: &Morphism, tau: &Morphism) -> Result<usize> {
    Ok(b_graph(&compute_b(sigma, tau)?).component_count())
}

/// The hypothesis of the weak mixing criterion that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotApplicableReason {
    NotUnimodular,
    NontrivialCoboundary,
    GcdNotOne(BigInt),
    Periodic,
    RecognizabilityUnknown { max_window_tried: usize },
}

impl fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotApplicableReason::NotUnimodular => write!(f, "not unimodular"),
            NotApplicableReason::NontrivialCoboundary => write!(f, "nontrivial coboundary"),
            NotApplicableReason::GcdNotOne(g) => write!(f, "gcd of τ lengths is {g}"),
            NotApplicableReason::Periodic => write!(f, "periodic"),
            NotApplicableReason::RecognizabilityUnknown { max_window_tried } => {
                write!(f, "recognizability unknown up to window {max_window_tried}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakMixVerdict {
    WeaklyMixing,
    NotWeaklyMixing,
    NotApplicable(NotApplicableReason),
}

/// The weak mixing criterion: under its hypotheses, weakly mixing iff 𝓑 is connected.
pub fn weak_mixing(
    sigma: &Morphism,
    tau: &Morphism,
    opts: &EigenOptions,
) -> Result<WeakMixVerdict> {
    use NotApplicableReason::*;
    sigma.require_primitive()?;
    if is_periodic(sigma)? {
        return Ok(WeakMixVerdict::NotApplicable(Periodic));
    }
    if coboundary_graph(sigma)?.vertex_count() > 1 {
        return Ok(WeakMixVerdict::NotApplicable(NontrivialCoboundary));
    }
    if !sigma.abelianization().determinant().abs().is_one() {
        return Ok(WeakMixVerdict::NotApplicable(NotUnimodular));
    }
    let lengths: Vec<BigInt> = length_row(tau).iter().map(|x| x.to_integer()).collect();
    let g = gcd_all(&lengths);
    if !g.is_one() {
        return Ok(WeakMixVerdict::NotApplicable(GcdNotOne(g)));
    }
    if let RecognizabilityStatus::Unknown { max_window_tried } =
        recognizability_status(sigma, tau, opts)?
    {
        return Ok(WeakMixVerdict::NotApplicable(RecognizabilityUnknown {
            max_window_tried,
        }));
    }
    Ok(if b_graph(&compute_b(sigma, tau)?).is_connected() {
        WeakMixVerdict::WeaklyMixing
    } else {
        WeakMixVerdict::NotWeaklyMixing
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qi;

    fn m(letters: &str, images: &[&str]) -> Morphism {
        Morphism::from_images(letters, images).unwrap()
    }

    fn id(s: &Morphism) -> Morphism {
        Morphism::identity(s.domain())
    }

    #[test]
    fn thue_morse_sees_only_two() {
        let tm = m("ab", &["ab", "ba"]);
        let b = compute_b(&tm, &id(&tm)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].as_rational(), Some(qi(2)));
        assert_eq!(eigenvalue_dimension(&tm, &id(&tm)).unwrap(), 1);
    }

    #[test]
    fn quartic_with_two_components() {
        let s = m("abcd", &["abdd", "bc", "d", "a"]);
        let b = compute_b(&s, &id(&s)).unwrap();
        let quartic = RationalPolynomial::from_ints(&[-1, 2, -1, -2, 1]);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| x.minpoly().monic() == quartic));
        let beta = AlgebraicNumber::largest_real_root(&quartic).unwrap();
        assert!(b.iter().any(|x| x.same(&beta)));
        let g = b_graph(&b);
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn cubic_singleton_has_no_edges() {
        let beta =
            AlgebraicNumber::largest_real_root(&RationalPolynomial::from_ints(&[-1, 1, 1, 1]))
                .unwrap();
        let g = b_graph(&[beta]);
        assert_eq!(g.vertices.len(), 3);
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count(), 3);
    }

    #[test]
    fn coboundary_blocks_the_criterion() {
        let s = m("abc", &["aba", "cb", "cba"]);
        assert_eq!(
            weak_mixing(&s, &id(&s), &EigenOptions::default()).unwrap(),
            WeakMixVerdict::NotApplicable(NotApplicableReason::NontrivialCoboundary)
        );
        assert!(eigenvalue_dimension(&s, &id(&s)).unwrap() >= 1);
        let w = m("abcd", &["d", "ca", "bd", "abc"]);
        assert_eq!(
            weak_mixing(&w, &id(&w), &EigenOptions::default()).unwrap(),
            WeakMixVerdict::NotApplicable(NotApplicableReason::NontrivialCoboundary)
        );
    }

    #[test]
    fn non_unimodular_is_not_applicable() {
        let tm = m("ab", &["ab", "ba"]);
        assert_eq!(
            weak_mixing(&tm, &id(&tm), &EigenOptions::default()).unwrap(),
            WeakMixVerdict::NotApplicable(NotApplicableReason::NotUnimodular)
        );
    }
}
