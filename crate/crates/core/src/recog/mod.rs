//! Semi-decision of recognizability by bounded window search.
//!
//! A morphism τ is recognizable in the bi-infinite subshift of σ when some radius L
//! separates the configurations: for x in the subshift and a phase p < |τ(x₀)|, the
//! coordinates −L..=L of S^p τ(x) determine both p and x₀. Those coordinates only depend on
//! the factor x_{−K..=K} with K = ⌈L / min|τ(a)|⌉, so each radius is a finite check over the
//! language of σ.

use crate::substitution::{language, Letter, Morphism};
use crate::{Error, Result};
use std::collections::HashMap;

/// Outcome of the bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecognizabilityVerdict {
    /// Every configuration is determined by its window of this radius.
    Recognizable { window: usize },
    /// No radius up to the bound separates the configurations.
    Unknown { max_window_tried: usize },
}

impl RecognizabilityVerdict {
    pub fn is_recognizable(&self) -> bool {
        matches!(self, RecognizabilityVerdict::Recognizable { .. })
    }
}

/// True iff windows of radius `radius` determine (phase, central letter) for τ over X_σ.
pub fn window_separates(sigma: &Morphism, tau: &Morphism, radius: usize) -> Result<bool> {
    if tau.domain() != sigma.domain() {
        return Err(Error::AlphabetMismatch(
            "τ must be defined on the alphabet of σ".into(),
        ));
    }
    let min_len = tau.images().iter().map(Vec::len).min().unwrap_or(1);
    let k = radius.div_ceil(min_len);
    let mut seen: HashMap<Vec<Letter>, (usize, Letter)> = HashMap::new();
    for u in language(sigma, 2 * k + 1)? {
        let image = tau.apply(&u);
        let offset: usize = u[..k].iter().map(|&a| tau.image_len(a)).sum();
        let centre = u[k];
        for p in 0..tau.image_len(centre) {
            let at = offset + p;
            let window = image[at - radius..=at + radius].to_vec();
            match seen.get(&window) {
                Some(&prev) if prev != (p, centre) => return Ok(false),
                Some(_) => {}
                None => {
                    seen.insert(window, (p, centre));
                }
            }
        }
    }
    Ok(true)
}

/// Smallest radius in 1..=max_window at which τ is recognizable in X_σ, searching τ only.
pub fn recognizable_in(
    sigma: &Morphism,
    tau: &Morphism,
    max_window: usize,
) -> Result<RecognizabilityVerdict> {
    sigma.require_primitive()?;
    for l in 1..=max_window {
        if window_separates(sigma, tau, l)? {
            return Ok(RecognizabilityVerdict::Recognizable { window: l });
        }
    }
    Ok(RecognizabilityVerdict::Unknown {
        max_window_tried: max_window,
    })
}

/// Searches both σ (in its own subshift) and τ; the witness is the larger of the two radii.
pub fn recognizable(
    sigma: &Morphism,
    tau: &Morphism,
    max_window: usize,
) -> Result<RecognizabilityVerdict> {
    let s = recognizable_in(sigma, sigma, max_window)?;
    let t = recognizable_in(sigma, tau, max_window)?;
    Ok(match (s, t) {
        (
            RecognizabilityVerdict::Recognizable { window: a },
            RecognizabilityVerdict::Recognizable { window: b },
        ) => RecognizabilityVerdict::Recognizable { window: a.max(b) },
        _ => RecognizabilityVerdict::Unknown {
            max_window_tried: max_window,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(letters: &str, images: &[&str]) -> Morphism {
        Morphism::from_images(letters, images).unwrap()
    }

    #[test]
    fn thue_morse_is_recognizable() {
        let tm = m("ab", &["ab", "ba"]);
        let v = recognizable(&tm, &Morphism::identity(tm.domain()), 16).unwrap();
        let RecognizabilityVerdict::Recognizable { window } = v else {
            panic!("{v:?}")
        };
        assert!(window_separates(&tm, &tm, window).unwrap());
        assert_eq!(
            recognizable(&tm, &Morphism::identity(tm.domain()), window + 3).unwrap(),
            v
        );
    }

    #[test]
    fn paper_folding_coding() {
        let s = m("abcd", &["ab", "cb", "ad", "cd"]);
        let tau = Morphism::parse_with_domain("a->11\nb->01\nc->10\nd->00", s.domain()).unwrap();
        assert!(recognizable(&s, &tau, 16).unwrap().is_recognizable());
    }

    #[test]
    fn periodic_is_unknown() {
        let s = m("a", &["aa"]);
        let v = recognizable(&s, &Morphism::identity(s.domain()), 6).unwrap();
        assert_eq!(
            v,
            RecognizabilityVerdict::Unknown {
                max_window_tried: 6
            }
        );
    }
}
