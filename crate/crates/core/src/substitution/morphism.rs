use crate::exactlin::{qi, RationalMatrix};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Index of a letter in its alphabet.
pub type Letter = usize;

/// A finite word, stored as letter indices.
pub type Word = Vec<Letter>;

/// Ordered list of distinct letter names. The order fixes abelianization coordinates.
#[derive(Clone)]
pub struct Alphabet {
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, Letter>>,
}

impl PartialEq for Alphabet {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.names, &o.names) || self.names == o.names
    }
}

impl Eq for Alphabet {}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::AlphabetMismatch("empty alphabet".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(char::is_whitespace) {
                return Err(Error::UnknownLetter(n.clone()));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateRule(n.clone()));
            }
        }
        Ok(Alphabet {
            names: Arc::new(names),
            index: Arc::new(index),
        })
    }

    /// Single-character letters taken from a string, e.g. `"abc"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    /// Letters named `0`, `1`, …, `n−1`.
    pub fn numbered(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string())).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index(name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.len()
    }

    /// True when every letter name is a single character.
    pub fn is_single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Concatenated rendering for single-character alphabets, space-separated otherwise.
    pub fn render(&self, w: &[Letter]) -> String {
        let sep = if self.is_single_char() { "" } else { " " };
        w.iter()
            .map(|&a| self.name(a))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word: whitespace-separated names, or characters when the string has no
    /// whitespace and the alphabet is single-character.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.chars().any(char::is_whitespace) || !self.is_single_char() {
            s.split_whitespace().map(|t| self.letter(t)).collect()
        } else {
            s.chars().map(|c| self.letter(&c.to_string())).collect()
        }
    }
}

/// A non-erasing word morphism from `domain*` to `codomain*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} images for {} letters",
                images.len(),
                domain.len()
            )));
        }
        for (a, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::ErasingRule(domain.name(a).to_string()));
            }
            if let Some(&b) = w.iter().find(|&&b| b >= codomain.len()) {
                return Err(Error::UnknownLetter(b.to_string()));
            }
        }
        Ok(Morphism {
            domain,
            codomain,
            images,
        })
    }

    /// A substitution (domain = codomain) from image strings over a single-character alphabet,
    /// e.g. `from_images("abc", &["ab", "ac", "a"])`.
    pub fn from_images(letters: &str, images: &[&str]) -> Result<Self> {
        let alpha = Alphabet::from_chars(letters)?;
        let words = images
            .iter()
            .map(|s| alpha.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alpha.clone(), alpha, words)
    }

    pub fn identity(alpha: &Alphabet) -> Self {
        Morphism {
            domain: alpha.clone(),
            codomain: alpha.clone(),
            images: alpha.letters().map(|a| vec![a]).collect(),
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_len(&self, a: Letter) -> usize {
        self.images[a].len()
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff domain and codomain coincide.
    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch("domain and codomain differ".into()))
        }
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter()
            .flat_map(|&a| self.images[a].iter().copied())
            .collect()
    }

    /// `outer ∘ inner`: a ↦ outer(inner(a)).
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
        if outer.domain != inner.codomain {
            return Err(Error::AlphabetMismatch(format!(
                "cannot compose: {:?} vs {:?}",
                outer.domain, inner.codomain
            )));
        }
        let images = inner.images.iter().map(|w| outer.apply(w)).collect();
        Ok(Morphism {
            domain: inner.domain.clone(),
            codomain: outer.codomain.clone(),
            images,
        })
    }

    /// σᵏ for an endomorphism (σ⁰ is the identity).
    pub fn pow(&self, k: usize) -> Result<Morphism> {
        self.require_endomorphism()?;
        let mut out = Morphism::identity(&self.domain);
        for _ in 0..k {
            out = Morphism::compose(self, &out)?;
        }
        Ok(out)
    }

    /// Image of `a` under σᵏ without materializing the power.
    pub fn iterate(&self, a: Letter, k: usize) -> Word {
        let mut w = vec![a];
        for _ in 0..k {
            w = self.apply(&w);
        }
        w
    }

    /// Matrix whose column a is the letter count vector of the image of a.
    pub fn abelianization(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.codomain.len(), self.domain.len());
        for (a, w) in self.images.iter().enumerate() {
            for &b in w {
                let v = m.get(b, a) + qi(1);
                m.set(b, a, v);
            }
        }
        m
    }

    /// Letter count vector of a word over the codomain.
    pub fn count(alpha_len: usize, w: &[Letter]) -> Vec<usize> {
        let mut v = vec![0; alpha_len];
        for &a in w {
            v[a] += 1;
        }
        v
    }

    /// Boolean-matrix test for some power with all entries positive (Wielandt bound).
    pub fn is_primitive(&self) -> bool {
        if !self.is_endomorphism() {
            return false;
        }
        let d = self.domain.len();
        let adj: Vec<Vec<bool>> = (0..d)
            .map(|a| {
                let mut row = vec![false; d];
                for &b in &self.images[a] {
                    row[b] = true;
                }
                row
            })
            .collect();
        let mut cur = adj.clone();
        for _ in 0..(d - 1) * (d - 1) + 1 {
            if cur.iter().all(|r| r.iter().all(|&x| x)) {
                return true;
            }
            cur = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).any(|k| cur[i][k] && adj[k][j]))
                        .collect()
                })
                .collect();
        }
        false
    }

    pub fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive)
        }
    }

    /// Renders in the text format accepted by [`Morphism::parse`].
    pub fn render(&self) -> String {
        let compact = self.domain.is_single_char() && self.codomain.is_single_char();
        self.domain
            .letters()
            .map(|a| {
                let img = if compact {
                    self.codomain.render(&self.images[a])
                } else {
                    self.images[a]
                        .iter()
                        .map(|&b| self.codomain.name(b))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!("{} -> {}", self.domain.name(a), img)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().replace('\n', ", "))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
