use super::morphism::{Letter, Morphism, Word};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Length-n factors of a word.
pub fn factors(w: &[Letter], n: usize) -> impl Iterator<Item = &[Letter]> {
    let count = if n == 0 {
        1
    } else {
        (w.len() + 1).saturating_sub(n)
    };
    (0..count).map(move |i| &w[i..i + n])
}

/// The set of length-n words of the language of a primitive substitution.
pub fn language(sigma: &Morphism, n: usize) -> Result<BTreeSet<Word>> {
    sigma.require_primitive()?;
    let mut out: BTreeSet<Word> = BTreeSet::new();
    if n == 0 {
        out.insert(Vec::new());
        return Ok(out);
    }
    if sigma.max_image_len() == 1 {
        // A primitive substitution without growth lives on a single letter.
        out.insert(vec![0; n]);
        return Ok(out);
    }
    let mut seed = vec![0];
    while seed.len() < n {
        seed = sigma.apply(&seed);
    }
    let mut frontier: Vec<Word> = factors(&seed, n).map(<[Letter]>::to_vec).collect();
    out.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            let img = sigma.apply(w);
            for f in factors(&img, n) {
                if !out.contains(f) {
                    out.insert(f.to_vec());
                    next.push(f.to_vec());
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Minimal k ≥ 1 and a letter a with σᵏ(a) starting with a, from the cycles of the
/// first-letter map. Among letters with the minimal period, the first in alphabet order.
pub fn seed_fixed_point(sigma: &Morphism) -> Result<(usize, Letter)> {
    if !sigma.is_endomorphism() {
        return Err(Error::AlphabetMismatch("domain and codomain differ".into()));
    }
    let first = |a: Letter| sigma.image(a)[0];
    let d = sigma.domain().len();
    let mut best: Option<(usize, Letter)> = None;
    for a in 0..d {
        let mut b = first(a);
        let mut k = 1;
        while b != a && k <= d {
            b = first(b);
            k += 1;
        }
        if b == a && best.is_none_or(|(bk, _)| k < bk) {
            best = Some((k, a));
        }
    }
    Ok(best.expect("the first-letter map has a cycle"))
}

/// Like [`seed_fixed_point`], with the power enlarged until σᵏ(a) has length ≥ 2, so that
/// σᵏ has an infinite fixed point starting with a.
pub fn growing_seed(sigma: &Morphism) -> Result<(usize, Letter)> {
    let (k, a) = seed_fixed_point(sigma)?;
    let mut m = k;
    while sigma.iterate(a, m).len() < 2 {
        if m > k * (sigma.domain().len() + 1) {
            return Err(Error::Precondition("no growth at the seed letter".into()));
        }
        m += k;
    }
    Ok((m, a))
}

/// Prefix of length `len` of the fixed point of σ starting with `a`.
pub fn fixed_point_prefix(sigma: &Morphism, a: Letter, len: usize) -> Result<Word> {
    if !sigma.is_endomorphism() || a >= sigma.domain().len() {
        return Err(Error::AlphabetMismatch(
            "fixed point needs a letter of an endomorphism".into(),
        ));
    }
    let img = sigma.image(a);
    if img[0] != a {
        return Err(Error::Precondition(format!(
            "image of `{}` does not begin with it",
            sigma.domain().name(a)
        )));
    }
    if img.len() < 2 {
        if len <= 1 {
            return Ok(vec![a; len]);
        }
        return Err(Error::Precondition(format!(
            "`{}` is fixed by the substitution",
            sigma.domain().name(a)
        )));
    }
    let mut w = vec![a];
    while w.len() < len {
        w = sigma.apply(&w);
    }
    w.truncate(len);
    Ok(w)
}

/// An edge a →(p, s) b of the prefix–suffix automaton: σ(a) = p·b·s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSuffixEdge {
    pub from: Letter,
    pub to: Letter,
    pub prefix: Word,
    pub suffix: Word,
}

/// The prefix–suffix automaton of σ: one edge per position of each image.
#[derive(Clone, Debug)]
pub struct PrefixSuffixAutomaton {
    pub edges: Vec<PrefixSuffixEdge>,
}

impl PrefixSuffixAutomaton {
    pub fn out_degree(&self, a: Letter) -> usize {
        self.edges.iter().filter(|e| e.from == a).count()
    }
}

pub fn prefix_suffix_automaton(sigma: &Morphism) -> PrefixSuffixAutomaton {
    let edges = sigma
        .domain()
        .letters()
        .flat_map(|a| {
            let w = sigma.image(a);
            (0..w.len()).map(move |i| PrefixSuffixEdge {
                from: a,
                to: w[i],
                prefix: w[..i].to_vec(),
                suffix: w[i + 1..].to_vec(),
            })
        })
        .collect();
    PrefixSuffixAutomaton { edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm() -> Morphism {
        Morphism::from_images("ab", &["ab", "ba"]).unwrap()
    }

    #[test]
    fn thue_morse_language() {
        let l2 = language(&tm(), 2).unwrap();
        assert_eq!(l2.len(), 4);
        let l1 = language(&tm(), 1).unwrap();
        assert_eq!(l1, [vec![0], vec![1]].into_iter().collect());
        // Cube-free: aaa never occurs.
        assert!(!language(&tm(), 3).unwrap().contains(&vec![0, 0, 0]));
    }

    #[test]
    fn fibonacci_language() {
        let fib = Morphism::from_images("ab", &["ab", "a"]).unwrap();
        let l2 = language(&fib, 2).unwrap();
        assert_eq!(
            l2,
            [vec![0, 1], vec![1, 0], vec![0, 0]].into_iter().collect()
        );
        assert_eq!(
            fib.domain()
                .render(&fixed_point_prefix(&fib, 0, 7).unwrap()),
            "abaabab"
        );
    }

    #[test]
    fn seeds() {
        assert_eq!(seed_fixed_point(&tm()).unwrap(), (1, 0));
        let swap = Morphism::from_images("ab", &["ba", "ab"]).unwrap();
        assert_eq!(seed_fixed_point(&swap).unwrap(), (2, 0));
        let cyc = Morphism::from_images("abc", &["b", "c", "a"]).unwrap();
        assert_eq!(seed_fixed_point(&cyc).unwrap(), (3, 0));
    }

    #[test]
    fn prefixes() {
        assert_eq!(
            tm().domain()
                .render(&fixed_point_prefix(&tm(), 0, 8).unwrap()),
            "abbabaab"
        );
        assert_eq!(fixed_point_prefix(&tm(), 0, 1).unwrap(), vec![0]);
        let fib = Morphism::from_images("ab", &["ab", "a"]).unwrap();
        assert!(fixed_point_prefix(&fib, 1, 4).is_err());
    }

    #[test]
    fn automaton_edges() {
        let aut = prefix_suffix_automaton(&tm());
        assert_eq!(aut.edges.len(), 4);
        assert!(aut.edges.contains(&PrefixSuffixEdge {
            from: 0,
            to: 0,
            prefix: vec![],
            suffix: vec![1]
        }));
        assert!(aut.edges.contains(&PrefixSuffixEdge {
            from: 1,
            to: 0,
            prefix: vec![1],
            suffix: vec![]
        }));
        let trib = Morphism::from_images("abc", &["ab", "ac", "a"]).unwrap();
        assert_eq!(prefix_suffix_automaton(&trib).out_degree(0), 2);
        let id = Morphism::identity(trib.domain());
        assert!(prefix_suffix_automaton(&id)
            .edges
            .iter()
            .all(|e| e.prefix.is_empty() && e.suffix.is_empty()));
    }
}
