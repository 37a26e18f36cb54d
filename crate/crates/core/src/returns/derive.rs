use crate::substitution::{growing_seed, language, Alphabet, Letter, Morphism, Word};
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap, HashSet};

/// The return substitution on a letter a: a substitution on the set of return words of a,
/// together with the map sending each new letter to its return word.
#[derive(Clone, Debug)]
pub struct ReturnSubstitution {
    /// Substitution on the return-word alphabet (letters `0`, `1`, … in discovery order).
    pub derived: Morphism,
    /// Return word over the original alphabet for each derived letter.
    pub decode: Vec<Word>,
    /// The letter a.
    pub letter: Letter,
}

impl ReturnSubstitution {
    /// Checks decode ∘ derived = σ ∘ decode letter by letter.
    pub fn verify(&self, sigma: &Morphism) -> bool {
        self.decode.iter().enumerate().all(|(i, w)| {
            let lhs: Word = self
                .derived
                .image(i)
                .iter()
                .flat_map(|&j| self.decode[j].iter().copied())
                .collect();
            lhs == sigma.apply(w)
        })
    }
}

fn split_at_letter(w: &[Letter], a: Letter) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for &b in w {
        if b == a || out.is_empty() {
            out.push(Vec::new());
        }
        out.last_mut().unwrap().push(b);
    }
    out
}

/// Return substitution of σ on a letter a whose image begins with a.
pub fn return_substitution(sigma: &Morphism, a: Letter) -> Result<ReturnSubstitution> {
    sigma.require_primitive()?;
    if sigma.image(a)[0] != a {
        return Err(Error::Precondition(format!(
            "image of `{}` does not begin with it",
            sigma.domain().name(a)
        )));
    }
    if sigma.domain().len() == 1 {
        let derived = Morphism::new(
            Alphabet::numbered(1),
            Alphabet::numbered(1),
            vec![vec![0; sigma.image_len(0)]],
        )?;
        return Ok(ReturnSubstitution {
            derived,
            decode: vec![vec![a]],
            letter: a,
        });
    }
    let mut w = vec![a];
    let first = loop {
        if let Some(p) = w.iter().skip(1).position(|&b| b == a) {
            break w[..p + 1].to_vec();
        }
        w = sigma.apply(&w);
    };
    let mut decode: Vec<Word> = vec![first.clone()];
    let mut index: HashMap<Word, usize> = HashMap::from([(first, 0)]);
    let mut images: Vec<Word> = Vec::new();
    let mut next = 0;
    while next < decode.len() {
        let img = sigma.apply(&decode[next]);
        let mut row = Vec::new();
        for piece in split_at_letter(&img, a) {
            let id = *index.entry(piece.clone()).or_insert_with(|| {
                decode.push(piece);
                decode.len() - 1
            });
            row.push(id);
        }
        images.push(row);
        next += 1;
    }
    let alpha = Alphabet::numbered(decode.len());
    let derived = Morphism::new(alpha.clone(), alpha, images)?;
    Ok(ReturnSubstitution {
        derived,
        decode,
        letter: a,
    })
}

/// Return words on a letter whose image begins with it.
pub fn return_words(sigma: &Morphism, a: Letter) -> Result<BTreeSet<Word>> {
    Ok(return_substitution(sigma, a)?.decode.into_iter().collect())
}

/// The canonical derived substitution: return substitution of σᵏ at the seed letter, with
/// the power k chosen by [`growing_seed`].
pub fn derived_substitution(sigma: &Morphism) -> Result<(usize, ReturnSubstitution)> {
    let (k, a) = growing_seed(sigma)?;
    let power = sigma.pow(k)?;
    Ok((k, return_substitution(&power, a)?))
}

/// Return words on an arbitrary letter b.
pub fn return_words_on(sigma: &Morphism, b: Letter) -> Result<BTreeSet<Word>> {
    sigma.require_primitive()?;
    let mut set = vec![false; sigma.domain().len()];
    set[b] = true;
    Ok(complete_returns(sigma, &set)?
        .into_iter()
        .map(|mut w| {
            w.pop();
            w
        })
        .collect())
}

/// Factors u·e with u starting in `set`, e in `set` and no other letter of `set` in u.
///
/// Each such factor sits inside σ(c·z·e′), where c·z·e′ is a complete return on the
/// letters whose image meets `set`, or inside a single σ(c). The recursion ends at the full
/// alphabet, whose complete returns are the factors of length two.
fn complete_returns(sigma: &Morphism, set: &[bool]) -> Result<BTreeSet<Word>> {
    if set.iter().all(|&x| x) {
        return language(sigma, 2);
    }
    let hits = |w: &[Letter]| -> Vec<usize> { (0..w.len()).filter(|&i| set[w[i]]).collect() };
    let pre: Vec<bool> = sigma
        .domain()
        .letters()
        .map(|c| !hits(sigma.image(c)).is_empty())
        .collect();
    let upper = complete_returns(sigma, &pre)?;
    let mut out = BTreeSet::new();
    for c in sigma.domain().letters() {
        let img = sigma.image(c);
        for pair in hits(img).windows(2) {
            out.insert(img[pair[0]..=pair[1]].to_vec());
        }
    }
    for u in &upper {
        let (first, last) = (u[0], u[u.len() - 1]);
        let img = sigma.apply(u);
        let start = *hits(sigma.image(first))
            .last()
            .expect("first letter meets the set");
        let end = img.len() - sigma.image_len(last) + hits(sigma.image(last))[0];
        out.insert(img[start..=end].to_vec());
    }
    Ok(out)
}

/// Decides whether the subshift of a primitive substitution is periodic by iterating
/// derived substitutions until a one-letter alphabet (periodic) or a repetition (aperiodic).
pub fn is_periodic(sigma: &Morphism) -> Result<bool> {
    sigma.require_primitive()?;
    let mut seen: HashSet<Morphism> = HashSet::new();
    let mut cur = sigma.clone();
    loop {
        if cur.domain().len() == 1 {
            return Ok(true);
        }
        if !seen.insert(cur.clone()) {
            return Ok(false);
        }
        cur = derived_substitution(&cur)?.1.derived;
    }
}

/// The sequence of derived substitutions up to (and including) the first repetition or
/// one-letter alphabet, starting with σ itself.
pub fn derived_sequence(sigma: &Morphism) -> Result<Vec<Morphism>> {
    sigma.require_primitive()?;
    let mut out = vec![sigma.clone()];
    loop {
        let cur = out.last().unwrap();
        if cur.domain().len() == 1 || out[..out.len() - 1].contains(cur) {
            return Ok(out);
        }
        let next = derived_substitution(cur)?.1.derived;
        out.push(next);
    }
}
