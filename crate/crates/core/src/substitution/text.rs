//! Plain-text morphism format.
//!
//! One rule per line (or separated by `;`), `letter -> image`, with `↦` accepted for `->`
//! and `#` starting a comment. Image letters are whitespace-separated; when every rule's
//! left-hand side is a single character, an image without whitespace is read character by
//! character, so `a -> aba` and `a -> a b a` are the same rule.

use super::morphism::{Alphabet, Morphism, Word};
use crate::{Error, Result};
use std::collections::HashSet;

struct Rule {
    line: usize,
    col: usize,
    lhs: String,
    rhs: Vec<String>,
}

fn split_rules(text: &str) -> Result<Vec<(usize, usize, String, String)>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut col = 1;
        for chunk in line.split(';') {
            let width = chunk.chars().count() + 1;
            if !chunk.trim().is_empty() {
                let (lhs, rhs) = chunk
                    .split_once("->")
                    .or_else(|| chunk.split_once('↦'))
                    .ok_or_else(|| Error::Parse {
                        line: ln + 1,
                        col,
                        msg: "expected `->`".into(),
                    })?;
                if lhs.trim().is_empty() {
                    return Err(Error::Parse {
                        line: ln + 1,
                        col,
                        msg: "missing letter before `->`".into(),
                    });
                }
                if lhs.split_whitespace().count() > 1 {
                    return Err(Error::Parse {
                        line: ln + 1,
                        col,
                        msg: format!("`{}` is not a single letter", lhs.trim()),
                    });
                }
                out.push((ln + 1, col, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            col += width;
        }
    }
    Ok(out)
}

fn tokenize(text: &str) -> Result<Vec<Rule>> {
    let raw = split_rules(text)?;
    let char_mode = raw.iter().all(|(_, _, l, _)| l.chars().count() == 1);
    raw.into_iter()
        .map(|(line, col, lhs, rhs)| {
            if rhs.is_empty() {
                return Err(Error::ErasingRule(lhs));
            }
            let rhs: Vec<String> = if rhs.chars().any(char::is_whitespace) || !char_mode {
                rhs.split_whitespace().map(String::from).collect()
            } else {
                rhs.chars().map(String::from).collect()
            };
            Ok(Rule {
                line,
                col,
                lhs,
                rhs,
            })
        })
        .collect()
}

fn build(rules: Vec<Rule>, domain: Alphabet) -> Result<Morphism> {
    let mut seen = HashSet::new();
    let mut slots: Vec<Option<Vec<String>>> = vec![None; domain.len()];
    for r in rules {
        if !seen.insert(r.lhs.clone()) {
            return Err(Error::DuplicateRule(r.lhs));
        }
        let a = domain.index(&r.lhs).ok_or_else(|| Error::Parse {
            line: r.line,
            col: r.col,
            msg: format!("letter `{}` is not in the domain alphabet", r.lhs),
        })?;
        slots[a] = Some(r.rhs);
    }
    let images: Vec<Vec<String>> = slots
        .into_iter()
        .enumerate()
        .map(|(a, s)| {
            s.ok_or_else(|| {
                Error::AlphabetMismatch(format!("no rule for letter `{}`", domain.name(a)))
            })
        })
        .collect::<Result<_>>()?;
    let codomain = if images.iter().flatten().all(|t| domain.index(t).is_some()) {
        domain.clone()
    } else {
        let mut order: Vec<String> = Vec::new();
        for t in images.iter().flatten() {
            if !order.contains(t) {
                order.push(t.clone());
            }
        }
        Alphabet::new(order)?
    };
    let words: Vec<Word> = images
        .iter()
        .map(|img| {
            img.iter()
                .map(|t| codomain.letter(t))
                .collect::<Result<Word>>()
        })
        .collect::<Result<_>>()?;
    Morphism::new(domain, codomain, words)
}

impl Morphism {
    /// Parses a morphism; the domain alphabet follows the rule order. When every image letter
    /// is a domain letter the codomain is the domain, otherwise it lists the image letters by
    /// first occurrence.
    pub fn parse(text: &str) -> Result<Morphism> {
        let rules = tokenize(text)?;
        if rules.is_empty() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "no rules".into(),
            });
        }
        let mut names: Vec<String> = Vec::new();
        for r in &rules {
            if names.contains(&r.lhs) {
                return Err(Error::DuplicateRule(r.lhs.clone()));
            }
            names.push(r.lhs.clone());
        }
        build(rules, Alphabet::new(names)?)
    }

    /// Parses a morphism whose domain must be exactly `domain` (rules in any order).
    pub fn parse_with_domain(text: &str, domain: &Alphabet) -> Result<Morphism> {
        let rules = tokenize(text)?;
        build(rules, domain.clone())
    }

    /// Parses a substitution and checks that it maps its alphabet into itself.
    pub fn parse_substitution(text: &str) -> Result<Morphism> {
        let m = Self::parse(text)?;
        if let Some(stray) = m
            .codomain()
            .names()
            .iter()
            .find(|n| m.domain().index(n).is_none())
        {
            return Err(Error::UnknownLetter(stray.clone()));
        }
        if !m.is_endomorphism() {
            return Err(Error::AlphabetMismatch(
                "image letters outside the alphabet".into(),
            ));
        }
        Ok(m)
    }
}
