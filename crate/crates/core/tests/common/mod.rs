#![allow(dead_code)]

use morphic_core::{FieldElement, Letter, Morphism, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

pub fn sub(letters: &str, images: &[&str]) -> Morphism {
    Morphism::from_images(letters, images).unwrap()
}

pub fn id(s: &Morphism) -> Morphism {
    Morphism::identity(s.domain())
}

pub fn thue_morse() -> Morphism {
    sub("ab", &["ab", "ba"])
}

pub fn paper_folding() -> (Morphism, Morphism) {
    let s = sub("abcd", &["ab", "cb", "ad", "cd"]);
    let tau =
        Morphism::parse_with_domain("a -> 11\nb -> 01\nc -> 10\nd -> 00", s.domain()).unwrap();
    (s, tau)
}

pub fn constant_length() -> Morphism {
    sub("abc", &["aca", "acb", "cbc"])
}

pub fn jordan_minus_one() -> Morphism {
    sub("abcd", &["d", "ca", "bd", "abc"])
}

pub fn golden_with_coboundary() -> Morphism {
    sub("abc", &["aba", "cb", "cba"])
}

pub fn reducible_six() -> Morphism {
    sub("123456", &["16", "122", "12", "3", "124", "15"])
}

pub fn quartic_four() -> Morphism {
    sub("abcd", &["abdd", "bc", "d", "a"])
}

pub fn itm(k: usize) -> Morphism {
    let two = format!("3{}", "1".repeat(k));
    let three = format!("3{}", "1".repeat(k - 1));
    sub("123", &["2", &two, &three])
}

pub fn iet_family(k: usize) -> Morphism {
    let three = format!("16253{}352617", "4".repeat(k - 1));
    let four = format!("16253{}352617", "4".repeat(k));
    let six = format!("{}17", "1626".repeat(k));
    let seven = format!("{}17", "1626".repeat(k - 1));
    sub(
        "1234567",
        &[
            "1617",
            "16252617",
            &three,
            &four,
            "1625352617",
            &six,
            &seven,
        ],
    )
}

pub fn cet4_second() -> Morphism {
    sub(
        "01234567",
        &["527", "520", "0", "1", "361", "461", "4", "5"],
    )
}

pub fn arnoux_yoccoz() -> (Morphism, Morphism) {
    let tau = sub(
        "1234567",
        &["15", "2", "1734335", "163434", "1635", "1634335", "1734"],
    );
    let sigma = sub(
        "1234567",
        &[
            "15172",
            "172",
            "1734365172",
            "15643472",
            "1565172",
            "1564365172",
            "173472",
        ],
    );
    (sigma, tau)
}

pub fn q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(x.into())).collect()
}

/// A letter a and power k with σᵏ(a) starting with a and of length at least two.
pub fn fixed_point_seed(s: &Morphism) -> (usize, Letter) {
    for k in 1..=s.domain().len() * 4 {
        for a in s.domain().letters() {
            let w = s.iterate(a, k);
            if w[0] == a && w.len() >= 2 {
                return (k, a);
            }
        }
    }
    panic!("no growing fixed point");
}

/// A prefix of length at least `len` of a fixed point of a power of σ.
pub fn fixed_point_prefix(s: &Morphism, len: usize) -> (Letter, Vec<Letter>) {
    let (k, a) = fixed_point_seed(s);
    let p = s.pow(k).unwrap();
    let mut w = vec![a];
    while w.len() < len {
        w = p.apply(&w);
        w.truncate(len.max(64));
    }
    (a, w)
}

/// Return words on the seed letter read off a long prefix of the fixed point.
pub fn scanned_return_words(s: &Morphism, len: usize) -> (Letter, BTreeSet<Vec<Letter>>) {
    let (a, w) = fixed_point_prefix(s, len);
    let hits: Vec<usize> = (0..w.len()).filter(|&i| w[i] == a).collect();
    (a, hits.windows(2).map(|p| w[p[0]..p[1]].to_vec()).collect())
}

/// Distance to ℤ of t·|τσⁿ(r)|, maximized over return words r, at the first level where
/// every length exceeds 2^256. Computed from letter counts iterated image by image.
pub fn eigenvalue_defect(t: &FieldElement, s: &Morphism, tau: &Morphism) -> f64 {
    let (_, returns) = scanned_return_words(s, 20_000);
    let d = s.domain().len();
    let tau_len: Vec<BigInt> = s
        .domain()
        .letters()
        .map(|b| BigInt::from(tau.image_len(b)))
        .collect();
    let mut counts: Vec<Vec<BigInt>> = returns
        .iter()
        .map(|r| {
            let mut c = vec![BigInt::zero(); d];
            for &b in r {
                c[b] += 1;
            }
            c
        })
        .collect();
    let threshold = BigInt::one() << 256;
    loop {
        let lengths: Vec<BigInt> = counts
            .iter()
            .map(|c| c.iter().zip(&tau_len).map(|(x, y)| x * y).sum())
            .collect();
        if lengths.iter().all(|l| l > &threshold) {
            return lengths
                .iter()
                .map(|l| {
                    let x = t.scale(&Q::from_integer(l.clone()));
                    let b = x.embed_numeric(96 + l.bits() as u32);
                    let mid = (&b.re.lo + &b.re.hi) / Q::from_integer(2.into());
                    (&mid - mid.round()).abs().to_f64().unwrap()
                })
                .fold(0.0, f64::max);
        }
        counts = counts
            .iter()
            .map(|c| {
                let mut next = vec![BigInt::zero(); d];
                for (b, n) in c.iter().enumerate() {
                    for &x in s.image(b) {
                        next[x] += n;
                    }
                }
                next
            })
            .collect();
    }
}
