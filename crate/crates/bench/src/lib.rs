//! Fixture substitutions shared by the benchmarks.

use morphic_core::Morphism;

fn sub(letters: &str, images: &[&str]) -> Morphism {
    Morphism::from_images(letters, images).expect("valid fixture")
}

pub fn thue_morse() -> Morphism {
    sub("ab", &["ab", "ba"])
}

pub fn quartic() -> Morphism {
    sub("abcd", &["abdd", "bc", "d", "a"])
}

pub fn reducible() -> Morphism {
    sub("123456", &["16", "122", "12", "3", "124", "15"])
}

pub fn constant_length() -> Morphism {
    sub("abc", &["aca", "acb", "cbc"])
}

pub fn interval_family() -> Morphism {
    sub(
        "1234567",
        &[
            "1617",
            "16252617",
            "162534352617",
            "1625344352617",
            "1625352617",
            "1626162617",
            "162617",
        ],
    )
}

/// Identity coding on the alphabet of σ.
pub fn identity(sigma: &Morphism) -> Morphism {
    Morphism::identity(sigma.domain())
}
