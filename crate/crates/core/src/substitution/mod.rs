//! Alphabets, words and non-erasing morphisms.

mod language;
mod morphism;
mod text;

pub use language::{
    factors, fixed_point_prefix, growing_seed, language, prefix_suffix_automaton, seed_fixed_point,
    PrefixSuffixAutomaton, PrefixSuffixEdge,
};
pub use morphism::{Alphabet, Letter, Morphism, Word};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RationalMatrix;
    use crate::Error;

    #[test]
    fn abelianization_examples() {
        let trib = Morphism::from_images("abc", &["ab", "ac", "a"]).unwrap();
        assert_eq!(
            trib.abelianization(),
            RationalMatrix::from_ints(&[[1, 1, 1], [1, 0, 0], [0, 1, 0]])
        );
        let cl = Morphism::from_images("abc", &["aca", "acb", "cbc"]).unwrap();
        assert_eq!(
            cl.abelianization(),
            RationalMatrix::from_ints(&[[2, 1, 0], [0, 1, 1], [1, 1, 2]])
        );
        assert_eq!(
            Morphism::identity(cl.domain()).abelianization(),
            RationalMatrix::identity(3)
        );
        assert_eq!(
            trib.pow(2).unwrap().abelianization(),
            trib.abelianization().pow(2)
        );
    }

    #[test]
    fn composition() {
        let tm = Morphism::from_images("ab", &["ab", "ba"]).unwrap();
        let id = Morphism::identity(tm.domain());
        assert_eq!(Morphism::compose(&id, &tm).unwrap(), tm);
        let sq = Morphism::compose(&tm, &tm).unwrap();
        assert_eq!(sq.domain().render(sq.image(0)), "abba");
        let tau = Morphism::parse("a -> x y\nb -> y").unwrap();
        assert!(Morphism::compose(&tm, &tau).is_err());
        assert!(Morphism::compose(&tau, &tm).is_ok());
    }

    #[test]
    fn primitivity() {
        assert!(Morphism::from_images("ab", &["ab", "ba"])
            .unwrap()
            .is_primitive());
        assert!(Morphism::from_images("abc", &["ab", "ac", "a"])
            .unwrap()
            .is_primitive());
        assert!(!Morphism::from_images("ab", &["a", "b"])
            .unwrap()
            .is_primitive());
    }

    #[test]
    fn text_format() {
        let s = Morphism::parse("a -> aba\nb -> cb\nc -> c b a").unwrap();
        assert!(s.is_endomorphism());
        assert_eq!(s.domain().render(s.image(2)), "cba");
        assert_eq!(Morphism::parse(&s.render()).unwrap(), s);
        let multi = Morphism::parse("x1 -> x1 x2; x2 -> x1").unwrap();
        assert_eq!(multi.image(0), &[0, 1]);
        assert_eq!(Morphism::parse(&multi.render()).unwrap(), multi);
        let tau =
            Morphism::parse_with_domain("b -> 01\na -> 11", &Alphabet::from_chars("ab").unwrap())
                .unwrap();
        assert_eq!(tau.codomain().names(), &["1".to_string(), "0".to_string()]);
        assert_eq!(tau.image(1), &[1, 0]);
    }

    #[test]
    fn text_errors() {
        assert!(matches!(
            Morphism::parse("a -> \nb -> a"),
            Err(Error::ErasingRule(_))
        ));
        assert!(matches!(
            Morphism::parse("a -> b\na -> a"),
            Err(Error::DuplicateRule(_))
        ));
        assert!(matches!(
            Morphism::parse("a = b"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Morphism::parse("a -> a\n\nb c -> a"),
            Err(Error::Parse { line: 3, .. })
        ));
        let ab = Alphabet::from_chars("ab").unwrap();
        assert!(matches!(
            Morphism::parse_with_domain("a -> 1", &ab),
            Err(Error::AlphabetMismatch(_))
        ));
        assert!(Morphism::parse_substitution("a -> ab\nb -> c").is_err());
    }
}
