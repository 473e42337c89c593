use hfischer_cli::io::{parse_poly, poly_to_json, PolyJson};
use hfischer_core::sample::random_poly;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn polynomials_survive_json(seed in any::<u64>(), m in 1usize..=5, degree in 0usize..=4) {
        let p = random_poly(&mut ChaCha8Rng::seed_from_u64(seed), m, degree);
        let text = poly_to_json(&p);
        prop_assert_eq!(parse_poly(&text, "t").unwrap(), p.clone());
        // canonical: re-emitting gives the same text
        let json: PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string_pretty(&json).unwrap(), text);
    }

    #[test]
    fn term_order_does_not_matter(seed in any::<u64>(), m in 1usize..=4) {
        let p = random_poly(&mut ChaCha8Rng::seed_from_u64(seed), m, 3);
        let mut json = PolyJson::from(&p);
        json.terms.reverse();
        prop_assert_eq!(json.to_poly("t").unwrap(), p);
    }
}
