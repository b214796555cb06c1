use proptest::prelude::*;
use tropdef::{parse_system, read_certificate, serialize_system, write_certificate};
use tropdef_core::algebra::{
    DefectTuple, Exponent, LaurentPolynomial, PolynomialSystem, ValuedCoefficient, Variables, WeightVector,
};
use tropdef_core::defects::{Certificate, CertificateMode, DetectionLine, OracleKind};
use tropdef_core::num::{ratio, Rational};

const NAMES: [&str; 4] = ["x", "y", "z1", "w_2"];

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// A `t`-sum with up to three terms and rational exponents.
fn tsum() -> impl Strategy<Value = ValuedCoefficient> {
    prop::collection::vec((rational(), (-6i64..=6, 1i64..=3)), 1..=3).prop_map(|parts| {
        ValuedCoefficient::from_parts(parts.into_iter().map(|(c, (e, d))| (ratio(e, d), c)), [(Rational::from_integer(0.into()), Rational::from_integer(1.into()))])
            .unwrap()
    })
}

/// A quotient of two small `t`-polynomials.
fn fraction() -> impl Strategy<Value = ValuedCoefficient> {
    let small = || {
        prop::collection::vec((rational(), -3i64..=3), 1..=2).prop_map(|parts| {
            ValuedCoefficient::from_parts(parts.into_iter().map(|(c, e)| (ratio(e, 1), c)), [(ratio(0, 1), ratio(1, 1))]).unwrap()
        })
    };
    (small(), small()).prop_filter_map("nonzero denominator", |(a, b)| if b.is_zero() { None } else { Some(&a / &b) })
}

fn system(coefficient: BoxedStrategy<ValuedCoefficient>) -> impl Strategy<Value = PolynomialSystem> {
    (1usize..=4).prop_flat_map(move |n| {
        let term = (prop::collection::vec(-3i64..=3, n), coefficient.clone());
        prop::collection::vec(prop::collection::vec(term, 1..=4), 1..=3).prop_filter_map("nonzero generators", move |gens| {
            let vars = Variables::new(&NAMES[..n]);
            let polys: Vec<LaurentPolynomial> = gens
                .into_iter()
                .map(|ts| LaurentPolynomial::from_terms(&vars, ts.into_iter().map(|(e, c)| (Exponent(e), c))))
                .collect();
            if polys.iter().any(LaurentPolynomial::is_zero) {
                return None;
            }
            PolynomialSystem::new(&vars, polys).ok()
        })
    })
}

fn certificate() -> impl Strategy<Value = Certificate> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(rational(), n), 1..=3),
            prop::option::of(prop::collection::vec(0i64..=3, n)),
            0usize..3,
            prop::option::of(0usize..3),
            prop::option::of(0usize..4),
            prop::sample::subsequence(vec!["(*) asserted", "SG asserted", "WG asserted", "tropical basis trusted"], 0..=4),
            prop::collection::vec(tsum().prop_filter("nonzero", |c| !c.is_zero()), 0..n),
            prop::option::of("[0-9a-f]{16}"),
        )
            .prop_map(move |(weights, witness, mode, oracle, line, assumptions, affine, digest)| Certificate {
                system_digest: digest.unwrap_or_default(),
                variables: NAMES[..n].iter().map(|s| s.to_string()).collect(),
                tuple: DefectTuple::new(weights.into_iter().map(WeightVector).collect()).unwrap(),
                witness: witness.map(Exponent),
                mode: [CertificateMode::PositiveDimensional, CertificateMode::VarietyExclusion, CertificateMode::WitnessMonomial][mode],
                oracle: oracle.map(|k| [OracleKind::TrivialValuation, OracleKind::GroebnerOverapproximation, OracleKind::TropicalBasis][k]),
                line: line.map(|k| {
                    [
                        DetectionLine::PositiveDimensional,
                        DetectionLine::VarietyExclusion,
                        DetectionLine::HighDimensional,
                        DetectionLine::StableExclusion,
                    ][k]
                }),
                assumptions: assumptions.into_iter().map(String::from).collect(),
                affine,
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_inverts_serialize(f in system(tsum().boxed())) {
        let text = serialize_system(&f);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &f, "{}", text);
    }

    // fraction coefficients are cleared once, after which the text is stable
    #[test]
    fn serialize_is_stable(f in system(fraction().boxed())) {
        let text = serialize_system(&f);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(back.len(), f.len());
        prop_assert_eq!(serialize_system(&back), text);
    }

    #[test]
    fn certificate_json_round_trip(cert in certificate()) {
        let text = write_certificate(&cert);
        let back = read_certificate(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(write_certificate(&back), text);
    }
}
