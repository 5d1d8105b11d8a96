use proptest::prelude::*;
use terna_core::witness::{construct, thm12_witness, thm13_witness, Clause, Method};
use terna_core::{verify, Error};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_hold_for_large_n(i in 0usize..12, n in 0u64..2_000_000) {
        let clause = Clause::ALL[i];
        let t = construct(clause, n).unwrap();
        prop_assert!(verify(&clause.poly(), n, t.witness));
        let rd = clause.poly().reduce();
        prop_assert_eq!(rd.lift(t.constrained).unwrap(), t.witness);
    }

    #[test]
    fn methods_agree_on_validity(i in 0usize..12, n in 0u64..5000) {
        let clause = Clause::ALL[i];
        let p = clause.poly();
        for method in [Method::Constructive, Method::Search] {
            let w = match (clause.triple(), clause.quadruple()) {
                (Some(t), _) => thm12_witness(t, n, method),
                (_, Some(q)) => thm13_witness(q, n, method),
                _ => unreachable!(),
            }
            .unwrap();
            prop_assert!(verify(&p, n, w));
        }
    }
}

#[test]
fn unsupported_tuples() {
    assert!(matches!(
        thm12_witness((2, 3, 7), 1, Method::Constructive),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(
        thm13_witness((5, 1, 2, 3), 1, Method::Search),
        Err(Error::Unsupported(_))
    ));
}
