use proptest::prelude::*;
use specrec::spectrum::{
    divisor_closure, maximal_elements, member, parse_list, primes_of, witnesses_not_in, MuSet,
    Spectrum,
};

fn mu(v: &[u64]) -> MuSet {
    MuSet::new(v.iter().copied()).unwrap()
}

// Naive oracle: every n in 1..=max(mu) dividing some element.
fn closure_oracle(m: &MuSet) -> Vec<u64> {
    let max = *m.elements().iter().max().unwrap();
    (1..=max)
        .filter(|n| m.elements().iter().any(|e| e % n == 0))
        .collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn closure_examples() {
    assert_eq!(
        divisor_closure(&mu(&[8, 10, 11, 12])).elements(),
        &[1, 2, 3, 4, 5, 6, 8, 10, 11, 12]
    );
    assert_eq!(divisor_closure(&mu(&[1])).elements(), &[1]);
    assert_eq!(
        divisor_closure(&mu(&[10, 14, 15, 24])).elements(),
        &[1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 15, 24]
    );
}

#[test]
fn maximal_examples() {
    assert_eq!(
        maximal_elements(&[1, 2, 3, 4, 5, 6, 8, 10, 11, 12]).unwrap(),
        mu(&[8, 10, 11, 12])
    );
    assert_eq!(maximal_elements(&[1]).unwrap(), mu(&[1]));
    assert_eq!(
        maximal_elements(&[1, 2, 3, 6, 7, 9, 14]).unwrap(),
        mu(&[6, 9, 14])
    );
    assert!(maximal_elements(&[]).is_err());
}

#[test]
fn member_examples() {
    let mcl = mu(&[9, 14, 20, 22, 24, 30]);
    assert!(member(&mcl, 20).unwrap());
    assert!(member(&mcl, 1).unwrap());
    assert!(!member(&mu(&[10, 14, 15, 24]), 30).unwrap());
    assert!(member(&mcl, 0).is_err());
}

#[test]
fn witness_examples() {
    let target = mu(&[9, 14, 20, 22, 24, 30]);
    // μ(L2(49)) and μ(A10) as shipped in the catalog.
    assert!(witnesses_not_in(&mu(&[7, 24, 25]), &target).contains(&25));
    assert!(witnesses_not_in(&mu(&[8, 9, 10, 12, 15, 21]), &target).contains(&21));
    assert!(witnesses_not_in(&target, &target).is_empty());
}

#[test]
fn primes_examples() {
    assert_eq!(primes_of(&mu(&[8, 10, 11, 12, 14])), vec![2, 3, 5, 7, 11]);
    assert!(primes_of(&mu(&[1])).is_empty());
    assert_eq!(
        primes_of(&mu(&[16, 20, 22, 24, 30, 31, 38, 56])),
        vec![2, 3, 5, 7, 11, 19, 31]
    );
}

#[test]
fn validation() {
    assert!(MuSet::new(Vec::<u64>::new()).is_err());
    assert!(MuSet::new([3, 9]).is_err());
    assert!(MuSet::new([0]).is_err());
    assert!(MuSet::new([1u64 << 63]).is_err());
    assert!(Spectrum::new([1, 2, 6]).is_err());
    assert!(serde_json::from_str::<MuSet>("[2,4]").is_err());
    assert_eq!(serde_json::to_string(&mu(&[12, 8])).unwrap(), "[8,12]");
    match parse_list("8,10,x") {
        Err(specrec::Error::Parse { column, .. }) => assert_eq!(column, 6),
        other => panic!("unexpected {other:?}"),
    }
}

fn arb_mu() -> impl Strategy<Value = MuSet> {
    prop::collection::vec(1u64..200, 1..8).prop_map(|v| maximal_elements(&v).unwrap())
}

proptest! {
    #[test]
    fn round_trip(m in arb_mu()) {
        prop_assert_eq!(divisor_closure(&m).mu(), m);
    }

    #[test]
    fn closure_matches_oracle_and_is_idempotent(m in arb_mu()) {
        let s = divisor_closure(&m);
        let oracle = closure_oracle(&m);
        prop_assert_eq!(s.elements(), oracle.as_slice());
        let again = divisor_closure(&s.mu());
        prop_assert_eq!(again, s.clone());
        prop_assert!(Spectrum::new(s.elements().iter().copied()).is_ok());
    }

    #[test]
    fn member_iff_in_closure(m in arb_mu()) {
        let s = closure_oracle(&m);
        for n in 1..=*m.elements().iter().max().unwrap() {
            prop_assert_eq!(member(&m, n).unwrap(), s.contains(&n));
        }
    }

    #[test]
    fn witnesses_are_minimal_and_sound(a in arb_mu(), b in arb_mu()) {
        let ca = closure_oracle(&a);
        let cb = closure_oracle(&b);
        let ws = witnesses_not_in(&a, &b);
        let subset = ca.iter().all(|n| cb.contains(n));
        prop_assert_eq!(ws.is_empty(), subset);
        for &w in &ws {
            prop_assert!(ca.contains(&w) && !cb.contains(&w));
            for d in 1..w {
                if w % d == 0 {
                    prop_assert!(cb.contains(&d), "{} has proper divisor {} outside b", w, d);
                }
            }
        }
        // Every missing order is a multiple of some witness.
        for n in ca.iter().filter(|n| !cb.contains(n)) {
            prop_assert!(ws.iter().any(|w| n % w == 0));
        }
    }

    #[test]
    fn primes_oracle(m in arb_mu()) {
        let want: Vec<u64> = (2..=*m.elements().iter().max().unwrap())
            .filter(|&p| is_prime(p) && m.elements().iter().any(|e| e % p == 0))
            .collect();
        prop_assert_eq!(primes_of(&m), want);
    }

    #[test]
    fn parse_round_trip(m in arb_mu()) {
        let text = m.elements().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(MuSet::new(parse_list(&text).unwrap()).unwrap(), m);
    }
}
