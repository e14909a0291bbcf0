use filtdef::exactseq::{solve, LESInstance};
use filtdef::{DimensionValue, Error};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Every dimension assignment consistent with exactness, found by
/// enumerating map ranks up to `bound`. `None` in an entry means the slot
/// can take infinitely many values.
fn feasible(states: &[Option<u64>], cyclic: bool, bound: u64) -> Vec<Vec<Option<u64>>> {
    let n = states.len();
    let nm = if cyclic { n } else { n - 1 };
    let mut out = Vec::new();
    let mut ranks = vec![0u64; nm];
    loop {
        let mut dims = vec![None; n];
        let mut ok = true;
        for k in 0..n {
            let rin = if cyclic { Some(ranks[(k + n - 1) % n]) } else if k > 0 { Some(ranks[k - 1]) } else { None };
            let rout = if k < nm { Some(ranks[k]) } else { None };
            match (rin, rout) {
                (Some(a), Some(b)) => {
                    dims[k] = Some(a + b);
                    if let Some(d) = states[k] {
                        ok &= d == a + b;
                    }
                }
                (a, b) => {
                    // an end of a finite segment: only an inequality
                    let r = a.or(b).unwrap_or(0);
                    match states[k] {
                        Some(d) => {
                            ok &= d >= r;
                            dims[k] = Some(d);
                        }
                        None => dims[k] = None,
                    }
                }
            }
        }
        if ok {
            out.push(dims);
        }
        let mut i = 0;
        loop {
            if i == nm {
                return out;
            }
            ranks[i] += 1;
            if ranks[i] <= bound {
                break;
            }
            ranks[i] = 0;
            i += 1;
        }
    }
}

fn to_states(v: &[Option<u64>]) -> Vec<DimensionValue> {
    v.iter().map(|d| d.map(DimensionValue::known).unwrap_or(DimensionValue::Unknown)).collect()
}

fn check_against_oracle(input: &[Option<u64>], cyclic: bool) -> Result<(), TestCaseError> {
    let les = LESInstance::from_states(&to_states(input), cyclic);
    let sols = feasible(input, cyclic, 4);
    match solve(&les) {
        Err(Error::Inconsistent(_)) => prop_assert!(sols.is_empty(), "solver rejected a feasible instance"),
        Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        Ok(s) => {
            let out = s.instance.states();
            for (k, v) in out.iter().enumerate() {
                if let Some(d) = v.as_known() {
                    for sol in &sols {
                        prop_assert_eq!(sol[k], Some(d), "slot {} deduced {} but {:?} is feasible", k, d, sol);
                    }
                }
            }
            if input.iter().all(|d| d.is_some()) {
                prop_assert!(!sols.is_empty(), "solver accepted an impossible fully-known instance");
            }
        }
    }
    Ok(())
}

#[test]
fn zero_three_one_zero_forces_two() {
    let input = [Some(0), None, Some(3), Some(1), Some(0)];
    let sols = feasible(&input, false, 4);
    let values: BTreeSet<_> = sols.iter().map(|s| s[1]).collect();
    assert_eq!(values, BTreeSet::from([Some(2)]));
    let s = solve(&LESInstance::from_states(&to_states(&input), false)).unwrap();
    assert_eq!(s.instance.slots[1].state, DimensionValue::Known(2));
}

#[test]
fn perturbation_is_inconsistent() {
    let input = [Some(0), Some(3), Some(3), Some(1), Some(0)];
    assert!(feasible(&input, false, 4).is_empty());
    assert!(matches!(solve(&LESInstance::from_states(&to_states(&input), false)), Err(Error::Inconsistent(_))));
}

fn slot() -> impl Strategy<Value = Option<u64>> {
    prop_oneof![2 => (0u64..4).prop_map(Some), 1 => Just(None)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_brute_force(input in prop::collection::vec(slot(), 2..6), cyclic in any::<bool>()) {
        check_against_oracle(&input, cyclic)?;
    }

    #[test]
    fn random_exact_sequences(ranks in prop::collection::vec(0u64..4, 2..7), hide in prop::collection::vec(any::<bool>(), 8), cyclic in any::<bool>()) {
        // dims from ranks; ends of a finite segment get the adjacent rank
        let n = if cyclic { ranks.len() } else { ranks.len() + 1 };
        let dims: Vec<u64> = (0..n).map(|k| {
            let rin = if cyclic { ranks[(k + n - 1) % n] } else if k > 0 { ranks[k - 1] } else { 0 };
            let rout = if k < ranks.len() { ranks[k] } else { 0 };
            rin + rout
        }).collect();
        let input: Vec<Option<u64>> = dims.iter().zip(hide.iter().cycle()).map(|(d, h)| if *h { None } else { Some(*d) }).collect();
        let s = solve(&LESInstance::from_states(&to_states(&input), cyclic)).expect("a genuine exact sequence is consistent");
        for (k, v) in s.instance.states().iter().enumerate() {
            if let Some(d) = v.as_known() {
                prop_assert_eq!(d, dims[k]);
            }
        }
    }

    #[test]
    fn monotone_and_idempotent(input in prop::collection::vec(slot(), 2..7), cyclic in any::<bool>()) {
        let les = LESInstance::from_states(&to_states(&input), cyclic);
        if let Ok(s) = solve(&les) {
            for (a, b) in les.states().iter().zip(s.instance.states()) {
                if *a != DimensionValue::Unknown {
                    prop_assert_eq!(a, &b);
                }
            }
            let again = solve(&s.instance).unwrap();
            prop_assert!(again.log.iter().all(|d| d.slot.is_none()));
            prop_assert_eq!(again.instance.states(), s.instance.states());
        }
    }
}
