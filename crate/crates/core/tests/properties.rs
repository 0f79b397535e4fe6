//! Exhaustive and randomized checks of the stepping-up properties.

use proptest::prelude::*;

use ramsey_stepup::bits::{
    check_property_ii, check_property_iii, delta, delta_sequence, monotone_direction, Direction,
    Vertex,
};
use ramsey_stepup::stepup::build_monotone_chain;

fn vx(value: u64, width: u8) -> Vertex {
    Vertex::new(value, width).unwrap()
}

/// Adjacent consecutive deltas always differ: exhaustive over every
/// ascending triple of width 7.
#[test]
fn property_i_exhaustive_width_7() {
    let width = 7u8;
    let top = 1u64 << width;
    let mut checked = 0u64;
    for a in 0..top {
        for b in a + 1..top {
            let d1 = delta(vx(a, width), vx(b, width)).unwrap();
            for c in b + 1..top {
                let d2 = delta(vx(b, width), vx(c, width)).unwrap();
                assert_ne!(d1, d2, "triple ({a},{b},{c})");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 341_376); // C(128, 3)
}

/// The end-to-end delta is the maximum consecutive delta: exhaustive over
/// ascending triples and 4-tuples of width 6.
#[test]
fn property_ii_exhaustive_small_widths() {
    let width = 6u8;
    let top = 1u64 << width;
    for a in 0..top {
        for b in a + 1..top {
            for c in b + 1..top {
                assert!(check_property_ii(&[vx(a, width), vx(b, width), vx(c, width)]).unwrap());
            }
        }
    }
    let width = 5u8;
    let top = 1u64 << width;
    for a in 0..top {
        for b in a + 1..top {
            for c in b + 1..top {
                for d in c + 1..top {
                    assert!(check_property_ii(&[
                        vx(a, width),
                        vx(b, width),
                        vx(c, width),
                        vx(d, width)
                    ])
                    .unwrap());
                }
            }
        }
    }
}

/// A descent is never echoed: exhaustive over ascending 4-tuples of width 6.
#[test]
fn property_iii_exhaustive_width_6() {
    let width = 6u8;
    let top = 1u64 << width;
    for a in 0..top {
        for b in a + 1..top {
            for c in b + 1..top {
                for d in c + 1..top {
                    assert!(check_property_iii(&[
                        vx(a, width),
                        vx(b, width),
                        vx(c, width),
                        vx(d, width)
                    ])
                    .unwrap());
                }
            }
        }
    }
}

/// Monotone consecutive deltas are hereditary: every subchain of a monotone
/// chain is monotone, and its deltas are the corresponding originals.
#[test]
fn property_iv_on_constructed_chains() {
    use ramsey_stepup::bits::DeltaIndex;

    let all_deltas: Vec<DeltaIndex> = (0..10).map(DeltaIndex).collect();
    for window in all_deltas.windows(6) {
        let chain = build_monotone_chain(window, 10).unwrap();
        // every 4-subset of the chain keeps a monotone delta sequence
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                for k in j + 1..chain.len() {
                    for l in k + 1..chain.len() {
                        let sub = [chain[i], chain[j], chain[k], chain[l]];
                        let deltas = delta_sequence(&sub).unwrap();
                        assert_ne!(
                            monotone_direction(&deltas).unwrap(),
                            Direction::NotMonotone
                        );
                    }
                }
            }
        }
        // and any sub-list of the deltas is realized exactly by some chain
        let sub: Vec<DeltaIndex> = vec![window[0], window[2], window[5]];
        let realized = build_monotone_chain(&sub, 10).unwrap();
        assert_eq!(delta_sequence(&realized).unwrap(), sub);
    }
}

proptest! {
    /// delta is symmetric and below the bit width.
    #[test]
    fn delta_symmetric_and_bounded(a in 0u64..1024, b in 0u64..1024) {
        prop_assume!(a != b);
        let u = vx(a, 10);
        let v = vx(b, 10);
        let d = delta(u, v).unwrap();
        prop_assert_eq!(d, delta(v, u).unwrap());
        prop_assert!(d.0 < 10);
    }

    /// Property II on random ascending 6-tuples of width 10.
    #[test]
    fn property_ii_random_tuples(mut values in proptest::collection::btree_set(0u64..1024, 6)) {
        let vs: Vec<Vertex> = std::mem::take(&mut values).into_iter().map(|v| vx(v, 10)).collect();
        prop_assert!(check_property_ii(&vs).unwrap());
    }

    /// Every delta of a sequence is a valid base point.
    #[test]
    fn delta_sequence_entries_bounded(values in proptest::collection::btree_set(0u64..8192, 2..9)) {
        let vs: Vec<Vertex> = values.into_iter().map(|v| vx(v, 13)).collect();
        for d in delta_sequence(&vs).unwrap() {
            prop_assert!(d.0 < 13);
        }
    }

    /// Chains built from monotone deltas realize them exactly.
    #[test]
    fn monotone_chain_round_trip(deltas in proptest::collection::btree_set(0u8..20, 1..8), decreasing in any::<bool>()) {
        use ramsey_stepup::bits::DeltaIndex;
        let mut ds: Vec<DeltaIndex> = deltas.into_iter().map(DeltaIndex).collect();
        if decreasing {
            ds.reverse();
        }
        let chain = build_monotone_chain(&ds, 20).unwrap();
        prop_assert_eq!(delta_sequence(&chain).unwrap(), ds);
    }
}
