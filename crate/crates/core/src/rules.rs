//! Set validity: groups, runs, and the combined check with joker wildcards.
//!
//! These are total functions over identity lists. Runs are judged in the
//! order given; [`is_valid_set`] additionally tries the reversed order, so
//! callers never need to care which way a photographed run ascends.

use crate::domain::{Color, Number, RunDirection, SetKind, TileIdentity};

/// Jokers physically available in one game; no set can show more.
pub const JOKER_CAP: usize = 2;

/// Minimum tiles in any set.
pub const MIN_SET_LEN: usize = 3;
/// Maximum tiles in a group (one per color).
pub const MAX_GROUP_LEN: usize = 4;
/// Maximum tiles in a run (numbers 1 through 13).
pub const MAX_RUN_LEN: usize = 13;

fn joker_count(ids: &[TileIdentity]) -> usize {
    ids.iter().filter(|id| id.is_joker()).count()
}

/// True iff `ids` is a valid group: 3 or 4 tiles whose non-joker members
/// share one number and carry pairwise distinct colors.
pub fn is_valid_group(ids: &[TileIdentity]) -> bool {
    if ids.len() < MIN_SET_LEN || ids.len() > MAX_GROUP_LEN {
        return false;
    }
    if joker_count(ids) > JOKER_CAP {
        return false;
    }
    let mut shared_number: Option<Number> = None;
    let mut seen_colors = [false; Color::COUNT];
    for id in ids {
        let TileIdentity::Regular(number, color) = *id else {
            continue;
        };
        if shared_number.get_or_insert(number) != &number {
            return false;
        }
        if seen_colors[color.index()] {
            return false;
        }
        seen_colors[color.index()] = true;
    }
    // Jokers must stand for the missing colors; len <= 4 guarantees enough.
    true
}

/// True iff `ids`, in the order given, is a valid run: 3 to 13 tiles whose
/// non-joker members share one color and sit at consecutive numbers, with
/// every position (joker or not) inside `1..=13`.
pub fn is_valid_run(ids: &[TileIdentity]) -> bool {
    let len = ids.len();
    if !(MIN_SET_LEN..=MAX_RUN_LEN).contains(&len) {
        return false;
    }
    if joker_count(ids) > JOKER_CAP {
        return false;
    }
    let mut shared_color: Option<Color> = None;
    let mut start: Option<i32> = None;
    for (position, id) in ids.iter().enumerate() {
        let TileIdentity::Regular(number, color) = *id else {
            continue;
        };
        if shared_color.get_or_insert(color) != &color {
            return false;
        }
        // Each non-joker pins the run's start number; all must agree.
        let implied_start = number.get() as i32 - position as i32;
        if start.get_or_insert(implied_start) != &implied_start {
            return false;
        }
    }
    match start {
        Some(s) => s >= 1 && s + len as i32 - 1 <= Number::MAX as i32,
        // Unreachable for real inputs: the joker cap leaves at least one
        // regular tile in any list of 3 or more.
        None => false,
    }
}

/// Classify `ids` as a valid set, trying group first, then the run in the
/// given order, then the run in reversed order. The fixed precedence makes
/// joker-heavy lists that satisfy several readings deterministic.
pub fn is_valid_set(ids: &[TileIdentity]) -> Option<SetKind> {
    if is_valid_group(ids) {
        return Some(SetKind::Group);
    }
    if is_valid_run(ids) {
        return Some(SetKind::Run(RunDirection::Forward));
    }
    let reversed: Vec<TileIdentity> = ids.iter().rev().copied().collect();
    if is_valid_run(&reversed) {
        return Some(SetKind::Run(RunDirection::Reverse));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8, c: Color) -> TileIdentity {
        TileIdentity::Regular(Number::new(n).unwrap(), c)
    }

    const J: TileIdentity = TileIdentity::Joker;

    #[test]
    fn group_examples() {
        assert!(is_valid_group(&[
            id(7, Color::Red),
            id(7, Color::Blue),
            id(7, Color::Black)
        ]));
        assert!(!is_valid_group(&[
            id(7, Color::Red),
            id(7, Color::Red),
            id(7, Color::Blue)
        ]));
        assert!(is_valid_group(&[id(7, Color::Red), J, id(7, Color::Black)]));
        assert!(!is_valid_group(&[
            id(7, Color::Red),
            id(8, Color::Red),
            id(9, Color::Red)
        ]));
    }

    #[test]
    fn group_size_bounds() {
        assert!(!is_valid_group(&[]));
        assert!(!is_valid_group(&[id(7, Color::Red), id(7, Color::Blue)]));
        assert!(is_valid_group(&[
            id(7, Color::Red),
            id(7, Color::Blue),
            id(7, Color::Black),
            id(7, Color::Yellow)
        ]));
        assert!(!is_valid_group(&[
            id(7, Color::Red),
            id(7, Color::Blue),
            id(7, Color::Black),
            id(7, Color::Yellow),
            J
        ]));
    }

    #[test]
    fn group_with_two_jokers_and_one_tile_is_valid() {
        assert!(is_valid_group(&[id(5, Color::Red), J, J]));
    }

    #[test]
    fn run_examples() {
        assert!(is_valid_run(&[
            id(4, Color::Blue),
            id(5, Color::Blue),
            id(6, Color::Blue)
        ]));
        assert!(is_valid_run(&[id(4, Color::Blue), J, id(6, Color::Blue)]));
        assert!(!is_valid_run(&[id(12, Color::Red), J, J]));
        assert!(!is_valid_run(&[
            id(4, Color::Blue),
            id(6, Color::Blue),
            id(5, Color::Blue)
        ]));
    }

    #[test]
    fn run_start_must_stay_in_range() {
        assert!(is_valid_run(&[J, J, id(3, Color::Red)]));
        assert!(!is_valid_run(&[J, J, id(2, Color::Red)]));
        assert!(is_valid_run(&[id(11, Color::Red), id(12, Color::Red), J]));
        let full: Vec<TileIdentity> = (1..=13).map(|n| id(n, Color::Black)).collect();
        assert!(is_valid_run(&full));
    }

    #[test]
    fn run_rejects_mixed_colors() {
        assert!(!is_valid_run(&[
            id(4, Color::Blue),
            id(5, Color::Red),
            id(6, Color::Blue)
        ]));
    }

    #[test]
    fn set_examples() {
        assert_eq!(
            is_valid_set(&[id(7, Color::Red), id(7, Color::Blue), id(7, Color::Black)]),
            Some(SetKind::Group)
        );
        assert_eq!(
            is_valid_set(&[id(6, Color::Blue), id(5, Color::Blue), id(4, Color::Blue)]),
            Some(SetKind::Run(RunDirection::Reverse))
        );
        assert_eq!(
            is_valid_set(&[id(1, Color::Red), id(2, Color::Blue), id(3, Color::Red)]),
            None
        );
    }

    #[test]
    fn set_precedence_prefers_group_then_forward() {
        // One real tile plus two jokers reads as group, forward run, and
        // reverse run; group wins.
        assert_eq!(
            is_valid_set(&[id(5, Color::Red), J, J]),
            Some(SetKind::Group)
        );
        // A palindromic joker run is forward before reverse.
        assert_eq!(
            is_valid_set(&[J, id(5, Color::Blue), J, id(7, Color::Blue)]),
            Some(SetKind::Run(RunDirection::Forward))
        );
    }

    #[test]
    fn more_than_two_jokers_never_valid() {
        assert!(is_valid_set(&[J, J, J]).is_none());
        assert!(is_valid_set(&[id(5, Color::Red), J, J, J]).is_none());
    }

    #[test]
    fn short_and_long_lists_never_valid() {
        assert!(is_valid_set(&[]).is_none());
        assert!(is_valid_set(&[id(5, Color::Red), id(5, Color::Blue)]).is_none());
        let too_long: Vec<TileIdentity> = (1..=13)
            .map(|n| id(n, Color::Black))
            .chain([id(1, Color::Black)])
            .collect();
        assert!(is_valid_set(&too_long).is_none());
    }

    mod proptests {
        use super::*;
        use proptest::prelude::*;

        fn any_identity() -> impl Strategy<Value = TileIdentity> {
            (0..TileIdentity::COUNT)
                .prop_map(|i| TileIdentity::from_canonical_index(i).unwrap())
        }

        proptest! {
            #[test]
            fn group_validity_is_permutation_invariant(
                ids in proptest::collection::vec(any_identity(), 0..8),
                seed in any::<u64>(),
            ) {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let mut shuffled = ids.clone();
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                shuffled.shuffle(&mut rng);
                prop_assert_eq!(is_valid_group(&ids), is_valid_group(&shuffled));
            }

            #[test]
            fn run_validity_is_reversal_covariant(
                ids in proptest::collection::vec(any_identity(), 3..=13),
            ) {
                let reversed: Vec<TileIdentity> = ids.iter().rev().copied().collect();
                // A forward-valid run is visible to is_valid_set from either
                // spatial orientation.
                if is_valid_run(&ids) {
                    prop_assert!(is_valid_set(&reversed).is_some());
                }
            }

            #[test]
            fn valid_sets_have_lawful_size_and_jokers(
                ids in proptest::collection::vec(any_identity(), 0..16),
            ) {
                if is_valid_set(&ids).is_some() {
                    prop_assert!(ids.len() >= MIN_SET_LEN && ids.len() <= MAX_RUN_LEN);
                    let jokers = ids.iter().filter(|id| id.is_joker()).count();
                    prop_assert!(jokers <= JOKER_CAP);
                }
            }
        }
    }
}
