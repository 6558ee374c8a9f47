//! Value types shared by every stage of the pipeline: tile colors and
//! numbers, tile identities, per-tile confidence matrices, and solved set
//! assignments.
//!
//! All types are immutable values with a canonical total order, so every
//! tie-break downstream is deterministic and free of hidden state.

use std::fmt;

use thiserror::Error;

/// The four tile colors, in canonical order.
///
/// The fourth color is printed as orange in some tile editions; the rules
/// only require four distinguishable colors, so the name is presentational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
    Black,
    Yellow,
}

impl Color {
    pub const COUNT: usize = 4;

    /// All colors in canonical order.
    pub const ALL: [Color; Color::COUNT] = [Color::Red, Color::Blue, Color::Black, Color::Yellow];

    /// Rank in the canonical order, in `0..4`.
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(index: usize) -> Option<Color> {
        match index {
            0 => Some(Color::Red),
            1 => Some(Color::Blue),
            2 => Some(Color::Black),
            3 => Some(Color::Yellow),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Color::Red => "red",
            Color::Blue => "blue",
            Color::Black => "black",
            Color::Yellow => "yellow",
        };
        f.write_str(name)
    }
}

/// A tile number in `1..=13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Number(u8);

impl Number {
    pub const COUNT: usize = 13;
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 13;

    pub const fn new(value: u8) -> Option<Number> {
        if value >= Number::MIN && value <= Number::MAX {
            Some(Number(value))
        } else {
            None
        }
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    /// All numbers in ascending order.
    pub fn all() -> impl Iterator<Item = Number> {
        (Number::MIN..=Number::MAX).map(Number)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A tile's identity: a regular number/color tile or the joker wildcard.
///
/// The derived order is the canonical order used for every tie-break in the
/// solver: regular tiles sorted by (number, color), joker last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TileIdentity {
    Regular(Number, Color),
    Joker,
}

impl TileIdentity {
    /// Size of the identity space: 13 numbers x 4 colors + joker.
    pub const COUNT: usize = Number::COUNT * Color::COUNT + 1;

    /// Position in the canonical order, in `0..53`. Bijective; see
    /// [`TileIdentity::from_canonical_index`] for the inverse.
    pub const fn canonical_index(self) -> usize {
        match self {
            TileIdentity::Regular(n, c) => (n.get() as usize - 1) * Color::COUNT + c.index(),
            TileIdentity::Joker => TileIdentity::COUNT - 1,
        }
    }

    pub const fn from_canonical_index(index: usize) -> Option<TileIdentity> {
        if index + 1 == TileIdentity::COUNT {
            return Some(TileIdentity::Joker);
        }
        if index >= TileIdentity::COUNT {
            return None;
        }
        let number = match Number::new((index / Color::COUNT) as u8 + 1) {
            Some(n) => n,
            None => return None,
        };
        let color = match Color::from_index(index % Color::COUNT) {
            Some(c) => c,
            None => return None,
        };
        Some(TileIdentity::Regular(number, color))
    }

    /// All 53 identities in canonical order.
    pub fn all() -> impl Iterator<Item = TileIdentity> {
        (0..TileIdentity::COUNT).map(|i| TileIdentity::from_canonical_index(i).unwrap())
    }

    pub const fn is_joker(self) -> bool {
        matches!(self, TileIdentity::Joker)
    }
}

impl fmt::Display for TileIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileIdentity::Regular(n, c) => write!(f, "({n}, {c})"),
            TileIdentity::Joker => f.write_str("joker"),
        }
    }
}

/// A confidence channel, used to point at the offending entry in
/// validation errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Color(Color),
    Number(Number),
    Joker,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Channel::Color(c) => write!(f, "color[{c}]"),
            Channel::Number(n) => write!(f, "number[{n}]"),
            Channel::Joker => f.write_str("joker"),
        }
    }
}

/// Validation failure for a [`ConfidenceMatrix`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("confidence matrix has no tiles")]
    EmptyMatrix,
    #[error("negative score {score} for tile {tile}, channel {channel}")]
    NegativeScore {
        tile: usize,
        channel: Channel,
        score: f64,
    },
    #[error("non-finite score for tile {tile}, channel {channel}")]
    NonFiniteScore { tile: usize, channel: Channel },
}

/// Per-tile non-negative scores over colors, numbers, and the joker class,
/// as emitted by upstream classifiers.
///
/// Scores are accepted as-is: they need not sum to one per tile, and the
/// joker channel may be identically zero when the producer has no joker
/// classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceMatrix {
    color: Vec<[f64; Color::COUNT]>,
    number: Vec<[f64; Number::COUNT]>,
    joker: Vec<f64>,
}

impl ConfidenceMatrix {
    /// An all-zero matrix for `tile_count` tiles.
    pub fn zeros(tile_count: usize) -> ConfidenceMatrix {
        ConfidenceMatrix {
            color: vec![[0.0; Color::COUNT]; tile_count],
            number: vec![[0.0; Number::COUNT]; tile_count],
            joker: vec![0.0; tile_count],
        }
    }

    pub fn tile_count(&self) -> usize {
        self.joker.len()
    }

    pub fn color_conf(&self, tile: usize, color: Color) -> f64 {
        self.color[tile][color.index()]
    }

    pub fn number_conf(&self, tile: usize, number: Number) -> f64 {
        self.number[tile][number.get() as usize - 1]
    }

    pub fn joker_conf(&self, tile: usize) -> f64 {
        self.joker[tile]
    }

    pub fn set_color_conf(&mut self, tile: usize, color: Color, score: f64) {
        self.color[tile][color.index()] = score;
    }

    pub fn set_number_conf(&mut self, tile: usize, number: Number, score: f64) {
        self.number[tile][number.get() as usize - 1] = score;
    }

    pub fn set_joker_conf(&mut self, tile: usize, score: f64) {
        self.joker[tile] = score;
    }

    /// Score contribution of assigning `id` to `tile`: the joker score for
    /// a joker, otherwise the color score plus the number score.
    pub fn identity_conf(&self, tile: usize, id: TileIdentity) -> f64 {
        match id {
            TileIdentity::Regular(n, c) => self.color_conf(tile, c) + self.number_conf(tile, n),
            TileIdentity::Joker => self.joker_conf(tile),
        }
    }

    /// Check the matrix invariants: at least one tile, and every score
    /// finite and non-negative. Reports the first offending entry.
    pub fn validate(&self) -> Result<(), MatrixError> {
        if self.tile_count() == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        let check = |tile: usize, channel: Channel, score: f64| {
            if !score.is_finite() {
                Err(MatrixError::NonFiniteScore { tile, channel })
            } else if score < 0.0 {
                Err(MatrixError::NegativeScore {
                    tile,
                    channel,
                    score,
                })
            } else {
                Ok(())
            }
        };
        for tile in 0..self.tile_count() {
            for color in Color::ALL {
                check(tile, Channel::Color(color), self.color_conf(tile, color))?;
            }
            for number in Number::all() {
                check(tile, Channel::Number(number), self.number_conf(tile, number))?;
            }
            check(tile, Channel::Joker, self.joker_conf(tile))?;
        }
        Ok(())
    }
}

/// The kind of a valid set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    Group,
    Run(RunDirection),
}

/// Spatial orientation of a run: `Forward` when the numbers ascend in the
/// given order, `Reverse` when they ascend in the reversed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunDirection {
    Forward,
    Reverse,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Group => f.write_str("Group"),
            SetKind::Run(RunDirection::Forward) => f.write_str("Run(forward)"),
            SetKind::Run(RunDirection::Reverse) => f.write_str("Run(reverse)"),
        }
    }
}

/// A joint labeling of all tiles in one clustered set.
///
/// `identities[i]` labels tile `i` in the cluster's spatial order. Producers
/// guarantee the identities form a valid set and that `score` is their
/// summed confidence.
#[derive(Debug, Clone, PartialEq)]
pub struct SetAssignment {
    pub identities: Vec<TileIdentity>,
    pub kind: SetKind,
    pub score: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8, c: Color) -> TileIdentity {
        TileIdentity::Regular(Number::new(n).unwrap(), c)
    }

    #[test]
    fn canonical_index_examples() {
        assert_eq!(id(1, Color::Red).canonical_index(), 0);
        assert_eq!(TileIdentity::Joker.canonical_index(), 52);
        assert_eq!(id(2, Color::Red).canonical_index(), 4);
    }

    #[test]
    fn canonical_index_is_a_bijection() {
        let mut seen = [false; TileIdentity::COUNT];
        for tile in TileIdentity::all() {
            let index = tile.canonical_index();
            assert!(!seen[index], "index {index} hit twice");
            seen[index] = true;
            assert_eq!(TileIdentity::from_canonical_index(index), Some(tile));
        }
        assert!(seen.iter().all(|&b| b));
        assert_eq!(TileIdentity::from_canonical_index(53), None);
    }

    #[test]
    fn ordering_matches_canonical_index() {
        let mut tiles: Vec<TileIdentity> = TileIdentity::all().collect();
        tiles.sort();
        for (index, tile) in tiles.iter().enumerate() {
            assert_eq!(tile.canonical_index(), index);
        }
    }

    #[test]
    fn number_bounds() {
        assert!(Number::new(0).is_none());
        assert!(Number::new(14).is_none());
        assert_eq!(Number::new(13).unwrap().get(), 13);
        assert_eq!(Number::all().count(), 13);
    }

    #[test]
    fn validate_accepts_all_zero_matrix() {
        assert_eq!(ConfidenceMatrix::zeros(3).validate(), Ok(()));
    }

    #[test]
    fn validate_rejects_negative_score() {
        let mut m = ConfidenceMatrix::zeros(3);
        m.set_color_conf(1, Color::Red, -0.1);
        assert_eq!(
            m.validate(),
            Err(MatrixError::NegativeScore {
                tile: 1,
                channel: Channel::Color(Color::Red),
                score: -0.1,
            })
        );
    }

    #[test]
    fn validate_rejects_non_finite_score() {
        let mut m = ConfidenceMatrix::zeros(2);
        m.set_number_conf(0, Number::new(7).unwrap(), f64::NAN);
        assert_eq!(
            m.validate(),
            Err(MatrixError::NonFiniteScore {
                tile: 0,
                channel: Channel::Number(Number::new(7).unwrap()),
            })
        );
    }

    #[test]
    fn validate_rejects_empty_matrix() {
        assert_eq!(
            ConfidenceMatrix::zeros(0).validate(),
            Err(MatrixError::EmptyMatrix)
        );
    }

    #[test]
    fn identity_conf_splits_by_kind() {
        let mut m = ConfidenceMatrix::zeros(1);
        m.set_color_conf(0, Color::Blue, 0.25);
        m.set_number_conf(0, Number::new(4).unwrap(), 0.5);
        m.set_joker_conf(0, 0.4);
        assert_eq!(m.identity_conf(0, id(4, Color::Blue)), 0.75);
        assert_eq!(m.identity_conf(0, TileIdentity::Joker), 0.4);
    }
}
