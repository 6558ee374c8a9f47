//! Set-level correction: replace per-tile argmax labels with the highest
//! scoring joint labeling that forms a valid set.
//!
//! The solver enumerates every valid-set template outright — groups are a
//! shared number plus an injective tile-to-color mapping, runs are a color,
//! a start number, and a direction — with joker placements capped at the
//! physical supply of two. The template space is tiny (a few thousand
//! candidates for 13 tiles), so exact search runs in microseconds and needs
//! no general constraint solver.
//!
//! Every candidate is scored through the same [`score`] arithmetic, and ties
//! resolve to the lexicographically smallest identity list in canonical
//! order, so results are bit-for-bit reproducible and agree exactly with the
//! brute-force oracle.

use std::sync::OnceLock;

use thiserror::Error;

use crate::domain::{
    Color, ConfidenceMatrix, MatrixError, Number, SetAssignment, TileIdentity,
};
use crate::rules::{is_valid_set, JOKER_CAP, MAX_GROUP_LEN, MAX_RUN_LEN, MIN_SET_LEN};

/// Largest set size [`brute_force_correct`] accepts; 53^4 assignments is the
/// practical ceiling for full enumeration.
pub const BRUTE_FORCE_MAX_TILES: usize = 4;

/// Knobs for [`correct_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectorConfig {
    /// Maximum jokers the solver may place in one set. Values above the
    /// game's physical supply of two are clamped; lowering it lets a caller
    /// account for jokers already spent elsewhere on the board.
    pub joker_cap: u8,
}

impl Default for CorrectorConfig {
    fn default() -> Self {
        CorrectorConfig {
            joker_cap: JOKER_CAP as u8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrectError {
    #[error("invalid confidence matrix: {0}")]
    InvalidMatrix(#[from] MatrixError),
    #[error("cannot correct a set of {tile_count} tiles; sets hold 3 to 13")]
    BadSize { tile_count: usize },
    #[error("{tile_count} tiles exceeds the brute-force limit of {BRUTE_FORCE_MAX_TILES}")]
    TooLarge { tile_count: usize },
    #[error("no valid set assignment exists")]
    Infeasible,
    #[error("identity list has {identities} entries but the matrix has {tiles} tiles")]
    LengthMismatch { identities: usize, tiles: usize },
}

/// Outcome of correcting one clustered set.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionResult {
    /// The score-maximal valid assignment.
    pub assignment: SetAssignment,
    /// Each tile's unconstrained best identity, ties broken canonically.
    pub raw_argmax: Vec<TileIdentity>,
    /// Whether the raw argmax already forms a valid set.
    pub raw_valid: bool,
    /// Unconstrained argmax score minus the assignment score; zero whenever
    /// the raw prediction was already feasible.
    pub score_gap: f64,
}

/// Summed confidence of assigning `ids` to the matrix's tiles: the joker
/// score where `ids[t]` is a joker, otherwise color plus number score.
pub fn score(ids: &[TileIdentity], m: &ConfidenceMatrix) -> Result<f64, CorrectError> {
    if ids.len() != m.tile_count() {
        return Err(CorrectError::LengthMismatch {
            identities: ids.len(),
            tiles: m.tile_count(),
        });
    }
    Ok(score_slice(ids, m))
}

fn score_slice(ids: &[TileIdentity], m: &ConfidenceMatrix) -> f64 {
    ids.iter()
        .enumerate()
        .map(|(tile, &id)| m.identity_conf(tile, id))
        .sum()
}

/// Per-tile unconstrained argmax over all 53 identities, ties resolved to
/// the canonically smallest identity.
pub fn argmax_identities(m: &ConfidenceMatrix) -> Vec<TileIdentity> {
    (0..m.tile_count())
        .map(|tile| {
            let mut best = TileIdentity::from_canonical_index(0).unwrap();
            let mut best_score = m.identity_conf(tile, best);
            for id in TileIdentity::all().skip(1) {
                let candidate = m.identity_conf(tile, id);
                if candidate > best_score {
                    best = id;
                    best_score = candidate;
                }
            }
            best
        })
        .collect()
}

/// Find the score-maximal valid assignment for one clustered set.
///
/// Requires a valid matrix with 3 to 13 tiles. `Infeasible` is unreachable
/// for such sizes (every size admits at least one run template) but kept so
/// the contract is total.
pub fn correct_set(
    m: &ConfidenceMatrix,
    cfg: &CorrectorConfig,
) -> Result<CorrectionResult, CorrectError> {
    m.validate()?;
    let tile_count = m.tile_count();
    if !(MIN_SET_LEN..=MAX_RUN_LEN).contains(&tile_count) {
        return Err(CorrectError::BadSize { tile_count });
    }
    let cap = (cfg.joker_cap as usize).min(JOKER_CAP);
    let mut search = TemplateSearch::new(m);
    search.enumerate_groups(cap);
    search.enumerate_runs(cap);
    let (best_score, identities) = search.best.ok_or(CorrectError::Infeasible)?;
    Ok(build_result(m, identities, best_score))
}

/// Test oracle: enumerate every identity tuple, keep the valid ones, and
/// return the maximum under the same score and tie-break as [`correct_set`].
///
/// Limited to 4 tiles; the valid-tuple table per size is enumerated once per
/// process and reused across calls.
pub fn brute_force_correct(m: &ConfidenceMatrix) -> Result<CorrectionResult, CorrectError> {
    m.validate()?;
    let tile_count = m.tile_count();
    if tile_count > BRUTE_FORCE_MAX_TILES {
        return Err(CorrectError::TooLarge { tile_count });
    }
    let mut best: Option<(f64, &[TileIdentity])> = None;
    for ids in valid_tuples(tile_count) {
        let candidate = score_slice(ids, m);
        // Tuples arrive in canonical lexicographic order, so strict
        // improvement keeps the smallest identity list among ties.
        let better = match &best {
            None => true,
            Some((best_score, _)) => candidate > *best_score,
        };
        if better {
            best = Some((candidate, ids));
        }
    }
    let (best_score, identities) = best.ok_or(CorrectError::Infeasible)?;
    Ok(build_result(m, identities.to_vec(), best_score))
}

fn build_result(m: &ConfidenceMatrix, identities: Vec<TileIdentity>, best: f64) -> CorrectionResult {
    let kind = is_valid_set(&identities).expect("search yields only valid sets");
    let raw_argmax = argmax_identities(m);
    let raw_score = score_slice(&raw_argmax, m);
    let raw_valid = is_valid_set(&raw_argmax).is_some();
    CorrectionResult {
        assignment: SetAssignment {
            identities,
            kind,
            score: best,
        },
        raw_argmax,
        raw_valid,
        score_gap: raw_score - best,
    }
}

// ── Template enumeration ──────────────────────────────────────────────────

struct TemplateSearch<'m> {
    matrix: &'m ConfidenceMatrix,
    scratch: Vec<TileIdentity>,
    best: Option<(f64, Vec<TileIdentity>)>,
}

impl<'m> TemplateSearch<'m> {
    fn new(matrix: &'m ConfidenceMatrix) -> Self {
        TemplateSearch {
            matrix,
            scratch: vec![TileIdentity::Joker; matrix.tile_count()],
            best: None,
        }
    }

    /// Score the scratch assignment and adopt it when it beats the incumbent
    /// on score, or ties it with a lexicographically smaller identity list.
    fn consider(&mut self) {
        let candidate = score_slice(&self.scratch, self.matrix);
        let better = match &self.best {
            None => true,
            Some((best_score, best_ids)) => {
                candidate > *best_score
                    || (candidate == *best_score && self.scratch.as_slice() < best_ids.as_slice())
            }
        };
        if better {
            self.best = Some((candidate, self.scratch.clone()));
        }
    }

    fn enumerate_groups(&mut self, cap: usize) {
        let tile_count = self.matrix.tile_count();
        if !(MIN_SET_LEN..=MAX_GROUP_LEN).contains(&tile_count) {
            return;
        }
        for number in Number::all() {
            for_each_joker_subset(tile_count, cap, |jokers| {
                let mut regulars = Vec::with_capacity(tile_count);
                for position in 0..tile_count {
                    if jokers.contains(&position) {
                        self.scratch[position] = TileIdentity::Joker;
                    } else {
                        regulars.push(position);
                    }
                }
                let mut used = [false; Color::COUNT];
                self.assign_group_colors(number, &regulars, &mut used);
            });
        }
    }

    /// Try every injective assignment of colors to the non-joker positions.
    fn assign_group_colors(&mut self, number: Number, positions: &[usize], used: &mut [bool; 4]) {
        let Some((&position, rest)) = positions.split_first() else {
            self.consider();
            return;
        };
        for color in Color::ALL {
            if used[color.index()] {
                continue;
            }
            used[color.index()] = true;
            self.scratch[position] = TileIdentity::Regular(number, color);
            self.assign_group_colors(number, rest, used);
            used[color.index()] = false;
        }
    }

    fn enumerate_runs(&mut self, cap: usize) {
        let tile_count = self.matrix.tile_count();
        if !(MIN_SET_LEN..=MAX_RUN_LEN).contains(&tile_count) {
            return;
        }
        let mut base = vec![TileIdentity::Joker; tile_count];
        for color in Color::ALL {
            for ascending in [true, false] {
                for start in 1..=(Number::MAX as usize - tile_count + 1) {
                    for (position, slot) in base.iter_mut().enumerate() {
                        let offset = if ascending {
                            position
                        } else {
                            tile_count - 1 - position
                        };
                        let number = Number::new((start + offset) as u8).unwrap();
                        *slot = TileIdentity::Regular(number, color);
                    }
                    for_each_joker_subset(tile_count, cap, |jokers| {
                        self.scratch.copy_from_slice(&base);
                        for &position in jokers {
                            self.scratch[position] = TileIdentity::Joker;
                        }
                        self.consider();
                    });
                }
            }
        }
    }
}

/// Visit every position subset of size <= cap (cap is at most the joker
/// supply of 2): the empty set, singletons, then pairs.
fn for_each_joker_subset(len: usize, cap: usize, mut visit: impl FnMut(&[usize])) {
    visit(&[]);
    if cap == 0 {
        return;
    }
    for first in 0..len {
        visit(&[first]);
        if cap >= 2 {
            for second in (first + 1)..len {
                visit(&[first, second]);
            }
        }
    }
}

// ── Brute-force support ───────────────────────────────────────────────────

fn enumerate_valid_tuples(len: usize) -> Vec<Vec<TileIdentity>> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut digits = vec![0usize; len];
    let mut ids = vec![TileIdentity::from_canonical_index(0).unwrap(); len];
    loop {
        if is_valid_set(&ids).is_some() {
            out.push(ids.clone());
        }
        // Odometer: bump the last digit, carrying left, so tuples appear in
        // canonical lexicographic order.
        let mut position = len;
        loop {
            if position == 0 {
                return out;
            }
            position -= 1;
            digits[position] += 1;
            if digits[position] < TileIdentity::COUNT {
                ids[position] = TileIdentity::from_canonical_index(digits[position]).unwrap();
                break;
            }
            digits[position] = 0;
            ids[position] = TileIdentity::from_canonical_index(0).unwrap();
        }
    }
}

fn valid_tuples(len: usize) -> &'static [Vec<TileIdentity>] {
    static TABLES: [OnceLock<Vec<Vec<TileIdentity>>>; BRUTE_FORCE_MAX_TILES + 1] =
        [const { OnceLock::new() }; BRUTE_FORCE_MAX_TILES + 1];
    TABLES[len].get_or_init(|| enumerate_valid_tuples(len))
}
