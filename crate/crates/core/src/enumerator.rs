//! Level-by-level enumeration of weighted subsets in nondecreasing total
//! weight.
//!
//! Candidates are bitmask subsets of a weighted alphabet. Level q holds
//! every subset whose weights sum to exactly q, and is built by the
//! `q: l,m` squeeze: unions of one set from level l and one from level m
//! with l + m = q, l marching up from 1 while m marches down from q - 1.
//! Overlapping unions land below q and are discarded, so levels stay
//! exact. Iterating levels in order yields every candidate of weight at
//! most q_max, most compact first.
//!
//! The module is weight-generic (any alphabet of up to 16 positive
//! integer weights); the physics alphabet enters through its weight
//! vector. A powerset brute force provides the equivalence oracle.

use std::collections::BTreeMap;

use thiserror::Error;

/// Subsets are bitmasks over alphabet positions (bit i = item i).
pub type SubsetMask = u16;

/// Hard cap imposed by the mask width; the discovery alphabet needs 12.
pub const MAX_ALPHABET: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet has {len} items, maximum supported is {MAX_ALPHABET}")]
    AlphabetTooLarge { len: usize },
    #[error("weight at position {index} is zero; weights must be positive")]
    ZeroWeight { index: usize },
    #[error("level {q} cannot be built: levels are only complete through {complete_through}")]
    IncompleteLevels { q: u32, complete_through: u32 },
    #[error("level {q} was already built")]
    LevelAlreadyBuilt { q: u32 },
}

/// Assessment of a freshly formed union, injected into the squeeze.
///
/// `Drop` removes the candidate entirely and is only sound for predicates
/// that all supersets of a failing set also fail (rank homogeneity is
/// such a predicate). `SkipValidation` keeps the candidate available as a
/// building block for higher levels but marks it as not worth validating
/// (sub-theory pruning).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prune {
    Keep,
    Drop,
    SkipValidation,
}

/// Keep-everything predicate for plain enumeration.
pub fn no_prune(_mask: SubsetMask) -> Prune {
    Prune::Keep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelEntry {
    pub mask: SubsetMask,
    pub skip_validation: bool,
}

/// All complete levels built so far, keyed by total weight q.
#[derive(Clone, Debug)]
pub struct TheoryLevels {
    weights: Vec<u32>,
    by_q: BTreeMap<u32, Vec<LevelEntry>>,
    examined_by_q: BTreeMap<u32, u64>,
    complete_through: u32,
}

impl TheoryLevels {
    /// Installs the base cases: the singleton set of every alphabet item,
    /// stored at the level equal to its weight.
    pub fn new(weights: &[u32]) -> Result<Self, EnumError> {
        if weights.is_empty() {
            return Err(EnumError::EmptyAlphabet);
        }
        if weights.len() > MAX_ALPHABET {
            return Err(EnumError::AlphabetTooLarge { len: weights.len() });
        }
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(EnumError::ZeroWeight { index });
        }
        let mut by_q: BTreeMap<u32, Vec<LevelEntry>> = BTreeMap::new();
        let mut examined_by_q: BTreeMap<u32, u64> = BTreeMap::new();
        for (i, &w) in weights.iter().enumerate() {
            by_q.entry(w).or_default().push(LevelEntry {
                mask: 1 << i,
                skip_validation: false,
            });
            *examined_by_q.entry(w).or_default() += 1;
        }
        for level in by_q.values_mut() {
            level.sort_by(|a, b| mask_lex_cmp(a.mask, b.mask));
        }
        Ok(TheoryLevels {
            weights: weights.to_vec(),
            by_q,
            examined_by_q,
            // Level 1 can only hold singletons (unions of two nonempty
            // sets weigh at least 2), so it is complete from the start.
            complete_through: 1,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn subset_weight(&self, mask: SubsetMask) -> u32 {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Entries of level q in enumeration order. Empty for unbuilt levels.
    pub fn level(&self, q: u32) -> &[LevelEntry] {
        self.by_q.get(&q).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Highest q for which levels 1..=q are complete.
    pub fn complete_through(&self) -> u32 {
        self.complete_through
    }

    /// Candidate formations considered while building level q: base-case
    /// singletons plus every union attempt, including attempts discarded
    /// for overlap or duplication. This is the machine-independent measure
    /// of enumeration work.
    pub fn examined_at(&self, q: u32) -> u64 {
        self.examined_by_q.get(&q).copied().unwrap_or(0)
    }

    /// Builds level q from all splits q = l + m of complete lower levels
    /// and returns the newly formed unions (base-case singletons of weight
    /// q are already present and are not repeated in the return value).
    ///
    /// `prune` is consulted once per distinct new candidate.
    pub fn squeeze(
        &mut self,
        q: u32,
        prune: &mut dyn FnMut(SubsetMask) -> Prune,
    ) -> Result<Vec<LevelEntry>, EnumError> {
        if q <= self.complete_through {
            return Err(EnumError::LevelAlreadyBuilt { q });
        }
        if q != self.complete_through + 1 {
            return Err(EnumError::IncompleteLevels {
                q,
                complete_through: self.complete_through,
            });
        }

        let mut attempts: u64 = 0;
        let mut unions: Vec<SubsetMask> = Vec::new();
        for l in 1..=(q / 2) {
            let m = q - l;
            let (low, high) = (self.level(l), self.level(m));
            if l == m {
                for (i, a) in low.iter().enumerate() {
                    for b in &low[i + 1..] {
                        attempts += 1;
                        if a.mask & b.mask == 0 {
                            unions.push(a.mask | b.mask);
                        }
                    }
                }
            } else {
                for a in low {
                    for b in high {
                        attempts += 1;
                        if a.mask & b.mask == 0 {
                            unions.push(a.mask | b.mask);
                        }
                    }
                }
            }
        }
        unions.sort_by(|a, b| mask_lex_cmp(*a, *b));
        unions.dedup();

        let mut fresh: Vec<LevelEntry> = Vec::with_capacity(unions.len());
        for mask in unions {
            match prune(mask) {
                Prune::Drop => {}
                Prune::Keep => fresh.push(LevelEntry { mask, skip_validation: false }),
                Prune::SkipValidation => fresh.push(LevelEntry { mask, skip_validation: true }),
            }
        }

        *self.examined_by_q.entry(q).or_default() += attempts;
        if !fresh.is_empty() {
            let level = self.by_q.entry(q).or_default();
            level.extend(fresh.iter().copied());
            level.sort_by(|a, b| mask_lex_cmp(a.mask, b.mask));
        }
        self.complete_through = q;
        Ok(fresh)
    }
}

/// Lexicographic order on subsets viewed as ascending index sequences.
pub fn mask_lex_cmp(a: SubsetMask, b: SubsetMask) -> std::cmp::Ordering {
    bits(a).cmp(bits(b))
}

fn bits(mask: SubsetMask) -> impl Iterator<Item = u32> {
    (0..MAX_ALPHABET as u32).filter(move |i| mask & (1 << i) != 0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarchEntry {
    pub q: u32,
    pub mask: SubsetMask,
    pub skip_validation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelStat {
    pub q: u32,
    /// Work units spent building the level (see `TheoryLevels::examined_at`).
    pub examined: u64,
    /// Distinct candidates stored at the level.
    pub emitted: usize,
}

#[derive(Clone, Debug)]
pub struct March {
    pub entries: Vec<MarchEntry>,
    pub level_stats: Vec<LevelStat>,
}

impl March {
    pub fn total_examined(&self) -> u64 {
        self.level_stats.iter().map(|s| s.examined).sum()
    }

    pub fn total_emitted(&self) -> u64 {
        self.level_stats.iter().map(|s| s.emitted as u64).sum()
    }
}

/// Enumerates every subset of weight 1..=q_max grouped by weight in
/// nondecreasing order; within a level, enumeration order. The stream is
/// exactly the base cases plus the concatenated squeeze results.
pub fn march(
    weights: &[u32],
    q_max: u32,
    prune: &mut dyn FnMut(SubsetMask) -> Prune,
) -> Result<March, EnumError> {
    let mut levels = TheoryLevels::new(weights)?;
    let mut entries = Vec::new();
    let mut level_stats = Vec::with_capacity(q_max as usize);
    for q in 1..=q_max {
        if q >= 2 {
            levels.squeeze(q, prune)?;
        }
        let level = levels.level(q);
        entries.extend(level.iter().map(|e| MarchEntry {
            q,
            mask: e.mask,
            skip_validation: e.skip_validation,
        }));
        level_stats.push(LevelStat {
            q,
            examined: levels.examined_at(q),
            emitted: level.len(),
        });
    }
    Ok(March { entries, level_stats })
}

/// Powerset oracle: every nonempty subset with weight <= q_max, sorted by
/// (weight, enumeration order). Reference implementation for equivalence
/// tests; quadratic in the powerset size and capped accordingly.
pub fn brute_force_enum(weights: &[u32], q_max: u32) -> Result<Vec<(u32, SubsetMask)>, EnumError> {
    if weights.is_empty() {
        return Err(EnumError::EmptyAlphabet);
    }
    if weights.len() > MAX_ALPHABET {
        return Err(EnumError::AlphabetTooLarge { len: weights.len() });
    }
    if let Some(index) = weights.iter().position(|&w| w == 0) {
        return Err(EnumError::ZeroWeight { index });
    }
    let n = weights.len();
    let mut out: Vec<(u32, SubsetMask)> = Vec::new();
    for mask in 1..(1u32 << n) {
        let mask = mask as SubsetMask;
        let weight: u32 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| weights[i])
            .sum();
        if weight <= q_max {
            out.push((weight, mask));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| mask_lex_cmp(a.1, b.1)));
    Ok(out)
}
