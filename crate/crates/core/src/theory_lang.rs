//! The term language for candidate theories.
//!
//! A term is one differential operator applied to one field; a candidate
//! theory is a set of unique terms hypothesized to satisfy
//! `c1*term1 + c2*term2 + ... = 0` with nontrivial constants. Each term
//! carries a compactness weight (identity 1, div and d/dt 4, curl,
//! Laplacian and d2/dt2 7) and the complexity of a candidate is the sum of
//! its term weights. Terms are labelled with display letters A-L, one
//! operator pair per letter pair, first letter acting on E, second on B.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("alphabet contains duplicate term {0}")]
    DuplicateTerm(char),
    #[error("unknown term letter '{0}'")]
    UnknownLetter(char),
    #[error("coefficient count {got} does not match term count {expected}")]
    CoefficientCount { expected: usize, got: usize },
}

/// The observable vector field a term acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    E,
    B,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::E => "E",
            Field::B => "B",
        }
    }
}

/// Differential operators in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Identity,
    Div,
    Curl,
    Laplacian,
    Dt,
    Dtt,
}

impl Operator {
    pub const ALL: [Operator; 6] = [
        Operator::Identity,
        Operator::Div,
        Operator::Curl,
        Operator::Laplacian,
        Operator::Dt,
        Operator::Dtt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Identity => "identity",
            Operator::Div => "div",
            Operator::Curl => "curl",
            Operator::Laplacian => "laplacian",
            Operator::Dt => "dt",
            Operator::Dtt => "dtt",
        }
    }
}

/// Tensor rank of a term value: divergences are scalars, everything else
/// stays a 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TensorRank {
    Scalar,
    Vector3,
}

/// One operator applied to one field.
///
/// Letter, weight and rank are functions of `(field, op)`, so they cannot
/// go stale. The derived ordering (field E before B, then operator order)
/// is the canonical term order used for matrix columns, coefficients and
/// rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub field: Field,
    pub op: Operator,
}

impl Term {
    pub fn new(field: Field, op: Operator) -> Self {
        Term { field, op }
    }

    /// Compactness weight of the term.
    pub fn weight(self) -> u32 {
        match self.op {
            Operator::Identity => 1,
            Operator::Div | Operator::Dt => 4,
            Operator::Curl | Operator::Laplacian | Operator::Dtt => 7,
        }
    }

    pub fn rank(self) -> TensorRank {
        match self.op {
            Operator::Div => TensorRank::Scalar,
            _ => TensorRank::Vector3,
        }
    }

    /// Position of the display letter in A..L.
    pub fn letter_index(self) -> usize {
        let pair = match self.op {
            Operator::Identity => 0,
            Operator::Div => 1,
            Operator::Dt => 2,
            Operator::Curl => 3,
            Operator::Laplacian => 4,
            Operator::Dtt => 5,
        };
        2 * pair
            + match self.field {
                Field::E => 0,
                Field::B => 1,
            }
    }

    pub fn letter(self) -> char {
        (b'A' + self.letter_index() as u8) as char
    }

    /// Position in the fixed enumeration order: operators ranked
    /// identity, div, curl, laplacian, dt, dtt, field E before B within a
    /// pair. This is the order the alphabet, level storage and report
    /// listings use; it differs from letter order, which interleaves the
    /// first and second derivative pairs.
    pub fn enumeration_index(self) -> usize {
        let pair = match self.op {
            Operator::Identity => 0,
            Operator::Div => 1,
            Operator::Curl => 2,
            Operator::Laplacian => 3,
            Operator::Dt => 4,
            Operator::Dtt => 5,
        };
        2 * pair
            + match self.field {
                Field::E => 0,
                Field::B => 1,
            }
    }

    pub fn from_letter(letter: char) -> Result<Self, TheoryError> {
        let idx = (letter as u32).wrapping_sub('A' as u32);
        if idx >= 12 {
            return Err(TheoryError::UnknownLetter(letter));
        }
        let field = if idx.is_multiple_of(2) { Field::E } else { Field::B };
        let op = match idx / 2 {
            0 => Operator::Identity,
            1 => Operator::Div,
            2 => Operator::Dt,
            3 => Operator::Curl,
            4 => Operator::Laplacian,
            _ => Operator::Dtt,
        };
        Ok(Term::new(field, op))
    }

    /// Rendering symbol, e.g. `∇×E` or `∂t B`.
    pub fn symbol(self) -> String {
        let f = self.field.name();
        match self.op {
            Operator::Identity => f.to_string(),
            Operator::Div => format!("∇·{f}"),
            Operator::Curl => format!("∇×{f}"),
            Operator::Laplacian => format!("∇²{f}"),
            Operator::Dt => format!("∂t {f}"),
            Operator::Dtt => format!("∂tt {f}"),
        }
    }
}

/// The full 12-term alphabet in enumeration order.
pub fn physics_alphabet() -> Vec<Term> {
    let mut terms: Vec<Term> = Operator::ALL
        .into_iter()
        .flat_map(|op| [Term::new(Field::E, op), Term::new(Field::B, op)])
        .collect();
    terms.sort_by_key(|t| t.enumeration_index());
    terms
}

/// Sum of the alphabet weights; handy for assertions on target levels.
pub fn term_weights(alphabet: &[Term]) -> Result<Vec<u32>, TheoryError> {
    let mut seen = [false; 12];
    for term in alphabet {
        let idx = term.letter_index();
        if seen[idx] {
            return Err(TheoryError::DuplicateTerm(term.letter()));
        }
        seen[idx] = true;
    }
    Ok(alphabet.iter().map(|t| t.weight()).collect())
}

/// A set of unique terms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Candidate {
    terms: Vec<Term>,
}

impl Candidate {
    /// Builds the candidate as a set: terms are deduplicated and stored in
    /// canonical (field, operator) order regardless of insertion order.
    pub fn new(mut terms: Vec<Term>) -> Self {
        terms.sort();
        terms.dedup();
        Candidate { terms }
    }

    /// Test helper: parse a candidate from display letters, e.g. `"GF"`.
    pub fn from_letters(letters: &str) -> Result<Self, TheoryError> {
        let terms = letters
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(Term::from_letter)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Candidate::new(terms))
    }

    /// Builds a candidate from a letter bitmask over `alphabet` (bit i set
    /// means `alphabet[i]` is a member).
    pub fn from_mask(mask: u16, alphabet: &[Term]) -> Self {
        let terms = alphabet
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, t)| *t)
            .collect();
        Candidate::new(terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Complexity q: the sum of member weights, recomputed on demand.
    pub fn complexity(&self) -> u32 {
        self.terms.iter().map(|t| t.weight()).sum()
    }

    /// True iff all member terms share the same tensor rank. Mixed-rank
    /// sets are ill-typed as linear combinations and are pruned before
    /// validation.
    pub fn rank_homogeneous(&self) -> bool {
        match self.terms.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|t| t.rank() == first.rank()),
        }
    }

    /// Letter bitmask (bit = letter index). Subset tests on candidates are
    /// mask containment tests.
    pub fn letter_mask(&self) -> u16 {
        self.terms
            .iter()
            .fold(0u16, |m, t| m | (1 << t.letter_index()))
    }

    /// Bitmask over positions of `alphabet`; `None` if a member term is
    /// not in the alphabet. Inverse of [`Candidate::from_mask`].
    pub fn mask_in(&self, alphabet: &[Term]) -> Option<u16> {
        let mut mask = 0u16;
        for term in &self.terms {
            let position = alphabet.iter().position(|t| t == term)?;
            mask |= 1 << position;
        }
        Some(mask)
    }

    pub fn contains(&self, other: &Candidate) -> bool {
        let m = self.letter_mask();
        let o = other.letter_mask();
        m & o == o
    }

    /// Display label in canonical term order, e.g. `[E, H]`.
    pub fn letter_label(&self) -> String {
        let letters: Vec<String> = self.terms.iter().map(|t| t.letter().to_string()).collect();
        format!("[{}]", letters.join(", "))
    }

    /// Renders the theory `sum coeff_i * term_i = 0` with terms in
    /// canonical order. Coefficients are shown with 6 significant digits;
    /// a coefficient whose magnitude rounds to 1 at that precision is
    /// printed bare.
    pub fn render(&self, coeffs: &[f64]) -> Result<String, TheoryError> {
        if coeffs.len() != self.terms.len() {
            return Err(TheoryError::CoefficientCount {
                expected: self.terms.len(),
                got: coeffs.len(),
            });
        }
        let mut out = String::new();
        for (i, (term, &c)) in self.terms.iter().zip(coeffs).enumerate() {
            let bare = is_display_one(c);
            if i == 0 {
                if c < 0.0 {
                    out.push('-');
                }
                if !bare {
                    out.push_str(&format!("{:.5e} ", c.abs()));
                }
            } else {
                out.push_str(if c < 0.0 { " - " } else { " + " });
                if !bare {
                    out.push_str(&format!("{:.5e} ", c.abs()));
                }
            }
            out.push_str(&term.symbol());
        }
        out.push_str(" = 0");
        Ok(out)
    }
}

/// True when |c| rounds to exactly 1 at 6 significant digits.
fn is_display_one(c: f64) -> bool {
    (c.abs() - 1.0).abs() < 5e-7
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Candidates order lexicographically by their sorted enumeration-index
/// sequences; this matches the level storage and report listing order.
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = {
            let mut v: Vec<usize> = self.terms.iter().map(|t| t.enumeration_index()).collect();
            v.sort_unstable();
            v
        };
        let b = {
            let mut v: Vec<usize> = other.terms.iter().map(|t| t.enumeration_index()).collect();
            v.sort_unstable();
            v
        };
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_has_twelve_terms_with_expected_weights() {
        let alphabet = physics_alphabet();
        assert_eq!(alphabet.len(), 12);
        let mut weights: Vec<u32> = alphabet.iter().map(|t| t.weight()).collect();
        weights.sort_unstable();
        assert_eq!(weights, vec![1, 1, 4, 4, 4, 4, 7, 7, 7, 7, 7, 7]);
        // Enumeration order ranks operators id, div, curl, lap, dt, dtt;
        // letters cover A..L exactly once.
        let letters: String = alphabet.iter().map(|t| t.letter()).collect();
        assert_eq!(letters, "ABCDGHIJEFKL");
        let mut sorted: Vec<char> = letters.chars().collect();
        sorted.sort_unstable();
        assert_eq!(sorted.iter().collect::<String>(), "ABCDEFGHIJKL");
    }

    #[test]
    fn letter_decoder_matches_operator_pairs() {
        for (letters, op) in [
            ("AB", Operator::Identity),
            ("CD", Operator::Div),
            ("EF", Operator::Dt),
            ("GH", Operator::Curl),
            ("IJ", Operator::Laplacian),
            ("KL", Operator::Dtt),
        ] {
            let mut chars = letters.chars();
            let first = Term::from_letter(chars.next().unwrap()).unwrap();
            let second = Term::from_letter(chars.next().unwrap()).unwrap();
            assert_eq!((first.field, first.op), (Field::E, op));
            assert_eq!((second.field, second.op), (Field::B, op));
        }
        assert!(Term::from_letter('M').is_err());
    }

    #[test]
    fn target_complexities() {
        assert_eq!(Candidate::from_letters("C").unwrap().complexity(), 4);
        assert_eq!(Candidate::from_letters("GF").unwrap().complexity(), 11);
        assert_eq!(Candidate::from_letters("IK").unwrap().complexity(), 14);
        // Divergence pair plus both curl couplings: the full first-order set.
        let total: u32 = ["C", "D", "GF", "HE"]
            .iter()
            .map(|s| Candidate::from_letters(s).unwrap().complexity())
            .sum();
        assert_eq!(total, 30);
        assert_eq!(Candidate::from_letters("JL").unwrap().complexity(), 14);
    }

    #[test]
    fn rank_homogeneity() {
        assert!(Candidate::from_letters("CD").unwrap().rank_homogeneous());
        assert!(!Candidate::from_letters("AC").unwrap().rank_homogeneous());
        assert!(Candidate::from_letters("GFA").unwrap().rank_homogeneous());
        assert!(Candidate::new(vec![]).rank_homogeneous());
    }

    #[test]
    fn canonical_order_is_field_major() {
        // Insertion order must not matter, and E-field terms sort first.
        let a = Candidate::from_letters("FG").unwrap();
        let b = Candidate::from_letters("GF").unwrap();
        assert_eq!(a, b);
        let symbols: Vec<String> = a.terms().iter().map(|t| t.symbol()).collect();
        assert_eq!(symbols, vec!["∇×E", "∂t B"]);
        // {H, E}: dt E (field E) precedes curl B (field B).
        let he = Candidate::from_letters("HE").unwrap();
        let symbols: Vec<String> = he.terms().iter().map(|t| t.symbol()).collect();
        assert_eq!(symbols, vec!["∂t E", "∇×B"]);
    }

    #[test]
    fn render_examples() {
        let c = Candidate::from_letters("C").unwrap();
        assert_eq!(c.render(&[1.0]).unwrap(), "∇·E = 0");

        let gf = Candidate::from_letters("GF").unwrap();
        assert_eq!(gf.render(&[1.0, 1.0]).unwrap(), "∇×E + ∂t B = 0");

        let ik = Candidate::from_letters("IK").unwrap();
        let rendered = ik.render(&[-1.0, 1.11265e-17]).unwrap();
        assert_eq!(rendered, "-∇²E + 1.11265e-17 ∂tt E = 0");
    }

    #[test]
    fn render_near_one_is_bare() {
        let gf = Candidate::from_letters("GF").unwrap();
        let rendered = gf.render(&[1.0, 1.0 + 3.0e-13]).unwrap();
        assert_eq!(rendered, "∇×E + ∂t B = 0");
        let rendered = gf.render(&[1.0, -2.5]).unwrap();
        assert_eq!(rendered, "∇×E - 2.50000e0 ∂t B = 0");
    }

    #[test]
    fn render_rejects_wrong_coefficient_count() {
        let gf = Candidate::from_letters("GF").unwrap();
        assert_eq!(
            gf.render(&[1.0]),
            Err(TheoryError::CoefficientCount { expected: 2, got: 1 })
        );
    }

    #[test]
    fn mask_round_trip_and_subset() {
        let alphabet = physics_alphabet();
        let gf = Candidate::from_letters("GF").unwrap();
        let mask = gf.mask_in(&alphabet).unwrap();
        assert_eq!(Candidate::from_mask(mask, &alphabet), gf);
        let gfa = Candidate::from_letters("GFA").unwrap();
        assert!(gfa.contains(&gf));
        assert!(!gf.contains(&gfa));
        // A term outside the alphabet has no mask.
        assert_eq!(gf.mask_in(&alphabet[..3]), None);
    }

    #[test]
    fn duplicate_alphabet_is_rejected() {
        let mut alphabet = physics_alphabet();
        alphabet.push(alphabet[3]);
        assert_eq!(term_weights(&alphabet), Err(TheoryError::DuplicateTerm('D')));
    }

    #[test]
    fn candidate_ordering_follows_enumeration_order() {
        let c = Candidate::from_letters("C").unwrap();
        let d = Candidate::from_letters("D").unwrap();
        let e = Candidate::from_letters("E").unwrap();
        assert!(c < d && d < e);
        // {A, I} < {A, K} < {B, J}.
        let ai = Candidate::from_letters("AI").unwrap();
        let ak = Candidate::from_letters("AK").unwrap();
        let bj = Candidate::from_letters("BJ").unwrap();
        assert!(ai < ak && ak < bj);
        // The curl coupling pair precedes its mirror: curl E sorts before
        // curl B at the first differing member.
        let gf = Candidate::from_letters("GF").unwrap();
        let he = Candidate::from_letters("HE").unwrap();
        assert!(gf < he);
    }
}
