//! Deciding whether a candidate theory annihilates the data.
//!
//! A candidate with terms t1..tn is valid when nontrivial constants c
//! exist with `sum c_i t_i = 0` across every experiment. Stacking the
//! evaluated terms into a matrix (rows = experiment components, columns =
//! terms) turns this into a null-space question. Column magnitudes span
//! more than thirty orders, so each column is normalized to unit
//! Euclidean norm first; the null-space dimension is then read off the
//! singular values, and the constants from the right singular vector of
//! the smallest one, rescaled back to raw column units.
//!
//! No prior knowledge of the wave speed enters the conditioning: the
//! normalization is purely per-column, and the speed emerges afterwards
//! from coefficient ratios.

use thiserror::Error;

use crate::svd::jacobi_svd;
use crate::theory_lang::{Candidate, Field, Operator, Term};
use crate::virtual_lab::{DomainError, Experiment, Frame};

/// Smallest normalized null-vector leading component we accept before
/// declaring the fit degenerate (the leading term would not actually
/// participate in the theory).
const MIN_LEADING_COMPONENT: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("candidate has no terms")]
    EmptyCandidate,
    #[error("candidate mixes scalar and vector terms")]
    MixedRank,
    #[error("matrix has {rows} rows but needs at least {needed} for {cols} columns")]
    TooFewRows { rows: usize, cols: usize, needed: usize },
    #[error("matrix columns must be nonempty and of equal length")]
    BadShape,
    #[error("column scale factor must be finite and nonzero, got {0}")]
    BadScale(f64),
    #[error("matrix is not column-normalized")]
    NotNormalized,
    #[error("matrix is already column-normalized")]
    AlreadyNormalized,
    #[error("null-space test needs at least two columns, got {0}")]
    TooFewColumns(usize),
    #[error(
        "null space dimension exceeds 1 (second singular-value ratio {second_ratio:e}); \
         an unremoved sub-theory is present"
    )]
    DegenerateNullSpace { second_ratio: f64 },
    #[error("leading null-vector component {0:e} is consistent with zero; the first term does not participate")]
    ZeroLeadingCoefficient(f64),
    #[error("term {0} is not a compound spatial operator")]
    NotCompound(char),
    #[error("singleton reference column is identically zero")]
    ZeroReference,
    #[error("speed extraction hit a non-positive radicand {radicand:e}; fit is inconsistent")]
    InconsistentSpeedFit { radicand: f64 },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Row provenance: which experiment produced the row and, for vector
/// candidates, which Cartesian component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowKey {
    pub experiment: usize,
    pub component: Option<usize>,
}

/// Term-evaluation matrix in column-major form with per-column scale
/// factors recorded at normalization time.
#[derive(Clone, Debug)]
pub struct DataMatrix {
    columns: Vec<Vec<f64>>,
    column_scales: Vec<f64>,
    row_index: Vec<RowKey>,
    normalized: bool,
}

impl DataMatrix {
    /// Builds a raw (unnormalized) matrix from explicit columns. Used by
    /// tests that need synthetic column geometry.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self, FitError> {
        if columns.is_empty() || columns[0].is_empty() {
            return Err(FitError::BadShape);
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(FitError::BadShape);
        }
        let row_index = (0..rows)
            .map(|i| RowKey { experiment: i, component: None })
            .collect();
        Ok(DataMatrix {
            column_scales: vec![1.0; columns.len()],
            columns,
            row_index,
            normalized: false,
        })
    }

    pub fn nrows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn column_scales(&self) -> &[f64] {
        &self.column_scales
    }

    pub fn row_index(&self) -> &[RowKey] {
        &self.row_index
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.columns[i]
    }

    /// Multiplies a raw column by a constant; models a change of units in
    /// one instrument channel. Rejected after normalization.
    pub fn scale_column(&mut self, col: usize, factor: f64) -> Result<(), FitError> {
        if self.normalized {
            return Err(FitError::AlreadyNormalized);
        }
        if !factor.is_finite() || factor == 0.0 {
            return Err(FitError::BadScale(factor));
        }
        for x in &mut self.columns[col] {
            *x *= factor;
        }
        Ok(())
    }

    /// Normalizes every column to unit Euclidean norm, recording the
    /// scale factors. Exactly zero columns are left in place with scale 1.
    pub fn normalize(&mut self) {
        if self.normalized {
            return;
        }
        for (col, scale) in self.columns.iter_mut().zip(&mut self.column_scales) {
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                *scale = norm;
                for x in col.iter_mut() {
                    *x /= norm;
                }
            } else {
                *scale = 1.0;
            }
        }
        self.normalized = true;
    }
}

/// Outcome of the singular-value null-space test on a normalized matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NullSpaceOutcome {
    /// 0 (only the trivial solution) or 1 (a unique theory up to scale).
    pub dimension: usize,
    /// Raw-scale coefficients, rescaled so the first is exactly +1.
    pub coefficients: Option<Vec<f64>>,
    /// Smallest over largest singular value.
    pub sv_ratio: f64,
    /// Second-smallest over largest singular value; stays above the
    /// threshold whenever sub-theory pruning has done its job.
    pub second_ratio: f64,
    /// `|A v|` on the normalized matrix for the accepted null vector.
    pub residual: Option<f64>,
}

/// Tests whether the normalized matrix has a one-dimensional null space
/// at threshold `eps_sv` and extracts the raw-scale constants if so.
pub fn null_space_test(matrix: &DataMatrix, eps_sv: f64) -> Result<NullSpaceOutcome, FitError> {
    if !matrix.is_normalized() {
        return Err(FitError::NotNormalized);
    }
    let n = matrix.ncols();
    if n < 2 {
        return Err(FitError::TooFewColumns(n));
    }
    let svd = jacobi_svd(&matrix.columns);
    let largest = svd.singular_values[0];
    if largest <= 0.0 {
        return Err(FitError::DegenerateNullSpace { second_ratio: 0.0 });
    }
    let sv_ratio = svd.singular_values[n - 1] / largest;
    let second_ratio = svd.singular_values[n - 2] / largest;
    if sv_ratio >= eps_sv {
        return Ok(NullSpaceOutcome {
            dimension: 0,
            coefficients: None,
            sv_ratio,
            second_ratio,
            residual: None,
        });
    }
    if second_ratio < eps_sv {
        return Err(FitError::DegenerateNullSpace { second_ratio });
    }

    let null_vector = &svd.right_vectors[n - 1];
    if null_vector[0].abs() < MIN_LEADING_COMPONENT {
        return Err(FitError::ZeroLeadingCoefficient(null_vector[0]));
    }

    let mut residual_sq = 0.0;
    for row in 0..matrix.nrows() {
        let mut acc = 0.0;
        for (col, weight) in matrix.columns.iter().zip(null_vector) {
            acc += col[row] * weight;
        }
        residual_sq += acc * acc;
    }

    // Undo the column scaling, then pin the leading coefficient to +1.
    let raw: Vec<f64> = null_vector
        .iter()
        .zip(matrix.column_scales())
        .map(|(v, s)| v / s)
        .collect();
    let lead = raw[0];
    let coefficients: Vec<f64> = raw.iter().map(|c| c / lead).collect();

    Ok(NullSpaceOutcome {
        dimension: 1,
        coefficients: Some(coefficients),
        sv_ratio,
        second_ratio,
        residual: Some(residual_sq.sqrt()),
    })
}

/// Stacks term evaluations into the data matrix: one row per experiment
/// for scalar candidates, three per experiment for vector candidates,
/// columns in the candidate's canonical term order. All terms of one
/// experiment are evaluated through a single [`Frame`], so they share the
/// phase evaluation bit for bit.
pub fn assemble_matrix(
    candidate: &Candidate,
    experiments: &[Experiment],
) -> Result<DataMatrix, FitError> {
    if candidate.is_empty() {
        return Err(FitError::EmptyCandidate);
    }
    if !candidate.rank_homogeneous() {
        return Err(FitError::MixedRank);
    }
    let terms = candidate.terms();
    let components = match terms[0].rank() {
        crate::theory_lang::TensorRank::Scalar => 1,
        crate::theory_lang::TensorRank::Vector3 => 3,
    };
    let rows = experiments.len() * components;
    let cols = terms.len();
    if rows < cols + 1 {
        return Err(FitError::TooFewRows { rows, cols, needed: cols + 1 });
    }

    let mut columns = vec![Vec::with_capacity(rows); cols];
    let mut row_index = Vec::with_capacity(rows);
    for (exp_idx, experiment) in experiments.iter().enumerate() {
        let frame = Frame::new(&experiment.source, &experiment.point)?;
        for (term_idx, term) in terms.iter().enumerate() {
            let value = frame.eval(*term);
            columns[term_idx].extend(value.components());
        }
        for comp in 0..components {
            row_index.push(RowKey {
                experiment: exp_idx,
                component: (components == 3).then_some(comp),
            });
        }
    }
    Ok(DataMatrix {
        column_scales: vec![1.0; cols],
        columns,
        row_index,
        normalized: false,
    })
}

fn stacked_norm<F>(experiments: &[Experiment], mut eval: F) -> Result<f64, FitError>
where
    F: FnMut(&Frame) -> Result<crate::virtual_lab::TermValue, FitError>,
{
    let mut sum_sq = 0.0;
    for experiment in experiments {
        let frame = Frame::new(&experiment.source, &experiment.point)?;
        for component in eval(&frame)?.components() {
            sum_sq += component * component;
        }
    }
    Ok(sum_sq.sqrt())
}

/// Cancellation ratio for a singleton compound spatial operator: the norm
/// of the assembled column over the norm of the column where every signed
/// partial-derivative contribution is replaced by its absolute value. A
/// ratio far below 1 means the operator cancels internally on this data.
pub fn singleton_cancellation_ratio(
    term: Term,
    experiments: &[Experiment],
) -> Result<f64, FitError> {
    match term.op {
        Operator::Div | Operator::Curl | Operator::Laplacian => {}
        _ => return Err(FitError::NotCompound(term.letter())),
    }
    let value_norm = stacked_norm(experiments, |frame| Ok(frame.eval(term)))?;
    let magnitude_norm =
        stacked_norm(experiments, |frame| frame.singleton_reference(term).map_err(Into::into))?;
    if magnitude_norm == 0.0 {
        return Err(FitError::ZeroReference);
    }
    Ok(value_norm / magnitude_norm)
}

/// Validity ratio for any singleton: cancellation ratio for compound
/// operators, plain relative norm against the field magnitude otherwise.
pub fn singleton_validity_ratio(term: Term, experiments: &[Experiment]) -> Result<f64, FitError> {
    match term.op {
        Operator::Div | Operator::Curl | Operator::Laplacian => {
            singleton_cancellation_ratio(term, experiments)
        }
        Operator::Identity | Operator::Dt | Operator::Dtt => {
            let value_norm = stacked_norm(experiments, |frame| Ok(frame.eval(term)))?;
            let field_norm = stacked_norm(experiments, |frame| {
                Ok(frame.eval(Term::new(term.field, Operator::Identity)))
            })?;
            if field_norm == 0.0 {
                return Err(FitError::ZeroReference);
            }
            Ok(value_norm / field_norm)
        }
    }
}

/// A candidate that passed validation, with its constants and singular
/// value diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidatedTheory {
    pub candidate: Candidate,
    /// Raw-scale coefficients in canonical term order, leading entry +1.
    pub coefficients: Vec<f64>,
    pub sv_ratio: f64,
    pub residual: f64,
}

impl ValidatedTheory {
    pub fn q(&self) -> u32 {
        self.candidate.complexity()
    }

    pub fn render(&self) -> String {
        self.candidate
            .render(&self.coefficients)
            .expect("coefficient count matches by construction")
    }
}

/// Fits a candidate against the experiments: singleton zero-test for one
/// term, assemble / normalize / null-space test otherwise. `Ok(None)`
/// means the candidate is simply not a theory of this data.
pub fn fit(
    candidate: &Candidate,
    experiments: &[Experiment],
    eps_sv: f64,
) -> Result<Option<ValidatedTheory>, FitError> {
    if candidate.is_empty() {
        return Err(FitError::EmptyCandidate);
    }
    if !candidate.rank_homogeneous() {
        return Err(FitError::MixedRank);
    }
    if candidate.len() == 1 {
        let ratio = singleton_validity_ratio(candidate.terms()[0], experiments)?;
        if ratio < eps_sv {
            return Ok(Some(ValidatedTheory {
                candidate: candidate.clone(),
                coefficients: vec![1.0],
                sv_ratio: ratio,
                residual: ratio,
            }));
        }
        return Ok(None);
    }

    let mut matrix = assemble_matrix(candidate, experiments)?;
    matrix.normalize();
    let outcome = null_space_test(&matrix, eps_sv)?;
    if outcome.dimension == 0 {
        return Ok(None);
    }
    Ok(Some(ValidatedTheory {
        candidate: candidate.clone(),
        coefficients: outcome.coefficients.expect("dimension 1 carries coefficients"),
        sv_ratio: outcome.sv_ratio,
        residual: outcome.residual.expect("dimension 1 carries a residual"),
    }))
}

/// Recovers the wave speed from a speed-bearing theory: the curl-B
/// coupling `{curl B, dt E}` or a wave pair `{lap F, dtt F}`. Returns the
/// square root of minus the ratio of the curl-or-Laplacian coefficient to
/// the time-derivative coefficient; `None` for forms that do not carry
/// the speed.
pub fn derive_c(theory: &ValidatedTheory) -> Result<Option<f64>, FitError> {
    let terms = theory.candidate.terms();
    let coefficient_of = |field: Field, op: Operator| -> Option<f64> {
        terms
            .iter()
            .position(|t| *t == Term::new(field, op))
            .map(|i| theory.coefficients[i])
    };

    let pair = if terms.len() == 2 {
        if let (Some(space), Some(time)) = (
            coefficient_of(Field::B, Operator::Curl),
            coefficient_of(Field::E, Operator::Dt),
        ) {
            Some((space, time))
        } else if let (Some(space), Some(time)) = (
            coefficient_of(Field::E, Operator::Laplacian),
            coefficient_of(Field::E, Operator::Dtt),
        ) {
            Some((space, time))
        } else if let (Some(space), Some(time)) = (
            coefficient_of(Field::B, Operator::Laplacian),
            coefficient_of(Field::B, Operator::Dtt),
        ) {
            Some((space, time))
        } else {
            None
        }
    } else {
        None
    };

    match pair {
        None => Ok(None),
        Some((space, time)) => {
            let radicand = -space / time;
            if !radicand.is_finite() || radicand <= 0.0 {
                return Err(FitError::InconsistentSpeedFit { radicand });
            }
            Ok(Some(radicand.sqrt()))
        }
    }
}
