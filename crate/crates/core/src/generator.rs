//! The machine model: finite-state quantum generators observed through
//! periodic measurement protocols.
//!
//! A generator couples a unitary `U` on a finite-dimensional state space with
//! a complete set of pairwise-orthogonal projectors `P(s)`, one per output
//! symbol. A single observed step applies the transition operator
//! `T(s) = U * P(s)` to a row state vector. A measurement protocol is a
//! periodic pattern of measure and skip acts; a skip applies `U` with the
//! identity in place of a projector.
//!
//! Generators are validated on construction and immutable afterwards, so all
//! operations here are pure functions that are safe to call concurrently.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Tolerance used when validating unitarity, projectors, orthogonality,
/// completeness, and density matrices.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Default modulus threshold below which a transition-matrix entry counts as
/// zero for the determinism test. Entries in practice are either exactly zero
/// or of magnitude at least `1/sqrt(2)`, so the test is robust.
pub const DETERMINISM_TOL: f64 = 1e-9;

/// One act of a measurement protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementAct {
    /// Apply `U`, then measure with the full projector set.
    Measure,
    /// Apply `U` only (the projector is the identity).
    Skip,
}

/// Periodic pattern of measure/skip acts, at least one measure per period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementProtocol {
    pattern: Vec<MeasurementAct>,
}

impl MeasurementProtocol {
    pub fn new(pattern: Vec<MeasurementAct>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if !pattern.contains(&MeasurementAct::Measure) {
            return Err(Error::PatternWithoutMeasure);
        }
        Ok(Self { pattern })
    }

    /// Parses a pattern string over `{M, S}`, e.g. `"M"` or `"SM"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pattern = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                'M' => pattern.push(MeasurementAct::Measure),
                'S' => pattern.push(MeasurementAct::Skip),
                other => {
                    return Err(Error::UnknownSymbol {
                        symbol: other.to_string(),
                    })
                }
            }
        }
        Self::new(pattern)
    }

    /// Measure at every step.
    pub fn every_step() -> Self {
        Self {
            pattern: vec![MeasurementAct::Measure],
        }
    }

    pub fn pattern(&self) -> &[MeasurementAct] {
        &self.pattern
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn measures_per_period(&self) -> usize {
        self.pattern
            .iter()
            .filter(|&&a| a == MeasurementAct::Measure)
            .count()
    }

    /// For patterns of the form `S^(k-1) M` returns `k - 1`, otherwise `None`.
    /// Only such patterns admit a single-symbol-per-period effective generator.
    pub fn skip_prefix_len(&self) -> Option<usize> {
        let (last, head) = self.pattern.split_last()?;
        if *last == MeasurementAct::Measure && head.iter().all(|&a| a == MeasurementAct::Skip) {
            Some(head.len())
        } else {
            None
        }
    }
}

impl fmt::Display for MeasurementProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for act in &self.pattern {
            f.write_str(match act {
                MeasurementAct::Measure => "M",
                MeasurementAct::Skip => "S",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MeasurementProtocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Row state vector over the internal states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// A normalized state; the squared norm must be 1 within [`VALIDATION_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::InvalidStateVector { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// Unnormalized intermediate value; the squared norm carries probability.
    pub(crate) fn raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Row-vector times matrix.
    pub fn apply(&self, m: &CMatrix) -> Result<StateVector> {
        if m.rows() != self.dim() {
            return Err(Error::ShapeMismatch {
                left_rows: 1,
                left_cols: self.dim(),
                right_rows: m.rows(),
                right_cols: m.cols(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); m.cols()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += a * m.get(i, j);
            }
        }
        Ok(StateVector::raw(out))
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix over the internal states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let herm = matrix.hermitian_residual()?;
        if herm > VALIDATION_TOL {
            return Err(Error::InvalidDensity {
                reason: "not Hermitian",
                residual: herm,
            });
        }
        let tr = matrix.trace()?;
        let tr_residual = (tr.re - 1.0).hypot(tr.im);
        if tr_residual > VALIDATION_TOL {
            return Err(Error::InvalidDensity {
                reason: "trace is not 1",
                residual: tr_residual,
            });
        }
        let eigenvalues = matrix.hermitian_eigenvalues(VALIDATION_TOL)?;
        if let Some(&min) = eigenvalues.last() {
            if min < -VALIDATION_TOL {
                return Err(Error::InvalidDensity {
                    reason: "negative eigenvalue",
                    residual: -min,
                });
            }
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state `I / dim`.
    pub fn uniform(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// Pure state `psi^H psi` built from a normalized row vector.
    pub fn pure(state: &StateVector) -> Result<Self> {
        let dim = state.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(state.amplitudes()[i].conj() * state.amplitudes()[j]);
            }
        }
        Self::new(CMatrix::new(dim, dim, entries)?)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// A finite-state quantum generator `{U, P(s)}` over a named alphabet.
#[derive(Debug, Clone)]
pub struct QuantumGenerator {
    name: String,
    dim: usize,
    alphabet: Vec<String>,
    unitary: CMatrix,
    projectors: Vec<CMatrix>,
    transitions: Vec<CMatrix>,
}

impl QuantumGenerator {
    /// Validates and builds a generator.
    ///
    /// Checks, in order: shape agreement, unitarity of `U`, that each
    /// `P(s)` is a projector, pairwise orthogonality, and completeness
    /// (`sum_s P(s) = I`). Each failure is reported with the offending
    /// max-norm residual.
    pub fn new(
        name: impl Into<String>,
        unitary: CMatrix,
        alphabet: Vec<String>,
        projectors: Vec<CMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        if !unitary.is_square() {
            return Err(Error::NotSquare {
                rows: unitary.rows(),
                cols: unitary.cols(),
            });
        }
        let dim = unitary.rows();
        if alphabet.len() != projectors.len() {
            return Err(Error::AlphabetMismatch {
                symbols: alphabet.len(),
                projectors: projectors.len(),
            });
        }
        for (i, s) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(s) {
                return Err(Error::DuplicateSymbol { symbol: s.clone() });
            }
        }
        for p in &projectors {
            if p.rows() != dim || p.cols() != dim {
                return Err(Error::ShapeMismatch {
                    left_rows: dim,
                    left_cols: dim,
                    right_rows: p.rows(),
                    right_cols: p.cols(),
                });
            }
        }

        let identity = CMatrix::identity(dim);
        let unitary_residual = unitary
            .matmul(&unitary.adjoint())?
            .max_abs_diff(&identity)?;
        if unitary_residual > VALIDATION_TOL {
            return Err(Error::NotUnitary {
                residual: unitary_residual,
            });
        }

        for (s, p) in alphabet.iter().zip(&projectors) {
            let herm = p.hermitian_residual()?;
            if herm > VALIDATION_TOL {
                return Err(Error::NotProjector {
                    symbol: s.clone(),
                    check: "hermiticity",
                    residual: herm,
                });
            }
            let idem = p.matmul(p)?.max_abs_diff(p)?;
            if idem > VALIDATION_TOL {
                return Err(Error::NotProjector {
                    symbol: s.clone(),
                    check: "idempotence",
                    residual: idem,
                });
            }
        }

        for i in 0..projectors.len() {
            for j in (i + 1)..projectors.len() {
                let cross = projectors[i].matmul(&projectors[j])?.max_abs();
                if cross > VALIDATION_TOL {
                    return Err(Error::ProjectorsNotOrthogonal {
                        a: alphabet[i].clone(),
                        b: alphabet[j].clone(),
                        residual: cross,
                    });
                }
            }
        }

        let mut sum = CMatrix::zeros(dim, dim);
        for p in &projectors {
            sum = sum.add(p)?;
        }
        let completeness = sum.max_abs_diff(&identity)?;
        if completeness > VALIDATION_TOL {
            return Err(Error::ProjectorsIncomplete {
                residual: completeness,
            });
        }

        let transitions = projectors
            .iter()
            .map(|p| unitary.matmul(p))
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            name,
            dim,
            alphabet,
            unitary,
            projectors,
            transitions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: symbol.to_string(),
            })
    }

    pub fn projector(&self, symbol: &str) -> Result<&CMatrix> {
        Ok(&self.projectors[self.symbol_index(symbol)?])
    }

    pub fn projector_by_index(&self, index: usize) -> Result<&CMatrix> {
        self.projectors
            .get(index)
            .ok_or(Error::SymbolIndexOutOfRange {
                index,
                alphabet: self.alphabet.len(),
            })
    }

    /// The transition operator `T(s) = U * P(s)`.
    pub fn transition(&self, symbol: &str) -> Result<&CMatrix> {
        Ok(&self.transitions[self.symbol_index(symbol)?])
    }

    pub fn transition_by_index(&self, index: usize) -> Result<&CMatrix> {
        self.transitions
            .get(index)
            .ok_or(Error::SymbolIndexOutOfRange {
                index,
                alphabet: self.alphabet.len(),
            })
    }

    /// Generator observed through a `S^(k-1) M` protocol: same projectors,
    /// unitary `U^k`, one observed symbol per protocol period.
    ///
    /// Patterns with more than one measure per period (or a measure that is
    /// not in final position) have no such single-symbol form and are
    /// rejected; evaluate them directly with
    /// [`crate::process::word_probability_protocol`] instead.
    pub fn effective(&self, protocol: &MeasurementProtocol) -> Result<QuantumGenerator> {
        let skips = protocol
            .skip_prefix_len()
            .ok_or_else(|| Error::PatternNotReducible {
                pattern: protocol.to_string(),
            })?;
        QuantumGenerator::new(
            self.name.clone(),
            self.unitary.pow(skips + 1)?,
            self.alphabet.clone(),
            self.projectors.clone(),
        )
    }

    /// True iff every `T(s)` has at most one entry of modulus above
    /// `zero_tol` per row. Deterministic in the automata sense: internal
    /// state sequences are in one-to-one correspondence with measurement
    /// sequences.
    pub fn is_deterministic(&self, zero_tol: f64) -> bool {
        self.transitions.iter().all(|t| {
            (0..self.dim).all(|i| {
                (0..self.dim)
                    .filter(|&j| t.get(i, j).norm() > zero_tol)
                    .count()
                    <= 1
            })
        })
    }

    /// Max-norm residual of `sum_s T(s)^H rho T(s) - rho`, the defect of
    /// `rho` under one measurement-averaged step.
    pub fn stationarity_residual(&self, rho: &DensityMatrix) -> Result<f64> {
        let mut evolved = CMatrix::zeros(self.dim, self.dim);
        for t in &self.transitions {
            let term = t.adjoint().matmul(rho.matrix())?.matmul(t)?;
            evolved = evolved.add(&term)?;
        }
        evolved.max_abs_diff(rho.matrix())
    }

    /// Stationary density matrix of a deterministic generator: `I / dim`,
    /// verified stationary under the measurement-averaged evolution.
    ///
    /// Nondeterministic generators are rejected; supply an explicit initial
    /// condition instead.
    pub fn stationary_density(&self) -> Result<DensityMatrix> {
        if !self.is_deterministic(DETERMINISM_TOL) {
            return Err(Error::NotDeterministic {
                context: "stationary density is only provided for deterministic generators"
                    .to_string(),
            });
        }
        let rho = DensityMatrix::uniform(self.dim);
        let residual = self.stationarity_residual(&rho)?;
        if residual > VALIDATION_TOL {
            return Err(Error::StationarityViolated { residual });
        }
        Ok(rho)
    }

    /// True iff the single-step transition graph (an edge `i -> j` when some
    /// `T(s)` has a nonzero `(i, j)` entry) is strongly connected. When it is
    /// not, the uniform stationary distribution is not unique; reports
    /// surface this instead of guessing a preferred component.
    pub fn transition_graph_strongly_connected(&self, zero_tol: f64) -> bool {
        let mut forward = vec![Vec::new(); self.dim];
        let mut backward = vec![Vec::new(); self.dim];
        for t in &self.transitions {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if t.get(i, j).norm() > zero_tol {
                        forward[i].push(j);
                        backward[j].push(i);
                    }
                }
            }
        }
        reaches_all(&forward, self.dim) && reaches_all(&backward, self.dim)
    }
}

fn reaches_all(adjacency: &[Vec<usize>], dim: usize) -> bool {
    let mut seen = vec![false; dim];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(node) = stack.pop() {
        for &next in &adjacency[node] {
            if !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn protocol_parsing_and_shape() {
        let p = MeasurementProtocol::parse("SM").unwrap();
        assert_eq!(p.period(), 2);
        assert_eq!(p.measures_per_period(), 1);
        assert_eq!(p.skip_prefix_len(), Some(1));
        assert_eq!(p.to_string(), "SM");

        assert_eq!(MeasurementProtocol::parse("M").unwrap().skip_prefix_len(), Some(0));
        assert_eq!(MeasurementProtocol::parse("MM").unwrap().skip_prefix_len(), None);
        assert_eq!(MeasurementProtocol::parse("MS").unwrap().skip_prefix_len(), None);
        assert!(matches!(
            MeasurementProtocol::parse(""),
            Err(Error::EmptyPattern)
        ));
        assert!(matches!(
            MeasurementProtocol::parse("SS"),
            Err(Error::PatternWithoutMeasure)
        ));
        assert!(MeasurementProtocol::parse("XM").is_err());
    }

    #[test]
    fn beam_splitter_builds() {
        let (g, _) = builtins::beamsplitter_i();
        assert_eq!(g.dim(), 2);
        assert_eq!(g.alphabet(), &["0".to_string(), "1".to_string()]);
        let a = FRAC_1_SQRT_2;
        // T(0) = U P(0) keeps the first column of the Hadamard.
        let t0 = g.transition("0").unwrap();
        let expected = CMatrix::from_rows(&[
            vec![c(a, 0.0), c(0.0, 0.0)],
            vec![c(a, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(t0.max_abs_diff(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn spin1_transition_matrix() {
        let (g, _) = builtins::spin1_x();
        let t0 = g.transition("0").unwrap();
        let a = FRAC_1_SQRT_2;
        let expected = CMatrix::from_rows(&[
            vec![c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(-a, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(t0.max_abs_diff(&expected).unwrap() <= 1e-12);
    }

    #[test]
    fn identity_projector_gives_back_unitary() {
        let g = QuantumGenerator::new(
            "trivial",
            builtins::hadamard(),
            vec!["x".into()],
            vec![CMatrix::identity(2)],
        )
        .unwrap();
        assert!(g
            .transition("x")
            .unwrap()
            .max_abs_diff(&builtins::hadamard())
            .unwrap()
            <= 1e-15);
    }

    #[test]
    fn incomplete_projectors_are_rejected() {
        let p0 = CMatrix::diagonal(&[1.0, 0.0]);
        let err = QuantumGenerator::new(
            "broken",
            builtins::hadamard(),
            vec!["0".into(), "1".into()],
            vec![p0.clone(), p0],
        );
        // P(0) = P(1) fails orthogonality before completeness.
        assert!(matches!(
            err,
            Err(Error::ProjectorsNotOrthogonal { .. })
        ));

        let err = QuantumGenerator::new(
            "broken",
            builtins::hadamard(),
            vec!["0".into()],
            vec![CMatrix::diagonal(&[1.0, 0.0])],
        );
        assert!(matches!(err, Err(Error::ProjectorsIncomplete { .. })));
    }

    #[test]
    fn non_unitary_is_rejected_with_residual() {
        let err = QuantumGenerator::new(
            "broken",
            CMatrix::diagonal(&[1.0, 0.5]),
            vec!["0".into(), "1".into()],
            vec![CMatrix::diagonal(&[1.0, 0.0]), CMatrix::diagonal(&[0.0, 1.0])],
        );
        match err {
            Err(Error::NotUnitary { residual }) => assert!(residual > 0.5),
            other => panic!("expected NotUnitary, got {other:?}"),
        }
    }

    #[test]
    fn non_projector_is_rejected() {
        let h = builtins::hadamard();
        let err = QuantumGenerator::new(
            "broken",
            CMatrix::identity(2),
            vec!["0".into(), "1".into()],
            vec![h.clone(), h],
        );
        assert!(matches!(err, Err(Error::NotProjector { .. })));
    }

    #[test]
    fn effective_generator_of_measure_pattern_is_unchanged() {
        let (g, _) = builtins::beamsplitter_i();
        let eff = g.effective(&MeasurementProtocol::every_step()).unwrap();
        assert!(eff.unitary().max_abs_diff(g.unitary()).unwrap() <= 1e-15);

        let (g, _) = builtins::spin1_y();
        let eff = g.effective(&MeasurementProtocol::every_step()).unwrap();
        assert!(eff.unitary().max_abs_diff(g.unitary()).unwrap() <= 1e-15);
    }

    #[test]
    fn effective_generator_of_skip_measure_squares_unitary() {
        let (g, protocol) = builtins::beamsplitter_ii();
        let eff = g.effective(&protocol).unwrap();
        assert!(eff
            .unitary()
            .max_abs_diff(&CMatrix::identity(2))
            .unwrap()
            <= 1e-12);
        assert!(eff.unitary().is_unitary(1e-9));
        for s in ["0", "1"] {
            assert!(eff
                .projector(s)
                .unwrap()
                .max_abs_diff(g.projector(s).unwrap())
                .unwrap()
                <= 1e-15);
        }
    }

    #[test]
    fn multi_measure_patterns_have_no_effective_generator() {
        let (g, _) = builtins::beamsplitter_i();
        for pattern in ["MM", "MS", "MSM"] {
            let protocol = MeasurementProtocol::parse(pattern).unwrap();
            assert!(matches!(
                g.effective(&protocol),
                Err(Error::PatternNotReducible { .. })
            ));
        }
    }

    #[test]
    fn determinism_of_builtin_generators() {
        for name in builtins::BUILTIN_NAMES {
            let (g, protocol) = builtins::builtin(name).unwrap();
            let eff = g.effective(&protocol).unwrap();
            assert!(eff.is_deterministic(DETERMINISM_TOL), "{name}");
        }
    }

    #[test]
    fn superposition_projectors_are_nondeterministic() {
        let g = builtins::nondeterministic_demo();
        assert!(!g.is_deterministic(DETERMINISM_TOL));
        assert!(matches!(
            g.stationary_density(),
            Err(Error::NotDeterministic { .. })
        ));
    }

    #[test]
    fn determinism_ignores_global_phase() {
        let (g, _) = builtins::beamsplitter_i();
        let phase = Complex64::from_polar(1.0, 0.7);
        let rotated: Vec<Complex64> = g.unitary().entries().iter().map(|&z| z * phase).collect();
        let u = CMatrix::new(2, 2, rotated).unwrap();
        let g2 = QuantumGenerator::new(
            "phased",
            u,
            g.alphabet().to_vec(),
            vec![
                CMatrix::diagonal(&[1.0, 0.0]),
                CMatrix::diagonal(&[0.0, 1.0]),
            ],
        )
        .unwrap();
        assert!(g2.is_deterministic(DETERMINISM_TOL));
    }

    #[test]
    fn stationary_density_is_uniform() {
        let (g, _) = builtins::beamsplitter_i();
        let rho = g.stationary_density().unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(&CMatrix::diagonal(&[0.5, 0.5]))
            .unwrap()
            <= 1e-12);

        let (g, _) = builtins::spin1_y();
        let rho = g.stationary_density().unwrap();
        let third = 1.0 / 3.0;
        assert!(rho
            .matrix()
            .max_abs_diff(&CMatrix::diagonal(&[third; 3]))
            .unwrap()
            <= 1e-12);

        let (g, protocol) = builtins::beamsplitter_ii();
        let rho = g.effective(&protocol).unwrap().stationary_density().unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(&CMatrix::diagonal(&[0.5, 0.5]))
            .unwrap()
            <= 1e-12);
    }

    #[test]
    fn measurement_completeness_identity() {
        // sum_s T(s)^H T(s) = U^H U = I for every valid generator.
        for name in builtins::BUILTIN_NAMES {
            let (g, _) = builtins::builtin(name).unwrap();
            let mut sum = CMatrix::zeros(g.dim(), g.dim());
            for s in g.alphabet() {
                let t = g.transition(s).unwrap();
                sum = sum.add(&t.adjoint().matmul(t).unwrap()).unwrap();
            }
            assert!(sum.max_abs_diff(&CMatrix::identity(g.dim())).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn reducibility_diagnostic() {
        let (g, _) = builtins::beamsplitter_i();
        assert!(g.transition_graph_strongly_connected(DETERMINISM_TOL));

        let (g, protocol) = builtins::beamsplitter_ii();
        let eff = g.effective(&protocol).unwrap();
        // T(0), T(1) decouple the two states; the chain is reducible.
        assert!(!eff.transition_graph_strongly_connected(DETERMINISM_TOL));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(CMatrix::diagonal(&[0.5, 0.5])).is_ok());
        assert!(matches!(
            DensityMatrix::new(CMatrix::diagonal(&[0.7, 0.5])),
            Err(Error::InvalidDensity { .. })
        ));
        assert!(matches!(
            DensityMatrix::new(CMatrix::diagonal(&[1.5, -0.5])),
            Err(Error::InvalidDensity { .. })
        ));
        let psi = StateVector::new(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]).unwrap();
        let rho = DensityMatrix::pure(&psi).unwrap();
        assert_abs_diff_eq!(rho.matrix().trace().unwrap().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn state_vector_validation() {
        assert!(StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).is_ok());
        assert!(matches!(
            StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::InvalidStateVector { .. })
        ));
        let e1 = StateVector::basis(3, 1);
        assert_abs_diff_eq!(e1.norm_sq(), 1.0);
    }
}
