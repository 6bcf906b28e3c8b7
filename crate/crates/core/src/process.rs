//! Word distributions of measured quantum processes.
//!
//! The probability of observing a measurement word `w = s_1 .. s_L` is
//! computed from the running operator product `T(w) = T(s_1) ... T(s_L)`:
//! `Pr(w) = Tr[T(w)^H rho T(w)]` for a density-matrix initial condition, or
//! `Pr(w) = |psi T(w)|^2` for a state-vector one. Exact distributions come
//! from a pruned prefix-tree enumeration; an independent Monte Carlo sampler
//! with projective collapse provides an empirical cross-check.
//!
//! Enumeration expands the prefix tree level by level. Prefix probability is
//! monotone non-increasing along extensions, so dropping prefixes at or below
//! `prune_tol` is sound. Disjoint subtrees are expanded concurrently when the
//! `parallel` feature is enabled; children are collected in lexicographic
//! word order either way, so parallel and sequential runs produce identical
//! results bit for bit.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generator::{DensityMatrix, MeasurementAct, MeasurementProtocol, QuantumGenerator, StateVector};
use crate::linalg::CMatrix;

/// Default pruning threshold. Structural zeros (projector orthogonality and
/// destructive interference) sit many orders of magnitude below it, genuine
/// word probabilities many orders above.
pub const DEFAULT_PRUNE_TOL: f64 = 1e-12;

/// Default cap on the number of live prefixes per enumeration level.
pub const DEFAULT_MAX_LIVE_PREFIXES: usize = 10_000_000;

/// Outcome probabilities below this are treated as numerically degenerate
/// when sampling.
const DEGENERACY_TOL: f64 = 1e-12;

#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 1024;
#[cfg(feature = "parallel")]
const PARALLEL_CHUNK: usize = 512;

/// Initial condition for word probabilities.
#[derive(Debug, Clone)]
pub enum Initial {
    Density(DensityMatrix),
    Vector(StateVector),
}

impl From<DensityMatrix> for Initial {
    fn from(rho: DensityMatrix) -> Self {
        Initial::Density(rho)
    }
}

impl From<StateVector> for Initial {
    fn from(psi: StateVector) -> Self {
        Initial::Vector(psi)
    }
}

impl Initial {
    fn dim(&self) -> usize {
        match self {
            Initial::Density(rho) => rho.dim(),
            Initial::Vector(psi) => psi.dim(),
        }
    }

    /// Probability carried by the operator product `op`.
    fn probability(&self, op: &CMatrix) -> Result<f64> {
        match self {
            // Tr[op^H rho op] is the Frobenius inner product of op and
            // rho*op; accumulated entry by entry to avoid materializing the
            // product in the enumeration hot path.
            Initial::Density(rho) => {
                let rho = rho.matrix();
                if rho.cols() != op.rows() {
                    return Err(Error::ShapeMismatch {
                        left_rows: rho.rows(),
                        left_cols: rho.cols(),
                        right_rows: op.rows(),
                        right_cols: op.cols(),
                    });
                }
                let n = op.rows();
                let m = op.cols();
                let mut acc = 0.0;
                for i in 0..n {
                    for j in 0..m {
                        let mut s = num_complex::Complex64::new(0.0, 0.0);
                        for k in 0..n {
                            s += rho.get(i, k) * op.get(k, j);
                        }
                        let o = op.get(i, j);
                        acc += o.re * s.re + o.im * s.im;
                    }
                }
                Ok(acc)
            }
            Initial::Vector(psi) => Ok(psi.apply(op)?.norm_sq()),
        }
    }
}

/// Exact or empirical map from length-L words to probabilities.
///
/// Words are sequences of symbol indices into the generator alphabet; absent
/// words carry probability zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WordDistribution {
    length: usize,
    kind: DistributionKind,
    sample_count: Option<usize>,
    entries: BTreeMap<Vec<u8>, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Exact,
    Empirical,
}

impl WordDistribution {
    /// Builds an exact distribution, validating word lengths and probability range.
    pub fn exact(length: usize, entries: BTreeMap<Vec<u8>, f64>) -> Result<Self> {
        for (index, (word, &p)) in entries.iter().enumerate() {
            if word.len() != length {
                return Err(Error::WordLengthMismatch {
                    expected: length,
                    found: word.len(),
                });
            }
            if !(0.0..=1.0 + 1e-12).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidProbability { index, value: p });
            }
        }
        Ok(Self {
            length,
            kind: DistributionKind::Exact,
            sample_count: None,
            entries,
        })
    }

    fn empirical(length: usize, windows: usize, entries: BTreeMap<Vec<u8>, f64>) -> Self {
        Self {
            length,
            kind: DistributionKind::Empirical,
            sample_count: Some(windows),
            entries,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    /// Number of sliding windows behind an empirical distribution.
    pub fn sample_count(&self) -> Option<usize> {
        self.sample_count
    }

    /// Probability of a word; zero when absent.
    pub fn probability(&self, word: &[u8]) -> f64 {
        self.entries.get(word).copied().unwrap_or(0.0)
    }

    /// Words in lexicographic order with their probabilities.
    pub fn iter(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.entries.iter().map(|(w, &p)| (w.as_slice(), p))
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }
}

/// A sampled measurement record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    symbols: Vec<u8>,
    seed: u64,
    initial_state_index: usize,
}

impl Trajectory {
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn initial_state_index(&self) -> usize {
        self.initial_state_index
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

fn check_word(g: &QuantumGenerator, word: &[u8]) -> Result<()> {
    for &s in word {
        if usize::from(s) >= g.alphabet_size() {
            return Err(Error::SymbolIndexOutOfRange {
                index: usize::from(s),
                alphabet: g.alphabet_size(),
            });
        }
    }
    Ok(())
}

fn check_dim(g: &QuantumGenerator, init: &Initial) -> Result<()> {
    if init.dim() != g.dim() {
        return Err(Error::ShapeMismatch {
            left_rows: g.dim(),
            left_cols: g.dim(),
            right_rows: init.dim(),
            right_cols: init.dim(),
        });
    }
    Ok(())
}

/// Operator product `T(s_1) ... T(s_L)`; the empty word gives the identity.
pub fn word_operator(g: &QuantumGenerator, word: &[u8]) -> Result<CMatrix> {
    check_word(g, word)?;
    let mut op = CMatrix::identity(g.dim());
    for &s in word {
        op = op.matmul(g.transition_by_index(usize::from(s))?)?;
    }
    Ok(op)
}

/// Probability of a measurement word under an initial condition.
pub fn word_probability(g: &QuantumGenerator, init: &Initial, word: &[u8]) -> Result<f64> {
    check_dim(g, init)?;
    let op = word_operator(g, word)?;
    init.probability(&op)
}

/// Probability of an observed word under an arbitrary periodic protocol.
///
/// The protocol pattern is walked cyclically, inserting a bare `U` for each
/// skip act and consuming one observed symbol per measure act, until the
/// whole word is consumed.
pub fn word_probability_protocol(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    init: &Initial,
    observed: &[u8],
) -> Result<f64> {
    check_dim(g, init)?;
    check_word(g, observed)?;
    let mut op = CMatrix::identity(g.dim());
    let mut next = 0usize;
    'walk: loop {
        for act in protocol.pattern() {
            if next == observed.len() {
                break 'walk;
            }
            match act {
                MeasurementAct::Skip => {
                    op = op.matmul(g.unitary())?;
                }
                MeasurementAct::Measure => {
                    op = op.matmul(g.transition_by_index(usize::from(observed[next]))?)?;
                    next += 1;
                }
            }
        }
        if next == observed.len() {
            break;
        }
    }
    init.probability(&op)
}

/// Knobs for the exact enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Prefixes with probability at or below this are dropped.
    pub prune_tol: f64,
    /// Hard cap on live prefixes per level.
    pub max_live_prefixes: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            prune_tol: DEFAULT_PRUNE_TOL,
            max_live_prefixes: DEFAULT_MAX_LIVE_PREFIXES,
        }
    }
}

struct Prefix {
    word: Vec<u8>,
    op: CMatrix,
}

fn expand_prefix(
    g: &QuantumGenerator,
    init: &Initial,
    node: &Prefix,
    prune_tol: f64,
    out: &mut Vec<(Prefix, f64)>,
) -> Result<()> {
    for s in 0..g.alphabet_size() {
        let op = node.op.matmul(g.transition_by_index(s)?)?;
        let p = init.probability(&op)?;
        if p > prune_tol {
            let mut word = Vec::with_capacity(node.word.len() + 1);
            word.extend_from_slice(&node.word);
            word.push(s as u8);
            out.push((Prefix { word, op }, p));
        }
    }
    Ok(())
}

fn expand_chunk(
    g: &QuantumGenerator,
    init: &Initial,
    chunk: &[Prefix],
    prune_tol: f64,
) -> Result<Vec<(Prefix, f64)>> {
    let mut out = Vec::with_capacity(chunk.len() * g.alphabet_size());
    for node in chunk {
        expand_prefix(g, init, node, prune_tol, &mut out)?;
    }
    Ok(out)
}

fn expand_level(
    g: &QuantumGenerator,
    init: &Initial,
    frontier: &[Prefix],
    prune_tol: f64,
    parallel: bool,
) -> Result<Vec<(Prefix, f64)>> {
    // Disjoint subtrees expand independently; chunks keep the per-task work
    // coarse and are concatenated in frontier order, so the result is the
    // same lexicographically sorted list the sequential pass produces.
    #[cfg(feature = "parallel")]
    if parallel && frontier.len() >= PARALLEL_THRESHOLD {
        let per_chunk: Vec<Result<Vec<(Prefix, f64)>>> = frontier
            .par_chunks(PARALLEL_CHUNK)
            .map(|chunk| expand_chunk(g, init, chunk, prune_tol))
            .collect();
        let mut out = Vec::new();
        for chunk in per_chunk {
            out.extend(chunk?);
        }
        return Ok(out);
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;

    expand_chunk(g, init, frontier, prune_tol)
}

fn enumerate_levels_impl(
    g: &QuantumGenerator,
    init: &Initial,
    l_max: usize,
    options: &EnumerationOptions,
    parallel: bool,
) -> Result<Vec<WordDistribution>> {
    check_dim(g, init)?;
    let mut levels = Vec::with_capacity(l_max + 1);
    levels.push(WordDistribution::exact(
        0,
        BTreeMap::from([(Vec::new(), 1.0)]),
    )?);

    let mut frontier = vec![Prefix {
        word: Vec::new(),
        op: CMatrix::identity(g.dim()),
    }];
    for _ in 0..l_max {
        let expanded = expand_level(g, init, &frontier, options.prune_tol, parallel)?;
        if expanded.len() > options.max_live_prefixes {
            return Err(Error::PrefixCapExceeded {
                live: expanded.len(),
                cap: options.max_live_prefixes,
            });
        }
        let mut entries = BTreeMap::new();
        let mut next = Vec::with_capacity(expanded.len());
        for (node, p) in expanded {
            entries.insert(node.word.clone(), p);
            next.push(node);
        }
        let length = next.first().map_or(0, |n| n.word.len());
        levels.push(WordDistribution::exact(length, entries)?);
        frontier = next;
    }
    Ok(levels)
}

/// Exact distributions for every length `0..=l_max` in one pass.
///
/// Uses the parallel expansion when the `parallel` feature is enabled.
pub fn enumerate_levels(
    g: &QuantumGenerator,
    init: &Initial,
    l_max: usize,
    options: &EnumerationOptions,
) -> Result<Vec<WordDistribution>> {
    enumerate_levels_impl(g, init, l_max, options, true)
}

/// Single-threaded enumeration, bit-identical to [`enumerate_levels`].
pub fn enumerate_levels_sequential(
    g: &QuantumGenerator,
    init: &Initial,
    l_max: usize,
    options: &EnumerationOptions,
) -> Result<Vec<WordDistribution>> {
    enumerate_levels_impl(g, init, l_max, options, false)
}

/// Exact distribution of length-`l` words.
pub fn enumerate_distribution(
    g: &QuantumGenerator,
    init: &Initial,
    l: usize,
    options: &EnumerationOptions,
) -> Result<WordDistribution> {
    Ok(enumerate_levels(g, init, l, options)?
        .pop()
        .expect("levels are never empty"))
}

fn next_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 uniform bits in [0, 1); fixed mapping so trajectories are
    // reproducible given the seed regardless of helper-crate internals.
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples a trajectory of `n_observed` measurement outcomes.
///
/// The initial state is a computational basis state drawn uniformly (one
/// sample of the maximally mixed state); the dynamics then alternates unitary
/// steps with projective collapse at measure acts. The generator is a
/// ChaCha8 stream seeded with `seed`; identical seeds reproduce identical
/// trajectories.
pub fn sample_trajectory(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    n_observed: usize,
    seed: u64,
) -> Result<Trajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial = ((next_f64(&mut rng) * g.dim() as f64) as usize).min(g.dim() - 1);
    run_sampler(g, protocol, initial, n_observed, seed, rng)
}

/// Same as [`sample_trajectory`] but with the initial basis state pinned.
pub fn sample_trajectory_from_basis(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    initial_state: usize,
    n_observed: usize,
    seed: u64,
) -> Result<Trajectory> {
    if initial_state >= g.dim() {
        return Err(Error::SymbolIndexOutOfRange {
            index: initial_state,
            alphabet: g.dim(),
        });
    }
    let rng = ChaCha8Rng::seed_from_u64(seed);
    run_sampler(g, protocol, initial_state, n_observed, seed, rng)
}

fn run_sampler(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    initial_state: usize,
    n_observed: usize,
    seed: u64,
    mut rng: ChaCha8Rng,
) -> Result<Trajectory> {
    let mut psi = StateVector::basis(g.dim(), initial_state);
    let mut symbols = Vec::with_capacity(n_observed);
    let mut probs = vec![0.0f64; g.alphabet_size()];
    'outer: loop {
        for act in protocol.pattern() {
            psi = psi.apply(g.unitary())?;
            if *act == MeasurementAct::Skip {
                continue;
            }
            let mut total = 0.0;
            for (s, slot) in probs.iter_mut().enumerate() {
                *slot = psi.apply(g.projector_by_index(s)?)?.norm_sq();
                total += *slot;
            }
            if total < DEGENERACY_TOL {
                return Err(Error::DegenerateOutcome {
                    step: symbols.len(),
                    tol: DEGENERACY_TOL,
                });
            }
            let draw = next_f64(&mut rng) * total;
            let mut cumulative = 0.0;
            let mut outcome = None;
            for (s, &p) in probs.iter().enumerate() {
                cumulative += p;
                if p > 0.0 && draw < cumulative {
                    outcome = Some(s);
                    break;
                }
            }
            // Float edge: fall back to the last outcome with positive probability.
            let outcome = match outcome {
                Some(s) => s,
                None => probs
                    .iter()
                    .rposition(|&p| p > 0.0)
                    .expect("total probability is positive"),
            };
            psi = psi.apply(g.projector_by_index(outcome)?)?;
            psi.scale(1.0 / psi.norm_sq().sqrt());
            symbols.push(outcome as u8);
            if symbols.len() == n_observed {
                break 'outer;
            }
        }
    }
    Ok(Trajectory {
        symbols,
        seed,
        initial_state_index: initial_state,
    })
}

/// Sliding-window block frequencies of length `l`.
pub fn empirical_distribution(trajectory: &Trajectory, l: usize) -> Result<WordDistribution> {
    if trajectory.len() < l {
        return Err(Error::TrajectoryTooShort {
            len: trajectory.len(),
            block: l,
        });
    }
    let windows = trajectory.len() - l + 1;
    let mut counts: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for window in trajectory.symbols().windows(l.max(1)) {
        if window.len() == l {
            *counts.entry(window.to_vec()).or_insert(0) += 1;
        }
    }
    if l == 0 {
        counts.insert(Vec::new(), windows);
    }
    let entries = counts
        .into_iter()
        .map(|(w, c)| (w, c as f64 / windows as f64))
        .collect();
    Ok(WordDistribution::empirical(l, windows, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use approx::assert_abs_diff_eq;

    fn uniform_init(g: &QuantumGenerator) -> Initial {
        Initial::Density(DensityMatrix::uniform(g.dim()))
    }

    #[test]
    fn empty_word_operator_is_identity() {
        let (g, _) = builtins::beamsplitter_i();
        let op = word_operator(&g, &[]).unwrap();
        assert_eq!(op, CMatrix::identity(2));
    }

    #[test]
    fn golden_mean_double_zero_operator_vanishes() {
        let (g, _) = builtins::spin1_y();
        let op = word_operator(&g, &[0, 0]).unwrap();
        assert!(op.max_abs() <= 1e-15);
    }

    #[test]
    fn effective_skip_measure_word_operator() {
        let (g, protocol) = builtins::beamsplitter_ii();
        let eff = g.effective(&protocol).unwrap();
        let op = word_operator(&eff, &[0]).unwrap();
        assert!(op.max_abs_diff(&CMatrix::diagonal(&[1.0, 0.0])).unwrap() <= 1e-12);
    }

    #[test]
    fn unknown_symbol_index_is_rejected() {
        let (g, _) = builtins::beamsplitter_i();
        assert!(matches!(
            word_operator(&g, &[2]),
            Err(Error::SymbolIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn beam_splitter_words_are_uniform() {
        let (g, _) = builtins::beamsplitter_i();
        let init = uniform_init(&g);
        for word in [[0, 0, 0], [0, 1, 0], [1, 1, 1], [1, 0, 1]] {
            let p = word_probability(&g, &init, &word).unwrap();
            assert_abs_diff_eq!(p, 0.125, epsilon = 1e-12);
        }
    }

    #[test]
    fn interference_locks_the_effective_process() {
        let (g, protocol) = builtins::beamsplitter_ii();
        let eff = g.effective(&protocol).unwrap();
        let init = uniform_init(&eff);
        assert_abs_diff_eq!(
            word_probability(&eff, &init, &[0, 0, 0, 0]).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            word_probability(&eff, &init, &[1, 1]).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            word_probability(&eff, &init, &[0, 1]).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn even_process_forbids_isolated_one() {
        let (g, _) = builtins::spin1_x();
        let init = uniform_init(&g);
        assert_abs_diff_eq!(
            word_probability(&g, &init, &[0, 1, 0]).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn protocol_walk_matches_narrative() {
        let (g, _) = builtins::beamsplitter_i();
        let psi0 = Initial::Vector(StateVector::basis(2, 0));

        // Skip-measure: the photon interferes with itself and stays put.
        let sm = MeasurementProtocol::parse("SM").unwrap();
        assert_abs_diff_eq!(
            word_probability_protocol(&g, &sm, &psi0, &[0, 0]).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        // Measuring every pass yields a fair coin.
        let m = MeasurementProtocol::every_step();
        assert_abs_diff_eq!(
            word_probability_protocol(&g, &m, &psi0, &[0]).unwrap(),
            0.5,
            epsilon = 1e-12
        );

        // Empty observation is certain.
        assert_abs_diff_eq!(
            word_probability_protocol(&g, &sm, &psi0, &[]).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn protocol_walk_agrees_with_effective_generator() {
        let (g, protocol) = builtins::beamsplitter_ii();
        let eff = g.effective(&protocol).unwrap();
        let init = uniform_init(&g);
        for word in [vec![0], vec![0, 0], vec![1, 1, 1], vec![0, 1]] {
            let direct = word_probability_protocol(&g, &protocol, &init, &word).unwrap();
            let via_eff = word_probability(&eff, &init, &word).unwrap();
            assert_abs_diff_eq!(direct, via_eff, epsilon = 1e-12);
        }
    }

    #[test]
    fn enumeration_of_uniform_process() {
        let (g, _) = builtins::beamsplitter_i();
        let dist = enumerate_distribution(
            &g,
            &uniform_init(&g),
            3,
            &EnumerationOptions::default(),
        )
        .unwrap();
        assert_eq!(dist.support_size(), 8);
        for (_, p) in dist.iter() {
            assert_abs_diff_eq!(p, 0.125, epsilon = 1e-12);
        }
    }

    #[test]
    fn golden_mean_support_and_marginals() {
        let (g, _) = builtins::spin1_y();
        let init = uniform_init(&g);
        let levels = enumerate_levels(&g, &init, 2, &EnumerationOptions::default()).unwrap();

        let l1 = &levels[1];
        assert_abs_diff_eq!(l1.probability(&[0]), 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l1.probability(&[1]), 2.0 / 3.0, epsilon = 1e-12);

        let l2 = &levels[2];
        let support: Vec<&[u8]> = l2.iter().map(|(w, _)| w).collect();
        assert_eq!(support, vec![&[0, 1][..], &[1, 0][..], &[1, 1][..]]);
        for (_, p) in l2.iter() {
            assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn enumeration_matches_per_word_probabilities() {
        // Independent route: evaluate every word of length 5 directly.
        let (g, _) = builtins::spin1_x();
        let init = uniform_init(&g);
        let dist = enumerate_distribution(&g, &init, 5, &EnumerationOptions::default()).unwrap();
        let mut total = 0.0;
        for idx in 0..(1u32 << 5) {
            let word: Vec<u8> = (0..5).map(|b| ((idx >> (4 - b)) & 1) as u8).collect();
            let direct = word_probability(&g, &init, &word).unwrap();
            assert_abs_diff_eq!(dist.probability(&word), direct, epsilon = 1e-13);
            total += direct;
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn prefix_cap_is_enforced() {
        let (g, _) = builtins::beamsplitter_i();
        let options = EnumerationOptions {
            max_live_prefixes: 7,
            ..Default::default()
        };
        let err = enumerate_levels(&g, &uniform_init(&g), 3, &options);
        assert!(matches!(err, Err(Error::PrefixCapExceeded { live: 8, cap: 7 })));
    }

    #[test]
    fn pinned_initial_state_locks_skip_measure_sampling() {
        let (g, protocol) = builtins::beamsplitter_ii();
        let t = sample_trajectory_from_basis(&g, &protocol, 0, 64, 5).unwrap();
        assert!(t.symbols().iter().all(|&s| s == 0));
        let t = sample_trajectory_from_basis(&g, &protocol, 1, 64, 5).unwrap();
        assert!(t.symbols().iter().all(|&s| s == 1));
    }

    #[test]
    fn sampled_frequencies_match_the_fair_coin() {
        let (g, protocol) = builtins::beamsplitter_i();
        let n = 100_000;
        let t = sample_trajectory(&g, &protocol, n, 42).unwrap();
        let ones = t.symbols().iter().filter(|&&s| s == 1).count() as f64;
        assert!((ones / n as f64 - 0.5).abs() < 5e-3);
    }

    #[test]
    fn golden_mean_trajectories_never_repeat_zero() {
        let (g, protocol) = builtins::spin1_y();
        let t = sample_trajectory(&g, &protocol, 100_000, 1).unwrap();
        assert!(!t.symbols().windows(2).any(|w| w == [0, 0]));
    }

    #[test]
    fn identical_seeds_reproduce_trajectories() {
        let (g, protocol) = builtins::spin1_x();
        let a = sample_trajectory(&g, &protocol, 4_096, 99).unwrap();
        let b = sample_trajectory(&g, &protocol, 4_096, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_trajectory(&g, &protocol, 4_096, 100).unwrap();
        assert_ne!(a.symbols(), c.symbols());
    }

    #[test]
    fn empirical_blocks_from_constant_trajectory() {
        let t = Trajectory {
            symbols: vec![0; 12],
            seed: 0,
            initial_state_index: 0,
        };
        let dist = empirical_distribution(&t, 3).unwrap();
        assert_eq!(dist.support_size(), 1);
        assert_abs_diff_eq!(dist.probability(&[0, 0, 0]), 1.0);
        assert_eq!(dist.sample_count(), Some(10));
    }

    #[test]
    fn empirical_blocks_from_alternating_trajectory() {
        let symbols: Vec<u8> = (0..12).map(|i| (i % 2) as u8).collect();
        let t = Trajectory {
            symbols,
            seed: 0,
            initial_state_index: 0,
        };
        let dist = empirical_distribution(&t, 2).unwrap();
        assert_abs_diff_eq!(dist.probability(&[0, 1]), 6.0 / 11.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dist.probability(&[1, 0]), 5.0 / 11.0, epsilon = 1e-12);
    }

    #[test]
    fn short_trajectories_are_rejected() {
        let t = Trajectory {
            symbols: vec![0, 1],
            seed: 0,
            initial_state_index: 0,
        };
        assert!(matches!(
            empirical_distribution(&t, 3),
            Err(Error::TrajectoryTooShort { .. })
        ));
    }

    #[test]
    fn empirical_matches_exact_at_block_four() {
        let (g, protocol) = builtins::beamsplitter_i();
        let n = 100_000;
        let t = sample_trajectory(&g, &protocol, n, 2024).unwrap();
        let emp = empirical_distribution(&t, 4).unwrap();
        let exact = enumerate_distribution(
            &g,
            &uniform_init(&g),
            4,
            &EnumerationOptions::default(),
        )
        .unwrap();
        let windows = emp.sample_count().unwrap() as f64;
        for (word, p) in exact.iter() {
            let se = (p * (1.0 - p) / windows).sqrt();
            assert!(
                (emp.probability(word) - p).abs() <= 4.0 * se,
                "word {word:?}: empirical {} vs exact {p}",
                emp.probability(word)
            );
        }
    }

    #[test]
    fn relabeling_symbols_permutes_probabilities() {
        let (g, _) = builtins::spin1_y();
        // Swap the two projectors; words must follow the same permutation.
        let permuted = QuantumGenerator::new(
            "permuted",
            g.unitary().clone(),
            vec!["0".into(), "1".into()],
            vec![
                g.projector("1").unwrap().clone(),
                g.projector("0").unwrap().clone(),
            ],
        )
        .unwrap();
        let init = uniform_init(&g);
        for word in [vec![0u8, 1], vec![1, 1, 0], vec![1, 0, 1, 1]] {
            let flipped: Vec<u8> = word.iter().map(|&s| 1 - s).collect();
            let p = word_probability(&g, &init, &word).unwrap();
            let q = word_probability(&permuted, &init, &flipped).unwrap();
            assert_eq!(p, q); // identical float path, exact equality
        }
    }
}
