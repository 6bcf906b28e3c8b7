//! Information measures over word distributions.
//!
//! All quantities use base-2 logarithms: entropies in bits, rates in bits
//! per measurement, transient information in bits times measurements.
//!
//! - block entropy `H(L) = -sum_w Pr(w) log2 Pr(w)` over length-L words
//! - entropy rate `h = lim_L [H(L) - H(L-1)]`, the irreducible randomness
//!   per measurement
//! - excess entropy `E = lim_L [H(L) - h L]`, the subextensive part of the
//!   block entropy (mutual information between past and future)
//! - transient information `T = sum_L [E + h L - H(L)]`, the information an
//!   observer must extract to synchronize to the internal state
//! - internal-state entropy `S_q = -tr(rho log2 rho)`, the von Neumann
//!   entropy of the stationary density matrix
//!
//! For deterministic generators the entropy rate has a closed form in the
//! squared moduli of the unitary alone; finite-L estimates approach it from
//! above. Convergence residuals are reported, never silently assumed.

use crate::error::{Error, Result};
use crate::generator::{
    DensityMatrix, MeasurementProtocol, QuantumGenerator, DETERMINISM_TOL, VALIDATION_TOL,
};
use crate::process::{enumerate_levels, EnumerationOptions, Initial, WordDistribution};

/// Block-entropy values `H(0..=L_max)` in bits, with `H(0) = 0`.
///
/// Valid curves are monotone non-decreasing with non-increasing increments
/// (within 1e-9), as block entropies of stationary sources are.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCurve {
    values: Vec<f64>,
}

const CURVE_SHAPE_TOL: f64 = 1e-9;

impl EntropyCurve {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let first = *values.first().ok_or(Error::LMaxTooSmall)?;
        if first.abs() > 1e-12 {
            return Err(Error::CurveOrigin { value: first });
        }
        for l in 1..values.len() {
            let delta = values[l] - values[l - 1];
            if delta < -CURVE_SHAPE_TOL {
                return Err(Error::CurveShape {
                    property: "monotonicity",
                    l,
                    delta,
                });
            }
            if l >= 2 {
                let prev = values[l - 1] - values[l - 2];
                if delta - prev > CURVE_SHAPE_TOL {
                    return Err(Error::CurveShape {
                        property: "concavity",
                        l,
                        delta: delta - prev,
                    });
                }
            }
        }
        Ok(Self { values })
    }

    /// Builds the curve from per-length exact distributions (index = length).
    pub fn from_distributions(levels: &[WordDistribution]) -> Result<Self> {
        let values = levels.iter().map(block_entropy).collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn l_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn h(&self, l: usize) -> f64 {
        self.values[l]
    }
}

/// Shannon entropy of a word distribution, in bits; `0 log 0 = 0`.
///
/// Distributions more than 1e-6 away from unit total probability are
/// rejected.
pub fn block_entropy(dist: &WordDistribution) -> Result<f64> {
    let total = dist.total();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized { total });
    }
    let mut h = 0.0;
    for (_, p) in dist.iter() {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    Ok(h.max(0.0))
}

/// Entropy-rate estimates `dH(L) = H(L) - H(L-1)` for `L = 1..=L_max`; the
/// final element is the finite-L estimate of the rate.
pub fn entropy_rate_curve(curve: &EntropyCurve) -> Vec<f64> {
    curve
        .values()
        .windows(2)
        .map(|pair| pair[1] - pair[0])
        .collect()
}

/// Closed-form entropy rate of a deterministic generator, from the squared
/// moduli of its (effective) unitary:
/// `h = -(1/dim) sum_ij |U_ij|^2 log2 |U_ij|^2`.
pub fn entropy_rate_closed_form(g: &QuantumGenerator) -> Result<f64> {
    if !g.is_deterministic(DETERMINISM_TOL) {
        return Err(Error::NotDeterministic {
            context: "the closed-form entropy rate applies to deterministic generators only"
                .to_string(),
        });
    }
    let dim = g.dim();
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let w = g.unitary().get(i, j).norm_sqr();
            if w > 0.0 {
                sum -= w * w.log2();
            }
        }
    }
    Ok((sum / dim as f64).max(0.0))
}

/// Terminal excess-entropy estimate `E(L_max) = H(L_max) - h L_max` together
/// with the residual `|E(L_max) - E(L_max - 1)|` as a convergence diagnostic.
pub fn excess_entropy(curve: &EntropyCurve, h_mu: f64) -> (f64, f64) {
    let l = curve.l_max();
    let e_last = curve.h(l) - h_mu * l as f64;
    let residual = if l >= 1 {
        let e_prev = curve.h(l - 1) - h_mu * (l - 1) as f64;
        (e_last - e_prev).abs()
    } else {
        0.0
    };
    (e_last, residual)
}

/// Truncated transient information `sum_{L=0}^{L_max} [E + h L - H(L)]` and
/// a heuristic tail bound of twice the final summand.
///
/// When `excess` is the curve's own terminal estimate the final summand
/// vanishes by construction and the tail bound degenerates to zero; the
/// excess residual is the sharper convergence signal in that case.
pub fn transient_information(curve: &EntropyCurve, h_mu: f64, excess: f64) -> (f64, f64) {
    let mut total = 0.0;
    let mut last_term = 0.0;
    for (l, &h) in curve.values().iter().enumerate() {
        last_term = excess + h_mu * l as f64 - h;
        total += last_term;
    }
    (total, 2.0 * last_term.abs())
}

/// Von Neumann entropy `-sum_i lambda_i log2 lambda_i` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigenvalues = rho.matrix().hermitian_eigenvalues(VALIDATION_TOL)?;
    let mut s = 0.0;
    for lambda in eigenvalues {
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Entropy rate of the tensor-power sequence `S(rho^(x L)) / L`.
///
/// Von Neumann entropy is additive over tensor products, so the rate equals
/// `S(rho)` at every length; the length argument only names the block the
/// rate refers to.
pub fn density_matrix_rate(rho: &DensityMatrix, _block_len: usize) -> Result<f64> {
    von_neumann_entropy(rho)
}

/// Irreducible forbidden words: zero-probability words none of whose proper
/// contiguous subwords already have probability zero.
///
/// `levels[l]` must be the exact length-`l` distribution; lengths `1..levels.len()`
/// are scanned. A word counts as forbidden when its probability is at most
/// `zero_tol`.
pub fn forbidden_words(
    levels: &[WordDistribution],
    alphabet_size: usize,
    zero_tol: f64,
) -> Vec<Vec<u8>> {
    let cap = levels.len().saturating_sub(1);
    let mut zero_words: Vec<Vec<Vec<u8>>> = vec![Vec::new(); cap + 1];
    for l in 1..=cap {
        let mut word = vec![0u8; l];
        loop {
            if levels[l].probability(&word) <= zero_tol {
                zero_words[l].push(word.clone());
            }
            // Odometer step over the alphabet.
            let mut pos = l;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if usize::from(word[pos]) + 1 < alphabet_size {
                    word[pos] += 1;
                    for w in word.iter_mut().skip(pos + 1) {
                        *w = 0;
                    }
                    break;
                }
                word[pos] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                break;
            }
        }
    }

    let is_zero = |w: &[u8]| zero_words[w.len()].iter().any(|z| z == w);
    let mut irreducible = Vec::new();
    for l in 1..=cap {
        'words: for word in &zero_words[l] {
            for sub_len in 1..l {
                for start in 0..=(l - sub_len) {
                    if is_zero(&word[start..start + sub_len]) {
                        continue 'words;
                    }
                }
            }
            irreducible.push(word.clone());
        }
    }
    irreducible
}

/// Convergence diagnostics attached to an [`InfoReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convergence {
    /// Gap between the curve estimate of the rate and the rate used for
    /// E and T (for deterministic generators: distance to the closed form).
    pub h_mu_gap: f64,
    /// `|E(L_max) - E(L_max - 1)|`.
    pub excess_residual: f64,
    /// Heuristic transient-information tail bound.
    pub transient_tail: f64,
}

/// Knobs for [`analyze_with`].
#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub l_max: usize,
    pub prune_tol: f64,
    pub max_live_prefixes: usize,
    /// Longest forbidden words searched for.
    pub forbidden_word_cap: usize,
}

impl AnalyzeOptions {
    pub fn new(l_max: usize) -> Self {
        Self {
            l_max,
            prune_tol: crate::process::DEFAULT_PRUNE_TOL,
            max_live_prefixes: crate::process::DEFAULT_MAX_LIVE_PREFIXES,
            forbidden_word_cap: 6,
        }
    }
}

/// Default analysis depth: 12 for two-state systems, 24 for larger ones
/// (sofic supports converge more slowly).
pub fn default_l_max(dim: usize) -> usize {
    if dim <= 2 {
        12
    } else {
        24
    }
}

/// Full information-theoretic analysis of a generator under a protocol.
#[derive(Debug, Clone)]
pub struct InfoReport {
    pub generator_name: String,
    pub protocol: String,
    pub alphabet: Vec<String>,
    pub dim: usize,
    pub l_max: usize,
    pub deterministic: bool,
    /// Whether the single-step transition graph is strongly connected; when
    /// false the uniform stationary state is not the unique one.
    pub strongly_connected: bool,
    /// Finite-L rate estimate `dH(L_max)`, clamped to `[0, log2 |A|]`.
    pub h_mu_estimate: f64,
    /// Closed-form rate, present for deterministic generators.
    pub h_mu_closed_form: Option<f64>,
    /// Excess entropy estimate at `L_max`, in bits.
    pub excess_entropy: f64,
    /// Truncated transient information, in bits times measurements.
    pub transient_information: f64,
    /// Internal-state (von Neumann) entropy of the stationary state, in bits.
    pub internal_state_entropy: f64,
    pub entropy_curve: EntropyCurve,
    pub convergence: Convergence,
    pub forbidden_words: Vec<Vec<u8>>,
}

impl InfoReport {
    /// Rate used for the E and T estimates: the closed form when available,
    /// otherwise the curve estimate.
    pub fn h_mu_best(&self) -> f64 {
        self.h_mu_closed_form.unwrap_or(self.h_mu_estimate)
    }

    /// Renders a word of symbol indices with the report's alphabet labels.
    pub fn format_word(&self, word: &[u8]) -> String {
        let single_char = self.alphabet.iter().all(|s| s.chars().count() == 1);
        let sep = if single_char { "" } else { " " };
        word.iter()
            .map(|&s| self.alphabet[usize::from(s)].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Runs [`analyze_with`] using default options at the given depth.
pub fn analyze(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    l_max: usize,
) -> Result<InfoReport> {
    analyze_with(g, protocol, &AnalyzeOptions::new(l_max))
}

/// Computes the entropy curve and every derived measure for the process a
/// generator produces under a protocol.
///
/// The protocol must reduce to a single-symbol effective generator (pattern
/// `S..SM`). The stationary state is the uniform density matrix; its
/// stationarity under the measurement-averaged evolution is verified rather
/// than assumed. E and T use the closed-form rate when the effective
/// generator is deterministic and the terminal curve estimate otherwise.
pub fn analyze_with(
    g: &QuantumGenerator,
    protocol: &MeasurementProtocol,
    options: &AnalyzeOptions,
) -> Result<InfoReport> {
    if options.l_max < 1 {
        return Err(Error::LMaxTooSmall);
    }
    let effective = g.effective(protocol)?;
    let deterministic = effective.is_deterministic(DETERMINISM_TOL);

    let rho = DensityMatrix::uniform(effective.dim());
    let residual = effective.stationarity_residual(&rho)?;
    if residual > VALIDATION_TOL {
        return Err(Error::StationarityViolated { residual });
    }
    let internal_state_entropy = von_neumann_entropy(&rho)?;

    let enumeration = EnumerationOptions {
        prune_tol: options.prune_tol,
        max_live_prefixes: options.max_live_prefixes,
    };
    let init = Initial::Density(rho);
    let levels = enumerate_levels(&effective, &init, options.l_max, &enumeration)?;
    let curve = EntropyCurve::from_distributions(&levels)?;

    let rates = entropy_rate_curve(&curve);
    let raw_estimate = *rates.last().expect("l_max >= 1");
    let h_mu_estimate = raw_estimate
        .max(0.0)
        .min((effective.alphabet_size() as f64).log2());

    let h_mu_closed_form = if deterministic {
        Some(entropy_rate_closed_form(&effective)?)
    } else {
        None
    };
    let h_best = h_mu_closed_form.unwrap_or(h_mu_estimate);

    let (excess, excess_residual) = excess_entropy(&curve, h_best);
    let (transient, transient_tail) = transient_information(&curve, h_best, excess);

    let h_mu_gap = match h_mu_closed_form {
        Some(closed) => (raw_estimate - closed).abs(),
        None => {
            if rates.len() >= 2 {
                (rates[rates.len() - 1] - rates[rates.len() - 2]).abs()
            } else {
                0.0
            }
        }
    };

    let cap = options.forbidden_word_cap.min(options.l_max);
    let forbidden = forbidden_words(
        &levels[..=cap],
        effective.alphabet_size(),
        options.prune_tol,
    );

    Ok(InfoReport {
        generator_name: g.name().to_string(),
        protocol: protocol.to_string(),
        alphabet: effective.alphabet().to_vec(),
        dim: effective.dim(),
        l_max: options.l_max,
        deterministic,
        strongly_connected: effective.transition_graph_strongly_connected(DETERMINISM_TOL),
        h_mu_estimate,
        h_mu_closed_form,
        excess_entropy: excess,
        transient_information: transient,
        internal_state_entropy,
        entropy_curve: curve,
        convergence: Convergence {
            h_mu_gap,
            excess_residual,
            transient_tail,
        },
        forbidden_words: forbidden,
    })
}
