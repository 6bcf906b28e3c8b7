//! Classical equivalents of deterministic quantum generators.
//!
//! A deterministic generator whose projectors are diagonal in the
//! computational basis induces a classical generator with symbol-labeled
//! sub-stochastic matrices: the squared moduli of the unitary's entries,
//! split by column according to which projector supports each basis state.
//! The classical generator produces the same stochastic process, which
//! [`verify_equivalence`] checks word by word.

use crate::error::{Error, Result};
use crate::generator::{QuantumGenerator, DETERMINISM_TOL, VALIDATION_TOL};

/// Real sub-stochastic symbol-labeled matrices with a stationary row vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalGenerator {
    dim: usize,
    alphabet: Vec<String>,
    matrices: Vec<Vec<f64>>,
    stationary: Vec<f64>,
}

impl ClassicalGenerator {
    /// Validates entries, row-stochasticity of the symbol sum, and
    /// stationarity of `pi`.
    pub fn new(
        alphabet: Vec<String>,
        dim: usize,
        matrices: Vec<Vec<f64>>,
        stationary: Vec<f64>,
    ) -> Result<Self> {
        if matrices.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch {
                symbols: alphabet.len(),
                projectors: matrices.len(),
            });
        }
        for m in &matrices {
            if m.len() != dim * dim {
                return Err(Error::ShapeMismatch {
                    left_rows: dim,
                    left_cols: dim,
                    right_rows: m.len() / dim.max(1),
                    right_cols: dim,
                });
            }
            if let Some(&bad) = m.iter().find(|&&x| x < -1e-12 || !x.is_finite()) {
                return Err(Error::InvalidClassical {
                    reason: "negative or non-finite entry",
                    residual: bad,
                });
            }
        }
        if stationary.len() != dim {
            return Err(Error::ShapeMismatch {
                left_rows: 1,
                left_cols: dim,
                right_rows: 1,
                right_cols: stationary.len(),
            });
        }

        // Rows of sum_s T(s) must be stochastic.
        for i in 0..dim {
            let row_sum: f64 = matrices
                .iter()
                .map(|m| m[i * dim..(i + 1) * dim].iter().sum::<f64>())
                .sum();
            if (row_sum - 1.0).abs() > VALIDATION_TOL {
                return Err(Error::InvalidClassical {
                    reason: "symbol matrices do not sum to a row-stochastic matrix",
                    residual: (row_sum - 1.0).abs(),
                });
            }
        }

        let pi_sum: f64 = stationary.iter().sum();
        if (pi_sum - 1.0).abs() > VALIDATION_TOL || stationary.iter().any(|&p| p < -1e-12) {
            return Err(Error::InvalidClassical {
                reason: "stationary vector is not a probability distribution",
                residual: (pi_sum - 1.0).abs(),
            });
        }
        // pi (sum_s T(s)) = pi.
        let mut worst = 0.0f64;
        for j in 0..dim {
            let mut next = 0.0;
            for i in 0..dim {
                for m in &matrices {
                    next += stationary[i] * m[i * dim + j];
                }
            }
            worst = worst.max((next - stationary[j]).abs());
        }
        if worst > VALIDATION_TOL {
            return Err(Error::InvalidClassical {
                reason: "vector is not stationary",
                residual: worst,
            });
        }

        Ok(Self {
            dim,
            alphabet,
            matrices,
            stationary,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// Row-major matrix for a symbol index.
    pub fn matrix(&self, index: usize) -> Result<&[f64]> {
        self.matrices
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::SymbolIndexOutOfRange {
                index,
                alphabet: self.alphabet.len(),
            })
    }

    pub fn entry(&self, symbol_index: usize, row: usize, col: usize) -> Result<f64> {
        Ok(self.matrix(symbol_index)?[row * self.dim + col])
    }

    /// `pi T(s_1) .. T(s_L) 1`, the probability of a word.
    pub fn word_probability(&self, word: &[u8]) -> Result<f64> {
        let mut v = self.stationary.clone();
        for &s in word {
            let m = self.matrix(usize::from(s))?;
            let mut next = vec![0.0; self.dim];
            for i in 0..self.dim {
                let vi = v[i];
                if vi == 0.0 {
                    continue;
                }
                for j in 0..self.dim {
                    next[j] += vi * m[i * self.dim + j];
                }
            }
            v = next;
        }
        Ok(v.iter().sum())
    }

    /// Deterministic in the automata sense: at most one nonzero entry per
    /// row per symbol.
    pub fn is_deterministic(&self, zero_tol: f64) -> bool {
        self.matrices.iter().all(|m| {
            (0..self.dim).all(|i| {
                m[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .filter(|&&x| x.abs() > zero_tol)
                    .count()
                    <= 1
            })
        })
    }
}

/// Builds the classical generator equivalent to a deterministic quantum one.
///
/// Requires every projector to be diagonal in the computational basis (a
/// basis change would be needed otherwise). `T(s)_ij = |U_ij|^2` when basis
/// state `j` is in the support of `P(s)`, else zero; the stationary vector is
/// uniform. Rows of `|U|^2` are renormalized to sum to exactly one before the
/// split, so the stochasticity the construction guarantees algebraically is
/// not lost to rounding in the squared moduli.
pub fn classical_equivalent(g: &QuantumGenerator) -> Result<ClassicalGenerator> {
    if !g.is_deterministic(DETERMINISM_TOL) {
        return Err(Error::NotDeterministic {
            context: "classical equivalents exist for deterministic generators only".to_string(),
        });
    }
    let dim = g.dim();

    let mut supports: Vec<Vec<bool>> = Vec::with_capacity(g.alphabet_size());
    for (idx, symbol) in g.alphabet().iter().enumerate() {
        let p = g.projector_by_index(idx)?;
        let mut support = vec![false; dim];
        for i in 0..dim {
            for j in 0..dim {
                let entry = p.get(i, j).norm();
                if i != j && entry > VALIDATION_TOL {
                    return Err(Error::ProjectorNotDiagonal {
                        symbol: symbol.clone(),
                    });
                }
                if i == j {
                    if entry > VALIDATION_TOL && (entry - 1.0).abs() > VALIDATION_TOL {
                        return Err(Error::ProjectorNotDiagonal {
                            symbol: symbol.clone(),
                        });
                    }
                    support[i] = entry > 0.5;
                }
            }
        }
        supports.push(support);
    }

    // Unistochastic matrix |U_ij|^2 with rows normalized to exact unit sum.
    let mut weights = vec![0.0; dim * dim];
    for i in 0..dim {
        let mut row_sum = 0.0;
        for j in 0..dim {
            let w = g.unitary().get(i, j).norm_sqr();
            weights[i * dim + j] = w;
            row_sum += w;
        }
        for j in 0..dim {
            weights[i * dim + j] /= row_sum;
        }
    }

    let matrices: Vec<Vec<f64>> = supports
        .iter()
        .map(|support| {
            let mut m = vec![0.0; dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    if support[j] {
                        m[i * dim + j] = weights[i * dim + j];
                    }
                }
            }
            m
        })
        .collect();

    ClassicalGenerator::new(
        g.alphabet().to_vec(),
        dim,
        matrices,
        vec![1.0 / dim as f64; dim],
    )
}

/// Maximum absolute gap between quantum and classical word probabilities
/// over all words of length 1 through `l_max`, both sides started from
/// their uniform initial conditions.
pub fn verify_equivalence(
    g: &QuantumGenerator,
    cg: &ClassicalGenerator,
    l_max: usize,
) -> Result<f64> {
    if g.dim() != cg.dim() || g.alphabet_size() != cg.alphabet().len() {
        return Err(Error::ShapeMismatch {
            left_rows: g.dim(),
            left_cols: g.alphabet_size(),
            right_rows: cg.dim(),
            right_cols: cg.alphabet().len(),
        });
    }
    let dim = g.dim();
    let uniform = 1.0 / dim as f64;

    // Walk the full |A|-ary word tree once, carrying the quantum operator
    // product and the classical row vector side by side.
    struct Walk<'a> {
        g: &'a QuantumGenerator,
        cg: &'a ClassicalGenerator,
        l_max: usize,
        worst: f64,
    }

    impl Walk<'_> {
        fn descend(&mut self, op: &crate::linalg::CMatrix, v: &[f64], depth: usize) -> Result<()> {
            if depth == self.l_max {
                return Ok(());
            }
            let dim = self.g.dim();
            for s in 0..self.g.alphabet_size() {
                let op_next = op.matmul(self.g.transition_by_index(s)?)?;
                // Tr[T^H (I/dim) T] = |T|_F^2 / dim.
                let p_quantum = op_next.frobenius_norm_sq() / dim as f64;

                let m = self.cg.matrix(s)?;
                let mut v_next = vec![0.0; dim];
                for i in 0..dim {
                    if v[i] == 0.0 {
                        continue;
                    }
                    for j in 0..dim {
                        v_next[j] += v[i] * m[i * dim + j];
                    }
                }
                let p_classical: f64 = v_next.iter().sum();

                self.worst = self.worst.max((p_quantum - p_classical).abs());
                if p_quantum > 0.0 || p_classical > 0.0 {
                    self.descend(&op_next, &v_next, depth + 1)?;
                }
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        g,
        cg,
        l_max,
        worst: 0.0,
    };
    let identity = crate::linalg::CMatrix::identity(dim);
    let pi = vec![uniform; dim];
    walk.descend(&identity, &pi, 0)?;
    Ok(walk.worst)
}
