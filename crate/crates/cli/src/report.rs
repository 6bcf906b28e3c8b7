//! Plain-text and CSV rendering of analysis results.

use std::fmt::Write as _;

use qproc_core::classical::ClassicalGenerator;
use qproc_core::infotheory::{entropy_rate_curve, InfoReport};
use qproc_core::process::WordDistribution;

/// 12 significant digits, scientific notation; the fixed number format of
/// the machine-readable tables.
pub fn fmt12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Human-readable analysis summary.
pub fn summary_text(report: &InfoReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system              : {}", report.generator_name);
    let _ = writeln!(out, "protocol pattern    : {}", report.protocol);
    let _ = writeln!(out, "states              : {}", report.dim);
    let _ = writeln!(out, "alphabet            : {}", report.alphabet.join(" "));
    let _ = writeln!(
        out,
        "deterministic       : {}",
        if report.deterministic { "yes" } else { "no" }
    );
    let _ = writeln!(
        out,
        "state graph         : {}",
        if report.strongly_connected {
            "strongly connected"
        } else {
            "reducible (uniform stationary state is not unique)"
        }
    );
    let _ = writeln!(out, "L_max               : {}", report.l_max);
    match report.h_mu_closed_form {
        Some(h) => {
            let _ = writeln!(out, "h_mu (closed form)  : {} bits/measurement", fmt12(h));
        }
        None => {
            let _ = writeln!(out, "h_mu (closed form)  : n/a (nondeterministic)");
        }
    }
    let _ = writeln!(
        out,
        "h_mu (dH at L_max)  : {} bits/measurement",
        fmt12(report.h_mu_estimate)
    );
    let _ = writeln!(
        out,
        "S_q internal state  : {} bits",
        fmt12(report.internal_state_entropy)
    );
    let _ = writeln!(
        out,
        "excess entropy E    : {} bits",
        fmt12(report.excess_entropy)
    );
    let _ = writeln!(
        out,
        "transient info T    : {} bits*measurements",
        fmt12(report.transient_information)
    );
    let _ = writeln!(
        out,
        "convergence         : rate gap {:.2e}, E residual {:.2e}, T tail {:.2e}",
        report.convergence.h_mu_gap,
        report.convergence.excess_residual,
        report.convergence.transient_tail
    );
    let words = if report.forbidden_words.is_empty() {
        "none".to_string()
    } else {
        report
            .forbidden_words
            .iter()
            .map(|w| report.format_word(w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "forbidden words <=6 : {words}");
    out
}

/// Entropy-curve table: `L,H,dH,E_L,T_partial`.
///
/// `E_L = H(L) - h L` and the partial transient sum both use the same rate
/// and excess the report used, so the last row reproduces the report values.
pub fn curve_csv(report: &InfoReport) -> String {
    let h_best = report.h_mu_best();
    let excess = report.excess_entropy;
    let rates = entropy_rate_curve(&report.entropy_curve);
    let mut out = String::from("L,H,dH,E_L,T_partial\n");
    let mut partial = 0.0;
    for (l, &h) in report.entropy_curve.values().iter().enumerate() {
        let e_l = h - h_best * l as f64;
        partial += excess + h_best * l as f64 - h;
        let dh = if l == 0 {
            String::new()
        } else {
            fmt12(rates[l - 1])
        };
        let _ = writeln!(out, "{l},{},{dh},{},{}", fmt12(h), fmt12(e_l), fmt12(partial));
    }
    out
}

/// Empirical block table: `word,count,frequency`.
pub fn empirical_csv(dist: &WordDistribution, alphabet: &[String]) -> String {
    let windows = dist.sample_count().unwrap_or(0) as f64;
    let single_char = alphabet.iter().all(|s| s.chars().count() == 1);
    let sep = if single_char { "" } else { " " };
    let mut out = String::from("word,count,frequency\n");
    for (word, p) in dist.iter() {
        let label = word
            .iter()
            .map(|&s| alphabet[usize::from(s)].as_str())
            .collect::<Vec<_>>()
            .join(sep);
        let count = (p * windows).round() as u64;
        let _ = writeln!(out, "{label},{count},{}", fmt12(p));
    }
    out
}

/// Comparison report between a generator and its classical equivalent.
pub fn compare_text(
    name: &str,
    pattern: &str,
    cg: &ClassicalGenerator,
    l_max: usize,
    gap: f64,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system              : {name}");
    let _ = writeln!(out, "protocol pattern    : {pattern}");
    let _ = writeln!(
        out,
        "classical stationary: {}",
        cg.stationary()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for (s, symbol) in cg.alphabet().iter().enumerate() {
        let _ = writeln!(out, "T({symbol}) =");
        let m = cg.matrix(s).expect("symbol index in range");
        for i in 0..cg.dim() {
            let row: Vec<String> = (0..cg.dim())
                .map(|j| m[i * cg.dim() + j].to_string())
                .collect();
            let _ = writeln!(out, "  {}", row.join(" "));
        }
    }
    let _ = writeln!(
        out,
        "max |Pr_quantum - Pr_classical| over words of length <= {l_max}: {gap:.3e}"
    );
    out
}
