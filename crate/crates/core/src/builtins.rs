//! The four reference systems shipped with the command-line tool.
//!
//! Two views of a single photon cycling through a beam splitter, and two
//! views of a rotating spin-1 particle. The beam-splitter pair differs in
//! when the path detectors are read (every pass vs. every other pass); the
//! spin pair differs in which squared spin component is measured. The
//! resulting processes range from a fair coin to the golden-mean and even
//! sofic processes.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::generator::{MeasurementProtocol, QuantumGenerator};
use crate::linalg::CMatrix;

/// Names accepted by [`builtin`], in display order.
pub const BUILTIN_NAMES: [&str; 4] = ["beamsplitter-i", "beamsplitter-ii", "spin1-y", "spin1-x"];

/// One-line description per builtin, aligned with [`BUILTIN_NAMES`].
pub const BUILTIN_DESCRIPTIONS: [&str; 4] = [
    "iterated beam splitter, detectors read every pass (fair-coin process)",
    "iterated beam splitter, detectors read every other pass (locked process)",
    "spin-1 particle, squared y spin component (golden-mean process)",
    "spin-1 particle, squared x spin component (even process)",
];

/// Looks up a builtin system by name.
pub fn builtin(name: &str) -> Option<(QuantumGenerator, MeasurementProtocol)> {
    match name {
        "beamsplitter-i" => Some(beamsplitter_i()),
        "beamsplitter-ii" => Some(beamsplitter_ii()),
        "spin1-y" => Some(spin1_y()),
        "spin1-x" => Some(spin1_x()),
        _ => None,
    }
}

fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let data: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    CMatrix::from_rows(&data).expect("builtin matrices are well-formed")
}

/// The Hadamard matrix, the beam splitter's unitary.
pub fn hadamard() -> CMatrix {
    let a = FRAC_1_SQRT_2;
    real_matrix(&[&[a, a], &[a, -a]])
}

/// Spin-1 rotation: pi/4 about the y axis followed by pi/2 about the x axis.
pub fn spin_unitary() -> CMatrix {
    let a = FRAC_1_SQRT_2;
    real_matrix(&[&[a, a, 0.0], &[0.0, 0.0, -1.0], &[-a, a, 0.0]])
}

fn beamsplitter_generator() -> QuantumGenerator {
    QuantumGenerator::new(
        "iterated-beam-splitter",
        hadamard(),
        vec!["0".into(), "1".into()],
        vec![
            CMatrix::diagonal(&[1.0, 0.0]),
            CMatrix::diagonal(&[0.0, 1.0]),
        ],
    )
    .expect("beam splitter is a valid generator")
}

/// Beam splitter with both path detectors active every pass.
pub fn beamsplitter_i() -> (QuantumGenerator, MeasurementProtocol) {
    (beamsplitter_generator(), MeasurementProtocol::every_step())
}

/// Beam splitter with detectors active every other pass; self-interference
/// makes the observed sequence constant.
pub fn beamsplitter_ii() -> (QuantumGenerator, MeasurementProtocol) {
    (
        beamsplitter_generator(),
        MeasurementProtocol::parse("SM").expect("SM is a valid pattern"),
    )
}

/// Spin-1 particle asking "is the squared y spin component zero?".
///
/// Outcome 0 projects onto the J_y^2 = 0 eigenspace (the middle basis
/// state), so 0 can never repeat: the golden-mean language with irreducible
/// forbidden word 00.
pub fn spin1_y() -> (QuantumGenerator, MeasurementProtocol) {
    let g = QuantumGenerator::new(
        "spin-1-y",
        spin_unitary(),
        vec!["0".into(), "1".into()],
        vec![
            CMatrix::diagonal(&[0.0, 1.0, 0.0]),
            CMatrix::diagonal(&[1.0, 0.0, 1.0]),
        ],
    )
    .expect("spin1-y is a valid generator");
    (g, MeasurementProtocol::every_step())
}

/// Spin-1 particle asking "is the squared x spin component zero?".
///
/// Runs of 1s between 0s always have even length: the even-process language
/// with irreducible forbidden words 0 1^(2k-1) 0.
pub fn spin1_x() -> (QuantumGenerator, MeasurementProtocol) {
    let g = QuantumGenerator::new(
        "spin-1-x",
        spin_unitary(),
        vec!["0".into(), "1".into()],
        vec![
            CMatrix::diagonal(&[1.0, 0.0, 0.0]),
            CMatrix::diagonal(&[0.0, 1.0, 1.0]),
        ],
    )
    .expect("spin1-x is a valid generator");
    (g, MeasurementProtocol::every_step())
}

/// A valid but nondeterministic generator: identity dynamics measured in the
/// superposition basis. Useful for exercising the nondeterministic paths.
pub fn nondeterministic_demo() -> QuantumGenerator {
    let h = 0.5;
    let plus = real_matrix(&[&[h, h], &[h, h]]);
    let minus = real_matrix(&[&[h, -h], &[-h, h]]);
    QuantumGenerator::new(
        "superposition-basis-demo",
        CMatrix::identity(2),
        vec!["0".into(), "1".into()],
        vec![plus, minus],
    )
    .expect("demo generator is valid")
}
