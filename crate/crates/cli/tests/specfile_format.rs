//! Spec-file parsing, serialization, and validation reporting.

use qproc_cli::specfile::{GeneratorSpec, ProjectorSpec};
use qproc_core::builtins;

const BEAMSPLITTER: &str = include_str!("fixtures/beamsplitter.qgen");

#[test]
fn parses_the_beam_splitter_file() {
    let spec = GeneratorSpec::parse(BEAMSPLITTER).unwrap();
    assert_eq!(spec.name, "iterated-beam-splitter");
    assert_eq!(spec.dimension, 2);
    assert_eq!(spec.alphabet, vec!["0".to_string(), "1".to_string()]);
    assert_eq!(spec.projectors[0], ProjectorSpec::Basis(vec![0]));
    assert_eq!(spec.pattern, "M");

    let (g, protocol) = spec.build().unwrap();
    assert_eq!(g.dim(), 2);
    assert_eq!(protocol.to_string(), "M");

    // Same machine as the builtin, entry for entry.
    let (builtin, _) = builtins::beamsplitter_i();
    assert!(g.unitary().max_abs_diff(builtin.unitary()).unwrap() <= 1e-15);
}

#[test]
fn round_trips_every_builtin() {
    for name in builtins::BUILTIN_NAMES {
        let (g, protocol) = builtins::builtin(name).unwrap();
        let spec = GeneratorSpec::from_generator(&g, &protocol);
        let text = spec.to_string();
        let reparsed = GeneratorSpec::parse(&text).unwrap();
        assert_eq!(spec, reparsed, "{name}");
        reparsed.build().unwrap();
    }
}

#[test]
fn round_trips_explicit_projector_rows() {
    let spec = GeneratorSpec::parse(include_str!("fixtures/nondeterministic.qgen")).unwrap();
    assert!(matches!(spec.projectors[0], ProjectorSpec::Rows(_)));
    let text = spec.to_string();
    assert_eq!(GeneratorSpec::parse(&text).unwrap(), spec);
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let text = "[generator]\nname = x\ndimension = 2\nalphabet = 0 1\n[unitary]\nrow = 1+0i nonsense\n";
    let err = GeneratorSpec::parse(text).unwrap_err();
    assert_eq!(err.line, Some(6));
    assert!(err.message.contains("invalid complex literal"), "{err}");

    let text = "[generator]\nname = x\ndimension = two\n";
    let err = GeneratorSpec::parse(text).unwrap_err();
    assert_eq!(err.line, Some(3));

    let text = "[unitary]\n";
    let err = GeneratorSpec::parse(text).unwrap_err();
    assert_eq!(err.line, Some(1));
}

#[test]
fn sections_must_appear_in_order() {
    let text = "[generator]\nname = x\ndimension = 1\nalphabet = a\n[protocol]\npattern = M\n";
    let err = GeneratorSpec::parse(text).unwrap_err();
    assert!(err.message.contains("[unitary]"), "{err}");
}

#[test]
fn non_unitary_matrices_are_reported_with_residual() {
    let text = "\
[generator]
name = broken
dimension = 2
alphabet = 0 1
[unitary]
row = 1+0i 0+0i
row = 0+0i 0.5+0i
[projector 0]
basis = 0
[projector 1]
basis = 1
[protocol]
pattern = M
";
    let spec = GeneratorSpec::parse(text).unwrap();
    let err = spec.build().unwrap_err();
    assert!(err.message.contains("[unitary]"), "{err}");
    assert!(err.message.contains("unitarity"), "{err}");
}

#[test]
fn incomplete_projectors_are_reported() {
    let text = "\
[generator]
name = broken
dimension = 2
alphabet = 0 1
[unitary]
row = 1+0i 0+0i
row = 0+0i 1+0i
[projector 0]
basis = 0
[projector 1]
basis = 0
[protocol]
pattern = M
";
    let spec = GeneratorSpec::parse(text).unwrap();
    let err = spec.build().unwrap_err();
    assert!(
        err.message.contains("orthogonal") || err.message.contains("identity"),
        "{err}"
    );
}

#[test]
fn pattern_must_be_over_m_and_s() {
    let text = BEAMSPLITTER.replace("pattern = M", "pattern = MX");
    let err = GeneratorSpec::parse(&text).unwrap_err();
    assert!(err.message.contains("pattern"), "{err}");
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = format!("# leading comment\n\n{BEAMSPLITTER}\n# trailing\n");
    assert!(GeneratorSpec::parse(&text).is_ok());
}
