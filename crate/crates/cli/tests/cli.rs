//! End-to-end tests of the `chanprob` binary: subcommands, output formats
//! and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../../data/{name}"))
        .display()
        .to_string()
}

fn chanprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chanprob"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

#[test]
fn marginal_renders_the_outlook_play_table() {
    let out = chanprob(&["marginal", &data("weather.csv"), "--mask", "1,0,0,0,1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|Sunny,yes⟩"), "{text}");
    assert!(text.contains("|Rainy,no⟩"), "{text}");
}

#[test]
fn marginal_mood_matches_the_printed_state() {
    let out = chanprob(&["marginal", &data("disease_mood.csv"), "--mask", "1,0"]);
    assert_eq!(stdout(&out), "0.45|m⟩ + 0.55|mbar⟩");
}

#[test]
fn extract_prints_the_outlook_channel() {
    let out = chanprob(&[
        "extract",
        &data("weather.csv"),
        "--out-mask",
        "1,0,0,0,0",
        "--in-mask",
        "0,0,0,0,1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("yes -> 0.222|Sunny⟩ + 0.444|Overcast⟩ + 0.333|Rainy⟩"),
        "{text}"
    );
    assert!(
        text.contains("no -> 0.6|Sunny⟩ + 0|Overcast⟩ + 0.4|Rainy⟩"),
        "{text}"
    );
}

#[test]
fn invert_builds_the_posterior_channel() {
    let out = chanprob(&[
        "invert",
        &data("disease_mood.csv"),
        "--out-mask",
        "0,1",
        "--in-mask",
        "1,0",
    ]);
    assert!(out.status.success());
    // inversion of c1 : Mood -> Disease against the mood marginal is the
    // disease-to-mood conditional
    let text = stdout(&out);
    assert!(text.contains("d -> 0.091|m⟩ + 0.909|mbar⟩"), "{text}");
    assert!(text.contains("dbar -> 0.889|m⟩ + 0.111|mbar⟩"), "{text}");
}

#[test]
fn classify_discrete_and_hybrid() {
    let out = chanprob(&[
        "classify",
        &data("weather.csv"),
        "Sunny,cool,high,true",
        "--class",
        "Play",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.205|yes⟩"), "{text}");
    assert!(text.contains("0.795|no⟩"), "{text}");

    let out = chanprob(&[
        "classify",
        &data("weather.csv"),
        "Sunny,66,90,true",
        "--class",
        "Play",
        "--hybrid",
        "--gaussian",
        "feature=Temperature;class=yes;mean=73;stddev=6.2",
        "--gaussian",
        "feature=Temperature;class=no;mean=74.6;stddev=7.9",
        "--gaussian",
        "feature=Humidity;class=yes;mean=79.1;stddev=10.2",
        "--gaussian",
        "feature=Humidity;class=no;mean=86.2;stddev=9.7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.207|yes⟩"), "{text}");
}

#[test]
fn classify_hybrid_fitted_from_numeric_columns() {
    // fitting from the numeric table gives the same posterior up to the
    // rounding of the published parameters
    let out = chanprob(&[
        "classify",
        &data("weather_numeric.csv"),
        "Sunny,66,90,true",
        "--hybrid",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let p_yes: f64 = text
        .split("|yes⟩")
        .next()
        .unwrap()
        .rsplit(' ')
        .next()
        .unwrap()
        .parse()
        .expect("yes weight");
    assert!((p_yes - 0.207).abs() < 5e-3, "{text}");
}

#[test]
fn fit_dumps_prior_and_gaussians() {
    let out = chanprob(&[
        "fit",
        &data("weather_numeric.csv"),
        "--class",
        "Play",
        "--hybrid",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("prior Play"), "{text}");
    assert!(text.contains("0.643|yes⟩"), "{text}");
    assert!(text.contains("feature Temperature (gaussian)"), "{text}");
    // sample statistics of the numeric columns, as published (rounded)
    assert!(text.contains("yes -> mean=73 stddev=6.16"), "{text}");
    assert!(text.contains("feature Outlook (discrete)"), "{text}");
}

#[test]
fn condition_and_crossover_agree_on_the_posterior_mood() {
    let cross = chanprob(&[
        "crossover",
        &data("disease_mood.csv"),
        "--mask",
        "1,0",
        "--effect",
        "d:0.9,dbar:0.05",
    ]);
    assert!(cross.status.success());
    assert_eq!(stdout(&cross), "0.126|m⟩ + 0.874|mbar⟩");

    for path in ["backward", "joint", "forward"] {
        let out = chanprob(&[
            "crossover",
            &data("disease_mood.csv"),
            "--mask",
            "1,0",
            "--effect",
            "d:0.9,dbar:0.05",
            "--path",
            path,
        ]);
        assert_eq!(stdout(&out), "0.126|m⟩ + 0.874|mbar⟩", "path {path}");
    }

    // conditioning the joint by the weakened effect and marginalising by
    // hand gives the same state
    let cond = chanprob(&[
        "condition",
        &data("disease_mood.csv"),
        "--mask",
        "0,1",
        "--effect",
        "d:0.9,dbar:0.05",
    ]);
    assert!(cond.status.success());
    let text = stdout(&cond);
    assert!(text.contains("|m,d⟩"), "{text}");
}

#[test]
fn ci_verdicts() {
    let out = chanprob(&[
        "ci",
        &data("disease_mood.csv"),
        "--x",
        "1,0",
        "--y",
        "0,1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "not independent");

    let json = chanprob(&[
        "ci",
        &data("disease_mood.csv"),
        "--x",
        "1,0",
        "--y",
        "0,1",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&json), "{\"independent\":false}");
}

#[test]
fn json_format_is_machine_readable() {
    let out = chanprob(&[
        "marginal",
        &data("disease_mood.csv"),
        "--mask",
        "1,0",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["labels"][0], "m");
    assert!((value["weights"][0].as_f64().unwrap() - 0.45).abs() < 1e-12);
}

#[test]
fn precision_flag_controls_ket_digits() {
    let out = chanprob(&[
        "marginal",
        &data("weather.csv"),
        "--mask",
        "0,0,0,0,1",
        "--precision",
        "5",
    ]);
    assert_eq!(stdout(&out), "0.35714|no⟩ + 0.64286|yes⟩");
}

#[test]
fn validation_errors_exit_with_2() {
    // mask with the wrong arity
    let out = chanprob(&["marginal", &data("weather.csv"), "--mask", "1,0"]);
    assert_eq!(out.status.code(), Some(2));

    // unparseable mask text
    let out = chanprob(&["marginal", &data("weather.csv"), "--mask", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error at byte 2"), "{err}");

    // unknown label in an effect
    let out = chanprob(&[
        "condition",
        &data("disease_mood.csv"),
        "--mask",
        "0,1",
        "--effect",
        "nope:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn math_errors_exit_with_3() {
    // zero-validity conditioning
    let out = chanprob(&[
        "condition",
        &data("disease_mood.csv"),
        "--mask",
        "0,1",
        "--effect",
        "d:0,dbar:0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("conditioning undefined"), "{err}");
}

#[test]
fn empirical_frequencies_round_trip_through_marginals() {
    // each column's marginal reproduces its empirical frequencies exactly
    let out = chanprob(&[
        "marginal",
        &data("weather.csv"),
        "--mask",
        "1,0,0,0,0",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let weights: Vec<f64> = value["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_f64().unwrap())
        .collect();
    // Sunny 5, Overcast 4, Rainy 5 out of 14
    for (got, count) in weights.iter().zip([5.0, 4.0, 5.0]) {
        assert!((got - count / 14.0).abs() <= 1e-15);
    }
}
