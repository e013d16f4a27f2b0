//! Rendering states, channels and models as ket notation or JSON.
//!
//! Ket weights are printed at a configurable precision (default 3) with
//! trailing zeros trimmed, matching forms like `0.205|y> + 0.795|n>`.

use chanprob::{Channel, DensityFn, State};
use serde::Serialize;

use crate::model::NaiveBayesModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Ket,
    Json,
}

pub const DEFAULT_PRECISION: usize = 3;

/// A weight at the given precision, trailing zeros trimmed: 0.45 not 0.450,
/// 1 not 1.000.
pub fn format_weight(w: f64, precision: usize) -> String {
    let text = format!("{w:.precision$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

pub fn ket_state(state: &State, precision: usize) -> String {
    let space = state.space();
    if space.is_unit() {
        return format_weight(state.weight(0), precision);
    }
    let terms: Vec<String> = (0..space.len())
        .map(|i| {
            format!(
                "{}|{}⟩",
                format_weight(state.weight(i), precision),
                space.tuple(i).join(",")
            )
        })
        .collect();
    terms.join(" + ")
}

pub fn ket_channel(channel: &Channel, precision: usize) -> String {
    let mut lines = Vec::new();
    for x in 0..channel.dom().len() {
        let input = channel.dom().tuple(x).join(",");
        let terms: Vec<String> = (0..channel.cod().len())
            .map(|y| {
                format!(
                    "{}|{}⟩",
                    format_weight(channel.entry(x, y), precision),
                    channel.cod().tuple(y).join(",")
                )
            })
            .collect();
        lines.push(format!("{} -> {}", input, terms.join(" + ")));
    }
    lines.join("\n")
}

#[derive(Serialize)]
struct StateJson {
    labels: Vec<String>,
    weights: Vec<f64>,
}

pub fn json_state(state: &State) -> String {
    let space = state.space();
    let doc = StateJson {
        labels: (0..space.len()).map(|i| space.tuple(i).join(",")).collect(),
        weights: state.weights().to_vec(),
    };
    serde_json::to_string(&doc).expect("state serialises")
}

#[derive(Serialize)]
struct ChannelJson {
    dom: Vec<String>,
    cod: Vec<String>,
    rows: Vec<Vec<f64>>,
}

pub fn json_channel(channel: &Channel) -> String {
    let doc = ChannelJson {
        dom: (0..channel.dom().len())
            .map(|i| channel.dom().tuple(i).join(","))
            .collect(),
        cod: (0..channel.cod().len())
            .map(|i| channel.cod().tuple(i).join(","))
            .collect(),
        rows: (0..channel.dom().len())
            .map(|x| channel.row(x).to_vec())
            .collect(),
    };
    serde_json::to_string(&doc).expect("channel serialises")
}

pub fn render_state(state: &State, format: OutputFormat, precision: usize) -> String {
    match format {
        OutputFormat::Ket => ket_state(state, precision),
        OutputFormat::Json => json_state(state),
    }
}

pub fn render_channel(channel: &Channel, format: OutputFormat, precision: usize) -> String {
    match format {
        OutputFormat::Ket => ket_channel(channel, precision),
        OutputFormat::Json => json_channel(channel),
    }
}

pub fn render_model(model: &NaiveBayesModel, format: OutputFormat, precision: usize) -> String {
    match format {
        OutputFormat::Ket => {
            let mut out = String::new();
            out.push_str(&format!(
                "prior {}: {}\n",
                model.class_name,
                ket_state(&model.prior, precision)
            ));
            for feature in &model.features {
                let family = &feature.evaluator;
                if family.is_discrete() {
                    out.push_str(&format!(
                        "feature {} (discrete):\n",
                        feature.name
                    ));
                    for (c, density) in family.densities().iter().enumerate() {
                        if let (
                            DensityFn::Rows(row),
                            chanprob::ReferenceMeasure::CountingFinite(space),
                        ) = (density, family.reference())
                        {
                            let terms: Vec<String> = row
                                .iter()
                                .enumerate()
                                .map(|(i, &w)| {
                                    format!(
                                        "{}|{}⟩",
                                        format_weight(w, precision),
                                        space.label(i)
                                    )
                                })
                                .collect();
                            out.push_str(&format!(
                                "  {} -> {}\n",
                                model.class_space.label(c),
                                terms.join(" + ")
                            ));
                        }
                    }
                } else {
                    out.push_str(&format!("feature {} (gaussian):\n", feature.name));
                    for (c, density) in family.densities().iter().enumerate() {
                        if let DensityFn::Gaussian(g) = density {
                            out.push_str(&format!(
                                "  {} -> mean={} stddev={}\n",
                                model.class_space.label(c),
                                g.mean(),
                                g.stddev()
                            ));
                        }
                    }
                }
            }
            out.trim_end().to_string()
        }
        OutputFormat::Json => json_model(model),
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FeatureJson {
    Discrete {
        name: String,
        labels: Vec<String>,
        rows: Vec<Vec<f64>>,
    },
    Gaussian {
        name: String,
        params: Vec<GaussianJson>,
    },
}

#[derive(Serialize)]
struct GaussianJson {
    class: String,
    mean: f64,
    stddev: f64,
}

#[derive(Serialize)]
struct ModelJson {
    class: String,
    class_labels: Vec<String>,
    prior: Vec<f64>,
    features: Vec<FeatureJson>,
}

fn json_model(model: &NaiveBayesModel) -> String {
    let features = model
        .features
        .iter()
        .map(|feature| {
            let family = &feature.evaluator;
            if let chanprob::ReferenceMeasure::CountingFinite(space) = family.reference() {
                FeatureJson::Discrete {
                    name: feature.name.clone(),
                    labels: space.labels().to_vec(),
                    rows: family
                        .densities()
                        .iter()
                        .map(|d| match d {
                            DensityFn::Rows(r) => r.clone(),
                            _ => unreachable!("counting families hold rows"),
                        })
                        .collect(),
                }
            } else {
                FeatureJson::Gaussian {
                    name: feature.name.clone(),
                    params: family
                        .densities()
                        .iter()
                        .enumerate()
                        .map(|(c, d)| {
                            let DensityFn::Gaussian(g) = d else {
                                unreachable!("gaussian families hold gaussians")
                            };
                            GaussianJson {
                                class: model.class_space.label(c).to_string(),
                                mean: g.mean(),
                                stddev: g.stddev(),
                            }
                        })
                        .collect(),
                }
            }
        })
        .collect();
    let doc = ModelJson {
        class: model.class_name.clone(),
        class_labels: model.class_space.labels().to_vec(),
        prior: model.prior.weights().to_vec(),
        features,
    };
    serde_json::to_string(&doc).expect("model serialises")
}
