//! Naive Bayes over an ingested table: the prior is the class marginal,
//! each feature's conditional channel is extracted from the empirical joint
//! state by disintegration, and classification is Bayesian inversion of the
//! tupled channel (discrete) or likelihood inversion (hybrid).

use chanprob::{
    bayes_invert, extract, likelihood_invert, Channel, DensityFamily, FeatureValue,
    GaussianFeatureSpec, Mask, ProductSpace, Space, State,
};

use crate::ingest::DataTable;
use crate::CliError;

/// One fitted feature: its column name and evaluator.
#[derive(Debug, Clone)]
pub struct Feature {
    pub name: String,
    pub evaluator: DensityFamily,
}

#[derive(Debug, Clone)]
pub struct NaiveBayesModel {
    pub class_name: String,
    pub class_space: Space,
    pub prior: State,
    pub features: Vec<Feature>,
}

/// Fit a model from a table.
///
/// Discrete features come from disintegrating the empirical joint state.
/// In hybrid mode, numeric columns get per-class Gaussians fitted by sample
/// mean and sample standard deviation, and `overrides` can pin Gaussian
/// parameters for any feature directly (the override wins over fitting).
pub fn fit(
    table: &DataTable,
    class_column: &str,
    hybrid: bool,
    overrides: &[GaussianFeatureSpec],
) -> Result<NaiveBayesModel, CliError> {
    let class_idx = table
        .column_index(class_column)
        .ok_or_else(|| CliError::UnknownColumn {
            name: class_column.to_string(),
        })?;
    let class_col = &table.columns()[class_idx];
    if class_col.numeric.is_some() {
        return Err(CliError::NumericClassColumn {
            name: class_column.to_string(),
        });
    }
    for spec in overrides {
        if !hybrid {
            return Err(CliError::OverrideWithoutHybrid {
                feature: spec.feature.clone(),
            });
        }
        if table.column_index(&spec.feature).is_none() {
            return Err(CliError::UnknownColumn {
                name: spec.feature.clone(),
            });
        }
        class_col.space.index_of(&spec.class)?;
    }

    let joint = table.joint_state()?;
    let wires = table.columns().len();
    let class_mask = Mask::from_indices(wires, &[class_idx]);
    let prior = joint.marginal(&class_mask)?;

    let class_space = class_col.space.clone();
    let class_rows = table.column_values(class_idx);
    let class_counts: Vec<usize> = (0..class_space.len())
        .map(|c| class_rows.iter().filter(|&&v| v == c).count())
        .collect();
    if let Some(empty) = class_counts.iter().position(|&n| n == 0) {
        return Err(CliError::EmptyClass {
            label: class_space.label(empty).to_string(),
        });
    }

    let mut features = Vec::new();
    for (col, column) in table.columns().iter().enumerate() {
        if col == class_idx {
            continue;
        }
        let spec_for = |class_label: &str| {
            overrides
                .iter()
                .find(|s| s.feature == column.name && s.class == class_label)
        };
        let has_override = class_space.labels().iter().any(|l| spec_for(l).is_some());

        let evaluator = if hybrid && has_override {
            // injected Gaussian parameters, one per class
            let params = class_space
                .labels()
                .iter()
                .map(|label| {
                    spec_for(label)
                        .map(|s| (s.mean, s.stddev))
                        .ok_or_else(|| CliError::IncompleteOverride {
                            feature: column.name.clone(),
                            class: label.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            DensityFamily::gaussian(class_space.clone(), &params)?
        } else if hybrid && column.numeric.is_some() {
            let values = column.numeric.as_ref().unwrap();
            let params = (0..class_space.len())
                .map(|c| {
                    let xs: Vec<f64> = values
                        .iter()
                        .zip(&class_rows)
                        .filter(|(_, &cls)| cls == c)
                        .map(|(&v, _)| v)
                        .collect();
                    if xs.len() < 2 {
                        return Err(CliError::TooFewRowsForGaussian {
                            feature: column.name.clone(),
                            class: class_space.label(c).to_string(),
                        });
                    }
                    let n = xs.len() as f64;
                    let mean = xs.iter().sum::<f64>() / n;
                    let var =
                        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
                    if var <= 0.0 {
                        return Err(CliError::ZeroVariance {
                            feature: column.name.clone(),
                            class: class_space.label(c).to_string(),
                        });
                    }
                    Ok((mean, var.sqrt()))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            DensityFamily::gaussian(class_space.clone(), &params)?
        } else {
            let channel = extract(
                &joint,
                &Mask::from_indices(wires, &[col]),
                &class_mask,
            )?;
            DensityFamily::counting(&channel)?
        };
        features.push(Feature {
            name: column.name.clone(),
            evaluator,
        });
    }

    Ok(NaiveBayesModel {
        class_name: class_column.to_string(),
        class_space,
        prior,
        features,
    })
}

impl NaiveBayesModel {
    pub fn is_hybrid(&self) -> bool {
        self.features.iter().any(|f| !f.evaluator.is_discrete())
    }

    /// Parse a comma-separated observation, one value per feature in column
    /// order (class column excluded).
    pub fn parse_observation(&self, text: &str) -> Result<Vec<FeatureValue>, CliError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != self.features.len() {
            return Err(CliError::ObservationArity {
                expected: self.features.len(),
                found: parts.len(),
            });
        }
        self.features
            .iter()
            .zip(parts)
            .map(|(feature, part)| {
                if feature.evaluator.is_discrete() {
                    Ok(FeatureValue::Label(part.to_string()))
                } else {
                    part.parse::<f64>()
                        .map(FeatureValue::Real)
                        .map_err(|_| CliError::BadObservationValue {
                            feature: feature.name.clone(),
                            value: part.to_string(),
                        })
                }
            })
            .collect()
    }

    /// Posterior over classes for one observation.
    ///
    /// Fully discrete models go through Bayesian inversion of the tupled
    /// channel at the observation tuple; hybrid models go through
    /// likelihood inversion.
    pub fn classify(&self, observation: &[FeatureValue]) -> Result<State, CliError> {
        if observation.len() != self.features.len() {
            return Err(CliError::ObservationArity {
                expected: self.features.len(),
                found: observation.len(),
            });
        }
        if self.is_hybrid() {
            let families: Vec<DensityFamily> =
                self.features.iter().map(|f| f.evaluator.clone()).collect();
            return Ok(likelihood_invert(&self.prior, &families, observation)?);
        }

        let tupled = self.tupled_channel()?;
        let inversion = bayes_invert(&self.prior, &tupled)?;
        let labels: Vec<&str> = observation
            .iter()
            .map(|v| match v {
                FeatureValue::Label(l) => Ok(l.as_str()),
                FeatureValue::Real(_) => Err(CliError::BadObservationValue {
                    feature: self.class_name.clone(),
                    value: "real-valued".to_string(),
                }),
            })
            .collect::<Result<_, _>>()?;
        let index = tupled.cod().index_of(&labels)?;
        let posterior = inversion.row(index).to_vec();
        // the inversion row is uniform when the tuple has no mass under the
        // model; that cannot happen in naive Bayes unless every class gives
        // zero likelihood
        let predictive = tupled.apply(&self.prior)?;
        if predictive.weight(index) <= 0.0 {
            return Err(CliError::Core(chanprob::Error::AllFeaturesImpossible));
        }
        Ok(State::new(self.prior.space().clone(), posterior)?)
    }

    /// The tupled channel `class -> F1 (x) ... (x) Fk` of a fully discrete
    /// model.
    pub fn tupled_channel(&self) -> Result<Channel, CliError> {
        let mut spaces = Vec::new();
        // per class, the row of each feature's channel
        let mut class_rows: Vec<Vec<&[f64]>> = vec![Vec::new(); self.class_space.len()];
        for feature in &self.features {
            let chanprob::ReferenceMeasure::CountingFinite(space) =
                feature.evaluator.reference()
            else {
                return Err(CliError::HybridTupling);
            };
            spaces.push(space.clone());
            for (c, density) in feature.evaluator.densities().iter().enumerate() {
                match density {
                    chanprob::DensityFn::Rows(r) => class_rows[c].push(r),
                    _ => unreachable!("counting families hold rows"),
                }
            }
        }
        let cod = ProductSpace::new(spaces);
        let dom = ProductSpace::from(self.class_space.clone());
        let mut rows = Vec::with_capacity(dom.len() * cod.len());
        for feature_rows in &class_rows {
            for tuple in 0..cod.len() {
                let digits = cod.decompose(tuple);
                let w = digits
                    .iter()
                    .zip(feature_rows)
                    .map(|(&d, row)| row[d])
                    .product();
                rows.push(w);
            }
        }
        Ok(Channel::new(dom, cod, rows)?)
    }
}
