//! Query dispatch: each function ingests a table, runs one operation from
//! the library, and renders the result.

use std::path::Path;

use chanprob::{
    cond_indep_within, crossover, disintegrate, extract, CrossoverPath, Effect,
    GaussianFeatureSpec, Mask, State, WireGroups, CI_EPS, DEFAULT_EPS,
};

use crate::ingest::DataTable;
use crate::model;
use crate::render::{render_channel, render_model, render_state, OutputFormat};
use crate::CliError;

#[derive(Debug, Clone, Copy)]
pub struct QueryOpts {
    pub format: OutputFormat,
    pub precision: usize,
    pub eps: Option<f64>,
}

fn joint(path: &Path) -> Result<State, CliError> {
    DataTable::read_path(path)?.joint_state()
}

pub fn run_marginal(path: &Path, mask: &Mask, opts: QueryOpts) -> Result<String, CliError> {
    let state = joint(path)?.marginal(mask)?;
    Ok(render_state(&state, opts.format, opts.precision))
}

pub fn run_extract(
    path: &Path,
    out_mask: &Mask,
    in_mask: &Mask,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let channel = extract(&joint(path)?, out_mask, in_mask)?;
    Ok(render_channel(&channel, opts.format, opts.precision))
}

/// Bayesian inversion of the extracted conditional: the channel
/// `out -> in` obtained by inverting `extract(out | in)` against the
/// marginal on the `in` wires.
pub fn run_invert(
    path: &Path,
    out_mask: &Mask,
    in_mask: &Mask,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let omega = joint(path)?;
    let prior = omega.marginal(in_mask)?;
    let forward = extract(&omega, out_mask, in_mask)?;
    let inverted = chanprob::bayes_invert(&prior, &forward)?;
    Ok(render_channel(&inverted, opts.format, opts.precision))
}

/// Condition the joint state by an effect on the masked wires.
pub fn run_condition(
    path: &Path,
    mask: Option<&Mask>,
    effect_text: &str,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let omega = joint(path)?;
    let wires = omega.space().wires();
    let mask = match mask {
        Some(m) => m.clone(),
        None => Mask::ones(wires),
    };
    let sub_space = omega.space().select(&mask)?;
    let effect = Effect::parse(&sub_space, effect_text)?;
    let weakened = chanprob::weaken_into(omega.space(), &mask, &effect)?;
    let eps = opts.eps.unwrap_or(DEFAULT_EPS);
    let conditioned = chanprob::condition_within(&omega, &weakened, eps)?;
    Ok(render_state(&conditioned, opts.format, opts.precision))
}

/// Crossover inference: keep the masked wires, observe the effect on the
/// rest, compute along one of the three equivalent paths.
pub fn run_crossover(
    path: &Path,
    keep: &Mask,
    effect_text: &str,
    path_choice: CrossoverPath,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let omega = joint(path)?;
    let rest_space = omega.space().select(&!keep)?;
    let effect = Effect::parse(&rest_space, effect_text)?;
    let posterior = crossover(&omega, keep, &effect, path_choice)?;
    Ok(render_state(&posterior, opts.format, opts.precision))
}

pub fn run_ci(
    path: &Path,
    x: &Mask,
    y: &Mask,
    z: Option<&Mask>,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let omega = joint(path)?;
    let wires = omega.space().wires();
    let groups = match z {
        Some(z) => WireGroups::new(x.clone(), y.clone(), z.clone())?,
        None => WireGroups::new(x.clone(), y.clone(), Mask::zeros(wires))?,
    };
    let eps = opts.eps.unwrap_or(CI_EPS);
    let independent = cond_indep_within(&omega, &groups, eps)?;
    Ok(match opts.format {
        OutputFormat::Ket => if independent {
            "independent".to_string()
        } else {
            "not independent".to_string()
        },
        OutputFormat::Json => format!("{{\"independent\":{independent}}}"),
    })
}

pub fn run_fit(
    path: &Path,
    class: Option<&str>,
    hybrid: bool,
    overrides: &[GaussianFeatureSpec],
    opts: QueryOpts,
) -> Result<String, CliError> {
    let table = DataTable::read_path(path)?;
    let class_name = class_or_last(&table, class);
    let model = model::fit(&table, &class_name, hybrid, overrides)?;
    Ok(render_model(&model, opts.format, opts.precision))
}

pub fn run_classify(
    path: &Path,
    class: Option<&str>,
    hybrid: bool,
    overrides: &[GaussianFeatureSpec],
    observation: &str,
    opts: QueryOpts,
) -> Result<String, CliError> {
    let table = DataTable::read_path(path)?;
    let class_name = class_or_last(&table, class);
    let model = model::fit(&table, &class_name, hybrid, overrides)?;
    let obs = model.parse_observation(observation)?;
    let posterior = model.classify(&obs)?;
    Ok(render_state(&posterior, opts.format, opts.precision))
}

/// A plain disintegration view: base and channel for a mask. Kept for
/// parity with the library surface; `extract` covers the common case.
pub fn run_disintegrate(path: &Path, mask: &Mask, opts: QueryOpts) -> Result<String, CliError> {
    let omega = joint(path)?;
    let d = disintegrate(&omega, mask)?;
    let base = render_state(&d.base, opts.format, opts.precision);
    let channel = render_channel(&d.channel, opts.format, opts.precision);
    Ok(match opts.format {
        OutputFormat::Ket => format!("base: {base}\n{channel}"),
        OutputFormat::Json => format!("{{\"base\":{base},\"channel\":{channel}}}"),
    })
}

fn class_or_last(table: &DataTable, class: Option<&str>) -> String {
    match class {
        Some(name) => name.to_string(),
        None => table
            .columns()
            .last()
            .map(|c| c.name.clone())
            .unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn opts() -> QueryOpts {
        QueryOpts {
            format: OutputFormat::Ket,
            precision: 3,
            eps: None,
        }
    }

    fn write_fixture(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("chanprob-query-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    const DISEASE_MOOD: &str = "\
Mood,Disease
m,d
m,dbar
m,dbar
m,dbar
m,dbar
m,dbar
m,dbar
m,dbar
m,dbar
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,d
mbar,dbar
";

    #[test]
    fn marginal_and_ci_queries_on_the_mood_example() {
        let path = write_fixture("dm.csv", DISEASE_MOOD);
        let out = run_marginal(&path, &"1,0".parse().unwrap(), opts()).unwrap();
        assert_eq!(out, "0.45|m⟩ + 0.55|mbar⟩");

        let verdict = run_ci(
            &path,
            &"1,0".parse().unwrap(),
            &"0,1".parse().unwrap(),
            None,
            opts(),
        )
        .unwrap();
        assert_eq!(verdict, "not independent");
    }

    #[test]
    fn conditioning_by_truth_echoes_the_state() {
        let path = write_fixture("dm2.csv", DISEASE_MOOD);
        let out = run_condition(&path, None, "{m.d,m.dbar,mbar.d,mbar.dbar}", opts()).unwrap();
        let echoed = run_marginal(&path, &"1,1".parse().unwrap(), opts()).unwrap();
        assert_eq!(out, echoed);
    }

    #[test]
    fn crossover_query_reproduces_the_posterior_mood() {
        let path = write_fixture("dm3.csv", DISEASE_MOOD);
        for which in ["backward", "joint", "forward"] {
            let path_choice = match which {
                "backward" => CrossoverPath::Backward,
                "joint" => CrossoverPath::JointThenMarginal,
                _ => CrossoverPath::Forward,
            };
            let out = run_crossover(
                &path,
                &"1,0".parse().unwrap(),
                "d:0.9,dbar:0.05",
                path_choice,
                opts(),
            )
            .unwrap();
            assert_eq!(out, "0.126|m⟩ + 0.874|mbar⟩", "path {which}");
        }
    }
}
