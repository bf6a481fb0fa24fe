//! Command implementations behind the `qgnsa` binary.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{config_hash, load_config, DatasetSource, RunConfigFile};
use crate::data::preprocess::{preprocess, LabeledDataset, PreprocessSpec};
use crate::data::synthetic::generate_synthetic;
use crate::data::table::load_csv;
use crate::data::write_dataset;
use crate::error::{Error, Result};
use crate::eval::METRIC_NAMES;
use crate::protocol::{run_protocol, AggregateReport};

/// Top-level report file: one aggregate per configured run block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub config_hash: String,
    pub master_seed: u64,
    pub reports: Vec<AggregateReport>,
}

pub fn cmd_preprocess(input: &Path, spec_arg: &str, output: &Path) -> Result<()> {
    let spec = resolve_spec(spec_arg)?;
    let table = load_csv(input)?;
    if table.is_empty() {
        return Err(Error::InvalidInput(
            "input has a header but no data rows".into(),
        ));
    }
    let dataset = preprocess(&table, &spec)?;
    let hash = config_hash(&spec);
    let manifest = write_dataset(output, &dataset, &hash, None)?;
    println!(
        "wrote {} self rows, {} nonself rows, {} features to {}",
        manifest.self_rows,
        manifest.nonself_rows,
        manifest.features,
        output.display()
    );
    Ok(())
}

fn resolve_spec(spec_arg: &str) -> Result<PreprocessSpec> {
    if let Some(preset) = PreprocessSpec::preset(spec_arg) {
        return Ok(preset);
    }
    let path = Path::new(spec_arg);
    if !path.exists() {
        return Err(Error::InvalidConfig(format!(
            "`{spec_arg}` is neither a known preset nor a readable spec file"
        )));
    }
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))
}

pub fn cmd_synth(
    features: usize,
    n_self: usize,
    n_nonself: usize,
    separation: f64,
    seed: u64,
    output: &Path,
) -> Result<()> {
    let dataset = generate_synthetic(features, n_self, n_nonself, separation, seed)?;
    let params = serde_json::json!({
        "features": features,
        "self": n_self,
        "nonself": n_nonself,
        "separation": separation,
        "seed": seed,
    });
    let warning = (separation == 0.0)
        .then(|| "separation is 0: self and nonself distributions are identical".to_string());
    let manifest = write_dataset(output, &dataset, &config_hash(&params), warning)?;
    println!(
        "wrote {} self rows, {} nonself rows to {}",
        manifest.self_rows,
        manifest.nonself_rows,
        output.display()
    );
    Ok(())
}

fn load_dataset(config: &RunConfigFile) -> Result<LabeledDataset> {
    match &config.dataset {
        DatasetSource::Synthetic {
            features,
            self_count,
            nonself_count,
            separation,
            seed,
        } => generate_synthetic(*features, *self_count, *nonself_count, *separation, *seed),
        DatasetSource::Csv { path, .. } => {
            let spec = config
                .resolve_preprocess_spec()?
                .expect("csv source always yields a spec");
            let table = load_csv(path)?;
            preprocess(&table, &spec)
        }
    }
}

pub fn cmd_run(config_path: &Path) -> Result<()> {
    let config = load_config(config_path)?;
    let hash = config_hash(&config);
    let dataset = load_dataset(&config)?;

    let mut reports = Vec::with_capacity(config.runs.len());
    for engine in &config.runs {
        let report = run_protocol(
            &dataset,
            engine,
            &config.protocol,
            config.master_seed,
            &hash,
        )?;
        println!(
            "{}: {} runs, mean accuracy {}",
            report.algorithm,
            report.runs.len(),
            report.summary["accuracy"]
                .mean
                .map_or("n/a".to_string(), |m| format!("{m:.4}")),
        );
        reports.push(report);
    }

    write_run_outputs(&config.output_dir, &hash, config.master_seed, &reports)?;
    println!("report written to {}", config.output_dir.display());
    Ok(())
}

fn write_run_outputs(
    out_dir: &Path,
    hash: &str,
    master_seed: u64,
    reports: &[AggregateReport],
) -> Result<()> {
    fs::create_dir_all(out_dir)?;

    for report in reports {
        for run in &report.runs {
            let dir = out_dir
                .join("runs")
                .join(&report.algorithm)
                .join(format!("{}_{}", run.fold, run.rep));
            fs::create_dir_all(&dir)?;
            let cm = &run.confusion;
            let csv = format!(
                "# config_hash={hash}\ntp,fp,tn,fn\n{},{},{},{}\n",
                cm.tp, cm.fp, cm.tn, cm.fn_
            );
            fs::write(dir.join("confusion.csv"), csv)?;
        }
    }

    let report_file = ReportFile {
        config_hash: hash.to_string(),
        master_seed,
        reports: reports.to_vec(),
    };
    let json = serde_json::to_string_pretty(&report_file)
        .map_err(|e| Error::Report(e.to_string()))?;
    fs::write(out_dir.join("report.json"), json + "\n")?;

    // long-format CSV for external plotting
    let mut long = format!("# config_hash={hash}\nrun_id,algorithm,fold,rep,metric,value\n");
    for report in reports {
        for run in &report.runs {
            let run_id = format!("{}-{}-{}", report.algorithm, run.fold, run.rep);
            for name in METRIC_NAMES {
                let value = run
                    .metrics
                    .get(name)
                    .map_or(String::new(), |v| format!("{v}"));
                long.push_str(&format!(
                    "{run_id},{},{},{},{name},{value}\n",
                    report.algorithm, run.fold, run.rep
                ));
            }
        }
    }
    fs::write(out_dir.join("metrics_long.csv"), long)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
}

pub fn cmd_report(input: &Path, format: ReportFormat) -> Result<()> {
    let text = fs::read_to_string(input)?;
    let report: ReportFile =
        serde_json::from_str(&text).map_err(|e| Error::Report(e.to_string()))?;
    print!("{}", render_report(&report, format));
    Ok(())
}

/// Render the aggregate comparison: one row per metric, one column per
/// algorithm, mean ± stddev over defined runs. Undefined means show "n/a";
/// the stddev is omitted when fewer than two runs define the metric.
pub fn render_report(report: &ReportFile, format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("algorithm,metric,mean,stddev,defined\n");
            for agg in &report.reports {
                for name in METRIC_NAMES {
                    let s = &agg.summary[name];
                    out.push_str(&format!(
                        "{},{name},{},{},{}\n",
                        agg.algorithm,
                        s.mean.map_or(String::new(), |v| format!("{v}")),
                        s.stddev.map_or(String::new(), |v| format!("{v}")),
                        s.defined
                    ));
                }
            }
        }
        ReportFormat::Table => {
            out.push_str(&format!("{:<12}", "metric"));
            for agg in &report.reports {
                out.push_str(&format!(" {:>22}", agg.algorithm));
            }
            out.push('\n');
            for name in METRIC_NAMES {
                out.push_str(&format!("{name:<12}"));
                for agg in &report.reports {
                    let s = &agg.summary[name];
                    let cell = match (s.mean, s.stddev) {
                        (Some(m), Some(sd)) => format!("{m:.4} ± {sd:.4}"),
                        (Some(m), None) => format!("{m:.4}"),
                        (None, _) => "n/a".to_string(),
                    };
                    out.push_str(&format!(" {cell:>22}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Exit code for an error: 1 usage/config, 2 data, 3 engine.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_) => 1,
        Error::RunContext { .. } => 3,
        _ => 2,
    }
}
