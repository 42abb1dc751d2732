use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hpm_core::hpm::{run_hpm, Case, HpmExpansion};
use hpm_core::report::{
    golden_compare, golden_table, parse_config, preset_report_orders, relative_error_table, relative_error_table_on,
    render_plot_data, render_table, write_file, ConfigError, ErrorTable, ReportError, RunConfig,
    PRECISION_RANGE,
};
use hpm_core::scalar::{relative_deviation, ExtendedFloat};
use hpm_core::wave::deng_wave;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

const TAYLOR_SAMPLE_X: [&str; 5] = ["-2", "-1", "0", "1", "3"];
const TAYLOR_TOLERANCE: f64 = 1e-25;

/// Homotopy perturbation series for the generalized Burgers-Huxley equation.
#[derive(Parser)]
#[command(name = "hpm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the relative-error table for a configuration.
    Run(Common),
    /// Compare all presets (or one) against the reference tables.
    Golden(Common),
    /// Print the expansion terms v0..vK.
    Terms(Common),
    /// Check each term against the exact wave's time-Taylor coefficients.
    TaylorCheck(Common),
}

#[derive(Args)]
struct Common {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset parameter set.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1", "2", "3"]))]
    case: Option<String>,
    /// Highest expansion order K.
    #[arg(long)]
    orders: Option<usize>,
    /// Working precision in significant decimal digits.
    #[arg(long)]
    precision: Option<u32>,
    /// Table format.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["csv", "md", "markdown"]))]
    format: Option<String>,
    /// Output file; the table goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Internal(String),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Config(c) => Failure::Config(c.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<hpm_core::hpm::HpmError> for Failure {
    fn from(e: hpm_core::hpm::HpmError) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn env_precision() -> Result<Option<u32>, Failure> {
    match std::env::var("HPM_PRECISION") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Config(format!("HPM_PRECISION must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

impl Common {
    fn case(&self) -> Option<Case> {
        self.case.as_deref().map(|c| c.parse().expect("validated by clap"))
    }

    /// Config file or preset, then flag and environment overrides.
    fn resolve(&self, default_case: Option<Case>) -> Result<RunConfig, Failure> {
        let mut config = match (&self.config, self.case()) {
            (Some(_), Some(_)) => return Err(Failure::Config("use either --config or --case, not both".into())),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            (None, Some(case)) => RunConfig::preset(case),
            (None, None) => match default_case {
                Some(case) => RunConfig::preset(case),
                None => return Err(Failure::Config("give a configuration with --config or a preset with --case".into())),
            },
        };
        if let Some(k) = self.orders {
            config.orders = k;
            if self.config.is_none() {
                if let Some(case) = config.case() {
                    config.report_orders = preset_report_orders(case).into_iter().filter(|&m| m <= k + 1).collect();
                }
            }
        }
        if let Some(p) = self.precision.or(env_precision()?) {
            config.precision = p;
        }
        if let Some(f) = &self.format {
            config.format = f.parse().map_err(Failure::Config)?;
        }
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        config.validate()?;
        Ok(config)
    }

    fn cases(&self) -> Vec<Case> {
        self.case().map_or_else(|| Case::ALL.to_vec(), |c| vec![c])
    }

    fn precision(&self, default: u32) -> Result<u32, Failure> {
        let p = self.precision.or(env_precision()?).unwrap_or(default);
        if !PRECISION_RANGE.contains(&p) {
            return Err(Failure::Config(format!("precision must be in {}..={}, got {p}", PRECISION_RANGE.start(), PRECISION_RANGE.end())));
        }
        Ok(p)
    }
}

fn label(config: &RunConfig) -> String {
    config.case().map_or_else(|| "custom".to_string(), |c| c.to_string())
}

fn run(args: &Common) -> Result<u8, Failure> {
    let config = args.resolve(None)?;
    let expansion = run_hpm(&config.problem, config.orders)?;
    let table = relative_error_table(&expansion, &deng_wave(&config.problem), &config)?;
    let label = label(&config);
    match &config.out {
        Some(path) => {
            hpm_core::report::emit_table(&table, &label, config.format, path)?;
            println!(
                "wrote {} ({} cells) and {}",
                path.display(),
                table.cells().count(),
                hpm_core::report::plot_data_path(path).display()
            );
        }
        None => print!("{}", render_table(&table, config.format)),
    }
    Ok(0)
}

fn golden(args: &Common) -> Result<u8, Failure> {
    if args.config.is_some() {
        return Err(Failure::Config("golden runs the presets; use --case to pick one".into()));
    }
    let orders = args.orders.unwrap_or(5);
    let precision = args.precision(30)?;
    let mut all_passed = true;
    let mut tables: Vec<(String, ErrorTable)> = Vec::new();
    for case in args.cases() {
        let problem = case.problem();
        let expansion = run_hpm(&problem, orders)?;
        let g = golden_table(case);
        let all_orders: Vec<usize> = (1..=orders + 1).collect();
        let table = relative_error_table_on(&expansion, &deng_wave(&problem), &g.grid_x(), &g.grid_t(), &all_orders, precision)?;
        let report = golden_compare(&table, case)?;
        all_passed &= report.passed();
        print!("{report}");
        tables.push((case.to_string(), table));
    }
    if let Some(path) = &args.out {
        let refs: Vec<(&str, &ErrorTable)> = tables.iter().map(|(l, t)| (l.as_str(), t)).collect();
        write_file(path, &render_plot_data(&refs))?;
        println!("wrote {}", path.display());
    }
    Ok(if all_passed { 0 } else { EXIT_FAIL })
}

fn expansion_for(args: &Common, default_order: usize) -> Result<HpmExpansion, Failure> {
    let mut config = args.resolve(Some(Case::I))?;
    if args.orders.is_none() && args.config.is_none() {
        config.orders = default_order;
    }
    Ok(run_hpm(&config.problem, config.orders)?)
}

fn terms(args: &Common) -> Result<u8, Failure> {
    let expansion = expansion_for(args, 3)?;
    println!("# {}", expansion.problem());
    println!("# E = exp(kappa*x), kappa = {}", expansion.problem().rate());
    for (k, v) in expansion.terms().iter().enumerate() {
        println!("v{k} = {v}");
    }
    Ok(0)
}

fn taylor_check(args: &Common) -> Result<u8, Failure> {
    if args.config.is_some() {
        return Err(Failure::Config("taylor-check runs the presets; use --case to pick one".into()));
    }
    let orders = args.orders.unwrap_or(6);
    let precision = args.precision(40)?;
    let mut ok = true;
    for case in args.cases() {
        let problem = case.problem();
        let expansion = run_hpm(&problem, orders)?;
        let wave = deng_wave(&problem);
        let mut worst = 0.0f64;
        for xs in TAYLOR_SAMPLE_X {
            let x = ExtendedFloat::parse(xs, precision).expect("sample literal");
            let oracle = wave.taylor_time_coefficients(&x, orders, precision).map_err(|e| Failure::Internal(e.to_string()))?;
            for (k, v) in expansion.terms().iter().enumerate() {
                let got = v.coefficient(k).eval(&x, precision).map_err(|e| Failure::Internal(e.to_string()))?;
                worst = worst.max(relative_deviation(&got, &oracle[k]).to_f64());
            }
        }
        let pass = worst < TAYLOR_TOLERANCE;
        ok &= pass;
        println!("case {case}: {} (k <= {orders}, max relative deviation {worst:.3e})", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => run(a),
        Command::Golden(a) => golden(a),
        Command::Terms(a) => terms(a),
        Command::TaylorCheck(a) => taylor_check(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hpm_core::report::OutputFormat;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn format_override_parses() {
        assert_eq!("md".parse::<OutputFormat>().unwrap(), OutputFormat::Markdown);
    }
}
