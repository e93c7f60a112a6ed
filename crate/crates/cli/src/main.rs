mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use chainrad::constants::{self, ANGSTROM, SPEED_OF_LIGHT};
use chainrad::figures::{self, causal_lattice_limit, FigureOptions};
use chainrad::scales::{angstrom_to_meters, fold_polarization};
use chainrad::sweep::{linspace, logspace};
use chainrad::verify::{run_verification, VerifyGrid};
use chainrad::{
    angle_sweep, coupling_matrix, coupling_sweep, derive_scales, dimensionless_separation,
    emission_sweep, n_scaling_sweep, x_sweep, ChainConfig, ConfigFile, EmissionAxis,
    EmissionGeometry, GammaSource, SignState, SweepTable,
};

use args::{Cli, Command, Common};

/// Default time window for `emission --vs-time`, in single-atom lifetimes.
const TIME_WINDOW_LIFETIMES: f64 = 5.0;

#[derive(Debug)]
enum Failure {
    Core(chainrad::Error),
    Usage(String),
    Io(io::Error),
    Verify(String),
}

impl From<chainrad::Error> for Failure {
    fn from(e: chainrad::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use chainrad::Error::*;
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Core(Domain(_) | State(_)) => 2,
            Failure::Core(Config(_)) => 3,
            Failure::Core(Accuracy { .. }) | Failure::Verify(_) => 4,
            Failure::Core(Causality { .. }) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Io(e) => format!("i/o error: {e}"),
            Failure::Verify(m) => m.clone(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("chainrad: {}", f.message().replace('\n', " "));
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    let common = &cli.common;
    let (table, verify_failure) = match &cli.command {
        Command::Figure { number } => {
            let opts = FigureOptions {
                points: common.points,
                range: parse_range(common.range.as_deref())?,
                oracle: common.oracle,
            };
            (figures::figure_table(*number, &opts)?, None)
        }
        Command::Verify { n_max, tolerance } => {
            let grid = VerifyGrid { n_max: *n_max, ..VerifyGrid::default() };
            let report = run_verification(&grid, *tolerance)?;
            let failure = (!report.passed()).then(|| {
                format!(
                    "verification failed: max relative error {:e} exceeds {:e} in {} comparison(s)",
                    report.max_rel_err(),
                    tolerance,
                    report.failures.len()
                )
            });
            let table = with_header(report.to_table(), "verify", None);
            (table, failure)
        }
        command => {
            let config = load_config(common)?;
            let table = chain_command(command, common, &config)?;
            let name = command_name(command);
            // Emission tables already carry the configuration.
            let cfg = (!matches!(command, Command::Emission { .. })).then_some(&config);
            (with_header(table, name, cfg), None)
        }
    };
    write_table(&table, common.out.as_deref())?;
    match verify_failure {
        Some(m) => Err(Failure::Verify(m)),
        None => Ok(()),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Scales => "scales",
        Command::Coupling { .. } => "coupling",
        Command::Damping => "damping",
        Command::Nscaling { .. } => "nscaling",
        Command::Angles { .. } => "angles",
        Command::Emission { .. } => "emission",
        Command::Figure { .. } => "figure",
        Command::Verify { .. } => "verify",
    }
}

fn with_header(mut table: SweepTable, command: &str, config: Option<&ChainConfig>) -> SweepTable {
    let mut meta = vec![
        ("tool".to_string(), format!("chainrad-{}", chainrad::VERSION)),
        ("command".to_string(), command.to_string()),
    ];
    if let Some(cfg) = config {
        meta.extend(cfg.metadata());
    }
    meta.append(&mut table.metadata);
    meta.extend(constants::metadata());
    table.metadata = meta;
    table
}

fn load_config(common: &Common) -> Outcome<ChainConfig> {
    let mut file = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                chainrad::Error::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            ConfigFile::from_json(&text)?
        }
        None => ConfigFile::default(),
    };
    for item in &common.overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--set expects KEY=VALUE, got {item:?}")))?;
        file.apply_override(key, value)?;
    }
    Ok(file.to_config()?)
}

fn parse_range(text: Option<&str>) -> Outcome<Option<(f64, f64)>> {
    let Some(text) = text else { return Ok(None) };
    let bad = || Failure::Usage(format!("--range expects LO:HI, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(bad());
    }
    Ok(Some((lo, hi)))
}

fn phis_or_config(common: &Common, config: &ChainConfig) -> Vec<f64> {
    match &common.phis {
        Some(degs) => degs.iter().map(|d| fold_polarization(d.to_radians())).collect(),
        None => vec![config.polarization_angle()],
    }
}

fn x_grid(common: &Common) -> Outcome<Vec<f64>> {
    let (lo, hi) = parse_range(common.range.as_deref())?.unwrap_or(figures::DEFAULT_X_RANGE);
    Ok(linspace(lo, hi, common.points.unwrap_or(figures::DEFAULT_X_POINTS))?)
}

fn chain_command(command: &Command, common: &Common, config: &ChainConfig) -> Outcome<SweepTable> {
    let x_config = dimensionless_separation(config);
    match command {
        Command::Scales => {
            let s = derive_scales(config);
            let mut table = SweepTable::new(
                ["omega_a_rad_s", "q_a_per_m", "lambda_a_m", "gamma_a_hz", "q_a_times_a"]
                    .map(String::from)
                    .to_vec(),
            );
            let source = match s.gamma_source {
                GammaSource::DipoleFormula => "dipole_formula",
                GammaSource::Override => "override",
            };
            table = table.with_metadata("gamma_source", source);
            table.push_row(vec![s.omega_a, s.q_a, s.lambda_a, s.gamma_a, x_config]);
            Ok(table)
        }
        Command::Coupling { matrix: true, nearest } => {
            let m = coupling_matrix(config);
            let m = if *nearest { m.nearest_neighbor() } else { m };
            let gamma = derive_scales(config).gamma_a;
            let mut columns = vec!["site".to_string()];
            columns.extend((1..=m.dim()).map(|k| format!("J_{k}")));
            let mut table = SweepTable::new(columns)
                .with_metadata("quantity", "J/Gamma_A")
                .with_metadata("omega_a_rad_s", format!("{:e}", m.diagonal()))
                .with_metadata("nearest_only", nearest.to_string());
            for n in 0..m.dim() {
                let mut row = vec![(n + 1) as f64];
                row.extend((0..m.dim()).map(|k| m.get(n, k) / gamma));
                table.push_row(row);
            }
            Ok(table)
        }
        Command::Coupling { matrix: false, .. } => {
            let (lo, hi) = parse_range(common.range.as_deref())?.unwrap_or(figures::DEFAULT_X_RANGE);
            let points = common.points.unwrap_or(figures::DEFAULT_X_POINTS);
            Ok(coupling_sweep(lo, hi, points, &phis_or_config(common, config))?)
        }
        Command::Damping => {
            let state = SignState::parse(common.state.as_deref().unwrap_or("sym"), config.n_atoms())?;
            Ok(x_sweep(&state, &x_grid(common)?, &phis_or_config(common, config), common.oracle)?)
        }
        Command::Nscaling { x } => {
            let n_max = match parse_range(common.range.as_deref())? {
                Some((_, hi)) if hi >= 1.0 => hi as usize,
                Some((_, hi)) => return Err(Failure::Usage(format!("N range upper end {hi} is below 1"))),
                None => figures::DEFAULT_N_MAX,
            };
            Ok(n_scaling_sweep(n_max, x.unwrap_or(x_config), &phis_or_config(common, config))?)
        }
        Command::Angles { x } => {
            let (lo, hi) = parse_range(common.range.as_deref())?.unwrap_or(figures::DEFAULT_ANGLE_RANGE_DEG);
            let grid: Vec<f64> = linspace(lo, hi, common.points.unwrap_or(figures::DEFAULT_ANGLE_POINTS))?
                .into_iter()
                .map(f64::to_radians)
                .collect();
            Ok(angle_sweep(config.n_atoms(), x.unwrap_or(x_config), &grid)?)
        }
        Command::Emission { obs_x, time, vs_time } => emission(common, config, *obs_x, *time, *vs_time),
        Command::Figure { .. } | Command::Verify { .. } => unreachable!("handled without a config"),
    }
}

fn emission(
    common: &Common,
    config: &ChainConfig,
    obs_x_angstrom: f64,
    time: Option<f64>,
    vs_time: bool,
) -> Outcome<SweepTable> {
    if common.phis.is_some() {
        return Err(Failure::Usage(
            "emission uses the configured polarization; set polarization_deg instead of --phis".into(),
        ));
    }
    let state = SignState::parse(common.state.as_deref().unwrap_or("sym"), config.n_atoms())?;
    let obs_x = angstrom_to_meters(obs_x_angstrom);
    let range = parse_range(common.range.as_deref())?;
    let points = common.points.unwrap_or(figures::DEFAULT_EMISSION_POINTS);
    let axis = if vs_time {
        let geom = EmissionGeometry::new(config.n_atoms(), config.lattice_const(), config.polarization_angle(), obs_x)?;
        let (lo, hi) = match range {
            Some(r) => r,
            None => {
                let start = geom.max_retard();
                (start, start + TIME_WINDOW_LIFETIMES / derive_scales(config).gamma_a)
            }
        };
        EmissionAxis::Time { values: linspace(lo, hi, points)? }
    } else {
        let t = time.unwrap_or(2.0 * obs_x / SPEED_OF_LIGHT);
        let (lo, hi) = match range {
            Some((lo, hi)) => (lo * ANGSTROM, hi * ANGSTROM),
            None => {
                let lo = figures::EMISSION_A_MIN_ANGSTROM * ANGSTROM;
                let hi = causal_lattice_limit(obs_x, t) * (1.0 - 1e-9);
                if hi <= lo {
                    return Err(Failure::Usage(format!(
                        "no causal lattice constants above {:e} Å at t = {t:e} s; pass --range",
                        figures::EMISSION_A_MIN_ANGSTROM
                    )));
                }
                (lo, hi)
            }
        };
        EmissionAxis::LatticeConst { values: logspace(lo, hi, points)?, t }
    };
    Ok(emission_sweep(&state, config, obs_x, &axis)?.to_table())
}

fn write_table(table: &SweepTable, out: Option<&Path>) -> Outcome<()> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(Failure::Io)?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w).map_err(Failure::Io)?;
            w.flush().map_err(Failure::Io)
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write_csv(&mut w).map_err(Failure::Io)?;
            w.flush().map_err(Failure::Io)
        }
    }
}
