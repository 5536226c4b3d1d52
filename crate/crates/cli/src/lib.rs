//! Command implementations behind the `germlab` binary: problem files in,
//! report files out, with exit codes 0 (ok), 1 (bad input), 2 (degenerate
//! germ) and 3 (randomized checks kept disagreeing).

pub mod problem;
pub mod report;
pub mod text;

use std::time::Instant;

use thiserror::Error;

use germlab_core::family::{family_profile, sampling_adequacy, specialize_family, FamilyProblem};
use germlab_core::invariants::{analyze, ErrorKind, GermProblem, InvariantError, DEFAULT_SEED, DEFAULT_TRIALS};
use germlab_core::weighted::{self, WeightedError};

use problem::ProblemFile;
use report::{AnalysisRecord, ErrorRecord, FamilyRecord, ReportFile, Status, WeightedRecord, REPORT_SCHEMA};

pub const SEED_ENV: &str = "GERMLAB_SEED";

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{message}")]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { status: Status::InputError, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

fn status_of(kind: ErrorKind) -> Status {
    match kind {
        ErrorKind::Input => Status::InputError,
        ErrorKind::Degenerate => Status::Degenerate,
        ErrorKind::Genericity => Status::GenericityFailure,
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        CliError { status: status_of(e.kind()), message: e.to_string() }
    }
}

impl From<WeightedError> for CliError {
    fn from(e: WeightedError) -> Self {
        CliError { status: status_of(e.kind()), message: e.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Wh,
    Family,
    Zariski,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Wh => "wh",
            Command::Family => "family",
            Command::Zariski => "zariski",
        }
    }
}

/// Command-line overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub seed: Option<u64>,
    pub trials: Option<u32>,
    pub t: Option<Vec<String>>,
    /// Value of the seed environment variable, if set.
    pub env_seed: Option<String>,
}

/// Seed precedence: flag, problem file, environment, built-in default.
pub fn resolve_seed(flags: &Flags, file: Option<&ProblemFile>) -> Result<u64, CliError> {
    if let Some(s) = flags.seed {
        return Ok(s);
    }
    if let Some(s) = file.and_then(|f| f.seed.as_ref()) {
        return s.to_u64("seed");
    }
    if let Some(s) = &flags.env_seed {
        return s.trim().parse().map_err(|_| CliError::input(format!("{SEED_ENV}={s} is not a 64-bit seed")));
    }
    Ok(DEFAULT_SEED)
}

pub fn resolve_trials(flags: &Flags, file: Option<&ProblemFile>) -> Result<u32, CliError> {
    let trials = match (flags.trials, file.and_then(|f| f.trials.as_ref())) {
        (Some(t), _) => t,
        (None, Some(t)) => u32::try_from(t.to_u64("trials")?).map_err(|_| CliError::input("trials is too large"))?,
        (None, None) => DEFAULT_TRIALS,
    };
    if trials == 0 {
        return Err(CliError::input("trials must be positive"));
    }
    Ok(trials)
}

fn empty_report(command: Command, input: Option<ProblemFile>, seed: u64, trials: u32) -> ReportFile {
    ReportFile {
        schema: REPORT_SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.name().into(),
        input,
        seed: seed.to_string(),
        trials: trials.to_string(),
        status: Status::Ok,
        analysis: None,
        weighted: None,
        family: None,
        identity_checks: None,
        error: None,
        warnings: Vec::new(),
        wall_time_seconds: String::new(),
    }
}

fn fail(report: &mut ReportFile, e: CliError) {
    report.status = e.status;
    report.error = Some(ErrorRecord { message: e.message });
}

/// Runs `command` on the problem text. Always returns a report; its status
/// carries the exit code.
pub fn run(command: Command, problem_text: &str, flags: &Flags) -> ReportFile {
    let start = Instant::now();
    let file = ProblemFile::from_json(problem_text);
    let seed = resolve_seed(flags, file.as_ref().ok());
    let trials = resolve_trials(flags, file.as_ref().ok());
    let mut report = empty_report(
        command,
        file.as_ref().ok().cloned(),
        *seed.as_ref().unwrap_or(&DEFAULT_SEED),
        *trials.as_ref().unwrap_or(&DEFAULT_TRIALS),
    );
    let outcome = file.and_then(|file| {
        let (seed, trials) = (seed?, trials?);
        match command {
            Command::Analyze => cmd_analyze(&file, seed, trials, &mut report),
            Command::Wh => cmd_wh(&file, seed, trials, &mut report),
            Command::Family => cmd_family(&file, flags, seed, trials, false, &mut report),
            Command::Zariski => cmd_family(&file, flags, seed, trials, true, &mut report),
        }
    });
    if let Err(e) = outcome {
        fail(&mut report, e);
    }
    report.wall_time_seconds = format!("{:.3}", start.elapsed().as_secs_f64());
    report
}

fn germ_problem(file: &ProblemFile) -> Result<GermProblem, CliError> {
    if file.parameter.is_some() {
        return Err(CliError::input("the problem declares a parameter; use the family command"));
    }
    let Some(f) = file.components()? else {
        return Err(CliError::input("f = \"generic\" is only meaningful for families"));
    };
    let p = GermProblem::parse(&file.vars(), &file.phi_strs(), f)?;
    match file.weight_data()? {
        Some((w, pd, fd)) => {
            let w = w
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| CliError::input(format!("weight {x} is too large"))))
                .collect::<Result<Vec<u32>, _>>()?;
            Ok(p.with_weights(w, pd, fd)?)
        }
        None => Ok(p),
    }
}

fn cmd_analyze(file: &ProblemFile, seed: u64, trials: u32, report: &mut ReportFile) -> Result<(), CliError> {
    let p = germ_problem(file)?;
    let r = analyze(&p, seed, trials)?;
    report.analysis = Some((&r).into());
    report.identity_checks = r.identity_checks.map(Into::into);
    if r.identity_checks.is_some_and(|c| !c.all()) {
        report.warnings.push("an exact identity failed; the computed invariants are inconsistent".into());
    }
    Ok(())
}

fn cmd_wh(file: &ProblemFile, seed: u64, trials: u32, report: &mut ReportFile) -> Result<(), CliError> {
    let Some((w, pd, fd)) = file.weight_data()? else {
        return Err(CliError::input("the wh command needs weights, phi_degrees and f_degrees"));
    };
    let sig = weighted::wh_signature(&w, fd, &pd)?;
    let inv = weighted::wh_invariants(&sig)?;
    report.identity_checks = Some((&inv).into());
    let cv = if file.variables.is_empty() {
        None
    } else {
        let p = germ_problem(file)?;
        Some(weighted::wh_cross_validate(&p, seed, trials)?)
    };
    if let Some(cv) = &cv {
        report.analysis = Some(AnalysisRecord::from(&cv.engine));
    }
    report.weighted = Some(WeightedRecord::new(&sig, &inv, cv.as_ref()));
    Ok(())
}

fn cmd_family(file: &ProblemFile, flags: &Flags, seed: u64, trials: u32, zariski: bool, report: &mut ReportFile) -> Result<(), CliError> {
    let Some(parameter) = &file.parameter else {
        return Err(CliError::input("a family needs a `parameter`"));
    };
    let f = file.components()?;
    if zariski && f.is_some() {
        return Err(CliError::input("the zariski command needs f = \"generic\""));
    }
    let samples = file.samples(flags.t.as_deref())?;
    let family = FamilyProblem::parse(&file.vars(), parameter, &file.phi_strs(), f, samples.clone())?;
    let projection = match f {
        None => {
            let t0 = samples.iter().find(|t| num_traits::Zero::is_zero(*t)).expect("validated");
            Some(specialize_family(&family, t0, seed)?.f().iter().map(ToString::to_string).collect())
        }
        Some(_) => None,
    };
    let profile = family_profile(&family, seed, trials);
    report.warnings = sampling_adequacy(&family, &profile);
    report.family = Some(FamilyRecord::new(parameter, &samples, projection, &profile));
    if let Some((t, e)) = profile.failures.first() {
        let mut err = CliError::from(e.clone());
        err.message = format!("sample t={t}: {}", err.message);
        return Err(err);
    }
    Ok(())
}

/// The report as pretty JSON, newline-terminated.
pub fn to_json(report: &ReportFile) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
