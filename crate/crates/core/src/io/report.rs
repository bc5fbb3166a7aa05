//! Reports: command dispatch and the serialized result documents.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::problem::{format_field, Mode, Problem, QuiverProblem};
use super::IoError;
use crate::exact::quadratic::discriminant;
use crate::exact::{format_rational, IsolatedRoot, Polynomial, Rational};
use crate::quiver::{
    falsify_over_rationals, semistability_check, theta_from_sigma, theta_pairing, truncate_rep, DimensionVector, FieldKind,
    QuiverVerdict, Representation, ThetaVector,
};
use crate::segment::{
    chamber_decomposition, grid_oracle, schedule_from_report, uniformity_check, ChamberReport, OffenseKind, PointReport,
    StabilitySegment, Wall,
};
use crate::sheaf::{comparisons, stability_verdict, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Walls,
    Chambers,
    Flips,
    Uniform,
    QuiverTheta,
    QuiverCheck,
    QuiverProject,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Check,
        Command::Walls,
        Command::Chambers,
        Command::Flips,
        Command::Uniform,
        Command::QuiverTheta,
        Command::QuiverCheck,
        Command::QuiverProject,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Walls => "walls",
            Command::Chambers => "chambers",
            Command::Flips => "flips",
            Command::Uniform => "uniform",
            Command::QuiverTheta => "quiver-theta",
            Command::QuiverCheck => "quiver-check",
            Command::QuiverProject => "quiver-project",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }

    fn required_mode(self) -> &'static str {
        match self {
            Command::Check => "sigma",
            Command::Walls | Command::Chambers | Command::Flips | Command::Uniform => "segment",
            _ => "quiver",
        }
    }
}

/// Knobs supplied on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub grid_oracle: Option<u64>,
    pub max_dim: usize,
    pub field: Option<FieldKind>,
    pub falsifier_trials: u64,
    pub falsifier_seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            grid_oracle: None,
            max_dim: crate::quiver::DEFAULT_DIMENSION_CAP,
            field: None,
            falsifier_trials: 1000,
            falsifier_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub result: ReportResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_oracle: Option<GridOracleDoc>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// SHA-256 of the input bytes, lowercase hex.
    pub input_digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportResult {
    Check(CheckResult),
    Walls(WallsResult),
    Chambers(ChambersResult),
    Flips(FlipsResult),
    Uniform(UniformResult),
    QuiverTheta(QuiverThetaResult),
    QuiverCheck(QuiverCheckResult),
    QuiverProject(QuiverProjectResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub status: String,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonDoc {
    pub candidate: String,
    /// `"less"`, `"equal"` or `"greater"`: `p_F` against `p_E`.
    pub ordering: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub sigma: Vec<String>,
    pub verdict: VerdictDoc,
    pub comparisons: Vec<ComparisonDoc>,
}

/// A parameter value `t`. Irrational values are recorded by their minimal
/// polynomial (ascending coefficients in `t`), an isolating interval and the
/// discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PointDoc {
    Rational { value: String },
    Irrational { poly: Vec<String>, interval: [String; 2], discriminant: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriggerDoc {
    pub candidate: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallDoc {
    pub location: PointDoc,
    pub endpoint: bool,
    pub triggering: Vec<TriggerDoc>,
    pub verdict: Option<VerdictDoc>,
    pub comparisons: Option<Vec<ComparisonDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallsResult {
    pub walls: Vec<WallDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberDoc {
    pub lower_wall: Option<usize>,
    pub upper_wall: Option<usize>,
    pub sample: String,
    pub verdict: VerdictDoc,
    pub comparisons: Vec<ComparisonDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExceptionalDoc {
    pub chamber: usize,
    pub location: PointDoc,
    pub verdict: Option<VerdictDoc>,
    pub comparisons: Option<Vec<ComparisonDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChambersResult {
    pub walls: Vec<WallDoc>,
    pub chambers: Vec<ChamberDoc>,
    pub exceptional: Vec<ExceptionalDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateFlipDoc {
    pub candidate: String,
    pub before: Option<String>,
    pub at: Option<String>,
    pub after: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipDoc {
    pub wall: WallDoc,
    pub before: Option<VerdictDoc>,
    pub at: Option<VerdictDoc>,
    pub after: Option<VerdictDoc>,
    pub flipped: Vec<CandidateFlipDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipsResult {
    pub flips: Vec<FlipDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientTableDoc {
    pub sheaf: String,
    /// `coefficients[i]` is the coefficient of `k^i`, ascending in `t`.
    pub coefficients: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffenseDoc {
    pub sheaf: String,
    pub index: usize,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformResult {
    pub uniform: bool,
    /// Classes the check was run on; nothing is claimed beyond them.
    pub family: Vec<String>,
    pub tables: Vec<CoefficientTableDoc>,
    pub offending: Vec<OffenseDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverThetaResult {
    pub sigma: Vec<String>,
    pub dims: Vec<u64>,
    pub theta: Vec<String>,
    pub pairing: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverVerdictDoc {
    /// `"semistable"`, `"unstable"`, or `"no-witness-found"` for the
    /// randomized search over the rationals.
    pub status: String,
    pub exact: bool,
    pub witness: Option<Vec<u64>>,
    pub theta_value: Option<String>,
    pub zero_theta_witness: Option<Vec<u64>>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedQuiverVerdict {
    pub name: String,
    pub verdict: QuiverVerdictDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverCheckResult {
    pub field: String,
    pub dims: Vec<u64>,
    pub theta: Vec<String>,
    pub representations: Vec<NamedQuiverVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectedRepresentation {
    pub name: String,
    pub full: QuiverVerdictDoc,
    pub truncated: QuiverVerdictDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverProjectResult {
    pub field: String,
    pub j_prime: usize,
    /// `σ_j = 0` for every `j > j′`.
    pub trailing_zero: bool,
    pub sigma_prime: Vec<String>,
    pub dims_prime: Vec<u64>,
    pub theta_prime: Vec<String>,
    pub representations: Vec<ProjectedRepresentation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOracleDoc {
    pub n: u64,
    pub checked: u64,
    pub on_walls: u64,
    pub agrees: bool,
    pub disagreements: Vec<String>,
}

pub(crate) fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_strings(p: &Polynomial) -> Vec<String> {
    strings(p.coeffs())
}

fn verdict_doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc { status: v.tag().to_string(), witnesses: v.witnesses().to_vec() }
}

fn comparison_docs(o: &[(String, Ordering)]) -> Vec<ComparisonDoc> {
    o.iter().map(|(c, ord)| ComparisonDoc { candidate: c.clone(), ordering: ordering_name(*ord).to_string() }).collect()
}

pub(crate) fn point_doc(root: &IsolatedRoot) -> PointDoc {
    match &root.exact {
        Some(r) => PointDoc::Rational { value: format_rational(r) },
        None => PointDoc::Irrational {
            poly: poly_strings(&root.poly),
            interval: [format_rational(&root.lo), format_rational(&root.hi)],
            discriminant: discriminant(&root.poly).map(|d| format_rational(&d)),
        },
    }
}

fn wall_doc(w: &Wall, at: &PointReport) -> WallDoc {
    WallDoc {
        location: point_doc(&w.location),
        endpoint: w.endpoint,
        triggering: w.triggering.iter().map(|t| TriggerDoc { candidate: t.candidate.clone(), index: t.index }).collect(),
        verdict: at.verdict.as_ref().map(verdict_doc),
        comparisons: at.orderings.as_deref().map(comparison_docs),
    }
}

fn wall_docs(report: &ChamberReport) -> Vec<WallDoc> {
    report.walls.iter().zip(&report.at_walls).map(|(w, a)| wall_doc(w, a)).collect()
}

fn chambers_result(report: &ChamberReport) -> ChambersResult {
    ChambersResult {
        walls: wall_docs(report),
        chambers: report
            .chambers
            .iter()
            .map(|c| ChamberDoc {
                lower_wall: c.lower,
                upper_wall: c.upper,
                sample: format_rational(&c.sample),
                verdict: verdict_doc(&c.verdict),
                comparisons: comparison_docs(&c.orderings),
            })
            .collect(),
        exceptional: report
            .exceptional
            .iter()
            .map(|x| ExceptionalDoc {
                chamber: x.chamber,
                location: point_doc(&x.point.location),
                verdict: x.point.verdict.as_ref().map(verdict_doc),
                comparisons: x.point.orderings.as_deref().map(comparison_docs),
            })
            .collect(),
    }
}

fn flips_result(report: &ChamberReport) -> FlipsResult {
    let schedule = schedule_from_report(report);
    FlipsResult {
        flips: schedule
            .flips
            .iter()
            .zip(&report.at_walls)
            .map(|(f, at)| FlipDoc {
                wall: wall_doc(&f.wall, at),
                before: f.before.as_ref().map(verdict_doc),
                at: f.at.as_ref().map(verdict_doc),
                after: f.after.as_ref().map(verdict_doc),
                flipped: f
                    .flipped
                    .iter()
                    .map(|c| CandidateFlipDoc {
                        candidate: c.candidate.clone(),
                        before: c.before.map(|o| ordering_name(o).to_string()),
                        at: c.at.map(|o| ordering_name(o).to_string()),
                        after: c.after.map(|o| ordering_name(o).to_string()),
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn offense_name(k: OffenseKind) -> &'static str {
    match k {
        OffenseKind::LeadingNotNormalized => "leading-not-normalized",
        OffenseKind::DependsOnT => "depends-on-t",
        OffenseKind::NonlinearConstant => "nonlinear-constant",
        OffenseKind::ExceedsDimension => "exceeds-dimension",
    }
}

fn quiver_verdict_doc(v: &QuiverVerdict) -> QuiverVerdictDoc {
    match v {
        QuiverVerdict::Semistable { zero_theta_witness } => QuiverVerdictDoc {
            status: "semistable".into(),
            exact: true,
            witness: None,
            theta_value: None,
            zero_theta_witness: zero_theta_witness.as_ref().map(|w| w.entries().to_vec()),
            note: None,
        },
        QuiverVerdict::Unstable { witness, value } => QuiverVerdictDoc {
            status: "unstable".into(),
            exact: true,
            witness: Some(witness.entries().to_vec()),
            theta_value: Some(format_rational(value)),
            zero_theta_witness: None,
            note: None,
        },
    }
}

fn segment_of(problem: &Problem, cmd: Command) -> Result<&StabilitySegment, IoError> {
    match &problem.mode {
        Mode::Segment(s) => Ok(s),
        other => Err(IoError::ModeMismatch { command: cmd.name(), needed: cmd.required_mode(), found: other.name() }),
    }
}

fn quiver_of(problem: &Problem, cmd: Command) -> Result<&QuiverProblem, IoError> {
    match &problem.mode {
        Mode::Quiver(q) => Ok(q),
        other => Err(IoError::ModeMismatch { command: cmd.name(), needed: cmd.required_mode(), found: other.name() }),
    }
}

fn with_field(rep: &Representation, field: Option<FieldKind>) -> Result<Representation, IoError> {
    match field {
        None => Ok(rep.clone()),
        Some(f) if f == rep.field() => Ok(rep.clone()),
        Some(f) => Representation::new(rep.quiver().clone(), rep.dims().clone(), f, rep.maps().to_vec()).map_err(IoError::from),
    }
}

fn decide(rep: &Representation, theta: &ThetaVector, opts: &RunOptions) -> Result<QuiverVerdictDoc, IoError> {
    match rep.field() {
        FieldKind::FiniteField(_) => Ok(quiver_verdict_doc(&semistability_check(rep, theta, opts.max_dim)?)),
        FieldKind::Rationals => {
            let report = falsify_over_rationals(rep, theta, opts.falsifier_trials, opts.falsifier_seed)?;
            Ok(match report.witness {
                Some((w, value)) => QuiverVerdictDoc {
                    status: "unstable".into(),
                    exact: false,
                    witness: Some(w.entries().to_vec()),
                    theta_value: Some(format_rational(&value)),
                    zero_theta_witness: None,
                    note: Some(report.note.to_string()),
                },
                None => QuiverVerdictDoc {
                    status: "no-witness-found".into(),
                    exact: false,
                    witness: None,
                    theta_value: None,
                    zero_theta_witness: None,
                    note: Some(format!("{} ({} trials)", report.note, report.trials)),
                },
            })
        }
    }
}

fn theta_strings(theta: &ThetaVector) -> Vec<String> {
    strings(theta.entries())
}

fn dims_vec(d: &DimensionVector) -> Vec<u64> {
    d.entries().to_vec()
}

/// SHA-256 of `input`, lowercase hex.
pub fn input_digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

/// Runs `cmd` on a validated problem. `input` is the original document and
/// only feeds the digest.
pub fn run_command(cmd: Command, problem: &Problem, input: &[u8], opts: &RunOptions) -> Result<Report, IoError> {
    let e = &problem.target;
    let cands = &problem.candidates;
    let mut grid = None;
    if opts.grid_oracle.is_some() && !matches!(cmd, Command::Walls | Command::Chambers | Command::Flips) {
        return Err(IoError::ModeMismatch { command: "--grid-oracle", needed: "walls, chambers or flips", found: cmd.name() });
    }
    let result = match cmd {
        Command::Check => {
            let sigma = match &problem.mode {
                Mode::Sigma(s) => s,
                other => return Err(IoError::ModeMismatch { command: cmd.name(), needed: "sigma", found: other.name() }),
            };
            let verdict = stability_verdict(e, cands, sigma)?;
            let ords = comparisons(e, cands, sigma)?;
            ReportResult::Check(CheckResult {
                sigma: strings(sigma.entries()),
                verdict: verdict_doc(&verdict),
                comparisons: comparison_docs(&ords),
            })
        }
        Command::Walls | Command::Chambers | Command::Flips => {
            let seg = segment_of(problem, cmd)?;
            let report = chamber_decomposition(e, cands, seg)?;
            if let Some(n) = opts.grid_oracle {
                let g = grid_oracle(e, cands, seg, &report, n)?;
                grid = Some(GridOracleDoc {
                    n: g.n,
                    checked: g.checked,
                    on_walls: g.on_walls,
                    agrees: g.agrees(),
                    disagreements: strings(&g.disagreements),
                });
            }
            match cmd {
                Command::Walls => ReportResult::Walls(WallsResult { walls: wall_docs(&report) }),
                Command::Chambers => ReportResult::Chambers(chambers_result(&report)),
                _ => ReportResult::Flips(flips_result(&report)),
            }
        }
        Command::Uniform => {
            let seg = segment_of(problem, cmd)?;
            let family: Vec<_> = std::iter::once(e.clone()).chain(cands.iter().cloned()).collect();
            let u = uniformity_check(&family, seg)?;
            ReportResult::Uniform(UniformResult {
                uniform: u.uniform,
                family: family.iter().map(|c| c.name().to_string()).collect(),
                tables: u
                    .tables
                    .iter()
                    .map(|t| CoefficientTableDoc { sheaf: t.sheaf.clone(), coefficients: t.coeffs.iter().map(poly_strings).collect() })
                    .collect(),
                offending: u
                    .offending
                    .iter()
                    .map(|o| OffenseDoc { sheaf: o.sheaf.clone(), index: o.index, kind: offense_name(o.kind).to_string() })
                    .collect(),
            })
        }
        Command::QuiverTheta => {
            let q = quiver_of(problem, cmd)?;
            let theta = theta_from_sigma(&q.sigma, &q.dims)?;
            ReportResult::QuiverTheta(QuiverThetaResult {
                sigma: strings(q.sigma.entries()),
                dims: dims_vec(&q.dims),
                theta: theta_strings(&theta),
                pairing: format_rational(&theta_pairing(&theta, &(&q.dims).into())),
            })
        }
        Command::QuiverCheck => {
            let q = quiver_of(problem, cmd)?;
            let theta = theta_from_sigma(&q.sigma, &q.dims)?;
            let field = opts.field.unwrap_or(q.field);
            let mut reps = Vec::with_capacity(q.representations.len());
            for (name, rep) in &q.representations {
                let rep = with_field(rep, Some(field))?;
                reps.push(NamedQuiverVerdict { name: name.clone(), verdict: decide(&rep, &theta, opts)? });
            }
            ReportResult::QuiverCheck(QuiverCheckResult {
                field: format_field(field),
                dims: dims_vec(&q.dims),
                theta: theta_strings(&theta),
                representations: reps,
            })
        }
        Command::QuiverProject => {
            let q = quiver_of(problem, cmd)?;
            let j0 = q.quiver.j0();
            let j_prime = q.j_prime.unwrap_or(j0.saturating_sub(1).max(1));
            let theta = theta_from_sigma(&q.sigma, &q.dims)?;
            let sigma_prime = q.sigma.truncated(j_prime)?;
            let dims_prime = DimensionVector::new(q.dims.entries()[..2 * j_prime].to_vec())?;
            let theta_prime = theta_from_sigma(&sigma_prime, &dims_prime)?;
            let field = opts.field.unwrap_or(q.field);
            let mut reps = Vec::with_capacity(q.representations.len());
            for (name, rep) in &q.representations {
                let rep = with_field(rep, Some(field))?;
                let truncated = truncate_rep(&rep, j_prime)?;
                reps.push(ProjectedRepresentation {
                    name: name.clone(),
                    full: decide(&rep, &theta, opts)?,
                    truncated: decide(&truncated, &theta_prime, opts)?,
                });
            }
            ReportResult::QuiverProject(QuiverProjectResult {
                field: format_field(field),
                j_prime,
                trailing_zero: q.sigma.entries()[j_prime..].iter().all(num_traits::Zero::is_zero),
                sigma_prime: strings(sigma_prime.entries()),
                dims_prime: dims_vec(&dims_prime),
                theta_prime: theta_strings(&theta_prime),
                representations: reps,
            })
        }
    };
    Ok(Report {
        command: cmd.name().to_string(),
        result,
        grid_oracle: grid,
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: input_digest(input),
        },
    })
}
