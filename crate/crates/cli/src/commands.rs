//! Argument grammar and subcommand execution.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifsbound::render::{emit, Scene, CIRCUM_COLOR, GENERAL_COLOR};
use ifsbound::{
    address_points, auto_bound_with, chaos_game, circumcircle_bifractal, circumcircle_trifractal,
    general_bounding_ball, intersect_line, tighten, verify_containment, Ball, BoundReport,
    CenterStrategy, ChaosConfig, Error, Exec, Ifs2, IfsSystem, Line, NodeBudget, Point, Point2,
    Similitude, CONTAINMENT_TOL,
};

use crate::document::{parse_ifs, preset, IfsDocument, PRESETS};
use crate::error::CliError;
use crate::output::{to_line, BoundRecord, IntervalRecord, PointsRecord, VerifyRecord};

pub const BUDGET_ENV: &str = "IFSBOUND_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "ifsbound",
    version,
    about = "Certified bounding circles and spheres for IFS attractors",
    after_help = "Angles in IFS documents are in radians. --input also accepts the presets `cantor` and `sierpinski`."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a certified bounding ball
    #[command(allow_negative_numbers = true)]
    Bound(BoundArgs),
    /// Print the containment slack of a given ball; exit 1 if any is negative
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Shrink a bounding ball through Hutchinson levels
    #[command(allow_negative_numbers = true)]
    Tighten(TightenArgs),
    /// Intervals of a line that hold every attractor point on it
    #[command(allow_negative_numbers = true)]
    Intersect(IntersectArgs),
    /// Attractor points by address depth or by the chaos game
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Write an SVG of the attractor with its bounding circles
    #[command(allow_negative_numbers = true)]
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    General,
    Circum,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CenterArg {
    Optimal,
    Arithmetic,
    Harmonic,
    Best,
}

impl From<CenterArg> for CenterStrategy {
    fn from(c: CenterArg) -> Self {
        match c {
            CenterArg::Optimal => CenterStrategy::Optimal,
            CenterArg::Arithmetic => CenterStrategy::Arithmetic,
            CenterArg::Harmonic => CenterStrategy::Harmonic,
            CenterArg::Best => CenterStrategy::Best,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// IFS document (JSON) or preset name
    #[arg(long, value_name = "FILE")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Center of the general ball
    #[arg(long, value_enum, default_value = "best")]
    pub center: CenterArg,
}

/// An explicit ball; when absent, the `bound --method auto` ball is used.
#[derive(Debug, Args)]
pub struct BallArgs {
    #[arg(long, num_args = 2..=3, value_name = "X")]
    pub center: Option<Vec<f64>>,
    #[arg(long, value_name = "R")]
    pub radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[arg(long, num_args = 2..=3, value_name = "X", required = true)]
    pub center: Vec<f64>,
    #[arg(long, value_name = "R", required = true)]
    pub radius: f64,
}

#[derive(Debug, Args)]
pub struct TightenArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[command(flatten)]
    pub ball: BallArgs,
    #[arg(long, default_value_t = 6)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct IntersectArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Anchor then direction: `ax ay ux uy` (six numbers in 3D)
    #[arg(long, num_args = 4..=6, value_name = "V", required = true)]
    pub line: Vec<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[command(flatten)]
    pub ball: BallArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// All address points `T_w(p_j)` with `|w| = depth`
    #[arg(long, conflicts_with_all = ["count", "seed"])]
    pub depth: Option<usize>,
    /// Chaos-game point count
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[arg(long, default_value_t = 5000)]
    pub count: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Also draw this line and its intersection intervals: `ax ay ux uy`
    #[arg(long, num_args = 4, value_name = "V")]
    pub line: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 800)]
    pub height: u32,
    /// Output file; standard output when absent
    #[arg(long, value_name = "FILE")]
    pub out: Option<String>,
}

/// What a successful command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub diagnostics: Vec<String>,
    pub status: i32,
}

impl Outcome {
    fn data(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = node_budget()?;
    match &cli.command {
        Command::Bound(a) => bound(a),
        Command::Verify(a) => verify(a),
        Command::Tighten(a) => run_tighten(a, budget),
        Command::Intersect(a) => intersect(a, budget),
        Command::Sample(a) => sample(a, budget),
        Command::Render(a) => render(a, budget),
    }
}

fn node_budget() -> Result<NodeBudget, CliError> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(NodeBudget::default()),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&b| b > 0)
            .map(NodeBudget)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{BUDGET_ENV} must be a positive integer, got {v:?}"
                ))
            }),
    }
}

/// Reads a file, or falls back to a preset when no such file exists.
pub fn load(input: &str) -> Result<IfsDocument, CliError> {
    if !Path::new(input).exists() {
        if let Some(doc) = preset(input) {
            return Ok(doc);
        }
    }
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Read {
        path: if PRESETS.contains(&input) {
            input.into()
        } else {
            format!("{input} (presets: {})", PRESETS.join(", "))
        },
        source,
    })?;
    Ok(parse_ifs(&text)?)
}

fn point_arg<P: Point>(flag: &str, v: &[f64]) -> Result<P, CliError> {
    P::from_coords(v).filter(Point::is_finite).ok_or_else(|| {
        CliError::Usage(format!(
            "{flag} needs {} finite numbers for a {}D system, got {}",
            P::DIM,
            P::DIM,
            v.len()
        ))
    })
}

fn radius_arg(r: f64) -> Result<f64, CliError> {
    if r >= 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(CliError::Usage(format!(
            "--radius must be a finite nonnegative number, got {r}"
        )))
    }
}

fn explicit_ball<P: Point>(args: &BallArgs) -> Result<Option<Ball<P>>, CliError> {
    match (&args.center, args.radius) {
        (None, None) => Ok(None),
        (Some(c), Some(r)) => Ok(Some(Ball::new(point_arg("--center", c)?, radius_arg(r)?))),
        _ => Err(CliError::Usage(
            "--center and --radius must be given together".into(),
        )),
    }
}

fn line_arg<P: Point>(v: &[f64]) -> Result<Line<P>, CliError> {
    if v.len() != 2 * P::DIM {
        return Err(CliError::Usage(format!(
            "--line needs {} numbers (anchor then direction) for a {}D system, got {}",
            2 * P::DIM,
            P::DIM,
            v.len()
        )));
    }
    let anchor = point_arg("--line", &v[..P::DIM])?;
    let dir = point_arg("--line", &v[P::DIM..])?;
    Line::new(anchor, dir).map_err(|e| CliError::Usage(e.to_string()))
}

fn circumcircle(ifs: &Ifs2) -> Result<BoundReport<Point2>, Error> {
    match ifs.len() {
        2 => circumcircle_bifractal(ifs),
        3 => circumcircle_trifractal(ifs),
        n => Err(Error::InvalidArgument(format!(
            "circumcircles need 2 or 3 maps, got {n}"
        ))),
    }
}

fn bound_planar(
    ifs: &Ifs2,
    method: MethodArg,
    center: CenterArg,
) -> Result<BoundReport<Point2>, Error> {
    match method {
        MethodArg::General => Ok(general_bounding_ball(ifs, center.into())),
        MethodArg::Circum => circumcircle(ifs),
        MethodArg::Auto => Ok(auto_bound_with(ifs, center.into())),
    }
}

fn bound_spatial<S: Similitude>(
    ifs: &IfsSystem<S>,
    method: MethodArg,
    center: CenterArg,
) -> Result<BoundReport<S::Point>, Error> {
    let general = general_bounding_ball(ifs, center.into());
    match method {
        MethodArg::General => Ok(general),
        MethodArg::Circum => Err(Error::InvalidArgument(
            "circumcircles are defined for planar systems only".into(),
        )),
        MethodArg::Auto => Ok(general_with_note(general)),
    }
}

fn general_with_note<P: Point>(mut report: BoundReport<P>) -> BoundReport<P> {
    report
        .notes
        .push("circumcircles are planar only; used general".into());
    report
}

fn bound(a: &BoundArgs) -> Result<Outcome, CliError> {
    let record = match load(&a.input.input)? {
        IfsDocument::Planar(ifs) => BoundRecord::new(&bound_planar(&ifs, a.method, a.center)?),
        IfsDocument::Spatial(ifs) => BoundRecord::new(&bound_spatial(&ifs, a.method, a.center)?),
    };
    Ok(Outcome::data(to_line(&record)))
}

fn verify_with<S: Similitude>(ifs: &IfsSystem<S>, a: &VerifyArgs) -> Result<Outcome, CliError> {
    let ball = Ball::new(
        point_arg::<S::Point>("--center", &a.center)?,
        radius_arg(a.radius)?,
    );
    let slack = verify_containment(ifs, &ball);
    let tol = CONTAINMENT_TOL * (1.0 + ball.radius);
    let worst = slack.iter().copied().fold(f64::INFINITY, f64::min);
    let contained = worst >= -tol;
    let mut outcome = Outcome::data(to_line(&VerifyRecord::new(
        &ball.center,
        ball.radius,
        &slack,
        contained,
    )));
    if !contained {
        outcome.diagnostics.push(format!(
            "error: {}",
            Error::NotBounding { worst_slack: worst }
        ));
        outcome.status = 1;
    }
    Ok(outcome)
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    match load(&a.input.input)? {
        IfsDocument::Planar(ifs) => verify_with(&ifs, a),
        IfsDocument::Spatial(ifs) => verify_with(&ifs, a),
    }
}

fn run_tighten(a: &TightenArgs, budget: NodeBudget) -> Result<Outcome, CliError> {
    let record = match load(&a.input.input)? {
        IfsDocument::Planar(ifs) => {
            let start = match explicit_ball(&a.ball)? {
                Some(b) => b,
                None => auto_bound_with(&ifs, CenterStrategy::Best).ball,
            };
            BoundRecord::new(&tighten(&ifs, &start, a.levels, budget, Exec::default())?)
        }
        IfsDocument::Spatial(ifs) => {
            let start = match explicit_ball(&a.ball)? {
                Some(b) => b,
                None => general_bounding_ball(&ifs, CenterStrategy::Best).ball,
            };
            BoundRecord::new(&tighten(&ifs, &start, a.levels, budget, Exec::default())?)
        }
    };
    Ok(Outcome::data(to_line(&record)))
}

fn intersect_with<S: Similitude>(
    ifs: &IfsSystem<S>,
    a: &IntersectArgs,
    default: impl FnOnce() -> Ball<S::Point>,
    budget: NodeBudget,
) -> Result<Outcome, CliError> {
    let line = line_arg::<S::Point>(&a.line)?;
    let bound = explicit_ball(&a.ball)?.unwrap_or_else(default);
    let hits = intersect_line(ifs, &line, a.eps, &bound, budget, Exec::default())?;
    let mut outcome = Outcome::data(to_line(&IntervalRecord::from(&hits)));
    if hits.truncated {
        outcome.diagnostics.push(format!(
            "warning: node budget {} reached; intervals are at a coarser resolution than eps",
            budget.0
        ));
    }
    Ok(outcome)
}

fn intersect(a: &IntersectArgs, budget: NodeBudget) -> Result<Outcome, CliError> {
    match load(&a.input.input)? {
        IfsDocument::Planar(ifs) => intersect_with(
            &ifs,
            a,
            || auto_bound_with(&ifs, CenterStrategy::Best).ball,
            budget,
        ),
        IfsDocument::Spatial(ifs) => intersect_with(
            &ifs,
            a,
            || general_bounding_ball(&ifs, CenterStrategy::Best).ball,
            budget,
        ),
    }
}

fn sample_with<S: Similitude>(
    ifs: &IfsSystem<S>,
    a: &SampleArgs,
    budget: NodeBudget,
) -> Result<Outcome, CliError> {
    let points = match a.depth {
        Some(depth) => address_points(ifs, depth, budget, Exec::default())?,
        None => chaos_game(ifs, a.count, a.seed, ChaosConfig::default()),
    };
    Ok(Outcome::data(to_line(&PointsRecord::new(&points))))
}

fn sample(a: &SampleArgs, budget: NodeBudget) -> Result<Outcome, CliError> {
    match load(&a.input.input)? {
        IfsDocument::Planar(ifs) => sample_with(&ifs, a, budget),
        IfsDocument::Spatial(ifs) => sample_with(&ifs, a, budget),
    }
}

/// Color of the line and its intersection intervals.
const LINE_COLOR: &str = "gray";
const HIT_COLOR: &str = "green";
const POINT_COLOR: &str = "black";

/// Chaos-game points, the general ball (blue), the circumcircle when it
/// exists (red), and optionally a line with its intersection intervals
/// drawn as green circles on their diameters.
pub fn render_scene(ifs: &Ifs2, a: &RenderArgs, budget: NodeBudget) -> Result<Scene, CliError> {
    let mut scene = Scene::new(a.width, a.height)?;
    scene.points(
        chaos_game(ifs, a.count, a.seed, ChaosConfig::default()),
        POINT_COLOR,
    );
    let general = general_bounding_ball(ifs, CenterStrategy::Best);
    scene.circle(general.ball, GENERAL_COLOR);
    let circum = circumcircle(ifs).ok().filter(BoundReport::is_certified);
    if let Some(c) = &circum {
        scene.circle(c.ball, CIRCUM_COLOR);
    }
    if let Some(v) = &a.line {
        let line = line_arg::<Point2>(v)?;
        let bound = match &circum {
            Some(c) if c.ball.radius <= general.ball.radius => c.ball,
            _ => general.ball,
        };
        let hits = intersect_line(ifs, &line, a.eps, &bound, budget, Exec::default())?;
        scene.line(line, LINE_COLOR);
        for &(lo, hi) in &hits.intervals {
            scene.circle(
                Ball::new(line.at((lo + hi) / 2.0), (hi - lo) / 2.0),
                HIT_COLOR,
            );
        }
    }
    Ok(scene)
}

fn render(a: &RenderArgs, budget: NodeBudget) -> Result<Outcome, CliError> {
    let IfsDocument::Planar(ifs) = load(&a.input.input)? else {
        return Err(CliError::Usage(
            "render supports planar systems only".into(),
        ));
    };
    let svg = emit(&render_scene(&ifs, a, budget)?)?;
    match &a.out {
        None => Ok(Outcome::data(svg)),
        Some(path) => {
            std::fs::write(path, svg).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            Ok(Outcome::default())
        }
    }
}
