//! Job descriptions: a diagram plus arc colors (and optional seeds) in JSON,
//! and the staged pipeline that turns one into a volume report.

use crate::coloring::{
    check_separation, find_p, find_region_coloring, propagate_regions, verify_arc_coloring,
    ColoringError, ShadowColoring, CONSISTENCY_TOL, SEPARATION_TOL,
};
use crate::diagram::{parse_diagram, DiagramError, LinkDiagram};
use crate::quandle::Parabolic;
use crate::volume::{complex_volume, VolumeError, VolumeReport};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn default_tolerance() -> f64 {
    1e-9
}

/// Complex number as an [re, im] pair in JSON.
pub type C2 = [f64; 2];

/// A parabolic element as [[re α, im α], [re β, im β]].
pub type Pair2 = [C2; 2];

fn to_parabolic(v: &Pair2) -> Parabolic {
    Parabolic::new(
        Complex64::new(v[0][0], v[0][1]),
        Complex64::new(v[1][0], v[1][1]),
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobInput {
    /// Inline PD-code block; exactly one of `diagram`/`diagram_file`.
    #[serde(default)]
    pub diagram: Option<String>,
    /// Path to a PD-code file, relative to the job file's directory.
    #[serde(default)]
    pub diagram_file: Option<String>,
    /// (1-based arc id, [re α, im α], [re β, im β]) covering every arc.
    pub arc_colors: Vec<(usize, C2, C2)>,
    /// Optional (1-based region id, seed color); skips the random seed search.
    #[serde(default)]
    pub region_seed: Option<(usize, Pair2)>,
    /// Optional candidate p; validated before use.
    #[serde(default)]
    pub p: Option<Pair2>,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

/// Failure with the stage that produced it; stages map to CLI exit codes.
#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("parse: {0}")]
    Parse(#[from] DiagramError),
    #[error("parse: {0}")]
    Input(String),
    #[error("arc verification: {0}")]
    Arc(ColoringError),
    #[error("coloring search: {0}")]
    Coloring(ColoringError),
    #[error("pipeline check: {0}")]
    Pipeline(#[from] VolumeError),
}

impl JobError {
    /// parse = 2, arc verification = 3, coloring search = 4, pipeline = 5.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse(_) | JobError::Input(_) => 2,
            JobError::Arc(_) => 3,
            JobError::Coloring(_) => 4,
            JobError::Pipeline(_) => 5,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobReport {
    pub n_crossings: usize,
    pub n_regions: usize,
    pub n_arcs: usize,
    pub coloring: ShadowColoring,
    pub volume: VolumeReport,
}

/// Resolve the diagram text of a job (inline, or read from `diagram_file`
/// relative to `base_dir`).
pub fn job_diagram_text(
    job: &JobInput,
    base_dir: Option<&std::path::Path>,
) -> Result<String, JobError> {
    match (&job.diagram, &job.diagram_file) {
        (Some(d), None) => Ok(d.clone()),
        (None, Some(f)) => {
            let path = match base_dir {
                Some(dir) => dir.join(f),
                None => std::path::PathBuf::from(f),
            };
            std::fs::read_to_string(&path)
                .map_err(|e| JobError::Input(format!("cannot read {}: {e}", path.display())))
        }
        _ => Err(JobError::Input(
            "exactly one of `diagram` and `diagram_file` is required".into(),
        )),
    }
}

/// Turn the job's (id, α, β) list into a dense arc-color vector.
pub fn job_arc_colors(job: &JobInput, diagram: &LinkDiagram) -> Result<Vec<Parabolic>, JobError> {
    let n = diagram.arcs.len();
    let mut colors: Vec<Option<Parabolic>> = vec![None; n];
    for &(id, a, b) in &job.arc_colors {
        if id == 0 || id > n {
            return Err(JobError::Input(format!(
                "arc id {id} out of range 1..={n}"
            )));
        }
        if colors[id - 1].is_some() {
            return Err(JobError::Input(format!("arc id {id} listed twice")));
        }
        let c = to_parabolic(&[a, b]);
        if c.is_zero() {
            return Err(JobError::Input(format!("arc {id} color is zero")));
        }
        colors[id - 1] = Some(c);
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| JobError::Input(format!("arc {} has no color", k + 1))))
        .collect()
}

/// Build the shadow-coloring of a job: verify arcs, then either use the given
/// region seed (and require the separation condition) or search for one, then choose p.
pub fn job_coloring(
    job: &JobInput,
    diagram: &LinkDiagram,
    arcs: Vec<Parabolic>,
) -> Result<ShadowColoring, JobError> {
    verify_arc_coloring(diagram, &arcs, CONSISTENCY_TOL).map_err(JobError::Arc)?;
    let regions = match &job.region_seed {
        Some((id, color)) => {
            if *id == 0 || *id > diagram.n_regions() {
                return Err(JobError::Input(format!("region seed id {id} out of range")));
            }
            let regions = propagate_regions(diagram, &arcs, id - 1, to_parabolic(color))
                .map_err(JobError::Coloring)?;
            if let Some(v) = check_separation(diagram, &arcs, &regions, SEPARATION_TOL).first() {
                return Err(JobError::Coloring(ColoringError::Separation {
                    edge: v.edge,
                    pair: v.pair.clone(),
                }));
            }
            regions
        }
        None => find_region_coloring(diagram, &arcs, job.rng_seed).map_err(JobError::Coloring)?,
    };
    let p = find_p(
        &arcs,
        &regions,
        job.rng_seed,
        job.p.as_ref().map(to_parabolic),
    )
    .map_err(JobError::Coloring)?;
    Ok(ShadowColoring { arcs, regions, p })
}

/// Run a parsed job end to end.
pub fn run_job(job: &JobInput, base_dir: Option<&std::path::Path>) -> Result<JobReport, JobError> {
    let text = job_diagram_text(job, base_dir)?;
    let diagram = parse_diagram(&text)?;
    let arcs = job_arc_colors(job, &diagram)?;
    let coloring = job_coloring(job, &diagram, arcs)?;
    let volume = complex_volume(&diagram, &coloring, job.tolerance)?;
    Ok(JobReport {
        n_crossings: diagram.n_crossings(),
        n_regions: diagram.n_regions(),
        n_arcs: diagram.arcs.len(),
        coloring,
        volume,
    })
}

/// The bundled figure-eight job, as shipped in `jobs/fig8.json`.
pub fn fig8_job() -> JobInput {
    let t = crate::golden::omega_minus();
    JobInput {
        diagram: Some(crate::golden::FIG8_PD.to_string()),
        diagram_file: None,
        arc_colors: crate::golden::fig8_arc_colors(t)
            .iter()
            .enumerate()
            .map(|(k, a)| {
                (
                    k + 1,
                    [a.alpha.re, a.alpha.im],
                    [a.beta.re, a.beta.im],
                )
            })
            .collect(),
        region_seed: Some((1, [[1.0, 0.0], [1.0, 0.0]])),
        p: Some([[2.0, 0.0], [1.0, 0.0]]),
        rng_seed: 0,
        tolerance: 1e-9,
    }
}

/// The bundled trefoil job, as shipped in `jobs/trefoil.json`.
pub fn trefoil_job() -> JobInput {
    JobInput {
        diagram: Some(crate::golden::TREFOIL_PD.to_string()),
        diagram_file: None,
        arc_colors: crate::golden::trefoil_arc_colors()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                (
                    k + 1,
                    [a.alpha.re, a.alpha.im],
                    [a.beta.re, a.beta.im],
                )
            })
            .collect(),
        region_seed: Some((1, [[-1.0, 0.0], [2.0, 0.0]])),
        p: Some([[2.0, 0.0], [1.0, 0.0]]),
        rng_seed: 0,
        tolerance: 1e-9,
    }
}
