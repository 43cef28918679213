//! Diagram to record: parse, encircle twist regions, flatten, classify.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ald::classify::{classify_detailed, ClassifyError};
use crate::ald::FlatAugmentedLink;
use crate::augment::{augment, find_twist_regions, flatten, AugmentError, FillingInstruction, TwistRegion};
use crate::diagram::{colored_faces, parse_pd, surface_stats, trace_faces, DiagramError, PlanarDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("no face with id {0}")]
    NoSuchFace(usize),
}

impl PipelineError {
    /// Module-qualified error code.
    pub fn code(&self) -> String {
        match self {
            PipelineError::Diagram(e) => format!("diagram-core.{}", variant(e)),
            PipelineError::Augment(AugmentError::Diagram(e)) => format!("diagram-core.{}", variant(e)),
            PipelineError::Augment(e) => format!("augment-pipeline.{}", variant(e)),
            PipelineError::Classify(ClassifyError::Diagram(e)) => format!("diagram-core.{}", variant(e)),
            PipelineError::Classify(e) => format!("augmented-model.{}", variant(e)),
            PipelineError::NoSuchFace(_) => "diagram-core.NoSuchFace".into(),
        }
    }
}

/// Name of an enum variant from its debug form.
pub fn variant(e: &impl std::fmt::Debug) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSummary {
    pub crossings: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    pub circles: usize,
}

impl DiagramSummary {
    pub fn of(d: &PlanarDiagram) -> Self {
        DiagramSummary {
            crossings: d.crossing_count(),
            edges: d.edge_count(),
            faces: trace_faces(d).len(),
            components: d.component_count(),
            circles: d.circle_components().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOutput {
    pub input: DiagramSummary,
    pub twist_regions: Vec<TwistRegion>,
    pub augmented: Option<String>,
    pub flat: String,
    pub flat_summary: DiagramSummary,
    pub instructions: Vec<FillingInstruction>,
    /// Euler characteristic of the flat diagram's black surface, from faces.
    pub chi: i64,
    pub ald: FlatAugmentedLink,
}

/// Re-roots the diagram at the face with the given id (in tracing order).
pub fn with_unbounded_face(d: &PlanarDiagram, face: usize) -> Result<PlanarDiagram, PipelineError> {
    let faces = trace_faces(d);
    let f = faces.get(face).ok_or(PipelineError::NoSuchFace(face))?;
    let dart = *f.boundary.first().ok_or(PipelineError::NoSuchFace(face))?;
    Ok(d.with_unbounded(dart)?)
}

/// Runs the diagram stages. A diagram without crossing circles has all of
/// its twist regions encircled first.
pub fn run_pd(text: &str, unbounded_face: Option<usize>) -> Result<PipelineOutput, PipelineError> {
    let mut d = parse_pd(text)?;
    if let Some(f) = unbounded_face {
        d = with_unbounded_face(&d, f)?;
    }
    let input = DiagramSummary::of(&d);
    let (twist_regions, augmented) = if d.circle_components().is_empty() {
        let regions = find_twist_regions(&d);
        let aug = augment(&d, &regions)?;
        (regions, Some(aug))
    } else {
        (vec![], None)
    };
    let source = augmented.as_ref().unwrap_or(&d);
    let (flat, instructions) = flatten(source)?;
    let c = classify_detailed(&flat)?;
    let chi = surface_stats(&flat, &colored_faces(&flat)?).chi;
    Ok(PipelineOutput {
        input,
        twist_regions,
        augmented: augmented.map(|a| a.to_string()),
        flat_summary: DiagramSummary::of(&flat),
        flat: flat.to_string(),
        instructions,
        chi,
        ald: c.ald,
    })
}
