use serde::{Deserialize, Serialize};

use super::{Color, PartialColoring};
use crate::error::Result;
use crate::graph::Vertex;

/// One recoloring operation. `Shift` lists the run explicitly, in fan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum ScriptStep {
    SwapChainAt { vertex: Vertex, a: Color, b: Color },
    SwapSubchain { x: Vertex, y: Vertex, a: Color, b: Color },
    Shift { center: Vertex, run: Vec<Vertex> },
    SetEdge { u: Vertex, v: Vertex, color: Option<Color> },
    MultiSwap { vertex: Vertex, colors: Vec<Color> },
}

impl ScriptStep {
    pub(crate) fn apply(&self, c: &mut PartialColoring) -> Result<()> {
        match self {
            ScriptStep::SwapChainAt { vertex, a, b } => c.swap_at(*vertex, *a, *b),
            ScriptStep::SwapSubchain { x, y, a, b } => c.swap_subchain(*x, *y, *a, *b),
            ScriptStep::Shift { center, run } => c.shift(*center, run),
            ScriptStep::SetEdge { u, v, color } => c.set_color_between(*u, *v, *color),
            ScriptStep::MultiSwap { vertex, colors } => c.multi_swap(*vertex, colors),
        }
    }
}

/// Ordered recoloring steps, executed all-or-nothing by
/// [`PartialColoring::apply_script`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolorScript {
    pub steps: Vec<ScriptStep>,
}

impl RecolorScript {
    pub fn new(steps: Vec<ScriptStep>) -> Self {
        RecolorScript { steps }
    }

    pub fn push(&mut self, step: ScriptStep) -> &mut Self {
        self.steps.push(step);
        self
    }
}
