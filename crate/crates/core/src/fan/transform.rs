use crate::coloring::{Color, PartialColoring, RecolorScript, ScriptStep};
use crate::error::{Error, Result};
use crate::graph::Vertex;

use super::multifan::TypicalMultifan;
use super::pseudo::PseudoMultifan;

/// Shift from `run[0]` to `run[last]`: each `r s_ℓ` takes the color missing
/// at `s_ℓ`, all at once.
pub fn shift(c: &mut PartialColoring, r: Vertex, run: &[Vertex]) -> Result<()> {
    c.shift(r, run)
}

/// The three steps turning the typical fan into a 2-inducing one: uncolor
/// `r s_β`, shift from `s_{α+1}` to `s_{β−1}`, color `r s_1` with `Δ`.
pub fn two_inducing_script(f: &TypicalMultifan, delta: Color) -> RecolorScript {
    let r = f.r();
    let (a, b) = (f.alpha, f.beta);
    if a == b {
        return RecolorScript::default();
    }
    RecolorScript::new(vec![
        ScriptStep::SetEdge { u: r, v: f.s(b), color: None },
        ScriptStep::Shift { center: r, run: (a + 1..b).map(|i| f.s(i)).collect() },
        ScriptStep::SetEdge { u: r, v: f.s(1), color: Some(delta) },
    ])
}

/// Undoes [`two_inducing_script`] on any coloring stable on the new fan:
/// uncolor `r s_1`, shift from `s_{α+1}` to `s_{β−1}`, and give `r s_β` back
/// its typical color, which is `β`, or `Δ` when `β = α + 1`.
pub fn two_inducing_inverse_script(f: &TypicalMultifan, delta: Color) -> RecolorScript {
    let r = f.r();
    let (a, b) = (f.alpha, f.beta);
    if a == b {
        return RecolorScript::default();
    }
    RecolorScript::new(vec![
        ScriptStep::SetEdge { u: r, v: f.s(1), color: None },
        ScriptStep::Shift { center: r, run: (a + 1..b).map(|i| f.s(i)).collect() },
        ScriptStep::SetEdge { u: r, v: f.s(b), color: Some(if b == a + 1 { delta } else { b as Color }) },
    ])
}

/// Output of [`make_2_inducing`]. `pseudo` is centered at `r` with respect
/// to `r s_β`, in the order `s_β, s_{β−1}, …, s_{α+1}, s_1, …, s_α`
/// followed by the tail of the input.
#[derive(Clone, Debug)]
pub struct TwoInducing {
    pub pseudo: PseudoMultifan,
    pub coloring: PartialColoring,
    pub script: RecolorScript,
    pub inverse: RecolorScript,
}

/// The 2-inducing transformation on a typical pseudo-multifan whose embedded
/// fan `f` is typical under `c`.
pub fn make_2_inducing(s: &PseudoMultifan, f: &TypicalMultifan, c: &PartialColoring) -> Result<TwoInducing> {
    f.check(c).map_err(|e| Error::Precondition(format!("fan is not typical: {e}")))?;
    if s.t != f.beta || s.seq[..s.t] != f.fan.seq[..] {
        return Err(Error::Precondition(
            "embedded fan of the pseudo-multifan differs from the typical fan".into(),
        ));
    }
    let script = two_inducing_script(f, c.k());
    let inverse = two_inducing_inverse_script(f, c.k());
    let mut out = c.clone();
    out.apply_script(&script)?;
    let (a, b) = (f.alpha, f.beta);
    let mut seq: Vec<Vertex> = if a == b {
        f.fan.seq.clone()
    } else {
        let mut v: Vec<Vertex> = (a + 1..=b).rev().map(|i| f.s(i)).collect();
        v.extend((1..=a).map(|i| f.s(i)));
        v
    };
    seq.extend_from_slice(&s.seq[s.t..]);
    let pseudo = PseudoMultifan { center: s.center, seq, t: s.t, certificate: s.certificate.clone() };
    Ok(TwoInducing { pseudo, coloring: out, script, inverse })
}
