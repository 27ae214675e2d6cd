//! Mutations of directed categories: shifts, c-moves, r-moves and their
//! inverses, realized by twist functors inside Tw(A).

mod script;
mod track;

use thiserror::Error;

use crate::ainfty::{check_relations, transfer, DirectedCategory, Transfer};
use crate::twcx::{db_hom, dual_twist, strip_acyclic, twist, TwCategory, TwistedComplex};

pub use script::{Move, Script, ScriptError};
pub use track::track_object;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MutationError {
    #[error("`{mv}` needs at least {need} objects, found {found}")]
    TooFew { mv: String, need: usize, found: usize },
    #[error("shift vector has length {0}, expected {1}")]
    ShiftLength(usize, usize),
    #[error("step {step} (`{mv}`): {reason}")]
    Step { step: usize, mv: String, reason: String },
}

impl MutationError {
    fn at(self, step: usize, mv: &Move) -> Self {
        match self {
            MutationError::Step { reason, .. } => MutationError::Step { step, mv: mv.to_string(), reason },
            e => MutationError::Step { step, mv: mv.to_string(), reason: e.to_string() },
        }
    }
}

/// The new objects of a move as twisted complexes over `c`.
pub fn mutated_objects(c: &DirectedCategory, mv: &Move) -> Result<Vec<TwistedComplex>, MutationError> {
    let m = c.m();
    let x = |i: usize| TwistedComplex::object(c, i);
    let need = |n: usize| {
        if m < n {
            Err(MutationError::TooFew { mv: mv.to_string(), need: n, found: m })
        } else {
            Ok(())
        }
    };
    let tidy = |t: TwistedComplex| strip_acyclic(c, &t);
    let out = match mv {
        Move::Shift(s) => {
            if s.len() != m {
                return Err(MutationError::ShiftLength(s.len(), m));
            }
            (0..m).map(|i| x(i).shift(s[i])).collect()
        }
        Move::C => {
            if m == 0 {
                return Ok(Vec::new());
            }
            let mut out: Vec<_> = (1..m).map(|k| tidy(twist(c, &x(0), &x(k)))).collect();
            out.push(x(0));
            out
        }
        Move::R => {
            need(2)?;
            let mut out: Vec<_> = (0..m - 2).map(x).collect();
            out.push(tidy(twist(c, &x(m - 2), &x(m - 1))));
            out.push(x(m - 2));
            out
        }
        Move::CInv => {
            if m == 0 {
                return Ok(Vec::new());
            }
            let mut out = vec![x(m - 1)];
            out.extend((0..m - 1).map(|k| tidy(dual_twist(c, &x(m - 1), &x(k)))));
            out
        }
        Move::RInv => {
            need(2)?;
            let mut out: Vec<_> = (0..m - 2).map(x).collect();
            out.push(x(m - 1));
            out.push(tidy(dual_twist(c, &x(m - 1), &x(m - 2))));
            out
        }
    };
    Ok(out)
}

/// hom(i,k) regraded by σ_i − σ_k; compositions unchanged.
pub fn apply_shift(c: &DirectedCategory, sigma: &[i64]) -> Result<DirectedCategory, MutationError> {
    if sigma.len() != c.m() {
        return Err(MutationError::ShiftLength(sigma.len(), c.m()));
    }
    Ok(c.regraded(sigma))
}

/// Chain-level mutation: full hom complexes between the new objects.
pub fn apply_move(c: &DirectedCategory, mv: &Move) -> Result<DirectedCategory, MutationError> {
    if let Move::Shift(s) = mv {
        return apply_shift(c, s);
    }
    let objects = mutated_objects(c, mv)?;
    Ok(TwCategory::new(c, objects).materialize(c.names().to_vec()))
}

pub fn apply_c(c: &DirectedCategory) -> DirectedCategory {
    apply_move(c, &Move::C).expect("c-move is defined for every category")
}

pub fn apply_r(c: &DirectedCategory) -> Result<DirectedCategory, MutationError> {
    apply_move(c, &Move::R)
}

pub fn apply_c_inv(c: &DirectedCategory) -> DirectedCategory {
    apply_move(c, &Move::CInv).expect("c!-move is defined for every category")
}

pub fn apply_r_inv(c: &DirectedCategory) -> Result<DirectedCategory, MutationError> {
    apply_move(c, &Move::RInv)
}

/// One executed step: the category before the move, the new objects over
/// it, and the minimal model of their span (absent for shifts).
pub struct Step {
    pub mv: Move,
    pub before: DirectedCategory,
    pub images: Vec<TwistedComplex>,
    pub transfer: Option<Transfer>,
    pub after: DirectedCategory,
}

pub struct ScriptRun {
    pub steps: Vec<Step>,
    pub result: DirectedCategory,
}

/// Minimal model of the mutated category, checked for directedness and the
/// A∞ relations.
pub fn mutate_model(c: &DirectedCategory, mv: &Move) -> Result<Step, MutationError> {
    if let Move::Shift(s) = mv {
        let after = apply_shift(c, s)?;
        return Ok(Step { mv: mv.clone(), before: c.clone(), images: Vec::new(), transfer: None, after });
    }
    let images = mutated_objects(c, mv)?;
    for k in 0..images.len() {
        for i in 0..k {
            let back = db_hom(c, &images[k], &images[i]);
            if !back.is_empty() {
                return Err(MutationError::Step {
                    step: 0,
                    mv: mv.to_string(),
                    reason: format!("new objects {} and {} have nonzero backward morphisms", k + 1, i + 1),
                });
            }
        }
    }
    let tw = TwCategory::new(c, images.clone());
    let t = transfer(&tw, c.names().to_vec());
    if let Some(v) = check_relations(&t.model) {
        return Err(MutationError::Step { step: 0, mv: mv.to_string(), reason: format!("A∞ relations fail: {v}") });
    }
    let after = t.model.clone();
    Ok(Step { mv: mv.clone(), before: c.clone(), images, transfer: Some(t), after })
}

/// Run a script, replacing the category by a minimal model after each move.
pub fn run_script_steps(c: &DirectedCategory, s: &Script) -> Result<ScriptRun, MutationError> {
    let mut cur = c.clone();
    let mut steps = Vec::with_capacity(s.len());
    for (j, mv) in s.moves().iter().enumerate() {
        let step = mutate_model(&cur, mv).map_err(|e| e.at(j + 1, mv))?;
        cur = step.after.clone();
        steps.push(step);
    }
    Ok(ScriptRun { steps, result: cur })
}

pub fn run_script(c: &DirectedCategory, s: &Script) -> Result<DirectedCategory, MutationError> {
    Ok(run_script_steps(c, s)?.result)
}
