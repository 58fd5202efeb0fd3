//! Named quantifiers and selection functions, as used by the game file format.

use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::quantifier::{Outcome, Quantifier};
use crate::selection::SelectionFunction;
use crate::tree::Move;

pub const QUANTIFIER_NAMES: [&str; 4] = ["min", "max", "exists", "forall"];
pub const SELECTION_NAMES: [&str; 3] = ["argmin", "argmax", "witness"];

/// A leaf label in the explicit game format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Int(i64),
    Bool(bool),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Bool(b) => write!(f, "{b}"),
        }
    }
}

/// Outcome types whose quantifiers and selection functions can be named.
pub trait NamedOutcome: Outcome + Ord + fmt::Display {
    /// Human-readable name of the outcome type, for error messages.
    const DOMAIN: &'static str;

    fn quantifier<M: Move>(name: &str, moves: Arc<[M]>) -> Result<Quantifier<M, Self>>;

    fn selection<M: Move>(name: &str, moves: Arc<[M]>) -> Result<SelectionFunction<M, Self>>;

    /// `(quantifier, selection)` pairs in which the selection attains the quantifier.
    fn attaining_pairs() -> &'static [(&'static str, &'static str)];

    fn from_label(label: Label) -> Option<Self>;

    fn to_label(&self) -> Label;
}

fn unsupported(name: &str, domain: &'static str) -> GameError {
    GameError::UnsupportedForOutcome {
        name: name.to_string(),
        domain,
    }
}

impl NamedOutcome for i64 {
    const DOMAIN: &'static str = "integer";

    fn quantifier<M: Move>(name: &str, moves: Arc<[M]>) -> Result<Quantifier<M, Self>> {
        match name {
            "min" => Ok(Quantifier::min(moves)),
            "max" => Ok(Quantifier::max(moves)),
            "exists" | "forall" => Err(unsupported(name, Self::DOMAIN)),
            _ => Err(GameError::UnknownQuantifier(name.to_string())),
        }
    }

    fn selection<M: Move>(name: &str, moves: Arc<[M]>) -> Result<SelectionFunction<M, Self>> {
        match name {
            "argmin" => Ok(SelectionFunction::argmin(moves)),
            "argmax" => Ok(SelectionFunction::argmax(moves)),
            "witness" => Err(unsupported(name, Self::DOMAIN)),
            _ => Err(GameError::UnknownSelection(name.to_string())),
        }
    }

    fn attaining_pairs() -> &'static [(&'static str, &'static str)] {
        &[("min", "argmin"), ("max", "argmax")]
    }

    fn from_label(label: Label) -> Option<Self> {
        match label {
            Label::Int(v) => Some(v),
            Label::Bool(_) => None,
        }
    }

    fn to_label(&self) -> Label {
        Label::Int(*self)
    }
}

impl NamedOutcome for bool {
    const DOMAIN: &'static str = "boolean";

    fn quantifier<M: Move>(name: &str, moves: Arc<[M]>) -> Result<Quantifier<M, Self>> {
        match name {
            "min" => Ok(Quantifier::min(moves)),
            "max" => Ok(Quantifier::max(moves)),
            "exists" => Ok(Quantifier::exists(moves)),
            "forall" => Ok(Quantifier::forall(moves)),
            _ => Err(GameError::UnknownQuantifier(name.to_string())),
        }
    }

    fn selection<M: Move>(name: &str, moves: Arc<[M]>) -> Result<SelectionFunction<M, Self>> {
        match name {
            "argmin" => Ok(SelectionFunction::argmin(moves)),
            "argmax" => Ok(SelectionFunction::argmax(moves)),
            "witness" => Ok(SelectionFunction::witness(moves)),
            _ => Err(GameError::UnknownSelection(name.to_string())),
        }
    }

    fn attaining_pairs() -> &'static [(&'static str, &'static str)] {
        &[("min", "argmin"), ("max", "argmax"), ("exists", "witness")]
    }

    fn from_label(label: Label) -> Option<Self> {
        match label {
            Label::Bool(b) => Some(b),
            Label::Int(_) => None,
        }
    }

    fn to_label(&self) -> Label {
        Label::Bool(*self)
    }
}
