use std::path::Path;

use anyhow::{Context, Result};
use kanforge::ab::AbObject;
use kanforge::fincat::{ComonadData, FiniteMonoidalCategory, InstanceJson};
use kanforge::graded::{ChainComplex, GradedObject};
use serde::de::DeserializeOwned;
use serde_json::Value;

fn read(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: not valid JSON", path.display()))
}

pub fn parse<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: ill-formed input", path.display()))
}

pub enum Group {
    Ab(AbObject),
    Graded(GradedObject),
    Chain(ChainComplex),
}

/// Chain complexes carry `differentials`, graded groups only `components`.
pub fn group(path: &Path) -> Result<Group> {
    let v = read(path)?;
    let ctx = || format!("{}: ill-formed input", path.display());
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("differentials") {
        Group::Chain(serde_json::from_value(v).with_context(ctx)?)
    } else if has("components") {
        Group::Graded(serde_json::from_value(v).with_context(ctx)?)
    } else {
        Group::Ab(serde_json::from_value(v).with_context(ctx)?)
    })
}

pub fn instance(path: &Path) -> Result<(FiniteMonoidalCategory, Option<ComonadData>)> {
    let j: InstanceJson = parse(path)?;
    j.resolve()
        .with_context(|| format!("{}: ill-formed tables", path.display()))
}

pub fn comonad_instance(path: &Path) -> Result<(FiniteMonoidalCategory, ComonadData)> {
    match instance(path)? {
        (c, Some(g)) => Ok((c, g)),
        (_, None) => anyhow::bail!("{}: no \"comonad\" entry", path.display()),
    }
}

pub fn object(c: &FiniteMonoidalCategory, label: &str) -> Result<usize> {
    c.object_id(label).with_context(|| format!("unknown object {label:?}"))
}
