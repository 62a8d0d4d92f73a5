//! Shipped categories and comonads: powerset lattices with their interior
//! operators, a pointed line with the zero comonad, a non-residuated chain,
//! cyclic monoids and the trivial category.

use super::category::{FiniteMonoidalCategory, Morphism};
use super::comonad::ComonadData;
use crate::error::{Error, Result};

/// A poset as a thin category, with a monotone tensor. Morphism labels are `a<=b`.
pub fn thin(
    labels: &[String],
    leq: impl Fn(usize, usize) -> bool,
    tensor: impl Fn(usize, usize) -> usize,
    unit: usize,
) -> Result<FiniteMonoidalCategory> {
    let n = labels.len();
    let mut morphisms = Vec::new();
    let mut arrow = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            if leq(a, b) {
                arrow[a][b] = Some(morphisms.len());
                morphisms.push(Morphism {
                    label: format!("{}<={}", labels[a], labels[b]),
                    source: a,
                    target: b,
                });
            }
        }
    }
    let m = morphisms.len();
    let identity = (0..n)
        .map(|a| arrow[a][a].ok_or_else(|| Error::Malformed(format!("order is not reflexive at {}", labels[a]))))
        .collect::<Result<Vec<_>>>()?;
    let mut compose = vec![vec![None; m]; m];
    for (f, mf) in morphisms.iter().enumerate() {
        for (g, mg) in morphisms.iter().enumerate() {
            if mf.target == mg.source {
                compose[g][f] =
                    Some(arrow[mf.source][mg.target].ok_or_else(|| {
                        Error::Malformed(format!("order is not transitive at {}", labels[mf.target]))
                    })?);
            }
        }
    }
    let tensor_ob: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| tensor(a, b)).collect()).collect();
    if tensor_ob.iter().flatten().any(|&x| x >= n) {
        return Err(Error::Malformed("tensor leaves the object set".into()));
    }
    let tensor_mor = morphisms
        .iter()
        .map(|f| {
            morphisms
                .iter()
                .map(|g| {
                    arrow[tensor_ob[f.source][g.source]][tensor_ob[f.target][g.target]].ok_or_else(|| {
                        Error::Malformed(format!("tensor is not monotone at ({}, {})", f.label, g.label))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteMonoidalCategory::from_tables(
        labels.to_vec(),
        morphisms,
        Some(identity),
        compose,
        tensor_ob,
        tensor_mor,
        unit,
    )
}

/// `{1,3}` style label of a subset of `{1, …, n}`.
pub fn subset_label(mask: u32) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

/// Subsets of `{1, …, n}` under inclusion, tensor `∩`, unit the full set.
/// Object `i` is the subset with bitmask `i`.
pub fn powerset(n: u32) -> FiniteMonoidalCategory {
    let size = 1usize << n;
    let labels: Vec<String> = (0..size as u32).map(subset_label).collect();
    thin(&labels, |a, b| a & !b == 0, |a, b| a & b, size - 1).expect("powerset lattice")
}

/// Every topology on `{1, …, n}`, each as its sorted list of open sets.
pub fn topologies(n: u32) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let middle: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << middle.len()) {
        let mut opens = vec![0];
        opens.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s),
        );
        if full != 0 {
            opens.push(full);
        }
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| opens.contains(&(a | b)) && opens.contains(&(a & b)))
        });
        if closed {
            opens.sort_unstable();
            out.push(opens);
        }
    }
    out
}

/// The interior operator of a topology as a comonad on the powerset lattice.
pub fn interior_comonad(n: u32, opens: &[u32]) -> Result<(FiniteMonoidalCategory, ComonadData)> {
    let c = powerset(n);
    let map: Vec<usize> = (0..1u32 << n)
        .map(|a| opens.iter().filter(|&&o| o & !a == 0).fold(0, |acc, &o| acc | o) as usize)
        .collect();
    let g = ComonadData::thin(&c, &map)?;
    Ok((c, g))
}

/// `0 → 1` with tensor `max` and unit `0`.
pub fn pointed_line() -> FiniteMonoidalCategory {
    thin(&["0".into(), "1".into()], |a, b| a <= b, |a, b| a.max(b), 0).expect("line")
}

/// Everything to the bottom object.
pub fn zero_comonad(c: &FiniteMonoidalCategory) -> ComonadData {
    ComonadData::thin(c, &vec![0; c.n_objects()]).expect("thin category")
}

/// The monoid `{1, a, 0}` with `a·a = a`, ordered `1 ≤ a ≤ 0`. Tensoring with `a`
/// does not preserve the empty join, so it has no right adjoint.
pub fn non_residuated() -> FiniteMonoidalCategory {
    thin(&["1".into(), "a".into(), "0".into()], |x, y| x <= y, |x, y| x.max(y), 0).expect("chain")
}

/// One object, morphisms `r^i` composing and tensoring by addition mod `n`.
pub fn cyclic_monoid(n: usize) -> FiniteMonoidalCategory {
    let morphisms = (0..n)
        .map(|i| Morphism {
            label: format!("r^{i}"),
            source: 0,
            target: 0,
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteMonoidalCategory::from_tables(
        vec!["*".into()],
        morphisms,
        Some(vec![0]),
        table.iter().map(|r| r.iter().map(|&x| Some(x)).collect()).collect(),
        vec![vec![0]],
        table,
        0,
    )
    .expect("cyclic monoid")
}

pub fn trivial() -> FiniteMonoidalCategory {
    cyclic_monoid(1)
}

/// The categories every identity comonad is checked on.
pub fn shipped_categories() -> Vec<(String, FiniteMonoidalCategory)> {
    let mut out = vec![
        ("trivial".to_string(), trivial()),
        ("cyclic-2".to_string(), cyclic_monoid(2)),
        ("cyclic-3".to_string(), cyclic_monoid(3)),
        ("pointed-line".to_string(), pointed_line()),
        ("non-residuated".to_string(), non_residuated()),
    ];
    for n in 0..=3 {
        out.push((format!("powerset-{n}"), powerset(n)));
    }
    out
}

/// Interior operators of every topology on at most three points, identity
/// comonads on the shipped categories, and the zero comonad on the line.
pub fn comonad_corpus() -> Vec<(String, FiniteMonoidalCategory, ComonadData)> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for opens in topologies(n) {
            let names: Vec<String> = opens.iter().map(|&o| subset_label(o)).collect();
            let (c, g) = interior_comonad(n, &opens).expect("topology");
            out.push((format!("interior-{n}[{}]", names.join(" ")), c, g));
        }
    }
    for (name, c) in shipped_categories() {
        let g = ComonadData::identity(&c);
        out.push((format!("identity-{name}"), c, g));
    }
    let line = pointed_line();
    let z = zero_comonad(&line);
    out.push(("zero-pointed-line".into(), line, z));
    out
}
