use std::path::Path;

use anyhow::{bail, Context, Result};
use kanforge::ab::{check_triangle_identities, dual_obstruction, tensor, try_dual};
use kanforge::corpus::{self, FreeComplexBounds};
use kanforge::fincat::{
    build_em, check_comonad, check_em, check_hopf, find_lan, fixtures, has_right_adjoint, residuals, verify_create_kan,
    ComonadData, FiniteMonoidalCategory, InstanceJson,
};
use kanforge::graded::{
    check_creation_corollary, check_dg_coalgebra, check_fusion_compat, check_graded_triangles, check_grading_coalgebra,
    corollary_instance, create_dual_chain, dual_graded, fusion, graded_dual_obstruction, tensor_chain, tensor_graded,
    ChainComplex, DifferentialFamily, GradingCoalgebra,
};
use kanforge::linalg::{is_unimodular, smith_decompose, IntMatrix};
use kanforge::report::{report_merge, Summary, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, Group};
use crate::{BoundArgs, Cli, Command, CorpusKind};

pub struct Outcome {
    pub command: String,
    pub data: Option<Value>,
    pub notes: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    fn new(command: &str) -> Self {
        Outcome {
            command: command.into(),
            data: None,
            notes: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    fn data(mut self, d: impl Serialize) -> Self {
        self.data = Some(serde_json::to_value(d).expect("serializable"));
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    fn verdict(mut self, v: Verdict) -> Self {
        self.verdicts.push(v);
        self
    }

    pub fn summary(&self) -> Summary {
        report_merge(&self.verdicts)
    }
}

fn check(name: &str, ok: bool, why: impl FnOnce() -> String) -> Verdict {
    let mut v = Verdict::new(name);
    v.expect(ok, why);
    v
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Snf { file } => snf(file),
        Command::Dual { file } => dual(file),
        Command::Tensor { left, right } => tensor_cmd(left, right),
        Command::CheckCoalgebra { file } => check_coalgebra(file),
        Command::Fusion { vprime, v } => fusion_cmd(vprime, v),
        Command::CheckComonad { file } => {
            let (c, g) = input::comonad_instance(file)?;
            Ok(Outcome::new("check-comonad").verdict(check_comonad(&c, &g)))
        }
        Command::Em { file } => {
            let (c, g) = input::comonad_instance(file)?;
            let em = build_em(&c, &g).context("cannot build the EM category")?;
            let v = check_em(&c, &g, &em);
            Ok(Outcome::new("em").data(em.summary(&c)).verdict(v))
        }
        Command::CheckHopf { file } => {
            let (c, g) = input::comonad_instance(file)?;
            Ok(Outcome::new("check-hopf").verdict(check_hopf(&c, &g)))
        }
        Command::Lan { file, u, v } => {
            let (c, _) = input::instance(file)?;
            let (ui, vi) = (input::object(&c, u)?, input::object(&c, v)?);
            let r = find_lan(&c, vi, ui);
            let mut verdict = Verdict::new("lan");
            match &r {
                Some(r) => verdict.note(format!("lan = {} with κ = {}", r.k, r.kappa)),
                None => verdict.note(format!("no left extension of {u} along {v}")),
            }
            Ok(Outcome::new("lan").data(r).verdict(verdict))
        }
        Command::Adjoint { file, m } => {
            let (c, _) = input::instance(file)?;
            let mi = input::object(&c, m)?;
            let adj = has_right_adjoint(&c, mi);
            let res = residuals(&c, mi);
            let mut v = Verdict::new("adjoint");
            match &adj {
                Some(a) => {
                    v.expect(a.triangles, || {
                        format!("adjoint {} fails a triangle identity", a.adjoint)
                    });
                    v.note(format!("{m} ⊣ {}", a.adjoint));
                }
                None => v.note(format!("{m} has no right adjoint")),
            }
            v.note(match &res {
                Some(_) => format!("− ⊗ {m} has a right adjoint"),
                None => format!("− ⊗ {m} has no right adjoint"),
            });
            Ok(Outcome::new("adjoint")
                .data(json!({ "adjoint": adj, "residuals": res }))
                .verdict(v))
        }
        Command::VerifyCreatekan { file } => {
            let (c, g) = input::comonad_instance(file)?;
            let r = verify_create_kan(&c, &g);
            Ok(Outcome::new("verify-createkan").data(&r.pairs).verdict(r.verdict))
        }
        Command::CorollarySweep { files, bounds, torsion } => corollary_sweep(cli, files, bounds, *torsion),
        Command::Generate {
            kind,
            bounds,
            points,
            count,
        } => generate(cli, *kind, bounds, *points, *count),
    }
}

fn snf(file: &Path) -> Result<Outcome> {
    let a: IntMatrix = input::parse(file)?;
    let s = smith_decompose(&a);
    let uav = s.u.mul(&a)?.mul(&s.v)?;
    let mut v = Verdict::new("snf");
    v.expect(uav == s.d, || "u · a · v ≠ d".into());
    v.expect(is_unimodular(&s.u)? && is_unimodular(&s.v)?, || {
        "u or v is not unimodular".into()
    });
    v.expect(s.d.is_diagonal(), || "d is not diagonal".into());
    let inv = &s.invariants;
    v.expect(inv.iter().all(|x| x.is_positive()), || {
        "invariant factors must be positive".into()
    });
    v.expect(inv.windows(2).all(|w| w[0].divides(&w[1])), || {
        "divisibility chain broken".into()
    });
    Ok(Outcome::new("snf").data(&s).verdict(v))
}

fn dual(file: &Path) -> Result<Outcome> {
    let o = Outcome::new("dual");
    Ok(match input::group(file)? {
        Group::Ab(a) => match try_dual(&a) {
            Some(w) => {
                let ok = check_triangle_identities(&w)?;
                o.data(&w).verdict(check("snake identities", ok, || {
                    "snake composite is not the identity".into()
                }))
            }
            None => absent(o, dual_obstruction(&a)),
        },
        Group::Graded(a) => match dual_graded(&a) {
            Some(w) => {
                let ok = check_graded_triangles(&w)?;
                o.data(&w).verdict(check("snake identities", ok, || {
                    "snake composite is not the identity".into()
                }))
            }
            None => absent(o, graded_dual_obstruction(&a)),
        },
        Group::Chain(x) => match create_dual_chain(&x)? {
            Some(d) => {
                let ch = d.checks;
                let snake = check("snake identities", ch.snakes, || {
                    "snake composite is not the identity".into()
                });
                let mut created = Verdict::new("created structure");
                created.expect(ch.counit, || "ε ∘ γ_k ≠ 1".into());
                created.expect(ch.square_zero, || "d_k² ≠ 0".into());
                created.expect(ch.structure_maps_chain, || "κ or e is not a chain map".into());
                created.expect(ch.matches_graded, || {
                    "underlying dual differs from the graded dual".into()
                });
                created.expect(ch.unique, || "the created differential is not unique".into());
                o.data(json!({
                    "dual": d.dual_complex,
                    "kappa": d.kappa,
                    "counit": d.counit,
                    "checks": ch,
                }))
                .verdict(snake)
                .verdict(created)
            }
            None => absent(o, graded_dual_obstruction(x.underlying())),
        },
    })
}

/// A missing dual is a result, not a failure.
fn absent(o: Outcome, why: Option<String>) -> Outcome {
    let line = format!("no dual: {}", why.unwrap_or_default());
    o.note(line.clone())
        .verdict(Verdict::not_applicable("snake identities", line))
}

fn tensor_cmd(left: &Path, right: &Path) -> Result<Outcome> {
    let o = Outcome::new("tensor");
    Ok(match (input::group(left)?, input::group(right)?) {
        (Group::Ab(a), Group::Ab(b)) => o.data(tensor(&a, &b)),
        (Group::Graded(a), Group::Graded(b)) => o.data(tensor_graded(&a, &b)),
        (Group::Chain(a), Group::Chain(b)) => {
            let t = tensor_chain(&a, &b)?;
            let ok = t.family().square_defects().is_empty();
            o.data(&t)
                .verdict(check("square zero", ok, || "d² ≠ 0 on the tensor product".into()))
        }
        _ => bail!("both inputs must be of the same kind"),
    })
}

fn check_coalgebra(file: &Path) -> Result<Outcome> {
    let v: Value = input::parse(file)?;
    if v.get("carrier").is_some() {
        let c: GradingCoalgebra =
            serde_json::from_value(v).with_context(|| format!("{}: ill-formed coalgebra", file.display()))?;
        let r = check_grading_coalgebra(&c)?;
        let mut verdict = Verdict::new("grading coalgebra");
        for d in &r.diagnostics {
            verdict.fail(d.clone());
        }
        if r.valid {
            verdict.expect(r.roundtrip == Some(true), || {
                "sum of the decomposition is not the carrier".into()
            });
        }
        return Ok(Outcome::new("check-coalgebra").data(&r).verdict(verdict));
    }
    let x: DifferentialFamily =
        serde_json::from_value(v).with_context(|| format!("{}: ill-formed complex", file.display()))?;
    let r = check_dg_coalgebra(&x);
    let defects = x.square_defects();
    let mut verdict = Verdict::new("dg coalgebra");
    verdict.expect(r.counit, || "counit law fails".into());
    verdict.expect(r.coassociative, || {
        let ds: Vec<String> = defects.iter().map(|n| format!("d_{} ∘ d_{n} ≠ 0", n - 1)).collect();
        format!("coassociativity fails: {}", ds.join(", "))
    });
    Ok(Outcome::new("check-coalgebra")
        .data(json!({ "counit": r.counit, "coassociative": r.coassociative, "square_defects": defects }))
        .verdict(verdict))
}

fn fusion_cmd(vprime: &Path, v: &Path) -> Result<Outcome> {
    let (partner, structure) = match input::group(vprime)? {
        Group::Graded(a) => (a, None),
        Group::Chain(x) => (x.underlying().clone(), Some(x)),
        Group::Ab(_) => bail!("{}: expected a graded group or a chain complex", vprime.display()),
    };
    let x = match input::group(v)? {
        Group::Chain(x) => x,
        Group::Graded(a) => ChainComplex::trivial(a),
        Group::Ab(_) => bail!("{}: expected a chain complex", v.display()),
    };
    let w = fusion(&partner, &x)?;
    let c = check_fusion_compat(&w, structure.as_ref())?;
    let mut verdict = Verdict::new("fusion");
    verdict.expect(c.inverse_exact, || "inverse is not exact".into());
    verdict.expect(c.me1, || "counit compatibility fails".into());
    verdict.expect(c.me2, || "comultiplication compatibility fails".into());
    if let Some(me3) = c.me3 {
        verdict.expect(me3, || "coaction compatibility fails".into());
    }
    Ok(Outcome::new("fusion")
        .data(json!({ "witness": w, "checks": c }))
        .verdict(verdict))
}

fn free_bounds(b: &BoundArgs) -> FreeComplexBounds {
    FreeComplexBounds {
        degrees: b.degrees.clone(),
        max_rank: b.max_rank,
        max_entry: b.max_entry,
        exact_support: true,
    }
}

fn corollary_sweep(cli: &Cli, files: &[std::path::PathBuf], bounds: &BoundArgs, torsion: bool) -> Result<Outcome> {
    let mut corpus_: Vec<ChainComplex> = if files.is_empty() {
        corpus::free_complexes(&free_bounds(bounds), cli.max_size)?
    } else {
        files.iter().map(|f| input::parse(f)).collect::<Result<_>>()?
    };
    if torsion {
        let extra: Vec<ChainComplex> = corpus_.iter().map(corpus::torsion_variant).collect();
        corpus_.extend(extra);
    }
    let r = check_creation_corollary(&corpus_)?;
    let mut v = Verdict::new("corollary sweep");
    v.count("complexes", r.total as u64);
    v.count("both_dual", r.both as u64);
    v.count("neither_dual", r.neither as u64);
    for &i in &r.failures {
        let inst = corollary_instance(&corpus_[i])?;
        v.fail(format!("complex {i}: {inst:?}"));
    }
    Ok(Outcome::new("corollary-sweep").data(&r).verdict(v))
}

fn write_all<T: Serialize>(cli: &Cli, prefix: &str, items: &[T]) -> Result<Vec<String>> {
    let Some(dir) = &cli.out else {
        bail!("generate needs --out DIR");
    };
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut names = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let name = format!("{prefix}-{i:04}.json");
        let text = serde_json::to_string_pretty(item)? + "\n";
        std::fs::write(dir.join(&name), text).with_context(|| format!("cannot write {name}"))?;
        names.push(name);
    }
    Ok(names)
}

fn generate(cli: &Cli, kind: CorpusKind, bounds: &BoundArgs, points: u32, count: usize) -> Result<Outcome> {
    let names = match kind {
        CorpusKind::FreeComplexes => write_all(
            cli,
            "complex",
            &corpus::free_complexes(&free_bounds(bounds), cli.max_size)?,
        )?,
        CorpusKind::TorsionComplexes => {
            let xs: Vec<ChainComplex> = corpus::free_complexes(&free_bounds(bounds), cli.max_size)?
                .iter()
                .map(corpus::torsion_variant)
                .collect();
            write_all(cli, "torsion", &xs)?
        }
        CorpusKind::RandomComplexes => {
            let mut rng = corpus::rng(cli.seed);
            let len = bounds.degrees.len().max(1);
            let mut xs = Vec::new();
            while xs.len() < count {
                let f = corpus::random_family(&mut rng, len, bounds.max_rank.max(1), bounds.max_entry);
                if let Ok(x) = ChainComplex::try_from(f) {
                    xs.push(x);
                }
            }
            write_all(cli, "random", &xs)?
        }
        CorpusKind::Topologies => {
            if points > 4 {
                bail!(
                    "topologies on {points} points: refusing, the powerset has {} objects",
                    1u64 << points
                );
            }
            let items: Vec<InstanceJson> = fixtures::topologies(points)
                .iter()
                .map(|opens| {
                    let (c, g) = fixtures::interior_comonad(points, opens).expect("topology");
                    InstanceJson::new(&c, Some(&g))
                })
                .collect();
            write_all(cli, &format!("topology-{points}"), &items)?
        }
        CorpusKind::IdentityComonads => {
            let items: Vec<InstanceJson> = fixtures::shipped_categories()
                .iter()
                .map(|(_, c): &(String, FiniteMonoidalCategory)| InstanceJson::new(c, Some(&ComonadData::identity(c))))
                .collect();
            write_all(cli, "identity", &items)?
        }
    };
    let mut v = Verdict::new("generate");
    v.count("files", names.len() as u64);
    Ok(Outcome::new("generate").data(&names).verdict(v))
}
