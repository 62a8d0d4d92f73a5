//! End-to-end acceptance run. Every check is recomputed here from first
//! principles (determinants, minors, raw matrix products, bitmask lattices)
//! rather than trusted from the library's own verdicts.
//!
//! Runs without the libtest harness so that the per-criterion lines show up
//! in plain `cargo test` output.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use kanforge::ab::{check_triangle_identities, try_dual, AbMorphism, AbObject};
use kanforge::corpus::{self, FreeComplexBounds};
use kanforge::fincat::{
    build_em, check_comonad, check_em, check_hopf, find_lan, fixtures, verify_create_kan, FiniteMonoidalCategory,
};
use kanforge::graded::{
    check_dg_coalgebra, check_fusion_compat, check_grading_coalgebra, create_dual_chain, dual_graded, fusion,
    ChainComplex, GradedObject, GradingCoalgebra,
};
use kanforge::linalg::{smith_decompose, IntMatrix};
use kanforge::report::Status;
use kanforge::sweep::{self, ExecMode};
use kanforge::Int;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Big = Vec<Vec<BigInt>>;

// ---------------------------------------------------------------- oracles

fn big(m: &IntMatrix) -> Big {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Int::to_big).collect())
        .collect()
}

fn big_mul(a: &Big, b: &Big, inner: usize, cols: usize) -> Big {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn big_identity(n: usize) -> Big {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
fn det(m: &Big) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The k-th determinantal divisor: gcd of all k×k minors.
fn minor_gcd(a: &Big, cols: usize, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(a.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Big = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

/// Equal as maps into a group with generator orders `orders` (0 = free).
fn equal_mod(a: &Big, b: &Big, orders: &[BigInt]) -> bool {
    a.iter().zip(b).enumerate().all(|(i, (ra, rb))| {
        ra.iter().zip(rb).all(|(x, y)| {
            let diff = x - y;
            if orders[i].is_zero() {
                diff.is_zero()
            } else {
                (diff % &orders[i]).is_zero()
            }
        })
    })
}

fn digest(s: &str) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

// ---------------------------------------------------------------- harness

struct Outcome {
    pass: bool,
    /// Deterministic report text; compared byte-for-byte across runs.
    report: String,
    summary: String,
}

struct Failures {
    count: usize,
    shown: Vec<String>,
}

impl Failures {
    fn new() -> Self {
        Failures {
            count: 0,
            shown: Vec::new(),
        }
    }

    fn push(&mut self, msg: String) {
        self.count += 1;
        if self.shown.len() < 10 {
            self.shown.push(msg);
        }
    }

    fn extend(&mut self, other: Failures) {
        self.count += other.count;
        for m in other.shown {
            if self.shown.len() < 10 {
                self.shown.push(m);
            }
        }
    }

    fn render(&self, report: &mut String) {
        let _ = writeln!(report, "failures={}", self.count);
        for m in &self.shown {
            let _ = writeln!(report, "  {m}");
        }
    }
}

fn finish(summary: String, failures: Failures, mut report: String) -> Outcome {
    failures.render(&mut report);
    Outcome {
        pass: failures.count == 0,
        summary,
        report,
    }
}

// ---------------------------------------------------------------- 1: Smith normal form

fn smith(seed: u64) -> Outcome {
    let mut rng = corpus::rng(seed ^ 0x51);
    let mut failures = Failures::new();
    let mut report = String::new();
    let mut ranks = [0usize; 7];
    for t in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let entries: Vec<Int> = (0..r * c).map(|_| Int::from(rng.gen_range(-20i64..=20))).collect();
        let a = IntMatrix::new(r, c, entries).expect("sized");
        let s = smith_decompose(&a);
        let (ab, ub, vb, db) = (big(&a), big(&s.u), big(&s.v), big(&s.d));
        let uav = big_mul(&big_mul(&ub, &ab, r, c), &vb, c, c);
        if uav != db {
            failures.push(format!("#{t}: u·a·v ≠ d"));
        }
        for (name, m) in [("u", &ub), ("v", &vb)] {
            if det(m).abs() != BigInt::one() {
                failures.push(format!("#{t}: {name} not unimodular"));
            }
        }
        // d is diagonal, with the invariants leading and a divisibility chain
        let rank = s.invariants.len();
        ranks[rank] += 1;
        for i in 0..r {
            for j in 0..c {
                let want = if i == j && i < rank {
                    s.invariants[i].to_big()
                } else {
                    BigInt::zero()
                };
                if db[i][j] != want {
                    failures.push(format!("#{t}: d[{i}][{j}] = {}", db[i][j]));
                }
            }
        }
        let inv: Vec<BigInt> = s.invariants.iter().map(Int::to_big).collect();
        if inv.iter().any(|x| !x.is_positive()) || inv.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            failures.push(format!("#{t}: invariants {inv:?} not a divisibility chain"));
        }
        // d_1⋯d_k is the gcd of the k×k minors of a
        let mut prod = BigInt::one();
        for k in 1..=r.min(c) {
            if k <= rank {
                prod *= &inv[k - 1];
            } else {
                prod = BigInt::zero();
            }
            let g = minor_gcd(&ab, c, k);
            if g != prod {
                failures.push(format!(
                    "#{t}: determinantal divisor {k} is {g}, invariants give {prod}"
                ));
            }
        }
        let _ = writeln!(report, "{t}: {r}x{c} -> {inv:?}");
    }
    let summary = format!("matrices=1000 rank-histogram={ranks:?} failures={}", failures.count);
    let report = format!("{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- 2: duals in Ab

fn torsion_chains(max_len: usize, max_entry: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for chain in &frontier {
            let last: Option<&i64> = chain.last();
            for e in 2..=max_entry {
                if last.is_none_or(|&l| e % l == 0) {
                    let mut c = chain.clone();
                    c.push(e);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The two snake composites for the standard pairing, computed directly on
/// the tensor bases `i·r + j`.
fn snakes_on_basis(r: usize, ev: &Big, coev: &Big) -> bool {
    let ev = &ev[0];
    let coev: Vec<&BigInt> = coev.iter().map(|row| &row[0]).collect();
    let delta = |i: usize, j: usize| if i == j { BigInt::one() } else { BigInt::zero() };
    (0..r).all(|i| {
        (0..r).all(|j| {
            let first: BigInt = (0..r).map(|k| coev[i * r + k] * &ev[k * r + j]).sum();
            let second: BigInt = (0..r).map(|k| &ev[i * r + k] * coev[k * r + j]).sum();
            first == delta(i, j) && second == delta(i, j)
        })
    })
}

fn ab_duals() -> Outcome {
    let mut failures = Failures::new();
    let mut report = String::new();
    let (mut with_dual, mut without) = (0, 0);
    for rank in 0..=3 {
        for chain in torsion_chains(3, 6) {
            let a = AbObject::new(rank, chain.iter().map(|&t| Int::from(t)).collect()).expect("canonical chain");
            let name = format!("ℤ^{rank} ⊕ {chain:?}");
            match try_dual(&a) {
                Some(w) if chain.is_empty() => {
                    with_dual += 1;
                    let r = rank;
                    let shapes_ok = w.dual_object == AbObject::free(r)
                        && w.ev.matrix().rows() == 1
                        && w.ev.matrix().cols() == r * r
                        && w.coev.matrix().rows() == r * r
                        && w.coev.matrix().cols() == 1;
                    if !shapes_ok {
                        failures.push(format!("{name}: unexpected witness shape"));
                    } else if !snakes_on_basis(r, &big(w.ev.matrix()), &big(w.coev.matrix())) {
                        failures.push(format!("{name}: snake composites are not the identity"));
                    }
                    if !check_triangle_identities(&w).unwrap_or(false) {
                        failures.push(format!("{name}: library triangle check disagrees"));
                    }
                }
                Some(_) => failures.push(format!("{name}: has torsion but a dual was produced")),
                None if chain.is_empty() => failures.push(format!("{name}: free but no dual")),
                None => without += 1,
            }
            let _ = writeln!(report, "{name}");
        }
    }
    let summary = format!("objects={} dualizable={with_dual} not={without}", with_dual + without);
    let _ = writeln!(report, "{summary}");
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- 3: coalgebra characterizations

/// `p` and `p⁻¹` built from the same random elementary operations. Free
/// generators get an arbitrary unimodular change of basis, and torsion
/// coordinates may pick up multiples of free ones; both keep every map
/// well defined on `ℤ/t ⊕ ℤ^r`.
fn random_automorphism(rng: &mut ChaCha8Rng, torsion: usize, free: usize) -> (Big, Big) {
    let g = torsion + free;
    let mut p = big_identity(g);
    let mut q = big_identity(g);
    for _ in 0..rng.gen_range(0..=4) {
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let (i, j) = if free >= 2 && rng.gen_bool(0.6) {
            let i = torsion + rng.gen_range(0..free);
            let mut j = torsion + rng.gen_range(0..free);
            while j == i {
                j = torsion + rng.gen_range(0..free);
            }
            (i, j)
        } else if torsion > 0 && free > 0 {
            (rng.gen_range(0..torsion), torsion + rng.gen_range(0..free))
        } else {
            continue;
        };
        // p ← (1 + c·E_ij) p,  q ← q (1 − c·E_ij)
        for col in 0..g {
            let add = &c * &p[j][col];
            p[i][col] += add;
        }
        for row in 0..g {
            let sub = &c * &q[row][i];
            q[row][j] -= sub;
        }
    }
    (p, q)
}

fn to_matrix(m: &Big) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    IntMatrix::new(rows, cols, m.iter().flatten().cloned().map(Int::from).collect()).expect("sized")
}

/// Literal coalgebra axioms for `γ = (p_n)_n: A → ⊕_n A`.
fn grading_oracle(a: &AbObject, ps: &[Big]) -> bool {
    let g = a.gens();
    let orders: Vec<BigInt> = a.orders().iter().map(Int::to_big).collect();
    let k = ps.len();
    let mut sum = vec![vec![BigInt::zero(); g]; g];
    for p in ps {
        for i in 0..g {
            for j in 0..g {
                sum[i][j] += &p[i][j];
            }
        }
    }
    if !equal_mod(&sum, &big_identity(g), &orders) {
        return false;
    }
    // δ∘γ has block (m, n) = δ_mn p_n; Gγ∘γ has block (m, n) = p_n ∘ p_m
    (0..k).all(|m| {
        (0..k).all(|n| {
            let lhs = if m == n {
                ps[n].clone()
            } else {
                vec![vec![BigInt::zero(); g]; g]
            };
            let rhs = big_mul(&ps[n], &ps[m], g, g);
            equal_mod(&lhs, &rhs, &orders)
        })
    })
}

fn random_grading(rng: &mut ChaCha8Rng) -> Option<(GradingCoalgebra, Vec<Big>, bool)> {
    let torsion: Vec<i64> = match rng.gen_range(0..6) {
        0 => vec![2],
        1 => vec![3],
        2 => vec![2, 4],
        _ => vec![],
    };
    let free = rng.gen_range(if torsion.is_empty() { 1 } else { 0 }..=3);
    let a = AbObject::new(free, torsion.iter().map(|&t| Int::from(t)).collect()).ok()?;
    let g = a.gens();
    let k = rng.gen_range(1..=3);
    let mut degrees: Vec<i64> = Vec::new();
    while degrees.len() < k {
        let d = rng.gen_range(-2..=2);
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    let slot: Vec<usize> = (0..g).map(|_| rng.gen_range(0..k)).collect();
    let (p, q) = random_automorphism(rng, torsion.len(), free);
    let mut ps: Vec<Big> = (0..k)
        .map(|n| {
            let e: Big = (0..g)
                .map(|i| {
                    (0..g)
                        .map(|j| {
                            if i == j && slot[i] == n {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            big_mul(&big_mul(&p, &e, g, g), &q, g, g)
        })
        .collect();
    let tamper = rng.gen_bool(0.5);
    if tamper {
        match rng.gen_range(0..4) {
            0 => {
                let n = rng.gen_range(0..k);
                let (i, j) = (rng.gen_range(0..g), rng.gen_range(0..g));
                ps[n][i][j] += BigInt::from(rng.gen_range(1i64..=3));
            }
            1 => {
                // a second copy of one projection, in a fresh degree
                let extra = ps[rng.gen_range(0..k)].clone();
                ps.push(extra);
                degrees.push(degrees.iter().max().unwrap() + 1);
            }
            2 if k > 1 => {
                let n = rng.gen_range(0..k);
                ps.remove(n);
                degrees.remove(n);
            }
            _ => {
                let n = rng.gen_range(0..k);
                ps[n] = ps[n].iter().map(|row| row.iter().map(|x| x * 2).collect()).collect();
            }
        }
    }
    let projections: BTreeMap<i64, AbMorphism> = degrees
        .iter()
        .zip(&ps)
        .map(|(&d, p)| AbMorphism::new(a.clone(), a.clone(), to_matrix(p)).map(|m| (d, m)))
        .collect::<Result<_, _>>()
        .ok()?;
    Some((
        GradingCoalgebra {
            carrier: a,
            projections,
        },
        ps,
        tamper,
    ))
}

fn coalgebras(seed: u64) -> Outcome {
    let mut rng = corpus::rng(seed ^ 0x3a);
    let mut failures = Failures::new();
    let mut report = String::new();
    let (mut grading_valid, mut grading_invalid) = (0, 0);
    let mut generated = 0;
    while generated < 300 {
        let Some((c, ps, tampered)) = random_grading(&mut rng) else {
            continue;
        };
        generated += 1;
        let expected = grading_oracle(&c.carrier, &ps);
        let got = check_grading_coalgebra(&c).map(|r| r.valid);
        match got {
            Ok(v) if v == expected => {}
            other => failures.push(format!("grading #{generated}: library {other:?}, oracle {expected}")),
        }
        if expected {
            grading_valid += 1;
        } else {
            grading_invalid += 1;
        }
        let _ = writeln!(report, "grading {generated} tampered={tampered} valid={expected}");
    }
    if grading_valid < 50 || grading_invalid < 50 {
        failures.push(format!(
            "grading sample unbalanced: {grading_valid} valid, {grading_invalid} not"
        ));
    }

    let (mut dg_valid, mut dg_invalid) = (0, 0);
    for t in 0..300 {
        let len = rng.gen_range(2..=4);
        let f = corpus::random_family(&mut rng, len, 2, 2);
        let square_zero = (2..len as i64).all(|n| {
            let (dn, dm) = (f.d(n), f.d(n - 1));
            let prod = big_mul(
                &big(dm.matrix()),
                &big(dn.matrix()),
                dn.matrix().rows(),
                dn.matrix().cols(),
            );
            prod.iter().flatten().all(Zero::is_zero)
        });
        if check_dg_coalgebra(&f).holds() != square_zero {
            failures.push(format!("dg #{t}: library disagrees with d² oracle ({square_zero})"));
        }
        if square_zero {
            dg_valid += 1;
        } else {
            dg_invalid += 1;
        }
        let _ = writeln!(report, "dg {t} len={len} square_zero={square_zero}");
    }
    if dg_valid < 50 || dg_invalid < 50 {
        failures.push(format!("dg sample unbalanced: {dg_valid} valid, {dg_invalid} not"));
    }
    let summary = format!(
        "grading={} ({grading_valid} valid) dg=300 ({dg_valid} with d²=0)",
        grading_valid + grading_invalid
    );
    let report = format!("{summary}\n{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- 4: fusion maps

fn fusion_corpus() -> (Vec<ChainComplex>, Vec<GradedObject>) {
    let b = FreeComplexBounds {
        degrees: vec![0, 1, 2],
        max_rank: 2,
        max_entry: 2,
        exact_support: false,
    };
    let complexes = corpus::free_complexes(&b, u128::MAX).expect("enumerable");
    (complexes, corpus::free_graded(&[0, 1, 2], 2))
}

fn fusion_sweep(mode: ExecMode, complexes: &[ChainComplex], partners: &[GradedObject]) -> Outcome {
    let mut failures = Failures::new();
    // complexes on each partner, to serve as its coalgebra structure
    let mut over: BTreeMap<&GradedObject, Vec<usize>> = BTreeMap::new();
    for (i, x) in complexes.iter().enumerate() {
        over.entry(x.underlying()).or_default().push(i);
    }
    if complexes.len() != 7619 || partners.len() != 27 {
        failures.push(format!(
            "corpus has {} complexes and {} partners",
            complexes.len(),
            partners.len()
        ));
    }
    let indexed: Vec<(usize, &ChainComplex)> = complexes.iter().enumerate().collect();
    let results = sweep::map(mode, &indexed, |&(i, x)| {
        let mut f = Failures::new();
        let mut sample = String::new();
        for (j, vp) in partners.iter().enumerate() {
            let pair = i * partners.len() + j;
            let Some(candidates) = over.get(vp) else {
                f.push(format!("no complex on partner {j}"));
                continue;
            };
            let structure = &complexes[candidates[pair % candidates.len()]];
            let w = match fusion(vp, x) {
                Ok(w) => w,
                Err(e) => {
                    f.push(format!("({i}, {j}): no witness: {e}"));
                    continue;
                }
            };
            match check_fusion_compat(&w, Some(structure)) {
                Ok(c) if c.inverse_exact && c.me1 && c.me2 && c.me3 == Some(true) => {}
                other => f.push(format!("({i}, {j}): {other:?}")),
            }
            if pair.is_multiple_of(97) {
                // unimodular in every degree, and mutually inverse by direct products
                for (n, fw) in w.forward.maps() {
                    let inv = w.inverse.component(*n);
                    let (a, b) = (big(fw.matrix()), big(inv.matrix()));
                    let m = a.len();
                    let ok = a.iter().all(|r| r.len() == m)
                        && det(&a).abs() == BigInt::one()
                        && big_mul(&a, &b, m, m) == big_identity(m)
                        && big_mul(&b, &a, m, m) == big_identity(m);
                    if !ok {
                        f.push(format!("({i}, {j}): degree {n} fails the determinant oracle"));
                    }
                }
                let _ = write!(sample, "{}", serde_json::to_string(&w.forward).expect("serializable"));
            }
        }
        (f, digest(&sample))
    });
    let mut report = String::new();
    for (f, d) in results {
        failures.extend(f);
        let _ = write!(report, "{d:x};");
    }
    let pairs = complexes.len() * partners.len();
    let summary = format!("pairs={pairs} failures={}", failures.count);
    let report = format!("{summary}\n{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- 5: created duals, concrete

fn creation_concrete(mode: ExecMode, complexes: &[ChainComplex]) -> Outcome {
    let mut all: Vec<ChainComplex> = complexes.to_vec();
    all.extend(complexes.iter().map(corpus::torsion_variant));
    all.push(corpus::torsion_line(1));
    let results = sweep::map(mode, &all, |x| {
        let mut f = Failures::new();
        let free = x.underlying().components().values().all(|a| a.torsion().is_empty());
        let created = match create_dual_chain(x) {
            Ok(c) => c,
            Err(e) => {
                f.push(format!("{x:?}: {e}"));
                return (f, 0u8);
            }
        };
        let graded = dual_graded(x.underlying());
        if created.is_some() != free || graded.is_some() != free {
            f.push(format!(
                "free={free} but chain dual {} and graded dual {}",
                created.is_some(),
                graded.is_some()
            ));
        }
        if let (Some(c), Some(g)) = (&created, &graded) {
            if !c.checks.all_pass() {
                f.push(format!("certificates {:?}", c.checks));
            }
            if c.dual_complex.underlying() != &g.dual_object {
                f.push("created dual does not lie over the graded dual".into());
            }
            // k_{−n} = x_n* and d_k on k_{1−n} is (−1)^{n+1} d_nᵀ
            let k = &c.dual_complex;
            for (&n, a) in x.underlying().components() {
                if k.underlying().get(-n).free_rank() != a.free_rank() {
                    f.push(format!("rank of k in degree {} is wrong", -n));
                }
            }
            for n in x.underlying().support().chain(k.underlying().support().map(|m| 1 - m)) {
                let dn = x.d(n);
                let expected = dn.matrix().transpose().map_entries(|_, _, e| {
                    let e = e.to_big();
                    Int::from(if n % 2 == 0 { -e } else { e })
                });
                let got = k.d(1 - n);
                if got.matrix() != &expected {
                    f.push(format!(
                        "differential of k in degree {} is not the signed transpose",
                        1 - n
                    ));
                }
            }
        }
        (f, created.is_some() as u8)
    });
    let mut failures = Failures::new();
    let mut report = String::new();
    let mut dualizable = 0;
    for (f, d) in results {
        failures.extend(f);
        dualizable += d as usize;
        report.push(char::from(b'0' + d));
    }
    let summary = format!(
        "complexes={} dualizable={dualizable} failures={}",
        all.len(),
        failures.count
    );
    let report = format!("{summary}\n{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- 6, 7: abstract instances

/// `(n, opens)` for the interior-operator instances of the corpus.
fn topology_of(name: &str) -> Option<(u32, Vec<u32>)> {
    let rest = name.strip_prefix("interior-")?;
    let (n, opens) = rest.split_once('[')?;
    let n: u32 = n.parse().ok()?;
    let opens: Vec<u32> = (0..1u32 << n)
        .filter(|&m| {
            opens
                .trim_end_matches(']')
                .split(' ')
                .any(|l| l == fixtures::subset_label(m))
        })
        .collect();
    Some((n, opens))
}

fn interior(opens: &[u32], a: u32) -> u32 {
    opens.iter().filter(|&&o| o & !a == 0).fold(0, |acc, &o| acc | o)
}

fn carrier_label(em_label: &str) -> &str {
    em_label.trim_start_matches('(').split(", ").next().unwrap_or("")
}

/// Kan extensions in the powerset lattice: `lan_v u` exists iff `u ⊆ v`,
/// and is then `u` itself (the least `k` with `u ⊆ k ∩ v`).
fn powerset_lan_oracle(c: &FiniteMonoidalCategory, n: u32, f: &mut Failures) {
    for u in 0..1u32 << n {
        for v in 0..1u32 << n {
            let least = (0..1u32 << n)
                .filter(|&k| u & !(k & v) == 0)
                .find(|&k| (0..1u32 << n).all(|l| u & !(l & v) != 0 || k & !l == 0));
            let got = find_lan(c, v as usize, u as usize).map(|r| r.k);
            let want = least.map(fixtures::subset_label);
            if got != want || (u & !v == 0) != want.is_some() {
                f.push(format!("lan of {u:b} along {v:b}: got {got:?}, want {want:?}"));
            }
        }
    }
}

fn creation_abstract() -> Outcome {
    let mut failures = Failures::new();
    let mut report = String::new();
    let corpus = fixtures::comonad_corpus();
    // 1 + 1 + 4 + 29 topologies, 9 identity comonads, the zero comonad
    let topologies = corpus.iter().filter(|(n, _, _)| topology_of(n).is_some()).count();
    if topologies != 35 || corpus.len() != 45 {
        failures.push(format!(
            "corpus has {} instances, {topologies} of them topologies",
            corpus.len()
        ));
    }
    let (mut pairs, mut applicable) = (0usize, 0usize);
    for n in 0..=3 {
        powerset_lan_oracle(&fixtures::powerset(n), n, &mut failures);
    }
    for (name, c, g) in &corpus {
        let comonad = check_comonad(c, g);
        let hopf = check_hopf(c, g);
        let kan = verify_create_kan(c, g);
        for (what, v) in [("comonad", &comonad), ("hopf", &hopf), ("create-kan", &kan.verdict)] {
            if !v.passed() {
                failures.push(format!("{name}: {what}: {:?}", v.details));
            }
        }
        pairs += kan.pairs.len();
        let app = kan.pairs.iter().filter(|p| p.status != Status::NotApplicable).count();
        applicable += app;
        if let Some((_, opens)) = topology_of(name) {
            // G(v' ∩ v) = Gv' ∩ v for v open, so every fusion map is invertible
            let full = opens.iter().fold(0, |a, &o| a | o);
            let hopf_oracle = opens
                .iter()
                .all(|&v| (0..=full).all(|w| interior(&opens, w) & v == interior(&opens, w & v)));
            if !hopf_oracle || !hopf.passed() {
                failures.push(format!("{name}: Hopf oracle {hopf_oracle}"));
            }
            if kan.pairs.len() != opens.len() * opens.len() {
                failures.push(format!(
                    "{name}: {} coalgebra pairs for {} opens",
                    kan.pairs.len(),
                    opens.len()
                ));
            }
            let expected = opens
                .iter()
                .map(|&v| opens.iter().filter(|&&u| u & !v == 0).count())
                .sum::<usize>();
            if app != expected {
                failures.push(format!("{name}: {app} liftable pairs, expected {expected}"));
            }
            for p in &kan.pairs {
                if p.status == Status::Pass && p.k.as_deref().map(carrier_label) != Some(carrier_label(&p.u)) {
                    failures.push(format!("{name}: lan of {} along {} is {:?}", p.u, p.v, p.k));
                }
            }
        }
        let _ = writeln!(
            report,
            "{name}\n{}{}{}{}",
            comonad.to_text(),
            hopf.to_text(),
            kan.verdict.to_text(),
            serde_json::to_string(&kan.pairs).expect("serializable")
        );
    }
    let summary = format!("instances={} pairs={pairs} liftable={applicable}", corpus.len());
    let report = format!("{summary}\n{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

fn eilenberg_moore() -> Outcome {
    let mut failures = Failures::new();
    let mut report = String::new();
    let corpus = fixtures::comonad_corpus();
    for (name, c, g) in &corpus {
        let em = match build_em(c, g) {
            Ok(em) => em,
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                continue;
            }
        };
        let v = check_em(c, g, &em);
        if !v.passed() {
            failures.push(format!("{name}: {:?}", v.details));
        }
        let carriers: Vec<usize> = em.coalgebras.iter().map(|x| x.carrier).collect();
        let expected: Option<Vec<usize>> = if let Some((_, opens)) = topology_of(name) {
            Some(opens.iter().map(|&o| o as usize).collect())
        } else if name.starts_with("identity-") {
            Some(c.objects_canonical().to_vec())
        } else if name.starts_with("zero-") {
            Some(vec![c.object_id("0").expect("line")])
        } else {
            None
        };
        let mut sorted = carriers.clone();
        sorted.sort_unstable();
        if let Some(mut e) = expected {
            e.sort_unstable();
            if e != sorted {
                failures.push(format!("{name}: coalgebra carriers {sorted:?}, expected {e:?}"));
            }
        }
        let _ = write!(report, "{name}: {} objects\n{}", em.coalgebras.len(), v.to_text());
    }
    let summary = format!("instances={}", corpus.len());
    let report = format!("{summary}\n{:016x}\n", digest(&report));
    finish(summary, failures, report)
}

// ---------------------------------------------------------------- driver

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
}

const CRITERIA: [Criterion; 7] = [
    Criterion {
        id: 1,
        name: "smith normal form",
        limit: Some(Duration::from_secs(10)),
    },
    Criterion {
        id: 2,
        name: "duals in Ab",
        limit: None,
    },
    Criterion {
        id: 3,
        name: "coalgebra characterizations",
        limit: None,
    },
    Criterion {
        id: 4,
        name: "fusion maps",
        limit: Some(Duration::from_secs(60)),
    },
    Criterion {
        id: 5,
        name: "created duals of complexes",
        limit: None,
    },
    Criterion {
        id: 6,
        name: "created Kan extensions",
        limit: Some(Duration::from_secs(120)),
    },
    Criterion {
        id: 7,
        name: "Eilenberg-Moore categories",
        limit: None,
    },
];

fn run_all(mode: ExecMode, seed: u64, verbose: bool) -> (bool, String) {
    let (complexes, partners) = fusion_corpus();
    let mut all_pass = true;
    let mut full = String::new();
    for crit in &CRITERIA {
        let start = Instant::now();
        let out = match crit.id {
            1 => smith(seed),
            2 => ab_duals(),
            3 => coalgebras(seed),
            4 => fusion_sweep(mode, &complexes, &partners),
            5 => creation_concrete(mode, &complexes),
            6 => creation_abstract(),
            _ => eilenberg_moore(),
        };
        let elapsed = start.elapsed();
        let in_time = crit.limit.is_none_or(|l| elapsed < l);
        let pass = out.pass && in_time;
        all_pass &= pass;
        if verbose {
            let limit = crit
                .limit
                .map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
            println!(
                "{} criterion {}: {} — {} [{:.1} s{limit}]",
                if pass { "PASS" } else { "FAIL" },
                crit.id,
                crit.name,
                out.summary,
                elapsed.as_secs_f64()
            );
            if !out.pass {
                for line in out.report.lines().filter(|l| l.starts_with("  ")) {
                    println!("  {}", line.trim());
                }
            }
        }
        let _ = writeln!(full, "[{}]\n{}", crit.id, out.report);
    }
    (all_pass, full)
}

fn main() {
    // `cargo test -- --list` and similar harness probes
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let seed = corpus::seed_from_env();
    println!(
        "acceptance run, seed {seed}, {} mode",
        if ExecMode::default() == ExecMode::Parallel {
            "parallel"
        } else {
            "sequential"
        }
    );
    let (pass, first) = run_all(ExecMode::default(), seed, true);
    let start = Instant::now();
    let (_, second) = run_all(ExecMode::Sequential, seed, false);
    let same = first == second;
    println!(
        "{} criterion 8: determinism — rerun (sequential) byte-identical: {same}, {} report bytes [{:.1} s]",
        if same { "PASS" } else { "FAIL" },
        first.len(),
        start.elapsed().as_secs_f64()
    );
    if !(pass && same) {
        std::process::exit(1);
    }
}
