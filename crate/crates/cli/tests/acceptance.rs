//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails unexpectedly.
//!
//! Criterion 6 asks for `Col - Dist >= P - T` on every outcome. That
//! inequality can fail for correspondence assignments whose maps send two
//! adjacent kept neighbours to one colour (see the README). The line counts
//! such failures on the random suite and reports FAIL if any occur; every
//! failure must come from such a pair, and list instances must have none.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use ncp_core::bounds::{approx_eps, critical_density_count, ApproxVariant};
use ncp_core::correspondence::residual_assignment;
use ncp_core::graph::{clique_info, generators, reduce_by_cliques};
use ncp_core::harness::{enumerate_outcomes, exact_chromatic, monte_carlo_round, EnumerationOptions, MonteCarloOptions};
use ncp_core::ncp::{outcome_from_choices, run_round, sample_choices, vertex_stat, RoundOutcome};
use ncp_core::strong_edge::{
    c5_blowup, f_core, f_core_density_check, f_core_threshold, line_graph_square, strong_lemma_check,
    strong_neighbourhood_edge_count, strong_profile,
};
use ncp_core::{Colour, CorrespondenceAssignment, Graph, PartialColouring};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ncp");

enum Verdict {
    Pass(String),
    Fail(String),
    /// Fails as stated for a documented mathematical reason; the corrected
    /// statement was checked and holds.
    KnownFail(String),
}

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ncp(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn ncp_ok(args: &[&str]) -> Result<Output, String> {
    let o = ncp(args);
    if o.status.success() {
        Ok(o)
    } else {
        Err(format!(
            "ncp {} exited {:?}: {}",
            args.join(" "),
            o.status.code(),
            String::from_utf8_lossy(&o.stderr)
        ))
    }
}

fn json_of(bytes: &[u8]) -> Result<Value, String> {
    serde_json::from_slice(bytes).map_err(|e| format!("bad JSON report: {e}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

// ---- criterion 1 ----

/// Table 1 as printed.
const TABLE1: [(&str, &str); 45] = [
    ("0.02", "0.0029"), ("0.04", "0.0058"), ("0.06", "0.0085"), ("0.08", "0.0112"), ("0.10", "0.0138"),
    ("0.12", "0.0163"), ("0.14", "0.0187"), ("0.16", "0.0210"), ("0.18", "0.0233"), ("0.20", "0.0255"),
    ("0.22", "0.0277"), ("0.24", "0.0297"), ("0.26", "0.0318"), ("0.28", "0.0337"), ("0.30", "0.0356"),
    ("0.32", "0.0375"), ("0.34", "0.0393"), ("0.36", "0.0411"), ("0.38", "0.0428"), ("0.40", "0.0445"),
    ("0.42", "0.0461"), ("0.44", "0.0477"), ("0.46", "0.0492"), ("0.48", "0.0507"), ("0.50", "0.0522"),
    ("0.52", "0.0536"), ("0.54", "0.0550"), ("0.56", "0.0564"), ("0.58", "0.0577"), ("0.60", "0.0590"),
    ("0.62", "0.0603"), ("0.64", "0.0615"), ("0.66", "0.0627"), ("0.68", "0.0639"), ("0.70", "0.0651"),
    ("0.72", "0.0662"), ("0.74", "0.0673"), ("0.76", "0.0684"), ("0.78", "0.0694"), ("0.80", "0.0704"),
    ("0.82", "0.0715"), ("0.84", "0.0724"), ("0.86", "0.0734"), ("0.88", "0.0743"), ("0.90", "0.0752"),
];

fn table_one() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("t.csv");
    let t = Instant::now();
    ncp_ok(&["bounds", "table1", "--out", path_str(&out)])?;
    let secs = t.elapsed().as_secs_f64();
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    ensure!(lines.first() == Some(&"alpha,eps"), "header {:?}", lines.first());
    ensure!(lines.len() == 46, "{} data rows", lines.len() - 1);
    for (line, (a, e)) in lines[1..].iter().zip(TABLE1) {
        ensure!(*line == format!("{a},{e}"), "row {line:?}, expected {a},{e}");
    }
    ensure!(secs < 1.0, "took {secs:.3}s");
    Ok(format!("45/45 rows match exactly in {secs:.3}s"))
}

// ---- criterion 2 ----

fn constant_relations() -> Check {
    let root_e = 0.5f64.exp();
    let d1 = (root_e * 0.1827 - 0.3012).abs();
    let d2 = (root_e * 0.0778 - 0.1283).abs();
    ensure!(d1 <= 5e-4, "√e·0.1827 is off 0.3012 by {d1:e}");
    ensure!(d2 <= 5e-4, "√e·0.0778 is off 0.1283 by {d2:e}");
    let (a_ours, b_ours) = ApproxVariant::Ours.coefficients();
    let (a_bj, b_bj) = ApproxVariant::BruhnJoos.coefficients();
    ensure!((root_e * a_bj - a_ours).abs() <= 5e-4 && (root_e * b_bj - b_ours).abs() <= 5e-4, "library coefficients");
    let lib = approx_eps(0.24, ApproxVariant::BruhnJoos).map_err(|e| e.to_string())?;
    let cli = json_of(&ncp_ok(&["bounds", "approx", "--delta", "0.24", "--variant", "bruhn-joos"])?.stdout)?;
    let cli = cli["result"]["eps"].as_f64().ok_or("no eps in report")?;
    ensure!((lib - 0.0347).abs() <= 5e-4, "approx_eps = {lib}");
    ensure!(cli == lib, "CLI {cli} differs from library {lib}");
    Ok(format!("|√e·0.1827-0.3012| = {d1:.2e}, |√e·0.0778-0.1283| = {d2:.2e}, approx = {lib:.5}"))
}

// ---- criterion 3 ----

fn strong_edge_constants() -> Check {
    let a = json_of(&ncp_ok(&["bounds", "constants"])?.stdout)?;
    let b = json_of(&ncp_ok(&["bounds", "constants"])?.stdout)?;
    let (ra, rb) = (&a["result"], &b["result"]);
    let f2 = ra["f2"].as_f64().ok_or("no f2")?;
    let f2b = rb["f2"].as_f64().ok_or("no f2")?;
    ensure!(f2 < 1.309, "f2 = {f2}");
    ensure!((f2 - f2b).abs() <= 1e-6, "f2 varies: {f2} vs {f2b}");
    let exact = Ratio::new(2i64, 1) * (Ratio::from_integer(1) - Ratio::new(825, 10_000));
    ensure!(exact == Ratio::new(367, 200), "(1-0.0825)·2 = {exact}");
    ensure!(ra["coefficient_exact"] == "367/200", "coefficient {}", ra["coefficient_exact"]);
    ensure!(ra["coefficient"].as_f64() == Some(1.835), "coefficient {}", ra["coefficient"]);
    let c = &ra["condition"];
    let margin = c["margin"].as_f64().ok_or("no margin")?;
    let extended = c["margin_extended"].as_str().ok_or("no extended margin")?;
    let digits = extended
        .split(['e', 'E'])
        .next()
        .unwrap_or("")
        .chars()
        .filter(char::is_ascii_digit)
        .count();
    ensure!(digits >= 30, "{digits} digits in {extended}");
    ensure!(margin.abs() < 5e-4, "margin {margin}");
    Ok(format!("f2 = {f2:.9}, coefficient 367/200, margin {extended} ({digits} digits)"))
}

// ---- criterion 4 ----

fn keep_exactness() -> Check {
    let cases = [
        ("K2", generators::complete(2), 1usize),
        ("K3", generators::complete(3), 2),
        ("K3", generators::complete(3), 3),
        ("C4", generators::cycle(4), 2),
    ];
    let t = Instant::now();
    let mut shown = Vec::new();
    for (name, g, k) in cases {
        let c = CorrespondenceAssignment::uniform_lists(&g, k).map_err(|e| e.to_string())?;
        let r = enumerate_outcomes(&g, &c, EnumerationOptions::default()).map_err(|e| e.to_string())?;
        let d = g.max_degree() as i32;
        let closed = (Ratio::from_integer(1u128) - Ratio::new(1, 2 * k as u128)).pow(d);
        for v in &r.vertices {
            ensure!(v.keep == closed, "{name} k={k} vertex {}: {} vs {closed}", v.vertex, v.keep);
        }
        shown.push(format!("{name} k={k}: {closed}"));
    }
    let secs = t.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.2}s");
    Ok(shown.join(", "))
}

// ---- criterion 5 ----

fn monte_carlo() -> Check {
    let t = Instant::now();
    let g = generators::random_regular(200, 20, 2024).map_err(|e| e.to_string())?;
    let c = CorrespondenceAssignment::uniform_lists(&g, 15).map_err(|e| e.to_string())?;
    let r = monte_carlo_round(&g, &c, 10_000, 11, MonteCarloOptions::default()).map_err(|e| e.to_string())?;
    let closed = (1.0 - 1.0 / 30.0f64).powi(20);
    let dev = (r.keep_fraction.mean - closed).abs();
    let secs = t.elapsed().as_secs_f64();
    ensure!(dev <= 4.0 * r.keep_fraction.se, "keep {} vs {closed}, se {}", r.keep_fraction.mean, r.keep_fraction.se);
    ensure!(secs < 60.0, "took {secs:.1}s");
    Ok(format!(
        "keep {:.6} vs {closed:.6}, {:.2} SE, {secs:.1}s",
        r.keep_fraction.mean,
        dev / r.keep_fraction.se
    ))
}

// ---- criterion 6 ----

fn random_graph(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.gen_range(1..=max_n);
    let p: f64 = r.gen_range(0.1..0.9);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| r.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn random_sets(r: &mut ChaCha8Rng, n: usize, max_k: usize, palette: usize) -> Vec<Vec<Colour>> {
    (0..n)
        .map(|_| {
            let k = r.gen_range(1..=max_k);
            let mut all: Vec<Colour> = (0..palette as Colour).collect();
            all.shuffle(r);
            all.truncate(k);
            all
        })
        .collect()
}

fn random_instance(r: &mut ChaCha8Rng, g: &Graph, lists: bool) -> CorrespondenceAssignment {
    let sets = random_sets(r, g.n(), 4, 5);
    if lists {
        return CorrespondenceAssignment::from_lists(g, sets).unwrap();
    }
    let maps = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut a = sets[u].clone();
            let mut b = sets[v].clone();
            a.shuffle(r);
            b.shuffle(r);
            let keep = r.gen_range(0..=a.len().min(b.len()));
            ((u, v), a.into_iter().zip(b).take(keep).collect())
        })
        .collect();
    CorrespondenceAssignment::new(g, sets, maps).unwrap()
}

/// Two adjacent kept neighbours of `u` whose colours correspond to the same
/// colour at `u`.
fn class_has_edge(g: &Graph, c: &CorrespondenceAssignment, o: &RoundOutcome, u: usize) -> bool {
    let at_u = |v: usize| {
        let e = g.edge_id(u, v).unwrap();
        o.kept[v].then(|| c.correspond(e, v, o.f1[v])).flatten()
    };
    let nbrs = g.neighbours(u);
    nbrs.iter()
        .any(|&a| nbrs.iter().any(|&b| a < b && g.has_edge(a, b) && at_u(a).is_some() && at_u(a) == at_u(b)))
}

fn colourings(sets: &[&[Colour]], allow_none: bool) -> Vec<Vec<Option<Colour>>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::new();
        for prefix in &out {
            for x in s.iter().map(|&c| Some(c)).chain(allow_none.then_some(None)) {
                let mut p: Vec<Option<Colour>> = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Every valid partial colouring, extended every possible way: the union is
/// valid exactly when the extension is valid for the residual assignment.
fn extension_checks(g: &Graph, c: &CorrespondenceAssignment) -> Result<u64, String> {
    let sets: Vec<&[Colour]> = (0..c.n()).map(|v| c.colour_set(v)).collect();
    let mut checked = 0;
    for f in colourings(&sets, true) {
        let f = PartialColouring(f);
        if !c.is_valid_colouring(g, &f) {
            continue;
        }
        let res = residual_assignment(g, c, &f).map_err(|e| e.to_string())?;
        let rest: Vec<&[Colour]> = res.vertices.iter().map(|&v| c.colour_set(v)).collect();
        for h in colourings(&rest, false) {
            let h = PartialColouring(h);
            let whole = res.extend(&f, &h);
            let in_residual = (0..h.len()).all(|i| res.assignment.colour_set(i).contains(&h.get(i).unwrap()));
            let expected = in_residual && res.assignment.is_valid_colouring(&res.graph, &h);
            ensure!(
                whole.is_total() && c.is_valid_colouring(g, &whole) == expected,
                "extension mismatch on {:?}",
                g.edges()
            );
            checked += 1;
        }
    }
    Ok(checked)
}

#[derive(Default)]
struct Soundness {
    outcomes: u64,
    vertex_checks: u64,
    literal_violations: u64,
    list_violations: u64,
    unexplained: u64,
    extensions: u64,
    small_instances: u64,
}

fn soundness() -> Result<Soundness, String> {
    let mut s = Soundness::default();
    let mut tally = |g: &Graph, c: &CorrespondenceAssignment, o: &RoundOutcome, lists: bool| -> Result<(), String> {
        ensure!(c.is_valid_colouring(g, &o.f), "invalid partial colouring on {:?}", g.edges());
        s.outcomes += 1;
        for u in 0..g.n() {
            ensure!(o.f.get(u) == o.kept[u].then_some(o.f1[u]), "kept colour mismatch");
            let v = vertex_stat(g, c, o, u);
            s.vertex_checks += 1;
            if (v.col as i64 - v.dist as i64) < v.p as i64 - v.t as i64 {
                s.literal_violations += 1;
                if lists {
                    s.list_violations += 1;
                }
                if !class_has_edge(g, c, o, u) {
                    s.unexplained += 1;
                }
            }
        }
        Ok(())
    };
    for seed in 0..10_000u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut r, 9);
        let lists = seed % 2 == 0;
        let c = random_instance(&mut r, &g, lists);
        let (f1, d) = sample_choices(&g, &c, seed);
        tally(&g, &c, &outcome_from_choices(&g, &c, f1, d), lists)?;
        let total = c
            .truncate(c.min_set_size())
            .and_then(|t| t.totalize())
            .map_err(|e| e.to_string())?;
        let o = run_round(&g, &total, seed).map_err(|e| e.to_string())?;
        ensure!(o == run_round(&g, &total, seed).map_err(|e| e.to_string())?, "run_round not deterministic");
        tally(&g, &total, &o, false)?;
        if g.n() <= 5 {
            s.small_instances += 1;
            s.extensions += extension_checks(&g, &c)?;
        }
    }
    Ok(s)
}

/// A star whose leaf pairs 1-2 and 3-4 carry swap maps. With every
/// tentative colour 1 and every spoke pointing at the centre, all leaves are
/// kept and the centre has `Col - Dist = 3 < 4 = P - T`.
fn constructed_violation() -> Result<(i64, i64), String> {
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).map_err(|e| e.to_string())?;
    let id = vec![(0, 0), (1, 1)];
    let swap = vec![(0, 1), (1, 0)];
    let maps = vec![
        ((0, 1), id.clone()),
        ((0, 2), id.clone()),
        ((0, 3), id.clone()),
        ((0, 4), id),
        ((1, 2), swap.clone()),
        ((3, 4), swap),
    ];
    let c = CorrespondenceAssignment::new(&g, vec![vec![0, 1]; 5], maps).map_err(|e| e.to_string())?;
    let direction: Vec<usize> = g.edges().iter().map(|&(u, _)| u).collect();
    let o = outcome_from_choices(&g, &c, vec![1; 5], direction);
    ensure!(c.is_valid_colouring(&g, &o.f), "constructed outcome is not a valid partial colouring");
    let v = vertex_stat(&g, &c, &o, 0);
    Ok((v.col as i64 - v.dist as i64, v.p as i64 - v.t as i64))
}

fn procedure_soundness() -> Verdict {
    let constructed = match constructed_violation() {
        Ok(x) => x,
        Err(e) => return Verdict::Fail(e),
    };
    match soundness() {
        Err(e) => Verdict::Fail(e),
        Ok(s) if s.list_violations > 0 || s.unexplained > 0 => Verdict::Fail(format!(
            "{} violations on list instances, {} without an adjacent pair in one class",
            s.list_violations, s.unexplained
        )),
        Ok(s) => {
            let body = format!(
                "10000 instances, {} outcomes valid, {} extension checks on {} instances with n <= 5; \
                 Col-Dist >= P-T failed at {} of {} vertex checks, none on list instances; \
                 a constructed correspondence instance gives Col-Dist = {} < P-T = {}",
                s.outcomes,
                s.extensions,
                s.small_instances,
                s.literal_violations,
                s.vertex_checks,
                constructed.0,
                constructed.1
            );
            if s.literal_violations > 0 {
                Verdict::KnownFail(body)
            } else {
                Verdict::Pass(body)
            }
        }
    }
}

// ---- criterion 7 ----

fn critical_density() -> Check {
    type Q = Ratio<i128>;
    let mut cells = 0;
    for delta in [50i128, 100, 500] {
        for alpha in [Q::new(1, 5), Q::new(1, 3), Q::new(1, 2)] {
            let mut j = 0;
            while Q::new(j, 10_000) < alpha / 2 {
                let eps = Q::new(j, 10_000);
                let k = ((Q::from_integer(1) - eps) * (delta + 1)).ceil().to_integer();
                let omega = ((Q::from_integer(1) - alpha) * (delta + 1)).floor().to_integer();
                let count = critical_density_count(k as u64, delta as u64, omega as u64);
                let count = Q::new(*count.numer() as i128, *count.denom() as i128);
                // density δ = (α - 2ε)²/2 against C(Δ, 2)
                let need = (alpha - eps * 2).pow(2) / 2 * (delta * (delta - 1) / 2);
                ensure!(count >= need, "Δ={delta} α={alpha} ε={eps}: {count} < {need}");
                cells += 1;
                j += 1;
            }
        }
    }
    Ok(format!("{cells} grid cells, exact rationals"))
}

// ---- criterion 8 ----

fn lemma_suite() -> Check {
    let t = Instant::now();
    let (mut graphs, mut edges) = (0, 0);
    for d in 3..=6usize {
        for n in [12usize, 16, 20, 30, 40, 60] {
            if n * d % 2 == 1 {
                continue;
            }
            for seed in 0..3 {
                let h = generators::random_regular(n, d, seed).map_err(|e| e.to_string())?;
                let l2 = line_graph_square(&h).map_err(|e| e.to_string())?;
                for e in 0..h.m() {
                    let p = strong_profile(&h, e);
                    let ns = strong_neighbourhood_edge_count(&l2, e);
                    let r = strong_lemma_check(&p, ns).map_err(|e| e.to_string())?;
                    ensure!(r.all_hold(), "n={n} d={d} seed={seed} edge {e}: {r:?}");
                    edges += 1;
                }
                graphs += 1;
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ensure!(graphs >= 50, "only {graphs} graphs");
    ensure!(secs < 120.0, "took {secs:.1}s");
    Ok(format!("{graphs} regular graphs, {edges} edges, all four inequalities hold"))
}

// ---- criterion 9 ----

fn brute_core(g: &Graph, t: Ratio<i64>) -> Vec<usize> {
    let n = g.n();
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..1 << n {
        let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if set.len() <= best.len() {
            continue;
        }
        let ok = set.iter().all(|&v| {
            let deg = g.neighbours(v).iter().filter(|&&w| mask >> w & 1 == 1).count() as i64;
            Ratio::from_integer(deg) >= t
        });
        if ok {
            best = set;
        }
    }
    best
}

fn f_core_checks() -> Check {
    let mut cases = 0;
    for seed in 0..150u64 {
        let mut r = ChaCha8Rng::seed_from_u64(1_000_000 + seed);
        let g = random_graph(&mut r, 12);
        for t in [Ratio::new(1, 1), Ratio::new(5, 2), Ratio::new(4, 1), Ratio::new(13, 3)] {
            ensure!(f_core(&g, t).members == brute_core(&g, t), "seed {seed} threshold {t}");
            cases += 1;
        }
        // the same graph as a host: its line graph square at the default η
        if g.m() > 0 && g.m() <= 12 {
            let l2 = line_graph_square(&g).map_err(|e| e.to_string())?;
            let t = f_core_threshold(0.164, g.max_degree()).map_err(|e| e.to_string())?;
            ensure!(f_core(&l2.graph, t).members == brute_core(&l2.graph, t), "host seed {seed}");
            cases += 1;
        }
    }
    let mut cores = Vec::new();
    for k in [2, 3] {
        let h = c5_blowup(k).map_err(|e| e.to_string())?;
        let r = f_core_density_check(&h, 0.164).map_err(|e| e.to_string())?;
        ensure!(r.passes && r.passes_full, "c5_blowup({k}): {r:?}");
        cores.push(r.core_size);
    }
    Ok(format!(
        "{cases} core comparisons; density check passes on c5_blowup(2), c5_blowup(3) (core sizes {:?}, empty below Δ = 2/η)",
        cores
    ))
}

// ---- criterion 10 ----

fn read_dimacs_edges(text: &str) -> Vec<(usize, usize)> {
    text.lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            (it.next()? == "e").then(|| {
                let u: usize = it.next().unwrap().parse().unwrap();
                let v: usize = it.next().unwrap().parse().unwrap();
                (u.min(v) - 1, u.max(v) - 1)
            })
        })
        .collect()
}

fn tight_example() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let g = dir.path().join("g.dimacs");
    let s = dir.path().join("s.json");
    ncp_ok(&["gen", "--c5-blowup", "3", "--out", path_str(&g)])?;
    ncp_ok(&["strong-edge", "--input", path_str(&g), "--out", path_str(&s)])?;
    let report = json_of(&std::fs::read(&s).map_err(|e| e.to_string())?)?;
    let r = &report["result"];
    let num = r["numColours"].as_u64().ok_or("no numColours")?;
    let colours: Vec<u64> = r["colours"]
        .as_array()
        .ok_or("no colours")?
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();

    // canonical edge order, which is how the report indexes colours
    let mut edges = read_dimacs_edges(&std::fs::read_to_string(&g).map_err(|e| e.to_string())?);
    edges.sort_unstable();
    ensure!(colours.len() == edges.len(), "{} colours for {} edges", colours.len(), edges.len());
    let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    for &(u, v) in &edges {
        adj[u][v] = true;
        adj[v][u] = true;
        deg[u] += 1;
        deg[v] += 1;
    }
    let max_degree = deg.iter().copied().max().unwrap_or(0);
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            let shared = a == c || a == d || b == c || b == d;
            let joined = [a, b].iter().any(|&x| [c, d].iter().any(|&y| adj[x][y]));
            if shared || joined {
                ensure!(colours[i] != colours[j], "edges {i} and {j} share colour {}", colours[i]);
            }
        }
    }
    let mut distinct = colours.clone();
    distinct.sort_unstable();
    distinct.dedup();
    ensure!(num == 45 && distinct.len() == 45, "numColours {num}, {} distinct", distinct.len());
    ensure!(4 * num as usize == 5 * max_degree * max_degree, "45 != 1.25·{max_degree}²");
    Ok(format!("{num} colours = 1.25·Δ² with Δ = {max_degree}, distance-2 scan clean"))
}

// ---- criterion 11 ----

fn reduction() -> Check {
    for n in 1..=12usize {
        let g = generators::complete(n);
        let trace = reduce_by_cliques(&g).map_err(|e| e.to_string())?;
        let mut removed: Vec<usize> = Vec::new();
        for round in &trace.rounds {
            let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
            let before = g.induced_subgraph(&keep);
            let info = clique_info(&before).map_err(|e| e.to_string())?;
            ensure!(info.omega == round.omega_before, "K{n}: ω before");
            ensure!(round.omega_after + 1 == round.omega_before, "K{n}: ω must drop by one");
            ensure!(round.max_degree_after < round.max_degree_before, "K{n}: Δ must drop");
            removed.extend(&round.removed);
        }
        let omega = clique_info(&trace.graph).map_err(|e| e.to_string())?.omega as i64;
        let delta = if trace.graph.n() == 0 { -1 } else { trace.graph.max_degree() as i64 };
        ensure!(3 * omega <= 2 * (delta + 1), "K{n}: stopped at ω={omega}, Δ={delta}");
        let chi = exact_chromatic(&g).map_err(|e| e.to_string())?;
        let rest = exact_chromatic(&trace.graph).map_err(|e| e.to_string())?;
        ensure!(chi <= rest + trace.peeled(), "K{n}: χ={chi} > {rest} + {}", trace.peeled());
        ensure!(trace.peeled() == n, "K{n}: peeled {}", trace.peeled());
    }
    Ok("K1..K12 peel completely, invariants and χ bound hold".into())
}

// ---- criterion 12 ----

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let g = dir.path().join("g.dimacs");
    ncp_ok(&["gen", "--random-regular", "60,6", "--seed", "3", "--out", path_str(&g)])?;
    let gs = path_str(&g).to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["color", "--input", &gs, "--k", "5", "--seed", "7"],
        vec!["color", "--gen", "random-regular:60,8", "--k", "8", "--maps", "random", "--seed", "7", "--profile", "practical", "--on-exhausted", "use-best"],
        vec!["strong-edge", "--gen", "random-regular:30,4", "--seed", "3"],
        vec!["simulate", "monte-carlo", "--gen", "random-regular:40,6", "--k", "5", "--maps", "random", "--trials", "2000", "--seed", "5", "--pairs", "--residual-sparsity"],
        vec!["simulate", "residual", "--gen", "random-regular:40,6", "--k", "5", "--trials", "40", "--rounds", "3", "--seed", "5"],
        vec!["gen", "--random-regular", "50,5", "--seed", "9"],
        vec!["gen", "--gnp", "30,0.3", "--seed", "9"],
        vec!["oracle", "enumerate", "--gen", "cycle:4", "--k", "2", "--maps", "random", "--seed", "4"],
    ];
    for args in &commands {
        let base = ncp(args);
        let mut runs = vec![ncp(args)];
        for threads in ["1", "4"] {
            let mut with: Vec<&str> = vec!["--threads", threads];
            with.extend(args.iter());
            runs.push(ncp(&with));
        }
        ensure!(!base.stdout.is_empty(), "ncp {} wrote nothing", args.join(" "));
        for r in &runs {
            ensure!(r.status.code() == base.status.code(), "ncp {}: exit codes differ", args.join(" "));
            ensure!(r.stdout == base.stdout, "ncp {}: reports differ", args.join(" "));
        }
    }
    Ok(format!("{} randomized commands byte-identical across reruns and --threads 1/4", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("table 1", Box::new(|| wrap(table_one()))),
        ("constant relations", Box::new(|| wrap(constant_relations()))),
        ("strong-edge constants", Box::new(|| wrap(strong_edge_constants()))),
        ("keep probability exactness", Box::new(|| wrap(keep_exactness()))),
        ("Monte Carlo consistency", Box::new(|| wrap(monte_carlo()))),
        ("procedure soundness", Box::new(procedure_soundness)),
        ("density arithmetic", Box::new(|| wrap(critical_density()))),
        ("strong neighbourhood inequalities", Box::new(|| wrap(lemma_suite()))),
        ("F-core", Box::new(|| wrap(f_core_checks()))),
        ("tight example", Box::new(|| wrap(tight_example()))),
        ("clique reduction", Box::new(|| wrap(reduction()))),
        ("determinism", Box::new(|| wrap(determinism()))),
    ];
    let (mut pass, mut known, mut failed) = (0, 0, 0);
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::Fail(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match v {
            Verdict::Pass(d) => {
                pass += 1;
                ("PASS", d)
            }
            Verdict::KnownFail(d) => {
                known += 1;
                ("FAIL", format!("{d} [false as stated for correspondence assignments; corrected form holds]"))
            }
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} ({secs:.2}s): {detail}", i + 1);
    }
    println!("acceptance: {pass} passed, {known} failed as documented, {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}

fn wrap(c: Check) -> Verdict {
    match c {
        Ok(d) => Verdict::Pass(d),
        Err(e) => Verdict::Fail(e),
    }
}
