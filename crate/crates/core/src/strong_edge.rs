//! Strong edge colouring through the square of the line graph.

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::strong_f;
use crate::correspondence::CorrespondenceAssignment;
use crate::error::{Error, Result};
use crate::graph::{min_degree_ordering, Graph};
use crate::ncp::{iterative_colour, DriverParams};
use crate::numeric::parse_decimal_ratio;
use crate::Colour;

pub const DEFAULT_ETA: f64 = 0.164;
pub const DEFAULT_EPS: f64 = 0.0825;

/// `L²(h)`: vertex `i` is edge `i` of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGraphSquare {
    pub graph: Graph,
    pub edges: Vec<(usize, usize)>,
}

/// Edges of `h` that touch `N[u] ∪ N[v]`, other than `uv` itself.
fn strong_neighbourhood(h: &Graph, e: usize, mark: &mut [bool]) -> Vec<usize> {
    let (u, v) = h.edge(e);
    let mut out = Vec::new();
    for &x in [u, v].iter().chain(h.neighbours(u)).chain(h.neighbours(v)) {
        for &f in h.incident_edges(x) {
            if f != e && !mark[f] {
                mark[f] = true;
                out.push(f);
            }
        }
    }
    for &f in &out {
        mark[f] = false;
    }
    out.sort_unstable();
    out
}

pub fn line_graph_square(h: &Graph) -> Result<LineGraphSquare> {
    if h.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut mark = vec![false; h.m()];
    let mut pairs = Vec::new();
    for e in 0..h.m() {
        pairs.extend(strong_neighbourhood(h, e, &mut mark).into_iter().filter(|&f| f > e).map(|f| (e, f)));
    }
    Ok(LineGraphSquare {
        graph: Graph::from_edges(h.m(), &pairs)?,
        edges: h.edges().to_vec(),
    })
}

/// Five independent groups of `k` vertices, consecutive groups completely
/// joined. Group `i` holds vertices `i*k .. (i+1)*k`.
pub fn c5_blowup(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("blow-up factor must be at least 1".into()));
    }
    let mut edges = Vec::with_capacity(5 * k * k);
    for i in 0..5 {
        let j = (i + 1) % 5;
        for a in 0..k {
            for b in 0..k {
                edges.push((i * k + a, j * k + b));
            }
        }
    }
    Graph::from_edges(5 * k, &edges)
}

/// Local geometry around an edge `uv`, with the raw integer counts behind
/// each ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongProfile {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub max_degree: usize,
    /// `N(u) ∪ N(v) \ {u, v}`.
    pub x: Vec<usize>,
    /// `N(X) \ (X ∪ {u, v})`.
    pub y: Vec<usize>,
    /// `|N(u) ∩ N(v)|`.
    pub common: usize,
    /// `|E(H[X])|`.
    pub x_edges: usize,
    /// `Σ_{y ∈ Y} d_X(y) (Δ - d_X(y))`.
    pub gamma_sum: u64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// `d^s(uv)`.
    pub ds: usize,
    /// 4-cycles `x₁y₁x₂y₂` with `x_i ∈ X`, `y_i ∈ Y`, each counted once.
    pub c4: u64,
}

pub fn strong_profile(h: &Graph, e: usize) -> StrongProfile {
    let (u, v) = h.edge(e);
    let d = h.max_degree();
    let n = h.n();
    let mut in_x = vec![false; n];
    for &w in h.neighbours(u).iter().chain(h.neighbours(v)) {
        if w != u && w != v {
            in_x[w] = true;
        }
    }
    let x: Vec<usize> = (0..n).filter(|&w| in_x[w]).collect();
    let mut d_x = vec![0usize; n];
    for &a in &x {
        for &b in h.neighbours(a) {
            d_x[b] += 1;
        }
    }
    let y: Vec<usize> = (0..n)
        .filter(|&w| d_x[w] > 0 && !in_x[w] && w != u && w != v)
        .collect();
    let x_edges = x.iter().map(|&a| d_x[a]).sum::<usize>() / 2;
    let gamma_sum = y.iter().map(|&w| (d_x[w] * (d - d_x[w])) as u64).sum();
    let mut in_y = vec![false; n];
    y.iter().for_each(|&w| in_y[w] = true);
    let mut c4 = 0u64;
    for (i, &a) in x.iter().enumerate() {
        for &b in &x[i + 1..] {
            let shared = h
                .neighbours(a)
                .iter()
                .filter(|&&w| in_y[w] && h.has_edge(b, w))
                .count() as u64;
            c4 += shared * shared.saturating_sub(1) / 2;
        }
    }
    let mut mark = vec![false; h.m()];
    let ds = strong_neighbourhood(h, e, &mut mark).len();
    let df = d as f64;
    let common = h.common_neighbour_count(u, v);
    let nz = |p: f64| if d == 0 { 0.0 } else { p };
    StrongProfile {
        edge: e,
        u,
        v,
        max_degree: d,
        common,
        x_edges,
        gamma_sum,
        alpha: nz(common as f64 / df),
        beta: nz(x_edges as f64 / (df * df)),
        gamma: nz(gamma_sum as f64 / df.powi(3)),
        ds,
        c4,
        x,
        y,
    }
}

/// `|E(L²[N^s(e)])|`.
pub fn strong_neighbourhood_edge_count(l2: &LineGraphSquare, e: usize) -> usize {
    induced_edge_count(&l2.graph, l2.graph.neighbours(e))
}

fn induced_edge_count(g: &Graph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    set.iter().for_each(|&a| inside[a] = true);
    set.iter()
        .map(|&a| g.neighbours(a).iter().filter(|&&b| inside[b]).count())
        .sum::<usize>()
        / 2
}

/// The improved upper bound on `|E(L²[N^s(uv)])|` for a profile, in floating
/// point: `(2-α-β-γ/2)Δ⁴ - 2C₄ - γ²Δ⁴/(2(2-α-β)) + (γ/2-2)Δ³`.
pub fn strong_neighbourhood_edge_bound(p: &StrongProfile) -> Result<f64> {
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    if a + b >= 2.0 {
        return Err(Error::InvalidParameter(format!("alpha + beta = {} must be below 2", a + b)));
    }
    let d = p.max_degree as f64;
    let d3 = d.powi(3);
    let d4 = d3 * d;
    Ok((2.0 - a - b - g / 2.0) * d4 - 2.0 * p.c4 as f64 - g * g / (2.0 * (2.0 - a - b)) * d4 + (g / 2.0 - 2.0) * d3)
}

type Q = Ratio<i128>;

/// Each display evaluated exactly: the measured side and the bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongInequality {
    pub measured: String,
    pub bound: String,
    pub holds: bool,
}

impl StrongInequality {
    fn at_most(measured: Q, bound: Q) -> Self {
        StrongInequality {
            holds: measured <= bound,
            measured: measured.to_string(),
            bound: bound.to_string(),
        }
    }

    fn at_least(measured: Q, bound: Q) -> Self {
        StrongInequality {
            holds: measured >= bound,
            measured: measured.to_string(),
            bound: bound.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongLemmaReport {
    pub edge: usize,
    /// `d^s ≤ (2-α-β)Δ² - 2Δ`.
    pub strong_degree: StrongInequality,
    /// `C₄ ≥ ½((2-α-2β-γ)²Δ⁴/(2(2-α)²) - (7-γ/2)Δ³)`.
    pub four_cycles: StrongInequality,
    /// `|E(L²[N^s])| ≤ (2-α-β-γ/2)Δ⁴ - 2C₄ + (γ/2-2)Δ³`.
    pub neighbourhood_edges: StrongInequality,
    /// The same with `γ²Δ⁴/(2(2-α-β))` also subtracted.
    pub improved: StrongInequality,
}

impl StrongLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.strong_degree.holds && self.four_cycles.holds && self.neighbourhood_edges.holds && self.improved.holds
    }
}

/// Checks the strong-neighbourhood inequalities exactly for one profile.
/// Multiplying through by powers of Δ leaves integer data: with `c` common
/// neighbours, `x` edges in `X` and `G = γΔ³`.
pub fn strong_lemma_check(p: &StrongProfile, ns_edges: usize) -> Result<StrongLemmaReport> {
    let d = p.max_degree as i128;
    let c = p.common as i128;
    let x = p.x_edges as i128;
    let g = p.gamma_sum as i128;
    let q = Q::from_integer;
    let two_minus_alpha = 2 * d - c; // (2-α)Δ
    let two_minus_ab = 2 * d * d - c * d - x; // (2-α-β)Δ²
    if two_minus_alpha <= 0 || two_minus_ab <= 0 {
        return Err(Error::InvalidParameter("alpha + beta must be below 2".into()));
    }
    let strong_degree = StrongInequality::at_most(q(p.ds as i128), q(two_minus_ab - 2 * d));

    // (2-α-2β-γ)Δ³
    let a = 2 * d.pow(3) - c * d * d - 2 * x * d - g;
    let c4_bound = (Q::new(a * a, 2 * two_minus_alpha * two_minus_alpha) - (q(7 * d.pow(3)) - Q::new(g, 2))) / 2;
    let four_cycles = StrongInequality::at_least(q(p.c4 as i128), c4_bound);

    // (2-α-β-γ/2)Δ⁴ - 2C₄ + (γ/2-2)Δ³
    let base = q(2 * d.pow(4) - c * d.pow(3) - x * d * d) - Q::new(g * d, 2) - q(2 * p.c4 as i128)
        + Q::new(g, 2)
        - q(2 * d.pow(3));
    let neighbourhood_edges = StrongInequality::at_most(q(ns_edges as i128), base);
    let improved = StrongInequality::at_most(q(ns_edges as i128), base - Q::new(g * g, 2 * two_minus_ab));
    Ok(StrongLemmaReport {
        edge: p.edge,
        strong_degree,
        four_cycles,
        neighbourhood_edges,
        improved,
    })
}

/// `(2 - η) Δ²` as an exact fraction of the decimal `η`.
pub fn f_core_threshold(eta: f64, max_degree: usize) -> Result<Ratio<i64>> {
    let eta = parse_decimal_ratio(&format!("{eta}"))?;
    let d = max_degree as i64;
    Ok((Ratio::from_integer(2) - eta) * (d * d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FCore {
    /// Survivors, ascending.
    pub members: Vec<usize>,
    /// Removed vertices in the order they were peeled.
    pub peel_order: Vec<usize>,
}

/// Repeatedly deletes vertices with fewer than `threshold` surviving
/// neighbours. What remains is the largest vertex set whose induced minimum
/// degree is at least `threshold`.
pub fn f_core(g: &Graph, threshold: Ratio<i64>) -> FCore {
    let n = g.n();
    let below = |deg: usize| Ratio::from_integer(deg as i64) < threshold;
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queued = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if below(deg[v]) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    let mut peel_order = Vec::new();
    while let Some(v) = queue.pop_front() {
        alive[v] = false;
        peel_order.push(v);
        for &w in g.neighbours(v) {
            if alive[w] {
                deg[w] -= 1;
                if !queued[w] && below(deg[w]) {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    FCore {
        members: (0..n).filter(|&v| alive[v]).collect(),
        peel_order,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FCoreEdgeCheck {
    pub edge: usize,
    /// `|E(L²[F ∩ N(e)])|`.
    pub count: usize,
    /// `f(α, β, γ, η)Δ⁴ + (19 - γ)Δ³` for this edge.
    pub full_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FCoreDensityReport {
    pub eta: f64,
    pub max_degree: usize,
    pub threshold: String,
    pub core_size: usize,
    /// `(31/6 - 128/(3(10 - 3η)) + 4η - η²) Δ⁴`.
    pub bound: f64,
    pub max_count: usize,
    /// `max_count / bound`; zero for an empty core.
    pub max_ratio: f64,
    pub worst_edge: Option<usize>,
    /// Every core edge is within `bound`.
    pub passes: bool,
    /// Every core edge is within its own `full_bound`.
    pub passes_full: bool,
    pub edges: Vec<FCoreEdgeCheck>,
}

pub fn f_core_density_bound(eta: f64, max_degree: usize) -> f64 {
    (31.0 / 6.0 - 128.0 / (3.0 * (10.0 - 3.0 * eta)) + 4.0 * eta - eta * eta) * (max_degree as f64).powi(4)
}

/// Counts the edges of `L²` inside `F ∩ N(e)` for every core edge `e` and
/// compares them with the density bound.
pub fn f_core_density_check(h: &Graph, eta: f64) -> Result<FCoreDensityReport> {
    if !(0.0..=0.3).contains(&eta) {
        return Err(Error::InvalidParameter(format!("eta = {eta} must lie in [0, 0.3]")));
    }
    let d = h.max_degree();
    let threshold = f_core_threshold(eta, d)?;
    let bound = f_core_density_bound(eta, d);
    let mut report = FCoreDensityReport {
        eta,
        max_degree: d,
        threshold: threshold.to_string(),
        core_size: 0,
        bound,
        max_count: 0,
        max_ratio: 0.0,
        worst_edge: None,
        passes: true,
        passes_full: true,
        edges: Vec::new(),
    };
    if h.m() == 0 {
        return Ok(report);
    }
    let l2 = line_graph_square(h)?;
    let core = f_core(&l2.graph, threshold);
    report.core_size = core.members.len();
    let mut in_core = vec![false; h.m()];
    core.members.iter().for_each(|&e| in_core[e] = true);
    let df = d as f64;
    for &e in &core.members {
        let fe: Vec<usize> = l2.graph.neighbours(e).iter().copied().filter(|&f| in_core[f]).collect();
        let count = induced_edge_count(&l2.graph, &fe);
        let p = strong_profile(h, e);
        let full_bound = strong_f(p.alpha, p.beta, p.gamma, eta)? * df.powi(4) + (19.0 - p.gamma) * df.powi(3);
        if report.worst_edge.is_none() || count > report.max_count {
            report.max_count = count;
            report.worst_edge = Some(e);
        }
        report.passes &= count as f64 <= bound;
        report.passes_full &= count as f64 <= full_bound;
        report.edges.push(FCoreEdgeCheck { edge: e, count, full_bound });
    }
    if report.worst_edge.is_some() && bound > 0.0 {
        report.max_ratio = report.max_count as f64 / bound;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongEdgeOptions {
    pub eta: f64,
    /// Colour the core with the iterated procedure before falling back to
    /// greedy.
    pub use_engine: bool,
    /// The core gets `⌈(1 - eps) Δ(L²[F])⌉` colours per vertex when the
    /// engine runs.
    pub eps: f64,
    pub driver: DriverParams,
}

impl Default for StrongEdgeOptions {
    fn default() -> Self {
        StrongEdgeOptions {
            eta: DEFAULT_ETA,
            use_engine: true,
            eps: DEFAULT_EPS,
            driver: DriverParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongColouring {
    /// Colour of each edge of `h`, by edge id.
    pub colours: Vec<Colour>,
    pub num_colours: usize,
    pub max_degree: usize,
    pub ratio_to_delta_sq: f64,
    pub f_core_size: usize,
    pub engine_used: bool,
    /// The engine was tried on the core and failed; the core was coloured
    /// greedily instead.
    pub engine_fallback: bool,
}

/// First-fit over `order`, treating entries already in `colours` as fixed.
fn first_fit(g: &Graph, order: &[usize], colours: &mut [Option<Colour>]) {
    let mut used = Vec::new();
    for &v in order {
        used.clear();
        used.extend(g.neighbours(v).iter().filter_map(|&w| colours[w]));
        used.sort_unstable();
        used.dedup();
        let mut c = 0;
        for &x in &used {
            if x == c {
                c += 1;
            } else if x > c {
                break;
            }
        }
        colours[v] = Some(c);
    }
}

pub fn strong_edge_colour(h: &Graph, options: &StrongEdgeOptions, seed: u64) -> Result<StrongColouring> {
    let l2 = line_graph_square(h)?;
    let g = &l2.graph;
    let d = h.max_degree();
    let core = f_core(g, f_core_threshold(options.eta, d)?);
    let mut colours: Vec<Option<Colour>> = vec![None; g.n()];
    let (mut engine_used, mut engine_fallback) = (false, false);
    if !core.members.is_empty() {
        let sub = g.induced_subgraph(&core.members);
        if options.use_engine {
            let k = ((1.0 - options.eps) * sub.max_degree() as f64).ceil().max(1.0) as usize;
            let c = CorrespondenceAssignment::uniform_lists(&sub, k)?;
            let trace = iterative_colour(&sub, &c, &options.driver, seed)?;
            if trace.success {
                engine_used = true;
                for (i, &v) in core.members.iter().enumerate() {
                    colours[v] = trace.colouring.get(i);
                }
            } else {
                engine_fallback = true;
            }
        }
        if !engine_used {
            let mut order = min_degree_ordering(g, &core.members);
            order.reverse();
            first_fit(g, &order, &mut colours);
        }
    }
    let rest: Vec<usize> = core.peel_order.iter().rev().copied().collect();
    first_fit(g, &rest, &mut colours);
    let colours: Vec<Colour> = colours.into_iter().map(|c| c.expect("every vertex is coloured")).collect();
    if !is_strong_edge_colouring(h, &colours) {
        return Err(Error::InvalidColouring("strong edge colouring failed validation".into()));
    }
    let mut distinct = colours.clone();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(StrongColouring {
        num_colours: distinct.len(),
        max_degree: d,
        ratio_to_delta_sq: distinct.len() as f64 / (d * d) as f64,
        f_core_size: core.members.len(),
        colours,
        engine_used,
        engine_fallback,
    })
}

/// For every edge `ab` of `h`, the edges touching `a` or `b` must all have
/// different colours. This covers every pair of edges at distance at most 2.
pub fn is_strong_edge_colouring(h: &Graph, colours: &[Colour]) -> bool {
    if colours.len() != h.m() {
        return false;
    }
    let mut seen = Vec::new();
    h.edges().iter().all(|&(a, b)| {
        seen.clear();
        seen.extend(h.incident_edges(a).iter().chain(h.incident_edges(b)).map(|&f| (colours[f], f)));
        seen.sort_unstable();
        seen.dedup();
        seen.windows(2).all(|w| w[0].0 != w[1].0)
    })
}
