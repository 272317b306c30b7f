//! Correspondence assignments: a colour set per vertex and, per edge, a
//! partial injection between the colour sets of its ends. Two adjacent
//! vertices conflict when their colours correspond under the edge's map.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Regularized};
use crate::Colour;

/// A partial injection stored in both directions, each sorted by its key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeMap {
    forward: Vec<(Colour, Colour)>,
    backward: Vec<(Colour, Colour)>,
}

impl EdgeMap {
    /// Builds from `(c, c')` pairs; `None` if the pairs are not injective
    /// in both coordinates.
    pub fn from_pairs(mut pairs: Vec<(Colour, Colour)>) -> Option<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        let mut backward: Vec<(Colour, Colour)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        backward.sort_unstable();
        let injective = |v: &[(Colour, Colour)]| v.windows(2).all(|w| w[0].0 != w[1].0);
        (injective(&pairs) && injective(&backward)).then_some(EdgeMap {
            forward: pairs,
            backward,
        })
    }

    pub fn identity_on(colours: impl IntoIterator<Item = Colour>) -> Self {
        let pairs: Vec<_> = colours.into_iter().map(|c| (c, c)).collect();
        EdgeMap::from_pairs(pairs).expect("identity is injective")
    }

    pub fn apply(&self, c: Colour) -> Option<Colour> {
        lookup(&self.forward, c)
    }

    pub fn apply_inverse(&self, c: Colour) -> Option<Colour> {
        lookup(&self.backward, c)
    }

    /// Pairs `(c, C(c))`, sorted by `c`.
    pub fn pairs(&self) -> &[(Colour, Colour)] {
        &self.forward
    }

    pub fn inverse(&self) -> EdgeMap {
        EdgeMap {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    fn restrict(&self, keep: impl Fn(Colour, Colour) -> bool) -> EdgeMap {
        let pairs = self.forward.iter().copied().filter(|&(a, b)| keep(a, b)).collect();
        EdgeMap::from_pairs(pairs).expect("restriction stays injective")
    }
}

fn lookup(sorted: &[(Colour, Colour)], c: Colour) -> Option<Colour> {
    sorted
        .binary_search_by_key(&c, |&(a, _)| a)
        .ok()
        .map(|i| sorted[i].1)
}

/// Colour sets plus one map per edge of a fixed graph. The map of edge `e`
/// with canonical ends `(u, v)`, `u < v`, sends colours of `u` to colours of
/// `v`; the other direction is its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceAssignment {
    colours: Vec<Vec<Colour>>,
    edges: Vec<(usize, usize)>,
    maps: Vec<EdgeMap>,
}

impl CorrespondenceAssignment {
    /// Validates and builds an assignment for `g`. Maps may be given in either
    /// orientation; edges without a map get the empty map.
    pub fn new(
        g: &Graph,
        colours: Vec<Vec<Colour>>,
        maps: Vec<((usize, usize), Vec<(Colour, Colour)>)>,
    ) -> Result<Self> {
        if colours.len() != g.n() {
            return Err(Error::InvalidAssignment(format!(
                "{} colour sets for {} vertices",
                colours.len(),
                g.n()
            )));
        }
        let colours: Vec<Vec<Colour>> = colours
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let mut slots: Vec<Option<EdgeMap>> = vec![None; g.m()];
        for ((a, b), pairs) in maps {
            let e = g.edge_id(a, b).ok_or_else(|| {
                Error::InvalidAssignment(format!("map given for non-edge {a}-{b}"))
            })?;
            let pairs: Vec<_> = if a < b {
                pairs
            } else {
                pairs.into_iter().map(|(x, y)| (y, x)).collect()
            };
            let (u, v) = g.edge(e);
            let map = EdgeMap::from_pairs(pairs).ok_or_else(|| {
                Error::InvalidAssignment(format!("map on {u}-{v} is not injective"))
            })?;
            for &(x, y) in map.pairs() {
                if colours[u].binary_search(&x).is_err() || colours[v].binary_search(&y).is_err() {
                    return Err(Error::InvalidAssignment(format!(
                        "map on {u}-{v} pairs {x}->{y} outside the colour sets"
                    )));
                }
            }
            if slots[e].replace(map).is_some() {
                return Err(Error::InvalidAssignment(format!("two maps given for {u}-{v}")));
            }
        }
        Ok(CorrespondenceAssignment {
            colours,
            edges: g.edges().to_vec(),
            maps: slots.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }

    /// List assignment as a correspondence assignment: identity on shared colours.
    pub fn from_lists(g: &Graph, lists: Vec<Vec<Colour>>) -> Result<Self> {
        if let Some(v) = lists.iter().position(Vec::is_empty) {
            return Err(Error::InvalidAssignment(format!("vertex {v} has an empty list")));
        }
        let mut sorted = lists;
        for s in &mut sorted {
            s.sort_unstable();
            s.dedup();
        }
        let maps = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let shared = sorted[u]
                    .iter()
                    .filter(|c| sorted[v].binary_search(c).is_ok())
                    .map(|&c| (c, c))
                    .collect();
                ((u, v), shared)
            })
            .collect();
        Self::new(g, sorted, maps)
    }

    /// `k` colours `0..k` everywhere with identity maps.
    pub fn uniform_lists(g: &Graph, k: usize) -> Result<Self> {
        Self::from_lists(g, vec![(0..k as Colour).collect(); g.n()])
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn colour_set(&self, v: usize) -> &[Colour] {
        &self.colours[v]
    }

    pub fn colour_sets(&self) -> &[Vec<Colour>] {
        &self.colours
    }

    /// Map of edge `e` in its canonical orientation.
    pub fn edge_map(&self, e: usize) -> &EdgeMap {
        &self.maps[e]
    }

    /// The colour at the other end of edge `e` corresponding to colour `c`
    /// at endpoint `from`.
    #[inline]
    pub fn correspond(&self, e: usize, from: usize, c: Colour) -> Option<Colour> {
        if from == self.edges[e].0 {
            self.maps[e].apply(c)
        } else {
            self.maps[e].apply_inverse(c)
        }
    }

    /// Map from `u` to `v` as a standalone value, for edge `uv` of `g`.
    pub fn oriented_map(&self, g: &Graph, u: usize, v: usize) -> Option<EdgeMap> {
        let e = g.edge_id(u, v)?;
        Some(if u < v { self.maps[e].clone() } else { self.maps[e].inverse() })
    }

    pub fn min_set_size(&self) -> usize {
        self.colours.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Every colour set has at least `k` colours.
    pub fn is_k_assignment(&self, k: usize) -> bool {
        self.colours.iter().all(|s| s.len() >= k)
    }

    pub fn is_total(&self) -> bool {
        self.edges.iter().zip(&self.maps).all(|(&(u, v), m)| {
            m.len() == self.colours[u].len() && m.len() == self.colours[v].len()
        })
    }

    fn check_graph(&self, g: &Graph) {
        assert!(
            self.colours.len() == g.n() && self.edges == g.edges(),
            "assignment was built for a different graph"
        );
    }

    /// Completes every map to a bijection, pairing the unmatched colours on
    /// each side in ascending order. Needs equal colour set sizes.
    pub fn totalize(&self) -> Result<Self> {
        if let Some(first) = self.colours.first() {
            if let Some(v) = self.colours.iter().position(|s| s.len() != first.len()) {
                return Err(Error::InvalidAssignment(format!(
                    "vertex {v} has {} colours but vertex 0 has {}; truncate first",
                    self.colours[v].len(),
                    first.len()
                )));
            }
        }
        let maps = self
            .edges
            .iter()
            .zip(&self.maps)
            .map(|(&(u, v), m)| {
                let free_src = self.colours[u].iter().filter(|&&c| m.apply(c).is_none());
                let free_dst = self.colours[v].iter().filter(|&&c| m.apply_inverse(c).is_none());
                let mut pairs = m.pairs().to_vec();
                pairs.extend(free_src.zip(free_dst).map(|(&a, &b)| (a, b)));
                EdgeMap::from_pairs(pairs).expect("completion stays injective")
            })
            .collect();
        Ok(CorrespondenceAssignment {
            colours: self.colours.clone(),
            edges: self.edges.clone(),
            maps,
        })
    }

    /// Keeps the `k` smallest colours of each set and restricts the maps.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if let Some(v) = self.colours.iter().position(|s| s.len() < k) {
            return Err(Error::InvalidAssignment(format!(
                "vertex {v} has {} colours, fewer than {k}",
                self.colours[v].len()
            )));
        }
        let colours: Vec<Vec<Colour>> = self.colours.iter().map(|s| s[..k].to_vec()).collect();
        let maps = self
            .edges
            .iter()
            .zip(&self.maps)
            .map(|(&(u, v), m)| {
                m.restrict(|a, b| {
                    colours[u].binary_search(&a).is_ok() && colours[v].binary_search(&b).is_ok()
                })
            })
            .collect();
        Ok(CorrespondenceAssignment {
            colours,
            edges: self.edges.clone(),
            maps,
        })
    }

    /// Edges whose two coloured ends have corresponding colours.
    pub fn conflicts(&self, g: &Graph, f: &PartialColouring) -> Vec<usize> {
        self.check_graph(g);
        self.edges
            .iter()
            .enumerate()
            .filter(|&(e, &(u, v))| match (f.get(u), f.get(v)) {
                (Some(a), Some(b)) => self.maps[e].apply(a) == Some(b),
                _ => false,
            })
            .map(|(e, _)| e)
            .collect()
    }

    pub fn is_valid_colouring(&self, g: &Graph, f: &PartialColouring) -> bool {
        self.validate_colouring(g, f).is_ok()
    }

    /// Like [`Self::is_valid_colouring`] but names the first problem found.
    pub fn validate_colouring(&self, g: &Graph, f: &PartialColouring) -> Result<()> {
        self.check_graph(g);
        if f.len() != g.n() {
            return Err(Error::InvalidColouring(format!(
                "colouring covers {} vertices, graph has {}",
                f.len(),
                g.n()
            )));
        }
        for v in 0..g.n() {
            if let Some(c) = f.get(v) {
                if self.colours[v].binary_search(&c).is_err() {
                    return Err(Error::InvalidColouring(format!(
                        "vertex {v} uses colour {c} outside its set"
                    )));
                }
            }
        }
        if let Some(&e) = self.conflicts(g, f).first() {
            let (u, v) = self.edges[e];
            return Err(Error::InvalidColouring(format!(
                "edge {u}-{v}: colours {} and {} correspond",
                f.get(u).unwrap(),
                f.get(v).unwrap()
            )));
        }
        Ok(())
    }

    /// Copies the assignment onto a regularized supergraph: each copy gets
    /// the colour set of the vertex it copies, edges between copies of
    /// adjacent vertices get the original map, and twin edges the identity.
    pub fn lift(&self, g: &Graph, reg: &Regularized) -> Result<Self> {
        self.check_graph(g);
        let h = &reg.graph;
        let colours: Vec<Vec<Colour>> = reg.origin.iter().map(|&o| self.colours[o].clone()).collect();
        let maps = h
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (oa, ob) = (reg.origin[a], reg.origin[b]);
                if oa == ob {
                    return Ok(((a, b), self.colours[oa].iter().map(|&c| (c, c)).collect()));
                }
                let m = self.oriented_map(g, oa, ob).ok_or_else(|| {
                    Error::InvalidAssignment(format!("lifted edge {a}-{b} has no original"))
                })?;
                Ok(((a, b), m.pairs().to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(h, colours, maps)
    }

    pub fn to_json_value(&self) -> AssignmentJson {
        AssignmentJson {
            colours: self
                .colours
                .iter()
                .enumerate()
                .map(|(v, s)| (v.to_string(), s.clone()))
                .collect(),
            maps: self
                .edges
                .iter()
                .zip(&self.maps)
                .map(|(&(u, v), m)| MapJson {
                    u,
                    v,
                    pairs: m.pairs().iter().map(|&(a, b)| [a, b]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("assignment json serializes")
    }

    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let j: AssignmentJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::from_json_value(g, j)
    }

    pub fn from_json_value(g: &Graph, j: AssignmentJson) -> Result<Self> {
        let mut colours = vec![Vec::new(); g.n()];
        for (key, set) in j.colours {
            let v: usize = key
                .parse()
                .map_err(|_| Error::InvalidAssignment(format!("`{key}` is not a vertex id")))?;
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            colours[v] = set;
        }
        let maps = j
            .maps
            .into_iter()
            .map(|m| ((m.u, m.v), m.pairs.into_iter().map(|[a, b]| (a, b)).collect()))
            .collect();
        Self::new(g, colours, maps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub colours: BTreeMap<String, Vec<Colour>>,
    pub maps: Vec<MapJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub u: usize,
    pub v: usize,
    pub pairs: Vec<[Colour; 2]>,
}

/// Vertex to optional colour.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColouring(pub Vec<Option<Colour>>);

impl PartialColouring {
    pub fn uncoloured(n: usize) -> Self {
        PartialColouring(vec![None; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<Colour> {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, c: Option<Colour>) {
        self.0[v] = c;
    }

    pub fn coloured_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn uncoloured_vertices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v].is_none()).collect()
    }
}

impl From<Vec<Option<Colour>>> for PartialColouring {
    fn from(v: Vec<Option<Colour>>) -> Self {
        PartialColouring(v)
    }
}

/// What remains to be coloured after a valid partial colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    /// Subgraph induced by the uncoloured vertices.
    pub graph: Graph,
    pub assignment: CorrespondenceAssignment,
    /// Original id of each vertex of `graph`, ascending.
    pub vertices: Vec<usize>,
}

impl Residual {
    /// Merges a colouring of the residual graph into `f`.
    pub fn extend(&self, f: &PartialColouring, sub: &PartialColouring) -> PartialColouring {
        let mut out = f.clone();
        for (i, &v) in self.vertices.iter().enumerate() {
            if let Some(c) = sub.get(i) {
                out.set(v, Some(c));
            }
        }
        out
    }
}

/// Restricts to the uncoloured vertices, removing from each colour set the
/// colours corresponding to its coloured neighbours' colours.
pub fn residual_assignment(
    g: &Graph,
    c: &CorrespondenceAssignment,
    f: &PartialColouring,
) -> Result<Residual> {
    c.validate_colouring(g, f)?;
    let vertices = f.uncoloured_vertices();
    let graph = g.induced_subgraph(&vertices);
    let colours: Vec<Vec<Colour>> = vertices
        .iter()
        .map(|&u| {
            let mut blocked: Vec<Colour> = g
                .neighbours(u)
                .iter()
                .zip(g.incident_edges(u))
                .filter_map(|(&w, &e)| f.get(w).and_then(|fw| c.correspond(e, w, fw)))
                .collect();
            blocked.sort_unstable();
            c.colour_set(u)
                .iter()
                .copied()
                .filter(|x| blocked.binary_search(x).is_err())
                .collect()
        })
        .collect();
    let maps = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (u, v) = (vertices[a], vertices[b]);
            let e = g.edge_id(u, v).expect("induced edge exists");
            let (ca, cb) = (&colours[a], &colours[b]);
            let pairs = c
                .edge_map(e)
                .pairs()
                .iter()
                .copied()
                .filter(|&(x, y)| ca.binary_search(&x).is_ok() && cb.binary_search(&y).is_ok())
                .collect();
            // u < v since `vertices` is ascending, so the orientation carries over.
            ((a, b), pairs)
        })
        .collect();
    let assignment = CorrespondenceAssignment::new(&graph, colours, maps)?;
    Ok(Residual {
        graph,
        assignment,
        vertices,
    })
}
