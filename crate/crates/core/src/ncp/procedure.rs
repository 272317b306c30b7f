use num_rational::Ratio;
use serde::Serialize;

use super::rng::{EntityRng, TAG_COLOUR, TAG_DIRECTION};
use crate::correspondence::{CorrespondenceAssignment, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Colour;

/// Everything one round drew, and what it kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundOutcome {
    /// Tentative colour of each vertex.
    pub f1: Vec<Colour>,
    /// For each edge id, the endpoint its direction points at.
    pub direction: Vec<usize>,
    pub kept: Vec<bool>,
    /// `f1` on kept vertices, uncoloured elsewhere.
    pub f: PartialColouring,
}

impl RoundOutcome {
    pub fn kept_count(&self) -> usize {
        self.kept.iter().filter(|&&k| k).count()
    }

    pub fn uncoloured(&self) -> Vec<usize> {
        (0..self.kept.len()).filter(|&v| !self.kept[v]).collect()
    }
}

fn check_round_input(g: &Graph, c: &CorrespondenceAssignment) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::InvalidAssignment(format!(
            "assignment has {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    if let Some(v) = (0..g.n()).find(|&v| c.colour_set(v).is_empty()) {
        return Err(Error::InvalidAssignment(format!("vertex {v} has no colours")));
    }
    if !c.is_total() {
        return Err(Error::InvalidAssignment(
            "the round needs a total assignment; truncate and totalize first".into(),
        ));
    }
    Ok(())
}

/// Builds the outcome of explicit choices: a vertex is uncoloured when some
/// edge whose ends' tentative colours correspond points at it.
pub fn outcome_from_choices(
    g: &Graph,
    c: &CorrespondenceAssignment,
    f1: Vec<Colour>,
    direction: Vec<usize>,
) -> RoundOutcome {
    debug_assert_eq!(f1.len(), g.n());
    debug_assert_eq!(direction.len(), g.m());
    let mut kept = vec![true; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if c.edge_map(e).apply(f1[u]) == Some(f1[v]) {
            kept[direction[e]] = false;
        }
    }
    let f = PartialColouring(
        f1.iter()
            .zip(&kept)
            .map(|(&col, &k)| k.then_some(col))
            .collect(),
    );
    RoundOutcome {
        f1,
        direction,
        kept,
        f,
    }
}

/// Draws `f1` and the edge directions for `seed`.
pub fn sample_choices(g: &Graph, c: &CorrespondenceAssignment, seed: u64) -> (Vec<Colour>, Vec<usize>) {
    let mut colour_rng = EntityRng::new(seed, TAG_COLOUR);
    let f1 = (0..g.n())
        .map(|v| {
            let set = c.colour_set(v);
            set[colour_rng.index(v as u64, set.len())]
        })
        .collect();
    let mut dir_rng = EntityRng::new(seed, TAG_DIRECTION);
    let direction = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| if dir_rng.coin(e as u64) { u } else { v })
        .collect();
    (f1, direction)
}

/// One round of the naive colouring procedure on a total assignment.
pub fn run_round(g: &Graph, c: &CorrespondenceAssignment, seed: u64) -> Result<RoundOutcome> {
    check_round_input(g, c)?;
    let (f1, direction) = sample_choices(g, c, seed);
    Ok(outcome_from_choices(g, c, f1, direction))
}

/// `(1 - 1/(2k))^degree`, the chance a vertex keeps its colour.
pub fn keep_probability(k: usize, degree: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok((1.0 - 1.0 / (2.0 * k as f64)).powi(degree as i32))
}

/// [`keep_probability`] as an exact fraction `(2k-1)^d / (2k)^d`.
pub fn keep_probability_exact(k: usize, degree: usize) -> Result<Ratio<u128>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let overflow = || Error::InvalidParameter(format!("(2k)^d overflows for k={k}, d={degree}"));
    let d = u32::try_from(degree).map_err(|_| overflow())?;
    let num = (2 * k as u128 - 1).checked_pow(d).ok_or_else(overflow)?;
    let den = (2 * k as u128).checked_pow(d).ok_or_else(overflow)?;
    Ok(Ratio::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn keep_probability_values() {
        assert_eq!(keep_probability(1, 1).unwrap(), 0.5);
        assert_eq!(keep_probability(2, 2).unwrap(), 9.0 / 16.0);
        assert_eq!(keep_probability_exact(2, 2).unwrap(), Ratio::new(9, 16));
        assert!(keep_probability(0, 3).is_err());
        let mut prev = 0.0;
        for k in 1..200 {
            let p = keep_probability(k, 5).unwrap();
            assert!(p > prev && p < 1.0);
            prev = p;
        }
    }

    #[test]
    fn k2_keeps_exactly_one_end() {
        let k2 = generators::complete(2);
        let c = CorrespondenceAssignment::uniform_lists(&k2, 1).unwrap();
        for seed in 0..50 {
            let o = run_round(&k2, &c, seed).unwrap();
            assert_eq!(o.kept_count(), 1);
            assert!(!o.kept[o.direction[0]]);
            assert!(c.is_valid_colouring(&k2, &o.f));
        }
    }

    #[test]
    fn empty_correspondences_keep_everything() {
        let g = generators::petersen();
        let lists: Vec<Vec<Colour>> = (0..10).map(|v| vec![2 * v as Colour, 2 * v as Colour + 1]).collect();
        let c = CorrespondenceAssignment::from_lists(&g, lists).unwrap();
        // disjoint lists give empty maps, which are not total
        assert!(run_round(&g, &c, 1).is_err());
        let (f1, d) = sample_choices(&g, &c, 1);
        let o = outcome_from_choices(&g, &c, f1, d);
        assert_eq!(o.kept_count(), 10);
    }

    #[test]
    fn seeded_rounds_repeat() {
        let g = generators::random_regular(30, 4, 1).unwrap();
        let c = CorrespondenceAssignment::uniform_lists(&g, 3).unwrap();
        assert_eq!(run_round(&g, &c, 99).unwrap(), run_round(&g, &c, 99).unwrap());
        assert_ne!(run_round(&g, &c, 99).unwrap(), run_round(&g, &c, 100).unwrap());
    }

    #[test]
    fn rejects_partial_assignments() {
        let k2 = generators::complete(2);
        let c = CorrespondenceAssignment::from_lists(&k2, vec![vec![1, 2], vec![2, 3]]).unwrap();
        assert!(run_round(&k2, &c, 0).is_err());
        assert!(run_round(&k2, &c.truncate(1).unwrap().totalize().unwrap(), 0).is_ok());
    }
}
