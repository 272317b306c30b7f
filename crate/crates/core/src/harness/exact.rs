//! Exact colouring by backtracking, for small graphs only.

use crate::correspondence::{CorrespondenceAssignment, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::{clique_info, Graph};
use crate::Colour;

pub const MAX_EXACT_VERTICES: usize = 20;

fn guard(g: &Graph) -> Result<()> {
    if g.n() > MAX_EXACT_VERTICES {
        return Err(Error::SizeGuard {
            n: g.n(),
            limit: MAX_EXACT_VERTICES,
        });
    }
    Ok(())
}

/// Vertices by descending degree, ties by id.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// A proper colouring with colours `0..k`, if one exists.
pub fn k_colouring(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    guard(g)?;
    let order = search_order(g);
    let mut colour = vec![usize::MAX; g.n()];

    fn go(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, colour: &mut [usize]) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        // a fresh colour only ever needs trying once
        for c in 0..k.min(used + 1) {
            if g.neighbours(v).iter().any(|&w| colour[w] == c) {
                continue;
            }
            colour[v] = c;
            if go(g, order, i + 1, k, used.max(c + 1), colour) {
                return true;
            }
        }
        colour[v] = usize::MAX;
        false
    }

    Ok(go(g, &order, 0, k, 0, &mut colour).then_some(colour))
}

/// The chromatic number, searching upward from the clique number.
pub fn exact_chromatic(g: &Graph) -> Result<usize> {
    guard(g)?;
    let start = clique_info(g)?.omega;
    for k in start..=g.n() {
        if k_colouring(g, k)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

/// A valid total colouring for the assignment, if one exists.
pub fn correspondence_colouring(g: &Graph, c: &CorrespondenceAssignment) -> Result<Option<PartialColouring>> {
    guard(g)?;
    if c.n() != g.n() {
        return Err(Error::InvalidAssignment("assignment and graph sizes differ".into()));
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (c.colour_set(v).len(), std::cmp::Reverse(g.degree(v)), v));
    let mut f = PartialColouring::uncoloured(g.n());

    fn go(g: &Graph, c: &CorrespondenceAssignment, order: &[usize], i: usize, f: &mut PartialColouring) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        let blocked: Vec<Colour> = g
            .neighbours(v)
            .iter()
            .zip(g.incident_edges(v))
            .filter_map(|(&w, &e)| f.get(w).and_then(|x| c.correspond(e, w, x)))
            .collect();
        for &x in c.colour_set(v) {
            if blocked.contains(&x) {
                continue;
            }
            f.set(v, Some(x));
            if go(g, c, order, i + 1, f) {
                return true;
            }
        }
        f.set(v, None);
        false
    }

    Ok(go(g, c, &order, 0, &mut f).then_some(f))
}
