mod common;

use common::*;
use ncp_core::correspondence::residual_assignment;
use ncp_core::{Colour, CorrespondenceAssignment, Graph, PartialColouring};
use proptest::prelude::*;

/// Every assignment of `Some(colour from the set)` or `None` to each vertex.
fn partial_colourings(sets: &[&[Colour]], allow_none: bool) -> Vec<Vec<Option<Colour>>> {
    let mut out = vec![Vec::new()];
    for s in sets {
        let mut next = Vec::new();
        for prefix in &out {
            let choices = s.iter().map(|&c| Some(c)).chain(allow_none.then_some(None));
            for x in choices {
                let mut p: Vec<Option<Colour>> = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn sets_of(c: &CorrespondenceAssignment) -> Vec<&[Colour]> {
    (0..c.n()).map(|v| c.colour_set(v)).collect()
}

proptest! {
    #[test]
    fn maps_invert(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 10);
        let c = random_correspondence(&g, &mut r, 5, 7);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            for &x in c.colour_set(u) {
                if let Some(y) = c.correspond(e, u, x) {
                    prop_assert!(c.colour_set(v).contains(&y));
                    prop_assert_eq!(c.correspond(e, v, y), Some(x));
                }
            }
        }
    }

    #[test]
    fn totalize_only_adds_constraints(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 7);
        let c = random_correspondence(&g, &mut r, 3, 4);
        let c = c.truncate(c.min_set_size()).unwrap();
        let t = c.totalize().unwrap();
        prop_assert!(t.is_total());
        for f in partial_colourings(&sets_of(&c), false) {
            let f = PartialColouring(f);
            if t.is_valid_colouring(&g, &f) {
                prop_assert!(c.is_valid_colouring(&g, &f));
            }
        }
    }
}

#[test]
fn list_assignments_match_proper_list_colouring() {
    let subsets: Vec<Vec<Colour>> = (1u32..8).map(|m| (0..3).filter(|b| m >> b & 1 == 1).collect()).collect();
    for n in 1..=4 {
        for g in all_graphs(n) {
            let mut idx = vec![0usize; n];
            loop {
                let lists: Vec<Vec<Colour>> = idx.iter().map(|&i| subsets[i].clone()).collect();
                let c = CorrespondenceAssignment::from_lists(&g, lists.clone()).unwrap();
                let refs: Vec<&[Colour]> = lists.iter().map(Vec::as_slice).collect();
                for f in partial_colourings(&refs, false) {
                    let proper = g.edges().iter().all(|&(u, v)| f[u] != f[v]);
                    assert_eq!(c.is_valid_colouring(&g, &PartialColouring(f)), proper);
                }
                let mut i = 0;
                while i < n {
                    idx[i] += 1;
                    if idx[i] < subsets.len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
}

/// For every valid partial colouring `f` and every way `h` of colouring the
/// rest from the original sets: `f ∪ h` is valid exactly when `h` uses
/// residual colours and is valid for the residual assignment.
fn check_extension(g: &Graph, c: &CorrespondenceAssignment) -> usize {
    let sets = sets_of(c);
    let mut checked = 0;
    for f in partial_colourings(&sets, true) {
        let f = PartialColouring(f);
        if !c.is_valid_colouring(g, &f) {
            continue;
        }
        let res = residual_assignment(g, c, &f).unwrap();
        let rest: Vec<&[Colour]> = res.vertices.iter().map(|&v| c.colour_set(v)).collect();
        for h in partial_colourings(&rest, false) {
            let h = PartialColouring(h);
            let whole = res.extend(&f, &h);
            assert!(whole.is_total());
            let in_residual = (0..h.len()).all(|i| res.assignment.colour_set(i).contains(&h.get(i).unwrap()));
            let expected = in_residual && res.assignment.is_valid_colouring(&res.graph, &h);
            assert_eq!(c.is_valid_colouring(g, &whole), expected, "{:?} {:?} {:?}", g.edges(), f, h);
            checked += 1;
        }
    }
    checked
}

#[test]
fn residual_extension_is_exhaustively_exact() {
    let mut checked = 0;
    for n in 1..=5 {
        for (i, g) in all_graphs(n).iter().enumerate() {
            let mut r = rng((n * 10_000 + i) as u64);
            checked += check_extension(g, &random_correspondence(g, &mut r, 2, 3));
            checked += check_extension(g, &random_lists(g, &mut r, 2, 3));
        }
    }
    assert!(checked > 100_000);
}
