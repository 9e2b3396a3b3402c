use std::collections::BTreeSet;

use hlsnake::gamma::*;
use hlsnake::quiver::*;
use hlsnake::snake::*;
use proptest::prelude::*;

fn height(max_n: usize) -> impl Strategy<Value = HeightFunction> {
    (2..=max_n)
        .prop_flat_map(|n| (-5i64..5, prop::collection::vec(any::<bool>(), n - 1)))
        .prop_map(|(s, steps)| HeightFunction::from_steps(s, &steps).unwrap())
}

fn intervals(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i..=n).map(move |j| (i, j)))
}

/// Perfect matchings by backtracking on the lowest uncovered vertex.
fn backtrack_matchings(g: &SnakeGraph) -> BTreeSet<Vec<usize>> {
    let verts = g.vertices();
    let edges = g.edges();
    let mut out = BTreeSet::new();
    fn go(
        verts: &[Point],
        edges: &[Edge],
        covered: &mut BTreeSet<Point>,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let Some(&v) = verts.iter().find(|v| !covered.contains(v)) else {
            let mut m = chosen.clone();
            m.sort();
            out.insert(m);
            return;
        };
        for (k, e) in edges.iter().enumerate() {
            let (a, b) = (e.a, e.b);
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if covered.contains(&other) {
                continue;
            }
            covered.insert(v);
            covered.insert(other);
            chosen.push(k);
            go(verts, edges, covered, chosen, out);
            chosen.pop();
            covered.remove(&v);
            covered.remove(&other);
        }
    }
    go(&verts, edges, &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn matchings_agree_with_backtracking() {
    for n in 2..=6 {
        for h in HeightFunction::all_normalized(n) {
            for (i, j) in intervals(n) {
                let g = build_snake_graph(&h, i, j).unwrap();
                let ms = g.matchings();
                let mine: BTreeSet<Vec<usize>> = ms
                    .iter()
                    .map(|m| {
                        let mut e = m.edges.clone();
                        e.sort();
                        e
                    })
                    .collect();
                assert_eq!(mine.len(), ms.len(), "duplicate matchings {h} [{i},{j}]");
                assert_eq!(mine, backtrack_matchings(&g), "{h} [{i},{j}]");
                for m in &ms {
                    assert_eq!(m.enclosed, g.enclosed_tiles(&m.edges));
                }
            }
        }
    }
}

#[test]
fn boundary_matchings_are_extremal() {
    for h in HeightFunction::all_normalized(6) {
        for (i, j) in intervals(6) {
            let g = build_snake_graph(&h, i, j).unwrap();
            assert!(g.minimal_matching().enclosed.iter().all(|&t| !t));
            assert!(g.maximal_matching().enclosed.iter().all(|&t| t));
            let (a, b) = g.boundary_matchings();
            assert!(a.iter().chain(&b).all(|&e| g.is_boundary(e)));
        }
    }
}

#[test]
fn tile_labels_are_consecutive() {
    let h = HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap();
    let g = build_snake_graph(&h, 1, 7).unwrap();
    assert_eq!(g.tile_labels(), &[1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(g.tiles(), &[(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (4, 1), (4, 2)]);
    let sd = sign_function(&g);
    assert_eq!(numerator(&sd.runs), 23u32.into());
}

#[test]
fn continued_fraction_numerators() {
    assert_eq!(numerator(&[1]), 1u32.into());
    assert_eq!(numerator(&[2]), 2u32.into());
    assert_eq!(numerator(&[2, 3]), 7u32.into());
    assert_eq!(numerator(&[2, 3, 5]), 37u32.into());
}

#[test]
fn gamma_routes_agree() {
    for n in 2..=7 {
        for h in HeightFunction::all_normalized(n) {
            for (i, j) in intervals(n) {
                let a = gamma_by_filter(&h, i, j);
                let b = gamma_by_search(&h, i, j);
                assert_eq!(a, b, "{h} [{i},{j}]");
            }
        }
    }
}

#[test]
fn gamma_bijection_on_example() {
    let h = HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap();
    let r = empirical_bijection_check(&h, 1, 7).unwrap();
    assert!(r.multisets_equal);
    let sizes: Vec<usize> = (1..=9).map(|j| gamma_set(&h, 1, j).len()).collect();
    assert_eq!(sizes, [2, 3, 5, 7, 9, 16, 23, 30, 53]);
}

#[test]
fn example_statistics() {
    let h = HeightFunction::new(vec![-4, -5, -6, -5, -4, -3, -4, -5, -6]).unwrap();
    assert_eq!(h.sources_sinks(), [2, 5, 8, 9]);
    assert_eq!(h.xi(0), -5);
    assert_eq!(h.xi(10), -5);
}

#[test]
fn bad_heights_are_rejected() {
    assert!(matches!(HeightFunction::new(vec![0, 2]), Err(QuiverError::NotAdjacent(1, 2))));
    assert!(HeightFunction::new(vec![0]).is_err());
    let h = HeightFunction::new(vec![0, 1, 0]).unwrap();
    assert!(h.check_interval(2, 1).is_err());
    assert!(h.check_interval(1, 4).is_err());
}

proptest! {
    #[test]
    fn mutation_is_an_involution(h in height(10), k in 1u32..10) {
        let q = build_quiver(&h);
        let k = Vertex::Mutable(k.min(h.n() as u32));
        prop_assert_eq!(q.mutate(k).mutate(k), q.clone());
        prop_assert!(!q.mutate(k).has_two_cycle());
    }

    #[test]
    fn mutable_part_determines_steps(h in height(10)) {
        let q = build_quiver(&h);
        let steps = steps_from_mutable_subquiver(&q, h.n()).unwrap();
        for (k, s) in steps.iter().enumerate() {
            if let Some(up) = s {
                prop_assert_eq!(*up, h.xi(k + 2) > h.xi(k + 1), "step {}", k + 1);
            }
        }
    }

    #[test]
    fn matchings_invariant_under_symmetries(h in height(8), a in 0usize..8, b in 0usize..8) {
        let (i, j) = (1 + a.min(b) % h.n(), 1 + a.max(b) % h.n());
        let (i, j) = (i.min(j), i.max(j));
        let g = build_snake_graph(&h, i, j).unwrap();
        let n = g.matchings().len();
        prop_assert_eq!(g.reverse().matchings().len(), n);
        prop_assert_eq!(g.transpose().matchings().len(), n);
        prop_assert_eq!(gamma_count_recursive(&h, i, j), n as u128);
    }
}
