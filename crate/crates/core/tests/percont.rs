mod common;

use std::collections::{BTreeSet, VecDeque};

use perapprox::approximation::{periodic_word_from_path, verify_percont};
use perapprox::{GapGraph, Path, TruncatedDictionary};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random walk from a random vertex, closed by a shortest path back.
fn random_closed_path(g: &GapGraph, rng: &mut impl Rng) -> Option<Path> {
    let start = rng.gen_range(0..g.vertices().len());
    let mut edges = Vec::new();
    let mut v = start;
    for _ in 0..rng.gen_range(1..12) {
        let &e = g.out_edges(v).choose(rng)?;
        edges.push(e);
        v = g.edge_ends(e).1;
    }
    // BFS back to start
    let mut prev: Vec<Option<usize>> = vec![None; g.vertices().len()];
    let mut seen = vec![false; g.vertices().len()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        if u == start {
            break;
        }
        for &e in g.out_edges(u) {
            let w = g.edge_ends(e).1;
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    if !seen[start] {
        return None;
    }
    let mut back = Vec::new();
    let mut u = start;
    while u != v {
        let e = prev[u].unwrap();
        back.push(e);
        u = g.edge_ends(e).0;
    }
    edges.extend(back.into_iter().rev());
    Some(Path::new(edges.into_iter().map(|e| g.edges()[e].clone()).collect()).unwrap())
}

#[test]
fn window_set_of_a_closed_path_is_its_start_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let corpus = common::corpus();
    let mut checked = 0;
    while checked < 100 {
        let (_, d) = corpus.choose(&mut rng).unwrap();
        let k = rng.gen_range(1..d.depth() - 1);
        let g = GapGraph::build(d, k).unwrap();
        let Some(path) = random_closed_path(&g, &mut rng) else { continue };
        let eta = periodic_word_from_path(&path).unwrap();
        let starts: BTreeSet<_> = path.edges().iter().map(|e| e.drop_last()).collect();
        let windows: BTreeSet<_> = TruncatedDictionary::from_periodic_word(d.alphabet().clone(), &eta, k).unwrap().level(k).iter().cloned().collect();
        assert_eq!(windows, starts, "k={k} path={:?}", path.render(&g));
        assert!(verify_percont(&path, d).unwrap());
        // every edge of the path is a window of length k+1
        let long: BTreeSet<_> = TruncatedDictionary::from_periodic_word(d.alphabet().clone(), &eta, k + 1).unwrap().level(k + 1).iter().cloned().collect();
        assert!(path.edges().iter().all(|e| long.contains(e)));
        checked += 1;
    }
}
