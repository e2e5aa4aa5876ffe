use std::collections::{BTreeSet, VecDeque};

use super::GapGraph;
use crate::error::{Error, Result};
use crate::symbolic::Word;

/// A non-empty chain of edge words with ∂₁eᵢ = ∂₀eᵢ₊₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<Word>,
}

impl Path {
    pub fn new(edges: Vec<Word>) -> Result<Self> {
        let Some(first) = edges.first() else {
            return Err(Error::Path("empty path".into()));
        };
        if first.len() < 2 {
            return Err(Error::Path("edge words need length >= 2".into()));
        }
        if edges.iter().any(|e| e.len() != first.len()) {
            return Err(Error::Path("edge words of different lengths".into()));
        }
        for (i, pair) in edges.windows(2).enumerate() {
            if pair[0].drop_first() != pair[1].drop_last() {
                return Err(Error::Path(format!("edges {i} and {} do not chain", i + 1)));
            }
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Order of the graph the path lives in.
    pub fn order(&self) -> usize {
        self.edges[0].len() - 1
    }

    pub fn is_closed(&self) -> bool {
        self.edges[0].drop_last() == self.edges[self.edges.len() - 1].drop_first()
    }

    pub fn lies_in(&self, g: &GapGraph) -> bool {
        self.order() == g.order() && self.edges.iter().all(|e| g.edge_index(e).is_some())
    }

    /// Closed and visiting every vertex of `g`.
    pub fn is_global(&self, g: &GapGraph) -> bool {
        if !self.is_closed() || !self.lies_in(g) {
            return false;
        }
        let visited: BTreeSet<Word> = self.edges.iter().map(|e| e.drop_last()).collect();
        visited.len() == g.vertices().len()
    }

    /// First letters of the edges, i.e. the block of the associated periodic word.
    pub fn first_letters(&self) -> Word {
        Word(self.edges.iter().map(|e| e.letters()[0]).collect())
    }

    pub fn render(&self, g: &GapGraph) -> Vec<String> {
        self.edges.iter().map(|e| g.render(e)).collect()
    }
}

/// Shortest non-empty edge path from `s` to `t`, exploring out-edges in
/// edge-word order. For s == t this is a shortest cycle through s.
fn shortest_path(g: &GapGraph, s: usize, t: usize) -> Option<Vec<usize>> {
    let n = g.vertices().len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    let expand = |v: usize, parent: &mut Vec<Option<usize>>, queue: &mut VecDeque<usize>| {
        for &e in g.out_edges(v) {
            let w = g.edge_ends(e).1;
            if parent[w].is_none() {
                parent[w] = Some(e);
                queue.push_back(w);
            }
        }
    };
    expand(s, &mut parent, &mut queue);
    while let Some(v) = queue.pop_front() {
        if v == t {
            break;
        }
        expand(v, &mut parent, &mut queue);
    }
    parent[t]?;
    let mut path = Vec::new();
    let mut cur = t;
    loop {
        let e = parent[cur].expect("BFS tree is connected to the source");
        path.push(e);
        let src = g.edge_ends(e).0;
        if src == s {
            break;
        }
        cur = src;
    }
    path.reverse();
    Some(path)
}

/// A closed path through all vertices: shortest connecting paths between
/// consecutive vertices in lexicographic order, closing back to the first.
/// Its length is at most m² for m vertices.
pub fn global_closed_path(g: &GapGraph) -> Result<Path> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected { order: g.order(), components: g.components_rendered() });
    }
    let m = g.vertices().len();
    let mut edges = Vec::new();
    for i in 0..m {
        let seg = shortest_path(g, i, (i + 1) % m)
            .ok_or_else(|| Error::Internal("strongly connected graph without connecting path".into()))?;
        edges.extend(seg);
    }
    let path = Path::new(edges.into_iter().map(|e| g.edges()[e].clone()).collect())?;
    if !path.is_global(g) || path.len() > m * m {
        return Err(Error::Internal("constructed path is not global".into()));
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPaths {
    pub paths: Vec<Path>,
    /// Set when enumeration stopped at the cap.
    pub truncated: bool,
}

/// Closed paths of length ≤ `max_len`, one per rotation class (represented by
/// its smallest rotation), ordered by length and then lexicographically.
pub fn closed_paths_up_to(g: &GapGraph, max_len: usize, cap: usize) -> Result<ClosedPaths> {
    if max_len == 0 {
        return Err(Error::Validation("closed path length bound must be >= 1".into()));
    }
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut truncated = false;
    // A rotation class is emitted from its minimal edge, so every later edge
    // in the sequence has index >= the starting one.
    'outer: for start in 0..g.edges().len() {
        let origin = g.edge_ends(start).0;
        let mut seq = vec![start];
        let mut cursor: Vec<usize> = vec![0];
        loop {
            let last = *seq.last().unwrap();
            let end = g.edge_ends(last).1;
            if cursor.len() == seq.len() && *cursor.last().unwrap() == 0 && end == origin {
                if is_min_rotation(&seq) {
                    found.insert((seq.len(), seq.clone()));
                    if found.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                }
            }
            let pos = cursor.last_mut().unwrap();
            let outs = g.out_edges(end);
            let next = if seq.len() < max_len {
                outs[*pos..].iter().position(|&e| e >= start).map(|off| *pos + off)
            } else {
                None
            };
            match next {
                Some(i) => {
                    *pos = i + 1;
                    seq.push(outs[i]);
                    cursor.push(0);
                }
                None => {
                    seq.pop();
                    cursor.pop();
                    if seq.is_empty() {
                        break;
                    }
                }
            }
        }
    }
    let paths = found
        .into_iter()
        .map(|(_, seq)| Path::new(seq.into_iter().map(|e| g.edges()[e].clone()).collect()))
        .collect::<Result<_>>()?;
    Ok(ClosedPaths { paths, truncated })
}

fn is_min_rotation(seq: &[usize]) -> bool {
    (1..seq.len()).all(|r| {
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::TruncatedDictionary;
    use crate::substitution::Substitution;
    use crate::symbolic::{Alphabet, PeriodicWord};

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn periodic(block: &str, depth: usize) -> TruncatedDictionary {
        let a = ab();
        TruncatedDictionary::from_periodic_word(a.clone(), &PeriodicWord::from_block(a.parse(block).unwrap()).unwrap(), depth).unwrap()
    }

    #[test]
    fn path_invariants() {
        let a = ab();
        let p = Path::new(vec![a.parse("ab").unwrap(), a.parse("ba").unwrap()]).unwrap();
        assert!(p.is_closed());
        assert!(Path::new(vec![a.parse("ab").unwrap(), a.parse("ab").unwrap()]).is_err());
        assert!(Path::new(vec![]).is_err());
        let open = Path::new(vec![a.parse("aa").unwrap(), a.parse("ab").unwrap()]).unwrap();
        assert!(!open.is_closed());
    }

    #[test]
    fn global_path_examples() {
        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        let g = GapGraph::build(&fib, 1).unwrap();
        let p = global_closed_path(&g).unwrap();
        assert_eq!(p.render(&g), ["ab", "ba"]);

        let g = GapGraph::build(&periodic("a", 3), 1).unwrap();
        assert_eq!(global_closed_path(&g).unwrap().render(&g), ["aa"]);

        let a = ab();
        let defect = TruncatedDictionary::from_eventually_periodic(a.clone(), &a.parse("a").unwrap(), &a.parse("b").unwrap(), &a.parse("a").unwrap(), 9).unwrap();
        for k in 1..=7 {
            let g = GapGraph::build(&defect, k).unwrap();
            let p = global_closed_path(&g).unwrap();
            let block = p.first_letters();
            let mut expected = vec![1u16];
            expected.extend(std::iter::repeat(0).take(k));
            assert_eq!(block.min_rotation(), Word(expected).min_rotation(), "k = {k}");
        }
    }

    #[test]
    fn global_path_needs_strong_connectivity() {
        let a = ab();
        let wall = TruncatedDictionary::from_eventually_periodic(a.clone(), &a.parse("a").unwrap(), &Word::empty(), &a.parse("b").unwrap(), 4).unwrap();
        let g = GapGraph::build(&wall, 1).unwrap();
        match global_closed_path(&g) {
            Err(Error::NotStronglyConnected { order: 1, components }) => {
                assert_eq!(components, vec![vec!["a".to_string()], vec!["b".to_string()]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn global_path_on_fibonacci_orders() {
        let fib = Substitution::fibonacci().dictionary(14).unwrap();
        for k in 1..=12 {
            let g = GapGraph::build(&fib, k).unwrap();
            let p = global_closed_path(&g).unwrap();
            assert!(p.is_global(&g));
            assert!(p.len() <= g.vertices().len().pow(2));
        }
    }

    #[test]
    fn closed_path_examples() {
        let fib = Substitution::fibonacci().dictionary(8).unwrap();
        let g5 = GapGraph::build(&fib, 5).unwrap();
        assert_eq!(g5.vertices().len(), 6);
        let short = closed_paths_up_to(&g5, 2, 1000).unwrap();
        assert!(short.paths.is_empty() && !short.truncated);

        for k in 1..=5 {
            let g = GapGraph::build(&periodic("baa", 7), k).unwrap();
            let cps = closed_paths_up_to(&g, 3, 1000).unwrap();
            assert!(cps.paths.iter().any(|p| p.len() == 3), "k = {k}");
        }

        // full shift G1: loops aa, bb; 2-cycle (ab,ba); cycles of length 3 are aab-type
        let full = TruncatedDictionary::full_shift(ab(), 3).unwrap();
        let g = GapGraph::build(&full, 1).unwrap();
        let cps = closed_paths_up_to(&g, 3, 1000).unwrap();
        let lens: Vec<usize> = cps.paths.iter().map(Path::len).collect();
        // necklaces over {a,b}: 2 of length 1, 3 of length 2, 4 of length 3
        assert_eq!(lens, [1, 1, 2, 2, 2, 3, 3, 3, 3]);
        assert!(cps.paths.iter().all(Path::is_closed));

        let capped = closed_paths_up_to(&g, 3, 4).unwrap();
        assert!(capped.truncated);
        assert_eq!(capped.paths.len(), 4);
        assert!(closed_paths_up_to(&g, 0, 10).is_err());
    }

    #[test]
    fn min_rotation_check() {
        assert!(is_min_rotation(&[0, 1, 1]));
        assert!(!is_min_rotation(&[1, 0, 1]));
        assert!(is_min_rotation(&[0, 1, 0, 1]));
    }
}
