//! GAP-graphs (de Bruijn / Rauzy graphs of a language).
//!
//! The graph of order k has the length-k dictionary words as vertices and the
//! length-(k+1) words as edges; an edge runs from its prefix to its suffix.
//! Graphs are compared as labeled word sets.

mod branching;
mod dot;
mod paths;

use std::collections::BTreeSet;

pub use branching::{amenability_ratio, branching_report, entropy_estimate, BranchingReport, VertexDegree};
pub use dot::{export_dot, DotAnnotations};
pub use paths::{closed_paths_up_to, global_closed_path, ClosedPaths, Path};

use crate::dictionary::TruncatedDictionary;
use crate::error::{Error, Result};
use crate::symbolic::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapGraph {
    order: usize,
    alphabet: Alphabet,
    vertices: Vec<Word>,
    edges: Vec<Word>,
    /// Outgoing edge indices per vertex, in edge-word order.
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    /// (source, target) vertex indices per edge.
    ends: Vec<(usize, usize)>,
}

impl GapGraph {
    /// G_k(D): vertices D ∩ Aᵏ, edges D ∩ Aᵏ⁺¹.
    pub fn build(d: &TruncatedDictionary, k: usize) -> Result<Self> {
        if k == 0 || k + 1 > d.depth() {
            return Err(Error::DepthTooSmall { depth: d.depth(), required: k + 1 });
        }
        Self::from_parts(d.alphabet().clone(), k, d.level(k).clone(), d.level(k + 1).clone())
    }

    /// Assemble a graph from explicit word sets, checking that every edge's
    /// prefix and suffix are vertices.
    pub fn from_parts(alphabet: Alphabet, order: usize, vertices: BTreeSet<Word>, edges: BTreeSet<Word>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Validation("graph order must be >= 1".into()));
        }
        let vertices: Vec<Word> = vertices.into_iter().collect();
        let edges: Vec<Word> = edges.into_iter().collect();
        if let Some(v) = vertices.iter().find(|v| v.len() != order) {
            return Err(Error::Validation(format!("vertex {} has wrong length", alphabet.render(v))));
        }
        let lookup = |w: &Word| vertices.binary_search(w).ok();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        let mut ends = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.len() != order + 1 {
                return Err(Error::Validation(format!("edge {} has wrong length", alphabet.render(e))));
            }
            let (Some(s), Some(t)) = (lookup(&e.drop_last()), lookup(&e.drop_first())) else {
                return Err(Error::Validation(format!("edge {} has a boundary outside the vertex set", alphabet.render(e))));
            };
            out_edges[s].push(i);
            in_edges[t].push(i);
            ends.push((s, t));
        }
        Ok(Self { order, alphabet, vertices, edges, out_edges, in_edges, ends })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn edge_index(&self, w: &Word) -> Option<usize> {
        self.edges.binary_search(w).ok()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    /// (∂₀e, ∂₁e) as vertex indices.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    /// At most one edge per ordered vertex pair. Always true for word-labeled
    /// graphs; kept as an explicit check.
    pub fn is_semi_simple(&self) -> bool {
        let pairs: BTreeSet<_> = self.ends.iter().collect();
        pairs.len() == self.ends.len()
    }

    /// Vertices missing an incoming or an outgoing edge.
    pub fn dangling_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.out_edges[v].is_empty() || self.in_edges[v].is_empty()).collect()
    }

    /// δG: vertices are the edges of G, edges are chainable pairs (e, e').
    pub fn derive(&self) -> DerivedGraph {
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (_, t) = self.ends[i];
            for &j in &self.out_edges[t] {
                edges.push((e.clone(), self.edges[j].clone()));
            }
        }
        DerivedGraph { vertices: self.edges.clone(), edges }
    }

    /// G_{k+1} obtained from δG_k by dropping pairs whose overlap-join u∨v is
    /// not a dictionary word.
    pub fn derive_and_prune(&self, d: &TruncatedDictionary) -> Result<GapGraph> {
        if self.order + 2 > d.depth() {
            return Err(Error::DepthTooSmall { depth: d.depth(), required: self.order + 2 });
        }
        if d.alphabet() != &self.alphabet || d.level(self.order).iter().ne(self.vertices.iter()) || d.level(self.order + 1).iter().ne(self.edges.iter()) {
            return Err(Error::GraphMismatch { order: self.order });
        }
        let joins: BTreeSet<Word> = self
            .derive()
            .edges
            .iter()
            .map(|(u, v)| overlap_join(u, v))
            .filter(|w| d.contains(w))
            .collect();
        GapGraph::from_parts(self.alphabet.clone(), self.order + 1, self.edges.iter().cloned().collect(), joins)
    }

    /// Strongly connected components, each sorted, ordered by smallest vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let comp = tarjan(self);
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut groups = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            groups[c].push(v);
        }
        groups.sort_by_key(|g| g[0]);
        groups
    }

    pub fn is_strongly_connected(&self) -> bool {
        !self.vertices.is_empty() && self.strongly_connected_components().len() == 1
    }

    /// No edge joins two distinct strongly connected components.
    pub fn is_disjoint_union_of_scc(&self) -> bool {
        let comp = tarjan(self);
        self.ends.iter().all(|&(s, t)| comp[s] == comp[t])
    }

    /// Components rendered as word lists.
    pub fn components_rendered(&self) -> Vec<Vec<String>> {
        self.strongly_connected_components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.render(&self.vertices[v])).collect())
            .collect()
    }
}

/// u∨v for chainable edge words u = a₀…a_k, v = a₁…a_k b: the word a₀…a_k b.
pub fn overlap_join(u: &Word, v: &Word) -> Word {
    let mut w = u.letters().to_vec();
    if let Some(&last) = v.letters().last() {
        w.push(last);
    }
    Word(w)
}

/// The derived graph δG with (DG.3) boundaries ∂₀(e, e') = e, ∂₁(e, e') = e'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedGraph {
    pub vertices: Vec<Word>,
    pub edges: Vec<(Word, Word)>,
}

/// Iterative Tarjan; returns a component id per vertex.
fn tarjan(g: &GapGraph) -> Vec<usize> {
    let n = g.vertices.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its out-edge list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&e) = g.out_edges[v].get(*pos) {
                *pos += 1;
                let w = g.ends[e].1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::Substitution;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn words(g: &[Word], a: &Alphabet) -> Vec<String> {
        g.iter().map(|w| a.render(w)).collect()
    }

    fn eventually(left: &str, mid: &str, right: &str, depth: usize) -> TruncatedDictionary {
        let a = ab();
        TruncatedDictionary::from_eventually_periodic(
            a.clone(),
            &a.parse(left).unwrap(),
            &a.parse(mid).unwrap(),
            &a.parse(right).unwrap(),
            depth,
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        let g = GapGraph::build(&fib, 1).unwrap();
        assert_eq!(words(g.vertices(), &ab()), ["a", "b"]);
        assert_eq!(words(g.edges(), &ab()), ["aa", "ab", "ba"]);

        let full = TruncatedDictionary::full_shift(ab(), 3).unwrap();
        let g = GapGraph::build(&full, 2).unwrap();
        assert_eq!((g.vertices().len(), g.edges().len()), (4, 8));

        let wall = eventually("a", "", "b", 4);
        let g = GapGraph::build(&wall, 1).unwrap();
        assert_eq!(words(g.edges(), &ab()), ["aa", "ab", "bb"]);

        assert!(matches!(GapGraph::build(&wall, 4), Err(Error::DepthTooSmall { .. })));
    }

    #[test]
    fn derive_examples() {
        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        let g = GapGraph::build(&fib, 1).unwrap();
        let dg = g.derive();
        assert_eq!(dg.vertices.len(), 3);
        let pairs: BTreeSet<(String, String)> =
            dg.edges.iter().map(|(u, v)| (ab().render(u), ab().render(v))).collect();
        let expected: BTreeSet<(String, String)> = [("aa", "aa"), ("aa", "ab"), ("ab", "ba"), ("ba", "aa"), ("ba", "ab")]
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect();
        assert_eq!(pairs, expected);

        let lone = GapGraph::from_parts(ab(), 1, [ab().parse("a").unwrap()].into(), [ab().parse("aa").unwrap()].into()).unwrap();
        let dl = lone.derive();
        assert_eq!((dl.vertices.len(), dl.edges.len()), (1, 1));
    }

    #[test]
    fn derive_and_prune_examples() {
        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        let g2 = GapGraph::build(&fib, 1).unwrap().derive_and_prune(&fib).unwrap();
        assert_eq!(words(g2.edges(), &ab()), ["aab", "aba", "baa", "bab"]);
        assert_eq!(g2, GapGraph::build(&fib, 2).unwrap());

        let full = TruncatedDictionary::full_shift(ab(), 5).unwrap();
        for k in 1..=3 {
            let g = GapGraph::build(&full, k).unwrap();
            assert_eq!(g.derive().edges.len(), g.derive_and_prune(&full).unwrap().edges().len());
        }

        let wall = eventually("a", "", "b", 5);
        let g2 = GapGraph::build(&wall, 1).unwrap().derive_and_prune(&wall).unwrap();
        assert_eq!(words(g2.vertices(), &ab()), ["aa", "ab", "bb"]);
        assert_eq!(words(g2.edges(), &ab()), ["aaa", "aab", "abb", "bbb"]);

        let other = TruncatedDictionary::full_shift(ab(), 5).unwrap();
        assert_eq!(GapGraph::build(&wall, 1).unwrap().derive_and_prune(&other), Err(Error::GraphMismatch { order: 1 }));
    }

    #[test]
    fn strong_connectivity_examples() {
        let fib = Substitution::fibonacci().dictionary(16).unwrap();
        for k in 1..=14 {
            assert!(GapGraph::build(&fib, k).unwrap().is_strongly_connected(), "k = {k}");
        }

        let d = eventually("a", "ba", "b", 6);
        assert!(GapGraph::build(&d, 1).unwrap().is_strongly_connected());
        for k in 2..=4 {
            assert!(!GapGraph::build(&d, k).unwrap().is_strongly_connected());
        }

        let wall = eventually("a", "", "b", 4);
        let g = GapGraph::build(&wall, 1).unwrap();
        assert_eq!(g.components_rendered(), vec![vec!["a".to_string()], vec!["b".to_string()]]);
    }

    #[test]
    fn disjoint_union_examples() {
        let a = ab();
        let two_loops = TruncatedDictionary::from_periodic_word(a.clone(), &crate::PeriodicWord::from_block(a.parse("a").unwrap()).unwrap(), 3)
            .unwrap()
            .union(&TruncatedDictionary::from_periodic_word(a.clone(), &crate::PeriodicWord::from_block(a.parse("b").unwrap()).unwrap(), 3).unwrap())
            .unwrap();
        let g = GapGraph::build(&two_loops, 1).unwrap();
        assert!(!g.is_strongly_connected());
        assert!(g.is_disjoint_union_of_scc());

        let wall = eventually("a", "", "b", 4);
        assert!(!GapGraph::build(&wall, 1).unwrap().is_disjoint_union_of_scc());

        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        assert!(GapGraph::build(&fib, 3).unwrap().is_disjoint_union_of_scc());
    }

    #[test]
    fn semi_simple_and_no_dangling() {
        let fib = Substitution::fibonacci().dictionary(10).unwrap();
        for k in 1..=8 {
            let g = GapGraph::build(&fib, k).unwrap();
            assert!(g.is_semi_simple());
            assert!(g.dangling_vertices().is_empty());
        }
    }
}
