//! Periodic approximants from closed paths in GAP-graphs, classification of
//! periodic approximability, and substitution-driven approximant sequences.
//!
//! Truncated data can only ever produce evidence for approximability up to
//! some order; a failure of strong connectivity is a genuine refutation since
//! it persists at every higher order. Strongly connected subsequences and
//! strongly connected prefixes coincide for the same reason, so only prefixes
//! 1..=k_max are checked.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dictionary::TruncatedDictionary;
use crate::error::{Error, Result};
use crate::gapgraph::{global_closed_path, GapGraph, Path};
use crate::substitution::{Primitivity, Substitution};
use crate::symbolic::{PeriodicWord, Word};

/// η(γ): the periodic word whose block is the first letters of the edges of γ.
pub fn periodic_word_from_path(path: &Path) -> Result<PeriodicWord> {
    if !path.is_closed() {
        return Err(Error::Path("associated periodic word needs a closed path".into()));
    }
    PeriodicWord::new(path.first_letters(), 0)
}

/// Checks dic(η(γ)) ∩ Aᵏ = {∂₀eⱼ} by enumerating the windows of η directly.
pub fn verify_percont(path: &Path, target: &TruncatedDictionary) -> Result<bool> {
    let k = path.order();
    if k + 1 > target.depth() {
        return Err(Error::DepthTooSmall { depth: target.depth(), required: k + 1 });
    }
    if path.edges().iter().any(|e| !target.contains(e)) {
        return Err(Error::Path("path uses an edge outside the target dictionary".into()));
    }
    let eta = periodic_word_from_path(path)?;
    let windows: BTreeSet<Word> = (0..eta.block_len() as i64).map(|i| eta.window(i, k)).collect();
    let starts: BTreeSet<Word> = path.edges().iter().map(Word::drop_last).collect();
    Ok(windows == starts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every order 1..=k_max is strongly connected.
    ApproximableEvidence { k_max: usize },
    /// Order k0 is not strongly connected, hence no order above it is.
    Refuted { k0: usize },
    /// Refuted, but every checked order is a disjoint union of strongly
    /// connected components.
    FiniteUnionEvidence { k_max: usize, k0: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub checked_up_to: usize,
    /// Components at the refuting order.
    pub components: Option<Vec<Vec<String>>>,
}

pub fn classify(d: &TruncatedDictionary, k_max: usize) -> Result<Classification> {
    if k_max == 0 {
        return Err(Error::Validation("k_max must be >= 1".into()));
    }
    if k_max + 1 > d.depth() {
        return Err(Error::DepthTooSmall { depth: d.depth(), required: k_max + 1 });
    }
    let mut refuted: Option<(usize, Vec<Vec<String>>)> = None;
    let mut union_of_scc = true;
    for k in 1..=k_max {
        let g = GapGraph::build(d, k)?;
        union_of_scc &= g.is_disjoint_union_of_scc();
        if refuted.is_none() && !g.is_strongly_connected() {
            refuted = Some((k, g.components_rendered()));
            if !union_of_scc {
                break;
            }
        }
    }
    let (verdict, components) = match refuted {
        None => (Verdict::ApproximableEvidence { k_max }, None),
        Some((k0, comps)) if union_of_scc => (Verdict::FiniteUnionEvidence { k_max, k0 }, Some(comps)),
        Some((k0, comps)) => (Verdict::Refuted { k0 }, Some(comps)),
    };
    Ok(Classification { verdict, checked_up_to: k_max, components })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantCertificate {
    pub k: usize,
    pub approximant: PeriodicWord,
    /// Minimal period of the approximant, i.e. the size of its orbit.
    pub period: usize,
    pub match_depth: usize,
    pub path: Path,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub k: usize,
    pub approximant_block: String,
    pub period: usize,
    pub match_depth: usize,
    pub path_length: usize,
}

impl ApproximantCertificate {
    pub fn to_json(&self, d: &TruncatedDictionary) -> CertificateJson {
        CertificateJson {
            k: self.k,
            approximant_block: d.alphabet().render(self.approximant.block()),
            period: self.period,
            match_depth: self.match_depth,
            path_length: self.path.len(),
        }
    }
}

/// Certificate for order k: global path, its periodic word, and the number of
/// leading levels on which dic(η) agrees with `d` (capped at `match_cap`).
pub fn approximant_certificate(d: &TruncatedDictionary, k: usize, match_cap: usize) -> Result<ApproximantCertificate> {
    let g = GapGraph::build(d, k)?;
    let path = global_closed_path(&g)?;
    if !verify_percont(&path, d)? {
        return Err(Error::Internal(format!("window set of the approximant differs from the path vertices at k = {k}")));
    }
    let approximant = periodic_word_from_path(&path)?;
    let depth = d.depth().min(match_cap.max(k));
    let dic = TruncatedDictionary::from_periodic_word(d.alphabet().clone(), &approximant, depth)?;
    let match_depth = dic.match_depth(d, depth)?;
    let period = approximant.minimal_period();
    if match_depth < k || period < d.complexity(k)? {
        return Err(Error::Internal(format!("approximant certificate bounds fail at k = {k}")));
    }
    Ok(ApproximantCertificate { k, approximant, period, match_depth, path })
}

/// Certificates for every k in the range, in order. A non-strongly-connected
/// order is reported as an error carrying its components.
pub fn approximant_sequence(d: &TruncatedDictionary, ks: RangeInclusive<usize>, match_cap: usize) -> Result<Vec<ApproximantCertificate>> {
    // collect per k first so the reported error is always the smallest failing k
    let all: Vec<Result<ApproximantCertificate>> =
        ks.collect::<Vec<_>>().into_par_iter().map(|k| approximant_certificate(d, k, match_cap)).collect();
    all.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodGrowth {
    pub periods: Vec<usize>,
    pub complexities: Vec<usize>,
    pub bounded_below: bool,
    pub non_decreasing: bool,
}

/// q_k against p(k) for a certificate list.
pub fn period_growth(certs: &[ApproximantCertificate], d: &TruncatedDictionary) -> Result<PeriodGrowth> {
    let periods: Vec<usize> = certs.iter().map(|c| c.period).collect();
    let complexities = certs.iter().map(|c| d.complexity(c.k)).collect::<Result<Vec<_>>>()?;
    let bounded_below = periods.iter().zip(&complexities).all(|(q, p)| q >= p);
    let non_decreasing = periods.windows(2).all(|w| w[0] <= w[1]);
    Ok(PeriodGrowth { periods, complexities, bounded_below, non_decreasing })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionApproximant {
    pub k: usize,
    pub word: PeriodicWord,
    pub match_depth: usize,
}

/// S^k(η(γ)) for k in the range, each compared against dic(S) at `depth`
/// (default 2·max k + 4).
///
/// For a non-primitive substitution the seed word must contain the special
/// letter a whose iterate S^k(a) = u·a·v covers the alphabet.
pub fn substitution_approximants(
    s: &Substitution,
    seed: &Path,
    ks: RangeInclusive<usize>,
    depth: Option<usize>,
) -> Result<Vec<SubstitutionApproximant>> {
    let eta = periodic_word_from_path(seed)?;
    if let Primitivity::NotPrimitive { .. } = s.is_primitive() {
        let (a, _) = s.special_letter().ok_or_else(|| {
            Error::UnsupportedSubstitution("not primitive and no letter a with S^k(a) = u a v covering the alphabet".into())
        })?;
        if !eta.block().contains_letter(a) {
            return Err(Error::Precondition(format!(
                "seed word must contain the letter {:?}",
                s.alphabet().symbol(a)
            )));
        }
    }
    let depth = depth.unwrap_or(2 * ks.end() + 4).max(seed.order() + 1);
    let target = s.dictionary(depth)?;
    if seed.edges().iter().any(|e| !target.contains(e)) {
        return Err(Error::Path("seed path is not a path in a GAP-graph of the substitution".into()));
    }
    ks.map(|k| {
        let word = s.iterate_periodic(&eta, k)?;
        let dic = TruncatedDictionary::from_periodic_word(s.alphabet().clone(), &word, depth)?;
        let match_depth = dic.match_depth(&target, depth)?;
        Ok(SubstitutionApproximant { k, word, match_depth })
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn path(a: &Alphabet, edges: &[&str]) -> Path {
        Path::new(edges.iter().map(|e| a.parse(e).unwrap()).collect()).unwrap()
    }

    fn eventually(left: &str, mid: &str, right: &str, depth: usize) -> TruncatedDictionary {
        let a = ab();
        let parse = |s: &str| if s.is_empty() { Word::empty() } else { a.parse(s).unwrap() };
        TruncatedDictionary::from_eventually_periodic(a.clone(), &parse(left), &parse(mid), &parse(right), depth).unwrap()
    }

    #[test]
    fn associated_words() {
        let a = ab();
        assert_eq!(a.render(periodic_word_from_path(&path(&a, &["ab", "ba"])).unwrap().block()), "ab");
        assert_eq!(a.render(periodic_word_from_path(&path(&a, &["aa"])).unwrap().block()), "a");
        assert_eq!(a.render(periodic_word_from_path(&path(&a, &["baa", "aaa", "aab", "aba"])).unwrap().block()), "baaa");
        assert!(periodic_word_from_path(&path(&a, &["aa", "ab"])).is_err());
    }

    #[test]
    fn percont_examples() {
        let a = ab();
        let fib = Substitution::fibonacci().dictionary(6).unwrap();
        assert!(verify_percont(&path(&a, &["aa"]), &fib).unwrap());
        assert!(verify_percont(&path(&a, &["ab", "ba"]), &fib).unwrap());
        assert!(verify_percont(&path(&a, &["bb"]), &fib).is_err());
    }

    #[test]
    fn classification_examples() {
        let fib = Substitution::fibonacci().dictionary(14).unwrap();
        assert_eq!(classify(&fib, 12).unwrap().verdict, Verdict::ApproximableEvidence { k_max: 12 });

        let wall = eventually("a", "", "b", 5);
        let c = classify(&wall, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted { k0: 1 });
        assert_eq!(c.components.unwrap().len(), 2);

        assert_eq!(classify(&eventually("a", "ba", "b", 6), 3).unwrap().verdict, Verdict::Refuted { k0: 2 });

        let a = ab();
        let loops = TruncatedDictionary::from_periodic_word(a.clone(), &PeriodicWord::from_block(a.parse("a").unwrap()).unwrap(), 5)
            .unwrap()
            .union(&TruncatedDictionary::from_periodic_word(a.clone(), &PeriodicWord::from_block(a.parse("b").unwrap()).unwrap(), 5).unwrap())
            .unwrap();
        assert_eq!(classify(&loops, 3).unwrap().verdict, Verdict::FiniteUnionEvidence { k_max: 3, k0: 1 });

        assert!(matches!(classify(&fib, 14), Err(Error::DepthTooSmall { .. })));
    }

    #[test]
    fn fibonacci_certificates() {
        let fib = Substitution::fibonacci().dictionary(16).unwrap();
        let certs = approximant_sequence(&fib, 1..=10, 16).unwrap();
        for c in &certs {
            assert!(c.match_depth >= c.k);
            assert!(c.period >= c.k + 1);
        }
        let growth = period_growth(&certs, &fib).unwrap();
        assert!(growth.bounded_below);
        let json = serde_json::to_value(certs[0].to_json(&fib)).unwrap();
        assert_eq!(json["approximant_block"], "ab");
        assert_eq!(json["path_length"], 2);
    }

    #[test]
    fn one_defect_certificates() {
        let d = eventually("a", "b", "a", 10);
        let certs = approximant_sequence(&d, 1..=6, 10).unwrap();
        for c in &certs {
            let mut block = vec![1u16];
            block.extend(std::iter::repeat(0).take(c.k));
            let expected = PeriodicWord::from_block(Word(block)).unwrap();
            assert!(c.approximant.rotation_equivalent(&expected), "k = {}", c.k);
        }
    }

    #[test]
    fn periodic_target_is_recovered() {
        let a = ab();
        let p = PeriodicWord::from_block(a.parse("ab").unwrap()).unwrap();
        let d = TruncatedDictionary::from_periodic_word(a.clone(), &p, 10).unwrap();
        let certs = approximant_sequence(&d, 1..=8, 10).unwrap();
        for c in &certs {
            assert_eq!(c.match_depth, 10);
            assert_eq!(c.period, 2);
        }
        assert!(period_growth(&certs, &d).unwrap().periods.iter().all(|&q| q == 2));
    }

    #[test]
    fn refutation_propagates() {
        let wall = eventually("a", "", "b", 5);
        assert!(matches!(approximant_sequence(&wall, 1..=2, 5), Err(Error::NotStronglyConnected { order: 1, .. })));
    }

    #[test]
    fn fibonacci_substitution_approximants() {
        let a = ab();
        let s = Substitution::fibonacci();
        let seq = substitution_approximants(&s, &path(&a, &["aa"]), 0..=4, None).unwrap();
        let blocks: Vec<String> = seq.iter().map(|x| a.render(x.word.block())).collect();
        assert_eq!(blocks, ["a", "ab", "aba", "abaab", "abaababa"]);

        let from_b = substitution_approximants(&s, &path(&a, &["ba", "ab"]), 0..=0, None).unwrap();
        assert_eq!(a.render(from_b[0].word.block()), "ba");
    }

    #[test]
    fn fibonacci_substitution_match_depth_grows() {
        let a = ab();
        let seq = substitution_approximants(&Substitution::fibonacci(), &path(&a, &["aa"]), 0..=10, None).unwrap();
        assert!(seq.windows(2).all(|w| w[0].match_depth <= w[1].match_depth));
        assert!(seq.last().unwrap().match_depth >= 8);
    }

    #[test]
    fn one_defect_non_global_seed_stalls() {
        let d = eventually("a", "b", "a", 8);
        let g = GapGraph::build(&d, 1).unwrap();
        let seed = path(&ab(), &["aa"]);
        assert!(seed.lies_in(&g) && !seed.is_global(&g));
        let eta = periodic_word_from_path(&seed).unwrap();
        let dic = TruncatedDictionary::from_periodic_word(ab(), &eta, 8).unwrap();
        // level 1 of a^∞ is {a}, already different from {a, b}
        assert_eq!(dic.match_depth(&d, 8).unwrap(), 0);
    }

    #[test]
    fn non_primitive_seed_precondition() {
        // S²(a) = aab·aab·b has a in its interior and covers the alphabet
        let s = Substitution::from_rules(ab(), &[("a", "aab"), ("b", "b")]).unwrap();
        assert!(!s.is_primitive().is_primitive());
        let (special, _) = s.special_letter().unwrap();
        assert_eq!(special, 0);
        let a = ab();
        assert!(matches!(
            substitution_approximants(&s, &path(&a, &["bb"]), 0..=2, Some(6)),
            Err(Error::Precondition(_))
        ));
        let ok = substitution_approximants(&s, &path(&a, &["ab", "ba"]), 0..=3, Some(6)).unwrap();
        assert_eq!(ok.len(), 4);
    }
}
