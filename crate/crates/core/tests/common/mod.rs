#![allow(dead_code)]

use perapprox::{Alphabet, PeriodicWord, Substitution, TruncatedDictionary, Word};

pub fn ab() -> Alphabet {
    Alphabet::chars("ab").unwrap()
}

pub fn periodic(block: &str, depth: usize) -> TruncatedDictionary {
    let a = ab();
    TruncatedDictionary::from_periodic_word(a.clone(), &PeriodicWord::from_block(a.parse(block).unwrap()).unwrap(), depth).unwrap()
}

pub fn eventually_periodic(left: &str, mid: &str, right: &str, depth: usize) -> TruncatedDictionary {
    let a = ab();
    let mid = if mid.is_empty() { Word::empty() } else { a.parse(mid).unwrap() };
    TruncatedDictionary::from_eventually_periodic(a.clone(), &a.parse(left).unwrap(), &mid, &a.parse(right).unwrap(), depth).unwrap()
}

pub fn substitution(rules: &[(&str, &str)], depth: usize) -> TruncatedDictionary {
    Substitution::from_rules(ab(), rules).unwrap().dictionary(depth).unwrap()
}

/// The dictionaries every graph-level property is checked on.
pub fn corpus() -> Vec<(&'static str, TruncatedDictionary)> {
    vec![
        ("fibonacci", Substitution::fibonacci().dictionary(12).unwrap()),
        ("grs", Substitution::golay_rudin_shapiro().dictionary(9).unwrap()),
        ("thue_morse", substitution(&[("a", "ab"), ("b", "ba")], 9)),
        ("period_doubling", substitution(&[("a", "ab"), ("b", "aa")], 9)),
        ("one_defect", eventually_periodic("a", "b", "a", 9)),
        ("two_defect", eventually_periodic("a", "ba", "b", 7)),
        ("half_line", eventually_periodic("a", "", "b", 6)),
        ("baab", periodic("baab", 8)),
        ("baa", periodic("baa", 7)),
        ("full_shift", TruncatedDictionary::full_shift(ab(), 6).unwrap()),
    ]
}
