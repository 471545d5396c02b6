//! Hamming-space primitives and constructive searches for close pairs,
//! close triples and cliques of mutually close strings.
//!
//! Every "close" test has the form `distance <= (1/2 + eps) * len` and is
//! evaluated in exact rational arithmetic.

#![allow(clippy::needless_range_loop)]

pub mod families;

pub use families::FamilyKind;

use crate::bits::{hamming_slices, BitString};
use crate::error::{Error, Result};
use crate::rational::{half_plus, int, ratio, within, Rational};

/// `K >= 1` strings of a common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringFamily {
    members: Vec<BitString>,
    length: usize,
}

impl StringFamily {
    pub fn new(members: Vec<BitString>) -> Result<Self> {
        let length = members
            .first()
            .ok_or_else(|| Error::invalid("a string family needs at least one member"))?
            .len();
        if let Some(bad) = members.iter().find(|m| m.len() != length) {
            return Err(Error::invalid(format!(
                "family member {bad} has length {} but the family length is {length}",
                bad.len()
            )));
        }
        Ok(StringFamily { members, length })
    }

    /// Number of members `K`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Common string length `l`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn members(&self) -> &[BitString] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &BitString {
        &self.members[i]
    }

    fn dist(&self, i: usize, j: usize) -> usize {
        hamming_slices(self.members[i].as_slice(), self.members[j].as_slice())
    }
}

/// Indices into a [`StringFamily`] whose members are pairwise within
/// `threshold * l` of each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSet {
    pub indices: Vec<usize>,
    /// Fraction of the string length bounding every pairwise distance.
    pub threshold: Rational,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Checks the clique property directly.
    pub fn verify(&self, family: &StringFamily) -> bool {
        self.indices.iter().enumerate().all(|(a, &i)| {
            self.indices[a + 1..]
                .iter()
                .all(|&j| within(family.dist(i, j), self.threshold, family.length()))
        })
    }
}

pub fn hamming(s: &BitString, t: &BitString) -> Result<usize> {
    s.distance(t)
}

/// Largest of the three pairwise distances.
pub fn diameter(s1: &BitString, s2: &BitString, s3: &BitString) -> Result<usize> {
    Ok(hamming(s1, s2)?
        .max(hamming(s1, s3)?)
        .max(hamming(s2, s3)?))
}

/// Bitwise majority of three equal-length strings.
pub fn majority_word(w1: &BitString, w2: &BitString, w3: &BitString) -> Result<BitString> {
    if w1.len() != w2.len() || w1.len() != w3.len() {
        return Err(Error::invalid(format!(
            "majority needs equal lengths, got {}, {}, {}",
            w1.len(),
            w2.len(),
            w3.len()
        )));
    }
    Ok(w1
        .iter()
        .zip(w2.iter())
        .zip(w3.iter())
        .map(|((a, b), c)| (a & b) | (a & c) | (b & c))
        .collect())
}

/// The guaranteed close-pair distance `(1/2 + 1/(2(K-1))) * l`.
pub fn close_pair_bound(k: usize, length: usize) -> Rational {
    assert!(k >= 2);
    (ratio(1, 2) + ratio(1, 2 * (k as i128 - 1))) * int(length)
}

/// A pair at minimum distance, lexicographically smallest among ties.
/// Returns `(i, j, distance)` with `i < j`.
pub fn find_close_pair(family: &StringFamily) -> Result<(usize, usize, usize)> {
    let k = family.len();
    if k < 2 {
        return Err(Error::invalid(format!(
            "need at least 2 strings to find a pair, got {k}"
        )));
    }
    let mut best = (0, 1, family.dist(0, 1));
    for i in 0..k {
        for j in i + 1..k {
            let d = family.dist(i, j);
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    Ok(best)
}

/// All pairs `i < j` with distance at most `(1/2 + eps) * l`, in
/// lexicographic order.
pub fn close_pairs(family: &StringFamily, eps: Rational) -> Vec<(usize, usize)> {
    let frac = half_plus(eps);
    let k = family.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if within(family.dist(i, j), frac, family.length()) {
                out.push((i, j));
            }
        }
    }
    out
}

/// All triples `i < j < m` with diameter at most `(1/2 + eps) * l`, in
/// lexicographic order.
pub fn close_triples(family: &StringFamily, eps: Rational) -> Vec<(usize, usize, usize)> {
    let adj = adjacency(family, half_plus(eps));
    let k = family.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !adj[i][j] {
                continue;
            }
            for m in j + 1..k {
                if adj[i][m] && adj[j][m] {
                    out.push((i, j, m));
                }
            }
        }
    }
    out
}

fn adjacency(family: &StringFamily, frac: Rational) -> Vec<Vec<bool>> {
    let k = family.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let close = within(family.dist(i, j), frac, family.length());
            adj[i][j] = close;
            adj[j][i] = close;
        }
    }
    adj
}

/// Largest family size for which the exact clique search runs.
pub const EXACT_CLIQUE_LIMIT: usize = 64;

/// A set of at least `target` members that are pairwise within
/// `(1/2 + eps) * l`.
///
/// Tries greedy growth from every seed first; if that falls short and the
/// family has at most [`EXACT_CLIQUE_LIMIT`] members, runs an exact
/// branch-and-bound search. On failure the error carries the largest clique
/// seen.
pub fn find_close_clique(
    family: &StringFamily,
    eps: Rational,
    target: usize,
) -> Result<CliqueSet> {
    if target == 0 {
        return Err(Error::invalid("clique target size must be at least 1"));
    }
    let threshold = half_plus(eps);
    let mut best = clique_search(&adjacency(family, threshold), target);
    best.sort_unstable();
    let set = CliqueSet {
        indices: best,
        threshold,
    };
    if set.len() >= target {
        Ok(set)
    } else {
        Err(Error::CliqueExhausted { target, best: set })
    }
}

// Greedy growth from each seed, then exact search if still short.
fn clique_search(adj: &[Vec<bool>], target: usize) -> Vec<usize> {
    let k = adj.len();
    let mut best: Vec<usize> = vec![0];
    for seed in 0..k {
        let mut clique = vec![seed];
        for v in 0..k {
            if v != seed && clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
        if best.len() >= target {
            return best;
        }
    }
    if k <= EXACT_CLIQUE_LIMIT {
        let masks: Vec<u64> = (0..k)
            .map(|i| (0..k).filter(|&j| adj[i][j]).fold(0u64, |m, j| m | (1 << j)))
            .collect();
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        branch_and_bound(&masks, all, &mut Vec::new(), &mut best, target);
    }
    best
}

// Returns true once a clique of size `target` has been recorded in `best`.
fn branch_and_bound(
    masks: &[u64],
    candidates: u64,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
    target: usize,
) -> bool {
    if current.len() > best.len() {
        *best = current.clone();
        if best.len() >= target {
            return true;
        }
    }
    let mut cand = candidates;
    while cand != 0 {
        if current.len() + cand.count_ones() as usize <= best.len() {
            return false;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1u64 << v);
        current.push(v);
        if branch_and_bound(masks, cand & masks[v], current, best, target) {
            return true;
        }
        current.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;
    use proptest::prelude::*;

    fn family(words: &[&str]) -> StringFamily {
        StringFamily::new(words.iter().map(|w| bits(w)).collect()).unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&bits("0000"), &bits("0000")).unwrap(), 0);
        assert_eq!(hamming(&bits("0011"), &bits("0101")).unwrap(), 2);
        assert_eq!(hamming(&bits("000"), &bits("111")).unwrap(), 3);
        assert!(hamming(&bits("0"), &bits("01")).is_err());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&bits("000"), &bits("000"), &bits("000")).unwrap(), 0);
        assert_eq!(diameter(&bits("000"), &bits("011"), &bits("101")).unwrap(), 2);
        assert_eq!(
            diameter(&bits("0000"), &bits("1111"), &bits("0011")).unwrap(),
            4
        );
        assert!(diameter(&bits("0"), &bits("0"), &bits("00")).is_err());
    }

    #[test]
    fn majority_examples() {
        let (a, b, c) = (bits("000"), bits("011"), bits("101"));
        let m = majority_word(&a, &b, &c).unwrap();
        assert_eq!(m, bits("001"));
        assert_eq!(majority_word(&a, &a, &a).unwrap(), a);
        assert_eq!(hamming(&m, &a).unwrap() + hamming(&m, &b).unwrap(), 2);
        assert!(majority_word(&a, &b, &bits("1")).is_err());
    }

    #[test]
    fn close_pair_examples() {
        let f = family(&["000", "111"]);
        assert_eq!(close_pair_bound(2, 3), int(3));
        assert_eq!(find_close_pair(&f).unwrap(), (0, 1, 3));

        let f = family(&["00", "01", "10"]);
        assert_eq!(close_pair_bound(3, 2), ratio(3, 2));
        assert_eq!(find_close_pair(&f).unwrap(), (0, 1, 1));

        let f = family(&["0000", "0101", "0011", "0110"]);
        assert_eq!(find_close_pair(&f).unwrap(), (0, 1, 2));
        assert!(int(2) <= close_pair_bound(4, 4));

        assert!(find_close_pair(&family(&["01"])).is_err());
    }

    #[test]
    fn close_pairs_examples() {
        let same = family(&["0101"; 5]);
        assert_eq!(close_pairs(&same, ratio(1, 8)).len(), 10);

        let f = family(&["00", "01", "10"]);
        let pairs = close_pairs(&f, ratio(1, 4));
        assert_eq!(pairs, vec![(0, 1), (0, 2)]);
        // eps K^2 / 2 = 9/8
        assert!(int(pairs.len()) >= ratio(1, 4) * int(9) / int(2));

        let h = family(&["0000", "0101", "0011", "0110"]);
        assert_eq!(close_pairs(&h, ratio(0, 1)).len(), 6);
    }

    #[test]
    fn close_triples_examples() {
        let same = family(&["11"; 5]);
        assert_eq!(close_triples(&same, ratio(1, 8)).len(), 10);

        let h = family(&["0000", "0101", "0011", "0110"]);
        assert_eq!(close_triples(&h, ratio(0, 1)).len(), 4);

        let f = family(&["000", "111", "010"]);
        assert!(close_triples(&f, ratio(1, 10)).is_empty());
    }

    #[test]
    fn clique_examples() {
        let h = family(&["0000", "0101", "0011", "0110"]);
        let c = find_close_clique(&h, ratio(0, 1), 4).unwrap();
        assert_eq!(c.indices, vec![0, 1, 2, 3]);
        assert!(c.verify(&h));

        let f = family(&["0000", "1111"]);
        match find_close_clique(&f, ratio(0, 1), 2) {
            Err(Error::CliqueExhausted { target, best }) => {
                assert_eq!(target, 2);
                assert_eq!(best.len(), 1);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }

        let c = find_close_clique(&f, ratio(0, 1), 1).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn exact_search_beats_greedy() {
        // Triangle {3, 4, 5}; each of its vertices also has a pendant
        // neighbour of lower index, so every greedy seed stalls at size 2.
        let mut adj = vec![vec![false; 6]; 6];
        for (u, v) in [(3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)] {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let mut found = clique_search(&adj, 3);
        found.sort_unstable();
        assert_eq!(found, vec![3, 4, 5]);
        assert_eq!(clique_search(&adj, 4).len(), 3);
    }

    fn arb_family(max_k: usize, max_len: usize) -> impl Strategy<Value = StringFamily> {
        (1..=max_len, 1..=max_k).prop_flat_map(|(len, k)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), len), k)
                .prop_map(|v| StringFamily::new(v.into_iter().map(BitString::new).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric(a in proptest::collection::vec(any::<bool>(), 16),
                               b in proptest::collection::vec(any::<bool>(), 16),
                               c in proptest::collection::vec(any::<bool>(), 16)) {
            let (a, b, c) = (BitString::new(a), BitString::new(b), BitString::new(c));
            prop_assert_eq!(hamming(&a, &b).unwrap(), hamming(&b, &a).unwrap());
            prop_assert_eq!(hamming(&a, &a).unwrap(), 0);
            prop_assert!(hamming(&a, &c).unwrap() <= hamming(&a, &b).unwrap() + hamming(&b, &c).unwrap());
        }

        #[test]
        fn majority_partition_identity(a in proptest::collection::vec(any::<bool>(), 0..32), seed in any::<u64>()) {
            let len = a.len();
            let b: Vec<bool> = (0..len).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
            let c: Vec<bool> = (0..len).map(|i| (seed.rotate_left(17) >> (i % 64)) & 1 == 1).collect();
            let w = [BitString::new(a), BitString::new(b), BitString::new(c)];
            let m = majority_word(&w[0], &w[1], &w[2]).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        prop_assert_eq!(
                            hamming(&m, &w[i]).unwrap() + hamming(&m, &w[j]).unwrap(),
                            hamming(&w[i], &w[j]).unwrap()
                        );
                    }
                }
            }
        }

        #[test]
        fn close_pair_within_bound(f in arb_family(8, 16)) {
            prop_assume!(f.len() >= 2);
            let (i, j, d) = find_close_pair(&f).unwrap();
            prop_assert!(i < j);
            prop_assert!(int(d) <= close_pair_bound(f.len(), f.length()));
        }

        #[test]
        fn counts_agree_with_naive_loops(f in arb_family(12, 12), p in 0i128..5) {
            let eps = ratio(p, 8);
            let len = f.length() as i128;
            let close = |i: usize, j: usize| {
                let d = f.get(i).iter().zip(f.get(j).iter()).filter(|(x, y)| x != y).count() as i128;
                // 2qD <= (q + 2p) l with q = 8
                16 * d <= (8 + 2 * p) * len
            };
            let k = f.len();
            let mut pairs = 0;
            let mut triples = 0;
            for i in 0..k {
                for j in i + 1..k {
                    pairs += close(i, j) as usize;
                    for m in j + 1..k {
                        triples += (close(i, j) && close(i, m) && close(j, m)) as usize;
                    }
                }
            }
            prop_assert_eq!(close_pairs(&f, eps).len(), pairs);
            prop_assert_eq!(close_triples(&f, eps).len(), triples);
        }

        #[test]
        fn clique_certificates_verify(f in arb_family(14, 10), p in 0i128..5, target in 1usize..6) {
            match find_close_clique(&f, ratio(p, 8), target) {
                Ok(c) => {
                    prop_assert!(c.len() >= target);
                    prop_assert!(c.verify(&f));
                }
                Err(Error::CliqueExhausted { best, .. }) => {
                    prop_assert!(best.verify(&f));
                    prop_assert!(best.len() < target);
                }
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
