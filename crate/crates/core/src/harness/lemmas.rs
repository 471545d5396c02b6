//! Randomized and exhaustive checks of the combinatorial facts the attacks
//! rely on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::attacks::merge_triple_word;
use crate::bits::BitString;
use crate::combinatorics::{
    close_pair_bound, close_pairs, close_triples, diameter, find_close_pair, FamilyKind,
    StringFamily,
};
use crate::mix::absorb;
use crate::rational::{format_rational, half_plus, int, ratio, within, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaParams {
    /// Family size for the counting properties.
    pub family_k: usize,
    /// String length for the counting properties.
    pub family_len: usize,
    /// Each value gets a pair-count check on every generator.
    pub pair_eps: Vec<Rational>,
    pub triple_eps: Rational,
    /// Family size for the complement-pairs generator.
    pub complement_k: usize,
    /// Random families for the close-pair bound.
    pub trials: u64,
    pub seed: u64,
    /// Exhaustive merge check for word lengths up to this.
    pub merge_max_len: usize,
    pub merge_eps: Vec<Rational>,
}

impl Default for LemmaParams {
    fn default() -> Self {
        LemmaParams {
            family_k: 32,
            family_len: 64,
            pair_eps: vec![ratio(1, 8)],
            triple_eps: ratio(1, 16),
            complement_k: 8,
            trials: 100_000,
            seed: 0,
            merge_max_len: 8,
            merge_eps: vec![int(0), ratio(1, 8)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub all_passed: bool,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl LemmaReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

const COUNTED_KINDS: [FamilyKind; 4] = [
    FamilyKind::Random,
    FamilyKind::Identical,
    FamilyKind::Hadamard,
    FamilyKind::LinearCoset,
];

pub fn verify_lemmas(params: &LemmaParams) -> LemmaReport {
    let mut properties = vec![close_pair_exhaustive(), close_pair_random(params)];
    let families: Vec<(FamilyKind, StringFamily)> = COUNTED_KINDS
        .iter()
        .map(|&kind| (kind, family(params, kind, params.family_k)))
        .chain(std::iter::once((
            FamilyKind::ComplementPairs,
            family(params, FamilyKind::ComplementPairs, params.complement_k),
        )))
        .collect();
    for eps in &params.pair_eps {
        for (kind, fam) in &families {
            properties.push(pair_count(*kind, fam, *eps));
        }
    }
    for (kind, fam) in &families[..COUNTED_KINDS.len()] {
        properties.push(triple_count(*kind, fam, params.triple_eps));
    }
    properties.push(oracle_agreement(&families, params));
    for eps in &params.merge_eps {
        properties.push(merge_guarantee(params.merge_max_len, *eps));
    }
    LemmaReport {
        all_passed: properties.iter().all(|p| p.passed),
        seed: params.seed,
        properties,
    }
}

fn family(params: &LemmaParams, kind: FamilyKind, k: usize) -> StringFamily {
    let idx = FamilyKind::ALL.iter().position(|&f| f == kind).unwrap() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(absorb(params.seed, idx));
    kind.generate(&mut rng, k, params.family_len)
}

fn show(members: &[BitString]) -> String {
    members.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn check_close_pair(members: Vec<BitString>) -> Option<String> {
    let (k, len) = (members.len(), members[0].len());
    let fam = StringFamily::new(members).expect("equal lengths");
    let (_, _, d) = find_close_pair(&fam).expect("k >= 2");
    (int(d) > close_pair_bound(k, len)).then(|| format!("{{{}}} has closest distance {d}", show(fam.members())))
}

fn close_pair_exhaustive() -> PropertyResult {
    let mut checked = 0;
    let mut counterexample = None;
    'outer: for len in 1..=4usize {
        let all = 1u64 << len;
        for a in 0..all {
            for b in 0..all {
                for c in 0..all {
                    checked += 1;
                    let members = [a, b, c].map(|v| BitString::from_u64(v, len)).to_vec();
                    if let Some(ce) = check_close_pair(members) {
                        counterexample = Some(ce);
                        break 'outer;
                    }
                }
            }
        }
    }
    PropertyResult {
        name: "close-pair bound, exhaustive K=3, l<=4".into(),
        passed: counterexample.is_none(),
        checked,
        detail: "closest pair within (1/2 + 1/(2(K-1))) * l".into(),
        counterexample,
    }
}

fn close_pair_random(params: &LemmaParams) -> PropertyResult {
    let mut rng = ChaCha8Rng::seed_from_u64(absorb(params.seed, 0xC105E));
    let mut counterexample = None;
    let mut checked = 0;
    for _ in 0..params.trials {
        let k = rng.random_range(2..=8);
        let len = rng.random_range(1..=16);
        let members = (0..k)
            .map(|_| (0..len).map(|_| rng.random::<bool>()).collect())
            .collect();
        checked += 1;
        if let Some(ce) = check_close_pair(members) {
            counterexample = Some(ce);
            break;
        }
    }
    PropertyResult {
        name: "close-pair bound, random K<=8, l<=16".into(),
        passed: counterexample.is_none(),
        checked,
        detail: "closest pair within (1/2 + 1/(2(K-1))) * l".into(),
        counterexample,
    }
}

fn pair_count(kind: FamilyKind, fam: &StringFamily, eps: Rational) -> PropertyResult {
    let k = fam.len();
    let count = close_pairs(fam, eps).len();
    let need = eps * int(k * k) / 2;
    PropertyResult {
        name: format!(
            "close-pair count, eps={}, family={}, K={k}, l={}",
            format_rational(&eps),
            kind.name(),
            fam.length()
        ),
        passed: int(count) >= need,
        checked: (k * (k - 1) / 2) as u64,
        detail: format!("{count} close pairs, need >= {}", format_rational(&need)),
        counterexample: None,
    }
}

fn triple_count(kind: FamilyKind, fam: &StringFamily, eps: Rational) -> PropertyResult {
    let k = fam.len();
    let count = close_triples(fam, eps).len();
    let need = eps * int(k * k * k) / 4;
    PropertyResult {
        name: format!(
            "close-triple count, eps={}, family={}, K={k}, l={}",
            format_rational(&eps),
            kind.name(),
            fam.length()
        ),
        passed: int(count) >= need,
        checked: (k * (k - 1) * (k.saturating_sub(2)) / 6) as u64,
        detail: format!("{count} close triples, need >= {}", format_rational(&need)),
        counterexample: None,
    }
}

/// `2 q d <= (q + 2 p) l` for `eps = p / q`, written out independently of
/// the library's threshold helpers.
fn naive_close(d: usize, eps: Rational, len: usize) -> bool {
    let (p, q) = (*eps.numer(), *eps.denom());
    2 * q * d as i128 <= (q + 2 * p) * len as i128
}

fn oracle_agreement(families: &[(FamilyKind, StringFamily)], params: &LemmaParams) -> PropertyResult {
    let mut checked = 0;
    let mut counterexample = None;
    let mut eps_list = params.pair_eps.clone();
    eps_list.push(params.triple_eps);
    for (kind, fam) in families {
        let m = fam.members();
        let k = m.len();
        for &eps in &eps_list {
            let d = |i: usize, j: usize| m[i].distance(&m[j]).unwrap();
            let mut pairs = 0;
            let mut triples = 0;
            for i in 0..k {
                for j in i + 1..k {
                    pairs += usize::from(naive_close(d(i, j), eps, fam.length()));
                    for l in j + 1..k {
                        let diam = d(i, j).max(d(i, l)).max(d(j, l));
                        triples += usize::from(naive_close(diam, eps, fam.length()));
                    }
                }
            }
            checked += 1;
            let (lp, lt) = (close_pairs(fam, eps).len(), close_triples(fam, eps).len());
            if (lp, lt) != (pairs, triples) && counterexample.is_none() {
                counterexample = Some(format!(
                    "family {} at eps {}: library ({lp}, {lt}) vs naive ({pairs}, {triples})",
                    kind.name(),
                    format_rational(&eps)
                ));
            }
        }
    }
    PropertyResult {
        name: "close pair/triple counts agree with naive loops".into(),
        passed: counterexample.is_none(),
        checked,
        detail: "pair and triple counts compared per family and eps".into(),
        counterexample,
    }
}

fn merge_guarantee(max_len: usize, eps: Rational) -> PropertyResult {
    let bound = ratio(1, 4) + eps / 2;
    let mut checked = 0;
    let mut counterexample = None;
    for len in 1..=max_len {
        let all = 1u64 << len;
        let limit = bound * int(len) + 1;
        let (count, bad) = (0..all)
            .into_par_iter()
            .map(|a| {
                let wa = BitString::from_u64(a, len);
                let mut count = 0u64;
                for b in 0..all {
                    let wb = BitString::from_u64(b, len);
                    for c in 0..all {
                        let wc = BitString::from_u64(c, len);
                        if !within(diameter(&wa, &wb, &wc).unwrap(), half_plus(eps), len) {
                            continue;
                        }
                        count += 1;
                        let m = merge_triple_word(&wa, &wb, &wc, eps).unwrap();
                        if [&wa, &wb, &wc].iter().any(|w| int(m.distance(w).unwrap()) > limit) {
                            return (count, Some(format!("({wa}, {wb}, {wc}) -> {m}")));
                        }
                    }
                }
                (count, None)
            })
            .reduce(
                || (0, None),
                |x, y| (x.0 + y.0, x.1.or(y.1)),
            );
        checked += count;
        if bad.is_some() {
            counterexample = bad;
            break;
        }
    }
    PropertyResult {
        name: format!(
            "merge guarantee, exhaustive A<={max_len}, eps={}",
            format_rational(&eps)
        ),
        passed: counterexample.is_none(),
        checked,
        detail: "merged word within (1/4 + eps/2) * A + 1 of each word of diameter <= (1/2 + eps) * A"
            .into(),
        counterexample,
    }
}
