//! Deterministic generators for the string families used by the lemma
//! checks.

use rand::Rng;

use crate::bits::BitString;
use crate::combinatorics::StringFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Independent uniform strings.
    Random,
    /// `K` copies of one random string.
    Identical,
    /// Rows of a Sylvester–Hadamard matrix (and their complements once the
    /// rows run out), truncated to the requested length.
    Hadamard,
    /// A coset of a random binary linear code.
    LinearCoset,
    /// Random strings paired with their complements.
    ComplementPairs,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Random,
        FamilyKind::Identical,
        FamilyKind::Hadamard,
        FamilyKind::LinearCoset,
        FamilyKind::ComplementPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Random => "random",
            FamilyKind::Identical => "identical",
            FamilyKind::Hadamard => "hadamard",
            FamilyKind::LinearCoset => "linear-coset",
            FamilyKind::ComplementPairs => "complement-pairs",
        }
    }

    pub fn generate<R: Rng + ?Sized>(self, rng: &mut R, k: usize, length: usize) -> StringFamily {
        let members = match self {
            FamilyKind::Random => (0..k).map(|_| random_string(rng, length)).collect(),
            FamilyKind::Identical => {
                let s = random_string(rng, length);
                vec![s; k]
            }
            FamilyKind::Hadamard => hadamard_rows(k, length),
            FamilyKind::LinearCoset => linear_coset(rng, k, length),
            FamilyKind::ComplementPairs => {
                let mut out = Vec::with_capacity(k);
                while out.len() < k {
                    let s = random_string(rng, length);
                    out.push(s.complement());
                    out.push(s);
                }
                out.truncate(k);
                out
            }
        };
        StringFamily::new(members).expect("generators produce equal-length strings")
    }
}

pub fn random_string<R: Rng + ?Sized>(rng: &mut R, length: usize) -> BitString {
    (0..length).map(|_| rng.random::<bool>()).collect()
}

fn hadamard_rows(k: usize, length: usize) -> Vec<BitString> {
    let order = length.max(1).next_power_of_two();
    // Entry (i, j) of the Sylvester matrix is (-1)^popcount(i & j).
    let rows: Vec<BitString> = (0..order)
        .map(|i| {
            (0..length)
                .map(|j| (i & j).count_ones() % 2 == 1)
                .collect()
        })
        .collect();
    rows.iter()
        .cloned()
        .chain(rows.iter().map(BitString::complement))
        .cycle()
        .take(k)
        .collect()
}

fn linear_coset<R: Rng + ?Sized>(rng: &mut R, k: usize, length: usize) -> Vec<BitString> {
    let dim = k.max(2).next_power_of_two().trailing_zeros() as usize;
    let generators: Vec<BitString> = (0..dim).map(|_| random_string(rng, length)).collect();
    let offset = random_string(rng, length);
    (0..k)
        .map(|m| {
            let mut word: Vec<bool> = offset.as_slice().to_vec();
            for (g, row) in generators.iter().enumerate() {
                if (m >> g) & 1 == 1 {
                    for (w, &r) in word.iter_mut().zip(row.as_slice()) {
                        *w ^= r;
                    }
                }
            }
            BitString::new(word)
        })
        .collect()
}
