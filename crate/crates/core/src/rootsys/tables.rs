//! Simple roots of the irreducible types in the standard (Bourbaki) realization.
//!
//! Coordinates are stored doubled so that the half-integral entries of E and F
//! stay integral. The scale factor turns the Euclidean product into the pairing
//! normalized by `(short, short) = 2`.

use super::{RootSystemType, Series};

pub(crate) struct EpsilonRealization {
    /// Twice the ε-coordinates of each simple root.
    pub doubled: Vec<Vec<i64>>,
    /// Multiplier taking `ε·ε` to the normalized pairing.
    pub scale: i64,
}

impl EpsilonRealization {
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        self.doubled
            .iter()
            .map(|a| {
                self.doubled
                    .iter()
                    .map(|b| {
                        let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                        debug_assert_eq!((dot * self.scale) % 4, 0);
                        dot * self.scale / 4
                    })
                    .collect()
            })
            .collect()
    }
}

fn unit_difference(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 2;
    v[j] = -2;
    v
}

pub(crate) fn realization(t: RootSystemType) -> EpsilonRealization {
    let n = t.rank;
    match t.series {
        Series::A => {
            EpsilonRealization { doubled: (0..n).map(|i| unit_difference(n + 1, i, i + 1)).collect(), scale: 1 }
        }
        Series::B | Series::C | Series::D => {
            let mut doubled: Vec<Vec<i64>> = (0..n - 1).map(|i| unit_difference(n, i, i + 1)).collect();
            let mut last = vec![0; n];
            match t.series {
                Series::B => last[n - 1] = 2,
                Series::C => last[n - 1] = 4,
                _ => {
                    last[n - 2] = 2;
                    last[n - 1] = 2;
                }
            }
            doubled.push(last);
            let scale = if t.series == Series::B { 2 } else { 1 };
            EpsilonRealization { doubled, scale }
        }
        Series::E => {
            let mut doubled =
                vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0], unit_difference(8, 1, 0)];
            for i in 3..n {
                doubled.push(unit_difference(8, i - 1, i - 2));
            }
            EpsilonRealization { doubled, scale: 1 }
        }
        Series::F => EpsilonRealization {
            doubled: vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
            scale: 2,
        },
        Series::G => EpsilonRealization { doubled: vec![vec![2, -2, 0], vec![-4, 2, 2]], scale: 1 },
    }
}

/// Number of positive roots of an irreducible type (test oracle).
#[cfg(test)]
pub(crate) fn classical_positive_count(t: RootSystemType) -> usize {
    let n = t.rank;
    match t.series {
        Series::A => n * (n + 1) / 2,
        Series::B | Series::C => n * n,
        Series::D => n * (n - 1),
        Series::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Series::F => 24,
        Series::G => 6,
    }
}
