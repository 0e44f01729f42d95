//! Ground-truth counts of restricted two-color partitions by exhaustive
//! enumeration, independent of the series machinery.
//!
//! `c(k, n)` counts two-color (blue/red) partitions of `n` where
//!
//! 1. the smallest part `s` is odd and occurs at least once in blue,
//! 2. every even blue part is at least `s + 2k - 1`,
//! 3. even parts of the same color are distinct.
//!
//! `c(n)` is the `k -> ∞` limit, reached already at `k = n`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Blue,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartEntry {
    pub value: u32,
    pub color: Color,
    pub multiplicity: u32,
}

/// A two-color partition with entries sorted by descending value, blue first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColoredPartition {
    pub parts: Vec<PartEntry>,
}

/// Which `k` a count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KBound {
    Finite(u32),
    Limit,
}

impl fmt::Display for KBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KBound::Finite(k) => write!(f, "{k}"),
            KBound::Limit => write!(f, "limit"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub k: KBound,
    pub n: u32,
    pub count: u64,
}

impl ColoredPartition {
    pub fn total(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| u64::from(p.value) * u64::from(p.multiplicity))
            .sum()
    }

    /// `s(π)`, the smallest part value.
    pub fn smallest_part(&self) -> Option<u32> {
        self.parts.iter().map(|p| p.value).min()
    }

    /// Checks every defining condition from scratch. `k = None` checks the limit,
    /// where the bound on even blue parts grows past any `n` and none survive.
    pub fn satisfies(&self, k: Option<u32>) -> bool {
        let Some(s) = self.smallest_part() else {
            return false;
        };
        let well_formed = self.parts.iter().all(|p| p.value > 0 && p.multiplicity > 0)
            && self
                .parts
                .windows(2)
                .all(|w| (w[0].value, w[1].color) > (w[1].value, w[0].color));
        if !well_formed || s % 2 == 0 {
            return false;
        }
        let blue_smallest = self
            .parts
            .iter()
            .any(|p| p.value == s && p.color == Color::Blue);
        let evens_distinct = self
            .parts
            .iter()
            .filter(|p| p.value % 2 == 0)
            .all(|p| p.multiplicity == 1);
        let blue_evens_large = match k {
            None => !self
                .parts
                .iter()
                .any(|p| p.color == Color::Blue && p.value % 2 == 0),
            Some(k) => self
                .parts
                .iter()
                .filter(|p| p.color == Color::Blue && p.value % 2 == 0)
                .all(|p| u64::from(p.value) >= u64::from(s) + 2 * u64::from(k) - 1),
        };
        blue_smallest && evens_distinct && blue_evens_large
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                let c = match p.color {
                    Color::Blue => 'b',
                    Color::Red => 'r',
                };
                if p.multiplicity == 1 {
                    format!("{}{c}", p.value)
                } else {
                    format!("{}{c}^{}", p.value, p.multiplicity)
                }
            })
            .collect();
        write!(f, "({})", items.join(", "))
    }
}

struct Search<'a, F: FnMut(&ColoredPartition)> {
    smallest: u32,
    blue_even_min: u64,
    current: Vec<PartEntry>,
    visit: &'a mut F,
}

impl<F: FnMut(&ColoredPartition)> Search<'_, F> {
    fn push(&mut self, value: u32, color: Color, multiplicity: u32) {
        if multiplicity > 0 {
            self.current.push(PartEntry {
                value,
                color,
                multiplicity,
            });
        }
    }

    fn pop(&mut self, multiplicity: u32) {
        if multiplicity > 0 {
            self.current.pop();
        }
    }

    /// Place parts of size `value` and below (down to the smallest part).
    fn descend(&mut self, value: u32, remaining: u32) {
        let s = self.smallest;
        if remaining < s {
            return;
        }
        if value == s {
            // the smallest part closes the partition: at least one blue copy
            if !remaining.is_multiple_of(s) {
                return;
            }
            let copies = remaining / s;
            for blue in 1..=copies {
                let red = copies - blue;
                self.push(s, Color::Blue, blue);
                self.push(s, Color::Red, red);
                let snapshot = ColoredPartition {
                    parts: self.current.clone(),
                };
                (self.visit)(&snapshot);
                self.pop(red);
                self.pop(blue);
            }
            return;
        }
        let most = remaining / value;
        let (blue_max, red_max) = if value % 2 == 1 {
            (most, most)
        } else {
            let blue_ok = u64::from(value) >= self.blue_even_min;
            (if blue_ok { most.min(1) } else { 0 }, most.min(1))
        };
        for blue in 0..=blue_max {
            for red in 0..=red_max.min(most - blue) {
                let used = value * (blue + red);
                self.push(value, Color::Blue, blue);
                self.push(value, Color::Red, red);
                self.descend(value - 1, remaining - used);
                self.pop(red);
                self.pop(blue);
            }
        }
    }
}

/// Visit every partition counted by `c(k, n)` (`k = None`: the limit `c(n)`).
pub fn enumerate_ck<F: FnMut(&ColoredPartition)>(k: Option<u32>, n: u32, mut visit: F) {
    for smallest in (1..=n).step_by(2) {
        let blue_even_min = match k {
            Some(k) => u64::from(smallest) + 2 * u64::from(k) - 1,
            None => u64::MAX,
        };
        let mut search = Search {
            smallest,
            blue_even_min,
            current: Vec::new(),
            visit: &mut visit,
        };
        search.descend(n, n);
    }
}

/// `c(k, n)`; `k >= 1`.
pub fn count_ck(k: u32, n: u32) -> u64 {
    assert!(k >= 1, "k must be positive");
    let mut count = 0u64;
    enumerate_ck(Some(k), n, |_| count += 1);
    count
}

/// `c(n)`, computed as `c(n, n)`: with `k = n` every even blue part would
/// exceed `n`, so the count no longer depends on `k`.
pub fn count_c_limit(n: u32) -> u64 {
    count_ck(n.max(1), n)
}

/// Counts for `n = 0..=n_max`.
pub fn counts(k: KBound, n_max: u32) -> Vec<OracleCount> {
    (0..=n_max)
        .map(|n| OracleCount {
            k,
            n,
            count: match k {
                KBound::Finite(k) => count_ck(k, n),
                KBound::Limit => count_c_limit(n),
            },
        })
        .collect()
}
