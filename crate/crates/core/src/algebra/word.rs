//! Monomials as base-`d` integers.
//!
//! The first letter is the most significant digit, so for words of one length
//! numeric order is lexicographic order with `x < y` (letter 0 before letter 1).

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub deg: u32,
    pub idx: u64,
}

impl Word {
    pub const EMPTY: Word = Word { deg: 0, idx: 0 };

    pub fn new(deg: u32, idx: u64) -> Self {
        Self { deg, idx }
    }

    pub fn letter(l: u32) -> Self {
        Self { deg: 1, idx: l as u64 }
    }

    pub fn from_letters(d: u32, letters: &[u32]) -> Self {
        let mut idx = 0u64;
        for &l in letters {
            debug_assert!(l < d);
            idx = idx * d as u64 + l as u64;
        }
        Self {
            deg: letters.len() as u32,
            idx,
        }
    }

    pub fn letters(&self, d: u32) -> Vec<u32> {
        let mut out = vec![0; self.deg as usize];
        let mut x = self.idx;
        for slot in out.iter_mut().rev() {
            *slot = (x % d as u64) as u32;
            x /= d as u64;
        }
        out
    }

    pub fn concat(&self, other: &Word, d: u32) -> Word {
        Word {
            deg: self.deg + other.deg,
            idx: self.idx * pow(d, other.deg) + other.idx,
        }
    }

    /// Splits into the first `k` letters and the rest.
    pub fn split(&self, k: u32, d: u32) -> (Word, Word) {
        let p = pow(d, self.deg - k);
        (
            Word::new(k, self.idx / p),
            Word::new(self.deg - k, self.idx % p),
        )
    }

    pub fn last_letter(&self, d: u32) -> u32 {
        (self.idx % d as u64) as u32
    }

    /// Letters as a compact string: `x`, `y` for two generators, `x1.x2.x1` otherwise.
    pub fn to_letter_string(&self, d: u32) -> String {
        let ls = self.letters(d);
        if d == 2 {
            ls.iter().map(|&l| if l == 0 { 'x' } else { 'y' }).collect()
        } else {
            let mut s = String::new();
            for (i, l) in ls.iter().enumerate() {
                if i > 0 {
                    s.push('.');
                }
                write!(s, "x{}", l + 1).unwrap();
            }
            s
        }
    }

    pub fn parse_letter_string(s: &str, d: u32) -> Option<Word> {
        let letters: Option<Vec<u32>> = if d == 2 && !s.contains('.') {
            s.chars()
                .map(|c| match c {
                    'x' => Some(0),
                    'y' => Some(1),
                    _ => None,
                })
                .collect()
        } else {
            s.split('.')
                .map(|t| {
                    t.strip_prefix('x')
                        .and_then(|n| n.parse::<u32>().ok())
                        .filter(|n| *n >= 1 && *n <= d)
                        .map(|n| n - 1)
                })
                .collect()
        };
        letters.map(|ls| Word::from_letters(d, &ls))
    }
}

#[inline]
pub fn pow(d: u32, k: u32) -> u64 {
    (d as u64).pow(k)
}

/// Name of generator `l` as accepted by the parser.
pub fn generator_name(d: u32, l: u32) -> String {
    if d == 2 {
        ["x", "y"][l as usize].to_string()
    } else {
        format!("x{}", l + 1)
    }
}
