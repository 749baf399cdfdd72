//! Packed GF(2) vectors and the small amount of dense GF(2) linear algebra
//! the rest of the crate needs (echelon forms, kernels).

use std::fmt;

const WORD: usize = 64;

/// A fixed-length bit vector packed into 64-bit words.
///
/// Bits past `len` in the last word are always zero, so equality, hashing and
/// popcounts can work on whole words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        b.clear_tail();
        b
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = Bits::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            if v {
                b.set(i, true);
            }
        }
        b
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_binary_str(s: &str) -> Option<Self> {
        let mut b = Bits::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                _ => return None,
            }
        }
        Some(b)
    }

    /// Vector with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut b = Bits::zeros(len);
        for &p in positions {
            b.set(p, true);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if v {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Number of positions set in both vectors.
    #[inline]
    pub fn and_count(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// GF(2) dot product.
    #[inline]
    pub fn dot(&self, other: &Bits) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// Number of positions set in either vector.
    pub fn or_count(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let t = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Bits) -> Bits {
        let mut out = Bits::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The bits in `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Low bits as an integer; only meaningful for `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of `rows` over GF(2), all of length `ncols`.
///
/// Returns the nonzero reduced rows in pivot order along with their pivot
/// columns. Pivots are chosen leftmost-first.
pub fn rref(rows: &[Bits], ncols: usize) -> (Vec<Bits>, Vec<usize>) {
    let mut m: Vec<Bits> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i].get(c)) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Bits], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{v : row . v = 0 for every row}`, one vector per free column,
/// free columns taken in increasing order.
pub fn kernel(rows: &[Bits], ncols: usize) -> Vec<Bits> {
    let (reduced, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = Bits::zeros(ncols);
        v.set(free, true);
        for (row, &p) in reduced.iter().zip(&pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `rows . v = rhs` for one particular `v`, if any exists.
pub fn solve(rows: &[Bits], rhs: &Bits, ncols: usize) -> Option<Bits> {
    // Augment each row with its right-hand side bit as an extra column.
    let augmented: Vec<Bits> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.concat(&Bits::zeros(1));
            a.set(ncols, rhs.get(i));
            a
        })
        .collect();
    let (reduced, pivots) = rref(&augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = Bits::zeros(ncols);
    for (row, &p) in reduced.iter().zip(&pivots) {
        if row.get(ncols) {
            v.set(p, true);
        }
    }
    Some(v)
}
