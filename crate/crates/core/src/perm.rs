//! Bijections `V(X) -> V(Y)`, swap moves written in `Y`-labels, and the
//! Lehmer-code ranking used to index the state space.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("ranking supports n <= 20, got {0}")]
    RankOverflow(usize),
    #[error("rank {rank} out of range for n = {n}")]
    RankOutOfRange { rank: u64, n: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub const MAX_RANK_N: usize = 20;

/// A bijection from `X`-vertices to `Y`-vertices, stored as the image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bijection(Vec<usize>);

impl Bijection {
    pub fn identity(n: usize) -> Bijection {
        Bijection((0..n).collect())
    }

    pub fn new(image: Vec<usize>) -> Result<Bijection, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &y in &image {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(PermError::NotPermutation(n));
            }
        }
        Ok(Bijection(image))
    }

    /// A uniformly random bijection drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Bijection {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Bijection(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn inverse(&self) -> Bijection {
        let mut inv = vec![0; self.len()];
        for (a, &y) in self.0.iter().enumerate() {
            inv[y] = a;
        }
        Bijection(inv)
    }

    /// `self ∘ (a c)`: the images of `a` and `c` are exchanged.
    pub fn swapped(&self, a: usize, c: usize) -> Bijection {
        let mut img = self.0.clone();
        img.swap(a, c);
        Bijection(img)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Bijection) -> Bijection {
        Bijection(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Sign as parity: `0` for even, `1` for odd.
    pub fn parity(&self) -> u8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        (transpositions % 2) as u8
    }

    pub fn rank(&self) -> Result<u64, PermError> {
        rank(&self.0)
    }

    pub fn unrank(index: u64, n: usize) -> Result<Bijection, PermError> {
        let mut out = vec![0; n];
        unrank_into(index, &mut out)?;
        Ok(Bijection(out))
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Bijection {
    type Err = PermError;

    /// Comma-separated images, e.g. `2,0,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let image = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PermError::Parse(s.to_string()))?;
        Bijection::new(image)
    }
}

pub fn factorial(n: usize) -> Result<u64, PermError> {
    if n > MAX_RANK_N {
        return Err(PermError::RankOverflow(n));
    }
    Ok((1..=n as u64).product())
}

const FACT: [u64; MAX_RANK_N + 1] = {
    let mut f = [1u64; MAX_RANK_N + 1];
    let mut i = 1;
    while i <= MAX_RANK_N {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Lehmer-code mixed-radix rank; the identity has rank 0 and the reversal
/// has rank `n! - 1`.
#[inline]
pub fn rank(image: &[usize]) -> Result<u64, PermError> {
    let n = image.len();
    if n > MAX_RANK_N {
        return Err(PermError::RankOverflow(n));
    }
    Ok(rank_unchecked(image))
}

#[inline]
pub(crate) fn rank_unchecked(image: &[usize]) -> u64 {
    let n = image.len();
    let mut used: u32 = 0;
    let mut r = 0u64;
    for (i, &y) in image.iter().enumerate() {
        let smaller_used = (used & ((1u32 << y) - 1)).count_ones() as u64;
        r += (y as u64 - smaller_used) * FACT[n - 1 - i];
        used |= 1 << y;
    }
    r
}

pub fn unrank_into(index: u64, out: &mut [usize]) -> Result<(), PermError> {
    let n = out.len();
    if n > MAX_RANK_N {
        return Err(PermError::RankOverflow(n));
    }
    if index >= FACT[n] {
        return Err(PermError::RankOutOfRange { rank: index, n });
    }
    unrank_unchecked(index, out);
    Ok(())
}

#[inline]
pub(crate) fn unrank_unchecked(mut index: u64, out: &mut [usize]) {
    let n = out.len();
    let mut free: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for i in 0..n {
        let f = FACT[n - 1 - i];
        let mut k = index / f;
        index %= f;
        let mut bits = free;
        while k > 0 {
            bits &= bits - 1;
            k -= 1;
        }
        let y = bits.trailing_zeros() as usize;
        free &= !(1 << y);
        out[i] = y;
    }
}

/// A friendly swap written by the two `Y`-labels it exchanges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SwapMove {
    pub u: usize,
    pub v: usize,
}

impl SwapMove {
    pub fn new(u: usize, v: usize) -> SwapMove {
        assert_ne!(u, v, "a swap needs two distinct labels");
        SwapMove { u, v }
    }
}

impl fmt::Display for SwapMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SwapSequence(pub Vec<SwapMove>);

impl SwapSequence {
    pub fn new() -> SwapSequence {
        SwapSequence(Vec::new())
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> SwapSequence {
        SwapSequence(pairs.iter().map(|&(u, v)| SwapMove::new(u, v)).collect())
    }

    pub fn moves(&self) -> &[SwapMove] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, u: usize, v: usize) {
        self.0.push(SwapMove::new(u, v));
    }

    pub fn extend(&mut self, other: &SwapSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn reversed(&self) -> SwapSequence {
        SwapSequence(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for SwapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(SwapMove::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for SwapSequence {
    type Err = PermError;

    /// Whitespace- or comma-separated moves `u-v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut seq = SwapSequence::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let (u, v) = tok.split_once('-').ok_or_else(|| PermError::Parse(tok.to_string()))?;
            let u: usize = u.parse().map_err(|_| PermError::Parse(tok.to_string()))?;
            let v: usize = v.parse().map_err(|_| PermError::Parse(tok.to_string()))?;
            if u == v {
                return Err(PermError::Parse(tok.to_string()));
            }
            seq.push(u, v);
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_extremes() {
        assert_eq!(Bijection::identity(4).rank(), Ok(0));
        assert_eq!(Bijection::new(vec![3, 2, 1, 0]).unwrap().rank(), Ok(23));
        assert_eq!(Bijection::unrank(23, 4).unwrap().image(), &[3, 2, 1, 0]);
        assert!(Bijection::unrank(24, 4).is_err());
        assert_eq!(rank(&(0..21).collect::<Vec<_>>()), Err(PermError::RankOverflow(21)));
        assert_eq!(factorial(20), Ok(2432902008176640000));
    }

    #[test]
    fn parity_and_inverse() {
        let b = Bijection::new(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(b.parity(), 0);
        assert_eq!(b.swapped(0, 3).parity(), 1);
        assert_eq!(b.compose(&b.inverse()), Bijection::identity(4));
        assert!(Bijection::new(vec![0, 0]).is_err());
    }

    #[test]
    fn text_forms() {
        let b: Bijection = "2,0,1".parse().unwrap();
        assert_eq!(b.to_string(), "2,0,1");
        let s: SwapSequence = "3-1 0-2".parse().unwrap();
        assert_eq!(s.to_string(), "3-1 0-2");
        assert!("1-1".parse::<SwapSequence>().is_err());
    }
}
