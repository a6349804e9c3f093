//! The signed-permutation group `W_n = (ℤ/2)^n ⋊ 𝔖_n` relative to the reversed
//! Borel: simple roots `β₁ = 2ε₁`, `β_i = ε_i − ε_{i−1}`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::Sign;
use crate::levi::LeviShape;
use crate::scalar::{Monomial, Scalar, Q};

/// A root in the `ε`-basis.
pub type Root = Vec<i64>;

/// `w(ε_i) = sign_i · ε_{target_i}`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<(usize, Sign)>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).map(|i| (i, Sign::Plus)).collect() }
    }

    pub fn from_images(images: Vec<(usize, Sign)>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for (t, _) in &images {
            if *t >= images.len() || seen[*t] {
                return None;
            }
            seen[*t] = true;
        }
        Some(Self { images })
    }

    /// `−identity`.
    pub fn longest(n: usize) -> Self {
        Self { images: (0..n).map(|i| (i, Sign::Minus)).collect() }
    }

    /// The simple reflection `t_i`, `i` 1-based.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut w = Self::identity(n);
        if i == 1 {
            w.images[0].1 = Sign::Minus;
        } else {
            w.images.swap(i - 1, i - 2);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[(usize, Sign)] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other
                .images
                .iter()
                .map(|(t, s)| {
                    let (t2, s2) = self.images[*t];
                    (t2, *s * s2)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![(0, Sign::Plus); self.rank()];
        for (i, (t, s)) in self.images.iter().enumerate() {
            images[*t] = (i, *s);
        }
        Self { images }
    }

    pub fn apply(&self, root: &[i64]) -> Root {
        let mut out = vec![0; root.len()];
        for (i, c) in root.iter().enumerate() {
            let (t, s) = self.images[i];
            out[t] += c * s.to_i64();
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Evaluates `t_{i_1} t_{i_2} ⋯ t_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for i in word {
            w = w.compose(&Self::generator(n, *i)?);
        }
        Ok(w)
    }

    pub fn length(&self) -> usize {
        positive_roots(self.rank()).iter().filter(|r| !is_positive(&self.apply(r))).count()
    }

    /// Indices `i` with `ℓ(t_i w) < ℓ(w)`, i.e. `w^{−1}(β_i) < 0`.
    pub fn left_descents(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..=self.rank()).filter(|i| !is_positive(&inv.apply(&simple_root(self.rank(), *i)))).collect()
    }

    /// Reduced expression, always peeling the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(i) = w.left_descents().first().copied() {
            word.push(i);
            w = Self::generator(n, i).expect("descent in range").compose(&w);
        }
        word
    }

    /// All `2^n n!` elements.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for perm in (0..n).permutations(n) {
            for bits in 0..(1u32 << n) {
                let images =
                    perm.iter().enumerate().map(|(i, t)| (*t, Sign::from_parity(bits >> i & 1 == 1))).collect();
                out.push(Self { images });
            }
        }
        out
    }

    pub fn parse_word(text: &str) -> Option<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Some(Vec::new());
        }
        text.split(',').map(|t| t.trim().parse().ok()).collect()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().map(|(t, s)| format!("{}{}", s.symbol(), t + 1)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn simple_root(n: usize, i: usize) -> Root {
    let mut r = vec![0; n];
    if i == 1 {
        r[0] = 2;
    } else {
        r[i - 1] = 1;
        r[i - 2] = -1;
    }
    r
}

/// `B^←`-positivity: the last nonzero coordinate is positive.
pub fn is_positive(root: &[i64]) -> bool {
    root.iter().rev().find(|c| **c != 0).is_some_and(|c| *c > 0)
}

pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 2;
        out.push(r);
        for j in 0..i {
            for s in [-1, 1] {
                let mut r = vec![0; n];
                r[i] = 1;
                r[j] = s;
                out.push(r);
            }
        }
    }
    out
}

/// `w = t_{i_1} ⋯ t_{i_k}` with its reduced expression and length.
pub fn evaluate_and_reduce(n: usize, word: &[usize]) -> Result<(SignedPermutation, Vec<usize>, usize)> {
    let w = SignedPermutation::from_word(n, word)?;
    let reduced = w.reduced_word();
    let len = w.length();
    debug_assert_eq!(reduced.len(), len);
    Ok((w, reduced, len))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMode {
    Roots,
    Components,
    Word,
}

/// `t(w)`.
pub fn t_invariant(w: &SignedPermutation, mode: TMode) -> usize {
    let n = w.rank();
    match mode {
        TMode::Roots => (0..n)
            .filter(|i| {
                let mut r = vec![0; n];
                r[*i] = 2;
                !is_positive(&w.apply(&r))
            })
            .count(),
        TMode::Components => {
            // w = d·σ with σ a permutation matrix and d diagonal; count −1 entries of d.
            let mut d = vec![0i64; n];
            for (i, (t, _)) in w.images().iter().enumerate() {
                let mut e = vec![0; n];
                e[i] = 1;
                d[*t] = w.apply(&e)[*t];
            }
            d.iter().filter(|x| **x == -1).count()
        }
        TMode::Word => w.reduced_word().iter().filter(|i| **i == 1).count(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonScalar {
    pub scalar: Scalar,
    /// Exponent of the formal Weil index symbol `γ_F(ψ)`.
    pub gamma_exponent: i64,
    pub t: usize,
}

/// `|2|^{t/2}` on the `+` side and `(−q^{−1})^t |2|^{t/2}` on the `−` side, with `|2| = q^{−e2}`.
pub fn comparison_scalar(w: &SignedPermutation, side: Side, e2: u32) -> ComparisonScalar {
    let t = t_invariant(w, TMode::Roots);
    let abs2 = Monomial::q_power(Q::new(-(e2 as i64) * t as i64, 2));
    let m = match side {
        Side::Plus => abs2,
        Side::Minus => &Monomial::new(4 * t as i64, Q::from(-(t as i64))) * &abs2,
    };
    ComparisonScalar { scalar: Scalar::from(m), gamma_exponent: -(t as i64), t }
}

/// Simple reflections of the Levi: `t_1, …, t_{sp}` on `ε_1..ε_{sp}` and the
/// adjacent transpositions inside each `GL` range.
pub fn levi_generators(shape: &LeviShape) -> Vec<usize> {
    let mut gens: Vec<usize> = (1..=shape.sp_rank as usize).collect();
    let mut start = shape.sp_rank as usize;
    for size in &shape.gl_sizes {
        gens.extend(start + 2..=start + *size as usize);
        start += *size as usize;
    }
    gens
}

/// Roots of the Levi: `±2ε_i, ±ε_i ± ε_j` on the symplectic range and
/// `±(ε_i − ε_j)` inside each `GL` range.
pub fn levi_roots(shape: &LeviShape) -> Vec<Root> {
    let n = shape.rank() as usize;
    let sp = shape.sp_rank as usize;
    let mut out: Vec<Root> = positive_roots(sp)
        .into_iter()
        .map(|mut r| {
            r.resize(n, 0);
            r
        })
        .collect();
    let mut start = sp;
    for size in &shape.gl_sizes {
        let end = start + *size as usize;
        for i in start..end {
            for j in start..i {
                let mut r = vec![0; n];
                r[i] = 1;
                r[j] = -1;
                out.push(r);
            }
        }
        start = end;
    }
    let negatives: Vec<Root> = out.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
    out.extend(negatives);
    out
}

/// The minimal-length element of `Ω^M₀ · w`.
pub fn min_coset_rep(w: &SignedPermutation, shape: &LeviShape) -> Result<SignedPermutation> {
    let n = w.rank();
    if shape.rank() as usize != n {
        return Err(Error::BadLeviShape(n));
    }
    let roots = levi_roots(shape);
    if !roots.iter().all(|r| roots.contains(&w.apply(r))) {
        return Err(Error::NotNormalizing);
    }
    let gens = levi_generators(shape);
    let mut cur = w.clone();
    let mut len = cur.length();
    loop {
        let step = gens.iter().find_map(|i| {
            let next = SignedPermutation::generator(n, *i).expect("levi generator").compose(&cur);
            let l = next.length();
            (l < len).then_some((next, l))
        });
        match step {
            Some((next, l)) => {
                cur = next;
                len = l;
            }
            None => return Ok(cur),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_examples() {
        let (w, _, len) = evaluate_and_reduce(1, &[1]).unwrap();
        assert_eq!(len, 1);
        assert_eq!(w, SignedPermutation::longest(1));
        let (w, red, len) = evaluate_and_reduce(2, &[2, 2]).unwrap();
        assert!(w.is_identity() && red.is_empty() && len == 0);
        let (w, red, len) = evaluate_and_reduce(2, &[1, 2, 1, 2]).unwrap();
        assert_eq!(w, SignedPermutation::longest(2));
        assert_eq!((red.len(), len), (4, 4));
        assert!(matches!(evaluate_and_reduce(2, &[3]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn t_examples() {
        let t1 = SignedPermutation::generator(2, 1).unwrap();
        let t2 = SignedPermutation::generator(2, 2).unwrap();
        for mode in [TMode::Roots, TMode::Components, TMode::Word] {
            assert_eq!(t_invariant(&t1, mode), 1);
            assert_eq!(t_invariant(&t2, mode), 0);
            assert_eq!(t_invariant(&SignedPermutation::longest(3), mode), 3);
        }
    }

    #[test]
    fn comparison_examples() {
        let t1 = SignedPermutation::generator(1, 1).unwrap();
        let c = comparison_scalar(&t1, Side::Plus, 0);
        assert!(c.scalar.is_one());
        assert_eq!(c.gamma_exponent, -1);
        assert_eq!(comparison_scalar(&t1, Side::Minus, 0).scalar.to_string(), "-q^(-1)");
        let id = SignedPermutation::identity(3);
        assert!(comparison_scalar(&id, Side::Minus, 3).scalar.is_one());
        let w = SignedPermutation::longest(2);
        assert_eq!(comparison_scalar(&w, Side::Minus, 0).scalar.to_string(), "q^(-2)");
        assert_eq!(comparison_scalar(&t1, Side::Plus, 1).scalar.to_string(), "q^(-1/2)");
    }

    #[test]
    fn coset_examples() {
        let gl2 = LeviShape { sp_rank: 0, gl_sizes: vec![2] };
        let t2 = SignedPermutation::generator(2, 2).unwrap();
        assert!(min_coset_rep(&t2, &gl2).unwrap().is_identity());
        let rep = min_coset_rep(&SignedPermutation::longest(2), &gl2).unwrap();
        assert_eq!(rep.length(), 3);
        let sp1 = LeviShape { sp_rank: 1, gl_sizes: vec![1] };
        let t1 = SignedPermutation::generator(2, 1).unwrap();
        assert!(min_coset_rep(&t1, &sp1).unwrap().is_identity());
        // t_2 mixes the symplectic and GL coordinates
        assert_eq!(min_coset_rep(&t2, &sp1), Err(Error::NotNormalizing));
    }
}
