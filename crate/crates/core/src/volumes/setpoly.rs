//! Truncated polynomials in `x, y` with coefficients indexed by subsets of
//! the marked entries: the ring in which the multi-zero recursion is a
//! geometric series. Subsets multiply by disjoint union (`z_i² = 0`).

use crate::exactnum::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SetPoly {
    bits: usize,
    kx: usize,
    ky: usize,
    data: Vec<Rational>,
}

impl SetPoly {
    pub fn zero(bits: usize, kx: usize, ky: usize) -> Self {
        let len = (1usize << bits) * (kx + 1) * (ky + 1);
        Self { bits, kx, ky, data: vec![Rational::ZERO; len] }
    }

    pub fn unit(bits: usize, kx: usize, ky: usize) -> Self {
        let mut out = Self::zero(bits, kx, ky);
        out.data[0] = Rational::ONE;
        out
    }

    pub fn full(&self) -> usize {
        (1 << self.bits) - 1
    }

    fn idx(&self, s: usize, i: usize, j: usize) -> usize {
        (s * (self.kx + 1) + i) * (self.ky + 1) + j
    }

    pub fn get(&self, s: usize, i: usize, j: usize) -> &Rational {
        &self.data[self.idx(s, i, j)]
    }

    pub fn set(&mut self, s: usize, i: usize, j: usize, q: Rational) {
        let k = self.idx(s, i, j);
        self.data[k] = q;
    }

    /// Keeps only the subsets accepted by `keep`.
    pub fn filter_sets(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = Self::zero(self.bits, self.kx, self.ky);
        for s in 0..=self.full() {
            if keep(s) {
                for i in 0..=self.kx {
                    for j in 0..=self.ky {
                        out.set(s, i, j, self.get(s, i, j).clone());
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.bits, self.kx, self.ky), (other.bits, other.kx, other.ky));
        let mut out = Self::zero(self.bits, self.kx, self.ky);
        for s in 0..=self.full() {
            let mut t = s;
            loop {
                let rest = s ^ t;
                for i in 0..=self.kx {
                    for j in 0..=self.ky {
                        let a = self.get(t, i, j);
                        if a.is_zero() {
                            continue;
                        }
                        for p in 0..=self.kx - i {
                            for q in 0..=self.ky - j {
                                let b = other.get(rest, p, q);
                                if !b.is_zero() {
                                    let k = out.idx(s, i + p, j + q);
                                    out.data[k] += a * b;
                                }
                            }
                        }
                    }
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
        }
        out
    }
}
