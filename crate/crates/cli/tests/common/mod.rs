//! Shared deterministic generators for the integration tests.

#![allow(dead_code)]

use hodge_core::mhs::{Mhs, Pure};
use hodge_core::motive::assemble_two_step;
use hodge_core::scalar::{rat, Rat};
use hodge_core::{Matrix, Scalar};

/// Small deterministic xorshift generator so every suite run sees the
/// identical sample set.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.wrapping_mul(2685821657736338717).wrapping_add(0x9e3779b97f4a7c15))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in [lo, hi] inclusive.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next() % span) as i64
    }

    /// Small rational with numerator in [-3, 3] and denominator in [1, 2].
    pub fn rat(&mut self) -> Rat {
        rat(self.range(-3, 3), self.range(1, 2))
    }

    /// Random scalar over {1, i, sqrt(d), i*sqrt(d)}; may be rational.
    pub fn scalar(&mut self, d: u64) -> Scalar {
        let a = self.rat();
        let b = if self.range(0, 2) == 0 { self.rat() } else { rat(0, 1) };
        let (c, e) = if d > 1 && self.range(0, 2) == 0 {
            (self.rat(), self.rat())
        } else {
            (rat(0, 1), rat(0, 1))
        };
        Scalar::new(a, b, c, e, d)
    }

    /// Random square-free field configuration.
    pub fn field(&mut self) -> u64 {
        [1, 1, 2, 3, 5][self.range(0, 4) as usize]
    }

    /// Random unimodular n x n integer matrix (product of shears/swaps).
    pub fn unimodular(&mut self, n: usize) -> Matrix {
        let mut u = Matrix::identity(n);
        if n < 2 {
            return u;
        }
        for _ in 0..(2 * n) {
            let i = self.range(0, n as i64 - 1) as usize;
            let mut j = self.range(0, n as i64 - 1) as usize;
            if i == j {
                j = (j + 1) % n;
            }
            match self.range(0, 2) {
                0 => {
                    // add a multiple of column j to column i
                    let k = Scalar::from_int(self.range(-2, 2));
                    for r in 0..n {
                        let add = u[(r, j)].clone() * k.clone();
                        u[(r, i)] = u[(r, i)].clone() + add;
                    }
                }
                1 => {
                    for r in 0..n {
                        let tmp = u[(r, i)].clone();
                        u[(r, i)] = u[(r, j)].clone();
                        u[(r, j)] = tmp;
                    }
                }
                _ => {
                    for r in 0..n {
                        u[(r, i)] = -u[(r, i)].clone();
                    }
                }
            }
        }
        u
    }

    /// Random integer matrix with small entries.
    pub fn int_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = Scalar::from_int(self.range(-3, 3));
            }
        }
        m
    }
}

/// Polarizable abelian-type pure structure of weight 2p-1 and rank 2g:
/// g period blocks (1, tau_k) with non-real tau_k, in a random lattice
/// basis.
pub fn random_abelian(rng: &mut Rng, g: usize, p: i64, d: u64) -> Pure {
    let n = 2 * g;
    let mut cols = Vec::new();
    for k in 0..g {
        let mut col = vec![Scalar::zero(); n];
        col[2 * k] = Scalar::one();
        // tau = x + y i (+ z i sqrt(d)) with nonzero imaginary part
        let x = rng.rat();
        let mut y = rng.rat();
        if num_traits::Zero::is_zero(&y) {
            y = rat(1, 1);
        }
        let e = if d > 1 && rng.range(0, 1) == 0 { rng.rat() } else { rat(0, 1) };
        col[2 * k + 1] = Scalar::new(x, y, rat(0, 1), e, d);
        cols.push(col);
    }
    let f = Matrix::from_cols(n, cols);
    let mhs = Mhs::new(
        n,
        d,
        vec![(2 * p - 1, Matrix::identity(n))],
        vec![(p - 1, Matrix::identity(n)), (p, f)],
    );
    let u = rng.unimodular(n);
    let pure = Pure::new(mhs.change_basis(&u).expect("unimodular change"), 2 * p - 1)
        .expect("abelian-type structure");
    pure
}

/// Random extension values for m lattice generators, in the coordinates
/// of a rank-n odd part.
pub fn random_values(rng: &mut Rng, m: usize, n: usize, d: u64) -> Vec<Vec<Scalar>> {
    (0..m)
        .map(|_| (0..n).map(|_| rng.scalar(d)).collect())
        .collect()
}

pub struct RandomAssembly {
    pub p: i64,
    pub d: u64,
    pub abelian: Pure,
    pub values: Vec<Vec<Scalar>>,
    pub mhs: Mhs,
}

/// A random valid two-step structure: weight 2p-1 abelian-type part of
/// rank 2g under a weight-2p Tate lattice of rank m, total rank <= 8.
pub fn random_assembly(rng: &mut Rng, seed_p: Option<i64>) -> RandomAssembly {
    let d = rng.field();
    random_assembly_in(rng, seed_p, d)
}

/// Same, over a caller-chosen scalar field.
pub fn random_assembly_in(rng: &mut Rng, seed_p: Option<i64>, d: u64) -> RandomAssembly {
    let p = seed_p.unwrap_or_else(|| rng.range(1, 3));
    let g = rng.range(0, 3) as usize;
    let m = rng.range(1, (8 - 2 * g as i64).max(1)) as usize;
    let abelian = random_abelian(rng, g, p, d);
    let values = random_values(rng, m, 2 * g, d);
    let mhs = assemble_two_step(&abelian, &values, p).expect("assembly");
    RandomAssembly { p, d, abelian, values, mhs }
}
