//! Deterministic sampling. Every random quantity in the crate is drawn from a
//! [`Sampler`] keyed by `(seed, tag, index)`, so sweeps can run on any number of
//! threads and still produce identical output.

use rayon::prelude::*;
use wonderland_exact::{int, rat, Matrix, Rational};

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A rational `p/q` with `|p| <= bound` and `1 <= q <= bound`, determined by
/// `(seed, index)` alone.
pub fn sample_rational(seed: u64, index: u64, bound: u64) -> Rational {
    assert!(bound >= 1, "bound must be positive");
    let h = splitmix64(seed ^ splitmix64(index));
    let p = (h % (2 * bound + 1)) as i64 - bound as i64;
    let q = (splitmix64(h) % bound) as i64 + 1;
    rat(p, q)
}

fn tag_hash(tag: &str) -> u64 {
    tag.bytes()
        .fold(0xCBF2_9CE4_8422_2325u64, |h, b| splitmix64(h ^ b as u64))
}

#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    counter: u64,
}

impl Sampler {
    pub fn new(seed: u64, tag: &str, index: u64) -> Self {
        Self {
            seed: splitmix64(seed ^ tag_hash(tag)) ^ splitmix64(index.wrapping_add(1)),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix64(self.seed.wrapping_add(self.counter));
        self.counter += 1;
        v
    }

    pub fn rational(&mut self, bound: u64) -> Rational {
        let i = self.next_u64();
        sample_rational(self.seed, i, bound)
    }

    pub fn nonzero_rational(&mut self, bound: u64) -> Rational {
        loop {
            let q = self.rational(bound);
            if q != int(0) {
                return q;
            }
        }
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn vector(&mut self, len: usize, bound: u64) -> Vec<Rational> {
        (0..len).map(|_| self.rational(bound)).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: u64) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.rational(bound))
    }

    pub fn invertible_matrix(&mut self, n: usize, bound: u64) -> Matrix {
        loop {
            let m = self.matrix(n, n, bound);
            if m.determinant() != int(0) {
                return m;
            }
        }
    }

    /// A determinant-one matrix, built as unit-lower × diagonal × unit-upper.
    pub fn sl(&mut self, n: usize, bound: u64) -> Matrix {
        let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.rational(bound),
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Less => int(0),
        });
        let mut diag = Matrix::identity(n);
        let mut prod = int(1);
        for i in 0..n - 1 {
            let t = self.nonzero_rational(bound);
            prod *= t.clone();
            diag[(i, i)] = t;
        }
        diag[(n - 1, n - 1)] = int(1) / prod;
        let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.rational(bound),
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Greater => int(0),
        });
        lower.mul(&diag).mul(&upper)
    }

    /// A rank-one matrix `u vᵀ` with nonzero factors.
    pub fn rank_one(&mut self, n: usize, bound: u64) -> (Vec<Rational>, Vec<Rational>) {
        let nonzero = |s: &mut Self| loop {
            let v = s.vector(n, bound);
            if v.iter().any(|x| *x != int(0)) {
                return v;
            }
        };
        let u = nonzero(self);
        let v = nonzero(self);
        (u, v)
    }
}

/// Caps the global rayon pool at `WONDERLAND_THREADS` workers when set.
pub fn init_thread_pool() {
    if let Some(n) = std::env::var("WONDERLAND_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            log::debug!("global thread pool already initialised");
        }
    }
}

/// Maps `f` over `0..count` in parallel, returning results in index order.
pub fn par_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..count as u64).into_par_iter().map(f).collect()
}
