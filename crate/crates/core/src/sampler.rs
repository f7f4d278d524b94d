//! Markov chain on the full-dimensional lattice polytopes of `[0,k]^d`.
//!
//! Each step draws a lattice point `x` of the box uniformly. A deletable
//! vertex `x` is deleted, an insertable `x` is inserted, and otherwise the
//! chain holds. The move `P → Q` through `x` and its inverse `Q → P` through
//! the same `x` have equal probability, so the kernel is symmetric and the
//! uniform distribution is stationary on every component.
//!
//! Randomness comes from ChaCha8 seeded with the 64-bit seed; proposals are
//! `random_range(0..(k+1)^d)` indices into the lexicographic box points.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::corner_simplex;
use crate::error::{Error, Result};
use crate::kernel::{box_points, LatticePoint, Polytope};
use crate::moves::{apply_delete, apply_insert, can_delete, insertable_unchecked};

/// Transition of the chain from `p` on proposal `x`.
pub fn transition(p: &Polytope, x: &LatticePoint) -> Result<Polytope> {
    if p.is_vertex(x) {
        if can_delete(p, x)? {
            return apply_delete(p, x);
        }
        return Ok(p.clone());
    }
    if insertable_unchecked(p, x) {
        return apply_insert(p, x);
    }
    Ok(p.clone())
}

/// Cap on memoized `(state, proposal)` transitions per chain.
const MEMO_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct ChainState {
    d: usize,
    k: i64,
    seed: u64,
    steps: u64,
    rng: ChaCha8Rng,
    points: Vec<LatticePoint>,
    states: Vec<Polytope>,
    index: HashMap<String, usize>,
    memo: HashMap<(usize, usize), usize>,
    current: usize,
}

impl ChainState {
    /// Chain started at the corner simplex.
    pub fn new(d: usize, k: i64, seed: u64) -> Result<Self> {
        Self::starting_at(corner_simplex(d, k)?, k, seed)
    }

    pub fn starting_at(start: Polytope, k: i64, seed: u64) -> Result<Self> {
        if k < 1 || !start.in_box(k) {
            return Err(Error::OutOfBox(k));
        }
        let d = start.ambient_dim();
        let n = (k + 1)
            .checked_pow(d as u32)
            .filter(|n| *n <= u32::MAX as i64)
            .ok_or_else(|| Error::TooLarge(format!("[0,{k}]^{d} has too many lattice points")))?;
        let points: Vec<LatticePoint> = box_points(d, k).collect();
        debug_assert_eq!(points.len() as i64, n);
        let index = HashMap::from([(start.canonical_key(), 0)]);
        Ok(ChainState {
            d,
            k,
            seed,
            steps: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            points,
            states: vec![start],
            index,
            memo: HashMap::new(),
            current: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn box_size(&self) -> i64 {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn step_count(&self) -> u64 {
        self.steps
    }

    pub fn current(&self) -> &Polytope {
        &self.states[self.current]
    }

    pub fn current_key(&self) -> String {
        self.current().canonical_key()
    }

    /// One proposal and its toggle.
    pub fn mh_step(&mut self) -> Result<&Polytope> {
        let xi = self.rng.random_range(0..self.points.len());
        let next = match self.memo.get(&(self.current, xi)) {
            Some(&s) => s,
            None => {
                let q = transition(&self.states[self.current], &self.points[xi])?;
                let key = q.canonical_key();
                let s = match self.index.get(&key) {
                    Some(&s) => s,
                    None => {
                        self.states.push(q);
                        self.index.insert(key, self.states.len() - 1);
                        self.states.len() - 1
                    }
                };
                if self.memo.len() < MEMO_LIMIT {
                    self.memo.insert((self.current, xi), s);
                }
                s
            }
        };
        self.current = next;
        self.steps += 1;
        Ok(self.current())
    }
}

/// Visit counts per canonical key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, key: &str) {
        self.record_n(key, 1);
    }

    pub fn record_n(&mut self, key: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(key.to_string()).or_default() += n;
        self.total += n;
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn merge(&mut self, o: &Histogram) {
        for (k, n) in &o.counts {
            self.record_n(k, *n);
        }
    }

    /// `canonical_key,count` lines under a header, in key order. Keys
    /// contain commas, so they are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("canonical_key,count\n");
        for (k, n) in &self.counts {
            let _ = writeln!(out, "\"{k}\",{n}");
        }
        out
    }
}

/// Runs `steps` transitions from the corner simplex and counts the states
/// after each of the last `steps - burnin`.
pub fn run_chain(d: usize, k: i64, steps: u64, burnin: u64, seed: u64) -> Result<Histogram> {
    if steps <= burnin {
        return Err(Error::InvalidInput(format!(
            "steps ({steps}) must exceed burn-in ({burnin})"
        )));
    }
    let mut chain = ChainState::new(d, k, seed)?;
    let mut per_state: Vec<u64> = Vec::new();
    for i in 0..steps {
        chain.mh_step()?;
        if i >= burnin {
            let s = chain.current;
            if per_state.len() <= s {
                per_state.resize(s + 1, 0);
            }
            per_state[s] += 1;
        }
    }
    let mut h = Histogram::new();
    for (s, n) in per_state.into_iter().enumerate() {
        h.record_n(&chain.states[s].canonical_key(), n);
    }
    Ok(h)
}

/// `½ Σ |p̂_i − 1/n|` over a support of `n` states, unobserved ones at 0.
pub fn tv_distance_to_uniform(h: &Histogram, support_size: usize) -> Result<BigRational> {
    if support_size < h.distinct() || support_size == 0 {
        return Err(Error::InvalidInput(format!(
            "support size {support_size} is smaller than the {} observed states",
            h.distinct()
        )));
    }
    if h.total == 0 {
        return Err(Error::InvalidInput("empty histogram".into()));
    }
    let n = BigInt::from(support_size);
    let total = BigInt::from(h.total);
    let uniform = BigRational::new(BigInt::one(), n);
    let mut sum: BigRational = h
        .counts
        .values()
        .map(|c| (BigRational::new(BigInt::from(*c), total.clone()) - &uniform).abs())
        .sum();
    sum += &uniform * BigInt::from(support_size - h.distinct());
    Ok(sum / BigInt::from(2))
}

/// Exact one-step transition matrix on `states` (rows sum to one when the
/// state set is closed under the chain's moves).
pub fn transition_matrix(states: &[Polytope], k: i64) -> Result<Vec<Vec<BigRational>>> {
    let d = states.first().map_or(2, Polytope::ambient_dim);
    let pos: HashMap<String, usize> = states
        .iter()
        .enumerate()
        .map(|(i, p)| (p.canonical_key(), i))
        .collect();
    let points: Vec<LatticePoint> = box_points(d, k).collect();
    let denom = BigInt::from(points.len());
    states
        .iter()
        .map(|p| {
            if !p.in_box(k) {
                return Err(Error::OutOfBox(k));
            }
            let mut row = vec![0u64; states.len()];
            for x in &points {
                let q = transition(p, x)?;
                let j = *pos
                    .get(&q.canonical_key())
                    .ok_or_else(|| Error::UnknownNode(q.canonical_key()))?;
                row[j] += 1;
            }
            Ok(row
                .into_iter()
                .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
                .collect())
        })
        .collect()
}

/// The unique stationary vector `π = πM` with `Σπ = 1` of an irreducible
/// stochastic matrix, by exact Gaussian elimination.
pub fn stationary_distribution(m: &[Vec<BigRational>]) -> Result<Vec<BigRational>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
    }
    // rows of (Mᵀ − I) with the last equation replaced by Σπ = 1
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| {
                    let v = m[j][i].clone();
                    if i == j {
                        v - BigRational::one()
                    } else {
                        v
                    }
                })
                .collect();
            row.push(BigRational::zero());
            row
        })
        .collect();
    a[n - 1] = vec![BigRational::one(); n + 1];
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidInput("stationary vector is not unique".into()))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= y * &f;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}
