//! Restarted first-improvement local search over balanced designs.
//!
//! Moves exchange a +1 and a -1 within one column, so every column stays
//! balanced. A move that would make two columns equal up to sign is skipped.
//! Restarts run in fixed-size batches; the best design is chosen by
//! (value, restart index), so results depend on the master seed only.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{check_args, improved_bound};
use crate::design::{max_factors, sign_normalized, DesignMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

const BATCH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub runs: usize,
    pub factors: usize,
    pub seed: u64,
    pub restarts: usize,
    pub max_passes: usize,
    pub budget: Duration,
    /// Stop once E(s^2) reaches this; defaults to the improved bound.
    pub target: Option<Rational>,
}

impl SearchConfig {
    pub fn new(runs: usize, factors: usize) -> Self {
        SearchConfig {
            runs,
            factors,
            seed: 0,
            restarts: 1000,
            max_passes: 1000,
            budget: Duration::from_secs(60),
            target: None,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.budget = budget;
        self
    }

    pub fn max_passes(mut self, passes: usize) -> Self {
        self.max_passes = passes;
        self
    }

    pub fn target(mut self, target: Rational) -> Self {
        self.target = Some(target);
        self
    }

    fn check(&self) -> Result<Rational> {
        check_args(self.runs, self.factors)?;
        let available = max_factors(self.runs);
        if self.factors as u64 > available {
            return Err(Error::ExhaustedColumnSpace {
                available,
                requested: self.factors,
            });
        }
        match self.target {
            Some(t) => Ok(t),
            None => Ok(improved_bound(self.runs, self.factors)?.improved),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: DesignMatrix,
    pub value: Rational,
    pub target: Rational,
    pub achieved: bool,
    pub restarts: usize,
    pub swaps: u64,
    pub seed: u64,
}

impl SearchResult {
    /// `N m value_num value_den achieved restarts swaps seed`
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} {} {} {} {} {} {}",
            self.best.runs(),
            self.best.factors(),
            self.value.numer(),
            self.value.denom(),
            self.achieved,
            self.restarts,
            self.swaps,
            self.seed
        )
    }
}

fn random_column(runs: usize, rng: &mut impl Rng) -> Vec<i8> {
    let mut col: Vec<i8> = (0..runs).map(|r| if r < runs / 2 { 1 } else { -1 }).collect();
    col.shuffle(rng);
    col
}

/// Sign-normalized balanced columns (first entry +1), in lexicographic order of positions.
fn all_columns(runs: usize) -> impl Iterator<Item = Vec<i8>> {
    (1..runs).combinations(runs / 2 - 1).map(move |ones| {
        let mut col = vec![-1i8; runs];
        col[0] = 1;
        for r in ones {
            col[r] = 1;
        }
        col
    })
}

fn random_design_with(runs: usize, factors: usize, rng: &mut impl Rng) -> Result<DesignMatrix> {
    if runs < 2 || runs % 2 == 1 {
        return Err(Error::BadRuns(runs as i64));
    }
    let available = max_factors(runs);
    if factors as u64 > available {
        return Err(Error::ExhaustedColumnSpace {
            available,
            requested: factors,
        });
    }
    let columns: Vec<Vec<i8>> = if 2 * factors as u64 >= available {
        // Rejection would stall near capacity; sample from the full list.
        let all: Vec<Vec<i8>> = all_columns(runs).collect();
        index::sample(rng, all.len(), factors)
            .into_iter()
            .map(|i| {
                let mut col = all[i].clone();
                if rng.random_bool(0.5) {
                    col.iter_mut().for_each(|v| *v = -*v);
                }
                col
            })
            .collect()
    } else {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(factors);
        while out.len() < factors {
            let col = random_column(runs, rng);
            if seen.insert(sign_normalized(&col)) {
                out.push(col);
            }
        }
        out
    };
    DesignMatrix::from_columns(runs, &columns)
}

/// Balanced columns without aliased pairs, deterministic in `seed`.
pub fn random_balanced_design(runs: usize, factors: usize, seed: u64) -> Result<DesignMatrix> {
    random_design_with(runs, factors, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn check_swap(x: &DesignMatrix, col: usize, a: usize, b: usize) -> Result<()> {
    if col >= x.factors() || a >= x.runs() || b >= x.runs() || x.get(a, col) != 1 || x.get(b, col) != -1 {
        return Err(Error::BadSwap(a, b));
    }
    Ok(())
}

/// Change in SS(X'X) from exchanging the +1 at row `a` with the -1 at row `b` in `col`.
pub fn swap_delta(x: &DesignMatrix, col: usize, a: usize, b: usize) -> Result<i64> {
    check_swap(x, col, a, b)?;
    Ok((0..x.factors())
        .filter(|&i| i != col)
        .map(|i| {
            let s = x.column_dot(i, col);
            let d = 2 * (x.get(b, i) - x.get(a, i)) as i64;
            2 * ((s + d).pow(2) - s * s)
        })
        .sum())
}

/// A design with its cached Gram matrix, for O(m) move evaluation.
#[derive(Debug, Clone)]
pub struct SearchState {
    x: DesignMatrix,
    gram: Vec<i64>,
    ss: i64,
}

impl SearchState {
    pub fn new(x: DesignMatrix) -> Self {
        let m = x.factors();
        let mut gram = vec![0i64; m * m];
        for i in 0..m {
            for j in i..m {
                let s = x.column_dot(i, j);
                gram[i * m + j] = s;
                gram[j * m + i] = s;
            }
        }
        let ss = gram.iter().map(|s| s * s).sum();
        SearchState { x, gram, ss }
    }

    pub fn design(&self) -> &DesignMatrix {
        &self.x
    }

    pub fn into_design(self) -> DesignMatrix {
        self.x
    }

    /// SS(X'X), diagonal included.
    pub fn ss(&self) -> i64 {
        self.ss
    }

    /// The change in SS and whether the move would alias `col` with another column.
    fn evaluate(&self, col: usize, a: usize, b: usize) -> (i64, bool) {
        let m = self.x.factors();
        let n = self.x.runs() as i64;
        let mut delta = 0;
        let mut aliases = false;
        for i in 0..m {
            if i == col {
                continue;
            }
            let s = self.gram[i * m + col];
            let t = s + 2 * (self.x.get(b, i) - self.x.get(a, i)) as i64;
            delta += 2 * (t * t - s * s);
            aliases |= t.abs() == n;
        }
        (delta, aliases)
    }

    pub fn swap_delta(&self, col: usize, a: usize, b: usize) -> Result<i64> {
        check_swap(&self.x, col, a, b)?;
        Ok(self.evaluate(col, a, b).0)
    }

    pub fn apply(&mut self, col: usize, a: usize, b: usize) -> Result<i64> {
        check_swap(&self.x, col, a, b)?;
        let m = self.x.factors();
        let (delta, _) = self.evaluate(col, a, b);
        for i in 0..m {
            if i != col {
                let d = 2 * (self.x.get(b, i) - self.x.get(a, i)) as i64;
                self.gram[i * m + col] += d;
                self.gram[col * m + i] += d;
            }
        }
        self.x.swap_in_column(col, a, b);
        self.ss += delta;
        Ok(delta)
    }
}

fn ss_for(value: Rational, runs: usize, factors: usize) -> Rational {
    let (n, m) = (runs as i64, factors as i64);
    value * Rational::from_integer(m * (m - 1)) + Rational::from_integer(m * n * n)
}

fn value_for(ss: i64, runs: usize, factors: usize) -> Rational {
    let (n, m) = (runs as i64, factors as i64);
    Rational::new(ss - m * n * n, m * (m - 1))
}

struct Descent {
    state: SearchState,
    swaps: u64,
}

fn descend(x: DesignMatrix, floor_ss: Rational, max_passes: usize, deadline: Option<Instant>) -> Descent {
    let mut state = SearchState::new(x);
    let (n, m) = (state.x.runs(), state.x.factors());
    let mut swaps = 0u64;
    for _ in 0..max_passes {
        let mut improved = false;
        for col in 0..m {
            for a in 0..n {
                if state.x.get(a, col) != 1 {
                    continue;
                }
                for b in 0..n {
                    if state.x.get(b, col) != -1 {
                        continue;
                    }
                    swaps += 1;
                    let (delta, aliases) = state.evaluate(col, a, b);
                    if delta < 0 && !aliases {
                        state.apply(col, a, b).expect("checked move");
                        improved = true;
                        if Rational::from_integer(state.ss) <= floor_ss {
                            return Descent { state, swaps };
                        }
                        // Row a now holds -1 in this column.
                        break;
                    }
                }
            }
        }
        if !improved || deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
    }
    Descent { state, swaps }
}

/// Descends from `x` until a pass makes no improvement, `max_passes` is
/// reached, or the target in `config` is met. Never increases E(s^2).
pub fn local_search(x: &DesignMatrix, config: &SearchConfig) -> DesignMatrix {
    let floor = config
        .target
        .or_else(|| improved_bound(x.runs(), x.factors()).ok().map(|r| r.improved))
        .map(|t| ss_for(t, x.runs(), x.factors()))
        .unwrap_or_else(|| Rational::from_integer(i64::MIN));
    let deadline = Instant::now().checked_add(config.budget);
    descend(x.clone(), floor, config.max_passes, deadline).state.into_design()
}

fn restart_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs restarts until one reaches the target, the restart count is used up,
/// or the time budget runs out. With a non-binding budget the result depends
/// only on the configuration.
pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    let target = config.check()?;
    let floor = ss_for(target, config.runs, config.factors);
    let start = Instant::now();
    let deadline = start.checked_add(config.budget);
    let mut best: Option<(i64, usize, DesignMatrix)> = None;
    let mut swaps = 0u64;
    let mut used = 0usize;
    while used < config.restarts.max(1) {
        let batch: Vec<usize> = (used..(used + BATCH).min(config.restarts.max(1))).collect();
        let outcomes: Vec<(i64, usize, DesignMatrix, u64)> = batch
            .par_iter()
            .map(|&i| {
                let mut rng = restart_rng(config.seed, i as u64);
                let x = random_design_with(config.runs, config.factors, &mut rng)?;
                let d = descend(x, floor, config.max_passes, deadline);
                Ok((d.state.ss, i, d.state.into_design(), d.swaps))
            })
            .collect::<Result<_>>()?;
        used += batch.len();
        for (ss, i, x, s) in outcomes {
            swaps += s;
            if best.as_ref().is_none_or(|(bss, bi, _)| (ss, i) < (*bss, *bi)) {
                best = Some((ss, i, x));
            }
        }
        let (bss, _, _) = best.as_ref().expect("at least one restart");
        if Rational::from_integer(*bss) <= floor || deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
    }
    let (ss, _, x) = best.expect("at least one restart");
    let value = value_for(ss, config.runs, config.factors);
    Ok(SearchResult {
        best: x,
        value,
        target,
        achieved: value <= target,
        restarts: used,
        swaps,
        seed: config.seed,
    })
}
