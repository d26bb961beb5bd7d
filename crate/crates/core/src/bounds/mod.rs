//! Lower bounds on E(s^2).
//!
//! [`ntw_bound`] is the classical bound (m - N + 1) N^2 / ((m - 1)(N - 1)).
//! [`improved_bound`] adds the sharper piecewise bound built from the unique
//! shift q with -2N + 2 < m - q(N - 1) < 2N - 2 and m + q = 2 (mod 4), the
//! floor E(s^2) >= 4 for N = 2 (mod 4), and a max with the classical bound.
//! [`oracle::bound_oracle`] recomputes the same quantity by dynamic
//! programming over Gram-row profiles, without the closed-form branches.

pub mod oracle;

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{decimal5, fraction, Rational};

pub use oracle::{bound_oracle, min_row_sum_of_squares, oracle_detail, parity_rule_admits, LemmaProfile, OracleDetail};

pub(crate) fn check_args(runs: usize, factors: usize) -> Result<(i64, i64)> {
    let n = runs as i64;
    let m = factors as i64;
    if n < 4 || n % 2 == 1 {
        return Err(Error::BadRuns(n));
    }
    if m <= n - 1 {
        return Err(Error::BadRange { runs: n, factors: m });
    }
    Ok((n, m))
}

pub fn ntw_bound(runs: usize, factors: usize) -> Result<Rational> {
    let (n, m) = check_args(runs, factors)?;
    Ok(ntw(n, m))
}

fn ntw(n: i64, m: i64) -> Rational {
    Rational::new((m - n + 1) * n * n, (m - 1) * (n - 1))
}

/// The shift q with -2N + 2 < m - q(N - 1) < 2N - 2 and m + q = 2 (mod 4).
///
/// Exactly one exists unless m is a multiple of N - 1 with mN = 0 (mod 4);
/// then the open interval holds only three candidates and none has the right
/// residue. Those are precisely the cells where the classical bound can be
/// met, and `None` is returned.
pub fn unique_q(runs: usize, factors: usize) -> Result<Option<i64>> {
    let (n, m) = check_args(runs, factors)?;
    Ok(shift_for(n, m))
}

fn shift_for(n: i64, m: i64) -> Option<i64> {
    let v = n - 1;
    let lo = (m - 2 * v).div_euclid(v);
    let mut found = None;
    for q in lo..=lo + 5 {
        let d = m - q * v;
        if -2 * v < d && d < 2 * v && (m + q).rem_euclid(4) == 2 {
            debug_assert!(found.is_none(), "q is unique");
            found = Some(q);
        }
    }
    found
}

/// g(q) = (m + q)^2 N - q^2 N^2 - m N^2.
pub fn g_value(runs: i64, factors: i64, q: i64) -> i64 {
    let (n, m) = (runs, factors);
    (m + q) * (m + q) * n - q * q * n * n - m * n * n
}

/// Which piece of the improved bound applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// |m - q(N - 1)| < N - 1.
    Near,
    /// N - 1 < |m - q(N - 1)| up to the case threshold.
    Mid,
    /// Beyond the case threshold.
    Far,
    /// No admissible q: only the classical bound applies.
    Classical,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Near => "near",
            Branch::Mid => "mid",
            Branch::Far => "far",
            Branch::Classical => "classical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub runs: usize,
    pub factors: usize,
    pub ntw: Rational,
    pub q: Option<i64>,
    /// |m - q(N - 1)|.
    pub offset: Option<i64>,
    pub branch: Branch,
    /// The piecewise value before the floors, when a q exists.
    pub piecewise: Option<Rational>,
    pub improved: Rational,
    /// N = 2 (mod 4), so E(s^2) >= 4 was applied.
    pub floor4_applied: bool,
    pub ntw_achievable: bool,
    /// The offset sat exactly on N - 1 and the smaller adjacent piece was used.
    pub boundary: bool,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} m={} improved={} ({}) ntw={} ({}) branch={}",
            self.runs,
            self.factors,
            decimal5(self.improved),
            fraction(self.improved),
            decimal5(self.ntw),
            fraction(self.ntw),
            self.branch
        )?;
        if let (Some(q), Some(d)) = (self.q, self.offset) {
            write!(f, " q={q} d={d}")?;
        }
        if self.floor4_applied {
            write!(f, " floor4")?;
        }
        if self.ntw_achievable {
            write!(f, " ntw-achievable")?;
        }
        if self.boundary {
            write!(f, " boundary")?;
        }
        Ok(())
    }
}

/// Classical-bound attainability: N = 0 (mod 4) and (N - 1) | m, or
/// N = 2 (mod 4) and m an even multiple of N - 1.
pub fn ntw_achievable(runs: usize, factors: usize) -> bool {
    let v = runs - 1;
    if factors % v != 0 {
        return false;
    }
    runs % 4 == 0 || (factors / v) % 2 == 0
}

/// Numerators (over m(m - 1)) of the three pieces for the given case.
fn pieces(n: i64, m: i64, q: i64, d: i64) -> (i64, i64, i64, i64) {
    let g = g_value(n, m, q);
    if n % 4 == 0 {
        (
            g + 2 * n * n - 4 * n,
            g - 2 * n * n + 4 * n + 4 * n * d,
            g + 4 * n * n - 4 * n,
            3 * n / 2 - 2,
        )
    } else if q % 2 == 0 {
        (
            g + 2 * n * n - 4 * n + 8,
            g - 2 * n * n + 20 * n + (4 * n - 8) * d - 24,
            g + 4 * n * n - 4 * n,
            3 * n / 2 - 3,
        )
    } else {
        (
            g + 2 * n * n - 4 * n,
            g - 2 * n * n + 4 * n + 4 * n * d,
            g + 4 * n * n - 12 * n + 8 * d + 8,
            3 * n / 2 - 1,
        )
    }
}

pub fn improved_bound(runs: usize, factors: usize) -> Result<BoundReport> {
    let (n, m) = check_args(runs, factors)?;
    let classical = ntw(n, m);
    let floor4_applied = n % 4 == 2;
    let mut report = BoundReport {
        runs,
        factors,
        ntw: classical,
        q: None,
        offset: None,
        branch: Branch::Classical,
        piecewise: None,
        improved: classical,
        floor4_applied,
        ntw_achievable: ntw_achievable(runs, factors),
        boundary: false,
    };
    let Some(q) = shift_for(n, m) else {
        if floor4_applied {
            report.improved = report.improved.max(Rational::from_integer(4));
        }
        return Ok(report);
    };
    let d = (m - q * (n - 1)).abs();
    let (near, mid, far, threshold) = pieces(n, m, q, d);
    let (numer, branch) = if d < n - 1 {
        (near, Branch::Near)
    } else if d == n - 1 {
        // Not reachable: d has the parity of m + q(N - 1), which is even.
        report.boundary = true;
        (near.min(mid), Branch::Near)
    } else if d <= threshold {
        (mid, Branch::Mid)
    } else {
        (far, Branch::Far)
    };
    let piecewise = Rational::new(numer, m * (m - 1));
    let mut value = piecewise;
    if floor4_applied {
        value = value.max(Rational::from_integer(4));
    }
    report.q = Some(q);
    report.offset = Some(d);
    report.branch = branch;
    report.piecewise = Some(piecewise);
    report.improved = value.max(classical);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundRow {
    pub factors: usize,
    pub improved: Rational,
    pub ntw: Rational,
}

pub fn bound_table(runs: usize, from: usize, to: usize) -> Result<Vec<BoundRow>> {
    if from > to {
        return Err(Error::EmptyRange {
            from: from as i64,
            to: to as i64,
        });
    }
    (from..=to)
        .map(|m| {
            let r = improved_bound(runs, m)?;
            Ok(BoundRow {
                factors: m,
                improved: r.improved,
                ntw: r.ntw,
            })
        })
        .collect()
}

/// Tab-separated `m improved ntw`, five truncated decimals or exact fractions.
pub fn render_table(rows: &[BoundRow], exact: bool) -> String {
    let cell = |r: Rational| if exact { fraction(r) } else { decimal5(r) };
    rows.iter()
        .map(|row| {
            format!(
                "{}\t{}\t{}\n",
                row.factors,
                cell(row.improved),
                cell(row.ntw)
            )
        })
        .collect()
}
