//! Two-level supersaturated design matrices and their E(s^2) value.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{decimal5, Rational};

/// An N x m matrix of +1/-1 entries, stored column-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DesignMatrix {
    runs: usize,
    factors: usize,
    entries: Vec<i8>,
}

impl fmt::Debug for DesignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DesignMatrix {}x{}", self.runs, self.factors)?;
        for r in 0..self.runs {
            let row: Vec<&str> = (0..self.factors)
                .map(|c| if self.get(r, c) > 0 { "+" } else { "-" })
                .collect();
            writeln!(f, "  {}", row.concat())?;
        }
        Ok(())
    }
}

impl DesignMatrix {
    /// Builds a design from rows. Entries must be +1 or -1.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let runs = rows.len();
        if runs == 0 {
            return Err(Error::Shape("no rows".into()));
        }
        let factors = rows[0].len();
        if factors == 0 {
            return Err(Error::Shape("no columns".into()));
        }
        let mut entries = vec![0i8; runs * factors];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != factors {
                return Err(Error::Shape(format!(
                    "row {r} has {} entries, expected {factors}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v != 1 && v != -1 {
                    return Err(Error::BadEntry { row: r, col: c });
                }
                entries[c * runs + r] = v;
            }
        }
        Ok(DesignMatrix {
            runs,
            factors,
            entries,
        })
    }

    /// Builds a design from columns of length `runs`.
    pub fn from_columns(runs: usize, columns: &[Vec<i8>]) -> Result<Self> {
        if runs == 0 || columns.is_empty() {
            return Err(Error::Shape("empty design".into()));
        }
        let mut entries = Vec::with_capacity(runs * columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != runs {
                return Err(Error::Shape(format!(
                    "column {c} has {} entries, expected {runs}",
                    col.len()
                )));
            }
            if let Some(r) = col.iter().position(|&v| v != 1 && v != -1) {
                return Err(Error::BadEntry { row: r, col: c });
            }
            entries.extend_from_slice(col);
        }
        Ok(DesignMatrix {
            runs,
            factors: columns.len(),
            entries,
        })
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[col * self.runs + row]
    }

    pub fn column(&self, col: usize) -> &[i8] {
        &self.entries[col * self.runs..(col + 1) * self.runs]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.runs)
    }

    pub fn row(&self, row: usize) -> Vec<i8> {
        (0..self.factors).map(|c| self.get(row, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.runs).map(|r| self.row(r)).collect()
    }

    /// Exchanges two entries within one column.
    pub fn swap_in_column(&mut self, col: usize, a: usize, b: usize) {
        let base = col * self.runs;
        self.entries.swap(base + a, base + b);
    }

    pub fn negate_column(&mut self, col: usize) {
        for v in &mut self.entries[col * self.runs..(col + 1) * self.runs] {
            *v = -*v;
        }
    }

    /// Inner product of two columns, the (i, j) entry of X'X.
    pub fn column_dot(&self, i: usize, j: usize) -> i64 {
        self.column(i)
            .iter()
            .zip(self.column(j))
            .map(|(&a, &b)| (a * b) as i64)
            .sum()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_design(self)
    }
}

/// Column with its first entry made +1, the canonical form for aliasing checks.
pub(crate) fn sign_normalized(col: &[i8]) -> Vec<i8> {
    if col[0] < 0 {
        col.iter().map(|v| -v).collect()
    } else {
        col.to_vec()
    }
}

/// C(n, k) saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of distinct balanced columns up to sign for an even run size.
pub fn max_factors(runs: usize) -> u64 {
    if runs < 2 || runs % 2 == 1 {
        return 0;
    }
    binomial(runs as u64 - 1, runs as u64 / 2 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub odd_runs: bool,
    /// Columns whose entries do not sum to zero.
    pub unbalanced: Vec<usize>,
    /// Pairs (i, j), i < j, with column i = +/- column j.
    pub aliased: Vec<(usize, usize)>,
    /// More factors than distinct balanced columns allow.
    pub too_many_factors: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.odd_runs
            && self.unbalanced.is_empty()
            && self.aliased.is_empty()
            && !self.too_many_factors
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        if self.odd_runs {
            parts.push("odd run size".to_string());
        }
        if !self.unbalanced.is_empty() {
            let cols: Vec<String> = self.unbalanced.iter().map(|c| c.to_string()).collect();
            parts.push(format!("unbalanced columns {}", cols.join(",")));
        }
        for (i, j) in &self.aliased {
            parts.push(format!("aliased pair ({i},{j})"));
        }
        if self.too_many_factors {
            parts.push("more factors than distinct balanced columns".into());
        }
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_design(x: &DesignMatrix) -> ValidationReport {
    let mut report = ValidationReport {
        odd_runs: x.runs % 2 == 1,
        ..Default::default()
    };
    for (c, col) in x.columns().enumerate() {
        if col.iter().map(|&v| v as i64).sum::<i64>() != 0 {
            report.unbalanced.push(c);
        }
    }
    let mut seen: HashMap<Vec<i8>, Vec<usize>> = HashMap::new();
    for (c, col) in x.columns().enumerate() {
        seen.entry(sign_normalized(col)).or_default().push(c);
    }
    for group in seen.values() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                report.aliased.push((i, j));
            }
        }
    }
    report.aliased.sort_unstable();
    report.too_many_factors = x.factors as u64 > max_factors(x.runs);
    report
}

/// Off-diagonal entries of X'X and the quantities built from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSummary {
    /// s_ij for i < j, in row-major order of the upper triangle.
    pub offdiag: Vec<i64>,
    /// Sum of squares of every entry of X'X.
    pub ss_gram: i64,
    pub e_s2: Rational,
}

impl GramSummary {
    pub fn sum_sq_offdiag(&self) -> i64 {
        self.offdiag.iter().map(|s| s * s).sum()
    }
}

pub fn gram_summary(x: &DesignMatrix) -> Result<GramSummary> {
    let m = x.factors;
    if m < 2 {
        return Err(Error::DegenerateM(m));
    }
    let mut offdiag = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            offdiag.push(x.column_dot(i, j));
        }
    }
    let sum_sq: i64 = offdiag.iter().map(|s| s * s).sum();
    let n = x.runs as i64;
    let pairs = (m * (m - 1) / 2) as i64;
    Ok(GramSummary {
        ss_gram: m as i64 * n * n + 2 * sum_sq,
        e_s2: Rational::new(sum_sq, pairs),
        offdiag,
    })
}

/// E(s^2) = sum_{i<j} s_ij^2 / C(m, 2), exact.
pub fn e_s2(x: &DesignMatrix) -> Result<Rational> {
    gram_summary(x).map(|g| g.e_s2)
}

/// E(s^2) rendered to five decimals.
pub fn e_s2_decimal(x: &DesignMatrix) -> Result<String> {
    e_s2(x).map(decimal5)
}

/// SS(X'X), computed from column inner products.
pub fn ss_gram(x: &DesignMatrix) -> i64 {
    let m = x.factors;
    let mut total = 0;
    for i in 0..m {
        for j in 0..m {
            let s = x.column_dot(i, j);
            total += s * s;
        }
    }
    total
}

/// The N x N matrix XX'.
pub fn row_gram(x: &DesignMatrix) -> Vec<Vec<i64>> {
    let n = x.runs;
    let mut g = vec![vec![0i64; n]; n];
    for col in x.columns() {
        for a in 0..n {
            for b in 0..n {
                g[a][b] += (col[a] * col[b]) as i64;
            }
        }
    }
    g
}

/// SS(XX'), which equals SS(X'X) by the trace identity.
pub fn ss_row_gram(x: &DesignMatrix) -> i64 {
    row_gram(x).iter().flatten().map(|v| v * v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[&[i8]]) -> DesignMatrix {
        DesignMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthogonal_pair_passes() {
        let x = d(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert!(x.validate().passed());
        assert_eq!(e_s2(&x).unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn negated_column_is_aliased() {
        let x = d(&[&[1, -1], &[1, -1], &[-1, 1], &[-1, 1]]);
        let report = x.validate();
        assert!(!report.passed());
        assert_eq!(report.aliased, vec![(0, 1)]);
        assert_eq!(report.to_string(), "aliased pair (0,1)");
    }

    #[test]
    fn unbalanced_column_reported() {
        let x = d(&[&[1, 1], &[1, -1], &[1, 1], &[-1, -1]]);
        assert_eq!(x.validate().unbalanced, vec![0]);
    }

    #[test]
    fn too_many_factors() {
        // N = 4 admits C(3, 1) = 3 distinct balanced columns.
        assert_eq!(max_factors(4), 3);
        assert_eq!(max_factors(10), 126);
        let cols = vec![
            vec![1, 1, -1, -1],
            vec![1, -1, 1, -1],
            vec![1, -1, -1, 1],
            vec![-1, -1, 1, 1],
        ];
        let x = DesignMatrix::from_columns(4, &cols).unwrap();
        let report = x.validate();
        assert!(report.too_many_factors);
        assert_eq!(report.aliased, vec![(0, 3)]);
    }

    #[test]
    fn rejects_bad_entries_and_shapes() {
        assert!(matches!(
            DesignMatrix::from_rows(&[vec![1, 0]]),
            Err(Error::BadEntry { row: 0, col: 1 })
        ));
        assert!(DesignMatrix::from_rows(&[vec![1, 1], vec![1]]).is_err());
        assert!(DesignMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn degenerate_single_factor() {
        let x = d(&[&[1], &[-1]]);
        assert!(matches!(e_s2(&x), Err(Error::DegenerateM(1))));
        // A single balanced column: X'X = [N], SS = N^2.
        assert_eq!(ss_gram(&x), 4);
        assert_eq!(ss_row_gram(&x), 4);
    }

    #[test]
    fn gram_summary_consistent() {
        let x = d(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]);
        let g = gram_summary(&x).unwrap();
        assert_eq!(g.offdiag, vec![0, 0, 0]);
        assert_eq!(g.ss_gram, ss_gram(&x));
        assert_eq!(g.ss_gram, ss_row_gram(&x));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(19, 9), 92378);
        assert_eq!(binomial(3, 5), 0);
    }
}
