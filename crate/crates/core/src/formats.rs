//! Text formats for design matrices and block designs.
//!
//! Design file: a header `N m`, then N rows of m tokens `1` or `-1`.
//! Block file: a header `v b k`, then b rows of k increasing 0-based indices.
//! Lines starting with `#` and blank lines are skipped.

use std::fmt::Write as _;

use crate::blocks::BlockDesign;
use crate::design::DesignMatrix;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header<const K: usize>(line: Option<(usize, &str)>, what: &str) -> Result<(usize, [usize; K])> {
    let (no, line) = line.ok_or_else(|| Error::parse(0, format!("missing {what} header")))?;
    let vals: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(no, format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let arr: [usize; K] = vals
        .try_into()
        .map_err(|_| Error::parse(no, format!("{what} header needs {K} integers")))?;
    Ok((no, arr))
}

pub fn parse_design(text: &str) -> Result<DesignMatrix> {
    let mut lines = content_lines(text);
    let (no, [n, m]) = header::<2>(lines.next(), "design")?;
    let mut rows = Vec::with_capacity(n);
    for (no, line) in lines.by_ref().take(n) {
        let row: Vec<i8> = line
            .split_whitespace()
            .map(|t| match t {
                "1" => Ok(1),
                "-1" => Ok(-1),
                _ => Err(Error::parse(no, format!("entry {t:?} is not 1 or -1"))),
            })
            .collect::<Result<_>>()?;
        if row.len() != m {
            return Err(Error::parse(no, format!("expected {m} entries, got {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(no, format!("expected {n} rows, got {}", rows.len())));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "trailing data after last row"));
    }
    DesignMatrix::from_rows(&rows)
}

pub fn print_design(x: &DesignMatrix) -> String {
    let mut out = format!("{} {}\n", x.runs(), x.factors());
    for r in 0..x.runs() {
        let row: Vec<&str> = (0..x.factors())
            .map(|c| if x.get(r, c) == 1 { "1" } else { "-1" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_blocks(text: &str) -> Result<BlockDesign> {
    let mut lines = content_lines(text);
    let (no, [v, b, k]) = header::<3>(lines.next(), "block")?;
    let mut blocks = Vec::with_capacity(b);
    for (no, line) in lines.by_ref().take(b) {
        let block: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(no, format!("bad treatment {t:?}"))))
            .collect::<Result<_>>()?;
        if block.len() != k {
            return Err(Error::parse(no, format!("expected {k} treatments, got {}", block.len())));
        }
        if block.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(no, "treatments must be strictly increasing"));
        }
        blocks.push(block);
    }
    if blocks.len() != b {
        return Err(Error::parse(no, format!("expected {b} blocks, got {}", blocks.len())));
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "trailing data after last block"));
    }
    BlockDesign::new(v, k, blocks)
}

pub fn print_blocks(design: &BlockDesign) -> String {
    let mut out = format!(
        "{} {} {}\n",
        design.treatments(),
        design.num_blocks(),
        design.block_size()
    );
    for block in design.blocks() {
        let mut first = true;
        for t in block {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{t}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_round_trip_with_comments() {
        let text = "# four runs\n4 3\n1 1 1\n1 -1 -1\n\n-1 1 -1\n-1 -1 1\n";
        let x = parse_design(text).unwrap();
        assert_eq!(x.get(1, 2), -1);
        assert_eq!(print_design(&x), "4 3\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n");
        assert_eq!(parse_design(&print_design(&x)).unwrap(), x);
    }

    #[test]
    fn design_errors() {
        assert!(parse_design("").is_err());
        assert!(parse_design("2 2\n1 1\n").is_err());
        assert!(parse_design("2 2\n1 +1\n1 1\n").is_err());
        assert!(parse_design("2 2\n1 1\n1 1 1\n").is_err());
        assert!(parse_design("2 1\n1\n-1\n1\n").is_err());
    }

    #[test]
    fn block_round_trip() {
        let text = "3 3 2\n0 1\n0 2\n1 2\n";
        let b = parse_blocks(text).unwrap();
        assert_eq!(print_blocks(&b), text);
        assert!(parse_blocks("3 1 2\n1 0\n").is_err());
        assert!(parse_blocks("3 1 2\n0 5\n").is_err());
    }
}
