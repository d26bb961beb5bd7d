//! BIBDs with distinct blocks from cyclotomic difference families.
//!
//! Let x be a primitive element of GF(N - 1), q an even divisor of N - 2 and
//! T a subset of Z_q of size q/2. The initial block
//!
//! ```text
//! S_{r,0} = { x^(jq + i) : 0 <= j < (N - 2)/q, i in T + r }
//! ```
//!
//! developed over every field element a gives blocks S_{r,a} = S_{r,0} + a.
//! Using r = 0..e - 1, where e is the order of T under translation, yields a
//! BIBD(N - 1, e(N - 1), N/2 - 1) with distinct blocks whenever q != N - 2.
//! When (N - 2)/q is odd, a selector U of size e/2 with complement U + q/2
//! gives a half design with e(N - 1)/2 blocks. Shift sets from different
//! translation classes give block-disjoint designs, so unions stay BIBDs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::blocks::{is_bibd, BlockDesign};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, FiniteField};

/// A subset of Z_q of size q/2, as a bit mask (bit i set iff i is a member).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftSet {
    q: u32,
    mask: u64,
}

fn check_modulus(q: u32) -> Result<()> {
    if !(2..=64).contains(&q) || q % 2 == 1 {
        return Err(Error::BadShiftModulus(q));
    }
    Ok(())
}

fn rotate(mask: u64, q: u32, by: u32) -> u64 {
    let by = by % q;
    if by == 0 {
        return mask;
    }
    let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
    ((mask << by) | (mask >> (q - by))) & full
}

impl ShiftSet {
    pub fn new(q: u32, members: &[u32]) -> Result<Self> {
        check_modulus(q)?;
        let mut mask = 0u64;
        for &i in members {
            if i >= q {
                return Err(Error::BadShiftModulus(q));
            }
            mask |= 1 << i;
        }
        if mask.count_ones() as usize != members.len() || members.len() != q as usize / 2 {
            return Err(Error::BadSize {
                expected: q as usize / 2,
                got: mask.count_ones() as usize,
            });
        }
        Ok(ShiftSet { q, mask })
    }

    pub fn from_mask(q: u32, mask: u64) -> Result<Self> {
        check_modulus(q)?;
        if q < 64 && mask >> q != 0 {
            return Err(Error::BadShiftModulus(q));
        }
        if mask.count_ones() != q / 2 {
            return Err(Error::BadSize {
                expected: q as usize / 2,
                got: mask.count_ones() as usize,
            });
        }
        Ok(ShiftSet { q, mask })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn members(&self) -> Vec<u32> {
        (0..self.q).filter(|&i| self.mask >> i & 1 == 1).collect()
    }

    /// T + r, reduced mod q.
    pub fn translate(&self, r: u32) -> ShiftSet {
        ShiftSet {
            q: self.q,
            mask: rotate(self.mask, self.q, r),
        }
    }

    /// Smallest e > 0 with T + e = T.
    pub fn order(&self) -> u32 {
        (1..=self.q)
            .find(|&e| rotate(self.mask, self.q, e) == self.mask)
            .expect("T + q = T")
    }

    /// The translate with the smallest mask.
    pub fn canonical(&self) -> ShiftSet {
        (0..self.q)
            .map(|r| self.translate(r))
            .min_by_key(|t| t.mask)
            .expect("q >= 2")
    }

    pub fn equivalent(&self, other: &ShiftSet) -> bool {
        self.q == other.q && self.canonical() == other.canonical()
    }
}

impl fmt::Display for ShiftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

pub fn order_of(members: &[u32], q: u32) -> Result<u32> {
    ShiftSet::new(q, members).map(|t| t.order())
}

/// A translation class of shift sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivClass {
    pub q: u32,
    pub representative: ShiftSet,
    pub size: u32,
}

/// All classes of half-size subsets of Z_q, ordered by representative mask.
pub fn equivalence_classes(q: u32) -> Result<Vec<EquivClass>> {
    check_modulus(q)?;
    if q > 32 {
        // C(q, q/2) masks would be enumerated.
        return Err(Error::BadShiftModulus(q));
    }
    let half = q / 2;
    let mut reps = Vec::new();
    let mut mask: u64 = (1 << half) - 1;
    let limit = 1u64 << q;
    while mask < limit {
        let t = ShiftSet { q, mask };
        if t.canonical().mask == mask {
            reps.push(EquivClass {
                q,
                representative: t,
                size: t.order(),
            });
        }
        // Next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(reps)
}

/// U, a subset of {0..e-1} of size e/2 whose complement there is U + q/2.
///
/// Initial blocks depend on r only through T + r, so U + q/2 is compared
/// after reducing mod e (e divides q). This needs q/2 = e/2 (mod e), which
/// fails when q/e is even, in which case no selector exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSelector {
    members: Vec<u32>,
}

impl HalfSelector {
    pub fn new(shift: &ShiftSet, members: &[u32]) -> Result<Self> {
        let e = shift.order();
        let q = shift.modulus();
        if e % 2 == 1 {
            return Err(Error::BadHalfSelector(format!("order {e} of {shift} is odd")));
        }
        if (q / 2) % e != e / 2 {
            return Err(Error::BadHalfSelector(format!(
                "q/2 = {} is not e/2 mod e = {e}; U + q/2 cannot be the complement of U",
                q / 2
            )));
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != members.len() || sorted.len() != e as usize / 2 {
            return Err(Error::BadHalfSelector(format!(
                "U must have e/2 = {} distinct members",
                e / 2
            )));
        }
        if sorted.iter().any(|&u| u >= e) {
            return Err(Error::BadHalfSelector(format!("U must lie in 0..{e}")));
        }
        let shifted: HashSet<u32> = sorted.iter().map(|&u| (u + q / 2) % q % e).collect();
        let complement: HashSet<u32> = (0..e).filter(|u| !sorted.contains(u)).collect();
        if shifted != complement {
            return Err(Error::BadHalfSelector("complement of U differs from U + q/2".into()));
        }
        Ok(HalfSelector { members: sorted })
    }

    /// {0, .., e/2 - 1} if valid, otherwise the lexicographically first valid U.
    pub fn default_for(shift: &ShiftSet) -> Result<Self> {
        let e = shift.order();
        let first: Vec<u32> = (0..e / 2).collect();
        match HalfSelector::new(shift, &first) {
            Ok(u) => Ok(u),
            Err(err @ Error::BadHalfSelector(_)) if e % 2 == 1 || (shift.modulus() / 2) % e != e / 2 => {
                Err(err)
            }
            Err(_) => {
                use itertools::Itertools;
                (0..e)
                    .combinations(e as usize / 2)
                    .find_map(|u| HalfSelector::new(shift, &u).ok())
                    .ok_or_else(|| Error::BadHalfSelector(format!("no selector for {shift}")))
            }
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }
}

fn check_divisor(field: &FiniteField, q: u32) -> Result<u32> {
    let group_order = field.order() - 1;
    if q == 0 || q % 2 == 1 || group_order % q != 0 {
        return Err(Error::BadDivisor { q, group_order });
    }
    if q == group_order {
        return Err(Error::QEqualsNMinus2(group_order));
    }
    Ok(group_order)
}

/// S_{r,0} as sorted field indices.
pub fn initial_block(field: &FiniteField, x: &FieldElement<'_>, shift: &ShiftSet, r: u32) -> Result<Vec<u32>> {
    let group_order = check_divisor(field, shift.modulus())?;
    if !x.is_primitive() {
        return Err(Error::InvalidDesign(format!("{x:?} is not primitive")));
    }
    let q = shift.modulus();
    let t = shift.translate(r);
    let mut block: Vec<u32> = (0..group_order / q)
        .flat_map(|j| t.members().into_iter().map(move |i| j * q + i))
        .map(|e| x.pow(e as u64).index())
        .collect();
    block.sort_unstable();
    Ok(block)
}

/// S_{0,0}, .., S_{e-1,0}.
pub fn initial_blocks(field: &FiniteField, x: &FieldElement<'_>, shift: &ShiftSet) -> Result<Vec<Vec<u32>>> {
    (0..shift.order())
        .map(|r| initial_block(field, x, shift, r))
        .collect()
}

/// S_{0,0}, .., S_{q-1,0}: the full family, repeats included when e < q.
pub fn full_initial_blocks(field: &FiniteField, x: &FieldElement<'_>, shift: &ShiftSet) -> Result<Vec<Vec<u32>>> {
    (0..shift.modulus())
        .map(|r| initial_block(field, x, shift, r))
        .collect()
}

/// Adds every field element to every initial block, block-major then by element index.
pub fn develop(initial: &[Vec<u32>], field: &FiniteField) -> BlockDesign {
    let k = initial.first().map_or(0, Vec::len);
    let mut blocks = Vec::with_capacity(initial.len() * field.order() as usize);
    for base in initial {
        for a in 0..field.order() {
            let mut b: Vec<u32> = base.iter().map(|&t| field.add_idx(t, a)).collect();
            b.sort_unstable();
            blocks.push(b);
        }
    }
    BlockDesign::from_sorted(field.order() as usize, k, blocks)
}

fn checked(design: BlockDesign) -> Result<BlockDesign> {
    if let Some((i, j)) = design.repeated_blocks() {
        return Err(Error::RepeatedBlocks(i, j));
    }
    is_bibd(&design).map_err(|f| Error::NotBibd(f.to_string()))?;
    Ok(design)
}

/// The e(N - 1)-block design from all e translates of T.
pub fn full_design(field: &FiniteField, x: &FieldElement<'_>, shift: &ShiftSet) -> Result<BlockDesign> {
    let initial = initial_blocks(field, x, shift)?;
    checked(develop(&initial, field))
}

fn half_initial_blocks(
    field: &FiniteField,
    x: &FieldElement<'_>,
    shift: &ShiftSet,
    selector: &HalfSelector,
) -> Result<Vec<Vec<u32>>> {
    let group_order = check_divisor(field, shift.modulus())?;
    let ratio = group_order / shift.modulus();
    if ratio % 2 == 0 {
        return Err(Error::OddnessViolated(ratio));
    }
    HalfSelector::new(shift, selector.members())?;
    selector
        .members()
        .iter()
        .map(|&r| initial_block(field, x, shift, r))
        .collect()
}

/// The e(N - 1)/2-block design from the translates T + u, u in U.
pub fn half_design(
    field: &FiniteField,
    x: &FieldElement<'_>,
    shift: &ShiftSet,
    selector: &HalfSelector,
) -> Result<BlockDesign> {
    let initial = half_initial_blocks(field, x, shift, selector)?;
    checked(develop(&initial, field))
}

/// Within-block differences u - v of the initial blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceReport {
    /// counts[g] is how often nonzero element g occurs; counts[0] is unused.
    pub counts: Vec<usize>,
    /// The common count when every nonzero element occurs equally often.
    pub uniform: Option<usize>,
}

impl DifferenceReport {
    pub fn passed(&self) -> bool {
        self.uniform.is_some()
    }
}

pub fn verify_difference_family(initial: &[Vec<u32>], field: &FiniteField) -> DifferenceReport {
    let mut counts = vec![0usize; field.order() as usize];
    for block in initial {
        for &u in block {
            for &v in block {
                if u != v {
                    counts[field.sub_idx(u, v) as usize] += 1;
                }
            }
        }
    }
    let first = counts.get(1).copied().unwrap_or(0);
    let uniform = counts[1..].iter().all(|&c| c == first).then_some(first);
    DifferenceReport { counts, uniform }
}

/// One shift set, full or halved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub shift: ShiftSet,
    pub half: Option<HalfSelector>,
}

impl Part {
    pub fn full(shift: ShiftSet) -> Self {
        Part { shift, half: None }
    }

    pub fn half(shift: ShiftSet) -> Result<Self> {
        Ok(Part {
            half: Some(HalfSelector::default_for(&shift)?),
            shift,
        })
    }

    pub fn q(&self) -> u32 {
        self.shift.modulus()
    }

    pub fn num_initial_blocks(&self) -> usize {
        match &self.half {
            Some(u) => u.members().len(),
            None => self.shift.order() as usize,
        }
    }

    pub fn initial_blocks(&self, field: &FiniteField, x: &FieldElement<'_>) -> Result<Vec<Vec<u32>>> {
        match &self.half {
            Some(u) => half_initial_blocks(field, x, &self.shift, u),
            None => initial_blocks(field, x, &self.shift),
        }
    }
}

/// Run size plus the parts whose developed designs are joined.
///
/// Text form, one part per line:
/// `N=<int> part q=<int> T=<csv> [U=<csv>]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub runs: u32,
    pub parts: Vec<Part>,
}

impl ConstructionSpec {
    pub fn new(runs: u32) -> Self {
        ConstructionSpec {
            runs,
            parts: Vec::new(),
        }
    }

    pub fn with_part(mut self, part: Part) -> Self {
        self.parts.push(part);
        self
    }

    pub fn field(&self) -> Result<FiniteField> {
        if self.runs < 4 || self.runs % 2 == 1 {
            return Err(Error::BadRuns(self.runs as i64));
        }
        make_field(self.runs as u64 - 1)
    }

    pub fn num_blocks(&self) -> usize {
        self.parts.iter().map(Part::num_initial_blocks).sum::<usize>() * (self.runs as usize - 1)
    }

    pub fn to_text(&self) -> String {
        let csv = |v: &[u32]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        self.parts
            .iter()
            .map(|p| {
                let mut line = format!(
                    "N={} part q={} T={}",
                    self.runs,
                    p.q(),
                    csv(&p.shift.members())
                );
                if let Some(u) = &p.half {
                    line.push_str(&format!(" U={}", csv(u.members())));
                }
                line.push('\n');
                line
            })
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut runs = None;
        let mut parts = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut n = None;
            let mut q = None;
            let mut t = None;
            let mut u = None;
            let mut saw_part = false;
            for tok in line.split_whitespace() {
                if tok == "part" {
                    saw_part = true;
                    continue;
                }
                let (key, val) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line_no, format!("unexpected token {tok:?}")))?;
                let csv = || -> Result<Vec<u32>> {
                    if val.is_empty() {
                        return Ok(Vec::new());
                    }
                    val.split(',')
                        .map(|s| s.parse().map_err(|_| Error::parse(line_no, format!("bad list {val:?}"))))
                        .collect()
                };
                let int = || -> Result<u32> {
                    val.parse().map_err(|_| Error::parse(line_no, format!("bad integer {val:?}")))
                };
                match key {
                    "N" => n = Some(int()?),
                    "q" => q = Some(int()?),
                    "T" => t = Some(csv()?),
                    "U" => u = Some(csv()?),
                    _ => return Err(Error::parse(line_no, format!("unknown key {key:?}"))),
                }
            }
            if !saw_part {
                return Err(Error::parse(line_no, "missing `part`"));
            }
            let n = n.ok_or_else(|| Error::parse(line_no, "missing N="))?;
            match runs {
                None => runs = Some(n),
                Some(prev) if prev != n => {
                    return Err(Error::parse(line_no, format!("N={n} differs from N={prev}")))
                }
                _ => {}
            }
            let q = q.ok_or_else(|| Error::parse(line_no, "missing q="))?;
            let t = t.ok_or_else(|| Error::parse(line_no, "missing T="))?;
            let shift = ShiftSet::new(q, &t)?;
            let half = u.map(|u| HalfSelector::new(&shift, &u)).transpose()?;
            parts.push(Part { shift, half });
        }
        let runs = runs.ok_or_else(|| Error::parse(0, "no parts"))?;
        Ok(ConstructionSpec { runs, parts })
    }
}

/// Develops every part, checks the combination rules, and verifies the union.
pub fn construct(spec: &ConstructionSpec) -> Result<BlockDesign> {
    let field = spec.field()?;
    let x = field.primitive();
    if spec.parts.is_empty() {
        return Err(Error::NotBibd("no parts".into()));
    }
    for (i, a) in spec.parts.iter().enumerate() {
        for (j, b) in spec.parts.iter().enumerate().skip(i + 1) {
            if a.shift.equivalent(&b.shift) {
                return Err(Error::SameClass(i, j));
            }
        }
    }
    let families: Vec<Vec<Vec<u32>>> = spec
        .parts
        .iter()
        .map(|p| p.initial_blocks(&field, &x))
        .collect::<Result<_>>()?;
    let mut owner: HashMap<&[u32], usize> = HashMap::new();
    for (i, family) in families.iter().enumerate() {
        for block in family {
            if let Some(&j) = owner.get(block.as_slice()) {
                if j != i {
                    return Err(Error::InitialBlockClash(j, i));
                }
            }
            owner.insert(block, i);
        }
    }
    let initial: Vec<Vec<u32>> = families.into_iter().flatten().collect();
    checked(develop(&initial, &field))
}

/// Even divisors q of N - 2 with q != N - 2.
pub fn shift_moduli(runs: u32) -> Vec<u32> {
    if runs < 4 {
        return Vec::new();
    }
    let g = runs - 2;
    (2..g).step_by(2).filter(|q| g % q == 0).collect()
}

/// Every part available for run size N: one per class, full and (when valid) halved.
pub fn available_parts(runs: u32) -> Result<Vec<Part>> {
    let field = make_field(runs as u64 - 1)?;
    let group_order = field.order() - 1;
    let mut out = Vec::new();
    for q in shift_moduli(runs) {
        if q > 32 {
            continue;
        }
        for class in equivalence_classes(q)? {
            let t = class.representative;
            if (group_order / q) % 2 == 1 {
                if let Ok(p) = Part::half(t) {
                    out.push(p);
                }
            }
            out.push(Part::full(t));
        }
    }
    Ok(out)
}

/// Finds parts whose union has exactly `blocks` blocks, by depth-first search.
pub fn plan(runs: u32, blocks: usize) -> Result<ConstructionSpec> {
    let field = make_field(runs as u64 - 1)?;
    let x = field.primitive();
    let v = field.order() as usize;
    let no_plan = || Error::NoPlan { runs, blocks };
    if blocks == 0 || blocks % v != 0 {
        return Err(no_plan());
    }
    let target = blocks / v;
    let mut cands: Vec<(Part, Vec<Vec<u32>>)> = available_parts(runs)?
        .into_iter()
        .map(|p| {
            let fam = p.initial_blocks(&field, &x)?;
            Ok((p, fam))
        })
        .collect::<Result<_>>()?;
    cands.sort_by_key(|(p, _)| std::cmp::Reverse(p.num_initial_blocks()));

    // Each class may be used once; classes producing the same initial blocks conflict.
    let class_of: Vec<(u32, ShiftSet)> = cands.iter().map(|(p, _)| (p.q(), p.shift.canonical())).collect();
    let sizes: Vec<usize> = cands.iter().map(|(p, _)| p.num_initial_blocks()).collect();
    let mut suffix: Vec<usize> = vec![0; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }

    struct Search<'a> {
        cands: &'a [(Part, Vec<Vec<u32>>)],
        class_of: &'a [(u32, ShiftSet)],
        sizes: &'a [usize],
        suffix: &'a [usize],
        chosen: Vec<usize>,
        used_blocks: HashSet<Vec<u32>>,
        budget: usize,
    }

    impl Search<'_> {
        fn go(&mut self, start: usize, remaining: usize) -> bool {
            if remaining == 0 {
                return true;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            for i in start..self.cands.len() {
                if self.suffix[i] < remaining {
                    return false;
                }
                if self.sizes[i] > remaining {
                    continue;
                }
                if self.chosen.iter().any(|&c| self.class_of[c] == self.class_of[i]) {
                    continue;
                }
                let fam = &self.cands[i].1;
                if fam.iter().any(|b| self.used_blocks.contains(b)) {
                    continue;
                }
                self.chosen.push(i);
                self.used_blocks.extend(fam.iter().cloned());
                if self.go(i + 1, remaining - self.sizes[i]) {
                    return true;
                }
                for b in fam {
                    self.used_blocks.remove(b);
                }
                self.chosen.pop();
            }
            false
        }
    }

    let mut search = Search {
        cands: &cands,
        class_of: &class_of,
        sizes: &sizes,
        suffix: &suffix,
        chosen: Vec::new(),
        used_blocks: HashSet::new(),
        budget: 200_000,
    };
    if !search.go(0, target) {
        return Err(no_plan());
    }
    let parts = search.chosen.iter().map(|&i| cands[i].0.clone()).collect();
    Ok(ConstructionSpec { runs, parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(order_of(&[0, 1, 2], 6).unwrap(), 6);
        assert_eq!(order_of(&[0, 2, 4], 6).unwrap(), 2);
        assert_eq!(order_of(&[0, 1], 4).unwrap(), 4);
        assert!(matches!(order_of(&[0, 1], 6), Err(Error::BadSize { .. })));
        assert!(order_of(&[0, 0, 1], 6).is_err());
    }

    #[test]
    fn class_sizes() {
        let sizes = |q| -> Vec<u32> {
            equivalence_classes(q).unwrap().iter().map(|c| c.size).collect()
        };
        assert_eq!(sizes(2), vec![2]);
        assert_eq!(sizes(4), vec![4, 2]);
        assert_eq!(sizes(6), vec![6, 6, 6, 2]);
        let mut s8 = sizes(8);
        s8.sort_unstable();
        assert_eq!(s8, vec![2, 4, 8, 8, 8, 8, 8, 8, 8, 8]);
    }

    #[test]
    fn classes_of_six() {
        let reps: Vec<Vec<u32>> = equivalence_classes(6)
            .unwrap()
            .iter()
            .map(|c| c.representative.members())
            .collect();
        // {0,1,4} + 2 = {0,2,3} has the smaller mask.
        assert_eq!(reps, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![0, 2, 4]]);
        assert!(ShiftSet::new(6, &[0, 1, 4]).unwrap().equivalent(&equivalence_classes(6).unwrap()[2].representative));
    }

    #[test]
    fn half_selector_rules() {
        let t = ShiftSet::new(6, &[0, 1, 2]).unwrap();
        assert!(HalfSelector::new(&t, &[0, 1, 2]).is_ok());
        assert!(HalfSelector::new(&t, &[0, 1, 3]).is_err());
        assert!(HalfSelector::new(&t, &[0, 1]).is_err());
        let t = ShiftSet::new(6, &[0, 2, 4]).unwrap();
        assert_eq!(HalfSelector::default_for(&t).unwrap().members(), &[0]);
        // q/e = 2 is even: no selector exists.
        let t = ShiftSet::new(4, &[0, 2]).unwrap();
        assert!(HalfSelector::default_for(&t).is_err());
        // Non-default fallback: T = {0,1,3} in Z_6 has e = 6, {0,1,2} works.
        let t = ShiftSet::new(6, &[0, 1, 3]).unwrap();
        assert_eq!(HalfSelector::default_for(&t).unwrap().members(), &[0, 1, 2]);
    }

    #[test]
    fn divisor_errors() {
        let f = make_field(19).unwrap();
        let x = f.primitive();
        let t = ShiftSet::new(4, &[0, 1]).unwrap();
        assert!(matches!(initial_blocks(&f, &x, &t), Err(Error::BadDivisor { q: 4, .. })));
        let f = make_field(7).unwrap();
        let t = ShiftSet::new(6, &[0, 1, 2]).unwrap();
        assert!(matches!(
            initial_blocks(&f, &f.primitive(), &t),
            Err(Error::QEqualsNMinus2(6))
        ));
    }

    #[test]
    fn quadratic_residue_blocks() {
        let f = make_field(19).unwrap();
        let x = f.primitive();
        let t = ShiftSet::new(2, &[0]).unwrap();
        let blocks = initial_blocks(&f, &x, &t).unwrap();
        let mut qr: Vec<u32> = (1..19u32).map(|a| a * a % 19).collect();
        qr.sort_unstable();
        qr.dedup();
        assert_eq!(blocks[0], qr);
        let nqr: Vec<u32> = (1..19).filter(|a| !qr.contains(a)).collect();
        assert_eq!(blocks[1], nqr);
    }

    #[test]
    fn spec_text_round_trip() {
        let text = "N=20 part q=6 T=0,1,2 U=0,1,2\nN=20 part q=2 T=0\n";
        let spec = ConstructionSpec::parse(text).unwrap();
        assert_eq!(spec.parts.len(), 2);
        assert_eq!(spec.to_text(), text);
        assert_eq!(spec.num_blocks(), 95);
        assert!(ConstructionSpec::parse("N=20 part q=6 T=0,1,2\nN=22 part q=2 T=0\n").is_err());
        assert!(ConstructionSpec::parse("N=20 q=6 T=0,1,2\n").is_err());
        assert!(ConstructionSpec::parse("").is_err());
    }

    #[test]
    fn same_class_rejected() {
        let spec = ConstructionSpec::new(20)
            .with_part(Part::full(ShiftSet::new(6, &[0, 1, 2]).unwrap()))
            .with_part(Part::full(ShiftSet::new(6, &[1, 2, 3]).unwrap()));
        assert!(matches!(construct(&spec), Err(Error::SameClass(0, 1))));
    }

    #[test]
    fn cross_q_clash_rejected() {
        // q = 2 with T = {0} and q = 6 with T = {0,2,4} give the same residue blocks.
        let spec = ConstructionSpec::new(20)
            .with_part(Part::full(ShiftSet::new(2, &[0]).unwrap()))
            .with_part(Part::full(ShiftSet::new(6, &[0, 2, 4]).unwrap()));
        assert!(matches!(construct(&spec), Err(Error::InitialBlockClash(0, 1))));
    }

    #[test]
    fn oddness_violated() {
        let f = make_field(13).unwrap();
        let t = ShiftSet::new(6, &[0, 1, 2]).unwrap();
        let u = HalfSelector::new(&t, &[0, 1, 2]).unwrap();
        assert!(matches!(
            half_design(&f, &f.primitive(), &t, &u),
            Err(Error::OddnessViolated(2))
        ));
    }

    #[test]
    fn corrupted_family_fails_uniformity() {
        let f = make_field(19).unwrap();
        let t = ShiftSet::new(6, &[0, 1, 2]).unwrap();
        let mut blocks = full_initial_blocks(&f, &f.primitive(), &t).unwrap();
        assert_eq!(verify_difference_family(&blocks, &f).uniform, Some(24));
        blocks[0][0] = (blocks[0][0] + 1) % 19;
        assert!(!verify_difference_family(&blocks, &f).passed());
    }

    #[test]
    fn plan_small() {
        for t in 1..=3 {
            let spec = plan(10, 18 * t).unwrap();
            assert_eq!(construct(&spec).unwrap().num_blocks(), 18 * t);
        }
        assert!(plan(10, 27).is_err());
        assert!(plan(10, 18 * 4).is_err());
    }
}
