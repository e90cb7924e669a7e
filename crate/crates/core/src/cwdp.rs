//! d-truncated `B_I` over a k-expression, without building the graph.
//!
//! The state at each node maps a set `L` of labels to the truncated sum of
//! `x_A y_B v^{|A∪B|}` over stable sets whose members carry exactly the
//! labels in `L`. Tables have at most `2^k` entries and every product is
//! truncated at `d`, so for fixed `k` and `d` the work is polynomial in the
//! number of constants.

use std::collections::BTreeMap;

use crate::kexpr::{check_width, occurrence_name, KExpr, KExprError};
use crate::poly::{Indeterminate, Monomial, MultiPoly};

/// Label sets as bitmasks: label `i` is bit `i - 1`.
pub type Table = BTreeMap<u64, MultiPoly>;

/// Largest supported width.
pub const MAX_WIDTH: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DpStats {
    /// Largest table seen at any node.
    pub max_table: usize,
    /// Number of truncated products computed.
    pub products: usize,
}

struct Dp {
    d: u32,
    next: usize,
    stats: DpStats,
}

fn bit(label: u32) -> u64 {
    1u64 << (label - 1)
}

fn push(table: &mut Table, key: u64, p: MultiPoly) {
    if p.is_zero() {
        return;
    }
    let slot = table.entry(key).or_insert_with(MultiPoly::zero);
    *slot += p;
    if slot.is_zero() {
        table.remove(&key);
    }
}

impl Dp {
    fn walk(&mut self, e: &KExpr) -> Table {
        let table = match e {
            KExpr::Const { label, looped } => {
                let name = occurrence_name(self.next);
                self.next += 1;
                let tag = if *looped { "y" } else { "x" };
                let mut t = Table::new();
                t.insert(0, MultiPoly::one());
                if self.d >= 1 {
                    let m = Monomial::from_powers([(Indeterminate::indexed(tag, name.as_str()), 1), (Indeterminate::ordinary("v"), 1)]);
                    t.insert(bit(*label), MultiPoly::term(1, m));
                }
                t
            }
            KExpr::Add(i, j, c) => {
                let (bi, bj) = (bit(*i), bit(*j));
                let mut t = self.walk(c);
                t.retain(|&l, _| l & bi == 0 || l & bj == 0);
                t
            }
            KExpr::Ren(i, j, c) => {
                let (bi, bj) = (bit(*i), bit(*j));
                let mut t = Table::new();
                for (l, p) in self.walk(c) {
                    let key = if l & bi != 0 { (l & !bi) | bj } else { l };
                    push(&mut t, key, p);
                }
                t
            }
            KExpr::Union(l, r) => {
                let left = self.walk(l);
                let right = self.walk(r);
                let mut t = Table::new();
                for (l1, p1) in &left {
                    for (l2, p2) in &right {
                        self.stats.products += 1;
                        push(&mut t, l1 | l2, p1.mul_truncated(p2, self.d));
                    }
                }
                t
            }
        };
        self.stats.max_table = self.stats.max_table.max(table.len());
        table
    }
}

/// The final table, keyed by label set.
pub fn dp_table(e: &KExpr, k: u32, d: u32) -> Result<(Table, DpStats), KExprError> {
    check_width(e, k)?;
    check_width(e, MAX_WIDTH)?;
    let mut dp = Dp {
        d,
        next: 0,
        stats: DpStats::default(),
    };
    let t = dp.walk(e);
    Ok((t, dp.stats))
}

/// `B_I(val(e))` truncated at quasi-degree `d`.
pub fn dp_bi_truncated(e: &KExpr, k: u32, d: u32) -> Result<MultiPoly, KExprError> {
    Ok(dp_bi_truncated_with_stats(e, k, d)?.0)
}

pub fn dp_bi_truncated_with_stats(e: &KExpr, k: u32, d: u32) -> Result<(MultiPoly, DpStats), KExprError> {
    let (t, stats) = dp_table(e, k, d)?;
    Ok((t.into_values().sum(), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interlace::specialize::{b_i, BiMethod};
    use crate::kexpr::{eval_kexpr, parse_kexpr};
    use crate::poly::Substitution;

    const K3: &str = "add(1,2, ren(2,1, add(1,2, (1+2))) + 2)";

    #[test]
    fn single_constant() {
        let e = parse_kexpr("1").unwrap();
        for d in 1..4 {
            assert_eq!(dp_bi_truncated(&e, 1, d).unwrap(), "1 + x_v1*v".parse().unwrap());
        }
        assert_eq!(dp_bi_truncated(&parse_kexpr("1l").unwrap(), 1, 2).unwrap(), "1 + y_v1*v".parse().unwrap());
    }

    #[test]
    fn k3_independence() {
        let e = parse_kexpr(K3).unwrap();
        let ones = Substitution::new()
            .family_const("x", MultiPoly::one())
            .family_const("y", MultiPoly::one());
        let p = dp_bi_truncated(&e, 2, 3).unwrap().substitute(&ones);
        assert_eq!(p, "1 + 3*v".parse().unwrap());
    }

    #[test]
    fn degree_zero_is_one() {
        for src in ["1", K3, "add(1,2,(1l + 2 + 2l))"] {
            assert_eq!(dp_bi_truncated(&parse_kexpr(src).unwrap(), 2, 0).unwrap(), MultiPoly::one());
        }
    }

    #[test]
    fn matches_brute_force_on_a_mixed_expression() {
        let e = parse_kexpr("ren(3,1, add(1,3, (add(1,2,(1 + 2l + 2)) + 3l + 3)))").unwrap();
        let g = eval_kexpr(&e, 3, false).unwrap().graph;
        let full = b_i(&g, BiMethod::Direct).unwrap();
        for d in 0..=5 {
            assert_eq!(dp_bi_truncated(&e, 3, d).unwrap(), full.truncate(d), "d={d}");
        }
    }

    #[test]
    fn width_violation() {
        assert_eq!(
            dp_bi_truncated(&parse_kexpr("add(1,3,(1 + 3))").unwrap(), 2, 2),
            Err(KExprError::Width { label: 3, k: 2 })
        );
    }
}
