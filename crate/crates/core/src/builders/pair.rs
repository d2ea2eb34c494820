//! Minimal complements for two-element sets `W = {0, a}`.
//!
//! `C` works for `{0, a}` exactly when every `g` has `g` or `g + a` in `C`
//! and no `g` has all of `g, g + a, g + 2a` in `C`.

use crate::error::{Error, Result};
use crate::group::Element;
use crate::set::GroupSet;
use crate::sumset::translate;

pub fn pair_witness_check(c: &GroupSet, a: Element) -> Result<bool> {
    let group = c.group();
    group.check(a)?;
    if a == 0 {
        return Err(Error::ZeroStep);
    }
    let minus_a = group.neg(a);
    // g in back1 <=> g + a in C
    let back1 = translate(c, minus_a);
    let back2 = translate(&back1, minus_a);
    let covers = c.union(&back1).is_full();
    let no_triple = !c.intersection(&back1).intersects(&back2);
    Ok(covers && no_triple)
}

/// First `a` (by index) for which `C` is a minimal complement of `{0, a}`.
pub fn find_pair_witness(c: &GroupSet) -> Option<(Element, GroupSet)> {
    let group = c.group();
    let n = group.order();
    // C must meet every {g, g + a}
    if 2 * c.len() < n {
        return None;
    }
    (1..n).find_map(|a| {
        pair_witness_check(c, a)
            .ok()
            .filter(|&ok| ok)
            .map(|_| (a, GroupSet::from_elements(group, [0, a]).expect("valid elements")))
    })
}
