//! Text forms for groups, elements and sets.
//!
//! - group: cyclic factors joined by `x`, e.g. `12` or `2x4`; `1` is the trivial group;
//! - element: a decimal index or a coordinate tuple `(a1,...,ar)`;
//! - set: `{e1,e2,...}` of element literals, or a `0x` hex mask with bit `i`
//!   standing for element `i`.
//!
//! Error positions are byte offsets into the input.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::set::GroupSet;

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

pub fn parse_group(text: &str) -> Result<Arc<Group>> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(err(offset, "empty group spec"));
    }
    if trimmed == "1" {
        return Ok(Group::trivial());
    }
    let mut factors = Vec::new();
    let mut pos = offset;
    for part in trimmed.split('x') {
        let value: usize = part
            .trim()
            .parse()
            .map_err(|_| err(pos, format!("expected a cyclic factor, found {part:?}")))?;
        if value < 2 {
            return Err(err(pos, format!("cyclic factor {value} must be at least 2")));
        }
        factors.push(value);
        pos += part.len() + 1;
    }
    Group::new(&factors)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<(i128, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map(|v| (v, start))
            .map_err(|_| err(start, "expected an integer"))
    }

    fn element(&mut self, group: &Group) -> Result<Element> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let open = self.pos;
            self.pos += 1;
            let mut coords = Vec::new();
            if !self.eat(b')') {
                loop {
                    let (v, at) = self.integer()?;
                    let v = usize::try_from(v).map_err(|_| err(at, "coordinates must be non-negative"))?;
                    if let Some(&d) = group.factors().get(coords.len()) {
                        if v >= d {
                            return Err(err(at, format!("coordinate {v} out of range for factor {d}")));
                        }
                    }
                    coords.push(v);
                    if self.eat(b')') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            if coords.len() != group.rank() {
                return Err(err(
                    open,
                    format!("tuple has {} coordinates, the group has {}", coords.len(), group.rank()),
                ));
            }
            group.index_of(&coords)
        } else {
            let (v, at) = self.integer()?;
            usize::try_from(v).ok().filter(|&x| x < group.order()).ok_or_else(|| {
                err(
                    at,
                    format!("element {v} out of range for a group of order {}", group.order()),
                )
            })
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.text.len() {
            Err(err(self.pos, "unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse_element(group: &Group, text: &str) -> Result<Element> {
    let mut cur = Cursor { text, pos: 0 };
    let x = cur.element(group)?;
    cur.finish()?;
    Ok(x)
}

pub fn parse_set(group: &Arc<Group>, text: &str) -> Result<GroupSet> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if let Some(hex) = trimmed.strip_prefix("0x").or_else(|| trimmed.strip_prefix("0X")) {
        return parse_hex(group, hex.trim_end(), offset + 2);
    }
    let mut cur = Cursor { text, pos: 0 };
    cur.expect(b'{')?;
    let mut set = GroupSet::empty(group);
    if !cur.eat(b'}') {
        loop {
            set.insert(cur.element(group)?);
            if cur.eat(b'}') {
                break;
            }
            cur.expect(b',')?;
        }
    }
    cur.finish()?;
    Ok(set)
}

fn parse_hex(group: &Arc<Group>, hex: &str, offset: usize) -> Result<GroupSet> {
    if hex.is_empty() {
        return Err(err(offset, "empty hex mask"));
    }
    if let Some(bad) = hex.bytes().position(|c| !c.is_ascii_hexdigit()) {
        return Err(err(offset + bad, "invalid hex digit"));
    }
    let mut words = vec![0u64; group.order().div_ceil(64).max(1)];
    for (i, c) in hex.bytes().rev().enumerate() {
        let nibble = u64::from((c as char).to_digit(16).expect("checked"));
        if nibble == 0 {
            continue;
        }
        let bit = 4 * i;
        match words.get_mut(bit / 64) {
            Some(w) => *w |= nibble << (bit % 64),
            None => return Err(err(offset + hex.len() - 1 - i, "mask has bits beyond the group order")),
        }
    }
    GroupSet::from_words(group, words).map_err(|_| err(offset, "mask has bits beyond the group order"))
}

/// `{a, b, ...}` of (possibly negative) integers.
pub fn parse_integer_set(text: &str) -> Result<Vec<i64>> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect(b'{')?;
    let mut out = Vec::new();
    if !cur.eat(b'}') {
        loop {
            let (v, at) = cur.integer()?;
            out.push(i64::try_from(v).map_err(|_| err(at, "integer out of range"))?);
            if cur.eat(b'}') {
                break;
            }
            cur.expect(b',')?;
        }
    }
    cur.finish()?;
    Ok(out)
}
