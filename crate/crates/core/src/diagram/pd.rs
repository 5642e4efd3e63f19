use std::collections::VecDeque;

use super::{Crossing, Diagram, Sign};
use crate::error::{Error, Result};

/// Parses PD text: whitespace- or comma-separated `X[a,b,c,d]` terms,
/// optionally wrapped in `PD[...]`, followed by optional `O` tokens (one per
/// free loop) or a `free_loops=k` token.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let (tuples, loops) = scan(text)?;
    from_tuples(&tuples, loops)
}

impl Diagram {
    /// Parses PD text and adds `extra_loops` crossing-free circles.
    pub fn parse_with_free_loops(text: &str, extra_loops: u32) -> Result<Diagram> {
        let (tuples, loops) = scan(text)?;
        from_tuples(&tuples, loops + extra_loops)
    }

    /// Builds a diagram from bare PD tuples, deriving every crossing sign
    /// from the requirement that each edge enters exactly one crossing.
    pub fn from_tuples(tuples: &[[u32; 4]], free_loops: u32) -> Result<Diagram> {
        from_tuples(tuples, free_loops)
    }
}

fn from_tuples(tuples: &[[u32; 4]], free_loops: u32) -> Result<Diagram> {
    let signs = infer_signs(tuples)?;
    let crossings = tuples.iter().zip(signs).map(|(&t, s)| Crossing::new(t, s)).collect();
    Diagram::new(crossings, free_loops)
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn skip_separators(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::parse(start, "expected a label"))
    }
}

fn scan(text: &str) -> Result<(Vec<[u32; 4]>, u32)> {
    let mut s = Scanner {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut tuples = Vec::new();
    let mut loops = 0;
    s.skip_separators();
    let wrapped = s.eat("PD[");
    loop {
        s.skip_separators();
        if s.pos >= s.src.len() {
            break;
        }
        if wrapped && s.src[s.pos] == b']' {
            s.pos += 1;
            continue;
        }
        if s.eat("X[") {
            let mut t = [0u32; 4];
            for (k, slot) in t.iter_mut().enumerate() {
                if k > 0 {
                    s.expect(b',')?;
                }
                *slot = s.number()?;
                if *slot == 0 {
                    return Err(Error::parse(s.pos, "labels must be positive"));
                }
            }
            s.expect(b']')?;
            tuples.push(t);
        } else if s.eat("free_loops=") {
            loops += s.number()?;
        } else if s.src[s.pos] == b'O' {
            s.pos += 1;
            loops += 1;
        } else {
            return Err(Error::parse(s.pos, "expected X[a,b,c,d]"));
        }
    }
    Ok((tuples, loops))
}

fn infer_signs(tuples: &[[u32; 4]]) -> Result<Vec<Sign>> {
    let n = 2 * tuples.len();
    let max = tuples.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n.max(max) + 1];
    for (x, t) in tuples.iter().enumerate() {
        for (slot, &e) in t.iter().enumerate() {
            occ[e as usize].push((x, slot));
        }
    }
    let bad: Vec<u32> = (1..occ.len() as u32).filter(|&e| occ[e as usize].len() != 2).collect();
    if !bad.is_empty() {
        return Err(Error::InvalidPd(format!("labels {bad:?} do not appear exactly twice")));
    }
    if max > n {
        return Err(Error::InvalidPd(format!("label {max} outside 1..={n}")));
    }

    let mut signs: Vec<Option<Sign>> = vec![None; tuples.len()];
    let mut queue = VecDeque::new();

    // Direction of an occurrence given the crossing sign (None if unknown).
    let incoming = |signs: &[Option<Sign>], x: usize, slot: usize| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            _ => signs[x].map(|s| Crossing::new([0; 4], s).is_incoming(slot)),
        }
    };

    // The other end of a label must point the opposite way.
    let force = |signs: &mut Vec<Option<Sign>>, queue: &mut VecDeque<usize>, x: usize, slot: usize, want_in: bool| {
        if slot == 0 || slot == 2 {
            return if (slot == 0) == want_in {
                Ok(())
            } else {
                Err(Error::InvalidPd(format!("orientation conflict at crossing {x}")))
            };
        }
        // slot 3 incoming or slot 1 outgoing means the over-strand runs d -> b
        let sign = if (slot == 3) == want_in {
            Sign::Positive
        } else {
            Sign::Negative
        };
        match signs[x] {
            Some(s) if s != sign => Err(Error::InvalidPd(format!("orientation conflict at crossing {x}"))),
            Some(_) => Ok(()),
            None => {
                signs[x] = Some(sign);
                queue.push_back(x);
                Ok(())
            }
        }
    };

    for pair in &occ[1..=n] {
        let [(x0, s0), (x1, s1)] = [pair[0], pair[1]];
        if let Some(inc) = incoming(&signs, x0, s0).filter(|_| s0 % 2 == 0) {
            force(&mut signs, &mut queue, x1, s1, !inc)?;
        }
        if let Some(inc) = incoming(&signs, x1, s1).filter(|_| s1 % 2 == 0) {
            force(&mut signs, &mut queue, x0, s0, !inc)?;
        }
    }

    loop {
        while let Some(x) = queue.pop_front() {
            for slot in [1, 3] {
                let e = tuples[x][slot] as usize;
                let inc = incoming(&signs, x, slot).expect("sign known");
                let &(y, t) = occ[e].iter().find(|&&o| o != (x, slot)).expect("two occurrences");
                force(&mut signs, &mut queue, y, t, !inc)?;
            }
        }
        // Components that only ever pass over: orientation follows labels.
        let Some(x) = signs.iter().position(|s| s.is_none()) else {
            break;
        };
        let [_, b, _, d] = tuples[x];
        let sign = if b == d + 1 {
            Sign::Positive
        } else if d == b + 1 {
            Sign::Negative
        } else if b < d {
            Sign::Positive
        } else {
            Sign::Negative
        };
        signs[x] = Some(sign);
        queue.push_back(x);
    }
    Ok(signs.into_iter().map(|s| s.expect("all signs resolved")).collect())
}
