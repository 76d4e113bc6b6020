//! Products of ideals generated in a single degree.
//!
//! Such a product is again generated in one degree, so no minimalization is
//! needed; the generators are the sumset of the two generator sets. The
//! sumset is taken row by row: a generator of degree `a` is determined by
//! its first `d - 1` exponents, rows are keyed by the first `d - 2` and each
//! row is a bitset over the next one.

use std::collections::BTreeMap;

use super::{ExponentVector, MonomialIdeal};

struct Rows {
    rows: BTreeMap<Vec<u32>, Vec<u64>>,
    count: usize,
    width: usize,
}

fn rows_of(ideal: &MonomialIdeal, degree: u32) -> Rows {
    let d = ideal.num_vars();
    let width = degree as usize + 1;
    let words = width.div_ceil(64);
    let mut rows: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
    for g in ideal.generators() {
        let e = g.exponents();
        let key = e[..d - 2].to_vec();
        let bit = e[d - 2] as usize;
        let row = rows.entry(key).or_insert_with(|| vec![0; words]);
        row[bit / 64] |= 1 << (bit % 64);
    }
    Rows {
        rows,
        count: ideal.generators().len(),
        width,
    }
}

/// `target |= source << shift`.
fn or_shifted(target: &mut [u64], source: &[u64], shift: usize) {
    let words = shift / 64;
    let bits = shift % 64;
    for (i, &w) in source.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let j = i + words;
        if j < target.len() {
            target[j] |= w << bits;
        }
        if bits > 0 && j + 1 < target.len() {
            target[j + 1] |= w >> (64 - bits);
        }
    }
}

fn set_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

pub(super) fn product(a: &MonomialIdeal, deg_a: u32, b: &MonomialIdeal, deg_b: u32) -> MonomialIdeal {
    let d = a.num_vars();
    let total = deg_a + deg_b;
    if d == 1 {
        return MonomialIdeal::from_minimal(1, vec![ExponentVector::new(vec![total])]);
    }
    let ra = rows_of(a, deg_a);
    let rb = rows_of(b, deg_b);
    // Shifting copies of the wider operand by each generator of the other.
    let cost = |wide: &Rows, narrow: &Rows| narrow.count * wide.rows.len() * wide.width.div_ceil(64);
    let (wide, narrow) = if cost(&ra, &rb) <= cost(&rb, &ra) {
        (&ra, &rb)
    } else {
        (&rb, &ra)
    };
    let words = (total as usize + 1).div_ceil(64);
    let mut out: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
    for (kn, rn) in &narrow.rows {
        for (kw, rw) in &wide.rows {
            let key: Vec<u32> = kn.iter().zip(kw).map(|(x, y)| x + y).collect();
            let target = out.entry(key).or_insert_with(|| vec![0; words]);
            for shift in set_bits(rn) {
                or_shifted(target, rw, shift);
            }
        }
    }
    let mut gens = Vec::new();
    for (key, row) in &out {
        let prefix: u32 = key.iter().sum();
        for bit in set_bits(row) {
            let mut e = key.clone();
            e.push(bit as u32);
            e.push(total - prefix - bit as u32);
            gens.push(ExponentVector::new(e));
        }
    }
    MonomialIdeal::from_minimal(d, gens)
}
