//! Semistandard tableaux, the Lascoux–Schützenberger charge statistic and
//! cocharge Kostka–Foulkes polynomials.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use super::{Partition, PartitionError};
use crate::exactalg::LaurentPolyQ;

/// A semistandard tableau in English notation: `rows[0]` is the longest row.
pub type Tableau = Vec<Vec<usize>>;

/// All semistandard tableaux of shape `shape` whose content is `content`
/// (letter `k` appears `content_k` times, letters start at `1`).
pub fn semistandard_tableaux(shape: &Partition, content: &Partition) -> Vec<Tableau> {
    if shape.size() != content.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let rows: Tableau = vec![Vec::new(); shape.len()];
    place_letter(shape, content.parts(), 0, rows, &mut out);
    out
}

// Places letter `idx + 1` as a horizontal strip of size content[idx].
fn place_letter(shape: &Partition, content: &[usize], idx: usize, rows: Tableau, out: &mut Vec<Tableau>) {
    if idx == content.len() {
        out.push(rows);
        return;
    }
    let letter = idx + 1;
    let mut rows = rows;
    strip(shape, content, idx, letter, 0, content[idx], &mut rows, out);
}

#[allow(clippy::too_many_arguments)]
fn strip(
    shape: &Partition,
    content: &[usize],
    idx: usize,
    letter: usize,
    row: usize,
    remaining: usize,
    rows: &mut Tableau,
    out: &mut Vec<Tableau>,
) {
    if remaining == 0 {
        place_letter(shape, content, idx + 1, rows.clone(), out);
        return;
    }
    if row >= rows.len() {
        return;
    }
    let cur = rows[row].len();
    // horizontal strip: new length bounded by the shape and by the length of
    // the row above before this letter was added
    let above = if row == 0 {
        usize::MAX
    } else {
        rows[row - 1].iter().filter(|&&x| x < letter).count()
    };
    let cap = shape.part(row).min(above);
    let max_add = cap.saturating_sub(cur).min(remaining);
    for add in (0..=max_add).rev() {
        for _ in 0..add {
            rows[row].push(letter);
        }
        strip(shape, content, idx, letter, row + 1, remaining - add, rows, out);
        for _ in 0..add {
            rows[row].pop();
        }
    }
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka_number(shape: &Partition, content: &Partition) -> usize {
    semistandard_tableaux(shape, content).len()
}

/// Row reading word: rows from bottom to top, each read left to right.
pub fn reading_word(t: &Tableau) -> Vec<usize> {
    t.iter().rev().flat_map(|row| row.iter().copied()).collect()
}

/// Charge of a word whose content is a partition.
///
/// Standard subwords are extracted by scanning leftwards and cyclically from
/// the right end: the rightmost free `1`, then the first free `2` to its
/// left, and so on. Within a subword the index rises by one each time the
/// search for the next letter wraps around, i.e. when `r + 1` sits to the
/// right of `r`.
pub fn charge(word: &[usize]) -> usize {
    let n = word.len();
    let mut used = vec![false; n];
    let mut free = n;
    let mut total = 0;
    while free > 0 {
        let max_letter = (0..n).filter(|&i| !used[i]).map(|i| word[i]).max().unwrap_or(0);
        let mut pos = n; // virtual position right of the word
        let mut index = 0;
        for letter in 1..=max_letter {
            let mut found = None;
            let mut wrapped = false;
            for step in 1..=n {
                let cand = (pos + n - step) % n;
                if pos != n && cand > pos {
                    wrapped = true;
                }
                if !used[cand] && word[cand] == letter {
                    found = Some(cand);
                    break;
                }
            }
            let p = found.expect("word content must be a partition");
            if letter > 1 && wrapped {
                index += 1;
            }
            total += index;
            used[p] = true;
            free -= 1;
            pos = p;
        }
    }
    total
}

type KfKey = (Partition, Partition);

fn kf_cache() -> &'static RwLock<HashMap<KfKey, LaurentPolyQ>> {
    static CACHE: OnceLock<RwLock<HashMap<KfKey, LaurentPolyQ>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `K̃_{shape, content}(q) = Σ_T q^{n(content) - charge(T)}` over
/// semistandard tableaux `T` of the given shape and content.
pub fn kostka_foulkes_cocharge(
    shape: &Partition,
    content: &Partition,
) -> Result<LaurentPolyQ, PartitionError> {
    if shape.size() != content.size() {
        return Err(PartitionError::SizeMismatch(shape.clone(), content.clone()));
    }
    let key = (shape.clone(), content.clone());
    if let Some(p) = kf_cache().read().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let n_stat = content.n_statistic() as i64;
    let mut poly = LaurentPolyQ::zero();
    for t in semistandard_tableaux(shape, content) {
        let c = charge(&reading_word(&t)) as i64;
        poly.add_term(n_stat - c, &BigInt::from(1));
    }
    kf_cache()
        .write()
        .expect("cache lock")
        .insert(key, poly.clone());
    Ok(poly)
}

pub(crate) fn export_kf_cache() -> Vec<(Partition, Partition, LaurentPolyQ)> {
    let guard = kf_cache().read().expect("cache lock");
    let mut v: Vec<_> = guard
        .iter()
        .map(|((a, b), p)| (a.clone(), b.clone(), p.clone()))
        .collect();
    v.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    v
}

pub(crate) fn import_kf_cache(entries: Vec<(Partition, Partition, LaurentPolyQ)>) {
    let mut guard = kf_cache().write().expect("cache lock");
    for (a, b, p) in entries {
        guard.entry((a, b)).or_insert(p);
    }
}
