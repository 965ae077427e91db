#![allow(dead_code)]

use adic_speedup::{ClopenSet, OdometerSystem};

/// Every word of length `depth`, in no particular order.
pub fn all_words(system: &OdometerSystem, depth: u32) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for i in 0..depth as usize {
        let b = system.base_at(i) as u8;
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..b).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// One odometer step on a finite word: add one to the first digit and carry right.
pub fn step(system: &OdometerSystem, word: &mut [u8]) {
    for (i, d) in word.iter_mut().enumerate() {
        if (*d as u32) + 1 < system.base_at(i) {
            *d += 1;
            return;
        }
        *d = 0;
    }
}

pub fn step_n(system: &OdometerSystem, word: &[u8], n: u64) -> Vec<u8> {
    let mut w = word.to_vec();
    for _ in 0..n {
        step(system, &mut w);
    }
    w
}

/// Membership by prefix matching against the set's listed words.
pub fn member(set: &ClopenSet, word: &[u8]) -> bool {
    if set.is_whole() {
        return true;
    }
    set.words()
        .iter()
        .any(|w| w.len() <= word.len() && word[..w.len()] == w[..])
}

pub fn words_in(set: &ClopenSet, depth: u32) -> Vec<Vec<u8>> {
    all_words(set.system(), depth)
        .into_iter()
        .filter(|w| member(set, w))
        .collect()
}
