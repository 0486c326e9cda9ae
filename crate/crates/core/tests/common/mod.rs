#![allow(dead_code)]

use cancelkit::{parse_presentation, Letter, Presentation, Word};
use std::ops::RangeInclusive;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const Z2: &str = "gens: a b\nrel: abAB";
pub const KLEIN: &str = "gens: a b\nrel: abaB";
pub const HEX: &str = "gens: x y z\nrel: xyz\nrel: xzy";
pub const FREETRI: &str = "gens: a b c\nrel: abc";
pub const REFERENCE: [&str; 4] = [Z2, KLEIN, HEX, FREETRI];

pub fn pres(text: &str) -> Presentation {
    parse_presentation(text).unwrap()
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Every word of length at most `n`, freely reduced or not.
pub fn all_words(alphabet: &[Letter], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for u in &layer {
            for &l in alphabet {
                let mut v = u.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Freely reduced words of length exactly `n`.
pub fn reduced_words(alphabet: &[Letter], n: usize) -> Vec<Word> {
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for u in &layer {
            for &l in alphabet {
                if u.last().is_some_and(|x| x.is_inverse_of(l)) {
                    continue;
                }
                let mut v = u.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    layer
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Letter], lens: RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

pub fn random_reduced(rng: &mut ChaCha8Rng, alphabet: &[Letter], lens: RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    while v.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if v.last().is_some_and(|x| x.is_inverse_of(l)) {
            continue;
        }
        v.push(l);
    }
    Word::from_letters(v)
}
