//! Symbol encoding shared by every module.
//!
//! A letter is an index `0..26` for `'a'..='z'`. The symbol `q` stands for the
//! two-letter "Qu" cell, so it contributes two letters to a word's length.

pub type Letter = u8;

pub const ALPHABET_SIZE: usize = 26;

pub const QU: Letter = b'q' - b'a';

#[inline]
pub fn from_char(c: char) -> Option<Letter> {
    let c = c.to_ascii_lowercase();
    c.is_ascii_lowercase().then(|| c as u8 - b'a')
}

#[inline]
pub fn to_char(letter: Letter) -> char {
    (b'a' + letter) as char
}

/// Number of letters a symbol contributes to a word.
#[inline]
pub fn letter_len(letter: Letter) -> usize {
    if letter == QU {
        2
    } else {
        1
    }
}

/// Symbol notation, `q` for a Qu cell (as boards are written).
pub fn render(letters: &[Letter]) -> String {
    letters.iter().map(|&l| to_char(l)).collect()
}

/// Expanded spelling with every `q` written out as "qu".
pub fn spell(letters: &[Letter]) -> String {
    let mut out = String::with_capacity(letters.len() + 2);
    for &l in letters {
        out.push(to_char(l));
        if l == QU {
            out.push('u');
        }
    }
    out
}

/// Parses a string of symbols (board notation, no "qu" expansion).
pub fn parse_symbols(text: &str) -> Option<Vec<Letter>> {
    text.chars().map(from_char).collect()
}
