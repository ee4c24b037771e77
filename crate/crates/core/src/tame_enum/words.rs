use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// `A(i)` is a_i with |i| <= l+1, `B(j)` is b_j with j = +-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A(i8),
    B(i8),
}

impl Letter {
    pub fn inv(self) -> Letter {
        match self {
            Letter::A(i) => Letter::A(-i),
            Letter::B(j) => Letter::B(-j),
        }
    }

    pub fn index(self) -> i8 {
        match self {
            Letter::A(i) | Letter::B(i) => i,
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, Letter::A(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A(i) => write!(f, "a{i}"),
            Letter::B(j) => write!(f, "b{j}"),
        }
    }
}

pub fn inverse(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|c| c.inv()).collect()
}

pub fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// A word over the alphabet of Lambda_l. Band words are read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SDWord {
    pub ell: usize,
    pub letters: Vec<Letter>,
    pub cyclic: bool,
}

impl SDWord {
    pub fn string(ell: usize, letters: Vec<Letter>) -> SDWord {
        SDWord { ell, letters, cyclic: false }
    }

    pub fn band(ell: usize, letters: Vec<Letter>) -> SDWord {
        SDWord { ell, letters, cyclic: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WordClass {
    AsymString,
    SymString,
    AsymBand,
    SymBand,
    Invalid(String),
}

impl WordClass {
    pub fn name(&self) -> &str {
        match self {
            WordClass::AsymString => "asym_string",
            WordClass::SymString => "sym_string",
            WordClass::AsymBand => "asym_band",
            WordClass::SymBand => "sym_band",
            WordClass::Invalid(_) => "invalid",
        }
    }
}

/// Forbidden windows: b1 a_l b1, a_{l+1} b1, b1 a_{l+1}, a_i b1 a_j (i, j > 0), and their inverses.
fn forbidden_at(w: &[Letter], ell: i8) -> Option<String> {
    let n = w.len();
    for sign in [1i8, -1] {
        let b = Letter::B(sign);
        for k in 0..n {
            let c = w[k];
            if k + 1 < n {
                let d = w[k + 1];
                if c == Letter::A(sign * (ell + 1)) && d == b {
                    return Some(format!("subword {c}{d}"));
                }
                if c == b && d == Letter::A(sign * (ell + 1)) {
                    return Some(format!("subword {c}{d}"));
                }
            }
            if k + 2 < n {
                let (d, e) = (w[k + 1], w[k + 2]);
                if c == b && d == Letter::A(sign * ell) && e == b {
                    return Some(format!("subword {c}{d}{e}"));
                }
                if let (Letter::A(i), Letter::A(j)) = (c, e) {
                    if d == b && i * sign > 0 && j * sign > 0 {
                        return Some(format!("subword {c}{d}{e}"));
                    }
                }
            }
        }
    }
    None
}

fn letter_check(w: &[Letter], ell: i8) -> Option<String> {
    for c in w {
        match *c {
            Letter::A(i) if i.abs() > ell + 1 => return Some(format!("letter {c} outside the alphabet")),
            Letter::B(j) if j.abs() != 1 => return Some(format!("letter {c} outside the alphabet")),
            _ => {}
        }
    }
    for k in 1..w.len() {
        if w[k].is_a() == w[k - 1].is_a() {
            return Some(format!("letters {} {} do not alternate", w[k - 1], w[k]));
        }
    }
    None
}

/// Reason the string is invalid, if it is.
pub fn string_defect(w: &[Letter], ell: usize) -> Option<String> {
    let e = ell as i8;
    letter_check(w, e).or_else(|| forbidden_at(w, e))
}

fn is_power(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).any(|p| n % p == 0 && (p..n).all(|k| w[k] == w[k - p]))
}

pub fn rotations(w: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..w.len()).map(move |r| w[r..].iter().chain(&w[..r]).copied().collect())
}

/// Reason the band is invalid, if it is.
pub fn band_defect(w: &[Letter], ell: usize) -> Option<String> {
    let e = ell as i8;
    if w.is_empty() || w.len() % 2 == 1 {
        return Some("band words have positive even length".into());
    }
    if let Some(r) = letter_check(w, e) {
        return Some(r);
    }
    if is_power(w) {
        return Some("band word is a proper power".into());
    }
    let cube: Vec<Letter> = w.iter().chain(w).chain(w).copied().collect();
    forbidden_at(&cube, e).map(|r| format!("cyclic {r}"))
}

pub fn band_canonical(w: &[Letter]) -> Vec<Letter> {
    let inv = inverse(w);
    rotations(w).chain(rotations(&inv)).min().expect("nonempty band")
}

pub fn band_is_symmetric(w: &[Letter]) -> bool {
    let inv = inverse(w);
    rotations(w).any(|r| r == inv)
}

pub fn classify_word(w: &SDWord) -> WordClass {
    if w.cyclic {
        if let Some(r) = band_defect(&w.letters, w.ell) {
            return WordClass::Invalid(r);
        }
        return if band_is_symmetric(&w.letters) { WordClass::SymBand } else { WordClass::AsymBand };
    }
    if let Some(r) = string_defect(&w.letters, w.ell) {
        return WordClass::Invalid(r);
    }
    if w.letters.is_empty() {
        return WordClass::Invalid("the empty word is not a configuration".into());
    }
    if inverse(&w.letters) == w.letters {
        WordClass::SymString
    } else {
        WordClass::AsymString
    }
}

/// Order on words: at the first difference the larger index is smaller; a proper extension is smaller
/// when it continues with a positive letter and larger when negative.
pub fn word_cmp(w: &[Letter], v: &[Letter]) -> Ordering {
    for (x, y) in w.iter().zip(v) {
        if x != y {
            if x.is_a() != y.is_a() {
                return x.cmp(y);
            }
            return y.index().cmp(&x.index());
        }
    }
    let ext = |c: Letter| match c.index().cmp(&0) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        // a_0 continuation: incomparable in the partial order; the longer word is taken as larger
        Ordering::Equal => Ordering::Greater,
    };
    match w.len().cmp(&v.len()) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => ext(w[v.len()]),
        Ordering::Less => ext(v[w.len()]).reverse(),
    }
}

/// Spine of an enumerated configuration: the word for strings and asymmetric bands, z for the symmetric classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub word: SDWord,
    pub class: WordClass,
    pub spine: Vec<Letter>,
}

fn alphabet(ell: usize) -> (Vec<Letter>, Vec<Letter>) {
    let e = ell as i8 + 1;
    ((-e..=e).map(Letter::A).collect(), vec![Letter::B(-1), Letter::B(1)])
}

/// All alternating words of length exactly n passing `keep` on every prefix.
fn alternating_words(ell: usize, n: usize, keep: &dyn Fn(&[Letter]) -> bool) -> Vec<Vec<Letter>> {
    let (a, b) = alphabet(ell);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Letter>> = vec![vec![]];
    while let Some(w) = stack.pop() {
        if w.len() == n {
            out.push(w);
            continue;
        }
        let next: &[Letter] = match w.last() {
            None => {
                for c in a.iter().chain(&b) {
                    let v = vec![*c];
                    if keep(&v) {
                        stack.push(v);
                    }
                }
                continue;
            }
            Some(c) if c.is_a() => &b,
            Some(_) => &a,
        };
        for c in next {
            let mut v = w.clone();
            v.push(*c);
            if keep(&v) {
                stack.push(v);
            }
        }
    }
    out.sort();
    out
}

/// Canonical representatives of every class with at most `max_len` spine edges, in a fixed order.
pub fn enumerate_words(ell: usize, max_len: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    let valid_prefix = |w: &[Letter]| string_defect(w, ell).is_none();
    for n in 1..=max_len {
        for w in alternating_words(ell, n, &valid_prefix) {
            let inv = inverse(&w);
            if w < inv {
                out.push(Configuration { word: SDWord::string(ell, w.clone()), class: WordClass::AsymString, spine: w });
            }
        }
    }
    // symmetric strings z a_0 z^-1, z ending in a b-letter
    for n in 0..=max_len {
        let zs = if n == 0 { vec![vec![]] } else { alternating_words(ell, n, &valid_prefix) };
        for z in zs {
            if z.last().is_some_and(|c| c.is_a()) {
                continue;
            }
            let w: Vec<Letter> = z.iter().copied().chain([Letter::A(0)]).chain(inverse(&z)).collect();
            if string_defect(&w, ell).is_none() {
                out.push(Configuration { word: SDWord::string(ell, w), class: WordClass::SymString, spine: z });
            }
        }
    }
    for n in (2..=max_len).step_by(2) {
        for w in alternating_words(ell, n, &valid_prefix) {
            if band_defect(&w, ell).is_some() || band_canonical(&w) != w || band_is_symmetric(&w) {
                continue;
            }
            out.push(Configuration { word: SDWord::band(ell, w.clone()), class: WordClass::AsymBand, spine: w });
        }
    }
    // symmetric bands z a_0 z^-1 a_0, z beginning and ending with b-letters
    for n in (1..=max_len).step_by(2) {
        for z in alternating_words(ell, n, &valid_prefix) {
            let zi = inverse(&z);
            if z[0].is_a() || zi < z {
                continue;
            }
            let w: Vec<Letter> = z.iter().copied().chain([Letter::A(0)]).chain(zi).chain([Letter::A(0)]).collect();
            if band_defect(&w, ell).is_none() {
                out.push(Configuration { word: SDWord::band(ell, w), class: WordClass::SymBand, spine: z });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{A, B};

    #[test]
    fn classify_examples() {
        assert_eq!(classify_word(&SDWord::string(1, vec![A(0)])), WordClass::SymString);
        assert!(matches!(classify_word(&SDWord::string(1, vec![A(1), B(1), A(1)])), WordClass::Invalid(_)));
        assert_eq!(classify_word(&SDWord::string(3, vec![B(1), A(2)])), WordClass::AsymString);
        // with l = 1, a_2 = a_{l+1} and b1 a_{l+1} is forbidden
        assert!(matches!(classify_word(&SDWord::string(1, vec![B(1), A(2)])), WordClass::Invalid(_)));
        assert_eq!(classify_word(&SDWord::band(1, vec![B(1), A(0), B(-1), A(0)])), WordClass::SymBand);
        assert_eq!(classify_word(&SDWord::band(1, vec![B(1), A(-1)])), WordClass::AsymBand);
        assert!(matches!(classify_word(&SDWord::band(1, vec![B(1), A(-1), B(1), A(-1)])), WordClass::Invalid(_)));
    }

    #[test]
    fn order_clauses() {
        // clause 3: larger index at the first difference is smaller
        assert_eq!(word_cmp(&[B(1)], &[B(-1)]), Ordering::Less);
        // clause 1: extension by a positive letter is smaller
        assert_eq!(word_cmp(&[B(1), A(1)], &[B(1)]), Ordering::Less);
        // clause 2: extension by a negative letter is larger
        assert_eq!(word_cmp(&[B(1)], &[B(1), A(-1)]), Ordering::Less);
    }

    #[test]
    fn short_enumeration() {
        let e0 = enumerate_words(1, 0);
        assert_eq!(e0.len(), 1);
        assert_eq!(e0[0].class, WordClass::SymString);
        // length-one a-letter strings for l = 1: a_{-2}..a_2 up to inversion, a_0 symmetric
        let len1: Vec<_> = enumerate_words(1, 1)
            .into_iter()
            .filter(|c| c.class == WordClass::AsymString && c.word.letters.len() == 1 && c.word.letters[0].is_a())
            .collect();
        assert_eq!(len1.len(), 2);
    }

    #[test]
    fn representatives_are_unique_in_their_orbit() {
        let all = enumerate_words(1, 5);
        let mut seen = std::collections::HashSet::new();
        for c in &all {
            let key = match c.class {
                WordClass::AsymBand | WordClass::SymBand => band_canonical(&c.word.letters),
                _ => c.word.letters.clone().min(inverse(&c.word.letters)),
            };
            assert!(seen.insert((c.word.cyclic, key)), "{c:?}");
            assert_eq!(classify_word(&c.word), c.class);
        }
    }
}
