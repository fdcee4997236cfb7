use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cyclic integer word of length `3τ`, read in triples `(l_i, m_i, n_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 3 != 0 {
            return Err(Error::InvalidInput(format!(
                "word length must be a positive multiple of 3, got {}",
                entries.len()
            )));
        }
        Ok(Word(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tau(&self) -> usize {
        self.0.len() / 3
    }

    /// Cyclic access.
    pub fn at(&self, j: isize) -> i32 {
        self.0[j.rem_euclid(self.0.len() as isize) as usize]
    }

    /// `l_i` for `i = 1..=τ` (cyclic in `i`).
    pub fn l(&self, i: usize) -> i32 {
        self.triple(i)[0]
    }

    pub fn m(&self, i: usize) -> i32 {
        self.triple(i)[1]
    }

    pub fn n(&self, i: usize) -> i32 {
        self.triple(i)[2]
    }

    fn triple(&self, i: usize) -> &[i32] {
        let k = (i + self.tau() - 1) % self.tau();
        &self.0[3 * k..3 * k + 3]
    }

    pub fn l_sum(&self) -> i64 {
        (1..=self.tau()).map(|i| self.l(i) as i64).sum()
    }

    /// Rotate left by `k` whole triples.
    pub fn rotate_triples(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left((3 * k) % n);
        Word(v)
    }

    /// Lexicographically minimal rotation by a multiple of 3.
    pub fn rotation_class(&self) -> Word {
        (0..self.tau())
            .map(|k| self.rotate_triples(k))
            .min()
            .expect("nonempty word")
    }

    pub fn equivalent_up_to_shift(&self, o: &Word) -> bool {
        self.len() == o.len() && self.rotation_class() == o.rotation_class()
    }

    /// `(w̃, N)` with `w = w̃^N` and `N` maximal.
    pub fn periodicity(&self) -> (Word, usize) {
        let n = self.len();
        for p in (3..=n).step_by(3) {
            if n % p == 0 && (0..n).all(|i| self.0[i] == self.0[i % p]) {
                return (Word(self.0[..p].to_vec()), n / p);
            }
        }
        unreachable!("the full word is a period")
    }

    pub fn concat_power(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// `(2,2,2)^τ`.
    pub fn is_all_twos(&self) -> bool {
        self.0.iter().all(|&x| x == 2)
    }

    /// `(0,0,0)^τ`.
    pub fn is_all_zeros(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl TryFrom<Vec<i32>> for Word {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<i32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The normality conditions, checked cyclically.
pub fn is_normal(w: &Word) -> bool {
    is_normal_slice(w.entries())
}

pub(crate) fn is_normal_slice(w: &[i32]) -> bool {
    let n = w.len();
    if n == 0 || w.iter().all(|&x| x == -1) {
        return false;
    }
    for j in 0..n {
        let (a, b, c) = (w[(j + n - 1) % n], w[j], w[(j + 1) % n]);
        if b == 1 && !(a <= 0 && c <= 0) {
            return false;
        }
        if b == 0 && !((a <= -1 && c >= 1) || (a >= 1 && c <= -1) || (a >= 1 && c >= 1)) {
            return false;
        }
    }
    minus_one_run(w).is_none()
}

/// Start and length `k` of a cyclic `(0, −1^{k−1}, 0)` pattern with `k ≥ 2`.
pub(crate) fn minus_one_run(w: &[i32]) -> Option<(usize, usize)> {
    let n = w.len();
    for j in 0..n {
        if w[j] != 0 {
            continue;
        }
        let mut k = 1;
        while k < n && w[(j + k) % n] == -1 {
            k += 1;
        }
        if k < n && k >= 2 && w[(j + k) % n] == 0 {
            return Some((j, k));
        }
    }
    None
}

/// A word certified normal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Word", into = "Word")]
pub struct NormalWord(Word);

impl NormalWord {
    pub fn new(w: Word) -> Result<Self> {
        if is_normal(&w) {
            Ok(NormalWord(w))
        } else {
            Err(Error::InvalidInput(format!(
                "{w} is not a normal loop word"
            )))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl TryFrom<Word> for NormalWord {
    type Error = Error;
    fn try_from(w: Word) -> Result<Self> {
        NormalWord::new(w)
    }
}

impl From<NormalWord> for Word {
    fn from(w: NormalWord) -> Self {
        w.0
    }
}

impl std::ops::Deref for NormalWord {
    type Target = Word;
    fn deref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[macro_export]
macro_rules! word {
    ($($x:expr),+ $(,)?) => {
        $crate::words::Word::new(vec![$($x),+]).expect("valid word literal")
    };
}
