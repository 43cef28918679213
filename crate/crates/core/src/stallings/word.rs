use std::fmt;

use serde::{Deserialize, Serialize};

/// A freely reduced word in a free group. Letters are (generator, ±1).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(Vec<(usize, i8)>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(vec![])
    }

    pub fn gen(g: usize) -> Self {
        GroupWord(vec![(g, 1)])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut w = GroupWord(vec![]);
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "exponent must be ±1");
            w.push(g, e);
        }
        w
    }

    /// Expands a (generator, integer power) list.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Self::from_letters(powers.iter().flat_map(|&(g, p)| {
            let e = if p < 0 { -1 } else { 1 };
            std::iter::repeat_n((g, e), p.unsigned_abs() as usize)
        }))
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.0.last() == Some(&(g, -e)) {
            self.0.pop();
        } else {
            self.0.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        let mut out = self.clone();
        for &(g, e) in &other.0 {
            out.push(g, e);
        }
        out
    }

    pub fn pow(&self, sign: i8) -> Self {
        if sign < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    /// The single generator this word equals, with its sign, if any.
    pub fn as_generator(&self) -> Option<(usize, i8)> {
        match self.0.as_slice() {
            [l] => Some(*l),
            _ => None,
        }
    }

    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &(g, e) in &self.0 {
            v[g] += e as i64;
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.0).max()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { w: self, names }
    }
}

impl FromIterator<(usize, i8)> for GroupWord {
    fn from_iter<T: IntoIterator<Item = (usize, i8)>>(iter: T) -> Self {
        Self::from_letters(iter)
    }
}

struct Named<'a> {
    w: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return f.write_str("1");
        }
        for (k, &(g, e)) in self.w.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(g) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "g{g}")?,
            }
            if e < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|g| format!("x{}", g + 1))
            .collect();
        Named { w: self, names: &names }.fmt(f)
    }
}
