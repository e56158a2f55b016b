use std::fmt;

/// A finite word over some alphabet of operad elements.
///
/// Ordering is lexicographic on letters, which coincides with the order of
/// the space-separated canonical serialization as long as every letter's
/// serialization uses only characters greater than a space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<E>(pub(crate) Vec<E>);

impl<E> Word<E> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<E>) -> Self {
        Word(letters)
    }

    pub fn single(letter: E) -> Self {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[E] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.0.iter()
    }

    pub fn into_letters(self) -> Vec<E> {
        self.0
    }

    pub fn last(&self) -> Option<&E> {
        self.0.last()
    }
}

impl<E: Clone> Word<E> {
    /// Concatenation `self . other`.
    pub fn concat(&self, other: &Word<E>) -> Word<E> {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl<E> Default for Word<E> {
    fn default() -> Self {
        Word::empty()
    }
}

impl<E> From<Vec<E>> for Word<E> {
    fn from(letters: Vec<E>) -> Self {
        Word(letters)
    }
}

impl<E> FromIterator<E> for Word<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a, E> IntoIterator for &'a Word<E> {
    type Item = &'a E;
    type IntoIter = std::slice::Iter<'a, E>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Space-separated letters; the empty word prints as nothing.
impl<E: fmt::Display> fmt::Display for Word<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<E: fmt::Debug> fmt::Debug for Word<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Word")?;
        f.debug_list().entries(&self.0).finish()
    }
}
