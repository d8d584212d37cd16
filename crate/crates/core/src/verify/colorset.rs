use std::hash::Hash;

/// A set of color ids used as part of the verifier's search state.
pub trait ColorSet: Clone + Eq + Hash {
    fn empty(q: usize) -> Self;
    fn contains(&self, color: usize) -> bool;
    fn insert(&mut self, color: usize);
}

/// Fixed-width set for palettes of at most 64 colors.
impl ColorSet for u64 {
    #[inline]
    fn empty(_q: usize) -> Self {
        0
    }

    #[inline]
    fn contains(&self, color: usize) -> bool {
        self >> color & 1 == 1
    }

    #[inline]
    fn insert(&mut self, color: usize) {
        *self |= 1 << color;
    }
}

/// Growable bit set for arbitrary palettes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WideColorSet(Box<[u64]>);

impl ColorSet for WideColorSet {
    fn empty(q: usize) -> Self {
        WideColorSet(vec![0; q.div_ceil(64).max(1)].into_boxed_slice())
    }

    #[inline]
    fn contains(&self, color: usize) -> bool {
        self.0
            .get(color / 64)
            .is_some_and(|w| w >> (color % 64) & 1 == 1)
    }

    fn insert(&mut self, color: usize) {
        let word = color / 64;
        if word >= self.0.len() {
            let mut grown = self.0.to_vec();
            grown.resize(word + 1, 0);
            self.0 = grown.into_boxed_slice();
        }
        self.0[word] |= 1 << (color % 64);
    }
}
