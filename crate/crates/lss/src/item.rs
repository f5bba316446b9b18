//! Stream item identity.

use std::collections::HashMap;
use std::fmt;

/// Canonical 64-bit item identity. Synthetic traces use the Zipf rank
/// directly; textual traces go through an [`ItemInterner`] first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemId(pub u64);

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u64> for ItemId {
    fn from(v: u64) -> Self {
        ItemId(v)
    }
}

/// Maps string tokens to dense ids, first come first numbered.
///
/// The mapping is injective and stable for a given token sequence, so a
/// trace file and its companion prediction table resolve to the same ids as
/// long as they are interned through the same instance.
#[derive(Debug, Default, Clone)]
pub struct ItemInterner {
    ids: HashMap<String, ItemId>,
    tokens: Vec<String>,
}

impl ItemInterner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `token`, allocating the next id on first sight.
    pub fn intern(&mut self, token: &str) -> ItemId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = ItemId(self.tokens.len() as u64);
        self.ids.insert(token.to_owned(), id);
        self.tokens.push(token.to_owned());
        id
    }

    /// Looks up a token without allocating.
    pub fn get(&self, token: &str) -> Option<ItemId> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: ItemId) -> Option<&str> {
        self.tokens.get(id.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interner_is_injective_and_stable() {
        let mut interner = ItemInterner::new();
        let a = interner.intern("alpha");
        let b = interner.intern("beta");
        assert_ne!(a, b);
        assert_eq!(interner.intern("alpha"), a);
        assert_eq!(interner.get("beta"), Some(b));
        assert_eq!(interner.get("gamma"), None);
        assert_eq!(interner.token(a), Some("alpha"));
        assert_eq!(interner.len(), 2);
    }

    #[test]
    fn ids_are_dense_in_first_seen_order() {
        let mut interner = ItemInterner::new();
        for (i, tok) in ["x", "y", "z", "x", "y"].iter().enumerate() {
            let id = interner.intern(tok);
            assert!(id.0 <= i as u64);
        }
        assert_eq!(interner.intern("x"), ItemId(0));
        assert_eq!(interner.intern("z"), ItemId(2));
    }
}
