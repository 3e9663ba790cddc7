use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::MultiPoly;

/// Handle to an interned polynomial atom. Ids are assigned in first-seen order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl fmt::Debug for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.0)
    }
}

#[derive(Default)]
struct Table {
    polys: Vec<Arc<MultiPoly>>,
    index: HashMap<MultiPoly, AtomId>,
}

// Append-only; readers never observe a partially inserted atom.
static TABLE: Lazy<RwLock<Table>> = Lazy::new(Default::default);

/// Returns the id of `p`, inserting it on first sight.
pub fn intern(p: MultiPoly) -> AtomId {
    if let Some(&id) = TABLE.read().index.get(&p) {
        return id;
    }
    let mut t = TABLE.write();
    if let Some(&id) = t.index.get(&p) {
        return id;
    }
    let id = AtomId(t.polys.len() as u32);
    t.polys.push(Arc::new(p.clone()));
    t.index.insert(p, id);
    id
}

/// The polynomial behind an atom id.
pub fn atom(id: AtomId) -> Arc<MultiPoly> {
    TABLE.read().polys[id.0 as usize].clone()
}
