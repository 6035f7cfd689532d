//! Symbol interning.
//!
//! A [`Var`] packs the symbol kind and its ordinal within that kind, so that
//! comparing two `Var`s directly yields the term-order variable ranking:
//! coordinates first, then parameters, then solver unknowns, each in creation
//! order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::AlgebraError;

const KIND_SHIFT: u32 = 28;
const INDEX_MASK: u32 = (1 << KIND_SHIFT) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Coordinate = 0,
    Parameter = 1,
    Unknown = 2,
}

impl SymbolKind {
    fn from_bits(bits: u32) -> Self {
        match bits {
            0 => SymbolKind::Coordinate,
            1 => SymbolKind::Parameter,
            _ => SymbolKind::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SymbolKind::Coordinate => "coordinate",
            SymbolKind::Parameter => "parameter",
            SymbolKind::Unknown => "unknown",
        }
    }
}

/// Interned symbol handle.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    fn pack(kind: SymbolKind, index: u32) -> Self {
        Var(((kind as u32) << KIND_SHIFT) | index)
    }

    pub fn kind(self) -> SymbolKind {
        SymbolKind::from_bits(self.0 >> KIND_SHIFT)
    }

    pub fn index(self) -> u32 {
        self.0 & INDEX_MASK
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind() {
            SymbolKind::Coordinate => 'x',
            SymbolKind::Parameter => 'p',
            SymbolKind::Unknown => 'u',
        };
        write!(f, "{}{}", tag, self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub index: u32,
}

#[derive(Default)]
struct Interner {
    by_name: HashMap<String, Var>,
    names: [Vec<String>; 3],
}

/// Symbol table shared by every value built from it.
///
/// Interning goes through a lock so a `Context` behind an `Arc` can be read
/// from several threads while solvers mint fresh unknowns.
#[derive(Default)]
pub struct Context {
    inner: RwLock<Interner>,
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.read().unwrap();
        f.debug_struct("Context")
            .field("coordinates", &inner.names[0])
            .field("parameters", &inner.names[1])
            .field("unknowns", &inner.names[2])
            .finish()
    }
}

impl Context {
    pub fn new() -> Arc<Self> {
        Arc::new(Self::default())
    }

    /// Returns the existing symbol for `name`, or creates it with `kind`.
    /// Re-interning under a different kind is an error.
    pub fn intern(&self, name: &str, kind: SymbolKind) -> Result<Var, AlgebraError> {
        if let Some(v) = self.lookup(name) {
            if v.kind() != kind {
                return Err(AlgebraError::KindConflict {
                    name: name.to_string(),
                    existing: v.kind().as_str(),
                    requested: kind.as_str(),
                });
            }
            return Ok(v);
        }
        let mut inner = self.inner.write().unwrap();
        // another writer may have raced us
        if let Some(&v) = inner.by_name.get(name) {
            return Ok(v);
        }
        let slot = &mut inner.names[kind as usize];
        let var = Var::pack(kind, slot.len() as u32);
        slot.push(name.to_string());
        inner.by_name.insert(name.to_string(), var);
        Ok(var)
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.inner.read().unwrap().by_name.get(name).copied()
    }

    /// Creates a symbol whose name starts with `stem` and is not yet taken.
    pub fn fresh(&self, stem: &str, kind: SymbolKind) -> Var {
        let mut inner = self.inner.write().unwrap();
        let mut k = 0usize;
        let name = loop {
            let candidate = format!("{stem}{k}");
            if !inner.by_name.contains_key(&candidate) {
                break candidate;
            }
            k += 1;
        };
        let slot = &mut inner.names[kind as usize];
        let var = Var::pack(kind, slot.len() as u32);
        slot.push(name.clone());
        inner.by_name.insert(name, var);
        var
    }

    pub fn name(&self, v: Var) -> String {
        let inner = self.inner.read().unwrap();
        inner.names[v.kind() as usize]
            .get(v.index() as usize)
            .cloned()
            .unwrap_or_else(|| format!("{v:?}"))
    }

    pub fn symbol(&self, v: Var) -> Symbol {
        Symbol {
            name: self.name(v),
            kind: v.kind(),
            index: v.index(),
        }
    }

    pub fn symbols_of_kind(&self, kind: SymbolKind) -> Vec<Var> {
        let inner = self.inner.read().unwrap();
        (0..inner.names[kind as usize].len() as u32)
            .map(|i| Var::pack(kind, i))
            .collect()
    }
}
