//! Lexical type hierarchy with precomputed greatest lower bounds.
//!
//! The hierarchy is declared as a list of `(name, parents)` pairs. Loading
//! checks that the graph is acyclic and bounded-complete, then fills a total
//! meet table so that [`TypeLattice::meet_id`] is a single lookup.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// The particle hierarchy shipped with the crate.
pub const BUNDLED_HIERARCHY: &str = include_str!("../data/hierarchy.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("hierarchy has no type declarations")]
    Empty,
    #[error("line {line}: malformed declaration `{text}`")]
    Malformed { line: usize, text: String },
    #[error("type `{0}` declared twice")]
    Duplicate(String),
    #[error("type `{ty}` names unknown parent `{parent}`")]
    UnknownParent { ty: String, parent: String },
    #[error("cycle through types {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("`{a}` and `{b}` have several maximal common subtypes: {}", .candidates.join(", "))]
    NotBoundedComplete {
        a: String,
        b: String,
        candidates: Vec<String>,
    },
    #[error("unknown type `{0}`")]
    UnknownType(String),
}

/// Index of a declared type inside its lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeId(u16);

impl TypeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Result of a meet: a declared type, or bottom when unification fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Glb {
    Type(TypeId),
    Bottom,
}

impl Glb {
    pub fn is_bottom(self) -> bool {
        matches!(self, Glb::Bottom)
    }

    pub fn ty(self) -> Option<TypeId> {
        match self {
            Glb::Type(t) => Some(t),
            Glb::Bottom => None,
        }
    }
}

/// One line of a hierarchy declaration file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub name: String,
    pub parents: Vec<String>,
}

impl TypeDecl {
    pub fn new(name: impl Into<String>, parents: &[&str]) -> Self {
        TypeDecl {
            name: name.into(),
            parents: parents.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// Parse `name: parent1 parent2 ...` lines. `#` starts a comment line.
pub fn parse_declarations(text: &str) -> Result<Vec<TypeDecl>, LatticeError> {
    let mut decls = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || LatticeError::Malformed {
            line: i + 1,
            text: raw.to_string(),
        };
        let (name, rest) = line.split_once(':').ok_or_else(malformed)?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(malformed());
        }
        decls.push(TypeDecl {
            name: name.to_string(),
            parents: rest.split_whitespace().map(str::to_string).collect(),
        });
    }
    Ok(decls)
}

/// An immutable, bounded-complete type hierarchy.
#[derive(Debug, Clone)]
pub struct TypeLattice {
    names: Vec<String>,
    index: HashMap<String, TypeId>,
    parents: Vec<Vec<TypeId>>,
    // below[g][s]: s is reachable from g via parent links (reflexive)
    below: Vec<Vec<bool>>,
    meets: Vec<Vec<Glb>>,
}

impl TypeLattice {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_HIERARCHY).expect("bundled hierarchy is well formed")
    }

    pub fn parse(text: &str) -> Result<Self, LatticeError> {
        Self::load(&parse_declarations(text)?)
    }

    /// Build the lattice and its meet table from declarations.
    pub fn load(decls: &[TypeDecl]) -> Result<Self, LatticeError> {
        if decls.is_empty() {
            return Err(LatticeError::Empty);
        }
        if decls.len() > u16::MAX as usize {
            return Err(LatticeError::Malformed {
                line: decls.len(),
                text: "too many types".into(),
            });
        }
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(decls.len());
        for (i, d) in decls.iter().enumerate() {
            if index.insert(d.name.clone(), TypeId(i as u16)).is_some() {
                return Err(LatticeError::Duplicate(d.name.clone()));
            }
            names.push(d.name.clone());
        }
        let mut parents = Vec::with_capacity(decls.len());
        for d in decls {
            let mut ps = Vec::with_capacity(d.parents.len());
            for p in &d.parents {
                let id = index.get(p).ok_or_else(|| LatticeError::UnknownParent {
                    ty: d.name.clone(),
                    parent: p.clone(),
                })?;
                ps.push(*id);
            }
            parents.push(ps);
        }

        let order = topological_order(&names, &parents)?;
        let n = names.len();
        // Walk parents-first so every ancestor row is final before its children.
        let mut above = vec![vec![false; n]; n];
        for &t in &order {
            above[t][t] = true;
            for p in parents[t].clone() {
                let row = above[p.index()].clone();
                for (slot, anc) in above[t].iter_mut().zip(row) {
                    *slot |= anc;
                }
            }
        }
        let mut below = vec![vec![false; n]; n];
        for s in 0..n {
            for g in 0..n {
                if above[s][g] {
                    below[g][s] = true;
                }
            }
        }

        let mut meets = vec![vec![Glb::Bottom; n]; n];
        for a in 0..n {
            for b in a..n {
                let common: Vec<usize> = (0..n).filter(|&c| below[a][c] && below[b][c]).collect();
                let maximal: Vec<usize> = common
                    .iter()
                    .copied()
                    .filter(|&c| !common.iter().any(|&d| d != c && below[d][c]))
                    .collect();
                let glb = match maximal.as_slice() {
                    [] => Glb::Bottom,
                    [m] => Glb::Type(TypeId(*m as u16)),
                    _ => {
                        return Err(LatticeError::NotBoundedComplete {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            candidates: maximal.iter().map(|&m| names[m].clone()).collect(),
                        })
                    }
                };
                meets[a][b] = glb;
                meets[b][a] = glb;
            }
        }

        Ok(TypeLattice {
            names,
            index,
            parents,
            below,
            meets,
        })
    }

    /// Number of declared types (bottom is not counted).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = TypeId> + '_ {
        (0..self.names.len()).map(|i| TypeId(i as u16))
    }

    pub fn id(&self, name: &str) -> Result<TypeId, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownType(name.to_string()))
    }

    pub fn name(&self, id: TypeId) -> &str {
        &self.names[id.index()]
    }

    pub fn parents(&self, id: TypeId) -> &[TypeId] {
        &self.parents[id.index()]
    }

    /// Types without parents.
    pub fn tops(&self) -> Vec<TypeId> {
        self.ids().filter(|&t| self.parents(t).is_empty()).collect()
    }

    pub fn subsumes_id(&self, general: TypeId, specific: TypeId) -> bool {
        self.below[general.index()][specific.index()]
    }

    pub fn subsumes(&self, general: &str, specific: &str) -> Result<bool, LatticeError> {
        Ok(self.subsumes_id(self.id(general)?, self.id(specific)?))
    }

    pub fn meet_id(&self, a: TypeId, b: TypeId) -> Glb {
        self.meets[a.index()][b.index()]
    }

    pub fn meet(&self, a: &str, b: &str) -> Result<Glb, LatticeError> {
        Ok(self.meet_id(self.id(a)?, self.id(b)?))
    }

    /// Name of a meet result; bottom renders as `⊥`.
    pub fn glb_name(&self, glb: Glb) -> &str {
        match glb {
            Glb::Type(t) => self.name(t),
            Glb::Bottom => "⊥",
        }
    }
}

impl fmt::Display for TypeLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.ids() {
            write!(f, "{}:", self.name(t))?;
            for p in self.parents(t) {
                write!(f, " {}", self.name(*p))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn topological_order(names: &[String], parents: &[Vec<TypeId>]) -> Result<Vec<usize>, LatticeError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    fn visit(
        t: usize,
        names: &[String],
        parents: &[Vec<TypeId>],
        marks: &mut [Mark],
        stack: &mut Vec<usize>,
        out: &mut Vec<usize>,
    ) -> Result<(), LatticeError> {
        match marks[t] {
            Mark::Done => return Ok(()),
            Mark::Open => {
                let start = stack.iter().position(|&s| s == t).unwrap_or(0);
                let mut cycle: Vec<String> = stack[start..].iter().map(|&s| names[s].clone()).collect();
                cycle.push(names[t].clone());
                return Err(LatticeError::Cycle(cycle));
            }
            Mark::New => {}
        }
        marks[t] = Mark::Open;
        stack.push(t);
        for p in &parents[t] {
            visit(p.index(), names, parents, marks, stack, out)?;
        }
        stack.pop();
        marks[t] = Mark::Done;
        out.push(t);
        Ok(())
    }

    let mut marks = vec![Mark::New; names.len()];
    let mut out = Vec::with_capacity(names.len());
    let mut stack = Vec::new();
    for t in 0..names.len() {
        visit(t, names, parents, &mut marks, &mut stack, &mut out)?;
    }
    Ok(out)
}
