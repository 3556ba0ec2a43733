//! Stalactic tableaux and taiga trees (binary search trees with
//! multiplicities), with their insertion algorithms.

use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::tree::{self, Descend, JsonTree, NodeLabel, NodeRef, Tree};
use crate::words::{Letter, LetterWord};

/// One column of a stalactic tableau: `mult` stacked copies of `letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Column {
    pub letter: Letter,
    pub mult: u32,
}

/// A top-aligned array in which a column holds every copy of one letter.
///
/// Since a column is constant, only its letter and height are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct StalacticTableau {
    columns: Vec<Column>,
}

impl StalacticTableau {
    pub fn new() -> Self {
        Self::default()
    }

    /// Columns left to right.
    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// The top row, left to right.
    pub fn top_row(&self) -> Vec<Letter> {
        self.columns.iter().map(|c| c.letter).collect()
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(|c| c.mult as usize).sum()
    }

    /// Returns the tableau with `a` inserted.
    pub fn insert(&self, a: Letter) -> Self {
        let mut t = self.clone();
        t.insert_mut(a);
        t
    }

    /// A new letter opens a column on the left; a known letter lengthens its
    /// column.
    fn insert_mut(&mut self, a: Letter) {
        match self.columns.iter_mut().find(|c| c.letter == a) {
            Some(col) => col.mult += 1,
            None => self.columns.insert(0, Column { letter: a, mult: 1 }),
        }
    }

    /// Reads `w` right to left, inserting each letter into an initially empty
    /// tableau.
    pub fn from_word(w: &LetterWord) -> Self {
        let mut t = Self::new();
        for &a in w.symbols().iter().rev() {
            t.insert_mut(a);
        }
        t
    }

    /// Row-by-row grid with the tallest column setting the depth.
    ///
    /// ```text
    /// 3 1 2 6 5
    /// 3 1   6 5
    ///   1
    /// ```
    pub fn to_text(&self) -> String {
        if self.columns.is_empty() {
            return "(empty)\n".to_string();
        }
        let width = self
            .columns
            .iter()
            .map(|c| c.letter.to_string().len())
            .max()
            .unwrap_or(1);
        let depth = self.columns.iter().map(|c| c.mult).max().unwrap_or(0);
        let mut out = String::new();
        for row in 0..depth {
            let line: Vec<String> = self
                .columns
                .iter()
                .map(|c| {
                    if row < c.mult {
                        format!("{:>width$}", c.letter.value())
                    } else {
                        " ".repeat(width)
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" ").trim_end());
        }
        out
    }
}

/// A taiga node: a distinct label with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TaigaNode {
    pub label: Letter,
    pub mult: u32,
}

impl NodeLabel for TaigaNode {
    fn write_json_fields<M: SerializeMap>(&self, map: &mut M) -> Result<(), M::Error> {
        map.serialize_entry("label", &self.label)?;
        map.serialize_entry("mult", &self.mult)
    }

    fn dot_label(&self) -> String {
        format!("{}^{}", self.label, self.mult)
    }
}

/// Binary search tree with multiplicities: labels are distinct, smaller labels
/// to the left, larger to the right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityBst {
    tree: Tree<TaigaNode>,
}

impl MultiplicityBst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn root(&self) -> Option<NodeRef<'_, TaigaNode>> {
        self.tree.root()
    }

    pub fn node_count(&self) -> usize {
        self.tree.len()
    }

    /// Sum of all multiplicities.
    pub fn size(&self) -> usize {
        self.tree.values().map(|n| n.mult as usize).sum()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &TaigaNode> {
        self.tree.values()
    }

    pub fn in_order(&self) -> Vec<&TaigaNode> {
        self.tree.in_order()
    }

    pub fn insert(&self, a: Letter) -> Self {
        let mut t = self.clone();
        t.insert_mut(a);
        t
    }

    fn insert_mut(&mut self, a: Letter) {
        self.tree.insert_with(
            TaigaNode { label: a, mult: 1 },
            |new, node| match new.label.cmp(&node.label) {
                std::cmp::Ordering::Less => Descend::Left,
                std::cmp::Ordering::Greater => Descend::Right,
                std::cmp::Ordering::Equal => Descend::Here,
            },
            |node| node.mult += 1,
        );
    }

    /// Reads `w` right to left into an initially empty tree.
    pub fn from_word(w: &LetterWord) -> Self {
        let mut t = Self::new();
        for &a in w.symbols().iter().rev() {
            t.insert_mut(a);
        }
        t
    }

    pub fn to_dot(&self) -> String {
        tree::to_dot(&self.tree, "taiga")
    }

    pub fn to_text(&self) -> String {
        tree::to_text(&self.tree)
    }
}

impl Serialize for MultiplicityBst {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        JsonTree(self.tree.root()).serialize(serializer)
    }
}

/// `P_stal(w)`.
pub fn p_stal(w: &LetterWord) -> StalacticTableau {
    StalacticTableau::from_word(w)
}

/// `P_taig(w)`.
pub fn p_taig(w: &LetterWord) -> MultiplicityBst {
    MultiplicityBst::from_word(w)
}
