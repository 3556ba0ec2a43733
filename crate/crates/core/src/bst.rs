//! Right-strict and left-strict binary search trees and the Baxter pair.
//!
//! Duplicate labels are kept as separate nodes. In a right-strict tree a copy
//! of a label already present descends to the left; in a left-strict tree it
//! descends to the right.

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::tree::{self, Descend, JsonTree, NodeLabel, NodeRef, Tree};
use crate::words::{Letter, LetterWord};

impl NodeLabel for Letter {
    fn write_json_fields<M: SerializeMap>(&self, map: &mut M) -> Result<(), M::Error> {
        map.serialize_entry("label", self)
    }

    fn dot_label(&self) -> String {
        self.to_string()
    }
}

macro_rules! strict_bst {
    ($(#[$doc:meta])* $name:ident, $graph:literal, |$a:ident, $x:ident| $go_left:expr) => {
        $(#[$doc])*
        #[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name {
            tree: Tree<Letter>,
        }

        impl $name {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn root(&self) -> Option<NodeRef<'_, Letter>> {
                self.tree.root()
            }

            pub fn len(&self) -> usize {
                self.tree.len()
            }

            pub fn is_empty(&self) -> bool {
                self.tree.len() == 0
            }

            pub fn labels(&self) -> impl Iterator<Item = &Letter> {
                self.tree.values()
            }

            pub fn in_order(&self) -> Vec<Letter> {
                self.tree.in_order().into_iter().copied().collect()
            }

            pub fn insert(&self, a: Letter) -> Self {
                let mut t = self.clone();
                t.insert_mut(a);
                t
            }

            fn insert_mut(&mut self, a: Letter) {
                self.tree.insert_with(
                    a,
                    |&$a, &$x| if $go_left { Descend::Left } else { Descend::Right },
                    |_| unreachable!("strict search trees never merge nodes"),
                );
            }

            pub fn to_dot(&self) -> String {
                tree::to_dot(&self.tree, $graph)
            }

            pub fn to_text(&self) -> String {
                tree::to_text(&self.tree)
            }

            /// Whether the ordering condition holds at every node.
            pub fn is_valid(&self) -> bool {
                let Some(root) = self.root() else { return true };
                let mut stack = vec![root];
                while let Some(n) = stack.pop() {
                    let $x = *n.value();
                    if let Some(l) = n.left() {
                        if !l.subtree_values().into_iter().all(|&$a| $go_left) {
                            return false;
                        }
                        stack.push(l);
                    }
                    if let Some(r) = n.right() {
                        if r.subtree_values().into_iter().any(|&$a| $go_left) {
                            return false;
                        }
                        stack.push(r);
                    }
                }
                true
            }

            pub(crate) fn tree(&self) -> &Tree<Letter> {
                &self.tree
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                JsonTree(self.tree.root()).serialize(serializer)
            }
        }
    };
}

strict_bst!(
    /// Every label in the left subtree is `<=` the node, every label in the
    /// right subtree is `>`.
    RightStrictBst,
    "sylv",
    |a, x| a <= x
);

strict_bst!(
    /// Every label in the left subtree is `<` the node, every label in the
    /// right subtree is `>=`.
    LeftStrictBst,
    "sylvsharp",
    |a, x| a < x
);

impl RightStrictBst {
    /// Reads `w` right to left.
    pub fn from_word(w: &LetterWord) -> Self {
        let mut t = Self::new();
        for &a in w.symbols().iter().rev() {
            t.insert_mut(a);
        }
        t
    }
}

impl LeftStrictBst {
    /// Reads `w` left to right.
    pub fn from_word(w: &LetterWord) -> Self {
        let mut t = Self::new();
        for &a in w.symbols() {
            t.insert_mut(a);
        }
        t
    }
}

/// `(P_sylv♯(w), P_sylv(w))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BaxterObject {
    pub sharp: LeftStrictBst,
    pub plain: RightStrictBst,
}

impl BaxterObject {
    pub fn from_word(w: &LetterWord) -> Self {
        BaxterObject {
            sharp: LeftStrictBst::from_word(w),
            plain: RightStrictBst::from_word(w),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph baxt {\n  node [shape=circle];\n");
        out.push_str("  subgraph cluster_sharp {\n    label=\"sylv#\";\n");
        tree::write_dot_body(&mut out, self.sharp.tree(), "s", "    ");
        out.push_str("  }\n  subgraph cluster_plain {\n    label=\"sylv\";\n");
        tree::write_dot_body(&mut out, self.plain.tree(), "p", "    ");
        out.push_str("  }\n}\n");
        out
    }

    pub fn to_text(&self) -> String {
        format!("sylv#:\n{}sylv:\n{}", self.sharp.to_text(), self.plain.to_text())
    }
}

impl Serialize for BaxterObject {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BaxterObject", 2)?;
        s.serialize_field("sharp", &self.sharp)?;
        s.serialize_field("plain", &self.plain)?;
        s.end()
    }
}

/// `P_sylv(w)`.
pub fn p_sylv(w: &LetterWord) -> RightStrictBst {
    RightStrictBst::from_word(w)
}

/// `P_sylv♯(w)`.
pub fn p_sylv_sharp(w: &LetterWord) -> LeftStrictBst {
    LeftStrictBst::from_word(w)
}

/// `P_baxt(w)`.
pub fn p_baxt(w: &LetterWord) -> BaxterObject {
    BaxterObject::from_word(w)
}
