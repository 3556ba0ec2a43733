//! Arena-backed binary trees shared by the taiga, sylvester and
//! sylvester-sharp insertion structures.
//!
//! Trees built by repeated leaf insertion always keep their first node as the
//! root, so the root lives at index 0. Equality and hashing are structural:
//! two trees are equal when they have the same shape and the same payload at
//! every position, whatever order the arena happens to store nodes in.

use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeMap, Serializer};

#[derive(Clone, Debug)]
struct Node<T> {
    value: T,
    left: Option<u32>,
    right: Option<u32>,
}

/// Where an inserted value goes relative to a node.
pub(crate) enum Descend {
    Left,
    Right,
    /// Merge into this node instead of creating a new one.
    Here,
}

#[derive(Clone, Debug)]
pub(crate) struct Tree<T> {
    nodes: Vec<Node<T>>,
}

impl<T> Default for Tree<T> {
    fn default() -> Self {
        Tree { nodes: Vec::new() }
    }
}

impl<T> Tree<T> {
    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn root(&self) -> Option<NodeRef<'_, T>> {
        (!self.nodes.is_empty()).then_some(NodeRef { tree: self, index: 0 })
    }

    /// Walks from the root choosing a direction at each node until an empty
    /// slot is reached (or `merge` is asked to absorb the value).
    pub(crate) fn insert_with(
        &mut self,
        value: T,
        mut route: impl FnMut(&T, &T) -> Descend,
        merge: impl FnOnce(&mut T),
    ) {
        if self.nodes.is_empty() {
            self.nodes.push(Node { value, left: None, right: None });
            return;
        }
        let fresh = self.nodes.len() as u32;
        let mut at = 0usize;
        loop {
            let node = &mut self.nodes[at];
            let slot = match route(&value, &node.value) {
                Descend::Here => {
                    merge(&mut node.value);
                    return;
                }
                Descend::Left => &mut node.left,
                Descend::Right => &mut node.right,
            };
            match *slot {
                Some(next) => at = next as usize,
                None => {
                    *slot = Some(fresh);
                    self.nodes.push(Node { value, left: None, right: None });
                    return;
                }
            }
        }
    }

    /// Payloads in symmetric (in-order) order.
    pub(crate) fn in_order(&self) -> Vec<&T> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = Vec::new();
        let mut cur = self.root().map(|r| r.index);
        while cur.is_some() || !stack.is_empty() {
            while let Some(i) = cur {
                stack.push(i);
                cur = self.nodes[i].left.map(|c| c as usize);
            }
            let i = stack.pop().expect("stack is nonempty");
            out.push(&self.nodes[i].value);
            cur = self.nodes[i].right.map(|c| c as usize);
        }
        out
    }

    pub(crate) fn values(&self) -> impl Iterator<Item = &T> {
        self.nodes.iter().map(|n| &n.value)
    }
}

impl<T: PartialEq> PartialEq for Tree<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.nodes.len() != other.nodes.len() {
            return false;
        }
        if self.nodes.is_empty() {
            return true;
        }
        let mut stack = vec![(0u32, 0u32)];
        while let Some((a, b)) = stack.pop() {
            let (na, nb) = (&self.nodes[a as usize], &other.nodes[b as usize]);
            if na.value != nb.value {
                return false;
            }
            for (ca, cb) in [(na.left, nb.left), (na.right, nb.right)] {
                match (ca, cb) {
                    (None, None) => {}
                    (Some(ca), Some(cb)) => stack.push((ca, cb)),
                    _ => return false,
                }
            }
        }
        true
    }
}

impl<T: Eq> Eq for Tree<T> {}

impl<T: Hash> Hash for Tree<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Preorder with child-presence flags determines the tree uniquely.
        self.nodes.len().hash(state);
        let mut stack: Vec<u32> = if self.nodes.is_empty() { vec![] } else { vec![0] };
        while let Some(i) = stack.pop() {
            let n = &self.nodes[i as usize];
            n.value.hash(state);
            (n.left.is_some(), n.right.is_some()).hash(state);
            stack.extend(n.right);
            stack.extend(n.left);
        }
    }
}

/// Borrowed view of one node.
pub struct NodeRef<'a, T> {
    tree: &'a Tree<T>,
    index: usize,
}

impl<T> Clone for NodeRef<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for NodeRef<'_, T> {}

impl<'a, T> NodeRef<'a, T> {
    pub fn value(&self) -> &'a T {
        &self.tree.nodes[self.index].value
    }

    pub fn left(&self) -> Option<NodeRef<'a, T>> {
        self.tree.nodes[self.index]
            .left
            .map(|i| NodeRef { tree: self.tree, index: i as usize })
    }

    pub fn right(&self) -> Option<NodeRef<'a, T>> {
        self.tree.nodes[self.index]
            .right
            .map(|i| NodeRef { tree: self.tree, index: i as usize })
    }

    /// All payloads in this subtree.
    pub fn subtree_values(&self) -> Vec<&'a T> {
        let mut out = Vec::new();
        let mut stack = vec![*self];
        while let Some(n) = stack.pop() {
            out.push(n.value());
            stack.extend(n.left());
            stack.extend(n.right());
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for NodeRef<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Node")
            .field("value", self.value())
            .field("left", &self.left())
            .field("right", &self.right())
            .finish()
    }
}

/// Payloads that know how to describe themselves in the JSON, DOT and text
/// renderings.
pub(crate) trait NodeLabel {
    fn write_json_fields<M: SerializeMap>(&self, map: &mut M) -> Result<(), M::Error>;
    fn dot_label(&self) -> String;
}

/// Nested-object JSON, `null` for an empty subtree.
pub(crate) struct JsonTree<'a, T>(pub(crate) Option<NodeRef<'a, T>>);

impl<T: NodeLabel> Serialize for JsonTree<'_, T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            None => serializer.serialize_none(),
            Some(node) => {
                let mut map = serializer.serialize_map(None)?;
                node.value().write_json_fields(&mut map)?;
                map.serialize_entry("left", &JsonTree(node.left()))?;
                map.serialize_entry("right", &JsonTree(node.right()))?;
                map.end()
            }
        }
    }
}

/// Appends DOT statements for the tree. Node ids are `{prefix}{n}`, numbered
/// as nodes are discovered; absent children are drawn as invisible points so left and right
/// stay distinguishable.
pub(crate) fn write_dot_body<T: NodeLabel>(out: &mut String, tree: &Tree<T>, prefix: &str, indent: &str) {
    let Some(root) = tree.root() else {
        return;
    };
    let mut counter = 0usize;
    let mut stack = vec![(root, counter)];
    while let Some((node, id)) = stack.pop() {
        let _ = writeln!(out, "{indent}{prefix}{id} [label=\"{}\"];", node.value().dot_label());
        let mut children = Vec::new();
        for (side, child) in [("L", node.left()), ("R", node.right())] {
            match child {
                Some(c) => {
                    counter += 1;
                    let _ = writeln!(out, "{indent}{prefix}{id} -> {prefix}{counter} [label=\"{side}\"];");
                    children.push((c, counter));
                }
                None => {
                    let _ = writeln!(out, "{indent}{prefix}{id}{side} [shape=point, style=invis];");
                    let _ = writeln!(out, "{indent}{prefix}{id} -> {prefix}{id}{side} [style=invis];");
                }
            }
        }
        stack.extend(children.into_iter().rev());
    }
}

pub(crate) fn to_dot<T: NodeLabel>(tree: &Tree<T>, name: &str) -> String {
    let mut out = format!("digraph {name} {{\n  node [shape=circle];\n");
    write_dot_body(&mut out, tree, "n", "  ");
    out.push_str("}\n");
    out
}

/// Sideways ASCII drawing, one node per line, left subtree first.
pub(crate) fn to_text<T: NodeLabel>(tree: &Tree<T>) -> String {
    let Some(root) = tree.root() else {
        return "(empty)\n".to_string();
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", root.value().dot_label());
    text_children(&mut out, root, "");
    out
}

fn text_children<T: NodeLabel>(out: &mut String, node: NodeRef<'_, T>, pad: &str) {
    let kids: Vec<_> = [("L", node.left()), ("R", node.right())]
        .into_iter()
        .filter_map(|(s, c)| c.map(|c| (s, c)))
        .collect();
    for (i, (side, child)) in kids.iter().enumerate() {
        let last = i + 1 == kids.len();
        let branch = if last { "└─" } else { "├─" };
        let _ = writeln!(out, "{pad}{branch}{side} {}", child.value().dot_label());
        let next_pad = format!("{pad}{}", if last { "   " } else { "│  " });
        text_children(out, *child, &next_pad);
    }
}
