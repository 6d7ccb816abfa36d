//! Binary coupling trees.
//!
//! A coupling tree is a finite binary tree whose leaves carry the labels
//! `1..=L` in some order. Internal nodes have exactly two ordered children,
//! so every tree with `L` leaves has `2L - 1` nodes. Nodes are addressed by
//! their leaf-label set ([`NodeRef`]), which is unique within a tree.
//!
//! Trees are immutable values: every operation returns a new tree. The
//! module also implements the two rewrite moves on coupling trees (exchange
//! of children and the flop re-association) together with a constructive
//! rewrite search connecting any two trees over the same label set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("duplicate leaf label {0}")]
    DuplicateLabel(u32),

    #[error("leaf labels are not a permutation of 1..={expected}: missing {missing}")]
    LabelGap { expected: u32, missing: u32 },

    #[error("leaf {0} not present in tree")]
    UnknownLeaf(u32),

    #[error("node {0} not present in tree")]
    UnknownNode(NodeRef),

    #[error("move {0} is not applicable there")]
    InvalidMove(RewriteMove),

    #[error("trees do not share the same leaf-label set")]
    LeafSetMismatch,
}

/// One node of a tree, addressed by its leaf-label set.
///
/// Distinct nodes of one tree always have distinct leaf sets, so the set
/// identifies the node; a ref is only meaningful paired with the tree it
/// was taken from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef(BTreeSet<u32>);

impl NodeRef {
    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Self {
        NodeRef(labels.into_iter().collect())
    }

    pub fn leaf(label: u32) -> Self {
        NodeRef::from_labels([label])
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_leaf(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, label: u32) -> bool {
        self.0.contains(&label)
    }

    pub fn is_subset(&self, other: &NodeRef) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &NodeRef) -> bool {
        self.0.is_disjoint(&other.0)
    }

    fn set(&self) -> &BTreeSet<u32> {
        &self.0
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for NodeRef {
    type Err = TreeError;

    /// Parses the `{3,4,5,6}` leaf-set notation.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let err = |msg: &str| TreeError::Syntax {
            pos: 0,
            msg: msg.to_string(),
        };
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| err("node set must look like {1,2}"))?;
        let mut labels = BTreeSet::new();
        for part in body.split(',') {
            let label: u32 = part
                .trim()
                .parse()
                .map_err(|_| err("node set entries must be decimal labels"))?;
            if label == 0 {
                return Err(err("labels start at 1"));
            }
            if !labels.insert(label) {
                return Err(TreeError::DuplicateLabel(label));
            }
        }
        Ok(NodeRef(labels))
    }
}

/// How the leaf sets of two nodes of one tree relate.
///
/// Exactly one variant holds for any pair of valid refs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeRelation {
    Equal,
    /// First node's leaf set is strictly inside the second's.
    NestedIn,
    /// First node's leaf set strictly contains the second's.
    Contains,
    Disjoint,
}

/// Comb classification of a tree shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// Every internal node has a leaf as right child (couplings nest left).
    LeftComb,
    /// Mirror shape: every internal node has a leaf as left child.
    RightComb,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Swap the two children of the target node.
    Exchange,
    /// Re-associate `(a (b c)) -> ((a b) c)`; needs an internal right child.
    FlopLeft,
    /// Re-associate `((a b) c) -> (a (b c))`; needs an internal left child.
    FlopRight,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::Exchange => "exchange",
            MoveKind::FlopLeft => "flop-left",
            MoveKind::FlopRight => "flop-right",
        };
        f.write_str(s)
    }
}

impl FromStr for MoveKind {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        match s {
            "exchange" => Ok(MoveKind::Exchange),
            "flop-left" => Ok(MoveKind::FlopLeft),
            "flop-right" => Ok(MoveKind::FlopRight),
            other => Err(TreeError::Syntax {
                pos: 0,
                msg: format!("unknown move kind `{other}`"),
            }),
        }
    }
}

/// A rewrite move anchored at one node of a tree.
///
/// The anchor survives the move: neither exchange nor flop changes the leaf
/// set of the node it is applied to, so the same ref stays valid in the
/// rewritten tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub node: NodeRef,
}

impl RewriteMove {
    pub fn exchange(node: NodeRef) -> Self {
        RewriteMove {
            kind: MoveKind::Exchange,
            node,
        }
    }

    pub fn flop_left(node: NodeRef) -> Self {
        RewriteMove {
            kind: MoveKind::FlopLeft,
            node,
        }
    }

    pub fn flop_right(node: NodeRef) -> Self {
        RewriteMove {
            kind: MoveKind::FlopRight,
            node,
        }
    }

    /// The move undoing this one at the same node.
    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            MoveKind::Exchange => MoveKind::Exchange,
            MoveKind::FlopLeft => MoveKind::FlopRight,
            MoveKind::FlopRight => MoveKind::FlopLeft,
        };
        RewriteMove {
            kind,
            node: self.node.clone(),
        }
    }
}

impl fmt::Display for RewriteMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.node)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Leaf(u32),
    Pair(Box<Node>, Box<Node>),
}

impl Node {
    fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Pair(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Node::Leaf(l) => out.push(*l),
            Node::Pair(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub(crate) fn leaf_set(&self) -> BTreeSet<u32> {
        let mut v = Vec::new();
        self.collect_leaves(&mut v);
        v.into_iter().collect()
    }

    fn map_labels(&self, f: &impl Fn(u32) -> u32) -> Node {
        match self {
            Node::Leaf(l) => Node::Leaf(f(*l)),
            Node::Pair(a, b) => Node::Pair(Box::new(a.map_labels(f)), Box::new(b.map_labels(f))),
        }
    }
}

/// An immutable binary tree over the leaf labels `1..=L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CouplingTree {
    root: Node,
}

impl CouplingTree {
    /// The single-leaf tree (label 1).
    pub fn singleton() -> Self {
        CouplingTree {
            root: Node::Leaf(1),
        }
    }

    /// Parses the monomial-expression encoding `tree := INT | "(" tree SP+ tree ")"`.
    ///
    /// Labels must form a permutation of `1..=L`.
    pub fn parse(expr: &str) -> Result<Self, TreeError> {
        let bytes = expr.as_bytes();
        let mut pos = 0;
        skip_spaces(bytes, &mut pos);
        let root = parse_node(bytes, &mut pos)?;
        skip_spaces(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(TreeError::Syntax {
                pos,
                msg: "trailing input after tree expression".to_string(),
            });
        }
        let tree = CouplingTree { root };
        tree.validate_labels()?;
        Ok(tree)
    }

    fn validate_labels(&self) -> Result<(), TreeError> {
        let leaves = self.leaves();
        let mut seen = BTreeSet::new();
        for &l in &leaves {
            if !seen.insert(l) {
                return Err(TreeError::DuplicateLabel(l));
            }
        }
        let expected = leaves.len() as u32;
        for want in 1..=expected {
            if !seen.contains(&want) {
                return Err(TreeError::LabelGap {
                    expected,
                    missing: want,
                });
            }
        }
        Ok(())
    }

    /// Canonical textual form: single spaces, no redundant outer parens.
    pub fn to_expression(&self) -> String {
        fn rec(node: &Node, out: &mut String) {
            match node {
                Node::Leaf(l) => out.push_str(&l.to_string()),
                Node::Pair(a, b) => {
                    out.push('(');
                    rec(a, out);
                    out.push(' ');
                    rec(b, out);
                    out.push(')');
                }
            }
        }
        let mut s = String::new();
        rec(&self.root, &mut s);
        s
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    /// Total node count; always `2L - 1`.
    pub fn node_count(&self) -> usize {
        2 * self.leaf_count() - 1
    }

    /// Leaf labels in left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut v = Vec::new();
        self.root.collect_leaves(&mut v);
        v
    }

    pub fn root_ref(&self) -> NodeRef {
        NodeRef(self.root.leaf_set())
    }

    /// All nodes in pre-order (root first, left before right).
    pub fn node_refs(&self) -> Vec<NodeRef> {
        fn rec(node: &Node, out: &mut Vec<NodeRef>) {
            out.push(NodeRef(node.leaf_set()));
            if let Node::Pair(a, b) = node {
                rec(a, out);
                rec(b, out);
            }
        }
        let mut v = Vec::new();
        rec(&self.root, &mut v);
        v
    }

    /// Internal (non-leaf) nodes in pre-order; there are `L - 1` of them.
    pub fn internal_node_refs(&self) -> Vec<NodeRef> {
        self.node_refs()
            .into_iter()
            .filter(|n| !n.is_leaf())
            .collect()
    }

    pub fn contains_node(&self, node: &NodeRef) -> bool {
        self.find(node.set()).is_some()
    }

    pub(crate) fn node(&self, node: &NodeRef) -> Result<&Node, TreeError> {
        self.find(node.set())
            .ok_or_else(|| TreeError::UnknownNode(node.clone()))
    }

    fn find(&self, target: &BTreeSet<u32>) -> Option<&Node> {
        fn rec<'a>(node: &'a Node, target: &BTreeSet<u32>) -> Option<&'a Node> {
            let set = node.leaf_set();
            if &set == target {
                return Some(node);
            }
            if !target.is_subset(&set) {
                return None;
            }
            match node {
                Node::Leaf(_) => None,
                Node::Pair(a, b) => rec(a, target).or_else(|| rec(b, target)),
            }
        }
        rec(&self.root, target)
    }

    /// The two children of an internal node, `None` for a leaf.
    pub fn children(&self, node: &NodeRef) -> Result<Option<(NodeRef, NodeRef)>, TreeError> {
        match self.node(node)? {
            Node::Leaf(_) => Ok(None),
            Node::Pair(a, b) => Ok(Some((NodeRef(a.leaf_set()), NodeRef(b.leaf_set())))),
        }
    }

    /// Set-theoretic trichotomy on two nodes of this tree.
    pub fn relation(&self, n: &NodeRef, m: &NodeRef) -> Result<NodeRelation, TreeError> {
        self.node(n)?;
        self.node(m)?;
        Ok(if n == m {
            NodeRelation::Equal
        } else if n.is_subset(m) {
            NodeRelation::NestedIn
        } else if m.is_subset(n) {
            NodeRelation::Contains
        } else {
            NodeRelation::Disjoint
        })
    }

    /// Joins two trees under a fresh root.
    ///
    /// The second tree's labels are shifted past this tree's so that the
    /// result is again labelled `1..=L1+L2`.
    pub fn join(&self, other: &CouplingTree) -> CouplingTree {
        let offset = self.leaf_count() as u32;
        let shifted = other.root.map_labels(&|l| l + offset);
        CouplingTree {
            root: Node::Pair(Box::new(self.root.clone()), Box::new(shifted)),
        }
    }

    /// Grafts `other` onto the named leaf of this tree.
    ///
    /// The grafted tree's labels slot in where the leaf was: labels of
    /// `other` shift by `leaf - 1` and this tree's labels above `leaf` make
    /// room, so the result is labelled `1..=L1+L2-1`.
    pub fn graft(&self, leaf: u32, other: &CouplingTree) -> Result<CouplingTree, TreeError> {
        if !self.leaves().contains(&leaf) {
            return Err(TreeError::UnknownLeaf(leaf));
        }
        let shift = other.leaf_count() as u32 - 1;
        let grafted = other.root.map_labels(&|l| l + leaf - 1);
        fn rec(node: &Node, leaf: u32, shift: u32, replacement: &Node) -> Node {
            match node {
                Node::Leaf(l) if *l == leaf => replacement.clone(),
                Node::Leaf(l) if *l > leaf => Node::Leaf(l + shift),
                Node::Leaf(l) => Node::Leaf(*l),
                Node::Pair(a, b) => Node::Pair(
                    Box::new(rec(a, leaf, shift, replacement)),
                    Box::new(rec(b, leaf, shift, replacement)),
                ),
            }
        }
        Ok(CouplingTree {
            root: rec(&self.root, leaf, shift, &grafted),
        })
    }

    /// Comb classification. The single leaf and the two-leaf tree degenerate
    /// to both comb shapes; they report `LeftComb`.
    pub fn homogeneity(&self) -> Homogeneity {
        fn left_comb(node: &Node) -> bool {
            match node {
                Node::Leaf(_) => true,
                Node::Pair(a, b) => matches!(**b, Node::Leaf(_)) && left_comb(a),
            }
        }
        fn right_comb(node: &Node) -> bool {
            match node {
                Node::Leaf(_) => true,
                Node::Pair(a, b) => matches!(**a, Node::Leaf(_)) && right_comb(b),
            }
        }
        if left_comb(&self.root) {
            Homogeneity::LeftComb
        } else if right_comb(&self.root) {
            Homogeneity::RightComb
        } else {
            Homogeneity::No
        }
    }

    /// Applies one rewrite move; the leaf-label set is unchanged.
    pub fn apply_move(&self, mv: &RewriteMove) -> Result<CouplingTree, TreeError> {
        let invalid = || TreeError::InvalidMove(mv.clone());
        fn rec(
            node: &Node,
            target: &BTreeSet<u32>,
            mv: &RewriteMove,
        ) -> Result<Option<Node>, TreeError> {
            let set = node.leaf_set();
            if &set == target {
                let rewritten = rewrite_here(node, mv)?;
                return Ok(Some(rewritten));
            }
            if !target.is_subset(&set) {
                return Ok(None);
            }
            if let Node::Pair(a, b) = node {
                if let Some(new_a) = rec(a, target, mv)? {
                    return Ok(Some(Node::Pair(Box::new(new_a), b.clone())));
                }
                if let Some(new_b) = rec(b, target, mv)? {
                    return Ok(Some(Node::Pair(a.clone(), Box::new(new_b))));
                }
            }
            Ok(None)
        }
        fn rewrite_here(node: &Node, mv: &RewriteMove) -> Result<Node, TreeError> {
            let invalid = || TreeError::InvalidMove(mv.clone());
            let Node::Pair(a, b) = node else {
                return Err(invalid());
            };
            match mv.kind {
                MoveKind::Exchange => Ok(Node::Pair(b.clone(), a.clone())),
                MoveKind::FlopRight => match &**a {
                    Node::Pair(x, y) => Ok(Node::Pair(
                        x.clone(),
                        Box::new(Node::Pair(y.clone(), b.clone())),
                    )),
                    Node::Leaf(_) => Err(invalid()),
                },
                MoveKind::FlopLeft => match &**b {
                    Node::Pair(x, y) => Ok(Node::Pair(
                        Box::new(Node::Pair(a.clone(), x.clone())),
                        y.clone(),
                    )),
                    Node::Leaf(_) => Err(invalid()),
                },
            }
        }
        match rec(&self.root, mv.node.set(), mv)? {
            Some(root) => Ok(CouplingTree { root }),
            None => Err(invalid()),
        }
    }

    /// Replays a move sequence in order.
    pub fn apply_moves(&self, moves: &[RewriteMove]) -> Result<CouplingTree, TreeError> {
        let mut t = self.clone();
        for mv in moves {
            t = t.apply_move(mv)?;
        }
        Ok(t)
    }

    /// A finite move sequence turning this tree into `target`.
    ///
    /// Both trees are rewritten to the sorted right comb and the second leg
    /// is replayed backwards; adjacent inverse pairs are then cancelled, so
    /// equal trees get the empty sequence. No minimality is claimed.
    pub fn rewrite_sequence_to(
        &self,
        target: &CouplingTree,
    ) -> Result<Vec<RewriteMove>, TreeError> {
        if self.root.leaf_set() != target.root.leaf_set() {
            return Err(TreeError::LeafSetMismatch);
        }
        let to_canonical_self = canonicalize_moves(self);
        let to_canonical_target = canonicalize_moves(target);
        let mut seq = to_canonical_self;
        seq.extend(to_canonical_target.into_iter().rev().map(|m| m.inverse()));
        Ok(reduce_inverse_pairs(seq))
    }

    /// All leaf sets occurring as nodes in both trees.
    ///
    /// Since a [`NodeRef`] is its leaf set, one ref per common set addresses
    /// the matching node in either tree. The root set and every leaf are
    /// always present.
    pub fn common_nodes(&self, other: &CouplingTree) -> Result<Vec<NodeRef>, TreeError> {
        if self.root.leaf_set() != other.root.leaf_set() {
            return Err(TreeError::LeafSetMismatch);
        }
        let ours: BTreeSet<NodeRef> = self.node_refs().into_iter().collect();
        let theirs: BTreeSet<NodeRef> = other.node_refs().into_iter().collect();
        Ok(ours.intersection(&theirs).cloned().collect())
    }
}

impl fmt::Display for CouplingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl FromStr for CouplingTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        CouplingTree::parse(s)
    }
}

fn skip_spaces(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos] == b' ' {
        *pos += 1;
    }
}

fn parse_node(bytes: &[u8], pos: &mut usize) -> Result<Node, TreeError> {
    let syntax = |pos: usize, msg: &str| TreeError::Syntax {
        pos,
        msg: msg.to_string(),
    };
    match bytes.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            skip_spaces(bytes, pos);
            let left = parse_node(bytes, pos)?;
            // Spaces between siblings are optional next to parentheses;
            // adjacent leaf labels need one or their digits would merge.
            skip_spaces(bytes, pos);
            let right = parse_node(bytes, pos)?;
            skip_spaces(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(syntax(*pos, "expected `)`"));
            }
            *pos += 1;
            Ok(Node::Pair(Box::new(left), Box::new(right)))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while matches!(bytes.get(*pos), Some(c) if c.is_ascii_digit()) {
                *pos += 1;
            }
            let text = std::str::from_utf8(&bytes[start..*pos]).unwrap();
            let label: u32 = text
                .parse()
                .map_err(|_| syntax(start, "leaf label out of range"))?;
            if label == 0 {
                return Err(syntax(start, "leaf labels start at 1"));
            }
            Ok(Node::Leaf(label))
        }
        Some(_) => Err(syntax(*pos, "expected `(` or a leaf label")),
        None => Err(syntax(*pos, "unexpected end of input")),
    }
}

/// Moves rewriting `tree` into the right comb with leaves sorted ascending.
fn canonicalize_moves(tree: &CouplingTree) -> Vec<RewriteMove> {
    let mut moves = Vec::new();
    let mut current = tree.clone();

    // Phase 1: flop every internal left child away until the shape is a
    // right comb.
    loop {
        let candidate =
            current
                .node_refs()
                .into_iter()
                .find(|n| match current.children(n).unwrap() {
                    Some((left, _)) => !left.is_leaf(),
                    None => false,
                });
        match candidate {
            Some(node) => {
                let mv = RewriteMove::flop_right(node);
                current = current.apply_move(&mv).unwrap();
                moves.push(mv);
            }
            None => break,
        }
    }

    // Phase 2: bubble-sort the comb's leaves with exchanges. Swapping two
    // adjacent leaves deeper in the comb takes a flop-left / exchange /
    // flop-right sandwich to keep the comb shape.
    let len = current.leaf_count();
    if len >= 2 {
        loop {
            let leaves = current.leaves();
            let Some(i) = (0..len - 1).find(|&i| leaves[i] > leaves[i + 1]) else {
                break;
            };
            let comb_node =
                |leaves: &[u32], i: usize| NodeRef::from_labels(leaves[i..].iter().copied());
            if i == len - 2 {
                let mv = RewriteMove::exchange(comb_node(&leaves, i));
                current = current.apply_move(&mv).unwrap();
                moves.push(mv);
            } else {
                let seq = [
                    RewriteMove::flop_left(comb_node(&leaves, i)),
                    RewriteMove::exchange(NodeRef::from_labels([leaves[i], leaves[i + 1]])),
                    RewriteMove::flop_right(comb_node(&leaves, i)),
                ];
                for mv in seq {
                    current = current.apply_move(&mv).unwrap();
                    moves.push(mv);
                }
            }
        }
    }
    moves
}

/// Free reduction: drops adjacent mutually-inverse moves.
fn reduce_inverse_pairs(moves: Vec<RewriteMove>) -> Vec<RewriteMove> {
    let mut out: Vec<RewriteMove> = Vec::with_capacity(moves.len());
    for mv in moves {
        if out.last().is_some_and(|prev| prev.inverse() == mv) {
            out.pop();
        } else {
            out.push(mv);
        }
    }
    out
}

/// All coupling trees over the labels `1..=leaf_count`.
///
/// Every binary shape combined with every leaf-label permutation; mostly
/// useful for exhaustive small-scale checks.
pub fn enumerate_coupling_trees(leaf_count: usize) -> Vec<CouplingTree> {
    fn shapes(labels: &[u32]) -> Vec<Node> {
        if labels.len() == 1 {
            return vec![Node::Leaf(labels[0])];
        }
        let mut out = Vec::new();
        for split in 1..labels.len() {
            for left in shapes(&labels[..split]) {
                for right in shapes(&labels[split..]) {
                    out.push(Node::Pair(Box::new(left.clone()), Box::new(right)));
                }
            }
        }
        out
    }
    let labels: Vec<u32> = (1..=leaf_count as u32).collect();
    let mut out = Vec::new();
    for perm in permutations(&labels) {
        for root in shapes(&perm) {
            out.push(CouplingTree { root });
        }
    }
    out
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A uniformly shaped random coupling tree over `1..=leaf_count`.
pub fn random_coupling_tree<R: rand::Rng>(rng: &mut R, leaf_count: usize) -> CouplingTree {
    fn build<R: rand::Rng>(rng: &mut R, labels: &[u32]) -> Node {
        if labels.len() == 1 {
            return Node::Leaf(labels[0]);
        }
        let split = rng.gen_range(1..labels.len());
        Node::Pair(
            Box::new(build(rng, &labels[..split])),
            Box::new(build(rng, &labels[split..])),
        )
    }
    let mut labels: Vec<u32> = (1..=leaf_count as u32).collect();
    use rand::seq::SliceRandom;
    labels.shuffle(rng);
    CouplingTree {
        root: build(rng, &labels),
    }
}
