//! Finite-depth binary witness trees for `S_t = {(x, y) ∈ C_λ × C_λ : xy = t}`.
//!
//! Every node is a pair of basic intervals whose product image has `t` in its
//! open interior; every internal node has two children with distinct address
//! pairs. A tree of depth d therefore exhibits `2^d` disjoint-address families
//! of candidate solutions.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cantor::{interval_of, Address};
use crate::catalog::{st_window_lower, ST_PAIRS};
use crate::coverage::certify_st_continuum;
use crate::error::{Error, Result};
use crate::exactmath::rational::{fraction, int, is_lambda_in_range};
use crate::exactmath::to_fraction_string;
use crate::images::image_f;
use crate::interval::Interval;
use crate::scalar::pow;
use crate::Rational;

/// Default number of ranks scanned below a node before giving up. A target
/// within `d` of an image corner (relative to the image size) needs about
/// `log(1/d) / log(1/λ)` ranks before a second pair appears, so a few thousand
/// expansions routinely need more than twelve.
pub const DEFAULT_RANK_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessNode {
    /// I-side address, including the tree's zero prefix.
    pub address_i: Address,
    pub address_j: Address,
    /// Rank of the pair before scaling; `address_i` is longer by the prefix.
    pub rank: usize,
    pub image: Interval<Rational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<WitnessNode>,
}

impl WitnessNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn visit<'a>(&'a self, out: &mut Vec<&'a WitnessNode>) {
        if self.is_leaf() {
            out.push(self);
        }
        for c in &self.children {
            c.visit(out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTree {
    #[serde(with = "fraction")]
    pub lambda: Rational,
    #[serde(with = "fraction")]
    pub t: Rational,
    /// Number of leading zeros on every I-side address (`t = λ^n₀ · t′`).
    pub scale_prefix: usize,
    pub depth: usize,
    pub root: WitnessNode,
}

impl WitnessTree {
    pub fn leaves(&self) -> Vec<&WitnessNode> {
        let mut out = Vec::new();
        self.root.visit(&mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        fn count(n: &WitnessNode) -> usize {
            1 + n.children.iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }

    /// Per leaf, how many nodes on its branch are diagonal (same interval on
    /// both sides, ignoring the zero prefix).
    pub fn diagonal_counts(&self) -> Vec<usize> {
        fn walk(n: &WitnessNode, prefix: usize, acc: usize, out: &mut Vec<usize>) {
            let here = acc + usize::from(n.address_i.digits()[prefix..] == *n.address_j.digits());
            if n.is_leaf() {
                out.push(here);
            }
            for c in &n.children {
                walk(c, prefix, here, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, self.scale_prefix, 0, &mut out);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn leaves_csv(&self) -> String {
        let mut out = String::from("leaf,address_i,address_j,rank,image_lo,image_hi\n");
        for (idx, leaf) in self.leaves().into_iter().enumerate() {
            let _ = writeln!(
                out,
                "{idx},{},{},{},{},{}",
                leaf.address_i,
                leaf.address_j,
                leaf.rank,
                to_fraction_string(&leaf.image.lo),
                to_fraction_string(&leaf.image.hi)
            );
        }
        out
    }
}

/// λ = p/q and a target t = tn/td. A rank-n endpoint x is carried as the
/// integer x·qⁿ, so the search compares big integers and never reduces a
/// fraction.
struct Scaled {
    p: BigInt,
    q: BigInt,
    gap: BigInt,
    tn: BigInt,
    td: BigInt,
}

impl Scaled {
    fn new(lambda: &Rational, t: &Rational) -> Self {
        let (p, q) = (lambda.numer().clone(), lambda.denom().clone());
        Scaled {
            gap: &q - &p,
            p,
            q,
            tn: t.numer().clone(),
            td: t.denom().clone(),
        }
    }

    /// `t·q^{2n}·td`, the target on the scale of rank-n products times `td`.
    fn target_at(&self, n: usize) -> BigInt {
        &self.tn * self.q.pow(2 * n as u32)
    }

    fn left(&self, address: &Address) -> BigInt {
        let mut a = BigInt::zero();
        let mut pm = BigInt::one();
        for &d in address.digits() {
            a *= &self.q;
            if d == 1 {
                a += &self.gap * &pm;
            }
            pm *= &self.p;
        }
        a
    }
}

/// A pair during the search, unscaled: addresses, scaled left endpoints and
/// the scaled product image `[ab, (a+pⁿ)(b+pⁿ)]`.
#[derive(Debug, Clone)]
struct Pair {
    ai: Address,
    aj: Address,
    a: BigInt,
    b: BigInt,
    lo: BigInt,
    hi: BigInt,
}

impl Pair {
    fn new(ai: Address, aj: Address, a: BigInt, b: BigInt, len: &BigInt) -> Self {
        let lo = &a * &b;
        let hi = (&a + len) * (&b + len);
        Pair { ai, aj, a, b, lo, hi }
    }

    fn from_addresses(ai: Address, aj: Address, s: &Scaled) -> Self {
        let (a, b) = (s.left(&ai), s.left(&aj));
        let len = s.p.pow(ai.rank() as u32);
        Pair::new(ai, aj, a, b, &len)
    }

    fn rank(&self) -> usize {
        self.ai.rank()
    }

    /// `target` is [`Scaled::target_at`] for this pair's rank.
    fn closed_contains(&self, s: &Scaled, target: &BigInt) -> bool {
        &(&self.lo * &s.td) <= target && target <= &(&self.hi * &s.td)
    }

    fn open_contains(&self, s: &Scaled, target: &BigInt) -> bool {
        &(&self.lo * &s.td) < target && target < &(&self.hi * &s.td)
    }

    fn children(&self, s: &Scaled) -> [Pair; 4] {
        let pn = s.p.pow(self.rank() as u32);
        let shift = &s.gap * &pn;
        let len = pn * &s.p;
        let side = |addr: &Address, left: &BigInt, d: u8| {
            let x = left * &s.q;
            (addr.child(d), if d == 0 { x } else { x + &shift })
        };
        [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(di, dj)| {
            let (ai, a) = side(&self.ai, &self.a, di);
            let (aj, b) = side(&self.aj, &self.b, dj);
            Pair::new(ai, aj, a, b, &len)
        })
    }

    /// Puts the interval with the smaller left endpoint on the I side.
    fn normalized(self) -> Pair {
        if self.a > self.b {
            Pair {
                ai: self.aj,
                aj: self.ai,
                a: self.b,
                b: self.a,
                ..self
            }
        } else {
            self
        }
    }

    fn key(&self) -> (&Address, &Address) {
        (&self.ai, &self.aj)
    }

    fn into_node(self, s: &Scaled, children: Vec<WitnessNode>) -> WitnessNode {
        let denom = s.q.pow(2 * self.rank() as u32);
        WitnessNode {
            image: Interval::new_unchecked(Rational::new(self.lo, denom.clone()), Rational::new(self.hi, denom)),
            rank: self.ai.rank(),
            address_i: self.ai,
            address_j: self.aj,
            children,
        }
    }
}

/// Reduces `t` into the certified window by powers of λ and picks the first
/// catalog pair whose open image contains the reduced target. Returns the
/// seed node (unscaled addresses) and `n₀`.
pub fn select_seed(lambda: &Rational, t: &Rational) -> Result<(WitnessNode, usize)> {
    if !is_lambda_in_range(lambda) {
        return Err(Error::LambdaOutOfRange(to_fraction_string(lambda)));
    }
    if !(t > &int(0) && t < &int(1)) {
        return Err(Error::TargetOutOfRange(to_fraction_string(t)));
    }
    if !certify_st_continuum(lambda).is_certified() {
        return Err(Error::NotCertified(to_fraction_string(lambda)));
    }
    let window_lo = st_window_lower().eval(lambda);
    let one = int(1);
    let mut n0 = 0;
    let mut reduced = t.clone();
    while reduced <= window_lo {
        reduced /= lambda;
        n0 += 1;
    }
    // The window overlaps its λ-multiple, so t may sit in several scaled
    // copies; try them in order of n₀.
    while reduced < one {
        let s = Scaled::new(lambda, &reduced);
        for pair in ST_PAIRS.iter() {
            let p = Pair::from_addresses(pair.i.parse()?, pair.j.parse()?, &s);
            if p.open_contains(&s, &s.target_at(p.rank())) {
                return Ok((p.into_node(&s, Vec::new()), n0));
            }
        }
        reduced /= lambda;
        n0 += 1;
    }
    Err(Error::NoWindow(to_fraction_string(t)))
}

/// The first two distinct (swap-normalized) descendant pairs, in
/// lexicographic scan order at the shallowest rank that has two.
fn expand(node: &Pair, s: &Scaled, rank_limit: usize) -> Result<[Pair; 2]> {
    let mut level = vec![node.clone()];
    for extra in 1..=rank_limit {
        let target = s.target_at(node.rank() + extra);
        let mut next: Vec<Pair> = level
            .iter()
            .flat_map(|p| p.children(s))
            .filter(|p| p.closed_contains(s, &target))
            .collect();
        next.sort_by(|x, y| x.key().cmp(&y.key()));
        let mut picked: Vec<Pair> = Vec::with_capacity(2);
        for p in next.iter().filter(|p| p.open_contains(s, &target)) {
            let p = p.clone().normalized();
            if picked.iter().all(|q| q.key() != p.key()) {
                picked.push(p);
                if picked.len() == 2 {
                    let second = picked.pop().expect("two picked");
                    let first = picked.pop().expect("two picked");
                    return Ok([first, second]);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Err(Error::ExpansionStalled {
        rank_limit: node.rank() + rank_limit,
        address_i: node.ai.clone(),
        address_j: node.aj.clone(),
    })
}

fn grow(pair: Pair, s: &Scaled, depth: usize, rank_limit: usize) -> Result<WitnessNode> {
    let children = if depth == 0 {
        Vec::new()
    } else {
        let [left, right] = expand(&pair, s, rank_limit)?;
        let (l, r) = rayon::join(
            || grow(left, s, depth - 1, rank_limit),
            || grow(right, s, depth - 1, rank_limit),
        );
        vec![l?, r?]
    };
    Ok(pair.into_node(s, children))
}

/// Applies the zero prefix to the I side and rescales images by `λ^n₀`.
fn scale(node: &mut WitnessNode, n0: usize, factor: &Rational) {
    node.address_i = node.address_i.with_zero_prefix(n0);
    node.image = node.image.scale(factor);
    for c in &mut node.children {
        scale(c, n0, factor);
    }
}

pub fn build_witness_tree(lambda: &Rational, t: &Rational, depth: usize) -> Result<WitnessTree> {
    build_witness_tree_with_limit(lambda, t, depth, DEFAULT_RANK_LIMIT)
}

pub fn build_witness_tree_with_limit(
    lambda: &Rational,
    t: &Rational,
    depth: usize,
    rank_limit: usize,
) -> Result<WitnessTree> {
    if depth == 0 {
        return Err(Error::InvalidArgument("witness depth must be at least 1".into()));
    }
    let (seed, n0) = select_seed(lambda, t)?;
    let factor = pow(lambda, n0);
    let s = Scaled::new(lambda, &(t / &factor));
    let pair = Pair::from_addresses(seed.address_i, seed.address_j, &s);
    let mut root = grow(pair, &s, depth, rank_limit)?;
    scale(&mut root, n0, &factor);
    Ok(WitnessTree {
        lambda: lambda.clone(),
        t: t.clone(),
        scale_prefix: n0,
        depth,
        root,
    })
}

/// Re-derives every image from the addresses and checks the tree invariants:
/// `t` strictly inside every image, children nested in their parent (up to
/// the I/J swap), ranks strictly increasing, distinct siblings, a complete
/// tree with `2^depth` leaves, and pairwise distinct leaf pairs.
pub fn verify_tree(tree: &WitnessTree) -> bool {
    if !is_lambda_in_range(&tree.lambda) {
        return false;
    }
    let Some(expected_leaves) = 1usize.checked_shl(tree.depth as u32) else {
        return false;
    };
    let leaves = tree.leaves();
    if leaves.len() != expected_leaves {
        return false;
    }
    let mut seen = HashSet::new();
    if !leaves.iter().all(|l| seen.insert((&l.address_i, &l.address_j))) {
        return false;
    }
    check_node(tree, &tree.root, None, 0)
}

fn strip_prefix(addr: &Address, n0: usize) -> Option<&[u8]> {
    let d = addr.digits();
    (d.len() >= n0 && d[..n0].iter().all(|&x| x == 0)).then(|| &d[n0..])
}

fn check_node(tree: &WitnessTree, node: &WitnessNode, parent: Option<(&[u8], &[u8], usize)>, level: usize) -> bool {
    let n0 = tree.scale_prefix;
    let Some(i) = strip_prefix(&node.address_i, n0) else {
        return false;
    };
    let j = node.address_j.digits();
    if i.len() != node.rank || j.len() != node.rank {
        return false;
    }
    let (Ok(iv), Ok(jv)) = (
        interval_of(&node.address_i, &tree.lambda),
        interval_of(&node.address_j, &tree.lambda),
    ) else {
        return false;
    };
    let Ok(image) = image_f(&iv, &jv) else {
        return false;
    };
    if image != node.image || !image.contains_in_interior(&tree.t) {
        return false;
    }
    if let Some((pi, pj, prank)) = parent {
        let nested = (i.starts_with(pi) && j.starts_with(pj)) || (i.starts_with(pj) && j.starts_with(pi));
        if !nested || node.rank <= prank {
            return false;
        }
    }
    match node.children.as_slice() {
        [] => level == tree.depth,
        [a, b] => {
            level < tree.depth
                && (a.address_i != b.address_i || a.address_j != b.address_j)
                && check_node(tree, a, Some((i, j, node.rank)), level + 1)
                && check_node(tree, b, Some((i, j, node.rank)), level + 1)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::ratio;
    use num_traits::Signed;

    fn lam() -> Rational {
        ratio(9, 20)
    }

    #[test]
    fn seed_examples() {
        let (node, n0) = select_seed(&lam(), &ratio(1, 2)).unwrap();
        assert_eq!(n0, 0);
        assert!(node.image.contains_in_interior(&ratio(1, 2)));
        let (node, n0) = select_seed(&lam(), &ratio(1, 100)).unwrap();
        assert_eq!(n0, 5);
        let reduced = ratio(1, 100) / pow(&lam(), 5);
        assert!(node.image.contains_in_interior(&reduced));
    }

    #[test]
    fn seed_errors() {
        assert!(matches!(
            select_seed(&ratio(42, 100), &ratio(1, 2)),
            Err(Error::NotCertified(_))
        ));
        assert!(matches!(select_seed(&lam(), &int(1)), Err(Error::TargetOutOfRange(_))));
        assert!(matches!(select_seed(&lam(), &int(0)), Err(Error::TargetOutOfRange(_))));
    }

    #[test]
    fn boundary_of_first_pair_falls_through() {
        // t = (1−λ³)², the lower end of the first pair's image.
        let a = int(1) - pow(&lam(), 3);
        let t = &a * &a;
        let (node, _) = select_seed(&lam(), &t).unwrap();
        assert_ne!(node.address_i.to_string(), "111");
        assert!(node.image.contains_in_interior(&t));
    }

    #[test]
    fn depth_one_has_two_distinct_leaves() {
        let tree = build_witness_tree(&lam(), &ratio(1, 2), 1).unwrap();
        let leaves = tree.leaves();
        assert_eq!(leaves.len(), 2);
        assert_ne!(
            (&leaves[0].address_i, &leaves[0].address_j),
            (&leaves[1].address_i, &leaves[1].address_j)
        );
        assert!(verify_tree(&tree));
    }

    #[test]
    fn depth_three_trees_verify() {
        for t in [ratio(1, 2), ratio(1, 100), ratio(9, 10)] {
            let tree = build_witness_tree(&lam(), &t, 3).unwrap();
            assert_eq!(tree.leaves().len(), 8);
            assert!(verify_tree(&tree), "t = {t}");
            for leaf in tree.leaves() {
                assert!(leaf.address_i.digits()[..tree.scale_prefix].iter().all(|&d| d == 0));
            }
        }
    }

    #[test]
    fn leaf_midpoints_approach_the_target() {
        let t = ratio(1, 100);
        let tree = build_witness_tree(&lam(), &t, 4).unwrap();
        let reduced = &t / pow(&lam(), tree.scale_prefix);
        for leaf in tree.leaves() {
            let i = interval_of(
                &leaf.address_i.digits()[tree.scale_prefix..].to_vec().try_into_address(),
                &lam(),
            )
            .unwrap();
            let j = interval_of(&leaf.address_j, &lam()).unwrap();
            let err = (i.midpoint() * j.midpoint() - &reduced).abs();
            assert!(err <= int(3) * pow(&lam(), leaf.rank));
        }
    }

    trait IntoAddress {
        fn try_into_address(self) -> Address;
    }

    impl IntoAddress for Vec<u8> {
        fn try_into_address(self) -> Address {
            Address::from_digits(self).unwrap()
        }
    }

    #[test]
    fn tampering_is_detected() {
        let tree = build_witness_tree(&lam(), &ratio(1, 2), 3).unwrap();
        assert!(verify_tree(&tree));

        let mut flipped = tree.clone();
        let mut node = &mut flipped.root;
        while !node.children.is_empty() {
            node = &mut node.children[1];
        }
        let mut digits = node.address_j.digits().to_vec();
        let last = digits.len() - 1;
        digits[last] ^= 1;
        node.address_j = Address::from_digits(digits).unwrap();
        assert!(!verify_tree(&flipped));

        let mut moved = tree.clone();
        moved.t = moved.root.children[0].children[0].image.lo.clone();
        assert!(!verify_tree(&moved));

        let mut pruned = tree.clone();
        pruned.root.children[0].children[0].children.clear();
        assert!(!verify_tree(&pruned));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = build_witness_tree(&lam(), &ratio(9, 10), 4).unwrap();
        let b = build_witness_tree(&lam(), &ratio(9, 10), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn json_round_trip() {
        let tree = build_witness_tree(&lam(), &ratio(1, 100), 2).unwrap();
        let back: WitnessTree = serde_json::from_str(&tree.to_json()).unwrap();
        assert_eq!(back, tree);
        assert!(verify_tree(&back));
        assert_eq!(tree.leaves_csv().lines().count(), 5);
        assert_eq!(tree.diagonal_counts().len(), 4);
    }

    #[test]
    fn tiny_rank_limit_stalls() {
        let r = build_witness_tree_with_limit(&lam(), &ratio(1, 2), 3, 0);
        assert!(matches!(r, Err(Error::ExpansionStalled { .. })));
    }
}
