//! Finite groups given by Cayley tables, with the identity pinned at index 0.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_AUT_CAP: usize = 24;
pub const MAX_NAMED_ORDER: usize = 64;
/// Tables up to this order get a full associativity check.
const FULL_ASSOC_CHECK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `table[a * order + b]` is the index of `a·b`.
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table. If the identity sits at some index `e != 0`,
    /// indices `0` and `e` are swapped so that the identity becomes index 0.
    pub fn from_cayley_table(rows: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotSquare {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: order,
                });
            }
        }
        for (r, row) in rows.iter().enumerate() {
            let mut seen = vec![false; order];
            for &x in row {
                if x >= order || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotLatin(format!("row {r} is not a permutation")));
                }
            }
        }
        for c in 0..order {
            let mut seen = vec![false; order];
            for row in &rows {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(Error::NotLatin(format!("column {c} is not a permutation")));
                }
            }
        }
        let e = (0..order)
            .find(|&e| (0..order).all(|b| rows[e][b] == b && rows[b][e] == b))
            .ok_or(Error::NoIdentity)?;

        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[swap(a) * order + swap(b)] = swap(rows[a][b]);
            }
        }
        let group = FiniteGroup {
            order,
            table,
            labels: None,
        };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let step = if n <= FULL_ASSOC_CHECK {
            1
        } else {
            n.div_ceil(FULL_ASSOC_CHECK)
        };
        for a in (0..n).step_by(step) {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in (0..n).step_by(step) {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteGroup> {
        if labels.len() != self.order {
            return Err(Error::Format(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a >= self.order {
            return Err(Error::ElementOutOfRange {
                index: a,
                order: self.order,
            });
        }
        Ok(())
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0)
            .expect("Latin rows contain the identity")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan indices upward, keep any element not yet generated.
    /// The trivial group has no generators.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order];
        covered[0] = true;
        for a in 1..self.order {
            if !covered[a] {
                gens.push(a);
                for x in self.subgroup(&gens) {
                    covered[x] = true;
                }
            }
        }
        gens
    }

    /// `r[g]` sends `x` to `x·g`.
    pub fn regular_representation(&self) -> Vec<Perm> {
        (0..self.order).map(|g| self.right_regular(g)).collect()
    }

    pub(crate) fn right_regular(&self, g: usize) -> Perm {
        Perm::from_images((0..self.order).map(|x| self.mul(x, g)).collect())
            .expect("Latin columns are permutations")
    }

    /// Text form: the order, then one row per line, then an optional `#labels` line.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if let Some(labels) = &self.labels {
            let _ = writeln!(out, "#labels {}", labels.join(" "));
        }
        out
    }

    pub fn parse_table_text(text: &str) -> Result<FiniteGroup> {
        let mut labels = None;
        let mut lines = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if let Some(rest) = t.strip_prefix("#labels") {
                labels = Some(
                    rest.split_whitespace()
                        .map(str::to_owned)
                        .collect::<Vec<_>>(),
                );
            } else if !t.is_empty() {
                lines.push(t);
            }
        }
        let (head, body) = lines
            .split_first()
            .ok_or_else(|| Error::Format("empty Cayley table file".into()))?;
        let order: usize = head
            .parse()
            .map_err(|_| Error::Format(format!("bad order line `{head}`")))?;
        if body.len() != order {
            return Err(Error::Format(format!(
                "expected {order} table rows, found {}",
                body.len()
            )));
        }
        let rows = body
            .iter()
            .map(|l| {
                l.split_whitespace()
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| Error::Format(format!("bad table entry `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let group = FiniteGroup::from_cayley_table(rows)?;
        match labels {
            Some(l) => group.with_labels(l),
            None => Ok(group),
        }
    }
}

/// Builds a catalogued group.
///
/// * `cyclic:n` residues `0..n` under addition.
/// * `dihedral:n` the dihedral group of order `n` (even): rotations `r^i` at
///   index `i`, then reflections `s r^i` at index `n/2 + i`.
/// * `symmetric:n` permutations of `n` points in lexicographic one-line order,
///   multiplied left to right.
/// * `klein4` and `quaternion8` take no parameter.
pub fn named_group(name: &str, param: Option<usize>) -> Result<FiniteGroup> {
    let bad = |param: usize, reason: &str| Error::BadParameter {
        name: name.to_owned(),
        param,
        reason: reason.to_owned(),
    };
    let need = |param: Option<usize>| param.ok_or_else(|| bad(0, "parameter required"));
    match name {
        "cyclic" => {
            let n = need(param)?;
            if n == 0 || n > MAX_NAMED_ORDER {
                return Err(bad(n, "order must be in 1..=64"));
            }
            table_from_fn(
                n,
                |a, b| (a + b) % n,
                (0..n).map(|a| a.to_string()).collect(),
            )
        }
        "dihedral" => {
            let n = need(param)?;
            if n < 2 || n % 2 != 0 || n > MAX_NAMED_ORDER {
                return Err(bad(n, "order must be even and in 2..=64"));
            }
            let r = n / 2;
            let labels = (0..r)
                .map(|i| format!("r{i}"))
                .chain((0..r).map(|i| format!("sr{i}")))
                .collect();
            table_from_fn(
                n,
                |a, b| {
                    let (sa, ea) = (a >= r, a % r);
                    let (sb, eb) = (b >= r, b % r);
                    // r^a s = s r^-a
                    match (sa, sb) {
                        (false, false) => (ea + eb) % r,
                        (false, true) => r + (eb + r - ea) % r,
                        (true, false) => r + (ea + eb) % r,
                        (true, true) => (eb + r - ea) % r,
                    }
                },
                labels,
            )
        }
        "symmetric" => {
            let n = need(param)?;
            if n == 0 || n > 4 {
                return Err(bad(n, "degree must be in 1..=4 (order at most 64)"));
            }
            symmetric_group(n)
        }
        "klein4" => {
            if let Some(p) = param {
                return Err(bad(p, "takes no parameter"));
            }
            table_from_fn(
                4,
                |a, b| a ^ b,
                ["e", "a", "b", "c"].map(str::to_owned).to_vec(),
            )
        }
        "quaternion8" => {
            if let Some(p) = param {
                return Err(bad(p, "takes no parameter"));
            }
            quaternion_group()
        }
        other => Err(Error::UnknownGroup(other.to_owned())),
    }
}

fn table_from_fn(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    labels: Vec<String>,
) -> Result<FiniteGroup> {
    let rows = (0..n)
        .map(|a| (0..n).map(|b| mul(a, b)).collect())
        .collect();
    FiniteGroup::from_cayley_table(rows)?.with_labels(labels)
}

fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let rows = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let ab: Vec<usize> = a.iter().map(|&x| b[x]).collect();
                    index_of(&ab)
                })
                .collect()
        })
        .collect();
    let labels = perms
        .iter()
        .map(|p| {
            Perm::from_images(p.clone())
                .expect("permutation")
                .to_string()
        })
        .collect();
    FiniteGroup::from_cayley_table(rows)?.with_labels(labels)
}

fn quaternion_group() -> Result<FiniteGroup> {
    // index = 2*unit + sign, unit in {1, i, j, k}, sign bit set for negatives
    fn unit_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(str::to_owned)
        .to_vec();
    table_from_fn(
        8,
        |a, b| {
            let (u, neg) = unit_mul(a / 2, b / 2);
            let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
            2 * u + sign
        },
        labels,
    )
}

/// Lexicographic successor in place; false when `v` was the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An automorphism stored as its action on element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAut {
    images: Vec<usize>,
}

impl GroupAut {
    pub fn identity(order: usize) -> GroupAut {
        GroupAut {
            images: (0..order).collect(),
        }
    }

    pub fn new(group: &FiniteGroup, images: Vec<usize>) -> Result<GroupAut> {
        let n = group.order();
        if images.len() != n {
            return Err(Error::NotAPermutation(format!(
                "{} images for a group of order {n}",
                images.len()
            )));
        }
        Perm::from_images(images.clone())?;
        if images[0] != 0 {
            return Err(Error::NotAPermutation("identity is not fixed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if images[group.mul(a, b)] != group.mul(images[a], images[b]) {
                    return Err(Error::NotAPermutation(format!(
                        "homomorphism law fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GroupAut { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        GroupAut {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAut {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        GroupAut { images: inv }
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.compose(self);
            k += 1;
        }
        k
    }
}

pub fn automorphisms(group: &FiniteGroup) -> Result<Vec<GroupAut>> {
    automorphisms_with_cap(group, DEFAULT_AUT_CAP)
}

/// All automorphisms, sorted lexicographically by image array.
///
/// Backtracks over images of the greedy generators, restricted to elements of
/// matching order, and extends each candidate along a spanning tree of the
/// Cayley graph before checking the full multiplication table.
pub fn automorphisms_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<GroupAut>> {
    let n = group.order();
    if n > cap {
        return Err(Error::AutCapExceeded { order: n, cap });
    }
    let gens = group.generators();
    let orders: Vec<usize> = (0..n).map(|a| group.element_order(a)).collect();

    // spanning tree: element e = parent[e] · gens[via[e]]
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut bfs = vec![0];
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut head = 0;
    while head < bfs.len() {
        let x = bfs[head];
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if !std::mem::replace(&mut reached[y], true) {
                tree[y] = Some((x, gi));
                bfs.push(y);
            }
        }
    }

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (1..n).filter(|&c| orders[c] == orders[g]).collect())
        .collect();

    let mut found = Vec::new();
    let mut choice = Vec::with_capacity(gens.len());
    search(group, &bfs, &tree, &candidates, &mut choice, &mut found);
    found.sort();
    Ok(found)
}

fn search(
    group: &FiniteGroup,
    bfs: &[usize],
    tree: &[Option<(usize, usize)>],
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    found: &mut Vec<GroupAut>,
) {
    let depth = choice.len();
    if depth == candidates.len() {
        if let Some(aut) = extend_to_automorphism(group, bfs, tree, choice) {
            found.push(aut);
        }
        return;
    }
    for &c in &candidates[depth] {
        if choice.contains(&c) {
            continue;
        }
        choice.push(c);
        search(group, bfs, tree, candidates, choice, found);
        choice.pop();
    }
}

fn extend_to_automorphism(
    group: &FiniteGroup,
    bfs: &[usize],
    tree: &[Option<(usize, usize)>],
    gen_images: &[usize],
) -> Option<GroupAut> {
    let n = group.order();
    let mut images = vec![0; n];
    let mut hit = vec![false; n];
    hit[0] = true;
    for &e in &bfs[1..] {
        let (parent, gi) = tree[e].expect("non-root tree node");
        let img = group.mul(images[parent], gen_images[gi]);
        if std::mem::replace(&mut hit[img], true) {
            return None;
        }
        images[e] = img;
    }
    for a in 0..n {
        for b in 0..n {
            if images[group.mul(a, b)] != group.mul(images[a], images[b]) {
                return None;
            }
        }
    }
    Some(GroupAut { images })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutStructure {
    pub order: usize,
    pub is_abelian: bool,
    pub exponent: usize,
}

pub fn aut_group_structure(auts: &[GroupAut]) -> Result<AutStructure> {
    let set: HashSet<&GroupAut> = auts.iter().collect();
    if auts.is_empty() {
        return Err(Error::NotClosed);
    }
    for a in auts {
        for b in auts {
            if !set.contains(&a.compose(b)) {
                return Err(Error::NotClosed);
            }
        }
    }
    let is_abelian = auts
        .iter()
        .all(|a| auts.iter().all(|b| a.compose(b) == b.compose(a)));
    let exponent = auts.iter().fold(1, |acc, a| acc.lcm(&a.order()));
    Ok(AutStructure {
        order: auts.len(),
        is_abelian,
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_aut_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut rest: Vec<usize> = (1..n).collect();
        let mut count = 0;
        loop {
            let mut images = vec![0];
            images.extend(&rest);
            if (0..n).all(|a| (0..n).all(|b| images[g.mul(a, b)] == g.mul(images[a], images[b]))) {
                count += 1;
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        count
    }

    #[test]
    fn cayley_table_validation() {
        let t = FiniteGroup::from_cayley_table(vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let c2 = FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        let z4: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| (a + b) % 4).collect())
            .collect();
        assert_eq!(
            FiniteGroup::from_cayley_table(z4.clone()).unwrap().order(),
            4
        );
        let mut bad = z4;
        bad[1][2] = 0;
        assert!(matches!(
            FiniteGroup::from_cayley_table(bad),
            Err(Error::NotLatin(_))
        ));
        assert!(matches!(
            FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn identity_relocated_to_zero() {
        // Z_3 with the identity stored at index 2: a·b = (a + b + 1) mod 3
        let rows = (0..3)
            .map(|a| (0..3).map(|b| (a + b + 1) % 3).collect())
            .collect();
        let g = FiniteGroup::from_cayley_table(rows).unwrap();
        for b in 0..3 {
            assert_eq!(g.mul(0, b), b);
            assert_eq!(g.mul(b, 0), b);
        }
    }

    #[test]
    fn no_identity_rejected() {
        // Latin square without identity: a·b = (b - a) mod 3
        let rows = (0..3)
            .map(|a| (0..3).map(|b| (b + 3 - a) % 3).collect())
            .collect();
        assert_eq!(FiniteGroup::from_cayley_table(rows), Err(Error::NoIdentity));
    }

    #[test]
    fn associativity_failure_reports_triple() {
        // a loop of order 5 that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table(rows) {
            Err(Error::NotAssociative(..)) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn catalogue() {
        let c3 = named_group("cyclic", Some(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(c3.mul(a, b), (a + b) % 3);
            }
        }
        assert_eq!(named_group("symmetric", Some(3)).unwrap().order(), 6);
        assert_eq!(named_group("symmetric", Some(4)).unwrap().order(), 24);
        let v4 = named_group("klein4", None).unwrap();
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|a| v4.mul(a, a) == 0));
        let d8 = named_group("dihedral", Some(8)).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(!d8.is_abelian());
        let q8 = named_group("quaternion8", None).unwrap();
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 4).count(), 6);
        assert!(!q8.is_abelian());
        assert!(matches!(
            named_group("foo", None),
            Err(Error::UnknownGroup(_))
        ));
        assert!(named_group("cyclic", Some(65)).is_err());
        assert!(named_group("cyclic", Some(0)).is_err());
        assert!(named_group("dihedral", Some(5)).is_err());
        assert!(named_group("symmetric", Some(5)).is_err());
        assert!(named_group("klein4", Some(2)).is_err());
    }

    #[test]
    fn regular_representation_cases() {
        let c2 = named_group("cyclic", Some(2)).unwrap();
        let r = c2.regular_representation();
        assert!(r[0].is_identity());
        assert_eq!(r[1].to_string(), "(0 1)");
        let c3 = named_group("cyclic", Some(3)).unwrap();
        assert_eq!(c3.regular_representation()[1].images(), &[1, 2, 0]);
        let t = named_group("cyclic", Some(1)).unwrap();
        assert_eq!(t.regular_representation(), vec![Perm::identity(1).unwrap()]);
    }

    fn catalogue_small() -> Vec<FiniteGroup> {
        let mut out = Vec::new();
        for n in 1..=12 {
            out.push(named_group("cyclic", Some(n)).unwrap());
        }
        for n in [2, 4, 6, 8, 10, 12] {
            out.push(named_group("dihedral", Some(n)).unwrap());
        }
        for n in 1..=3 {
            out.push(named_group("symmetric", Some(n)).unwrap());
        }
        out.push(named_group("klein4", None).unwrap());
        out.push(named_group("quaternion8", None).unwrap());
        out
    }

    #[test]
    fn regular_representation_is_a_regular_homomorphism() {
        for g in catalogue_small() {
            let r = g.regular_representation();
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(r[a].compose(&r[b]).unwrap(), r[g.mul(a, b)]);
                }
                if a != 0 {
                    assert!((0..g.order()).all(|x| r[a].apply(x) != x));
                }
            }
            let orbit: HashSet<usize> = r.iter().map(|p| p.apply(0)).collect();
            assert_eq!(orbit.len(), g.order());
        }
    }

    #[test]
    fn automorphism_counts() {
        let count = |name: &str, p: Option<usize>| {
            automorphisms(&named_group(name, p).unwrap()).unwrap().len()
        };
        assert_eq!(count("cyclic", Some(2)), 1);
        let c3 = automorphisms(&named_group("cyclic", Some(3)).unwrap()).unwrap();
        assert_eq!(c3.len(), 2);
        assert_eq!(c3[0].images(), &[0, 1, 2]);
        assert_eq!(c3[1].images(), &[0, 2, 1]);
        assert_eq!(count("symmetric", Some(3)), 6);
        assert_eq!(count("klein4", None), 6);
        assert_eq!(count("quaternion8", None), 24);
        assert_eq!(count("dihedral", Some(8)), 8);
        assert_eq!(count("symmetric", Some(4)), 24);
        for p in [2, 3, 5, 7] {
            assert_eq!(count("cyclic", Some(p)), p - 1);
        }
    }

    #[test]
    fn automorphisms_match_exhaustive_bijection_search() {
        for g in catalogue_small().into_iter().filter(|g| g.order() <= 8) {
            assert_eq!(automorphisms(&g).unwrap().len(), brute_force_aut_count(&g));
        }
    }

    #[test]
    fn automorphisms_are_closed_and_preserve_table() {
        for g in catalogue_small() {
            let auts = automorphisms(&g).unwrap();
            assert!(auts.contains(&GroupAut::identity(g.order())));
            assert!(auts.windows(2).all(|w| w[0] < w[1]));
            let set: HashSet<_> = auts.iter().cloned().collect();
            for a in &auts {
                assert!(set.contains(&a.inverse()));
                for b in &auts {
                    assert!(set.contains(&a.compose(b)));
                }
                let mut relabelled = vec![vec![0; g.order()]; g.order()];
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        relabelled[a.apply(x)][a.apply(y)] = a.apply(g.mul(x, y));
                    }
                }
                assert_eq!(relabelled, g.rows());
                assert!(GroupAut::new(&g, a.images().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn aut_cap() {
        let c25 = named_group("cyclic", Some(25)).unwrap();
        assert!(matches!(
            automorphisms(&c25),
            Err(Error::AutCapExceeded { .. })
        ));
        assert_eq!(automorphisms_with_cap(&c25, 25).unwrap().len(), 20);
    }

    #[test]
    fn structures() {
        let s = |name: &str, p: Option<usize>| {
            aut_group_structure(&automorphisms(&named_group(name, p).unwrap()).unwrap()).unwrap()
        };
        assert_eq!(
            s("cyclic", Some(5)),
            AutStructure {
                order: 4,
                is_abelian: true,
                exponent: 4
            }
        );
        assert_eq!(
            s("cyclic", Some(2)),
            AutStructure {
                order: 1,
                is_abelian: true,
                exponent: 1
            }
        );
        assert_eq!(
            s("klein4", None),
            AutStructure {
                order: 6,
                is_abelian: false,
                exponent: 6
            }
        );
        let c5 = named_group("cyclic", Some(5)).unwrap();
        let partial = vec![
            GroupAut::identity(5),
            GroupAut::new(&c5, vec![0, 2, 4, 1, 3]).unwrap(),
        ];
        assert_eq!(aut_group_structure(&partial), Err(Error::NotClosed));
    }

    #[test]
    fn table_text_round_trip() {
        let q8 = named_group("quaternion8", None).unwrap();
        let back = FiniteGroup::parse_table_text(&q8.to_table_text()).unwrap();
        assert_eq!(back, q8);
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n";
        assert_eq!(FiniteGroup::parse_table_text(text).unwrap().order(), 3);
        assert!(FiniteGroup::parse_table_text("3\n0 1 2\n").is_err());
        assert!(FiniteGroup::parse_table_text("2\n0 x\n1 0\n").is_err());
    }
}
