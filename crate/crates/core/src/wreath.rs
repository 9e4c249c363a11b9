//! Wreath products `H ≀ K` on `Z = X × Y` and the iterated tower `W(G, n)` on `G^n`.
//!
//! Points are indexed mixed-radix with the top coordinate most significant:
//! `(x, y)` is `x + |X|·y`, so the fiber `X_y` is the contiguous range
//! `[|X|·y, |X|·(y+1))`. For the tower, `(x_1, .., x_n)` is `Σ x_i |G|^(i-1)`.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::bsgs::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Perm;

pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// `h` acting on fiber `y`, identity elsewhere. Degree `h.degree() * num_blocks`.
pub fn fiber_embed(h: &Perm, y: usize, num_blocks: usize) -> Result<Perm> {
    if y >= num_blocks {
        return Err(Error::ElementOutOfRange {
            index: y,
            order: num_blocks,
        });
    }
    let m = h.degree();
    let mut images: Vec<usize> = (0..m * num_blocks).collect();
    for x in 0..m {
        images[m * y + x] = m * y + h.apply(x);
    }
    Ok(Perm::from_images(images).expect("block-local bijection"))
}

/// `kΛ`: moves every fiber `X_y` onto `X_{yk}` without changing the inner coordinate.
pub fn lambda_embed(k: usize, group: &FiniteGroup, fiber_degree: usize) -> Result<Perm> {
    group.check_element(k)?;
    if fiber_degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    Ok(permute_fibers(fiber_degree, group.order(), |y| {
        group.mul(y, k)
    }))
}

/// Moves `X_y` onto `X_{block_map(y)}` pointwise.
pub(crate) fn permute_fibers(
    fiber_degree: usize,
    num_blocks: usize,
    block_map: impl Fn(usize) -> usize,
) -> Perm {
    let m = fiber_degree;
    let mut images = vec![0; m * num_blocks];
    for y in 0..num_blocks {
        let target = block_map(y);
        for x in 0..m {
            images[m * y + x] = m * target + x;
        }
    }
    Perm::from_images(images).expect("block_map is a bijection")
}

/// Generators of `H ≀ K`: `H` embedded in the fiber over the identity, plus
/// `Λ` of the generators of `K`. Identity generators are dropped; an empty
/// result is replaced by the identity.
pub fn wreath_product(h_gens: &[Perm], k: &FiniteGroup) -> Result<Vec<Perm>> {
    let first = h_gens.first().ok_or(Error::NoGenerators)?;
    let m = first.degree();
    if let Some(bad) = h_gens.iter().find(|h| h.degree() != m) {
        return Err(Error::DegreeMismatch {
            left: m,
            right: bad.degree(),
        });
    }
    let mut gens = Vec::new();
    for h in h_gens {
        let f = fiber_embed(h, 0, k.order())?;
        if !f.is_identity() && !gens.contains(&f) {
            gens.push(f);
        }
    }
    for g in k.generators() {
        gens.push(lambda_embed(g, k, m)?);
    }
    if gens.is_empty() {
        gens.push(Perm::identity(m * k.order())?);
    }
    Ok(gens)
}

/// `|G|^((|G|^n - 1)/(|G| - 1))`, or 1 when `|G| = 1` or `n = 0`.
pub fn wreath_order(group_order: usize, levels: usize) -> BigUint {
    if group_order <= 1 || levels == 0 {
        return BigUint::one();
    }
    // exponent 1 + g + .. + g^(n-1)
    let g = BigUint::from(group_order);
    let mut exponent = BigUint::one();
    let mut term = BigUint::one();
    for _ in 1..levels {
        term *= &g;
        exponent += &term;
    }
    let exp: u32 = exponent
        .try_into()
        .expect("exponent fits for capped degrees");
    Pow::pow(g, exp)
}

#[derive(Clone, Debug)]
pub struct WreathTower {
    group: FiniteGroup,
    levels: usize,
    degree: usize,
    /// `gens[i]` generates `W(G, i)` at its native degree `|G|^i`.
    gens: Vec<Vec<Perm>>,
}

pub fn iterated_wreath(group: &FiniteGroup, levels: usize) -> Result<WreathTower> {
    iterated_wreath_with_cap(group, levels, DEFAULT_DEGREE_CAP)
}

pub fn iterated_wreath_with_cap(
    group: &FiniteGroup,
    levels: usize,
    degree_cap: usize,
) -> Result<WreathTower> {
    let degree = u32::try_from(levels)
        .ok()
        .and_then(|n| group.order().checked_pow(n))
        .filter(|&d| d <= degree_cap)
        .ok_or_else(|| Error::DegreeCapExceeded {
            degree: format!("{}^{}", group.order(), levels),
            cap: degree_cap,
        })?;
    let mut gens = vec![vec![Perm::identity(1)?]];
    for i in 0..levels {
        let next = wreath_product(&gens[i], group)?;
        gens.push(next);
    }
    Ok(WreathTower {
        group: group.clone(),
        levels,
        degree,
        gens,
    })
}

impl WreathTower {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.group.order().pow(level as u32)
    }

    pub fn generators(&self, level: usize) -> &[Perm] {
        &self.gens[level]
    }

    pub fn top_generators(&self) -> &[Perm] {
        &self.gens[self.levels]
    }

    pub fn chain(&self, level: usize) -> StabilizerChain {
        StabilizerChain::new(&self.gens[level]).expect("tower generators share a degree")
    }

    pub fn top_chain(&self) -> StabilizerChain {
        self.chain(self.levels)
    }

    pub fn predicted_order(&self, level: usize) -> BigUint {
        wreath_order(self.group.order(), level)
    }

    /// The top-level fibers `X_y`, `y ∈ G`. Needs at least one level.
    pub fn top_partition(&self) -> Result<BlockPartition> {
        if self.levels == 0 {
            return Err(Error::Format("a zero-level tower has no fibers".into()));
        }
        block_partition(self.degree, self.level_degree(self.levels - 1))
    }

    pub fn index_of(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.levels {
            return Err(Error::Format(format!(
                "expected {} coordinates, got {}",
                self.levels,
                coords.len()
            )));
        }
        let g = self.group.order();
        let mut index = 0;
        for &c in coords.iter().rev() {
            self.group.check_element(c)?;
            index = index * g + c;
        }
        Ok(index)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let g = self.group.order();
        (0..self.levels)
            .map(|_| {
                let c = index % g;
                index /= g;
                c
            })
            .collect()
    }
}

/// Contiguous blocks `[j·s, (j+1)·s)` of a degree-`m` domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    degree: usize,
    block_size: usize,
}

pub fn block_partition(degree: usize, block_size: usize) -> Result<BlockPartition> {
    if degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if block_size == 0 || !degree.is_multiple_of(block_size) {
        return Err(Error::BlockSize {
            degree,
            block: block_size,
        });
    }
    Ok(BlockPartition { degree, block_size })
}

impl BlockPartition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.degree / self.block_size
    }

    pub fn block_of(&self, point: usize) -> usize {
        point / self.block_size
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.num_blocks())
            .map(|j| (j * self.block_size..(j + 1) * self.block_size).collect())
            .collect()
    }

    /// Restriction of `p` to block `j`, reindexed to `0..block_size`, if `p`
    /// fixes that block setwise.
    pub fn restrict(&self, p: &Perm, j: usize) -> Option<Perm> {
        let s = self.block_size;
        let offset = j * s;
        let images: Option<Vec<usize>> = (offset..offset + s)
            .map(|x| {
                let y = p.apply(x);
                (self.block_of(y) == j).then(|| y - offset)
            })
            .collect();
        images.map(|v| Perm::from_images(v).expect("restriction of a bijection"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockImage {
    /// The induced permutation of block indices.
    Stable(Perm),
    /// `point` and the first point of its block land in different blocks.
    Broken { point: usize },
}

/// `Ω`: the action of `p` on the blocks of `part`, when `p` preserves them.
pub fn block_image(p: &Perm, part: &BlockPartition) -> Result<BlockImage> {
    if p.degree() != part.degree {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: part.degree,
        });
    }
    let s = part.block_size;
    let mut images = Vec::with_capacity(part.num_blocks());
    for j in 0..part.num_blocks() {
        let target = part.block_of(p.apply(j * s));
        for x in j * s + 1..(j + 1) * s {
            if part.block_of(p.apply(x)) != target {
                return Ok(BlockImage::Broken { point: x });
            }
        }
        images.push(target);
    }
    Ok(BlockImage::Stable(
        Perm::from_images(images).expect("blocks map onto distinct blocks"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    fn cyc(s: &str, m: usize) -> Perm {
        Perm::parse_cycles(s, m).unwrap()
    }

    fn c(n: usize) -> FiniteGroup {
        named_group("cyclic", Some(n)).unwrap()
    }

    #[test]
    fn fiber_embed_cases() {
        let h = cyc("(0 1)", 2);
        assert_eq!(fiber_embed(&h, 0, 2).unwrap(), cyc("(0 1)", 4));
        assert_eq!(fiber_embed(&h, 1, 2).unwrap(), cyc("(2 3)", 4));
        assert!(fiber_embed(&Perm::identity(3).unwrap(), 2, 3)
            .unwrap()
            .is_identity());
        assert!(fiber_embed(&h, 2, 2).is_err());
    }

    #[test]
    fn lambda_embed_cases() {
        assert_eq!(lambda_embed(1, &c(2), 2).unwrap(), cyc("(0 2)(1 3)", 4));
        assert!(lambda_embed(0, &c(2), 2).unwrap().is_identity());
        assert_eq!(lambda_embed(1, &c(3), 1).unwrap(), cyc("(0 1 2)", 3));
        assert!(lambda_embed(3, &c(3), 1).is_err());
    }

    #[test]
    fn wreath_product_orders() {
        let gens = wreath_product(&[cyc("(0 1)", 2)], &c(2)).unwrap();
        assert_eq!(
            StabilizerChain::new(&gens).unwrap().order(),
            BigUint::from(8u32)
        );
        let gens = wreath_product(&[Perm::identity(1).unwrap()], &c(3)).unwrap();
        assert_eq!(gens, vec![cyc("(0 1 2)", 3)]);
        let gens = wreath_product(&[cyc("(0 1 2)", 3)], &c(3)).unwrap();
        assert_eq!(
            StabilizerChain::new(&gens).unwrap().order(),
            BigUint::from(81u32)
        );
        assert!(wreath_product(&[], &c(3)).is_err());
    }

    #[test]
    fn towers() {
        let t = iterated_wreath(&c(2), 2).unwrap();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.top_chain().order(), BigUint::from(8u32));
        let t0 = iterated_wreath(&c(5), 0).unwrap();
        assert_eq!(t0.degree(), 1);
        assert_eq!(t0.top_chain().order(), BigUint::one());
        let t = iterated_wreath(&c(3), 2).unwrap();
        assert_eq!(t.degree(), 9);
        assert_eq!(t.top_chain().order(), BigUint::from(81u32));
        assert!(matches!(
            iterated_wreath(&c(2), 13),
            Err(Error::DegreeCapExceeded { .. })
        ));
        assert!(iterated_wreath(&c(2), usize::MAX).is_err());
        assert!(iterated_wreath_with_cap(&c(3), 3, 26).is_err());
    }

    #[test]
    fn order_formula_closed_form() {
        assert_eq!(wreath_order(2, 3), BigUint::from(128u32));
        assert_eq!(wreath_order(3, 2), BigUint::from(81u32));
        assert_eq!(wreath_order(1, 7), BigUint::one());
        assert_eq!(wreath_order(7, 0), BigUint::one());
        assert_eq!(wreath_order(3, 4), Pow::pow(BigUint::from(3u32), 40u32));
    }

    #[test]
    fn mixed_radix_indexing() {
        let t = iterated_wreath(&c(3), 3).unwrap();
        assert_eq!(t.index_of(&[1, 2, 0]).unwrap(), 7);
        assert_eq!(t.coords_of(7), vec![1, 2, 0]);
        for i in 0..27 {
            assert_eq!(t.index_of(&t.coords_of(i)).unwrap(), i);
        }
        assert!(t.index_of(&[0, 3, 0]).is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(
            block_partition(4, 2).unwrap().blocks(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(block_partition(9, 3).unwrap().num_blocks(), 3);
        assert!(matches!(
            block_partition(6, 4),
            Err(Error::BlockSize { .. })
        ));
        assert!(block_partition(6, 0).is_err());
    }

    #[test]
    fn block_image_cases() {
        let part = block_partition(4, 2).unwrap();
        let lam = lambda_embed(1, &c(2), 2).unwrap();
        assert_eq!(
            block_image(&lam, &part).unwrap(),
            BlockImage::Stable(cyc("(0 1)", 2))
        );
        let f = fiber_embed(&cyc("(0 1)", 2), 0, 2).unwrap();
        assert_eq!(
            block_image(&f, &part).unwrap(),
            BlockImage::Stable(Perm::identity(2).unwrap())
        );
        assert_eq!(
            block_image(&cyc("(1 2)", 4), &part).unwrap(),
            BlockImage::Broken { point: 1 }
        );
        assert!(block_image(&cyc("(1 2)", 3), &part).is_err());
    }

    #[test]
    fn restriction() {
        let part = block_partition(4, 2).unwrap();
        let f = fiber_embed(&cyc("(0 1)", 2), 1, 2).unwrap();
        assert_eq!(part.restrict(&f, 1).unwrap(), cyc("(0 1)", 2));
        assert!(part.restrict(&f, 0).unwrap().is_identity());
        let lam = lambda_embed(1, &c(2), 2).unwrap();
        assert!(part.restrict(&lam, 0).is_none());
    }
}
