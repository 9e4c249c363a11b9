//! The complement `M_n ≅ Aut(G)^n` of `W(G, n)` in its normalizer.
//!
//! `M_{i+1}` is generated by the diagonal lifts `m*` of the generators of
//! `M_i`, followed by `Γ(γ)` for every non-identity `γ ∈ Aut(G)` acting on the
//! top-level fibers.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::bsgs::StabilizerChain;
use crate::error::{Error, Result};
use crate::group::{
    aut_group_structure, automorphisms_with_cap, FiniteGroup, GroupAut, DEFAULT_AUT_CAP,
};
use crate::perm::Perm;
use crate::wreath::{fiber_embed, lambda_embed, permute_fibers, wreath_order, WreathTower};

/// Largest group that is enumerated element by element for the exhaustive identity checks.
const ENUMERATION_LIMIT: u32 = 5000;

/// `γΓ`: sends `x_k` to `x_{kγ}`, moving whole fibers and acting trivially inside them.
pub fn gamma_embed(gamma: &GroupAut, k: &FiniteGroup, fiber_degree: usize) -> Result<Perm> {
    if gamma.images().len() != k.order() {
        return Err(Error::DegreeMismatch {
            left: gamma.images().len(),
            right: k.order(),
        });
    }
    if fiber_degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    Ok(permute_fibers(fiber_degree, k.order(), |y| gamma.apply(y)))
}

/// `m*`: the same permutation `m` in every fiber.
pub fn m_star(m: &Perm, num_blocks: usize) -> Result<Perm> {
    if num_blocks == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let d = m.degree();
    let images = (0..num_blocks)
        .flat_map(|y| m.images().iter().map(move |&x| d * y + x))
        .collect();
    Ok(Perm::from_images(images).expect("fiberwise copy of a bijection"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementGenerator {
    pub perm: Perm,
    /// Tower level `1..=n` whose `Γ` produced this generator before lifting.
    pub level: usize,
    /// Index into the sorted automorphism list.
    pub aut_index: usize,
}

#[derive(Clone, Debug)]
pub struct NormalizerComplement {
    degree: usize,
    levels: usize,
    auts: Vec<GroupAut>,
    gens: Vec<ComplementGenerator>,
}

impl NormalizerComplement {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn automorphisms(&self) -> &[GroupAut] {
        &self.auts
    }

    pub fn generators(&self) -> &[ComplementGenerator] {
        &self.gens
    }

    pub fn perms(&self) -> Vec<Perm> {
        self.gens.iter().map(|g| g.perm.clone()).collect()
    }

    /// Chain of `⟨M⟩`; trivial when `M` has no generators.
    pub fn chain(&self) -> StabilizerChain {
        chain_or_trivial(&self.perms(), self.degree)
    }

    /// Chain of `⟨M ∪ W⟩`.
    pub fn normalizer_chain(&self, tower: &WreathTower) -> StabilizerChain {
        let mut gens = tower.top_generators().to_vec();
        gens.extend(self.perms());
        chain_or_trivial(&gens, self.degree)
    }
}

fn chain_or_trivial(gens: &[Perm], degree: usize) -> StabilizerChain {
    if gens.is_empty() {
        StabilizerChain::trivial(degree).expect("positive degree")
    } else {
        StabilizerChain::new(gens).expect("generators share a degree")
    }
}

pub fn normalizer_complement(tower: &WreathTower) -> Result<NormalizerComplement> {
    normalizer_complement_with_cap(tower, DEFAULT_AUT_CAP)
}

pub fn normalizer_complement_with_cap(
    tower: &WreathTower,
    aut_cap: usize,
) -> Result<NormalizerComplement> {
    let group = tower.group();
    let auts = automorphisms_with_cap(group, aut_cap)?;
    let mut gens: Vec<ComplementGenerator> = Vec::new();
    for level in 1..=tower.levels() {
        let fiber_degree = tower.level_degree(level - 1);
        let mut next = Vec::with_capacity(gens.len() + auts.len());
        for g in &gens {
            next.push(ComplementGenerator {
                perm: m_star(&g.perm, group.order())?,
                ..g.clone()
            });
        }
        for (aut_index, gamma) in auts.iter().enumerate() {
            if gamma.is_identity() {
                continue;
            }
            next.push(ComplementGenerator {
                perm: gamma_embed(gamma, group, fiber_degree)?,
                level,
                aut_index,
            });
        }
        gens = next;
    }
    Ok(NormalizerComplement {
        degree: tower.degree(),
        levels: tower.levels(),
        auts,
        gens,
    })
}

/// `|Aut(G)|^n · |W(G, n)|`.
pub fn predicted_normalizer_order(group: &FiniteGroup, levels: usize) -> Result<BigUint> {
    predicted_normalizer_order_with_cap(group, levels, DEFAULT_AUT_CAP)
}

pub fn predicted_normalizer_order_with_cap(
    group: &FiniteGroup,
    levels: usize,
    aut_cap: usize,
) -> Result<BigUint> {
    let aut_order = automorphisms_with_cap(group, aut_cap)?.len();
    let n = u32::try_from(levels).map_err(|_| Error::Format("level count too large".into()))?;
    Ok(Pow::pow(BigUint::from(aut_order), n) * wreath_order(group.order(), levels))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    fn new(id: &'static str, failure: Option<String>) -> Check {
        Check {
            id,
            passed: failure.is_none(),
            witness: failure,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: PASS", self.id)
        } else {
            write!(f, "{}: FAIL", self.id)?;
            match &self.witness {
                Some(w) => write!(f, " {w}"),
                None => Ok(()),
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub checks: Vec<Check>,
    pub tower_order: BigUint,
    pub normalizer_order: BigUint,
    pub complement_order: BigUint,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Elements of `⟨gens⟩` when the group is small, otherwise just the generators.
fn elements_or_generators(gens: &[Perm]) -> Vec<Perm> {
    let chain = StabilizerChain::new(gens).expect("generators share a degree");
    if chain.order() <= BigUint::from(ENUMERATION_LIMIT) {
        chain.elements()
    } else {
        gens.to_vec()
    }
}

/// Both conjugation identities of `Γ` at the top level, over every `h ∈ H`
/// (generators only when `H` is large), `k ∈ K` and `γ ∈ Aut(K)`.
/// Returns the first failure.
pub fn lemma_d_failures(
    tower: &WreathTower,
    auts: &[GroupAut],
) -> (Option<String>, Option<String>) {
    let n = tower.levels();
    if n == 0 {
        return (None, None);
    }
    let k = tower.group();
    let m = tower.level_degree(n - 1);
    let hs = elements_or_generators(tower.generators(n - 1));
    let mut fiber_fail = None;
    let mut lambda_fail = None;
    for (gi, gamma) in auts.iter().enumerate() {
        let g = gamma_embed(gamma, k, m).expect("aut of K");
        for y in 0..k.order() {
            if fiber_fail.is_none() {
                for h in &hs {
                    let lhs = fiber_embed(h, y, k.order())
                        .expect("y in K")
                        .conjugate_unchecked(&g);
                    let rhs = fiber_embed(h, gamma.apply(y), k.order()).expect("y in K");
                    if lhs != rhs {
                        fiber_fail = Some(format!("h={h} k={y} aut={gi}"));
                        break;
                    }
                }
            }
            if lambda_fail.is_none() {
                let lhs = lambda_embed(y, k, m)
                    .expect("y in K")
                    .conjugate_unchecked(&g);
                let rhs = lambda_embed(gamma.apply(y), k, m).expect("y in K");
                if lhs != rhs {
                    lambda_fail = Some(format!("k={y} aut={gi}"));
                }
            }
        }
    }
    (fiber_fail, lambda_fail)
}

/// `Γ` is a homomorphism and injective on the full automorphism list.
pub fn gamma_homomorphism_failure(tower: &WreathTower, auts: &[GroupAut]) -> Option<String> {
    let n = tower.levels();
    if n == 0 {
        return None;
    }
    let k = tower.group();
    let m = tower.level_degree(n - 1);
    let images: Vec<Perm> = auts
        .iter()
        .map(|a| gamma_embed(a, k, m).expect("aut of K"))
        .collect();
    for (i, a) in auts.iter().enumerate() {
        for (j, b) in auts.iter().enumerate() {
            let lhs = gamma_embed(&a.compose(b), k, m).expect("aut of K");
            if lhs != images[i].then(&images[j]) {
                return Some(format!("auts {i},{j}"));
            }
            if i < j && images[i] == images[j] {
                return Some(format!("auts {i},{j} share an image"));
            }
        }
    }
    None
}

/// `[m*, kΛ] = 1` and `[m*, γΓ] = 1` for every lifted generator at the top level.
pub fn lemma_g_failures(
    tower: &WreathTower,
    comp: &NormalizerComplement,
) -> (Option<String>, Option<String>) {
    let n = tower.levels();
    if n == 0 {
        return (None, None);
    }
    let k = tower.group();
    let m = tower.level_degree(n - 1);
    let lifted: Vec<&ComplementGenerator> = comp.gens.iter().filter(|g| g.level < n).collect();
    let mut lambda_fail = None;
    let mut gamma_fail = None;
    for (i, g) in lifted.iter().enumerate() {
        for y in 0..k.order() {
            let l = lambda_embed(y, k, m).expect("y in K");
            if lambda_fail.is_none() && !g.perm.commutator(&l).expect("same degree").is_identity() {
                lambda_fail = Some(format!("lifted #{i} k={y}"));
            }
        }
        for (ai, gamma) in comp.auts.iter().enumerate() {
            let c = gamma_embed(gamma, k, m).expect("aut of K");
            if gamma_fail.is_none() && !g.perm.commutator(&c).expect("same degree").is_identity() {
                gamma_fail = Some(format!("lifted #{i} aut={ai}"));
            }
        }
    }
    (lambda_fail, gamma_fail)
}

/// Certifies `N = M ⋉ W` as far as order arithmetic and membership allow.
pub fn verify_theorem(tower: &WreathTower, comp: &NormalizerComplement) -> TheoremReport {
    let n = tower.levels();
    let w_chain = tower.top_chain();
    let tower_order = w_chain.order();
    let aut_order = BigUint::from(comp.auts.len());
    let aut_power: BigUint = Pow::pow(aut_order, n as u32);
    let mut checks = Vec::new();

    let expected_w = wreath_order(tower.group().order(), n);
    checks.push(Check::new(
        "tower-order",
        (tower_order != expected_w).then(|| format!("got {tower_order} expected {expected_w}")),
    ));

    let mut normalizes = None;
    'outer: for (i, g) in comp.gens.iter().enumerate() {
        for (j, w) in tower.top_generators().iter().enumerate() {
            if !w_chain.contains_unchecked(&w.conjugate_unchecked(&g.perm)) {
                normalizes = Some(format!(
                    "mgen #{i} (level {} aut {}) tower gen #{j}",
                    g.level, g.aut_index
                ));
                break 'outer;
            }
        }
    }
    checks.push(Check::new("normalizes", normalizes));

    let normalizer_order = comp.normalizer_chain(tower).order();
    let expected_n = &aut_power * &tower_order;
    checks.push(Check::new(
        "semidirect-order",
        (normalizer_order != expected_n)
            .then(|| format!("got {normalizer_order} expected {expected_n}")),
    ));

    let (lambda_fail, gamma_fail) = lemma_g_failures(tower, comp);
    checks.push(Check::new("commute-lambda", lambda_fail));
    checks.push(Check::new("commute-gamma", gamma_fail));

    let (fiber_fail, lambda_conj_fail) = lemma_d_failures(tower, &comp.auts);
    checks.push(Check::new("gamma-fiber-conjugation", fiber_fail));
    checks.push(Check::new("gamma-lambda-conjugation", lambda_conj_fail));
    checks.push(Check::new(
        "gamma-monomorphism",
        gamma_homomorphism_failure(tower, &comp.auts),
    ));

    let complement_order = comp.chain().order();
    checks.push(Check::new(
        "complement-order",
        (complement_order != aut_power)
            .then(|| format!("got {complement_order} expected {aut_power}")),
    ));

    if let Ok(s) = aut_group_structure(&comp.auts) {
        if s.is_abelian {
            let perms = comp.perms();
            let abelian = perms.iter().enumerate().find_map(|(i, a)| {
                perms[..i]
                    .iter()
                    .position(|b| !a.commutes_with(b))
                    .map(|j| format!("mgens #{j},#{i} do not commute"))
            });
            checks.push(Check::new("complement-abelian", abelian));
            // for an abelian group the exponent is the lcm of the generator orders
            let exponent = perms
                .iter()
                .fold(BigUint::one(), |acc, p| acc.lcm(&p.order()));
            let expected = if n == 0 {
                BigUint::one()
            } else {
                BigUint::from(s.exponent)
            };
            checks.push(Check::new(
                "complement-exponent",
                (exponent != expected).then(|| format!("got {exponent} expected {expected}")),
            ));
        }
    }

    TheoremReport {
        checks,
        tower_order,
        normalizer_order,
        complement_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, named_group};
    use crate::wreath::iterated_wreath;

    fn cyc(s: &str, m: usize) -> Perm {
        Perm::parse_cycles(s, m).unwrap()
    }

    fn group(name: &str, p: Option<usize>) -> FiniteGroup {
        named_group(name, p).unwrap()
    }

    #[test]
    fn gamma_embed_cases() {
        let c3 = group("cyclic", Some(3));
        let auts = automorphisms(&c3).unwrap();
        assert_eq!(
            gamma_embed(&auts[1], &c3, 3).unwrap(),
            cyc("(3 6)(4 7)(5 8)", 9)
        );
        assert!(gamma_embed(&auts[0], &c3, 3).unwrap().is_identity());
        let c2 = group("cyclic", Some(2));
        let auts2 = automorphisms(&c2).unwrap();
        assert_eq!(auts2.len(), 1);
        assert!(gamma_embed(&auts2[0], &c2, 4).unwrap().is_identity());
        assert!(gamma_embed(&auts[1], &c2, 1).is_err());
    }

    #[test]
    fn m_star_cases() {
        assert_eq!(
            m_star(&cyc("(1 2)", 3), 3).unwrap(),
            cyc("(1 2)(4 5)(7 8)", 9)
        );
        assert!(m_star(&Perm::identity(3).unwrap(), 3)
            .unwrap()
            .is_identity());
        let a = cyc("(0 1 2)", 3);
        let b = cyc("(0 1)", 3);
        assert_eq!(
            m_star(&a.compose(&b).unwrap(), 4).unwrap(),
            m_star(&a, 4)
                .unwrap()
                .compose(&m_star(&b, 4).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn complement_cases() {
        let t = iterated_wreath(&group("cyclic", Some(2)), 2).unwrap();
        let comp = normalizer_complement(&t).unwrap();
        assert!(comp.generators().is_empty());
        assert_eq!(comp.normalizer_chain(&t).order(), BigUint::from(8u32));

        let t = iterated_wreath(&group("cyclic", Some(3)), 1).unwrap();
        let comp = normalizer_complement(&t).unwrap();
        assert_eq!(comp.perms(), vec![cyc("(1 2)", 3)]);
        assert_eq!(comp.normalizer_chain(&t).order(), BigUint::from(6u32));

        let t = iterated_wreath(&group("cyclic", Some(3)), 2).unwrap();
        let comp = normalizer_complement(&t).unwrap();
        assert_eq!(
            comp.perms(),
            vec![cyc("(1 2)(4 5)(7 8)", 9), cyc("(3 6)(4 7)(5 8)", 9)]
        );
        assert_eq!(comp.generators()[0].level, 1);
        assert_eq!(comp.generators()[1].level, 2);
        assert_eq!(comp.normalizer_chain(&t).order(), BigUint::from(324u32));

        let t0 = iterated_wreath(&group("cyclic", Some(3)), 0).unwrap();
        assert!(normalizer_complement(&t0).unwrap().generators().is_empty());
    }

    #[test]
    fn complement_respects_aut_cap() {
        let t = iterated_wreath(&group("symmetric", Some(4)), 1).unwrap();
        assert!(matches!(
            normalizer_complement_with_cap(&t, 12),
            Err(Error::AutCapExceeded { .. })
        ));
    }

    #[test]
    fn predicted_orders() {
        let c3 = group("cyclic", Some(3));
        assert_eq!(
            predicted_normalizer_order(&c3, 2).unwrap(),
            BigUint::from(324u32)
        );
        for g in [
            c3.clone(),
            group("klein4", None),
            group("quaternion8", None),
        ] {
            assert_eq!(predicted_normalizer_order(&g, 0).unwrap(), BigUint::one());
        }
        assert_eq!(
            predicted_normalizer_order(&group("symmetric", Some(3)), 1).unwrap(),
            BigUint::from(36u32)
        );
    }

    #[test]
    fn theorem_reports() {
        let t = iterated_wreath(&group("cyclic", Some(2)), 3).unwrap();
        let r = verify_theorem(&t, &normalizer_complement(&t).unwrap());
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.normalizer_order, BigUint::from(128u32));

        let t = iterated_wreath(&group("cyclic", Some(3)), 2).unwrap();
        let r = verify_theorem(&t, &normalizer_complement(&t).unwrap());
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.normalizer_order, BigUint::from(324u32));

        let t = iterated_wreath(&group("cyclic", Some(5)), 1).unwrap();
        let r = verify_theorem(&t, &normalizer_complement(&t).unwrap());
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.normalizer_order, BigUint::from(20u32));
        assert_eq!(r.complement_order, BigUint::from(4u32));
        assert!(r.check("complement-abelian").unwrap().passed);
        assert!(r.check("complement-exponent").unwrap().passed);
    }

    #[test]
    fn report_flags_a_bad_complement() {
        let t = iterated_wreath(&group("cyclic", Some(3)), 2).unwrap();
        let mut comp = normalizer_complement(&t).unwrap();
        comp.gens.push(ComplementGenerator {
            perm: cyc("(0 1)", 9),
            level: 2,
            aut_index: 0,
        });
        let r = verify_theorem(&t, &comp);
        assert!(!r.all_passed());
        let c = r.check("normalizes").unwrap();
        assert!(!c.passed);
        assert!(c.to_string().starts_with("normalizes: FAIL mgen #2"));
    }
}
