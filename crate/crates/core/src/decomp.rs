//! Tensor products of the tableau crystals: decomposition into highest weight
//! components, Littlewood–Richardson multiplicities and the isomorphism `tau_N`
//! onto a disjoint union of copies of `M_N(lambda)`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::crystal::{tensor_seq, Component, Crystal, Signature};
use crate::error::{Error, Result};
use crate::tableaux::{crystal_of, Tableau};
use crate::weights::Partition;

/// The iterated product `M(mu^1) ⊗ ... ⊗ M(mu^l)` (left to right) and its components.
#[derive(Debug, Clone)]
pub struct ProductDecomposition {
    pub factors: Vec<Partition>,
    pub rank: usize,
    pub crystal: Crystal<Vec<Tableau>>,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub multiplicity: usize,
    /// Highest elements of this weight, in enumeration order.
    pub heads: Vec<Vec<Tableau>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub factors: Vec<Partition>,
    pub rank: usize,
    pub entries: BTreeMap<Partition, ReportEntry>,
    pub total: usize,
}

impl DecompositionReport {
    pub fn multiplicity(&self, lambda: &Partition) -> usize {
        lambda
            .with_len(self.rank)
            .ok()
            .and_then(|l| self.entries.get(&l))
            .map_or(0, |e| e.multiplicity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let components: Vec<_> = self
            .entries
            .iter()
            .rev()
            .map(|(lambda, e)| json!({ "lambda": lambda, "multiplicity": e.multiplicity }))
            .collect();
        json!({ "factors": self.factors, "components": components, "total": self.total })
    }
}

fn factor_crystal(mu: &Partition, n: usize) -> Result<Crystal<Vec<Tableau>>> {
    Ok(crystal_of(mu, n)?.map_labels(|t| vec![t]))
}

impl ProductDecomposition {
    pub fn new(factors: &[Partition], n: usize) -> Result<Self> {
        let factors: Vec<Partition> =
            factors.iter().map(|f| f.with_len(n)).collect::<Result<_>>()?;
        let Some((first, rest)) = factors.split_first() else {
            return Err(Error::InvalidWeight("empty factor list".into()));
        };
        let mut crystal = factor_crystal(first, n)?;
        for mu in rest {
            crystal = tensor_seq(&crystal, &factor_crystal(mu, n)?)?;
        }
        let components = crystal.decompose()?;
        Ok(ProductDecomposition { factors, rank: n, crystal, components })
    }

    pub fn report(&self) -> DecompositionReport {
        let mut entries: BTreeMap<Partition, ReportEntry> = BTreeMap::new();
        for h in self.crystal.highest_elements() {
            let lambda = Partition::try_from(self.crystal.weight(h).clone())
                .expect("head weight is dominant");
            let e = entries
                .entry(lambda)
                .or_insert(ReportEntry { multiplicity: 0, heads: Vec::new() });
            e.multiplicity += 1;
            e.heads.push(self.crystal.element(h).clone());
        }
        DecompositionReport {
            factors: self.factors.clone(),
            rank: self.rank,
            entries,
            total: self.crystal.len(),
        }
    }

    /// Every component has the canonical signature of `crystal_of` its head weight.
    pub fn verify_component_isomorphism(&self) -> Result<bool> {
        let mut reference: BTreeMap<Partition, Signature> = BTreeMap::new();
        for c in &self.components {
            let lambda = Partition::try_from(c.weight.clone())?;
            if !reference.contains_key(&lambda) {
                let target = crystal_of(&lambda, self.rank)?;
                let heads = target.highest_elements();
                if heads.len() != 1 {
                    return Ok(false);
                }
                reference.insert(lambda.clone(), target.canonical_signature(heads[0])?);
            }
            if self.crystal.canonical_signature(c.head)? != reference[&lambda] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn decompose_product(factors: &[Partition], n: usize) -> Result<DecompositionReport> {
    Ok(ProductDecomposition::new(factors, n)?.report())
}

/// Number of highest elements of weight `lambda` in `M(mu1) ⊗ M(mu2)`.
pub fn lr_coefficient(mu1: &Partition, mu2: &Partition, lambda: &Partition, n: usize) -> Result<usize> {
    let expected = mu1.size() + mu2.size();
    if lambda.size() != expected {
        return Err(Error::SizeMismatch { expected, actual: lambda.size() });
    }
    let target = lambda.with_len(n)?;
    let prod = ProductDecomposition::new(&[mu1.clone(), mu2.clone()], n)?;
    Ok(prod
        .crystal
        .highest_elements()
        .into_iter()
        .filter(|&h| prod.crystal.weight(h) == target.as_weight())
        .count())
}

/// Image of a product element under `tau_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauImage {
    pub lambda: Partition,
    /// Position of the head among highest elements of weight `lambda`.
    pub component_index: usize,
    pub image: Tableau,
}

/// `tau_N` for a product of two (or more) tableau crystals.
#[derive(Debug, Clone)]
pub struct TauMap {
    pub product: ProductDecomposition,
    targets: BTreeMap<Partition, Crystal<Tableau>>,
    target_heads: BTreeMap<Partition, usize>,
    slots: BTreeMap<usize, (Partition, usize)>,
}

impl TauMap {
    pub fn new(factors: &[Partition], n: usize) -> Result<Self> {
        let product = ProductDecomposition::new(factors, n)?;
        let mut targets = BTreeMap::new();
        let mut target_heads = BTreeMap::new();
        let mut counts: BTreeMap<Partition, usize> = BTreeMap::new();
        let mut slots = BTreeMap::new();
        for h in product.crystal.highest_elements() {
            let lambda = Partition::try_from(product.crystal.weight(h).clone())?;
            if !targets.contains_key(&lambda) {
                let target = crystal_of(&lambda, n)?;
                let heads = target.highest_elements();
                if heads.len() != 1 {
                    return Err(Error::NotHighestWeight(heads.len()));
                }
                target_heads.insert(lambda.clone(), heads[0]);
                targets.insert(lambda.clone(), target);
            }
            let idx = counts.entry(lambda.clone()).or_insert(0);
            slots.insert(h, (lambda, *idx));
            *idx += 1;
        }
        Ok(TauMap { product, targets, target_heads, slots })
    }

    pub fn target(&self, lambda: &Partition) -> Option<&Crystal<Tableau>> {
        self.targets.get(lambda)
    }

    /// `(lambda, slot, index into target crystal)` of product element `x`.
    pub fn image_index(&self, x: usize) -> Result<(Partition, usize, usize)> {
        let (h, path) = self.product.crystal.raise_to_highest(x)?;
        let (lambda, slot) = self.slots[&h].clone();
        let target = &self.targets[&lambda];
        let top = self.target_heads[&lambda];
        let idx = target.lower_along(top, &path).ok_or_else(|| {
            Error::Axiom(format!("raising path of element {x} does not replay in M({lambda})"))
        })?;
        Ok((lambda, slot, idx))
    }

    pub fn image(&self, x: usize) -> Result<TauImage> {
        let (lambda, component_index, idx) = self.image_index(x)?;
        let image = self.targets[&lambda].element(idx).clone();
        Ok(TauImage { lambda, component_index, image })
    }

    /// Checks that `tau_N` is a weight-preserving bijection onto the disjoint union
    /// of the targets that commutes with every `e_k`, `f_k`, `eps_k` and `phi_k`.
    pub fn check_isomorphism(&self) -> Result<()> {
        let c = &self.product.crystal;
        let images: Vec<(Partition, usize, usize)> =
            (0..c.len()).map(|x| self.image_index(x)).collect::<Result<_>>()?;
        let mut seen = std::collections::HashSet::new();
        for img in &images {
            if !seen.insert(img.clone()) {
                return Err(Error::Axiom("tau_N is not injective".into()));
            }
        }
        let mut codomain = 0;
        for (lambda, target) in &self.targets {
            let copies = self.slots.values().filter(|(l, _)| l == lambda).count();
            codomain += copies * target.len();
        }
        if codomain != c.len() {
            return Err(Error::Axiom(format!(
                "tau_N is not surjective: {} elements onto {codomain}",
                c.len()
            )));
        }
        for (x, (lambda, slot, idx)) in images.iter().enumerate() {
            let target = &self.targets[lambda];
            if c.weight(x) != target.weight(*idx) {
                return Err(Error::Axiom(format!("tau_N changes the weight of element {x}")));
            }
            for k in c.colors() {
                if c.eps(x, k) != target.eps(*idx, k) || c.phi(x, k) != target.phi(*idx, k) {
                    return Err(Error::Axiom(format!("tau_N changes eps/phi_{k} at {x}")));
                }
                let expect = |y: Option<usize>, t: Option<usize>| -> Result<()> {
                    let mapped = y.map(|y| images[y].clone());
                    let wanted = t.map(|t| (lambda.clone(), *slot, t));
                    if mapped != wanted {
                        return Err(Error::Axiom(format!("tau_N does not commute with color {k} at {x}")));
                    }
                    Ok(())
                };
                expect(c.e(x, k), target.e(*idx, k))?;
                expect(c.f(x, k), target.f(*idx, k))?;
            }
        }
        Ok(())
    }
}

/// `tau_N` of the pair `x = (left, right)` in `M(mu1) ⊗ M(mu2)`.
pub fn tau_n(mu1: &Partition, mu2: &Partition, n: usize, x: &(Tableau, Tableau)) -> Result<TauImage> {
    let map = TauMap::new(&[mu1.clone(), mu2.clone()], n)?;
    let label = vec![x.0.clone(), x.1.clone()];
    let idx = map
        .product
        .crystal
        .position(&label)
        .ok_or_else(|| Error::InvalidTableau(format!("{} ⊗ {} is not in the product", x.0, x.1)))?;
    map.image(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::{gl2_crystal, tau2};
    use crate::tableaux::highest_tableau;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn mults(r: &DecompositionReport) -> Vec<(String, usize)> {
        r.entries.iter().map(|(l, e)| (l.to_string(), e.multiplicity)).collect()
    }

    #[test]
    fn two_letters() {
        let r = decompose_product(&[p("1,0"), p("1,0")], 2).unwrap();
        assert_eq!(mults(&r), vec![("1,1".into(), 1), ("2,0".into(), 1)]);
        assert_eq!(r.total, 4);
        let js = r.to_json();
        assert_eq!(js["components"][0]["lambda"], "2,0");
        assert_eq!(js["total"], 4);
    }

    #[test]
    fn three_letters() {
        let r = decompose_product(&[p("1"), p("1"), p("1")], 3).unwrap();
        assert_eq!(
            mults(&r),
            vec![("1,1,1".into(), 1), ("2,1,0".into(), 2), ("3,0,0".into(), 1)]
        );
    }

    #[test]
    fn single_factor() {
        let r = decompose_product(&[p("2,1")], 3).unwrap();
        assert_eq!(mults(&r), vec![("2,1,0".into(), 1)]);
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p("1,0"), &p("1,0"), &p("2,0"), 2).unwrap(), 1);
        assert_eq!(
            lr_coefficient(&p("1,1,0,0"), &p("1,1,0,0"), &p("2,1,1,0"), 4).unwrap(),
            1
        );
        assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1"), 3).unwrap(), 2);
        assert!(lr_coefficient(&p("1,0"), &p("1,0"), &p("3,0"), 2).is_err());
    }

    #[test]
    fn components_isomorphic() {
        for (fs, n) in [
            (vec![p("1,0"), p("1,0")], 2),
            (vec![p("2,1"), p("1,0")], 3),
            (vec![p("2,0"), p("2,0")], 2),
        ] {
            let d = ProductDecomposition::new(&fs, n).unwrap();
            assert!(d.verify_component_isomorphism().unwrap());
        }
        let r = decompose_product(&[p("2,0"), p("2,0")], 2).unwrap();
        assert_eq!(
            mults(&r),
            vec![("2,2".into(), 1), ("3,1".into(), 1), ("4,0".into(), 1)]
        );
    }

    #[test]
    fn tau_on_highest_pair() {
        let (m1, m2) = (p("2,1,0"), p("1,1,0"));
        let x = (highest_tableau(&m1, 3).unwrap(), highest_tableau(&m2, 3).unwrap());
        let img = tau_n(&m1, &m2, 3, &x).unwrap();
        assert_eq!(img.lambda, p("3,2,0"));
        assert_eq!(img.image, highest_tableau(&p("3,2,0"), 3).unwrap());
        let map = TauMap::new(&[m1, m2], 3).unwrap();
        map.check_isomorphism().unwrap();
    }

    #[test]
    fn tau_commutes_with_lowering() {
        let map = TauMap::new(&[p("2,1,0"), p("2,0,0")], 3).unwrap();
        let c = &map.product.crystal;
        for x in 0..c.len() {
            let a = map.image(x).unwrap();
            for k in 1..3 {
                if let Some(y) = c.f(x, k) {
                    let b = map.image(y).unwrap();
                    assert_eq!((a.lambda.clone(), a.component_index), (b.lambda.clone(), b.component_index));
                    assert_eq!(a.image.apply_f(k).unwrap(), Some(b.image));
                }
            }
        }
    }

    /// For N = 2 the r0 label of `tau_2` picks out the component `M_2(w1+w2, r0)`,
    /// whose head weight is `(w1+w2-r0, r0)`; the position inside must match too.
    #[test]
    fn tau_n_agrees_with_tau2() {
        for w1 in 0..=4u32 {
            for r1 in 0..=w1 / 2 {
                for w2 in 0..=4u32 {
                    for r2 in 0..=w2 / 2 {
                        let mu1 = Partition::new(vec![w1 - r1, r1]).unwrap();
                        let mu2 = Partition::new(vec![w2 - r2, r2]).unwrap();
                        let map = TauMap::new(&[mu1, mu2], 2).unwrap();
                        let (g1, g2) = (gl2_crystal(w1, r1), gl2_crystal(w2, r2));
                        let c = &map.product.crystal;
                        for x in 0..c.len() {
                            let img = map.image(x).unwrap();
                            let pair = c.element(x);
                            let v1 = pair[0].weight().get(0);
                            let v2 = pair[1].weight().get(0);
                            let a = g1.elements().iter().find(|e| e.v == v1).unwrap();
                            let b = g2.elements().iter().find(|e| e.v == v2).unwrap();
                            let t2 = tau2(*a, *b).unwrap();
                            assert_eq!(img.lambda.get(1), t2.r0());
                            assert_eq!(img.image.weight().get(0), t2.v());
                        }
                    }
                }
            }
        }
    }
}
