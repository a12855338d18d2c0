//! The explicit `gl_2` crystals `M_2(w, r)` and the labeling map `tau_2`.
//!
//! The element `M_2(v, w, r)` is the component of flags `im t ⊂ F ⊂ ker t` with
//! `dim F = v`, for `t` a nilpotent of rank `r` on a `w`-dimensional space. It
//! is nonempty exactly when `r <= v <= w - r`.

use std::fmt;

use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::weights::{orbit_dim, Partition, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Gl2Elem {
    pub v: u32,
    pub w: u32,
    pub r: u32,
}

impl Gl2Elem {
    pub fn new(v: u32, w: u32, r: u32) -> Result<Self> {
        if r <= v && v + r <= w {
            Ok(Gl2Elem { v, w, r })
        } else {
            Err(Error::InvalidGl2(format!("M_2({v},{w},{r}) is empty")))
        }
    }

    pub fn weight(&self) -> Weight {
        Weight::new(vec![self.v, self.w - self.v]).expect("length 2")
    }

    pub fn eps(&self) -> u32 {
        self.w - self.r - self.v
    }

    pub fn phi(&self) -> u32 {
        self.v - self.r
    }

    pub fn raise(&self) -> Option<Gl2Elem> {
        (self.v < self.w - self.r).then(|| Gl2Elem { v: self.v + 1, ..*self })
    }

    pub fn lower(&self) -> Option<Gl2Elem> {
        (self.v > self.r).then(|| Gl2Elem { v: self.v - 1, ..*self })
    }
}

impl fmt::Display for Gl2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_2({},{},{})", self.v, self.w, self.r)
    }
}

/// `M_2(w, r)`; empty when `2r > w`. Elements are listed by increasing `v`.
pub fn gl2_crystal(w: u32, r: u32) -> Crystal<Gl2Elem> {
    let elements: Vec<Gl2Elem> = if 2 * r > w {
        Vec::new()
    } else {
        (r..=w - r).map(|v| Gl2Elem { v, w, r }).collect()
    };
    Crystal::from_operators(
        2,
        elements,
        Gl2Elem::weight,
        |x, _| x.raise(),
        |x, _| x.lower(),
    )
    .expect("M_2(w, r) is a valid crystal")
}

/// Label of the 2-step Spaltenstein variety `S_2(((w1,r1),(w2,r2)),(w1+w2,r))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct S2Label {
    pub w1: u32,
    pub r1: u32,
    pub w2: u32,
    pub r2: u32,
    pub r: u32,
}

impl S2Label {
    pub fn new(w1: u32, r1: u32, w2: u32, r2: u32, r: u32) -> Self {
        S2Label { w1, r1, w2, r2, r }
    }

    pub fn nonempty(&self) -> bool {
        s2_nonempty(self)
    }
}

impl fmt::Display for S2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S_2((({},{}),({},{})),({},{}))",
            self.w1,
            self.r1,
            self.w2,
            self.r2,
            self.w1 + self.w2,
            self.r
        )
    }
}

/// `r1 + r2 <= r <= min(w2 - r2 + r1, w1 - r1 + r2)`.
pub fn s2_nonempty(l: &S2Label) -> bool {
    let (w1, r1, w2, r2, r) = (l.w1 as i64, l.r1 as i64, l.w2 as i64, l.r2 as i64, l.r as i64);
    r1 + r2 <= r && r <= (w2 - r2 + r1).min(w1 - r1 + r2)
}

fn two_row(w: u32, r: u32) -> Result<Partition> {
    if 2 * r > w {
        return Err(Error::InvalidGl2(format!("no Jordan type ({},{r})", w as i64 - r as i64)));
    }
    Partition::new(vec![w - r, r])
}

/// Dimension of a nonempty `S_2` variety.
pub fn s2_dim(l: &S2Label) -> Result<i64> {
    if !s2_nonempty(l) {
        return Err(Error::InvalidGl2(format!("{l} is empty")));
    }
    let twice = orbit_dim(&two_row(l.w1, l.r1)?) + orbit_dim(&two_row(l.w2, l.r2)?)
        - orbit_dim(&two_row(l.w1 + l.w2, l.r)?);
    if twice % 2 != 0 {
        return Err(Error::HalfInteger { numerator: twice });
    }
    Ok((l.w1 * l.w2) as i64 + twice / 2)
}

/// Image of a pair under `tau_2`: the `S_2` label and the element of `M_2(w1+w2, r0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Tau2Image {
    pub label: S2Label,
    pub elem: Gl2Elem,
}

impl Tau2Image {
    pub fn r0(&self) -> u32 {
        self.label.r
    }

    pub fn v(&self) -> u32 {
        self.elem.v
    }
}

impl fmt::Display for Tau2Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r0={} v={}  {} x {}", self.r0(), self.v(), self.label, self.elem)
    }
}

/// `r0 = min(w2 - v2 + r1, v1 + r2)`, `v = v1 + v2`.
pub fn tau2(a: Gl2Elem, b: Gl2Elem) -> Result<Tau2Image> {
    Gl2Elem::new(a.v, a.w, a.r)?;
    Gl2Elem::new(b.v, b.w, b.r)?;
    let r0 = (b.w - b.v + a.r).min(a.v + b.r);
    let label = S2Label::new(a.w, a.r, b.w, b.r, r0);
    assert!(s2_nonempty(&label), "tau2 produced empty label {label}");
    let elem = Gl2Elem::new(a.v + b.v, a.w + b.w, r0)
        .unwrap_or_else(|_| panic!("tau2 produced an empty M_2 component for {a} ⊗ {b}"));
    Ok(Tau2Image { label, elem })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::tensor;

    fn el(v: u32, w: u32, r: u32) -> Gl2Elem {
        Gl2Elem::new(v, w, r).unwrap()
    }

    #[test]
    fn small_crystals() {
        let c = gl2_crystal(3, 1);
        assert_eq!(c.elements(), &[el(1, 3, 1), el(2, 3, 1)]);
        assert_eq!(c.e(1, 1), None);
        let s = gl2_crystal(2, 1);
        assert_eq!(s.len(), 1);
        assert_eq!(s.weight(0).to_string(), "1,1");
        assert!(s.e(0, 1).is_none() && s.f(0, 1).is_none());
        assert!(gl2_crystal(2, 2).is_empty());
    }

    #[test]
    fn closed_form_strings_match_iteration() {
        for w in 0..=8 {
            for r in 0..=w / 2 {
                let c = gl2_crystal(w, r);
                c.check_axioms().unwrap();
                for (i, x) in c.elements().iter().enumerate() {
                    assert_eq!(c.eps(i, 1), x.eps());
                    assert_eq!(c.phi(i, 1), x.phi());
                }
                let heads = c.highest_elements();
                assert_eq!(heads.len(), 1);
                assert_eq!(c.element(heads[0]).v, w - r);
                assert_eq!(c.weight(heads[0]).entries(), &[w - r, r]);
            }
        }
        // M_2(1,3,1): eps = 1, phi = 0.
        let x = el(1, 3, 1);
        assert_eq!((x.eps(), x.phi()), (1, 0));
    }

    #[test]
    fn tensor_rule_on_gl2_data() {
        let c = gl2_crystal(1, 0);
        let t = tensor(&c, &c).unwrap();
        let idx = |a: u32, b: u32| t.position(&(el(a, 1, 0), el(b, 1, 0))).unwrap();
        assert_eq!(t.e(idx(1, 0), 1), None);
        assert_eq!(t.e(idx(0, 0), 1), Some(idx(0, 1)));
        assert_eq!(t.f(idx(1, 0), 1), None);
        let (h, path) = t.raise_to_highest(idx(0, 0)).unwrap();
        assert_eq!(h, idx(1, 1));
        assert_eq!(path, vec![1, 1]);
    }

    #[test]
    fn lowest_element_raises_to_top() {
        let c = gl2_crystal(5, 1);
        let (h, path) = c.raise_to_highest(0).unwrap();
        assert_eq!(c.element(h).v, 4);
        assert_eq!(path.len(), 3);
    }

    #[test]
    fn s2_examples() {
        assert!(s2_nonempty(&S2Label::new(1, 0, 1, 0, 1)));
        assert!(!s2_nonempty(&S2Label::new(1, 0, 1, 0, 2)));
        for (w1, r1, w2, r2) in [(3, 1, 4, 2), (2, 0, 5, 1), (6, 3, 6, 3)] {
            assert!(s2_nonempty(&S2Label::new(w1, r1, w2, r2, r1 + r2)));
        }
        assert_eq!(s2_dim(&S2Label::new(1, 0, 1, 0, 0)).unwrap(), 1);
        assert_eq!(s2_dim(&S2Label::new(1, 0, 1, 0, 1)).unwrap(), 0);
        // 4 + (2 + 2 - 8) / 2
        assert_eq!(s2_dim(&S2Label::new(2, 1, 2, 1, 2)).unwrap(), 2);
        assert!(s2_dim(&S2Label::new(1, 0, 1, 0, 2)).is_err());
    }

    #[test]
    fn tau2_examples() {
        let t = tau2(el(1, 1, 0), el(0, 1, 0)).unwrap();
        assert_eq!((t.r0(), t.v()), (1, 1));
        let t = tau2(el(1, 1, 0), el(1, 1, 0)).unwrap();
        assert_eq!((t.r0(), t.v()), (0, 2));
        let t = tau2(el(0, 1, 0), el(0, 1, 0)).unwrap();
        assert_eq!((t.r0(), t.v()), (0, 0));
        assert!(tau2(Gl2Elem { v: 2, w: 1, r: 0 }, el(0, 1, 0)).is_err());
    }

    #[test]
    fn multiplicity_free_and_counts() {
        for w1 in 0..=6 {
            for r1 in 0..=w1 / 2 {
                for w2 in 0..=6 {
                    for r2 in 0..=w2 / 2 {
                        let total: usize = (0..=(w1 + w2) / 2)
                            .filter(|&r| s2_nonempty(&S2Label::new(w1, r1, w2, r2, r)))
                            .map(|r| gl2_crystal(w1 + w2, r).len())
                            .sum();
                        assert_eq!(
                            total,
                            gl2_crystal(w1, r1).len() * gl2_crystal(w2, r2).len()
                        );
                    }
                }
            }
        }
    }
}
