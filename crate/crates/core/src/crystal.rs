//! Finite normal `gl_N`-crystals.
//!
//! A [`Crystal`] is materialized eagerly: elements are stored in a vector, and
//! the Kashiwara operators are index tables where `None` is the absent value.
//! Colors `k` run over `1..N`, `N` being the [`Crystal::rank`]. The string
//! lengths `eps_k` and `phi_k` are always derived from the operators, so every
//! constructed crystal is normal by construction; [`Crystal::check_axioms`]
//! verifies the remaining axioms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Display, Write as _};
use std::hash::Hash;

use serde_json::json;

use crate::error::{Error, Result};
use crate::weights::Weight;

#[derive(Debug, Clone)]
pub struct Crystal<T> {
    rank: usize,
    elements: Vec<T>,
    weights: Vec<Weight>,
    raise: Vec<Vec<Option<usize>>>,
    lower: Vec<Vec<Option<usize>>>,
    eps: Vec<Vec<u32>>,
    phi: Vec<Vec<u32>>,
}

/// A connected component found by [`Crystal::decompose`] or [`Crystal::levi_restrict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub head: usize,
    pub weight: Weight,
    /// Member indices in discovery (breadth-first) order; `members[0] == head`.
    pub members: Vec<usize>,
}

/// Breadth-first serialization of a connected crystal from its highest element.
///
/// Entry `[i][k-1]` is the discovery index of `f_k` applied to the `i`-th
/// visited node, or `None` when `f_k` is absent there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub head_weight: Weight,
    pub table: Vec<Vec<Option<u32>>>,
}

impl Signature {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Element of a direct sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand<A, B> {
    Left(A),
    Right(B),
}

impl<A: Display, B: Display> Display for Summand<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Left(a) => write!(f, "L:{a}"),
            Summand::Right(b) => write!(f, "R:{b}"),
        }
    }
}

/// `(eps, phi)` of a tensor pair from the max-formulas.
pub fn tensor_string_lengths(eps_a: u32, phi_a: u32, eps_b: u32, phi_b: u32) -> (u32, u32) {
    let (ea, pa, eb, pb) = (eps_a as i64, phi_a as i64, eps_b as i64, phi_b as i64);
    let eps = ea.max(ea + eb - pa);
    let phi = pb.max(pa + pb - eb);
    (eps as u32, phi as u32)
}

fn string_length(table: &[Option<usize>], start: usize, limit: usize) -> Result<u32> {
    let mut n = 0u32;
    let mut cur = start;
    while let Some(next) = table[cur] {
        n += 1;
        cur = next;
        if n as usize > limit {
            return Err(Error::Axiom(format!(
                "operator string through element {start} does not terminate"
            )));
        }
    }
    Ok(n)
}

impl<T> Crystal<T> {
    /// Builds a crystal from operator index tables (`raise[k-1][i]`, `lower[k-1][i]`).
    ///
    /// Checks that the tables are mutually inverse and that every string terminates.
    pub fn from_tables(
        rank: usize,
        elements: Vec<T>,
        weights: Vec<Weight>,
        raise: Vec<Vec<Option<usize>>>,
        lower: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = elements.len();
        let colors = rank.saturating_sub(1);
        if weights.len() != n
            || raise.len() != colors
            || lower.len() != colors
            || raise.iter().chain(&lower).any(|t| t.len() != n)
        {
            return Err(Error::Axiom("inconsistent table sizes".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::LengthMismatch { expected: rank, actual: w.len() });
        }
        for k in 0..colors {
            for i in 0..n {
                if let Some(j) = raise[k][i] {
                    if j >= n || lower[k][j] != Some(i) {
                        return Err(Error::Axiom(format!(
                            "e_{} of {i} is {j} but f_{} of {j} is not {i}",
                            k + 1,
                            k + 1
                        )));
                    }
                }
                if let Some(j) = lower[k][i] {
                    if j >= n || raise[k][j] != Some(i) {
                        return Err(Error::Axiom(format!(
                            "f_{} of {i} is {j} but e_{} of {j} is not {i}",
                            k + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let mut eps = vec![vec![0; n]; colors];
        let mut phi = vec![vec![0; n]; colors];
        for k in 0..colors {
            for i in 0..n {
                eps[k][i] = string_length(&raise[k], i, n)?;
                phi[k][i] = string_length(&lower[k], i, n)?;
            }
        }
        Ok(Crystal { rank, elements, weights, raise, lower, eps, phi })
    }

    /// Trivial crystal: zero weights, all operators absent.
    pub fn trivial(elements: Vec<T>, rank: usize) -> Self {
        let n = elements.len();
        let colors = rank.saturating_sub(1);
        Crystal {
            rank,
            weights: vec![Weight::zero(rank); n],
            elements,
            raise: vec![vec![None; n]; colors],
            lower: vec![vec![None; n]; colors],
            eps: vec![vec![0; n]; colors],
            phi: vec![vec![0; n]; colors],
        }
    }

    /// `N`; weights have `N` entries and colors are `1..N`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colors(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank.saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn e(&self, i: usize, k: usize) -> Option<usize> {
        self.raise[k - 1][i]
    }

    pub fn f(&self, i: usize, k: usize) -> Option<usize> {
        self.lower[k - 1][i]
    }

    pub fn eps(&self, i: usize, k: usize) -> u32 {
        self.eps[k - 1][i]
    }

    pub fn phi(&self, i: usize, k: usize) -> u32 {
        self.phi[k - 1][i]
    }

    pub fn is_highest(&self, i: usize) -> bool {
        self.raise.iter().all(|t| t[i].is_none())
    }

    pub fn map_labels<U>(self, f: impl FnMut(T) -> U) -> Crystal<U> {
        Crystal {
            rank: self.rank,
            elements: self.elements.into_iter().map(f).collect(),
            weights: self.weights,
            raise: self.raise,
            lower: self.lower,
            eps: self.eps,
            phi: self.phi,
        }
    }

    /// Verifies the weight, inverse-operator and coroot axioms on every element.
    pub fn check_axioms(&self) -> Result<()> {
        for k in self.colors() {
            for i in 0..self.len() {
                let wt = &self.weights[i];
                if let Some(j) = self.e(i, k) {
                    if wt.add_simple_root(k).as_ref() != Some(&self.weights[j]) {
                        return Err(Error::Axiom(format!("wt(e_{k} a) != wt(a) + alpha_{k}")));
                    }
                    if self.f(j, k) != Some(i) {
                        return Err(Error::Axiom(format!("f_{k} e_{k} a != a")));
                    }
                }
                if let Some(j) = self.f(i, k) {
                    if wt.sub_simple_root(k).as_ref() != Some(&self.weights[j]) {
                        return Err(Error::Axiom(format!("wt(f_{k} a) != wt(a) - alpha_{k}")));
                    }
                    if self.e(j, k) != Some(i) {
                        return Err(Error::Axiom(format!("e_{k} f_{k} a != a")));
                    }
                }
                let pairing = self.phi(i, k) as i64 - self.eps(i, k) as i64;
                if pairing != wt.coroot_pairing(k) {
                    return Err(Error::Axiom(format!(
                        "phi_{k} - eps_{k} = {pairing} but <alpha_{k}^v, wt> = {}",
                        wt.coroot_pairing(k)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of all elements killed by every `e_k`, in enumeration order.
    pub fn highest_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_highest(i)).collect()
    }

    /// Raises `i` greedily (smallest color first) until it is highest.
    ///
    /// Returns the terminal element and the colors to apply as `f_k`, in order,
    /// to get from it back to `i`.
    pub fn raise_to_highest(&self, i: usize) -> Result<(usize, Vec<usize>)> {
        let mut cur = i;
        let mut path = Vec::new();
        'outer: loop {
            for k in self.colors() {
                if let Some(next) = self.e(cur, k) {
                    path.push(k);
                    cur = next;
                    if path.len() > self.len() {
                        return Err(Error::RaisingDiverged(path.len()));
                    }
                    continue 'outer;
                }
            }
            break;
        }
        path.reverse();
        Ok((cur, path))
    }

    /// Applies `f_k` for each color of `path` in order.
    pub fn lower_along(&self, start: usize, path: &[usize]) -> Option<usize> {
        path.iter().try_fold(start, |cur, &k| self.f(cur, k))
    }

    fn neighbors(&self, i: usize, colors: &[usize]) -> impl Iterator<Item = usize> + '_ {
        let colors = colors.to_vec();
        colors
            .into_iter()
            .flat_map(move |k| [self.f(i, k), self.e(i, k)])
            .flatten()
    }

    fn components_with(&self, colors: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(cur) = queue.pop_front() {
                for nb in self.neighbors(cur, colors) {
                    if !seen[nb] {
                        seen[nb] = true;
                        members.push(nb);
                        queue.push_back(nb);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Connected components under the colors in `keep`, each keyed by its unique
    /// element killed by `e_k` for all `k` in `keep`.
    pub fn levi_restrict(&self, keep: &[usize]) -> Result<Vec<Component>> {
        if let Some(&k) = keep.iter().find(|&&k| k == 0 || k >= self.rank) {
            return Err(Error::ColorOutOfRange { k, max: self.rank.saturating_sub(1) });
        }
        let mut comps = Vec::new();
        for (order, raw) in self.components_with(keep).into_iter().enumerate() {
            let heads: Vec<usize> = raw
                .iter()
                .copied()
                .filter(|&i| keep.iter().all(|&k| self.e(i, k).is_none()))
                .collect();
            if heads.len() != 1 {
                return Err(Error::NotHighestWeight(heads.len()));
            }
            let head = heads[0];
            let members = self.bfs_from(head, keep);
            debug_assert_eq!(members.len(), raw.len());
            comps.push((order, Component { head, weight: self.weights[head].clone(), members }));
        }
        comps.sort_by(|(oa, a), (ob, b)| a.weight.cmp(&b.weight).then(oa.cmp(ob)));
        Ok(comps.into_iter().map(|(_, c)| c).collect())
    }

    /// Components under all colors, sorted by head weight then discovery order.
    pub fn decompose(&self) -> Result<Vec<Component>> {
        let all: Vec<usize> = self.colors().collect();
        self.levi_restrict(&all)
    }

    fn bfs_from(&self, root: usize, colors: &[usize]) -> Vec<usize> {
        let mut index = HashMap::from([(root, 0usize)]);
        let mut order = vec![root];
        let mut pos = 0;
        while pos < order.len() {
            let cur = order[pos];
            pos += 1;
            for nb in self.neighbors(cur, colors) {
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(nb) {
                    e.insert(order.len());
                    order.push(nb);
                }
            }
        }
        order
    }

    /// Canonical form of the component headed by `root`.
    ///
    /// Traversal follows only `f_k`, children in color order. Since `f_k` is a
    /// partial function and a highest-weight component is generated from its
    /// head by the `f_k`, the traversal is forced, and two such components are
    /// isomorphic exactly when their signatures coincide.
    pub fn canonical_signature(&self, root: usize) -> Result<Signature> {
        if !self.is_highest(root) {
            return Err(Error::NotHighest);
        }
        let mut index: HashMap<usize, u32> = HashMap::from([(root, 0)]);
        let mut order = vec![root];
        let mut table = Vec::new();
        let mut pos = 0;
        while pos < order.len() {
            let cur = order[pos];
            pos += 1;
            let mut row = Vec::with_capacity(self.rank.saturating_sub(1));
            for k in self.colors() {
                row.push(self.f(cur, k).map(|nb| {
                    *index.entry(nb).or_insert_with(|| {
                        order.push(nb);
                        (order.len() - 1) as u32
                    })
                }));
            }
            table.push(row);
        }
        Ok(Signature { head_weight: self.weights[root].clone(), table })
    }

    /// Number of elements of each weight.
    pub fn character(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }
}

impl<T: Clone + Eq + Hash> Crystal<T> {
    /// Builds a crystal from an element list and operator functions on labels.
    pub fn from_operators(
        rank: usize,
        elements: Vec<T>,
        wt: impl Fn(&T) -> Weight,
        e: impl Fn(&T, usize) -> Option<T>,
        f: impl Fn(&T, usize) -> Option<T>,
    ) -> Result<Self> {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Axiom("duplicate elements".into()));
        }
        let lookup = |x: Option<T>| -> Result<Option<usize>> {
            match x {
                None => Ok(None),
                Some(y) => index
                    .get(&y)
                    .copied()
                    .map(Some)
                    .ok_or_else(|| Error::Axiom("operator leaves the element set".into())),
            }
        };
        let colors = rank.saturating_sub(1);
        let mut raise = vec![vec![None; elements.len()]; colors];
        let mut lower = vec![vec![None; elements.len()]; colors];
        for (i, x) in elements.iter().enumerate() {
            for k in 1..=colors {
                raise[k - 1][i] = lookup(e(x, k))?;
                lower[k - 1][i] = lookup(f(x, k))?;
            }
        }
        let weights = elements.iter().map(wt).collect();
        drop(index);
        Crystal::from_tables(rank, elements, weights, raise, lower)
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }
}

/// Tensor product `A ⊗ B`; the pair `(a, b)` has index `ia * |B| + ib`.
///
/// `e_k(a,b) = (e_k a, b)` if `phi_k(a) >= eps_k(b)`, else `(a, e_k b)`;
/// `f_k(a,b) = (f_k a, b)` if `phi_k(a) > eps_k(b)`, else `(a, f_k b)`.
pub fn tensor<A: Clone, B: Clone>(a: &Crystal<A>, b: &Crystal<B>) -> Result<Crystal<(A, B)>> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let nb = b.len();
    let n = a.len() * nb;
    let colors = a.rank.saturating_sub(1);
    let mut elements = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut raise = vec![vec![None; n]; colors];
    let mut lower = vec![vec![None; n]; colors];
    for ia in 0..a.len() {
        for ib in 0..nb {
            let idx = ia * nb + ib;
            elements.push((a.elements[ia].clone(), b.elements[ib].clone()));
            weights.push(a.weights[ia].checked_add(&b.weights[ib])?);
            for k in 1..=colors {
                let (pa, eb) = (a.phi(ia, k), b.eps(ib, k));
                raise[k - 1][idx] = if pa >= eb {
                    a.e(ia, k).map(|j| j * nb + ib)
                } else {
                    b.e(ib, k).map(|j| ia * nb + j)
                };
                lower[k - 1][idx] = if pa > eb {
                    a.f(ia, k).map(|j| j * nb + ib)
                } else {
                    b.f(ib, k).map(|j| ia * nb + j)
                };
            }
        }
    }
    Crystal::from_tables(a.rank, elements, weights, raise, lower)
}

/// Tensor product with both factors' labels flattened into a sequence.
pub fn tensor_seq<T: Clone>(a: &Crystal<Vec<T>>, b: &Crystal<Vec<T>>) -> Result<Crystal<Vec<T>>> {
    Ok(tensor(a, b)?.map_labels(|(mut x, y)| {
        x.extend(y);
        x
    }))
}

pub fn direct_sum<A: Clone, B: Clone>(
    a: &Crystal<A>,
    b: &Crystal<B>,
) -> Result<Crystal<Summand<A, B>>> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    let off = a.len();
    let shift = |t: &Vec<Option<usize>>| t.iter().map(|x| x.map(|j| j + off)).collect::<Vec<_>>();
    let elements = a
        .elements
        .iter()
        .cloned()
        .map(Summand::Left)
        .chain(b.elements.iter().cloned().map(Summand::Right))
        .collect();
    let weights = a.weights.iter().chain(&b.weights).cloned().collect();
    let join = |ta: &[Vec<Option<usize>>], tb: &[Vec<Option<usize>>]| {
        ta.iter()
            .zip(tb)
            .map(|(x, y)| x.iter().copied().chain(shift(y)).collect())
            .collect()
    };
    Crystal::from_tables(
        a.rank,
        elements,
        weights,
        join(&a.raise, &b.raise),
        join(&a.lower, &b.lower),
    )
}

impl<T: Display> Crystal<T> {
    /// Graphviz rendering; edges are labeled `f_k`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n  rankdir=TB;\n");
        for (i, x) in self.elements.iter().enumerate() {
            let label = format!("{x}\\nwt={}", self.weights[i]).replace('"', "\\\"");
            let _ = writeln!(s, "  n{i} [label=\"{label}\"];");
        }
        for k in self.colors() {
            for i in 0..self.len() {
                if let Some(j) = self.f(i, k) {
                    let _ = writeln!(s, "  n{i} -> n{j} [label=\"f_{k}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering with operator tables as index maps.
    pub fn to_json(&self) -> serde_json::Value {
        let table = |t: &Vec<Vec<Option<usize>>>| -> serde_json::Value {
            t.iter()
                .enumerate()
                .map(|(k, row)| {
                    let map: serde_json::Map<String, serde_json::Value> = row
                        .iter()
                        .enumerate()
                        .filter_map(|(i, x)| x.map(|j| (i.to_string(), json!(j))))
                        .collect();
                    ((k + 1).to_string(), serde_json::Value::Object(map))
                })
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        json!({
            "rank": self.rank,
            "elements": self.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "weights": self.weights,
            "e": table(&self.raise),
            "f": table(&self.lower),
        })
    }
}
