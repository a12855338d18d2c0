//! Semistandard tableaux as a model of the highest weight crystals `M_N(lambda)`.
//!
//! Operators act on the arabic reading word (rows right to left, top row first)
//! by the signature rule: letter `k` is `+`, letter `k+1` is `-`, and a `+`
//! immediately to the left of a `-` cancels. The leftmost letter of the word is
//! the first tensor factor, which makes the rule agree with [`crate::crystal::tensor`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::crystal::{tensor_seq, Component, Crystal};
use crate::error::{Error, Result};
use crate::weights::{Partition, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

/// Survivors of the signature rule for one color.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignatureWord {
    /// Word positions of uncancelled `-` symbols, left to right.
    pub minus: Vec<usize>,
    /// Word positions of uncancelled `+` symbols, left to right.
    pub plus: Vec<usize>,
}

impl SignatureWord {
    pub fn of(word: &[u8], k: usize) -> Self {
        let mut sig = SignatureWord::default();
        for (pos, &x) in word.iter().enumerate() {
            if x as usize == k {
                sig.plus.push(pos);
            } else if x as usize == k + 1 {
                if sig.plus.pop().is_none() {
                    sig.minus.push(pos);
                }
            }
        }
        sig
    }

    pub fn eps(&self) -> u32 {
        self.minus.len() as u32
    }

    pub fn phi(&self) -> u32 {
        self.plus.len() as u32
    }

    /// Position rewritten by `e_k`: the rightmost surviving `-`.
    pub fn raise_position(&self) -> Option<usize> {
        self.minus.last().copied()
    }

    /// Position rewritten by `f_k`: the leftmost surviving `+`.
    pub fn lower_position(&self) -> Option<usize> {
        self.plus.first().copied()
    }
}

/// `e_k` on a word.
pub fn word_raise(word: &[u8], k: usize) -> Option<Vec<u8>> {
    let pos = SignatureWord::of(word, k).raise_position()?;
    let mut out = word.to_vec();
    out[pos] = k as u8;
    Some(out)
}

/// `f_k` on a word.
pub fn word_lower(word: &[u8], k: usize) -> Option<Vec<u8>> {
    let pos = SignatureWord::of(word, k).lower_position()?;
    let mut out = word.to_vec();
    out[pos] = k as u8 + 1;
    Some(out)
}

impl Tableau {
    /// Validates shape and semistandardness; `n` bounds the entries and the number of rows.
    pub fn new(rows: Vec<Vec<u8>>, n: usize) -> Result<Self> {
        let rows: Vec<Vec<u8>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.len() > n {
            return Err(Error::InvalidTableau(format!("{} rows exceed n = {n}", rows.len())));
        }
        let mut parts: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        parts.resize(n.max(1), 0);
        let shape = Partition::new(parts)
            .map_err(|_| Error::InvalidTableau("row lengths not weakly decreasing".into()))?;
        let t = Tableau { shape, rows };
        t.validate(n)?;
        Ok(t)
    }

    fn validate(&self, n: usize) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x as usize > n {
                    return Err(Error::InvalidTableau(format!("entry {x} outside 1..={n}")));
                }
                if j > 0 && row[j - 1] > x {
                    return Err(Error::InvalidTableau(format!("row {} decreases", i + 1)));
                }
                if i > 0 && self.rows[i - 1][j] >= x {
                    return Err(Error::InvalidTableau(format!(
                        "column {} not strictly increasing",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Number of letters `N` the tableau is built over.
    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    /// Content vector.
    pub fn weight(&self) -> Weight {
        let mut v = vec![0u32; self.rank()];
        for &x in self.rows.iter().flatten() {
            v[x as usize - 1] += 1;
        }
        Weight::new(v).expect("nonempty")
    }

    /// Rows right to left, top row first.
    pub fn arabic_word(&self) -> Vec<u8> {
        self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
    }

    fn cell_of(&self, mut pos: usize) -> (usize, usize) {
        for (i, row) in self.rows.iter().enumerate() {
            if pos < row.len() {
                return (i, row.len() - 1 - pos);
            }
            pos -= row.len();
        }
        unreachable!("word position out of range")
    }

    fn rewrite(&self, pos: usize, letter: u8) -> Tableau {
        let (i, j) = self.cell_of(pos);
        let mut t = self.clone();
        t.rows[i][j] = letter;
        if let Err(e) = t.validate(self.rank()) {
            panic!("signature rule broke semistandardness of {self}: {e}");
        }
        t
    }

    fn check_color(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.rank() {
            return Err(Error::ColorOutOfRange { k, max: self.rank().saturating_sub(1) });
        }
        Ok(())
    }

    pub fn signature(&self, k: usize) -> SignatureWord {
        SignatureWord::of(&self.arabic_word(), k)
    }

    pub fn apply_e(&self, k: usize) -> Result<Option<Tableau>> {
        self.check_color(k)?;
        Ok(self.signature(k).raise_position().map(|p| self.rewrite(p, k as u8)))
    }

    pub fn apply_f(&self, k: usize) -> Result<Option<Tableau>> {
        self.check_color(k)?;
        Ok(self.signature(k).lower_position().map(|p| self.rewrite(p, k as u8 + 1)))
    }

    pub fn sig_eps(&self, k: usize) -> Result<u32> {
        self.check_color(k)?;
        Ok(self.signature(k).eps())
    }

    pub fn sig_phi(&self, k: usize) -> Result<u32> {
        self.check_color(k)?;
        Ok(self.signature(k).phi())
    }

    /// Parses `[[1,1],[2]]`.
    pub fn parse(s: &str, n: usize) -> Result<Tableau> {
        let bad = || Error::Parse(format!("bad tableau {s:?}"));
        let rows: Vec<Vec<u8>> = serde_json::from_str(s.trim()).map_err(|_| bad())?;
        Tableau::new(rows, n)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        f.write_str("]")
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// A tableau paired with its rank, for [`FromStr`] round trips in tests and the CLI.
impl FromStr for Tableau {
    type Err = Error;

    /// Infers `N` as the largest entry (at least the number of rows).
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<u8>> = serde_json::from_str(s.trim())
            .map_err(|_| Error::Parse(format!("bad tableau {s:?}")))?;
        let n = rows
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(1)
            .max(rows.len() as u8)
            .max(1);
        Tableau::new(rows, n as usize)
    }
}

/// Row `i` filled with the letter `i`.
pub fn highest_tableau(lambda: &Partition, n: usize) -> Result<Tableau> {
    let shape = lambda.with_len(n)?;
    let rows = shape
        .trimmed()
        .iter()
        .enumerate()
        .map(|(i, &len)| vec![i as u8 + 1; len as usize])
        .collect();
    Tableau::new(rows, n)
}

/// All semistandard tableaux of shape `lambda` with entries at most `n`.
pub fn enumerate_tableaux(lambda: &Partition, n: usize) -> Result<Vec<Tableau>> {
    let shape = lambda.with_len(n)?;
    let lens: Vec<usize> = shape.trimmed().iter().map(|&p| p as usize).collect();
    let mut rows: Vec<Vec<u8>> = lens.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();

    fn fill(
        cell: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<u8>>,
        n: u8,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        let Some(&(i, j)) = cells.get(cell) else {
            out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
            return;
        };
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(rows[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(rows[i - 1][j] + 1);
        }
        for x in lo..=n {
            rows[i][j] = x;
            fill(cell + 1, cells, rows, n, shape, out);
        }
    }

    let cells: Vec<(usize, usize)> = lens
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| (0..l).map(move |j| (i, j)))
        .collect();
    fill(0, &cells, &mut rows, n as u8, &shape, &mut out);
    Ok(out)
}

/// The crystal of all tableaux of shape `lambda` over `n` letters.
pub fn crystal_of(lambda: &Partition, n: usize) -> Result<Crystal<Tableau>> {
    let elements = enumerate_tableaux(lambda, n)?;
    Crystal::from_operators(
        n,
        elements,
        Tableau::weight,
        |t, k| t.apply_e(k).expect("color in range"),
        |t, k| t.apply_f(k).expect("color in range"),
    )
}

/// The standard crystal on letters `1..=n`, as one-letter words.
pub fn letter_crystal(n: usize) -> Crystal<Vec<u8>> {
    Crystal::from_operators(
        n,
        (1..=n as u8).map(|x| vec![x]).collect(),
        |w| Weight::unit(n, w[0] as usize - 1),
        |w, k| (w[0] as usize == k + 1).then(|| vec![k as u8]),
        |w, k| (w[0] as usize == k).then(|| vec![k as u8 + 1]),
    )
    .expect("letter crystal is valid")
}

/// `B^{⊗len}` built from the binary tensor rule, associating left to right.
pub fn word_crystal(n: usize, len: usize) -> Result<Crystal<Vec<u8>>> {
    let letters = letter_crystal(n);
    let mut acc = Crystal::from_tables(
        n,
        vec![Vec::new()],
        vec![Weight::zero(n)],
        vec![vec![None]; n.saturating_sub(1)],
        vec![vec![None]; n.saturating_sub(1)],
    )?;
    for _ in 0..len {
        acc = tensor_seq(&acc, &letters)?;
    }
    Ok(acc)
}

/// String data of the `k`-string through `a`: `(w_k, r_k, v_k)` with the string
/// isomorphic to `M_2(w_k, r_k)` and `a` at position `v_k`.
pub fn gl2_string_data<T>(c: &Crystal<T>, a: usize, k: usize) -> (u32, u32, u32) {
    let wt = c.weight(a);
    let wk = wt.get(k - 1) + wt.get(k);
    let len = c.eps(a, k) + c.phi(a, k);
    assert!(len <= wk && (wk - len) % 2 == 0, "k-string length {len} incompatible with w_k = {wk}");
    let rk = (wk - len) / 2;
    let vk = wt.get(k - 1);
    assert!(rk <= vk && vk + rk <= wk, "v_k = {vk} outside [{rk}, {}]", wk - rk);
    (wk, rk, vk)
}

/// Components under the colors in `keep`.
pub fn levi_restrict<T>(c: &Crystal<T>, keep: &[usize]) -> Result<Vec<Component>> {
    c.levi_restrict(keep)
}
