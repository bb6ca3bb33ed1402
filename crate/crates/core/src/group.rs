//! Free words, surface group presentations and their automorphisms.
//!
//! Word syntax: a lowercase letter is a generator (`a` = 0, `b` = 1, …),
//! uppercase is its inverse. Generators past 26 are written `x26`, `X26`.
//! The empty string and `1` denote the identity.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::exact_linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators of a free group.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        FreeWord(vec![Letter::new(gen, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        FreeWord::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Largest generator index plus one (0 for the identity).
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    /// Exponent-sum vector of length `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for l in &self.0 {
            v[l.gen] += l.sign();
        }
        v
    }

    /// Splits `self = u·c·u⁻¹` with `c` cyclically reduced; returns `(u, c)`.
    pub fn cyclic_reduction(&self) -> (FreeWord, FreeWord) {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == w[w.len() - 1 - k].inv() {
            k += 1;
        }
        (
            FreeWord(w[..k].to_vec()),
            FreeWord(w[k..w.len() - k].to_vec()),
        )
    }

    /// Parses the word syntax described in the module docs.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.as_slice() == ['1'] {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if (c == 'x' || c == 'X') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[i + 1..j].iter().collect();
                let gen: usize = digits
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad generator index in {s:?}")))?;
                letters.push(Letter::new(gen, c == 'X'));
                i = j;
            } else if c.is_ascii_lowercase() {
                letters.push(Letter::new((c as u8 - b'a') as usize, false));
                i += 1;
            } else if c.is_ascii_uppercase() {
                letters.push(Letter::new((c as u8 - b'A') as usize, true));
                i += 1;
            } else {
                return domain_err(format!("unexpected character {c:?} in word {s:?}"));
            }
        }
        Ok(FreeWord::new(letters))
    }

    /// Formats with letters when every generator fits in `a..z` and `rank ≤ 26`,
    /// otherwise with indexed `x`/`X` syntax.
    pub fn format(&self, rank: usize) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let letters = rank <= 26 && self.generator_bound() <= 26;
        let mut s = String::new();
        for l in &self.0 {
            if letters {
                let base = if l.inverse { b'A' } else { b'a' };
                s.push((base + l.gen as u8) as char);
            } else {
                s.push(if l.inverse { 'X' } else { 'x' });
                s.push_str(&l.gen.to_string());
            }
        }
        s
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(self.generator_bound()))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceKind {
    /// Punctured surface; the fundamental group is free.
    Free,
    /// Closed surface of the given genus.
    Closed { genus: usize },
}

/// Presentation of the fundamental group of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePresentation {
    pub rank: usize,
    #[serde(flatten)]
    pub kind: SurfaceKind,
}

impl SurfacePresentation {
    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return domain_err("free group of rank 0");
        }
        Ok(SurfacePresentation {
            rank,
            kind: SurfaceKind::Free,
        })
    }

    pub fn closed(genus: usize) -> Result<Self> {
        if genus == 0 {
            return domain_err("closed surface of genus 0 has trivial fundamental group");
        }
        Ok(SurfacePresentation {
            rank: 2 * genus,
            kind: SurfaceKind::Closed { genus },
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            SurfaceKind::Free if self.rank == 0 => domain_err("free group of rank 0"),
            SurfaceKind::Closed { genus } if genus == 0 || self.rank != 2 * genus => {
                domain_err("closed surface needs rank = 2·genus with genus ≥ 1")
            }
            _ => Ok(()),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, SurfaceKind::Closed { .. })
    }

    /// Standard relator `[a1,b1]…[ag,bg]` with generators ordered a1, b1, a2, b2, …
    pub fn relator(&self) -> Option<FreeWord> {
        match self.kind {
            SurfaceKind::Free => None,
            SurfaceKind::Closed { genus } => Some(FreeWord::new((0..genus).flat_map(|k| {
                let (a, b) = (2 * k, 2 * k + 1);
                [
                    Letter::new(a, false),
                    Letter::new(b, false),
                    Letter::new(a, true),
                    Letter::new(b, true),
                ]
            }))),
        }
    }

    /// Rank of `H_1(S, Z)`.
    pub fn h1_rank(&self) -> usize {
        self.rank
    }

    /// `|χ(S)|`: `r − 1` for a free group of rank `r`, `2g − 2` for genus `g`.
    pub fn euler_characteristic_abs(&self) -> usize {
        match self.kind {
            SurfaceKind::Free => self.rank - 1,
            SurfaceKind::Closed { genus } => 2 * genus - 2,
        }
    }

    /// Decides `w = 1` in the surface group.
    pub fn is_trivial(&self, w: &FreeWord) -> bool {
        match self.kind {
            SurfaceKind::Free => w.is_empty(),
            SurfaceKind::Closed { genus: 1 } => w.exponent_sums(2).iter().all(|&e| e == 0),
            SurfaceKind::Closed { .. } => dehn_reduce(w, &self.relator().expect("closed")).is_empty(),
        }
    }
}

/// Dehn's algorithm: repeatedly replaces any subword that is more than half
/// of a cyclic permutation of `r^{±1}` by the inverse of the complementary
/// part. For the surface relator with genus ≥ 2 the result is empty iff the
/// word is trivial.
pub fn dehn_reduce(w: &FreeWord, r: &FreeWord) -> FreeWord {
    let len = r.len();
    let mut rotations: Vec<Vec<Letter>> = Vec::with_capacity(2 * len);
    for base in [r.clone(), r.inverse()] {
        let l = base.letters();
        for k in 0..len {
            rotations.push(l[k..].iter().chain(&l[..k]).copied().collect());
        }
    }
    let mut cur = w.clone();
    'outer: loop {
        let letters = cur.letters();
        for start in 0..letters.len() {
            for rot in &rotations {
                let mut k = 0;
                while k < len && start + k < letters.len() && letters[start + k] == rot[k] {
                    k += 1;
                }
                if 2 * k > len {
                    let replacement = FreeWord(rot[k..].to_vec()).inverse();
                    let next = FreeWord::new(
                        letters[..start]
                            .iter()
                            .chain(replacement.letters())
                            .chain(&letters[start + k..])
                            .copied(),
                    );
                    cur = next;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

/// Automorphism of a free or surface group, stored with verified inverse images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    domain: SurfacePresentation,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

/// How the relator of a closed surface maps: `ψ(r) = w·r^ε·w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorImage {
    pub conjugator: FreeWord,
    /// +1 when orientation is preserved.
    pub orientation: i32,
}

/// An elementary Nielsen transformation `x_i ↦ x_i·x_j^{±1}` (right) or
/// `x_i ↦ x_j^{±1}·x_i` (left).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct NielsenMove {
    target: usize,
    other: Letter,
    right: bool,
}

impl NielsenMove {
    fn apply_to_tuple(&self, t: &mut [FreeWord]) {
        let o = if self.other.inverse {
            t[self.other.gen].inverse()
        } else {
            t[self.other.gen].clone()
        };
        t[self.target] = if self.right {
            t[self.target].concat(&o)
        } else {
            o.concat(&t[self.target])
        };
    }

    fn image_of(&self, l: Letter) -> FreeWord {
        if l.gen != self.target {
            return FreeWord(vec![l]);
        }
        let base = FreeWord(vec![Letter::new(self.target, false)]);
        let o = FreeWord(vec![self.other]);
        let img = if self.right { base.concat(&o) } else { o.concat(&base) };
        if l.inverse {
            img.inverse()
        } else {
            img
        }
    }

    fn apply_to_word(&self, w: &FreeWord) -> FreeWord {
        FreeWord::new(
            w.letters()
                .iter()
                .flat_map(|&l| self.image_of(l).0.into_iter()),
        )
    }
}

fn substitute(images: &[FreeWord], w: &FreeWord) -> FreeWord {
    FreeWord::new(w.letters().iter().flat_map(|l| {
        let img = &images[l.gen];
        if l.inverse {
            img.inverse().0
        } else {
            img.0.clone()
        }
    }))
}

impl Automorphism {
    pub fn identity(domain: SurfacePresentation) -> Self {
        let gens: Vec<FreeWord> = (0..domain.rank).map(FreeWord::generator).collect();
        Automorphism {
            domain,
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// Builds an automorphism from images and inverse images, checking that
    /// they are mutually inverse (modulo the relator for closed surfaces) and
    /// that a closed surface relator maps to a conjugate of itself or its inverse.
    pub fn new(
        domain: SurfacePresentation,
        images: Vec<FreeWord>,
        inverse_images: Vec<FreeWord>,
    ) -> Result<Self> {
        domain.validate()?;
        if images.len() != domain.rank || inverse_images.len() != domain.rank {
            return domain_err(format!(
                "expected {} images and inverse images, got {} and {}",
                domain.rank,
                images.len(),
                inverse_images.len()
            ));
        }
        for w in images.iter().chain(&inverse_images) {
            if w.generator_bound() > domain.rank {
                return domain_err(format!(
                    "word {w} uses a generator outside rank {}",
                    domain.rank
                ));
            }
        }
        let a = Automorphism {
            domain,
            images,
            inverse_images,
        };
        for g in 0..domain.rank {
            let x = FreeWord::generator(g);
            for round_trip in [
                substitute(&a.inverse_images, &a.images[g]),
                substitute(&a.images, &a.inverse_images[g]),
            ] {
                if !domain.is_trivial(&round_trip.concat(&x.inverse())) {
                    return domain_err(format!(
                        "inverse images do not invert generator {}",
                        x.format(domain.rank)
                    ));
                }
            }
        }
        if domain.is_closed() {
            a.relator_image()?;
        }
        Ok(a)
    }

    /// Builds an automorphism from images alone, finding the inverse by
    /// Nielsen reduction of the image tuple. Fails when the images do not
    /// form a basis, or the length-preserving search runs out of budget.
    pub fn from_images(domain: SurfacePresentation, images: Vec<FreeWord>) -> Result<Self> {
        domain.validate()?;
        if images.len() != domain.rank {
            return domain_err(format!(
                "expected {} images, got {}",
                domain.rank,
                images.len()
            ));
        }
        if images.iter().any(|w| w.generator_bound() > domain.rank) {
            return domain_err("image uses a generator outside the rank");
        }
        let inverse = nielsen_inverse(&images)?;
        Self::new(domain, images, inverse)
    }

    /// `σ_i` (0-based `i`) acting on the free group of rank `n`:
    /// `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`; `inverse` gives `σ_i⁻¹`.
    pub fn braid_generator(n: usize, i: usize, inverse: bool) -> Result<Self> {
        if i + 1 >= n {
            return domain_err(format!("braid generator σ{} needs rank ≥ {}", i + 1, i + 2));
        }
        let domain = SurfacePresentation::free(n)?;
        let xi = Letter::new(i, false);
        let xj = Letter::new(i + 1, false);
        let mut fwd: Vec<FreeWord> = (0..n).map(FreeWord::generator).collect();
        let mut bwd = fwd.clone();
        fwd[i] = FreeWord::new([xi, xj, xi.inv()]);
        fwd[i + 1] = FreeWord::new([xi]);
        bwd[i] = FreeWord::new([xj]);
        bwd[i + 1] = FreeWord::new([xj.inv(), xi, xj]);
        let (images, inverse_images) = if inverse { (bwd, fwd) } else { (fwd, bwd) };
        Ok(Automorphism {
            domain,
            images,
            inverse_images,
        })
    }

    /// Parses a braid word such as `"s1 S2"` or `"1 -2"` (1-based generator
    /// indices; `S`/negative means inverse). The leftmost letter acts first.
    pub fn from_braid_word(n: usize, word: &str) -> Result<Self> {
        let mut acc = Automorphism::identity(SurfacePresentation::free(n)?);
        for (idx, inverse) in parse_braid_word(word)? {
            let g = Automorphism::braid_generator(n, idx, inverse)?;
            acc = g.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Elementary transvection `x_i ↦ x_i·x_j` (or `x_j·x_i` when `left`).
    pub fn transvection(domain: SurfacePresentation, i: usize, j: usize, left: bool) -> Result<Self> {
        if i == j || i >= domain.rank || j >= domain.rank {
            return domain_err("transvection needs distinct in-range generators");
        }
        let mv = NielsenMove {
            target: i,
            other: Letter::new(j, false),
            right: !left,
        };
        let inv_mv = NielsenMove {
            target: i,
            other: Letter::new(j, true),
            right: !left,
        };
        let gens: Vec<FreeWord> = (0..domain.rank).map(FreeWord::generator).collect();
        let images = gens.iter().map(|w| mv.apply_to_word(w)).collect();
        let inverse_images = gens.iter().map(|w| inv_mv.apply_to_word(w)).collect();
        Ok(Automorphism {
            domain,
            images,
            inverse_images,
        })
    }

    pub fn domain(&self) -> &SurfacePresentation {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.domain.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.generator_bound() > self.domain.rank {
            return domain_err(format!(
                "word {w} uses a generator outside rank {}",
                self.domain.rank
            ));
        }
        Ok(substitute(&self.images, w))
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.domain != other.domain {
            return domain_err("composition of automorphisms on different domains");
        }
        Ok(Automorphism {
            domain: self.domain,
            images: other.images.iter().map(|w| substitute(&self.images, w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| substitute(&other.inverse_images, w))
                .collect(),
        })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            domain: self.domain,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn power(&self, k: u64) -> Automorphism {
        let mut acc = Automorphism::identity(self.domain);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same domain");
        }
        acc
    }

    /// Induced map on `H_1 = Z^rank`; column `j` is the exponent-sum vector of `ψ(x_j)`.
    pub fn abelianization_matrix(&self) -> IntMatrix {
        let r = self.domain.rank;
        let mut m = IntMatrix::zeros(r, r);
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums(r).into_iter().enumerate() {
                m.set(i, j, e.into());
            }
        }
        m
    }

    /// For a closed surface, the conjugator and orientation sign with
    /// `ψ(r) = w·r^ε·w⁻¹` in the free group. Errors if no such form exists.
    pub fn relator_image(&self) -> Result<RelatorImage> {
        let Some(r) = self.domain.relator() else {
            return domain_err("free groups have no relator");
        };
        let image = substitute(&self.images, &r);
        let (u, c) = image.cyclic_reduction();
        for (eps, target) in [(1, r.clone()), (-1, r.inverse())] {
            let t = target.letters();
            if c.len() != t.len() {
                continue;
            }
            for k in 0..t.len() {
                // target = p·s with |p| = k; c = s·p means c = p⁻¹·target·p.
                let rotated: Vec<Letter> = t[k..].iter().chain(&t[..k]).copied().collect();
                if rotated == c.letters() {
                    let p = FreeWord(t[..k].to_vec());
                    return Ok(RelatorImage {
                        conjugator: u.concat(&p.inverse()),
                        orientation: eps,
                    });
                }
            }
        }
        Err(Error::Domain(
            "relator image is not conjugate to the relator or its inverse".into(),
        ))
    }
}

fn parse_braid_word(word: &str) -> Result<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' || c == '*' || c == '.' {
            i += 1;
            continue;
        }
        let inverse = match c {
            's' | 'σ' => false,
            'S' | '-' => true,
            d if d.is_ascii_digit() => false,
            _ => return domain_err(format!("unexpected {c:?} in braid word {word:?}")),
        };
        if !c.is_ascii_digit() {
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[start..i].iter().collect();
        let mut idx: usize = digits
            .parse()
            .map_err(|_| Error::Domain(format!("missing index in braid word {word:?}")))?;
        if idx == 0 {
            return domain_err("braid generators are 1-based");
        }
        idx -= 1;
        // "s1^-1" / "s1⁻¹" suffixes
        let mut inv = inverse;
        let rest: String = chars[i..].iter().take(3).collect();
        if rest.starts_with("^-1") {
            inv = !inv;
            i += 3;
        } else if rest.starts_with("⁻¹") {
            inv = !inv;
            i += 2;
        }
        out.push((idx, inv));
    }
    Ok(out)
}

/// Inverse images of a free basis given as a tuple of words, by greedy
/// Nielsen length reduction down to a signed permutation of the letters.
fn all_moves(n: usize) -> Vec<NielsenMove> {
    let mut out = Vec::new();
    for target in 0..n {
        for other in (0..n).filter(|&o| o != target) {
            for inverse in [false, true] {
                for right in [true, false] {
                    out.push(NielsenMove {
                        target,
                        other: Letter::new(other, inverse),
                        right,
                    });
                }
            }
        }
    }
    out
}

fn total_length(t: &[FreeWord]) -> usize {
    t.iter().map(FreeWord::len).sum()
}

fn is_signed_permutation(t: &[FreeWord]) -> bool {
    let mut seen = vec![false; t.len()];
    t.iter()
        .all(|w| w.len() == 1 && !std::mem::replace(&mut seen[w.0[0].gen], true))
}

/// Strictly length-reducing move with the smallest resulting length.
fn best_reducing_move(t: &[FreeWord], moves: &[NielsenMove]) -> Option<NielsenMove> {
    let cur = total_length(t);
    let mut best: Option<(usize, NielsenMove)> = None;
    for mv in moves {
        let mut trial = t.to_vec();
        mv.apply_to_tuple(&mut trial);
        let len = total_length(&trial);
        if len < cur && best.as_ref().is_none_or(|(b, _)| len < *b) {
            best = Some((len, *mv));
        }
    }
    best.map(|(_, mv)| mv)
}

const PLATEAU_BUDGET: usize = 200_000;

/// Breadth-first search through length-preserving moves for a tuple that
/// admits a reducing move. Returns the path of moves to it.
fn escape_plateau(t: &[FreeWord], moves: &[NielsenMove]) -> Option<Vec<NielsenMove>> {
    let cur = total_length(t);
    let mut seen: HashMap<Vec<FreeWord>, usize> = HashMap::new();
    // (tuple, parent index, move from parent)
    let mut nodes: Vec<(Vec<FreeWord>, usize, Option<NielsenMove>)> = vec![(t.to_vec(), 0, None)];
    seen.insert(t.to_vec(), 0);
    let mut head = 0;
    while head < nodes.len() && nodes.len() < PLATEAU_BUDGET {
        let state = nodes[head].0.clone();
        for mv in moves {
            let mut next = state.clone();
            mv.apply_to_tuple(&mut next);
            if total_length(&next) != cur || seen.contains_key(&next) {
                continue;
            }
            let done = is_signed_permutation(&next) || best_reducing_move(&next, moves).is_some();
            seen.insert(next.clone(), nodes.len());
            nodes.push((next, head, Some(*mv)));
            if done {
                let mut path = Vec::new();
                let mut i = nodes.len() - 1;
                while let Some(m) = nodes[i].2 {
                    path.push(m);
                    i = nodes[i].1;
                }
                path.reverse();
                return Some(path);
            }
        }
        head += 1;
    }
    None
}

/// Nielsen reduction down to a signed permutation of the letters. Reducing
/// moves are taken greedily; when none exists, length-preserving moves are
/// searched until one does.
fn nielsen_inverse(images: &[FreeWord]) -> Result<Vec<FreeWord>> {
    let n = images.len();
    let all = all_moves(n);
    let mut t = images.to_vec();
    let mut moves: Vec<NielsenMove> = Vec::new();
    while !is_signed_permutation(&t) {
        if let Some(mv) = best_reducing_move(&t, &all) {
            mv.apply_to_tuple(&mut t);
            moves.push(mv);
            continue;
        }
        match escape_plateau(&t, &all) {
            Some(path) => {
                for mv in path {
                    mv.apply_to_tuple(&mut t);
                    moves.push(mv);
                }
            }
            None => {
                return domain_err(
                    "images are not Nielsen-reducible to a basis; supply inverse images",
                )
            }
        }
    }
    // t[k] = x_{σ(k)}^{e_k}, so the inverse of that permutation sends x_{σ(k)} to x_k^{e_k}.
    let mut inv = vec![FreeWord::identity(); n];
    for (k, w) in t.iter().enumerate() {
        let l = w.0[0];
        inv[l.gen] = FreeWord(vec![Letter::new(k, l.inverse)]);
    }
    for mv in moves.iter().rev() {
        inv = inv.iter().map(|w| mv.apply_to_word(w)).collect();
    }
    Ok(inv)
}
