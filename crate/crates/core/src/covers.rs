//! Finite covers of surface groups, Reidemeister–Schreier bases for their
//! first homology, and lifts of automorphisms to those covers.
//!
//! A cover is encoded by the right action of the base generators on cosets.
//! Cosets are numbered in breadth-first order from the basepoint coset 0,
//! following generators in index order; the BFS tree edges form the Schreier
//! transversal and every non-tree edge `(c, j)` contributes the Schreier
//! generator `rep(c)·x_j·rep(c·x_j)⁻¹`. For a free base these generators are
//! a basis of `H_1` of the cover. For a closed base the relator read from
//! every coset is a 2-cell and `H_1` is the quotient by those boundaries.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::exact_linalg::{cokernel, smith_normal_form, IntMatrix};
use crate::group::{Automorphism, FreeWord, Letter, SurfacePresentation};

pub const DEFAULT_MAX_PERMUTATION_DEGREE: usize = 4096;
pub const DEFAULT_MAX_ABELIAN_DEGREE: usize = 1_000_000;
pub const MAX_DEGREE_ENV: &str = "FIBERTOR_MAX_DEGREE";

/// Degree caps beyond which cover construction is refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverLimits {
    pub max_permutation_degree: usize,
    pub max_abelian_degree: usize,
}

impl Default for CoverLimits {
    fn default() -> Self {
        CoverLimits {
            max_permutation_degree: DEFAULT_MAX_PERMUTATION_DEGREE,
            max_abelian_degree: DEFAULT_MAX_ABELIAN_DEGREE,
        }
    }
}

impl CoverLimits {
    /// Defaults, with both caps replaced by `FIBERTOR_MAX_DEGREE` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_DEGREE_ENV) {
            Ok(v) => {
                let cap: usize = v.trim().parse().map_err(|_| {
                    Error::Domain(format!("{MAX_DEGREE_ENV} must be a positive integer, got {v:?}"))
                })?;
                Ok(CoverLimits {
                    max_permutation_degree: cap,
                    max_abelian_degree: cap,
                })
            }
            Err(_) => Ok(CoverLimits::default()),
        }
    }
}

/// A homomorphism from the free group on the base generators onto a subgroup
/// of `⊕ Z/moduli[i]`, given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianQuotient {
    pub moduli: Vec<u64>,
    /// `images[j][i]` is the `i`-th coordinate of the image of generator `j`.
    pub images: Vec<Vec<u64>>,
}

impl AbelianQuotient {
    pub fn new(moduli: Vec<u64>, images: Vec<Vec<i64>>) -> Result<Self> {
        if moduli.contains(&0) {
            return domain_err("abelian quotient moduli must be positive");
        }
        let mut reduced = Vec::with_capacity(images.len());
        for img in images {
            if img.len() != moduli.len() {
                return domain_err(format!(
                    "generator image has {} coordinates, expected {}",
                    img.len(),
                    moduli.len()
                ));
            }
            reduced.push(
                img.iter()
                    .zip(&moduli)
                    .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
                    .collect(),
            );
        }
        Ok(AbelianQuotient {
            moduli,
            images: reduced,
        })
    }

    /// Order of `⊕ Z/moduli[i]`.
    pub fn group_order(&self) -> BigInt {
        self.moduli.iter().map(|&m| BigInt::from(m)).product()
    }

    /// Order of the subgroup generated by `gens` (columns of coordinates).
    pub fn subgroup_order(&self, gens: &[Vec<u64>]) -> BigInt {
        let k = self.moduli.len();
        if k == 0 {
            return BigInt::one();
        }
        let mut m = IntMatrix::zeros(k, k + gens.len());
        for (i, &mi) in self.moduli.iter().enumerate() {
            m.set(i, i, mi.into());
        }
        for (j, g) in gens.iter().enumerate() {
            for i in 0..k {
                m.set(i, k + j, g[i].into());
            }
        }
        let index = cokernel(&m).expect("nonempty").torsion_order;
        self.group_order() / index
    }

    pub fn image_order(&self) -> BigInt {
        self.subgroup_order(&self.images)
    }

    fn add(&self, x: &[u64], j: usize, sign: i64) -> Vec<u64> {
        x.iter()
            .zip(&self.images[j])
            .zip(&self.moduli)
            .map(|((&a, &b), &m)| {
                if sign > 0 {
                    (a + b) % m
                } else {
                    (a + m - b) % m
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CoverKind {
    Abelian {
        quotient: AbelianQuotient,
        /// The reduction modulus `N` for homology and coinvariant covers.
        modulus: Option<u64>,
        coinvariant: bool,
    },
    /// Right action of each generator on `0..degree`: `c·x_j = images[j][c]`.
    Permutation { images: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub base: SurfacePresentation,
    pub kind: CoverKind,
    pub degree: usize,
}

impl CoverSpec {
    /// Cover induced by an abelian quotient of the base group.
    pub fn abelian(base: SurfacePresentation, quotient: AbelianQuotient) -> Result<Self> {
        Self::abelian_tagged(base, quotient, None, false)
    }

    fn abelian_tagged(
        base: SurfacePresentation,
        quotient: AbelianQuotient,
        modulus: Option<u64>,
        coinvariant: bool,
    ) -> Result<Self> {
        base.validate()?;
        if quotient.images.len() != base.rank {
            return domain_err(format!(
                "abelian quotient gives {} generator images, base rank is {}",
                quotient.images.len(),
                base.rank
            ));
        }
        let order = quotient.image_order();
        let degree = order.to_usize().ok_or_else(|| Error::ScaleCap {
            what: "abelian cover degree".into(),
            requested: order.to_u128().unwrap_or(u128::MAX),
            cap: usize::MAX as u128,
        })?;
        Ok(CoverSpec {
            base,
            kind: CoverKind::Abelian {
                quotient,
                modulus,
                coinvariant,
            },
            degree,
        })
    }

    /// The mod-`N` homology cover `π_1 → H_1(S, Z/N)`.
    pub fn homology(base: SurfacePresentation, n: u64) -> Result<Self> {
        if n == 0 {
            return domain_err("modulus must be positive");
        }
        let r = base.rank;
        let images = (0..r)
            .map(|j| (0..r).map(|i| i64::from(i == j)).collect())
            .collect();
        let q = AbelianQuotient::new(vec![n; r], images)?;
        let q = drop_trivial_moduli(q);
        Self::abelian_tagged(base, q, Some(n), false)
    }

    /// Cover given by permutation images; checked for transitivity and, for a
    /// closed base, for the relator acting trivially.
    pub fn permutation(base: SurfacePresentation, images: Vec<Vec<usize>>) -> Result<Self> {
        base.validate()?;
        if images.len() != base.rank {
            return domain_err(format!(
                "{} permutation images for base rank {}",
                images.len(),
                base.rank
            ));
        }
        let d = images[0].len();
        if d == 0 {
            return domain_err("permutation cover of degree 0");
        }
        for p in &images {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&x| x >= d || std::mem::replace(&mut seen[x], true)) {
                return domain_err("generator images are not permutations of a common set");
            }
        }
        Ok(CoverSpec {
            base,
            kind: CoverKind::Permutation { images },
            degree: d,
        })
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, CoverKind::Abelian { .. })
    }
}

fn drop_trivial_moduli(q: AbelianQuotient) -> AbelianQuotient {
    let keep: Vec<usize> = (0..q.moduli.len()).filter(|&i| q.moduli[i] > 1).collect();
    AbelianQuotient {
        moduli: keep.iter().map(|&i| q.moduli[i]).collect(),
        images: q
            .images
            .iter()
            .map(|img| keep.iter().map(|&i| img[i]).collect())
            .collect(),
    }
}

/// The cover of `π_1(S) → (H_1(S)/image(ψ_* − I)) ⊗ Z/N`. Its kernel is
/// ψ-invariant, so ψ always lifts.
pub fn coinvariant_cover_spec(a: &Automorphism, n: u64) -> Result<CoverSpec> {
    if n < 2 {
        return domain_err(format!("coinvariant cover needs N ≥ 2, got {n}"));
    }
    let r = a.rank();
    let stacked = a
        .abelianization_matrix()
        .minus_identity()?
        .hstack(&IntMatrix::identity(r).scaled(&BigInt::from(n)))?;
    let snf = smith_normal_form(&stacked)?;
    let mut moduli = Vec::new();
    let mut rows = Vec::new();
    for (i, f) in snf.invariant_factors.iter().enumerate() {
        if !f.is_one() {
            moduli.push(f.to_u64().expect("divides N"));
            rows.push(i);
        }
    }
    let images = (0..r)
        .map(|j| {
            rows.iter()
                .zip(&moduli)
                .map(|(&i, &m)| {
                    let x = snf.u.get(i, j).mod_floor(&BigInt::from(m));
                    x.to_i64().expect("reduced")
                })
                .collect()
        })
        .collect();
    let q = AbelianQuotient::new(moduli, images)?;
    CoverSpec::abelian_tagged(*a.domain(), q, Some(n), true)
}

/// A built cover: coset table, BFS transversal and the `H_1` basis data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverData {
    spec: CoverSpec,
    table: Vec<Vec<usize>>,
    inv_table: Vec<Vec<usize>>,
    /// BFS tree parent `(coset, generator)` of each coset except 0.
    parent: Vec<Option<(usize, usize)>>,
    /// Non-tree edges in `(coset, generator)` order.
    non_tree: Vec<(usize, usize)>,
    non_tree_index: Vec<Vec<Option<usize>>>,
    /// Closed base: projection from graph homology onto `H_1` of the cover
    /// and a section of it.
    closed: Option<ClosedProjection>,
    h1_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClosedProjection {
    projection: IntMatrix,
    section: IntMatrix,
}

pub fn build_cover(spec: &CoverSpec) -> Result<CoverData> {
    build_cover_with_limits(spec, &CoverLimits::default())
}

pub fn build_cover_with_limits(spec: &CoverSpec, limits: &CoverLimits) -> Result<CoverData> {
    spec.base.validate()?;
    let r = spec.base.rank;
    let (table, parent) = match &spec.kind {
        CoverKind::Abelian { quotient, .. } => {
            if spec.degree > limits.max_abelian_degree {
                return Err(Error::ScaleCap {
                    what: "abelian cover degree".into(),
                    requested: spec.degree as u128,
                    cap: limits.max_abelian_degree as u128,
                });
            }
            abelian_table(quotient, r)
        }
        CoverKind::Permutation { images } => {
            if spec.degree > limits.max_permutation_degree {
                return Err(Error::ScaleCap {
                    what: "permutation cover degree".into(),
                    requested: spec.degree as u128,
                    cap: limits.max_permutation_degree as u128,
                });
            }
            permutation_table(images, r)?
        }
    };
    let d = table.len();
    if d != spec.degree {
        return Err(Error::Internal(format!(
            "coset enumeration found {d} cosets, spec degree {}",
            spec.degree
        )));
    }
    let mut inv_table = vec![vec![0; r]; d];
    for (c, row) in table.iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            inv_table[t][j] = c;
        }
    }
    let mut non_tree = Vec::new();
    let mut non_tree_index = vec![vec![None; r]; d];
    for c in 0..d {
        for j in 0..r {
            let t = table[c][j];
            if parent[t] != Some((c, j)) {
                non_tree_index[c][j] = Some(non_tree.len());
                non_tree.push((c, j));
            }
        }
    }
    let mut data = CoverData {
        spec: spec.clone(),
        table,
        inv_table,
        parent,
        non_tree,
        non_tree_index,
        closed: None,
        h1_rank: 0,
    };
    data.h1_rank = data.non_tree.len();
    if let Some(rel) = spec.base.relator() {
        let n = data.non_tree.len();
        let mut faces = IntMatrix::zeros(n, d);
        for c in 0..d {
            let mut class = vec![0i64; n];
            let end = data.walk(c, rel.letters().iter().copied(), &mut class);
            if end != c {
                return Err(Error::InvalidQuotient(
                    "the surface relator does not act trivially on the cosets".into(),
                ));
            }
            for (k, v) in class.into_iter().enumerate() {
                faces.set(k, c, v.into());
            }
        }
        let snf = smith_normal_form(&faces)?;
        if snf.invariant_factors.iter().any(|f| !f.is_one()) {
            return Err(Error::Internal("torsion in the homology of a closed cover".into()));
        }
        let rho = snf.rank();
        let projection = snf.u.select_rows(rho..n);
        let section = snf.u.inverse_unimodular()?.select_cols(rho..n);
        data.h1_rank = n - rho;
        data.closed = Some(ClosedProjection {
            projection,
            section,
        });
    }
    let expected = match spec.base.kind {
        crate::group::SurfaceKind::Free => d * (r - 1) + 1,
        crate::group::SurfaceKind::Closed { genus } => d * (2 * genus) - 2 * d + 2,
    };
    if data.h1_rank != expected {
        return Err(Error::Internal(format!(
            "cover H1 rank {} differs from the Euler characteristic count {expected}",
            data.h1_rank
        )));
    }
    Ok(data)
}

type Table = (Vec<Vec<usize>>, Vec<Option<(usize, usize)>>);

fn abelian_table(q: &AbelianQuotient, r: usize) -> Table {
    let zero = vec![0u64; q.moduli.len()];
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut elems = vec![zero.clone()];
    let mut parent = vec![None];
    index.insert(zero, 0);
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut c = 0;
    while c < elems.len() {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let next = q.add(&elems[c], j, 1);
            let t = *index.entry(next.clone()).or_insert_with(|| {
                elems.push(next);
                parent.push(Some((c, j)));
                elems.len() - 1
            });
            row.push(t);
        }
        table.push(row);
        c += 1;
    }
    (table, parent)
}

fn permutation_table(images: &[Vec<usize>], r: usize) -> Result<Table> {
    let d = images[0].len();
    let mut number = vec![usize::MAX; d];
    let mut order = vec![0usize];
    let mut parent = vec![None];
    number[0] = 0;
    let mut q = VecDeque::from([0usize]);
    while let Some(p) = q.pop_front() {
        for j in 0..r {
            let t = images[j][p];
            if number[t] == usize::MAX {
                number[t] = order.len();
                parent.push(Some((number[p], j)));
                order.push(t);
                q.push_back(t);
            }
        }
    }
    if order.len() != d {
        return Err(Error::DisconnectedCover(format!(
            "generator images reach {} of {d} points",
            order.len()
        )));
    }
    let table = order
        .iter()
        .map(|&p| (0..r).map(|j| number[images[j][p]]).collect())
        .collect();
    Ok((table, parent))
}

impl CoverData {
    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn h1_rank(&self) -> usize {
        self.h1_rank
    }

    pub fn base(&self) -> &SurfacePresentation {
        &self.spec.base
    }

    /// `coset_table()[c][j] = c·x_j`.
    pub fn coset_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Non-tree edges `(coset, generator)`, one per Schreier generator.
    pub fn non_tree_edges(&self) -> &[(usize, usize)] {
        &self.non_tree
    }

    /// Transversal word of coset `c` along the BFS tree.
    pub fn representative(&self, mut c: usize) -> FreeWord {
        let mut letters = Vec::new();
        while let Some((p, j)) = self.parent[c] {
            letters.push(Letter::new(j, false));
            c = p;
        }
        letters.reverse();
        FreeWord::new(letters)
    }

    pub fn schreier_generators(&self) -> Vec<FreeWord> {
        self.non_tree
            .iter()
            .map(|&(c, j)| {
                self.representative(c)
                    .concat(&FreeWord::generator(j))
                    .concat(&self.representative(self.table[c][j]).inverse())
            })
            .collect()
    }

    /// Rewrites a word of the subgroup as a word in the Schreier generators
    /// (generator `k` is the `k`-th non-tree edge).
    pub fn rewrite(&self, w: &FreeWord) -> Result<FreeWord> {
        let mut out = Vec::new();
        let mut c = 0;
        for &l in w.letters() {
            if l.gen >= self.spec.base.rank {
                return domain_err("word uses a generator outside the base rank");
            }
            let (edge_from, next) = if l.inverse {
                let u = self.inv_table[c][l.gen];
                (u, u)
            } else {
                (c, self.table[c][l.gen])
            };
            if let Some(k) = self.non_tree_index[edge_from][l.gen] {
                out.push(Letter::new(k, l.inverse));
            }
            c = next;
        }
        if c != 0 {
            return domain_err(format!("word {w} is not in the cover subgroup"));
        }
        Ok(FreeWord::new(out))
    }

    /// For a closed base, the conjugates `rep(c)·r·rep(c)⁻¹` rewritten in
    /// Schreier generators: the defining relations of the cover group.
    pub fn relator_relations(&self) -> Result<Vec<FreeWord>> {
        let Some(r) = self.spec.base.relator() else {
            return Ok(Vec::new());
        };
        (0..self.degree())
            .map(|c| {
                let rep = self.representative(c);
                self.rewrite(&rep.concat(&r).concat(&rep.inverse()))
            })
            .collect()
    }

    /// Follows `letters` from coset `start`, adding the signed non-tree
    /// edge counts to `class`. Returns the final coset.
    fn walk(&self, start: usize, letters: impl IntoIterator<Item = Letter>, class: &mut [i64]) -> usize {
        let mut c = start;
        for l in letters {
            if l.inverse {
                let u = self.inv_table[c][l.gen];
                if let Some(k) = self.non_tree_index[u][l.gen] {
                    class[k] -= 1;
                }
                c = u;
            } else {
                if let Some(k) = self.non_tree_index[c][l.gen] {
                    class[k] += 1;
                }
                c = self.table[c][l.gen];
            }
        }
        c
    }

    fn walk_end(&self, start: usize, w: &FreeWord) -> usize {
        let mut c = start;
        for l in w.letters() {
            c = if l.inverse {
                self.inv_table[c][l.gen]
            } else {
                self.table[c][l.gen]
            };
        }
        c
    }

    /// Matrix on `H_1` of the lift of the endomorphism `x_j ↦ images[j]`
    /// sending coset 0 to `target`, if such a lift exists.
    fn lift_matrix(&self, images: &[FreeWord], target: usize) -> Option<IntMatrix> {
        let d = self.degree();
        let r = self.spec.base.rank;
        let n = self.non_tree.len();
        // Vertex map along the tree, then checked on every edge.
        let mut f = vec![0usize; d];
        f[0] = target;
        for v in 1..d {
            let (p, j) = self.parent[v].expect("non-root has a parent");
            f[v] = self.walk_end(f[p], &images[j]);
        }
        let mut edge_class: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::with_capacity(r); d];
        let mut scratch = vec![0i64; n];
        for v in 0..d {
            for j in 0..r {
                let end = self.walk(f[v], images[j].letters().iter().copied(), &mut scratch);
                if end != f[self.table[v][j]] {
                    return None;
                }
                let sparse: Vec<(usize, i64)> = scratch
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(k, &x)| (k, x))
                    .collect();
                for &(k, _) in &sparse {
                    scratch[k] = 0;
                }
                edge_class[v].push(sparse);
            }
        }
        let add_tree_path = |mut v: usize, sign: i64, acc: &mut [i64]| {
            while let Some((p, j)) = self.parent[v] {
                for &(k, x) in &edge_class[p][j] {
                    acc[k] += sign * x;
                }
                v = p;
            }
        };
        let mut m = IntMatrix::zeros(n, n);
        let mut col = vec![0i64; n];
        for (k, &(v, j)) in self.non_tree.iter().enumerate() {
            col.iter_mut().for_each(|x| *x = 0);
            add_tree_path(v, 1, &mut col);
            for &(i, x) in &edge_class[v][j] {
                col[i] += x;
            }
            add_tree_path(self.table[v][j], -1, &mut col);
            for (i, &x) in col.iter().enumerate() {
                if x != 0 {
                    m.set(i, k, x.into());
                }
            }
        }
        Some(match &self.closed {
            None => m,
            Some(cp) => &(&cp.projection * &m) * &cp.section,
        })
    }

    /// Deck transformations as `(image of coset 0, matrix on H_1)`, with the
    /// identity first. Errors if the cover is not Galois.
    pub fn deck_transformations(&self) -> Result<Vec<(usize, IntMatrix)>> {
        let gens: Vec<FreeWord> = (0..self.spec.base.rank).map(FreeWord::generator).collect();
        (0..self.degree())
            .map(|c| {
                self.lift_matrix(&gens, c).map(|m| (c, m)).ok_or_else(|| {
                    Error::Domain("cover is not Galois: no deck transformation moves the basepoint to every coset".into())
                })
            })
            .collect()
    }

    /// Least common multiple of the orders of the deck transformations,
    /// read off their action on cosets.
    pub fn deck_group_exponent(&self) -> Result<u64> {
        let d = self.degree();
        let mut exp = 1u64;
        for c in 0..d {
            // The deck map sending 0 to c acts on coset rep(v) as c·rep(v).
            let rep = |v: usize| self.representative(v);
            let map: Vec<usize> = (0..d).map(|v| self.walk_end(c, &rep(v))).collect();
            for v in 0..d {
                for j in 0..self.spec.base.rank {
                    if map[self.table[v][j]] != self.table[map[v]][j] {
                        return domain_err("cover is not Galois");
                    }
                }
            }
            let mut order = 1u64;
            let mut x = map[0];
            while x != 0 {
                x = map[x];
                order += 1;
            }
            exp = exp.lcm(&order);
        }
        Ok(exp)
    }

    /// Cup-product pairing on the basis dual to the `H_1` basis, for a closed
    /// base. Antisymmetric and unimodular.
    pub fn intersection_form(&self) -> Option<IntMatrix> {
        let cp = self.closed.as_ref()?;
        let rel = self.spec.base.relator()?;
        let h = self.h1_rank;
        let p = &cp.projection;
        let mut omega = vec![vec![BigInt::zero(); h]; h];
        for c in 0..self.degree() {
            // Signed non-tree coordinates of the face boundary letters.
            let mut steps: Vec<Option<(usize, i64)>> = Vec::with_capacity(rel.len());
            let mut v = c;
            for l in rel.letters() {
                if l.inverse {
                    let u = self.inv_table[v][l.gen];
                    steps.push(self.non_tree_index[u][l.gen].map(|k| (k, -1)));
                    v = u;
                } else {
                    steps.push(self.non_tree_index[v][l.gen].map(|k| (k, 1)));
                    v = self.table[v][l.gen];
                }
            }
            let value = |a: usize, s: &Option<(usize, i64)>| -> BigInt {
                s.map_or_else(BigInt::zero, |(k, sign)| p.get(a, k) * sign)
            };
            for a in 0..h {
                let mut prefix = BigInt::zero();
                // Fan triangles (v0, v_k, v_{k+1}) for 1 ≤ k ≤ L−2.
                for (idx, s) in steps[..steps.len() - 1].iter().enumerate() {
                    if idx > 0 {
                        for (b, row) in omega[a].iter_mut().enumerate() {
                            let vb = value(b, s);
                            if !vb.is_zero() {
                                *row += &prefix * vb;
                            }
                        }
                    }
                    prefix += value(a, s);
                }
            }
        }
        // Edges run backwards along the relator make the fan triangles singular
        // simplices with reversed sides; that error is symmetric in the two
        // cochains, so the antisymmetric part is the true pairing.
        let m = IntMatrix::from_rows(&omega).expect("square");
        let twice = &m - &m.transpose();
        let two = BigInt::from(2);
        let halves: Vec<BigInt> = twice
            .entries()
            .iter()
            .map(|x| {
                debug_assert!(x.is_even());
                x / &two
            })
            .collect();
        Some(IntMatrix::new(h, h, halves).expect("square"))
    }
}

/// The action on `H_1` of one lift of an automorphism to a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedAction {
    pub cover: Arc<CoverData>,
    pub matrix: IntMatrix,
    /// Coset that the lift sends the basepoint coset to.
    pub basepoint_choice: usize,
    /// For a closed base, `ε` with `B·Ω·Bᵀ = ε·Ω` on the intersection form.
    pub orientation: Option<i32>,
}

/// Lifts `a` to the cover fixing the basepoint coset.
pub fn lift_automorphism(a: &Automorphism, c: &CoverData) -> Result<LiftedAction> {
    lift_automorphism_shared(a, Arc::new(c.clone()))
}

pub fn lift_automorphism_shared(a: &Automorphism, cover: Arc<CoverData>) -> Result<LiftedAction> {
    if a.domain() != cover.base() {
        return domain_err("automorphism and cover have different base groups");
    }
    let matrix = cover.lift_matrix(a.images(), 0).ok_or_else(|| {
        Error::NotInvariant("the automorphism does not preserve the cover subgroup".into())
    })?;
    if !matrix.is_unimodular() {
        return Err(Error::Internal("lifted action is not unimodular".into()));
    }
    let orientation = match cover.intersection_form() {
        None => None,
        Some(omega) => {
            let moved = &(&matrix * &omega) * &matrix.transpose();
            if moved == omega {
                Some(1)
            } else if moved == -&omega {
                Some(-1)
            } else {
                return Err(Error::Internal(
                    "lifted action does not preserve the intersection form".into(),
                ));
            }
        }
    };
    Ok(LiftedAction {
        cover,
        matrix,
        basepoint_choice: 0,
        orientation,
    })
}

/// All lifts `g·ψ̃·h` with `g`, `h` deck transformations, deduplicated and
/// sorted.
pub fn enumerate_lifts(l: &LiftedAction) -> Result<Vec<IntMatrix>> {
    let decks = l.cover.deck_transformations()?;
    let mut out: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let n = l.matrix.rows();
    for (_, g) in &decks {
        let gl = g * &l.matrix;
        for (_, h) in &decks {
            out.insert((&gl * h).entries().to_vec());
        }
    }
    Ok(out
        .into_iter()
        .map(|e| IntMatrix::new(n, n, e).expect("square"))
        .collect())
}

/// A homomorphism from the mapping-torus group to a finite abelian group,
/// given by images of the fiber generators and of the stable letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusQuotient {
    pub moduli: Vec<u64>,
    pub fiber_images: Vec<Vec<i64>>,
    pub t_image: Vec<i64>,
    /// Monodromy action on `H_1` of the fiber.
    pub monodromy: IntMatrix,
}

/// Number of components of the preimage of the fiber in the cover of the
/// mapping torus induced by `q`: the index of the fiber image in the image
/// of the whole group.
pub fn fiber_component_count(q: &TorusQuotient) -> Result<u64> {
    let r = q.fiber_images.len();
    if q.monodromy.rows() != r || q.monodromy.cols() != r {
        return Err(Error::InvalidQuotient(format!(
            "monodromy is {}×{}, expected {r}×{r}",
            q.monodromy.rows(),
            q.monodromy.cols()
        )));
    }
    let mut images = q.fiber_images.clone();
    images.push(q.t_image.clone());
    let aq = AbelianQuotient::new(q.moduli.clone(), images)
        .map_err(|e| Error::InvalidQuotient(e.to_string()))?;
    // t·x·t⁻¹ = ψ(x) abelianizes to φ(x_j) = Σ_i ψ_ij φ(x_i).
    for j in 0..r {
        for (i, &m) in q.moduli.iter().enumerate() {
            let m = BigInt::from(m);
            let mut s = BigInt::zero();
            for l in 0..r {
                s += q.monodromy.get(l, j) * BigInt::from(aq.images[l][i]);
            }
            if (s - BigInt::from(aq.images[j][i])).mod_floor(&m) != BigInt::zero() {
                return Err(Error::InvalidQuotient(format!(
                    "fiber generator {j} is not mapped consistently with the monodromy"
                )));
            }
        }
    }
    let whole = aq.subgroup_order(&aq.images);
    let fiber = aq.subgroup_order(&aq.images[..r]);
    (whole / fiber)
        .to_u64()
        .ok_or_else(|| Error::Internal("component count overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize) -> SurfacePresentation {
        SurfacePresentation::free(n).unwrap()
    }

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    fn auto(n: usize, imgs: &[&str]) -> Automorphism {
        Automorphism::from_images(f(n), imgs.iter().map(|s| w(s)).collect()).unwrap()
    }

    #[test]
    fn rank_fixtures() {
        let c = build_cover(&CoverSpec::homology(f(2), 2).unwrap()).unwrap();
        assert_eq!((c.degree(), c.h1_rank()), (4, 5));
        let c = build_cover(&CoverSpec::homology(f(2), 1).unwrap()).unwrap();
        assert_eq!((c.degree(), c.h1_rank()), (1, 2));
        let g2 = SurfacePresentation::closed(2).unwrap();
        let c = build_cover(&CoverSpec::homology(g2, 2).unwrap()).unwrap();
        assert_eq!((c.degree(), c.h1_rank()), (16, 34));
    }

    #[test]
    fn coinvariant_fixtures() {
        let id = Automorphism::identity(f(2));
        assert_eq!(coinvariant_cover_spec(&id, 3).unwrap().degree, 9);
        let cat = auto(2, &["aba", "ba"]);
        assert_eq!(coinvariant_cover_spec(&cat, 5).unwrap().degree, 1);
        let shear = auto(2, &["a", "aab"]);
        assert_eq!(shear.abelianization_matrix(), IntMatrix::from_i64(&[&[1, 2], &[0, 1]]));
        assert_eq!(coinvariant_cover_spec(&shear, 2).unwrap().degree, 4);
        assert!(coinvariant_cover_spec(&id, 1).is_err());
    }

    #[test]
    fn identity_lifts_to_identity() {
        let id = Automorphism::identity(f(3));
        let c = build_cover(&CoverSpec::homology(f(3), 2).unwrap()).unwrap();
        let l = lift_automorphism(&id, &c).unwrap();
        assert_eq!(l.matrix, IntMatrix::identity(c.h1_rank()));
    }

    #[test]
    fn transvection_on_mod2_cover() {
        let t = auto(2, &["ab", "b"]);
        let c = build_cover(&CoverSpec::homology(f(2), 2).unwrap()).unwrap();
        let l = lift_automorphism(&t, &c).unwrap();
        assert_eq!(l.matrix.rows(), 5);
        assert!(l.matrix.is_unimodular());
        // Rewriting oracle: column k is the rewritten image of Schreier generator k.
        let gens = c.schreier_generators();
        for (k, s) in gens.iter().enumerate() {
            let img = c.rewrite(&t.apply(s).unwrap()).unwrap();
            let ex = img.exponent_sums(gens.len());
            for (i, e) in ex.into_iter().enumerate() {
                assert_eq!(l.matrix.get(i, k), &BigInt::from(e));
            }
        }
    }

    #[test]
    fn swap_does_not_preserve_half_cover() {
        let q = AbelianQuotient::new(vec![2], vec![vec![1], vec![0]]).unwrap();
        let c = build_cover(&CoverSpec::abelian(f(2), q).unwrap()).unwrap();
        let swap = auto(2, &["b", "a"]);
        assert!(matches!(lift_automorphism(&swap, &c), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn deck_group_of_mod2_cover() {
        let id = Automorphism::identity(f(2));
        let c = build_cover(&CoverSpec::homology(f(2), 2).unwrap()).unwrap();
        let l = lift_automorphism(&id, &c).unwrap();
        let lifts = enumerate_lifts(&l).unwrap();
        assert_eq!(lifts.len(), 4);
        assert_eq!(c.deck_group_exponent().unwrap(), 2);
        for m in &lifts {
            assert_eq!(m.power(2).unwrap(), IntMatrix::identity(5));
        }
    }

    #[test]
    fn permutation_cover_checks() {
        // Disconnected: both generators fix point 2.
        let bad = CoverSpec::permutation(f(2), vec![vec![1, 0, 2], vec![1, 0, 2]]).unwrap();
        assert!(matches!(build_cover(&bad), Err(Error::DisconnectedCover(_))));
        // A 3-cycle cover of F2 is Galois; a transposition-based S3 cover is not.
        let cyc = CoverSpec::permutation(f(2), vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        let c = build_cover(&cyc).unwrap();
        assert_eq!(c.h1_rank(), 4);
        assert_eq!(c.deck_transformations().unwrap().len(), 3);
        let s3 = CoverSpec::permutation(f(2), vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let c = build_cover(&s3).unwrap();
        assert!(c.deck_transformations().is_err());
        // Closed base where the relator acts nontrivially.
        let g2 = SurfacePresentation::closed(2).unwrap();
        let p = vec![vec![1, 2, 0], vec![0, 2, 1], vec![0, 1, 2], vec![0, 1, 2]];
        let spec = CoverSpec::permutation(g2, p).unwrap();
        assert!(matches!(build_cover(&spec), Err(Error::InvalidQuotient(_))));
    }

    #[test]
    fn closed_cover_intersection_form() {
        let g2 = SurfacePresentation::closed(2).unwrap();
        let base = build_cover(&CoverSpec::homology(g2, 1).unwrap()).unwrap();
        let omega = base.intersection_form().unwrap();
        assert_eq!(omega.rows(), 4);
        assert_eq!(omega.transpose(), -&omega);
        assert!(omega.is_unimodular());
        let c = build_cover(&CoverSpec::homology(g2, 2).unwrap()).unwrap();
        let omega = c.intersection_form().unwrap();
        assert!(omega.is_unimodular());
        let twist = Automorphism::from_images(g2, vec![w("a"), w("ba"), w("c"), w("d")]).unwrap();
        let l = lift_automorphism(&twist, &c).unwrap();
        assert_eq!(l.orientation, Some(1));
    }

    #[test]
    fn fiber_component_fixtures() {
        let id2 = IntMatrix::identity(2);
        let q = TorusQuotient {
            moduli: vec![5],
            fiber_images: vec![vec![0], vec![0]],
            t_image: vec![1],
            monodromy: id2.clone(),
        };
        assert_eq!(fiber_component_count(&q).unwrap(), 5);
        let q = TorusQuotient {
            moduli: vec![5],
            fiber_images: vec![vec![1], vec![0]],
            t_image: vec![0],
            monodromy: id2.clone(),
        };
        assert_eq!(fiber_component_count(&q).unwrap(), 1);
        let q = TorusQuotient {
            moduli: vec![2, 4],
            fiber_images: vec![vec![0, 1], vec![0, 3]],
            t_image: vec![1, 0],
            monodromy: id2.clone(),
        };
        assert_eq!(fiber_component_count(&q).unwrap(), 2);
        let q = TorusQuotient {
            moduli: vec![2],
            fiber_images: vec![vec![1], vec![0]],
            t_image: vec![0],
            monodromy: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        };
        assert!(matches!(fiber_component_count(&q), Err(Error::InvalidQuotient(_))));
    }

    #[test]
    fn degree_cap_refuses() {
        let spec = CoverSpec::homology(f(3), 200).unwrap();
        let err = build_cover(&spec).unwrap_err();
        assert!(err.is_scale_refusal());
    }
}
