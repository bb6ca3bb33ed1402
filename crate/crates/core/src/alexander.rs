//! Fox calculus on mapping-torus presentations.
//!
//! The mapping torus of `ψ` has presentation
//! `⟨x_1, …, x_r, t | t·x_i·t⁻¹·ψ(x_i)⁻¹ (, relator)⟩`. Fox derivatives of
//! the relations, pushed into the group ring of the free part of
//! `H_1(T_ψ)`, form the Alexander matrix. Variable 0 is always the image
//! of `t` (written `u`); the remaining variables are a basis of the free
//! part of the coinvariants `H_1(S)/image(ψ_* − I)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::exact_linalg::{cokernel, hermite_rows, smith_normal_form, CokerSummary, IntMatrix};
use crate::group::{Automorphism, FreeWord, Letter, SurfacePresentation};
use crate::intpoly::IntPoly;

/// Laurent polynomial in `nvars` variables with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exponents: Vec<i64>, c: BigInt) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return domain_err(format!("exponent vector of length {} in {nvars} variables", e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Unit normalization: the lexicographically least exponent becomes the
    /// zero vector and the lexicographically greatest coefficient is positive.
    pub fn normalized(&self) -> Self {
        let Some((least, _)) = self.terms.iter().next() else {
            return self.clone();
        };
        let neg: Vec<i64> = least.iter().map(|x| -x).collect();
        let p = self.shift(&neg);
        let (_, top) = p.terms.iter().next_back().expect("nonzero");
        if top.is_negative() {
            -&p
        } else {
            p
        }
    }

    /// Smallest exponent of each variable.
    fn min_exponents(&self) -> Vec<i64> {
        (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().unwrap_or(0))
            .collect()
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut z = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for (x, &k) in point.iter().zip(e) {
                    z *= x.powi(k as i32);
                }
                z
            })
            .sum()
    }

    /// The same polynomial as an `IntPoly` when it has one variable and no
    /// negative powers.
    pub fn as_univariate(&self) -> Option<IntPoly> {
        if self.nvars != 1 || self.terms.keys().any(|e| e[0] < 0) {
            return None;
        }
        let deg = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        for (e, v) in &self.terms {
            c[e[0] as usize] = v.clone();
        }
        Some(IntPoly::new(c))
    }

    fn var_name(i: usize, nvars: usize) -> String {
        match (i, nvars) {
            (0, _) => "u".into(),
            (1, 2) => "x".into(),
            (i, _) => format!("x{i}"),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let name = Self::var_name(i, self.nvars);
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponents: &'a [i64],
            coeff: String,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            nvars: usize,
            terms: Vec<Term<'a>>,
        }
        Repr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| Term {
                    exponents: e,
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            exponents: Vec<i64>,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Repr {
            nvars: usize,
            terms: Vec<Term>,
        }
        let r = Repr::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in r.terms {
            let c: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            terms.push((t.exponents, c));
        }
        LaurentPoly::from_terms(r.nvars, terms).map_err(serde::de::Error::custom)
    }
}

/// Presentation of `π_1(T_ψ)`; generator `rank` is the stable letter `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPresentation {
    pub fiber: SurfacePresentation,
    pub monodromy: Automorphism,
    pub relations: Vec<FreeWord>,
    /// `H_1(T_ψ) = Z ⊕ coker(ψ_* − I)`.
    pub homology: CokerSummary,
    /// Rows map `H_1(S)` onto the free part of the coinvariants.
    pub free_projection: IntMatrix,
}

pub fn torus_presentation(a: &Automorphism) -> Result<TorusPresentation> {
    let fiber = *a.domain();
    let r = fiber.rank;
    let t = Letter::new(r, false);
    let mut relations: Vec<FreeWord> = (0..r)
        .map(|i| {
            FreeWord::new([t, Letter::new(i, false), t.inv()])
                .concat(&a.images()[i].inverse())
        })
        .collect();
    if let Some(rel) = fiber.relator() {
        relations.push(rel);
    }
    let m = a.abelianization_matrix().minus_identity()?;
    let mut homology = cokernel(&m)?;
    homology.betti += 1;
    let snf = smith_normal_form(&m)?;
    let rho = snf.rank();
    let free_projection = if rho == r {
        IntMatrix::zeros(0, r)
    } else {
        hermite_rows(&snf.u.select_rows(rho..r))
    };
    Ok(TorusPresentation {
        fiber,
        monodromy: a.clone(),
        relations,
        homology,
        free_projection,
    })
}

/// Alexander matrix: rows are relations; column 0 is `t`, column `1 + j`
/// is fiber generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderMatrix {
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<LaurentPoly>,
    /// Exponent vector of the image of each generator (column order).
    pub generator_monomials: Vec<Vec<i64>>,
    pub fiber: SurfacePresentation,
    /// For a closed fiber, the exponent vector of the relator conjugator `w`
    /// and orientation `ε` with `ψ(r) = w·r^ε·w⁻¹`.
    pub relator_twist: Option<(Vec<i64>, i32)>,
}

impl AlexanderMatrix {
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    /// Checks `Σ_j (∂r/∂x_j)·(x_j − 1) = 0` for every row.
    pub fn fox_identity_holds(&self) -> bool {
        let one = LaurentPoly::one(self.nvars);
        (0..self.rows).all(|i| {
            let mut s = LaurentPoly::zero(self.nvars);
            for j in 0..self.cols {
                let g = &LaurentPoly::monomial(self.generator_monomials[j].clone(), BigInt::one()) - &one;
                s = &s + &(self.get(i, j) * &g);
            }
            s.is_zero()
        })
    }
}

fn fox_row(word: &FreeWord, monomials: &[Vec<i64>], cols: usize, col_of: impl Fn(usize) -> usize) -> Vec<LaurentPoly> {
    let nvars = monomials[0].len();
    let mut row = vec![LaurentPoly::zero(nvars); cols];
    let mut prefix = vec![0i64; nvars];
    for l in word.letters() {
        let col = col_of(l.gen);
        let m = &monomials[col];
        if l.inverse {
            let e: Vec<i64> = prefix.iter().zip(m).map(|(a, b)| a - b).collect();
            row[col].add_term(e.clone(), BigInt::from(-1));
            prefix = e;
        } else {
            row[col].add_term(prefix.clone(), BigInt::one());
            prefix = prefix.iter().zip(m).map(|(a, b)| a + b).collect();
        }
    }
    row
}

pub fn fox_alexander_matrix(p: &TorusPresentation) -> Result<AlexanderMatrix> {
    let r = p.fiber.rank;
    let b = p.free_projection.rows();
    let nvars = 1 + b;
    if p.homology.betti != nvars {
        return Err(Error::Internal("free rank of H1 does not match the projection".into()));
    }
    let mut monomials = vec![vec![0i64; nvars]; r + 1];
    monomials[0][0] = 1;
    for j in 0..r {
        for k in 0..b {
            monomials[1 + j][1 + k] = p
                .free_projection
                .get(k, j)
                .to_i64()
                .ok_or_else(|| Error::UnsupportedScale("projection entry exceeds i64".into()))?;
        }
    }
    let col_of = |g: usize| if g == r { 0 } else { g + 1 };
    let mut entries = Vec::with_capacity(p.relations.len() * (r + 1));
    for rel in &p.relations {
        entries.extend(fox_row(rel, &monomials, r + 1, col_of));
    }
    let relator_twist = if p.fiber.is_closed() {
        let ri = p.monodromy.relator_image()?;
        let ex = ri.conjugator.exponent_sums(r);
        let mut v = vec![0i64; nvars];
        for (j, e) in ex.iter().enumerate() {
            for (k, slot) in v.iter_mut().enumerate() {
                *slot += e * monomials[1 + j][k];
            }
        }
        Some((v, ri.orientation))
    } else {
        None
    };
    Ok(AlexanderMatrix {
        nvars,
        rows: p.relations.len(),
        cols: r + 1,
        entries,
        generator_monomials: monomials,
        fiber: p.fiber,
        relator_twist,
    })
}

/// Determinant of the square submatrix on `rows` × `cols` by Laplace
/// expansion along rows, memoized on the set of remaining columns.
fn laurent_minor(m: &AlexanderMatrix, rows: &[usize], cols: &[usize]) -> LaurentPoly {
    fn go(
        m: &AlexanderMatrix,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        mask: u64,
        memo: &mut HashMap<u64, LaurentPoly>,
    ) -> LaurentPoly {
        if depth == rows.len() {
            return LaurentPoly::one(m.nvars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(m.nvars);
        let mut sign_pos = true;
        for (idx, &c) in cols.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                continue;
            }
            let e = m.get(rows[depth], c);
            if !e.is_zero() {
                let sub = go(m, rows, cols, depth + 1, mask | (1 << idx), memo);
                let term = e * &sub;
                acc = if sign_pos { &acc + &term } else { &acc - &term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(m, rows, cols, 0, 0, &mut HashMap::new())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Minor obtained by deleting generator column `col`, using the first
/// `cols − 1` relations.
pub fn column_deleted_minor(m: &AlexanderMatrix, col: usize) -> Result<LaurentPoly> {
    if col >= m.cols || m.rows + 1 < m.cols {
        return domain_err("column index out of range or too few relations");
    }
    let rows: Vec<usize> = (0..m.cols - 1).collect();
    let cols: Vec<usize> = (0..m.cols).filter(|&c| c != col).collect();
    Ok(laurent_minor(m, &rows, &cols))
}

/// Polynomial in `u` with coefficients in `Z[x]`, indexed by `u`-degree.
type BiPoly = Vec<IntPoly>;

fn bi_trim(mut a: BiPoly) -> BiPoly {
    while a.last().is_some_and(IntPoly::is_zero) {
        a.pop();
    }
    a
}

fn bi_content(a: &BiPoly) -> IntPoly {
    a.iter().fold(IntPoly::zero(), |g, c| g.gcd(c))
}

fn bi_primitive(a: &BiPoly) -> BiPoly {
    let c = bi_content(a);
    if c.is_zero() {
        return a.clone();
    }
    a.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

fn bi_prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        let mut next: BiPoly = r.iter().map(|c| c * lb).collect();
        for (i, c) in b.iter().enumerate() {
            next[i + k] = &next[i + k] - &(&lr * c);
        }
        r = bi_primitive(&bi_trim(next));
    }
    r
}

fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let content = bi_content(a).gcd(&bi_content(b));
    let (mut p, mut q) = if a.len() >= b.len() {
        (bi_primitive(a), bi_primitive(b))
    } else {
        (bi_primitive(b), bi_primitive(a))
    };
    while !q.is_empty() {
        let r = bi_prem(&p, &q);
        p = q;
        q = r;
    }
    bi_primitive(&p).iter().map(|c| c * &content).collect()
}

fn laurent_to_bi(p: &LaurentPoly) -> BiPoly {
    let mins = p.min_exponents();
    let mut out: BiPoly = Vec::new();
    for (e, c) in p.terms() {
        let du = (e[0] - mins[0]) as usize;
        let dx = if p.nvars() > 1 { (e[1] - mins[1]) as usize } else { 0 };
        if out.len() <= du {
            out.resize(du + 1, IntPoly::zero());
        }
        out[du] = &out[du] + &IntPoly::monomial(c.clone(), dx);
    }
    bi_trim(out)
}

fn bi_to_laurent(a: &BiPoly, nvars: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(nvars);
    for (du, c) in a.iter().enumerate() {
        for (dx, v) in c.coeffs().iter().enumerate() {
            let mut e = vec![0i64; nvars];
            e[0] = du as i64;
            if nvars > 1 {
                e[1] = dx as i64;
            }
            p.add_term(e, v.clone());
        }
    }
    p
}

/// gcd of all maximal minors obtained by deleting one generator column,
/// unit-normalized. At most two variables are supported.
pub fn alexander_polynomial(m: &AlexanderMatrix) -> Result<LaurentPoly> {
    if m.nvars > 2 {
        return Err(Error::UnsupportedScale(format!(
            "minor gcd in {} variables (at most 2 supported)",
            m.nvars
        )));
    }
    let k = m.cols - 1;
    let row_sets = combinations(m.rows, k);
    let mut g: BiPoly = Vec::new();
    for del in 0..m.cols {
        let cols: Vec<usize> = (0..m.cols).filter(|&c| c != del).collect();
        for rows in &row_sets {
            let minor = laurent_minor(m, rows, &cols);
            if !minor.is_zero() {
                g = bi_gcd(&g, &laurent_to_bi(&minor));
            }
        }
    }
    Ok(bi_to_laurent(&g, m.nvars).normalized())
}

/// Root of unity `exp(2πi·numerator/modulus)` for each fiber variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<(u64, u64)>,
}

impl Character {
    pub fn new(values: Vec<(u64, u64)>) -> Result<Self> {
        for &(num, m) in &values {
            if m == 0 {
                return domain_err("character modulus must be positive");
            }
            if num >= m {
                return domain_err(format!("character numerator {num} not below modulus {m}"));
            }
        }
        Ok(Character { values })
    }

    pub fn trivial(nvars: usize) -> Self {
        Character {
            values: vec![(0, 1); nvars],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&(n, _)| n == 0)
    }

    fn root(num: i128, m: u64) -> Complex64 {
        let k = num.rem_euclid(m as i128) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k / m as f64)
    }

    /// Value on a fiber monomial (exponents of the fiber variables).
    pub fn eval(&self, exps: &[i64]) -> Complex64 {
        // Combine exactly over the common modulus before taking the root.
        let l = self.values.iter().fold(1u64, |l, &(_, m)| num_integer::lcm(l, m));
        let mut num: i128 = 0;
        for (&(n, m), &e) in self.values.iter().zip(exps) {
            num += n as i128 * (l / m) as i128 * e as i128;
        }
        Self::root(num, l)
    }

    /// All characters with values in the `n`-th roots of unity.
    pub fn all_mod(nvars: usize, n: u64) -> Vec<Character> {
        let total = (n as usize).pow(nvars as u32);
        (0..total)
            .map(|mut idx| {
                let mut values = Vec::with_capacity(nvars);
                for _ in 0..nvars {
                    values.push(((idx % n as usize) as u64, n));
                    idx /= n as usize;
                }
                Character { values }
            })
            .collect()
    }
}

/// Polynomial in `u` with complex coefficients and an absolute error bound
/// on each coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    pub coeffs: Vec<Complex64>,
    pub error_bound: f64,
}

impl ComplexPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        let na: f64 = self.coeffs.iter().map(|z| z.norm()).sum();
        let nb: f64 = other.coeffs.iter().map(|z| z.norm()).sum();
        ComplexPoly {
            coeffs: c,
            error_bound: self.error_bound * nb
                + other.error_bound * na
                + self.error_bound * other.error_bound
                + 4.0 * f64::EPSILON * na * nb,
        }
    }

    /// Synthetic division by `(u − root)`; returns the quotient and the
    /// remainder modulus.
    pub fn divide_linear(&self, root: Complex64) -> (ComplexPoly, f64) {
        let n = self.coeffs.len();
        let mut q = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut carry = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry * root;
            if k == 0 {
                carry = v;
            } else {
                q[k - 1] = v;
                carry = v;
            }
        }
        let growth = n as f64;
        (
            ComplexPoly {
                coeffs: q,
                error_bound: self.error_bound * growth + 4.0 * f64::EPSILON * growth,
            },
            carry.norm(),
        )
    }

    pub fn from_int(p: &IntPoly) -> ComplexPoly {
        ComplexPoly {
            coeffs: p
                .coeffs()
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
            error_bound: 0.0,
        }
    }

    /// Largest coefficient difference after padding to equal length.
    pub fn max_coeff_distance(&self, other: &ComplexPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Characteristic polynomial predicted for a lift of `ψ` on the
/// `χ`-eigenspace of `H_1` of the abelian cover: the fiber columns of the
/// relation rows, specialized at `χ` with `t` kept as `u`, divided by the
/// contributions of the 0-cells (and the 2-cell for a closed fiber) when
/// `χ` is nontrivial.
pub fn evaluate_character(m: &AlexanderMatrix, chi: &Character) -> Result<ComplexPoly> {
    if chi.values.len() + 1 != m.nvars {
        return domain_err(format!(
            "character has {} values, matrix has {} fiber variables",
            chi.values.len(),
            m.nvars - 1
        ));
    }
    for &(num, md) in &chi.values {
        if md == 0 {
            return domain_err("character modulus must be positive");
        }
        if num >= md {
            return domain_err("character numerator must be below its modulus");
        }
    }
    let r = m.cols - 1;
    // Entry (i, j) as a polynomial in u.
    let mut specialized: Vec<Vec<Vec<Complex64>>> = vec![vec![Vec::new(); r]; r];
    for (i, row) in specialized.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            for (e, c) in m.get(i, j + 1).terms() {
                if e[0] < 0 {
                    return Err(Error::Internal("negative t-power in a fiber column".into()));
                }
                let d = e[0] as usize;
                if slot.len() <= d {
                    slot.resize(d + 1, Complex64::new(0.0, 0.0));
                }
                slot[d] += chi.eval(&e[1..]) * c.to_f64().unwrap_or(f64::NAN);
            }
        }
    }
    let (det, magnitude) = complex_poly_det(&specialized);
    let mut p = ComplexPoly {
        coeffs: det,
        error_bound: 8.0 * (r as f64 + 2.0) * f64::EPSILON * magnitude,
    };
    if !chi.is_trivial() {
        let mut roots = vec![Complex64::new(1.0, 0.0)];
        if let Some((w, eps)) = &m.relator_twist {
            roots.push(chi.eval(&w[1..]) * *eps as f64);
        }
        for root in roots {
            let (q, rem) = p.divide_linear(root);
            if rem > 1e-6 * (1.0 + magnitude) {
                return Err(Error::Internal(format!(
                    "fiber determinant not divisible by (u − {root}): remainder {rem:e}"
                )));
            }
            p = q;
        }
    }
    Ok(p)
}

/// Determinant of a matrix of complex polynomials, with the same expansion
/// evaluated on coefficient magnitudes as a rounding scale.
fn complex_poly_det(a: &[Vec<Vec<Complex64>>]) -> (Vec<Complex64>, f64) {
    fn pmul(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        if x.is_empty() || y.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); x.len() + y.len() - 1];
        for (i, p) in x.iter().enumerate() {
            for (j, q) in y.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        out
    }
    fn padd(x: &mut Vec<Complex64>, y: &[Complex64], sign: f64) {
        if x.len() < y.len() {
            x.resize(y.len(), Complex64::new(0.0, 0.0));
        }
        for (i, v) in y.iter().enumerate() {
            x[i] += v * sign;
        }
    }
    fn go(
        a: &[Vec<Vec<Complex64>>],
        depth: usize,
        mask: u64,
        memo: &mut HashMap<u64, (Vec<Complex64>, f64)>,
    ) -> (Vec<Complex64>, f64) {
        let n = a.len();
        if depth == n {
            return (vec![Complex64::new(1.0, 0.0)], 1.0);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = Vec::new();
        let mut mag = 0.0;
        let mut sign = 1.0;
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            let e = &a[depth][c];
            if !e.is_empty() {
                let (sub, sub_mag) = go(a, depth + 1, mask | (1 << c), memo);
                padd(&mut acc, &pmul(e, &sub), sign);
                mag += e.iter().map(|z| z.norm()).sum::<f64>() * sub_mag;
            }
            sign = -sign;
        }
        memo.insert(mask, (acc.clone(), mag));
        (acc, mag)
    }
    let (mut det, mag) = go(a, 0, 0, &mut HashMap::new());
    while det.last().is_some_and(|z| z.norm() == 0.0) {
        det.pop();
    }
    (det, mag)
}

/// Evaluates every character, in parallel when the `parallel` feature is on.
/// Results keep the input order.
pub fn evaluate_characters(m: &AlexanderMatrix, chis: &[Character]) -> Vec<Result<ComplexPoly>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        chis.par_iter().map(|c| evaluate_character(m, c)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        chis.iter().map(|c| evaluate_character(m, c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    fn auto(n: usize, imgs: &[&str]) -> Automorphism {
        Automorphism::from_images(
            SurfacePresentation::free(n).unwrap(),
            imgs.iter().map(|s| w(s)).collect(),
        )
        .unwrap()
    }

    fn lp(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn torus_presentation_homology() {
        let id = Automorphism::identity(SurfacePresentation::free(2).unwrap());
        let p = torus_presentation(&id).unwrap();
        assert_eq!(p.relations, vec![w("caCA"), w("cbCB")]);
        assert_eq!(p.homology.betti, 3);
        let cat = auto(2, &["aba", "ba"]);
        let p = torus_presentation(&cat).unwrap();
        assert_eq!((p.homology.betti, p.homology.torsion_factors.len()), (1, 0));
        let neg = auto(2, &["A", "B"]);
        let p = torus_presentation(&neg).unwrap();
        assert_eq!(p.homology.betti, 1);
        assert_eq!(p.homology.torsion_factors, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn rank_one_fox_matrix() {
        let id = Automorphism::identity(SurfacePresentation::free(1).unwrap());
        let m = fox_alexander_matrix(&torus_presentation(&id).unwrap()).unwrap();
        assert_eq!((m.rows, m.cols, m.nvars), (1, 2, 2));
        // (∂/∂t, ∂/∂x) of t·x·t⁻¹·x⁻¹ = (1 − x, u − 1).
        assert_eq!(m.get(0, 0), &lp(2, &[(&[0, 0], 1), (&[0, 1], -1)]));
        assert_eq!(m.get(0, 1), &lp(2, &[(&[1, 0], 1), (&[0, 0], -1)]));
        assert!(m.fox_identity_holds());
        assert_eq!(column_deleted_minor(&m, 1).unwrap().normalized(), lp(2, &[(&[0, 0], -1), (&[0, 1], 1)]));
        assert_eq!(alexander_polynomial(&m).unwrap(), LaurentPoly::one(2));
    }

    #[test]
    fn cat_map_one_variable() {
        let cat = auto(2, &["aba", "ba"]);
        let m = fox_alexander_matrix(&torus_presentation(&cat).unwrap()).unwrap();
        assert_eq!(m.nvars, 1);
        assert!(m.fox_identity_holds());
        let d = alexander_polynomial(&m).unwrap();
        assert_eq!(d.as_univariate().unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        let p = evaluate_character(&m, &Character::trivial(0)).unwrap();
        let expect = ComplexPoly::from_int(&IntPoly::from_i64(&[1, -3, 1]));
        assert!(p.max_coeff_distance(&expect) < 1e-12);
    }

    #[test]
    fn transvection_matrix_shape() {
        let t = auto(2, &["ab", "b"]);
        let m = fox_alexander_matrix(&torus_presentation(&t).unwrap()).unwrap();
        assert_eq!((m.rows, m.cols, m.nvars), (2, 3, 2));
        assert!(m.fox_identity_holds());
    }

    #[test]
    fn braid_fixture() {
        let psi = Automorphism::from_braid_word(3, "s1 S2").unwrap();
        let m = fox_alexander_matrix(&torus_presentation(&psi).unwrap()).unwrap();
        assert_eq!((m.rows, m.cols, m.nvars), (3, 4, 2));
        assert!(m.fox_identity_holds());
        let d = alexander_polynomial(&m).unwrap();
        // u² − u(1 − x − x⁻¹) + 1, shifted so the least exponent is zero.
        let expect = lp(2, &[(&[2, 1], 1), (&[1, 2], 1), (&[1, 1], -1), (&[1, 0], 1), (&[0, 1], 1)]).normalized();
        assert_eq!(d, expect);
        let minus = Character::new(vec![(1, 2)]).unwrap();
        let p = evaluate_character(&m, &minus).unwrap();
        assert!(p.max_coeff_distance(&ComplexPoly::from_int(&IntPoly::from_i64(&[1, -3, 1]))) < 1e-12);
    }

    #[test]
    fn laurent_display_and_serde() {
        let p = lp(2, &[(&[2, 0], 1), (&[1, -1], 1), (&[0, 0], -3)]);
        assert_eq!(p.to_string(), "u^2 + u*x^-1 - 3");
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn bivariate_gcd() {
        // (u + x)(u − 1) and (u + x)(x + 2): gcd u + x.
        let a = lp(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        let b = lp(2, &[(&[1, 1], 1), (&[1, 0], 2), (&[0, 2], 1), (&[0, 1], 2)]);
        let g = bi_to_laurent(&bi_gcd(&laurent_to_bi(&a), &laurent_to_bi(&b)), 2).normalized();
        assert_eq!(g, lp(2, &[(&[1, 0], 1), (&[0, 1], 1)]).normalized());
    }
}
