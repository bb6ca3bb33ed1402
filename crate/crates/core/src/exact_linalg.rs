//! Dense arbitrary-precision integer matrices.
//!
//! Everything here is exact: Smith normal form with unimodular transforms,
//! cokernels, division-free characteristic polynomials (Berkowitz), Bareiss
//! determinants and the restricted determinant `det'`. Torsion orders in the
//! rest of the crate always come from [`cokernel`]; [`IntMatrix::restricted_det`]
//! is only used as a cross-check.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{dim_err, Error, Result};
use crate::intpoly::IntPoly;
use crate::serial::bigint_vec_str;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return dim_err(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            ));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return dim_err("ragged rows");
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Self::new(r, c, data)
    }

    /// Convenience constructor for small literal matrices; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("ragged literal matrix")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self − I`.
    pub fn minus_identity(&self) -> Result<Self> {
        self.require_square("minus_identity")?;
        let mut m = self.clone();
        for i in 0..self.rows {
            *m.entry_mut(i, i) -= 1;
        }
        Ok(m)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return dim_err("hstack needs equal row counts");
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Self::new(self.rows, cols, data)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return dim_err("vstack needs equal column counts");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::new(self.rows + other.rows, self.cols, data)
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        let data = self.data[rows.start * self.cols..rows.end * self.cols].to_vec();
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Columns `range` as a new matrix.
    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        IntMatrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return dim_err("vector length does not match column count");
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            dim_err(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            ))
        }
    }

    /// Exact `self^k` by binary exponentiation; `self^0 = I`.
    pub fn power(&self, k: u64) -> Result<Self> {
        self.require_square("matrix_power")?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square("det")?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_nested();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Characteristic polynomial `det(tI − M)` via Berkowitz's division-free
    /// algorithm. Monic of degree `n`.
    pub fn char_poly(&self) -> Result<IntPoly> {
        self.require_square("char_poly")?;
        let n = self.rows;
        // Coefficients in descending order of degree.
        let mut p: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            let arr = self.get(r, r);
            let mut col: Vec<BigInt> = Vec::with_capacity(r + 2);
            col.push(BigInt::one());
            col.push(-arr);
            let mut v: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 2..=r + 1 {
                let rv: BigInt = (0..r).map(|j| self.get(r, j) * &v[j]).sum();
                col.push(-rv);
                v = (0..r)
                    .map(|i| (0..r).map(|j| self.get(i, j) * &v[j]).sum())
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    if !pj.is_zero() && !col[i - j].is_zero() {
                        *slot += &col[i - j] * pj;
                    }
                }
            }
            p = next;
        }
        p.reverse();
        Ok(IntPoly::new(p))
    }

    /// `det'(M)`: product of the nonzero eigenvalues, 1 for the empty product.
    ///
    /// Read off the characteristic polynomial as `(−1)^(n−m)·c_m` where `m` is
    /// the multiplicity of the root 0.
    pub fn restricted_det(&self) -> Result<BigInt> {
        let p = self.char_poly()?;
        Ok(restricted_det_from_char_poly(&p, self.rows))
    }

    /// Rank over the rationals.
    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() || self.is_empty() {
            return dim_err("inverse of a non-square or empty matrix");
        }
        if !self.is_unimodular() {
            return Err(crate::Error::Domain("matrix is not unimodular".into()));
        }
        // U·A·V = I, hence A⁻¹ = V·U.
        let snf = smith_normal_form(self)?;
        snf.v.try_mul(&snf.u)
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        invariant_factors(self).len()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Entries as `f64`; `None` if any entry does not fit.
    pub fn to_f64_rows(&self) -> Option<Vec<Vec<f64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64()).collect())
            .collect()
    }
}

pub(crate) fn restricted_det_from_char_poly(p: &IntPoly, n: usize) -> BigInt {
    let coeffs = p.coeffs();
    match coeffs.iter().position(|c| !c.is_zero()) {
        Some(m) => {
            let c = coeffs[m].clone();
            if (n - m) % 2 == 1 {
                -c
            } else {
                c
            }
        }
        None => BigInt::one(),
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    #[serde(with = "bigint_vec_str")]
    entries: Vec<BigInt>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        IntMatrix::new(r.rows, r.cols, r.entries).map_err(D::Error::custom)
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, all positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Free rank and torsion of `Z^rows / image(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokerSummary {
    pub betti: usize,
    #[serde(with = "bigint_vec_str")]
    pub torsion_factors: Vec<BigInt>,
    #[serde(with = "crate::serial::bigint_str")]
    pub torsion_order: BigInt,
}

impl CokerSummary {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_factors.is_empty()
    }
}

/// Working state for elimination. Row operations are mirrored into `u`,
/// column operations into `v`, when tracking is on.
struct Eliminator {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    m: usize,
    n: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Quotient rounding `a / b` to nearest, so the remainder satisfies `|r| ≤ |b|/2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    // The floored remainder has the sign of `b`, so stepping q up shrinks it.
    let (mut q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        q += 1;
    }
    q
}

impl Eliminator {
    fn new(mat: &IntMatrix, track: bool) -> Self {
        Eliminator {
            a: mat.to_nested(),
            u: track.then(|| identity_rows(mat.rows)),
            v: track.then(|| identity_rows(mat.cols)),
            m: mat.rows,
            n: mat.cols,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_dst -= q·row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        let (d, s) = two_rows(&mut self.a, dst, src);
        for j in from..d.len() {
            if !s[j].is_zero() {
                d[j] -= q * &s[j];
            }
        }
        if let Some(u) = &mut self.u {
            let (d, s) = two_rows(u, dst, src);
            for j in 0..d.len() {
                if !s[j].is_zero() {
                    d[j] -= q * &s[j];
                }
            }
        }
    }

    /// col_dst -= q·col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for row in self.a.iter_mut().skip(from) {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[src].is_zero() {
                    let t = q * &row[src];
                    row[dst] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, row-then-column tie-break.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => ax < *b,
                };
                if better {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(mut self) -> (Vec<Vec<BigInt>>, Option<Vec<Vec<BigInt>>>, Option<Vec<Vec<BigInt>>>, usize) {
        let steps = self.m.min(self.n);
        let mut rank = 0;
        'outer: for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    break 'outer;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.a[i][t], &p);
                    self.row_axpy(i, t, &q, t);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = nearest_quotient(&self.a[t][j], &p);
                    self.col_axpy(j, t, &q, t);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // Divisibility: fold an offending row into row t and retry.
                let offender = (t + 1..self.m).find(|&i| {
                    self.a[i][t + 1..]
                        .iter()
                        .any(|x| !x.is_zero() && !(x % &p).is_zero())
                });
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.row_axpy(t, i, &minus_one, t);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            rank = t + 1;
        }
        (self.a, self.u, self.v, rank)
    }
}

fn two_rows<T>(v: &mut [Vec<T>], dst: usize, src: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(dst, src);
    if dst < src {
        let (lo, hi) = v.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    }
}

fn nested_to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntMatrix {
    IntMatrix {
        rows: r,
        cols: c,
        data: rows.into_iter().flatten().collect(),
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfResult> {
    if m.is_empty() {
        return dim_err("smith_normal_form of an empty matrix");
    }
    let (rows, cols) = (m.rows, m.cols);
    let (a, u, v, rank) = Eliminator::new(m, true).run();
    let invariant_factors = (0..rank).map(|i| a[i][i].clone()).collect();
    Ok(SnfResult {
        u: nested_to_matrix(u.expect("tracked"), rows, rows),
        d: nested_to_matrix(a, rows, cols),
        v: nested_to_matrix(v.expect("tracked"), cols, cols),
        invariant_factors,
    })
}

/// Invariant factors only, skipping the transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (a, _, _, rank) = Eliminator::new(m, false).run();
    (0..rank).map(|i| a[i][i].clone()).collect()
}

/// Cokernel `Z^rows / image(M)` of the column lattice.
pub fn cokernel(m: &IntMatrix) -> Result<CokerSummary> {
    if m.is_empty() {
        return dim_err("cokernel of an empty matrix");
    }
    Ok(coker_from_factors(m.rows, &invariant_factors(m)))
}

pub(crate) fn coker_from_factors(rows: usize, factors: &[BigInt]) -> CokerSummary {
    let torsion_factors: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    let torsion_order = torsion_factors.iter().product();
    CokerSummary {
        betti: rows - factors.len(),
        torsion_factors,
        torsion_order,
    }
}

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_nested();
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at r.
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz
                .iter()
                .min_by(|&&x, &&y| a[x][c].abs().cmp(&a[y][c].abs()).then(x.cmp(&y)))
                .expect("nonempty");
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (d, s) = two_rows(&mut a, i, r);
                for j in c..cols {
                    let t = &q * &s[j];
                    d[j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in &mut a[r] {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let (d, s) = two_rows(&mut a, i, r);
            for j in c..cols {
                let t = &q * &s[j];
                d[j] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    nested_to_matrix(a, r, cols)
}

impl From<IntMatrix> for Vec<Vec<BigInt>> {
    fn from(m: IntMatrix) -> Self {
        m.to_nested()
    }
}

impl TryFrom<Vec<Vec<BigInt>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}
