//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use fibertor::{Automorphism, FreeWord, IntMatrix, IntPoly, SurfacePresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

pub fn poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::from_i64(coeffs)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Product of `steps` random elementary matrices (row additions with
/// multiplier in `[-mult, mult]`, swaps, sign flips).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize, mult: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 1 {
        if rng.gen_bool(0.5) {
            m.set(0, 0, big(-1));
        }
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = IntMatrix::identity(n);
        match rng.gen_range(0..10) {
            0 => {
                e.set(i, i, big(0));
                e.set(j, j, big(0));
                e.set(i, j, big(1));
                e.set(j, i, big(1));
            }
            1 => e.set(i, i, big(-1)),
            _ => {
                let mut c = rng.gen_range(-mult..=mult);
                if c == 0 {
                    c = 1;
                }
                e.set(i, j, big(c));
            }
        }
        m = &e * &m;
    }
    m
}

/// Companion matrix of a monic polynomial: eigenvalues are its roots.
pub fn companion(p: &IntPoly) -> IntMatrix {
    assert!(p.is_monic() && p.degree() >= 1);
    let n = p.degree();
    let mut m = IntMatrix::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, big(1));
    }
    for i in 0..n {
        m.set(i, n - 1, -p.coeff(i));
    }
    m
}

pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = IntMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    m
}

/// `P·M·P⁻¹`.
pub fn conjugate(m: &IntMatrix, p: &IntMatrix) -> IntMatrix {
    &(p * m) * &p.inverse_unimodular().unwrap()
}

/// Laplace expansion along the first row, memoized on used columns.
pub fn laplace_det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    let mut memo = std::collections::HashMap::new();
    fn go(m: &IntMatrix, row: usize, used: u32, memo: &mut std::collections::HashMap<u32, BigInt>) -> BigInt {
        if row == m.rows() {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        let mut sign = 1;
        for c in 0..m.cols() {
            if used & (1 << c) != 0 {
                continue;
            }
            let e = m.get(row, c);
            if !e.is_zero() {
                let sub = go(m, row + 1, used | (1 << c), memo);
                acc += e * sub * sign;
            }
            sign = -sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if n == 0 {
        return BigInt::one();
    }
    go(m, 0, 0, &mut memo)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors `d_k` = gcd of all `k×k` minors, for `k = 1..=rank`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub = IntMatrix::from_rows(
                    &rs.iter()
                        .map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                g = g.gcd(&laplace_det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k / d_{k−1}`.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let d = determinantal_divisors(m);
    let mut prev = BigInt::one();
    d.into_iter()
        .map(|dk| {
            let f = &dk / &prev;
            prev = dk;
            f
        })
        .collect()
}

/// Multiplicity of `root` as a root of `p`.
pub fn root_multiplicity(p: &IntPoly, root: i64) -> usize {
    let lin = poly(&[-root, 1]);
    let mut p = p.clone();
    let mut k = 0;
    while !p.is_zero() && p.eval(&big(root)).is_zero() {
        p = p.div_exact(&lin).unwrap();
        k += 1;
    }
    k
}

/// Eigenvalue 1 of `a` has equal algebraic and geometric multiplicity.
pub fn semisimple_at_one(a: &IntMatrix) -> bool {
    let alg = root_multiplicity(&a.char_poly().unwrap(), 1);
    let geo = a.rows() - a.minus_identity().unwrap().rank();
    alg == geo
}

/// Random monic polynomial of exact degree `d` with coefficients in
/// `[-c, c]` and nonzero constant term.
pub fn random_monic<R: Rng>(rng: &mut R, d: usize, c: i64) -> IntPoly {
    let mut cs: Vec<i64> = (0..d).map(|_| rng.gen_range(-c..=c)).collect();
    if cs[0] == 0 {
        cs[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    cs.push(1);
    poly(&cs)
}

/// Random automorphism of `F_rank` as a product of Nielsen moves.
pub fn random_automorphism<R: Rng>(rng: &mut R, rank: usize, moves: usize) -> Automorphism {
    let dom = SurfacePresentation::free(rank).unwrap();
    let mut acc = Automorphism::identity(dom);
    for _ in 0..moves {
        let step = if rank == 1 || rng.gen_range(0..5) == 0 {
            let i = rng.gen_range(0..rank);
            let images = (0..rank)
                .map(|j| {
                    let g = FreeWord::generator(j);
                    if j == i {
                        g.inverse()
                    } else {
                        g
                    }
                })
                .collect();
            Automorphism::from_images(dom, images).unwrap()
        } else {
            let i = rng.gen_range(0..rank);
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            let t = Automorphism::transvection(dom, i, j, rng.gen_bool(0.5)).unwrap();
            if rng.gen_bool(0.5) {
                t.inverse()
            } else {
                t
            }
        };
        acc = step.compose(&acc).unwrap();
    }
    acc
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> FreeWord {
    FreeWord::new((0..len).map(|_| fibertor::Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5))))
}

/// Matrix with cyclotomic characteristic polynomial: a block sum of
/// companion matrices of `Φ_n` (`n ≤ 12`) conjugated by a random
/// unimodular matrix. It has finite order, so it is semisimple.
pub fn random_cyclotomic<R: Rng>(rng: &mut R, max_size: usize) -> IntMatrix {
    let mut blocks = Vec::new();
    let mut size = 0;
    loop {
        let n = rng.gen_range(1..=12usize);
        let phi = fibertor::cyclotomic_poly(n).unwrap();
        if size + phi.degree() > max_size {
            if size > 0 && rng.gen_bool(0.5) {
                break;
            }
            continue;
        }
        size += phi.degree();
        blocks.push(companion(&phi));
        if size == max_size || rng.gen_bool(0.3) {
            break;
        }
    }
    let m = block_diag(&blocks);
    let p = random_unimodular(rng, m.rows(), 2 * m.rows(), 2);
    conjugate(&m, &p)
}

pub fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

/// Compares the characteristic polynomial of the lift of `a` to the mod-`n`
/// coinvariant cover with the product of the character predictions.
/// Returns `None` when the coinvariant quotient has torsion seen mod `n`
/// (characters then do not all factor through the free part).
pub fn character_decomposition_gap(a: &Automorphism, n: u64) -> Option<(f64, usize)> {
    use fibertor::alexander::{evaluate_character, fox_alexander_matrix, torus_presentation, Character, ComplexPoly};
    use fibertor::covers::{build_cover, coinvariant_cover_spec, lift_automorphism};
    let m = fox_alexander_matrix(&torus_presentation(a).unwrap()).unwrap();
    let b = m.nvars - 1;
    let spec = coinvariant_cover_spec(a, n).unwrap();
    if spec.degree as u64 != n.pow(b as u32) {
        return None;
    }
    let cover = build_cover(&spec).unwrap();
    let lifted = lift_automorphism(a, &cover).unwrap();
    let cp = ComplexPoly::from_int(&lifted.matrix.char_poly().unwrap());
    let mut prod = ComplexPoly {
        coeffs: vec![num_complex::Complex64::new(1.0, 0.0)],
        error_bound: 0.0,
    };
    for chi in Character::all_mod(b, n) {
        prod = prod.mul(&evaluate_character(&m, &chi).unwrap());
    }
    Some((cp.max_coeff_distance(&prod), spec.degree))
}
