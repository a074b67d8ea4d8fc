//! Seeded generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use modext::linalg::{FqMatrix, PrimeField};
use modext::modcode::{Alphabet, Code, MonomialMap};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

pub fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut impl Rng) -> FqMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.q())).collect();
    FqMatrix::from_residues(f, rows, cols, data).unwrap()
}

pub fn random_invertible(f: PrimeField, k: usize, rng: &mut impl Rng) -> FqMatrix {
    loop {
        let a = random_matrix(f, k, k, rng);
        if a.is_invertible() {
            return a;
        }
    }
}

/// Generators biased toward low rank so kernels vary.
pub fn random_generator(f: PrimeField, t: usize, k: usize, rng: &mut impl Rng) -> FqMatrix {
    match rng.gen_range(0..4) {
        0 => FqMatrix::zeros(f, t, k),
        1 if t > 0 && k > 0 => {
            // rank at most 1
            let u = random_matrix(f, t, 1, rng);
            let v = random_matrix(f, 1, k, rng);
            u.mul(&v).unwrap()
        }
        _ => random_matrix(f, t, k, rng),
    }
}

pub fn random_code(alphabet: Alphabet, t: usize, n: usize, rng: &mut impl Rng) -> Code {
    let gens = (0..n).map(|_| random_generator(alphabet.field, t, alphabet.k, rng)).collect();
    Code::new(alphabet, t, gens).unwrap()
}

pub fn random_monomial(f: PrimeField, n: usize, k: usize, rng: &mut impl Rng) -> MonomialMap {
    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.shuffle(rng);
    let autos = (0..n).map(|_| random_invertible(f, k, rng)).collect();
    MonomialMap { permutation, autos }
}

/// All `rows x cols` matrices over `F_q`, by a plain odometer.
pub fn all_matrices(f: PrimeField, rows: usize, cols: usize) -> Vec<FqMatrix> {
    let len = rows * cols;
    let total = (f.q() as usize).pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let data = (0..len)
                .map(|_| {
                    let d = (idx % f.q() as usize) as u32;
                    idx /= f.q() as usize;
                    d
                })
                .collect();
            FqMatrix::from_residues(f, rows, cols, data).unwrap()
        })
        .collect()
}

fn naive_mul(f: PrimeField, x: &FqMatrix, g: &FqMatrix) -> Vec<u32> {
    let (m, t, k) = (x.rows(), x.cols(), g.cols());
    let mut out = vec![0u32; m * k];
    for i in 0..m {
        for j in 0..k {
            let mut acc = 0u64;
            for l in 0..t {
                acc += x.get(i, l) as u64 * g.get(l, j) as u64;
            }
            out[i * k + j] = (acc % f.q() as u64) as u32;
        }
    }
    out
}

/// Weight of `x ↦ (x·G_i)_i`, computed without the library's arithmetic.
pub fn naive_weight(code: &Code, x: &FqMatrix) -> usize {
    let f = code.alphabet.field;
    code.generators().filter(|g| naive_mul(f, x, g).iter().any(|&v| v != 0)).count()
}

/// Compares weights on every element of `W`.
pub fn naive_isometry(lam: &Code, mu: &Code) -> bool {
    let f = lam.alphabet.field;
    all_matrices(f, lam.alphabet.m, lam.space.t).iter().all(|x| naive_weight(lam, x) == naive_weight(mu, x))
}

/// `∏ (q^t - q^j) / ∏ (q^i - q^j)` over `j < i`: counts ordered bases.
pub fn subspace_count_by_bases(t: u32, i: u32, q: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    if i > t {
        return BigInt::from(0);
    }
    let q = BigInt::from(q);
    let num: BigInt = (0..i).map(|j| q.pow(t) - q.pow(j)).product();
    let den: BigInt = (0..i).map(|j| q.pow(i) - q.pow(j)).product();
    num / den
}
