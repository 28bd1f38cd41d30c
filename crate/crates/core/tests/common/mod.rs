//! Seeded generators and independent oracles shared by the integration
//! tests. The oracles act on explicit monomials and never call into the
//! product code they are checking.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mellin_core::micro::{Derivation, MicroOp};
use mellin_core::rational::{rat, ratio};
use mellin_core::{DiffOp, DiffnceOp, LaurentPolynomial, LocalDiffOp, Presentation, Rational, TruncatedSeries};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Function = BTreeMap<i64, Rational>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = rng.gen_range(1..=3);
    ratio(n, d)
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = small_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn add_to(f: &mut Function, e: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = f.entry(e).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        f.remove(&e);
    }
}

/// Random operator with `z`-exponents in `[-zr, zr]` and order `≤ max_order`.
pub fn diffop(rng: &mut ChaCha8Rng, presentation: Presentation, zr: i64, max_order: u32) -> DiffOp {
    let mut op = DiffOp::zero(presentation);
    let count = rng.gen_range(1..=5);
    for _ in 0..count {
        let r = rng.gen_range(-zr..=zr);
        let j = rng.gen_range(0..=max_order);
        op.add_term(r, j, nonzero_rational(rng));
    }
    op
}

pub fn nonzero_diffop(rng: &mut ChaCha8Rng, zr: i64, max_order: u32) -> DiffOp {
    loop {
        let op = diffop(rng, Presentation::Theta, zr, max_order);
        if !op.is_zero() {
            return op;
        }
    }
}

/// Image of `z^k` under `op`, computed term by term:
/// `z^r T^j z^k = k^j z^{k+r}` and `z^r ∂^j z^k = (k)_j z^{k+r-j}`.
pub fn act_on_monomial(op: &DiffOp, k: i64) -> Function {
    let mut out = Function::new();
    for ((r, j), c) in op.terms() {
        match op.presentation() {
            Presentation::Theta => {
                let factor = rat(k).pow(j as i32);
                add_to(&mut out, k + r, c * factor);
            }
            Presentation::D => {
                let mut falling = rat(1);
                for i in 0..j as i64 {
                    falling *= rat(k - i);
                }
                add_to(&mut out, k + r - j as i64, c * falling);
            }
        }
    }
    out
}

pub fn act(op: &DiffOp, f: &Function) -> Function {
    let mut out = Function::new();
    for (&k, c) in f {
        for (e, v) in act_on_monomial(op, k) {
            add_to(&mut out, e, v * c);
        }
    }
    out
}

pub fn monomial_fn(k: i64) -> Function {
    Function::from([(k, rat(1))])
}

pub fn diffnce(rng: &mut ChaCha8Rng, phi_range: i64, max_eta: u32) -> DiffnceOp {
    let mut op = DiffnceOp::zero();
    let count = rng.gen_range(1..=5);
    for _ in 0..count {
        let i = rng.gen_range(-phi_range..=phi_range);
        let e = rng.gen_range(0..=max_eta);
        op.add_term(i, e, nonzero_rational(rng));
    }
    op
}

/// `(η^e Φ^i) f = η^e f(η + i)` on polynomials in `η`, with the shift
/// expanded binomially.
pub fn act_difference(op: &DiffnceOp, f: &Function) -> Function {
    let mut out = Function::new();
    for ((i, e), c) in op.terms() {
        for (&m, a) in f {
            assert!(m >= 0);
            let mut binom = rat(1);
            for l in 0..=m {
                // binom(m, l) i^{m-l} η^l
                let term = &binom * rat(i).pow((m - l) as i32) * a * c;
                add_to(&mut out, l + e as i64, term);
                binom = binom * rat(m - l) / rat(l + 1);
            }
        }
    }
    out
}

pub fn poly(rng: &mut ChaCha8Rng, lo: i64, hi: i64, density: f64) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    for e in lo..=hi {
        if rng.gen_bool(density) {
            out.add_term(e, nonzero_rational(rng));
        }
    }
    out
}

pub fn series(rng: &mut ChaCha8Rng, lo: i64, precision: i64) -> TruncatedSeries {
    TruncatedSeries::from_poly(&poly(rng, lo, precision - 1, 0.5), precision)
}

/// Normalized local operator with order `≤ 4` and coefficient valuations
/// `≤ 4`.
pub fn local_op(rng: &mut ChaCha8Rng) -> LocalDiffOp {
    let d = rng.gen_range(0..=4usize);
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let v = rng.gen_range(0..=4);
        let mut c = poly(rng, v + 1, v + 3, 0.5);
        if i == d || rng.gen_bool(0.7) {
            c.add_term(v, nonzero_rational(rng));
        }
        coeffs.push(c);
    }
    LocalDiffOp::new(coeffs).expect("nonzero leading coefficient").normalized()
}

pub fn tag(rng: &mut ChaCha8Rng) -> Derivation {
    match rng.gen_range(0..3) {
        0 => Derivation::DeltaS(Rational::zero()),
        1 => Derivation::DeltaS(nonzero_rational(rng)),
        _ => Derivation::DeltaInf,
    }
}

/// Microdifference operator with power-series coefficients known to
/// `u^precision`, top degree `top` and the given depth. When
/// `lead_valuation` is set the top coefficient has exactly that valuation.
pub fn micro_op(
    rng: &mut ChaCha8Rng,
    tag: &Derivation,
    top: i64,
    depth: usize,
    precision: i64,
    lead_valuation: Option<i64>,
) -> MicroOp {
    let mut coeffs = Vec::with_capacity(depth);
    for k in 0..depth {
        let mut p = poly(rng, 0, 4, 0.4);
        if k == 0 {
            if let Some(v) = lead_valuation {
                p = poly(rng, v + 1, v + 3, 0.5);
                p.add_term(v, nonzero_rational(rng));
            }
        }
        coeffs.push(TruncatedSeries::from_poly(&p, precision));
    }
    MicroOp::new(tag.clone(), top, coeffs).expect("nonempty window")
}

pub fn rational_op(terms: &[(i64, u32, Rational)]) -> DiffOp {
    DiffOp::from_terms(Presentation::Theta, terms.iter().cloned().map(|(r, j, c)| ((r, j), c)))
}

pub fn int_op(terms: &[(i64, u32, i64)]) -> DiffOp {
    rational_op(&terms.iter().map(|&(r, j, c)| (r, j, rat(c))).collect::<Vec<_>>())
}

/// Hand-checked operators whose presentation has no punctual part.
pub fn curated() -> Vec<(&'static str, DiffOp)> {
    vec![
        ("(z-1)T + 1", int_op(&[(1, 1, 1), (0, 1, -1), (0, 0, 1)])),
        ("T - z", int_op(&[(0, 1, 1), (1, 0, -1)])),
        ("T - z^-1", int_op(&[(0, 1, 1), (-1, 0, -1)])),
        ("T - 3", int_op(&[(0, 1, 1), (0, 0, -3)])),
        ("T + 1/2", rational_op(&[(0, 1, rat(1)), (0, 0, ratio(1, 2))])),
        ("zT - 1", int_op(&[(1, 1, 1), (0, 0, -1)])),
        ("zT + 1", int_op(&[(1, 1, 1), (0, 0, 1)])),
        ("zT - 2", int_op(&[(1, 1, 1), (0, 0, -2)])),
        ("z^-1 T - 1", int_op(&[(-1, 1, 1), (0, 0, -1)])),
        ("z^2 T - 1", int_op(&[(2, 1, 1), (0, 0, -1)])),
        ("(z-2)T + 1", int_op(&[(1, 1, 1), (0, 1, -2), (0, 0, 1)])),
        ("(z+1)T + 3", int_op(&[(1, 1, 1), (0, 1, 1), (0, 0, 3)])),
        ("(z-1)T + z", int_op(&[(1, 1, 1), (0, 1, -1), (1, 0, 1)])),
        ("(2z-1)T + 1", int_op(&[(1, 1, 2), (0, 1, -1), (0, 0, 1)])),
        ("(z-1)(z-2)T + z", int_op(&[(2, 1, 1), (1, 1, -3), (0, 1, 2), (1, 0, 1)])),
        ("T^2 - z", int_op(&[(0, 2, 1), (1, 0, -1)])),
        ("T^2 - z^2", int_op(&[(0, 2, 1), (2, 0, -1)])),
        ("T^2 + zT + 1", int_op(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)])),
    ]
}

/// `(z - s)^m T^d + lower terms`: the only finite singular point is `s`.
pub fn single_singularity(seed: u64) -> DiffOp {
    let mut rng = rng(seed);
    let s = nonzero_rational(&mut rng);
    let m = rng.gen_range(1..=3u32);
    let d = rng.gen_range(1..=3u32);
    let lead = LaurentPolynomial::from_terms([(0, -s), (1, rat(1))]).pow(m);
    let mut coeffs = vec![LaurentPolynomial::zero(); d as usize + 1];
    for c in coeffs.iter_mut().take(d as usize) {
        *c = poly(&mut rng, -2, 2, 0.4);
    }
    coeffs[d as usize] = lead;
    DiffOp::from_t_coefficients(&coeffs)
}
