#![allow(dead_code)]

use catlaw::{Field, Rational};
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |a, v| a * q(v))
}

/// Weights `w` on `nodes` with `Σ w_j x_j^s = d^k/dx^k x^s |_{x=z}` for
/// `s < nodes.len()`, by exact Gaussian elimination on the Vandermonde system.
pub fn vandermonde_weights(nodes: &[Rational], z: &Rational, k: usize) -> Vec<Rational> {
    let n = nodes.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|s| {
            let mut row: Vec<Rational> = nodes.iter().map(|x| pow(x, s)).collect();
            let rhs = if s < k { Rational::zero() } else { factorial(s) / factorial(s - k) * pow(z, s - k) };
            row.push(rhs);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Vandermonde matrix is regular");
        a.swap(col, piv);
        let inv = Rational::one() / a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

pub fn pow(x: &Rational, s: usize) -> Rational {
    (0..s).fold(Rational::one(), |acc, _| acc * x)
}

pub fn int_nodes(lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(q).collect()
}

/// `k`-th derivative at `z` of the Lagrange basis polynomial of node `j`,
/// by direct expansion of the product into monomial coefficients.
pub fn lagrange_derivative(nodes: &[Rational], j: usize, z: &Rational, k: usize) -> Rational {
    let mut coeffs = vec![Rational::one()];
    let mut denom = Rational::one();
    for (r, x) in nodes.iter().enumerate() {
        if r == j {
            continue;
        }
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c.clone();
            next[d] -= c * x;
        }
        coeffs = next;
        denom *= &nodes[j] - x;
    }
    let mut sum = Rational::zero();
    for (d, c) in coeffs.iter().enumerate().skip(k) {
        sum += c * factorial(d) / factorial(d - k) * pow(z, d - k);
    }
    sum / denom
}

pub fn to_f64(r: &Rational) -> f64 {
    use catlaw::Real;
    f64::from_rational(r)
}

/// Relative error against `exact`, absolute where `exact` is zero.
pub fn rel_err(got: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        got.abs()
    } else {
        ((got - exact) / exact).abs()
    }
}
