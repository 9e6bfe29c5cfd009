//! One-dimensional Gauss rules (Laguerre, Legendre, Hermite) and the uniform
//! periodic rule. Nodes come from Newton iteration on the three-term
//! recurrences, seeded with the usual asymptotic guesses.

use std::f64::consts::{PI, TAU};

use crate::error::{QuatError, Result};

/// Nodes and weights of a one-dimensional rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Affine change of variable `x ↦ scale·x`, weights multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        Self {
            nodes: self.nodes.iter().map(|x| x * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
        }
    }

    /// Weights multiplied by `factor`.
    pub fn reweighted(&self, factor: f64) -> Self {
        Self {
            nodes: self.nodes.clone(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }
}

const NEWTON_EPS: f64 = 1e-15;
const MAX_NEWTON: usize = 100;

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(QuatError::QuadratureOrder("rule needs at least one node".into()))
    } else {
        Ok(())
    }
}

/// Gauss–Laguerre rule for `∫_0^∞ e^{-t} g(t) dt`, exact for degree `2n − 1`.
pub fn gauss_laguerre(n: usize) -> Result<Rule> {
    check_order(n)?;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, pm1) = laguerre_pair(n, z);
            let dp = (nf * p - nf * pm1) / z;
            let z1 = z;
            z = z1 - p / dp;
            if (z - z1).abs() <= NEWTON_EPS * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(QuatError::QuadratureOrder(format!(
                "Gauss-Laguerre node {i} of {n} did not converge"
            )));
        }
        let (p, pm1) = laguerre_pair(n, z);
        let dp = (nf * p - nf * pm1) / z;
        nodes.push(z);
        weights.push(-1.0 / (dp * nf * pm1));
    }
    Ok(Rule { nodes, weights })
}

/// `(L_n(z), L_{n-1}(z))` by the three-term recurrence.
fn laguerre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}

/// Gauss–Legendre rule on `[-1, 1]`, exact for degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    check_order(n)?;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..MAX_NEWTON {
            let (p, pm1) = legendre_pair(n, z);
            let dp = nf * (z * p - pm1) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p / dp;
            if (z - z1).abs() <= NEWTON_EPS {
                break;
            }
        }
        let (p, pm1) = legendre_pair(n, z);
        let dp_final = nf * (z * p - pm1) / (z * z - 1.0);
        let w = 2.0 / ((1.0 - z * z) * dp_final * dp_final);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(Rule { nodes, weights })
}

fn legendre_pair(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}

/// Gauss–Hermite rule for `∫_ℝ e^{-x²} g(x) dx`, exact for degree `2n − 1`.
pub fn gauss_hermite(n: usize) -> Result<Rule> {
    check_order(n)?;
    let nf = n as f64;
    let pim4 = PI.powf(-0.25);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (p, pm1) = hermite_orthonormal_pair(n, z, pim4);
            let dp = (2.0 * nf).sqrt() * pm1;
            let z1 = z;
            z = z1 - p / dp;
            if (z - z1).abs() <= NEWTON_EPS * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(QuatError::QuadratureOrder(format!(
                "Gauss-Hermite node {i} of {n} did not converge"
            )));
        }
        let (_, pm1) = hermite_orthonormal_pair(n, z, pim4);
        let dp = (2.0 * nf).sqrt() * pm1;
        nodes[i] = z;
        weights[i] = 2.0 / (dp * dp);
    }
    // nodes were found largest first; mirror into ascending order
    let mut rule_nodes = Vec::with_capacity(n);
    let mut rule_weights = Vec::with_capacity(n);
    for i in 0..half {
        rule_nodes.push(-nodes[i]);
        rule_weights.push(weights[i]);
    }
    for i in (0..n / 2).rev() {
        rule_nodes.push(nodes[i]);
        rule_weights.push(weights[i]);
    }
    if n % 2 == 1 {
        rule_nodes[half - 1] = 0.0;
    }
    Ok(Rule {
        nodes: rule_nodes,
        weights: rule_weights,
    })
}

/// Orthonormal Hermite values `(h̃_n(z), h̃_{n-1}(z))`.
fn hermite_orthonormal_pair(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Uniform rule on `[0, 2π)` with `n` nodes; exact for `e^{iaθ}`, `|a| < n`.
pub fn uniform_periodic(n: usize) -> Result<Rule> {
    check_order(n)?;
    let h = TAU / n as f64;
    Ok(Rule {
        nodes: (0..n).map(|k| k as f64 * h).collect(),
        weights: vec![h; n],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(m: usize) -> f64 {
        (1..=m).map(|k| k as f64).product()
    }

    #[test]
    fn laguerre_reproduces_factorials() {
        for n in [1usize, 2, 5, 11, 20] {
            let rule = gauss_laguerre(n).unwrap();
            for m in 0..2 * n {
                let got = rule.integrate(|t| t.powi(m as i32));
                let rel = (got - factorial(m)).abs() / factorial(m);
                assert!(rel < 1e-12, "n={n} m={m} rel={rel:e}");
            }
        }
    }

    #[test]
    fn legendre_moments() {
        for n in [1usize, 2, 3, 4, 9] {
            let rule = gauss_legendre(n).unwrap();
            for m in 0..2 * n {
                let exact = if m % 2 == 1 { 0.0 } else { 2.0 / (m as f64 + 1.0) };
                let got = rule.integrate(|x| x.powi(m as i32));
                assert!((got - exact).abs() < 1e-14, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn hermite_moments() {
        // ∫ x^{2k} e^{-x²} = Γ(k + 1/2)
        for n in [1usize, 2, 3, 6, 17, 24] {
            let rule = gauss_hermite(n).unwrap();
            let mut gamma = PI.sqrt();
            for k in 0..n {
                let got = rule.integrate(|x| x.powi(2 * k as i32));
                assert!((got - gamma).abs() / gamma < 1e-12, "n={n} k={k}");
                let odd = rule.integrate(|x| x.powi(2 * k as i32 + 1));
                assert!(odd.abs() < 1e-12 * gamma.max(1.0));
                gamma *= k as f64 + 0.5;
            }
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn uniform_kills_low_frequencies() {
        let rule = uniform_periodic(7).unwrap();
        for a in 1..7 {
            let c = rule.integrate(|t| (a as f64 * t).cos());
            let s = rule.integrate(|t| (a as f64 * t).sin());
            assert!(c.abs() < 1e-14 && s.abs() < 1e-14);
        }
        assert!((rule.integrate(|_| 1.0) - TAU).abs() < 1e-14);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_laguerre(0).is_err());
        assert!(gauss_hermite(0).is_err());
    }
}
