//! Polynomial functions on the unit sphere, used as radial perturbation
//! basis functions. Polynomials in the unit direction are smooth across
//! the polar caps, which keeps radial graphs globally regular.

/// Polynomial in (x, y, z) as a sum of monomials `c * x^i y^j z^k`.
#[derive(Debug, Clone)]
pub struct SpherePoly {
    terms: Vec<(f64, [u32; 3])>,
}

impl SpherePoly {
    pub fn new(terms: Vec<(f64, [u32; 3])>) -> Self {
        Self { terms }
    }

    /// cos(k * theta) as a polynomial in z = cos(theta) (Chebyshev T_k).
    pub fn cos_polar(k: u32) -> Self {
        // T_0 = 1, T_1 = z, T_{n+1} = 2 z T_n - T_{n-1}, coefficients in z.
        let mut t0 = vec![1.0];
        let mut t1 = vec![0.0, 1.0];
        if k == 0 {
            return Self::from_z_coeffs(&t0);
        }
        for _ in 1..k {
            let mut next = vec![0.0; t1.len() + 1];
            for (i, c) in t1.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, c) in t0.iter().enumerate() {
                next[i] -= c;
            }
            t0 = std::mem::replace(&mut t1, next);
        }
        Self::from_z_coeffs(&t1)
    }

    fn from_z_coeffs(coeffs: &[f64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| (*c, [0, 0, k as u32]))
            .collect();
        Self { terms }
    }

    /// The eight-function family used by the probe: first and second
    /// degree harmonics restricted to the sphere.
    pub fn probe_family() -> Vec<SpherePoly> {
        let m = |c: f64, e: [u32; 3]| SpherePoly::new(vec![(c, e)]);
        vec![
            m(1.0, [0, 0, 1]),                                        // z
            m(1.0, [1, 0, 0]),                                        // x
            m(1.0, [0, 1, 0]),                                        // y
            SpherePoly::new(vec![(2.0, [0, 0, 2]), (-1.0, [0, 0, 0])]), // 2z^2 - 1
            m(1.0, [1, 0, 1]),                                        // xz
            m(1.0, [0, 1, 1]),                                        // yz
            SpherePoly::new(vec![(1.0, [2, 0, 0]), (-1.0, [0, 2, 0])]), // x^2 - y^2
            m(1.0, [1, 1, 0]),                                        // xy
        ]
    }

    pub fn eval(&self, v: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * pow(v[0], e[0]) * pow(v[1], e[1]) * pow(v[2], e[2]))
            .sum()
    }

    pub fn grad(&self, v: [f64; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for (c, e) in &self.terms {
            for axis in 0..3 {
                if e[axis] == 0 {
                    continue;
                }
                let mut term = c * e[axis] as f64;
                for k in 0..3 {
                    let p = if k == axis { e[k] - 1 } else { e[k] };
                    term *= pow(v[k], p);
                }
                g[axis] += term;
            }
        }
        g
    }

    pub fn hess(&self, v: [f64; 3]) -> [[f64; 3]; 3] {
        let mut h = [[0.0; 3]; 3];
        for (c, e) in &self.terms {
            for a in 0..3 {
                for b in 0..3 {
                    let mut exps = *e;
                    let mut coef = *c;
                    for axis in [a, b] {
                        if exps[axis] == 0 {
                            coef = 0.0;
                            break;
                        }
                        coef *= exps[axis] as f64;
                        exps[axis] -= 1;
                    }
                    if coef != 0.0 {
                        h[a][b] += coef
                            * pow(v[0], exps[0])
                            * pow(v[1], exps[1])
                            * pow(v[2], exps[2]);
                    }
                }
            }
        }
        h
    }
}

fn pow(x: f64, n: u32) -> f64 {
    let mut r = 1.0;
    for _ in 0..n {
        r *= x;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_polar_matches_trig() {
        let p = SpherePoly::cos_polar(3);
        for k in 0..20 {
            let theta = 0.15 * k as f64;
            let z = theta.cos();
            let s = theta.sin();
            let v = [s * 0.6, s * 0.8, z];
            assert!((p.eval(v) - (3.0 * theta).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn grad_and_hess_match_finite_differences() {
        let p = SpherePoly::new(vec![(1.5, [2, 1, 0]), (-0.7, [0, 1, 2]), (0.3, [1, 1, 1])]);
        let v = [0.4, -0.9, 0.55];
        let h = 1e-5;
        let g = p.grad(v);
        for axis in 0..3 {
            let mut vp = v;
            let mut vm = v;
            vp[axis] += h;
            vm[axis] -= h;
            let fd = (p.eval(vp) - p.eval(vm)) / (2.0 * h);
            assert!((g[axis] - fd).abs() < 1e-8);
        }
        let hess = p.hess(v);
        for a in 0..3 {
            for b in 0..3 {
                let mut vpp = v;
                vpp[a] += h;
                vpp[b] += h;
                let mut vpm = v;
                vpm[a] += h;
                vpm[b] -= h;
                let mut vmp = v;
                vmp[a] -= h;
                vmp[b] += h;
                let mut vmm = v;
                vmm[a] -= h;
                vmm[b] -= h;
                let fd = (p.eval(vpp) - p.eval(vpm) - p.eval(vmp) + p.eval(vmm)) / (4.0 * h * h);
                assert!((hess[a][b] - fd).abs() < 1e-6);
            }
        }
    }
}
