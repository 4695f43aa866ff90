//! Built-in analytic factor immersions and the complex-slot arithmetic of
//! the product construction.
//!
//! Real ambient spaces are complexified block-wise: C^(m+1) is stored as
//! (re, im) with the i-multiplication (v, w) -> (-w, v), so a real sphere
//! S^r sits inside C^(r+1) as (x, 0).

use crate::closure::AntipodalSymmetry;
use crate::{Error, Result};

/// A point of C^m in block layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexVec {
    pub fn zeros(m: usize) -> Self {
        ComplexVec {
            re: vec![0.0; m],
            im: vec![0.0; m],
        }
    }

    pub fn complex_dim(&self) -> usize {
        self.re.len()
    }

    /// Multiplication by r e^{i phase}.
    pub fn spin(&self, r: f64, phase: f64) -> ComplexVec {
        let (c, s) = (phase.cos(), phase.sin());
        let n = self.re.len();
        let mut out = ComplexVec::zeros(n);
        for j in 0..n {
            out.re[j] = r * (c * self.re[j] - s * self.im[j]);
            out.im[j] = r * (s * self.re[j] + c * self.im[j]);
        }
        out
    }

    /// Multiplication by i.
    pub fn times_i(&self) -> ComplexVec {
        ComplexVec {
            re: self.im.iter().map(|x| -x).collect(),
            im: self.re.clone(),
        }
    }

    /// Real coordinates in block layout [re..., im...].
    pub fn to_real(&self) -> Vec<f64> {
        let mut v = self.re.clone();
        v.extend_from_slice(&self.im);
        v
    }

    pub fn norm(&self) -> f64 {
        self.re
            .iter()
            .chain(self.im.iter())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }

    pub fn dot_real(&self, other: &ComplexVec) -> f64 {
        self.re
            .iter()
            .zip(&other.re)
            .chain(self.im.iter().zip(&other.im))
            .map(|(x, y)| x * y)
            .sum()
    }
}

/// The analytic factor immersions the construction ships with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorKind {
    /// The real equator sphere S^r inside C^(r+1) via (x, 0).
    Equator { dim: u32 },
    /// The constant map to (1, 0) in S^1, a zero-dimensional factor.
    Point,
    /// x -> (e^{i w x}, e^{-i w x})/sqrt(2), a great circle on the Clifford
    /// torus of S^3; the frequency fixes the chart period.
    CliffordCircle { frequency: f64 },
}

/// An analytic generator of a C-totally real spherical minimal factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorImmersion {
    pub kind: FactorKind,
}

impl FactorImmersion {
    pub fn equator(dim: u32) -> Self {
        FactorImmersion {
            kind: FactorKind::Equator { dim },
        }
    }

    pub fn point() -> Self {
        FactorImmersion {
            kind: FactorKind::Point,
        }
    }

    pub fn clifford_circle(frequency: f64) -> Self {
        FactorImmersion {
            kind: FactorKind::CliffordCircle { frequency },
        }
    }

    /// Default factor of the requested intrinsic dimension.
    pub fn of_dim(k: u32) -> Self {
        if k == 0 {
            Self::point()
        } else {
            Self::equator(k)
        }
    }

    pub fn intrinsic_dim(&self) -> usize {
        match self.kind {
            FactorKind::Equator { dim } => dim as usize,
            FactorKind::Point => 0,
            FactorKind::CliffordCircle { .. } => 1,
        }
    }

    pub fn ambient_complex_dim(&self) -> usize {
        match self.kind {
            FactorKind::Equator { dim } => dim as usize + 1,
            FactorKind::Point => 1,
            FactorKind::CliffordCircle { .. } => 2,
        }
    }

    pub fn ctotally_real(&self) -> bool {
        true
    }

    pub fn antipodal_symmetry(&self) -> AntipodalSymmetry {
        match self.kind {
            FactorKind::Equator { .. } => AntipodalSymmetry::Antipodal,
            FactorKind::Point => AntipodalSymmetry::NoAntipodalPairs,
            FactorKind::CliffordCircle { .. } => AntipodalSymmetry::Antipodal,
        }
    }

    /// Evaluates the immersion in the chart centered at `base`.
    ///
    /// Equator factors use the gnomonic chart about the base point index
    /// (the chart point is (e_base + sum x_i v_i) normalized, with {v_i}
    /// the remaining coordinate axes); Point has the empty chart and the
    /// Clifford circle its 1-D parameter.
    pub fn eval(&self, chart: &[f64], base: usize) -> Result<ComplexVec> {
        match self.kind {
            FactorKind::Equator { dim } => {
                let r = dim as usize;
                if chart.len() != r {
                    return Err(Error::Domain(format!(
                        "equator chart expects {r} coordinates, got {}",
                        chart.len()
                    )));
                }
                if base > r {
                    return Err(Error::Domain(format!("chart base index {base} > {r}")));
                }
                let mut v = vec![0.0; r + 1];
                v[base] = 1.0;
                let mut j = 0;
                for i in 0..=r {
                    if i != base {
                        v[i] = chart[j];
                        j += 1;
                    }
                }
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                Ok(ComplexVec {
                    re: v.into_iter().map(|x| x / norm).collect(),
                    im: vec![0.0; r + 1],
                })
            }
            FactorKind::Point => {
                if !chart.is_empty() {
                    return Err(Error::Domain("point factor has an empty chart".into()));
                }
                Ok(ComplexVec {
                    re: vec![1.0],
                    im: vec![0.0],
                })
            }
            FactorKind::CliffordCircle { frequency } => {
                if chart.len() != 1 {
                    return Err(Error::Domain("circle chart expects one coordinate".into()));
                }
                let phase = frequency * chart[0];
                let r = 0.5f64.sqrt();
                Ok(ComplexVec {
                    re: vec![r * phase.cos(), r * phase.cos()],
                    im: vec![r * phase.sin(), -r * phase.sin()],
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_images_are_unit_vectors() {
        let eq = FactorImmersion::equator(3);
        for chart in [[0.0, 0.0, 0.0], [0.3, -0.8, 0.25], [2.0, 1.0, -1.0]] {
            let p = eq.eval(&chart, 0).unwrap();
            assert!((p.norm() - 1.0).abs() < 1e-14);
        }
        let pt = FactorImmersion::point().eval(&[], 0).unwrap();
        assert!((pt.norm() - 1.0).abs() < 1e-15);
        let cc = FactorImmersion::clifford_circle(3f64.sqrt());
        for x in [0.0, 0.7, -2.1] {
            assert!((cc.eval(&[x], 0).unwrap().norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn factors_are_ctotally_real_numerically() {
        // <i f(x), df/dx_j> = 0 via central differences
        let h = 1e-6;
        let check = |f: &FactorImmersion, chart: &[f64]| {
            let p = f.eval(chart, 0).unwrap();
            let ip = p.times_i();
            for j in 0..chart.len() {
                let mut plus = chart.to_vec();
                let mut minus = chart.to_vec();
                plus[j] += h;
                minus[j] -= h;
                let (fp, fm) = (f.eval(&plus, 0).unwrap(), f.eval(&minus, 0).unwrap());
                let mut deriv = ComplexVec::zeros(p.complex_dim());
                for m in 0..p.complex_dim() {
                    deriv.re[m] = (fp.re[m] - fm.re[m]) / (2.0 * h);
                    deriv.im[m] = (fp.im[m] - fm.im[m]) / (2.0 * h);
                }
                assert!(ip.dot_real(&deriv).abs() < 1e-10);
            }
        };
        check(&FactorImmersion::equator(2), &[0.2, -0.4]);
        check(&FactorImmersion::clifford_circle(3f64.sqrt()), &[0.5]);
    }

    #[test]
    fn complex_spin_matches_complex_multiplication() {
        let v = ComplexVec {
            re: vec![0.3, -0.5],
            im: vec![0.1, 0.9],
        };
        let w = v.spin(2.0, 0.7);
        use num_complex::Complex64;
        for j in 0..2 {
            let z = Complex64::new(v.re[j], v.im[j]) * Complex64::from_polar(2.0, 0.7);
            assert!((w.re[j] - z.re).abs() < 1e-15);
            assert!((w.im[j] - z.im).abs() < 1e-15);
        }
        let iv = v.times_i();
        assert_eq!(iv.re, vec![-0.1, -0.9]);
        assert_eq!(iv.im, vec![0.3, -0.5]);
    }
}
