//! Piecewise quintic Hermite interpolation from exact value, slope and
//! curvature data at the nodes.

use alloc::vec::Vec;

/// Value and first two derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Quintic Hermite interpolant over strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct QuinticHermite {
    x: Vec<f64>,
    data: Vec<Jet2>,
}

impl QuinticHermite {
    /// Returns `None` unless there are at least two nodes with strictly increasing `x`.
    pub fn new(x: Vec<f64>, data: Vec<Jet2>) -> Option<Self> {
        if x.len() < 2 || x.len() != data.len() {
            return None;
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return None;
        }
        Some(Self { x, data })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn data(&self) -> &[Jet2] {
        &self.data
    }

    pub fn first(&self) -> f64 {
        self.x[0]
    }

    pub fn last(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    /// Index `k` of the segment `[x_k, x_{k+1}]` containing `x` (clamped to the ends).
    pub fn segment(&self, x: f64) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    /// Evaluates the interpolant and its first two derivatives. Points
    /// outside the node range are extrapolated from the end segment.
    pub fn eval(&self, x: f64) -> Jet2 {
        let k = self.segment(x);
        eval_segment(self.x[k], self.x[k + 1], &self.data[k], &self.data[k + 1], x)
    }
}

pub fn eval_segment(x0: f64, x1: f64, p: &Jet2, q: &Jet2, x: f64) -> Jet2 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;

    // Basis functions and their t-derivatives.
    let h0 = [
        1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
        -30.0 * t2 + 60.0 * t3 - 30.0 * t4,
        -60.0 * t + 180.0 * t2 - 120.0 * t3,
    ];
    let h1 = [
        t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
        1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
        -36.0 * t + 96.0 * t2 - 60.0 * t3,
    ];
    let h2 = [
        0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
        t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4,
        1.0 - 9.0 * t + 18.0 * t2 - 10.0 * t3,
    ];
    let h3 = [
        0.5 * t3 - t4 + 0.5 * t5,
        1.5 * t2 - 4.0 * t3 + 2.5 * t4,
        3.0 * t - 12.0 * t2 + 10.0 * t3,
    ];
    let h4 = [
        -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
        -12.0 * t2 + 28.0 * t3 - 15.0 * t4,
        -24.0 * t + 84.0 * t2 - 60.0 * t3,
    ];
    let h5 = [
        10.0 * t3 - 15.0 * t4 + 6.0 * t5,
        30.0 * t2 - 60.0 * t3 + 30.0 * t4,
        60.0 * t - 180.0 * t2 + 120.0 * t3,
    ];

    let combine = |i: usize| {
        p.value * h0[i]
            + h * p.d1 * h1[i]
            + h * h * p.d2 * h2[i]
            + q.value * h5[i]
            + h * q.d1 * h4[i]
            + h * h * q.d2 * h3[i]
    };
    Jet2 {
        value: combine(0),
        d1: combine(1) / h,
        d2: combine(2) / (h * h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(x: f64) -> Jet2 {
        // 3 - x + 2x^3 - x^5/4
        Jet2 {
            value: 3.0 - x + 2.0 * x.powi(3) - 0.25 * x.powi(5),
            d1: -1.0 + 6.0 * x * x - 1.25 * x.powi(4),
            d2: 12.0 * x - 5.0 * x.powi(3),
        }
    }

    #[test]
    fn reproduces_quintics_exactly() {
        let x = vec![-1.0, 0.3, 2.0];
        let data = x.iter().map(|&v| poly(v)).collect();
        let interp = QuinticHermite::new(x, data).unwrap();
        for i in 0..=30 {
            let v = -1.0 + 3.0 * i as f64 / 30.0;
            let got = interp.eval(v);
            let want = poly(v);
            assert!((got.value - want.value).abs() < 1e-12);
            assert!((got.d1 - want.d1).abs() < 1e-11);
            assert!((got.d2 - want.d2).abs() < 1e-10);
        }
    }

    #[test]
    fn node_values_are_exact() {
        let x: Vec<f64> = (0..9).map(|i| i as f64 * 0.25).collect();
        let data: Vec<Jet2> = x
            .iter()
            .map(|&v| Jet2 { value: v.sin(), d1: v.cos(), d2: -v.sin() })
            .collect();
        let interp = QuinticHermite::new(x.clone(), data.clone()).unwrap();
        for (xi, di) in x.iter().zip(&data) {
            assert_eq!(interp.eval(*xi).value, di.value);
        }
    }

    #[test]
    fn rejects_non_increasing_nodes() {
        let d = Jet2 { value: 0.0, d1: 0.0, d2: 0.0 };
        assert!(QuinticHermite::new(vec![0.0, 0.0], vec![d, d]).is_none());
        assert!(QuinticHermite::new(vec![0.0], vec![d]).is_none());
    }
}
