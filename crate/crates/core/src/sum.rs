//! Compensated and exact summation primitives.
//!
//! `Neumaier` is the workhorse for quadrature accumulation; `Expansion` keeps
//! an exact multi-component representation (Shewchuk-style) so that reductions
//! over the zero store are order-independent bit for bit.

use num_complex::Complex64;

/// Kahan-Babushka-Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Complex compensated accumulator (componentwise Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let sum = a + b;
    let b_virtual = sum - a;
    let a_virtual = sum - b_virtual;
    (sum, (a - a_virtual) + (b - b_virtual))
}

/// Exact running sum of f64 terms as a nonoverlapping expansion.
///
/// The represented value is the exact real sum of everything added, so two
/// accumulators built from the same multiset of terms agree exactly after
/// [`Expansion::value`], whatever the insertion order.
#[derive(Debug, Clone, Default)]
pub struct Expansion {
    components: Vec<f64>,
}

impl Expansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        debug_assert!(value.is_finite());
        let mut q = value;
        let mut out = Vec::with_capacity(self.components.len() + 1);
        for &c in &self.components {
            let (sum, err) = two_sum(q, c);
            if err != 0.0 {
                out.push(err);
            }
            q = sum;
        }
        if q != 0.0 || out.is_empty() {
            out.push(q);
        }
        self.components = out;
    }

    pub fn add_all(&mut self, other: &Expansion) {
        for &c in &other.components {
            self.add(c);
        }
    }

    /// Rounds the exact value to f64: naive pass over the nonoverlapping
    /// components, then one exact-residual correction.
    pub fn value(&self) -> f64 {
        let mut s = 0.0;
        for &c in &self.components {
            s += c;
        }
        let mut residual = self.clone();
        residual.add(-s);
        let mut r = 0.0;
        for &c in &residual.components {
            r += c;
        }
        s + r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_tail() {
        let mut acc = Neumaier::new();
        for &x in &[1.0e16, 1.0, -1.0e16] {
            acc.add(x);
        }
        assert_eq!(acc.value(), 1.0);
    }

    #[test]
    fn expansion_is_order_independent() {
        let terms = [1.0e16, 3.5e-7, -1.0e16, 0.1, 7.25, -0.3e-12];
        let mut fwd = Expansion::new();
        let mut rev = Expansion::new();
        for &t in &terms {
            fwd.add(t);
        }
        for &t in terms.iter().rev() {
            rev.add(t);
        }
        assert_eq!(fwd.value(), rev.value());
    }

    #[test]
    fn expansion_split_equals_single_pass() {
        let terms: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 * 1e-3 - 0.05).collect();
        let mut whole = Expansion::new();
        for &t in &terms {
            whole.add(t);
        }
        let mut left = Expansion::new();
        let mut right = Expansion::new();
        for &t in &terms[..77] {
            left.add(t);
        }
        for &t in &terms[77..] {
            right.add(t);
        }
        left.add_all(&right);
        assert_eq!(whole.value(), left.value());
    }
}
