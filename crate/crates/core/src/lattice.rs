//! Sums over the integer lattice that extend past the retained Fourier band.
//!
//! A truncated matrix only sees modes `|n| <= N_max`. Traces and Hilbert-Schmidt norms of the
//! underlying infinite-dimensional operators also pick up the modes outside the band; for the
//! band-limited potentials used here those contributions are sums of smooth rational functions
//! of the mode number. They are evaluated by partial sums at geometrically growing cutoffs
//! followed by polynomial extrapolation in the reciprocal cutoff.

use num_complex::Complex64;

/// Extrapolation parameters for one-sided lattice tails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailRule {
    /// Length of the first partial sum.
    pub first_block: usize,
    /// Number of doublings; the rule uses `levels + 1` partial sums.
    pub levels: usize,
}

impl Default for TailRule {
    fn default() -> Self {
        Self { first_block: 128, levels: 6 }
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Value at zero of the interpolating polynomial through `(h_i, s_i)` (Neville's scheme).
pub fn extrapolate_to_zero(h: &[f64], s: &[Complex64]) -> Complex64 {
    assert_eq!(h.len(), s.len());
    let mut p = s.to_vec();
    let n = p.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = p[i] * h[i - k] - p[i - 1] * h[i];
            p[i] = num / (h[i - k] - h[i]);
        }
    }
    p[n - 1]
}

/// `sum_{n > start} f(n)` for a summand with an asymptotic expansion in powers of `1/n`
/// whose leading power is at least 2.
pub fn tail_sum(f: impl Fn(i64) -> Complex64, start: i64, rule: TailRule) -> Complex64 {
    let mut acc = CompensatedSum::default();
    let mut n = start;
    let mut block = rule.first_block as i64;
    let mut hs = Vec::with_capacity(rule.levels + 1);
    let mut sums = Vec::with_capacity(rule.levels + 1);
    for level in 0..=rule.levels {
        let stop = start + block;
        while n < stop {
            n += 1;
            acc.add(f(n));
        }
        hs.push(1.0 / stop as f64);
        sums.push(acc.value());
        if level < rule.levels {
            block *= 2;
        }
    }
    extrapolate_to_zero(&hs, &sums)
}

pub fn tail_sum_real(f: impl Fn(i64) -> f64, start: i64, rule: TailRule) -> f64 {
    tail_sum(|n| Complex64::new(f(n), 0.0), start, rule).re
}

/// `sum_{n in Z, |n| > cutoff} f(n)`.
pub fn outer_sum(f: impl Fn(i64) -> Complex64, cutoff: i64, rule: TailRule) -> Complex64 {
    tail_sum(&f, cutoff, rule) + tail_sum(|n| f(-n), cutoff, rule)
}

/// `sum_{n in Z} f(n)`: explicit over `|n| <= cutoff`, extrapolated beyond.
pub fn lattice_sum(f: impl Fn(i64) -> Complex64, cutoff: i64, rule: TailRule) -> Complex64 {
    let mut acc = CompensatedSum::default();
    for n in -cutoff..=cutoff {
        acc.add(f(n));
    }
    acc.value() + outer_sum(f, cutoff, rule)
}
