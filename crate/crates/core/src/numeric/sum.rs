/// Neumaier's variant of Kahan compensated summation.
///
/// Unlike plain Kahan it stays accurate when an incoming term is larger in
/// magnitude than the running sum, which is the normal situation in the
/// growing phase of an alternating series.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub const fn new(first: f64) -> Self {
        Self {
            sum: first,
            compensation: 0.0,
        }
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

    /// Multiply the accumulated state by 2^exp.
    pub fn scale_pow2(&mut self, exp: i32) {
        self.sum = libm::scalbn(self.sum, exp);
        self.compensation = libm::scalbn(self.compensation, exp);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_small_terms_next_to_large_ones() {
        let mut s = NeumaierSum::new(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn beats_naive_on_many_small_terms() {
        let mut s = NeumaierSum::new(0.0);
        let mut naive = 0.0;
        for _ in 0..1_000_000 {
            s.add(0.1);
            naive += 0.1;
        }
        assert!((s.value() - 100_000.0).abs() < 1e-9);
        assert!((naive - 100_000.0_f64).abs() > 1e-7);
    }
}
