//! Compensated (Neumaier) summation.
//!
//! Monte Carlo estimates here must be bit-identical regardless of how many
//! worker threads computed them, so floating-point sums cannot depend on
//! reduction order. The averaging code fixes an order — samples are summed
//! inside fixed-size blocks, blocks are combined sequentially by index — and
//! uses this compensated accumulator at both levels so precision does not
//! degrade with sample count.

/// Running Neumaier-compensated sum.
///
/// Like Kahan's algorithm but also correct when an incoming term is larger
/// in magnitude than the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one term.
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// The compensated total.
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sum an iterator of terms with compensation.
pub fn compensated_sum<I>(values: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}
