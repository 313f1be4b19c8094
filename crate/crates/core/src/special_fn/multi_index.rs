use std::fmt;

use super::gamma::ln_factorial;

/// Multi-index `α ∈ ℕⁿ`, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Panics if `entries` is empty.
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty(), "multi-index needs at least one axis");
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The unit index `e_axis`.
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut v = vec![0; n];
        v[axis] = 1;
        Self::new(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|α| = Σ α_j`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add_unit(&self, axis: usize) -> Self {
        let mut v = self.0.clone();
        v[axis] += 1;
        MultiIndex(v)
    }

    /// `α − e_axis`, defined only when `α_axis ≥ 1`.
    pub fn sub_unit(&self, axis: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[axis] = v[axis].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    pub fn plus(&self, other: &MultiIndex) -> Self {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `ln α! = Σ ln α_j!`.
    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&a| ln_factorial(a)).sum()
    }

    /// All indices of length `n` with `|α| ≤ max_order`, in lexicographic order.
    pub fn simplex(n: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill_simplex(&mut current, 0, max_order, &mut out);
        out
    }
}

fn fill_simplex(current: &mut Vec<u32>, axis: usize, budget: u32, out: &mut Vec<MultiIndex>) {
    if axis == current.len() {
        out.push(MultiIndex(current.clone()));
        return;
    }
    for a in 0..=budget {
        current[axis] = a;
        fill_simplex(current, axis + 1, budget - a, out);
    }
    current[axis] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_is_sorted_and_complete() {
        let s = MultiIndex::simplex(3, 4);
        // C(4 + 3, 3)
        assert_eq!(s.len(), 35);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|a| a.order() <= 4));
    }

    #[test]
    fn unit_arithmetic() {
        let a = MultiIndex::new(vec![2, 0]);
        assert_eq!(a.sub_unit(0), Some(MultiIndex::new(vec![1, 0])));
        assert_eq!(a.sub_unit(1), None);
        assert_eq!(a.add_unit(1).order(), 3);
        assert_eq!(a.to_string(), "(2,0)");
    }
}
