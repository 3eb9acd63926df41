use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform mesh of `n` nodes `x_i = x_lo + i dx`, `dx = (x_hi - x_lo) / n`.
///
/// With periodic boundaries `x_n` is identified with `x_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub n: usize,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl Grid {
    pub fn new(n: usize, x_lo: f64, x_hi: f64) -> Result<Self> {
        let g = Grid { n, x_lo, x_hi };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("grid needs at least 2 nodes, got {}", self.n)));
        }
        if !(self.x_hi > self.x_lo) {
            return Err(Error::config(format!(
                "grid bounds must satisfy x_lo < x_hi, got [{}, {}]",
                self.x_lo, self.x_hi
            )));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_lo + i as f64 * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    pub fn with_n(&self, n: usize) -> Self {
        Grid { n, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Periodic,
    /// Zeroth-order extrapolation of the nearest interior cell.
    Outflow,
}

/// Row of `n` interior cells of `m` components with `ghost` cells per side.
///
/// Storage is cell-major: component `c` of cell `i` lives at
/// `(i + ghost) * m + c`, for `-ghost <= i < n + ghost`.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    n: usize,
    ghost: usize,
    m: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> State<T> {
    pub fn new(n: usize, m: usize, ghost: usize) -> Self {
        State { n, ghost, m, data: vec![T::default(); (n + 2 * ghost) * m] }
    }

    /// State built from interior values laid out cell-major.
    pub fn from_interior(interior: &[T], m: usize, ghost: usize) -> Self {
        assert_eq!(interior.len() % m, 0);
        let n = interior.len() / m;
        let mut s = Self::new(n, m, ghost);
        s.interior_mut().copy_from_slice(interior);
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ghost(&self) -> usize {
        self.ghost
    }

    pub fn components(&self) -> usize {
        self.m
    }

    fn offset(&self, i: isize) -> usize {
        debug_assert!(i >= -(self.ghost as isize) && i < (self.n + self.ghost) as isize);
        (i + self.ghost as isize) as usize * self.m
    }

    pub fn cell(&self, i: isize) -> &[T] {
        let o = self.offset(i);
        &self.data[o..o + self.m]
    }

    pub fn cell_mut(&mut self, i: isize) -> &mut [T] {
        let o = self.offset(i);
        let m = self.m;
        &mut self.data[o..o + m]
    }

    /// `len` consecutive cells starting at `first`.
    pub fn cells(&self, first: isize, len: usize) -> &[T] {
        let o = self.offset(first);
        &self.data[o..o + len * self.m]
    }

    pub fn interior(&self) -> &[T] {
        let o = self.ghost * self.m;
        &self.data[o..o + self.n * self.m]
    }

    pub fn interior_mut(&mut self) -> &mut [T] {
        let o = self.ghost * self.m;
        let len = self.n * self.m;
        &mut self.data[o..o + len]
    }

    /// Whole storage including ghosts.
    pub fn raw(&self) -> &[T] {
        &self.data
    }

    /// Same interior data with a different ghost width.
    pub fn with_ghost(&self, ghost: usize) -> Self {
        Self::from_interior(self.interior(), self.m, ghost)
    }

    /// Fill the ghost cells from the interior.
    pub fn apply_boundary(&mut self, boundary: Boundary) {
        let n = self.n as isize;
        let g = self.ghost as isize;
        let m = self.m;
        for i in (-g..0).chain(n..n + g) {
            let src = match boundary {
                Boundary::Periodic => i.rem_euclid(n),
                Boundary::Outflow => i.clamp(0, n - 1),
            };
            let so = self.offset(src);
            let dst = self.offset(i);
            self.data.copy_within(so..so + m, dst);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghosts(s: &State<f64>) -> (Vec<f64>, Vec<f64>) {
        let g = s.ghost() as isize;
        let n = s.n() as isize;
        (
            (-g..0).map(|i| s.cell(i)[0]).collect(),
            (n..n + g).map(|i| s.cell(i)[0]).collect(),
        )
    }

    #[test]
    fn periodic_ghosts() {
        let mut s = State::from_interior(&[1.0, 2.0, 3.0, 4.0], 1, 2);
        s.apply_boundary(Boundary::Periodic);
        assert_eq!(ghosts(&s), (vec![3.0, 4.0], vec![1.0, 2.0]));
    }

    #[test]
    fn outflow_ghosts() {
        let mut s = State::from_interior(&[1.0, 2.0, 3.0, 4.0], 1, 2);
        s.apply_boundary(Boundary::Outflow);
        assert_eq!(ghosts(&s), (vec![1.0, 1.0], vec![4.0, 4.0]));
    }

    #[test]
    fn periodic_wraps_ghosts_wider_than_row() {
        let mut s = State::from_interior(&[1.0, 2.0, 3.0], 1, 5);
        s.apply_boundary(Boundary::Periodic);
        assert_eq!(ghosts(&s), (vec![2.0, 3.0, 1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0, 1.0, 2.0]));
    }

    #[test]
    fn constant_row_stays_constant() {
        let mut s = State::from_interior(&[7.0; 6], 1, 3);
        s.apply_boundary(Boundary::Periodic);
        assert!(s.raw().iter().all(|&v| v == 7.0));
    }

    #[test]
    fn multi_component_layout() {
        let mut s = State::from_interior(&[1.0, 10.0, 2.0, 20.0], 2, 1);
        s.apply_boundary(Boundary::Outflow);
        assert_eq!(s.cell(-1), &[1.0, 10.0]);
        assert_eq!(s.cell(2), &[2.0, 20.0]);
        assert_eq!(s.cells(0, 2), &[1.0, 10.0, 2.0, 20.0]);
    }

    #[test]
    fn grid_geometry() {
        let g = Grid::new(80, 0.0, 1.0).unwrap();
        assert_eq!(g.dx(), 1.0 / 80.0);
        assert_eq!(g.x(40), 0.5);
        assert!(Grid::new(1, 0.0, 1.0).is_err());
        assert!(Grid::new(10, 1.0, 1.0).is_err());
    }
}
