//! Cochains on a reduced strand with coefficients in `Q` or a polynomial ring.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::strand::ReducedStrand;
use crate::exactarith::rational::Q;
use crate::exactarith::SparsePoly;

/// Coefficients a cochain can carry.
pub trait Coeff: Clone {
    fn is_zero_coeff(&self) -> bool;
    /// `self += c * other`.
    fn add_scaled(&mut self, other: &Self, c: &Q);
    fn scaled(&self, c: &Q) -> Self;
}

impl Coeff for Q {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        *self += other * c;
    }
    fn scaled(&self, c: &Q) -> Self {
        self * c
    }
}

impl Coeff for SparsePoly {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Q) {
        let s = other.scale(c);
        self.add_assign_ref(&s);
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
}

/// Cells are addressed by `(point index, cell index in the point's pattern)`.
pub type Cochain<C> = BTreeMap<(u32, u32), C>;

/// Vector in the cohomology basis of one Čech degree.
pub type BasisVec<C> = BTreeMap<u32, C>;

pub fn accumulate<K: Ord + Copy, C: Coeff>(out: &mut BTreeMap<K, C>, key: K, v: &C, c: &Q) {
    match out.get_mut(&key) {
        Some(x) => {
            x.add_scaled(v, c);
            if x.is_zero_coeff() {
                out.remove(&key);
            }
        }
        None => {
            let s = v.scaled(c);
            if !s.is_zero_coeff() {
                out.insert(key, s);
            }
        }
    }
}

impl ReducedStrand {
    pub fn apply_h<C: Coeff>(&self, v: &Cochain<C>) -> Cochain<C> {
        let mut out = Cochain::new();
        for (&(p, c), x) in v {
            for (a, hv) in self.pattern_of(p).h.col(c as usize) {
                accumulate(&mut out, (p, *a), x, hv);
            }
        }
        out
    }

    pub fn apply_d<C: Coeff>(&self, v: &Cochain<C>) -> Cochain<C> {
        let mut out = Cochain::new();
        let one = Q::from_integer(1.into());
        let mone = -one.clone();
        for (&(p, c), x) in v {
            let pat = self.pattern_of(p);
            for (t, neg) in super::pattern::coboundary(pat.cells[c as usize], pat.ncones) {
                let ti = pat.cell_index(t).expect("allowed cells are upward closed") as u32;
                accumulate(&mut out, (p, ti), x, if neg { &mone } else { &one });
            }
        }
        out
    }

    /// Projection to cohomology; the Čech degree is that of the input cells.
    pub fn apply_rho<C: Coeff>(&self, v: &Cochain<C>) -> BasisVec<C> {
        let mut out = BasisVec::new();
        for (&(p, c), x) in v {
            for (k, rv) in self.pattern_of(p).rho.col(c as usize) {
                let b = self.basis_index(p, *k).expect("critical cell in basis");
                accumulate(&mut out, b, x, rv);
            }
        }
        out
    }

    /// Inclusion of cohomology in Čech degree `q`.
    pub fn apply_iota<C: Coeff>(&self, q: usize, b: &BasisVec<C>) -> Cochain<C> {
        let mut out = Cochain::new();
        for (&i, x) in b {
            let (p, k) = self.basis[q][i as usize];
            for (a, iv) in self.pattern_of(p).iota.col(k as usize) {
                accumulate(&mut out, (p, *a), x, iv);
            }
        }
        out
    }

    /// Cell `(point, mask)` lookup.
    pub fn cell(&self, m: &[i64], mask: u32) -> Option<(u32, u32)> {
        let p = self.point_index(m)?;
        let c = self.pattern_of(p).cell_index(mask)?;
        Some((p, c as u32))
    }
}
