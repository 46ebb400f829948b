//! Čech cohomology of the Cox ring in a fixed degree, computed strand by
//! strand with explicit contraction data.

mod cochain;
mod pattern;
mod sparse;
mod store;
mod strand;

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

pub use cochain::{accumulate, BasisVec, Coeff, Cochain};
pub use pattern::{allowed_cells, cells_for_cover, cover_masks, check_reduction, coboundary, reduce_pattern, PatternReduction, PivotPolicy};
pub use sparse::SparseQ;
pub use store::{sha256_hex, CacheStats, StrandStore, CACHE_ENV};
pub use strand::{ReducedStrand, StrandComplex, StrandJson};

use crate::exactarith::rational::Q;
use crate::toric::lattice::{lattice_points_limited, Ineq};
use crate::toric::{DivisorClass, ToricData, ToricError};

/// Cap on the uniform truncation searched for stable cohomology.
pub const E_SWEEP_CAP: u32 = 64;

#[derive(Debug, Error)]
pub enum CechError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("cache i/o: {0}")]
    Io(String),
    #[error("cohomology did not stabilize below e = {0}")]
    NoStableTruncation(u32),
    #[error("truncation {0:?} is not componentwise below {1:?}")]
    NotRefinement(Vec<u32>, Vec<u32>),
    #[error("resource limit: {0}")]
    Resource(String),
}

/// Everything needed to compute strands over one toric variety.
#[derive(Clone)]
pub struct CechContext {
    pub toric: Arc<ToricData>,
    pub policy: PivotPolicy,
    pub point_limit: usize,
    /// Per ray, the bitmask of maximal cones not containing it.
    ray_masks: Vec<u32>,
    fingerprint: String,
    store: Arc<StrandStore>,
}

impl CechContext {
    pub fn new(toric: Arc<ToricData>) -> Self {
        Self::with_store(toric, Arc::new(StrandStore::in_memory()))
    }

    pub fn with_store(toric: Arc<ToricData>, store: Arc<StrandStore>) -> Self {
        let ray_masks = (0..toric.nrays())
            .map(|rho| {
                (0..toric.ncones()).filter(|&k| !toric.max_cones[k].contains(&rho)).fold(0u32, |m, k| m | (1 << k))
            })
            .collect();
        let fingerprint =
            sha256_hex(serde_json::json!({"rays": toric.rays, "maxCones": toric.max_cones}).to_string().as_bytes());
        CechContext {
            toric,
            policy: PivotPolicy::default(),
            point_limit: crate::toric::lattice::DEFAULT_POINT_LIMIT,
            ray_masks,
            fingerprint,
            store,
        }
    }

    pub fn with_policy(mut self, policy: PivotPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn store(&self) -> &Arc<StrandStore> {
        &self.store
    }

    pub fn ncones(&self) -> usize {
        self.toric.ncones()
    }

    /// The reduced strand of `S[-alpha]` truncated at `e`.
    pub fn strand(&self, alpha: &DivisorClass, e: &[u32]) -> Result<Arc<ReducedStrand>, CechError> {
        let alpha = self.toric.normalize_class(alpha)?;
        let key = (self.fingerprint.clone(), self.policy, alpha.0.clone(), e.to_vec());
        let file = StrandStore::file_key(&self.toric.rays, &self.toric.max_cones, &key);
        if let Some(s) = self.store.get_strand(&key, &file) {
            return Ok(s);
        }
        let s = Arc::new(self.compute_strand(alpha, e)?);
        self.store.put_strand(key, &file, s.clone())?;
        Ok(s)
    }

    fn compute_strand(&self, alpha: DivisorClass, e: &[u32]) -> Result<ReducedStrand, CechError> {
        let x = &self.toric;
        let nc = x.ncones();
        assert_eq!(e.len(), nc, "one truncation exponent per maximal cone");
        let divisor = x.representative(&alpha.neg())?;
        let slack: Vec<i64> = self
            .ray_masks
            .iter()
            .map(|&rm| (0..nc).filter(|k| rm >> k & 1 == 1).map(|k| e[k] as i64).max().unwrap_or(0))
            .collect();
        let ineqs: Vec<Ineq> =
            (0..x.nrays()).map(|r| Ineq::new(x.rays[r].clone(), divisor[r] + slack[r])).collect();
        let points = lattice_points_limited(&ineqs, x.dim, self.point_limit).map_err(|err| match err {
            ToricError::Resource(m) => CechError::Resource(m),
            other => CechError::Toric(other),
        })?;

        let mut pattern_ids: HashMap<Option<Vec<u32>>, u32> = HashMap::new();
        let mut pattern_covers: Vec<Option<Vec<u32>>> = Vec::new();
        let mut point_pattern = Vec::with_capacity(points.len());
        let mut deficits = vec![0u32; x.nrays()];
        for m in &points {
            for (r, d) in deficits.iter_mut().enumerate() {
                let u = divisor[r] + x.rays[r].iter().zip(m).map(|(a, b)| a * b).sum::<i64>();
                *d = (-u).max(0) as u32;
            }
            let cover = cover_masks(nc, &self.ray_masks, e, &deficits);
            let next = pattern_covers.len() as u32;
            let id = *pattern_ids.entry(cover).or_insert_with_key(|c| {
                pattern_covers.push(c.clone());
                next
            });
            point_pattern.push(id);
        }
        let patterns = self.patterns_for(&pattern_covers);
        Ok(ReducedStrand::assemble(alpha, e.to_vec(), divisor, points, point_pattern, pattern_covers, patterns))
    }

    fn patterns_for(&self, covers: &[Option<Vec<u32>>]) -> Vec<Arc<PatternReduction>> {
        let nc = self.ncones();
        let key = |c: &Option<Vec<u32>>| (self.policy, nc, c.clone());
        let missing: Vec<&Option<Vec<u32>>> = {
            let cache = self.store.patterns.read().unwrap();
            covers.iter().filter(|c| !cache.contains_key(&key(c))).collect()
        };
        let build = |c: &&Option<Vec<u32>>| {
            let cells = c.as_ref().map_or_else(Vec::new, |c| cells_for_cover(nc, c));
            ((*c).clone(), Arc::new(reduce_pattern(nc, cells, self.policy)))
        };
        #[cfg(feature = "parallel")]
        let built: Vec<_> = {
            use rayon::prelude::*;
            missing.par_iter().map(build).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let built: Vec<_> = missing.iter().map(build).collect();
        {
            let mut cache = self.store.patterns.write().unwrap();
            for (c, p) in built {
                cache.insert(key(&c), p);
            }
        }
        let cache = self.store.patterns.read().unwrap();
        covers.iter().map(|c| cache[&key(c)].clone()).collect()
    }

    /// dim Ȟ^q of the truncated strand for q = 0..ncones.
    pub fn dims(&self, alpha: &DivisorClass, e: &[u32]) -> Result<Vec<usize>, CechError> {
        Ok(self.strand(alpha, e)?.dims())
    }

    /// Smallest uniform truncation, at or above [`Self::deficit_bound`], at which
    /// the cohomology dimensions agree with those of the next two truncations.
    pub fn e_min(&self, alpha: &DivisorClass) -> Result<Vec<u32>, CechError> {
        let alpha = self.toric.normalize_class(alpha)?;
        let key = (self.fingerprint.clone(), self.policy, alpha.0.clone());
        if let Some(e) = self.store.emin.read().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let nc = self.ncones();
        let uniform = |t: u32| vec![t; nc];
        let start = self.deficit_bound(&alpha)?;
        let mut window = vec![self.dims(&alpha, &uniform(start))?, self.dims(&alpha, &uniform(start + 1))?];
        for t in start..start + E_SWEEP_CAP {
            window.push(self.dims(&alpha, &uniform(t + 2))?);
            let w = &window[(t - start) as usize..];
            if w[0] == w[1] && w[1] == w[2] {
                let e = uniform(t);
                self.store.emin.write().unwrap().insert(key, e.clone());
                return Ok(e);
            }
        }
        Err(CechError::NoStableTruncation(E_SWEEP_CAP))
    }

    /// Largest deficit among the monomials of degree `-alpha` that carry
    /// cohomology in the untruncated Čech complex. Below this no uniform
    /// truncation can see every class.
    pub fn deficit_bound(&self, alpha: &DivisorClass) -> Result<u32, CechError> {
        let x = &self.toric;
        let (nr, nc) = (x.nrays(), x.ncones());
        if nr > 20 {
            return Err(CechError::Resource(format!("{nr} rays is too many for the sign-pattern scan")));
        }
        let divisor = x.representative(&alpha.neg())?;
        let full = vec![1u32; nc];
        let mut bound = 0u32;
        for neg in 0u32..(1 << nr) {
            let marks: Vec<u32> = (0..nr).map(|r| neg >> r & 1).collect();
            let Some(cover) = cover_masks(nc, &self.ray_masks, &full, &marks) else { continue };
            if self.patterns_for(&[Some(cover)])[0].critical.is_empty() {
                continue;
            }
            // u_r < 0 on the negative set, u_r >= 0 elsewhere
            let ineqs: Vec<Ineq> = (0..nr)
                .map(|r| {
                    if marks[r] == 1 {
                        Ineq::new(x.rays[r].iter().map(|v| -v).collect(), -divisor[r] - 1)
                    } else {
                        Ineq::new(x.rays[r].clone(), divisor[r])
                    }
                })
                .collect();
            let pts = lattice_points_limited(&ineqs, x.dim, self.point_limit).map_err(|err| match err {
                ToricError::Resource(m) => CechError::Resource(m),
                other => CechError::Toric(other),
            })?;
            for m in pts {
                for r in 0..nr {
                    let u = divisor[r] + x.rays[r].iter().zip(&m).map(|(a, b)| a * b).sum::<i64>();
                    bound = bound.max((-u).max(0) as u32);
                }
            }
        }
        Ok(bound)
    }

    /// Stable cohomology dimensions of `S[-alpha]` in degree 0.
    pub fn cohomology(&self, alpha: &DivisorClass) -> Result<Vec<usize>, CechError> {
        let e = self.e_min(alpha)?;
        self.dims(alpha, &e)
    }

    /// Matrix of the map on cohomology in degree `q` induced by the inclusion
    /// of the `small` truncation into the `large` one.
    pub fn transfer(&self, small: &ReducedStrand, large: &ReducedStrand, q: usize) -> Result<Vec<BasisVec<Q>>, CechError> {
        if small.e.iter().zip(&large.e).any(|(a, b)| a > b) {
            return Err(CechError::NotRefinement(small.e.clone(), large.e.clone()));
        }
        let one = Q::from_integer(1.into());
        (0..small.basis[q].len())
            .map(|i| {
                let mut b = BasisVec::new();
                b.insert(i as u32, one.clone());
                let v = small.apply_iota(q, &b);
                let mut w = Cochain::new();
                for ((p, c), x) in v {
                    let m = &small.points[p as usize];
                    let mask = small.pattern_of(p).cells[c as usize];
                    let cell = large.cell(m, mask).ok_or_else(|| {
                        CechError::Resource(format!("cell {mask:b} at {m:?} missing from the larger truncation"))
                    })?;
                    w.insert(cell, x);
                }
                Ok(large.apply_rho(&w))
            })
            .collect()
    }
}
