//! Independent computations over many classes on one surface.
//!
//! The plain functions use the rayon pool when the `parallel` feature is on;
//! the `_seq` variants always run on the calling thread.

use crate::body::{body_direct, body_from_decomposition, BodyPolygon};
use crate::decompose::{decompose, Decomposition};
use crate::divisor::DivClass;
use crate::error::Result;
use crate::lattice::SurfaceModel;
use crate::par;
use crate::zariski::{zariski_decompose, ZariskiPair};

/// Outcome of comparing the decomposition body with the direct sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BodyCheck {
    pub decomposition: Decomposition,
    pub from_decomposition: BodyPolygon,
    pub direct: BodyPolygon,
}

impl BodyCheck {
    pub fn agrees(&self) -> bool {
        self.from_decomposition == self.direct
    }
}

pub fn check_body(s: &SurfaceModel, d: &DivClass) -> Result<BodyCheck> {
    let decomposition = decompose(s, d)?;
    let from_decomposition = body_from_decomposition(&decomposition);
    let direct = body_direct(s, d)?;
    Ok(BodyCheck {
        decomposition,
        from_decomposition,
        direct,
    })
}

pub fn decompose_many(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<Decomposition>> {
    par::map(ds, |d| decompose(s, d))
}

pub fn decompose_many_seq(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<Decomposition>> {
    ds.iter().map(|d| decompose(s, d)).collect()
}

pub fn bodies_direct(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<BodyPolygon>> {
    par::map(ds, |d| body_direct(s, d))
}

pub fn bodies_direct_seq(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<BodyPolygon>> {
    ds.iter().map(|d| body_direct(s, d)).collect()
}

pub fn check_bodies(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<BodyCheck>> {
    par::map(ds, |d| check_body(s, d))
}

pub fn check_bodies_seq(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<BodyCheck>> {
    ds.iter().map(|d| check_body(s, d)).collect()
}

pub fn zariski_many(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<ZariskiPair>> {
    par::map(ds, |d| zariski_decompose(s, d))
}

pub fn zariski_many_seq(s: &SurfaceModel, ds: &[DivClass]) -> Vec<Result<ZariskiPair>> {
    ds.iter().map(|d| zariski_decompose(s, d)).collect()
}
