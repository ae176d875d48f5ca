//! Symbolic coordinates on the Z components of the AR quiver of D^b(Λ(r,n,m)).
//!
//! Nothing here is tied to explicit complexes; the only inputs are the
//! suspension formula and the Hom-hammock description of the Z components.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SiltError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZParams {
    pub r: i64,
    pub n: i64,
    pub m: i64,
}

impl ZParams {
    pub fn new(r: i64, n: i64, m: i64) -> Result<Self> {
        if !(n > r && r > 0 && m >= 0) {
            return Err(SiltError::ConventionViolation(format!("need n > r > 0 and m >= 0, got ({r},{n},{m})")));
        }
        Ok(ZParams { r, n, m })
    }

    /// Displacement of (i, j) under Σ^r.
    pub fn translation(&self) -> (i64, i64) {
        (self.r + self.m, self.r - self.n)
    }
}

/// The object Z^k_{ij}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZCoord {
    pub params: ZParams,
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

impl fmt::Display for ZCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}_({},{})", self.k, self.i, self.j)
    }
}

impl ZCoord {
    pub fn new(params: ZParams, k: i64, i: i64, j: i64) -> Result<Self> {
        if !(0..params.r).contains(&k) {
            return Err(SiltError::ConventionViolation(format!("component {k} outside 0..{}", params.r)));
        }
        Ok(ZCoord { params, k, i, j })
    }

    fn offset(self, t: i64) -> ZCoord {
        let (di, dj) = self.params.translation();
        ZCoord { i: self.i + t * di, j: self.j + t * dj, ..self }
    }
}

/// Σ^t z: the component advances by t mod r, and each wrap past r − 1
/// adds the Σ^r translation vector.
pub fn z_suspend(z: ZCoord, t: i64) -> ZCoord {
    let total = z.k + t;
    let r = z.params.r;
    ZCoord { k: total.rem_euclid(r), ..z.offset(total.div_euclid(r)) }
}

/// Which clause of the hammock description puts b in the Hom-hammock of a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HammockClauses {
    /// b = Z^k_{ab} with a ≥ i and b ≥ j.
    pub forward: bool,
    /// b = Σ Z^k_{ab} with a ≤ i − 1 and b ≤ j − 1.
    pub suspended: bool,
}

impl HammockClauses {
    pub fn any(&self) -> bool {
        self.forward || self.suspended
    }
}

pub fn z_hom_clauses(a: ZCoord, b: ZCoord) -> Result<HammockClauses> {
    if a.params != b.params {
        return Err(SiltError::ParameterMismatch);
    }
    let forward = b.k == a.k && b.i >= a.i && b.j >= a.j;
    let c = z_suspend(b, -1);
    let suspended = c.k == a.k && c.i <= a.i - 1 && c.j <= a.j - 1;
    Ok(HammockClauses { forward, suspended })
}

/// Hom(a, b) ≠ 0.
pub fn z_hom_nonzero(a: ZCoord, b: ZCoord) -> Result<bool> {
    Ok(z_hom_clauses(a, b)?.any())
}

/// The integer points t ≥ 0 with c·t ≤ d for every (c, d), as an interval.
fn solve_nonneg(constraints: &[(i64, i64)]) -> Option<(i64, Option<i64>)> {
    let mut lo = 0i64;
    let mut hi: Option<i64> = None;
    for &(c, d) in constraints {
        match c.signum() {
            0 if d < 0 => return None,
            0 => {}
            1 => {
                let b = d.div_euclid(c);
                hi = Some(hi.map_or(b, |h| h.min(b)));
            }
            _ => lo = lo.max(-(d.div_euclid(-c))),
        }
    }
    match hi {
        Some(h) if h < lo => None,
        _ => Some((lo, hi)),
    }
}

/// ∃ t ≥ 0 with Hom(p + t·v, b) ≠ 0, where p + t·v runs over Σ^{s0 + r·t'} of a fixed object.
fn family_maps_to(p: ZCoord, dir: i64, b: ZCoord) -> bool {
    let (di, dj) = p.params.translation();
    let (vi, vj) = (dir * di, dir * dj);
    // forward: b ≥ p + t·v
    let fwd = b.k == p.k && solve_nonneg(&[(vi, b.i - p.i), (vj, b.j - p.j)]).is_some();
    // suspended: Σ^{-1}b ≤ p + t·v − (1,1)
    let c = z_suspend(b, -1);
    let bwd = c.k == p.k && solve_nonneg(&[(-vi, p.i - 1 - c.i), (-vj, p.j - 1 - c.j)]).is_some();
    fwd || bwd
}

/// ∃ t ≥ 0 with Hom(b, p + t·v) ≠ 0.
fn family_maps_from(p: ZCoord, dir: i64, b: ZCoord) -> bool {
    let (di, dj) = p.params.translation();
    let (vi, vj) = (dir * di, dir * dj);
    // forward: p + t·v ≥ b
    let fwd = b.k == p.k && solve_nonneg(&[(-vi, p.i - b.i), (-vj, p.j - b.j)]).is_some();
    // suspended: Σ^{-1}(p + t·v) ≤ b − (1,1); Σ^{-1} commutes with the translation
    let q = z_suspend(p, -1);
    let bwd = q.k == b.k && solve_nonneg(&[(vi, b.i - 1 - q.i), (vj, b.j - 1 - q.j)]).is_some();
    fwd || bwd
}

/// B with Hom(Σ^{-i} m0, B) ≠ 0 for some i > 0.
pub fn in_lower_hammocks(m0: ZCoord, b: ZCoord) -> Result<bool> {
    if m0.params != b.params {
        return Err(SiltError::ParameterMismatch);
    }
    let r = m0.params.r;
    Ok((1..=r).any(|s| family_maps_to(z_suspend(m0, -s), -1, b)))
}

/// B with Hom(B, Σ^{k+i} m0) ≠ 0 for some i > 0.
pub fn in_upper_hammocks(m0: ZCoord, k: i64, b: ZCoord) -> Result<bool> {
    if m0.params != b.params {
        return Err(SiltError::ParameterMismatch);
    }
    let r = m0.params.r;
    Ok((1..=r).any(|s| family_maps_from(z_suspend(m0, k + s), 1, b)))
}

/// A closed rectangle of (i, j), taken in every component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZBox {
    pub imin: i64,
    pub imax: i64,
    pub jmin: i64,
    pub jmax: i64,
}

impl ZBox {
    pub fn around(z: ZCoord, radius: i64) -> ZBox {
        ZBox { imin: z.i - radius, imax: z.i + radius, jmin: z.j - radius, jmax: z.j + radius }
    }

    pub fn coords(&self, params: ZParams) -> impl Iterator<Item = ZCoord> + '_ {
        (0..params.r).flat_map(move |k| {
            (self.imin..=self.imax)
                .flat_map(move |i| (self.jmin..=self.jmax).map(move |j| ZCoord { params, k, i, j }))
        })
    }
}

/// One box entry with its hammock memberships.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorRow {
    pub coord: ZCoord,
    pub lower: bool,
    pub upper: bool,
}

impl SurvivorRow {
    pub fn survives(&self) -> bool {
        !self.lower && !self.upper
    }
}

/// Every box coordinate with its membership in the two hammock unions.
pub fn hammock_table(m0: ZCoord, k: i64, bx: &ZBox) -> Result<Vec<SurvivorRow>> {
    bx.coords(m0.params)
        .map(|c| Ok(SurvivorRow { coord: c, lower: in_lower_hammocks(m0, c)?, upper: in_upper_hammocks(m0, k, c)? }))
        .collect()
}

/// Candidates for a Z summand N_0 with M_0 ≤ N_0 ≤ Σ^k M_0: the box
/// coordinates avoiding both hammock unions.
pub fn finiteness_survivors(m0: ZCoord, k: i64, bx: &ZBox) -> Result<Vec<ZCoord>> {
    Ok(hammock_table(m0, k, bx)?.into_iter().filter(|r| r.survives()).map(|r| r.coord).collect())
}

/// Canonical member of the Σ-orbit of z: component 0 and 0 ≤ j < n − r.
pub fn orbit_representative(z: ZCoord) -> ZCoord {
    let base = z_suspend(z, -z.k);
    let period = z.params.n - z.params.r;
    // Σ^r lowers j by n − r
    let t = base.j.div_euclid(period);
    z_suspend(base, z.params.r * t)
}

/// Survivors up to suspension, by canonical representative.
pub fn survivor_orbits(m0: ZCoord, k: i64, bx: &ZBox) -> Result<Vec<ZCoord>> {
    let mut reps: Vec<ZCoord> = finiteness_survivors(m0, k, bx)?.into_iter().map(orbit_representative).collect();
    reps.sort();
    reps.dedup();
    Ok(reps)
}

pub fn survivors_csv(rows: &[SurvivorRow]) -> String {
    let mut out = String::from("k,i,j,lower_hammock,upper_hammock,survivor\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.coord.k,
            r.coord.i,
            r.coord.j,
            r.lower as u8,
            r.upper as u8,
            r.survives() as u8
        ));
    }
    out
}
