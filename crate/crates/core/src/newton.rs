//! Normalized volume of the exponent hull of a system.
//!
//! The hull of `{0, e_1, ..., e_n} ∪ supp(F)` is triangulated by placing
//! points one at a time (beneath-beyond). Each simplex contributes
//! `|det(v_1 - v_0, ..., v_n - v_0)|`, which is exactly `n!` times its
//! Euclidean volume, so the sum is an integer and no rationals are needed.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poly::PolySystem;

/// Default largest dimension handled exactly.
pub const DEFAULT_DIM_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("dimension {dim} exceeds the exact-volume cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("exponent clouds need at least one variable")]
    NoVariables,
    #[error("point {0:?} has the wrong dimension or a negative coordinate")]
    BadPoint(Vec<i64>),
    #[error("cloud is missing the origin or a standard basis vector")]
    MissingSimplex,
}

/// Lattice points containing the origin and every standard basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCloud {
    nvars: usize,
    points: BTreeSet<Vec<i64>>,
}

impl ExponentCloud {
    /// The unit simplex `{0, e_1, ..., e_n}`.
    pub fn unit_simplex(nvars: usize) -> Result<Self, NewtonError> {
        if nvars == 0 {
            return Err(NewtonError::NoVariables);
        }
        let mut points = BTreeSet::new();
        points.insert(vec![0; nvars]);
        for j in 0..nvars {
            let mut e = vec![0; nvars];
            e[j] = 1;
            points.insert(e);
        }
        Ok(ExponentCloud { nvars, points })
    }

    /// Builds a cloud from arbitrary points, adding the unit simplex vertices.
    pub fn with_points<I>(nvars: usize, pts: I) -> Result<Self, NewtonError>
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let mut c = Self::unit_simplex(nvars)?;
        for p in pts {
            c.insert(p)?;
        }
        Ok(c)
    }

    pub fn insert(&mut self, p: Vec<i64>) -> Result<bool, NewtonError> {
        if p.len() != self.nvars || p.iter().any(|&x| x < 0) {
            return Err(NewtonError::BadPoint(p));
        }
        Ok(self.points.insert(p))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn points(&self) -> &BTreeSet<Vec<i64>> {
        &self.points
    }

    fn validate(&self) -> Result<(), NewtonError> {
        let s = Self::unit_simplex(self.nvars)?;
        if s.points.is_subset(&self.points) {
            Ok(())
        } else {
            Err(NewtonError::MissingSimplex)
        }
    }
}

/// Exponent vectors of `F` together with the unit simplex.
pub fn support_cloud(system: &PolySystem) -> Result<ExponentCloud, NewtonError> {
    let pts = system
        .polys()
        .iter()
        .flat_map(|p| p.terms())
        .map(|t| {
            t.exps
                .iter()
                .map(|&e| i64::try_from(e).unwrap_or(i64::MAX))
                .collect()
        })
        .collect::<Vec<Vec<i64>>>();
    ExponentCloud::with_points(system.nvars(), pts)
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub(crate) fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// `det(v_1 - v_0, ..., v_{n-1} - v_0, q - v_0)` for a facet `v_0..v_{n-1}`.
fn orient(pts: &[Vec<BigInt>], facet: &[usize], q: &[BigInt]) -> BigInt {
    let base = &pts[facet[0]];
    let mut rows: Vec<Vec<BigInt>> = facet[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rows.push(q.iter().zip(base).map(|(a, b)| a - b).collect());
    det_bareiss(rows)
}

fn simplex_volume(pts: &[Vec<BigInt>], verts: &[usize]) -> BigInt {
    orient(pts, &verts[..verts.len() - 1], &pts[verts[verts.len() - 1]]).abs()
}

/// `n!` times the Euclidean volume of the convex hull, exactly.
pub fn normalized_volume(cloud: &ExponentCloud) -> Result<BigInt, NewtonError> {
    normalized_volume_capped(cloud, DEFAULT_DIM_CAP)
}

pub fn normalized_volume_capped(cloud: &ExponentCloud, cap: usize) -> Result<BigInt, NewtonError> {
    cloud.validate()?;
    let n = cloud.nvars;
    if n > cap {
        return Err(NewtonError::DimensionCap { dim: n, cap });
    }
    let to_big = |p: &Vec<i64>| p.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    // unit simplex first: origin, then e_1..e_n
    let simplex = ExponentCloud::unit_simplex(n)?;
    let mut pts: Vec<Vec<BigInt>> = Vec::with_capacity(cloud.points.len());
    pts.push(to_big(&vec![0; n]));
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        pts.push(to_big(&e));
    }
    pts.extend(
        cloud
            .points
            .iter()
            .filter(|p| !simplex.points.contains(*p))
            .map(to_big),
    );

    let mut volume = BigInt::from(1);
    // boundary facets, oriented so that orient(facet, q) > 0 iff q is beyond it
    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=n {
        let f: Vec<usize> = (0..=n).filter(|&i| i != skip).collect();
        facets.push(Facet::outward(&pts, f, skip));
    }

    for p in n + 1..pts.len() {
        let q = pts[p].clone();
        let (visible, hidden): (Vec<_>, Vec<_>) =
            facets.into_iter().partition(|f| f.beyond(&pts, &q));
        facets = hidden;
        if visible.is_empty() {
            continue;
        }
        // ridge -> (count, vertex of the visible facet opposite the ridge)
        let mut ridges: HashMap<Vec<usize>, (u32, usize)> = HashMap::new();
        for Facet { verts: f, .. } in &visible {
            let mut cell = f.clone();
            cell.push(p);
            volume += simplex_volume(&pts, &cell);
            for drop in 0..f.len() {
                let mut r: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                let e = ridges.entry(r).or_insert((0, f[drop]));
                e.0 += 1;
            }
        }
        for (ridge, (count, opposite)) in ridges {
            if count == 1 {
                let mut nf = ridge;
                nf.push(p);
                facets.push(Facet::outward(&pts, nf, opposite));
            }
        }
    }
    Ok(volume)
}

/// Boundary facet with an orientation sign: `side(q) > 0` iff `q` is beyond it.
struct Facet {
    verts: Vec<usize>,
    flip: bool,
}

impl Facet {
    /// Orients the facet so that the `inside` vertex lies on its negative side.
    fn outward(pts: &[Vec<BigInt>], verts: Vec<usize>, inside: usize) -> Self {
        let flip = orient(pts, &verts, &pts[inside]).is_positive();
        Facet { verts, flip }
    }

    fn beyond(&self, pts: &[Vec<BigInt>], q: &[BigInt]) -> bool {
        let o = orient(pts, &self.verts, q);
        if self.flip {
            o.is_negative()
        } else {
            o.is_positive()
        }
    }
}

/// Upper estimate `max(D, 1)^n` used when the dimension cap is exceeded.
pub fn volume_upper_estimate(system: &PolySystem) -> BigInt {
    let d = system.max_degree().max(1);
    num_traits::pow(BigInt::from(d), system.nvars())
}
