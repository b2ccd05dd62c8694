//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.

#![allow(dead_code)]

use kamhn::poly::{Poly, PolySystem, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

/// `f(point) mod p` by exact integer evaluation.
pub fn eval_big(f: &Poly, point: &[u64], p: u64) -> u64 {
    let mut acc = BigInt::zero();
    for t in f.terms() {
        let mut v = t.coeff.clone();
        for (&x, &e) in point.iter().zip(&t.exps) {
            v *= BigInt::from(x).pow(e as u32);
        }
        acc += v;
    }
    acc.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Every point of `(Z/pZ)^n` where all members vanish.
pub fn brute_roots(system: &PolySystem, p: u64) -> Vec<Vec<u64>> {
    let n = system.nvars();
    let total = p.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut pt = vec![0; n];
            for c in pt.iter_mut().rev() {
                *c = k % p;
                k /= p;
            }
            pt
        })
        .filter(|pt| system.polys().iter().all(|f| eval_big(f, pt, p) == 0))
        .collect()
}

pub fn brute_root_count(f: &UniPoly, p: u64) -> usize {
    let pb = BigInt::from(p);
    (0..p)
        .filter(|&x| f.eval(&BigInt::from(x)).mod_floor(&pb).is_zero())
        .count()
}

pub fn random_uni<R: Rng>(rng: &mut R, max_deg: usize, coeff: i64) -> UniPoly {
    let d = rng.random_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.random_range(-coeff..=coeff)).collect();
    if c[d] == 0 {
        c[d] = 1;
    }
    UniPoly::from_i64(&c)
}

/// A random polynomial in `n` variables of total degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u64, terms: usize, coeff: i64) -> Poly {
    let ts = (0..terms).map(|_| {
        let mut left = rng.random_range(0..=max_deg);
        let exps: Vec<u64> = (0..n)
            .map(|_| {
                let e = rng.random_range(0..=left);
                left -= e;
                e
            })
            .collect();
        let mut c = rng.random_range(-coeff..=coeff);
        if c == 0 {
            c = 1;
        }
        (BigInt::from(c), exps)
    });
    Poly::from_terms(n, ts)
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
pub fn hull2(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<Vec<i64>> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let it: Box<dyn Iterator<Item = &Vec<i64>>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for q in it {
            while h.len() >= start + 2 && cross2(&h[h.len() - 2], &h[h.len() - 1], q) <= 0 {
                h.pop();
            }
            h.push(q.clone());
        }
        h.pop();
    }
    h
}

fn sub3(a: &[i64], b: &[i64]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `n!` times the volume of the convex hull, `n <= 3`, for full-dimensional clouds.
///
/// In 3D every supporting plane through three points is found by brute force;
/// each facet polygon is ordered by a 2D hull of its projection and coned
/// from the scaled centroid.
pub fn brute_normalized_volume(pts: &[Vec<i64>]) -> i64 {
    let n = pts[0].len();
    match n {
        1 => {
            let xs = pts.iter().map(|p| p[0]);
            xs.clone().max().unwrap() - xs.min().unwrap()
        }
        2 => {
            let h = hull2(pts);
            let m = h.len();
            (0..m)
                .map(|i| h[i][0] * h[(i + 1) % m][1] - h[(i + 1) % m][0] * h[i][1])
                .sum::<i64>()
                .abs()
        }
        3 => {
            let mut p = pts.to_vec();
            p.sort();
            p.dedup();
            let m = p.len() as i64;
            let scaled: Vec<Vec<i64>> = p
                .iter()
                .map(|q| q.iter().map(|c| c * m).collect())
                .collect();
            let c: Vec<i64> = (0..3).map(|j| p.iter().map(|q| q[j]).sum()).collect();
            let mut facets: Vec<([i64; 3], i64)> = Vec::new();
            let mut total = 0i64;
            let k = scaled.len();
            for i in 0..k {
                for j in i + 1..k {
                    for l in j + 1..k {
                        let nrm =
                            cross3(sub3(&scaled[j], &scaled[i]), sub3(&scaled[l], &scaled[i]));
                        if nrm == [0, 0, 0] {
                            continue;
                        }
                        let g = nrm.iter().fold(0i64, |g, &x| g.gcd(&x));
                        let mut nrm = nrm.map(|x| x / g);
                        let mut off = dot3(nrm, [scaled[i][0], scaled[i][1], scaled[i][2]]);
                        let sides: Vec<i64> = scaled
                            .iter()
                            .map(|q| dot3(nrm, [q[0], q[1], q[2]]) - off)
                            .collect();
                        if sides.iter().any(|&s| s > 0) && sides.iter().any(|&s| s < 0) {
                            continue;
                        }
                        if sides.iter().any(|&s| s > 0) {
                            nrm = nrm.map(|x| -x);
                            off = -off;
                        }
                        if facets.contains(&(nrm, off)) {
                            continue;
                        }
                        facets.push((nrm, off));
                        let on: Vec<&Vec<i64>> = scaled
                            .iter()
                            .zip(&sides)
                            .filter(|(_, &s)| s == 0)
                            .map(|(q, _)| q)
                            .collect();
                        let drop = (0..3).max_by_key(|&a| nrm[a].abs()).unwrap();
                        let keep: Vec<usize> = (0..3).filter(|&a| a != drop).collect();
                        let proj: Vec<Vec<i64>> =
                            on.iter().map(|q| vec![q[keep[0]], q[keep[1]]]).collect();
                        let ring: Vec<&Vec<i64>> = hull2(&proj)
                            .iter()
                            .map(|h| on[proj.iter().position(|q| q == h).unwrap()])
                            .collect();
                        for t in 1..ring.len() - 1 {
                            let a = sub3(ring[0], &c);
                            let b = sub3(ring[t], &c);
                            let d = sub3(ring[t + 1], &c);
                            total += dot3(a, cross3(b, d)).abs();
                        }
                    }
                }
            }
            total / (m * m * m)
        }
        _ => panic!("brute force volume only for n <= 3"),
    }
}
