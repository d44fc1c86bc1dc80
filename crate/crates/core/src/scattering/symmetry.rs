use std::f64::consts::PI;

use serde::Serialize;

/// Element of the symmetry group of the square, as an integer orthogonal matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct D4Element {
    pub m: [[i64; 2]; 2],
}

impl D4Element {
    pub const IDENTITY: D4Element = D4Element { m: [[1, 0], [0, 1]] };

    /// Rotations by multiples of 90° followed by the reflections `y ↦ −y` composed with them.
    pub fn all() -> Vec<D4Element> {
        let r = D4Element { m: [[0, -1], [1, 0]] };
        let x = D4Element { m: [[1, 0], [0, -1]] };
        let mut out = vec![Self::IDENTITY];
        for _ in 0..3 {
            out.push(r.compose(out.last().unwrap()));
        }
        for i in 0..4 {
            out.push(out[i].compose(&x));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &D4Element) -> D4Element {
        let a = self.m;
        let b = o.m;
        let mut m = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        D4Element { m }
    }

    pub fn inverse(&self) -> D4Element {
        D4Element { m: [[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]] }
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply_i(&self, v: [i64; 2]) -> [i64; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    pub fn apply<T>(&self, v: [T; 2]) -> [T; 2]
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
    {
        let f = |i: usize| v[0] * self.m[i][0] as f64 + v[1] * self.m[i][1] as f64;
        [f(0), f(1)]
    }

    /// Index of the image of direction node `k` among `n` equispaced nodes, if it is a node.
    pub fn map_direction(&self, k: usize, n: usize) -> Option<usize> {
        let t = 2.0 * PI * k as f64 / n as f64;
        let d = self.apply([t.cos(), t.sin()]);
        let a = d[1].atan2(d[0]).rem_euclid(2.0 * PI);
        let idx = (a * n as f64 / (2.0 * PI)).round() as usize % n;
        let t2 = 2.0 * PI * idx as f64 / n as f64;
        ((t2.cos() - d[0]).abs() < 1e-12 && (t2.sin() - d[1]).abs() < 1e-12).then_some(idx)
    }
}

/// Partition of `n` direction nodes into orbits of a symmetry group.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionOrbits {
    pub n: usize,
    /// Smallest node of each orbit, ascending.
    pub representatives: Vec<usize>,
    /// For each node `k`: its representative `r` and an element `g` with `g d_r = d_k`.
    pub map: Vec<(usize, D4Element)>,
}

impl DirectionOrbits {
    pub fn new(n: usize, group: &[D4Element]) -> Self {
        let usable: Vec<D4Element> = group
            .iter()
            .copied()
            .filter(|g| (0..n).all(|k| g.map_direction(k, n).is_some()))
            .collect();
        let mut map: Vec<Option<(usize, D4Element)>> = vec![None; n];
        let mut representatives = Vec::new();
        for k in 0..n {
            if map[k].is_some() {
                continue;
            }
            representatives.push(k);
            for g in usable.iter().chain(std::iter::once(&D4Element::IDENTITY)) {
                let j = g.map_direction(k, n).expect("usable element");
                if map[j].is_none() {
                    map[j] = Some((k, *g));
                }
            }
        }
        Self { n, representatives, map: map.into_iter().map(|m| m.expect("covered")).collect() }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_is_closed() {
        let all = D4Element::all();
        assert_eq!(all.len(), 8);
        for a in &all {
            for b in &all {
                assert!(all.contains(&a.compose(b)));
            }
            assert_eq!(a.compose(&a.inverse()), D4Element::IDENTITY);
        }
    }

    #[test]
    fn d4_orbits_of_32_nodes() {
        let o = DirectionOrbits::new(32, &D4Element::all());
        assert_eq!(o.representatives, vec![0, 1, 2, 3, 4]);
        for (k, (r, g)) in o.map.iter().enumerate() {
            assert_eq!(g.map_direction(*r, 32), Some(k));
        }
    }
}
