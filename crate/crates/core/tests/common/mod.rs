//! Independent oracles for the integration tests. Nothing here calls the
//! algorithms under test.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use tw2cat_core::AbGroup;

/// Invariant factors (the nonzero diagonal of the Smith normal form) by
/// plain Euclidean elimination in `i128`.
pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    out.push(p.abs());
                    break;
                }
            }
        }
    }
    out
}

/// `H_k` for `0 ≤ k < ranks.len() − 1` from boundary matrices `d[k]: C_k → C_{k−1}`
/// given as dense rows (`d[0]` is ignored).
pub fn homology(ranks: &[usize], d: &[Vec<Vec<i128>>]) -> Vec<AbGroup> {
    let factors: Vec<Vec<i128>> =
        (0..ranks.len()).map(|k| if k == 0 { Vec::new() } else { invariant_factors(d[k].clone()) }).collect();
    (0..ranks.len() - 1)
        .map(|k| AbGroup {
            rank: ranks[k] - factors[k].len() - factors[k + 1].len(),
            torsion: factors[k + 1].iter().filter(|&&x| x != 1).map(|&x| BigInt::from(x)).collect(),
        })
        .collect()
}

/// Integral cohomology from integral homology: `H^k = ℤ^{rank H_k} ⊕ tors H_{k−1}`.
pub fn cohomology_from_homology(h: &[AbGroup]) -> Vec<AbGroup> {
    (0..h.len())
        .map(|k| AbGroup { rank: h[k].rank, torsion: if k == 0 { Vec::new() } else { h[k - 1].torsion.clone() } })
        .collect()
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t: Vec<usize>| (0..base).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Group homology `H_0..H_{top−1}` of `ℤ/n` from the normalized bar complex.
pub fn cyclic_group_homology(n: usize, top: usize) -> Vec<AbGroup> {
    // cells of degree k: k-tuples of non-identity elements 1..n
    let cells: Vec<Vec<Vec<usize>>> =
        (0..=top).map(|k| tuples(n - 1, k).into_iter().map(|t| t.iter().map(|v| v + 1).collect()).collect()).collect();
    let index = |k: usize, t: &[usize]| cells[k].iter().position(|c| c == t);
    let mut d = vec![Vec::new()];
    for k in 1..=top {
        let mut m = vec![vec![0i128; cells[k].len()]; cells[k - 1].len()];
        for (col, g) in cells[k].iter().enumerate() {
            let mut add = |face: Vec<usize>, sign: i128| {
                if let Some(r) = index(k - 1, &face) {
                    m[r][col] += sign;
                }
            };
            add(g[1..].to_vec(), 1);
            for i in 0..k - 1 {
                let mut f = g[..i].to_vec();
                f.push((g[i] + g[i + 1]) % n);
                f.extend_from_slice(&g[i + 2..]);
                // a zero entry makes the face degenerate
                if f.iter().all(|&v| v != 0) {
                    add(f, if (i + 1) % 2 == 0 { 1 } else { -1 });
                }
            }
            add(g[..k - 1].to_vec(), if k % 2 == 0 { 1 } else { -1 });
        }
        d.push(m);
    }
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    homology(&ranks, &d)
}

/// The Eilenberg–MacLane simplicial set `K(ℤ/2, 2)`: an n-simplex is a
/// normalized ℤ/2-valued 2-cocycle on `Δ^n`. Returns `H_0..H_{top−1}` of its
/// normalized chain complex.
pub fn k_z2_2_homology(top: usize) -> Vec<AbGroup> {
    let triples = |n: usize| -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    out.push([a, b, c]);
                }
            }
        }
        out
    };
    // simplices of level n as value vectors on triples(n)
    let mut levels: Vec<Vec<Vec<u8>>> = Vec::new();
    for n in 0..=top {
        let tr = triples(n);
        let pos = |t: [usize; 3]| tr.iter().position(|&s| s == t).expect("triple");
        let mut simplices = Vec::new();
        for bits in 0u64..(1 << tr.len()) {
            let z: Vec<u8> = (0..tr.len()).map(|i| ((bits >> i) & 1) as u8).collect();
            let mut cocycle = true;
            for a in 0..=n {
                for b in a + 1..=n {
                    for c in b + 1..=n {
                        for e in c + 1..=n {
                            let s = z[pos([b, c, e])] + z[pos([a, c, e])] + z[pos([a, b, e])] + z[pos([a, b, c])];
                            cocycle &= s.is_multiple_of(2);
                        }
                    }
                }
            }
            if cocycle {
                simplices.push(z);
            }
        }
        levels.push(simplices);
    }
    // pull back along a monotone map of vertices; non-injective triples get 0
    let pull = |z: &[u8], n: usize, m: usize, f: &dyn Fn(usize) -> usize| -> Vec<u8> {
        let src = triples(n);
        triples(m)
            .iter()
            .map(|t| {
                let img = [f(t[0]), f(t[1]), f(t[2])];
                if img[0] == img[1] || img[1] == img[2] {
                    0
                } else {
                    z[src.iter().position(|&s| s == img).expect("triple")]
                }
            })
            .collect()
    };
    let degenerate: Vec<Vec<bool>> = (0..=top)
        .map(|n| {
            let images: Vec<Vec<u8>> = if n == 0 {
                Vec::new()
            } else {
                (0..n)
                    .flat_map(|i| levels[n - 1].iter().map(move |z| (i, z)))
                    .map(|(i, z)| pull(z, n - 1, n, &|v| if v <= i { v } else { v - 1 }))
                    .collect()
            };
            levels[n].iter().map(|z| images.contains(z)).collect()
        })
        .collect();
    let cells: Vec<Vec<usize>> =
        (0..=top).map(|n| (0..levels[n].len()).filter(|&s| !degenerate[n][s]).collect()).collect();
    let mut d = vec![Vec::new()];
    for n in 1..=top {
        let mut m = vec![vec![0i128; cells[n].len()]; cells[n - 1].len()];
        for (col, &s) in cells[n].iter().enumerate() {
            for i in 0..=n {
                let face = pull(&levels[n][s], n, n - 1, &|v| if v < i { v } else { v + 1 });
                let f = levels[n - 1].iter().position(|z| *z == face).expect("face is a simplex");
                if let Some(r) = cells[n - 1].iter().position(|&c| c == f) {
                    m[r][col] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        d.push(m);
    }
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    homology(&ranks, &d)
}

/// A finite abelian group `⊕ ℤ/moduli[i]` with elements as residue vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub moduli: Vec<i64>,
}

impl FiniteGroup {
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out.into_iter().flat_map(|v: Vec<i64>| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }
}

/// Applies a homomorphism given by an integer matrix (rows index the target
/// summands) and reduces into the target.
pub fn apply(matrix: &[Vec<i64>], v: &[i64], target: &FiniteGroup) -> Vec<i64> {
    matrix
        .iter()
        .zip(&target.moduli)
        .map(|(row, &m)| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m))
        .collect()
}

/// The limit of a diagram of finite groups by enumerating all families and
/// keeping the compatible ones. `maps` are `(source, target, matrix)`.
pub fn brute_force_limit(groups: &[FiniteGroup], maps: &[(usize, usize, Vec<Vec<i64>>)]) -> Vec<Vec<Vec<i64>>> {
    let mut families: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for g in groups {
        let el = g.elements();
        families =
            families.into_iter().flat_map(|f| el.iter().map(move |e| [f.clone(), vec![e.clone()]].concat())).collect();
    }
    families.retain(|f| maps.iter().all(|(s, t, m)| apply(m, &f[*s], &groups[*t]) == f[*t]));
    families
}

/// `(order, #{v : d·v = 0} for d = 1..=12)` of a set of families; this
/// determines a finite abelian group of exponent dividing 12 up to isomorphism.
pub fn torsion_profile_of_families(families: &[Vec<Vec<i64>>], groups: &[FiniteGroup]) -> (u64, Vec<u64>) {
    let killed = |d: i64| {
        families
            .iter()
            .filter(|f| {
                f.iter().zip(groups).all(|(v, g)| v.iter().zip(&g.moduli).all(|(x, m)| (d * x).rem_euclid(*m) == 0))
            })
            .count() as u64
    };
    (families.len() as u64, (1..=12).map(killed).collect())
}

/// The same profile computed from invariant factors; `None` for infinite groups.
pub fn torsion_profile_of_group(g: &AbGroup) -> Option<(u64, Vec<u64>)> {
    if g.rank > 0 {
        return None;
    }
    let t: Vec<u64> = g.torsion.iter().map(|d| u64::try_from(d.clone()).expect("small")).collect();
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    Some((t.iter().product(), (1..=12).map(|d| t.iter().map(|&x| gcd(d, x)).product()).collect()))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::from(1)
    } else {
        a[n - 1][n - 1].clone() * sign
    }
}

/// All partial orders on `{0, ..., n−1}` as `leq[a][b]`.
pub fn labelled_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, a) in leq.iter_mut().enumerate() {
            a[i] = true;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            leq[a][b] = (bits >> k) & 1 == 1;
        }
        let antisymmetric = pairs.iter().all(|&(a, b)| !(leq[a][b] && leq[b][a]));
        let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if antisymmetric && transitive {
            out.push(leq);
        }
    }
    out
}

/// Number of monotone maps `⟨n⟩ → ⟨m⟩` preserving the first element when `x = 1`
/// and the last when `y = 1`, by enumeration of all functions.
pub fn count_ordinal_maps(x: usize, y: usize, n: usize, m: usize) -> usize {
    ordinal_maps(x, y, n, m).len()
}

/// All such maps in lexicographic order.
pub fn ordinal_maps(x: usize, y: usize, n: usize, m: usize) -> Vec<Vec<usize>> {
    tuples(m, n)
        .into_iter()
        .filter(|f| f.windows(2).all(|w| w[0] <= w[1]))
        .filter(|f| n == 0 || ((x == 0 || f[0] == 0) && (y == 0 || f[n - 1] == m - 1)))
        .collect()
}
