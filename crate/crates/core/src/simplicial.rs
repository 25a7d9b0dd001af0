//! Dimension-truncated simplicial sets, nerves of categories, 2-nerves of
//! strict 2-categories, and normalized chain complexes.
//!
//! Sign convention: the boundary of a k-simplex is `Σ (−1)^i d_i`, where `d_0`
//! drops the first vertex and `d_k` the last.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::{FinCategory, Mor};
use crate::linalg::IntMatrix;
use crate::two_cat::{
    enumerate_two_functor_keys, oriental, oriental_map, two_functor_from_key, FinTwoCategory, TwoCatError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("simplicial identity `{identity}` fails at simplex {simplex} of level {level}")]
    Identity { identity: String, level: usize, simplex: usize },
    #[error("degenerate 2-simplex {0} is not thin")]
    DegenerateNotThin(usize),
    #[error("malformed simplicial data: {0}")]
    Malformed(String),
    #[error(transparent)]
    TwoCat(#[from] TwoCatError),
}

/// A simplicial set truncated at dimension `dim`.
///
/// Level `k` has `count(k)` simplices. Every simplex of level `k ≥ 1` stores
/// its `k + 1` faces and every simplex of level `k < dim` its `k + 1`
/// degeneracies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    dim: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<usize>>,
    degens: Vec<Vec<usize>>,
    degenerate: Vec<Vec<bool>>,
    thin: Option<Vec<bool>>,
}

impl SimplicialSet {
    /// Assembles a simplicial set from flattened face and degeneracy tables.
    ///
    /// `faces[k][s * (k + 1) + i] = d_i(s)` for `k ≥ 1` (`faces[0]` is empty),
    /// `degens[k][s * (k + 1) + i] = s_i(s)` for `k < dim`.
    pub fn from_parts(
        dim: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<usize>>,
        degens: Vec<Vec<usize>>,
        thin: Option<Vec<bool>>,
    ) -> Result<SimplicialSet, SimplicialError> {
        let malformed = |s: &str| Err(SimplicialError::Malformed(s.to_string()));
        if counts.len() != dim + 1 || faces.len() != dim + 1 || degens.len() != dim {
            return malformed("level tables do not match the dimension");
        }
        for k in 0..=dim {
            let expected = if k == 0 { 0 } else { counts[k] * (k + 1) };
            if faces[k].len() != expected || faces[k].iter().any(|&f| f >= counts[k - usize::from(k > 0)]) {
                return malformed("face table has the wrong shape");
            }
            if k < dim && (degens[k].len() != counts[k] * (k + 1) || degens[k].iter().any(|&d| d >= counts[k + 1])) {
                return malformed("degeneracy table has the wrong shape");
            }
        }
        if let Some(t) = &thin {
            if dim < 2 || t.len() != counts[2] {
                return malformed("thin flags must cover level 2");
            }
        }
        let mut degenerate: Vec<Vec<bool>> = counts.iter().map(|&c| vec![false; c]).collect();
        for k in 0..dim {
            for &d in &degens[k] {
                degenerate[k + 1][d] = true;
            }
        }
        Ok(SimplicialSet { dim, counts, faces, degens, degenerate, thin })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts[k]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `d_i` of simplex `s` in level `k ≥ 1`.
    pub fn face(&self, k: usize, s: usize, i: usize) -> usize {
        self.faces[k][s * (k + 1) + i]
    }

    /// `s_i` of simplex `s` in level `k < dim`.
    pub fn degeneracy(&self, k: usize, s: usize, i: usize) -> usize {
        self.degens[k][s * (k + 1) + i]
    }

    pub fn is_degenerate(&self, k: usize, s: usize) -> bool {
        self.degenerate[k][s]
    }

    /// Nondegenerate simplices of level `k`, in order.
    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.counts[k]).filter(|&s| !self.degenerate[k][s]).collect()
    }

    pub fn thin(&self) -> Option<&[bool]> {
        self.thin.as_deref()
    }

    /// Vertex `j` of a k-simplex.
    pub fn vertex(&self, k: usize, s: usize, j: usize) -> usize {
        let mut cur = s;
        let mut level = k;
        let mut pos = j;
        while level > 0 {
            // drop a vertex other than `pos`
            if pos == level {
                cur = self.face(level, cur, 0);
                pos -= 1;
            } else {
                cur = self.face(level, cur, level);
            }
            level -= 1;
        }
        cur
    }

    /// The last edge of a k-simplex (`k ≥ 1`): the 1-simplex from vertex
    /// `k − 1` to vertex `k`.
    pub fn last_edge(&self, k: usize, s: usize) -> usize {
        let mut cur = s;
        for level in (2..=k).rev() {
            cur = self.face(level, cur, 0);
        }
        cur
    }

    /// Exhaustively checks the simplicial identities and the thin-flag
    /// condition on degenerate 2-simplices.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        let fail = |identity: String, level: usize, simplex: usize| {
            Err(SimplicialError::Identity { identity, level, simplex })
        };
        for k in 2..=self.dim {
            for s in 0..self.counts[k] {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = self.face(k - 1, self.face(k, s, j), i);
                        let rhs = self.face(k - 1, self.face(k, s, i), j - 1);
                        if lhs != rhs {
                            return fail(format!("d{i} d{j} = d{} d{i}", j - 1), k, s);
                        }
                    }
                }
            }
        }
        for k in 0..self.dim {
            for s in 0..self.counts[k] {
                for j in 0..=k {
                    let t = self.degeneracy(k, s, j);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, t, i);
                        let ok = if i == j || i == j + 1 {
                            lhs == s
                        } else if i < j {
                            lhs == self.degeneracy(k - 1, self.face(k, s, i), j - 1)
                        } else {
                            lhs == self.degeneracy(k - 1, self.face(k, s, i - 1), j)
                        };
                        if !ok {
                            return fail(format!("d{i} s{j}"), k, s);
                        }
                    }
                    if k + 1 < self.dim {
                        for i in 0..=j {
                            let lhs = self.degeneracy(k + 1, self.degeneracy(k, s, j), i);
                            let rhs = self.degeneracy(k + 1, self.degeneracy(k, s, i), j + 1);
                            if lhs != rhs {
                                return fail(format!("s{i} s{j} = s{} s{i}", j + 1), k, s);
                            }
                        }
                    }
                }
            }
        }
        if let Some(thin) = &self.thin {
            for s in 0..self.counts[2] {
                if self.degenerate[2][s] && !thin[s] {
                    return Err(SimplicialError::DegenerateNotThin(s));
                }
            }
        }
        Ok(())
    }
}

/// Nerve of a category truncated at dimension `dim`.
///
/// Vertices are the objects; a k-simplex (`k ≥ 1`) is a chain
/// `x₀ → x₁ → ... → x_k` of composable morphisms, enumerated level by level
/// by extending chains on the right.
pub fn nerve(c: &FinCategory, dim: usize) -> SimplicialSet {
    nerve_with_chains(c, dim).0
}

/// Like [`nerve`], also returning the chain of morphisms of every simplex
/// (vertices for level 0 are encoded as one-element chains holding the object).
pub fn nerve_with_chains(c: &FinCategory, dim: usize) -> (SimplicialSet, Vec<Vec<Vec<Mor>>>) {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![c.objects().map(|x| vec![x]).collect()];
    if dim >= 1 {
        levels.push(c.morphisms().map(|f| vec![f]).collect());
    }
    for _ in 2..=dim {
        let prev = levels.last().expect("level");
        let mut next = Vec::new();
        for chain in prev {
            let last = *chain.last().expect("chain");
            for &f in c.out_of(c.dst(last)) {
                let mut ch = chain.clone();
                ch.push(f);
                next.push(ch);
            }
        }
        levels.push(next);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i)).collect()).collect();
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..=dim {
        let mut table = Vec::with_capacity(counts[k] * (k + 1));
        for chain in &levels[k] {
            if k == 1 {
                table.push(c.dst(chain[0]));
                table.push(c.src(chain[0]));
                continue;
            }
            for i in 0..=k {
                let face: Vec<usize> = if i == 0 {
                    chain[1..].to_vec()
                } else if i == k {
                    chain[..k - 1].to_vec()
                } else {
                    let mut f = chain[..i - 1].to_vec();
                    f.push(c.compose(chain[i], chain[i - 1]));
                    f.extend_from_slice(&chain[i + 1..]);
                    f
                };
                table.push(index[k - 1][face.as_slice()]);
            }
        }
        faces.push(table);
    }
    let mut degens = Vec::new();
    for k in 0..dim {
        let mut table = Vec::with_capacity(counts[k] * (k + 1));
        for chain in &levels[k] {
            if k == 0 {
                table.push(index[1][[c.id(chain[0])].as_slice()]);
                continue;
            }
            for i in 0..=k {
                let vertex = if i < k { c.src(chain[i]) } else { c.dst(chain[k - 1]) };
                let mut d = chain[..i].to_vec();
                d.push(c.id(vertex));
                d.extend_from_slice(&chain[i..]);
                table.push(index[k + 1][d.as_slice()]);
            }
        }
        degens.push(table);
    }
    let set = SimplicialSet::from_parts(dim, counts, faces, degens, None).expect("nerve tables are well formed");
    (set, levels)
}

/// 2-nerve of a strict 2-category truncated at dimension `dim`.
///
/// Level `k` consists of the strict 2-functors from the oriental `Δ̄ᵏ`, with
/// faces and degeneracies given by precomposition with the 2-functors
/// induced by cofaces and codegeneracies. A 2-simplex is thin when it sends
/// the non-identity 2-cell `{0,2} ⊆ {0,1,2}` to an isomorphism.
pub fn two_nerve(c: &Arc<FinTwoCategory>, dim: usize, ceiling: u64) -> Result<SimplicialSet, SimplicialError> {
    Ok(two_nerve_with_keys(c, dim, ceiling)?.0)
}

/// Like [`two_nerve`], also returning the flat key of every simplex (see
/// [`crate::two_cat::TwoFunctor::key`]).
pub fn two_nerve_with_keys(
    c: &Arc<FinTwoCategory>,
    dim: usize,
    ceiling: u64,
) -> Result<(SimplicialSet, Vec<Vec<Vec<usize>>>), SimplicialError> {
    let orientals: Vec<Arc<FinTwoCategory>> =
        (0..=dim).map(|k| oriental(k, dim.max(1)).map(Arc::new)).collect::<Result<_, _>>()?;
    let mut levels = Vec::with_capacity(dim + 1);
    for o in &orientals {
        levels.push(enumerate_two_functor_keys(o, c, ceiling)?);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, key)| (key.as_slice(), i)).collect()).collect();
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..=dim {
        let cofaces: Vec<_> = (0..=k)
            .map(|i| {
                let phi: Vec<usize> = (0..k).map(|j| if j < i { j } else { j + 1 }).collect();
                oriental_map(&phi, &orientals[k - 1], &orientals[k])
            })
            .collect();
        let mut table = Vec::with_capacity(counts[k] * (k + 1));
        for key in &levels[k] {
            let f = two_functor_from_key(&orientals[k], c, key);
            for delta in &cofaces {
                table.push(index[k - 1][delta.then(&f).key().as_slice()]);
            }
        }
        faces.push(table);
    }
    let mut degens = Vec::with_capacity(dim);
    for k in 0..dim {
        let codegens: Vec<_> = (0..=k)
            .map(|i| {
                let phi: Vec<usize> = (0..k + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
                oriental_map(&phi, &orientals[k + 1], &orientals[k])
            })
            .collect();
        let mut table = Vec::with_capacity(counts[k] * (k + 1));
        for key in &levels[k] {
            let f = two_functor_from_key(&orientals[k], c, key);
            for sigma in &codegens {
                table.push(index[k + 1][sigma.then(&f).key().as_slice()]);
            }
        }
        degens.push(table);
    }
    let thin = if dim >= 2 {
        let o2 = &orientals[2];
        let h02 = o2.hom_index(0, 2);
        let long = o2.hom(0, 2).hom(0, 1)[0];
        Some(
            levels[2]
                .iter()
                .map(|key| {
                    let f = two_functor_from_key(o2, c, key);
                    let target = c.hom(f.obj_map[0], f.obj_map[2]);
                    target.is_isomorphism(f.two_cells[h02][long])
                })
                .collect(),
        )
    } else {
        None
    };
    let set = SimplicialSet::from_parts(dim, counts, faces, degens, thin)?;
    Ok((set, levels))
}

/// Normalized chain complex with integer boundary matrices.
///
/// `boundaries[k]` is the matrix of `∂_k: C_k → C_{k−1}` in the bases of
/// nondegenerate simplices (rows indexed by level `k − 1`); `boundaries[0]`
/// is the zero map to the zero group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Top stored degree.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Checks `∂_{k−1} ∘ ∂_k = 0` exactly.
    pub fn check_square_zero(&self) -> bool {
        (2..self.ranks.len())
            .all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// The normalized chain complex of `x`: degree-k generators are the
/// nondegenerate k-simplices and faces landing on degenerate simplices
/// contribute zero.
pub fn normalized_chains(x: &SimplicialSet) -> ChainComplex {
    let nondeg: Vec<Vec<usize>> = (0..=x.dim).map(|k| x.nondegenerate(k)).collect();
    let position: Vec<HashMap<usize, usize>> =
        nondeg.iter().map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let ranks: Vec<usize> = nondeg.iter().map(Vec::len).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    for k in 1..=x.dim {
        let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        for (col, &s) in nondeg[k].iter().enumerate() {
            for i in 0..=k {
                if let Some(&row) = position[k - 1].get(&x.face(k, s, i)) {
                    m.add_to(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    let complex = ChainComplex { ranks, boundaries };
    debug_assert!(complex.check_square_zero());
    complex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::one_object;
    use crate::two_cat::{from_one_category, DEFAULT_CEILING};

    fn cyclic(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table: Vec<usize> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        one_object(&names, &table, 0)
    }

    fn entry(m: &IntMatrix, i: usize, j: usize) -> i64 {
        num_traits::ToPrimitive::to_i64(m.get(i, j)).unwrap()
    }

    fn nondeg_counts(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|k| x.nondegenerate(k).len()).collect()
    }

    #[test]
    fn nerve_examples() {
        let t = nerve(&FinCategory::terminal(), 3);
        t.validate().unwrap();
        assert_eq!(t.counts(), &[1, 1, 1, 1]);
        let i = nerve(&FinCategory::ordinal(1), 2);
        i.validate().unwrap();
        assert_eq!(nondeg_counts(&i), vec![2, 1, 0]);
        let z2 = nerve(&cyclic(2), 3);
        z2.validate().unwrap();
        assert_eq!(z2.counts(), &[1, 2, 4, 8]);
        assert_eq!(nondeg_counts(&z2), vec![1, 1, 1, 1]);
    }

    #[test]
    fn chains_examples() {
        let k = normalized_chains(&nerve(&FinCategory::terminal(), 3));
        assert_eq!(k.ranks, vec![1, 0, 0, 0]);
        let k = normalized_chains(&nerve(&FinCategory::ordinal(1), 2));
        assert_eq!(k.ranks, vec![2, 1, 0]);
        assert_eq!((entry(&k.boundaries[1], 0, 0), entry(&k.boundaries[1], 1, 0)), (-1, 1));
        let k = normalized_chains(&nerve(&cyclic(3), 3));
        assert_eq!(k.ranks, vec![1, 2, 4, 8]);
        assert!(k.check_square_zero());
    }

    #[test]
    fn vertices_and_last_edges() {
        let c = FinCategory::ordinal(3);
        let (x, chains) = nerve_with_chains(&c, 3);
        for s in 0..x.count(3) {
            let ch = &chains[3][s];
            assert_eq!(x.vertex(3, s, 0), c.src(ch[0]));
            assert_eq!(x.vertex(3, s, 3), c.dst(ch[2]));
            assert_eq!(chains[1][x.last_edge(3, s)], vec![ch[2]]);
        }
    }

    #[test]
    fn two_nerve_of_b2_z2() {
        let names: Vec<String> = vec!["0".into(), "1".into()];
        let hom = Arc::new(one_object(&names, &[0, 1, 1, 0], 0));
        let b = Arc::new(FinTwoCategory::from_parts(
            vec!["*".into()],
            vec![hom],
            vec![0],
            |_, _, _, _, _| 0,
            |_, _, _, a, _| a,
            |_, _, _, _, b| b,
        ));
        let x = two_nerve(&b, 3, DEFAULT_CEILING).unwrap();
        x.validate().unwrap();
        assert_eq!(x.counts(), &[1, 1, 2, 8]);
        assert!(x.thin().unwrap().iter().all(|&t| t));
    }

    #[test]
    fn two_nerve_of_terminal_and_one_categories() {
        let t = Arc::new(FinTwoCategory::terminal());
        let x = two_nerve(&t, 3, DEFAULT_CEILING).unwrap();
        assert_eq!(x.counts(), &[1, 1, 1, 1]);
        assert!(x.thin().unwrap().iter().all(|&b| b));
        for c in [FinCategory::ordinal(1), FinCategory::ordinal(2), cyclic(2)] {
            let y = two_nerve(&Arc::new(from_one_category(&c)), 3, DEFAULT_CEILING).unwrap();
            y.validate().unwrap();
            assert_eq!(y.counts(), nerve(&c, 3).counts());
        }
    }
}
